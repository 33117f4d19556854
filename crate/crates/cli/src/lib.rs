//! Text formats and the command line for injectivity logic: the
//! declaration language, proof s-expressions, regular sentences and the
//! `injlog` subcommands.

pub mod cli;
pub mod demo;
pub mod lex;
pub mod sentence;
pub mod sexpr;
pub mod workspace;

pub use lex::{Diagnostic, Pos};
pub use sexpr::{parse_proof, ProofSyntax};
pub use workspace::{parse, CatRef, MorDecl, Workspace};
