//! Proof terms as s-expressions.
//!
//! ```text
//! (hyp h)  (id OBJ)  (comp OUTER INNER)  (cancel P FIRST REST)
//! (push P ALONG)  (coprod P ...)  (widepush P ...)
//! ```
//!
//! Morphisms are declared names or inline `(mor a b)` (lattices) and
//! `(hom SRC DST (map i ...))` (graphs); graph objects are declared names
//! or inline `(graph N (i j) ...)`.

use std::fmt;

use crate::lex::{end_pos, tokenize, Cursor, Diagnostic, Pos, Tok};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Atom(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom(_, p) | SExpr::List(_, p) => *p,
        }
    }
}

pub(crate) fn read_sexpr(cur: &mut Cursor) -> Result<SExpr, Diagnostic> {
    let pos = cur.pos();
    match cur.bump() {
        Some((Tok::Ident(s), p)) => Ok(SExpr::Atom(s, p)),
        Some((Tok::LParen, p)) => {
            let mut items = Vec::new();
            loop {
                match cur.peek() {
                    Some(Tok::RParen) => {
                        cur.bump();
                        return Ok(SExpr::List(items, p));
                    }
                    None => return Err(Diagnostic::new(cur.pos(), "unclosed `(`", format!("close the list opened at {p}"))),
                    _ => items.push(read_sexpr(cur)?),
                }
            }
        }
        Some((t, _)) => Err(Diagnostic::new(pos, format!("unexpected {t} in proof term"), "proof terms are atoms or parenthesised lists")),
        None => Err(Diagnostic::new(pos, "expected a proof term, found end of input", "write a term such as `(hyp h)`")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ObjSyntax {
    Named(String),
    Graph { nodes: usize, edges: Vec<(usize, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MorSyntax {
    Named(String),
    Lattice { from: String, to: String },
    Hom { src: ObjSyntax, dst: ObjSyntax, map: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofSyntax {
    Hyp(String),
    Id(ObjSyntax),
    Comp(Box<ProofSyntax>, Box<ProofSyntax>),
    Cancel(Box<ProofSyntax>, MorSyntax, MorSyntax),
    Push(Box<ProofSyntax>, MorSyntax),
    Coprod(Vec<ProofSyntax>),
    WidePush(Vec<ProofSyntax>),
}

fn atom<'a>(e: &'a SExpr, what: &str) -> Result<&'a str, Diagnostic> {
    match e {
        SExpr::Atom(s, _) => Ok(s),
        SExpr::List(_, p) => Err(Diagnostic::new(*p, format!("expected {what}, found a list"), format!("write {what} as a bare name"))),
    }
}

fn number(e: &SExpr) -> Result<usize, Diagnostic> {
    let s = atom(e, "a node index")?;
    s.parse()
        .map_err(|_| Diagnostic::new(e.pos(), format!("`{s}` is not a node index"), "node indices are non-negative integers"))
}

fn arity(items: &[SExpr], head: &str, n: usize, pos: Pos, shape: &str) -> Result<(), Diagnostic> {
    if items.len() != n + 1 {
        return Err(Diagnostic::new(
            pos,
            format!("`{head}` takes {n} argument{}, found {}", if n == 1 { "" } else { "s" }, items.len() - 1),
            format!("write `{shape}`"),
        ));
    }
    Ok(())
}

fn head(items: &[SExpr], pos: Pos) -> Result<&str, Diagnostic> {
    match items.first() {
        Some(SExpr::Atom(s, _)) => Ok(s),
        Some(SExpr::List(_, p)) => Err(Diagnostic::new(*p, "a list must start with its form name", "e.g. `(hyp h)`")),
        None => Err(Diagnostic::new(pos, "empty list", "e.g. `(hyp h)`")),
    }
}

pub fn obj_from_sexpr(e: &SExpr) -> Result<ObjSyntax, Diagnostic> {
    match e {
        SExpr::Atom(s, _) => Ok(ObjSyntax::Named(s.clone())),
        SExpr::List(items, pos) => {
            if head(items, *pos)? != "graph" || items.len() < 2 {
                return Err(Diagnostic::new(*pos, "expected an object", "write a name or `(graph N (i j) ...)`"));
            }
            let nodes = number(&items[1])?;
            let mut edges = Vec::new();
            for edge in &items[2..] {
                match edge {
                    SExpr::List(ends, p) if ends.len() == 2 => {
                        let (i, j) = (number(&ends[0])?, number(&ends[1])?);
                        if i >= nodes || j >= nodes {
                            return Err(Diagnostic::new(*p, format!("edge ({i} {j}) leaves a graph on {nodes} nodes"), "node indices start at 0"));
                        }
                        edges.push((i, j));
                    }
                    other => return Err(Diagnostic::new(other.pos(), "expected an edge `(i j)`", "edges are pairs of node indices")),
                }
            }
            Ok(ObjSyntax::Graph { nodes, edges })
        }
    }
}

pub fn mor_from_sexpr(e: &SExpr) -> Result<MorSyntax, Diagnostic> {
    match e {
        SExpr::Atom(s, _) => Ok(MorSyntax::Named(s.clone())),
        SExpr::List(items, pos) => match head(items, *pos)? {
            "mor" => {
                arity(items, "mor", 2, *pos, "(mor a b)")?;
                Ok(MorSyntax::Lattice { from: atom(&items[1], "an element")?.into(), to: atom(&items[2], "an element")?.into() })
            }
            "hom" => {
                arity(items, "hom", 3, *pos, "(hom SRC DST (map i ...))")?;
                let map = match &items[3] {
                    SExpr::List(m, p) if head(m, *p)? == "map" => m[1..].iter().map(number).collect::<Result<_, _>>()?,
                    other => return Err(Diagnostic::new(other.pos(), "expected `(map i ...)`", "list the image of every source node in order")),
                };
                Ok(MorSyntax::Hom { src: obj_from_sexpr(&items[1])?, dst: obj_from_sexpr(&items[2])?, map })
            }
            other => Err(Diagnostic::new(*pos, format!("`{other}` is not a morphism form"), "write a name, `(mor a b)` or `(hom SRC DST (map ...))`")),
        },
    }
}

pub fn proof_from_sexpr(e: &SExpr) -> Result<ProofSyntax, Diagnostic> {
    let (items, pos) = match e {
        SExpr::List(items, pos) => (items, *pos),
        SExpr::Atom(s, p) => {
            return Err(Diagnostic::new(*p, format!("bare name `{s}` is not a proof"), format!("cite a hypothesis as `(hyp {s})`")))
        }
    };
    let sub = |k: usize| proof_from_sexpr(&items[k]).map(Box::new);
    match head(items, pos)? {
        "hyp" => {
            arity(items, "hyp", 1, pos, "(hyp NAME)")?;
            Ok(ProofSyntax::Hyp(atom(&items[1], "a hypothesis name")?.into()))
        }
        "id" => {
            arity(items, "id", 1, pos, "(id OBJECT)")?;
            Ok(ProofSyntax::Id(obj_from_sexpr(&items[1])?))
        }
        "comp" => {
            arity(items, "comp", 2, pos, "(comp OUTER INNER)")?;
            Ok(ProofSyntax::Comp(sub(1)?, sub(2)?))
        }
        "cancel" => {
            arity(items, "cancel", 3, pos, "(cancel PROOF FIRST REST)")?;
            Ok(ProofSyntax::Cancel(sub(1)?, mor_from_sexpr(&items[2])?, mor_from_sexpr(&items[3])?))
        }
        "push" => {
            arity(items, "push", 2, pos, "(push PROOF ALONG)")?;
            Ok(ProofSyntax::Push(sub(1)?, mor_from_sexpr(&items[2])?))
        }
        "coprod" => Ok(ProofSyntax::Coprod(items[1..].iter().map(proof_from_sexpr).collect::<Result<_, _>>()?)),
        "widepush" => Ok(ProofSyntax::WidePush(items[1..].iter().map(proof_from_sexpr).collect::<Result<_, _>>()?)),
        other => Err(Diagnostic::new(
            pos,
            format!("unknown proof form `{other}`"),
            "use one of hyp, id, comp, cancel, push, coprod, widepush",
        )),
    }
}

/// Parses a single proof term.
pub fn parse_proof(src: &str) -> Result<ProofSyntax, Diagnostic> {
    let mut cur = Cursor::new(tokenize(src)?, end_pos(src));
    let e = read_sexpr(&mut cur)?;
    if !cur.at_end() {
        return Err(Diagnostic::new(cur.pos(), "trailing input after the proof term", "a file holds one term"));
    }
    proof_from_sexpr(&e)
}

impl fmt::Display for ObjSyntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjSyntax::Named(n) => f.write_str(n),
            ObjSyntax::Graph { nodes, edges } => {
                write!(f, "(graph {nodes}")?;
                for (i, j) in edges {
                    write!(f, " ({i} {j})")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for MorSyntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorSyntax::Named(n) => f.write_str(n),
            MorSyntax::Lattice { from, to } => write!(f, "(mor {from} {to})"),
            MorSyntax::Hom { src, dst, map } => {
                write!(f, "(hom {src} {dst} (map")?;
                for i in map {
                    write!(f, " {i}")?;
                }
                f.write_str("))")
            }
        }
    }
}

impl fmt::Display for ProofSyntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, ps: &[ProofSyntax]| {
            f.write_str("(")?;
            f.write_str(head)?;
            for p in ps {
                write!(f, " {p}")?;
            }
            f.write_str(")")
        };
        match self {
            ProofSyntax::Hyp(n) => write!(f, "(hyp {n})"),
            ProofSyntax::Id(o) => write!(f, "(id {o})"),
            ProofSyntax::Comp(a, b) => write!(f, "(comp {a} {b})"),
            ProofSyntax::Cancel(p, first, rest) => write!(f, "(cancel {p} {first} {rest})"),
            ProofSyntax::Push(p, along) => write!(f, "(push {p} {along})"),
            ProofSyntax::Coprod(ps) => list(f, "coprod", ps),
            ProofSyntax::WidePush(ps) => list(f, "widepush", ps),
        }
    }
}
