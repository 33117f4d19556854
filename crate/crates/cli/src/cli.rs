//! The `injlog` subcommands.
//!
//! Exit codes: 0 holds / success, 1 counterexample or not derived,
//! 2 inconclusive within budget, 64 usage, 65 parse error.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use injlog_core::graph::{bounded_consequence, enumerate_graphs, BoundedVerdict};
use injlog_core::reflection::{reflect, verify_weak_reflection, ReflectionTrace};
use injlog_core::{
    check_proof, is_injective, prove, saturate, CoconeFailure, Graph, GraphCat, GraphHom,
    Injectivity, Lattice, LatticeMor, MorphismSet, Rule, RuleMask, SearchBudget, SearchError,
};
use serde_json::{json, Value};

use crate::demo;
use crate::sentence::render_regular_sentence;
use crate::workspace::{parse, CatRef, Workspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "injlog", version, about = "Injectivity logic over finite lattices and graphs")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the members of a hypothesis set an object is not injective for.
    CheckInj {
        file: PathBuf,
        #[arg(long)]
        cat: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        hset: String,
    },
    /// Decide H ⊨ h: exactly on lattices, up to a node bound on graphs.
    Consequence {
        file: PathBuf,
        #[arg(long)]
        hset: String,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Search for a derivation of the goal from H.
    Prove {
        file: PathBuf,
        #[arg(long)]
        hset: String,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 12)]
        node_cap: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        emit_proof: Option<PathBuf>,
    },
    /// Check a declared proof and print its conclusion.
    CheckProof {
        file: PathBuf,
        #[arg(long)]
        proof: String,
        #[arg(long)]
        hset: String,
        /// Category of the proof, when the hypothesis set is empty.
        #[arg(long)]
        cat: Option<String>,
    },
    /// Close H under the enabled rules (lattices only).
    Saturate {
        file: PathBuf,
        #[arg(long)]
        cat: String,
        #[arg(long)]
        hset: String,
        #[arg(long, value_parser = parse_rule)]
        disable: Vec<Rule>,
        #[arg(long)]
        goal: Option<String>,
    },
    /// Build a weak reflection of an object into the H-injectives.
    Reflect {
        file: PathBuf,
        #[arg(long)]
        cat: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        hset: String,
        #[arg(long, default_value_t = 16)]
        max_rounds: usize,
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Print the regular sentence of a graph morphism.
    Sentence {
        file: PathBuf,
        #[arg(long)]
        mor: String,
    },
    /// Run a built-in demonstration suite.
    Demo {
        #[arg(value_parser = ["section7"])]
        suite: String,
    },
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    s.parse::<Rule>().map_err(|_| format!("unknown rule `{s}`; use identity, composition, cancellation or pushout"))
}

/// A finished command: text lines, JSON fields and an exit code.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub verdict: String,
    pub code: i32,
    pub lines: Vec<String>,
    pub fields: serde_json::Map<String, Value>,
}

impl Report {
    fn new(command: &'static str, verdict: impl Into<String>, code: i32) -> Self {
        Report { command, verdict: verdict.into(), code, lines: Vec::new(), fields: serde_json::Map::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn field(&mut self, k: &str, v: Value) {
        self.fields.insert(k.into(), v);
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl Display) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.to_string() }
}

/// Parses `argv` (program name first), runs the command and writes its
/// report. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(mut r) => {
            if json {
                r.field("command", json!(r.command));
                r.field("verdict", json!(r.verdict));
                r.field("exit_code", json!(r.code));
                r.field("timing_ms", json!(start.elapsed().as_secs_f64() * 1e3));
                let _ = writeln!(out, "{}", Value::Object(r.fields));
            } else {
                for l in &r.lines {
                    let _ = writeln!(out, "{l}");
                }
            }
            r.code
        }
        Err(f) => {
            if json {
                let _ = writeln!(out, "{}", json!({ "error": f.message, "exit_code": f.code }));
            }
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<Workspace, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse(&src).map_err(|d| Failure { code: EXIT_PARSE, message: format!("{}:{d}", path.display()) })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::CheckInj { file, cat, object, hset } => check_inj(&load(&file)?, &cat, &object, &hset),
        Command::Consequence { file, hset, goal, max_size } => consequence(&load(&file)?, &hset, &goal, max_size),
        Command::Prove { file, hset, goal, node_cap, depth, emit_proof } => {
            let budget = SearchBudget { node_cap, depth_cap: depth, ..SearchBudget::default() };
            let r = prove_cmd(&load(&file)?, &hset, &goal, budget)?;
            if let (Some(path), Some(Value::String(p))) = (emit_proof, r.fields.get("proof")) {
                write_file(&path, &format!("{p}\n"))?;
            }
            Ok(r)
        }
        Command::CheckProof { file, proof, hset, cat } => check_proof_cmd(&load(&file)?, &proof, &hset, cat.as_deref()),
        Command::Saturate { file, cat, hset, disable, goal } => {
            let mask = disable.iter().fold(RuleMask::ALL, |m, r| m.without(*r));
            saturate_cmd(&load(&file)?, &cat, &hset, mask, goal.as_deref())
        }
        Command::Reflect { file, cat, object, hset, max_rounds, emit_trace } => {
            let (r, trace) = reflect_cmd(&load(&file)?, &cat, &object, &hset, max_rounds)?;
            if let Some(path) = emit_trace {
                write_file(&path, &trace)?;
            }
            Ok(r)
        }
        Command::Sentence { file, mor } => sentence_cmd(&load(&file)?, &mor),
        Command::Demo { .. } => Ok(demo_cmd()),
    }
}

fn lattice_mor_text(l: &Lattice, m: &LatticeMor) -> String {
    format!("{} -> {}", l.name(m.from), l.name(m.to))
}

fn hom_text(ws: &Workspace, h: &GraphHom) -> String {
    ws.hom_syntax(h).to_string()
}

fn graph_text(ws: &Workspace, g: &Graph) -> String {
    ws.graph_syntax(g).to_string()
}

/// The hypothesis set must live in `cat` (an empty set lives anywhere).
fn hset_in(ws: &Workspace, hset: &str, cat: CatRef<'_>) -> Result<(), Failure> {
    match (ws.category_of_hset(hset).map_err(usage)?, cat) {
        (None, _) | (Some(CatRef::Graphs), CatRef::Graphs) => Ok(()),
        (Some(CatRef::Lattice(a, _)), CatRef::Lattice(b, _)) if a == b => Ok(()),
        (Some(CatRef::Lattice(a, _)), _) => Err(usage(format!("hypothesis set `{hset}` lives in lattice `{a}`"))),
        (Some(CatRef::Graphs), _) => Err(usage(format!("hypothesis set `{hset}` lives in graphs"))),
    }
}

fn check_inj(ws: &Workspace, cat: &str, object: &str, hset: &str) -> Result<Report, Failure> {
    let cat = ws.category(cat).map_err(usage)?;
    hset_in(ws, hset, cat)?;
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    match cat {
        CatRef::Lattice(name, l) => {
            let x = ws.element(name, object).map_err(usage)?;
            for (h_name, h) in ws.lattice_hset(name, hset).map_err(usage)?.iter() {
                match is_injective(l, &x, h) {
                    Injectivity::Injective => lines.push(format!("{h_name}: injective")),
                    Injectivity::NotInjective(f) => {
                        let w = lattice_mor_text(l, &f);
                        lines.push(format!("{h_name}: not injective; {w} does not extend along {}", lattice_mor_text(l, h)));
                        failures.push(json!({ "hyp": h_name, "witness": w }));
                    }
                }
            }
        }
        CatRef::Graphs => {
            let x = ws.graph(object).map_err(usage)?;
            for (h_name, h) in ws.graph_hset(hset).map_err(usage)?.iter() {
                match is_injective(&GraphCat, x, h) {
                    Injectivity::Injective => lines.push(format!("{h_name}: injective")),
                    Injectivity::NotInjective(f) => {
                        let w = hom_text(ws, &f);
                        lines.push(format!("{h_name}: not injective; {w} does not extend"));
                        failures.push(json!({ "hyp": h_name, "witness": w }));
                    }
                }
            }
        }
    }
    let ok = failures.is_empty();
    let mut r = Report::new("check-inj", if ok { "injective" } else { "not-injective" }, if ok { EXIT_OK } else { EXIT_NEGATIVE });
    r.line(format!("{object} is {} w.r.t. {hset}", if ok { "injective" } else { "not injective" }));
    r.lines.extend(lines);
    r.field("object", json!(object));
    r.field("witnesses", Value::Array(failures));
    Ok(r)
}

fn consequence(ws: &Workspace, hset: &str, goal: &str, max_size: usize) -> Result<Report, Failure> {
    let cat = ws.category_of_mor(goal).map_err(usage)?;
    hset_in(ws, hset, cat)?;
    match cat {
        CatRef::Lattice(name, l) => {
            let hs = ws.lattice_hset(name, hset).map_err(usage)?;
            let h = ws.lattice_mor(name, goal).map_err(usage)?;
            let injectives: Vec<&str> = l.injectives(&hs).into_iter().map(|x| l.name(x)).collect();
            let mut r = match l.consequence(&hs, &h) {
                injlog_core::Verdict::HoldsOnUniverse => {
                    let mut r = Report::new("consequence", "holds", EXIT_OK);
                    r.line(format!("holds: {hset} ⊨ {goal} in lattice {name}"));
                    r.field("witness", Value::Null);
                    r
                }
                injlog_core::Verdict::Counterexample(x) => {
                    let mut r = Report::new("consequence", "counterexample", EXIT_NEGATIVE);
                    r.line(format!("counterexample: {} is injective w.r.t. {hset} but not w.r.t. {goal}", l.name(x)));
                    r.field("witness", json!(l.name(x)));
                    r
                }
            };
            r.line(format!("injectives: {}", injectives.join(" ")));
            r.field("exact", json!(true));
            r.field("injectives", json!(injectives));
            Ok(r)
        }
        CatRef::Graphs => {
            if max_size > 4 {
                return Err(usage("--max-size above 4 enumerates more than 2^25 graphs; use at most 4"));
            }
            let hs = ws.graph_hset(hset).map_err(usage)?;
            let h = ws.graph_mor(goal).map_err(usage)?;
            let mut r = match bounded_consequence(&hs, &h, max_size) {
                BoundedVerdict::HoldsUpTo(n) => {
                    let mut r = Report::new("consequence", format!("holds-up-to({n})"), EXIT_OK);
                    r.line(format!("holds-up-to({n}): no graph with at most {n} nodes separates {hset} from {goal}"));
                    r.field("witness", Value::Null);
                    r
                }
                BoundedVerdict::Counterexample(g) => {
                    let mut r = Report::new("consequence", "counterexample", EXIT_NEGATIVE);
                    let w = graph_text(ws, &g);
                    r.line(format!("counterexample: {w} is injective w.r.t. {hset} but not w.r.t. {goal}"));
                    r.field("witness", json!(w));
                    r
                }
            };
            r.field("exact", json!(false));
            r.field("bound", json!(max_size));
            Ok(r)
        }
    }
}

fn search_report(e: SearchError, exact: bool) -> Report {
    match e {
        SearchError::BudgetExhausted { saturated: true, .. } if exact => {
            let mut r = Report::new("prove", "not-derivable", EXIT_NEGATIVE);
            r.line(format!("not derivable: {e}"));
            r
        }
        _ => {
            let mut r = Report::new("prove", "inconclusive", EXIT_INCONCLUSIVE);
            r.line(format!("inconclusive: {e}"));
            r
        }
    }
}

fn prove_cmd(ws: &Workspace, hset: &str, goal: &str, budget: SearchBudget) -> Result<Report, Failure> {
    let cat = ws.category_of_mor(goal).map_err(usage)?;
    hset_in(ws, hset, cat)?;
    let proof_text = match cat {
        CatRef::Lattice(name, l) => {
            let hs = ws.lattice_hset(name, hset).map_err(usage)?;
            let h = ws.lattice_mor(name, goal).map_err(usage)?;
            match prove(l, &hs, &h, budget) {
                Ok(p) => {
                    assert_eq!(check_proof(l, &hs, &p), Ok(h), "search returned an unsound proof");
                    ws.lattice_proof_syntax(l, &p).to_string()
                }
                Err(e @ SearchError::BudgetExhausted { .. }) => return Ok(search_report(e, l.is_complete())),
                Err(e) => return Err(usage(e)),
            }
        }
        CatRef::Graphs => {
            let hs = ws.graph_hset(hset).map_err(usage)?;
            let h = ws.graph_mor(goal).map_err(usage)?;
            match prove(&GraphCat, &hs, &h, budget) {
                Ok(p) => {
                    assert_eq!(check_proof(&GraphCat, &hs, &p).as_ref(), Ok(&h), "search returned an unsound proof");
                    ws.graph_proof_syntax(&p).to_string()
                }
                Err(e @ SearchError::BudgetExhausted { .. }) => return Ok(search_report(e, false)),
                Err(e) => return Err(usage(e)),
            }
        }
    };
    let mut r = Report::new("prove", "proved", EXIT_OK);
    r.line(format!("proved {goal} from {hset}"));
    r.line(proof_text.clone());
    r.field("proof", json!(proof_text));
    Ok(r)
}

fn check_proof_cmd(ws: &Workspace, proof: &str, hset: &str, cat: Option<&str>) -> Result<Report, Failure> {
    let syntax = ws.proofs.get(proof).ok_or_else(|| usage(format!("unknown proof `{proof}`")))?;
    let cat = match cat {
        Some(c) => ws.category(c).map_err(usage)?,
        None => ws
            .category_of_hset(hset)
            .map_err(usage)?
            .ok_or_else(|| usage(format!("`{hset}` is empty; pass --cat to say where the proof lives")))?,
    };
    hset_in(ws, hset, cat)?;
    let checked = match cat {
        CatRef::Lattice(name, l) => {
            let hs = ws.lattice_hset(name, hset).map_err(usage)?;
            let p = ws.lattice_proof(name, syntax).map_err(usage)?;
            check_proof(l, &hs, &p).map(|m| lattice_mor_text(l, &m))
        }
        CatRef::Graphs => {
            let hs = ws.graph_hset(hset).map_err(usage)?;
            let p = ws.graph_proof(syntax).map_err(usage)?;
            check_proof(&GraphCat, &hs, &p).map(|m| hom_text(ws, &m))
        }
    };
    Ok(match checked {
        Ok(c) => {
            let mut r = Report::new("check-proof", "valid", EXIT_OK);
            r.line(format!("conclusion: {c}"));
            r.field("conclusion", json!(c));
            r
        }
        Err(e) => {
            let mut r = Report::new("check-proof", "invalid", EXIT_NEGATIVE);
            r.line(format!("invalid proof: {e}"));
            r.field("error", json!(e.to_string()));
            r
        }
    })
}

fn saturate_cmd(ws: &Workspace, cat: &str, hset: &str, mask: RuleMask, goal: Option<&str>) -> Result<Report, Failure> {
    let CatRef::Lattice(name, l) = ws.category(cat).map_err(usage)? else {
        return Err(usage("saturation is only offered for lattices; use `prove` on graphs"));
    };
    hset_in(ws, hset, CatRef::Lattice(name, l))?;
    let hs = ws.lattice_hset(name, hset).map_err(usage)?;
    let goal = goal.map(|g| ws.lattice_mor(name, g).map(|m| (g, m))).transpose().map_err(usage)?;
    let sat = saturate(l, &hs, mask).map_err(|e| usage(format!("lattice `{name}`: {e}")))?;
    let disabled: Vec<&str> = Rule::ALL.iter().filter(|r| !mask.allows(**r)).map(|r| r.name()).collect();
    let mut derived = Vec::new();
    let mut lines = Vec::new();
    for (m, p) in &sat.provenance {
        let proof = ws.lattice_proof_syntax(l, p).to_string();
        lines.push(format!("  {}  {proof}", lattice_mor_text(l, m)));
        derived.push(json!({ "morphism": lattice_mor_text(l, m), "proof": proof }));
    }
    let mut r = match goal {
        None => Report::new("saturate", "saturated", EXIT_OK),
        Some((g, m)) if sat.derived.contains(&m) => {
            let mut r = Report::new("saturate", "derived", EXIT_OK);
            r.line(format!("{g} ({}) is derived", lattice_mor_text(l, &m)));
            r
        }
        Some((g, m)) => {
            let mut r = Report::new("saturate", "not-derived", EXIT_NEGATIVE);
            r.line(format!("{g} ({}) is not derived", lattice_mor_text(l, &m)));
            r
        }
    };
    let off = if disabled.is_empty() { "none".to_string() } else { disabled.join(", ") };
    r.line(format!("{} morphisms derived (rules disabled: {off})", sat.derived.len()));
    r.lines.extend(lines);
    r.field("disabled", json!(disabled));
    r.field("derived", Value::Array(derived));
    Ok(r)
}

fn trace_lines<O, M>(
    trace: &ReflectionTrace<O, M>,
    obj: impl Fn(&O) -> String,
    mor: impl Fn(&M) -> String,
) -> Vec<String> {
    let mut out = vec![format!("start {}", obj(&trace.start))];
    for (k, round) in trace.rounds.iter().enumerate() {
        let squares: Vec<String> = round.squares.iter().map(|s| format!("{} {}", s.hyp, mor(&s.attach))).collect();
        out.push(format!(
            "round {} object {} connecting {} squares {} [{}]",
            k + 1,
            obj(&round.object),
            mor(&round.connecting),
            round.squares.len(),
            squares.join("; ")
        ));
    }
    out.push(format!("end converged {} r {}", trace.converged, mor(&trace.r)));
    out
}

fn reflect_report<O, M>(
    trace: &ReflectionTrace<O, M>,
    lines: Vec<String>,
    reflection: String,
    failure: Option<String>,
    universe: &str,
) -> Report {
    let mut r = if trace.converged {
        Report::new("reflect", "converged", EXIT_OK)
    } else {
        Report::new("reflect", "not-converged", EXIT_INCONCLUSIVE)
    };
    r.line(format!(
        "{} after {} round{}; reflection {reflection}",
        if trace.converged { "converged" } else { "not converged" },
        trace.rounds.len(),
        if trace.rounds.len() == 1 { "" } else { "s" }
    ));
    if trace.converged {
        match &failure {
            None => r.line(format!("weak reflection verified over {universe}")),
            Some(f) => r.line(format!("weak reflection check failed over {universe}: {f}")),
        }
    }
    r.lines.extend(lines.iter().cloned());
    r.field("rounds", json!(trace.rounds.len()));
    r.field("reflection", json!(reflection));
    r.field("verified", json!(trace.converged && failure.is_none()));
    r.field("trace", json!(lines));
    r
}

fn failure_text<O: std::fmt::Debug, M: std::fmt::Debug>(f: &CoconeFailure<O, M>) -> String {
    format!("{f:?}")
}

fn reflect_cmd(ws: &Workspace, cat: &str, object: &str, hset: &str, max_rounds: usize) -> Result<(Report, String), Failure> {
    let cat = ws.category(cat).map_err(usage)?;
    hset_in(ws, hset, cat)?;
    let (r, lines) = match cat {
        CatRef::Lattice(name, l) => {
            let hs = ws.lattice_hset(name, hset).map_err(usage)?;
            let a = ws.element(name, object).map_err(usage)?;
            if !l.is_complete() && !hs.is_empty() {
                return Err(usage(format!("lattice `{name}` is not complete; reflection needs joins")));
            }
            let t = reflect(l, &a, &hs, max_rounds).map_err(usage)?;
            let lines = trace_lines(&t, |x| l.name(*x).to_string(), |m| lattice_mor_text(l, m));
            let report = verify_weak_reflection(l, &t, &hs, l.elements());
            let fail = report.failing_witness.as_ref().map(failure_text);
            (reflect_report(&t, lines.clone(), l.name(*t.reflection()).into(), fail, &format!("lattice {name}")), lines)
        }
        CatRef::Graphs => {
            let hs: MorphismSet<GraphHom> = ws.graph_hset(hset).map_err(usage)?;
            let a = ws.graph(object).map_err(usage)?;
            let t = reflect(&GraphCat, a, &hs, max_rounds).map_err(usage)?;
            let lines = trace_lines(&t, |g| graph_text(ws, g), |m| hom_text(ws, m));
            let fail = if t.converged {
                verify_weak_reflection(&GraphCat, &t, &hs, enumerate_graphs(3)).failing_witness.as_ref().map(failure_text)
            } else {
                None
            };
            let top = graph_text(ws, t.reflection());
            (reflect_report(&t, lines.clone(), top, fail, "graphs with at most 3 nodes"), lines)
        }
    };
    let mut text = lines.join("\n");
    text.push('\n');
    Ok((r, text))
}

fn sentence_cmd(ws: &Workspace, mor: &str) -> Result<Report, Failure> {
    let h = match ws.category_of_mor(mor).map_err(usage)? {
        CatRef::Graphs => ws.graph_mor(mor).map_err(usage)?,
        CatRef::Lattice(..) => return Err(usage(format!("`{mor}` is a lattice morphism; sentences are rendered for graph morphisms"))),
    };
    let s = render_regular_sentence(&h);
    let mut r = Report::new("sentence", "rendered", EXIT_OK);
    r.line(s.clone());
    r.field("sentence", json!(s));
    Ok(r)
}

fn demo_cmd() -> Report {
    let rows = demo::section7();
    let ok = rows.iter().all(|r| r.passed);
    let mut r = Report::new("demo", if ok { "pass" } else { "fail" }, if ok { EXIT_OK } else { EXIT_NEGATIVE });
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for row in &rows {
        r.line(format!("{} {:width$}  {}", if row.passed { "PASS" } else { "FAIL" }, row.name, row.detail));
    }
    r.field(
        "rows",
        Value::Array(rows.iter().map(|row| json!({ "name": row.name, "passed": row.passed, "detail": row.detail })).collect()),
    );
    r
}

