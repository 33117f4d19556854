//! The worked examples of rule necessity on small lattices and the clique
//! family on graphs, run as a pass/fail table.

use injlog_core::graph::{bounded_consequence, enumerate_graphs, BoundedVerdict};
use injlog_core::{
    is_injective, prove, saturate, Graph, GraphCat, GraphHom, Lattice, LatticeMor, MorphismSet,
    Rule, RuleMask, SearchBudget, SearchError,
};

use crate::sexpr::ObjSyntax;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemoRow {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn set(ms: &[LatticeMor]) -> MorphismSet<LatticeMor> {
    MorphismSet::from_entries(ms.iter().enumerate().map(|(i, m)| (format!("h{i}"), *m))).unwrap()
}

/// Full saturation derives `goal`; saturation without `rule` does not.
fn necessity(name: &'static str, l: &Lattice, hs: &[LatticeMor], goal: LatticeMor, rule: Rule) -> DemoRow {
    let full = saturate(l, &set(hs), RuleMask::ALL).expect("fixtures are complete lattices");
    let reduced = saturate(l, &set(hs), RuleMask::ALL.without(rule)).expect("fixtures are complete lattices");
    let (with, without) = (full.derived.contains(&goal), reduced.derived.contains(&goal));
    let goal_name = format!("{} -> {}", l.name(goal.from), l.name(goal.to));
    DemoRow {
        name,
        passed: with && !without,
        detail: format!("{goal_name}: derived with all rules = {with}, without {rule} = {without}"),
    }
}

pub fn clique_hyps(max_k: usize) -> MorphismSet<GraphHom> {
    MorphismSet::from_entries((1..=max_k).map(|k| (format!("c{k}"), GraphHom::from_empty(&Graph::clique(k))))).unwrap()
}

pub fn section7() -> Vec<DemoRow> {
    let chain = Lattice::chain(3);
    let m = LatticeMor::new;
    let mut rows = vec![
        necessity("cancellation needed", &chain, &[m(0, 2)], m(0, 1), Rule::Cancellation),
        necessity("composition needed", &chain, &[m(0, 1), m(1, 2)], m(0, 2), Rule::Composition),
    ];
    let d = Lattice::diamond();
    rows.push(necessity("pushout needed", &d, &[d.mor("0", "a").unwrap()], d.mor("b", "1").unwrap(), Rule::Pushout));

    let with_id = saturate(&chain, &set(&[]), RuleMask::ALL).unwrap();
    let without_id = saturate(&chain, &set(&[]), RuleMask::ALL.without(Rule::Identity)).unwrap();
    rows.push(DemoRow {
        name: "identity needed",
        passed: with_id.derived.contains(&m(1, 1)) && without_id.derived.is_empty(),
        detail: format!(
            "H empty: {} derived with all rules, {} without identity",
            with_id.derived.len(),
            without_id.derived.len()
        ),
    });

    let zero_c4 = GraphHom::from_empty(&Graph::clique(4));
    let small: Vec<Graph> = enumerate_graphs(3).filter(|g| is_injective(&GraphCat, g, &zero_c4).holds()).collect();
    rows.push(DemoRow {
        name: "small clique-injectives loop",
        passed: !small.is_empty() && small.iter().all(Graph::has_loop),
        detail: format!("{} of 531 graphs on at most 3 nodes are injective w.r.t. 0 -> C4; all have a loop", small.len()),
    });

    let hs = clique_hyps(4);
    let goal = GraphHom::from_empty(&Graph::loop_point());
    let c4 = Graph::clique(4);
    let c4_injective = hs.morphisms().all(|h| is_injective(&GraphCat, &c4, h).holds());
    let at3 = bounded_consequence(&hs, &goal, 3);
    let at4 = bounded_consequence(&hs, &goal, 4);
    rows.push(DemoRow {
        name: "C4 separates",
        passed: c4_injective && !c4.has_loop() && at3.holds() && at4 == BoundedVerdict::Counterexample(c4.clone()),
        detail: format!(
            "bound 3: {}; bound 4: {}; C4 is injective w.r.t. 0 -> C1..C4 and loopless \
             (the separating object of the whole family is the infinite coproduct of all C_n; \
             only its finite stages are realised)",
            verdict_text(&at3),
            verdict_text(&at4)
        ),
    });

    let search = prove(&GraphCat, &hs, &goal, SearchBudget::default());
    rows.push(DemoRow {
        name: "no proof of a loop",
        passed: matches!(search, Err(SearchError::BudgetExhausted { .. })),
        detail: match &search {
            Ok(_) => "search produced a proof".to_string(),
            Err(e) => format!("search: {e}"),
        },
    });
    rows
}

pub fn verdict_text(v: &BoundedVerdict) -> String {
    match v {
        BoundedVerdict::HoldsUpTo(n) => format!("holds-up-to({n})"),
        BoundedVerdict::Counterexample(g) if *g == Graph::clique(g.node_count()) => {
            format!("counterexample C{}", g.node_count())
        }
        BoundedVerdict::Counterexample(g) => {
            format!("counterexample {}", ObjSyntax::Graph { nodes: g.node_count(), edges: g.edges().collect() })
        }
    }
}
