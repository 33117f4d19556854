mod common;

use std::time::Instant;

use common::{hyps, lattice_with_hyps};
use injlog_core::graph::{bounded_consequence, enumerate_graphs};
use injlog_core::{
    check_proof, elaborate, prove, saturate, semantic_consequence, wide_pushout_composite,
    Category, Graph, GraphCat, GraphHom, Lattice, LatticeMor, MorphismSet, ProofTerm, Rule,
    RuleMask, SearchBudget, SearchError,
};
use proptest::prelude::*;

fn derives(l: &Lattice, hs: &[LatticeMor], mask: RuleMask, goal: LatticeMor) -> bool {
    saturate(l, &hyps(hs.iter().copied()), mask).unwrap().derived.contains(&goal)
}

#[test]
fn each_rule_is_needed() {
    let c = Lattice::chain(3);
    let all = RuleMask::ALL;
    let m = LatticeMor::new;
    assert!(derives(&c, &[m(0, 2)], all, m(0, 1)));
    assert!(!derives(&c, &[m(0, 2)], all.without(Rule::Cancellation), m(0, 1)));
    assert!(derives(&c, &[m(0, 1), m(1, 2)], all, m(0, 2)));
    assert!(!derives(&c, &[m(0, 1), m(1, 2)], all.without(Rule::Composition), m(0, 2)));
    let d = Lattice::diamond();
    let h = d.mor("0", "a").unwrap();
    let goal = d.mor("b", "1").unwrap();
    assert!(derives(&d, &[h], all, goal));
    assert!(!derives(&d, &[h], all.without(Rule::Pushout), goal));
    assert!(derives(&c, &[], all, m(1, 1)));
    assert!(saturate(&c, &hyps([]), all.without(Rule::Identity)).unwrap().derived.is_empty());
}

#[test]
fn clique_goal_stays_inconclusive() {
    let hs = MorphismSet::from_entries(
        (1..=4).map(|k| (format!("c{k}"), GraphHom::from_empty(&Graph::clique(k)))),
    )
    .unwrap();
    let goal = GraphHom::from_empty(&Graph::loop_point());
    let start = Instant::now();
    let r = prove(&GraphCat, &hs, &goal, SearchBudget::default());
    assert!(matches!(r, Err(SearchError::BudgetExhausted { .. })), "{r:?}");
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn graph_proofs_are_sound_up_to_three_nodes() {
    let cat = GraphCat;
    let edge = Graph::new(2, [(0, 1)]).unwrap();
    let point_to_edge = GraphHom::new(Graph::discrete(1), edge, vec![0]).unwrap();
    let hs = MorphismSet::from_entries([("e", point_to_edge)]).unwrap();
    let goals = [
        // a path of length two; the canonical numbering of two stacked pushouts
        GraphHom::new(Graph::discrete(1), Graph::new(3, [(0, 1), (1, 2)]).unwrap(), vec![0]).unwrap(),
        GraphHom::new(Graph::loop_point(), Graph::new(2, [(0, 0), (0, 1)]).unwrap(), vec![0]).unwrap(),
        GraphHom::new(Graph::discrete(2), Graph::new(4, [(0, 1), (2, 3)]).unwrap(), vec![2, 0]).unwrap(),
    ];
    let budget = SearchBudget { node_cap: 5, depth_cap: 3, ..SearchBudget::default() };
    for goal in &goals {
        let p = prove(&cat, &hs, goal, budget).unwrap();
        assert_eq!(check_proof(&cat, &hs, &p).as_ref(), Ok(goal));
        assert!(bounded_consequence(&hs, goal, 3).holds());
    }
    // not a consequence: a directed triangle has out-neighbours but no 2-cycle
    let two_cycle = GraphHom::new(Graph::discrete(1), Graph::new(2, [(0, 1), (1, 0)]).unwrap(), vec![0]).unwrap();
    assert!(!bounded_consequence(&hs, &two_cycle, 3).holds());
    assert!(prove(&cat, &hs, &two_cycle, SearchBudget { depth_cap: 2, ..budget }).is_err());
}

fn coprod_of_hyps<O, M>(n: usize) -> ProofTerm<O, M> {
    ProofTerm::CoprodN((0..n).map(|i| ProofTerm::hyp(format!("h{i}"))).collect())
}

fn widepush_of<O, M: Clone>(along: &[M]) -> ProofTerm<O, M> {
    ProofTerm::WidePushN(
        along
            .iter()
            .enumerate()
            .map(|(i, f)| ProofTerm::push(ProofTerm::hyp(format!("h{i}")), f.clone()))
            .collect(),
    )
}

fn check_macros<C: Category>(cat: &C, hs: &[C::Mor], alongs: &[C::Mor]) {
    let set = MorphismSet::from_entries(hs.iter().enumerate().map(|(i, h)| (format!("h{i}"), h.clone()))).unwrap();
    let p = coprod_of_hyps(hs.len());
    let expected = cat.coproduct_morphism(hs).unwrap();
    assert_eq!(check_proof(cat, &set, &p), Ok(expected.clone()));
    let e = elaborate(cat, &set, &p).unwrap();
    assert!(e.is_primitive());
    assert_eq!(check_proof(cat, &set, &e), Ok(expected));

    let pushed: Vec<C::Mor> = hs.iter().zip(alongs).map(|(h, f)| cat.pushout(h, f).unwrap().h_prime).collect();
    let p = widepush_of(alongs);
    let expected = wide_pushout_composite(cat, &pushed).unwrap();
    let e = elaborate(cat, &set, &p).unwrap();
    assert!(e.is_primitive());
    assert_eq!(check_proof(cat, &set, &e), Ok(expected.clone()));
    assert_eq!(check_proof(cat, &set, &p), Ok(expected));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn lattice_macros_elaborate_exactly((l, hs) in lattice_with_hyps(), n in 2usize..=3, pick in any::<usize>()) {
        let ms: Vec<LatticeMor> = hs.morphisms().copied().collect();
        if ms.is_empty() {
            return Ok(());
        }
        let chosen: Vec<LatticeMor> = (0..n).map(|i| ms[(pick + i) % ms.len()]).collect();
        let top = l.top().unwrap();
        let alongs: Vec<LatticeMor> = chosen.iter().map(|h| LatticeMor { from: h.from, to: top }).collect();
        check_macros(&l, &chosen, &alongs);
    }

    #[test]
    fn graph_macros_elaborate_exactly(n in 2usize..=3, seeds in prop::collection::vec(0usize..1000, 4)) {
        let universe: Vec<Graph> = enumerate_graphs(2).collect();
        let point = Graph::discrete(1);
        // the pushed-out legs of a wide pushout share the codomain of the attaching maps
        let to_c = GraphCat.homs(&point, &universe[seeds[3] % universe.len()]);
        let mut hs = Vec::new();
        for &seed in &seeds[..n] {
            let to_b = GraphCat.homs(&point, &universe[seed % universe.len()]);
            if to_b.is_empty() || to_c.is_empty() {
                return Ok(());
            }
            hs.push(to_b[seed % to_b.len()].clone());
        }
        let alongs: Vec<GraphHom> = (0..n).map(|i| to_c[(seeds[i] + i) % to_c.len()].clone()).collect();
        check_macros(&GraphCat, &hs, &alongs);
    }

    #[test]
    fn lattice_search_is_sound((l, hs) in lattice_with_hyps()) {
        for goal in l.all_morphisms() {
            if let Ok(p) = prove(&l, &hs, &goal, SearchBudget::default()) {
                prop_assert_eq!(check_proof(&l, &hs, &p), Ok(goal));
                prop_assert!(semantic_consequence(&l, &hs, &goal, l.elements()).holds());
            }
        }
    }
}
