use injlog_core::graph::{bounded_consequence, enumerate_graphs};
use injlog_core::reflection::round_proof;
use injlog_core::{
    check_proof, consequence_via_reflection, reflect, reflection_proof, verify_weak_reflection,
    Graph, GraphCat, GraphHom, MorphismSet,
};

fn clique_hyps(ks: &[usize]) -> MorphismSet<GraphHom> {
    MorphismSet::from_entries(ks.iter().map(|&k| (format!("c{k}"), GraphHom::from_empty(&Graph::clique(k))))).unwrap()
}

#[test]
fn empty_graph_reflects_onto_the_triangle() {
    let hs = clique_hyps(&[3]);
    let t = reflect(&GraphCat, &Graph::empty(), &hs, 4).unwrap();
    assert!(t.converged);
    assert_eq!(t.rounds.len(), 1);
    assert_eq!(*t.reflection(), Graph::clique(3));
    assert!(verify_weak_reflection(&GraphCat, &t, &hs, enumerate_graphs(3)).verified);
    for round in &t.rounds {
        assert_eq!(check_proof(&GraphCat, &hs, &round_proof(round)), Ok(round.connecting.clone()));
    }
    assert_eq!(check_proof(&GraphCat, &hs, &reflection_proof(&t)), Ok(t.r.clone()));
}

#[test]
fn smaller_cliques_follow_through_the_reflection() {
    let hs = clique_hyps(&[3]);
    for k in 0..=3 {
        let h = GraphHom::from_empty(&Graph::clique(k));
        let p = consequence_via_reflection(&GraphCat, &hs, &h, 4).unwrap();
        assert_eq!(check_proof(&GraphCat, &hs, &p), Ok(h.clone()));
        assert!(bounded_consequence(&hs, &h, 3).holds());
    }
    let h = GraphHom::from_empty(&Graph::clique(4));
    assert!(consequence_via_reflection(&GraphCat, &hs, &h, 4).is_err());
}

#[test]
fn two_rounds_when_squares_appear_late() {
    // every edge needs a loop at its source and a reverse edge; the reverse
    // of the starting edge only gets its loop in the second round
    let edge = Graph::new(2, [(0, 1)]).unwrap();
    let looped = GraphHom::new(edge.clone(), Graph::new(2, [(0, 0), (0, 1)]).unwrap(), vec![0, 1]).unwrap();
    let sym = GraphHom::new(edge.clone(), Graph::new(2, [(0, 1), (1, 0)]).unwrap(), vec![0, 1]).unwrap();
    let hs = MorphismSet::from_entries([("looped", looped), ("sym", sym)]).unwrap();
    let t = reflect(&GraphCat, &edge, &hs, 5).unwrap();
    assert!(t.converged);
    assert_eq!(t.rounds.len(), 2);
    assert_eq!(t.rounds[0].object, Graph::new(2, [(0, 0), (0, 1), (1, 0)]).unwrap());
    assert_eq!(*t.reflection(), Graph::new(2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap());
    assert_eq!(check_proof(&GraphCat, &hs, &reflection_proof(&t)), Ok(t.r.clone()));
    assert!(verify_weak_reflection(&GraphCat, &t, &hs, enumerate_graphs(3)).verified);
}
