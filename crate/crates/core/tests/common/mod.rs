#![allow(dead_code)]

use injlog_core::{Graph, Lattice, LatticeMor, LatticePresentation, MorphismSet};
use proptest::prelude::*;

/// A finite lattice as an intersection-closed family of subsets of a
/// three-element set, ordered by inclusion. The full set is always added,
/// so the family is a complete lattice.
pub fn closure_lattice(generators: &[u8]) -> Lattice {
    let mut family: Vec<u8> = generators.iter().map(|g| g & 0b111).collect();
    family.push(0b111);
    family.sort_by_key(|s| (s.count_ones(), *s));
    family.dedup();
    loop {
        let mut grown = family.clone();
        for a in &family {
            for b in &family {
                grown.push(a & b);
            }
        }
        grown.sort_by_key(|s| (s.count_ones(), *s));
        grown.dedup();
        if grown.len() == family.len() {
            break;
        }
        family = grown;
    }
    let names = family.iter().map(|s| format!("s{s}")).collect();
    let leq = family
        .iter()
        .map(|a| family.iter().map(|b| a & b == *a).collect())
        .collect();
    LatticePresentation::new(names, leq).validate().expect("closure systems are lattices")
}

pub fn lattice_strategy() -> impl Strategy<Value = Lattice> {
    prop::collection::vec(any::<u8>(), 0..5)
        .prop_map(|g| closure_lattice(&g))
        .prop_filter("at most seven elements", |l| l.len() <= 7)
}

pub fn hyps(ms: impl IntoIterator<Item = LatticeMor>) -> MorphismSet<LatticeMor> {
    MorphismSet::from_entries(ms.into_iter().enumerate().map(|(i, m)| (format!("h{i}"), m))).unwrap()
}

/// A lattice with up to six hypotheses drawn from its morphisms.
pub fn lattice_with_hyps() -> impl Strategy<Value = (Lattice, MorphismSet<LatticeMor>)> {
    lattice_strategy().prop_flat_map(|l| {
        let all = l.all_morphisms();
        let picks = prop::collection::vec(prop::sample::select(all), 0..=6);
        (Just(l), picks).prop_map(|(l, mut ms)| {
            ms.sort();
            ms.dedup();
            (l, hyps(ms))
        })
    })
}

pub fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (0..=max_nodes).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges = (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n));
            Graph::new(n, edges).unwrap()
        })
    })
}
