//! Canonical enumeration of labeled graphs and the bounded semantic
//! consequence check built on it.

use alloc::vec::Vec;

use super::{Graph, GraphCat, GraphHom};
use crate::category::{semantic_consequence, MorphismSet, Verdict};

/// All labeled graphs with at most `max_nodes` nodes: by node count, then
/// by the row-major adjacency bit string read as a binary number (first
/// entry most significant).
#[derive(Clone, Debug)]
pub struct GraphUniverse {
    max_nodes: usize,
    nodes: usize,
    code: u64,
}

pub fn enumerate_graphs(max_nodes: usize) -> GraphUniverse {
    assert!(max_nodes <= 8, "adjacency codes are limited to 64 bits");
    GraphUniverse { max_nodes, nodes: 0, code: 0 }
}

impl GraphUniverse {
    /// Number of graphs still to be produced.
    pub fn remaining(&self) -> u128 {
        if self.nodes > self.max_nodes {
            return 0;
        }
        let this = (1u128 << (self.nodes * self.nodes)) - self.code as u128;
        this + ((self.nodes + 1)..=self.max_nodes)
            .map(|k| 1u128 << (k * k))
            .sum::<u128>()
    }
}

impl Iterator for GraphUniverse {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.nodes > self.max_nodes {
            return None;
        }
        let k = self.nodes;
        let bits = k * k;
        let adj: Vec<bool> = (0..bits)
            .map(|p| (self.code >> (bits - 1 - p)) & 1 == 1)
            .collect();
        let g = Graph::from_adjacency(k, adj);
        self.code += 1;
        if bits == 64 || self.code == 1u64 << bits {
            self.nodes += 1;
            self.code = 0;
        }
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining();
        let r = usize::try_from(r).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Outcome of a semantic check over graphs up to a node bound. A positive
/// answer only ever says "up to N".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedVerdict {
    HoldsUpTo(usize),
    Counterexample(Graph),
}

impl BoundedVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, BoundedVerdict::HoldsUpTo(_))
    }
}

pub fn bounded_consequence(
    hs: &MorphismSet<GraphHom>,
    h: &GraphHom,
    max_nodes: usize,
) -> BoundedVerdict {
    match semantic_consequence(&GraphCat, hs, h, enumerate_graphs(max_nodes)) {
        Verdict::HoldsOnUniverse => BoundedVerdict::HoldsUpTo(max_nodes),
        Verdict::Counterexample(g) => BoundedVerdict::Counterexample(g),
    }
}
