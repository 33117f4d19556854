//! (epi, strong mono) factorization of graph homomorphisms.
//!
//! Epimorphisms are the node-surjective maps and strong monomorphisms the
//! embeddings (injective and edge-reflecting), so the middle object is the
//! subgraph of the target induced on the image.

use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, GraphHom};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationResult {
    pub epi_part: GraphHom,
    pub mono_part: GraphHom,
    pub mid: Graph,
}

/// Factors `f = mono ∘ epi`. Image nodes are renumbered in increasing
/// target order.
pub fn factor(f: &GraphHom) -> FactorizationResult {
    let target = f.target();
    let mut in_image = vec![false; target.node_count()];
    for &v in f.map() {
        in_image[v] = true;
    }
    let image: Vec<usize> = (0..target.node_count()).filter(|&v| in_image[v]).collect();
    let mut position = vec![usize::MAX; target.node_count()];
    for (k, &v) in image.iter().enumerate() {
        position[v] = k;
    }
    let mut edges = Vec::new();
    for (a, &u) in image.iter().enumerate() {
        for (b, &v) in image.iter().enumerate() {
            if target.has_edge(u, v) {
                edges.push((a, b));
            }
        }
    }
    let mid = Graph::new(image.len(), edges).expect("image indices are in range");
    let epi_part = GraphHom::new_unchecked(
        f.source().clone(),
        mid.clone(),
        f.map().iter().map(|&v| position[v]).collect(),
    );
    let mono_part = GraphHom::new_unchecked(mid.clone(), target.clone(), image);
    FactorizationResult { epi_part, mono_part, mid }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Category;
    use crate::graph::GraphCat;

    #[test]
    fn constant_map_to_the_loop() {
        let f = GraphHom::new(Graph::clique(2), Graph::loop_point(), vec![0, 0]).unwrap();
        let r = factor(&f);
        assert_eq!(r.mid, Graph::loop_point());
        assert_eq!(GraphCat.compose(&r.mono_part, &r.epi_part).unwrap(), f);
    }

    #[test]
    fn identity_factors_trivially() {
        let g = Graph::new(3, [(0, 1), (2, 2)]).unwrap();
        let id = GraphHom::identity(&g);
        let r = factor(&id);
        assert_eq!(r.epi_part, id);
        assert_eq!(r.mono_part, id);
    }

    #[test]
    fn embedding_has_iso_epi_part() {
        let f = GraphHom::new(Graph::clique(2), Graph::clique(3), vec![2, 0]).unwrap();
        let r = factor(&f);
        assert!(GraphCat.inverse(&r.epi_part).is_some());
        assert!(r.mono_part.is_injective() && r.mono_part.reflects_edges());
    }

    #[test]
    fn non_reflecting_injection_is_not_iso_on_the_left() {
        let f = GraphHom::new(Graph::discrete(2), Graph::clique(2), vec![0, 1]).unwrap();
        let r = factor(&f);
        assert_eq!(r.mid, Graph::clique(2));
        assert!(GraphCat.inverse(&r.epi_part).is_none());
        assert!(r.epi_part.is_surjective());
    }
}
