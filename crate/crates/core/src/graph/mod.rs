//! The category of finite directed graphs (binary relational structures)
//! and graph homomorphisms.

mod enumerate;
mod factor;
mod hom;
mod union_find;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::category::{Arrow, CatError, Category, Coproduct, Pushout};

pub use enumerate::{bounded_consequence, enumerate_graphs, BoundedVerdict, GraphUniverse};
pub use factor::{factor, FactorizationResult};
pub use hom::{for_each_hom, is_isomorphic};
pub use union_find::UnionFind;

/// A finite graph on nodes `0..node_count`. Loops are allowed; the edge
/// relation is a set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    nodes: usize,
    adj: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    EdgeOutOfRange { from: usize, to: usize, nodes: usize },
    /// The node map has the wrong length.
    NotTotal { expected: usize, got: usize },
    ImageOutOfRange { node: usize, image: usize },
    EdgeNotPreserved { from: usize, to: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::EdgeOutOfRange { from, to, nodes } => {
                write!(f, "edge {from}->{to} out of range for {nodes} nodes")
            }
            GraphError::NotTotal { expected, got } => {
                write!(f, "total map required: {expected} nodes but {got} images")
            }
            GraphError::ImageOutOfRange { node, image } => {
                write!(f, "node {node} is sent to {image}, which is not a target node")
            }
            GraphError::EdgeNotPreserved { from, to } => {
                write!(f, "edge {from}->{to} is not preserved")
            }
        }
    }
}

impl Graph {
    pub fn new(
        nodes: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let mut adj = vec![false; nodes * nodes];
        for (from, to) in edges {
            if from >= nodes || to >= nodes {
                return Err(GraphError::EdgeOutOfRange { from, to, nodes });
            }
            adj[from * nodes + to] = true;
        }
        Ok(Graph { nodes, adj })
    }

    /// The graph with no nodes, which is initial.
    pub fn empty() -> Graph {
        Graph { nodes: 0, adj: Vec::new() }
    }

    /// `n` nodes with every edge `i -> j`, `i != j`, and no loops.
    pub fn clique(n: usize) -> Graph {
        let mut adj = vec![true; n * n];
        for i in 0..n {
            adj[i * n + i] = false;
        }
        Graph { nodes: n, adj }
    }

    /// One node carrying a loop: the terminal graph.
    pub fn loop_point() -> Graph {
        Graph { nodes: 1, adj: vec![true] }
    }

    /// `n` nodes and no edges.
    pub fn discrete(n: usize) -> Graph {
        Graph { nodes: n, adj: vec![false; n * n] }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        from < self.nodes && to < self.nodes && self.adj[from * self.nodes + to]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.nodes;
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k / n, k % n))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count()
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes).filter(|&i| self.adj[i * self.nodes + i])
    }

    pub fn has_loop(&self) -> bool {
        self.loops().next().is_some()
    }

    /// Row-major adjacency bits; used by the canonical enumeration.
    pub(crate) fn from_adjacency(nodes: usize, adj: Vec<bool>) -> Graph {
        debug_assert_eq!(adj.len(), nodes * nodes);
        Graph { nodes, adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.nodes)?;
        f.debug_list().entries(self.edges()).finish()?;
        f.write_str(")")
    }
}

/// A homomorphism, stored with its source and target so equality is on
/// the nose.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphHom {
    source: Graph,
    target: Graph,
    map: Vec<usize>,
}

impl GraphHom {
    pub fn new(source: Graph, target: Graph, map: Vec<usize>) -> Result<GraphHom, GraphError> {
        if map.len() != source.nodes {
            return Err(GraphError::NotTotal { expected: source.nodes, got: map.len() });
        }
        if let Some((node, &image)) = map.iter().enumerate().find(|(_, &v)| v >= target.nodes) {
            return Err(GraphError::ImageOutOfRange { node, image });
        }
        if let Some((from, to)) = source.edges().find(|&(i, j)| !target.has_edge(map[i], map[j])) {
            return Err(GraphError::EdgeNotPreserved { from, to });
        }
        Ok(GraphHom { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Graph, target: Graph, map: Vec<usize>) -> GraphHom {
        debug_assert!(GraphHom::new(source.clone(), target.clone(), map.clone()).is_ok());
        GraphHom { source, target, map }
    }

    pub fn identity(g: &Graph) -> GraphHom {
        GraphHom { source: g.clone(), target: g.clone(), map: (0..g.nodes).collect() }
    }

    /// The unique map out of the empty graph.
    pub fn from_empty(target: &Graph) -> GraphHom {
        GraphHom { source: Graph::empty(), target: target.clone(), map: Vec::new() }
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, node: usize) -> usize {
        self.map[node]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.nodes];
        self.map.iter().all(|&v| !core::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.nodes];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Every target edge between images comes from a source edge.
    pub fn reflects_edges(&self) -> bool {
        let n = self.source.nodes;
        (0..n).all(|i| {
            (0..n).all(|j| {
                !self.target.has_edge(self.map[i], self.map[j]) || self.source.has_edge(i, j)
            })
        })
    }
}

impl Arrow for GraphHom {
    type Obj = Graph;

    fn dom(&self) -> &Graph {
        &self.source
    }

    fn cod(&self) -> &Graph {
        &self.target
    }
}

/// Quotient of the disjoint union of `blocks` by the equivalence generated
/// by `pairs` (indices into the union). Classes are numbered in order of
/// their least member. Returns the quotient and the class of every union
/// index.
fn quotient(blocks: &[&Graph], pairs: impl IntoIterator<Item = (usize, usize)>) -> (Graph, Vec<usize>) {
    let total: usize = blocks.iter().map(|g| g.nodes).sum();
    let mut uf = UnionFind::new(total);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let mut class_of_root = vec![usize::MAX; total];
    let mut class = vec![0; total];
    let mut next = 0;
    for (i, c) in class.iter_mut().enumerate() {
        let r = uf.find(i);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = next;
            next += 1;
        }
        *c = class_of_root[r];
    }
    let mut adj = vec![false; next * next];
    let mut offset = 0;
    for g in blocks {
        for (i, j) in g.edges() {
            adj[class[offset + i] * next + class[offset + j]] = true;
        }
        offset += g.nodes;
    }
    (Graph { nodes: next, adj }, class)
}

fn show(m: &GraphHom) -> String {
    format!("{:?}->{:?} {:?}", m.source, m.target, m.map)
}

/// The category of finite graphs. Stateless; objects are graphs by value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphCat;

impl Category for GraphCat {
    type Obj = Graph;
    type Mor = GraphHom;

    fn homs_limited(&self, a: &Graph, x: &Graph, limit: usize) -> Vec<GraphHom> {
        let mut out = Vec::new();
        if limit == 0 {
            return out;
        }
        for_each_hom(a, x, &vec![None; a.nodes], false, |m| {
            out.push(GraphHom { source: a.clone(), target: x.clone(), map: m.to_vec() });
            if out.len() >= limit {
                core::ops::ControlFlow::Break(())
            } else {
                core::ops::ControlFlow::Continue(())
            }
        });
        out
    }

    fn contains_obj(&self, _a: &Graph) -> bool {
        true
    }

    fn contains_mor(&self, m: &GraphHom) -> bool {
        GraphHom::new(m.source.clone(), m.target.clone(), m.map.clone()).is_ok()
    }

    fn identity(&self, a: &Graph) -> Result<GraphHom, CatError> {
        Ok(GraphHom::identity(a))
    }

    fn compose(&self, g: &GraphHom, f: &GraphHom) -> Result<GraphHom, CatError> {
        if f.target != g.source {
            return Err(CatError::NotComposable { outer: show(g), inner: show(f) });
        }
        Ok(GraphHom {
            source: f.source.clone(),
            target: g.target.clone(),
            map: f.map.iter().map(|&i| g.map[i]).collect(),
        })
    }

    fn homs(&self, a: &Graph, x: &Graph) -> Vec<GraphHom> {
        self.homs_limited(a, x, usize::MAX)
    }

    fn extend_along(&self, h: &GraphHom, f: &GraphHom) -> Option<GraphHom> {
        if h.source != f.source {
            return None;
        }
        let mut fixed = vec![None; h.target.nodes];
        for (x, &hx) in h.map.iter().enumerate() {
            match fixed[hx] {
                Some(v) if v != f.map[x] => return None,
                _ => fixed[hx] = Some(f.map[x]),
            }
        }
        let mut found = None;
        for_each_hom(&h.target, &f.target, &fixed, false, |m| {
            found = Some(m.to_vec());
            core::ops::ControlFlow::Break(())
        });
        found.map(|map| GraphHom { source: h.target.clone(), target: f.target.clone(), map })
    }

    fn pushout(&self, h: &GraphHom, f: &GraphHom) -> Result<Pushout<GraphHom>, CatError> {
        if h.source != f.source {
            return Err(CatError::DomainMismatch { left: show(h), right: show(f) });
        }
        let nb = h.target.nodes;
        let pairs = (0..h.source.nodes).map(|x| (h.map[x], nb + f.map[x]));
        let (p, class) = quotient(&[&h.target, &f.target], pairs);
        let f_prime = GraphHom { source: h.target.clone(), target: p.clone(), map: class[..nb].to_vec() };
        let h_prime = GraphHom { source: f.target.clone(), target: p, map: class[nb..].to_vec() };
        Ok(Pushout { h_prime, f_prime })
    }

    fn pushout_mediator(
        &self,
        h: &GraphHom,
        f: &GraphHom,
        u: &GraphHom,
        v: &GraphHom,
    ) -> Result<GraphHom, CatError> {
        if u.source != h.target || v.source != f.target || u.target != v.target {
            return Err(CatError::NotACocone);
        }
        let po = self.pushout(h, f)?;
        let p = po.h_prime.target.clone();
        let mut map = vec![usize::MAX; p.nodes];
        let legs = [(&po.f_prime, u), (&po.h_prime, v)];
        for (leg, val) in legs {
            for (i, &c) in leg.map.iter().enumerate() {
                let want = val.map[i];
                if map[c] != usize::MAX && map[c] != want {
                    return Err(CatError::NotACocone);
                }
                map[c] = want;
            }
        }
        GraphHom::new(p, u.target.clone(), map).map_err(|_| CatError::NotACocone)
    }

    fn wide_pushout(&self, hs: &[GraphHom]) -> Result<Vec<GraphHom>, CatError> {
        let first = hs.first().ok_or(CatError::EmptyFamily)?;
        if let Some(bad) = hs.iter().find(|h| h.source != first.source) {
            return Err(CatError::DomainMismatch { left: show(first), right: show(bad) });
        }
        let blocks: Vec<&Graph> = hs.iter().map(|h| &h.target).collect();
        let mut offsets = Vec::with_capacity(hs.len());
        let mut acc = 0;
        for g in &blocks {
            offsets.push(acc);
            acc += g.nodes;
        }
        let mut pairs = Vec::new();
        for (k, h) in hs.iter().enumerate().skip(1) {
            for x in 0..first.source.nodes {
                pairs.push((first.map[x], offsets[k] + h.map[x]));
            }
        }
        let (p, class) = quotient(&blocks, pairs);
        Ok(hs
            .iter()
            .zip(offsets)
            .map(|(h, off)| GraphHom {
                source: h.target.clone(),
                target: p.clone(),
                map: class[off..off + h.target.nodes].to_vec(),
            })
            .collect())
    }

    fn coproduct(&self, objs: &[Graph]) -> Result<Coproduct<Graph, GraphHom>, CatError> {
        let (apex, _) = quotient(&objs.iter().collect::<Vec<_>>(), []);
        let mut off = 0;
        let injections = objs
            .iter()
            .map(|g| {
                let m = GraphHom { source: g.clone(), target: apex.clone(), map: (off..off + g.nodes).collect() };
                off += g.nodes;
                m
            })
            .collect();
        Ok(Coproduct { apex, injections })
    }

    fn coproduct_morphism(&self, hs: &[GraphHom]) -> Result<GraphHom, CatError> {
        let doms: Vec<Graph> = hs.iter().map(|h| h.source.clone()).collect();
        let cods: Vec<Graph> = hs.iter().map(|h| h.target.clone()).collect();
        let source = self.coproduct(&doms)?.apex;
        let target = self.coproduct(&cods)?.apex;
        let mut map = Vec::with_capacity(source.nodes);
        let mut off = 0;
        for h in hs {
            map.extend(h.map.iter().map(|&v| v + off));
            off += h.target.nodes;
        }
        Ok(GraphHom { source, target, map })
    }

    fn inverse(&self, m: &GraphHom) -> Option<GraphHom> {
        if m.source.nodes != m.target.nodes || !m.is_injective() || !m.reflects_edges() {
            return None;
        }
        let mut inv = vec![0; m.target.nodes];
        for (i, &v) in m.map.iter().enumerate() {
            inv[v] = i;
        }
        Some(GraphHom { source: m.target.clone(), target: m.source.clone(), map: inv })
    }

    fn size(&self, a: &Graph) -> usize {
        a.nodes
    }

    fn finite_objects(&self) -> Option<Vec<Graph>> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{is_injective, verify_pushout, Injectivity};

    #[test]
    fn clique_shapes() {
        assert_eq!(Graph::clique(0), Graph::empty());
        assert_eq!(Graph::clique(1), Graph::discrete(1));
        assert_eq!(Graph::clique(4).edge_count(), 12);
        assert_ne!(Graph::clique(1), Graph::loop_point());
        assert!(!Graph::clique(5).has_loop());
    }

    #[test]
    fn edge_range_is_checked() {
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::EdgeOutOfRange { from: 0, to: 2, nodes: 2 })
        );
        let g = Graph::new(2, [(0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn hom_validation() {
        let c2 = Graph::clique(2);
        assert!(matches!(
            GraphHom::new(c2.clone(), c2.clone(), vec![0]),
            Err(GraphError::NotTotal { expected: 2, got: 1 })
        ));
        assert!(matches!(
            GraphHom::new(c2.clone(), c2.clone(), vec![0, 0]),
            Err(GraphError::EdgeNotPreserved { from: 0, to: 1 })
        ));
        assert!(matches!(
            GraphHom::new(c2.clone(), c2, vec![0, 5]),
            Err(GraphError::ImageOutOfRange { node: 1, image: 5 })
        ));
    }

    #[test]
    fn identity_and_composition() {
        let cat = GraphCat;
        let c2 = Graph::clique(2);
        let id = cat.identity(&c2).unwrap();
        assert_eq!(id.map(), &[0, 1]);
        let swap = GraphHom::new(c2.clone(), c2.clone(), vec![1, 0]).unwrap();
        assert_eq!(cat.compose(&swap, &swap).unwrap(), id);
        assert_eq!(cat.compose(&id, &swap).unwrap(), swap);
        let c3 = Graph::clique(3);
        let into = GraphHom::new(c2.clone(), c3.clone(), vec![2, 0]).unwrap();
        assert!(cat.compose(&into, &into).is_err());
    }

    #[test]
    fn hom_counts() {
        let cat = GraphCat;
        assert_eq!(cat.homs(&Graph::clique(2), &Graph::clique(3)).len(), 6);
        assert!(cat.homs(&Graph::clique(4), &Graph::clique(3)).is_empty());
        let g = Graph::new(3, [(0, 1), (2, 2)]).unwrap();
        assert_eq!(cat.homs(&Graph::clique(1), &g).len(), 3);
        assert_eq!(cat.homs(&Graph::loop_point(), &g).len(), g.loops().count());
        let hs = cat.homs(&Graph::clique(2), &Graph::clique(3));
        let maps: Vec<&[usize]> = hs.iter().map(|h| h.map()).collect();
        assert_eq!(maps, vec![&[0, 1][..], &[0, 2], &[1, 0], &[1, 2], &[2, 0], &[2, 1]]);
    }

    #[test]
    fn pushout_attaches_an_edge_to_a_loop() {
        let cat = GraphCat;
        let point = Graph::discrete(1);
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        let h = GraphHom::new(point.clone(), edge, vec![0]).unwrap();
        let f = GraphHom::new(point, Graph::loop_point(), vec![0]).unwrap();
        let po = cat.pushout(&h, &f).unwrap();
        let p = po.h_prime.target().clone();
        assert_eq!(p, Graph::new(2, [(0, 0), (0, 1)]).unwrap());
        assert_eq!(po.h_prime.map(), &[0]);
        assert_eq!(po.f_prime.map(), &[0, 1]);
        let report = verify_pushout(&cat, &h, &f, enumerate_graphs(3)).unwrap();
        assert!(report.verified, "{report:?}");
    }

    #[test]
    fn pushout_along_identity_is_h() {
        let cat = GraphCat;
        let h = GraphHom::new(Graph::clique(2), Graph::clique(3), vec![0, 2]).unwrap();
        let id = cat.identity(h.source()).unwrap();
        let po = cat.pushout(&h, &id).unwrap();
        assert!(is_isomorphic(po.h_prime.target(), h.target()));
        assert_eq!(cat.compose(&po.f_prime, &h).unwrap(), cat.compose(&po.h_prime, &id).unwrap());
    }

    #[test]
    fn mediator_matches_cocone() {
        let cat = GraphCat;
        let h = GraphHom::from_empty(&Graph::clique(2));
        let f = GraphHom::from_empty(&Graph::discrete(1));
        let target = Graph::clique(3);
        let u = GraphHom::new(Graph::clique(2), target.clone(), vec![2, 1]).unwrap();
        let v = GraphHom::new(Graph::discrete(1), target.clone(), vec![2]).unwrap();
        let m = cat.pushout_mediator(&h, &f, &u, &v).unwrap();
        let po = cat.pushout(&h, &f).unwrap();
        assert_eq!(cat.compose(&m, &po.f_prime).unwrap(), u);
        assert_eq!(cat.compose(&m, &po.h_prime).unwrap(), v);
    }

    #[test]
    fn coproduct_counts() {
        let cat = GraphCat;
        let cp = cat.coproduct(&[]).unwrap();
        assert_eq!(cp.apex, Graph::empty());
        let c3 = Graph::clique(3);
        let cp = cat.coproduct(core::slice::from_ref(&c3)).unwrap();
        assert_eq!(cp.apex, c3);
        assert_eq!(cp.injections[0], GraphHom::identity(&c3));
        let cp = cat.coproduct(&[Graph::clique(2), Graph::clique(3)]).unwrap();
        assert_eq!(cp.apex.node_count(), 5);
        assert_eq!(cp.apex.edge_count(), 8);
        assert_eq!(cp.injections[1].map(), &[2, 3, 4]);
    }

    #[test]
    fn injectivity_against_cliques() {
        let cat = GraphCat;
        let h = GraphHom::from_empty(&Graph::clique(4));
        assert!(is_injective(&cat, &Graph::clique(4), &h).holds());
        assert_eq!(
            is_injective(&cat, &Graph::clique(3), &h),
            Injectivity::NotInjective(GraphHom::from_empty(&Graph::clique(3)))
        );
        let id = GraphHom::identity(&Graph::clique(2));
        for x in enumerate_graphs(2) {
            assert!(is_injective(&cat, &x, &id).holds());
        }
    }

    #[test]
    fn loop_point_is_injective_wrt_everything_small() {
        let cat = GraphCat;
        let lp = Graph::loop_point();
        for a in enumerate_graphs(2) {
            for b in enumerate_graphs(2) {
                for h in cat.homs(&a, &b) {
                    assert!(is_injective(&cat, &lp, &h).holds());
                }
            }
        }
    }

    #[test]
    fn inverse_requires_iso() {
        let cat = GraphCat;
        let c2 = Graph::clique(2);
        let swap = GraphHom::new(c2.clone(), c2.clone(), vec![1, 0]).unwrap();
        assert_eq!(cat.inverse(&swap), Some(swap.clone()));
        let bij = GraphHom::new(Graph::discrete(2), c2, vec![0, 1]).unwrap();
        assert_eq!(cat.inverse(&bij), None);
    }
}
