//! Backtracking homomorphism search.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::Graph;

/// Calls `visit` on every homomorphism `src -> tgt` that agrees with
/// `fixed`, in lexicographic order of node assignments. With `injective`
/// only injective maps are produced. Returns `true` if `visit` broke off.
pub fn for_each_hom(
    src: &Graph,
    tgt: &Graph,
    fixed: &[Option<usize>],
    injective: bool,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> bool {
    debug_assert_eq!(fixed.len(), src.node_count());
    let n = src.node_count();
    let m = tgt.node_count();
    if n == 0 {
        return visit(&[]).is_break();
    }
    if m == 0 || fixed.iter().flatten().any(|&v| v >= m) {
        return false;
    }
    let mut map = vec![0usize; n];
    let mut used = vec![false; m];
    // next candidate to try at each depth
    let mut next = vec![0usize; n];
    let mut depth = 0usize;
    next[0] = fixed[0].unwrap_or(0);
    loop {
        let limit = match fixed[depth] {
            Some(v) => v + 1,
            None => m,
        };
        let mut placed = false;
        while next[depth] < limit {
            let v = next[depth];
            next[depth] += 1;
            if injective && used[v] {
                continue;
            }
            if consistent(src, tgt, &map, depth, v) {
                map[depth] = v;
                placed = true;
                break;
            }
        }
        if placed {
            if injective {
                used[map[depth]] = true;
            }
            if depth + 1 == n {
                if visit(&map).is_break() {
                    return true;
                }
                if injective {
                    used[map[depth]] = false;
                }
                continue;
            }
            depth += 1;
            next[depth] = fixed[depth].unwrap_or(0);
        } else {
            if depth == 0 {
                return false;
            }
            depth -= 1;
            if injective {
                used[map[depth]] = false;
            }
        }
    }
}

fn consistent(src: &Graph, tgt: &Graph, map: &[usize], i: usize, v: usize) -> bool {
    if src.has_edge(i, i) && !tgt.has_edge(v, v) {
        return false;
    }
    (0..i).all(|j| {
        (!src.has_edge(i, j) || tgt.has_edge(v, map[j]))
            && (!src.has_edge(j, i) || tgt.has_edge(map[j], v))
    })
}

/// Labeled-graph isomorphism test, by search for an edge-bijective node
/// bijection.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut loops_a: Vec<usize> = (0..a.node_count()).map(|i| degree(a, i)).collect();
    let mut loops_b: Vec<usize> = (0..b.node_count()).map(|i| degree(b, i)).collect();
    loops_a.sort_unstable();
    loops_b.sort_unstable();
    if loops_a != loops_b {
        return false;
    }
    // injective + equal node and edge counts forces a bijection on edges
    for_each_hom(a, b, &vec![None; a.node_count()], true, |_| ControlFlow::Break(()))
}

fn degree(g: &Graph, i: usize) -> usize {
    let n = g.node_count();
    let out = (0..n).filter(|&j| g.has_edge(i, j)).count();
    let inn = (0..n).filter(|&j| g.has_edge(j, i)).count();
    out * (n + 1) + inn + if g.has_edge(i, i) { 1 << 20 } else { 0 }
}
