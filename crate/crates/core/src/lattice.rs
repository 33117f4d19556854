//! Finite posets and finite complete lattices as thin categories.
//!
//! A morphism `a -> b` exists iff `a ≤ b` and is unique, so every
//! construction is a computation on elements: pushouts are joins,
//! coproducts are joins, and injectivity w.r.t. `(a, b)` reads
//! "if `a ≤ x` then `b ≤ x`".

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::category::{Arrow, CatError, Category, Coproduct, MorphismSet, Pushout, Verdict};

/// An element of a lattice, by index into its element list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

/// The unique morphism `from -> to` (requires `from ≤ to`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeMor {
    pub from: Elem,
    pub to: Elem,
}

impl LatticeMor {
    pub fn new(from: usize, to: usize) -> Self {
        LatticeMor { from: Elem(from), to: Elem(to) }
    }
}

impl Arrow for LatticeMor {
    type Obj = Elem;

    fn dom(&self) -> &Elem {
        &self.from
    }

    fn cod(&self) -> &Elem {
        &self.to
    }
}

/// Raw input: element names plus an order matrix, optionally with join and
/// meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePresentation {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub join: Option<Vec<Vec<usize>>>,
    pub meet: Option<Vec<Vec<usize>>>,
}

impl LatticePresentation {
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Self {
        LatticePresentation { elements, leq, join: None, meet: None }
    }

    /// Order generated by `pairs` (`(a, b)` meaning `a ≤ b`): the
    /// reflexive-transitive closure is taken.
    pub fn from_generators(elements: Vec<String>, pairs: &[(usize, usize)]) -> Self {
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::new(elements, leq)
    }

    /// Validates as a complete lattice.
    pub fn validate(&self) -> Result<Lattice, LatticeError> {
        let l = Lattice::poset(self)?;
        if let Some((a, b)) = l.missing_join {
            return Err(LatticeError::NoJoin(l.names[a].clone(), l.names[b].clone()));
        }
        if l.bottom.is_none() {
            return Err(LatticeError::NoBottom);
        }
        Ok(l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    Empty,
    NotSquare,
    NotReflexive(String),
    NotAntisymmetric(String, String),
    NotTransitive(String, String, String),
    NoJoin(String, String),
    NoBottom,
    /// A supplied join/meet table disagrees with the order.
    TableMismatch(&'static str, String, String),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Empty => f.write_str("a lattice needs at least one element"),
            LatticeError::NotSquare => f.write_str("order matrix is not square"),
            LatticeError::NotReflexive(a) => write!(f, "not reflexive at {a}"),
            LatticeError::NotAntisymmetric(a, b) => {
                write!(f, "not antisymmetric: {a} ≤ {b} and {b} ≤ {a}")
            }
            LatticeError::NotTransitive(a, b, c) => {
                write!(f, "not transitive: {a} ≤ {b} ≤ {c} but not {a} ≤ {c}")
            }
            LatticeError::NoJoin(a, b) => write!(f, "no join of {a} and {b}"),
            LatticeError::NoBottom => f.write_str("no bottom element"),
            LatticeError::TableMismatch(t, a, b) => {
                write!(f, "{t} table disagrees with the order at ({a}, {b})")
            }
        }
    }
}

/// A validated finite poset. Joins and meets are tabulated when every
/// pair has one; a complete lattice additionally has a bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    join: Option<Vec<usize>>,
    meet: Option<Vec<usize>>,
    bottom: Option<usize>,
    top: Option<usize>,
    missing_join: Option<(usize, usize)>,
}

fn least_upper_bound(n: usize, leq: &[bool], a: usize, b: usize) -> Option<usize> {
    let ub: Vec<usize> = (0..n).filter(|&x| leq[a * n + x] && leq[b * n + x]).collect();
    ub.iter()
        .copied()
        .find(|&x| ub.iter().all(|&y| leq[x * n + y]))
}

fn greatest_lower_bound(n: usize, leq: &[bool], a: usize, b: usize) -> Option<usize> {
    let lb: Vec<usize> = (0..n).filter(|&x| leq[x * n + a] && leq[x * n + b]).collect();
    lb.iter()
        .copied()
        .find(|&x| lb.iter().all(|&y| leq[y * n + x]))
}

impl Lattice {
    /// Accepts any finite poset. Joins are tabulated only if all exist.
    pub fn poset(p: &LatticePresentation) -> Result<Lattice, LatticeError> {
        let n = p.elements.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if p.leq.len() != n || p.leq.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        let name = |i: usize| p.elements[i].clone();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = p.leq[i][j];
            }
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(LatticeError::NotReflexive(name(i)));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::NotAntisymmetric(name(i), name(j)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j * n + k] && !leq[i * n + k] {
                        return Err(LatticeError::NotTransitive(name(i), name(j), name(k)));
                    }
                }
            }
        }

        let mut join = Some(vec![0; n * n]);
        let mut missing_join = None;
        'outer: for a in 0..n {
            for b in 0..n {
                match least_upper_bound(n, &leq, a, b) {
                    Some(x) => join.as_mut().unwrap()[a * n + b] = x,
                    None => {
                        join = None;
                        missing_join = Some((a, b));
                        break 'outer;
                    }
                }
            }
        }
        let mut meet = Some(vec![0; n * n]);
        'outer: for a in 0..n {
            for b in 0..n {
                match greatest_lower_bound(n, &leq, a, b) {
                    Some(x) => meet.as_mut().unwrap()[a * n + b] = x,
                    None => {
                        meet = None;
                        break 'outer;
                    }
                }
            }
        }
        let bottom = (0..n).find(|&x| (0..n).all(|y| leq[x * n + y]));
        let top = (0..n).find(|&x| (0..n).all(|y| leq[y * n + x]));

        for (table, given, computed) in [("join", &p.join, &join), ("meet", &p.meet, &meet)] {
            if let Some(given) = given {
                for a in 0..n {
                    for b in 0..n {
                        let ok = match computed {
                            Some(c) => given.get(a).and_then(|r| r.get(b)) == Some(&c[a * n + b]),
                            None => false,
                        };
                        if !ok {
                            return Err(LatticeError::TableMismatch(table, name(a), name(b)));
                        }
                    }
                }
            }
        }

        Ok(Lattice {
            names: p.elements.clone(),
            n,
            leq,
            join,
            meet,
            bottom,
            top,
            missing_join,
        })
    }

    /// A chain `0 < 1 < ... < n-1` with elements named by their index.
    pub fn chain(n: usize) -> Lattice {
        let names = (0..n).map(|i| format!("{i}")).collect();
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        LatticePresentation::from_generators(names, &pairs)
            .validate()
            .expect("chains are lattices")
    }

    /// `0 < a, b < 1`, elements in that order.
    pub fn diamond() -> Lattice {
        let names = ["0", "a", "b", "1"].iter().map(|s| String::from(*s)).collect();
        LatticePresentation::from_generators(names, &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .validate()
            .expect("the diamond is a lattice")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.0]
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(Elem)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.n).map(Elem)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.0 * self.n + b.0]
    }

    /// Complete lattice: all binary joins and a bottom.
    pub fn is_complete(&self) -> bool {
        self.join.is_some() && self.bottom.is_some()
    }

    pub fn bottom(&self) -> Option<Elem> {
        self.bottom.map(Elem)
    }

    pub fn top(&self) -> Option<Elem> {
        self.top.map(Elem)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.join.as_ref().map(|j| Elem(j[a.0 * self.n + b.0]))
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.meet.as_ref().map(|m| Elem(m[a.0 * self.n + b.0]))
    }

    /// Join of a finite family; the empty join is the bottom.
    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        let mut acc = self.bottom()?;
        for e in it {
            acc = self.join(acc, e)?;
        }
        Some(acc)
    }

    /// Meet of a finite family; the empty meet is the top.
    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        let mut acc = self.top()?;
        for e in it {
            acc = self.meet(acc, e)?;
        }
        Some(acc)
    }

    /// Pairs `(a, b)` with `a ≤ b`, lexicographic.
    pub fn all_morphisms(&self) -> Vec<LatticeMor> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.leq[a * self.n + b] {
                    out.push(LatticeMor::new(a, b));
                }
            }
        }
        out
    }

    /// The elements injective w.r.t. every member of `hs`:
    /// `{ x : (a, b) ∈ H, a ≤ x ⇒ b ≤ x }`.
    pub fn injectives(&self, hs: &MorphismSet<LatticeMor>) -> BTreeSet<Elem> {
        self.elements()
            .filter(|&x| {
                hs.morphisms()
                    .all(|h| !self.leq(h.from, x) || self.leq(h.to, x))
            })
            .collect()
    }

    /// Exact semantic consequence: the universe is every element.
    pub fn consequence(&self, hs: &MorphismSet<LatticeMor>, h: &LatticeMor) -> Verdict<Elem> {
        crate::category::semantic_consequence(self, hs, h, self.elements())
    }

    pub fn mor(&self, from: &str, to: &str) -> Option<LatticeMor> {
        let m = LatticeMor { from: self.elem(from)?, to: self.elem(to)? };
        self.contains_mor(&m).then_some(m)
    }

    fn need_join(&self) -> Result<(), CatError> {
        match self.missing_join {
            None if self.bottom.is_some() => Ok(()),
            None => Err(CatError::NotCocomplete(String::from("no bottom element"))),
            Some((a, b)) => Err(CatError::NotCocomplete(format!(
                "no join of {} and {}",
                self.names[a], self.names[b]
            ))),
        }
    }

    fn show(&self, m: &LatticeMor) -> String {
        let nm = |e: Elem| self.names.get(e.0).cloned().unwrap_or_else(|| format!("#{}", e.0));
        format!("{}->{}", nm(m.from), nm(m.to))
    }
}

impl Category for Lattice {
    type Obj = Elem;
    type Mor = LatticeMor;

    fn contains_obj(&self, a: &Elem) -> bool {
        a.0 < self.n
    }

    fn contains_mor(&self, m: &LatticeMor) -> bool {
        m.from.0 < self.n && m.to.0 < self.n && self.leq(m.from, m.to)
    }

    fn identity(&self, a: &Elem) -> Result<LatticeMor, CatError> {
        if !self.contains_obj(a) {
            return Err(CatError::UnknownObject(format!("#{}", a.0)));
        }
        Ok(LatticeMor { from: *a, to: *a })
    }

    fn compose(&self, g: &LatticeMor, f: &LatticeMor) -> Result<LatticeMor, CatError> {
        if f.to != g.from {
            return Err(CatError::NotComposable { outer: self.show(g), inner: self.show(f) });
        }
        Ok(LatticeMor { from: f.from, to: g.to })
    }

    fn homs(&self, a: &Elem, x: &Elem) -> Vec<LatticeMor> {
        if self.contains_obj(a) && self.contains_obj(x) && self.leq(*a, *x) {
            vec![LatticeMor { from: *a, to: *x }]
        } else {
            Vec::new()
        }
    }

    fn extend_along(&self, h: &LatticeMor, f: &LatticeMor) -> Option<LatticeMor> {
        (h.from == f.from && self.leq(h.to, f.to)).then_some(LatticeMor { from: h.to, to: f.to })
    }

    fn pushout(&self, h: &LatticeMor, f: &LatticeMor) -> Result<Pushout<LatticeMor>, CatError> {
        if h.from != f.from {
            return Err(CatError::DomainMismatch { left: self.show(h), right: self.show(f) });
        }
        self.need_join()?;
        let p = self.join(h.to, f.to).expect("joins tabulated");
        Ok(Pushout {
            h_prime: LatticeMor { from: f.to, to: p },
            f_prime: LatticeMor { from: h.to, to: p },
        })
    }

    fn pushout_mediator(
        &self,
        h: &LatticeMor,
        f: &LatticeMor,
        u: &LatticeMor,
        v: &LatticeMor,
    ) -> Result<LatticeMor, CatError> {
        let po = self.pushout(h, f)?;
        if u.from != h.to || v.from != f.to || u.to != v.to {
            return Err(CatError::NotACocone);
        }
        let m = LatticeMor { from: po.h_prime.to, to: u.to };
        if !self.contains_mor(&m) {
            return Err(CatError::NotACocone);
        }
        Ok(m)
    }

    fn wide_pushout(&self, hs: &[LatticeMor]) -> Result<Vec<LatticeMor>, CatError> {
        let first = hs.first().ok_or(CatError::EmptyFamily)?;
        if let Some(bad) = hs.iter().find(|h| h.from != first.from) {
            return Err(CatError::DomainMismatch { left: self.show(first), right: self.show(bad) });
        }
        self.need_join()?;
        let p = self.join_all(hs.iter().map(|h| h.to)).expect("joins tabulated");
        Ok(hs.iter().map(|h| LatticeMor { from: h.to, to: p }).collect())
    }

    fn coproduct(&self, objs: &[Elem]) -> Result<Coproduct<Elem, LatticeMor>, CatError> {
        self.need_join()?;
        let apex = self.join_all(objs.iter().copied()).expect("joins tabulated");
        Ok(Coproduct {
            apex,
            injections: objs.iter().map(|&x| LatticeMor { from: x, to: apex }).collect(),
        })
    }

    fn coproduct_morphism(&self, hs: &[LatticeMor]) -> Result<LatticeMor, CatError> {
        self.need_join()?;
        Ok(LatticeMor {
            from: self.join_all(hs.iter().map(|h| h.from)).expect("joins tabulated"),
            to: self.join_all(hs.iter().map(|h| h.to)).expect("joins tabulated"),
        })
    }

    fn inverse(&self, m: &LatticeMor) -> Option<LatticeMor> {
        (m.from == m.to).then_some(*m)
    }

    fn size(&self, _a: &Elem) -> usize {
        1
    }

    fn finite_objects(&self) -> Option<Vec<Elem>> {
        Some(self.elements().collect())
    }
}
