//! Workspaces: named lattices, graphs, morphisms, hypothesis sets and
//! proofs, parsed from and printed back to the declaration language.
//!
//! ```text
//! lattice L { elements: 0 1 2; leq: 0<1, 1<2; }
//! graph G { nodes: a b; edges: a->b; }
//! mor f : 0 -> 2;
//! mor g : G -> G { a |-> a, b |-> b }
//! hset H { f }
//! proof P { (cancel (hyp f) first rest) }
//! ```

use std::fmt;

use indexmap::IndexMap;
use injlog_core::{
    Arrow, Elem, Graph, GraphHom, Lattice, LatticeError, LatticeMor, LatticePresentation,
    MorphismSet, ProofTerm,
};

use crate::lex::{end_pos, tokenize, Cursor, Diagnostic, Pos, Tok};
use crate::sexpr::{proof_from_sexpr, read_sexpr, MorSyntax, ObjSyntax, ProofSyntax};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDecl {
    pub nodes: Vec<String>,
    pub graph: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorDecl {
    Lattice { lattice: String, mor: LatticeMor },
    Graph { src: String, dst: String, hom: GraphHom },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeclKind {
    Lattice,
    Graph,
    Mor,
    HSet,
    Proof,
}

/// Where each declaration starts in the source. Not part of workspace
/// equality.
#[derive(Clone, Debug, Default)]
pub struct SourceMap {
    pub decls: IndexMap<(DeclKind, String), Pos>,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub lattices: IndexMap<String, Lattice>,
    pub graphs: IndexMap<String, GraphDecl>,
    pub morphisms: IndexMap<String, MorDecl>,
    pub hsets: IndexMap<String, Vec<String>>,
    pub proofs: IndexMap<String, ProofSyntax>,
    pub spans: SourceMap,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.lattices == other.lattices
            && self.graphs == other.graphs
            && self.morphisms == other.morphisms
            && self.hsets == other.hsets
            && self.proofs == other.proofs
    }
}

impl Eq for Workspace {}

/// The category a query runs in.
#[derive(Clone, Copy, Debug)]
pub enum CatRef<'w> {
    Lattice(&'w str, &'w Lattice),
    Graphs,
}

pub fn parse(src: &str) -> Result<Workspace, Diagnostic> {
    let mut p = Parser { cur: Cursor::new(tokenize(src)?, end_pos(src)), ws: Workspace::default() };
    while !p.cur.at_end() {
        p.decl()?;
    }
    Ok(p.ws)
}

struct Parser {
    cur: Cursor,
    ws: Workspace,
}

fn list_hint(what: &str, known: impl Iterator<Item = impl AsRef<str>>) -> String {
    let known: Vec<String> = known.map(|s| format!("`{}`", s.as_ref())).collect();
    if known.is_empty() {
        format!("declare the {what} first")
    } else {
        format!("known {what}s: {}", known.join(", "))
    }
}

impl Parser {
    fn decl(&mut self) -> Result<(), Diagnostic> {
        let (kw, pos) = self.cur.ident("a declaration keyword")?;
        let kind = match kw.as_str() {
            "lattice" => DeclKind::Lattice,
            "graph" => DeclKind::Graph,
            "mor" => DeclKind::Mor,
            "hset" => DeclKind::HSet,
            "proof" => DeclKind::Proof,
            other => {
                return Err(Diagnostic::new(
                    pos,
                    format!("unknown declaration `{other}`"),
                    "declarations start with lattice, graph, mor, hset or proof",
                ))
            }
        };
        let (name, name_pos) = self.cur.ident("a name")?;
        if self.ws.spans.decls.contains_key(&(kind, name.clone())) {
            return Err(Diagnostic::new(name_pos, format!("`{name}` is declared twice"), "pick a fresh name"));
        }
        match kind {
            DeclKind::Lattice => self.lattice(&name, name_pos)?,
            DeclKind::Graph => self.graph(&name)?,
            DeclKind::Mor => self.mor(&name)?,
            DeclKind::HSet => self.hset(&name)?,
            DeclKind::Proof => {
                self.cur.expect(&Tok::LBrace, "a proof body is `{ (term ...) }`")?;
                let e = read_sexpr(&mut self.cur)?;
                let p = proof_from_sexpr(&e)?;
                self.cur.expect(&Tok::RBrace, "a proof holds a single term")?;
                self.ws.proofs.insert(name.clone(), p);
            }
        }
        self.ws.spans.decls.insert((kind, name), pos);
        Ok(())
    }

    /// `key: ...;` sections inside braces. Returns the section name.
    fn section(&mut self, allowed: &[&str]) -> Result<Option<(String, Pos)>, Diagnostic> {
        if self.cur.eat(&Tok::RBrace) {
            return Ok(None);
        }
        let (key, pos) = self.cur.ident("a section name")?;
        if !allowed.contains(&key.as_str()) {
            return Err(Diagnostic::new(pos, format!("unknown section `{key}`"), format!("sections here: {}", allowed.join(", "))));
        }
        self.cur.expect(&Tok::Colon, &format!("write `{key}:` before the entries"))?;
        Ok(Some((key, pos)))
    }

    fn names_until_semi(&mut self) -> Result<Vec<(String, Pos)>, Diagnostic> {
        let mut out = Vec::new();
        while !self.cur.eat(&Tok::Semi) {
            out.push(self.cur.ident("a name or `;`")?);
        }
        Ok(out)
    }

    /// `a SEP b, c SEP d, ...;` possibly empty.
    fn pairs_until_semi(&mut self, sep: Tok, shape: &str) -> Result<Vec<((String, Pos), (String, Pos))>, Diagnostic> {
        let mut out = Vec::new();
        if self.cur.eat(&Tok::Semi) {
            return Ok(out);
        }
        loop {
            let a = self.cur.ident("a name")?;
            self.cur.expect(&sep, &format!("entries look like `{shape}`"))?;
            let b = self.cur.ident("a name")?;
            out.push((a, b));
            if self.cur.eat(&Tok::Semi) {
                return Ok(out);
            }
            self.cur.expect(&Tok::Comma, "separate entries with `,` and end the list with `;`")?;
        }
    }

    fn lattice(&mut self, name: &str, name_pos: Pos) -> Result<(), Diagnostic> {
        self.cur.expect(&Tok::LBrace, "a lattice body is `{ elements: ...; leq: ...; }`")?;
        let mut elements: Vec<(String, Pos)> = Vec::new();
        let mut pairs = Vec::new();
        while let Some((key, _)) = self.section(&["elements", "leq"])? {
            if key == "elements" {
                elements.extend(self.names_until_semi()?);
            } else {
                pairs.extend(self.pairs_until_semi(Tok::Less, "a<b")?);
            }
        }
        let mut names: Vec<String> = Vec::new();
        for (e, pos) in &elements {
            if names.contains(e) {
                return Err(Diagnostic::new(*pos, format!("element `{e}` listed twice"), "element names are unique within a lattice"));
            }
            names.push(e.clone());
        }
        let index = |(e, pos): &(String, Pos)| {
            names.iter().position(|n| n == e).ok_or_else(|| {
                Diagnostic::new(*pos, format!("unknown element `{e}` in lattice `{name}`"), list_hint("element", names.iter()))
            })
        };
        let mut gens = Vec::new();
        for (a, b) in &pairs {
            gens.push((index(a)?, index(b)?));
        }
        let presentation = LatticePresentation::from_generators(names.clone(), &gens);
        let lattice = Lattice::poset(&presentation).map_err(|e| {
            let hint = match e {
                LatticeError::Empty => "list at least one element",
                LatticeError::NotAntisymmetric(..) => "the generating relation has a cycle; remove one of its pairs",
                _ => "check the `leq` pairs",
            };
            Diagnostic::new(name_pos, format!("lattice `{name}`: {e}"), hint)
        })?;
        self.ws.lattices.insert(name.into(), lattice);
        Ok(())
    }

    fn graph(&mut self, name: &str) -> Result<(), Diagnostic> {
        self.cur.expect(&Tok::LBrace, "a graph body is `{ nodes: ...; edges: ...; }`")?;
        let mut nodes: Vec<String> = Vec::new();
        let mut edges = Vec::new();
        while let Some((key, _)) = self.section(&["nodes", "edges"])? {
            if key == "nodes" {
                for (n, pos) in self.names_until_semi()? {
                    if nodes.contains(&n) {
                        return Err(Diagnostic::new(pos, format!("node `{n}` listed twice"), "node names are unique within a graph"));
                    }
                    nodes.push(n);
                }
            } else {
                edges.extend(self.pairs_until_semi(Tok::Arrow, "a->b")?);
            }
        }
        let index = |(n, pos): &(String, Pos)| {
            nodes.iter().position(|m| m == n).ok_or_else(|| {
                Diagnostic::new(*pos, format!("unknown node `{n}` in graph `{name}`"), list_hint("node", nodes.iter()))
            })
        };
        let mut idx = Vec::new();
        for (a, b) in &edges {
            idx.push((index(a)?, index(b)?));
        }
        let graph = Graph::new(nodes.len(), idx).expect("edge endpoints were resolved");
        self.ws.graphs.insert(name.into(), GraphDecl { nodes, graph });
        Ok(())
    }

    fn mor(&mut self, name: &str) -> Result<(), Diagnostic> {
        self.cur.expect(&Tok::Colon, "write `mor NAME : SRC -> DST ...`")?;
        let src = self.cur.ident("a source")?;
        self.cur.expect(&Tok::Arrow, "write `SRC -> DST`")?;
        let dst = self.cur.ident("a target")?;
        let decl = if self.cur.eat(&Tok::Semi) {
            self.lattice_mor(&src, &dst)?
        } else {
            self.graph_mor(&src, &dst)?
        };
        self.ws.morphisms.insert(name.into(), decl);
        Ok(())
    }

    fn lattice_mor(&self, (a, a_pos): &(String, Pos), (b, _): &(String, Pos)) -> Result<MorDecl, Diagnostic> {
        if self.ws.graphs.contains_key(a) {
            return Err(Diagnostic::new(*a_pos, format!("`{a}` is a graph; a graph morphism needs a map"), "write `{ x |-> y, ... }` instead of `;`"));
        }
        let mut hits = Vec::new();
        for (lname, l) in &self.ws.lattices {
            if let (Some(x), Some(y)) = (qualified(lname, l, a), qualified(lname, l, b)) {
                hits.push((lname.clone(), l, x, y));
            }
        }
        match hits.len() {
            0 => Err(Diagnostic::new(
                *a_pos,
                format!("no lattice has both `{a}` and `{b}` as elements"),
                list_hint("lattice", self.ws.lattices.keys()),
            )),
            1 => {
                let (lattice, l, x, y) = hits.pop().unwrap();
                if !l.leq(x, y) {
                    return Err(Diagnostic::new(
                        *a_pos,
                        format!("`{a}` is not below `{b}` in lattice `{lattice}`"),
                        "morphisms of a lattice go upward; swap the ends or add a `leq` pair",
                    ));
                }
                Ok(MorDecl::Lattice { lattice, mor: LatticeMor { from: x, to: y } })
            }
            _ => Err(Diagnostic::new(
                *a_pos,
                format!("`{a} -> {b}` fits more than one lattice"),
                format!("qualify the ends, e.g. `{}.{a}`", hits[0].0),
            )),
        }
    }

    fn graph_mor(&mut self, (s, s_pos): &(String, Pos), (t, t_pos): &(String, Pos)) -> Result<MorDecl, Diagnostic> {
        let brace = self.cur.pos();
        self.cur.expect(&Tok::LBrace, "end a lattice morphism with `;` or give a graph map `{ x |-> y, ... }`")?;
        let lookup = |n: &String, pos: &Pos| {
            self.ws.graphs.get(n).ok_or_else(|| {
                let hint = if self.ws.lattices.values().any(|l| l.elem(n).is_some()) {
                    "lattice morphisms end with `;`, not a map".to_string()
                } else {
                    list_hint("graph", self.ws.graphs.keys())
                };
                Diagnostic::new(*pos, format!("unknown graph `{n}`"), hint)
            })
        };
        let src = lookup(s, s_pos)?.clone();
        let dst = lookup(t, t_pos)?.clone();
        let mut map = vec![None; src.nodes.len()];
        if !self.cur.eat(&Tok::RBrace) {
            loop {
                let (x, x_pos) = self.cur.ident("a source node")?;
                self.cur.expect(&Tok::MapsTo, "entries look like `x |-> y`")?;
                let (y, y_pos) = self.cur.ident("a target node")?;
                let i = src.nodes.iter().position(|n| *n == x).ok_or_else(|| {
                    Diagnostic::new(x_pos, format!("`{x}` is not a node of `{s}`"), list_hint("node", src.nodes.iter()))
                })?;
                let j = dst.nodes.iter().position(|n| *n == y).ok_or_else(|| {
                    Diagnostic::new(y_pos, format!("`{y}` is not a node of `{t}`"), list_hint("node", dst.nodes.iter()))
                })?;
                if map[i].is_some() {
                    return Err(Diagnostic::new(x_pos, format!("node `{x}` is mapped twice"), "give each node exactly one image"));
                }
                map[i] = Some(j);
                if self.cur.eat(&Tok::RBrace) {
                    break;
                }
                self.cur.expect(&Tok::Comma, "separate entries with `,` and close the map with `}`")?;
            }
        }
        if let Some(i) = map.iter().position(Option::is_none) {
            return Err(Diagnostic::new(
                brace,
                format!("total map required: node `{}` of `{s}` has no image", src.nodes[i]),
                format!("add `{} |-> …` to the map", src.nodes[i]),
            ));
        }
        let map: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
        if let Some((a, b)) = src.graph.edges().find(|&(a, b)| !dst.graph.has_edge(map[a], map[b])) {
            return Err(Diagnostic::new(
                brace,
                format!(
                    "not a homomorphism: edge {}->{} of `{s}` goes to {}->{}, which is not an edge of `{t}`",
                    src.nodes[a], src.nodes[b], dst.nodes[map[a]], dst.nodes[map[b]]
                ),
                "edges must map to edges",
            ));
        }
        let hom = GraphHom::new(src.graph, dst.graph, map).expect("checked above");
        Ok(MorDecl::Graph { src: s.clone(), dst: t.clone(), hom })
    }

    fn hset(&mut self, name: &str) -> Result<(), Diagnostic> {
        self.cur.expect(&Tok::LBrace, "a hypothesis set is `{ m1, m2, ... }`")?;
        let mut members: Vec<String> = Vec::new();
        let mut cat: Option<(String, Pos)> = None;
        if !self.cur.eat(&Tok::RBrace) {
            loop {
                let (m, pos) = self.cur.ident("a morphism name")?;
                let decl = self.ws.morphisms.get(&m).ok_or_else(|| {
                    Diagnostic::new(pos, format!("unknown morphism `{m}`"), list_hint("morphism", self.ws.morphisms.keys()))
                })?;
                let here = match decl {
                    MorDecl::Lattice { lattice, .. } => format!("lattice `{lattice}`"),
                    MorDecl::Graph { .. } => "graphs".to_string(),
                };
                match &cat {
                    Some((c, first)) if *c != here => {
                        return Err(Diagnostic::new(
                            pos,
                            format!("`{m}` lives in {here} but earlier members live in {c}"),
                            format!("all members must share the category of the one at {first}"),
                        ))
                    }
                    None => cat = Some((here, pos)),
                    _ => {}
                }
                if members.contains(&m) {
                    return Err(Diagnostic::new(pos, format!("`{m}` listed twice"), "list each hypothesis once"));
                }
                members.push(m);
                if self.cur.eat(&Tok::RBrace) {
                    break;
                }
                self.cur.expect(&Tok::Comma, "separate members with `,` and close the set with `}`")?;
            }
        }
        self.ws.hsets.insert(name.into(), members);
        Ok(())
    }
}

/// Resolves `a` or `L.a` to an element of lattice `lname`.
fn qualified(lname: &str, l: &Lattice, e: &str) -> Option<Elem> {
    if let Some(rest) = e.strip_prefix(lname).and_then(|r| r.strip_prefix('.')) {
        if let Some(x) = l.elem(rest) {
            return Some(x);
        }
    }
    l.elem(e)
}

/// Resolution of names and inline syntax against a workspace.
impl Workspace {
    pub fn category(&self, name: &str) -> Result<CatRef<'_>, String> {
        if let Some((n, l)) = self.lattices.get_key_value(name) {
            return Ok(CatRef::Lattice(n, l));
        }
        if matches!(name, "graphs" | "graph" | "Graph") {
            return Ok(CatRef::Graphs);
        }
        Err(format!("unknown category `{name}`; {}, or `graphs`", list_hint("lattice", self.lattices.keys())))
    }

    /// The category of a declared morphism.
    pub fn category_of_mor(&self, name: &str) -> Result<CatRef<'_>, String> {
        match self.morphisms.get(name) {
            Some(MorDecl::Lattice { lattice, .. }) => self.category(lattice),
            Some(MorDecl::Graph { .. }) => Ok(CatRef::Graphs),
            None => Err(format!("unknown morphism `{name}`; {}", list_hint("morphism", self.morphisms.keys()))),
        }
    }

    /// The category shared by the members of a hypothesis set, if any.
    pub fn category_of_hset(&self, name: &str) -> Result<Option<CatRef<'_>>, String> {
        let members = self.hset_members(name)?;
        members.first().map(|m| self.category_of_mor(m)).transpose()
    }

    fn hset_members(&self, name: &str) -> Result<&Vec<String>, String> {
        self.hsets
            .get(name)
            .ok_or_else(|| format!("unknown hypothesis set `{name}`; {}", list_hint("hypothesis set", self.hsets.keys())))
    }

    pub fn lattice_mor(&self, lattice: &str, name: &str) -> Result<LatticeMor, String> {
        match self.morphisms.get(name) {
            Some(MorDecl::Lattice { lattice: l, mor }) if l == lattice => Ok(*mor),
            Some(_) => Err(format!("morphism `{name}` does not live in lattice `{lattice}`")),
            None => Err(format!("unknown morphism `{name}`; {}", list_hint("morphism", self.morphisms.keys()))),
        }
    }

    pub fn graph_mor(&self, name: &str) -> Result<GraphHom, String> {
        match self.morphisms.get(name) {
            Some(MorDecl::Graph { hom, .. }) => Ok(hom.clone()),
            Some(_) => Err(format!("morphism `{name}` is not a graph morphism")),
            None => Err(format!("unknown morphism `{name}`; {}", list_hint("morphism", self.morphisms.keys()))),
        }
    }

    pub fn lattice_hset(&self, lattice: &str, name: &str) -> Result<MorphismSet<LatticeMor>, String> {
        let mut set = MorphismSet::new();
        for m in self.hset_members(name)? {
            set.insert(m.clone(), self.lattice_mor(lattice, m)?).expect("hset members are unique");
        }
        Ok(set)
    }

    pub fn graph_hset(&self, name: &str) -> Result<MorphismSet<GraphHom>, String> {
        let mut set = MorphismSet::new();
        for m in self.hset_members(name)? {
            set.insert(m.clone(), self.graph_mor(m)?).expect("hset members are unique");
        }
        Ok(set)
    }

    pub fn graph(&self, name: &str) -> Result<&Graph, String> {
        self.graphs
            .get(name)
            .map(|d| &d.graph)
            .ok_or_else(|| format!("unknown graph `{name}`; {}", list_hint("graph", self.graphs.keys())))
    }

    pub fn element(&self, lattice: &str, name: &str) -> Result<Elem, String> {
        let l = &self.lattices[lattice];
        qualified(lattice, l, name)
            .ok_or_else(|| format!("`{name}` is not an element of `{lattice}`; {}", list_hint("element", l.names().iter())))
    }

    fn graph_obj(&self, o: &ObjSyntax) -> Result<Graph, String> {
        match o {
            ObjSyntax::Named(n) => self.graph(n).cloned(),
            ObjSyntax::Graph { nodes, edges } => Graph::new(*nodes, edges.iter().copied()).map_err(|e| e.to_string()),
        }
    }

    fn lattice_mor_syntax(&self, lattice: &str, m: &MorSyntax) -> Result<LatticeMor, String> {
        match m {
            MorSyntax::Named(n) => self.lattice_mor(lattice, n),
            MorSyntax::Lattice { from, to } => {
                Ok(LatticeMor { from: self.element(lattice, from)?, to: self.element(lattice, to)? })
            }
            MorSyntax::Hom { .. } => Err(format!("a graph morphism appears in a proof over lattice `{lattice}`")),
        }
    }

    fn graph_mor_syntax(&self, m: &MorSyntax) -> Result<GraphHom, String> {
        match m {
            MorSyntax::Named(n) => self.graph_mor(n),
            MorSyntax::Hom { src, dst, map } => {
                GraphHom::new(self.graph_obj(src)?, self.graph_obj(dst)?, map.clone()).map_err(|e| e.to_string())
            }
            MorSyntax::Lattice { from, to } => Err(format!("`(mor {from} {to})` is a lattice morphism; graphs use `(hom ...)`")),
        }
    }

    pub fn lattice_proof(&self, lattice: &str, p: &ProofSyntax) -> Result<ProofTerm<Elem, LatticeMor>, String> {
        let rec = |q: &ProofSyntax| self.lattice_proof(lattice, q);
        Ok(match p {
            ProofSyntax::Hyp(n) => ProofTerm::Hyp(n.clone()),
            ProofSyntax::Id(ObjSyntax::Named(n)) => ProofTerm::Identity(self.element(lattice, n)?),
            ProofSyntax::Id(other) => return Err(format!("`{other}` is not an element of `{lattice}`")),
            ProofSyntax::Comp(a, b) => ProofTerm::compose(rec(a)?, rec(b)?),
            ProofSyntax::Cancel(q, first, rest) => ProofTerm::cancel(
                rec(q)?,
                self.lattice_mor_syntax(lattice, first)?,
                self.lattice_mor_syntax(lattice, rest)?,
            ),
            ProofSyntax::Push(q, along) => ProofTerm::push(rec(q)?, self.lattice_mor_syntax(lattice, along)?),
            ProofSyntax::Coprod(qs) => ProofTerm::CoprodN(qs.iter().map(rec).collect::<Result<_, _>>()?),
            ProofSyntax::WidePush(qs) => ProofTerm::WidePushN(qs.iter().map(rec).collect::<Result<_, _>>()?),
        })
    }

    pub fn graph_proof(&self, p: &ProofSyntax) -> Result<ProofTerm<Graph, GraphHom>, String> {
        let rec = |q: &ProofSyntax| self.graph_proof(q);
        Ok(match p {
            ProofSyntax::Hyp(n) => ProofTerm::Hyp(n.clone()),
            ProofSyntax::Id(o) => ProofTerm::Identity(self.graph_obj(o)?),
            ProofSyntax::Comp(a, b) => ProofTerm::compose(rec(a)?, rec(b)?),
            ProofSyntax::Cancel(q, first, rest) => {
                ProofTerm::cancel(rec(q)?, self.graph_mor_syntax(first)?, self.graph_mor_syntax(rest)?)
            }
            ProofSyntax::Push(q, along) => ProofTerm::push(rec(q)?, self.graph_mor_syntax(along)?),
            ProofSyntax::Coprod(qs) => ProofTerm::CoprodN(qs.iter().map(rec).collect::<Result<_, _>>()?),
            ProofSyntax::WidePush(qs) => ProofTerm::WidePushN(qs.iter().map(rec).collect::<Result<_, _>>()?),
        })
    }

    /// A declared graph equal to `g`, or its inline form.
    pub fn graph_syntax(&self, g: &Graph) -> ObjSyntax {
        match self.graphs.iter().find(|(_, d)| d.graph == *g) {
            Some((n, _)) => ObjSyntax::Named(n.clone()),
            None => ObjSyntax::Graph { nodes: g.node_count(), edges: g.edges().collect() },
        }
    }

    pub fn hom_syntax(&self, h: &GraphHom) -> MorSyntax {
        MorSyntax::Hom { src: self.graph_syntax(h.dom()), dst: self.graph_syntax(h.cod()), map: h.map().to_vec() }
    }

    pub fn lattice_mor_syntax_of(&self, lattice: &Lattice, m: &LatticeMor) -> MorSyntax {
        MorSyntax::Lattice { from: lattice.name(m.from).into(), to: lattice.name(m.to).into() }
    }

    pub fn lattice_proof_syntax(&self, l: &Lattice, p: &ProofTerm<Elem, LatticeMor>) -> ProofSyntax {
        let rec = |q: &ProofTerm<Elem, LatticeMor>| Box::new(self.lattice_proof_syntax(l, q));
        match p {
            ProofTerm::Hyp(n) => ProofSyntax::Hyp(n.clone()),
            ProofTerm::Identity(a) => ProofSyntax::Id(ObjSyntax::Named(l.name(*a).into())),
            ProofTerm::Compose(a, b) => ProofSyntax::Comp(rec(a), rec(b)),
            ProofTerm::Cancel { whole, first, rest } => {
                ProofSyntax::Cancel(rec(whole), self.lattice_mor_syntax_of(l, first), self.lattice_mor_syntax_of(l, rest))
            }
            ProofTerm::Push { premise, along } => ProofSyntax::Push(rec(premise), self.lattice_mor_syntax_of(l, along)),
            ProofTerm::CoprodN(ps) => ProofSyntax::Coprod(ps.iter().map(|q| *rec(q)).collect()),
            ProofTerm::WidePushN(ps) => ProofSyntax::WidePush(ps.iter().map(|q| *rec(q)).collect()),
        }
    }

    pub fn graph_proof_syntax(&self, p: &ProofTerm<Graph, GraphHom>) -> ProofSyntax {
        let rec = |q: &ProofTerm<Graph, GraphHom>| Box::new(self.graph_proof_syntax(q));
        match p {
            ProofTerm::Hyp(n) => ProofSyntax::Hyp(n.clone()),
            ProofTerm::Identity(a) => ProofSyntax::Id(self.graph_syntax(a)),
            ProofTerm::Compose(a, b) => ProofSyntax::Comp(rec(a), rec(b)),
            ProofTerm::Cancel { whole, first, rest } => {
                ProofSyntax::Cancel(rec(whole), self.hom_syntax(first), self.hom_syntax(rest))
            }
            ProofTerm::Push { premise, along } => ProofSyntax::Push(rec(premise), self.hom_syntax(along)),
            ProofTerm::CoprodN(ps) => ProofSyntax::Coprod(ps.iter().map(|q| *rec(q)).collect()),
            ProofTerm::WidePushN(ps) => ProofSyntax::WidePush(ps.iter().map(|q| *rec(q)).collect()),
        }
    }
}

/// Covering pairs `a < b` with nothing strictly between.
fn covers(l: &Lattice) -> Vec<(Elem, Elem)> {
    let els: Vec<Elem> = l.elements().collect();
    let lt = |a: Elem, b: Elem| a != b && l.leq(a, b);
    let mut out = Vec::new();
    for &a in &els {
        for &b in &els {
            if lt(a, b) && !els.iter().any(|&c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

impl fmt::Display for Workspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, l) in &self.lattices {
            writeln!(f, "lattice {name} {{")?;
            writeln!(f, "  elements: {};", l.names().join(" "))?;
            let leq: Vec<String> = covers(l).iter().map(|&(a, b)| format!("{}<{}", l.name(a), l.name(b))).collect();
            if leq.is_empty() {
                writeln!(f, "  leq: ;")?;
            } else {
                writeln!(f, "  leq: {};", leq.join(", "))?;
            }
            writeln!(f, "}}")?;
        }
        for (name, g) in &self.graphs {
            writeln!(f, "graph {name} {{")?;
            writeln!(f, "  nodes: {};", g.nodes.join(" "))?;
            let edges: Vec<String> =
                g.graph.edges().map(|(a, b)| format!("{}->{}", g.nodes[a], g.nodes[b])).collect();
            writeln!(f, "  edges: {};", edges.join(", "))?;
            writeln!(f, "}}")?;
        }
        for (name, m) in &self.morphisms {
            match m {
                MorDecl::Lattice { lattice, mor } => {
                    let l = &self.lattices[lattice];
                    writeln!(f, "mor {name} : {lattice}.{} -> {lattice}.{};", l.name(mor.from), l.name(mor.to))?;
                }
                MorDecl::Graph { src, dst, hom } => {
                    let (s, t) = (&self.graphs[src], &self.graphs[dst]);
                    let entries: Vec<String> =
                        hom.map().iter().enumerate().map(|(i, &j)| format!("{} |-> {}", s.nodes[i], t.nodes[j])).collect();
                    writeln!(f, "mor {name} : {src} -> {dst} {{ {} }}", entries.join(", "))?;
                }
            }
        }
        for (name, members) in &self.hsets {
            writeln!(f, "hset {name} {{ {} }}", members.join(", "))?;
        }
        for (name, p) in &self.proofs {
            writeln!(f, "proof {name} {{ {p} }}")?;
        }
        Ok(())
    }
}
