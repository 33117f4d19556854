//! The regular sentence `∀X (∧A(X) → ∃Y ∧B(X,Y))` of a graph morphism: a
//! graph satisfies it exactly when it is injective w.r.t. the morphism.
//!
//! Source nodes are `x0, x1, ...`; target nodes outside the image are
//! `y0, y1, ...` in target order. An image node is written as its least
//! preimage, and nodes glued together by the map give equations.

use injlog_core::GraphHom;

pub fn render_regular_sentence(h: &GraphHom) -> String {
    let (src, tgt) = (h.source(), h.target());
    let mut term: Vec<Option<String>> = vec![None; tgt.node_count()];
    let mut equations = Vec::new();
    for (x, &t) in h.map().iter().enumerate() {
        match &term[t] {
            None => term[t] = Some(format!("x{x}")),
            Some(first) => equations.push(format!("{first} = x{x}")),
        }
    }
    let mut ys = Vec::new();
    for slot in term.iter_mut().filter(|s| s.is_none()) {
        let y = format!("y{}", ys.len());
        ys.push(y.clone());
        *slot = Some(y);
    }
    let name = |v: usize| term[v].as_deref().expect("every node is named");

    let premise: Vec<String> = src.edges().map(|(a, b)| format!("E(x{a},x{b})")).collect();
    let mut conclusion: Vec<String> = tgt.edges().map(|(a, b)| format!("E({},{})", name(a), name(b))).collect();
    conclusion.extend(equations);

    let conj = |atoms: &[String]| if atoms.is_empty() { "true".to_string() } else { atoms.join(" ∧ ") };
    let body = if ys.is_empty() {
        conj(&conclusion)
    } else {
        format!("∃{} ( {} )", ys.join(" "), conj(&conclusion))
    };
    let inner = format!("( {} → {} )", conj(&premise), body);
    if src.node_count() == 0 {
        inner
    } else {
        let xs: Vec<String> = (0..src.node_count()).map(|x| format!("x{x}")).collect();
        format!("∀{} {inner}", xs.join(" "))
    }
}
