use std::fmt::Write;

use serde_json::{json, Value};

use super::poset::Poset;

/// `{"elements": [{"id", "label", "orbit"}], "leq": [[i, j]], "covering": [[i, j]], "empty": bool}`.
/// `leq` is the full relation, reflexive pairs included.
pub fn poset_json(p: &Poset, orbits: Option<&[usize]>) -> Value {
    let elements: Vec<Value> = (0..p.len())
        .map(|i| {
            json!({
                "id": i,
                "label": p.label(i),
                "orbit": orbits.map(|o| o[i]),
            })
        })
        .collect();
    let pairs = |v: Vec<(usize, usize)>| v.into_iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>();
    json!({
        "empty": p.is_empty(),
        "elements": elements,
        "leq": pairs(p.relation()),
        "covering": pairs(p.covering()),
    })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram in DOT, edges pointing upward, orbits as fill colors.
pub fn poset_dot(p: &Poset, name: &str, orbits: Option<&[usize]>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, style=filled, colorscheme=set312];").unwrap();
    if p.is_empty() {
        writeln!(out, "  // empty poset").unwrap();
    }
    for i in 0..p.len() {
        let color = orbits.map_or(12, |o| o[i] % 12 + 1);
        writeln!(out, "  n{i} [label=\"{}\", fillcolor={color}];", escape(p.label(i))).unwrap();
    }
    for (i, j) in p.covering() {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
