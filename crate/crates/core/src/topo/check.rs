use serde::Serialize;

use super::poset::{GPoset, Poset};

/// Outcome of one certificate condition; `witness` is set on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Condition {
    pub fn new(name: &str, witness: Option<String>) -> Condition {
        Condition {
            name: name.to_string(),
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Direction in which a composite compares with the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    /// The composite is the identity.
    Equal,
    /// x <= composite(x) for all x.
    Above,
    /// composite(x) <= x for all x.
    Below,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuillenCertificate {
    pub conditions: Vec<Condition>,
    /// How H∘F compares with the identity of X.
    pub hf: Comparison,
    /// How F∘H compares with the identity of Y.
    pub fh: Comparison,
    pub pass: bool,
}

fn order_violation(x: &Poset, y: &Poset, f: &[usize]) -> Option<String> {
    for i in 0..x.len() {
        for j in x.up_set(i).ones() {
            if !y.leq(f[i], f[j]) {
                return Some(format!(
                    "{} <= {} but {} !<= {}",
                    x.label(i),
                    x.label(j),
                    y.label(f[i]),
                    y.label(f[j])
                ));
            }
        }
    }
    None
}

fn equivariance_violation(x: &GPoset, y: &GPoset, f: &[usize]) -> Option<String> {
    if x.action().len() != y.action().len() {
        return Some(format!(
            "{} generators act on the source, {} on the target",
            x.action().len(),
            y.action().len()
        ));
    }
    for s in 0..x.action().len() {
        for i in 0..x.len() {
            if f[x.act(s, i)] != y.act(s, f[i]) {
                return Some(format!("generator {s} at {}", x.poset().label(i)));
            }
        }
    }
    None
}

fn compare_with_identity(p: &Poset, composite: impl Fn(usize) -> usize) -> (Comparison, Option<String>) {
    let n = p.len();
    if (0..n).all(|i| composite(i) == i) {
        return (Comparison::Equal, None);
    }
    if (0..n).all(|i| p.leq(i, composite(i))) {
        return (Comparison::Above, None);
    }
    if (0..n).all(|i| p.leq(composite(i), i)) {
        return (Comparison::Below, None);
    }
    let bad = (0..n).find(|&i| !p.leq(i, composite(i))).unwrap();
    (
        Comparison::None,
        Some(format!("{} is not below its image {}", p.label(bad), p.label(composite(bad)))),
    )
}

fn map_shape(name: &str, f: &[usize], from: usize, to: usize) -> Option<String> {
    if f.len() != from {
        return Some(format!("{name} has {} values for {from} elements", f.len()));
    }
    f.iter().find(|&&v| v >= to).map(|v| format!("{name} value {v} out of range"))
}

/// Sufficient combinatorial condition for F, H to be inverse G-homotopy
/// equivalences: both are order preserving and equivariant, and each
/// composite is comparable with the identity in one uniform direction.
pub fn quillen_pair_check(x: &GPoset, y: &GPoset, f: &[usize], h: &[usize]) -> QuillenCertificate {
    let shape = map_shape("F", f, x.len(), y.len()).or_else(|| map_shape("H", h, y.len(), x.len()));
    if let Some(w) = shape {
        return QuillenCertificate {
            conditions: vec![Condition::new("maps well formed", Some(w))],
            hf: Comparison::None,
            fh: Comparison::None,
            pass: false,
        };
    }
    let (hf, hf_w) = compare_with_identity(x.poset(), |i| h[f[i]]);
    let (fh, fh_w) = compare_with_identity(y.poset(), |i| f[h[i]]);
    let conditions = vec![
        Condition::new("F order preserving", order_violation(x.poset(), y.poset(), f)),
        Condition::new("H order preserving", order_violation(y.poset(), x.poset(), h)),
        Condition::new("F equivariant", equivariance_violation(x, y, f)),
        Condition::new("H equivariant", equivariance_violation(y, x, h)),
        Condition::new("H∘F comparable with identity", hf_w),
        Condition::new("F∘H comparable with identity", fh_w),
    ];
    let pass = conditions.iter().all(|c| c.holds);
    QuillenCertificate { conditions, hf, fh, pass }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCheck {
    pub pass: bool,
    pub witness: Option<String>,
}

/// Whether `f` is an order isomorphism from `x` onto `y`.
pub fn poset_iso_check(x: &Poset, y: &Poset, f: &[usize]) -> IsoCheck {
    let fail = |w: String| IsoCheck {
        pass: false,
        witness: Some(w),
    };
    if x.len() != y.len() || f.len() != x.len() {
        return fail(format!("sizes {} and {} with {} map values", x.len(), y.len(), f.len()));
    }
    let mut inv = vec![usize::MAX; y.len()];
    for (i, &v) in f.iter().enumerate() {
        if v >= y.len() {
            return fail(format!("value {v} out of range"));
        }
        if inv[v] != usize::MAX {
            return fail(format!("{} and {} both map to {}", x.label(inv[v]), x.label(i), y.label(v)));
        }
        inv[v] = i;
    }
    for i in 0..x.len() {
        for j in 0..x.len() {
            if x.leq(i, j) != y.leq(f[i], f[j]) {
                return fail(format!(
                    "{} <= {} is {} but {} <= {} is {}",
                    x.label(i),
                    x.label(j),
                    x.leq(i, j),
                    y.label(f[i]),
                    y.label(f[j]),
                    y.leq(f[i], f[j])
                ));
            }
        }
    }
    IsoCheck {
        pass: true,
        witness: None,
    }
}
