use serde::{Deserialize, Serialize};

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Declarative description of a group, as read from JSON.
///
/// `{"type": "symmetric", "n": 4}`, `{"type": "dihedral", "order": 8}` or
/// `{"type": "generators", "degree": 4, "gens": [[[1, 2]], [[1, 2, 3, 4]]]}`,
/// where each generator is a list of 1-based cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Symmetric { n: usize },
    Dihedral { order: usize },
    Generators { degree: usize, gens: Vec<Vec<Vec<usize>>> },
}

impl GroupSpec {
    /// Parses a preset (`S7`, `D8`) or a JSON record.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let t = text.trim();
        let preset = |prefix: char| -> Option<usize> {
            t.strip_prefix(prefix)
                .or_else(|| t.strip_prefix(prefix.to_ascii_lowercase()))
                .and_then(|r| r.parse().ok())
        };
        if let Some(n) = preset('S') {
            return Ok(GroupSpec::Symmetric { n });
        }
        if let Some(order) = preset('D') {
            return Ok(GroupSpec::Dihedral { order });
        }
        serde_json::from_str(t).map_err(|e| Error::Input(format!("bad group spec {t:?}: {e}")))
    }

    pub fn build(&self, max_elements: usize) -> Result<PermGroup> {
        match self {
            GroupSpec::Symmetric { n } => {
                // n! is checked before enumerating
                let order = (1..=*n).try_fold(1usize, |acc, k| acc.checked_mul(k));
                if order.is_none_or(|o| o > max_elements) {
                    return Err(Error::GroupTooLarge(max_elements));
                }
                PermGroup::symmetric(*n)
            }
            GroupSpec::Dihedral { order } => {
                if *order > max_elements {
                    return Err(Error::GroupTooLarge(max_elements));
                }
                PermGroup::dihedral(*order)
            }
            GroupSpec::Generators { degree, gens } => {
                let perms = gens
                    .iter()
                    .map(|cycles| Permutation::from_cycles(*degree, cycles))
                    .collect::<Result<Vec<_>>>()?;
                Ok(PermGroup::from_generators_bounded(*degree, perms, max_elements)?
                    .with_label(self.name()))
            }
        }
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Symmetric { n } => format!("S{n}"),
            GroupSpec::Dihedral { order } => format!("D{order}"),
            GroupSpec::Generators { degree, gens } => {
                let gs: Vec<String> = gens
                    .iter()
                    .map(|cs| {
                        cs.iter()
                            .map(|c| format!("({})", c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")))
                            .collect::<String>()
                    })
                    .collect();
                format!("<{}> on {degree}", gs.join(", "))
            }
        }
    }

    /// Canonical serialization, used for cache keys.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_presets_and_json() {
        assert_eq!(GroupSpec::parse("S7").unwrap(), GroupSpec::Symmetric { n: 7 });
        assert_eq!(GroupSpec::parse("d8").unwrap(), GroupSpec::Dihedral { order: 8 });
        let g = GroupSpec::parse(r#"{"type": "generators", "degree": 4, "gens": [[[1,2],[3,4]], [[1,3],[2,4]]]}"#)
            .unwrap();
        assert_eq!(g.build(100).unwrap().order(), 4);
        assert_eq!(
            GroupSpec::parse(r#"{"type":"symmetric","n":3}"#).unwrap().build(100).unwrap().order(),
            6
        );
        assert!(GroupSpec::parse("nonsense").is_err());
    }

    #[test]
    fn size_bound() {
        assert_eq!(
            GroupSpec::Symmetric { n: 8 }.build(10_000).unwrap_err(),
            Error::GroupTooLarge(10_000)
        );
    }
}
