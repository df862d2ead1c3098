use std::fmt;
use std::str::FromStr;

use brauer_commuting::perm::GroupSpec;
use serde::Serialize;

/// Which blocks of a group a run covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockSelector {
    Principal,
    /// Every block except the principal one.
    Nonprincipal,
    Index(usize),
    All,
}

impl FromStr for BlockSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "principal" => Ok(BlockSelector::Principal),
            "nonprincipal" => Ok(BlockSelector::Nonprincipal),
            "all" => Ok(BlockSelector::All),
            _ => s
                .parse()
                .map(BlockSelector::Index)
                .map_err(|_| format!("block must be principal, nonprincipal, all or an index, not {s:?}")),
        }
    }
}

impl fmt::Display for BlockSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSelector::Principal => write!(f, "principal"),
            BlockSelector::Nonprincipal => write!(f, "nonprincipal"),
            BlockSelector::Index(i) => write!(f, "{i}"),
            BlockSelector::All => write!(f, "all"),
        }
    }
}

/// Field degree, fixed or chosen from the group exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Degree {
    Fixed(u32),
    AutoSplit,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub group: GroupSpec,
    pub p: u32,
    pub degree: Degree,
    pub blocks: BlockSelector,
    pub slow: bool,
}

impl CorpusEntry {
    pub fn new(group: GroupSpec, p: u32, blocks: BlockSelector) -> CorpusEntry {
        CorpusEntry {
            group,
            p,
            degree: Degree::Fixed(1),
            blocks,
            slow: false,
        }
    }
}

/// The shipped corpus.
pub fn corpus() -> Vec<CorpusEntry> {
    let s = |n| GroupSpec::Symmetric { n };
    let mut s7 = CorpusEntry::new(s(7), 2, BlockSelector::Nonprincipal);
    s7.slow = true;
    vec![
        CorpusEntry::new(s(3), 2, BlockSelector::All),
        CorpusEntry::new(s(3), 3, BlockSelector::All),
        CorpusEntry::new(s(4), 2, BlockSelector::All),
        CorpusEntry::new(s(5), 2, BlockSelector::All),
        CorpusEntry::new(GroupSpec::Dihedral { order: 8 }, 2, BlockSelector::All),
        s7,
    ]
}
