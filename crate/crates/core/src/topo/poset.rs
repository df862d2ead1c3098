use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{invariant, Error, Result};
use crate::perm::PermGroup;

/// A finite poset on `0..n`, stored as up-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `up[i]` contains `j` iff `i <= j`.
    up: Vec<FixedBitSet>,
}

impl Poset {
    pub fn empty() -> Poset {
        Poset {
            labels: Vec::new(),
            up: Vec::new(),
        }
    }

    /// From a relation given pointwise; all three axioms are checked.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        let p = Poset { labels, up };
        p.check_axioms()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of `pairs` (each `(i, j)` meaning `i <= j`).
    /// Fails if the closure is not antisymmetric.
    pub fn from_pairs(labels: Vec<String>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Poset> {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for (i, j) in pairs {
            up[i].insert(j);
        }
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let p = Poset { labels, up };
        p.check_antisymmetry()?;
        Ok(p)
    }

    pub fn check_axioms(&self) -> Result<()> {
        for (i, row) in self.up.iter().enumerate() {
            if !row.contains(i) {
                return Err(invariant("reflexivity", self.labels[i].clone()));
            }
            for j in row.ones() {
                if !self.up[j].is_subset(row) {
                    let k = self.up[j].difference(row).next().unwrap();
                    return Err(invariant(
                        "transitivity",
                        format!("{} <= {} <= {} but not {0} <= {2}", self.labels[i], self.labels[j], self.labels[k]),
                    ));
                }
            }
        }
        self.check_antisymmetry()
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for (i, row) in self.up.iter().enumerate() {
            if let Some(j) = row.ones().find(|&j| j != i && self.up[j].contains(i)) {
                return Err(invariant(
                    "antisymmetry",
                    format!("{} and {} are mutually comparable", self.labels[i], self.labels[j]),
                ));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.lt(j, i)))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].count_ones(..) == 1).collect()
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|i| self.leq(i, m)))
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| self.up[m].count_ones(..) == self.len())
    }

    /// All pairs `i <= j`, reflexive ones included.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
            .collect()
    }

    /// Covering pairs `i < j` with nothing strictly between.
    pub fn covering(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.up.iter().enumerate() {
            for j in row.ones().filter(|&j| j != i) {
                if !row.ones().any(|k| k != i && k != j && self.up[k].contains(j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `counts[k]` = number of chains with k + 1 elements (the k-simplices of the order complex).
    pub fn chain_counts(&self) -> Vec<u128> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let below: Vec<usize> = (0..n).map(|i| self.down_set(i).len()).collect();
        order.sort_by_key(|&i| below[i]);
        // ending[x][k]: chains with k + 1 elements whose top is x
        let mut ending: Vec<Vec<u128>> = vec![Vec::new(); n];
        let mut counts: Vec<u128> = Vec::new();
        for &x in &order {
            let mut row = vec![1u128];
            for y in self.down_set(x).into_iter().filter(|&y| y != x) {
                for (k, &c) in ending[y].iter().enumerate() {
                    if row.len() <= k + 1 {
                        row.resize(k + 2, 0);
                    }
                    row[k + 1] += c;
                }
            }
            for (k, &c) in row.iter().enumerate() {
                if counts.len() <= k {
                    counts.resize(k + 1, 0);
                }
                counts[k] += c;
            }
            ending[x] = row;
        }
        counts
    }

    /// Euler characteristic of the order complex, from chain counts alone.
    pub fn euler_characteristic(&self) -> i128 {
        self.chain_counts()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i128 } else { -(c as i128) })
            .sum()
    }

    pub fn relabeled(&self, labels: Vec<String>) -> Poset {
        assert_eq!(labels.len(), self.len());
        Poset {
            labels,
            up: self.up.clone(),
        }
    }
}

/// A poset with an action of a group, one permutation of the elements per generator.
#[derive(Clone, Debug)]
pub struct GPoset {
    poset: Poset,
    action: Vec<Vec<usize>>,
}

/// The orbit poset of a G-poset together with the quotient map.
#[derive(Clone, Debug)]
pub struct OrbitPoset {
    pub poset: Poset,
    /// Orbit index of every element of the original poset.
    pub orbit_of: Vec<usize>,
    /// Least element of each orbit.
    pub representatives: Vec<usize>,
}

impl GPoset {
    /// Checks that every generator acts as an order automorphism.
    pub fn new(poset: Poset, action: Vec<Vec<usize>>) -> Result<GPoset> {
        let n = poset.len();
        for (s, perm) in action.iter().enumerate() {
            let mut seen = FixedBitSet::with_capacity(n);
            if perm.len() != n || perm.iter().any(|&x| x >= n || seen.put(x)) {
                return Err(invariant("action is a permutation", format!("generator {s}")));
            }
            for (i, row) in poset.up.iter().enumerate() {
                let mut image = FixedBitSet::with_capacity(n);
                image.extend(row.ones().map(|j| perm[j]));
                if image != poset.up[perm[i]] {
                    return Err(invariant(
                        "action preserves order",
                        format!("generator {s} at {}", poset.label(i)),
                    ));
                }
            }
        }
        Ok(GPoset { poset, action })
    }

    /// The trivial action.
    pub fn trivial(poset: Poset) -> GPoset {
        GPoset {
            poset,
            action: Vec::new(),
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn act(&self, generator: usize, x: usize) -> usize {
        self.action[generator][x]
    }

    /// Orbit index per element; orbits are numbered by their least element.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.len();
        let mut orbit = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if orbit[start] != usize::MAX {
                continue;
            }
            orbit[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for perm in &self.action {
                    let y = perm[x];
                    if orbit[y] == usize::MAX {
                        orbit[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        orbit
    }

    /// X/G: `[x] <= [y]` iff `x' <= y'` for some representatives.
    pub fn orbit_poset(&self) -> Result<OrbitPoset> {
        let orbit_of = self.orbits();
        let m = orbit_of.iter().max().map_or(0, |&k| k + 1);
        let mut representatives = vec![usize::MAX; m];
        for (x, &o) in orbit_of.iter().enumerate() {
            if representatives[o] == usize::MAX {
                representatives[o] = x;
            }
        }
        let mut rel = vec![FixedBitSet::with_capacity(m); m];
        for (x, row) in self.poset.up.iter().enumerate() {
            for y in row.ones() {
                rel[orbit_of[x]].insert(orbit_of[y]);
            }
        }
        let labels = representatives
            .iter()
            .map(|&r| format!("[{}]", self.poset.label(r)))
            .collect();
        let poset = Poset::from_relation(labels, |a, b| rel[a].contains(b))?;
        Ok(OrbitPoset {
            poset,
            orbit_of,
            representatives,
        })
    }

    /// Checks that the generator permutations define an action of `group`
    /// (whose generators must correspond one-to-one with the action):
    /// every word evaluating to the same group element induces the same permutation.
    pub fn check_group_action(&self, group: &PermGroup) -> Result<()> {
        let gens = group.generators();
        if gens.len() != self.action.len() {
            return Err(Error::Input(format!(
                "{} generators act but the group has {}",
                self.action.len(),
                gens.len()
            )));
        }
        let n = self.len();
        let mut perm_of: Vec<Option<Vec<u32>>> = vec![None; group.order()];
        let id = group.index_of(&group.identity()).expect("identity");
        perm_of[id] = Some((0..n as u32).collect());
        let mut queue = VecDeque::from([id]);
        while let Some(gi) = queue.pop_front() {
            let g = &group.elements()[gi];
            let pg = perm_of[gi].clone().unwrap();
            for (s, gen) in gens.iter().enumerate() {
                let h = group.index_of(&(g * gen)).expect("closed");
                let ph: Vec<u32> = pg.iter().map(|&x| self.action[s][x as usize] as u32).collect();
                match &perm_of[h] {
                    Some(existing) if *existing != ph => {
                        return Err(invariant("well-defined action", format!("{}", group.elements()[h])));
                    }
                    Some(_) => {}
                    None => {
                        perm_of[h] = Some(ph);
                        queue.push_back(h);
                    }
                }
            }
        }
        Ok(())
    }
}
