//! Brauer homomorphisms, Brauer pairs and their containment order, defect groups.
//!
//! Everything central is handled as class functions: an element of Z(kH) is
//! determined by its value on each conjugacy class of H, so truncating to a
//! centralizer is just evaluation at that centralizer's class representatives.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::algebra::{Block, GroupAlgebraElement, GroupBlocks};
use crate::error::{invariant, Error, Result};
use crate::field::{Fe, Field};
use crate::perm::{Fingerprint, PermGroup, Permutation};
use crate::topo::{GPoset, Poset};


/// Br_Q(a): the part of `a` supported on C_G(Q). `a` must be fixed by Q.
pub fn brauer_hom(q: &PermGroup, a: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    if let Some(g) = q.generators().iter().find(|g| !a.is_fixed_by(g)) {
        return Err(Error::NotFixed(g.to_string()));
    }
    Ok(a.truncate(|x| q.generators().iter().all(|g| x.commutes_with(g))))
}

/// The class function `coords` of `from` restricted to the (smaller) group of `to`.
pub fn restrict(from: &GroupBlocks, coords: &[Fe], to: &GroupBlocks) -> Vec<Fe> {
    to.coords_of(|y| from.value_at(coords, y))
}

/// A Brauer pair (Q, e): `e` indexes the blocks of kC_G(Q).
#[derive(Clone)]
pub struct BrauerPair {
    pub q: PermGroup,
    pub e: usize,
    centralizer: Arc<GroupBlocks>,
}

impl BrauerPair {
    pub fn centralizer(&self) -> &GroupBlocks {
        &self.centralizer
    }

    pub fn block(&self) -> &Block {
        self.centralizer.block(self.e)
    }

    pub fn coords(&self) -> &[Fe] {
        &self.block().coords
    }

    pub fn label(&self) -> String {
        format!("({}, e{})", self.q.short_label(), self.e)
    }
}

impl PartialEq for BrauerPair {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e && self.q == other.q
    }
}

impl Eq for BrauerPair {}

impl Hash for BrauerPair {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.q.hash(state);
        self.e.hash(state);
    }
}

impl PartialOrd for BrauerPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BrauerPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.q, self.e).cmp(&(&other.q, other.e))
    }
}

impl fmt::Debug for BrauerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Display for BrauerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// b-Brauer pairs over a family of p-subgroups, ordered by containment.
#[derive(Clone, Debug)]
pub struct BrauerPairPoset {
    pub pairs: Vec<BrauerPair>,
    /// `(i, j)` with pairs[i] ⊴ pairs[j], i ≠ j.
    pub normal_edges: Vec<(usize, usize)>,
    pub poset: Poset,
    /// Conjugation by each generator of G, when the family is closed under conjugation.
    pub action: Option<Vec<Vec<usize>>>,
    index: HashMap<BrauerPair, usize>,
}

impl BrauerPairPoset {
    pub fn index_of(&self, pair: &BrauerPair) -> Option<usize> {
        self.index.get(pair).copied()
    }

    pub fn leq(&self, lo: usize, hi: usize) -> bool {
        self.poset.leq(lo, hi)
    }

    pub fn gposet(&self) -> Option<Result<GPoset>> {
        self.action.clone().map(|a| GPoset::new(self.poset.clone(), a))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectData {
    pub block: usize,
    /// Least member of the conjugacy class of defect groups.
    pub defect_group: PermGroup,
    pub order: usize,
    pub fingerprint: Fingerprint,
    /// Number of conjugates.
    pub class_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalType {
    pub holds: bool,
    /// `(Q, number of blocks of kC_G(Q) under Br_Q(b))` per class representative with Br_Q(b) ≠ 0.
    pub checked: Vec<(String, usize)>,
    pub failure: Option<String>,
}

/// A group, its blocks over a field, and memoized blocks of centralizers.
pub struct BrauerContext {
    top: Arc<GroupBlocks>,
    p: u32,
    by_subgroup: Mutex<HashMap<Vec<Permutation>, Arc<GroupBlocks>>>,
    by_centralizer: Mutex<HashMap<Vec<Permutation>, Arc<GroupBlocks>>>,
    p_classes: OnceLock<Vec<PermGroup>>,
}

impl BrauerContext {
    pub fn new(group: &PermGroup, field: &Field) -> Result<BrauerContext> {
        Ok(Self::from_blocks(GroupBlocks::compute(group, field)?))
    }

    pub fn from_blocks(top: GroupBlocks) -> BrauerContext {
        let top = Arc::new(top);
        let key = top.group().elements().to_vec();
        BrauerContext {
            p: top.field().p(),
            by_subgroup: Mutex::new(HashMap::from([(vec![top.group().identity()], top.clone())])),
            by_centralizer: Mutex::new(HashMap::from([(key, top.clone())])),
            top,
            p_classes: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &PermGroup {
        self.top.group()
    }

    pub fn field(&self) -> &Field {
        self.top.field()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn top(&self) -> &GroupBlocks {
        &self.top
    }

    pub fn block(&self, b: usize) -> &Block {
        self.top.block(b)
    }

    pub fn num_blocks(&self) -> usize {
        self.top.blocks().len()
    }

    /// Blocks of kC_G(Q), computed once per centralizer.
    pub fn centralizer(&self, q: &PermGroup) -> Result<Arc<GroupBlocks>> {
        let key = q.elements().to_vec();
        if let Some(c) = self.by_subgroup.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let c = self.group().centralizer_of(q)?;
        let ckey = c.elements().to_vec();
        let cached = self.by_centralizer.lock().unwrap().get(&ckey).cloned();
        let gb = match cached {
            Some(gb) => gb,
            None => {
                let gb = Arc::new(GroupBlocks::compute(&c, self.field())?);
                self.by_centralizer.lock().unwrap().insert(ckey, gb.clone());
                gb
            }
        };
        self.by_subgroup.lock().unwrap().insert(key, gb.clone());
        Ok(gb)
    }

    /// Whether Br_Q(b) ≠ 0, i.e. b has a nonzero coefficient on some element centralizing Q.
    pub fn br_nonzero(&self, b: usize, q: &PermGroup) -> bool {
        let coords = &self.block(b).coords;
        self.top.classes().classes.iter().zip(coords).any(|(cl, c)| {
            !c.is_zero()
                && cl
                    .members
                    .iter()
                    .any(|x| q.generators().iter().all(|g| x.commutes_with(g)))
        })
    }

    /// Br_Q(b) as coordinates in Z(kC_G(Q)).
    pub fn br(&self, b: usize, q: &PermGroup) -> Result<(Arc<GroupBlocks>, Vec<Fe>)> {
        let cb = self.centralizer(q)?;
        let coords = restrict(&self.top, &self.block(b).coords, &cb);
        Ok((cb, coords))
    }

    pub fn pair(&self, q: &PermGroup, e: usize) -> Result<BrauerPair> {
        let centralizer = self.centralizer(q)?;
        if e >= centralizer.blocks().len() {
            return Err(Error::Input(format!("block index {e} for {}", q.short_label())));
        }
        Ok(BrauerPair {
            q: q.clone(),
            e,
            centralizer,
        })
    }

    /// The pair (1, b).
    pub fn trivial_pair(&self, b: usize) -> BrauerPair {
        BrauerPair {
            q: PermGroup::trivial(self.group().degree()),
            e: b,
            centralizer: self.top.clone(),
        }
    }

    /// All b-Brauer pairs with first component Q.
    pub fn pairs_for(&self, b: usize, q: &PermGroup) -> Result<Vec<BrauerPair>> {
        if !self.br_nonzero(b, q) {
            return Ok(Vec::new());
        }
        let (cb, br) = self.br(b, q)?;
        let under = cb.blocks_under(&br);
        let f = self.field();
        let sum = under.iter().fold(vec![Fe::ZERO; br.len()], |acc, &i| {
            acc.iter().zip(&cb.block(i).coords).map(|(&a, &c)| f.add(a, c)).collect()
        });
        if sum != br {
            return Err(invariant(
                "Br_Q(b) is the sum of the blocks below it",
                format!("Q = {}", q.short_label()),
            ));
        }
        Ok(under
            .into_iter()
            .map(|e| BrauerPair {
                q: q.clone(),
                e,
                centralizer: cb.clone(),
            })
            .collect())
    }

    /// (Q, e) ⊴ (R, f): Q ⊴ R, e is R-stable and Br_R(e) f = f.
    pub fn normal_containment(&self, lo: &BrauerPair, hi: &BrauerPair) -> bool {
        let (q, r) = (&lo.q, &hi.q);
        if !q.is_subgroup_of(r) || !r.normalizes(q) {
            return false;
        }
        let cq = lo.centralizer();
        let e = lo.coords();
        let stable = r.generators().iter().all(|g| {
            cq.classes()
                .classes
                .iter()
                .all(|cl| cq.value_at(e, &cl.representative.conj(g)) == e[cq.class_of(&cl.representative).unwrap()])
        });
        if !stable {
            return false;
        }
        let cr = hi.centralizer();
        let br = restrict(cq, e, cr);
        cr.mul(&br, hi.coords()) == hi.coords()
    }

    /// (Q, e)^g = (Q^g, e^g).
    pub fn conjugate_pair(&self, pair: &BrauerPair, g: &Permutation) -> Result<BrauerPair> {
        let qg = pair.q.conjugate(g);
        let cb = self.centralizer(&qg)?;
        let ginv = g.inverse();
        let coords = cb.coords_of(|y| pair.centralizer().value_at(pair.coords(), &y.conj(&ginv)));
        let e = cb
            .blocks()
            .iter()
            .position(|b| b.coords == coords)
            .ok_or_else(|| invariant("conjugate of a block is a block", format!("{pair} by {g}")))?;
        Ok(BrauerPair {
            q: qg,
            e,
            centralizer: cb,
        })
    }

    /// The b-Brauer pairs over `family`, ordered by the closure of ⊴.
    /// Uniqueness of subpairs is asserted for all members of the family.
    pub fn containment_poset(&self, b: usize, family: &[PermGroup]) -> Result<BrauerPairPoset> {
        let mut family = family.to_vec();
        family.sort();
        family.dedup();
        let mut pairs = Vec::new();
        for q in &family {
            pairs.extend(self.pairs_for(b, q)?);
        }
        let n = pairs.len();
        let mut normal_edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && pairs[i].q.order() < pairs[j].q.order() && self.normal_containment(&pairs[i], &pairs[j]) {
                    normal_edges.push((i, j));
                }
            }
        }
        let labels = pairs.iter().map(BrauerPair::label).collect();
        let poset = Poset::from_pairs(labels, normal_edges.iter().copied())?;
        for (r, hi) in pairs.iter().enumerate() {
            for q in family.iter().filter(|q| q.is_subgroup_of(&hi.q)) {
                let below: Vec<usize> = (0..n).filter(|&i| pairs[i].q == *q && poset.leq(i, r)).collect();
                if below.len() != 1 {
                    return Err(invariant(
                        "unique subpair",
                        format!("{} pairs at {} below {hi}", below.len(), q.short_label()),
                    ));
                }
            }
        }
        let index: HashMap<BrauerPair, usize> = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut action = Some(Vec::new());
        for g in self.group().generators() {
            let mut perm = Vec::with_capacity(n);
            for pair in &pairs {
                match index.get(&self.conjugate_pair(pair, g)?) {
                    Some(&k) => perm.push(k),
                    None => break,
                }
            }
            if perm.len() < n {
                action = None;
                break;
            }
            if let Some(a) = action.as_mut() {
                a.push(perm);
            }
        }
        Ok(BrauerPairPoset {
            pairs,
            normal_edges,
            poset,
            action,
            index,
        })
    }

    /// Representatives of the conjugacy classes of p-subgroups of G.
    pub fn p_subgroup_classes(&self) -> Result<&[PermGroup]> {
        if let Some(v) = self.p_classes.get() {
            return Ok(v);
        }
        let v = self.group().p_subgroups_up_to_conjugacy(self.p)?;
        Ok(self.p_classes.get_or_init(|| v))
    }

    pub fn defect_data(&self, b: usize) -> Result<DefectData> {
        let g = self.group();
        let live: Vec<&PermGroup> = self
            .p_subgroup_classes()?
            .iter()
            .filter(|q| self.br_nonzero(b, q))
            .collect();
        let maximal: Vec<&PermGroup> = live
            .iter()
            .copied()
            .filter(|q| {
                !live
                    .iter()
                    .any(|r| r.order() > q.order() && g.conjugating_into(q, r).is_some())
            })
            .collect();
        if maximal.len() != 1 {
            let labels: Vec<String> = maximal.iter().map(|q| q.short_label()).collect();
            return Err(invariant("defect groups form one class", labels.join(" ")));
        }
        let d = maximal[0];
        let mut seen = std::collections::HashSet::new();
        let mut least = d.clone();
        for x in g.elements() {
            let c = d.conjugate(x);
            if c < least {
                least = c.clone();
            }
            seen.insert(c);
        }
        Ok(DefectData {
            block: b,
            order: least.order(),
            fingerprint: least.fingerprint(),
            class_size: seen.len(),
            defect_group: least,
        })
    }

    /// Whether Br_Q(b) is zero or a single block for every p-subgroup class.
    pub fn principal_type(&self, b: usize) -> Result<PrincipalType> {
        let mut checked = Vec::new();
        let mut failure = None;
        for q in self.p_subgroup_classes()? {
            let n = self.pairs_for(b, q)?.len();
            if n == 0 {
                continue;
            }
            checked.push((q.short_label(), n));
            if n > 1 && failure.is_none() {
                failure = Some(format!("Br_{}(b) is a sum of {n} blocks", q.short_label()));
            }
        }
        Ok(PrincipalType {
            holds: failure.is_none(),
            checked,
            failure,
        })
    }

    fn descend(&self, top: &BrauerPair, chain: &[PermGroup]) -> Result<BrauerPair> {
        let mut cur = top.clone();
        for q in chain {
            let cb = self.centralizer(q)?;
            let found: Vec<BrauerPair> = (0..cb.blocks().len())
                .map(|e| BrauerPair {
                    q: q.clone(),
                    e,
                    centralizer: cb.clone(),
                })
                .filter(|lo| self.normal_containment(lo, &cur))
                .collect();
            if found.len() != 1 {
                return Err(invariant(
                    "unique normal subpair",
                    format!("{} blocks at {} below {cur}", found.len(), q.short_label()),
                ));
            }
            cur = found.into_iter().next().unwrap();
        }
        Ok(cur)
    }

    /// The unique (Q, e) ≤ top, by walking Q ⊴ N_R(Q) ⊴ … ⊴ R downward.
    /// The result is cross-checked against the chain of successive normal closures.
    pub fn unique_subpair(&self, top: &BrauerPair, q: &PermGroup) -> Result<BrauerPair> {
        let r = &top.q;
        if !q.is_subgroup_of(r) {
            return Err(Error::Input(format!("{} is not contained in {}", q.short_label(), r.short_label())));
        }
        if q == r {
            return Ok(top.clone());
        }
        // normalizer chain, bottom to top
        let mut up = vec![q.clone()];
        while up.last().unwrap() != r {
            let next = r.normalizer(up.last().unwrap())?;
            if next == *up.last().unwrap() {
                return Err(invariant("normalizers grow in p-groups", next.short_label()));
            }
            up.push(next);
        }
        up.pop();
        up.reverse();
        let first = self.descend(top, &up)?;
        // normal closure chain, top to bottom
        let mut down = Vec::new();
        let mut cur = r.clone();
        while cur != *q {
            let gens: Vec<Permutation> = q
                .generators()
                .iter()
                .flat_map(|x| cur.elements().iter().map(move |y| x.conj(y)))
                .collect();
            let next = cur.subgroup(gens)?;
            if next == cur {
                return Err(invariant("normal closures shrink in p-groups", cur.short_label()));
            }
            down.push(next.clone());
            cur = next;
        }
        let second = self.descend(top, &down)?;
        if first != second {
            return Err(invariant("chain independence", format!("{first} vs {second}")));
        }
        Ok(first)
    }
}
