//! The commuting poset K(b), the poset A(b) of elementary abelian Brauer pairs,
//! the maps Φ, Ψ between them, and the clique obstruction.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::brauer::{BrauerContext, BrauerPair, BrauerPairPoset};
use crate::error::{invariant, Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::topo::{
    homology, poset_iso_check, quillen_pair_check, Condition, GPoset, IsoCheck, OrbitPoset, Poset,
    QuillenCertificate, SimplicialComplex,
};

#[cfg(test)]
mod tests;

/// Default cap on the number of elements of K(b).
pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;

/// Πκ: the subgroup generated by pairwise commuting subgroups.
pub fn pi(g: &PermGroup, kappa: &[PermGroup]) -> Result<PermGroup> {
    for (i, a) in kappa.iter().enumerate() {
        for b in &kappa[i + 1..] {
            let commute = a
                .generators()
                .iter()
                .all(|x| b.generators().iter().all(|y| x.commutes_with(y)));
            if !commute {
                return Err(Error::NotCommuting(a.short_label(), b.short_label()));
            }
        }
    }
    let gens: Vec<Permutation> = kappa.iter().flat_map(|q| q.generators().to_vec()).collect();
    g.subgroup(gens)
}

/// c(Q): the subgroups of order p of an abelian group Q.
pub fn c_of(q: &PermGroup, p: u32) -> Result<Vec<PermGroup>> {
    if !q.is_abelian() {
        return Err(Error::Input(format!("{} is not abelian", q.short_label())));
    }
    Ok(q.order_p_subgroups(p))
}

/// The commuting graph on the subgroups of order p.
#[derive(Clone, Debug)]
pub struct CommutingGraph {
    pub vertices: Vec<PermGroup>,
    pub adjacency: Vec<FixedBitSet>,
    index: HashMap<Vec<Permutation>, usize>,
}

impl CommutingGraph {
    pub fn new(vertices: Vec<PermGroup>) -> CommutingGraph {
        let n = vertices.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i + 1..n {
                let x = &vertices[i].generators()[0];
                let y = &vertices[j].generators()[0];
                if x.commutes_with(y) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        let index = vertices.iter().enumerate().map(|(i, v)| (v.elements().to_vec(), i)).collect();
        CommutingGraph {
            vertices,
            adjacency,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn vertex_of(&self, q: &PermGroup) -> Option<usize> {
        self.index.get(q.elements()).copied()
    }

    /// All nonempty cliques, each sorted, in lexicographic order of extension.
    /// `keep` prunes a clique together with all its extensions.
    pub fn cliques(&self, max: usize, mut keep: impl FnMut(&[usize]) -> Result<bool>) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..self.len()).rev().map(|v| vec![v]).collect();
        while let Some(c) = stack.pop() {
            if !keep(&c)? {
                continue;
            }
            let last = *c.last().unwrap();
            for v in (last + 1..self.len()).rev() {
                if c.iter().all(|&u| self.adjacent(u, v)) {
                    let mut next = c.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
            out.push(c);
            if out.len() > max {
                return Err(Error::TooMany(max, "cliques"));
            }
        }
        Ok(out)
    }
}

pub fn commuting_graph(g: &PermGroup, p: u32) -> CommutingGraph {
    CommutingGraph::new(g.order_p_subgroups(p))
}

/// A(b) with its G-action.
pub struct APoset {
    pub pairs: BrauerPairPoset,
    pub gposet: GPoset,
}

/// Nontrivial elementary abelian p-subgroups with Br_Q(b) ≠ 0, grown from subgroups of order p.
pub fn elementary_abelian_family(ctx: &BrauerContext, b: usize) -> Vec<PermGroup> {
    let g = ctx.group();
    let p = ctx.p();
    let atoms: Vec<PermGroup> = g
        .order_p_subgroups(p)
        .into_iter()
        .filter(|q| ctx.br_nonzero(b, q))
        .collect();
    let mut seen: std::collections::HashSet<Vec<Permutation>> = atoms.iter().map(|q| q.elements().to_vec()).collect();
    let mut all = atoms.clone();
    let mut layer = atoms.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for e in &layer {
            for a in &atoms {
                let x = &a.generators()[0];
                if e.contains(x) || !e.generators().iter().all(|y| y.commutes_with(x)) {
                    continue;
                }
                let mut gens = e.generators().to_vec();
                gens.push(x.clone());
                let bigger = g.subgroup(gens).expect("subgroup");
                if seen.insert(bigger.elements().to_vec()) && ctx.br_nonzero(b, &bigger) {
                    next.push(bigger);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort();
    all
}

pub fn build_a(ctx: &BrauerContext, b: usize) -> Result<APoset> {
    let family = elementary_abelian_family(ctx, b);
    let pairs = ctx.containment_poset(b, &family)?;
    let action = pairs
        .action
        .clone()
        .ok_or_else(|| invariant("A(b) closed under conjugation", format!("block {b}")))?;
    let gposet = GPoset::new(pairs.poset.clone(), action)?;
    Ok(APoset { pairs, gposet })
}

/// An element (κ, e) of K(b).
#[derive(Clone, Debug)]
pub struct CommutingElement {
    /// Sorted vertex indices into the commuting graph.
    pub kappa: Vec<usize>,
    pub pair: BrauerPair,
}

/// K(b) together with the data relating it to A(b).
pub struct KPoset {
    pub graph: CommutingGraph,
    pub elements: Vec<CommutingElement>,
    pub gposet: GPoset,
    /// Ψ as indices into A(b).
    pub psi: Vec<usize>,
    index: HashMap<(Vec<usize>, usize), usize>,
}

impl KPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn poset(&self) -> &Poset {
        self.gposet.poset()
    }

    pub fn index_of(&self, kappa: &[usize], e: usize) -> Option<usize> {
        self.index.get(&(kappa.to_vec(), e)).copied()
    }

    pub fn label(&self, i: usize) -> String {
        element_label(&self.graph, &self.elements[i])
    }

    pub fn orbit_poset(&self) -> Result<OrbitPoset> {
        self.gposet.orbit_poset()
    }
}

fn element_label(graph: &CommutingGraph, x: &CommutingElement) -> String {
    let qs: Vec<String> = x.kappa.iter().map(|&v| graph.vertices[v].short_label()).collect();
    format!("({{{}}}, e{})", qs.join(","), x.pair.e)
}

/// K(b), ordered by (λ, f) ≤ (κ, e) iff λ ⊆ κ and (Πλ, f) ≤ (Πκ, e).
pub fn build_k(ctx: &BrauerContext, b: usize, a: &APoset, max_elements: usize) -> Result<KPoset> {
    let g = ctx.group();
    let p = ctx.p();
    let graph = commuting_graph(g, p);
    let live: Vec<bool> = graph.vertices.iter().map(|q| ctx.br_nonzero(b, q)).collect();
    let mut products: HashMap<Vec<usize>, PermGroup> = HashMap::new();
    let cliques = graph.cliques(max_elements, |c| {
        if !c.iter().all(|&v| live[v]) {
            return Ok(false);
        }
        let kappa: Vec<PermGroup> = c.iter().map(|&v| graph.vertices[v].clone()).collect();
        let prod = pi(g, &kappa)?;
        let ok = ctx.br_nonzero(b, &prod);
        if ok {
            products.insert(c.to_vec(), prod);
        }
        Ok(ok)
    })?;
    let mut elements = Vec::new();
    let mut psi = Vec::new();
    for c in cliques {
        let prod = &products[&c];
        for pair in ctx.pairs_for(b, prod)? {
            let ai = a
                .pairs
                .index_of(&pair)
                .ok_or_else(|| invariant("Ψ lands in A(b)", pair.label()))?;
            psi.push(ai);
            elements.push(CommutingElement {
                kappa: c.clone(),
                pair,
            });
            if elements.len() > max_elements {
                return Err(Error::TooMany(max_elements, "elements of K(b)"));
            }
        }
    }
    let n = elements.len();
    let sets: Vec<FixedBitSet> = elements
        .iter()
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(graph.len());
            s.extend(x.kappa.iter().copied());
            s
        })
        .collect();
    let labels = elements.iter().map(|x| element_label(&graph, x)).collect();
    let poset = Poset::from_relation(labels, |i, j| sets[i].is_subset(&sets[j]) && a.pairs.leq(psi[i], psi[j]))?;
    let index: HashMap<(Vec<usize>, usize), usize> = elements
        .iter()
        .enumerate()
        .map(|(i, x)| ((x.kappa.clone(), x.pair.e), i))
        .collect();
    // conjugation: κ by vertex images, e through the action on A(b)
    let mut action = Vec::new();
    for (s, gen) in g.generators().iter().enumerate() {
        let vmap: Vec<usize> = graph
            .vertices
            .iter()
            .map(|q| graph.vertex_of(&q.conjugate(gen)).expect("order p subgroups are permuted"))
            .collect();
        let mut perm = Vec::with_capacity(n);
        for (i, x) in elements.iter().enumerate() {
            let mut kappa: Vec<usize> = x.kappa.iter().map(|&v| vmap[v]).collect();
            kappa.sort_unstable();
            let e = a.pairs.pairs[a.gposet.act(s, psi[i])].e;
            let j = index
                .get(&(kappa, e))
                .copied()
                .ok_or_else(|| invariant("K(b) closed under conjugation", element_label(&graph, x)))?;
            perm.push(j);
        }
        action.push(perm);
    }
    let gposet = GPoset::new(poset, action)?;
    Ok(KPoset {
        graph,
        elements,
        gposet,
        psi,
        index,
    })
}

/// Φ(Q, e) = (c(Q), e) as indices into K(b).
pub fn phi(a: &APoset, k: &KPoset, p: u32) -> Result<Vec<usize>> {
    a.pairs
        .pairs
        .iter()
        .map(|pair| {
            let mut kappa: Vec<usize> = c_of(&pair.q, p)?
                .iter()
                .map(|q| k.graph.vertex_of(q).expect("vertex"))
                .collect();
            kappa.sort_unstable();
            k.index_of(&kappa, pair.e)
                .ok_or_else(|| invariant("Φ lands in K(b)", pair.label()))
        })
        .collect()
}

/// A clique of pairwise bounded minimal elements with no common upper bound.
#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    /// Indices into K(b).
    pub members: Vec<usize>,
    pub labels: Vec<String>,
    /// Subgroup generated by the members' first components.
    pub generated: PermGroup,
    /// Br of the generated subgroup vanishes.
    pub brauer_vanishes: bool,
}

/// Minimal elements of `poset` joined when they have a common upper bound:
/// returns a clique of this graph (as poset indices) not lying below any single element.
pub fn uncovered_clique(poset: &Poset) -> Option<Vec<usize>> {
    let mins = poset.minimal();
    let ups: Vec<&FixedBitSet> = mins.iter().map(|&m| poset.up_set(m)).collect();
    let m = mins.len();
    let bounded = |i: usize, j: usize| !ups[i].is_disjoint(ups[j]);
    // covered cliques with their common up-set
    let mut level: Vec<(Vec<usize>, FixedBitSet)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if bounded(i, j) {
                let mut common = ups[i].clone();
                common.intersect_with(ups[j]);
                level.push((vec![i, j], common));
            }
        }
    }
    while !level.is_empty() {
        let mut next = Vec::new();
        for (c, common) in &level {
            for v in c.last().unwrap() + 1..m {
                if !c.iter().all(|&u| bounded(u, v)) {
                    continue;
                }
                let mut meet = common.clone();
                meet.intersect_with(ups[v]);
                let mut clique = c.clone();
                clique.push(v);
                if meet.count_ones(..) == 0 {
                    return Some(clique.iter().map(|&i| mins[i]).collect());
                }
                next.push((clique, meet));
            }
        }
        level = next;
    }
    None
}

/// The clique obstruction for K(b), with the Brauer certificate for the generated subgroup.
pub fn clique_witness(ctx: &BrauerContext, b: usize, k: &KPoset) -> Option<Obstruction> {
    let members = uncovered_clique(k.poset())?;
    let gens: Vec<Permutation> = members
        .iter()
        .flat_map(|&x| k.elements[x].pair.q.generators().to_vec())
        .collect();
    let generated = ctx.group().subgroup(gens).expect("subgroup");
    Some(Obstruction {
        labels: members.iter().map(|&x| k.label(x)).collect(),
        brauer_vanishes: !ctx.br_nonzero(b, &generated),
        members,
        generated,
    })
}

/// Homology comparison of the two order complexes.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyComparison {
    pub a: String,
    pub k: String,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub a_size: usize,
    pub k_size: usize,
    pub psi_phi_identity: Condition,
    pub below_phi_psi: Condition,
    pub quillen: QuillenCertificate,
    pub euler_a: i128,
    pub euler_k: i128,
    /// `None` when a complex exceeds the simplex bound.
    pub homology: Option<HomologyComparison>,
    pub skipped: Option<String>,
    pub pass: bool,
}

/// Checks the homotopy equivalence between A(b) and K(b) through Φ and Ψ.
pub fn theorem1_check(ctx: &BrauerContext, a: &APoset, k: &KPoset, max_simplices: usize) -> Result<Theorem1Report> {
    let phi = phi(a, k, ctx.p())?;
    let psi = &k.psi;
    let bad_id = (0..a.gposet.len()).find(|&x| psi[phi[x]] != x);
    let psi_phi_identity = Condition::new("Ψ∘Φ = id", bad_id.map(|x| a.pairs.pairs[x].label()));
    let bad_below = (0..k.len()).find(|&y| !k.poset().leq(y, phi[psi[y]]));
    let below_phi_psi = Condition::new("(κ,e) ≤ (c(Πκ),e)", bad_below.map(|y| k.label(y)));
    let quillen = quillen_pair_check(&a.gposet, &k.gposet, &phi, psi);
    let euler_a = a.gposet.poset().euler_characteristic();
    let euler_k = k.poset().euler_characteristic();
    let complexes = SimplicialComplex::order_complex(a.gposet.poset(), max_simplices)
        .and_then(|ca| Ok((ca, SimplicialComplex::order_complex(k.poset(), max_simplices)?)));
    let (homology, skipped) = match complexes {
        Ok((ca, ck)) => {
            ca.check_boundary_squared()?;
            ck.check_boundary_squared()?;
            let (ha, hk) = (homology(&ca), homology(&ck));
            (
                Some(HomologyComparison {
                    agree: ha.same_groups(&hk),
                    a: ha.to_string(),
                    k: hk.to_string(),
                }),
                None,
            )
        }
        Err(Error::TooMany(n, what)) => (None, Some(format!("more than {n} {what}"))),
        Err(e) => return Err(e),
    };
    let pass = psi_phi_identity.holds
        && below_phi_psi.holds
        && quillen.pass
        && euler_a == euler_k
        && homology.as_ref().map_or(true, |h| h.agree);
    Ok(Theorem1Report {
        a_size: a.gposet.len(),
        k_size: k.len(),
        psi_phi_identity,
        below_phi_psi,
        quillen,
        euler_a,
        euler_k,
        homology,
        skipped,
        pass,
    })
}

/// For a principal block: K(b) against the face poset of the clique complex
/// of the full commuting graph, via κ ↦ (κ, principal block of C_G(Πκ)).
pub fn principal_clique_check(ctx: &BrauerContext, k: &KPoset) -> Result<IsoCheck> {
    let graph = commuting_graph(ctx.group(), ctx.p());
    let cliques = graph.cliques(usize::MAX, |_| Ok(true))?;
    let sets: Vec<FixedBitSet> = cliques
        .iter()
        .map(|c| {
            let mut s = FixedBitSet::with_capacity(graph.len());
            s.extend(c.iter().copied());
            s
        })
        .collect();
    let labels = cliques.iter().map(|c| format!("{c:?}")).collect();
    let faces = Poset::from_relation(labels, |i, j| sets[i].is_subset(&sets[j]))?;
    let mut map = Vec::with_capacity(cliques.len());
    for c in &cliques {
        let kappa: Vec<PermGroup> = c.iter().map(|&v| graph.vertices[v].clone()).collect();
        let prod = pi(ctx.group(), &kappa)?;
        let cb = ctx.centralizer(&prod)?;
        let e = cb.blocks().iter().position(|x| x.principal).expect("principal block");
        match k.index_of(c, e) {
            Some(i) => map.push(i),
            None => {
                return Ok(IsoCheck {
                    pass: false,
                    witness: Some(format!("clique {c:?} has no element in K(b)")),
                })
            }
        }
    }
    Ok(poset_iso_check(&faces, k.poset(), &map))
}
