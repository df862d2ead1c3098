//! The fusion system of a block on a defect group, the commuting category K(F)
//! and its poset of isomorphism classes.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::brauer::{BrauerContext, BrauerPair};
use crate::commuting::{CommutingGraph, KPoset};
use crate::error::{invariant, Result};
use crate::perm::{PermGroup, Permutation};
use crate::topo::{poset_iso_check, Condition, IsoCheck, Poset};

#[cfg(test)]
mod tests;

/// (P, e_P): least defect group in the canonical order, least block of C_G(P).
pub fn max_brauer_pair(ctx: &BrauerContext, b: usize) -> Result<BrauerPair> {
    let d = ctx.defect_data(b)?;
    ctx.pairs_for(b, &d.defect_group)?
        .into_iter()
        .next()
        .ok_or_else(|| invariant("defect group carries a pair", d.defect_group.short_label()))
}

/// A map Q → P given by conjugation with `g`, stored by its images of Q's generators.
#[derive(Clone, Debug)]
pub struct Morphism {
    /// Object index of the source.
    pub source: usize,
    pub g: Permutation,
    pub images: Vec<Permutation>,
}

impl Morphism {
    pub fn apply(&self, x: &Permutation) -> Permutation {
        x.conj(&self.g)
    }

    pub fn image(&self, q: &PermGroup) -> PermGroup {
        q.conjugate(&self.g)
    }
}

/// F_{(P,e_P)}(G, b) on the full subgroup family of P.
pub struct FusionSystem {
    pub top: BrauerPair,
    /// All subgroups of P, sorted.
    pub objects: Vec<PermGroup>,
    /// The unique subpair of (P, e_P) at each object.
    pub subpairs: Vec<BrauerPair>,
    /// Hom_F(Q, P) for every object Q.
    to_top: Vec<Vec<Morphism>>,
    index: HashMap<PermGroup, usize>,
}

impl FusionSystem {
    pub fn new(ctx: &BrauerContext, b: usize) -> Result<FusionSystem> {
        let top = max_brauer_pair(ctx, b)?;
        let p = top.q.clone();
        let objects = p.all_subgroups();
        let subpairs = objects
            .iter()
            .map(|q| ctx.unique_subpair(&top, q))
            .collect::<Result<Vec<_>>>()?;
        let index: HashMap<PermGroup, usize> = objects.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
        let mut to_top = Vec::with_capacity(objects.len());
        for (qi, q) in objects.iter().enumerate() {
            let gens = q.canonical_generators();
            let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
            let mut homs = Vec::new();
            for g in ctx.group().elements() {
                let images: Vec<Permutation> = gens.iter().map(|x| x.conj(g)).collect();
                if !images.iter().all(|y| p.contains(y)) || !seen.insert(images.clone()) {
                    continue;
                }
                // the conjugated pair depends on g only through the map, as C_G(Q) fixes e_Q
                let target = index[&q.conjugate(g)];
                if ctx.conjugate_pair(&subpairs[qi], g)? == subpairs[target] {
                    homs.push(Morphism {
                        source: qi,
                        g: g.clone(),
                        images,
                    });
                }
            }
            to_top.push(homs);
        }
        Ok(FusionSystem {
            top,
            objects,
            subpairs,
            to_top,
            index,
        })
    }

    pub fn p_group(&self) -> &PermGroup {
        &self.top.q
    }

    pub fn object_index(&self, q: &PermGroup) -> Option<usize> {
        self.index.get(q).copied()
    }

    /// Hom_F(Q, R), as maps into P whose image lies in R.
    pub fn hom(&self, q: usize, r: usize) -> Vec<&Morphism> {
        let target = &self.objects[r];
        self.to_top[q]
            .iter()
            .filter(|m| m.images.iter().all(|y| target.contains(y)))
            .collect()
    }

    fn find(&self, q: usize, images: &[Permutation]) -> Option<&Morphism> {
        self.to_top[q].iter().find(|m| m.images == images)
    }

    /// Identities, maps induced by P, and closure under composition.
    pub fn check_axioms(&self) -> Result<()> {
        let p = self.p_group();
        for (qi, q) in self.objects.iter().enumerate() {
            let gens = q.canonical_generators();
            for g in p.elements() {
                let images: Vec<Permutation> = gens.iter().map(|x| x.conj(g)).collect();
                if self.find(qi, &images).is_none() {
                    return Err(invariant("inner maps present", format!("{} by {g}", q.short_label())));
                }
            }
            for phi in &self.to_top[qi] {
                let ri = self.index[&phi.image(q)];
                for psi in &self.to_top[ri] {
                    let g = &phi.g * &psi.g;
                    let images: Vec<Permutation> = gens.iter().map(|x| x.conj(&g)).collect();
                    if self.find(qi, &images).is_none() {
                        return Err(invariant(
                            "hom sets closed under composition",
                            format!("{} by {} then {}", q.short_label(), phi.g, psi.g),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// K(F): nonempty sets of pairwise commuting order-p subgroups of P.
pub struct CommutingCategory {
    pub graph: CommutingGraph,
    /// Sorted vertex indices into `graph`.
    pub objects: Vec<Vec<usize>>,
    /// Fusion-system object index of Πκ.
    pub products: Vec<usize>,
    /// `homs[κ][λ]`: indices into Hom_F(Πκ, P).
    homs: Vec<Vec<Vec<usize>>>,
}

impl CommutingCategory {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom<'a>(&self, fs: &'a FusionSystem, k: usize, l: usize) -> Vec<&'a Morphism> {
        self.homs[k][l].iter().map(|&i| &fs.to_top[self.products[k]][i]).collect()
    }

    pub fn hom_count(&self, k: usize, l: usize) -> usize {
        self.homs[k][l].len()
    }

    pub fn label(&self, k: usize) -> String {
        let qs: Vec<String> = self.objects[k].iter().map(|&v| self.graph.vertices[v].short_label()).collect();
        format!("{{{}}}", qs.join(","))
    }
}

pub fn commuting_category(ctx: &BrauerContext, fs: &FusionSystem) -> Result<CommutingCategory> {
    let graph = CommutingGraph::new(fs.p_group().order_p_subgroups(ctx.p()));
    let objects = graph.cliques(usize::MAX, |_| Ok(true))?;
    let products = objects
        .iter()
        .map(|c| {
            let members: Vec<PermGroup> = c.iter().map(|&v| graph.vertices[v].clone()).collect();
            let prod = crate::commuting::pi(fs.p_group(), &members)?;
            Ok(fs.object_index(&prod).expect("subgroup of P"))
        })
        .collect::<Result<Vec<usize>>>()?;
    let n = objects.len();
    let mut homs = vec![vec![Vec::new(); n]; n];
    for k in 0..n {
        let from = &fs.to_top[products[k]];
        for l in 0..n {
            let target = &fs.objects[products[l]];
            for (i, m) in from.iter().enumerate() {
                if !m.images.iter().all(|y| target.contains(y)) {
                    continue;
                }
                let lands = objects[k].iter().all(|&v| {
                    let image = graph.vertices[v].conjugate(&m.g);
                    graph.vertex_of(&image).is_some_and(|w| objects[l].contains(&w))
                });
                if lands {
                    homs[k][l].push(i);
                }
            }
        }
    }
    let cat = CommutingCategory {
        graph,
        objects,
        products,
        homs,
    };
    check_category(fs, &cat)?;
    Ok(cat)
}

/// Closure under composition and the EI property.
fn check_category(fs: &FusionSystem, cat: &CommutingCategory) -> Result<()> {
    let n = cat.len();
    let key = |k: usize, g: &Permutation| -> Vec<Permutation> {
        fs.objects[cat.products[k]]
            .canonical_generators()
            .iter()
            .map(|x| x.conj(g))
            .collect()
    };
    for k in 0..n {
        for l in 0..n {
            if cat.homs[k][l].is_empty() {
                continue;
            }
            for m in 0..n {
                let present: HashSet<Vec<Permutation>> =
                    cat.hom(fs, k, m).iter().map(|h| h.images.clone()).collect();
                for phi in cat.hom(fs, k, l) {
                    for psi in cat.hom(fs, l, m) {
                        if !present.contains(&key(k, &(&phi.g * &psi.g))) {
                            return Err(invariant(
                                "K(F) closed under composition",
                                format!("{} -> {} -> {}", cat.label(k), cat.label(l), cat.label(m)),
                            ));
                        }
                    }
                }
            }
        }
        let ends: HashSet<Vec<Permutation>> = cat.hom(fs, k, k).iter().map(|h| h.images.clone()).collect();
        for phi in cat.hom(fs, k, k) {
            if !ends.contains(&key(k, &phi.g.inverse())) {
                return Err(invariant("EI", format!("{} by {}", cat.label(k), phi.g)));
            }
        }
    }
    Ok(())
}

/// [K(F)]: isomorphism classes ordered by existence of morphisms.
pub struct IsoClassPoset {
    pub poset: Poset,
    pub class_of: Vec<usize>,
    /// Least object of each class.
    pub representatives: Vec<usize>,
}

pub fn iso_class_poset(cat: &CommutingCategory) -> Result<IsoClassPoset> {
    let n = cat.len();
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for k in 0..n {
        if class_of[k] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(k);
        for l in k..n {
            if cat.hom_count(k, l) > 0 && cat.hom_count(l, k) > 0 {
                class_of[l] = c;
            }
        }
    }
    let labels = representatives.iter().map(|&k| format!("[{}]", cat.label(k))).collect();
    let poset = Poset::from_relation(labels, |a, b| cat.hom_count(representatives[a], representatives[b]) > 0)?;
    Ok(IsoClassPoset {
        poset,
        class_of,
        representatives,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem2Report {
    pub classes: usize,
    pub orbits: usize,
    pub forward_well_defined: Condition,
    pub eta_well_defined: Condition,
    pub mutually_inverse: Condition,
    pub iso: IsoCheck,
    pub pass: bool,
}

/// Compares [K(F)] with K(b)/G through [κ] ↦ [(κ, e)] and η.
pub fn theorem2_check(ctx: &BrauerContext, b: usize, k: &KPoset) -> Result<Theorem2Report> {
    let fs = FusionSystem::new(ctx, b)?;
    fs.check_axioms()?;
    let cat = commuting_category(ctx, &fs)?;
    let classes = iso_class_poset(&cat)?;
    let orbits = k.orbit_poset()?;
    let p = fs.p_group();

    // vertices of K(F) as vertices of the commuting graph of G
    let to_g: Vec<usize> = cat
        .graph
        .vertices
        .iter()
        .map(|q| k.graph.vertex_of(q).expect("order p subgroup of G"))
        .collect();
    let mut forward = vec![usize::MAX; classes.poset.len()];
    let mut forward_bad = None;
    for (obj, kappa) in cat.objects.iter().enumerate() {
        let mut in_g: Vec<usize> = kappa.iter().map(|&v| to_g[v]).collect();
        in_g.sort_unstable();
        let e = fs.subpairs[cat.products[obj]].e;
        let Some(x) = k.index_of(&in_g, e) else {
            forward_bad.get_or_insert(format!("{} has no element in K(b)", cat.label(obj)));
            continue;
        };
        let o = orbits.orbit_of[x];
        let c = classes.class_of[obj];
        if forward[c] == usize::MAX {
            forward[c] = o;
        } else if forward[c] != o {
            forward_bad.get_or_insert(format!("{} and its class representative", cat.label(obj)));
        }
    }

    let mut eta = vec![usize::MAX; orbits.poset.len()];
    let mut eta_bad = None;
    for (o, &x) in orbits.representatives.iter().enumerate() {
        let elem = &k.elements[x];
        for g in ctx.group().elements() {
            let moved = elem.pair.q.conjugate(g);
            if !moved.is_subgroup_of(p) {
                continue;
            }
            let Some(obj_q) = fs.object_index(&moved) else { continue };
            if ctx.conjugate_pair(&elem.pair, g)? != fs.subpairs[obj_q] {
                continue;
            }
            let mut kappa: Vec<usize> = elem
                .kappa
                .iter()
                .map(|&v| {
                    let image = k.graph.vertices[v].conjugate(g);
                    cat.graph.vertex_of(&image).expect("inside P")
                })
                .collect();
            kappa.sort_unstable();
            let obj = cat.objects.iter().position(|c| *c == kappa).expect("clique of P");
            let c = classes.class_of[obj];
            if eta[o] == usize::MAX {
                eta[o] = c;
            } else if eta[o] != c {
                eta_bad.get_or_insert(format!("{} moved by {g}", k.label(x)));
            }
        }
        if eta[o] == usize::MAX {
            eta_bad.get_or_insert(format!("{} is not conjugate below (P, e_P)", k.label(x)));
        }
    }

    let defined = forward_bad.is_none() && eta_bad.is_none() && classes.poset.len() == orbits.poset.len();
    let inverse_bad = if defined {
        (0..forward.len())
            .find(|&c| eta[forward[c]] != c)
            .map(|c| classes.poset.label(c).to_string())
            .or_else(|| {
                (0..eta.len())
                    .find(|&o| forward[eta[o]] != o)
                    .map(|o| orbits.poset.label(o).to_string())
            })
    } else {
        Some(format!("{} classes, {} orbits", classes.poset.len(), orbits.poset.len()))
    };
    let iso = if defined {
        poset_iso_check(&classes.poset, &orbits.poset, &forward)
    } else {
        IsoCheck {
            pass: false,
            witness: Some("maps not well defined".into()),
        }
    };
    let forward_well_defined = Condition::new("forward map well defined", forward_bad);
    let eta_well_defined = Condition::new("η well defined", eta_bad);
    let mutually_inverse = Condition::new("forward and η mutually inverse", inverse_bad);
    let pass = forward_well_defined.holds && eta_well_defined.holds && mutually_inverse.holds && iso.pass;
    Ok(Theorem2Report {
        classes: classes.poset.len(),
        orbits: orbits.poset.len(),
        forward_well_defined,
        eta_well_defined,
        mutually_inverse,
        iso,
        pass,
    })
}
