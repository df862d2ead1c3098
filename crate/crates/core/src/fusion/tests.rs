use super::*;
use crate::commuting::{build_a, build_k, DEFAULT_MAX_ELEMENTS};
use crate::field::Field;

fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn ctx_of(g: &PermGroup, p: u32) -> BrauerContext {
    BrauerContext::new(g, &Field::prime(p).unwrap()).unwrap()
}

fn ctx(n: usize, p: u32) -> BrauerContext {
    ctx_of(&PermGroup::symmetric(n).unwrap(), p)
}

fn k_of(c: &BrauerContext, b: usize) -> KPoset {
    let a = build_a(c, b).unwrap();
    build_k(c, b, &a, DEFAULT_MAX_ELEMENTS).unwrap()
}

#[test]
fn maximal_pairs() {
    let c = ctx(3, 2);
    let top = max_brauer_pair(&c, 1).unwrap();
    assert!(top.q.is_trivial());
    assert_eq!(top, c.trivial_pair(1));
    let top = max_brauer_pair(&c, 0).unwrap();
    assert_eq!(top.q.order(), 2);
    assert_eq!(top.centralizer().blocks().len(), 1);
}

#[test]
fn s3_fusion() {
    let c = ctx(3, 2);
    let fs = FusionSystem::new(&c, 0).unwrap();
    fs.check_axioms().unwrap();
    let p = fs.object_index(fs.p_group()).unwrap();
    let homs = fs.hom(p, p);
    assert_eq!(homs.len(), 1);
    assert!(homs[0].images.iter().zip(fs.p_group().canonical_generators()).all(|(a, b)| *a == b));
    let cat = commuting_category(&c, &fs).unwrap();
    assert_eq!(cat.len(), 1);
    assert_eq!(cat.hom_count(0, 0), 1);
    assert_eq!(iso_class_poset(&cat).unwrap().poset.len(), 1);
}

#[test]
fn hom_counts_match_a_g_scan_in_s4() {
    // a single block, so the condition on subpairs reduces to containment
    let c = ctx(4, 2);
    let fs = FusionSystem::new(&c, 0).unwrap();
    fs.check_axioms().unwrap();
    let p = fs.p_group().clone();
    for (qi, q) in fs.objects.iter().enumerate() {
        let gens = q.canonical_generators();
        let maps: HashSet<Vec<Permutation>> = c
            .group()
            .elements()
            .iter()
            .map(|g| gens.iter().map(|x| x.conj(g)).collect::<Vec<_>>())
            .filter(|ims| ims.iter().all(|y| p.contains(y)))
            .collect();
        assert_eq!(fs.hom(qi, fs.object_index(&p).unwrap()).len(), maps.len(), "{}", q.short_label());
    }
    let z = c.group().subgroup(vec![cyc(4, &[&[1, 2], &[3, 4]])]).unwrap();
    let zi = fs.object_index(&z).unwrap();
    assert_eq!(fs.hom(zi, fs.object_index(&p).unwrap()).len(), 3);
}

#[test]
fn klein_four_with_trivial_fusion() {
    let g = PermGroup::symmetric(4)
        .unwrap()
        .subgroup(vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[3, 4]])])
        .unwrap();
    let c = ctx_of(&g, 2);
    let fs = FusionSystem::new(&c, 0).unwrap();
    let cat = commuting_category(&c, &fs).unwrap();
    assert_eq!(cat.len(), 7);
    let classes = iso_class_poset(&cat).unwrap();
    assert_eq!(classes.poset.len(), 7);
    for a in 0..7 {
        for b in 0..7 {
            let subset = cat.objects[a].iter().all(|v| cat.objects[b].contains(v));
            assert_eq!(classes.poset.leq(classes.class_of[a], classes.class_of[b]), subset);
        }
    }
    let r = theorem2_check(&c, 0, &k_of(&c, 0)).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn theorem2_on_small_blocks() {
    for (n, p) in [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (5, 3)] {
        let c = ctx(n, p);
        for b in 0..c.num_blocks() {
            let r = theorem2_check(&c, b, &k_of(&c, b)).unwrap();
            assert!(r.pass, "S{n} p={p} block {b}: {r:?}");
            assert_eq!(r.classes, r.orbits);
        }
    }
}

#[test]
fn endomorphisms_form_groups() {
    let c = ctx(5, 2);
    let fs = FusionSystem::new(&c, 0).unwrap();
    let cat = commuting_category(&c, &fs).unwrap();
    for k in 0..cat.len() {
        let ends = cat.hom(&fs, k, k);
        assert!(!ends.is_empty());
        // the identity is among them
        let gens = fs.objects[cat.products[k]].canonical_generators();
        assert!(ends.iter().any(|m| m.images == gens));
    }
}
