use super::*;
use crate::field::Field;
use crate::topo::{numbered, DEFAULT_MAX_SIMPLICES};

fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn ctx(n: usize, p: u32) -> BrauerContext {
    BrauerContext::new(&PermGroup::symmetric(n).unwrap(), &Field::prime(p).unwrap()).unwrap()
}

fn both(c: &BrauerContext, b: usize) -> (APoset, KPoset) {
    let a = build_a(c, b).unwrap();
    let k = build_k(c, b, &a, DEFAULT_MAX_ELEMENTS).unwrap();
    (a, k)
}

#[test]
fn pi_examples() {
    let g = PermGroup::symmetric(4).unwrap();
    let x = g.subgroup(vec![cyc(4, &[&[1, 2]])]).unwrap();
    let y = g.subgroup(vec![cyc(4, &[&[3, 4]])]).unwrap();
    let v = pi(&g, &[x.clone(), y.clone()]).unwrap();
    assert_eq!(v.order(), 4);
    assert_eq!(v.is_elementary_abelian(2), (true, 2));
    assert_eq!(pi(&g, &[x.clone()]).unwrap(), x);
    let z = g.subgroup(vec![cyc(4, &[&[2, 3]])]).unwrap();
    assert!(matches!(pi(&g, &[x, z]), Err(Error::NotCommuting(..))));
}

#[test]
fn c_of_examples() {
    let g = PermGroup::symmetric(6).unwrap();
    let q = g.subgroup(vec![cyc(6, &[&[1, 2]])]).unwrap();
    assert_eq!(c_of(&q, 2).unwrap(), vec![q.clone()]);
    let v = g.subgroup(vec![cyc(6, &[&[1, 2]]), cyc(6, &[&[3, 4]])]).unwrap();
    assert_eq!(c_of(&v, 2).unwrap().len(), 3);
    let e8 = g.subgroup(vec![cyc(6, &[&[1, 2]]), cyc(6, &[&[3, 4]]), cyc(6, &[&[5, 6]])]).unwrap();
    assert_eq!(c_of(&e8, 2).unwrap().len(), 7);
    assert!(c_of(&g, 2).is_err());
}

#[test]
fn commuting_graph_examples() {
    let s3 = PermGroup::symmetric(3).unwrap();
    let gr = commuting_graph(&s3, 2);
    assert_eq!((gr.len(), gr.edge_count()), (3, 0));

    let g = PermGroup::symmetric(4).unwrap();
    let ab = g.subgroup(vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[3, 4]])]).unwrap();
    let gr = commuting_graph(&ab, 2);
    assert_eq!(gr.edge_count(), gr.len() * (gr.len() - 1) / 2);

    // exhaustive scan over pairs of involutions
    let gr = commuting_graph(&g, 2);
    assert_eq!(gr.len(), 9);
    let invs: Vec<&Permutation> = g.elements().iter().filter(|x| x.order() == 2).collect();
    let mut edges = 0;
    for (i, x) in invs.iter().enumerate() {
        for y in &invs[i + 1..] {
            if (*x * *y) == (*y * *x) {
                edges += 1;
            }
        }
    }
    assert_eq!(gr.edge_count(), edges);
}

#[test]
fn s3_principal_block() {
    let c = ctx(3, 2);
    let (a, k) = both(&c, 0);
    assert_eq!(a.gposet.len(), 3);
    assert_eq!(a.gposet.poset().covering(), vec![]);
    assert_eq!(k.len(), 3);
    assert_eq!(k.poset().covering(), vec![]);
    assert_eq!(k.orbit_poset().unwrap().poset.len(), 1);
    k.gposet.check_group_action(c.group()).unwrap();
}

#[test]
fn defect_zero_blocks_are_empty() {
    let c = ctx(3, 2);
    let (a, k) = both(&c, 1);
    assert!(a.gposet.is_empty() && k.is_empty());
    assert!(clique_witness(&c, 1, &k).is_none());
    let r = theorem1_check(&c, &a, &k, DEFAULT_MAX_SIMPLICES).unwrap();
    assert!(r.pass);
    assert_eq!(r.homology.unwrap().k, "empty complex");
}

#[test]
fn principal_blocks_give_the_clique_complex() {
    for (n, p) in [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (5, 3)] {
        let c = ctx(n, p);
        let (_, k) = both(&c, 0);
        let iso = principal_clique_check(&c, &k).unwrap();
        assert!(iso.pass, "S{n} p={p}: {:?}", iso.witness);
        assert!(clique_witness(&c, 0, &k).is_none(), "S{n} p={p}");
    }
}

#[test]
fn phi_and_psi() {
    for (n, p) in [(4, 2), (5, 2), (5, 3)] {
        let c = ctx(n, p);
        for b in 0..c.num_blocks() {
            let (a, k) = both(&c, b);
            let f = phi(&a, &k, p).unwrap();
            for (x, &y) in f.iter().enumerate() {
                assert_eq!(k.psi[y], x);
            }
            for y in 0..k.len() {
                assert!(k.poset().leq(y, f[k.psi[y]]));
                if k.elements[y].kappa.len() == 1 {
                    assert_eq!(f[k.psi[y]], y);
                }
            }
            let r = theorem1_check(&c, &a, &k, DEFAULT_MAX_SIMPLICES).unwrap();
            assert!(r.pass, "S{n} p={p} block {b}: {r:?}");
            assert_eq!(r.euler_a, r.euler_k);
        }
    }
}

#[test]
fn k_elements_satisfy_their_invariants() {
    let c = ctx(5, 2);
    let (_, k) = both(&c, 0);
    k.gposet.check_group_action(c.group()).unwrap();
    for x in &k.elements {
        assert!(!x.kappa.is_empty());
        let members: Vec<PermGroup> = x.kappa.iter().map(|&v| k.graph.vertices[v].clone()).collect();
        let prod = pi(c.group(), &members).unwrap();
        assert_eq!(prod, x.pair.q);
        assert!(prod.is_elementary_abelian(2).0);
        assert!(c.br_nonzero(0, &prod));
    }
}

#[test]
fn uncovered_cliques() {
    // three pairwise bounded minimal elements with no common bound
    let p = Poset::from_pairs(numbered(6), [(0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5)]).unwrap();
    assert_eq!(uncovered_clique(&p), Some(vec![0, 1, 2]));
    // adding a common bound removes the obstruction
    let q = Poset::from_pairs(numbered(7), [(3, 6), (4, 6), (5, 6), (0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5)]).unwrap();
    assert_eq!(uncovered_clique(&q), None);
    assert_eq!(uncovered_clique(&Poset::empty()), None);
    // a face poset of a simplicial complex is never obstructed
    let faces: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 2]];
    let f = Poset::from_relation(numbered(7), |i, j| faces[i].iter().all(|v| faces[j].contains(v))).unwrap();
    assert_eq!(uncovered_clique(&f), None);
}

mod props {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn s5() -> &'static (BrauerContext, APoset, KPoset) {
        static CELL: OnceLock<(BrauerContext, APoset, KPoset)> = OnceLock::new();
        CELL.get_or_init(|| {
            let c = ctx(5, 2);
            let (a, k) = both(&c, 0);
            (c, a, k)
        })
    }

    proptest! {
        #[test]
        fn conjugation_is_an_automorphism_commuting_with_psi(gi in 0usize..120, x in 0usize..1000, y in 0usize..1000) {
            let (c, a, k) = s5();
            let g = &c.group().elements()[gi];
            let (x, y) = (x % k.len(), y % k.len());
            let image = |i: usize| {
                let el = &k.elements[i];
                let mut kappa: Vec<usize> = el
                    .kappa
                    .iter()
                    .map(|&v| k.graph.vertex_of(&k.graph.vertices[v].conjugate(g)).unwrap())
                    .collect();
                kappa.sort_unstable();
                let pair = c.conjugate_pair(&el.pair, g).unwrap();
                (k.index_of(&kappa, pair.e).unwrap(), a.pairs.index_of(&pair).unwrap())
            };
            let (gx, ax) = image(x);
            let (gy, _) = image(y);
            prop_assert_eq!(k.psi[gx], ax);
            prop_assert_eq!(k.poset().leq(x, y), k.poset().leq(gx, gy));
            // the order is exactly inclusion plus Brauer-pair containment
            let subset = k.elements[x].kappa.iter().all(|v| k.elements[y].kappa.contains(v));
            prop_assert_eq!(k.poset().leq(x, y), subset && a.pairs.leq(k.psi[x], k.psi[y]));
        }
    }
}
