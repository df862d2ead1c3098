use brauer_commuting::brauer::BrauerContext;
use brauer_commuting::field::Field;
use brauer_commuting::perm::{PermGroup, Permutation};

fn cyc(cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(7, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn context() -> BrauerContext {
    BrauerContext::new(&PermGroup::symmetric(7).unwrap(), &Field::prime(2).unwrap()).unwrap()
}

#[test]
fn nonprincipal_block_of_s7() {
    let c = context();
    let g = c.group().clone();
    assert_eq!(c.num_blocks(), 2);
    let b = 1;
    assert!(!c.block(b).principal);

    let d = c.defect_data(b).unwrap();
    assert_eq!(d.order, 8);
    assert!(d.fingerprint.is_dihedral_8());

    let pt = c.principal_type(b).unwrap();
    assert!(pt.holds, "{:?}", pt.failure);

    // a Sylow 2-subgroup of S4 on {1,2,3,4} containing x = (1 2), y = (3 4)
    let p = g.subgroup(vec![cyc(&[&[1, 3, 2, 4]]), cyc(&[&[1, 2]])]).unwrap();
    assert_eq!(p.order(), 8);
    assert!(g.conjugating_element(&p, &d.defect_group).is_some());
    let tops = c.pairs_for(b, &p).unwrap();
    assert_eq!(tops.len(), 1);
    let x = g.subgroup(vec![cyc(&[&[1, 2]])]).unwrap();
    let ex = c.unique_subpair(&tops[0], &x).unwrap();
    assert_eq!(c.pairs_for(b, &x).unwrap(), vec![ex]);

    // x, z lie in P^{(3 5)(4 6)} and y, z in P^{(1 5)(2 6)}
    let z = cyc(&[&[5, 6]]);
    assert!(p.conjugate(&cyc(&[&[3, 5], &[4, 6]])).contains(&cyc(&[&[1, 2]])));
    assert!(p.conjugate(&cyc(&[&[3, 5], &[4, 6]])).contains(&z));
    assert!(p.conjugate(&cyc(&[&[1, 5], &[2, 6]])).contains(&cyc(&[&[3, 4]])));
    assert!(p.conjugate(&cyc(&[&[1, 5], &[2, 6]])).contains(&z));
}

#[test]
fn inclusions_of_the_v_subgroups() {
    let c = context();
    let g = c.group().clone();
    let b = 1;
    let (x, y, z) = (cyc(&[&[1, 2]]), cyc(&[&[3, 4]]), cyc(&[&[5, 6]]));
    let s = |gens: Vec<&Permutation>| g.subgroup(gens.into_iter().cloned().collect()).unwrap();
    let family = vec![
        PermGroup::trivial(7),
        s(vec![&x]),
        s(vec![&y]),
        s(vec![&z]),
        s(vec![&x, &y]),
        s(vec![&x, &z]),
        s(vec![&y, &z]),
    ];
    let bp = c.containment_poset(b, &family).unwrap();
    assert_eq!(bp.pairs.len(), 7);
    let covering = bp.poset.covering();
    assert_eq!(covering.len(), 3 + 6);
    let bottom = bp.index_of(&c.trivial_pair(b)).unwrap();
    for i in 0..7 {
        let order = bp.pairs[i].q.order();
        let covers_below = covering.iter().filter(|&&(_, hi)| hi == i).count();
        match order {
            1 => assert_eq!(i, bottom),
            2 => {
                assert_eq!(covers_below, 1);
                assert!(covering.contains(&(bottom, i)));
            }
            4 => {
                assert_eq!(covers_below, 2);
                for &(lo, _) in covering.iter().filter(|&&(_, hi)| hi == i) {
                    assert!(bp.pairs[lo].q.is_subgroup_of(&bp.pairs[i].q));
                }
            }
            _ => unreachable!(),
        }
    }
    // not contained in a defect group
    assert!(!c.br_nonzero(b, &s(vec![&x, &y, &z])));
}

#[test]
fn commuting_poset_of_the_nonprincipal_block() {
    use brauer_commuting::commuting::{build_a, build_k, clique_witness, theorem1_check, DEFAULT_MAX_ELEMENTS};
    use brauer_commuting::fusion::{commuting_category, theorem2_check, FusionSystem};
    use brauer_commuting::topo::DEFAULT_MAX_SIMPLICES;
    let c = context();
    let g = c.group().clone();
    let b = 1;
    let a = build_a(&c, b).unwrap();
    let k = build_k(&c, b, &a, DEFAULT_MAX_ELEMENTS).unwrap();
    // only subgroups of rank at most 2 conjugate into the defect group
    for pair in &a.pairs.pairs {
        assert!(pair.q.order() <= 4);
        let d = c.defect_data(b).unwrap().defect_group;
        assert!(g.conjugating_into(&pair.q, &d).is_some());
    }
    let r = theorem1_check(&c, &a, &k, DEFAULT_MAX_SIMPLICES).unwrap();
    assert!(r.pass, "{r:?}");
    let t2 = theorem2_check(&c, b, &k).unwrap();
    assert!(t2.pass, "{t2:?}");
    let fs = FusionSystem::new(&c, b).unwrap();
    let cat = commuting_category(&c, &fs).unwrap();
    assert!(cat.objects.iter().all(|o| o.len() <= 3));
    eprintln!("A: {} elements, K: {} elements, chi {}, classes {}", r.a_size, r.k_size, r.euler_k, t2.classes);
    eprintln!("orbits: A {} K {}", a.gposet.orbit_poset().unwrap().poset.len(), k.orbit_poset().unwrap().poset.len());

    let w = clique_witness(&c, b, &k).expect("obstruction");
    assert_eq!(w.members.len(), 3);
    assert!(w.brauer_vanishes);
    eprintln!("{:?} generating {}", w.labels, w.generated.short_label());
    // conjugate to <(1 2), (3 4), (5 6)>
    let xyz = g.subgroup(vec![cyc(&[&[1, 2]]), cyc(&[&[3, 4]]), cyc(&[&[5, 6]])]).unwrap();
    assert!(g.conjugating_element(&w.generated, &xyz).is_some());
    for &m in &w.members {
        assert_eq!(k.elements[m].kappa.len(), 1);
        assert_eq!(k.elements[m].pair.q.generators()[0].cycle_type().iter().filter(|&&l| l == 2).count(), 1);
    }
}
