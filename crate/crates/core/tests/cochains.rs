use std::sync::Arc;

use extcohom_core::abelian::FgAbelianGroup;
use extcohom_core::cochain::Cochain;
use extcohom_core::cohomology::cohomology_group;
use extcohom_core::group::FiniteGroup;
use extcohom_core::matrix::{bigs, IntMatrix};
use extcohom_core::module::GModule;
use num_bigint::BigInt;
use proptest::prelude::*;

fn group(kind: usize) -> Arc<FiniteGroup> {
    Arc::new(match kind {
        0 => FiniteGroup::cyclic(4),
        1 => FiniteGroup::cyclic(6),
        2 => FiniteGroup::dihedral(3),
        3 => FiniteGroup::quaternion8(),
        _ => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
    })
}

/// Candidate sign characters, checked against the multiplication table.
fn sign_character(g: &FiniteGroup) -> Option<Vec<i64>> {
    let n = g.order() as u32;
    let parity: Vec<i64> = (0..n).map(|x| if x % 2 == 1 { -1 } else { 1 }).collect();
    let involutions: Vec<i64> = (0..n).map(|x| if x != 0 && g.mul(x, x) == 0 { -1 } else { 1 }).collect();
    [parity, involutions].into_iter().find(|s| {
        s.contains(&-1) && (0..n).all(|a| (0..n).all(|b| s[g.mul(a, b) as usize] == s[a as usize] * s[b as usize]))
    })
}

/// `Z_m` with trivial action, or twisted by a sign character when the group has one.
fn module(g: Arc<FiniteGroup>, m: u64, twisted: bool) -> Arc<GModule> {
    let base = FgAbelianGroup::cyclic(m);
    match sign_character(&g).filter(|_| twisted) {
        Some(sign) => {
            let action = sign.iter().map(|&v| IntMatrix::from_i64_rows(&[vec![v]])).collect();
            Arc::new(GModule::new(g, base, action).unwrap())
        }
        None => Arc::new(GModule::trivial(g, base)),
    }
}

fn random_cochain(m: &Arc<GModule>, k: usize, seed: &[i64]) -> Cochain {
    let mut i = 0;
    Cochain::from_fn(m.clone(), k, |_| {
        i += 1;
        bigs(&[seed[i % seed.len()] * (i as i64 % 5)])
    })
}

#[test]
fn known_groups() {
    let z = |g: FiniteGroup| Arc::new(GModule::trivial(Arc::new(g), FgAbelianGroup::free(1)));
    // H^2(G, Z) is the dual of the abelianization
    assert_eq!(cohomology_group(&z(FiniteGroup::cyclic(5)), 2).unwrap().invariants(), bigs(&[5]));
    assert_eq!(cohomology_group(&z(FiniteGroup::quaternion8()), 2).unwrap().invariants(), bigs(&[2, 2]));
    assert!(cohomology_group(&z(FiniteGroup::cyclic(5)), 1).unwrap().is_trivial());
    // periodic cohomology of Q8 with trivial Z_2: 2, 2, 2 in degrees 1, 2 and 1 in degree 3
    let q = Arc::new(GModule::trivial(Arc::new(FiniteGroup::quaternion8()), FgAbelianGroup::cyclic(2)));
    assert_eq!(cohomology_group(&q, 1).unwrap().invariants(), bigs(&[2, 2]));
    assert_eq!(cohomology_group(&q, 2).unwrap().invariants(), bigs(&[2, 2]));
    assert_eq!(cohomology_group(&q, 3).unwrap().invariants(), bigs(&[2]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundary_squares_to_zero(kind in 0usize..5, m in 2u64..7, twisted: bool, k in 0usize..3, seed in prop::collection::vec(-6i64..6, 1..8)) {
        let module = module(group(kind), m, twisted);
        let c = random_cochain(&module, k, &seed);
        prop_assert!(c.coboundary().unwrap().is_cocycle().unwrap());
    }

    #[test]
    fn coboundaries_have_zero_class(kind in 0usize..5, m in 2u64..7, twisted: bool, k in 1usize..4, seed in prop::collection::vec(-6i64..6, 1..8)) {
        let module = module(group(kind), m, twisted);
        let h = cohomology_group(&module, k).unwrap();
        let b = random_cochain(&module, k - 1, &seed).coboundary().unwrap();
        prop_assert!(h.class_of(&b).unwrap().is_zero());
        prop_assert!(h.is_coboundary(&b).unwrap().is_some());
    }

    #[test]
    fn classes_are_additive(kind in 0usize..5, m in 2u64..7, twisted: bool, k in 1usize..4, i in 0usize..8, j in 0usize..8, seed in prop::collection::vec(-6i64..6, 1..8)) {
        let module = module(group(kind), m, twisted);
        let h = cohomology_group(&module, k).unwrap();
        let gens = h.generator_cocycles();
        prop_assume!(!gens.is_empty());
        let (a, b) = (&gens[i % gens.len()], &gens[j % gens.len()]);
        let noise = random_cochain(&module, k - 1, &seed).coboundary().unwrap();
        let sum = a.add(b).add(&noise);
        prop_assert!(sum.is_cocycle().unwrap());
        prop_assert_eq!(h.class_of(&sum).unwrap(), h.add(&h.class_of(a).unwrap(), &h.class_of(b).unwrap()));
        let rep = h.representative(&h.class_of(&sum).unwrap());
        prop_assert_eq!(h.class_of(&rep).unwrap(), h.class_of(&sum).unwrap());
    }
}

#[test]
fn group_elements_enumerate_cohomology() {
    let m = module(group(4), 2, false);
    let h = cohomology_group(&m, 2).unwrap();
    assert_eq!(h.elements().unwrap().len(), 8);
    assert_eq!(h.order(), Some(BigInt::from(8)));
}
