use std::sync::Arc;

use extcohom_core::abelian::FgAbelianGroup;
use extcohom_core::cohomology::cohomology_group;
use extcohom_core::extension::{extension_class_cocycle, extension_from_cocycle, semidirect_product};
use extcohom_core::group::FiniteGroup;
use extcohom_core::matrix::IntMatrix;
use extcohom_core::module::GModule;
use proptest::prelude::*;

fn sign_module(g: &Arc<FiniteGroup>, m: u64, sign: impl Fn(u32) -> i64) -> Arc<GModule> {
    let action = (0..g.order() as u32).map(|x| IntMatrix::from_i64_rows(&[vec![sign(x)]])).collect();
    Arc::new(GModule::new(g.clone(), FgAbelianGroup::cyclic(m), action).unwrap())
}

#[test]
fn every_class_of_z2_by_z2_is_realized() {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let m = Arc::new(GModule::trivial(g, FgAbelianGroup::cyclic(2)));
    let h = cohomology_group(&m, 2).unwrap();
    let abelian: Vec<bool> = h
        .elements()
        .unwrap()
        .iter()
        .map(|c| extension_from_cocycle(&h.representative(c)).unwrap().group().is_abelian())
        .collect();
    assert_eq!(abelian, [true, true]);
    let nonsplit = extension_from_cocycle(&h.generator_cocycles()[0]).unwrap();
    // the nonsplit extension is Z_4: some element has order 4
    let grp = nonsplit.group();
    assert!((0..4).any(|x| grp.mul(x, x) != 0));
}

#[test]
fn semidirect_product_has_zero_class() {
    let g = Arc::new(FiniteGroup::cyclic(4));
    let m = sign_module(&g, 5, |x| if x % 2 == 1 { -1 } else { 1 });
    let e = semidirect_product(&m).unwrap();
    assert_eq!(e.group().order(), 20);
    let h = cohomology_group(&m, 2).unwrap();
    assert!(h.class_of(&extension_class_cocycle(&e).unwrap()).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cocycle_extension_round_trip(kind in 0usize..3, m in 2u64..5, twisted: bool, pick in 0usize..64) {
        let g = Arc::new(match kind {
            0 => FiniteGroup::cyclic(4),
            1 => FiniteGroup::symmetric3(),
            _ => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        });
        let module = if twisted {
            // order-2 quotient for each group: odd index, reflection, first factor
            let gg = g.clone();
            sign_module(&g, m, move |x| match kind {
                0 => if x % 2 == 1 { -1 } else { 1 },
                1 => if gg.mul(x, x) == 0 && x != 0 { -1 } else { 1 },
                _ => if x & 1 == 1 { -1 } else { 1 },
            })
        } else {
            Arc::new(GModule::trivial(g.clone(), FgAbelianGroup::cyclic(m)))
        };
        let h = cohomology_group(&module, 2).unwrap();
        let classes = h.elements().unwrap();
        let class = &classes[pick % classes.len()];
        let e = extension_from_cocycle(&h.representative(class)).unwrap();
        prop_assert_eq!(e.group().order(), g.order() * m as usize);
        prop_assert_eq!(&h.class_of(&extension_class_cocycle(&e).unwrap()).unwrap(), class);
    }
}
