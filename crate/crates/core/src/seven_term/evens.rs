//! For `N` acting trivially on `M`, compares `tr[d]` with `−d_*[ε]` where
//! `ε : 0 → N/N′ → G/N′ → Q → 1`.

use num_bigint::BigInt;
use std::sync::Arc;

use super::{unit, SevenTermContext, TrRoute};
use crate::abelian::FgAbelianGroup;
use crate::cohomology::CohomologyClass;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::extension::{extension_class_cocycle, push_out_cocycle, push_out_extension, ConcreteExtension};
use crate::group::{derived_subgroup, quotient_with_transversal, GroupMorphism, SubgroupHandle};
use crate::matrix::IntMatrix;
use crate::module::{GModule, ModuleMorphism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvensOutcome {
    pub transgression: CohomologyClass,
    /// `d_*[ε]` through the pushed-out factor set.
    pub pushforward: CohomologyClass,
    /// `d_*[ε]` through the concrete push-out group, when `M` is finite.
    pub pushforward_concrete: Option<CohomologyClass>,
    pub holds: bool,
}

/// The extension `0 → N/N′ → G/N′ → Q → 1` with `N/N′` as a `Q`-module by conjugation,
/// and for every element of `N/N′` (by module element index) a lift to `N`.
fn abelianized_extension(ctx: &SevenTermContext) -> Result<(ConcreteExtension, Vec<u32>)> {
    let amb = ctx.ambient();
    let g = amb.group();
    let derived = derived_subgroup(amb.normal());
    let (gab, pi_ab, beta) = quotient_with_transversal(&derived)?;
    let mut image: Vec<u32> = amb.normal().elements().iter().map(|&n| pi_ab.apply(n)).collect();
    image.sort_unstable();
    image.dedup();
    let nab = SubgroupHandle::new(gab.clone(), image)?;
    let (nab_group, incl) = nab.to_group();
    let (pres, coords) = FgAbelianGroup::from_finite_abelian(&nab_group)?;
    let k = pres.ngens();
    let gen_elements: Vec<u32> = (0..k)
        .map(|i| coords.iter().position(|c| *c == unit(k, i)).expect("generators have unit coordinates") as u32)
        .collect();

    let q = amb.quotient();
    let mut action = Vec::with_capacity(q.order());
    for x in q.elements() {
        let lift = pi_ab.apply(amb.alpha(x));
        let cols: Vec<Vec<BigInt>> = gen_elements
            .iter()
            .map(|&e| coords[nab.position(gab.conj(lift, incl.apply(e))).expect("normal subgroup")].clone())
            .collect();
        action.push(IntMatrix::from_cols(k, &cols)?);
    }
    let a = Arc::new(GModule::new(q.clone(), pres.clone(), action)?);

    let count = a.element_count().expect("finite");
    let mut embedding = vec![0u32; count];
    let mut lifts = vec![0u32; count];
    for (i, c) in coords.iter().enumerate() {
        let idx = a.element_index(&pres.canonical(c));
        let y = incl.apply(i as u32);
        embedding[idx] = y;
        lifts[idx] = *amb.normal().elements().iter().find(|&&n| pi_ab.apply(n) == y).expect("N maps onto N/N′");
    }
    let projection =
        GroupMorphism::new(gab.clone(), q.clone(), gab.elements().map(|y| amb.pi(beta[y as usize])).collect())?;
    debug_assert_eq!(g.order() / derived.order(), gab.order());
    Ok((ConcreteExtension::new(a, gab, embedding, projection)?, lifts))
}

/// `tr[d] = −d_*[ε]` for an invariant homomorphism `d : N → M` with `N` acting trivially on `M`.
pub fn evens_pushforward_check(ctx: &SevenTermContext, d: &Derivation) -> Result<EvensOutcome> {
    if !ctx.module_n().has_trivial_action() {
        return Err(Error::ModuleNotNInvariant);
    }
    let amb = ctx.ambient();
    let transgression = ctx.transgression(d, TrRoute::Eta)?;

    let (eps, lifts) = abelianized_extension(ctx)?;
    let a = eps.module().clone();
    for &x in derived_subgroup(amb.normal()).elements() {
        if !ctx.module().is_zero_element(&d.eval(amb.normal_index(x))) {
            return Err(Error::Consistency("homomorphism does not vanish on the derived subgroup".into()));
        }
    }
    let r = a.rank();
    let cols: Vec<Vec<BigInt>> = (0..r)
        .map(|j| {
            let n = lifts[a.element_index(&unit(r, j))];
            ctx.fixed_coords(&d.eval(amb.normal_index(n)), "the homomorphism")
        })
        .collect::<Result<_>>()?;
    let dstar =
        ModuleMorphism::new(a.clone(), ctx.fixed_q().clone(), IntMatrix::from_cols(ctx.fixed_q().rank(), &cols)?)?;

    let h2q = ctx.h2_quotient()?;
    let f_eps = extension_class_cocycle(&eps)?;
    let pushforward = h2q.class_of(&push_out_cocycle(&f_eps, &dstar)?)?;
    let pushforward_concrete = if ctx.fixed_q().is_finite() {
        let pushed = push_out_extension(&eps, &dstar)?;
        Some(h2q.class_of(&extension_class_cocycle(&pushed)?.with_module(ctx.fixed_q().clone()))?)
    } else {
        None
    };
    let holds =
        transgression == h2q.neg(&pushforward) && pushforward_concrete.as_ref().is_none_or(|c| *c == pushforward);
    Ok(EvensOutcome { transgression, pushforward, pushforward_concrete, holds })
}
