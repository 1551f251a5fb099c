//! Commutativity of the `tr` and `ρ` squares for a morphism of extensions.

use std::sync::Arc;

use super::{unit, SevenTermContext, TrRoute};
use crate::ambient::AmbientExtension;
use crate::cochain::Cochain;
use crate::cohomology::CohomologyClass;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::extension::normalize_partially_split;
use crate::group::GroupMorphism;
use crate::module::GModule;

/// `α : G′ → G` with `α(N′) ⊆ N`, together with the induced `ᾱ : Q′ → Q`.
#[derive(Debug, Clone)]
pub struct ExtensionMorphism {
    pub src: AmbientExtension,
    pub dst: AmbientExtension,
    pub map: GroupMorphism,
    pub induced: GroupMorphism,
}

impl ExtensionMorphism {
    pub fn new(src: AmbientExtension, dst: AmbientExtension, map: GroupMorphism) -> Result<Self> {
        if *map.src != **src.group() || *map.dst != **dst.group() {
            return Err(Error::NotAMorphismOfExtensions("map between the wrong groups".into()));
        }
        if src.normal().elements().iter().any(|&n| !dst.normal().contains(map.apply(n))) {
            return Err(Error::NotAMorphismOfExtensions(
                "normal subgroup is not carried into the normal subgroup".into(),
            ));
        }
        let image: Vec<u32> = src.quotient().elements().map(|q| dst.pi(map.apply(src.alpha(q)))).collect();
        for g in src.group().elements() {
            if image[src.pi(g) as usize] != dst.pi(map.apply(g)) {
                return Err(Error::NotAMorphismOfExtensions("map does not descend to the quotients".into()));
            }
        }
        let induced = GroupMorphism::new(src.quotient().clone(), dst.quotient().clone(), image)
            .map_err(|e| Error::NotAMorphismOfExtensions(e.to_string()))?;
        Ok(ExtensionMorphism { src, dst, map, induced })
    }

    /// The identity morphism of an extension.
    pub fn identity(e: &AmbientExtension) -> Self {
        Self::new(e.clone(), e.clone(), GroupMorphism::identity(e.group())).expect("identity")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityOutcome {
    pub tr_checked: usize,
    pub tr_commutes: bool,
    pub rho_checked: usize,
    pub rho_commutes: bool,
}

impl NaturalityOutcome {
    pub fn holds(&self) -> bool {
        self.tr_commutes && self.rho_commutes
    }
}

/// Evaluates both paths of the `tr` and `ρ` squares on every generator.
///
/// `module` is a module over the target group; the source uses its pull-back.
pub fn naturality_check(morphism: &ExtensionMorphism, module: &Arc<GModule>) -> Result<NaturalityOutcome> {
    let ctx = SevenTermContext::new(morphism.dst.clone(), module.clone())?;
    let pulled = Arc::new(module.pullback(&morphism.map)?);
    let ctx_src = SevenTermContext::new(morphism.src.clone(), pulled.clone())?;
    let alpha = &morphism.map;
    let bar = &morphism.induced;
    let src = &morphism.src;
    let dst = &morphism.dst;

    // restriction of a derivation of N along α₀ : N′ → N
    let pull_derivation = |d: &Cochain| -> Cochain {
        Cochain::from_fn(ctx_src.module_n().clone(), 1, |t| {
            d.get(&[dst.normal_index(alpha.apply(src.normal_element(t[0])))])
        })
    };

    let inv = ctx.h1_normal_invariant();
    let k = inv.presentation().rank();
    let h2q_src = ctx_src.h2_quotient()?;
    let mut tr_commutes = true;
    for j in 0..k {
        let class = CohomologyClass { coords: inv.include(&unit(k, j)) };
        let d = Derivation::new(ctx.h1_normal().representative(&class))?;
        let (_, f) = ctx.transgression_eta_cocycle(&d)?;
        let across = ctx_src.transgression(&Derivation::new(pull_derivation(d.cochain()))?, TrRoute::Eta)?;
        let mut failure = None;
        let pushed = Cochain::from_fn(ctx_src.fixed_q().clone(), 2, |t| {
            let v = ctx.fixed().include(&f.get(&[bar.apply(t[0]), bar.apply(t[1])]));
            ctx_src.fixed_coords(&v, "the inflated transgression").unwrap_or_else(|e| {
                failure = Some(e);
                ctx_src.fixed_q().zero()
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        tr_commutes &= h2q_src.class_of(&pushed)? == across;
    }

    let h2g1 = ctx.h2_group_restricted()?;
    let r = h2g1.presentation().rank();
    let h2g = ctx.h2_group()?;
    let h2n = ctx.h2_normal()?;
    let target = ctx_src.h1_quotient_h1()?;
    let mut rho_commutes = true;
    for j in 0..r {
        let class = CohomologyClass { coords: h2g1.include(&unit(r, j)) };
        let f = normalize_partially_split(&h2g.representative(&class), dst, h2n)?;
        let down = ctx.rho_of_normalized(&f)?;
        let f_src = f.pullback(alpha, pulled.clone());
        let across = target.class_of(&ctx_src.rho_of_normalized(&f_src)?.cochain)?;
        let mut values = Vec::with_capacity(src.quotient().order());
        for q in src.quotient().elements() {
            let rep = ctx.h1_normal().representative(&down.values[bar.apply(q) as usize]);
            values.push(ctx_src.h1_normal().class_of(&pull_derivation(&rep))?);
        }
        let d =
            Cochain::from_fn(ctx_src.induced_module().module().clone(), 1, |t| values[t[0] as usize].coords.clone());
        rho_commutes &= target.class_of(&d)? == across;
    }

    Ok(NaturalityOutcome { tr_checked: k, tr_commutes, rho_checked: r, rho_commutes })
}
