//! Randomized and exhaustive property checks on the maps of the sequence.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use std::collections::HashMap;

use super::{unit, SevenTermContext, TrRoute};
use crate::cochain::Cochain;
use crate::cohomology::{CohomologyClass, CohomologyGroup};
use crate::derivation::Derivation;
use crate::error::Result;

fn random_coords<R: Rng + ?Sized>(moduli: &[BigInt], rng: &mut R) -> Vec<BigInt> {
    moduli
        .iter()
        .map(|t| match t.to_i64() {
            Some(0) | None => BigInt::from(rng.gen_range(-5i64..=5)),
            Some(t) => BigInt::from(rng.gen_range(0..t)),
        })
        .collect()
}

fn random_cochain<R: Rng + ?Sized>(template: &Cochain, degree: usize, rng: &mut R) -> Cochain {
    let module = template.module().clone();
    Cochain::from_fn(module.clone(), degree, |_| random_coords(module.torsion(), rng))
}

fn random_class<R: Rng + ?Sized>(h: &CohomologyGroup, rng: &mut R) -> CohomologyClass {
    h.reduce_class(&random_coords(h.invariants(), rng))
}

/// `ρ(f) = ρ(f + δv)` for random classes of `H²(G,M)₁` and random 1-cochains `v`.
/// Returns the number of agreeing trials.
pub fn rho_representative_check<R: Rng + ?Sized>(ctx: &SevenTermContext, trials: usize, rng: &mut R) -> Result<usize> {
    let h2g = ctx.h2_group()?;
    let h2g1 = ctx.h2_group_restricted()?;
    let mut agree = 0;
    for _ in 0..trials {
        let y = random_coords(h2g1.invariants(), rng);
        let class = CohomologyClass { coords: h2g1.include(&y) };
        let f = h2g.representative(&class);
        let base = ctx.rho_of_cocycle(&f)?.1;
        let v = random_cochain(&f, 1, rng);
        let shifted = f.add(&v.coboundary()?);
        if ctx.rho_of_cocycle(&shifted)?.1 == base {
            agree += 1;
        }
    }
    Ok(agree)
}

/// `λ` computed with the default section and with a section shifted by a random inner
/// derivation on every nonzero class. Returns the number of agreeing trials.
pub fn lambda_section_check<R: Rng + ?Sized>(ctx: &SevenTermContext, trials: usize, rng: &mut R) -> Result<usize> {
    let h = ctx.h1_quotient_h1()?;
    let h3 = ctx.h3_quotient()?;
    let mut agree = 0;
    for _ in 0..trials {
        let d = h.representative(&random_class(h, rng));
        let base = h3.class_of(&ctx.lambda_cocycle(&d)?)?;
        let mut shifts: HashMap<CohomologyClass, Vec<BigInt>> = HashMap::new();
        for q in ctx.ambient().quotient().elements() {
            let c = CohomologyClass { coords: d.get(&[q]) };
            if !c.is_zero() {
                let m = random_coords(ctx.module().torsion(), rng);
                shifts.entry(c).or_insert(m);
            }
        }
        let section = |c: &CohomologyClass| -> Cochain {
            let s = ctx.default_section(c);
            match shifts.get(c) {
                Some(m) => s.add(Derivation::inner(ctx.module_n().clone(), m).cochain()),
                None => s,
            }
        };
        let perturbed = h3.class_of(&ctx.lambda_cocycle_with_section(&d, &section)?)?;
        if perturbed == base {
            agree += 1;
        }
    }
    Ok(agree)
}

/// `tr` and `ρ` are additive on every pair of generators.
pub fn additivity_check(ctx: &SevenTermContext) -> Result<bool> {
    let inv = ctx.h1_normal_invariant();
    let k = inv.presentation().rank();
    let h1n = ctx.h1_normal();
    let h2q = ctx.h2_quotient()?;
    let ders: Vec<Derivation> = (0..k)
        .map(|j| Derivation::new(h1n.representative(&CohomologyClass { coords: inv.include(&unit(k, j)) })))
        .collect::<Result<_>>()?;
    let trs: Vec<CohomologyClass> = ders.iter().map(|d| ctx.transgression(d, TrRoute::Eta)).collect::<Result<_>>()?;
    for i in 0..k {
        for j in i..k {
            if ctx.transgression(&ders[i].add(&ders[j]), TrRoute::Eta)? != h2q.add(&trs[i], &trs[j]) {
                return Ok(false);
            }
        }
    }

    let h2g = ctx.h2_group()?;
    let h2g1 = ctx.h2_group_restricted()?;
    let r = h2g1.presentation().rank();
    let target = ctx.h1_quotient_h1()?;
    let reps: Vec<Cochain> =
        (0..r).map(|j| h2g.representative(&CohomologyClass { coords: h2g1.include(&unit(r, j)) })).collect();
    let rhos: Vec<CohomologyClass> = reps.iter().map(|f| ctx.rho_of_cocycle(f).map(|x| x.1)).collect::<Result<_>>()?;
    for i in 0..r {
        for j in i..r {
            if ctx.rho_of_cocycle(&reps[i].add(&reps[j]))?.1 != target.add(&rhos[i], &rhos[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCaseOutcome {
    /// The section is a homomorphism and `N` acts trivially on `M`.
    pub applicable: bool,
    pub tr_zero: bool,
    pub lambda_zero: bool,
}

/// For a split extension with `M = M^N`: `tr` and `λ` vanish on all generators.
pub fn split_case_check(ctx: &SevenTermContext) -> Result<SplitCaseOutcome> {
    let applicable = ctx.ambient().section_is_homomorphism() && ctx.module_n().has_trivial_action();
    let inv = ctx.h1_normal_invariant();
    let k = inv.presentation().rank();
    let mut tr_zero = true;
    for j in 0..k {
        tr_zero &= ctx.transgression_of_invariant(&unit(k, j), TrRoute::Eta)?.is_zero();
    }
    let mut lambda_zero = true;
    for d in ctx.h1_quotient_h1()?.generator_cocycles() {
        lambda_zero &= ctx.lambda(d)?.is_zero();
    }
    Ok(SplitCaseOutcome { applicable, tr_zero, lambda_zero })
}
