//! The default verification battery: presets × modules with every property check.

use extcohom_core::cohomology::{CohomologyClass, Limits};
use extcohom_core::derivation::Derivation;
use extcohom_core::seven_term::{
    additivity_check, evens_pushforward_check, lambda_section_check, rho_representative_check, seven_term_report,
    split_case_check, SevenTermContext, TrRoute,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::doc::{CaseEntry, Tallies};
use crate::error::Result;
use crate::preset::{build_preset, Preset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatteryCase {
    pub preset: String,
    pub module: String,
}

/// One module with nontrivial action per preset.
fn nontrivial_module(p: &Preset) -> &'static str {
    match p {
        Preset::Cyclic { n: 3, m: 3 } => "Z_9:g=[[4]]",
        Preset::Cyclic { .. } => "Z:g=[[-1]]",
        Preset::Dihedral(_) => "Z_4:r=[[-1]]",
        Preset::Quaternion8 => "Z:i=[[-1]]",
        Preset::Symmetric3 => "sign",
        Preset::HeisenbergMod(2) => "Z:a=[[-1]]",
        Preset::HeisenbergMod(_) => "Z_9:a=[[4]]",
    }
}

pub const DEFAULT_PRESETS: [&str; 8] = [
    "cyclic(2,2)",
    "cyclic(2,4)",
    "cyclic(3,3)",
    "dihedral(4)",
    "quaternion8",
    "symmetric3",
    "heisenberg_mod(2)",
    "heisenberg_mod(3)",
];

/// Trivial `Z`, `Z_2`, `Z_4`, `Z_3` when 3 divides `|G|`, and one module with nontrivial action.
pub fn default_battery() -> Vec<BatteryCase> {
    let mut cases = Vec::new();
    for name in DEFAULT_PRESETS {
        let p = Preset::parse(name).expect("built-in preset");
        let mut modules = vec!["Z", "Z_2", "Z_4"];
        if p.group().order().is_multiple_of(3) {
            modules.push("Z_3");
        }
        modules.push(nontrivial_module(&p));
        cases.extend(modules.into_iter().map(|m| BatteryCase { preset: name.into(), module: m.into() }));
    }
    cases
}

pub fn battery_by_name(name: &str) -> Option<Vec<BatteryCase>> {
    (name == "default").then(default_battery)
}

fn invariant_derivations(ctx: &SevenTermContext) -> extcohom_core::Result<Vec<Derivation>> {
    let inv = ctx.h1_normal_invariant();
    let k = inv.presentation().rank();
    (0..k)
        .map(|j| {
            let mut e = vec![num_bigint::BigInt::from(0); k];
            e[j] = 1.into();
            Derivation::new(ctx.h1_normal().representative(&CohomologyClass { coords: inv.include(&e) }))
        })
        .collect()
}

fn evaluate(case: &BatteryCase, trials: usize, seed: u64, limits: Limits, entry: &mut CaseEntry) -> Result<()> {
    let (_, ext, module) = build_preset(&case.preset, &case.module)?;
    let ctx = SevenTermContext::with_limits(ext, module.clone(), limits)?;

    let report = seven_term_report(&ctx)?;
    entry.exact = Some(report.is_exact());
    entry.joints = report.joints.iter().map(|j| if j.exact() { "exact".into() } else { "not exact".into() }).collect();

    let routes: Vec<TrRoute> =
        TrRoute::ALL.into_iter().filter(|r| module.is_finite() || !r.needs_finite_module()).collect();
    entry.routes_compared = routes.iter().map(|r| r.name().to_string()).collect();
    let ders = invariant_derivations(&ctx)?;
    if routes.len() > 1 {
        let mut agree = true;
        for d in &ders {
            let classes = routes.iter().map(|&r| ctx.transgression(d, r)).collect::<extcohom_core::Result<Vec<_>>>()?;
            agree &= classes.windows(2).all(|w| w[0] == w[1]);
        }
        entry.routes_checked = ders.len();
        entry.routes_agree = Some(agree);
    }

    if ctx.module_n().has_trivial_action() {
        let mut holds = evens_pushforward_check(&ctx, &Derivation::zero(ctx.module_n().clone()))?.holds;
        for d in &ders {
            holds &= evens_pushforward_check(&ctx, d)?.holds;
        }
        entry.evens = Some(holds);
    }

    let split = split_case_check(&ctx)?;
    if split.applicable {
        entry.split_case = Some(split.tr_zero && split.lambda_zero);
    }

    entry.additivity = Some(additivity_check(&ctx)?);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    entry.rho_trials = trials;
    entry.rho_agree = rho_representative_check(&ctx, trials, &mut rng)?;
    entry.lambda_trials = trials;
    entry.lambda_agree = lambda_section_check(&ctx, trials, &mut rng)?;
    Ok(())
}

/// Runs every check on one case; failures and errors are recorded in the entry.
pub fn run_case(case: &BatteryCase, trials: usize, seed: u64, limits: Limits) -> CaseEntry {
    let mut entry = CaseEntry { preset: case.preset.clone(), module: case.module.clone(), ..CaseEntry::default() };
    if let Err(e) = evaluate(case, trials, seed, limits, &mut entry) {
        entry.error = Some(format!("{}: {e}", e.code()));
    }
    entry.passed = entry.error.is_none()
        && entry.exact == Some(true)
        && entry.routes_agree != Some(false)
        && entry.evens != Some(false)
        && entry.split_case != Some(false)
        && entry.additivity == Some(true)
        && entry.rho_agree == entry.rho_trials
        && entry.lambda_agree == entry.lambda_trials;
    entry
}

/// Per-case seed derived from the run seed and the case position.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs all cases in parallel; results keep the input order.
pub fn run_battery(cases: &[BatteryCase], trials: usize, seed: u64, limits: Limits) -> (Vec<CaseEntry>, Tallies) {
    let entries: Vec<CaseEntry> =
        cases.par_iter().enumerate().map(|(i, c)| run_case(c, trials, case_seed(seed, i), limits)).collect();
    let t = tally(&entries);
    (entries, t)
}

pub fn tally(entries: &[CaseEntry]) -> Tallies {
    let mut t = Tallies { cases: entries.len(), ..Tallies::default() };
    for e in entries {
        t.passed += usize::from(e.passed);
        t.exact += usize::from(e.exact == Some(true));
        if let Some(a) = e.routes_agree {
            t.routes_checked += e.routes_checked;
            if a {
                t.routes_agree += e.routes_checked;
            }
        }
        if let Some(h) = e.evens {
            t.evens_checked += 1;
            t.evens_hold += usize::from(h);
        }
        if let Some(s) = e.split_case {
            t.split_checked += 1;
            t.split_hold += usize::from(s);
        }
        t.rho_trials += e.rho_trials;
        t.rho_agree += e.rho_agree;
        t.lambda_trials += e.lambda_trials;
        t.lambda_agree += e.lambda_agree;
    }
    t
}
