//! The seven-term sequence
//! `0 → H¹(Q,M^N) → H¹(G,M) → H¹(N,M)^Q → H²(Q,M^N) → H²(G,M)₁ → H¹(Q,H¹(N,M)) → H³(Q,M^N)`
//! of an extension `1 → N → G → Q → 1` and a `G`-module `M`.

mod checks;
mod evens;
mod lambda;
mod naturality;
mod report;
mod rho;
mod transgression;

pub use checks::{
    additivity_check, lambda_section_check, rho_representative_check, split_case_check, SplitCaseOutcome,
};
pub use evens::{evens_pushforward_check, EvensOutcome};
pub use naturality::{naturality_check, ExtensionMorphism, NaturalityOutcome};
pub use report::{seven_term_report, GroupSummary, JointVerdict, MapMatrix, SevenTermReport};
pub use rho::DerivationIntoH1;
pub use transgression::{TrContext, TrRoute};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock};

use crate::abelian::Subgroup;
use crate::ambient::AmbientExtension;
use crate::cochain::Cochain;
use crate::cohomology::{cohomology_group_with_limits, CohomologyClass, CohomologyGroup, Limits};
use crate::derivation::{conjugation_action_on_h1, invariant_classes, InducedQModule};
use crate::error::{Error, Result};
use crate::extension::{semidirect_product, ConcreteExtension};
use crate::matrix::IntMatrix;
use crate::module::GModule;

type Lazy<T> = OnceLock<Result<T>>;

fn force<T>(cell: &Lazy<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(init).as_ref().map_err(Clone::clone)
}

/// Everything attached to one pair (extension, module), with the cohomology
/// groups computed on first use.
#[derive(Debug)]
pub struct SevenTermContext {
    ambient: AmbientExtension,
    module: Arc<GModule>,
    module_n: Arc<GModule>,
    fixed: Subgroup,
    fixed_q: Arc<GModule>,
    limits: Limits,
    h1n: CohomologyGroup,
    qmod: InducedQModule,
    h1n_inv: Subgroup,
    h1q: Lazy<CohomologyGroup>,
    h2q: Lazy<CohomologyGroup>,
    h3q: Lazy<CohomologyGroup>,
    h1g: Lazy<CohomologyGroup>,
    h2g: Lazy<CohomologyGroup>,
    h3g: Lazy<CohomologyGroup>,
    h2n: Lazy<CohomologyGroup>,
    h2g1: Lazy<Subgroup>,
    h1q_h1n: Lazy<CohomologyGroup>,
    split: Lazy<Arc<ConcreteExtension>>,
}

/// Canonical basis vector `eᵢ` of length `k`.
pub(crate) fn unit(k: usize, i: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); k];
    e[i] = BigInt::one();
    e
}

impl SevenTermContext {
    pub fn new(ambient: AmbientExtension, module: Arc<GModule>) -> Result<Self> {
        Self::with_limits(ambient, module, Limits::default())
    }

    pub fn with_limits(ambient: AmbientExtension, module: Arc<GModule>, limits: Limits) -> Result<Self> {
        if **module.group() != **ambient.group() {
            return Err(Error::InvalidModule("module is over a different group".into()));
        }
        let module_n = Arc::new(module.restrict(ambient.normal())?.1);
        let fixed = module.invariants_under(ambient.normal().elements())?;
        let fixed_q = Arc::new(module.submodule_over(&fixed, ambient.quotient().clone(), ambient.section())?);
        let h1n = cohomology_group_with_limits(&module_n, 1, &limits)?;
        let qmod = conjugation_action_on_h1(&ambient, &module, &h1n)?;
        let h1n_inv = invariant_classes(&qmod)?;
        Ok(SevenTermContext {
            ambient,
            module,
            module_n,
            fixed,
            fixed_q,
            limits,
            h1n,
            qmod,
            h1n_inv,
            h1q: OnceLock::new(),
            h2q: OnceLock::new(),
            h3q: OnceLock::new(),
            h1g: OnceLock::new(),
            h2g: OnceLock::new(),
            h3g: OnceLock::new(),
            h2n: OnceLock::new(),
            h2g1: OnceLock::new(),
            h1q_h1n: OnceLock::new(),
            split: OnceLock::new(),
        })
    }

    pub fn ambient(&self) -> &AmbientExtension {
        &self.ambient
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    /// `M` as an `N`-module.
    pub fn module_n(&self) -> &Arc<GModule> {
        &self.module_n
    }

    /// `M^N` inside the canonical coordinates of `M`.
    pub fn fixed(&self) -> &Subgroup {
        &self.fixed
    }

    /// `M^N` as a `Q`-module, in its own canonical coordinates.
    pub fn fixed_q(&self) -> &Arc<GModule> {
        &self.fixed_q
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn h1_normal(&self) -> &CohomologyGroup {
        &self.h1n
    }

    pub fn induced_module(&self) -> &InducedQModule {
        &self.qmod
    }

    /// `H¹(N,M)^Q` inside the canonical coordinates of `H¹(N,M)`.
    pub fn h1_normal_invariant(&self) -> &Subgroup {
        &self.h1n_inv
    }

    fn group_of<'a>(
        &'a self,
        cell: &'a Lazy<CohomologyGroup>,
        module: &Arc<GModule>,
        degree: usize,
    ) -> Result<&'a CohomologyGroup> {
        force(cell, || cohomology_group_with_limits(module, degree, &self.limits))
    }

    pub fn h1_quotient(&self) -> Result<&CohomologyGroup> {
        self.group_of(&self.h1q, &self.fixed_q, 1)
    }

    pub fn h2_quotient(&self) -> Result<&CohomologyGroup> {
        self.group_of(&self.h2q, &self.fixed_q, 2)
    }

    pub fn h3_quotient(&self) -> Result<&CohomologyGroup> {
        self.group_of(&self.h3q, &self.fixed_q, 3)
    }

    pub fn h1_group(&self) -> Result<&CohomologyGroup> {
        self.group_of(&self.h1g, &self.module, 1)
    }

    pub fn h2_group(&self) -> Result<&CohomologyGroup> {
        self.group_of(&self.h2g, &self.module, 2)
    }

    pub fn h3_group(&self) -> Result<&CohomologyGroup> {
        self.group_of(&self.h3g, &self.module, 3)
    }

    pub fn h2_normal(&self) -> Result<&CohomologyGroup> {
        self.group_of(&self.h2n, &self.module_n, 2)
    }

    /// `H¹(Q, H¹(N,M))`
    pub fn h1_quotient_h1(&self) -> Result<&CohomologyGroup> {
        self.group_of(&self.h1q_h1n, self.qmod.module(), 1)
    }

    /// `H²(G,M)₁ = ker(res)` inside the canonical coordinates of `H²(G,M)`.
    pub fn h2_group_restricted(&self) -> Result<&Subgroup> {
        force(&self.h2g1, || {
            let h2g = self.h2_group()?;
            let h2n = self.h2_normal()?;
            let cols: Vec<Vec<BigInt>> = h2g
                .generator_cocycles()
                .iter()
                .map(|z| self.restrict_cocycle(z).and_then(|r| h2n.class_of(&r)).map(|c| c.coords))
                .collect::<Result<_>>()?;
            let m = IntMatrix::from_cols(h2n.rank(), &cols)?;
            Subgroup::kernel(h2g.invariants(), &m, h2n.invariants())
        })
    }

    /// `M ⋊ G` (finite `M` only).
    pub fn split_extension(&self) -> Result<&Arc<ConcreteExtension>> {
        force(&self.split, || semidirect_product(&self.module).map(Arc::new))
    }

    /// `F ∘ (π × … × π)` with values included into `M`.
    pub fn inflate_cocycle(&self, f: &Cochain) -> Cochain {
        Cochain::from_fn(self.module.clone(), f.degree(), |t| {
            let img: Vec<u32> = t.iter().map(|&x| self.ambient.pi(x)).collect();
            self.fixed.include(&f.get(&img))
        })
    }

    /// Restriction of a `G`-cochain to `N`-tuples.
    pub fn restrict_cocycle(&self, f: &Cochain) -> Result<Cochain> {
        if **f.module() != *self.module {
            return Err(Error::InvalidModule("cochain over a different module".into()));
        }
        Ok(f.pullback(self.ambient.inclusion(), self.module_n.clone()))
    }

    /// Inflation `Hⁿ(Q,M^N) → Hⁿ(G,M)` for `n = 1, 2, 3`.
    pub fn inflation(&self, n: usize, class: &CohomologyClass) -> Result<CohomologyClass> {
        let (src, dst) = match n {
            1 => (self.h1_quotient()?, self.h1_group()?),
            2 => (self.h2_quotient()?, self.h2_group()?),
            3 => (self.h3_quotient()?, self.h3_group()?),
            _ => return Err(Error::DegreeOutOfRange(n)),
        };
        dst.class_of(&self.inflate_cocycle(&src.representative(class)))
    }

    /// Restriction `Hⁿ(G,M) → Hⁿ(N,M)` for `n = 1, 2`.
    pub fn restriction(&self, n: usize, class: &CohomologyClass) -> Result<CohomologyClass> {
        let (src, dst) = match n {
            1 => (self.h1_group()?, &self.h1n),
            2 => (self.h2_group()?, self.h2_normal()?),
            _ => return Err(Error::DegreeOutOfRange(n)),
        };
        dst.class_of(&self.restrict_cocycle(&src.representative(class))?)
    }

    /// Coordinates in `M^N` of an element of `M`.
    pub(crate) fn fixed_coords(&self, v: &[BigInt], what: &str) -> Result<Vec<BigInt>> {
        self.fixed.coords_of(v).ok_or_else(|| Error::Consistency(format!("{what} takes a value outside M^N")))
    }
}

#[cfg(test)]
mod tests;
