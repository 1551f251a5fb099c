//! `ρ : H²(G,M)₁ → H¹(Q, H¹(N,M))`.

use std::sync::Arc;

use super::SevenTermContext;
use crate::cochain::Cochain;
use crate::cohomology::CohomologyClass;
use crate::error::{Error, Result};
use crate::extension::normalize_partially_split;
use crate::module::GModule;

/// A derivation `Q → H¹(N,M)` for the induced action, with its value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationIntoH1 {
    pub values: Vec<CohomologyClass>,
    pub cochain: Cochain,
}

impl DerivationIntoH1 {
    /// Validates the derivation law over `module` (the induced `Q`-module).
    pub fn from_cochain(cochain: Cochain) -> Result<Self> {
        if cochain.degree() != 1 || !cochain.is_cocycle()? {
            return Err(Error::NotADerivation("not a derivation over the induced action".into()));
        }
        let values =
            cochain.module().group().elements().map(|q| CohomologyClass { coords: cochain.get(&[q]) }).collect();
        Ok(DerivationIntoH1 { values, cochain })
    }

    pub fn module(&self) -> &Arc<GModule> {
        self.cochain.module()
    }
}

impl SevenTermContext {
    /// `d_g(n) = f(g, g⁻¹ng) − f(n, g)` for a cocycle vanishing on `N × N`.
    pub fn rho_derivation(&self, f: &Cochain, g: u32) -> Cochain {
        let amb = &self.ambient;
        Cochain::from_fn(self.module_n.clone(), 1, |t| {
            let n = amb.normal_element(t[0]);
            let back = amb.normal_element(amb.conjugate_back(g, t[0]));
            self.module.sub(&f.get(&[g, back]), &f.get(&[n, g]))
        })
    }

    /// `q ↦ [d_{α(q)}]` for a cocycle already vanishing on `N × N`.
    pub fn rho_of_normalized(&self, f: &Cochain) -> Result<DerivationIntoH1> {
        let restricted = self.restrict_cocycle(f)?;
        if !restricted.is_zero() {
            return Err(Error::Consistency("cocycle does not vanish on N × N".into()));
        }
        let amb = &self.ambient;
        let mut values = Vec::with_capacity(amb.quotient().order());
        for q in amb.quotient().elements() {
            values.push(self.h1n.class_of(&self.rho_derivation(f, amb.alpha(q)))?);
        }
        let cochain = Cochain::from_fn(self.qmod.module().clone(), 1, |t| values[t[0] as usize].coords.clone());
        if !values[0].is_zero() {
            return Err(Error::Consistency("ρ is nonzero at the identity".into()));
        }
        DerivationIntoH1::from_cochain(cochain)
    }

    /// `ρ` of a 2-cocycle of `G` whose restriction to `N` is a coboundary.
    pub fn rho_of_cocycle(&self, f: &Cochain) -> Result<(DerivationIntoH1, CohomologyClass)> {
        let normalized = normalize_partially_split(f, &self.ambient, self.h2_normal()?)?;
        let d = self.rho_of_normalized(&normalized)?;
        let class = self.h1_quotient_h1()?.class_of(&d.cochain)?;
        Ok((d, class))
    }

    /// `ρ` of a class of `H²(G,M)` (canonical coordinates).
    pub fn rho(&self, class: &CohomologyClass) -> Result<CohomologyClass> {
        let f = self.h2_group()?.representative(class);
        Ok(self.rho_of_cocycle(&f)?.1)
    }
}
