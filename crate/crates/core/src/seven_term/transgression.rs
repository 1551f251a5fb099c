//! `tr : H¹(N,M)^Q → H²(Q,M^N)` along three independent routes.

use num_bigint::BigInt;
use std::sync::Arc;

use super::SevenTermContext;
use crate::cochain::Cochain;
use crate::cohomology::CohomologyClass;
use crate::complement::{is_invariant_derivation, omega, sdc_of_derivation};
use crate::derivation::{solve_twisted_difference, twist, Derivation};
use crate::error::{Error, Result};
use crate::group::normalizer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrRoute {
    /// Closed formula through a normalized `η : Q → M`.
    Eta,
    /// Factor set of a section of `N_E(H) → G` in `E = M ⋊ G`.
    Normalizer,
    /// The extension `N_E(H)/H` of `Q` by `M^N`.
    Omega,
}

impl TrRoute {
    pub const ALL: [TrRoute; 3] = [TrRoute::Eta, TrRoute::Normalizer, TrRoute::Omega];

    pub fn name(self) -> &'static str {
        match self {
            TrRoute::Eta => "eta",
            TrRoute::Normalizer => "normalizer",
            TrRoute::Omega => "omega",
        }
    }

    /// Routes that build `M ⋊ G` element by element.
    pub fn needs_finite_module(self) -> bool {
        !matches!(self, TrRoute::Eta)
    }
}

/// Data of one transgression computation: the derivation, the table
/// `η(q)` with `(ᵅ⁽q⁾d − d)(n) = n·η(q) − η(q)` and `η(1) = 0`, and the route used.
#[derive(Debug, Clone)]
pub struct TrContext {
    pub derivation: Derivation,
    pub eta: Vec<Vec<BigInt>>,
    pub route: TrRoute,
}

impl SevenTermContext {
    fn require_invariant(&self, d: &Derivation) -> Result<()> {
        if **d.module() != *self.module_n {
            return Err(Error::InvalidModule("derivation over a different module".into()));
        }
        if !is_invariant_derivation(&self.ambient, &self.module, &self.h1n, d.cochain())? {
            return Err(Error::NotInvariant);
        }
        Ok(())
    }

    /// Solves for `η` one quotient element at a time.
    pub fn eta_table(&self, d: &Derivation) -> Result<Vec<Vec<BigInt>>> {
        self.require_invariant(d)?;
        let normal = self.ambient.normal().elements();
        let q = self.ambient.quotient();
        let mut eta = Vec::with_capacity(q.order());
        for x in q.elements() {
            if x == 0 {
                eta.push(self.module.zero());
                continue;
            }
            let twisted = twist(&self.ambient, &self.module, d.cochain(), self.ambient.alpha(x));
            let target: Vec<Vec<BigInt>> = self
                .ambient
                .normal_group()
                .elements()
                .map(|n| self.module.sub(&twisted.get(&[n]), &d.eval(n)))
                .collect();
            eta.push(solve_twisted_difference(&self.module, normal, &target)?.ok_or(Error::EtaUnsolvable)?);
        }
        Ok(eta)
    }

    /// `F(q₁,q₂) = η(q₁) + α(q₁)·η(q₂) − f_α(q₁,q₂)·η(q₁q₂) − d(f_α(q₁,q₂))`
    pub fn transgression_eta_cocycle(&self, d: &Derivation) -> Result<(TrContext, Cochain)> {
        let eta = self.eta_table(d)?;
        let amb = &self.ambient;
        let q = amb.quotient();
        let m = &self.module;
        let mut failure = None;
        let f = Cochain::from_fn(self.fixed_q.clone(), 2, |t| {
            let (a, b) = (t[0], t[1]);
            let fa = amb.f_alpha(a, b);
            let mut v = m.add(&eta[a as usize], &m.act(amb.alpha(a), &eta[b as usize]));
            v = m.sub(&v, &m.act(fa, &eta[q.mul(a, b) as usize]));
            v = m.sub(&v, &d.eval(amb.normal_index(fa)));
            self.fixed_coords(&v, "the η-formula cocycle").unwrap_or_else(|e| {
                failure = Some(e);
                self.fixed_q.zero()
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        Ok((TrContext { derivation: d.clone(), eta, route: TrRoute::Eta }, f))
    }

    /// `F(q₁,q₂) = f_s(α(q₁),α(q₂)) − f_s(f_α(q₁,q₂), α(q₁q₂))` where `f_s` is the factor set
    /// of a section `G → N_E(H)` extending `n ↦ (d(n), n)`.
    pub fn transgression_normalizer_cocycle(&self, d: &Derivation) -> Result<Cochain> {
        self.require_invariant(d)?;
        let e0 = self.split_extension()?.clone();
        let amb = &self.ambient;
        let h = sdc_of_derivation(&e0, amb, d)?;
        let norm = normalizer(h.subgroup());
        let e = e0.group();
        let g = amb.group();
        let mut s = vec![u32::MAX; g.order()];
        for i in amb.normal_group().elements() {
            s[amb.normal_element(i) as usize] = e0.pair(&d.eval(i), amb.normal_element(i)).expect("pair coordinates");
        }
        for &x in norm.elements() {
            let gx = e0.projection().apply(x) as usize;
            if s[gx] == u32::MAX {
                s[gx] = x;
            }
        }
        if s.contains(&u32::MAX) {
            return Err(Error::InvariantViolation);
        }
        let f_s = |a: u32, b: u32| -> Vec<BigInt> {
            let x = e.mul(e.mul(s[a as usize], s[b as usize]), e.inv(s[g.mul(a, b) as usize]));
            e0.kernel_element(x).expect("lies over the identity")
        };
        let q = amb.quotient();
        let mut failure = None;
        let f = Cochain::from_fn(self.fixed_q.clone(), 2, |t| {
            let (a, b) = (t[0], t[1]);
            let v = self.module.sub(&f_s(amb.alpha(a), amb.alpha(b)), &f_s(amb.f_alpha(a, b), amb.alpha(q.mul(a, b))));
            self.fixed_coords(&v, "the normalizer-section cocycle").unwrap_or_else(|e| {
                failure = Some(e);
                self.fixed_q.zero()
            })
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(f),
        }
    }

    /// Factor set of `N_E(H)/H` for `H = {(d(n), n)}`.
    pub fn transgression_omega_cocycle(&self, d: &Derivation) -> Result<Cochain> {
        self.require_invariant(d)?;
        let e0: Arc<_> = self.split_extension()?.clone();
        let h = sdc_of_derivation(&e0, &self.ambient, d)?;
        omega(&h, &self.ambient, &self.fixed, &self.fixed_q)
    }

    pub fn transgression_cocycle(&self, d: &Derivation, route: TrRoute) -> Result<Cochain> {
        match route {
            TrRoute::Eta => Ok(self.transgression_eta_cocycle(d)?.1),
            TrRoute::Normalizer => self.transgression_normalizer_cocycle(d),
            TrRoute::Omega => self.transgression_omega_cocycle(d),
        }
    }

    /// `tr[d]` in `H²(Q, M^N)`.
    pub fn transgression(&self, d: &Derivation, route: TrRoute) -> Result<CohomologyClass> {
        let f = self.transgression_cocycle(d, route)?;
        self.h2_quotient()?.class_of(&f)
    }

    /// `tr` on a class of `H¹(N,M)^Q` given in the subgroup's canonical coordinates.
    pub fn transgression_of_invariant(&self, y: &[BigInt], route: TrRoute) -> Result<CohomologyClass> {
        let class = CohomologyClass { coords: self.h1n_inv.include(y) };
        let d = Derivation::new(self.h1n.representative(&class))?;
        self.transgression(&d, route)
    }
}
