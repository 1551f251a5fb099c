//! `λ : H¹(Q, H¹(N,M)) → H³(Q, M^N)` through an explicit 3-cocycle.

use num_bigint::BigInt;

use super::SevenTermContext;
use crate::cochain::{tuples, Cochain};
use crate::cohomology::CohomologyClass;
use crate::derivation::{solve_twisted_difference, twist};
use crate::error::{Error, Result};

impl SevenTermContext {
    /// The section `s₂ : H¹(N,M) → Der(N,M)` used by default: the reduced combination of
    /// generator derivations with the class's canonical coordinates.
    pub fn default_section(&self, class: &CohomologyClass) -> Cochain {
        self.h1n.representative(class)
    }

    /// The 3-cocycle `c` for `D` and the section `s₂`.
    ///
    /// `c(q₁,q₂,q₃) = α(q₁)·F′(q₂,q₃) − F′(q₁q₂,q₃) + F′(q₁,q₂q₃) − F′(q₁,q₂)
    ///               + (ᵅ⁽q₁q₂⁾s₂D(q₃))(f_α(q₁,q₂))`
    /// with `n·F′(q₁,q₂) − F′(q₁,q₂) = −(s₂D(q₁) + ᵅ⁽q₁⁾s₂D(q₂) − s₂D(q₁q₂))(n)`.
    pub fn lambda_cocycle_with_section(
        &self,
        d: &Cochain,
        s2: &dyn Fn(&CohomologyClass) -> Cochain,
    ) -> Result<Cochain> {
        if **d.module() != **self.qmod.module() || d.degree() != 1 {
            return Err(Error::NotADerivation("not a 1-cochain over H¹(N,M)".into()));
        }
        if !d.is_cocycle()? {
            return Err(Error::NotADerivation("derivation law fails over the induced action".into()));
        }
        let amb = &self.ambient;
        let q = amb.quotient();
        let k = q.order();
        let m = &self.module;
        let ng = amb.normal_group();
        let lifts: Vec<Cochain> = q.elements().map(|x| s2(&CohomologyClass { coords: d.get(&[x]) })).collect();
        if !lifts[0].is_zero() {
            return Err(Error::Consistency("section does not send 0 to 0".into()));
        }
        // ᵍs₂D(q) for g = α(q'), cached per pair (q', q)
        let twisted: Vec<Cochain> =
            (0..k * k).map(|i| twist(amb, m, &lifts[i % k], amb.alpha((i / k) as u32))).collect();
        let tw = |g_of: u32, x: u32| &twisted[g_of as usize * k + x as usize];

        let mut fp = vec![m.zero(); k * k];
        for a in 1..k as u32 {
            for b in 1..k as u32 {
                let ab = q.mul(a, b);
                let target: Vec<Vec<BigInt>> = ng
                    .elements()
                    .map(|n| {
                        let x = m.sub(
                            &m.add(&lifts[a as usize].get(&[n]), &tw(a, b).get(&[n])),
                            &lifts[ab as usize].get(&[n]),
                        );
                        m.neg(&x)
                    })
                    .collect();
                fp[a as usize * k + b as usize] =
                    solve_twisted_difference(m, amb.normal().elements(), &target)?.ok_or(Error::FPrimeUnsolvable)?;
            }
        }
        let f = |a: u32, b: u32| &fp[a as usize * k + b as usize];
        let value = |t: &[u32]| -> Vec<BigInt> {
            let (a, b, c) = (t[0], t[1], t[2]);
            let ab = q.mul(a, b);
            let mut v = m.act(amb.alpha(a), f(b, c));
            v = m.sub(&v, f(ab, c));
            v = m.add(&v, f(a, q.mul(b, c)));
            v = m.sub(&v, f(a, b));
            m.add(&v, &tw(ab, c).get(&[amb.normal_index(amb.f_alpha(a, b))]))
        };

        for a in q.elements() {
            for b in q.elements() {
                for c in q.elements() {
                    if (a == 0 || b == 0 || c == 0) && !m.is_zero_element(&value(&[a, b, c])) {
                        return Err(Error::Consistency("λ cocycle is not normalized".into()));
                    }
                }
            }
        }
        let mut values = Vec::new();
        for t in tuples(k, 3) {
            let v = value(&t);
            values.extend(self.fixed_coords(&v, "the λ cocycle")?);
        }
        let c = Cochain::from_values(self.fixed_q.clone(), 3, values)?;
        if !c.is_cocycle()? {
            return Err(Error::Consistency("λ cochain fails the cocycle condition".into()));
        }
        Ok(c)
    }

    pub fn lambda_cocycle(&self, d: &Cochain) -> Result<Cochain> {
        self.lambda_cocycle_with_section(d, &|c| self.default_section(c))
    }

    /// `λ(D)` in `H³(Q, M^N)`.
    pub fn lambda(&self, d: &Cochain) -> Result<CohomologyClass> {
        let c = self.lambda_cocycle(d)?;
        self.h3_quotient()?.class_of(&c)
    }
}
