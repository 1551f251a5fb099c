//! Partial splittings over `N`, partial semi-direct complements, their
//! equivalence and `Q`-action, and the normalizer-quotient class `ω(e, H)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::abelian::Subgroup;
use crate::ambient::AmbientExtension;
use crate::cochain::Cochain;
use crate::cohomology::{CohomologyClass, CohomologyGroup};
use crate::derivation::{derivation_groups, twist, Derivation, InducedQModule};
use crate::error::{Error, Result};
use crate::extension::{canonical_section, ConcreteExtension};
use crate::group::{normalizer, SubgroupHandle};
use crate::module::GModule;

/// A homomorphism `s : N → E` with `p ∘ s` the inclusion of `N`.
#[derive(Debug, Clone)]
pub struct PartialSplitting {
    host: Arc<ConcreteExtension>,
    values: Vec<u32>,
}

impl PartialSplitting {
    /// `values[i]` is the image of the `i`-th element of `N`.
    pub fn new(host: Arc<ConcreteExtension>, ambient: &AmbientExtension, values: Vec<u32>) -> Result<Self> {
        let ng = ambient.normal_group();
        if values.len() != ng.order() {
            return Err(Error::NotPartiallySplit("table has the wrong length".into()));
        }
        let e = host.group();
        for a in ng.elements() {
            if host.projection().apply(values[a as usize]) != ambient.normal_element(a) {
                return Err(Error::NotPartiallySplit("not a section over N".into()));
            }
            for b in ng.elements() {
                if e.mul(values[a as usize], values[b as usize]) != values[ng.mul(a, b) as usize] {
                    return Err(Error::NotPartiallySplit("not a homomorphism".into()));
                }
            }
        }
        Ok(PartialSplitting { host, values })
    }

    pub fn host(&self) -> &Arc<ConcreteExtension> {
        &self.host
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn image(&self) -> SdcHandle {
        let h = SubgroupHandle::new(self.host.group().clone(), self.values.clone()).expect("image of a homomorphism");
        SdcHandle { host: self.host.clone(), subgroup: h }
    }
}

/// A subgroup `H ≤ E` mapped isomorphically onto `N` by the projection.
#[derive(Debug, Clone)]
pub struct SdcHandle {
    host: Arc<ConcreteExtension>,
    subgroup: SubgroupHandle,
}

impl SdcHandle {
    pub fn new(host: Arc<ConcreteExtension>, ambient: &AmbientExtension, subgroup: SubgroupHandle) -> Result<Self> {
        if subgroup.order() != ambient.normal().order() {
            return Err(Error::NotPartiallySplit("subgroup has the wrong order".into()));
        }
        let mut hit = vec![false; ambient.group().order()];
        for &x in subgroup.elements() {
            let g = host.projection().apply(x);
            if !ambient.normal().contains(g) || hit[g as usize] {
                return Err(Error::NotPartiallySplit("projection is not a bijection onto N".into()));
            }
            hit[g as usize] = true;
        }
        Ok(SdcHandle { host, subgroup })
    }

    pub fn host(&self) -> &Arc<ConcreteExtension> {
        &self.host
    }

    pub fn subgroup(&self) -> &SubgroupHandle {
        &self.subgroup
    }

    /// The partial splitting with image `H`.
    pub fn splitting(&self, ambient: &AmbientExtension) -> PartialSplitting {
        let mut values = vec![0u32; ambient.normal().order()];
        for &x in self.subgroup.elements() {
            values[ambient.normal_index(self.host.projection().apply(x)) as usize] = x;
        }
        PartialSplitting { host: self.host.clone(), values }
    }

    /// `x H x⁻¹`
    pub fn conjugate(&self, x: u32) -> SdcHandle {
        let e = self.host.group();
        let elems = self.subgroup.elements().iter().map(|&h| e.conj(x, h)).collect();
        SdcHandle {
            host: self.host.clone(),
            subgroup: SubgroupHandle::new(e.clone(), elems).expect("conjugate subgroup"),
        }
    }

    /// `H ∼ H'` iff `H' = i(m) H i(m)⁻¹` for some `m ∈ M`.
    pub fn equivalent(&self, other: &SdcHandle) -> bool {
        let m = self.host.module();
        let count = m.element_count().expect("finite module");
        (0..count).any(|i| self.conjugate(self.host.embed(&m.element(i))).subgroup == other.subgroup)
    }
}

/// `H = {(d(n), n)}` in the split extension `M ⋊ G`.
pub fn sdc_of_derivation(e0: &Arc<ConcreteExtension>, ambient: &AmbientExtension, d: &Derivation) -> Result<SdcHandle> {
    let values: Vec<u32> = ambient
        .normal_group()
        .elements()
        .map(|i| {
            e0.pair(&d.eval(i), ambient.normal_element(i))
                .ok_or(Error::NotPartiallySplit("host has no pair coordinates".into()))
        })
        .collect::<Result<_>>()?;
    Ok(PartialSplitting::new(e0.clone(), ambient, values)?.image())
}

/// The derivation `d` with `H = {(d(n), n)}`; `module_n` is `M` restricted to `N`.
pub fn derivation_of_sdc(h: &SdcHandle, ambient: &AmbientExtension, module_n: &Arc<GModule>) -> Result<Derivation> {
    let host = &h.host;
    let s = h.splitting(ambient);
    let mut c = Cochain::zero(module_n.clone(), 1);
    for i in ambient.normal_group().elements() {
        let (m, _) = host
            .coordinates(s.values[i as usize])
            .ok_or(Error::NotPartiallySplit("host has no pair coordinates".into()))?;
        c.set(&[i], &m);
    }
    Derivation::new(c)
}

/// `H₁ + H₂ = {(h₁ + h₂, n) : (h₁, n) ∈ H₁, (h₂, n) ∈ H₂}`
pub fn sdc_sum(a: &SdcHandle, b: &SdcHandle, ambient: &AmbientExtension) -> Result<SdcHandle> {
    let host = &a.host;
    let m = host.module();
    let (sa, sb) = (a.splitting(ambient), b.splitting(ambient));
    let mut values = Vec::with_capacity(sa.values.len());
    for (&x, &y) in sa.values.iter().zip(&sb.values) {
        let (mx, n) = host.coordinates(x).ok_or(Error::NotPartiallySplit("host has no pair coordinates".into()))?;
        let (my, _) = host.coordinates(y).ok_or(Error::NotPartiallySplit("host has no pair coordinates".into()))?;
        values.push(host.pair(&m.add(&mx, &my), n).expect("pair coordinates"));
    }
    Ok(PartialSplitting::new(host.clone(), ambient, values)?.image())
}

/// The complements `ˣH` for `x` running over a section of `E → Q`, and whether all
/// of them are equivalent to `H`.
#[derive(Debug, Clone)]
pub struct QActionReport {
    pub images: Vec<SdcHandle>,
    pub is_invariant: bool,
}

/// `Q`-action on the class of `H` through conjugation in the host.
pub fn q_action_and_invariance(h: &SdcHandle, ambient: &AmbientExtension) -> QActionReport {
    let sigma = canonical_section(&h.host);
    let mut images = Vec::with_capacity(ambient.quotient().order());
    for q in ambient.quotient().elements() {
        images.push(h.conjugate(sigma[ambient.alpha(q) as usize]));
    }
    // E is generated by i(M), which preserves classes, and σ(G); σ(N) preserves the class of H
    // up to i(M) because σ(n) and s(n) differ by an element of i(M).
    let is_invariant = images.iter().all(|x| x.equivalent(h));
    QActionReport { images, is_invariant }
}

/// Whether the class of `d` is fixed by `Q` (derivation route).
pub fn is_invariant_derivation(
    ambient: &AmbientExtension,
    module: &GModule,
    h1n: &CohomologyGroup,
    d: &Cochain,
) -> Result<bool> {
    let c = h1n.class_of(d)?;
    for q in ambient.quotient().elements() {
        if h1n.class_of(&twist(ambient, module, d, ambient.alpha(q)))? != c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The extension `0 → M^N → N_E(H)/H → Q → 1` read off through the
/// minimal-index section, as a cocycle with values in `M^N`.
///
/// `fixed` is `M^N` inside the canonical coordinates of `M`, `fixed_q` the same
/// group as a `Q`-module. Checks `i(M) ∩ N_E(H) = i(M^N)` on the way.
pub fn omega(h: &SdcHandle, ambient: &AmbientExtension, fixed: &Subgroup, fixed_q: &Arc<GModule>) -> Result<Cochain> {
    let host = &h.host;
    let e = host.group();
    let p = host.projection();
    let norm = normalizer(&h.subgroup);

    let mut covered = vec![false; ambient.group().order()];
    for &x in norm.elements() {
        covered[p.apply(x) as usize] = true;
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::InvariantViolation);
    }

    let m = host.module();
    let count = m.element_count().ok_or(Error::InfiniteModule)?;
    for i in 0..count {
        let v = m.element(i);
        if norm.contains(host.embed(&v)) != fixed.contains(&v) {
            return Err(Error::Consistency("i(M) ∩ N_E(H) differs from i(M^N)".into()));
        }
    }

    let q = ambient.quotient();
    let mut rep = vec![u32::MAX; q.order()];
    for &x in norm.elements() {
        let c = ambient.pi(p.apply(x)) as usize;
        if rep[c] == u32::MAX {
            rep[c] = x;
        }
    }
    let over_n = h.splitting(ambient);
    let mut failure = None;
    let f = Cochain::from_fn(fixed_q.clone(), 2, |t| {
        let x = e.mul(e.mul(rep[t[0] as usize], rep[t[1] as usize]), e.inv(rep[q.mul(t[0], t[1]) as usize]));
        let n = p.apply(x);
        let hn = over_n.values[ambient.normal_index(n) as usize];
        let v = host.kernel_element(e.mul(x, e.inv(hn))).expect("lies over the identity");
        fixed.coords_of(&v).unwrap_or_else(|| {
            failure = Some(Error::Consistency("factor set leaves M^N".into()));
            fixed_q.zero()
        })
    });
    match failure {
        Some(err) => Err(err),
        None => Ok(f),
    }
}

/// Whether some complement of `G` in `M ⋊ G` (a derivation `G → M`) restricts to `d` on `N`.
pub fn extends_to_full_complement(ambient: &AmbientExtension, module: &Arc<GModule>, d: &Derivation) -> Result<bool> {
    let der = derivation_groups(module)?.der;
    let count = der.presentation().element_count().ok_or(Error::InfiniteModule)?;
    for idx in 0..count {
        let y = der.presentation().element_from_index(idx);
        let values = der.include(&y);
        let full = Cochain::from_values(module.clone(), 1, values)?;
        if ambient.normal_group().elements().all(|i| full.get(&[ambient.normal_element(i)]) == d.eval(i)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All partial complements with invariant class, grouped by their class in `H¹(N, M)`.
///
/// When several inequivalent invariant complements exist each class is listed;
/// no preferred complement is chosen.
pub fn invariant_complements(
    module_n: &Arc<GModule>,
    h1n: &CohomologyGroup,
    qmod: &InducedQModule,
) -> Result<BTreeMap<CohomologyClass, Vec<Derivation>>> {
    let der = derivation_groups(module_n)?.der;
    let count = der.presentation().element_count().ok_or(Error::InfiniteModule)?;
    let mut out: BTreeMap<CohomologyClass, Vec<Derivation>> = BTreeMap::new();
    let qs: Vec<u32> = qmod.module().group().elements().collect();
    for idx in 0..count {
        let values = der.include(&der.presentation().element_from_index(idx));
        let d = Derivation::new(Cochain::from_values(module_n.clone(), 1, values)?)?;
        let c = h1n.class_of(d.cochain())?;
        if qs.iter().all(|&q| qmod.act(q, &c) == c) {
            out.entry(c).or_default().push(d);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use crate::cohomology::cohomology_group;
    use crate::extension::semidirect_product;
    use crate::group::FiniteGroup;
    use crate::matrix::bigs;

    struct Setup {
        amb: AmbientExtension,
        m: Arc<GModule>,
        mn: Arc<GModule>,
        e0: Arc<ConcreteExtension>,
    }

    fn setup(g: FiniteGroup, gens: &[u32], t: u64) -> Setup {
        let g = Arc::new(g);
        let amb = AmbientExtension::from_generators(&g, gens).unwrap();
        let m = Arc::new(GModule::trivial(g.clone(), FgAbelianGroup::cyclic(t)));
        let mn = Arc::new(m.restrict(amb.normal()).unwrap().1);
        let e0 = Arc::new(semidirect_product(&m).unwrap());
        Setup { amb, m, mn, e0 }
    }

    fn iso_derivation(s: &Setup) -> Derivation {
        // N = Z_2 = {0, x}: d(x) = 1
        let mut c = Cochain::zero(s.mn.clone(), 1);
        c.set(&[1], &bigs(&[1]));
        Derivation::new(c).unwrap()
    }

    #[test]
    fn zero_derivation_gives_h0_and_round_trips() {
        let s = setup(FiniteGroup::cyclic(4), &[2], 2);
        let h0 = sdc_of_derivation(&s.e0, &s.amb, &Derivation::zero(s.mn.clone())).unwrap();
        let expected: Vec<u32> =
            s.amb.normal().elements().iter().map(|&n| s.e0.pair(&bigs(&[0]), n).unwrap()).collect();
        assert_eq!(h0.subgroup().elements(), &expected[..]);
        let d = iso_derivation(&s);
        let h = sdc_of_derivation(&s.e0, &s.amb, &d).unwrap();
        assert_eq!(derivation_of_sdc(&h, &s.amb, &s.mn).unwrap(), d);
    }

    #[test]
    fn sum_of_complements_matches_sum_of_derivations() {
        let s = setup(FiniteGroup::cyclic(4), &[2], 2);
        let d = iso_derivation(&s);
        let z = Derivation::zero(s.mn.clone());
        for (a, b) in [(&d, &d), (&d, &z), (&z, &z)] {
            let ha = sdc_of_derivation(&s.e0, &s.amb, a).unwrap();
            let hb = sdc_of_derivation(&s.e0, &s.amb, b).unwrap();
            let sum = sdc_sum(&ha, &hb, &s.amb).unwrap();
            assert_eq!(derivation_of_sdc(&sum, &s.amb, &s.mn).unwrap(), a.add(b));
        }
    }

    #[test]
    fn omega_of_isomorphism_on_cyclic_tower() {
        let s = setup(FiniteGroup::cyclic(4), &[2], 2);
        let fixed = s.m.invariants_under(s.amb.normal().elements()).unwrap();
        let fixed_q = Arc::new(s.m.submodule_over(&fixed, s.amb.quotient().clone(), s.amb.section()).unwrap());
        let h2q = cohomology_group(&fixed_q, 2).unwrap();
        let h = sdc_of_derivation(&s.e0, &s.amb, &iso_derivation(&s)).unwrap();
        assert!(q_action_and_invariance(&h, &s.amb).is_invariant);
        let f = omega(&h, &s.amb, &fixed, &fixed_q).unwrap();
        assert!(!h2q.class_of(&f).unwrap().is_zero());
        let h0 = sdc_of_derivation(&s.e0, &s.amb, &Derivation::zero(s.mn.clone())).unwrap();
        assert!(h2q.class_of(&omega(&h0, &s.amb, &fixed, &fixed_q).unwrap()).unwrap().is_zero());
        assert!(extends_to_full_complement(&s.amb, &s.m, &Derivation::zero(s.mn.clone())).unwrap());
        assert!(!extends_to_full_complement(&s.amb, &s.m, &iso_derivation(&s)).unwrap());
    }

    #[test]
    fn non_invariant_complement_is_rejected() {
        // S_3 over A_3 with M = Z_3 trivial: nonzero homs A_3 → Z_3 are negated by a transposition
        let g = Arc::new(FiniteGroup::symmetric3());
        let amb = AmbientExtension::from_generators(&g, &[1]).unwrap();
        let m = Arc::new(GModule::trivial(g.clone(), FgAbelianGroup::cyclic(3)));
        let mn = Arc::new(m.restrict(amb.normal()).unwrap().1);
        let e0 = Arc::new(semidirect_product(&m).unwrap());
        let d = Derivation::new(Cochain::from_fn(mn.clone(), 1, |t| bigs(&[t[0] as i64]))).unwrap();
        let h = sdc_of_derivation(&e0, &amb, &d).unwrap();
        assert!(!q_action_and_invariance(&h, &amb).is_invariant);
        let fixed = m.invariants_under(amb.normal().elements()).unwrap();
        let fixed_q = Arc::new(m.submodule_over(&fixed, amb.quotient().clone(), amb.section()).unwrap());
        assert_eq!(omega(&h, &amb, &fixed, &fixed_q).unwrap_err(), Error::InvariantViolation);
    }
}
