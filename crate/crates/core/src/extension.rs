//! Extensions `0 → M → E → G → 1` with finite kernel as concrete groups, and
//! the factor-set calculus: sections, pull-backs, push-outs and normalization
//! over a normal subgroup.

use num_bigint::BigInt;
use std::sync::Arc;

use crate::ambient::AmbientExtension;
use crate::cochain::Cochain;
use crate::cohomology::CohomologyGroup;
use crate::error::{Error, Result};
use crate::group::{quotient_with_transversal, FiniteGroup, GroupMorphism, SubgroupHandle};
use crate::module::{GModule, ModuleMorphism};

/// An extension of `G` by a finite module `M`, realized as a group `E`.
#[derive(Debug, Clone)]
pub struct ConcreteExtension {
    module: Arc<GModule>,
    group: Arc<FiniteGroup>,
    embedding: Vec<u32>,
    kernel_index: Vec<Option<u32>>,
    projection: GroupMorphism,
    /// `σ(g) = (0, g)` for extensions built from a cocycle, so `(m, g) = i(m)·σ(g)`.
    pair_section: Option<Vec<u32>>,
}

impl ConcreteExtension {
    /// Validates `embedding` (module element index → `E`) and `projection : E → G`.
    pub fn new(
        module: Arc<GModule>,
        group: Arc<FiniteGroup>,
        embedding: Vec<u32>,
        projection: GroupMorphism,
    ) -> Result<Self> {
        let count = module.element_count().ok_or(Error::InfiniteModule)?;
        if embedding.len() != count {
            return Err(Error::DimensionMismatch("embedding table has the wrong length".into()));
        }
        if *projection.src != *group || *projection.dst != **module.group() {
            return Err(Error::InvalidMorphism("projection between the wrong groups".into()));
        }
        let mut kernel_index = vec![None; group.order()];
        for (i, &x) in embedding.iter().enumerate() {
            if x as usize >= group.order() || kernel_index[x as usize].is_some() {
                return Err(Error::InvalidMorphism("embedding is not injective".into()));
            }
            kernel_index[x as usize] = Some(i as u32);
        }
        let kernel_size = group.elements().filter(|&x| projection.apply(x) == 0).count();
        if kernel_size != count || embedding.iter().any(|&x| projection.apply(x) != 0) {
            return Err(Error::InvalidMorphism("image of the embedding is not the kernel of the projection".into()));
        }
        if group.order() != count * module.group().order() {
            return Err(Error::InvalidMorphism("projection is not surjective".into()));
        }
        let e = ConcreteExtension { module, group, embedding, kernel_index, projection, pair_section: None };
        e.check_embedding()?;
        Ok(e)
    }

    fn check_embedding(&self) -> Result<()> {
        let m = &self.module;
        let count = self.embedding.len();
        let elems: Vec<Vec<BigInt>> = (0..count).map(|i| m.element(i)).collect();
        for a in 0..count {
            for b in 0..count {
                let s = m.element_index(&m.add(&elems[a], &elems[b]));
                if self.group.mul(self.embedding[a], self.embedding[b]) != self.embedding[s] {
                    return Err(Error::InvalidMorphism("embedding is not a homomorphism".into()));
                }
            }
        }
        for x in self.group.elements() {
            let g = self.projection.apply(x);
            for (&e, v) in self.embedding.iter().zip(&elems) {
                let lhs = self.group.conj(x, e);
                let rhs = self.embedding[m.element_index(&m.act(g, v))];
                if lhs != rhs {
                    return Err(Error::InvalidMorphism("conjugation does not realize the module action".into()));
                }
            }
        }
        Ok(())
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn projection(&self) -> &GroupMorphism {
        &self.projection
    }

    /// `i(m)`
    pub fn embed(&self, m: &[BigInt]) -> u32 {
        self.embedding[self.module.element_index(m)]
    }

    /// `i⁻¹(x)` for `x` in the kernel of the projection.
    pub fn kernel_element(&self, x: u32) -> Option<Vec<BigInt>> {
        self.kernel_index[x as usize].map(|i| self.module.element(i as usize))
    }

    /// `(m, g)` for extensions built from a cocycle.
    pub fn pair(&self, m: &[BigInt], g: u32) -> Option<u32> {
        let s = self.pair_section.as_ref()?;
        Some(self.group.mul(self.embed(m), s[g as usize]))
    }

    /// Coordinates `(m, g)` of `x` for extensions built from a cocycle.
    pub fn coordinates(&self, x: u32) -> Option<(Vec<BigInt>, u32)> {
        let s = self.pair_section.as_ref()?;
        let g = self.projection.apply(x);
        let m = self.kernel_element(self.group.mul(x, self.group.inv(s[g as usize])))?;
        Some((m, g))
    }

    /// The section `g ↦ (0, g)` of an extension built from a cocycle.
    pub fn pair_section(&self) -> Option<&[u32]> {
        self.pair_section.as_deref()
    }
}

/// `E = M ×_f G` with `(m,g)(m',g') = (m + g·m' + f(g,g'), gg')`; `(m, g)` has index `m + |M|·g`.
pub fn extension_from_cocycle(f: &Cochain) -> Result<ConcreteExtension> {
    if f.degree() != 2 || !f.is_cocycle()? {
        return Err(Error::NotACocycle);
    }
    let m = f.module().clone();
    let count = m.element_count().ok_or(Error::InfiniteModule)?;
    let g = m.group().clone();
    let n = g.order();
    let order = count * n;
    let elems: Vec<Vec<BigInt>> = (0..count).map(|i| m.element(i)).collect();
    let values: Vec<Vec<usize>> =
        (0..n as u32).map(|a| (0..n as u32).map(|b| m.element_index(&f.get(&[a, b]))).collect()).collect();
    let acted: Vec<Vec<usize>> =
        (0..n as u32).map(|a| elems.iter().map(|x| m.element_index(&m.act(a, x))).collect()).collect();
    let plus: Vec<Vec<usize>> =
        (0..count).map(|a| (0..count).map(|b| m.element_index(&m.add(&elems[a], &elems[b]))).collect()).collect();
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (ma, ga) = (x % count, x / count);
        for y in 0..order {
            let (mb, gb) = (y % count, y / count);
            let s = plus[plus[ma][acted[ga][mb]]][values[ga][gb]];
            let prod = g.mul(ga as u32, gb as u32) as usize;
            table[x * order + y] = (s + count * prod) as u32;
        }
    }
    let e = Arc::new(FiniteGroup::from_flat(order, table)?);
    let projection = GroupMorphism::new(e.clone(), g.clone(), (0..order).map(|x| (x / count) as u32).collect())?;
    let embedding = (0..count as u32).collect();
    let mut ext = ConcreteExtension::new(m, e, embedding, projection)?;
    ext.pair_section = Some((0..n).map(|x| (x * count) as u32).collect());
    Ok(ext)
}

/// The standard split extension `0 → M → M ⋊ G → G → 1`.
pub fn semidirect_product(module: &Arc<GModule>) -> Result<ConcreteExtension> {
    extension_from_cocycle(&Cochain::zero(module.clone(), 2))
}

/// For every `g`, the smallest element of `E` over `g`.
pub fn canonical_section(e: &ConcreteExtension) -> Vec<u32> {
    let n = e.base().order();
    let mut s = vec![u32::MAX; n];
    for x in e.group.elements() {
        let g = e.projection.apply(x) as usize;
        if s[g] == u32::MAX {
            s[g] = x;
        }
    }
    s
}

/// `σ(g)σ(g') = i(f(g,g'))·σ(gg')`
pub fn factor_set_of_section(e: &ConcreteExtension, sigma: &[u32]) -> Result<Cochain> {
    let g = e.base();
    if sigma.len() != g.order() {
        return Err(Error::SectionInvalid("table has the wrong length".into()));
    }
    if sigma[0] != 0 {
        return Err(Error::SectionInvalid("identity is not sent to the identity".into()));
    }
    if g.elements().any(|x| e.projection.apply(sigma[x as usize]) != x) {
        return Err(Error::SectionInvalid("not a section of the projection".into()));
    }
    let grp = &e.group;
    let mut bad = false;
    let f = Cochain::from_fn(e.module.clone(), 2, |t| {
        let x =
            grp.mul(grp.mul(sigma[t[0] as usize], sigma[t[1] as usize]), grp.inv(sigma[g.mul(t[0], t[1]) as usize]));
        e.kernel_element(x).unwrap_or_else(|| {
            bad = true;
            e.module.zero()
        })
    });
    if bad {
        return Err(Error::Consistency("factor set value outside the kernel".into()));
    }
    Ok(f)
}

/// The factor set of the canonical section.
pub fn extension_class_cocycle(e: &ConcreteExtension) -> Result<Cochain> {
    factor_set_of_section(e, &canonical_section(e))
}

/// Replaces a 2-cocycle whose restriction to `N` is a coboundary by a
/// cohomologous one vanishing on `N × N`.
///
/// The restriction is written as `δu` on `N`; `u` is extended by zero to `G`
/// and `f − δũ` is returned. `h2n` is `H²(N, M)` for the restricted module.
pub fn normalize_partially_split(f: &Cochain, ambient: &AmbientExtension, h2n: &CohomologyGroup) -> Result<Cochain> {
    let restricted = f.pullback(ambient.inclusion(), h2n.module().clone());
    let u = h2n.is_coboundary(&restricted)?.ok_or(Error::NotInKernelOfRestriction)?;
    if u.is_zero() {
        return Ok(f.clone());
    }
    let g = ambient.group();
    let mut ext = Cochain::zero(f.module().clone(), 1);
    for x in g.elements() {
        if let Some(i) = ambient.normal().position(x) {
            ext.set(&[x], &u.get(&[i as u32]));
        }
    }
    Ok(f.sub(&ext.coboundary()?))
}

/// `f ∘ (φ × φ)` over `φ.src`, with the module pulled back along `φ`.
pub fn pull_back_cocycle(f: &Cochain, phi: &GroupMorphism) -> Result<Cochain> {
    let module = Arc::new(f.module().pullback(phi)?);
    Ok(f.pullback(phi, module))
}

/// `P = {(x, g) : p(x) = φ(g)}` as an extension of `φ.src` by the pulled-back module.
pub fn pull_back_extension(e: &ConcreteExtension, phi: &GroupMorphism) -> Result<ConcreteExtension> {
    if *phi.dst != **e.base() {
        return Err(Error::InvalidMorphism("pull-back along a morphism into another group".into()));
    }
    let g = phi.src.clone();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for gx in g.elements() {
        for x in e.group.elements() {
            if e.projection.apply(x) == phi.apply(gx) {
                pairs.push((x, gx));
            }
        }
    }
    // identity first
    pairs.sort_by_key(|&(x, gx)| (gx, x));
    let index: std::collections::HashMap<(u32, u32), u32> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let order = pairs.len();
    let mut table = vec![0u32; order * order];
    for (i, &(x, gx)) in pairs.iter().enumerate() {
        for (j, &(y, gy)) in pairs.iter().enumerate() {
            table[i * order + j] = index[&(e.group.mul(x, y), g.mul(gx, gy))];
        }
    }
    let p = Arc::new(FiniteGroup::from_flat(order, table)?);
    let projection = GroupMorphism::new(p.clone(), g.clone(), pairs.iter().map(|&(_, gx)| gx).collect())?;
    let module = Arc::new(e.module.pullback(phi)?);
    let embedding = e.embedding.iter().map(|&x| index[&(x, 0)]).collect();
    ConcreteExtension::new(module, p, embedding, projection)
}

/// `i₂ ∘ f`
pub fn push_out_cocycle(f: &Cochain, i2: &ModuleMorphism) -> Result<Cochain> {
    if **f.module() != *i2.src {
        return Err(Error::NotModuleMorphism("morphism does not start at the cocycle's module".into()));
    }
    Ok(f.map_values(i2.dst.clone(), |v| i2.apply(v)))
}

/// `(M₂ ⋊ E₁) / {(−i₂(m₁), i₁(m₁))}` as an extension of `G` by `M₂`.
pub fn push_out_extension(e: &ConcreteExtension, i2: &ModuleMorphism) -> Result<ConcreteExtension> {
    if *i2.src != **e.module() {
        return Err(Error::NotModuleMorphism("morphism does not start at the kernel".into()));
    }
    let m2 = i2.dst.clone();
    let c2 = m2.element_count().ok_or(Error::InfiniteModule)?;
    let e1 = &e.group;
    let n1 = e1.order();
    let order = c2 * n1;
    let elems: Vec<Vec<BigInt>> = (0..c2).map(|i| m2.element(i)).collect();
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (ma, ea) = (x % c2, x / c2);
        let g = e.projection.apply(ea as u32);
        for y in 0..order {
            let (mb, eb) = (y % c2, y / c2);
            let s = m2.element_index(&m2.add(&elems[ma], &m2.act(g, &elems[mb])));
            table[x * order + y] = (s + c2 * e1.mul(ea as u32, eb as u32) as usize) as u32;
        }
    }
    let big = Arc::new(FiniteGroup::from_flat(order, table)?);
    let s_elems: Vec<u32> = (0..e.embedding.len())
        .map(|i| {
            let m1 = e.module.element(i);
            let a = m2.element_index(&m2.neg(&i2.apply(&m1)));
            (a + c2 * e.embedding[i] as usize) as u32
        })
        .collect();
    let s = SubgroupHandle::new(big.clone(), s_elems)?;
    let (quot, proj, transversal) = quotient_with_transversal(&s)?;
    let projection = GroupMorphism::new(
        quot.clone(),
        e.base().clone(),
        transversal.iter().map(|&x| e.projection.apply(x / c2 as u32)).collect(),
    )?;
    let embedding = (0..c2).map(|i| proj.apply(i as u32)).collect();
    ConcreteExtension::new(m2, quot, embedding, projection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use crate::cohomology::cohomology_group;
    use crate::group::center;
    use crate::matrix::{bigs, IntMatrix};

    fn z2_trivial(g: Arc<FiniteGroup>) -> Arc<GModule> {
        Arc::new(GModule::trivial(g, FgAbelianGroup::cyclic(2)))
    }

    #[test]
    fn cyclic_cocycle_gives_z4() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = z2_trivial(g);
        let mut f = Cochain::zero(m.clone(), 2);
        f.set(&[1, 1], &bigs(&[1]));
        let e = extension_from_cocycle(&f).unwrap();
        assert_eq!(e.group().order(), 4);
        assert!(e.group().elements().any(|x| e.group().element_order(x) == 4));
        let back = extension_class_cocycle(&e).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn heisenberg_cocycle() {
        let g = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        let m = z2_trivial(g.clone());
        let f = Cochain::from_fn(m.clone(), 2, |t| {
            let (b, a2) = (t[0] / 2, t[1] % 2);
            bigs(&[(b * a2) as i64])
        });
        let e = extension_from_cocycle(&f).unwrap();
        assert!(!e.group().is_abelian());
        assert_eq!(center(e.group()).order(), 2);
    }

    #[test]
    fn semidirect_product_is_split() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = Arc::new(
            GModule::from_generators(g, FgAbelianGroup::cyclic(3), &[(1, IntMatrix::from_i64_rows(&[vec![-1]]))])
                .unwrap(),
        );
        let e = semidirect_product(&m).unwrap();
        assert_eq!(e.group().order(), 6);
        assert!(center(e.group()).order() == 1);
        assert!(extension_class_cocycle(&e).unwrap().is_zero());
    }

    #[test]
    fn pull_back_routes_agree() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let m = z2_trivial(z2.clone());
        let mut f = Cochain::zero(m.clone(), 2);
        f.set(&[1, 1], &bigs(&[1]));
        let e = extension_from_cocycle(&f).unwrap();
        let pi = GroupMorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let concrete = pull_back_extension(&e, &pi).unwrap();
        let cocycle = pull_back_cocycle(&f, &pi).unwrap();
        let h2 = cohomology_group(concrete.module(), 2).unwrap();
        let a = h2.class_of(&extension_class_cocycle(&concrete).unwrap()).unwrap();
        let b = h2.class_of(&cocycle.with_module(concrete.module().clone())).unwrap();
        assert_eq!(a, b);
        // (1, 1) ∈ Z_4 ×_{Z_2} Z_4 has order 4 and lifts the generator, so the pull-back splits
        assert!(a.is_zero());
    }

    #[test]
    fn push_out_routes_agree() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let m1 = z2_trivial(z2.clone());
        let m2 = Arc::new(GModule::trivial(z2.clone(), FgAbelianGroup::cyclic(4)));
        let mut f = Cochain::zero(m1.clone(), 2);
        f.set(&[1, 1], &bigs(&[1]));
        let e = extension_from_cocycle(&f).unwrap();
        let i2 = ModuleMorphism::new(m1.clone(), m2.clone(), IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
        let concrete = push_out_extension(&e, &i2).unwrap();
        let cocycle = push_out_cocycle(&f, &i2).unwrap();
        let h2 = cohomology_group(&m2, 2).unwrap();
        let a = h2.class_of(&extension_class_cocycle(&concrete).unwrap().with_module(m2.clone())).unwrap();
        let b = h2.class_of(&cocycle).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn normalization_vanishes_on_normal_subgroup() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let amb = AmbientExtension::from_generators(&g, &[2]).unwrap();
        let m = z2_trivial(g.clone());
        let (_, mn) = m.restrict(amb.normal()).unwrap();
        let h2n = cohomology_group(&Arc::new(mn), 2).unwrap();
        // f inflated from Z_4 → Z_2 plus a coboundary that is nonzero on N × N
        let mut v = Cochain::zero(m.clone(), 1);
        v.set(&[2], &bigs(&[1]));
        let f = v.coboundary().unwrap();
        let out = normalize_partially_split(&f, &amb, &h2n).unwrap();
        assert!(out.get(&[2, 2]).iter().all(|x| *x == BigInt::from(0)));
        // the carry cocycle of Z_8 → Z_4 restricts to the nonzero class over N
        let mut carry = Cochain::zero(m.clone(), 2);
        for a in 1..4u32 {
            for b in 1..4u32 {
                if a + b >= 4 {
                    carry.set(&[a, b], &bigs(&[1]));
                }
            }
        }
        assert_eq!(normalize_partially_split(&carry, &amb, &h2n), Err(Error::NotInKernelOfRestriction));
    }
}
