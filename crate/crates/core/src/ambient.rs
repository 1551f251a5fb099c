//! A group extension `1 → N → G → Q → 1` with its canonical transversal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{quotient_with_transversal, FiniteGroup, GroupMorphism, SubgroupHandle};

/// `G` with a normal subgroup `N`, the quotient `Q = G/N`, the projection `π`,
/// the minimal-index section `α` and its factor set `f_α(q,q') = α(q)α(q')α(qq')⁻¹ ∈ N`.
#[derive(Debug, Clone)]
pub struct AmbientExtension {
    group: Arc<FiniteGroup>,
    normal: SubgroupHandle,
    normal_group: Arc<FiniteGroup>,
    inclusion: GroupMorphism,
    quotient: Arc<FiniteGroup>,
    projection: GroupMorphism,
    section: Vec<u32>,
    factor_set: Vec<u32>,
}

impl AmbientExtension {
    pub fn new(normal: SubgroupHandle) -> Result<Self> {
        let (quotient, projection, section) = quotient_with_transversal(&normal)?;
        let group = normal.parent().clone();
        let (normal_group, inclusion) = normal.to_group();
        let k = quotient.order();
        let mut factor_set = vec![0u32; k * k];
        for a in quotient.elements() {
            for b in quotient.elements() {
                let ab = quotient.mul(a, b);
                let x = group.mul(group.mul(section[a as usize], section[b as usize]), group.inv(section[ab as usize]));
                if !normal.contains(x) {
                    return Err(Error::Consistency("factor set leaves the normal subgroup".into()));
                }
                factor_set[a as usize * k + b as usize] = x;
            }
        }
        Ok(AmbientExtension { group, normal, normal_group, inclusion, quotient, projection, section, factor_set })
    }

    /// Extension given by a normal subgroup listed by its generators.
    pub fn from_generators(group: &Arc<FiniteGroup>, gens: &[u32]) -> Result<Self> {
        Self::new(crate::group::closure(group, gens))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn normal(&self) -> &SubgroupHandle {
        &self.normal
    }

    /// `N` as a group in its own right; element `i` is `normal().elements()[i]`.
    pub fn normal_group(&self) -> &Arc<FiniteGroup> {
        &self.normal_group
    }

    pub fn inclusion(&self) -> &GroupMorphism {
        &self.inclusion
    }

    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        &self.quotient
    }

    pub fn projection(&self) -> &GroupMorphism {
        &self.projection
    }

    pub fn section(&self) -> &[u32] {
        &self.section
    }

    #[inline]
    pub fn alpha(&self, q: u32) -> u32 {
        self.section[q as usize]
    }

    #[inline]
    pub fn pi(&self, g: u32) -> u32 {
        self.projection.apply(g)
    }

    /// `f_α(q, q')` as an element of `G`.
    #[inline]
    pub fn f_alpha(&self, q: u32, q2: u32) -> u32 {
        self.factor_set[q as usize * self.quotient.order() + q2 as usize]
    }

    /// Index in [`Self::normal_group`] of an element of `N`.
    pub fn normal_index(&self, x: u32) -> u32 {
        self.normal.position(x).expect("element of the normal subgroup") as u32
    }

    /// Element of `G` for an index of [`Self::normal_group`].
    #[inline]
    pub fn normal_element(&self, i: u32) -> u32 {
        self.normal.elements()[i as usize]
    }

    /// `g⁻¹ n g` for `n` given as an index of the normal group; result also an index.
    pub fn conjugate_back(&self, g: u32, n: u32) -> u32 {
        let x = self.group.conj(self.group.inv(g), self.normal_element(n));
        self.normal_index(x)
    }

    /// True when the section is a homomorphism, i.e. the extension splits along `α`.
    pub fn section_is_homomorphism(&self) -> bool {
        self.factor_set.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_over_z2() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let e = AmbientExtension::from_generators(&g, &[2]).unwrap();
        assert_eq!(e.quotient().order(), 2);
        assert_eq!(e.section(), &[0, 1]);
        assert_eq!(e.f_alpha(1, 1), 2);
        assert!(!e.section_is_homomorphism());
    }

    #[test]
    fn section_and_factor_set_relation() {
        let g = Arc::new(FiniteGroup::heisenberg(3));
        let e = AmbientExtension::new(crate::group::center(&g)).unwrap();
        let q = e.quotient();
        for a in q.elements() {
            for b in q.elements() {
                let lhs = g.mul(e.alpha(a), e.alpha(b));
                let rhs = g.mul(e.f_alpha(a, b), e.alpha(q.mul(a, b)));
                assert_eq!(lhs, rhs);
                assert_eq!(e.pi(lhs), q.mul(a, b));
            }
        }
    }

    #[test]
    fn dihedral_rotations_split() {
        let g = Arc::new(FiniteGroup::dihedral(4));
        let e = AmbientExtension::from_generators(&g, &[1]).unwrap();
        assert_eq!(e.normal().order(), 4);
        assert!(e.section_is_homomorphism());
    }
}
