//! Finitely generated abelian groups with an action of a finite group.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::VecDeque;
use std::sync::Arc;

use crate::abelian::{is_well_defined, reduce_rows, reduce_vec, FgAbelianGroup, Subgroup};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMorphism, SubgroupHandle};
use crate::matrix::IntMatrix;

/// A `G`-module. The action is stored both on the presenting generators and in
/// canonical coordinates; all element-level operations use canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    base: FgAbelianGroup,
    action: Vec<IntMatrix>,
    canon: Vec<IntMatrix>,
}

impl GModule {
    /// Validates a full action table (one matrix per group element, on base generators).
    pub fn new(group: Arc<FiniteGroup>, base: FgAbelianGroup, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let k = base.ngens();
        let moduli = base.invariants().to_vec();
        let mut canon = Vec::with_capacity(action.len());
        for (g, a) in action.iter().enumerate() {
            if a.rows() != k || a.cols() != k {
                return Err(Error::DimensionMismatch(format!("action matrix of element {g}")));
            }
            for i in 0..base.relations().rows() {
                let img = a.mul_vec(base.relations().row(i))?;
                if !base.is_zero(&img) {
                    return Err(Error::InvalidModule(format!("element {g} does not preserve relation {i}")));
                }
            }
            let c = base.to_canon_matrix().mul(a)?.mul(base.from_canon_matrix())?;
            canon.push(reduce_rows(&c, &moduli));
        }
        let m = GModule { group, base, action, canon };
        m.check_action()?;
        Ok(m)
    }

    fn check_action(&self) -> Result<()> {
        let r = self.rank();
        let id = reduce_rows(&IntMatrix::identity(r), self.torsion());
        if self.canon[0] != id {
            return Err(Error::ActionNotHomomorphic("identity does not act trivially".into()));
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                let prod = self.canon[g as usize].mul(&self.canon[h as usize])?;
                if reduce_rows(&prod, self.torsion()) != self.canon[gh as usize] {
                    return Err(Error::ActionNotHomomorphic(format!("g·(h·m) ≠ (gh)·m for g={g}, h={h}")));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>, base: FgAbelianGroup) -> Self {
        let k = base.ngens();
        let action = vec![IntMatrix::identity(k); group.order()];
        Self::new(group, base, action).expect("trivial action")
    }

    /// Extends an action given on generators of the group to the whole group.
    ///
    /// The listed elements must generate the group. Fails with
    /// `ActionNotHomomorphic` when the matrices do not define an action.
    pub fn from_generators(group: Arc<FiniteGroup>, base: FgAbelianGroup, gens: &[(u32, IntMatrix)]) -> Result<Self> {
        let k = base.ngens();
        let mut table: Vec<Option<IntMatrix>> = vec![None; group.order()];
        table[0] = Some(IntMatrix::identity(k));
        let mut queue = VecDeque::from([0u32]);
        let reduce = |m: &IntMatrix| -> Vec<Vec<BigInt>> {
            // compare actions through their effect on canonical coordinates
            let c = base.to_canon_matrix().mul(m).and_then(|c| c.mul(base.from_canon_matrix()));
            reduce_rows(&c.expect("square"), base.invariants()).row_vecs()
        };
        while let Some(x) = queue.pop_front() {
            let mx = table[x as usize].clone().expect("visited");
            for (s, ms) in gens {
                if ms.rows() != k || ms.cols() != k {
                    return Err(Error::DimensionMismatch(format!("action matrix of generator {s}")));
                }
                let y = group.mul(x, *s);
                let my = mx.mul(ms)?;
                match &table[y as usize] {
                    None => {
                        table[y as usize] = Some(my);
                        queue.push_back(y);
                    }
                    Some(prev) => {
                        if reduce(prev) != reduce(&my) {
                            return Err(Error::ActionNotHomomorphic(format!(
                                "generator matrices give two actions for element {y}"
                            )));
                        }
                    }
                }
            }
        }
        let action = table
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidModule("listed elements do not generate the group".into()))?;
        Self::new(group, base, action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn base(&self) -> &FgAbelianGroup {
        &self.base
    }

    pub fn action_on_generators(&self, g: u32) -> &IntMatrix {
        &self.action[g as usize]
    }

    /// Action matrix of `g` in canonical coordinates.
    pub fn canonical_action(&self, g: u32) -> &IntMatrix {
        &self.canon[g as usize]
    }

    /// Number of canonical coordinates.
    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// Modulus of each canonical coordinate (0 = free).
    pub fn torsion(&self) -> &[BigInt] {
        self.base.invariants()
    }

    pub fn is_finite(&self) -> bool {
        self.base.is_finite()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.base.order()
    }

    pub fn element_count(&self) -> Option<usize> {
        self.base.element_count()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        reduce_vec(x, self.torsion())
    }

    pub fn act(&self, g: u32, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.canon[g as usize].mul_vec(x).expect("canonical coordinates");
        self.reduce(&y)
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, c: &BigInt, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| c * a).collect();
        self.reduce(&s)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// Canonical coordinates of the element with the given enumeration index.
    pub fn element(&self, idx: usize) -> Vec<BigInt> {
        self.base.element_from_index(idx)
    }

    pub fn element_index(&self, x: &[BigInt]) -> usize {
        self.base.index_of_canonical(&self.reduce(x))
    }

    /// Same module viewed over `φ.src` through `φ`.
    pub fn pullback(&self, phi: &GroupMorphism) -> Result<GModule> {
        if *phi.dst != *self.group {
            return Err(Error::InvalidMorphism("pullback along a morphism into another group".into()));
        }
        let action = phi.image.iter().map(|&x| self.action[x as usize].clone()).collect();
        GModule::new(phi.src.clone(), self.base.clone(), action)
    }

    /// Restriction to a subgroup, viewed as a module over the subgroup as a group.
    pub fn restrict(&self, h: &SubgroupHandle) -> Result<(Arc<FiniteGroup>, GModule)> {
        let (hg, incl) = h.to_group();
        Ok((hg, self.pullback(&incl)?))
    }

    /// The same module on its canonical generators.
    pub fn canonical_module(&self) -> GModule {
        GModule {
            group: self.group.clone(),
            base: self.base.canonical_group(),
            action: self.canon.clone(),
            canon: self.canon.clone(),
        }
    }

    pub fn has_trivial_action(&self) -> bool {
        self.canon.iter().all(|c| *c == self.canon[0])
    }

    /// Fixed points of the elements of `h`, as a subgroup of canonical coordinates.
    pub fn invariants_under(&self, h: &[u32]) -> Result<Subgroup> {
        let r = self.rank();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut moduli: Vec<BigInt> = Vec::new();
        for &x in h {
            let c = &self.canon[x as usize];
            for i in 0..r {
                let mut row = c.row(i).to_vec();
                row[i] -= BigInt::one();
                rows.push(row);
                moduli.push(self.torsion()[i].clone());
            }
        }
        if rows.is_empty() {
            return Ok(Subgroup::whole(self.torsion()));
        }
        let a = IntMatrix::from_rows(r, &rows)?;
        Subgroup::kernel(self.torsion(), &a, &moduli)
    }

    /// Module structure on a subgroup that is stable under the action of
    /// `group` through `lift : group → self.group` (elements of `group` act as their lifts).
    pub fn submodule_over(&self, sub: &Subgroup, group: Arc<FiniteGroup>, lift: &[u32]) -> Result<GModule> {
        let k = sub.presentation().rank();
        let base = sub.presentation().canonical_group();
        let mut action = Vec::with_capacity(group.order());
        for q in group.elements() {
            let g = lift[q as usize];
            let mut cols = Vec::with_capacity(k);
            for i in 0..k {
                let mut e = vec![BigInt::zero(); k];
                e[i] = BigInt::one();
                let img = self.act(g, &sub.include(&e));
                cols.push(sub.coords_of(&img).ok_or(Error::NotInSubgroup)?);
            }
            action.push(IntMatrix::from_cols(k, &cols)?);
        }
        GModule::new(group, base, action)
    }
}

/// `G`-equivariant homomorphism between modules, in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    pub src: Arc<GModule>,
    pub dst: Arc<GModule>,
    pub matrix: IntMatrix,
}

impl ModuleMorphism {
    pub fn new(src: Arc<GModule>, dst: Arc<GModule>, matrix: IntMatrix) -> Result<Self> {
        if *src.group() != *dst.group() {
            return Err(Error::NotModuleMorphism("modules over different groups".into()));
        }
        if matrix.rows() != dst.rank() || matrix.cols() != src.rank() {
            return Err(Error::NotModuleMorphism("matrix has the wrong shape".into()));
        }
        if !is_well_defined(src.torsion(), &matrix, dst.torsion()) {
            return Err(Error::NotModuleMorphism("torsion is not respected".into()));
        }
        let matrix = reduce_rows(&matrix, dst.torsion());
        for g in src.group().elements() {
            let a = matrix.mul(src.canonical_action(g))?;
            let b = dst.canonical_action(g).mul(&matrix)?;
            if reduce_rows(&a, dst.torsion()) != reduce_rows(&b, dst.torsion()) {
                return Err(Error::NotModuleMorphism(format!("not equivariant for element {g}")));
            }
        }
        Ok(ModuleMorphism { src, dst, matrix })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.dst.reduce(&self.matrix.mul_vec(x).expect("canonical coordinates"))
    }

    pub fn identity(m: &Arc<GModule>) -> Self {
        ModuleMorphism {
            src: m.clone(),
            dst: m.clone(),
            matrix: reduce_rows(&IntMatrix::identity(m.rank()), m.torsion()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::bigs;

    fn sign_z(g: Arc<FiniteGroup>, gen: u32) -> GModule {
        GModule::from_generators(g, FgAbelianGroup::free(1), &[(gen, IntMatrix::from_i64_rows(&[vec![-1]]))]).unwrap()
    }

    #[test]
    fn sign_action_has_no_invariants() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let m = sign_z(z2, 1);
        assert!(m.invariants_under(&[0, 1]).unwrap().is_trivial());
        assert_eq!(m.act(1, &bigs(&[3])), bigs(&[-3]));
    }

    #[test]
    fn swap_action_invariants_are_diagonal() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let swap = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        let m = GModule::from_generators(z2, FgAbelianGroup::free(2), &[(1, swap)]).unwrap();
        let inv = m.invariants_under(&[1]).unwrap();
        assert_eq!(inv.invariants(), &bigs(&[0])[..]);
        assert!(inv.contains(&bigs(&[5, 5])));
        assert!(!inv.contains(&bigs(&[1, 0])));
    }

    #[test]
    fn inconsistent_generators_rejected() {
        // generator of Z_2 acting by 2 on Z is not invertible
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let r = GModule::from_generators(z2, FgAbelianGroup::free(1), &[(1, IntMatrix::from_i64_rows(&[vec![2]]))]);
        assert!(r.is_err());
        // generator of Z_3 acting by -1 on Z does not define an action
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let r = GModule::from_generators(z3, FgAbelianGroup::free(1), &[(1, IntMatrix::from_i64_rows(&[vec![-1]]))]);
        assert!(r.is_err());
    }

    #[test]
    fn torsion_action_in_canonical_coordinates() {
        // Z_9 with generator of Z_3 acting by 4
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let m = GModule::from_generators(z3, FgAbelianGroup::cyclic(9), &[(1, IntMatrix::from_i64_rows(&[vec![4]]))])
            .unwrap();
        assert_eq!(m.act(2, &bigs(&[1])), bigs(&[7]));
        let fixed = m.invariants_under(&[1]).unwrap();
        assert_eq!(fixed.invariants(), &bigs(&[3])[..]);
    }

    #[test]
    fn morphism_checks() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let a = Arc::new(GModule::trivial(z2.clone(), FgAbelianGroup::cyclic(4)));
        let b = Arc::new(GModule::trivial(z2.clone(), FgAbelianGroup::cyclic(2)));
        assert!(ModuleMorphism::new(a.clone(), b.clone(), IntMatrix::from_i64_rows(&[vec![1]])).is_ok());
        assert!(ModuleMorphism::new(b.clone(), a.clone(), IntMatrix::from_i64_rows(&[vec![1]])).is_err());
        assert!(ModuleMorphism::new(b, a, IntMatrix::from_i64_rows(&[vec![2]])).is_ok());
        let s = Arc::new(sign_z(z2.clone(), 1));
        let t = Arc::new(GModule::trivial(z2, FgAbelianGroup::free(1)));
        assert!(ModuleMorphism::new(s, t, IntMatrix::from_i64_rows(&[vec![1]])).is_err());
    }
}
