//! Finitely generated abelian groups given by generators and relations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;
use crate::solve::{modulus_relations, solve_modular_linear};

/// `Z^ngens / rowspace(relations)` with a cached canonical form.
///
/// Canonical coordinates are taken with respect to the invariant factors that
/// differ from 1: coordinate `i` lives in `Z / invariants[i]` (`0` meaning `Z`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgAbelianGroup {
    ngens: usize,
    relations: IntMatrix,
    invariants: Vec<BigInt>,
    to_canon: IntMatrix,
    from_canon: IntMatrix,
}

impl FgAbelianGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != ngens {
            return Err(Error::DimensionMismatch(format!(
                "relations with {} columns for {ngens} generators",
                relations.cols()
            )));
        }
        let d = smith_normal_form(&relations);
        let factor = |i: usize| d.invariant_factors.get(i).cloned().unwrap_or_else(BigInt::zero);
        let keep: Vec<usize> = (0..ngens).filter(|&i| !factor(i).is_one()).collect();
        let invariants = keep.iter().map(|&i| factor(i)).collect();
        let mut to_canon = IntMatrix::zeros(keep.len(), ngens);
        let mut from_canon = IntMatrix::zeros(ngens, keep.len());
        for (k, &i) in keep.iter().enumerate() {
            for j in 0..ngens {
                to_canon.set(k, j, d.v.get(j, i).clone());
                from_canon.set(j, k, d.v_inv.get(i, j).clone());
            }
        }
        Ok(FgAbelianGroup { ngens, relations, invariants, to_canon, from_canon })
    }

    /// `Z/t₀ ⊕ Z/t₁ ⊕ …` on the given generators, `0` meaning a free summand.
    pub fn diagonal(moduli: &[BigInt]) -> Self {
        let rows: Vec<Vec<BigInt>> = moduli
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(i, t)| {
                let mut r = vec![BigInt::zero(); moduli.len()];
                r[i] = t.abs();
                r
            })
            .collect();
        let rel = IntMatrix::from_rows(moduli.len(), &rows).expect("consistent shape");
        Self::new(moduli.len(), rel).expect("consistent shape")
    }

    pub fn free(rank: usize) -> Self {
        Self::diagonal(&vec![BigInt::zero(); rank])
    }

    pub fn cyclic(n: u64) -> Self {
        Self::diagonal(&[BigInt::from(n)])
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Invariant factors different from 1, in divisibility order, zeros last.
    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    /// Number of canonical coordinates.
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|t| t.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|t| !t.is_zero()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariants.iter().product())
    }

    /// Canonical coordinates of an element given in generator coordinates.
    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.to_canon.mul_vec(x).expect("generator coordinates");
        self.reduce_canonical(&y)
    }

    pub fn reduce_canonical(&self, y: &[BigInt]) -> Vec<BigInt> {
        y.iter().zip(&self.invariants).map(|(v, t)| if t.is_zero() { v.clone() } else { v.mod_floor(t) }).collect()
    }

    /// Generator coordinates of an element given canonically.
    pub fn from_canonical(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.from_canon.mul_vec(y).expect("canonical coordinates")
    }

    pub fn to_canon_matrix(&self) -> &IntMatrix {
        &self.to_canon
    }

    pub fn from_canon_matrix(&self) -> &IntMatrix {
        &self.from_canon
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.canonical(x).iter().all(Zero::is_zero)
    }

    pub fn equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// The same group on its canonical generators.
    pub fn canonical_group(&self) -> FgAbelianGroup {
        let k = self.invariants.len();
        let rows: Vec<Vec<BigInt>> = self
            .invariants
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(i, t)| {
                let mut r = vec![BigInt::zero(); k];
                r[i] = t.clone();
                r
            })
            .collect();
        FgAbelianGroup {
            ngens: k,
            relations: IntMatrix::from_rows(k, &rows).expect("consistent shape"),
            invariants: self.invariants.clone(),
            to_canon: IntMatrix::identity(k),
            from_canon: IntMatrix::identity(k),
        }
    }

    /// Number of elements as a `usize`, if finite and small enough.
    pub fn element_count(&self) -> Option<usize> {
        self.order()?.to_usize()
    }

    /// Canonical coordinates of the element with the given index (mixed radix,
    /// first coordinate fastest).
    pub fn element_from_index(&self, mut idx: usize) -> Vec<BigInt> {
        self.invariants
            .iter()
            .map(|t| {
                let t = t.to_usize().expect("finite group");
                let c = idx % t;
                idx /= t;
                BigInt::from(c)
            })
            .collect()
    }

    /// Index of an element given by reduced canonical coordinates.
    pub fn index_of_canonical(&self, y: &[BigInt]) -> usize {
        let mut idx = 0usize;
        for (c, t) in y.iter().zip(&self.invariants).rev() {
            let t = t.to_usize().expect("finite group");
            idx = idx * t + c.mod_floor(&BigInt::from(t)).to_usize().expect("reduced");
        }
        idx
    }

    /// Presents a finite abelian group given by a multiplication table.
    ///
    /// Returns the presentation and the generator coordinates of every element.
    pub fn from_finite_abelian(g: &FiniteGroup) -> Result<(FgAbelianGroup, Vec<Vec<BigInt>>)> {
        let n = g.order();
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if g.mul(a, b) != g.mul(b, a) {
                    return Err(Error::InvalidGroup("group is not abelian".into()));
                }
            }
        }
        let mut gens: Vec<u32> = Vec::new();
        let mut span = vec![false; n];
        span[0] = true;
        for x in 0..n as u32 {
            if !span[x as usize] {
                gens.push(x);
                let closure = crate::group::subgroup_closure(g, &gens);
                for e in closure.elements() {
                    span[*e as usize] = true;
                }
            }
        }
        let k = gens.len();
        let mut coords: Vec<Option<Vec<BigInt>>> = vec![None; n];
        coords[0] = Some(vec![BigInt::zero(); k]);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let cx = coords[x as usize].clone().expect("visited");
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if coords[y as usize].is_none() {
                    let mut cy = cx.clone();
                    cy[i] += 1;
                    coords[y as usize] = Some(cy);
                    queue.push_back(y);
                }
            }
        }
        let coords: Vec<Vec<BigInt>> = coords.into_iter().map(|c| c.expect("generated")).collect();
        let mut rels: Vec<Vec<BigInt>> = Vec::new();
        let mut seen: HashMap<Vec<BigInt>, ()> = HashMap::new();
        for x in 0..n {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x as u32, s) as usize;
                let mut r: Vec<BigInt> = coords[x].iter().zip(&coords[y]).map(|(a, b)| a - b).collect();
                r[i] += 1;
                if r.iter().any(|v| !v.is_zero()) && seen.insert(r.clone(), ()).is_none() {
                    rels.push(r);
                }
            }
        }
        let group = FgAbelianGroup::new(k, IntMatrix::from_rows(k, &rels)?)?;
        Ok((group, coords))
    }
}

/// Homomorphism between presented abelian groups, in generator coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianMorphism {
    pub src: FgAbelianGroup,
    pub dst: FgAbelianGroup,
    /// `dst.ngens × src.ngens`
    pub matrix: IntMatrix,
}

impl AbelianMorphism {
    pub fn new(src: FgAbelianGroup, dst: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != dst.ngens() || matrix.cols() != src.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix between groups on {} and {} generators",
                matrix.rows(),
                matrix.cols(),
                src.ngens(),
                dst.ngens()
            )));
        }
        for i in 0..src.relations().rows() {
            let img = matrix.mul_vec(src.relations().row(i))?;
            if !dst.is_zero(&img) {
                return Err(Error::InvalidMorphism(format!("relation {i} is not respected")));
            }
        }
        Ok(AbelianMorphism { src, dst, matrix })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x).expect("generator coordinates")
    }

    /// The same map in canonical coordinates of both groups.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let m = self
            .dst
            .to_canon_matrix()
            .mul(&self.matrix)
            .and_then(|m| m.mul(self.src.from_canon_matrix()))
            .expect("consistent shapes");
        reduce_rows(&m, self.dst.invariants())
    }
}

/// Reduces row `i` of `m` modulo `moduli[i]` (no reduction where the modulus is 0).
pub fn reduce_rows(m: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    let mut out = m.clone();
    for (i, t) in moduli.iter().enumerate() {
        if !t.is_zero() {
            for x in out.row_mut(i) {
                *x = x.mod_floor(t);
            }
        }
    }
    out
}

pub fn reduce_vec(v: &[BigInt], moduli: &[BigInt]) -> Vec<BigInt> {
    v.iter().zip(moduli).map(|(x, t)| if t.is_zero() { x.clone() } else { x.mod_floor(t) }).collect()
}

/// Subgroup of `⊕ Z/tᵢ` (coordinates with the given moduli) spanned by `gens`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    moduli: Vec<BigInt>,
    gens: Vec<Vec<BigInt>>,
    presentation: FgAbelianGroup,
}

impl Subgroup {
    pub fn generated(moduli: &[BigInt], gens: Vec<Vec<BigInt>>) -> Result<Self> {
        let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| reduce_vec(g, moduli)).collect();
        let k = gens.len();
        let a = IntMatrix::from_cols(moduli.len(), &gens)?;
        let rel = modulus_relations(moduli);
        let sol = solve_modular_linear(&a, &rel, &vec![BigInt::zero(); moduli.len()])?
            .expect("homogeneous systems are solvable");
        let presentation = FgAbelianGroup::new(k, IntMatrix::from_rows(k, &sol.kernel)?)?;
        Ok(Subgroup { moduli: moduli.to_vec(), gens, presentation })
    }

    /// Image of the map with canonical matrix `f` into a group with `moduli`.
    pub fn image(moduli: &[BigInt], f: &IntMatrix) -> Result<Self> {
        Self::generated(moduli, f.col_vecs())
    }

    /// Kernel of `f : ⊕ Z/sⱼ → ⊕ Z/tᵢ` given in canonical coordinates.
    pub fn kernel(src_moduli: &[BigInt], f: &IntMatrix, dst_moduli: &[BigInt]) -> Result<Self> {
        if f.cols() != src_moduli.len() || f.rows() != dst_moduli.len() {
            return Err(Error::DimensionMismatch("kernel of a map with the wrong shape".into()));
        }
        let sol = solve_modular_linear(f, &modulus_relations(dst_moduli), &vec![BigInt::zero(); f.rows()])?
            .expect("homogeneous systems are solvable");
        Self::generated(src_moduli, sol.kernel)
    }

    pub fn whole(moduli: &[BigInt]) -> Self {
        let gens = (0..moduli.len())
            .map(|i| {
                let mut e = vec![BigInt::zero(); moduli.len()];
                e[i] = BigInt::one();
                e
            })
            .collect();
        Self::generated(moduli, gens).expect("consistent shape")
    }

    pub fn ambient_moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn gens(&self) -> &[Vec<BigInt>] {
        &self.gens
    }

    pub fn presentation(&self) -> &FgAbelianGroup {
        &self.presentation
    }

    /// Invariant factors of the subgroup as an abstract group.
    pub fn invariants(&self) -> &[BigInt] {
        self.presentation.invariants()
    }

    /// Ambient coordinates of the element with the given subgroup canonical coordinates.
    pub fn include(&self, y: &[BigInt]) -> Vec<BigInt> {
        let x = self.presentation.from_canonical(y);
        let mut v = vec![BigInt::zero(); self.moduli.len()];
        for (c, g) in x.iter().zip(&self.gens) {
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += c * gi;
            }
        }
        reduce_vec(&v, &self.moduli)
    }

    /// Matrix of the inclusion from subgroup canonical coordinates to ambient coordinates.
    pub fn inclusion_matrix(&self) -> IntMatrix {
        let k = self.presentation.rank();
        let cols: Vec<Vec<BigInt>> = (0..k)
            .map(|i| {
                let mut e = vec![BigInt::zero(); k];
                e[i] = BigInt::one();
                self.include(&e)
            })
            .collect();
        IntMatrix::from_cols(self.moduli.len(), &cols).expect("consistent shape")
    }

    /// Subgroup canonical coordinates of an ambient element, if it lies in the subgroup.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let a = IntMatrix::from_cols(self.moduli.len(), &self.gens).expect("consistent shape");
        let sol = solve_modular_linear(&a, &modulus_relations(&self.moduli), v).expect("consistent shape")?;
        Some(self.presentation.canonical(&sol.particular))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.contains_subgroup(other) && other.contains_subgroup(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation.is_trivial()
    }
}

/// Checks that `f` (canonical coordinates) maps `⊕ Z/sⱼ` into `⊕ Z/tᵢ` well-definedly.
pub fn is_well_defined(src_moduli: &[BigInt], f: &IntMatrix, dst_moduli: &[BigInt]) -> bool {
    (0..src_moduli.len()).all(|j| {
        let col: Vec<BigInt> = (0..f.rows()).map(|i| f.get(i, j) * &src_moduli[j]).collect();
        reduce_vec(&col, dst_moduli).iter().all(Zero::is_zero)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::bigs;

    #[test]
    fn canonical_form_of_z2_z3() {
        let g = FgAbelianGroup::diagonal(&bigs(&[2, 3]));
        assert_eq!(g.invariants(), &bigs(&[6])[..]);
        assert_eq!(g.order(), Some(BigInt::from(6)));
        assert!(!g.is_zero(&bigs(&[1, 1])));
        assert!(g.is_zero(&bigs(&[2, 3])));
        assert!(g.equal(&bigs(&[1, 0]), &bigs(&[3, 3])));
    }

    #[test]
    fn presentation_with_redundant_relations() {
        // <a,b | 2a + 4b, 4a + 2b> ≅ Z_2 ⊕ Z_6
        let g = FgAbelianGroup::new(2, IntMatrix::from_i64_rows(&[vec![2, 4], vec![4, 2]])).unwrap();
        assert_eq!(g.invariants(), &bigs(&[2, 6])[..]);
        for idx in 0..12 {
            let y = g.element_from_index(idx);
            assert_eq!(g.index_of_canonical(&y), idx);
            let x = g.from_canonical(&y);
            assert_eq!(g.canonical(&x), y);
        }
    }

    #[test]
    fn free_and_trivial() {
        let z = FgAbelianGroup::free(2);
        assert_eq!(z.order(), None);
        assert_eq!(z.free_rank(), 2);
        assert!(FgAbelianGroup::trivial().is_trivial());
        let t = FgAbelianGroup::new(1, IntMatrix::from_i64_rows(&[vec![1]])).unwrap();
        assert!(t.is_trivial());
    }

    #[test]
    fn subgroup_kernel_and_image() {
        // multiplication by 2 on Z_4
        let m = bigs(&[4]);
        let f = IntMatrix::from_i64_rows(&[vec![2]]);
        let k = Subgroup::kernel(&m, &f, &m).unwrap();
        let i = Subgroup::image(&m, &f).unwrap();
        assert_eq!(k.invariants(), &bigs(&[2])[..]);
        assert!(k.same_as(&i));
        assert_eq!(k.coords_of(&bigs(&[2])), Some(bigs(&[1])));
        assert_eq!(k.coords_of(&bigs(&[1])), None);
        assert_eq!(k.include(&bigs(&[1])), bigs(&[2]));
    }

    #[test]
    fn morphism_respects_relations() {
        let z4 = FgAbelianGroup::cyclic(4);
        let z2 = FgAbelianGroup::cyclic(2);
        assert!(AbelianMorphism::new(z4.clone(), z2.clone(), IntMatrix::from_i64_rows(&[vec![1]])).is_ok());
        assert!(AbelianMorphism::new(z2, z4, IntMatrix::from_i64_rows(&[vec![1]])).is_err());
    }

    #[test]
    fn canonical_group_uses_identity_coordinates() {
        let g = FgAbelianGroup::new(2, IntMatrix::from_i64_rows(&[vec![2, 4], vec![4, 2]])).unwrap();
        let c = g.canonical_group();
        assert_eq!(c.invariants(), g.invariants());
        assert_eq!(c.canonical(&bigs(&[3, 7])), bigs(&[1, 1]));
        let fresh = FgAbelianGroup::new(2, c.relations().clone()).unwrap();
        assert_eq!(fresh.invariants(), c.invariants());
    }
}
