//! Normalized bar-resolution cochains.
//!
//! A degree-`k` cochain stores one module element for every `k`-tuple of
//! non-identity group elements; tuples containing the identity are zero.
//! Tuple `(g₁,…,g_k)` has index `Σ (gᵢ−1)·(|G|−1)^(k−i)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::int::Ck;
use crate::lattice::SparseRow;
use crate::module::GModule;

pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    module: Arc<GModule>,
    degree: usize,
    values: Vec<BigInt>,
}

/// Number of normalized `k`-tuples for a group of order `n`.
pub fn tuple_count(n: usize, k: usize) -> usize {
    (n - 1).pow(k as u32)
}

/// Index of a tuple of non-identity elements.
pub fn tuple_index(n: usize, args: &[u32]) -> Option<usize> {
    let mut idx = 0usize;
    for &g in args {
        if g == 0 {
            return None;
        }
        idx = idx * (n - 1) + (g as usize - 1);
    }
    Some(idx)
}

/// Tuple with the given index.
pub fn tuple_at(n: usize, k: usize, mut idx: usize) -> Vec<u32> {
    let mut t = vec![0u32; k];
    for slot in t.iter_mut().rev() {
        *slot = (idx % (n - 1)) as u32 + 1;
        idx /= n - 1;
    }
    t
}

/// All normalized `k`-tuples in index order.
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..tuple_count(n, k)).map(move |i| tuple_at(n, k, i))
}

impl Cochain {
    pub fn zero(module: Arc<GModule>, degree: usize) -> Self {
        let n = module.group().order();
        let len = tuple_count(n, degree) * module.rank();
        Cochain { module, degree, values: vec![BigInt::zero(); len] }
    }

    /// Builds a cochain by evaluating `f` on every non-identity tuple.
    pub fn from_fn(module: Arc<GModule>, degree: usize, mut f: impl FnMut(&[u32]) -> Vec<BigInt>) -> Self {
        let n = module.group().order();
        let r = module.rank();
        let mut values = Vec::with_capacity(tuple_count(n, degree) * r);
        for t in tuples(n, degree) {
            let v = f(&t);
            assert_eq!(v.len(), r, "value of the wrong length");
            values.extend(module.reduce(&v));
        }
        Cochain { module, degree, values }
    }

    /// Builds a cochain from its flat coordinate vector.
    pub fn from_values(module: Arc<GModule>, degree: usize, values: Vec<BigInt>) -> Result<Self> {
        let n = module.group().order();
        let r = module.rank();
        if values.len() != tuple_count(n, degree) * r {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a degree-{degree} cochain with {} coordinates",
                values.len(),
                tuple_count(n, degree) * r
            )));
        }
        let values = values.chunks(r.max(1)).flat_map(|c| module.reduce(c)).collect();
        Ok(Cochain { module, degree, values })
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn group_order(&self) -> usize {
        self.module.group().order()
    }

    /// Value at a tuple; zero if any argument is the identity.
    pub fn get(&self, args: &[u32]) -> Vec<BigInt> {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        let r = self.module.rank();
        match tuple_index(self.group_order(), args) {
            Some(i) => self.values[i * r..(i + 1) * r].to_vec(),
            None => self.module.zero(),
        }
    }

    /// Sets a value; panics when asked to store a nonzero value at a tuple containing the identity.
    pub fn set(&mut self, args: &[u32], v: &[BigInt]) {
        let r = self.module.rank();
        let v = self.module.reduce(v);
        match tuple_index(self.group_order(), args) {
            Some(i) => self.values[i * r..(i + 1) * r].clone_from_slice(&v),
            None => assert!(v.iter().all(Zero::is_zero), "normalized cochains vanish on the identity"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Cochain) {
        assert_eq!(self.degree, other.degree, "cochains of different degree");
        assert!(
            Arc::ptr_eq(&self.module, &other.module) || self.module == other.module,
            "cochains with different modules"
        );
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_same(other);
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.check_same(other);
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &BigInt) -> Cochain {
        let values = self.values.iter().map(|v| c * v).collect();
        Cochain::from_values(self.module.clone(), self.degree, values).expect("same shape")
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-BigInt::one())
    }

    fn combine(&self, other: &Cochain, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Cochain {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect();
        Cochain::from_values(self.module.clone(), self.degree, values).expect("same shape")
    }

    /// Same values viewed in another (equal) module handle.
    pub fn with_module(&self, module: Arc<GModule>) -> Cochain {
        assert_eq!(*module, *self.module);
        Cochain { module, degree: self.degree, values: self.values.clone() }
    }

    /// Bar-resolution coboundary.
    pub fn coboundary(&self) -> Result<Cochain> {
        let k = self.degree;
        if k >= MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(k + 1));
        }
        let g = self.module.group().clone();
        let m = &self.module;
        Ok(Cochain::from_fn(m.clone(), k + 1, |t| {
            let mut acc = m.act(t[0], &self.get(&t[1..]));
            let mut merged = Vec::with_capacity(k);
            for i in 1..=k {
                merged.clear();
                merged.extend_from_slice(&t[..i - 1]);
                merged.push(g.mul(t[i - 1], t[i]));
                merged.extend_from_slice(&t[i + 1..]);
                let v = self.get(&merged);
                acc = if i % 2 == 0 { m.add(&acc, &v) } else { m.sub(&acc, &v) };
            }
            let last = self.get(&t[..k]);
            if (k + 1).is_multiple_of(2) {
                m.add(&acc, &last)
            } else {
                m.sub(&acc, &last)
            }
        }))
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        if self.degree == MAX_DEGREE {
            return Ok(self.is_cocycle_top());
        }
        Ok(self.coboundary()?.is_zero())
    }

    /// Cocycle identity in the top degree, evaluated directly on 4-tuples.
    fn is_cocycle_top(&self) -> bool {
        let g = self.module.group();
        let m = &self.module;
        let n = g.order();
        for t in tuples(n, 4) {
            let mut acc = m.act(t[0], &self.get(&t[1..]));
            acc = m.sub(&acc, &self.get(&[g.mul(t[0], t[1]), t[2], t[3]]));
            acc = m.add(&acc, &self.get(&[t[0], g.mul(t[1], t[2]), t[3]]));
            acc = m.sub(&acc, &self.get(&[t[0], t[1], g.mul(t[2], t[3])]));
            acc = m.add(&acc, &self.get(&t[..3]));
            if !m.is_zero_element(&acc) {
                return false;
            }
        }
        true
    }

    /// Precomposition with a group morphism into this cochain's group.
    pub fn pullback(&self, phi: &crate::group::GroupMorphism, module: Arc<GModule>) -> Cochain {
        assert_eq!(*phi.dst, **self.module.group());
        assert_eq!(module.rank(), self.module.rank());
        Cochain::from_fn(module, self.degree, |t| {
            let img: Vec<u32> = t.iter().map(|&x| phi.apply(x)).collect();
            self.get(&img)
        })
    }

    /// Applies a linear map to every value (canonical coordinates), landing in `module`.
    pub fn map_values(&self, module: Arc<GModule>, f: impl Fn(&[BigInt]) -> Vec<BigInt>) -> Cochain {
        assert_eq!(**module.group(), **self.module.group());
        Cochain::from_fn(module, self.degree, |t| f(&self.get(t)))
    }
}

/// Sparse rows of the coboundary `δᵏ : Cᵏ → Cᵏ⁺¹` in coordinate order.
pub fn coboundary_rows<T: crate::int::Int>(module: &GModule, k: usize) -> Ck<Vec<SparseRow<T>>> {
    let g = module.group();
    let n = g.order();
    let r = module.rank();
    let torsion: Vec<T> = module.torsion().iter().map(T::from_big).collect::<Ck<_>>()?;
    let actions: Vec<Vec<Vec<T>>> = g
        .elements()
        .map(|x| {
            let c = module.canonical_action(x);
            (0..r).map(|i| c.row(i).iter().map(T::from_big).collect::<Ck<Vec<T>>>()).collect::<Ck<_>>()
        })
        .collect::<Ck<_>>()?;
    let mut rows = Vec::with_capacity(tuple_count(n, k + 1) * r);
    let mut merged = Vec::with_capacity(k);
    for t in tuples(n, k + 1) {
        for i in 0..r {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            let mut add = |col: usize, v: T| -> Ck<()> {
                let e = acc.entry(col).or_insert_with(T::zero);
                *e = e.add(&v)?;
                Ok(())
            };
            let base = tuple_index(n, &t[1..]).expect("non-identity tuple") * r;
            for (j, a) in actions[t[0] as usize][i].iter().enumerate() {
                if !a.is_zero() {
                    add(base + j, a.clone())?;
                }
            }
            for p in 1..=k {
                merged.clear();
                merged.extend_from_slice(&t[..p - 1]);
                merged.push(g.mul(t[p - 1], t[p]));
                merged.extend_from_slice(&t[p + 1..]);
                if let Some(idx) = tuple_index(n, &merged) {
                    let s = if p % 2 == 0 { T::one() } else { T::one().neg()? };
                    add(idx * r + i, s)?;
                }
            }
            let idx = tuple_index(n, &t[..k]).expect("non-identity tuple");
            let s = if (k + 1).is_multiple_of(2) { T::one() } else { T::one().neg()? };
            add(idx * r + i, s)?;
            let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            rows.push(SparseRow { entries, modulus: torsion[i].clone() });
        }
    }
    Ok(rows)
}

/// Dense columns of `δᵏ`, one per coordinate of `Cᵏ`.
pub fn coboundary_columns<T: crate::int::Int>(module: &GModule, k: usize) -> Ck<Vec<Vec<T>>> {
    let n = module.group().order();
    let r = module.rank();
    let rows = coboundary_rows::<T>(module, k)?;
    let mut cols = vec![vec![T::zero(); rows.len()]; tuple_count(n, k) * r];
    for (ri, row) in rows.iter().enumerate() {
        for (c, v) in &row.entries {
            cols[*c][ri] = v.clone();
        }
    }
    Ok(cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use crate::group::FiniteGroup;
    use crate::matrix::{bigs, IntMatrix};

    fn trivial_z(n: usize) -> Arc<GModule> {
        Arc::new(GModule::trivial(Arc::new(FiniteGroup::cyclic(n)), FgAbelianGroup::free(1)))
    }

    #[test]
    fn tuple_indexing_round_trip() {
        for i in 0..tuple_count(4, 3) {
            let t = tuple_at(4, 3, i);
            assert_eq!(tuple_index(4, &t), Some(i));
        }
        assert_eq!(tuple_index(4, &[1, 0]), None);
    }

    #[test]
    fn degree_one_formula() {
        let m = trivial_z(2);
        let mut u = Cochain::zero(m, 1);
        u.set(&[1], &bigs(&[1]));
        let du = u.coboundary().unwrap();
        assert_eq!(du.get(&[1, 1]), bigs(&[2]));
    }

    #[test]
    fn degree_zero_trivial_action() {
        let m = trivial_z(3);
        let mut x = Cochain::zero(m, 0);
        x.set(&[], &bigs(&[5]));
        assert!(x.coboundary().unwrap().is_zero());
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let m = Arc::new(
            GModule::from_generators(
                g,
                FgAbelianGroup::free(1),
                &[(3, IntMatrix::from_i64_rows(&[vec![-1]])), (1, IntMatrix::from_i64_rows(&[vec![1]]))],
            )
            .unwrap(),
        );
        for k in 0..2 {
            let mut c = 0i64;
            let u = Cochain::from_fn(m.clone(), k, |_| {
                c += 3;
                bigs(&[c % 7 - 3])
            });
            assert!(u.coboundary().unwrap().coboundary().unwrap().is_zero());
        }
        let f = Cochain::from_fn(m.clone(), 2, |t| bigs(&[(t[0] * 3 + t[1]) as i64 % 5]));
        assert!(f.coboundary().unwrap().is_cocycle().unwrap());
    }

    #[test]
    fn sparse_rows_match_direct_evaluation() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let m = Arc::new(
            GModule::from_generators(g, FgAbelianGroup::cyclic(5), &[(1, IntMatrix::from_i64_rows(&[vec![2]]))])
                .unwrap(),
        );
        for k in 0..3 {
            let u = Cochain::from_fn(m.clone(), k, |t| bigs(&[t.iter().map(|&x| x as i64).sum::<i64>() + 1]));
            let du = u.coboundary().unwrap();
            let rows = coboundary_rows::<i64>(&m, k).unwrap();
            for (i, row) in rows.iter().enumerate() {
                let s: BigInt = row.entries.iter().map(|(c, a)| BigInt::from(*a) * &u.values()[*c]).sum();
                let s = num_integer::Integer::mod_floor(&s, &BigInt::from(5));
                assert_eq!(s, du.values()[i]);
            }
        }
    }
}
