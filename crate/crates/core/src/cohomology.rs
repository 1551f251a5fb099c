//! `Hⁿ(G, M)` for `n ≤ 3` with class membership and coboundary witnesses.
//!
//! Cocycles are found by [`kernel_mod`] on the sparse coboundary rows. The
//! quotient by coboundaries is presented through an echelon basis over
//! `[cochain coordinates | generator coefficients]`: reducing `[z; 0]` clears
//! the cochain part and leaves minus the coefficients of `z` in terms of the
//! chosen generating cocycles.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock};

use crate::abelian::FgAbelianGroup;
use crate::cochain::{coboundary_columns, coboundary_rows, tuple_count, Cochain, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::int::{from_big_vec, to_big_vec, Ck};
use crate::lattice::{kernel_mod, Echelon};
use crate::matrix::IntMatrix;
use crate::module::GModule;

/// Size budget for coboundary matrices, counted as `rows × columns`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_cells: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cells: 30_000_000 }
    }
}

impl Limits {
    pub fn check(&self, module: &GModule, degree: usize) -> Result<()> {
        let needed = cells(module, degree);
        if needed > self.max_cells {
            return Err(Error::SizeBudgetExceeded { needed, budget: self.max_cells });
        }
        Ok(())
    }
}

/// Size of the coboundary matrix leaving degree `k`.
pub fn cells(module: &GModule, k: usize) -> u128 {
    let n = module.group().order();
    let r = module.rank() as u128;
    tuple_count(n, k + 1) as u128 * r * tuple_count(n, k) as u128 * r
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomologyClass {
    pub coords: Vec<BigInt>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

#[derive(Debug)]
struct Engine<T> {
    ncoords: usize,
    ext: Echelon<T>,
    witness: Echelon<T>,
    w: Vec<Vec<T>>,
}

fn coordinate_moduli<T: crate::int::Int>(module: &GModule, k: usize) -> Ck<Vec<T>> {
    let n = module.group().order();
    let t: Vec<T> = module.torsion().iter().map(T::from_big).collect::<Ck<_>>()?;
    Ok((0..tuple_count(n, k)).flat_map(|_| t.iter().cloned()).collect())
}

impl<T: crate::int::Int> Engine<T> {
    fn build(module: &GModule, k: usize) -> Ck<Self> {
        let col_mod = coordinate_moduli::<T>(module, k)?;
        let prev_mod = coordinate_moduli::<T>(module, k - 1)?;
        let ncoords = col_mod.len();
        let nprev = prev_mod.len();
        let rows = coboundary_rows::<T>(module, k)?;
        let cocycles = kernel_mod(&rows, &col_mod)?;
        drop(rows);
        let bcols = coboundary_columns::<T>(module, k - 1)?;

        let mut head = Echelon::new(col_mod.clone());
        for b in &bcols {
            head.insert(b.clone())?;
        }
        let mut w = Vec::new();
        for z in cocycles {
            if head.insert(z.clone())? {
                w.push(z);
            }
        }
        drop(head);

        let nw = w.len();
        let mut ext_mod = col_mod.clone();
        ext_mod.extend(std::iter::repeat_n(T::zero(), nw));
        let mut ext = Echelon::new(ext_mod);
        for b in &bcols {
            let mut v = b.clone();
            v.extend(std::iter::repeat_n(T::zero(), nw));
            ext.insert(v)?;
        }
        for (i, z) in w.iter().enumerate() {
            let mut v = z.clone();
            v.extend(std::iter::repeat_n(T::zero(), nw));
            v[ncoords + i] = T::one();
            ext.insert(v)?;
        }

        let mut wit_mod = col_mod;
        wit_mod.extend(prev_mod);
        let mut witness = Echelon::new(wit_mod);
        for (j, b) in bcols.into_iter().enumerate() {
            let mut v = b;
            v.extend(std::iter::repeat_n(T::zero(), nprev));
            v[ncoords + j] = T::one();
            witness.insert(v)?;
        }
        Ok(Engine { ncoords, ext, witness, w })
    }

    fn relations(&self) -> Vec<Vec<BigInt>> {
        self.ext.pivots_from(self.ncoords).map(|v| to_big_vec(&v[self.ncoords..])).collect()
    }

    fn reduce_ext(&self, z: &[BigInt]) -> Ck<Vec<BigInt>> {
        let mut v: Vec<T> = from_big_vec(z)?;
        v.extend(std::iter::repeat_n(T::zero(), self.w.len()));
        Ok(to_big_vec(&self.ext.reduce(&v)?))
    }

    fn reduce_witness(&self, z: &[BigInt]) -> Ck<Vec<BigInt>> {
        let mut v: Vec<T> = from_big_vec(z)?;
        v.extend(std::iter::repeat_n(T::zero(), self.witness.dim() - self.ncoords));
        Ok(to_big_vec(&self.witness.reduce(&v)?))
    }
}

#[derive(Debug)]
enum Engines {
    Word { word: Engine<i64>, big: OnceLock<Engine<BigInt>> },
    Big(Engine<BigInt>),
}

/// Presentation of `Hⁿ(G, M)` with generating cocycles and a class solver.
#[derive(Debug)]
pub struct CohomologyGroup {
    degree: usize,
    module: Arc<GModule>,
    presentation: FgAbelianGroup,
    generators: Vec<Cochain>,
    engines: Engines,
}

pub fn cohomology_group(module: &Arc<GModule>, degree: usize) -> Result<CohomologyGroup> {
    cohomology_group_with_limits(module, degree, &Limits::default())
}

pub fn cohomology_group_with_limits(module: &Arc<GModule>, degree: usize, limits: &Limits) -> Result<CohomologyGroup> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(degree));
    }
    limits.check(module, degree)?;
    let engines = match Engine::<i64>::build(module, degree) {
        Ok(word) => Engines::Word { word, big: OnceLock::new() },
        Err(_) => Engines::Big(Engine::build(module, degree).expect("BigInt arithmetic cannot overflow")),
    };
    let (relations, w): (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) = match &engines {
        Engines::Word { word, .. } => (word.relations(), word.w.iter().map(|v| to_big_vec(v)).collect()),
        Engines::Big(e) => (e.relations(), e.w.clone()),
    };
    let presentation = FgAbelianGroup::new(w.len(), IntMatrix::from_rows(w.len(), &relations)?)?;
    let mut h = CohomologyGroup { degree, module: module.clone(), presentation, generators: Vec::new(), engines };
    let ncoords = h.ncoords();
    let rank = h.presentation.rank();
    let mut generators = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut e = vec![BigInt::zero(); rank];
        e[i] = BigInt::one();
        let y = h.presentation.from_canonical(&e);
        let mut z = vec![BigInt::zero(); ncoords];
        for (c, wv) in y.iter().zip(&w) {
            if !c.is_zero() {
                for (zi, wi) in z.iter_mut().zip(wv) {
                    *zi += c * wi;
                }
            }
        }
        let reduced = h.reduce_witness(&z);
        generators.push(Cochain::from_values(module.clone(), degree, reduced[..ncoords].to_vec())?);
    }
    h.generators = generators;
    Ok(h)
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    /// Presentation on the chosen generating cocycles.
    pub fn presentation(&self) -> &FgAbelianGroup {
        &self.presentation
    }

    /// Invariant factors (canonical coordinate moduli, `0` = free summand).
    pub fn invariants(&self) -> &[BigInt] {
        self.presentation.invariants()
    }

    pub fn rank(&self) -> usize {
        self.presentation.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation.is_trivial()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.presentation.order()
    }

    /// One cocycle per canonical coordinate.
    pub fn generator_cocycles(&self) -> &[Cochain] {
        &self.generators
    }

    fn ncoords(&self) -> usize {
        match &self.engines {
            Engines::Word { word, .. } => word.ncoords,
            Engines::Big(e) => e.ncoords,
        }
    }

    fn big_engine(&self) -> &Engine<BigInt> {
        match &self.engines {
            Engines::Big(e) => e,
            Engines::Word { big, .. } => {
                big.get_or_init(|| Engine::build(&self.module, self.degree).expect("BigInt arithmetic cannot overflow"))
            }
        }
    }

    fn reduce_ext(&self, z: &[BigInt]) -> Vec<BigInt> {
        if let Engines::Word { word, .. } = &self.engines {
            if let Ok(r) = word.reduce_ext(z) {
                return r;
            }
        }
        self.big_engine().reduce_ext(z).expect("BigInt arithmetic cannot overflow")
    }

    fn reduce_witness(&self, z: &[BigInt]) -> Vec<BigInt> {
        if let Engines::Word { word, .. } = &self.engines {
            if let Ok(r) = word.reduce_witness(z) {
                return r;
            }
        }
        self.big_engine().reduce_witness(z).expect("BigInt arithmetic cannot overflow")
    }

    fn check_cochain(&self, z: &Cochain) -> Result<()> {
        if z.degree() != self.degree {
            return Err(Error::DegreeOutOfRange(z.degree()));
        }
        if !Arc::ptr_eq(z.module(), &self.module) && **z.module() != *self.module {
            return Err(Error::InvalidModule("cochain over a different module".into()));
        }
        if !z.is_cocycle()? {
            return Err(Error::NotACocycle);
        }
        Ok(())
    }

    /// Class of a cocycle.
    pub fn class_of(&self, z: &Cochain) -> Result<CohomologyClass> {
        self.check_cochain(z)?;
        self.class_of_unchecked(z)
    }

    /// Class of a cochain already known to be a cocycle.
    pub fn class_of_unchecked(&self, z: &Cochain) -> Result<CohomologyClass> {
        let n = self.ncoords();
        let red = self.reduce_ext(z.values());
        if red[..n].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACocycle);
        }
        let y: Vec<BigInt> = red[n..].iter().map(|x| -x).collect();
        Ok(CohomologyClass { coords: self.presentation.canonical(&y) })
    }

    /// `Some(u)` with `δu = z` when `z` is a coboundary.
    pub fn is_coboundary(&self, z: &Cochain) -> Result<Option<Cochain>> {
        self.check_cochain(z)?;
        let n = self.ncoords();
        let red = self.reduce_witness(z.values());
        if red[..n].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let u: Vec<BigInt> = red[n..].iter().map(|x| -x).collect();
        Ok(Some(Cochain::from_values(self.module.clone(), self.degree - 1, u)?))
    }

    /// Cocycle `Σ coordsᵢ · generatorᵢ`, reduced modulo coboundaries.
    pub fn representative(&self, class: &CohomologyClass) -> Cochain {
        let mut z = Cochain::zero(self.module.clone(), self.degree);
        for (c, g) in class.coords.iter().zip(&self.generators) {
            if !c.is_zero() {
                z = z.add(&g.scale(c));
            }
        }
        let reduced = self.reduce_witness(z.values());
        Cochain::from_values(self.module.clone(), self.degree, reduced[..self.ncoords()].to_vec()).expect("same shape")
    }

    pub fn zero_class(&self) -> CohomologyClass {
        CohomologyClass { coords: vec![BigInt::zero(); self.rank()] }
    }

    /// Canonical generator `i`.
    pub fn basis_class(&self, i: usize) -> CohomologyClass {
        let mut c = self.zero_class();
        c.coords[i] = BigInt::one();
        c
    }

    pub fn reduce_class(&self, coords: &[BigInt]) -> CohomologyClass {
        CohomologyClass { coords: self.presentation.reduce_canonical(coords) }
    }

    pub fn add(&self, a: &CohomologyClass, b: &CohomologyClass) -> CohomologyClass {
        let s: Vec<BigInt> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.reduce_class(&s)
    }

    pub fn neg(&self, a: &CohomologyClass) -> CohomologyClass {
        let s: Vec<BigInt> = a.coords.iter().map(|x| -x).collect();
        self.reduce_class(&s)
    }

    /// Every element when the group is finite (index order of the canonical enumeration).
    pub fn elements(&self) -> Option<Vec<CohomologyClass>> {
        let count = self.presentation.element_count()?;
        Some((0..count).map(|i| CohomologyClass { coords: self.presentation.element_from_index(i) }).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::matrix::bigs;

    fn trivial(n: usize, base: FgAbelianGroup) -> Arc<GModule> {
        Arc::new(GModule::trivial(Arc::new(FiniteGroup::cyclic(n)), base))
    }

    #[test]
    fn h1_cyclic_with_z() {
        for n in [2, 3] {
            let h = cohomology_group(&trivial(n, FgAbelianGroup::free(1)), 1).unwrap();
            assert!(h.is_trivial());
        }
    }

    #[test]
    fn h2_z2_with_z2() {
        let m = trivial(2, FgAbelianGroup::cyclic(2));
        let h = cohomology_group(&m, 2).unwrap();
        assert_eq!(h.invariants(), &bigs(&[2])[..]);
        // factor set of Z_4 over Z_2 with transversal {0, 1}: f(1,1) = 1
        let mut f = Cochain::zero(m.clone(), 2);
        f.set(&[1, 1], &bigs(&[1]));
        assert_eq!(h.class_of(&f).unwrap().coords, bigs(&[1]));
        assert!(h.is_coboundary(&f).unwrap().is_none());
    }

    #[test]
    fn trivial_group() {
        let m = trivial(1, FgAbelianGroup::cyclic(5));
        for k in 1..=3 {
            assert!(cohomology_group(&m, k).unwrap().is_trivial());
        }
    }

    #[test]
    fn zero_cochain_has_zero_class_and_witness() {
        let m = trivial(4, FgAbelianGroup::cyclic(2));
        let h = cohomology_group(&m, 2).unwrap();
        let z = Cochain::zero(m, 2);
        assert!(h.class_of(&z).unwrap().is_zero());
        assert!(h.is_coboundary(&z).unwrap().unwrap().is_zero());
    }

    #[test]
    fn coboundary_witness_is_exact() {
        let m = trivial(4, FgAbelianGroup::free(1));
        let h = cohomology_group(&m, 2).unwrap();
        assert_eq!(h.invariants(), &bigs(&[4])[..]);
        let u = Cochain::from_fn(m.clone(), 1, |t| bigs(&[t[0] as i64 * 7 - 5]));
        let du = u.coboundary().unwrap();
        let w = h.is_coboundary(&du).unwrap().unwrap();
        assert_eq!(w.coboundary().unwrap(), du);
    }

    #[test]
    fn generators_are_cocycles_and_classify_to_basis() {
        let m = trivial(4, FgAbelianGroup::cyclic(2));
        for k in 1..=3 {
            let h = cohomology_group(&m, k).unwrap();
            assert_eq!(h.invariants(), &bigs(&[2])[..]);
            for (i, g) in h.generator_cocycles().iter().enumerate() {
                assert!(g.is_cocycle().unwrap());
                assert_eq!(h.class_of(g).unwrap(), h.basis_class(i));
            }
        }
    }

    #[test]
    fn budget_exceeded() {
        let m = trivial(30, FgAbelianGroup::cyclic(2));
        let err = cohomology_group_with_limits(&m, 3, &Limits { max_cells: 1000 }).unwrap_err();
        assert!(matches!(err, Error::SizeBudgetExceeded { .. }));
    }
}
