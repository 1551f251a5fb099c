//! Integer lattices modulo a diagonal torsion lattice.
//!
//! Coordinates carry a modulus (`0` for a free coordinate). Every lattice here
//! implicitly contains the torsion lattice `T = ⊕ tᵢ·Z·eᵢ`, so vector entries can
//! always be reduced into `[0, tᵢ)` at torsion coordinates.

use crate::int::{axpy, ext_gcd, gcd, reduce_mod, Ck, Int};

/// Row of a sparse integer matrix together with the modulus of its target coordinate.
#[derive(Debug, Clone)]
pub struct SparseRow<T> {
    pub entries: Vec<(usize, T)>,
    pub modulus: T,
}

/// Row echelon basis of a lattice `L ⊇ T`.
///
/// `pivots[i]`, when present, is a basis vector whose first nonzero coordinate
/// is `i`, with a positive leading entry.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    moduli: Vec<T>,
    pivots: Vec<Option<Vec<T>>>,
}

impl<T: Int> Echelon<T> {
    /// The lattice `T` itself.
    pub fn new(moduli: Vec<T>) -> Self {
        let n = moduli.len();
        let pivots = (0..n)
            .map(|i| {
                (!moduli[i].is_zero()).then(|| {
                    let mut v = vec![T::zero(); n];
                    v[i] = moduli[i].clone();
                    v
                })
            })
            .collect();
        Echelon { moduli, pivots }
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[T] {
        &self.moduli
    }

    fn normalize(&self, v: &mut [T], from: usize) -> Ck<()> {
        for (x, m) in v[from..].iter_mut().zip(&self.moduli[from..]) {
            if !m.is_zero() && (x.is_negative() || *x >= *m) {
                *x = x.mod_floor(m)?;
            }
        }
        Ok(())
    }

    /// Adds `v` to the lattice; returns whether the lattice grew.
    pub fn insert(&mut self, mut v: Vec<T>) -> Ck<bool> {
        assert_eq!(v.len(), self.dim());
        self.normalize(&mut v, 0)?;
        let mut grew = false;
        let mut c = 0;
        while let Some(i) = (c..v.len()).find(|&i| !v[i].is_zero()) {
            c = i;
            match self.pivots[c].take() {
                None => {
                    if v[c].is_negative() {
                        for x in v[c..].iter_mut() {
                            *x = x.neg()?;
                        }
                        self.normalize(&mut v, c + 1)?;
                    }
                    self.pivots[c] = Some(v);
                    return Ok(true);
                }
                Some(mut p) => {
                    let a = p[c].clone();
                    let b = v[c].clone();
                    let (g, x, y) = ext_gcd(&a, &b)?;
                    if g == a {
                        // b is a multiple of the pivot entry
                        let q = b.div_floor(&a)?;
                        axpy(&mut v, &q.neg()?, &p, c)?;
                    } else {
                        grew = true;
                        let mut np: Vec<T> = p.iter().map(|e| e.mul(&x)).collect::<Ck<_>>()?;
                        axpy(&mut np, &y, &v, c)?;
                        let bg = b.div_floor(&g)?;
                        let ag = a.div_floor(&g)?;
                        let mut nv: Vec<T> = v.iter().map(|e| e.mul(&ag)?.neg()).collect::<Ck<_>>()?;
                        axpy(&mut nv, &bg, &p, c)?;
                        p = np;
                        v = nv;
                        self.normalize(&mut p, c + 1)?;
                    }
                    self.normalize(&mut v, c)?;
                    self.pivots[c] = Some(p);
                    c += 1;
                }
            }
        }
        Ok(grew)
    }

    /// Canonical representative of `v + L`.
    pub fn reduce(&self, v: &[T]) -> Ck<Vec<T>> {
        let mut v = v.to_vec();
        self.normalize(&mut v, 0)?;
        for c in 0..v.len() {
            if v[c].is_zero() {
                continue;
            }
            if let Some(p) = &self.pivots[c] {
                let q = v[c].div_floor(&p[c])?;
                if !q.is_zero() {
                    axpy(&mut v, &q.neg()?, p, c)?;
                    self.normalize(&mut v, c + 1)?;
                }
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: &[T]) -> Ck<bool> {
        Ok(self.reduce(v)?.iter().all(Int::is_zero))
    }

    /// Basis vectors whose leading coordinate is at least `start`.
    pub fn pivots_from(&self, start: usize) -> impl Iterator<Item = &Vec<T>> {
        self.pivots[start..].iter().flatten()
    }
}

/// Generators (modulo the implicit column torsion) of
/// `{x : row·x ≡ 0 (mod row.modulus) for every row}`.
///
/// Works by incremental column operations on a basis of the solution lattice,
/// so the cost is driven by the number of rows that actually cut it down.
pub fn kernel_mod<T: Int>(rows: &[SparseRow<T>], col_moduli: &[T]) -> Ck<Vec<Vec<T>>> {
    let n = col_moduli.len();
    let mut basis: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            e
        })
        .collect();
    let reduce_col = |v: &mut Vec<T>| -> Ck<()> {
        for (x, m) in v.iter_mut().zip(col_moduli) {
            if !m.is_zero() && !x.is_zero() {
                *x = x.mod_floor(m)?;
            }
        }
        Ok(())
    };
    for row in rows {
        let m = &row.modulus;
        let mut vals: Vec<(usize, T)> = Vec::new();
        for (k, col) in basis.iter().enumerate() {
            let mut s = T::zero();
            for (c, a) in &row.entries {
                let x = &col[*c];
                if !x.is_zero() {
                    s = s.add(&a.mul(x)?)?;
                }
            }
            let s = reduce_mod(&s, m)?;
            if !s.is_zero() {
                vals.push((k, s));
            }
        }
        if vals.is_empty() {
            continue;
        }
        while vals.len() > 1 {
            let (pi, _) = vals
                .iter()
                .enumerate()
                .min_by_key(|(_, (_, v))| v.abs().unwrap_or_else(|_| v.clone()))
                .expect("nonempty");
            let (pk, pv) = vals[pi].clone();
            let pcol = basis[pk].clone();
            for (idx, (k, v)) in vals.iter_mut().enumerate() {
                if idx == pi {
                    continue;
                }
                let q = v.div_floor(&pv)?;
                *v = v.sub(&q.mul(&pv)?)?;
                axpy(&mut basis[*k], &q.neg()?, &pcol, 0)?;
                reduce_col(&mut basis[*k])?;
            }
            vals.retain(|(_, v)| !v.is_zero());
        }
        let (k, g) = vals.pop().expect("one value left");
        if m.is_zero() {
            basis.swap_remove(k);
        } else {
            let factor = m.div_floor(&gcd(&g, m)?)?;
            for x in basis[k].iter_mut() {
                *x = x.mul(&factor)?;
            }
            reduce_col(&mut basis[k])?;
            if basis[k].iter().all(Int::is_zero) {
                basis.swap_remove(k);
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_membership_free() {
        let mut e = Echelon::<i64>::new(vec![0, 0]);
        assert!(e.insert(vec![2, 4]).unwrap());
        assert!(e.insert(vec![0, 6]).unwrap());
        assert!(e.contains(&[4, 2]).unwrap());
        assert!(!e.contains(&[1, 0]).unwrap());
        assert!(!e.insert(vec![2, 10]).unwrap());
        assert!(e.insert(vec![3, 0]).unwrap());
        assert!(e.contains(&[1, 2]).unwrap());
        assert!(!e.contains(&[1, 1]).unwrap());
    }

    #[test]
    fn echelon_with_torsion() {
        let mut e = Echelon::<i64>::new(vec![4, 0]);
        assert!(e.contains(&[8, 0]).unwrap());
        assert!(e.insert(vec![2, 1]).unwrap());
        assert!(e.contains(&[0, 2]).unwrap());
        assert_eq!(e.reduce(&[3, 5]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn kernel_of_two_mod_four() {
        let rows = vec![SparseRow { entries: vec![(0, 2i64)], modulus: 4 }];
        let k = kernel_mod(&rows, &[4]).unwrap();
        assert_eq!(k, vec![vec![2]]);
    }

    #[test]
    fn kernel_over_z() {
        // x + y + z = 0, x - y = 0
        let rows = vec![
            SparseRow { entries: vec![(0, 1i64), (1, 1), (2, 1)], modulus: 0 },
            SparseRow { entries: vec![(0, 1), (1, -1)], modulus: 0 },
        ];
        let k = kernel_mod(&rows, &[0, 0, 0]).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0], v[1]);
        assert_eq!(v[2], -2 * v[0]);
        assert_eq!(v[0].abs(), 1);
    }
}
