//! Linear systems over the integers modulo a lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;

/// Solutions of `A x ≡ b` modulo the column lattice of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<BigInt>,
    /// Generators of `{x : A x ∈ col(R)}`.
    pub kernel: Vec<Vec<BigInt>>,
}

/// Decides `A x ≡ b (mod col(R))` exactly through the SNF of `[A | R]`.
///
/// Returns `Ok(None)` when the system has no integer solution.
pub fn solve_modular_linear(a: &IntMatrix, r: &IntMatrix, b: &[BigInt]) -> Result<Option<Solution>> {
    let m = a.rows();
    if r.rows() != m || b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "system with {m} rows, relation matrix with {} rows, right side of length {}",
            r.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let stacked = a.hcat(r)?;
    let d = smith_normal_form(&stacked);
    let rank = d.rank();
    let ub = d.u.mul_vec(b)?;
    let mut w = vec![BigInt::zero(); stacked.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < rank {
            let (q, rem) = c.div_rem(&d.invariant_factors[i]);
            if !rem.is_zero() {
                return Ok(None);
            }
            w[i] = q;
        } else if !c.is_zero() {
            return Ok(None);
        }
    }
    let z = d.v.mul_vec(&w)?;
    let particular = z[..n].to_vec();
    let kernel = (rank..stacked.cols())
        .map(|j| (0..n).map(|i| d.v.get(i, j).clone()).collect::<Vec<_>>())
        .filter(|k: &Vec<BigInt>| k.iter().any(|x| !x.is_zero()))
        .collect();
    Ok(Some(Solution { particular, kernel }))
}

/// Diagonal relation matrix for coordinates with the given moduli (0 = free).
pub fn modulus_relations(moduli: &[BigInt]) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = moduli
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_zero())
        .map(|(i, t)| {
            let mut c = vec![BigInt::zero(); moduli.len()];
            c[i] = t.clone();
            c
        })
        .collect();
    IntMatrix::from_cols(moduli.len(), &cols).expect("consistent shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::bigs;

    #[test]
    fn two_x_zero_mod_four() {
        let a = IntMatrix::from_i64_rows(&[vec![2]]);
        let r = IntMatrix::from_i64_rows(&[vec![4]]);
        let s = solve_modular_linear(&a, &r, &bigs(&[0])).unwrap().unwrap();
        assert_eq!(s.particular, bigs(&[0]));
        assert_eq!(s.kernel.len(), 1);
        assert!(s.kernel[0][0] == BigInt::from(2) || s.kernel[0][0] == BigInt::from(-2));
    }

    #[test]
    fn two_x_one_mod_four() {
        let a = IntMatrix::from_i64_rows(&[vec![2]]);
        let r = IntMatrix::from_i64_rows(&[vec![4]]);
        assert!(solve_modular_linear(&a, &r, &bigs(&[1])).unwrap().is_none());
    }

    #[test]
    fn identity_system() {
        let a = IntMatrix::identity(3);
        let r = IntMatrix::zeros(3, 0);
        let s = solve_modular_linear(&a, &r, &bigs(&[4, -1, 7])).unwrap().unwrap();
        assert_eq!(s.particular, bigs(&[4, -1, 7]));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        let a = IntMatrix::identity(2);
        assert!(solve_modular_linear(&a, &IntMatrix::zeros(3, 0), &bigs(&[1, 2])).is_err());
    }
}
