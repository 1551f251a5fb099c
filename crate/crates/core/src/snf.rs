//! Smith normal form with tracked unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// `u * a * v = s` with `u`, `v` unimodular and `s` diagonal in divisibility order.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
    /// Diagonal of `s`, length `min(rows, cols)`; zeros trail.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().take_while(|d| !d.is_zero()).count()
    }
}

struct Work {
    s: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl Work {
    fn rows(&self) -> usize {
        self.s.len()
    }

    fn cols(&self) -> usize {
        self.v.len()
    }

    /// row `i` += `c` * row `j`
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for m in [&mut self.s, &mut self.u] {
            let (src, dst) = pick(m, j, i);
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d += c * s;
                }
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.s.swap(i, j);
        self.u.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.s[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }

    /// column `i` += `c` * column `j`
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for m in [&mut self.s, &mut self.v] {
            for row in m.iter_mut() {
                if !row[j].is_zero() {
                    let t = c * &row[j];
                    row[i] += t;
                }
            }
        }
        // inverse transform acts on rows of v_inv: row j -= c * row i
        let neg = -c;
        let (src, dst) = pick(&mut self.v_inv, i, j);
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d += &neg * s;
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for m in [&mut self.s, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        self.v_inv.swap(i, j);
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.s[i][j];
                if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                    best = Some((i, j, x.abs()));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Returns (read-only row `src`, mutable row `dst`) from the same matrix.
fn pick(m: &mut [Vec<BigInt>], src: usize, dst: usize) -> (&[BigInt], &mut [BigInt]) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = m.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = m.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    IntMatrix::identity(n).row_vecs()
}

fn to_matrix(cols: usize, rows: &[Vec<BigInt>]) -> IntMatrix {
    IntMatrix::from_rows(cols, rows).expect("consistent shape")
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work { s: a.row_vecs(), u: identity(m), v: identity(n), v_inv: identity(n) };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = w.min_entry(t) else { break };
        if pi != t {
            w.swap_rows(pi, t);
        }
        if pj != t {
            w.swap_cols(pj, t);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !w.s[i][t].is_zero() {
                    let q = w.s[i][t].div_floor(&w.s[t][t]);
                    w.add_row(i, t, &-q);
                    if !w.s[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !w.s[t][j].is_zero() {
                    let q = w.s[t][j].div_floor(&w.s[t][t]);
                    w.add_col(j, t, &-q);
                    if !w.s[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // a smaller remainder now sits in row or column t; make it the pivot
                let mut best = (t, t, w.s[t][t].abs());
                for i in t + 1..m {
                    let x = w.s[i][t].abs();
                    if !x.is_zero() && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = w.s[t][j].abs();
                    if !x.is_zero() && x < best.2 {
                        best = (t, j, x);
                    }
                }
                if best.0 != t {
                    w.swap_rows(best.0, t);
                }
                if best.1 != t {
                    w.swap_cols(best.1, t);
                }
                continue;
            }
            let p = w.s[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.s[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.s[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..m.min(n)).map(|i| w.s[i][i].clone()).collect();
    SnfDecomposition {
        u: to_matrix(m, &w.u),
        s: to_matrix(n, &w.s),
        v: to_matrix(n, &w.v),
        v_inv: to_matrix(n, &w.v_inv),
        invariant_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::bigs;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let d = smith_normal_form(a);
        assert_eq!(d.u.mul(a).unwrap().mul(&d.v).unwrap(), d.s);
        assert_eq!(d.v.mul(&d.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        assert!(d.s.is_diagonal());
        d
    }

    #[test]
    fn diag_2_3() {
        let d = check(&IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d.invariant_factors, bigs(&[1, 6]));
    }

    #[test]
    fn identity_and_zero() {
        let d = check(&IntMatrix::identity(3));
        assert_eq!(d.s, IntMatrix::identity(3));
        let z = check(&IntMatrix::zeros(1, 1));
        assert_eq!(z.invariant_factors, bigs(&[0]));
    }

    #[test]
    fn rectangular() {
        let d = check(&IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(d.invariant_factors, bigs(&[2, 6, 12]));
        let e = check(&IntMatrix::from_i64_rows(&[vec![4, 6]]));
        assert_eq!(e.invariant_factors, bigs(&[2]));
        assert_eq!(e.rank(), 1);
    }
}
