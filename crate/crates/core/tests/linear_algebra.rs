use extcohom_core::matrix::{bigs, IntMatrix};
use extcohom_core::snf::smith_normal_form;
use extcohom_core::solve::{modulus_relations, solve_modular_linear};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix_strategy(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-20i64..=20, c), r).prop_map(|rows| IntMatrix::from_i64_rows(&rows))
    })
}

/// gcd of all k×k minors, by expansion over row and column subsets.
fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        (k - 1..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let mut g = BigInt::zero();
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            let rows: Vec<Vec<BigInt>> =
                rs.iter().map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
            g = g.gcd(&IntMatrix::from_rows(k, &rows).unwrap().determinant().unwrap());
        }
    }
    g
}

#[test]
fn diag_2_3() {
    let d = smith_normal_form(&IntMatrix::diagonal(&bigs(&[2, 3])));
    assert_eq!(d.invariant_factors, bigs(&[1, 6]));
}

#[test]
fn identity_and_zero() {
    assert_eq!(smith_normal_form(&IntMatrix::identity(3)).invariant_factors, bigs(&[1, 1, 1]));
    assert_eq!(smith_normal_form(&IntMatrix::zeros(1, 1)).invariant_factors, bigs(&[0]));
}

#[test]
fn two_x_zero_mod_four() {
    let sol = solve_modular_linear(&IntMatrix::from_i64_rows(&[vec![2]]), &modulus_relations(&bigs(&[4])), &bigs(&[0]))
        .unwrap()
        .unwrap();
    let reduced: Vec<i64> = (0..4).filter(|x| (2 * x) % 4 == 0).collect();
    assert_eq!(reduced, [0, 2]);
    assert!(sol.particular[0].mod_floor(&BigInt::from(4)).is_zero());
    let g = sol.kernel.iter().fold(BigInt::from(4), |acc, k| acc.gcd(&k[0]));
    assert_eq!(g, BigInt::from(2));
}

#[test]
fn unsolvable_system() {
    let r = modulus_relations(&bigs(&[4]));
    assert!(solve_modular_linear(&IntMatrix::from_i64_rows(&[vec![2]]), &r, &bigs(&[1])).unwrap().is_none());
}

proptest! {
    #[test]
    fn snf_decomposes(a in matrix_strategy(6)) {
        let d = smith_normal_form(&a);
        prop_assert_eq!(d.u.mul(&a).unwrap().mul(&d.v).unwrap(), d.s.clone());
        prop_assert!(d.u.determinant().unwrap().abs() == BigInt::from(1));
        prop_assert!(d.v.determinant().unwrap().abs() == BigInt::from(1));
        prop_assert_eq!(d.v.mul(&d.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        prop_assert!(d.s.is_diagonal());
        for w in d.invariant_factors.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
    }

    #[test]
    fn invariant_factors_match_minor_gcds(a in matrix_strategy(4)) {
        let d = smith_normal_form(&a);
        let mut product = BigInt::from(1);
        for (k, f) in d.invariant_factors.iter().enumerate() {
            product *= f;
            prop_assert_eq!(product.clone(), minor_gcd(&a, k + 1));
        }
    }

    #[test]
    fn solutions_solve(a in matrix_strategy(4), moduli in prop::collection::vec(0i64..8, 4), b in prop::collection::vec(-9i64..=9, 4)) {
        let moduli = bigs(&moduli[..a.rows()]);
        let b = bigs(&b[..a.rows()]);
        let r = modulus_relations(&moduli);
        let in_lattice = |v: &[BigInt]| v.iter().zip(&moduli).all(|(x, m)| if m.is_zero() { x.is_zero() } else { x.mod_floor(m).is_zero() });
        match solve_modular_linear(&a, &r, &b).unwrap() {
            Some(sol) => {
                let ax = a.mul_vec(&sol.particular).unwrap();
                let diff: Vec<BigInt> = ax.iter().zip(&b).map(|(x, y)| x - y).collect();
                prop_assert!(in_lattice(&diff));
                for k in &sol.kernel {
                    prop_assert!(in_lattice(&a.mul_vec(k).unwrap()));
                }
            }
            None => {
                // with positive moduli, no x in a full period solves the system
                let l = moduli.iter().fold(BigInt::from(1), |acc, m| acc.lcm(m));
                if !l.is_zero() && a.cols() <= 2 && l <= BigInt::from(60) {
                    let l: i64 = (&l).try_into().unwrap();
                    for idx in 0..l.pow(a.cols() as u32) {
                        let x: Vec<i64> = (0..a.cols()).map(|j| (idx / l.pow(j as u32)) % l).collect();
                        let ax = a.mul_vec(&bigs(&x)).unwrap();
                        let diff: Vec<BigInt> = ax.iter().zip(&b).map(|(p, q)| p - q).collect();
                        prop_assert!(!in_lattice(&diff));
                    }
                }
            }
        }
    }
}
