//! Integer abstraction with a checked machine-word fast path.
//!
//! Large cochain computations run over `i64` and report [`Overflow`] as soon as
//! any intermediate value leaves the word range; callers then repeat the
//! computation over [`BigInt`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// Raised when an `i64` computation leaves the machine-word range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type Ck<T> = Result<T, Overflow>;

pub trait Int: Clone + Eq + Ord + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Ck<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Ck<Self>;
    fn sub(&self, o: &Self) -> Ck<Self>;
    fn mul(&self, o: &Self) -> Ck<Self>;
    fn neg(&self) -> Ck<Self>;
    /// Division rounding toward negative infinity. `o` must be nonzero.
    fn div_floor(&self, o: &Self) -> Ck<Self>;
    /// Representative in `[0, m)` for `m > 0`.
    fn mod_floor(&self, m: &Self) -> Ck<Self>;

    fn abs(&self) -> Ck<Self> {
        if self.is_negative() {
            self.neg()
        } else {
            Ok(self.clone())
        }
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Int for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn from_big(v: &BigInt) -> Ck<Self> {
        v.to_i64().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Ck<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Ck<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Ck<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn neg(&self) -> Ck<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn div_floor(&self, o: &Self) -> Ck<Self> {
        if *self == i64::MIN && *o == -1 {
            return Err(Overflow);
        }
        Ok(Integer::div_floor(self, o))
    }
    fn mod_floor(&self, m: &Self) -> Ck<Self> {
        self.checked_rem_euclid(*m).ok_or(Overflow)
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Ck<Self> {
        Ok(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Ck<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Ck<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Ck<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Ck<Self> {
        Ok(-self)
    }
    fn div_floor(&self, o: &Self) -> Ck<Self> {
        Ok(Integer::div_floor(self, o))
    }
    fn mod_floor(&self, m: &Self) -> Ck<Self> {
        Ok(Integer::mod_floor(self, m))
    }
}

/// Extended gcd: returns `(g, x, y)` with `g = a*x + b*y >= 0`.
pub fn ext_gcd<T: Int>(a: &T, b: &T) -> Ck<(T, T, T)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (T::one(), T::zero());
    let (mut y0, mut y1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1)?;
        let r2 = r0.sub(&q.mul(&r1)?)?;
        let x2 = x0.sub(&q.mul(&x1)?)?;
        let y2 = y0.sub(&q.mul(&y1)?)?;
        r0 = std::mem::replace(&mut r1, r2);
        x0 = std::mem::replace(&mut x1, x2);
        y0 = std::mem::replace(&mut y1, y2);
    }
    if r0.is_negative() {
        Ok((r0.neg()?, x0.neg()?, y0.neg()?))
    } else {
        Ok((r0, x0, y0))
    }
}

pub fn gcd<T: Int>(a: &T, b: &T) -> Ck<T> {
    let (mut a, mut b) = (a.abs()?, b.abs()?);
    while !b.is_zero() {
        let r = a.mod_floor(&b)?;
        a = std::mem::replace(&mut b, r);
    }
    Ok(a)
}

/// Reduces `x` modulo `m` when `m` is positive; `m = 0` means no reduction.
pub fn reduce_mod<T: Int>(x: &T, m: &T) -> Ck<T> {
    if m.is_zero() {
        Ok(x.clone())
    } else {
        x.mod_floor(m)
    }
}

/// `dst += c * src`, entrywise from index `from`.
pub fn axpy<T: Int>(dst: &mut [T], c: &T, src: &[T], from: usize) -> Ck<()> {
    if c.is_zero() {
        return Ok(());
    }
    for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
        if !s.is_zero() {
            *d = d.add(&c.mul(s)?)?;
        }
    }
    Ok(())
}

pub fn to_big_vec<T: Int>(v: &[T]) -> Vec<BigInt> {
    v.iter().map(Int::to_big).collect()
}

pub fn from_big_vec<T: Int>(v: &[BigInt]) -> Ck<Vec<T>> {
    v.iter().map(T::from_big).collect()
}

/// Runs `f` over `i64` and repeats it over `BigInt` if a word overflowed.
pub fn with_fallback<R>(f: impl Fn(Width) -> Ck<R>) -> R {
    match f(Width::Word) {
        Ok(r) => r,
        Err(Overflow) => f(Width::Big).expect("BigInt arithmetic cannot overflow"),
    }
}

/// Arithmetic width selector used by [`with_fallback`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Width {
    Word,
    Big,
}
