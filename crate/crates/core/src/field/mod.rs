//! Exact scalars (Q and Q(i)) and univariate polynomials over them.

mod gauss;
mod poly;
mod rat;

pub use gauss::GaussRat;
pub use poly::UniPoly;
pub use rat::Rat;

use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Result};

/// An exact field element. Implemented by [`Rat`] and [`GaussRat`]; every
/// geometric layer is generic over this trait.
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = Error>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Field tag used by fixture files: `Q` or `Q(i)`.
    const FIELD: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_int(n: i64) -> Self;
    fn from_rat(r: Rat) -> Self;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// Rescale a nonzero homogeneous vector into its canonical representative.
    ///
    /// Over Q: coprime integers with first nonzero entry positive. Over Q(i):
    /// first nonzero entry equal to 1. A zero vector is left untouched.
    fn normalize_projective(v: &mut [Self]);

    /// Exact square root when it exists in the field.
    fn sqrt(&self) -> Option<Self>;

    /// Finite candidate set containing every root in the field of the
    /// polynomial with the given (low-to-high) coefficients, or `None` when
    /// no such enumeration is available.
    fn root_candidates(coeffs: &[Self]) -> Option<Vec<Self>>;

    /// Real and imaginary parts, for reductions that need rational data.
    fn parts(&self) -> (Rat, Rat);

    fn div_ref(&self, other: &Self) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_ref(&inv))
    }

    fn square(&self) -> Self {
        self.mul_ref(self)
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// Dot product of two equal-length slices.
pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.mul_ref(y);
        }
    }
    acc
}

/// `a*x - b*y` componentwise, the workhorse of third-point computations.
pub fn lin_comb<F: Scalar, const N: usize>(a: &F, x: &[F; N], b: &F, y: &[F; N]) -> [F; N] {
    core::array::from_fn(|i| a.mul_ref(&x[i]) - b.mul_ref(&y[i]))
}

/// Whether two vectors are proportional (including the zero cases).
pub fn proportional<F: Scalar>(a: &[F], b: &[F]) -> bool {
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if a[i].mul_ref(&b[j]) != a[j].mul_ref(&b[i]) {
                return false;
            }
        }
    }
    true
}
