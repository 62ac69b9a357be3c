use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::Scalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients stored low degree first with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `t - r`
    pub fn linear_root(r: &F) -> Self {
        Self::new(vec![-r.clone(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, t: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(t) + c;
        }
        acc
    }

    pub fn scale(&self, k: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inv().expect("nonzero lead");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&F::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.lead().and_then(Scalar::inv).ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul_ref(&lead_inv);
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor via the monic Euclidean remainder
    /// sequence. `gcd(0, 0)` is an error.
    pub fn gcd(p: &Self, q: &Self) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut a, mut b) = (p.monic(), q.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// The quotient `q` with `self = (t - r) q`, by synthetic division.
    pub fn divide_out_root(&self, r: &F) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![F::zero(); n.saturating_sub(1)];
        let mut carry = F::zero();
        for k in (1..n).rev() {
            carry = self.coeffs[k].add_ref(&carry.mul_ref(r));
            q[k - 1] = carry.clone();
        }
        let remainder = self.coeffs[0].add_ref(&carry.mul_ref(r));
        if !remainder.is_zero() {
            return Err(Error::NotARoot);
        }
        Ok(Self::new(q))
    }

    /// Distinct roots lying in the working field, sorted, together with a flag
    /// saying whether the search was exhaustive.
    pub fn roots_in_field(&self) -> (Vec<F>, bool) {
        let mut roots = Vec::new();
        if self.is_zero() {
            return (roots, false);
        }
        let mut p = self.monic();
        let mut complete = true;
        match p.degree() {
            Some(0) => {}
            Some(1) | Some(2) => {}
            _ => match F::root_candidates(&p.coeffs) {
                None => complete = false,
                Some(cands) => {
                    for c in cands {
                        while p.degree().unwrap_or(0) > 0 && p.eval(&c).is_zero() {
                            p = p.divide_out_root(&c).expect("checked root");
                            roots.push(c.clone());
                        }
                    }
                    // Whatever remains has no root in the field.
                    p = UniPoly::constant(F::one());
                }
            },
        }
        match p.degree() {
            Some(1) => roots.push(-p.coeffs[0].clone()),
            Some(2) => {
                let (c, b) = (&p.coeffs[0], &p.coeffs[1]);
                let disc = b.square() - F::from_int(4).mul_ref(c);
                if let Some(s) = disc.sqrt() {
                    let half = F::from_int(2).inv().expect("char 0");
                    roots.push((-b.clone() + &s).mul_ref(&half));
                    roots.push((-b.clone() - &s).mul_ref(&half));
                }
            }
            _ => {}
        }
        roots.sort();
        roots.dedup();
        (roots, complete)
    }
}

impl<F: Scalar> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})t", c)?,
                _ => write!(f, "({})t^{}", c, k)?,
            }
        }
        Ok(())
    }
}

fn add_slices<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x.add_ref(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

impl<'b, F: Scalar> Add<&'b UniPoly<F>> for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: &'b UniPoly<F>) -> UniPoly<F> {
        UniPoly::new(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl<'b, F: Scalar> Sub<&'b UniPoly<F>> for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: &'b UniPoly<F>) -> UniPoly<F> {
        let neg: Vec<F> = rhs.coeffs.iter().map(|c| -c.clone()).collect();
        UniPoly::new(add_slices(&self.coeffs, &neg))
    }
}

impl<'b, F: Scalar> Mul<&'b UniPoly<F>> for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: &'b UniPoly<F>) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        UniPoly::new(out)
    }
}

impl<F: Scalar> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussRat, Rat};

    type P = UniPoly<Rat>;

    #[test]
    fn gcd_common_root() {
        let g = P::gcd(&P::from_ints(&[-1, 0, 1]), &P::from_ints(&[-1, 0, 0, 1])).unwrap();
        assert_eq!(g, P::from_ints(&[-1, 1]));
    }

    #[test]
    fn gcd_coprime() {
        let g = P::gcd(&P::from_ints(&[1, 0, 1]), &P::from_ints(&[3, 1])).unwrap();
        assert_eq!(g, P::from_ints(&[1]));
    }

    #[test]
    fn gcd_with_zero_is_monic_other() {
        let g = P::gcd(&P::zero(), &P::from_ints(&[-4, 0, 1])).unwrap();
        assert_eq!(g, P::from_ints(&[-4, 0, 1]));
        let g = P::gcd(&P::from_ints(&[-8, 0, 2]), &P::zero()).unwrap();
        assert_eq!(g, P::from_ints(&[-4, 0, 1]));
    }

    #[test]
    fn gcd_of_zeros_is_error() {
        assert_eq!(P::gcd(&P::zero(), &P::zero()), Err(Error::UndefinedGcd));
    }

    #[test]
    fn divide_out_roots() {
        let q = P::from_ints(&[0, -1, 0, 1]).divide_out_root(&Rat::int(0)).unwrap();
        assert_eq!(q, P::from_ints(&[-1, 0, 1]));
        let q = P::from_ints(&[1, -2, 1]).divide_out_root(&Rat::int(1)).unwrap();
        assert_eq!(q, P::from_ints(&[-1, 1]));
        assert_eq!(P::from_ints(&[1, 0, 1]).divide_out_root(&Rat::int(1)), Err(Error::NotARoot));
    }

    #[test]
    fn divide_out_root_matches_expanded_product() {
        // oracle: expand (t-2)(t-3)(t+5) and (t-3)(t+5) by multiplication
        let f = |r: i64| P::linear_root(&Rat::int(r));
        let cubic = &(&f(2) * &f(3)) * &f(-5);
        let expected = &f(3) * &f(-5);
        assert_eq!(cubic.coeffs(), &[Rat::int(30), Rat::int(-19), Rat::int(0), Rat::int(1)]);
        assert_eq!(cubic.divide_out_root(&Rat::int(2)).unwrap(), expected);
    }

    #[test]
    fn roots_over_q() {
        let p = &(&P::linear_root(&Rat::frac(1, 2)) * &P::linear_root(&Rat::int(-3))) * &P::from_ints(&[2, 0, 1]);
        let (roots, complete) = p.roots_in_field();
        assert!(complete);
        assert_eq!(roots, vec![Rat::int(-3), Rat::frac(1, 2)]);
        let (roots, complete) = P::from_ints(&[-2, 0, 1]).roots_in_field();
        assert!(complete && roots.is_empty());
    }

    #[test]
    fn roots_over_gaussian() {
        let p = UniPoly::<GaussRat>::from_ints(&[1, 0, 1]);
        let (roots, _) = p.roots_in_field();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!(p.eval(&r).is_zero());
        }
        let p = UniPoly::<GaussRat>::from_ints(&[4, 0, 5, 0, 1]); // (t^2+1)(t^2+4)
        let (roots, complete) = p.roots_in_field();
        assert!(complete);
        assert_eq!(roots.len(), 4);
    }
}
