use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;
use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat((self.0).$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &'a Rat) -> Rat {
                Rat((self.0).$m(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $m(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let body = t.strip_prefix('+').unwrap_or(t);
    if body.is_empty() || body.starts_with('+') {
        return Err(Error::Parse(s.to_string()));
    }
    BigInt::from_str(body).map_err(|_| Error::Parse(s.to_string()))
}

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            None => Ok(Rat::from_bigint(parse_int(s)?)),
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(s.to_string()));
                }
                Rat::new(parse_int(n)?, d)
            }
        }
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Positive divisors of `n` by trial division, or `None` past the bound.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    const BOUND: u64 = 1_000_000_000_000;
    let n = n.abs().to_u64().filter(|&v| v <= BOUND)?;
    if n == 0 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

impl Scalar for Rat {
    const FIELD: &'static str = "Q";

    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_int(n: i64) -> Self {
        Rat::int(n)
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Rat(self.0.recip()))
    }

    fn normalize_projective(v: &mut [Self]) {
        if v.iter().all(Scalar::is_zero) {
            return;
        }
        let mut lcm = BigInt::one();
        for x in v.iter() {
            if !x.0.denom().is_one() {
                lcm = lcm.lcm(x.0.denom());
            }
        }
        let mut ints: Vec<BigInt> = v
            .iter()
            .map(|x| {
                if lcm.is_one() {
                    x.0.numer().clone()
                } else {
                    x.0.numer() * (&lcm / x.0.denom())
                }
            })
            .collect();
        let mut g = BigInt::zero();
        for n in &ints {
            if !n.is_zero() {
                g = g.gcd(n);
                if g.is_one() {
                    break;
                }
            }
        }
        let lead_negative = ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.sign() == Sign::Minus);
        if lead_negative {
            g = -g;
        }
        for (slot, n) in v.iter_mut().zip(ints.iter_mut()) {
            let q = if g.is_one() { core::mem::take(n) } else { &*n / &g };
            *slot = Rat::from_bigint(q);
        }
    }

    fn sqrt(&self) -> Option<Self> {
        let n = exact_sqrt(self.0.numer())?;
        let d = exact_sqrt(self.0.denom())?;
        Some(Rat(BigRational::new(n, d)))
    }

    fn root_candidates(coeffs: &[Self]) -> Option<Vec<Self>> {
        let mut lcm = BigInt::one();
        for c in coeffs {
            lcm = lcm.lcm(c.0.denom());
        }
        let ints: Vec<BigInt> = coeffs.iter().map(|c| c.0.numer() * (&lcm / c.0.denom())).collect();
        let low = ints.iter().position(|c| !c.is_zero())?;
        let high = ints.iter().rposition(|c| !c.is_zero())?;
        let mut out = vec![];
        if low > 0 {
            out.push(Rat::zero());
        }
        if low == high {
            return Some(out);
        }
        let ps = divisors(&ints[low])?;
        let qs = divisors(&ints[high])?;
        for p in &ps {
            for q in &qs {
                let r = BigRational::new(p.clone(), q.clone());
                out.push(Rat(-r.clone()));
                out.push(Rat(r));
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }

    fn parts(&self) -> (Rat, Rat) {
        (self.clone(), Rat::zero())
    }
}
