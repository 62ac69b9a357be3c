use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use super::{Rat, Scalar};
use crate::error::{Error, Result};

/// Gaussian rational `re + im*i`. Ordering is lexicographic on `(re, im)`
/// and exists only to give canonical keys a total order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn ints(re: i64, im: i64) -> Self {
        GaussRat::new(Rat::int(re), Rat::int(im))
    }

    pub fn i() -> Self {
        GaussRat::ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`, zero iff `self` is zero.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::new(r, Rat::zero())
    }
}

fn g_add(a: &GaussRat, b: &GaussRat) -> GaussRat {
    GaussRat::new(&a.re + &b.re, &a.im + &b.im)
}

fn g_sub(a: &GaussRat, b: &GaussRat) -> GaussRat {
    GaussRat::new(&a.re - &b.re, &a.im - &b.im)
}

fn g_mul(a: &GaussRat, b: &GaussRat) -> GaussRat {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussRat::new(&a.re * &b.re, Rat::zero());
    }
    GaussRat::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
}

macro_rules! gauss_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                $f(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &'a GaussRat) -> GaussRat {
                $f(&self, rhs)
            }
        }
        impl<'a, 'b> $tr<&'b GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &'b GaussRat) -> GaussRat {
                $f(self, rhs)
            }
        }
    };
}

gauss_binop!(Add, add, g_add);
gauss_binop!(Sub, sub, g_sub);
gauss_binop!(Mul, mul, g_mul);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = Rat::one();
        let im_abs = self.im.abs();
        let im_body = |f: &mut fmt::Formatter<'_>| {
            if im_abs == one {
                write!(f, "i")
            } else {
                write!(f, "{}i", im_abs)
            }
        };
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            return im_body(f);
        }
        write!(f, "{}{}", self.re, if self.im.is_negative() { "-" } else { "+" })?;
        im_body(f)
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_imag(body: &str, whole: &str) -> Result<Rat> {
    match body.trim() {
        "" | "+" => Ok(Rat::one()),
        "-" => Ok(-Rat::one()),
        t => t.parse::<Rat>().map_err(|_| Error::Parse(whole.to_string())),
    }
}

impl FromStr for GaussRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some(head) = t.strip_suffix('i') else {
            return Ok(GaussRat::from(t.parse::<Rat>()?));
        };
        // Split at the last sign that is not leading.
        let split = head.char_indices().filter(|&(k, c)| k > 0 && (c == '+' || c == '-')).map(|(k, _)| k).next_back();
        match split {
            None => Ok(GaussRat::new(Rat::zero(), parse_imag(head, s)?)),
            Some(k) => {
                let re = head[..k].parse::<Rat>()?;
                let im = parse_imag(&head[k..], s)?;
                Ok(GaussRat::new(re, im))
            }
        }
    }
}

impl Scalar for GaussRat {
    const FIELD: &'static str = "Q(i)";

    fn zero() -> Self {
        GaussRat::default()
    }
    fn one() -> Self {
        GaussRat::ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_int(n: i64) -> Self {
        GaussRat::ints(n, 0)
    }
    fn from_rat(r: Rat) -> Self {
        GaussRat::from(r)
    }
    fn add_ref(&self, other: &Self) -> Self {
        g_add(self, other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        g_sub(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        g_mul(self, other)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(GaussRat::new(&self.re * &n, -(&self.im * &n)))
    }

    fn normalize_projective(v: &mut [Self]) {
        let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() else {
            return;
        };
        if lead == GaussRat::one() {
            return;
        }
        let inv = lead.inv().expect("nonzero lead");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = g_mul(x, &inv);
            }
        }
    }

    fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            if !self.re.is_negative() {
                return self.re.sqrt().map(GaussRat::from);
            }
            return (-self.re.clone()).sqrt().map(|r| GaussRat::new(Rat::zero(), r));
        }
        let modulus = self.norm().sqrt()?;
        let two = Rat::int(2);
        let half = two.inv()?;
        let re = ((&modulus + &self.re) * &half).sqrt()?;
        // re != 0 because im != 0
        let im = &self.im * &(&re * &two).inv()?;
        Some(GaussRat::new(re, im))
    }

    fn root_candidates(coeffs: &[Self]) -> Option<Vec<Self>> {
        if !coeffs.iter().all(GaussRat::is_real) {
            return None;
        }
        let real: Vec<Rat> = coeffs.iter().map(|c| c.re.clone()).collect();
        let mut out: Vec<GaussRat> = Rat::root_candidates(&real)?.into_iter().map(GaussRat::from).collect();
        // A root r*i makes both Re p(ir) and Im p(ir) vanish, so r is a root
        // of their sum, whose coefficients are the c_k with signs + + - -.
        let rotated: Vec<Rat> = real
            .iter()
            .enumerate()
            .map(|(k, c)| match k % 4 {
                0 | 1 => c.clone(),
                _ => -c.clone(),
            })
            .collect();
        if let Some(cands) = Rat::root_candidates(&rotated) {
            out.extend(cands.into_iter().map(|r| GaussRat::new(Rat::zero(), r)));
        }
        out.sort();
        out.dedup();
        Some(out)
    }

    fn parts(&self) -> (Rat, Rat) {
        (self.re.clone(), self.im.clone())
    }
}
