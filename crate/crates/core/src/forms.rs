//! Dense homogeneous cubic forms in `N` variables and linear substitution.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Scalar;

/// Exponent vectors of degree 3 in `N` variables, lexicographically
/// descending: for `N = 4` this starts `x³, x²y, x²z, x²w, xy², …` and ends
/// `w³`.
pub fn cubic_monomials<const N: usize>() -> Vec<[u8; N]> {
    fn rec<const N: usize>(pos: usize, left: u8, cur: &mut [u8; N], out: &mut Vec<[u8; N]>) {
        if pos == N - 1 {
            cur[pos] = left;
            out.push(*cur);
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, 3, &mut [0u8; N], &mut out);
    out
}

fn monomial_index<const N: usize>(e: &[u8; N]) -> usize {
    cubic_monomials::<N>().iter().position(|m| m == e).expect("degree-3 exponent")
}

/// A homogeneous cubic in `N` variables stored densely in the order of
/// [`cubic_monomials`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cubic<F, const N: usize> {
    coeffs: Vec<F>,
}

impl<F: Scalar, const N: usize> Cubic<F, N> {
    pub fn zero() -> Self {
        let len = cubic_monomials::<N>().len();
        Cubic { coeffs: (0..len).map(|_| F::zero()).collect() }
    }

    /// Coefficients in monomial order; the slice length must match.
    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        assert_eq!(coeffs.len(), cubic_monomials::<N>().len());
        Cubic { coeffs }
    }

    /// Sum of `(exponents, coefficient)` terms; repeated exponents add up.
    /// Returns `None` if some exponent vector does not have degree 3.
    pub fn from_terms<I: IntoIterator<Item = ([u8; N], F)>>(terms: I) -> Option<Self> {
        let mons = cubic_monomials::<N>();
        let mut out = Self::zero();
        for (e, c) in terms {
            let k = mons.iter().position(|m| *m == e)?;
            out.coeffs[k] = out.coeffs[k].add_ref(&c);
        }
        Some(out)
    }

    pub fn from_int_terms(terms: &[([u8; N], i64)]) -> Self {
        Self::from_terms(terms.iter().map(|(e, c)| (*e, F::from_int(*c)))).expect("degree-3 exponents")
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, e: &[u8; N]) -> &F {
        &self.coeffs[monomial_index(e)]
    }

    pub fn set_coeff(&mut self, e: &[u8; N], c: F) {
        let k = monomial_index(e);
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = ([u8; N], &F)> + '_ {
        cubic_monomials::<N>().into_iter().zip(self.coeffs.iter()).filter(|(_, c)| !c.is_zero())
    }

    pub fn eval(&self, x: &[F; N]) -> F {
        let pows = powers(x);
        let mut acc = F::zero();
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul_ref(&pows[v][k as usize]);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Formal gradient evaluated at `x`.
    pub fn gradient(&self, x: &[F; N]) -> [F; N] {
        let pows = powers(x);
        let mut g: [F; N] = core::array::from_fn(|_| F::zero());
        for (e, c) in self.terms() {
            for d in 0..N {
                if e[d] == 0 {
                    continue;
                }
                let mut t = c.mul_ref(&F::from_int(e[d] as i64));
                for (v, &k) in e.iter().enumerate() {
                    let k = if v == d { k - 1 } else { k };
                    if k > 0 {
                        t = t.mul_ref(&pows[v][k as usize]);
                    }
                }
                g[d] = g[d].add_ref(&t);
            }
        }
        g
    }

    /// The cubic in `M` new variables obtained by substituting
    /// `x = Σ u_j basis[j]`.
    pub fn substitute<const M: usize>(&self, basis: &[[F; N]; M]) -> Cubic<F, M> {
        let mut acc: BTreeMap<[u8; M], F> = BTreeMap::new();
        // Each variable x_v becomes the linear form Σ_j basis[j][v] u_j.
        let linear: Vec<Sparse<F, M>> = (0..N)
            .map(|v| {
                let mut m = Sparse::new();
                for (j, b) in basis.iter().enumerate() {
                    let mut e = [0u8; M];
                    e[j] = 1;
                    m.add_term(e, b[v].clone());
                }
                m
            })
            .collect();
        for (e, c) in self.terms() {
            let mut prod = Sparse::<F, M>::constant(c.clone());
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    prod = prod.mul(&linear[v]);
                }
            }
            for (me, mc) in prod.terms {
                let slot = acc.entry(me).or_insert_with(F::zero);
                *slot = slot.add_ref(&mc);
            }
        }
        Cubic::<F, M>::from_terms(acc).expect("substitution preserves degree")
    }

    /// Maps every coefficient through `f`.
    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Cubic<G, N> {
        Cubic { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<F: Scalar> Cubic<F, 2> {
    /// The binary cubic as `[s³, s²t, st², t³]` coefficients.
    pub fn binary_coeffs(&self) -> [F; 4] {
        core::array::from_fn(|k| self.coeffs[k].clone())
    }
}

fn powers<F: Scalar, const N: usize>(x: &[F; N]) -> [[F; 4]; N] {
    core::array::from_fn(|v| {
        let x1 = x[v].clone();
        let x2 = x1.square();
        let x3 = x2.mul_ref(&x1);
        [F::one(), x1, x2, x3]
    })
}

/// Small sparse polynomial used while expanding substitutions.
#[derive(Clone)]
struct Sparse<F, const M: usize> {
    terms: BTreeMap<[u8; M], F>,
}

impl<F: Scalar, const M: usize> Sparse<F, M> {
    fn new() -> Self {
        Sparse { terms: BTreeMap::new() }
    }

    fn constant(c: F) -> Self {
        let mut s = Self::new();
        s.add_term([0u8; M], c);
        s
    }

    fn add_term(&mut self, e: [u8; M], c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(F::zero);
        *slot = slot.add_ref(&c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: [u8; M] = core::array::from_fn(|i| ea[i] + eb[i]);
                out.add_term(e, ca.mul_ref(cb));
            }
        }
        out
    }
}

const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl<F: Scalar, const N: usize> fmt::Display for Cubic<F, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = if N == 3 { &["x", "y", "w"] } else { &VAR_NAMES[..N.min(4)] };
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*{}", names.get(v).copied().unwrap_or("u"))?,
                    _ => write!(f, "*{}^{}", names.get(v).copied().unwrap_or("u"), k)?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<F: Scalar, const N: usize> fmt::Debug for Cubic<F, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use proptest::prelude::*;

    #[test]
    fn monomial_counts_and_order() {
        let m4 = cubic_monomials::<4>();
        assert_eq!(m4.len(), 20);
        assert_eq!(m4[0], [3, 0, 0, 0]);
        assert_eq!(m4[1], [2, 1, 0, 0]);
        assert_eq!(m4[19], [0, 0, 0, 3]);
        assert_eq!(cubic_monomials::<3>().len(), 10);
        assert_eq!(cubic_monomials::<2>(), alloc::vec![[3, 0], [2, 1], [1, 2], [0, 3]]);
    }

    fn sample_form() -> Cubic<Rat, 4> {
        // y²w − x³ + z³ + zw²
        Cubic::from_int_terms(&[([0, 2, 0, 1], 1), ([3, 0, 0, 0], -1), ([0, 0, 3, 0], 1), ([0, 0, 1, 2], 1)])
    }

    #[test]
    fn gradient_by_hand() {
        let f = sample_form();
        let g = f.gradient(&[0, 0, 0, 1].map(Rat::int));
        assert_eq!(g, [0, 0, 1, 0].map(Rat::int));
        let g = f.gradient(&[0, 1, 0, 0].map(Rat::int));
        assert_eq!(g, [0, 0, 0, 1].map(Rat::int));
    }

    #[test]
    fn substitution_onto_plane() {
        let f = sample_form();
        let e = |k: usize| core::array::from_fn::<Rat, 4, _>(|i| if i == k { Rat::one() } else { Rat::zero() });
        let section: Cubic<Rat, 3> = f.substitute(&[e(0), e(1), e(3)]);
        let expect = Cubic::<Rat, 3>::from_int_terms(&[([0, 2, 1], 1), ([3, 0, 0], -1)]);
        assert_eq!(section, expect);
    }

    fn small4() -> impl Strategy<Value = [i64; 4]> {
        prop::array::uniform4(-5i64..=5)
    }

    proptest! {
        #[test]
        fn euler_relation(x in small4()) {
            let f = sample_form();
            let p = x.map(Rat::int);
            let g = f.gradient(&p);
            prop_assert_eq!(crate::field::dot(&g, &p), Rat::int(3) * f.eval(&p));
        }

        #[test]
        fn substitution_commutes_with_evaluation(a in small4(), b in small4(), s in -4i64..=4, t in -4i64..=4) {
            let f = sample_form();
            let (pa, pb) = (a.map(Rat::int), b.map(Rat::int));
            let bin: Cubic<Rat, 2> = f.substitute(&[pa.clone(), pb.clone()]);
            let pt: [Rat; 4] = core::array::from_fn(|i| Rat::int(s) * &pa[i] + Rat::int(t) * &pb[i]);
            prop_assert_eq!(bin.eval(&[Rat::int(s), Rat::int(t)]), f.eval(&pt));
        }
    }
}
