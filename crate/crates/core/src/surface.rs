//! Cubic surfaces in P³: membership, tangent planes, the third point of a
//! chord, lines through a point, plane sections and a mod-p smoothness scan.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::curve::PlaneCubic;
use crate::error::{Error, Result};
use crate::field::{dot, lin_comb, Scalar, UniPoly};
use crate::forms::{cubic_monomials, Cubic};
use crate::proj::{rank, PlaneP3, ProjPoint};

/// Homogeneous cubic in `x, y, z, w`.
pub type CubicForm<F> = Cubic<F, 4>;

/// How the smoothness of a surface is vouched for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothnessCertificate {
    /// A hand derivation shipped with the named fixture.
    Asserted(String),
    /// A clean singular-point scan over `P³(F_p)` for each listed prime;
    /// evidence only, not a proof.
    SampledOverPrimes(Vec<u64>),
    Unverified,
}

#[derive(Clone, Debug)]
pub struct CubicSurface<F: Scalar> {
    form: CubicForm<F>,
    certificate: SmoothnessCertificate,
}

/// `f(s p + t q)` as `[s³, s²t, st², t³]` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedCubic<F> {
    pub coeffs: [F; 4],
}

impl<F: Scalar> RestrictedCubic<F> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// The `s²t` coefficient, `∇f(p)·q`.
    pub fn beta(&self) -> &F {
        &self.coeffs[1]
    }

    /// The `st²` coefficient, `∇f(q)·p`.
    pub fn gamma(&self) -> &F {
        &self.coeffs[2]
    }

    pub fn eval(&self, s: &F, t: &F) -> F {
        let [c0, c1, c2, c3] = &self.coeffs;
        c0.mul_ref(&s.pow(3)) + c1.mul_ref(&s.square()).mul_ref(t) + c2.mul_ref(s).mul_ref(&t.square()) + c3.mul_ref(&t.pow(3))
    }
}

/// Lines of the surface through a point, counted over the algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinesThroughPoint<F: Scalar> {
    /// No line of the surface passes through the point.
    pub is_good: bool,
    /// Number of distinct lines through the point over the closure.
    pub lines_over_closure: usize,
    /// For each line defined over the working field, a second point on it.
    pub witnesses: Vec<ProjPoint<F>>,
}

/// Result of scanning `P³(F_p)` for singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeScan {
    pub prime: u64,
    /// Common zeros of `f` and `∇f` mod `p` (capped at a handful).
    pub singular_points: Vec<[u64; 4]>,
}

impl PrimeScan {
    pub fn is_clean(&self) -> bool {
        self.singular_points.is_empty()
    }
}

/// Largest prime accepted by [`CubicSurface::check_smooth_mod_primes`].
pub const DEFAULT_PRIME_BOUND: u64 = 211;

impl<F: Scalar> CubicSurface<F> {
    pub fn new(form: CubicForm<F>) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::DegenerateSurface);
        }
        Ok(CubicSurface { form, certificate: SmoothnessCertificate::Unverified })
    }

    pub fn with_certificate(mut self, certificate: SmoothnessCertificate) -> Self {
        self.certificate = certificate;
        self
    }

    pub fn form(&self) -> &CubicForm<F> {
        &self.form
    }

    pub fn certificate(&self) -> &SmoothnessCertificate {
        &self.certificate
    }

    pub fn eval(&self, p: &ProjPoint<F>) -> F {
        self.form.eval(p.coords())
    }

    pub fn contains(&self, p: &ProjPoint<F>) -> bool {
        self.eval(p).is_zero()
    }

    pub fn gradient(&self, p: &ProjPoint<F>) -> [F; 4] {
        self.form.gradient(p.coords())
    }

    pub fn is_singular_at(&self, p: &ProjPoint<F>) -> bool {
        self.contains(p) && self.gradient(p).iter().all(Scalar::is_zero)
    }

    pub fn tangent_plane(&self, p: &ProjPoint<F>) -> Result<PlaneP3<F>> {
        if !self.contains(p) {
            return Err(Error::NotOnSurface);
        }
        PlaneP3::new(self.gradient(p)).map_err(|_| Error::SingularPoint)
    }

    pub fn restrict_to_line(&self, p: &ProjPoint<F>, q: &ProjPoint<F>) -> Result<RestrictedCubic<F>> {
        if p == q {
            return Err(Error::DegenerateLine);
        }
        let (pc, qc) = (p.coords(), q.coords());
        let coeffs = [
            self.form.eval(pc),
            dot(&self.form.gradient(pc), qc),
            dot(&self.form.gradient(qc), pc),
            self.form.eval(qc),
        ];
        Ok(RestrictedCubic { coeffs })
    }

    pub fn line_in_surface(&self, p: &ProjPoint<F>, q: &ProjPoint<F>) -> bool {
        self.restrict_to_line(p, q).is_ok_and(|c| c.is_zero())
    }

    /// The residual point of the chord `pq`, with tangency resolved by
    /// multiplicity: a line tangent at `q` returns `q`, tangent at `p`
    /// returns `p`.
    pub fn third_intersection(&self, p: &ProjPoint<F>, q: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        let c = self.restrict_to_line(p, q)?;
        if !c.coeffs[0].is_zero() || !c.coeffs[3].is_zero() {
            return Err(Error::NotOnSurface);
        }
        let (beta, gamma) = (c.beta(), c.gamma());
        if beta.is_zero() && gamma.is_zero() {
            return Err(Error::ContainedLine);
        }
        if gamma.is_zero() {
            return Ok(q.clone());
        }
        if beta.is_zero() {
            return Ok(p.clone());
        }
        ProjPoint::new(lin_comb(gamma, p.coords(), beta, q.coords()))
    }

    /// Lines of the surface through `p`, found as common roots of the two
    /// conditions cut out on the pencil of tangent directions at `p`.
    pub fn lines_through_point(&self, p: &ProjPoint<F>) -> Result<LinesThroughPoint<F>> {
        let plane = self.tangent_plane(p)?;
        let basis = plane.basis();
        let (v1, v2) = tangent_pencil(p, &basis);
        // f(s p + u0 v1 + u1 v2): s-degree 1 part is the quadratic condition,
        // s-degree 0 part the cubic one.
        let expanded: Cubic<F, 3> = self.form.substitute(&[p.coords().clone(), v1.clone(), v2.clone()]);
        let mut quad: Vec<F> = (0..3).map(|_| F::zero()).collect();
        let mut cub: Vec<F> = (0..4).map(|_| F::zero()).collect();
        for (e, c) in expanded.terms() {
            match e[0] {
                1 => quad[e[2] as usize] = c.clone(),
                0 => cub[e[2] as usize] = c.clone(),
                _ => {}
            }
        }
        let quad = UniPoly::new(quad);
        let cub = UniPoly::new(cub);
        if quad.is_zero() && cub.is_zero() {
            return Err(Error::DegenerateSurface);
        }
        let at_infinity = quad.coeff(2).is_zero() && cub.coeff(3).is_zero();
        let g = UniPoly::gcd(&quad, &cub)?;
        let finite = distinct_root_count(&g);
        let (roots, _) = g.roots_in_field();
        let mut witnesses: Vec<ProjPoint<F>> = roots
            .iter()
            .map(|t| ProjPoint::new(core::array::from_fn(|i| v1[i].add_ref(&t.mul_ref(&v2[i])))).expect("independent"))
            .collect();
        if at_infinity {
            witnesses.push(ProjPoint::new(v2).expect("independent"));
        }
        let lines_over_closure = finite + usize::from(at_infinity);
        Ok(LinesThroughPoint { is_good: lines_over_closure == 0, lines_over_closure, witnesses })
    }

    pub fn is_good(&self, p: &ProjPoint<F>) -> Result<bool> {
        Ok(self.lines_through_point(p)?.is_good)
    }

    /// The plane cubic `S ∩ π` in the plane coordinates of [`PlaneP3::basis`].
    pub fn plane_section(&self, plane: &PlaneP3<F>) -> Result<PlaneCubic<F>> {
        let ternary: Cubic<F, 3> = self.form.substitute(&plane.basis());
        if ternary.is_zero() {
            return Err(Error::PlaneInSurface);
        }
        PlaneCubic::with_embedding(ternary, plane.clone())
    }

    /// Brute-force search of `P³(F_p)` for common zeros of `f` and `∇f`.
    pub fn check_smooth_mod_primes(&self, primes: &[u64], bound: u64) -> Result<Vec<PrimeScan>> {
        let ints = self.integral_coeffs()?;
        let mut out = Vec::new();
        for &p in primes {
            if p > bound {
                return Err(Error::PrimeTooLarge(p, bound));
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            out.push(scan_prime(&ints, p));
        }
        Ok(out)
    }

    /// Runs the scan and, if every prime is clean, records it as the
    /// certificate.
    pub fn certify_mod_primes(self, primes: &[u64]) -> Result<(Self, Vec<PrimeScan>)> {
        let report = self.check_smooth_mod_primes(primes, DEFAULT_PRIME_BOUND)?;
        let clean = report.iter().all(PrimeScan::is_clean);
        let s = if clean { self.with_certificate(SmoothnessCertificate::SampledOverPrimes(primes.to_vec())) } else { self };
        Ok((s, report))
    }

    fn integral_coeffs(&self) -> Result<Vec<BigInt>> {
        self.form
            .coeffs()
            .iter()
            .map(|c| {
                let (re, im) = c.parts();
                if !im.is_zero() || !re.is_integer() {
                    return Err(Error::NonIntegralForm);
                }
                Ok(re.numer().clone())
            })
            .collect()
    }
}

/// Two tangent directions that together with `p` span the tangent plane.
fn tangent_pencil<F: Scalar>(p: &ProjPoint<F>, basis: &[[F; 4]; 3]) -> ([F; 4], [F; 4]) {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if rank(&[p.coords().clone(), basis[i].clone(), basis[j].clone()]) == 3 {
            return (basis[i].clone(), basis[j].clone());
        }
    }
    unreachable!("p lies in the span of the tangent plane basis")
}

/// Number of distinct roots over the algebraic closure.
pub(crate) fn distinct_root_count<F: Scalar>(g: &UniPoly<F>) -> usize {
    match g.degree() {
        None | Some(0) => 0,
        Some(d) => {
            let common = UniPoly::gcd(g, &g.derivative()).expect("nonzero");
            d - common.degree().unwrap_or(0)
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn scan_prime(ints: &[BigInt], p: u64) -> PrimeScan {
    const CAP: usize = 8;
    let pb = BigInt::from(p);
    let coeffs: Vec<u64> = ints.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect();
    let mons = cubic_monomials::<4>();
    let terms: Vec<([u8; 4], u64)> = mons.into_iter().zip(coeffs).filter(|&(_, c)| c != 0).collect();
    let mut singular = Vec::new();
    let mut pow = [[0u64; 4]; 4];
    // Canonical representatives: first nonzero coordinate equal to 1.
    for lead in 0..4 {
        let free = 3 - lead;
        let total = p.pow(free as u32);
        for idx in 0..total {
            let mut x = [0u64; 4];
            x[lead] = 1;
            let mut r = idx;
            for slot in x.iter_mut().skip(lead + 1) {
                *slot = r % p;
                r /= p;
            }
            for v in 0..4 {
                pow[v][0] = 1;
                for k in 1..4 {
                    pow[v][k] = pow[v][k - 1] * x[v] % p;
                }
            }
            let mut val = 0u64;
            let mut grad = [0u64; 4];
            for (e, c) in &terms {
                let mono = e.iter().enumerate().fold(*c, |acc, (v, &k)| acc * pow[v][k as usize] % p);
                val = (val + mono) % p;
                for d in 0..4 {
                    if e[d] == 0 {
                        continue;
                    }
                    let mut t = c * u64::from(e[d]) % p;
                    for (v, &k) in e.iter().enumerate() {
                        let k = if v == d { k - 1 } else { k };
                        t = t * pow[v][k as usize] % p;
                    }
                    grad[d] = (grad[d] + t) % p;
                }
            }
            if val == 0 && grad.iter().all(|&g| g == 0) {
                singular.push(x);
                if singular.len() >= CAP {
                    return PrimeScan { prime: p, singular_points: singular };
                }
            }
        }
    }
    PrimeScan { prime: p, singular_points: singular }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussRat, Rat};
    use crate::proj::{collinear, line_through, point_on_line};
    use proptest::prelude::*;

    type P = ProjPoint<Rat>;

    fn f1() -> CubicSurface<Rat> {
        let form = CubicForm::from_int_terms(&[([0, 2, 0, 1], 1), ([3, 0, 0, 0], -1), ([0, 0, 3, 0], 1), ([0, 0, 1, 2], 1)]);
        CubicSurface::new(form).unwrap()
    }

    fn fermat() -> CubicSurface<Rat> {
        let form = CubicForm::from_int_terms(&[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 3, 0], 1), ([0, 0, 0, 3], 1)]);
        CubicSurface::new(form).unwrap()
    }

    fn cusp(t: i64) -> P {
        P::from_ints([t, 1, 0, t * t * t]).unwrap()
    }

    fn pt(c: [i64; 4]) -> P {
        P::from_ints(c).unwrap()
    }

    /// Independent oracle: expand f(s p + t q) by evaluating at four (s, t)
    /// values and interpolating the binary cubic.
    fn restricted_by_interpolation(s: &CubicSurface<Rat>, p: &P, q: &P) -> [Rat; 4] {
        let at = |a: i64, b: i64| {
            let v: [Rat; 4] = core::array::from_fn(|i| Rat::int(a) * &p.coords()[i] + Rat::int(b) * &q.coords()[i]);
            s.form().eval(&v)
        };
        // c(1,0)=c0, c(0,1)=c3, c(1,1)=c0+c1+c2+c3, c(1,-1)=c0-c1+c2-c3
        let c0 = at(1, 0);
        let c3 = at(0, 1);
        let plus = at(1, 1) - &c0 - &c3;
        let minus = at(1, -1) - &c0 + &c3;
        let half = Rat::frac(1, 2);
        let c2 = (plus.clone() + &minus) * &half;
        let c1 = (plus - &minus) * &half;
        [c0, c1, c2, c3]
    }

    #[test]
    fn restriction_on_section_points() {
        let s = f1();
        let c = s.restrict_to_line(&cusp(1), &cusp(2)).unwrap();
        assert!(c.coeffs[0].is_zero() && c.coeffs[3].is_zero());
        assert_eq!(c.coeffs, restricted_by_interpolation(&s, &cusp(1), &cusp(2)));
        let off = pt([1, 1, 1, 1]);
        let c = s.restrict_to_line(&cusp(1), &off).unwrap();
        assert_eq!(c.coeffs[3], s.eval(&off));
        assert!(!c.coeffs[3].is_zero());
        assert_eq!(s.restrict_to_line(&cusp(1), &cusp(1)), Err(Error::DegenerateLine));
    }

    #[test]
    fn third_point_on_cusp_section() {
        let s = f1();
        assert_eq!(s.third_intersection(&cusp(1), &cusp(2)).unwrap(), cusp(-3));
        assert_eq!(s.third_intersection(&cusp(2), &cusp(1)).unwrap(), cusp(-3));
        // the tangent at P(1) meets the section again at P(-2)
        assert_eq!(s.third_intersection(&cusp(1), &cusp(-2)).unwrap(), cusp(1));
    }

    #[test]
    fn contained_line_detection() {
        let xyw = CubicSurface::new(CubicForm::<Rat>::from_int_terms(&[([1, 1, 0, 1], 1)])).unwrap();
        let (p, q) = (pt([0, 0, 1, 0]), pt([0, 0, 1, 1]));
        assert!(xyw.line_in_surface(&p, &q));
        assert_eq!(xyw.third_intersection(&p, &q), Err(Error::ContainedLine));
        let s = f1();
        assert!(!s.line_in_surface(&cusp(1), &cusp(3)));
        assert!(!s.line_in_surface(&cusp(1), &pt([1, 1, 1, 1])));
        // w = 0, z = x lies in F1
        assert!(s.line_in_surface(&pt([1, 0, 1, 0]), &pt([0, 1, 0, 0])));
    }

    #[test]
    fn gradient_and_tangent_plane() {
        let s = f1();
        assert_eq!(s.gradient(&pt([0, 0, 0, 1])), [0, 0, 1, 0].map(Rat::int));
        assert_eq!(s.tangent_plane(&cusp(0)).unwrap(), PlaneP3::from_ints([0, 0, 0, 1]).unwrap());
        let p = cusp(3);
        assert!(s.tangent_plane(&p).unwrap().contains(&p));
        let cone = CubicSurface::new(CubicForm::<Rat>::from_int_terms(&[([0, 2, 0, 1], 1), ([3, 0, 0, 0], -1), ([0, 0, 3, 0], 1)])).unwrap();
        assert_eq!(cone.tangent_plane(&pt([0, 0, 0, 1])), Err(Error::SingularPoint));
    }

    #[test]
    fn goodness_on_fixtures() {
        let s = f1();
        for t in [1, 2, -3, 7] {
            let r = s.lines_through_point(&cusp(t)).unwrap();
            assert!(r.is_good, "P({t})");
            assert_eq!(r.lines_over_closure, 0);
        }
        let r = s.lines_through_point(&cusp(0)).unwrap();
        assert!(!r.is_good);
        assert!(r.witnesses.contains(&pt([1, 0, 1, 0])));
        for w in &r.witnesses {
            assert!(s.line_in_surface(&cusp(0), w));
        }
        let xyw = CubicSurface::new(CubicForm::<Rat>::from_int_terms(&[([1, 1, 0, 1], 1)])).unwrap();
        // (1:0:1:0) lies on two of the planes, where the surface is singular
        assert_eq!(xyw.lines_through_point(&pt([1, 0, 1, 0])), Err(Error::SingularPoint));
        let fermat = fermat();
        assert!(fermat.is_good(&pt([3, 4, 5, -6])).unwrap());
        assert!(!fermat.is_good(&pt([1, -1, 2, -2])).unwrap());
        let r = fermat.lines_through_point(&pt([1, -1, 0, 0])).unwrap();
        assert_eq!(r.lines_over_closure, 3);
    }

    #[test]
    fn eckardt_point_on_fermat_has_three_lines() {
        // (1:-1:0:0) lies on three of the 27 lines; only one of them is
        // rational, the others need a cube root of unity
        let fermat = fermat();
        let r = fermat.lines_through_point(&pt([1, -1, 0, 0])).unwrap();
        assert_eq!(r.lines_over_closure, 3);
        assert_eq!(r.witnesses.len(), 1);
    }

    #[test]
    fn plane_section_of_cusp_plane() {
        let s = f1();
        let pl = PlaneP3::from_ints([0, 0, 1, 0]).unwrap();
        let c = s.plane_section(&pl).unwrap();
        let expect = Cubic::<Rat, 3>::from_int_terms(&[([0, 2, 1], 1), ([3, 0, 0], -1)]);
        assert_eq!(c.form(), &expect);
        let xyw = CubicSurface::new(CubicForm::<Rat>::from_int_terms(&[([1, 1, 0, 1], 1)])).unwrap();
        assert_eq!(xyw.plane_section(&PlaneP3::from_ints([1, 0, 0, 0]).unwrap()).err(), Some(Error::PlaneInSurface));
    }

    #[test]
    fn mod_p_scan() {
        let s = f1();
        let r = s.check_smooth_mod_primes(&[7, 11, 13], DEFAULT_PRIME_BOUND).unwrap();
        assert!(r.iter().all(PrimeScan::is_clean));
        let cone = CubicSurface::new(CubicForm::<Rat>::from_int_terms(&[([0, 2, 0, 1], 1), ([3, 0, 0, 0], -1), ([0, 0, 3, 0], 1)])).unwrap();
        for scan in cone.check_smooth_mod_primes(&[5, 7, 11], DEFAULT_PRIME_BOUND).unwrap() {
            assert!(scan.singular_points.contains(&[0, 0, 0, 1]));
        }
        assert_eq!(s.check_smooth_mod_primes(&[223], DEFAULT_PRIME_BOUND), Err(Error::PrimeTooLarge(223, 211)));
        assert_eq!(s.check_smooth_mod_primes(&[9], DEFAULT_PRIME_BOUND), Err(Error::NotPrime(9)));
        let (certified, _) = s.certify_mod_primes(&[7, 11]).unwrap();
        assert_eq!(certified.certificate(), &SmoothnessCertificate::SampledOverPrimes(alloc::vec![7, 11]));
        let gauss = CubicSurface::new(CubicForm::<GaussRat>::from_terms([([3, 0, 0, 0], GaussRat::i())]).unwrap()).unwrap();
        assert_eq!(gauss.check_smooth_mod_primes(&[7], 211), Err(Error::NonIntegralForm));
    }

    proptest! {
        #[test]
        fn third_point_lies_on_chord_and_closes(a in -12i64..=12, b in -12i64..=12) {
            prop_assume!(a != b);
            let s = f1();
            let (p, q) = (cusp(a), cusp(b));
            let r = s.third_intersection(&p, &q).unwrap();
            prop_assert!(s.contains(&r));
            prop_assert!(point_on_line(&r, &line_through(&p, &q).unwrap()));
            prop_assert!(collinear(&p, &q, &r));
            prop_assert_eq!(r.clone(), cusp(-a - b));
            if r != p && r != q {
                prop_assert_eq!(s.third_intersection(&p, &r).unwrap(), q.clone());
                prop_assert_eq!(s.third_intersection(&r, &q).unwrap(), p.clone());
            }
        }

        #[test]
        fn goodness_is_scale_invariant(t in 1i64..=15, k in 2i64..=9) {
            let s = f1();
            let p = cusp(t);
            let scaled = P::new(p.coords().clone().map(|c| c * Rat::frac(-k, 5))).unwrap();
            prop_assert_eq!(s.lines_through_point(&p).unwrap(), s.lines_through_point(&scaled).unwrap());
        }
    }
}
