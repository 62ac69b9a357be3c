//! Plane cubic curves: multiplicities, singular points, the chord-tangent
//! operation and the group law it induces on the nonsingular locus.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{dot, lin_comb, Scalar, UniPoly};
use crate::forms::Cubic;
use crate::proj::{PlaneP3, ProjPoint, ProjPoint2};
use crate::surface::distinct_root_count;

/// Ternary cubic in `x, y, w`.
pub type TernaryCubic<F> = Cubic<F, 3>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCubic<F: Scalar> {
    form: TernaryCubic<F>,
    embedding: Option<PlaneP3<F>>,
}

/// A point of a plane cubic together with its smoothness.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurvePoint<F: Scalar> {
    pub point: ProjPoint2<F>,
    pub nonsingular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoints<F: Scalar> {
    pub points: Vec<ProjPoint2<F>>,
    /// Every singular point over the algebraic closure is in `points`.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultBound {
    pub multiplicities: Vec<u32>,
    /// Largest multiplicity sum over the tested subsets.
    pub worst_sum: u32,
    pub holds: bool,
}

fn unit3<F: Scalar>(k: usize) -> [F; 3] {
    core::array::from_fn(|i| if i == k { F::one() } else { F::zero() })
}

impl<F: Scalar> PlaneCubic<F> {
    pub fn new(form: TernaryCubic<F>) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::DegenerateSurface);
        }
        Ok(PlaneCubic { form, embedding: None })
    }

    pub fn with_embedding(form: TernaryCubic<F>, plane: PlaneP3<F>) -> Result<Self> {
        let mut c = Self::new(form)?;
        c.embedding = Some(plane);
        Ok(c)
    }

    pub fn form(&self) -> &TernaryCubic<F> {
        &self.form
    }

    pub fn embedding(&self) -> Option<&PlaneP3<F>> {
        self.embedding.as_ref()
    }

    pub fn contains(&self, p: &ProjPoint2<F>) -> bool {
        self.form.eval(p.coords()).is_zero()
    }

    pub fn gradient(&self, p: &ProjPoint2<F>) -> [F; 3] {
        self.form.gradient(p.coords())
    }

    pub fn point(&self, p: ProjPoint2<F>) -> Result<CurvePoint<F>> {
        if !self.contains(&p) {
            return Err(Error::NotOnCurve);
        }
        let nonsingular = !self.gradient(&p).iter().all(Scalar::is_zero);
        Ok(CurvePoint { point: p, nonsingular })
    }

    /// Plane coordinates of a point of P³ lying in the embedding plane.
    pub fn point_from_space(&self, p: &ProjPoint<F>) -> Result<CurvePoint<F>> {
        let plane = self.embedding.as_ref().ok_or(Error::Hypothesis("curve has no embedding".into()))?;
        self.point(plane.project(p)?)
    }

    pub fn lift(&self, p: &CurvePoint<F>) -> Option<ProjPoint<F>> {
        self.embedding.as_ref().map(|pl| pl.embed(&p.point))
    }

    /// Lowest degree of the local expansion of the curve at `p`.
    pub fn multiplicity(&self, p: &ProjPoint2<F>) -> Result<u32> {
        if !self.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let c = p.coords();
        let k = c.iter().position(|x| !x.is_zero()).expect("nonzero point");
        let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
        // Substituting p·h + y_a e_a + y_b e_b and setting h = 1 gives the
        // affine expansion around p.
        let local: Cubic<F, 3> = self.form.substitute(&[c.clone(), unit3(others[0]), unit3(others[1])]);
        let m = local.terms().map(|(e, _)| u32::from(e[1] + e[2])).min().expect("nonzero form");
        Ok(m)
    }

    fn require_nonsingular(&self, p: &CurvePoint<F>) -> Result<()> {
        if !self.contains(&p.point) {
            return Err(Error::NotOnCurve);
        }
        if self.gradient(&p.point).iter().all(Scalar::is_zero) {
            return Err(Error::SingularPoint);
        }
        Ok(())
    }

    /// Third intersection of the chord `xy` (the tangent when `x = y`).
    pub fn chord_op(&self, x: &CurvePoint<F>, y: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.require_nonsingular(x)?;
        self.require_nonsingular(y)?;
        let xc = x.point.coords();
        let r = if x.point != y.point {
            let yc = y.point.coords();
            let beta = dot(&self.form.gradient(xc), yc);
            let gamma = dot(&self.form.gradient(yc), xc);
            if beta.is_zero() && gamma.is_zero() {
                return Err(Error::ContainedLine);
            }
            ProjPoint2::new(lin_comb(&gamma, xc, &beta, yc))?
        } else {
            let v = self.tangent_direction(&x.point);
            let fv = self.form.eval(&v);
            let gv = dot(&self.form.gradient(&v), xc);
            if fv.is_zero() && gv.is_zero() {
                return Err(Error::ContainedLine);
            }
            ProjPoint2::new(lin_comb(&fv, xc, &gv, &v))?
        };
        self.point(r)
    }

    /// A point on the tangent line at `p` other than `p`.
    fn tangent_direction(&self, p: &ProjPoint2<F>) -> [F; 3] {
        let g = self.gradient(p);
        let k = g.iter().position(|c| !c.is_zero()).expect("nonsingular");
        let inv = g[k].inv().expect("nonzero");
        let pc = p.coords();
        for j in (0..3).filter(|&j| j != k) {
            let mut v: [F; 3] = unit3(j);
            v[k] = -g[j].mul_ref(&inv);
            if !crate::field::proportional(&v, pc) {
                return v;
            }
        }
        unreachable!("tangent line is a line")
    }

    /// `x + y = u ∘ (x ∘ y)` with neutral element `u`.
    pub fn group_add(&self, u: &CurvePoint<F>, x: &CurvePoint<F>, y: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let xy = self.chord_op(x, y)?;
        self.chord_op(u, &xy)
    }

    /// The `z` with `x + z = u`, namely `x ∘ (u ∘ u)`.
    pub fn group_neg(&self, u: &CurvePoint<F>, x: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let uu = self.chord_op(u, u)?;
        self.chord_op(x, &uu)
    }

    /// Checks `x ∘ y = (u ∘ u) − x − y` in the group with neutral element `u`.
    pub fn check_circ_identity(&self, u: &CurvePoint<F>, x: &CurvePoint<F>, y: &CurvePoint<F>) -> Result<bool> {
        let lhs = self.chord_op(x, y)?;
        let uu = self.chord_op(u, u)?;
        let nx = self.group_neg(u, x)?;
        let ny = self.group_neg(u, y)?;
        let rhs = self.group_add(u, &self.group_add(u, &uu, &nx)?, &ny)?;
        Ok(lhs.point == rhs.point)
    }

    fn partials(&self) -> [Vec<([u8; 3], F)>; 3] {
        core::array::from_fn(|d| {
            self.form
                .terms()
                .filter(|(e, _)| e[d] > 0)
                .map(|(e, c)| {
                    let mut e2 = e;
                    e2[d] -= 1;
                    (e2, c.mul_ref(&F::from_int(i64::from(e[d]))))
                })
                .collect()
        })
    }

    /// Field-rational singular points, by resultant elimination in the chart
    /// `w = 1` and a direct search of the line `w = 0`.
    pub fn singular_points_rational(&self) -> SingularPoints<F> {
        let partials = self.partials();
        let mut points = Vec::new();
        let mut complete = true;

        // Chart w = 1: each partial as a polynomial in y over Q[x].
        let biv: Vec<Vec<UniPoly<F>>> = partials.iter().filter(|p| !p.is_empty()).map(|p| chart_w1(p)).collect();
        let mut xcand = UniPoly::zero();
        for i in 0..biv.len() {
            for j in (i + 1)..biv.len() {
                let r = resultant_y(&biv[i], &biv[j]);
                if !r.is_zero() {
                    xcand = UniPoly::gcd(&xcand, &r).expect("nonzero");
                }
            }
        }
        if biv.len() == 1 || xcand.is_zero() {
            complete = false;
        } else {
            let (xs, exhaustive) = xcand.roots_in_field();
            complete &= exhaustive && xs.len() == distinct_root_count(&xcand);
            for x0 in xs {
                let ys: Vec<UniPoly<F>> = biv.iter().map(|b| eval_x(b, &x0)).filter(|p| !p.is_zero()).collect();
                if ys.is_empty() {
                    complete = false;
                    continue;
                }
                let mut g = UniPoly::zero();
                for p in &ys {
                    g = UniPoly::gcd(&g, p).expect("nonzero");
                }
                let (roots, exhaustive) = g.roots_in_field();
                complete &= exhaustive && roots.len() == distinct_root_count(&g);
                for y0 in roots {
                    let cand = ProjPoint2::new([x0.clone(), y0, F::one()]).expect("affine");
                    if self.is_singular(&cand) {
                        points.push(cand);
                    }
                }
            }
        }

        // Line w = 0, chart y = 1.
        let at_inf: Vec<UniPoly<F>> = partials
            .iter()
            .map(|p| {
                let mut c = vec![F::zero(); 3];
                for (e, v) in p.iter().filter(|(e, _)| e[2] == 0) {
                    c[e[0] as usize] = c[e[0] as usize].add_ref(v);
                }
                UniPoly::new(c)
            })
            .filter(|p| !p.is_zero())
            .collect();
        if at_inf.is_empty() {
            complete = false;
        } else {
            let mut g = UniPoly::zero();
            for p in &at_inf {
                g = UniPoly::gcd(&g, p).expect("nonzero");
            }
            let (roots, exhaustive) = g.roots_in_field();
            complete &= exhaustive && roots.len() == distinct_root_count(&g);
            for x0 in roots {
                let cand = ProjPoint2::new([x0, F::one(), F::zero()]).expect("nonzero");
                if self.is_singular(&cand) {
                    points.push(cand);
                }
            }
        }
        let corner = ProjPoint2::new(unit3(0)).expect("nonzero");
        if self.is_singular(&corner) {
            points.push(corner);
        }
        points.sort();
        points.dedup();
        SingularPoints { points, complete }
    }

    pub fn is_singular(&self, p: &ProjPoint2<F>) -> bool {
        self.contains(p) && self.gradient(p).iter().all(Scalar::is_zero)
    }

    /// Multiplicity bound for distinct points of an irreducible plane cubic:
    /// any two have multiplicities summing to at most 3, and so do three
    /// collinear ones.
    pub fn mult_bound_check(&self, pts: &[ProjPoint2<F>]) -> Result<MultBound> {
        let mults: Vec<u32> = pts.iter().map(|p| self.multiplicity(p)).collect::<Result<_>>()?;
        let mut worst = 0;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if pts[i] == pts[j] {
                    return Err(Error::Hypothesis("points must be distinct".into()));
                }
                worst = worst.max(mults[i] + mults[j]);
                for k in (j + 1)..pts.len() {
                    if collinear2(&pts[i], &pts[j], &pts[k]) {
                        worst = worst.max(mults[i] + mults[j] + mults[k]);
                    }
                }
            }
        }
        Ok(MultBound { multiplicities: mults, worst_sum: worst, holds: worst <= 3 })
    }
}

pub fn collinear2<F: Scalar>(a: &ProjPoint2<F>, b: &ProjPoint2<F>, c: &ProjPoint2<F>) -> bool {
    let (a, b, c) = (a.coords(), b.coords(), c.coords());
    let det = a[0].mul_ref(&(b[1].mul_ref(&c[2]) - b[2].mul_ref(&c[1]))) - a[1].mul_ref(&(b[0].mul_ref(&c[2]) - b[2].mul_ref(&c[0])))
        + a[2].mul_ref(&(b[0].mul_ref(&c[1]) - b[1].mul_ref(&c[0])));
    det.is_zero()
}

/// Quadratic terms in `x, y, w` as a polynomial in `y` with coefficients
/// in `Q[x]`, at `w = 1`.
fn chart_w1<F: Scalar>(terms: &[([u8; 3], F)]) -> Vec<UniPoly<F>> {
    let mut rows: Vec<Vec<F>> = vec![vec![F::zero(); 3]; 3];
    for (e, c) in terms {
        let slot = &mut rows[e[1] as usize][e[0] as usize];
        *slot = slot.add_ref(c);
    }
    let mut out: Vec<UniPoly<F>> = rows.into_iter().map(UniPoly::new).collect();
    while out.last().is_some_and(UniPoly::is_zero) {
        out.pop();
    }
    out
}

fn eval_x<F: Scalar>(b: &[UniPoly<F>], x0: &F) -> UniPoly<F> {
    UniPoly::new(b.iter().map(|c| c.eval(x0)).collect())
}

/// `Res_y(a, b)` for polynomials in `y` over `F[x]`; when neither involves
/// `y`, their gcd, which vanishes on the same `x` values.
fn resultant_y<F: Scalar>(a: &[UniPoly<F>], b: &[UniPoly<F>]) -> UniPoly<F> {
    if a.is_empty() || b.is_empty() {
        return UniPoly::zero();
    }
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 && n == 0 {
        return UniPoly::gcd(&a[0], &b[0]).unwrap_or_else(|_| UniPoly::zero());
    }
    let size = m + n;
    let mut mat: Vec<Vec<UniPoly<F>>> = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    det_poly(&mat)
}

fn det_poly<F: Scalar>(m: &[Vec<UniPoly<F>>]) -> UniPoly<F> {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(F::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly<F>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][col] * &det_poly(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use proptest::prelude::*;

    type P2 = ProjPoint2<Rat>;

    fn cusp_curve() -> PlaneCubic<Rat> {
        PlaneCubic::new(Cubic::from_int_terms(&[([0, 2, 1], 1), ([3, 0, 0], -1)])).unwrap()
    }

    fn cp(c: &PlaneCubic<Rat>, t: i64) -> CurvePoint<Rat> {
        c.point(P2::from_ints([t, 1, t * t * t]).unwrap()).unwrap()
    }

    #[test]
    fn cusp_multiplicities() {
        let c = cusp_curve();
        assert_eq!(c.multiplicity(&P2::from_ints([0, 0, 1]).unwrap()).unwrap(), 2);
        assert_eq!(c.multiplicity(&P2::from_ints([1, 1, 1]).unwrap()).unwrap(), 1);
        assert_eq!(c.multiplicity(&P2::from_ints([1, 0, 1]).unwrap()), Err(Error::NotOnCurve));
    }

    #[test]
    fn multiplicity_matches_derivative_order() {
        // oracle: a point has multiplicity >= 2 exactly when the gradient
        // vanishes there; three concurrent lines give a triple point
        let star = PlaneCubic::<Rat>::new(Cubic::from_int_terms(&[([3, 0, 0], 1), ([0, 3, 0], -1)])).unwrap();
        assert_eq!(star.multiplicity(&P2::from_ints([0, 0, 1]).unwrap()).unwrap(), 3);
        let node = PlaneCubic::<Rat>::new(Cubic::from_int_terms(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)])).unwrap();
        let origin = P2::from_ints([0, 0, 1]).unwrap();
        assert_eq!(node.multiplicity(&origin).unwrap(), 2);
        assert!(node.is_singular(&origin));
    }

    #[test]
    fn chord_and_tangent_on_cusp() {
        let c = cusp_curve();
        assert_eq!(c.chord_op(&cp(&c, 1), &cp(&c, 2)).unwrap(), cp(&c, -3));
        assert_eq!(c.chord_op(&cp(&c, 2), &cp(&c, 1)).unwrap(), cp(&c, -3));
        assert_eq!(c.chord_op(&cp(&c, 3), &cp(&c, 3)).unwrap(), cp(&c, -6));
        // P(0) is a flex
        assert_eq!(c.chord_op(&cp(&c, 0), &cp(&c, 0)).unwrap(), cp(&c, 0));
        let cusp = c.point(P2::from_ints([0, 0, 1]).unwrap()).unwrap();
        assert!(!cusp.nonsingular);
        assert_eq!(c.chord_op(&cusp, &cp(&c, 1)), Err(Error::SingularPoint));
    }

    #[test]
    fn group_law_on_cusp() {
        let c = cusp_curve();
        let u = cp(&c, 0);
        assert_eq!(c.group_add(&u, &cp(&c, 4), &cp(&c, -7)).unwrap(), cp(&c, -3));
        assert_eq!(c.group_add(&u, &cp(&c, 5), &u).unwrap(), cp(&c, 5));
        assert_eq!(c.group_neg(&u, &cp(&c, 5)).unwrap(), cp(&c, -5));
        assert!(c.check_circ_identity(&u, &cp(&c, 1), &cp(&c, 2)).unwrap());
        assert!(c.check_circ_identity(&u, &u, &u).unwrap());
    }

    #[test]
    fn singular_points_examples() {
        let s = cusp_curve().singular_points_rational();
        assert_eq!(s.points, alloc::vec![P2::from_ints([0, 0, 1]).unwrap()]);
        assert!(s.complete);
        let fermat = PlaneCubic::<Rat>::new(Cubic::from_int_terms(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)])).unwrap();
        let s = fermat.singular_points_rational();
        assert!(s.points.is_empty() && s.complete);
        let triangle = PlaneCubic::<Rat>::new(Cubic::from_int_terms(&[([1, 1, 1], 1)])).unwrap();
        let s = triangle.singular_points_rational();
        assert_eq!(s.points.len(), 3);
        assert!(s.complete);
    }

    #[test]
    fn mult_bounds() {
        let c = cusp_curve();
        let cusp = P2::from_ints([0, 0, 1]).unwrap();
        let p1 = P2::from_ints([1, 1, 1]).unwrap();
        let b = c.mult_bound_check(&[cusp.clone(), p1.clone()]).unwrap();
        assert_eq!(b.worst_sum, 3);
        assert!(b.holds);
        let pts: Vec<P2> = [1, 2, -3].iter().map(|&t| P2::from_ints([t, 1, t * t * t]).unwrap()).collect();
        let b = c.mult_bound_check(&pts).unwrap();
        assert_eq!((b.worst_sum, b.holds), (3, true));
    }

    proptest! {
        #[test]
        fn cusp_group_is_parameter_addition(a in -15i64..=15, b in -15i64..=15, d in -15i64..=15) {
            let c = cusp_curve();
            let u = cp(&c, 0);
            let (x, y, z) = (cp(&c, a), cp(&c, b), cp(&c, d));
            prop_assert_eq!(c.chord_op(&x, &y).unwrap(), cp(&c, -a - b));
            let xy = c.group_add(&u, &x, &y).unwrap();
            prop_assert_eq!(&xy, &cp(&c, a + b));
            let left = c.group_add(&u, &xy, &z).unwrap();
            let right = c.group_add(&u, &x, &c.group_add(&u, &y, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert!(c.check_circ_identity(&u, &x, &y).unwrap());
        }
    }
}
