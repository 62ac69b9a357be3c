use alloc::string::String;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::proj::{meet_line_plane, PlaneP3, ProjPoint};

/// Element `((u, v), w)` of the affine-scaling group acting on the plane
/// `x = 0` by `[0:y:z:t] ↦ [0:wy : z+uy : t+vy]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineScaling<F: Scalar> {
    pub shift: (F, F),
    pub scale: F,
}

fn chart(msg: &str) -> Error {
    Error::Chart(String::from(msg))
}

impl<F: Scalar> AffineScaling<F> {
    pub fn new(u: F, v: F, w: F) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(AffineScaling { shift: (u, v), scale: w })
    }

    pub fn identity() -> Self {
        AffineScaling { shift: (F::zero(), F::zero()), scale: F::one() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn act(&self, p: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        let [x, y, z, t] = p.coords();
        if !x.is_zero() {
            return Err(chart("point is off the plane x = 0"));
        }
        let (u, v) = &self.shift;
        ProjPoint::new([F::zero(), self.scale.mul_ref(y), z.add_ref(&u.mul_ref(y)), t.add_ref(&v.mul_ref(y))])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let (u1, v1) = &self.shift;
        let (u2, v2) = &other.shift;
        AffineScaling {
            shift: (u2.add_ref(&other.scale.mul_ref(u1)), v2.add_ref(&other.scale.mul_ref(v1))),
            scale: self.scale.mul_ref(&other.scale),
        }
    }

    pub fn inverse(&self) -> Self {
        let w = self.scale.inv().expect("scale is nonzero");
        let (u, v) = &self.shift;
        AffineScaling { shift: (-(u.mul_ref(&w)), -(v.mul_ref(&w))), scale: w }
    }
}

fn coordinate_plane<F: Scalar>(k: usize) -> PlaneP3<F> {
    let mut d = [0i64; 4];
    d[k] = 1;
    PlaneP3::from_ints(d).expect("nonzero")
}

fn check_center<F: Scalar>(q: &ProjPoint<F>) -> Result<()> {
    if q.coords()[0].is_zero() || q.coords()[1].is_zero() {
        return Err(chart("center lies on x = 0 or y = 0"));
    }
    Ok(())
}

/// The point of `y = 0` collinear with `q` and `p ∈ {x = 0}`.
pub fn gamma_q<F: Scalar>(q: &ProjPoint<F>, p: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    check_center(q)?;
    if !p.coords()[0].is_zero() {
        return Err(chart("point is off the plane x = 0"));
    }
    meet_line_plane(p, q, &coordinate_plane(1))
}

/// The point of `x = 0` collinear with `q` and `p ∈ {y = 0}`.
pub fn gamma_q_inverse<F: Scalar>(q: &ProjPoint<F>, p: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    check_center(q)?;
    if !p.coords()[1].is_zero() {
        return Err(chart("point is off the plane y = 0"));
    }
    meet_line_plane(p, q, &coordinate_plane(0))
}

/// The element equal to `gamma_q_inverse(q', ·) ∘ gamma_q(q, ·)` on `x = 0`.
///
/// With `q = [a:1:c:d]` and `q' = [1:b':c':d']` this is
/// `((c'a − c, d'a − d), b'a)`.
pub fn three_planes_composite<F: Scalar>(q: &ProjPoint<F>, q2: &ProjPoint<F>) -> Result<AffineScaling<F>> {
    let q1 = q.coords();
    let s = q1[1].inv().ok_or_else(|| chart("second coordinate of q is zero"))?;
    let [a, _, c, d] = q1.clone().map(|x| x.mul_ref(&s));
    let r = q2.coords();
    let s2 = r[0].inv().ok_or_else(|| chart("first coordinate of q' is zero"))?;
    let [_, b2, c2, d2] = r.clone().map(|x| x.mul_ref(&s2));
    if a.is_zero() || b2.is_zero() {
        return Err(chart("center lies on x = 0 or y = 0"));
    }
    Ok(AffineScaling { shift: (c2.mul_ref(&a) - c, d2.mul_ref(&a) - d), scale: b2.mul_ref(&a) })
}
