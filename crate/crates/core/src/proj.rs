//! Canonical projective points, lines and planes in P³, and points of P².
//!
//! Every constructor normalises its homogeneous vector with
//! [`Scalar::normalize_projective`], so equal projective objects have equal
//! representations and can be used directly as map keys.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{dot, lin_comb, Scalar};

fn canonical<F: Scalar, const N: usize>(mut v: [F; N]) -> Result<[F; N]> {
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroVector);
    }
    F::normalize_projective(&mut v);
    Ok(v)
}

fn write_coords<F: Scalar>(f: &mut fmt::Formatter<'_>, v: &[F]) -> fmt::Result {
    for (k, c) in v.iter().enumerate() {
        if k > 0 {
            write!(f, ":")?;
        }
        write!(f, "{}", c)?;
    }
    Ok(())
}

fn parse_coords<F: Scalar, const N: usize>(s: &str) -> Result<[F; N]> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    if parts.len() != N {
        return Err(Error::Parse(String::from(s)));
    }
    let mut out: [F; N] = core::array::from_fn(|_| F::zero());
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse()?;
    }
    Ok(out)
}

/// A point of P³ in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint<F> {
    coords: [F; 4],
}

impl<F: Scalar> ProjPoint<F> {
    pub fn new(coords: [F; 4]) -> Result<Self> {
        Ok(ProjPoint { coords: canonical(coords)? })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self> {
        Self::new(c.map(F::from_int))
    }

    pub fn coords(&self) -> &[F; 4] {
        &self.coords
    }

    pub fn into_coords(self) -> [F; 4] {
        self.coords
    }

    /// Standard basis vector `e_k`.
    pub fn basis(k: usize) -> Self {
        let c = core::array::from_fn(|i| if i == k { F::one() } else { F::zero() });
        ProjPoint { coords: c }
    }
}

impl<F: Scalar> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.coords)
    }
}

impl<F: Scalar> fmt::Debug for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_coords(f, &self.coords)?;
        write!(f, ")")
    }
}

impl<F: Scalar> FromStr for ProjPoint<F> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ProjPoint::new(parse_coords::<F, 4>(s)?)
    }
}

/// A point of P² (plane-internal coordinates) in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint2<F> {
    coords: [F; 3],
}

impl<F: Scalar> ProjPoint2<F> {
    pub fn new(coords: [F; 3]) -> Result<Self> {
        Ok(ProjPoint2 { coords: canonical(coords)? })
    }

    pub fn from_ints(c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(F::from_int))
    }

    pub fn coords(&self) -> &[F; 3] {
        &self.coords
    }
}

impl<F: Scalar> fmt::Display for ProjPoint2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.coords)
    }
}

impl<F: Scalar> fmt::Debug for ProjPoint2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_coords(f, &self.coords)?;
        write!(f, ")")
    }
}

impl<F: Scalar> FromStr for ProjPoint2<F> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ProjPoint2::new(parse_coords::<F, 3>(s)?)
    }
}

/// Index pairs of the Plücker coordinates, in storage order.
pub const PLUECKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A line of P³ keyed by canonical Plücker coordinates
/// `(p01, p02, p03, p12, p13, p23)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineP3<F> {
    pluecker: [F; 6],
}

impl<F: Scalar> LineP3<F> {
    pub fn pluecker(&self) -> &[F; 6] {
        &self.pluecker
    }

    /// `p01 p23 - p02 p13 + p03 p12`, zero for every genuine line.
    pub fn pluecker_relation(&self) -> F {
        let p = &self.pluecker;
        p[0].mul_ref(&p[5]) - p[1].mul_ref(&p[4]) + p[2].mul_ref(&p[3])
    }

    fn get(&self, i: usize, j: usize) -> F {
        if i == j {
            return F::zero();
        }
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        let k = PLUECKER_PAIRS.iter().position(|&pr| pr == (a, b)).expect("valid pair");
        if sign {
            -self.pluecker[k].clone()
        } else {
            self.pluecker[k].clone()
        }
    }

    /// Dual vector of the plane through this line and `r`, unnormalised;
    /// all zero exactly when `r` is on the line.
    pub fn join_vector(&self, r: &ProjPoint<F>) -> [F; 4] {
        let x = r.coords();
        // Cofactor expansion of det[p; q; r; X] along X, one 3x3 minor per
        // omitted column, each linear in the Plücker coordinates.
        let minor = |i: usize, j: usize, k: usize| -> F {
            x[i].mul_ref(&self.get(j, k)) - x[j].mul_ref(&self.get(i, k)) + x[k].mul_ref(&self.get(i, j))
        };
        [minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2)]
    }

    /// Two distinct points spanning the line, read off the Plücker matrix.
    pub fn spanning_points(&self) -> (ProjPoint<F>, ProjPoint<F>) {
        // Rows of the 4x4 skew matrix L_ij are points of the dual-line
        // picture; for the primal line the points are contractions of the
        // dual Plücker matrix with basis planes.
        let mut pts: Vec<ProjPoint<F>> = Vec::new();
        for k in 0..4 {
            // Intersection of the line with the plane x_k = 0.
            let v: [F; 4] = core::array::from_fn(|i| self.get(i, k));
            if let Ok(p) = ProjPoint::new(v) {
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            if pts.len() == 2 {
                break;
            }
        }
        let mut it = pts.into_iter();
        let a = it.next().expect("line meets coordinate planes");
        let b = it.next().expect("line has two distinct coordinate-plane points");
        (a, b)
    }
}

impl<F: Scalar> fmt::Display for LineP3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.pluecker)
    }
}

impl<F: Scalar> fmt::Debug for LineP3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[")?;
        write_coords(f, &self.pluecker)?;
        write!(f, "]")
    }
}

/// A plane of P³ keyed by the canonical coefficients of its linear form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneP3<F> {
    dual: [F; 4],
}

impl<F: Scalar> PlaneP3<F> {
    pub fn new(dual: [F; 4]) -> Result<Self> {
        Ok(PlaneP3 { dual: canonical(dual)? })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self> {
        Self::new(c.map(F::from_int))
    }

    pub fn dual(&self) -> &[F; 4] {
        &self.dual
    }

    pub fn contains(&self, p: &ProjPoint<F>) -> bool {
        dot(&self.dual, p.coords()).is_zero()
    }

    pub fn contains_line(&self, l: &LineP3<F>) -> bool {
        let (a, b) = l.spanning_points();
        self.contains(&a) && self.contains(&b)
    }

    /// Index of the first nonzero coefficient; the coordinate eliminated by
    /// [`PlaneP3::basis`].
    pub fn pivot(&self) -> usize {
        self.dual.iter().position(|c| !c.is_zero()).expect("nonzero plane")
    }

    /// Basis `e_j - (g_j/g_k) e_k` for the three `j != k`, `k` the pivot.
    /// A point of the plane has plane coordinates equal to its own
    /// coordinates with the pivot dropped.
    pub fn basis(&self) -> [[F; 4]; 3] {
        let k = self.pivot();
        let gk_inv = self.dual[k].inv().expect("pivot nonzero");
        let others: Vec<usize> = (0..4).filter(|&j| j != k).collect();
        core::array::from_fn(|n| {
            let j = others[n];
            core::array::from_fn(|i| {
                if i == j {
                    F::one()
                } else if i == k {
                    -self.dual[j].mul_ref(&gk_inv)
                } else {
                    F::zero()
                }
            })
        })
    }

    /// Embed plane coordinates back into P³.
    pub fn embed(&self, u: &ProjPoint2<F>) -> ProjPoint<F> {
        let b = self.basis();
        let c = u.coords();
        let v: [F; 4] = core::array::from_fn(|i| {
            b[0][i].mul_ref(&c[0]) + b[1][i].mul_ref(&c[1]) + b[2][i].mul_ref(&c[2])
        });
        ProjPoint::new(v).expect("basis is independent")
    }

    /// Plane coordinates of a point lying on the plane.
    pub fn project(&self, p: &ProjPoint<F>) -> Result<ProjPoint2<F>> {
        if !self.contains(p) {
            return Err(Error::Hypothesis(String::from("point not on plane")));
        }
        let k = self.pivot();
        let c = p.coords();
        let others: Vec<usize> = (0..4).filter(|&j| j != k).collect();
        ProjPoint2::new(core::array::from_fn(|n| c[others[n]].clone()))
    }
}

impl<F: Scalar> fmt::Display for PlaneP3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.dual)
    }
}

impl<F: Scalar> fmt::Debug for PlaneP3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pi[")?;
        write_coords(f, &self.dual)?;
        write!(f, "]")
    }
}

impl<F: Scalar> FromStr for PlaneP3<F> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PlaneP3::new(parse_coords::<F, 4>(s)?)
    }
}

fn det3<F: Scalar>(a: [&F; 3], b: [&F; 3], c: [&F; 3]) -> F {
    a[0].mul_ref(&(b[1].mul_ref(c[2]) - b[2].mul_ref(c[1]))) - a[1].mul_ref(&(b[0].mul_ref(c[2]) - b[2].mul_ref(c[0])))
        + a[2].mul_ref(&(b[0].mul_ref(c[1]) - b[1].mul_ref(c[0])))
}

fn minor3<F: Scalar>(p: &[F; 4], q: &[F; 4], r: &[F; 4], cols: [usize; 3]) -> F {
    det3(cols.map(|i| &p[i]), cols.map(|i| &q[i]), cols.map(|i| &r[i]))
}

const OMIT: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

/// Whether the 3x4 coordinate matrix of `p, q, r` has rank at most 2.
pub fn collinear<F: Scalar>(p: &ProjPoint<F>, q: &ProjPoint<F>, r: &ProjPoint<F>) -> bool {
    OMIT.iter().all(|&cols| minor3(p.coords(), q.coords(), r.coords(), cols).is_zero())
}

/// Unnormalised Plücker vector of the join of two coordinate vectors.
pub fn pluecker_of<F: Scalar>(p: &[F; 4], q: &[F; 4]) -> [F; 6] {
    PLUECKER_PAIRS.map(|(i, j)| p[i].mul_ref(&q[j]) - p[j].mul_ref(&q[i]))
}

pub fn line_through<F: Scalar>(p: &ProjPoint<F>, q: &ProjPoint<F>) -> Result<LineP3<F>> {
    let v = pluecker_of(p.coords(), q.coords());
    let pluecker = canonical(v).map_err(|_| Error::DegenerateLine)?;
    Ok(LineP3 { pluecker })
}

pub fn point_on_line<F: Scalar>(r: &ProjPoint<F>, line: &LineP3<F>) -> bool {
    line.join_vector(r).iter().all(Scalar::is_zero)
}

/// The plane spanned by a line and a point off it.
pub fn plane_through_line<F: Scalar>(line: &LineP3<F>, r: &ProjPoint<F>) -> Result<PlaneP3<F>> {
    PlaneP3::new(line.join_vector(r)).map_err(|_| Error::DegenerateSpan)
}

pub fn plane_span<F: Scalar>(p: &ProjPoint<F>, q: &ProjPoint<F>, r: &ProjPoint<F>) -> Result<PlaneP3<F>> {
    let (a, b, c) = (p.coords(), q.coords(), r.coords());
    let v = [minor3(a, b, c, OMIT[0]), -minor3(a, b, c, OMIT[1]), minor3(a, b, c, OMIT[2]), -minor3(a, b, c, OMIT[3])];
    PlaneP3::new(v).map_err(|_| Error::DegenerateSpan)
}

pub fn det4<F: Scalar>(m: [&[F; 4]; 4]) -> F {
    let mut acc = F::zero();
    for (col, cols) in OMIT.iter().enumerate() {
        let minor = minor3(m[1], m[2], m[3], *cols);
        let term = m[0][col].mul_ref(&minor);
        acc = if col % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

pub fn coplanar4<F: Scalar>(p: &ProjPoint<F>, q: &ProjPoint<F>, r: &ProjPoint<F>, s: &ProjPoint<F>) -> bool {
    det4([p.coords(), q.coords(), r.coords(), s.coords()]).is_zero()
}

/// The point where the line `pq` meets `plane`: `(π·q) p - (π·p) q`.
pub fn meet_line_plane<F: Scalar>(p: &ProjPoint<F>, q: &ProjPoint<F>, plane: &PlaneP3<F>) -> Result<ProjPoint<F>> {
    let a = dot(plane.dual(), q.coords());
    let b = dot(plane.dual(), p.coords());
    ProjPoint::new(lin_comb(&a, p.coords(), &b, q.coords())).map_err(|_| Error::ContainedLine)
}

/// Rank of a list of vectors, by exact elimination.
pub fn rank<F: Scalar, const N: usize>(rows: &[[F; N]]) -> usize {
    let mut m: Vec<[F; N]> = rows.to_vec();
    let mut r = 0;
    for col in 0..N {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][col].inv().expect("pivot");
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].mul_ref(&inv);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row.iter()) {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
