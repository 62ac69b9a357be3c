//! Reflections in the orthogonal group of `x·x = Σ x_i²`, the eigenspace of
//! a product of two reflections, the ruling parametrisation of the quadric
//! `x·x = 0`, and commutation tests between products of reflections.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{dot, proportional, GaussRat, Rat, Scalar};
use crate::proj::{collinear, rank, ProjPoint};

/// A 4×4 matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat4<F> {
    pub rows: [[F; 4]; 4],
}

impl<F: Scalar> Mat4<F> {
    pub fn identity() -> Self {
        Mat4 { rows: core::array::from_fn(|i| core::array::from_fn(|j| if i == j { F::one() } else { F::zero() })) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Mat4 {
            rows: core::array::from_fn(|i| {
                core::array::from_fn(|j| {
                    (0..4).fold(F::zero(), |acc, k| acc + self.rows[i][k].mul_ref(&other.rows[k][j]))
                })
            }),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat4 { rows: core::array::from_fn(|i| core::array::from_fn(|j| self.rows[j][i].clone())) }
    }

    pub fn apply(&self, v: &[F; 4]) -> [F; 4] {
        core::array::from_fn(|i| dot(&self.rows[i], v))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Mat4 { rows: core::array::from_fn(|i| core::array::from_fn(|j| self.rows[i][j].sub_ref(&other.rows[i][j]))) }
    }

    /// `MᵀM = I`.
    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self) == Self::identity()
    }

    /// Equality up to a nonzero scalar, entry by entry.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        let a: Vec<F> = self.rows.iter().flatten().cloned().collect();
        let b: Vec<F> = other.rows.iter().flatten().cloned().collect();
        let nonzero = |v: &[F]| v.iter().any(|x| !x.is_zero());
        nonzero(&a) && nonzero(&b) && proportional(&a, &b)
    }

    pub fn det(&self) -> F {
        let r = &self.rows;
        crate::proj::det4([&r[0], &r[1], &r[2], &r[3]])
    }
}

pub fn on_quadric<F: Scalar>(p: &ProjPoint<F>) -> bool {
    dot(p.coords(), p.coords()).is_zero()
}

/// `v ↦ v − 2 (x·v)/(x·x) x`: `−1` on `x`, identity on `x⊥`.
pub fn reflection<F: Scalar>(x: &ProjPoint<F>) -> Result<Mat4<F>> {
    let c = x.coords();
    let n = dot(c, c);
    let k = F::from_int(2).div_ref(&n).map_err(|_| Error::IsotropicCenter)?;
    let mut m: Mat4<F> = Mat4::identity();
    for i in 0..4 {
        for j in 0..4 {
            m.rows[i][j] = m.rows[i][j].sub_ref(&k.mul_ref(&c[i]).mul_ref(&c[j]));
        }
    }
    Ok(m)
}

/// Image of a point under the reflection with center `x`.
pub fn reflect_point<F: Scalar>(x: &ProjPoint<F>, y: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    ProjPoint::new(reflection(x)?.apply(y.coords()))
}

/// Basis of the kernel of the given rows, one vector per free column.
pub fn kernel<F: Scalar>(rows: &[[F; 4]]) -> Vec<[F; 4]> {
    let mut m: Vec<[F; 4]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("pivot");
        m[r] = m[r].clone().map(|x| x.mul_ref(&inv));
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pr.iter()) {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..4)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: [F; 4] = core::array::from_fn(|_| F::zero());
            v[free] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span<F: Scalar>(a: &[[F; 4]], b: &[[F; 4]]) -> bool {
    let ra = rank(a);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rank(b) && ra == rank(&both)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSpace<F> {
    /// Basis of the eigenvalue-1 eigenspace of `R_a R_b`.
    pub eigenspace: Vec<[F; 4]>,
    /// Basis of `⟨a, b⟩⊥`.
    pub perp: Vec<[F; 4]>,
    pub equal: bool,
}

pub fn fixed_space_of_product<F: Scalar>(a: &ProjPoint<F>, b: &ProjPoint<F>) -> Result<FixedSpace<F>> {
    if a == b {
        return Err(Error::EqualCenters);
    }
    let prod = reflection(a)?.mul(&reflection(b)?);
    let eigenspace = kernel(&prod.sub(&Mat4::identity()).rows);
    let perp = kernel(&[a.coords().clone(), b.coords().clone()]);
    let equal = same_span(&eigenspace, &perp);
    Ok(FixedSpace { eigenspace, perp, equal })
}

/// The point of `Σ x_i² = 0` with ruling coordinates `(s:t)` and `(p:q)`.
///
/// In the coordinates `u = (x0+ix1, x0−ix1, x2+ix3, x2−ix3)` the quadric is
/// `u0u1 + u2u3 = 0` and the point is `u = (sp, tq, sq, −tp)`.
pub fn segre_point(s: &GaussRat, t: &GaussRat, p: &GaussRat, q: &GaussRat) -> Result<ProjPoint<GaussRat>> {
    if (s.is_zero() && t.is_zero()) || (p.is_zero() && q.is_zero()) {
        return Err(Error::DegenerateP1);
    }
    let u = [s * p, t * q, s * q, -(t * p)];
    let half = GaussRat::from(Rat::frac(1, 2));
    // 1/(2i) = −i/2
    let inv_2i = GaussRat::new(Rat::zero(), Rat::frac(-1, 2));
    ProjPoint::new([
        (&u[0] + &u[1]) * &half,
        (&u[0] - &u[1]) * &inv_2i,
        (&u[2] + &u[3]) * &half,
        (&u[2] - &u[3]) * &inv_2i,
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationReport {
    /// `a ∉ {b} ∪ b⊥`.
    pub hypothesis_holds: bool,
    /// `R_c R_a` and `R_b R_c` commute up to scalar.
    pub commutes: bool,
    pub c_on_line: bool,
    pub c_on_perp: bool,
}

impl CommutationReport {
    /// Commuting forces `c` onto the line `ab` or its orthogonal line.
    pub fn consistent(&self) -> bool {
        !self.hypothesis_holds || !self.commutes || self.c_on_line || self.c_on_perp
    }
}

pub fn commutation_experiment<F: Scalar>(a: &ProjPoint<F>, b: &ProjPoint<F>, c: &ProjPoint<F>) -> Result<CommutationReport> {
    let (ra, rb, rc) = (reflection(a)?, reflection(b)?, reflection(c)?);
    let hypothesis_holds = a != b && !dot(a.coords(), b.coords()).is_zero();
    let p1 = rc.mul(&ra);
    let p2 = rb.mul(&rc);
    let commutes = p1.mul(&p2).projectively_equal(&p2.mul(&p1));
    let c_on_line = a != b && collinear(a, b, c);
    let c_on_perp = dot(c.coords(), a.coords()).is_zero() && dot(c.coords(), b.coords()).is_zero();
    Ok(CommutationReport { hypothesis_holds, commutes, c_on_line, c_on_perp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type G = GaussRat;
    type P = ProjPoint<G>;

    fn gp(c: [(i64, i64); 4]) -> P {
        P::new(c.map(|(r, i)| G::ints(r, i))).unwrap()
    }

    fn real(c: [i64; 4]) -> P {
        P::from_ints(c).unwrap()
    }

    #[test]
    fn coordinate_reflection() {
        let r = reflection(&real([1, 0, 0, 0])).unwrap();
        let mut d = Mat4::<G>::identity();
        d.rows[0][0] = G::from_int(-1);
        assert_eq!(r, d);
        assert_eq!(reflection(&gp([(1, 0), (0, 1), (0, 0), (0, 0)])), Err(Error::IsotropicCenter));
    }

    #[test]
    fn product_eigenspace_of_coordinate_centers() {
        let fs = fixed_space_of_product(&real([1, 0, 0, 0]), &real([0, 1, 0, 0])).unwrap();
        assert!(fs.equal);
        assert!(same_span(&fs.eigenspace, &[[0, 0, 1, 0], [0, 0, 0, 1]].map(|r| r.map(G::from_int))));
        assert_eq!(fixed_space_of_product(&real([1, 2, 0, 0]), &real([1, 2, 0, 0])), Err(Error::EqualCenters));
    }

    #[test]
    fn segre_lines() {
        let (s, t) = (G::from_int(2), G::from_int(-3));
        let pts: Vec<P> =
            [(1, 1), (2, 5), (-1, 4)].iter().map(|&(p, q)| segre_point(&s, &t, &G::from_int(p), &G::from_int(q)).unwrap()).collect();
        for p in &pts {
            assert!(on_quadric(p));
        }
        assert!(collinear(&pts[0], &pts[1], &pts[2]));
        assert_eq!(segre_point(&G::zero(), &G::zero(), &G::one(), &G::one()), Err(Error::DegenerateP1));
    }

    #[test]
    fn commutation_on_and_off_the_line() {
        let (a, b) = (real([1, 2, 0, 1]), real([0, 1, 3, 1]));
        let on = real([1, 3, 3, 2]);
        let r = commutation_experiment(&a, &b, &on).unwrap();
        assert!(r.hypothesis_holds && r.commutes && r.c_on_line);
        let off = real([2, 0, 1, 5]);
        let r = commutation_experiment(&a, &b, &off).unwrap();
        assert!(!r.commutes && r.consistent());
    }

    fn nonzero_gauss_point() -> impl Strategy<Value = P> {
        prop::array::uniform4((-4i64..=4, -4i64..=4)).prop_filter_map("nonzero", |c| P::new(c.map(|(r, i)| G::ints(r, i))).ok())
    }

    proptest! {
        #[test]
        fn reflections_are_orthogonal_involutions(x in nonzero_gauss_point()) {
            prop_assume!(!on_quadric(&x));
            let r = reflection(&x).unwrap();
            prop_assert!(r.is_orthogonal());
            prop_assert_eq!(r.mul(&r), Mat4::identity());
            prop_assert_eq!(r.det(), G::from_int(-1));
        }

        #[test]
        fn reflections_preserve_the_quadric(x in nonzero_gauss_point(), s in -5i64..=5, t in -5i64..=5, p in -5i64..=5, q in -5i64..=5) {
            prop_assume!(!on_quadric(&x) && (s, t) != (0, 0) && (p, q) != (0, 0));
            let y = segre_point(&G::from_int(s), &G::from_int(t), &G::from_int(p), &G::from_int(q)).unwrap();
            let z = reflect_point(&x, &y).unwrap();
            prop_assert!(on_quadric(&z));
            prop_assert!(collinear(&x, &y, &z));
        }

        #[test]
        fn eigenspace_is_the_orthogonal_line(a in nonzero_gauss_point(), b in nonzero_gauss_point()) {
            prop_assume!(!on_quadric(&a) && !on_quadric(&b) && a != b);
            let fs = fixed_space_of_product(&a, &b).unwrap();
            prop_assert!(fs.equal);
            prop_assert_eq!(fs.eigenspace.len(), 2);
        }
    }
}
