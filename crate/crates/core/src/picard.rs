//! Divisor classes on a cubic surface and on its blow-up at a Geiser center.
//!
//! A class is written `a·l − Σ b_i e_i`, so the hyperplane class is
//! `(3; 1,1,1,1,1,1)` and the degree of `(a; b)` is `3a − Σ b_i`. On the
//! blow-up, index 0 of `b` is the exceptional class of the center.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivClass {
    pub a: i64,
    pub b: [i64; 6],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivClassBlow {
    pub a: i64,
    pub b: [i64; 7],
}

/// A curve class together with the multiplicity of the Geiser center on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveClassWithMult {
    pub cls: DivClass,
    pub m: i64,
}

impl DivClass {
    pub const fn new(a: i64, b: [i64; 6]) -> Self {
        DivClass { a, b }
    }

    pub const fn hyperplane() -> Self {
        DivClass { a: 3, b: [1; 6] }
    }

    pub fn degree(&self) -> i64 {
        3 * self.a - self.b.iter().sum::<i64>()
    }

    pub fn pairing(&self, other: &DivClass) -> i64 {
        self.a * other.a - self.b.iter().zip(&other.b).map(|(x, y)| x * y).sum::<i64>()
    }

    /// Arithmetic genus `½(a−1)(a−2) − ½ Σ b_i(b_i−1)`.
    pub fn arithmetic_genus(&self) -> i64 {
        ((self.a - 1) * (self.a - 2) - self.b.iter().map(|b| b * (b - 1)).sum::<i64>()) / 2
    }

    /// Adds an `e_0` coefficient.
    pub fn blow_up(&self, m: i64) -> DivClassBlow {
        let mut b = [0; 7];
        b[0] = m;
        b[1..].copy_from_slice(&self.b);
        DivClassBlow { a: self.a, b }
    }
}

impl DivClassBlow {
    pub const fn new(a: i64, b: [i64; 7]) -> Self {
        DivClassBlow { a, b }
    }

    /// `l` for `k = None`, `e_k` otherwise.
    pub fn basis(k: Option<usize>) -> Self {
        match k {
            None => DivClassBlow { a: 1, b: [0; 7] },
            Some(i) => {
                let mut b = [0; 7];
                b[i] = -1;
                DivClassBlow { a: 0, b }
            }
        }
    }

    pub fn all_basis() -> [Self; 8] {
        core::array::from_fn(|k| if k == 0 { Self::basis(None) } else { Self::basis(Some(k - 1)) })
    }

    pub fn pairing(&self, other: &DivClassBlow) -> i64 {
        self.a * other.a - self.b.iter().zip(&other.b).map(|(x, y)| x * y).sum::<i64>()
    }

    /// Drops the `e_0` coefficient, returning it separately.
    pub fn split(&self) -> (DivClass, i64) {
        let mut b = [0; 6];
        b.copy_from_slice(&self.b[1..]);
        (DivClass { a: self.a, b }, self.b[0])
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.a)?;
        for (k, b) in self.b.iter().enumerate() {
            write!(f, "{}{}", if k == 0 { "" } else { "," }, b)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for DivClassBlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.a)?;
        for (k, b) in self.b.iter().enumerate() {
            write!(f, "{}{}", if k == 0 { "" } else { "," }, b)?;
        }
        write!(f, ")")
    }
}

/// The action of the lifted Geiser involution on the blow-up:
/// `l ↦ 8l − 3Σ e_j` and `e_i ↦ 3l − Σ e_j − e_i`, sums over `j = 0..6`.
pub fn geiser_pic(d: &DivClassBlow) -> DivClassBlow {
    let s: i64 = d.b.iter().sum();
    DivClassBlow { a: 8 * d.a - 3 * s, b: d.b.map(|bj| 3 * d.a - s - bj) }
}

/// Image of a curve class under the Geiser involution, with the new
/// multiplicity of the center.
pub fn pushforward_curve_class(c: &CurveClassWithMult) -> Result<CurveClassWithMult> {
    if c.m < 0 {
        return Err(Error::Hypothesis("multiplicity must be nonnegative".into()));
    }
    let (cls, m) = geiser_pic(&c.cls.blow_up(c.m)).split();
    if cls.degree() <= 0 {
        return Err(Error::ExcludedCurve);
    }
    Ok(CurveClassWithMult { cls, m })
}

/// `(d, m) ↦ (2d − 3m, d − 2m)`.
pub fn deg_mult_step(d: i64, m: i64) -> (i64, i64) {
    (2 * d - 3 * m, d - 2 * m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusCheck {
    /// `Σ ½ r(r−1)` over the given multiplicities.
    pub lhs: i64,
    /// The arithmetic genus of the class.
    pub rhs: i64,
    pub feasible: bool,
    pub slack: i64,
}

/// Whether points of the given multiplicities fit on an irreducible curve of
/// class `cls`, by the genus bound.
pub fn genus_feasible(cls: &DivClass, mults: &[i64]) -> GenusCheck {
    let lhs = mults.iter().map(|r| r * (r - 1) / 2).sum::<i64>();
    let rhs = cls.arithmetic_genus();
    GenusCheck { lhs, rhs, feasible: lhs <= rhs, slack: rhs - lhs }
}

/// Outcome of searching for a class of degree `3m` that carries `points`
/// points of multiplicity `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReplay {
    pub degree: i64,
    pub lhs: i64,
    /// Class with the largest arithmetic genus among those searched.
    pub best_class: DivClass,
    pub best_rhs: i64,
    pub feasible: bool,
    /// The closed-form bound `2/9 d² − 2/3 d − 2`, as numerator over 9.
    pub closed_form_ninths: i64,
}

/// For each `a` up to `3d`, the most favourable `b` for the genus bound is
/// the balanced one (it minimises `Σ b_i(b_i−1)` for the fixed sum
/// `3a − d`), so the maximum over these is the maximum over all classes.
pub fn genus_replay(m: i64, points: usize) -> GenusReplay {
    let d = 3 * m;
    let lhs = points as i64 * m * (m - 1) / 2;
    let mut best: Option<(i64, DivClass)> = None;
    for a in 1..=3 * d {
        let sum = 3 * a - d;
        if sum < 0 {
            continue;
        }
        let (q, r) = (sum / 6, sum % 6);
        let b: [i64; 6] = core::array::from_fn(|i| q + i64::from((i as i64) < r));
        if b.iter().any(|&bi| bi > (a - 1).max(1)) {
            continue;
        }
        let cls = DivClass::new(a, b);
        let g = cls.arithmetic_genus();
        if best.as_ref().is_none_or(|(bg, _)| g > *bg) {
            best = Some((g, cls));
        }
    }
    let (best_rhs, best_class) = best.expect("some class has nonnegative coefficient sum");
    GenusReplay {
        degree: d,
        lhs,
        best_class,
        best_rhs,
        feasible: lhs <= best_rhs,
        closed_form_ninths: 2 * d * d - 6 * d - 18,
    }
}

/// A degree-3 class paired with its image `(6−α; 2−b_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeThreeCase {
    pub class: DivClass,
    pub paired: DivClass,
    /// Number of distinct permutations of `b`.
    pub orbit_size: usize,
    pub planar: bool,
    /// Arithmetic genus of the class and of the paired class.
    pub genus: (i64, i64),
}

/// All classes `(α; b)` of degree 3 with `1 ≤ α ≤ 3` and
/// `0 ≤ b_i ≤ max(α−1, 1)`, one per permutation orbit (`b` sorted
/// descending), before any genus condition.
pub fn degree3_candidates() -> Vec<DegreeThreeCase> {
    let mut out = Vec::new();
    for alpha in 1..=3i64 {
        let cap = (alpha - 1).max(1);
        let mut b = [0i64; 6];
        sorted_tuples(0, cap, 3 * alpha - 3, &mut b, &mut |b| {
            let class = DivClass::new(alpha, *b);
            let paired = DivClass::new(6 - alpha, b.map(|x| 2 - x));
            let planar = class == DivClass::hyperplane();
            out.push(DegreeThreeCase {
                class,
                paired,
                orbit_size: orbit_size(b),
                planar,
                genus: (class.arithmetic_genus(), paired.arithmetic_genus()),
            });
        });
    }
    out
}

/// The candidates that can be irreducible curves: both the class and its
/// pair have nonnegative arithmetic genus and the pair satisfies the same
/// coefficient bounds.
pub fn enumerate_degree3_classes() -> Vec<DegreeThreeCase> {
    degree3_candidates()
        .into_iter()
        .filter(|c| {
            let cap = (c.paired.a - 1).max(1);
            c.genus.0 >= 0 && c.genus.1 >= 0 && c.paired.b.iter().all(|&x| (0..=cap).contains(&x))
        })
        .collect()
}

fn sorted_tuples(pos: usize, cap: i64, left: i64, b: &mut [i64; 6], f: &mut impl FnMut(&[i64; 6])) {
    if pos == 6 {
        if left == 0 {
            f(b);
        }
        return;
    }
    let hi = if pos == 0 { cap } else { cap.min(b[pos - 1]) };
    for v in (0..=hi.min(left)).rev() {
        b[pos] = v;
        sorted_tuples(pos + 1, cap, left - v, b, f);
    }
}

fn orbit_size(b: &[i64; 6]) -> usize {
    let mut denom = 1usize;
    let mut k = 0;
    while k < 6 {
        let mut run = 1;
        while k + run < 6 && b[k + run] == b[k] {
            run += 1;
        }
        denom *= (1..=run).product::<usize>();
        k += run;
    }
    720 / denom
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndgamePairings {
    pub case: DegreeThreeCase,
    /// `α² − Σ b_i²`.
    pub self_pairing: i64,
    /// `β² − Σ b_i'²`.
    pub paired_self_pairing: i64,
    /// `αβ − Σ b_i b_i'`.
    pub cross_pairing: i64,
}

/// The three intersection numbers for every non-planar case.
pub fn pairing_checks_for_endgame() -> Vec<EndgamePairings> {
    enumerate_degree3_classes()
        .into_iter()
        .filter(|c| !c.planar)
        .map(|c| EndgamePairings {
            self_pairing: c.class.pairing(&c.class),
            paired_self_pairing: c.paired.pairing(&c.paired),
            cross_pairing: c.class.pairing(&c.paired),
            case: c,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h_blow() -> DivClassBlow {
        DivClass::hyperplane().blow_up(0)
    }

    #[test]
    fn pairing_and_degree() {
        assert_eq!(h_blow().pairing(&h_blow()), 3);
        let c = DivClass::new(5, [2, 1, 0, 3, 1, 1]);
        assert_eq!(c.pairing(&DivClass::hyperplane()), c.degree());
        assert_eq!(DivClassBlow::basis(None).pairing(&DivClassBlow::basis(Some(3))), 0);
        assert_eq!(DivClass::new(1, [1, 1, 0, 0, 0, 0]).degree(), 1);
        assert_eq!(DivClass::new(0, [0; 6]).degree(), 0);
    }

    #[test]
    fn geiser_action_on_basis() {
        assert_eq!(geiser_pic(&DivClassBlow::basis(None)), DivClassBlow::new(8, [3; 7]));
        assert_eq!(geiser_pic(&DivClassBlow::basis(Some(0))), DivClassBlow::new(3, [2, 1, 1, 1, 1, 1, 1]));
        let basis = DivClassBlow::all_basis();
        for d in &basis {
            assert_eq!(geiser_pic(&geiser_pic(d)), *d);
            for e in &basis {
                assert_eq!(geiser_pic(d).pairing(&geiser_pic(e)), d.pairing(e));
            }
        }
        let anticanonical = DivClassBlow::new(3, [1; 7]);
        assert_eq!(geiser_pic(&anticanonical), anticanonical);
    }

    #[test]
    fn pushforward_examples() {
        let plane = CurveClassWithMult { cls: DivClass::hyperplane(), m: 1 };
        assert_eq!(pushforward_curve_class(&plane).unwrap(), plane);
        let tangent = CurveClassWithMult { cls: DivClass::hyperplane(), m: 2 };
        assert_eq!(pushforward_curve_class(&tangent), Err(Error::ExcludedCurve));
    }

    #[test]
    fn deg_mult_examples() {
        assert_eq!(deg_mult_step(3, 1), (3, 1));
        assert_eq!(deg_mult_step(6, 2), (6, 2));
    }

    #[test]
    fn genus_examples() {
        let g = genus_feasible(&DivClass::hyperplane(), &[2]);
        assert_eq!((g.lhs, g.rhs, g.feasible, g.slack), (1, 1, true, 0));
        assert!(genus_feasible(&DivClass::new(2, [1, 1, 0, 0, 0, 0]), &[]).feasible);
    }

    #[test]
    fn multiplicity_two_replay_is_infeasible() {
        let r = genus_replay(2, 5);
        assert_eq!(r.degree, 6);
        assert_eq!(r.lhs, 5);
        assert_eq!(r.best_rhs, 4);
        assert_eq!(r.best_class, DivClass::new(6, [2; 6]));
        assert!(!r.feasible);
        assert_eq!(r.closed_form_ninths, 18);
        assert!(!genus_feasible(&r.best_class, &[2; 5]).feasible);
        assert!(genus_replay(1, 5).feasible);
    }

    #[test]
    fn degree_three_cases() {
        let all = degree3_candidates();
        assert_eq!(all.len(), 6);
        let cases = enumerate_degree3_classes();
        let classes: Vec<DivClass> = cases.iter().map(|c| c.class).collect();
        assert_eq!(
            classes,
            alloc::vec![
                DivClass::new(1, [0; 6]),
                DivClass::new(2, [1, 1, 1, 0, 0, 0]),
                DivClass::new(3, [2, 1, 1, 1, 1, 0]),
                DivClass::new(3, [1; 6]),
            ]
        );
        assert_eq!(cases[0].paired, DivClass::new(5, [2; 6]));
        assert!(cases[3].planar);
        assert_eq!(cases.iter().map(|c| c.orbit_size).collect::<Vec<_>>(), [1, 20, 30, 1]);
        for c in &cases {
            assert_eq!(c.class.degree(), 3);
            assert_eq!(c.paired.degree(), 3);
        }
    }

    #[test]
    fn endgame_pairings() {
        let p = pairing_checks_for_endgame();
        assert_eq!(p.len(), 3);
        for e in &p {
            assert_eq!((e.self_pairing, e.paired_self_pairing, e.cross_pairing), (1, 1, 5));
        }
    }

    proptest! {
        #[test]
        fn pushforward_is_an_involution(a in 1i64..40, b in prop::array::uniform6(0i64..8), m in 0i64..10) {
            let c = CurveClassWithMult { cls: DivClass::new(a, b), m };
            if let Ok(img) = pushforward_curve_class(&c) {
                prop_assert_eq!(img.cls.degree(), 2 * c.cls.degree() - 3 * m);
                prop_assert_eq!(img.m, c.cls.degree() - 2 * m);
                if img.m >= 0 {
                    prop_assert_eq!(pushforward_curve_class(&img).unwrap(), c);
                }
            }
        }

        #[test]
        fn deg_mult_step_squares_to_identity(d in -10_000i64..10_000, m in -10_000i64..10_000) {
            let (d1, m1) = deg_mult_step(d, m);
            prop_assert_eq!(deg_mult_step(d1, m1), (d, m));
        }
    }
}
