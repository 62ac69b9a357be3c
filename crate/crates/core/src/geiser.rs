//! Geiser involutions as point maps, words of involutions and strongly fixed
//! points.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::proj::{collinear, line_through, plane_span, LineP3, PlaneP3, ProjPoint};
use crate::surface::CubicSurface;

/// `γ_a(x)`: the third point of the line `ax` on the surface.
pub fn geiser_apply<F: Scalar>(s: &CubicSurface<F>, a: &ProjPoint<F>, x: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    if a == x {
        return Err(Error::WellDefinedness);
    }
    s.third_intersection(a, x).map_err(|e| match e {
        Error::ContainedLine => Error::GoodnessViolation,
        other => other,
    })
}

/// Memoised goodness answers; points that are not on the surface or are
/// singular count as not good.
#[derive(Clone, Debug, Default)]
pub struct GoodnessCache<F: Scalar> {
    known: BTreeMap<ProjPoint<F>, bool>,
}

impl<F: Scalar> GoodnessCache<F> {
    pub fn new() -> Self {
        GoodnessCache { known: BTreeMap::new() }
    }

    pub fn is_good(&mut self, s: &CubicSurface<F>, p: &ProjPoint<F>) -> bool {
        if let Some(&g) = self.known.get(p) {
            return g;
        }
        let g = s.is_good(p).unwrap_or(false);
        self.known.insert(p.clone(), g);
        g
    }
}

/// The word `x a_1 a_2 ⋯ a_n`, applied to a variable start point `x`.
#[derive(Clone, Debug)]
pub struct GeiserWord<'s, F: Scalar> {
    surface: &'s CubicSurface<F>,
    base_points: Vec<ProjPoint<F>>,
}

/// One application `y ↦ γ_a(y)` inside a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord<F: Scalar> {
    pub from: ProjPoint<F>,
    pub center: ProjPoint<F>,
    pub to: ProjPoint<F>,
    pub distinct: bool,
    pub good: bool,
    pub collinear: bool,
    /// The line carrying the triple, when the three points span one.
    pub line: Option<LineP3<F>>,
}

impl<F: Scalar> StepRecord<F> {
    /// Whether `(from, center, to)` is a collinear triple of distinct good
    /// points.
    pub fn valid(&self) -> bool {
        self.distinct && self.good && self.collinear
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFailure {
    pub index: usize,
    pub error: Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordTrace<F: Scalar> {
    pub input: ProjPoint<F>,
    /// `x, x a_1, x a_1 a_2, …` up to the last defined step.
    pub orbit: Vec<ProjPoint<F>>,
    pub steps: Vec<StepRecord<F>>,
    pub failure: Option<StepFailure>,
}

impl<F: Scalar> WordTrace<F> {
    pub fn final_point(&self) -> Option<&ProjPoint<F>> {
        if self.failure.is_some() {
            None
        } else {
            self.orbit.last()
        }
    }

    pub fn all_steps_valid(&self) -> bool {
        self.failure.is_none() && self.steps.iter().all(StepRecord::valid)
    }

    /// Index of the first step whose triple is not a valid one.
    pub fn first_invalid_step(&self) -> Option<usize> {
        self.steps.iter().position(|s| !s.valid()).or(self.failure.as_ref().map(|f| f.index))
    }

    pub fn is_strongly_fixed(&self) -> bool {
        self.all_steps_valid() && self.final_point() == Some(&self.input)
    }
}

impl<'s, F: Scalar> GeiserWord<'s, F> {
    pub fn new(surface: &'s CubicSurface<F>, base_points: Vec<ProjPoint<F>>) -> Result<Self> {
        if base_points.iter().any(|p| !surface.contains(p)) {
            return Err(Error::NotOnSurface);
        }
        Ok(GeiserWord { surface, base_points })
    }

    pub fn surface(&self) -> &'s CubicSurface<F> {
        self.surface
    }

    pub fn base_points(&self) -> &[ProjPoint<F>] {
        &self.base_points
    }

    pub fn reversed(&self) -> Self {
        let mut b = self.base_points.clone();
        b.reverse();
        GeiserWord { surface: self.surface, base_points: b }
    }

    pub fn evaluate(&self, x: &ProjPoint<F>) -> WordTrace<F> {
        self.evaluate_cached(x, &mut GoodnessCache::new())
    }

    pub fn evaluate_cached(&self, x: &ProjPoint<F>, cache: &mut GoodnessCache<F>) -> WordTrace<F> {
        let s = self.surface;
        let mut trace = WordTrace { input: x.clone(), orbit: alloc::vec![x.clone()], steps: Vec::new(), failure: None };
        if !s.contains(x) {
            trace.failure = Some(StepFailure { index: 0, error: Error::NotOnSurface });
            return trace;
        }
        let mut cur = x.clone();
        for (i, a) in self.base_points.iter().enumerate() {
            let next = match geiser_apply(s, a, &cur) {
                Ok(n) => n,
                Err(error) => {
                    trace.failure = Some(StepFailure { index: i, error });
                    return trace;
                }
            };
            let distinct = cur != *a && next != *a && next != cur;
            let good = cache.is_good(s, &cur) && cache.is_good(s, a) && cache.is_good(s, &next);
            let line = line_through(&cur, a).ok();
            trace.steps.push(StepRecord {
                from: cur.clone(),
                center: a.clone(),
                to: next.clone(),
                distinct,
                good,
                collinear: collinear(&cur, a, &next),
                line,
            });
            trace.orbit.push(next.clone());
            cur = next;
        }
        trace
    }

    pub fn is_strongly_fixed(&self, x: &ProjPoint<F>) -> bool {
        self.evaluate(x).is_strongly_fixed()
    }
}

/// Raw outcome of a batch of samples; merging is associative and
/// commutative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoplanarityTally<F: Scalar> {
    pub fixed: Vec<ProjPoint<F>>,
    pub not_fixed: usize,
    /// Samples rejected because some step was undefined.
    pub undefined: usize,
}

impl<F: Scalar> Default for CoplanarityTally<F> {
    fn default() -> Self {
        CoplanarityTally { fixed: Vec::new(), not_fixed: 0, undefined: 0 }
    }
}

impl<F: Scalar> CoplanarityTally<F> {
    pub fn run(word: &GeiserWord<'_, F>, samples: &[ProjPoint<F>]) -> Self {
        let mut cache = GoodnessCache::new();
        let mut tally = CoplanarityTally::default();
        for x in samples {
            let tr = word.evaluate_cached(x, &mut cache);
            if tr.failure.is_some() {
                tally.undefined += 1;
            } else if tr.is_strongly_fixed() {
                tally.fixed.push(x.clone());
            } else {
                tally.not_fixed += 1;
            }
        }
        tally.fixed.sort();
        tally.fixed.dedup();
        tally
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.fixed.extend(other.fixed);
        self.fixed.sort();
        self.fixed.dedup();
        self.not_fixed += other.not_fixed;
        self.undefined += other.undefined;
        self
    }
}

pub const DEFAULT_EXCEPTION_ALARM: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoplanarityReport<F: Scalar> {
    pub tally: CoplanarityTally<F>,
    /// Whether the four base points lie on one plane.
    pub base_coplanar: bool,
    /// The plane the fixed set is compared against, once it is determined.
    pub plane: Option<PlaneP3<F>>,
    /// Strongly fixed samples off `plane`.
    pub exceptions: Vec<ProjPoint<F>>,
    /// Base points, and all fixed samples except the exceptions, lie on `plane`.
    pub coplanar: bool,
    pub alarm: bool,
}

impl<F: Scalar> CoplanarityReport<F> {
    pub fn from_tally(base: &[ProjPoint<F>], tally: CoplanarityTally<F>, alarm_threshold: usize) -> Self {
        let base_plane = spanned_plane(base);
        let base_coplanar = match &base_plane {
            Some(pl) => base.iter().all(|p| pl.contains(p)),
            None => true,
        };
        let plane = match (&base_plane, base_coplanar) {
            (Some(pl), true) => Some(pl.clone()),
            _ => spanned_plane(&tally.fixed),
        };
        let enough = spanned_plane(&tally.fixed).is_some();
        let exceptions: Vec<ProjPoint<F>> = match &plane {
            Some(pl) if enough => tally.fixed.iter().filter(|p| !pl.contains(p)).cloned().collect(),
            _ => Vec::new(),
        };
        let coplanar = enough
            && plane.as_ref().is_some_and(|pl| base.iter().all(|p| pl.contains(p)))
            && exceptions.is_empty();
        let alarm = exceptions.len() >= alarm_threshold;
        CoplanarityReport { tally, base_coplanar, plane, exceptions, coplanar, alarm }
    }
}

/// Runs the word `(a, b, c, d)` on every sample and compares the strongly
/// fixed samples with the plane of the base points.
pub fn coplanarity_experiment<F: Scalar>(
    s: &CubicSurface<F>,
    base: [&ProjPoint<F>; 4],
    samples: &[ProjPoint<F>],
    alarm_threshold: usize,
) -> Result<CoplanarityReport<F>> {
    let pts: Vec<ProjPoint<F>> = base.iter().map(|p| (*p).clone()).collect();
    let word = GeiserWord::new(s, pts.clone())?;
    let tally = CoplanarityTally::run(&word, samples);
    Ok(CoplanarityReport::from_tally(&pts, tally, alarm_threshold))
}

/// The plane through the first three non-collinear points of the list.
fn spanned_plane<F: Scalar>(pts: &[ProjPoint<F>]) -> Option<PlaneP3<F>> {
    let first = pts.first()?;
    let second = pts.iter().find(|p| *p != first)?;
    pts.iter().find_map(|r| plane_span(first, second, r).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::proj::{coplanar4, point_on_line};
    use crate::surface::CubicForm;
    use proptest::prelude::*;

    type P = ProjPoint<Rat>;

    fn f1() -> CubicSurface<Rat> {
        let form = CubicForm::from_int_terms(&[([0, 2, 0, 1], 1), ([3, 0, 0, 0], -1), ([0, 0, 3, 0], 1), ([0, 0, 1, 2], 1)]);
        CubicSurface::new(form).unwrap()
    }

    fn cusp(t: i64) -> P {
        P::from_ints([t, 1, 0, t * t * t]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let s = f1();
        assert_eq!(geiser_apply(&s, &cusp(1), &cusp(2)).unwrap(), cusp(-3));
        assert_eq!(geiser_apply(&s, &cusp(1), &cusp(1)), Err(Error::WellDefinedness));
        // P(-2) is on the tangent line at P(1), so it lies in C_{P(1)}
        assert_eq!(geiser_apply(&s, &cusp(1), &cusp(-2)).unwrap(), cusp(1));
        let (a, b) = (P::from_ints([1, 0, 1, 0]).unwrap(), P::from_ints([0, 1, 0, 0]).unwrap());
        assert_eq!(geiser_apply(&s, &a, &b), Err(Error::GoodnessViolation));
    }

    #[test]
    fn word_final_parameter() {
        let s = f1();
        let word = GeiserWord::new(&s, [1, 2, 3, 2].map(cusp).to_vec()).unwrap();
        let tr = word.evaluate(&cusp(5));
        assert_eq!(tr.final_point(), Some(&cusp(5)));
        assert_eq!(tr.orbit, [5, -6, 4, -7, 5].map(cusp).to_vec());
        assert!(tr.is_strongly_fixed());
        assert!(word.reversed().is_strongly_fixed(&cusp(5)));
        for st in &tr.steps {
            assert!(point_on_line(&st.to, st.line.as_ref().unwrap()));
        }
    }

    #[test]
    fn word_failures() {
        let s = f1();
        let word = GeiserWord::new(&s, [1, 2].map(cusp).to_vec()).unwrap();
        let tr = word.evaluate(&cusp(1));
        assert_eq!(tr.failure, Some(StepFailure { index: 0, error: Error::WellDefinedness }));
        assert_eq!(tr.final_point(), None);
        let twice = GeiserWord::new(&s, [3, 3].map(cusp).to_vec()).unwrap();
        assert_eq!(twice.evaluate(&cusp(4)).final_point(), Some(&cusp(4)));
        assert!(GeiserWord::new(&s, alloc::vec![P::from_ints([1, 1, 1, 1]).unwrap()]).is_err());
    }

    #[test]
    fn coplanar_quadruple_fixes_the_section() {
        let s = f1();
        let base = [1, 3, 6, 4].map(cusp);
        let samples: Vec<P> = (-10..=10).map(cusp).collect();
        let r = coplanarity_experiment(&s, [&base[0], &base[1], &base[2], &base[3]], &samples, 5).unwrap();
        assert!(r.coplanar);
        assert_eq!(r.plane, Some(PlaneP3::from_ints([0, 0, 1, 0]).unwrap()));
        assert!(r.tally.fixed.len() >= 10);
        assert_eq!(r.tally.fixed.len() + r.tally.not_fixed + r.tally.undefined, samples.len());
        let perturbed = [1, 3, 6, 5].map(cusp);
        let r = coplanarity_experiment(&s, [&perturbed[0], &perturbed[1], &perturbed[2], &perturbed[3]], &samples, 5).unwrap();
        assert!(r.tally.fixed.is_empty());
    }

    #[test]
    fn tally_merge_is_order_independent() {
        let s = f1();
        let word = GeiserWord::new(&s, [1, 3, 6, 4].map(cusp).to_vec()).unwrap();
        let a: Vec<P> = (-6..0).map(cusp).collect();
        let b: Vec<P> = (0..6).map(cusp).collect();
        let (ta, tb) = (CoplanarityTally::run(&word, &a), CoplanarityTally::run(&word, &b));
        assert_eq!(ta.clone().merge(tb.clone()), tb.merge(ta));
    }

    proptest! {
        #[test]
        fn involution_on_section(a in -20i64..=20, t in -20i64..=20) {
            prop_assume!(a != t && a != 0);
            let s = f1();
            let (pa, x) = (cusp(a), cusp(t));
            let y = geiser_apply(&s, &pa, &x).unwrap();
            prop_assert!(s.contains(&y));
            prop_assert!(collinear(&pa, &x, &y));
            if y != pa {
                prop_assert_eq!(geiser_apply(&s, &pa, &y).unwrap(), x.clone());
            }
            prop_assert_eq!(geiser_apply(&s, &pa, &x).unwrap(), geiser_apply(&s, &x, &pa).unwrap());
        }

        #[test]
        fn strongly_fixed_iff_parameter_identity(al in 1i64..=6, be in 7i64..=12, ga in 13i64..=18, t in -30i64..=30) {
            let s = f1();
            let de = al + ga - be;
            let word = GeiserWord::new(&s, [al, be, ga, de].map(cusp).to_vec()).unwrap();
            let tr = word.evaluate(&cusp(t));
            if tr.failure.is_none() {
                prop_assert_eq!(tr.final_point(), Some(&cusp(t)));
            }
            if tr.is_strongly_fixed() {
                prop_assert!(word.reversed().is_strongly_fixed(&cusp(t)));
                prop_assert!(coplanar4(&cusp(al), &cusp(be), &cusp(ga), &cusp(t)));
            }
        }
    }
}
