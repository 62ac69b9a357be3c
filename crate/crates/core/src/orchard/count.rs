use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::plane::Concentration;
use super::Config;
use crate::field::Scalar;
use crate::proj::{line_through, LineP3, PlaneP3, ProjPoint};
use crate::surface::CubicSurface;

/// Line and plane keys for a fixed point list.
///
/// Two implementations: exact keys over the configuration's field, and a
/// machine-integer fast path for small integral configurations over Q. Both
/// produce canonical keys, so grouping by key is grouping by line or plane.
pub trait Incidence<F: Scalar>: Sync {
    type Line: Ord + Clone + Send + Sync;
    type Plane: Ord + Clone + Send + Sync;

    fn len(&self) -> usize;
    fn line(&self, i: usize, j: usize) -> Self::Line;
    /// Plane through points `i, j, r`, or `None` if they are collinear.
    fn plane(&self, i: usize, j: usize, r: usize) -> Option<Self::Plane>;
    fn exact_plane(&self, plane: &Self::Plane) -> PlaneP3<F>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub struct ExactIncidence<'c, F: Scalar> {
    points: &'c [ProjPoint<F>],
}

impl<'c, F: Scalar> ExactIncidence<'c, F> {
    pub fn new(config: &'c Config<F>) -> Self {
        ExactIncidence { points: config.points() }
    }
}

impl<F: Scalar> Incidence<F> for ExactIncidence<'_, F> {
    type Line = LineP3<F>;
    type Plane = PlaneP3<F>;

    fn len(&self) -> usize {
        self.points.len()
    }

    fn line(&self, i: usize, j: usize) -> LineP3<F> {
        line_through(&self.points[i], &self.points[j]).expect("configuration points are distinct")
    }

    fn plane(&self, i: usize, j: usize, r: usize) -> Option<PlaneP3<F>> {
        crate::proj::plane_span(&self.points[i], &self.points[j], &self.points[r]).ok()
    }

    fn exact_plane(&self, plane: &PlaneP3<F>) -> PlaneP3<F> {
        plane.clone()
    }
}

/// Coordinates bounded by this keep every 3x3 minor inside `i64`.
const INT_COORD_BOUND: i64 = 1 << 15;

/// Integer keys for configurations over Q with small integral coordinates.
pub struct IntIncidence {
    points: Vec<[i64; 4]>,
}

impl IntIncidence {
    /// `None` unless the field is Q and every canonical coordinate is an
    /// integer of absolute value at most 2^15.
    pub fn new<F: Scalar>(config: &Config<F>) -> Option<Self> {
        if F::FIELD != "Q" {
            return None;
        }
        let mut points = Vec::with_capacity(config.len());
        for p in config.points() {
            let mut c = [0i64; 4];
            for (slot, x) in c.iter_mut().zip(p.coords()) {
                let (re, _) = x.parts();
                if !re.is_integer() {
                    return None;
                }
                let v = re.numer().to_i64()?;
                if v.abs() > INT_COORD_BOUND {
                    return None;
                }
                *slot = v;
            }
            points.push(c);
        }
        Some(IntIncidence { points })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn normalize_ints<const N: usize>(mut v: [i64; N]) -> Option<[i64; N]> {
    let lead = *v.iter().find(|x| **x != 0)?;
    let mut g = 0u64;
    for x in &v {
        g = gcd(g, x.unsigned_abs());
        if g == 1 {
            break;
        }
    }
    let g = g as i64 * lead.signum();
    for x in v.iter_mut() {
        *x /= g;
    }
    Some(v)
}

impl<F: Scalar> Incidence<F> for IntIncidence {
    type Line = [i64; 6];
    type Plane = [i64; 4];

    fn len(&self) -> usize {
        self.points.len()
    }

    fn line(&self, i: usize, j: usize) -> [i64; 6] {
        let (p, q) = (&self.points[i], &self.points[j]);
        let v = crate::proj::PLUECKER_PAIRS.map(|(a, b)| p[a] * q[b] - p[b] * q[a]);
        normalize_ints(v).expect("configuration points are distinct")
    }

    fn plane(&self, i: usize, j: usize, r: usize) -> Option<[i64; 4]> {
        let (a, b, c) = (&self.points[i], &self.points[j], &self.points[r]);
        let m = |x: usize, y: usize, z: usize| {
            a[x] * (b[y] * c[z] - b[z] * c[y]) - a[y] * (b[x] * c[z] - b[z] * c[x]) + a[z] * (b[x] * c[y] - b[y] * c[x])
        };
        normalize_ints([m(1, 2, 3), -m(0, 2, 3), m(0, 1, 3), -m(0, 1, 2)])
    }

    fn exact_plane(&self, plane: &[i64; 4]) -> PlaneP3<F> {
        PlaneP3::from_ints(*plane).expect("nonzero key")
    }
}

/// Lines with at least three points, keyed by line, each with its sorted
/// member indices. Partial maps from disjoint work ranges merge by union.
pub type RichLines<L> = BTreeMap<L, Vec<u32>>;

/// Lines through point `i` and at least two later points, with all their
/// members of index `≥ i`.
pub fn rich_lines_from<F: Scalar, I: Incidence<F>>(inc: &I, i: usize) -> Vec<(I::Line, Vec<u32>)> {
    let n = inc.len();
    let mut keyed: Vec<(I::Line, u32)> = ((i + 1)..n).map(|j| (inc.line(i, j), j as u32)).collect();
    keyed.sort_unstable();
    let mut out = Vec::new();
    let mut start = 0;
    while start < keyed.len() {
        let mut end = start + 1;
        while end < keyed.len() && keyed[end].0 == keyed[start].0 {
            end += 1;
        }
        if end - start >= 2 {
            let mut members = Vec::with_capacity(end - start + 1);
            members.push(i as u32);
            members.extend(keyed[start..end].iter().map(|e| e.1));
            out.push((keyed[start].0.clone(), members));
        }
        start = end;
    }
    out
}

fn union_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

pub fn absorb_rich<L: Ord>(map: &mut RichLines<L>, items: Vec<(L, Vec<u32>)>) {
    for (key, members) in items {
        match map.get_mut(&key) {
            Some(existing) => {
                if existing != &members {
                    *existing = union_sorted(existing, &members);
                }
            }
            None => {
                map.insert(key, members);
            }
        }
    }
}

pub fn merge_rich<L: Ord>(mut a: RichLines<L>, b: RichLines<L>) -> RichLines<L> {
    if a.len() < b.len() {
        return merge_rich(b, a);
    }
    absorb_rich(&mut a, b.into_iter().collect());
    a
}

/// A line through at least three configuration points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bucket<F: Scalar> {
    pub line: LineP3<F>,
    pub members: Vec<u32>,
    pub contained_in_surface: bool,
    /// Members lying on the surface (all of them when no surface is given).
    pub on_surface: usize,
}

impl<F: Scalar> Bucket<F> {
    /// Ordered triples this line contributes to the raw count.
    pub fn raw_weight(&self) -> u64 {
        falling3(self.members.len())
    }

    /// Ordered triples of surface points on this line, zero when the line
    /// lies in the surface.
    pub fn filtered_weight(&self) -> u64 {
        if self.contained_in_surface {
            0
        } else {
            falling3(self.on_surface)
        }
    }
}

fn falling3(k: usize) -> u64 {
    let k = k as u64;
    if k < 3 {
        0
    } else {
        k * (k - 1) * (k - 2)
    }
}

/// All lines through at least three points, sorted by canonical line key.
/// Lines through exactly two points are only counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBuckets<F: Scalar> {
    pub n_points: usize,
    pub buckets: Vec<Bucket<F>>,
    pub two_point_lines: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TripleCounts {
    pub ordered_triples: u64,
    pub three_rich_lines: u64,
    pub triple_lines: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrchardReport<F: Scalar> {
    pub n_points: usize,
    pub raw: TripleCounts,
    /// Counts restricted to triples of surface points on lines not contained
    /// in the surface; present when a surface was given.
    pub filtered: Option<TripleCounts>,
    /// Triple lines contained in the surface.
    pub lines_in_surface: u64,
    /// Number of lines with exactly `k` points, for every `k ≥ 2` that occurs.
    pub histogram: BTreeMap<usize, u64>,
    pub buckets: LineBuckets<F>,
    pub best_plane: Option<Concentration<F>>,
}

impl<F: Scalar> OrchardReport<F> {
    /// Per-line weights used for concentration: filtered when a surface was
    /// given, raw otherwise. Zero-weight lines are skipped.
    pub fn weighted_lines(&self) -> Vec<(&Bucket<F>, u64)> {
        self.buckets
            .buckets
            .iter()
            .map(|b| (b, if self.filtered.is_some() { b.filtered_weight() } else { b.raw_weight() }))
            .filter(|(_, w)| *w > 0)
            .collect()
    }

    pub fn weighted_total(&self) -> u64 {
        self.filtered.unwrap_or(self.raw).ordered_triples
    }
}

/// Assemble the report from merged rich lines.
pub fn count_with<F: Scalar, L: Ord>(
    config: &Config<F>,
    rich: RichLines<L>,
    surface: Option<&CubicSurface<F>>,
) -> OrchardReport<F> {
    let pts = config.points();
    let on_s: Vec<bool> = pts.iter().map(|p| surface.is_none_or(|s| s.contains(p))).collect();
    let mut buckets: Vec<Bucket<F>> = rich
        .into_values()
        .map(|members| {
            let (a, b) = (&pts[members[0] as usize], &pts[members[1] as usize]);
            Bucket {
                line: line_through(a, b).expect("distinct points"),
                contained_in_surface: surface.is_some_and(|s| s.line_in_surface(a, b)),
                on_surface: members.iter().filter(|&&m| on_s[m as usize]).count(),
                members,
            }
        })
        .collect();
    buckets.sort_by(|x, y| x.line.cmp(&y.line));

    let n = pts.len() as u64;
    let mut raw = TripleCounts::default();
    let mut filt = TripleCounts::default();
    let mut lines_in_surface = 0;
    let mut histogram = BTreeMap::new();
    let mut rich_pairs = 0u64;
    for b in &buckets {
        let k = b.members.len();
        raw.ordered_triples += b.raw_weight();
        raw.triple_lines += 1;
        raw.three_rich_lines += u64::from(k == 3);
        *histogram.entry(k).or_insert(0) += 1;
        rich_pairs += (k * (k - 1) / 2) as u64;
        if b.contained_in_surface {
            lines_in_surface += 1;
        } else if b.on_surface >= 3 {
            filt.ordered_triples += b.filtered_weight();
            filt.triple_lines += 1;
            filt.three_rich_lines += u64::from(b.on_surface == 3);
        }
    }
    let two_point_lines = n * n.saturating_sub(1) / 2 - rich_pairs;
    if two_point_lines > 0 {
        histogram.insert(2, two_point_lines);
    }
    OrchardReport {
        n_points: pts.len(),
        raw,
        filtered: surface.map(|_| filt),
        lines_in_surface,
        histogram,
        buckets: LineBuckets { n_points: pts.len(), buckets, two_point_lines },
        best_plane: None,
    }
}

fn rich_lines_all<F: Scalar, I: Incidence<F>>(inc: &I) -> RichLines<I::Line> {
    let mut map = BTreeMap::new();
    for i in 0..inc.len() {
        absorb_rich(&mut map, rich_lines_from(inc, i));
    }
    map
}

/// Sequential count over all point pairs.
pub fn count<F: Scalar>(config: &Config<F>, surface: Option<&CubicSurface<F>>) -> OrchardReport<F> {
    match IntIncidence::new(config) {
        Some(inc) => count_with(config, rich_lines_all::<F, _>(&inc), surface),
        None => count_with(config, rich_lines_all(&ExactIncidence::new(config)), surface),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussRat, Rat};
    use crate::forms::Cubic;
    use crate::orchard::{cusp_config, grid_config};
    use proptest::prelude::*;

    fn f3() -> CubicSurface<Rat> {
        // x(x−w)(x+w) = x³ − xw²
        CubicSurface::new(Cubic::from_int_terms(&[([3, 0, 0, 0], 1), ([1, 0, 0, 2], -1)])).unwrap()
    }

    fn f1() -> CubicSurface<Rat> {
        CubicSurface::new(
            Cubic::from_int_terms(&[([0, 2, 0, 1], 1), ([3, 0, 0, 0], -1), ([0, 0, 3, 0], 1), ([0, 0, 1, 2], 1)]),
        )
        .unwrap()
    }

    fn collinear_i64(a: &[i64; 4], b: &[i64; 4], c: &[i64; 4]) -> bool {
        let m = |x: usize, y: usize, z: usize| {
            a[x] as i128 * (b[y] as i128 * c[z] as i128 - b[z] as i128 * c[y] as i128)
                - a[y] as i128 * (b[x] as i128 * c[z] as i128 - b[z] as i128 * c[x] as i128)
                + a[z] as i128 * (b[x] as i128 * c[y] as i128 - b[y] as i128 * c[x] as i128)
        };
        m(1, 2, 3) == 0 && m(0, 2, 3) == 0 && m(0, 1, 3) == 0 && m(0, 1, 2) == 0
    }

    /// Unordered collinear triples by brute force, with a predicate picking
    /// the triples that count after filtering.
    fn brute(pts: &[[i64; 4]], keep: impl Fn(&[i64; 4], &[i64; 4], &[i64; 4]) -> bool) -> (u64, u64) {
        let (mut raw, mut kept) = (0, 0);
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                for k in (j + 1)..pts.len() {
                    if collinear_i64(&pts[i], &pts[j], &pts[k]) {
                        raw += 1;
                        kept += u64::from(keep(&pts[i], &pts[j], &pts[k]));
                    }
                }
            }
        }
        (raw, kept)
    }

    fn ints(cfg: &Config<Rat>) -> Vec<[i64; 4]> {
        cfg.points().iter().map(|p| p.coords().clone().map(|c| c.numer().to_i64().unwrap())).collect()
    }

    /// Which of the planes x = -w, 0, w contains the point (they meet only
    /// on x = w = 0).
    fn component(p: &[i64; 4]) -> Option<i64> {
        if p[3] == 0 {
            return None;
        }
        [-1, 0, 1].into_iter().find(|&i| p[0] == i * p[3])
    }

    #[test]
    fn grid_counts_match_brute_force() {
        let s = f3();
        for n in 2..=4 {
            let cfg = grid_config(n);
            let rep = count(&cfg, Some(&s));
            let (raw, transversal) = brute(&ints(&cfg), |a, b, c| {
                let (x, y, z) = (component(a), component(b), component(c));
                x != y && y != z && x != z
            });
            assert_eq!(rep.raw.ordered_triples, 6 * raw);
            let filt = rep.filtered.unwrap();
            assert_eq!(filt.ordered_triples, 6 * transversal);
            let r = i64::from(n) - 1;
            let same_parity = (-r..=r).flat_map(|a| (-r..=r).map(move |c| (a + c) % 2 == 0)).filter(|x| *x).count();
            assert_eq!(filt.triple_lines, (same_parity * same_parity) as u64);
            assert_eq!(filt.three_rich_lines, filt.triple_lines);
        }
    }

    #[test]
    fn counting_identity_and_histogram() {
        let rep = count(&grid_config(3), None);
        let sum: u64 = rep.buckets.buckets.iter().map(|b| b.raw_weight()).sum();
        assert_eq!(sum, rep.raw.ordered_triples);
        let ge4 = rep.buckets.buckets.iter().filter(|b| b.members.len() >= 4).count() as u64;
        assert_eq!(rep.raw.three_rich_lines + ge4, rep.raw.triple_lines);
        let n = rep.n_points as u64;
        let pairs: u64 = rep.histogram.iter().map(|(&k, &c)| c * (k * (k - 1) / 2) as u64).sum();
        assert_eq!(pairs, n * (n - 1) / 2);
    }

    #[test]
    fn cusp_triples_are_zero_sum_triples() {
        let s = f1();
        for m in [3u32, 6, 10] {
            let rep = count(&cusp_config(m), Some(&s));
            let m = i64::from(m);
            let mut zero_sum = 0u64;
            for a in -m..=m {
                for b in (a + 1)..=m {
                    let c = -a - b;
                    if a != 0 && b != 0 && c > b && c <= m {
                        zero_sum += 1;
                    }
                }
            }
            assert_eq!(rep.raw.three_rich_lines, zero_sum);
            assert_eq!(rep.raw.triple_lines, zero_sum);
            assert_eq!(rep.filtered.unwrap().triple_lines, zero_sum);
            assert_eq!(rep.lines_in_surface, 0);
        }
    }

    #[test]
    fn generic_points_have_no_triple_lines() {
        let cfg = Config::new([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]].map(|c| ProjPoint::<Rat>::from_ints(c).unwrap()));
        let rep = count(&cfg, None);
        assert_eq!(rep.raw.triple_lines, 0);
        assert_eq!(rep.histogram.get(&2), Some(&3));
    }

    #[test]
    fn lines_in_surface_are_reported_not_counted() {
        // Four points on the line w = 0, z = x of F1 and two off it.
        let s = f1();
        let pts = [[1, 0, 1, 0], [0, 1, 0, 0], [1, 1, 1, 0], [1, -1, 1, 0], [3, 5, 1, 1], [0, 0, 0, 1]];
        let cfg = Config::new(pts.map(|c| ProjPoint::<Rat>::from_ints(c).unwrap()));
        let rep = count(&cfg, Some(&s));
        assert_eq!(rep.lines_in_surface, 1);
        assert_eq!(rep.raw.ordered_triples, 24);
        assert_eq!(rep.filtered.unwrap().ordered_triples, 0);
    }

    #[test]
    fn exact_and_integer_paths_agree() {
        let cfg = grid_config(3);
        let a = count_with(&cfg, rich_lines_all::<Rat, _>(&IntIncidence::new(&cfg).unwrap()), None);
        let b = count_with(&cfg, rich_lines_all(&ExactIncidence::new(&cfg)), None);
        assert_eq!(a, b);
    }

    #[test]
    fn large_coordinates_fall_back_to_exact() {
        let cfg = Config::new([ProjPoint::<Rat>::from_ints([1 << 20, 1, 0, 0]).unwrap()]);
        assert!(IntIncidence::new(&cfg).is_none());
        let g = Config::new([ProjPoint::<GaussRat>::from_ints([1, 0, 0, 0]).unwrap()]);
        assert!(IntIncidence::new(&g).is_none());
    }

    #[test]
    fn gaussian_configuration_counts() {
        let pts = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [1, 2, 0, 0], [0, 0, 1, 0]];
        let cfg = Config::new(pts.map(|c| ProjPoint::<GaussRat>::from_ints(c).unwrap()));
        let rep = count(&cfg, None);
        assert_eq!(rep.raw.triple_lines, 1);
        assert_eq!(rep.raw.ordered_triples, 24);
    }

    #[test]
    fn partition_independence() {
        let cfg = grid_config(3);
        let inc = IntIncidence::new(&cfg).unwrap();
        let whole = rich_lines_all::<Rat, _>(&inc);
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for i in 0..inc.points.len() {
            let target = if i % 3 == 0 { &mut left } else { &mut right };
            absorb_rich(target, rich_lines_from::<Rat, _>(&inc, i));
        }
        assert_eq!(merge_rich(right.clone(), left.clone()), whole);
        assert_eq!(merge_rich(left, right), whole);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_configs_match_brute_force(raw in proptest::collection::vec(proptest::array::uniform4(-2i64..=2), 3..60)) {
            let pts: Vec<ProjPoint<Rat>> = raw.iter().filter_map(|c| ProjPoint::from_ints(*c).ok()).collect();
            let cfg = Config::new(pts);
            let rep = count(&cfg, None);
            let (unordered, _) = brute(&ints(&cfg), |_, _, _| true);
            prop_assert_eq!(rep.raw.ordered_triples, 6 * unordered);
        }
    }
}
