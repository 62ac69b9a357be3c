//! The acceptance suites. Each suite is seeded, checks exact properties
//! against a wall-clock budget and returns a JSON detail record.

use std::time::{Duration, Instant};

use collinear_core::curve::collinear2;
use collinear_core::geiser::{coplanarity_experiment, geiser_apply, GoodnessCache, DEFAULT_EXCEPTION_ALARM};
use collinear_core::orchard::{
    cusp_config, cusp_point, gamma_q, grid_config, is_transversal, three_planes_composite, union_of_kds, BipartiteRel,
};
use collinear_core::picard::{
    deg_mult_step, enumerate_degree3_classes, genus_feasible, genus_replay, geiser_pic, pairing_checks_for_endgame,
    pushforward_curve_class, CurveClassWithMult, DivClass, DivClassBlow,
};
use collinear_core::proj::collinear;
use collinear_core::quadric::{
    commutation_experiment, fixed_space_of_product, on_quadric, reflect_point, reflection, segre_point, Mat4,
};
use collinear_core::surface::DEFAULT_PRIME_BOUND;
use collinear_core::{CubicSurface, GaussRat, PlaneP3, ProjPoint, Rat, Scalar};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fixtures::FixtureSource;
use crate::oracle;
use crate::par;
use crate::sample::{self, distinct_ints, good_points, tangent_direction, tangent_residual, SeededRng};

pub const DEFAULT_SEED: u64 = 20240611;

/// Lower constant `c` in `T ≥ (c·n)⁴` for the grid suite; a measurement
/// below the observed minimum of `T/n⁴`, not a derived value.
pub const GRID_LOWER_CONSTANT: f64 = 0.2;

type SuiteResult = std::result::Result<Value, String>;

pub struct Ctx {
    pub seed: u64,
    pub fixtures: FixtureSource,
}

impl Ctx {
    pub fn new(seed: u64, fixtures: FixtureSource) -> Self {
        Ctx { seed, fixtures }
    }

    fn rng(&self, stream: u64) -> SeededRng {
        sample::rng(self.seed, stream)
    }

    fn rational(&self, name: &str) -> std::result::Result<CubicSurface<Rat>, String> {
        let f = self.fixtures.load(name).map_err(|e| format!("{name}: {e}"))?;
        f.surface.rational().cloned().map_err(|e| format!("{name}: {e}"))
    }
}

pub struct Suite {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
    run: fn(&Ctx) -> SuiteResult,
}

const fn suite(id: u8, name: &'static str, budget_ms: u64, run: fn(&Ctx) -> SuiteResult) -> Suite {
    Suite { id, name, budget: Duration::from_millis(budget_ms), run }
}

pub const SUITES: [Suite; 11] = [
    suite(1, "geiser", 5_000, geiser_suite),
    suite(2, "picard", 1_000, picard_suite),
    suite(3, "tangent-section", 10_000, tangent_section_suite),
    suite(4, "group-law", 10_000, group_law_suite),
    suite(5, "fixed-word", 30_000, fixed_word_suite),
    suite(6, "endgame", 1_000, endgame_suite),
    suite(7, "orchard-grid", 60_000, grid_suite),
    suite(8, "concentration", 60_000, concentration_suite),
    suite(9, "quadric", 10_000, quadric_suite),
    suite(10, "three-planes", 5_000, three_planes_suite),
    suite(11, "transversal", 30_000, transversal_suite),
];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub within_budget: bool,
    pub budget_ms: u128,
    #[serde(skip)]
    pub elapsed: Duration,
    pub failure: Option<String>,
    pub details: Value,
}

impl SuiteOutcome {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "[{verdict}] criterion {:>2} {:<16} {:>8.1} ms / {} ms",
            self.id,
            self.name,
            self.elapsed.as_secs_f64() * 1e3,
            self.budget_ms
        );
        if let Some(f) = &self.failure {
            s.push_str(&format!("  ({f})"));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

/// Suites named by name or number, in table order; all when `only` is empty.
pub fn select(only: &[String]) -> Result<Vec<&'static Suite>> {
    for o in only {
        if !SUITES.iter().any(|s| s.name == o || s.id.to_string() == *o) {
            let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
            return Err(Error::Usage(format!("unknown suite {o:?}; expected one of {}", names.join(", "))));
        }
    }
    Ok(SUITES.iter().filter(|s| only.is_empty() || only.iter().any(|o| s.name == o || s.id.to_string() == *o)).collect())
}

pub fn run_suite(suite: &Suite, ctx: &Ctx) -> SuiteOutcome {
    let start = Instant::now();
    let result = (suite.run)(ctx);
    let elapsed = start.elapsed();
    let within_budget = elapsed <= suite.budget;
    let (details, mut failure) = match result {
        Ok(v) => (v, None),
        Err(e) => (Value::Null, Some(e)),
    };
    if failure.is_none() && !within_budget {
        failure = Some(String::from("over time budget"));
    }
    SuiteOutcome {
        id: suite.id,
        name: suite.name,
        passed: failure.is_none(),
        within_budget,
        budget_ms: suite.budget.as_millis(),
        elapsed,
        failure,
        details,
    }
}

/// Runs the selected suites in order, calling `each` after every suite.
pub fn run(ctx: &Ctx, only: &[String], mut each: impl FnMut(&SuiteOutcome)) -> Result<Summary> {
    let mut suites = Vec::new();
    for s in select(only)? {
        let out = run_suite(s, ctx);
        each(&out);
        suites.push(out);
    }
    Ok(Summary { seed: ctx.seed, passed: suites.iter().all(|s| s.passed), suites })
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(ctx: &'static str) -> impl Fn(E) -> String {
    move |e| format!("{ctx}: {e}")
}

fn pt(c: [i64; 4]) -> ProjPoint<Rat> {
    ProjPoint::from_ints(c).expect("nonzero")
}

/// Named points that every intact copy of the fixture contains.
fn anchors(name: &str) -> Vec<ProjPoint<Rat>> {
    match name {
        "F1" => vec![pt([3, 5, 1, 1]), pt([1, 1, 1, 0]), cusp_point(2), cusp_point(-3)],
        "F2" => vec![pt([3, 4, 5, -6]), pt([1, 6, 8, -9]), pt([9, 10, -1, -12])],
        _ => Vec::new(),
    }
}

fn anchored_surface(ctx: &Ctx, name: &str) -> std::result::Result<CubicSurface<Rat>, String> {
    let s = ctx.rational(name)?;
    for a in anchors(name) {
        ensure!(s.contains(&a), "{name}: reference point {a} is not on the surface");
    }
    Ok(s)
}

fn geiser_suite(ctx: &Ctx) -> SuiteResult {
    let f1 = anchored_surface(ctx, "F1")?;
    let scans = f1.check_smooth_mod_primes(&[7, 11, 13], DEFAULT_PRIME_BOUND).map_err(err("F1 scan"))?;
    let dirty: Vec<u64> = scans.iter().filter(|s| !s.is_clean()).map(|s| s.prime).collect();
    ensure!(dirty.is_empty(), "F1 is singular modulo {dirty:?}");
    let f2 = anchored_surface(ctx, "F2")?;
    let mut details = serde_json::Map::new();
    details.insert("f1_clean_mod".into(), json!([7, 11, 13]));
    for (k, (name, s)) in [("F1", &f1), ("F2", &f2)].into_iter().enumerate() {
        let mut rng = ctx.rng(10 + k as u64);
        let mut cache = GoodnessCache::new();
        let pool = good_points(s, &anchors(name), 24, &mut cache, &mut rng);
        ensure!(pool.len() >= 8, "{name}: only {} good points sampled", pool.len());
        let (mut pairs, mut rejected) = (0, 0);
        while pairs < 100 {
            ensure!(rejected < 2_000, "{name}: too many rejected pairs");
            let a = &pool[rng.random_range(0..pool.len())];
            let x = &pool[rng.random_range(0..pool.len())];
            let y = match geiser_apply(s, a, x) {
                Ok(y) if y != *a => y,
                _ => {
                    rejected += 1;
                    continue;
                }
            };
            ensure!(s.contains(&y), "{name}: image of {x} under {a} is off the surface");
            ensure!(collinear(a, x, &y), "{name}: {a}, {x}, {y} not collinear");
            let back = geiser_apply(s, a, &y).map_err(err("second application"))?;
            ensure!(back == *x, "{name}: involution fails at a = {a}, x = {x}");
            pairs += 1;
        }
        details.insert(name.into(), json!({ "pairs": pairs, "rejected": rejected, "pool": pool.len() }));
    }
    Ok(Value::Object(details))
}

fn picard_suite(ctx: &Ctx) -> SuiteResult {
    let basis = DivClassBlow::all_basis();
    for v in &basis {
        ensure!(geiser_pic(&geiser_pic(v)) == *v, "not an involution on {v}");
    }
    for u in &basis {
        for v in &basis {
            ensure!(geiser_pic(u).pairing(&geiser_pic(v)) == u.pairing(v), "pairing of {u}, {v} not preserved");
        }
    }
    let mut rng = ctx.rng(20);
    let (mut pushed, mut excluded) = (0, 0);
    while pushed < 50 {
        ensure!(excluded < 5_000, "too many excluded classes");
        let a = rng.random_range(1..=12);
        let b: [i64; 6] = std::array::from_fn(|_| rng.random_range(0..=3));
        let c = CurveClassWithMult { cls: DivClass::new(a, b), m: rng.random_range(0..=3) };
        if c.cls.degree() <= 0 {
            excluded += 1;
            continue;
        }
        let img = match pushforward_curve_class(&c) {
            Ok(img) if img.m >= 0 => img,
            _ => {
                excluded += 1;
                continue;
            }
        };
        let back = pushforward_curve_class(&img).map_err(err("second pushforward"))?;
        ensure!(back == c, "pushforward twice moves {} with m = {}", c.cls, c.m);
        pushed += 1;
    }
    for _ in 0..1000 {
        let (d, m) = (rng.random_range(-1000..=1000), rng.random_range(-1000..=1000));
        let (d1, m1) = deg_mult_step(d, m);
        ensure!(deg_mult_step(d1, m1) == (d, m), "degree step not an involution at ({d}, {m})");
    }
    Ok(json!({ "basis_vectors": 8, "basis_pairs": 64, "pushforward_pairs": pushed, "excluded": excluded, "step_pairs": 1000 }))
}

fn tangent_section_suite(ctx: &Ctx) -> SuiteResult {
    let mut equalities = 0;
    let mut pairs = 0;
    let mut per_surface = serde_json::Map::new();
    for (k, name) in ["F1", "F2"].into_iter().enumerate() {
        let s = anchored_surface(ctx, name)?;
        let mut rng = ctx.rng(30 + k as u64);
        let mut cache = GoodnessCache::new();
        let centers = good_points(&s, &anchors(name), 10, &mut cache, &mut rng);
        ensure!(centers.len() == 10, "{name}: only {} good points sampled", centers.len());
        for a in &centers {
            let plane = s.tangent_plane(a).map_err(err("tangent plane"))?;
            let curve = s.plane_section(&plane).map_err(err("plane section"))?;
            let a2 = plane.project(a).map_err(err("projection"))?;
            let mu_a = curve.multiplicity(&a2).map_err(err("multiplicity"))?;
            ensure!(mu_a == 2, "{name}: multiplicity {mu_a} at {a}");
            let mut others = Vec::new();
            let mut attempts = 0;
            while others.len() < 10 {
                attempts += 1;
                ensure!(attempts < 500, "{name}: could not sample the section at {a}");
                let Some(d) = tangent_direction(&s, a, &mut rng) else { continue };
                let Some(b) = tangent_residual(&s, a, &d) else { continue };
                if !others.contains(&b) {
                    others.push(b);
                }
            }
            for b in &others {
                let b2 = plane.project(b).map_err(err("projection"))?;
                let mu_b = curve.multiplicity(&b2).map_err(err("multiplicity"))?;
                ensure!(mu_b == 1, "{name}: multiplicity {mu_b} at {b} on the section at {a}");
                let bound = curve.mult_bound_check(&[a2.clone(), b2]).map_err(err("bound"))?;
                ensure!(bound.holds, "{name}: multiplicity bound fails at {a}, {b}");
                equalities += usize::from(bound.worst_sum == 3);
                pairs += 1;
            }
        }
        per_surface.insert(name.into(), json!({ "centers": centers.len() }));
    }
    per_surface.insert("pairs".into(), json!(pairs));
    per_surface.insert("sum_equal_3".into(), json!(equalities));
    per_surface.insert("sum_below_3".into(), json!(pairs - equalities));
    Ok(Value::Object(per_surface))
}

fn group_law_suite(ctx: &Ctx) -> SuiteResult {
    let s = ctx.rational("F1")?;
    let plane = PlaneP3::from_ints([0, 0, 1, 0]).expect("nonzero");
    let curve = s.plane_section(&plane).map_err(err("section"))?;
    let p = |t: i64| curve.point_from_space(&cusp_point(t)).map_err(err("cusp point"));
    let range: Vec<i64> = (-20..=20).collect();
    let pts = range.iter().map(|&t| p(t)).collect::<std::result::Result<Vec<_>, _>>()?;
    let mut collinear_triples = 0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            for k in (j + 1)..pts.len() {
                let lhs = collinear2(&pts[i].point, &pts[j].point, &pts[k].point);
                let rhs = range[i] + range[j] + range[k] == 0;
                ensure!(lhs == rhs, "collinearity mismatch at ({}, {}, {})", range[i], range[j], range[k]);
                collinear_triples += usize::from(lhs);
            }
        }
    }
    let mut rng = ctx.rng(40);
    let u = p(0)?;
    for _ in 0..50 {
        let (a, b, c, e) = (rng.random_range(-30..=30), rng.random_range(-30..=30), rng.random_range(-30..=30), rng.random_range(-30..=30));
        let (x, y, z) = (p(a)?, p(b)?, p(c)?);
        let add = |x, y| curve.group_add(&u, x, y).map_err(err("group law"));
        ensure!(add(&x, &u)? == x, "identity fails at t = {a}");
        let nx = curve.group_neg(&u, &x).map_err(err("inverse"))?;
        ensure!(nx == p(-a)?, "inverse of P({a}) is not P({})", -a);
        ensure!(add(&x, &nx)? == u, "x + (-x) != 0 at t = {a}");
        ensure!(add(&x, &y)? == add(&y, &x)?, "commutativity fails at ({a}, {b})");
        let (xy, yz) = (add(&x, &y)?, add(&y, &z)?);
        ensure!(add(&xy, &z)? == add(&x, &yz)?, "associativity fails at ({a}, {b}, {c})");
        ensure!(add(&x, &y)? == p(a + b)?, "P({a}) + P({b}) != P({})", a + b);
        let base = p(e)?;
        ensure!(curve.check_circ_identity(&base, &x, &y).map_err(err("chord identity"))?, "chord identity fails at ({a}, {b}) with base {e}");
    }
    Ok(json!({ "parameters": range.len(), "collinear_triples": collinear_triples, "random_pairs": 50 }))
}

/// Parameters `(α, β, γ, δ)` of coplanar base points on the cusp section;
/// with `shift = 0` they satisfy `α + γ = β + δ`.
fn quadruple(rng: &mut impl Rng, shift: i64) -> [i64; 4] {
    loop {
        let (a, b, c) = (rng.random_range(1..=9), rng.random_range(10..=19), rng.random_range(30..=39));
        let d = a + c - b + shift;
        if d != 0 && d != a && d != b && d != c {
            return [a, b, c, d];
        }
    }
}

fn fixed_word_suite(ctx: &Ctx) -> SuiteResult {
    let s = anchored_surface(ctx, "F1")?;
    let z0 = PlaneP3::from_ints([0, 0, 1, 0]).expect("nonzero");
    let mut rng = ctx.rng(50);
    let mut cache = GoodnessCache::new();
    let (mut fixed_total, mut not_good) = (0, 0);
    let mut perturbed_fixed = 0;
    for round in 0..20 {
        let perturbed = round >= 10;
        let q = quadruple(&mut rng, i64::from(perturbed));
        let base = q.map(cusp_point);
        let samples: Vec<ProjPoint<Rat>> = distinct_ints(&mut rng, 100..=400, 40)
            .into_iter()
            .map(cusp_point)
            .filter(|x| {
                let good = cache.is_good(&s, x);
                not_good += usize::from(!good);
                good
            })
            .collect();
        let refs = [&base[0], &base[1], &base[2], &base[3]];
        let rep = coplanarity_experiment(&s, refs, &samples, DEFAULT_EXCEPTION_ALARM).map_err(err("word"))?;
        ensure!(rep.tally.undefined == 0, "{} undefined samples for {q:?}", rep.tally.undefined);
        if perturbed {
            perturbed_fixed += rep.tally.fixed.len();
            ensure!(rep.tally.fixed.is_empty(), "perturbed quadruple {q:?} fixes {} samples", rep.tally.fixed.len());
        } else {
            ensure!(rep.tally.fixed.len() == samples.len(), "quadruple {q:?} fixes {} of {}", rep.tally.fixed.len(), samples.len());
            ensure!(rep.coplanar && rep.plane.as_ref() == Some(&z0), "fixed set of {q:?} is not on z = 0");
            fixed_total += rep.tally.fixed.len();
        }
    }
    ensure!(not_good == 0, "{not_good} section samples are not good");
    Ok(json!({ "quadruples": 10, "fixed_samples": fixed_total, "perturbed_quadruples": 10, "perturbed_fixed": perturbed_fixed }))
}

fn endgame_suite(_: &Ctx) -> SuiteResult {
    let expected = [
        DivClass::new(1, [0; 6]),
        DivClass::new(2, [1, 1, 1, 0, 0, 0]),
        DivClass::new(3, [2, 1, 1, 1, 1, 0]),
        DivClass::new(3, [1; 6]),
    ];
    let cases = enumerate_degree3_classes();
    let got: Vec<DivClass> = cases.iter().map(|c| c.class).collect();
    let mut want = expected.to_vec();
    want.sort();
    let mut sorted = got.clone();
    sorted.sort();
    ensure!(sorted == want, "degree-3 cases {got:?}");
    let checks = pairing_checks_for_endgame();
    ensure!(checks.len() == 3, "{} non-planar cases", checks.len());
    for c in &checks {
        let v = (c.self_pairing, c.paired_self_pairing, c.cross_pairing);
        ensure!(v == (1, 1, 5), "pairings {v:?} for {}", c.case.class);
    }
    let r = genus_replay(2, 5);
    ensure!(r.degree == 6 && !r.feasible, "genus replay for m = 2 is feasible");
    let g = genus_feasible(&r.best_class, &[2; 5]);
    ensure!(!g.feasible && g.lhs == 5 && g.rhs == r.best_rhs, "genus check {g:?}");
    Ok(json!({
        "cases": got.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "pairings": [1, 1, 5],
        "replay": { "degree": r.degree, "lhs": r.lhs, "best_rhs": r.best_rhs, "best_class": r.best_class.to_string() },
    }))
}

fn grid_suite(ctx: &Ctx) -> SuiteResult {
    let s = ctx.rational("F3")?;
    let mut rows = Vec::new();
    let mut min_ratio = f64::INFINITY;
    for n in 2..=10u32 {
        let cfg = grid_config(n);
        let k = 2 * u64::from(n) - 1;
        ensure!(cfg.len() as u64 == 3 * k * k, "|A_{n}| = {}", cfg.len());
        ensure!(cfg.points().iter().all(|p| s.contains(p)), "grid point off F3 at n = {n}");
        let rep = par::analyze(&cfg, Some(&s), false);
        let r = i64::from(n) - 1;
        let mut ints: Vec<oracle::IPoint> = Vec::new();
        for i in -1..=1 {
            for a in -r..=r {
                for b in -r..=r {
                    ints.push([i, a, b, 1]);
                }
            }
        }
        let (all, across) = oracle::collinear_triples(&ints, |p| p[0]);
        ensure!(rep.raw.ordered_triples == 6 * all, "n = {n}: raw {} vs oracle {}", rep.raw.ordered_triples, 6 * all);
        let filtered = rep.filtered.ok_or("filtered counts missing")?;
        ensure!(filtered.ordered_triples == 6 * across, "n = {n}: filtered {} vs oracle {}", filtered.ordered_triples, 6 * across);
        let t = filtered.ordered_triples / 6;
        ensure!(t <= k.pow(4), "n = {n}: T = {t} exceeds (2n-1)^4");
        let lower = (GRID_LOWER_CONSTANT * f64::from(n)).powi(4);
        let above = t as f64 >= lower;
        ensure!(above, "n = {n}: T = {t} below ({GRID_LOWER_CONSTANT} n)^4");
        let ratio = t as f64 / f64::from(n).powi(4);
        min_ratio = min_ratio.min(ratio);
        rows.push(json!({ "n": n, "points": cfg.len(), "raw_triples": all, "T": t, "T_over_n4": ratio }));
    }
    Ok(json!({ "rows": rows, "min_T_over_n4": min_ratio, "lower_constant": GRID_LOWER_CONSTANT }))
}

fn concentration_suite(ctx: &Ctx) -> SuiteResult {
    let f1 = anchored_surface(ctx, "F1")?;
    let cusp = cusp_config(25);
    let rep = par::analyze(&cusp, Some(&f1), true);
    let best = rep.best_plane.as_ref().ok_or("cusp configuration has no best plane")?;
    let z0 = PlaneP3::from_ints([0, 0, 1, 0]).expect("nonzero");
    ensure!(best.plane == z0, "cusp best plane is {}", best.plane);
    let expected = 6 * oracle::zero_sum_triples(25);
    ensure!(best.total == expected && best.count == expected, "cusp counts {}/{} vs {expected}", best.count, best.total);
    let f3 = ctx.rational("F3")?;
    let grid = grid_config(8);
    let grep = par::analyze(&grid, Some(&f3), true);
    let gbest = grep.best_plane.as_ref().ok_or("grid has no best plane")?;
    let lines = oracle::grid_transversals(8);
    let k = oracle::max_lines_in_plane(&lines);
    ensure!(gbest.total == 6 * lines.len() as u64, "grid total {} vs {} lines", gbest.total, lines.len());
    ensure!(gbest.count == 6 * k, "grid best plane carries {} triples, oracle {}", gbest.count, 6 * k);
    let spread = gbest.ratio() < 0.5;
    ensure!(spread, "grid ratio {}", gbest.ratio());
    Ok(json!({
        "cusp": { "m": 25, "plane": best.plane.to_string(), "ratio": best.ratio(), "triples": best.total },
        "grid": { "n": 8, "plane": gbest.plane.to_string(), "ratio": gbest.ratio(), "lines_in_best_plane": k },
    }))
}

fn gauss(rng: &mut impl Rng, r: i64) -> GaussRat {
    GaussRat::ints(rng.random_range(-r..=r), rng.random_range(-r..=r))
}

fn gauss_point(rng: &mut impl Rng) -> ProjPoint<GaussRat> {
    loop {
        let c: [GaussRat; 4] = std::array::from_fn(|_| gauss(rng, 3));
        if let Ok(p) = ProjPoint::new(c) {
            if !on_quadric(&p) {
                return p;
            }
        }
    }
}

fn qdot(a: &ProjPoint<GaussRat>, b: &ProjPoint<GaussRat>) -> GaussRat {
    collinear_core::field::dot(a.coords(), b.coords())
}

fn quadric_suite(ctx: &Ctx) -> SuiteResult {
    let mut rng = ctx.rng(90);
    let id = Mat4::<GaussRat>::identity();
    for _ in 0..20 {
        let x = gauss_point(&mut rng);
        let m = reflection(&x).map_err(err("reflection"))?;
        ensure!(m.is_orthogonal() && m.transpose().mul(&m) == id, "reflection at {x} is not orthogonal");
        ensure!(m.mul(&m) == id, "reflection at {x} does not square to 1");
        let y = loop {
            let y = segre_point(&gauss(&mut rng, 3), &gauss(&mut rng, 3), &gauss(&mut rng, 3), &gauss(&mut rng, 3));
            if let Ok(y) = y {
                break y;
            }
        };
        ensure!(on_quadric(&y), "Segre point {y} off the quadric");
        let ry = reflect_point(&x, &y).map_err(err("reflect"))?;
        ensure!(on_quadric(&ry), "image of {y} leaves the quadric");
        ensure!(collinear(&x, &y, &ry), "{x}, {y}, {ry} not collinear");
    }
    let mut eig = 0;
    while eig < 20 {
        let (a, b) = (gauss_point(&mut rng), gauss_point(&mut rng));
        let gram = qdot(&a, &a) * qdot(&b, &b) - qdot(&a, &b).square();
        if a == b || gram.is_zero() {
            continue;
        }
        let fs = fixed_space_of_product(&a, &b).map_err(err("fixed space"))?;
        ensure!(fs.equal, "eigenspace differs from the orthogonal line for {a}, {b}");
        eig += 1;
    }
    let (mut sweep, mut commuting, mut on_line) = (0, 0, 0);
    while sweep < 50 {
        let (a, b, c) = (gauss_point(&mut rng), gauss_point(&mut rng), gauss_point(&mut rng));
        if a == b || qdot(&a, &b).is_zero() {
            continue;
        }
        let rep = commutation_experiment(&a, &b, &c).map_err(err("commutation"))?;
        ensure!(rep.consistent(), "commuting center {c} off the line and its orthogonal for {a}, {b}");
        commuting += usize::from(rep.commutes);
        let (l, m) = (gauss(&mut rng, 3), gauss(&mut rng, 3));
        let v: [GaussRat; 4] = std::array::from_fn(|i| l.mul_ref(&a.coords()[i]) + m.mul_ref(&b.coords()[i]));
        if let Ok(c2) = ProjPoint::new(v) {
            if !on_quadric(&c2) {
                let rep = commutation_experiment(&a, &b, &c2).map_err(err("commutation"))?;
                ensure!(rep.commutes, "center {c2} on the line of {a}, {b} does not commute");
                on_line += 1;
            }
        }
        sweep += 1;
    }
    Ok(json!({ "reflections": 20, "eigenspaces": eig, "sweep": sweep, "sweep_commuting": commuting, "on_line_centers": on_line }))
}

fn nonzero(rng: &mut impl Rng, r: i64) -> i64 {
    loop {
        let v = rng.random_range(-r..=r);
        if v != 0 {
            return v;
        }
    }
}

fn three_planes_suite(ctx: &Ctx) -> SuiteResult {
    let s = ctx.rational("F4")?;
    let mut rng = ctx.rng(100);
    let y0 = PlaneP3::from_ints([0, 1, 0, 0]).expect("nonzero");
    for _ in 0..20 {
        let q = pt([nonzero(&mut rng, 6), 1, rng.random_range(-5..=5), 0]);
        let q2 = pt([1, nonzero(&mut rng, 6), rng.random_range(-5..=5), 0]);
        let p = pt([0, nonzero(&mut rng, 5), rng.random_range(-5..=5), rng.random_range(1..=5)]);
        let g = three_planes_composite(&q, &q2).map_err(err("composite"))?;
        let mid = s.third_intersection(&p, &q).map_err(err("first chord"))?;
        ensure!(y0.contains(&mid), "{mid} is not on y = 0");
        ensure!(gamma_q(&q, &p).map_err(err("projection"))? == mid, "chord and projection disagree at {p}");
        let back = s.third_intersection(&mid, &q2).map_err(err("second chord"))?;
        let act = g.act(&p).map_err(err("action"))?;
        ensure!(act == back, "composite sends {p} to {act}, pointwise {back}");
    }
    Ok(json!({ "inputs": 20 }))
}

/// Whether `f` meets every row of every `d × s` rectangle of `e`, by
/// enumerating subsets as bitmasks.
fn transversal_oracle(e: &BipartiteRel, f: &BipartiteRel, d: usize, s: usize) -> bool {
    let row = |rel: &BipartiteRel, a: usize| -> u32 {
        (0..rel.right()).filter(|&b| rel.contains(a, b)).fold(0, |m, b| m | (1 << b))
    };
    let erows: Vec<u32> = (0..e.left()).map(|a| row(e, a)).collect();
    let frows: Vec<u32> = (0..f.left()).map(|a| row(f, a)).collect();
    for amask in 0u32..(1 << e.left()) {
        if amask.count_ones() as usize != d {
            continue;
        }
        let common = (0..e.left()).filter(|a| amask >> a & 1 == 1).fold(u32::MAX, |m, a| m & erows[a]);
        for bmask in 0u32..(1 << e.right()) {
            if bmask.count_ones() as usize != s || bmask & !common != 0 {
                continue;
            }
            if (0..e.left()).any(|a| amask >> a & 1 == 1 && frows[a] & bmask == 0) {
                return false;
            }
        }
    }
    true
}

fn transversal_suite(ctx: &Ctx) -> SuiteResult {
    let mut rng = ctx.rng(110);
    let (mut thinned_true, mut thinned_false) = (0, 0);
    for _ in 0..20 {
        let (left, right) = (rng.random_range(2..=12usize), rng.random_range(2..=12usize));
        let density = rng.random_range(0.3..0.9);
        let edges: Vec<(usize, usize)> =
            (0..left).flat_map(|a| (0..right).map(move |b| (a, b))).filter(|_| rng.random_bool(density)).collect();
        let e = BipartiteRel::new(left, right, edges).map_err(err("relation"))?;
        let d = rng.random_range(1..=3.min(left));
        let s = rng.random_range(1..=3.min(right));
        let f = union_of_kds(&e, d, s).map_err(err("union"))?;
        ensure!(is_transversal(&e, &f, d, s).map_err(err("check"))?, "union is not a ({d},{s})-transversal");
        ensure!(transversal_oracle(&e, &f, d, s), "oracle rejects the union for ({d},{s})");
        let kept: Vec<(usize, usize)> = f.edges().iter().copied().filter(|_| rng.random_bool(0.7)).collect();
        let thin = BipartiteRel::new(left, right, kept).map_err(err("relation"))?;
        let fast = is_transversal(&e, &thin, d, s).map_err(err("check"))?;
        ensure!(fast == transversal_oracle(&e, &thin, d, s), "thinned subset disagrees with the oracle for ({d},{s})");
        if fast {
            thinned_true += 1;
        } else {
            thinned_false += 1;
        }
    }
    Ok(json!({ "relations": 20, "thinned_transversal": thinned_true, "thinned_not_transversal": thinned_false }))
}
