//! Command-line front end. Reports are JSON on stdout, or in the file given
//! by `--report`; exit status is 0 on success, 1 when a check fails and 2 on
//! usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use collinear_core::geiser::{CoplanarityReport, CoplanarityTally, GeiserWord, DEFAULT_EXCEPTION_ALARM};
use collinear_core::orchard::{cusp_config, cusp_point, find_k_ds, grid_config, is_transversal, union_of_kds, Config};
use collinear_core::picard::{enumerate_degree3_classes, pushforward_curve_class, CurveClassWithMult, DivClass};
use collinear_core::quadric::commutation_experiment;
use collinear_core::{CubicSurface, GaussRat, PlaneP3, ProjPoint, Rat, Scalar};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fixtures::{AnySurface, FixtureSource, NAMES};
use crate::formats::{parse_points, parse_relation};
use crate::report::{histogram_csv, to_json, OrchardJson};
use crate::verify::{self, Ctx, DEFAULT_SEED};
use crate::{par, sample};

#[derive(Debug, Parser)]
#[command(name = "collinear", version, about = "Collinearity experiments on cubic surfaces")]
pub struct Cli {
    /// Fixture name (F1..F5) or path to a fixture file.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Use full enumeration where a pruned search is the default.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the acceptance suites.
    Verify {
        /// Suite name or number; repeatable.
        #[arg(long)]
        only: Vec<String>,
    },
    #[command(subcommand)]
    Geiser(GeiserCmd),
    #[command(subcommand)]
    Pic(PicCmd),
    #[command(subcommand)]
    Curve(CurveCmd),
    #[command(subcommand)]
    Quadric(QuadricCmd),
    #[command(subcommand)]
    Orchard(OrchardCmd),
}

#[derive(Debug, Subcommand)]
pub enum GeiserCmd {
    /// Trace a word of involutions on sample points.
    Word {
        /// Comma-separated base points: `t:<param>` on the cusp section or `x:y:z:w`.
        #[arg(long)]
        word: String,
        /// Cusp parameters `a..b` (inclusive); zero is skipped.
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
        /// File of sample points.
        #[arg(long)]
        points: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PicCmd {
    /// Image of a curve class and center multiplicity.
    Push {
        /// `a,b1,...,b6`.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = 0)]
        mult: i64,
    },
    /// Degree-3 classes and their paired classes.
    Enumerate,
    /// Run the lattice suites.
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum CurveCmd {
    /// Group law on a plane section.
    Group {
        #[arg(long, default_value = "F1-section")]
        fixture: String,
        /// add, neg, chord or circ.
        #[arg(long)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        args: String,
        /// Neutral element.
        #[arg(long, default_value = "t:0", allow_hyphen_values = true)]
        base: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum QuadricCmd {
    /// Commutation of reflection products.
    Commute {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Number of random centers.
        #[arg(long, default_value_t = 0)]
        sweep: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrchardCmd {
    /// Integer grid on three parallel planes.
    Grid {
        #[arg(long)]
        n: u32,
        /// Histogram CSV output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Points of the cuspidal section.
    Cusp {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Count a point file.
    Count {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Complete bipartite subgraphs of a relation file.
    Kds {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
    },
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let pool = match cli.workers {
        Some(0) => return Err(Error::Usage("--workers must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().ok(),
        None => None,
    };
    match pool {
        Some(p) => p.install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<bool> {
    let fixtures = FixtureSource::from_env();
    match &cli.command {
        Command::Verify { only } => run_verify(cli, fixtures, only),
        Command::Pic(PicCmd::Verify) => run_verify(cli, fixtures, &["picard".into(), "endgame".into()]),
        Command::Geiser(GeiserCmd::Word { word, samples, points }) => {
            let s = surface(cli, &fixtures, "F1")?;
            let s = s.rational()?;
            emit(cli, &geiser_word(s, word, samples.as_deref(), points.as_deref())?)
        }
        Command::Pic(PicCmd::Push { class, mult }) => emit(cli, &pic_push(class, *mult)?),
        Command::Pic(PicCmd::Enumerate) => emit(cli, &pic_enumerate()),
        Command::Curve(CurveCmd::Group { fixture, op, args, base }) => {
            let name = fixture.strip_suffix("-section").unwrap_or(fixture);
            if name != "F1" {
                return Err(Error::Usage(format!("unsupported curve fixture {fixture:?}; use F1-section")));
            }
            let s = fixtures.load(name)?;
            emit(cli, &curve_group(s.surface.rational()?, op, args, base)?)
        }
        Command::Quadric(QuadricCmd::Commute { a, b, c, sweep }) => emit(cli, &quadric_commute(cli.seed, a, b, c.as_deref(), *sweep)?),
        Command::Orchard(cmd) => orchard(cli, &fixtures, cmd),
    }
}

fn surface(cli: &Cli, fixtures: &FixtureSource, default: &str) -> Result<AnySurface> {
    Ok(fixtures.resolve(cli.surface.as_deref().unwrap_or(default))?.surface)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn emit(cli: &Cli, value: &Value) -> Result<bool> {
    let text = to_json(value);
    match &cli.report {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn run_verify(cli: &Cli, fixtures: FixtureSource, only: &[String]) -> Result<bool> {
    for name in NAMES {
        fixtures.text(name)?;
    }
    let ctx = Ctx::new(cli.seed, fixtures);
    let summary = verify::run(&ctx, only, |o| eprintln!("{}", o.line()))?;
    let text = to_json(&summary);
    match &cli.report {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    Ok(summary.passed)
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

/// `t:<int>` on the cusp section, or colon-separated coordinates.
fn parse_point(token: &str) -> Result<ProjPoint<Rat>> {
    let token = token.trim();
    if let Some(t) = token.strip_prefix("t:") {
        let t: i64 = t.trim().parse().map_err(|_| usage(format!("bad parameter in {token:?}")))?;
        return Ok(cusp_point(t));
    }
    Ok(token.parse()?)
}

fn parse_list(text: &str) -> Result<Vec<ProjPoint<Rat>>> {
    text.split(',').map(parse_point).collect()
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let (a, b) = text.split_once("..").ok_or_else(|| usage(format!("expected a..b, got {text:?}")))?;
    let p = |s: &str| s.trim().parse::<i64>().map_err(|_| usage(format!("bad range {text:?}")));
    Ok((p(a)?, p(b)?))
}

/// The cusp parameter of `(t : 1 : 0 : t³)`, if `p` is such a point.
fn cusp_param(p: &ProjPoint<Rat>) -> Option<i64> {
    let c = p.coords();
    if c[1].is_zero() {
        return None;
    }
    let t = c[0].clone() * &c[1].inv()?;
    let t = i64::try_from(t.numer().clone()).ok().filter(|_| t.is_integer())?;
    (cusp_point(t) == *p).then_some(t)
}

fn point_json(p: &ProjPoint<Rat>) -> Value {
    match cusp_param(p) {
        Some(t) => json!({ "point": p.to_string(), "t": t }),
        None => json!({ "point": p.to_string() }),
    }
}

fn geiser_word(s: &CubicSurface<Rat>, word: &str, samples: Option<&str>, points: Option<&Path>) -> Result<Value> {
    let base = parse_list(word)?;
    for b in &base {
        if !s.contains(b) {
            return Err(usage(format!("base point {b} is not on the surface")));
        }
    }
    let mut xs = Vec::new();
    if let Some(r) = samples {
        let (lo, hi) = parse_range(r)?;
        xs.extend((lo..=hi).filter(|&t| t != 0).map(cusp_point));
    }
    if let Some(path) = points {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        xs.extend(parse_points::<Rat>(&text)?);
    }
    if xs.is_empty() {
        return Err(usage("give --samples or --points"));
    }
    let w = GeiserWord::new(s, base.clone())?;
    let traces: Vec<Value> = xs
        .iter()
        .map(|x| {
            let tr = w.evaluate(x);
            json!({
                "input": point_json(x),
                "orbit": tr.orbit.iter().map(point_json).collect::<Vec<_>>(),
                "steps_valid": tr.steps.iter().map(|st| st.valid()).collect::<Vec<_>>(),
                "failure": tr.failure.as_ref().map(|f| json!({ "step": f.index, "error": f.error.to_string() })),
                "fixed": tr.final_point() == Some(x),
                "strongly_fixed": tr.is_strongly_fixed(),
            })
        })
        .collect();
    let mut out = json!({
        "word": base.iter().map(point_json).collect::<Vec<_>>(),
        "samples": traces,
    });
    if base.len() == 4 {
        let tally = CoplanarityTally::run(&w, &xs);
        let rep = CoplanarityReport::from_tally(&base, tally, DEFAULT_EXCEPTION_ALARM);
        out["coplanarity"] = json!({
            "strongly_fixed": rep.tally.fixed.len(),
            "not_fixed": rep.tally.not_fixed,
            "undefined": rep.tally.undefined,
            "base_coplanar": rep.base_coplanar,
            "plane": rep.plane.as_ref().map(|p| p.to_string()),
            "exceptions": rep.exceptions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "coplanar": rep.coplanar,
            "alarm": rep.alarm,
        });
    }
    Ok(out)
}

fn parse_class(text: &str) -> Result<DivClass> {
    let v: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("bad class entry {t:?}"))))
        .collect::<Result<_>>()?;
    match v[..] {
        [a, b1, b2, b3, b4, b5, b6] => Ok(DivClass::new(a, [b1, b2, b3, b4, b5, b6])),
        _ => Err(usage("a class is a,b1,...,b6")),
    }
}

fn class_json(c: &DivClass) -> Value {
    json!({ "class": c.to_string(), "a": c.a, "b": c.b, "degree": c.degree(), "genus": c.arithmetic_genus() })
}

fn pic_push(class: &str, m: i64) -> Result<Value> {
    let c = CurveClassWithMult { cls: parse_class(class)?, m };
    let img = pushforward_curve_class(&c)?;
    Ok(json!({ "input": class_json(&c.cls), "m": m, "image": class_json(&img.cls), "image_m": img.m }))
}

fn pic_enumerate() -> Value {
    let cases: Vec<Value> = enumerate_degree3_classes()
        .iter()
        .map(|c| {
            json!({
                "class": c.class.to_string(),
                "paired": c.paired.to_string(),
                "orbit_size": c.orbit_size,
                "planar": c.planar,
                "genus": [c.genus.0, c.genus.1],
                "pairings": [c.class.pairing(&c.class), c.paired.pairing(&c.paired), c.class.pairing(&c.paired)],
            })
        })
        .collect();
    json!({ "cases": cases })
}

fn curve_group(s: &CubicSurface<Rat>, op: &str, args: &str, base: &str) -> Result<Value> {
    let plane = PlaneP3::from_ints([0, 0, 1, 0])?;
    let curve = s.plane_section(&plane)?;
    let on_curve = |p: &ProjPoint<Rat>| curve.point_from_space(p);
    let u = on_curve(&parse_point(base)?)?;
    let pts = parse_list(args)?.iter().map(on_curve).collect::<collinear_core::Result<Vec<_>>>()?;
    let lift = |p: &collinear_core::curve::CurvePoint<Rat>| point_json(&curve.lift(p).expect("section is embedded"));
    let arity = |n: usize| if pts.len() == n { Ok(()) } else { Err(usage(format!("{op} takes {n} points"))) };
    let result = match op {
        "add" => {
            arity(2)?;
            lift(&curve.group_add(&u, &pts[0], &pts[1])?)
        }
        "chord" => {
            arity(2)?;
            lift(&curve.chord_op(&pts[0], &pts[1])?)
        }
        "neg" => {
            arity(1)?;
            lift(&curve.group_neg(&u, &pts[0])?)
        }
        "circ" => {
            arity(2)?;
            json!(curve.check_circ_identity(&u, &pts[0], &pts[1])?)
        }
        other => return Err(usage(format!("unknown op {other:?}; expected add, neg, chord or circ"))),
    };
    Ok(json!({ "op": op, "base": lift(&u), "args": pts.iter().map(lift).collect::<Vec<_>>(), "result": result }))
}

fn commute_json(c: &ProjPoint<GaussRat>, r: &collinear_core::quadric::CommutationReport) -> Value {
    json!({
        "c": c.to_string(),
        "hypothesis_holds": r.hypothesis_holds,
        "commutes": r.commutes,
        "c_on_line": r.c_on_line,
        "c_on_perp": r.c_on_perp,
        "consistent": r.consistent(),
    })
}

fn quadric_commute(seed: u64, a: &str, b: &str, c: Option<&str>, sweep: usize) -> Result<Value> {
    let a: ProjPoint<GaussRat> = a.parse()?;
    let b: ProjPoint<GaussRat> = b.parse()?;
    let mut rows = Vec::new();
    if let Some(c) = c {
        let c: ProjPoint<GaussRat> = c.parse()?;
        rows.push(commute_json(&c, &commutation_experiment(&a, &b, &c)?));
    }
    let mut rng = sample::rng(seed, 200);
    let mut skipped = 0;
    while rows.len() < sweep + usize::from(c.is_some()) {
        let v: [GaussRat; 4] = std::array::from_fn(|_| GaussRat::ints(rng.random_range(-3..=3), rng.random_range(-3..=3)));
        let Ok(c) = ProjPoint::new(v) else { continue };
        match commutation_experiment(&a, &b, &c) {
            Ok(r) => rows.push(commute_json(&c, &r)),
            Err(_) => skipped += 1,
        }
    }
    let violations = rows.iter().filter(|r| r["consistent"] == false).count();
    Ok(json!({ "a": a.to_string(), "b": b.to_string(), "samples": rows, "skipped_isotropic": skipped, "violations": violations }))
}

fn orchard_report<F: Scalar>(
    cli: &Cli,
    experiment: &str,
    tag: Option<&str>,
    config: &Config<F>,
    s: Option<&CubicSurface<F>>,
    csv: Option<&Path>,
) -> Result<bool> {
    let rep = if cli.exhaustive { par::analyze_exhaustive(config, s) } else { par::analyze(config, s, true) };
    if let Some(path) = csv {
        write_file(path, &histogram_csv(&rep.histogram))?;
    }
    let text = to_json(&OrchardJson::new(experiment, tag, &rep));
    match &cli.report {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn orchard(cli: &Cli, fixtures: &FixtureSource, cmd: &OrchardCmd) -> Result<bool> {
    let tag = |default: &str| cli.surface.clone().unwrap_or_else(|| default.to_string());
    match cmd {
        OrchardCmd::Grid { n, csv } => {
            if *n == 0 {
                return Err(usage("--n must be positive"));
            }
            let s = surface(cli, fixtures, "F3")?;
            orchard_report(cli, "grid", Some(&tag("F3")), &grid_config(*n), Some(s.rational()?), csv.as_deref())
        }
        OrchardCmd::Cusp { m, csv } => {
            if *m == 0 {
                return Err(usage("--m must be positive"));
            }
            let s = surface(cli, fixtures, "F1")?;
            orchard_report(cli, "cusp", Some(&tag("F1")), &cusp_config(*m), Some(s.rational()?), csv.as_deref())
        }
        OrchardCmd::Count { points, csv } => {
            let text =
                std::fs::read_to_string(points).map_err(|source| Error::Io { path: points.clone(), source })?;
            let s = match &cli.surface {
                Some(sel) => Some(fixtures.resolve(sel)?.surface),
                None => None,
            };
            let tag = cli.surface.as_deref();
            match s {
                Some(AnySurface::Q(s)) => orchard_report(cli, "count", tag, &Config::new(parse_points::<Rat>(&text)?), Some(&s), csv.as_deref()),
                Some(AnySurface::Gauss(s)) => {
                    orchard_report(cli, "count", tag, &Config::new(parse_points::<GaussRat>(&text)?), Some(&s), csv.as_deref())
                }
                None => match parse_points::<Rat>(&text) {
                    Ok(pts) => orchard_report(cli, "count", None, &Config::new(pts), None, csv.as_deref()),
                    Err(_) => orchard_report(cli, "count", None, &Config::new(parse_points::<GaussRat>(&text)?), None, csv.as_deref()),
                },
            }
        }
        OrchardCmd::Kds { relation, d, s } => {
            let text =
                std::fs::read_to_string(relation).map_err(|source| Error::Io { path: relation.clone(), source })?;
            let e = parse_relation(&text)?;
            let witness = find_k_ds(&e, *d, *s)?;
            let union = union_of_kds(&e, *d, *s)?;
            let transversal = is_transversal(&e, &union, *d, *s)?;
            let value = json!({
                "left": e.left(),
                "right": e.right(),
                "edges": e.edges().len(),
                "d": d,
                "s": s,
                "witness": witness.map(|(a, b)| json!({ "left": a, "right": b })),
                "union_edges": union.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                "union_is_transversal": transversal,
            });
            emit(cli, &value)?;
            Ok(transversal)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_tokens() {
        assert_eq!(parse_point("t:-2").unwrap(), cusp_point(-2));
        assert_eq!(parse_point(" 1:2:3:4").unwrap(), ProjPoint::from_ints([1, 2, 3, 4]).unwrap());
        assert!(parse_point("t:x").is_err());
        assert_eq!(cusp_param(&cusp_point(-7)), Some(-7));
        assert_eq!(cusp_param(&ProjPoint::from_ints([1, 1, 1, 0]).unwrap()), None);
        assert_eq!(parse_range("-20..20").unwrap(), (-20, 20));
    }

    #[test]
    fn class_parsing() {
        assert_eq!(parse_class("3,1,1,1,1,1,1").unwrap(), DivClass::hyperplane());
        assert!(parse_class("3,1").is_err());
    }

    #[test]
    fn push_of_a_line_through_the_center() {
        // A line through the center maps to a line not through it.
        let v = pic_push("1,1,0,0,0,0,0", 1).unwrap();
        assert_eq!(v["image"]["degree"], 1);
    }
}
