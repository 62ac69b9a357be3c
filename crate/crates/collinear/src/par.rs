//! Rayon drivers for orchard counting and plane concentration.
//!
//! Work is split per point index; partial results merge by key, so the
//! output does not depend on the number of workers.

use collinear_core::orchard::{
    absorb_rich, best_plane, count_with, merge_rich, plane_candidates, rich_lines_from, Concentration, Config,
    ExactIncidence, Incidence, IntIncidence, OrchardReport, RichLines,
};
use collinear_core::{CubicSurface, Error, Scalar};
use rayon::prelude::*;

fn rich_lines_par<F: Scalar, I: Incidence<F>>(inc: &I) -> RichLines<I::Line> {
    (0..inc.len())
        .into_par_iter()
        .fold(RichLines::new, |mut map, i| {
            absorb_rich(&mut map, rich_lines_from(inc, i));
            map
        })
        .reduce(RichLines::new, merge_rich)
}

fn concentration_par<F: Scalar, I: Incidence<F>>(
    inc: &I,
    report: &OrchardReport<F>,
) -> collinear_core::Result<Concentration<F>> {
    let lines = report.weighted_lines();
    if lines.is_empty() {
        return Err(Error::NoTripleLines);
    }
    let entries: Vec<(I::Plane, u64)> =
        lines.par_iter().flat_map_iter(|(b, w)| plane_candidates(inc, &b.members, *w)).collect();
    best_plane(inc, entries, report.weighted_total()).ok_or(Error::DegenerateSpan)
}

/// Counts collinear triples and, when `concentration` is set, attaches the
/// best plane (left empty if the configuration has no weighted lines).
pub fn analyze<F: Scalar>(
    config: &Config<F>,
    surface: Option<&CubicSurface<F>>,
    concentration: bool,
) -> OrchardReport<F> {
    fn run<F: Scalar, I: Incidence<F>>(
        inc: &I,
        config: &Config<F>,
        surface: Option<&CubicSurface<F>>,
        concentration: bool,
    ) -> OrchardReport<F> {
        let mut report = count_with(config, rich_lines_par(inc), surface);
        if concentration {
            report.best_plane = concentration_par(inc, &report).ok();
        }
        report
    }
    match IntIncidence::new(config) {
        Some(inc) => run(&inc, config, surface, concentration),
        None => run(&ExactIncidence::new(config), config, surface, concentration),
    }
}

/// Best plane by the cubic enumeration of all point triples.
pub fn analyze_exhaustive<F: Scalar>(config: &Config<F>, surface: Option<&CubicSurface<F>>) -> OrchardReport<F> {
    let mut report = analyze(config, surface, false);
    report.best_plane = collinear_core::orchard::plane_concentration_exhaustive(config, &report).ok();
    report
}
