use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::count::{ExactIncidence, Incidence, IntIncidence, OrchardReport};
use super::Config;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::proj::{plane_span, PlaneP3};

/// The plane carrying the most weighted triples.
#[derive(Clone, Debug, PartialEq)]
pub struct Concentration<F: Scalar> {
    pub plane: PlaneP3<F>,
    pub count: u64,
    pub total: u64,
}

impl<F: Scalar> Concentration<F> {
    pub fn ratio(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count as f64 / self.total as f64
        }
    }
}

/// Candidate planes through one weighted line: the spans with every point
/// off the line, grouped.
///
/// Planes meeting the configuration in at least two points off the line are
/// all returned, since they may carry further weighted lines. Among planes
/// with a single off-line point only the smallest key is kept: such a plane
/// holds no other line with three points, so its total is `weight`.
pub fn plane_candidates<F: Scalar, I: Incidence<F>>(inc: &I, members: &[u32], weight: u64) -> Vec<(I::Plane, u64)> {
    let (a, b) = (members[0] as usize, members[1] as usize);
    let mut keys: Vec<I::Plane> = (0..inc.len())
        .filter(|r| members.binary_search(&(*r as u32)).is_err())
        .filter_map(|r| inc.plane(a, b, r))
        .collect();
    keys.sort_unstable();
    let mut out = Vec::new();
    let mut lone: Option<I::Plane> = None;
    let mut start = 0;
    while start < keys.len() {
        let mut end = start + 1;
        while end < keys.len() && keys[end] == keys[start] {
            end += 1;
        }
        if end - start >= 2 {
            out.push((keys[start].clone(), weight));
        } else if lone.is_none() {
            lone = Some(keys[start].clone());
        }
        start = end;
    }
    if let Some(p) = lone {
        out.push((p, weight));
    }
    out
}

/// Sum candidate weights per plane and pick the maximum, ties going to the
/// smallest canonical key.
pub fn best_plane<F: Scalar, I: Incidence<F>>(
    inc: &I,
    mut entries: Vec<(I::Plane, u64)>,
    total: u64,
) -> Option<Concentration<F>> {
    entries.sort_unstable_by(|x, y| x.0.cmp(&y.0));
    let mut best: Option<(I::Plane, u64)> = None;
    let mut start = 0;
    while start < entries.len() {
        let mut end = start;
        let mut sum = 0;
        while end < entries.len() && entries[end].0 == entries[start].0 {
            sum += entries[end].1;
            end += 1;
        }
        if best.as_ref().is_none_or(|(_, c)| sum > *c) {
            best = Some((entries[start].0.clone(), sum));
        }
        start = end;
    }
    best.map(|(p, count)| Concentration { plane: inc.exact_plane(&p), count, total })
}

/// Concentration over an explicit key provider.
pub fn plane_concentration_with<F: Scalar, I: Incidence<F>>(inc: &I, report: &OrchardReport<F>) -> Result<Concentration<F>> {
    let lines = report.weighted_lines();
    if lines.is_empty() {
        return Err(Error::NoTripleLines);
    }
    let mut entries = Vec::new();
    for (bucket, w) in lines {
        entries.extend(plane_candidates(inc, &bucket.members, w));
    }
    best_plane(inc, entries, report.weighted_total()).ok_or(Error::DegenerateSpan)
}

/// The plane containing the most weighted collinear triples of the report:
/// filtered triples when the report was computed against a surface, raw
/// triples otherwise.
pub fn plane_concentration<F: Scalar>(config: &Config<F>, report: &OrchardReport<F>) -> Result<Concentration<F>> {
    match IntIncidence::new(config) {
        Some(inc) => plane_concentration_with(&inc, report),
        None => plane_concentration_with(&ExactIncidence::new(config), report),
    }
}

/// Same answer by enumerating the span of every non-collinear point triple.
/// Cubic in the number of points; intended for small configurations.
pub fn plane_concentration_exhaustive<F: Scalar>(
    config: &Config<F>,
    report: &OrchardReport<F>,
) -> Result<Concentration<F>> {
    let lines = report.weighted_lines();
    if lines.is_empty() {
        return Err(Error::NoTripleLines);
    }
    let pts = config.points();
    let mut planes = BTreeSet::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            for k in (j + 1)..pts.len() {
                if let Ok(p) = plane_span(&pts[i], &pts[j], &pts[k]) {
                    planes.insert(p);
                }
            }
        }
    }
    let mut best: Option<(PlaneP3<F>, u64)> = None;
    for plane in planes {
        let sum = lines.iter().filter(|(b, _)| plane.contains_line(&b.line)).map(|(_, w)| w).sum();
        if best.as_ref().is_none_or(|(_, c)| sum > *c) {
            best = Some((plane, sum));
        }
    }
    let (plane, count) = best.ok_or(Error::DegenerateSpan)?;
    Ok(Concentration { plane, count, total: report.weighted_total() })
}
