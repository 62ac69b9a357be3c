//! Finite point configurations on cubic surfaces and collinear-triple
//! counting.
//!
//! The counting engine is split into per-point work units
//! ([`rich_lines_from`], [`plane_candidates`]) and single-threaded assembly
//! so that drivers can partition the work freely; results do not depend on
//! the partition.

mod bipartite;
mod count;
mod plane;
mod three_planes;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::field::{Rat, Scalar};
use crate::proj::ProjPoint;

pub use bipartite::{es_relation, find_k_ds, is_transversal, union_of_kds, BipartiteRel, DEFAULT_SIZE_GUARD};
pub use count::{
    absorb_rich, count, count_with, merge_rich, rich_lines_from, Bucket, ExactIncidence, Incidence, IntIncidence,
    LineBuckets, OrchardReport, RichLines, TripleCounts,
};
pub use plane::{
    best_plane, plane_candidates, plane_concentration, plane_concentration_exhaustive, plane_concentration_with,
    Concentration,
};
pub use three_planes::{gamma_q, gamma_q_inverse, three_planes_composite, AffineScaling};

/// A finite set of distinct points of P³.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config<F: Scalar> {
    points: Vec<ProjPoint<F>>,
    surface_tag: Option<String>,
}

impl<F: Scalar> Config<F> {
    /// Keeps the first occurrence of every point.
    pub fn new(points: impl IntoIterator<Item = ProjPoint<F>>) -> Self {
        let mut seen = BTreeSet::new();
        let points = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
        Config { points, surface_tag: None }
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.surface_tag = Some(tag.into());
        self
    }

    pub fn points(&self) -> &[ProjPoint<F>] {
        &self.points
    }

    pub fn surface_tag(&self) -> Option<&str> {
        self.surface_tag.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Integer grid on the three parallel planes `x = -w, 0, w`: the points
/// `(i : a : b : 1)` with `i ∈ {-1, 0, 1}` and `|a|, |b| < n`.
pub fn grid_config(n: u32) -> Config<Rat> {
    let r = i64::from(n) - 1;
    let mut pts = Vec::new();
    for i in -1..=1 {
        for a in -r..=r {
            for b in -r..=r {
                pts.push(ProjPoint::from_ints([i, a, b, 1]).expect("w = 1"));
            }
        }
    }
    Config::new(pts).with_tag("F3")
}

/// Points `(t : 1 : 0 : t³)`, `0 < |t| ≤ m`, on the cuspidal section `z = 0`
/// of F1. Three of them are collinear exactly when their parameters sum to 0.
pub fn cusp_config(m: u32) -> Config<Rat> {
    let m = i64::from(m);
    let pts = (-m..=m).filter(|&t| t != 0).map(cusp_point);
    Config::new(pts).with_tag("F1")
}

pub fn cusp_point(t: i64) -> ProjPoint<Rat> {
    ProjPoint::from_ints([t, 1, 0, t * t * t]).expect("y = 1")
}
