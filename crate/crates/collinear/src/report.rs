//! Serializable views of results. Exact values are rendered as strings so
//! reports are byte-identical for identical inputs.

use std::collections::BTreeMap;

use collinear_core::orchard::{Concentration, OrchardReport, TripleCounts};
use collinear_core::Scalar;
use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CountsJson {
    pub ordered_triples: u64,
    pub three_rich_lines: u64,
    pub triple_lines: u64,
}

impl From<TripleCounts> for CountsJson {
    fn from(c: TripleCounts) -> Self {
        CountsJson { ordered_triples: c.ordered_triples, three_rich_lines: c.three_rich_lines, triple_lines: c.triple_lines }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LineJson {
    pub line: String,
    pub members: Vec<u32>,
    pub contained_in_surface: bool,
    pub on_surface: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneJson {
    pub plane: String,
    pub count: u64,
    pub total: u64,
    pub ratio: f64,
}

impl<F: Scalar> From<&Concentration<F>> for PlaneJson {
    fn from(c: &Concentration<F>) -> Self {
        PlaneJson { plane: c.plane.to_string(), count: c.count, total: c.total, ratio: c.ratio() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrchardJson {
    pub experiment: String,
    pub surface: Option<String>,
    pub field: &'static str,
    pub n_points: usize,
    pub raw: CountsJson,
    pub filtered: Option<CountsJson>,
    pub lines_in_surface: u64,
    pub two_point_lines: u64,
    /// Points per line mapped to the number of such lines.
    pub histogram: BTreeMap<usize, u64>,
    pub best_plane: Option<PlaneJson>,
    pub lines: Vec<LineJson>,
}

impl OrchardJson {
    pub fn new<F: Scalar>(experiment: &str, surface: Option<&str>, r: &OrchardReport<F>) -> Self {
        OrchardJson {
            experiment: experiment.to_string(),
            surface: surface.map(str::to_string),
            field: F::FIELD,
            n_points: r.n_points,
            raw: r.raw.into(),
            filtered: r.filtered.map(Into::into),
            lines_in_surface: r.lines_in_surface,
            two_point_lines: r.buckets.two_point_lines,
            histogram: r.histogram.clone(),
            best_plane: r.best_plane.as_ref().map(PlaneJson::from),
            lines: r
                .buckets
                .buckets
                .iter()
                .map(|b| LineJson {
                    line: b.line.to_string(),
                    members: b.members.clone(),
                    contained_in_surface: b.contained_in_surface,
                    on_surface: b.on_surface,
                })
                .collect(),
        }
    }
}

/// `points_on_line,lines` rows in increasing order.
pub fn histogram_csv(h: &BTreeMap<usize, u64>) -> String {
    let mut out = String::from("points_on_line,lines\n");
    for (k, v) in h {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use collinear_core::orchard::{count, cusp_config};

    #[test]
    fn csv_rows_sorted() {
        let h = BTreeMap::from([(3, 4), (2, 10)]);
        assert_eq!(histogram_csv(&h), "points_on_line,lines\n2,10\n3,4\n");
    }

    #[test]
    fn orchard_json_has_all_fields() {
        let cfg = cusp_config(4);
        let r = count(&cfg, None);
        let v: serde_json::Value = serde_json::from_str(&to_json(&OrchardJson::new("cusp", Some("F1"), &r))).unwrap();
        for key in ["n_points", "raw", "filtered", "lines_in_surface", "two_point_lines", "histogram", "best_plane", "lines"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        // Lines t1 + t2 + t3 = 0 with distinct nonzero |t| ≤ 4: {1,2,-3}, {1,3,-4}, and negatives.
        assert_eq!(v["raw"]["triple_lines"], 4);
    }
}
