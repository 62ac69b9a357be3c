//! Brute-force references for the orchard suites, on machine integers.

use std::collections::HashMap;

pub type IPoint = [i64; 4];

fn pluecker(p: &IPoint, q: &IPoint) -> [i64; 6] {
    [
        p[0] * q[1] - p[1] * q[0],
        p[0] * q[2] - p[2] * q[0],
        p[0] * q[3] - p[3] * q[0],
        p[1] * q[2] - p[2] * q[1],
        p[1] * q[3] - p[3] * q[1],
        p[2] * q[3] - p[3] * q[2],
    ]
}

/// The four 3×3 minors of the rows spanning `l` and `r`, i.e. the plane
/// through them up to the sign pattern.
fn minors(l: &[i64; 6], r: &IPoint) -> [i64; 4] {
    let [p01, p02, p03, p12, p13, p23] = *l;
    [
        p12 * r[3] - p13 * r[2] + p23 * r[1],
        p02 * r[3] - p03 * r[2] + p23 * r[0],
        p01 * r[3] - p03 * r[1] + p13 * r[0],
        p01 * r[2] - p02 * r[1] + p12 * r[0],
    ]
}

fn on_line(l: &[i64; 6], r: &IPoint) -> bool {
    minors(l, r) == [0; 4]
}

/// Unordered collinear triples of distinct points, and those among them
/// whose three `class` values are pairwise different.
pub fn collinear_triples(points: &[IPoint], class: impl Fn(&IPoint) -> i64) -> (u64, u64) {
    let (mut all, mut mixed) = (0u64, 0u64);
    let n = points.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let l = pluecker(&points[i], &points[j]);
            let (ci, cj) = (class(&points[i]), class(&points[j]));
            for r in &points[(j + 1)..] {
                if on_line(&l, r) {
                    all += 1;
                    let cr = class(r);
                    if ci != cj && cj != cr && ci != cr {
                        mixed += 1;
                    }
                }
            }
        }
    }
    (all, mixed)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The largest number of the given lines lying in one plane, found by
/// counting the plane of every coplanar pair. Lines must be distinct.
pub fn max_lines_in_plane(lines: &[[IPoint; 2]]) -> u64 {
    let keys: Vec<[i64; 6]> = lines.iter().map(|[p, q]| pluecker(p, q)).collect();
    let mut pairs: HashMap<[i64; 4], u64> = HashMap::new();
    for (i, l) in keys.iter().enumerate() {
        for (m, pts) in keys[(i + 1)..].iter().zip(&lines[(i + 1)..]) {
            // Two lines are coplanar exactly when their Plücker pairing vanishes.
            let pairing = l[0] * m[5] - l[1] * m[4] + l[2] * m[3] + l[3] * m[2] - l[4] * m[1] + l[5] * m[0];
            if pairing != 0 {
                continue;
            }
            let off = if on_line(l, &pts[0]) { &pts[1] } else { &pts[0] };
            let mut key = minors(l, off);
            let g = key.iter().fold(0, |g, &x| gcd(g, x));
            let sign = key.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
            key = key.map(|x| x / g * sign);
            *pairs.entry(key).or_insert(0) += 1;
        }
    }
    let best = pairs.values().copied().max().unwrap_or(0);
    if lines.is_empty() {
        return 0;
    }
    let mut k = 1;
    while k * (k - 1) / 2 < best {
        k += 1;
    }
    k
}

/// Lines of the three-plane grid meeting each plane once: endpoints on the
/// outer planes with an integral midpoint.
pub fn grid_transversals(n: u32) -> Vec<[IPoint; 2]> {
    let r = i64::from(n) - 1;
    let mut out = Vec::new();
    for a1 in -r..=r {
        for b1 in -r..=r {
            for a3 in -r..=r {
                for b3 in -r..=r {
                    if (a1 + a3) % 2 == 0 && (b1 + b3) % 2 == 0 {
                        out.push([[-1, a1, b1, 1], [1, a3, b3, 1]]);
                    }
                }
            }
        }
    }
    out
}

/// Unordered triples of distinct nonzero parameters in `[-m, m]` summing
/// to zero.
pub fn zero_sum_triples(m: i64) -> u64 {
    let ts: Vec<i64> = (-m..=m).filter(|&t| t != 0).collect();
    let mut n = 0;
    for i in 0..ts.len() {
        for j in (i + 1)..ts.len() {
            for k in (j + 1)..ts.len() {
                n += u64::from(ts[i] + ts[j] + ts[k] == 0);
            }
        }
    }
    n
}
