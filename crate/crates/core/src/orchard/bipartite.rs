use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::geiser::GoodnessCache;
use crate::proj::ProjPoint;
use crate::surface::CubicSurface;

/// Searches larger than this many rectangles are refused.
pub const DEFAULT_SIZE_GUARD: u128 = 50_000_000;

/// A relation between `0..left` and `0..right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteRel {
    left: usize,
    right: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteRel {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|(a, b)| *a >= left || *b >= right) {
            return Err(Error::EdgeOutOfBounds(a, b));
        }
        Ok(BipartiteRel { left, right, edges })
    }

    pub fn complete(left: usize, right: usize) -> Self {
        let edges = (0..left).flat_map(|a| (0..right).map(move |b| (a, b))).collect();
        BipartiteRel { left, right, edges }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn is_subset(&self, other: &BipartiteRel) -> bool {
        self.edges.is_subset(&other.edges)
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.left];
        for &(a, b) in &self.edges {
            out[a].push(b);
        }
        out
    }

    /// Common neighbourhood of a set of left vertices.
    fn common(&self, nb: &[Vec<usize>], set: &[usize]) -> Vec<usize> {
        let mut acc = nb[set[0]].clone();
        for &a in &set[1..] {
            acc.retain(|b| nb[a].binary_search(b).is_ok());
        }
        acc
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `false`.
fn for_each_subset(items: &[usize], k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut chosen: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        if !f(&chosen) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            chosen[j] = items[idx[j]];
        }
    }
}

fn guard(e: &BipartiteRel, d: usize, s: usize) -> Result<()> {
    if d == 0 || s == 0 {
        return Err(Error::Hypothesis(alloc::string::String::from("d and s must be positive")));
    }
    let work = binomial(e.left, d).saturating_mul(binomial(e.right, s).max(1));
    if work > DEFAULT_SIZE_GUARD {
        return Err(Error::SizeGuard(work));
    }
    Ok(())
}

/// A complete bipartite `A × B ⊆ E` with `|A| = d`, `|B| = s`, if any.
pub fn find_k_ds(e: &BipartiteRel, d: usize, s: usize) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    guard(e, d, s)?;
    let nb = e.neighbours();
    let left: Vec<usize> = (0..e.left).collect();
    let mut found = None;
    for_each_subset(&left, d, |a| {
        let common = e.common(&nb, a);
        if common.len() >= s {
            found = Some((a.to_vec(), common[..s].to_vec()));
            return false;
        }
        true
    });
    Ok(found)
}

/// Whether every `d × s` rectangle of `E` has, for each of its left
/// vertices, an `F`-edge into the rectangle. Checked over every rectangle of
/// exactly that shape, which also covers all larger ones.
pub fn is_transversal(e: &BipartiteRel, f: &BipartiteRel, d: usize, s: usize) -> Result<bool> {
    if !f.is_subset(e) {
        return Err(Error::NotSubset);
    }
    guard(e, d, s)?;
    let nb = e.neighbours();
    let left: Vec<usize> = (0..e.left).collect();
    let mut ok = true;
    for_each_subset(&left, d, |a| {
        let common = e.common(&nb, a);
        for_each_subset(&common, s, |b| {
            ok = a.iter().all(|&x| b.iter().any(|&y| f.contains(x, y)));
            ok
        });
        ok
    });
    Ok(ok)
}

/// Union of the edge sets of all `K_{d,s}` instances in `E`.
pub fn union_of_kds(e: &BipartiteRel, d: usize, s: usize) -> Result<BipartiteRel> {
    guard(e, d, s)?;
    let nb = e.neighbours();
    let left: Vec<usize> = (0..e.left).collect();
    let mut edges = BTreeSet::new();
    for_each_subset(&left, d, |a| {
        let common = e.common(&nb, a);
        if common.len() >= s {
            for &x in a {
                edges.extend(common.iter().map(|&y| (x, y)));
            }
        }
        true
    });
    Ok(BipartiteRel { left: e.left, right: e.right, edges })
}

/// The relation on pairs of surface points: `(x₁,x₂) ~ (y₁,y₂)` when some
/// point `z` makes both `x₁,y₁,z` and `x₂,y₂,z` collinear triples of
/// distinct good points.
pub fn es_relation<F: Scalar>(
    s: &CubicSurface<F>,
    xs: &[(ProjPoint<F>, ProjPoint<F>)],
    ys: &[(ProjPoint<F>, ProjPoint<F>)],
) -> Result<BipartiteRel> {
    let mut cache = GoodnessCache::new();
    let third = |x: &ProjPoint<F>, y: &ProjPoint<F>, cache: &mut GoodnessCache<F>| -> Option<ProjPoint<F>> {
        if x == y {
            return None;
        }
        let z = s.third_intersection(x, y).ok()?;
        let valid = z != *x && z != *y && cache.is_good(s, x) && cache.is_good(s, y) && cache.is_good(s, &z);
        valid.then_some(z)
    };
    let mut edges = Vec::new();
    for (i, (x1, x2)) in xs.iter().enumerate() {
        for (j, (y1, y2)) in ys.iter().enumerate() {
            let Some(z) = third(x1, y1, &mut cache) else { continue };
            if third(x2, y2, &mut cache).as_ref() == Some(&z) {
                edges.push((i, j));
            }
        }
    }
    BipartiteRel::new(xs.len(), ys.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::forms::Cubic;
    use crate::orchard::cusp_point;
    use crate::proj::coplanar4;
    use proptest::prelude::*;

    #[test]
    fn complete_relation_has_witness() {
        let e = BipartiteRel::complete(3, 4);
        let (a, b) = find_k_ds(&e, 2, 3).unwrap().unwrap();
        assert_eq!((a.len(), b.len()), (2, 3));
        assert!(a.iter().all(|&x| b.iter().all(|&y| e.contains(x, y))));
    }

    #[test]
    fn matching_has_no_k22() {
        let e = BipartiteRel::new(5, 5, (0..5).map(|i| (i, i))).unwrap();
        assert_eq!(find_k_ds(&e, 2, 2).unwrap(), None);
        let empty = BipartiteRel::new(5, 5, []).unwrap();
        assert!(is_transversal(&e, &empty, 2, 2).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(BipartiteRel::new(2, 2, [(2, 0)]), Err(Error::EdgeOutOfBounds(2, 0)));
        let e = BipartiteRel::new(2, 2, [(0, 0)]).unwrap();
        let f = BipartiteRel::new(2, 2, [(1, 1)]).unwrap();
        assert_eq!(is_transversal(&e, &f, 1, 1), Err(Error::NotSubset));
        let big = BipartiteRel::complete(200, 200);
        assert!(matches!(find_k_ds(&big, 6, 6), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn subsets_enumerated() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], [1, 2]);
        assert_eq!(seen[5], [3, 4]);
        let mut empty = 0;
        for_each_subset(&[], 0, |_| {
            empty += 1;
            true
        });
        assert_eq!(empty, 1);
    }

    /// Transversality through a count: a rectangle violates the condition
    /// at `a` exactly when `s` common neighbours have no F-edge to `a`.
    fn transversal_oracle(e: &BipartiteRel, f: &BipartiteRel, d: usize, s: usize) -> bool {
        let left: Vec<usize> = (0..e.left()).collect();
        let nb = e.neighbours();
        let mut ok = true;
        for_each_subset(&left, d, |a| {
            let common = e.common(&nb, a);
            if common.len() >= s {
                for &x in a {
                    let missing = common.iter().filter(|&&y| !f.contains(x, y)).count();
                    if missing >= s {
                        ok = false;
                    }
                }
            }
            ok
        });
        ok
    }

    fn relation() -> impl Strategy<Value = BipartiteRel> {
        (2usize..=8, 2usize..=8)
            .prop_flat_map(|(l, r)| (Just(l), Just(r), proptest::collection::vec(any::<bool>(), l * r)))
            .prop_map(|(l, r, bits)| {
                let edges = (0..l * r).filter(|&k| bits[k]).map(|k| (k / r, k % r));
                BipartiteRel::new(l, r, edges).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn union_of_instances_is_transversal(e in relation(), d in 1usize..=3, s in 1usize..=3) {
            let u = union_of_kds(&e, d, s).unwrap();
            prop_assert!(is_transversal(&e, &u, d, s).unwrap());
            prop_assert!(is_transversal(&e, &e, d, s).unwrap());
        }

        #[test]
        fn transversal_matches_oracle(e in relation(), keep in proptest::collection::vec(any::<bool>(), 64), d in 1usize..=3, s in 1usize..=3) {
            let f = BipartiteRel::new(e.left(), e.right(), e.edges().iter().enumerate().filter(|(k, _)| keep[k % 64]).map(|(_, x)| *x)).unwrap();
            prop_assert_eq!(is_transversal(&e, &f, d, s).unwrap(), transversal_oracle(&e, &f, d, s));
        }
    }

    #[test]
    fn es_relation_on_cusp_section() {
        let s = CubicSurface::new(
            Cubic::<Rat, 4>::from_int_terms(&[([0, 2, 0, 1], 1), ([3, 0, 0, 0], -1), ([0, 0, 3, 0], 1), ([0, 0, 1, 2], 1)]),
        )
        .unwrap();
        let params = [(1, 2), (2, 3), (3, 4), (1, 5), (4, 2)];
        let xs: Vec<_> = params.iter().map(|&(a, b)| (cusp_point(a), cusp_point(b))).collect();
        let ys: Vec<_> = [(3, 2), (2, 1), (4, 3), (-3, -2)].iter().map(|&(a, b)| (cusp_point(a), cusp_point(b))).collect();
        let e = es_relation(&s, &xs, &ys).unwrap();
        // Parameters: edge iff x₁ + y₁ = x₂ + y₂ with a valid third point.
        for (i, &(x1, x2)) in params.iter().enumerate() {
            for (j, &(y1, y2)) in [(3i64, 2i64), (2, 1), (4, 3), (-3, -2)].iter().enumerate() {
                let z = -(x1 + y1);
                let expect = x1 != y1
                    && x2 != y2
                    && x1 + y1 == x2 + y2
                    && z != 0
                    && ![x1, y1].contains(&z)
                    && ![x2, y2].contains(&z);
                assert_eq!(e.contains(i, j), expect, "{i} {j}");
            }
        }
        let (a, b) = find_k_ds(&e, 2, 2).unwrap().expect("witness");
        let pts: Vec<ProjPoint<Rat>> = a
            .iter()
            .flat_map(|&i| [xs[i].0.clone(), xs[i].1.clone()])
            .chain(b.iter().flat_map(|&j| [ys[j].0.clone(), ys[j].1.clone()]))
            .collect();
        for w in pts.windows(4) {
            assert!(coplanar4(&w[0], &w[1], &w[2], &w[3]));
        }
    }
}
