//! Grid geometry: vertices, pebbling distance, boundary-aware distance
//! neighborhoods, and centrality classification.
//!
//! A grid is the Cartesian product of paths P(n1) x ... x P(nd); moving a
//! pebble one step along axis i consumes `q_i` pebbles. The pebbling
//! distance between two vertices is therefore the product over axes of
//! `q_i^{|a_i - b_i|}`: the number of pebbles that must sit on one vertex to
//! deliver a single pebble to the other by moving straight toward it.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{biguint_gt_f64, pow2_le_f64};

/// An immutable grid shape: side lengths `n_1..n_d` and per-axis move costs
/// `q_1..q_d`. Everything else in the crate borrows one of these.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridSpec {
    sides: Vec<usize>,
    costs: Vec<u64>,
    len: usize,
}

impl GridSpec {
    /// Build a grid, validating `d >= 1`, every side `>= 1`, every cost `>= 2`.
    pub fn new(sides: Vec<usize>, costs: Vec<u64>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if costs.len() != sides.len() {
            return Err(Error::DimensionMismatch {
                expected: sides.len(),
                got: costs.len(),
            });
        }
        for (axis, &n) in sides.iter().enumerate() {
            if n == 0 {
                return Err(Error::ZeroSide { axis: axis + 1 });
            }
        }
        for (axis, &q) in costs.iter().enumerate() {
            if q < 2 {
                return Err(Error::CostTooSmall {
                    axis: axis + 1,
                    cost: q,
                });
            }
        }
        let mut len: usize = 1;
        for &n in &sides {
            len = len.checked_mul(n).ok_or(Error::GridTooLarge)?;
        }
        Ok(GridSpec { sides, costs, len })
    }

    /// The path P(n) with a single move cost.
    pub fn path(n: usize, q: u64) -> Result<Self> {
        GridSpec::new(vec![n], vec![q])
    }

    /// Cube `[n]^d` with the same cost on every axis.
    pub fn cube(n: usize, d: usize, q: u64) -> Result<Self> {
        GridSpec::new(vec![n; d], vec![q; d])
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[usize] {
        &self.sides
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    pub fn max_cost(&self) -> u64 {
        *self.costs.iter().max().expect("d >= 1")
    }

    /// Number of vertices as an exact integer.
    pub fn vertex_count(&self) -> BigUint {
        self.sides.iter().fold(BigUint::one(), |acc, &n| acc * n)
    }

    /// Number of vertices as a dense-array length.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // d >= 1 and every side >= 1
    }

    /// True when every axis has the same side length.
    pub fn is_cubic(&self) -> bool {
        self.sides.iter().all(|&n| n == self.sides[0])
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        v.coords().len() == self.dim()
            && v.coords()
                .iter()
                .zip(&self.sides)
                .all(|(&c, &n)| c >= 1 && c <= n)
    }

    pub fn check_vertex(&self, v: &Vertex) -> Result<()> {
        if v.coords().len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.coords().len(),
            });
        }
        for (axis, (&c, &n)) in v.coords().iter().zip(&self.sides).enumerate() {
            if c < 1 || c > n {
                return Err(Error::OutOfBounds {
                    axis: axis + 1,
                    coord: c,
                    side: n,
                });
            }
        }
        Ok(())
    }

    /// Row-major linear index of a vertex (first coordinate most significant).
    pub fn linear_index(&self, v: &Vertex) -> usize {
        debug_assert!(self.contains(v));
        v.coords()
            .iter()
            .zip(&self.sides)
            .fold(0usize, |acc, (&c, &n)| acc * n + (c - 1))
    }

    /// Inverse of [`GridSpec::linear_index`].
    pub fn vertex_at(&self, mut index: usize) -> Vertex {
        assert!(index < self.len, "linear index out of range");
        let mut coords = vec![0usize; self.dim()];
        for (slot, &n) in coords.iter_mut().zip(self.sides.iter()).rev() {
            *slot = index % n + 1;
            index /= n;
        }
        Vertex::new(coords)
    }

    /// All vertices in linear-index order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len).map(move |i| self.vertex_at(i))
    }

    /// Per-axis tables `q_i^0 .. q_i^{n_i - 1}`; the pebbling distance of any
    /// vertex pair is a product of one entry per axis.
    pub(crate) fn cost_power_tables(&self) -> Vec<Vec<BigUint>> {
        self.sides
            .iter()
            .zip(&self.costs)
            .map(|(&n, &q)| {
                let mut table = Vec::with_capacity(n);
                let mut acc = BigUint::one();
                for _ in 0..n {
                    table.push(acc.clone());
                    acc *= q;
                }
                table
            })
            .collect()
    }
}

/// A grid vertex, addressed with 1-based coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(Vec<usize>);

impl Vertex {
    pub fn new(coords: Vec<usize>) -> Self {
        Vertex(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for Vertex {
    fn from(coords: Vec<usize>) -> Self {
        Vertex(coords)
    }
}

/// Result of classifying a vertex against the boundary bands of width
/// `log C / log 2`: `t` counts the coordinates strictly inside both bands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityClass {
    pub t: usize,
    pub threshold_c: f64,
}

/// Pebbling distance `prod_i q_i^{|a_i - b_i|}` as an exact integer.
pub fn pebbling_distance(g: &GridSpec, a: &Vertex, b: &Vertex) -> Result<BigUint> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    let mut qd = BigUint::one();
    for ((&ai, &bi), &q) in a.coords().iter().zip(b.coords()).zip(g.costs()) {
        let delta = ai.abs_diff(bi);
        qd *= BigUint::from(q).pow(delta as u32);
    }
    Ok(qd)
}

/// Componentwise distance `(|a_1-b_1|, ..., |a_d-b_d|)`.
pub fn vector_distance(g: &GridSpec, a: &Vertex, b: &Vertex) -> Result<Vec<usize>> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    Ok(a.coords()
        .iter()
        .zip(b.coords())
        .map(|(&ai, &bi)| ai.abs_diff(bi))
        .collect())
}

/// Count the coordinates of `v` lying strictly inside the band
/// `log C / log 2 < v_i < n - log C / log 2`. Ties (a coordinate exactly on
/// a band edge) count as outside. Defined only on cubic grids.
pub fn central_class(g: &GridSpec, v: &Vertex, c: f64) -> Result<CentralityClass> {
    if !g.is_cubic() {
        return Err(Error::NonCubic);
    }
    g.check_vertex(v)?;
    if !c.is_finite() || c <= 1.0 {
        return Err(Error::domain(format!("centrality threshold must exceed 1, got {c}")));
    }
    let n = g.sides()[0];
    // log C / log 2 < v_i  <=>  C < 2^{v_i}, compared exactly.
    let t = v
        .coords()
        .iter()
        .filter(|&&vi| !pow2_le_f64(vi, c) && !pow2_le_f64(n - vi, c))
        .count();
    Ok(CentralityClass { t, threshold_c: c })
}

/// Histogram of centrality classes: entry `t` is the number of vertices with
/// exactly `t` interior coordinates. The classes partition the grid.
pub fn central_class_counts(g: &GridSpec, c: f64) -> Result<Vec<u64>> {
    if !g.is_cubic() {
        return Err(Error::NonCubic);
    }
    if !c.is_finite() || c <= 1.0 {
        return Err(Error::domain(format!("centrality threshold must exceed 1, got {c}")));
    }
    let n = g.sides()[0];
    // A coordinate value is either interior or boundary independently of the
    // other axes, so classify values once and take the multinomial spread.
    let interior_values = (1..=n)
        .filter(|&x| !pow2_le_f64(x, c) && !pow2_le_f64(n - x, c))
        .count() as u64;
    let boundary_values = n as u64 - interior_values;
    let d = g.dim();
    let mut counts = vec![0u64; d + 1];
    for (t, slot) in counts.iter_mut().enumerate() {
        let choose = crate::numeric::binomial(d as u64, t as u64);
        let mut total = choose;
        for _ in 0..t {
            total *= interior_values;
        }
        for _ in 0..(d - t) {
            total *= boundary_values;
        }
        *slot = u64::try_from(total).map_err(|_| Error::GridTooLarge)?;
    }
    Ok(counts)
}

/// The distance-`C` neighborhood of `v`: all vertices within pebbling
/// distance `C`, restricted to one side of `v` on each axis where `v` sits
/// inside a boundary band. Always contains `v` itself.
pub fn lambda_set(g: &GridSpec, v: &Vertex, c: f64) -> Result<BTreeSet<Vertex>> {
    g.check_vertex(v)?;
    if !c.is_finite() || c < 1.0 {
        return Err(Error::domain(format!("neighborhood radius must be at least 1, got {c}")));
    }
    let d = g.dim();
    // Per-axis coordinate windows: the largest offset m with q^m <= C,
    // clipped one-sided when v is within log C / log 2 of either end.
    let mut ranges = Vec::with_capacity(d);
    for axis in 0..d {
        let n = g.sides()[axis];
        let q = g.costs()[axis];
        let vi = v.coords()[axis];
        let mut max_offset = 0usize;
        let mut power = BigUint::from(q);
        while max_offset + 1 < n && !biguint_gt_f64(&power, c) {
            max_offset += 1;
            power *= q;
        }
        let lo = if pow2_le_f64(vi, c) {
            vi
        } else {
            vi.saturating_sub(max_offset).max(1)
        };
        let hi = if pow2_le_f64(n - vi, c) {
            vi
        } else {
            (vi + max_offset).min(n)
        };
        ranges.push((lo, hi));
    }

    struct Scan<'a> {
        radius: f64,
        ranges: &'a [(usize, usize)],
        tables: Vec<Vec<BigUint>>,
        center: &'a Vertex,
        out: BTreeSet<Vertex>,
    }
    impl Scan<'_> {
        fn walk(&mut self, axis: usize, qd_partial: BigUint, coords: &mut Vec<usize>) {
            if axis == self.ranges.len() {
                self.out.insert(Vertex::new(coords.clone()));
                return;
            }
            let (lo, hi) = self.ranges[axis];
            for w in lo..=hi {
                let delta = w.abs_diff(self.center.coords()[axis]);
                let qd = &qd_partial * &self.tables[axis][delta];
                if biguint_gt_f64(&qd, self.radius) {
                    continue;
                }
                coords[axis] = w;
                self.walk(axis + 1, qd, coords);
            }
        }
    }
    let mut scan = Scan {
        radius: c,
        ranges: &ranges,
        tables: g.cost_power_tables(),
        center: v,
        out: BTreeSet::new(),
    };
    let mut coords = vec![0usize; d];
    scan.walk(0, BigUint::one(), &mut coords);
    debug_assert!(scan.out.contains(v));
    Ok(scan.out)
}

/// Leading term `2^t (ln C)^d / (d! prod_i ln q_i)` of the neighborhood size
/// for a vertex with `t` interior coordinates.
pub fn lambda_size_estimate(g: &GridSpec, t: usize, c: f64) -> Result<f64> {
    if t > g.dim() {
        return Err(Error::domain(format!(
            "interior coordinate count {t} exceeds dimension {}",
            g.dim()
        )));
    }
    if !c.is_finite() || c <= 1.0 {
        return Err(Error::domain(format!("estimate requires a radius above 1, got {c}")));
    }
    let d = g.dim() as i32;
    let mut factorial = 1.0;
    for i in 2..=d {
        factorial *= i as f64;
    }
    let log_costs: f64 = g.costs().iter().map(|&q| (q as f64).ln()).product();
    Ok(2f64.powi(t as i32) * c.ln().powi(d) / (factorial * log_costs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[usize]) -> Vertex {
        Vertex::new(coords.to_vec())
    }

    #[test]
    fn grid_validation() {
        assert_eq!(GridSpec::new(vec![], vec![]), Err(Error::EmptyGrid));
        assert_eq!(
            GridSpec::new(vec![3, 0], vec![2, 2]),
            Err(Error::ZeroSide { axis: 2 })
        );
        assert_eq!(
            GridSpec::new(vec![3], vec![1]),
            Err(Error::CostTooSmall { axis: 1, cost: 1 })
        );
        assert_eq!(
            GridSpec::new(vec![3, 3], vec![2]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
        let g = GridSpec::new(vec![5, 4], vec![2, 3]).unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!(g.vertex_count(), BigUint::from(20u32));
    }

    #[test]
    fn linear_index_round_trip() {
        let g = GridSpec::new(vec![3, 4, 2], vec![2, 2, 2]).unwrap();
        for i in 0..g.len() {
            let vert = g.vertex_at(i);
            assert!(g.contains(&vert));
            assert_eq!(g.linear_index(&vert), i);
        }
        // row-major: first coordinate most significant
        assert_eq!(g.linear_index(&v(&[1, 1, 1])), 0);
        assert_eq!(g.linear_index(&v(&[1, 1, 2])), 1);
        assert_eq!(g.linear_index(&v(&[1, 2, 1])), 2);
        assert_eq!(g.linear_index(&v(&[2, 1, 1])), 8);
    }

    #[test]
    fn pebbling_distance_examples() {
        let p5 = GridSpec::path(5, 2).unwrap();
        assert_eq!(
            pebbling_distance(&p5, &v(&[3]), &v(&[3])).unwrap(),
            BigUint::one()
        );

        let g = GridSpec::new(vec![5, 5], vec![2, 3]).unwrap();
        assert_eq!(
            pebbling_distance(&g, &v(&[1, 1]), &v(&[3, 2])).unwrap(),
            BigUint::from(12u32)
        );

        let p10 = GridSpec::path(10, 2).unwrap();
        assert_eq!(
            pebbling_distance(&p10, &v(&[1]), &v(&[10])).unwrap(),
            BigUint::from(512u32)
        );

        assert!(pebbling_distance(&p10, &v(&[1]), &v(&[11])).is_err());
    }

    #[test]
    fn pebbling_distance_symmetry_and_product() {
        let g = GridSpec::new(vec![4, 5], vec![2, 3]).unwrap();
        let p4 = GridSpec::path(4, 2).unwrap();
        let p5 = GridSpec::path(5, 3).unwrap();
        for a in g.vertices() {
            for b in g.vertices() {
                let ab = pebbling_distance(&g, &a, &b).unwrap();
                let ba = pebbling_distance(&g, &b, &a).unwrap();
                assert_eq!(ab, ba);
                // multiplicative across coordinates
                let first = pebbling_distance(&p4, &v(&[a.coords()[0]]), &v(&[b.coords()[0]])).unwrap();
                let second = pebbling_distance(&p5, &v(&[a.coords()[1]]), &v(&[b.coords()[1]])).unwrap();
                assert_eq!(ab, first * second);
            }
            assert_eq!(pebbling_distance(&g, &a, &a).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn vector_distance_examples() {
        let g = GridSpec::new(vec![5, 5], vec![2, 2]).unwrap();
        assert_eq!(vector_distance(&g, &v(&[1, 1]), &v(&[3, 2])).unwrap(), vec![2, 1]);
        assert_eq!(vector_distance(&g, &v(&[2, 3]), &v(&[2, 3])).unwrap(), vec![0, 0]);
        assert_eq!(vector_distance(&g, &v(&[1, 5]), &v(&[4, 1])).unwrap(), vec![3, 4]);
    }

    #[test]
    fn central_class_examples() {
        let p10 = GridSpec::path(10, 2).unwrap();
        assert_eq!(central_class(&p10, &v(&[5]), 4.0).unwrap().t, 1);
        assert_eq!(central_class(&p10, &v(&[1]), 4.0).unwrap().t, 0);

        let g = GridSpec::new(vec![10, 10], vec![2, 2]).unwrap();
        assert_eq!(central_class(&g, &v(&[5, 9]), 4.0).unwrap().t, 1);

        // ties are outside: v_i = log C / log 2 exactly
        assert_eq!(central_class(&p10, &v(&[2]), 4.0).unwrap().t, 0);
        assert_eq!(central_class(&p10, &v(&[3]), 4.0).unwrap().t, 1);

        assert!(central_class(&p10, &v(&[5]), 1.0).is_err());
        let rect = GridSpec::new(vec![10, 9], vec![2, 2]).unwrap();
        assert!(matches!(
            central_class(&rect, &v(&[5, 5]), 4.0),
            Err(Error::NonCubic)
        ));
    }

    #[test]
    fn central_classes_partition_the_grid() {
        for (n, d, c) in [(10, 1, 4.0), (10, 2, 4.0), (6, 3, 5.0), (9, 2, 2.5)] {
            let g = GridSpec::cube(n, d, 2).unwrap();
            let counts = central_class_counts(&g, c).unwrap();
            let mut direct = vec![0u64; d + 1];
            for vert in g.vertices() {
                direct[central_class(&g, &vert, c).unwrap().t] += 1;
            }
            assert_eq!(counts, direct);
            assert_eq!(counts.iter().sum::<u64>(), g.len() as u64);
        }
    }

    #[test]
    fn lambda_set_examples() {
        let p10 = GridSpec::path(10, 2).unwrap();
        let mid: Vec<usize> = lambda_set(&p10, &v(&[5]), 4.0)
            .unwrap()
            .iter()
            .map(|w| w.coords()[0])
            .collect();
        assert_eq!(mid, vec![3, 4, 5, 6, 7]);

        let edge: Vec<usize> = lambda_set(&p10, &v(&[1]), 4.0)
            .unwrap()
            .iter()
            .map(|w| w.coords()[0])
            .collect();
        assert_eq!(edge, vec![1, 2, 3]);

        let tiny = lambda_set(&p10, &v(&[7]), 1.0).unwrap();
        assert_eq!(tiny.len(), 1);
        assert!(tiny.contains(&v(&[7])));

        assert!(lambda_set(&p10, &v(&[5]), 0.5).is_err());
    }

    #[test]
    fn lambda_set_monotone_while_vertex_stays_interior() {
        // growing the radius only adds vertices as long as the center stays
        // outside both boundary bands (the bands themselves widen with c)
        let g = GridSpec::new(vec![25, 25], vec![2, 3]).unwrap();
        let center = v(&[13, 13]);
        let mut prev: Option<BTreeSet<Vertex>> = None;
        for c in [1.0f64, 2.0, 3.5, 6.0, 12.0, 100.0, 2048.0] {
            assert_eq!(central_class(&g, &center, c.max(1.5)).unwrap().t, 2);
            let cur = lambda_set(&g, &center, c).unwrap();
            if let Some(p) = &prev {
                assert!(p.is_subset(&cur), "radius {c} lost vertices");
            }
            prev = Some(cur);
        }
    }

    #[test]
    fn lambda_set_clips_one_side_when_a_band_swallows_the_vertex() {
        // v = 4 on a long path: at radius 8 the band reaches coordinate 3 and
        // the set is the plain distance ball; at radius 16 it reaches 4, the
        // constraint w >= v activates, and the left side drops out
        let p = GridSpec::path(40, 2).unwrap();
        let at = |c: f64| -> Vec<usize> {
            lambda_set(&p, &v(&[4]), c)
                .unwrap()
                .iter()
                .map(|w| w.coords()[0])
                .collect()
        };
        assert_eq!(at(8.0), vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(at(16.0), vec![4, 5, 6, 7, 8]);
    }

    #[test]
    fn lambda_size_estimate_examples() {
        let p = GridSpec::path(100, 2).unwrap();
        let est = lambda_size_estimate(&p, 1, 4.0).unwrap();
        assert!((est - 4.0).abs() < 1e-12);
        let est0 = lambda_size_estimate(&p, 0, 4.0).unwrap();
        assert!((est0 - 2.0).abs() < 1e-12);
        // leading term vanishes as the radius approaches 1
        let tiny = lambda_size_estimate(&p, 0, 1.0 + 1e-12).unwrap();
        assert!(tiny < 1e-10);
        assert!(lambda_size_estimate(&p, 0, 1.0).is_err());
        assert!(lambda_size_estimate(&p, 2, 4.0).is_err());
    }

    #[test]
    fn lambda_size_tracks_estimate_for_large_radii() {
        // ratio |Lambda| / estimate approaches 1 as the radius grows
        for d in 1..=3usize {
            for exp in [4u32, 6, 8, 10, 12] {
                if d == 3 && exp > 10 {
                    continue; // keep the enumeration box modest
                }
                let c = 2f64.powi(exp as i32);
                let band = exp as usize; // log2 C
                let n = 2 * band + 5;
                let g = GridSpec::cube(n, d, 2).unwrap();
                let center = v(&vec![band + 2; d]);
                let t = central_class(&g, &center, c).unwrap().t;
                assert_eq!(t, d, "chosen vertex should be fully interior");
                let size = lambda_set(&g, &center, c).unwrap().len() as f64;
                let est = lambda_size_estimate(&g, t, c).unwrap();
                let ratio = size / est;
                let slack = 10.0 / c.ln();
                assert!(
                    (ratio - 1.0).abs() <= slack,
                    "d={d} C=2^{exp}: ratio {ratio} outside 1 +- {slack}"
                );
            }
        }
    }
}
