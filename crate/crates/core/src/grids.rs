//! Grids `P_m □ P_n` and ladders `P_2 □ P_n`: generators, closed-form ladder
//! resistances, and exact checks of the sign pattern of grid curvatures.
//!
//! Grid vertex `(i, j)` with `i < m`, `j < n` has index `i·n + j`. In a ladder
//! the two rails are `i ∈ {0, 1}` and position `k` (1-based) is column `k − 1`.
//! The `k`th rung joins `(0, k)` and `(1, k)`; rail `(i, k)` joins `(i, k)` and
//! `(i, k + 1)`.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::curvature::CurvatureVector;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::products::{classify_boundary_interior, Position, ProductDescriptor, VertexLabel};
use crate::scalar::{Rational, Scalar};
use crate::spectral::{effective_resistance, graph_resistances};

pub use crate::generators::path;

/// Largest side accepted by [`verify_grid_theorem`] (dense exact elimination).
pub const DEFAULT_EXACT_GRID_CAP: usize = 12;
/// Largest side accepted by float sweeps.
pub const DEFAULT_FLOAT_GRID_CAP: usize = 40;

/// Lower bound on boundary curvature once a grid is larger than 3×3, attained
/// on `P_3 □ P_4`.
pub fn boundary_curvature_floor() -> Rational {
    Rational::new(17.into(), 4830.into())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn grid_descriptor(m: usize, n: usize) -> Result<ProductDescriptor> {
    ProductDescriptor::new(vec![path(m)?, path(n)?])
}

/// `P_m □ P_n` with row-major labels.
pub fn grid(m: usize, n: usize) -> Result<WeightedGraph> {
    Ok(grid_descriptor(m, n)?.graph())
}

/// Ladder `P_2 □ P_n`.
pub fn ladder(n: usize) -> Result<WeightedGraph> {
    grid(2, n)
}

/// Curvatures of the boundary vertices of an `m × n` grid, keyed by index.
pub fn grid_boundary_curvatures<S: Scalar>(m: usize, n: usize) -> Result<BTreeMap<usize, S>> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("grid sides must be at least 2, got {m}×{n}")));
    }
    let pd = grid_descriptor(m, n)?;
    let g = pd.graph();
    let omega = graph_resistances::<S>(&g)?;
    let half = S::one() / (S::one() + S::one());
    let positions = classify_boundary_interior(&pd)?;
    Ok(positions
        .iter()
        .enumerate()
        .filter(|(_, p)| **p == Position::Boundary)
        .map(|(v, _)| {
            let total = g.neighbors(v).fold(S::zero(), |acc, (w, _)| acc + omega.get(v, w).clone());
            (v, S::one() - half.clone() * total)
        })
        .collect())
}

/// Sign pattern of a grid's curvature vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GridTheoremReport<S> {
    pub m: usize,
    pub n: usize,
    pub interior_all_negative: bool,
    pub boundary_all_nonnegative: bool,
    pub boundary_min: S,
    /// Boundary vertices attaining `boundary_min`.
    pub boundary_argmin: Vec<VertexLabel>,
    /// Largest interior curvature, if there is an interior.
    pub interior_max: Option<S>,
}

impl GridTheoremReport<Rational> {
    /// Both sign claims hold, and the boundary floor holds when `max(m, n) > 3`.
    pub fn holds(&self) -> bool {
        let floor_ok = self.m.max(self.n) <= 3 || self.boundary_min >= boundary_curvature_floor();
        self.interior_all_negative && self.boundary_all_nonnegative && floor_ok
    }
}

/// Curvature sign scan of an `m × n` grid on any backend; float comparisons
/// use `epsilon`.
pub fn grid_sign_scan<S: Scalar>(m: usize, n: usize, epsilon: f64) -> Result<GridTheoremReport<S>> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("grid sides must be at least 2, got {m}×{n}")));
    }
    let pd = grid_descriptor(m, n)?;
    let p = crate::curvature::graph_node_curvatures::<S>(&pd.graph())?;
    let positions = classify_boundary_interior(&pd)?;
    let eps = S::from_rational(&crate::scalar::rational_from_f64(epsilon)?);
    let mut boundary_min: Option<S> = None;
    let mut interior_max: Option<S> = None;
    let (mut interior_all_negative, mut boundary_all_nonnegative) = (true, true);
    for (v, pos) in positions.iter().enumerate() {
        let x = p.get(v).clone();
        match pos {
            Position::Interior => {
                interior_all_negative &= x < -eps.clone();
                if interior_max.as_ref().is_none_or(|best| x > *best) {
                    interior_max = Some(x);
                }
            }
            Position::Boundary => {
                boundary_all_nonnegative &= x >= -eps.clone();
                if boundary_min.as_ref().is_none_or(|best| x < *best) {
                    boundary_min = Some(x);
                }
            }
        }
    }
    let boundary_min = boundary_min.expect("every grid has boundary vertices");
    let boundary_argmin = positions
        .iter()
        .enumerate()
        .filter(|(v, pos)| {
            **pos == Position::Boundary && (p.get(*v).clone() - boundary_min.clone()).abs() <= eps
        })
        .map(|(v, _)| pd.label(v))
        .collect();
    Ok(GridTheoremReport {
        m,
        n,
        interior_all_negative,
        boundary_all_nonnegative,
        boundary_min,
        boundary_argmin,
        interior_max,
    })
}

/// Exact check that interior curvatures are negative and boundary curvatures
/// nonnegative on the `m × n` grid, `3 ≤ m, n ≤ cap`.
pub fn verify_grid_theorem(m: usize, n: usize, cap: usize) -> Result<GridTheoremReport<Rational>> {
    if m < 3 || n < 3 {
        return Err(Error::InvalidArgument(format!("grid theorem needs m, n ≥ 3, got {m}×{n}")));
    }
    if m > cap || n > cap {
        return Err(Error::InvalidArgument(format!("{m}×{n} exceeds the exact grid cap {cap}")));
    }
    grid_sign_scan::<Rational>(m, n, 0.0)
}

/// End-rung resistances `α_1 ..= α_n` of ladders of each length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderResistanceTable {
    alpha: Vec<Rational>,
}

impl LadderResistanceTable {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `α_k`, 1-based.
    pub fn alpha(&self, k: usize) -> &Rational {
        &self.alpha[k - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.alpha
    }

    /// `α_1 = 1`, the recurrence, strict decrease, and `α_k > √3 − 1`
    /// (as `α_k² + 2α_k − 2 > 0`).
    pub fn invariants_hold(&self) -> bool {
        let starts = self.alpha.first().is_none_or(One::is_one);
        let recurrence = self.alpha.windows(2).all(|w| w[1] == next_alpha(&w[0]));
        let decreasing = self.alpha.windows(2).all(|w| w[1] < w[0]);
        let above_limit = self.alpha.iter().all(exceeds_sqrt3_minus_1);
        starts && recurrence && decreasing && above_limit
    }
}

fn next_alpha(a: &Rational) -> Rational {
    (a + q(2, 1)) / (a + q(3, 1))
}

/// `x > √3 − 1` for `x > 0`, decided as `x² + 2x − 2 > 0`.
pub fn exceeds_sqrt3_minus_1(x: &Rational) -> bool {
    x.is_positive() && (x * x + x * q(2, 1) - q(2, 1)).is_positive()
}

/// `α_{k+1} = (α_k + 2)/(α_k + 3)` from `α_1 = 1`.
pub fn ladder_alpha(n: usize) -> Result<LadderResistanceTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("ladder length must be at least 1".into()));
    }
    let mut alpha = vec![Rational::one()];
    while alpha.len() < n {
        let next = next_alpha(alpha.last().expect("nonempty"));
        alpha.push(next);
    }
    Ok(LadderResistanceTable { alpha })
}

/// Resistance across the `k`th rung of `P_2 □ P_n`. The end rungs are `α_n`;
/// interior rungs see three parallel paths.
pub fn rung_resistance(n: usize, k: usize) -> Result<Rational> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let table = ladder_alpha(n)?;
    if k == 1 || k == n {
        return Ok(table.alpha(n).clone());
    }
    let left = table.alpha(k - 1) + q(2, 1);
    let right = table.alpha(n - k) + q(2, 1);
    Ok((Rational::one() + left.recip() + right.recip()).recip())
}

/// Resistance across rail `(i, k)` of `P_2 □ P_n`, the same for both rails.
pub fn rail_resistance(n: usize, k: usize) -> Result<Rational> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let table = ladder_alpha(n)?;
    if k == 1 || k == n - 1 {
        return Ok(table.alpha(n).clone());
    }
    let outer = table.alpha(k) + table.alpha(n - k) + Rational::one();
    Ok((Rational::one() + outer.recip()).recip())
}

/// Closed-form curvature vector of `P_2 □ P_n`.
pub fn ladder_curvatures(n: usize) -> Result<CurvatureVector<Rational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("ladder length must be at least 1".into()));
    }
    if n == 1 {
        return Ok(CurvatureVector::new(vec![q(1, 2), q(1, 2)]));
    }
    let table = ladder_alpha(n)?;
    let corner = Rational::one() - table.alpha(n);
    let column: Vec<Rational> = (1..=n)
        .map(|k| {
            if k == 1 || k == n {
                return corner.clone();
            }
            let a = table.alpha(k - 1);
            let b = table.alpha(n - k);
            let num = (a + q(1, 1)) * (b + q(1, 1)) - q(3, 1);
            let den = (a + q(3, 1)) * (b + q(3, 1)) - q(1, 1);
            -(num / den) / q(2, 1)
        })
        .collect();
    Ok(CurvatureVector::new(column.iter().chain(column.iter()).cloned().collect()))
}

/// The edge used as "central" in an `n × n` grid: from the centre vertex to its
/// right neighbour for odd `n`, and the middle edge of row `n/2 − 1` for even `n`.
pub fn central_edge(n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::InvalidArgument("grid side must be at least 2".into()));
    }
    let (row, col) = if n % 2 == 1 { ((n - 1) / 2, (n - 1) / 2) } else { (n / 2 - 1, n / 2 - 1) };
    Ok((row * n + col, row * n + col + 1))
}

/// `n → ω(central edge of the n × n grid)` for `2 ≤ n ≤ n_max`. These finite
/// truncations of the infinite lattice decrease toward ½ from above.
pub fn central_edge_resistance_sweep<S: Scalar>(n_max: usize) -> Result<Vec<(usize, S)>> {
    (2..=n_max)
        .map(|n| {
            let (u, v) = central_edge(n)?;
            Ok((n, effective_resistance::<S>(&grid(n, n)?, u, v)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::graph_node_curvatures;

    #[test]
    fn generators() {
        let p = path(1).unwrap();
        assert_eq!((p.n(), p.edge_count()), (1, 0));
        assert_eq!(path(2).unwrap().edge_count(), 1);
        let g = grid(3, 3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (9, 12));
        assert_eq!(grid(1, 5).unwrap(), path(5).unwrap());
        assert_eq!(ladder(4).unwrap().edge_count(), 10);
    }

    #[test]
    fn boundary_curvature_examples() {
        let b = grid_boundary_curvatures::<Rational>(3, 3).unwrap();
        assert_eq!(b.len(), 8);
        assert!(b.values().all(|x| !x.is_negative()));
        let b = grid_boundary_curvatures::<Rational>(3, 4).unwrap();
        assert_eq!(b.values().min(), Some(&boundary_curvature_floor()));
        let b = grid_boundary_curvatures::<Rational>(2, 2).unwrap();
        assert!(b.values().all(|x| *x == q(1, 4)));
    }

    #[test]
    fn boundary_map_agrees_with_full_curvature() {
        let p = graph_node_curvatures::<Rational>(&grid(4, 5).unwrap()).unwrap();
        for (v, x) in grid_boundary_curvatures::<Rational>(4, 5).unwrap() {
            assert_eq!(p.get(v), &x);
        }
    }

    #[test]
    fn grid_theorem_small_cases() {
        let r = verify_grid_theorem(3, 3, DEFAULT_EXACT_GRID_CAP).unwrap();
        assert!(r.interior_all_negative && r.boundary_all_nonnegative && r.holds());
        assert_eq!(r.boundary_min, q(0, 1));
        assert_eq!(r.interior_max, Some(q(-1, 6)));
        let r = verify_grid_theorem(3, 4, DEFAULT_EXACT_GRID_CAP).unwrap();
        assert!(r.holds());
        assert_eq!(r.boundary_min, boundary_curvature_floor());
        // middle of the long sides
        assert_eq!(
            r.boundary_argmin,
            vec![VertexLabel(vec![1, 0]), VertexLabel(vec![1, 3])]
        );
        assert!(verify_grid_theorem(2, 4, 12).is_err());
        assert!(verify_grid_theorem(3, 13, 12).is_err());
    }

    #[test]
    fn alpha_table() {
        let t = ladder_alpha(5).unwrap();
        assert_eq!(t.alpha(1), &q(1, 1));
        assert_eq!(t.alpha(2), &q(3, 4));
        assert_eq!(t.alpha(3), &q(11, 15));
        assert!(t.invariants_hold());
        assert!(ladder_alpha(0).is_err());
    }

    #[test]
    fn rung_and_rail_values() {
        assert_eq!(rung_resistance(3, 2), Ok(q(3, 5)));
        assert_eq!(rung_resistance(2, 1), Ok(q(3, 4)));
        assert_eq!(rung_resistance(1, 1), Ok(q(1, 1)));
        assert_eq!(rail_resistance(3, 1), Ok(q(11, 15)));
        assert_eq!(rail_resistance(4, 2), Ok(q(5, 7)));
        assert!(rung_resistance(3, 4).is_err());
        assert!(rail_resistance(3, 3).is_err());
        assert!(rail_resistance(1, 1).is_err());
    }

    #[test]
    fn rung_formula_is_checked_against_spectral() {
        let g = ladder(3).unwrap();
        assert_eq!(effective_resistance::<Rational>(&g, 1, 4), Ok(q(3, 5)));
        let g = ladder(4).unwrap();
        assert_eq!(effective_resistance::<Rational>(&g, 1, 2), Ok(q(5, 7)));
    }

    #[test]
    fn ladder_curvature_examples() {
        let p = ladder_curvatures(2).unwrap();
        assert!(p.values().iter().all(|x| *x == q(1, 4)));
        let p = ladder_curvatures(5).unwrap();
        assert_eq!(p.get(2), &q(-1, 418));
        assert_eq!(p.get(0), &q(56, 209));
        assert_eq!(p, graph_node_curvatures::<Rational>(&ladder(5).unwrap()).unwrap());
        assert_eq!(ladder_curvatures(1).unwrap(), graph_node_curvatures(&ladder(1).unwrap()).unwrap());
    }

    #[test]
    fn central_edges() {
        assert_eq!(central_edge(2), Ok((0, 1)));
        assert_eq!(central_edge(3), Ok((4, 5)));
        assert_eq!(central_edge(4), Ok((5, 6)));
        let sweep = central_edge_resistance_sweep::<Rational>(3).unwrap();
        assert_eq!(sweep[0], (2, q(3, 4)));
        assert_eq!(sweep[1], (3, q(7, 12)));
    }

    #[test]
    fn central_edge_decreases_toward_half() {
        let sweep = central_edge_resistance_sweep::<f64>(9).unwrap();
        assert!(sweep.windows(2).all(|w| w[1].1 < w[0].1));
        assert!(sweep.iter().all(|(_, w)| *w > 0.5));
    }
}
