//! Upper and lower bounds on the resistance of a product edge in terms of the
//! factor-edge resistance, and a harness that checks them on actual products.
//!
//! For `G = G⁽¹⁾ □ G⁽²⁾` and the product edge `v⁽¹⁾⊗v⁽²⁾ — w⁽¹⁾⊗v⁽²⁾` over the
//! factor edge `e⁽¹⁾ = v⁽¹⁾w⁽¹⁾` with resistance `ω = ω⁽¹⁾(e⁽¹⁾)` in `G⁽¹⁾`:
//!
//! * upper: `ω (1 + 2/ω) / (d + 1 + 2/ω)` with `d = deg⁽²⁾ v⁽²⁾`, from the star at
//!   `v⁽²⁾` times a single edge of resistance `ω`;
//! * lower: `(1/n⁽²⁾ + (1 − 1/n⁽²⁾) λ₂⁽¹⁾ / (λ₂⁽¹⁾ + λ_max⁽²⁾)) ω`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::poly::{characteristic_polynomial, real_root_count, real_roots_at, RootBracket};
use crate::products::cartesian_product;
use crate::scalar::{Rational, Scalar};
use crate::spectral::{eigensystem, graph_resistances, laplacian, Laplacian};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeBoundParams {
    /// Resistance of the base edge.
    pub omega: Rational,
    /// Regularity of the tree, at least 2.
    pub d: u32,
    /// Depth of the tree.
    pub r: u32,
}

/// How many branches leave the root of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeRoot {
    /// `f(k)⁻¹ = ω⁻¹ + (d − 1)(2 + f(k − 1))⁻¹` at every level, root included.
    Literal,
    /// The root of a `d`-regular tree has `d` children, the other internal
    /// vertices `d − 1`. At depth 1 this gives the closed-form upper bound.
    FullRootDegree,
}

/// Resistance across the two roots of (depth-`r` `d`-regular tree) □ (edge of
/// resistance `ω`), with unit tree edges.
pub fn tree_bound(params: &TreeBoundParams, root: TreeRoot) -> Result<Rational> {
    if !params.omega.is_positive() {
        return Err(Error::InvalidArgument("omega must be positive".into()));
    }
    if params.d < 2 {
        return Err(Error::InvalidArgument(format!("tree regularity must be at least 2, got {}", params.d)));
    }
    let omega = &params.omega;
    let two = Rational::from_integer(2.into());
    let level = |below: &Rational, branches: u32| -> Rational {
        let branches = Rational::from_integer(branches.into());
        (omega.recip() + branches / (&two + below)).recip()
    };
    let mut f = omega.clone();
    for k in 1..=params.r {
        let branches = match root {
            TreeRoot::FullRootDegree if k == params.r => params.d,
            _ => params.d - 1,
        };
        f = level(&f, branches);
    }
    Ok(f)
}

/// `ω (1 + 2/ω) / (d + 1 + 2/ω)`.
pub fn upper_bound_ub<S: Scalar>(omega: &S, d: u32) -> S {
    let two_over = S::from_usize(2) / omega.clone();
    omega.clone() * (S::one() + two_over.clone()) / (S::from_usize(d as usize) + S::one() + two_over)
}

/// `(1/n₂ + (1 − 1/n₂) λ₂⁽¹⁾ / (λ₂⁽¹⁾ + λ_max⁽²⁾)) ω`.
pub fn lower_bound_lb<S: Scalar>(omega: &S, lambda2_1: &S, lambdamax_2: &S, n2: usize) -> Result<S> {
    if !lambda2_1.is_positive() {
        return Err(Error::InvalidArgument("λ₂ of the first factor must be positive".into()));
    }
    if n2 == 0 {
        return Err(Error::InvalidArgument("second factor must have a vertex".into()));
    }
    if lambdamax_2.is_negative() {
        return Err(Error::InvalidArgument("λ_max of the second factor must be non-negative".into()));
    }
    let inv_n = S::one() / S::from_usize(n2);
    let ratio = lambda2_1.clone() / (lambda2_1.clone() + lambdamax_2.clone());
    Ok((inv_n.clone() + (S::one() - inv_n) * ratio) * omega.clone())
}

/// Backends able to supply the factor eigenvalues the lower bound needs.
pub trait BoundScalar: Scalar {
    /// `(λ₂, λ_max)` of a connected Laplacian, rounded so that the lower bound
    /// built from them can only grow: `λ₂` from above and `λ_max` from below.
    /// `λ₂` is `None` for a single vertex.
    fn extreme_eigenvalues(l: &Laplacian<Self>) -> Result<(Option<Self>, Self)>;

    /// Whether both eigenvalues were exact.
    fn eigenvalues_exact(l: &Laplacian<Self>) -> bool;
}

fn root_tolerance() -> Rational {
    Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 40))
}

impl BoundScalar for Rational {
    fn extreme_eigenvalues(l: &Laplacian<Self>) -> Result<(Option<Self>, Self)> {
        let (lambda2, lambdamax) = extreme_roots(l);
        Ok((lambda2.map(|r| r.hi), lambdamax.map_or_else(Rational::zero, |r| r.lo)))
    }

    fn eigenvalues_exact(l: &Laplacian<Self>) -> bool {
        let (lambda2, lambdamax) = extreme_roots(l);
        lambda2.is_none_or(|r| r.is_exact()) && lambdamax.is_none_or(|r| r.is_exact())
    }
}

/// Brackets of the second-smallest and the largest distinct eigenvalue.
fn extreme_roots(l: &Laplacian<Rational>) -> (Option<RootBracket>, Option<RootBracket>) {
    let p = characteristic_polynomial(l.matrix());
    let count = real_root_count(&p);
    if count == 0 {
        return (None, None);
    }
    let mut found = real_roots_at(&p, &[1, count - 1], &root_tolerance());
    let last = found.pop().flatten();
    (found.pop().flatten(), last)
}

impl BoundScalar for f64 {
    fn extreme_eigenvalues(l: &Laplacian<Self>) -> Result<(Option<Self>, Self)> {
        let es = eigensystem(l)?;
        Ok((es.values.get(1).copied(), es.values.last().copied().unwrap_or(0.0)))
    }

    fn eigenvalues_exact(_: &Laplacian<Self>) -> bool {
        false
    }
}

/// One product edge checked against both bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBoundRow<S> {
    /// Product vertex indices (row-major).
    pub edge: (usize, usize),
    pub factor_edge: (usize, usize),
    pub v2: usize,
    /// Degree of `v2` in the second factor, used by the upper bound.
    pub d: usize,
    pub factor_resistance: S,
    pub actual: S,
    pub lb: S,
    pub ub: S,
}

impl<S: Scalar> EdgeBoundRow<S> {
    pub fn lb_holds(&self, tol: &S) -> bool {
        self.lb <= self.actual.clone() + tol.clone()
    }

    pub fn ub_holds(&self, tol: &S) -> bool {
        self.actual <= self.ub.clone() + tol.clone()
    }

    /// `(actual − lb, ub − actual)`.
    pub fn slack(&self) -> (S, S) {
        (self.actual.clone() - self.lb.clone(), self.ub.clone() - self.actual.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport<S> {
    pub lambda2_first: S,
    pub lambdamax_second: S,
    pub rows: Vec<EdgeBoundRow<S>>,
}

impl<S: Scalar> BoundsReport<S> {
    /// Every row satisfies both bounds within `tol` (use zero when exact).
    pub fn all_hold(&self, tol: &S) -> bool {
        self.rows.iter().all(|row| row.lb_holds(tol) && row.ub_holds(tol))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,factor_u,factor_v,v2,d,actual,lb,ub,lb_slack,ub_slack\n");
        for row in &self.rows {
            let (lo, hi) = row.slack();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                row.edge.0, row.edge.1, row.factor_edge.0, row.factor_edge.1, row.v2, row.d,
                row.actual, row.lb, row.ub, lo, hi
            ));
        }
        out
    }
}

/// Checks both bounds on every product edge running along the first factor.
pub fn validate_bounds<S: BoundScalar>(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<BoundsReport<S>> {
    if !g1.is_connected() || !g2.is_connected() {
        return Err(Error::Disconnected);
    }
    if g1.edge_count() == 0 {
        return Err(Error::InvalidArgument("first factor has no edges".into()));
    }
    let n2 = g2.n();
    let omega1 = graph_resistances::<S>(g1)?;
    let omega = graph_resistances::<S>(&cartesian_product(g1, g2))?;
    let (lambda2, _) = S::extreme_eigenvalues(&laplacian::<S>(g1))?;
    let lambda2 = lambda2.expect("a factor with an edge has λ₂");
    let (_, lambdamax) = S::extreme_eigenvalues(&laplacian::<S>(g2))?;
    let mut rows = Vec::new();
    for e in g1.edges() {
        let w = omega1.get(e.u, e.v).clone();
        let lb = lower_bound_lb(&w, &lambda2, &lambdamax, n2)?;
        for v2 in 0..n2 {
            let d = g2.degree(v2)?;
            let edge = (e.u * n2 + v2, e.v * n2 + v2);
            rows.push(EdgeBoundRow {
                edge,
                factor_edge: (e.u, e.v),
                v2,
                d,
                factor_resistance: w.clone(),
                actual: omega.get(edge.0, edge.1).clone(),
                lb: lb.clone(),
                ub: upper_bound_ub(&w, d as u32),
            });
        }
    }
    Ok(BoundsReport { lambda2_first: lambda2, lambdamax_second: lambdamax, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn params(omega: Rational, d: u32, r: u32) -> TreeBoundParams {
        TreeBoundParams { omega, d, r }
    }

    #[test]
    fn tree_bound_depth_zero_is_omega() {
        for root in [TreeRoot::Literal, TreeRoot::FullRootDegree] {
            assert_eq!(tree_bound(&params(q(5, 3), 4, 0), root), Ok(q(5, 3)));
        }
    }

    #[test]
    fn tree_bound_depth_one() {
        // 1/(1 + 4/3) and 1/(1 + 5/3)
        assert_eq!(tree_bound(&params(q(1, 1), 5, 1), TreeRoot::Literal), Ok(q(3, 7)));
        assert_eq!(tree_bound(&params(q(1, 1), 5, 1), TreeRoot::FullRootDegree), Ok(q(3, 8)));
        assert!(tree_bound(&params(q(1, 1), 1, 1), TreeRoot::Literal).is_err());
    }

    #[test]
    fn full_root_variant_matches_closed_form() {
        for (omega, d) in [(q(1, 1), 5), (q(7, 3), 2), (q(1, 9), 6)] {
            let tree = tree_bound(&params(omega.clone(), d, 1), TreeRoot::FullRootDegree).unwrap();
            assert_eq!(tree, upper_bound_ub(&omega, d));
        }
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(upper_bound_ub(&q(1, 1), 5), q(3, 8));
        assert_eq!(upper_bound_ub(&q(1, 1), 1), q(3, 4));
        let big = upper_bound_ub(&100.0, 5);
        assert!((big - 100.0 * 1.02 / 6.02).abs() < 1e-12);
        assert!((big - 16.94).abs() < 0.01);
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound_lb(&q(1, 1), &q(2, 1), &q(2, 1), 2), Ok(q(3, 4)));
        assert_eq!(lower_bound_lb(&q(2, 3), &q(1, 1), &q(7, 1), 1), Ok(q(2, 3)));
        let near = lower_bound_lb(&1.0, &2.0, &1e-12, 5).unwrap();
        assert!((near - 1.0).abs() < 1e-9);
        assert!(lower_bound_lb(&q(1, 1), &q(0, 1), &q(1, 1), 2).is_err());
    }

    #[test]
    fn k2_squared_saturates_lower_bound() {
        let k2 = path(2).unwrap();
        let report = validate_bounds::<Rational>(&k2, &k2).unwrap();
        assert_eq!(report.rows.len(), 2);
        for row in &report.rows {
            assert_eq!(row.actual, q(3, 4));
            assert_eq!(row.lb, q(3, 4));
            assert_eq!(row.ub, q(3, 4));
        }
        assert!(Rational::eigenvalues_exact(&laplacian(&k2)));
    }

    #[test]
    fn grid_and_mixed_products_respect_bounds() {
        let zero = q(0, 1);
        let p3 = path(3).unwrap();
        let report = validate_bounds::<Rational>(&p3, &p3).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert!(report.all_hold(&zero));
        let report = validate_bounds::<Rational>(&cycle(5).unwrap(), &path(4).unwrap()).unwrap();
        assert_eq!(report.rows.len(), 20);
        assert!(report.all_hold(&zero));
        let report = validate_bounds::<f64>(&cycle(5).unwrap(), &path(4).unwrap()).unwrap();
        assert!(report.all_hold(&1e-9));
    }

    #[test]
    fn irrational_eigenvalues_are_bracketed_conservatively() {
        // λ₂(C5) = 2 − 2cos(2π/5) is irrational
        let l = laplacian::<Rational>(&cycle(5).unwrap());
        let (lambda2, _) = Rational::extreme_eigenvalues(&l).unwrap();
        let true_value = 2.0 - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos();
        let lambda2 = lambda2.unwrap();
        assert!((lambda2.to_f64() - true_value).abs() < 1e-12);
        assert!(!Rational::eigenvalues_exact(&l));
    }

    #[test]
    fn disconnected_factor_is_rejected() {
        let split = WeightedGraph::unweighted(2, []).unwrap();
        assert_eq!(validate_bounds::<f64>(&path(2).unwrap(), &split), Err(Error::Disconnected));
    }
}
