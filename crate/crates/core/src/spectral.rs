//! Laplacians, pseudoinverses, eigensystems and effective resistances.
//!
//! The pseudoinverse of a connected graph's Laplacian is computed through the
//! shifted inverse `L⁺ = (L + J/n)⁻¹ − J/n`, where `J` is the all-ones matrix.
//! The rational backend runs Gauss–Jordan elimination and is exact; the float
//! backend factors the shifted matrix with Cholesky.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

/// Weighted Laplacian: `L[x][y] = −1/r` on edges, diagonal = total conductance.
#[derive(Debug, Clone, PartialEq)]
pub struct Laplacian<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> Laplacian<S> {
    /// Assembles a Laplacian from a possibly repeated edge list; parallel edges
    /// add their conductances.
    pub fn from_edges<'a>(n: usize, edges: impl IntoIterator<Item = (usize, usize, &'a Rational)>) -> Self {
        let mut m = Matrix::<S>::zeros(n, n);
        for (u, v, r) in edges {
            let c = S::from_rational(&r.recip());
            m[(u, u)] = m[(u, u)].clone() + c.clone();
            m[(v, v)] = m[(v, v)].clone() + c.clone();
            m[(u, v)] = m[(u, v)].clone() - c.clone();
            m[(v, u)] = m[(v, u)].clone() - c;
        }
        Laplacian { matrix: m }
    }

    /// Wraps a matrix without checking the Laplacian invariants.
    pub fn from_matrix(matrix: Matrix<S>) -> Self {
        Laplacian { matrix }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn to_f64(&self) -> Laplacian<f64> {
        Laplacian { matrix: self.matrix.map(Scalar::to_f64) }
    }

    /// Connectivity of the graph encoded by the off-diagonal pattern.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for (y, entry) in self.matrix.row(x).iter().enumerate() {
                if !seen[y] && y != x && !entry.is_zero() {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }
}

pub fn laplacian<S: Scalar>(g: &WeightedGraph) -> Laplacian<S> {
    Laplacian::from_edges(g.n(), g.edges().iter().map(|e| (e.u, e.v, &e.r)))
}

/// Moore–Penrose pseudoinverse of a connected graph's Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct Pseudoinverse<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> Pseudoinverse<S> {
    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }
}

/// `L⁺ = (L + J/n)⁻¹ − J/n`; fails on disconnected input, where the shift
/// leaves a singular matrix.
pub fn pseudoinverse<S: Scalar>(l: &Laplacian<S>) -> Result<Pseudoinverse<S>> {
    if !l.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = l.n();
    let shift = S::one() / S::from_usize(n);
    let shifted = Matrix::from_fn(n, n, |i, j| l.matrix[(i, j)].clone() + shift.clone());
    let inv = S::invert_spd(&shifted)?;
    let matrix = Matrix::from_fn(n, n, |i, j| {
        let x = inv[(i, j)].clone() - shift.clone();
        if i <= j {
            x
        } else {
            // keep the result exactly symmetric under rounding
            inv[(j, i)].clone() - shift.clone()
        }
    });
    Ok(Pseudoinverse { matrix })
}

/// Ascending eigenpairs of a Laplacian (float only).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    /// `vectors[j]` is the unit eigenvector for `values[j]`.
    pub vectors: Vec<Vec<f64>>,
}

impl EigenSystem {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorts pairs by eigenvalue, keeping the original order among ties.
    pub(crate) fn sorted(mut pairs: Vec<(f64, Vec<f64>)>) -> Self {
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (values, vectors) = pairs.into_iter().unzip();
        EigenSystem { values, vectors }
    }
}

const EIGEN_EPS: f64 = 1e-14;
const EIGEN_MAX_ITER: usize = 10_000;

pub fn eigensystem<S: Scalar>(l: &Laplacian<S>) -> Result<EigenSystem> {
    let m = l.matrix.map(Scalar::to_f64).to_nalgebra();
    let eig = m.try_symmetric_eigen(EIGEN_EPS, EIGEN_MAX_ITER).ok_or(Error::ConvergenceFailure)?;
    let pairs = (0..l.n())
        .map(|j| {
            let mut v: Vec<f64> = eig.eigenvectors.column(j).iter().copied().collect();
            // first clearly nonzero component positive, so 𝟙/√n comes out positive
            if let Some(&lead) = v.iter().find(|x| x.abs() > 1e-12) {
                if lead < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            (eig.eigenvalues[j], v)
        })
        .collect();
    Ok(EigenSystem::sorted(pairs))
}

/// Spectral route `Σ_{λ≠0} λ⁻¹ v vᵀ`; eigenvalues below `zero_tol` are
/// treated as the kernel.
pub fn pseudoinverse_spectral(es: &EigenSystem, zero_tol: f64) -> Pseudoinverse<f64> {
    let n = es.vectors.first().map_or(0, Vec::len);
    let mut m = Matrix::zeros(n, n);
    for (lambda, v) in es.values.iter().zip(&es.vectors) {
        if lambda.abs() <= zero_tol {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += v[i] * v[j] / lambda;
            }
        }
    }
    Pseudoinverse { matrix: m }
}

/// Pairwise effective resistances `ω[x][y] = L⁺xx + L⁺yy − 2 L⁺xy`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> ResistanceMatrix<S> {
    pub fn get(&self, x: usize, y: usize) -> &S {
        &self.matrix[(x, y)]
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }
}

pub fn resistance_matrix<S: Scalar>(lp: &Pseudoinverse<S>) -> ResistanceMatrix<S> {
    let m = &lp.matrix;
    let n = m.rows();
    let two = S::one() + S::one();
    let mut out = Matrix::zeros(n, n);
    for x in 0..n {
        for y in x + 1..n {
            let w = m[(x, x)].clone() + m[(y, y)].clone() - two.clone() * m[(x, y)].clone();
            out[(x, y)] = w.clone();
            out[(y, x)] = w;
        }
    }
    ResistanceMatrix { matrix: out }
}

/// Full resistance matrix of a graph.
pub fn graph_resistances<S: Scalar>(g: &WeightedGraph) -> Result<ResistanceMatrix<S>> {
    Ok(resistance_matrix(&pseudoinverse(&laplacian::<S>(g))?))
}

/// Single-pair resistance from one grounded linear solve: fix the potential
/// at `v` to zero and inject a unit current at `u`.
pub fn effective_resistance_from_laplacian<S: Scalar>(l: &Laplacian<S>, u: usize, v: usize) -> Result<S> {
    let n = l.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, n });
        }
    }
    if !l.is_connected() {
        return Err(Error::Disconnected);
    }
    if u == v {
        return Ok(S::zero());
    }
    let keep: Vec<usize> = (0..n).filter(|&x| x != v).collect();
    let reduced = Matrix::from_fn(n - 1, n - 1, |i, j| l.matrix[(keep[i], keep[j])].clone());
    let rhs: Vec<S> = keep.iter().map(|&x| if x == u { S::one() } else { S::zero() }).collect();
    let potentials = reduced.solve(&rhs)?;
    let pos = keep.iter().position(|&x| x == u).expect("u is kept");
    Ok(potentials[pos].clone())
}

pub fn effective_resistance<S: Scalar>(g: &WeightedGraph, u: usize, v: usize) -> Result<S> {
    effective_resistance_from_laplacian(&laplacian::<S>(g), u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn k2() -> WeightedGraph {
        path(2).unwrap()
    }

    #[test]
    fn laplacian_entries() {
        let l = laplacian::<Rational>(&path(3).unwrap());
        let expect = Matrix::from_rows(vec![
            vec![q(1, 1), q(-1, 1), q(0, 1)],
            vec![q(-1, 1), q(2, 1), q(-1, 1)],
            vec![q(0, 1), q(-1, 1), q(1, 1)],
        ]);
        assert_eq!(l.matrix(), &expect);
        let c4 = laplacian::<f64>(&cycle(4).unwrap());
        assert_eq!(c4.matrix().row(0), &[2.0, -1.0, 0.0, -1.0]);
    }

    #[test]
    fn weighted_laplacian_uses_conductance() {
        let g = WeightedGraph::new(2, [(0, 1, Some(q(4, 1)))]).unwrap();
        let l = laplacian::<Rational>(&g);
        assert_eq!(l.matrix()[(0, 1)], q(-1, 4));
        assert_eq!(l.matrix()[(1, 1)], q(1, 4));
    }

    #[test]
    fn k2_pseudoinverse() {
        // Hand inverse: L + J/2 = [[3/2, -1/2], [-1/2, 3/2]], inverse [[3/4, 1/4], [1/4, 3/4]].
        let lp = pseudoinverse(&laplacian::<Rational>(&k2())).unwrap();
        let expect = Matrix::from_rows(vec![vec![q(1, 4), q(-1, 4)], vec![q(-1, 4), q(1, 4)]]);
        assert_eq!(lp.matrix(), &expect);
    }

    #[test]
    fn p3_end_to_end_is_two() {
        let lp = pseudoinverse(&laplacian::<Rational>(&path(3).unwrap())).unwrap();
        let m = lp.matrix();
        assert_eq!(m[(0, 0)].clone() + m[(2, 2)].clone() - q(2, 1) * m[(0, 2)].clone(), q(2, 1));
        let ones = vec![q(1, 1); 3];
        assert!(m.mul_vec(&ones).iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = WeightedGraph::unweighted(3, [(0, 1)]).unwrap();
        assert_eq!(pseudoinverse(&laplacian::<f64>(&g)), Err(Error::Disconnected));
        assert_eq!(effective_resistance::<Rational>(&g, 0, 2), Err(Error::Disconnected));
    }

    #[test]
    fn small_spectra() {
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
        let es = eigensystem(&laplacian::<f64>(&k2())).unwrap();
        assert!(close(&es.values, &[0.0, 2.0]));
        // det(L - λI) for P3 is -λ(λ - 1)(λ - 3)
        let es = eigensystem(&laplacian::<f64>(&path(3).unwrap())).unwrap();
        assert!(close(&es.values, &[0.0, 1.0, 3.0]));
        // circulant: 2 - 2cos(2πk/4)
        let es = eigensystem(&laplacian::<f64>(&cycle(4).unwrap())).unwrap();
        assert!(close(&es.values, &[0.0, 2.0, 2.0, 4.0]));
        let expect = 0.5;
        assert!(es.vectors[0].iter().all(|x| (x - expect).abs() < 1e-12));
    }

    #[test]
    fn resistance_examples() {
        let r = graph_resistances::<Rational>(&k2()).unwrap();
        assert_eq!(r.get(0, 1), &q(1, 1));
        let r = graph_resistances::<Rational>(&path(3).unwrap()).unwrap();
        assert_eq!((r.get(0, 2), r.get(0, 1)), (&q(2, 1), &q(1, 1)));
        let r = graph_resistances::<Rational>(&cycle(4).unwrap()).unwrap();
        assert_eq!(r.get(0, 1), &q(3, 4));
        assert_eq!(r.get(0, 0), &q(0, 1));
    }

    #[test]
    fn single_pair_solve() {
        assert_eq!(effective_resistance::<Rational>(&path(5).unwrap(), 0, 4), Ok(q(4, 1)));
        assert_eq!(effective_resistance::<Rational>(&cycle(4).unwrap(), 0, 2), Ok(q(1, 1)));
        assert_eq!(effective_resistance::<Rational>(&cycle(4).unwrap(), 2, 2), Ok(q(0, 1)));
        assert_eq!(
            effective_resistance::<Rational>(&k2(), 0, 2),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn spectral_route_matches_shifted_inverse() {
        let l = laplacian::<f64>(&cycle(7).unwrap());
        let a = pseudoinverse(&l).unwrap();
        let b = pseudoinverse_spectral(&eigensystem(&l).unwrap(), 1e-9);
        assert!(a.matrix().sub(b.matrix()).max_abs() < 1e-9);
    }
}
