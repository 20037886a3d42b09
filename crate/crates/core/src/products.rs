//! Cartesian graph products.
//!
//! Product vertices are indexed row-major: `v⁽¹⁾ ⊗ … ⊗ v⁽ᵈ⁾` has index
//! `Σ_k v⁽ᵏ⁾ · Π_{j>k} n⁽ʲ⁾`, the last factor varying fastest. This is the
//! ordering produced by the Kronecker sum `L⁽¹⁾ ⊗ I + I ⊗ L⁽²⁾`, so the
//! combinatorial and matrix constructions agree without relabelling.

use std::fmt;

use crate::curvature::CurvatureVector;
use crate::error::{Error, Result};
use crate::generators::is_canonical_path;
use crate::graph::WeightedGraph;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::spectral::{laplacian, pseudoinverse, resistance_matrix, EigenSystem, Laplacian};

/// Per-factor coordinates of a product vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel(pub Vec<usize>);

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ordered factors of a Cartesian product.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductDescriptor {
    factors: Vec<WeightedGraph>,
}

impl ProductDescriptor {
    pub fn new(factors: Vec<WeightedGraph>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a product needs at least one factor".into()));
        }
        Ok(ProductDescriptor { factors })
    }

    pub fn single(g: WeightedGraph) -> Self {
        ProductDescriptor { factors: vec![g] }
    }

    /// The `d`-fold power of one factor.
    pub fn power(g: &WeightedGraph, d: usize) -> Result<Self> {
        Self::new(vec![g.clone(); d])
    }

    pub fn factors(&self) -> &[WeightedGraph] {
        &self.factors
    }

    pub fn dimension(&self) -> usize {
        self.factors.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(WeightedGraph::n).collect()
    }

    pub fn total_n(&self) -> usize {
        self.factors.iter().map(WeightedGraph::n).product()
    }

    pub fn index_of(&self, label: &VertexLabel) -> Result<usize> {
        if label.0.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), found: label.0.len() });
        }
        let mut index = 0;
        for (&c, g) in label.0.iter().zip(&self.factors) {
            if c >= g.n() {
                return Err(Error::IndexOutOfRange { index: c, n: g.n() });
            }
            index = index * g.n() + c;
        }
        Ok(index)
    }

    pub fn label(&self, mut index: usize) -> VertexLabel {
        let mut coords = vec![0; self.factors.len()];
        for (slot, g) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = index % g.n();
            index /= g.n();
        }
        VertexLabel(coords)
    }

    /// The product graph itself.
    pub fn graph(&self) -> WeightedGraph {
        let mut acc = self.factors[0].clone();
        for g in &self.factors[1..] {
            acc = cartesian_product(&acc, g);
        }
        acc
    }

    pub fn is_path_product(&self) -> bool {
        self.factors.iter().all(is_canonical_path)
    }
}

/// `G⁽¹⁾ □ G⁽²⁾`; product edges keep the resistance of their factor edge.
pub fn cartesian_product(g1: &WeightedGraph, g2: &WeightedGraph) -> WeightedGraph {
    let n2 = g2.n();
    let along_first = g1.edges().iter().flat_map(|e| {
        (0..n2).map(move |v2| (e.u * n2 + v2, e.v * n2 + v2, Some(e.r.clone())))
    });
    let along_second = (0..g1.n()).flat_map(|v1| {
        g2.edges().iter().map(move |e| (v1 * n2 + e.u, v1 * n2 + e.v, Some(e.r.clone())))
    });
    WeightedGraph::new(g1.n() * n2, along_first.chain(along_second))
        .expect("product of simple graphs is simple")
}

/// Kronecker sum of the factor Laplacians, iterated left to right.
pub fn product_laplacian<S: Scalar>(pd: &ProductDescriptor) -> Laplacian<S> {
    let mut acc = laplacian::<S>(&pd.factors[0]).matrix().clone();
    for g in &pd.factors[1..] {
        let l = laplacian::<S>(g);
        let left = acc.kron(&Matrix::identity(g.n()));
        let right = Matrix::identity(acc.rows()).kron(l.matrix());
        acc = left.add(&right);
    }
    Laplacian::from_matrix(acc)
}

/// Eigenpairs `(λ⁽¹⁾ + λ⁽²⁾, v⁽¹⁾ ⊗ v⁽²⁾)` of a two-factor product, ascending.
pub fn product_eigensystem(es1: &EigenSystem, es2: &EigenSystem) -> EigenSystem {
    let mut pairs = Vec::with_capacity(es1.len() * es2.len());
    for (l1, v1) in es1.values.iter().zip(&es1.vectors) {
        for (l2, v2) in es2.values.iter().zip(&es2.vectors) {
            let v: Vec<f64> = v1.iter().flat_map(|a| v2.iter().map(move |b| a * b)).collect();
            pairs.push((l1 + l2, v));
        }
    }
    EigenSystem::sorted(pairs)
}

/// Curvature of every product vertex straight from the product Laplacian:
/// `p_i = 1 + ½ Σ_j ω_ij L_ij`.
pub fn product_node_curvatures<S: Scalar>(pd: &ProductDescriptor) -> Result<CurvatureVector<S>> {
    if pd.factors.iter().any(|g| !g.is_connected()) {
        return Err(Error::Disconnected);
    }
    let l = product_laplacian::<S>(pd);
    let omega = resistance_matrix(&pseudoinverse(&l)?);
    let half = S::one() / (S::one() + S::one());
    let n = l.n();
    let values = (0..n)
        .map(|i| {
            let mut dot = S::zero();
            for j in 0..n {
                dot.add_mul_assign(omega.get(i, j), &l.matrix()[(i, j)]);
            }
            S::one() + half.clone() * dot
        })
        .collect();
    Ok(CurvatureVector::new(values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    Boundary,
    Interior,
}

/// A vertex of a path product is on the boundary when some coordinate is an
/// endpoint of its path, equivalently when its degree is below `2d`.
pub fn classify_boundary_interior(pd: &ProductDescriptor) -> Result<Vec<Position>> {
    if !pd.is_path_product() {
        return Err(Error::NotAPathProduct);
    }
    let sizes = pd.sizes();
    Ok((0..pd.total_n())
        .map(|i| {
            let label = pd.label(i);
            let boundary = label.0.iter().zip(&sizes).any(|(&c, &n)| c == 0 || c + 1 == n);
            if boundary {
                Position::Boundary
            } else {
                Position::Interior
            }
        })
        .collect())
}
