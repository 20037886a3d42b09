//! Node resistance curvature.
//!
//! For a vertex `x`, `p_x = 1 − ½ Σ_{y~x} ω_xy / r_xy`. With unit resistances
//! this is `1 − ½ Σ ω_xy`; the conductance factor keeps `Σ_x p_x = 1` on
//! weighted graphs as well (Foster's theorem).

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::Scalar;
use crate::spectral::{graph_resistances, ResistanceMatrix};

/// Default absolute tolerance for sign decisions on the float backend.
pub const DEFAULT_FLOAT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureVector<S> {
    values: Vec<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl<S: Scalar> CurvatureVector<S> {
    pub fn new(values: Vec<S>) -> Self {
        CurvatureVector { values }
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn get(&self, v: usize) -> &S {
        &self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> S {
        self.values.iter().fold(S::zero(), |acc, x| acc + x.clone())
    }

    pub fn to_f64(&self) -> CurvatureVector<f64> {
        CurvatureVector { values: self.values.iter().map(Scalar::to_f64).collect() }
    }

    /// JSON object vertex → value; exact values are written as strings.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (v, x) in self.values.iter().enumerate() {
            map.insert(v.to_string(), scalar_json(x));
        }
        Value::Object(map)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("vertex,curvature\n");
        for (v, x) in self.values.iter().enumerate() {
            out.push_str(&format!("{v},{x}\n"));
        }
        out
    }
}

pub(crate) fn scalar_json<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        Value::String(x.to_string())
    } else {
        serde_json::Number::from_f64(x.to_f64()).map_or(Value::Null, Value::Number)
    }
}

/// Curvature of every vertex from a precomputed resistance matrix.
pub fn node_curvatures<S: Scalar>(g: &WeightedGraph, omega: &ResistanceMatrix<S>) -> Result<CurvatureVector<S>> {
    if omega.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: omega.n() });
    }
    let half = S::one() / (S::one() + S::one());
    let values = (0..g.n())
        .map(|x| {
            let incident = g.neighbors(x).fold(S::zero(), |acc, (y, r)| {
                acc + omega.get(x, y).clone() / S::from_rational(r)
            });
            S::one() - half.clone() * incident
        })
        .collect();
    Ok(CurvatureVector { values })
}

/// Resistances and curvatures in one call.
pub fn graph_node_curvatures<S: Scalar>(g: &WeightedGraph) -> Result<CurvatureVector<S>> {
    node_curvatures(g, &graph_resistances::<S>(g)?)
}

/// The graph's curvature: the least entry of `p`.
pub fn graph_curvature<S: Scalar>(p: &CurvatureVector<S>) -> Option<S> {
    p.values
        .iter()
        .cloned()
        .reduce(|a, b| if b < a { b } else { a })
}

/// Entry-wise sign with `|x| ≤ epsilon` counted as zero. The exact backend
/// only accepts `epsilon = 0`.
pub fn sign_classify<S: Scalar>(p: &CurvatureVector<S>, epsilon: f64) -> Result<Vec<Sign>> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::InvalidTolerance(format!("epsilon must be non-negative, got {epsilon}")));
    }
    if S::EXACT && epsilon != 0.0 {
        return Err(Error::InvalidTolerance("exact backend requires epsilon = 0".into()));
    }
    Ok(p.values.iter().map(|x| sign_of(x, epsilon)).collect())
}

pub(crate) fn sign_of<S: Scalar>(x: &S, epsilon: f64) -> Sign {
    if S::EXACT {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    } else {
        let v = x.to_f64();
        if v.abs() <= epsilon {
            Sign::Zero
        } else if v > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}
