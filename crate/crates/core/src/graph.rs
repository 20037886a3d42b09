//! Undirected simple graphs with per-edge resistances.
//!
//! Vertices are dense indices `0..n`. Human-readable labels such as grid
//! coordinates live in [`crate::products::VertexLabel`].

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, rational_from_f64, rational_one, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Resistance of the edge; its conductance is `1 / r`.
    pub r: Rational,
}

impl Edge {
    /// The endpoint opposite `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Immutable weighted graph. Resistance 1 everywhere is the unweighted case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    /// `incident[x]` lists indices into `edges`.
    incident: Vec<Vec<usize>>,
}

impl WeightedGraph {
    /// Validates and builds a graph; a missing resistance defaults to 1.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Option<Rational>)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        let mut incident = vec![Vec::new(); n];
        for (u, v, r) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let r = r.unwrap_or_else(rational_one);
            if !r.is_positive() {
                return Err(Error::NonpositiveResistance { u, v });
            }
            let edge = Edge { u, v, r };
            if !seen.insert(edge.key()) {
                return Err(Error::DuplicateEdge { u, v });
            }
            incident[u].push(list.len());
            incident[v].push(list.len());
            list.push(edge);
        }
        Ok(WeightedGraph { n, edges: list, incident })
    }

    /// Unit-resistance graph from an edge list.
    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, edges.into_iter().map(|(u, v)| (u, v, None)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: v, n: self.n })
        }
    }

    /// Number of incident edges; weights do not matter.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.incident[v].len())
    }

    /// Neighbours of `v` with the resistance of the connecting edge.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.incident[v].iter().map(move |&e| {
            let edge = &self.edges[e];
            (edge.other(v), &edge.r)
        })
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<&Edge> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.incident[u].iter().map(|&e| &self.edges[e]).find(|e| e.other(u) == v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// True when every resistance equals 1.
    pub fn is_unit(&self) -> bool {
        self.edges.iter().all(|e| e.r.is_one())
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for (y, _) in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.n
    }

    /// Copy of the graph without the edge `{u, v}`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.check(u)?;
        self.check(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NoSuchEdge { u, v });
        }
        let key = (u.min(v), u.max(v));
        Self::new(
            self.n,
            self.edges.iter().filter(|e| e.key() != key).map(|e| (e.u, e.v, Some(e.r.clone()))),
        )
    }

    /// Copy of the graph with one more edge.
    pub fn add_edge(&self, u: usize, v: usize, r: Option<Rational>) -> Result<Self> {
        let existing = self.edges.iter().map(|e| (e.u, e.v, Some(e.r.clone())));
        Self::new(self.n, existing.chain(std::iter::once((u, v, r))))
    }

    /// Copy with the same vertex set keeping only edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Self {
        Self::new(
            self.n,
            self.edges.iter().filter(|e| keep(e)).map(|e| (e.u, e.v, Some(e.r.clone()))),
        )
        .expect("subset of a valid edge list is valid")
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord { u: e.u, v: e.v, r: Some(rational_to_json(&e.r)) })
                .collect(),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    /// Reads `{"n": .., "edges": [{"u": .., "v": .., "r": ..}]}`; `r` may be a
    /// number, a `"p/q"` string or a decimal string.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let edges = file
            .edges
            .into_iter()
            .map(|rec| Ok((rec.u, rec.v, rec.r.as_ref().map(rational_from_json).transpose()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.n, edges)
    }

    pub fn to_csv(&self) -> String {
        self.edges.iter().map(|e| format!("{},{},{}\n", e.u, e.v, e.r)).collect()
    }

    /// Reads `u,v[,r]` lines; blank lines and `#` comments are skipped and the
    /// vertex count is the largest index plus one.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_index = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = || Error::Parse(format!("line {}: expected `u,v[,r]`", lineno + 1));
            if !(2..=3).contains(&fields.len()) {
                return Err(bad());
            }
            let u: usize = fields[0].parse().map_err(|_| bad())?;
            let v: usize = fields[1].parse().map_err(|_| bad())?;
            let r = fields.get(2).map(|s| parse_rational(s)).transpose()?;
            max_index = Some(max_index.unwrap_or(0).max(u).max(v));
            edges.push((u, v, r));
        }
        let n = max_index.map_or(0, |m| m + 1);
        Self::new(n, edges)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<EdgeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeRecord {
    u: usize,
    v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<serde_json::Value>,
}

fn rational_to_json(r: &Rational) -> serde_json::Value {
    if r.is_integer() {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return serde_json::Value::from(i);
        }
    }
    serde_json::Value::from(r.to_string())
}

fn rational_from_json(value: &serde_json::Value) -> Result<Rational> {
    match value {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(num) => match num.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => rational_from_f64(num.as_f64().unwrap_or(f64::NAN)),
        },
        other => Err(Error::Parse(format!("resistance must be a number or string, got {other}"))),
    }
}

/// Sum of degrees; always twice the edge count.
pub fn degree_sum(g: &WeightedGraph) -> usize {
    (0..g.n()).map(|v| g.incident[v].len()).sum()
}

pub(crate) fn total_conductance(g: &WeightedGraph) -> Rational {
    g.edges().iter().fold(Rational::zero(), |acc, e| acc + e.r.recip())
}
