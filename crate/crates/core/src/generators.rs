//! Standard graph families with unit resistances.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Path `P_n` on vertices `0..n` with edges `(i, i + 1)`.
pub fn path(n: usize) -> Result<WeightedGraph> {
    WeightedGraph::unweighted(n, (1..n).map(|i| (i - 1, i)))
}

/// Cycle `C_n`, `n ≥ 3`.
pub fn cycle(n: usize) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs at least 3 vertices, got {n}")));
    }
    WeightedGraph::unweighted(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Result<WeightedGraph> {
    WeightedGraph::unweighted(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Hypercube `Q_d`; vertex bits are coordinates, most significant first.
pub fn hypercube(d: u32) -> Result<WeightedGraph> {
    if d > 20 {
        return Err(Error::InvalidArgument(format!("hypercube dimension {d} is too large")));
    }
    let n = 1usize << d;
    WeightedGraph::unweighted(
        n,
        (0..n).flat_map(move |x| (0..d).map(move |b| (x, x ^ (1 << b))).filter(|&(x, y)| x < y)),
    )
}

/// Star with `leaves` leaves around centre 0.
pub fn star(leaves: usize) -> Result<WeightedGraph> {
    WeightedGraph::unweighted(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// True when `g` is literally `path(g.n())` with unit resistances.
pub fn is_canonical_path(g: &WeightedGraph) -> bool {
    g.is_unit()
        && g.edge_count() + 1 == g.n()
        && g.edges().iter().all(|e| e.u.abs_diff(e.v) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(path(1).unwrap().edge_count(), 0);
        assert_eq!(path(5).unwrap().edge_count(), 4);
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        assert_eq!(hypercube(3).unwrap().edge_count(), 12);
        assert_eq!(hypercube(0).unwrap().n(), 1);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn recognises_paths() {
        assert!(is_canonical_path(&path(4).unwrap()));
        assert!(is_canonical_path(&path(1).unwrap()));
        assert!(!is_canonical_path(&cycle(4).unwrap()));
        assert!(!is_canonical_path(&star(3).unwrap()));
    }
}
