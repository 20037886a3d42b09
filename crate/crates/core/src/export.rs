//! Text exports: CSV matrices and DOT drawings annotated with curvature.

use crate::curvature::CurvatureVector;
use crate::graph::WeightedGraph;
use crate::matrix::Matrix;
use crate::products::ProductDescriptor;
use crate::scalar::Scalar;

/// Row-major CSV; exact entries print as `p/q`.
pub fn matrix_to_csv<S: Scalar>(m: &Matrix<S>) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Undirected DOT graph. Vertices carry their product coordinates when a
/// descriptor is given and their curvature when one is supplied.
pub fn to_dot<S: Scalar>(
    g: &WeightedGraph,
    labels: Option<&ProductDescriptor>,
    curvature: Option<&CurvatureVector<S>>,
) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let mut label = match labels {
            Some(pd) => pd.label(v).to_string(),
            None => v.to_string(),
        };
        if let Some(p) = curvature {
            label.push_str(&format!("\\n{}", p.get(v)));
        }
        out.push_str(&format!("  {v} [label=\"{label}\"];\n"));
    }
    for e in g.edges() {
        if num_traits::One::is_one(&e.r) {
            out.push_str(&format!("  {} -- {};\n", e.u, e.v));
        } else {
            out.push_str(&format!("  {} -- {} [label=\"{}\"];\n", e.u, e.v, e.r));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::graph_node_curvatures;
    use crate::generators::path;
    use crate::scalar::Rational;
    use crate::spectral::graph_resistances;

    #[test]
    fn csv_of_exact_matrix() {
        let r = graph_resistances::<Rational>(&path(3).unwrap()).unwrap();
        assert_eq!(matrix_to_csv(r.matrix()), "0,1,2\n1,0,1\n2,1,0\n");
    }

    #[test]
    fn dot_carries_curvature() {
        let g = path(2).unwrap();
        let p = graph_node_curvatures::<Rational>(&g).unwrap();
        let pd = ProductDescriptor::single(g.clone());
        let dot = to_dot(&g, Some(&pd), Some(&p));
        assert!(dot.contains("0 [label=\"(0)\\n1/2\"]"));
        assert!(dot.contains("0 -- 1;"));
    }
}
