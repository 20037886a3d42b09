//! Generator shorthand: `P<n>`, `C<n>`, `K<n>`, `Q<d>`, joined by `x` for
//! products and raised with `^` for powers, e.g. `P3xP4`, `P3^3`, `C5xP2`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::generators::{complete, cycle, path};
use crate::graph::WeightedGraph;
use crate::products::ProductDescriptor;

fn atom(token: &str) -> Result<Vec<WeightedGraph>> {
    let bad = || Error::Parse(format!("invalid graph shorthand `{token}`"));
    let mut chars = token.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let size: usize = chars.as_str().parse().map_err(|_| bad())?;
    match kind.to_ascii_uppercase() {
        'P' if size >= 1 => Ok(vec![path(size)?]),
        'C' => Ok(vec![cycle(size)?]),
        'K' if size >= 1 => Ok(vec![complete(size)?]),
        // Q_d = K_2^d, kept as factors so vertex labels are bit tuples
        'Q' => Ok(vec![path(2)?; size]),
        _ => Err(bad()),
    }
}

/// Parses shorthand into a product descriptor; a lone atom is a one-factor
/// product. `Q0` is the single-vertex graph.
pub fn parse_shorthand(text: &str) -> Result<ProductDescriptor> {
    let text = text.trim();
    let mut factors = Vec::new();
    for term in text.split(['x', 'X']) {
        let (base, exponent) = match term.split_once('^') {
            Some((b, e)) => {
                let e: usize = e.trim().parse().map_err(|_| Error::Parse(format!("invalid exponent in `{term}`")))?;
                if e == 0 {
                    return Err(Error::Parse(format!("zero exponent in `{term}`")));
                }
                (b.trim(), e)
            }
            None => (term.trim(), 1),
        };
        let graphs = atom(base)?;
        for _ in 0..exponent {
            factors.extend(graphs.iter().cloned());
        }
    }
    if factors.is_empty() {
        // Q0
        factors.push(path(1)?);
    }
    ProductDescriptor::new(factors)
}

/// Reads a graph file (`.json`, otherwise CSV edge list) when `input` names an
/// existing file, and parses it as shorthand otherwise.
pub fn load_input(input: &str) -> Result<ProductDescriptor> {
    let p = Path::new(input);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{input}: {e}")))?;
        let is_json = p.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("json"))
            || text.trim_start().starts_with('{');
        let g = if is_json { WeightedGraph::from_json(&text)? } else { WeightedGraph::from_csv(&text)? };
        return Ok(ProductDescriptor::single(g));
    }
    parse_shorthand(input)
}
