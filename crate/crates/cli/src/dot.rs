//! Graphviz export of a functional graph.

use std::fmt::Write as _;

use ffperiod_core::census::FunctionalGraph;
use ffperiod_core::{FieldDesc, MapSpec};

/// `digraph G { ... }` with one node per element, named by its base-p
/// index, and one edge per application of the map. Nodes come first, then
/// edges, each in index order, so the output is byte-stable.
///
/// The `modulus` attribute lists coefficients from the constant term up.
pub fn render(field: &FieldDesc, map: &MapSpec, graph: &FunctionalGraph) -> String {
    let modulus: Vec<String> = field.modulus().iter().map(u64::to_string).collect();
    let mut s = String::new();
    s.push_str("digraph G {\n");
    let _ = writeln!(
        s,
        "  graph [p=\"{}\", n=\"{}\", map=\"{}\", modulus=\"{}\"];",
        field.p(),
        field.n(),
        map,
        modulus.join(",")
    );
    for (i, periodic) in graph.periodic_mask().iter().enumerate() {
        let _ = writeln!(s, "  {i} [periodic=\"{periodic}\"];");
    }
    for (i, j) in graph.successors().iter().enumerate() {
        let _ = writeln!(s, "  {i} -> {j};");
    }
    s.push_str("}\n");
    s
}
