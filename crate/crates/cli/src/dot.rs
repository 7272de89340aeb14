//! Lattice reports as Graphviz DOT.

use serde_json::Value;

/// Flags of a lattice node in `M P C R` order; `-` when none hold.
pub fn flags(node: &Value) -> String {
    let s: String = [("maximal", 'M'), ("prime", 'P'), ("classicalPrime", 'C'), ("intersectionOfMaximals", 'R')]
        .iter()
        .filter(|(k, _)| node[*k] == Value::Bool(true))
        .map(|&(_, c)| c)
        .collect();
    if s.is_empty() {
        "-".into()
    } else {
        s
    }
}

/// One node per submodule labeled with its size and flags, one edge per
/// covering pair pointing upward. Takes the `result` of a lattice report.
pub fn export_dot(lattice: &Value) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for node in lattice["nodes"].as_array().into_iter().flatten() {
        let id = &node["id"];
        out.push_str(&format!("  n{id} [label=\"#{id} |N|={} {}\"];\n", node["size"], flags(node)));
    }
    for edge in lattice["edges"].as_array().into_iter().flatten() {
        out.push_str(&format!("  n{} -> n{};\n", edge[0], edge[1]));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_nodes_and_edges() {
        let lat = json!({
            "nodes": [
                {"id": 0, "size": 1, "maximal": true, "prime": true, "classicalPrime": true, "intersectionOfMaximals": true},
                {"id": 1, "size": 2, "maximal": false, "prime": false, "classicalPrime": false, "intersectionOfMaximals": false},
            ],
            "edges": [[0, 1]],
        });
        assert_eq!(
            export_dot(&lat),
            "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n  n0 [label=\"#0 |N|=1 MPCR\"];\n  n1 [label=\"#1 |N|=2 -\"];\n  n0 -> n1;\n}\n"
        );
    }
}
