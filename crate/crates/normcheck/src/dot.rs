//! DOT rendering of a state graph: one node per state labeled with its
//! sorted facts and duty statuses, one edge per act application.

use norm_engine::StateGraph;

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn render(graph: &StateGraph) -> String {
    let mut out = String::from("digraph states {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=box];\n");
    for (i, state) in graph.nodes.iter().enumerate() {
        let mut lines: Vec<String> = state.facts.iter().map(|f| escape(&f.to_string())).collect();
        lines.extend(state.duties.iter().map(|(id, status)| escape(&format!("{id}={status}"))));
        let label = if lines.is_empty() { "(empty)".to_string() } else { lines.join("\\n") };
        out.push_str(&format!("  n{i} [label=\"{i}: {label}\"];\n"));
    }
    for edge in &graph.edges {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            edge.from,
            edge.to,
            escape(&edge.act.to_string())
        ));
    }
    out.push_str("}\n");
    out
}
