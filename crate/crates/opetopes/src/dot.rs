//! Graphviz output for networks and sequences.
//!
//! One cluster per level, edges drawn left to right. Inputs hang off hidden
//! left anchors and outputs run into hidden right anchors; thin edges are
//! dashed and thin vertices hollow. Output is deterministic: everything is
//! emitted in natural identifier order.

use std::fmt::Write;

use crate::ident::Ident;
use crate::network::{Network, OpetopicSequence};

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn write_network(out: &mut String, net: &Network, prefix: &str, indent: &str) {
    for v in net.vertices() {
        let node = quoted(&format!("{prefix}/v/{v}"));
        if net.is_thin_vertex(v) {
            let _ = writeln!(
                out,
                "{indent}{node} [shape=circle, label=\"\", width=0.16, fixedsize=true];"
            );
        } else {
            let _ = writeln!(out, "{indent}{node} [shape=point, width=0.1];");
        }
    }
    let mut rank_min = Vec::new();
    let mut rank_max = Vec::new();
    for e in net.edges() {
        if net.source_of(e).is_none() {
            let node = quoted(&format!("{prefix}/in/{e}"));
            let _ = writeln!(out, "{indent}{node} [shape=point, style=invis];");
            rank_min.push(node);
        }
        if net.target_of(e).is_none() {
            let node = quoted(&format!("{prefix}/out/{e}"));
            let _ = writeln!(out, "{indent}{node} [shape=point, style=invis];");
            rank_max.push(node);
        }
    }
    for e in net.edges() {
        let from = match net.source_of(e) {
            Some(v) => quoted(&format!("{prefix}/v/{v}")),
            None => quoted(&format!("{prefix}/in/{e}")),
        };
        let to = match net.target_of(e) {
            Some(v) => quoted(&format!("{prefix}/v/{v}")),
            None => quoted(&format!("{prefix}/out/{e}")),
        };
        let style = if net.is_thin_edge(e) { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "{indent}{from} -> {to} [label={}{style}];",
            quoted(e.as_str())
        );
    }
    if !rank_min.is_empty() {
        let _ = writeln!(out, "{indent}{{ rank=min; {}; }}", rank_min.join("; "));
    }
    if !rank_max.is_empty() {
        let _ = writeln!(out, "{indent}{{ rank=max; {}; }}", rank_max.join("; "));
    }
}

/// Render a single network.
pub fn network_to_dot(net: &Network) -> String {
    let mut out = String::new();
    out.push_str("digraph network {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [fontsize=10];\n");
    out.push_str("  edge [fontsize=10, arrowsize=0.6];\n");
    write_network(&mut out, net, "0", "  ");
    out.push_str("}\n");
    out
}

/// Render a sequence, one cluster per level.
pub fn sequence_to_dot(seq: &OpetopicSequence) -> String {
    let mut out = String::new();
    out.push_str("digraph opetope {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  newrank=true;\n");
    out.push_str("  node [fontsize=10];\n");
    out.push_str("  edge [fontsize=10, arrowsize=0.6];\n");
    for (q, net) in seq.networks().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{q} {{");
        let _ = writeln!(out, "    label=\"N{q}\";");
        write_network(&mut out, net, &q.to_string(), "    ");
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Render a sequence together with its constellations drawn as dotted
/// inter-cluster links from vertices to the matching input edges' anchors.
pub fn sequence_to_dot_with_constellations(seq: &OpetopicSequence) -> String {
    let mut out = sequence_to_dot(seq);
    out.truncate(out.len() - 2); // drop the closing "}\n"
    for (q, cons) in seq.constellations().iter().enumerate() {
        for (v, e) in cons.pairs() {
            let from = quoted(&format!("{q}/v/{v}"));
            let to = quoted(&format!("{}/in/{e}", q + 1));
            let _ = writeln!(
                out,
                "  {from} -> {to} [style=dotted, arrowhead=none, constraint=false];"
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Stable identifier marker used in the emitted node names.
pub fn anchor(prefix: &str, kind: &str, id: &Ident) -> String {
    format!("{prefix}/{kind}/{id}")
}
