//! DOT rendering of marked trees, cone points, and combinatorial types.
//! Legs are drawn as labeled leaf nodes; edges carry length or degree labels.

use std::fmt::Write;

use crate::hurwitz::CombinatorialType;
use crate::trees::MarkedTree;
use crate::tropical::ConePoint;

fn escape(label: &str) -> String {
    label.replace('"', "\\\"")
}

/// Undirected tree with leg leaves; edge labels are taken from `edge_label`.
fn tree_graph(
    out: &mut String,
    tree: &MarkedTree,
    node_prefix: &str,
    edge_label: &dyn Fn(usize) -> Option<String>,
) {
    let explicit = tree.to_explicit();
    let marking = tree.marking();
    for v in explicit.vertices() {
        let _ = writeln!(out, "  {node_prefix}v{v} [shape=point];");
    }
    for (e, split) in explicit.splits().iter().enumerate() {
        let (parent, child) = explicit.edge_ends(e);
        let label = edge_label(e)
            .map(|l| format!(" [label=\"{}\"]", escape(&l)))
            .unwrap_or_default();
        let _ = writeln!(out, "  {node_prefix}v{parent} -- {node_prefix}v{child}{label};");
        let _ = split;
    }
    for v in explicit.vertices() {
        for &p in explicit.legs_at(v) {
            let _ = writeln!(
                out,
                "  {node_prefix}leg{p} [shape=plaintext, label=\"{}\"];",
                escape(marking.label(p))
            );
            let _ = writeln!(out, "  {node_prefix}v{v} -- {node_prefix}leg{p};");
        }
    }
}

pub fn tree_to_dot(tree: &MarkedTree) -> String {
    let mut out = String::from("graph marked_tree {\n");
    tree_graph(&mut out, tree, "", &|_| None);
    out.push_str("}\n");
    out
}

pub fn point_to_dot(point: &ConePoint) -> String {
    let mut out = String::from("graph tropical_curve {\n");
    let splits: Vec<_> = point.tree().to_explicit().splits().to_vec();
    tree_graph(&mut out, point.tree(), "", &|e| {
        Some(point.coordinate(&splits[e]).to_string())
    });
    out.push_str("}\n");
    out
}

/// Two-layer rendering: the source tree above, the target tree below, dashed
/// arrows for the graph map on components.
pub fn type_to_dot(ctype: &CombinatorialType) -> String {
    let marking = ctype.cover().marking();
    let explicit = ctype.target_explicit();
    let mut out = String::from("digraph cover_type {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  subgraph cluster_source {\n    label=\"source\";\n");
    for (vi, v) in ctype.vertices().iter().enumerate() {
        let _ = writeln!(
            out,
            "    s{vi} [shape=circle, label=\"deg {}\"];",
            v.degree
        );
        for &q in &v.legs {
            let key = ctype.cover().points()[q].key(marking);
            let ld = ctype.cover().points()[q].local_degree();
            let _ = writeln!(
                out,
                "    sleg{q} [shape=plaintext, label=\"{} ({ld})\"];",
                escape(&key)
            );
            let _ = writeln!(out, "    s{vi} -> sleg{q} [dir=none];");
        }
    }
    for f in ctype.edges() {
        let _ = writeln!(
            out,
            "    s{} -> s{} [dir=none, label=\"deg {}\"];",
            f.ends.0, f.ends.1, f.degree
        );
    }
    out.push_str("  }\n");
    out.push_str("  subgraph cluster_target {\n    label=\"target\";\n");
    for v in explicit.vertices() {
        let _ = writeln!(out, "    t{v} [shape=point];");
        for &p in explicit.legs_at(v) {
            let _ = writeln!(
                out,
                "    tleg{p} [shape=plaintext, label=\"{}\"];",
                escape(marking.label(p))
            );
            let _ = writeln!(out, "    t{v} -> tleg{p} [dir=none];");
        }
    }
    for e in 0..explicit.edge_count() {
        let (parent, child) = explicit.edge_ends(e);
        let _ = writeln!(
            out,
            "    t{parent} -> t{child} [dir=none, label=\"lcm {}\"];",
            ctype.lcm_degree(e)
        );
    }
    out.push_str("  }\n");
    for (vi, v) in ctype.vertices().iter().enumerate() {
        let _ = writeln!(out, "  s{vi} -> t{} [style=dashed];", v.base);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::cover_l;
    use crate::multicurve::StandardMulticurve;
    use crate::trees::{MarkedTree, MarkingSet, Split};
    use crate::tropical::single_length_point;
    use crate::Rational;
    use std::sync::Arc;

    #[test]
    fn one_vertex_tree_renders_four_leaves() {
        let m = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let dot = tree_to_dot(&MarkedTree::one_vertex(m));
        assert_eq!(dot.matches("shape=point").count(), 1);
        assert_eq!(dot.matches("shape=plaintext").count(), 4);
    }

    #[test]
    fn curve_edge_carries_its_length() {
        let m = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let s = Split::from_labels(&["a", "b"], &m).unwrap();
        let tree = MarkedTree::new(Arc::clone(&m), [s.clone()]).unwrap();
        let point =
            single_length_point(&tree, &[(s, Rational::from_integer(5.into()))]).unwrap();
        let dot = point_to_dot(&point);
        assert!(dot.contains("label=\"5\""));
    }

    #[test]
    fn type_rendering_has_two_layers_and_map_arrows() {
        let (cover, _) = cover_l();
        let cover = Arc::new(cover);
        let mc = StandardMulticurve::from_label_blocks(
            Arc::clone(cover.marking()),
            &[vec!["c", "d"]],
        )
        .unwrap();
        let ctype = crate::hurwitz::CombinatorialType::build(&cover, &mc).unwrap();
        let dot = type_to_dot(&ctype);
        assert!(dot.contains("cluster_source"));
        assert!(dot.contains("cluster_target"));
        // Two degree-1 source vertices, two degree-1 source edges.
        assert_eq!(dot.matches("deg 1").count(), 4);
        assert_eq!(dot.matches("style=dashed").count(), 3);
    }
}
