//! Text renderings of a valuation tree: ASCII art, Graphviz DOT, the JSON
//! document, and an xymatrix LaTeX diagram. Node glyphs follow one
//! convention everywhere: a terminating node shows its valuation, a
//! non-terminating node shows "*", an unresolved node shows "?". Branch
//! labels are the smallest member of the child's residue class.

use crate::document::TreeDocument;
use padic::{NodeId, NodeStatus, ValuationTree};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Dot,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug)]
pub struct RenderConfig {
    pub format: Format,
    pub depth: usize,
    pub show_branch_labels: bool,
    pub max_extra_depth: usize,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            format: Format::Ascii,
            depth: 5,
            show_branch_labels: true,
            max_extra_depth: 4,
        }
    }
}

pub fn render(tree: &ValuationTree, config: &RenderConfig) -> String {
    match config.format {
        Format::Ascii => ascii(tree, config.show_branch_labels),
        Format::Dot => dot(tree, config.show_branch_labels),
        Format::Json => {
            let doc = TreeDocument::from_tree(tree);
            let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
            text.push('\n');
            text
        }
        Format::Latex => latex(tree, config.show_branch_labels),
    }
}

fn glyph(status: NodeStatus) -> String {
    status.to_string()
}

fn children(tree: &ValuationTree, id: &NodeId) -> Vec<NodeId> {
    (0..tree.prime().get())
        .map(|d| id.child(d))
        .filter(|c| tree.get(c).is_some())
        .collect()
}

fn ascii(tree: &ValuationTree, labels: bool) -> String {
    fn walk(out: &mut String, tree: &ValuationTree, id: &NodeId, prefix: &str, labels: bool) {
        let kids = children(tree, id);
        for (i, child) in kids.iter().enumerate() {
            let last = i + 1 == kids.len();
            let connector = if last { "└─" } else { "├─" };
            let status = glyph(tree.status(child).expect("materialized child"));
            if labels {
                out.push_str(&format!(
                    "{prefix}{connector} {} [{status}]\n",
                    child.value()
                ));
            } else {
                out.push_str(&format!("{prefix}{connector} [{status}]\n"));
            }
            let extension = if last { "   " } else { "│  " };
            walk(out, tree, child, &format!("{prefix}{extension}"), labels);
        }
    }

    let root = NodeId::root(tree.prime());
    let mut out = format!("[{}]\n", glyph(tree.status(&root).expect("root")));
    walk(&mut out, tree, &root, "", labels);
    out
}

fn dot_id(id: &NodeId) -> String {
    let mut name = String::from("n");
    for d in id.digits() {
        name.push('_');
        name.push_str(&d.to_string());
    }
    name
}

fn dot(tree: &ValuationTree, labels: bool) -> String {
    let mut out = String::from("graph tree {\n  node [shape=circle];\n");
    for (id, info) in tree.nodes() {
        out.push_str(&format!(
            "  {} [label=\"{}\"];\n",
            dot_id(id),
            glyph(info.status)
        ));
    }
    for id in tree.nodes().keys() {
        let Some(parent) = id.parent() else {
            continue;
        };
        if labels {
            out.push_str(&format!(
                "  {} -- {} [label=\"{}\"];\n",
                dot_id(&parent),
                dot_id(id),
                id.value()
            ));
        } else {
            out.push_str(&format!("  {} -- {};\n", dot_id(&parent), dot_id(id)));
        }
    }
    out.push_str("}\n");
    out
}

/// Columns are assigned to leaves left to right in digit order; an inner
/// node sits above its first child, and its arrows run down and to the
/// right.
fn assign_columns(
    tree: &ValuationTree,
    id: &NodeId,
    next: &mut usize,
    cols: &mut BTreeMap<NodeId, usize>,
) -> usize {
    let kids = children(tree, id);
    let col = if kids.is_empty() {
        let c = *next;
        *next += 1;
        c
    } else {
        let mut first = None;
        for child in &kids {
            let c = assign_columns(tree, child, next, cols);
            first.get_or_insert(c);
        }
        first.expect("at least one child")
    };
    cols.insert(id.clone(), col);
    col
}

fn latex(tree: &ValuationTree, labels: bool) -> String {
    let root = NodeId::root(tree.prime());
    let mut cols = BTreeMap::new();
    let mut next = 0usize;
    assign_columns(tree, &root, &mut next, &mut cols);
    let width = next;

    let mut cells: BTreeMap<(usize, usize), String> = BTreeMap::new();
    for (id, info) in tree.nodes() {
        let body = match info.status {
            NodeStatus::Unresolved => "?".to_owned(),
            _ => format!("*+[o][F]{{{}}}", glyph(info.status)),
        };
        cells.insert((id.level(), cols[id]), body);
    }
    for id in tree.nodes().keys() {
        let Some(parent) = id.parent() else {
            continue;
        };
        let delta = cols[id] - cols[&parent];
        let direction: String = std::iter::once('d')
            .chain(std::iter::repeat('r').take(delta))
            .collect();
        let arrow = if labels {
            format!(" \\ar@{{-}}[{direction}]^{{{}}}", id.value())
        } else {
            format!(" \\ar@{{-}}[{direction}]")
        };
        cells
            .get_mut(&(parent.level(), cols[&parent]))
            .expect("parent cell")
            .push_str(&arrow);
    }

    let max_level = tree.nodes().keys().map(NodeId::level).max().unwrap_or(0);
    let mut out = String::from("\\xymatrix@C=1.2em@R=1.6em{\n");
    for level in 0..=max_level {
        let row: Vec<String> = (0..width)
            .map(|c| cells.get(&(level, c)).cloned().unwrap_or_default())
            .collect();
        out.push_str("  ");
        out.push_str(row.join(" & ").trim_end());
        if level < max_level {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("}\n");
    out
}
