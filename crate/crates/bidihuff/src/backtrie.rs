//! Backward code trie with null-node augmentation.
//!
//! The trie is built over the bitwise-reversed codewords of a prefix-free
//! codebook. Codeword endpoints are square nodes: squares with descendants
//! are middle squares (set `V`), squares without are leaf squares. Remaining
//! path nodes are plain, and missing children of non-leaf, non-null nodes are
//! materialized as null nodes (set `X`). Everything else is `U`.

use crate::codebook::{BitString, Codebook};

pub type NodeId = u32;
pub const ROOT: NodeId = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    MiddleSquare,
    LeafSquare,
    Plain,
    Null,
}

#[derive(Debug, Clone)]
pub struct TrieNode {
    pub label: BitString,
    pub kind: NodeKind,
    pub children: [Option<NodeId>; 2],
    pub symbol: Option<u16>,
}

impl TrieNode {
    /// Level is 0 at the root and equals the label length in bits.
    pub fn level(&self) -> u32 {
        self.label.len() as u32
    }

    pub fn is_square(&self) -> bool {
        matches!(self.kind, NodeKind::MiddleSquare | NodeKind::LeafSquare)
    }
}

#[derive(Debug, Clone)]
pub struct BackwardTrie {
    nodes: Vec<TrieNode>,
    depth: u32,
    codebook: Codebook,
}

/// Disjoint partition of the materialized nodes, per the E-tree convention.
/// Leaf squares are classed `U` together with plain nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeClasses {
    pub v: Vec<NodeId>,
    pub x: Vec<NodeId>,
    pub u: Vec<NodeId>,
    pub leaf_squares: Vec<NodeId>,
}

impl BackwardTrie {
    /// Builds the trie of the reversed codewords of `codebook`.
    pub fn build(codebook: &Codebook) -> BackwardTrie {
        let mut nodes = vec![TrieNode {
            label: BitString::new(),
            kind: NodeKind::Plain,
            children: [None, None],
            symbol: None,
        }];
        let mut depth = 0;
        for (sym, reversed) in codebook.reverse_code() {
            let mut cur: NodeId = ROOT;
            for &bit in reversed.bits() {
                let slot = nodes[cur as usize].children[bit as usize];
                cur = match slot {
                    Some(id) => id,
                    None => {
                        let mut label = nodes[cur as usize].label.clone();
                        label.push(bit);
                        nodes.push(TrieNode {
                            label,
                            kind: NodeKind::Plain,
                            children: [None, None],
                            symbol: None,
                        });
                        let id = (nodes.len() - 1) as NodeId;
                        nodes[cur as usize].children[bit as usize] = Some(id);
                        id
                    }
                };
            }
            debug_assert!(
                nodes[cur as usize].symbol.is_none(),
                "duplicate reversed codeword {reversed}"
            );
            nodes[cur as usize].symbol = Some(sym);
            depth = depth.max(reversed.len() as u32);
        }
        // classify squares and materialize null children
        for node in &mut nodes {
            let has_children = node.children.iter().any(Option::is_some);
            node.kind = match (node.symbol.is_some(), has_children) {
                (true, true) => NodeKind::MiddleSquare,
                (true, false) => NodeKind::LeafSquare,
                (false, _) => NodeKind::Plain,
            };
        }
        let count = nodes.len();
        for id in 0..count {
            if nodes[id].kind == NodeKind::LeafSquare {
                continue;
            }
            for bit in 0..2usize {
                if nodes[id].children[bit].is_none() {
                    let mut label = nodes[id].label.clone();
                    label.push(bit as u8);
                    nodes.push(TrieNode {
                        label,
                        kind: NodeKind::Null,
                        children: [None, None],
                        symbol: None,
                    });
                    let nid = (nodes.len() - 1) as NodeId;
                    nodes[id].children[bit] = Some(nid);
                }
            }
        }
        BackwardTrie {
            nodes,
            depth,
            codebook: codebook.clone(),
        }
    }

    pub fn node(&self, id: NodeId) -> &TrieNode {
        &self.nodes[id as usize]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Max level, equal to the longest codeword of the source codebook.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    pub fn child(&self, id: NodeId, bit: u8) -> NodeId {
        self.nodes[id as usize].children[bit as usize]
            .expect("non-leaf nodes have both children materialized")
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.nodes.len() as NodeId
    }

    /// Partition into middle squares (V), nulls (X) and the rest (U).
    pub fn node_classes(&self) -> NodeClasses {
        let mut classes = NodeClasses {
            v: Vec::new(),
            x: Vec::new(),
            u: Vec::new(),
            leaf_squares: Vec::new(),
        };
        for id in self.node_ids() {
            match self.node(id).kind {
                NodeKind::MiddleSquare => classes.v.push(id),
                NodeKind::Null => classes.x.push(id),
                NodeKind::Plain => classes.u.push(id),
                NodeKind::LeafSquare => {
                    classes.u.push(id);
                    classes.leaf_squares.push(id);
                }
            }
        }
        classes
    }

    /// Reads the original (forward) codewords back out of the trie.
    pub fn codewords(&self) -> Vec<BitString> {
        let mut out: Vec<BitString> = self
            .node_ids()
            .filter(|&id| self.node(id).is_square())
            .map(|id| self.node(id).label.reversed())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// DOT graph for visual inspection: squares as boxes, plain nodes as
    /// circles, null nodes as points.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph backtrie {\n  node [fontsize=10];\n");
        for id in self.node_ids() {
            let n = self.node(id);
            let (shape, label) = match n.kind {
                NodeKind::MiddleSquare | NodeKind::LeafSquare => (
                    "square",
                    format!("{}\\ns{}", n.label, n.symbol.unwrap() + 1),
                ),
                NodeKind::Plain => ("circle", n.label.to_string()),
                NodeKind::Null => ("point", String::new()),
            };
            let label = if id == ROOT { "root".to_string() } else { label };
            out.push_str(&format!(
                "  n{} [shape={}, label=\"{}\"];\n",
                id, shape, label
            ));
        }
        for id in self.node_ids() {
            for (bit, child) in self.node(id).children.iter().enumerate() {
                if let Some(c) = child {
                    out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", id, c, bit));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Eq.-style upper bound on the scenario list size:
/// `min{ floor(log_phi((phi+1)/(p_m*phi + p_{m-1}))), m-1 }` with
/// `phi = (1+sqrt(5))/2` and `p_m <= p_{m-1}` the two smallest probabilities.
pub fn list_size_bound(codebook: &Codebook) -> u32 {
    let m = codebook.alphabet_size();
    let lv = codebook.length_vector();
    let lengths = lv.lengths();
    // largest lengths give the smallest probabilities
    let p_m = 0.5f64.powi(lengths[m - 1] as i32);
    let p_m1 = 0.5f64.powi(lengths[m - 2] as i32);
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let value = ((phi + 1.0) / (p_m * phi + p_m1)).ln() / phi.ln();
    let floored = (value + 1e-12).floor() as u32;
    floored.min(m as u32 - 1)
}
