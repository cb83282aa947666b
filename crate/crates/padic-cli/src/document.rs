//! The JSON interchange form of a valuation tree. Every other output format
//! is a projection of this document and carries no extra information.

use num_traits::ToPrimitive;
use padic::{NodeStatus, Valuation, ValuationTree};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TreeDocument {
    pub prime: u64,
    pub generator: String,
    pub engine: String,
    pub depth: usize,
    pub nodes: Vec<NodeRecord>,
}

/// One materialized node, in (level, digits) order. The label is the
/// smallest member of the node's residue class, the number written above the
/// branch leading to it.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord {
    pub digits: Vec<u64>,
    pub level: usize,
    pub status: String,
    pub valuation: Option<JsonValuation>,
    pub label: u64,
    pub witness: Option<(u64, u64)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum JsonValuation {
    Finite(i64),
    Infinite(String),
}

impl TreeDocument {
    /// Labels and witnesses are converted to machine integers; the command
    /// layer bounds prime and depth so they always fit.
    pub fn from_tree(tree: &ValuationTree) -> TreeDocument {
        let nodes = tree
            .nodes()
            .iter()
            .map(|(id, info)| {
                let (status, valuation) = match info.status {
                    NodeStatus::Terminating(Valuation::Finite(v)) => {
                        ("terminating", Some(JsonValuation::Finite(v)))
                    }
                    NodeStatus::Terminating(Valuation::Infinite) => (
                        "terminating",
                        Some(JsonValuation::Infinite("inf".to_owned())),
                    ),
                    NodeStatus::NonTerminating => ("nonterminating", None),
                    NodeStatus::Unresolved => ("unresolved", None),
                };
                NodeRecord {
                    digits: id.digits().to_vec(),
                    level: id.level(),
                    status: status.to_owned(),
                    valuation,
                    label: id.value().to_u64().expect("label bounded by the CLI"),
                    witness: info.witness.as_ref().map(|(a, b)| {
                        (
                            a.to_u64().expect("witness bounded by the CLI"),
                            b.to_u64().expect("witness bounded by the CLI"),
                        )
                    }),
                }
            })
            .collect();
        TreeDocument {
            prime: tree.prime().get(),
            generator: tree.generator().to_owned(),
            engine: tree.engine().to_string(),
            depth: tree.depth(),
            nodes,
        }
    }
}
