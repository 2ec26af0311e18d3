//! The undirected power graph `Γ_G`: distinct `x, y` are adjacent iff one
//! lies in the cyclic subgroup generated by the other.

use crate::graph::{GraphFormat, SimpleGraph};
use crate::group::Group;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerGraph {
    pub graph: SimpleGraph,
    /// Label of the group the graph was built from.
    pub group: String,
}

/// Builds `Γ_G` by listing `⟨y⟩` once per element `y`. Vertex `i` is
/// element `i`; vertices are labelled with their element order for DOT.
pub fn power_graph(g: &Group) -> PowerGraph {
    let n = g.order();
    let mut graph = SimpleGraph::empty(n);
    for y in 0..n {
        for x in g.cyclic_subgroup(y) {
            if x != y && !graph.has_edge(x, y) {
                graph.add_edge(x, y).expect("fresh edge between distinct elements");
            }
        }
    }
    let labels = (0..n).map(|x| format!("{x} (order {})", g.orders()[x])).collect();
    PowerGraph { graph: graph.with_labels(labels), group: g.label().to_string() }
}

/// Adjacency in `Γ_G` without building the graph.
pub fn power_adjacent(g: &Group, x: usize, y: usize) -> bool {
    let within = |a: usize, b: usize| {
        let mut z = b;
        loop {
            if z == a {
                return true;
            }
            if z == 0 {
                return false;
            }
            z = g.mul(z, b);
        }
    };
    x != y && (within(x, y) || within(y, x))
}

impl PowerGraph {
    pub fn serialize(&self, format: GraphFormat) -> String {
        self.graph.serialize(format)
    }

    pub fn is_complete(&self) -> bool {
        self.graph.is_complete()
    }
}
