use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::NodeId;

/// Topology over node ids `0..node_count`.
///
/// Adjacency lists are sorted and free of duplicates and self-loops. An
/// undirected graph stores each edge in both endpoint lists; a directed graph
/// (the raw KNN selection) stores out-links only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    directed: bool,
}

impl Graph {
    pub fn empty(node_count: usize, directed: bool) -> Self {
        Self {
            adjacency: vec![Vec::new(); node_count],
            directed,
        }
    }

    /// Builds a graph from an edge list. Repeated edges collapse into one;
    /// self-loops and unknown endpoints are rejected.
    pub fn from_edges<I>(node_count: usize, edges: I, directed: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adjacency = vec![Vec::new(); node_count];
        for (u, v) in edges {
            for id in [u, v] {
                if id >= node_count {
                    return Err(Error::UnknownNode {
                        id,
                        count: node_count,
                    });
                }
            }
            if u == v {
                return Err(Error::Config(format!("self-loop on node {u}")));
            }
            adjacency[u].push(v);
            if !directed {
                adjacency[v].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            adjacency,
            directed,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Neighbors of `v` (out-neighbors for a directed graph), sorted.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    /// Degree of `v` in the graph's own view (out-degree when directed).
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.adjacency.iter().map(Vec::len).sum();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges in canonical order: `(min, max)` pairs for undirected graphs,
    /// `(from, to)` arcs for directed ones, sorted lexicographically.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Undirected view: `{u, v}` is an edge if either endpoint links the other.
    pub fn undirected(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        Graph::from_edges(self.node_count(), self.edges(), false)
            .expect("edges of a valid graph are valid")
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            node_count: self.node_count(),
            directed: self.directed,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        Graph::from_edges(
            doc.node_count,
            doc.edges.iter().map(|e| (e[0], e[1])),
            doc.directed,
        )
    }
}

/// JSON form of a [`Graph`]: a sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub node_count: usize,
    pub directed: bool,
    pub edges: Vec<[NodeId; 2]>,
}
