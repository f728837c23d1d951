//! One-round LEACH clustering composed with an intra-cluster constructor.
//!
//! Every non-sink node elects itself cluster head with probability
//! `p_head`. Other nodes, the sink included, join the nearest head in
//! range; nodes with no head in range stay in singleton clusters and are
//! listed as orphans. Heads then reach toward the sink: a head in range of
//! the sink links to it, otherwise it links to the nearest head that is both
//! in range and closer to the sink. Heads with neither option stay unlinked
//! and are reported.

use serde::{Deserialize, Serialize};

use super::dtg::delaunay_edges;
use super::knn::nearest_in_range;
use crate::error::{Error, Result};
use crate::geometry::{distance_sq, Deployment};
use crate::graph::Graph;
use crate::rng::SimRng;
use crate::NodeId;

pub const ELECTION_ATTEMPTS: usize = 100;

/// Standard single-round head probability.
pub const DEFAULT_P_HEAD: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterAssignment {
    /// Elected heads in id order.
    pub heads: Vec<NodeId>,
    /// Cluster id per node: the head's id, or the node's own id for heads
    /// and orphans.
    pub cluster_of: Vec<NodeId>,
    /// Non-head nodes with no head in range.
    pub orphans: Vec<NodeId>,
}

impl ClusterAssignment {
    /// Assigns each non-head node to its nearest in-range head (ties by id).
    pub fn from_heads(dep: &Deployment, heads: Vec<NodeId>) -> Self {
        let mut is_head = vec![false; dep.len()];
        for &h in &heads {
            is_head[h] = true;
        }
        let mut cluster_of: Vec<NodeId> = (0..dep.len()).collect();
        let mut orphans = Vec::new();
        for v in 0..dep.len() {
            if is_head[v] {
                continue;
            }
            let nearest = heads
                .iter()
                .copied()
                .filter(|&h| dep.in_range(v, h))
                .min_by(|&a, &b| {
                    let da = distance_sq(dep.positions[v], dep.positions[a]);
                    let db = distance_sq(dep.positions[v], dep.positions[b]);
                    da.total_cmp(&db).then(a.cmp(&b))
                });
            match nearest {
                Some(h) => cluster_of[v] = h,
                None => orphans.push(v),
            }
        }
        Self {
            heads,
            cluster_of,
            orphans,
        }
    }

    /// Members of every cluster (head first when there is one), keyed by
    /// ascending cluster id.
    pub fn clusters(&self) -> Vec<Vec<NodeId>> {
        let mut by_id: Vec<Vec<NodeId>> = vec![Vec::new(); self.cluster_of.len()];
        for (v, &c) in self.cluster_of.iter().enumerate() {
            if v == c {
                by_id[c].insert(0, v);
            } else {
                by_id[c].push(v);
            }
        }
        by_id.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

/// Single-round head election. Each non-sink node in id order consumes one
/// `uniform()` draw; an election with no heads is redrawn.
pub fn leach_cluster(dep: &Deployment, p_head: f64, rng: &mut SimRng) -> Result<ClusterAssignment> {
    if !(p_head > 0.0 && p_head < 1.0) {
        return Err(Error::Config(format!(
            "p_head must lie in (0, 1), got {p_head}"
        )));
    }
    for _ in 0..ELECTION_ATTEMPTS {
        let heads: Vec<NodeId> = (0..dep.len())
            .filter(|&v| v != dep.sink)
            .filter(|_| rng.chance(p_head))
            .collect();
        if !heads.is_empty() {
            return Ok(ClusterAssignment::from_heads(dep, heads));
        }
    }
    Err(Error::Election {
        attempts: ELECTION_ATTEMPTS,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntraCluster {
    Knn(usize),
    Dtg,
}

#[derive(Clone, Debug)]
pub struct LeachTopology {
    /// Directed (out-links) for KNN clusters, undirected for DTG clusters.
    pub graph: Graph,
    pub assignment: ClusterAssignment,
    /// Heads with neither the sink nor a sink-ward head in range.
    pub unlinked_heads: Vec<NodeId>,
}

/// Edges built inside each cluster only.
pub fn intra_cluster_edges(
    dep: &Deployment,
    assignment: &ClusterAssignment,
    intra: IntraCluster,
) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for members in assignment.clusters() {
        match intra {
            IntraCluster::Knn(k) => {
                for &v in &members {
                    for u in nearest_in_range(dep, v, members.iter().copied(), k) {
                        edges.push((v, u));
                    }
                }
            }
            IntraCluster::Dtg => {
                edges.extend(
                    delaunay_edges(dep, &members)
                        .into_iter()
                        .filter(|&(u, v)| dep.in_range(u, v)),
                );
            }
        }
    }
    edges
}

/// Sink-ward backbone link for each head; `None` when no target is in range.
pub fn backbone_links(dep: &Deployment, heads: &[NodeId]) -> Vec<(NodeId, Option<NodeId>)> {
    let sink = dep.sink;
    let to_sink = |v: NodeId| distance_sq(dep.positions[v], dep.positions[sink]);
    heads
        .iter()
        .map(|&h| {
            if dep.in_range(h, sink) {
                return (h, Some(sink));
            }
            let target = heads
                .iter()
                .copied()
                .filter(|&g| g != h && to_sink(g) < to_sink(h) && dep.in_range(h, g))
                .min_by(|&a, &b| {
                    let da = distance_sq(dep.positions[h], dep.positions[a]);
                    let db = distance_sq(dep.positions[h], dep.positions[b]);
                    da.total_cmp(&db).then(a.cmp(&b))
                });
            (h, target)
        })
        .collect()
}

/// Builds the clustered topology for a given assignment.
pub fn composite_from_assignment(
    dep: &Deployment,
    assignment: ClusterAssignment,
    intra: IntraCluster,
) -> LeachTopology {
    let mut edges = intra_cluster_edges(dep, &assignment, intra);
    let mut unlinked_heads = Vec::new();
    for (h, target) in backbone_links(dep, &assignment.heads) {
        match target {
            Some(t) => edges.push((h, t)),
            None => unlinked_heads.push(h),
        }
    }
    let directed = matches!(intra, IntraCluster::Knn(_));
    let graph =
        Graph::from_edges(dep.len(), edges, directed).expect("cluster links form a simple graph");
    LeachTopology {
        graph,
        assignment,
        unlinked_heads,
    }
}

pub fn leach_composite(
    dep: &Deployment,
    p_head: f64,
    intra: IntraCluster,
    rng: &mut SimRng,
) -> Result<LeachTopology> {
    let assignment = leach_cluster(dep, p_head, rng)?;
    Ok(composite_from_assignment(dep, assignment, intra))
}
