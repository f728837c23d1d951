use crate::geometry::{distance_sq, Deployment};
use crate::graph::Graph;
use crate::NodeId;

/// Nodes in range of `v` ordered by distance, ties by lower id.
fn by_distance(
    dep: &Deployment,
    v: NodeId,
    candidates: impl Iterator<Item = NodeId>,
) -> Vec<NodeId> {
    let p = dep.positions[v];
    let mut ranked: Vec<(f64, NodeId)> = candidates
        .filter(|&u| u != v && dep.in_range(u, v))
        .map(|u| (distance_sq(p, dep.positions[u]), u))
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    ranked.into_iter().map(|(_, u)| u).collect()
}

/// `k` nearest in-range selections of `v` among `candidates`.
pub(crate) fn nearest_in_range(
    dep: &Deployment,
    v: NodeId,
    candidates: impl Iterator<Item = NodeId>,
    k: usize,
) -> Vec<NodeId> {
    let mut ranked = by_distance(dep, v, candidates);
    ranked.truncate(k);
    ranked
}

/// Directed k-nearest-neighbor topology: each node links to its `k` nearest
/// potential neighbors (fewer when fewer are in range). Use
/// [`Graph::undirected`] for the symmetric radio-link view.
pub fn knn_topology(dep: &Deployment, k: usize) -> Graph {
    let table = dep.neighbor_table();
    let arcs = (0..dep.len()).flat_map(|v| {
        nearest_in_range(dep, v, table[v].iter().copied(), k)
            .into_iter()
            .map(move |u| (v, u))
    });
    Graph::from_edges(dep.len(), arcs.collect::<Vec<_>>(), true)
        .expect("knn arcs form a simple digraph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DeploymentConfig;

    #[test]
    fn collinear_nearest() {
        let cfg = DeploymentConfig {
            n: 3,
            side: 10.0,
            r: 5.0,
            sink_position: [0.0, 0.0],
        };
        let dep =
            Deployment::from_parts(cfg, vec![[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]], vec![1.0; 3])
                .unwrap();
        let g = knn_topology(&dep, 1);
        assert_eq!(g.edges(), vec![(0, 1), (1, 0), (2, 1)]);
    }

    #[test]
    fn distance_ties_prefer_lower_id() {
        let cfg = DeploymentConfig {
            n: 3,
            side: 10.0,
            r: 5.0,
            sink_position: [5.0, 5.0],
        };
        let dep =
            Deployment::from_parts(cfg, vec![[5.0, 5.0], [6.0, 5.0], [4.0, 5.0]], vec![1.0; 3])
                .unwrap();
        assert_eq!(knn_topology(&dep, 1).neighbors(0), &[1]);
    }

    #[test]
    fn out_degree_capped_by_range() {
        let cfg = DeploymentConfig {
            n: 4,
            side: 100.0,
            r: 2.0,
            sink_position: [0.0, 0.0],
        };
        let dep = Deployment::from_parts(
            cfg,
            vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [90.0, 90.0]],
            vec![1.0; 4],
        )
        .unwrap();
        let g = knn_topology(&dep, 6);
        assert_eq!(g.degrees(), vec![2, 2, 2, 0]);
    }
}
