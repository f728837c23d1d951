use spade::{DelaunayTriangulation, HasPosition, Point2, Triangulation};

use crate::geometry::Deployment;
use crate::graph::Graph;
use crate::NodeId;

struct Site {
    position: Point2<f64>,
    id: NodeId,
}

impl HasPosition for Site {
    type Scalar = f64;

    fn position(&self) -> Point2<f64> {
        self.position
    }
}

/// Delaunay edges over the nodes in `members`, as pairs of node ids.
/// Collinear inputs yield the path through consecutive points. Coincident
/// positions collapse onto one site.
pub(crate) fn delaunay_edges(dep: &Deployment, members: &[NodeId]) -> Vec<(NodeId, NodeId)> {
    if members.len() < 2 {
        return Vec::new();
    }
    let sites = members
        .iter()
        .map(|&id| Site {
            position: Point2::new(dep.positions[id][0], dep.positions[id][1]),
            id,
        })
        .collect();
    let triangulation: DelaunayTriangulation<Site> =
        DelaunayTriangulation::bulk_load(sites).expect("finite coordinates");
    triangulation
        .undirected_edges()
        .map(|e| {
            let [a, b] = e.vertices();
            let (u, v) = (a.data().id, b.data().id);
            (u.min(v), u.max(v))
        })
        .collect()
}

/// Delaunay triangulation graph restricted to edges no longer than the
/// transmission range.
pub fn dtg_topology(dep: &Deployment) -> Graph {
    let all: Vec<NodeId> = (0..dep.len()).collect();
    let edges = delaunay_edges(dep, &all)
        .into_iter()
        .filter(|&(u, v)| dep.in_range(u, v));
    Graph::from_edges(dep.len(), edges.collect::<Vec<_>>(), false)
        .expect("delaunay edges form a simple graph")
}
