use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{stream, SimRng};
use crate::NodeId;

/// Barabási-Albert preferential attachment on `n` nodes.
///
/// The first `m0` nodes form a complete graph. Every later node draws targets
/// by picking uniform entries of the edge-endpoint list (so each existing
/// node is hit with probability proportional to its degree), discarding
/// repeats until it has `m` distinct targets. Draws come from stream
/// [`stream::BA`] of `seed`; when the endpoint list is empty (`m0 = 1`) the
/// target is the lone seed node.
pub fn ba_graph(n: usize, m0: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || m > m0 || m0 >= n {
        return Err(Error::Config(format!(
            "BA needs 1 <= m <= m0 < n, got m={m} m0={m0} n={n}"
        )));
    }
    let mut rng = SimRng::new(seed, stream::BA);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(m0 * m0 / 2 + n * m);
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..m0 {
        for v in u + 1..m0 {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for new in m0..n {
        targets.clear();
        if endpoints.is_empty() {
            targets.push(0);
        }
        while targets.len() < m {
            let t = endpoints[rng.below(endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, new));
            endpoints.extend([t, new]);
        }
    }
    Graph::from_edges(n, edges, false)
}
