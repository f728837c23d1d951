//! Giant-component robustness under uniform random node failure.
//!
//! The sink never fails: each trial removes `floor(p * (n - 1))` nodes drawn
//! uniformly from the non-sink nodes. Component sizes are taken over the
//! undirected view of the graph and reported as fractions of the original
//! node count.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SimRng;
use crate::NodeId;

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Largest component size and the size of the sink's component among nodes
/// not marked in `removed`. The sink component is 0 if the sink is removed.
pub fn components_after_removal(g: &Graph, sink: NodeId, removed: &[bool]) -> (usize, usize) {
    let n = g.node_count();
    let mut sets = DisjointSets::new(n);
    for u in 0..n {
        if removed[u] {
            continue;
        }
        for &v in g.neighbors(u) {
            if !removed[v] {
                sets.union(u, v);
            }
        }
    }
    let mut largest = 0;
    for (v, &gone) in removed.iter().enumerate().take(n) {
        if !gone && sets.parent[v] == v {
            largest = largest.max(sets.size[v]);
        }
    }
    let sink_size = if sink < n && !removed[sink] {
        let root = sets.find(sink);
        sets.size[root]
    } else {
        0
    };
    (largest, sink_size)
}

/// `(giant component size, sink component size)` of the intact graph.
pub fn giant_components(g: &Graph, sink: NodeId) -> (usize, usize) {
    components_after_removal(g, sink, &vec![false; g.node_count()])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RobustnessCurve {
    pub removal_fractions: Vec<f64>,
    pub gc_fraction_mean: Vec<f64>,
    pub gc_fraction_std: Vec<f64>,
    pub sink_gc_fraction_mean: Vec<f64>,
    pub sink_gc_fraction_std: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// Per-trial outcome: `(gc fraction, sink component fraction)`.
pub fn failure_trial(g: &Graph, sink: NodeId, fraction: f64, rng: &mut SimRng) -> (f64, f64) {
    let n = g.node_count();
    let mut pool: Vec<NodeId> = (0..n).filter(|&v| v != sink).collect();
    let count = ((fraction * (n - 1) as f64).floor() as usize).min(pool.len());
    let mut removed = vec![false; n];
    for &v in rng.choose_prefix(&mut pool, count).iter() {
        removed[v] = true;
    }
    let (gc, sink_gc) = components_after_removal(g, sink, &removed);
    (gc as f64 / n as f64, sink_gc as f64 / n as f64)
}

/// Neumaier-compensated mean and sample standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    fn compensated_sum(it: impl Iterator<Item = f64>) -> f64 {
        let (mut sum, mut c) = (0.0f64, 0.0f64);
        for x in it {
            let t = sum + x;
            if sum.abs() >= x.abs() {
                c += (sum - t) + x;
            } else {
                c += (x - t) + sum;
            }
            sum = t;
        }
        sum + c
    }
    let n = values.len() as f64;
    let mean = compensated_sum(values.iter().copied()) / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = compensated_sum(values.iter().map(|x| (x - mean) * (x - mean))) / (n - 1.0);
    (mean, var.sqrt())
}

fn check_sweep_input(g: &Graph, sink: NodeId, fractions: &[f64], trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::Config("at least one trial is required".into()));
    }
    if sink >= g.node_count() {
        return Err(Error::UnknownNode {
            id: sink,
            count: g.node_count(),
        });
    }
    if let Some(p) = fractions.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::Config(format!(
            "removal fraction {p} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Raw `(gc fraction, sink component fraction)` per grid point and trial.
/// Trial `j` at grid point `i` draws from [`SimRng::for_trial`]`(seed, i,
/// j)`, so outcomes do not depend on scheduling.
pub fn failure_outcomes(
    g: &Graph,
    sink: NodeId,
    fractions: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<Vec<(f64, f64)>>> {
    check_sweep_input(g, sink, fractions, trials)?;
    let view = g.undirected();
    Ok(fractions
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            (0..trials)
                .into_par_iter()
                .map(|j| failure_trial(&view, sink, p, &mut SimRng::for_trial(seed, i, j)))
                .collect()
        })
        .collect())
}

/// Aggregates raw outcomes (one list per grid point) into a curve.
pub fn summarize_outcomes(
    fractions: &[f64],
    outcomes: &[Vec<(f64, f64)>],
    seed: u64,
) -> RobustnessCurve {
    let mut curve = RobustnessCurve {
        removal_fractions: fractions.to_vec(),
        gc_fraction_mean: Vec::with_capacity(fractions.len()),
        gc_fraction_std: Vec::with_capacity(fractions.len()),
        sink_gc_fraction_mean: Vec::with_capacity(fractions.len()),
        sink_gc_fraction_std: Vec::with_capacity(fractions.len()),
        trials: outcomes.first().map_or(0, Vec::len),
        seed,
    };
    for point in outcomes {
        let gc: Vec<f64> = point.iter().map(|o| o.0).collect();
        let sink_gc: Vec<f64> = point.iter().map(|o| o.1).collect();
        let (m, s) = mean_std(&gc);
        curve.gc_fraction_mean.push(m);
        curve.gc_fraction_std.push(s);
        let (m, s) = mean_std(&sink_gc);
        curve.sink_gc_fraction_mean.push(m);
        curve.sink_gc_fraction_std.push(s);
    }
    curve
}

/// Runs `trials` random-failure trials per removal fraction and reports
/// mean and sample standard deviation of both component fractions.
pub fn random_failure_sweep(
    g: &Graph,
    sink: NodeId,
    fractions: &[f64],
    trials: usize,
    seed: u64,
) -> Result<RobustnessCurve> {
    let outcomes = failure_outcomes(g, sink, fractions, trials, seed)?;
    Ok(summarize_outcomes(fractions, &outcomes, seed))
}
