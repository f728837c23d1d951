//! Node deployment, transmission-range queries and the unit disk graph.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{stream, SimRng};
use crate::NodeId;

pub type Point = [f64; 2];

pub fn distance_sq(a: Point, b: Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

pub fn distance(a: Point, b: Point) -> f64 {
    distance_sq(a, b).sqrt()
}

/// Square deployment region `[0, side]^2` with a fixed sink position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeploymentConfig {
    pub n: usize,
    pub side: f64,
    pub r: f64,
    pub sink_position: Point,
}

impl Default for DeploymentConfig {
    fn default() -> Self {
        Self {
            n: 1000,
            side: 1000.0,
            r: 100.0,
            sink_position: [0.0, 0.0],
        }
    }
}

impl DeploymentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!("n must be >= 2, got {}", self.n)));
        }
        if !(self.side.is_finite() && self.side > 0.0) {
            return Err(Error::Config(format!(
                "side must be > 0, got {}",
                self.side
            )));
        }
        if !(self.r > 0.0 && self.r <= self.side) {
            return Err(Error::Config(format!(
                "transmission range must satisfy 0 < r <= side, got r={} side={}",
                self.r, self.side
            )));
        }
        if !self.contains(self.sink_position) {
            return Err(Error::Config(format!(
                "sink position {:?} lies outside [0, {}]^2",
                self.sink_position, self.side
            )));
        }
        Ok(())
    }

    pub fn contains(&self, p: Point) -> bool {
        (0.0..=self.side).contains(&p[0]) && (0.0..=self.side).contains(&p[1])
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }

    /// Probability that a uniformly placed node falls inside a given
    /// transmission disk, `pi r^2 / S`, capped at 1.
    pub fn phi(&self) -> f64 {
        (PI * self.r * self.r / self.area()).min(1.0)
    }

    /// Expected potential-neighbor count ignoring border effects, `n phi - 1`.
    pub fn expected_neighbors(&self) -> f64 {
        self.n as f64 * self.phi() - 1.0
    }
}

/// Immutable node placement. Node 0 is the sink.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub config: DeploymentConfig,
    pub positions: Vec<Point>,
    pub energies: Vec<f64>,
    pub sink: NodeId,
}

impl Deployment {
    /// Places `n - 1` sensors uniformly over the region and the sink at its
    /// configured position, then assigns every node (sink included) a uniform
    /// energy in `[energy_lo, energy_hi]`.
    ///
    /// Draw order on stream [`stream::DEPLOY`]: `x` then `y` for nodes
    /// `1..n`, then one energy per node `0..n`. Coordinates are
    /// `side * uniform()`.
    pub fn generate(
        cfg: &DeploymentConfig,
        energy_lo: f64,
        energy_hi: f64,
        seed: u64,
    ) -> Result<Self> {
        cfg.validate()?;
        if !(energy_lo.is_finite() && energy_hi.is_finite() && energy_lo <= energy_hi) {
            return Err(Error::Config(format!(
                "energy bounds must satisfy lo <= hi, got [{energy_lo}, {energy_hi}]"
            )));
        }
        let mut rng = SimRng::new(seed, stream::DEPLOY);
        let mut positions = Vec::with_capacity(cfg.n);
        positions.push(cfg.sink_position);
        for _ in 1..cfg.n {
            let x = cfg.side * rng.uniform();
            let y = cfg.side * rng.uniform();
            positions.push([x, y]);
        }
        let energies = (0..cfg.n)
            .map(|_| rng.uniform_in(energy_lo, energy_hi))
            .collect();
        Ok(Self {
            config: cfg.clone(),
            positions,
            energies,
            sink: 0,
        })
    }

    /// Deployment from explicit positions and energies. `positions[0]` must
    /// equal the configured sink position.
    pub fn from_parts(
        cfg: DeploymentConfig,
        positions: Vec<Point>,
        energies: Vec<f64>,
    ) -> Result<Self> {
        let dep = Self {
            config: cfg,
            positions,
            energies,
            sink: 0,
        };
        dep.validate()?;
        Ok(dep)
    }

    pub fn validate(&self) -> Result<()> {
        self.config.validate()?;
        if self.positions.len() != self.config.n || self.energies.len() != self.config.n {
            return Err(Error::Config(format!(
                "expected {} positions and energies, got {} and {}",
                self.config.n,
                self.positions.len(),
                self.energies.len()
            )));
        }
        if let Some(p) = self.positions.iter().find(|p| !self.config.contains(**p)) {
            return Err(Error::Config(format!(
                "position {p:?} lies outside the region"
            )));
        }
        if self.sink != 0 || self.positions[0] != self.config.sink_position {
            return Err(Error::Config(
                "node 0 must be the sink at the configured sink position".into(),
            ));
        }
        if self.energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Config("energies must be finite".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn range(&self) -> f64 {
        self.config.r
    }

    pub fn distance(&self, u: NodeId, v: NodeId) -> f64 {
        distance(self.positions[u], self.positions[v])
    }

    /// Closed-disk range test: distance exactly `r` is in range.
    pub fn in_range(&self, u: NodeId, v: NodeId) -> bool {
        let r = self.config.r;
        distance_sq(self.positions[u], self.positions[v]) <= r * r
    }

    /// Nodes within transmission range of `v`, excluding `v`, sorted by id.
    pub fn potential_neighbors(&self, v: NodeId) -> Result<Vec<NodeId>> {
        if v >= self.len() {
            return Err(Error::UnknownNode {
                id: v,
                count: self.len(),
            });
        }
        Ok(RangeIndex::new(self).neighbors_of(self, v))
    }

    /// Potential-neighbor lists for every node.
    pub fn neighbor_table(&self) -> Vec<Vec<NodeId>> {
        let index = RangeIndex::new(self);
        (0..self.len())
            .map(|v| index.neighbors_of(self, v))
            .collect()
    }

    /// Unit disk graph: an edge between every pair within range.
    pub fn udg_graph(&self) -> Graph {
        let table = self.neighbor_table();
        let edges = table
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
        Graph::from_edges(self.len(), edges, false).expect("range pairs form a simple graph")
    }
}

/// Uniform grid bucket index with cell side `r`; a range query inspects the
/// 3x3 block of cells around the query point.
pub struct RangeIndex {
    cell: f64,
    cols: usize,
    buckets: Vec<Vec<NodeId>>,
}

impl RangeIndex {
    pub fn new(dep: &Deployment) -> Self {
        let cell = dep.config.r;
        let cols = ((dep.config.side / cell).ceil() as usize).max(1);
        let mut buckets = vec![Vec::new(); cols * cols];
        for (id, &p) in dep.positions.iter().enumerate() {
            let (cx, cy) = Self::cell_of(cell, cols, p);
            buckets[cy * cols + cx].push(id);
        }
        Self {
            cell,
            cols,
            buckets,
        }
    }

    fn cell_of(cell: f64, cols: usize, p: Point) -> (usize, usize) {
        let cx = ((p[0] / cell) as usize).min(cols - 1);
        let cy = ((p[1] / cell) as usize).min(cols - 1);
        (cx, cy)
    }

    pub fn neighbors_of(&self, dep: &Deployment, v: NodeId) -> Vec<NodeId> {
        let p = dep.positions[v];
        let r2 = dep.config.r * dep.config.r;
        let (cx, cy) = Self::cell_of(self.cell, self.cols, p);
        let mut out = Vec::new();
        for y in cy.saturating_sub(1)..=(cy + 1).min(self.cols - 1) {
            for x in cx.saturating_sub(1)..=(cx + 1).min(self.cols - 1) {
                for &u in &self.buckets[y * self.cols + x] {
                    if u != v && distance_sq(p, dep.positions[u]) <= r2 {
                        out.push(u);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// How to evaluate the neighbor-count distribution of a transmission disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeighborModel {
    Binomial,
    Poisson,
}

fn ln_choose(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `C(n, k) phi^k (1 - phi)^(n - k)`.
pub fn binomial_pmf(n: usize, phi: f64, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    if phi <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if phi >= 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    (ln_choose(n, k) + k as f64 * phi.ln() + (n - k) as f64 * (-phi).ln_1p()).exp()
}

/// `lambda^k e^-lambda / k!`.
pub fn poisson_pmf(lambda: f64, k: usize) -> f64 {
    if lambda <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * lambda.ln() - lambda - ln_factorial(k)).exp()
}

/// Probability that a transmission disk holds exactly `k` of the `n` nodes.
pub fn neighbor_count_pmf(cfg: &DeploymentConfig, k: usize, model: NeighborModel) -> f64 {
    let phi = cfg.phi();
    match model {
        NeighborModel::Binomial => binomial_pmf(cfg.n, phi, k),
        NeighborModel::Poisson => poisson_pmf(cfg.n as f64 * phi, k),
    }
}
