//! Local-area, energy-efficient topology evolution.
//!
//! Growth starts from a small connected seed around the sink. Each step picks
//! the in-topology node with the most scattered (not yet attached) potential
//! neighbors, draws one of those scattered neighbors as the joining node, and
//! links it to up to `m` of its in-topology potential neighbors with
//! probability proportional to `f(E) * k`. Nodes at the degree cap take no
//! further links.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Deployment;
use crate::graph::Graph;
use crate::rng::{stream, SimRng};
use crate::NodeId;

/// Increasing map from residual energy to attachment affinity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyWeight {
    #[default]
    Identity,
    Square,
    Sqrt,
}

impl EnergyWeight {
    pub fn apply(self, energy: f64) -> f64 {
        match self {
            EnergyWeight::Identity => energy,
            EnergyWeight::Square => energy * energy,
            EnergyWeight::Sqrt => energy.sqrt(),
        }
    }
}

/// How a joining node with more than `m` candidates picks its links.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttachmentDraw {
    /// `m` independent draws from the attachment distribution; repeated
    /// picks of the same candidate yield a single link.
    #[default]
    Independent,
    /// `m` distinct candidates by sequential sampling without replacement.
    Distinct,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaeeParams {
    /// Nodes in the seed topology, sink included.
    pub m0: usize,
    /// Random links in the seed topology.
    pub e0: usize,
    /// Links per joining node.
    pub m: usize,
    /// Degree cap.
    pub k_max: usize,
    #[serde(default)]
    pub f_kind: EnergyWeight,
    #[serde(default)]
    pub draw: AttachmentDraw,
}

impl Default for LaeeParams {
    fn default() -> Self {
        Self {
            m0: 10,
            e0: 10,
            m: 3,
            k_max: 30,
            f_kind: EnergyWeight::Identity,
            draw: AttachmentDraw::Independent,
        }
    }
}

impl LaeeParams {
    pub fn with_m(m: usize) -> Self {
        Self {
            m,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m0 < 2 {
            return Err(Error::Config(format!("m0 must be >= 2, got {}", self.m0)));
        }
        let max_links = self.m0 * (self.m0 - 1) / 2;
        if self.e0 < 1 || self.e0 > max_links {
            return Err(Error::Config(format!(
                "e0 must lie in [1, {max_links}] for m0={}, got {}",
                self.m0, self.e0
            )));
        }
        if self.m < 1 || self.m > self.m0 {
            return Err(Error::Config(format!(
                "m must lie in [1, m0={}], got {}",
                self.m0, self.m
            )));
        }
        if self.k_max < self.m0 - 1 {
            return Err(Error::Config(format!(
                "k_max={} is below the largest possible seed degree m0-1={}",
                self.k_max,
                self.m0 - 1
            )));
        }
        if self.m >= self.k_max {
            return Err(Error::Config(format!(
                "m must be below k_max={}, got {}",
                self.k_max, self.m
            )));
        }
        Ok(())
    }
}

/// In-progress evolution.
#[derive(Clone, Debug)]
pub struct EvolutionState {
    in_topology: Vec<bool>,
    degrees: Vec<usize>,
    /// Number of nodes whose degree equals `k_max`.
    q: usize,
    edges: Vec<(NodeId, NodeId)>,
    /// Nodes added after the seed.
    t: usize,
    join_order: Vec<NodeId>,
    /// Scattered potential neighbors per node.
    scattered_neighbors: Vec<usize>,
    scattered_total: usize,
}

impl EvolutionState {
    fn new(node_count: usize, neighbors: &[Vec<NodeId>]) -> Self {
        Self {
            in_topology: vec![false; node_count],
            degrees: vec![0; node_count],
            q: 0,
            edges: Vec::new(),
            t: 0,
            join_order: Vec::new(),
            scattered_neighbors: neighbors.iter().map(Vec::len).collect(),
            scattered_total: node_count,
        }
    }

    fn join(&mut self, v: NodeId, neighbors: &[Vec<NodeId>]) {
        debug_assert!(!self.in_topology[v]);
        self.in_topology[v] = true;
        self.scattered_total -= 1;
        self.join_order.push(v);
        for &u in &neighbors[v] {
            self.scattered_neighbors[u] -= 1;
        }
    }

    fn link(&mut self, u: NodeId, v: NodeId, k_max: usize) {
        for x in [u, v] {
            self.degrees[x] += 1;
            if self.degrees[x] == k_max {
                self.q += 1;
            }
        }
        self.edges.push((u.min(v), u.max(v)));
    }

    pub fn is_in_topology(&self, v: NodeId) -> bool {
        self.in_topology[v]
    }

    pub fn is_scattered(&self, v: NodeId) -> bool {
        !self.in_topology[v]
    }

    pub fn in_topology_count(&self) -> usize {
        self.in_topology.len() - self.scattered_total
    }

    pub fn scattered_count(&self) -> usize {
        self.scattered_total
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn saturated(&self) -> usize {
        self.q
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn steps(&self) -> usize {
        self.t
    }

    pub fn join_order(&self) -> &[NodeId] {
        &self.join_order
    }

    pub fn scattered_neighbor_count(&self, v: NodeId) -> usize {
        self.scattered_neighbors[v]
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.in_topology.len(), self.edges.iter().copied(), false)
            .expect("evolution edges form a simple graph")
    }
}

/// One growth step: anchor `a`, joining node `b`, and the links `b` received.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthStep {
    pub a: NodeId,
    pub b: NodeId,
    pub links: usize,
}

/// Outcome of a full evolution run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionReport {
    pub join_order: Vec<NodeId>,
    /// Nodes that could never be attached (unreachable from the seed).
    pub unreached: Vec<NodeId>,
    pub edges: Vec<[NodeId; 2]>,
    pub params: LaeeParams,
    pub seed: u64,
    pub steps: Vec<GrowthStep>,
}

/// Evolution over a fixed deployment; holds the potential-neighbor table.
pub struct Evolution<'a> {
    dep: &'a Deployment,
    params: LaeeParams,
    neighbors: Vec<Vec<NodeId>>,
}

const SEED_ATTEMPTS: usize = 100;

impl<'a> Evolution<'a> {
    pub fn new(dep: &'a Deployment, params: LaeeParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            dep,
            params,
            neighbors: dep.neighbor_table(),
        })
    }

    pub fn params(&self) -> &LaeeParams {
        &self.params
    }

    pub fn potential_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[v]
    }

    /// Seed topology: the sink plus `m0 - 1` of its potential neighbors
    /// chosen uniformly, joined by `e0` distinct in-range links drawn
    /// uniformly. Link sets that leave the seed disconnected are redrawn.
    pub fn init_seed_topology(&self, rng: &mut SimRng) -> Result<EvolutionState> {
        let p = &self.params;
        let sink = self.dep.sink;
        let mut pool = self.neighbors[sink].clone();
        if pool.len() < p.m0 - 1 {
            return Err(Error::Seed(format!(
                "sink has {} potential neighbors, m0={} needs {}",
                pool.len(),
                p.m0,
                p.m0 - 1
            )));
        }
        let mut members = vec![sink];
        members.extend_from_slice(rng.choose_prefix(&mut pool, p.m0 - 1));

        let mut pairs = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if self.dep.in_range(u, v) {
                    pairs.push((u.min(v), u.max(v)));
                }
            }
        }
        pairs.sort_unstable();
        if pairs.len() < p.e0 {
            return Err(Error::Seed(format!(
                "only {} in-range pairs among the seed nodes, e0={}",
                pairs.len(),
                p.e0
            )));
        }
        if p.e0 < p.m0 - 1 {
            return Err(Error::Seed(format!(
                "e0={} links cannot connect m0={} nodes",
                p.e0, p.m0
            )));
        }

        for _ in 0..SEED_ATTEMPTS {
            let mut drawn = pairs.clone();
            let chosen = rng.choose_prefix(&mut drawn, p.e0);
            if links_connect(&members, chosen) {
                let mut state = EvolutionState::new(self.dep.len(), &self.neighbors);
                for &v in &members {
                    state.join(v, &self.neighbors);
                }
                for &(u, v) in chosen.iter() {
                    state.link(u, v, p.k_max);
                }
                return Ok(state);
            }
        }
        Err(Error::Seed(format!(
            "no connected seed after {SEED_ATTEMPTS} draws of {} links",
            p.e0
        )))
    }

    /// Picks the anchor `a` (an unsaturated in-topology node with the most
    /// scattered potential neighbors, ties uniform) and the joining node `b`
    /// (uniform among `a`'s scattered potential neighbors). `None` means
    /// growth is exhausted.
    pub fn select_growth_pair(
        &self,
        state: &EvolutionState,
        rng: &mut SimRng,
    ) -> Option<(NodeId, NodeId)> {
        let mut best = 0;
        let mut ties = Vec::new();
        for v in 0..self.dep.len() {
            if !state.in_topology[v] || state.degrees[v] >= self.params.k_max {
                continue;
            }
            let count = state.scattered_neighbors[v];
            if count == 0 || count < best {
                continue;
            }
            if count > best {
                best = count;
                ties.clear();
            }
            ties.push(v);
        }
        if ties.is_empty() {
            return None;
        }
        let a = ties[rng.below(ties.len())];
        let scattered: Vec<NodeId> = self.neighbors[a]
            .iter()
            .copied()
            .filter(|&u| !state.in_topology[u])
            .collect();
        let b = scattered[rng.below(scattered.len())];
        Some((a, b))
    }

    /// Unnormalized attachment masses `f(E_i) * max(k_i, 1)` over `b`'s
    /// in-topology potential neighbors below the degree cap, in id order.
    /// An empty result means `b` has nothing to attach to.
    pub fn attachment_weights(
        &self,
        state: &EvolutionState,
        b: NodeId,
    ) -> Result<Vec<(NodeId, f64)>> {
        if b >= self.dep.len() {
            return Err(Error::UnknownNode {
                id: b,
                count: self.dep.len(),
            });
        }
        if state.in_topology[b] {
            return Err(Error::State(format!("node {b} is already in the topology")));
        }
        Ok(self.neighbors[b]
            .iter()
            .copied()
            .filter(|&i| state.in_topology[i] && state.degrees[i] < self.params.k_max)
            .map(|i| {
                let k = state.degrees[i].max(1) as f64;
                (i, self.params.f_kind.apply(self.dep.energies[i]) * k)
            })
            .collect())
    }

    /// Moves `b` into the topology, linking it to all candidates when there
    /// are at most `m`, otherwise to the candidates picked by `m` weighted
    /// draws (see [`AttachmentDraw`]). Returns the number of links added.
    pub fn attach(&self, state: &mut EvolutionState, b: NodeId, rng: &mut SimRng) -> Result<usize> {
        let mut pool = self.attachment_weights(state, b)?;
        let chosen: Vec<NodeId> = if pool.len() <= self.params.m {
            pool.into_iter().map(|(i, _)| i).collect()
        } else {
            let mut picked = Vec::with_capacity(self.params.m);
            match self.params.draw {
                AttachmentDraw::Independent => {
                    let total: f64 = pool.iter().map(|&(_, w)| w).sum();
                    for _ in 0..self.params.m {
                        let (i, _) = pool[weighted_index(&pool, total * rng.uniform())];
                        if !picked.contains(&i) {
                            picked.push(i);
                        }
                    }
                }
                AttachmentDraw::Distinct => {
                    for _ in 0..self.params.m {
                        let total: f64 = pool.iter().map(|&(_, w)| w).sum();
                        let idx = weighted_index(&pool, total * rng.uniform());
                        picked.push(pool.remove(idx).0);
                    }
                }
            }
            picked
        };
        state.join(b, &self.neighbors);
        state.t += 1;
        for &i in &chosen {
            state.link(b, i, self.params.k_max);
        }
        Ok(chosen.len())
    }

    /// Runs a full evolution on stream [`stream::LAEE`] of `seed`.
    pub fn run(&self, seed: u64) -> Result<(Graph, EvolutionReport)> {
        let mut rng = SimRng::new(seed, stream::LAEE);
        let mut state = self.init_seed_topology(&mut rng)?;
        let mut steps = Vec::new();
        while let Some((a, b)) = self.select_growth_pair(&state, &mut rng) {
            let links = self.attach(&mut state, b, &mut rng)?;
            steps.push(GrowthStep { a, b, links });
        }
        let graph = state.graph();
        let unreached = (0..self.dep.len())
            .filter(|&v| !state.in_topology[v])
            .collect();
        let report = EvolutionReport {
            join_order: state.join_order.clone(),
            unreached,
            edges: graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            params: self.params.clone(),
            seed,
            steps,
        };
        Ok((graph, report))
    }
}

/// Full evolution of `dep` under `params`.
pub fn evolve(
    dep: &Deployment,
    params: &LaeeParams,
    seed: u64,
) -> Result<(Graph, EvolutionReport)> {
    Evolution::new(dep, params.clone())?.run(seed)
}

/// First index whose cumulative weight exceeds `target`. Falls back to the
/// last positive-weight entry when rounding pushes `target` past the total.
fn weighted_index(pool: &[(NodeId, f64)], target: f64) -> usize {
    let mut acc = 0.0;
    for (idx, &(_, w)) in pool.iter().enumerate() {
        acc += w;
        if target < acc {
            return idx;
        }
    }
    pool.iter()
        .rposition(|&(_, w)| w > 0.0)
        .unwrap_or(pool.len() - 1)
}

fn links_connect(members: &[NodeId], links: &[(NodeId, NodeId)]) -> bool {
    let index = |v: NodeId| members.iter().position(|&x| x == v).expect("seed member");
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = members.len();
    for &(u, v) in links {
        let (ru, rv) = (find(&mut parent, index(u)), find(&mut parent, index(v)));
        if ru != rv {
            parent[ru] = rv;
            components -= 1;
        }
    }
    components == 1
}
