//! Brute-force oracles and invariant checks shared by test targets.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use laee_core::analysis::{DegreeHistogram, TheoreticalModel, QUAD_TOL};
use laee_core::baselines::{dtg_topology, knn_topology};
use laee_core::geometry::distance_sq;
use laee_core::laee::Evolution;
use laee_core::{
    AttachmentDraw, Deployment, DeploymentConfig, EnergyWeight, Error, Graph, LaeeParams, Point,
    SimRng,
};

pub fn random_deployment(rng: &mut SimRng, n: usize, side: f64, r: f64) -> Deployment {
    let positions: Vec<Point> = (0..n)
        .map(|_| [side * rng.uniform(), side * rng.uniform()])
        .collect();
    let cfg = DeploymentConfig {
        n,
        side,
        r,
        sink_position: positions[0],
    };
    Deployment::from_parts(cfg, positions, vec![1.0; n]).unwrap()
}

/// Twice the signed area of `abc`.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Positive when `d` lies strictly inside the circumcircle of `abc`.
pub fn in_circle(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let rows = [a, b, c].map(|p| {
        let (x, y) = (p[0] - d[0], p[1] - d[1]);
        [x, y, x * x + y * y]
    });
    let det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
    det * orient(a, b, c).signum()
}

/// Delaunay edges as the union of all triangles with an empty circumcircle.
pub fn brute_force_delaunay(p: &[Point]) -> BTreeSet<(usize, usize)> {
    let n = p.len();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(p[i], p[j], p[k]).abs() < 1e-12 {
                    continue;
                }
                let empty = (0..n)
                    .filter(|&l| l != i && l != j && l != k)
                    .all(|l| in_circle(p[i], p[j], p[k], p[l]) <= 0.0);
                if empty {
                    edges.extend([(i, j), (i, k), (j, k)]);
                }
            }
        }
    }
    edges
}

pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// One random DTG instance with `3..=8` nodes against the oracle, plus a
/// planarity check.
pub fn check_dtg_instance(rng: &mut SimRng) -> Result<(), String> {
    let n = 3 + rng.below(6);
    let r = 20.0 + 80.0 * rng.uniform();
    let dep = random_deployment(rng, n, 100.0, r);
    let expected: BTreeSet<(usize, usize)> = brute_force_delaunay(&dep.positions)
        .into_iter()
        .filter(|&(u, v)| dep.in_range(u, v))
        .collect();
    let got: BTreeSet<(usize, usize)> = dtg_topology(&dep).edges().into_iter().collect();
    if got != expected {
        return Err(format!(
            "{:?}: got {got:?}, expected {expected:?}",
            dep.positions
        ));
    }
    let edges: Vec<_> = got.into_iter().collect();
    let p = &dep.positions;
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            let shared = [a, b].contains(&c) || [a, b].contains(&d);
            if !shared && segments_cross(p[a], p[b], p[c], p[d]) {
                return Err(format!(
                    "{:?}: edges {a}-{b} and {c}-{d} cross",
                    dep.positions
                ));
            }
        }
    }
    Ok(())
}

/// One random KNN instance against a full distance sort.
pub fn check_knn_instance(rng: &mut SimRng) -> Result<(), String> {
    let n = 2 + rng.below(60);
    let k = 1 + rng.below(8);
    let r = 10.0 + 90.0 * rng.uniform();
    let dep = random_deployment(rng, n, 100.0, r);
    let g = knn_topology(&dep, k);
    for v in 0..n {
        let mut others: Vec<(f64, usize)> = (0..n)
            .filter(|&u| u != v)
            .map(|u| (distance_sq(dep.positions[v], dep.positions[u]), u))
            .filter(|&(d, _)| d <= r * r)
            .collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let expected: BTreeSet<usize> = others.iter().take(k).map(|&(_, u)| u).collect();
        let got: BTreeSet<usize> = g.neighbors(v).iter().copied().collect();
        if got != expected {
            return Err(format!(
                "n={n} k={k} node {v}: got {got:?}, expected {expected:?}"
            ));
        }
    }
    Ok(())
}

/// `(largest component, sink component)` by breadth-first search over the
/// undirected edges among nodes not marked removed.
pub fn bfs_components(
    n: usize,
    edges: &[(usize, usize)],
    removed: &[bool],
    sink: usize,
) -> (usize, usize) {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if removed[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        let mut queue = VecDeque::from([s]);
        comp[s] = id;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &w in &adj[u] {
                if !removed[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    let gc = sizes.iter().copied().max().unwrap_or(0);
    let sink_size = if removed[sink] { 0 } else { sizes[comp[sink]] };
    (gc, sink_size)
}

/// Random simple-ish graph on `1..=64` nodes: `(n, edges, removed, sink)`.
pub fn random_graph(rng: &mut SimRng) -> (usize, Vec<(usize, usize)>, Vec<bool>, usize) {
    let n = 1 + rng.below(64);
    let m = rng.below(3 * n + 1);
    let edges = (0..m)
        .map(|_| (rng.below(n), rng.below(n)))
        .filter(|(u, v)| u != v)
        .collect();
    let removed = (0..n).map(|_| rng.chance(0.2)).collect();
    (n, edges, removed, rng.below(n))
}

/// A random deployment, parameter set, energy range and evolution seed for
/// which the LAEE seed topology can be built.
pub fn random_evolution_setup(rng: &mut SimRng) -> (Deployment, LaeeParams, (f64, f64), u64) {
    loop {
        let n = 30 + rng.below(271);
        let side = 100.0 + 200.0 * rng.uniform();
        let density = 8.0 + 22.0 * rng.uniform();
        let r = (side * (density / (std::f64::consts::PI * n as f64)).sqrt()).min(side);
        let sink_position = [side * rng.uniform(), side * rng.uniform()];
        let m0 = 2 + rng.below(7);
        let max_links = m0 * (m0 - 1) / 2;
        let e0 = (m0 - 1 + rng.below(4)).min(max_links);
        let m = 1 + rng.below(m0);
        let k_floor = (m + 1).max(m0 - 1);
        let k_max = k_floor + rng.below(31 - k_floor);
        let f_kind = [
            EnergyWeight::Identity,
            EnergyWeight::Square,
            EnergyWeight::Sqrt,
        ][rng.below(3)];
        let draw = [AttachmentDraw::Independent, AttachmentDraw::Distinct][rng.below(2)];
        let params = LaeeParams {
            m0,
            e0,
            m,
            k_max,
            f_kind,
            draw,
        };
        let e_lo = 0.1 + 0.9 * rng.uniform();
        let e_hi = e_lo + rng.uniform();
        let cfg = DeploymentConfig {
            n,
            side,
            r,
            sink_position,
        };
        for _ in 0..20 {
            let dep = Deployment::generate(&cfg, e_lo, e_hi, rng.next_u64()).unwrap();
            let evo = Evolution::new(&dep, params.clone()).unwrap();
            let seed = rng.next_u64();
            match evo.init_seed_topology(&mut SimRng::new(seed, 1)) {
                Ok(_) => return (dep, params, (e_lo, e_hi), seed),
                Err(Error::Seed(_)) => continue,
                Err(e) => panic!("unexpected seed error: {e}"),
            }
        }
    }
}

fn connected_from(sink: usize, members: &[bool], edges: &[(usize, usize)]) -> bool {
    let n = members.len();
    let removed: Vec<bool> = members.iter().map(|&m| !m).collect();
    let (_, sink_size) = bfs_components(n, edges, &removed, sink);
    sink_size == members.iter().filter(|&&m| m).count()
}

/// Grows a topology step by step and checks after every step that the grown
/// subgraph is connected and contains the sink, every edge is within range,
/// degrees respect the cap and match the edge list, and the saturated-node
/// count agrees with the degrees. Then checks the degree pmf, CCDF and the
/// theoretical density's quadrature convergence.
pub fn check_evolution_invariants(
    dep: &Deployment,
    params: &LaeeParams,
    energy: (f64, f64),
    seed: u64,
) -> Result<(), String> {
    let evo = Evolution::new(dep, params.clone()).map_err(|e| e.to_string())?;
    let mut rng = SimRng::new(seed, 1);
    let mut state = evo
        .init_seed_topology(&mut rng)
        .map_err(|e| e.to_string())?;
    let n = dep.len();
    let k_max = params.k_max;
    let mut step = 0usize;
    loop {
        let members: Vec<bool> = (0..n).map(|v| state.is_in_topology(v)).collect();
        if !members[dep.sink] {
            return Err(format!("step {step}: sink not in topology"));
        }
        if !connected_from(dep.sink, &members, state.edges()) {
            return Err(format!("step {step}: grown subgraph is disconnected"));
        }
        let mut degrees = vec![0usize; n];
        for &(u, v) in state.edges() {
            if !dep.in_range(u, v) {
                return Err(format!("step {step}: edge {u}-{v} longer than r"));
            }
            if !members[u] || !members[v] {
                return Err(format!(
                    "step {step}: edge {u}-{v} touches a scattered node"
                ));
            }
            degrees[u] += 1;
            degrees[v] += 1;
        }
        if degrees != state.degrees() {
            return Err(format!("step {step}: degree vector disagrees with edges"));
        }
        if let Some(v) = (0..n).find(|&v| degrees[v] > k_max) {
            return Err(format!(
                "step {step}: node {v} has degree {} > {k_max}",
                degrees[v]
            ));
        }
        let saturated = degrees.iter().filter(|&&d| d == k_max).count();
        if saturated != state.saturated() {
            return Err(format!(
                "step {step}: saturated count {} but {saturated} nodes at k_max",
                state.saturated()
            ));
        }
        let Some((_, b)) = evo.select_growth_pair(&state, &mut rng) else {
            break;
        };
        let links = evo
            .attach(&mut state, b, &mut rng)
            .map_err(|e| e.to_string())?;
        if links == 0 || links > params.m {
            return Err(format!("step {step}: node {b} joined with {links} links"));
        }
        step += 1;
    }

    let hist = DegreeHistogram::from_degrees(state.degrees()).map_err(|e| e.to_string())?;
    let total: f64 = hist.pmf().iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(format!("pmf sums to {total}"));
    }
    if hist.ccdf().windows(2).any(|w| w[1] > w[0]) {
        return Err("CCDF increases".into());
    }
    let model =
        TheoreticalModel::uniform(params.m, energy.0, energy.1).map_err(|e| e.to_string())?;
    for k in [params.m, params.m + 1, 2 * params.m + 3, 40, 500] {
        let coarse = model
            .pk_with_tolerance(k, QUAD_TOL)
            .map_err(|e| e.to_string())?;
        let fine = model
            .pk_with_tolerance(k, QUAD_TOL / 2.0)
            .map_err(|e| e.to_string())?;
        if ((fine - coarse) / fine).abs() >= 1e-7 {
            return Err(format!(
                "quadrature at k={k} moved by {} when halving the tolerance",
                (fine - coarse) / fine
            ));
        }
    }
    Ok(())
}

/// Checks a graph's component sizes against BFS, intact and after removal.
pub fn check_components(
    n: usize,
    edges: &[(usize, usize)],
    removed: &[bool],
    sink: usize,
    directed: bool,
) -> Result<(), String> {
    use laee_core::analysis::{components_after_removal, giant_components};
    let g = Graph::from_edges(n, edges.iter().copied(), directed).map_err(|e| e.to_string())?;
    let none = vec![false; n];
    let intact = giant_components(&g, sink);
    if intact != bfs_components(n, edges, &none, sink) {
        return Err(format!("intact components {intact:?} disagree with BFS"));
    }
    let after = components_after_removal(&g.undirected(), sink, removed);
    if after != bfs_components(n, edges, removed, sink) {
        return Err(format!(
            "components after removal {after:?} disagree with BFS"
        ));
    }
    Ok(())
}
