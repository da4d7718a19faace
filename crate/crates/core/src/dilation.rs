//! Breadth-first completion of a defect-free atomic seed to a truncated
//! Cuntz-type dilation.
//!
//! Each level allocates a tentative fresh vertex for every undefined outgoing
//! edge, then enforces all fully-defined commutation squares by merging
//! vertices with a scalar-weighted union-find. Merging two vertices folds
//! their edge tables together, which can force further merges (congruence
//! closure); the level ends when no merge fires. Merge order is deterministic
//! (smaller creation id wins), so outputs are reproducible bit for bit.

use crate::atomic::{validate, AtomicGraph, Color, SCALAR_TOL};
use crate::theta::Theta2Graph;
use crate::word::NormalWord;
use num_complex::Complex64;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DilationError {
    #[error("seed rejected: {0}")]
    InvalidSeed(String),
    #[error("scalar inconsistency at {vertex}: forced self-identification with |ratio-1| = {deviation:.3e}")]
    ScalarInconsistency { vertex: String, deviation: f64 },
}

/// A truncated Cuntz-type dilation. Vertices within distance `depth` of the
/// core exist; every non-frontier vertex has all `m` blue and `n` red
/// outgoing edges defined, and frontier vertices carry no outgoing edges.
#[derive(Debug, Clone)]
pub struct DilationResult {
    graph: AtomicGraph,
    depth: u32,
    distance: Vec<u32>,
    completed: Vec<bool>,
    blue_parent: Vec<Option<(usize, u32, Complex64)>>,
    red_parent: Vec<Option<(usize, u32, Complex64)>>,
}

impl DilationResult {
    pub fn graph(&self) -> &AtomicGraph {
        &self.graph
    }

    pub fn theta(&self) -> &Theta2Graph {
        self.graph.theta()
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn distance(&self, v: usize) -> u32 {
        self.distance[v]
    }

    pub fn is_frontier(&self, v: usize) -> bool {
        !self.completed[v]
    }

    pub fn frontier(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_frontier(v)).collect()
    }

    pub fn core(&self) -> Vec<usize> {
        self.graph.core_vertices()
    }

    /// The unique blue edge into `v`, as `(source, index, scalar)`.
    pub fn blue_parent(&self, v: usize) -> Option<(usize, u32, Complex64)> {
        self.blue_parent[v]
    }

    pub fn red_parent(&self, v: usize) -> Option<(usize, u32, Complex64)> {
        self.red_parent[v]
    }

    pub fn parent(&self, color: Color, v: usize) -> Option<(usize, u32, Complex64)> {
        match color {
            Color::Blue => self.blue_parent[v],
            Color::Red => self.red_parent[v],
        }
    }

    /// Follows the forward path of a normal word from `start` (reds first, as
    /// operators compose). Returns the endpoint and the product of scalars,
    /// or `None` if the path leaves the truncation.
    pub fn follow(&self, start: usize, word: &NormalWord) -> Option<(usize, Complex64)> {
        let mut cur = start;
        let mut scalar = Complex64::new(1.0, 0.0);
        for &j in word.red().iter().rev() {
            let (next, s) = self.graph.red_edge(j, cur)?;
            scalar *= s;
            cur = next;
        }
        for &i in word.blue().iter().rev() {
            let (next, s) = self.graph.blue_edge(i, cur)?;
            scalar *= s;
            cur = next;
        }
        Some((cur, scalar))
    }

    /// Structural invariants of a truncation: complete out-degree off the
    /// frontier, per-colour in-degree exactly one off the frontier, core
    /// coinvariance. Returns the first violation found.
    pub fn check_invariants(&self) -> Result<(), String> {
        let g = &self.graph;
        let report = validate(g);
        if !report.ok {
            return Err(format!("validation flags: {:?}", report.flags));
        }
        for v in 0..self.vertex_count() {
            let deg = &report.degrees[v];
            if !self.is_frontier(v) {
                if deg.blue_out != g.theta().m() as usize || deg.red_out != g.theta().n() as usize {
                    return Err(format!("non-frontier vertex {} lacks outgoing edges", g.name(v)));
                }
                if !self.core_is_empty() && (deg.blue_in != 1 || deg.red_in != 1) {
                    return Err(format!(
                        "non-frontier vertex {} has in-degrees ({}, {})",
                        g.name(v),
                        deg.blue_in,
                        deg.red_in
                    ));
                }
            }
        }
        if !report.core_coinvariant {
            return Err("core is not coinvariant".to_string());
        }
        Ok(())
    }

    fn core_is_empty(&self) -> bool {
        self.graph.core_vertices().is_empty()
    }

    pub(crate) fn from_graph(graph: AtomicGraph, depth: u32, completed: Vec<bool>) -> Self {
        let n = graph.vertex_count();
        let mut blue_parent = vec![None; n];
        let mut red_parent = vec![None; n];
        for i in 1..=graph.theta().m() {
            for from in 0..n {
                if let Some((to, s)) = graph.blue_edge(i, from) {
                    blue_parent[to] = Some((from, i, s));
                }
            }
        }
        for j in 1..=graph.theta().n() {
            for from in 0..n {
                if let Some((to, s)) = graph.red_edge(j, from) {
                    red_parent[to] = Some((from, j, s));
                }
            }
        }
        let distance = bfs_distance(&graph, depth);
        DilationResult { graph, depth, distance, completed, blue_parent, red_parent }
    }
}

fn bfs_distance(graph: &AtomicGraph, depth: u32) -> Vec<u32> {
    let n = graph.vertex_count();
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    for v in graph.core_vertices() {
        dist[v] = 0;
        queue.push_back(v);
    }
    // an empty core means the whole vertex set is the fallback root set
    if queue.is_empty() {
        for (v, d) in dist.iter_mut().enumerate() {
            *d = 0;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for i in 1..=graph.theta().m() {
            if let Some((to, _)) = graph.blue_edge(i, v) {
                if dist[to] == u32::MAX {
                    dist[to] = dist[v] + 1;
                    queue.push_back(to);
                }
            }
        }
        for j in 1..=graph.theta().n() {
            if let Some((to, _)) = graph.red_edge(j, v) {
                if dist[to] == u32::MAX {
                    dist[to] = dist[v] + 1;
                    queue.push_back(to);
                }
            }
        }
    }
    for d in dist.iter_mut() {
        if *d == u32::MAX {
            *d = depth;
        }
    }
    dist
}

// ---------------------------------------------------------------------------
// The dilation builder
// ---------------------------------------------------------------------------

struct Builder {
    theta: Theta2Graph,
    parent: Vec<usize>,
    weight: Vec<Complex64>,
    names: Vec<String>,
    completed: Vec<bool>,
    blue: Vec<Vec<Option<(usize, Complex64)>>>,
    red: Vec<Vec<Option<(usize, Complex64)>>>,
    pending: VecDeque<(usize, usize, Complex64)>,
    merges: usize,
}

impl Builder {
    fn find(&mut self, i: usize) -> (usize, Complex64) {
        if self.parent[i] == i {
            return (i, Complex64::new(1.0, 0.0));
        }
        let p = self.parent[i];
        let (root, wp) = self.find(p);
        let w = self.weight[i] * wp;
        self.parent[i] = root;
        self.weight[i] = w;
        (root, w)
    }

    fn fresh(&mut self, name: String) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.weight.push(Complex64::new(1.0, 0.0));
        self.names.push(name);
        self.completed.push(false);
        self.blue.push(vec![None; self.theta.m() as usize]);
        self.red.push(vec![None; self.theta.n() as usize]);
        id
    }

    fn slot(&self, color: Color, root: usize, k: usize) -> Option<(usize, Complex64)> {
        match color {
            Color::Blue => self.blue[root][k],
            Color::Red => self.red[root][k],
        }
    }

    /// Resolves the outgoing edge of a class to `(target root, scalar)`.
    fn edge(&mut self, color: Color, k: usize, root: usize) -> Option<(usize, Complex64)> {
        let (t, mu) = self.slot(color, root, k)?;
        let (rt, wt) = self.find(t);
        Some((rt, mu * wt))
    }

    /// Queues the identification `ξ_a = λ ξ_b`.
    fn enqueue(&mut self, a: usize, b: usize, lambda: Complex64) {
        self.pending.push_back((a, b, lambda));
    }

    fn drain(&mut self) -> Result<(), DilationError> {
        while let Some((a, b, lambda)) = self.pending.pop_front() {
            self.union(a, b, lambda)?;
        }
        Ok(())
    }

    fn union(&mut self, a: usize, b: usize, lambda: Complex64) -> Result<(), DilationError> {
        let (ra, wa) = self.find(a);
        let (rb, wb) = self.find(b);
        if ra == rb {
            // ξ_a = w_a ξ_r and ξ_a = λ ξ_b = λ w_b ξ_r force w_a = λ w_b
            let deviation = (lambda * wb / wa - Complex64::new(1.0, 0.0)).norm();
            if deviation > SCALAR_TOL {
                return Err(DilationError::ScalarInconsistency {
                    vertex: self.names[ra].clone(),
                    deviation,
                });
            }
            return Ok(());
        }
        self.merges += 1;
        // keep the older class as root so seed vertices survive as canonical
        let (keep, absorb, w_absorb) = if ra < rb {
            (ra, rb, wa / (lambda * wb))
        } else {
            (rb, ra, lambda * wb / wa)
        };
        self.parent[absorb] = keep;
        self.weight[absorb] = w_absorb;
        if self.completed[absorb] {
            self.completed[keep] = true;
        }
        for color in [Color::Blue, Color::Red] {
            let arity = match color {
                Color::Blue => self.theta.m(),
                Color::Red => self.theta.n(),
            } as usize;
            for k in 0..arity {
                let taken = match color {
                    Color::Blue => self.blue[absorb][k].take(),
                    Color::Red => self.red[absorb][k].take(),
                };
                if let Some((t, mu)) = taken {
                    // ξ_absorb = w ξ_keep, so the edge transfers with scalar μ/w
                    let adjusted = mu / w_absorb;
                    let existing = self.slot(color, keep, k);
                    match existing {
                        None => {
                            let table = match color {
                                Color::Blue => &mut self.blue[keep],
                                Color::Red => &mut self.red[keep],
                            };
                            table[k] = Some((t, adjusted));
                        }
                        Some((t2, mu2)) => {
                            // μ2 ξ_{t2} = adjusted ξ_t, congruence on targets
                            self.enqueue(t, t2, mu2 / adjusted);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Enqueues every fully-defined commutation square once.
    fn scan_squares(&mut self) {
        let total = self.parent.len();
        for x in 0..total {
            if self.parent[x] != x {
                continue;
            }
            for i in 1..=self.theta.m() {
                for j in 1..=self.theta.n() {
                    let (ip, jp) = self.theta.apply(i, j);
                    let left = self
                        .edge(Color::Red, (j - 1) as usize, x)
                        .and_then(|(y, s1)| {
                            self.edge(Color::Blue, (i - 1) as usize, y)
                                .map(|(z, s2)| (z, s1 * s2))
                        });
                    let right = self
                        .edge(Color::Blue, (ip - 1) as usize, x)
                        .and_then(|(y, t1)| {
                            self.edge(Color::Red, (jp - 1) as usize, y)
                                .map(|(z, t2)| (z, t1 * t2))
                        });
                    if let (Some((z1, s)), Some((z2, t))) = (left, right) {
                        if z1 != z2 || (s - t).norm() > SCALAR_TOL {
                            // s ξ_{z1} = t ξ_{z2} forces ξ_{z1} = (t/s) ξ_{z2}
                            self.enqueue(z1, z2, t / s);
                        }
                    }
                }
            }
        }
    }

    fn settle(&mut self) -> Result<(), DilationError> {
        loop {
            let before = self.merges;
            self.drain()?;
            self.scan_squares();
            self.drain()?;
            if self.merges == before {
                return Ok(());
            }
        }
    }
}

/// Dilates a defect-free atomic seed to the requested truncation depth. The
/// entire seed vertex set serves as the cyclic coinvariant core.
pub fn dilate(seed: &AtomicGraph, depth: u32) -> Result<DilationResult, DilationError> {
    let theta = seed.theta().clone();
    if theta.m() < 2 || theta.n() < 2 {
        return Err(DilationError::InvalidSeed(
            "representation modules require m, n >= 2".to_string(),
        ));
    }
    let report = validate(seed);
    if !report.ok {
        return Err(DilationError::InvalidSeed(format!(
            "seed fails validation: {:?}",
            report.flags
        )));
    }
    for deg in &report.degrees {
        if deg.blue_in != 1 || deg.red_in != 1 {
            return Err(DilationError::InvalidSeed(format!(
                "seed vertex {} has in-degrees ({}, {}); a defect-free seed needs exactly one of each",
                deg.vertex, deg.blue_in, deg.red_in
            )));
        }
    }

    let nv = seed.vertex_count();
    let mut b = Builder {
        theta: theta.clone(),
        parent: Vec::new(),
        weight: Vec::new(),
        names: Vec::new(),
        completed: Vec::new(),
        blue: Vec::new(),
        red: Vec::new(),
        pending: VecDeque::new(),
        merges: 0,
    };
    for v in 0..nv {
        b.fresh(seed.name(v).to_string());
    }
    for i in 1..=theta.m() {
        for v in 0..nv {
            if let Some((to, s)) = seed.blue_edge(i, v) {
                b.blue[v][(i - 1) as usize] = Some((to, s));
            }
        }
    }
    for j in 1..=theta.n() {
        for v in 0..nv {
            if let Some((to, s)) = seed.red_edge(j, v) {
                b.red[v][(j - 1) as usize] = Some((to, s));
            }
        }
    }
    b.settle()?;

    for _level in 0..depth {
        let snapshot: Vec<usize> = (0..b.parent.len())
            .filter(|&v| b.parent[v] == v && !b.completed[v])
            .collect();
        for x in snapshot {
            if b.parent[x] != x || b.completed[x] {
                continue;
            }
            for i in 0..theta.m() as usize {
                if b.blue[x][i].is_none() {
                    let name = format!("S{}({})", i + 1, b.names[x]);
                    let fresh = b.fresh(name);
                    b.blue[x][i] = Some((fresh, Complex64::new(1.0, 0.0)));
                }
            }
            for j in 0..theta.n() as usize {
                if b.red[x][j].is_none() {
                    let name = format!("T{}({})", j + 1, b.names[x]);
                    let fresh = b.fresh(name);
                    b.red[x][j] = Some((fresh, Complex64::new(1.0, 0.0)));
                }
            }
            b.completed[x] = true;
        }
        b.settle()?;
    }

    // canonical output: surviving classes in creation order
    let roots: Vec<usize> = (0..b.parent.len()).filter(|&v| b.parent[v] == v).collect();
    let mut out_id = vec![usize::MAX; b.parent.len()];
    for (new_id, &r) in roots.iter().enumerate() {
        out_id[r] = new_id;
    }
    for v in 0..nv {
        let (r, _) = b.find(v);
        if r != v {
            return Err(DilationError::InvalidSeed(format!(
                "core vertices {} and {} are forced equal; the seed admits no atomic dilation",
                b.names[v], b.names[r]
            )));
        }
    }

    let mut graph = AtomicGraph::new(theta.clone());
    for &r in &roots {
        let id = graph
            .add_vertex(&b.names[r])
            .map_err(|e| DilationError::InvalidSeed(e.to_string()))?;
        if r < nv {
            graph.mark_core(id);
        }
    }
    let mut completed_out = vec![false; roots.len()];
    for &r in &roots {
        completed_out[out_id[r]] = b.completed[r];
        for color in [Color::Blue, Color::Red] {
            let arity = match color {
                Color::Blue => theta.m(),
                Color::Red => theta.n(),
            } as usize;
            for k in 0..arity {
                if let Some((t, s)) = b.edge(color, k, r) {
                    graph
                        .set_edge(color, k as u32 + 1, out_id[r], out_id[t], s)
                        .map_err(|e| DilationError::InvalidSeed(e.to_string()))?;
                }
            }
        }
    }

    let result = DilationResult::from_graph(graph, depth, completed_out);
    // A square that only closes through fresh vertices can reveal that the
    // seed was never the compression of a Cuntz-type atomic representation
    // (ranges of same-colour isometries overlapping); reject instead of
    // returning a broken truncation.
    result
        .check_invariants()
        .map_err(DilationError::InvalidSeed)?;
    Ok(result)
}

/// The truncated left-regular representation as a graph model: vertices are
/// the normal words of length ≤ `trunc`, edges are left multiplication by the
/// generators, and the core is empty (nothing maps into the identity word).
pub fn left_regular_graph(theta: &Theta2Graph, trunc: u32) -> DilationResult {
    let mut graph = AtomicGraph::new(theta.clone());
    let mut basis: Vec<NormalWord> = Vec::new();
    let mut ids: std::collections::BTreeMap<NormalWord, usize> = std::collections::BTreeMap::new();
    for s in 0..=trunc as usize {
        for k in (0..=s).rev() {
            let l = s - k;
            for w in crate::word::enumerate_words(theta, k, l) {
                let id = graph.add_vertex(&w.to_string()).expect("distinct words");
                ids.insert(w.clone(), id);
                basis.push(w);
            }
        }
    }
    let one = Complex64::new(1.0, 0.0);
    for (from, w) in basis.iter().enumerate() {
        if w.len() as u32 >= trunc {
            continue;
        }
        for i in 1..=theta.m() {
            let img = w.left_mul_blue(i);
            graph.set_edge(Color::Blue, i, from, ids[&img], one).unwrap();
        }
        for j in 1..=theta.n() {
            let img = w.left_mul_red(j, theta);
            graph.set_edge(Color::Red, j, from, ids[&img], one).unwrap();
        }
    }
    let completed: Vec<bool> = basis.iter().map(|w| (w.len() as u32) < trunc).collect();
    let mut result = DilationResult::from_graph(graph, trunc, completed);
    // distances are word lengths, not BFS depth from the (empty) core
    result.distance = basis.iter().map(|w| w.len() as u32).collect();
    result
}
