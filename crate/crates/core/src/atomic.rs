//! Atomic representations as 2-coloured, scalar-weighted directed graphs over
//! named basis vertices. A blue edge `i: x → y` with scalar λ means
//! `S_i ξ_x = λ ξ_y`; an absent edge encodes the scalar-0 case. Scalars are
//! unimodular within [`SCALAR_TOL`].

use crate::theta::{Theta2Graph, ThetaError};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Tolerance for unimodularity and scalar coherence checks.
pub const SCALAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Blue,
    Red,
}

#[derive(Debug, Error)]
pub enum AtomicError {
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("generator index {index} out of range for {color:?}")]
    EdgeIndexOutOfRange { color: Color, index: u32 },
    #[error("edge {color:?} {index} from {from:?} defined twice")]
    EdgeRedefined { color: Color, index: u32, from: String },
    #[error("invalid theta: {0}")]
    Theta(#[from] ThetaError),
}

/// The graph of an atomic representation.
#[derive(Debug, Clone)]
pub struct AtomicGraph {
    theta: Theta2Graph,
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    blue: Vec<Vec<Option<(usize, Complex64)>>>,
    red: Vec<Vec<Option<(usize, Complex64)>>>,
    core: Vec<bool>,
}

impl AtomicGraph {
    pub fn new(theta: Theta2Graph) -> Self {
        let m = theta.m() as usize;
        let n = theta.n() as usize;
        AtomicGraph {
            theta,
            names: Vec::new(),
            index: BTreeMap::new(),
            blue: vec![Vec::new(); m],
            red: vec![Vec::new(); n],
            core: Vec::new(),
        }
    }

    pub fn theta(&self) -> &Theta2Graph {
        &self.theta
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, AtomicError> {
        if self.index.contains_key(name) {
            return Err(AtomicError::DuplicateVertex(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        for col in self.blue.iter_mut().chain(self.red.iter_mut()) {
            col.push(None);
        }
        self.core.push(false);
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn mark_core(&mut self, v: usize) {
        self.core[v] = true;
    }

    pub fn is_core(&self, v: usize) -> bool {
        self.core[v]
    }

    pub fn core_vertices(&self) -> Vec<usize> {
        (0..self.names.len()).filter(|&v| self.core[v]).collect()
    }

    fn edge_table(&mut self, color: Color, index: u32) -> Result<&mut Vec<Option<(usize, Complex64)>>, AtomicError> {
        let arity = match color {
            Color::Blue => self.theta.m(),
            Color::Red => self.theta.n(),
        };
        if index < 1 || index > arity {
            return Err(AtomicError::EdgeIndexOutOfRange { color, index });
        }
        let table = match color {
            Color::Blue => &mut self.blue[(index - 1) as usize],
            Color::Red => &mut self.red[(index - 1) as usize],
        };
        Ok(table)
    }

    pub fn set_edge(
        &mut self,
        color: Color,
        index: u32,
        from: usize,
        to: usize,
        scalar: Complex64,
    ) -> Result<(), AtomicError> {
        let from_name = self.names[from].clone();
        let table = self.edge_table(color, index)?;
        if table[from].is_some() {
            return Err(AtomicError::EdgeRedefined { color, index, from: from_name });
        }
        table[from] = Some((to, scalar));
        Ok(())
    }

    pub fn blue_edge(&self, index: u32, from: usize) -> Option<(usize, Complex64)> {
        self.blue[(index - 1) as usize][from]
    }

    pub fn red_edge(&self, index: u32, from: usize) -> Option<(usize, Complex64)> {
        self.red[(index - 1) as usize][from]
    }

    pub fn edge(&self, color: Color, index: u32, from: usize) -> Option<(usize, Complex64)> {
        match color {
            Color::Blue => self.blue_edge(index, from),
            Color::Red => self.red_edge(index, from),
        }
    }
}

/// JSON form of an atomic representation; edge rows are
/// `[index, from, to, scalar_re, scalar_im]` with 1-based indices.
#[derive(Serialize, Deserialize)]
struct RepJson {
    theta: Theta2Graph,
    vertices: Vec<String>,
    blue: Vec<(u32, String, String, f64, f64)>,
    red: Vec<(u32, String, String, f64, f64)>,
    core: Vec<String>,
}

impl Serialize for AtomicGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let edges = |tables: &[Vec<Option<(usize, Complex64)>>]| {
            let mut rows = Vec::new();
            for (k, table) in tables.iter().enumerate() {
                for (from, entry) in table.iter().enumerate() {
                    if let Some((to, s)) = entry {
                        rows.push((
                            k as u32 + 1,
                            self.names[from].clone(),
                            self.names[*to].clone(),
                            s.re,
                            s.im,
                        ));
                    }
                }
            }
            rows
        };
        RepJson {
            theta: self.theta.clone(),
            vertices: self.names.clone(),
            blue: edges(&self.blue),
            red: edges(&self.red),
            core: (0..self.names.len())
                .filter(|&v| self.core[v])
                .map(|v| self.names[v].clone())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AtomicGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RepJson::deserialize(deserializer)?;
        let mut g = AtomicGraph::new(raw.theta);
        for name in &raw.vertices {
            g.add_vertex(name).map_err(D::Error::custom)?;
        }
        let mut add_edges = |rows: &[(u32, String, String, f64, f64)], color: Color| {
            for (index, from, to, re, im) in rows {
                let f = g.vertex(from).ok_or_else(|| AtomicError::UnknownVertex(from.clone()))?;
                let t = g.vertex(to).ok_or_else(|| AtomicError::UnknownVertex(to.clone()))?;
                g.set_edge(color, *index, f, t, Complex64::new(*re, *im))?;
            }
            Ok::<(), AtomicError>(())
        };
        add_edges(&raw.blue, Color::Blue).map_err(D::Error::custom)?;
        add_edges(&raw.red, Color::Red).map_err(D::Error::custom)?;
        for name in &raw.core {
            let v = g
                .vertex(name)
                .ok_or_else(|| D::Error::custom(AtomicError::UnknownVertex(name.clone())))?;
            g.mark_core(v);
        }
        Ok(g)
    }
}

/// A one-colour atomic graph over the free semigroup `F_n^+`; the seed for
/// the twisted pair construction.
#[derive(Debug, Clone)]
pub struct OneColourGraph {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<Vec<Option<(usize, Complex64)>>>,
}

impl OneColourGraph {
    pub fn new(arity: u32) -> Self {
        OneColourGraph {
            names: Vec::new(),
            index: BTreeMap::new(),
            edges: vec![Vec::new(); arity as usize],
        }
    }

    pub fn arity(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, AtomicError> {
        if self.index.contains_key(name) {
            return Err(AtomicError::DuplicateVertex(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        for col in self.edges.iter_mut() {
            col.push(None);
        }
        Ok(id)
    }

    pub fn set_edge(&mut self, index: u32, from: usize, to: usize, scalar: Complex64) -> Result<(), AtomicError> {
        if index < 1 || index > self.arity() {
            return Err(AtomicError::EdgeIndexOutOfRange { color: Color::Blue, index });
        }
        let table = &mut self.edges[(index - 1) as usize];
        if table[from].is_some() {
            return Err(AtomicError::EdgeRedefined {
                color: Color::Blue,
                index,
                from: self.names[from].clone(),
            });
        }
        table[from] = Some((to, scalar));
        Ok(())
    }
}

/// The twisted pair of a one-colour atomic graph: red edge `j` duplicates
/// blue edge `α(j)` over the 2-graph with `θ(i,j) = (α(j), α⁻¹(i))`. The
/// commutation squares hold by construction.
pub fn twisted_pair(seed: &OneColourGraph, alpha: &[u32]) -> Result<AtomicGraph, AtomicError> {
    if alpha.len() != seed.arity() as usize {
        return Err(ThetaError::NotAPermutation(seed.arity()).into());
    }
    let theta = Theta2Graph::from_permutation(alpha)?;
    let mut g = AtomicGraph::new(theta);
    for name in &seed.names {
        let v = g.add_vertex(name)?;
        g.mark_core(v);
    }
    for (k, table) in seed.edges.iter().enumerate() {
        for (from, entry) in table.iter().enumerate() {
            if let Some((to, s)) = entry {
                g.set_edge(Color::Blue, k as u32 + 1, from, *to, *s)?;
            }
        }
    }
    for j in 1..=seed.arity() {
        let duplicated = alpha[(j - 1) as usize];
        for from in 0..seed.names.len() {
            if let Some((to, s)) = seed.edges[(duplicated - 1) as usize][from] {
                g.set_edge(Color::Red, j, from, to, s)?;
            }
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct VertexDegrees {
    pub vertex: String,
    pub blue_in: usize,
    pub red_in: usize,
    pub blue_in_from_core: usize,
    pub red_in_from_core: usize,
    pub blue_out: usize,
    pub red_out: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareCheck {
    pub vertex: String,
    pub i: u32,
    pub j: u32,
    pub i_prime: u32,
    pub j_prime: u32,
    /// Both composite edges defined and landing on the same vertex.
    pub targets_agree: Option<bool>,
    /// |product of path scalars difference|, when both paths are defined.
    pub scalar_residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "flag", rename_all = "snake_case")]
pub enum ValidationFlag {
    NonUnimodularScalar { color: Color, index: u32, from: String, modulus: f64 },
    MultipleIncoming { color: Color, vertex: String, count: usize },
    SquareTargetMismatch { vertex: String, i: u32, j: u32 },
    SquareScalarMismatch { vertex: String, i: u32, j: u32, residual: f64 },
    CoreVertexDefect { vertex: String, blue_in_from_core: usize, red_in_from_core: usize },
    EdgeIntoCoreFromOutside { color: Color, index: u32, from: String, to: String },
}

/// Report-style validation; hard failures are flagged entries.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub degrees: Vec<VertexDegrees>,
    pub squares: Vec<SquareCheck>,
    pub flags: Vec<ValidationFlag>,
    pub core_defect_free: bool,
    pub core_coinvariant: bool,
    /// Connectivity of the undirected skeleton restricted to the core. This is
    /// a proxy for irreducibility, not an exact test.
    pub core_skeleton_connected: bool,
    pub irreducibility_note: String,
    pub ok: bool,
}

pub fn validate(g: &AtomicGraph) -> ValidationReport {
    let nv = g.vertex_count();
    let m = g.theta().m();
    let n = g.theta().n();
    let mut flags = Vec::new();

    let mut blue_in = vec![0usize; nv];
    let mut red_in = vec![0usize; nv];
    let mut blue_in_core = vec![0usize; nv];
    let mut red_in_core = vec![0usize; nv];
    let mut blue_out = vec![0usize; nv];
    let mut red_out = vec![0usize; nv];

    let mut scan = |color: Color, arity: u32, flags: &mut Vec<ValidationFlag>| {
        for index in 1..=arity {
            for from in 0..nv {
                if let Some((to, s)) = g.edge(color, index, from) {
                    match color {
                        Color::Blue => {
                            blue_in[to] += 1;
                            blue_out[from] += 1;
                            if g.is_core(from) {
                                blue_in_core[to] += 1;
                            }
                        }
                        Color::Red => {
                            red_in[to] += 1;
                            red_out[from] += 1;
                            if g.is_core(from) {
                                red_in_core[to] += 1;
                            }
                        }
                    }
                    let modulus = s.norm();
                    if (modulus - 1.0).abs() > SCALAR_TOL {
                        flags.push(ValidationFlag::NonUnimodularScalar {
                            color,
                            index,
                            from: g.name(from).to_string(),
                            modulus,
                        });
                    }
                    if g.is_core(to) && !g.is_core(from) {
                        flags.push(ValidationFlag::EdgeIntoCoreFromOutside {
                            color,
                            index,
                            from: g.name(from).to_string(),
                            to: g.name(to).to_string(),
                        });
                    }
                }
            }
        }
    };
    scan(Color::Blue, m, &mut flags);
    scan(Color::Red, n, &mut flags);

    for v in 0..nv {
        if blue_in[v] > 1 {
            flags.push(ValidationFlag::MultipleIncoming {
                color: Color::Blue,
                vertex: g.name(v).to_string(),
                count: blue_in[v],
            });
        }
        if red_in[v] > 1 {
            flags.push(ValidationFlag::MultipleIncoming {
                color: Color::Red,
                vertex: g.name(v).to_string(),
                count: red_in[v],
            });
        }
    }

    // Commutation squares, checked wherever all four edges are defined:
    // S_i T_j ξ_x against T_{j'} S_{i'} ξ_x for θ(i,j) = (i',j').
    let mut squares = Vec::new();
    for x in 0..nv {
        for i in 1..=m {
            for j in 1..=n {
                let (ip, jp) = g.theta().apply(i, j);
                let left = g
                    .red_edge(j, x)
                    .and_then(|(y, s1)| g.blue_edge(i, y).map(|(z, s2)| (z, s1 * s2)));
                let right = g
                    .blue_edge(ip, x)
                    .and_then(|(y, t1)| g.red_edge(jp, y).map(|(z, t2)| (z, t1 * t2)));
                let mut check = SquareCheck {
                    vertex: g.name(x).to_string(),
                    i,
                    j,
                    i_prime: ip,
                    j_prime: jp,
                    targets_agree: None,
                    scalar_residual: None,
                };
                if let (Some((z1, s)), Some((z2, t))) = (left, right) {
                    let agree = z1 == z2;
                    check.targets_agree = Some(agree);
                    if !agree {
                        flags.push(ValidationFlag::SquareTargetMismatch {
                            vertex: g.name(x).to_string(),
                            i,
                            j,
                        });
                    } else {
                        let residual = (s - t).norm();
                        check.scalar_residual = Some(residual);
                        if residual > SCALAR_TOL {
                            flags.push(ValidationFlag::SquareScalarMismatch {
                                vertex: g.name(x).to_string(),
                                i,
                                j,
                                residual,
                            });
                        }
                    }
                }
                squares.push(check);
            }
        }
    }

    let mut core_defect_free = true;
    for v in 0..nv {
        if g.is_core(v) && (blue_in_core[v] != 1 || red_in_core[v] != 1) {
            core_defect_free = false;
            flags.push(ValidationFlag::CoreVertexDefect {
                vertex: g.name(v).to_string(),
                blue_in_from_core: blue_in_core[v],
                red_in_from_core: red_in_core[v],
            });
        }
    }
    let core_coinvariant = !flags
        .iter()
        .any(|f| matches!(f, ValidationFlag::EdgeIntoCoreFromOutside { .. }));

    let core_skeleton_connected = skeleton_connected(g);

    let degrees = (0..nv)
        .map(|v| VertexDegrees {
            vertex: g.name(v).to_string(),
            blue_in: blue_in[v],
            red_in: red_in[v],
            blue_in_from_core: blue_in_core[v],
            red_in_from_core: red_in_core[v],
            blue_out: blue_out[v],
            red_out: red_out[v],
        })
        .collect();

    let ok = !flags.iter().any(|f| {
        matches!(
            f,
            ValidationFlag::NonUnimodularScalar { .. }
                | ValidationFlag::MultipleIncoming { .. }
                | ValidationFlag::SquareTargetMismatch { .. }
                | ValidationFlag::SquareScalarMismatch { .. }
        )
    });

    ValidationReport {
        degrees,
        squares,
        flags,
        core_defect_free,
        core_coinvariant,
        core_skeleton_connected,
        irreducibility_note:
            "skeleton connectivity on the core is a proxy for irreducibility".to_string(),
        ok,
    }
}

fn skeleton_connected(g: &AtomicGraph) -> bool {
    let core = g.core_vertices();
    if core.is_empty() {
        return true;
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = core.iter().map(|&v| (v, Vec::new())).collect();
    let link = |a: usize, b: usize, adj: &mut BTreeMap<usize, Vec<usize>>| {
        if adj.contains_key(&a) && adj.contains_key(&b) {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
    };
    for i in 1..=g.theta().m() {
        for &v in &core {
            if let Some((to, _)) = g.blue_edge(i, v) {
                link(v, to, &mut adj);
            }
        }
    }
    for j in 1..=g.theta().n() {
        for &v in &core {
            if let Some((to, _)) = g.red_edge(j, v) {
                link(v, to, &mut adj);
            }
        }
    }
    let mut seen: BTreeMap<usize, bool> = core.iter().map(|&v| (v, false)).collect();
    let mut stack = vec![core[0]];
    seen.insert(core[0], true);
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if !seen[&w] {
                seen.insert(w, true);
                stack.push(w);
            }
        }
    }
    seen.values().all(|&s| s)
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

/// Deterministic DOT text; blue/red edges coloured, non-trivial scalars
/// rendered in the labels, core vertices drawn boxed.
pub fn export_dot(g: &AtomicGraph) -> String {
    let mut out = String::from("digraph atomic {\n");
    for v in 0..g.vertex_count() {
        let shape = if g.is_core(v) { " [shape=box]" } else { "" };
        out.push_str(&format!("  \"{}\"{};\n", g.name(v), shape));
    }
    let edges = |color: Color, arity: u32, color_name: &str, prefix: &str, out: &mut String| {
        for index in 1..=arity {
            for from in 0..g.vertex_count() {
                if let Some((to, s)) = g.edge(color, index, from) {
                    let mut label = format!("{prefix}{index}");
                    if (s - Complex64::new(1.0, 0.0)).norm() > SCALAR_TOL {
                        label.push_str(&format!(" ({:.6}{:+.6}i)", s.re, s.im));
                    }
                    out.push_str(&format!(
                        "  \"{}\" -> \"{}\" [color={color_name}, label=\"{label}\"];\n",
                        g.name(from),
                        g.name(to),
                    ));
                }
            }
        }
    };
    edges(Color::Blue, g.theta().m(), "blue", "e", &mut out);
    edges(Color::Red, g.theta().n(), "red", "f", &mut out);
    out.push_str("}\n");
    out
}
