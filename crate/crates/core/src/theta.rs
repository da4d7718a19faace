//! The defining data of a single-vertex 2-graph: counts of blue and red
//! generators together with the permutation θ on index pairs that encodes the
//! commutation relations `e_i f_j = f_{j'} e_{i'}` for `θ(i,j) = (i',j')`.
//!
//! Indices are 1-based everywhere in the public API and in the JSON format.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("theta is not a bijection: pair ({0},{1}) {2}")]
    NotABijection(u32, u32, &'static str),
    #[error("index out of range: ({i},{j}) with m={m}, n={n}")]
    IndexOutOfRange { i: u32, j: u32, m: u32, n: u32 },
    #[error("alpha is not a permutation of 1..={0}")]
    NotAPermutation(u32),
}

/// One relation row: `θ(i,j) = (i',j')`.
pub type ThetaPair = ((u32, u32), (u32, u32));

/// A single-vertex 2-graph `F_θ^+`: `m` blue generators, `n` red generators
/// and a bijection θ on the `m·n` index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theta2Graph {
    m: u32,
    n: u32,
    // slot (i-1)*n + (j-1) holds θ(i,j), 1-based values
    map: Vec<(u32, u32)>,
    inv: Vec<(u32, u32)>,
}

impl Theta2Graph {
    /// Builds and validates a 2-graph from an explicit list of pairs
    /// `((i,j),(i',j'))` meaning `θ(i,j) = (i',j')`.
    pub fn new(m: u32, n: u32, pairs: &[ThetaPair]) -> Result<Self, ThetaError> {
        if m == 0 || n == 0 {
            return Err(ThetaError::IndexOutOfRange { i: 0, j: 0, m, n });
        }
        let size = (m as usize) * (n as usize);
        let mut map = vec![None; size];
        let mut seen_image = vec![false; size];
        let in_range = |i: u32, j: u32| i >= 1 && i <= m && j >= 1 && j <= n;
        for &((i, j), (ip, jp)) in pairs {
            if !in_range(i, j) {
                return Err(ThetaError::IndexOutOfRange { i, j, m, n });
            }
            if !in_range(ip, jp) {
                return Err(ThetaError::IndexOutOfRange { i: ip, j: jp, m, n });
            }
            let slot = Self::slot_of(n, i, j);
            if map[slot].is_some() {
                return Err(ThetaError::NotABijection(i, j, "mapped twice"));
            }
            let image = Self::slot_of(n, ip, jp);
            if seen_image[image] {
                return Err(ThetaError::NotABijection(ip, jp, "hit twice as an image"));
            }
            seen_image[image] = true;
            map[slot] = Some((ip, jp));
        }
        let mut table = Vec::with_capacity(size);
        for (slot, entry) in map.into_iter().enumerate() {
            match entry {
                Some(p) => table.push(p),
                None => {
                    let (i, j) = Self::pair_of(n, slot);
                    return Err(ThetaError::NotABijection(i, j, "never mapped"));
                }
            }
        }
        let mut inv = vec![(0, 0); size];
        for (slot, &(ip, jp)) in table.iter().enumerate() {
            inv[Self::slot_of(n, ip, jp)] = Self::pair_of(n, slot);
        }
        Ok(Theta2Graph { m, n, map: table, inv })
    }

    /// The identity permutation: all generators commute verbatim.
    pub fn identity(m: u32, n: u32) -> Self {
        let mut pairs = Vec::new();
        for i in 1..=m {
            for j in 1..=n {
                pairs.push(((i, j), (i, j)));
            }
        }
        Self::new(m, n, &pairs).expect("identity is a bijection")
    }

    /// The flip permutation `θ(i,j) = (j,i)`; requires `m = n`.
    pub fn flip(n: u32) -> Self {
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                pairs.push(((i, j), (j, i)));
            }
        }
        Self::new(n, n, &pairs).expect("flip is a bijection")
    }

    /// The twisted pair of a permutation α of `{1..n}`:
    /// `θ(i,j) = (α(j), α⁻¹(i))`, the 2-graph carrying `T_j = S_{α(j)}`.
    pub fn from_permutation(alpha: &[u32]) -> Result<Self, ThetaError> {
        let n = alpha.len() as u32;
        if n == 0 {
            return Err(ThetaError::NotAPermutation(0));
        }
        let mut seen = vec![false; n as usize];
        for &a in alpha {
            if a < 1 || a > n || seen[(a - 1) as usize] {
                return Err(ThetaError::NotAPermutation(n));
            }
            seen[(a - 1) as usize] = true;
        }
        let mut alpha_inv = vec![0u32; n as usize];
        for (k, &a) in alpha.iter().enumerate() {
            alpha_inv[(a - 1) as usize] = k as u32 + 1;
        }
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let ip = alpha[(j - 1) as usize];
                let jp = alpha_inv[(i - 1) as usize];
                pairs.push(((i, j), (ip, jp)));
            }
        }
        Self::new(n, n, &pairs)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// θ(i,j), 1-based.
    pub fn apply(&self, i: u32, j: u32) -> (u32, u32) {
        self.map[Self::slot_of(self.n, i, j)]
    }

    /// θ⁻¹(i',j'), 1-based.
    pub fn apply_inv(&self, ip: u32, jp: u32) -> (u32, u32) {
        self.inv[Self::slot_of(self.n, ip, jp)]
    }

    fn slot_of(n: u32, i: u32, j: u32) -> usize {
        ((i - 1) as usize) * (n as usize) + (j - 1) as usize
    }

    fn pair_of(n: u32, slot: usize) -> (u32, u32) {
        ((slot / n as usize) as u32 + 1, (slot % n as usize) as u32 + 1)
    }
}

/// JSON form: `{"m":2,"n":2,"theta":[[i,j,i',j'],...]}`, 1-based entries.
#[derive(Serialize, Deserialize)]
struct ThetaJson {
    m: u32,
    n: u32,
    theta: Vec<[u32; 4]>,
}

impl Serialize for Theta2Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut rows = Vec::new();
        for i in 1..=self.m {
            for j in 1..=self.n {
                let (ip, jp) = self.apply(i, j);
                rows.push([i, j, ip, jp]);
            }
        }
        ThetaJson { m: self.m, n: self.n, theta: rows }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Theta2Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ThetaJson::deserialize(deserializer)?;
        let pairs: Vec<_> = raw
            .theta
            .iter()
            .map(|&[i, j, ip, jp]| ((i, j), (ip, jp)))
            .collect();
        Theta2Graph::new(raw.m, raw.n, &pairs).map_err(serde::de::Error::custom)
    }
}
