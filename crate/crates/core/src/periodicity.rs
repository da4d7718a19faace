//! Periodicity of `F_θ^+` decided through the bijection criterion: the graph
//! is periodic with period `(a,-b)` exactly when there is a bijection γ from
//! blue words of length `a` to red words of length `b` with
//! `e_u f_v = f_{γ(u)} e_{γ⁻¹(v)}` for all `u`, `v`.
//!
//! The criterion is decidable for each fixed `(a,b)`; aperiodicity is only
//! ever certified up to explicit search bounds.

use crate::theta::Theta2Graph;
use crate::word::{anti_normal_form, enumerate_free_words, Letter};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Default cap on `m^a`, the number of blue words a single candidate may
/// enumerate. Overridable through the CLI (`KG2_CAP`).
pub const DEFAULT_ENUMERATION_CAP: u64 = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PeriodError {
    #[error("candidate ({a},{b}) needs {size} words, above the cap {cap}")]
    SearchSpaceTooLarge { a: u32, b: u32, size: u64, cap: u64 },
}

/// A verified period `(a,-b)` with its bijection γ stored extensionally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodWitness {
    pub a: u32,
    pub b: u32,
    /// γ as a full table: blue word of length `a` → red word of length `b`.
    pub gamma: BTreeMap<Vec<u32>, Vec<u32>>,
}

impl Serialize for PeriodWitness {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            u: &'a [u32],
            v: &'a [u32],
        }
        #[derive(Serialize)]
        struct Table<'a> {
            a: u32,
            b: u32,
            gamma: Vec<Row<'a>>,
        }
        Table {
            a: self.a,
            b: self.b,
            gamma: self
                .gamma
                .iter()
                .map(|(u, v)| Row { u, v })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl PeriodWitness {
    pub fn gamma_of(&self, u: &[u32]) -> Option<&Vec<u32>> {
        self.gamma.get(u)
    }

    pub fn gamma_inv(&self) -> BTreeMap<Vec<u32>, Vec<u32>> {
        self.gamma.iter().map(|(u, v)| (v.clone(), u.clone())).collect()
    }

    /// Re-verifies the witness by a fresh brute-force pass over all pairs.
    pub fn verify(&self, g: &Theta2Graph) -> bool {
        check_period(g, self.a, self.b).as_ref() == Some(self)
    }
}

/// One rejected candidate `(a,b)` with a pair for which the forced γ fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedCandidate {
    pub a: u32,
    pub b: u32,
    pub counterexample_u: Vec<u32>,
    pub counterexample_v: Vec<u32>,
    pub reason: String,
}

/// Finite evidence for aperiodicity up to the stated bounds: every feasible
/// candidate (those with `m^a = n^b`) inside the bounds appears in `checked`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperiodicityCertificate {
    pub bound_a: u32,
    pub bound_b: u32,
    pub checked: Vec<FailedCandidate>,
}

/// Outcome of the bounded search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Periodicity {
    Periodic(PeriodWitness),
    /// `m = 1` or `n = 1`: periodic by the degenerate clause, no γ recorded.
    PeriodicDegenerate { m: u32, n: u32 },
    AperiodicUpTo(AperiodicityCertificate),
}

fn pow(base: u32, exp: u32) -> u64 {
    (base as u64).checked_pow(exp).unwrap_or(u64::MAX)
}

fn anti_of_pair(g: &Theta2Graph, u: &[u32], v: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let letters: Vec<Letter> = u
        .iter()
        .map(|&i| Letter::Blue(i))
        .chain(v.iter().map(|&j| Letter::Red(j)))
        .collect();
    anti_normal_form(&letters, g).expect("enumerated words are in range")
}

enum CandidateOutcome {
    Witness(PeriodWitness),
    Failed(FailedCandidate),
    Infeasible,
}

fn check_candidate(g: &Theta2Graph, a: u32, b: u32) -> CandidateOutcome {
    if pow(g.m(), a) != pow(g.n(), b) {
        return CandidateOutcome::Infeasible;
    }
    let blue_words = enumerate_free_words(g.m(), a as usize);
    let red_words = enumerate_free_words(g.n(), b as usize);
    let v0 = vec![1u32; b as usize];

    // Propose γ(u) from the anti-normal form of e_u f_{v0}; the relation
    // forces this value, so any failure below refutes the whole candidate.
    let mut gamma: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    let mut seen: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for u in &blue_words {
        let (v_img, _) = anti_of_pair(g, u, &v0);
        if let Some(prev) = seen.get(&v_img) {
            return CandidateOutcome::Failed(FailedCandidate {
                a,
                b,
                counterexample_u: u.clone(),
                counterexample_v: v0.clone(),
                reason: format!(
                    "forced gamma collides: gamma({prev:?}) = gamma({u:?}) = {v_img:?}"
                ),
            });
        }
        seen.insert(v_img.clone(), u.clone());
        gamma.insert(u.clone(), v_img);
    }
    let gamma_inv: BTreeMap<Vec<u32>, Vec<u32>> =
        gamma.iter().map(|(u, v)| (v.clone(), u.clone())).collect();

    for u in &blue_words {
        for v in &red_words {
            let (v_out, u_out) = anti_of_pair(g, u, v);
            if &v_out != gamma.get(u).unwrap() || Some(&u_out) != gamma_inv.get(v) {
                return CandidateOutcome::Failed(FailedCandidate {
                    a,
                    b,
                    counterexample_u: u.clone(),
                    counterexample_v: v.clone(),
                    reason: format!(
                        "anti-normal form of e_u f_v is (f_{v_out:?}, e_{u_out:?}), \
                         not (gamma(u), gamma^-1(v))"
                    ),
                });
            }
        }
    }
    CandidateOutcome::Witness(PeriodWitness { a, b, gamma })
}

/// Checks a single candidate `(a,b)`. Returns the witness iff the cardinality
/// constraint `m^a = n^b` holds, the forced γ is a bijection, and the defining
/// relation holds for every pair `(u,v)`.
pub fn check_period(g: &Theta2Graph, a: u32, b: u32) -> Option<PeriodWitness> {
    match check_candidate(g, a, b) {
        CandidateOutcome::Witness(w) => Some(w),
        _ => None,
    }
}

/// Scans candidates with `m^a = n^b` in increasing `a+b` order (ties broken by
/// smaller `a`) and returns the first witness, else a complete certificate.
pub fn find_period(
    g: &Theta2Graph,
    max_a: u32,
    max_b: u32,
    cap: u64,
) -> Result<Periodicity, PeriodError> {
    if g.m() == 1 || g.n() == 1 {
        return Ok(Periodicity::PeriodicDegenerate { m: g.m(), n: g.n() });
    }
    let mut candidates: Vec<(u32, u32)> = Vec::new();
    for a in 1..=max_a {
        for b in 1..=max_b {
            if pow(g.m(), a) == pow(g.n(), b) {
                candidates.push((a, b));
            }
        }
    }
    candidates.sort_by_key(|&(a, b)| (a + b, a));

    let mut checked = Vec::new();
    for (a, b) in candidates {
        let size = pow(g.m(), a);
        if size > cap {
            return Err(PeriodError::SearchSpaceTooLarge { a, b, size, cap });
        }
        match check_candidate(g, a, b) {
            CandidateOutcome::Witness(w) => return Ok(Periodicity::Periodic(w)),
            CandidateOutcome::Failed(f) => checked.push(f),
            CandidateOutcome::Infeasible => unreachable!("candidates are pre-filtered"),
        }
    }
    Ok(Periodicity::AperiodicUpTo(AperiodicityCertificate {
        bound_a: max_a,
        bound_b: max_b,
        checked,
    }))
}
