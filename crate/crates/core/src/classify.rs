//! Bounded classification of a dilated atomic representation into the type
//! taxonomy, read off from which of W1'–W4' fire at core vertices.

use crate::dilation::DilationResult;
use crate::wandering::{violations_at, Condition, Violation};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RepTag {
    /// Both a blue and a red ring through one core vertex.
    Type1,
    /// Blue ring only.
    Type2a,
    /// Red ring only.
    Type2b,
    /// Inductive-limit type; never certified at finite depth, reported as
    /// [`RepTag::UnknownAtDepth`] by `classify`.
    Type3a,
    /// Mixed ring `T_v S_u`.
    Type3bI,
    /// Colliding blue and red paths.
    Type3bII,
    /// No condition fired within the bound; candidate type 3a.
    UnknownAtDepth,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassWitness {
    pub vertex: String,
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepClass {
    pub tag: RepTag,
    pub witness: Option<ClassWitness>,
    pub word_bound: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("classification needs a nonempty core")]
    EmptyCore,
}

fn first(violations: &[Violation], condition: Condition) -> Option<&Violation> {
    violations.iter().find(|v| v.condition == condition)
}

/// Evaluates W1'–W4' over core vertices with word lengths ≤ `word_bound` and
/// tags the representation. The tag is only as strong as the bound: a clean
/// sweep yields `UnknownAtDepth`, a candidate type 3a.
pub fn classify(d: &DilationResult, word_bound: usize) -> Result<RepClass, ClassifyError> {
    let core = d.core();
    if core.is_empty() {
        return Err(ClassifyError::EmptyCore);
    }

    let mut per_vertex: Vec<(usize, Vec<Violation>)> = Vec::new();
    for &v in &core {
        let (violations, _) = violations_at(d, v, word_bound);
        per_vertex.push((v, violations));
    }

    let witness_from = |v: usize, u: &[u32], vv: &[u32]| ClassWitness {
        vertex: d.graph().name(v).to_string(),
        u: u.to_vec(),
        v: vv.to_vec(),
    };

    // Type 1: one core vertex carries both rings.
    for (v, violations) in &per_vertex {
        if let (Some(w1), Some(w2)) = (first(violations, Condition::W1), first(violations, Condition::W2)) {
            return Ok(RepClass {
                tag: RepTag::Type1,
                witness: Some(witness_from(*v, &w1.u, &w2.v)),
                word_bound,
            });
        }
    }
    for (condition, tag) in [
        (Condition::W1, RepTag::Type2a),
        (Condition::W2, RepTag::Type2b),
        (Condition::W3, RepTag::Type3bI),
        (Condition::W4, RepTag::Type3bII),
    ] {
        for (v, violations) in &per_vertex {
            if let Some(w) = first(violations, condition) {
                return Ok(RepClass {
                    tag,
                    witness: Some(witness_from(*v, &w.u, &w.v)),
                    word_bound,
                });
            }
        }
    }
    Ok(RepClass { tag: RepTag::UnknownAtDepth, witness: None, word_bound })
}
