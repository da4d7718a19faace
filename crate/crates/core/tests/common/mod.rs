//! Shared helpers for the integration suites: a brute-force rewrite oracle
//! that is independent of the library engine, deterministic θ generation, and
//! fixture loading.
#![allow(dead_code)] // each test binary uses its own subset

use kg2_core::{normal_form, AtomicGraph, Letter, Theta2Graph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

/// One rewrite step at one position, straight from the defining relation:
/// `f_j e_i` becomes `e_a f_b` where `θ(a,b) = (i,j)`.
pub fn rewrite_at(word: &[Letter], pos: usize, g: &Theta2Graph) -> Option<Vec<Letter>> {
    match (word.get(pos), word.get(pos + 1)) {
        (Some(&Letter::Red(j)), Some(&Letter::Blue(i))) => {
            let (a, b) = g.apply_inv(i, j);
            let mut out = word.to_vec();
            out[pos] = Letter::Blue(a);
            out[pos + 1] = Letter::Red(b);
            Some(out)
        }
        _ => None,
    }
}

/// All normal forms reachable by any maximal rewrite sequence.
pub fn reachable_normal_forms(
    word: Vec<Letter>,
    g: &Theta2Graph,
    memo: &mut HashMap<Vec<Letter>, BTreeSet<Vec<Letter>>>,
) -> BTreeSet<Vec<Letter>> {
    if let Some(hit) = memo.get(&word) {
        return hit.clone();
    }
    let mut out = BTreeSet::new();
    let mut any = false;
    for pos in 0..word.len().saturating_sub(1) {
        if let Some(next) = rewrite_at(&word, pos, g) {
            any = true;
            out.extend(reachable_normal_forms(next, g, memo));
        }
    }
    if !any {
        out.insert(word.clone());
    }
    memo.insert(word, out.clone());
    out
}

/// Every word over the mixed alphabet up to the length bound.
pub fn all_words(m: u32, n: u32, max_len: usize) -> Vec<Vec<Letter>> {
    let alphabet: Vec<Letter> = (1..=m)
        .map(Letter::Blue)
        .chain((1..=n).map(Letter::Red))
        .collect();
    let mut out: Vec<Vec<Letter>> = vec![vec![]];
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &l in &alphabet {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_theta(m: u32, n: u32, rng: &mut ChaCha8Rng) -> Theta2Graph {
    let domain: Vec<(u32, u32)> = (1..=m).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut image = domain.clone();
    image.shuffle(rng);
    let pairs: Vec<_> = domain.into_iter().zip(image).collect();
    Theta2Graph::new(m, n, &pairs).unwrap()
}

/// Identity, flip (square case) and five seeded random permutations.
pub fn theta_suite(m: u32, n: u32, seed: u64) -> Vec<Theta2Graph> {
    let mut out = vec![Theta2Graph::identity(m, n)];
    if m == n {
        out.push(Theta2Graph::flip(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..5 {
        out.push(random_theta(m, n, &mut rng));
    }
    out
}

/// Confluence of every rewrite order on every word up to the length bound,
/// and agreement of the library engine with the oracle.
pub fn assert_confluent(g: &Theta2Graph, max_len: usize) {
    let mut memo = HashMap::new();
    for word in all_words(g.m(), g.n(), max_len) {
        let forms = reachable_normal_forms(word.clone(), g, &mut memo);
        assert_eq!(forms.len(), 1, "word {word:?} has {} normal forms", forms.len());
        let oracle = forms.into_iter().next().unwrap();
        let fast = normal_form(&word, g).unwrap();
        assert_eq!(fast.letters(), oracle, "engine disagrees with the oracle on {word:?}");
    }
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load_rep_fixture(name: &str) -> AtomicGraph {
    let text = std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn load_theta_fixture(name: &str) -> Theta2Graph {
    let text = std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Names of every bundled atomic representation fixture.
pub fn rep_fixture_names() -> Vec<&'static str> {
    vec![
        "rep-one-vertex-identity.json",
        "rep-one-vertex-identity-phase.json",
        "rep-two-vertex-swap.json",
        "rep-self-pair-flip.json",
        "rep-blue-three-cycle.json",
    ]
}
