//! Small bundled representations exercised throughout the test-suite and
//! shipped as JSON fixtures for the CLI.

use crate::atomic::{twisted_pair, AtomicGraph, Color, OneColourGraph};
use crate::theta::Theta2Graph;
use num_complex::Complex64;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// One vertex over the identity θ (m = n = 2) with `A_1 ξ0 = ξ0 = B_1 ξ0`.
/// The dilation is aperiodic of type 1 and has wandering vectors.
pub fn one_vertex_identity_seed() -> AtomicGraph {
    let mut g = AtomicGraph::new(Theta2Graph::identity(2, 2));
    let x = g.add_vertex("xi0").unwrap();
    g.mark_core(x);
    g.set_edge(Color::Blue, 1, x, x, one()).unwrap();
    g.set_edge(Color::Red, 1, x, x, one()).unwrap();
    g
}

/// Same seed but the red self-loop carries the scalar i; exercises scalar
/// propagation through the dilation.
pub fn one_vertex_identity_seed_phase() -> AtomicGraph {
    let mut g = AtomicGraph::new(Theta2Graph::identity(2, 2));
    let x = g.add_vertex("xi0").unwrap();
    g.mark_core(x);
    g.set_edge(Color::Blue, 1, x, x, one()).unwrap();
    g.set_edge(Color::Red, 1, x, x, Complex64::new(0.0, 1.0)).unwrap();
    g
}

/// Two vertices over the identity θ: `A_1` swaps x and y, `B_1` fixes both.
pub fn two_vertex_swap() -> AtomicGraph {
    let mut g = AtomicGraph::new(Theta2Graph::identity(2, 2));
    let x = g.add_vertex("x").unwrap();
    let y = g.add_vertex("y").unwrap();
    g.mark_core(x);
    g.mark_core(y);
    g.set_edge(Color::Blue, 1, x, y, one()).unwrap();
    g.set_edge(Color::Blue, 1, y, x, one()).unwrap();
    g.set_edge(Color::Red, 1, x, x, one()).unwrap();
    g.set_edge(Color::Red, 1, y, y, one()).unwrap();
    g
}

/// The one-colour seed `A_1 ξ0 = ξ0` over `F_2^+` (the row `[A_1, A_2]` with
/// `A_2 ξ0 = 0`).
pub fn one_colour_fixed_point_seed() -> OneColourGraph {
    let mut s = OneColourGraph::new(2);
    let x = s.add_vertex("xi0").unwrap();
    s.set_edge(1, x, x, one()).unwrap();
    s
}

/// The self-paired construction `T = S` over the flip θ: the twisted pair of
/// the fixed-point seed with α = id. Periodic with period (1,1) and γ = id;
/// its dilation has no wandering vectors.
pub fn self_pair_flip_seed() -> AtomicGraph {
    twisted_pair(&one_colour_fixed_point_seed(), &[1, 2]).unwrap()
}

/// A blue 3-cycle over the identity θ with `B_1` fixing every vertex.
pub fn blue_three_cycle() -> AtomicGraph {
    let mut g = AtomicGraph::new(Theta2Graph::identity(2, 2));
    let names = ["p", "q", "r"];
    let ids: Vec<usize> = names.iter().map(|n| g.add_vertex(n).unwrap()).collect();
    for &v in &ids {
        g.mark_core(v);
        g.set_edge(Color::Red, 1, v, v, one()).unwrap();
    }
    for k in 0..3 {
        g.set_edge(Color::Blue, 1, ids[k], ids[(k + 1) % 3], one()).unwrap();
    }
    g
}

/// Every bundled atomic seed, with a stable name for report output.
pub fn bundled_seeds() -> Vec<(&'static str, AtomicGraph)> {
    vec![
        ("one-vertex-identity", one_vertex_identity_seed()),
        ("one-vertex-identity-phase", one_vertex_identity_seed_phase()),
        ("two-vertex-swap", two_vertex_swap()),
        ("self-pair-flip", self_pair_flip_seed()),
        ("blue-three-cycle", blue_three_cycle()),
    ]
}
