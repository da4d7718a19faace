//! Shared inputs for the benchmark suite.

use kg2_core::{Letter, Theta2Graph};

/// A fixed mixed word of the given length, alternating with a drift so the
/// rewriting engine sees a realistic inversion pattern.
pub fn sample_word(m: u32, n: u32, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|k| {
            if (k * 7 + 3) % 5 < 2 {
                Letter::Blue((k as u32 * 3 + 1) % m + 1)
            } else {
                Letter::Red((k as u32 * 5 + 2) % n + 1)
            }
        })
        .collect()
}

/// A non-trivial θ exercised by every benchmark.
pub fn bench_theta() -> Theta2Graph {
    let pairs = [
        ((1, 1), (2, 3)),
        ((1, 2), (1, 1)),
        ((1, 3), (3, 2)),
        ((2, 1), (2, 1)),
        ((2, 2), (3, 3)),
        ((2, 3), (1, 2)),
        ((3, 1), (1, 3)),
        ((3, 2), (2, 2)),
        ((3, 3), (3, 1)),
    ];
    Theta2Graph::new(3, 3, &pairs).expect("hand-written bijection")
}
