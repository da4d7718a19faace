//! Words of `F_θ^+` and the confluent rewriting onto the unique normal form
//! `w = e_u f_v` (blue block, then red block).
//!
//! Rewriting replaces an adjacent pair `f_j e_i` by `e_a f_b` where
//! `θ(a,b) = (i,j)`. Each step removes exactly one red-before-blue inversion,
//! so a word with `p` blue and `q` red letters normalizes in at most `p·q`
//! steps regardless of the order in which redexes are picked.

use crate::theta::Theta2Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A raw generator token before factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Blue(u32),
    Red(u32),
}

impl Letter {
    pub fn in_range(&self, g: &Theta2Graph) -> bool {
        match *self {
            Letter::Blue(i) => i >= 1 && i <= g.m(),
            Letter::Red(j) => j >= 1 && j <= g.n(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0} out of range for m={1}, n={2}")]
    IndexOutOfRange(String, u32, u32),
}

/// The unique factorized form `e_u f_v` of a word of `F_θ^+`.
/// The empty pair represents the identity element ∅.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct NormalWord {
    u: Vec<u32>,
    v: Vec<u32>,
}

impl NormalWord {
    pub fn empty() -> Self {
        NormalWord::default()
    }

    /// Builds a normal word directly from its blue and red blocks.
    pub fn from_parts(u: Vec<u32>, v: Vec<u32>, g: &Theta2Graph) -> Result<Self, WordError> {
        for &i in &u {
            if i < 1 || i > g.m() {
                return Err(WordError::IndexOutOfRange(format!("e{i}"), g.m(), g.n()));
            }
        }
        for &j in &v {
            if j < 1 || j > g.n() {
                return Err(WordError::IndexOutOfRange(format!("f{j}"), g.m(), g.n()));
            }
        }
        Ok(NormalWord { u, v })
    }

    pub fn blue(&self) -> &[u32] {
        &self.u
    }

    pub fn red(&self) -> &[u32] {
        &self.v
    }

    /// `d(w) = (|u|, |v|)`.
    pub fn degree(&self) -> (usize, usize) {
        (self.u.len(), self.v.len())
    }

    /// `|w| = |u| + |v|`.
    pub fn len(&self) -> usize {
        self.u.len() + self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty() && self.v.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.u
            .iter()
            .map(|&i| Letter::Blue(i))
            .chain(self.v.iter().map(|&j| Letter::Red(j)))
            .collect()
    }

    /// Left multiplication by a blue generator: `e_i · e_u f_v = e_{iu} f_v`.
    pub fn left_mul_blue(&self, i: u32) -> NormalWord {
        let mut u = Vec::with_capacity(self.u.len() + 1);
        u.push(i);
        u.extend_from_slice(&self.u);
        NormalWord { u, v: self.v.clone() }
    }

    /// Left multiplication by a red generator: pushes `f_j` through the blue
    /// block using the relations, then prepends the surviving red letter.
    pub fn left_mul_red(&self, j: u32, g: &Theta2Graph) -> NormalWord {
        let mut cur = j;
        let mut u = Vec::with_capacity(self.u.len());
        for &i in &self.u {
            // f_cur e_i = e_a f_b with θ(a,b) = (i,cur)
            let (a, b) = g.apply_inv(i, cur);
            u.push(a);
            cur = b;
        }
        let mut v = Vec::with_capacity(self.v.len() + 1);
        v.push(cur);
        v.extend_from_slice(&self.v);
        NormalWord { u, v }
    }
}

impl std::fmt::Display for NormalWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |xs: &[u32]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "e({}) f({})", join(&self.u), join(&self.v))
    }
}

fn check_letters(word: &[Letter], g: &Theta2Graph) -> Result<(), WordError> {
    for l in word {
        if !l.in_range(g) {
            let s = match *l {
                Letter::Blue(i) => format!("e{i}"),
                Letter::Red(j) => format!("f{j}"),
            };
            return Err(WordError::IndexOutOfRange(s, g.m(), g.n()));
        }
    }
    Ok(())
}

fn inversion_count(word: &[Letter]) -> usize {
    let mut reds = 0usize;
    let mut count = 0usize;
    for l in word {
        match l {
            Letter::Red(_) => reds += 1,
            Letter::Blue(_) => count += reds,
        }
    }
    count
}

/// Rewrites a word to its unique normal form `e_u f_v`, pushing blue letters
/// to the left. The result is independent of the redex order.
pub fn normal_form(word: &[Letter], g: &Theta2Graph) -> Result<NormalWord, WordError> {
    check_letters(word, g)?;
    let bound = inversion_count(word);
    let mut w: Vec<Letter> = word.to_vec();
    let mut steps = 0usize;
    let mut pos = 0usize;
    while pos + 1 < w.len() {
        if let (Letter::Red(j), Letter::Blue(i)) = (w[pos], w[pos + 1]) {
            let (a, b) = g.apply_inv(i, j);
            w[pos] = Letter::Blue(a);
            w[pos + 1] = Letter::Red(b);
            steps += 1;
            pos = pos.saturating_sub(1);
        } else {
            pos += 1;
        }
    }
    assert!(steps <= bound, "rewriting exceeded the inversion bound");
    let mut u = Vec::new();
    let mut v = Vec::new();
    for l in w {
        match l {
            Letter::Blue(i) => u.push(i),
            Letter::Red(j) => v.push(j),
        }
    }
    Ok(NormalWord { u, v })
}

/// Rewrites a word to its unique anti-normal form `f_{v'} e_{u'}`, pushing red
/// letters to the left: `e_i f_j` is replaced by `f_{j'} e_{i'}` with
/// `θ(i,j) = (i',j')`. Returns `(v', u')`.
pub fn anti_normal_form(
    word: &[Letter],
    g: &Theta2Graph,
) -> Result<(Vec<u32>, Vec<u32>), WordError> {
    check_letters(word, g)?;
    let mut w: Vec<Letter> = word.to_vec();
    let mut pos = 0usize;
    while pos + 1 < w.len() {
        if let (Letter::Blue(i), Letter::Red(j)) = (w[pos], w[pos + 1]) {
            let (ip, jp) = g.apply(i, j);
            w[pos] = Letter::Red(jp);
            w[pos + 1] = Letter::Blue(ip);
            pos = pos.saturating_sub(1);
        } else {
            pos += 1;
        }
    }
    let mut v = Vec::new();
    let mut u = Vec::new();
    for l in w {
        match l {
            Letter::Red(j) => v.push(j),
            Letter::Blue(i) => u.push(i),
        }
    }
    Ok((v, u))
}

/// Semigroup multiplication realized through normalization.
pub fn concat(w1: &NormalWord, w2: &NormalWord, g: &Theta2Graph) -> NormalWord {
    let mut letters = w1.letters();
    letters.extend(w2.letters());
    normal_form(&letters, g).expect("normal words are in range")
}

/// All free words of the given length over `1..=arity`, in lexicographic order.
pub fn enumerate_free_words(arity: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * arity as usize);
        for w in &out {
            for x in 1..=arity {
                let mut w2 = w.clone();
                w2.push(x);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

/// All normal words of degree `(k,l)`; there are exactly `m^k · n^l` of them.
pub fn enumerate_words(g: &Theta2Graph, k: usize, l: usize) -> Vec<NormalWord> {
    let mut out = Vec::new();
    for u in enumerate_free_words(g.m(), k) {
        for v in enumerate_free_words(g.n(), l) {
            out.push(NormalWord { u: u.clone(), v });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blue(i: u32) -> Letter {
        Letter::Blue(i)
    }
    fn red(j: u32) -> Letter {
        Letter::Red(j)
    }

    #[test]
    fn empty_word_normalizes_to_identity() {
        let g = Theta2Graph::identity(2, 2);
        assert_eq!(normal_form(&[], &g).unwrap(), NormalWord::empty());
        assert_eq!(anti_normal_form(&[], &g).unwrap(), (vec![], vec![]));
    }

    #[test]
    fn identity_theta_commutes_verbatim() {
        let g = Theta2Graph::identity(2, 2);
        let w = normal_form(&[red(1), blue(2)], &g).unwrap();
        assert_eq!((w.blue(), w.red()), (&[2u32][..], &[1u32][..]));
        let (v, u) = anti_normal_form(&[blue(2), red(1)], &g).unwrap();
        assert_eq!((v, u), (vec![1], vec![2]));
    }

    #[test]
    fn flip_theta_single_step() {
        // Under flip, θ(1,2) = (2,1), so f_1 e_2 = e_1 f_2 and e_1 f_2 = f_1 e_2.
        let g = Theta2Graph::flip(2);
        let w = normal_form(&[red(1), blue(2)], &g).unwrap();
        assert_eq!((w.blue(), w.red()), (&[1u32][..], &[2u32][..]));
        let (v, u) = anti_normal_form(&[blue(1), red(2)], &g).unwrap();
        assert_eq!((v, u), (vec![1], vec![2]));
    }

    #[test]
    fn concat_respects_identity_law() {
        let g = Theta2Graph::flip(2);
        let w = normal_form(&[blue(2), red(1), blue(1)], &g).unwrap();
        assert_eq!(concat(&w, &NormalWord::empty(), &g), w);
        assert_eq!(concat(&NormalWord::empty(), &w, &g), w);
    }

    #[test]
    fn concat_matches_examples() {
        let id = Theta2Graph::identity(2, 2);
        let e1 = NormalWord::from_parts(vec![1], vec![], &id).unwrap();
        let f2 = NormalWord::from_parts(vec![], vec![2], &id).unwrap();
        let w = concat(&e1, &f2, &id);
        assert_eq!((w.blue(), w.red()), (&[1u32][..], &[2u32][..]));

        let flip = Theta2Graph::flip(2);
        let f1 = NormalWord::from_parts(vec![], vec![1], &flip).unwrap();
        let e2 = NormalWord::from_parts(vec![2], vec![], &flip).unwrap();
        let w = concat(&f1, &e2, &flip);
        assert_eq!((w.blue(), w.red()), (&[1u32][..], &[2u32][..]));
    }

    #[test]
    fn degree_and_length() {
        let g = Theta2Graph::identity(2, 2);
        let w = NormalWord::from_parts(vec![1, 2], vec![1], &g).unwrap();
        assert_eq!(w.degree(), (2, 1));
        assert_eq!(w.len(), 3);
        assert_eq!(NormalWord::empty().degree(), (0, 0));
        assert_eq!(NormalWord::empty().len(), 0);
    }

    #[test]
    fn enumeration_counts() {
        let g = Theta2Graph::identity(2, 2);
        assert_eq!(enumerate_words(&g, 0, 0), vec![NormalWord::empty()]);
        assert_eq!(enumerate_words(&g, 1, 1).len(), 4);
        let g23 = Theta2Graph::identity(2, 3);
        assert_eq!(enumerate_words(&g23, 2, 1).len(), 12);
    }

    #[test]
    fn out_of_range_letter_is_rejected() {
        let g = Theta2Graph::identity(2, 2);
        assert!(normal_form(&[blue(3)], &g).is_err());
        assert!(NormalWord::from_parts(vec![], vec![5], &g).is_err());
    }

    #[test]
    fn left_mul_agrees_with_generic_rewriting() {
        let g = Theta2Graph::from_permutation(&[2, 1]).unwrap();
        let w = NormalWord::from_parts(vec![1, 2], vec![2, 1], &g).unwrap();
        for j in 1..=2 {
            let fast = w.left_mul_red(j, &g);
            let mut letters = vec![red(j)];
            letters.extend(w.letters());
            let slow = normal_form(&letters, &g).unwrap();
            assert_eq!(fast, slow);
        }
        for i in 1..=2 {
            let fast = w.left_mul_blue(i);
            let mut letters = vec![blue(i)];
            letters.extend(w.letters());
            let slow = normal_form(&letters, &g).unwrap();
            assert_eq!(fast, slow);
        }
    }
}
