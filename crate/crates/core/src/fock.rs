//! Sparse matrix models on finite truncations: the left-regular
//! representation on words of bounded length, matrix forms of dilated atomic
//! graphs, and the numerical verification kernels (Cuntz relations,
//! commutation relations, the star-commutation identity over the identity θ,
//! and the structure-projection properties on compressions to the core).
//!
//! Truncation artifacts are handled by explicit interior projections: a check
//! never asserts an identity at columns whose forward images may have been
//! dropped.

use crate::dilation::DilationResult;
use crate::matrix::SparseMatrix;
use crate::theta::Theta2Graph;
use crate::word::{enumerate_free_words, enumerate_words, NormalWord};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FockError {
    #[error("truncation needs {dim} basis words, above the cap {cap}")]
    CapExceeded { dim: u64, cap: u64 },
    #[error("the star-commutation identity is specific to the identity permutation")]
    ThetaNotIdentity,
}

/// One verification line, emitted as JSON by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub residual: f64,
    pub bound: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckReport {
    pub fn new(check: &str, residual: f64, bound: usize, tolerance: f64) -> Self {
        CheckReport {
            check: check.to_string(),
            residual,
            bound,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

/// Anything presenting two tuples of generator matrices plus an interior
/// mask; both the Fock truncation and dilated graph models qualify.
pub trait RepModel {
    fn theta(&self) -> &Theta2Graph;
    fn blue(&self) -> &[SparseMatrix];
    fn red(&self) -> &[SparseMatrix];
    fn dim(&self) -> usize;
    /// Columns at least `margin` composition steps away from the truncation
    /// boundary.
    fn interior_mask(&self, margin: u32) -> Vec<bool>;
}

// ---------------------------------------------------------------------------
// Left-regular truncation
// ---------------------------------------------------------------------------

/// The left-regular representation of `F_θ^+` on words of length ≤ `trunc`:
/// `E_i ξ_w = ξ_{e_i w}` and `F_j ξ_w = ξ_{f_j w}`, images beyond the cut
/// dropped.
pub struct TruncatedFock {
    theta: Theta2Graph,
    trunc: u32,
    basis: Vec<NormalWord>,
    index: BTreeMap<NormalWord, usize>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
}

/// `Σ_{k+l ≤ L} m^k n^l`.
pub fn fock_dimension(m: u32, n: u32, trunc: u32) -> u64 {
    let mut total = 0u64;
    for s in 0..=trunc {
        for k in 0..=s {
            let l = s - k;
            total = total.saturating_add(
                (m as u64).saturating_pow(k) * (n as u64).saturating_pow(l),
            );
        }
    }
    total
}

pub fn build_left_regular(
    theta: &Theta2Graph,
    trunc: u32,
    cap: u64,
) -> Result<TruncatedFock, FockError> {
    let dim = fock_dimension(theta.m(), theta.n(), trunc);
    if dim > cap {
        return Err(FockError::CapExceeded { dim, cap });
    }
    let mut basis = Vec::with_capacity(dim as usize);
    let mut index = BTreeMap::new();
    for s in 0..=trunc as usize {
        for k in (0..=s).rev() {
            for w in enumerate_words(theta, k, s - k) {
                index.insert(w.clone(), basis.len());
                basis.push(w);
            }
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let dim = basis.len();
    let mut e = vec![SparseMatrix::zeros(dim, dim); theta.m() as usize];
    let mut f = vec![SparseMatrix::zeros(dim, dim); theta.n() as usize];
    for (col, w) in basis.iter().enumerate() {
        if (w.len() as u32) < trunc {
            for i in 1..=theta.m() {
                let img = w.left_mul_blue(i);
                e[(i - 1) as usize].add_entry(index[&img], col, one);
            }
            for j in 1..=theta.n() {
                let img = w.left_mul_red(j, theta);
                f[(j - 1) as usize].add_entry(index[&img], col, one);
            }
        }
    }
    Ok(TruncatedFock { theta: theta.clone(), trunc, basis, index, e, f })
}

impl TruncatedFock {
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn basis(&self) -> &[NormalWord] {
        &self.basis
    }

    pub fn word_index(&self, w: &NormalWord) -> Option<usize> {
        self.index.get(w).copied()
    }
}

impl RepModel for TruncatedFock {
    fn theta(&self) -> &Theta2Graph {
        &self.theta
    }

    fn blue(&self) -> &[SparseMatrix] {
        &self.e
    }

    fn red(&self) -> &[SparseMatrix] {
        &self.f
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn interior_mask(&self, margin: u32) -> Vec<bool> {
        let keep = self.trunc.saturating_sub(margin);
        self.basis.iter().map(|w| w.len() as u32 <= keep).collect()
    }
}

// ---------------------------------------------------------------------------
// Matrix form of a dilated atomic graph
// ---------------------------------------------------------------------------

/// Vertex-indexed sparse matrices for each `S_i`, `T_j` of a dilation, with
/// the core and interior masks carried along.
pub struct MatrixRep {
    theta: Theta2Graph,
    s: Vec<SparseMatrix>,
    t: Vec<SparseMatrix>,
    names: Vec<String>,
    core_mask: Vec<bool>,
    distance: Vec<u32>,
    completed: Vec<bool>,
    depth: u32,
}

pub fn matrix_rep(d: &DilationResult) -> MatrixRep {
    let g = d.graph();
    let theta = g.theta().clone();
    let dim = g.vertex_count();
    let mut s = vec![SparseMatrix::zeros(dim, dim); theta.m() as usize];
    let mut t = vec![SparseMatrix::zeros(dim, dim); theta.n() as usize];
    for col in 0..dim {
        for i in 1..=theta.m() {
            if let Some((to, scalar)) = g.blue_edge(i, col) {
                s[(i - 1) as usize].add_entry(to, col, scalar);
            }
        }
        for j in 1..=theta.n() {
            if let Some((to, scalar)) = g.red_edge(j, col) {
                t[(j - 1) as usize].add_entry(to, col, scalar);
            }
        }
    }
    let core_mask = (0..dim).map(|v| g.is_core(v)).collect();
    MatrixRep {
        theta,
        s,
        t,
        names: (0..dim).map(|v| g.name(v).to_string()).collect(),
        core_mask,
        distance: (0..dim).map(|v| d.distance(v)).collect(),
        completed: (0..dim).map(|v| !d.is_frontier(v)).collect(),
        depth: d.depth(),
    }
}

impl MatrixRep {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn core_mask(&self) -> &[bool] {
        &self.core_mask
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }
}

impl RepModel for MatrixRep {
    fn theta(&self) -> &Theta2Graph {
        &self.theta
    }

    fn blue(&self) -> &[SparseMatrix] {
        &self.s
    }

    fn red(&self) -> &[SparseMatrix] {
        &self.t
    }

    fn dim(&self) -> usize {
        self.names.len()
    }

    fn interior_mask(&self, margin: u32) -> Vec<bool> {
        (0..self.names.len())
            .map(|v| self.completed[v] && self.distance[v] + margin <= self.depth)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Relation checks
// ---------------------------------------------------------------------------

/// `max_{i,j} ‖(X_i^* X_j − δ_{ij} I)·Q‖` for one tuple.
fn cuntz_residual_tuple(tuple: &[SparseMatrix], mask: &[bool]) -> f64 {
    let dim = mask.len();
    let id = SparseMatrix::identity(dim);
    let mut worst = 0.0f64;
    for (i, a) in tuple.iter().enumerate() {
        for (j, b) in tuple.iter().enumerate() {
            let mut prod = a.adjoint().mul(b);
            if i == j {
                prod = prod.sub(&id);
            }
            worst = worst.max(prod.mask_columns(mask).operator_norm());
        }
    }
    worst
}

/// Cuntz relations on the interior (margin 1): both tuples are isometries
/// with pairwise orthogonal ranges there. Expected residual: exactly 0.
pub fn verify_cuntz_interior<M: RepModel>(model: &M) -> f64 {
    cuntz_residual_masked(model, &model.interior_mask(1))
}

pub fn cuntz_residual_masked<M: RepModel>(model: &M, mask: &[bool]) -> f64 {
    cuntz_residual_tuple(model.blue(), mask).max(cuntz_residual_tuple(model.red(), mask))
}

/// Commutation relations `S_i T_j = T_{j'} S_{i'}` on the interior
/// (margin 2, since both sides compose two generators).
pub fn verify_commutation_numeric<M: RepModel>(model: &M) -> f64 {
    commutation_residual_masked(model, &model.interior_mask(2))
}

pub fn commutation_residual_masked<M: RepModel>(model: &M, mask: &[bool]) -> f64 {
    let theta = model.theta();
    let mut worst = 0.0f64;
    for i in 1..=theta.m() {
        for j in 1..=theta.n() {
            let (ip, jp) = theta.apply(i, j);
            let left = model.blue()[(i - 1) as usize].mul(&model.red()[(j - 1) as usize]);
            let right = model.red()[(jp - 1) as usize].mul(&model.blue()[(ip - 1) as usize]);
            worst = worst.max(left.sub(&right).mask_columns(mask).operator_norm());
        }
    }
    worst
}

/// The identity `S_i^* T_j = T_j S_i^*`, which every Cuntz-type
/// representation over the identity permutation satisfies. Reported on the
/// margin-2 interior; only meaningful as an assertion when the model is
/// Cuntz-type on its interior.
pub fn star_commute_check<M: RepModel>(model: &M) -> Result<f64, FockError> {
    if *model.theta() != Theta2Graph::identity(model.theta().m(), model.theta().n()) {
        return Err(FockError::ThetaNotIdentity);
    }
    let mask = model.interior_mask(2);
    let mut worst = 0.0f64;
    for s in model.blue() {
        for t in model.red() {
            let left = s.adjoint().mul(t);
            let right = t.mul(&s.adjoint());
            worst = worst.max(left.sub(&right).mask_columns(&mask).operator_norm());
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// The left/right regular pair on the free-semigroup Fock space
// ---------------------------------------------------------------------------

/// Left and right regular tuples on words over `n` letters of length ≤ `trunc`:
/// `L_i ξ_w = ξ_{iw}`, `R_i ξ_w = ξ_{wi}`.
pub struct FreeFockPair {
    pub basis: Vec<Vec<u32>>,
    pub l: Vec<SparseMatrix>,
    pub r: Vec<SparseMatrix>,
    trunc: u32,
}

pub fn build_free_fock_pair(n: u32, trunc: u32) -> FreeFockPair {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for len in 0..=trunc as usize {
        for w in enumerate_free_words(n, len) {
            index.insert(w.clone(), basis.len());
            basis.push(w);
        }
    }
    let dim = basis.len();
    let one = Complex64::new(1.0, 0.0);
    let mut l = vec![SparseMatrix::zeros(dim, dim); n as usize];
    let mut r = vec![SparseMatrix::zeros(dim, dim); n as usize];
    for (col, w) in basis.iter().enumerate() {
        if (w.len() as u32) < trunc {
            for x in 1..=n {
                let mut pre = vec![x];
                pre.extend_from_slice(w);
                l[(x - 1) as usize].add_entry(index[&pre], col, one);
                let mut post = w.clone();
                post.push(x);
                r[(x - 1) as usize].add_entry(index[&post], col, one);
            }
        }
    }
    FreeFockPair { basis, l, r, trunc }
}

#[derive(Debug, Clone, Serialize)]
pub struct Example33Report {
    pub n: u32,
    pub trunc: u32,
    /// `R_2^* L_2 L_1^* R_1 ξ_∅` compared to `ξ_∅`; exactly 0 when equal.
    pub vector_deviation: f64,
    /// `max_{i,j} ‖(L_i R_j − R_j L_i)·Q‖` on the margin-2 interior.
    pub commutator_residual: f64,
    pub pass: bool,
}

/// Reproduces the four-step computation `R_2^* L_2 L_1^* R_1 ξ_∅ = ξ_∅` and
/// the commutation of the left and right regular tuples, on the length-`trunc`
/// truncation.
pub fn example_3_3_check(n: u32, trunc: u32) -> Example33Report {
    assert!(n >= 2 && trunc >= 2, "the computation needs n >= 2 and L >= 2");
    let pair = build_free_fock_pair(n, trunc);
    let dim = pair.basis.len();
    let mut xi_empty = vec![Complex64::new(0.0, 0.0); dim];
    xi_empty[0] = Complex64::new(1.0, 0.0);

    let v1 = pair.r[0].apply(&xi_empty);
    let v2 = pair.l[0].adjoint().apply(&v1);
    let v3 = pair.l[1].apply(&v2);
    let v4 = pair.r[1].adjoint().apply(&v3);
    let vector_deviation = v4
        .iter()
        .zip(xi_empty.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);

    let interior: Vec<bool> = pair
        .basis
        .iter()
        .map(|w| w.len() as u32 + 2 <= pair.trunc)
        .collect();
    let mut commutator_residual = 0.0f64;
    for li in &pair.l {
        for rj in &pair.r {
            let diff = li.mul(rj).sub(&rj.mul(li));
            commutator_residual = commutator_residual.max(diff.mask_columns(&interior).operator_norm());
        }
    }
    Example33Report {
        n,
        trunc,
        vector_deviation,
        commutator_residual,
        pass: vector_deviation == 0.0 && commutator_residual == 0.0,
    }
}

// ---------------------------------------------------------------------------
// Structure properties on compressions to the core
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct StructureCheck {
    /// Max distance of the adjoint of a spanning element to the span.
    pub residual_selfadjoint: f64,
    /// Max norm of `P (ST)_w P^⊥ · Q` over the words explored.
    pub residual_invariance: f64,
    pub word_bound: usize,
    pub word_bound_used: usize,
    pub span_dims: Vec<usize>,
    pub stabilized: bool,
    pub tolerance: f64,
    pub pass: bool,
}

/// Dense complex Gram–Schmidt over flattened compression matrices.
struct Span {
    basis: Vec<Vec<Complex64>>,
}

impl Span {
    fn new() -> Self {
        Span { basis: Vec::new() }
    }

    fn project_residual(&self, vec: &[Complex64]) -> (Vec<Complex64>, f64) {
        let mut rem: Vec<Complex64> = vec.to_vec();
        for q in &self.basis {
            let coeff: Complex64 = q
                .iter()
                .zip(rem.iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            for (r, a) in rem.iter_mut().zip(q.iter()) {
                *r -= coeff * a;
            }
        }
        let norm = rem.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        (rem, norm)
    }

    /// Adds the vector to the span when it is not already (numerically)
    /// inside; returns true when the dimension grew.
    fn absorb(&mut self, vec: &[Complex64]) -> bool {
        let (mut rem, norm) = self.project_residual(vec);
        if norm <= 1e-9 {
            return false;
        }
        for z in rem.iter_mut() {
            *z /= norm;
        }
        self.basis.push(rem);
        true
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn distance(&self, vec: &[Complex64]) -> f64 {
        self.project_residual(vec).1
    }
}

/// Compression of `(ST)_w` to the masked subspace, as a dense row-major
/// matrix over the kept indices.
fn compressed_word(
    model: &MatrixRep,
    word: &NormalWord,
    kept: &[usize],
    position: &[Option<usize>],
) -> Vec<Complex64> {
    let k = kept.len();
    let mut out = vec![Complex64::new(0.0, 0.0); k * k];
    for (col_out, &col) in kept.iter().enumerate() {
        // follow the path column-wise: reds first, then blues
        let mut cur = col;
        let mut scalar = Complex64::new(1.0, 0.0);
        let mut alive = true;
        for &j in word.red().iter().rev() {
            match model.t[(j - 1) as usize].column(cur).first() {
                Some(&(row, s)) => {
                    cur = row;
                    scalar *= s;
                }
                None => {
                    alive = false;
                    break;
                }
            }
        }
        if alive {
            for &i in word.blue().iter().rev() {
                match model.s[(i - 1) as usize].column(cur).first() {
                    Some(&(row, s)) => {
                        cur = row;
                        scalar *= s;
                    }
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
        }
        if alive {
            if let Some(row_out) = position[cur] {
                out[row_out * k + col_out] = scalar;
            }
        }
    }
    out
}

fn adjoint_dense(mat: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); k * k];
    for r in 0..k {
        for c in 0..k {
            out[c * k + r] = mat[r * k + c].conj();
        }
    }
    out
}

/// Structure properties of the compression to the designated
/// core: the compressed algebra is closed under adjoints, and nothing flows
/// from the complement back into the core.
pub fn structure_check_with_core(
    model: &MatrixRep,
    core_mask: &[bool],
    word_bound: usize,
    tol: f64,
) -> StructureCheck {
    assert_eq!(core_mask.len(), model.dim());
    let kept: Vec<usize> = (0..model.dim()).filter(|&v| core_mask[v]).collect();
    let mut position = vec![None; model.dim()];
    for (p, &v) in kept.iter().enumerate() {
        position[v] = Some(p);
    }
    let k = kept.len();

    let words_of_total = |total: usize| {
        let mut out = Vec::new();
        for kk in (0..=total).rev() {
            out.extend(enumerate_words(model.theta(), kk, total - kk));
        }
        out
    };

    // grow the span degree by degree, doubling the bound once if the
    // dimension is still growing at the requested bound
    let mut span = Span::new();
    let mut dims = Vec::new();
    let mut elements: Vec<Vec<Complex64>> = Vec::new();
    let grow = |upto: usize, from: usize, span: &mut Span, dims: &mut Vec<usize>, elements: &mut Vec<Vec<Complex64>>| {
        for total in from..=upto {
            for w in words_of_total(total) {
                let c = compressed_word(model, &w, &kept, &position);
                if span.absorb(&c) {
                    elements.push(c);
                }
            }
            dims.push(span.dim());
        }
    };
    grow(word_bound, 0, &mut span, &mut dims, &mut elements);
    let mut used = word_bound;
    let stabilized_at = |dims: &[usize]| dims.len() >= 2 && dims[dims.len() - 1] == dims[dims.len() - 2];
    if !stabilized_at(&dims) {
        grow(2 * word_bound, word_bound + 1, &mut span, &mut dims, &mut elements);
        used = 2 * word_bound;
    }
    let stabilized = stabilized_at(&dims);

    let mut residual_selfadjoint = 0.0f64;
    for el in &elements {
        residual_selfadjoint = residual_selfadjoint.max(span.distance(&adjoint_dense(el, k)));
    }

    // invariance: P (ST)_w P^⊥ restricted to interior columns; every (ST)_w
    // maps basis vertices to basis vertices, so the operator norm is the
    // largest surviving entry
    let interior = model.interior_mask(1);
    let mut residual_invariance = 0.0f64;
    for total in 0..=used {
        for w in words_of_total(total) {
            for col in 0..model.dim() {
                if core_mask[col] || !interior[col] {
                    continue;
                }
                let mut cur = col;
                let mut scalar = Complex64::new(1.0, 0.0);
                let mut alive = true;
                for &j in w.red().iter().rev() {
                    match model.t[(j - 1) as usize].column(cur).first() {
                        Some(&(row, s)) => {
                            cur = row;
                            scalar *= s;
                        }
                        None => {
                            alive = false;
                            break;
                        }
                    }
                }
                if alive {
                    for &i in w.blue().iter().rev() {
                        match model.s[(i - 1) as usize].column(cur).first() {
                            Some(&(row, s)) => {
                                cur = row;
                                scalar *= s;
                            }
                            None => {
                                alive = false;
                                break;
                            }
                        }
                    }
                }
                if alive && core_mask[cur] {
                    residual_invariance = residual_invariance.max(scalar.norm());
                }
            }
        }
    }

    StructureCheck {
        residual_selfadjoint,
        residual_invariance,
        word_bound,
        word_bound_used: used,
        span_dims: dims,
        stabilized,
        tolerance: tol,
        pass: residual_selfadjoint <= tol && residual_invariance <= tol && stabilized,
    }
}

/// [`structure_check_with_core`] with the dilation's own core as `P`.
pub fn structure_check(model: &MatrixRep, word_bound: usize, tol: f64) -> StructureCheck {
    let mask = model.core_mask().to_vec();
    structure_check_with_core(model, &mask, word_bound, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::dilate;
    use crate::gallery;

    #[test]
    fn fock_dimensions() {
        assert_eq!(fock_dimension(2, 2, 1), 5);
        assert_eq!(fock_dimension(2, 2, 2), 17);
        // Σ (s+1) 3^s over s ≤ 4
        assert_eq!(fock_dimension(3, 3, 4), 547);
    }

    #[test]
    fn left_regular_dimension_and_first_column() {
        let theta = Theta2Graph::identity(2, 2);
        let fock = build_left_regular(&theta, 1, 4096).unwrap();
        assert_eq!(fock.dim(), 5);
        let e1 = NormalWord::from_parts(vec![1], vec![], &theta).unwrap();
        let idx = fock.word_index(&e1).unwrap();
        assert_eq!(fock.blue()[0].column(0), &[(idx, Complex64::new(1.0, 0.0))]);
    }

    #[test]
    fn cap_is_enforced() {
        let theta = Theta2Graph::identity(3, 3);
        assert!(matches!(
            build_left_regular(&theta, 4, 100),
            Err(FockError::CapExceeded { dim: 547, cap: 100 })
        ));
    }

    #[test]
    fn left_regular_relations_are_exact() {
        for theta in [Theta2Graph::identity(2, 2), Theta2Graph::flip(2)] {
            let fock = build_left_regular(&theta, 3, 4096).unwrap();
            assert_eq!(verify_cuntz_interior(&fock), 0.0);
            assert_eq!(verify_commutation_numeric(&fock), 0.0);
        }
    }

    #[test]
    fn frontier_columns_break_the_relations() {
        // guard: with the interior mask removed the defect at the cut shows
        let theta = Theta2Graph::identity(2, 2);
        let fock = build_left_regular(&theta, 2, 4096).unwrap();
        let full = vec![true; fock.dim()];
        assert!(cuntz_residual_masked(&fock, &full) > 0.5);
    }

    #[test]
    fn dilated_model_relations_are_exact() {
        let d = dilate(&gallery::one_vertex_identity_seed(), 3).unwrap();
        let m = matrix_rep(&d);
        assert_eq!(verify_cuntz_interior(&m), 0.0);
        assert_eq!(verify_commutation_numeric(&m), 0.0);
        let full = vec![true; m.dim()];
        assert!(cuntz_residual_masked(&m, &full) > 0.5);
    }

    #[test]
    fn corrupted_model_shows_residual() {
        let d = dilate(&gallery::one_vertex_identity_seed(), 3).unwrap();
        let mut m = matrix_rep(&d);
        m.s[0].add_entry(2, 0, Complex64::new(0.25, 0.0));
        assert!(verify_cuntz_interior(&m) > 0.1);
        assert!(verify_commutation_numeric(&m) > 0.1);
        assert!(star_commute_check(&m).unwrap() > 0.1);
    }

    #[test]
    fn example_3_3_reproduces() {
        let r = example_3_3_check(2, 3);
        assert_eq!(r.vector_deviation, 0.0);
        assert_eq!(r.commutator_residual, 0.0);
        assert!(r.pass);
        let r3 = example_3_3_check(3, 2);
        assert!(r3.pass);
    }

    #[test]
    fn star_commutation_on_cuntz_model() {
        let d = dilate(&gallery::one_vertex_identity_seed(), 3).unwrap();
        let m = matrix_rep(&d);
        assert!(star_commute_check(&m).unwrap() <= 1e-12);
        let flip = dilate(&gallery::self_pair_flip_seed(), 3).unwrap();
        assert!(matches!(
            star_commute_check(&matrix_rep(&flip)),
            Err(FockError::ThetaNotIdentity)
        ));
    }

    #[test]
    fn structure_check_one_dimensional_core() {
        let d = dilate(&gallery::one_vertex_identity_seed(), 3).unwrap();
        let m = matrix_rep(&d);
        let sc = structure_check(&m, 4, 1e-10);
        assert!(sc.pass, "{sc:?}");
        assert_eq!(*sc.span_dims.last().unwrap(), 1);
        assert_eq!(sc.residual_selfadjoint, 0.0);
        assert_eq!(sc.residual_invariance, 0.0);
    }

    #[test]
    fn structure_check_swap_core() {
        let d = dilate(&gallery::two_vertex_swap(), 4).unwrap();
        let m = matrix_rep(&d);
        let sc = structure_check(&m, 4, 1e-10);
        assert!(sc.pass, "{sc:?}");
        // I and the swap span the compressed algebra
        assert_eq!(*sc.span_dims.last().unwrap(), 2);
    }

    #[test]
    fn non_coinvariant_core_fails_invariance() {
        let d = dilate(&gallery::one_vertex_identity_seed(), 3).unwrap();
        let m = matrix_rep(&d);
        // project onto the single vertex T_2(xi0): its red parent is the
        // true core vertex, which sits outside this P
        let mut mask = vec![false; m.dim()];
        let b = m.names().iter().position(|n| n == "T2(xi0)").unwrap();
        mask[b] = true;
        let sc = structure_check_with_core(&m, &mask, 4, 1e-10);
        assert!(sc.residual_invariance > 1e-3);
        assert!(!sc.pass);
    }
}
