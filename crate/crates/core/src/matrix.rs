//! Sparse complex matrices sized for desk-scale truncations, with the norm
//! estimates the verification kernels need. Storage is column-major with
//! sorted rows so every operation is deterministic.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    // cols[c] is sorted by row index; zero entries are never stored
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for c in 0..n {
            m.cols[c].push((c, Complex64::new(1.0, 0.0)));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Inserts an entry, accumulating onto anything already present.
    pub fn add_entry(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.nrows && col < self.ncols, "entry out of bounds");
        if value == Complex64::new(0.0, 0.0) {
            return;
        }
        let col_vec = &mut self.cols[col];
        match col_vec.binary_search_by_key(&row, |&(r, _)| r) {
            Ok(k) => {
                col_vec[k].1 += value;
                if col_vec[k].1 == Complex64::new(0.0, 0.0) {
                    col_vec.remove(k);
                }
            }
            Err(k) => col_vec.insert(k, (row, value)),
        }
    }

    pub fn column(&self, col: usize) -> &[(usize, Complex64)] {
        &self.cols[col]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch");
        let mut out = SparseMatrix::zeros(self.nrows, rhs.ncols);
        for c in 0..rhs.ncols {
            let mut acc: Vec<(usize, Complex64)> = Vec::new();
            for &(mid, w) in &rhs.cols[c] {
                for &(r, v) in &self.cols[mid] {
                    match acc.binary_search_by_key(&r, |&(row, _)| row) {
                        Ok(k) => acc[k].1 += v * w,
                        Err(k) => acc.insert(k, (r, v * w)),
                    }
                }
            }
            acc.retain(|&(_, v)| v != Complex64::new(0.0, 0.0));
            out.cols[c] = acc;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            out.add_entry(c, r, v.conj());
        }
        out
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_entry(r, c, -v);
        }
        out
    }

    /// Right-multiplies by the diagonal 0/1 projection keeping the flagged
    /// columns; everything else is zeroed.
    pub fn mask_columns(&self, keep: &[bool]) -> SparseMatrix {
        assert_eq!(keep.len(), self.ncols);
        let mut out = self.clone();
        for (c, col) in out.cols.iter_mut().enumerate() {
            if !keep[c] {
                col.clear();
            }
        }
        out
    }

    pub fn apply(&self, vec: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(vec.len(), self.ncols);
        let mut out = vec![Complex64::new(0.0, 0.0); self.nrows];
        for (col, &x) in self.cols.iter().zip(vec.iter()) {
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for &(r, v) in col {
                out[r] += v * x;
            }
        }
        out
    }

    /// Coordinate text dump, one `row col re im` line per stored entry,
    /// rows and columns 0-based in column-major order.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in self.entries() {
            out.push_str(&format!("{r} {c} {:.17e} {:.17e}\n", v.re, v.im));
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// Operator norm estimated by power iteration on A*A with a fixed
    /// deterministic start vector. Exact enough for pass/fail thresholds; the
    /// Frobenius norm is always an upper bound and is used as a guard.
    pub fn operator_norm(&self) -> f64 {
        if self.nnz() == 0 {
            return 0.0;
        }
        let adj = self.adjoint();
        let n = self.ncols;
        let mut v = vec![Complex64::new(1.0, 0.0); n];
        // bias the start vector so eigenvectors orthogonal to all-ones are not missed
        for (k, x) in v.iter_mut().enumerate() {
            *x += Complex64::new(0.0, (k as f64 + 1.0) / (n as f64 + 1.0));
        }
        normalize(&mut v);
        let mut lambda = 0.0f64;
        for _ in 0..400 {
            let mut w = adj.apply(&self.apply(&v));
            let norm = normalize(&mut w);
            let converged = (norm - lambda).abs() <= 1e-15 * norm.max(1.0);
            lambda = norm;
            v = w;
            if converged {
                break;
            }
        }
        lambda.max(0.0).sqrt().min(self.frobenius_norm())
    }
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}
