//! Minimal sparse and banded linear algebra used by the solvers.

use crate::error::{CoreError, Result};

/// Compressed sparse row matrix.
#[derive(Debug, Clone)]
pub struct Csr {
    pub n_rows: usize,
    pub n_cols: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<f64>,
}

impl Csr {
    /// Build from (row, col, value) triplets; duplicates are summed.
    pub fn from_triplets(n_rows: usize, n_cols: usize, mut t: Vec<(usize, usize, f64)>) -> Csr {
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; n_rows + 1];
        let mut col_idx = Vec::with_capacity(t.len());
        let mut values: Vec<f64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for &(r, c, v) in &t {
            debug_assert!(r < n_rows && c < n_cols);
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..n_rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Csr {
            n_rows,
            n_cols,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n_cols);
        debug_assert_eq!(y.len(), self.n_rows);
        for r in 0..self.n_rows {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            y[r] = acc;
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n_rows];
        self.matvec_into(x, &mut y);
        y
    }

    /// y = A^T x.
    pub fn matvec_transpose(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n_rows);
        let mut y = vec![0.0; self.n_cols];
        for r in 0..self.n_rows {
            let xr = x[r];
            if xr == 0.0 {
                continue;
            }
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                y[self.col_idx[k]] += self.values[k] * xr;
            }
        }
        y
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n_rows.min(self.n_cols)];
        for r in 0..d.len() {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.col_idx[k] == r {
                    d[r] += self.values[k];
                }
            }
        }
        d
    }

    /// C = self * other.
    pub fn matmul(&self, other: &Csr) -> Csr {
        assert_eq!(self.n_cols, other.n_rows);
        let mut trip = Vec::new();
        let mut acc: Vec<f64> = vec![0.0; other.n_cols];
        let mut touched: Vec<usize> = Vec::new();
        for r in 0..self.n_rows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let a = self.values[k];
                let m = self.col_idx[k];
                for k2 in other.row_ptr[m]..other.row_ptr[m + 1] {
                    let c = other.col_idx[k2];
                    if acc[c] == 0.0 && !touched.contains(&c) {
                        touched.push(c);
                    }
                    acc[c] += a * other.values[k2];
                }
            }
            for &c in &touched {
                trip.push((r, c, acc[c]));
                acc[c] = 0.0;
            }
            touched.clear();
        }
        Csr::from_triplets(self.n_rows, other.n_cols, trip)
    }

    /// C = self + beta * other (same shape).
    pub fn add_scaled(&self, beta: f64, other: &Csr) -> Csr {
        assert_eq!(self.n_rows, other.n_rows);
        assert_eq!(self.n_cols, other.n_cols);
        let mut trip = Vec::with_capacity(self.values.len() + other.values.len());
        for r in 0..self.n_rows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                trip.push((r, self.col_idx[k], self.values[k]));
            }
            for k in other.row_ptr[r]..other.row_ptr[r + 1] {
                trip.push((r, other.col_idx[k], beta * other.values[k]));
            }
        }
        Csr::from_triplets(self.n_rows, self.n_cols, trip)
    }

    /// C = diag(s) * self.
    pub fn scaled_rows(&self, s: &[f64]) -> Csr {
        assert_eq!(s.len(), self.n_rows);
        let mut out = self.clone();
        for r in 0..self.n_rows {
            for k in out.row_ptr[r]..out.row_ptr[r + 1] {
                out.values[k] *= s[r];
            }
        }
        out
    }
}

/// Banded matrix with `kl` sub- and `ku` super-diagonals, LU-factorable in
/// place with partial pivoting (LAPACK-style storage with `kl` extra fill
/// rows above the band).
#[derive(Debug, Clone)]
pub struct BandMatrix {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    ldab: usize,
    /// Column-major: entry (i, j) at ab[j * ldab + (kl + ku + i - j)].
    ab: Vec<f64>,
    ipiv: Vec<usize>,
    factored: bool,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> BandMatrix {
        let ldab = 2 * kl + ku + 1;
        BandMatrix {
            n,
            kl,
            ku,
            ldab,
            ab: vec![0.0; ldab * n],
            ipiv: vec![0; n],
            factored: false,
        }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        j * self.ldab + (self.kl + self.ku + i - j)
    }

    /// Whether (i, j) is inside the fillable band.
    #[inline]
    fn in_band(&self, i: usize, j: usize) -> bool {
        let d = i as isize - j as isize;
        d <= self.kl as isize && d >= -((self.ku + self.kl) as isize)
    }

    /// Add to entry (i, j). Panics if outside the declared band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(!self.factored, "matrix already factored");
        let d = i as isize - j as isize;
        assert!(
            d <= self.kl as isize && d >= -(self.ku as isize),
            "entry ({i},{j}) outside band kl={} ku={}",
            self.kl,
            self.ku
        );
        let s = self.slot(i, j);
        self.ab[s] += v;
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.ab[self.slot(i, j)]
        } else {
            0.0
        }
    }

    /// LU factorization with partial pivoting.
    pub fn factor(&mut self, context: &'static str) -> Result<()> {
        assert!(!self.factored);
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        for j in 0..n {
            let i_max = (j + kl).min(n - 1);
            // pivot search in column j
            let mut jp = j;
            let mut vmax = self.get(j, j).abs();
            for i in (j + 1)..=i_max {
                let v = self.get(i, j).abs();
                if v > vmax {
                    vmax = v;
                    jp = i;
                }
            }
            self.ipiv[j] = jp;
            let piv = self.get(jp, j);
            if piv == 0.0 {
                return Err(CoreError::SingularSystem {
                    context,
                    pivot: piv,
                    row: j,
                });
            }
            let c_max = (j + kl + ku).min(n - 1);
            if jp != j {
                for c in j..=c_max {
                    let a = self.get(j, c);
                    let b = self.get(jp, c);
                    let (sj, sp) = (self.slot(j, c), self.slot(jp, c));
                    self.ab[sj] = b;
                    self.ab[sp] = a;
                }
            }
            let d = self.get(j, j);
            for i in (j + 1)..=i_max {
                let s = self.slot(i, j);
                self.ab[s] /= d;
            }
            for c in (j + 1)..=c_max {
                let ajc = self.get(j, c);
                if ajc == 0.0 {
                    continue;
                }
                for i in (j + 1)..=i_max {
                    let lij = self.get(i, j);
                    if lij != 0.0 {
                        let s = self.slot(i, c);
                        self.ab[s] -= lij * ajc;
                    }
                }
            }
        }
        self.factored = true;
        Ok(())
    }

    /// Solve A x = b in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        assert!(self.factored);
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        for j in 0..n {
            let jp = self.ipiv[j];
            if jp != j {
                b.swap(j, jp);
            }
            let bj = b[j];
            if bj != 0.0 {
                for i in (j + 1)..=(j + kl).min(n - 1) {
                    b[i] -= self.get(i, j) * bj;
                }
            }
        }
        for j in (0..n).rev() {
            let lo = j.saturating_sub(kl + ku);
            b[j] /= self.get(j, j);
            let bj = b[j];
            if bj != 0.0 {
                for i in lo..j {
                    b[i] -= self.get(i, j) * bj;
                }
            }
        }
    }

    /// Solve A^T x = b in place.
    pub fn solve_transposed_in_place(&self, b: &mut [f64]) {
        assert!(self.factored);
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        // U^T w = b (forward substitution over columns of U)
        for j in 0..n {
            let lo = j.saturating_sub(kl + ku);
            let mut acc = b[j];
            for i in lo..j {
                acc -= self.get(i, j) * b[i];
            }
            b[j] = acc / self.get(j, j);
        }
        // L^T y = w (backward)
        for j in (0..n).rev() {
            let mut acc = b[j];
            for i in (j + 1)..=(j + kl).min(n - 1) {
                acc -= self.get(i, j) * b[i];
            }
            b[j] = acc;
        }
        // reverse the row interchanges
        for j in (0..n).rev() {
            let jp = self.ipiv[j];
            if jp != j {
                b.swap(j, jp);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn csr_matvec_and_transpose() {
        let a = Csr::from_triplets(
            3,
            3,
            vec![(0, 0, 2.0), (0, 2, 1.0), (1, 1, -1.0), (2, 0, 3.0), (2, 2, 4.0)],
        );
        let y = a.matvec(&[1.0, 2.0, 3.0]);
        assert_eq!(y, vec![5.0, -2.0, 15.0]);
        let yt = a.matvec_transpose(&[1.0, 1.0, 1.0]);
        assert_eq!(yt, vec![5.0, -1.0, 5.0]);
    }

    #[test]
    fn band_lu_matches_dense() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &(n, kl, ku) in &[(12usize, 2usize, 3usize), (30, 4, 2), (9, 1, 1)] {
            let mut band = BandMatrix::zeros(n, kl, ku);
            let mut dense = nalgebra::DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let d = i as isize - j as isize;
                    if d <= kl as isize && d >= -(ku as isize) {
                        let v: f64 = rng.gen_range(-1.0..1.0);
                        let v = if i == j { v + 3.0 } else { v };
                        band.add(i, j, v);
                        dense[(i, j)] = v;
                    }
                }
            }
            let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            band.factor("test").unwrap();

            let mut x = b.clone();
            band.solve_in_place(&mut x);
            let lu = dense.clone().lu();
            let xd = lu.solve(&nalgebra::DVector::from_vec(b.clone())).unwrap();
            for i in 0..n {
                assert!((x[i] - xd[i]).abs() < 1e-10, "solve mismatch at {i}");
            }

            let mut xt = b.clone();
            band.solve_transposed_in_place(&mut xt);
            let lut = dense.transpose().lu();
            let xdt = lut.solve(&nalgebra::DVector::from_vec(b)).unwrap();
            for i in 0..n {
                assert!((xt[i] - xdt[i]).abs() < 1e-10, "transpose solve mismatch at {i}");
            }
        }
    }
}
