//! Row-compressed complex sparse matrices.

use crate::exec;
use crate::linalg::C64;
use nalgebra::DMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl CsrMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        CsrMatrix {
            nrows,
            ncols,
            indptr: vec![0; nrows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![C64::new(1.0, 0.0); n])
    }

    pub fn diagonal(d: &[C64]) -> Self {
        let n = d.len();
        CsrMatrix {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: d.to_vec(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, mut trip: Vec<(usize, usize, C64)>) -> Self {
        trip.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(trip.len());
        let mut values: Vec<C64> = Vec::with_capacity(trip.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in trip {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) out of bounds");
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(c);
                values.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..nrows {
            indptr[r + 1] += indptr[r];
        }
        CsrMatrix {
            nrows,
            ncols,
            indptr,
            indices,
            values,
        }
        .pruned(0.0)
    }

    /// Builds row by row from a closure returning the entries of each row.
    pub fn from_rows<F>(nrows: usize, ncols: usize, row: F) -> Self
    where
        F: Fn(usize) -> Vec<(usize, C64)> + Sync + Send,
    {
        let rows = exec::map_range(nrows, |r| {
            let mut e = row(r);
            e.sort_by_key(|x| x.0);
            let mut out: Vec<(usize, C64)> = Vec::with_capacity(e.len());
            for (c, v) in e {
                match out.last_mut() {
                    Some(l) if l.0 == c => l.1 += v,
                    _ => out.push((c, v)),
                }
            }
            out.retain(|x| x.1 != C64::new(0.0, 0.0));
            out
        });
        Self::assemble(nrows, ncols, rows)
    }

    fn assemble(nrows: usize, ncols: usize, rows: Vec<Vec<(usize, C64)>>) -> Self {
        let nnz = rows.iter().map(|r| r.len()).sum();
        let mut indptr = Vec::with_capacity(nrows + 1);
        let mut indices = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        indptr.push(0);
        for r in rows {
            for (c, v) in r {
                debug_assert!(c < ncols);
                indices.push(c);
                values.push(v);
            }
            indptr.push(indices.len());
        }
        CsrMatrix {
            nrows,
            ncols,
            indptr,
            indices,
            values,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let (a, b) = (self.indptr[r], self.indptr[r + 1]);
        self.indices[a..b]
            .iter()
            .copied()
            .zip(self.values[a..b].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        let (a, b) = (self.indptr[r], self.indptr[r + 1]);
        match self.indices[a..b].binary_search(&c) {
            Ok(k) => self.values[a + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// Entries with `|v| <= tol` removed.
    pub fn pruned(&self, tol: f64) -> Self {
        let rows = (0..self.nrows)
            .map(|r| self.row(r).filter(|(_, v)| v.norm() > tol).collect())
            .collect();
        Self::assemble(self.nrows, self.ncols, rows)
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.ncols, "matvec dimension mismatch");
        exec::map_range(self.nrows, |r| {
            self.row(r)
                .fold(C64::new(0.0, 0.0), |acc, (c, v)| acc + v * x[c])
        })
    }

    pub fn matmul(&self, other: &CsrMatrix) -> CsrMatrix {
        assert_eq!(self.ncols, other.nrows, "matmul dimension mismatch");
        let n = other.ncols;
        let rows = exec::map_range(self.nrows, |r| {
            let mut acc: Vec<(usize, C64)> = Vec::new();
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    acc.push((c, a * b));
                }
            }
            acc.sort_by_key(|x| x.0);
            let mut out: Vec<(usize, C64)> = Vec::with_capacity(acc.len());
            for (c, v) in acc {
                match out.last_mut() {
                    Some(l) if l.0 == c => l.1 += v,
                    _ => out.push((c, v)),
                }
            }
            out.retain(|x| x.1 != C64::new(0.0, 0.0));
            out
        });
        Self::assemble(self.nrows, n, rows)
    }

    /// `alpha * self + beta * other`.
    pub fn lincomb(&self, alpha: C64, other: &CsrMatrix, beta: C64) -> CsrMatrix {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "lincomb shape mismatch"
        );
        let rows = exec::map_range(self.nrows, |r| {
            let mut out: Vec<(usize, C64)> = Vec::new();
            let mut a = self.row(r).peekable();
            let mut b = other.row(r).peekable();
            loop {
                match (a.peek().copied(), b.peek().copied()) {
                    (Some((ca, va)), Some((cb, vb))) => {
                        if ca == cb {
                            out.push((ca, alpha * va + beta * vb));
                            a.next();
                            b.next();
                        } else if ca < cb {
                            out.push((ca, alpha * va));
                            a.next();
                        } else {
                            out.push((cb, beta * vb));
                            b.next();
                        }
                    }
                    (Some((ca, va)), None) => {
                        out.push((ca, alpha * va));
                        a.next();
                    }
                    (None, Some((cb, vb))) => {
                        out.push((cb, beta * vb));
                        b.next();
                    }
                    (None, None) => break,
                }
            }
            out.retain(|x| x.1 != C64::new(0.0, 0.0));
            out
        });
        Self::assemble(self.nrows, self.ncols, rows)
    }

    pub fn add(&self, other: &CsrMatrix) -> CsrMatrix {
        self.lincomb(C64::new(1.0, 0.0), other, C64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &CsrMatrix) -> CsrMatrix {
        self.lincomb(C64::new(1.0, 0.0), other, C64::new(-1.0, 0.0))
    }

    pub fn scale(&self, s: C64) -> CsrMatrix {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &CsrMatrix) -> CsrMatrix {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// `{self, other} = self·other + other·self`.
    pub fn anticommutator(&self, other: &CsrMatrix) -> CsrMatrix {
        self.matmul(other).add(&other.matmul(self))
    }

    pub fn transpose(&self) -> CsrMatrix {
        let mut trip = Vec::with_capacity(self.nnz());
        for r in 0..self.nrows {
            for (c, v) in self.row(r) {
                trip.push((c, r, v));
            }
        }
        CsrMatrix::from_triplets(self.ncols, self.nrows, trip)
    }

    pub fn adjoint(&self) -> CsrMatrix {
        let mut t = self.transpose();
        t.values.iter_mut().for_each(|v| *v = v.conj());
        t
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, exec::fmax)
    }

    pub fn max_abs_diff(&self, other: &CsrMatrix) -> f64 {
        self.sub(other).max_abs()
    }

    /// `max |M − M†|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.im.abs() <= tol)
    }

    /// Keeps entry (r, c) only when `keep_row(r) && keep_col(c)`.
    pub fn restrict<R, C>(&self, keep_row: R, keep_col: C) -> CsrMatrix
    where
        R: Fn(usize) -> bool,
        C: Fn(usize) -> bool,
    {
        let rows = (0..self.nrows)
            .map(|r| {
                if keep_row(r) {
                    self.row(r).filter(|(c, _)| keep_col(*c)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Self::assemble(self.nrows, self.ncols, rows)
    }

    /// Submatrix on the listed row and column indices (in that order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> DMatrix<C64> {
        let mut pos = vec![usize::MAX; self.ncols];
        for (j, &c) in cols.iter().enumerate() {
            pos[c] = j;
        }
        let mut m = DMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (c, v) in self.row(r) {
                if pos[c] != usize::MAX {
                    m[(i, pos[c])] = v;
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            for (c, v) in self.row(r) {
                m[(r, c)] = v;
            }
        }
        m
    }

    pub fn from_dense(m: &DMatrix<C64>, tol: f64) -> CsrMatrix {
        let rows = (0..m.nrows())
            .map(|r| {
                (0..m.ncols())
                    .filter_map(|c| {
                        let v = m[(r, c)];
                        (v.norm() > tol).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        Self::assemble(m.nrows(), m.ncols(), rows)
    }

    /// Kronecker product `self ⊗ other` (row-major composite index `i*m + j`).
    pub fn kron(&self, other: &CsrMatrix) -> CsrMatrix {
        let (m, n) = (other.nrows, other.ncols);
        let rows = exec::map_range(self.nrows * m, |r| {
            let (ra, rb) = (r / m, r % m);
            let mut out = Vec::new();
            for (ca, va) in self.row(ra) {
                for (cb, vb) in other.row(rb) {
                    out.push((ca * n + cb, va * vb));
                }
            }
            out
        });
        Self::assemble(self.nrows * m, self.ncols * n, rows)
    }

    /// Connected components of the symmetric sparsity pattern (square only).
    pub fn connected_blocks(&self) -> Vec<Vec<usize>> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for r in 0..n {
            for (c, _) in self.row(r) {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            if label[root] == usize::MAX {
                label[root] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[label[root]].push(i);
        }
        blocks
    }
}
