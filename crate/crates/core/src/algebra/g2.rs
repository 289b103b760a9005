use crate::exec;
use crate::linalg::rank_real;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// 2×2 real blocks the generators are written in.
#[derive(Clone, Copy)]
enum B {
    Z,
    /// identity
    O,
    S1,
    S3,
    /// −iσ²
    Mi,
    /// iσ²
    Pi,
}

fn block(b: B) -> [[f64; 2]; 2] {
    match b {
        B::Z => [[0.0, 0.0], [0.0, 0.0]],
        B::O => [[1.0, 0.0], [0.0, 1.0]],
        B::S1 => [[0.0, 1.0], [1.0, 0.0]],
        B::S3 => [[1.0, 0.0], [0.0, -1.0]],
        B::Mi => [[0.0, -1.0], [1.0, 0.0]],
        B::Pi => [[0.0, 1.0], [-1.0, 0.0]],
    }
}

fn assemble(rows: [[(f64, B); 4]; 4]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(8, 8);
    for (br, row) in rows.iter().enumerate() {
        for (bc, &(s, b)) in row.iter().enumerate() {
            let v = block(b);
            for i in 0..2 {
                for j in 0..2 {
                    m[(2 * br + i, 2 * bc + j)] = s * v[i][j];
                }
            }
        }
    }
    m
}

/// The 14 real 8×8 matrices `L_1..L_7, R_1..R_7` acting on `Φ_R = (a,…,h)`.
#[derive(Clone, Debug)]
pub struct G2GeneratorSet {
    pub names: Vec<String>,
    pub mats: Vec<DMatrix<f64>>,
}

impl G2GeneratorSet {
    /// The generators as printed.
    pub fn printed() -> Self {
        use B::*;
        let z = (1.0, Z);
        let p = |b: B| (1.0, b);
        let n = |b: B| (-1.0, b);
        let l = [
            [[p(Mi), z, z, z], [z, p(Mi), z, z], [z, z, p(Mi), z], [z, z, z, p(Pi)]],
            [[z, n(S3), z, z], [p(S3), z, z, z], [z, z, z, n(O)], [z, z, p(O), z]],
            [[z, n(S1), z, z], [p(S1), z, z, z], [z, z, z, p(Mi)], [z, z, p(Mi), z]],
            [[z, z, n(S3), z], [z, z, z, p(O)], [p(S3), z, z, z], [z, n(O), z, z]],
            [[z, z, n(S1), z], [z, z, z, p(Pi)], [p(S1), z, z, z], [z, p(Pi), z, z]],
            [[z, z, z, n(O)], [z, z, n(S3), z], [z, p(S3), z, z], [p(O), z, z, z]],
            [[z, z, z, p(Mi)], [z, z, n(S1), z], [z, p(S1), z, z], [p(Mi), z, z, z]],
        ];
        let r = [
            [[p(Mi), z, z, z], [z, p(Pi), z, z], [z, z, p(Pi), z], [z, z, z, p(Mi)]],
            [[z, n(O), z, z], [p(O), z, z, z], [z, z, z, p(O)], [z, z, n(O), z]],
            [[z, p(Mi), z, z], [p(Mi), z, z, z], [z, z, z, p(Pi)], [z, z, p(Pi), z]],
            [[z, z, n(O), z], [z, z, z, n(O)], [p(O), z, z, z], [z, p(O), z, z]],
            [[z, z, p(Mi), z], [z, z, z, p(Mi)], [p(Mi), z, z, z], [z, p(Mi), z, z]],
            [[z, z, z, n(S3)], [z, z, p(S3), z], [z, n(S3), z, z], [p(S3), z, z, z]],
            [[z, z, z, n(S1)], [z, z, p(S1), z], [z, n(S1), z, z], [p(S1), z, z, z]],
        ];
        let mut names = Vec::new();
        let mut mats = Vec::new();
        for (i, rows) in l.into_iter().enumerate() {
            names.push(format!("L{}", i + 1));
            mats.push(assemble(rows));
        }
        for (i, rows) in r.into_iter().enumerate() {
            names.push(format!("R{}", i + 1));
            mats.push(assemble(rows));
        }
        G2GeneratorSet { names, mats }
    }

    /// Max `|M + Mᵀ|` over the set.
    pub fn antisymmetry_defect(&self) -> f64 {
        self.mats
            .iter()
            .map(|m| (m + m.transpose()).abs().max())
            .fold(0.0, exec::fmax)
    }

    /// Max over generators of `|D(xy) − D(x)y − xD(y)|` on basis pairs, with
    /// `Φ_R` read as the octonion coordinates `(r_0,…,r_7)`.
    pub fn derivation_defects(&self) -> Vec<f64> {
        use super::{oct_mul, Octonion};
        let apply = |m: &DMatrix<f64>, x: &Octonion| {
            let v = m * DVector::from_column_slice(&x.r);
            Octonion::new(std::array::from_fn(|i| v[i]))
        };
        self.mats
            .iter()
            .map(|m| {
                let mut worst: f64 = 0.0;
                for i in 0..8 {
                    for j in 0..8 {
                        let (x, y) = (Octonion::unit(i), Octonion::unit(j));
                        let lhs = apply(m, &oct_mul(&x, &y));
                        let rhs = oct_mul(&apply(m, &x), &y) + oct_mul(&x, &apply(m, &y));
                        worst = worst.max((lhs - rhs).max_abs());
                    }
                }
                worst
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct G2ClosureReport {
    pub rank_of_span: usize,
    /// max Frobenius residual of `[g_i, g_j]` after projection onto the span
    pub closure_defect: f64,
    /// pair attaining the defect
    pub worst_pair: (String, String),
    /// ordered pairs with residual above `1e−10`
    pub open_pairs: usize,
    /// dimension of the Lie algebra the matrices generate
    pub generated_dimension: usize,
}

fn flat(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(m.as_slice())
}

/// Orthonormal basis (columns) of the span of `vs`, by SVD.
fn span_basis(vs: &[DVector<f64>], tol: f64) -> DMatrix<f64> {
    let a = DMatrix::from_columns(vs);
    let svd = a.svd(true, false);
    let u = svd.u.expect("u requested");
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > tol).collect();
    DMatrix::from_fn(u.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

pub fn g2_closure_report(gens: &G2GeneratorSet) -> G2ClosureReport {
    let vs: Vec<DVector<f64>> = gens.mats.iter().map(flat).collect();
    let stacked = DMatrix::from_columns(&vs);
    let rank_of_span = rank_real(&stacked, 1e-8);
    let q = span_basis(&vs, 1e-8);
    let n = gens.mats.len();
    let residuals = exec::map_range(n * n, |k| {
        let (i, j) = (k / n, k % n);
        let c = &gens.mats[i] * &gens.mats[j] - &gens.mats[j] * &gens.mats[i];
        let v = flat(&c);
        let proj = &q * (q.transpose() * &v);
        (v - proj).norm()
    });
    let mut closure_defect = 0.0;
    let mut worst = (0, 0);
    let mut open_pairs = 0;
    for (k, r) in residuals.iter().enumerate() {
        if *r > 1e-10 {
            open_pairs += 1;
        }
        if *r > closure_defect {
            closure_defect = *r;
            worst = (k / n, k % n);
        }
    }
    // grow the span under commutators until it stops growing
    let mut basis: Vec<DMatrix<f64>> = gens.mats.clone();
    let mut dim = rank_of_span;
    loop {
        let mut cand: Vec<DVector<f64>> = basis.iter().map(flat).collect();
        for a in &basis {
            for b in &gens.mats {
                cand.push(flat(&(a * b - b * a)));
            }
        }
        let q = span_basis(&cand, 1e-8);
        let new_dim = q.ncols();
        basis = (0..new_dim)
            .map(|c| DMatrix::from_column_slice(8, 8, q.column(c).as_slice()))
            .collect();
        if new_dim == dim {
            break;
        }
        dim = new_dim;
    }
    G2ClosureReport {
        rank_of_span,
        closure_defect,
        worst_pair: (gens.names[worst.0].clone(), gens.names[worst.1].clone()),
        open_pairs,
        generated_dimension: dim,
    }
}
