//! Dense linear-algebra helpers on top of nalgebra.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

pub type C64 = num_complex::Complex<f64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn eigh(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let e = nalgebra::SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let vals = order.iter().map(|&k| e.eigenvalues[k]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, k| e.eigenvectors[(r, order[k])]);
    (vals, vecs)
}

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
pub fn eigh_real(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let e = nalgebra::SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let vals = order.iter().map(|&k| e.eigenvalues[k]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, k| e.eigenvectors[(r, order[k])]);
    (vals, vecs)
}

/// Singular values, descending.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn singular_values_real(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank with an absolute singular-value threshold.
pub fn rank_real(m: &DMatrix<f64>, tol: f64) -> usize {
    singular_values_real(m).iter().filter(|&&s| s > tol).count()
}

/// `‖u†u − I‖_max`.
pub fn unitarity_defect(u: &DMatrix<C64>) -> f64 {
    let n = u.nrows();
    let d = u.adjoint() * u - DMatrix::<C64>::identity(n, n);
    max_abs(&d)
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn max_abs_real(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// Principal logarithm `G` of a unitary `u`, so that `exp(G) = u` and `G` is
/// anti-Hermitian. Eigenphases lie in `(−π, π]`.
pub fn unitary_log(u: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let n = u.nrows();
    let Some(schur) = nalgebra::Schur::try_new(u.clone(), 1e-15, 10_000) else {
        return unitary_log_pencil(u);
    };
    let (q, t) = schur.unpack();
    let mut off = 0.0f64;
    for r in 0..n {
        for c in (r + 1)..n {
            off = off.max(t[(r, c)].norm());
        }
    }
    if off > 1e-9 {
        return Err(Error::Numerical(format!(
            "matrix is not normal: Schur off-diagonal {off:.3e}"
        )));
    }
    let logs = DVector::from_fn(n, |k, _| principal_ln(t[(k, k)]));
    Ok(&q * DMatrix::from_diagonal(&logs) * q.adjoint())
}

fn principal_ln(z: C64) -> C64 {
    C64::new(z.norm().ln(), z.arg())
}

// Schur can stall on exactly structured inputs such as permutations. The
// Hermitian and skew parts of a normal matrix commute, so a generic real
// combination of them shares its eigenvectors with `u`.
fn unitary_log_pencil(u: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let n = u.nrows();
    let herm = (u + u.adjoint()).map(|z| z * 0.5);
    let skew = (u - u.adjoint()).map(|z| z * C64::new(0.0, -0.5));
    for alpha in [0.754_877_666_246_692_7, std::f64::consts::FRAC_1_PI, std::f64::consts::SQRT_2] {
        let (_, v) = eigh(&(&herm + &skew * c(alpha)));
        let d = v.adjoint() * u * &v;
        let off = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|(r, c)| r != c)
            .map(|(r, c)| d[(r, c)].norm())
            .fold(0.0, f64::max);
        if off < 1e-10 {
            let logs = DVector::from_fn(n, |k, _| principal_ln(d[(k, k)]));
            return Ok(&v * DMatrix::from_diagonal(&logs) * v.adjoint());
        }
    }
    Err(Error::Numerical("could not diagonalize the unitary".into()))
}

/// `exp(−i·H·t)` for Hermitian `H` via its eigenbasis.
pub fn expm_hermitian(h: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    let (vals, vecs) = eigh(h);
    let phases = DVector::from_iterator(vals.len(), vals.iter().map(|&l| C64::from_polar(1.0, -l * t)));
    &vecs * DMatrix::from_diagonal(&phases) * vecs.adjoint()
}

pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a.kronecker(b)
}

pub fn to_complex(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(c)
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
