use crate::algebra::build_dirac;
use crate::error::{Error, Result};
use crate::linalg::C64;


/// `φ = (a + ib, c + id)`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UrSpinor(pub [C64; 2]);

impl UrSpinor {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        UrSpinor([C64::new(a, b), C64::new(c, d)])
    }
    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }
    /// `(a, b, c, d)`
    pub fn real_parts(&self) -> [f64; 4] {
        [self.0[0].re, self.0[0].im, self.0[1].re, self.0[1].im]
    }
    pub fn norm(&self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }
    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }
    fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Validation("cannot normalize a zero ur-spinor".into()));
        }
        Ok(UrSpinor(self.0.map(|z| z / n)))
    }
    /// `iσ² φ* = (φ_2*, −φ_1*)`
    pub fn charge_conjugate(&self) -> [C64; 2] {
        [self.0[1].conj(), -self.0[0].conj()]
    }
}

/// Four-component spinor built from ur-spinors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MajoranaSpinor {
    pub chi: [C64; 4],
}

impl MajoranaSpinor {
    /// `χ = (1/√2)(φ; iσ²φ*)`
    pub fn single(phi: &UrSpinor) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w = phi.charge_conjugate();
        MajoranaSpinor {
            chi: [phi.0[0] * s, phi.0[1] * s, w[0] * s, w[1] * s],
        }
    }
    /// `χ = (u; iσ²v*)`
    pub fn pair(u: &UrSpinor, v: &UrSpinor) -> Self {
        let w = v.charge_conjugate();
        MajoranaSpinor {
            chi: [u.0[0], u.0[1], w[0], w[1]],
        }
    }
    /// `χ̄ = χ†γ^0`
    pub fn bar(&self) -> [C64; 4] {
        let g0 = &build_dirac().gamma[0];
        std::array::from_fn(|j| (0..4).map(|i| self.chi[i].conj() * g0[(i, j)]).sum())
    }
    pub fn scaled(&self, s: f64) -> Self {
        MajoranaSpinor { chi: self.chi.map(|z| z * s) }
    }
}

/// `V^μ = χ̄γ^μχ`. The imaginary parts vanish identically; the largest
/// one is returned alongside.
pub fn spinor_to_vector(chi: &MajoranaSpinor) -> ([f64; 4], f64) {
    let d = build_dirac();
    let bar = chi.bar();
    let mut v = [0.0; 4];
    let mut im: f64 = 0.0;
    for (mu, g) in d.gamma.iter().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += bar[i] * g[(i, j)] * chi.chi[j];
            }
        }
        v[mu] = acc.re;
        im = im.max(acc.im.abs());
    }
    (v, im)
}

/// The component expansions for `χ = (u_g1; iσ²u_g2*)`, summed over both
/// ur-spinors: `V⁰ = Σ a²+b²+c²+d²`, `V¹ = Σ 2ac+2bd`, `V² = Σ 2ad−2bc`,
/// `V³ = Σ a²+b²−c²−d²`.
pub fn printed_vector_components(g1: &UrSpinor, g2: &UrSpinor) -> [f64; 4] {
    let mut v = [0.0; 4];
    for u in [g1, g2] {
        let [a, b, c, d] = u.real_parts();
        v[0] += a * a + b * b + c * c + d * d;
        v[1] += 2.0 * a * c + 2.0 * b * d;
        v[2] += 2.0 * a * d - 2.0 * b * c;
        v[3] += a * a + b * b - c * c - d * d;
    }
    v
}

/// `η_{μν} x^μ y^ν`
pub fn minkowski_dot(x: &[f64; 4], y: &[f64; 4]) -> f64 {
    x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3]
}
