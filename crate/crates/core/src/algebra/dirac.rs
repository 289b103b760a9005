use crate::linalg::{C64, I};
use nalgebra::{DMatrix, Matrix2};

/// `σ^0 … σ^3`, with `σ^0` the identity.
pub fn pauli() -> [Matrix2<C64>; 4] {
    let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    [
        Matrix2::new(o, z, z, o),
        Matrix2::new(z, o, o, z),
        Matrix2::new(z, -I, I, z),
        Matrix2::new(o, z, z, -o),
    ]
}

/// `η = diag(1, −1, −1, −1)`
pub fn eta(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}

#[derive(Clone, Debug)]
pub struct DiracMatrices {
    pub gamma: [DMatrix<C64>; 4],
}

/// `γ^0 = (0 1; 1 0)`, `γ^i = (0 −σ^i; σ^i 0)`.
pub fn build_dirac() -> DiracMatrices {
    let s = pauli();
    let blocks = |tr: Matrix2<C64>, bl: Matrix2<C64>| {
        let mut m = DMatrix::zeros(4, 4);
        m.view_mut((0, 2), (2, 2)).copy_from(&tr);
        m.view_mut((2, 0), (2, 2)).copy_from(&bl);
        m
    };
    DiracMatrices {
        gamma: [
            blocks(s[0], s[0]),
            blocks(-s[1], s[1]),
            blocks(-s[2], s[2]),
            blocks(-s[3], s[3]),
        ],
    }
}

impl DiracMatrices {
    /// Max entry of `{γ^μ,γ^ν} − 2η^{μν}` over all pairs.
    pub fn clifford_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let a = &self.gamma[mu] * &self.gamma[nu] + &self.gamma[nu] * &self.gamma[mu];
                let want = DMatrix::<C64>::identity(4, 4) * C64::new(2.0 * eta(mu, nu), 0.0);
                worst = worst.max((a - want).iter().fold(0.0f64, |m, z| m.max(z.norm())));
            }
        }
        worst
    }

    /// `γ^μ a_μ` for a lower-index covector `a`.
    pub fn slash(&self, a: [C64; 4]) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(4, 4);
        for mu in 0..4 {
            m += &self.gamma[mu] * a[mu];
        }
        m
    }
}
