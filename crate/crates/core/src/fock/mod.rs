//! Truncated four-mode bosonic Fock space, ladder operators and mode-basis
//! changes.
//!
//! Three mode conventions are in play. The raw modes `a,b,c,d`, the complex
//! combinations `A,B,C,D`, and the real rotation `x,y,z,n` of the latter.
//! A [`StateVector`] or [`FockOperator`] carries a [`ModeBasis`] tag saying
//! which occupational basis its coefficients refer to.

mod ladder;
mod operator;
mod space;
mod state;
mod transform;

pub use ladder::{ladder, ladder_abcd, ladder_in, mode_operator, number_operator, LadderKind};
pub use operator::FockOperator;
pub use space::{binomial, FockSpace, Occupation, N_MAX_CAP};
pub use state::StateVector;
pub use transform::{basis_transform, change_basis_xyzn, mode_transform, Direction};

use crate::linalg::{c, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeBasis {
    /// `a, b, c, d`
    Raw,
    /// `A, B, C, D`
    Upper,
    /// `x, y, z, n`
    Xyzn,
}

impl ModeBasis {
    pub fn name(self) -> &'static str {
        match self {
            ModeBasis::Raw => "abcd",
            ModeBasis::Upper => "ABCD",
            ModeBasis::Xyzn => "xyzn",
        }
    }
}

/// Rows `A,B,C,D` as combinations of the annihilators `a,b,c,d`.
pub fn upper_mixing() -> DMatrix<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let i = C64::new(0.0, s);
    let z = c(0.0);
    DMatrix::from_row_slice(
        4,
        4,
        &[
            c(s), i, z, z, //
            z, z, c(s), i, //
            z, z, c(s), -i, //
            c(-s), i, z, z,
        ],
    )
}

/// Rows `x,y,z,n` as combinations of `A,B,C,D`. Real orthogonal.
pub fn xyzn_mixing() -> DMatrix<f64> {
    DMatrix::from_row_slice(
        4,
        4,
        &[
            0.5, 0.5, -0.5, -0.5, //
            0.5, -0.5, 0.5, -0.5, //
            0.5, -0.5, -0.5, 0.5, //
            0.5, 0.5, 0.5, 0.5,
        ],
    )
}

/// Mode matrix `u` with `L_to = u · L_from` for the annihilator columns.
pub fn mixing_between(from: ModeBasis, to: ModeBasis) -> DMatrix<C64> {
    // L_upper = t(b) · L_b
    let t = |b: ModeBasis| -> DMatrix<C64> {
        match b {
            ModeBasis::Raw => upper_mixing(),
            ModeBasis::Upper => DMatrix::identity(4, 4),
            ModeBasis::Xyzn => xyzn_mixing().transpose().map(c),
        }
    };
    t(to).adjoint() * t(from)
}
