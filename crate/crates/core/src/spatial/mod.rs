//! Map from tensor-space states to wavefunctions on a 3-D grid.
//!
//! Occupation `(N_x,N_y,N_z,N_n)` maps to `h_Nx(x) h_Ny(y) h_Nz(z)` with
//! orthonormal Hermite functions; the `n` mode has no spatial profile and
//! amplitudes differing only in `N_n` add coherently.

mod grid;
mod hermite;
mod wavefield;

pub use grid::{Grid3, GRID_POINT_CAP};
pub use hermite::{hermite_all, hermite_fn, HermiteTable};
pub use wavefield::{
    axis_overlap, coefficients_to_wavefield, collapse_xyz, quadrature_overlap, state_to_wavefield, WaveField,
};
