use super::{Grid3, HermiteTable};
use crate::error::{Error, Result};
use crate::exec;
use crate::fock::{ModeBasis, StateVector};
use crate::linalg::C64;
use std::io::Write;
use std::sync::Arc;

/// A wavefunction on a [`Grid3`], stored separably.
///
/// `Ψ(x,y,z) = Σ c[nx,ny,nz] h_nx(x) h_ny(y) h_nz(z)`. Grid values are
/// produced slab by slab on demand; a dense L=8, h=0.05 grid would hold
/// 3·10⁷ points.
#[derive(Clone, Debug)]
pub struct WaveField {
    grid: Grid3,
    n_max: usize,
    coef: Vec<C64>,
    table: Arc<HermiteTable>,
    norm: f64,
}

impl WaveField {
    /// Builds the field from a dense `(n_max+1)³` coefficient tensor, index
    /// `(nx*(n+1)+ny)*(n+1)+nz`.
    pub fn from_coefficients(grid: Grid3, n_max: usize, coef: Vec<C64>) -> Result<Self> {
        let w = n_max + 1;
        if coef.len() != w * w * w {
            return Err(Error::Validation(format!("expected {} coefficients, got {}", w * w * w, coef.len())));
        }
        if coef.iter().any(|z| !z.is_finite()) {
            return Err(Error::Validation("non-finite wavefield coefficient".into()));
        }
        let table = Arc::new(HermiteTable::new(n_max, &grid.axis()));
        let mut f = WaveField {
            grid,
            n_max,
            coef,
            table,
            norm: 0.0,
        };
        f.norm = overlap_unchecked(&f, &f).re.max(0.0).sqrt();
        Ok(f)
    }

    pub fn grid(&self) -> &Grid3 {
        &self.grid
    }
    pub fn n_max(&self) -> usize {
        self.n_max
    }
    /// Collapsed coefficient tensor.
    pub fn coefficients(&self) -> &[C64] {
        &self.coef
    }
    pub fn coefficient(&self, nx: usize, ny: usize, nz: usize) -> C64 {
        let w = self.n_max + 1;
        self.coef[(nx * w + ny) * w + nz]
    }
    /// Trapezoid norm on the grid, recorded at construction.
    pub fn quadrature_norm(&self) -> f64 {
        self.norm
    }
    pub fn scaled(&self, s: C64) -> WaveField {
        let mut out = self.clone();
        out.coef.iter_mut().for_each(|z| *z *= s);
        out.norm *= s.norm();
        out
    }

    /// Value at grid indices.
    pub fn value(&self, ix: usize, iy: usize, iz: usize) -> C64 {
        let (hx, hy, hz) = (self.table.at(ix), self.table.at(iy), self.table.at(iz));
        let w = self.n_max + 1;
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..w {
            for b in 0..w - a {
                for c in 0..w - a - b {
                    acc += self.coef[(a * w + b) * w + c] * (hx[a] * hy[b] * hz[c]);
                }
            }
        }
        acc
    }

    /// Value at an arbitrary point.
    pub fn evaluate(&self, x: f64, y: f64, z: f64) -> C64 {
        let t = HermiteTable::new(self.n_max, &[x, y, z]);
        let w = self.n_max + 1;
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..w {
            for b in 0..w - a {
                for c in 0..w - a - b {
                    acc += self.coef[(a * w + b) * w + c] * (t.get(a, 0) * t.get(b, 1) * t.get(c, 2));
                }
            }
        }
        acc
    }

    /// Writes the `iy*npts+iz` values of the slab at `ix` into `out`.
    pub fn slab(&self, ix: usize, out: &mut [C64]) {
        slab_values(&self.coef, self.n_max, self.table.at(ix), &self.table, &self.table, out);
    }

    /// Grid maximum of `|Ψ|`.
    pub fn max_abs(&self) -> f64 {
        let np = self.grid.npts();
        let per_slab = exec::map_range(np, |ix| {
            let mut buf = vec![C64::new(0.0, 0.0); np * np];
            self.slab(ix, &mut buf);
            buf.iter().map(|z| z.norm()).fold(0.0, exec::fmax)
        });
        per_slab.into_iter().fold(0.0, exec::fmax)
    }

    /// Columnar export: header then `x y z re im` per grid point.
    pub fn write_export<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# urfock wavefield v1 L={} h={}", self.grid.extent(), self.grid.step())?;
        let np = self.grid.npts();
        let mut buf = vec![C64::new(0.0, 0.0); np * np];
        for ix in 0..np {
            self.slab(ix, &mut buf);
            let x = self.grid.point(ix);
            for iy in 0..np {
                let y = self.grid.point(iy);
                for iz in 0..np {
                    let v = buf[iy * np + iz];
                    writeln!(w, "{} {} {} {:e} {:e}", x, y, self.grid.point(iz), v.re, v.im)?;
                }
            }
        }
        Ok(())
    }
}

/// Separable contraction over one `x` slab:
/// `out[iy*np+iz] = Σ c[a,b,c] hx[a] ty(b,iy) tz(c,iz)`.
fn slab_values(coef: &[C64], n_max: usize, hx: &[f64], ty: &HermiteTable, tz: &HermiteTable, out: &mut [C64]) {
    let w = n_max + 1;
    let np = ty.npts();
    let mut b = vec![C64::new(0.0, 0.0); w * w];
    for a in 0..w {
        if hx[a] == 0.0 {
            continue;
        }
        for bb in 0..w - a {
            for cc in 0..w - a - bb {
                b[bb * w + cc] += coef[(a * w + bb) * w + cc] * hx[a];
            }
        }
    }
    let mut cz = vec![C64::new(0.0, 0.0); w];
    for iy in 0..np {
        let hy = ty.at(iy);
        cz.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        for bb in 0..w {
            for cc in 0..w - bb {
                cz[cc] += b[bb * w + cc] * hy[bb];
            }
        }
        let row = &mut out[iy * np..(iy + 1) * np];
        for (iz, o) in row.iter_mut().enumerate() {
            let hz = tz.at(iz);
            let mut acc = C64::new(0.0, 0.0);
            for cc in 0..w {
                acc += cz[cc] * hz[cc];
            }
            *o = acc;
        }
    }
}

/// Trapezoid overlap matrix `S_nm = Σ_i w_i h_n(x_i) h_m(x_i)`.
pub fn axis_overlap(grid: &Grid3, n_max: usize) -> Vec<f64> {
    let t = HermiteTable::new(n_max, &grid.axis());
    overlap_matrix(grid, &t)
}

fn overlap_matrix(grid: &Grid3, t: &HermiteTable) -> Vec<f64> {
    let w = t.n_max() + 1;
    let wt = grid.weights();
    let mut s = vec![0.0; w * w];
    for (i, wi) in wt.iter().enumerate() {
        let h = t.at(i);
        for n in 0..w {
            for m in n..w {
                s[n * w + m] += wi * h[n] * h[m];
            }
        }
    }
    for n in 0..w {
        for m in 0..n {
            s[n * w + m] = s[m * w + n];
        }
    }
    s
}

/// Collapses a state onto `(N_x,N_y,N_z)` labels, summing over `N_n`
/// coherently, and returns the coefficient tensor.
pub fn collapse_xyz(state: &StateVector) -> Vec<C64> {
    let sx = state.to_basis(ModeBasis::Xyzn);
    let space = sx.space();
    let w = space.n_max() + 1;
    let mut coef = vec![C64::new(0.0, 0.0); w * w * w];
    for (i, a) in sx.amplitudes().iter().enumerate() {
        let o = space.occ(i);
        coef[(o[0] as usize * w + o[1] as usize) * w + o[2] as usize] += a;
    }
    coef
}

/// Wavefield of a normalized state. States in another basis are first
/// carried to xyzn.
pub fn state_to_wavefield(state: &StateVector, grid: &Grid3) -> Result<WaveField> {
    if !state.is_normalized(1e-10) {
        return Err(Error::Validation(format!("state norm {} is not 1", state.norm())));
    }
    coefficients_to_wavefield(state, grid)
}

/// As [`state_to_wavefield`] without the normalization requirement.
pub fn coefficients_to_wavefield(state: &StateVector, grid: &Grid3) -> Result<WaveField> {
    WaveField::from_coefficients(*grid, state.space().n_max(), collapse_xyz(state))
}

fn overlap_unchecked(f: &WaveField, g: &WaveField) -> C64 {
    let n = f.n_max.max(g.n_max);
    let table = if f.n_max >= g.n_max { &f.table } else { &g.table };
    let s = overlap_matrix(&f.grid, table);
    let w = n + 1;
    let terms = |fld: &WaveField| -> Vec<([usize; 3], C64)> {
        let fw = fld.n_max + 1;
        let mut v = Vec::new();
        for a in 0..fw {
            for b in 0..fw - a {
                for c in 0..fw - a - b {
                    let z = fld.coef[(a * fw + b) * fw + c];
                    if z != C64::new(0.0, 0.0) {
                        v.push(([a, b, c], z));
                    }
                }
            }
        }
        v
    };
    let (tf, tg) = (terms(f), terms(g));
    let mut acc = C64::new(0.0, 0.0);
    for (p, x) in &tf {
        for (q, y) in &tg {
            let k = s[p[0] * w + q[0]] * s[p[1] * w + q[1]] * s[p[2] * w + q[2]];
            acc += x.conj() * y * k;
        }
    }
    acc
}

/// Trapezoid-rule `⟨f|g⟩` on the shared grid.
///
/// The product trapezoid weights factor per axis, so the sum over grid
/// points reduces to per-axis overlap matrices.
pub fn quadrature_overlap(f: &WaveField, g: &WaveField) -> Result<C64> {
    if !f.grid.same_as(&g.grid) {
        return Err(Error::GridMismatch(format!(
            "L={} h={} vs L={} h={}",
            f.grid.extent(),
            f.grid.step(),
            g.grid.extent(),
            g.grid.step()
        )));
    }
    Ok(overlap_unchecked(f, g))
}
