use crate::error::{Error, Result};
use crate::internal::{spinor_to_vector, MajoranaSpinor, UrSpinor};
use nalgebra::Matrix4;
use std::sync::OnceLock;

/// Flat metric `diag(1,−1,−1,−1)`.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

const LONGFORM_TEXT: &str = include_str!("../../data/metric_longform_v1.txt");

/// Correction factors applied to the printed long-form components. The
/// printed `g^{11}` and `g^{22}` carry coefficient 2 on every monomial where
/// the bilinear expansion of `V^1 V^1` and `V^2 V^2` gives 4.
pub const LONGFORM_CORRECTIONS: [((usize, usize), f64); 2] = [((1, 1), 2.0), ((2, 2), 2.0)];

/// Real symmetric `g^{μν}_χ = ½(V_u^μ V_v^ν + V_u^ν V_v^μ)` with
/// `V_u = χ̄_uγχ_u`, `χ_u = (u_g1; iσ²u_g2*)`, likewise for `v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorMetric {
    pub g: [[f64; 4]; 4],
    /// `u_g1, u_g2, v_g1, v_g2`
    pub sources: [UrSpinor; 4],
}

pub fn build_metric(u1: &UrSpinor, u2: &UrSpinor, v1: &UrSpinor, v2: &UrSpinor) -> SpinorMetric {
    let (vu, _) = spinor_to_vector(&MajoranaSpinor::pair(u1, u2));
    let (vv, _) = spinor_to_vector(&MajoranaSpinor::pair(v1, v2));
    let g = std::array::from_fn(|m| std::array::from_fn(|n| 0.5 * (vu[m] * vv[n] + vu[n] * vv[m])));
    SpinorMetric {
        g,
        sources: [*u1, *u2, *v1, *v2],
    }
}

impl SpinorMetric {
    pub fn zero() -> Self {
        let z = UrSpinor::zero();
        build_metric(&z, &z, &z, &z)
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.g[mu][nu]
    }

    /// `g_{μν} = η_{μα}η_{νβ}g^{αβ}`
    pub fn lowered(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|m| std::array::from_fn(|n| ETA[m] * ETA[n] * self.g[m][n]))
    }

    pub fn matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|m, n| self.g[m][n])
    }

    pub fn is_zero(&self) -> bool {
        self.g.iter().flatten().all(|&x| x == 0.0)
    }

    /// Singular values above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.matrix().singular_values().iter().filter(|&&s| s > tol).count()
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let e = self.matrix().symmetric_eigenvalues();
        let mut v = [e[0], e[1], e[2], e[3]];
        v.sort_by(f64::total_cmp);
        v
    }

    /// The printed long-form components evaluated on the source spinors,
    /// with [`LONGFORM_CORRECTIONS`] applied.
    pub fn long_form(&self) -> [[f64; 4]; 4] {
        let mut g = self.long_form_printed();
        for ((m, n), f) in LONGFORM_CORRECTIONS {
            g[m][n] *= f;
        }
        g
    }

    /// The printed long-form components exactly as printed.
    pub fn long_form_printed(&self) -> [[f64; 4]; 4] {
        let vals: Vec<[f64; 4]> = self.sources.iter().map(|s| s.real_parts()).collect();
        let mut g = [[0.0; 4]; 4];
        for t in longform() {
            let mut p = t.coeff;
            for &(src, comp) in &t.factors {
                p *= vals[src][comp];
            }
            g[t.mu][t.nu] += p;
        }
        for m in 0..4 {
            for n in 0..m {
                g[m][n] = g[n][m];
            }
        }
        g
    }

    /// Largest deviation between the long form and the bilinear definition.
    pub fn long_form_defect(&self) -> f64 {
        let lf = self.long_form();
        (0..16).map(|k| (lf[k / 4][k % 4] - self.g[k / 4][k % 4]).abs()).fold(0.0, f64::max)
    }
}

struct LongTerm {
    mu: usize,
    nu: usize,
    coeff: f64,
    /// (source spinor, real component)
    factors: Vec<(usize, usize)>,
}

fn longform() -> &'static [LongTerm] {
    static CELL: OnceLock<Vec<LongTerm>> = OnceLock::new();
    CELL.get_or_init(|| parse_longform(LONGFORM_TEXT).expect("bundled long-form table parses"))
}

/// Number of printed monomials per component `(μ,ν)`, `μ ≤ ν`.
pub fn long_form_term_counts() -> Vec<((usize, usize), usize)> {
    let mut out: Vec<((usize, usize), usize)> = Vec::new();
    for t in longform() {
        match out.iter_mut().find(|(k, _)| *k == (t.mu, t.nu)) {
            Some((_, c)) => *c += 1,
            None => out.push(((t.mu, t.nu), 1)),
        }
    }
    out
}

fn parse_longform(text: &str) -> Result<Vec<LongTerm>> {
    let bad = |line: &str| Error::Parse(format!("long-form line: {line}"));
    let mut out = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let idx = it.next().ok_or_else(|| bad(line))?.as_bytes();
        if idx.len() != 2 {
            return Err(bad(line));
        }
        let (mu, nu) = ((idx[0] - b'0') as usize, (idx[1] - b'0') as usize);
        if mu > 3 || nu > 3 || mu > nu {
            return Err(bad(line));
        }
        let coeff: f64 = it.next().ok_or_else(|| bad(line))?.parse().map_err(|_| bad(line))?;
        let mut factors = Vec::new();
        for f in it {
            // <v>_<s>g<k>
            let b = f.as_bytes();
            if b.len() != 5 || b[1] != b'_' || b[3] != b'g' {
                return Err(bad(line));
            }
            let comp = match b[0] {
                b'a' => 0,
                b'b' => 1,
                b'c' => 2,
                b'd' => 3,
                _ => return Err(bad(line)),
            };
            let side = match b[2] {
                b'u' => 0,
                b'v' => 2,
                _ => return Err(bad(line)),
            };
            let slot = match b[4] {
                b'1' => 0,
                b'2' => 1,
                _ => return Err(bad(line)),
            };
            factors.push((side + slot, comp));
        }
        out.push(LongTerm { mu, nu, coeff, factors });
    }
    Ok(out)
}
