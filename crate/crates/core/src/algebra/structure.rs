use serde::Serialize;

/// Basis element of the abstract 15-dim algebra spanned by the nine
/// `g_k^l` (before the trace condition), `a_m` and `b^m`. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    G(usize, usize),
    A(usize),
    B(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::G(k, l) => 3 * k + l,
            Generator::A(m) => 9 + m,
            Generator::B(m) => 12 + m,
        }
    }
    pub fn from_index(i: usize) -> Self {
        match i {
            0..=8 => Generator::G(i / 3, i % 3),
            9..=11 => Generator::A(i - 9),
            _ => Generator::B(i - 12),
        }
    }
    fn class(self) -> char {
        match self {
            Generator::G(..) => 'g',
            Generator::A(_) => 'a',
            Generator::B(_) => 'b',
        }
    }
}

pub const DIM: usize = 15;

fn d(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

fn eps(i: usize, j: usize, k: usize) -> f64 {
    if i == j || j == k || i == k {
        return 0.0;
    }
    // cyclic (0,1,2) positive
    if (j + 3 - i) % 3 == 1 && (k + 3 - j) % 3 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Bracket constants as printed, extended by antisymmetry to the pairs
/// the printed list does not state directly.
#[derive(Clone, Debug)]
pub struct StructureConstantTable {
    /// `c[i][j]` = coefficients of `[e_i, e_j]`
    c: Vec<Vec<[f64; DIM]>>,
}

impl Default for StructureConstantTable {
    fn default() -> Self {
        Self::printed()
    }
}

impl StructureConstantTable {
    /// The printed relation for an ordered pair, if one is printed in that order.
    pub fn printed_bracket(x: Generator, y: Generator) -> Option<[f64; DIM]> {
        use Generator::*;
        let mut v = [0.0; DIM];
        let r3 = 2.0 / 3f64.sqrt();
        match (x, y) {
            (G(k, l), G(m, n)) => {
                v[G(k, n).index()] += d(m, l);
                v[G(m, l).index()] -= d(k, n);
            }
            (G(k, l), A(m)) => {
                v[A(k).index()] += d(m, l);
                v[A(m).index()] -= d(k, l) / 3.0;
            }
            (G(k, l), B(n)) => {
                v[B(l).index()] -= d(k, n);
                v[B(n).index()] += d(k, l) / 3.0;
            }
            (A(m), B(n)) => {
                v[G(m, n).index()] += 1.0;
            }
            (A(m), A(n)) => {
                for l in 0..3 {
                    v[B(l).index()] -= r3 * eps(m, n, l);
                }
            }
            (B(m), B(n)) => {
                for l in 0..3 {
                    v[A(l).index()] += r3 * eps(m, n, l);
                }
            }
            _ => return None,
        }
        Some(v)
    }

    pub fn printed() -> Self {
        let mut c = vec![vec![[0.0; DIM]; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                let (x, y) = (Generator::from_index(i), Generator::from_index(j));
                c[i][j] = match Self::printed_bracket(x, y) {
                    Some(v) => v,
                    None => Self::printed_bracket(y, x).expect("one order is printed").map(|z| -z),
                };
            }
        }
        StructureConstantTable { c }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> [f64; DIM] {
        self.c[i][j]
    }

    /// Bilinear extension.
    pub fn bracket(&self, x: &[f64; DIM], y: &[f64; DIM]) -> [f64; DIM] {
        let mut out = [0.0; DIM];
        for i in 0..DIM {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..DIM {
                if y[j] == 0.0 {
                    continue;
                }
                let s = x[i] * y[j];
                for (o, v) in out.iter_mut().zip(&self.c[i][j]) {
                    *o += s * v;
                }
            }
        }
        out
    }

    /// Max `|[x,y] + [y,x]|` over basis pairs where both orders are printed.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                let (x, y) = (Generator::from_index(i), Generator::from_index(j));
                if let (Some(p), Some(q)) = (Self::printed_bracket(x, y), Self::printed_bracket(y, x)) {
                    for k in 0..DIM {
                        worst = worst.max((p[k] + q[k]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Max coefficient of `[T, e_i]` for the trace `T = Σ_k g_k^k`.
    pub fn trace_centrality_defect(&self) -> f64 {
        let t = trace_vector();
        let mut worst: f64 = 0.0;
        for i in 0..DIM {
            let mut e = [0.0; DIM];
            e[i] = 1.0;
            worst = self.bracket(&t, &e).iter().fold(worst, |m, v| m.max(v.abs()));
        }
        worst
    }
}

fn trace_vector() -> [f64; DIM] {
    let mut t = [0.0; DIM];
    for k in 0..3 {
        t[Generator::G(k, k).index()] = 1.0;
    }
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    /// max over basis triples of the cyclic sum, all 15 coefficients
    pub max_residual: f64,
    /// same after quotienting by the central trace `Σ g_k^k`
    pub max_residual_mod_trace: f64,
    /// per class of triple (e.g. "gab"), raw and mod-trace maxima
    pub by_class: Vec<(String, f64, f64)>,
    pub worst_triple: (Generator, Generator, Generator),
}

/// Cyclic Jacobi sum over all basis triples.
pub fn jacobi_check(tbl: &StructureConstantTable) -> JacobiReport {
    let t = trace_vector();
    let tn = 3.0;
    let mut classes: std::collections::BTreeMap<String, (f64, f64)> = Default::default();
    let mut max_residual: f64 = 0.0;
    let mut max_mod: f64 = 0.0;
    let mut worst = (Generator::from_index(0), Generator::from_index(0), Generator::from_index(0));
    let unit = |i: usize| {
        let mut e = [0.0; DIM];
        e[i] = 1.0;
        e
    };
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                let (x, y, z) = (unit(i), unit(j), unit(k));
                let a = tbl.bracket(&x, &tbl.bracket(&y, &z));
                let b = tbl.bracket(&y, &tbl.bracket(&z, &x));
                let c = tbl.bracket(&z, &tbl.bracket(&x, &y));
                let r: Vec<f64> = (0..DIM).map(|m| a[m] + b[m] + c[m]).collect();
                let raw = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let along: f64 = r.iter().zip(&t).map(|(u, v)| u * v).sum::<f64>() / tn;
                let modt = r
                    .iter()
                    .zip(&t)
                    .fold(0.0f64, |m, (u, v)| m.max((u - along * v).abs()));
                let (gx, gy, gz) = (Generator::from_index(i), Generator::from_index(j), Generator::from_index(k));
                let mut key: Vec<char> = vec![gx.class(), gy.class(), gz.class()];
                key.sort_by_key(|c| match c {
                    'g' => 0,
                    'a' => 1,
                    _ => 2,
                });
                let e = classes.entry(key.into_iter().collect()).or_insert((0.0, 0.0));
                e.0 = e.0.max(raw);
                e.1 = e.1.max(modt);
                if raw > max_residual {
                    max_residual = raw;
                    worst = (gx, gy, gz);
                }
                max_mod = max_mod.max(modt);
            }
        }
    }
    JacobiReport {
        max_residual,
        max_residual_mod_trace: max_mod,
        by_class: classes.into_iter().map(|(k, (a, b))| (k, a, b)).collect(),
        worst_triple: worst,
    }
}
