use serde::Serialize;
use std::ops::{Add, Mul, Sub};

/// Oriented lines `(i,j,k)` with `e_i e_j = e_k`.
pub const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 3], [2, 4, 6], [4, 3, 5], [3, 6, 7], [6, 5, 1], [5, 7, 2], [4, 7, 1]];

/// Associator entries listed as `+1` in the source table.
pub const PRINTED_EPS4: [[usize; 4]; 7] = [
    [1, 2, 4, 7],
    [1, 2, 6, 5],
    [2, 3, 4, 5],
    [2, 3, 7, 6],
    [3, 1, 4, 6],
    [3, 1, 5, 7],
    [4, 5, 7, 6],
];

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Octonion {
    pub r: [f64; 8],
}

impl Octonion {
    pub fn new(r: [f64; 8]) -> Self {
        Octonion { r }
    }
    pub fn unit(i: usize) -> Self {
        let mut r = [0.0; 8];
        r[i] = 1.0;
        Octonion { r }
    }
    pub fn conj(&self) -> Self {
        let mut r = self.r.map(|x| -x);
        r[0] = self.r[0];
        Octonion { r }
    }
    pub fn norm(&self) -> f64 {
        self.r.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
    pub fn scale(&self, s: f64) -> Self {
        Octonion { r: self.r.map(|x| x * s) }
    }
    pub fn max_abs(&self) -> f64 {
        self.r.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, o: Octonion) -> Octonion {
        Octonion {
            r: std::array::from_fn(|i| self.r[i] + o.r[i]),
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, o: Octonion) -> Octonion {
        Octonion {
            r: std::array::from_fn(|i| self.r[i] - o.r[i]),
        }
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, o: Octonion) -> Octonion {
        oct_mul(&self, &o)
    }
}

/// Totally antisymmetric `ε̃_ijk` on indices `1..=7`.
#[derive(Clone, Debug)]
pub struct FanoTable {
    eps3: [[[i8; 8]; 8]; 8],
}

impl Default for FanoTable {
    fn default() -> Self {
        Self::new()
    }
}

impl FanoTable {
    pub fn new() -> Self {
        let mut eps3 = [[[0i8; 8]; 8]; 8];
        for [i, j, k] in FANO_LINES {
            for (a, b, c, s) in [(i, j, k, 1), (j, k, i, 1), (k, i, j, 1), (j, i, k, -1), (i, k, j, -1), (k, j, i, -1)] {
                eps3[a][b][c] = s;
            }
        }
        FanoTable { eps3 }
    }

    pub fn eps3(&self, i: usize, j: usize, k: usize) -> i8 {
        self.eps3[i][j][k]
    }

    /// Number of lines through each unordered pair `{i,j}`, `i < j`.
    pub fn pair_coverage(&self) -> Vec<((usize, usize), usize)> {
        let mut out = Vec::new();
        for i in 1..8 {
            for j in i + 1..8 {
                let n = FANO_LINES.iter().filter(|l| l.contains(&i) && l.contains(&j)).count();
                out.push(((i, j), n));
            }
        }
        out
    }

    /// Lines `(i,j,k)` with `i<j<k` and `ε̃_ijk = +1`.
    pub fn positive_lines(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in 1..8 {
            for j in i + 1..8 {
                for k in j + 1..8 {
                    let s = self.eps3[i][j][k];
                    if s != 0 {
                        out.push(if s > 0 { [i, j, k] } else { [j, i, k] });
                    }
                }
            }
        }
        out
    }
}

fn table() -> &'static FanoTable {
    static T: std::sync::OnceLock<FanoTable> = std::sync::OnceLock::new();
    T.get_or_init(FanoTable::new)
}

/// `e_i e_j = −δ_ij + ε̃_ijk e_k`, `e_0` the unit.
pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let t = table();
    let (a, b) = (&x.r, &y.r);
    let mut z = [0.0; 8];
    z[0] = a[0] * b[0];
    for i in 1..8 {
        z[0] -= a[i] * b[i];
        z[i] += a[0] * b[i] + a[i] * b[0];
    }
    for i in 1..8 {
        if a[i] == 0.0 {
            continue;
        }
        for j in 1..8 {
            if i == j || b[j] == 0.0 {
                continue;
            }
            for (k, zk) in z.iter_mut().enumerate().skip(1) {
                let s = t.eps3[i][j][k];
                if s != 0 {
                    *zk += s as f64 * a[i] * b[j];
                }
            }
        }
    }
    Octonion { r: z }
}

/// `(xy)z − x(yz)`
pub fn associator(x: &Octonion, y: &Octonion, z: &Octonion) -> Octonion {
    oct_mul(&oct_mul(x, y), z) - oct_mul(x, &oct_mul(y, z))
}

#[derive(Clone, Debug, Serialize)]
pub struct Eps4Entry {
    pub indices: [usize; 4],
    pub printed: f64,
    pub computed: f64,
}

/// `ε̄` derived from the multiplication rule, and its comparison with the
/// printed list.
#[derive(Clone, Debug, Serialize)]
pub struct Eps4Report {
    /// `ε̄_ijkl` at `((i*8+j)*8+k)*8+l`
    #[serde(skip)]
    pub eps4: Vec<f64>,
    /// nonzero entries with increasing indices and their sign
    pub computed_nonzero: Vec<([usize; 4], f64)>,
    /// every printed entry whose computed value is not `+1`
    pub discrepancies: Vec<Eps4Entry>,
    /// largest real part seen in a basis associator (expected 0)
    pub real_part_max: f64,
    /// max |ε̄ + ε̄ with two indices swapped| over all swaps
    pub antisymmetry_defect: f64,
}

impl Eps4Report {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.eps4[((i * 8 + j) * 8 + k) * 8 + l]
    }
}

/// `ε̄_ijkl = −½ {e_i,e_j,e_k}_l`.
pub fn derive_eps4() -> Eps4Report {
    let mut eps4 = vec![0.0; 8 * 8 * 8 * 8];
    let mut real_part_max: f64 = 0.0;
    for i in 1..8 {
        for j in 1..8 {
            for k in 1..8 {
                let a = associator(&Octonion::unit(i), &Octonion::unit(j), &Octonion::unit(k));
                real_part_max = real_part_max.max(a.r[0].abs());
                for l in 1..8 {
                    eps4[((i * 8 + j) * 8 + k) * 8 + l] = -0.5 * a.r[l];
                }
            }
        }
    }
    let at = |i: usize, j: usize, k: usize, l: usize| eps4[((i * 8 + j) * 8 + k) * 8 + l];
    let mut antisymmetry_defect: f64 = 0.0;
    for i in 1..8 {
        for j in 1..8 {
            for k in 1..8 {
                for l in 1..8 {
                    let v = at(i, j, k, l);
                    for w in [at(j, i, k, l), at(i, k, j, l), at(i, j, l, k)] {
                        antisymmetry_defect = antisymmetry_defect.max((v + w).abs());
                    }
                }
            }
        }
    }
    let mut computed_nonzero = Vec::new();
    for i in 1..8 {
        for j in i + 1..8 {
            for k in j + 1..8 {
                for l in k + 1..8 {
                    let v = at(i, j, k, l);
                    if v.abs() > 1e-12 {
                        computed_nonzero.push(([i, j, k, l], v));
                    }
                }
            }
        }
    }
    let discrepancies = PRINTED_EPS4
        .iter()
        .map(|&[i, j, k, l]| Eps4Entry {
            indices: [i, j, k, l],
            printed: 1.0,
            computed: at(i, j, k, l),
        })
        .filter(|e| (e.computed - e.printed).abs() > 1e-12)
        .collect();
    Eps4Report {
        eps4,
        computed_nonzero,
        discrepancies,
        real_part_max,
        antisymmetry_defect,
    }
}
