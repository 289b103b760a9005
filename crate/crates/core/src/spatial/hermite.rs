/// Orthonormal Hermite function `h_n(x) = π^{−1/4} (2ⁿn!)^{−1/2} H_n(x) e^{−x²/2}`.
///
/// Uses the normalized three-term recurrence, so no factorials or large
/// polynomial values appear.
pub fn hermite_fn(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let next = (2.0 / (k as f64 + 1.0)).sqrt() * x * cur - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `h_0(x), …, h_{n_max}(x)` in one pass.
pub fn hermite_all(n_max: usize, x: f64, out: &mut [f64]) {
    debug_assert!(out.len() > n_max);
    out[0] = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n_max >= 1 {
        out[1] = std::f64::consts::SQRT_2 * x * out[0];
    }
    for k in 1..n_max {
        let kf = k as f64;
        out[k + 1] = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
    }
}

/// Hermite functions tabulated on a set of points, point-major:
/// entry `(i, n)` at `i*(n_max+1)+n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteTable {
    n_max: usize,
    npts: usize,
    vals: Vec<f64>,
}

impl HermiteTable {
    pub fn new(n_max: usize, points: &[f64]) -> Self {
        let w = n_max + 1;
        let mut vals = vec![0.0; points.len() * w];
        for (i, &x) in points.iter().enumerate() {
            hermite_all(n_max, x, &mut vals[i * w..(i + 1) * w]);
        }
        HermiteTable {
            n_max,
            npts: points.len(),
            vals,
        }
    }

    /// Centered second difference `(h_n(x+s) + h_n(x−s) − 2h_n(x))/s²`,
    /// using function values beyond the ends of the point set.
    pub fn second_difference(n_max: usize, points: &[f64], s: f64) -> Self {
        let w = n_max + 1;
        let mut vals = vec![0.0; points.len() * w];
        let mut lo = vec![0.0; w];
        let mut mid = vec![0.0; w];
        let mut hi = vec![0.0; w];
        for (i, &x) in points.iter().enumerate() {
            hermite_all(n_max, x - s, &mut lo);
            hermite_all(n_max, x, &mut mid);
            hermite_all(n_max, x + s, &mut hi);
            for n in 0..w {
                vals[i * w + n] = (hi[n] + lo[n] - 2.0 * mid[n]) / (s * s);
            }
        }
        HermiteTable {
            n_max,
            npts: points.len(),
            vals,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }
    pub fn npts(&self) -> usize {
        self.npts
    }
    #[inline]
    pub fn at(&self, i: usize) -> &[f64] {
        let w = self.n_max + 1;
        &self.vals[i * w..(i + 1) * w]
    }
    #[inline]
    pub fn get(&self, n: usize, i: usize) -> f64 {
        self.vals[i * (self.n_max + 1) + n]
    }
}
