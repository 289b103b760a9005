use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;
use serde::{Deserialize, Serialize};
use std::sync::{Arc, OnceLock};

/// Hard cap on the truncation of the four-mode space.
pub const N_MAX_CAP: usize = 24;

/// Occupation numbers of the four modes, `|N_1,N_2,N_3,N_4⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Occupation(pub [u16; 4]);

impl Occupation {
    pub fn new(n: [u16; 4]) -> Self {
        Occupation(n)
    }
    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }
}

/// Bosonic Fock space over `modes` modes truncated at total occupation `n_max`.
///
/// Basis states are ranked lexicographically over the occupation tuple.
#[derive(Debug)]
pub struct FockSpace {
    modes: usize,
    n_max: usize,
    dim: usize,
    occ: Vec<u16>,
    totals: Vec<u16>,
    // completions[m][s] = number of m-tuples with sum <= s
    completions: Vec<Vec<usize>>,
    pub(crate) cache: SpaceCache,
}

#[derive(Debug, Default)]
pub(crate) struct SpaceCache {
    pub raw_to_upper: OnceLock<CsrMatrix>,
    pub upper_to_xyzn: OnceLock<CsrMatrix>,
}

impl PartialEq for FockSpace {
    fn eq(&self, other: &Self) -> bool {
        self.modes == other.modes && self.n_max == other.n_max
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

impl FockSpace {
    /// The four-mode space of the construction, `dim = C(n_max+4, 4)`.
    pub fn new(n_max: usize) -> Result<Arc<FockSpace>> {
        Self::with_cap(n_max, N_MAX_CAP)
    }

    pub fn with_cap(n_max: usize, cap: usize) -> Result<Arc<FockSpace>> {
        if n_max > cap {
            return Err(Error::Config(format!("n_max={n_max} exceeds cap {cap}")));
        }
        Ok(Arc::new(Self::build(4, n_max)))
    }

    /// General space with an arbitrary number of modes; `max_dim` bounds the
    /// dimension.
    pub fn with_modes(modes: usize, n_max: usize, max_dim: usize) -> Result<Arc<FockSpace>> {
        if modes == 0 {
            return Err(Error::Config("a Fock space needs at least one mode".into()));
        }
        let dim = binomial(n_max + modes, modes);
        if dim > max_dim {
            return Err(Error::Config(format!(
                "space with {modes} modes and n_max={n_max} has dim {dim} > cap {max_dim}"
            )));
        }
        Ok(Arc::new(Self::build(modes, n_max)))
    }

    fn build(modes: usize, n_max: usize) -> FockSpace {
        let completions: Vec<Vec<usize>> = (0..=modes)
            .map(|m| (0..=n_max).map(|s| binomial(s + m, m)).collect())
            .collect();
        let dim = completions[modes][n_max];
        let mut occ = Vec::with_capacity(dim * modes);
        let mut totals = Vec::with_capacity(dim);
        let mut cur = vec![0u16; modes];
        Self::enumerate(&mut cur, 0, n_max, &mut occ, &mut totals);
        debug_assert_eq!(totals.len(), dim);
        FockSpace {
            modes,
            n_max,
            dim,
            occ,
            totals,
            completions,
            cache: SpaceCache::default(),
        }
    }

    fn enumerate(cur: &mut [u16], pos: usize, rem: usize, occ: &mut Vec<u16>, totals: &mut Vec<u16>) {
        if pos == cur.len() {
            occ.extend_from_slice(cur);
            totals.push(cur.iter().sum());
            return;
        }
        for v in 0..=rem {
            cur[pos] = v as u16;
            Self::enumerate(cur, pos + 1, rem - v, occ, totals);
        }
        cur[pos] = 0;
    }

    pub fn modes(&self) -> usize {
        self.modes
    }
    pub fn n_max(&self) -> usize {
        self.n_max
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Occupation tuple of basis state `i`.
    pub fn occ(&self, i: usize) -> &[u16] {
        &self.occ[i * self.modes..(i + 1) * self.modes]
    }

    /// Four-mode occupation of basis state `i` (panics on other mode counts).
    pub fn unrank(&self, i: usize) -> Occupation {
        assert_eq!(self.modes, 4, "unrank to Occupation needs a four-mode space");
        let o = self.occ(i);
        Occupation([o[0], o[1], o[2], o[3]])
    }

    pub fn total(&self, i: usize) -> usize {
        self.totals[i] as usize
    }

    /// Lexicographic rank; `None` if the tuple lies outside the truncation.
    pub fn rank_slice(&self, n: &[u16]) -> Option<usize> {
        if n.len() != self.modes {
            return None;
        }
        let mut rem = self.n_max;
        let mut idx = 0usize;
        for (p, &v) in n.iter().enumerate() {
            let v = v as usize;
            if v > rem {
                return None;
            }
            let tail = self.modes - p - 1;
            for w in 0..v {
                idx += self.completions[tail][rem - w];
            }
            rem -= v;
        }
        Some(idx)
    }

    pub fn rank(&self, n: Occupation) -> Option<usize> {
        self.rank_slice(&n.0)
    }

    /// Basis indices with total occupation `<= n_max - depth`.
    pub fn interior(&self, depth: usize) -> Vec<bool> {
        let lim = self.n_max as isize - depth as isize;
        self.totals.iter().map(|&t| (t as isize) <= lim).collect()
    }

    /// Index of the basis state reached by shifting mode `mode` by `delta`.
    pub fn shifted(&self, i: usize, mode: usize, delta: i32) -> Option<usize> {
        let mut n: Vec<u16> = self.occ(i).to_vec();
        let v = n[mode] as i32 + delta;
        if v < 0 {
            return None;
        }
        n[mode] = v as u16;
        self.rank_slice(&n)
    }
}
