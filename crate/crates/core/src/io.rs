//! State files: `# urfock state v1 n_max=<n>` then `N_A N_B N_C N_D re im`
//! per nonzero ABCD amplitude. Graviton specs: `# urfock graviton v1`, then
//! `u1 = a b c d`, `u2`, `v1`, `v2` and `state = <path>`.

use crate::error::{Error, Result};
use crate::fock::{FockSpace, ModeBasis, Occupation, StateVector};
use crate::internal::UrSpinor;
use crate::linalg::C64;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

const HEADER: &str = "# urfock state v1 n_max=";
const GRAVITON_HEADER: &str = "# urfock graviton v1";

/// Writes the nonzero amplitudes in rank order. Floats use the shortest
/// round-trip form, so reading back is exact.
pub fn write_state(state: &StateVector) -> String {
    let s = state.to_basis(ModeBasis::Upper);
    let mut out = format!("{HEADER}{}\n", s.space().n_max());
    for (i, a) in s.amplitudes().iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let o = s.space().occ(i);
        let _ = writeln!(out, "{} {} {} {} {:?} {:?}", o[0], o[1], o[2], o[3], a.re, a.im);
    }
    out
}

/// Parses a state file into the ABCD basis. Repeated labels are an error.
pub fn read_state(text: &str) -> Result<StateVector> {
    let mut lines = text.lines();
    let head = lines.next().unwrap_or("").trim();
    let n_max: usize = head
        .strip_prefix(HEADER)
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad state header `{head}`")))?;
    let space: Arc<FockSpace> = FockSpace::new(n_max)?;
    let mut amp = vec![C64::new(0.0, 0.0); space.dim()];
    let mut seen = vec![false; space.dim()];
    for (no, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("state line {}: `{line}`", no + 2));
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 6 {
            return Err(bad());
        }
        let mut n = [0u16; 4];
        for k in 0..4 {
            n[k] = t[k].parse().map_err(|_| bad())?;
        }
        let re: f64 = t[4].parse().map_err(|_| bad())?;
        let im: f64 = t[5].parse().map_err(|_| bad())?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(bad());
        }
        let i = space
            .rank(Occupation::new(n))
            .ok_or_else(|| Error::Validation(format!("label {n:?} outside n_max={n_max}")))?;
        if seen[i] {
            return Err(Error::Parse(format!("label {n:?} repeated")));
        }
        seen[i] = true;
        amp[i] = C64::new(re, im);
    }
    StateVector::from_amplitudes(&space, ModeBasis::Upper, amp)
}

/// Spinors `u1, u2, v1, v2` of one graviton and its coefficient file, as
/// written (relative paths are left to the caller).
#[derive(Clone, Debug, PartialEq)]
pub struct GravitonSpec {
    pub spinors: [UrSpinor; 4],
    pub state: PathBuf,
}

pub fn read_graviton_spec(text: &str) -> Result<GravitonSpec> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(GRAVITON_HEADER) {
        return Err(Error::Parse("bad graviton header".into()));
    }
    let names = ["u1", "u2", "v1", "v2"];
    let mut spinors: [Option<UrSpinor>; 4] = [None; 4];
    let mut state = None;
    for line in lines {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("graviton line `{line}`")))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "state" {
            state = Some(PathBuf::from(v));
            continue;
        }
        let slot = names
            .iter()
            .position(|&n| n == k)
            .ok_or_else(|| Error::Parse(format!("unknown graviton key `{k}`")))?;
        let x: Vec<f64> = v
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad spinor `{v}`")))?;
        if x.len() != 4 || x.iter().any(|t| !t.is_finite()) {
            return Err(Error::Parse(format!("spinor {k} needs four finite reals")));
        }
        spinors[slot] = Some(UrSpinor::new(x[0], x[1], x[2], x[3]));
    }
    let mut out = [UrSpinor::zero(); 4];
    for (k, s) in spinors.iter().enumerate() {
        out[k] = s.ok_or_else(|| Error::Parse(format!("graviton spec lacks {}", names[k])))?;
    }
    Ok(GravitonSpec {
        spinors: out,
        state: state.ok_or_else(|| Error::Parse("graviton spec lacks state".into()))?,
    })
}
