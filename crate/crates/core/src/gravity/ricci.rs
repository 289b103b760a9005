use super::{GravitonState, ETA};
use crate::error::{Error, Result};
use crate::exec;
use crate::fock::{FockSpace, ModeBasis, StateVector};
use crate::linalg::{c, vec_norm, C64};
use crate::manybody::{MultiObjectState, ObjectRegistry};
use crate::modeops::{apply_four_momentum, QuadratureSet};
use nalgebra::Matrix4;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

const TERMS_TEXT: &str = include_str!("../../data/ricci_terms_v1.txt");

/// Index letters in the term file, in slot order. `m`, `n` are free.
pub const INDEX_LETTERS: [char; 6] = ['m', 'n', 'r', 's', 'k', 'l'];

/// One metric factor of a term.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciFactor {
    /// upper-index metric `g^{ij}` (else lower `g_{ij}`)
    pub upper: bool,
    /// index slots into [`INDEX_LETTERS`]
    pub indices: [u8; 2],
    /// lower derivative indices in printed order; applied right to left
    pub derivs: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RicciTerm {
    pub coeff: f64,
    /// factor `j` belongs to graviton `j`
    pub factors: Vec<RicciFactor>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RicciTermList {
    pub prefactor: f64,
    pub terms: Vec<RicciTerm>,
}

impl RicciTerm {
    /// Dummy slots used by this term, ascending.
    pub fn dummies(&self) -> Vec<u8> {
        let mut d: Vec<u8> = self
            .factors
            .iter()
            .flat_map(|f| f.indices.iter().chain(&f.derivs).copied())
            .filter(|&i| i >= 2)
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Every index assignment with `m = μ`, `n = ν`.
    pub fn assignments(&self, mu: usize, nu: usize) -> Vec<[usize; 6]> {
        let d = self.dummies();
        let mut out = Vec::with_capacity(1 << (2 * d.len()));
        for code in 0..(1usize << (2 * d.len())) {
            let mut v = [mu, nu, 0, 0, 0, 0];
            for (k, &slot) in d.iter().enumerate() {
                v[slot as usize] = (code >> (2 * k)) & 3;
            }
            out.push(v);
        }
        out
    }
}

fn parse_coeff(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((a, b)) => Some(a.parse::<f64>().ok()? / b.parse::<f64>().ok()?),
        None => s.parse().ok(),
    }
}

fn format_coeff(x: f64) -> String {
    let twice = x * 2.0;
    if twice.fract() == 0.0 && x.fract() != 0.0 {
        format!("{:+}/2", twice as i64)
    } else if x.fract() == 0.0 {
        format!("{:+}", x as i64)
    } else {
        format!("{x:+e}")
    }
}

fn slot(ch: char) -> Option<u8> {
    INDEX_LETTERS.iter().position(|&l| l == ch).map(|p| p as u8)
}

impl RicciTermList {
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |line: &str, why: &str| Error::Parse(format!("ricci term `{line}`: {why}"));
        let mut prefactor = None;
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("prefactor") {
                prefactor = Some(parse_coeff(rest.trim()).ok_or_else(|| bad(line, "prefactor"))?);
                continue;
            }
            let mut parts = line.split('|').map(str::trim);
            let coeff = parse_coeff(parts.next().unwrap_or("")).ok_or_else(|| bad(line, "coefficient"))?;
            let mut factors = Vec::new();
            for p in parts {
                let mut toks = p.split_whitespace();
                let upper = match toks.next() {
                    Some("U") => true,
                    Some("L") => false,
                    _ => return Err(bad(line, "factor kind")),
                };
                let idx: Vec<u8> = toks
                    .next()
                    .ok_or_else(|| bad(line, "indices"))?
                    .chars()
                    .map(slot)
                    .collect::<Option<_>>()
                    .ok_or_else(|| bad(line, "index letter"))?;
                if idx.len() != 2 {
                    return Err(bad(line, "need two metric indices"));
                }
                let derivs = toks
                    .map(|t| {
                        let mut ch = t.chars();
                        match (ch.next(), ch.next(), ch.next()) {
                            (Some('d'), Some(l), None) => slot(l),
                            _ => None,
                        }
                    })
                    .collect::<Option<Vec<u8>>>()
                    .ok_or_else(|| bad(line, "derivative"))?;
                factors.push(RicciFactor {
                    upper,
                    indices: [idx[0], idx[1]],
                    derivs,
                });
            }
            if factors.len() != 2 && factors.len() != 4 {
                return Err(bad(line, "a term has 2 or 4 factors"));
            }
            let t = RicciTerm { coeff, factors };
            // each dummy appears exactly twice, each free index once
            let mut count = [0usize; 6];
            for f in &t.factors {
                for &i in f.indices.iter().chain(&f.derivs) {
                    count[i as usize] += 1;
                }
            }
            if count[0] != 1 || count[1] != 1 || count[2..].iter().any(|&k| k != 0 && k != 2) {
                return Err(bad(line, "index wiring"));
            }
            terms.push(t);
        }
        Ok(RicciTermList {
            prefactor: prefactor.ok_or_else(|| Error::Parse("ricci terms: missing prefactor".into()))?,
            terms,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("# urfock ricci terms v1\n");
        let _ = writeln!(s, "prefactor {}", format_coeff(self.prefactor).trim_start_matches('+'));
        for t in &self.terms {
            s.push_str(&format_coeff(t.coeff));
            for f in &t.factors {
                let _ = write!(
                    s,
                    " | {} {}{}",
                    if f.upper { 'U' } else { 'L' },
                    INDEX_LETTERS[f.indices[0] as usize],
                    INDEX_LETTERS[f.indices[1] as usize]
                );
                for &d in &f.derivs {
                    let _ = write!(s, " d{}", INDEX_LETTERS[d as usize]);
                }
            }
            s.push('\n');
        }
        s
    }
}

/// The bundled term list of the vacuum field equation.
pub fn ricci_terms() -> &'static RicciTermList {
    static CELL: OnceLock<RicciTermList> = OnceLock::new();
    CELL.get_or_init(|| RicciTermList::parse(TERMS_TEXT).expect("bundled ricci terms parse"))
}

// ---- classical level ------------------------------------------------------

/// A metric field `x ↦ g_{μν}(x)` with lower indices.
pub type MetricField<'a> = &'a (dyn Fn([f64; 4]) -> Matrix4<f64> + Sync);

/// Metric, inverse and their first two derivatives at a point, by central
/// differences with step `h`.
#[derive(Clone, Debug)]
pub struct MetricJet {
    pub g: Matrix4<f64>,
    pub ginv: Matrix4<f64>,
    pub dg: [Matrix4<f64>; 4],
    pub dginv: [Matrix4<f64>; 4],
    pub ddg: [[Matrix4<f64>; 4]; 4],
    pub ddginv: [[Matrix4<f64>; 4]; 4],
}

fn shift(x: [f64; 4], a: usize, s: f64) -> [f64; 4] {
    let mut y = x;
    y[a] += s;
    y
}

fn inverse(g: &Matrix4<f64>) -> Result<Matrix4<f64>> {
    if g.determinant().abs() < 1e-12 {
        return Err(Error::Numerical("singular metric".into()));
    }
    g.try_inverse().ok_or_else(|| Error::Numerical("singular metric".into()))
}

fn jet_of<F: Fn([f64; 4]) -> Result<Matrix4<f64>>>(
    f: F,
    x: [f64; 4],
    h: f64,
) -> Result<(Matrix4<f64>, [Matrix4<f64>; 4], [[Matrix4<f64>; 4]; 4])> {
    let f0 = f(x)?;
    let mut d = [Matrix4::zeros(); 4];
    let mut dd = [[Matrix4::zeros(); 4]; 4];
    for a in 0..4 {
        let (p, m) = (f(shift(x, a, h))?, f(shift(x, a, -h))?);
        d[a] = (p - m) / (2.0 * h);
        dd[a][a] = (p - f0 * 2.0 + m) / (h * h);
        for b in 0..a {
            let pp = f(shift(shift(x, a, h), b, h))?;
            let pm = f(shift(shift(x, a, h), b, -h))?;
            let mp = f(shift(shift(x, a, -h), b, h))?;
            let mm = f(shift(shift(x, a, -h), b, -h))?;
            dd[a][b] = (pp - pm - mp + mm) / (4.0 * h * h);
            dd[b][a] = dd[a][b];
        }
    }
    Ok((f0, d, dd))
}

pub fn metric_jet(metric: MetricField, x: [f64; 4], h: f64) -> Result<MetricJet> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Validation(format!("step must be positive, got {h}")));
    }
    let (g, dg, ddg) = jet_of(|y| Ok(metric(y)), x, h)?;
    let (ginv, dginv, ddginv) = jet_of(|y| inverse(&metric(y)), x, h)?;
    Ok(MetricJet {
        g,
        ginv,
        dg,
        dginv,
        ddg,
        ddginv,
    })
}

impl MetricJet {
    fn factor(&self, f: &RicciFactor, v: &[usize; 6]) -> f64 {
        let (i, j) = (v[f.indices[0] as usize], v[f.indices[1] as usize]);
        let d: Vec<usize> = f.derivs.iter().map(|&s| v[s as usize]).collect();
        let (m0, m1, m2) = if f.upper {
            (&self.ginv, &self.dginv, &self.ddginv)
        } else {
            (&self.g, &self.dg, &self.ddg)
        };
        match d.as_slice() {
            [] => m0[(i, j)],
            [a] => m1[*a][(i, j)],
            [a, b] => m2[*a][*b][(i, j)],
            _ => unreachable!("at most two derivatives per factor"),
        }
    }
}

/// `R_{μν}` from the term list with commuting classical fields.
pub fn evaluate_terms_classical(list: &RicciTermList, jet: &MetricJet) -> Result<Matrix4<f64>> {
    if list.terms.iter().flat_map(|t| &t.factors).any(|f| f.derivs.len() > 2) {
        return Err(Error::Capability("classical evaluator handles at most two derivatives per factor".into()));
    }
    let mut r = Matrix4::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            let mut acc = 0.0;
            for t in &list.terms {
                let mut s = 0.0;
                for v in t.assignments(mu, nu) {
                    s += t.factors.iter().map(|f| jet.factor(f, &v)).product::<f64>();
                }
                acc += t.coeff * s;
            }
            r[(mu, nu)] = list.prefactor * acc;
        }
    }
    Ok(r)
}

/// `Γ^ρ_{μν}` at `x`, derivatives of `g` by central differences.
fn christoffel(metric: MetricField, x: [f64; 4], h: f64) -> Result<[Matrix4<f64>; 4]> {
    let ginv = inverse(&metric(x))?;
    let dg: Vec<Matrix4<f64>> = (0..4)
        .map(|a| (metric(shift(x, a, h)) - metric(shift(x, a, -h))) / (2.0 * h))
        .collect();
    let mut out = [Matrix4::zeros(); 4];
    for (r, gam) in out.iter_mut().enumerate() {
        for m in 0..4 {
            for n in 0..4 {
                let mut s = 0.0;
                for l in 0..4 {
                    s += ginv[(r, l)] * (dg[m][(n, l)] + dg[n][(m, l)] - dg[l][(m, n)]);
                }
                gam[(m, n)] = 0.5 * s;
            }
        }
    }
    Ok(out)
}

/// Finite-difference Ricci tensor at `x`:
/// `R_{μν} = ∂_μΓ^ρ_{ρν} − ∂_ρΓ^ρ_{μν} + Γ^λ_{μν}Γ^ρ_{ρλ} − Γ^λ_{ρν}Γ^ρ_{μλ}`,
/// with `Γ` itself from central differences of `g`.
pub fn classical_ricci_oracle(metric: MetricField, x: [f64; 4], h: f64) -> Result<Matrix4<f64>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Validation(format!("step must be positive, got {h}")));
    }
    let gam = christoffel(metric, x, h)?;
    // dgam[a][r] = ∂_a Γ^r
    let mut dgam = [[Matrix4::zeros(); 4]; 4];
    for (a, row) in dgam.iter_mut().enumerate() {
        let p = christoffel(metric, shift(x, a, h), h)?;
        let m = christoffel(metric, shift(x, a, -h), h)?;
        for r in 0..4 {
            row[r] = (p[r] - m[r]) / (2.0 * h);
        }
    }
    let mut out = Matrix4::zeros();
    for m in 0..4 {
        for n in 0..4 {
            let mut s = 0.0;
            for r in 0..4 {
                s += dgam[m][r][(r, n)] - dgam[r][r][(m, n)];
                for l in 0..4 {
                    s += gam[l][(m, n)] * gam[r][(r, l)] - gam[l][(r, n)] * gam[r][(m, l)];
                }
            }
            out[(m, n)] = s;
        }
    }
    Ok(out)
}

/// Both routes on a set of points: `(oracle, term list)` per point.
pub fn classical_ricci_field(
    metric: MetricField,
    points: &[[f64; 4]],
    h: f64,
) -> Result<Vec<(Matrix4<f64>, Matrix4<f64>)>> {
    let list = ricci_terms();
    exec::map_slice(points, |&x| {
        let oracle = classical_ricci_oracle(metric, x, h)?;
        let terms = evaluate_terms_classical(list, &metric_jet(metric, x, h)?)?;
        Ok((oracle, terms))
    })
    .into_iter()
    .collect()
}

// ---- quantized level ------------------------------------------------------

/// The quantized `R^ψ_{μν}` for one index pair.
///
/// Every term is an equal-label product, so each lives on the diagonal
/// `|N⟩^{⊗M}` of the 2- or 4-object product space and is stored as a
/// vector over the shared label `N`. Two- and four-object states are
/// orthogonal sectors, and the norm is taken over their direct sum.
#[derive(Clone, Debug)]
pub struct QuantizedRicci {
    pub mu: usize,
    pub nu: usize,
    /// term contributions including coefficient and prefactor
    pub per_term: Vec<Vec<C64>>,
    /// sum of the two-factor terms
    pub bilinear: Vec<C64>,
    /// sum of the four-factor terms
    pub quartic: Vec<C64>,
    pub norm: f64,
    space: Arc<FockSpace>,
}

impl QuantizedRicci {
    fn diagonal_state(&self, m: usize, diag: &[C64]) -> Result<MultiObjectState> {
        let reg = ObjectRegistry::new(m, &self.space)?;
        let mut st = MultiObjectState::zeros(&reg, ModeBasis::Upper);
        for (n, &a) in diag.iter().enumerate() {
            st.amp[reg.index(&vec![n; m])] = a;
        }
        Ok(st)
    }

    /// Two-object part as an explicit state.
    pub fn bilinear_state(&self) -> Result<MultiObjectState> {
        self.diagonal_state(2, &self.bilinear)
    }

    /// Four-object part as an explicit state (subject to the product cap).
    pub fn quartic_state(&self) -> Result<MultiObjectState> {
        self.diagonal_state(4, &self.quartic)
    }
}

/// Lower-index four-momentum `𝒫_a ψ = η_aa 𝒫^a ψ`, applied right to left.
fn momentum_chain(q: &QuadratureSet, psi: &StateVector, derivs: &[usize]) -> Result<Vec<C64>> {
    let mut s = psi.clone();
    for &a in derivs.iter().rev() {
        s = apply_four_momentum(q, &s, a)?.scaled(c(ETA[a]));
    }
    Ok(s.into_amplitudes())
}

/// Evaluates the term list on four gravitons. Factor `j` of a term is
/// graviton `j`; lower-index metric components are `η g η`, and momentum
/// indices are lowered with `η`.
pub fn evaluate_quantized_ricci(
    gravitons: &[GravitonState; 4],
    mu: usize,
    nu: usize,
    q: &QuadratureSet,
) -> Result<QuantizedRicci> {
    evaluate_with_terms(ricci_terms(), gravitons, mu, nu, q)
}

pub fn evaluate_with_terms(
    list: &RicciTermList,
    gravitons: &[GravitonState; 4],
    mu: usize,
    nu: usize,
    q: &QuadratureSet,
) -> Result<QuantizedRicci> {
    if mu > 3 || nu > 3 {
        return Err(Error::Validation(format!("index pair ({mu},{nu}) out of range")));
    }
    for g in gravitons {
        gravitons[0].state.check_compatible(&g.state)?;
        if g.state.space().as_ref() != q.space().as_ref() {
            return Err(Error::Validation("graviton lives in a different space".into()));
        }
    }
    let space = q.space().clone();
    let states: Vec<StateVector> = gravitons.iter().map(|g| g.state.to_basis(ModeBasis::Upper)).collect();
    let lowered: Vec<[[f64; 4]; 4]> = gravitons.iter().map(|g| g.metric.lowered()).collect();

    // momentum images needed by the term list
    let mut need: Vec<(usize, Vec<usize>)> = Vec::new();
    for t in &list.terms {
        for v in t.assignments(mu, nu) {
            for (j, f) in t.factors.iter().enumerate() {
                let key = (j, f.derivs.iter().map(|&s| v[s as usize]).collect::<Vec<_>>());
                if !need.contains(&key) {
                    need.push(key);
                }
            }
        }
    }
    let images: Vec<Vec<C64>> = exec::map_slice(&need, |(j, d)| momentum_chain(q, &states[*j], d))
        .into_iter()
        .collect::<Result<_>>()?;
    let cache: HashMap<(usize, Vec<usize>), Vec<C64>> = need.into_iter().zip(images).collect();

    let dim = space.dim();
    let per_term: Vec<Vec<C64>> = exec::map_slice(&list.terms, |t| {
        let mut acc = vec![c(0.0); dim];
        for v in t.assignments(mu, nu) {
            let mut w = list.prefactor * t.coeff;
            let mut vecs = Vec::with_capacity(t.factors.len());
            for (j, f) in t.factors.iter().enumerate() {
                let (a, b) = (v[f.indices[0] as usize], v[f.indices[1] as usize]);
                w *= if f.upper { gravitons[j].metric.g[a][b] } else { lowered[j][a][b] };
                vecs.push(&cache[&(j, f.derivs.iter().map(|&s| v[s as usize]).collect::<Vec<_>>())]);
            }
            if w == 0.0 {
                continue;
            }
            for (n, slot) in acc.iter_mut().enumerate() {
                let p: C64 = vecs.iter().map(|x| x[n]).product();
                *slot += p * w;
            }
        }
        acc
    });

    let mut bilinear = vec![c(0.0); dim];
    let mut quartic = vec![c(0.0); dim];
    for (t, v) in list.terms.iter().zip(&per_term) {
        let target = if t.factors.len() == 2 { &mut bilinear } else { &mut quartic };
        for (a, b) in target.iter_mut().zip(v) {
            *a += b;
        }
    }
    let norm = (vec_norm(&bilinear).powi(2) + vec_norm(&quartic).powi(2)).sqrt();
    Ok(QuantizedRicci {
        mu,
        nu,
        per_term,
        bilinear,
        quartic,
        norm,
        space,
    })
}

/// `max_N |R_{μν}(N) − R_{νμ}(N)|` over all pairs, with the worst pair.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct RicciAsymmetry {
    pub max_abs: f64,
    pub pair: (usize, usize),
    /// `max_abs` over the largest residual norm
    pub relative: f64,
}

pub fn ricci_asymmetry(gravitons: &[GravitonState; 4], q: &QuadratureSet) -> Result<RicciAsymmetry> {
    let mut all = Vec::with_capacity(16);
    for mu in 0..4 {
        for nu in 0..4 {
            all.push(evaluate_quantized_ricci(gravitons, mu, nu, q)?);
        }
    }
    let scale = all.iter().map(|r| r.norm).fold(0.0, f64::max);
    let mut best = RicciAsymmetry {
        max_abs: 0.0,
        pair: (0, 0),
        relative: 0.0,
    };
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let (a, b) = (&all[mu * 4 + nu], &all[nu * 4 + mu]);
            let d = a
                .bilinear
                .iter()
                .zip(&b.bilinear)
                .chain(a.quartic.iter().zip(&b.quartic))
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            if d > best.max_abs {
                best.max_abs = d;
                best.pair = (mu, nu);
            }
        }
    }
    best.relative = if scale > 0.0 { best.max_abs / scale } else { 0.0 };
    Ok(best)
}
