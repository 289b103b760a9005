//! The invariant suite behind `urfock check`: one record per check.
//!
//! Sizes follow the config. Fock, operator, Dirac and wave-equation checks
//! run at `n_max`, the energy identity at `n_max + 2`, and the product-space
//! and graviton checks at `min(max(n_max, 1), 2)`. Informational records
//! carry a measured discrepancy and never fail the run. `tol` multiplies the
//! upper-bound tolerances; lower bounds and exact-zero checks are fixed.

use crate::algebra::{
    associator, build_dirac, derive_eps4, g2_closure_report, jacobi_check, oct_mul, FanoTable, G2GeneratorSet,
    Octonion, StructureConstantTable,
};
use crate::config::RunConfig;
use crate::dynamics::{evolve_fock, klein_gordon_residual};
use crate::error::{Error, Result};
use crate::fock::{
    basis_transform, change_basis_xyzn, ladder, mode_transform, xyzn_mixing, binomial, Direction, FockSpace, LadderKind, ModeBasis, Occupation, StateVector,
};
use crate::gravity::{
    build_graviton, build_metric, classical_ricci_oracle, evaluate_quantized_ricci, evaluate_terms_classical,
    metric_jet, ricci_asymmetry, ricci_terms, GravitonState, SpinorMetric,
};
use crate::internal::{dirac_hamiltonian, dirac_kernel, minkowski_dot, spinor_to_vector, MajoranaSpinor, SpinSlot, UrSpinor};
use crate::linalg::{c, expm_hermitian, inner, max_abs, vec_max_abs_diff, C64};
use crate::manybody::{
    build_green_components, evolve_interacting, exchange_sign, free_multibody_check, interaction_apply,
    MultiObjectState, ObjectRegistry, Weight,
};
use crate::modeops::{build_quadratures_with_cap, total_number, QuadratureSet};
use crate::sparse::CsrMatrix;
use crate::spatial::{collapse_xyz, hermite_fn, state_to_wavefield, Grid3};
use nalgebra::{DMatrix, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub module: &'static str,
    pub status: Status,
    pub measured: f64,
    pub tolerance: f64,
    pub paper_anchor: &'static str,
}

#[derive(Clone, Copy)]
enum Bound {
    /// `measured ≤ tol · scale`
    Max(f64),
    /// `measured == 0`
    Zero,
    /// `measured ≥ value`
    Min(f64),
    /// `measured ≤ value`, unscaled
    Cap(f64),
    Info,
}

struct Suite<'a> {
    cfg: &'a RunConfig,
    out: Vec<CheckRecord>,
}

impl Suite<'_> {
    fn run<F: FnOnce() -> Result<f64>>(&mut self, id: &str, module: &'static str, anchor: &'static str, b: Bound, f: F) {
        let (status, measured, tolerance) = match f() {
            Ok(m) => {
                let (ok, tol) = match b {
                    Bound::Max(t) => (m <= t * self.cfg.tol, t * self.cfg.tol),
                    Bound::Zero => (m == 0.0, 0.0),
                    Bound::Min(t) => (m >= t, t),
                    Bound::Cap(t) => (m <= t, t),
                    Bound::Info => (true, 0.0),
                };
                let st = match b {
                    Bound::Info => Status::Info,
                    _ if ok => Status::Pass,
                    _ => Status::Fail,
                };
                (st, m, tol)
            }
            Err(Error::Capability(_)) => (Status::Skipped, f64::NAN, 0.0),
            Err(_) => (if matches!(b, Bound::Info) { Status::Info } else { Status::Fail }, f64::NAN, 0.0),
        };
        self.out.push(CheckRecord {
            id: id.to_string(),
            module,
            status,
            measured,
            tolerance,
            paper_anchor: anchor,
        });
    }
}

fn rng(cfg: &RunConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
}

fn random_state(space: &Arc<FockSpace>, basis: ModeBasis, r: &mut impl Rng) -> Result<StateVector> {
    let amp = (0..space.dim())
        .map(|_| C64::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5))
        .collect();
    StateVector::from_amplitudes(space, basis, amp)?.normalized()
}

fn random_ur(r: &mut impl Rng) -> UrSpinor {
    UrSpinor::new(
        r.random::<f64>() * 2.0 - 1.0,
        r.random::<f64>() * 2.0 - 1.0,
        r.random::<f64>() * 2.0 - 1.0,
        r.random::<f64>() * 2.0 - 1.0,
    )
}

fn random_metric(r: &mut impl Rng) -> SpinorMetric {
    build_metric(&random_ur(r), &random_ur(r), &random_ur(r), &random_ur(r))
}

fn permanent(m: &DMatrix<C64>) -> C64 {
    // Ryser's formula
    let n = m.nrows();
    if n == 0 {
        return c(1.0);
    }
    let mut total = c(0.0);
    for set in 1usize..(1 << n) {
        let mut prod = c(1.0);
        for r in 0..n {
            let s: C64 = (0..n).filter(|&k| set >> k & 1 == 1).map(|k| m[(r, k)]).sum();
            prod *= s;
        }
        let sign = if (n - set.count_ones() as usize) % 2 == 0 { 1.0 } else { -1.0 };
        total += prod * sign;
    }
    total
}

/// `⟨n|Γ(u)|m⟩` from the permanent of the repeated-index submatrix.
fn permanent_element(u: &DMatrix<C64>, n: &[u16], m: &[u16]) -> C64 {
    let rep = |v: &[u16]| -> Vec<usize> {
        v.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize)).collect()
    };
    let (rows, cols) = (rep(n), rep(m));
    if rows.len() != cols.len() {
        return c(0.0);
    }
    let sub = DMatrix::from_fn(rows.len(), cols.len(), |r, s| u[(rows[r], cols[s])]);
    let fact = |k: u16| (1..=k as u64).product::<u64>() as f64;
    let norm: f64 = n.iter().chain(m).map(|&k| fact(k)).product();
    permanent(&sub) / norm.sqrt()
}

fn random_unitary(r: &mut impl Rng) -> DMatrix<C64> {
    let h = DMatrix::from_fn(4, 4, |_, _| C64::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5));
    expm_hermitian(&(&h + h.adjoint()), 1.0)
}

fn restricted_diff(a: &CsrMatrix, b: &CsrMatrix, keep: &[bool]) -> f64 {
    a.restrict(|r| keep[r], |c| keep[c]).max_abs_diff(&b.restrict(|r| keep[r], |c| keep[c]))
}

/// Runs every check. Deterministic for a fixed config.
pub fn run_suite(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    cfg.validate()?;
    let mut s = Suite { cfg, out: Vec::new() };
    let space = FockSpace::new(cfg.n_max)?;
    let q = build_quadratures_with_cap(&space, cfg.dense_cap)?;
    fock_checks(&mut s, &space);
    modeops_checks(&mut s, &space, &q);
    spatial_checks(&mut s)?;
    dynamics_checks(&mut s, &space, &q)?;
    algebra_checks(&mut s);
    internal_checks(&mut s, &space, &q);
    manybody_checks(&mut s)?;
    gravity_checks(&mut s)?;
    Ok(s.out)
}

/// One JSON object per line.
pub fn to_json_lines(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn all_mandatory_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.status != Status::Fail)
}

fn fock_checks(s: &mut Suite, space: &Arc<FockSpace>) {
    let (cfg, n) = (s.cfg, space.n_max());
    s.run("fock.dimension", "fock", "dimension C(n_max+4, 4)", Bound::Zero, || {
        Ok((space.dim() as f64 - binomial(n + 4, 4) as f64).abs())
    });
    s.run("fock.ladder_interior_canonical", "fock", "[a_i, a_j†] = δ_ij", Bound::Max(1e-12), || {
        let keep = space.interior(1);
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            let a = ladder(space, i, LadderKind::Annihilate)?;
            for j in 0..4 {
                let ad = ladder(space, j, LadderKind::Create)?;
                let comm = a.commutator(&ad);
                let target = if i == j { CsrMatrix::identity(space.dim()) } else { CsrMatrix::zeros(space.dim(), space.dim()) };
                worst = worst.max(restricted_diff(comm.matrix(), &target, &keep));
            }
        }
        Ok(worst)
    });
    s.run("fock.xyzn_two_particle_permanent", "fock", "xyzn change of basis", Bound::Max(1e-12), || {
        let sp = FockSpace::new(n.min(3))?;
        let m = xyzn_mixing().map(c);
        let t = basis_transform(&sp, ModeBasis::Upper, ModeBasis::Xyzn);
        let mut worst: f64 = 0.0;
        for col in 0..sp.dim() {
            for row in 0..sp.dim() {
                if sp.total(col) == 2 || sp.total(row) == 2 {
                    worst = worst.max((t.get(row, col) - permanent_element(&m, sp.occ(row), sp.occ(col))).norm());
                }
            }
        }
        Ok(worst)
    });
    s.run("fock.xyzn_round_trip", "fock", "xyzn change of basis", Bound::Max(1e-12), || {
        let st = random_state(space, ModeBasis::Upper, &mut rng(cfg, 1))?;
        let x = change_basis_xyzn(&st, Direction::AbcdToXyzn)?;
        let back = change_basis_xyzn(&x, Direction::XyznToAbcd)?;
        Ok(back.max_abs_diff(&st))
    });
    s.run("fock.transform_conserves_number", "fock", "passive mode transformation", Bound::Zero, || {
        let u = random_unitary(&mut rng(cfg, 2));
        let g = mode_transform(space, &u)?;
        let t = basis_transform(space, ModeBasis::Upper, ModeBasis::Xyzn);
        let mut worst: f64 = 0.0;
        for m in [g.matrix(), &t] {
            for r in 0..space.dim() {
                for (col, v) in m.row(r) {
                    if space.total(r) != space.total(col) {
                        worst = worst.max(v.norm());
                    }
                }
            }
        }
        Ok(worst)
    });
}

fn modeops_checks(s: &mut Suite, space: &Arc<FockSpace>, q: &QuadratureSet) {
    for (k, id) in ["modeops.canonical_x", "modeops.canonical_y", "modeops.canonical_z"].iter().enumerate() {
        s.run(id, "modeops", "[X, P_x] = i on the interior", Bound::Max(1e-12), || Ok(q.canonical_defect(k, 1)));
    }
    let n_e = space.n_max() + 2;
    let cap = s.cfg.dense_cap;
    let eq = if n_e <= cap {
        FockSpace::new(n_e).and_then(|sp| build_quadratures_with_cap(&sp, cap))
    } else {
        Err(Error::Capability(format!("n_max {n_e} above dense cap {cap}")))
    };
    let eq = eq.map_err(|e| e.to_string());
    s.run("modeops.energy_squares_to_p2", "modeops", "E² = Px² + Py² + Pz²", Bound::Max(1e-9), || {
        let eq = eq.as_ref().map_err(|e| Error::Capability(e.clone()))?;
        let e = eq.energy()?;
        let ed = e.dense_in(ModeBasis::Upper);
        Ok(max_abs(&(&ed * &ed - eq.e2.matrix().to_dense())))
    });
    s.run("modeops.e2_nonnegative", "modeops", "E² positive semidefinite", Bound::Max(1e-10), || {
        let eq = eq.as_ref().map_err(|e| Error::Capability(e.clone()))?;
        Ok((-eq.energy()?.min_e2_eigenvalue()).max(0.0))
    });
    s.run("modeops.total_number_two_forms", "modeops", "total number in two mode sets", Bound::Max(1e-12), || {
        Ok(total_number(q).1)
    });
}

fn spatial_checks(s: &mut Suite) -> Result<()> {
    let cfg = s.cfg;
    s.run("spatial.hermite_orthonormal", "spatial", "Hermite function basis", Bound::Max(1e-8), || {
        let g = Grid3::new(8.0, 0.01)?;
        let (w, xs) = (g.weights(), g.axis());
        let table: Vec<Vec<f64>> = (0..=12).map(|n| xs.iter().map(|&x| hermite_fn(n, x)).collect()).collect();
        let mut worst: f64 = 0.0;
        for n in 0..=12 {
            for m in 0..=n {
                let v: f64 = (0..xs.len()).map(|i| w[i] * table[n][i] * table[m][i]).sum();
                worst = worst.max((v - if n == m { 1.0 } else { 0.0 }).abs());
            }
        }
        Ok(worst)
    });
    s.run("spatial.parseval", "spatial", "wavefield norm equals coefficient norm", Bound::Max(1e-5), || {
        let sp = FockSpace::new(cfg.n_max.min(4))?;
        let g = Grid3::new(cfg.grid_l, cfg.grid_h)?;
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            let st = random_state(&sp, ModeBasis::Xyzn, &mut rng(cfg, 10 + k))?;
            let f = state_to_wavefield(&st, &g)?;
            let collapsed: f64 = collapse_xyz(&st).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max((f.quadrature_norm() - collapsed).abs());
        }
        Ok(worst)
    });
    Ok(())
}

fn dynamics_checks(s: &mut Suite, space: &Arc<FockSpace>, q: &QuadratureSet) -> Result<()> {
    let cfg = s.cfg;
    // the wave equation needs room for the two excluded top shells
    let n_kg = cfg.n_max.max(2);
    let kq = if n_kg == cfg.n_max { Ok(q.clone()) } else { build_quadratures_with_cap(&FockSpace::new(n_kg)?, cfg.dense_cap) };
    let kq = kq?;
    let vac = StateVector::vacuum(kq.space(), ModeBasis::Xyzn);
    let fine = || -> Result<f64> {
        Ok(klein_gordon_residual(&kq, &vac, 0.0, 1e-3, &Grid3::new(cfg.grid_l, cfg.grid_h)?)?.residual)
    };
    let fine_v = fine();
    let fine_copy = fine_v.as_ref().map(|v| *v).map_err(|e| e.to_string());
    s.run("dynamics.klein_gordon_residual", "dynamics", "free wave equation of the spatial field", Bound::Max(5e-3), || {
        fine_v
    });
    s.run("dynamics.klein_gordon_convergence", "dynamics", "free wave equation of the spatial field", Bound::Min(3.0), || {
        let f = fine_copy.clone().map_err(Error::Numerical)?;
        let half = klein_gordon_residual(&kq, &vac, 0.0, 5e-4, &Grid3::new(cfg.grid_l, 0.5 * cfg.grid_h)?)?.residual;
        Ok(f / half)
    });
    s.run("dynamics.klein_gordon_residual_t1", "dynamics", "free wave equation of the spatial field", Bound::Info, || {
        Ok(klein_gordon_residual(&kq, &vac, 1.0, 1e-3, &Grid3::new(cfg.grid_l, cfg.grid_h)?)?.residual)
    });
    s.run("dynamics.norm_drift", "dynamics", "time evolution by exp(−iEt)", Bound::Max(1e-10), || {
        let st = random_state(space, ModeBasis::Upper, &mut rng(cfg, 20))?;
        Ok((evolve_fock(q, &st, 1.0)?.norm() - 1.0).abs())
    });
    s.run("dynamics.t0_identity", "dynamics", "time evolution by exp(−iEt)", Bound::Zero, || {
        let st = random_state(space, ModeBasis::Upper, &mut rng(cfg, 21))?;
        Ok(evolve_fock(q, &st, 0.0)?.max_abs_diff(&st))
    });
    Ok(())
}

fn algebra_checks(s: &mut Suite) {
    let cfg = s.cfg;
    s.run("algebra.fano_pair_coverage", "algebra", "octonion multiplication lines", Bound::Zero, || {
        let cov = FanoTable::new().pair_coverage();
        Ok((cov.len() as f64 - 21.0).abs() + cov.iter().filter(|&&(_, n)| n != 1).count() as f64)
    });
    s.run("algebra.octonion_composition", "algebra", "|xy| = |x||y|", Bound::Max(1e-12), || {
        let mut r = rng(cfg, 30);
        let mut oct = || Octonion::new(std::array::from_fn(|_| r.random::<f64>() * 2.0 - 1.0));
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let (x, y) = (oct(), oct());
            worst = worst.max((oct_mul(&x, &y).norm() - x.norm() * y.norm()).abs());
        }
        Ok(worst)
    });
    s.run("algebra.associator_antisymmetry", "algebra", "octonion associator", Bound::Zero, || {
        let e = Octonion::unit;
        let mut worst: f64 = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let a = associator(&e(i), &e(j), &e(k));
                    worst = worst
                        .max((a + associator(&e(j), &e(i), &e(k))).max_abs())
                        .max((a + associator(&e(i), &e(k), &e(j))).max_abs());
                }
            }
        }
        Ok(worst)
    });
    s.run("algebra.eps4_discrepancies", "algebra", "four-index associator symbol", Bound::Info, || {
        Ok(derive_eps4().discrepancies.len() as f64)
    });
    let g2 = G2GeneratorSet::printed();
    s.run("algebra.g2_antisymmetry", "algebra", "G2 generator matrices", Bound::Max(1e-14), || Ok(g2.antisymmetry_defect()));
    let rep = g2_closure_report(&g2);
    s.run("algebra.g2_span_rank", "algebra", "G2 generator matrices", Bound::Zero, || {
        Ok((rep.rank_of_span as f64 - 14.0).abs())
    });
    s.run("algebra.g2_closure_defect", "algebra", "G2 generator matrices", Bound::Info, || Ok(rep.closure_defect));
    let t = StructureConstantTable::printed();
    let jac = jacobi_check(&t);
    s.run("algebra.structure_antisymmetry", "algebra", "symmetry-group structure constants", Bound::Zero, || {
        Ok(t.antisymmetry_defect())
    });
    s.run("algebra.jacobi_residual", "algebra", "symmetry-group structure constants", Bound::Info, || Ok(jac.max_residual));
    s.run("algebra.jacobi_mod_trace", "algebra", "symmetry-group structure constants", Bound::Max(1e-12), || {
        Ok(jac.max_residual_mod_trace)
    });
    s.run("algebra.clifford", "algebra", "{γ^μ, γ^ν} = 2η^{μν}", Bound::Max(1e-14), || Ok(build_dirac().clifford_defect()));
}

fn internal_checks(s: &mut Suite, space: &Arc<FockSpace>, q: &QuadratureSet) {
    let cfg = s.cfg;
    s.run("internal.null_vectors", "internal", "single ur-spinor four-vector is null", Bound::Max(1e-12), || {
        let mut r = rng(cfg, 40);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let u = random_ur(&mut r).normalized()?;
            let (v, _) = spinor_to_vector(&MajoranaSpinor::single(&u));
            worst = worst.max(minkowski_dot(&v, &v).abs());
        }
        Ok(worst)
    });
    s.run("internal.dirac_square", "internal", "(H_D)² = E² ⊗ 1 on the interior", Bound::Max(1e-10), || {
        let keep: Vec<bool> = space.interior(1).iter().flat_map(|&k| [k; 8]).collect();
        let e2 = q.e2_in(ModeBasis::Upper).matrix().kron(&CsrMatrix::identity(8));
        let mut worst: f64 = 0.0;
        for slot in [SpinSlot::SpinFirst, SpinSlot::IsospinFirst] {
            let h = dirac_hamiltonian(q, ModeBasis::Upper, slot);
            worst = worst.max(restricted_diff(&h.matmul(&h), &e2, &keep));
        }
        Ok(worst)
    });
    s.run("internal.dirac_kernel_residual", "internal", "massless Dirac equation", Bound::Max(1e-8), || {
        let kq = build_quadratures_with_cap(&FockSpace::new(space.n_max().clamp(1, 3))?, cfg.dense_cap)?;
        let k = dirac_kernel(&kq, 1e-8)?;
        Ok(k.max_residual / k.largest_singular.max(1.0))
    });
}

fn manybody_checks(s: &mut Suite) -> Result<()> {
    let cfg = s.cfg;
    let space = FockSpace::new(cfg.n_max.clamp(1, 2))?;
    let q = build_quadratures_with_cap(&space, cfg.dense_cap)?;
    let m = cfg.objects;
    let reg = ObjectRegistry::new(m, &space)?;
    let g = build_green_components(&reg)?;
    s.run("manybody.cross_object_anticommutators", "manybody", "Green components", Bound::Max(1e-10), || {
        let mut worst: f64 = 0.0;
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                for r in 0..4 {
                    for t in 0..4 {
                        let (x, xd) = (&g[a][r].0.mat, &g[a][r].1.mat);
                        let (y, yd) = (&g[b][t].0.mat, &g[b][t].1.mat);
                        worst = worst
                            .max(x.anticommutator(yd).max_abs())
                            .max(x.anticommutator(y).max_abs())
                            .max(xd.anticommutator(yd).max_abs());
                    }
                }
            }
        }
        Ok(worst)
    });
    s.run("manybody.same_object_canonical", "manybody", "Green components", Bound::Max(1e-10), || {
        let keep = reg.interior(1);
        let mut worst: f64 = 0.0;
        for comp in &g {
            for r in 0..4 {
                for t in 0..4 {
                    let target = if r == t { CsrMatrix::identity(reg.dim()) } else { CsrMatrix::zeros(reg.dim(), reg.dim()) };
                    worst = worst.max(restricted_diff(&comp[r].0.mat.commutator(&comp[t].1.mat), &target, &keep));
                }
            }
        }
        Ok(worst)
    });
    s.run("manybody.trilinear_relations", "manybody", "parabose trilinear relations", Bound::Max(1e-10), || {
        let sum = |r: usize, create: bool| {
            g.iter().fold(CsrMatrix::zeros(reg.dim(), reg.dim()), |acc, comp| {
                acc.add(if create { &comp[r].1.mat } else { &comp[r].0.mat })
            })
        };
        let a: Vec<_> = (0..4).map(|r| sum(r, false)).collect();
        let ad: Vec<_> = (0..4).map(|r| sum(r, true)).collect();
        let keep = reg.interior(2);
        let zero = CsrMatrix::zeros(reg.dim(), reg.dim());
        let mut worst: f64 = 0.0;
        for r in 0..4 {
            for t in 0..4 {
                let half = a[r].anticommutator(&ad[t]).scale(c(0.5));
                let rr = a[r].anticommutator(&a[t]);
                let cc = ad[r].anticommutator(&ad[t]);
                for u in 0..4 {
                    let rhs = if t == u { a[r].scale(c(-1.0)) } else { zero.clone() };
                    worst = worst
                        .max(restricted_diff(&half.commutator(&a[u]), &rhs, &keep))
                        .max(restricted_diff(&rr.commutator(&a[u]), &zero, &keep))
                        .max(restricted_diff(&cc.commutator(&ad[u]), &zero, &keep));
                }
            }
        }
        Ok(worst)
    });
    s.run("manybody.sign_rule", "manybody", "exchange signs within and across objects", Bound::Zero, || {
        // two creators on one object need n_max ≥ 2
        let reg = ObjectRegistry::new(m, &FockSpace::new(2)?)?;
        let mut wrong = 0usize;
        for a in 0..m {
            for b in 0..m {
                for r in 0..4 {
                    for t in 0..4 {
                        let want = if a == b { 1.0 } else { -1.0 };
                        if exchange_sign(&reg, (r, a), (t, b))? != Some(want) {
                            wrong += 1;
                        }
                    }
                }
            }
        }
        Ok(wrong as f64)
    });
    s.run("manybody.diagonal_matching", "manybody", "equal-label interaction", Bound::Zero, || {
        let occ = Occupation::new;
        let (al, be, ga, de) = (C64::new(0.6, 0.1), c(0.3), C64::new(0.0, 0.8), c(-0.2));
        let p1 = StateVector::from_terms(&space, ModeBasis::Upper, &[(occ([1, 0, 0, 0]), al), (occ([0, 1, 0, 0]), be)])?;
        let p2 = StateVector::from_terms(&space, ModeBasis::Upper, &[(occ([1, 0, 0, 0]), ga), (occ([0, 0, 1, 0]), de)])?;
        let out = interaction_apply(&Weight::Constant(c(1.0)), &[p1, p2])?;
        let i = space.rank(occ([1, 0, 0, 0])).expect("label in space");
        let idx = out.reg.index(&[i, i]);
        Ok(out
            .amp
            .iter()
            .enumerate()
            .map(|(k, z)| if k == idx { (z - al * ga).norm() } else { z.norm() })
            .fold(0.0, f64::max))
    });
    let weights: Vec<C64> = (0..space.dim()).map(|k| c(0.5 + 0.1 * k as f64)).collect();
    let mut r = rng(cfg, 50);
    let states: Vec<StateVector> = (0..4).map(|_| random_state(&space, ModeBasis::Upper, &mut r)).collect::<Result<_>>()?;
    let p1 = MultiObjectState::product(&states[0..2])?;
    let p2 = MultiObjectState::product(&states[2..4])?;
    s.run("manybody.interacting_unitarity", "manybody", "interacting evolution", Bound::Max(1e-10), || {
        let w = Weight::Diagonal(weights.clone());
        let (e1, e2) = (evolve_interacting(&q, &w, &p1, 1.0)?, evolve_interacting(&q, &w, &p2, 1.0)?);
        let before = inner(&p1.amp, &p2.amp);
        let after = inner(&e1.amp, &e2.amp);
        Ok((e1.norm() - 1.0).abs().max((e2.norm() - 1.0).abs()).max((after - before).norm()))
    });
    s.run("manybody.schmidt_entropy", "manybody", "interaction entangles objects", Bound::Min(0.01), || {
        let ev = evolve_interacting(&q, &Weight::Diagonal(weights.clone()), &p1, 1.0)?;
        ev.entanglement_entropy(1)
    });
    s.run("manybody.free_relation", "manybody", "free multi-object wave equation", Bound::Max(1e-10), || {
        free_multibody_check(&q, &p1)
    });
    Ok(())
}

fn eta4() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0))
}

fn gravity_checks(s: &mut Suite) -> Result<()> {
    let cfg = s.cfg;
    s.run("gravity.metric_long_form", "gravity", "spinor metric components", Bound::Max(1e-12), || {
        let mut r = rng(cfg, 60);
        Ok((0..1000).map(|_| random_metric(&mut r).long_form_defect()).fold(0.0, f64::max))
    });
    s.run("gravity.metric_long_form_as_printed", "gravity", "spinor metric components", Bound::Info, || {
        let m = random_metric(&mut rng(cfg, 61));
        let raw = m.long_form_printed();
        Ok((0..16).map(|k| (raw[k / 4][k % 4] - m.g[k / 4][k % 4]).abs()).fold(0.0, f64::max))
    });
    s.run("gravity.metric_rank", "gravity", "spinor metric components", Bound::Cap(2.0), || {
        let mut r = rng(cfg, 62);
        Ok((0..1000).map(|_| random_metric(&mut r).rank(1e-10)).max().unwrap_or(0) as f64)
    });
    let bump = |eps: f64| {
        move |x: [f64; 4]| {
            let b = (-(x.iter().map(|v| v * v).sum::<f64>())).exp();
            let w = [1.0, 0.5, -0.3, 0.8];
            let mut g = eta4();
            for k in 0..4 {
                g[(k, k)] += eps * w[k] * b;
            }
            g
        }
    };
    let x0 = [0.3, 0.2, -0.1, 0.4];
    s.run("gravity.classical_terms_vs_fd", "gravity", "vacuum field equation, classical", Bound::Max(0.05), || {
        let g = bump(1e-3);
        let o = classical_ricci_oracle(&g, x0, 0.05)?;
        let t = evaluate_terms_classical(ricci_terms(), &metric_jet(&g, x0, 0.05)?)?;
        Ok((t - o).abs().max() / o.abs().max())
    });
    s.run("gravity.classical_quadratic_gap", "gravity", "vacuum field equation, classical", Bound::Info, || {
        let g = bump(0.3);
        let o = classical_ricci_oracle(&g, x0, 0.01)?;
        let t = evaluate_terms_classical(ricci_terms(), &metric_jet(&g, x0, 0.01)?)?;
        Ok((t - o).abs().max() / o.abs().max())
    });
    s.run("gravity.flat_metric_zero", "gravity", "vacuum field equation, classical", Bound::Zero, || {
        let f = |_: [f64; 4]| eta4();
        let o = classical_ricci_oracle(&f, x0, 0.05)?;
        let t = evaluate_terms_classical(ricci_terms(), &metric_jet(&f, x0, 0.05)?)?;
        Ok(o.abs().max().max(t.abs().max()))
    });
    let space = FockSpace::new(cfg.n_max.clamp(1, 2))?;
    let q = build_quadratures_with_cap(&space, cfg.dense_cap)?;
    let mut r = rng(cfg, 63);
    let gs: Vec<GravitonState> = (0..4)
        .map(|_| build_graviton(&random_state(&space, ModeBasis::Upper, &mut r)?, &random_metric(&mut r)))
        .collect::<Result<_>>()?;
    let gs: [GravitonState; 4] = gs.try_into().expect("four gravitons");
    s.run("gravity.quantized_multilinear", "gravity", "quantized vacuum field equation", Bound::Zero, || {
        let mut worst: f64 = 0.0;
        for (mu, nu) in [(0, 0), (1, 2), (3, 1)] {
            let base = evaluate_quantized_ricci(&gs, mu, nu, &q)?;
            for j in 0..4 {
                let mut g2 = gs.clone();
                g2[j] = GravitonState::from_parts(gs[j].state.scaled(c(2.0)), gs[j].metric);
                let r2 = evaluate_quantized_ricci(&g2, mu, nu, &q)?;
                for (t, (a, b)) in ricci_terms().terms.iter().zip(base.per_term.iter().zip(&r2.per_term)) {
                    let f = if j < t.factors.len() { 2.0 } else { 1.0 };
                    let scaled: Vec<C64> = a.iter().map(|z| z * f).collect();
                    worst = worst.max(vec_max_abs_diff(&scaled, b));
                }
            }
        }
        Ok(worst)
    });
    s.run("gravity.quantized_zero_input", "gravity", "quantized vacuum field equation", Bound::Zero, || {
        let zero = StateVector::zeros(&space, ModeBasis::Upper);
        let z: [GravitonState; 4] = std::array::from_fn(|j| GravitonState::from_parts(zero.clone(), gs[j].metric));
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = worst.max(evaluate_quantized_ricci(&z, mu, nu, &q)?.norm);
            }
        }
        Ok(worst)
    });
    s.run("gravity.quantized_mu_nu_asymmetry", "gravity", "quantized vacuum field equation", Bound::Info, || {
        let same = [gs[0].clone(), gs[0].clone(), gs[0].clone(), gs[0].clone()];
        Ok(ricci_asymmetry(&same, &q)?.relative)
    });
    Ok(())
}
