//! `urfock`: invariant suite, evolution exports, spectra, octonion tables and
//! graviton field-equation reports.
//!
//! Exit codes: 0 success, 1 a mandatory check failed, 2 usage, config or
//! input error.

use clap::{Parser, Subcommand};
use serde_json::json;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use urfock::algebra::{derive_eps4, FanoTable};
use urfock::config::RunConfig;
use urfock::dynamics::evolve_fock;
use urfock::fock::{FockSpace, StateVector};
use urfock::gravity::{build_graviton, build_metric, evaluate_quantized_ricci, ricci_asymmetry, GravitonState};
use urfock::io::{read_graviton_spec, read_state};
use urfock::linalg::C64;
use urfock::modeops::build_quadratures_with_cap;
use urfock::spatial::{state_to_wavefield, Grid3, WaveField};
use urfock::suite::{all_mandatory_pass, run_suite, to_json_lines};
use urfock::Error;

#[derive(Parser)]
#[command(name = "urfock", version, about = "Truncated four-mode Fock space simulator")]
struct Cli {
    /// config file (key = value); defaults to $URFOCK_CONFIG
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n_max: Option<usize>,
    #[arg(long, global = true)]
    grid_l: Option<f64>,
    #[arg(long, global = true)]
    grid_h: Option<f64>,
    /// multiplier on every check tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// report file, or the export directory for `evolve`
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every invariant check, one JSON line per check
    Check,
    /// Evolve a state file and export wavefields at the given times
    Evolve {
        state: PathBuf,
        #[arg(long = "t", default_values_t = [1.0], num_args = 1..)]
        times: Vec<f64>,
    },
    /// Eigenvalues of E at n_max
    Spectrum,
    /// Octonion multiplication lines, derived four-index symbol and its
    /// comparison with the printed list
    Tables,
    /// Quantized field equation on four graviton specs
    GravityEval {
        #[arg(num_args = 4)]
        gravitons: Vec<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::from_env()?,
    };
    if let Some(v) = cli.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = cli.grid_l {
        cfg.grid_l = v;
    }
    if let Some(v) = cli.grid_h {
        cfg.grid_h = v;
    }
    if let Some(v) = cli.tol {
        cfg.tol = v;
    }
    if let Some(v) = &cli.out {
        cfg.out = Some(v.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Report sink: `--out` file or stdout.
fn sink(cfg: &RunConfig) -> Result<Box<dyn Write>, Failure> {
    Ok(match &cfg.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn read_text(p: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn check(cfg: &RunConfig) -> Result<(), Failure> {
    let records = run_suite(cfg)?;
    let mut w = sink(cfg)?;
    w.write_all(to_json_lines(&records).as_bytes())?;
    w.flush()?;
    if all_mandatory_pass(&records) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn max_modulus_drift(a: &WaveField, b: &WaveField) -> f64 {
    let np = a.grid().npts();
    let (mut ba, mut bb) = (vec![C64::new(0.0, 0.0); np * np], vec![C64::new(0.0, 0.0); np * np]);
    let mut worst: f64 = 0.0;
    for ix in 0..np {
        a.slab(ix, &mut ba);
        b.slab(ix, &mut bb);
        for (x, y) in ba.iter().zip(&bb) {
            worst = worst.max((x.norm() - y.norm()).abs());
        }
    }
    worst
}

fn evolve(cfg: &RunConfig, state_path: &Path, times: &[f64]) -> Result<(), Failure> {
    let state = read_state(&read_text(state_path)?)?;
    let q = build_quadratures_with_cap(state.space(), cfg.dense_cap)?;
    let e = q.energy()?;
    let grid = Grid3::new(cfg.grid_l, cfg.grid_h)?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    let energy = |s: &StateVector| -> Result<f64, Failure> { Ok(s.inner(&e.apply(s)?)?.re) };
    let e0 = energy(&state)?;
    let f0 = state_to_wavefield(&state, &grid)?;
    let stdout = std::io::stdout();
    let mut log = stdout.lock();
    for (k, &t) in times.iter().enumerate() {
        if !t.is_finite() {
            return Err(Failure::Usage(format!("bad time {t}")));
        }
        let st = evolve_fock(&q, &state, t)?;
        let f = state_to_wavefield(&st, &grid)?;
        let file = dir.join(format!("wavefield_{k:03}.txt"));
        let mut w = BufWriter::new(File::create(&file)?);
        f.write_export(&mut w)?;
        w.flush()?;
        let line = json!({
            "t": t,
            "file": file.display().to_string(),
            "norm_drift": (st.norm() - state.norm()).abs(),
            "energy_drift": (energy(&st)? - e0).abs(),
            "modulus_drift": max_modulus_drift(&f0, &f),
        });
        writeln!(log, "{line}")?;
    }
    Ok(())
}

fn spectrum(cfg: &RunConfig) -> Result<(), Failure> {
    let space = FockSpace::new(cfg.n_max)?;
    let q = build_quadratures_with_cap(&space, cfg.dense_cap)?;
    let ev = q.energy()?.eigenvalues();
    let mut w = sink(cfg)?;
    writeln!(w, "{}", json!({ "n_max": cfg.n_max, "dim": space.dim(), "eigenvalues": ev }))?;
    w.flush()?;
    Ok(())
}

fn tables(cfg: &RunConfig) -> Result<(), Failure> {
    let fano = FanoTable::new();
    let rep = derive_eps4();
    let mut w = sink(cfg)?;
    writeln!(w, "# urfock octonion tables v1")?;
    writeln!(w, "# eps3 i j k: e_i e_j = +e_k")?;
    for [i, j, k] in fano.positive_lines() {
        writeln!(w, "eps3 {i} {j} {k}")?;
    }
    writeln!(w, "# eps4 i j k l value, i<j<k<l, from the associator")?;
    for ([i, j, k, l], v) in &rep.computed_nonzero {
        writeln!(w, "eps4 {i} {j} {k} {l} {v:+}")?;
    }
    writeln!(w, "# printed eps4 entries not reproduced: indices, printed, computed")?;
    for d in &rep.discrepancies {
        let [i, j, k, l] = d.indices;
        writeln!(w, "mismatch {i} {j} {k} {l} {:+} {:+}", d.printed, d.computed)?;
    }
    writeln!(w, "associator_real_part_max {:e}", rep.real_part_max)?;
    writeln!(w, "eps4_antisymmetry_defect {:e}", rep.antisymmetry_defect)?;
    writeln!(w, "mismatches {}", rep.discrepancies.len())?;
    w.flush()?;
    Ok(())
}

fn load_graviton(path: &Path) -> Result<GravitonState, Failure> {
    let spec = read_graviton_spec(&read_text(path)?)?;
    let state_path = match path.parent() {
        Some(dir) if spec.state.is_relative() => dir.join(&spec.state),
        _ => spec.state.clone(),
    };
    let state = read_state(&read_text(&state_path)?)?;
    let [u1, u2, v1, v2] = spec.spinors;
    let metric = build_metric(&u1, &u2, &v1, &v2);
    if state.norm() == 0.0 {
        // an all-zero coefficient file is the zero graviton
        return Ok(GravitonState::from_parts(state, metric));
    }
    Ok(build_graviton(&state, &metric)?)
}

fn gravity_eval(cfg: &RunConfig, paths: &[PathBuf]) -> Result<(), Failure> {
    let gs: Vec<GravitonState> = paths.iter().map(|p| load_graviton(p)).collect::<Result<_, _>>()?;
    let gs: [GravitonState; 4] = gs
        .try_into()
        .map_err(|_| Failure::Usage("gravity-eval needs four graviton specs".into()))?;
    let q = build_quadratures_with_cap(gs[0].state.space(), cfg.dense_cap)?;
    let mut w = sink(cfg)?;
    let l2 = |v: &[C64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for mu in 0..4 {
        for nu in 0..4 {
            let r = evaluate_quantized_ricci(&gs, mu, nu, &q)?;
            let line = json!({
                "kind": "component",
                "mu": mu,
                "nu": nu,
                "bilinear_norm": l2(&r.bilinear),
                "quartic_norm": l2(&r.quartic),
                "norm": r.norm,
            });
            writeln!(w, "{line}")?;
        }
    }
    let a = ricci_asymmetry(&gs, &q)?;
    writeln!(w, "{}", json!({ "kind": "asymmetry", "max_abs": a.max_abs, "pair": a.pair, "relative": a.relative }))?;
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = config(&cli).and_then(|cfg| match &cli.cmd {
        Cmd::Check => check(&cfg),
        Cmd::Evolve { state, times } => evolve(&cfg, state, times),
        Cmd::Spectrum => spectrum(&cfg),
        Cmd::Tables => tables(&cfg),
        Cmd::GravityEval { gravitons } => gravity_eval(&cfg, gravitons),
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("urfock: {msg}");
            ExitCode::from(2)
        }
    }
}
