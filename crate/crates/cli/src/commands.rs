use std::f64::consts::PI;

use krein_verify::{bump_probes, gamma_field_audit, krein_residual, random_probes, FdDeltaLineDiscretization, GammaIdentity, JacobiDiscretization, KreinModel};
use model_zoo::symbols::EXCLUSION_GUARD;
use model_zoo::{ModelHandle, ModelKind, ModelParams};
use num_complex::Complex64;
use rayon::prelude::*;
use scatter_engine::{eigenphases as phases_of, model_smatrix, smatrix_sweep, ScatterError, SmatrixOptions, SweepPoint};
use schatten_diag::{sv_decay as decay, Entity, SchattenError, Verdict};
use serde_json::{json, Value};
use stationary_oracle::{rank_one_smatrix, StationaryConfig, StationaryModel};
use weyl_core::{nevanlinna_audit as audit, BoundaryOptions, BoundaryStrategy, ChannelTruncation, SpectralPoint, WeylError, WeylModel, NEVANLINNA_TOL};

use crate::format::{g17, Csv};
use crate::{CliError, Outcome, RunSpec};

const DEFAULT_KREIN_Z: &str = "0.5+0.5i";
const DEFAULT_STATIONARY_LAMBDA: &str = "-1.5,-0.5,0,0.5,1.5";

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn manifest(command: &str, run: &RunSpec, defaults: Value, results: Value) -> (String, String) {
    let v = json!({
        "tool": "weyl-scatter",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "run_spec": run,
        "threads": rayon::current_num_threads(),
        "number_format": "%.17g",
        "defaults": defaults,
        "results": results,
    });
    ("manifest.json".into(), json_text(&v))
}

fn sopts(run: &RunSpec) -> SmatrixOptions {
    let mut o = SmatrixOptions::default();
    if let Some(t) = run.unitarity_tol {
        o.unitarity_tol = t;
    }
    if let Some(c) = run.condition_cap {
        o.condition_cap = c;
    }
    o
}

struct Sweep {
    handle: ModelHandle,
    trunc: ChannelTruncation,
    strategy: BoundaryStrategy,
    bopts: BoundaryOptions,
    sopts: SmatrixOptions,
    points: Vec<SweepPoint>,
}

fn sweep(run: &RunSpec) -> Result<Sweep, CliError> {
    let handle = run.handle()?;
    let trunc = run.truncation(handle.kind());
    handle.check_truncation(&trunc).map_err(config)?;
    let strategy = run.strategy()?;
    let bopts = run.boundary_options();
    let sopts = sopts(run);
    let grid = run.lambda_grid()?;
    let points = smatrix_sweep(&handle, &grid, &trunc, strategy, bopts, &sopts);
    Ok(Sweep { handle, trunc, strategy, bopts, sopts, points })
}

fn sweep_defaults(s: &Sweep) -> Value {
    json!({
        "model": s.handle.params(),
        "truncation": s.trunc.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "strategy": s.strategy,
        "rank_rel_tol": s.bopts.rank_rel_tol,
        "unitarity_tol": s.sopts.unitarity_tol,
        "condition_cap": s.sopts.condition_cap,
        "exclusion_guard": EXCLUSION_GUARD,
        "thresholds": s.handle.thresholds(),
    })
}

fn point_record(p: &SweepPoint) -> Value {
    match &p.result {
        Ok(s) => json!({
            "lambda": p.lambda,
            "status": "ok",
            "rank": s.rank(),
            "unitarity_defect": s.unitarity_defect,
            "flagged": s.flagged,
            "condition": s.condition,
        }),
        Err(e) => {
            let status = match e {
                ScatterError::Weyl(WeylError::ExclusionSetHit { .. }) => "excluded",
                _ => "error",
            };
            json!({ "lambda": p.lambda, "status": status, "error": e.to_string() })
        }
    }
}

fn sweep_results(s: &Sweep) -> Value {
    let failed = s.points.iter().filter(|p| p.result.is_err()).count();
    let max_defect = s.points.iter().filter_map(|p| p.result.as_ref().ok()).map(|x| x.unitarity_defect).fold(0.0, f64::max);
    json!({
        "points": s.points.iter().map(point_record).collect::<Vec<_>>(),
        "failed_points": failed,
        "exclusion_hits": s.points.iter().filter(|p| matches!(p.result, Err(ScatterError::Weyl(WeylError::ExclusionSetHit { .. })))).map(|p| p.lambda).collect::<Vec<_>>(),
        "max_unitarity_defect": max_defect,
    })
}

pub fn smatrix(run: &RunSpec) -> Result<Outcome, CliError> {
    let s = sweep(run)?;
    let mut csv = Csv::new(&["lambda", "row_label", "col_label", "re", "im"]);
    for p in &s.points {
        let Ok(sample) = &p.result else { continue };
        for (i, ri) in sample.channel_labels.iter().enumerate() {
            for (j, cj) in sample.channel_labels.iter().enumerate() {
                let v = sample.s[(i, j)];
                csv.row(&[g17(p.lambda), ri.clone(), cj.clone(), g17(v.re), g17(v.im)]);
            }
        }
    }
    let partial = s.points.iter().any(|p| p.result.is_err());
    let files = vec![("smatrix.csv".into(), csv.as_str().to_string()), manifest("smatrix", run, sweep_defaults(&s), sweep_results(&s))];
    Ok(Outcome { files, partial })
}

pub fn eigenphases(run: &RunSpec) -> Result<Outcome, CliError> {
    let s = sweep(run)?;
    let mut csv = Csv::new(&["lambda", "channel", "phase_rad"]);
    let mut partial = false;
    for p in &s.points {
        let Ok(sample) = &p.result else {
            partial = true;
            continue;
        };
        match phases_of(&sample.s) {
            Ok(ph) => {
                for (phase, channel) in ph {
                    csv.row(&[g17(p.lambda), sample.channel_labels[channel].clone(), g17(phase)]);
                }
            }
            Err(_) => partial = true,
        }
    }
    let files = vec![("eigenphases.csv".into(), csv.as_str().to_string()), manifest("eigenphases", run, sweep_defaults(&s), sweep_results(&s))];
    Ok(Outcome { files, partial })
}

fn scalar_alpha(run: &RunSpec, kind: ModelKind) -> Result<f64, CliError> {
    let p = run.params()?;
    p.alpha.scalar().ok_or_else(|| CliError::Config(format!("{kind} needs a constant α")))
}

pub fn krein_check(run: &RunSpec) -> Result<Outcome, CliError> {
    let kind = run.kind()?;
    let alpha = scalar_alpha(run, kind)?;
    let zs = run.z_list(DEFAULT_KREIN_Z)?;
    if let Some(z) = zs.iter().find(|z| z.im == 0.0) {
        return Err(CliError::Config(format!("z = {z} is real")));
    }
    let count = run.probes.unwrap_or(16);
    let seed = run.seed.unwrap_or(0);
    let (model, probes, defaults): (Box<dyn KreinModel>, _, _) = match kind {
        ModelKind::JacobiHalfline => {
            let sites = run.sites.unwrap_or(2000);
            if sites < 128 {
                return Err(CliError::Config(format!("--sites {sites} is below 128")));
            }
            let m = JacobiDiscretization::new(alpha, sites);
            let p = random_probes(&m, count, seed);
            (Box::new(m), p, json!({ "sites": sites, "closure": "dirichlet", "probes": count, "seed": seed }))
        }
        ModelKind::DeltaLine => {
            let (length, h) = (run.length.unwrap_or(200.0), run.h.unwrap_or(0.01));
            let m = FdDeltaLineDiscretization::new(alpha, length, h).map_err(config)?;
            let p = bump_probes(&m, count, seed);
            (Box::new(m), p, json!({ "length": length, "h": h, "probes": count, "seed": seed, "probe_shape": "gaussian-bumps" }))
        }
        k => return Err(CliError::Config(format!("krein-check supports jacobi-halfline and delta-line, not {k}"))),
    };
    let rows: Vec<(Complex64, Result<f64, String>)> = zs.par_iter().map(|&z| (z, krein_residual(model.as_ref(), z, &probes).map_err(|e| e.to_string()))).collect();
    let mut csv = Csv::new(&["z_re", "z_im", "residual"]);
    let mut records = Vec::new();
    let mut partial = false;
    for (z, r) in &rows {
        match r {
            Ok(v) => {
                csv.row(&[g17(z.re), g17(z.im), g17(*v)]);
                records.push(json!({ "z": complex_json(*z), "residual": v }));
            }
            Err(e) => {
                partial = true;
                records.push(json!({ "z": complex_json(*z), "error": e }));
            }
        }
    }
    let files = vec![("krein.csv".into(), csv.as_str().to_string()), manifest("krein-check", run, json!({ "model": model.name(), "alpha": alpha, "discretization": defaults }), json!({ "points": records }))];
    Ok(Outcome { files, partial })
}

pub fn sv_decay(run: &RunSpec) -> Result<Outcome, CliError> {
    let handle = run.handle()?;
    let entity: Entity = run.entity.as_deref().unwrap_or("im-m").parse().map_err(CliError::Config)?;
    let z = run.z_list("i")?;
    let [z] = z.as_slice() else {
        return Err(CliError::Config("sv-decay takes a single --z".into()));
    };
    let max_order = run.modes.unwrap_or(128);
    let report = decay(entity, &handle, *z, max_order, run.exponent).map_err(|e| match e {
        SchattenError::BadExponent(_) | SchattenError::ModelNotDiagonal(_) | SchattenError::RealPoint(_) => config(e),
        e => CliError::Failed(e.to_string()),
    })?;
    let mut csv = Csv::new(&["j", "s_j"]);
    for (k, s) in report.singular_values.iter().enumerate() {
        csv.row(&[(k + 1).to_string(), g17(*s)]);
    }
    let verdict = json!({
        "entity": report.entity,
        "model": report.model,
        "z": complex_json(report.z),
        "max_order": max_order,
        "count": report.singular_values.len(),
        "bound_exponent": report.predicted_exponent,
        "fitted_exponent": report.fitted_exponent,
        "head_constant": report.head_constant,
        "tail_constant": report.tail_constant,
        "pass": report.verdict == Verdict::Pass,
    });
    let defaults = json!({ "model": handle.params(), "calibration": "constant from the head half, bound checked on the tail half" });
    let files = vec![
        ("sv_decay.csv".into(), csv.as_str().to_string()),
        ("sv_decay.json".into(), json_text(&verdict)),
        manifest("sv-decay", run, defaults, verdict.clone()),
    ];
    Ok(Outcome { files, partial: false })
}

struct StationaryPoint {
    lambda: f64,
    routes: Result<[(&'static str, Option<Complex64>); 3], String>,
    z_residual: Option<f64>,
    density_residual: Option<f64>,
}

pub fn stationary_check(run: &RunSpec) -> Result<Outcome, CliError> {
    if let Some(m) = &run.model {
        if run.kind()? != ModelKind::JacobiHalfline {
            return Err(CliError::Config(format!("stationary-check runs on jacobi-halfline, not {m}")));
        }
    }
    let alpha = match &run.alpha {
        Some(crate::spec::AlphaArg::Value(a)) => *a,
        Some(_) => return Err(CliError::Config("stationary-check needs a single α".into())),
        None => return Err(CliError::Config("missing --alpha".into())),
    };
    let grid = match &run.lambda {
        Some(g) => g.values().map_err(CliError::Config)?,
        None => crate::format::parse_grid(DEFAULT_STATIONARY_LAMBDA).map_err(CliError::Config)?,
    };
    let cfg = StationaryConfig { sites: run.sites.unwrap_or(stationary_oracle::DEFAULT_SITES), schedule: run.schedule(), ..Default::default() };
    let st = StationaryModel::new(alpha, cfg).map_err(|e| CliError::Failed(e.to_string()))?;
    let handle = ModelHandle::new(ModelParams::new(ModelKind::JacobiHalfline, alpha)).map_err(config)?;
    let trunc = ChannelTruncation::scalar();
    let so = sopts(run);
    let points: Vec<StationaryPoint> = grid
        .par_iter()
        .map(|&lambda| {
            let entry = |m: &numkernel::ComplexMatrix| (m.rows() == 1).then(|| m[(0, 0)]);
            let routes = (|| -> Result<_, String> {
                let w = model_smatrix(&handle, lambda, &trunc, BoundaryStrategy::Direct, BoundaryOptions::default(), &so).map_err(|e| e.to_string())?;
                let s = st.stationary_smatrix(lambda).map_err(|e| e.to_string())?;
                let c = (lambda.abs() < model_zoo::jacobi::BAND_EDGE).then(|| rank_one_smatrix(alpha, lambda));
                Ok([("weyl", entry(&w.s)), ("stationary", entry(&s.s)), ("classical", c)])
            })();
            let inside = lambda.abs() < model_zoo::jacobi::BAND_EDGE;
            let z_residual = if inside { st.z_function(lambda).ok().map(|z| z.residual) } else { None };
            let density_residual = st.spectral_density(lambda).ok().map(|k| k.im_m_residual);
            StationaryPoint { lambda, routes, z_residual, density_residual }
        })
        .collect();

    let mut csv = Csv::new(&["lambda", "route", "entry_re", "entry_im"]);
    let mut records = Vec::new();
    let mut worst: f64 = 0.0;
    let mut partial = false;
    for p in &points {
        match &p.routes {
            Ok(routes) => {
                for (name, v) in routes {
                    if let Some(v) = v {
                        csv.row(&[g17(p.lambda), name.to_string(), g17(v.re), g17(v.im)]);
                    }
                }
                let vals: Vec<Option<Complex64>> = routes.iter().map(|r| r.1).collect();
                let dev = if vals.iter().all(Option::is_none) {
                    Some(0.0)
                } else if vals.iter().all(Option::is_some) {
                    let v: Vec<Complex64> = vals.iter().flatten().copied().collect();
                    Some((v[0] - v[1]).norm().max((v[0] - v[2]).norm()).max((v[1] - v[2]).norm()))
                } else {
                    None
                };
                match dev {
                    Some(d) => worst = worst.max(d),
                    None => partial = true,
                }
                records.push(json!({ "lambda": p.lambda, "max_pairwise_deviation": dev, "z_residual": p.z_residual, "density_residual": p.density_residual }));
            }
            Err(e) => {
                partial = true;
                records.push(json!({ "lambda": p.lambda, "error": e }));
            }
        }
    }
    let (direct, via_weyl) = st.factorization().q_star_q(&st.chain);
    let report = json!({
        "alpha": alpha,
        "sites": cfg.sites,
        "max_pairwise_deviation": worst,
        "max_z_residual": points.iter().filter_map(|p| p.z_residual).fold(0.0, f64::max),
        "factorization_residual": st.factorization().residual,
        "q_star_q": { "direct": complex_json(direct), "via_weyl": complex_json(via_weyl), "gap": (direct - via_weyl).norm() },
        "points": records,
    });
    let defaults = json!({
        "schedule": cfg.schedule,
        "doubling_tol": cfg.doubling_tol,
        "factorization_tol": stationary_oracle::FACTORIZATION_TOL,
        "closure": "transparent",
        "density_prefactor": 1.0 / PI,
    });
    let files = vec![
        ("stationary.csv".into(), csv.as_str().to_string()),
        ("stationary.json".into(), json_text(&report)),
        manifest("stationary-check", run, defaults, report.clone()),
    ];
    Ok(Outcome { files, partial })
}

pub fn nevanlinna_audit(run: &RunSpec) -> Result<Outcome, CliError> {
    let handle = run.handle()?;
    let kind = handle.kind();
    let trunc = run.truncation(kind);
    handle.check_truncation(&trunc).map_err(config)?;
    let lambdas = match &run.lambda {
        Some(g) => g.values().map_err(CliError::Config)?,
        None => vec![-1.0, 0.0, 1.0],
    };
    let eps = match &run.eps {
        Some(g) => g.values().map_err(CliError::Config)?,
        None => vec![0.1, 1.0],
    };
    let mut grid = Vec::new();
    for &l in &lambdas {
        for &e in &eps {
            if !(e > 0.0) {
                return Err(CliError::Config(format!("ε = {e} must be positive")));
            }
            grid.push(SpectralPoint::new(l, e).map_err(config)?);
        }
    }
    let modes = run.modes.unwrap_or(16);
    let decay_truncs: Vec<ChannelTruncation> = if kind.is_radial() {
        let mut v: Vec<usize> = vec![(modes / 4).max(1), (modes / 2).max(1), modes];
        v.dedup();
        v.into_iter().map(|k| kind.truncation(k)).collect()
    } else {
        vec![trunc.clone()]
    };
    let nev = audit(&handle, &grid, &trunc, &decay_truncs);
    let partial = nev.points.iter().any(|p| p.error.is_some());
    let gamma = if kind == ModelKind::JacobiHalfline {
        let alpha = scalar_alpha(run, kind)?;
        let sites = run.sites.unwrap_or(2000);
        let zs: Vec<Complex64> = grid.iter().map(|p| p.z()).collect();
        let m = JacobiDiscretization::new(alpha, sites);
        match gamma_field_audit(&m, &zs) {
            Ok(a) => json!({
                "sites": sites,
                "max_gutgut": a.max_residual(GammaIdentity::Gutgut),
                "max_imm": a.max_residual(GammaIdentity::Imm),
                "max_gform1": a.max_residual(GammaIdentity::Gform1),
                "max_range": a.max_residual(GammaIdentity::Range),
                "rows": a.rows,
            }),
            Err(e) => json!({ "error": e.to_string() }),
        }
    } else {
        Value::Null
    };
    let report = json!({ "nevanlinna": nev, "gamma_identities": gamma });
    let defaults = json!({
        "model": handle.params(),
        "truncation": trunc.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "nevanlinna_tol": NEVANLINNA_TOL,
        "lambda": lambdas,
        "eps": eps,
    });
    let files = vec![("audit.json".into(), json_text(&report)), manifest("nevanlinna-audit", run, defaults, json!({ "strict": nev.strict, "min_im_eigenvalue": nev.min_im_eigenvalue }))];
    Ok(Outcome { files, partial })
}
