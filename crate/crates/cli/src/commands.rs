use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use bouncer_core::bouncer::{
    classical_density, default_species, make_state, parse_species_config, quantum_density,
    regime_estimate, tail_probability, turning_point_grid, Species, DEFAULT_SPECIES_CONFIG,
};
use bouncer_core::correspondence::{
    classical_coefficient, convergence_study_with, quantum_coefficient_albright,
    quantum_coefficient_closed, quantum_coefficient_numeric_with, ConvergenceReport, Route,
    StudyOptions, NUMERIC_TOL,
};
use bouncer_core::exec;
use bouncer_core::special_fn::{airy_zero_asymptotic, airy_zeros};
use bouncer_core::ExecPolicy;
use num_complex::Complex64;
use serde::Serialize;

use crate::output::{csv_string, Cell, OutputDir, RunManifest};
use crate::svg::{Chart, Series, Stroke};
use crate::{Cli, CliError, Command, CONFIG_ENV};

const QUANTUM_COLOR: &str = "#1f5fbf";
const CLASSICAL_COLOR: &str = "#e0a800";

/// Published rounded estimates of the tail probability, attached to the
/// records for comparison only.
const PUBLISHED_TAIL: [(usize, f64); 4] = [(1, 0.25), (2, 0.20), (10, 0.016), (30, 0.0077)];

struct Context {
    reproducible: bool,
    tol: f64,
    config_text: String,
    species: Vec<Species>,
}

impl Context {
    fn svg_comment(&self) -> Option<String> {
        if self.reproducible {
            return None;
        }
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Some(format!("generated at unix time {secs}"))
    }
}

fn load_config() -> Result<(String, Vec<Species>), CliError> {
    match std::env::var_os(CONFIG_ENV) {
        Some(path) => {
            let path = PathBuf::from(path);
            let text = std::fs::read_to_string(&path)
                .map_err(|source| CliError::ConfigRead { path, source })?;
            let species = parse_species_config(&text)?;
            Ok((text, species))
        }
        None => Ok((DEFAULT_SPECIES_CONFIG.to_string(), default_species())),
    }
}

/// Runs one command, writes its outputs and manifest, and returns the
/// manifest.
pub fn run(cli: &Cli) -> Result<RunManifest, CliError> {
    let tol = cli.tol.unwrap_or(NUMERIC_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    let (config_text, species) = load_config()?;
    let ctx = Context {
        reproducible: cli.reproducible,
        tol,
        config_text,
        species,
    };
    let mut out = OutputDir::create(&cli.out_dir)?;
    let mut params = BTreeMap::new();
    let name = match &cli.command {
        Command::Zeros { n } => {
            params.insert("n".into(), n.to_string());
            zeros(*n, &mut out)?;
            "zeros"
        }
        Command::Density { n, grid } => {
            params.insert("n".into(), n.to_string());
            params.insert("grid".into(), grid.to_string());
            density(&ctx, *n, *grid, &mut out)?;
            "density"
        }
        Command::Tailprob { n_list } => {
            params.insert("n_list".into(), join(n_list));
            tailprob(n_list, &mut out)?;
            "tailprob"
        }
        Command::Fourier {
            n,
            q_max,
            grid,
            routes,
        } => {
            params.insert("n".into(), n.to_string());
            params.insert("q_max".into(), q_max.to_string());
            params.insert("grid".into(), grid.to_string());
            params.insert("routes".into(), routes.join(","));
            params.insert("tol".into(), format!("{tol:e}"));
            fourier(&ctx, *n, *q_max, *grid, routes, &mut out)?;
            "fourier"
        }
        Command::Limit { n_list } => {
            params.insert("n_list".into(), join(n_list));
            params.insert("tol".into(), format!("{tol:e}"));
            limit(&ctx, n_list, &mut out)?;
            "limit"
        }
        Command::Regime {
            species,
            lg_um,
            height_mm,
        } => {
            if let Some(s) = species {
                params.insert("species".into(), s.clone());
            }
            if let Some(l) = lg_um {
                params.insert("lg_um".into(), l.to_string());
            }
            params.insert("height_mm".into(), height_mm.to_string());
            regime(&ctx, species.as_deref(), *lg_um, *height_mm, &mut out)?;
            "regime"
        }
    };
    let manifest = RunManifest::new(name, params, out.written().to_vec(), &ctx.config_text);
    out.write_json(&manifest.file_name(), &manifest)?;
    Ok(manifest)
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn zeros(n_max: usize, out: &mut OutputDir) -> Result<(), CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let zs = airy_zeros(n_max)?;
    let mut rows = Vec::with_capacity(zs.len());
    for z in &zs {
        let asym = airy_zero_asymptotic(z.index)?;
        rows.push(vec![
            Cell::Int(z.index),
            Cell::Num(z.value),
            Cell::Num(asym),
            Cell::Num(((asym - z.value) / z.value).abs()),
            Cell::Num(z.ai_prime_at_zero),
        ]);
    }
    let h = header(&["n", "a_n", "a_n_asymptotic", "rel_error", "ai_prime"]);
    out.write("zeros.csv", &csv_string(&h, &rows))?;
    Ok(())
}

fn density(ctx: &Context, n: usize, points: usize, out: &mut OutputDir) -> Result<(), CliError> {
    let state = make_state(n)?;
    let h = state.turning_point;
    let grid = turning_point_grid(h, 1.5, points)?;
    let q = quantum_density(&state, &grid)?;
    let c = classical_density(h, &grid)?;
    let rows: Vec<Vec<Cell>> = grid
        .iter()
        .zip(q.values().iter().zip(c.values()))
        .map(|(z, (rq, rc))| vec![Cell::Num(z / h), Cell::Num(*rq), Cell::Num(*rc)])
        .collect();
    let hd = header(&["zeta_over_h", "rho_quantum", "rho_classical"]);
    out.write(&format!("density_n{n}.csv"), &csv_string(&hd, &rows))?;

    // densities in units of 1/h so the shapes compare across n
    let peak = q.values().iter().fold(0.0f64, |m, v| m.max(*v)) * h;
    let chart = Chart {
        title: format!("Probability densities, n = {n}"),
        x_label: "z / h_n".into(),
        y_label: "h_n * density".into(),
        y_range: Some((0.0, 1.15 * peak)),
        series: vec![
            Series {
                name: "quantum".into(),
                color: QUANTUM_COLOR,
                stroke: Stroke::Solid,
                points: grid
                    .iter()
                    .zip(q.values())
                    .map(|(z, v)| (z / h, v * h))
                    .collect(),
            },
            Series {
                name: "classical".into(),
                color: CLASSICAL_COLOR,
                stroke: Stroke::Dashed,
                points: grid
                    .iter()
                    .zip(c.values())
                    .map(|(z, v)| (z / h, v * h))
                    .collect(),
            },
        ],
        markers: vec![(1.0, "turning point".into())],
        comment: ctx.svg_comment(),
        ..Chart::default()
    };
    out.write(&format!("density_n{n}.svg"), &chart.render())?;
    Ok(())
}

#[derive(Serialize)]
struct TailRecord {
    n: usize,
    closed_form: f64,
    quadrature: f64,
    quadrature_error: f64,
    abs_difference: f64,
    /// Rounded value quoted in the literature, for comparison only.
    published_estimate: Option<f64>,
}

fn tailprob(n_list: &[usize], out: &mut OutputDir) -> Result<(), CliError> {
    if n_list.is_empty() {
        return Err(CliError::Usage(
            "--n-list must name at least one state".into(),
        ));
    }
    let mut records = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let t = tail_probability(&make_state(n)?)?;
        records.push(TailRecord {
            n,
            closed_form: t.closed_form,
            quadrature: t.quadrature,
            quadrature_error: t.quadrature_error,
            abs_difference: (t.closed_form - t.quadrature).abs(),
            published_estimate: PUBLISHED_TAIL.iter().find(|(m, _)| *m == n).map(|p| p.1),
        });
    }
    out.write_json("tailprob.json", &records)?;
    Ok(())
}

fn fourier(
    ctx: &Context,
    n: usize,
    q_max: f64,
    points: usize,
    routes: &[String],
    out: &mut OutputDir,
) -> Result<(), CliError> {
    if !(q_max.is_finite() && q_max > 0.0) {
        return Err(CliError::Usage(format!(
            "--q-max must be positive, got {q_max}"
        )));
    }
    if points < 2 {
        return Err(CliError::Usage("--grid needs at least 2 points".into()));
    }
    let routes: Vec<Route> = routes
        .iter()
        .map(|r| r.parse::<Route>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if routes.is_empty() {
        return Err(CliError::Usage(
            "--routes must name at least one route".into(),
        ));
    }
    let state = make_state(n)?;
    let h = state.turning_point;
    let qs: Vec<f64> = (0..points)
        .map(|i| q_max * i as f64 / (points - 1) as f64)
        .collect();
    let values = exec::try_map(ExecPolicy::default(), &qs, |&big_q| {
        let q = big_q / h;
        routes
            .iter()
            .map(|r| {
                Ok(match *r {
                    Route::Numeric => quantum_coefficient_numeric_with(
                        &state,
                        q,
                        ctx.tol,
                        ExecPolicy::Sequential,
                    )?,
                    Route::Albright { order } => quantum_coefficient_albright(&state, q, order)?,
                    Route::ClosedForm => quantum_coefficient_closed(&state, q)?,
                    Route::Classical => classical_coefficient(h, q)?,
                }
                .value)
            })
            .collect::<Result<Vec<Complex64>, bouncer_core::Error>>()
    })?;

    let labels: Vec<String> = routes.iter().map(Route::label).collect();
    let mut hd = vec!["Q".to_string()];
    for l in &labels {
        hd.push(format!("re_{l}"));
        hd.push(format!("im_{l}"));
    }
    let mut pairs = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            hd.push(format!("dev_{}_{}", labels[i], labels[j]));
            pairs.push((i, j));
        }
    }
    let rows: Vec<Vec<Cell>> = qs
        .iter()
        .zip(&values)
        .map(|(big_q, v)| {
            let mut row = vec![Cell::Num(*big_q)];
            for c in v {
                row.push(Cell::Num(c.re));
                row.push(Cell::Num(c.im));
            }
            for &(i, j) in &pairs {
                row.push(Cell::Num((v[i] - v[j]).norm()));
            }
            row
        })
        .collect();
    out.write(&format!("fourier_n{n}.csv"), &csv_string(&hd, &rows))?;
    Ok(())
}

fn limit(
    ctx: &Context,
    n_list: &[usize],
    out: &mut OutputDir,
) -> Result<Vec<ConvergenceReport>, CliError> {
    if n_list.len() < 2 {
        return Err(CliError::Usage("--n-list needs at least two states".into()));
    }
    let opts = StudyOptions {
        tol: ctx.tol,
        ..StudyOptions::default()
    };
    let reports = convergence_study_with(n_list, &opts)?;
    out.write_json("limit.json", &reports)?;

    let slope = reports[0].fitted_exponent;
    let pts: Vec<(f64, f64)> = reports
        .iter()
        .map(|r| (r.a_n.abs(), r.fixed_q_deviation))
        .collect();
    // least-squares line through the points in log space
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0.ln()).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1.ln()).sum::<f64>() / k;
    let (x0, x1) = (pts[0].0, pts[pts.len() - 1].0);
    let fit = |x: f64| (my + slope * (x.ln() - mx)).exp();
    let chart = Chart {
        title: format!(
            "Coefficient deviation at Q = {}: fitted slope {slope:.3}",
            opts.fixed_q
        ),
        x_label: "|a_n|".into(),
        y_label: "|numeric - closed form|".into(),
        log_x: true,
        log_y: true,
        series: vec![
            Series {
                name: "deviation".into(),
                color: QUANTUM_COLOR,
                stroke: Stroke::Points,
                points: pts.clone(),
            },
            Series {
                name: format!("fit, slope {slope:.3}"),
                color: "#c03030",
                stroke: Stroke::Dashed,
                points: vec![(x0, fit(x0)), (x1, fit(x1))],
            },
        ],
        comment: ctx.svg_comment(),
        ..Chart::default()
    };
    out.write("limit.svg", &chart.render())?;
    Ok(reports)
}

fn regime(
    ctx: &Context,
    species: Option<&str>,
    lg_um: Option<f64>,
    height_mm: f64,
    out: &mut OutputDir,
) -> Result<(), CliError> {
    let height = height_mm * 1e-3;
    let mut rows = Vec::new();
    let mut push = |label: &str, l_g: f64| -> Result<(), CliError> {
        let r = regime_estimate(l_g, height, label)?;
        rows.push(vec![
            Cell::Text(r.species_label),
            Cell::Num(r.l_g * 1e6),
            Cell::Num(r.drop_height * 1e3),
            Cell::Num(r.n_estimate),
            Cell::Num(r.suppression),
        ]);
        Ok(())
    };
    match (lg_um, species) {
        (Some(l), label) => push(label.unwrap_or("custom"), l * 1e-6)?,
        (None, Some(name)) => {
            let s = ctx
                .species
                .iter()
                .find(|s| s.matches(name))
                .ok_or_else(|| CliError::Usage(format!("unknown species '{name}'")))?;
            push(&s.label, s.params.gravitational_length()?)?;
        }
        (None, None) => {
            for s in &ctx.species {
                push(&s.label, s.params.gravitational_length()?)?;
            }
        }
    }
    let hd = header(&["label", "l_g_um", "height_mm", "n_estimate", "suppression"]);
    out.write("regime.csv", &csv_string(&hd, &rows))?;
    Ok(())
}
