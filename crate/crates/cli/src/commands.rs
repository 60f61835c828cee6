//! The dataset-producing subcommands: surface, evolve, average, postselect
//! and asymptotics.

use std::io::Write;

use serde_json::{json, Map, Value};
use tjc_core::{
    averaged_phi_vacuum, averaged_psi_vacuum, eof, h2_hot, h2_integral, h_series,
    numeric_time_average, p1_statistics, tau0, AtomicFamily, Family, HOrder, PsiCoeffs,
    ThermalSpec,
};

use crate::config::{Format, Grid, SweepConfig};
use crate::output::{fmt_f64, open_sink, surface_row_json, write_json, write_surface_csv};
use crate::rows::{surface_rows, EMIT_VALIDATE_TOL};
use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn base_metadata(command: &str, cfg: &SweepConfig, spec: &ThermalSpec) -> Vec<(String, String)> {
    let mut md = vec![
        ("command".to_string(), command.to_string()),
        ("version".to_string(), VERSION.to_string()),
        ("nbar".to_string(), fmt_f64(spec.nbar())),
        ("kappa".to_string(), format!("{}", spec.kappa())),
        (
            "epsilon_tail".to_string(),
            format!("{:e}", spec.epsilon_tail()),
        ),
        ("n_max".to_string(), spec.n_max().to_string()),
        ("omega_over_g".to_string(), fmt_f64(cfg.omega_over_g)),
        ("threads".to_string(), cfg.threads.to_string()),
        ("validate_tol".to_string(), format!("{EMIT_VALIDATE_TOL:e}")),
    ];
    if let Some(f) = cfg.family {
        md.push(("family".to_string(), f.to_string()));
    }
    md
}

fn metadata_json(md: &[(String, String)]) -> Value {
    let mut obj = Map::new();
    for (k, v) in md {
        obj.insert(k.clone(), json!(v));
    }
    Value::Object(obj)
}

fn grid_metadata(md: &mut Vec<(String, String)>, name: &str, grid: &Grid) {
    md.push((name.to_string(), grid.spec_string()));
}

/// `surface`: measures plus matrix entries over the full beta x gt grid.
pub fn cmd_surface(cfg: &SweepConfig) -> Result<(), CliError> {
    let family = cfg.require_family()?;
    let beta_grid = cfg.require_beta_grid()?;
    let gt_grid = cfg.require_gt_grid()?;
    let spec = cfg.thermal_spec()?;
    let rows = surface_rows(
        family,
        &beta_grid.points(),
        &gt_grid.points(),
        &spec,
        cfg.omega_over_g,
        cfg.threads,
    )?;
    let mut md = base_metadata("surface", cfg, &spec);
    grid_metadata(&mut md, "beta_grid", &beta_grid);
    grid_metadata(&mut md, "gt_grid", &gt_grid);
    let mut sink = open_sink(cfg.output.as_deref())?;
    match cfg.format {
        Format::Csv => write_surface_csv(sink.as_mut(), &md, &rows)?,
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(surface_row_json).collect();
            write_json(sink.as_mut(), metadata_json(&md), rows)?;
        }
    }
    Ok(())
}

/// `evolve`: a single-beta time series with the same row schema as
/// `surface`.
pub fn cmd_evolve(cfg: &SweepConfig) -> Result<(), CliError> {
    let family = cfg.require_family()?;
    let beta = cfg
        .beta
        .ok_or_else(|| CliError::Usage("--beta is required for evolve".into()))?;
    let gt_grid = cfg.require_gt_grid()?;
    let spec = cfg.thermal_spec()?;
    let rows = surface_rows(
        family,
        &[beta],
        &gt_grid.points(),
        &spec,
        cfg.omega_over_g,
        cfg.threads,
    )?;
    let mut md = base_metadata("evolve", cfg, &spec);
    md.push(("beta".to_string(), fmt_f64(beta)));
    grid_metadata(&mut md, "gt_grid", &gt_grid);
    let mut sink = open_sink(cfg.output.as_deref())?;
    match cfg.format {
        Format::Csv => write_surface_csv(sink.as_mut(), &md, &rows)?,
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(surface_row_json).collect();
            write_json(sink.as_mut(), metadata_json(&md), rows)?;
        }
    }
    Ok(())
}

struct AverageRow {
    family: Family,
    beta: f64,
    eof_averaged: f64,
    eof_initial: f64,
}

fn average_rows_for(
    family: Family,
    betas: &[f64],
    cfg: &SweepConfig,
    spec: &ThermalSpec,
) -> Result<Vec<AverageRow>, CliError> {
    let mut out = Vec::with_capacity(betas.len());
    for &beta in betas {
        let averaged = match cfg.window {
            Some(window) => numeric_time_average(
                &AtomicFamily::new(family, beta),
                spec,
                window,
                cfg.samples,
                cfg.omega_over_g,
            )?,
            None => {
                if spec.nbar() > 0.0 {
                    return Err(CliError::Usage(
                        "closed-form averages exist only for nbar = 0; \
                         pass --window (and optionally --samples) for thermal fields"
                            .into(),
                    ));
                }
                match family {
                    Family::Phi => averaged_phi_vacuum(beta),
                    Family::Psi => averaged_psi_vacuum(beta),
                }
            }
        };
        let report = averaged.validate(EMIT_VALIDATE_TOL);
        if !report.pass {
            return Err(CliError::Numerical(format!(
                "averaged matrix at beta={beta} failed validation: {report:?}"
            )));
        }
        let eof_averaged = eof(&averaged).map_err(|e| CliError::Numerical(e.to_string()))?;
        let eof_initial = eof(&AtomicFamily::new(family, beta).density())
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        out.push(AverageRow {
            family,
            beta,
            eof_averaged,
            eof_initial,
        });
    }
    Ok(out)
}

/// `average`: EOF of the time-averaged mixtures against the input EOF,
/// marking the two special angles for the vacuum closed forms.
pub fn cmd_average(cfg: &SweepConfig) -> Result<(), CliError> {
    let beta_grid = cfg.require_beta_grid()?;
    let spec = cfg.thermal_spec()?;
    let families: Vec<Family> = match cfg.family {
        Some(f) => vec![f],
        None => vec![Family::Phi, Family::Psi],
    };
    let betas = beta_grid.points();
    let mut rows = Vec::new();
    for &family in &families {
        rows.extend(average_rows_for(family, &betas, cfg, &spec)?);
    }

    let mut md = base_metadata("average", cfg, &spec);
    grid_metadata(&mut md, "beta_grid", &beta_grid);
    if let Some(w) = cfg.window {
        md.push(("window".to_string(), fmt_f64(w)));
        md.push(("samples".to_string(), cfg.samples.to_string()));
    } else {
        // Crossing angles of the vacuum closed forms, located numerically.
        let beta0 = crate::crossings::phi_equal_entanglement_angle(1e-10)?;
        let beta1 = crate::crossings::psi_zero_entanglement_boundary(1e-10)?;
        md.push(("beta0_equal_entanglement".to_string(), fmt_f64(beta0)));
        md.push((
            "beta1_zero_entanglement_boundary".to_string(),
            fmt_f64(beta1),
        ));
    }

    let mut sink = open_sink(cfg.output.as_deref())?;
    match cfg.format {
        Format::Csv => {
            for (k, v) in &md {
                writeln!(sink, "# {k} = {v}")?;
            }
            writeln!(sink, "family,beta,eof_averaged,eof_initial")?;
            for r in &rows {
                writeln!(
                    sink,
                    "{},{},{},{}",
                    r.family,
                    fmt_f64(r.beta),
                    fmt_f64(r.eof_averaged),
                    fmt_f64(r.eof_initial)
                )?;
            }
            sink.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "family": r.family.to_string(),
                        "beta": r.beta,
                        "eof_averaged": r.eof_averaged,
                        "eof_initial": r.eof_initial,
                    })
                })
                .collect();
            write_json(sink.as_mut(), metadata_json(&md), rows)?;
        }
    }
    Ok(())
}

/// `postselect`: the probability `p1` of extracting `(|01⟩+|10⟩)/sqrt 2`
/// over the beta x gt grid, with per-beta summaries.
pub fn cmd_postselect(cfg: &SweepConfig) -> Result<(), CliError> {
    match cfg.family {
        Some(Family::Psi) | None => {}
        Some(Family::Phi) => {
            return Err(CliError::Usage(
                "postselection applies to the psi family only: phi-family outputs have \
                 no orthogonal decomposition into a maximally entangled component plus \
                 a remainder"
                    .into(),
            ))
        }
    }
    let beta_grid = cfg.require_beta_grid()?;
    let gt_grid = cfg.require_gt_grid()?;
    let spec = cfg.thermal_spec()?;
    let betas = beta_grid.points();
    let gts = gt_grid.points();

    let stats = p1_statistics(&betas, &spec, &gts, cfg.omega_over_g)?;

    let mut md = base_metadata("postselect", cfg, &spec);
    grid_metadata(&mut md, "beta_grid", &beta_grid);
    grid_metadata(&mut md, "gt_grid", &gt_grid);
    md.push((
        "relative_spread_of_p1_maxima".to_string(),
        fmt_f64(stats.relative_spread_of_maxima),
    ));

    let mut sink = open_sink(cfg.output.as_deref())?;
    match cfg.format {
        Format::Csv => {
            for (k, v) in &md {
                writeln!(sink, "# {k} = {v}")?;
            }
            for s in &stats.per_beta {
                writeln!(
                    sink,
                    "# p1_summary beta = {} max = {} mean = {} std = {}",
                    fmt_f64(s.beta),
                    fmt_f64(s.max),
                    fmt_f64(s.mean),
                    fmt_f64(s.std)
                )?;
            }
            writeln!(sink, "beta,gt,p1")?;
            for &beta in &betas {
                for &gt in &gts {
                    let p1 = 2.0 * PsiCoeffs::compute(beta, &spec, gt, cfg.omega_over_g).b3;
                    writeln!(sink, "{},{},{}", fmt_f64(beta), fmt_f64(gt), fmt_f64(p1))?;
                }
            }
            sink.flush()?;
        }
        Format::Json => {
            let mut rows = Vec::new();
            for &beta in &betas {
                for &gt in &gts {
                    let p1 = 2.0 * PsiCoeffs::compute(beta, &spec, gt, cfg.omega_over_g).b3;
                    rows.push(json!({ "beta": beta, "gt": gt, "p1": p1 }));
                }
            }
            let mut meta = metadata_json(&md);
            let summary: Vec<Value> = stats
                .per_beta
                .iter()
                .map(|s| {
                    json!({
                        "beta": s.beta, "max": s.max, "mean": s.mean, "std": s.std,
                    })
                })
                .collect();
            meta.as_object_mut()
                .unwrap()
                .insert("p1_summary".to_string(), Value::Array(summary));
            write_json(sink.as_mut(), meta, rows)?;
        }
    }
    Ok(())
}

/// `asymptotics`: the thermal Rabi sum `h2` through its three evaluation
/// routes (truncated series, Abel-Plana integral, hot asymptote).
pub fn cmd_asymptotics(cfg: &SweepConfig) -> Result<(), CliError> {
    let spec = cfg.thermal_spec()?;
    let kappa = spec.kappa();
    if !kappa.is_finite() {
        return Err(CliError::Usage(
            "asymptotics needs a thermal field: give --kappa or a positive --nbar".into(),
        ));
    }
    let gt_grid = cfg.require_gt_grid()?;
    let gts = gt_grid.points();

    let mut md = base_metadata("asymptotics", cfg, &spec);
    grid_metadata(&mut md, "gt_grid", &gt_grid);
    md.push(("tau0_g".to_string(), fmt_f64(tau0(kappa, 1.0))));

    struct Row {
        gt: f64,
        t_tilde: f64,
        series: f64,
        integral: f64,
        hot: f64,
    }
    let mut rows = Vec::with_capacity(gts.len());
    for &gt in &gts {
        let series = h_series(&spec, gt, HOrder::H2);
        let integral = h2_integral(kappa, gt).map_err(|e| CliError::Numerical(e.to_string()))?;
        let hot = h2_hot(kappa, gt);
        rows.push(Row {
            gt,
            t_tilde: gt / kappa.sqrt(),
            series,
            integral,
            hot,
        });
    }

    let mut sink = open_sink(cfg.output.as_deref())?;
    match cfg.format {
        Format::Csv => {
            for (k, v) in &md {
                writeln!(sink, "# {k} = {v}")?;
            }
            writeln!(
                sink,
                "kappa,gt,t_tilde,h2_series,h2_integral,h2_hot,series_minus_integral,hot_minus_integral"
            )?;
            for r in &rows {
                writeln!(
                    sink,
                    "{},{},{},{},{},{},{},{}",
                    fmt_f64(kappa),
                    fmt_f64(r.gt),
                    fmt_f64(r.t_tilde),
                    fmt_f64(r.series),
                    fmt_f64(r.integral),
                    fmt_f64(r.hot),
                    fmt_f64(r.series - r.integral),
                    fmt_f64(r.hot - r.integral)
                )?;
            }
            sink.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "kappa": kappa,
                        "gt": r.gt,
                        "t_tilde": r.t_tilde,
                        "h2_series": r.series,
                        "h2_integral": r.integral,
                        "h2_hot": r.hot,
                        "series_minus_integral": r.series - r.integral,
                        "hot_minus_integral": r.hot - r.integral,
                    })
                })
                .collect();
            write_json(sink.as_mut(), metadata_json(&md), rows)?;
        }
    }
    Ok(())
}
