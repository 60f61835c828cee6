//! Grid evaluation engines. Rows are always produced in input order
//! (beta-major, then gt), regardless of how many worker threads run the
//! evaluation, so output files are bit-identical across `--threads`
//! settings.

use tjc_core::{measures, phi_reduced, psi_reduced, Family, ThermalSpec, TwoQubitDensity};

use crate::CliError;

/// Validation tolerance applied to every matrix before it is emitted.
pub const EMIT_VALIDATE_TOL: f64 = 1e-9;

/// One dataset row of a surface or evolve sweep.
#[derive(Clone, Debug)]
pub struct SurfaceRow {
    pub beta: f64,
    pub gt: f64,
    pub nbar: f64,
    pub concurrence: f64,
    pub eof: f64,
    pub negativity: f64,
    pub rho: TwoQubitDensity,
}

fn compute_row(
    family: Family,
    beta: f64,
    gt: f64,
    spec: &ThermalSpec,
    omega_over_g: f64,
) -> Result<SurfaceRow, CliError> {
    let rho = match family {
        Family::Phi => phi_reduced(beta, spec, gt),
        Family::Psi => psi_reduced(beta, spec, gt, omega_over_g),
    };
    let report = rho.validate(EMIT_VALIDATE_TOL);
    if !report.pass {
        return Err(CliError::Numerical(format!(
            "matrix at beta={beta}, gt={gt} failed validation: \
             hermiticity {:.2e}, trace defect {:.2e}, min eigenvalue {:.2e}",
            report.hermiticity_defect, report.trace_defect, report.min_eigenvalue
        )));
    }
    let m = measures(&rho).map_err(|e| CliError::Numerical(e.to_string()))?;
    Ok(SurfaceRow {
        beta,
        gt,
        nbar: spec.nbar(),
        concurrence: m.concurrence,
        eof: m.eof,
        negativity: m.negativity,
        rho,
    })
}

/// Evaluate the beta x gt product grid, beta-major, optionally in parallel.
pub fn surface_rows(
    family: Family,
    betas: &[f64],
    gts: &[f64],
    spec: &ThermalSpec,
    omega_over_g: f64,
    threads: usize,
) -> Result<Vec<SurfaceRow>, CliError> {
    let jobs: Vec<(f64, f64)> = betas
        .iter()
        .flat_map(|&b| gts.iter().map(move |&t| (b, t)))
        .collect();
    let threads = threads.max(1).min(jobs.len().max(1));
    if threads == 1 {
        return jobs
            .iter()
            .map(|&(b, t)| compute_row(family, b, t, spec, omega_over_g))
            .collect();
    }

    let chunk = jobs.len().div_ceil(threads);
    let mut results: Vec<Option<Result<SurfaceRow, CliError>>> = Vec::new();
    results.resize_with(jobs.len(), || None);
    std::thread::scope(|scope| {
        for (slice_jobs, slice_out) in jobs.chunks(chunk).zip(results.chunks_mut(chunk)) {
            scope.spawn(move || {
                for ((b, t), out) in slice_jobs.iter().zip(slice_out.iter_mut()) {
                    *out = Some(compute_row(family, *b, *t, spec, omega_over_g));
                }
            });
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("worker filled every slot"))
        .collect()
}
