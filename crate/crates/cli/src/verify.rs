//! The `verify` subcommand: a battery of numerical cross-checks between
//! independent evaluation routes, each with a pinned tolerance. Any failure
//! makes the command exit with code 2.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use tjc_core::{
    averaged_phi_vacuum, averaged_psi_vacuum, branch_mixture, decompose, eof, h2_integral,
    h_series, measure_three_outcome, nondemolition_circuit, numeric_time_average, phi_reduced,
    psi_reduced, AtomicFamily, Family, HOrder, MConvention, OracleEvolver, PhiCoeffs, PsiCoeffs,
    ThermalSpec,
};

use crate::CliError;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
    pub note: String,
}

impl CheckResult {
    fn new(name: &'static str, max_dev: f64, tol: f64, note: String) -> Self {
        CheckResult {
            name,
            max_dev,
            tol,
            pass: max_dev <= tol,
            note,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub epsilon_tail: f64,
    /// Evaluate `m±` with arctan instead of artanh, demonstrating that the
    /// alternative spelling breaks the `t = 0` identity at finite
    /// temperature.
    pub debug_m_arctan: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            epsilon_tail: tjc_core::DEFAULT_EPSILON_TAIL,
            debug_m_arctan: false,
        }
    }
}

const BETAS: [f64; 5] = [0.0, 0.3, FRAC_PI_4, 1.2, 3.0 * FRAC_PI_4];
const NBARS: [f64; 3] = [0.0, 0.64, 5.9];
const GTS: [f64; 5] = [0.0, 0.7, 2.1, 5.0, 12.0];

pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    let mut checks = Vec::new();
    let mut warnings = Vec::new();

    let convention = if opts.debug_m_arctan {
        MConvention::ArctanDebug
    } else {
        MConvention::Artanh
    };

    let specs: Vec<ThermalSpec> = NBARS
        .iter()
        .map(|&n| ThermalSpec::new(n, opts.epsilon_tail))
        .collect::<Result<_, _>>()?;

    for spec in &specs {
        if spec.tail() > 1e-10 {
            warnings.push(format!(
                "truncation tail {:.2e} at nbar = {} exceeds 1e-10; emitted matrices may \
                 fail the validation tolerance",
                spec.tail(),
                spec.nbar()
            ));
        }
    }

    // 1. t = 0 identity: the closed forms must reproduce the input state.
    {
        let mut worst = 0.0f64;
        for spec in &specs {
            for &beta in &BETAS {
                let phi = PhiCoeffs::compute_with(beta, spec, 0.0, convention).to_density();
                worst =
                    worst.max(phi.max_abs_diff(&AtomicFamily::new(Family::Phi, beta).density()));
                let psi = psi_reduced(beta, spec, 0.0, 0.0);
                worst =
                    worst.max(psi.max_abs_diff(&AtomicFamily::new(Family::Psi, beta).density()));
            }
        }
        let note = if opts.debug_m_arctan {
            "m± evaluated with arctan (debug)".to_string()
        } else {
            String::new()
        };
        checks.push(CheckResult::new("t0-identity", worst, 1e-10, note));
    }

    // 2. Closed forms against the brute-force sector evolution.
    {
        let mut worst = 0.0f64;
        for spec in &specs {
            let evolver = OracleEvolver::new(spec.clone());
            for &beta in &BETAS {
                for &gt in &GTS {
                    let phi = phi_reduced(beta, spec, gt);
                    let oracle = evolver.evolve(&AtomicFamily::new(Family::Phi, beta), gt)?;
                    worst = worst.max(phi.max_abs_diff(&oracle));
                    let psi = psi_reduced(beta, spec, gt, 0.0);
                    let oracle = evolver.evolve(&AtomicFamily::new(Family::Psi, beta), gt)?;
                    worst = worst.max(psi.max_abs_diff(&oracle));
                }
            }
        }
        checks.push(CheckResult::new(
            "oracle-equivalence",
            worst,
            1e-9,
            String::new(),
        ));
    }

    // 3. Dark-state stability: the beta = 3pi/4 state never moves.
    {
        let dark = AtomicFamily::new(Family::Phi, 3.0 * FRAC_PI_4);
        let input = dark.density();
        let mut worst = 0.0f64;
        for spec in &specs {
            for k in 0..50 {
                let gt = 0.4 * k as f64;
                let rho = phi_reduced(dark.beta, spec, gt);
                worst = worst.max(rho.max_abs_diff(&input));
                worst = worst.max((eof(&rho)? - 1.0).abs());
            }
        }
        checks.push(CheckResult::new("dark-state", worst, 1e-9, String::new()));
    }

    // 4. h2: truncated series against the Abel-Plana integral.
    {
        let mut worst = 0.0f64;
        for &kappa in &[0.05, 0.1, 0.5, 1.0, 2.0] {
            let spec = ThermalSpec::from_kappa(kappa, opts.epsilon_tail.min(1e-12))?;
            for &gt in &[0.0, 0.5, 2.0, 5.0, 10.0] {
                let series = h_series(&spec, gt, HOrder::H2);
                let integral = h2_integral(kappa, gt)?;
                worst = worst.max((series - integral).abs());
            }
        }
        checks.push(CheckResult::new(
            "h2-series-vs-integral",
            worst,
            1e-6,
            String::new(),
        ));
    }

    // 5. Vacuum Phi window average against the closed mixture.
    {
        let spec = ThermalSpec::new(0.0, opts.epsilon_tail)?;
        let mut worst = 0.0f64;
        for &beta in &[0.0, 0.4, FRAC_PI_4, 1.1, 2.4] {
            let avg = numeric_time_average(
                &AtomicFamily::new(Family::Phi, beta),
                &spec,
                SQRT_2 * PI,
                100_001,
                0.0,
            )?;
            worst = worst.max(avg.max_abs_diff(&averaged_phi_vacuum(beta)));
        }
        checks.push(CheckResult::new(
            "phi-window-average",
            worst,
            1e-8,
            String::new(),
        ));
    }

    // 6. Vacuum Psi one-period average against the infinite-time mixture.
    {
        let spec = ThermalSpec::new(0.0, opts.epsilon_tail)?;
        let window = 2.0 * PI / 6.0f64.sqrt();
        let mut worst = 0.0f64;
        for &beta in &[0.0, 0.4, FRAC_PI_4, 1.1, 2.4] {
            let avg = numeric_time_average(
                &AtomicFamily::new(Family::Psi, beta),
                &spec,
                window,
                100_001,
                0.0,
            )?;
            worst = worst.max(avg.max_abs_diff(&averaged_psi_vacuum(beta)));
        }
        checks.push(CheckResult::new(
            "psi-infinite-average",
            worst,
            1e-8,
            String::new(),
        ));
    }

    // 7. Postselection identities: p1 = 2 b3 = P_rest, reconstruction, and
    // the ancilla circuit branch weights.
    {
        let spec = ThermalSpec::new(5.9, opts.epsilon_tail)?;
        let mut worst = 0.0f64;
        for &beta in &[0.0, 0.8, FRAC_PI_4, 1.5] {
            for &gt in &[0.5, 2.0, 4.0, 8.0] {
                let rho = psi_reduced(beta, &spec, gt, 0.0);
                let dec = decompose(&rho)?;
                let p1_direct = 2.0 * PsiCoeffs::compute(beta, &spec, gt, 0.0).b3;
                worst = worst.max((dec.p1 - p1_direct).abs());
                let out = measure_three_outcome(&rho);
                worst = worst.max((out.p_rest - dec.p1).abs());
                // reconstruction
                let mut diff = 0.0f64;
                for i in 0..4 {
                    for j in 0..4 {
                        let v =
                            dec.p1 * dec.rho1.entry(i, j) + (1.0 - dec.p1) * dec.rho2.entry(i, j);
                        diff = diff.max((v - rho.entry(i, j)).norm());
                    }
                }
                worst = worst.max(diff);
                // circuit
                let circuit = nondemolition_circuit(&rho)?;
                let expect = branch_mixture(&dec);
                for i in 0..8 {
                    for j in 0..8 {
                        worst = worst.max((circuit[i][j] - expect[i][j]).norm());
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "p1-identities",
            worst,
            1e-10,
            String::new(),
        ));
    }

    Ok(VerifyReport { checks, warnings })
}

pub fn print_report(report: &VerifyReport, sink: &mut dyn std::io::Write) -> std::io::Result<()> {
    for w in &report.warnings {
        writeln!(sink, "warning: {w}")?;
    }
    for c in &report.checks {
        writeln!(
            sink,
            "{:<24} max_dev = {:>12.4e}  tol = {:>8.1e}  {}{}",
            c.name,
            c.max_dev,
            c.tol,
            if c.pass { "PASS" } else { "FAIL" },
            if c.note.is_empty() {
                String::new()
            } else {
                format!("  ({})", c.note)
            }
        )?;
    }
    let overall = if report.all_pass() { "PASS" } else { "FAIL" };
    writeln!(sink, "verify: {overall}")?;
    Ok(())
}
