//! Extraction of the maximally entangled component from Psi-family output
//! states.
//!
//! Every evolved Psi state has a central block proportional to
//! `|01+10⟩⟨01+10|` and an orthogonal remainder supported on
//! `span{|00⟩, |11⟩}`, so the two can be discriminated with certainty: a
//! three-outcome projective measurement (onto `|00⟩`, `|11⟩` and the rest)
//! or, non-destructively, a pair of CNOTs onto an ancilla.

use num_complex::Complex64 as C64;

use crate::linalg::{kron, CMat};
use crate::qcore::TwoQubitDensity;
use crate::{Error, Result};

const SHAPE_TOL: f64 = 1e-12;

/// Split of a Psi-shaped state into `p1 * rho1 + (1 - p1) * rho2`.
#[derive(Clone, Debug)]
pub struct PostselectDecomposition {
    /// Probability of the maximally entangled component (`2 b3`).
    pub p1: f64,
    /// The fixed state `|01+10⟩⟨01+10| / 2`.
    pub rho1: TwoQubitDensity,
    /// Unit-trace remainder supported on `span{|00⟩, |11⟩}`.
    pub rho2: TwoQubitDensity,
}

/// The extracted maximally entangled state `|01+10⟩⟨01+10| / 2`.
pub fn triplet_projector() -> TwoQubitDensity {
    let z = C64::new(0.0, 0.0);
    let h = C64::new(0.5, 0.0);
    TwoQubitDensity::from_matrix([[z, z, z, z], [z, h, h, z], [z, h, h, z], [z, z, z, z]])
}

struct PsiShape {
    b1: f64,
    b2: C64,
    b3: f64,
    b4: f64,
}

/// Check the Psi output structure (central block proportional to
/// `[[1,1],[1,1]]`, corners `b1`, `b2`, `b4`, everything else zero) and
/// read off its parameters.
fn read_psi_shape(rho: &TwoQubitDensity) -> Result<PsiShape> {
    let m = rho.symmetrized();
    for (i, j) in [
        (0, 1),
        (0, 2),
        (1, 0),
        (2, 0),
        (1, 3),
        (2, 3),
        (3, 1),
        (3, 2),
    ] {
        let mag = m.entry(i, j).norm();
        if mag > SHAPE_TOL {
            return Err(Error::Structure(format!(
                "entry ({i},{j}) = {mag:.3e} is outside the expected pattern"
            )));
        }
    }
    let b3 = m.entry(1, 1).re;
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        if (m.entry(i, j) - C64::new(b3, 0.0)).norm() > SHAPE_TOL {
            return Err(Error::Structure(
                "central block is not proportional to [[1,1],[1,1]]".into(),
            ));
        }
    }
    Ok(PsiShape {
        b1: m.entry(3, 3).re,
        b2: m.entry(3, 0),
        b3,
        b4: m.entry(0, 0).re,
    })
}

/// Decompose a Psi-shaped state into the maximally entangled component with
/// probability `p1 = 2 b3` and the orthogonal `{|00⟩, |11⟩}`-block
/// remainder.
pub fn decompose(rho: &TwoQubitDensity) -> Result<PostselectDecomposition> {
    let shape = read_psi_shape(rho)?;
    let p1 = 2.0 * shape.b3;
    let rest = shape.b1 + shape.b4;
    let z = C64::new(0.0, 0.0);
    let rho2 = if rest > SHAPE_TOL {
        let inv = 1.0 / rest;
        TwoQubitDensity::from_matrix([
            [C64::new(shape.b4 * inv, 0.0), z, z, shape.b2.conj() * inv],
            [z, z, z, z],
            [z, z, z, z],
            [shape.b2 * inv, z, z, C64::new(shape.b1 * inv, 0.0)],
        ])
    } else if p1 > 1.0 - 1e-9 {
        // Pure |01+10> input: the remainder never occurs; report the ground
        // state as an arbitrary placeholder with weight zero.
        let mut m = [[z; 4]; 4];
        m[3][3] = C64::new(1.0, 0.0);
        TwoQubitDensity::from_matrix(m)
    } else {
        return Err(Error::Degenerate(format!(
            "b1 + b4 = {rest:.3e} vanishes while p1 = {p1:.6} < 1"
        )));
    };
    Ok(PostselectDecomposition {
        p1,
        rho1: triplet_projector(),
        rho2,
    })
}

/// Probabilities of the three-outcome projective measurement.
#[derive(Clone, Copy, Debug)]
pub struct ThreeOutcome {
    pub p00: f64,
    pub p11: f64,
    pub p_rest: f64,
}

/// `P00 = ⟨00|rho|00⟩`, `P11 = ⟨11|rho|11⟩`, and the complement.
pub fn measure_three_outcome(rho: &TwoQubitDensity) -> ThreeOutcome {
    let p00 = rho.entry(3, 3).re;
    let p11 = rho.entry(0, 0).re;
    ThreeOutcome {
        p00,
        p11,
        p_rest: 1.0 - p00 - p11,
    }
}

/// Post-measurement state of the "rest" outcome: the projection onto
/// `span{|10⟩, |01⟩}` renormalized. `None` when that outcome has
/// (numerically) zero probability.
pub fn rest_state(rho: &TwoQubitDensity) -> Option<TwoQubitDensity> {
    let p = rho.entry(1, 1).re + rho.entry(2, 2).re;
    if p <= 1e-12 {
        return None;
    }
    let z = C64::new(0.0, 0.0);
    let inv = 1.0 / p;
    let mut m = [[z; 4]; 4];
    for i in [1usize, 2] {
        for j in [1usize, 2] {
            m[i][j] = rho.entry(i, j) * inv;
        }
    }
    Some(TwoQubitDensity::from_matrix(m))
}

/// Joint 8x8 state after `T = CNOT_13 CNOT_23` acting on `rho x |0⟩⟨0|`,
/// with atom 1, atom 2 and the ancilla ordered most- to least-significant.
/// The joint basis index is `2 * atom_index + aux`, where `atom_index` uses
/// the fixed two-qubit order and `aux` is 0 for `|0⟩`, 1 for `|1⟩`.
///
/// For a Psi-shaped input this equals
/// `p1 * rho1 x |1⟩⟨1| + (1 - p1) * rho2 x |0⟩⟨0|`: the ancilla reading
/// discriminates the two components without disturbing them.
pub fn nondemolition_circuit(rho: &TwoQubitDensity) -> Result<Vec<Vec<C64>>> {
    // Shape check up front; the circuit itself is defined for any state.
    read_psi_shape(rho)?;
    let joint = joint_with_ancilla(rho);
    let t = cnot13_cnot23();
    let out = t.mul(&joint).mul(&t.adjoint());
    Ok((0..8)
        .map(|i| (0..8).map(|j| out[(i, j)]).collect())
        .collect())
}

fn joint_with_ancilla(rho: &TwoQubitDensity) -> CMat {
    let mut aux = CMat::zeros(2);
    aux[(0, 0)] = C64::new(1.0, 0.0); // |0><0|
    kron(&rho.to_cmat(), &aux)
}

/// Number of excited atoms for a two-qubit basis index in the fixed order.
fn excited_atoms(atom_idx: usize) -> (usize, usize) {
    (1 - atom_idx / 2, 1 - atom_idx % 2)
}

fn cnot13_cnot23() -> CMat {
    // Permutation: the ancilla bit flips once per excited control atom.
    let mut t = CMat::zeros(8);
    for atom in 0..4 {
        let (q1, q2) = excited_atoms(atom);
        let flips = (q1 + q2) % 2;
        for aux in 0..2 {
            let from = 2 * atom + aux;
            let to = 2 * atom + (aux + flips) % 2;
            t[(to, from)] = C64::new(1.0, 0.0);
        }
    }
    t
}

/// Expected circuit output `p1 * rho1 x |1⟩⟨1| + (1-p1) * rho2 x |0⟩⟨0|`
/// for a given decomposition, in the same joint basis as
/// [`nondemolition_circuit`].
pub fn branch_mixture(dec: &PostselectDecomposition) -> Vec<Vec<C64>> {
    let z = C64::new(0.0, 0.0);
    let mut out = vec![vec![z; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            out[2 * i + 1][2 * j + 1] += dec.p1 * dec.rho1.entry(i, j);
            out[2 * i][2 * j] += (1.0 - dec.p1) * dec.rho2.entry(i, j);
        }
    }
    out
}

/// Summary of `p1` over a single-beta time grid.
#[derive(Clone, Debug)]
pub struct P1BetaSummary {
    pub beta: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
}

/// Summary of `p1` over a (beta, gt) grid.
#[derive(Clone, Debug)]
pub struct P1Statistics {
    pub per_beta: Vec<P1BetaSummary>,
    /// `(max - min) / mean` of the per-beta maxima.
    pub relative_spread_of_maxima: f64,
}

/// Tabulate `p1 = 2 b3` over the grid and report per-beta statistics plus
/// the relative spread of the per-beta maxima.
pub fn p1_statistics(
    betas: &[f64],
    spec: &crate::qcore::ThermalSpec,
    gts: &[f64],
    omega_over_g: f64,
) -> Result<P1Statistics> {
    if betas.is_empty() || gts.is_empty() {
        return Err(Error::InvalidParameter(
            "p1_statistics requires nonempty beta and gt grids".into(),
        ));
    }
    let mut per_beta = Vec::with_capacity(betas.len());
    for &beta in betas {
        let p1s: Vec<f64> = gts
            .iter()
            .map(|&gt| 2.0 * crate::dynamics::PsiCoeffs::compute(beta, spec, gt, omega_over_g).b3)
            .collect();
        let max = p1s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = p1s.iter().sum::<f64>() / p1s.len() as f64;
        let var = p1s.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / p1s.len() as f64;
        per_beta.push(P1BetaSummary {
            beta,
            max,
            mean,
            std: var.sqrt(),
        });
    }
    let maxima: Vec<f64> = per_beta.iter().map(|s| s.max).collect();
    let hi = maxima.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = maxima.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = maxima.iter().sum::<f64>() / maxima.len() as f64;
    let relative_spread_of_maxima = if mean.abs() > 0.0 {
        (hi - lo) / mean
    } else {
        0.0
    };
    Ok(P1Statistics {
        per_beta,
        relative_spread_of_maxima,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use crate::dynamics::psi_reduced;
    use crate::entanglement::concurrence;
    use crate::qcore::{AtomicFamily, Family, ThermalSpec};

    fn spec(nbar: f64) -> ThermalSpec {
        ThermalSpec::new(nbar, 1e-12).unwrap()
    }

    fn recombine(dec: &PostselectDecomposition) -> TwoQubitDensity {
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = dec.p1 * dec.rho1.entry(i, j) + (1.0 - dec.p1) * dec.rho2.entry(i, j);
            }
        }
        TwoQubitDensity::from_matrix(m)
    }

    #[test]
    fn decompose_pure_triplet() {
        let dec = decompose(&triplet_projector()).unwrap();
        assert!((dec.p1 - 1.0).abs() < 1e-12);
        assert!(recombine(&dec).max_abs_diff(&triplet_projector()) < 1e-12);
    }

    #[test]
    fn decompose_ground_state() {
        let ground = AtomicFamily::new(Family::Psi, FRAC_PI_2).density();
        let dec = decompose(&ground).unwrap();
        assert_eq!(dec.p1, 0.0);
        assert!(dec.rho2.max_abs_diff(&ground) < 1e-15);
    }

    #[test]
    fn decompose_reconstructs_evolved_states() {
        for &nbar in &[0.0, 0.64, 5.9] {
            let sp = spec(nbar);
            for &beta in &[0.0, 0.8, FRAC_PI_4, 1.5] {
                for &gt in &[0.0, 0.9, 2.0, 6.3] {
                    let rho = psi_reduced(beta, &sp, gt, 0.0);
                    let dec = decompose(&rho).unwrap();
                    assert!(
                        recombine(&dec).max_abs_diff(&rho) < 1e-12,
                        "nbar={nbar} beta={beta} gt={gt}"
                    );
                    assert!((0.0..=1.0).contains(&dec.p1));
                    let r2 = dec.rho2.validate(1e-9);
                    assert!(r2.pass, "nbar={nbar} beta={beta} gt={gt}: {r2:?}");
                }
            }
        }
    }

    #[test]
    fn decompose_rejects_phi_shape() {
        // Evolved Phi states carry a central coherence that differs from
        // the diagonal central entries; the dark state is the extreme case
        // with central block [[1,-1],[-1,1]]/2.
        for &beta in &[0.3, 1.2, 3.0 * FRAC_PI_4] {
            let rho = crate::dynamics::phi_reduced(beta, &ThermalSpec::vacuum(), 1.3);
            assert!(
                matches!(decompose(&rho), Err(Error::Structure(_))),
                "beta={beta}"
            );
        }
    }

    #[test]
    fn three_outcome_probabilities() {
        let bell = AtomicFamily::new(Family::Psi, FRAC_PI_4).density();
        let out = measure_three_outcome(&bell);
        assert!((out.p00 - 0.5).abs() < 1e-15);
        assert!((out.p11 - 0.5).abs() < 1e-15);
        assert!(out.p_rest.abs() < 1e-12);

        let out = measure_three_outcome(&triplet_projector());
        assert_eq!(out.p00, 0.0);
        assert_eq!(out.p11, 0.0);
        assert!((out.p_rest - 1.0).abs() < 1e-15);
    }

    #[test]
    fn p_rest_equals_p1_and_rest_state_is_triplet() {
        let sp = spec(0.64);
        for &beta in &[0.3, FRAC_PI_4, 1.2] {
            for &gt in &[0.7, 2.0, 5.5] {
                let rho = psi_reduced(beta, &sp, gt, 0.0);
                let dec = decompose(&rho).unwrap();
                let out = measure_three_outcome(&rho);
                assert!((out.p_rest - dec.p1).abs() < 1e-10);
                if dec.p1 > 1e-12 {
                    let rest = rest_state(&rho).unwrap();
                    assert!(rest.max_abs_diff(&triplet_projector()) < 1e-12);
                    assert!((concurrence(&rest).unwrap() - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn circuit_keeps_ancilla_zero_for_ground_state() {
        let ground = AtomicFamily::new(Family::Psi, FRAC_PI_2).density();
        let out = nondemolition_circuit(&ground).unwrap();
        // only (|00>, aux=0) populated; index 2*3+0 = 6
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == 6 && j == 6 { 1.0 } else { 0.0 };
                assert!((out[i][j] - C64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn circuit_flips_ancilla_for_triplet() {
        let out = nondemolition_circuit(&triplet_projector()).unwrap();
        let mut aux1 = 0.0;
        for atom in 0..4 {
            aux1 += out[2 * atom + 1][2 * atom + 1].re;
        }
        assert!((aux1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn circuit_output_matches_branch_mixture() {
        for &nbar in &[0.0, 5.9] {
            let sp = spec(nbar);
            for &(beta, gt) in &[(1.0, 4.0), (0.4, 1.7), (FRAC_PI_4, 2.8)] {
                let rho = psi_reduced(beta, &sp, gt, 0.0);
                let dec = decompose(&rho).unwrap();
                let out = nondemolition_circuit(&rho).unwrap();
                let expect = branch_mixture(&dec);
                let mut worst = 0.0f64;
                let mut trace = C64::new(0.0, 0.0);
                for i in 0..8 {
                    trace += out[i][i];
                    for j in 0..8 {
                        worst = worst.max((out[i][j] - expect[i][j]).norm());
                    }
                }
                assert!(worst < 1e-12, "nbar={nbar} beta={beta} gt={gt}: {worst}");
                assert!((trace - C64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn p1_statistics_ground_state_is_flat_zero() {
        let sp = ThermalSpec::vacuum();
        let gts: Vec<f64> = (0..50).map(|k| 0.2 * k as f64).collect();
        let stats = p1_statistics(&[FRAC_PI_2], &sp, &gts, 0.0).unwrap();
        assert!(stats.per_beta[0].max.abs() < 1e-14);
        assert!(stats.per_beta[0].std.abs() < 1e-14);
    }

    #[test]
    fn p1_continuity_at_t0() {
        let sp = ThermalSpec::vacuum();
        let p1 = 2.0 * crate::dynamics::PsiCoeffs::compute(FRAC_PI_4, &sp, 1e-8, 0.0).b3;
        assert!(p1 < 1e-12);
    }

    #[test]
    fn p1_statistics_rejects_empty_grids() {
        let sp = ThermalSpec::vacuum();
        assert!(p1_statistics(&[], &sp, &[0.1], 0.0).is_err());
        assert!(p1_statistics(&[0.1], &sp, &[], 0.0).is_err());
    }
}
