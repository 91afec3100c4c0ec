//! Self-check suite behind `noonsim check`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::analysis::{coherence_check, fidelity, relation_residual_of};
use crate::error::Result;
use crate::fock::{apply_block, beam_splitter_block, BasisLabel, TwoModeFockState};
use crate::states::{eta_state, noon_input_basis, noon_interferometer, project_total_n, EtaParams, InputFieldParams};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckItem {
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckItem {
    fn below(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self {
            name,
            measured,
            threshold,
            passed: measured < threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Adds 1e-3 to one amplitude of every state fed to the residual check.
    pub perturb: bool,
    pub seed: u64,
}

pub const RESIDUAL_ETAS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
pub const COHERENCE_ETAS: [f64; 4] = [1.5, 2.0, 2.5, 3.0];

pub fn run_checks(opts: CheckOptions) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();

    let mut unitarity = 0.0_f64;
    for n in [1usize, 2, 3, 5, 8, 16, 32, 64] {
        for &(theta, phase) in &[(FRAC_PI_4, 0.0), (0.3, 1.1), (-1.2, 2.5)] {
            unitarity = unitarity.max(beam_splitter_block(n, theta, phase).unitarity_defect());
        }
    }
    items.push(CheckItem::below("beam splitter unitarity (N <= 64)", unitarity, 1e-12));

    let hom = apply_block(
        &beam_splitter_block(2, FRAC_PI_4, 0.0),
        &TwoModeFockState::basis_ket(2, 1, BasisLabel::Input)?,
    )?;
    let want = TwoModeFockState::from_real(
        &[std::f64::consts::FRAC_1_SQRT_2, 0.0, -std::f64::consts::FRAC_1_SQRT_2],
        BasisLabel::Interferometer,
    )?;
    items.push(CheckItem::below(
        "Hong-Ou-Mandel cancellation",
        hom.max_distance_up_to_phase(&want)?,
        1e-12,
    ));

    let mut noon_bs = 0.0_f64;
    for n in 1..=40 {
        let inside = apply_block(&beam_splitter_block(n, FRAC_PI_4, 0.0), &noon_input_basis(n)?)?;
        noon_bs = noon_bs.max(inside.max_distance_up_to_phase(&noon_interferometer(n, 0.0)?)?);
    }
    items.push(CheckItem::below(
        "splitter maps input-basis NOON to (|N;0>+|0;N>)/sqrt2",
        noon_bs,
        1e-10,
    ));

    let mut residual = 0.0_f64;
    for n in 2..=40 {
        for &eta in &RESIDUAL_ETAS {
            let mut s = eta_state(EtaParams::new(n, eta)?);
            if opts.perturb {
                let mut amps = s.amplitudes().to_vec();
                amps[0] += 1e-3;
                s = TwoModeFockState::new(amps, BasisLabel::Input)?;
            }
            residual = residual.max(relation_residual_of(&s, eta)?);
        }
    }
    items.push(CheckItem::below("defining-relation residual (N <= 40)", residual, 1e-10));

    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut oracle = 0.0_f64;
    for _ in 0..20 {
        let alpha: f64 = rng.gen_range(0.3..2.0);
        let gamma: f64 = rng.gen_range(0.01..0.6);
        for n in 1..=12 {
            let f = InputFieldParams::new(Complex64::new(alpha, 0.0), Complex64::new(gamma, 0.0), n)?;
            let projected = project_total_n(&f, n)?;
            let exact = eta_state(EtaParams::new(n, n as f64 * gamma / (alpha * alpha))?);
            oracle = oracle.max(projected.max_distance_up_to_phase(&exact)?);
        }
    }
    items.push(CheckItem::below("coherent x squeezed projection oracle", oracle, 1e-10));

    let (mut minus, mut coherence) = (0.0_f64, 0.0_f64);
    for n in 1..=60 {
        for &eta in &COHERENCE_ETAS {
            let r = coherence_check(n, eta)?;
            minus = minus.max(r.noon_minus_overlap.sqrt());
            coherence = coherence.max((r.coherence - r.half_fidelity).abs());
        }
    }
    items.push(CheckItem::below("orthogonality to opposite-phase NOON", minus, 1e-12));
    items.push(CheckItem::below("NOON coherence equals F/2", coherence, 1e-10));

    let exact = (fidelity(2, 2.0)? - 1.0)
        .abs()
        .max((fidelity(3, 3.0)? - 1.0).abs());
    items.push(CheckItem::below("exact cancellation at N = 2, 3", exact, 1e-12));

    let asymptote = (fidelity(10_000, 2.0)? - (8.0_f64 / 9.0).sqrt()).abs();
    items.push(CheckItem::below("F(10^4, 2) vs sqrt(8/9)", asymptote, 0.002));

    let phase_ok = noon_interferometer(3, PI)?.amplitude(3).re < 0.0;
    items.push(CheckItem {
        name: "opposite-phase NOON sign",
        measured: if phase_ok { 0.0 } else { 1.0 },
        threshold: 0.5,
        passed: phase_ok,
    });

    Ok(items)
}
