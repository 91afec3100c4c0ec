//! Mach-Zehnder simulation: 50/50 splitter, phase φ on arm `b`, 50/50
//! splitter, photon counting in the output ports.
//!
//! With the crate's beam-splitter convention a single photon entering in mode
//! `a` leaves through port `d` (output index `m = 1`) with probability
//! `cos²(φ/2)`; at φ = 0 the interferometer swaps the two modes.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::exec::Exec;
use crate::fock::{
    apply_block, beam_splitter_block, phase_shift_block, BasisLabel, Mode, TwoModeFockState,
    UnitaryBlock,
};
use crate::states::{eta_state, EtaParams};

/// Interferometer for a fixed photon number; the splitter block is built once
/// and reused across phases.
#[derive(Debug, Clone)]
pub struct MachZehnder {
    n: usize,
    splitter: UnitaryBlock,
}

impl MachZehnder {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            splitter: beam_splitter_block(n, FRAC_PI_4, 0.0),
        }
    }

    pub fn total_n(&self) -> usize {
        self.n
    }

    /// State inside the interferometer for an input-basis state.
    pub fn inside(&self, input: &TwoModeFockState) -> Result<TwoModeFockState> {
        if input.basis() != BasisLabel::Input {
            return Err(contract(format!(
                "expected an input-basis state, got {}",
                input.basis()
            )));
        }
        apply_block(&self.splitter, input)
    }

    /// `P(m | φ)` for an input-basis state.
    pub fn output_distribution(&self, input: &TwoModeFockState, phi: f64) -> Result<Vec<f64>> {
        self.inside_distribution(&self.inside(input)?, phi)
    }

    /// `P(m | φ)` for a state already inside the interferometer.
    pub fn inside_distribution(&self, inside: &TwoModeFockState, phi: f64) -> Result<Vec<f64>> {
        if inside.basis() != BasisLabel::Interferometer {
            return Err(contract(format!(
                "expected an interferometer-basis state, got {}",
                inside.basis()
            )));
        }
        let shifted = apply_block(&phase_shift_block(self.n, phi, Mode::B), inside)?;
        Ok(apply_block(&self.splitter, &shifted)?.probabilities())
    }

    /// Scans a state that is already inside the interferometer.
    pub fn scan_inside(
        &self,
        inside: &TwoModeFockState,
        samples: usize,
        exec: Exec,
    ) -> Result<FringeScan> {
        check_sampling(self.n, samples)?;
        if inside.total_n() != self.n {
            return Err(contract("state and interferometer photon numbers differ"));
        }
        let phases = phase_grid(samples);
        let distributions = exec
            .map(&phases, |&phi| self.inside_distribution(inside, phi))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(FringeScan::new(self.n, None, phases, distributions))
    }
}

/// `φ_j = 2πj / L`, `j = 0..L`.
pub fn phase_grid(samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|j| 2.0 * PI * j as f64 / samples as f64)
        .collect()
}

fn check_sampling(n: usize, samples: usize) -> Result<()> {
    let required = 4 * n + 1;
    if samples < required {
        return Err(Error::Undersampled {
            n,
            samples,
            required,
        });
    }
    Ok(())
}

/// Output distribution of the full interferometer for an input-basis state.
pub fn mz_output_distribution(input: &TwoModeFockState, phi: f64) -> Result<Vec<f64>> {
    MachZehnder::new(input.total_n()).output_distribution(input, phi)
}

/// Output distributions over a uniform phase grid plus derived signals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FringeScan {
    pub n: usize,
    pub eta: Option<f64>,
    pub phases: Vec<f64>,
    /// `distributions[j][m] = P(m | φ_j)`, `m` = photons in port d.
    pub distributions: Vec<Vec<f64>>,
    /// `Σ_m (-1)^m P(m | φ)`.
    pub parity: Vec<f64>,
    /// `P(0 | φ) + P(N | φ)`.
    pub extremal: Vec<f64>,
}

impl FringeScan {
    fn new(n: usize, eta: Option<f64>, phases: Vec<f64>, distributions: Vec<Vec<f64>>) -> Self {
        let parity = distributions
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(m, p)| if m % 2 == 0 { *p } else { -p })
                    .sum()
            })
            .collect();
        let extremal = distributions
            .iter()
            .map(|row| if n == 0 { row[0] } else { row[0] + row[n] })
            .collect();
        Self {
            n,
            eta,
            phases,
            distributions,
            parity,
            extremal,
        }
    }

    pub fn samples(&self) -> usize {
        self.phases.len()
    }

    /// `P(m | φ)` over the grid.
    pub fn channel(&self, m: usize) -> Vec<f64> {
        self.distributions.iter().map(|row| row[m]).collect()
    }

    /// Harmonic-N visibility of the parity signal.
    pub fn parity_visibility(&self) -> Result<VisibilityReport> {
        fourier_visibility(&self.parity, self.n, Normalization::Parity)
    }

    /// Harmonic-N visibility of `P(0|φ) + P(N|φ)`.
    pub fn extremal_visibility(&self) -> Result<VisibilityReport> {
        fourier_visibility(&self.extremal, self.n, Normalization::Probability)
    }

    /// Largest deviation of a row sum from 1.
    pub fn max_row_defect(&self) -> f64 {
        self.distributions
            .iter()
            .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Scans the η state over `samples` equally spaced phases. Requires
/// `samples >= 4N + 1` so harmonic N is well resolved.
pub fn fringe_scan(n: usize, eta: f64, samples: usize) -> Result<FringeScan> {
    fringe_scan_with(n, eta, samples, Exec::default())
}

pub fn fringe_scan_with(n: usize, eta: f64, samples: usize, exec: Exec) -> Result<FringeScan> {
    check_sampling(n, samples)?;
    let state = eta_state(EtaParams::new(n, eta)?);
    let mz = MachZehnder::new(n);
    let inside = mz.inside(&state)?;
    let mut scan = mz.scan_inside(&inside, samples, exec)?;
    scan.eta = Some(eta);
    Ok(scan)
}

/// How the harmonic amplitude is turned into a visibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Signal is a probability; divide by its mean.
    Probability,
    /// Signal is a ±1 expectation value; full swing is already 1.
    Parity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VisibilityReport {
    pub frequency: usize,
    /// `2 |c_f|`.
    pub component_magnitude: f64,
    /// `c_0`, the signal mean.
    pub mean_level: f64,
    pub visibility: f64,
    /// `visibility * frequency`, the inverse phase uncertainty.
    pub sensitivity: f64,
    pub normalization: Normalization,
    /// Min/max contrast of the raw signal, for cross-reference only.
    pub contrast: f64,
}

/// `c_f = (1/L) Σ_j s_j e^{-i f φ_j}` on the uniform grid.
pub fn harmonic(signal: &[f64], frequency: usize) -> Complex64 {
    let l = signal.len() as f64;
    signal
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            let angle = -2.0 * PI * (frequency as f64) * (j as f64) / l;
            Complex64::from_polar(s, angle)
        })
        .sum::<Complex64>()
        / l
}

/// Visibility of the harmonic `frequency` of a signal sampled on
/// [`phase_grid`].
pub fn fourier_visibility(
    signal: &[f64],
    frequency: usize,
    normalization: Normalization,
) -> Result<VisibilityReport> {
    if 2 * frequency >= signal.len() {
        return Err(Error::Aliasing {
            frequency,
            samples: signal.len(),
        });
    }
    let component_magnitude = 2.0 * harmonic(signal, frequency).norm();
    let mean_level = harmonic(signal, 0).re;
    let max = signal.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = signal.iter().cloned().fold(f64::INFINITY, f64::min);
    let (visibility, contrast) = match normalization {
        Normalization::Probability => {
            let v = if mean_level > 0.0 {
                component_magnitude / mean_level
            } else {
                0.0
            };
            let c = if max + min > 0.0 { (max - min) / (max + min) } else { 0.0 };
            (v, c)
        }
        Normalization::Parity => (component_magnitude, (max - min) / 2.0),
    };
    let mut report = VisibilityReport {
        frequency,
        component_magnitude,
        mean_level,
        visibility,
        sensitivity: 0.0,
        normalization,
        contrast,
    };
    report.sensitivity = phase_sensitivity(&report);
    Ok(report)
}

/// `1/δφ = V N`.
pub fn phase_sensitivity(v: &VisibilityReport) -> f64 {
    v.visibility * v.frequency as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::noon_interferometer;

    #[test]
    fn single_photon_fringe() {
        let mz = MachZehnder::new(1);
        let input = TwoModeFockState::basis_ket(1, 0, BasisLabel::Input).unwrap();
        for phi in phase_grid(24) {
            let p = mz.output_distribution(&input, phi).unwrap();
            assert!((p[1] - (phi / 2.0).cos().powi(2)).abs() < 1e-14);
            assert!((p[0] - (phi / 2.0).sin().powi(2)).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_phase_is_a_swap() {
        let s = crate::states::eta_state(EtaParams::new(6, 2.2).unwrap());
        let p = mz_output_distribution(&s, 0.0).unwrap();
        let input = s.probabilities();
        for m in 0..=6 {
            assert!((p[m] - input[6 - m]).abs() < 1e-12);
        }
    }

    #[test]
    fn basis_checks() {
        let mz = MachZehnder::new(2);
        let inside = noon_interferometer(2, 0.0).unwrap();
        assert!(mz.output_distribution(&inside, 0.0).is_err());
        let input = TwoModeFockState::basis_ket(2, 0, BasisLabel::Input).unwrap();
        assert!(mz.inside_distribution(&input, 0.0).is_err());
    }

    #[test]
    fn noon4_parity_is_cos4phi() {
        let mz = MachZehnder::new(4);
        let scan = mz
            .scan_inside(&noon_interferometer(4, 0.0).unwrap(), 64, Exec::Sequential)
            .unwrap();
        let sign = scan.parity[0].signum();
        for (phi, p) in scan.phases.iter().zip(&scan.parity) {
            assert!((p - sign * (4.0 * phi).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn n2_fringe_has_unit_visibility() {
        let scan = fringe_scan(2, 2.0, 64).unwrap();
        let v = scan.parity_visibility().unwrap();
        assert!((v.visibility - 1.0).abs() < 1e-9);
        assert!(scan.max_row_defect() < 1e-10);
        assert_eq!(scan.eta, Some(2.0));
    }

    #[test]
    fn n4_visibility_tracks_fidelity() {
        let scan = fringe_scan(4, 2.31, 128).unwrap();
        let v = scan.parity_visibility().unwrap();
        assert!((v.visibility - 0.93).abs() < 0.02);
        assert!((v.sensitivity - 4.0 * v.visibility).abs() < 1e-15);
    }

    #[test]
    fn undersampling_rejected() {
        assert_eq!(
            fringe_scan(4, 2.0, 8).unwrap_err(),
            Error::Undersampled {
                n: 4,
                samples: 8,
                required: 17
            }
        );
        assert!(fringe_scan(4, 2.0, 17).is_ok());
    }

    #[test]
    fn visibility_of_pure_signals() {
        let l = 64;
        let grid = phase_grid(l);
        let n = 5;
        let cos_n: Vec<f64> = grid.iter().map(|p| (n as f64 * p).cos()).collect();
        let v = fourier_visibility(&cos_n, n, Normalization::Parity).unwrap();
        assert!((v.visibility - 1.0).abs() < 1e-12);

        let flat = vec![0.4; l];
        for f in 1..10 {
            let v = fourier_visibility(&flat, f, Normalization::Probability).unwrap();
            assert!(v.visibility < 1e-15);
        }
        let zero = vec![0.0; l];
        assert_eq!(
            fourier_visibility(&zero, 3, Normalization::Probability)
                .unwrap()
                .visibility,
            0.0
        );

        let mixed: Vec<f64> = grid
            .iter()
            .map(|p| 0.9 * (n as f64 * p).cos() + 0.1 * p.cos())
            .collect();
        let vn = fourier_visibility(&mixed, n, Normalization::Parity).unwrap();
        let v1 = fourier_visibility(&mixed, 1, Normalization::Parity).unwrap();
        assert!((vn.component_magnitude - 0.9).abs() < 1e-12);
        assert!((v1.component_magnitude - 0.1).abs() < 1e-12);

        assert!(matches!(
            fourier_visibility(&mixed, 32, Normalization::Parity),
            Err(Error::Aliasing { .. })
        ));
    }

    #[test]
    fn sensitivity_values() {
        let mk = |v: f64, f: usize| VisibilityReport {
            frequency: f,
            component_magnitude: v,
            mean_level: 0.0,
            visibility: v,
            sensitivity: 0.0,
            normalization: Normalization::Parity,
            contrast: v,
        };
        assert_eq!(phase_sensitivity(&mk(1.0, 10)), 10.0);
        assert_eq!(phase_sensitivity(&mk(0.0, 10)), 0.0);
        assert!((phase_sensitivity(&mk(0.943, 1000)) / 1000.0 - 0.943).abs() < 1e-12);
    }
}
