//! Constructors for the N-photon states of interest.
//!
//! Every constructor returns a unit-norm state. Amplitudes that the closed
//! forms carry through factorials are built from ratio recurrences with a
//! running rescale, so photon numbers in the tens of thousands neither
//! overflow nor lose relative accuracy in the dominant terms.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::fock::{BasisLabel, TwoModeFockState};

/// Rescale threshold for the running recurrences.
const RESCALE_ABOVE: f64 = 1e150;

/// Total photon number and mixing parameter η = Nγ/α² of an interferometric
/// state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaParams {
    pub n: usize,
    pub eta: f64,
}

impl EtaParams {
    pub fn new(n: usize, eta: f64) -> Result<Self> {
        if !(eta.is_finite() && eta >= 0.0) {
            return Err(contract(format!("eta must be finite and >= 0, got {eta}")));
        }
        Ok(Self { n, eta })
    }
}

/// Raw field parameters: laser amplitude α and squeezing parameter γ,
/// with `b|γ> = γ b†|γ>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputFieldParams {
    pub alpha: Complex64,
    pub gamma: Complex64,
    /// Largest photon number kept per mode.
    pub truncation: usize,
}

impl InputFieldParams {
    /// Uses the default truncation of `max(4N, 64)` photons per mode.
    pub fn new(alpha: Complex64, gamma: Complex64, target_n: usize) -> Result<Self> {
        Self::with_truncation(alpha, gamma, default_truncation(target_n))
    }

    pub fn with_truncation(alpha: Complex64, gamma: Complex64, truncation: usize) -> Result<Self> {
        if gamma.norm() >= 1.0 || !gamma.norm().is_finite() {
            return Err(contract(format!(
                "|gamma| must be < 1 for a normalisable squeezed vacuum, got {}",
                gamma.norm()
            )));
        }
        if !alpha.norm().is_finite() {
            return Err(contract("alpha must be finite"));
        }
        Ok(Self {
            alpha,
            gamma,
            truncation,
        })
    }

    /// Nγ/α² (complex in general; infinite for α = 0).
    pub fn eta(&self, n: usize) -> Complex64 {
        self.gamma * n as f64 / (self.alpha * self.alpha)
    }

    /// Normalised truncated coherent amplitudes `α^n / sqrt(n!)`.
    pub fn coherent_amplitudes(&self) -> Vec<Complex64> {
        let mut amps = Vec::with_capacity(self.truncation + 1);
        let mut cur = Complex64::new(1.0, 0.0);
        amps.push(cur);
        for n in 1..=self.truncation {
            cur = cur * self.alpha / (n as f64).sqrt();
            amps.push(cur);
        }
        normalize_in_place(&mut amps);
        amps
    }

    /// Normalised truncated squeezed-vacuum amplitudes on `n = 0..=truncation`
    /// (odd entries zero). `b|γ> = γb†|γ>` gives `s_{k+1}/s_k = γ sqrt(2k+1)/sqrt(2k+2)`
    /// between the `2k` and `2k+2` photon terms.
    pub fn squeezed_amplitudes(&self) -> Vec<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        let mut amps = vec![zero; self.truncation + 1];
        let mut cur = Complex64::new(1.0, 0.0);
        amps[0] = cur;
        let mut k = 0usize;
        while 2 * k + 2 <= self.truncation {
            cur = cur * self.gamma * ((2 * k + 1) as f64).sqrt() / ((2 * k + 2) as f64).sqrt();
            amps[2 * k + 2] = cur;
            k += 1;
        }
        normalize_in_place(&mut amps);
        amps
    }
}

pub fn default_truncation(n: usize) -> usize {
    (4 * n).max(64)
}

fn normalize_in_place(v: &mut [Complex64]) {
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|c| *c /= norm);
    }
}

/// Builds a normalised input-basis state whose only non-zero amplitudes sit
/// at even indices `2k`, from `c_0 = 1` and the successive ratios
/// `c_{k+1}/c_k`.
fn even_state_from_ratios(n: usize, ratio: impl Fn(usize) -> f64) -> TwoModeFockState {
    let half = n / 2;
    let mut pairs = Vec::with_capacity(half + 1);
    let mut cur = 1.0_f64;
    pairs.push(cur);
    for k in 0..half {
        cur *= ratio(k);
        if cur > RESCALE_ABOVE {
            pairs.iter_mut().for_each(|x| *x /= cur);
            cur = 1.0;
        }
        pairs.push(cur);
    }
    even_state_from_pairs(n, &pairs)
}

fn even_state_from_pairs(n: usize, pairs: &[f64]) -> TwoModeFockState {
    let norm = pairs.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); n + 1];
    for (k, &x) in pairs.iter().enumerate() {
        amps[2 * k] = Complex64::new(x / norm, 0.0);
    }
    TwoModeFockState::new(amps, BasisLabel::Input).expect("n + 1 amplitudes")
}

/// Exact normalised N-photon component of coherent ⊗ squeezed light,
/// `Σ_k (1/k!) sqrt((2k)! N!/(N-2k)!) (η/2N)^k |N-2k; 2k>`.
pub fn eta_state(p: EtaParams) -> TwoModeFockState {
    let n = p.n;
    if n == 0 {
        return TwoModeFockState::basis_ket(0, 0, BasisLabel::Input).expect("valid ket");
    }
    even_state_from_ratios(n, |k| exact_ratio(n, p.eta, k))
}

fn exact_ratio(n: usize, eta: f64, k: usize) -> f64 {
    let (k, nf) = (k as f64, n as f64);
    let x = eta / (2.0 * nf);
    x * ((2.0 * k + 1.0) * (2.0 * k + 2.0)).sqrt() * ((nf - 2.0 * k) * (nf - 2.0 * k - 1.0)).sqrt()
        / (k + 1.0)
}

/// Ratio `<N-2k-2; 2k+2|η> / <N-2k; 2k|η>`, exact and in the high-N form
/// `η(1 - 2k/N)`. Returned as `(exact, approx)`.
pub fn eta_recurrence_ratio(n: usize, eta: f64, k: usize) -> Result<(f64, f64)> {
    if 2 * (k + 1) > n {
        return Err(Error::Range {
            what: "k",
            value: k,
            max: (n / 2).saturating_sub(1),
        });
    }
    let approx = eta * (1.0 - 2.0 * k as f64 / n as f64);
    Ok((exact_ratio(n, eta, k), approx))
}

/// NOON state expanded in the input basis:
/// `sqrt(C(N, 2k)) 2^{-(N-1)/2}` at index `2k`.
pub fn noon_input_basis(n: usize) -> Result<TwoModeFockState> {
    if n == 0 {
        return Err(Error::Unsupported("NOON states need N >= 1".into()));
    }
    Ok(even_state_from_ratios(n, |k| {
        let (k, nf) = (k as f64, n as f64);
        (((nf - 2.0 * k) * (nf - 2.0 * k - 1.0)) / ((2.0 * k + 1.0) * (2.0 * k + 2.0))).sqrt()
    }))
}

/// `(|N;0> + e^{iθ}|0;N>)/sqrt2` in the interferometer basis.
pub fn noon_interferometer(n: usize, relative_phase: f64) -> Result<TwoModeFockState> {
    if n == 0 {
        return Err(Error::Unsupported("NOON states need N >= 1".into()));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); n + 1];
    amps[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[n] = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, relative_phase);
    TwoModeFockState::new(amps, BasisLabel::Interferometer)
}

/// Gaussian envelope `exp(-(2k - N/2)^2 / width)` on even indices, renormalised.
fn gaussian_even(n: usize, width: f64) -> Result<TwoModeFockState> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "Gaussian approximants are defined for even N >= 2, got N = {n}"
        )));
    }
    let centre = n as f64 / 2.0;
    let pairs: Vec<f64> = (0..=n / 2)
        .map(|k| {
            let d = 2.0 * k as f64 - centre;
            (-d * d / width).exp()
        })
        .collect();
    Ok(even_state_from_pairs(n, &pairs))
}

/// High-N approximation of the η = 2 state, envelope `exp(-(2k-N/2)^2/(2N))`.
pub fn gaussian_eta_approx(n: usize) -> Result<TwoModeFockState> {
    gaussian_even(n, 2.0 * n as f64)
}

/// High-N approximation of the input-basis NOON state, envelope
/// `exp(-(2k-N/2)^2/N)`.
pub fn gaussian_noon_approx(n: usize) -> Result<TwoModeFockState> {
    gaussian_even(n, n as f64)
}

/// Tensor product of the truncated coherent and squeezed states, projected
/// onto total photon number N and renormalised.
pub fn project_total_n(f: &InputFieldParams, n: usize) -> Result<TwoModeFockState> {
    if f.truncation < n {
        return Err(contract(format!(
            "truncation {} is below the target photon number {n}",
            f.truncation
        )));
    }
    let coh = f.coherent_amplitudes();
    let sq = f.squeezed_amplitudes();
    let amps: Vec<Complex64> = (0..=n).map(|m| coh[n - m] * sq[m]).collect();
    TwoModeFockState::new(amps, BasisLabel::Input)?
        .normalized()
        .ok_or(Error::ZeroProjection(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::LogCombinatorics;
    use crate::fock::inner_product;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn re(s: &TwoModeFockState) -> Vec<f64> {
        s.amplitudes().iter().map(|c| c.re).collect()
    }

    fn assert_vec_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (i, (g, w)) in got.iter().zip(want).enumerate() {
            assert!((g - w).abs() <= tol, "index {i}: {g} vs {w}");
        }
    }

    fn overlap_sqr(a: &TwoModeFockState, b: &TwoModeFockState) -> f64 {
        inner_product(a, b).unwrap().norm_sqr()
    }

    #[test]
    fn eta_zero_is_laser_only() {
        for n in [1, 4, 7, 50] {
            let s = eta_state(EtaParams::new(n, 0.0).unwrap());
            assert_eq!(s.amplitude(0), Complex64::new(1.0, 0.0));
            assert!(s.amplitudes()[1..].iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn eta_small_cases() {
        let s = eta_state(EtaParams::new(2, 2.0).unwrap());
        assert_vec_close(&re(&s), &[FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2], 1e-15);
        let s = eta_state(EtaParams::new(3, 3.0).unwrap());
        assert_vec_close(&re(&s), &[0.5, 0.0, 3f64.sqrt() / 2.0, 0.0], 1e-15);
        let s = eta_state(EtaParams::new(0, 2.0).unwrap());
        assert_eq!(s.total_n(), 0);
    }

    #[test]
    fn eta_matches_log_space_closed_form() {
        let lc = LogCombinatorics::global();
        for &(n, eta) in &[(9usize, 2.0f64), (40, 2.3), (101, 0.7), (400, 2.0)] {
            let s = eta_state(EtaParams::new(n, eta).unwrap());
            let logs: Vec<f64> = (0..=n / 2)
                .map(|k| {
                    let lf = |x| lc.log_factorial(x).unwrap();
                    -lf(k) + 0.5 * (lf(2 * k) + lf(n) - lf(n - 2 * k))
                        + k as f64 * (eta / (2.0 * n as f64)).ln()
                })
                .collect();
            let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let pairs: Vec<f64> = logs.iter().map(|l| (l - max).exp()).collect();
            let want = even_state_from_pairs(n, &pairs);
            assert!(s.max_distance_up_to_phase(&want).unwrap() < 1e-12, "N = {n}");
        }
    }

    #[test]
    fn eta_state_large_n_is_finite_and_normalised() {
        let s = eta_state(EtaParams::new(10_000, 2.0).unwrap());
        assert!(s.amplitudes().iter().all(|c| c.re.is_finite()));
        assert!(s.is_normalized(1e-12));
    }

    #[test]
    fn negative_eta_rejected() {
        assert!(EtaParams::new(4, -0.1).is_err());
        assert!(EtaParams::new(4, f64::NAN).is_err());
    }

    #[test]
    fn noon_input_examples() {
        assert_vec_close(
            &re(&noon_input_basis(2).unwrap()),
            &[FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2],
            1e-15,
        );
        assert_vec_close(
            &re(&noon_input_basis(3).unwrap()),
            &[0.5, 0.0, 3f64.sqrt() / 2.0, 0.0],
            1e-15,
        );
        assert!(noon_input_basis(0).is_err());
        assert_eq!(noon_input_basis(1).unwrap().amplitude(0).re, 1.0);
    }

    #[test]
    fn noon_input_matches_binomial_formula() {
        let lc = LogCombinatorics::global();
        for n in [1usize, 2, 5, 12, 33, 200, 1000] {
            let s = noon_input_basis(n).unwrap();
            assert!(s.is_normalized(1e-12));
            let scale = -0.5 * (n as f64 - 1.0) * 2f64.ln();
            for m in 0..=n {
                let want = if m % 2 == 0 {
                    (0.5 * lc.log_binomial(n, m).unwrap() + scale).exp()
                } else {
                    0.0
                };
                assert!((s.amplitude(m).re - want).abs() < 1e-12, "N = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn noon_interferometer_examples() {
        let s = noon_interferometer(5, 0.0).unwrap();
        assert_eq!(s.basis(), BasisLabel::Interferometer);
        assert!((s.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitude(5).re - FRAC_1_SQRT_2).abs() < 1e-15);
        let minus = noon_interferometer(2, std::f64::consts::PI).unwrap();
        assert!((minus.amplitude(2) - Complex64::new(-FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let plus = noon_interferometer(2, 0.0).unwrap();
        assert!(inner_product(&plus, &minus).unwrap().norm() < 1e-15);
    }

    #[test]
    fn gaussian_approximants() {
        let g = gaussian_eta_approx(100).unwrap();
        let h = gaussian_noon_approx(100).unwrap();
        let ratio_at = |s: &TwoModeFockState, k: usize| s.amplitude(2 * k).re / s.amplitude(50).re;
        // Envelopes relative to the peak at 2k = 50.
        for k in [0usize, 10, 20, 30, 50] {
            let d = 2.0 * k as f64 - 50.0;
            assert!((ratio_at(&g, k) - (-d * d / 200.0).exp()).abs() < 1e-14);
            assert!((ratio_at(&h, k) - (-d * d / 100.0).exp()).abs() < 1e-14);
        }
        for s in [&g, &h] {
            assert!(s.amplitudes().iter().skip(1).step_by(2).all(|c| c.norm() == 0.0));
        }
        assert!(gaussian_eta_approx(7).is_err());
        assert!(gaussian_noon_approx(0).is_err());
    }

    #[test]
    fn gaussian_overlaps_at_n100() {
        let g = gaussian_noon_approx(100).unwrap();
        assert!(overlap_sqr(&g, &noon_input_basis(100).unwrap()) > 0.999);
        // The η approximant converges more slowly: about 0.9977 at N = 100.
        let e = gaussian_eta_approx(100).unwrap();
        let f = overlap_sqr(&e, &eta_state(EtaParams::new(100, 2.0).unwrap()));
        assert!((f - 0.997_736).abs() < 1e-5, "{f}");
    }

    #[test]
    fn gaussian_convergence_is_monotone() {
        let ns = [20usize, 40, 80, 160, 320];
        let eta_curve: Vec<f64> = ns
            .iter()
            .map(|&n| {
                overlap_sqr(
                    &gaussian_eta_approx(n).unwrap(),
                    &eta_state(EtaParams::new(n, 2.0).unwrap()),
                )
            })
            .collect();
        let noon_curve: Vec<f64> = ns
            .iter()
            .map(|&n| overlap_sqr(&gaussian_noon_approx(n).unwrap(), &noon_input_basis(n).unwrap()))
            .collect();
        for curve in [&eta_curve, &noon_curve] {
            assert!(curve.windows(2).all(|w| w[1] >= w[0]), "{curve:?}");
            assert!(*curve.last().unwrap() > 0.999);
        }
    }

    #[test]
    fn recurrence_ratios() {
        let (exact, approx) = eta_recurrence_ratio(2, 2.0, 0).unwrap();
        assert!((exact - 1.0).abs() < 1e-15);
        assert_eq!(approx, 2.0);
        let (exact, approx) = eta_recurrence_ratio(10_000, 2.0, 2500).unwrap();
        assert!((exact / approx - 1.0).abs() < 1e-3);
        // Last valid k = N/2 - 1.
        let (exact, approx) = eta_recurrence_ratio(20, 2.0, 9).unwrap();
        assert!((approx - 2.0 * 2.0 / 20.0).abs() < 1e-15);
        assert!(exact > 0.0 && exact < 1.0);
        assert!(eta_recurrence_ratio(20, 2.0, 10).is_err());
        assert!(eta_recurrence_ratio(1, 2.0, 0).is_err());
    }

    #[test]
    fn projection_examples() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let f = InputFieldParams::new(c(1.0), c(0.5), 2).unwrap();
        let s = project_total_n(&f, 2).unwrap();
        let want = eta_state(EtaParams::new(2, 1.0).unwrap());
        assert!(s.max_distance_up_to_phase(&want).unwrap() < 1e-10);

        let f = InputFieldParams::new(c(0.8), c(0.0), 3).unwrap();
        let s = project_total_n(&f, 3).unwrap();
        assert!((s.amplitude(0).norm() - 1.0).abs() < 1e-15);

        let f = InputFieldParams::new(c(0.0), c(0.5), 4).unwrap();
        let s = project_total_n(&f, 4).unwrap();
        assert!((s.amplitude(4).norm() - 1.0).abs() < 1e-15);

        let f = InputFieldParams::new(c(0.0), c(0.5), 3).unwrap();
        assert_eq!(project_total_n(&f, 3), Err(Error::ZeroProjection(3)));
    }

    #[test]
    fn projection_contracts() {
        let c = |x: f64| Complex64::new(x, 0.0);
        assert!(InputFieldParams::new(c(1.0), c(1.0), 2).is_err());
        let f = InputFieldParams::with_truncation(c(1.0), c(0.3), 3).unwrap();
        assert!(project_total_n(&f, 4).is_err());
        assert_eq!(InputFieldParams::new(c(1.0), c(0.3), 5).unwrap().truncation, 64);
        assert_eq!(InputFieldParams::new(c(1.0), c(0.3), 30).unwrap().truncation, 120);
    }

    #[test]
    fn squeezed_vacuum_tail_is_negligible_at_default_truncation() {
        // |γ| = 0.6 is the largest value exercised by the oracle tests.
        let f = InputFieldParams::new(Complex64::new(1.0, 0.0), Complex64::new(0.6, 0.0), 12).unwrap();
        let sq = f.squeezed_amplitudes();
        let tail: f64 = sq[f.truncation - 4..].iter().map(|c| c.norm_sqr()).sum();
        assert!(tail < 1e-12, "{tail}");
    }
}
