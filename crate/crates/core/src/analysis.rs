//! Fidelity with the NOON state, η optimisation and the structural checks
//! behind the visibility argument.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{contract, Result};
use crate::exec::Exec;
use crate::fock::{apply_block, beam_splitter_block, inner_product, LadderOp, TwoModeFockState};
use crate::states::{eta_state, noon_input_basis, noon_interferometer, EtaParams};

pub const DEFAULT_ETA_LO: f64 = 1.0;
pub const DEFAULT_ETA_HI: f64 = 5.0;
pub const DEFAULT_TOL: f64 = 1e-6;
/// Spacing of the coarse scan that precedes golden-section refinement.
pub const GRID_STEP: f64 = 0.01;

/// `F = |<NOON|η>|^2` for N photons.
pub fn fidelity(n: usize, eta: f64) -> Result<f64> {
    let params = EtaParams::new(n, eta)?;
    let noon = noon_input_basis(n)?;
    Ok(inner_product(&noon, &eta_state(params))?.norm_sqr())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub n: usize,
    pub eta_star: f64,
    pub fidelity_star: f64,
    pub evaluations: usize,
    /// Final golden-section interval.
    pub bracket: (f64, f64),
    /// Set when the coarse scan showed separated maxima and every local
    /// maximum was refined.
    pub multi_start: bool,
}

/// Outcome of a golden-section maximisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenOutcome {
    pub x: f64,
    pub fx: f64,
    pub bracket: (f64, f64),
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximises a unimodal `f` on `[a, b]` until the bracket is narrower than
/// `tol`. One new evaluation per iteration.
pub fn golden_section_max<F>(f: F, a: f64, b: f64, tol: f64) -> GoldenOutcome
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (a, b);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2;
    while b - a >= tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        evaluations += 1;
    }
    let (x, fx) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    GoldenOutcome {
        x,
        fx,
        bracket: (a, b),
        evaluations,
    }
}

/// Coarse scan of `[lo, hi]` at [`GRID_STEP`] followed by golden-section
/// refinement around the best grid point.
///
/// If the three best grid points are not contiguous the fidelity has
/// separated maxima on the grid, and every local grid maximum is refined.
pub fn optimize_eta(n: usize, lo: f64, hi: f64, tol: f64) -> Result<OptimizationResult> {
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi) {
        return Err(contract(format!("need 0 <= lo < hi, got [{lo}, {hi}]")));
    }
    if !(tol > 0.0) {
        return Err(contract(format!("tol must be > 0, got {tol}")));
    }
    // Validate N once; afterwards evaluations cannot fail.
    let noon = noon_input_basis(n)?;
    let f = |eta: f64| {
        let s = eta_state(EtaParams { n, eta });
        inner_product(&noon, &s)
            .expect("same subspace")
            .norm_sqr()
    };

    let steps = ((hi - lo) / GRID_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| (lo + i as f64 * GRID_STEP).min(hi))
        .collect();
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let mut evaluations = grid.len();

    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut top: Vec<usize> = order.iter().take(3).copied().collect();
    top.sort_unstable();
    let contiguous = top.windows(2).all(|w| w[1] == w[0] + 1);

    let starts: Vec<usize> = if contiguous {
        vec![order[0]]
    } else {
        (0..grid.len())
            .filter(|&i| {
                let left = i == 0 || values[i] >= values[i - 1];
                let right = i + 1 == grid.len() || values[i] >= values[i + 1];
                left && right
            })
            .collect()
    };

    let mut best: Option<GoldenOutcome> = None;
    for i in starts {
        let a = grid[i.saturating_sub(1)];
        let b = grid[(i + 1).min(grid.len() - 1)];
        let mut out = golden_section_max(f, a, b, tol);
        evaluations += out.evaluations;
        // A maximum sitting on the scan boundary is better represented by the
        // grid point itself than by the interior golden points.
        if values[i] > out.fx {
            out.x = grid[i];
            out.fx = values[i];
        }
        if best.map_or(true, |b| out.fx > b.fx) {
            best = Some(out);
        }
    }
    let best = best.expect("at least one start");
    let bracket = (best.bracket.0.min(best.x), best.bracket.1.max(best.x));
    Ok(OptimizationResult {
        n,
        eta_star: best.x,
        fidelity_star: best.fx,
        evaluations,
        bracket,
        multi_start: !contiguous,
    })
}

/// Optimises every N in `ns`, results in input order.
pub fn optimize_many(
    ns: &[usize],
    lo: f64,
    hi: f64,
    tol: f64,
    exec: Exec,
) -> Result<Vec<OptimizationResult>> {
    exec.map(ns, |&n| optimize_eta(n, lo, hi, tol))
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapCurve {
    pub eta: f64,
    pub points: Vec<(usize, f64)>,
}

impl OverlapCurve {
    /// Point with the smallest overlap.
    pub fn minimum(&self) -> Option<(usize, f64)> {
        self.points
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Fidelity at fixed η for every N in `n_min..=n_max`.
pub fn overlap_curve(eta: f64, n_min: usize, n_max: usize) -> Result<OverlapCurve> {
    overlap_curve_with(eta, n_min, n_max, Exec::default())
}

pub fn overlap_curve_with(eta: f64, n_min: usize, n_max: usize, exec: Exec) -> Result<OverlapCurve> {
    if n_min < 1 || n_min > n_max {
        return Err(contract(format!(
            "need 1 <= n_min <= n_max, got {n_min}..{n_max}"
        )));
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    overlap_points(eta, &ns, exec)
}

/// Fidelity at fixed η for an arbitrary strictly increasing list of N.
pub fn overlap_points(eta: f64, ns: &[usize], exec: Exec) -> Result<OverlapCurve> {
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(contract("photon numbers must be strictly increasing"));
    }
    EtaParams::new(0, eta)?;
    let points = exec
        .map(ns, |&n| fidelity(n, eta).map(|f| (n, f)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(OverlapCurve { eta, points })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherenceReport {
    pub n: usize,
    pub eta: f64,
    /// Interferometer-basis amplitude of `|N;0>`.
    #[serde(serialize_with = "ser_complex")]
    pub psi_n0: Complex64,
    /// Interferometer-basis amplitude of `|0;N>`.
    #[serde(serialize_with = "ser_complex")]
    pub psi_0n: Complex64,
    /// `|psi_n0 * conj(psi_0n)|`.
    pub coherence: f64,
    pub half_fidelity: f64,
    /// `|<NOON(π)|BS η>|^2`.
    pub noon_minus_overlap: f64,
}

fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}

/// Sends the η state through the 50/50 input splitter and reads off the
/// NOON-subspace coherence and the overlap with the opposite-phase NOON state.
pub fn coherence_check(n: usize, eta: f64) -> Result<CoherenceReport> {
    let params = EtaParams::new(n, eta)?;
    let f = fidelity(n, eta)?;
    let inside = apply_block(&beam_splitter_block(n, FRAC_PI_4, 0.0), &eta_state(params))?;
    let psi_n0 = inside.amplitude(0);
    let psi_0n = inside.amplitude(n);
    let minus = noon_interferometer(n, PI)?;
    Ok(CoherenceReport {
        n,
        eta,
        psi_n0,
        psi_0n,
        coherence: (psi_n0 * psi_0n.conj()).norm(),
        half_fidelity: f / 2.0,
        noon_minus_overlap: inner_product(&minus, &inside)?.norm_sqr(),
    })
}

/// `‖a†b ψ − (η/N)(a†a) b† a ψ‖ / ‖a†b ψ‖` for the exact η state.
pub fn defining_relation_residual(n: usize, eta: f64) -> Result<f64> {
    if n < 2 {
        return Err(contract(format!("residual needs N >= 2, got {n}")));
    }
    let params = EtaParams::new(n, eta)?;
    relation_residual_of(&eta_state(params), eta)
}

/// Same residual for an arbitrary N-photon state, so perturbed states can be
/// checked. When the left side vanishes the residual is the norm of the right
/// side (zero when both vanish).
pub fn relation_residual_of(state: &TwoModeFockState, eta: f64) -> Result<f64> {
    use LadderOp::*;
    let n = state.total_n();
    if n < 1 {
        return Err(contract("residual needs N >= 1"));
    }
    let lhs = state.ladder_chain(&[ADag, B]).expect("N >= 1");
    let rhs = state
        .ladder_chain(&[ADag, A, BDag, A])
        .expect("N >= 1")
        .scaled(Complex64::new(eta / n as f64, 0.0));
    let diff = lhs.sub(&rhs)?.norm();
    let scale = lhs.norm();
    Ok(if scale == 0.0 { diff } else { diff / scale })
}
