//! Fixed-total-photon-number algebra for two optical modes.
//!
//! A state with `N` photons is stored as the `N + 1` amplitudes of the kets
//! `|N-m; m>`, where index `m` counts the photons in mode `b`. Operators that
//! conserve photon number become dense `(N+1) x (N+1)` blocks; ladder
//! operators map between adjacent subspaces.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{contract, Error, Result};

/// Which physical pair of modes the indices of a state refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisLabel {
    /// Laser mode `a` and down-conversion mode `b`, before any beam splitter.
    Input,
    /// The two arms of the Mach-Zehnder interferometer.
    Interferometer,
    /// The two output ports (c, d).
    Output,
}

impl BasisLabel {
    fn after_beam_splitter(self) -> Result<Self> {
        match self {
            BasisLabel::Input => Ok(BasisLabel::Interferometer),
            BasisLabel::Interferometer => Ok(BasisLabel::Output),
            BasisLabel::Output => Err(contract("no beam splitter follows the output ports")),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisLabel::Input => "input",
            BasisLabel::Interferometer => "interferometer",
            BasisLabel::Output => "output",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOp {
    A,
    ADag,
    B,
    BDag,
}

/// Pure state of `total_n` photons distributed over two modes.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeFockState {
    total_n: usize,
    amplitudes: Vec<Complex64>,
    basis: BasisLabel,
}

impl TwoModeFockState {
    pub fn new(amplitudes: Vec<Complex64>, basis: BasisLabel) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(contract("a fixed-N state needs at least one amplitude"));
        }
        Ok(Self {
            total_n: amplitudes.len() - 1,
            amplitudes,
            basis,
        })
    }

    pub fn from_real(amplitudes: &[f64], basis: BasisLabel) -> Result<Self> {
        Self::new(
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            basis,
        )
    }

    /// Basis ket `|N-m; m>`.
    pub fn basis_ket(total_n: usize, m: usize, basis: BasisLabel) -> Result<Self> {
        if m > total_n {
            return Err(Error::Range {
                what: "m",
                value: m,
                max: total_n,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); total_n + 1];
        amplitudes[m] = Complex64::new(1.0, 0.0);
        Ok(Self {
            total_n,
            amplitudes,
            basis,
        })
    }

    pub fn total_n(&self) -> usize {
        self.total_n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, m: usize) -> Complex64 {
        self.amplitudes[m]
    }

    pub fn basis(&self) -> BasisLabel {
        self.basis
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Returns the state rescaled to unit norm, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        Some(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            total_n: self.total_n,
            amplitudes: self.amplitudes.iter().map(|&c| c * factor).collect(),
            basis: self.basis,
        }
    }

    /// `|a_m|^2` for every index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    /// `self - other`, both in the same subspace.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            total_n: self.total_n,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(x, y)| x - y)
                .collect(),
            basis: self.basis,
        })
    }

    /// Same amplitudes, relabelled basis. Only for building reference states.
    pub fn with_basis(mut self, basis: BasisLabel) -> Self {
        self.basis = basis;
        self
    }

    /// Largest per-amplitude distance to `other` after removing the best
    /// global phase.
    pub fn max_distance_up_to_phase(&self, other: &Self) -> Result<f64> {
        let overlap = inner_product(other, self)?;
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| (x - y * phase).norm())
            .fold(0.0, f64::max))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.total_n != other.total_n {
            return Err(contract(format!(
                "photon numbers differ: {} vs {}",
                self.total_n, other.total_n
            )));
        }
        if self.basis != other.basis {
            return Err(contract(format!(
                "bases differ: {} vs {}",
                self.basis, other.basis
            )));
        }
        Ok(())
    }

    /// Image of the state under a single ladder operator, with the usual
    /// `sqrt(n)` factors and no renormalisation.
    ///
    /// Annihilating the vacuum has no `N - 1` subspace to land in, so that case
    /// returns `None`.
    pub fn ladder_map(&self, op: LadderOp) -> Option<Self> {
        let n = self.total_n;
        let zero = Complex64::new(0.0, 0.0);
        let amplitudes = match op {
            LadderOp::A => {
                if n == 0 {
                    return None;
                }
                // |N-m; m> -> sqrt(N-m) |N-1-m; m>; m = N drops out.
                (0..n)
                    .map(|m| self.amplitudes[m] * ((n - m) as f64).sqrt())
                    .collect()
            }
            LadderOp::B => {
                if n == 0 {
                    return None;
                }
                (1..=n)
                    .map(|m| self.amplitudes[m] * (m as f64).sqrt())
                    .collect()
            }
            LadderOp::ADag => {
                let mut out: Vec<Complex64> = (0..=n)
                    .map(|m| self.amplitudes[m] * ((n - m + 1) as f64).sqrt())
                    .collect();
                out.push(zero);
                out
            }
            LadderOp::BDag => {
                let mut out = vec![zero];
                out.extend((0..=n).map(|m| self.amplitudes[m] * ((m + 1) as f64).sqrt()));
                out
            }
        };
        Some(Self {
            total_n: amplitudes.len() - 1,
            amplitudes,
            basis: self.basis,
        })
    }

    /// Applies ladder operators right to left, as written in an operator
    /// product: `chain(&[ADag, B])` is `a† b |ψ>`.
    pub fn ladder_chain(&self, ops: &[LadderOp]) -> Option<Self> {
        ops.iter()
            .rev()
            .try_fold(self.clone(), |s, &op| s.ladder_map(op))
    }
}

/// `<s1|s2>`.
pub fn inner_product(s1: &TwoModeFockState, s2: &TwoModeFockState) -> Result<Complex64> {
    s1.check_compatible(s2)?;
    Ok(s1
        .amplitudes
        .iter()
        .zip(&s2.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    BeamSplitter,
    PhaseShift,
}

/// Dense unitary acting inside one fixed-N subspace, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryBlock {
    total_n: usize,
    matrix: Vec<Complex64>,
    kind: BlockKind,
}

impl UnitaryBlock {
    pub fn total_n(&self) -> usize {
        self.total_n
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.total_n + 1
    }

    /// Element `<N-row; row| U |N-col; col>`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.dim() + col]
    }

    pub fn identity(total_n: usize) -> Self {
        phase_shift_block(total_n, 0.0, Mode::B)
    }

    /// Matrix product `self * rhs`. The kind of the product is only
    /// meaningful for bookkeeping; a product of phase shifts stays diagonal.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.total_n != rhs.total_n {
            return Err(contract(format!(
                "block sizes differ: N = {} vs N = {}",
                self.total_n, rhs.total_n
            )));
        }
        let d = self.dim();
        let mut matrix = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let lhs = self.matrix[i * d + k];
                if lhs == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    matrix[i * d + j] += lhs * rhs.matrix[k * d + j];
                }
            }
        }
        let kind = if self.kind == BlockKind::PhaseShift && rhs.kind == BlockKind::PhaseShift {
            BlockKind::PhaseShift
        } else {
            BlockKind::BeamSplitter
        };
        Ok(Self {
            total_n: self.total_n,
            matrix,
            kind,
        })
    }

    /// `max |(U†U - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.matrix[k * d + i].conj() * self.matrix[k * d + j];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Applies the block to a bare amplitude vector.
    pub(crate) fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        match self.kind {
            BlockKind::PhaseShift => v
                .iter()
                .enumerate()
                .map(|(i, x)| self.matrix[i * d + i] * x)
                .collect(),
            BlockKind::BeamSplitter => (0..d)
                .map(|i| {
                    self.matrix[i * d..(i + 1) * d]
                        .iter()
                        .zip(v)
                        .map(|(u, x)| u * x)
                        .sum()
                })
                .collect(),
        }
    }
}

/// Beam splitter lifted to the N-photon subspace.
///
/// The creation operators are substituted as
/// `a† -> cosθ a† + e^{iφc} sinθ b†` and `b† -> -e^{-iφc} sinθ a† + cosθ b†`;
/// column `m` of the block holds the image of `|N-m; m>`. `θ = π/4`, `φc = 0`
/// is the 50/50 splitter used throughout the crate.
///
/// For `φc = 0` the block is `exp(θ K)` with `K = b†a - a†b`. Conjugating by
/// `diag(i^m)` turns `K` into `-i T`, `T` real symmetric tridiagonal with
/// off-diagonal `sqrt((N-m)(m+1))` and exact spectrum `{-N, -N+2, …, N}`, so
/// `U = D V e^{-iθΛ} Vᵀ D⁻¹`. The convention phase then multiplies element
/// `(r, c)` by `e^{iφc (r-c)}`. Summing the binomial expansion directly
/// cancels catastrophically near θ = π/4 once N reaches a few dozen; the
/// eigen-decomposition stays unitary to rounding.
pub fn beam_splitter_block(total_n: usize, theta: f64, convention_phase: f64) -> UnitaryBlock {
    let n = total_n;
    let d = n + 1;
    let mut t = DMatrix::<f64>::zeros(d, d);
    for m in 0..n {
        let w = (((n - m) * (m + 1)) as f64).sqrt();
        t[(m + 1, m)] = w;
        t[(m, m + 1)] = w;
    }
    let eig = SymmetricEigen::new(t);
    let v = eig.eigenvectors;
    // Eigenvalues are integers of the same parity as N.
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&lambda| Complex64::from_polar(1.0, -theta * lambda.round()))
        .collect();

    let i_pow = |k: i64| match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut matrix = vec![Complex64::new(0.0, 0.0); d * d];
    for r in 0..d {
        for c in 0..d {
            let sum: Complex64 = (0..d).map(|j| phases[j] * (v[(r, j)] * v[(c, j)])).sum();
            let diff = r as i64 - c as i64;
            let conv = Complex64::from_polar(1.0, convention_phase * diff as f64);
            matrix[r * d + c] = i_pow(diff) * conv * sum;
        }
    }
    UnitaryBlock {
        total_n,
        matrix,
        kind: BlockKind::BeamSplitter,
    }
}

/// Phase `φ` per photon in the given mode.
pub fn phase_shift_block(total_n: usize, phi: f64, mode: Mode) -> UnitaryBlock {
    let d = total_n + 1;
    let mut matrix = vec![Complex64::new(0.0, 0.0); d * d];
    for m in 0..d {
        let photons = match mode {
            Mode::B => m,
            Mode::A => total_n - m,
        };
        matrix[m * d + m] = Complex64::from_polar(1.0, phi * photons as f64);
    }
    UnitaryBlock {
        total_n,
        matrix,
        kind: BlockKind::PhaseShift,
    }
}

/// `U |s>`. Beam splitters advance the basis label
/// input -> interferometer -> output; phase shifts keep it.
pub fn apply_block(block: &UnitaryBlock, state: &TwoModeFockState) -> Result<TwoModeFockState> {
    if block.total_n != state.total_n {
        return Err(contract(format!(
            "block acts on N = {} but state has N = {}",
            block.total_n, state.total_n
        )));
    }
    let basis = match block.kind {
        BlockKind::BeamSplitter => state.basis.after_beam_splitter()?,
        BlockKind::PhaseShift => state.basis,
    };
    Ok(TwoModeFockState {
        total_n: state.total_n,
        amplitudes: block.mul_vec(&state.amplitudes),
        basis,
    })
}
