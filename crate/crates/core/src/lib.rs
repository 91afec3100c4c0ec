//! Two-mode Fock-space simulation of N-photon path entanglement produced by
//! interfering coherent laser light with down-converted photon pairs.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinatorics`] – cached log-factorials and log-binomials.
//! * [`fock`] – fixed-N two-mode states, ladder maps, beam-splitter and
//!   phase-shift blocks.
//! * [`states`] – constructors for the interferometric (η) states, NOON states,
//!   their Gaussian approximants and the coherent ⊗ squeezed projection oracle.
//! * [`analysis`] – fidelities, η optimisation, overlap curves and the
//!   coherence/orthogonality checks.
//! * [`interferometer`] – Mach-Zehnder fringe scans, harmonic visibility and
//!   phase sensitivity.
//! * [`report`] – CSV/JSON rendering shared by the `noonsim` binary.
//!
//! Sweeps over N or φ run on rayon when the `parallel` feature (default) is
//! enabled and fall back to a plain sequential loop otherwise; see [`exec`].

pub mod analysis;
pub mod check;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod fock;
pub mod interferometer;
pub mod report;
pub mod states;

pub use analysis::{
    coherence_check, defining_relation_residual, fidelity, optimize_eta, overlap_curve,
    CoherenceReport, OptimizationResult, OverlapCurve,
};
pub use combinatorics::LogCombinatorics;
pub use error::{Error, Result};
pub use exec::Exec;
pub use fock::{
    apply_block, beam_splitter_block, inner_product, phase_shift_block, BasisLabel, BlockKind,
    LadderOp, Mode, TwoModeFockState, UnitaryBlock,
};
pub use interferometer::{
    fourier_visibility, fringe_scan, mz_output_distribution, phase_sensitivity, FringeScan,
    MachZehnder, Normalization, VisibilityReport,
};
pub use states::{EtaParams, InputFieldParams};

pub use num_complex::Complex64;
