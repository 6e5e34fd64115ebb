//! Markovian dynamics of two independent two-level atoms immersed in a common
//! thermal bath of massless scalar fields.
//!
//! The crate builds the Kossakowski matrix of the weak-coupling generator from
//! the thermal bath spectra, evolves two-qubit density matrices under the
//! resulting dissipator, and decides whether the bath entangles the atoms,
//! both at the onset of the evolution and in the long-time limit.
//!
//! Modules, bottom-up:
//!
//! * [`spectral`]: bath spectra, Kossakowski coefficients and matrix (two
//!   independent constructions), positivity certificate.
//! * [`dynamics`]: two-qubit operators, dissipator, superoperator, time
//!   evolution by matrix exponential with a Runge–Kutta cross-check.
//! * [`entanglement`]: partial transposition, concurrence, the probe
//!   function and the onset generation test.
//! * [`asymptotic`]: stationary states, the closed-form equilibrium family at
//!   vanishing separation, asymptotic concurrence.
//! * [`cli`]: JSON run configuration and the command implementations backing
//!   the `bath-entanglement` binary.
//!
//! Natural units (ħ = c = k_B = 1) are used throughout. Density matrices live
//! in the product basis of σ₃ eigenstates, ordered `|++⟩, |+−⟩, |−+⟩, |−−⟩`.

pub mod asymptotic;
pub mod cli;
pub mod dynamics;
pub mod entanglement;
mod error;
pub mod linalg;
pub mod spectral;

pub use error::{Error, Result};

pub use asymptotic::{
    asymptotic_concurrence, asymptotic_state, equilibrium_closed_form, stationary_basis,
    threshold_tau, AsymptoticState, EquilibriumFamily,
};
pub use dynamics::{
    build_superoperator, dissipator_apply, evolve, evolve_traj, pauli_op, tau, DensityMatrix,
    Superoperator, Trajectory,
};
pub use entanglement::{
    concurrence, criterion_rs, generation_test, is_entangled, min_eig_pt, min_q_rate,
    partial_transpose, q_probe, q_rate, small_time_ppt_oracle, uv_vectors, GenerationVerdict,
    ProductState, RsCriterion, UvVectors, Verdict,
};
pub use spectral::{
    build_kossakowski_closed, build_kossakowski_spectral, kossakowski_coefficients, psd_check,
    psi_tensors, spectral_density, Beta, KossakowskiCoefficients, KossakowskiMatrix, ModelParams,
    PsiTensors, SpectralValues,
};
