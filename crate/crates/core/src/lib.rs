//! Quantum and classical correlations of two-qubit states.
//!
//! The crate provides
//!
//! * [`qmat`]: small complex matrices, partial traces and transposes, and a
//!   Jacobi eigensolver for Hermitian matrices;
//! * [`states`]: validated density matrices, Werner states, Bloch
//!   decomposition, classical-quantum states and the JSON matrix format;
//! * [`measures`]: entropy, mutual information, classical correlation,
//!   quantum discord, geometric discord and negativity;
//! * [`models`]: closed-form dynamics of a cavity-coupled pair and of a
//!   dephased exchange-coupled pair;
//! * [`sweep`]: parameter sweeps, figure presets and their CSV/JSON output.

pub mod error;
pub mod measures;
pub mod models;
pub mod qmat;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
pub use measures::{
    classical_correlation, conditional_entropy, correlation_report, gmqd, gmqd_measured, mutual_information,
    negativity, quantum_discord, von_neumann_entropy, ClassicalCorrelation, CorrelationReport, Discord,
    MeasurementBasis, OptimizerSettings,
};
pub use models::{
    cavity_eigvals_analytic, cavity_reduced, cavity_state, decoherence_factor, dephasing_eigvals_analytic,
    dephasing_reduced, dephasing_state, model_state, CavityCoefficients, CoherenceForm, DecoherenceFactor,
    DephasingCoefficients, DephasingModel, DephasingSpectrum, ExponentialDecoherence, Model, ModelParams,
    VARPI_OVER_LAMBDA,
};
pub use qmat::{
    herm_eig, hs_norm_sq, kron, partial_trace, partial_transpose, CMatrix, EigenResult, Mat2, Mat4, Subsystem,
};
pub use states::{
    bloch_decompose, classical_quantum, validate, werner, BasisPair, BlochForm, DensityMatrix, ValidationReport,
    Violation,
};
