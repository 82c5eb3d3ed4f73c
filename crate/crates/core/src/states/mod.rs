//! Two-qubit density matrices: validation, Werner states, Bloch
//! decomposition and zero-discord (classical-quantum) fixtures.

mod json;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{eigvalsh, hs_norm_sq, kron, pauli, CMatrix, Mat2, Mat4};

pub use json::{density_matrix_from_json, density_matrix_to_json, matrix_from_json};

/// Allowed `‖ρ − ρ†‖_HS`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Allowed `|Tr ρ − 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite. Eigenvalues in
/// `[−PSD_TOL, 0)` are treated as zero by the entropy routines.
pub const PSD_TOL: f64 = 1e-9;

/// A certified two-qubit state: Hermitian, unit trace, positive semidefinite.
///
/// The stored matrix is the exactly Hermitian part of whatever was validated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    pub fn maximally_mixed() -> Self {
        Self(Mat4::identity().scale(0.25))
    }

    /// `|ψ><ψ|` for the normalized `amplitudes`.
    pub fn pure(amplitudes: [Complex64; 4]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument("state vector must be finite and nonzero".into()));
        }
        let psi = amplitudes.map(|z| z / norm);
        Ok(validate(&Mat4::outer(&psi))?)
    }

    /// `(|00> + |11>)/√2`
    pub fn bell_phi_plus() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::pure([h, zero, zero, h]).expect("Bell state is valid")
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4 {
        self.0
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        eigvalsh(&self.0)
    }
}

impl AsRef<Mat4> for DensityMatrix {
    fn as_ref(&self) -> &Mat4 {
        &self.0
    }
}

/// One failed density-matrix requirement.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    NonFinite,
    NotHermitian { deviation: f64 },
    Trace { trace: f64 },
    NotPositive { min_eigenvalue: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite => write!(f, "matrix has non-finite entries"),
            Violation::NotHermitian { deviation } => {
                write!(f, "not Hermitian: ‖ρ − ρ†‖ = {deviation:.3e} > {HERMITIAN_TOL:e}")
            }
            Violation::Trace { trace } => {
                write!(f, "trace is {trace} (off by {:.3e})", (trace - 1.0).abs())
            }
            Violation::NotPositive { min_eigenvalue } => {
                write!(f, "not positive semidefinite: min eigenvalue {min_eigenvalue:.6e}")
            }
        }
    }
}

/// Every invariant a candidate density matrix failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Checks density-matrix invariants for any dimension and returns the
/// Hermitian part on success.
pub(crate) fn check_state<const N: usize>(m: &CMatrix<N>) -> std::result::Result<CMatrix<N>, ValidationReport> {
    if !m.is_finite() {
        return Err(ValidationReport {
            violations: vec![Violation::NonFinite],
        });
    }
    let mut violations = Vec::new();
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        violations.push(Violation::NotHermitian { deviation });
    }
    let h = m.hermitian_part();
    let trace = h.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        violations.push(Violation::Trace { trace });
    }
    let min_eigenvalue = eigvalsh(&h)[N - 1];
    if min_eigenvalue < -PSD_TOL {
        violations.push(Violation::NotPositive { min_eigenvalue });
    }
    if violations.is_empty() {
        Ok(h)
    } else {
        Err(ValidationReport { violations })
    }
}

/// Certifies `m` as a density matrix or reports which invariants fail.
pub fn validate(m: &Mat4) -> std::result::Result<DensityMatrix, ValidationReport> {
    check_state(m).map(DensityMatrix)
}

/// The two-state superpositions used for Werner-type initial states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisPair {
    /// `sinθ|11> + cosθ|00>`
    ParallelSpins,
    /// `sinθ|10> + cosθ|01>`
    AntiparallelSpins,
}

/// `p |φ><φ| + (1 − p) I/4` with `|φ>` chosen by `pair`.
pub fn werner(p: f64, theta: f64, pair: BasisPair) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("purity p = {p} is outside [0, 1]")));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("theta = {theta} is not finite")));
    }
    let (s, c) = theta.sin_cos();
    let mut phi = [Complex64::new(0.0, 0.0); 4];
    match pair {
        BasisPair::ParallelSpins => {
            phi[3] = s.into();
            phi[0] = c.into();
        }
        BasisPair::AntiparallelSpins => {
            phi[2] = s.into();
            phi[1] = c.into();
        }
    }
    let m = Mat4::outer(&phi).scale(p) + Mat4::identity().scale((1.0 - p) / 4.0);
    Ok(validate(&m)?)
}

/// Pauli-basis coordinates of a two-qubit state:
/// `ρ = ¼[I⊗I + Σ xᵢ σᵢ⊗I + Σ yᵢ I⊗σᵢ + Σ Rᵢⱼ σᵢ⊗σⱼ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochForm {
    /// Local Bloch vector of qubit A.
    pub x: [f64; 3],
    /// Local Bloch vector of qubit B.
    pub y: [f64; 3],
    /// Correlation matrix `Rᵢⱼ = Tr(ρ σᵢ⊗σⱼ)`.
    pub r: [[f64; 3]; 3],
}

impl BlochForm {
    /// Reassembles the 4×4 operator from its Pauli coordinates.
    pub fn to_matrix(&self) -> Mat4 {
        let s = pauli();
        let id = Mat2::identity();
        let mut m = Mat4::identity();
        for i in 0..3 {
            m = m + kron(&s[i], &id).scale(self.x[i]) + kron(&id, &s[i]).scale(self.y[i]);
            for j in 0..3 {
                m = m + kron(&s[i], &s[j]).scale(self.r[i][j]);
            }
        }
        m.scale(0.25)
    }

    /// The same state with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            r: std::array::from_fn(|i| std::array::from_fn(|j| self.r[j][i])),
        }
    }

    pub fn correlation_norm_sq(&self) -> f64 {
        self.r.iter().flatten().map(|v| v * v).sum()
    }
}

fn expectation(rho: &Mat4, op: &Mat4) -> f64 {
    (rho * op).trace().re
}

pub fn bloch_decompose(rho: &DensityMatrix) -> BlochForm {
    let s = pauli();
    let id = Mat2::identity();
    let m = rho.matrix();
    BlochForm {
        x: std::array::from_fn(|i| expectation(m, &kron(&s[i], &id))),
        y: std::array::from_fn(|i| expectation(m, &kron(&id, &s[i]))),
        r: std::array::from_fn(|i| std::array::from_fn(|j| expectation(m, &kron(&s[i], &s[j])))),
    }
}

/// Single-qubit basis `{|k>}` given by the Bloch angles of its first vector.
pub fn qubit_basis(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    [[Complex64::new(c, 0.0), e * s], [Complex64::new(-s, 0.0), e * c]]
}

/// `Σₖ pₖ |k><k| ⊗ σₖ`, a state with zero discord when A is measured.
///
/// `basis_angles` are the Bloch angles `(θ, φ)` of `|0'>`; `|1'>` is its
/// orthogonal complement.
pub fn classical_quantum(probs: [f64; 2], basis_angles: (f64, f64), sigmas: [Mat2; 2]) -> Result<DensityMatrix> {
    if probs.iter().any(|&p| !p.is_finite() || p < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "probabilities must be non-negative, got {probs:?}"
        )));
    }
    if (probs[0] + probs[1] - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "probabilities sum to {}, expected 1",
            probs[0] + probs[1]
        )));
    }
    for (k, sigma) in sigmas.iter().enumerate() {
        check_state(sigma)
            .map_err(|report| Error::InvalidArgument(format!("conditional state {k} is invalid: {report}")))?;
    }
    let basis = qubit_basis(basis_angles.0, basis_angles.1);
    let mut m = Mat4::zeros();
    for k in 0..2 {
        let proj = Mat2::outer(&basis[k]);
        m = m + kron(&proj, &sigmas[k]).scale(probs[k]);
    }
    Ok(validate(&m)?)
}

/// `‖ρ − σ‖²_HS`
pub fn hs_distance_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    hs_norm_sq(&(*rho.matrix() - *sigma.matrix()))
}
