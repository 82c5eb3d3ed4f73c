//! Closed-form two-qubit states for two dynamical models:
//!
//! * `Cavity`: two qubits resonantly coupled to one vacuum cavity mode,
//!   starting from a Werner state on `{|11>, |00>}`.
//! * `Dephasing`: two exchange-coupled qubits dephased by a bosonic bath,
//!   starting from a Werner state on `{|10>, |01>}`.
//!
//! Time is the dimensionless `λt`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{Mat2, Mat4, Subsystem};
use crate::states::{validate, DensityMatrix};

/// Rabi frequency of the cavity model in units of `λ`, `√6`.
pub const VARPI_OVER_LAMBDA: f64 = 2.449_489_742_783_178;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Cavity,
    Dephasing,
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cavity" => Ok(Model::Cavity),
            "dephasing" => Ok(Model::Dephasing),
            other => Err(Error::InvalidArgument(format!(
                "unknown model {other:?}, expected cavity or dephasing"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub model: Model,
    /// Purity of the initial Werner state.
    pub p: f64,
    /// Superposition angle of the initial pure component, radians.
    pub theta: f64,
    /// Bath coupling `γ/λ`; ignored by the cavity model.
    pub gamma_over_lambda: f64,
    pub lambda_t: f64,
}

impl ModelParams {
    pub fn cavity(p: f64, theta: f64, lambda_t: f64) -> Self {
        Self {
            model: Model::Cavity,
            p,
            theta,
            gamma_over_lambda: 0.0,
            lambda_t,
        }
    }

    pub fn dephasing(p: f64, theta: f64, gamma_over_lambda: f64, lambda_t: f64) -> Self {
        Self {
            model: Model::Dephasing,
            p,
            theta,
            gamma_over_lambda,
            lambda_t,
        }
    }

    pub fn at_time(self, lambda_t: f64) -> Self {
        Self { lambda_t, ..self }
    }

    pub fn check(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidArgument(format!(
                "purity p = {} is outside [0, 1]",
                self.p
            )));
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidArgument(format!("theta = {} is not finite", self.theta)));
        }
        if !(self.gamma_over_lambda >= 0.0 && self.gamma_over_lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "gamma/lambda = {} must be finite and non-negative",
                self.gamma_over_lambda
            )));
        }
        if !self.lambda_t.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "lambda_t = {} is not finite",
                self.lambda_t
            )));
        }
        Ok(())
    }

    fn expect_model(&self, model: Model) -> Result<()> {
        if self.model != model {
            return Err(Error::InvalidArgument(format!(
                "parameters are for the {:?} model, not {:?}",
                self.model, model
            )));
        }
        self.check()
    }
}

/// Time-evolved state of whichever model `params` selects, using the default
/// decoherence factor for the dephasing model.
pub fn model_state(params: &ModelParams) -> Result<DensityMatrix> {
    match params.model {
        Model::Cavity => cavity_state(params),
        Model::Dephasing => dephasing_state(params),
    }
}

// ---------------------------------------------------------------------------
// Cavity model

/// Entries of the cavity-model state: populations `a1` on `|11>`, `a2` on
/// `|00>`, `a4` on `|01>` and `|10>`; coherences `a3` (`|00>↔|11>`) and
/// `a5` (`|01>↔|10>`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
}

impl CavityCoefficients {
    pub fn new(p: f64, theta: f64, lambda_t: f64) -> Self {
        let mixed = (1.0 - p) / 4.0;
        let wt = VARPI_OVER_LAMBDA * lambda_t;
        let (sin_wt, cos_wt) = wt.sin_cos();
        let (s, c) = theta.sin_cos();
        let s2 = s * s;
        let a4 = mixed + p / 6.0 * sin_wt * sin_wt * s2;
        Self {
            a1: mixed + p / 9.0 * (2.0 + cos_wt).powi(2) * s2,
            a2: mixed + p * c * c + 2.0 * p / 9.0 * (1.0 - cos_wt).powi(2) * s2,
            a3: p / 3.0 * (2.0 + cos_wt) * s * c,
            a4,
            a5: a4 - mixed,
        }
    }

    pub fn matrix(&self) -> Mat4 {
        let mut m = Mat4::from_real_diag([self.a2, self.a4, self.a4, self.a1]);
        m[(0, 3)] = self.a3.into();
        m[(3, 0)] = self.a3.into();
        m[(1, 2)] = self.a5.into();
        m[(2, 1)] = self.a5.into();
        m
    }
}

pub fn cavity_state(params: &ModelParams) -> Result<DensityMatrix> {
    params.expect_model(Model::Cavity)?;
    let coeffs = CavityCoefficients::new(params.p, params.theta, params.lambda_t);
    Ok(validate(&coeffs.matrix())?)
}

/// `{a4 + a5, a4 − a5, ½[(a1+a2) ± √((a1−a2)² + 4a3²)]}`, descending.
pub fn cavity_eigvals_analytic(params: &ModelParams) -> Result<[f64; 4]> {
    params.expect_model(Model::Cavity)?;
    let CavityCoefficients { a1, a2, a3, a4, a5 } = CavityCoefficients::new(params.p, params.theta, params.lambda_t);
    let root = ((a1 - a2).powi(2) + 4.0 * a3 * a3).sqrt();
    Ok(sorted_desc([
        a4 + a5,
        a4 - a5,
        0.5 * (a1 + a2 + root),
        0.5 * (a1 + a2 - root),
    ]))
}

/// Both marginals equal `diag(a2 + a4, a1 + a4)` in the basis `|0>, |1>`.
pub fn cavity_reduced(params: &ModelParams, _which: Subsystem) -> Result<Mat2> {
    params.expect_model(Model::Cavity)?;
    let c = CavityCoefficients::new(params.p, params.theta, params.lambda_t);
    Ok(Mat2::from_real_diag([c.a2 + c.a4, c.a1 + c.a4]))
}

// ---------------------------------------------------------------------------
// Dephasing model

/// Decoherence factor `L_d` as a function of `(γ/λ, λt)`.
pub trait DecoherenceFactor: Sync {
    fn factor(&self, gamma_over_lambda: f64, lambda_t: f64) -> f64;
}

/// `L_d = exp(−(γ/λ)·λt)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExponentialDecoherence;

impl DecoherenceFactor for ExponentialDecoherence {
    fn factor(&self, gamma_over_lambda: f64, lambda_t: f64) -> f64 {
        (-gamma_over_lambda * lambda_t).exp()
    }
}

impl<F> DecoherenceFactor for F
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    fn factor(&self, gamma_over_lambda: f64, lambda_t: f64) -> f64 {
        self(gamma_over_lambda, lambda_t)
    }
}

pub fn decoherence_factor(gamma_over_lambda: f64, lambda_t: f64) -> f64 {
    ExponentialDecoherence.factor(gamma_over_lambda, lambda_t)
}

/// How the imaginary part of the `|10>↔|01>` coherence is built.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoherenceForm {
    /// `Im α4 = −(p/2)·L_d·cos2θ·sin2λt`: the exchange coupling rotates the
    /// population imbalance `β` into the imaginary coherence, and both decay
    /// with `L_d`. Matches the Werner state at `λt = 0` and keeps the state
    /// positive for all parameters.
    #[default]
    Rotating,
    /// `Im α4 = −β`, as the closed form is commonly printed. Not positive
    /// semidefinite for large `p` at small or large `θ`; kept for comparison.
    Printed,
}

/// Entries of the dephasing-model state: `alpha1` on `|00>` and `|11>`,
/// `alpha2` on `|10>`, `alpha3` on `|01>`, coherence `alpha4 = <10|ρ|01>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DephasingCoefficients {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub alpha4: Complex64,
    pub beta: f64,
    pub l_d: f64,
}

impl DephasingCoefficients {
    pub fn new(p: f64, theta: f64, lambda_t: f64, l_d: f64, form: CoherenceForm) -> Self {
        let (sin_2t, cos_2t) = (2.0 * lambda_t).sin_cos();
        let (sin_2th, cos_2th) = (2.0 * theta).sin_cos();
        let beta = p / 2.0 * l_d * cos_2th * cos_2t;
        let im = match form {
            CoherenceForm::Rotating => -p / 2.0 * l_d * cos_2th * sin_2t,
            CoherenceForm::Printed => -beta,
        };
        Self {
            alpha1: (1.0 - p) / 4.0,
            alpha2: (1.0 + p) / 4.0 - beta,
            alpha3: (1.0 + p) / 4.0 + beta,
            alpha4: Complex64::new(p / 2.0 * sin_2th, im),
            beta,
            l_d,
        }
    }

    pub fn matrix(&self) -> Mat4 {
        let mut m = Mat4::from_real_diag([self.alpha1, self.alpha3, self.alpha2, self.alpha1]);
        m[(2, 1)] = self.alpha4;
        m[(1, 2)] = self.alpha4.conj();
        m
    }
}

/// Dephasing model with an injectable decoherence factor.
#[derive(Debug, Clone, Copy, Default)]
pub struct DephasingModel<D = ExponentialDecoherence> {
    pub decoherence: D,
    pub coherence: CoherenceForm,
}

impl<D: DecoherenceFactor> DephasingModel<D> {
    pub fn new(decoherence: D) -> Self {
        Self {
            decoherence,
            coherence: CoherenceForm::default(),
        }
    }

    pub fn with_coherence(self, coherence: CoherenceForm) -> Self {
        Self { coherence, ..self }
    }

    pub fn coefficients(&self, params: &ModelParams) -> Result<DephasingCoefficients> {
        params.expect_model(Model::Dephasing)?;
        let l_d = self.decoherence.factor(params.gamma_over_lambda, params.lambda_t);
        Ok(DephasingCoefficients::new(
            params.p,
            params.theta,
            params.lambda_t,
            l_d,
            self.coherence,
        ))
    }

    /// Fails with [`Error::InvalidState`] if the coefficients do not form a
    /// density matrix, which can happen with [`CoherenceForm::Printed`].
    pub fn state(&self, params: &ModelParams) -> Result<DensityMatrix> {
        Ok(validate(&self.coefficients(params)?.matrix())?)
    }

    pub fn eigvals_analytic(&self, params: &ModelParams) -> Result<DephasingSpectrum> {
        Ok(DephasingSpectrum::from_coefficients(
            params.p,
            &self.coefficients(params)?,
        ))
    }

    /// `ρ_A = diag(α1 + α3, α1 + α2)`, `ρ_B = diag(α1 + α2, α1 + α3)` in the
    /// basis `|0>, |1>`.
    pub fn reduced(&self, params: &ModelParams, which: Subsystem) -> Result<Mat2> {
        let c = self.coefficients(params)?;
        let (low, high) = (c.alpha1 + c.alpha3, c.alpha1 + c.alpha2);
        Ok(match which {
            Subsystem::A => Mat2::from_real_diag([low, high]),
            Subsystem::B => Mat2::from_real_diag([high, low]),
        })
    }
}

/// Exact spectrum of the dephasing state, alongside the eigenvalue pair
/// obtained from the printed closed form `¼[1+p ± √((1+p)² − 16|α4|²)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DephasingSpectrum {
    /// Descending.
    pub eigenvalues: [f64; 4],
    /// `(1+p)² − 16|α4|²`; may be negative.
    pub printed_radicand: f64,
    /// Largest absolute gap between the printed pair and the exact block
    /// pair, `None` when the printed radicand is negative.
    pub printed_form_residual: Option<f64>,
}

impl DephasingSpectrum {
    fn from_coefficients(p: f64, c: &DephasingCoefficients) -> Self {
        let sum = c.alpha2 + c.alpha3;
        let root = ((c.alpha2 - c.alpha3).powi(2) + 4.0 * c.alpha4.norm_sqr()).sqrt();
        let block = [0.5 * (sum + root), 0.5 * (sum - root)];
        let printed_radicand = (1.0 + p).powi(2) - 16.0 * c.alpha4.norm_sqr();
        let printed_form_residual = (printed_radicand >= 0.0).then(|| {
            let r = printed_radicand.sqrt();
            let printed = [0.25 * (1.0 + p + r), 0.25 * (1.0 + p - r)];
            (printed[0] - block[0]).abs().max((printed[1] - block[1]).abs())
        });
        Self {
            eigenvalues: sorted_desc([c.alpha1, c.alpha1, block[0], block[1]]),
            printed_radicand,
            printed_form_residual,
        }
    }
}

pub fn dephasing_state(params: &ModelParams) -> Result<DensityMatrix> {
    DephasingModel::<ExponentialDecoherence>::default().state(params)
}

pub fn dephasing_eigvals_analytic(params: &ModelParams) -> Result<DephasingSpectrum> {
    DephasingModel::<ExponentialDecoherence>::default().eigvals_analytic(params)
}

pub fn dephasing_reduced(params: &ModelParams, which: Subsystem) -> Result<Mat2> {
    DephasingModel::<ExponentialDecoherence>::default().reduced(params, which)
}

fn sorted_desc(mut v: [f64; 4]) -> [f64; 4] {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}
