//! Correlation measures for two-qubit states.
//!
//! Entropies are in bits. Discord and classical correlation are computed for
//! rank-one projective measurements on one qubit, optimized over the Bloch
//! sphere of measurement directions.

mod optimize;

use std::f64::consts::PI;

use serde::Serialize;

use crate::qmat::{eigvalsh, kron, partial_trace, partial_transpose, pauli, CMatrix, Mat2, Mat4, Subsystem};
use crate::states::{bloch_decompose, DensityMatrix};

pub use optimize::OptimizerSettings;

/// Outcomes less likely than this contribute nothing to conditional entropy.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-14;

/// Partial-transpose eigenvalues above `−NEGATIVITY_FLOOR` count as
/// non-negative; this absorbs eigensolver roundoff on PPT states.
pub const NEGATIVITY_FLOOR: f64 = 1e-14;

/// Projective qubit measurement along `n̂(θ, φ)`, with projectors
/// `Π± = (I ± n̂·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub const Z: Self = Self { theta: 0.0, phi: 0.0 };

    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `[Π+, Π−]`
    pub fn projectors(&self) -> [Mat2; 2] {
        let n = self.direction();
        let s = pauli();
        let n_sigma = s[0].scale(n[0]) + s[1].scale(n[1]) + s[2].scale(n[2]);
        let id = Mat2::identity();
        [(id + n_sigma).scale(0.5), (id - n_sigma).scale(0.5)]
    }

    /// Same projectors with `θ ∈ [0, π]` and `φ ∈ [0, 2π)`.
    pub fn canonical(&self) -> Self {
        let mut theta = self.theta.rem_euclid(2.0 * PI);
        let mut phi = self.phi;
        if theta > PI {
            theta = 2.0 * PI - theta;
            phi += PI;
        }
        phi = phi.rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self { theta, phi }
    }
}

/// `−Σ λ log₂ λ` over the eigenvalues, with `0 log 0 = 0`. Eigenvalues
/// that are slightly negative from roundoff are treated as zero.
pub fn von_neumann_entropy<const N: usize>(rho: &CMatrix<N>) -> f64 {
    entropy_of_spectrum(&eigvalsh(rho))
}

fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum();
    s.max(0.0)
}

/// Entropy of a unit-trace qubit operator from its closed-form spectrum
/// `½(1 ± |r|)`, `r` the Bloch vector.
fn qubit_entropy(m: &Mat2) -> f64 {
    let half_gap = (0.5 * (m[(0, 0)].re - m[(1, 1)].re)).hypot(m[(0, 1)].norm());
    let lo = (0.5 - half_gap).max(0.0);
    let hi = 0.5 + half_gap;
    entropy_of_spectrum(&[hi, lo])
}

/// `S(ρ_A) + S(ρ_B) − S(ρ_AB)`
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    von_neumann_entropy(&partial_trace(m, Subsystem::A)) + von_neumann_entropy(&partial_trace(m, Subsystem::B))
        - entropy_of_spectrum(&rho.eigenvalues())
}

/// `Σₖ pₖ S(ρₖ)` where `ρₖ` is the post-measurement state of the unmeasured
/// qubit after outcome `k` of `basis` on `measured`.
pub fn conditional_entropy(rho: &DensityMatrix, basis: &MeasurementBasis, measured: Subsystem) -> f64 {
    let id = Mat2::identity();
    basis
        .projectors()
        .iter()
        .map(|proj| {
            let lift: Mat4 = match measured {
                Subsystem::A => kron(proj, &id),
                Subsystem::B => kron(&id, proj),
            };
            let post = lift * *rho.matrix() * lift;
            let p = post.trace().re;
            if p < MIN_OUTCOME_PROBABILITY {
                return 0.0;
            }
            let conditional = partial_trace(&post, measured.other()).scale(1.0 / p);
            p * von_neumann_entropy(&conditional)
        })
        .sum()
}

/// Precomputed pieces of the classical-correlation objective.
///
/// For outcome `±` the unnormalized conditional state of the unmeasured
/// qubit is `½(ρ_u ± Σᵢ nᵢ Tᵢ)`, with `Tᵢ` the partial trace of `ρ` times
/// `σᵢ` on the measured side.
struct MeasurementObjective {
    unmeasured: Mat2,
    unmeasured_entropy: f64,
    t: [Mat2; 3],
}

impl MeasurementObjective {
    fn new(rho: &DensityMatrix, measured: Subsystem) -> Self {
        let m = rho.matrix();
        let id = Mat2::identity();
        let keep = measured.other();
        let unmeasured = partial_trace(m, keep);
        let t = pauli().map(|s| {
            let lift = match measured {
                Subsystem::A => kron(&s, &id),
                Subsystem::B => kron(&id, &s),
            };
            partial_trace(&(m * &lift), keep)
        });
        Self {
            unmeasured,
            unmeasured_entropy: von_neumann_entropy(&unmeasured),
            t,
        }
    }

    fn conditional_entropy(&self, basis: &MeasurementBasis) -> f64 {
        let n = basis.direction();
        let shift = self.t[0].scale(n[0]) + self.t[1].scale(n[1]) + self.t[2].scale(n[2]);
        [self.unmeasured + shift, self.unmeasured - shift]
            .iter()
            .map(|m| {
                let unnormalized = m.scale(0.5);
                let p = unnormalized.trace().re;
                if p < MIN_OUTCOME_PROBABILITY {
                    0.0
                } else {
                    p * qubit_entropy(&unnormalized.scale(1.0 / p))
                }
            })
            .sum()
    }

    fn information_gain(&self, basis: &MeasurementBasis) -> f64 {
        self.unmeasured_entropy - self.conditional_entropy(basis)
    }
}

/// Best information gain about the unmeasured qubit over projective
/// measurements on `measured`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalCorrelation {
    pub value: f64,
    pub basis: MeasurementBasis,
    /// False if the local refinement hit its iteration cap; `value` is then
    /// the best point found.
    pub converged: bool,
}

/// `max_Π [S(ρ_u) − Σₖ pₖ S(ρₖ)]` over measurement directions on `measured`.
pub fn classical_correlation(
    rho: &DensityMatrix,
    measured: Subsystem,
    settings: &OptimizerSettings,
) -> ClassicalCorrelation {
    let objective = MeasurementObjective::new(rho, measured);
    let best = optimize::maximize(
        |[theta, phi]| objective.information_gain(&MeasurementBasis { theta, phi }),
        settings,
    );
    ClassicalCorrelation {
        value: best.value.max(0.0),
        basis: MeasurementBasis::new(best.point[0], best.point[1]).canonical(),
        converged: best.converged,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discord {
    pub value: f64,
    pub mutual_info: f64,
    pub classical: ClassicalCorrelation,
}

/// Mutual information minus classical correlation, floored at zero.
pub fn quantum_discord(rho: &DensityMatrix, measured: Subsystem, settings: &OptimizerSettings) -> Discord {
    let mutual_info = mutual_information(rho).max(0.0);
    let classical = classical_correlation(rho, measured, settings);
    Discord {
        value: (mutual_info - classical.value).max(0.0),
        mutual_info,
        classical,
    }
}

/// Geometric discord with the measurement on qubit A.
pub fn gmqd(rho: &DensityMatrix) -> f64 {
    gmqd_measured(rho, Subsystem::A)
}

/// `¼(‖x‖² + ‖R‖² − k_max)`, `k_max` the top eigenvalue of `x xᵀ + R Rᵀ`,
/// where `x` is the Bloch vector of the measured qubit.
pub fn gmqd_measured(rho: &DensityMatrix, measured: Subsystem) -> f64 {
    let bloch = match measured {
        Subsystem::A => bloch_decompose(rho),
        Subsystem::B => bloch_decompose(rho).swapped(),
    };
    let (x, r) = (bloch.x, bloch.r);
    let k = CMatrix::<3>::from_fn(|i, j| {
        let rr: f64 = (0..3).map(|l| r[i][l] * r[j][l]).sum();
        (x[i] * x[j] + rr).into()
    });
    let k_max = eigvalsh(&k)[0];
    let x_sq: f64 = x.iter().map(|v| v * v).sum();
    (0.25 * (x_sq + bloch.correlation_norm_sq() - k_max)).max(0.0)
}

/// `−2 Σ μⱼ` over the negative eigenvalues of the partial transpose on B.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    let pt = partial_transpose(rho.matrix(), Subsystem::B);
    let negative: f64 = eigvalsh(&pt).iter().filter(|&&mu| mu < -NEGATIVITY_FLOOR).sum();
    (-2.0 * negative).max(0.0)
}

/// All correlation measures of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub mutual_info: f64,
    pub classical_corr: f64,
    pub discord: f64,
    /// Geometric discord, always with the measurement on A.
    pub gmqd: f64,
    pub negativity: f64,
    pub measured: Subsystem,
    pub argmax_basis: MeasurementBasis,
    pub converged: bool,
}

pub fn correlation_report(rho: &DensityMatrix, measured: Subsystem, settings: &OptimizerSettings) -> CorrelationReport {
    let d = quantum_discord(rho, measured, settings);
    CorrelationReport {
        mutual_info: d.mutual_info,
        classical_corr: d.classical.value,
        discord: d.value,
        gmqd: gmqd(rho),
        negativity: negativity(rho),
        measured,
        argmax_basis: d.classical.basis,
        converged: d.classical.converged,
    }
}
