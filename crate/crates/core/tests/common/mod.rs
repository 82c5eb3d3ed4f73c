//! Random-state generators and brute-force reference computations shared by
//! the integration tests. Nothing here calls into the crate's measure code.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use qcorr_core::{validate, DensityMatrix, Mat2, Mat4, Subsystem};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// `G G† / Tr(G G†)` with `G` a 4×rank complex Gaussian matrix.
pub fn random_state(rng: &mut impl Rng, rank: usize) -> DensityMatrix {
    let g: Vec<[Complex64; 4]> = (0..rank)
        .map(|_| std::array::from_fn(|_| complex_gaussian(rng)))
        .collect();
    let m = Mat4::from_fn(|i, j| g.iter().map(|col| col[i] * col[j].conj()).sum());
    let tr = m.trace().re;
    validate(&m.scale(1.0 / tr)).expect("Gram matrices are states")
}

pub fn random_qubit_state(rng: &mut impl Rng) -> Mat2 {
    let rank = rng.gen_range(1..=2);
    let g: Vec<[Complex64; 2]> = (0..rank)
        .map(|_| std::array::from_fn(|_| complex_gaussian(rng)))
        .collect();
    let m = Mat2::from_fn(|i, j| g.iter().map(|col| col[i] * col[j].conj()).sum());
    let tr = m.trace().re;
    m.scale(1.0 / tr)
}

/// Haar-random SU(2) element from a uniformly random unit quaternion.
pub fn random_su2(rng: &mut impl Rng) -> Mat2 {
    let q: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / n);
    Mat2::from_fn(|i, j| match (i, j) {
        (0, 0) => Complex64::new(a, b),
        (0, 1) => Complex64::new(c, d),
        (1, 0) => Complex64::new(-c, d),
        _ => Complex64::new(a, -b),
    })
}

/// Closed-form spectrum of a 2×2 Hermitian matrix, descending.
pub fn eig2(m: &Mat2) -> [f64; 2] {
    let mean = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
    let half_gap = (0.5 * (m[(0, 0)].re - m[(1, 1)].re)).hypot(m[(0, 1)].norm());
    [mean + half_gap, mean - half_gap]
}

pub fn entropy2(m: &Mat2) -> f64 {
    eig2(m).iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum()
}

/// Unnormalized states of the unmeasured qubit after the outcomes `±n` on
/// the measured qubit, written out entry by entry.
fn post_measurement(rho: &Mat4, measured: Subsystem, theta: f64, phi: f64) -> [Mat2; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    let kets = [[Complex64::new(c, 0.0), e * s], [Complex64::new(-s, 0.0), e * c]];
    kets.map(|k| {
        Mat2::from_fn(|u, v| {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..2 {
                for n in 0..2 {
                    let (row, col) = match measured {
                        Subsystem::B => (2 * u + m, 2 * v + n),
                        Subsystem::A => (2 * m + u, 2 * n + v),
                    };
                    acc += k[m].conj() * rho[(row, col)] * k[n];
                }
            }
            acc
        })
    })
}

fn unmeasured_marginal(rho: &Mat4, measured: Subsystem) -> Mat2 {
    Mat2::from_fn(|u, v| match measured {
        Subsystem::B => rho[(2 * u, 2 * v)] + rho[(2 * u + 1, 2 * v + 1)],
        Subsystem::A => rho[(u, v)] + rho[(2 + u, 2 + v)],
    })
}

pub fn information_gain(rho: &Mat4, measured: Subsystem, theta: f64, phi: f64) -> f64 {
    let s0 = entropy2(&unmeasured_marginal(rho, measured));
    let conditional: f64 = post_measurement(rho, measured, theta, phi)
        .iter()
        .map(|m| {
            let p = m.trace().re;
            if p > 1e-14 {
                p * entropy2(&m.scale(1.0 / p))
            } else {
                0.0
            }
        })
        .sum();
    s0 - conditional
}

/// Classical correlation by exhaustive search over a
/// `n_theta × n_phi` angle grid (θ endpoints included, φ ∈ [0, 2π)).
pub fn grid_classical_correlation(rho: &DensityMatrix, measured: Subsystem, n_theta: usize, n_phi: usize) -> f64 {
    let m = rho.matrix();
    let mut best = f64::NEG_INFINITY;
    for i in 0..n_theta {
        let theta = PI * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            best = best.max(information_gain(m, measured, theta, phi));
        }
    }
    best
}

pub fn local_unitary(rho: &DensityMatrix, ua: &Mat2, ub: &Mat2) -> DensityMatrix {
    let u = qcorr_core::kron(ua, ub);
    let m = u * *rho.matrix() * u.adjoint();
    validate(&m.hermitian_part()).expect("unitary conjugation preserves states")
}
