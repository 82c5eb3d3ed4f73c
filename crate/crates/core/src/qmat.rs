//! Small dense complex matrices for one- and two-qubit operators.
//!
//! Two-qubit operators use the computational basis `|00>, |01>, |10>, |11>`
//! with qubit A as the left tensor factor, so basis index `2 * a + b`
//! labels `|a b>`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `‖h − h†‖_HS` accepted by [`herm_eig`].
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix of compile-time dimension `N`.
#[derive(Clone, Copy, PartialEq)]
pub struct CMatrix<const N: usize> {
    entries: [[Complex64; N]; N],
}

/// Single-qubit operator.
pub type Mat2 = CMatrix<2>;
/// Two-qubit operator.
pub type Mat4 = CMatrix<4>;

/// Which half of a two-qubit system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
        })
    }
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Subsystem::A),
            "B" | "b" => Ok(Subsystem::B),
            other => Err(Error::InvalidArgument(format!(
                "unknown subsystem {other:?}, expected A or B"
            ))),
        }
    }
}

impl<const N: usize> CMatrix<N> {
    pub fn zeros() -> Self {
        Self {
            entries: [[ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = ONE;
        }
        m
    }

    /// Builds a matrix from its entries, rejecting NaN or infinite values.
    pub fn new(entries: [[Complex64; N]; N]) -> Result<Self> {
        for (i, row) in entries.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::InvalidArgument(format!("entry ({i}, {j}) is not finite: {z}")));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Builds a matrix from row vectors of arbitrary length, checking the shape.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.len() != N {
            return Err(Error::InvalidArgument(format!("expected {N} rows, got {}", rows.len())));
        }
        let mut entries = [[ZERO; N]; N];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != N {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {N}",
                    row.len()
                )));
            }
            entries[i].copy_from_slice(row);
        }
        Self::new(entries)
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_diag(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i][i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|v><v|`
    pub fn outer(v: &[Complex64; N]) -> Self {
        Self::from_fn(|i, j| v[i] * v[j].conj())
    }

    pub const fn dim(&self) -> usize {
        N
    }

    pub fn entries(&self) -> &[[Complex64; N]; N] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] * s)
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] * s)
    }

    /// `(self + self†) / 2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(|i, j| (self.entries[i][j] + self.entries[j][i].conj()) * 0.5)
    }

    /// Hilbert-Schmidt norm of the anti-Hermitian part, `‖m − m†‖_HS`.
    pub fn hermiticity_deviation(&self) -> f64 {
        hs_norm_sq(&(*self - self.adjoint())).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl<const N: usize> Default for CMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> fmt::Debug for CMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix<{N}> [")?;
        for row in &self.entries {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:>+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] + rhs.entries[i][j])
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] - rhs.entries[i][j])
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        <&Self as Mul>::mul(&self, &rhs)
    }
}

impl<const N: usize> Mul for &CMatrix<N> {
    type Output = CMatrix<N>;

    fn mul(self, rhs: Self) -> CMatrix<N> {
        let mut out = CMatrix::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

/// Pauli matrices `[σx, σy, σz]`.
pub fn pauli() -> [Mat2; 3] {
    let i = Complex64::new(0.0, 1.0);
    [
        Mat2 {
            entries: [[ZERO, ONE], [ONE, ZERO]],
        },
        Mat2 {
            entries: [[ZERO, -i], [i, ZERO]],
        },
        Mat2 {
            entries: [[ONE, ZERO], [ZERO, -ONE]],
        },
    ]
}

/// Kronecker product `a ⊗ b`, with `a` acting on qubit A.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Reduced operator on `keep`, tracing out the other qubit.
pub fn partial_trace(rho: &Mat4, keep: Subsystem) -> Mat2 {
    match keep {
        Subsystem::A => Mat2::from_fn(|a, a2| rho[(2 * a, 2 * a2)] + rho[(2 * a + 1, 2 * a2 + 1)]),
        Subsystem::B => Mat2::from_fn(|b, b2| rho[(b, b2)] + rho[(2 + b, 2 + b2)]),
    }
}

/// Transpose on the indices of `part` only.
pub fn partial_transpose(rho: &Mat4, part: Subsystem) -> Mat4 {
    Mat4::from_fn(|r, c| {
        let (a, b) = (r / 2, r % 2);
        let (a2, b2) = (c / 2, c % 2);
        match part {
            Subsystem::A => rho[(2 * a2 + b, 2 * a + b2)],
            Subsystem::B => rho[(2 * a + b2, 2 * a2 + b)],
        }
    })
}

/// `Tr(A† A)`, the squared Hilbert-Schmidt (Frobenius) norm.
pub fn hs_norm_sq<const N: usize>(a: &CMatrix<N>) -> f64 {
    a.entries.iter().flatten().map(|z| z.norm_sqr()).sum()
}

/// Spectrum of a Hermitian matrix.
#[derive(Debug, Clone, Copy)]
pub struct EigenResult<const N: usize> {
    /// Sorted descending.
    pub eigenvalues: [f64; N],
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: CMatrix<N>,
}

impl<const N: usize> EigenResult<N> {
    pub fn eigenvector(&self, k: usize) -> [Complex64; N] {
        std::array::from_fn(|i| self.eigenvectors[(i, k)])
    }

    /// `V Λ V†`
    pub fn reconstruct(&self) -> CMatrix<N> {
        let v = &self.eigenvectors;
        CMatrix::from_fn(|i, j| (0..N).map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)].conj()).sum())
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrized as `(h + h†)/2` first; inputs further than
/// [`HERMITIAN_TOL`] from Hermitian are rejected.
pub fn herm_eig<const N: usize>(h: &CMatrix<N>) -> Result<EigenResult<N>> {
    if !h.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let deviation = h.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(jacobi(h.hermitian_part()))
}

/// Eigenvalues (descending) of the Hermitian part of `h`, skipping the
/// Hermiticity check. For matrices that are Hermitian by construction.
pub(crate) fn eigvalsh<const N: usize>(h: &CMatrix<N>) -> [f64; N] {
    jacobi(h.hermitian_part()).eigenvalues
}

fn jacobi<const N: usize>(mut a: CMatrix<N>) -> EigenResult<N> {
    let mut v = CMatrix::<N>::identity();
    let tol = JACOBI_OFF_TOL * hs_norm_sq(&a).sqrt().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= tol {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    EigenResult {
        eigenvalues: std::array::from_fn(|k| a[(order[k], order[k])].re),
        eigenvectors: CMatrix::from_fn(|i, k| v[(i, order[k])]),
    }
}

fn off_diagonal_norm<const N: usize>(a: &CMatrix<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[(p, q)]` with the unitary `U = D P`, where `D` rotates the
/// phase of the pair onto the real axis and `P` is a real Givens rotation.
/// Updates `a ← U† a U` and `v ← v U`.
fn rotate<const N: usize>(a: &mut CMatrix<N>, v: &mut CMatrix<N>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = (apq / r).conj();
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    } else {
        0.0
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = phase * -s;
    let u_qq = phase * c;

    for k in 0..N {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
    for k in 0..N {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}
