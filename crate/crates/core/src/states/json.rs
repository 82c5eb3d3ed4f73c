//! JSON density-matrix format: a 4×4 row-major nested array of `[re, im]`
//! pairs in the basis `|00>, |01>, |10>, |11>`.

use num_complex::Complex64;
use serde_json::Value;

use super::{validate, DensityMatrix};
use crate::error::{Error, Result};
use crate::qmat::Mat4;

/// Parses the matrix without checking physical invariants.
pub fn matrix_from_json(text: &str) -> Result<Mat4> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Format("top level must be an array of 4 rows".into()))?;
    if rows.len() != 4 {
        return Err(Error::Format(format!("expected 4 rows, found {}", rows.len())));
    }
    let mut m = Mat4::zeros();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Format(format!("row {i} is not an array")))?;
        if row.len() != 4 {
            return Err(Error::Format(format!("row {i} has {} entries, expected 4", row.len())));
        }
        for (j, entry) in row.iter().enumerate() {
            m[(i, j)] = parse_entry(entry).ok_or_else(|| {
                Error::Format(format!(
                    "entry [{i}][{j}] = {entry} is not a [re, im] pair of finite numbers"
                ))
            })?;
        }
    }
    Ok(m)
}

fn parse_entry(entry: &Value) -> Option<Complex64> {
    match entry.as_array()?.as_slice() {
        [re, im] => {
            let z = Complex64::new(re.as_f64()?, im.as_f64()?);
            (z.re.is_finite() && z.im.is_finite()).then_some(z)
        }
        _ => None,
    }
}

/// Parses and validates a density matrix.
pub fn density_matrix_from_json(text: &str) -> Result<DensityMatrix> {
    Ok(validate(&matrix_from_json(text)?)?)
}

pub fn density_matrix_to_json(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let rows: Vec<Vec<[f64; 2]>> = (0..4)
        .map(|i| (0..4).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    serde_json::to_string(&rows).expect("finite floats always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const BELL: &str = r#"[
        [[0.5, 0], [0, 0], [0, 0], [0.5, 0]],
        [[0, 0],   [0, 0], [0, 0], [0, 0]],
        [[0, 0],   [0, 0], [0, 0], [0, 0]],
        [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]
    ]"#;

    #[test]
    fn parses_bell_state() {
        let rho = density_matrix_from_json(BELL).unwrap();
        assert!(rho.matrix().max_abs_diff(DensityMatrix::bell_phi_plus().matrix()) < 1e-15);
    }

    #[test]
    fn round_trips() {
        let rho = DensityMatrix::bell_phi_plus();
        let back = density_matrix_from_json(&density_matrix_to_json(&rho)).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn names_offending_entry() {
        let text = BELL.replacen(
            "[0, 0],   [0, 0], [0, 0], [0, 0]]",
            "[0, 0],   [0, \"x\"], [0, 0], [0, 0]]",
            1,
        );
        let err = matrix_from_json(&text).unwrap_err().to_string();
        assert!(err.contains("entry [1][1]"), "{err}");

        let err = matrix_from_json("[[1]]").unwrap_err().to_string();
        assert!(err.contains("expected 4 rows"), "{err}");

        let err = matrix_from_json("not json").unwrap_err();
        assert!(matches!(err, Error::Format(_)));
    }

    #[test]
    fn physics_violation_is_not_a_format_error() {
        let text = BELL.replace(
            "[0.5, 0], [0, 0], [0, 0], [0.5, 0]]\n    ]",
            "[0.5, 0], [0, 0], [0, 0], [1.5, 0]]\n    ]",
        );
        assert!(matches!(density_matrix_from_json(&text), Err(Error::InvalidState(_))));
    }
}
