//! Completely positive maps built from Ginibre matrices, the map `Ψ`, and
//! Choi matrices.

use super::matrix::{ComplexMatrix, Factor};
use crate::error::{Error, Result};

/// `d` with `d² = cols`.
fn square_root_dim(cols: usize) -> Result<usize> {
    let d = (cols as f64).sqrt().round() as usize;
    if d * d != cols || d == 0 {
        return Err(Error::DimensionMismatch(format!(
            "{cols} columns is not a square d²"
        )));
    }
    Ok(d)
}

/// `Φ_G(X) = [Tr_d ⊗ id_d](S X S*)` with `S = G*: C^ℓ → C^d ⊗ C^d`, for a
/// `ℓ × d²` matrix `G` and `X ∈ M_ℓ`.
pub fn phi_ginibre(g: &ComplexMatrix, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let l = g.rows();
    let d = square_root_dim(g.cols())?;
    if x.rows() != l || x.cols() != l {
        return Err(Error::DimensionMismatch(format!(
            "Φ_G acts on {l}×{l} matrices, got {}×{}",
            x.rows(),
            x.cols()
        )));
    }
    let s = g.adjoint();
    let sxs = &(&s * x) * g;
    sxs.partial_trace(Factor::First, (d, d))
}

/// `Φ_G(E_ij)` for all `i, j < ℓ`, indexed `i * ℓ + j`.
///
/// With `R_i` the `d × d` reshaping of row `i` of `G` (row-major), the image
/// is `R_i* R_j`.
pub fn phi_ginibre_units(g: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
    let l = g.rows();
    let d = square_root_dim(g.cols())?;
    let rows: Vec<ComplexMatrix> = (0..l)
        .map(|i| ComplexMatrix::from_fn(d, d, |a, b| g[(i, a * d + b)]))
        .collect();
    let adj: Vec<ComplexMatrix> = rows.iter().map(ComplexMatrix::adjoint).collect();
    let mut out = Vec::with_capacity(l * l);
    for ai in &adj {
        for rj in &rows {
            out.push(ai * rj);
        }
    }
    Ok(out)
}

/// `Ψ(X) = X + Tr(X) I`.
pub fn psi(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("Ψ needs a square input".into()));
    }
    Ok(&ComplexMatrix::identity(x.rows()).scale(x.trace()) + x)
}

/// Choi matrix `Σ_ij E_ij ⊗ Φ(E_ij)` of a linear map on `M_ℓ`.
pub fn choi(
    l: usize,
    map: impl Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
) -> Result<ComplexMatrix> {
    let mut acc: Option<ComplexMatrix> = None;
    for i in 0..l {
        for j in 0..l {
            let e = ComplexMatrix::unit(l, i, j);
            let term = e.kron(&map(&e)?);
            match &mut acc {
                Some(a) => a.add_assign(&term),
                None => acc = Some(term),
            }
        }
    }
    acc.ok_or_else(|| Error::InvalidArgument("ℓ must be positive".into()))
}

/// `[Φ₁ ⊗ Φ₂](ω_ℓ) = Σ_ij Φ₁(E_ij) ⊗ Φ₂(E_ij)` from the images of the units.
pub fn tensor_on_omega(first: &[ComplexMatrix], second: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    if first.len() != second.len() || first.is_empty() {
        return Err(Error::DimensionMismatch("unit images must pair up".into()));
    }
    let mut acc = first[0].kron(&second[0]);
    for (a, b) in first.iter().zip(second).skip(1) {
        acc.add_assign(&a.kron(b));
    }
    Ok(acc)
}

/// `Ψ(E_ij)` for all `i, j < ℓ`, indexed `i * ℓ + j`.
pub fn psi_units(l: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(l * l);
    for i in 0..l {
        for j in 0..l {
            out.push(psi(&ComplexMatrix::unit(l, i, j)).expect("square"));
        }
    }
    out
}

/// `E_ij` for all `i, j < ℓ`, indexed `i * ℓ + j`.
pub fn units(l: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(l * l);
    for i in 0..l {
        for j in 0..l {
            out.push(ComplexMatrix::unit(l, i, j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::matrix::omega;
    use super::super::sampling::{sample_ginibre, sample_rng};
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn psi_small_cases() {
        let x = ComplexMatrix::from_vec(1, 1, vec![Complex64::new(3.0, 1.0)]).unwrap();
        assert_eq!(psi(&x).unwrap(), x.scale_real(2.0));
        let l = 3;
        let id = ComplexMatrix::identity(l);
        assert!(
            psi(&id)
                .unwrap()
                .max_abs_diff(&id.scale_real(1.0 + l as f64))
                < 1e-12
        );
    }

    #[test]
    fn choi_of_psi() {
        for l in 1..=4 {
            let c = choi(l, psi).unwrap();
            let expect = &omega(l) + &ComplexMatrix::identity(l * l);
            assert!(c.max_abs_diff(&expect) < 1e-12);
            assert!(c.is_psd());
        }
    }

    #[test]
    fn phi_units_match_literal_map() {
        let (l, d) = (2, 3);
        let g = sample_ginibre(l, d * d, &mut sample_rng(5, 0, 0));
        let fast = phi_ginibre_units(&g).unwrap();
        for i in 0..l {
            for j in 0..l {
                let lit = phi_ginibre(&g, &ComplexMatrix::unit(l, i, j)).unwrap();
                assert!(lit.max_abs_diff(&fast[i * l + j]) < 1e-12);
            }
        }
        let zero = phi_ginibre(&g, &ComplexMatrix::zeros(l, l)).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn phi_is_completely_positive() {
        let (l, d) = (2, 3);
        let g = sample_ginibre(l, d * d, &mut sample_rng(9, 0, 0));
        let c = choi(l, |x| phi_ginibre(&g, x)).unwrap();
        assert!(c.is_psd());
        let a = sample_ginibre(l, l, &mut sample_rng(9, 1, 0));
        let x = &a * &a.adjoint();
        let y = phi_ginibre(&g, &x).unwrap();
        assert!(y.is_psd());
        let tr = (&g * &g.adjoint()).trace_of_product(&x).unwrap();
        assert!((y.trace() - tr).norm() < 1e-9);
    }

    #[test]
    fn dimension_errors() {
        let g = ComplexMatrix::zeros(2, 5);
        assert!(phi_ginibre(&g, &ComplexMatrix::zeros(2, 2)).is_err());
        let g = ComplexMatrix::zeros(2, 4);
        assert!(phi_ginibre(&g, &ComplexMatrix::zeros(3, 3)).is_err());
    }
}
