//! Small dense-matrix helpers used by the Gaussian-state machinery.
//!
//! Covariance matrices here are tiny (2n x 2n with n rarely above 2), so a
//! cyclic Jacobi eigensolver is plenty and keeps the crate free of LAPACK
//! bindings.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Eigen-decomposition of a real symmetric matrix by the cyclic Jacobi
/// method. Returns `(eigenvalues, eigenvectors)` with eigenvectors in the
/// columns, `a = v * diag(w) * v^T`.
pub fn symmetric_eigen(a: &Array2<f64>) -> (Array1<f64>, Array2<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "symmetric_eigen needs a square matrix");
    let mut m = a.clone();
    let mut v = Array2::<f64>::eye(n);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[[p, q]] * m[[p, q]];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + frobenius(&m)) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = m[[p, p]];
                let aqq = m[[q, q]];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = c * mkp - s * mkq;
                    m[[k, q]] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = c * mpk - s * mqk;
                    m[[q, k]] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }

    let w = Array1::from_iter((0..n).map(|i| m[[i, i]]));
    (w, v)
}

fn frobenius(a: &Array2<f64>) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Principal square root of a symmetric positive-semidefinite matrix.
/// Eigenvalues slightly below zero (within `tol`) are clamped to zero.
pub fn symmetric_sqrt(a: &Array2<f64>, tol: f64) -> Result<Array2<f64>> {
    let (w, v) = symmetric_eigen(a);
    let n = a.nrows();
    let mut root = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        let wi = w[i];
        if wi < -tol {
            return Err(Error::invalid(format!(
                "matrix is not positive semidefinite (eigenvalue {wi:.3e})"
            )));
        }
        let s = wi.max(0.0).sqrt();
        for r in 0..n {
            for c in 0..n {
                root[[r, c]] += s * v[[r, i]] * v[[c, i]];
            }
        }
    }
    Ok(root)
}

/// Symplectic form for `n_modes` modes in X1,Y1,X2,Y2,... ordering:
/// a block-diagonal stack of [[0, 1], [-1, 0]].
pub fn symplectic_form(n_modes: usize) -> Array2<f64> {
    let dim = 2 * n_modes;
    let mut omega = Array2::<f64>::zeros((dim, dim));
    for m in 0..n_modes {
        omega[[2 * m, 2 * m + 1]] = 1.0;
        omega[[2 * m + 1, 2 * m]] = -1.0;
    }
    omega
}

/// Symplectic eigenvalues of a vacuum-normalized covariance matrix, sorted
/// in descending order. For a physical state every value is >= 1.
///
/// Uses the symmetric reduction nu_j = singular values of V^(1/2) Omega
/// V^(1/2), obtained from the eigenvalues of -(V^(1/2) Omega V^(1/2))^2.
pub fn symplectic_eigenvalues(cov: &Array2<f64>) -> Result<Vec<f64>> {
    let dim = cov.nrows();
    if dim % 2 != 0 || dim != cov.ncols() {
        return Err(Error::invalid("covariance matrix must be 2n x 2n"));
    }
    let n_modes = dim / 2;
    let root = symmetric_sqrt(cov, 1e-9)?;
    let omega = symplectic_form(n_modes);
    let s = root.dot(&omega).dot(&root);
    // -s^2 is symmetric PSD with each nu^2 doubled.
    let m = -s.dot(&s);
    let sym = 0.5 * (&m + &m.t());
    let (w, _) = symmetric_eigen(&sym);
    let mut nus: Vec<f64> = w.iter().map(|x| x.max(0.0).sqrt()).collect();
    nus.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(nus.into_iter().step_by(2).collect())
}
