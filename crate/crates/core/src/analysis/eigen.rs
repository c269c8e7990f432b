//! Cyclic Jacobi rotations for dense symmetric matrices.

use ndarray::Array2;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

fn check_symmetric(mat: &Array2<f64>) -> Result<()> {
    let (n, m) = mat.dim();
    if n != m {
        return Err(Error::DimensionMismatch { expected: n, found: m });
    }
    let scale = mat.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    for i in 0..n {
        for j in (i + 1)..n {
            if (mat[[i, j]] - mat[[j, i]]).abs() > 1e-9 * scale {
                return Err(Error::Asymmetric { i, j });
            }
        }
    }
    Ok(())
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn jacobi_eigenvalues(mat: &Array2<f64>) -> Result<Vec<f64>> {
    check_symmetric(mat)?;
    let n = mat.nrows();
    let mut a = mat.clone();
    // symmetrize away any sub-tolerance asymmetry
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a[[i, j]] + a[[j, i]]);
            a[[i, j]] = v;
            a[[j, i]] = v;
        }
    }
    let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let tol = 1e-12 * norm;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, p, q, c, s);
            }
        }
    }
    let mut eig: Vec<f64> = a.diag().to_vec();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn off_diagonal_norm(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[[i, j]] * a[[i, j]];
            }
        }
    }
    s.sqrt()
}

/// Apply the similarity `Jᵀ A J` for the rotation in the (p, q) plane that
/// annihilates `A[p][q]`.
fn rotate(a: &mut Array2<f64>, p: usize, q: usize, c: f64, s: f64) {
    let n = a.nrows();
    for k in 0..n {
        let akp = a[[k, p]];
        let akq = a[[k, q]];
        a[[k, p]] = c * akp - s * akq;
        a[[k, q]] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[[p, k]];
        let aqk = a[[q, k]];
        a[[p, k]] = c * apk - s * aqk;
        a[[q, k]] = s * apk + c * aqk;
    }
}

/// `(λ_min, λ_max)` of a symmetric matrix.
pub fn symmetric_eigen_extremes(mat: &Array2<f64>) -> Result<(f64, f64)> {
    if mat.nrows() == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let eig = jacobi_eigenvalues(mat)?;
    Ok((eig[0], eig[eig.len() - 1]))
}
