//! Dense symmetric eigenvalues by cyclic Jacobi rotations.
//!
//! Only small matrices arise here (mode-coupling networks of at most a few
//! hundred modes), where Jacobi gives high relative accuracy without pulling
//! in an external linear-algebra stack.

use crate::error::{Error, Result};

/// Number of full cyclic sweeps before giving up.
const MAX_SWEEPS: usize = 30;
/// Convergence: off-diagonal Frobenius norm below this times the initial
/// Frobenius norm of the whole matrix.
const OFF_DIAGONAL_REL: f64 = 1e-12;

/// A real symmetric matrix stored densely. Symmetry is exact by construction:
/// both constructors either verify bitwise-equal mirror entries or fill the
/// mirror themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds from full rows, verifying exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::domain("symmetric matrix must be nonempty"));
        }
        let mut data = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::domain(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::domain(format!("entry ({i},{j}) is not finite")));
                }
                data[i * n + j] = v;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::domain(format!(
                        "entries ({i},{j}) and ({j},{i}) differ: {} vs {}",
                        data[i * n + j],
                        data[j * n + i]
                    )));
                }
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    /// Builds from a generator evaluated once per unordered index pair, so
    /// the mirror entries are identical by construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("symmetric matrix must be nonempty"));
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                if !v.is_finite() {
                    return Err(Error::domain(format!("entry ({i},{j}) is not finite")));
                }
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(data: &[f64], n: usize) -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += data[i * n + j] * data[i * n + j];
                }
            }
        }
        s.sqrt()
    }
}

/// Eigenvalues of a symmetric matrix, ascending.
///
/// Cyclic-by-rows Jacobi; converges when the off-diagonal norm drops below
/// 1e-12 times the initial Frobenius norm, and errs after 30 sweeps.
pub fn symmetric_eigenvalues(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    if n == 1 {
        return Ok(vec![m.get(0, 0)]);
    }
    let mut a = m.data.clone();
    let threshold = OFF_DIAGONAL_REL * m.frobenius();

    for _ in 0..=MAX_SWEEPS {
        if SymmetricMatrix::off_diagonal_norm(&a, n) <= threshold {
            let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            eig.sort_by(|x, y| x.total_cmp(y));
            return Ok(eig);
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                // Smaller-magnitude root of t^2 + 2*theta*t - 1 = 0, written
                // to avoid cancellation for large |theta|.
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // A <- R^T A R with R the plane rotation in (p, q).
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                // The target entry is zero up to roundoff; pin it.
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }

    Err(Error::NoConvergence { what: "Jacobi sweep cap exceeded" })
}
