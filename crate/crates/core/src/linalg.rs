//! Small dense Hermitian eigenvalue and linear-solve kernels.
//!
//! The matrices that arise here are modest (sections of kernels on a few
//! dozen points, Gram matrices up to a few hundred rows, anchor Grams with a
//! handful of entries), so a cyclic Jacobi sweep and a partial-pivot LU are
//! all that is needed. Hermitian eigenvalues are computed through the real
//! symmetric embedding `[[X, -Y], [Y, X]]` of `A = X + iY`, whose spectrum is
//! that of `A` with every eigenvalue doubled in multiplicity.

use num_complex::Complex64;

/// Eigenvalues of a Hermitian matrix given by rows, ascending.
///
/// The input is symmetrized (averaged with its conjugate transpose) before
/// the solve, so tiny Hermiticity defects from accumulated roundoff are
/// tolerated.
pub fn hermitian_eigenvalues(rows: &[Vec<Complex64>]) -> Vec<f64> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    // real symmetric embedding, hermitized
    let m = 2 * n;
    let mut a = vec![0.0f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let h = 0.5 * (rows[i][j] + rows[j][i].conj());
            a[i * m + j] = h.re;
            a[(i + n) * m + (j + n)] = h.re;
            a[i * m + (j + n)] = -h.im;
            a[(i + n) * m + j] = h.im;
        }
    }
    let mut eig = jacobi_symmetric(&mut a, m);
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // embedding doubles every eigenvalue; keep one copy of each pair
    eig.into_iter().step_by(2).collect()
}

/// Cyclic Jacobi on a real symmetric matrix stored row-major; returns the
/// diagonal after convergence.
fn jacobi_symmetric(a: &mut [f64], n: usize) -> Vec<f64> {
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tol = 1e-15 * frob.max(1e-300);
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
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
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// LU decomposition with partial pivoting of a square complex matrix.
pub struct Lu {
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    n: usize,
    singular: bool,
}

impl Lu {
    pub fn new(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        let mut lu: Vec<Complex64> = rows.iter().flatten().copied().collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut singular = false;
        for k in 0..n {
            let (mut pivot_row, mut pivot_mag) = (k, lu[k * n + k].norm());
            for i in (k + 1)..n {
                let m = lu[i * n + k].norm();
                if m > pivot_mag {
                    pivot_row = i;
                    pivot_mag = m;
                }
            }
            if pivot_mag == 0.0 {
                singular = true;
                continue;
            }
            if pivot_row != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot_row * n + j);
                }
                perm.swap(k, pivot_row);
            }
            let piv = lu[k * n + k];
            for i in (k + 1)..n {
                let f = lu[i * n + k] / piv;
                lu[i * n + k] = f;
                for j in (k + 1)..n {
                    let sub = f * lu[k * n + j];
                    lu[i * n + j] -= sub;
                }
            }
        }
        Lu {
            lu,
            perm,
            n,
            singular,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn solve(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        if self.singular {
            return None;
        }
        let n = self.n;
        let mut y = vec![Complex64::ZERO; n];
        for i in 0..n {
            let mut acc = b[self.perm[i]];
            for j in 0..i {
                acc -= self.lu[i * n + j] * y[j];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * y[j];
            }
            y[i] = acc / self.lu[i * n + i];
        }
        Some(y)
    }

    /// Explicit inverse, column by column.
    pub fn inverse(&self) -> Option<Vec<Vec<Complex64>>> {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Complex64::ZERO; n];
            e[j] = Complex64::ONE;
            cols.push(self.solve(&e)?);
        }
        let mut inv = vec![vec![Complex64::ZERO; n]; n];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                inv[i][j] = col[i];
            }
        }
        Some(inv)
    }
}

/// Infinity-norm condition number `||A|| ||A^-1||`; infinite when singular.
pub fn condition_inf(rows: &[Vec<Complex64>]) -> f64 {
    let lu = Lu::new(rows);
    let Some(inv) = lu.inverse() else {
        return f64::INFINITY;
    };
    norm_inf(rows) * norm_inf(&inv)
}

fn norm_inf(rows: &[Vec<Complex64>]) -> f64 {
    rows.iter()
        .map(|r| r.iter().map(|c| c.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let rows = vec![
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ];
        let e = hermitian_eigenvalues(&rows);
        assert_abs_diff_eq!(e[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenvalues_of_pauli_like_matrix() {
        // [[0, -i], [i, 0]] has eigenvalues -1 and 1
        let rows = vec![
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ];
        let e = hermitian_eigenvalues(&rows);
        assert_abs_diff_eq!(e[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenvalues_of_rank_one_projector() {
        // v v^H for unit v has eigenvalues (0, ..., 0, 1)
        let v = [c(0.5, 0.5), c(0.5, -0.5)];
        let rows: Vec<Vec<Complex64>> = (0..2)
            .map(|i| (0..2).map(|j| v[i] * v[j].conj()).collect())
            .collect();
        let e = hermitian_eigenvalues(&rows);
        assert_abs_diff_eq!(e[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn lu_solves_small_system() {
        let a = vec![
            vec![c(2.0, 1.0), c(1.0, 0.0)],
            vec![c(0.0, -1.0), c(3.0, 0.0)],
        ];
        let x_true = [c(1.0, -2.0), c(0.5, 0.25)];
        let b: Vec<Complex64> = (0..2)
            .map(|i| a[i][0] * x_true[0] + a[i][1] * x_true[1])
            .collect();
        let x = Lu::new(&a).solve(&b).unwrap();
        for i in 0..2 {
            assert!((x[i] - x_true[i]).norm() < 1e-13);
        }
    }

    #[test]
    fn singular_matrix_detected() {
        let a = vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ];
        let lu = Lu::new(&a);
        assert!(lu.is_singular());
        assert_eq!(condition_inf(&a), f64::INFINITY);
    }

    proptest! {
        #[test]
        fn gram_style_matrices_are_psd_and_trace_matches(
            vs in proptest::collection::vec(
                proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3),
                1..6,
            )
        ) {
            // A = V V^H is PSD with trace = sum of squared row norms
            let vecs: Vec<Vec<Complex64>> = vs
                .iter()
                .map(|r| r.iter().map(|&(re, im)| c(re, im)).collect())
                .collect();
            let n = vecs.len();
            let rows: Vec<Vec<Complex64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            vecs[i]
                                .iter()
                                .zip(&vecs[j])
                                .map(|(a, b)| a * b.conj())
                                .sum()
                        })
                        .collect()
                })
                .collect();
            let eig = hermitian_eigenvalues(&rows);
            let trace: f64 = (0..n).map(|i| rows[i][i].re).sum();
            prop_assert!(eig.iter().all(|&l| l >= -1e-9 * trace.max(1.0)));
            let sum: f64 = eig.iter().sum();
            prop_assert!((sum - trace).abs() < 1e-9 * trace.abs().max(1.0));
        }

        #[test]
        fn lu_inverse_roundtrip(
            entries in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 9),
        ) {
            let rows: Vec<Vec<Complex64>> = (0..3)
                .map(|i| (0..3).map(|j| c(entries[3 * i + j].0, entries[3 * i + j].1)).collect())
                .collect();
            let lu = Lu::new(&rows);
            if let Some(inv) = lu.inverse() {
                if condition_inf(&rows) < 1e8 {
                    for i in 0..3 {
                        for j in 0..3 {
                            let p: Complex64 =
                                (0..3).map(|k| rows[i][k] * inv[k][j]).sum();
                            let expect = if i == j { Complex64::ONE } else { Complex64::ZERO };
                            prop_assert!((p - expect).norm() < 1e-7);
                        }
                    }
                }
            }
        }
    }
}
