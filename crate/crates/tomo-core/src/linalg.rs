//! Small dense complex linear algebra: 2x2 operators and 4x4 Choi matrices.
//!
//! Everything here is fixed-size and allocation-free apart from the Jacobi
//! eigensolver, which works on a copied buffer. Eigenvalues of 2x2 Hermitian
//! matrices use the closed form; larger Hermitian matrices use cyclic Jacobi
//! sweeps with complex rotations.

use num_complex::Complex64;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// 2x2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[C_ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2([[C_ONE, C_ZERO], [C_ZERO, C_ONE]])
    }

    pub fn from_rows(r0: [Complex64; 2], r1: [Complex64; 2]) -> Self {
        Mat2([r0, r1])
    }

    /// Matrix from real entries, convenience for tests and fixed operators.
    pub fn from_real(r: [[f64; 2]; 2]) -> Self {
        Mat2([
            [Complex64::new(r[0][0], 0.0), Complex64::new(r[0][1], 0.0)],
            [Complex64::new(r[1][0], 0.0), Complex64::new(r[1][1], 0.0)],
        ])
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + other.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - other.0[i][j];
            }
        }
        out
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C_ZERO;
                for k in 0..2 {
                    acc += self.0[i][k] * other.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] *= s;
            }
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Mat2 {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn adjoint(&self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        d
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    /// Eigenvalues of a Hermitian 2x2 matrix in ascending order (closed form).
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1];
        let mean = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - disc, mean + disc]
    }
}

/// 4x4 complex matrix, row major, flat storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat4(pub [Complex64; 16]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([C_ZERO; 16])
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[4 * i + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.0[4 * i + j] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.get(i, i)).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        d
    }

    /// Eigenvalues of a Hermitian 4x4 matrix in ascending order.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.0, 4)
    }
}

/// Eigenvalues of an n x n Hermitian matrix (row major) via cyclic Jacobi
/// sweeps with complex plane rotations. Ascending order.
pub fn hermitian_eigenvalues(data: &[Complex64], n: usize) -> Vec<f64> {
    assert_eq!(data.len(), n * n);
    let mut a: Vec<Complex64> = data.to_vec();

    let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = 1e-15 * norm.max(1.0);

    for _sweep in 0..60 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let abs = apq.norm();
                if abs <= tol {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Rotation angle zeroing the (p, q) element; the phase of
                // a_pq folds into the complex sine.
                let theta = 0.5 * (2.0 * abs).atan2(app - aqq);
                let c = theta.cos();
                let s = theta.sin();
                let phase = apq.conj() / abs;
                let sigma = phase * s;

                // Column update: col_p' = c col_p + sigma col_q,
                //                col_q' = -conj(sigma) col_p + c col_q.
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * sigma;
                    a[k * n + q] = akp * (-sigma.conj()) + akq * c;
                }
                // Row update with the adjoint rotation.
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * sigma.conj();
                    a[q * n + k] = apk * (-sigma) + aqk * c;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mat2_closed_form_eigenvalues() {
        let m = Mat2::from_real([[2.0, 0.0], [0.0, -1.0]]);
        assert_eq!(m.hermitian_eigenvalues(), [-1.0, 2.0]);

        // Pauli x has eigenvalues -1, 1.
        let sx = Mat2::from_real([[0.0, 1.0], [1.0, 0.0]]);
        let ev = sx.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-15);
        assert!((ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_matches_closed_form_on_embedded_2x2() {
        // Hermitian matrix with a complex off-diagonal entry.
        let m2 = Mat2([[c(1.3, 0.0), c(0.4, -0.7)], [c(0.4, 0.7), c(-0.2, 0.0)]]);
        let expect = m2.hermitian_eigenvalues();
        let flat = [m2.0[0][0], m2.0[0][1], m2.0[1][0], m2.0[1][1]];
        let got = hermitian_eigenvalues(&flat, 2);
        assert!((got[0] - expect[0]).abs() < 1e-13);
        assert!((got[1] - expect[1]).abs() < 1e-13);
    }

    #[test]
    fn jacobi_moment_identities_4x4() {
        // Spectrum is pinned by power-sum identities tr(A^k) = sum lambda^k,
        // computed straight from the matrix as an independent oracle.
        let mut m = Mat4::zero();
        let entries = [
            [c(1.0, 0.0), c(0.3, 0.2), c(-0.1, 0.5), c(0.0, -0.4)],
            [c(0.3, -0.2), c(-0.7, 0.0), c(0.2, 0.1), c(0.6, 0.0)],
            [c(-0.1, -0.5), c(0.2, -0.1), c(0.4, 0.0), c(-0.3, 0.3)],
            [c(0.0, 0.4), c(0.6, 0.0), c(-0.3, -0.3), c(2.1, 0.0)],
        ];
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, entries[i][j]);
            }
        }
        assert!(m.hermiticity_defect() < 1e-15);

        let mul = |x: &Mat4, y: &Mat4| -> Mat4 {
            let mut out = Mat4::zero();
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = C_ZERO;
                    for k in 0..4 {
                        acc += x.get(i, k) * y.get(k, j);
                    }
                    out.set(i, j, acc);
                }
            }
            out
        };
        let m2 = mul(&m, &m);
        let m3 = mul(&m2, &m);
        let m4 = mul(&m3, &m);

        let ev = m.hermitian_eigenvalues();
        let p = |k: u32| ev.iter().map(|l| l.powi(k as i32)).sum::<f64>();
        assert!((p(1) - m.trace().re).abs() < 1e-12);
        assert!((p(2) - m2.trace().re).abs() < 1e-12);
        assert!((p(3) - m3.trace().re).abs() < 1e-11);
        assert!((p(4) - m4.trace().re).abs() < 1e-11);
        // Ascending order.
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn jacobi_diagonal_is_exact() {
        let mut m = Mat4::zero();
        for (i, v) in [0.5, -0.25, 2.0, 0.0].iter().enumerate() {
            m.set(i, i, c(*v, 0.0));
        }
        let ev = m.hermitian_eigenvalues();
        assert_eq!(ev, vec![-0.25, 0.0, 0.5, 2.0]);
    }
}
