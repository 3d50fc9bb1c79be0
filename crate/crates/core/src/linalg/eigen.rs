//! Cyclic complex Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot entry with a diagonal
//! unitary, then applies a real Givens rotation that annihilates it. Sweeps
//! stop once the off-diagonal Frobenius mass drops below machine precision
//! relative to the whole matrix.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::{ComplexMatrix, Tolerance};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigensystem<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> Eigensystem<T> {
    /// `V diag(values) V^dagger`
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let lam = ComplexMatrix::real_diagonal(&self.values);
        &(&self.vectors * &lam) * &self.vectors.adjoint()
    }
}

pub fn hermitian_eigensystem<T: Real>(x: &ComplexMatrix<T>) -> Result<Eigensystem<T>> {
    hermitian_eigensystem_with(x, &Tolerance::default())
}

pub fn hermitian_eigensystem_with<T: Real>(
    x: &ComplexMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<Eigensystem<T>> {
    let defect = x.hermitian_defect();
    if defect > tol.bound(x.max_abs()) {
        return Err(Error::Hermiticity {
            asymmetry: defect.as_f64(),
        });
    }
    if !x.is_finite() {
        return Err(Error::Numeric("non-finite entry in eigenproblem".into()));
    }

    let n = x.dim();
    let mut a = x.hermitian_part();
    let mut v = ComplexMatrix::<T>::identity(n);
    let total = a.frobenius();
    let target = T::epsilon() * total;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if off_diagonal_norm(&a) > T::lit(1e3) * target.max(T::min_positive_value()) {
        return Err(Error::Numeric("Jacobi sweeps did not converge".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values: Vec<T> = order.iter().map(|&i| a[(i, i)].re).collect();

    let phase_floor = T::lit(1e-10);
    let mut vectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        let col = v.column(src);
        // First component that is clearly nonzero is rotated onto the positive real axis.
        let lead = col
            .iter()
            .find(|z| z.norm() > phase_floor)
            .copied()
            .unwrap_or_else(Complex::one);
        let fix = lead.conj() / lead.norm();
        for (r, z) in col.iter().enumerate() {
            vectors[(r, dst)] = *z * fix;
        }
    }
    Ok(Eigensystem { values, vectors })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut acc = T::zero();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag.is_zero() {
        return;
    }
    let n = a.dim();
    let phase = apq / mag; // e^{i phi}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (T::lit(2.0) * mag);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // G = diag(1, e^{-i phi}) R on the (p, q) plane:
    //   G_pp = c, G_pq = s, G_qp = -s e^{-i phi}, G_qq = c e^{-i phi}
    let g_pp = Complex::new(c, T::zero());
    let g_pq = Complex::new(s, T::zero());
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    // A <- A G (columns p, q)
    for r in 0..n {
        let xp = a[(r, p)];
        let xq = a[(r, q)];
        a[(r, p)] = xp * g_pp + xq * g_qp;
        a[(r, q)] = xp * g_pq + xq * g_qq;
    }
    // A <- G^dagger A (rows p, q)
    for col in 0..n {
        let xp = a[(p, col)];
        let xq = a[(q, col)];
        a[(p, col)] = g_pp.conj() * xp + g_qp.conj() * xq;
        a[(q, col)] = g_pq.conj() * xp + g_qq.conj() * xq;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());

    for r in 0..n {
        let xp = v[(r, p)];
        let xq = v[(r, q)];
        v[(r, p)] = xp * g_pp + xq * g_qp;
        v[(r, q)] = xp * g_pq + xq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = ComplexMatrix<f64>;

    fn check_decomposition(x: &M) {
        let es = hermitian_eigensystem(x).unwrap();
        let scale = x.max_abs().max(1.0);
        for w in es.values.windows(2) {
            assert!(w[0] <= w[1]);
        }
        for i in 0..x.dim() {
            let col = es.vectors.column(i);
            let xv = x.apply(&col).unwrap();
            for (a, b) in xv.iter().zip(&col) {
                assert!((*a - *b * es.values[i]).norm() <= 1e-9 * scale);
            }
        }
        let gram = &es.vectors.adjoint() * &es.vectors;
        assert!(gram.approx_eq(&M::identity(x.dim()), 1e-9));
        assert!(es.reconstruct().approx_eq(x, 1e-8 * scale));
    }

    #[test]
    fn diagonal_input_sorted() {
        let x = M::real_diagonal(&[1.0, 1.0, -2.0]);
        let es = hermitian_eigensystem(&x).unwrap();
        assert_eq!(es.values, vec![-2.0, 1.0, 1.0]);
    }

    #[test]
    fn zero_matrix_spectrum() {
        let es = hermitian_eigensystem(&M::zeros(4)).unwrap();
        assert!(es.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn non_hermitian_rejected_with_asymmetry() {
        let x = M::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        match hermitian_eigensystem(&x) {
            Err(Error::Hermiticity { asymmetry }) => assert_eq!(asymmetry, 1.0),
            other => panic!("expected HermiticityError, got {other:?}"),
        }
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let mut x = M::identity(2);
        x[(0, 1)] = Complex::new(0.0, 1.0);
        x[(1, 0)] = Complex::new(0.0, -1.0);
        let es = hermitian_eigensystem(&x).unwrap();
        assert!((es.values[0]).abs() < 1e-14 && (es.values[1] - 2.0).abs() < 1e-14);
        check_decomposition(&x);
        // phase convention
        for i in 0..2 {
            let lead = es.vectors.column(i).into_iter().find(|z| z.norm() > 1e-10).unwrap();
            assert!(lead.im.abs() < 1e-14 && lead.re > 0.0);
        }
    }

    fn arb_hermitian() -> impl Strategy<Value = M> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
                let mut it = v.into_iter();
                M::from_fn(n, |_, _| {
                    let (re, im) = it.next().unwrap();
                    Complex::new(re, im)
                })
                .hermitian_part()
            })
        })
    }

    proptest! {
        #[test]
        fn reconstructs_random_hermitian(x in arb_hermitian()) {
            check_decomposition(&x);
        }
    }
}
