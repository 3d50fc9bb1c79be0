use num_complex::Complex;

use super::matrix::{check_dims, ComplexMatrix};
use crate::error::Result;
use crate::scalar::Real;

/// `[X, Y] = XY - YX`
pub fn commutator<T: Real>(x: &ComplexMatrix<T>, y: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    check_dims(x, y)?;
    let mut out = x.mul_unchecked(y);
    out -= &y.mul_unchecked(x);
    Ok(out)
}

/// `{X, Y} = XY + YX`
pub fn anticommutator<T: Real>(
    x: &ComplexMatrix<T>,
    y: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    check_dims(x, y)?;
    let mut out = x.mul_unchecked(y);
    out += &y.mul_unchecked(x);
    Ok(out)
}

/// Hilbert-Schmidt pairing `tr(X^dagger Y)`.
pub fn hs_inner<T: Real>(x: &ComplexMatrix<T>, y: &ComplexMatrix<T>) -> Result<Complex<T>> {
    check_dims(x, y)?;
    Ok(super::matrix::inner(x.as_slice(), y.as_slice()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tolerance;
    use proptest::prelude::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn lambda1() -> M {
        M::from_real_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]).unwrap()
    }

    fn lambda2() -> M {
        let mut m = M::zeros(3);
        m[(0, 1)] = c(0.0, -1.0);
        m[(1, 0)] = c(0.0, 1.0);
        m
    }

    #[test]
    fn commutator_of_two_level_ladder() {
        let a = M::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let c = commutator(&a, &a.adjoint()).unwrap();
        let expected = M::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        assert!(c.approx_eq(&expected, 0.0));
    }

    #[test]
    fn identity_commutes_with_everything() {
        let x = lambda2();
        assert_eq!(commutator(&M::identity(3), &x).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn three_level_ladder_against_a() {
        let r2 = 2f64.sqrt();
        let a = M::from_real_rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, r2], &[0.0, 0.0, 0.0]]).unwrap();
        let big_a = M::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, -2.0]]).unwrap();
        let c = commutator(&a, &big_a).unwrap();
        let mut expected = M::zeros(3);
        expected[(1, 2)] = Complex::new(-3.0 * r2, 0.0);
        assert!(c.approx_eq(&expected, 1e-15));
    }

    #[test]
    fn anticommutator_cases() {
        let a = M::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let ac = anticommutator(&a, &a.adjoint()).unwrap();
        assert!(ac.approx_eq(&M::identity(2), 0.0));
        assert_eq!(anticommutator(&M::zeros(2), &a).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn mismatched_dimensions_error() {
        assert!(commutator(&M::zeros(2), &M::zeros(3)).is_err());
        assert!(anticommutator(&M::zeros(2), &M::zeros(3)).is_err());
        assert!(hs_inner(&M::zeros(2), &M::zeros(3)).is_err());
    }

    #[test]
    fn hs_inner_gell_mann_values() {
        // tr(l1^dagger l1): l1 has two unit entries -> 2; l1 and l2 share support
        // but 1*(-i) + 1*(i) cancels -> 0.
        assert_eq!(hs_inner(&lambda1(), &lambda1()).unwrap(), c(2.0, 0.0));
        assert_eq!(hs_inner(&lambda1(), &lambda2()).unwrap(), c(0.0, 0.0));
        assert_eq!(hs_inner(&M::identity(4), &M::identity(4)).unwrap(), c(4.0, 0.0));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = M> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            let mut it = v.into_iter();
            M::from_fn(n, |_, _| {
                let (re, im) = it.next().unwrap();
                Complex::new(re, im)
            })
        })
    }

    fn triple() -> impl Strategy<Value = (M, M, M)> {
        (1usize..6).prop_flat_map(|n| (arb_matrix(n), arb_matrix(n), arb_matrix(n)))
    }

    proptest! {
        #[test]
        fn commutator_is_traceless((x, y, _z) in triple()) {
            let tol = Tolerance::<f64>::default();
            let t = commutator(&x, &y).unwrap().trace().norm();
            prop_assert!(t <= tol.abs_tol * x.dim() as f64);
        }

        #[test]
        fn jacobi_identity((x, y, z) in triple()) {
            let j1 = commutator(&x, &commutator(&y, &z).unwrap()).unwrap();
            let j2 = commutator(&y, &commutator(&z, &x).unwrap()).unwrap();
            let j3 = commutator(&z, &commutator(&x, &y).unwrap()).unwrap();
            let sum = &(&j1 + &j2) + &j3;
            let scale = x.max_abs() * y.max_abs() * z.max_abs();
            prop_assert!(sum.max_abs() <= 1e-10 * scale.max(1e-300));
        }

        #[test]
        fn hs_inner_conjugate_symmetric((x, y, _z) in triple()) {
            let xy = hs_inner(&x, &y).unwrap();
            let yx = hs_inner(&y, &x).unwrap();
            prop_assert!((xy - yx.conj()).norm() <= 1e-12);
        }
    }
}
