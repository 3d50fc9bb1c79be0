use num_complex::Complex;

use crate::error::{domain, Result};
use crate::linalg::ComplexMatrix;
use crate::pb_operators::{Generator, OscillatorFamily};
use crate::scalar::Real;

/// Attached to every s = 2 reconstruction: the eighth matrix is taken as
/// `A / sqrt(3)` because its source formula refers to itself.
pub const LAMBDA8_NOTE: &str =
    "lambda_8 = A/sqrt(3) = diag(1,1,-2)/sqrt(3)";

/// The eight Gell-Mann matrices written in terms of the s = 2 family.
pub fn gellmann_from_family<T: Real>(family: &OscillatorFamily<T>) -> Result<Vec<ComplexMatrix<T>>> {
    if family.s() != 2 {
        return Err(domain(format!(
            "Gell-Mann reconstruction needs s = 2, got s = {}",
            family.s()
        )));
    }
    let get = |g: Generator| {
        family
            .get(g)
            .ok_or_else(|| domain(format!("generator {g} missing from family")))
    };
    let a = get(Generator::Annihilation)?;
    let a_dag = get(Generator::Creation)?;
    let big_a = get(Generator::DeformedIdentity)?;
    let m = get(Generator::M)?;
    let m_dag = get(Generator::MDag)?;
    let k = get(Generator::K)?;
    let f = get(Generator::F)?;
    let f_dag = get(Generator::FDag)?;

    let r2 = T::lit(2.0).sqrt();
    let i = Complex::<T>::i();
    let m_sum = m + m_dag;
    let m_diff = m_dag - m;

    let l1 = &(a + a_dag) + &m_sum.scale_real(r2);
    let l2 = (&(a_dag - a) + &m_diff.scale_real(r2)).scale(i);
    let l3 = big_a + &k.scale_real(T::lit(2.0));
    let l4 = f + f_dag;
    let l5 = (f_dag - f).scale(i);
    let l6 = -&m_sum;
    let l7 = m_diff.scale(-i);
    let l8 = big_a.scale_real(T::one() / T::lit(3.0).sqrt());
    Ok(vec![l1, l2, l3, l4, l5, l6, l7, l8])
}

/// Standard generalized Gell-Mann basis of su(n), normalized `tr(L_a L_b) = 2 delta_ab`.
///
/// Ordered by growing column `k`: the symmetric and antisymmetric pair for
/// every `j < k`, then the diagonal matrix of level `k`. For `n = 3` this is
/// the usual `lambda_1 .. lambda_8` order, for `n = 2` the Pauli matrices.
pub fn generalized_gellmann<T: Real>(n: usize) -> Result<Vec<ComplexMatrix<T>>> {
    if n < 2 {
        return Err(domain(format!("generalized Gell-Mann basis needs n >= 2, got {n}")));
    }
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::<T>::i();
    let mut out = Vec::with_capacity(n * n - 1);
    for k in 1..n {
        for j in 0..k {
            let mut sym = ComplexMatrix::zeros(n);
            sym[(j, k)] = one;
            sym[(k, j)] = one;
            out.push(sym);
            let mut anti = ComplexMatrix::zeros(n);
            anti[(j, k)] = -i;
            anti[(k, j)] = i;
            out.push(anti);
        }
        let l = T::from_usize_lossy(k);
        let norm = (T::lit(2.0) / (l * (l + T::one()))).sqrt();
        let diag: Vec<T> = (0..n)
            .map(|idx| match idx.cmp(&k) {
                std::cmp::Ordering::Less => norm,
                std::cmp::Ordering::Equal => -l * norm,
                std::cmp::Ordering::Greater => T::zero(),
            })
            .collect();
        out.push(ComplexMatrix::real_diagonal(&diag));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hs_inner, Tolerance};
    use crate::lie_closure::{close_algebra, span_basis, DEFAULT_MAX_ROUNDS};
    use crate::pb_operators::build_family;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn gm() -> Vec<M> {
        gellmann_from_family(&build_family::<f64>(2).unwrap()).unwrap()
    }

    #[test]
    fn explicit_entries() {
        let l = gm();
        let l1 = M::from_real_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]).unwrap();
        assert!(l[0].approx_eq(&l1, 1e-15));
        assert!(l[2].approx_eq(&M::real_diagonal(&[1.0, -1.0, 0.0]), 1e-15));
        let l4 = M::from_real_rows(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]).unwrap();
        assert!(l[3].approx_eq(&l4, 1e-15));
        let s3 = 3f64.sqrt();
        assert!(l[7].approx_eq(&M::real_diagonal(&[1.0 / s3, 1.0 / s3, -2.0 / s3]), 1e-15));
    }

    #[test]
    fn matches_standard_gell_mann_in_order() {
        let reconstructed = gm();
        let standard = generalized_gellmann::<f64>(3).unwrap();
        for (a, b) in reconstructed.iter().zip(&standard) {
            assert!(a.approx_eq(b, 1e-15), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn orthogonality_and_hermiticity() {
        let l = gm();
        for (x, lx) in l.iter().enumerate() {
            assert!(lx.hermitian_defect() == 0.0);
            assert!(lx.trace().norm() <= 1e-15);
            for (y, ly) in l.iter().enumerate() {
                let expected = if x == y { 2.0 } else { 0.0 };
                assert!((hs_inner(lx, ly).unwrap() - c(expected, 0.0)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn wrong_cutoff_rejected() {
        assert!(gellmann_from_family(&build_family::<f64>(3).unwrap()).is_err());
        assert!(generalized_gellmann::<f64>(1).is_err());
    }

    #[test]
    fn pauli_for_n2() {
        let p = generalized_gellmann::<f64>(2).unwrap();
        let s1 = M::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let mut s2 = M::zeros(2);
        s2[(0, 1)] = c(0.0, -1.0);
        s2[(1, 0)] = c(0.0, 1.0);
        let s3 = M::real_diagonal(&[1.0, -1.0]);
        assert!(p[0].approx_eq(&s1, 0.0));
        assert!(p[1].approx_eq(&s2, 0.0));
        assert!(p[2].approx_eq(&s3, 1e-15));
    }

    #[test]
    fn n4_orthonormal_family() {
        let p = generalized_gellmann::<f64>(4).unwrap();
        assert_eq!(p.len(), 15);
        for (x, px) in p.iter().enumerate() {
            for (y, py) in p.iter().enumerate() {
                let expected = if x == y { 2.0 } else { 0.0 };
                assert!((hs_inner(px, py).unwrap() - c(expected, 0.0)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn reconstruction_lies_in_family_closure() {
        let f = build_family::<f64>(2).unwrap();
        let closure = close_algebra(&f.seeds(), &Tolerance::default(), DEFAULT_MAX_ROUNDS).unwrap();
        for l in gm() {
            assert!(closure.span_residual(&l).unwrap() <= 1e-8);
        }
        let from_family = span_basis(&gm(), &Tolerance::default()).unwrap();
        let standard = span_basis(&generalized_gellmann::<f64>(3).unwrap(), &Tolerance::default()).unwrap();
        assert_eq!(from_family.projection_rank(&standard).unwrap(), 8);
        assert!(from_family.mutual_projection_residual(&standard).unwrap() <= 1e-8);
    }
}
