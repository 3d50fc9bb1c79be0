//! Phase states and the Hermitian phase operator on the `(s+1)`-dimensional
//! number-state space.
//!
//! `|theta> = (s+1)^(-1/2) sum_n exp(i n theta) |n>`; the `s+1` states on the
//! grid `theta_m = theta0 + 2 pi m / (s+1)` are orthonormal and complete, and
//! the phase operator is `sum_m theta_m |theta_m><theta_m|`.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::linalg::{commutator, inner, ComplexMatrix};
use crate::scalar::Real;

/// Probabilities below this are reported as exactly zero.
pub const PROBABILITY_FLOOR: f64 = 1e-15;

/// Normalization slack accepted by [`phase_distribution`].
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct PhaseBasis<T> {
    s: usize,
    theta0: T,
    thetas: Vec<T>,
    /// Column `m` is `|theta_m>`.
    states: ComplexMatrix<T>,
    phase_op: ComplexMatrix<T>,
}

impl<T: Real> PhaseBasis<T> {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn theta0(&self) -> T {
        self.theta0
    }

    pub fn thetas(&self) -> &[T] {
        &self.thetas
    }

    pub fn states(&self) -> &ComplexMatrix<T> {
        &self.states
    }

    pub fn phase_op(&self) -> &ComplexMatrix<T> {
        &self.phase_op
    }

    /// `sum_m |theta_m><theta_m|`
    pub fn resolution_of_identity(&self) -> ComplexMatrix<T> {
        &self.states * &self.states.adjoint()
    }
}

/// Components `(s+1)^(-1/2) exp(i n theta)` for `n = 0..=s`.
pub fn phase_state<T: Real>(s: usize, theta: T) -> Vec<Complex<T>> {
    let amp = T::one() / T::from_usize_lossy(s + 1).sqrt();
    (0..=s)
        .map(|n| Complex::from_polar(amp, T::from_usize_lossy(n) * theta))
        .collect()
}

pub fn build_phase_basis<T: Real>(s: usize, theta0: T) -> Result<PhaseBasis<T>> {
    if s < 1 {
        return Err(domain("maximum occupation number s must be at least 1"));
    }
    if !theta0.is_finite() {
        return Err(domain("reference phase must be finite"));
    }
    let dim = s + 1;
    let step = T::TAU() / T::from_usize_lossy(dim);
    let thetas: Vec<T> = (0..dim).map(|m| theta0 + step * T::from_usize_lossy(m)).collect();
    let amp = T::one() / T::from_usize_lossy(dim).sqrt();
    // exp(i n theta_m) = exp(i n theta0) exp(2 pi i (n m mod dim) / dim); reducing
    // n m keeps the grid phases exact for large s.
    let states = ComplexMatrix::from_fn(dim, |n, m| {
        let nf = T::from_usize_lossy(n);
        let grid = step * T::from_usize_lossy((n * m) % dim);
        Complex::from_polar(amp, nf * theta0 + grid)
    });
    let weights: Vec<T> = thetas.clone();
    let phase_op = &(&states * &ComplexMatrix::real_diagonal(&weights)) * &states.adjoint();
    // exact Hermitian symmetrization of the product
    let phase_op = phase_op.hermitian_part();
    Ok(PhaseBasis {
        s,
        theta0,
        thetas,
        states,
        phase_op,
    })
}

/// `[phase_op, N]` with `N = diag(0, ..., s)`.
pub fn number_phase_commutator<T: Real>(basis: &PhaseBasis<T>) -> ComplexMatrix<T> {
    let n: Vec<T> = (0..=basis.s).map(T::from_usize_lossy).collect();
    commutator(&basis.phase_op, &ComplexMatrix::real_diagonal(&n))
        .expect("phase operator and number operator share the dimension")
}

/// `p_m = |<theta_m|state>|^2`, with values below [`PROBABILITY_FLOOR`] set to 0.
pub fn phase_distribution<T: Real>(state: &[Complex<T>], basis: &PhaseBasis<T>) -> Result<Vec<T>> {
    let dim = basis.s + 1;
    if state.len() != dim {
        return Err(Error::Dimension {
            left: dim,
            right: state.len(),
        });
    }
    let norm = inner(state, state).re.sqrt();
    if !norm.is_finite() || (norm - T::one()).abs() > T::lit(NORMALIZATION_TOL).max(T::default_rel_tol()) {
        return Err(Error::Normalization { norm: norm.as_f64() });
    }
    let floor = T::lit(PROBABILITY_FLOOR);
    Ok((0..dim)
        .map(|m| {
            let p = inner(&basis.states.column(m), state).norm_sqr();
            if p < floor {
                T::zero()
            } else {
                p
            }
        })
        .collect())
}

/// Number state `|n>` of the `(s+1)`-dimensional space.
pub fn number_state<T: Real>(s: usize, n: usize) -> Result<Vec<Complex<T>>> {
    if n > s {
        return Err(domain(format!("number state |{n}> outside 0..={s}")));
    }
    let mut v = vec![Complex::new(T::zero(), T::zero()); s + 1];
    v[n] = Complex::new(T::one(), T::zero());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigensystem, matrix_exponential};
    use std::f64::consts::PI;

    type M = ComplexMatrix<f64>;

    #[test]
    fn phase_state_values() {
        let v = phase_state::<f64>(1, 0.0);
        let h = 1.0 / 2f64.sqrt();
        assert!(v.iter().all(|z| (z - Complex::new(h, 0.0)).norm() < 1e-15));

        let v = phase_state::<f64>(2, 2.0 * PI / 3.0);
        let r = 1.0 / 3f64.sqrt();
        let w = Complex::from_polar(1.0, 2.0 * PI / 3.0);
        for (n, z) in v.iter().enumerate() {
            assert!((z - w.powu(n as u32) * r).norm() < 1e-15);
        }
        for s in [1usize, 4, 9] {
            for theta in [0.0, 0.3, -2.0] {
                for z in phase_state::<f64>(s, theta) {
                    assert!((z.norm_sqr() - 1.0 / (s + 1) as f64).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn two_level_basis_is_dft() {
        let b = build_phase_basis::<f64>(1, 0.0).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let expected = M::from_real_rows(&[&[h, h], &[h, -h]]).unwrap();
        assert!(b.states().approx_eq(&expected, 1e-15));
        let es = hermitian_eigensystem(b.phase_op()).unwrap();
        assert!(es.values[0].abs() < 1e-14 && (es.values[1] - PI).abs() < 1e-14);
    }

    #[test]
    fn grid_is_uniform_and_offset() {
        let b = build_phase_basis::<f64>(2, PI).unwrap();
        let expected = [PI, PI + 2.0 * PI / 3.0, PI + 4.0 * PI / 3.0];
        for (t, e) in b.thetas().iter().zip(expected) {
            assert!((t - e).abs() < 1e-15);
        }
    }

    #[test]
    fn gram_matrix_by_geometric_sum() {
        // sum_n exp(2 pi i n (m - m') / (s+1)) = (s+1) delta_mm'
        let s = 3;
        let b = build_phase_basis::<f64>(s, 0.0).unwrap();
        let gram = &b.states().adjoint() * b.states();
        let oracle = M::from_fn(s + 1, |m, mp| {
            let sum: Complex<f64> = (0..=s)
                .map(|n| Complex::from_polar(1.0, 2.0 * PI * (n as f64) * (mp as f64 - m as f64) / 4.0))
                .sum();
            sum / 4.0
        });
        assert!(gram.approx_eq(&M::identity(s + 1), 1e-12));
        assert!(gram.approx_eq(&oracle, 1e-12));
    }

    #[test]
    fn completeness_and_spectrum_up_to_64() {
        for s in [1usize, 2, 5, 16, 33, 64] {
            for theta0 in [0.0, 0.7, -3.1] {
                let b = build_phase_basis::<f64>(s, theta0).unwrap();
                assert!(b.resolution_of_identity().approx_eq(&M::identity(s + 1), 1e-10));
                assert!(b.phase_op().hermitian_defect() <= 1e-12);
                let es = hermitian_eigensystem(b.phase_op()).unwrap();
                let mut grid = b.thetas().to_vec();
                grid.sort_by(|x, y| x.partial_cmp(y).unwrap());
                for (e, g) in es.values.iter().zip(&grid) {
                    assert!((e - g).abs() <= 1e-9, "s = {s}: {e} vs {g}");
                }
            }
        }
    }

    #[test]
    fn commutator_structure() {
        for s in [1usize, 3, 6] {
            let b = build_phase_basis::<f64>(s, 0.2).unwrap();
            let c = number_phase_commutator(&b);
            for n in 0..=s {
                assert_eq!(c[(n, n)].norm(), 0.0);
            }
            assert!((&c + &c.adjoint()).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn two_level_commutator_against_dense_product() {
        let b = build_phase_basis::<f64>(1, 0.0).unwrap();
        // phase_op = 0 |+><+| + pi |-><-| = (pi/2) [[1, -1], [-1, 1]]
        let phi = M::from_real_rows(&[&[PI / 2.0, -PI / 2.0], &[-PI / 2.0, PI / 2.0]]).unwrap();
        assert!(b.phase_op().approx_eq(&phi, 1e-15));
        let n = M::real_diagonal(&[0.0, 1.0]);
        let oracle = &(&phi * &n) - &(&n * &phi);
        let c = number_phase_commutator(&b);
        assert!(c.approx_eq(&oracle, 1e-15));
        assert!((c[(0, 1)].re + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn vacuum_and_number_states_have_random_phase() {
        for s in [1usize, 7, 20] {
            let b = build_phase_basis::<f64>(s, 0.4).unwrap();
            for n in 0..=s {
                let p = phase_distribution(&number_state(s, n).unwrap(), &b).unwrap();
                for pm in p {
                    assert!((pm - 1.0 / (s + 1) as f64).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn phase_state_distribution_is_sharp() {
        let b = build_phase_basis::<f64>(4, 0.0).unwrap();
        let p = phase_distribution(&b.states().column(2), &b).unwrap();
        for (m, pm) in p.iter().enumerate() {
            let expected = if m == 2 { 1.0 } else { 0.0 };
            assert!((pm - expected).abs() < 1e-12);
        }
        assert!(p.iter().enumerate().all(|(m, &x)| m == 2 || x == 0.0));
    }

    #[test]
    fn superposition_on_two_levels() {
        let b = build_phase_basis::<f64>(1, 0.0).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let psi = vec![Complex::new(h, 0.0), Complex::new(h, 0.0)];
        let p = phase_distribution(&psi, &b).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-15 && p[1] == 0.0);
    }

    #[test]
    fn unnormalized_and_wrong_length_rejected() {
        let b = build_phase_basis::<f64>(2, 0.0).unwrap();
        let psi = vec![Complex::new(1.0, 0.0); 3];
        assert!(matches!(phase_distribution(&psi, &b), Err(Error::Normalization { .. })));
        assert!(matches!(phase_distribution(&psi[..2], &b), Err(Error::Dimension { .. })));
        assert!(build_phase_basis::<f64>(0, 0.0).is_err());
    }

    #[test]
    fn exponentiated_phase_is_unitary() {
        for s in [1usize, 8, 32, 64] {
            let b = build_phase_basis::<f64>(s, 0.0).unwrap();
            let u = matrix_exponential(&b.phase_op().times_i()).unwrap();
            assert!((&u.adjoint() * &u).approx_eq(&M::identity(s + 1), 1e-9));
        }
    }
}
