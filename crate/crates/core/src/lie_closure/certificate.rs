use std::fmt;

use num_complex::Complex;

use super::{generalized_gellmann, LieBasis};
use crate::error::{Error, Result};
use crate::linalg::{matrix_exponential, ComplexMatrix, Tolerance};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuClause {
    /// (i) dimension equals `n^2 - 1`
    Dimension,
    /// (ii) every element is traceless
    Traceless,
    /// (iii) the Hermitian partners are Hermitian, traceless and span su(n)
    HermitianRecombination,
    /// (iv) `exp(iH)` is unitary with unit determinant
    GroupElements,
}

impl SuClause {
    pub const ALL: [SuClause; 4] = [
        SuClause::Dimension,
        SuClause::Traceless,
        SuClause::HermitianRecombination,
        SuClause::GroupElements,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SuClause::Dimension => "dimension (i)",
            SuClause::Traceless => "traceless (ii)",
            SuClause::HermitianRecombination => "hermitian_recombination (iii)",
            SuClause::GroupElements => "group_elements (iv)",
        }
    }
}

impl fmt::Display for SuClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClauseResult<T> {
    pub clause: SuClause,
    pub passed: bool,
    /// Worst observed violation; for the dimension clause `|dim - (n^2-1)|`.
    pub residual: T,
    pub tolerance: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuCertificate<T> {
    pub n: usize,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub clauses: Vec<ClauseResult<T>>,
}

impl<T: Real> SuCertificate<T> {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, which: SuClause) -> &ClauseResult<T> {
        self.clauses
            .iter()
            .find(|c| c.clause == which)
            .expect("every clause is evaluated")
    }

    pub fn failed_clauses(&self) -> Vec<SuClause> {
        self.clauses.iter().filter(|c| !c.passed).map(|c| c.clause).collect()
    }
}

/// Tolerances for the fine-grained structural checks: `1e-10` in double
/// precision, a few hundred ulps in single precision.
fn structural_tol<T: Real>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(100.0))
}

fn group_tol<T: Real>() -> T {
    T::default_rel_tol()
}

/// Unitarity and determinant defects of `U = exp(iH)`.
fn group_defects<T: Real>(h: &ComplexMatrix<T>) -> Result<(ComplexMatrix<T>, T, T)> {
    let u = matrix_exponential(&h.times_i())?;
    let n = h.dim();
    let unitarity = (&(&u.adjoint() * &u) - &ComplexMatrix::identity(n)).max_abs();
    let det = (u.determinant() - Complex::new(T::one(), T::zero())).norm();
    Ok((u, unitarity, det))
}

/// Evaluates every clause without short-circuiting.
pub fn inspect_su<T: Real>(basis: &LieBasis<T>) -> Result<SuCertificate<T>> {
    let n = basis.dim_space();
    let expected_dimension = n * n - 1;
    let dimension = basis.len();
    let fine = structural_tol::<T>();
    let span_tol = T::independence_threshold();
    let mut clauses = Vec::with_capacity(4);

    let dim_gap = T::from_usize_lossy(dimension.abs_diff(expected_dimension));
    clauses.push(ClauseResult {
        clause: SuClause::Dimension,
        passed: dimension == expected_dimension,
        residual: dim_gap,
        tolerance: T::zero(),
    });

    let trace = basis
        .elements()
        .iter()
        .map(|b| b.trace().norm())
        .fold(T::zero(), T::max);
    clauses.push(ClauseResult {
        clause: SuClause::Traceless,
        passed: trace <= fine,
        residual: trace,
        tolerance: fine,
    });

    let hermitian = basis.hermitian_elements();
    let mut recombination = T::zero();
    for h in &hermitian {
        recombination = recombination.max(h.hermitian_defect()).max(h.trace().norm());
    }
    let mut span = T::zero();
    if n >= 2 {
        for g in generalized_gellmann::<T>(n)? {
            span = span.max(basis.span_residual(&g)?);
        }
    }
    let recombination_ok = recombination <= fine && span <= span_tol && !hermitian.is_empty();
    clauses.push(ClauseResult {
        clause: SuClause::HermitianRecombination,
        passed: recombination_ok,
        residual: recombination.max(span),
        tolerance: span_tol,
    });

    // Each Hermitian partner, plus two fixed mixtures of all of them.
    let mut probes = hermitian.clone();
    if !hermitian.is_empty() {
        let count = T::from_usize_lossy(hermitian.len());
        let mut uniform = ComplexMatrix::zeros(n);
        let mut ramp = ComplexMatrix::zeros(n);
        for (j, h) in hermitian.iter().enumerate() {
            uniform += &h.scale_real(T::one() / count.sqrt());
            let w = T::from_usize_lossy(j + 1) / count;
            ramp += &h.scale_real(if j % 2 == 0 { w } else { -w } * T::lit(3.0));
        }
        probes.push(uniform);
        probes.push(ramp);
    }
    let mut group = T::zero();
    for h in &probes {
        let (_, unitarity, det) = group_defects(h)?;
        group = group.max(unitarity).max(det);
    }
    let gtol = group_tol::<T>();
    clauses.push(ClauseResult {
        clause: SuClause::GroupElements,
        passed: group <= gtol && !probes.is_empty(),
        residual: group,
        tolerance: gtol,
    });

    Ok(SuCertificate {
        n,
        dimension,
        expected_dimension,
        clauses,
    })
}

/// Certifies that the basis is su(n); the error names every failed clause.
pub fn certify_su<T: Real>(basis: &LieBasis<T>) -> Result<SuCertificate<T>> {
    let cert = inspect_su(basis)?;
    if cert.passed() {
        Ok(cert)
    } else {
        let clause = cert
            .failed_clauses()
            .iter()
            .map(|c| c.label())
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::CertificationFailure { clause })
    }
}

/// `U = exp(iG)` for Hermitian traceless `G`, checked special-unitary.
pub fn group_element<T: Real>(hermitian_combo: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let tol = Tolerance::<T>::default();
    let scale = hermitian_combo.max_abs();
    let defect = hermitian_combo.hermitian_defect();
    if defect > tol.bound(scale) {
        return Err(Error::Hermiticity {
            asymmetry: defect.as_f64(),
        });
    }
    let trace = hermitian_combo.trace().norm();
    if trace > tol.bound(scale) * T::from_usize_lossy(hermitian_combo.dim()) {
        return Err(Error::Trace {
            trace: trace.as_f64(),
        });
    }
    let (u, unitarity, det) = group_defects(hermitian_combo)?;
    let gtol = group_tol::<T>();
    if unitarity > gtol || det > gtol {
        return Err(Error::Numeric(format!(
            "group element defects exceed tolerance: unitarity {:e}, det {:e}",
            unitarity.as_f64(),
            det.as_f64()
        )));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_closure::{close_algebra, gellmann_from_family, DEFAULT_MAX_ROUNDS};
    use crate::pb_operators::build_family;

    type M = ComplexMatrix<f64>;

    fn family_closure(s: usize) -> LieBasis<f64> {
        let f = build_family::<f64>(s).unwrap();
        close_algebra(&f.seeds(), &Tolerance::default(), DEFAULT_MAX_ROUNDS).unwrap()
    }

    #[test]
    fn su2_and_su3_certify() {
        for (s, n, d) in [(1, 2, 3), (2, 3, 8)] {
            let cert = certify_su(&family_closure(s)).unwrap();
            assert_eq!((cert.n, cert.dimension), (n, d));
            assert!(cert.passed());
        }
    }

    #[test]
    fn traceful_diagonal_fails_trace_clause() {
        let b = close_algebra(&[M::real_diagonal(&[1.0, 2.0])], &Tolerance::default(), 4).unwrap();
        let cert = inspect_su(&b).unwrap();
        assert!(!cert.clause(SuClause::Traceless).passed);
        match certify_su(&b) {
            Err(Error::CertificationFailure { clause }) => assert!(clause.contains("(ii)")),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn proper_subalgebra_fails_dimension() {
        // su(2) embedded in 3x3 is closed but not su(3)
        let mut x = M::zeros(3);
        x[(0, 1)] = Complex::new(1.0, 0.0);
        let b = close_algebra(&[x.clone(), x.adjoint()], &Tolerance::default(), 8).unwrap();
        assert_eq!(b.len(), 3);
        let cert = inspect_su(&b).unwrap();
        assert_eq!(cert.failed_clauses(), vec![SuClause::Dimension, SuClause::HermitianRecombination]);
    }

    #[test]
    fn group_element_closed_forms() {
        let u = group_element(&M::zeros(3)).unwrap();
        assert!(u.approx_eq(&M::identity(3), 0.0));

        let l3 = M::real_diagonal(&[1.0, -1.0, 0.0]);
        let u = group_element(&l3).unwrap();
        let one = Complex::new(0.0, 1.0f64);
        let expected = M::diagonal(&[one.exp(), (-one).exp(), Complex::new(1.0, 0.0)]);
        assert!(u.approx_eq(&expected, 1e-14));

        let gm = gellmann_from_family(&build_family::<f64>(2).unwrap()).unwrap();
        let u = group_element(&gm[0]).unwrap();
        assert!((u.determinant() - Complex::new(1.0, 0.0)).norm() <= 1e-9);
    }

    #[test]
    fn group_element_rejects_bad_input() {
        let a = M::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(group_element(&a), Err(Error::Hermiticity { .. })));
        assert!(matches!(group_element(&M::identity(2)), Err(Error::Trace { .. })));
    }
}
