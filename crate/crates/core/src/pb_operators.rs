//! Truncated oscillator operators on the `(s+1)`-dimensional number-state
//! space and the generator ladder obtained from their commutators.
//!
//! With indices `0..=s`:
//!
//! * `a[n-1][n] = sqrt(n)`, `a_dag = a^dagger`
//! * `A = [a, a_dag] = diag(1, ..., 1, -s)`
//!
//! For `s >= 2` the ladder is
//!
//! * `[a, A]      = (s+1) sqrt(s) M`,   `M = -E(s-1, s)`
//! * `[a_dag, A]  = -(s+1) sqrt(s) M_dag`
//! * `[M, M_dag]  = -K`,                `K = E(s, s) - E(s-1, s-1)`
//! * `[a, M]      = -sqrt(s-1) F`,      `F = E(s-2, s)`
//! * `[a_dag, M_dag] = sqrt(s-1) F_dag`
//!
//! Every derived matrix keeps the bracket and scalar it came from, so the
//! displayed identities can be checked entry by entry.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::linalg::{commutator, hs_inner, ComplexMatrix};
use crate::report::{RelationCheck, RelationReport, Scope};
use crate::scalar::Real;

/// Canonical generator names, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Annihilation,
    Creation,
    DeformedIdentity,
    M,
    MDag,
    K,
    F,
    FDag,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::Annihilation,
        Generator::Creation,
        Generator::DeformedIdentity,
        Generator::M,
        Generator::MDag,
        Generator::K,
        Generator::F,
        Generator::FDag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Annihilation => "a",
            Generator::Creation => "a_dag",
            Generator::DeformedIdentity => "A",
            Generator::M => "M",
            Generator::MDag => "M_dag",
            Generator::K => "K",
            Generator::F => "F",
            Generator::FDag => "F_dag",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == name)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `matrix = [left, right] / coefficient`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance<T> {
    pub left: Generator,
    pub right: Generator,
    pub coefficient: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedGenerator<T> {
    pub matrix: ComplexMatrix<T>,
    pub provenance: Provenance<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorFamily<T> {
    s: usize,
    pub a: ComplexMatrix<T>,
    pub a_dag: ComplexMatrix<T>,
    /// `A = [a, a_dag]`, the finite-dimensional stand-in for the identity.
    pub deformed_identity: ComplexMatrix<T>,
    pub derived: BTreeMap<Generator, DerivedGenerator<T>>,
}

impl<T: Real> OscillatorFamily<T> {
    /// Maximum occupation number.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.s + 1
    }

    pub fn get(&self, g: Generator) -> Option<&ComplexMatrix<T>> {
        match g {
            Generator::Annihilation => Some(&self.a),
            Generator::Creation => Some(&self.a_dag),
            Generator::DeformedIdentity => Some(&self.deformed_identity),
            other => self.derived.get(&other).map(|d| &d.matrix),
        }
    }

    fn require(&self, g: Generator) -> Result<&ComplexMatrix<T>> {
        self.get(g)
            .ok_or_else(|| domain(format!("generator {g} is not present at s = {}", self.s)))
    }

    /// All present generators in canonical order.
    pub fn generators(&self) -> impl Iterator<Item = (Generator, &ComplexMatrix<T>)> {
        Generator::ALL
            .into_iter()
            .filter_map(move |g| self.get(g).map(|m| (g, m)))
    }

    /// The seed triple `{a, a_dag, A}` the closure starts from.
    pub fn seeds(&self) -> Vec<ComplexMatrix<T>> {
        vec![self.a.clone(), self.a_dag.clone(), self.deformed_identity.clone()]
    }

    /// Number operator `a_dag a = diag(0, 1, ..., s)`.
    pub fn number_operator(&self) -> ComplexMatrix<T> {
        &self.a_dag * &self.a
    }
}

/// Builds `a`, `a_dag`, `A` at cutoff `s` and, for `s >= 2`, the ladder.
pub fn build_family<T: Real>(s: usize) -> Result<OscillatorFamily<T>> {
    let family = base_family(s)?;
    if s == 1 {
        Ok(family)
    } else {
        derive_ladder(family)
    }
}

fn base_family<T: Real>(s: usize) -> Result<OscillatorFamily<T>> {
    if s < 1 {
        return Err(domain("maximum occupation number s must be at least 1"));
    }
    let dim = s + 1;
    let real = |x: T| Complex::new(x, T::zero());
    let a = ComplexMatrix::from_fn(dim, |m, n| {
        if n >= 1 && m == n - 1 {
            real(T::from_usize_lossy(n).sqrt())
        } else {
            real(T::zero())
        }
    });
    let a_dag = ComplexMatrix::from_fn(dim, |m, n| {
        if m == n + 1 {
            real(T::from_usize_lossy(n + 1).sqrt())
        } else {
            real(T::zero())
        }
    });
    let mut diag = vec![T::one(); dim];
    // delta_mn - (s+1) delta_ms delta_ns
    diag[s] = T::one() - T::from_usize_lossy(s + 1);
    let deformed_identity = ComplexMatrix::real_diagonal(&diag);
    Ok(OscillatorFamily {
        s,
        a,
        a_dag,
        deformed_identity,
        derived: BTreeMap::new(),
    })
}

/// Populates `M, M_dag, K, F, F_dag` from nested commutators of the seeds.
pub fn derive_ladder<T: Real>(mut family: OscillatorFamily<T>) -> Result<OscillatorFamily<T>> {
    let s = family.s;
    if s == 1 {
        return Err(Error::LadderNotApplicable);
    }
    let sf = T::from_usize_lossy(s);
    let top = (sf + T::one()) * sf.sqrt();
    let lower = (sf - T::one()).sqrt();

    use Generator::*;
    let plan = [
        (M, Annihilation, DeformedIdentity, top),
        (MDag, Creation, DeformedIdentity, -top),
        (K, M, MDag, -T::one()),
        (F, Annihilation, M, -lower),
        (FDag, Creation, MDag, lower),
    ];
    for (target, left, right, coefficient) in plan {
        let bracket = commutator(family.require(left)?, family.require(right)?)?;
        let matrix = bracket.scale_real(T::one() / coefficient);
        family.derived.insert(
            target,
            DerivedGenerator {
                matrix,
                provenance: Provenance {
                    left,
                    right,
                    coefficient,
                },
            },
        );
    }
    Ok(family)
}

/// Least-squares coefficient `c` in `X ~ c Y` together with `max |X - cY|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservedCoefficient<T> {
    pub coefficient: T,
    pub residual: T,
}

fn fit<T: Real>(x: &ComplexMatrix<T>, y: &ComplexMatrix<T>) -> Result<ObservedCoefficient<T>> {
    let num = hs_inner(y, x)?;
    let den = hs_inner(y, y)?.re;
    let coefficient = num.re / den;
    let residual = (x - &y.scale_real(coefficient)).max_abs();
    Ok(ObservedCoefficient {
        coefficient,
        residual,
    })
}

#[derive(Debug, Clone)]
pub struct LadderReport<T> {
    pub s: usize,
    pub relations: RelationReport<T>,
    /// Coefficient of `K` in `[a_dag, M]`; equals `-sqrt(2)` at `s = 2`.
    pub a_dag_m: ObservedCoefficient<T>,
    /// Coefficient of `K` in `[a, M_dag]`; equals `sqrt(2)` at `s = 2`.
    pub a_m_dag: ObservedCoefficient<T>,
}

impl<T: Real> LadderReport<T> {
    pub fn all_pass(&self) -> bool {
        self.relations.all_pass()
    }
}

pub const LADDER_TOLERANCE: f64 = 1e-12;

/// Evaluates every ladder identity at the family's cutoff.
pub fn check_ladder_relations<T: Real>(family: &OscillatorFamily<T>) -> Result<LadderReport<T>> {
    use Generator::*;
    if family.derived.is_empty() {
        return Err(Error::LadderNotApplicable);
    }
    let g = |x| family.require(x);
    let sf = T::from_usize_lossy(family.s);
    let one = T::one();
    let top = (sf + one) * sf.sqrt();
    let lower = (sf - one).sqrt();
    let tol = T::lit(LADDER_TOLERANCE);

    // (name, left, right, coefficient, rhs)
    let mut table: Vec<(&str, Generator, Generator, T, Generator)> = vec![
        ("[a,A] = (s+1)sqrt(s) M", Annihilation, DeformedIdentity, top, M),
        ("[a_dag,A] = -(s+1)sqrt(s) M_dag", Creation, DeformedIdentity, -top, MDag),
        ("[M,M_dag] = -K", M, MDag, -one, K),
        ("[A,M] = (1+s) M", DeformedIdentity, M, sf + one, M),
        ("[A,M_dag] = -(1+s) M_dag", DeformedIdentity, MDag, -(sf + one), MDag),
        ("[a,M] = -sqrt(s-1) F", Annihilation, M, -lower, F),
        ("[a_dag,M_dag] = sqrt(s-1) F_dag", Creation, MDag, lower, FDag),
        ("[K,F] = -F", K, F, -one, F),
        ("[K,F_dag] = F_dag", K, FDag, one, FDag),
        ("[M,K] = 2M", M, K, T::lit(2.0), M),
        ("[M_dag,K] = -2M_dag", MDag, K, T::lit(-2.0), MDag),
    ];
    if family.s == 2 {
        let r2 = T::lit(2.0).sqrt();
        table.extend([
            ("[a_dag,M] = -sqrt(2) K", Creation, M, -r2, K),
            ("[a,M_dag] = sqrt(2) K", Annihilation, MDag, r2, K),
            ("[a_dag,M_dag] = F_dag", Creation, MDag, one, FDag),
            ("[a,M] = -F", Annihilation, M, -one, F),
        ]);
    }

    let mut relations = RelationReport::default();
    for (name, left, right, coefficient, rhs) in table {
        let lhs = commutator(g(left)?, g(right)?)?;
        let residual = (&lhs - &g(rhs)?.scale_real(coefficient)).max_abs();
        relations.push(RelationCheck::new(name, Scope::Full, residual, tol));
    }

    let a_dag_m = fit(&commutator(g(Creation)?, g(M)?)?, g(K)?)?;
    let a_m_dag = fit(&commutator(g(Annihilation)?, g(MDag)?)?, g(K)?)?;
    Ok(LadderReport {
        s: family.s,
        relations,
        a_dag_m,
        a_m_dag,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow<T> {
    pub s: usize,
    pub window: usize,
    /// `max |(A - I)| on the leading window x window block`
    pub identity_residual: T,
    /// `max |X|` over derived generators on the same block
    pub derived_residual: T,
}

/// Shows that on any fixed leading window `A` is the identity and the
/// derived generators vanish.
pub fn bosonic_limit_report<T: Real>(s_list: &[usize], window: usize) -> Result<Vec<LimitRow<T>>> {
    let min_s = s_list
        .iter()
        .copied()
        .min()
        .ok_or_else(|| domain("empty cutoff list"))?;
    if window == 0 || window >= min_s {
        return Err(domain(format!(
            "window {window} must satisfy 1 <= window < min(s) = {min_s}"
        )));
    }
    s_list
        .iter()
        .map(|&s| {
            let family = build_family::<T>(s)?;
            let id_block = family.deformed_identity.leading_block(window);
            let identity_residual = (&id_block - &ComplexMatrix::identity(window)).max_abs();
            let derived_residual = family
                .derived
                .values()
                .map(|d| d.matrix.leading_block(window).max_abs())
                .fold(T::zero(), T::max);
            Ok(LimitRow {
                s,
                window,
                identity_residual,
                derived_residual,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::anticommutator;

    type F64Family = OscillatorFamily<f64>;

    fn entry(m: &ComplexMatrix<f64>, r: usize, c: usize) -> f64 {
        assert_eq!(m[(r, c)].im, 0.0);
        m[(r, c)].re
    }

    /// Every nonzero (row, col, value) of a real matrix.
    fn support(m: &ComplexMatrix<f64>) -> Vec<(usize, usize, f64)> {
        let mut out = vec![];
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                if m[(r, c)].norm() > 1e-15 {
                    out.push((r, c, m[(r, c)].re));
                }
            }
        }
        out
    }

    #[test]
    fn s1_matches_two_level_matrices() {
        let f: F64Family = build_family(1).unwrap();
        assert_eq!(support(&f.a), vec![(0, 1, 1.0)]);
        assert_eq!(support(&f.a_dag), vec![(1, 0, 1.0)]);
        assert_eq!(support(&f.deformed_identity), vec![(0, 0, 1.0), (1, 1, -1.0)]);
        assert!(f.derived.is_empty());
        // a = (sigma1 + i sigma2)/2, A = sigma3, {a, a_dag} = I
        let mut sigma2 = ComplexMatrix::<f64>::zeros(2);
        sigma2[(0, 1)] = Complex::new(0.0, -1.0);
        sigma2[(1, 0)] = Complex::new(0.0, 1.0);
        let sigma1 = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let combo = (&sigma1 + &sigma2.times_i()).scale_real(0.5);
        assert!(combo.approx_eq(&f.a, 0.0));
        let ac = anticommutator(&f.a, &f.a_dag).unwrap();
        assert!(ac.approx_eq(&ComplexMatrix::identity(2), 0.0));
    }

    #[test]
    fn s2_matches_three_level_matrices() {
        let f: F64Family = build_family(2).unwrap();
        let r2 = 2f64.sqrt();
        assert_eq!(support(&f.a), vec![(0, 1, 1.0), (1, 2, r2)]);
        assert_eq!(support(&f.a_dag), vec![(1, 0, 1.0), (2, 1, r2)]);
        assert_eq!(
            support(&f.deformed_identity),
            vec![(0, 0, 1.0), (1, 1, 1.0), (2, 2, -2.0)]
        );
        assert_eq!(support(f.get(Generator::M).unwrap()), vec![(1, 2, -1.0)]);
        assert_eq!(support(f.get(Generator::K).unwrap()), vec![(1, 1, -1.0), (2, 2, 1.0)]);
        assert_eq!(support(f.get(Generator::F).unwrap()), vec![(0, 2, 1.0)]);
        assert_eq!(support(f.get(Generator::FDag).unwrap()), vec![(2, 0, 1.0)]);
        let prov = f.derived[&Generator::M].provenance;
        assert_eq!((prov.left, prov.right), (Generator::Annihilation, Generator::DeformedIdentity));
        assert!((prov.coefficient - 3.0 * r2).abs() < 1e-15);
    }

    #[test]
    fn s4_deformed_identity() {
        // delta_mn - 5 delta_m4 delta_n4
        let f: F64Family = build_family(4).unwrap();
        for i in 0..5 {
            let expected = if i == 4 { -4.0 } else { 1.0 };
            assert_eq!(entry(&f.deformed_identity, i, i), expected);
        }
    }

    #[test]
    fn s0_rejected() {
        assert!(matches!(build_family::<f64>(0), Err(Error::Domain(_))));
    }

    #[test]
    fn ladder_not_applicable_at_s1() {
        let f: F64Family = base_family(1).unwrap();
        assert_eq!(derive_ladder(f).unwrap_err(), Error::LadderNotApplicable);
    }

    #[test]
    fn s3_ladder_position_and_a_eigen_relation() {
        let f: F64Family = build_family(3).unwrap();
        let m = f.get(Generator::M).unwrap();
        assert_eq!(support(m), vec![(2, 3, -1.0)]);
        let c = commutator(&f.deformed_identity, m).unwrap();
        assert!(c.approx_eq(&m.scale_real(4.0), 1e-15));
    }

    #[test]
    fn structural_invariants_over_cutoffs() {
        for s in 1..=12 {
            let f: F64Family = build_family(s).unwrap();
            assert!(f.a_dag.approx_eq(&f.a.adjoint(), 0.0));
            let c = commutator(&f.a, &f.a_dag).unwrap();
            assert!(c.approx_eq(&f.deformed_identity, 1e-12), "s = {s}");
            for (g, m) in f.generators() {
                assert!(m.trace().norm() <= 1e-12, "{g} traceful at s = {s}");
            }
            if s >= 2 {
                for g in [Generator::M, Generator::F] {
                    let sup = support(f.get(g).unwrap());
                    assert_eq!(sup.len(), 1);
                    assert!(sup[0].0 < sup[0].1);
                }
                let k = f.get(Generator::K).unwrap();
                assert!(support(k).iter().all(|&(r, c, _)| r == c));
            }
        }
    }

    #[test]
    fn ladder_relations_hold_to_twelve() {
        for s in 2..=12 {
            let f: F64Family = build_family(s).unwrap();
            let rep = check_ladder_relations(&f).unwrap();
            for chk in &rep.relations.checks {
                assert!(chk.passed(), "s = {s}: {} residual {:e}", chk.name, chk.residual);
            }
        }
    }

    #[test]
    fn s2_specific_relations_present() {
        let rep = check_ladder_relations(&build_family::<f64>(2).unwrap()).unwrap();
        let kf = rep.relations.find("[K,F] = -F", Scope::Full).unwrap();
        assert!(kf.residual <= 1e-15);
        let amd = rep.relations.find("[a,M_dag] = sqrt(2) K", Scope::Full).unwrap();
        assert!(amd.residual <= 1e-15);
        assert!((rep.a_m_dag.coefficient - 2f64.sqrt()).abs() < 1e-14);
        assert!((rep.a_dag_m.coefficient + 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn s5_a_m_dag_relation() {
        let f: F64Family = build_family(5).unwrap();
        let lhs = commutator(&f.deformed_identity, f.get(Generator::MDag).unwrap()).unwrap();
        let rhs = f.get(Generator::MDag).unwrap().scale_real(-6.0);
        assert!((&lhs - &rhs).max_abs() == 0.0);
    }

    #[test]
    fn observed_side_coefficients_track_sqrt_s() {
        for s in 2..=9 {
            let rep = check_ladder_relations(&build_family::<f64>(s).unwrap()).unwrap();
            let r = (s as f64).sqrt();
            assert!((rep.a_m_dag.coefficient - r).abs() < 1e-13);
            assert!((rep.a_dag_m.coefficient + r).abs() < 1e-13);
            assert!(rep.a_m_dag.residual < 1e-13 && rep.a_dag_m.residual < 1e-13);
        }
    }

    #[test]
    fn bosonic_limit_windows() {
        let rows = bosonic_limit_report::<f64>(&[10, 50], 5).unwrap();
        assert!(rows.iter().all(|r| r.identity_residual == 0.0 && r.derived_residual == 0.0));
        let rows = bosonic_limit_report::<f64>(&[3], 2).unwrap();
        assert_eq!(rows[0].identity_residual, 0.0);
        assert_eq!(rows[0].derived_residual, 0.0);
        assert!(bosonic_limit_report::<f64>(&[4, 10], 4).is_err());
        assert!(bosonic_limit_report::<f64>(&[], 1).is_err());
    }

    #[test]
    fn limit_window_is_tight() {
        // Widening the window to s exposes K and the corner of A.
        let f: F64Family = build_family(6).unwrap();
        assert!(f.get(Generator::K).unwrap().leading_block(6).max_abs() > 0.5);
    }

    #[test]
    fn generator_names_round_trip() {
        for g in Generator::ALL {
            assert_eq!(Generator::from_name(g.name()), Some(g));
        }
        assert_eq!(Generator::from_name("N"), None);
    }

    #[test]
    fn single_precision_family() {
        let f: OscillatorFamily<f32> = build_family(3).unwrap();
        let c = commutator(&f.a, &f.a_dag).unwrap();
        assert!(c.approx_eq(&f.deformed_identity, 1e-5));
    }
}
