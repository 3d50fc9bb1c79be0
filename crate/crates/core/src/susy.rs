//! Supersymmetric block sector built on a truncated oscillator.
//!
//! Operators act on `C^2 (x) C^D` laid out as two `D x D` blocks: the top block
//! is the excited atomic level (`sigma_z = +1`), the bottom block the ground
//! level, and `sigma_+` maps bottom to top.
//!
//! * `Q      = a^k sigma_+ / sqrt(k!)`        (top-right block)
//! * `Q_dag  = (a_dag)^k sigma_- / sqrt(k!)`  (bottom-left block)
//! * `N      = a_dag a + (k-1)/2 sigma_z + 1/2`
//! * `N'     = diag(a^k a_dag^k, a_dag^k a^k) / k!`
//!
//! On the truncated space `a a_dag = a_dag a + 1` fails only at the top
//! number state, so the relations that lean on it are checked under the
//! two-sided projection onto the first `W = D - k` states of each block.
//! Relations that follow from the block structure alone are checked on the
//! full space as well.
//!
//! With `k = 0` the construction would degenerate to the plain two-level
//! (fermionic) case; it is excluded here and `k >= 1` is required throughout.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::linalg::{anticommutator, commutator, ComplexMatrix};
use crate::pb_operators::build_family;
use crate::report::{RelationCheck, RelationReport, Scope};
use crate::scalar::Real;

pub const SUSY_TOLERANCE: f64 = 1e-10;
pub const CELL_TOLERANCE: f64 = 1e-12;

/// Default per-block dimension for reports at photon multiplicity `k`.
pub fn default_block_dim(k: usize) -> usize {
    4 * k + 8
}

#[derive(Debug, Clone)]
pub struct SusyRep<T> {
    k: usize,
    d: usize,
    window: usize,
    pub n_op: ComplexMatrix<T>,
    pub nprime: ComplexMatrix<T>,
    pub q: ComplexMatrix<T>,
    pub q_dag: ComplexMatrix<T>,
    pub sigma_z: ComplexMatrix<T>,
    pub projector: ComplexMatrix<T>,
    /// `a^k` on one block, kept for the Hamiltonian assemblies.
    a_pow: ComplexMatrix<T>,
    number: ComplexMatrix<T>,
}

impl<T: Real> SusyRep<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Per-block truncation dimension `D`.
    pub fn block_dim(&self) -> usize {
        self.d
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Same operators with a narrower boundary-safe window.
    pub fn with_window(mut self, window: usize) -> Result<Self> {
        if window > self.d - self.k {
            return Err(domain(format!(
                "window {window} exceeds D - k = {}",
                self.d - self.k
            )));
        }
        self.window = window;
        self.projector = window_projector(self.d, window);
        Ok(self)
    }

    /// `P X P`
    pub fn windowed(&self, x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        &(&self.projector * x) * &self.projector
    }

    /// Index of `|n>` in the top block.
    pub fn top(&self, n: usize) -> usize {
        n
    }

    /// Index of `|n>` in the bottom block.
    pub fn bottom(&self, n: usize) -> usize {
        self.d + n
    }
}

fn window_projector<T: Real>(d: usize, window: usize) -> ComplexMatrix<T> {
    let diag: Vec<T> = (0..2 * d)
        .map(|i| if i % d < window { T::one() } else { T::zero() })
        .collect();
    ComplexMatrix::real_diagonal(&diag)
}

fn factorial<T: Real>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * T::from_usize_lossy(i))
}

pub fn build_susy_rep<T: Real>(k: usize, d: usize) -> Result<SusyRep<T>> {
    if k < 1 {
        return Err(domain("photon multiplicity k must be at least 1"));
    }
    if d <= k {
        return Err(domain(format!("block dimension D = {d} must exceed k = {k}")));
    }
    let family = build_family::<T>(d - 1)?;
    let a_pow = family.a.pow(k as u32);
    let a_dag_pow = family.a_dag.pow(k as u32);
    let k_fact = factorial::<T>(k);
    let number = family.number_operator();
    let ident = ComplexMatrix::<T>::identity(d);
    let zero = ComplexMatrix::<T>::zeros(d);
    let half_k = T::from_usize_lossy(k) / T::lit(2.0);

    let n_top = &number + &ident.scale_real(half_k);
    let n_bottom = &number + &ident.scale_real(T::one() - half_k);
    let n_op = ComplexMatrix::from_blocks(&n_top, &zero, &zero, &n_bottom)?;

    let np_top = (&a_pow * &a_dag_pow).scale_real(T::one() / k_fact);
    let np_bottom = (&a_dag_pow * &a_pow).scale_real(T::one() / k_fact);
    let nprime = ComplexMatrix::from_blocks(&np_top, &zero, &zero, &np_bottom)?;

    let q_block = a_pow.scale_real(T::one() / k_fact.sqrt());
    let q = ComplexMatrix::from_blocks(&zero, &q_block, &zero, &zero)?;
    let q_dag = q.adjoint();
    let sigma_z = ComplexMatrix::from_blocks(&ident, &zero, &zero, &-&ident)?;

    let window = d - k;
    Ok(SusyRep {
        k,
        d,
        window,
        n_op,
        nprime,
        q,
        q_dag,
        sigma_z,
        projector: window_projector(d, window),
        a_pow,
        number,
    })
}

/// Checks every relation of the supersymmetric algebra.
pub fn verify_susy_algebra<T: Real>(rep: &SusyRep<T>) -> Result<RelationReport<T>> {
    let tol = T::lit(SUSY_TOLERANCE);
    let (q, qd, np, n, sz) = (&rep.q, &rep.q_dag, &rep.nprime, &rep.n_op, &rep.sigma_z);
    let two = T::lit(2.0);
    let zero = ComplexMatrix::<T>::zeros(2 * rep.d);

    // (name, lhs - rhs, structural)
    let relations: Vec<(&str, ComplexMatrix<T>, bool)> = vec![
        ("Q^2 = 0", q * q, true),
        ("(Q_dag)^2 = 0", qd * qd, true),
        ("[Q,Q_dag] = N' sigma_z", &commutator(q, qd)? - &(np * sz), false),
        ("[N,N'] = 0", commutator(n, np)?, false),
        ("[N,Q] = -Q", &commutator(n, q)? + q, false),
        ("[N,Q_dag] = Q_dag", &commutator(n, qd)? - qd, false),
        ("{Q,Q_dag} = N'", &anticommutator(q, qd)? - np, false),
        ("{Q,sigma_z} = 0", anticommutator(q, sz)?, true),
        ("{Q_dag,sigma_z} = 0", anticommutator(qd, sz)?, true),
        ("[Q,sigma_z] = -2Q", &commutator(q, sz)? + &q.scale_real(two), true),
        ("[Q_dag,sigma_z] = 2Q_dag", &commutator(qd, sz)? - &qd.scale_real(two), true),
        ("(Q_dag - Q)^2 = -N'", &{ let d = qd - q; &d * &d } + np, false),
    ];

    let mut report = RelationReport::default();
    for (name, diff, structural) in relations {
        let nilpotent = name.ends_with("^2 = 0");
        let full_tol = if nilpotent { T::zero() } else { tol };
        report.push(RelationCheck::new(name, Scope::Window, rep.windowed(&diff).max_abs(), tol));
        if structural {
            report.push(RelationCheck::new(
                name,
                Scope::Full,
                diff.max_abs_diff(&zero)?,
                full_tol,
            ));
        }
    }
    Ok(report)
}

/// Parameters of the multiphoton two-level Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcParams<T> {
    omega: T,
    omega0: T,
    g: Complex<T>,
    k: usize,
}

impl<T: Real> JcParams<T> {
    pub fn new(omega: T, omega0: T, g: Complex<T>, k: usize) -> Result<Self> {
        if !(omega.is_finite() && omega > T::zero()) {
            return Err(domain("mode frequency omega must be positive and finite"));
        }
        if !omega0.is_finite() || !g.re.is_finite() || !g.im.is_finite() {
            return Err(domain("omega0 and g must be finite"));
        }
        if k < 1 {
            return Err(domain("photon multiplicity k must be at least 1"));
        }
        Ok(Self { omega, omega0, g, k })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn omega0(&self) -> T {
        self.omega0
    }

    pub fn g(&self) -> Complex<T> {
        self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Detuning `k omega - omega0`.
    pub fn delta(&self) -> T {
        T::from_usize_lossy(self.k) * self.omega - self.omega0
    }
}

/// `H = omega a_dag a + (omega0/2) sigma_z + g a_dag^k sigma_- + conj(g) a^k sigma_+`
pub fn jc_hamiltonian_direct<T: Real>(p: &JcParams<T>, d: usize) -> Result<ComplexMatrix<T>> {
    if d <= p.k {
        return Err(domain(format!("block dimension D = {d} must exceed k = {}", p.k)));
    }
    let family = build_family::<T>(d - 1)?;
    let a_pow = family.a.pow(p.k as u32);
    let a_dag_pow = family.a_dag.pow(p.k as u32);
    let number = family.number_operator();
    let ident = ComplexMatrix::<T>::identity(d);
    let half_w0 = p.omega0 / T::lit(2.0);

    let top = &number.scale_real(p.omega) + &ident.scale_real(half_w0);
    let bottom = &number.scale_real(p.omega) - &ident.scale_real(half_w0);
    let upper = a_pow.scale(p.g.conj());
    let lower = a_dag_pow.scale(p.g);
    let h = ComplexMatrix::from_blocks(&top, &upper, &lower, &bottom)?;
    let defect = h.hermitian_defect();
    if defect > T::default_abs_tol() * T::one().max(h.max_abs()) {
        return Err(Error::Hermiticity {
            asymmetry: defect.as_f64(),
        });
    }
    Ok(h)
}

/// `H = omega N + ((omega - delta)/2) sigma_z + g' Q_dag + conj(g') Q - omega/2`
/// with `g' = sqrt(k!) g`, the coupling of the normalized supercharges that
/// reproduces [`jc_hamiltonian_direct`] with coupling `g`.
pub fn jc_hamiltonian_susy_form<T: Real>(p: &JcParams<T>, rep: &SusyRep<T>) -> Result<ComplexMatrix<T>> {
    if rep.k != p.k {
        return Err(domain(format!(
            "parameter k = {} does not match representation k = {}",
            p.k, rep.k
        )));
    }
    let g = p.g * factorial::<T>(p.k).sqrt();
    let dim = 2 * rep.d;
    let mut h = rep.n_op.scale_real(p.omega);
    h += &rep.sigma_z.scale_real((p.omega - p.delta()) / T::lit(2.0));
    h += &rep.q_dag.scale(g);
    h += &rep.q.scale(g.conj());
    h -= &ComplexMatrix::identity(dim).scale_real(p.omega / T::lit(2.0));
    Ok(h)
}

/// `binomial(n, k)` in exact integer arithmetic; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Sub-space label `(m, k)` with its occupation number `C = (m+k)!/(m! k!)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiAlgebraCell {
    m: usize,
    k: usize,
    c: u128,
}

impl QuasiAlgebraCell {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(domain("photon multiplicity k must be at least 1"));
        }
        let c = binomial((m + k) as u64, k as u64)
            .ok_or_else(|| domain(format!("binomial({}, {k}) overflows", m + k)))?;
        Ok(Self { m, k, c })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Occupation number `C^m_{m+k}`.
    pub fn occupation(&self) -> u128 {
        self.c
    }

    fn occupation_as<T: Real>(&self) -> T {
        T::from_u128(self.c).unwrap_or_else(T::infinity)
    }
}

fn check_safe_window(k: usize, m: usize, d: usize) -> Result<()> {
    // m + k <= D - 1 - k
    if m + 2 * k + 1 > d {
        return Err(domain(format!(
            "pair (|{m}>, |{}>) is outside the doubly safe window of D = {d} (needs D >= {})",
            m + k,
            m + 2 * k + 1
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct NprimeCheck<T> {
    pub k: usize,
    pub m: usize,
    pub expected: u128,
    /// `<m|N'|m>` on the top block
    pub top_eigenvalue: T,
    /// `<m+k|N'|m+k>` on the bottom block
    pub bottom_eigenvalue: T,
    /// `max |N' v - C v|` over both embedded vectors
    pub residual: T,
    pub tolerance: T,
}

impl<T: Real> NprimeCheck<T> {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Verifies that `|m>` (top) and `|m+k>` (bottom) are eigenvectors of `N'`
/// with eigenvalue `C^m_{m+k}`.
pub fn nprime_eigen_check<T: Real>(k: usize, m: usize, d: usize) -> Result<NprimeCheck<T>> {
    let cell = QuasiAlgebraCell::new(m, k)?;
    check_safe_window(k, m, d)?;
    let rep = build_susy_rep::<T>(k, d)?;
    let c = cell.occupation_as::<T>();
    let mut residual = T::zero();
    let mut eig = [T::zero(); 2];
    for (slot, idx) in [rep.top(m), rep.bottom(m + k)].into_iter().enumerate() {
        let mut v = vec![Complex::zero(); 2 * d];
        v[idx] = Complex::new(T::one(), T::zero());
        let image = rep.nprime.apply(&v)?;
        eig[slot] = image[idx].re;
        for (w, x) in image.iter().zip(&v) {
            residual = residual.max((*w - *x * c).norm());
        }
    }
    Ok(NprimeCheck {
        k,
        m,
        expected: cell.c,
        top_eigenvalue: eig[0],
        bottom_eigenvalue: eig[1],
        residual,
        tolerance: T::lit(CELL_TOLERANCE),
    })
}

/// Operators compressed onto `span{|m> top, |m+k> bottom}`.
#[derive(Debug, Clone)]
pub struct RestrictedCell<T> {
    pub cell: QuasiAlgebraCell,
    pub q: ComplexMatrix<T>,
    pub q_dag: ComplexMatrix<T>,
    pub sigma_z: ComplexMatrix<T>,
    /// Weight of `Q`, `Q_dag` images outside the two-dimensional subspace.
    pub leakage: T,
}

impl<T: Real> RestrictedCell<T> {
    pub fn new(cell: QuasiAlgebraCell, d: usize) -> Result<Self> {
        check_safe_window(cell.k, cell.m, d)?;
        let rep = build_susy_rep::<T>(cell.k, d)?;
        let mut e1 = vec![Complex::zero(); 2 * d];
        e1[rep.top(cell.m)] = Complex::new(T::one(), T::zero());
        let mut e2 = vec![Complex::zero(); 2 * d];
        e2[rep.bottom(cell.m + cell.k)] = Complex::new(T::one(), T::zero());
        let basis = vec![e1, e2];

        let mut leakage = T::zero();
        for op in [&rep.q, &rep.q_dag, &rep.sigma_z] {
            for v in &basis {
                let mut image = op.apply(v)?;
                for b in &basis {
                    let idx = b.iter().position(|z| !z.is_zero()).expect("unit vector");
                    image[idx] = Complex::zero();
                }
                leakage = image.iter().fold(leakage, |acc, z| acc.max(z.norm()));
            }
        }
        Ok(Self {
            cell,
            q: rep.q.compress(&basis)?,
            q_dag: rep.q_dag.compress(&basis)?,
            sigma_z: rep.sigma_z.compress(&basis)?,
            leakage,
        })
    }
}

#[derive(Debug, Clone)]
pub struct QuasiAlgebraReport<T> {
    pub restricted: RestrictedCell<T>,
    pub relations: RelationReport<T>,
}

impl<T: Real> QuasiAlgebraReport<T> {
    pub fn all_pass(&self) -> bool {
        self.relations.all_pass()
    }
}

/// The three sub-space identities with `N'` replaced by `C^m_{m+k}`.
pub fn quasialgebra_check<T: Real>(cell: &QuasiAlgebraCell, d: usize) -> Result<QuasiAlgebraReport<T>> {
    let r = RestrictedCell::<T>::new(*cell, d)?;
    let c = cell.occupation_as::<T>();
    let tol = T::lit(CELL_TOLERANCE);
    let id2 = ComplexMatrix::<T>::identity(2);
    let mut relations = RelationReport::default();
    let comm = commutator(&r.q, &r.q_dag)?;
    relations.push(RelationCheck::new(
        "[Q,Q_dag] = C sigma_z",
        Scope::Full,
        comm.max_abs_diff(&r.sigma_z.scale_real(c))?,
        tol,
    ));
    let anti = anticommutator(&r.q, &r.q_dag)?;
    relations.push(RelationCheck::new(
        "{Q,Q_dag} = C",
        Scope::Full,
        anti.max_abs_diff(&id2.scale_real(c))?,
        tol,
    ));
    let diff = &r.q_dag - &r.q;
    relations.push(RelationCheck::new(
        "(Q_dag - Q)^2 = -C",
        Scope::Full,
        (&diff * &diff).max_abs_diff(&id2.scale_real(-c))?,
        tol,
    ));
    relations.push(RelationCheck::new("invariant subspace", Scope::Full, r.leakage, tol));
    Ok(QuasiAlgebraReport {
        restricted: r,
        relations,
    })
}

#[derive(Debug, Clone)]
pub struct PbEnergy<T> {
    pub energy: T,
    /// `(Omega/2) {Q, Q_dag}` on the invariant two-dimensional subspace.
    pub restricted_h: ComplexMatrix<T>,
    /// `max |restricted_h - energy I|`
    pub residual: T,
}

/// `H = (1/2) {Q, Q_dag} Omega`, equal to `C Omega / 2` on the cell.
pub fn susy_pb_hamiltonian<T: Real>(cell: &QuasiAlgebraCell, omega: T) -> Result<PbEnergy<T>> {
    if !(omega.is_finite() && omega > T::zero()) {
        return Err(domain("Omega must be positive and finite"));
    }
    let d = default_block_dim(cell.k).max(cell.m + 2 * cell.k + 1);
    let r = RestrictedCell::<T>::new(*cell, d)?;
    let energy = cell.occupation_as::<T>() * omega / T::lit(2.0);
    let restricted_h = anticommutator(&r.q, &r.q_dag)?.scale_real(omega / T::lit(2.0));
    let residual = restricted_h.max_abs_diff(&ComplexMatrix::identity(2).scale_real(energy))?;
    Ok(PbEnergy {
        energy,
        restricted_h,
        residual,
    })
}

/// Eigenvalues of `g Q_dag + conj(g) Q` on the cell; `+-|g| sqrt(C)` expected.
pub fn coupling_spectrum<T: Real>(cell: &QuasiAlgebraCell, d: usize, g: Complex<T>) -> Result<[T; 2]> {
    let r = RestrictedCell::<T>::new(*cell, d)?;
    let h = &r.q_dag.scale(g) + &r.q.scale(g.conj());
    let es = crate::linalg::hermitian_eigensystem(&h)?;
    Ok([es.values[0], es.values[1]])
}

impl<T: Real> SusyRep<T> {
    /// `(a^k)` and `a_dag a` on a single block.
    pub fn block_operators(&self) -> (&ComplexMatrix<T>, &ComplexMatrix<T>) {
        (&self.a_pow, &self.number)
    }
}
