//! Lie closure over the compact real form and su(n) certification.
//!
//! Matrices are handled as elements of the real Lie algebra of
//! anti-Hermitian matrices: an input `X = H + K` (Hermitian plus
//! anti-Hermitian part) contributes the two directions `iH` and `K`. The
//! closure is grown breadth-first: each round brackets the elements added in
//! the previous round against everything present at the start of the round,
//! and keeps a bracket only if its Hilbert-Schmidt residual against the
//! current basis is a non-negligible fraction of its own norm. Within a round
//! the brackets are admitted in order of decreasing relative residual.

mod certificate;
mod gellmann;
mod structure;

pub use certificate::{certify_su, group_element, inspect_su, SuCertificate, SuClause, ClauseResult};
pub use gellmann::{gellmann_from_family, generalized_gellmann, LAMBDA8_NOTE};
pub use structure::{structure_constants, StructureConstants};

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::linalg::{commutator, hs_inner, ComplexMatrix, Tolerance};
use crate::scalar::Real;

pub const DEFAULT_MAX_ROUNDS: usize = 16;

/// Which half of a seed generator a basis direction came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedPart {
    /// `i * (X + X^dagger)/2`
    Hermitian,
    /// `(X - X^dagger)/2`
    AntiHermitian,
}

/// Where a basis element came from. Bracket indices refer to basis positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Seed { index: usize, part: SeedPart },
    Bracket { left: usize, right: usize, round: usize },
}

/// Orthonormal (real Hilbert-Schmidt) basis of anti-Hermitian matrices.
#[derive(Debug, Clone)]
pub struct LieBasis<T> {
    dim_space: usize,
    basis: Vec<ComplexMatrix<T>>,
    generated_from: Vec<Origin>,
    closure_rounds: usize,
}

impl<T: Real> LieBasis<T> {
    fn empty(dim_space: usize) -> Self {
        Self {
            dim_space,
            basis: Vec::new(),
            generated_from: Vec::new(),
            closure_rounds: 0,
        }
    }

    /// Size `n` of the matrices.
    pub fn dim_space(&self) -> usize {
        self.dim_space
    }

    /// Dimension of the algebra.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix<T>] {
        &self.basis
    }

    pub fn generated_from(&self) -> &[Origin] {
        &self.generated_from
    }

    pub fn closure_rounds(&self) -> usize {
        self.closure_rounds
    }

    /// Hermitian partners `-i b_j`, orthonormal under `tr(X Y)`.
    pub fn hermitian_elements(&self) -> Vec<ComplexMatrix<T>> {
        let minus_i = Complex::new(T::zero(), -T::one());
        self.basis.iter().map(|b| b.scale(minus_i)).collect()
    }

    /// Residual of an anti-Hermitian `x` after projecting out the basis.
    /// Two Gram-Schmidt passes keep the result orthogonal to rounding.
    fn residual_of(&self, x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let mut r = x.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let c = hs_inner(b, &r).map(|z| z.re).unwrap_or_else(|_| T::zero());
                if !c.is_zero() {
                    r -= &b.scale_real(c);
                }
            }
        }
        r
    }

    /// Real coordinates of an anti-Hermitian `x` in this basis.
    pub fn coordinates(&self, x: &ComplexMatrix<T>) -> Result<Vec<T>> {
        self.basis
            .iter()
            .map(|b| hs_inner(b, x).map(|z| z.re))
            .collect()
    }

    /// Frobenius distance from an arbitrary matrix to the real span, after
    /// splitting it into the directions `iH` and `K`.
    pub fn span_residual(&self, x: &ComplexMatrix<T>) -> Result<T> {
        if x.dim() != self.dim_space {
            return Err(Error::Dimension {
                left: self.dim_space,
                right: x.dim(),
            });
        }
        let h = x.hermitian_part().times_i();
        let k = x.antihermitian_part();
        Ok(self
            .residual_of(&h)
            .frobenius()
            .max(self.residual_of(&k).frobenius()))
    }

    /// Worst span residual of `[b_i, b_j]` over all pairs.
    pub fn closure_defect(&self) -> Result<T> {
        let mut worst = T::zero();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let c = commutator(&self.basis[i], &self.basis[j])?;
                worst = worst.max(self.residual_of(&c).frobenius());
            }
        }
        Ok(worst)
    }

    /// Worst deviation of the HS Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> T {
        let mut worst = T::zero();
        for (i, x) in self.basis.iter().enumerate() {
            for (j, y) in self.basis.iter().enumerate() {
                let g = hs_inner(x, y).map(|z| z.norm()).unwrap_or_else(|_| T::infinity());
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    /// Max of the span residuals of each basis in the other's span.
    pub fn mutual_projection_residual(&self, other: &Self) -> Result<T> {
        let mut worst = T::zero();
        for b in &other.basis {
            worst = worst.max(self.span_residual(b)?);
        }
        for b in &self.basis {
            worst = worst.max(other.span_residual(b)?);
        }
        Ok(worst)
    }

    /// Numerical rank of the projection of `other` onto this basis.
    pub fn projection_rank(&self, other: &Self) -> Result<usize> {
        let rows: Vec<Vec<T>> = other
            .basis
            .iter()
            .map(|b| self.coordinates(b))
            .collect::<Result<_>>()?;
        Ok(real_rank(rows, T::independence_threshold()))
    }

    fn try_add(&mut self, candidate: ComplexMatrix<T>, origin: Origin, tol: &Tolerance<T>) -> bool {
        // Rounding can leave a Hermitian remainder; the algebra is anti-Hermitian.
        let candidate = candidate.antihermitian_part();
        let norm = candidate.frobenius();
        if norm <= tol.abs_tol {
            return false;
        }
        let r = self.residual_of(&candidate);
        let rn = r.frobenius();
        if rn <= T::independence_threshold() * norm {
            return false;
        }
        self.basis.push(r.scale_real(T::one() / rn));
        self.generated_from.push(origin);
        true
    }

    /// Adds the candidates in order of decreasing relative residual, so that
    /// nearly dependent brackets are compared against the largest possible
    /// basis before being normalized.
    fn add_pivoted(&mut self, candidates: Vec<(ComplexMatrix<T>, Origin)>, tol: &Tolerance<T>) {
        let threshold = T::independence_threshold();
        let mut pool: Vec<(ComplexMatrix<T>, ComplexMatrix<T>, T, Origin)> = candidates
            .into_iter()
            .filter_map(|(c, origin)| {
                let c = c.antihermitian_part();
                let norm = c.frobenius();
                (norm > tol.abs_tol).then(|| (self.residual_of(&c), c, norm, origin))
            })
            .collect();
        loop {
            let mut best: Option<(usize, T)> = None;
            for (idx, (r, _, norm, _)) in pool.iter().enumerate() {
                let ratio = r.frobenius() / *norm;
                if ratio > threshold && best.is_none_or(|(_, b)| ratio > b) {
                    best = Some((idx, ratio));
                }
            }
            let Some((idx, _)) = best else { break };
            let (_, c, _, origin) = pool.swap_remove(idx);
            if !self.try_add(c, origin, tol) {
                continue;
            }
            let b = self.basis.last().expect("just pushed");
            for (r, _, _, _) in pool.iter_mut() {
                let coef = hs_inner(b, r).map(|z| z.re).unwrap_or_else(|_| T::zero());
                if !coef.is_zero() {
                    *r -= &b.scale_real(coef);
                }
            }
        }
    }

    fn add_seeds(&mut self, generators: &[ComplexMatrix<T>], tol: &Tolerance<T>) {
        for (index, g) in generators.iter().enumerate() {
            self.try_add(
                g.hermitian_part().times_i(),
                Origin::Seed {
                    index,
                    part: SeedPart::Hermitian,
                },
                tol,
            );
            self.try_add(
                g.antihermitian_part(),
                Origin::Seed {
                    index,
                    part: SeedPart::AntiHermitian,
                },
                tol,
            );
        }
    }
}

fn check_generators<T: Real>(generators: &[ComplexMatrix<T>]) -> Result<usize> {
    let first = generators
        .first()
        .ok_or_else(|| domain("at least one generator is required"))?;
    let n = first.dim();
    for g in generators {
        if g.dim() != n {
            return Err(Error::Dimension {
                left: n,
                right: g.dim(),
            });
        }
    }
    Ok(n)
}

/// Orthonormal basis of the real span of the generators, without brackets.
pub fn span_basis<T: Real>(generators: &[ComplexMatrix<T>], tol: &Tolerance<T>) -> Result<LieBasis<T>> {
    let n = check_generators(generators)?;
    let mut basis = LieBasis::empty(n);
    basis.add_seeds(generators, tol);
    Ok(basis)
}

/// Smallest real Lie algebra containing the generators.
pub fn close_algebra<T: Real>(
    generators: &[ComplexMatrix<T>],
    tol: &Tolerance<T>,
    max_rounds: usize,
) -> Result<LieBasis<T>> {
    if max_rounds == 0 {
        return Err(domain("max_rounds must be at least 1"));
    }
    let n = check_generators(generators)?;
    let mut basis = LieBasis::empty(n);
    basis.add_seeds(generators, tol);

    let mut frontier = 0..basis.len();
    for round in 1..=max_rounds {
        let start_len = basis.len();
        let mut candidates = Vec::new();
        for i in frontier.clone() {
            for j in 0..start_len {
                // pairs within the frontier are visited once
                if j == i || (frontier.contains(&j) && j < i) {
                    continue;
                }
                let c = commutator(&basis.basis[i], &basis.basis[j])?;
                candidates.push((c, Origin::Bracket { left: i, right: j, round }));
            }
        }
        basis.add_pivoted(candidates, tol);
        if basis.len() == start_len {
            basis.closure_rounds = round;
            return Ok(basis);
        }
        frontier = start_len..basis.len();
    }
    Err(Error::ClosureNotReached {
        dimension: basis.len(),
        rounds: max_rounds,
    })
}

/// Rank of a set of real vectors by Gram-Schmidt with a relative threshold.
fn real_rank<T: Real>(rows: Vec<Vec<T>>, threshold: T) -> usize {
    let mut kept: Vec<Vec<T>> = Vec::new();
    for mut v in rows {
        let norm0 = v.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
        if norm0.is_zero() {
            continue;
        }
        for _ in 0..2 {
            for q in &kept {
                let c = q.iter().zip(&v).fold(T::zero(), |a, (&x, &y)| a + x * y);
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let norm = v.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
        if norm > threshold * norm0 {
            kept.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    kept.len()
}
