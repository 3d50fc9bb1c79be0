use super::LieBasis;
use crate::error::{Error, Result};
use crate::linalg::{commutator, hs_inner};
use crate::scalar::Real;

/// Real structure constants of a closed basis.
///
/// With Hermitian generators `T_a = -i b_a / sqrt(2)` (so that
/// `tr(T_a T_b) = delta_ab / 2`) the constants satisfy
/// `[T_a, T_b] = i sum_c f_abc T_c`. For Pauli/2 this is the Levi-Civita
/// symbol and for the Gell-Mann basis `f_123 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants<T> {
    dim: usize,
    f: Vec<T>,
    pub antisymmetric: bool,
    /// `max_ab max |[b_a, b_b] - sum_c C_abc b_c|`
    pub reconstruction_residual: T,
}

impl<T: Real> StructureConstants<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> T {
        self.f[(a * self.dim + b) * self.dim + c]
    }

    pub fn antisymmetry_defect(&self) -> T {
        let mut worst = T::zero();
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    worst = worst.max((self.get(a, b, c) + self.get(b, a, c)).abs());
                }
            }
        }
        worst
    }

    /// `max |sum_d f_abd f_dce + f_bcd f_dae + f_cad f_dbe|`
    ///
    /// The cyclic sum is alternating in `(a, b, c)`, so only `a < b < c` is visited.
    pub fn jacobi_residual(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for e in 0..n {
                        let mut acc = T::zero();
                        for d in 0..n {
                            acc += self.get(a, b, d) * self.get(d, c, e)
                                + self.get(b, c, d) * self.get(d, a, e)
                                + self.get(c, a, d) * self.get(d, b, e);
                        }
                        worst = worst.max(acc.abs());
                    }
                }
            }
        }
        worst
    }

    /// All `(a, b, c, f_abc)` with `|f_abc| > threshold`, lexicographic.
    pub fn nonzero(&self, threshold: T) -> Vec<(usize, usize, usize, T)> {
        let n = self.dim;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.get(a, b, c);
                    if v.abs() > threshold {
                        out.push((a, b, c, v));
                    }
                }
            }
        }
        out
    }
}

pub fn structure_constants<T: Real>(basis: &LieBasis<T>) -> Result<StructureConstants<T>> {
    let n = basis.len();
    let elems = basis.elements();
    let mut f = vec![T::zero(); n * n * n];
    let mut residual = T::zero();
    let scale = -T::one() / T::lit(2.0).sqrt();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let bracket = commutator(&elems[a], &elems[b])?;
            let mut rebuilt = bracket.clone();
            for (c, bc) in elems.iter().enumerate() {
                let coeff = hs_inner(bc, &bracket)?.re;
                rebuilt -= &bc.scale_real(coeff);
                f[(a * n + b) * n + c] = coeff * scale;
            }
            residual = residual.max(rebuilt.max_abs());
        }
    }
    if residual > T::independence_threshold() {
        return Err(Error::ClosureNotReached {
            dimension: n,
            rounds: basis.closure_rounds(),
        });
    }
    let mut out = StructureConstants {
        dim: n,
        f,
        antisymmetric: false,
        reconstruction_residual: residual,
    };
    out.antisymmetric = out.antisymmetry_defect() <= T::lit(1e-9).max(T::epsilon() * T::lit(100.0));
    Ok(out)
}
