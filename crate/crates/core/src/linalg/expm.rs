use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_TERMS: usize = 60;

/// Matrix exponential by scaling and squaring around a Taylor core.
///
/// The input is scaled by `2^-j` until its 1-norm is at most 1/2, the series
/// is summed until the next term is below machine precision, and the result
/// is squared `j` times.
pub fn matrix_exponential<T: Real>(x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !x.is_finite() {
        return Err(Error::Numeric("non-finite entry in matrix exponential".into()));
    }
    let n = x.dim();
    let norm = x.norm_one();
    let half = T::lit(0.5);
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > half {
        scaled_norm *= half;
        squarings += 1;
        if squarings > 1100 {
            return Err(Error::Numeric("matrix exponential input norm too large".into()));
        }
    }
    let factor = T::lit(2.0).powi(-(squarings as i32));
    let a = x.scale_real(factor);

    let mut result = ComplexMatrix::<T>::identity(n);
    let mut term = ComplexMatrix::<T>::identity(n);
    for k in 1..=MAX_TERMS {
        term = (&term * &a).scale(Complex::new(T::one() / T::from_usize_lossy(k), T::zero()));
        result += &term;
        if term.max_abs() <= T::epsilon() * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    if !result.is_finite() {
        return Err(Error::Numeric("matrix exponential overflowed".into()));
    }
    Ok(result)
}
