use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Exact Gaussian rationals.
pub type Exact = Complex<BigRational>;

/// Coefficient field for [`FormalSeries`].
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn conj(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Zero test: exact for rationals, `|x| ≤ 1e-12·scale` for floats.
    fn negligible(&self, scale: f64) -> bool;
}

impl Coeff for Complex64 {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= 1e-12 * scale
    }
}

impl Coeff for Exact {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

/// Gaussian rational `(a + ib)/den`.
pub fn exact(a: i64, b: i64, den: i64) -> Exact {
    Complex::new(
        BigRational::new(BigInt::from(a), BigInt::from(den)),
        BigRational::new(BigInt::from(b), BigInt::from(den)),
    )
}

/// Truncated power series `Σ_{n=1}^{N} C_n z^n` without constant term.
///
/// Coefficients past the truncation are unknown and never fabricated;
/// a series marked `polynomial` has them exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<T> {
    coeffs: Vec<T>,
    polynomial: bool,
}

impl<T: Coeff> FormalSeries<T> {
    /// Series known up to `coeffs.len()`, with `coeffs[0] = C₁`.
    pub fn truncated(coeffs: Vec<T>) -> Self {
        FormalSeries {
            coeffs,
            polynomial: false,
        }
    }

    /// Polynomial: all later coefficients are zero.
    pub fn polynomial(coeffs: Vec<T>) -> Self {
        FormalSeries {
            coeffs,
            polynomial: true,
        }
    }

    /// `z`.
    pub fn identity() -> Self {
        Self::polynomial(vec![T::one()])
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    /// Number of known coefficients, `usize::MAX` for polynomials.
    pub fn order(&self) -> usize {
        if self.polynomial {
            usize::MAX
        } else {
            self.coeffs.len()
        }
    }

    /// `C_n`, `n ≥ 1`.
    pub fn coeff(&self, n: usize) -> Result<T> {
        assert!(n >= 1, "series have no constant term");
        if n <= self.coeffs.len() {
            Ok(self.coeffs[n - 1].clone())
        } else if self.polynomial {
            Ok(T::zero())
        } else {
            Err(Error::Truncation {
                requested: n,
                available: self.coeffs.len(),
            })
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Same series cut to `n` known coefficients.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        let c = (1..=n).map(|k| self.coeff(k)).collect::<Result<Vec<_>>>()?;
        Ok(Self::truncated(c))
    }

    /// Coefficient-wise conjugate `P̄`.
    pub fn conj(&self) -> Self {
        FormalSeries {
            coeffs: self.coeffs.iter().map(Coeff::conj).collect(),
            polynomial: self.polynomial,
        }
    }

    pub fn scale(&self, a: &T) -> Self {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| c.clone() * a.clone()).collect(),
            polynomial: self.polynomial,
        }
    }

    /// `P Q` up to `z^n`.
    pub fn mul(&self, other: &Self, n: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let mut s = T::zero();
            for i in 1..k {
                s = s + self.coeff(i)? * other.coeff(k - i)?;
            }
            out.push(s);
        }
        Ok(Self::truncated(out))
    }

    /// `P^m` up to `z^n`. Needs `P` up to index `n - m + 1`.
    pub fn pow(&self, m: usize, n: usize) -> Result<Self> {
        assert!(m >= 1);
        if n < m {
            return Ok(Self::truncated(vec![T::zero(); n]));
        }
        let base = n - m + 1;
        let p = (1..=base).map(|k| self.coeff(k)).collect::<Result<Vec<_>>>()?;
        let mut acc = p.clone();
        for j in 1..m {
            // acc holds P^j to index base + j - 1
            let next = (1..=base + j)
                .map(|k| (j..k).fold(T::zero(), |s, i| s + acc[i - 1].clone() * p[k - i - 1].clone()))
                .collect();
            acc = next;
        }
        Ok(Self::truncated(acc))
    }

    /// `C_n(P^m)` for `m ≥ 1`.
    pub fn pow_coeff(&self, m: usize, n: usize) -> Result<T> {
        if n < m {
            return Ok(T::zero());
        }
        self.pow(m, n)?.coeff(n)
    }

    /// Evaluates the known part at `z` in floating point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| (acc + c.to_c64()) * z)
    }

    pub fn to_c64(&self) -> FormalSeries<Complex64> {
        FormalSeries {
            coeffs: self.coeffs.iter().map(Coeff::to_c64).collect(),
            polynomial: self.polynomial,
        }
    }
}

/// `Q ∘ P` up to `z^n`: `C_k(Q∘P) = Σ_{m=1}^{k} C_m(Q) C_k(P^m)`.
pub fn series_compose<T: Coeff>(q: &FormalSeries<T>, p: &FormalSeries<T>, n: usize) -> Result<FormalSeries<T>> {
    let mut out = vec![T::zero(); n];
    // powers of P, each known to index n
    let mut pm = p.truncate(n)?;
    for m in 1..=n {
        if m > 1 {
            pm = pm.mul(p, n)?;
        }
        let cm = q.coeff(m)?;
        if cm.is_zero() {
            continue;
        }
        for k in m..=n {
            out[k - 1] = out[k - 1].clone() + cm.clone() * pm.coeff(k)?;
        }
    }
    Ok(FormalSeries::truncated(out))
}

impl<T: Coeff> FormalSeries<T> {
    pub fn compose(&self, inner: &Self, n: usize) -> Result<Self> {
        series_compose(self, inner, n)
    }
}
