use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Dense polynomial with ascending complex coefficients.
///
/// Exact trailing zeros are trimmed, so the last coefficient is nonzero
/// unless the polynomial is zero (stored as `[0]`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<[f64; 2]>", try_from = "Vec<[f64; 2]>")]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::zero());
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p = &p * &Self::new(vec![-r, Complex64::new(1.0, 0.0)]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops leading coefficients below `rel_tol` times the coefficient scale.
    pub fn trim_relative(&self, rel_tol: f64) -> Self {
        let cut = rel_tol * self.scale();
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().is_some_and(|x| x.norm() <= cut) {
            c.pop();
        }
        Self::new(c)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |a_k| |z|^k`, the natural scale for rounding error in `eval(z)`.
    pub fn eval_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(Complex64::zero());
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides by `(z - a)`, returning quotient and remainder.
    ///
    /// For `|a| > 1` the division runs from the constant term upward, which
    /// keeps deflation of a large root stable.
    pub fn deflate(&self, a: Complex64) -> (Self, Complex64) {
        let n = self.degree();
        if n == 0 {
            return (Self::constant(Complex64::zero()), self.coeffs[0]);
        }
        let c = &self.coeffs;
        if a.norm() <= 1.0 {
            let mut q = vec![Complex64::zero(); n];
            let mut acc = c[n];
            for k in (0..n).rev() {
                q[k] = acc;
                acc = c[k] + acc * a;
            }
            (Self::new(q), acc)
        } else {
            // q_0 = -c_0 / a, q_k = (q_{k-1} - c_k) / a
            let mut q = vec![Complex64::zero(); n];
            let inv = 1.0 / a;
            let mut prev = Complex64::zero();
            for k in 0..n {
                let qk = (prev - c[k]) * inv;
                q[k] = qk;
                prev = qk;
            }
            // remainder measured at the top coefficient, rescaled to a value
            let rem = (c[n] - q[n - 1]) * a.powu(n as u32);
            (Self::new(q), rem)
        }
    }

    /// Coefficients of `p(a + x)` in powers of `x`.
    pub fn taylor_shift(&self, a: Complex64) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// `p(q(z))`.
    pub fn compose(&self, q: &Polynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::constant(Complex64::zero()), |acc, &c| {
                &(&acc * q) + &Self::constant(c)
            })
    }
}

impl From<Polynomial> for Vec<[f64; 2]> {
    fn from(p: Polynomial) -> Self {
        p.coeffs.iter().map(|c| [c.re, c.im]).collect()
    }
}

impl TryFrom<Vec<[f64; 2]>> for Polynomial {
    type Error = String;
    fn try_from(v: Vec<[f64; 2]>) -> Result<Self, String> {
        if v.iter().flatten().any(|x| !x.is_finite()) {
            return Err("non-finite coefficient".into());
        }
        Ok(Polynomial::new(
            v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
        ))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![Complex64::zero(); n];
        for (k, x) in self.coeffs.iter().enumerate() {
            c[k] += x;
        }
        for (k, x) in rhs.coeffs.iter().enumerate() {
            c[k] += x;
        }
        Polynomial::new(c)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut c = vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), 1);
        assert!(Polynomial::new(vec![]).is_zero());
    }

    #[test]
    fn horner_and_derivative() {
        let p = Polynomial::from_real(&[2.0, -2.0, 0.0, 1.0]);
        let (v, dv) = p.eval_with_derivative(c(1.0, 1.0));
        assert_eq!(v, p.eval(c(1.0, 1.0)));
        assert_eq!(dv, p.derivative().eval(c(1.0, 1.0)));
        assert_eq!(p.derivative(), Polynomial::from_real(&[-2.0, 0.0, 3.0]));
    }

    #[test]
    fn deflation_both_directions() {
        let roots = [c(0.5, 0.1), c(-3.0, 2.0), c(7.0, -1.0)];
        let p = Polynomial::from_roots(&roots);
        for (k, &r) in roots.iter().enumerate() {
            let (q, rem) = p.deflate(r);
            assert!(rem.norm() < 1e-10, "{rem}");
            assert_eq!(q.degree(), 2);
            for (j, &s) in roots.iter().enumerate() {
                if j != k {
                    assert!(q.eval(s).norm() < 1e-10);
                }
            }
        }
        let (_, rem) = p.deflate(c(1.0, 0.0));
        assert!((rem - p.eval(c(1.0, 0.0))).norm() < 1e-12);
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = Polynomial::new(vec![c(1.0, 2.0), c(0.0, 1.0), c(-2.0, 0.0), c(0.5, 0.5)]);
        let a = c(0.3, -0.7);
        let s = p.taylor_shift(a);
        let x = c(0.2, 0.1);
        assert!((s.eval(x) - p.eval(a + x)).norm() < 1e-13);
    }

    #[test]
    fn compose_matches_evaluation() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let q = Polynomial::from_real(&[0.0, 2.0, 1.0]);
        let z = c(0.4, 0.9);
        assert!((p.compose(&q).eval(z) - p.eval(q.eval(z))).norm() < 1e-13);
    }

    #[test]
    fn serde_roundtrip() {
        let p = Polynomial::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, -0.25)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[0.0,0.0],[1.0,0.0],[0.5,-0.25]]");
        let q: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
