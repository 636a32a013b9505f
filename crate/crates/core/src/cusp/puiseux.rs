use num_complex::Complex64;
use num_traits::Zero;

use super::series::{Coeff, FormalSeries};
use crate::error::{Error, Result};

/// `Σ_{n≥2} C_n z̄^{n/2}`, principal branch of the square root.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxGerm<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> PuiseuxGerm<T> {
    /// Coefficient of `z̄^{n/2}`, `n ≥ 2`.
    pub fn coeff(&self, n: usize) -> Result<T> {
        assert!(n >= 2);
        self.coeffs.get(n - 2).cloned().ok_or(Error::Truncation {
            requested: n,
            available: self.coeffs.len() + 1,
        })
    }

    /// Largest known index.
    pub fn order(&self) -> usize {
        self.coeffs.len() + 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let t = z.conj().sqrt();
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| (acc + c.to_c64()) * t)
            * t
    }
}

pub(crate) fn check_normalized<T: Coeff>(f: &FormalSeries<T>, scale: f64) -> Result<()> {
    let c1 = f.coeff(1)?;
    let c2 = f.coeff(2)?;
    if !c1.negligible(scale) || !(c2 - T::one()).negligible(scale) {
        return Err(Error::NotNormalized(format!(
            "need C1 = 0 and C2 = 1, got {} and {}",
            f.coeff(1)?.to_c64(),
            f.coeff(2)?.to_c64()
        )));
    }
    Ok(())
}

pub(crate) fn coeff_scale<T: Coeff>(f: &FormalSeries<T>) -> f64 {
    f.coeffs().iter().map(|c| c.to_c64().norm()).fold(1.0, f64::max)
}

/// `P(s) = s + C₂ s² + …` with `f(P(s)) = s²`, known to `s^n`.
///
/// Needs `f` up to `w^{n+1}`.
pub fn inverse_puiseux<T: Coeff>(f: &FormalSeries<T>, n: usize) -> Result<FormalSeries<T>> {
    check_normalized(f, coeff_scale(f))?;
    let two = T::from_i64(2);
    let mut p = vec![T::one()];
    for k in 2..=n {
        p.push(T::zero());
        let trial = FormalSeries::truncated(p.clone());
        let mut s = T::zero();
        for m in 2..=k + 1 {
            let cm = f.coeff(m)?;
            if cm.is_zero() {
                continue;
            }
            s = s + cm * trial.pow_coeff(m, k + 1)?;
        }
        p[k - 1] = -(s / two.clone());
    }
    Ok(FormalSeries::truncated(p))
}

/// Schwarz germ `σ(z) = f(-P̄(√z̄))` at the cusp, known to `z̄^{n/2}`.
///
/// Uses `C_n(σ) = Σ_{m=2}^{n} ((-1)^m C_m - C̄_m) C̄_n(P^m)` for `n ≥ 3`.
pub fn schwarz_germ<T: Coeff>(f: &FormalSeries<T>, n: usize) -> Result<PuiseuxGerm<T>> {
    let p = inverse_puiseux(f, n.max(2) - 1)?;
    let mut out = vec![T::one()];
    for k in 3..=n {
        let mut s = T::zero();
        for m in 2..=k {
            let cm = f.coeff(m)?;
            let sign = if m % 2 == 0 { cm.clone() } else { -cm.clone() };
            let a = sign - cm.conj();
            if a.is_zero() {
                continue;
            }
            s = s + a * p.pow_coeff(m, k)?.conj();
        }
        out.push(s);
    }
    Ok(PuiseuxGerm { coeffs: out })
}

/// Same germ by direct composition `f ∘ (-P̄)`.
pub fn schwarz_germ_composed<T: Coeff>(f: &FormalSeries<T>, n: usize) -> Result<PuiseuxGerm<T>> {
    let p = inverse_puiseux(f, n)?;
    let reflected = p.conj().scale(&-T::one());
    let s = f.compose(&reflected, n)?;
    Ok(PuiseuxGerm {
        coeffs: (2..=n).map(|k| s.coeff(k)).collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::super::series::{exact, Exact};
    use super::*;
    use num_traits::One;

    fn poly(c: &[(i64, i64, i64)]) -> FormalSeries<Exact> {
        FormalSeries::polynomial(c.iter().map(|&(a, b, d)| exact(a, b, d)).collect())
    }

    #[test]
    fn inverse_solves_square() {
        let f = poly(&[(0, 0, 1), (1, 0, 1), (1, 0, 1)]);
        let n = 8;
        let p = inverse_puiseux(&f, n).unwrap();
        let fp = f.compose(&p, n).unwrap();
        for k in 1..=n {
            let want = if k == 2 { Exact::one() } else { Exact::zero() };
            assert_eq!(fp.coeff(k).unwrap(), want, "k={k}");
        }
        // w² + w³: P = s - s²/2 + 5s³/8 - …
        assert_eq!(p.coeff(2).unwrap(), exact(-1, 0, 2));
        assert_eq!(p.coeff(3).unwrap(), exact(5, 0, 8));
    }

    #[test]
    fn second_coefficient_is_minus_half_c3() {
        let f = poly(&[(0, 0, 1), (1, 0, 1), (3, -2, 7), (1, 1, 2)]);
        let p = inverse_puiseux(&f, 3).unwrap();
        assert_eq!(p.coeff(2).unwrap(), -(exact(3, -2, 7) / exact(2, 0, 1)));
    }

    #[test]
    fn rejects_unnormalized() {
        let f = poly(&[(0, 0, 1), (2, 0, 1), (1, 0, 1)]);
        assert!(matches!(inverse_puiseux(&f, 4), Err(Error::NotNormalized(_))));
        let g = poly(&[(1, 0, 1), (1, 0, 1)]);
        assert!(matches!(schwarz_germ(&g, 4), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn closed_form_matches_composition() {
        for f in [
            poly(&[(0, 0, 1), (1, 0, 1), (1, 0, 1)]),
            poly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1), (1, 0, 1)]),
            poly(&[(0, 0, 1), (1, 0, 1), (2, -3, 5), (-1, 4, 3), (7, 1, 9)]),
        ] {
            let n = 7;
            assert_eq!(schwarz_germ(&f, n).unwrap(), schwarz_germ_composed(&f, n).unwrap());
            assert_eq!(schwarz_germ(&f, n).unwrap().coeff(2).unwrap(), Exact::one());
        }
    }

    #[test]
    fn germ_is_a_reflection_numerically() {
        // σ(f(w)) = f(-w̄) for small w with Re w > 0
        let f = FormalSeries::polynomial(vec![
            Complex64::zero(),
            Complex64::one(),
            Complex64::new(-0.4, 0.3),
            Complex64::new(0.2, 0.1),
        ]);
        let germ = schwarz_germ(&f, 14).unwrap();
        let w = Complex64::new(2e-3, 1e-3);
        let z = f.eval(w);
        let want = f.eval(-w.conj());
        assert!((germ.eval(z) - want).norm() < 1e-16);
    }
}
