use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::roots::roots;
use super::{Polynomial, SpherePoint};
use crate::error::{Error, Result};

/// Rational map `N/D` on the Riemann sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

const COMMON_ROOT_TOL: f64 = 1e-9;

impl RationalMap {
    /// Builds `num/den`, rejecting a zero denominator and common roots.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateMap("zero denominator".into()));
        }
        if num.is_zero() {
            return Err(Error::DegenerateMap("zero numerator".into()));
        }
        if den.degree() > 0 && num.degree() > 0 {
            let rs = roots(&den, 1e-10)?;
            for r in &rs.roots {
                let v = num.eval(r.value);
                if v.norm() <= COMMON_ROOT_TOL * num.eval_bound(r.value).max(1.0) {
                    return Err(Error::DegenerateMap(format!("common root at {}", r.value)));
                }
            }
        }
        // normalise so the denominator is monic-free of a constant factor ambiguity
        let s = den.leading();
        Ok(RationalMap {
            num: num.scaled(1.0 / s),
            den: den.scaled(1.0 / s),
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalMap {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    /// Value at infinity.
    pub fn at_infinity(&self) -> SpherePoint {
        let (n, d) = (self.num.degree(), self.den.degree());
        if n > d {
            SpherePoint::Infinity
        } else if n == d {
            SpherePoint::from_complex(self.num.leading() / self.den.leading())
        } else {
            SpherePoint::ZERO
        }
    }

    /// Evaluates at a finite point. Poles return infinity; `0/0` is an error.
    pub fn eval_finite(&self, z: Complex64) -> Result<SpherePoint> {
        let n = self.num.eval(z);
        let d = self.den.eval(z);
        if d.norm() == 0.0 {
            if n.norm() == 0.0 {
                return Err(Error::DegenerateMap(format!("0/0 at {}", z)));
            }
            return Ok(SpherePoint::Infinity);
        }
        Ok(SpherePoint::from_complex(n / d))
    }

    pub fn eval(&self, z: SpherePoint) -> Result<SpherePoint> {
        match z {
            SpherePoint::Finite(w) => self.eval_finite(w),
            SpherePoint::Infinity => Ok(self.at_infinity()),
        }
    }

    /// Derivative at a finite non-pole point.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let (n, dn) = self.num.eval_with_derivative(z);
        let (d, dd) = self.den.eval_with_derivative(z);
        (dn * d - n * dd) / (d * d)
    }

    /// `N'D - ND'`, whose roots are the finite critical points.
    pub fn critical_numerator(&self) -> Polynomial {
        let a = &self.num.derivative() * &self.den;
        let b = &self.num * &self.den.derivative();
        (&a - &b).trim_relative(1e-14)
    }

    /// `N - vD` for finite `v`, with cancelled leading terms dropped.
    pub fn fiber_polynomial(&self, v: Complex64) -> Polynomial {
        (&self.num - &self.den.scaled(v)).trim_relative(1e-13)
    }

    /// Full preimage of `v` with multiplicities, including infinity.
    pub fn preimages(&self, v: SpherePoint) -> Result<Vec<(SpherePoint, usize)>> {
        let deg = self.degree();
        let (poly, infinite) = match v {
            SpherePoint::Finite(v) => {
                let q = self.fiber_polynomial(v);
                let k = deg - q.degree();
                (q, k)
            }
            SpherePoint::Infinity => {
                let k = self.num.degree().saturating_sub(self.den.degree());
                (self.den.clone(), k)
            }
        };
        let mut out = Vec::with_capacity(deg);
        if poly.degree() > 0 {
            for r in roots(&poly, 1e-10)?.roots {
                out.push((SpherePoint::Finite(r.value), r.multiplicity));
            }
        }
        if infinite > 0 {
            out.push((SpherePoint::Infinity, infinite));
        }
        Ok(out)
    }
}

/// The fibre of `f` through a point `a`: the value `f(a)` and the rest of
/// `f⁻¹(f(a))`, i.e. the full preimage with one copy of `a` removed.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub value: SpherePoint,
    pub others: Vec<SpherePoint>,
}

impl RationalMap {
    /// Computes the fibre through `a` by deflating the known root `a`.
    ///
    /// The deflated roots are polished against the undeflated equation. If
    /// the deflation remainder is too large the full fibre is solved and
    /// the point nearest `a` removed instead.
    pub fn fiber(&self, a: SpherePoint) -> Result<Fiber> {
        let v = self.eval(a)?;
        let deg = self.degree();
        match (a, v) {
            (SpherePoint::Finite(x), SpherePoint::Finite(vv)) => {
                let q = self.fiber_polynomial(vv);
                let inf = deg - q.degree();
                let (quot, rem) = q.deflate(x);
                if rem.norm() > 1e-8 * q.eval_bound(x).max(f64::MIN_POSITIVE) {
                    return self.fiber_by_removal(a, v);
                }
                let mut others = Vec::with_capacity(deg - 1);
                if quot.degree() > 0 {
                    for r in roots(&quot, 1e-10)?.expanded() {
                        others.push(SpherePoint::Finite(polish_against(&q, r)));
                    }
                }
                others.extend(std::iter::repeat_n(SpherePoint::Infinity, inf));
                Ok(Fiber { value: v, others })
            }
            _ => self.fiber_by_removal(a, v),
        }
    }

    fn fiber_by_removal(&self, a: SpherePoint, v: SpherePoint) -> Result<Fiber> {
        let mut all: Vec<SpherePoint> = Vec::with_capacity(self.degree());
        for (p, m) in self.preimages(v)? {
            all.extend(std::iter::repeat_n(p, m));
        }
        let (k, dist) = all
            .iter()
            .enumerate()
            .map(|(k, &p)| (k, super::rel_dist(p, a)))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        if all.is_empty() || dist > 1e-6 {
            return Err(Error::SolverCorruption { residual: dist });
        }
        all.remove(k);
        Ok(Fiber { value: v, others: all })
    }
}

fn polish_against(q: &Polynomial, z: Complex64) -> Complex64 {
    let (v, dv) = q.eval_with_derivative(z);
    if dv.norm() == 0.0 {
        return z;
    }
    let cand = z - v / dv;
    if q.eval(cand).norm() < v.norm() {
        cand
    } else {
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        // z^2 + z^-2 at i
        let f1 = RationalMap::new(
            Polynomial::from_real(&[1.0, 0.0, 0.0, 0.0, 1.0]),
            Polynomial::from_real(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        assert_eq!(
            f1.eval(SpherePoint::Finite(c(0.0, 1.0))).unwrap(),
            SpherePoint::Finite(c(-2.0, 0.0))
        );
        assert_eq!(f1.eval(SpherePoint::ZERO).unwrap(), SpherePoint::Infinity);
        assert_eq!(f1.eval(SpherePoint::Infinity).unwrap(), SpherePoint::Infinity);
        let p = RationalMap::polynomial(Polynomial::from_real(&[0.0, 1.0, -2.0]));
        // z - 2z^2 + ... evaluated against a simple closed form
        assert_eq!(
            p.eval(SpherePoint::Finite(c(0.5, 0.0))).unwrap(),
            SpherePoint::Finite(c(0.0, 0.0))
        );
        let q = RationalMap::polynomial(Polynomial::from_real(&[0.0, 0.0, 1.0, 0.0]));
        assert_eq!(
            q.eval(SpherePoint::Finite(c(0.5, 0.0))).unwrap(),
            SpherePoint::Finite(c(0.25, 0.0))
        );
        assert_eq!(q.eval(SpherePoint::Infinity).unwrap(), SpherePoint::Infinity);
    }

    #[test]
    fn rejects_common_root() {
        let err = RationalMap::new(
            Polynomial::from_roots(&[c(1.0, 0.0), c(2.0, 0.0)]),
            Polynomial::from_roots(&[c(1.0, 0.0)]),
        );
        assert!(matches!(err, Err(Error::DegenerateMap(_))));
        assert!(RationalMap::new(Polynomial::one(), Polynomial::constant(c(0.0, 0.0))).is_err());
    }

    #[test]
    fn infinity_by_degree() {
        let m = RationalMap::new(Polynomial::from_real(&[1.0, 3.0]), Polynomial::from_real(&[2.0, 1.5])).unwrap();
        assert_eq!(m.at_infinity(), SpherePoint::Finite(c(2.0, 0.0)));
        let m = RationalMap::new(Polynomial::one(), Polynomial::from_real(&[0.0, 1.0])).unwrap();
        assert_eq!(m.at_infinity(), SpherePoint::ZERO);
    }

    #[test]
    fn fiber_removes_one_copy() {
        let f = RationalMap::polynomial(Polynomial::from_real(&[0.0, 1.0, 0.5]));
        let fib = f.fiber(SpherePoint::Finite(c(2.0, 0.0))).unwrap();
        assert_eq!(fib.value, SpherePoint::Finite(c(4.0, 0.0)));
        assert_eq!(fib.others.len(), 1);
        assert!(crate::numerics::rel_dist(fib.others[0], SpherePoint::Finite(c(-4.0, 0.0))) < 1e-14);
        let fib = f.fiber(SpherePoint::Infinity).unwrap();
        assert_eq!(fib.others, vec![SpherePoint::Infinity]);
    }

    #[test]
    fn preimages_count_infinity() {
        let m = RationalMap::new(
            Polynomial::from_real(&[1.0, 0.0, 0.0, 0.0, 1.0]),
            Polynomial::from_real(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        let pre = m.preimages(SpherePoint::Infinity).unwrap();
        let total: usize = pre.iter().map(|p| p.1).sum();
        assert_eq!(total, 4);
        assert!(pre.contains(&(SpherePoint::Infinity, 2)));
        let pre = m.preimages(SpherePoint::Finite(c(2.0, 0.0))).unwrap();
        // z^2 + z^-2 = 2 has the double roots ±1
        assert_eq!(pre.len(), 2);
        assert!(pre.iter().all(|p| p.1 == 2));
    }
}
