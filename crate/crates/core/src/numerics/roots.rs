use num_complex::Complex64;
use num_traits::Zero;

use super::{Polynomial, SpherePoint};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Root>,
    /// Largest `|p(r)|` over the returned roots.
    pub residual: f64,
}

impl RootSet {
    /// Roots repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Backward-error tolerance relative to `Σ|a_k||r|^k`.
    pub tol: f64,
    pub max_iter: usize,
    /// Roots closer than `merge_radius * max(1, |r|)` are merged.
    pub merge_radius: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-10,
            max_iter: 500,
            merge_radius: 1e-7,
        }
    }
}

pub fn roots(p: &Polynomial, tol: f64) -> Result<RootSet> {
    roots_with(
        p,
        RootOptions {
            tol,
            ..RootOptions::default()
        },
    )
}

/// All roots of `p` by Aberth–Ehrlich iteration, polished and clustered.
pub fn roots_with(p: &Polynomial, opts: RootOptions) -> Result<RootSet> {
    if p.degree() == 0 {
        return Err(Error::DegenerateMap("root of a constant polynomial requested".into()));
    }
    let c = p.coeffs();
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    let q = Polynomial::new(c[zeros..].to_vec());

    let mut found: Vec<Complex64> = match q.degree() {
        0 => vec![],
        1 => vec![-q.coeffs()[0] / q.coeffs()[1]],
        2 => quadratic(q.coeffs()[2], q.coeffs()[1], q.coeffs()[0]).to_vec(),
        _ => aberth(&q, &opts)?,
    };
    for z in found.iter_mut() {
        *z = polish(&q, *z);
    }
    found.extend(std::iter::repeat_n(Complex64::zero(), zeros));

    let roots = cluster(&found, opts.merge_radius);
    let residual = roots.iter().map(|r| p.eval(r.value).norm()).fold(0.0, f64::max);
    Ok(RootSet { roots, residual })
}

/// Roots of `a z^2 + b z + c` without cancellation.
pub(crate) fn quadratic(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    let s = if (b.conj() * disc).re >= 0.0 {
        b + disc
    } else {
        b - disc
    };
    if s.is_zero() {
        return [Complex64::zero(), Complex64::zero()];
    }
    let r1 = -s / (2.0 * a);
    let r2 = -2.0 * c / s;
    [r1, r2]
}

fn aberth(q: &Polynomial, opts: &RootOptions) -> Result<Vec<Complex64>> {
    let n = q.degree();
    let c = q.coeffs();
    // starting radius: geometric mean of root moduli, bounded by Cauchy's bound
    let lead = c[n].norm();
    let cauchy = 1.0 + c[..n].iter().map(|x| x.norm() / lead).fold(0.0, f64::max);
    let r = (c[0].norm() / lead).powf(1.0 / n as f64).clamp(1e-3, cauchy);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];

    for _ in 0..opts.max_iter {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (v, dv) = q.eval_with_derivative(z[k]);
            if v.norm() <= 4.0 * f64::EPSILON * q.eval_bound(z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = v / dv;
            let mut s = Complex64::zero();
            for j in 0..n {
                if j != k {
                    s += 1.0 / (z[k] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                // nudge off a coincident estimate
                z[k] += Complex64::new(1e-8 * r.max(1.0), 1e-8);
                continue;
            }
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[k].norm() {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    // accept estimates whose backward error meets the tolerance
    let worst = z
        .iter()
        .map(|&x| q.eval(x).norm() / q.eval_bound(x).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    if worst <= opts.tol {
        return Ok(z);
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: worst,
        best: z,
    })
}

/// One or two Newton steps, kept only when they reduce the residual.
fn polish(q: &Polynomial, z: Complex64) -> Complex64 {
    let mut best = z;
    let mut best_v = q.eval(z).norm();
    for _ in 0..2 {
        let (v, dv) = q.eval_with_derivative(best);
        if dv.is_zero() || best_v == 0.0 {
            break;
        }
        let cand = best - v / dv;
        let cv = q.eval(cand).norm();
        if cv < best_v {
            best = cand;
            best_v = cv;
        } else {
            break;
        }
    }
    best
}

fn cluster(pts: &[Complex64], radius: f64) -> Vec<Root> {
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let s = pts[i].norm().max(pts[j].norm()).max(1.0);
            if (pts[i] - pts[j]).norm() <= radius * s {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<(usize, Complex64, usize)> = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        let r = find(&mut parent, i);
        match out.iter_mut().find(|e| e.0 == r) {
            Some(e) => {
                e.1 += p;
                e.2 += 1;
            }
            None => out.push((r, p, 1)),
        }
    }
    out.into_iter()
        .map(|(_, s, m)| Root {
            value: s / m as f64,
            multiplicity: m,
        })
        .collect()
}

/// Bottleneck distance between two equal-size point multisets under the
/// best matching. Returns `+inf` when the sizes differ.
pub fn match_distance(a: &[SpherePoint], b: &[SpherePoint]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let d: Vec<Vec<f64>> = a
        .iter()
        .map(|&x| b.iter().map(|&y| super::rel_dist(x, y)).collect())
        .collect();
    if n > 8 {
        // greedy fallback for large sets
        let mut used = vec![false; n];
        let mut worst: f64 = 0.0;
        for row in &d {
            let (j, v) =
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| !used[*j])
                    .fold(
                        (usize::MAX, f64::INFINITY),
                        |acc, (j, &v)| if v < acc.1 { (j, v) } else { acc },
                    );
            used[j] = true;
            worst = worst.max(v);
        }
        return worst;
    }
    fn search(d: &[Vec<f64>], i: usize, used: &mut Vec<bool>, cur: f64, best: &mut f64) {
        if cur >= *best {
            return;
        }
        if i == d.len() {
            *best = cur;
            return;
        }
        for j in 0..d.len() {
            if !used[j] {
                used[j] = true;
                search(d, i + 1, used, cur.max(d[i][j]), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    search(&d, 0, &mut vec![false; n], 0.0, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn has_root(rs: &RootSet, v: Complex64, m: usize, tol: f64) -> bool {
        rs.roots
            .iter()
            .any(|r| (r.value - v).norm() < tol && r.multiplicity == m)
    }

    #[test]
    fn simple_quadratic() {
        let rs = roots(&Polynomial::from_real(&[-1.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!(has_root(&rs, c(1.0, 0.0), 1, 1e-14));
        assert!(has_root(&rs, c(-1.0, 0.0), 1, 1e-14));
    }

    #[test]
    fn triple_zero() {
        let rs = roots(&Polynomial::from_real(&[0.0, 0.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(
            rs.roots,
            vec![Root {
                value: c(0.0, 0.0),
                multiplicity: 3
            }]
        );
    }

    #[test]
    fn cubic_residual() {
        let p = Polynomial::from_real(&[2.0, -2.0, 0.0, 1.0]);
        let rs = roots(&p, 1e-10).unwrap();
        assert_eq!(rs.total_multiplicity(), 3);
        assert!(rs.residual < 1e-10, "{}", rs.residual);
    }

    #[test]
    fn clustered_double_root() {
        let p = Polynomial::from_roots(&[c(0.3, 0.4), c(0.3, 0.4), c(-2.0, 1.0), c(5.0, 0.0)]);
        let rs = roots(&p, 1e-10).unwrap();
        assert!(has_root(&rs, c(0.3, 0.4), 2, 1e-7));
        assert_eq!(rs.total_multiplicity(), 4);
    }

    #[test]
    fn wide_dynamic_range() {
        let p = Polynomial::from_roots(&[c(1e-3, 0.0), c(1.0, 1.0), c(1e3, -5.0)]);
        let rs = roots(&p, 1e-10).unwrap();
        for v in [c(1e-3, 0.0), c(1.0, 1.0), c(1e3, -5.0)] {
            assert!(rs
                .roots
                .iter()
                .any(|r| (r.value - v).norm() <= 1e-9 * v.norm().max(1.0)));
        }
    }

    #[test]
    fn constant_is_rejected() {
        assert!(roots(&Polynomial::one(), 1e-10).is_err());
    }

    #[test]
    fn quadratic_no_cancellation() {
        let [a, b] = quadratic(c(1.0, 0.0), c(1e8, 0.0), c(1.0, 0.0));
        let small = if a.norm() < b.norm() { a } else { b };
        assert!((small - c(-1e-8, 0.0)).norm() < 1e-20);
    }

    #[test]
    fn matching_distance() {
        let a = [SpherePoint::Finite(c(1.0, 0.0)), SpherePoint::Infinity];
        let b = [SpherePoint::Infinity, SpherePoint::Finite(c(1.0, 1e-9))];
        assert!(match_distance(&a, &b) < 2e-9);
        assert_eq!(match_distance(&a, &b[..1]), f64::INFINITY);
    }
}
