//! Searches for algebraic descriptions of the estimated ratio limits.

use std::f64::consts::PI;
use std::fmt;

/// Monic cubic `x^3 + p x^2 + q x + r` with its real roots, ascending.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cubic {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub roots: [f64; 3],
}

impl fmt::Display for Cubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^3")?;
        for (coef, mono) in [(self.p, "x^2"), (self.q, "x"), (self.r, "")] {
            if coef == 0 {
                continue;
            }
            let sign = if coef < 0 { '-' } else { '+' };
            let mag = coef.unsigned_abs();
            if mag == 1 && !mono.is_empty() {
                write!(f, " {sign} {mono}")?;
            } else {
                write!(f, " {sign} {mag}{mono}")?;
            }
        }
        Ok(())
    }
}

fn eval(p: f64, q: f64, r: f64, x: f64) -> f64 {
    ((x + p) * x + q) * x + r
}

fn polish(p: f64, q: f64, r: f64, mut x: f64) -> f64 {
    for _ in 0..4 {
        let d = (3.0 * x + 2.0 * p) * x + q;
        if d == 0.0 {
            break;
        }
        let step = eval(p, q, r, x) / d;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

/// Real roots (with multiplicity) when all three are real.
pub fn real_roots(p: i64, q: i64, r: i64) -> Option<[f64; 3]> {
    let (pi, qi, ri) = (p as i128, q as i128, r as i128);
    let disc = 18 * pi * qi * ri - 4 * pi.pow(3) * ri + pi * pi * qi * qi - 4 * qi.pow(3) - 27 * ri * ri;
    if disc < 0 {
        return None;
    }
    let (pf, qf, rf) = (p as f64, q as f64, r as f64);
    let mut roots = if disc == 0 {
        let h = pi * pi - 3 * qi;
        if h == 0 {
            let t = -pf / 3.0;
            [t, t, t]
        } else {
            let double = (9 * ri - pi * qi) as f64 / (2 * h) as f64;
            let simple = (4 * pi * qi - 9 * ri - pi.pow(3)) as f64 / h as f64;
            [double, double, simple]
        }
    } else {
        // Depressed cubic t^3 + P t + Q with x = t - p/3; P < 0 here.
        let big_p = qf - pf * pf / 3.0;
        let big_q = 2.0 * pf.powi(3) / 27.0 - pf * qf / 3.0 + rf;
        let m = 2.0 * (-big_p / 3.0).sqrt();
        let arg = (3.0 * big_q / (big_p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let mut out = [0.0; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let t = m * (theta - 2.0 * PI * k as f64 / 3.0).cos();
            *slot = polish(pf, qf, rf, t - pf / 3.0);
        }
        out
    };
    roots.sort_by(|a, b| a.total_cmp(b));
    Some(roots)
}

/// Every monic cubic with integer coefficients in `[-bound, bound]` whose
/// three real roots match `limits` (as a set) within `tol` each.
pub fn cubic_search(limits: [f64; 3], coeff_bound: i64, tol: f64) -> Vec<Cubic> {
    let mut target = limits;
    target.sort_by(|a, b| a.total_cmp(b));
    let mut out = Vec::new();
    for p in -coeff_bound..=coeff_bound {
        for q in -coeff_bound..=coeff_bound {
            for r in -coeff_bound..=coeff_bound {
                let Some(roots) = real_roots(p, q, r) else {
                    continue;
                };
                if roots.iter().zip(&target).all(|(x, l)| (x - l).abs() <= tol) {
                    out.push(Cubic { p, q, r, roots });
                }
            }
        }
    }
    out
}

/// Distance of an estimate from `cos(3 pi / 7)`. A report, not a claim.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrigProximity {
    pub estimate: f64,
    pub target: f64,
    pub difference: f64,
}

pub fn trig_proximity_report(l3: f64) -> TrigProximity {
    let target = (3.0 * PI / 7.0).cos();
    TrigProximity {
        estimate: l3,
        target,
        difference: (l3 - target).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_root_case() {
        let found = cubic_search([1.0, 1.0, 0.0], 12, 0.002);
        assert_eq!(found.len(), 1);
        assert_eq!((found[0].p, found[0].q, found[0].r), (-2, 1, 0));
        assert_eq!(found[0].to_string(), "x^3 - 2x^2 + x");
    }

    #[test]
    fn reference_limits_have_no_match() {
        assert!(cubic_search([0.762, 0.499, 0.224], 12, 0.002).is_empty());
    }

    #[test]
    fn zero_tolerance_on_irrational_targets() {
        let t = (3.0 * PI / 7.0).cos();
        assert!(cubic_search([t, 0.5_f64.sqrt(), 0.3], 12, 0.0).is_empty());
    }

    #[test]
    fn roots_satisfy_polynomial() {
        for (p, q, r) in [(0, -7, 6), (-6, 11, -6), (3, 3, 1), (-3, 0, 1), (0, -3, 1)] {
            let roots = real_roots(p, q, r).unwrap();
            for x in roots {
                assert!(eval(p as f64, q as f64, r as f64, x).abs() < 1e-9, "{p} {q} {r} {x}");
            }
        }
        assert!(real_roots(0, 0, 1).is_none());
        // (x-1)(x-2)(x-3)
        let roots = real_roots(-6, 11, -6).unwrap();
        for (x, want) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - want).abs() < 1e-12);
        }
    }

    #[test]
    fn trig_proximity_arithmetic() {
        let r = trig_proximity_report(0.224);
        assert!((r.difference - 0.0014791).abs() < 1e-6);
        assert_eq!(trig_proximity_report(r.target).difference, 0.0);
        assert!((trig_proximity_report(0.3).difference - 0.0774791).abs() < 1e-6);
    }
}
