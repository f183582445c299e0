//! Rational secular functions and a bracketing root finder.
//!
//! The functions handled here have the shape
//!
//! ```text
//! f(lambda) = alpha + beta * lambda + sum_i w_i / (mu_i - lambda)
//! ```
//!
//! with nonnegative weights w_i at strictly ascending poles mu_i. Every
//! secular equation in this crate reduces to that shape: the zeros of the
//! multipartite pole function are the zeros of its negation (alpha = -1,
//! weights a_p * m_p at poles -m_p), and both join stationary equations
//! collapse to a pure pole sum after dividing out the linear prefactor.
//! With one sign of weights, f is strictly increasing between consecutive
//! poles, so every root is isolated by a sign change there and bisection
//! cannot miss or double-count. Roots are refined by bisection to an
//! absolute width of 1e-12 and then polished with a few safeguarded
//! Newton steps so residuals land near machine precision.

/// Absolute bisection tolerance and deduplication radius for roots.
pub const TOL_ROOT: f64 = 1e-12;

/// Absolute padding applied next to poles when bracketing.
const POLE_PAD: f64 = 1e-10;

/// Sign-change scan resolution per pole-free segment.
const SCAN: usize = 32;

#[derive(Clone, Debug)]
pub struct RationalSecular {
    alpha: f64,
    beta: f64,
    poles: Vec<f64>,
    weights: Vec<f64>,
}

impl RationalSecular {
    /// Builds the function from its affine part and (pole, weight) terms.
    /// Terms are sorted, poles within `merge_tol` of each other are merged
    /// (weights add), and nonpositive weights are dropped.
    pub fn new(alpha: f64, beta: f64, terms: &[(f64, f64)], merge_tol: f64) -> Self {
        let mut sorted: Vec<(f64, f64)> = terms.iter().copied().filter(|t| t.1 > 0.0).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut poles: Vec<f64> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for (p, w) in sorted {
            match poles.last() {
                Some(&last) if p - last <= merge_tol => {
                    *weights.last_mut().unwrap() += w;
                }
                _ => {
                    poles.push(p);
                    weights.push(w);
                }
            }
        }
        RationalSecular {
            alpha,
            beta,
            poles,
            weights,
        }
    }

    /// Pure pole sum, no affine part.
    pub fn pure_poles(terms: &[(f64, f64)], merge_tol: f64) -> Self {
        Self::new(0.0, 0.0, terms, merge_tol)
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut f = self.alpha + self.beta * x;
        for (p, w) in self.poles.iter().zip(&self.weights) {
            f += w / (p - x);
        }
        f
    }

    pub fn deriv(&self, x: f64) -> f64 {
        let mut d = self.beta;
        for (p, w) in self.poles.iter().zip(&self.weights) {
            let t = p - x;
            d += w / (t * t);
        }
        d
    }

    fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// A finite point left of all poles beyond which f keeps the sign of
    /// its affine part; None when alpha = beta = 0, where the pole sum is
    /// strictly positive left of the hull and no root can exist there.
    fn lower_probe(&self) -> Option<f64> {
        let p0 = self.poles[0];
        if self.beta != 0.0 {
            let c = p0.min(0.0) - (1.0 + self.weight_sum());
            Some(c.min(-(2.0 + self.alpha.abs()) / self.beta.abs()))
        } else if self.alpha != 0.0 {
            Some(p0 - (1.0 + self.weight_sum() / self.alpha.abs()))
        } else {
            None
        }
    }

    fn upper_probe(&self) -> Option<f64> {
        let pk = *self.poles.last().unwrap();
        if self.beta != 0.0 {
            let c = pk.max(0.0) + 1.0 + self.weight_sum();
            Some(c.max((2.0 + self.alpha.abs()) / self.beta.abs()))
        } else if self.alpha != 0.0 {
            Some(pk + 1.0 + self.weight_sum() / self.alpha.abs())
        } else {
            None
        }
    }

    /// All roots inside the open interval (lo, hi); endpoints may be
    /// infinite. Roots come back ascending, deduplicated within TOL_ROOT.
    pub fn roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut roots: Vec<f64> = Vec::new();
        if self.poles.is_empty() {
            if self.beta != 0.0 {
                let r = -self.alpha / self.beta;
                if lo < r && r < hi {
                    roots.push(r);
                }
            }
            return roots;
        }

        let k = self.poles.len();
        for seg in 0..=k {
            let mut a = if seg == 0 {
                match self.lower_probe() {
                    Some(x) => x,
                    None => continue,
                }
            } else {
                self.poles[seg - 1] + POLE_PAD
            };
            let mut b = if seg == k {
                match self.upper_probe() {
                    Some(x) => x,
                    None => continue,
                }
            } else {
                self.poles[seg] - POLE_PAD
            };
            a = a.max(lo);
            b = b.min(hi);
            if b - a <= POLE_PAD {
                continue;
            }
            self.scan_segment(a, b, &mut roots);
        }

        roots.retain(|r| lo < *r && *r < hi);
        roots.dedup_by(|x, y| (*x - *y).abs() <= TOL_ROOT);
        roots
    }

    fn scan_segment(&self, a: f64, b: f64, roots: &mut Vec<f64>) {
        let mut x_prev = a;
        let mut f_prev = self.eval(a);
        for i in 1..=SCAN {
            let x = a + (b - a) * i as f64 / SCAN as f64;
            let f = self.eval(x);
            if f_prev == 0.0 {
                roots.push(x_prev);
            } else if f_prev * f < 0.0 {
                roots.push(self.refine(x_prev, x, f_prev));
            }
            x_prev = x;
            f_prev = f;
        }
        if f_prev == 0.0 {
            roots.push(x_prev);
        }
    }

    fn refine(&self, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
        for _ in 0..200 {
            if b - a <= TOL_ROOT {
                break;
            }
            let mid = 0.5 * (a + b);
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if fa * fm < 0.0 {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        let mut x = 0.5 * (a + b);
        for _ in 0..8 {
            let fx = self.eval(x);
            if fx == 0.0 {
                break;
            }
            let d = self.deriv(x);
            if d == 0.0 {
                break;
            }
            let step = fx / d;
            let next = x - step;
            if next <= a || next >= b {
                break;
            }
            x = next;
            if step.abs() <= 1e-17 * (1.0 + x.abs()) {
                break;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_only() {
        // f(lambda) = lambda on (-1, 1) has the single root 0.
        let f = RationalSecular::new(0.0, 1.0, &[], 1e-9);
        let roots = f.roots_in(-1.0, 1.0);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].abs() <= TOL_ROOT);
    }

    #[test]
    fn single_pole() {
        // f(lambda) = 1 + 1/(0 - lambda) = 1 - 1/lambda has the root 1.
        let f = RationalSecular::new(1.0, 0.0, &[(0.0, 1.0)], 1e-9);
        let roots = f.roots_in(0.0, f64::INFINITY);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn two_pole_quadratic() {
        // The zero set of 1 + 2/(lambda+2) + 1/(lambda+1) is realized by its
        // negation -1 + 2/(-2 - lambda) + 1/(-1 - lambda); clearing
        // denominators gives lambda^2 + 6 lambda + 6 with roots -3 +- sqrt(3).
        let f = RationalSecular::new(-1.0, 0.0, &[(-2.0, 2.0), (-1.0, 1.0)], 1e-9);
        let roots = f.roots_in(f64::NEG_INFINITY, 0.0);
        assert_eq!(roots.len(), 2);
        let expect = [-3.0 - 3.0f64.sqrt(), -3.0 + 3.0f64.sqrt()];
        for (r, e) in roots.iter().zip(expect) {
            assert!((r - e).abs() <= 1e-11, "{r} vs {e}");
        }
    }

    #[test]
    fn pure_pole_roots_interlace() {
        let f = RationalSecular::pure_poles(&[(-4.0, 2.0), (0.0, 3.0), (2.0, 1.0)], 1e-9);
        let roots = f.roots_in(f64::NEG_INFINITY, f64::INFINITY);
        assert_eq!(roots.len(), 2);
        assert!(-4.0 < roots[0] && roots[0] < 0.0);
        assert!(0.0 < roots[1] && roots[1] < 2.0);
        for r in roots {
            assert!(f.eval(r).abs() <= 1e-9);
        }
    }

    #[test]
    fn interval_filter_respected() {
        let f = RationalSecular::new(-1.0, 0.0, &[(-2.0, 2.0), (-1.0, 1.0)], 1e-9);
        let roots = f.roots_in(-2.0, 0.0);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - (-3.0 + 3.0f64.sqrt())).abs() <= 1e-11);
    }

    #[test]
    fn sign_change_across_returned_roots() {
        let f = RationalSecular::new(-1.0, 0.0, &[(-5.0, 4.0), (-2.0, 0.5), (1.0, 2.0)], 1e-9);
        for r in f.roots_in(f64::NEG_INFINITY, f64::INFINITY) {
            assert!(f.eval(r).abs() <= 1e-9);
            let left = f.eval(r - 10.0 * TOL_ROOT);
            let right = f.eval(r + 10.0 * TOL_ROOT);
            assert!(left * right < 0.0);
        }
    }

    #[test]
    fn interval_endpoints_are_excluded() {
        // Root exactly at 1; open intervals must not report it.
        let f = RationalSecular::new(1.0, 0.0, &[(0.0, 1.0)], 1e-9);
        assert!(f.roots_in(1.0, 2.0).is_empty());
        assert!(f.roots_in(0.0, 1.0).is_empty());
        assert_eq!(f.roots_in(0.0, 1.5).len(), 1);
    }

    #[test]
    fn merges_coincident_poles() {
        let f = RationalSecular::pure_poles(&[(1.0, 1.0), (1.0 + 1e-12, 2.0), (3.0, 1.0)], 1e-9);
        assert_eq!(f.poles().len(), 2);
        let roots = f.roots_in(f64::NEG_INFINITY, f64::INFINITY);
        // 3/(1 - x) + 1/(3 - x) = 0  =>  x = 5/2.
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 2.5).abs() <= 1e-11);
    }
}
