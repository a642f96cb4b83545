//! Real-root isolation for low-degree polynomials.
//!
//! Roots are bracketed between the real roots of the derivative (found
//! recursively), so every sub-interval is monotone and holds at most one
//! root. Each bracket is then refined with safeguarded Newton steps.

/// Polynomial with coefficients in ascending order: `c[0] + c[1] x + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut f = 0.0;
        let mut df = 0.0;
        for &c in self.coeffs.iter().rev() {
            df = df * x + f;
            f = f * x + c;
        }
        (f, df)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::new(vec![0.0]);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    /// Cauchy bound: every real root satisfies `|x| <= bound`.
    pub fn root_bound(&self) -> f64 {
        let lead = *self.coeffs.last().unwrap();
        if lead == 0.0 {
            return 0.0;
        }
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
        1.0 + m
    }

    /// All real roots in `[lo, hi]`, ascending. Roots of even multiplicity are
    /// reported once, at the derivative root that touches zero.
    pub fn real_roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let deg = self.degree();
        if deg == 0 {
            return Vec::new();
        }
        if deg == 1 {
            let r = -self.coeffs[0] / self.coeffs[1];
            return if (lo..=hi).contains(&r) { vec![r] } else { Vec::new() };
        }
        let crit = self.derivative().real_roots_in(lo, hi);
        let mut knots = Vec::with_capacity(crit.len() + 2);
        knots.push(lo);
        knots.extend(crit.iter().copied().filter(|&c| c > lo && c < hi));
        knots.push(hi);

        let scale = self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max).max(1.0);
        let touch_tol = 64.0 * f64::EPSILON * scale;
        let mut roots: Vec<f64> = Vec::new();
        let push = |r: f64, roots: &mut Vec<f64>| {
            if roots.last().is_none_or(|&last| (r - last).abs() > 1e-12 * (1.0 + r.abs())) {
                roots.push(r);
            }
        };
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let fa = self.eval(a);
            let fb = self.eval(b);
            if fa == 0.0 {
                push(a, &mut roots);
            }
            if fa.signum() * fb.signum() < 0.0 {
                push(self.refine(a, b, fa), &mut roots);
            } else if fa != 0.0 && fb != 0.0 {
                // A tangential (even-multiplicity) root sits at a derivative root.
                if fb.abs() <= touch_tol && b < hi {
                    push(b, &mut roots);
                }
            }
        }
        if self.eval(hi) == 0.0 {
            push(hi, &mut roots);
        }
        roots
    }

    /// All real roots, ascending.
    pub fn real_roots(&self) -> Vec<f64> {
        let b = self.root_bound();
        self.real_roots_in(-b, b)
    }

    /// Refines a sign-change bracket `[a, b]` on a monotone interval.
    pub fn refine(&self, mut a: f64, mut b: f64, fa: f64) -> f64 {
        let rising = fa < 0.0;
        let mut x = 0.5 * (a + b);
        for _ in 0..200 {
            let (f, df) = self.eval_with_derivative(x);
            if f == 0.0 {
                return x;
            }
            if (f < 0.0) == rising {
                a = x;
            } else {
                b = x;
            }
            let newton = x - f / df;
            let next = if df != 0.0 && newton > a && newton < b {
                newton
            } else {
                0.5 * (a + b)
            };
            if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-300) || b - a <= f64::EPSILON * a.abs().max(b.abs()) {
                return next;
            }
            x = next;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(roots: &[f64]) -> Poly {
        let mut c = vec![1.0];
        for &r in roots {
            let mut n = vec![0.0; c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                n[k + 1] += ck;
                n[k] -= r * ck;
            }
            c = n;
        }
        Poly::new(c)
    }

    #[test]
    fn quintic_with_five_real_roots() {
        let want = [-2.0, -0.5, 0.1, 0.7, 3.0];
        let got = from_roots(&want).real_roots();
        assert_eq!(got.len(), 5);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{g} vs {w}");
        }
    }

    #[test]
    fn double_root_reported_once() {
        let got = from_roots(&[1.0, 1.0, -1.0]).real_roots();
        assert_eq!(got.len(), 2, "{got:?}");
        assert!((got[0] + 1.0).abs() < 1e-12);
        assert!((got[1] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn no_real_roots() {
        // x^4 + 1
        assert!(Poly::new(vec![1.0, 0.0, 0.0, 0.0, 1.0]).real_roots().is_empty());
    }

    #[test]
    fn trailing_zero_coefficients_trimmed() {
        let p = Poly::new(vec![-1.0, 1.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.real_roots(), vec![1.0]);
    }

    #[test]
    fn horner_matches_naive() {
        let p = Poly::new(vec![0.3, -1.0, 2.0, 0.5]);
        let x: f64 = 1.7;
        let naive = 0.3 - x + 2.0 * x * x + 0.5 * x.powi(3);
        let (f, df) = p.eval_with_derivative(x);
        assert!((f - naive).abs() < 1e-12);
        assert!((df - (-1.0 + 4.0 * x + 1.5 * x * x)).abs() < 1e-12);
    }
}
