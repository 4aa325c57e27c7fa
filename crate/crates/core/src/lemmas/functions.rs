//! The auxiliary functions `g_A`, `g_B`, `h_1 … h_4` and their analytic
//! derivatives, with the projection area normalized to `m = 1`.

use serde::Serialize;

use super::LemmaError;
use crate::closed_forms::{f_unchecked, R_STAR};

/// Parameters of the one-variable inequalities: the volume ratio `r`, the
/// overlap `p`, and the projection ratios `m_A/m`, `m_B/m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaContext {
    pub r: f64,
    pub p: f64,
    pub ratio_a: f64,
    pub ratio_b: f64,
}

impl LemmaContext {
    /// Requires `r ∈ [1/2, 2]`, `p ∈ [0, 1/3]` and
    /// `ratio_a ≥ (2+p)/3 > (1+2p)/3 ≥ ratio_b > 0`.
    pub fn new(r: f64, p: f64, ratio_a: f64, ratio_b: f64) -> Result<LemmaContext, LemmaError> {
        let ctx = LemmaContext { r, p, ratio_a, ratio_b };
        if let Some(what) = ctx.hypothesis_violation() {
            return Err(LemmaError::OutsideHypothesis { what, context: ctx });
        }
        Ok(ctx)
    }

    /// A context that skips validation, for probing outside the hypotheses.
    pub fn unchecked(r: f64, p: f64, ratio_a: f64, ratio_b: f64) -> LemmaContext {
        LemmaContext { r, p, ratio_a, ratio_b }
    }

    pub fn hypothesis_violation(&self) -> Option<&'static str> {
        let LemmaContext { r, p, ratio_a, ratio_b } = *self;
        if ![r, p, ratio_a, ratio_b].iter().all(|v| v.is_finite()) {
            Some("parameters must be finite")
        } else if !(0.5..=2.0).contains(&r) {
            Some("r in [1/2, 2]")
        } else if !(0.0..=1.0 / 3.0).contains(&p) {
            Some("p in [0, 1/3]")
        } else if ratio_a < (2.0 + p) / 3.0 || ratio_a > 1.0 {
            Some("m_A/m in [(2+p)/3, 1]")
        } else if ratio_b <= 0.0 || ratio_b > (1.0 + 2.0 * p) / 3.0 {
            Some("m_B/m in (0, (1+2p)/3]")
        } else {
            None
        }
    }

    pub fn with_r(&self, r: f64) -> LemmaContext {
        LemmaContext { r, ..*self }
    }

    /// `√6 / √(1 + p/2)`; twice this is `4√6/√(4+2p)`.
    pub fn c(&self) -> f64 {
        6f64.sqrt() / (1.0 + self.p / 2.0).sqrt()
    }

    /// `g_A^r(α)` on `[0, r)`.
    pub fn g_a(&self, alpha: f64) -> Result<f64, LemmaError> {
        check_domain("alpha", alpha, self.r)?;
        Ok(self.g_a_unchecked(alpha))
    }

    /// `g_B^r(β)` on `[0, 1/r)`.
    pub fn g_b(&self, beta: f64) -> Result<f64, LemmaError> {
        check_domain("beta", beta, 1.0 / self.r)?;
        Ok(self.g_b_unchecked(beta))
    }

    pub fn h1(&self, x: f64) -> Result<f64, LemmaError> {
        check_domain("x", x, self.r)?;
        Ok(self.h1_unchecked(x))
    }

    pub fn h2(&self, x: f64) -> Result<f64, LemmaError> {
        check_domain("x", x, 1.0 / self.r)?;
        Ok(self.h2_unchecked(x))
    }

    pub fn h3(&self, x: f64) -> Result<f64, LemmaError> {
        check_domain("x", x, self.r)?;
        Ok(self.h3_unchecked(x))
    }

    pub fn h4(&self, x: f64) -> Result<f64, LemmaError> {
        check_domain("x", x, 1.0 / self.r)?;
        Ok(self.h4_unchecked(x))
    }

    #[inline]
    pub(crate) fn g_a_unchecked(&self, alpha: f64) -> f64 {
        let denom = ((1.0 + alpha) * self.ratio_a).sqrt().min(1.0);
        (1.0 + alpha) / (self.r - alpha) * (f_unchecked(alpha) / denom - 2.0 * self.c())
    }

    #[inline]
    pub(crate) fn g_b_unchecked(&self, beta: f64) -> f64 {
        let denom = ((1.0 + beta) * self.ratio_b).sqrt().min(1.0);
        (1.0 + beta) / (1.0 - self.r * beta) * (f_unchecked(beta) / denom - 2.0 * self.c())
    }

    #[inline]
    pub(crate) fn h1_unchecked(&self, x: f64) -> f64 {
        (1.0 + x) / (self.r - x) * (self.c() - f_unchecked(x) / 2.0)
    }

    #[inline]
    pub(crate) fn h2_unchecked(&self, x: f64) -> f64 {
        (1.0 + x) / (1.0 - self.r * x) * (self.c() - f_unchecked(x) / 2.0)
    }

    #[inline]
    pub(crate) fn h3_unchecked(&self, x: f64) -> f64 {
        let scaled = f_unchecked(x) / (2.0 * self.ratio_a.sqrt() * (1.0 + x).sqrt());
        (1.0 + x) / (self.r - x) * (self.c() - scaled)
    }

    #[inline]
    pub(crate) fn h4_unchecked(&self, x: f64) -> f64 {
        let scaled = f_unchecked(x) / (2.0 * self.ratio_b.sqrt() * (1.0 + x).sqrt());
        (1.0 + x) / (1.0 - self.r * x) * (self.c() - scaled)
    }

    /// Derivative of `h_1^r`, piecewise on `[0, r*]`, `[r*, 1/2]`, `[1/2, r)`.
    pub fn h1_prime(&self, x: f64) -> f64 {
        let r = self.r;
        let c = self.c();
        let root = (x * (x + 1.0)).sqrt();
        if x <= R_STAR {
            let c1 = c - 2.0;
            (2.0 * c1 * (1.0 + r) * root - (1.0 + 2.0 * r) * x - r) / (2.0 * (x - r).powi(2) * root)
        } else if x <= 0.5 {
            ((2.0 + 2.0 * r) * c * root - 2.0 * x.sqrt() * (x + 2.0 + r) - 2f64.sqrt() * ((1.0 + 2.0 * r) * x + r))
                / (2.0 * (x - r).powi(2) * root)
        } else {
            (c - 6f64.sqrt()) * (1.0 + r) / (r - x).powi(2)
        }
    }

    /// Derivative of `h_3^r` on `[0, r*]` and `[r*, 1/2]`.
    pub fn h3_prime(&self, x: f64) -> f64 {
        let r = self.r;
        let s = 1.0 / self.ratio_a.sqrt();
        let bracket = if x <= R_STAR {
            self.c() * (1.0 + r) - s * (r + x + 2.0) / (1.0 + x).sqrt() - s * (r + x) / (2.0 * x.sqrt())
        } else {
            self.c() * (1.0 + r) - 2.0 * s - s * (r + x) / (2.0 * x).sqrt()
        };
        bracket / (r - x).powi(2)
    }

    /// Derivative of `h_4^{1/2}` on `[0, r*]`, `[r*, 1/2]` and `[1/2, 2)`;
    /// the context's own `r` is ignored.
    pub fn h4_half_prime(&self, x: f64) -> f64 {
        let s = 1.0 / self.ratio_b.sqrt();
        let six_c = 6.0 * self.c();
        let bracket = if x <= R_STAR {
            six_c - s * (2.0 * x + 8.0) / (1.0 + x).sqrt() - s * (x + 2.0) / x.sqrt()
        } else if x <= 0.5 {
            six_c - 4.0 * s - s * 2f64.sqrt() * (x + 2.0) / x.sqrt()
        } else {
            six_c - s * 6f64.sqrt() * (x + 4.0) / (1.0 + x).sqrt()
        };
        bracket / (2.0 - x).powi(2)
    }
}

fn check_domain(name: &'static str, x: f64, pole: f64) -> Result<(), LemmaError> {
    if x.is_finite() && x >= 0.0 && x < pole {
        Ok(())
    } else {
        Err(LemmaError::OutsideDomain { name, value: x, pole })
    }
}

/// Behaviour of `h_4^{1/2}(x)` as `x → 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PoleLimit {
    NegativeInfinity,
    Finite(f64),
    PositiveInfinity,
}

impl LemmaContext {
    /// The limit is governed by `K = C − √2/√(m_B/m)`, the bracket of
    /// `h_4^{1/2}` at `x = 2`: negative `K` sends it to −∞, and at `K = 0` the
    /// limit is `−√2/√(m_B/m)` (which is `−√6` at `p = 0`, `m_B/m = 1/3`).
    pub fn h4_half_limit_at_two(&self) -> PoleLimit {
        let s = 1.0 / self.ratio_b.sqrt();
        let k = self.c() - s * 2f64.sqrt();
        if k.abs() <= 1e-12 {
            PoleLimit::Finite(-s * 2f64.sqrt())
        } else if k < 0.0 {
            PoleLimit::NegativeInfinity
        } else {
            PoleLimit::PositiveInfinity
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    #[test]
    fn g_values_at_zero() {
        let ctx = LemmaContext::new(1.0, 0.0, 2.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!(ctx.g_a(0.0).unwrap().abs() < EPS);
        let half = ctx.with_r(0.5);
        let expected = 4.0 * 3f64.sqrt() - 2.0 * 6f64.sqrt();
        assert!((half.g_b(0.0).unwrap() - expected).abs() < EPS);
        assert!(half.g_b(0.0).unwrap() > 0.0);
    }

    #[test]
    fn h_values() {
        let ctx = LemmaContext::new(1.0, 0.0, 1.0, 1.0 / 3.0).unwrap();
        assert!((ctx.h1(0.0).unwrap() - (6f64.sqrt() - 2.0)).abs() < EPS);
        let half = ctx.with_r(0.5);
        let expected = 2.0 * (6f64.sqrt() - 2.0 * 3f64.sqrt());
        assert!((half.h4(0.5).unwrap() - expected).abs() < EPS);
        assert!((half.h4(0.0).unwrap() - (6f64.sqrt() - 2.0 * 3f64.sqrt())).abs() < EPS);
    }

    #[test]
    fn poles_and_hypotheses_are_rejected() {
        let ctx = LemmaContext::new(1.0, 0.0, 1.0, 0.2).unwrap();
        assert!(matches!(ctx.g_a(1.0), Err(LemmaError::OutsideDomain { .. })));
        assert!(matches!(ctx.g_b(-0.1), Err(LemmaError::OutsideDomain { .. })));
        assert!(matches!(LemmaContext::new(1.0, 0.0, 0.5, 0.2), Err(LemmaError::OutsideHypothesis { .. })));
        assert!(matches!(LemmaContext::new(1.0, 0.5, 1.0, 0.2), Err(LemmaError::OutsideHypothesis { .. })));
        assert!(matches!(LemmaContext::new(3.0, 0.0, 1.0, 0.2), Err(LemmaError::OutsideHypothesis { .. })));
    }

    #[test]
    fn limit_at_two() {
        let ctx = LemmaContext::new(0.5, 0.0, 1.0, 1.0 / 3.0).unwrap();
        match ctx.h4_half_limit_at_two() {
            PoleLimit::Finite(v) => assert!((v + 6f64.sqrt()).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        // approach the pole numerically
        let near = ctx.h4(2.0 - 1e-7).unwrap();
        assert!((near + 6f64.sqrt()).abs() < 1e-5);
        let inner = LemmaContext::new(0.5, 0.0, 1.0, 0.3).unwrap();
        assert_eq!(inner.h4_half_limit_at_two(), PoleLimit::NegativeInfinity);
    }
}
