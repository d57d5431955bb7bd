//! Working-precision context and complex arithmetic.
//!
//! Every evaluator in this crate is a pure function of `(input, ctx)`; the
//! context fixes the number of decimal digits carried through a computation
//! and the unit tolerance `eps = 10^(1-digits)` derived from it. There is no
//! global precision state.
//!
//! Real scalars are MPFR floats (via `rug`); the complex layer on top is
//! implemented here with explicit principal branches for `ln` and `sqrt`.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::Float;

const LOG2_10: f64 = 3.321928094887362;

/// Guard bits carried beyond the requested decimal digits. They absorb
/// rounding in long dot products and the argument reduction of sin/cos at
/// large ordinates.
const GUARD_BITS: u32 = 32;

/// Decimal working precision plus its derived unit tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    bits: u32,
}

impl PrecisionContext {
    /// A context carrying `digits` decimal digits. Fails below 15 digits.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 15 {
            return Err(Error::InvalidDigits(digits));
        }
        let bits = (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS;
        Ok(Self { digits, bits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits used for scalars under this context.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Unit tolerance `10^(1-digits)`, always recomputed from `digits`.
    pub fn eps(&self) -> Float {
        Float::with_val(self.bits, 10u32).pow((1i64 - self.digits as i64) as i32)
    }

    /// Same context widened by `extra` decimal digits (internal guard for
    /// cancellation-heavy algorithms).
    pub fn widened(&self, extra: u32) -> Self {
        let digits = self.digits + extra;
        let bits = (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS;
        Self { digits, bits }
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.bits, v)
    }

    pub fn float_u(&self, v: u64) -> Float {
        Float::with_val(self.bits, v)
    }

    pub fn parse(&self, s: &str) -> Result<Float> {
        Float::parse(s)
            .map(|p| Float::with_val(self.bits, p))
            .map_err(|e| Error::Domain {
                op: "parse",
                detail: format!("{s:?}: {e}"),
            })
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    pub fn two_pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi) * 2u32
    }

    pub fn euler_e(&self) -> Float {
        Float::with_val(self.bits, 1u32).exp()
    }

    pub fn ln_pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi).ln()
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex {
            re: self.float(re),
            im: self.float(im),
        }
    }
}

use rug::ops::Pow;

/// A complex value as an explicit (re, im) pair of MPFR floats.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let p = re.prec();
        Self {
            re,
            im: Float::new(p),
        }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self {
            re: Float::new(ctx.bits()),
            im: Float::new(ctx.bits()),
        }
    }

    fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, -&self.re),
            im: Float::with_val(p, -&self.im),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re * &rhs.re) - Float::with_val(p, &self.im * &rhs.im),
            im: Float::with_val(p, &self.re * &rhs.im) + Float::with_val(p, &self.im * &rhs.re),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let d = rhs.norm_sqr();
        let num = self.mul(&rhs.conj());
        Self {
            re: Float::with_val(p, &num.re / &d),
            im: Float::with_val(p, &num.im / &d),
        }
    }

    pub fn mul_f(&self, rhs: &Float) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re * rhs),
            im: Float::with_val(p, &self.im * rhs),
        }
    }

    pub fn div_f(&self, rhs: &Float) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re / rhs),
            im: Float::with_val(p, &self.im / rhs),
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        Self {
            re: Float::with_val(p, &self.re / &d),
            im: -Float::with_val(p, &self.im / &d),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &r * &c),
            im: Float::with_val(p, &r * &s),
        }
    }

    /// Principal natural logarithm; the imaginary part lies in (-pi, pi].
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain {
                op: "ln",
                detail: "log of zero".into(),
            });
        }
        Ok(Self {
            re: self.abs().ln(),
            im: self.arg(),
        })
    }

    /// Principal square root (real part nonnegative).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self {
                re: Float::new(p),
                im: Float::new(p),
            };
        }
        let r = self.abs().sqrt();
        let half_arg = self.arg() / 2u32;
        let (s, c) = half_arg.sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &r * &c),
            im: Float::with_val(p, &r * &s),
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sh, ch) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        Self {
            re: Float::with_val(p, &s * &ch),
            im: Float::with_val(p, &c * &sh),
        }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sh, ch) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        Self {
            re: Float::with_val(p, &c * &ch),
            im: -Float::with_val(p, &s * &sh),
        }
    }

    pub fn sinh(&self) -> Self {
        let p = self.prec();
        let (sh, ch) = Float::with_val(p, &self.re).sinh_cosh(Float::new(p));
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &sh * &c),
            im: Float::with_val(p, &ch * &s),
        }
    }

    pub fn cosh(&self) -> Self {
        let p = self.prec();
        let (sh, ch) = Float::with_val(p, &self.re).sinh_cosh(Float::new(p));
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &ch * &c),
            im: Float::with_val(p, &sh * &s),
        }
    }

    /// `self^w` through the principal logarithm.
    pub fn pow(&self, w: &Self) -> Result<Self> {
        Ok(w.mul(&self.ln()?).exp())
    }

    /// `self^x` for real `x` through the principal logarithm.
    pub fn pow_f(&self, x: &Float) -> Result<Self> {
        let l = self.ln()?;
        Ok(l.mul_f(x).exp())
    }
}

impl std::fmt::Display for Complex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:e}, {:e})", self.re, self.im)
    }
}

/// `base^x` for a real base and real exponent, at the precision of `base`.
pub fn real_pow(base: &Float, x: &Float) -> Float {
    Float::with_val(base.prec().max(x.prec()), base.pow_ref(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30).unwrap()
    }

    #[test]
    fn digits_floor_enforced() {
        assert!(PrecisionContext::new(14).is_err());
        assert!(PrecisionContext::new(15).is_ok());
    }

    #[test]
    fn eps_tracks_digits() {
        let c = PrecisionContext::new(20).unwrap();
        let expect = Float::with_val(c.bits(), 10u32).pow(-19);
        assert_eq!(c.eps(), expect);
    }

    #[test]
    fn exp_of_zero_is_one() {
        let c = ctx();
        let z = Complex::zero(&c);
        let e = z.exp();
        assert_eq!(e.re, 1u32);
        assert!(e.im.is_zero());
    }

    #[test]
    fn sinh_kernel_vanishes_on_critical_line() {
        // sinh(1/2 (z - 1/2) log t) at z = 1/2 is sinh(0) = 0 for any t > 1.
        let c = ctx();
        for t in [2.0f64, 10.0, 1e6] {
            let z = c.complex(0.5, 0.0);
            let half = c.float(0.5);
            let a = z.sub(&Complex::from_real(half.clone())).mul_f(&half);
            let v = a.mul_f(&c.float(t).ln()).sinh();
            assert!(v.re.is_zero() && v.im.is_zero(), "t={t}");
        }
    }

    #[test]
    fn principal_log_of_minus_one() {
        let c = ctx();
        let z = c.complex(-1.0, 0.0);
        let l = z.ln().unwrap();
        assert!(l.re.is_zero());
        let diff = Float::with_val(c.bits(), &l.im - &c.pi());
        assert!(diff.abs() < c.eps());
    }

    #[test]
    fn log_of_zero_is_domain_error() {
        let c = ctx();
        assert!(matches!(
            Complex::zero(&c).ln(),
            Err(Error::Domain { op: "ln", .. })
        ));
    }

    #[test]
    fn division_round_trip() {
        let c = ctx();
        let a = c.complex(3.25, -1.5);
        let b = c.complex(-0.75, 2.0);
        let q = a.div(&b).mul(&b);
        let d = q.sub(&a).abs();
        assert!(d < c.eps());
    }

    #[test]
    fn principal_sqrt_branch() {
        let c = ctx();
        let z = c.complex(-4.0, 0.0);
        let r = z.sqrt();
        // principal branch: sqrt(-4) = 2i
        assert!(r.re.clone().abs() < c.eps());
        let diff = Float::with_val(c.bits(), &r.im - 2u32);
        assert!(diff.abs() < c.eps());
    }

    #[test]
    fn deterministic_reevaluation() {
        let c = ctx();
        let z = c.complex(0.3, 41.7);
        let a = z.exp().ln().unwrap();
        let b = z.exp().ln().unwrap();
        assert_eq!(a.re, b.re);
        assert_eq!(a.im, b.im);
    }
}
