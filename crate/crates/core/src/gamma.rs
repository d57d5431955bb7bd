//! Gamma-family evaluators: Γ, the branch-continuous log Γ, the bare Stirling
//! series, and the digamma function.
//!
//! The paper only prescribes the Stirling approximation; the full-plane
//! evaluator recurs the argument rightward until the Stirling series meets the
//! context tolerance and reflects across `Re z = 1/2` for values, so accuracy
//! is uniform at any precision without precomputed constants.
//!
//! Branch bookkeeping: `log_gamma` returns the canonical branch (real on the
//! positive axis, continuous on the upper half-plane). The imaginary part is
//! never reduced mod 2π — both the χ phase and arg ζ need the unreduced value.

use crate::bernoulli::bernoulli_float;
use crate::error::{Error, Result};
use crate::precision::{Complex, PrecisionContext};
use rug::Float;

/// Minimum |w| at which the Stirling series reaches `10^-(digits+3)`.
/// The minimal term of the divergent series is ~ e^(-2π|w|).
fn stirling_radius(ctx: &PrecisionContext) -> f64 {
    0.3665 * (ctx.digits() as f64 + 4.0) + 6.0
}

/// Asymptotic series for log Γ(w). Returns the value, the magnitude of the
/// last included term, and whether the term-size target was met before the
/// series started diverging.
fn stirling_series(w: &Complex, ctx: &PrecisionContext) -> Result<(Complex, f64, bool)> {
    let p = ctx.bits();
    let ln_w = w.ln()?;
    let half = ctx.float(0.5);
    let mut acc = w
        .sub(&Complex::from_real(half))
        .mul(&ln_w)
        .sub(w);
    let half_ln_2pi = Float::with_val(p, ctx.two_pi().ln() / 2u32);
    acc = acc.add(&Complex::from_real(half_ln_2pi));

    // target: relative to the leading term, floored at a small absolute scale
    let scale = acc.abs().max(&ctx.float(1.0));
    let target = Float::with_val(p, ctx.eps() * &scale) / 1000u32;

    let w2 = w.mul(w);
    let mut wpow = w.recip(); // w^(1-2k), k = 1
    let mut last_mag = f64::INFINITY;
    let mut converged = false;
    for k in 1..=400usize {
        let b = bernoulli_float(2 * k, p);
        let denom = Float::with_val(p, (2 * k * (2 * k - 1)) as u64);
        let coeff = b / denom;
        let term = wpow.mul_f(&coeff);
        let mag = term.abs();
        let mag64 = mag.to_f64();
        if mag64 > last_mag {
            // past the minimal term; adding more only diverges
            break;
        }
        acc = acc.add(&term);
        last_mag = mag64;
        if mag <= target {
            converged = true;
            break;
        }
        wpow = wpow.div(&w2);
    }
    Ok((acc, last_mag, converged))
}

fn is_nonpositive_integer(z: &Complex) -> Option<i64> {
    if !z.im.is_zero() {
        return None;
    }
    if z.re > 0 {
        return None;
    }
    let rounded = z.re.clone().round();
    if rounded == z.re {
        rounded.to_integer().and_then(|i| i.to_i64())
    } else {
        None
    }
}

/// Canonical log Γ on the closed upper half-plane (use conjugation below it).
/// The shift recurs `z` rightward to the Stirling radius; each subtracted
/// principal log is continuous there, so the branch is continuous along
/// vertical lines.
pub fn log_gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.im.is_sign_negative() && !z.im.is_zero() {
        return Ok(log_gamma(&z.conj(), ctx)?.conj());
    }
    if let Some(k) = is_nonpositive_integer(z) {
        return Err(Error::Pole {
            op: "log_gamma",
            at: k.to_string(),
        });
    }
    if z.im.is_zero() && z.re <= 0 {
        return Err(Error::Domain {
            op: "log_gamma",
            detail: "negative real axis; use gamma (reflection) instead".into(),
        });
    }
    let r = stirling_radius(ctx);
    let shift = if z.im.clone().abs() >= r {
        0u32
    } else {
        let need = r - z.re.to_f64();
        if need > 0.0 {
            need.ceil() as u32
        } else {
            0
        }
    };
    let zs = Complex {
        re: Float::with_val(ctx.bits(), &z.re + shift),
        im: z.im.clone(),
    };
    let (mut acc, _, converged) = stirling_series(&zs, ctx)?;
    if !converged {
        return Err(Error::Solver {
            op: "log_gamma",
            detail: "stirling series failed to converge after shift".into(),
        });
    }
    for j in 0..shift {
        let term = Complex {
            re: Float::with_val(ctx.bits(), &z.re + j),
            im: z.im.clone(),
        };
        acc = acc.sub(&term.ln()?);
    }
    Ok(acc)
}

/// Γ(z) on the whole plane: conjugation symmetry is exact, poles at
/// non-positive integers are typed errors, and `Re z < 1/2` goes through the
/// reflection formula.
pub fn gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.im.is_sign_negative() && !z.im.is_zero() {
        return Ok(gamma(&z.conj(), ctx)?.conj());
    }
    if let Some(k) = is_nonpositive_integer(z) {
        return Err(Error::Pole {
            op: "gamma",
            at: k.to_string(),
        });
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) sin(πz) = π
        let pi = ctx.pi();
        let one_minus = Complex {
            re: Float::with_val(ctx.bits(), 1u32 - &z.re),
            im: Float::with_val(ctx.bits(), -&z.im),
        };
        let g = gamma(&one_minus, ctx)?;
        let s = z.mul_f(&pi).sin();
        return Ok(Complex::from_real(pi).div(&s.mul(&g)));
    }
    Ok(log_gamma(z, ctx)?.exp())
}

/// The bare Stirling series at `z` itself — no argument shift. Valid in the
/// asymptotic regime `|Im z| >= 10`; reports the achievable accuracy when the
/// series bottoms out above the context tolerance.
pub fn log_gamma_stirling(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.im.clone().abs() < 10 {
        return Err(Error::Domain {
            op: "log_gamma_stirling",
            detail: format!("|Im z| = {:.3} below the asymptotic regime (need >= 10)", z.im.to_f64().abs()),
        });
    }
    if z.im.is_sign_negative() {
        return Ok(log_gamma_stirling(&z.conj(), ctx)?.conj());
    }
    let (acc, last_mag, converged) = stirling_series(z, ctx)?;
    if !converged {
        return Err(Error::Accuracy {
            op: "log_gamma_stirling",
            requested: ctx.eps().to_f64(),
            achievable: last_mag,
        });
    }
    Ok(acc)
}

/// Digamma ψ(z) by the shifted Stirling expansion; conjugation-exact.
pub fn digamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.im.is_sign_negative() && !z.im.is_zero() {
        return Ok(digamma(&z.conj(), ctx)?.conj());
    }
    if let Some(k) = is_nonpositive_integer(z) {
        return Err(Error::Pole {
            op: "digamma",
            at: k.to_string(),
        });
    }
    let p = ctx.bits();
    let r = stirling_radius(ctx);
    let shift = if z.im.clone().abs() >= r {
        0u32
    } else {
        let need = r - z.re.to_f64();
        if need > 0.0 {
            need.ceil() as u32
        } else {
            0
        }
    };
    let w = Complex {
        re: Float::with_val(p, &z.re + shift),
        im: z.im.clone(),
    };
    // ψ(w) = ln w - 1/(2w) - Σ B_2k / (2k w^2k)
    let mut acc = w.ln()?;
    acc = acc.sub(&w.recip().mul_f(&ctx.float(0.5)));
    let w2 = w.mul(&w);
    let mut wpow = w2.recip(); // w^(-2k)
    let target = Float::with_val(p, ctx.eps() * acc.abs().max(&ctx.float(1.0))) / 1000u32;
    let mut last = f64::INFINITY;
    for k in 1..=400usize {
        let coeff = bernoulli_float(2 * k, p) / Float::with_val(p, 2 * k as u32);
        let term = wpow.mul_f(&coeff);
        let mag = term.abs();
        let m = mag.to_f64();
        if m > last {
            break;
        }
        acc = acc.sub(&term);
        last = m;
        if mag <= target {
            break;
        }
        wpow = wpow.div(&w2);
    }
    // ψ(z) = ψ(z+m) - Σ_{j<m} 1/(z+j)
    for j in 0..shift {
        let term = Complex {
            re: Float::with_val(p, &z.re + j),
            im: z.im.clone(),
        };
        acc = acc.sub(&term.recip());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30).unwrap()
    }

    fn assert_close(a: &Complex, b: &Complex, tol: &Float, what: &str) {
        let d = a.sub(b).abs();
        assert!(d < *tol, "{what}: |{a} - {b}| = {d:e} >= {tol:e}");
    }

    #[test]
    fn gamma_of_one() {
        let c = ctx();
        let g = gamma(&c.complex(1.0, 0.0), &c).unwrap();
        let tol = Float::with_val(c.bits(), c.eps() * 10u32);
        assert_close(&g, &c.complex(1.0, 0.0), &tol, "gamma(1)");
    }

    #[test]
    fn gamma_of_half_is_sqrt_pi() {
        let c = ctx();
        let g = gamma(&c.complex(0.5, 0.0), &c).unwrap();
        let want = Complex::from_real(c.pi().sqrt());
        let tol = Float::with_val(c.bits(), c.eps() * 10u32);
        assert_close(&g, &want, &tol, "gamma(1/2)");
    }

    #[test]
    fn recurrence_at_2_plus_3i() {
        // Γ(3+3i)/Γ(2+3i) = 2+3i, a self-check needing no external number
        let c = ctx();
        let a = gamma(&c.complex(3.0, 3.0), &c).unwrap();
        let b = gamma(&c.complex(2.0, 3.0), &c).unwrap();
        let ratio = a.div(&b);
        let tol = Float::with_val(c.bits(), c.eps() * 100u32);
        assert_close(&ratio, &c.complex(2.0, 3.0), &tol, "recurrence");
    }

    #[test]
    fn pole_carries_the_integer() {
        let c = ctx();
        match gamma(&c.complex(-3.0, 0.0), &c) {
            Err(Error::Pole { at, .. }) => assert_eq!(at, "-3"),
            other => panic!("expected pole, got {other:?}"),
        }
        assert!(matches!(
            gamma(&c.complex(0.0, 0.0), &c),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn stirling_matches_gamma_midstrip() {
        // z = (1/2 + 100i)/2: the asymptotic series alone should agree with
        // the shifted evaluator to better than 1e-10 at 30 digits.
        let c = ctx();
        let z = c.complex(0.25, 50.0);
        let lg = log_gamma_stirling(&z, &c).unwrap();
        let g = gamma(&z, &c).unwrap();
        let rel = lg.exp().sub(&g).abs() / g.abs();
        assert!(rel.to_f64() < 1e-10, "rel = {rel:e}");
    }

    #[test]
    fn stirling_branch_is_continuous_along_vertical_line() {
        let c = ctx();
        let mut prev: Option<Float> = None;
        let mut y = 50.0f64;
        while y <= 51.0 {
            let lg = log_gamma_stirling(&c.complex(0.5, y), &c).unwrap();
            if let Some(p) = prev {
                let jump = Float::with_val(c.bits(), &lg.im - &p).abs();
                assert!(jump < c.pi(), "jump {jump} at y={y}");
            }
            prev = Some(lg.im);
            y += 0.01;
        }
    }

    #[test]
    fn stirling_at_huge_ordinate() {
        let c = PrecisionContext::new(40).unwrap();
        let z = c.complex(0.5, 1.0e6);
        let lg = log_gamma_stirling(&z, &c).unwrap();
        assert!(lg.is_finite());
        let g = gamma(&z, &c).unwrap();
        let rel = lg.exp().sub(&g).abs() / g.abs();
        assert!(rel.to_f64() < 1e-10, "rel = {rel:e}");
    }

    #[test]
    fn stirling_regime_guard() {
        let c = ctx();
        assert!(matches!(
            log_gamma_stirling(&c.complex(0.5, 3.0), &c),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn digamma_matches_log_gamma_derivative() {
        let c = ctx();
        let z = c.complex(0.25, 9.0);
        let h = c.float(1e-12);
        let zp = Complex { re: Float::with_val(c.bits(), &z.re + &h), im: z.im.clone() };
        let zm = Complex { re: Float::with_val(c.bits(), &z.re - &h), im: z.im.clone() };
        let fd = log_gamma(&zp, &c).unwrap().sub(&log_gamma(&zm, &c).unwrap())
            .div_f(&Float::with_val(c.bits(), 2u32 * &h));
        let psi = digamma(&z, &c).unwrap();
        let d = fd.sub(&psi).abs();
        assert!(d.to_f64() < 1e-10, "d = {d:e}");
    }

    #[test]
    fn conjugation_is_exact() {
        let c = ctx();
        let z = c.complex(0.35, 21.5);
        let g = gamma(&z, &c).unwrap();
        let gc = gamma(&z.conj(), &c).unwrap();
        assert_eq!(g.re, gc.re);
        assert_eq!(g.im, Float::with_val(c.bits(), -gc.im));
    }
}
