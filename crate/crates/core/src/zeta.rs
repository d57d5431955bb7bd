//! ζ, χ and ξ evaluators.
//!
//! ζ is continued to the whole plane by Euler-Maclaurin summation with the
//! cutoff N = max(20, 0.8|Im s| + 2 digits) and a Bernoulli tail stopped by
//! term magnitude. No Riemann-Siegel main series is used; Euler-Maclaurin is
//! accurate and fast at desk-scale ordinates.
//!
//! Conjugation symmetry f(conj s) = conj f(s) is exact: every evaluator
//! reduces Im s < 0 through conjugation before computing.

use crate::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::precision::{Complex, PrecisionContext};
use rug::{Float, Rational};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Real and imaginary parts of ξ(x + iy).
#[derive(Debug, Clone)]
pub struct XiDecomposition {
    pub u: Float,
    pub v: Float,
}

fn ln_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Float>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Float>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Natural logs of 1..=n at `prec` bits, shared across calls.
fn ln_table(n: usize, prec: u32) -> Arc<Vec<Float>> {
    let mut map = ln_cache().lock().unwrap();
    let entry = map.entry(prec).or_insert_with(|| Arc::new(Vec::new()));
    if entry.len() < n {
        let mut v: Vec<Float> = entry.as_ref().clone();
        v.reserve(n - v.len());
        for k in v.len() + 1..=n {
            v.push(Float::with_val(prec, k as u64).ln());
        }
        *entry = Arc::new(v);
    }
    Arc::clone(entry)
}

/// Euler-Maclaurin cutoff from the context and ordinate.
fn em_cutoff(t_abs: f64, digits: u32) -> usize {
    let n = 0.8 * t_abs + 2.0 * digits as f64;
    (n.ceil() as usize).max(20)
}

/// Riemann ζ by Euler-Maclaurin, valid on the whole plane except s = 1.
pub fn zeta(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if s.im.is_zero() && s.re == 1 {
        return Err(Error::Pole {
            op: "zeta",
            at: "1".into(),
        });
    }
    if s.im.is_sign_negative() && !s.im.is_zero() {
        return Ok(zeta(&s.conj(), ctx)?.conj());
    }
    let p = ctx.bits();
    let sigma = s.re.to_f64();
    let t_abs = s.im.to_f64().abs();
    let n_cut = em_cutoff(t_abs, ctx.digits());
    let lns = ln_table(n_cut, p);

    // main sum 1..N-1
    let mut acc_re = Float::with_val(p, 1u32); // n = 1 term
    let mut acc_im = Float::new(p);
    let critical = s.re == 0.5f64;
    for n in 2..n_cut {
        let ln_n = &lns[n - 1];
        let amp = if critical {
            Float::with_val(p, n as u64).sqrt().recip()
        } else {
            (-Float::with_val(p, &s.re * ln_n)).exp()
        };
        let phase = -Float::with_val(p, &s.im * ln_n);
        let (sin_p, cos_p) = phase.sin_cos(Float::new(p));
        acc_re += Float::with_val(p, &amp * &cos_p);
        acc_im += Float::with_val(p, &amp * &sin_p);
    }
    let mut acc = Complex::new(acc_re, acc_im);

    // N^{-s}, boundary and pole terms
    let nf = Float::with_val(p, n_cut as u64);
    let ln_n = nf.clone().ln();
    let n_pow = s.mul_f(&ln_n).neg().exp(); // N^{-s}
    acc = acc.add(&n_pow.mul_f(&ctx.float(0.5)));
    let s_minus_1 = Complex {
        re: Float::with_val(p, &s.re - 1u32),
        im: s.im.clone(),
    };
    acc = acc.add(&n_pow.mul_f(&nf).div(&s_minus_1));

    // Bernoulli tail: T_k = B_2k/(2k)! (s)_(2k-1) N^{-s-2k+1}
    let n2 = Float::with_val(p, nf.square_ref());
    let mut term = s.mul(&n_pow).div_f(&nf).mul_f(&ctx.float(1.0 / 12.0));
    let scale = acc.abs().max(&ctx.float(1.0));
    let target = Float::with_val(p, ctx.eps() * &scale) / 1000u32;
    let k_cap = (2 * ctx.digits() + 24) as usize;
    let k_min = if sigma < 0.0 {
        ((2.0 - sigma) / 2.0).ceil() as usize
    } else {
        1
    };
    let mut converged = false;
    let mut last_mag = f64::INFINITY;
    for k in 1..=k_cap {
        acc = acc.add(&term);
        let mag = term.abs();
        let mag64 = mag.to_f64();
        if k >= k_min && mag <= target {
            converged = true;
            break;
        }
        if mag64 > last_mag && k >= k_min {
            break; // asymptotic tail bottomed out
        }
        last_mag = mag64;
        // ratio to the next term
        let r = Rational::from(bernoulli(2 * k + 2))
            / (bernoulli(2 * k) * Rational::from(((2 * k + 1) * (2 * k + 2)) as u64));
        let f1 = Complex {
            re: Float::with_val(p, &s.re + (2 * k - 1) as u64),
            im: s.im.clone(),
        };
        let f2 = Complex {
            re: Float::with_val(p, &s.re + (2 * k) as u64),
            im: s.im.clone(),
        };
        term = term
            .mul(&f1)
            .mul(&f2)
            .div_f(&n2)
            .mul_f(&Float::with_val(p, r));
    }
    if !converged {
        return Err(Error::Accuracy {
            op: "zeta",
            requested: ctx.eps().to_f64(),
            achievable: last_mag,
        });
    }
    Ok(acc)
}

/// χ(s) = π^(-s/2) Γ(s/2) ζ(s); poles at 0 and 1.
pub fn chi(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if s.im.is_zero() && (s.re.is_zero() || s.re == 1) {
        return Err(Error::Pole {
            op: "chi",
            at: format!("{}", s.re.to_f64()),
        });
    }
    if s.im.is_sign_negative() && !s.im.is_zero() {
        return Ok(chi(&s.conj(), ctx)?.conj());
    }
    let half = ctx.float(0.5);
    let s_half = s.mul_f(&half);
    let pi_pow = s_half.mul_f(&ctx.ln_pi()).neg().exp();
    let g = gamma(&s_half, ctx)?;
    Ok(pi_pow.mul(&g).mul(&zeta(s, ctx)?))
}

/// ξ(s) = 1/2 s(s-1) χ(s), entire. The polynomial prefactor is folded into
/// Γ(s/2 + 1) so nothing blows up near 0 and 1; the exact values at those two
/// points are the limit 1/2.
pub fn xi(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if s.im.is_sign_negative() && !s.im.is_zero() {
        return Ok(xi(&s.conj(), ctx)?.conj());
    }
    if s.im.is_zero() && (s.re.is_zero() || s.re == 1) {
        return Ok(Complex::from_real(ctx.float(0.5)));
    }
    if s.re < 0 {
        // dodge the Γ poles at s = -2, -4, ... through the exact symmetry
        // ξ(s) = ξ(1-s); the recursive call conjugation-reduces 1-s itself
        let reflected = Complex {
            re: Float::with_val(ctx.bits(), 1u32 - &s.re),
            im: Float::with_val(ctx.bits(), -&s.im),
        };
        return xi(&reflected, ctx);
    }
    xi_inner(s, ctx)
}

/// (s-1) π^(-s/2) Γ(s/2 + 1) ζ(s) — equal to ξ(s), regular on Re s >= 0
/// away from s = 1 where the ζ pole cancels (handled by the caller).
fn xi_inner(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.bits();
    let half = ctx.float(0.5);
    let s_half_p1 = Complex {
        re: Float::with_val(p, &s.re * &half + 1u32),
        im: Float::with_val(p, &s.im * &half),
    };
    let pi_pow = s.mul_f(&half).mul_f(&ctx.ln_pi()).neg().exp();
    let g = gamma(&s_half_p1, ctx)?;
    let s_minus_1 = Complex {
        re: Float::with_val(p, &s.re - 1u32),
        im: s.im.clone(),
    };
    Ok(s_minus_1.mul(&pi_pow).mul(&g).mul(&zeta(s, ctx)?))
}

/// (u, v) = (Re ξ, Im ξ) at x + iy.
pub fn xi_uv(x: &Float, y: &Float, ctx: &PrecisionContext) -> Result<XiDecomposition> {
    let s = Complex {
        re: Float::with_val(ctx.bits(), x),
        im: Float::with_val(ctx.bits(), y),
    };
    let value = xi(&s, ctx)?;
    Ok(XiDecomposition {
        u: value.re,
        v: value.im,
    })
}
