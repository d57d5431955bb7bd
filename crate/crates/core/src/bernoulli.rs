//! Exact Bernoulli numbers, shared by the Stirling and Euler-Maclaurin tails.
//!
//! Computed once as rationals through the defining recurrence and cached for
//! the whole process; converted to floats at the caller's precision.

use rug::{Float, Integer, Rational};
use std::sync::Mutex;

static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B_n` with the convention `B_1 = -1/2`.
pub(crate) fn bernoulli(n: usize) -> Rational {
    let mut cache = CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= n {
        let m = cache.len();
        // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1, k) B_k
        let mut sum = Rational::new();
        for (k, b) in cache.iter().enumerate() {
            let c = Integer::from(m as u32 + 1).binomial(k as u32);
            sum += b * Rational::from(c);
        }
        sum /= -Rational::from(m as u32 + 1);
        cache.push(sum);
    }
    cache[n].clone()
}

/// `B_n` rounded to `prec` bits.
pub(crate) fn bernoulli_float(n: usize, prec: u32) -> Float {
    Float::with_val(prec, bernoulli(n))
}
