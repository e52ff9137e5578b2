#![allow(dead_code)]

use orc_core::{embed_rational, OrientedReal, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

pub fn hat(n: i64, d: i64) -> OrientedReal {
    embed_rational(&q(n, d))
}

/// `k·2⁻ᵉ` for `k` in `lo·2ᵉ ..= hi·2ᵉ`.
pub fn dyadic_grid(lo: i64, hi: i64, e: u32) -> Vec<Rational> {
    let d = 1i64 << e;
    (lo * d..=hi * d).map(|k| q(k, d)).collect()
}
