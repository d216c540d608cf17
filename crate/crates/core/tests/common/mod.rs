//! Reference implementations used only by the tests. None of them share
//! code with the library: power series summed in plain order for small
//! arguments, and direct quadrature of integral representations otherwise.

#![allow(dead_code)]

use std::f64::consts::PI;

pub const EULER: f64 = 0.577_215_664_901_532_860_6;

/// `Si(x)` by its Maclaurin series; fine for `x ≤ 8`.
pub fn si_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    for n in 1..60 {
        let k = (2 * n + 1) as f64;
        term *= -x * x / ((k - 1.0) * k);
        sum += term / k;
    }
    sum
}

/// `Ci(x)` by its series; fine for `0 < x ≤ 8`.
pub fn ci_series(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..60 {
        let k = (2 * n) as f64;
        term *= -x * x / ((k - 1.0) * k);
        sum += term / k;
    }
    EULER + x.ln() + sum
}

/// `J_n(x)` for `n ∈ {0, 1}` by its series; fine for `x ≤ 12`.
pub fn jn_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // 0! = 1! = 1
    let mut term = half.powi(n as i32);
    let mut sum = term;
    for m in 1..80 {
        term *= -half * half / (m as f64 * (m + n) as f64);
        sum += term;
    }
    sum
}

/// Composite Simpson rule with `2n` intervals.
pub fn simpson(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let m = 2 * n;
    let h = (b - a) / m as f64;
    let mut sum = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + h * i as f64);
    }
    sum * h / 3.0
}

/// `J_n(x) = (1/π) ∫_0^π cos(nτ − x sin τ) dτ`; the trapezoid rule is
/// spectrally accurate for this periodic integrand.
pub fn jn_integral(n: u32, x: f64) -> f64 {
    let m = 400;
    let h = PI / m as f64;
    let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
    let mut sum = 0.5 * (f(0.0) + f(PI));
    for i in 1..m {
        sum += f(h * i as f64);
    }
    sum * h / PI
}

/// `Si(x)` by Simpson on `sin t / t`.
pub fn si_integral(x: f64) -> f64 {
    let sinc = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
    simpson(0.0, x, 20_000, sinc)
}

/// `Ci(x) = γ + ln x + ∫_0^x (cos t − 1)/t dt`.
pub fn ci_integral(x: f64) -> f64 {
    let g = |t: f64| if t == 0.0 { 0.0 } else { (t.cos() - 1.0) / t };
    EULER + x.ln() + simpson(0.0, x, 20_000, g)
}
