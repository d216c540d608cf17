//! Sine and cosine integrals and the Bessel functions `J0`, `J1` for
//! non-negative real arguments.

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this argument Si/Ci are summed from their power series.
const SICI_SERIES_MAX: f64 = 4.0;
const BESSEL_SERIES_MAX: f64 = 12.0;
const BESSEL_ASYMPTOTIC_MIN: f64 = 25.0;

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sine integral `Si(x) = ∫_0^x sin t / t dt`.
pub fn si(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(invalid(format!("si requires x >= 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    Ok(sici(x).0)
}

/// Cosine integral `Ci(x) = γ + ln x + ∫_0^x (cos t − 1)/t dt`.
pub fn ci(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(invalid(format!("ci requires x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(sici(x).1)
}

/// `(Si(x), Ci(x))` for finite `x > 0`.
fn sici(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    if x <= SICI_SERIES_MAX {
        let mut s = Compensated::default();
        let mut c = Compensated::default();
        // t = x^m / m!; odd m feed Si, even m feed Ci
        let mut t = x;
        let mut sign = 1.0;
        let mut m = 1.0;
        loop {
            s.add(sign * t / m);
            t *= x / (m + 1.0);
            c.add(-sign * t / (m + 1.0));
            t *= x / (m + 2.0);
            m += 2.0;
            sign = -sign;
            if t < 1e-18 {
                break;
            }
        }
        (s.value(), EULER_GAMMA + x.ln() + c.value())
    } else {
        // Lentz evaluation of the continued fraction for E1(ix).
        let tiny = 1e-300;
        let mut b = Complex64::new(1.0, x);
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = Complex64::new(1.0, 0.0) / b;
        let mut h = d;
        for i in 2..100_000 {
            let a = -((i - 1) as f64).powi(2);
            b += 2.0;
            d = Complex64::new(1.0, 0.0) / (d * a + b);
            c = b + Complex64::new(a, 0.0) / c;
            let del = c * d;
            h *= del;
            if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
                break;
            }
        }
        h *= Complex64::new(x.cos(), -x.sin());
        (std::f64::consts::FRAC_PI_2 + h.im, -h.re)
    }
}

/// Bessel function of the first kind of order zero.
pub fn j0(x: f64) -> Result<f64> {
    bessel(0, x)
}

/// Bessel function of the first kind of order one.
pub fn j1(x: f64) -> Result<f64> {
    bessel(1, x)
}

fn bessel(order: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) || x.is_infinite() {
        return Err(invalid(format!(
            "bessel argument must be finite and >= 0, got {x}"
        )));
    }
    Ok(if x <= BESSEL_SERIES_MAX {
        bessel_series(order, x)
    } else if x <= BESSEL_ASYMPTOTIC_MIN {
        bessel_miller(x)[order as usize]
    } else {
        bessel_hankel(order, x)
    })
}

fn bessel_series(order: u32, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = if order == 0 { 1.0 } else { 0.5 * x };
    let mut sum = Compensated::default();
    sum.add(term);
    for k in 1..200 {
        term *= q / (k as f64 * (k + order as usize) as f64);
        sum.add(term);
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum.value()
}

/// `[J0, J1]` by backward recurrence normalised with `J0 + 2ΣJ_2k = 1`.
fn bessel_miller(x: f64) -> [f64; 2] {
    let mut start = x as usize + 40;
    if start % 2 == 1 {
        start += 1;
    }
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-30; // J_k
    let mut norm = 0.0;
    let mut j1 = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        if k % 2 == 1 {
            // cur is now J_{k-1} with k-1 even
            if k > 1 {
                norm += 2.0 * cur;
            }
        }
        if k == 1 {
            j1 = next;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    let j0 = cur;
    norm += j0;
    [j0 / norm, j1 / norm]
}

fn bessel_hankel(order: u32, x: f64) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..200usize {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        }
        if term.abs() > last && k > 2 {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - (0.5 * order as f64 + 0.25) * std::f64::consts::PI;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `n`-th positive zero of `J1`, located by bracketing and bisection.
pub fn j1_zero(n: usize) -> f64 {
    assert!(n >= 1);
    // McMahon's estimate is within 0.1 of the true zero for every n >= 1.
    let beta = (n as f64 + 0.25) * std::f64::consts::PI;
    let guess = beta - 3.0 / (8.0 * beta);
    let (mut lo, mut hi) = (guess - 0.3, guess + 0.3);
    let f = |x: f64| j1(x).expect("positive argument");
    let mut flo = f(lo);
    assert!(flo * f(hi) < 0.0, "zero {n} not bracketed");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || hi - lo < 1e-15 * mid {
            return mid;
        }
        if fm * flo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}
