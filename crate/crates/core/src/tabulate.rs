//! Piecewise Chebyshev tabulation of expensive radial functions.
//!
//! Nested operators (a transform applied to the image of another transform)
//! evaluate their inner function at thousands of points. Tabulating the
//! inner image once on Chebyshev panels and interpolating barycentrically
//! keeps the nested evaluation cheap at near machine accuracy.

use std::f64::consts::PI;

use crate::function::{Profile, RadialFunction, Tail};
use crate::quadrature::breakpoints;

/// Chebyshev points per panel.
pub const PANEL_POINTS: usize = 24;

const ORIGIN_LEVELS: i32 = 30;
const TAIL_PANELS: usize = 8;

#[derive(Debug, Clone)]
struct Panel {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
}

/// A radial function replaced by piecewise Chebyshev interpolants.
///
/// On `[0, T]` the function itself is tabulated. Past `T` (algebraic tails
/// only) the tabulated quantity is `t f(t)` as a function of `s = T/t`, which
/// stays smooth for `1/t` and faster decay.
#[derive(Debug, Clone)]
pub struct Tabulated {
    head: Vec<Panel>,
    tail: Vec<Panel>,
    upper: f64,
    profile: Profile,
}

fn cheb_node(j: usize, n: usize) -> f64 {
    -(((2 * j + 1) as f64) * PI / (2 * n) as f64).cos()
}

fn cheb_weight(j: usize, n: usize) -> f64 {
    let w = (((2 * j + 1) as f64) * PI / (2 * n) as f64).sin();
    if j.is_multiple_of(2) {
        -w
    } else {
        w
    }
}

impl Panel {
    fn new(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..PANEL_POINTS)
            .map(|j| f(0.5 * (lo + hi) + 0.5 * (hi - lo) * cheb_node(j, PANEL_POINTS)))
            .collect();
        Self { lo, hi, values }
    }

    fn eval(&self, x: f64) -> f64 {
        let u = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let (mut num, mut den) = (0.0, 0.0);
        for (j, v) in self.values.iter().enumerate() {
            let d = u - cheb_node(j, PANEL_POINTS);
            if d == 0.0 {
                return *v;
            }
            let w = cheb_weight(j, PANEL_POINTS) / d;
            num += w * v;
            den += w;
        }
        num / den
    }
}

fn locate(panels: &[Panel], x: f64) -> &Panel {
    let i = panels.partition_point(|p| p.hi < x);
    &panels[i.min(panels.len() - 1)]
}

impl Tabulated {
    /// Tabulates `f` over `[0, ∞)` using its profile for the panel layout.
    pub fn new<F: RadialFunction + ?Sized>(f: &F) -> Self {
        let profile = f.profile();
        let upper = match profile.tail {
            Tail::Vanishing { cutoff } => cutoff,
            Tail::Algebraic { from } => from,
            Tail::Oscillatory { .. } | Tail::Unbounded => {
                panic!("tabulation needs a decaying function")
            }
        };
        let mut head = Vec::new();
        if upper > 0.0 {
            let graded_origin = if profile.singular_at_origin {
                Some(0.0)
            } else {
                None
            };
            let mut breaks =
                breakpoints(0.0, upper, profile.scale * 0.5, &profile.breakpoints, &[]);
            if graded_origin.is_some() {
                let first = breaks[1];
                let mut fine: Vec<f64> = (1..=ORIGIN_LEVELS)
                    .rev()
                    .map(|l| first * 0.5f64.powi(l))
                    .collect();
                fine.insert(0, 0.0);
                breaks.splice(0..1, fine);
            }
            for w in breaks.windows(2) {
                head.push(Panel::new(w[0], w[1], |t| f.value(t)));
            }
        }
        let mut tail = Vec::new();
        if let Tail::Algebraic { .. } = profile.tail {
            let step = 1.0 / TAIL_PANELS as f64;
            for p in 0..TAIL_PANELS {
                let (lo, hi) = (p as f64 * step, (p + 1) as f64 * step);
                tail.push(Panel::new(lo, hi, |s| {
                    let t = upper / s;
                    t * f.value(t)
                }));
            }
        }
        Self {
            head,
            tail,
            upper,
            profile,
        }
    }
}

impl RadialFunction for Tabulated {
    fn value(&self, t: f64) -> f64 {
        if t <= self.upper {
            if self.head.is_empty() {
                return 0.0;
            }
            locate(&self.head, t).eval(t)
        } else if self.tail.is_empty() {
            0.0
        } else {
            let s = self.upper / t;
            locate(&self.tail, s).eval(s) / t
        }
    }

    fn profile(&self) -> Profile {
        self.profile.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Derived, FunctionDescriptor as Fd};

    #[test]
    fn reproduces_a_decaying_function() {
        let f = Fd::t_exp(1.0);
        let tab = Tabulated::new(&f);
        for i in 0..400 {
            let t = 0.1 * i as f64 + 0.013;
            assert!((tab.value(t) - f.value(t)).abs() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn reproduces_an_algebraic_tail() {
        let g = Derived::new(|t: f64| 1.0 / (1.0 + t * t), Profile::algebraic(4.0, 1.0));
        let tab = Tabulated::new(&g);
        for t in [0.0, 0.3, 3.9, 4.1, 10.0, 1e3, 1e8] {
            let rel = (tab.value(t) - g.value(t)).abs() / g.value(t);
            assert!(rel < 1e-11, "t={t}: {rel}");
        }
    }
}
