//! Gauss–Legendre panel quadrature on the half-line.
//!
//! Everything here is deterministic: panels are laid out from fixed
//! breakpoints and summed left to right.

use std::borrow::Cow;
use std::sync::OnceLock;

/// Geometric refinement depth used next to integrable endpoint singularities.
pub const GRADING_LEVELS: usize = 40;

/// Minimum number of half-periods integrated before tail averaging starts.
const OSC_MIN_HALF_PERIODS: usize = 32;
/// Number of partial sums entering the repeated averaging.
const OSC_WINDOW: usize = 16;
const OSC_MAX_HALF_PERIODS: usize = 4096;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `order`-point rule by Newton iteration on `P_order`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        sum * half
    }

    /// Integrates `f` panel by panel over consecutive `breaks`.
    pub fn integrate_panels<F: FnMut(f64) -> f64>(&self, breaks: &[f64], mut f: F) -> f64 {
        breaks
            .windows(2)
            .map(|w| self.integrate(w[0], w[1], &mut f))
            .sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule16() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16))
}

/// Settings shared by every semi-infinite quadrature in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Gauss–Legendre points per panel.
    pub order: usize,
    /// Overrides the envelope-derived truncation radius when set.
    pub truncation: Option<f64>,
    /// Target accuracy for oscillatory tail averaging.
    pub tolerance: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            order: 16,
            truncation: None,
            tolerance: 1e-8,
        }
    }
}

impl QuadratureSettings {
    pub fn with_truncation(mut self, t: f64) -> Self {
        self.truncation = Some(t);
        self
    }

    pub fn rule(&self) -> Cow<'static, GaussLegendre> {
        if self.order == 16 {
            Cow::Borrowed(rule16())
        } else {
            Cow::Owned(GaussLegendre::new(self.order))
        }
    }
}

/// Lays out panel breakpoints on `[a, b]`.
///
/// `cuts` become panel boundaries, every panel is at most `max_width` wide,
/// and the panels touching each point of `graded` are refined geometrically
/// toward it.
pub fn breakpoints(a: f64, b: f64, max_width: f64, cuts: &[f64], graded: &[f64]) -> Vec<f64> {
    debug_assert!(b > a);
    let tiny = 1e-13 * (b - a).max(1.0);
    let mut coarse = vec![a, b];
    coarse.extend(
        cuts.iter()
            .chain(graded)
            .copied()
            .filter(|&c| c > a && c < b),
    );
    coarse.sort_by(f64::total_cmp);
    coarse.dedup_by(|x, y| (*x - *y).abs() <= tiny);

    let mut out = Vec::with_capacity(coarse.len() * 2);
    out.push(a);
    for w in coarse.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let lo_graded = graded.iter().any(|&g| (g - lo).abs() <= tiny);
        let hi_graded = graded.iter().any(|&g| (g - hi).abs() <= tiny);
        let len = hi - lo;
        let pieces = ((len / max_width).ceil() as usize).max(1);
        let step = len / pieces as f64;
        for p in 0..pieces {
            let (plo, phi) = (
                lo + step * p as f64,
                if p + 1 == pieces {
                    hi
                } else {
                    lo + step * (p + 1) as f64
                },
            );
            if p == 0 && lo_graded {
                for j in (1..=GRADING_LEVELS).rev() {
                    out.push(plo + (phi - plo) * 0.5f64.powi(j as i32));
                }
            }
            if p + 1 == pieces && hi_graded {
                for j in 1..=GRADING_LEVELS {
                    out.push(phi - (phi - plo) * 0.5f64.powi(j as i32));
                }
                out.sort_by(f64::total_cmp);
            }
            out.push(phi);
        }
    }
    out.dedup();
    out
}

/// Result of an oscillatory integral whose tail was resummed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Averaged {
    pub value: f64,
    /// Difference between the last two averaged estimates.
    pub error: f64,
    /// End of the last integrated half-period.
    pub end: f64,
}

/// Integrates `f` over `[start, ∞)` for an integrand that oscillates with the
/// given half-period and has a smooth, slowly decaying amplitude.
///
/// Partial sums are taken at the half-period boundaries past `min_end`; the
/// alternating remainder is removed by repeated pairwise averaging.
#[allow(clippy::too_many_arguments)]
pub fn integrate_oscillatory<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    start: f64,
    half_period: f64,
    max_width: f64,
    graded_start: bool,
    min_end: f64,
    tolerance: f64,
    mut f: F,
) -> Averaged {
    let sub = ((half_period / max_width).ceil() as usize).max(1);
    let mut partial = Vec::with_capacity(OSC_MIN_HALF_PERIODS + OSC_WINDOW);
    let mut sum = 0.0;
    let mut j = 0usize;
    let mut last: Option<f64> = None;
    loop {
        let lo = start + half_period * j as f64;
        let hi = start + half_period * (j + 1) as f64;
        let breaks = if j == 0 && graded_start {
            breakpoints(lo, hi, half_period / sub as f64, &[], &[lo])
        } else {
            breakpoints(lo, hi, half_period / sub as f64, &[], &[])
        };
        sum += rule.integrate_panels(&breaks, &mut f);
        partial.push(sum);
        j += 1;
        if j < OSC_MIN_HALF_PERIODS.max(OSC_WINDOW) || hi < min_end {
            continue;
        }
        let estimate = repeated_average(&partial[partial.len() - OSC_WINDOW..]);
        if let Some(prev) = last {
            let err = (estimate - prev).abs();
            if err <= tolerance * 1e-3 * estimate.abs().max(1.0) || j >= OSC_MAX_HALF_PERIODS {
                return Averaged {
                    value: estimate,
                    error: err,
                    end: hi,
                };
            }
        }
        last = Some(estimate);
    }
}

fn repeated_average(sums: &[f64]) -> f64 {
    let mut level = sums.to_vec();
    while level.len() > 1 {
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    level[0]
}
