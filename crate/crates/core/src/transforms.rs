//! Fourier sine and cosine transforms on the half-line.
//!
//! The discrete model is the orthonormal DST-I matrix
//! `S[m][j] = √(2/(N+1)) sin(πmj/(N+1))`, which is symmetric and its own
//! inverse. The continuum transforms `√(2/π) ∫_0^∞ f(t) sin(kt) dt` (and the
//! cosine analogue) are evaluated by Gauss–Legendre panels aligned with the
//! kernel zeros.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::function::{Derived, FunctionDescriptor, RadialFunction, Tail};
use crate::grid::{RadialGrid, SampledFunction};
use crate::quadrature::{breakpoints, integrate_oscillatory, QuadratureSettings};

/// `√(2/π)`
pub const FOURIER_NORM: f64 = 0.797_884_560_802_865_4;

const PARALLEL_MIN: usize = 256;

/// Dense DST-I on a grid, with the sine values tabulated once.
#[derive(Debug, Clone)]
pub struct DstMatrixModel {
    grid: RadialGrid,
    /// `sin(πi/(N+1))` for `i` in `0..2(N+1)`.
    table: Vec<f64>,
    norm: f64,
}

impl DstMatrixModel {
    pub fn new(grid: RadialGrid) -> Self {
        let period = 2 * (grid.len() + 1);
        let table = (0..period)
            .map(|i| match i % (grid.len() + 1) {
                0 => 0.0,
                _ => (PI * i as f64 / (grid.len() + 1) as f64).sin(),
            })
            .collect();
        Self {
            grid,
            table,
            norm: (2.0 / (grid.len() + 1) as f64).sqrt(),
        }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    /// Entry `S[m][j]` for one-based indices.
    pub fn entry(&self, m: usize, j: usize) -> f64 {
        self.norm * self.table[(m * j) % self.table.len()]
    }

    fn row_dot(&self, m: usize, v: &[f64]) -> f64 {
        let period = self.table.len();
        let mut idx = 0usize;
        let mut sum = 0.0;
        for x in v {
            idx += m;
            if idx >= period {
                idx -= period;
            }
            sum += self.table[idx] * x;
        }
        self.norm * sum
    }

    /// `S v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(
            v.len(),
            self.grid.len(),
            "vector length must match the grid"
        );
        let n = v.len();
        if n >= PARALLEL_MIN {
            (1..=n)
                .into_par_iter()
                .map(|m| self.row_dot(m, v))
                .collect()
        } else {
            (1..=n).map(|m| self.row_dot(m, v)).collect()
        }
    }

    /// `max |(S·S − I)[i][j]|` over the full matrix.
    pub fn involution_defect(&self) -> f64 {
        let n = self.grid.len();
        let rows: Vec<Vec<f64>> = (1..=n)
            .into_par_iter()
            .map(|m| (1..=n).map(|j| self.entry(m, j)).collect())
            .collect();
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut worst: f64 = 0.0;
                for j in 0..n {
                    // S is symmetric, so column j equals row j
                    let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((dot - target).abs());
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// `max |S[m][j] − S[j][m]|`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.grid.len();
        let mut worst: f64 = 0.0;
        for m in 1..=n {
            for j in m + 1..=n {
                worst = worst.max((self.entry(m, j) - self.entry(j, m)).abs());
            }
        }
        worst
    }
}

/// Discrete sine transform of a sampled function; flips its space tag.
pub fn dst_apply(f: &SampledFunction) -> SampledFunction {
    let model = DstMatrixModel::new(*f.grid());
    let values = model.apply(f.values());
    SampledFunction::new(*f.grid(), values, f.space().flipped()).expect("length preserved")
}

/// Transform value together with a bound on the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub tail: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Sine,
    Cosine,
}

impl Kernel {
    fn eval(self, x: f64) -> f64 {
        match self {
            Kernel::Sine => x.sin(),
            Kernel::Cosine => x.cos(),
        }
    }
}

/// `√(2/π) ∫_0^∞ f(t) K(kt) dt` with the tail accounted for.
pub fn fourier_quad<F: RadialFunction + ?Sized>(
    f: &F,
    kernel: Kernel,
    k: f64,
    settings: &QuadratureSettings,
) -> Result<Estimate> {
    match kernel {
        Kernel::Sine if !(k > 0.0) => {
            return Err(invalid(format!("sine transform needs k > 0, got {k}")))
        }
        Kernel::Cosine if !(k >= 0.0) => {
            return Err(invalid(format!("cosine transform needs k >= 0, got {k}")))
        }
        _ => {}
    }
    if !k.is_finite() {
        return Err(invalid("wavenumber must be finite"));
    }
    let profile = f.profile();
    let rule = settings.rule();
    let graded: &[f64] = if profile.singular_at_origin {
        &[0.0]
    } else {
        &[]
    };
    let integrand = |t: f64| f.value(t) * kernel.eval(k * t);
    match profile.tail {
        Tail::Vanishing { cutoff } => {
            let end = settings.truncation.unwrap_or(cutoff);
            if end <= 0.0 {
                return Ok(Estimate {
                    value: 0.0,
                    tail: 0.0,
                });
            }
            let mut width = profile.scale;
            let mut cuts = profile.breakpoints.clone();
            if k > 0.0 {
                let half_period = PI / k;
                width = width.min(half_period);
                let zeros = (end / half_period) as usize;
                let offset = match kernel {
                    Kernel::Sine => 0.0,
                    Kernel::Cosine => 0.5,
                };
                cuts.extend((0..=zeros).map(|i| (i as f64 + offset) * half_period));
            }
            let breaks = breakpoints(0.0, end, width, &cuts, graded);
            let value = FOURIER_NORM * rule.integrate_panels(&breaks, integrand);
            let tail = FOURIER_NORM * f.tail_bound(end).unwrap_or(0.0);
            Ok(Estimate { value, tail })
        }
        Tail::Algebraic { from } => {
            if k == 0.0 {
                return Err(Error::UnsupportedDecay(
                    "cosine transform at k = 0 of an algebraically decaying function".into(),
                ));
            }
            let half_period = PI / k;
            let start = match kernel {
                Kernel::Sine => 0.0,
                Kernel::Cosine => 0.5 * half_period,
            };
            let head = match kernel {
                Kernel::Sine => 0.0,
                Kernel::Cosine => {
                    let breaks =
                        breakpoints(0.0, start, profile.scale, &profile.breakpoints, graded);
                    rule.integrate_panels(&breaks, integrand)
                }
            };
            let res = integrate_oscillatory(
                &rule,
                start,
                half_period,
                profile.scale,
                profile.singular_at_origin && kernel == Kernel::Sine,
                from,
                settings.tolerance,
                integrand,
            );
            Ok(Estimate {
                value: FOURIER_NORM * (head + res.value),
                tail: FOURIER_NORM * res.error,
            })
        }
        Tail::Oscillatory { .. } | Tail::Unbounded => Err(Error::UnsupportedDecay(
            "Fourier quadrature needs a decaying function".into(),
        )),
    }
}

/// Fourier sine transform `F_s f(k)`.
pub fn fs_quad<F: RadialFunction + ?Sized>(
    f: &F,
    k: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    Ok(fourier_quad(f, Kernel::Sine, k, settings)?.value)
}

/// Fourier cosine transform `F_c f(k)`.
pub fn fc_quad<F: RadialFunction + ?Sized>(
    f: &F,
    k: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    Ok(fourier_quad(f, Kernel::Cosine, k, settings)?.value)
}

/// `k ↦ F f(k)` as a function that other operators can consume.
pub fn image<'a, F: RadialFunction + ?Sized>(
    f: &'a F,
    kernel: Kernel,
    settings: QuadratureSettings,
) -> Derived<impl Fn(f64) -> f64 + Sync + 'a> {
    let profile = crate::hilbert::image_profile(&f.profile());
    Derived::new(
        move |k| {
            if k <= 0.0 && kernel == Kernel::Sine {
                return 0.0;
            }
            fourier_quad(f, kernel, k, &settings)
                .map(|e| e.value)
                .unwrap_or(f64::NAN)
        },
        profile,
    )
}

/// Defects of `F_s f′ = −k F_c f` and `F_c f′ = −√(2/π) f(0) + k F_s f`.
///
/// The boundary term in the second identity comes from integrating by parts;
/// it vanishes when `f(0) = 0`.
pub fn derivative_identity_defect(f: &FunctionDescriptor, k: f64) -> Result<(f64, f64)> {
    if !(k > 0.0) {
        return Err(invalid(format!("k must be positive, got {k}")));
    }
    let s = QuadratureSettings::default();
    let df = f.derivative()?;
    let sine = (fs_quad(&df, k, &s)? + k * fc_quad(f, k, &s)?).abs();
    let cosine = (fc_quad(&df, k, &s)? + FOURIER_NORM * f.eval(0.0) - k * fs_quad(f, k, &s)?).abs();
    Ok((sine, cosine))
}
