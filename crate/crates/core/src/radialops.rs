//! The positive square root `z⁺` of `−∂²` on the half-line, its inverse, the
//! radial momentum `p⁺ = (1/r) z⁺ r`, `p_r² = −(1/r) ∂² r`, and the witnesses
//! for the failure of the symmetric form `p̃_r = −i (1/r) ∂_r r`.
//!
//! Discrete realizations are `S diag(w(k_m)) S` with `S` the DST-I matrix.
//! Quadrature realizations act on [`FunctionDescriptor`]s.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::function::{FunctionDescriptor, RadialFunction, Tail};
use crate::grid::{inner_product_half_line, RadialGrid, SampledFunction, Space};
use crate::hilbert::he_apply;
use crate::quadrature::{breakpoints, integrate_oscillatory, QuadratureSettings};
use crate::transforms::DstMatrixModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Zplus,
    ZplusInv,
    Pplus,
    Pr2,
    /// Centred difference for `(1/r) ∂_r r`; `p̃_r = −i` times this.
    DtildeFD,
    /// `(−1, 2, −1)/Δ²`, the three-point `−∂²`.
    SecondDiffFD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    DiscreteSpectral,
    Quadrature,
    Kernel,
    FiniteDifference,
}

/// An operator together with the way it is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperatorSpec {
    kind: OperatorKind,
    realization: Realization,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, realization: Realization) -> Result<Self> {
        use OperatorKind::*;
        use Realization::*;
        let allowed = match kind {
            Zplus | Pplus | Pr2 => matches!(realization, DiscreteSpectral | Quadrature),
            ZplusInv => matches!(realization, DiscreteSpectral | Quadrature | Kernel),
            DtildeFD | SecondDiffFD => realization == FiniteDifference,
        };
        if allowed {
            Ok(Self { kind, realization })
        } else {
            Err(invalid(format!(
                "{kind:?} has no {realization:?} realization"
            )))
        }
    }

    /// The matrix-capable realization of `kind`.
    pub fn discrete(kind: OperatorKind) -> Self {
        let realization = match kind {
            OperatorKind::DtildeFD | OperatorKind::SecondDiffFD => Realization::FiniteDifference,
            _ => Realization::DiscreteSpectral,
        };
        Self { kind, realization }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            OperatorKind::Zplus => "zplus",
            OperatorKind::ZplusInv => "zinv",
            OperatorKind::Pplus => "pplus",
            OperatorKind::Pr2 => "pr2",
            OperatorKind::DtildeFD => "dtilde-fd",
            OperatorKind::SecondDiffFD => "second-diff-fd",
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for OperatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s {
            "zplus" => OperatorKind::Zplus,
            "zinv" => OperatorKind::ZplusInv,
            "pplus" => OperatorKind::Pplus,
            "pr2" => OperatorKind::Pr2,
            "dtilde-fd" => OperatorKind::DtildeFD,
            "second-diff-fd" => OperatorKind::SecondDiffFD,
            other => return Err(invalid(format!("unknown operator '{other}'"))),
        };
        Ok(Self::discrete(kind))
    }
}

fn require_position(f: &SampledFunction) -> Result<()> {
    match f.space() {
        Space::Position => Ok(()),
        Space::Momentum => Err(Error::IncompatibleOperands(
            "operator acts on position-space samples".into(),
        )),
    }
}

/// `S diag(w(k_m)) S v`.
pub(crate) fn spectral(grid: &RadialGrid, v: &[f64], w: impl Fn(f64) -> f64) -> Vec<f64> {
    let model = DstMatrixModel::new(*grid);
    let mut hat = model.apply(v);
    for (m, h) in hat.iter_mut().enumerate() {
        *h *= w(grid.wavenumber(m + 1));
    }
    model.apply(&hat)
}

fn spectral_sampled(chi: &SampledFunction, w: impl Fn(f64) -> f64) -> Result<SampledFunction> {
    require_position(chi)?;
    let values = spectral(chi.grid(), chi.values(), w);
    Ok(chi.with_values(values, Space::Position))
}

/// `z⁺ χ = S diag(k) S χ`.
pub fn zplus_discrete(chi: &SampledFunction) -> Result<SampledFunction> {
    spectral_sampled(chi, |k| k)
}

/// `S diag(k²) S χ`, the spectral `−∂²`.
pub fn second_derivative_spectral(chi: &SampledFunction) -> Result<SampledFunction> {
    spectral_sampled(chi, |k| k * k)
}

/// `(z⁺)⁻¹ χ = S diag(1/k) S χ`.
pub fn zinv_apply(chi: &SampledFunction) -> Result<SampledFunction> {
    spectral_sampled(chi, |k| 1.0 / k)
}

/// `p⁺ φ = (1/r) z⁺ (r φ)`.
pub fn pplus_apply(phi: &SampledFunction) -> Result<SampledFunction> {
    conjugated(phi, |k| k)
}

/// `p_r² φ = (1/r) S diag(k²) S (r φ)`.
pub fn pr2_apply(phi: &SampledFunction) -> Result<SampledFunction> {
    conjugated(phi, |k| k * k)
}

fn conjugated(phi: &SampledFunction, w: impl Fn(f64) -> f64) -> Result<SampledFunction> {
    require_position(phi)?;
    let chi = phi.map(|r, v| r * v);
    let out = spectral(phi.grid(), chi.values(), w);
    Ok(phi.with_values(out, Space::Position).map(|r, v| v / r))
}

/// Three-point `−∂²` with zero boundary values.
pub fn second_diff_fd(chi: &SampledFunction) -> Result<SampledFunction> {
    require_position(chi)?;
    let v = chi.values();
    let h2 = chi.grid().spacing().powi(2);
    let at = |j: isize| {
        if j < 0 || j as usize >= v.len() {
            0.0
        } else {
            v[j as usize]
        }
    };
    let out = (0..v.len() as isize)
        .map(|j| (2.0 * at(j) - at(j - 1) - at(j + 1)) / h2)
        .collect();
    Ok(chi.with_values(out, Space::Position))
}

/// Centred difference for `(1/r) ∂_r (r φ)` with zero boundary values.
pub fn dtilde_fd(phi: &SampledFunction) -> Result<SampledFunction> {
    require_position(phi)?;
    let g = *phi.grid();
    let chi = phi.map(|r, v| r * v);
    let v = chi.values();
    let at = |j: isize| {
        if j < 0 || j as usize >= v.len() {
            0.0
        } else {
            v[j as usize]
        }
    };
    let out = (0..v.len() as isize)
        .map(|j| (at(j + 1) - at(j - 1)) / (2.0 * g.spacing() * g.node(j as usize + 1)))
        .collect();
    Ok(phi.with_values(out, Space::Position))
}

/// `|⟨χ, (z⁺z⁺ − D_FD) χ⟩|`, the quadratic-form gap between the spectral and
/// three-point second derivatives.
pub fn square_fd_defect(chi: &SampledFunction) -> Result<f64> {
    let spectral = second_derivative_spectral(chi)?;
    let fd = second_diff_fd(chi)?;
    let gap = spectral.map(|_, v| v).with_values(
        spectral
            .values()
            .iter()
            .zip(fd.values())
            .map(|(a, b)| a - b)
            .collect(),
        Space::Position,
    );
    Ok(inner_product_half_line(chi, &gap)?.abs())
}

/// `z⁺ f(r) = H_e f′(r)`.
pub fn zplus_quad(f: &FunctionDescriptor, r: f64, settings: &QuadratureSettings) -> Result<f64> {
    he_apply(&f.derivative()?, r, settings)
}

/// The log kernel `½ ln|(r + u)/(r − u)|`; `(z⁺)⁻¹` is `2/π` times the
/// integral operator with this kernel.
pub fn zinv_kernel(r: f64, u: f64) -> Result<f64> {
    if !(r > 0.0 && u >= 0.0) {
        return Err(invalid(format!(
            "kernel needs r > 0 and u ≥ 0, got ({r}, {u})"
        )));
    }
    if r == u {
        return Err(Error::SingularPoint(format!(
            "kernel is singular at r = u = {r}"
        )));
    }
    Ok(0.5 * ((r + u) / (r - u)).abs().ln())
}

/// `∫_0^T ½ ln|(r + u)/(r − u)| du`.
pub fn zinv_kernel_integral(r: f64, upper: f64) -> f64 {
    let xlogx = |x: f64| if x == 0.0 { 0.0 } else { x * x.abs().ln() };
    0.5 * (xlogx(r + upper) + xlogx(r - upper)) - xlogx(r)
}

/// Average of the kernel over the cell `[r − h, r + h]` in `u`.
pub fn zinv_kernel_cell(r: f64, h: f64) -> f64 {
    (zinv_kernel_integral(r, r + h) - zinv_kernel_integral(r, (r - h).max(0.0))) / (2.0 * h)
}

fn kernel_regular(r: f64, u: f64) -> f64 {
    if u == r {
        0.0
    } else {
        0.5 * ((r + u) / (r - u)).abs().ln()
    }
}

/// `(z⁺)⁻¹ f(r) = (2/π) ∫_0^∞ ½ ln|(r + u)/(r − u)| f(u) du`.
///
/// The log singularity at `u = r` is handled by subtracting `f(r)`, whose
/// kernel integral is closed form.
pub fn zinv_quad<F: RadialFunction + ?Sized>(
    f: &F,
    r: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(invalid(format!("kernel inverse needs r > 0, got {r}")));
    }
    let profile = f.profile();
    let rule = settings.rule();
    let scale = profile.scale;
    let origin: &[f64] = if profile.singular_at_origin {
        &[0.0]
    } else {
        &[]
    };

    let subtracted = |upper: f64| -> f64 {
        let fr = f.value(r);
        let mut graded = origin.to_vec();
        graded.push(r);
        let breaks = breakpoints(0.0, upper, scale, &profile.breakpoints, &graded);
        let regular = rule.integrate_panels(&breaks, |u| (f.value(u) - fr) * kernel_regular(r, u));
        regular + fr * zinv_kernel_integral(r, upper)
    };

    let value = match profile.tail {
        Tail::Vanishing { cutoff } => {
            if cutoff <= 0.0 {
                0.0
            } else if r - cutoff >= scale.max(0.25 * r) {
                let breaks = breakpoints(0.0, cutoff, scale, &profile.breakpoints, origin);
                rule.integrate_panels(&breaks, |u| f.value(u) * kernel_regular(r, u))
            } else {
                subtracted(
                    settings
                        .truncation
                        .unwrap_or(cutoff)
                        .max(2.0 * r)
                        .max(r + scale),
                )
            }
        }
        Tail::Algebraic { from } => {
            let upper = from.max(2.0 * r).max(r + 4.0 * scale);
            let breaks = breakpoints(0.0, 1.0, 0.125, &[], &[]);
            let tail = rule.integrate_panels(&breaks, |s| {
                let u = upper / s;
                f.value(u) * kernel_regular(r, u) * u * u / upper
            });
            subtracted(upper) + tail
        }
        Tail::Oscillatory { wavenumber } => {
            let half_period = std::f64::consts::PI / wavenumber;
            let upper = (2.0 * r).max(r + 2.0 * half_period);
            let tail = integrate_oscillatory(
                &rule,
                upper,
                half_period,
                scale,
                false,
                upper,
                settings.tolerance,
                |u| f.value(u) * kernel_regular(r, u),
            );
            subtracted(upper) + tail.value
        }
        Tail::Unbounded => {
            return Err(Error::UnsupportedDecay(
                "kernel inverse needs a decaying or oscillating function".into(),
            ))
        }
    };
    Ok(std::f64::consts::FRAC_2_PI * value)
}

/// Outcome of shifting samples toward the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftReport {
    /// `‖χ‖²` before the shift.
    pub norm_before: f64,
    /// `‖χ‖²` after the shift.
    pub norm_after: f64,
    /// `∫_0^a χ² dr` from the descriptor.
    pub analytic_loss: f64,
}

impl ShiftReport {
    pub fn discrete_loss(&self) -> f64 {
        self.norm_before - self.norm_after
    }
}

/// Shifts `χ(r) ↦ χ(r + a)` on the grid; samples pushed past the origin are
/// lost, so the map is not unitary.
pub fn shift_samples(chi: &SampledFunction, a: f64) -> Result<SampledFunction> {
    require_position(chi)?;
    let h = chi.grid().spacing();
    let steps = a / h;
    if !(a > 0.0) || (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
        return Err(invalid(format!(
            "shift {a} must be a positive multiple of the grid spacing {h}"
        )));
    }
    let m = steps.round() as usize;
    let v = chi.values();
    let out = (0..v.len())
        .map(|j| v.get(j + m).copied().unwrap_or(0.0))
        .collect();
    Ok(chi.with_values(out, Space::Position))
}

/// Samples `f`, shifts it by `a`, and compares the lost norm with
/// `∫_0^a f²`.
pub fn shift_demo(f: &FunctionDescriptor, grid: &RadialGrid, a: f64) -> Result<ShiftReport> {
    let chi = grid.sample(f);
    let shifted = shift_samples(&chi, a)?;
    let norm_before = inner_product_half_line(&chi, &chi)?;
    let norm_after = inner_product_half_line(&shifted, &shifted)?;
    let mut cuts = f.profile().breakpoints;
    cuts.retain(|&b| b > 0.0 && b < a);
    let breaks = breakpoints(0.0, a, f.profile().scale, &cuts, &[]);
    let analytic_loss = QuadratureSettings::default()
        .rule()
        .integrate_panels(&breaks, |r| f.value(r).powi(2));
    Ok(ShiftReport {
        norm_before,
        norm_after,
        analytic_loss,
    })
}

/// Evidence about the solution of `−i χ′ = ±i χ` on `(0, R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeficiencyReport {
    pub sign: i8,
    /// `max |χ′ ± χ|` on the sample points, from the analytic derivative.
    pub residual: f64,
    /// `∫_0^R χ²`.
    pub norm_sq: f64,
    /// `∫_0^{2R} χ²`.
    pub norm_sq_doubled: f64,
    /// Whether the norm has converged by `R`.
    pub norm_finite: bool,
}

const DEFICIENCY_SAMPLES: usize = 1000;

/// Checks `candidate` against `−i χ′ = sign · i χ`, i.e. `χ′ = −sign χ`.
pub fn deficiency_residual(
    candidate: &FunctionDescriptor,
    sign: i8,
    radius: f64,
) -> Result<DeficiencyReport> {
    if sign != 1 && sign != -1 {
        return Err(invalid(format!("sign must be ±1, got {sign}")));
    }
    if !(radius > 0.0) {
        return Err(invalid(format!(
            "check radius must be positive, got {radius}"
        )));
    }
    let derivative = candidate.derivative()?;
    let s = f64::from(sign);
    let residual = (0..=DEFICIENCY_SAMPLES)
        .map(|i| {
            let r = radius * i as f64 / DEFICIENCY_SAMPLES as f64;
            (derivative.eval(r) + s * candidate.eval(r)).abs()
        })
        .fold(0.0, f64::max);
    let norm = |upper: f64| {
        let breaks = breakpoints(0.0, upper, 0.5, &[], &[]);
        QuadratureSettings::default()
            .rule()
            .integrate_panels(&breaks, |r| candidate.eval(r).powi(2))
    };
    let norm_sq = norm(radius);
    let norm_sq_doubled = norm(2.0 * radius);
    let norm_finite = (norm_sq_doubled - norm_sq).abs() <= 1e-8 * norm_sq.abs().max(1e-300);
    Ok(DeficiencyReport {
        sign,
        residual,
        norm_sq,
        norm_sq_doubled,
        norm_finite,
    })
}

/// The deficiency solutions `e^{−r}` (sign +1) and `e^{+r}` (sign −1).
pub fn deficiency_check(sign: i8, radius: f64) -> Result<DeficiencyReport> {
    let candidate = FunctionDescriptor::exp(f64::from(sign));
    deficiency_residual(&candidate, sign, radius)
}
