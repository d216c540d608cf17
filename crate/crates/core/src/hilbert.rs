//! Even and odd Hilbert transforms on the half-line,
//!
//! ```text
//! H_e f(r) = (2r/π) PV ∫_0^∞ f(t) / (r² − t²) dt   = F_s F_c f
//! H_o f(r) = (2/π)  PV ∫_0^∞ t f(t) / (t² − r²) dt = F_c F_s f
//! ```
//!
//! The principal value is taken by subtracting `f(r)`: the remainder
//! `[f(t) − f(r)] w(t)` is regular at `t = r`, and `f(r) PV∫_0^T w` has a
//! closed form.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::function::{Derived, Profile, RadialFunction, Tail};
use crate::quadrature::{breakpoints, integrate_oscillatory, QuadratureSettings};

/// Inside `|t − r| < DEFAULT_CELL · r` the regularized integrand is replaced
/// by its limit.
pub const DEFAULT_CELL: f64 = 1e-6;

const SUBSTITUTION_PANELS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// `H_e`, weight `1/(t² − r²)`
    Even,
    /// `H_o`, weight `t/(t² − r²)`
    Odd,
}

impl Parity {
    fn weight(self, r: f64, t: f64) -> f64 {
        let d = (t - r) * (t + r);
        match self {
            Parity::Even => 1.0 / d,
            Parity::Odd => t / d,
        }
    }

    /// `PV ∫_0^T w(t) dt` for `T > r`.
    fn weight_integral(self, r: f64, upper: f64) -> f64 {
        match self {
            Parity::Even => ((upper - r) / (upper + r)).ln() / (2.0 * r),
            Parity::Odd => 0.5 * ((upper - r) * (upper + r) / (r * r)).ln(),
        }
    }

    /// Limit of `[f(t) − f(r)] w(t)` as `t → r`.
    fn regular_limit(self, r: f64, slope: f64) -> f64 {
        match self {
            Parity::Even => slope / (2.0 * r),
            Parity::Odd => 0.5 * slope,
        }
    }

    fn prefactor(self, r: f64) -> f64 {
        match self {
            Parity::Even => -2.0 * r / PI,
            Parity::Odd => 2.0 / PI,
        }
    }
}

/// `H_e f(r)`.
pub fn he_apply<F: RadialFunction + ?Sized>(
    f: &F,
    r: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    hilbert(f, r, Parity::Even, settings, DEFAULT_CELL)
}

/// `H_o f(r)`.
pub fn ho_apply<F: RadialFunction + ?Sized>(
    f: &F,
    r: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    hilbert(f, r, Parity::Odd, settings, DEFAULT_CELL)
}

/// Hilbert transform with an explicit limit-cell radius (relative to `r`).
pub fn hilbert<F: RadialFunction + ?Sized>(
    f: &F,
    r: f64,
    parity: Parity,
    settings: &QuadratureSettings,
    cell: f64,
) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(invalid(format!("Hilbert transform needs r > 0, got {r}")));
    }
    let profile = f.profile();
    let rule = settings.rule();
    let scale = profile.scale;
    let origin: &[f64] = if profile.singular_at_origin {
        &[0.0]
    } else {
        &[]
    };

    // ∫_0^T [f(t) − f(r)] w(t) dt + f(r) PV∫_0^T w
    let subtracted = |upper: f64| -> f64 {
        let fr = f.value(r);
        let slope_limit = parity.regular_limit(r, f.slope(r));
        let mut cuts = profile.breakpoints.clone();
        cuts.push(r);
        let mut graded = origin.to_vec();
        let near_break = profile
            .breakpoints
            .iter()
            .any(|b| (b - r).abs() < scale && *b != r);
        // the subtracted integrand varies on the scale of r itself
        if near_break || r < 2.0 * scale {
            graded.push(r);
        }
        if near_break {
            graded.extend(
                profile
                    .breakpoints
                    .iter()
                    .filter(|b| (*b - r).abs() < scale),
            );
        }
        let breaks = breakpoints(0.0, upper, scale, &cuts, &graded);
        let regular = rule.integrate_panels(&breaks, |t| {
            if (t - r).abs() < cell * r {
                slope_limit
            } else {
                (f.value(t) - fr) * parity.weight(r, t)
            }
        });
        regular + fr * parity.weight_integral(r, upper)
    };

    let integral = match profile.tail {
        Tail::Vanishing { cutoff } => {
            if cutoff <= 0.0 {
                0.0
            } else if r - cutoff >= scale.max(0.25 * r) {
                // singularity lies beyond the support
                let breaks = breakpoints(0.0, cutoff, scale, &profile.breakpoints, origin);
                rule.integrate_panels(&breaks, |t| f.value(t) * parity.weight(r, t))
            } else {
                let upper = settings
                    .truncation
                    .unwrap_or(cutoff)
                    .max(2.0 * r)
                    .max(r + scale);
                subtracted(upper)
            }
        }
        Tail::Algebraic { from } => {
            let upper = from.max(2.0 * r).max(r + 4.0 * scale);
            let head = subtracted(upper);
            // t = T/s maps [T, ∞) onto (0, 1]; dt = t²/T ds
            let breaks = breakpoints(0.0, 1.0, 1.0 / SUBSTITUTION_PANELS as f64, &[], &[]);
            let tail = rule.integrate_panels(&breaks, |s| {
                let t = upper / s;
                f.value(t) * parity.weight(r, t) * t * t / upper
            });
            head + tail
        }
        Tail::Oscillatory { wavenumber } => {
            let half_period = PI / wavenumber;
            let upper = (2.0 * r).max(r + 2.0 * half_period);
            let head = subtracted(upper);
            let tail = integrate_oscillatory(
                &rule,
                upper,
                half_period,
                scale,
                false,
                upper,
                settings.tolerance,
                |t| f.value(t) * parity.weight(r, t),
            );
            head + tail.value
        }
        Tail::Unbounded => {
            return Err(Error::UnsupportedDecay(
                "Hilbert transform needs a bounded oscillating or decaying function".into(),
            ))
        }
    };
    Ok(parity.prefactor(r) * integral)
}

/// Profile of a Hilbert or Fourier image of `f`: algebraic decay past the
/// region where `f` lives, with a possible log singularity at the origin.
pub(crate) fn image_profile(inner: &Profile) -> Profile {
    let from = match inner.tail {
        Tail::Vanishing { cutoff } => cutoff.max(1.0),
        Tail::Algebraic { from } => from,
        _ => 1.0,
    };
    Profile::algebraic(from, inner.scale.min(1.0)).singular_at_origin()
}

/// `t ↦ H f(t)` as a function that other operators can consume.
pub fn image<'a, F: RadialFunction + ?Sized>(
    f: &'a F,
    parity: Parity,
    settings: QuadratureSettings,
) -> Derived<impl Fn(f64) -> f64 + Sync + 'a> {
    let profile = image_profile(&f.profile());
    Derived::new(
        move |t| hilbert(f, t, parity, &settings, DEFAULT_CELL).unwrap_or(f64::NAN),
        profile,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FunctionDescriptor as Fd;
    use crate::specfun::{ci, si};
    use crate::transforms::{fc_quad, fs_quad};

    fn s() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn even_transform_of_cosine_is_sine() {
        for r in [0.1, std::f64::consts::FRAC_PI_2, 1.0, 3.0, 10.0] {
            let v = he_apply(&Fd::cos(1.0), r, &s()).unwrap();
            assert!((v - r.sin()).abs() < 1e-9, "r={r}: {v}");
        }
    }

    #[test]
    fn odd_transform_of_sine_is_cosine() {
        for r in [0.5, 2.0, 7.0] {
            let v = ho_apply(&Fd::sin(1.0), r, &s()).unwrap();
            assert!((v - r.cos()).abs() < 1e-9, "r={r}: {v}");
        }
    }

    #[test]
    fn even_transform_of_sine_via_si_ci() {
        let r: f64 = 1.0;
        let expect = 2.0 / PI * (r.sin() * ci(r).unwrap() - r.cos() * si(r).unwrap());
        let v = he_apply(&Fd::sin(1.0), r, &s()).unwrap();
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");
        assert!((v + 0.144_675_187_549_217_26).abs() < 1e-9);
    }

    #[test]
    fn factorizes_through_fourier_transforms() {
        let st = s();
        let f = Fd::exp(1.0);
        let fc_image = crate::transforms::image(&f, crate::transforms::Kernel::Cosine, st);
        let fs_image = crate::transforms::image(&f, crate::transforms::Kernel::Sine, st);
        for r in [0.5, 1.0, 2.0] {
            let he = he_apply(&f, r, &st).unwrap();
            let composed = fs_quad(&fc_image, r, &st).unwrap();
            assert!(
                (he - composed).abs() < 1e-8,
                "H_e r={r}: {he} vs {composed}"
            );
            let ho = ho_apply(&f, r, &st).unwrap();
            let composed = fc_quad(&fs_image, r, &st).unwrap();
            assert!(
                (ho - composed).abs() < 1e-8,
                "H_o r={r}: {ho} vs {composed}"
            );
        }
    }

    #[test]
    fn limit_cell_radius_does_not_matter() {
        let f = Fd::t_exp(1.0);
        for parity in [Parity::Even, Parity::Odd] {
            let a = hilbert(&f, 1.3, parity, &s(), 1e-3).unwrap();
            let b = hilbert(&f, 1.3, parity, &s(), 5e-4).unwrap();
            assert!((a - b).abs() < 1e-8, "{parity:?}: {a} {b}");
        }
    }

    #[test]
    fn rejects_nonpositive_radius_and_unbounded_input() {
        assert!(matches!(
            he_apply(&Fd::exp(1.0), 0.0, &s()),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            ho_apply(&Fd::exp(1.0), -1.0, &s()),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            he_apply(&Fd::exp(-1.0), 1.0, &s()),
            Err(Error::UnsupportedDecay(_))
        ));
    }

    #[test]
    fn zero_maps_to_zero() {
        assert_eq!(he_apply(&Fd::zero(), 1.0, &s()).unwrap(), 0.0);
    }
}
