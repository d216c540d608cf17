//! Erdélyi–Kober fractional integrals
//!
//! ```text
//! I f(r) = (2/√π) ∫_0^1 u (1 − u²)^(−1/2) f(ur) du
//! K f(r) = (2/√π) ∫_1^∞ (u² − 1)^(−1/2) f(ur) du
//! ```
//!
//! Both endpoint singularities are removed by substitution (`u = sin θ` for
//! `I`, `u = cosh s` for `K`), which leaves smooth integrands for
//! Gauss–Legendre panels.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{invalid, Error, Result};
use crate::function::{Derived, Profile, RadialFunction, Tail};
use crate::hilbert::{self, Parity};
use crate::quadrature::{breakpoints, integrate_oscillatory, QuadratureSettings};
use crate::specfun::{j1, j1_zero};
use crate::tabulate::Tabulated;

/// `2/√π`
pub const EK_NORM: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Relative size of `f(r cosh s)` at which the `K` integral stops for
/// algebraically decaying input.
const ALGEBRAIC_REACH: f64 = 1e14;

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("fractional integral needs r > 0, got {r}")))
    }
}

/// `I f(r) = (2/√π) ∫_0^{π/2} sin θ f(r sin θ) dθ`.
pub fn ek_i_apply<F: RadialFunction + ?Sized>(
    f: &F,
    r: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_radius(r)?;
    let profile = f.profile();
    // only `r sin θ` below the data region needs fine panels
    let (support, data_end) = match profile.tail {
        Tail::Vanishing { cutoff } => (cutoff, cutoff),
        Tail::Algebraic { from } => (f64::INFINITY, 4.0 * from),
        _ => (f64::INFINITY, f64::INFINITY),
    };
    if support <= 0.0 {
        return Ok(0.0);
    }
    let theta_max = if support < r {
        (support / r).asin()
    } else {
        FRAC_PI_2
    };
    let mut cuts: Vec<f64> = profile
        .breakpoints
        .iter()
        .filter(|&&b| b > 0.0 && b < r)
        .map(|&b| (b / r).asin())
        .collect();
    let mut t = profile.scale;
    while t < r.min(data_end) {
        cuts.push((t / r).asin());
        t += profile.scale;
    }
    let graded: &[f64] = if profile.singular_at_origin {
        &[0.0]
    } else {
        &[]
    };
    let breaks = breakpoints(0.0, theta_max, FRAC_PI_2 / 8.0, &cuts, graded);
    let value = settings
        .rule()
        .integrate_panels(&breaks, |theta| theta.sin() * f.value(r * theta.sin()));
    Ok(EK_NORM * value)
}

/// `K f(r) = (2/√π) ∫_0^∞ f(r cosh s) ds` for decaying `f`.
pub fn ek_k_apply<F: RadialFunction + ?Sized>(
    f: &F,
    r: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_radius(r)?;
    let profile = f.profile();
    let reach = match profile.tail {
        Tail::Vanishing { cutoff } => {
            if cutoff <= r {
                return Ok(0.0);
            }
            cutoff
        }
        Tail::Algebraic { from } => ALGEBRAIC_REACH * from.max(r),
        Tail::Oscillatory { .. } | Tail::Unbounded => {
            return Err(Error::UnsupportedDecay(
                "K needs a decaying function; use ek_k_oscillatory for bounded oscillation".into(),
            ))
        }
    };
    let s_max = (reach / r).acosh();
    let data_end = match profile.tail {
        Tail::Algebraic { from } => from.max(r) * 4.0,
        _ => reach,
    };
    // t-panels of width `scale` mapped to s, capped at s-width 1/4
    let mut cuts: Vec<f64> = profile
        .breakpoints
        .iter()
        .filter(|&&b| b > r && b < reach)
        .map(|&b| (b / r).acosh())
        .collect();
    let mut t = r + profile.scale;
    while t < data_end.min(reach) {
        cuts.push((t / r).acosh());
        t += profile.scale;
    }
    let s_data = (data_end.min(reach) / r)
        .max(1.0)
        .acosh()
        .max(s_max.min(1.0));
    let mut breaks = breakpoints(0.0, s_data, 0.25, &cuts, &[]);
    if s_max > s_data {
        breaks.pop();
        breaks.extend(breakpoints(s_data, s_max, 1.0, &[], &[]));
    }
    let value = settings
        .rule()
        .integrate_panels(&breaks, |s| f.value(r * s.cosh()));
    Ok(EK_NORM * value)
}

/// `K f(r)` for bounded oscillatory `f`, where the integral converges only
/// conditionally. Near `u = 1` the cosh substitution is used; past `t = 2r`
/// the integral `∫ f(t) (t² − r²)^(−1/2) dt` is resummed over half-periods.
pub fn ek_k_oscillatory<F: RadialFunction + ?Sized>(
    f: &F,
    r: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_radius(r)?;
    let profile = f.profile();
    let Tail::Oscillatory { wavenumber } = profile.tail else {
        return ek_k_apply(f, r, settings);
    };
    let rule = settings.rule();
    let s_split = 2f64.acosh();
    let width = (profile.scale / r).min(0.25);
    let head = rule.integrate_panels(&breakpoints(0.0, s_split, width, &[], &[]), |s| {
        f.value(r * s.cosh())
    });
    let tail = integrate_oscillatory(
        &rule,
        2.0 * r,
        PI / wavenumber,
        profile.scale,
        false,
        2.0 * r,
        settings.tolerance,
        |t| f.value(t) / ((t - r) * (t + r)).sqrt(),
    );
    Ok(EK_NORM * (head + tail.value))
}

/// Profile of an `I` image: same resolution as the input, decaying like a
/// power past the input's support.
fn i_image_profile(inner: &Profile) -> Profile {
    let from = match inner.tail {
        Tail::Vanishing { cutoff } => cutoff.max(1.0),
        Tail::Algebraic { from } => from,
        _ => 1.0,
    };
    let mut profile = Profile::algebraic(from, inner.scale.min(1.0));
    profile.singular_at_origin = inner.singular_at_origin;
    profile
}

/// `t ↦ I f(t)` as a function that other operators can consume.
pub fn i_image<'a, F: RadialFunction + ?Sized>(
    f: &'a F,
    settings: QuadratureSettings,
) -> Derived<impl Fn(f64) -> f64 + Sync + 'a> {
    let profile = i_image_profile(&f.profile());
    Derived::new(
        move |t| {
            if t <= 0.0 {
                0.0
            } else {
                ek_i_apply(f, t, &settings).unwrap_or(f64::NAN)
            }
        },
        profile,
    )
}

/// `∫_0^∞ a(t) b(t) dt` where the product decays at least like `1/t²` past
/// `split`; the remainder past `split` is mapped onto `(0, 1]` by `t = split/s`.
fn overlap(
    a: impl Fn(f64) -> f64,
    b: impl Fn(f64) -> f64,
    split: f64,
    scale: f64,
    settings: &QuadratureSettings,
) -> f64 {
    let rule = settings.rule();
    let head = rule.integrate_panels(&breakpoints(0.0, split, scale, &[], &[0.0]), |t| {
        a(t) * b(t)
    });
    let tail = rule.integrate_panels(&breakpoints(0.0, 1.0, 0.125, &[], &[]), |s| {
        let t = split / s;
        a(t) * b(t) * t * t / split
    });
    head + tail
}

/// `|⟨ψ, r K(I χ)⟩ − ⟨r I ψ, I χ⟩|`, the defect of `(rK)† = rI`.
///
/// Both inner products run over the whole half-line; `split` separates the
/// panel region from the algebraic remainder.
pub fn adjoint_defect<P, C>(psi: &P, chi: &C, split: f64) -> Result<f64>
where
    P: RadialFunction + ?Sized,
    C: RadialFunction + ?Sized,
{
    let settings = QuadratureSettings::default();
    for (name, p) in [("ψ", psi.profile()), ("χ", chi.profile())] {
        if !matches!(p.tail, Tail::Vanishing { .. }) {
            return Err(Error::UnsupportedDecay(format!(
                "adjoint check needs decaying {name}"
            )));
        }
    }
    if !(split > 0.0) {
        return Err(invalid(format!(
            "split radius must be positive, got {split}"
        )));
    }
    let psi_profile = psi.profile();
    let scale = psi_profile.scale.min(chi.profile().scale);
    let i_chi = Tabulated::new(&i_image(chi, settings));
    let i_psi = Tabulated::new(&i_image(psi, settings));
    let rule = settings.rule();

    // ψ vanishes past its cutoff, so the left side needs no tail
    let Tail::Vanishing { cutoff } = psi_profile.tail else {
        unreachable!()
    };
    let lhs = if cutoff > 0.0 {
        let breaks = breakpoints(0.0, cutoff, scale, &psi_profile.breakpoints, &[0.0]);
        rule.integrate_panels(&breaks, |t| {
            let p = psi.value(t);
            if p == 0.0 {
                0.0
            } else {
                p * t * ek_k_apply(&i_chi, t, &settings).unwrap_or(f64::NAN)
            }
        })
    } else {
        0.0
    };
    let rhs = overlap(
        |t| t * i_psi.value(t),
        |t| i_chi.value(t),
        split,
        scale,
        &settings,
    );
    if !(lhs.is_finite() && rhs.is_finite()) {
        return Err(Error::UnsupportedDecay(
            "adjoint inner products did not converge".into(),
        ));
    }
    Ok((lhs - rhs).abs())
}

/// Both sides of `K(H_e f)(r) = r I(f(t)/t)(r)`.
pub fn rooney_sides<F: RadialFunction + ?Sized>(f: &F, r: f64) -> Result<(f64, f64)> {
    check_radius(r)?;
    let settings = QuadratureSettings::default();
    let profile = f.profile();
    if !matches!(profile.tail, Tail::Vanishing { .. }) {
        return Err(Error::UnsupportedDecay(
            "Rooney check needs a decaying function".into(),
        ));
    }
    let he = hilbert::image(f, Parity::Even, settings);
    let lhs = ek_k_apply(&he, r, &settings)?;
    let over_t = Derived::new(|t: f64| f.value(t) / t, profile);
    let rhs = r * ek_i_apply(&over_t, r, &settings)?;
    Ok((lhs, rhs))
}

/// `|K(H_e f)(r) − r I(f(t)/t)(r)|`.
pub fn rooney_defect<F: RadialFunction + ?Sized>(f: &F, r: f64) -> Result<f64> {
    let (lhs, rhs) = rooney_sides(f, r)?;
    Ok((lhs - rhs).abs())
}

/// `π ∫_0^R r J₁(k_n r) J₁(k_m r) dr` with `k_n = z_n / R`, `z_n` the n-th
/// positive zero of `J₁` (1-based).
pub fn bessel_overlap(n: usize, m: usize, radius: f64) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(invalid("Bessel mode indices start at 1"));
    }
    check_radius(radius)?;
    let (kn, km) = (j1_zero(n) / radius, j1_zero(m) / radius);
    let width = PI / kn.max(km) / 2.0;
    let breaks = breakpoints(0.0, radius, width, &[], &[]);
    let mut failure = None;
    let value = QuadratureSettings::default()
        .rule()
        .integrate_panels(&breaks, |r| match (j1(kn * r), j1(km * r)) {
            (Ok(a), Ok(b)) => r * a * b,
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                0.0
            }
        });
    match failure {
        Some(e) => Err(e),
        None => Ok(PI * value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FunctionDescriptor as Fd;
    use crate::specfun::j0;

    fn s() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn i_of_sine_is_bessel() {
        let v = ek_i_apply(&Fd::sin(1.0), 1.0, &s()).unwrap();
        assert!((v - 0.779_969_355_296_835).abs() < 1e-12, "{v}");
        for k in [0.5, 2.0] {
            for r in [0.2, 3.0, 10.0] {
                let v = ek_i_apply(&Fd::sin(k), r, &s()).unwrap();
                let expect = PI.sqrt() * j1(k * r).unwrap();
                assert!((v - expect).abs() < 1e-10, "k={k} r={r}");
            }
        }
    }

    #[test]
    fn i_of_one_and_zero() {
        let v = ek_i_apply(&Fd::one(), 3.0, &s()).unwrap();
        assert!((v - EK_NORM).abs() < 1e-13);
        assert_eq!(ek_i_apply(&Fd::zero(), 3.0, &s()).unwrap(), 0.0);
    }

    #[test]
    fn k_of_exponential_and_step() {
        let v = ek_k_apply(&Fd::exp(1.0), 1.0, &s()).unwrap();
        assert!((v - 0.475_075_204_948_906).abs() < 1e-12, "{v}");
        let v = ek_k_apply(&Fd::step(0.0, 2.0).unwrap(), 1.0, &s()).unwrap();
        assert!((v - EK_NORM * 2f64.acosh()).abs() < 1e-12, "{v}");
        assert_eq!(ek_k_apply(&Fd::zero(), 1.0, &s()).unwrap(), 0.0);
    }

    #[test]
    fn k_rejects_oscillation_and_bad_radius() {
        assert!(matches!(
            ek_k_apply(&Fd::sin(1.0), 1.0, &s()),
            Err(Error::UnsupportedDecay(_))
        ));
        assert!(matches!(
            ek_i_apply(&Fd::exp(1.0), 0.0, &s()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn oscillatory_k_of_sine_is_bessel_j0() {
        for r in [0.5, 1.0, 3.0] {
            let v = ek_k_oscillatory(&Fd::sin(1.0), r, &s()).unwrap();
            let expect = PI.sqrt() * j0(r).unwrap();
            assert!((v - expect).abs() < 1e-7, "r={r}: {v} vs {expect}");
        }
    }

    #[test]
    fn adjoint_relation_holds() {
        let d = adjoint_defect(&Fd::exp(1.0), &Fd::exp(1.0), 40.0).unwrap();
        assert!(d < 1e-5, "{d}");
        assert_eq!(
            adjoint_defect(&Fd::exp(1.0), &Fd::zero(), 40.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn rooney_rearrangement_holds() {
        let d = rooney_defect(&Fd::t_gauss(), 1.0).unwrap();
        assert!(d < 1e-4, "{d}");
    }

    #[test]
    fn bessel_modes_are_orthogonal() {
        let diag = PI * 4.0 / 2.0;
        assert!(bessel_overlap(1, 2, 2.0).unwrap().abs() < 1e-6 * diag);
        assert!(bessel_overlap(2, 2, 2.0).unwrap() > 0.0);
    }
}
