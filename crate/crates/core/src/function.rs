//! Test functions on the half-line.
//!
//! [`FunctionDescriptor`] is a finite sum of terms `c · t^p · shape(t)` drawn
//! from a small family closed under differentiation. Anything the quadrature
//! routines integrate implements [`RadialFunction`], which also covers
//! functions defined by nested quadrature.

use std::fmt;

use crate::error::{invalid, Error, Result};

/// Envelope level below which a decaying function is treated as zero.
pub const ENVELOPE_FLOOR: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// `sin(k t)`
    Sin(f64),
    /// `cos(k t)`
    Cos(f64),
    /// `exp(-a t)`; `a ≤ 0` grows.
    Exp(f64),
    /// `exp(-t²/2)`
    Gauss,
    /// Indicator of `[a, b)`; `b` may be infinite.
    Step(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub power: u32,
    pub shape: Shape,
}

impl Term {
    fn value(&self, t: f64) -> f64 {
        let s = match self.shape {
            Shape::Sin(k) => (k * t).sin(),
            Shape::Cos(k) => (k * t).cos(),
            Shape::Exp(a) => (-a * t).exp(),
            Shape::Gauss => (-0.5 * t * t).exp(),
            Shape::Step(a, b) => {
                if t >= a && t < b {
                    1.0
                } else {
                    0.0
                }
            }
        };
        if s == 0.0 {
            return 0.0;
        }
        self.coef * t.powi(self.power as i32) * s
    }

    /// Upper bound of `|term|` for large `t`, used to place the truncation.
    fn envelope(&self, t: f64) -> f64 {
        let poly = self.coef.abs() * t.powi(self.power as i32);
        match self.shape {
            Shape::Exp(a) => poly * (-a * t).exp(),
            Shape::Gauss => poly * (-0.5 * t * t).exp(),
            Shape::Step(_, b) if t >= b => 0.0,
            _ => poly,
        }
    }

    /// Bound on `∫_T^∞ |term| dt`.
    fn tail_bound(&self, t: f64) -> f64 {
        let p = self.power as f64;
        match self.shape {
            Shape::Exp(a) if a * t > p + 1.0 => self.envelope(t) / (a - p / t),
            Shape::Gauss if t * t > p + 1.0 => self.envelope(t) / (t - (p - 1.0).max(0.0) / t),
            Shape::Step(_, b) if t >= b => 0.0,
            _ => f64::INFINITY,
        }
    }

    fn derivative(&self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        if self.power > 0 {
            out.push(Term {
                coef: self.coef * self.power as f64,
                power: self.power - 1,
                shape: self.shape,
            });
        }
        let (coef, power, shape) = match self.shape {
            Shape::Sin(k) => (self.coef * k, self.power, Shape::Cos(k)),
            Shape::Cos(k) => (-self.coef * k, self.power, Shape::Sin(k)),
            Shape::Exp(a) => (-self.coef * a, self.power, Shape::Exp(a)),
            Shape::Gauss => (-self.coef, self.power + 1, Shape::Gauss),
            Shape::Step(..) => {
                return Err(Error::UnsupportedDecay(
                    "step functions have no pointwise derivative".into(),
                ))
            }
        };
        if coef != 0.0 {
            out.push(Term { coef, power, shape });
        }
        Ok(out)
    }
}

/// Decay tag of a descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    Exponential,
    Gaussian,
    Compact,
    /// Bounded trigonometric behaviour at infinity.
    Oscillatory,
    /// Constant or growing at infinity.
    NonDecaying,
}

/// How a function behaves beyond the region resolved by panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// `|f| < ENVELOPE_FLOOR` past `cutoff`.
    Vanishing { cutoff: f64 },
    /// Smooth, non-oscillating power-law decay past `from`.
    Algebraic { from: f64 },
    /// Bounded oscillation with a single wavenumber.
    Oscillatory { wavenumber: f64 },
    /// Neither integrable nor oscillating.
    Unbounded,
}

/// Geometry a quadrature routine needs to integrate a function well.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub tail: Tail,
    /// Upper bound on panel width.
    pub scale: f64,
    /// Points where the function or its derivatives jump.
    pub breakpoints: Vec<f64>,
    /// Integrable singular behaviour (log or similar) at `t = 0`.
    pub singular_at_origin: bool,
}

impl Profile {
    pub fn algebraic(from: f64, scale: f64) -> Self {
        Self {
            tail: Tail::Algebraic { from },
            scale,
            breakpoints: Vec::new(),
            singular_at_origin: false,
        }
    }

    pub fn singular_at_origin(mut self) -> Self {
        self.singular_at_origin = true;
        self
    }
}

/// A real function on `[0, ∞)` that the integral operators can consume.
pub trait RadialFunction: Sync {
    fn value(&self, t: f64) -> f64;

    fn profile(&self) -> Profile;

    /// Bound on `∫_t^∞ |f|`, when one is known.
    fn tail_bound(&self, _t: f64) -> Option<f64> {
        None
    }

    /// Pointwise derivative; the default is a centred difference.
    fn slope(&self, t: f64) -> f64 {
        let h = 1e-5 * t.abs().max(1e-3);
        (self.value(t + h) - self.value(t - h)) / (2.0 * h)
    }
}

impl<T: RadialFunction + ?Sized> RadialFunction for &T {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn profile(&self) -> Profile {
        (**self).profile()
    }
    fn slope(&self, t: f64) -> f64 {
        (**self).slope(t)
    }
    fn tail_bound(&self, t: f64) -> Option<f64> {
        (**self).tail_bound(t)
    }
}

/// A closure together with its profile.
pub struct Derived<F> {
    eval: F,
    profile: Profile,
}

impl<F: Fn(f64) -> f64 + Sync> Derived<F> {
    pub fn new(eval: F, profile: Profile) -> Self {
        Self { eval, profile }
    }
}

impl<F: Fn(f64) -> f64 + Sync> RadialFunction for Derived<F> {
    fn value(&self, t: f64) -> f64 {
        (self.eval)(t)
    }
    fn profile(&self) -> Profile {
        self.profile.clone()
    }
}

/// Symbolic test function: a sum of [`Term`]s with a shared wavenumber.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDescriptor {
    terms: Vec<Term>,
}

impl FunctionDescriptor {
    pub fn from_terms(terms: Vec<Term>) -> Result<Self> {
        let mut wavenumber = None;
        for term in &terms {
            if !term.coef.is_finite() {
                return Err(invalid("non-finite coefficient"));
            }
            match term.shape {
                Shape::Sin(k) | Shape::Cos(k) => {
                    if !(k.is_finite() && k > 0.0) {
                        return Err(invalid(format!("wavenumber must be positive, got {k}")));
                    }
                    match wavenumber {
                        None => wavenumber = Some(k),
                        Some(k0) if k0 == k => {}
                        Some(k0) => {
                            return Err(invalid(format!("mixed wavenumbers {k0} and {k}")));
                        }
                    }
                }
                Shape::Exp(a) if !a.is_finite() => return Err(invalid("non-finite rate")),
                Shape::Step(a, b) if !(a >= 0.0 && b > a) || a.is_infinite() => {
                    return Err(invalid(format!("bad step interval [{a}, {b})")));
                }
                _ => {}
            }
        }
        let terms = terms.into_iter().filter(|t| t.coef != 0.0).collect();
        Ok(Self { terms })
    }

    fn single(shape: Shape, power: u32) -> Self {
        Self::from_terms(vec![Term {
            coef: 1.0,
            power,
            shape,
        }])
        .expect("valid builtin")
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// `sin(k t)`; panics unless `k > 0`.
    pub fn sin(k: f64) -> Self {
        Self::single(Shape::Sin(k), 0)
    }

    /// `cos(k t)`; panics unless `k > 0`.
    pub fn cos(k: f64) -> Self {
        Self::single(Shape::Cos(k), 0)
    }

    /// `exp(-a t)`
    pub fn exp(a: f64) -> Self {
        Self::single(Shape::Exp(a), 0)
    }

    /// `t exp(-a t)`
    pub fn t_exp(a: f64) -> Self {
        Self::single(Shape::Exp(a), 1)
    }

    /// `exp(-t²/2)`
    pub fn gauss() -> Self {
        Self::single(Shape::Gauss, 0)
    }

    /// `t exp(-t²/2)`
    pub fn t_gauss() -> Self {
        Self::single(Shape::Gauss, 1)
    }

    /// Indicator of `[a, b)`.
    pub fn step(a: f64, b: f64) -> Result<Self> {
        Self::from_terms(vec![Term {
            coef: 1.0,
            power: 0,
            shape: Shape::Step(a, b),
        }])
    }

    /// The constant one, as the step `[0, ∞)`.
    pub fn one() -> Self {
        Self::step(0.0, f64::INFINITY).expect("valid step")
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef * c,
                    ..*t
                })
                .collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        Self::from_terms(self.terms.iter().chain(&other.terms).copied().collect())
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.value(t)).sum()
    }

    /// Analytic derivative; fails for step functions.
    pub fn derivative(&self) -> Result<Self> {
        let mut terms = Vec::new();
        for term in &self.terms {
            terms.extend(term.derivative()?);
        }
        Self::from_terms(terms)
    }

    pub fn wavenumber(&self) -> Option<f64> {
        self.terms.iter().find_map(|t| match t.shape {
            Shape::Sin(k) | Shape::Cos(k) => Some(k),
            _ => None,
        })
    }

    pub fn decay(&self) -> DecayClass {
        let mut class = DecayClass::Compact;
        for term in &self.terms {
            let c = match term.shape {
                Shape::Sin(_) | Shape::Cos(_) => DecayClass::Oscillatory,
                Shape::Exp(a) if a > 0.0 => DecayClass::Exponential,
                Shape::Exp(_) => DecayClass::NonDecaying,
                Shape::Gauss => DecayClass::Gaussian,
                Shape::Step(_, b) if b.is_finite() => DecayClass::Compact,
                Shape::Step(..) => DecayClass::NonDecaying,
            };
            class = worse(class, c);
        }
        class
    }

    pub fn is_decaying(&self) -> bool {
        matches!(
            self.decay(),
            DecayClass::Exponential | DecayClass::Gaussian | DecayClass::Compact
        )
    }

    /// Smallest `T` past which the summed envelope stays below [`ENVELOPE_FLOOR`].
    pub fn cutoff(&self) -> f64 {
        let mut cutoff: f64 = 0.0;
        for term in &self.terms {
            let t = match term.shape {
                Shape::Step(_, b) => b,
                Shape::Exp(a) if a > 0.0 => {
                    let mut t = (term.power as f64 / a).max(1.0 / a);
                    while term.envelope(t) > ENVELOPE_FLOOR / self.terms.len() as f64 {
                        t *= 1.1;
                    }
                    t
                }
                Shape::Gauss => {
                    let mut t = (term.power as f64).sqrt().max(1.0);
                    while term.envelope(t) > ENVELOPE_FLOOR / self.terms.len() as f64 {
                        t *= 1.05;
                    }
                    t
                }
                _ => f64::INFINITY,
            };
            cutoff = cutoff.max(t);
        }
        cutoff
    }

    /// Bound on `∫_T^∞ |f|`.
    pub fn tail_integral_bound(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.tail_bound(t)).sum()
    }

    fn scale(&self) -> f64 {
        let mut scale: f64 = 1.0;
        for term in &self.terms {
            let s = match term.shape {
                Shape::Sin(k) | Shape::Cos(k) => std::f64::consts::PI / k,
                Shape::Exp(a) if a.abs() > 0.0 => 2.0 / a.abs(),
                _ => 1.0,
            };
            scale = scale.min(s);
        }
        scale
    }
}

fn worse(a: DecayClass, b: DecayClass) -> DecayClass {
    use DecayClass::*;
    let rank = |c: DecayClass| match c {
        Compact => 0,
        Gaussian => 1,
        Exponential => 2,
        Oscillatory => 3,
        NonDecaying => 4,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

impl RadialFunction for FunctionDescriptor {
    fn value(&self, t: f64) -> f64 {
        self.eval(t)
    }

    fn profile(&self) -> Profile {
        let tail = match self.decay() {
            DecayClass::Oscillatory => Tail::Oscillatory {
                wavenumber: self.wavenumber().unwrap_or(1.0),
            },
            DecayClass::NonDecaying => Tail::Unbounded,
            _ => Tail::Vanishing {
                cutoff: self.cutoff(),
            },
        };
        let breakpoints = self
            .terms
            .iter()
            .filter_map(|t| match t.shape {
                Shape::Step(a, b) => Some([a, b]),
                _ => None,
            })
            .flatten()
            .filter(|x| x.is_finite() && *x > 0.0)
            .collect();
        Profile {
            tail,
            scale: self.scale(),
            breakpoints,
            singular_at_origin: false,
        }
    }

    fn tail_bound(&self, t: f64) -> Option<f64> {
        let b = self.tail_integral_bound(t);
        b.is_finite().then_some(b)
    }

    fn slope(&self, t: f64) -> f64 {
        match self.derivative() {
            Ok(d) => d.eval(t),
            Err(_) => 0.0,
        }
    }
}

impl fmt::Display for FunctionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t.coef)?;
            match t.power {
                0 => {}
                1 => write!(f, "·t")?,
                p => write!(f, "·t^{p}")?,
            }
            match t.shape {
                Shape::Sin(k) => write!(f, "·sin({k}t)")?,
                Shape::Cos(k) => write!(f, "·cos({k}t)")?,
                Shape::Exp(a) => write!(f, "·exp(-{a}t)")?,
                Shape::Gauss => write!(f, "·exp(-t²/2)")?,
                Shape::Step(a, b) => write!(f, "·1[{a},{b})")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for FunctionDescriptor {
    type Err = Error;

    /// Parses `<family>:<params>`: `sin:k`, `cos:k`, `exp:a`, `texp:a`,
    /// `gauss`, `tgauss`, `step:a,b` (`b` may be `inf`), `one`, `zero`.
    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = match s.split_once(':') {
            Some((f, p)) => (f.trim(), p.trim()),
            None => (s.trim(), ""),
        };
        let nums: Vec<f64> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| {
                    let p = p.trim();
                    if p.eq_ignore_ascii_case("inf") {
                        Ok(f64::INFINITY)
                    } else {
                        p.parse::<f64>()
                            .map_err(|_| invalid(format!("bad number '{p}' in '{s}'")))
                    }
                })
                .collect::<Result<_>>()?
        };
        let want = |n: usize| -> Result<()> {
            if nums.len() == n {
                Ok(())
            } else {
                Err(invalid(format!(
                    "'{family}' takes {n} parameter(s), got {}",
                    nums.len()
                )))
            }
        };
        let positive = |x: f64| -> Result<f64> {
            if x > 0.0 && x.is_finite() {
                Ok(x)
            } else {
                Err(invalid(format!(
                    "parameter must be positive and finite, got {x}"
                )))
            }
        };
        match family {
            "sin" => {
                want(1)?;
                Ok(Self::single(Shape::Sin(positive(nums[0])?), 0))
            }
            "cos" => {
                want(1)?;
                Ok(Self::single(Shape::Cos(positive(nums[0])?), 0))
            }
            "exp" | "texp" => {
                want(1)?;
                if !nums[0].is_finite() {
                    return Err(invalid("rate must be finite"));
                }
                Ok(Self::single(
                    Shape::Exp(nums[0]),
                    u32::from(family == "texp"),
                ))
            }
            "gauss" => {
                want(0)?;
                Ok(Self::gauss())
            }
            "tgauss" => {
                want(0)?;
                Ok(Self::t_gauss())
            }
            "step" => {
                want(2)?;
                Self::step(nums[0], nums[1])
            }
            "one" => {
                want(0)?;
                Ok(Self::one())
            }
            "zero" => {
                want(0)?;
                Ok(Self::zero())
            }
            other => Err(invalid(format!("unknown function family '{other}'"))),
        }
    }
}
