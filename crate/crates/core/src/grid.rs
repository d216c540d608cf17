//! Uniform Dirichlet grids on the truncated half-line `(0, R)` and the
//! functions sampled on them.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::function::RadialFunction;

/// Interior nodes `r_j = jΔ`, `j = 1..=N`, with `Δ = R/(N+1)`.
///
/// The endpoints `r = 0` and `r = R` are not nodes; sampled functions are
/// taken to vanish there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    radius: f64,
    count: usize,
    spacing: f64,
}

impl RadialGrid {
    pub fn new(radius: f64, count: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(invalid(format!(
                "grid radius must be positive, got {radius}"
            )));
        }
        if count < 1 {
            return Err(invalid("grid needs at least one interior node"));
        }
        Ok(Self {
            radius,
            count,
            spacing: radius / (count + 1) as f64,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Node `r_j` for one-based `j`.
    pub fn node(&self, j: usize) -> f64 {
        j as f64 * self.spacing
    }

    pub fn nodes(&self) -> Vec<f64> {
        (1..=self.count).map(|j| self.node(j)).collect()
    }

    /// Dual wavenumber `k_m = mπ/R` for one-based `m`.
    pub fn wavenumber(&self, m: usize) -> f64 {
        m as f64 * PI / self.radius
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (1..=self.count).map(|m| self.wavenumber(m)).collect()
    }

    /// Same node count and radius up to rounding.
    pub fn compatible(&self, other: &Self) -> bool {
        self.count == other.count && (self.radius - other.radius).abs() <= 1e-12 * self.radius
    }

    /// Samples `f` at the nodes.
    pub fn sample<F: RadialFunction + ?Sized>(&self, f: &F) -> SampledFunction {
        SampledFunction {
            grid: *self,
            values: (1..=self.count).map(|j| f.value(self.node(j))).collect(),
            space: Space::Position,
        }
    }

    pub fn sample_with(&self, f: impl Fn(f64) -> f64) -> SampledFunction {
        SampledFunction {
            grid: *self,
            values: (1..=self.count).map(|j| f(self.node(j))).collect(),
            space: Space::Position,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn flipped(self) -> Self {
        match self {
            Space::Position => Space::Momentum,
            Space::Momentum => Space::Position,
        }
    }
}

/// Values on the interior nodes of a grid (or on its dual wavenumbers).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: RadialGrid,
    values: Vec<f64>,
    space: Space,
}

impl SampledFunction {
    pub fn new(grid: RadialGrid, values: Vec<f64>, space: Space) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::IncompatibleOperands(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            space,
        })
    }

    pub fn zeros(grid: RadialGrid, space: Space) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
            space,
        }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Abscissae matching the space: nodes `r_j` or wavenumbers `k_m`.
    pub fn abscissae(&self) -> Vec<f64> {
        match self.space {
            Space::Position => self.grid.nodes(),
            Space::Momentum => self.grid.wavenumbers(),
        }
    }

    pub(crate) fn with_values(&self, values: Vec<f64>, space: Space) -> Self {
        debug_assert_eq!(values.len(), self.grid.len());
        Self {
            grid: self.grid,
            values,
            space,
        }
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        let xs = self.abscissae();
        let values = xs
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| f(x, v))
            .collect();
        self.with_values(values, self.space)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if !self.grid.compatible(&other.grid) {
            return Err(Error::IncompatibleOperands(format!(
                "grids (R={}, N={}) and (R={}, N={}) differ",
                self.grid.radius, self.grid.count, other.grid.radius, other.grid.count
            )));
        }
        Ok(())
    }

    fn check_position_pair(&self, other: &Self) -> Result<()> {
        self.check_same_grid(other)?;
        if self.space != Space::Position || other.space != Space::Position {
            return Err(Error::IncompatibleOperands(
                "inner products take position-space samples".into(),
            ));
        }
        Ok(())
    }

    /// Writes `r,value` (or `k,value` in momentum space) CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.space {
            Space::Position => "r,value\n",
            Space::Momentum => "k,value\n",
        });
        for (x, v) in self.abscissae().iter().zip(&self.values) {
            let _ = writeln!(out, "{},{}", format_g17(*x), format_g17(*v));
        }
        out
    }

    /// Parses the CSV written by [`to_csv`](Self::to_csv) and recovers the grid
    /// from the abscissae, which must be uniform and start one step from 0.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedInput("empty CSV".into()))?;
        let space = match header.trim().replace(' ', "").as_str() {
            "r,value" => Space::Position,
            "k,value" => Space::Momentum,
            other => {
                return Err(Error::MalformedInput(format!(
                    "unexpected header '{other}'"
                )))
            }
        };
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (i, line) in lines.enumerate() {
            let mut cells = line.split(',');
            let parse = |c: Option<&str>| -> Result<f64> {
                c.map(str::trim)
                    .and_then(|c| c.parse::<f64>().ok())
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::MalformedInput(format!("row {}: '{line}'", i + 1)))
            };
            xs.push(parse(cells.next())?);
            values.push(parse(cells.next())?);
            if cells.next().is_some() {
                return Err(Error::MalformedInput(format!(
                    "row {}: too many columns",
                    i + 1
                )));
            }
        }
        if xs.is_empty() {
            return Err(Error::MalformedInput("no data rows".into()));
        }
        let step = xs[0];
        if !(step > 0.0) {
            return Err(Error::MalformedInput(
                "first abscissa must be positive".into(),
            ));
        }
        for (j, &x) in xs.iter().enumerate() {
            if (x - step * (j + 1) as f64).abs() > 1e-9 * step * (j + 1) as f64 {
                return Err(Error::MalformedInput(format!(
                    "abscissa {x} breaks the uniform spacing {step}"
                )));
            }
        }
        let n = xs.len();
        let radius = match space {
            Space::Position => step * (n + 1) as f64,
            Space::Momentum => PI / step,
        };
        let grid = RadialGrid::new(radius, n).map_err(|e| Error::MalformedInput(e.to_string()))?;
        Ok(Self {
            grid,
            values,
            space,
        })
    }
}

/// `∫_0^R a b dr` by the trapezoid rule with zero endpoint values.
pub fn inner_product_half_line(a: &SampledFunction, b: &SampledFunction) -> Result<f64> {
    a.check_position_pair(b)?;
    let sum: f64 = a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum();
    Ok(sum * a.grid.spacing)
}

/// `∫_0^R a b r² dr`, the radial part of the spherical scalar product.
pub fn inner_product_spherical(a: &SampledFunction, b: &SampledFunction) -> Result<f64> {
    a.check_position_pair(b)?;
    let g = a.grid;
    let sum: f64 = a
        .values
        .iter()
        .zip(&b.values)
        .enumerate()
        .map(|(i, (x, y))| {
            let r = g.node(i + 1);
            x * y * r * r
        })
        .sum();
    Ok(sum * g.spacing)
}

/// `χ = r φ`.
pub fn chi_from_phi(phi: &SampledFunction) -> SampledFunction {
    phi.map(|r, v| r * v)
}

/// `φ = χ / r`; no node sits at `r = 0`.
pub fn phi_from_chi(chi: &SampledFunction) -> SampledFunction {
    chi.map(|r, v| v / r)
}

/// Shortest round-trip decimal with at most 17 significant digits, printed
/// like C's `%.17g`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed)
    } else {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FunctionDescriptor;

    #[test]
    fn small_grid_layout() {
        let g = RadialGrid::new(1.0, 3).unwrap();
        assert_eq!(g.spacing(), 0.25);
        assert_eq!(g.nodes(), vec![0.25, 0.5, 0.75]);
        assert_eq!(g.wavenumber(1), PI);
    }

    #[test]
    fn production_grid_spacing() {
        let g = RadialGrid::new(20.0, 2047).unwrap();
        assert_eq!(g.spacing(), 20.0 / 2048.0);
        assert!((g.node(2047) - (20.0 - g.spacing())).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(
            RadialGrid::new(-1.0, 3),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            RadialGrid::new(0.0, 3),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            RadialGrid::new(1.0, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(RadialGrid::new(f64::NAN, 3).is_err());
    }

    #[test]
    fn mode_product_depends_on_index_product() {
        let g = RadialGrid::new(3.7, 9).unwrap();
        for m in 1..=9 {
            for j in 1..=9 {
                let direct = (g.wavenumber(m) * g.node(j)).sin();
                let reduced = (PI * ((m * j) % 20) as f64 / 10.0).sin();
                assert!((direct - reduced).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn half_line_norm_of_decaying_exponential() {
        let g = RadialGrid::new(20.0, 2047).unwrap();
        let f = g.sample(&FunctionDescriptor::exp(1.0));
        // Zero endpoint value at r=0 costs Δ/2 relative to ∫e^{-2r}.
        let v = inner_product_half_line(&f, &f).unwrap();
        assert!((v - 0.5).abs() < 0.5 * g.spacing() + 1e-4, "{v}");
    }

    #[test]
    fn sine_modes_are_orthogonal() {
        let g = RadialGrid::new(20.0, 2047).unwrap();
        let s1 = g.sample(&FunctionDescriptor::sin(g.wavenumber(1)));
        let s2 = g.sample(&FunctionDescriptor::sin(g.wavenumber(2)));
        assert!((inner_product_half_line(&s1, &s1).unwrap() - 10.0).abs() < 1e-11);
        assert!(inner_product_half_line(&s1, &s2).unwrap().abs() < 1e-11);
    }

    #[test]
    fn spherical_product_reduces_to_half_line() {
        let g = RadialGrid::new(20.0, 2047).unwrap();
        let phi = g.sample_with(|r| (-r).exp() / r);
        let chi = g.sample(&FunctionDescriptor::exp(1.0));
        let sph = inner_product_spherical(&phi, &phi).unwrap();
        let half = inner_product_half_line(&chi, &chi).unwrap();
        assert!((sph - half).abs() < 1e-12);
        assert!((sph - 0.5).abs() < 0.5 * g.spacing() + 1e-4);

        let k1 = g.wavenumber(1);
        let mode = g.sample_with(|r| (k1 * r).sin() / r);
        assert!((inner_product_spherical(&mode, &mode).unwrap() - 10.0).abs() < 1e-11);
        let zero = SampledFunction::zeros(g, Space::Position);
        assert_eq!(inner_product_spherical(&zero, &mode).unwrap(), 0.0);
    }

    #[test]
    fn chi_phi_conversion() {
        let g = RadialGrid::new(10.0, 99).unwrap();
        let phi = g.sample_with(|r| r.sin() / r);
        let chi = chi_from_phi(&phi);
        let direct = g.sample_with(f64::sin);
        assert!(chi.max_abs_diff(&direct).unwrap() < 1e-15);
        let back = chi_from_phi(&phi_from_chi(&direct));
        assert!(back.max_abs_diff(&direct).unwrap() < 1e-15);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = SampledFunction::zeros(RadialGrid::new(1.0, 3).unwrap(), Space::Position);
        let b = SampledFunction::zeros(RadialGrid::new(1.0, 4).unwrap(), Space::Position);
        assert!(matches!(
            inner_product_half_line(&a, &b),
            Err(Error::IncompatibleOperands(_))
        ));
        let m = SampledFunction::zeros(RadialGrid::new(1.0, 3).unwrap(), Space::Momentum);
        assert!(matches!(
            inner_product_spherical(&a, &m),
            Err(Error::IncompatibleOperands(_))
        ));
    }

    #[test]
    fn csv_round_trip_recovers_grid() {
        let g = RadialGrid::new(20.0, 2047).unwrap();
        let f = g.sample(&FunctionDescriptor::exp(1.0));
        let back = SampledFunction::from_csv(&f.to_csv()).unwrap();
        assert!(back.grid().compatible(&g));
        assert_eq!(back.values(), f.values());

        let m = f.with_values(f.values().to_vec(), Space::Momentum);
        let back = SampledFunction::from_csv(&m.to_csv()).unwrap();
        assert_eq!(back.space(), Space::Momentum);
        assert!(back.grid().compatible(&g));
    }

    #[test]
    fn malformed_csv() {
        assert!(matches!(
            SampledFunction::from_csv(""),
            Err(Error::MalformedInput(_))
        ));
        assert!(SampledFunction::from_csv("x,y\n1,2\n").is_err());
        assert!(SampledFunction::from_csv("r,value\n0.25,1\n0.6,2\n").is_err());
        assert!(SampledFunction::from_csv("r,value\n0.25,abc\n").is_err());
    }

    #[test]
    fn g17_formatting() {
        assert_eq!(format_g17(0.25), "0.25");
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(1e-7), "9.9999999999999995e-08");
        assert_eq!(format_g17(-2.5e20), "-2.5e+20");
        assert_eq!(format_g17(123456.0), "123456");
        for &x in &[std::f64::consts::PI, 1.0 / 3.0, 6.02e23, -1e-300] {
            assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
        }
    }
}
