//! Verification suites: named groups of numerical checks, each reporting a
//! nonnegative defect against a tolerance.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::fracint::{self, ek_i_apply, ek_k_apply, ek_k_oscillatory};
use crate::function::{Derived, FunctionDescriptor as Fd, RadialFunction};
use crate::grid::{format_g17, inner_product_half_line, RadialGrid, SampledFunction, Space};
use crate::hilbert::{self, he_apply, ho_apply, Parity};
use crate::opmatrix::{self, build_matrix};
use crate::quadrature::QuadratureSettings;
use crate::radialops::{self, OperatorKind, OperatorSpec};
use crate::specfun::{ci, j0, j1, si};
use crate::tabulate::Tabulated;
use crate::transforms::{self, dst_apply, fs_quad, DstMatrixModel, Kernel};

const SEED: u64 = 0x5eed_0f2a_d1a1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Involution,
    Hilbert,
    Sqrt,
    Inverse,
    Fracint,
    Positivity,
    Nonhermitian,
    Specfun,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Involution,
        Suite::Hilbert,
        Suite::Sqrt,
        Suite::Inverse,
        Suite::Fracint,
        Suite::Positivity,
        Suite::Nonhermitian,
        Suite::Specfun,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Involution => "involution",
            Suite::Hilbert => "hilbert",
            Suite::Sqrt => "sqrt",
            Suite::Inverse => "inverse",
            Suite::Fracint => "fracint",
            Suite::Positivity => "positivity",
            Suite::Nonhermitian => "nonhermitian",
            Suite::Specfun => "specfun",
            Suite::All => "all",
        }
    }

    /// Grid echoed in the report.
    fn grid(self) -> (f64, usize) {
        match self {
            Suite::Involution => (1.0, 2048),
            Suite::Sqrt => (SQRT_RADIUS, 512),
            Suite::Positivity => (POSITIVITY_RADIUS, 256),
            Suite::Nonhermitian => (4.0, 3999),
            _ => (10.0, 256),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| invalid(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub defect: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridEcho {
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "N")]
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub grid: GridEcho,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Fixed-width table, one check per line.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!(
            "suite {}  grid R={} N={}\n",
            self.suite,
            format_g17(self.grid.radius),
            self.grid.count
        );
        for c in &self.checks {
            out.push_str(&format!(
                "{}  {:<width$}  defect={}  tol={}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                format_g17(c.defect),
                format_g17(c.tol),
            ));
        }
        out.push_str(if self.pass {
            "overall PASS\n"
        } else {
            "overall FAIL\n"
        });
        out
    }
}

struct Collector {
    checks: Vec<Check>,
    tol_override: Option<f64>,
}

impl Collector {
    fn push(&mut self, name: impl Into<String>, defect: Result<f64>, tol: f64) {
        let tol = self.tol_override.unwrap_or(tol);
        let defect = match defect {
            Ok(d) if d.is_finite() => d.abs(),
            _ => f64::MAX,
        };
        self.checks.push(Check {
            name: name.into(),
            defect,
            tol,
            pass: defect <= tol,
        });
    }
}

/// Runs `suite`. `tol_override` replaces every tolerance.
pub fn run_suite(suite: Suite, tol_override: Option<f64>) -> VerificationReport {
    let mut c = Collector {
        checks: Vec::new(),
        tol_override,
    };
    let members: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    for s in members {
        match s {
            Suite::Involution => involution(&mut c),
            Suite::Hilbert => hilbert_checks(&mut c),
            Suite::Sqrt => sqrt(&mut c),
            Suite::Inverse => inverse(&mut c),
            Suite::Fracint => fracint_checks(&mut c),
            Suite::Positivity => positivity(&mut c),
            Suite::Nonhermitian => nonhermitian(&mut c),
            Suite::Specfun => specfun(&mut c),
            Suite::All => unreachable!(),
        }
    }
    let (radius, count) = suite.grid();
    VerificationReport {
        suite: suite.name().into(),
        pass: c.checks.iter().all(|ch| ch.pass),
        checks: c.checks,
        grid: GridEcho { radius, count },
    }
}

fn grid(radius: f64, count: usize) -> RadialGrid {
    RadialGrid::new(radius, count).expect("fixed grid is valid")
}

fn random_samples(g: RadialGrid, rng: &mut ChaCha8Rng) -> SampledFunction {
    let values = (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SampledFunction::new(g, values, Space::Position).expect("length")
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(items: I) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for item in items {
        worst = worst.max(item?.abs());
    }
    Ok(worst)
}

fn settings() -> QuadratureSettings {
    QuadratureSettings::default()
}

fn involution(c: &mut Collector) {
    let model = DstMatrixModel::new(grid(1.0, 2048));
    c.push(
        "S*S - I max entry, N=2048",
        Ok(model.involution_defect()),
        1e-12,
    );
    c.push("S symmetric, N=2048", Ok(model.symmetry_defect()), 1e-15);

    let g = grid(1.0, 2048);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let isometry = max_over((0..100).map(|_| {
        let a = random_samples(g, &mut rng);
        let b = random_samples(g, &mut rng);
        let before = inner_product_half_line(&a, &b)?;
        let after = dot_momentum(&dst_apply(&a), &dst_apply(&b));
        let scale = (inner_product_half_line(&a, &a)? * inner_product_half_line(&b, &b)?).sqrt();
        Ok((after - before) / scale)
    }));
    c.push(
        "<Sa,Sb> = <a,b>, 100 random pairs, relative",
        isometry,
        1e-10,
    );

    let three = grid(1.0, 3);
    let e1 = SampledFunction::new(three, vec![1.0, 0.0, 0.0], Space::Position).expect("length");
    let row = dst_apply(&e1);
    let expect = [0.5, std::f64::consts::FRAC_1_SQRT_2, 0.5];
    let d = row
        .values()
        .iter()
        .zip(expect)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    c.push("S e1 on three nodes", Ok(d), 1e-15);
}

fn dot_momentum(a: &SampledFunction, b: &SampledFunction) -> f64 {
    let sum: f64 = a.values().iter().zip(b.values()).map(|(x, y)| x * y).sum();
    sum * a.grid().spacing()
}

fn hilbert_checks(c: &mut Collector) {
    let s = settings();
    c.push(
        "H_e cos(t) at r=pi/2 equals 1",
        he_apply(&Fd::cos(1.0), PI / 2.0, &s).map(|v| v - 1.0),
        1e-6,
    );
    c.push(
        "H_e sin(t) at r=1 vs (2/pi)[sin Ci - cos Si]",
        he_apply(&Fd::sin(1.0), 1.0, &s).and_then(|v| {
            let expect = 2.0 / PI * (1f64.sin() * ci(1.0)? - 1f64.cos() * si(1.0)?);
            Ok(v - expect)
        }),
        1e-6,
    );
    c.push(
        "H_o sin(t) at r=2 equals cos 2",
        ho_apply(&Fd::sin(1.0), 2.0, &s).map(|v| v - 2f64.cos()),
        1e-5,
    );
    for (label, f) in [("exp(-t)", Fd::exp(1.0)), ("t exp(-t^2/2)", Fd::t_gauss())] {
        let fc = Tabulated::new(&transforms::image(&f, Kernel::Cosine, s));
        let fs = Tabulated::new(&transforms::image(&f, Kernel::Sine, s));
        let rs = [0.5, 1.0, 2.0];
        c.push(
            format!("H_e = F_s F_c on {label}"),
            max_over(rs.map(|r| Ok(he_apply(&f, r, &s)? - fs_quad(&fc, r, &s)?))),
            1e-5,
        );
        c.push(
            format!("H_o = F_c F_s on {label}"),
            max_over(rs.map(|r| Ok(ho_apply(&f, r, &s)? - transforms::fc_quad(&fs, r, &s)?))),
            1e-5,
        );
    }
    let mut worst_eo = Ok(0.0f64);
    let mut worst_oe = Ok(0.0f64);
    for f in [Fd::exp(1.0), Fd::t_exp(1.0), Fd::t_gauss()] {
        let he = Tabulated::new(&hilbert::image(&f, Parity::Even, s));
        let ho = Tabulated::new(&hilbert::image(&f, Parity::Odd, s));
        let rs = [0.5, 1.0, 2.0, 5.0];
        let eo = max_over(rs.map(|r| Ok(he_apply(&ho, r, &s)? - f.eval(r))));
        let oe = max_over(rs.map(|r| Ok(ho_apply(&he, r, &s)? - f.eval(r))));
        worst_eo = worst_eo.and_then(|w| Ok(w.max(eo?)));
        worst_oe = worst_oe.and_then(|w| Ok(w.max(oe?)));
    }
    c.push("H_e H_o f = f", worst_eo, 1e-4);
    c.push("H_o H_e f = f", worst_oe, 1e-4);
    let f = Fd::t_exp(1.0);
    c.push(
        "PV limit cell halved",
        max_over([Parity::Even, Parity::Odd].map(|p| {
            Ok(hilbert::hilbert(&f, 1.3, p, &s, 1e-3)? - hilbert::hilbert(&f, 1.3, p, &s, 5e-4)?)
        })),
        1e-8,
    );
}

const SQRT_RADIUS: f64 = 10.0;

fn sqrt_test_function(g: RadialGrid) -> SampledFunction {
    let r_max = g.radius();
    g.sample_with(|r| r * (r_max - r) * (-r).exp())
}

fn sqrt(c: &mut Collector) {
    let g = grid(SQRT_RADIUS, 512);
    let chi = sqrt_test_function(g);
    let squared = radialops::zplus_discrete(&chi).and_then(|z| radialops::zplus_discrete(&z));
    let spectral = radialops::second_derivative_spectral(&chi);
    c.push(
        "z+ z+ = S k^2 S, relative",
        squared.and_then(|a| {
            let b = spectral?;
            Ok(a.max_abs_diff(&b)? / b.max_abs())
        }),
        1e-10,
    );
    let coarse = radialops::square_fd_defect(&sqrt_test_function(grid(SQRT_RADIUS, 256)));
    let fine = radialops::square_fd_defect(&sqrt_test_function(grid(SQRT_RADIUS, 512)));
    c.push(
        "spectral vs 3-point FD, error ratio N=256->512 minus 4",
        coarse.and_then(|a| Ok(a / fine? - 4.0)),
        0.5,
    );

    let g = grid(SQRT_RADIUS, 511);
    c.push(
        "z+ sin(k_m r) = k_m sin(k_m r), m=1..8, relative",
        max_over((1..=8).map(|m| {
            let k = g.wavenumber(m);
            let chi = g.sample_with(|r| (k * r).sin());
            let z = radialops::zplus_discrete(&chi)?;
            Ok(z.max_abs_diff(&chi.map(|_, v| k * v))? / (k * chi.max_abs()))
        })),
        1e-10,
    );

    let s = settings();
    let points = [0.5, 1.0, 2.0, 5.0];
    let ks = [1.0, 2.0];
    let pairs: Vec<(f64, f64)> = ks.iter().flat_map(|&k| points.map(|r| (k, r))).collect();
    c.push(
        "quadrature z+ sin(kt) = k sin(kr)",
        max_over(
            pairs
                .iter()
                .map(|&(k, r)| Ok(radialops::zplus_quad(&Fd::sin(k), r, &s)? - k * (k * r).sin())),
        ),
        1e-5,
    );
    let si_ci = |k: f64, r: f64| -> Result<f64> {
        let x = k * r;
        Ok(2.0 * k / PI * (x.sin() * ci(x)? - x.cos() * si(x)?))
    };
    c.push(
        "quadrature z+ cos(kt) = (2k/pi)[sin Ci - cos Si](kr)",
        max_over(
            pairs
                .iter()
                .map(|&(k, r)| Ok(radialops::zplus_quad(&Fd::cos(k), r, &s)? - si_ci(k, r)?)),
        ),
        1e-5,
    );
    c.push(
        "quadrature z+ cos(kt) = -(2k/pi)[sin Ci - cos Si](kr)",
        max_over(
            pairs
                .iter()
                .map(|&(k, r)| Ok(radialops::zplus_quad(&Fd::cos(k), r, &s)? + si_ci(k, r)?)),
        ),
        1e-5,
    );
}

fn inverse(c: &mut Collector) {
    let g = grid(10.0, 256);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    c.push(
        "zinv zplus = zplus zinv = 1, 10 random vectors",
        max_over((0..10).map(|_| {
            let chi = random_samples(g, &mut rng);
            let a = radialops::zinv_apply(&radialops::zplus_discrete(&chi)?)?;
            let b = radialops::zplus_discrete(&radialops::zinv_apply(&chi)?)?;
            Ok(a.max_abs_diff(&chi)?.max(b.max_abs_diff(&chi)?))
        })),
        1e-10,
    );

    let s = settings();
    let f = Fd::exp(1.0);
    let fs = Tabulated::new(&transforms::image(&f, Kernel::Sine, s));
    let over_k = Derived::new(|k: f64| fs.value(k) / k, fs.profile());
    let i_img = Tabulated::new(&fracint::i_image(&f, s));
    let rs = [0.5, 1.0, 2.0];
    c.push(
        "log-kernel (z+)^-1 = F_s (1/k) F_s on exp(-t)",
        max_over(rs.map(|r| Ok(radialops::zinv_quad(&f, r, &s)? - fs_quad(&over_k, r, &s)?))),
        1e-5,
    );
    c.push(
        "log-kernel (z+)^-1 = r K I on exp(-t)",
        max_over(rs.map(|r| Ok(radialops::zinv_quad(&f, r, &s)? - r * ek_k_apply(&i_img, r, &s)?))),
        1e-5,
    );
    c.push(
        "log-kernel (z+)^-1 = (1/2) r K I on exp(-t)",
        max_over(
            rs.map(|r| Ok(radialops::zinv_quad(&f, r, &s)? - 0.5 * r * ek_k_apply(&i_img, r, &s)?)),
        ),
        1e-5,
    );
    c.push(
        "log-kernel (z+)^-1 sin(t) = sin(r)",
        max_over(
            [0.5, 1.0, 3.0].map(|r| Ok(radialops::zinv_quad(&Fd::sin(1.0), r, &s)? - r.sin())),
        ),
        1e-3,
    );
}

fn fracint_checks(c: &mut Collector) {
    let s = settings();
    let mut pts = Vec::new();
    for k in [0.5, 1.0, 2.0] {
        for i in 1..=50 {
            pts.push((k, 10.0 * i as f64 / 50.0));
        }
    }
    c.push(
        "I sin(kt) = sqrt(pi) J1(kr), 50 points, k in {0.5,1,2}",
        max_over(
            pts.iter()
                .map(|&(k, r)| Ok(ek_i_apply(&Fd::sin(k), r, &s)? - PI.sqrt() * j1(k * r)?)),
        ),
        1e-8,
    );
    c.push(
        "adjoint (rK)^T = rI, psi = chi = exp(-t)",
        fracint::adjoint_defect(&Fd::exp(1.0), &Fd::exp(1.0), 40.0),
        1e-5,
    );
    c.push(
        "adjoint (rK)^T = rI, psi = t exp(-t^2/2), chi = exp(-t)",
        fracint::adjoint_defect(&Fd::t_gauss(), &Fd::exp(1.0), 40.0),
        1e-5,
    );
    c.push(
        "K H_e f = r I(f/t), f = t exp(-t^2/2), r=1",
        fracint::rooney_defect(&Fd::t_gauss(), 1.0),
        1e-4,
    );
    c.push(
        "K H_e f = r I(f/t), f = t exp(-t), r=2",
        fracint::rooney_defect(&Fd::t_exp(1.0), 2.0),
        1e-4,
    );
    let r: f64 = 1.0;
    let cos_over_t = Derived::new(|t: f64| t.cos() / t, Fd::cos(1.0).profile());
    c.push(
        "K sin = r I(cos/t) = sqrt(pi) J0 at r=1",
        (|| {
            let target = PI.sqrt() * j0(r)?;
            let lhs = ek_k_oscillatory(&Fd::sin(1.0), r, &s)?;
            let rhs = r * ek_i_apply(&cos_over_t, r, &s)?;
            Ok((lhs - target).abs().max((rhs - target).abs()))
        })(),
        1e-4,
    );

    let radius = 5.0;
    let diagonal_scale = PI * radius * radius / 2.0;
    let mut pairs = Vec::new();
    for n in 1..=4 {
        for m in n + 1..=4 {
            pairs.push((n, m));
        }
    }
    c.push(
        "finite-interval J1 orthogonality, first 4 zero modes",
        max_over(
            pairs
                .iter()
                .map(|&(n, m)| Ok(fracint::bessel_overlap(n, m, radius)? / diagonal_scale)),
        ),
        1e-6,
    );
    c.push(
        "discrete sine-mode orthogonality, N=256",
        Ok(DstMatrixModel::new(grid(radius, 256)).involution_defect()),
        1e-10,
    );
}

const POSITIVITY_RADIUS: f64 = 10.0;

fn positivity(c: &mut Collector) {
    let g = grid(POSITIVITY_RADIUS, 256);
    let zplus = build_matrix(OperatorSpec::discrete(OperatorKind::Zplus), &g);
    let Ok(zplus) = zplus else {
        c.push("Zplus matrix", Err(invalid("assembly failed")), 0.0);
        return;
    };
    c.push(
        "Zplus symmetric",
        Ok(opmatrix::symmetry_defect(&zplus) / zplus.max_abs()),
        1e-12,
    );
    c.push(
        "min eigenvalue of Zplus = pi/R, N=256",
        opmatrix::min_eigenvalue(&zplus).map(|e| e - PI / POSITIVITY_RADIUS),
        1e-8,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let samples: Vec<SampledFunction> = (0..100).map(|_| random_samples(g, &mut rng)).collect();
    c.push(
        "100 random quadratic forms nonnegative",
        max_over(
            samples
                .iter()
                .map(|chi| Ok(opmatrix::quadratic_form(&zplus, chi)?.min(0.0))),
        ),
        0.0,
    );
    c.push(
        "quadratic form = sum k_m (S chi)_m^2 Delta, relative",
        max_over(samples.iter().map(|chi| {
            let q = opmatrix::quadratic_form(&zplus, chi)?;
            Ok((q - opmatrix::factorized_form(chi, |k| k)) / q.abs().max(1.0))
        })),
        1e-10,
    );
    c.push(
        "Pr2 symmetric after conjugation by diag(r)",
        build_matrix(OperatorSpec::discrete(OperatorKind::Pr2), &g)
            .map(|m| opmatrix::weighted_symmetry_defect(&m) / m.max_abs()),
        1e-12,
    );
}

fn nonhermitian(c: &mut Collector) {
    let fine = grid(4.0, 3999);
    let step = Fd::step(0.0, 1.0).expect("valid step");
    c.push(
        "shift step[0,1] by 0.5: lost norm = int_0^a chi^2",
        radialops::shift_demo(&step, &fine, 0.5).map(|r| r.discrete_loss() - r.analytic_loss),
        1e-3,
    );
    c.push(
        "shift step[2,3] by 0.5 loses nothing",
        Fd::step(2.0, 3.0)
            .and_then(|f| radialops::shift_demo(&f, &fine, 0.5))
            .map(|r| r.discrete_loss()),
        1e-12,
    );
    let exp_grid = grid(10.24, 10239);
    c.push(
        "shift exp(-r) by 1: lost norm = (1 - e^-2)/2",
        radialops::shift_demo(&Fd::exp(1.0), &exp_grid, 1.0).map(|r| {
            let exact = (1.0 - (-2f64).exp()) / 2.0;
            (r.discrete_loss() - exact)
                .abs()
                .max((r.analytic_loss - exact).abs())
        }),
        1e-3,
    );
    let plus = radialops::deficiency_check(1, 40.0);
    c.push(
        "e^-r solves -i chi' = i chi",
        plus.as_ref().map(|r| r.residual).map_err(Clone::clone),
        1e-10,
    );
    c.push(
        "e^-r has norm^2 1/2",
        plus.as_ref()
            .map(|r| {
                if r.norm_finite {
                    r.norm_sq - 0.5
                } else {
                    f64::MAX
                }
            })
            .map_err(Clone::clone),
        1e-10,
    );
    c.push(
        "e^r norm^2 grows like e^(2R): ratio R=20 vs R=10 over e^20, minus 1",
        (|| {
            let a = radialops::deficiency_check(-1, 10.0)?;
            let b = radialops::deficiency_check(-1, 20.0)?;
            if a.norm_finite || b.norm_finite {
                return Ok(f64::MAX);
            }
            Ok(b.norm_sq / a.norm_sq / 20f64.exp() - 1.0)
        })(),
        0.1,
    );
    c.push(
        "e^(-1.1 r) is not a solution (residual above 0.05)",
        radialops::deficiency_residual(&Fd::exp(1.1), 1, 40.0)
            .map(|r| (0.05 - r.residual).max(0.0)),
        0.0,
    );
}

/// Reference values for the special functions.
pub const SI_PI: f64 = 1.851_937_051_982_466_2;
pub const CI_ONE: f64 = 0.337_403_922_900_968_13;
pub const J1_ONE: f64 = 0.440_050_585_744_933_52;

fn specfun(c: &mut Collector) {
    c.push("Si(pi)", si(PI).map(|v| v - SI_PI), 1e-7);
    c.push("Ci(1)", ci(1.0).map(|v| v - CI_ONE), 1e-7);
    c.push("J1(1)", j1(1.0).map(|v| v - J1_ONE), 1e-7);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn tolerance_override_forces_failure() {
        let report = run_suite(Suite::Specfun, Some(1e-30));
        assert!(!report.pass);
        assert!(run_suite(Suite::Specfun, None).pass);
    }

    #[test]
    fn report_json_schema() {
        let report = run_suite(Suite::Specfun, None);
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["suite"], "specfun");
        assert_eq!(v["pass"], true);
        assert_eq!(v["grid"]["N"], 256);
        assert!(v["grid"]["R"].is_number());
        let check = &v["checks"][0];
        for key in ["name", "defect", "tol", "pass"] {
            assert!(check.get(key).is_some());
        }
    }
}
