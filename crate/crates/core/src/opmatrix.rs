//! Dense matrices of the grid operators, with symmetry, positivity and
//! spectral diagnostics.

use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::grid::{format_g17, RadialGrid, SampledFunction, Space};
use crate::radialops::{self, OperatorKind, OperatorSpec, Realization};
use crate::transforms::DstMatrixModel;

/// Largest grid accepted by the eigensolver.
pub const MAX_EIGEN_SIZE: usize = 1024;

/// An `N × N` operator matrix on a grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    grid: RadialGrid,
    entries: Vec<f64>,
    label: String,
}

impl OperatorMatrix {
    /// Wraps raw entries; `label` is free text for hand-built matrices.
    pub fn from_entries(
        grid: RadialGrid,
        entries: Vec<f64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let n = grid.len();
        if entries.len() != n * n {
            return Err(invalid(format!(
                "expected {} entries for N = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(invalid("matrix entries must be finite"));
        }
        Ok(Self {
            grid,
            entries,
            label: label.into(),
        })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn size(&self) -> usize {
        self.grid.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Zero-based entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size() + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.size(), self.size(), &self.entries)
    }

    fn from_dmatrix(grid: RadialGrid, m: &DMatrix<f64>, label: String) -> Self {
        let n = grid.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(m[(i, j)]);
            }
        }
        Self {
            grid,
            entries,
            label,
        }
    }

    /// `M v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.size();
        assert_eq!(v.len(), n, "vector length must match the matrix");
        self.entries
            .par_chunks(n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `diag(a) M diag(b)`.
    pub fn scaled(&self, a: &[f64], b: &[f64]) -> Self {
        let n = self.size();
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(idx, x)| a[idx / n] * x * b[idx % n])
            .collect();
        Self {
            grid: self.grid,
            entries,
            label: self.label.clone(),
        }
    }

    /// `M · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if !self.grid.compatible(&other.grid) {
            return Err(Error::IncompatibleOperands(
                "matrices live on different grids".into(),
            ));
        }
        let product = self.to_dmatrix() * other.to_dmatrix();
        Ok(Self::from_dmatrix(
            self.grid,
            &product,
            format!("{}*{}", self.label, other.label),
        ))
    }

    /// `max |M − other|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if !self.grid.compatible(&other.grid) {
            return Err(Error::IncompatibleOperands(
                "matrices live on different grids".into(),
            ));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Matrix CSV: a `# N=<N> R=<R> op=<label>` header, then one row per line.
    pub fn to_csv(&self) -> String {
        let n = self.size();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# N={} R={} op={}",
            n,
            format_g17(self.grid.radius()),
            self.label
        );
        for row in self.entries.chunks(n) {
            let line: Vec<String> = row.iter().map(|x| format_g17(*x)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// `S diag(w) S` as a dense matrix.
fn spectral_matrix(grid: &RadialGrid, w: impl Fn(f64) -> f64 + Sync) -> DMatrix<f64> {
    let n = grid.len();
    let model = DstMatrixModel::new(*grid);
    let s = DMatrix::from_fn(n, n, |i, j| model.entry(i + 1, j + 1));
    let scaled = DMatrix::from_fn(n, n, |i, j| {
        w(grid.wavenumber(i + 1)) * model.entry(i + 1, j + 1)
    });
    s * scaled
}

/// Assembles the matrix of a discrete operator.
pub fn build_matrix(spec: OperatorSpec, grid: &RadialGrid) -> Result<OperatorMatrix> {
    if matches!(
        spec.realization(),
        Realization::Quadrature | Realization::Kernel
    ) {
        return Err(Error::UnsupportedRealization(format!(
            "{} in {:?} form has no matrix",
            spec.label(),
            spec.realization()
        )));
    }
    let n = grid.len();
    let nodes = grid.nodes();
    let label = spec.label().to_string();
    let matrix = match spec.kind() {
        OperatorKind::Zplus => {
            OperatorMatrix::from_dmatrix(*grid, &spectral_matrix(grid, |k| k), label)
        }
        OperatorKind::ZplusInv => {
            OperatorMatrix::from_dmatrix(*grid, &spectral_matrix(grid, |k| 1.0 / k), label)
        }
        OperatorKind::Pplus | OperatorKind::Pr2 => {
            let power = if spec.kind() == OperatorKind::Pplus {
                1
            } else {
                2
            };
            let m = OperatorMatrix::from_dmatrix(
                *grid,
                &spectral_matrix(grid, |k| k.powi(power)),
                label,
            );
            let inv: Vec<f64> = nodes.iter().map(|r| 1.0 / r).collect();
            m.scaled(&inv, &nodes)
        }
        OperatorKind::DtildeFD | OperatorKind::SecondDiffFD => {
            // column j is the stencil applied to e_j
            let columns: Vec<Vec<f64>> = (0..n)
                .into_par_iter()
                .map(|j| {
                    let mut e = vec![0.0; n];
                    e[j] = 1.0;
                    let basis = SampledFunction::new(*grid, e, Space::Position).expect("length");
                    let out = if spec.kind() == OperatorKind::DtildeFD {
                        radialops::dtilde_fd(&basis)
                    } else {
                        radialops::second_diff_fd(&basis)
                    };
                    out.expect("position space").into_values()
                })
                .collect();
            let mut entries = vec![0.0; n * n];
            for (j, col) in columns.iter().enumerate() {
                for (i, x) in col.iter().enumerate() {
                    entries[i * n + j] = *x;
                }
            }
            OperatorMatrix {
                grid: *grid,
                entries,
                label,
            }
        }
    };
    Ok(matrix)
}

/// `max |M[i][j] − M[j][i]|`.
pub fn symmetry_defect(m: &OperatorMatrix) -> f64 {
    let n = m.size();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((m.get(i, j) - m.get(j, i)).abs());
        }
    }
    worst
}

/// Symmetry defect of `diag(r) M diag(1/r)`, the flat-measure form of a
/// φ-representation operator.
pub fn weighted_symmetry_defect(m: &OperatorMatrix) -> f64 {
    let nodes = m.grid().nodes();
    let inv: Vec<f64> = nodes.iter().map(|r| 1.0 / r).collect();
    symmetry_defect(&m.scaled(&nodes, &inv))
}

fn symmetric_eigen(m: &OperatorMatrix) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    if m.size() > MAX_EIGEN_SIZE {
        return Err(invalid(format!(
            "eigen solve limited to N ≤ {MAX_EIGEN_SIZE}"
        )));
    }
    let defect = symmetry_defect(m);
    if defect > 1e-8 * m.max_abs() {
        return Err(Error::NotSymmetric(defect));
    }
    Ok(SymmetricEigen::new(m.to_dmatrix()))
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn eigenvalues(m: &OperatorMatrix) -> Result<Vec<f64>> {
    let mut values: Vec<f64> = symmetric_eigen(m)?.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn min_eigenvalue(m: &OperatorMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?[0])
}

/// `Δ χᵀ M χ`.
pub fn quadratic_form(m: &OperatorMatrix, chi: &SampledFunction) -> Result<f64> {
    if !m.grid().compatible(chi.grid()) {
        return Err(Error::IncompatibleOperands(
            "function and matrix grids differ".into(),
        ));
    }
    let image = m.apply(chi.values());
    let sum: f64 = chi.values().iter().zip(&image).map(|(a, b)| a * b).sum();
    Ok(sum * m.grid().spacing())
}

/// `Δ Σ_m w(k_m) (Sχ)_m²`, the factorized form of `⟨χ, S diag(w) S χ⟩`.
pub fn factorized_form(chi: &SampledFunction, w: impl Fn(f64) -> f64) -> f64 {
    let grid = chi.grid();
    let hat = DstMatrixModel::new(*grid).apply(chi.values());
    let sum: f64 = hat
        .iter()
        .enumerate()
        .map(|(m, h)| w(grid.wavenumber(m + 1)) * h * h)
        .sum();
    sum * grid.spacing()
}

/// Frobenius norm of `[M, diag(r)]`.
pub fn commutator_norm(m: &OperatorMatrix) -> f64 {
    let n = m.size();
    let nodes = m.grid().nodes();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let c = m.get(i, j) * (nodes[j] - nodes[i]);
            sum += c * c;
        }
    }
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(kind: OperatorKind) -> OperatorSpec {
        OperatorSpec::discrete(kind)
    }

    #[test]
    fn zplus_spectrum_on_three_nodes() {
        let g = RadialGrid::new(1.0, 3).unwrap();
        let m = build_matrix(spec(OperatorKind::Zplus), &g).unwrap();
        assert!(symmetry_defect(&m) < 1e-12);
        let ev = eigenvalues(&m).unwrap();
        for (i, e) in ev.iter().enumerate() {
            assert!((e - (i + 1) as f64 * PI).abs() < 1e-10);
        }
    }

    #[test]
    fn second_difference_row_and_spectrum() {
        let g = RadialGrid::new(4.0, 3).unwrap();
        let m = build_matrix(spec(OperatorKind::SecondDiffFD), &g).unwrap();
        assert_eq!(&m.entries()[3..6], &[-1.0, 2.0, -1.0]);
        let g = RadialGrid::new(2.0, 64).unwrap();
        let m = build_matrix(spec(OperatorKind::SecondDiffFD), &g).unwrap();
        let h = g.spacing();
        for (i, e) in eigenvalues(&m).unwrap().iter().enumerate() {
            let exact = (2.0 - 2.0 * ((i + 1) as f64 * PI / 65.0).cos()) / (h * h);
            assert!((e - exact).abs() < 1e-8 * exact);
        }
    }

    #[test]
    fn pr2_is_conjugated_square() {
        let g = RadialGrid::new(3.0, 40).unwrap();
        let z = build_matrix(spec(OperatorKind::Zplus), &g).unwrap();
        let p = build_matrix(spec(OperatorKind::Pr2), &g).unwrap();
        let nodes = g.nodes();
        let inv: Vec<f64> = nodes.iter().map(|r| 1.0 / r).collect();
        let expect = z.matmul(&z).unwrap().scaled(&inv, &nodes);
        assert!(p.max_abs_diff(&expect).unwrap() < 1e-12 * p.max_abs());
        assert!(symmetry_defect(&p) > 1e-3);
        assert!(weighted_symmetry_defect(&p) < 1e-12 * p.max_abs());
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let g = RadialGrid::new(1.0, 2).unwrap();
        let m = OperatorMatrix::from_entries(g, vec![0.0, 1.0, 0.0, 0.0], "test").unwrap();
        assert_eq!(symmetry_defect(&m), 1.0);
        assert!(matches!(min_eigenvalue(&m), Err(Error::NotSymmetric(_))));
        let id = OperatorMatrix::from_entries(g, vec![1.0, 0.0, 0.0, 1.0], "id").unwrap();
        assert_eq!(min_eigenvalue(&id).unwrap(), 1.0);
    }

    #[test]
    fn quadrature_realization_has_no_matrix() {
        let g = RadialGrid::new(1.0, 3).unwrap();
        let s = OperatorSpec::new(OperatorKind::Zplus, Realization::Quadrature).unwrap();
        assert!(matches!(
            build_matrix(s, &g),
            Err(Error::UnsupportedRealization(_))
        ));
    }

    #[test]
    fn csv_header() {
        let g = RadialGrid::new(1.0, 2).unwrap();
        let m = build_matrix(spec(OperatorKind::Zplus), &g).unwrap();
        let csv = m.to_csv();
        assert!(csv.starts_with("# N=2 R=1 op=zplus\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
