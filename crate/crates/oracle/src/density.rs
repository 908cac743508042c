use std::io::Write;

use nalgebra::DMatrix;
use ngstates_core::Complex;

use crate::ops::CMatrix;

/// Density matrix on `|0⟩..|N-1⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub(crate) fn from_matrix(entries: CMatrix) -> Self {
        debug_assert!(entries.is_square());
        DensityMatrix { entries }
    }

    pub fn diagonal(p: &[f64]) -> Self {
        let n = p.len();
        Self::from_matrix(CMatrix::from_fn(n, n, |i, j| if i == j { Complex::new(p[i], 0.0) } else { Complex::new(0.0, 0.0) }))
    }

    pub fn cutoff(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.entries[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.cutoff()).map(|i| self.entries[(i, i)].re).collect()
    }

    /// Occupation of the top `k` basis states.
    pub fn top_occupation(&self, k: usize) -> f64 {
        let n = self.cutoff();
        (n.saturating_sub(k)..n).map(|i| self.entries[(i, i)].re).sum()
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.entries - self.entries.adjoint()).camax()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.entries + self.entries.adjoint()) * Complex::new(0.5, 0.0);
        h.symmetric_eigenvalues().min()
    }

    /// Largest entrywise distance, padding the smaller matrix with zeros.
    pub fn distance(&self, other: &DensityMatrix) -> f64 {
        let n = self.cutoff().max(other.cutoff());
        let at = |m: &DensityMatrix, i: usize, j: usize| {
            if i < m.cutoff() && j < m.cutoff() { m.entries[(i, j)] } else { Complex::new(0.0, 0.0) }
        };
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (at(self, i, j) - at(other, i, j)).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn truncated(&self, n: usize) -> DensityMatrix {
        DensityMatrix::from_matrix(self.entries.view((0, 0), (n, n)).into_owned())
    }

    /// CSV dump with header `row,col,re,im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "row,col,re,im")?;
        for i in 0..self.cutoff() {
            for j in 0..self.cutoff() {
                let z = self.entries[(i, j)];
                writeln!(w, "{i},{j},{:.16e},{:.16e}", z.re, z.im)?;
            }
        }
        Ok(())
    }
}

impl From<DensityMatrix> for DMatrix<Complex> {
    fn from(d: DensityMatrix) -> Self {
        d.entries
    }
}
