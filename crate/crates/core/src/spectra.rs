// Copyright 2026 The farstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense Hermitian diagonalisation, eigenspace grouping, eigenspace distance
//! and per-instance certification of the distance-bound chain.

use faer::{c64, Mat, MatRef, Side};
use serde::Serialize;

use crate::bounds::{bound_coarse, bound_generic, bound_intrinsic};
use crate::codes::verify_far_state;
use crate::dense::{require_hermitian, ComplexMatrix};
use crate::error::{Error, Result};
use crate::hamiltonian::{shift, LocalHamiltonian};
use crate::state::StateVector;

/// Default cap on the matrix dimension (12 qubits).
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Slack allowed on every inequality in the certified chain.
pub const CHAIN_TOL: f64 = 1e-9;

/// Full spectrum in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub basis: ComplexMatrix,
    /// `max_j ‖M v_j − λ_j v_j‖`.
    pub residual: f64,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()))
    }

    /// `|⟨v_j|ψ⟩|²` for every eigenvector.
    pub fn overlaps(&self, psi: &StateVector) -> Result<Vec<f64>> {
        if psi.dim() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "state of dimension {} against a {}-dimensional spectrum",
                psi.dim(),
                self.dim()
            )));
        }
        let amps = psi.amplitudes();
        Ok((0..self.dim())
            .map(|j| {
                let col = self.basis.col(j);
                let overlap: c64 = amps.iter().enumerate().map(|(i, a)| col[i].conj() * a).sum();
                overlap.norm_sqr()
            })
            .collect())
    }
}

/// [`eig_hermitian_with_limit`] at [`DEFAULT_MAX_DIM`].
pub fn eig_hermitian(m: MatRef<'_, c64>) -> Result<EigenDecomposition> {
    eig_hermitian_with_limit(m, DEFAULT_MAX_DIM)
}

fn check_dim(m: MatRef<'_, c64>, max_dim: usize) -> Result<()> {
    if m.nrows() > max_dim {
        return Err(Error::SizeGuard { dim: m.nrows(), limit: max_dim });
    }
    require_hermitian(m)
}

pub fn eig_hermitian_with_limit(m: MatRef<'_, c64>, max_dim: usize) -> Result<EigenDecomposition> {
    check_dim(m, max_dim)?;
    let evd = m.self_adjoint_eigen(Side::Lower).map_err(|_| Error::EigenSolver)?;
    let values = evd.S().column_vector();
    let eigenvalues: Vec<f64> = (0..m.nrows()).map(|j| values[j].re).collect();
    let basis = evd.U().to_owned();
    let image = m * &basis;
    let residual = (0..m.nrows())
        .map(|j| {
            let (mv, v) = (image.col(j), basis.col(j));
            (0..m.nrows()).map(|i| (mv[i] - v[i] * eigenvalues[j]).norm_sqr()).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max);
    Ok(EigenDecomposition { eigenvalues, basis, residual })
}

/// `max |λ|` over the spectrum.
pub fn operator_norm(m: MatRef<'_, c64>) -> Result<f64> {
    check_dim(m, DEFAULT_MAX_DIM)?;
    let values = m.self_adjoint_eigenvalues(Side::Lower).map_err(|_| Error::EigenSolver)?;
    Ok(values.iter().fold(0.0f64, |acc, l| acc.max(l.abs())))
}

/// A maximal run of numerically equal eigenvalues, columns `start..start+dimension`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenspace {
    pub eigenvalue: f64,
    pub dimension: usize,
    pub start: usize,
}

impl Eigenspace {
    pub fn columns(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.dimension
    }
}

/// `1e-8 · max(1, spectral radius)`.
pub fn default_degeneracy_tol(decomp: &EigenDecomposition) -> f64 {
    1e-8 * decomp.spectral_radius().max(1.0)
}

/// Splits the ascending spectrum wherever consecutive eigenvalues differ by
/// more than `tol` (default [`default_degeneracy_tol`]). Each group reports the
/// mean of its eigenvalues.
pub fn group_eigenspaces(decomp: &EigenDecomposition, tol: Option<f64>) -> Vec<Eigenspace> {
    let tol = tol.unwrap_or_else(|| default_degeneracy_tol(decomp));
    let values = &decomp.eigenvalues;
    let mut out = Vec::new();
    let mut start = 0;
    for j in 1..=values.len() {
        if j == values.len() || values[j] - values[j - 1] > tol {
            let dimension = j - start;
            let eigenvalue = values[start..j].iter().sum::<f64>() / dimension as f64;
            out.push(Eigenspace { eigenvalue, dimension, start });
            start = j;
        }
    }
    out
}

fn distance_from_projection(proj_norm_sqr: f64) -> f64 {
    let proj = proj_norm_sqr.sqrt().min(1.0);
    (2.0 - 2.0 * proj).max(0.0).sqrt()
}

/// `min ‖ψ − E‖` over unit vectors `E` in the eigenspace, i.e. `√(2 − 2‖Pψ‖)`.
///
/// `‖ψ − E‖² = 2 − 2 Re⟨E|ψ⟩`, and `Re⟨E|ψ⟩ ≤ |⟨E|Pψ⟩| ≤ ‖Pψ‖` with equality at
/// `E = Pψ/‖Pψ‖`. When `Pψ = 0` every `E` is at distance `√2`.
pub fn eigenspace_distance(psi: &StateVector, decomp: &EigenDecomposition, space: &Eigenspace) -> Result<f64> {
    psi.require_normalized()?;
    let overlaps = decomp.overlaps(psi)?;
    Ok(distance_from_projection(overlaps[space.columns()].iter().sum()))
}

/// Per-eigenspace quantities, with `h'` the coefficients shifted by that eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenspaceRecord {
    pub eigenvalue: f64,
    pub dimension: usize,
    pub distance: f64,
    pub l2_norm: f64,
    pub l1_norm: f64,
    /// `‖h'‖₂ / ‖h'‖₁`.
    pub ratio: f64,
    /// `‖H'‖`.
    pub operator_norm: f64,
    /// `‖H'ψ‖`, from term-by-term application.
    pub shifted_action_norm: f64,
}

/// Which links of the chain held; every flag is computed with [`CHAIN_TOL`] slack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainChecks {
    /// `‖ψ − E‖ ≥ ‖H'ψ‖/‖H'‖` on every eigenspace.
    pub distance_ge_action_ratio: bool,
    /// `‖H'ψ‖ = ‖h'‖₂` on every eigenspace.
    pub action_equals_l2: bool,
    /// `‖H'‖ ≤ ‖h'‖₁` on every eigenspace.
    pub operator_norm_le_l1: bool,
    /// `‖ψ − E‖ ≥ ‖h'‖₂/‖h'‖₁` on every eigenspace.
    pub distance_ge_ratio: bool,
    /// `‖h'‖₂/‖h'‖₁ ≥ bound_intrinsic` on every eigenspace.
    pub ratio_ge_intrinsic: bool,
    /// `min distance ≥ bound_intrinsic`.
    pub distance_ge_intrinsic: bool,
    pub intrinsic_ge_generic: bool,
    pub generic_ge_coarse: bool,
}

impl ChainChecks {
    pub fn all(&self) -> bool {
        self.distance_ge_action_ratio
            && self.action_equals_l2
            && self.operator_norm_le_l1
            && self.distance_ge_ratio
            && self.ratio_ge_intrinsic
            && self.distance_ge_intrinsic
            && self.intrinsic_ge_generic
            && self.generic_ge_coarse
    }
}

/// Measured distances and every bound for one `(ψ, H)` pair. The scalar norm
/// fields describe the eigenspace closest to `ψ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub locality: usize,
    pub min_distance: f64,
    pub closest_eigenvalue: f64,
    pub bound_intrinsic: f64,
    pub bound_generic: f64,
    pub bound_coarse: f64,
    pub l2_norm: f64,
    pub l1_norm: f64,
    pub operator_norm: f64,
    pub eigen_residual: f64,
    pub checks: ChainChecks,
    pub eigenspaces: Vec<EigenspaceRecord>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.checks.all()
    }

    /// `min_distance − bound_intrinsic`.
    pub fn margin(&self) -> f64 {
        self.min_distance - self.bound_intrinsic
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremOptions {
    /// Eigenvalue grouping tolerance; `None` uses [`default_degeneracy_tol`].
    pub degeneracy_tol: Option<f64>,
    pub max_dim: usize,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        TheoremOptions { degeneracy_tol: None, max_dim: DEFAULT_MAX_DIM }
    }
}

pub fn verify_theorem(psi: &StateVector, h: &LocalHamiltonian) -> Result<BoundReport> {
    verify_theorem_with(psi, h, &TheoremOptions::default())
}

/// Diagonalises `H`, measures the distance from `ψ` to every eigenspace and
/// checks the full chain of bounds, including the two intermediate identities
/// for `‖H'ψ‖` and `‖H'‖`.
///
/// Fails with [`Error::TrivialHamiltonian`] when `H ∝ I`, and with
/// [`Error::FarStateViolation`] when `ψ` is not far at `H`'s locality.
pub fn verify_theorem_with(psi: &StateVector, h: &LocalHamiltonian, opts: &TheoremOptions) -> Result<BoundReport> {
    if psi.n() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), found: psi.n() });
    }
    if !h.is_non_trivial() {
        return Err(Error::TrivialHamiltonian);
    }
    let n = h.n();
    let locality = h.locality();
    let far = verify_far_state(psi, locality)?;
    if !far.passed {
        return Err(Error::FarStateViolation(Box::new(far)));
    }
    if 1usize.checked_shl(n as u32).is_none_or(|d| d > opts.max_dim) {
        return Err(Error::SizeGuard { dim: 1 << n.min(62), limit: opts.max_dim });
    }

    let dense = h.to_dense()?;
    let decomp = eig_hermitian_with_limit(dense.as_ref(), opts.max_dim)?;
    let spaces = group_eigenspaces(&decomp, opts.degeneracy_tol);
    let overlaps = decomp.overlaps(psi)?;
    let coefficients = h.coefficients();
    let lowest = decomp.eigenvalues[0];
    let highest = decomp.eigenvalues[decomp.dim() - 1];
    let h_psi = h.apply(psi)?;

    let eigenspaces: Vec<EigenspaceRecord> = spaces
        .iter()
        .map(|space| {
            let e = space.eigenvalue;
            let shifted = shift(&coefficients, e);
            let (l2, l1) = (shifted.l2_norm(), shifted.l1_norm());
            let action: f64 = h_psi
                .amplitudes()
                .iter()
                .zip(psi.amplitudes())
                .map(|(hp, p)| (hp - p * e).norm_sqr())
                .sum::<f64>()
                .sqrt();
            EigenspaceRecord {
                eigenvalue: e,
                dimension: space.dimension,
                distance: distance_from_projection(overlaps[space.columns()].iter().sum()),
                l2_norm: l2,
                l1_norm: l1,
                ratio: l2 / l1,
                operator_norm: (highest - e).abs().max((lowest - e).abs()),
                shifted_action_norm: action,
            }
        })
        .collect();

    let bound_intrinsic = bound_intrinsic(&coefficients)?;
    let bound_generic = bound_generic(n, locality, 2)?;
    let bound_coarse = bound_coarse(n, locality, 2)?;
    let closest = eigenspaces
        .iter()
        .min_by(|a, b| a.distance.total_cmp(&b.distance))
        .expect("spectrum is non-empty");

    let every = |f: &dyn Fn(&EigenspaceRecord) -> bool| eigenspaces.iter().all(f);
    let checks = ChainChecks {
        distance_ge_action_ratio: every(&|r| r.distance >= r.shifted_action_norm / r.operator_norm - CHAIN_TOL),
        action_equals_l2: every(&|r| (r.shifted_action_norm - r.l2_norm).abs() <= CHAIN_TOL),
        operator_norm_le_l1: every(&|r| r.operator_norm <= r.l1_norm + CHAIN_TOL),
        distance_ge_ratio: every(&|r| r.distance >= r.ratio - CHAIN_TOL),
        ratio_ge_intrinsic: every(&|r| r.ratio >= bound_intrinsic - CHAIN_TOL),
        distance_ge_intrinsic: closest.distance >= bound_intrinsic - CHAIN_TOL,
        intrinsic_ge_generic: bound_intrinsic >= bound_generic - CHAIN_TOL,
        generic_ge_coarse: bound_generic >= bound_coarse - CHAIN_TOL,
    };

    Ok(BoundReport {
        n,
        locality,
        min_distance: closest.distance,
        closest_eigenvalue: closest.eigenvalue,
        bound_intrinsic,
        bound_generic,
        bound_coarse,
        l2_norm: closest.l2_norm,
        l1_norm: closest.l1_norm,
        operator_norm: closest.operator_norm,
        eigen_residual: decomp.residual,
        checks,
        eigenspaces,
    })
}

/// Dense `M − shift·I`.
pub fn shifted_matrix(m: MatRef<'_, c64>, energy: f64) -> ComplexMatrix {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        if i == j {
            m[(i, j)] - energy
        } else {
            m[(i, j)]
        }
    })
}
