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

use thiserror::Error;

use crate::codes::FarStateReport;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("seed {seed} has zero projection onto the code space; try another seed")]
    ZeroProjection { seed: usize },

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("dimension {dim} exceeds the configured limit {limit}")]
    SizeGuard { dim: usize, limit: usize },

    #[error("trivial Hamiltonian: H is a multiple of the identity")]
    TrivialHamiltonian,

    #[error("state is not far at locality {}: {} violating expectation(s), first witness {}",
        .0.max_checked_weight / 2, .0.violations.len(), .0.first_witness().unwrap_or_default())]
    FarStateViolation(Box<FarStateReport>),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("eigensolver failed to converge")]
    EigenSolver,
}

pub type Result<T> = std::result::Result<T, Error>;
