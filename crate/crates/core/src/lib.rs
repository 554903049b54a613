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

//! Quantum states that are far from every eigenstate of any non-trivial
//! `L`-local Hamiltonian.
//!
//! The crate builds stabilizer codewords whose low-weight Pauli images are
//! orthonormal, evaluates the parameter counts and Gilbert-Varshamov
//! existence conditions behind them, and certifies the resulting lower bounds
//! on `‖ψ − E‖` by exact diagonalisation on up to 12 qubits.

pub mod bounds;
pub mod codes;
pub mod dense;
pub mod error;
pub mod hamiltonian;
pub mod pauli;
pub mod spectra;
pub mod state;

pub use codes::{FarStateReport, StabilizerCode};
pub use error::{Error, Result};
pub use hamiltonian::{CoefficientVector, LocalHamiltonian};
pub use pauli::{Pauli, PauliString};
pub use spectra::{BoundReport, EigenDecomposition, Eigenspace};
pub use state::StateVector;

pub use faer::c64;
