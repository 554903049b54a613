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

//! Small dense-matrix helpers shared by the Hamiltonian and spectral code.

use faer::{c64, Mat, MatRef};

use crate::error::{Error, Result};

pub type ComplexMatrix = Mat<c64>;

/// Absolute Hermiticity tolerance for matrix inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// `max |M - M†|` entrywise.
pub fn hermitian_deviation(m: MatRef<'_, c64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn require_hermitian(m: MatRef<'_, c64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidArgument(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
    }
    let deviation = hermitian_deviation(m);
    if deviation > HERMITIAN_TOL || deviation.is_nan() {
        return Err(Error::NonHermitian { deviation });
    }
    Ok(())
}

/// `max |A - B|` entrywise; panics on shape mismatch.
pub fn max_abs_diff(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut worst = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}
