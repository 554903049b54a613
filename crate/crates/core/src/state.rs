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

//! Dense state vectors and the amplitude text format.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `|⟨ψ|ψ⟩ - 1|` for a state to count as normalized.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Dense amplitude vector of `2^n` entries, indexed with qubit 0 as the most
/// significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n >= usize::BITS as usize || amps.len() != 1usize << n {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes do not describe {n} qubits",
                amps.len()
            )));
        }
        Ok(StateVector { n, amps })
    }

    /// Infers `n` from the length, which must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("{len} amplitudes is not a power of two")));
        }
        Self::new(len.trailing_zeros() as usize, amps)
    }

    pub(crate) fn from_amplitudes_unchecked(n: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        StateVector { n, amps }
    }

    pub fn zero(n: usize) -> Self {
        StateVector { n, amps: vec![Complex64::new(0.0, 0.0); 1 << n] }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut out = Self::zero(n);
        out.amps[index] = Complex64::new(1.0, 0.0);
        out
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`.
    pub fn ghz(n: usize) -> Self {
        let mut out = Self::zero(n);
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        out.amps[0] = a;
        out.amps[(1 << n) - 1] = a;
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORMALIZATION_TOL
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm_sqr: self.norm_sqr() })
        }
    }

    /// Scales to unit norm; `None` for the zero vector.
    pub fn normalized(mut self) -> Option<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return None;
        }
        self.amps.iter_mut().for_each(|a| *a /= norm);
        Some(self)
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        StateVector { n: self.n, amps: self.amps.iter().map(|a| a * factor).collect() }
    }

    /// `‖self - other‖`.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
    }

    /// Parses `2^n` lines of `re im`; blank lines and `#` comments are skipped.
    pub fn parse_amplitudes(text: &str) -> Result<Self> {
        let mut amps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::Parse { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let (Some(re), Some(im), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad(format!("expected `re im`, found `{line}`")));
            };
            let re: f64 = re.parse().map_err(|_| bad(format!("bad real part `{re}`")))?;
            let im: f64 = im.parse().map_err(|_| bad(format!("bad imaginary part `{im}`")))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(bad("non-finite amplitude".into()));
            }
            amps.push(Complex64::new(re, im));
        }
        if amps.is_empty() {
            return Err(Error::Parse { line: 0, message: "no amplitudes".into() });
        }
        Self::from_amplitudes(amps).map_err(|e| Error::Parse { line: 0, message: e.to_string() })
    }

    /// One `re im` line per amplitude in index order. Floats use the shortest
    /// representation that round-trips, so output is byte-deterministic.
    pub fn format_amplitudes(&self) -> String {
        let mut out = String::with_capacity(self.amps.len() * 8);
        for a in &self.amps {
            let _ = writeln!(out, "{} {}", a.re, a.im);
        }
        out
    }
}
