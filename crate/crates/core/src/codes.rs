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

//! Stabilizer codes, codeword synthesis and the far-state check.
//!
//! A state `ψ` is far at locality `L` when `{σψ : weight(σ) ≤ L}` is
//! orthonormal. Any product `σ†τ` of two such Paulis has weight at most `2L`
//! and is the identity only when `σ = τ` up to phase, so the condition is
//! equivalent to `⟨ψ|ρ|ψ⟩ = 0` for every non-identity `ρ` of weight `≤ 2L`.

use std::fmt;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, WeightEnumerator};
use crate::state::StateVector;

/// Magnitude above which an expectation counts as a violation.
pub const EXPECTATION_TOL: f64 = 1e-10;

/// Largest register for which amplitude vectors are built.
pub const MAX_STATE_QUBITS: usize = 24;

/// Signed, commuting, independent Pauli generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliString>,
}

/// First broken invariant found by [`validate_code`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeDefect {
    Anticommuting { first: usize, second: usize },
    /// Generator `row` is a product of earlier ones.
    Dependent { row: usize },
    /// Generator `row` times earlier ones gives `-I`.
    ContainsMinusIdentity { row: usize },
}

impl fmt::Display for CodeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CodeDefect::Anticommuting { first, second } => {
                write!(f, "generators {first} and {second} anticommute")
            }
            CodeDefect::Dependent { row } => write!(f, "generator {row} is dependent on earlier generators"),
            CodeDefect::ContainsMinusIdentity { row } => {
                write!(f, "generator {row} combines with earlier generators to -I")
            }
        }
    }
}

impl StabilizerCode {
    /// Checks shapes and signs only; group-level invariants are left to
    /// [`validate_code`] so that invalid tables can still be inspected.
    pub fn new(n: usize, generators: Vec<PauliString>) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.n() });
            }
            if g.phase_exp() % 2 != 0 {
                return Err(Error::InvalidArgument(format!("generator {g} must have sign +1 or -1")));
            }
        }
        Ok(StabilizerCode { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    /// `k = n − #generators`.
    pub fn logical_qubits(&self) -> usize {
        self.n.saturating_sub(self.generators.len())
    }

    pub fn validate(&self) -> std::result::Result<(), CodeDefect> {
        validate_code(self)
    }

    /// One generator per line in signed `IXYZ` form.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            let _ = writeln!(out, "{g}");
        }
        out
    }

    /// Inverse of [`StabilizerCode::format`]; `#` lines and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut generators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::Parse { line: i + 1, message };
            let g: PauliString = line.parse().map_err(|e: Error| bad(e.to_string()))?;
            if !g.phase_exp().is_multiple_of(2) {
                return Err(bad(format!("generator `{line}` must have sign +1 or -1")));
            }
            match n {
                None => n = Some(g.n()),
                Some(n) if n != g.n() => {
                    return Err(bad(format!("generator has {} qubits, expected {n}", g.n())));
                }
                _ => {}
            }
            generators.push(g);
        }
        let n = n.ok_or(Error::Parse { line: 0, message: "no generators".into() })?;
        Self::new(n, generators)
    }
}

/// Pairwise commutation, then GF(2) independence with exact signs.
pub fn validate_code(code: &StabilizerCode) -> std::result::Result<(), CodeDefect> {
    let gens = &code.generators;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].commutes(&gens[j]).expect("same n") {
                return Err(CodeDefect::Anticommuting { first: i, second: j });
            }
        }
    }
    // Row echelon over the (x|z) bit vectors, in insertion order: each stored
    // row's pivot bit is absent from every row stored after it.
    let mut echelon: Vec<(usize, PauliString)> = Vec::new();
    for (row, g) in gens.iter().enumerate() {
        let mut reduced = g.clone();
        for (pivot, pivot_row) in &echelon {
            if symplectic_bit(&reduced, *pivot) {
                reduced = reduced.multiply(pivot_row).expect("same n");
            }
        }
        let Some(pivot) = (0..2 * code.n).find(|&b| symplectic_bit(&reduced, b)) else {
            return Err(if reduced.phase_exp() == 0 {
                CodeDefect::Dependent { row }
            } else {
                CodeDefect::ContainsMinusIdentity { row }
            });
        };
        echelon.push((pivot, reduced));
    }
    Ok(())
}

/// Bit `b` of the vector `(x_0 … x_{n-1} | z_0 … z_{n-1})`.
fn symplectic_bit(p: &PauliString, b: usize) -> bool {
    let n = p.n();
    let (x, z) = p.get(b % n).bits();
    if b < n {
        x
    } else {
        z
    }
}

fn project(code: &StabilizerCode, seed: usize) -> StateVector {
    let mut psi = StateVector::basis(code.n, seed);
    for g in &code.generators {
        let s = g.apply(&psi).expect("same n");
        let amps: Vec<Complex64> = psi
            .amplitudes()
            .iter()
            .zip(s.amplitudes())
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        psi = StateVector::from_amplitudes_unchecked(code.n, amps);
    }
    psi
}

fn check_for_states(code: &StabilizerCode) -> Result<()> {
    if let Err(defect) = validate_code(code) {
        return Err(Error::InvalidArgument(format!("invalid stabilizer code: {defect}")));
    }
    if code.n > MAX_STATE_QUBITS {
        return Err(Error::SizeGuard { dim: 1 << code.n.min(62), limit: 1 << MAX_STATE_QUBITS });
    }
    Ok(())
}

/// Normalised projection of `|seed⟩` onto the code space, applying
/// `(I + S)/2` for each generator in turn.
pub fn codeword(code: &StabilizerCode, seed: usize) -> Result<StateVector> {
    check_for_states(code)?;
    if seed >= 1 << code.n {
        return Err(Error::InvalidArgument(format!("seed {seed} out of range for {} qubits", code.n)));
    }
    let psi = project(code, seed);
    // Non-zero projections have squared norm at least 2^-#generators.
    if psi.norm_sqr() < 1e-12 {
        return Err(Error::ZeroProjection { seed });
    }
    Ok(psi.normalized().expect("non-zero"))
}

/// [`codeword`] on seeds `0, 1, 2, …` until one projects to a non-zero state.
pub fn codeword_auto(code: &StabilizerCode) -> Result<(usize, StateVector)> {
    check_for_states(code)?;
    for seed in 0..1usize << code.n {
        match codeword(code, seed) {
            Ok(psi) => return Ok((seed, psi)),
            Err(Error::ZeroProjection { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!("a valid stabilizer code has a non-empty code space")
}

/// Outcome of [`verify_far_state`].
#[derive(Debug, Clone, PartialEq)]
pub struct FarStateReport {
    /// `2L`.
    pub max_checked_weight: usize,
    /// Number of non-identity Paulis examined.
    pub checked: usize,
    /// Every offending `ρ` with `⟨ψ|ρ|ψ⟩`, in enumeration order.
    pub violations: Vec<(PauliString, Complex64)>,
    pub passed: bool,
}

impl FarStateReport {
    pub fn first_witness(&self) -> Option<String> {
        self.violations.first().map(|(rho, e)| format!("{rho} (expectation {:.6}{:+.6}i)", e.re, e.im))
    }
}

fn far_preconditions(psi: &StateVector, locality: usize) -> Result<()> {
    if 2 * locality > psi.n() {
        return Err(Error::InvalidArgument(format!(
            "locality {locality} needs 2L <= n, but n = {}",
            psi.n()
        )));
    }
    psi.require_normalized()
}

/// Checks `|⟨ψ|ρ|ψ⟩| ≤ 1e-10` for every non-identity `ρ` of weight `≤ 2L`.
pub fn verify_far_state(psi: &StateVector, locality: usize) -> Result<FarStateReport> {
    far_preconditions(psi, locality)?;
    let mut checked = 0;
    let mut violations = Vec::new();
    for rho in WeightEnumerator::new(psi.n(), 2 * locality)?.skip(1) {
        checked += 1;
        let e = rho.expectation(psi)?;
        if e.norm() > EXPECTATION_TOL {
            violations.push((rho, e));
        }
    }
    let passed = violations.is_empty();
    Ok(FarStateReport { max_checked_weight: 2 * locality, checked, violations, passed })
}

/// Lightest non-identity Pauli with a non-vanishing expectation, searching up
/// to `max_weight`.
pub fn lightest_witness(psi: &StateVector, max_weight: usize) -> Result<Option<(PauliString, Complex64)>> {
    psi.require_normalized()?;
    for rho in WeightEnumerator::new(psi.n(), max_weight.min(psi.n()))?.skip(1) {
        let e = rho.expectation(psi)?;
        if e.norm() > EXPECTATION_TOL {
            return Ok(Some((rho, e)));
        }
    }
    Ok(None)
}

/// Largest `L` with `2L ≤ n` at which `ψ` is far, plus the witness that
/// stops the next locality (if any).
pub fn max_far_locality(psi: &StateVector) -> Result<(usize, Option<(PauliString, Complex64)>)> {
    let cap = psi.n() / 2;
    // Locality cap + 1 would need weight 2·cap + 2 ≤ n + 2; stop at n.
    match lightest_witness(psi, (2 * cap + 2).min(psi.n()))? {
        Some((rho, e)) => Ok((((rho.weight() - 1) / 2).min(cap), Some((rho, e)))),
        None => Ok((cap, None)),
    }
}

/// Names accepted by [`preset_code`].
pub const PRESET_CODES: &[&str] = &["five_qubit_513", "steane_713", "self_dual_12_0_6"];

/// Built-in generator tables.
///
/// * `five_qubit_513`: cyclic shifts of `XZZXI`, distance 3.
/// * `steane_713`: the CSS code from the classical Hamming code, distance 3.
/// * `self_dual_12_0_6`: the graph state of the circulant graph on 12
///   vertices with offsets ±1, ±3, 6; a single state of distance 6.
pub fn preset_code(name: &str) -> Result<StabilizerCode> {
    let parse = |rows: &[&str]| -> Result<StabilizerCode> {
        StabilizerCode::parse(&rows.join("\n"))
    };
    match name {
        "five_qubit_513" => parse(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]),
        "steane_713" => parse(&["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"]),
        "self_dual_12_0_6" => Ok(circulant_graph_state(12, &[1, 3, 6])),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// Graph-state generators `X_v ∏_{u ~ v} Z_u` for the circulant graph where
/// `u ~ v` iff `u − v ≡ ±offset (mod n)`.
pub fn circulant_graph_state(n: usize, offsets: &[usize]) -> StabilizerCode {
    let generators = (0..n)
        .map(|v| {
            let mut g = PauliString::single(n, v, Pauli::X);
            for &k in offsets {
                g.set((v + k) % n, Pauli::Z);
                g.set((v + n - k % n) % n, Pauli::Z);
            }
            g
        })
        .collect();
    StabilizerCode { n, generators }
}
