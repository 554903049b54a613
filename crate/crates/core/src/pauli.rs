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

//! n-qubit Pauli strings in symplectic form with an exact quartic phase.
//!
//! Qubit `q` is stored at bit `q % 64` of word `q / 64` in both masks. In text
//! form qubit 0 is the leftmost letter, and in the computational basis it is
//! the most significant bit of the amplitude index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::state::StateVector;

type Words = SmallVec<[u64; 1]>;

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `(x, z)` components; `Y` carries both.
    pub const fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub const fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// The operator `i^phase_exp * P_0 ⊗ P_1 ⊗ ... ⊗ P_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: Words,
    z: Words,
    phase: u8,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a, found: b })
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let words = word_count(n);
        PauliString {
            n,
            x: SmallVec::from_elem(0, words),
            z: SmallVec::from_elem(0, words),
            phase: 0,
        }
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut out = Self::identity(paulis.len());
        for (q, &p) in paulis.iter().enumerate() {
            out.set(q, p);
        }
        out
    }

    /// `p` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut out = Self::identity(n);
        out.set(q, p);
        out
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase = phase_exp % 4;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n, "qubit {q} out of range for n = {}", self.n);
        let (w, b) = (q / 64, q % 64);
        Pauli::from_bits(self.x[w] >> b & 1 == 1, self.z[w] >> b & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for n = {}", self.n);
        let (w, b) = (q / 64, q % 64);
        let (px, pz) = p.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | (u64::from(px) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | (u64::from(pz) << b);
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Qubits on which the operator acts non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.get(q) != Pauli::I).collect()
    }

    /// True when both masks are empty, whatever the phase.
    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Drops the phase, leaving the Hermitian tensor product.
    pub fn unsigned(&self) -> Self {
        self.clone().with_phase(0)
    }

    fn y_count(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(x, z)| (x & z).count_ones()).sum()
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        check_same(self.n, other.n)?;
        let x: Words = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z: Words = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        // Reordering Z^{z1} X^{x2} costs (-1)^{|z1 & x2|}.
        let swaps: u32 = self.z.iter().zip(&other.x).map(|(a, b)| (a & b).count_ones()).sum();
        let y_out: u32 = x.iter().zip(&z).map(|(a, b)| (a & b).count_ones()).sum();
        let total = u32::from(self.phase)
            + u32::from(other.phase)
            + self.y_count()
            + other.y_count()
            + 2 * swaps
            + 4 * (y_out / 4 + 1)
            - y_out;
        Ok(PauliString { n: self.n, x, z, phase: (total % 4) as u8 })
    }

    /// Symplectic commutation test.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        check_same(self.n, other.n)?;
        let form: u32 = (0..self.x.len())
            .map(|w| ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones())
            .sum();
        Ok(form.is_multiple_of(2))
    }

    /// Masks aligned with computational-basis indices (qubit `q` at bit `n-1-q`).
    pub(crate) fn index_masks(&self) -> (usize, usize) {
        assert!(self.n <= 63, "basis-index masks need n <= 63");
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in 0..self.n {
            let (px, pz) = self.get(q).bits();
            let bit = 1usize << (self.n - 1 - q);
            if px {
                xm |= bit;
            }
            if pz {
                zm |= bit;
            }
        }
        (xm, zm)
    }

    /// Action on basis states: `σ|j⟩ = i^base · (-1)^{|z & j|} |j ⊕ x⟩`.
    pub(crate) fn basis_action(&self) -> BasisAction {
        let (x, z) = self.index_masks();
        let base = ((u32::from(self.phase) + self.y_count()) % 4) as usize;
        BasisAction { x, z, base }
    }

    /// Returns `σψ`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        check_same(self.n, psi.n())?;
        let act = self.basis_action();
        let amps = psi.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (j, &a) in amps.iter().enumerate() {
            out[j ^ act.x] = act.factor(j) * a;
        }
        Ok(StateVector::from_amplitudes_unchecked(self.n, out))
    }

    /// `⟨ψ|σ|ψ⟩` without materialising `σψ`.
    pub fn expectation(&self, psi: &StateVector) -> Result<Complex64> {
        check_same(self.n, psi.n())?;
        let act = self.basis_action();
        let amps = psi.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &a) in amps.iter().enumerate() {
            acc += amps[j ^ act.x].conj() * act.factor(j) * a;
        }
        Ok(acc)
    }
}

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct BasisAction {
    pub x: usize,
    pub z: usize,
    base: usize,
}

impl BasisAction {
    #[inline]
    pub fn factor(&self, j: usize) -> Complex64 {
        let sign = 2 * ((self.z & j).count_ones() as usize & 1);
        I_POWERS[(self.base + sign) % 4]
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q).letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts an optional `+`/`-` sign (and `i`/`-i`/`+i` for odd phases)
    /// followed by at least one letter from `IXYZ`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |message: String| Error::Parse { line: 1, message };
        let (phase, letters) = if let Some(rest) = text.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = text.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = text.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = text.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = text.strip_prefix('+') {
            (0, rest)
        } else {
            (0, text)
        };
        if letters.is_empty() {
            return Err(bad(format!("empty Pauli string `{text}`")));
        }
        let paulis = letters
            .chars()
            .map(|c| Pauli::from_letter(c).ok_or_else(|| bad(format!("illegal Pauli letter `{c}` in `{text}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::from_paulis(&paulis).with_phase(phase))
    }
}

pub fn parse_pauli(text: &str) -> Result<PauliString> {
    text.parse()
}

pub fn format_pauli(sigma: &PauliString) -> String {
    sigma.to_string()
}

/// Iterator over every phase-free Pauli string of weight at most `max_weight`.
///
/// Order: by weight, then by support in lexicographic order of qubit index
/// tuples, then by letters with `X < Y < Z` and qubit 0 most significant.
#[derive(Debug, Clone)]
pub struct WeightEnumerator {
    n: usize,
    max_weight: usize,
    support: Vec<usize>,
    letters: Vec<u8>,
    exhausted: bool,
}

const LETTERS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

impl WeightEnumerator {
    pub fn new(n: usize, max_weight: usize) -> Result<Self> {
        if max_weight > n {
            return Err(Error::InvalidArgument(format!(
                "max weight {max_weight} exceeds qubit count {n}"
            )));
        }
        Ok(WeightEnumerator { n, max_weight, support: Vec::new(), letters: Vec::new(), exhausted: false })
    }

    fn current(&self) -> PauliString {
        let mut out = PauliString::identity(self.n);
        for (&q, &l) in self.support.iter().zip(&self.letters) {
            out.set(q, LETTERS[l as usize]);
        }
        out
    }

    fn advance(&mut self) {
        for l in self.letters.iter_mut().rev() {
            if *l < 2 {
                *l += 1;
                return;
            }
            *l = 0;
        }
        let w = self.support.len();
        if let Some(i) = (0..w).rev().find(|&i| self.support[i] < self.n - w + i) {
            self.support[i] += 1;
            for k in i + 1..w {
                self.support[k] = self.support[k - 1] + 1;
            }
            return;
        }
        if w == self.max_weight {
            self.exhausted = true;
            return;
        }
        self.support = (0..=w).collect();
        self.letters = vec![0; w + 1];
    }
}

impl Iterator for WeightEnumerator {
    type Item = PauliString;

    fn next(&mut self) -> Option<PauliString> {
        if self.exhausted {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// Every phase-free Pauli string of weight `<= w`, in [`WeightEnumerator`] order.
pub fn enumerate_weight_at_most(n: usize, w: usize) -> Result<Vec<PauliString>> {
    Ok(WeightEnumerator::new(n, w)?.collect())
}
