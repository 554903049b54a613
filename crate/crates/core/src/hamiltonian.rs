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

//! Real-weighted Pauli Hamiltonians `H = Σ h_σ σ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use faer::{c64, Mat, MatRef};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dense::{require_hermitian, ComplexMatrix};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, WeightEnumerator};
use crate::state::StateVector;

/// Largest qubit count `to_dense` will materialise.
pub const MAX_DENSE_QUBITS: usize = 14;

/// Coefficients at or below this magnitude do not make a Hamiltonian non-trivial.
pub const TRIVIAL_TOL: f64 = 1e-12;

/// Pauli-basis coefficients with the identity entry kept apart.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    n: usize,
    identity: f64,
    entries: BTreeMap<PauliString, f64>,
}

impl CoefficientVector {
    pub fn new(n: usize) -> Self {
        CoefficientVector { n, identity: 0.0, entries: BTreeMap::new() }
    }

    /// Builds from `(σ, h_σ)` pairs, summing repeats. Phases must be trivial.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, f64)>,
    {
        let mut out = Self::new(n);
        for (sigma, h) in pairs {
            out.add(&sigma, h)?;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `h_I`.
    pub fn identity(&self) -> f64 {
        self.identity
    }

    pub fn set_identity(&mut self, value: f64) {
        self.identity = value;
    }

    pub fn get(&self, sigma: &PauliString) -> f64 {
        if sigma.is_identity() {
            self.identity
        } else {
            self.entries.get(sigma).copied().unwrap_or(0.0)
        }
    }

    pub fn add(&mut self, sigma: &PauliString, h: f64) -> Result<()> {
        if sigma.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: sigma.n() });
        }
        if sigma.phase_exp() != 0 {
            return Err(Error::InvalidArgument(format!("coefficient key {sigma} carries a phase")));
        }
        if sigma.is_identity() {
            self.identity += h;
        } else {
            *self.entries.entry(sigma.clone()).or_insert(0.0) += h;
        }
        Ok(())
    }

    /// Non-identity entries in a fixed order.
    pub fn non_identity(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.entries.iter().map(|(s, &h)| (s, h))
    }

    /// `Σ_{σ≠I} |h_σ|`.
    pub fn off_identity_l1(&self) -> f64 {
        self.entries.values().map(|h| h.abs()).sum()
    }

    /// `Σ_{σ≠I} h_σ²`.
    pub fn off_identity_sum_sq(&self) -> f64 {
        self.entries.values().map(|h| h * h).sum()
    }

    /// `‖h‖₁` including the identity entry.
    pub fn l1_norm(&self) -> f64 {
        self.identity.abs() + self.off_identity_l1()
    }

    /// `‖h‖₂` including the identity entry.
    pub fn l2_norm(&self) -> f64 {
        (self.identity * self.identity + self.off_identity_sum_sq()).sqrt()
    }

    pub fn is_non_trivial(&self) -> bool {
        self.entries.values().any(|h| h.abs() > TRIVIAL_TOL)
    }

    pub fn is_zero(&self) -> bool {
        self.identity == 0.0 && self.entries.values().all(|&h| h == 0.0)
    }
}

/// Returns `h'` with `h'_I = h_I - energy`, all other entries untouched.
pub fn shift(h: &CoefficientVector, energy: f64) -> CoefficientVector {
    let mut out = h.clone();
    out.identity = h.identity - energy;
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coefficient: f64,
    pub pauli: PauliString,
}

/// `Σ h_σ σ` with distinct phase-free Paulis; `locality` is the largest term weight.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalHamiltonian {
    n: usize,
    terms: Vec<Term>,
    locality: usize,
}

impl LocalHamiltonian {
    /// Merges repeated Paulis by summation, keeping first-appearance order, and
    /// drops terms whose merged coefficient is exactly zero.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, PauliString)>,
    {
        let mut index: HashMap<PauliString, usize> = HashMap::new();
        let mut merged: Vec<Term> = Vec::new();
        for (coefficient, pauli) in terms {
            if pauli.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: pauli.n() });
            }
            if pauli.phase_exp() != 0 {
                return Err(Error::InvalidArgument(format!("term {pauli} must be phase-free")));
            }
            if !coefficient.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite coefficient for {pauli}")));
            }
            match index.get(&pauli) {
                Some(&i) => merged[i].coefficient += coefficient,
                None => {
                    index.insert(pauli.clone(), merged.len());
                    merged.push(Term { coefficient, pauli });
                }
            }
        }
        merged.retain(|t| t.coefficient != 0.0);
        let locality = merged.iter().map(|t| t.pauli.weight()).max().unwrap_or(0);
        Ok(LocalHamiltonian { n, terms: merged, locality })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn locality(&self) -> usize {
        self.locality
    }

    pub fn is_non_trivial(&self) -> bool {
        self.terms.iter().any(|t| t.pauli.weight() >= 1 && t.coefficient.abs() > TRIVIAL_TOL)
    }

    pub fn coefficients(&self) -> CoefficientVector {
        let mut out = CoefficientVector::new(self.n);
        for t in &self.terms {
            out.add(&t.pauli, t.coefficient).expect("terms validated on construction");
        }
        out
    }

    /// Dense `2^n × 2^n` matrix.
    pub fn to_dense(&self) -> Result<ComplexMatrix> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(Error::SizeGuard { dim: 1 << self.n.min(63), limit: 1 << MAX_DENSE_QUBITS });
        }
        let dim = 1usize << self.n;
        let mut m = Mat::<c64>::zeros(dim, dim);
        for t in &self.terms {
            let act = t.pauli.basis_action();
            for j in 0..dim {
                m[(j ^ act.x, j)] += act.factor(j) * t.coefficient;
            }
        }
        Ok(m)
    }

    /// `(H - energy·I) ψ`, evaluated term by term.
    pub fn apply_shifted(&self, psi: &StateVector, energy: f64) -> Result<StateVector> {
        if psi.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: psi.n() });
        }
        let amps = psi.amplitudes();
        let mut out: Vec<Complex64> = amps.iter().map(|a| a * -energy).collect();
        for t in &self.terms {
            let act = t.pauli.basis_action();
            for (j, &a) in amps.iter().enumerate() {
                out[j ^ act.x] += act.factor(j) * a * t.coefficient;
            }
        }
        Ok(StateVector::from_amplitudes_unchecked(self.n, out))
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        self.apply_shifted(psi, 0.0)
    }

    /// Parses `coefficient pauli` lines (`#` comments, blank lines skipped).
    /// With `max_locality`, terms heavier than it are rejected.
    pub fn parse(text: &str, max_locality: Option<usize>) -> Result<Self> {
        let mut n = None;
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::Parse { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let (Some(c), Some(p), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad(format!("expected `coefficient pauli`, found `{line}`")));
            };
            let coefficient: f64 = c.parse().map_err(|_| bad(format!("bad coefficient `{c}`")))?;
            if !coefficient.is_finite() {
                return Err(bad(format!("non-finite coefficient `{c}`")));
            }
            if p.starts_with(['+', '-', 'i']) {
                return Err(bad(format!("Pauli `{p}` must be sign-free")));
            }
            let pauli: PauliString = p.parse().map_err(|e: Error| bad(e.to_string()))?;
            match n {
                None => n = Some(pauli.n()),
                Some(n) if n != pauli.n() => {
                    return Err(bad(format!("term acts on {} qubits, expected {n}", pauli.n())));
                }
                _ => {}
            }
            if let Some(limit) = max_locality {
                if pauli.weight() > limit {
                    return Err(bad(format!("term {p} has weight {} above locality {limit}", pauli.weight())));
                }
            }
            terms.push((coefficient, pauli));
        }
        let n = n.ok_or(Error::Parse { line: 0, message: "no terms".into() })?;
        Self::from_terms(n, terms)
    }

    /// One `coefficient pauli` line per term; coefficients use the shortest
    /// round-tripping float representation.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            let _ = writeln!(out, "{} {}", t.coefficient, t.pauli);
        }
        out
    }
}

/// `h_σ = tr(σM) / 2^n` for every σ of weight `<= max_weight` (all σ when `None`).
pub fn decompose_dense(m: MatRef<'_, c64>, max_weight: Option<usize>) -> Result<CoefficientVector> {
    let dim = m.nrows();
    if m.ncols() != dim || !dim.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "{}x{} is not a square power-of-two dimension",
            m.nrows(),
            m.ncols()
        )));
    }
    require_hermitian(m)?;
    let n = dim.trailing_zeros() as usize;
    let mut out = CoefficientVector::new(n);
    for sigma in WeightEnumerator::new(n, max_weight.unwrap_or(n))? {
        let act = sigma.basis_action();
        // σ[k⊕x, k] = factor(k), so tr(σM) = Σ_k factor(k) M[k, k⊕x].
        let trace: Complex64 = (0..dim).map(|k| act.factor(k) * m[(k, k ^ act.x)]).sum();
        out.add(&sigma, trace.re / dim as f64)?;
    }
    Ok(out)
}

/// Uniform `[-scale, scale]` coefficients on every non-identity Pauli of
/// weight `<= locality`, drawn in enumeration order from a seeded ChaCha8.
pub fn random_local(n: usize, locality: usize, seed: u64, scale: f64) -> Result<LocalHamiltonian> {
    if locality == 0 || locality > n {
        return Err(Error::InvalidArgument(format!("locality {locality} must be in 1..={n}")));
    }
    if !scale.is_finite() || scale < 0.0 {
        return Err(Error::InvalidArgument(format!("scale {scale} must be finite and non-negative")));
    }
    if scale == 0.0 {
        return Err(Error::TrivialHamiltonian);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let terms: Vec<(f64, PauliString)> = WeightEnumerator::new(n, locality)?
            .skip(1)
            .map(|sigma| (rng.gen_range(-scale..=scale), sigma))
            .collect();
        let h = LocalHamiltonian::from_terms(n, terms)?;
        if h.is_non_trivial() {
            return Ok(h);
        }
    }
    Err(Error::TrivialHamiltonian)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetParams {
    /// `J`.
    pub coupling: f64,
    /// `g`, transverse Ising only.
    pub field: f64,
}

impl Default for PresetParams {
    fn default() -> Self {
        PresetParams { coupling: 1.0, field: 1.0 }
    }
}

/// Open-chain presets:
/// `transverse_ising` is `-J Σ Z_i Z_{i+1} - g Σ X_i`,
/// `heisenberg` is `J Σ (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1})`.
pub fn preset_hamiltonian(name: &str, n: usize, params: PresetParams) -> Result<LocalHamiltonian> {
    let bond = |p: Pauli, i: usize| {
        let mut s = PauliString::identity(n);
        s.set(i, p);
        s.set(i + 1, p);
        s
    };
    let terms: Vec<(f64, PauliString)> = match name {
        "transverse_ising" | "heisenberg" if n < 2 => {
            return Err(Error::InvalidArgument(format!("{name} needs at least 2 sites, got {n}")));
        }
        "transverse_ising" => (0..n - 1)
            .map(|i| (-params.coupling, bond(Pauli::Z, i)))
            .chain((0..n).map(|i| (-params.field, PauliString::single(n, i, Pauli::X))))
            .collect(),
        "heisenberg" => (0..n - 1)
            .flat_map(|i| [Pauli::X, Pauli::Y, Pauli::Z].map(|p| (params.coupling, bond(p, i))))
            .collect(),
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    LocalHamiltonian::from_terms(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{hermitian_deviation, max_abs_diff};

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn ham(terms: &[(f64, &str)]) -> LocalHamiltonian {
        let n = terms[0].1.len();
        LocalHamiltonian::from_terms(n, terms.iter().map(|&(c, s)| (c, p(s)))).unwrap()
    }

    fn diag(values: &[f64]) -> ComplexMatrix {
        Mat::from_fn(values.len(), values.len(), |i, j| {
            c64::new(if i == j { values[i] } else { 0.0 }, 0.0)
        })
    }

    #[test]
    fn dense_forms() {
        let z = ham(&[(1.0, "ZI")]).to_dense().unwrap();
        assert_eq!(max_abs_diff(z.as_ref(), diag(&[1.0, 1.0, -1.0, -1.0]).as_ref()), 0.0);
        let id = ham(&[(3.0, "II")]).to_dense().unwrap();
        assert_eq!(max_abs_diff(id.as_ref(), diag(&[3.0; 4]).as_ref()), 0.0);
        let xx = ham(&[(2.0, "XX")]).to_dense().unwrap();
        let anti = Mat::from_fn(4, 4, |i, j| c64::new(if i + j == 3 { 2.0 } else { 0.0 }, 0.0));
        assert_eq!(max_abs_diff(xx.as_ref(), anti.as_ref()), 0.0);
    }

    #[test]
    fn dense_guard() {
        let h = LocalHamiltonian::from_terms(15, [(1.0, PauliString::single(15, 0, Pauli::Z))]).unwrap();
        assert!(matches!(h.to_dense(), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn merging_and_locality() {
        let h = ham(&[(1.0, "XIZ"), (2.0, "IYI"), (0.5, "XIZ"), (1.0, "III"), (-1.0, "III")]);
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.terms()[0].coefficient, 1.5);
        assert_eq!(h.locality(), 2);
        assert!(h.is_non_trivial());
        assert!(!ham(&[(3.0, "III")]).is_non_trivial());
        assert!(!ham(&[(1e-13, "XII")]).is_non_trivial());
    }

    #[test]
    fn decompose_simple() {
        let h = decompose_dense(ham(&[(1.0, "ZI")]).to_dense().unwrap().as_ref(), None).unwrap();
        assert_eq!(h.get(&p("ZI")), 1.0);
        assert!(h.non_identity().all(|(s, c)| s == &p("ZI") || c == 0.0));
        assert_eq!(h.identity(), 0.0);
        let h = decompose_dense(ham(&[(2.0, "XX"), (3.0, "II")]).to_dense().unwrap().as_ref(), Some(2)).unwrap();
        assert_eq!(h.identity(), 3.0);
        assert_eq!(h.get(&p("XX")), 2.0);
        assert_eq!(h.get(&p("YY")), 0.0);
    }

    #[test]
    fn decompose_rejects_bad_input() {
        let m = Mat::from_fn(2, 2, |i, j| c64::new((i + 2 * j) as f64, 0.0));
        assert!(matches!(decompose_dense(m.as_ref(), None), Err(Error::NonHermitian { .. })));
        let m = Mat::<c64>::zeros(3, 3);
        assert!(decompose_dense(m.as_ref(), None).is_err());
    }

    #[test]
    fn decompose_random_hermitian_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut m = Mat::<c64>::zeros(8, 8);
        for j in 0..8 {
            for i in 0..=j {
                let v = if i == j {
                    c64::new(rng.gen_range(-1.0..1.0), 0.0)
                } else {
                    c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                };
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        let h = decompose_dense(m.as_ref(), None).unwrap();
        let rebuilt = LocalHamiltonian::from_terms(
            3,
            std::iter::once((h.identity(), PauliString::identity(3)))
                .chain(h.non_identity().map(|(s, c)| (c, s.clone()))),
        )
        .unwrap()
        .to_dense()
        .unwrap();
        assert!(max_abs_diff(rebuilt.as_ref(), m.as_ref()) <= 1e-10);
        assert!(hermitian_deviation(rebuilt.as_ref()) <= 1e-14);
    }

    #[test]
    fn shift_touches_identity_only() {
        let mut h = ham(&[(5.0, "II"), (0.3, "XZ")]).coefficients();
        let s = shift(&h, 5.0);
        assert_eq!(s.identity(), 0.0);
        assert_eq!(s.get(&p("XZ")).to_bits(), 0.3f64.to_bits());
        h.set_identity(0.0);
        assert_eq!(shift(&h, -2.0).identity(), 2.0);
        let back = shift(&shift(&h, 1.25), -1.25);
        assert_eq!(back, h);
    }

    #[test]
    fn random_local_slots_and_determinism() {
        let h = random_local(5, 1, 42, 1.0).unwrap();
        assert_eq!(h.terms().len(), 15);
        assert_eq!(h.locality(), 1);
        assert!(h.terms().iter().all(|t| t.coefficient.abs() <= 1.0));
        assert_eq!(h, random_local(5, 1, 42, 1.0).unwrap());
        assert_ne!(h, random_local(5, 1, 43, 1.0).unwrap());
        assert!(matches!(random_local(5, 1, 42, 0.0), Err(Error::TrivialHamiltonian)));
        assert!(random_local(3, 4, 0, 1.0).is_err());
        assert_eq!(random_local(4, 2, 1, 1.0).unwrap().terms().len(), 4 * 3 + 6 * 9);
    }

    #[test]
    fn presets() {
        let h = preset_hamiltonian("transverse_ising", 2, PresetParams { coupling: 1.0, field: 0.0 }).unwrap();
        assert_eq!(h.terms(), &[Term { coefficient: -1.0, pauli: p("ZZ") }]);
        let h = preset_hamiltonian("heisenberg", 2, PresetParams { coupling: 1.0, field: 0.0 }).unwrap();
        assert_eq!(h.terms().len(), 3);
        assert!(h.terms().iter().all(|t| t.coefficient == 1.0));
        let h = preset_hamiltonian("transverse_ising", 3, PresetParams { coupling: 1.0, field: 0.5 }).unwrap();
        assert_eq!((h.locality(), h.terms().len()), (2, 5));
        assert!(matches!(preset_hamiltonian("nope", 3, PresetParams::default()), Err(Error::UnknownPreset(_))));
        assert!(preset_hamiltonian("heisenberg", 1, PresetParams::default()).is_err());
    }

    #[test]
    fn text_format() {
        let text = "# chain\n1.5 XXI\n-0.25 IZZ\n\n2 XXI\n";
        let h = LocalHamiltonian::parse(text, None).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.terms()[0].coefficient, 3.5);
        assert_eq!(LocalHamiltonian::parse(&h.format(), None).unwrap(), h);
        assert!(LocalHamiltonian::parse(text, Some(1)).is_err());
        assert!(LocalHamiltonian::parse("1.0 -ZZ\n", None).is_err());
        assert!(LocalHamiltonian::parse("1.0 ZZ\n1.0 Z\n", None).is_err());
        assert!(LocalHamiltonian::parse("abc ZZ\n", None).is_err());
        assert!(LocalHamiltonian::parse("# nothing\n", None).is_err());
    }

    #[test]
    fn apply_matches_dense() {
        let h = random_local(3, 2, 5, 1.0).unwrap();
        let m = h.to_dense().unwrap();
        let psi = StateVector::basis(3, 5);
        let hpsi = h.apply_shifted(&psi, 0.7).unwrap();
        for i in 0..8 {
            let expect = m[(i, 5)] - if i == 5 { c64::new(0.7, 0.0) } else { c64::new(0.0, 0.0) };
            assert!((hpsi.amplitudes()[i] - expect).norm() <= 1e-14);
        }
    }
}
