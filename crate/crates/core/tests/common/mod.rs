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

//! Independent dense oracles for the integration tests.
#![allow(dead_code)]

use farstate_core::{c64, CoefficientVector, Pauli, PauliString, StateVector};
use faer::Mat;
use rand::Rng;

fn single(p: Pauli) -> [[c64; 2]; 2] {
    let o = c64::new(0.0, 0.0);
    let l = c64::new(1.0, 0.0);
    let i = c64::new(0.0, 1.0);
    match p {
        Pauli::I => [[l, o], [o, l]],
        Pauli::X => [[o, l], [l, o]],
        Pauli::Y => [[o, -i], [i, o]],
        Pauli::Z => [[l, o], [o, -l]],
    }
}

/// `i^phase · P_0 ⊗ … ⊗ P_{n-1}` by explicit Kronecker products, qubit 0 leftmost.
pub fn dense_pauli(s: &PauliString) -> Mat<c64> {
    let mut m = Mat::from_fn(1, 1, |_, _| c64::new(1.0, 0.0));
    for q in 0..s.n() {
        let f = single(s.get(q));
        let d = m.nrows();
        m = Mat::from_fn(2 * d, 2 * d, |r, c| m[(r / 2, c / 2)] * f[r % 2][c % 2]);
    }
    let phase = [c64::new(1.0, 0.0), c64::new(0.0, 1.0), c64::new(-1.0, 0.0), c64::new(0.0, -1.0)]
        [s.phase_exp() as usize];
    Mat::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)] * phase)
}

pub fn matmul(a: &Mat<c64>, b: &Mat<c64>) -> Mat<c64> {
    let n = a.nrows();
    Mat::from_fn(n, b.ncols(), |i, j| (0..a.ncols()).map(|k| a[(i, k)] * b[(k, j)]).sum())
}

pub fn matvec(a: &Mat<c64>, v: &[c64]) -> Vec<c64> {
    (0..a.nrows()).map(|i| (0..a.ncols()).map(|k| a[(i, k)] * v[k]).sum()).collect()
}

pub fn random_pauli<R: Rng>(n: usize, rng: &mut R) -> PauliString {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let ps: Vec<Pauli> = (0..n).map(|_| letters[rng.gen_range(0..4)]).collect();
    PauliString::from_paulis(&ps).with_phase(rng.gen_range(0..4))
}

pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    let amps = (0..1usize << n).map(|_| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    StateVector::new(n, amps).unwrap().normalized().unwrap()
}

/// Random coefficients on a random subset of the weight-`<= locality` Paulis.
pub fn random_coefficients<R: Rng>(n: usize, locality: usize, rng: &mut R) -> CoefficientVector {
    let paulis = farstate_core::pauli::enumerate_weight_at_most(n, locality).unwrap();
    loop {
        let mut h = CoefficientVector::new(n);
        for s in &paulis {
            if rng.gen_bool(0.5) {
                let scale = if rng.gen_bool(0.2) { 10.0 } else { 1.0 };
                h.add(s, scale * rng.gen_range(-1.0..1.0)).unwrap();
            }
        }
        if h.is_non_trivial() {
            return h;
        }
    }
}
