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

mod common;

use common::{dense_pauli, random_coefficients};
use farstate_core::dense::{hermitian_deviation, max_abs_diff};
use farstate_core::hamiltonian::{decompose_dense, random_local, shift};
use farstate_core::{c64, LocalHamiltonian, PauliString};
use faer::Mat;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_inverts_to_dense(n in 1usize..=6, locality in 1usize..=3, seed in any::<u64>()) {
        let locality = locality.min(n);
        let h = random_local(n, locality, seed, 2.0).unwrap();
        let m = h.to_dense().unwrap();
        prop_assert!(hermitian_deviation(m.as_ref()) <= 1e-14);
        prop_assert_eq!(h.locality(), h.terms().iter().map(|t| t.pauli.weight()).max().unwrap());
        let back = decompose_dense(m.as_ref(), None).unwrap();
        prop_assert!(back.identity().abs() <= 1e-12);
        for t in h.terms() {
            prop_assert!((back.get(&t.pauli) - t.coefficient).abs() <= 1e-12);
        }
        let extra = back.non_identity().filter(|(s, c)| c.abs() > 1e-12 && !h.terms().iter().any(|t| &&t.pauli == s)).count();
        prop_assert_eq!(extra, 0);
    }

    #[test]
    fn dense_matches_kronecker_oracle(n in 1usize..=4, seed in any::<u64>()) {
        let h = random_local(n, n.min(2), seed, 1.0).unwrap();
        let mut oracle = Mat::<c64>::zeros(1 << n, 1 << n);
        for t in h.terms() {
            let d = dense_pauli(&t.pauli);
            oracle = Mat::from_fn(1 << n, 1 << n, |i, j| oracle[(i, j)] + d[(i, j)] * t.coefficient);
        }
        prop_assert_eq!(max_abs_diff(h.to_dense().unwrap().as_ref(), oracle.as_ref()), 0.0);
    }

    #[test]
    fn shift_round_trips(seed in any::<u64>(), e in -50.0f64..50.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_coefficients(3, 2, &mut rng);
        let back = shift(&shift(&h, e), -e);
        prop_assert!((back.identity() - h.identity()).abs() <= 1e-12);
        prop_assert!(back.non_identity().eq(h.non_identity()));
    }

    #[test]
    fn text_format_round_trips(n in 1usize..=6, seed in any::<u64>()) {
        let h = random_local(n, 1, seed, 3.0).unwrap();
        prop_assert_eq!(LocalHamiltonian::parse(&h.format(), None).unwrap(), h);
    }
}

#[test]
fn identity_term_survives_decomposition() {
    let h = LocalHamiltonian::from_terms(
        2,
        [(3.0, PauliString::identity(2)), (2.0, "XX".parse().unwrap()), (-0.5, "YZ".parse().unwrap())],
    )
    .unwrap();
    let back = decompose_dense(h.to_dense().unwrap().as_ref(), Some(2)).unwrap();
    assert_eq!(back.identity(), 3.0);
    assert_eq!(back.get(&"XX".parse().unwrap()), 2.0);
    assert_eq!(back.get(&"YZ".parse().unwrap()), -0.5);
}
