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

use common::random_coefficients;
use farstate_core::bounds::*;
use farstate_core::hamiltonian::shift;
use farstate_core::CoefficientVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum of `‖h'‖₂/‖h'‖₁` over `E` by a dense grid, then golden-section
/// refinement around the best grid point.
fn grid_min_ratio(h: &CoefficientVector) -> f64 {
    let f = |e: f64| coeff_ratio(&shift(h, e)).unwrap();
    let reach = 4.0 * (h.off_identity_l1() + 1.0);
    let steps = 4000;
    let step = 2.0 * reach / steps as f64;
    let (best, _) = (0..=steps)
        .map(|i| h.identity() - reach + step * i as f64)
        .map(|e| (e, f(e)))
        .fold((0.0, f64::INFINITY), |acc, (e, v)| if v < acc.1 { (e, v) } else { acc });
    let (mut a, mut b) = (best - step, best + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f(0.5 * (a + b))
}

#[test]
fn closed_forms_agree_with_sum() {
    for l in [2, 3] {
        for n in l..=20 {
            assert_eq!(param_count_closed(n, l).unwrap(), param_count(n, l, 2).unwrap(), "n={n} L={l}");
        }
    }
}

#[test]
fn upper_bound_dominates_in_regime() {
    for d in [2, 3, 4] {
        for n in 0..=20 {
            for l in 0..=n / 2 {
                let up = param_count_upper(n, l, d).unwrap();
                assert!(up.in_regime);
                assert!(param_count(n, l, d).unwrap() <= up.value, "n={n} L={l} d={d}");
            }
        }
    }
}

#[test]
fn qutrit_count_by_enumeration() {
    // Non-identity qutrit operators per site: 8 generalised Paulis.
    let per_site = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|&p| p != (0, 0)).count();
    assert_eq!(per_site, 8);
    let mut count = 0u128;
    for site_a in 0..=per_site {
        for site_b in 0..=per_site {
            let weight = usize::from(site_a > 0) + usize::from(site_b > 0);
            if weight <= 1 {
                count += 1;
            }
        }
    }
    assert_eq!(count, param_count(2, 1, 3).unwrap());
}

#[test]
fn chain_ordering_on_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let l = rng.gen_range(1..=n);
        let h = random_coefficients(n, l, &mut rng);
        let intrinsic = bound_intrinsic(&h).unwrap();
        let generic = bound_generic(n, l, 2).unwrap();
        assert!(intrinsic > 0.0 && intrinsic <= 1.0);
        assert!(intrinsic >= generic - 1e-12, "n={n} L={l}");
        if 2 * l <= n {
            assert!(generic >= bound_coarse(n, l, 2).unwrap() - 1e-12);
        }
    }
}

#[test]
fn every_shift_is_above_the_intrinsic_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let h = random_coefficients(3, 2, &mut rng);
        let e = rng.gen_range(-30.0..30.0);
        assert!(coeff_ratio(&shift(&h, e)).unwrap() >= bound_intrinsic(&h).unwrap() - 1e-12);
    }
}

#[test]
fn intrinsic_bound_is_the_minimum_over_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let h = random_coefficients(n, n, &mut rng);
        let oracle = grid_min_ratio(&h);
        let intrinsic = bound_intrinsic(&h).unwrap();
        assert!((oracle - intrinsic).abs() <= 1e-9, "oracle {oracle} vs {intrinsic}");
        let (lo, hi) = minimizing_shift(&h).unwrap();
        for e in [lo, hi] {
            assert!((coeff_ratio(&shift(&h, e)).unwrap() - intrinsic).abs() <= 1e-12);
        }
    }
}
