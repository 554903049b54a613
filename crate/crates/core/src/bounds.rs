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

//! Parameter counts, Gilbert-Varshamov existence tests and the distance
//! lower bounds.
//!
//! Everything up to the existence test is exact integer arithmetic with
//! overflow reported as an error; floats appear only in the asymptotic rate
//! and in the distance bounds.

use crate::error::{Error, Result};
use crate::hamiltonian::CoefficientVector;

fn overflow(what: &'static str) -> Error {
    Error::Overflow(what)
}

fn check_args(n: usize, locality: usize, d: u32) -> Result<()> {
    if locality > n {
        return Err(Error::InvalidArgument(format!("locality {locality} exceeds n = {n}")));
    }
    if d < 2 {
        return Err(Error::InvalidArgument(format!("local dimension {d} must be at least 2")));
    }
    Ok(())
}

/// Exact `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n - i) / (i + 1) stays integral at every step.
        c = c.checked_mul((n - i) as u128).ok_or(overflow("binomial coefficient"))? / (i as u128 + 1);
    }
    Ok(c)
}

fn non_identity_per_site(d: u32) -> Result<u128> {
    (d as u128).checked_mul(d as u128).map(|v| v - 1).ok_or(overflow("d^2 - 1"))
}

/// `#(n, L) = Σ_{j=0}^{L} C(n, j)(d² − 1)^j`.
pub fn param_count(n: usize, locality: usize, d: u32) -> Result<u128> {
    check_args(n, locality, d)?;
    let base = non_identity_per_site(d)?;
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for j in 0..=locality {
        if j > 0 {
            power = power.checked_mul(base).ok_or(overflow("parameter count"))?;
        }
        let term = binomial(n, j)?.checked_mul(power).ok_or(overflow("parameter count"))?;
        total = total.checked_add(term).ok_or(overflow("parameter count"))?;
    }
    Ok(total)
}

/// Qubit polynomials for `L = 2` and `L = 3`:
/// `(9n² − 3n + 2)/2` and `(9n³ − 18n² + 15n + 2)/2`.
pub fn param_count_closed(n: usize, locality: usize) -> Result<u128> {
    if n < locality {
        return Err(Error::InvalidArgument(format!("n = {n} is below locality {locality}")));
    }
    let m = i128::try_from(n).map_err(|_| overflow("closed form"))?;
    let mul = |a: i128, b: i128| a.checked_mul(b).ok_or(overflow("closed form"));
    let twice = match locality {
        2 => mul(9, mul(m, m)?)? - 3 * m + 2,
        3 => {
            let sq = mul(m, m)?;
            mul(9, mul(sq, m)?)? - mul(18, sq)? + mul(15, m)? + 2
        }
        other => {
            return Err(Error::InvalidArgument(format!("closed form only exists for L = 2 or 3, got {other}")));
        }
    };
    Ok((twice / 2) as u128)
}

/// `(L+1)·C(n,L)·(d²−1)^L`, with a flag for whether `L <= n/2`, the regime in
/// which it is known to dominate [`param_count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpperBound {
    pub value: u128,
    pub in_regime: bool,
}

pub fn param_count_upper(n: usize, locality: usize, d: u32) -> Result<UpperBound> {
    check_args(n, locality, d)?;
    let power = non_identity_per_site(d)?
        .checked_pow(locality as u32)
        .ok_or(overflow("upper bound"))?;
    let value = (locality as u128 + 1)
        .checked_mul(binomial(n, locality)?)
        .and_then(|v| v.checked_mul(power))
        .ok_or(overflow("upper bound"))?;
    Ok(UpperBound { value, in_regime: 2 * locality <= n })
}

/// Both sides of `#(n, 2t) < (2^{2n} − 1)/(2^{n+k} − 1)`, kept as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GvCondition {
    pub count: u128,
    pub numerator: u128,
    pub denominator: u128,
    pub exists: bool,
}

impl GvCondition {
    /// The right-hand side as an integer when the division is exact.
    pub fn exact_rhs(&self) -> Option<u128> {
        self.numerator.is_multiple_of(self.denominator).then(|| self.numerator / self.denominator)
    }
}

pub fn gv_condition(n: usize, k: usize, t: usize) -> Result<GvCondition> {
    if n == 0 || k > n || 2 * t > n {
        return Err(Error::InvalidArgument(format!("need n >= 1, k <= n and 2t <= n (n={n}, k={k}, t={t})")));
    }
    let count = param_count(n, 2 * t, 2)?;
    let pow2 = |e: usize| 1u128.checked_shl(e as u32).filter(|_| e < 128).ok_or(overflow("power of two"));
    let numerator = pow2(2 * n)? - 1;
    let denominator = pow2(n + k)? - 1;
    // count < num / den  ⇔  count · den < num
    let exists = count
        .checked_mul(denominator)
        .map(|lhs| lhs < numerator)
        .unwrap_or(false);
    Ok(GvCondition { count, numerator, denominator, exists })
}

/// Whether a non-degenerate `((n, k))` code correcting `t` errors is guaranteed.
pub fn gv_exists(n: usize, k: usize, t: usize) -> Result<bool> {
    gv_condition(n, k, t).map(|c| c.exists)
}

/// `H(x) = −x log₂ x − (1 − x) log₂(1 − x)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let part = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    part(x) + part(1.0 - x)
}

/// Asymptotic rate `1 − H(2τ) − 2τ log₂ 3`.
pub fn gv_rate(tau: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&tau) {
        return Err(Error::InvalidArgument(format!("t/n = {tau} must satisfy 0 <= 2t/n <= 1")));
    }
    let x = 2.0 * tau;
    Ok(1.0 - binary_entropy(x) - x * 3f64.log2())
}

/// Root of [`gv_rate`] in `(1e-6, 0.25)` by bisection.
pub fn gv_threshold_k0() -> f64 {
    let rate = |t: f64| gv_rate(t).expect("bracket lies in the domain");
    let (mut lo, mut hi) = (1e-6, 0.25);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if rate(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `‖h‖₂ / ‖h‖₁` over all entries, identity included.
pub fn coeff_ratio(h: &CoefficientVector) -> Result<f64> {
    let l1 = h.l1_norm();
    if l1 == 0.0 {
        return Err(Error::InvalidArgument("coefficient vector is zero".into()));
    }
    Ok(h.l2_norm() / l1)
}

fn off_identity_norms(h: &CoefficientVector) -> Result<(f64, f64)> {
    if !h.is_non_trivial() {
        return Err(Error::TrivialHamiltonian);
    }
    Ok((h.off_identity_l1(), h.off_identity_sum_sq()))
}

/// `1/√(1 + A²/B)` with `A = Σ_{σ≠I}|h_σ|` and `B = Σ_{σ≠I} h_σ²`.
pub fn bound_intrinsic(h: &CoefficientVector) -> Result<f64> {
    let (a, b) = off_identity_norms(h)?;
    Ok(1.0 / (1.0 + a * a / b).sqrt())
}

/// `1/√#(n, L)`.
pub fn bound_generic(n: usize, locality: usize, d: u32) -> Result<f64> {
    Ok(1.0 / (param_count(n, locality, d)? as f64).sqrt())
}

/// `[(L+1)·C(n,L)·(d²−1)^L]^{-1/2}`.
pub fn bound_coarse(n: usize, locality: usize, d: u32) -> Result<f64> {
    Ok(1.0 / (param_count_upper(n, locality, d)?.value as f64).sqrt())
}

/// The two energies `h_I ∓ B/A` at which `‖h'‖₂/‖h'‖₁` attains [`bound_intrinsic`].
///
/// With `x = h_I − E`, the squared ratio is `(x² + B)/(|x| + A)²`; its
/// stationary point on `x ≥ 0` solves `x·A = B`.
pub fn minimizing_shift(h: &CoefficientVector) -> Result<(f64, f64)> {
    let (a, b) = off_identity_norms(h)?;
    let offset = b / a;
    Ok((h.identity() - offset, h.identity() + offset))
}
