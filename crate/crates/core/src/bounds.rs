//! Binary entropy, exact binomial sums, and the container-count bound.
//!
//! Binomials are exact big integers; entropy values are `f64` and every
//! test against them carries a documented 1e-9 slack in the exponent. The
//! floor `⌊ζM⌋` uses the rounded `f64` product, so `ζ = 0.3, M = 10`
//! floors to 3 as expected; the one-ulp wobble this can introduce is far
//! inside the comparison slack.

use num::bigint::BigUint;
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Params, Profile};

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// Binomial coefficient as `u64`, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    binomial(n, k).to_u64()
}

/// Exact partial sum of binomials `Σ_{i=0}^{m} C(M, i)`.
pub fn sum_binomials(big_m: u64, m: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut term = BigUint::one();
    for i in 0..=m.min(big_m) {
        if i > 0 {
            term = term * BigUint::from(big_m - i + 1) / BigUint::from(i);
        }
        total += &term;
    }
    total
}

/// Binary entropy with the continuity convention `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfDomain {
            what: "entropy argument",
            got: p,
            range: "[0, 1]",
        });
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.log2() - (1.0 - p) * (1.0 - p).log2())
}

/// Both sides of `C(M, ≤ ⌊ζM⌋) ≤ 2^{H(ζ)M}` and the verdict.
#[derive(Clone, Debug)]
pub struct EntropyCheck {
    pub big_m: u64,
    pub zeta: f64,
    pub floor_zeta_m: u64,
    pub lhs: BigUint,
    pub rhs_log2: f64,
    pub holds: bool,
}

/// Checks the entropy bound for `0 < ζ ≤ 1/2`. The left side is exact; the
/// right side is compared as `log2(lhs) ≤ H(ζ)·M` with 1e-9 slack.
pub fn check_entropy_bound(big_m: u64, zeta: f64) -> Result<EntropyCheck> {
    if !(zeta > 0.0 && zeta <= 0.5) {
        return Err(Error::OutOfDomain {
            what: "zeta",
            got: zeta,
            range: "(0, 1/2]",
        });
    }
    let floor_zeta_m = (zeta * big_m as f64).floor() as u64;
    let lhs = sum_binomials(big_m, floor_zeta_m);
    let rhs_log2 = binary_entropy(zeta)? * big_m as f64;
    let lhs_log2 = log2_biguint(&lhs);
    let holds = lhs_log2 <= rhs_log2 + 1e-9;
    Ok(EntropyCheck {
        big_m,
        zeta,
        floor_zeta_m,
        lhs,
        rhs_log2,
        holds,
    })
}

/// `log2` of a positive big integer, accurate to ~1e-12 relative.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("small biguint").log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit mantissa");
    top.log2() + shift as f64
}

/// The evaluated container-count bound of the iterated construction.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub eps: f64,
    pub s: f64,
    pub t: f64,
    pub n_target: f64,
    pub m: u64,
    pub tau: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Whether the parameters pass the theorem profile (under which
    /// `τ, β ≤ ε/4` automatically, so the entropy bound always applies).
    pub theorem_profile_ok: bool,
    /// Least integer with `(1 - ε/2)^p · M ≤ N` (floating point).
    pub p: u32,
    /// `(2M/ε) · (H(τ) + H(β))`.
    pub log2_bound: f64,
}

/// Evaluates `log2|C| ≤ (2M/ε)(H(2s/t) + H(1/4εs))`. Errors when `τ` or
/// `β` exceeds 1/2 — the entropy bound is then inapplicable and no clamped
/// value is reported. Theorem-profile validity is reported, not enforced,
/// so boundary instances like `τ = β = 1/2` remain expressible.
pub fn container_count_bound(params: &Params) -> Result<BoundReport> {
    let sanity = params.sanity_violations();
    if !sanity.is_empty() {
        return Err(Error::InvalidParams(sanity));
    }
    let tau = 2.0 * params.s / params.t;
    let beta = 1.0 / (4.0 * params.eps * params.s);
    if tau > 0.5 {
        return Err(Error::OutOfDomain {
            what: "tau = 2s/t",
            got: tau,
            range: "(0, 1/2]",
        });
    }
    if beta > 0.5 {
        return Err(Error::OutOfDomain {
            what: "beta = 1/(4*eps*s)",
            got: beta,
            range: "(0, 1/2]",
        });
    }
    let gamma = 1.0 - params.eps / 2.0;
    let mut p = 0u32;
    let mut size = params.m as f64;
    while size > params.n_target {
        size *= gamma;
        p += 1;
    }
    let log2_bound =
        2.0 * params.m as f64 / params.eps * (binary_entropy(tau)? + binary_entropy(beta)?);
    Ok(BoundReport {
        eps: params.eps,
        s: params.s,
        t: params.t,
        n_target: params.n_target,
        m: params.m,
        tau,
        beta,
        gamma,
        theorem_profile_ok: params.profile_violations(Profile::Theorem).is_empty(),
        p,
        log2_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(4, 7), BigUint::zero());
        assert_eq!(binomial_u64(20, 10), Some(184_756));
        assert_eq!(binomial_u64(70, 35), None); // > u64::MAX
    }

    #[test]
    fn sum_binomials_examples() {
        // 1 + 10 + 45 + 120
        assert_eq!(sum_binomials(10, 3), BigUint::from(176u32));
        assert_eq!(sum_binomials(17, 0), BigUint::one());
        assert_eq!(sum_binomials(12, 12), BigUint::from(1u32) << 12);
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.25).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-12);
        assert!(binary_entropy(1.2).is_err());
        // Symmetry.
        for p in [0.1, 0.3, 0.42] {
            assert!((binary_entropy(p).unwrap() - binary_entropy(1.0 - p).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_bound_at_10_03() {
        let c = check_entropy_bound(10, 0.3).unwrap();
        assert_eq!(c.floor_zeta_m, 3);
        assert_eq!(c.lhs, BigUint::from(176u32));
        // 2^{H(0.3)·10} ≈ 449.7
        assert!((c.rhs_log2 - 8.812_908_992_306_927).abs() < 1e-12);
        assert!(c.holds);
    }

    #[test]
    fn entropy_bound_full_at_half() {
        let c = check_entropy_bound(12, 0.5).unwrap();
        assert_eq!(c.floor_zeta_m, 6);
        assert!(c.holds);
        assert_eq!(c.rhs_log2, 12.0);
        assert!(check_entropy_bound(12, 0.6).is_err());
        assert!(check_entropy_bound(12, 0.0).is_err());
    }

    #[test]
    fn log2_biguint_accuracy() {
        let x = BigUint::from(1u32) << 200;
        assert!((log2_biguint(&x) - 200.0).abs() < 1e-9);
        let y = BigUint::from(176u32);
        assert!((log2_biguint(&y) - 176f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn bound_report_reference_instance() {
        // tau = beta = 0.025; bound/M = (2/0.1)·2·H(0.025) = 6.74643725986681.
        let p = Params::new(0.1, 100.0, 8000.0, 900.0, 10_000);
        let r = container_count_bound(&p).unwrap();
        assert_eq!(r.tau, 0.025);
        assert_eq!(r.beta, 0.025);
        assert!((r.log2_bound / 10_000.0 - 6.746_437_259_866_81).abs() < 1e-9);
        // p is the least power with (1-eps/2)^p · M ≤ N.
        assert!(0.95f64.powi(r.p as i32) * 10_000.0 <= 900.0);
        assert!(0.95f64.powi(r.p as i32 - 1) * 10_000.0 > 900.0);
    }

    #[test]
    fn bound_report_trivial_at_half() {
        // s = 5, t = 20, eps = 0.1 gives tau = beta = 1/2 exactly, so the
        // bound collapses to (2M/eps)·2 = 4M/eps.
        let p = Params::new(0.1, 5.0, 20.0, 900.0, 10_000);
        let r = container_count_bound(&p).unwrap();
        assert_eq!(r.tau, 0.5);
        assert_eq!(r.beta, 0.5);
        assert!(!r.theorem_profile_ok);
        assert_eq!(r.log2_bound, 4.0 * 10_000.0 / 0.1);
    }

    #[test]
    fn bound_rejects_inapplicable_entropy() {
        // tau = 2·5/10 = 1 > 1/2: inapplicable, reported as an error.
        let p = Params::new(0.1, 5.0, 10.0, 900.0, 10_000);
        assert!(matches!(
            container_count_bound(&p),
            Err(Error::OutOfDomain { what, .. }) if what.contains("tau")
        ));
    }

    #[test]
    fn theorem_profile_forces_applicability() {
        let p = Params::new(0.1, 100.0, 8000.0, 900.0, 10_000);
        let r = container_count_bound(&p).unwrap();
        assert!(r.theorem_profile_ok);
        assert!(r.tau <= 0.5 && r.beta <= 0.5);
    }

    #[test]
    fn bound_monotone_in_m_and_t() {
        let base = Params::new(0.1, 100.0, 8000.0, 900.0, 10_000);
        let r1 = container_count_bound(&base).unwrap();
        let r2 = container_count_bound(&base.with_m(20_000)).unwrap();
        assert!(r2.log2_bound >= r1.log2_bound);
        for (t_lo, t_hi) in [(8000.0, 16000.0), (16000.0, 64000.0)] {
            let lo = container_count_bound(&Params::new(0.1, 100.0, t_lo, 900.0, 10_000)).unwrap();
            let hi = container_count_bound(&Params::new(0.1, 100.0, t_hi, 900.0, 10_000)).unwrap();
            assert!(hi.log2_bound <= lo.log2_bound);
        }
    }
}
