//! Algorithm parameters and their validation profiles.
//!
//! Two profiles exist. The *theorem* profile is what the container theorem
//! assumes of `(ε, s, t, N, M)`; the *algorithm* profile is what the
//! two-phase algorithm itself needs of `(ε, s, t, τ, z)`. Setting
//! `τ = 2s/t` and `z = 4εs` turns any theorem-profile parameter set into an
//! algorithm-profile one, and `derive_algorithm_profile` certifies exactly
//! that implication.
//!
//! Threshold comparisons against integer counts (`d < z`, `count ≥ s`,
//! `edges ≥ t`) are exact: the counts convert to `f64` without rounding at
//! these scales, so comparing an `f64` count against an `f64` threshold
//! compares the underlying rationals with zero epsilon. Comparisons that
//! involve *products* of parameters (for example `|A| ≤ (1−ε)M`) are done
//! in exact big-rational arithmetic; see [`crate::exact`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct Params {
    /// ε ∈ (0, 1/10].
    pub eps: f64,
    /// Degree bound for eligibility witnesses.
    pub s: f64,
    /// Edge-count target for eligibility witnesses.
    pub t: f64,
    /// N: the size the iterated construction shrinks containers towards.
    pub n_target: f64,
    /// M: the host's vertex count.
    pub m: u64,
    /// Phase-I fingerprint density bound; defaults to 2s/t.
    pub tau: f64,
    /// Phase-II degree threshold; defaults to 4εs.
    pub z: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Profile {
    Theorem,
    Algorithm,
}

impl Params {
    /// Builds parameters with the derived defaults `τ = 2s/t`, `z = 4εs`.
    pub fn new(eps: f64, s: f64, t: f64, n_target: f64, m: u64) -> Params {
        Params {
            eps,
            s,
            t,
            n_target,
            m,
            tau: 2.0 * s / t,
            z: 4.0 * eps * s,
        }
    }

    pub fn with_tau(mut self, tau: f64) -> Params {
        self.tau = tau;
        self
    }

    pub fn with_z(mut self, z: f64) -> Params {
        self.z = z;
        self
    }

    pub fn with_m(mut self, m: u64) -> Params {
        self.m = m;
        self
    }

    /// Basic sanity checked in every mode, relaxed included: finite,
    /// positive quantities and ε < 1. Without `z > 0` Phase II would not
    /// terminate on degree-0 link graphs.
    pub fn sanity_violations(&self) -> Vec<String> {
        let finite = [self.eps, self.s, self.t, self.n_target, self.tau, self.z];
        if finite.iter().any(|x| !x.is_finite()) {
            return vec!["all parameters must be finite".into()];
        }
        let mut v = Vec::new();
        if self.eps <= 0.0 || self.eps >= 1.0 {
            v.push(format!("eps = {} must lie in (0, 1)", self.eps));
        }
        for (name, value) in [
            ("s", self.s),
            ("t", self.t),
            ("N", self.n_target),
            ("tau", self.tau),
            ("z", self.z),
        ] {
            if value <= 0.0 {
                v.push(format!("{name} = {value} must be positive"));
            }
        }
        if self.m == 0 {
            v.push("M must be positive".into());
        }
        v
    }

    /// Violated constraints of the requested profile (empty = pass).
    pub fn profile_violations(&self, profile: Profile) -> Vec<String> {
        let mut v = self.sanity_violations();
        if !v.is_empty() {
            return v;
        }
        if self.eps > 0.1 {
            v.push(format!("eps = {} must satisfy eps <= 1/10", self.eps));
        }
        match profile {
            Profile::Theorem => {
                if 8.0 * self.s > self.eps * self.t {
                    v.push(format!(
                        "8s <= eps*t violated: {} > {}",
                        8.0 * self.s,
                        self.eps * self.t
                    ));
                }
                if 1.0 / (self.eps * self.eps) > self.s {
                    v.push(format!(
                        "1/eps^2 <= s violated: {} > {}",
                        1.0 / (self.eps * self.eps),
                        self.s
                    ));
                }
                if (self.m as f64) < (1.0 + 100.0 * self.eps) * self.n_target {
                    v.push(format!(
                        "M >= (1+100*eps)*N violated: {} < {}",
                        self.m,
                        (1.0 + 100.0 * self.eps) * self.n_target
                    ));
                }
            }
            Profile::Algorithm => {
                if self.tau < 2.0 * self.s / self.t {
                    v.push(format!(
                        "tau >= 2s/t violated: {} < {}",
                        self.tau,
                        2.0 * self.s / self.t
                    ));
                }
                if 4.0 * self.eps * self.s < self.z {
                    v.push(format!(
                        "4*eps*s >= z violated: {} < {}",
                        4.0 * self.eps * self.s,
                        self.z
                    ));
                }
                if self.tau + 1.0 / self.z > self.eps / 2.0 {
                    v.push(format!(
                        "tau + 1/z <= eps/2 violated: {} > {}",
                        self.tau + 1.0 / self.z,
                        self.eps / 2.0
                    ));
                }
            }
        }
        v
    }

    pub fn validate(&self, profile: Profile) -> Result<()> {
        let v = self.profile_violations(profile);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(v))
        }
    }

    /// Certifies the derivation "theorem profile ⇒ algorithm profile once
    /// τ = 2s/t and z = 4εs": validates `self` against the theorem profile,
    /// then returns the derived parameter set, validated against the
    /// algorithm profile.
    pub fn derive_algorithm_profile(&self) -> Result<Params> {
        self.validate(Profile::Theorem)?;
        let derived = Params::new(self.eps, self.s, self.t, self.n_target, self.m);
        derived.validate(Profile::Algorithm)?;
        Ok(derived)
    }
}
