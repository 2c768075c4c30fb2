//! The two recurrences that decompose `T` and `T_{2k}` by their smallest
//! index,
//!
//! ```text
//! T(s_1..s_r)      = sum_{k>=1} (-(2k-1)^-s_r + (2k)^-s_r) T_{2k}(s_1..s_{r-1})
//! T_{2k}(s_1..s_r) = sum_{l>=k} sum_{j=1}^{r} prod_{i>j} (2l)^-s_i
//!                      * ((2l)^-s_j - (2l+1)^-s_j) T_{2l+2}(s_1..s_{j-1})
//! ```
//!
//! with `T_{2l+2}()` = 1. Both sides are evaluated from one chain profile:
//! the left side is a tail value, the right side a sum over stored tails
//! plus an asymptotic remainder.

use super::asymptotic::Expansion;
use super::chain::ChainProfile;
use super::compensated::CompensatedSum;
use super::{EvalConfig, Kernel, SeriesValue, TailMode};
use crate::error::{Error, Result};

/// Both sides of a recurrence, each with its own error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrenceCheck {
    pub lhs: SeriesValue,
    pub rhs: SeriesValue,
}

impl RecurrenceCheck {
    pub fn delta(&self) -> f64 {
        (self.lhs.value - self.rhs.value).abs()
    }

    pub fn bound(&self) -> f64 {
        self.lhs.err_bound + self.rhs.err_bound
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.delta() <= tol
    }
}

fn power(s: f64) -> Expansion {
    Expansion::one().mul_power(s)
}

/// Runs `side` on the profiles at depth `N` and `N/2`; their disagreement
/// plus rounding is the error estimate.
fn two_depths(
    profiles: &(ChainProfile, ChainProfile),
    cfg: &EvalConfig,
    side: impl Fn(&ChainProfile) -> (f64, f64),
) -> SeriesValue {
    let (value, abs) = side(&profiles.0);
    let (coarse, _) = side(&profiles.1);
    let rounding = 16.0 * (cfg.depth as f64).log2() * f64::EPSILON * abs;
    SeriesValue {
        value,
        err_bound: (value - coarse).abs() + rounding,
    }
}

fn profiles(s: &[f64], cfg: &EvalConfig) -> Result<(ChainProfile, ChainProfile)> {
    if s.is_empty() {
        return Err(Error::NoExponents);
    }
    cfg.check_exponents(s)?;
    let build = |depth| ChainProfile::build(Kernel::Alternating, s, depth, cfg.tail, true);
    Ok((build(cfg.depth), build(cfg.depth / 2)))
}

fn lhs(profiles: &(ChainProfile, ChainProfile), cfg: &EvalConfig, r: usize, start: u64) -> SeriesValue {
    two_depths(profiles, cfg, |p| (p.tail(r, start), p.abs_tail(r, start)))
}

/// Both sides of the recurrence for `T(s)` by its last index.
pub fn check_outer_pairing(s: &[f64], cfg: &EvalConfig) -> Result<RecurrenceCheck> {
    let profiles = profiles(s, cfg)?;
    let r = s.len();
    let sr = s[r - 1];
    let rhs = two_depths(&profiles, cfg, |p| {
        let last = (p.depth() as u64 + 1) / 2;
        let mut acc = CompensatedSum::new();
        for k in 1..=last {
            let weight = -((2 * k - 1) as f64).powf(-sr) + ((2 * k) as f64).powf(-sr);
            acc.add(weight * p.tail(r - 1, 2 * k));
        }
        if cfg.tail == TailMode::Asymptotic {
            let weight = power(sr).sub(&power(sr).shift(-1));
            let summand = weight.mul(&p.expansion(r - 1)).even_subsequence();
            acc.add(summand.tail_sum().eval(last + 1));
        }
        (acc.value(), acc.abs_total())
    });
    Ok(RecurrenceCheck {
        lhs: lhs(&profiles, cfg, r, 1),
        rhs,
    })
}

/// Both sides of the recurrence for `T_{2k}(s)` by its last index.
pub fn check_shifted_pairing(k: u64, s: &[f64], cfg: &EvalConfig) -> Result<RecurrenceCheck> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "shift k",
            value: 0,
            min: 1,
            max: usize::MAX,
            hint: "",
        });
    }
    let profiles = profiles(s, cfg)?;
    let r = s.len();
    let rhs = two_depths(&profiles, cfg, |p| {
        // the largest l with T_{2l+2} still stored
        let last = (p.depth() as u64).saturating_sub(1) / 2;
        let mut acc = CompensatedSum::new();
        for l in k..=last {
            let even = (2 * l) as f64;
            let odd = even + 1.0;
            let mut outer = 1.0;
            for j in (1..=r).rev() {
                let sj = s[j - 1];
                let diff = even.powf(-sj) - odd.powf(-sj);
                acc.add(outer * diff * p.tail(j - 1, 2 * l + 2));
                outer *= even.powf(-sj);
            }
        }
        if cfg.tail == TailMode::Asymptotic {
            let mut summand = Expansion::zero();
            let mut outer = Expansion::one();
            for j in (1..=r).rev() {
                let sj = s[j - 1];
                let diff = power(sj).sub(&power(sj).shift(1));
                let inner = p.expansion(j - 1).shift(2);
                summand = summand.add(&outer.mul(&diff).mul(&inner));
                outer = outer.mul_power(sj);
            }
            acc.add(summand.even_subsequence().tail_sum().eval((last + 1).max(k)));
        }
        (acc.value(), acc.abs_total())
    });
    Ok(RecurrenceCheck {
        lhs: lhs(&profiles, cfg, r, 2 * k),
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default_for(3).with_depth(20_000)
    }

    #[test]
    fn outer_pairing_holds() {
        for s in [&[2.0][..], &[2.0, 2.0], &[1.3, 2.5, 1.7]] {
            let c = check_outer_pairing(s, &cfg()).unwrap();
            assert!(c.holds(1e-9), "{s:?}: {c:?}");
            assert!(c.lhs.value < 0.0);
        }
    }

    #[test]
    fn shifted_pairing_holds() {
        for k in [1u64, 3, 50] {
            for s in [&[2.0][..], &[1.5, 3.0], &[1.3, 2.5, 1.7]] {
                let c = check_shifted_pairing(k, s, &cfg()).unwrap();
                assert!(c.holds(1e-9), "k={k} {s:?}: {c:?}");
                assert!(c.lhs.value > 0.0);
            }
        }
    }

    #[test]
    fn truncated_sides_agree_without_tails() {
        // truncation cuts both sides at the same chains only approximately,
        // so the check is loose here
        let cfg = cfg().with_tail(TailMode::Truncated);
        let c = check_outer_pairing(&[3.0, 3.0], &cfg).unwrap();
        assert!(c.holds(1e-6), "{c:?}");
    }

    #[test]
    fn rejects_zero_shift() {
        assert!(check_shifted_pairing(0, &[2.0], &cfg()).is_err());
    }
}
