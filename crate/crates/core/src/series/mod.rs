//! Numerical evaluation of zeta values and nested chain sums.
//!
//! All multi-index series here are chain sums `sum n_1^-s_1 ... n_r^-s_r` over
//! index chains of one of three shapes:
//!
//! * [`Kernel::Strict`]: `n_1 > ... > n_r >= 1`, the multiple zeta value
//!   `zeta(s_1, ..., s_r)`;
//! * [`Kernel::Star`]: `n_1 >= ... >= n_r >= 1`, the series `S(s_1, ..., s_r)`;
//! * [`Kernel::Alternating`]: `n_1 >=_2 ... >=_2 n_r >= 1` with the sign
//!   `(-1)^(n_1 + ... + n_r)`, the series `T(s_1, ..., s_r)`. Here `n >=_2 m`
//!   means `n >= m` with equality only when `n` is even; the final `n_r >= 1`
//!   is an ordinary inequality.
//!
//! Sums are truncated at depth `N`. In [`TailMode::Asymptotic`] (the default)
//! the omitted tail is added back from an asymptotic expansion, and the error
//! estimate is the disagreement with a second evaluation at depth `N/2`
//! plus a rounding allowance. In [`TailMode::Truncated`] the value is the plain
//! truncated sum (every index at most `N`) and the error bound is a crude
//! but rigorous majorant of the omitted terms. Either way `err_bound` is an
//! estimate, not a proof.

mod asymptotic;
mod chain;
mod compensated;
mod recurrence;

use std::collections::HashMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{check_range, Error, Result};
use crate::exact::{bernoulli, factorial, int, Rational};
use crate::partitions::{for_each_set_partition, permutations};

pub use chain::{ChainEvaluation, ChainProfile};
pub use compensated::CompensatedSum;
pub use recurrence::{check_outer_pairing, check_shifted_pairing, RecurrenceCheck};

use asymptotic::Expansion;

/// Default convergence margin: every exponent must be at least `1 + delta`.
pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_TOL: f64 = 1e-6;
/// Largest tuple length accepted by [`symmetrize`] (`6! = 720` evaluations).
pub const MAX_SYMMETRIZE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kernel {
    Strict,
    Star,
    Alternating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TailMode {
    #[default]
    Asymptotic,
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    /// Truncation depth `N` of the outermost index.
    pub depth: usize,
    pub target_tol: f64,
    pub delta: f64,
    pub tail: TailMode,
}

impl EvalConfig {
    pub fn new(depth: usize, target_tol: f64, delta: f64) -> Result<Self> {
        let cfg = EvalConfig {
            depth,
            target_tol,
            delta,
            tail: TailMode::Asymptotic,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `N = 10^6` for tuples of length at most 2, `N = 2 * 10^5` beyond.
    pub fn default_for(r: usize) -> Self {
        EvalConfig {
            depth: if r <= 2 { 1_000_000 } else { 200_000 },
            target_tol: DEFAULT_TOL,
            delta: DEFAULT_DELTA,
            tail: TailMode::Asymptotic,
        }
    }

    pub fn with_depth(self, depth: usize) -> Self {
        EvalConfig { depth, ..self }
    }

    pub fn with_tail(self, tail: TailMode) -> Self {
        EvalConfig { tail, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth < 2 {
            return Err(Error::InvalidConfig(format!("depth must be at least 2, got {}", self.depth)));
        }
        if !(self.target_tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tolerance must be positive, got {}", self.target_tol)));
        }
        if !(self.delta > 0.0) {
            return Err(Error::InvalidConfig(format!("delta must be positive, got {}", self.delta)));
        }
        Ok(())
    }

    fn check_exponents(&self, s: &[f64]) -> Result<()> {
        self.validate()?;
        for &si in s {
            if !(si >= 1.0 + self.delta) || !si.is_finite() {
                return Err(Error::ExponentTooSmall { s: si, delta: self.delta });
            }
        }
        Ok(())
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self::default_for(1)
    }
}

/// A numerical value with an estimated bound on its error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub err_bound: f64,
}

impl SeriesValue {
    pub fn exact(value: f64) -> Self {
        SeriesValue { value, err_bound: 0.0 }
    }

    pub fn add(self, other: Self) -> Self {
        SeriesValue {
            value: self.value + other.value,
            err_bound: self.err_bound + other.err_bound,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        SeriesValue {
            value: self.value * c,
            err_bound: self.err_bound * c.abs(),
        }
    }

    pub fn mul(self, other: Self) -> Self {
        SeriesValue {
            value: self.value * other.value,
            err_bound: self.value.abs() * other.err_bound
                + other.value.abs() * self.err_bound
                + self.err_bound * other.err_bound,
        }
    }

    /// `true` when `|value| > err_bound`, i.e. the sign is resolved.
    pub fn sign_resolved(&self) -> bool {
        self.value.abs() > self.err_bound
    }
}

/// `coefficient * pi^power`, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMultiple {
    pub coefficient: Rational,
    pub power: u32,
}

impl PiMultiple {
    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().expect("finite") * PI.powi(self.power as i32)
    }
}

/// `zeta*(2k) = pi^(2k) (2^(2k-1) - 1) B_k / (2k)!`.
pub fn zeta_star_even_exact(k: usize) -> Result<PiMultiple> {
    let b = bernoulli(k)?;
    let odd = (BigInt::one() << (2 * k - 1)) - 1;
    Ok(PiMultiple {
        coefficient: b * int(odd) / int(factorial(2 * k)),
        power: 2 * k as u32,
    })
}

/// `zeta(2k) = zeta*(2k) / (1 - 2^(1-2k))`.
pub fn zeta_even_exact(k: usize) -> Result<PiMultiple> {
    let star = zeta_star_even_exact(k)?;
    let factor = Rational::one() - Rational::new(BigInt::one(), BigInt::one() << (2 * k - 1));
    Ok(PiMultiple {
        coefficient: star.coefficient / factor,
        power: star.power,
    })
}

fn chain_value(kernel: Kernel, s: &[f64], cfg: &EvalConfig, start: u64) -> Result<SeriesValue> {
    if s.is_empty() {
        return Err(Error::NoExponents);
    }
    cfg.check_exponents(s)?;
    Ok(ChainEvaluation::new(kernel, s, cfg, false).value(s.len(), start))
}

/// Riemann zeta `sum_{n>=1} n^-s`.
pub fn zeta(s: f64, cfg: &EvalConfig) -> Result<SeriesValue> {
    chain_value(Kernel::Strict, &[s], cfg, 1)
}

/// Alternating zeta `sum_{n>=1} (-1)^(n-1) n^-s`, summed in pairs
/// `(2m-1)^-s - (2m)^-s`.
pub fn zeta_star(s: f64, cfg: &EvalConfig) -> Result<SeriesValue> {
    cfg.check_exponents(&[s])?;
    let paired = |depth: usize| -> (f64, f64) {
        let pairs = depth / 2;
        let acc: CompensatedSum = (1..=pairs)
            .map(|m| {
                let m = m as f64;
                (2.0 * m - 1.0).powf(-s) - (2.0 * m).powf(-s)
            })
            .collect();
        let next = 2 * pairs as u64 + 1;
        let tail = match cfg.tail {
            // (-1)^(n-1) = -(-1)^n
            TailMode::Asymptotic => -Expansion::one().mul_power(s).mul_sign().tail_sum().eval(next),
            TailMode::Truncated => 0.0,
        };
        (acc.value() + tail, acc.abs_total())
    };
    let (value, abs) = paired(cfg.depth);
    let rounding = 16.0 * f64::EPSILON * abs;
    let err_bound = match cfg.tail {
        TailMode::Asymptotic => (value - paired(cfg.depth / 2).0).abs() + rounding,
        TailMode::Truncated => ((2 * (cfg.depth / 2) + 1) as f64).powf(-s) + rounding,
    };
    Ok(SeriesValue { value, err_bound })
}

/// Multiple zeta value over `n_1 > ... > n_r >= 1`.
pub fn mzv_strict(s: &[f64], cfg: &EvalConfig) -> Result<SeriesValue> {
    chain_value(Kernel::Strict, s, cfg, 1)
}

/// `S(s_1..s_r)` over `n_1 >= ... >= n_r >= 1`.
pub fn mzv_star(s: &[f64], cfg: &EvalConfig) -> Result<SeriesValue> {
    chain_value(Kernel::Star, s, cfg, 1)
}

/// `T(s_1..s_r)` over `n_1 >=_2 ... >=_2 n_r >= 1`, signed by `(-1)^(sum n_i)`.
pub fn t_series(s: &[f64], cfg: &EvalConfig) -> Result<SeriesValue> {
    chain_value(Kernel::Alternating, s, cfg, 1)
}

/// `T_{2k}(s_1..s_r)`: as [`t_series`] with `n_r >= 2k`. The empty tuple
/// gives 1.
pub fn t_series_shifted(k: u64, s: &[f64], cfg: &EvalConfig) -> Result<SeriesValue> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "shift k",
            value: 0,
            min: 1,
            max: usize::MAX,
            hint: "",
        });
    }
    if s.is_empty() {
        cfg.validate()?;
        return Ok(SeriesValue::exact(1.0));
    }
    chain_value(Kernel::Alternating, s, cfg, 2 * k)
}

/// Sum of the kernel over all `r!` orderings of `s`, repeats included.
pub fn symmetrize(kernel: Kernel, s: &[f64], cfg: &EvalConfig) -> Result<SeriesValue> {
    check_range("tuple length", s.len(), 1, MAX_SYMMETRIZE, " (r! evaluations)")?;
    cfg.check_exponents(s)?;
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for perm in permutations(s.len()) {
        let permuted: Vec<f64> = perm.iter().map(|&i| s[i]).collect();
        let v = chain_value(kernel, &permuted, cfg, 1)?;
        acc.add(v.value);
        err += v.err_bound;
    }
    Ok(SeriesValue {
        value: acc.value(),
        err_bound: err,
    })
}

/// `sum_P sign_P c_P f(sum_{P_1} s) ... f(sum_{P_l} s)` over set partitions
/// `P` of `{1..r}`, with `c_P = prod (|P_m| - 1)!` and `sign_P = (-1)^(r-l)`
/// when `signed`, else 1. Each block value `f` is computed once.
pub fn partition_product_sum(
    s: &[f64],
    signed: bool,
    mut single: impl FnMut(f64) -> Result<SeriesValue>,
) -> Result<SeriesValue> {
    let r = s.len();
    let mut combos: Vec<(f64, Vec<u32>)> = Vec::new();
    for_each_set_partition(r, |rgs, blocks| {
        let mut masks = vec![0u32; blocks];
        let mut sizes = vec![0usize; blocks];
        for (e, &b) in rgs.iter().enumerate() {
            masks[b as usize] |= 1 << e;
            sizes[b as usize] += 1;
        }
        let c: f64 = sizes.iter().map(|&n| (1..n).product::<usize>() as f64).product();
        let sign = if signed && (r - blocks) % 2 == 1 { -1.0 } else { 1.0 };
        combos.push((sign * c, masks));
    })?;
    let mut cache: HashMap<u32, SeriesValue> = HashMap::new();
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for (weight, masks) in combos {
        let mut prod = SeriesValue::exact(weight);
        for mask in masks {
            let v = match cache.get(&mask) {
                Some(v) => *v,
                None => {
                    let arg: f64 = (0..r).filter(|e| mask >> e & 1 == 1).map(|e| s[e]).sum();
                    let v = single(arg)?;
                    cache.insert(mask, v);
                    v
                }
            };
            prod = prod.mul(v);
        }
        acc.add(prod.value);
        err += prod.err_bound;
    }
    Ok(SeriesValue {
        value: acc.value(),
        err_bound: err + 16.0 * f64::EPSILON * acc.abs_total(),
    })
}
