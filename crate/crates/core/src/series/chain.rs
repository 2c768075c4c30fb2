//! Nested chain sums by a single backward sweep per nesting level.
//!
//! A chain sum over `n_1 ~ n_2 ~ ... ~ n_r >= 1` (`~` one of `>`, `>=`, or
//! `>=_2`, "greater or equal, with equality only at even values") is built
//! from the outermost index inwards. Level `j` holds the tail function
//!
//! ```text
//! W_j(n) = sum_{m >= n} g_j(m),   g_j(m) = sign(m) m^(-s_j) v_(j-1)(m)
//! ```
//!
//! where `v_(j-1)(m)` sums the outer indices admissible above `m`
//! (`W_(j-1)(m+1)`, `W_(j-1)(m)`, or `W_(j-1)(m+1) + [m even] g_(j-1)(m)`).
//! Values for `n <= N` come from one backward compensated sweep seeded with
//! the asymptotic value of `W_j(N+1)`, so a full evaluation costs `O(rN)`.
//! `W_r(1)` is the chain sum and `W_r(2k)` the same sum with `n_r >= 2k`.

use super::asymptotic::Expansion;
use super::compensated::CompensatedSum;
use super::{EvalConfig, Kernel, SeriesValue, TailMode};

#[derive(Clone, Debug)]
pub(crate) struct Level {
    /// `W(n)` for `n = 1..=N+1`, at index `n - 1`.
    pub tails: Vec<f64>,
    /// Running sums of `|g|`, aligned with `tails`, for rounding estimates.
    pub abs: Vec<f64>,
    pub expansion: Expansion,
}

/// Tail functions of every prefix `(s_1..s_j)` of one exponent tuple.
#[derive(Clone, Debug)]
pub struct ChainProfile {
    kernel: Kernel,
    depth: usize,
    mode: TailMode,
    /// Levels `first_kept + 1 ..= r` are stored.
    first_kept: usize,
    levels: Vec<Level>,
}

fn rounding(levels: usize, abs: f64) -> f64 {
    16.0 * (levels + 1) as f64 * f64::EPSILON * abs
}

impl ChainProfile {
    pub(crate) fn build(kernel: Kernel, s: &[f64], depth: usize, mode: TailMode, keep_all: bool) -> Self {
        let n = depth;
        let alternating = kernel == Kernel::Alternating;
        let mut v_prev = vec![1.0f64; n];
        let mut v_prev_abs = vec![1.0f64; n];
        let mut v_exp = Expansion::one();
        let mut levels: Vec<Level> = Vec::with_capacity(s.len());
        let mut g = vec![0.0f64; n];
        let mut g_abs = vec![0.0f64; n];
        for &sj in s {
            for m in 1..=n {
                let p = (m as f64).powf(-sj);
                let sign = if alternating && m % 2 == 1 { -1.0 } else { 1.0 };
                g[m - 1] = sign * p * v_prev[m - 1];
                g_abs[m - 1] = p * v_prev_abs[m - 1];
            }
            let mut g_exp = v_exp.mul_power(sj);
            if alternating {
                g_exp = g_exp.mul_sign();
            }
            let w_exp = g_exp.tail_sum();
            let seed = match mode {
                TailMode::Asymptotic => w_exp.eval(n as u64 + 1),
                TailMode::Truncated => 0.0,
            };

            let mut tails = vec![0.0f64; n + 1];
            let mut abs = vec![0.0f64; n + 1];
            let mut acc = CompensatedSum::new();
            acc.add(seed);
            let mut abs_acc = seed.abs();
            tails[n] = seed;
            abs[n] = abs_acc;
            for m in (1..=n).rev() {
                acc.add(g[m - 1]);
                abs_acc += g_abs[m - 1];
                tails[m - 1] = acc.value();
                abs[m - 1] = abs_acc;
            }

            for m in 1..=n {
                let (v, va) = match kernel {
                    Kernel::Strict => (tails[m], abs[m]),
                    Kernel::Star => (tails[m - 1], abs[m - 1]),
                    Kernel::Alternating => {
                        if m % 2 == 0 {
                            (tails[m] + g[m - 1], abs[m] + g_abs[m - 1])
                        } else {
                            (tails[m], abs[m])
                        }
                    }
                };
                v_prev[m - 1] = v;
                v_prev_abs[m - 1] = va;
            }
            v_exp = match kernel {
                Kernel::Strict => w_exp.sub(&g_exp),
                Kernel::Star => w_exp.clone(),
                Kernel::Alternating => w_exp.sub(&g_exp.odd_part()),
            };
            if !keep_all {
                levels.clear();
            }
            levels.push(Level {
                tails,
                abs,
                expansion: w_exp,
            });
        }
        ChainProfile {
            kernel,
            depth,
            mode,
            first_kept: s.len() - levels.len(),
            levels,
        }
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn level(&self, j: usize) -> &Level {
        assert!(j > self.first_kept, "level {j} was not kept");
        &self.levels[j - 1 - self.first_kept]
    }

    pub(crate) fn expansion(&self, j: usize) -> Expansion {
        if j == 0 {
            Expansion::one()
        } else {
            self.level(j).expansion.clone()
        }
    }

    /// `W_j(n)`: the chain sum over the prefix `(s_1..s_j)` with its innermost
    /// index at least `n`. The empty prefix (`j = 0`) is the constant 1.
    pub fn tail(&self, j: usize, n: u64) -> f64 {
        if j == 0 {
            return 1.0;
        }
        let level = self.level(j);
        if n >= 1 && n as usize <= self.depth + 1 {
            level.tails[n as usize - 1]
        } else {
            match self.mode {
                TailMode::Asymptotic => level.expansion.eval(n),
                TailMode::Truncated => 0.0,
            }
        }
    }

    pub(crate) fn abs_tail(&self, j: usize, n: u64) -> f64 {
        if j == 0 {
            return 1.0;
        }
        let level = self.level(j);
        if n >= 1 && n as usize <= self.depth + 1 {
            level.abs[n as usize - 1]
        } else {
            level.expansion.eval(n).abs()
        }
    }

    pub(crate) fn rounding(&self, j: usize, n: u64) -> f64 {
        rounding(j, self.abs_tail(j, n))
    }
}

/// A profile at depth `N` plus, in asymptotic mode, a second one at `N/2`
/// whose disagreement measures the truncation error.
#[derive(Clone, Debug)]
pub struct ChainEvaluation {
    exponents: Vec<f64>,
    fine: ChainProfile,
    coarse: Option<ChainProfile>,
}

impl ChainEvaluation {
    pub(crate) fn new(kernel: Kernel, s: &[f64], cfg: &EvalConfig, keep_all: bool) -> Self {
        let fine = ChainProfile::build(kernel, s, cfg.depth, cfg.tail, keep_all);
        let coarse = match cfg.tail {
            TailMode::Asymptotic => Some(ChainProfile::build(kernel, s, cfg.depth / 2, cfg.tail, keep_all)),
            TailMode::Truncated => None,
        };
        ChainEvaluation {
            exponents: s.to_vec(),
            fine,
            coarse,
        }
    }

    pub fn profile(&self) -> &ChainProfile {
        &self.fine
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    /// `W_j(n)` with an error estimate.
    pub fn value(&self, j: usize, n: u64) -> SeriesValue {
        let value = self.fine.tail(j, n);
        if j == 0 {
            return SeriesValue::exact(1.0);
        }
        let err_bound = match &self.coarse {
            Some(coarse) => (value - coarse.tail(j, n)).abs() + self.fine.rounding(j, n),
            None => self.truncation_bound(j, n) + self.fine.rounding(j, n),
        };
        SeriesValue { value, err_bound }
    }

    /// Rigorous bound on the chains dropped by truncating the outermost index
    /// at `N`: `N^(1-s_1)/(s_1-1) * prod_{i>1} zeta(s_i)`, or the first omitted
    /// term for a single alternating sum.
    fn truncation_bound(&self, j: usize, n: u64) -> f64 {
        let s = &self.exponents[..j];
        let depth = self.fine.depth as f64;
        if j == 1 && self.fine.kernel == Kernel::Alternating {
            let first = (self.fine.depth as u64 + 1).max(n) as f64;
            return first.powf(-s[0]);
        }
        let outer = depth.powf(1.0 - s[0]) / (s[0] - 1.0);
        s[1..].iter().fold(outer, |acc, &si| acc * si / (si - 1.0))
    }
}
