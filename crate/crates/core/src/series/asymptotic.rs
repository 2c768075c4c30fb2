//! Asymptotic expansions of functions on the positive integers,
//!
//! ```text
//! f(n) ~ sum_i c_i n^(-e_i) + (-1)^n sum_j d_j n^(-g_j)      (n -> infinity)
//! ```
//!
//! closed under the operations the nested-sum evaluator needs: products with
//! `n^(-s)` and `(-1)^n`, parity masks, shifts `n -> n + h`, and tail sums
//! `sum_{m >= n} f(m)`. Tail sums of the smooth part use Euler-Maclaurin,
//! tail sums of the alternating part use Boole summation,
//!
//! ```text
//! sum_{m>=n} (-1)^m f(m) = (-1)^n (f/2 - f'/4 + f'''/48 - ...)(n)
//! ```
//!
//! whose coefficients are those of `1/(1 + e^x)`. Both series diverge, so
//! they are cut after [`CORRECTION_TERMS`] terms; at the depths used here the
//! next term is far below double precision.

use std::sync::OnceLock;

use num_traits::ToPrimitive;

use crate::exact::{bernoulli_signed_table, factorial, Rational};

/// Bernoulli / Boole correction terms kept in each tail sum.
pub const CORRECTION_TERMS: usize = 7;

/// Terms whose exponent exceeds the smallest one by more than this are
/// dropped; at `n >= 1000` they are below `1e-36` relative.
const EXPONENT_WINDOW: f64 = 12.0;

const MERGE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Term {
    pub coef: f64,
    pub exp: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Expansion {
    pub smooth: Vec<Term>,
    pub alternating: Vec<Term>,
}

struct Coefficients {
    /// `B_{2k}/(2k)!` for `k = 1..=CORRECTION_TERMS`.
    euler_maclaurin: Vec<f64>,
    /// Odd-degree coefficients `g_{2k-1}` of `1/(1+e^x) = 1/2 + sum g_j x^j`.
    boole: Vec<f64>,
}

fn coefficients() -> &'static Coefficients {
    static CELL: OnceLock<Coefficients> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = bernoulli_signed_table(2 * CORRECTION_TERMS);
        let mut euler_maclaurin = Vec::new();
        let mut boole = Vec::new();
        for k in 1..=CORRECTION_TERMS {
            let over = &b[2 * k] / Rational::from_integer(factorial(2 * k));
            euler_maclaurin.push(over.to_f64().expect("finite"));
            let scale = Rational::from_integer((num_bigint::BigInt::from(1) << (2 * k)) - 1);
            boole.push(-(over * scale).to_f64().expect("finite"));
        }
        Coefficients {
            euler_maclaurin,
            boole,
        }
    })
}

/// `e (e+1) ... (e+k-1)`.
fn rising(e: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (e + i as f64))
}

fn normalize(terms: &mut Vec<Term>) {
    terms.sort_by(|a, b| a.exp.total_cmp(&b.exp));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms.drain(..) {
        match out.last_mut() {
            Some(last) if (last.exp - t.exp).abs() < MERGE_EPS => last.coef += t.coef,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coef != 0.0);
    if let Some(min) = out.first().map(|t| t.exp) {
        out.retain(|t| t.exp <= min + EXPONENT_WINDOW);
    }
    *terms = out;
}

fn scaled(terms: &[Term], c: f64) -> Vec<Term> {
    terms
        .iter()
        .map(|t| Term {
            coef: t.coef * c,
            exp: t.exp,
        })
        .collect()
}

fn eval_terms(terms: &[Term], n: f64) -> f64 {
    // smallest terms first
    terms.iter().rev().map(|t| t.coef * n.powf(-t.exp)).sum()
}

impl Expansion {
    pub fn one() -> Self {
        Expansion {
            smooth: vec![Term { coef: 1.0, exp: 0.0 }],
            alternating: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Expansion::default()
    }

    fn from_parts(mut smooth: Vec<Term>, mut alternating: Vec<Term>) -> Self {
        normalize(&mut smooth);
        normalize(&mut alternating);
        Expansion {
            smooth,
            alternating,
        }
    }

    pub fn eval(&self, n: u64) -> f64 {
        let x = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        eval_terms(&self.smooth, x) + sign * eval_terms(&self.alternating, x)
    }

    pub fn scale(&self, c: f64) -> Self {
        Expansion {
            smooth: scaled(&self.smooth, c),
            alternating: scaled(&self.alternating, c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let smooth = self.smooth.iter().chain(&other.smooth).copied().collect();
        let alternating = self.alternating.iter().chain(&other.alternating).copied().collect();
        Self::from_parts(smooth, alternating)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Pointwise product. Smooth times alternating is alternating, and two
    /// alternating parts multiply to a smooth one.
    pub fn mul(&self, other: &Self) -> Self {
        let cross = |a: &[Term], b: &[Term]| -> Vec<Term> {
            a.iter()
                .flat_map(|x| {
                    b.iter().map(move |y| Term {
                        coef: x.coef * y.coef,
                        exp: x.exp + y.exp,
                    })
                })
                .collect()
        };
        let mut smooth = cross(&self.smooth, &other.smooth);
        smooth.extend(cross(&self.alternating, &other.alternating));
        let mut alternating = cross(&self.smooth, &other.alternating);
        alternating.extend(cross(&self.alternating, &other.smooth));
        Self::from_parts(smooth, alternating)
    }

    /// `n^(-s) f(n)`.
    pub fn mul_power(&self, s: f64) -> Self {
        let shift = |v: &[Term]| v.iter().map(|t| Term { coef: t.coef, exp: t.exp + s }).collect();
        Expansion {
            smooth: shift(&self.smooth),
            alternating: shift(&self.alternating),
        }
    }

    /// `(-1)^n f(n)`.
    pub fn mul_sign(&self) -> Self {
        Expansion {
            smooth: self.alternating.clone(),
            alternating: self.smooth.clone(),
        }
    }

    /// `[n odd] f(n)`, using `[n odd] = (1 - (-1)^n)/2`.
    pub fn odd_part(&self) -> Self {
        self.sub(&self.mul_sign()).scale(0.5)
    }

    /// `f(n + h)` by the binomial series of `(1 + h/n)^(-e)`.
    pub fn shift(&self, h: i64) -> Self {
        let expand = |v: &[Term], sign: f64| {
            let mut out = Vec::new();
            for t in v {
                let mut c = t.coef * sign;
                for i in 0..=EXPONENT_WINDOW as usize {
                    out.push(Term { coef: c, exp: t.exp + i as f64 });
                    // binom(-e, i+1) h^(i+1) from binom(-e, i) h^i
                    c *= -(t.exp + i as f64) * h as f64 / (i + 1) as f64;
                    if c == 0.0 {
                        break;
                    }
                }
            }
            out
        };
        let alt_sign = if h % 2 == 0 { 1.0 } else { -1.0 };
        Self::from_parts(expand(&self.smooth, 1.0), expand(&self.alternating, alt_sign))
    }

    /// `k -> f(2k)` as a smooth expansion in `k`.
    pub fn even_subsequence(&self) -> Self {
        let smooth = self
            .smooth
            .iter()
            .chain(&self.alternating)
            .map(|t| Term {
                coef: t.coef * 2f64.powf(-t.exp),
                exp: t.exp,
            })
            .collect();
        Self::from_parts(smooth, Vec::new())
    }

    /// `F(n) = sum_{m >= n} f(m)`.
    ///
    /// # Panics
    ///
    /// Panics if a smooth exponent is `<= 1`, where the tail diverges.
    pub fn tail_sum(&self) -> Self {
        let coeffs = coefficients();
        let mut smooth = Vec::new();
        for t in &self.smooth {
            let e = t.exp;
            assert!(e > 1.0, "divergent tail sum of n^-{e}");
            smooth.push(Term { coef: t.coef / (e - 1.0), exp: e - 1.0 });
            smooth.push(Term { coef: t.coef / 2.0, exp: e });
            for (k, b) in coeffs.euler_maclaurin.iter().enumerate() {
                let k = k + 1;
                smooth.push(Term {
                    coef: t.coef * b * rising(e, 2 * k - 1),
                    exp: e + (2 * k - 1) as f64,
                });
            }
        }
        let mut alternating = Vec::new();
        for t in &self.alternating {
            let e = t.exp;
            alternating.push(Term { coef: t.coef / 2.0, exp: e });
            for (k, g) in coeffs.boole.iter().enumerate() {
                let j = 2 * k + 1;
                // g_j f^(j) with f^(j)(n) = (-1)^j (e)_j n^(-e-j), j odd
                alternating.push(Term {
                    coef: -t.coef * g * rising(e, j),
                    exp: e + j as f64,
                });
            }
        }
        Self::from_parts(smooth, alternating)
    }
}
