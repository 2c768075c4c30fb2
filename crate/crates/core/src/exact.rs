//! Exact rational scalars, truncated power series and Bernoulli numbers.
//!
//! Everything here is exact. Power series carry an explicit truncation
//! order and binary operations refuse to mix orders, so a product can never
//! silently lose terms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n / d` as a [`Rational`].
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Standard (signed) Bernoulli numbers `B_0, ..., B_n` with `B_1 = -1/2`,
/// from the recurrence `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_signed_table(n: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(n + 1);
    table.push(Rational::one());
    // Row m+1 of Pascal's triangle, rebuilt incrementally.
    let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
        let acc = table
            .iter()
            .zip(&row)
            .fold(Rational::zero(), |acc, (b, c)| acc + b * Rational::from_integer(c.clone()));
        table.push(-acc / int(m as u64 + 1));
    }
    table
}

/// The standard signed Bernoulli number `B_n`.
pub fn bernoulli_signed(n: usize) -> Rational {
    bernoulli_signed_table(n).pop().expect("table has n + 1 entries")
}

/// Bernoulli numbers in the unsigned topologists' convention:
/// `B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, ...`, i.e. `|B_{2k}|` in the
/// standard numbering.
///
/// ```
/// use lgenus::exact::{bernoulli, rational};
/// assert_eq!(bernoulli(3).unwrap(), rational(1, 42));
/// ```
pub fn bernoulli(k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::BernoulliIndex);
    }
    Ok(bernoulli_signed(2 * k).abs())
}

/// `[B_1, ..., B_kmax]` in the unsigned convention, sharing one recurrence run.
pub fn bernoulli_table(kmax: usize) -> Vec<Rational> {
    let signed = bernoulli_signed_table(2 * kmax);
    (1..=kmax).map(|k| signed[2 * k].abs()).collect()
}

/// A power series `c_0 + c_1 z + ... + c_order z^order` truncated at `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |k| if k == 0 { Rational::one() } else { Rational::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Drops every coefficient above `order`. Raising the order is refused,
    /// since the missing coefficients are unknown rather than zero.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder {
                have: self.order(),
                need: order,
            });
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        Ok(Self::from_fn(n, |k| {
            (0..=k).fold(Rational::zero(), |acc, i| {
                if self.coeffs[i].is_zero() || other.coeffs[k - i].is_zero() {
                    acc
                } else {
                    acc + &self.coeffs[i] * &other.coeffs[k - i]
                }
            })
        }))
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..=self.order() {
            let acc = (1..=k).fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &out[k - i]);
            out.push(-acc * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }
}

/// `1/n!` for `n = 0..=len-1`: the exponential series.
fn exp_coefficients(len: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    let mut f = BigInt::one();
    for n in 0..len {
        if n > 0 {
            f *= BigInt::from(n);
        }
        out.push(Rational::new(BigInt::one(), f.clone()));
    }
    out
}

/// `cosh(c sqrt z)` as a series in `z`: the even part of `exp`, re-indexed.
fn cosh_sqrt(order: usize, c: &Rational) -> PowerSeries {
    let e = exp_coefficients(2 * order + 2);
    let c2 = c * c;
    let mut pow = Rational::one();
    PowerSeries::from_fn(order, |n| {
        let out = &e[2 * n] * &pow;
        pow = &pow * &c2;
        out
    })
}

/// `sinh(c sqrt z) / (c sqrt z)`: the odd part of `exp`, shifted down.
fn sinhc_sqrt(order: usize, c: &Rational) -> PowerSeries {
    let e = exp_coefficients(2 * order + 2);
    let c2 = c * c;
    let mut pow = Rational::one();
    PowerSeries::from_fn(order, |n| {
        let out = &e[2 * n + 1] * &pow;
        pow = &pow * &c2;
        out
    })
}

/// `sqrt(z)/tanh(sqrt z)` built from the exponential series: form
/// `tanh(sqrt z)/sqrt z = sinh/(sqrt z cosh)` and invert it.
pub fn char_series_l_from_exp(order: usize) -> PowerSeries {
    let one = Rational::one();
    let tanh_over = sinhc_sqrt(order, &one)
        .mul(&cosh_sqrt(order, &one).reciprocal().expect("cosh has constant term 1"))
        .expect("same order");
    tanh_over.reciprocal().expect("constant term 1")
}

/// `b_k = (-1)^(k-1) 2^(2k) B_k / (2k)!` with unsigned Bernoulli numbers.
pub fn char_series_l_closed_form(order: usize) -> PowerSeries {
    let b = bernoulli_table(order);
    PowerSeries::from_fn(order, |k| {
        if k == 0 {
            return Rational::one();
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let v = &b[k - 1] * int(BigInt::one() << (2 * k)) / int(factorial(2 * k));
        v * int(sign)
    })
}

/// Characteristic series of the L-genus, `sqrt(z)/tanh(sqrt z)`.
///
/// Computed both from the exponential series and from the Bernoulli closed
/// form; the two must agree coefficient by coefficient.
pub fn char_series_l(order: usize) -> PowerSeries {
    let series = char_series_l_from_exp(order);
    let closed = char_series_l_closed_form(order);
    assert_eq!(series, closed, "L-genus characteristic series routes disagree");
    series
}

/// Characteristic series of the A-hat genus, `(sqrt(z)/2)/sinh(sqrt(z)/2)`.
pub fn char_series_ahat(order: usize) -> PowerSeries {
    sinhc_sqrt(order, &rational(1, 2))
        .reciprocal()
        .expect("constant term 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: &[(i64, i64)]) -> PowerSeries {
        PowerSeries::from_coeffs(v.iter().map(|&(n, d)| rational(n, d)).collect()).unwrap()
    }

    /// Akiyama-Tanigawa: an algorithm unrelated to the binomial recurrence.
    /// Produces B_n with the B_1 = +1/2 convention; only even n are compared.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = vec![Rational::zero(); n + 1];
        for m in 0..=n {
            a[m] = rational(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = int(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(1).unwrap(), rational(1, 6));
        assert_eq!(bernoulli(2).unwrap(), rational(1, 30));
        assert_eq!(bernoulli(3).unwrap(), rational(1, 42));
        assert_eq!(bernoulli(5).unwrap(), rational(5, 66));
        assert_eq!(bernoulli(0), Err(Error::BernoulliIndex));
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        let table = bernoulli_table(20);
        for k in 1..=20 {
            assert_eq!(table[k - 1], akiyama_tanigawa(2 * k).abs(), "k = {k}");
        }
    }

    #[test]
    fn bernoulli_denominators_von_staudt_clausen() {
        for (i, b) in bernoulli_table(20).iter().enumerate() {
            let k = i + 1;
            let den = b.denom().clone();
            assert!((&den % BigInt::from(6)).is_zero(), "k = {k}");
            // squarefree: no p^2 divides the denominator for small primes,
            // and by von Staudt-Clausen only primes p with (p-1) | 2k occur.
            for p in 2u32..=(2 * k as u32 + 1) {
                let p2 = BigInt::from(p * p);
                assert!(!(&den % &p2).is_zero(), "k = {k}, p = {p}");
            }
        }
    }

    #[test]
    fn signed_convention() {
        assert_eq!(bernoulli_signed(1), rational(-1, 2));
        assert_eq!(bernoulli_signed(4), rational(-1, 30));
        assert!(bernoulli_signed(7).is_zero());
    }

    #[test]
    fn mul_examples() {
        let a = series(&[(1, 1), (1, 1), (0, 1)]);
        let b = series(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b).unwrap(), series(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(a.mul(&PowerSeries::one(2)).unwrap(), a);
        let c = series(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(c.mul(&c).unwrap(), series(&[(1, 1), (2, 1), (3, 1)]));
    }

    #[test]
    fn mul_rejects_mismatched_orders() {
        let err = PowerSeries::one(2).mul(&PowerSeries::one(3)).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 2, right: 3 });
    }

    #[test]
    fn reciprocal_examples() {
        let a = series(&[(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(a.reciprocal().unwrap(), series(&[(1, 1), (-1, 1), (1, 1), (-1, 1)]));
        let b = series(&[(3, 2), (-1, 7), (5, 3)]);
        assert_eq!(b.reciprocal().unwrap().reciprocal().unwrap(), b);
        assert_eq!(
            series(&[(0, 1), (1, 1)]).reciprocal().unwrap_err(),
            Error::ZeroConstantTerm
        );
    }

    #[test]
    fn l_series_examples() {
        assert_eq!(char_series_l(0), PowerSeries::one(0));
        let q = char_series_l(3);
        assert_eq!(q, series(&[(1, 1), (1, 3), (-1, 45), (2, 945)]));
    }

    #[test]
    fn l_series_routes_agree_to_order_20() {
        assert_eq!(char_series_l_from_exp(20), char_series_l_closed_form(20));
    }

    #[test]
    fn ahat_series_examples() {
        let q = char_series_ahat(3);
        assert_eq!(q.coeff(0), &rational(1, 1));
        assert_eq!(q.coeff(1), &rational(-1, 24));
        assert_eq!(q.coeff(2), &rational(7, 5760));
    }

    #[test]
    fn truncate_refuses_to_grow() {
        let q = char_series_l(3);
        assert_eq!(q.truncate(1).unwrap().order(), 1);
        assert!(q.truncate(4).is_err());
    }
}
