//! Coefficients of multiplicative sequences.
//!
//! A multiplicative sequence `K_0 = 1, K_1, K_2, ...` is fixed by its
//! characteristic series `Q(z) = 1 + b_1 z + b_2 z^2 + ...`. Reading the `b_j`
//! as elementary symmetric functions of formal roots, the coefficient of
//! `p_{j_1} ... p_{j_r}` in `K_k` is the monomial symmetric function
//! `m_{(j_1,...,j_r)}` of those roots, and the coefficient `lambda_k` of the
//! lone `p_k` is their `k`-th power sum. Expanding `m_J` in power sums gives
//! the closed formula
//!
//! ```text
//! lambda_J = 1/(alpha_1! alpha_2! ...) * sum_P (-1)^(r - l) c_P lambda_{k_1} ... lambda_{k_l}
//! ```
//!
//! summed over all set partitions `P = {P_1, ..., P_l}` of `{1..r}`, with
//! `c_P = prod (|P_m| - 1)!` and `k_m = sum_{i in P_m} j_i`.
//!
//! [`coefficient_closed_form`] implements this formula. [`oracle`] recomputes
//! the same coefficients by brute-force expansion in formal roots, without
//! touching the formula.

pub mod oracle;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{check_range, Error, Result};
use crate::exact::{
    bernoulli_signed_table, bernoulli_table, char_series_ahat, char_series_l, factorial, int,
    PowerSeries, Rational,
};
use crate::partitions::{for_each_set_partition, IntegerPartition, MAX_ENUMERATION};

pub use oracle::{coefficient_table_oracle, MAX_ORACLE_DEGREE};

/// Largest weight accepted by the closed formula (Bell(12) set partitions).
pub const MAX_CLOSED_FORM_WEIGHT: usize = MAX_ENUMERATION;

/// A named characteristic power series with constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusSpec {
    name: String,
    series: PowerSeries,
}

impl GenusSpec {
    pub fn new(name: impl Into<String>, series: PowerSeries) -> Result<Self> {
        if !series.coeff(0).is_one() {
            return Err(Error::NotNormalized(series.coeff(0).to_string()));
        }
        Ok(GenusSpec {
            name: name.into(),
            series,
        })
    }

    /// The Hirzebruch L-genus, `sqrt(z)/tanh(sqrt z)`, truncated at `order`.
    pub fn l(order: usize) -> Self {
        GenusSpec {
            name: "L".into(),
            series: char_series_l(order),
        }
    }

    /// The A-hat genus, `(sqrt(z)/2)/sinh(sqrt(z)/2)`, truncated at `order`.
    pub fn a_hat(order: usize) -> Self {
        GenusSpec {
            name: "Ahat".into(),
            series: char_series_ahat(order),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    fn require_order(&self, k: usize) -> Result<()> {
        if self.order() < k {
            return Err(Error::InsufficientOrder {
                have: self.order(),
                need: k,
            });
        }
        Ok(())
    }
}

/// `[lambda_1, ..., lambda_k]`: power sums of the formal roots, from the
/// elementary symmetric functions `e_j = b_j` by Newton's identities
/// `p_n = sum_{i=1}^{n-1} (-1)^(i-1) e_i p_(n-i) + (-1)^(n-1) n e_n`.
pub fn leading_coefficients(genus: &GenusSpec, k: usize) -> Result<Vec<Rational>> {
    genus.require_order(k)?;
    let e = genus.series().coeffs();
    let mut p: Vec<Rational> = Vec::with_capacity(k);
    for n in 1..=k {
        let mut acc = Rational::zero();
        for i in 1..n {
            let term = &e[i] * &p[n - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = &e[n] * int(n as u64);
        if n % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        p.push(acc);
    }
    Ok(p)
}

/// `h_k = 2^(2k) (2^(2k-1) - 1) B_k / (2k)!` for `k = 1..=kmax`, with
/// unsigned Bernoulli numbers.
pub fn l_leading_closed_form(kmax: usize) -> Vec<Rational> {
    bernoulli_table(kmax)
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            let k = i + 1;
            let two = BigInt::one() << (2 * k);
            let odd = (BigInt::one() << (2 * k - 1)) - 1;
            b * int(two * odd) / int(factorial(2 * k))
        })
        .collect()
}

/// `a_k = (-1)^k B_{2k} / (2 (2k)!)` for `k = 1..=kmax`, with the standard
/// signed Bernoulli numbers. Every `a_k` is negative.
pub fn a_hat_leading_closed_form(kmax: usize) -> Vec<Rational> {
    let b = bernoulli_signed_table(2 * kmax);
    (1..=kmax)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            &b[2 * k] * int(sign) / int(factorial(2 * k) * 2)
        })
        .collect()
}

/// A linear combination `sum_J c_J p_J` of power-sum symmetric functions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PowerSumExpansion {
    terms: BTreeMap<IntegerPartition, Rational>,
}

impl PowerSumExpansion {
    pub fn terms(&self) -> &BTreeMap<IntegerPartition, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, j: &IntegerPartition) -> Rational {
        self.terms.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Substitutes `p_i -> power_sums[i - 1]`.
    pub fn evaluate(&self, power_sums: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(j, c)| {
                j.parts()
                    .iter()
                    .fold(c.clone(), |acc, &part| acc * &power_sums[part as usize - 1])
            })
            .sum()
    }
}

const MAX_PARTS: usize = MAX_ENUMERATION;

/// Signed weights `sum (-1)^(r-l) c_P` grouped by the merged partition
/// `K = (k_1, ..., k_l)`, before dividing by the multiplicity factorial.
/// Every set partition of `{1..r}` is visited once.
fn grouped_weights(i: &IntegerPartition) -> Result<HashMap<[u8; MAX_PARTS], i128>> {
    let r = i.len();
    let mut fact = [1i128; MAX_PARTS + 1];
    for n in 1..=MAX_PARTS {
        fact[n] = fact[n - 1] * n as i128;
    }
    let parts = i.parts();
    let mut acc: HashMap<[u8; MAX_PARTS], i128> = HashMap::new();
    for_each_set_partition(r, |rgs, blocks| {
        let mut sums = [0u8; MAX_PARTS];
        let mut sizes = [0usize; MAX_PARTS];
        for (e, &b) in rgs.iter().enumerate() {
            sums[b as usize] += parts[e] as u8;
            sizes[b as usize] += 1;
        }
        let c: i128 = sizes[..blocks].iter().map(|&s| fact[s - 1]).product();
        let signed = if (r - blocks) % 2 == 0 { c } else { -c };
        sums[..blocks].sort_unstable_by(|a, b| b.cmp(a));
        *acc.entry(sums).or_insert(0) += signed;
    })?;
    Ok(acc)
}

fn key_to_partition(key: &[u8; MAX_PARTS]) -> IntegerPartition {
    let parts = key.iter().take_while(|&&p| p > 0).map(|&p| p as u32).collect();
    IntegerPartition::new(parts).expect("keys are sorted non-increasing")
}

/// Monomial symmetric function `m_I` in the power-sum basis:
/// `m_I = 1/(alpha_1! ...) sum_P (-1)^(r-l) c_P p_J`.
///
/// ```
/// use lgenus::genus::monomial_to_power_sum;
/// use lgenus::exact::rational;
/// let m = monomial_to_power_sum(&"2,1".parse().unwrap()).unwrap();
/// assert_eq!(m.coefficient(&"2,1".parse().unwrap()), rational(1, 1));
/// assert_eq!(m.coefficient(&"3".parse().unwrap()), rational(-1, 1));
/// ```
pub fn monomial_to_power_sum(i: &IntegerPartition) -> Result<PowerSumExpansion> {
    check_range(
        "partition weight",
        i.weight(),
        1,
        MAX_CLOSED_FORM_WEIGHT,
        " (the formula sums over Bell(r) set partitions)",
    )?;
    let denom = int(i.multiplicity_factorial());
    let terms = grouped_weights(i)?
        .into_iter()
        .filter(|(_, w)| *w != 0)
        .map(|(key, w)| (key_to_partition(&key), int(w) / &denom))
        .collect();
    Ok(PowerSumExpansion { terms })
}

/// `lambda_J` by the closed formula over set partitions.
pub fn coefficient_closed_form(genus: &GenusSpec, j: &IntegerPartition) -> Result<Rational> {
    let lambda = leading_coefficients(genus, j.weight())?;
    Ok(monomial_to_power_sum(j)?.evaluate(&lambda))
}

/// All coefficients `lambda_J` of `K_k`, keyed by the partition `J` of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    degree: usize,
    entries: BTreeMap<IntegerPartition, Rational>,
}

impl CoefficientTable {
    pub(crate) fn new(degree: usize, entries: BTreeMap<IntegerPartition, Rational>) -> Self {
        CoefficientTable { degree, entries }
    }

    /// A table from stored entries; the keys must be exactly the
    /// partitions of `degree`.
    pub fn from_entries(degree: usize, entries: BTreeMap<IntegerPartition, Rational>) -> Result<Self> {
        let expected = if degree == 0 {
            vec![IntegerPartition::empty()]
        } else {
            IntegerPartition::all(degree)
        };
        if entries.len() != expected.len() || expected.iter().any(|j| !entries.contains_key(j)) {
            return Err(Error::InvalidPartition(format!(
                "table entries are not the partitions of {degree}"
            )));
        }
        Ok(CoefficientTable { degree, entries })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &BTreeMap<IntegerPartition, Rational> {
        &self.entries
    }

    pub fn get(&self, j: &IntegerPartition) -> Option<&Rational> {
        self.entries.get(j)
    }

    /// Entries in display order: `(k)` first, `(1,...,1)` last.
    pub fn iter_display(&self) -> impl Iterator<Item = (&IntegerPartition, &Rational)> {
        self.entries.iter().rev()
    }
}

/// The closed formula applied to every partition of `k`. The products
/// `lambda_{k_1} ... lambda_{k_l}` are computed once per degree and shared
/// by all partitions; partitions are processed in parallel.
pub fn coefficient_table(genus: &GenusSpec, k: usize) -> Result<CoefficientTable> {
    if k == 0 {
        let mut entries = BTreeMap::new();
        entries.insert(IntegerPartition::empty(), Rational::one());
        return Ok(CoefficientTable::new(0, entries));
    }
    check_range("degree", k, 1, MAX_CLOSED_FORM_WEIGHT, "")?;
    let lambda = leading_coefficients(genus, k)?;
    let partitions = IntegerPartition::all(k);
    let products: HashMap<IntegerPartition, Rational> = partitions
        .iter()
        .map(|p| {
            let prod = p
                .parts()
                .iter()
                .fold(Rational::one(), |acc, &q| acc * &lambda[q as usize - 1]);
            (p.clone(), prod)
        })
        .collect();
    let entries = partitions
        .par_iter()
        .map(|j| {
            let expansion = monomial_to_power_sum(j)?;
            let value: Rational = expansion
                .terms()
                .iter()
                .map(|(key, c)| c * &products[key])
                .sum();
            Ok((j.clone(), value))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    Ok(CoefficientTable::new(k, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn part(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    #[test]
    fn leading_coefficient_examples() {
        let l = leading_coefficients(&GenusSpec::l(3), 3).unwrap();
        assert_eq!(l[0], rational(1, 3));
        assert_eq!(l[2], rational(62, 945));
        let a = leading_coefficients(&GenusSpec::a_hat(2), 2).unwrap();
        assert_eq!(a[1], rational(-4, 5760));
        assert_eq!(a[1], rational(-1, 1440));
    }

    #[test]
    fn leading_coefficients_need_order() {
        assert_eq!(
            leading_coefficients(&GenusSpec::l(2), 3),
            Err(Error::InsufficientOrder { have: 2, need: 3 })
        );
    }

    #[test]
    fn leading_coefficients_match_closed_forms() {
        assert_eq!(leading_coefficients(&GenusSpec::l(20), 20).unwrap(), l_leading_closed_form(20));
        assert_eq!(
            leading_coefficients(&GenusSpec::a_hat(20), 20).unwrap(),
            a_hat_leading_closed_form(20)
        );
    }

    #[test]
    fn closed_form_examples() {
        let l = GenusSpec::l(3);
        let a = GenusSpec::a_hat(3);
        assert_eq!(coefficient_closed_form(&l, &part("1,1")).unwrap(), rational(-1, 45));
        assert_eq!(coefficient_closed_form(&l, &part("2,1")).unwrap(), rational(-13, 945));
        assert_eq!(
            coefficient_closed_form(&a, &part("1,1,1")).unwrap(),
            rational(-31, 967680)
        );
    }

    #[test]
    fn monomial_to_power_sum_examples() {
        let single = monomial_to_power_sum(&part("4")).unwrap();
        assert_eq!(single.terms().len(), 1);
        assert_eq!(single.coefficient(&part("4")), rational(1, 1));

        let m11 = monomial_to_power_sum(&part("1,1")).unwrap();
        assert_eq!(m11.coefficient(&part("1,1")), rational(1, 2));
        assert_eq!(m11.coefficient(&part("2")), rational(-1, 2));

        let m21 = monomial_to_power_sum(&part("2,1")).unwrap();
        assert_eq!(m21.terms().len(), 2);
        assert_eq!(m21.coefficient(&part("2,1")), rational(1, 1));
        assert_eq!(m21.coefficient(&part("3")), rational(-1, 1));

        assert!(monomial_to_power_sum(&IntegerPartition::empty()).is_err());
        assert!(monomial_to_power_sum(&part("13")).is_err());
    }

    #[test]
    fn table_degree_zero_is_one() {
        let t = coefficient_table(&GenusSpec::l(0), 0).unwrap();
        assert_eq!(t.entries().len(), 1);
        assert_eq!(t.get(&IntegerPartition::empty()), Some(&rational(1, 1)));
    }

    #[test]
    fn custom_genus_must_be_normalized() {
        let s = PowerSeries::from_coeffs(vec![rational(2, 1), rational(1, 1)]).unwrap();
        assert!(matches!(GenusSpec::new("x", s), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn total_chern_like_genus() {
        // Q(z) = 1 + z: the formal roots are the variables themselves, so
        // K_k = p_k and every other coefficient vanishes.
        let s = PowerSeries::from_coeffs(vec![rational(1, 1), rational(1, 1), rational(0, 1), rational(0, 1)])
            .unwrap();
        let g = GenusSpec::new("c", s).unwrap();
        let t = coefficient_table(&g, 3).unwrap();
        // lambda_k = p_k(roots) with e_1 = 1, e_j = 0 otherwise: one root equal to 1
        for (j, v) in t.entries() {
            assert_eq!(v, &rational(i64::from(j.len() == 1), 1), "{j}");
        }
    }
}
