//! Brute-force coefficient tables from formal roots.
//!
//! With `m = k` formal roots `x_1..x_m`, expand `prod_i Q(x_i z)` modulo
//! `z^(k+1)` as an honest multivariate polynomial, take the degree-`k` part,
//! and rewrite it in elementary symmetric polynomials by repeatedly removing
//! the lexicographically leading monomial: a leading `x^mu` (necessarily a
//! partition shape) is killed by `c * e_{mu'}`, with `mu'` the conjugate.
//! Reading `e_i` as `p_i` gives the table. Nothing here uses set partitions.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{CoefficientTable, GenusSpec};
use crate::error::{check_range, Result};
use crate::exact::Rational;
use crate::partitions::IntegerPartition;

/// Degree cap: the expansion has `C(2k, k)` monomials.
pub const MAX_ORACLE_DEGREE: usize = 8;

type Exponents = Vec<u8>;

#[derive(Clone, Debug, Default)]
struct Poly {
    terms: HashMap<Exponents, Rational>,
}

impl Poly {
    fn constant(vars: usize, c: Rational) -> Self {
        let mut terms = HashMap::new();
        terms.insert(vec![0; vars], c);
        Poly { terms }
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Elementary symmetric polynomial `e_j` in `vars` variables.
    fn elementary(vars: usize, j: usize) -> Poly {
        let mut out = Poly::default();
        for mask in 0u32..(1 << vars) {
            if mask.count_ones() as usize == j {
                let e = (0..vars).map(|i| ((mask >> i) & 1) as u8).collect();
                out.add_term(e, Rational::from_integer(1.into()));
            }
        }
        out
    }
}

/// Degree-`k` part of `prod_{i=1}^{k} Q(x_i z)`.
fn expand_product(genus: &GenusSpec, k: usize) -> Poly {
    let b = genus.series().coeffs();
    let mut acc = Poly::constant(k, Rational::from_integer(1.into()));
    for var in 0..k {
        let mut next = Poly::default();
        for (e, c) in &acc.terms {
            let deg: usize = e.iter().map(|&d| d as usize).sum();
            for (power, bp) in b.iter().enumerate().take(k - deg + 1) {
                if bp.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[var] = power as u8;
                next.add_term(e2, c * bp);
            }
        }
        acc = next;
    }
    acc.terms
        .retain(|e, _| e.iter().map(|&d| d as usize).sum::<usize>() == k);
    acc
}

/// Coefficient table of `K_k` computed from formal roots, `k <= 8`.
pub fn coefficient_table_oracle(genus: &GenusSpec, k: usize) -> Result<CoefficientTable> {
    check_range(
        "oracle degree",
        k,
        1,
        MAX_ORACLE_DEGREE,
        " (the formal-root expansion grows like C(2k, k))",
    )?;
    genus.require_order(k)?;
    let mut rest = expand_product(genus, k);
    let elementary: Vec<Poly> = (0..=k).map(|j| Poly::elementary(k, j)).collect();
    let mut entries = BTreeMap::new();
    while let Some((lead, c)) = rest.terms.iter().max_by(|a, b| a.0.cmp(b.0)) {
        let shape: Vec<u32> = lead.iter().map(|&d| d as u32).filter(|&d| d > 0).collect();
        let mu = IntegerPartition::new(shape)
            .expect("leading monomial of a symmetric polynomial is a partition shape");
        let lambda = mu.conjugate();
        let c = c.clone();
        let mut e_lambda = Poly::constant(k, c.clone());
        for &part in lambda.parts() {
            e_lambda = e_lambda.mul(&elementary[part as usize]);
        }
        for (e, v) in e_lambda.terms {
            rest.add_term(e, -v);
        }
        entries.insert(lambda, c);
    }
    for j in IntegerPartition::all(k) {
        entries.entry(j).or_insert_with(Rational::zero);
    }
    Ok(CoefficientTable::new(k, entries))
}
