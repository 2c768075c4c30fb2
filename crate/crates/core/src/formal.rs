//! Truncated formal series in indeterminates `a_n` (one symbol `a` per
//! element of the ground set, levels `n = 1..=N`) and exact checks of the
//! partition-lattice identities between them.
//!
//! For a set partition `pi` with blocks `B_1..B_l`, with `f_B(n)` the product
//! of `a_n` over `a` in `B`:
//!
//! * [`formal_p`]: `sum f_{B_1}(n_1) ... f_{B_l}(n_l)` over all levels;
//! * [`formal_m`]: the same over pairwise distinct levels;
//! * [`formal_p_bar`]: as `formal_p`, weighted by `(-1)^(n_1 + ... + n_l)`;
//! * [`formal_t_sigma`]: the alternating chain sums over
//!   `n_1 >=_2 ... >=_2 n_l >= 1`, summed over all `l!` block orders.
//!
//! Every level is capped at `N`. The identities checked here compare
//! coefficients monomial by monomial, so they hold exactly at every cap.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{check_range, Error, Result};
use crate::exact::{int, Rational};
use crate::partitions::{mobius, permutations, SetPartition};
use crate::series::CompensatedSum;

/// Largest number of level assignments a single expansion may enumerate.
pub const TERM_BUDGET: u128 = 1_000_000;

/// Block count cap for [`formal_t_sigma`].
pub const MAX_T_BLOCKS: usize = 4;

/// A monomial as its sorted `(symbol, level)` tags; a symbol may repeat.
pub type Monomial = Vec<(u8, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalPolynomial {
    ground: usize,
    cap: u32,
    terms: BTreeMap<Monomial, Rational>,
}

fn symbol(a: u8) -> String {
    if a < 26 {
        char::from(b'a' + a).to_string()
    } else {
        format!("x{a}_")
    }
}

/// `a1*b2`, or `1` for the empty monomial.
pub fn monomial_to_string(m: &Monomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|&(a, n)| format!("{}{n}", symbol(a)))
        .collect::<Vec<_>>()
        .join("*")
}

impl FormalPolynomial {
    pub fn zero(ground: usize, cap: u32) -> Self {
        FormalPolynomial {
            ground,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn level_cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(m.iter().all(|&(a, n)| (a as usize) < self.ground && n >= 1 && n <= self.cap));
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn compatible(&self, other: &Self) {
        assert_eq!(
            (self.ground, self.cap),
            (other.ground, other.cap),
            "formal polynomials over different symbols or caps"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.ground, self.cap);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.compatible(other);
        let mut out = Self::zero(self.ground, self.cap);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort_unstable();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// The substitution `a_n -> -a_n` for odd `n`, on every symbol.
    pub fn negate_odd_levels(&self) -> Self {
        let mut out = Self::zero(self.ground, self.cap);
        for (m, c) in &self.terms {
            let odd = m.iter().filter(|t| t.1 % 2 == 1).count();
            out.add_term(m.clone(), if odd % 2 == 1 { -c } else { c.clone() });
        }
        out
    }

    /// Numerical value under `a_n = n^(-s_a)`.
    pub fn evaluate(&self, s: &[f64]) -> f64 {
        assert_eq!(s.len(), self.ground, "one exponent per symbol");
        let acc: CompensatedSum = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v: f64 = m.iter().map(|&(a, n)| (n as f64).powf(-s[a as usize])).product();
                c.to_f64().expect("finite") * v
            })
            .collect();
        acc.value()
    }
}

impl fmt::Display for FormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = if neg { -c.clone() } else { c.clone() };
            if a != int(1) {
                write!(f, "{a}*")?;
            }
            f.write_str(&monomial_to_string(m))?;
        }
        Ok(())
    }
}

fn check_budget(blocks: usize, cap: u32) -> Result<()> {
    check_range("level cap", cap as usize, 1, u32::MAX as usize, "")?;
    let needed = (cap as u128).checked_pow(blocks as u32).unwrap_or(u128::MAX);
    if needed > TERM_BUDGET {
        return Err(Error::TermBudget {
            needed,
            budget: TERM_BUDGET,
        });
    }
    Ok(())
}

/// Monomial with block `b` of `pi` at level `levels[b]`.
fn monomial(pi: &SetPartition, levels: &[u32]) -> Monomial {
    pi.rgs()
        .iter()
        .enumerate()
        .map(|(e, &b)| (e as u8, levels[b as usize]))
        .collect()
}

/// Calls `visit` on every level assignment in `1..=cap` for `blocks` blocks.
fn for_each_assignment(blocks: usize, cap: u32, mut visit: impl FnMut(&[u32])) {
    let mut levels = vec![1u32; blocks];
    loop {
        visit(&levels);
        let mut i = blocks;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if levels[i] < cap {
                levels[i] += 1;
                break;
            }
            levels[i] = 1;
        }
    }
}

fn alternating_sign(levels: &[u32]) -> Rational {
    let odd = levels.iter().filter(|&&n| n % 2 == 1).count();
    int(if odd % 2 == 0 { 1 } else { -1 })
}

fn expand(pi: &SetPartition, cap: u32, weight: impl Fn(&[u32]) -> Option<Rational>) -> Result<FormalPolynomial> {
    check_budget(pi.len(), cap)?;
    let mut out = FormalPolynomial::zero(pi.ground_size(), cap);
    for_each_assignment(pi.len(), cap, |levels| {
        if let Some(w) = weight(levels) {
            out.add_term(monomial(pi, levels), w);
        }
    });
    Ok(out)
}

/// `p_pi` truncated at level `cap`.
pub fn formal_p(pi: &SetPartition, cap: u32) -> Result<FormalPolynomial> {
    expand(pi, cap, |_| Some(int(1)))
}

/// `m_pi`: distinct levels only.
pub fn formal_m(pi: &SetPartition, cap: u32) -> Result<FormalPolynomial> {
    expand(pi, cap, |levels| {
        let distinct = levels.iter().enumerate().all(|(i, n)| !levels[..i].contains(n));
        distinct.then(|| int(1))
    })
}

/// `p-bar_pi`: signed by `(-1)^(sum of levels)`.
pub fn formal_p_bar(pi: &SetPartition, cap: u32) -> Result<FormalPolynomial> {
    expand(pi, cap, |levels| Some(alternating_sign(levels)))
}

/// `n >=_2 m`: `n > m`, or `n = m` with `n` even.
fn chain_step(n: u32, m: u32) -> bool {
    n > m || (n == m && n % 2 == 0)
}

/// The chain sum for the ordered partition listing the blocks of `pi` in
/// `order` (outermost first).
pub fn formal_t_ordered(pi: &SetPartition, order: &[usize], cap: u32) -> Result<FormalPolynomial> {
    let l = pi.len();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..l).collect::<Vec<_>>() {
        return Err(Error::InvalidSetPartition(format!(
            "block order {order:?} is not a permutation of 0..{l}"
        )));
    }
    expand(pi, cap, |levels| {
        // levels[b] is the level of block b; read them in chain order
        let chain_ok = order.windows(2).all(|w| chain_step(levels[w[0]], levels[w[1]]));
        chain_ok.then(|| alternating_sign(levels))
    })
}

/// `T^Sigma_pi`: [`formal_t_ordered`] summed over all `l!` block orders.
pub fn formal_t_sigma(pi: &SetPartition, cap: u32) -> Result<FormalPolynomial> {
    check_range("block count", pi.len(), 1, MAX_T_BLOCKS, " (l! orderings)")?;
    check_budget(pi.len(), cap)?;
    let mut out = FormalPolynomial::zero(pi.ground_size(), cap);
    for order in permutations(pi.len()) {
        out = out.add(&formal_t_ordered(pi, &order, cap)?);
    }
    Ok(out)
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub terms: usize,
    /// The first monomial (in monomial order) whose coefficients differ,
    /// with the left and right coefficients.
    pub first_difference: Option<(Monomial, Rational, Rational)>,
}

impl CheckReport {
    pub fn compare(name: impl Into<String>, lhs: &FormalPolynomial, rhs: &FormalPolynomial) -> Self {
        let diff = lhs.add(&rhs.scale(&int(-1)));
        let first_difference = diff
            .terms
            .keys()
            .next()
            .map(|m| (m.clone(), lhs.coefficient(m), rhs.coefficient(m)));
        CheckReport {
            name: name.into(),
            terms: lhs.len().max(rhs.len()),
            first_difference,
        }
    }

    pub fn passed(&self) -> bool {
        self.first_difference.is_none()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_difference {
            None => write!(f, "{}: pass ({} terms)", self.name, self.terms),
            Some((m, l, r)) => write!(
                f,
                "{}: FAIL at {}: lhs {l}, rhs {r}",
                self.name,
                monomial_to_string(m)
            ),
        }
    }
}

fn sign_of_len(l: usize) -> Rational {
    int(if l % 2 == 0 { 1 } else { -1 })
}

/// `p_pi = sum_{rho >= pi} m_rho`.
pub fn check_p_sum_m(pi: &SetPartition, cap: u32) -> Result<CheckReport> {
    let lhs = formal_p(pi, cap)?;
    let mut rhs = FormalPolynomial::zero(pi.ground_size(), cap);
    for rho in pi.upper_set()? {
        rhs = rhs.add(&formal_m(&rho, cap)?);
    }
    Ok(CheckReport::compare(format!("p=sum m {pi} N={cap}"), &lhs, &rhs))
}

/// `m_pi = sum_{rho >= pi} mu(pi, rho) p_rho`.
pub fn check_mobius_inversion(pi: &SetPartition, cap: u32) -> Result<CheckReport> {
    let lhs = formal_m(pi, cap)?;
    let mut rhs = FormalPolynomial::zero(pi.ground_size(), cap);
    for rho in pi.upper_set()? {
        let mu = Rational::from_integer(mobius(pi, &rho)?);
        rhs = rhs.add(&formal_p(&rho, cap)?.scale(&mu));
    }
    Ok(CheckReport::compare(format!("m=sum mu p {pi} N={cap}"), &lhs, &rhs))
}

/// Checks both `(-1)^l(pi) T^Sigma_pi = sum_{rho >= pi} (-1)^l(rho) mu(pi, rho) p-bar_rho`
/// and its inverse form `(-1)^l(pi) p-bar_pi = sum_{rho >= pi} (-1)^l(rho) T^Sigma_rho`.
pub fn check_tp(pi: &SetPartition, cap: u32) -> Result<[CheckReport; 2]> {
    let upper = pi.upper_set()?;
    let sign_pi = sign_of_len(pi.len());

    let lhs = formal_t_sigma(pi, cap)?.scale(&sign_pi);
    let mut rhs = FormalPolynomial::zero(pi.ground_size(), cap);
    for rho in &upper {
        let mu = Rational::from_integer(mobius(pi, rho)?);
        rhs = rhs.add(&formal_p_bar(rho, cap)?.scale(&(mu * sign_of_len(rho.len()))));
    }
    let tp = CheckReport::compare(format!("T=sum mu p-bar {pi} N={cap}"), &lhs, &rhs);

    let lhs = formal_p_bar(pi, cap)?.scale(&sign_pi);
    let mut rhs = FormalPolynomial::zero(pi.ground_size(), cap);
    for rho in &upper {
        rhs = rhs.add(&formal_t_sigma(rho, cap)?.scale(&sign_of_len(rho.len())));
    }
    let pt = CheckReport::compare(format!("p-bar=sum T {pi} N={cap}"), &lhs, &rhs);
    Ok([tp, pt])
}
