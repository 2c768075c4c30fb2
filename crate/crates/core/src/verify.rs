//! Verification suites: each runs a family of checks and reports one
//! [`Check`] per comparison, in a deterministic order.
//!
//! | suite          | compares                                                       |
//! |----------------|----------------------------------------------------------------|
//! | `main`         | L coefficients against symmetrized `T` values                  |
//! | `ahat`         | A-hat coefficients against symmetrized `S` values              |
//! | `hoffman`      | symmetrized strict and non-strict MZVs against zeta products   |
//! | `multiple-eta` | signed `zeta*` products against `(-1)^r T^Sigma`               |
//! | `positivity`   | signs of `T` and `T_{2k}`, and the two recurrences             |
//! | `formal`       | partition-lattice identities as exact polynomial identities    |
//! | `oracle`       | closed formula against formal roots; leading coefficients      |
//! | `signs`        | sign patterns of L and A-hat coefficients                      |
//!
//! Random tuples come from a ChaCha8 generator seeded with
//! [`VerifyConfig::seed`] and are drawn uniformly from `[1.2, 4]^r`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{check_range, Error, Result};
use crate::exact::{int, Rational};
use crate::formal::{check_mobius_inversion, check_p_sum_m, check_tp, CheckReport};
use crate::genus::{
    a_hat_leading_closed_form, coefficient_table, coefficient_table_oracle, l_leading_closed_form,
    leading_coefficients, monomial_to_power_sum, GenusSpec, MAX_ORACLE_DEGREE,
};
use crate::partitions::{enumerate_set_partitions, length_sum, length_sum_above, IntegerPartition, SetPartition};
use crate::series::{
    check_outer_pairing, check_shifted_pairing, partition_product_sum, symmetrize, t_series,
    t_series_shifted, zeta, zeta_even_exact, zeta_star, zeta_star_even_exact, EvalConfig, Kernel,
    SeriesValue, DEFAULT_DELTA, DEFAULT_TOL,
};

pub const DEFAULT_SEED: u64 = 1729;

/// Sampling box for random exponent tuples.
pub const SAMPLE_RANGE: (f64, f64) = (1.2, 4.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Main,
    Ahat,
    Hoffman,
    MultipleEta,
    Positivity,
    Formal,
    Oracle,
    Signs,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Main,
        Suite::Ahat,
        Suite::Hoffman,
        Suite::MultipleEta,
        Suite::Positivity,
        Suite::Formal,
        Suite::Oracle,
        Suite::Signs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Main => "main",
            Suite::Ahat => "ahat",
            Suite::Hoffman => "hoffman",
            Suite::MultipleEta => "multiple-eta",
            Suite::Positivity => "positivity",
            Suite::Formal => "formal",
            Suite::Oracle => "oracle",
            Suite::Signs => "signs",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite {s:?}")))
    }
}

/// Knobs shared by all suites. `None` picks the suite's default.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Largest degree `k` (main 4, ahat 4, oracle 8, signs 12).
    pub max_k: Option<usize>,
    /// Largest tuple length or ground set (3 everywhere).
    pub max_r: Option<usize>,
    /// Level cap of the formal suite.
    pub cap: u32,
    /// Overrides the per-length default depth.
    pub depth: Option<usize>,
    pub tol: f64,
    pub delta: f64,
    pub seed: u64,
    /// Random tuples per length (hoffman and multiple-eta 20, positivity 100
    /// in total).
    pub samples: Option<usize>,
    /// Tuples for the two recurrences of the positivity suite.
    pub recurrence_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_k: None,
            max_r: None,
            cap: 4,
            depth: None,
            tol: DEFAULT_TOL,
            delta: DEFAULT_DELTA,
            seed: DEFAULT_SEED,
            samples: None,
            recurrence_samples: 10,
        }
    }
}

impl VerifyConfig {
    /// Evaluation settings for tuples of length `r`.
    pub fn eval(&self, r: usize) -> Result<EvalConfig> {
        let base = EvalConfig::default_for(r);
        let cfg = EvalConfig::new(self.depth.unwrap_or(base.depth), self.tol, self.delta)?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        self.eval(1)?;
        if !(SAMPLE_RANGE.0 >= 1.0 + self.delta) {
            return Err(Error::InvalidConfig(format!(
                "delta {} excludes the sampling range starting at {}",
                self.delta, SAMPLE_RANGE.0
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        })
    }
}

/// One comparison. A check passes iff `delta <= bound`; exact checks have
/// both equal to 0 on success.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub delta: String,
    pub bound: String,
}

fn num(x: f64) -> String {
    format!("{x:.15e}")
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn numeric(name: String, lhs: f64, rhs: f64, bound: f64) -> Check {
        let delta = (lhs - rhs).abs();
        Check {
            name,
            status: if delta <= bound { Status::Pass } else { Status::Fail },
            lhs: num(lhs),
            rhs: num(rhs),
            delta: num(delta),
            bound: num(bound),
        }
    }

    fn exact(name: String, lhs: &Rational, rhs: &Rational) -> Check {
        let delta = (lhs - rhs).abs();
        Check {
            name,
            status: if delta.is_zero() { Status::Pass } else { Status::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            delta: delta.to_string(),
            bound: "0".into(),
        }
    }

    /// A yes/no property; `lhs` shows the tested quantity.
    fn predicate(name: String, ok: bool, lhs: String, rhs: String) -> Check {
        Check {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            lhs,
            rhs,
            delta: "-".into(),
            bound: "-".into(),
        }
    }

    fn formal(report: &CheckReport) -> Check {
        let (lhs, rhs, delta) = match &report.first_difference {
            None => (format!("{}terms", report.terms), "equal".into(), "0".into()),
            Some((m, l, r)) => (
                l.to_string(),
                r.to_string(),
                format!("at:{}", crate::formal::monomial_to_string(m)),
            ),
        };
        Check {
            name: report.name.replace(' ', ":"),
            status: if report.passed() { Status::Pass } else { Status::Fail },
            lhs,
            rhs,
            delta,
            bound: "0".into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CHECK {} {} {} {} {} {}",
            self.name, self.status, self.lhs, self.rhs, self.delta, self.bound
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# suite {} seed {}", self.suite, self.seed)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        writeln!(
            f,
            "# {} {}/{} passed",
            self.suite,
            self.checks.len() - self.failures(),
            self.checks.len()
        )
    }
}

/// Runs one suite. Errors are configuration problems; mathematical
/// failures are reported as failing checks.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let checks = match suite {
        Suite::Main => main_suite(cfg)?,
        Suite::Ahat => ahat_suite(cfg)?,
        Suite::Hoffman => hoffman_suite(cfg)?,
        Suite::MultipleEta => multiple_eta_suite(cfg)?,
        Suite::Positivity => positivity_suite(cfg)?,
        Suite::Formal => formal_suite(cfg)?,
        Suite::Oracle => oracle_suite(cfg)?,
        Suite::Signs => signs_suite(cfg)?,
    };
    Ok(SuiteReport {
        suite,
        seed: cfg.seed,
        checks,
    })
}

fn pi_power(k: usize) -> f64 {
    std::f64::consts::PI.powi(2 * k as i32)
}

fn sign(r: usize) -> f64 {
    if r % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn doubled(j: &IntegerPartition) -> Vec<f64> {
    j.parts().iter().map(|&p| 2.0 * p as f64).collect()
}

/// Coefficient tables of `genus` for `k = 1..=max_k`, flattened in display order.
fn coefficients(genus: &GenusSpec, max_k: usize) -> Result<Vec<(IntegerPartition, Rational)>> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        let table = coefficient_table(genus, k)?;
        out.extend(table.iter_display().map(|(j, c)| (j.clone(), c.clone())));
    }
    Ok(out)
}

/// `lambda_J` from arbitrary leading coefficients through the power-sum
/// expansion of `m_J`.
fn from_leading(j: &IntegerPartition, lambda: &[Rational]) -> Result<Rational> {
    Ok(monomial_to_power_sum(j)?.evaluate(lambda))
}

/// Coefficient against the symmetrized series, relative tolerance.
fn series_identity(
    cfg: &VerifyConfig,
    prefix: &str,
    max_k: usize,
    genus: &GenusSpec,
    kernel: Kernel,
    scale: impl Fn(usize) -> f64 + Sync,
) -> Result<Vec<Check>> {
    let coeffs = coefficients(genus, max_k)?;
    let jobs: Vec<(IntegerPartition, Rational, EvalConfig)> = coeffs
        .into_iter()
        .map(|(j, c)| Ok((j.clone(), c, cfg.eval(j.len())?)))
        .collect::<Result<_>>()?;
    jobs.par_iter()
        .map(|(j, c, eval)| {
            let k = j.weight();
            let r = j.len();
            let alpha = j.multiplicity_factorial().to_f64().expect("small");
            let sym = symmetrize(kernel, &doubled(j), eval)?;
            let rhs = sym.scale(sign(r) / alpha * scale(k));
            let lhs = c.to_f64().expect("finite");
            let bound = cfg.tol * lhs.abs();
            Ok(Check::numeric(
                format!("{prefix}:k={k}:J={}", j.plus_notation()),
                lhs,
                rhs.value,
                bound,
            ))
        })
        .collect()
}

fn main_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max_k = cfg.max_k.unwrap_or(4);
    check_range("k", max_k, 1, 6, " (T^Sigma needs r <= 6)")?;
    let genus = GenusSpec::l(max_k);
    let mut checks = series_identity(cfg, "main", max_k, &genus, Kernel::Alternating, |k| {
        2f64.powi(2 * k as i32) / pi_power(k)
    })?;
    // the same coefficients from zeta*(2k) values, where every power of pi
    // cancels: lambda_k = 2^(2k) zeta*(2k) / pi^(2k)
    let lambda: Vec<Rational> = (1..=max_k)
        .map(|k| Ok(zeta_star_even_exact(k)?.coefficient * int(BigInt::one() << (2 * k))))
        .collect::<Result<_>>()?;
    for (j, c) in coefficients(&genus, max_k)? {
        let name = format!("main:zeta-star:J={}", j.plus_notation());
        checks.push(Check::exact(name, &c, &from_leading(&j, &lambda)?));
    }
    Ok(checks)
}

fn ahat_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max_k = cfg.max_k.unwrap_or(4);
    check_range("k", max_k, 1, 6, " (S^Sigma needs r <= 6)")?;
    let genus = GenusSpec::a_hat(max_k);
    let mut checks = series_identity(cfg, "ahat", max_k, &genus, Kernel::Star, |k| {
        1.0 / (2f64.powi(2 * k as i32) * pi_power(k))
    })?;
    // a_k = -zeta(2k)/(2 pi)^(2k), exact
    let lambda: Vec<Rational> = (1..=max_k)
        .map(|k| Ok(-zeta_even_exact(k)?.coefficient / int(BigInt::one() << (2 * k))))
        .collect::<Result<_>>()?;
    for (j, c) in coefficients(&genus, max_k)? {
        let name = format!("ahat:zeta:J={}", j.plus_notation());
        checks.push(Check::exact(name, &c, &from_leading(&j, &lambda)?));
    }
    Ok(checks)
}

fn rng(cfg: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    rng
}

fn sample_tuple(rng: &mut ChaCha8Rng, r: usize) -> Vec<f64> {
    (0..r).map(|_| rng.gen_range(SAMPLE_RANGE.0..=SAMPLE_RANGE.1)).collect()
}

fn tuple_name(s: &[f64]) -> String {
    let parts: Vec<String> = s.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(","))
}

/// `(r, tuple)` pairs: `samples` tuples for each `r = 1..=max_r`.
fn sampled_tuples(cfg: &VerifyConfig, stream: u64, per_r: usize, max_r: usize) -> Vec<Vec<f64>> {
    let mut rng = rng(cfg, stream);
    (1..=max_r)
        .flat_map(|r| (0..per_r).map(move |_| r))
        .map(|r| sample_tuple(&mut rng, r))
        .collect()
}

fn tolerance_check(name: String, lhs: SeriesValue, rhs: SeriesValue, tol: f64) -> Check {
    Check::numeric(name, lhs.value, rhs.value, tol)
}

fn hoffman_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max_r = cfg.max_r.unwrap_or(3);
    check_range("r", max_r, 1, 4, "")?;
    let tuples = sampled_tuples(cfg, 1, cfg.samples.unwrap_or(20), max_r);
    let per_tuple: Vec<Vec<Check>> = tuples
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let eval = cfg.eval(s.len())?;
            let single = cfg.eval(1)?;
            let tag = format!("r={}:#{i}:s={}", s.len(), tuple_name(s));
            let strict = symmetrize(Kernel::Strict, s, &eval)?;
            let strict_rhs = partition_product_sum(s, true, |x| zeta(x, &single))?;
            let star = symmetrize(Kernel::Star, s, &eval)?;
            let star_rhs = partition_product_sum(s, false, |x| zeta(x, &single))?;
            Ok(vec![
                tolerance_check(format!("hoffman:strict:{tag}"), strict, strict_rhs, cfg.tol),
                tolerance_check(format!("hoffman:star:{tag}"), star, star_rhs, cfg.tol),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(per_tuple.into_iter().flatten().collect())
}

fn multiple_eta_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max_r = cfg.max_r.unwrap_or(3);
    check_range("r", max_r, 1, 4, "")?;
    let tuples = sampled_tuples(cfg, 2, cfg.samples.unwrap_or(20), max_r);
    tuples
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let eval = cfg.eval(s.len())?;
            let single = cfg.eval(1)?;
            let lhs = partition_product_sum(s, true, |x| zeta_star(x, &single))?;
            let rhs = symmetrize(Kernel::Alternating, s, &eval)?.scale(sign(s.len()));
            let name = format!("multiple-eta:r={}:#{i}:s={}", s.len(), tuple_name(s));
            Ok(tolerance_check(name, lhs, rhs, cfg.tol))
        })
        .collect()
}

fn sign_check(name: String, v: SeriesValue, negative: bool) -> Check {
    let ok = v.sign_resolved() && (v.value < 0.0) == negative;
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        lhs: num(v.value),
        rhs: if negative { "<0".into() } else { ">0".into() },
        delta: num(v.value.abs()),
        bound: num(v.err_bound),
    }
}

fn positivity_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max_r = cfg.max_r.unwrap_or(3);
    check_range("r", max_r, 1, 4, "")?;
    let total = cfg.samples.unwrap_or(100);
    let mut rng = rng(cfg, 3);
    let jobs: Vec<(Vec<f64>, u64)> = (0..total)
        .map(|i| {
            let s = sample_tuple(&mut rng, 1 + i % max_r);
            let k = rng.gen_range(1..=10u64);
            (s, k)
        })
        .collect();
    let recurrences: Vec<(Vec<f64>, u64)> = (0..cfg.recurrence_samples)
        .map(|i| {
            let s = sample_tuple(&mut rng, 1 + i % max_r);
            let k = rng.gen_range(1..=10u64);
            (s, k)
        })
        .collect();

    let signs: Vec<Vec<Check>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, (s, k))| {
            let eval = cfg.eval(s.len())?;
            let tag = format!("r={}:#{i}:s={}", s.len(), tuple_name(s));
            Ok(vec![
                sign_check(format!("positivity:T<0:{tag}"), t_series(s, &eval)?, true),
                sign_check(
                    format!("positivity:T_2k>0:k={k}:{tag}"),
                    t_series_shifted(*k, s, &eval)?,
                    false,
                ),
            ])
        })
        .collect::<Result<_>>()?;
    let rec: Vec<Vec<Check>> = recurrences
        .par_iter()
        .enumerate()
        .map(|(i, (s, k))| {
            let eval = cfg.eval(s.len())?;
            let tag = format!("r={}:#{i}:s={}", s.len(), tuple_name(s));
            let outer = check_outer_pairing(s, &eval)?;
            let shifted = check_shifted_pairing(*k, s, &eval)?;
            Ok(vec![
                tolerance_check(format!("positivity:outer-pairing:{tag}"), outer.lhs, outer.rhs, cfg.tol),
                tolerance_check(
                    format!("positivity:shifted-pairing:k={k}:{tag}"),
                    shifted.lhs,
                    shifted.rhs,
                    cfg.tol,
                ),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(signs.into_iter().chain(rec).flatten().collect())
}

fn formal_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max_r = cfg.max_r.unwrap_or(3);
    check_range("r", max_r, 1, 4, " (T^Sigma is limited to 4 blocks)")?;
    let all: Vec<SetPartition> = (1..=max_r)
        .map(enumerate_set_partitions)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let per_pi: Vec<Vec<Check>> = all
        .par_iter()
        .map(|pi| {
            let [tp, pt] = check_tp(pi, cfg.cap)?;
            Ok(vec![
                Check::formal(&check_p_sum_m(pi, cfg.cap)?),
                Check::formal(&check_mobius_inversion(pi, cfg.cap)?),
                Check::formal(&tp),
                Check::formal(&pt),
            ])
        })
        .collect::<Result<_>>()?;
    let mut checks: Vec<Check> = per_pi.into_iter().flatten().collect();
    for n in 1..=9 {
        let expected = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let stirling = length_sum(n)?;
        let lattice = length_sum_above(&SetPartition::finest(n))?;
        checks.push(Check::exact(
            format!("formal:length-sum:stirling:n={n}"),
            &Rational::from_integer(stirling),
            &Rational::from_integer(expected.clone()),
        ));
        checks.push(Check::exact(
            format!("formal:length-sum:lattice:n={n}"),
            &Rational::from_integer(lattice),
            &Rational::from_integer(expected),
        ));
    }
    Ok(checks)
}

fn oracle_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max_k = cfg.max_k.unwrap_or(MAX_ORACLE_DEGREE);
    check_range("k", max_k, 1, MAX_ORACLE_DEGREE, " (formal-root oracle)")?;
    let mut checks = Vec::new();
    for genus in [GenusSpec::l(max_k), GenusSpec::a_hat(max_k)] {
        let tables: Vec<_> = (1..=max_k)
            .into_par_iter()
            .map(|k| Ok((coefficient_table(&genus, k)?, coefficient_table_oracle(&genus, k)?)))
            .collect::<Result<_>>()?;
        for (closed, oracle) in tables {
            for (j, c) in closed.iter_display() {
                let o = oracle.get(j).cloned().unwrap_or_else(Rational::zero);
                let name = format!("oracle:{}:J={}", genus.name(), j.plus_notation());
                checks.push(Check::exact(name, c, &o));
            }
            if closed.entries().len() != oracle.entries().len() {
                checks.push(Check::predicate(
                    format!("oracle:{}:k={}:keys", genus.name(), closed.degree()),
                    false,
                    closed.entries().len().to_string(),
                    oracle.entries().len().to_string(),
                ));
            }
        }
    }
    const LEADING: usize = 20;
    let newton_l = leading_coefficients(&GenusSpec::l(LEADING), LEADING)?;
    let newton_a = leading_coefficients(&GenusSpec::a_hat(LEADING), LEADING)?;
    let closed_l = l_leading_closed_form(LEADING);
    let closed_a = a_hat_leading_closed_form(LEADING);
    for k in 1..=LEADING {
        checks.push(Check::exact(format!("oracle:leading:L:k={k}"), &newton_l[k - 1], &closed_l[k - 1]));
    }
    for k in 1..=LEADING {
        checks.push(Check::exact(format!("oracle:leading:Ahat:k={k}"), &newton_a[k - 1], &closed_a[k - 1]));
    }
    Ok(checks)
}

fn signs_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max_k = cfg.max_k.unwrap_or(12);
    check_range("k", max_k, 1, crate::genus::MAX_CLOSED_FORM_WEIGHT, "")?;
    let mut checks = Vec::new();
    // L: sign (-1)^(r-1); A-hat: sign (-1)^r
    for (genus, flip) in [(GenusSpec::l(max_k), 1usize), (GenusSpec::a_hat(max_k), 0)] {
        for (j, c) in coefficients(&genus, max_k)? {
            let positive = (j.len() + flip) % 2 == 0;
            let ok = if positive { c.is_positive() } else { c.is_negative() };
            checks.push(Check::predicate(
                format!("signs:{}:J={}", genus.name(), j.plus_notation()),
                ok,
                c.to_string(),
                if positive { ">0".into() } else { "<0".into() },
            ));
        }
    }
    Ok(checks)
}
