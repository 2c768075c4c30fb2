//! Integer partitions, set partitions and the refinement lattice.
//!
//! Set partitions of `{0, .., n-1}` are stored as restricted-growth strings:
//! `rgs[i]` is the block index of element `i`, blocks are numbered in order of
//! their smallest element, so `rgs[0] = 0` and `rgs[i] <= max(rgs[..i]) + 1`.
//! This normal form is unique, so derived equality and hashing are
//! structural. Enumeration walks the strings in lexicographic order.
//!
//! Elements are 0-based in the API and printed 1-based.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{check_range, Error, Result};
use crate::exact::factorial;

/// Largest ground set accepted by exhaustive enumeration (Bell(12) = 4,213,597).
pub const MAX_ENUMERATION: usize = 12;

/// A non-increasing tuple of positive integers `j_1 >= ... >= j_r >= 1`.
///
/// The derived order is lexicographic on the parts, so `(1,1,1) < (2,1) < (3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    /// Accepts parts already in non-increasing order.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be non-increasing, got {parts:?}"
            )));
        }
        Ok(IntegerPartition { parts })
    }

    /// Sorts the parts first.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        IntegerPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, n)) if *q == p => *n += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `alpha_1! alpha_2! ...` where `alpha_l` counts the parts equal to `l`.
    pub fn multiplicity_factorial(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .map(|&(_, n)| factorial(n))
            .product()
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Self {
        let largest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=largest)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        IntegerPartition { parts }
    }

    /// All partitions of `k`, largest first: `(k), (k-1,1), ..., (1,...,1)`.
    pub fn all(k: usize) -> Vec<IntegerPartition> {
        fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
            if rest == 0 {
                out.push(IntegerPartition { parts: prefix.clone() });
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                prefix.push(p);
                rec(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(k as u32, k as u32, &mut Vec::new(), &mut out);
        out
    }

    /// Parts joined by `+`, e.g. `2+1+1`.
    pub fn plus_notation(&self) -> String {
        join(&self.parts, "+")
    }
}

fn join(parts: &[u32], sep: &str) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts, ","))
    }
}

/// Parses `2,1,1` (or `2+1+1`); parts may come in any order.
impl FromStr for IntegerPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split([',', '+'])
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("not a positive integer: {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Self::from_unsorted(parts)
    }
}

/// A partition of `{0, .., n-1}` in restricted-growth normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    pub fn from_rgs(rgs: Vec<u8>) -> Result<Self> {
        if rgs.len() > u8::MAX as usize {
            return Err(Error::InvalidSetPartition("ground set too large".into()));
        }
        let mut next = 0u8;
        for (i, &b) in rgs.iter().enumerate() {
            if b > next {
                return Err(Error::InvalidSetPartition(format!(
                    "not a restricted-growth string at position {i}: {rgs:?}"
                )));
            }
            if b == next {
                next += 1;
            }
        }
        Ok(SetPartition { rgs })
    }

    /// Builds the normal form from arbitrary block labels, e.g. `[5, 2, 5]`
    /// becomes `[0, 1, 0]`.
    pub fn from_labels<T: PartialEq + Copy>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i as u8,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        SetPartition { rgs }
    }

    /// Blocks of 0-based elements; they must be non-empty, disjoint and cover
    /// `0..n`.
    pub fn from_blocks(blocks: &[Vec<usize>], n: usize) -> Result<Self> {
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidSetPartition("empty block".into()));
            }
            for &e in block {
                match labels.get_mut(e) {
                    None => {
                        return Err(Error::InvalidSetPartition(format!(
                            "element {e} outside ground set of size {n}"
                        )))
                    }
                    Some(Some(_)) => {
                        return Err(Error::InvalidSetPartition(format!(
                            "element {e} appears twice"
                        )))
                    }
                    Some(slot) => *slot = Some(b),
                }
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(e, l)| l.ok_or_else(|| Error::InvalidSetPartition(format!("element {e} missing"))))
            .collect::<Result<Vec<usize>>>()?;
        Ok(Self::from_labels(&labels))
    }

    /// `{{0}, {1}, ..., {n-1}}`, the bottom of the lattice.
    pub fn finest(n: usize) -> Self {
        SetPartition {
            rgs: (0..n as u8).collect(),
        }
    }

    /// `{{0, .., n-1}}`, the top of the lattice.
    pub fn coarsest(n: usize) -> Self {
        SetPartition { rgs: vec![0; n] }
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn ground_size(&self) -> usize {
        self.rgs.len()
    }

    /// Number of blocks `l(pi)`.
    pub fn len(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn block_of(&self, element: usize) -> usize {
        self.rgs[element] as usize
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (e, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(e);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for &b in &self.rgs {
            out[b as usize] += 1;
        }
        out
    }

    /// The partition `P(self)` whose blocks are the unions of the blocks of
    /// `self` grouped by `grouping`, a partition of the block indices.
    pub fn coarsen(&self, grouping: &SetPartition) -> Result<SetPartition> {
        if grouping.ground_size() != self.len() {
            return Err(Error::GroundSetMismatch(grouping.ground_size(), self.len()));
        }
        let labels: Vec<u8> = self.rgs.iter().map(|&b| grouping.rgs[b as usize]).collect();
        Ok(Self::from_labels(&labels))
    }

    /// Every `rho >= self`, in the enumeration order of the groupings.
    pub fn upper_set(&self) -> Result<Vec<SetPartition>> {
        Ok(enumerate_set_partitions(self.len())?
            .iter()
            .map(|g| self.coarsen(g).expect("grouping matches block count"))
            .collect())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let items: Vec<String> = block.iter().map(|e| (e + 1).to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        f.write_str("}")
    }
}

/// Calls `visit(rgs, blocks)` for every set partition of an `n`-set, in
/// lexicographic restricted-growth order, without allocating per partition.
pub fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[u8], usize)) -> Result<()> {
    check_range(
        "ground set size",
        n,
        1,
        MAX_ENUMERATION,
        " (Bell numbers grow too fast for exhaustive enumeration beyond 12)",
    )?;
    let mut a = vec![0u8; n];
    // m[i] = max(a[..i]), with m[0] = 0 by convention
    let mut m = vec![0u8; n];
    loop {
        let blocks = (m[n - 1].max(a[n - 1])) as usize + 1;
        visit(&a, blocks);
        let Some(i) = (1..n).rev().find(|&i| a[i] <= m[i]) else {
            return Ok(());
        };
        a[i] += 1;
        for j in i + 1..n {
            a[j] = 0;
            m[j] = m[j - 1].max(a[j - 1]);
        }
    }
}

/// All set partitions of an `n`-set, `1 <= n <= 12`, in lexicographic
/// restricted-growth order.
pub fn enumerate_set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    let mut out = Vec::new();
    for_each_set_partition(n, |rgs, _| out.push(SetPartition { rgs: rgs.to_vec() }))?;
    Ok(out)
}

/// If `pi <= rho`, the unique partition `P` of the blocks of `pi` with
/// `rho = P(pi)`; otherwise `None`.
pub fn refinement_leq(pi: &SetPartition, rho: &SetPartition) -> Result<Option<SetPartition>> {
    if pi.ground_size() != rho.ground_size() {
        return Err(Error::GroundSetMismatch(pi.ground_size(), rho.ground_size()));
    }
    let mut target: Vec<Option<u8>> = vec![None; pi.len()];
    for (&p, &r) in pi.rgs.iter().zip(&rho.rgs) {
        match target[p as usize] {
            None => target[p as usize] = Some(r),
            Some(t) if t != r => return Ok(None),
            Some(_) => {}
        }
    }
    let labels: Vec<u8> = target.into_iter().map(|t| t.expect("every block is hit")).collect();
    Ok(Some(SetPartition::from_labels(&labels)))
}

/// Mobius function of the partition lattice:
/// `mu(pi, rho) = (-1)^(l(pi) - l(rho)) * prod_i (b_i - 1)!` where `b_i` counts
/// the blocks of `pi` inside the `i`-th block of `rho`.
pub fn mobius(pi: &SetPartition, rho: &SetPartition) -> Result<BigInt> {
    let witness = refinement_leq(pi, rho)?.ok_or(Error::NotComparable)?;
    Ok(mobius_from_grouping(&witness))
}

/// `mu(pi, P(pi))` depends only on the grouping `P`.
pub(crate) fn mobius_from_grouping(grouping: &SetPartition) -> BigInt {
    let sign = if (grouping.ground_size() - grouping.len()) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    grouping
        .block_sizes()
        .into_iter()
        .fold(sign, |acc, b| acc * factorial(b - 1))
}

/// Row `n` of the Stirling numbers of the second kind, `[S(n,0), ..., S(n,n)]`.
pub fn stirling2_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::zero(); i + 1];
        for k in 1..=i {
            let stay = if k < row.len() { &row[k] * BigUint::from(k) } else { BigUint::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row
}

/// Number of partitions of an `n`-set into `k` blocks.
pub fn stirling2(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: usize::MAX,
            hint: "",
        });
    }
    check_range("k", k, 1, n, " (need 1 <= k <= n)")?;
    Ok(stirling2_row(n).swap_remove(k))
}

/// Number of set partitions of an `n`-set.
pub fn bell(n: usize) -> BigUint {
    stirling2_row(n).into_iter().sum()
}

/// `sum_k (-1)^k S(n,k) k!` for `1 <= n <= 9`, which equals `(-1)^n`.
pub fn length_sum(n: usize) -> Result<BigInt> {
    check_range("n", n, 1, 9, "")?;
    let row = stirling2_row(n);
    Ok((1..=n)
        .map(|k| {
            let term = BigInt::from(row[k].clone()) * factorial(k);
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum())
}

/// `sum_{rho >= pi} (-1)^l(rho) l(rho)!`, by walking the upper set of `pi`.
pub fn length_sum_above(pi: &SetPartition) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for_each_set_partition(pi.len(), |_, blocks| {
        let term = factorial(blocks);
        if blocks % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    })?;
    Ok(total)
}

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..r).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..r).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..r).rev().find(|&j| current[j] > current[i - 1]).expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(blocks: &[&[usize]], n: usize) -> SetPartition {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|e| e - 1).collect()).collect();
        SetPartition::from_blocks(&blocks, n).unwrap()
    }

    #[test]
    fn integer_partition_bookkeeping() {
        let p: IntegerPartition = "1,2,1".parse().unwrap();
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.weight(), 4);
        assert_eq!(p.len(), 3);
        assert_eq!(p.multiplicities(), vec![(2, 1), (1, 2)]);
        assert_eq!(p.multiplicity_factorial(), BigInt::from(2));
        assert_eq!(p.conjugate().parts(), &[3, 1]);
        assert_eq!(p.to_string(), "2,1,1");
        assert_eq!(p.plus_notation(), "2+1+1");
        assert!("2,0".parse::<IntegerPartition>().is_err());
        assert!("2,x".parse::<IntegerPartition>().is_err());
        assert!(IntegerPartition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn integer_partitions_of_small_k() {
        let counts: Vec<usize> = (0..=12).map(|k| IntegerPartition::all(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let three: Vec<String> = IntegerPartition::all(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(three, vec!["3", "2,1", "1,1,1"]);
    }

    #[test]
    fn enumeration_examples() {
        let one = enumerate_set_partitions(1).unwrap();
        assert_eq!(one, vec![SetPartition::finest(1)]);
        assert_eq!(enumerate_set_partitions(3).unwrap().len(), 5);
        assert_eq!(enumerate_set_partitions(4).unwrap().len(), 15);
        let rgs: Vec<Vec<u8>> = enumerate_set_partitions(3)
            .unwrap()
            .iter()
            .map(|p| p.rgs().to_vec())
            .collect();
        assert_eq!(rgs, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
        assert!(matches!(enumerate_set_partitions(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(enumerate_set_partitions(13), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn enumeration_counts_are_bell_numbers() {
        for n in 1..=9 {
            let count = enumerate_set_partitions(n).unwrap().len();
            assert_eq!(BigUint::from(count), bell(n));
        }
    }

    #[test]
    fn from_blocks_validation() {
        assert!(SetPartition::from_blocks(&[vec![0], vec![0, 1]], 2).is_err());
        assert!(SetPartition::from_blocks(&[vec![0]], 2).is_err());
        assert!(SetPartition::from_blocks(&[vec![0, 1], vec![]], 2).is_err());
        assert!(SetPartition::from_rgs(vec![0, 2]).is_err());
        assert_eq!(sp(&[&[1, 3], &[2]], 3).to_string(), "{{1,3},{2}}");
    }

    #[test]
    fn refinement_examples() {
        let finest = SetPartition::finest(3);
        assert_eq!(refinement_leq(&finest, &finest).unwrap(), Some(SetPartition::finest(3)));
        let rho = sp(&[&[1, 2], &[3]], 3);
        assert_eq!(refinement_leq(&finest, &rho).unwrap(), Some(sp(&[&[1, 2], &[3]], 3)));
        let pi = sp(&[&[1, 2], &[3]], 3);
        let other = sp(&[&[1, 3], &[2]], 3);
        assert_eq!(refinement_leq(&pi, &other).unwrap(), None);
        assert_eq!(
            refinement_leq(&pi, &SetPartition::finest(4)),
            Err(Error::GroundSetMismatch(3, 4))
        );
    }

    #[test]
    fn mobius_examples() {
        let p = sp(&[&[1, 2], &[3]], 3);
        assert_eq!(mobius(&p, &p).unwrap(), BigInt::one());
        assert_eq!(
            mobius(&SetPartition::finest(3), &SetPartition::coarsest(3)).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            mobius(&SetPartition::finest(2), &SetPartition::coarsest(2)).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            mobius(&SetPartition::coarsest(2), &SetPartition::finest(2)),
            Err(Error::NotComparable)
        );
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(5, 1).unwrap(), BigUint::one());
        assert_eq!(stirling2(3, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(stirling2(4, 2).unwrap(), BigUint::from(7u32));
        assert!(stirling2(3, 4).is_err());
        assert!(stirling2(3, 0).is_err());
    }

    #[test]
    fn stirling_matches_enumeration_by_length() {
        for n in 1..=9 {
            let mut counts = vec![0usize; n + 1];
            for_each_set_partition(n, |_, blocks| counts[blocks] += 1).unwrap();
            for k in 1..=n {
                assert_eq!(stirling2(n, k).unwrap(), BigUint::from(counts[k]), "S({n},{k})");
            }
        }
    }

    #[test]
    fn length_sum_examples() {
        assert_eq!(length_sum(1).unwrap(), BigInt::from(-1));
        assert_eq!(length_sum(3).unwrap(), BigInt::from(-1));
        assert_eq!(length_sum(6).unwrap(), BigInt::from(1));
        assert!(length_sum(0).is_err());
        assert!(length_sum(10).is_err());
    }

    #[test]
    fn length_sum_both_routes() {
        for n in 1..=9 {
            let expected = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            assert_eq!(length_sum(n).unwrap(), expected);
            assert_eq!(length_sum_above(&SetPartition::finest(n)).unwrap(), expected);
        }
        // a non-minimal pi: the upper set is a copy of the lattice on its blocks
        let pi = sp(&[&[1, 4], &[2], &[3, 5]], 5);
        assert_eq!(length_sum_above(&pi).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn mobius_inversion_on_intervals() {
        for n in 1..=5 {
            let all = enumerate_set_partitions(n).unwrap();
            for sigma in &all {
                for pi in &all {
                    if refinement_leq(pi, sigma).unwrap().is_none() {
                        continue;
                    }
                    let total: BigInt = all
                        .iter()
                        .filter(|rho| {
                            refinement_leq(pi, rho).unwrap().is_some()
                                && refinement_leq(rho, sigma).unwrap().is_some()
                        })
                        .map(|rho| mobius(rho, sigma).unwrap())
                        .sum();
                    let expected = if pi == sigma { BigInt::one() } else { BigInt::zero() };
                    assert_eq!(total, expected, "pi = {pi}, sigma = {sigma}");
                }
            }
        }
    }

    #[test]
    fn refinement_is_a_partial_order() {
        for n in 1..=5 {
            let all = enumerate_set_partitions(n).unwrap();
            let leq = |a: &SetPartition, b: &SetPartition| refinement_leq(a, b).unwrap().is_some();
            for a in &all {
                assert!(leq(a, a));
                for b in &all {
                    if leq(a, b) && leq(b, a) {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        if leq(a, b) && leq(b, c) {
                            assert!(leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn upper_set_witnesses_round_trip() {
        let pi = sp(&[&[1, 3], &[2], &[4]], 4);
        let groupings = enumerate_set_partitions(pi.len()).unwrap();
        let uppers = pi.upper_set().unwrap();
        assert_eq!(uppers.len(), 5);
        for (g, rho) in groupings.iter().zip(&uppers) {
            assert_eq!(refinement_leq(&pi, rho).unwrap().as_ref(), Some(g));
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(1), vec![vec![0]]);
        assert_eq!(permutations(4).len(), 24);
    }
}
