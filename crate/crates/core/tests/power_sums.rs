use lgenus::exact::{rational, Rational};
use lgenus::genus::monomial_to_power_sum;
use lgenus::partitions::IntegerPartition;
use num_traits::{One, Zero};

/// All injective maps of `r` slots into `n` variables.
fn injections(r: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..n)
                    .filter(|i| !prefix.contains(i))
                    .map(|i| {
                        let mut next = prefix.clone();
                        next.push(i);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// `m_I(x)` as the sum over distinct monomials `x_{i_1}^{I_1} ...`: each
/// injection is one ordered placement, and equal parts overcount by the
/// multiplicity factorial.
fn monomial_direct(i: &IntegerPartition, x: &[Rational]) -> Rational {
    let sum: Rational = injections(i.len(), x.len())
        .iter()
        .map(|idx| idx.iter().zip(i.parts()).fold(Rational::one(), |acc, (&v, &e)| acc * pow(&x[v], e)))
        .sum();
    sum / Rational::from_integer(i.multiplicity_factorial())
}

#[test]
fn monomial_expansion_matches_direct_evaluation() {
    let points: [Vec<Rational>; 3] = [
        vec![rational(1, 2), rational(-2, 3), rational(3, 1), rational(1, 5), rational(-1, 1)],
        vec![rational(2, 1), rational(2, 1), rational(-1, 3), rational(5, 7), rational(1, 1), rational(-3, 4)],
        vec![rational(1, 1), rational(1, 1), rational(1, 1)],
    ];
    for x in &points {
        let power_sums: Vec<Rational> = (1..=5u32).map(|j| x.iter().map(|v| pow(v, j)).sum()).collect();
        for k in 1..=5 {
            for i in IntegerPartition::all(k) {
                let expansion = monomial_to_power_sum(&i).unwrap();
                assert_eq!(expansion.evaluate(&power_sums), monomial_direct(&i, x), "m_{i}");
            }
        }
    }
}

#[test]
fn single_part_is_a_power_sum() {
    for k in 1..=8u32 {
        let i = IntegerPartition::new(vec![k]).unwrap();
        let e = monomial_to_power_sum(&i).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.coefficient(&i), Rational::one());
    }
}

#[test]
fn coefficients_sum_to_zero_off_the_single_part() {
    // every p_J is 1 at x = (1, 0, 0, ...), while m_I vanishes there for r >= 2
    for k in 2..=7 {
        for i in IntegerPartition::all(k).into_iter().filter(|i| i.len() >= 2) {
            let e = monomial_to_power_sum(&i).unwrap();
            let total: Rational = e.terms().values().cloned().sum();
            assert!(total.is_zero(), "m_{i}");
        }
    }
}
