//! Text, LaTeX, CSV and JSON renderings of coefficient tables.
//!
//! Rationals in JSON are `{"num": "...", "den": "..."}` with decimal
//! strings, never floats.

use lgenus::exact::Rational;
use lgenus::genus::CoefficientTable;
use lgenus::partitions::IntegerPartition;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for JsonRational {
    fn from(r: &Rational) -> Self {
        JsonRational {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl JsonRational {
    pub fn to_rational(&self) -> Option<Rational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(num, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonEntry {
    pub partition: Vec<u32>,
    pub coefficient: JsonRational,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonPoly {
    pub genus: String,
    pub k: usize,
    /// Common denominator of all coefficients.
    pub denominator: String,
    pub terms: Vec<JsonEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonTable {
    pub genus: String,
    pub max_k: usize,
    pub degrees: Vec<JsonPoly>,
}

fn common_denominator(table: &CoefficientTable) -> BigInt {
    table
        .entries()
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// `p2*p1`, `p1^3`, `p2^2*p1`.
fn monomial_text(j: &IntegerPartition) -> String {
    j.multiplicities()
        .iter()
        .map(|&(part, mult)| {
            if mult == 1 {
                format!("p{part}")
            } else {
                format!("p{part}^{mult}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn monomial_latex(j: &IntegerPartition) -> String {
    j.multiplicities()
        .iter()
        .map(|&(part, mult)| {
            if mult == 1 {
                format!("p_{{{part}}}")
            } else {
                format!("p_{{{part}}}^{{{mult}}}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Nonzero terms in display order, scaled to integers by the common
/// denominator.
fn integer_terms(table: &CoefficientTable) -> (BigInt, Vec<(BigInt, &IntegerPartition)>) {
    let d = common_denominator(table);
    let terms = table
        .iter_display()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| ((c * Rational::from_integer(d.clone())).to_integer(), j))
        .collect();
    (d, terms)
}

fn signed_sum(terms: &[(BigInt, String)], sep: &str) -> String {
    let mut out = String::new();
    for (i, (n, body)) in terms.iter().enumerate() {
        let a = n.abs();
        if i == 0 {
            if n.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if n.is_negative() { " - " } else { " + " });
        }
        if a.is_one() {
            out.push_str(body);
        } else {
            out.push_str(&format!("{a}{sep}{body}"));
        }
    }
    out
}

/// `(7*p2 - p1^2)/45`, `-(1/24)*p1`, `1` for degree 0.
pub fn poly_text(table: &CoefficientTable) -> String {
    if table.degree() == 0 {
        return "1".into();
    }
    let (d, terms) = integer_terms(table);
    if terms.is_empty() {
        return "0".into();
    }
    if terms.len() == 1 {
        let (n, j) = &terms[0];
        let c = Rational::new(n.clone(), d);
        let sign = if c.is_negative() { "-" } else { "" };
        let a = c.abs();
        let body = monomial_text(j);
        return if a.is_integer() {
            signed_sum(&[(n.clone(), body)], "*")
        } else {
            format!("{sign}({a})*{body}")
        };
    }
    let body: Vec<(BigInt, String)> = terms.iter().map(|(n, j)| (n.clone(), monomial_text(j))).collect();
    let sum = signed_sum(&body, "*");
    if d.is_one() {
        sum
    } else {
        format!("({sum})/{d}")
    }
}

/// `\frac{1}{45} \left( 7 p_{2} - p_{1}^{2} \right)`.
pub fn poly_latex(table: &CoefficientTable) -> String {
    if table.degree() == 0 {
        return "1".into();
    }
    let (d, terms) = integer_terms(table);
    if terms.is_empty() {
        return "0".into();
    }
    if terms.len() == 1 {
        let (n, j) = &terms[0];
        let c = Rational::new(n.clone(), d);
        let sign = if c.is_negative() { "-" } else { "" };
        let a = c.abs();
        let coef = if a.is_one() {
            String::new()
        } else if a.is_integer() {
            format!("{a} ")
        } else {
            format!("\\frac{{{}}}{{{}}} ", a.numer(), a.denom())
        };
        return format!("{sign}{coef}{}", monomial_latex(j));
    }
    let body: Vec<(BigInt, String)> = terms.iter().map(|(n, j)| (n.clone(), monomial_latex(j))).collect();
    let sum = signed_sum(&body, " ");
    if d.is_one() {
        sum
    } else {
        format!("\\frac{{1}}{{{d}}} \\left( {sum} \\right)")
    }
}

fn json_poly(genus: &str, table: &CoefficientTable) -> JsonPoly {
    JsonPoly {
        genus: genus.into(),
        k: table.degree(),
        denominator: common_denominator(table).to_string(),
        terms: table
            .iter_display()
            .map(|(j, c)| JsonEntry {
                partition: j.parts().to_vec(),
                coefficient: c.into(),
            })
            .collect(),
    }
}

pub fn poly_json(genus: &str, table: &CoefficientTable) -> String {
    serde_json::to_string_pretty(&json_poly(genus, table)).expect("serializable")
}

pub fn table_json(genus: &str, tables: &[CoefficientTable]) -> String {
    let doc = JsonTable {
        genus: genus.into(),
        max_k: tables.len(),
        degrees: tables.iter().map(|t| json_poly(genus, t)).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// `k,partition,coefficient_num,coefficient_den,sign,r` with partitions as
/// `j1+j2+...` and sign one of `+`, `-`, `0`.
pub fn table_csv(tables: &[CoefficientTable]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "partition", "coefficient_num", "coefficient_den", "sign", "r"])
        .expect("in-memory write");
    for t in tables {
        for (j, c) in t.iter_display() {
            let sign = if c.is_positive() {
                "+"
            } else if c.is_negative() {
                "-"
            } else {
                "0"
            };
            w.write_record([
                t.degree().to_string(),
                j.plus_notation(),
                c.numer().to_string(),
                c.denom().to_string(),
                sign.to_string(),
                j.len().to_string(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
}
