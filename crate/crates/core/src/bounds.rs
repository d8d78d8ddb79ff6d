//! Closed-form counts and domination bounds, all in exact integer (or
//! rational) arithmetic.
//!
//! Every family of graphs has one or more known lower bounds, upper bounds and
//! exact values. [`lower_bound`] takes the largest applicable lower bound,
//! [`exact_or_upper`] collects everything that applies, including upper
//! bounds inherited by an undirected graph from its directed version.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{GraphSpec, Orientation};
use crate::words::count_words;

pub(crate) fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * big(i))
}

/// `d! / (d - t)!`
pub fn falling(d: usize, t: usize) -> BigUint {
    ((d - t + 1)..=d).fold(BigUint::one(), |acc, i| acc * big(i))
}

pub fn pow(base: usize, exp: usize) -> BigUint {
    big(base).pow(exp as u32)
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    a.div_ceil(b)
}

/// `ceil(V / (Δ + 1))`
pub fn generic_lower(vertex_count: &BigUint, max_degree: &BigUint) -> BigUint {
    ceil_div(vertex_count, &(max_degree + 1u32))
}

/// Closed forms keyed by the result they come from.
pub mod formulas {
    use super::*;

    /// Degree bound for the directed graph, `Δ = d - t + 1`.
    pub fn degree_directed(d: usize, t: usize, n: usize) -> BigUint {
        let v = count_words(d, t, n).expect("valid parameters");
        generic_lower(&v, &big(d - t + 1))
    }

    /// Degree bound for the undirected graph, `Δ <= 2(d - t + 1)`.
    pub fn degree_undirected(d: usize, t: usize, n: usize) -> BigUint {
        let v = count_words(d, t, n).expect("valid parameters");
        generic_lower(&v, &big(2 * (d - t + 1)))
    }

    /// Directed de Bruijn: `ceil(d^n / (d + 1))`.
    pub fn thm1(d: usize, n: usize) -> BigUint {
        ceil_div(&pow(d, n), &big(d + 1))
    }

    /// Undirected de Bruijn, n = 2: `d - 1`.
    pub fn thm2(d: usize) -> BigUint {
        big(d - 1)
    }

    /// Undirected de Bruijn, n = 3: `d * ceil(d / 2)`.
    pub fn thm3(d: usize) -> BigUint {
        big(d * d.div_ceil(2))
    }

    /// Undirected de Bruijn, n >= 4, upper: `(d - 1) d^(n-2)`.
    pub fn thm4_upper(d: usize, n: usize) -> BigUint {
        big(d - 1) * pow(d, n - 2)
    }

    /// Directed Kautz: `(d - 1)^(n-1)`.
    pub fn thm5(d: usize, n: usize) -> BigUint {
        pow(d - 1, n - 1)
    }

    /// Undirected Kautz, n = 2: `d - 1`.
    pub fn thm6(d: usize) -> BigUint {
        big(d - 1)
    }

    pub fn thm7_lower(d: usize) -> BigUint {
        big(d * (d - 1) / 2)
    }

    pub fn thm7_upper(d: usize) -> BigUint {
        big(d * d / 2)
    }

    /// `(d - 1)^(n-1) - (d - 2)(d - 1)^(n-4)`
    pub fn thm8_upper(d: usize, n: usize) -> BigUint {
        pow(d - 1, n - 1) - big(d - 2) * pow(d - 1, n - 4)
    }

    /// `d (d - 2)^(n-2)`: exact for even d, lower bound for odd d.
    pub fn thm9_even(d: usize, n: usize) -> BigUint {
        big(d) * pow(d - 2, n - 2)
    }

    /// `(d - 1)^2 (d - 2)^(n-3)`
    pub fn thm9_odd_upper(d: usize, n: usize) -> BigUint {
        pow(d - 1, 2) * pow(d - 2, n - 3)
    }

    /// `(d - 1)(d - 2)^(n-2)`
    pub fn thm10_upper(d: usize, n: usize) -> BigUint {
        big(d - 1) * pow(d - 2, n - 2)
    }

    /// `(d - 1)(d - 1)!/(d - t)! (d - t + 1)^(n-t-1)`
    pub fn thm11_upper(d: usize, t: usize, n: usize) -> BigUint {
        big(d - 1) * falling(d - 1, t - 1) * pow(d - t + 1, n - t - 1)
    }

    /// `ceil(n / 2) (n - 1)!`
    pub fn thm13(n: usize) -> BigUint {
        big(n.div_ceil(2)) * factorial(n - 1)
    }

    /// `ceil(n / 3) (n - 1)!`
    pub fn thm14(n: usize) -> BigUint {
        big(n.div_ceil(3)) * factorial(n - 1)
    }

    /// `(n + c)! / ((c + 2) c!)`
    pub fn thm15_lower(n: usize, c: usize) -> BigUint {
        falling(n + c, n) / big(c + 2)
    }

    /// `(n + c - 1)(n + c - 1)! / (c + 1)!`
    pub fn thm15_upper(n: usize, c: usize) -> BigUint {
        big(n + c - 1) * factorial(n + c - 1) / factorial(c + 1)
    }

    /// `(n + c)! / ((2c + 3) c!)`, rounded up.
    pub fn thm16_lower(n: usize, c: usize) -> BigUint {
        ceil_div(&falling(n + c, n), &big(2 * c + 3))
    }

    /// `|A_0| = (n + c - 1)! / (c - 1)!`, zero when `c = 0`.
    pub fn a0_size(n: usize, c: usize) -> BigUint {
        if c == 0 {
            BigUint::zero()
        } else {
            falling(n + c - 1, n)
        }
    }

    /// `|A_i| = (n + c - 1)! / c!` for `1 <= i <= n`.
    pub fn ai_size(n: usize, c: usize) -> BigUint {
        falling(n + c - 1, n - 1)
    }

    /// `(n + c - 1)! / (c + 1)!`: blocks per part, and the size of each
    /// selected `S_i`.
    pub fn blocks_per_part(n: usize, c: usize) -> BigUint {
        factorial(n + c - 1) / factorial(c + 1)
    }

    /// `(n + c - 1)! / (c + 2)!`: u-blocks per part.
    pub fn ublocks_per_part(n: usize, c: usize) -> BigUint {
        factorial(n + c - 1) / factorial(c + 2)
    }
}

/// Dominating-set size `T(n + c, n, n)` for the undirected partial
/// permutation graph, counting `2 ceil(n/4)` selected parts per level.
pub fn thm16_recurrence(n: usize, c: usize) -> BigUint {
    let per_level = big(2 * n.div_ceil(4));
    let mut total = formulas::thm14(n);
    for level in 1..=c {
        total += &per_level * formulas::blocks_per_part(n, level);
    }
    total
}

fn rational(x: BigUint) -> BigRational {
    BigRational::from_integer(x.into())
}

fn ratio(a: BigUint, b: BigUint) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// The recurrence with `2 ceil(n/4)` relaxed to `(n + 4)/2`.
pub fn thm16_relaxed(n: usize, c: usize) -> BigRational {
    let mut sum = BigRational::zero();
    for i in 1..=c {
        sum += ratio(factorial(n + i - 1), factorial(i + 1));
    }
    rational(formulas::thm14(n)) + ratio(big(n + 4), big(2)) * sum
}

/// Closed form of the relaxed recurrence, with `ceil(n/3)` relaxed to `(n+3)/3`:
///
/// `(1 + 1/(2c+2) + 4/n + 2/(n(c+1)) - (2c+3)(n+6)(n-1)! c! / (6 (n+c)!)) (n+c)! / ((2c+3) c!)`
pub fn thm16_closed_form(n: usize, c: usize) -> BigRational {
    let q = |a: usize, b: usize| ratio(big(a), big(b));
    let scale = ratio(falling(n + c, n), big(2 * c + 3));
    let correction = ratio(
        big((2 * c + 3) * (n + 6)) * factorial(n - 1) * factorial(c),
        big(6) * factorial(n + c),
    );
    let factor = BigRational::one() + q(1, 2 * c + 2) + q(4, n) + q(2, n * (c + 1)) - correction;
    factor * scale
}

/// Left side of `sum_{i=0..h} (n+i-1)!/(i+1)! = (h+n)! / (n (h+1)!)`.
pub fn factorial_sum(n: usize, h: usize) -> BigRational {
    (0..=h).fold(BigRational::zero(), |acc, i| {
        acc + ratio(factorial(n + i - 1), factorial(i + 1))
    })
}

/// Right side of the factorial summation identity.
pub fn factorial_sum_closed(n: usize, h: usize) -> BigRational {
    ratio(factorial(h + n), big(n) * factorial(h + 1))
}

/// The sum's actual value, `(n+h)! / ((n-1) (h+1)!) - (n-2)!` for `n >= 2`.
/// It exceeds [`factorial_sum_closed`] whenever `h >= 1`.
pub fn factorial_sum_value(n: usize, h: usize) -> BigRational {
    ratio(factorial(n + h), big(n - 1) * factorial(h + 1)) - rational(factorial(n - 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Source {
    pub id: String,
    pub citation: String,
}

fn source(id: &str, citation: &str) -> Source {
    Source {
        id: id.into(),
        citation: citation.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub spec: GraphSpec,
    #[serde(with = "crate::bigint_text")]
    pub lower: BigUint,
    #[serde(with = "crate::bigint_text::option")]
    pub upper: Option<BigUint>,
    #[serde(with = "crate::bigint_text::option")]
    pub exact: Option<BigUint>,
    pub sources: Vec<Source>,
}

impl BoundReport {
    pub fn is_consistent(&self) -> bool {
        let upper_ok = self.upper.as_ref().is_none_or(|u| &self.lower <= u);
        let exact_ok = self
            .exact
            .as_ref()
            .is_none_or(|e| &self.lower <= e && self.upper.as_ref().is_none_or(|u| e <= u));
        upper_ok && exact_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Lower,
    Upper,
    Exact,
}

struct Fact {
    kind: Kind,
    value: BigUint,
    source: Source,
}

fn fact(kind: Kind, value: BigUint, id: &str, citation: &str) -> Fact {
    Fact {
        kind,
        value,
        source: source(id, citation),
    }
}

fn directed_facts(d: usize, t: usize, n: usize) -> Vec<Fact> {
    use formulas::*;
    use Kind::*;
    let mut out = vec![fact(
        Lower,
        degree_directed(d, t, n),
        "degree.directed",
        "ceil(|V| / (d - t + 2))",
    )];
    if t == 1 {
        out.push(fact(Exact, thm1(d, n), "thm1", "ceil(d^n / (d + 1))"));
    }
    if t == 2 {
        out.push(fact(Exact, thm5(d, n), "thm5", "(d - 1)^(n - 1)"));
    }
    if t == 3 && d >= 3 && n >= 4 {
        if d.is_multiple_of(2) {
            out.push(fact(
                Exact,
                thm9_even(d, n),
                "thm9",
                "d (d - 2)^(n - 2), d even",
            ));
        } else {
            out.push(fact(
                Upper,
                thm9_odd_upper(d, n),
                "thm9",
                "(d - 1)^2 (d - 2)^(n - 3), d odd",
            ));
        }
    }
    if t >= 2 && t < n {
        out.push(fact(
            Upper,
            thm11_upper(d, t, n),
            "thm11",
            "(d - 1)(d - 1)!/(d - t)! (d - t + 1)^(n - t - 1)",
        ));
    }
    if t == n && d == n {
        out.push(fact(Exact, thm13(n), "thm13", "ceil(n / 2) (n - 1)!"));
    }
    if t == n && d > n {
        let c = d - n;
        out.push(fact(
            Upper,
            thm15_upper(n, c),
            "thm15",
            "(n + c - 1)(n + c - 1)! / (c + 1)!",
        ));
    }
    out
}

fn undirected_facts(d: usize, t: usize, n: usize) -> Vec<Fact> {
    use formulas::*;
    use Kind::*;
    let mut out = vec![fact(
        Lower,
        degree_undirected(d, t, n),
        "degree.undirected",
        "ceil(|V| / (2d - 2t + 3))",
    )];
    match (t, n) {
        (1, 2) => out.push(fact(Exact, thm2(d), "thm2", "d - 1")),
        (1, 3) => out.push(fact(Exact, thm3(d), "thm3", "d ceil(d / 2)")),
        (1, _) => out.push(fact(Upper, thm4_upper(d, n), "thm4", "(d - 1) d^(n - 2)")),
        (2, 2) => out.push(fact(Exact, thm6(d), "thm6", "d - 1")),
        (2, 3) => {
            out.push(fact(Lower, thm7_lower(d), "thm7", "d (d - 1) / 2"));
            out.push(fact(Upper, thm7_upper(d), "thm7", "floor(d^2 / 2)"));
        }
        (2, _) => out.push(fact(
            Upper,
            thm8_upper(d, n),
            "thm8",
            "(d - 1)^(n - 1) - (d - 2)(d - 1)^(n - 4)",
        )),
        _ => {}
    }
    if t == 3 && d >= 3 && n >= 4 {
        out.push(fact(
            Upper,
            thm10_upper(d, n),
            "thm10",
            "(d - 1)(d - 2)^(n - 2)",
        ));
    }
    if t >= 3 && t < n {
        out.push(fact(
            Upper,
            thm11_upper(d, t, n),
            "cor",
            "(d - 1)(d - 1)!/(d - t)! (d - t + 1)^(n - t - 1)",
        ));
    }
    if t == n && d == n {
        out.push(fact(Exact, thm14(n), "thm14", "ceil(n / 3) (n - 1)!"));
    }
    if t == n && d > n && n >= 3 {
        let c = d - n;
        out.push(fact(
            Upper,
            thm16_recurrence(n, c),
            "thm16",
            "T(n+c,n,n) = T(n+c-1,n,n) + 2 ceil(n/4) (n+c-1)!/(c+1)!",
        ));
    }
    // A directed dominating set also dominates the underlying undirected graph.
    for f in directed_facts(d, t, n) {
        if f.kind != Lower {
            out.push(Fact {
                kind: Upper,
                value: f.value,
                source: Source {
                    id: format!("directed.{}", f.source.id),
                    citation: f.source.citation,
                },
            });
        }
    }
    out
}

fn facts(spec: &GraphSpec) -> Vec<Fact> {
    match spec.orientation {
        Orientation::Directed => directed_facts(spec.d, spec.t, spec.n),
        Orientation::Undirected => undirected_facts(spec.d, spec.t, spec.n),
    }
}

/// Strongest known lower bound on the domination number.
pub fn lower_bound(spec: &GraphSpec) -> BigUint {
    facts(spec)
        .into_iter()
        .filter(|f| f.kind != Kind::Upper)
        .map(|f| f.value)
        .max()
        .expect("degree bound always applies")
}

/// Every bound that applies to `spec`: the exact value when one is known,
/// otherwise the tightest lower and upper bounds.
pub fn exact_or_upper(spec: &GraphSpec) -> BoundReport {
    let all = facts(spec);
    let lower = all
        .iter()
        .filter(|f| f.kind != Kind::Upper)
        .map(|f| f.value.clone())
        .max()
        .expect("degree bound always applies");
    let exact = all
        .iter()
        .filter(|f| f.kind == Kind::Exact)
        .map(|f| f.value.clone())
        .min();
    let upper = all
        .iter()
        .filter(|f| f.kind != Kind::Lower)
        .map(|f| f.value.clone())
        .min();
    BoundReport {
        spec: *spec,
        lower,
        upper,
        exact,
        sources: all.into_iter().map(|f| f.source).collect(),
    }
}
