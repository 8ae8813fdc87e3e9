//! Exact rational scalars, q-Pochhammer symbols and generic parameter points.
//!
//! Every coefficient in this crate is an exact element of `Q`, obtained by
//! specializing `(q, s_1, ..., s_N)` to rationals. A [`ParamPoint`] can only be
//! built through [`genericity_check`], so holding one means that none of the
//! denominators the series constructions divide by can vanish up to its
//! certified order.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{ConeKind, ConeVariant};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"` or `"num"`. The result is reduced; a zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::ParseRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// `"num/den"` in lowest terms, or `"num"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod rational_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

/// `q^k` for any integer `k`. Panics if `q = 0` and `k < 0`.
pub fn qpow(q: &Rational, k: i64) -> Rational {
    let mag = num_traits::pow(q.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        mag.recip()
    } else {
        mag
    }
}

/// `(a; q)_n = prod_{k=1}^{n} (1 - q^{k-1} a)`.
pub fn qpoch(a: &Rational, q: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= Rational::one() - &term;
        term *= q;
    }
    acc
}

/// Memo of partial products `(a; q)_0, (a; q)_1, ...` for a fixed `q`.
///
/// Scoped to a single computation; lookups return exactly what [`qpoch`] would.
#[derive(Debug, Clone)]
pub struct PochhammerTable {
    q: Rational,
    rows: HashMap<Rational, Vec<Rational>>,
}

impl PochhammerTable {
    pub fn new(q: Rational) -> Self {
        Self {
            q,
            rows: HashMap::new(),
        }
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn get(&mut self, a: &Rational, n: u32) -> Rational {
        let q = &self.q;
        let row = self.rows.entry(a.clone()).or_insert_with(|| vec![Rational::one()]);
        while row.len() <= n as usize {
            let k = row.len() as i64 - 1;
            let next = row.last().unwrap() * (Rational::one() - qpow(q, k) * a);
            row.push(next);
        }
        row[n as usize].clone()
    }
}

/// One denominator factor found to vanish at a candidate point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub factor: String,
}

impl Violation {
    fn new(factor: impl Into<String>) -> Self {
        Self { factor: factor.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.factor)
    }
}

/// A rational specialization of `(q, s_1, ..., s_N)` carrying a genericity certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    q: Rational,
    s: Vec<Rational>,
    order_bound: u32,
}

impl ParamPoint {
    /// Certifies `(q, s)` through `order_bound`; see [`genericity_check`].
    pub fn new(q: Rational, s: Vec<Rational>, order_bound: u32) -> Result<Self> {
        genericity_check(&q, &s, order_bound)
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn s(&self) -> &[Rational] {
        &self.s
    }

    pub fn order_bound(&self) -> u32 {
        self.order_bound
    }

    /// A certificate for order `M` is also one for every `M' <= M`.
    pub fn covers(&self, order: u32) -> bool {
        order <= self.order_bound
    }

    pub(crate) fn require(&self, order: u32) -> Result<()> {
        if self.covers(order) {
            Ok(())
        } else {
            Err(Error::CertificateTooWeak {
                certified: self.order_bound,
                requested: order,
            })
        }
    }

    /// `{"q": "...", "s": [...]}` as used in reports and CLI output.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q": format_rational(&self.q),
            "s": self.s.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(format_rational).collect();
        write!(f, "q={} s=({})", self.q, s.join(", "))
    }
}

/// Largest `|k|` for which factors `1 - q^k (...)` are scanned at a given order.
///
/// Pochhammer bases in the coefficient formulas carry offsets bounded by the
/// total index weight, and the branching sum shifts `s` by a further `q^{-theta}`.
pub fn exponent_range(order_bound: u32) -> i64 {
    3 * order_bound as i64 + 3
}

/// Scans every denominator factor reachable at `order_bound` and certifies `(q, s)`.
///
/// Checked factors, for `|k| <= exponent_range(order_bound)`:
/// `1 - q^k s_j/s_i` (`i != j`), `1 - q^k/(s_i s_j)` (`i <= j`, `k >= 1`),
/// `1 - q^m` (`m >= 1`), and the type A and type B eigen divisors at every
/// nonzero cone monomial of degree at most `order_bound`.
pub fn genericity_check(q: &Rational, s: &[Rational], order_bound: u32) -> Result<ParamPoint> {
    let n = s.len();
    let mut bad = Vec::new();
    if n == 0 {
        bad.push(Violation::new("N (empty s)"));
        return Err(Error::NonGeneric(bad));
    }
    if q.is_zero() {
        bad.push(Violation::new("q"));
    }
    for (i, si) in s.iter().enumerate() {
        if si.is_zero() {
            bad.push(Violation::new(format!("s{}", i + 1)));
        }
    }
    if !bad.is_empty() {
        return Err(Error::NonGeneric(bad));
    }

    let range = exponent_range(order_bound);
    let powers: Vec<Rational> = (-range..=range).map(|k| qpow(q, k)).collect();
    let pw = |k: i64| &powers[(k + range) as usize];
    let one = Rational::one();

    for m in 1..=range {
        if pw(m) == &one {
            bad.push(Violation::new(format!("1 - q^{m}")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ratio = &s[j] / &s[i];
            for k in -range..=range {
                if pw(k) * &ratio == one {
                    bad.push(Violation::new(format!("1 - q^{k}*s{}/s{}", j + 1, i + 1)));
                }
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let inv = (&s[i] * &s[j]).recip();
            for k in 1..=range {
                if pw(k) * &inv == one {
                    bad.push(Violation::new(format!("1 - q^{k}/(s{}*s{})", i + 1, j + 1)));
                }
            }
        }
    }

    let cone_b = ConeVariant::new(ConeKind::TypeB, n);
    for degree in 1..=order_bound {
        for m in cone_b.monomials_of_degree(degree) {
            let e = m.exponents();
            if type_b_divisor(q, s, e).is_zero() {
                bad.push(Violation::new(format!("type B eigen divisor at exponent {e:?}")));
            }
            if e.iter().sum::<i64>() == 0 && type_a_divisor(q, s, e).is_zero() {
                bad.push(Violation::new(format!("type A eigen divisor at exponent {e:?}")));
            }
        }
    }

    if bad.is_empty() {
        Ok(ParamPoint {
            q: q.clone(),
            s: s.to_vec(),
            order_bound,
        })
    } else {
        Err(Error::NonGeneric(bad))
    }
}

/// `sum_i s_i (q^{m_i} - 1)`.
pub fn type_a_divisor(q: &Rational, s: &[Rational], exponents: &[i64]) -> Rational {
    s.iter()
        .zip(exponents)
        .map(|(si, &mi)| si * (qpow(q, mi) - Rational::one()))
        .sum()
}

/// `sum_i s_i (q^{m_i} - 1) + s_i^{-1} (q^{-m_i} - 1)`.
pub fn type_b_divisor(q: &Rational, s: &[Rational], exponents: &[i64]) -> Rational {
    s.iter()
        .zip(exponents)
        .map(|(si, &mi)| si * (qpow(q, mi) - Rational::one()) + si.recip() * (qpow(q, -mi) - Rational::one()))
        .sum()
}

const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Seeded source of generic parameter points and random rationals.
#[derive(Debug, Clone)]
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Proper fraction `a/b` with `2 <= b <= 13`.
    pub fn draw_q(&mut self) -> Rational {
        loop {
            let den: i64 = self.rng.gen_range(2..=13);
            let num: i64 = self.rng.gen_range(1..den);
            if num.gcd(&den) == 1 {
                return rat(num, den);
            }
        }
    }

    /// `n` distinct primes or prime ratios.
    pub fn draw_s(&mut self, n: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        while out.len() < n {
            let p = PRIMES[self.rng.gen_range(0..PRIMES.len())];
            let cand = if self.rng.gen_bool(0.5) {
                int(p)
            } else {
                let d = PRIMES[self.rng.gen_range(0..PRIMES.len())];
                rat(p, d)
            };
            if cand != Rational::one() && !out.contains(&cand) {
                out.push(cand);
            }
        }
        out
    }

    /// Nonzero rational with numerator and denominator up to `bound` in absolute value.
    pub fn draw_rational(&mut self, bound: i64) -> Rational {
        loop {
            let num: i64 = self.rng.gen_range(-bound..=bound);
            let den: i64 = self.rng.gen_range(1..=bound);
            if num != 0 {
                return rat(num, den);
            }
        }
    }

    /// Draws `(q, s)` until [`genericity_check`] succeeds, at most `retries` times.
    pub fn generic_point(&mut self, n: usize, order_bound: u32, retries: usize) -> Result<ParamPoint> {
        let mut last = Error::NonGeneric(Vec::new());
        for _ in 0..retries.max(1) {
            let q = self.draw_q();
            let s = self.draw_s(n);
            match genericity_check(&q, &s, order_bound) {
                Ok(p) => return Ok(p),
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    /// Completes a partially specified point: `None` entries are drawn.
    pub fn complete_point(
        &mut self,
        n: usize,
        q: Option<&Rational>,
        s: Option<&[Rational]>,
        order_bound: u32,
        retries: usize,
    ) -> Result<ParamPoint> {
        let mut last = Error::NonGeneric(Vec::new());
        for _ in 0..retries.max(1) {
            let qq = q.cloned().unwrap_or_else(|| self.draw_q());
            let ss = s.map(<[Rational]>::to_vec).unwrap_or_else(|| self.draw_s(n));
            match genericity_check(&qq, &ss, order_bound) {
                Ok(p) => return Ok(p),
                Err(e) => last = e,
            }
            if q.is_some() && s.is_some() {
                break;
            }
        }
        Err(last)
    }
}
