//! Truncated formal series on the ratio-monomial cones.
//!
//! The type A cone is spanned by `x_{i+1}/x_i` (`1 <= i < N`); the type B cone
//! additionally by `1/x_N`. The generators form a lattice basis, so every
//! exponent vector in the cone has unique non-negative coordinates. The grading
//! used for truncation is the sum of those coordinates ("cone degree"); every
//! multiplier occurring in either Toda operator has degree 0 or 1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{qpow, rational_string, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConeKind {
    TypeA,
    TypeB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConeVariant {
    pub kind: ConeKind,
    pub n: usize,
}

/// Why an exponent vector is not a cone monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeRejection {
    Length {
        expected: usize,
        actual: usize,
    },
    /// Coordinate `index` (0-based; the `1/x_N` coordinate is last) is negative.
    Negative {
        index: usize,
        value: i64,
    },
    /// Type A requires the exponents to sum to zero.
    OffLattice {
        total: i64,
    },
}

impl fmt::Display for ConeRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeRejection::Length { expected, actual } => {
                write!(f, "exponent vector of length {actual}, expected {expected}")
            }
            ConeRejection::Negative { index, value } => {
                write!(f, "cone coordinate {index} is {value}")
            }
            ConeRejection::OffLattice { total } => {
                write!(f, "exponents sum to {total}, not 0")
            }
        }
    }
}

impl ConeVariant {
    pub fn new(kind: ConeKind, n: usize) -> Self {
        assert!(n >= 1, "cone rank must be positive");
        Self { kind, n }
    }

    pub fn type_a(n: usize) -> Self {
        Self::new(ConeKind::TypeA, n)
    }

    pub fn type_b(n: usize) -> Self {
        Self::new(ConeKind::TypeB, n)
    }

    /// Number of cone generators.
    pub fn rank(&self) -> usize {
        match self.kind {
            ConeKind::TypeA => self.n - 1,
            ConeKind::TypeB => self.n,
        }
    }

    /// Unique coordinates of `exponents` in the generator basis.
    ///
    /// With `p_i = m_1 + ... + m_i`, the coordinate on `x_{i+1}/x_i` is `-p_i`
    /// and the coordinate on `1/x_N` is `-p_N`.
    pub fn cone_coords(&self, exponents: &[i64]) -> std::result::Result<Vec<u32>, ConeRejection> {
        if exponents.len() != self.n {
            return Err(ConeRejection::Length {
                expected: self.n,
                actual: exponents.len(),
            });
        }
        let mut coords = Vec::with_capacity(self.rank());
        let mut prefix = 0i64;
        for (index, &m) in exponents.iter().enumerate() {
            prefix += m;
            if index + 1 == self.n {
                break;
            }
            if prefix > 0 {
                return Err(ConeRejection::Negative { index, value: -prefix });
            }
            coords.push((-prefix) as u32);
        }
        match self.kind {
            ConeKind::TypeA if prefix != 0 => Err(ConeRejection::OffLattice { total: prefix }),
            ConeKind::TypeA => Ok(coords),
            ConeKind::TypeB if prefix > 0 => Err(ConeRejection::Negative {
                index: self.n - 1,
                value: -prefix,
            }),
            ConeKind::TypeB => {
                coords.push((-prefix) as u32);
                Ok(coords)
            }
        }
    }

    pub fn monomial(&self, exponents: Vec<i64>) -> Result<ConeMonomial> {
        let coords = self.cone_coords(&exponents).map_err(Error::NotInCone)?;
        Ok(ConeMonomial {
            degree: coords.iter().sum(),
            exponents,
        })
    }

    pub fn contains(&self, m: &ConeMonomial) -> bool {
        self.cone_coords(&m.exponents).is_ok()
    }

    /// Inverse of [`cone_coords`](Self::cone_coords).
    pub fn from_coords(&self, coords: &[u32]) -> ConeMonomial {
        assert_eq!(coords.len(), self.rank());
        let mut exponents = vec![0i64; self.n];
        for (i, &a) in coords.iter().take(self.n - 1).enumerate() {
            exponents[i] -= a as i64;
            exponents[i + 1] += a as i64;
        }
        if self.kind == ConeKind::TypeB {
            exponents[self.n - 1] -= coords[self.n - 1] as i64;
        }
        ConeMonomial {
            exponents,
            degree: coords.iter().sum(),
        }
    }

    pub fn origin(&self) -> ConeMonomial {
        ConeMonomial::origin(self.n)
    }

    /// `x_{i+2}/x_{i+1}` in 1-based terms, i.e. the generator at 0-based index `i < N-1`.
    pub fn ratio_generator(&self, i: usize) -> ConeMonomial {
        assert!(i + 1 < self.n);
        let mut exponents = vec![0i64; self.n];
        exponents[i] = -1;
        exponents[i + 1] = 1;
        ConeMonomial { exponents, degree: 1 }
    }

    /// Every cone monomial of the given degree, in lexicographic exponent order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<ConeMonomial> {
        let mut out = Vec::new();
        let mut coords = vec![0u32; self.rank()];
        compositions(&mut coords, 0, degree, &mut |c| out.push(self.from_coords(c)));
        out.sort();
        out
    }
}

fn compositions(buf: &mut [u32], pos: usize, remaining: u32, emit: &mut dyn FnMut(&[u32])) {
    if pos == buf.len() {
        if remaining == 0 {
            emit(buf);
        }
        return;
    }
    if pos + 1 == buf.len() {
        buf[pos] = remaining;
        emit(buf);
        buf[pos] = 0;
        return;
    }
    for v in 0..=remaining {
        buf[pos] = v;
        compositions(buf, pos + 1, remaining - v, emit);
    }
    buf[pos] = 0;
}

impl fmt::Display for ConeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(N={})", self.kind, self.n)
    }
}

/// Exponent vector of a cone monomial together with its cone degree.
///
/// Ordered lexicographically by exponents (the degree is a function of them).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeMonomial {
    exponents: Vec<i64>,
    degree: u32,
}

impl ConeMonomial {
    pub fn origin(n: usize) -> Self {
        Self {
            exponents: vec![0; n],
            degree: 0,
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_origin(&self) -> bool {
        self.degree == 0
    }

    /// Product of monomials; degrees add.
    pub fn mul(&self, other: &ConeMonomial) -> ConeMonomial {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        ConeMonomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Appends zero exponents for `x_{n+1}, ..., x_{new_n}`; the degree is unchanged.
    pub fn extend_to(&self, new_n: usize) -> ConeMonomial {
        let mut exponents = self.exponents.clone();
        exponents.resize(new_n, 0);
        ConeMonomial {
            exponents,
            degree: self.degree,
        }
    }
}

impl fmt::Display for ConeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_origin() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Direction of a `q`-shift `T_{q,x_i}^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Finite sum of cone monomials with exact rational coefficients, exact through
/// cone degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    variant: ConeVariant,
    order: u32,
    terms: BTreeMap<ConeMonomial, Rational>,
}

impl TruncatedSeries {
    pub fn zero(variant: ConeVariant, order: u32) -> Self {
        Self {
            variant,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(variant: ConeVariant, order: u32) -> Self {
        Self::monomial(variant, order, variant.origin(), Rational::one())
    }

    /// `c * m`, or the zero series if `deg m > order`.
    pub fn monomial(variant: ConeVariant, order: u32, m: ConeMonomial, c: Rational) -> Self {
        let mut out = Self::zero(variant, order);
        out.add_term(m, c);
        out
    }

    /// Builds a series from `(exponents, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I>(variant: ConeVariant, order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Rational)>,
    {
        let mut out = Self::zero(variant, order);
        for (e, c) in terms {
            let m = variant.monomial(e)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn variant(&self) -> ConeVariant {
        self.variant
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ConeMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &ConeMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient at an exponent vector; zero if absent or outside the cone.
    pub fn coefficient_at(&self, exponents: &[i64]) -> Rational {
        match self.variant.monomial(exponents.to_vec()) {
            Ok(m) => self.coefficient(&m),
            Err(_) => Rational::zero(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&self.variant.origin())
    }

    /// Adds `c * m` in place. Terms above the order are dropped and zeros pruned.
    pub(crate) fn add_term(&mut self, m: ConeMonomial, c: Rational) {
        if m.degree > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Replaces the coefficient at `m` (removing it when `c = 0`).
    pub fn set_coefficient(&mut self, m: ConeMonomial, c: Rational) -> Result<()> {
        if !self.variant.contains(&m) {
            return Err(Error::NotInCone(self.variant.cone_coords(m.exponents()).unwrap_err()));
        }
        if c.is_zero() {
            self.terms.remove(&m);
        } else if m.degree <= self.order {
            self.terms.insert(m, c);
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.variant != other.variant {
            return Err(Error::VariantMismatch {
                left: self.variant.to_string(),
                right: other.variant.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.variant, self.order);
        }
        Self {
            variant: self.variant,
            order: self.order,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Cauchy product; everything above `min(order_f, order_g)` is discarded.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.variant, order);
        for (u, a) in &self.terms {
            if u.degree > order {
                continue;
            }
            for (v, b) in &other.terms {
                if u.degree + v.degree > order {
                    continue;
                }
                out.add_term(u.mul(v), a * b);
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial `g`, dropping terms pushed above the order.
    pub fn mul_monomial(&self, g: &ConeMonomial) -> Result<Self> {
        if let Err(r) = self.variant.cone_coords(g.exponents()) {
            return Err(Error::NotInCone(r));
        }
        let mut out = Self::zero(self.variant, self.order);
        for (m, c) in &self.terms {
            if m.degree + g.degree <= self.order {
                out.terms.insert(m.mul(g), c.clone());
            }
        }
        Ok(out)
    }

    /// `f(x_1, ..., q^{±1} x_i, ..., x_N)` for the 0-based axis `i`.
    pub fn shift(&self, axis: usize, sign: Sign, q: &Rational) -> Self {
        assert!(axis < self.variant.n, "shift axis {axis} out of range");
        let step = sign.as_i64();
        let mut powers: BTreeMap<i64, Rational> = BTreeMap::new();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = step * m.exponents[axis];
                let factor = powers.entry(e).or_insert_with(|| qpow(q, e));
                (m.clone(), c * &*factor)
            })
            .collect();
        Self {
            variant: self.variant,
            order: self.order,
            terms,
        }
    }

    /// Drops all terms above `order` (which must not exceed the current order).
    pub fn truncated(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self {
            variant: self.variant,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-reads the series in a larger cone: `A_{n-1}` into `A_{N-1}` (padding
    /// exponents with zeros) or `A_{N-1}` into `B_N`. Degrees are preserved.
    pub fn embed(&self, target: ConeVariant) -> Result<Self> {
        let ok = target.n >= self.variant.n
            && (self.variant.kind == ConeKind::TypeA || target.kind == ConeKind::TypeB)
            && (self.variant.kind == target.kind || target.n == self.variant.n);
        if !ok {
            return Err(Error::VariantMismatch {
                left: self.variant.to_string(),
                right: target.to_string(),
            });
        }
        Ok(Self {
            variant: target,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend_to(target.n), c.clone()))
                .collect(),
        })
    }

    /// First monomial where `self` and `other` differ through `order`, scanning
    /// by degree and then lexicographically.
    pub fn first_difference(&self, other: &Self, order: u32) -> Option<(ConeMonomial, Rational, Rational)> {
        let mut keys: Vec<&ConeMonomial> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|m| m.degree <= order)
            .collect();
        keys.sort_by(|a, b| (a.degree, &a.exponents).cmp(&(b.degree, &b.exponents)));
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let a = self.coefficient(m);
            let b = other.coefficient(m);
            (a != b).then(|| (m.clone(), a, b))
        })
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            variant: self.variant.kind,
            n: self.variant.n,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exponent: m.exponents.clone(),
                    coefficient: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        let variant = ConeVariant::new(json.variant, json.n);
        Self::from_terms(
            variant,
            json.order,
            json.terms.iter().map(|t| (t.exponent.clone(), t.coefficient.clone())),
        )
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_origin() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

/// Wire form of a series: terms in lexicographic exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub variant: ConeKind,
    pub n: usize,
    pub order: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponent: Vec<i64>,
    #[serde(with = "rational_string")]
    pub coefficient: Rational,
}
