//! Exact checks of the identities around the branching formula.
//!
//! Every check produces a [`Report`]. A check passes only when the residual is
//! the exact rational zero; otherwise the report names the first offending
//! monomial (lowest degree, then lexicographic) or index together with both sides.
//!
//! Scalar identities are exposed as [`IdentitySides`] (a left side and the
//! summands of the right side) so that callers can mutate a single summand and
//! confirm the check notices.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::coefficients::{Evaluator, ThetaVector};
use crate::eigenfunctions::{fa_direct, fa_inverted, fb_branching, solve_eigen};
use crate::error::{Error, Result};
use crate::operators::{toda_a, toda_b, DifferenceOperator};
use crate::scalars::{format_rational, qpow, rational_string, ParamPoint, PointSampler, Rational};
use crate::series::{ConeKind, ConeVariant, Sign, TruncatedSeries};

/// Where a check first failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// `"monomial"` (index is an exponent vector), `"theta"`, or `"value"`.
    pub kind: String,
    pub index: Vec<i64>,
    #[serde(with = "rational_string")]
    pub lhs: Rational,
    #[serde(with = "rational_string")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub check: String,
    pub n: usize,
    pub order: Option<u32>,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub pass: bool,
    pub first_failure: Option<Failure>,
    /// Highest cone degree through which compared coefficients are exact.
    pub trusted_degree: Option<u32>,
}

impl Report {
    fn new(check: &str, n: usize, order: Option<u32>, params: serde_json::Value, failure: Option<Failure>) -> Self {
        Self {
            check: check.to_string(),
            n,
            order,
            params,
            seed: None,
            pass: failure.is_none(),
            first_failure: failure,
            trusted_degree: order,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Coefficient-for-coefficient comparison through `order`.
pub fn compare_series(
    check: &str,
    params: serde_json::Value,
    lhs: &TruncatedSeries,
    rhs: &TruncatedSeries,
    order: u32,
) -> Report {
    let failure = lhs.first_difference(rhs, order).map(|(m, a, b)| Failure {
        kind: "monomial".into(),
        index: m.exponents().to_vec(),
        lhs: a,
        rhs: b,
    });
    Report::new(check, lhs.variant().n, Some(order), params, failure)
}

/// Passes iff `(op - eigenvalue) f` vanishes through `f.order()`.
///
/// Operator multipliers have degree at most 1, so the residual at degree `M`
/// only involves coefficients of `f` at degrees `M - 1` and `M`.
pub fn verify_eigen_series(
    check: &str,
    params: serde_json::Value,
    op: &DifferenceOperator,
    f: &TruncatedSeries,
) -> Result<Report> {
    let residual = op.residual(f)?;
    let zero = TruncatedSeries::zero(residual.variant(), residual.order());
    Ok(compare_series(check, params, &residual, &zero, f.order()))
}

/// Residual check for the explicit type A function or the branching type B function.
pub fn verify_eigen(kind: ConeKind, p: &ParamPoint, order: u32) -> Result<Report> {
    p.require(order)?;
    let (q, s) = (p.q(), p.s());
    match kind {
        ConeKind::TypeA => verify_eigen_series("eigen-a", p.to_json(), &toda_a(q, s), &fa_direct(q, s, order)?),
        ConeKind::TypeB => verify_eigen_series("eigen-b", p.to_json(), &toda_b(q, s), &fb_branching(q, s, order)?),
    }
}

/// Branching sum against the eigen-solve of the type B operator.
pub fn verify_branching(p: &ParamPoint, order: u32) -> Result<Report> {
    p.require(order)?;
    let (q, s) = (p.q(), p.s());
    let oracle = solve_eigen(&toda_b(q, s), order)?;
    let branched = fb_branching(q, s, order)?;
    Ok(compare_series("branching", p.to_json(), &branched, &oracle, order))
}

/// Explicit type A function against its reversed-inverted counterpart.
pub fn verify_symmetry(p: &ParamPoint, order: u32) -> Result<Report> {
    p.require(order)?;
    let (q, s) = (p.q(), p.s());
    Ok(compare_series(
        "symmetry",
        p.to_json(),
        &fa_inverted(q, s, order)?,
        &fa_direct(q, s, order)?,
        order,
    ))
}

/// Scalar in front of `(x_N/x_k) f^A(x | q^{-eps_k} s)` in the contiguity relation
/// (0-based `k`):
///
/// ```text
/// (-1)^{N-k} q^{N-k} prod_{k<i<N} s_i/s_k / prod_{k<i<=N} (1 - s_i/s_k)(1 - q s_i/s_k)
/// ```
pub fn contiguity_coefficient(q: &Rational, s: &[Rational], k: usize) -> Result<Rational> {
    let n = s.len();
    let gap = (n - 1 - k) as i64;
    let mut num = qpow(q, gap);
    if gap % 2 == 1 {
        num = -num;
    }
    let mut den = Rational::one();
    for i in k + 1..n {
        let r = &s[i] / &s[k];
        if i + 1 < n {
            num *= &r;
        }
        den *= (Rational::one() - &r) * (Rational::one() - q * &r);
    }
    if den.is_zero() {
        return Err(Error::VanishingDenominator(format!(
            "contiguity coefficient k = {}",
            k + 1
        )));
    }
    Ok(num / den)
}

/// `s` with `s_k` replaced by `q^{-1} s_k`.
fn lowered(q: &Rational, s: &[Rational], k: usize) -> Vec<Rational> {
    let mut out = s.to_vec();
    out[k] = &out[k] / q;
    out
}

/// Left side `f^A(x_1, ..., q x_N | s)` and the `N` right-side summands of the
/// contiguity relation, each through `order`.
pub fn contiguity_sides(q: &Rational, s: &[Rational], order: u32) -> Result<(TruncatedSeries, Vec<TruncatedSeries>)> {
    let n = s.len();
    let cone = ConeVariant::type_a(n);
    let lhs = fa_direct(q, s, order)?.shift(n - 1, Sign::Plus, q);
    let mut terms = Vec::with_capacity(n);
    for k in 0..n {
        let coef = contiguity_coefficient(q, s, k)?;
        let mut e = vec![0i64; n];
        e[k] -= 1;
        e[n - 1] += 1;
        let g = cone.monomial(e)?;
        let inner_order = order.saturating_sub(g.degree());
        let mut inner = fa_direct(q, &lowered(q, s, k), inner_order)?;
        if g.degree() > order {
            inner = TruncatedSeries::zero(cone, order);
        }
        let mut term = TruncatedSeries::zero(cone, order);
        for (m, c) in inner.iter() {
            term.add_term(m.mul(&g), c * &coef);
        }
        terms.push(term);
    }
    Ok((lhs, terms))
}

pub fn verify_contiguity(p: &ParamPoint, order: u32) -> Result<Report> {
    p.require(order)?;
    let (lhs, terms) = contiguity_sides(p.q(), p.s(), order)?;
    let rhs = sum_series(lhs.variant(), order, &terms)?;
    Ok(compare_series("contiguity", p.to_json(), &lhs, &rhs, order))
}

pub(crate) fn sum_series(variant: ConeVariant, order: u32, parts: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    parts
        .iter()
        .try_fold(TruncatedSeries::zero(variant, order), |acc, t| acc.add(t))
}

/// Left side and right-side summands of a scalar identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySides {
    pub lhs: Rational,
    pub rhs_terms: Vec<Rational>,
}

impl IdentitySides {
    pub fn rhs(&self) -> Rational {
        self.rhs_terms.iter().sum()
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs()
    }

    /// Negates summand `k` of the right side.
    pub fn flip_term(mut self, k: usize) -> Self {
        self.rhs_terms[k] = -self.rhs_terms[k].clone();
        self
    }

    fn failure(&self, kind: &str, index: Vec<i64>) -> Option<Failure> {
        let rhs = self.rhs();
        (self.lhs != rhs).then(|| Failure {
            kind: kind.into(),
            index,
            lhs: self.lhs.clone(),
            rhs,
        })
    }
}

fn require_len(v: &[Rational], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: v.len(),
        });
    }
    Ok(())
}

/// ```text
/// prod_{i<N} a_i = sum_k (s_k/s_N) prod_{i<N} (1 - a_i s_k/s_i) / prod_{i != k} (1 - s_k/s_i)
/// ```
pub fn partition_identity_sides(a: &[Rational], s: &[Rational]) -> Result<IdentitySides> {
    let n = s.len();
    require_len(a, n.saturating_sub(1))?;
    if n == 0 || s.iter().any(Zero::is_zero) {
        return Err(Error::Coincidence("s must be nonempty with nonzero entries".into()));
    }
    for i in 0..n {
        for k in 0..i {
            if s[i] == s[k] {
                return Err(Error::Coincidence(format!("s{} = s{}", k + 1, i + 1)));
            }
        }
    }
    let lhs = a.iter().product();
    let rhs_terms = (0..n)
        .map(|k| {
            let mut num = &s[k] / &s[n - 1];
            for (ai, si) in a.iter().zip(s) {
                num *= Rational::one() - ai * &s[k] / si;
            }
            let den: Rational = (0..n)
                .filter(|&i| i != k)
                .map(|i| Rational::one() - &s[k] / &s[i])
                .product();
            num / den
        })
        .collect();
    Ok(IdentitySides { lhs, rhs_terms })
}

fn scalar_params(pairs: &[(&str, &[Rational])]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (name, v) in pairs {
        map.insert(
            name.to_string(),
            json!(v.iter().map(format_rational).collect::<Vec<_>>()),
        );
    }
    serde_json::Value::Object(map)
}

pub fn verify_partition_identity(a: &[Rational], s: &[Rational]) -> Result<Report> {
    let sides = partition_identity_sides(a, s)?;
    Ok(Report::new(
        "partition",
        s.len(),
        None,
        scalar_params(&[("a", a), ("s", s)]),
        sides.failure("value", Vec::new()),
    ))
}

/// ```text
/// sum_i ((1 - Q_i) s_i + (1 - Q_i^{-1}) s_i^{-1})
///   = sum_k s_k prod_i (1 - Q_i s_i/s_k)(1 - Q_i^{-1}/(s_i s_k)) / prod_{i != k} (1 - s_i/s_k)(1 - 1/(s_i s_k))
/// ```
pub fn type_b_identity_sides(big_q: &[Rational], s: &[Rational]) -> Result<IdentitySides> {
    let n = s.len();
    require_len(big_q, n)?;
    if big_q.iter().chain(s).any(Zero::is_zero) {
        return Err(Error::Coincidence("Q and s must be nonzero".into()));
    }
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            if s[i] == s[k] {
                return Err(Error::Coincidence(format!("s{} = s{}", k + 1, i + 1)));
            }
            if (&s[i] * &s[k]).is_one() {
                return Err(Error::Coincidence(format!("s{} s{} = 1", k + 1, i + 1)));
            }
        }
    }
    let one = Rational::one();
    let lhs = big_q
        .iter()
        .zip(s)
        .map(|(qi, si)| (&one - qi) * si + (&one - qi.recip()) * si.recip())
        .sum();
    let rhs_terms = (0..n)
        .map(|k| {
            let sk = &s[k];
            let mut num = sk.clone();
            let mut den = Rational::one();
            for i in 0..n {
                num *= (&one - &big_q[i] * &s[i] / sk) * (&one - big_q[i].recip() / (&s[i] * sk));
                if i != k {
                    den *= (&one - &s[i] / sk) * (&one - (&s[i] * sk).recip());
                }
            }
            num / den
        })
        .collect();
    Ok(IdentitySides { lhs, rhs_terms })
}

pub fn verify_type_b_identity(big_q: &[Rational], s: &[Rational]) -> Result<Report> {
    let sides = type_b_identity_sides(big_q, s)?;
    Ok(Report::new(
        "typeb",
        s.len(),
        None,
        scalar_params(&[("Q", big_q), ("s", s)]),
        sides.failure("value", Vec::new()),
    ))
}

/// The relation obtained from the partition identity at `a_i = q^{theta_i}`:
///
/// ```text
/// prod_i q^{theta_i} = sum_{k<N, theta_k >= 1} C_k(s) d(theta - e_k | q^{-eps_k} s) / d(theta | s)
///                    + d(theta | q^{-eps_N} s) / d(theta | s)
/// ```
///
/// with `C_k` the contiguity coefficients. Summands with `theta_k = 0` are absent.
pub fn dn_relation_sides(theta: &ThetaVector, q: &Rational, s: &[Rational]) -> Result<IdentitySides> {
    let n = s.len();
    if n < 2 || theta.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(1).max(1),
            actual: theta.len(),
        });
    }
    let base = Evaluator::new(q, s).d_toda(theta)?;
    if base.is_zero() {
        return Err(Error::VanishingDenominator(format!("d_toda({theta}) = 0")));
    }
    let lhs = qpow(q, theta.0.iter().map(|&t| t as i64).sum());
    let mut rhs_terms = Vec::with_capacity(n);
    for k in 0..n - 1 {
        if let Some(dec) = theta.decremented(k) {
            let d = Evaluator::new(q, &lowered(q, s, k)).d_toda(&dec)?;
            rhs_terms.push(contiguity_coefficient(q, s, k)? * d / &base);
        }
    }
    let d = Evaluator::new(q, &lowered(q, s, n - 1)).d_toda(theta)?;
    rhs_terms.push(d / &base);
    Ok(IdentitySides { lhs, rhs_terms })
}

fn theta_index(theta: &ThetaVector) -> Vec<i64> {
    theta.0.iter().map(|&t| t as i64).collect()
}

fn max_entry(theta: &ThetaVector) -> u32 {
    theta.0.iter().copied().max().unwrap_or(0)
}

pub fn verify_dn_relation(theta: &ThetaVector, p: &ParamPoint) -> Result<Report> {
    p.require(max_entry(theta))?;
    let sides = dn_relation_sides(theta, p.q(), p.s())?;
    Ok(Report::new(
        "dn-relation",
        p.n(),
        None,
        p.to_json(),
        sides.failure("theta", theta_index(theta)),
    ))
}

/// Recursion of the branching coefficients, with `e` supplied by the caller:
///
/// ```text
/// sum_i ((1 - q^{-theta_i}) s_i + (1 - q^{theta_i}) s_i^{-1}) e(theta)
///   = sum_{k: theta_k >= 1} s_N (-1)^{N-k+1} q^{-theta_N + delta_{kN}} q^{N-k}
///       prod_{k<i<N} u_i / prod_{k<i<=N} (1 - u_i)(1 - q u_i) * e(theta - e_k),
/// u_i = q^{-theta_i + theta_k - 1} s_i/s_k
/// ```
pub fn e_recursion_sides_with<F>(theta: &ThetaVector, q: &Rational, s: &[Rational], mut e: F) -> Result<IdentitySides>
where
    F: FnMut(&ThetaVector) -> Result<Rational>,
{
    let n = s.len();
    require_len(s, theta.len())?;
    let th = &theta.0;
    let one = Rational::one();
    let lambda: Rational = th
        .iter()
        .zip(s)
        .map(|(&t, si)| (&one - qpow(q, -(t as i64))) * si + (&one - qpow(q, t as i64)) * si.recip())
        .sum();
    let lhs = lambda * e(theta)?;
    let mut rhs_terms = Vec::with_capacity(n);
    for k in 0..n {
        let Some(dec) = theta.decremented(k) else { continue };
        let gap = (n - 1 - k) as i64;
        let delta = i64::from(k == n - 1);
        let mut num = &s[n - 1] * qpow(q, -(th[n - 1] as i64) + delta + gap);
        if (gap + 1) % 2 == 1 {
            num = -num;
        }
        let mut den = Rational::one();
        for i in k + 1..n {
            let u = qpow(q, -(th[i] as i64) + th[k] as i64 - 1) * &s[i] / &s[k];
            den *= (&one - &u) * (&one - q * &u);
            if i + 1 < n {
                num *= u;
            }
        }
        if den.is_zero() {
            return Err(Error::VanishingDenominator(format!(
                "recursion term k = {} at {theta}",
                k + 1
            )));
        }
        rhs_terms.push(num / den * e(&dec)?);
    }
    Ok(IdentitySides { lhs, rhs_terms })
}

pub fn e_recursion_sides(theta: &ThetaVector, q: &Rational, s: &[Rational]) -> Result<IdentitySides> {
    let mut ev = Evaluator::new(q, s);
    e_recursion_sides_with(theta, q, s, |t| ev.e_branch(t))
}

pub fn verify_e_recursion(theta: &ThetaVector, p: &ParamPoint) -> Result<Report> {
    p.require(max_entry(theta))?;
    let sides = e_recursion_sides(theta, p.q(), p.s())?;
    Ok(Report::new(
        "e-recursion",
        p.n(),
        None,
        p.to_json(),
        sides.failure("theta", theta_index(theta)),
    ))
}

/// Runs `check` over every index and folds the results into one report that
/// fails at the first failing index.
fn over_indices(
    name: &str,
    p: &ParamPoint,
    indices: Vec<ThetaVector>,
    check: impl Fn(&ThetaVector, &ParamPoint) -> Result<Report> + Sync,
) -> Result<Report> {
    let reports: Vec<Report> = indices.par_iter().map(|t| check(t, p)).collect::<Result<_>>()?;
    let failure = reports.into_iter().find_map(|r| r.first_failure);
    Ok(Report::new(name, p.n(), None, p.to_json(), failure))
}

/// Relation for every `theta` of length `N - 1` with entries at most `bound`.
pub fn verify_dn_relation_box(p: &ParamPoint, bound: u32) -> Result<Report> {
    let indices = ThetaVector::enumerate_box(p.n().saturating_sub(1), bound);
    if p.n() < 2 {
        return Ok(Report::new("dn-relation", p.n(), None, p.to_json(), None));
    }
    over_indices("dn-relation", p, indices, verify_dn_relation)
}

/// Recursion for every nonzero `theta` of length `N` with entries at most `bound`.
pub fn verify_e_recursion_box(p: &ParamPoint, bound: u32) -> Result<Report> {
    let indices = ThetaVector::enumerate_box(p.n(), bound)
        .into_iter()
        .filter(|t| !t.is_zero())
        .collect();
    over_indices("e-recursion", p, indices, verify_e_recursion)
}

/// Named checks of the suite, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    EigenA,
    EigenB,
    Branching,
    Contiguity,
    Symmetry,
    Partition,
    TypeB,
    DnRelation,
    ERecursion,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::EigenA,
        Check::EigenB,
        Check::Branching,
        Check::Contiguity,
        Check::Symmetry,
        Check::Partition,
        Check::TypeB,
        Check::DnRelation,
        Check::ERecursion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::EigenA => "eigen-a",
            Check::EigenB => "eigen-b",
            Check::Branching => "branching",
            Check::Contiguity => "contiguity",
            Check::Symmetry => "symmetry",
            Check::Partition => "partition",
            Check::TypeB => "typeb",
            Check::DnRelation => "dn-relation",
            Check::ERecursion => "e-recursion",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Bound on theta entries for the scalar recursions inside the suite.
pub const SUITE_THETA_BOUND: u32 = 3;

/// Retries when drawing a generic point.
pub const POINT_RETRIES: usize = 64;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n: usize,
    pub order: u32,
    pub points: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Fixed parameters; drawn per point when `None`.
    pub q: Option<Rational>,
    pub s: Option<Vec<Rational>>,
}

/// Draws a fresh nonzero rational vector of length `len` satisfying `ok`.
fn draw_vector(sampler: &mut PointSampler, len: usize, ok: impl Fn(&[Rational]) -> bool) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..len).map(|_| sampler.draw_rational(12)).collect();
        if ok(&v) {
            return v;
        }
    }
}

fn distinct(v: &[Rational]) -> bool {
    (0..v.len()).all(|i| (0..i).all(|k| v[i] != v[k]))
}

/// Runs one check at one point. `seed` drives any random draws the check needs.
pub fn run_check(check: Check, p: &ParamPoint, order: u32, seed: u64) -> Result<Report> {
    let n = p.n();
    let report = match check {
        Check::EigenA => verify_eigen(ConeKind::TypeA, p, order)?,
        Check::EigenB => verify_eigen(ConeKind::TypeB, p, order)?,
        Check::Branching => verify_branching(p, order)?,
        Check::Contiguity => verify_contiguity(p, order)?,
        Check::Symmetry => verify_symmetry(p, order)?,
        Check::Partition => {
            let mut sampler = PointSampler::new(seed);
            let a = draw_vector(&mut sampler, n - 1, |_| true);
            let s = draw_vector(&mut sampler, n, distinct);
            verify_partition_identity(&a, &s)?
        }
        Check::TypeB => {
            let mut sampler = PointSampler::new(seed);
            let big_q = draw_vector(&mut sampler, n, |_| true);
            let s = draw_vector(&mut sampler, n, |v| {
                distinct(v) && (0..v.len()).all(|i| (0..i).all(|k| !(&v[i] * &v[k]).is_one()))
            });
            verify_type_b_identity(&big_q, &s)?
        }
        Check::DnRelation => verify_dn_relation_box(p, SUITE_THETA_BOUND.min(p.order_bound()))?,
        Check::ERecursion => verify_e_recursion_box(p, SUITE_THETA_BOUND.min(p.order_bound()))?,
    };
    Ok(report.with_seed(seed))
}

/// Runs the configured checks at `points` generic points.
///
/// Point `i` is drawn from seed `seed + i`; reports are ordered by point, then
/// by check, independent of how the work is scheduled.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let certify = cfg.order.max(SUITE_THETA_BOUND);
    let fixed = cfg.q.is_some() && cfg.s.is_some();
    let points = if fixed { 1 } else { cfg.points.max(1) };
    let mut jobs = Vec::new();
    for i in 0..points {
        let seed = cfg.seed.wrapping_add(i as u64);
        let p =
            PointSampler::new(seed).complete_point(cfg.n, cfg.q.as_ref(), cfg.s.as_deref(), certify, POINT_RETRIES)?;
        for &c in &cfg.checks {
            jobs.push((c, p.clone(), seed));
        }
    }
    jobs.par_iter()
        .map(|(c, p, seed)| run_check(*c, p, cfg.order, *seed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenfunctions::fb_branching_with;
    use crate::operators::build_toda_a;
    use crate::scalars::{int, rat};

    fn point(s: &[i64], order: u32) -> ParamPoint {
        ParamPoint::new(rat(3, 7), s.iter().map(|&x| int(x)).collect(), order).unwrap()
    }

    #[test]
    fn eigen_rank_one_passes() {
        let r = verify_eigen(ConeKind::TypeA, &point(&[2], 3), 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.trusted_degree, Some(3));
    }

    #[test]
    fn eigen_perturbation_is_located() {
        let p = point(&[2, 5, 11], 3);
        let mut f = fa_direct(p.q(), p.s(), 3).unwrap();
        let m = ConeVariant::type_a(3).monomial(vec![-1, 0, 1]).unwrap();
        let c = f.coefficient(&m) + int(1);
        f.set_coefficient(m.clone(), c).unwrap();
        let r = verify_eigen_series("eigen-a", p.to_json(), &build_toda_a(&p), &f).unwrap();
        assert!(!r.pass);
        // the diagonal sees the change at m itself; nothing of lower degree moved
        assert_eq!(r.first_failure.unwrap().index, vec![-1, 0, 1]);
    }

    #[test]
    fn branching_with_negated_coefficient_fails_at_prefactor_degree() {
        let p = point(&[2, 5], 4);
        let (q, s) = (p.q().clone(), p.s().to_vec());
        let oracle = solve_eigen(&toda_b(&q, &s), 4).unwrap();
        let target = ThetaVector(vec![0, 1]);
        let mut ev = Evaluator::new(&q, &s);
        let bad = fb_branching_with(&q, &s, 4, |t| {
            let e = ev.e_branch(t)?;
            Ok(if *t == target { -e } else { e })
        })
        .unwrap();
        let r = compare_series("branching", p.to_json(), &bad, &oracle, 4);
        let fail = r.first_failure.unwrap();
        let deg = ConeVariant::type_b(2).monomial(fail.index.clone()).unwrap().degree();
        assert_eq!(deg, 1);
        assert_eq!(fail.index, vec![0, -1]);
    }

    #[test]
    fn partition_rank_two_telescopes() {
        let a = [rat(-4, 9)];
        let s = [rat(3, 5), int(7)];
        let sides = partition_identity_sides(&a, &s).unwrap();
        assert_eq!(sides.lhs, a[0]);
        assert!(sides.holds());
        let ones = [int(1), int(1), int(1)];
        let s4 = [int(2), rat(-3, 4), int(5), rat(7, 3)];
        assert_eq!(partition_identity_sides(&ones, &s4).unwrap().rhs(), int(1));
    }

    #[test]
    fn partition_coincidence_rejected() {
        assert!(matches!(
            partition_identity_sides(&[int(2)], &[int(3), int(3)]),
            Err(Error::Coincidence(_))
        ));
    }

    #[test]
    fn type_b_rank_one_and_trivial_q() {
        let sides = type_b_identity_sides(&[rat(5, 3)], &[rat(-2, 7)]).unwrap();
        assert!(sides.holds());
        let s = [int(2), int(3), rat(5, 7)];
        let ones = [int(1), int(1), int(1)];
        let sides = type_b_identity_sides(&ones, &s).unwrap();
        assert!(sides.lhs.is_zero());
        assert!(sides.rhs_terms.iter().all(Zero::is_zero));
        assert!(matches!(
            type_b_identity_sides(&ones[..2], &[int(2), rat(1, 2)]),
            Err(Error::Coincidence(_))
        ));
    }

    #[test]
    fn dn_relation_small() {
        let p = point(&[2, 5, 11], 3);
        assert!(verify_dn_relation(&ThetaVector(vec![0, 0]), &p).unwrap().pass);
        assert!(verify_dn_relation(&ThetaVector(vec![2, 1]), &p).unwrap().pass);
        let p2 = point(&[2, 5], 3);
        assert!(verify_dn_relation(&ThetaVector(vec![1]), &p2).unwrap().pass);
        let sides = dn_relation_sides(&ThetaVector(vec![0, 0]), p.q(), p.s()).unwrap();
        assert_eq!(sides.rhs_terms, vec![int(1)]);
    }

    #[test]
    fn e_recursion_small() {
        let p = point(&[2], 3);
        assert!(verify_e_recursion(&ThetaVector(vec![1]), &p).unwrap().pass);
        let p2 = point(&[2, 5], 3);
        assert!(verify_e_recursion(&ThetaVector(vec![1, 0]), &p2).unwrap().pass);
        assert!(verify_e_recursion_box(&p2, 3).unwrap().pass);
    }

    #[test]
    fn contiguity_and_symmetry_small() {
        let p = point(&[2, 5], 3);
        assert!(verify_contiguity(&p, 3).unwrap().pass);
        assert!(verify_symmetry(&p, 3).unwrap().pass);
        let p1 = point(&[2], 3);
        assert!(verify_contiguity(&p1, 3).unwrap().pass);
        assert!(verify_symmetry(&p1, 3).unwrap().pass);
    }

    #[test]
    fn contiguity_constant_term_comes_from_last_summand() {
        let p = point(&[2, 5, 11], 2);
        let (lhs, terms) = contiguity_sides(p.q(), p.s(), 2).unwrap();
        assert_eq!(lhs.constant_term(), int(1));
        assert_eq!(terms[2].constant_term(), int(1));
        assert!(terms[..2].iter().all(|t| t.constant_term().is_zero()));
    }

    #[test]
    fn suite_names_roundtrip() {
        for c in Check::ALL {
            assert_eq!(Check::from_name(c.name()), Some(c));
        }
        assert_eq!(Check::from_name("nope"), None);
    }
}
