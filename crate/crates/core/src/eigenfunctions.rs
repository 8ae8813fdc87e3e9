//! Constructions of the asymptotically free eigenfunctions.
//!
//! Type A is built three ways: the explicit matrix sum, the last-column
//! recursion down to rank 1, and the order-by-order eigen-solve. Type B is built
//! by the branching sum over shifted type A functions and, independently, by the
//! eigen-solve, which is the ground truth the branching sum is compared against.

use num_traits::Zero;
use rayon::prelude::*;

use crate::coefficients::{Evaluator, ThetaMatrix, ThetaVector};
use crate::error::{Error, Result};
use crate::operators::DifferenceOperator;
use crate::scalars::{qpow, ParamPoint, Rational};
use crate::series::{ConeMonomial, ConeVariant, TruncatedSeries};

/// `(q^{-theta_i} s_i)_i`; entries of `s` beyond `theta` are dropped.
pub fn shifted_parameters(q: &Rational, s: &[Rational], theta: &ThetaVector) -> Vec<Rational> {
    theta
        .0
        .iter()
        .zip(s)
        .map(|(&t, si)| qpow(q, -(t as i64)) * si)
        .collect()
}

/// Adds `scale * x^{prefactor} * inner` into `acc`, dropping terms above `acc`'s order.
fn accumulate(acc: &mut TruncatedSeries, inner: &TruncatedSeries, prefactor: &ConeMonomial, scale: &Rational) {
    for (m, c) in inner.iter() {
        acc.add_term(m.mul(prefactor), c * scale);
    }
}

/// Explicit type A sum over strictly upper triangular matrices, at raw parameters.
pub fn fa_direct(q: &Rational, s: &[Rational], order: u32) -> Result<TruncatedSeries> {
    let n = s.len();
    let cone = ConeVariant::type_a(n);
    let mut ev = Evaluator::new(q, s);
    let mut out = TruncatedSeries::zero(cone, order);
    for theta in ThetaMatrix::enumerate(n, order) {
        let c = ev.c_toda(&theta)?;
        out.add_term(cone.monomial(theta.exponents())?, c);
    }
    Ok(out)
}

/// Type A function via the last-column expansion
/// `sum_theta d(theta; s) prod_i (x_N/x_i)^{theta_i} f^{A_{N-2}}(x | q^{-theta} s)`.
pub fn fa_recursive(q: &Rational, s: &[Rational], order: u32) -> Result<TruncatedSeries> {
    let n = s.len();
    let cone = ConeVariant::type_a(n);
    if n == 1 {
        return Ok(TruncatedSeries::one(cone, order));
    }
    let mut ev = Evaluator::new(q, s);
    let mut out = TruncatedSeries::zero(cone, order);
    // x_N/x_i has degree N - i (1-based)
    let weight = |i: usize| (n - 1 - i) as u32;
    for theta in ThetaVector::enumerate_weighted(n - 1, weight, order) {
        let d = ev.d_toda(&theta)?;
        let w = theta.weighted(weight);
        let inner = fa_recursive(q, &shifted_parameters(q, &s[..n - 1], &theta), order - w)?.embed(cone)?;
        let mut e: Vec<i64> = theta.0.iter().map(|&t| -(t as i64)).collect();
        e.push(theta.0.iter().map(|&t| t as i64).sum());
        accumulate(&mut out, &inner, &cone.monomial(e)?, &d);
    }
    Ok(out)
}

/// Branching sum `sum_theta e(theta) prod_i x_i^{-theta_i} f^{A_{N-1}}(x | q^{-theta} s)`
/// with a caller-supplied coefficient function.
///
/// `x^{-theta}` has cone degree `sum_i (N + 1 - i) theta_i`, which bounds the
/// enumeration; each inner type A factor is built only to the remaining order.
pub fn fb_branching_with<F>(q: &Rational, s: &[Rational], order: u32, mut coeff: F) -> Result<TruncatedSeries>
where
    F: FnMut(&ThetaVector) -> Result<Rational>,
{
    let n = s.len();
    let cone = ConeVariant::type_b(n);
    let weight = |i: usize| (n - i) as u32;
    let mut weighted = Vec::new();
    for theta in ThetaVector::enumerate_weighted(n, weight, order) {
        let e = coeff(&theta)?;
        if !e.is_zero() {
            weighted.push((theta, e));
        }
    }
    let pieces: Vec<(ConeMonomial, Rational, TruncatedSeries)> = weighted
        .into_par_iter()
        .map(|(theta, e)| {
            let w = theta.weighted(weight);
            let inner = fa_direct(q, &shifted_parameters(q, s, &theta), order - w)?.embed(cone)?;
            let pre = cone.monomial(theta.0.iter().map(|&t| -(t as i64)).collect())?;
            Ok((pre, e, inner))
        })
        .collect::<Result<_>>()?;
    let mut out = TruncatedSeries::zero(cone, order);
    for (pre, e, inner) in &pieces {
        accumulate(&mut out, inner, pre, e);
    }
    Ok(out)
}

pub fn fb_branching(q: &Rational, s: &[Rational], order: u32) -> Result<TruncatedSeries> {
    let mut ev = Evaluator::new(q, s);
    fb_branching_with(q, s, order, |t| ev.e_branch(t))
}

/// `f^A((x_{N-i+1}^{-1})_i | (s_{N-i+1}^{-1})_i)` re-indexed onto the type A cone.
pub fn fa_inverted(q: &Rational, s: &[Rational], order: u32) -> Result<TruncatedSeries> {
    let n = s.len();
    let cone = ConeVariant::type_a(n);
    let flipped: Vec<Rational> = s.iter().rev().map(|x| x.recip()).collect();
    let g = fa_direct(q, &flipped, order)?;
    let mut out = TruncatedSeries::zero(cone, order);
    for (m, c) in g.iter() {
        let e: Vec<i64> = m.exponents().iter().rev().map(|x| -x).collect();
        out.add_term(cone.monomial(e)?, c.clone());
    }
    Ok(out)
}

/// Unique series with constant term 1 and `(op - eigenvalue) f = 0` through `order`.
///
/// Degree by degree, `c_m = -(raising contributions from degree d-1) / (diag(m) - eigenvalue)`.
/// Monomials within one degree are independent and solved in parallel.
pub fn solve_eigen(op: &DifferenceOperator, order: u32) -> Result<TruncatedSeries> {
    let cone = op.variant();
    let q = op.q();
    let raising: Vec<_> = op.raising_terms().collect();
    let mut f = TruncatedSeries::one(cone, order);
    for degree in 1..=order {
        let solved: Vec<(ConeMonomial, Rational)> = cone
            .monomials_of_degree(degree)
            .into_par_iter()
            .map(|m| {
                let mut acc = Rational::zero();
                for t in &raising {
                    let prev: Vec<i64> = m
                        .exponents()
                        .iter()
                        .zip(t.multiplier.exponents())
                        .map(|(a, b)| a - b)
                        .collect();
                    let Ok(prev) = cone.monomial(prev) else { continue };
                    let c = f.coefficient(&prev);
                    if c.is_zero() {
                        continue;
                    }
                    acc += &t.scalar * qpow(q, t.sign.as_i64() * prev.exponents()[t.axis]) * c;
                }
                let div = op.eigen_divisor(&m);
                if div.is_zero() {
                    return Err(Error::VanishingDenominator(format!("eigen divisor at {m}")));
                }
                Ok((m, -acc / div))
            })
            .collect::<Result<_>>()?;
        for (m, c) in solved {
            f.add_term(m, c);
        }
    }
    Ok(f)
}

/// Explicit type A eigenfunction through `order`.
pub fn f_a_direct(p: &ParamPoint, order: u32) -> Result<TruncatedSeries> {
    p.require(order)?;
    fa_direct(p.q(), p.s(), order)
}

/// Type A eigenfunction via the recursive last-column expansion.
pub fn f_a_recursive(p: &ParamPoint, order: u32) -> Result<TruncatedSeries> {
    p.require(order)?;
    fa_recursive(p.q(), p.s(), order)
}

/// Type B eigenfunction via the branching formula.
pub fn f_b_branching(p: &ParamPoint, order: u32) -> Result<TruncatedSeries> {
    p.require(order)?;
    fb_branching(p.q(), p.s(), order)
}

/// Type A eigenfunction computed at reversed inverted parameters and mapped back.
pub fn f_a_inverted(p: &ParamPoint, order: u32) -> Result<TruncatedSeries> {
    p.require(order)?;
    fa_inverted(p.q(), p.s(), order)
}
