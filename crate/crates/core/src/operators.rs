//! The type A and type B q-Toda difference operators in monomial-times-shift
//! normal form, with scalars evaluated at a parameter point.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::{qpow, ParamPoint, Rational};
use crate::series::{ConeMonomial, ConeVariant, Sign, TruncatedSeries};

/// `scalar * multiplier * T_{q, x_axis}^{sign}`; the shift acts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTerm {
    pub scalar: Rational,
    pub multiplier: ConeMonomial,
    /// 0-based.
    pub axis: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceOperator {
    variant: ConeVariant,
    q: Rational,
    terms: Vec<OperatorTerm>,
    eigenvalue: Rational,
}

impl DifferenceOperator {
    /// Multipliers must lie in the cone with degree 0 or 1.
    pub fn new(variant: ConeVariant, q: Rational, terms: Vec<OperatorTerm>, eigenvalue: Rational) -> Result<Self> {
        for t in &terms {
            variant
                .cone_coords(t.multiplier.exponents())
                .map_err(Error::NotInCone)?;
            assert!(t.multiplier.degree() <= 1, "multiplier of degree > 1");
            assert!(t.axis < variant.n, "axis out of range");
        }
        Ok(Self {
            variant,
            q,
            terms,
            eigenvalue,
        })
    }

    pub fn variant(&self) -> ConeVariant {
        self.variant
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    pub fn eigenvalue(&self) -> &Rational {
        &self.eigenvalue
    }

    /// Degree-0 part acting on `x^m`: `sum_t scalar_t q^{sign_t m_{axis_t}}` over
    /// terms with trivial multiplier.
    pub fn diagonal(&self, m: &ConeMonomial) -> Rational {
        self.terms
            .iter()
            .filter(|t| t.multiplier.is_origin())
            .map(|t| &t.scalar * qpow(&self.q, t.sign.as_i64() * m.exponents()[t.axis]))
            .sum()
    }

    /// `diagonal(m) - eigenvalue`, the divisor of the order-by-order solve.
    pub fn eigen_divisor(&self, m: &ConeMonomial) -> Rational {
        self.diagonal(m) - &self.eigenvalue
    }

    /// `sum_t scalar_t * multiplier_t * shift(f, axis_t, sign_t)`, kept to `f.order()`.
    pub fn apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        if f.variant() != self.variant {
            return Err(Error::VariantMismatch {
                left: self.variant.to_string(),
                right: f.variant().to_string(),
            });
        }
        let mut out = TruncatedSeries::zero(self.variant, f.order());
        for t in &self.terms {
            let moved = f.shift(t.axis, t.sign, &self.q).mul_monomial(&t.multiplier)?;
            for (m, c) in moved.iter() {
                out.add_term(m.clone(), c * &t.scalar);
            }
        }
        Ok(out)
    }

    /// `apply(f) - eigenvalue * f`.
    pub fn residual(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.apply(f)?.sub(&f.scale(&self.eigenvalue))
    }
}

fn term(scalar: Rational, multiplier: ConeMonomial, axis: usize, sign: Sign) -> OperatorTerm {
    OperatorTerm {
        scalar,
        multiplier,
        axis,
        sign,
    }
}

/// `sum_{i<N} s_i (1 - x_{i+1}/x_i) T_{q,x_i} + s_N T_{q,x_N}` with eigenvalue `sum_i s_i`.
pub fn toda_a(q: &Rational, s: &[Rational]) -> DifferenceOperator {
    let n = s.len();
    let cone = ConeVariant::type_a(n);
    let mut terms = Vec::with_capacity(2 * n - 1);
    for i in 0..n - 1 {
        terms.push(term(s[i].clone(), cone.origin(), i, Sign::Plus));
        terms.push(term(-s[i].clone(), cone.ratio_generator(i), i, Sign::Plus));
    }
    terms.push(term(s[n - 1].clone(), cone.origin(), n - 1, Sign::Plus));
    let eigenvalue = s.iter().sum();
    DifferenceOperator::new(cone, q.clone(), terms, eigenvalue).expect("type A multipliers lie in the cone")
}

/// ```text
/// sum_{i<N} s_i (1 - x_{i+1}/x_i) T_{q,x_i} + s_N (1 - 1/x_N) T_{q,x_N}
///   + s_1^{-1} T_{q,x_1}^{-1} + sum_{i>=2} s_i^{-1} (1 - x_i/x_{i-1}) T_{q,x_i}^{-1}
/// ```
/// with eigenvalue `sum_i (s_i + s_i^{-1})`.
pub fn toda_b(q: &Rational, s: &[Rational]) -> DifferenceOperator {
    let n = s.len();
    let cone = ConeVariant::type_b(n);
    let mut terms = Vec::with_capacity(4 * n - 1);
    for i in 0..n - 1 {
        terms.push(term(s[i].clone(), cone.origin(), i, Sign::Plus));
        terms.push(term(-s[i].clone(), cone.ratio_generator(i), i, Sign::Plus));
    }
    let inv_last = cone.from_coords(&{
        let mut c = vec![0u32; n];
        c[n - 1] = 1;
        c
    });
    terms.push(term(s[n - 1].clone(), cone.origin(), n - 1, Sign::Plus));
    terms.push(term(-s[n - 1].clone(), inv_last, n - 1, Sign::Plus));
    terms.push(term(s[0].recip(), cone.origin(), 0, Sign::Minus));
    for i in 1..n {
        terms.push(term(s[i].recip(), cone.origin(), i, Sign::Minus));
        terms.push(term(-s[i].recip(), cone.ratio_generator(i - 1), i, Sign::Minus));
    }
    let eigenvalue = s.iter().map(|x| x + x.recip()).sum();
    DifferenceOperator::new(cone, q.clone(), terms, eigenvalue).expect("type B multipliers lie in the cone")
}

/// The type A operator at a certified point.
pub fn build_toda_a(p: &ParamPoint) -> DifferenceOperator {
    toda_a(p.q(), p.s())
}

/// The type B operator at a certified point.
pub fn build_toda_b(p: &ParamPoint) -> DifferenceOperator {
    toda_b(p.q(), p.s())
}

/// An operator with no terms and eigenvalue zero.
pub fn zero_operator(variant: ConeVariant, q: &Rational) -> DifferenceOperator {
    DifferenceOperator {
        variant,
        q: q.clone(),
        terms: Vec::new(),
        eigenvalue: Rational::zero(),
    }
}

impl DifferenceOperator {
    /// Terms whose multiplier has degree 1.
    pub fn raising_terms(&self) -> impl Iterator<Item = &OperatorTerm> {
        self.terms.iter().filter(|t| !t.multiplier.is_origin())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    fn point(s: &[i64]) -> ParamPoint {
        ParamPoint::new(rat(3, 7), s.iter().map(|&x| int(x)).collect(), 4).unwrap()
    }

    #[test]
    fn term_counts() {
        let s = [2, 5, 11, 13, 17];
        for n in 1..=5 {
            assert_eq!(build_toda_a(&point(&s[..n])).terms().len(), 2 * n - 1);
        }
        for n in 1..=4 {
            let op = build_toda_b(&point(&s[..n]));
            assert_eq!(op.terms().len(), 4 * n - 1);
            assert!(op.terms().iter().all(|t| t.multiplier.degree() <= 1));
        }
    }

    #[test]
    fn rank_one_operators() {
        let p = point(&[2]);
        let a = build_toda_a(&p);
        assert_eq!(a.terms().len(), 1);
        assert_eq!(a.terms()[0].scalar, int(2));
        let b = build_toda_b(&p);
        let scalars: Vec<Rational> = b.terms().iter().map(|t| t.scalar.clone()).collect();
        assert_eq!(scalars, vec![int(2), int(-2), rat(1, 2)]);
        assert_eq!(b.terms()[1].multiplier.exponents(), &[-1]);
        assert_eq!(b.terms()[2].sign, Sign::Minus);
        assert_eq!(*b.eigenvalue(), rat(5, 2));
    }

    #[test]
    fn rank_two_type_a_terms() {
        let p = point(&[2, 5]);
        let a = build_toda_a(&p);
        let t = a.terms();
        assert_eq!((t[0].scalar.clone(), t[0].axis), (int(2), 0));
        assert_eq!(
            (t[1].scalar.clone(), t[1].multiplier.exponents()),
            (int(-2), &[-1, 1][..])
        );
        assert_eq!((t[2].scalar.clone(), t[2].axis), (int(5), 1));
        assert_eq!(*a.eigenvalue(), int(7));
    }

    #[test]
    fn apply_to_constant() {
        let p = point(&[2, 5, 11]);
        let a = build_toda_a(&p);
        let cone = a.variant();
        let out = a.apply(&TruncatedSeries::one(cone, 3)).unwrap();
        let expected = TruncatedSeries::from_terms(
            cone,
            3,
            [
                (vec![0, 0, 0], int(18)),
                (vec![-1, 1, 0], int(-2)),
                (vec![0, -1, 1], int(-5)),
            ],
        )
        .unwrap();
        assert_eq!(out, expected);

        let p1 = point(&[2]);
        let b = build_toda_b(&p1);
        let out = b.apply(&TruncatedSeries::one(b.variant(), 2)).unwrap();
        let expected =
            TruncatedSeries::from_terms(b.variant(), 2, [(vec![0], rat(5, 2)), (vec![-1], int(-2))]).unwrap();
        assert_eq!(out, expected);

        let z = zero_operator(cone, p.q());
        assert!(z.apply(&TruncatedSeries::one(cone, 3)).unwrap().is_zero());
    }

    #[test]
    fn diagonal_matches_apply_on_monomials() {
        let p = point(&[2, 5, 11]);
        for op in [build_toda_a(&p), build_toda_b(&p)] {
            let cone = op.variant();
            for d in 0..=3 {
                for m in cone.monomials_of_degree(d) {
                    let f = TruncatedSeries::monomial(cone, 4, m.clone(), int(1));
                    let out = op.apply(&f).unwrap();
                    // degree-0 part lands on m itself
                    assert_eq!(out.coefficient(&m), op.diagonal(&m));
                    let expected: Rational = m
                        .exponents()
                        .iter()
                        .zip(p.s())
                        .map(|(&e, s)| match cone.kind {
                            crate::series::ConeKind::TypeA => s * qpow(p.q(), e),
                            crate::series::ConeKind::TypeB => s * qpow(p.q(), e) + s.recip() * qpow(p.q(), -e),
                        })
                        .sum();
                    assert_eq!(op.diagonal(&m), expected);
                    assert!(out.iter().all(|(u, _)| u.degree() <= m.degree() + 1));
                }
            }
        }
    }
}
