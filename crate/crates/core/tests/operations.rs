//! Worked examples for each public operation, through the public API.

use num_traits::Zero;

use qtoda::coefficients::{c_toda, d_toda, e_branch, ThetaMatrix, ThetaVector};
use qtoda::eigenfunctions::{f_a_direct, f_a_recursive, f_b_branching, solve_eigen};
use qtoda::operators::build_toda_b;
use qtoda::scalars::{int, qpoch, rat, ParamPoint, Rational};
use qtoda::series::{ConeKind, ConeVariant, TruncatedSeries};
use qtoda::verification::{
    partition_identity_sides, type_b_identity_sides, verify_branching, verify_contiguity, verify_dn_relation,
    verify_e_recursion, verify_eigen, verify_symmetry,
};

fn point(s: &[i64], order: u32) -> ParamPoint {
    ParamPoint::new(rat(3, 7), s.iter().map(|&x| int(x)).collect(), order).unwrap()
}

fn one() -> Rational {
    int(1)
}

#[test]
fn rank_two_coefficients_closed_form() {
    let p = point(&[2, 5], 4);
    let (q, s) = (p.q(), p.s());
    for t in 0..=4u32 {
        let expected = qtoda::scalars::qpow(q, t as i64) / (qpoch(q, q, t) * qpoch(&(q * &s[1] / &s[0]), q, t));
        let mut m = ThetaMatrix::zero(2);
        m.set(0, 1, t);
        assert_eq!(c_toda(&m, &p).unwrap(), expected);
        assert_eq!(d_toda(&ThetaVector(vec![t]), &p).unwrap(), expected);
        assert_eq!(
            f_a_direct(&p, 4).unwrap().coefficient_at(&[-(t as i64), t as i64]),
            expected
        );
    }
}

#[test]
fn zero_index_coefficients_are_one() {
    let p = point(&[2, 5, 11], 2);
    assert_eq!(c_toda(&ThetaMatrix::zero(3), &p).unwrap(), one());
    assert_eq!(d_toda(&ThetaVector::zero(2), &p).unwrap(), one());
    assert_eq!(e_branch(&ThetaVector::zero(3), &p).unwrap(), one());
}

#[test]
fn rank_one_branching_coefficient() {
    let p = point(&[2], 3);
    let (q, s) = (p.q().clone(), p.s()[0].clone());
    let e1 = e_branch(&ThetaVector(vec![1]), &p).unwrap();
    assert_eq!(e1, &q / ((one() - &q) * (one() - &q / (&s * &s))));
    let closed = &q * &s * &s / ((&q - one()) * (&q - &s * &s));
    assert_eq!(f_b_branching(&p, 3).unwrap().coefficient_at(&[-1]), closed);
    assert_eq!(solve_eigen(&build_toda_b(&p), 3).unwrap().coefficient_at(&[-1]), closed);
}

#[test]
fn recursive_matches_direct_at_rank_two() {
    let p = point(&[2, 5], 5);
    assert_eq!(f_a_recursive(&p, 5).unwrap(), f_a_direct(&p, 5).unwrap());
}

#[test]
fn type_b_prefactor_monomial() {
    let cone = ConeVariant::type_b(2);
    let g = cone.monomial(vec![-1, 0]).unwrap();
    assert_eq!(g.degree(), 2);
    let f = TruncatedSeries::one(cone, 2).mul_monomial(&g).unwrap();
    assert_eq!(f, TruncatedSeries::monomial(cone, 2, g.clone(), one()));
    assert!(TruncatedSeries::one(cone, 1).mul_monomial(&g).unwrap().is_zero());
    assert!(cone.cone_coords(&[-1, -1, -1]).is_err());
    assert_eq!(
        ConeVariant::type_b(3).cone_coords(&[-1, -1, -1]).unwrap(),
        vec![1, 2, 3]
    );
}

#[test]
fn verification_examples_pass() {
    let p1 = point(&[2], 4);
    let p2 = point(&[2, 5], 4);
    let p3 = point(&[2, 5, 11], 4);
    assert!(verify_eigen(ConeKind::TypeA, &p1, 4).unwrap().pass);
    assert!(verify_eigen(ConeKind::TypeA, &p3, 4).unwrap().pass);
    assert!(verify_branching(&p1, 3).unwrap().pass);
    assert!(verify_branching(&p2, 4).unwrap().pass);
    assert!(verify_contiguity(&p2, 3).unwrap().pass);
    assert!(verify_contiguity(&p3, 4).unwrap().pass);
    assert!(verify_symmetry(&p1, 4).unwrap().pass);
    assert!(verify_symmetry(&p2, 4).unwrap().pass);
    assert!(verify_symmetry(&p3, 3).unwrap().pass);
    assert!(verify_dn_relation(&ThetaVector(vec![1]), &p2).unwrap().pass);
    assert!(verify_dn_relation(&ThetaVector(vec![0, 0]), &p3).unwrap().pass);
    assert!(verify_dn_relation(&ThetaVector(vec![2, 1]), &p3).unwrap().pass);
    assert!(verify_e_recursion(&ThetaVector(vec![1]), &p1).unwrap().pass);
    assert!(verify_e_recursion(&ThetaVector(vec![1, 0]), &p2).unwrap().pass);
    assert!(verify_e_recursion(&ThetaVector(vec![3, 1, 2]), &p3).unwrap().pass);
}

#[test]
fn scalar_identity_degenerate_cases() {
    let s = [int(2), rat(-7, 4), int(9)];
    let sides = partition_identity_sides(&[one(), one()], &s).unwrap();
    assert_eq!((sides.lhs.clone(), sides.rhs()), (one(), one()));
    let sides = type_b_identity_sides(&[one(), one(), one()], &s).unwrap();
    assert!(sides.lhs.is_zero());
    assert!(sides.rhs_terms.iter().all(Zero::is_zero));
}
