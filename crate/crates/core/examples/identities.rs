//! The scalar identities behind the branching formula, at explicit rationals.
//!
//!     cargo run --example identities

use qtoda::coefficients::ThetaVector;
use qtoda::scalars::{int, rat};
use qtoda::verification::{dn_relation_sides, e_recursion_sides, partition_identity_sides, type_b_identity_sides};

fn main() -> qtoda::error::Result<()> {
    let q = rat(3, 7);
    let s = [int(2), rat(-5, 3), int(11), rat(13, 4)];

    let a = [rat(1, 2), int(3), rat(-2, 5)];
    let sides = partition_identity_sides(&a, &s)?;
    println!(
        "partition:  {} = {} ({} terms)",
        sides.lhs,
        sides.rhs(),
        sides.rhs_terms.len()
    );

    let big_q = [rat(4, 3), int(-2), rat(1, 5), int(6)];
    let sides = type_b_identity_sides(&big_q, &s)?;
    println!("type B:     {} = {}", sides.lhs, sides.rhs());

    let theta = ThetaVector(vec![2, 0, 1]);
    let sides = dn_relation_sides(&theta, &q, &s)?;
    println!("d_N {theta}: {} = {}", sides.lhs, sides.rhs());

    let theta = ThetaVector(vec![1, 2, 0, 1]);
    let sides = e_recursion_sides(&theta, &q, &s)?;
    println!("e {theta}: {} = {}", sides.lhs, sides.rhs());
    Ok(())
}
