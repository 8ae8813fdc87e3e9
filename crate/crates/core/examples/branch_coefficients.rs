//! Table of branching coefficients e(theta) by weighted degree.
//!
//!     cargo run --example branch_coefficients

use qtoda::coefficients::branch_coefficient_table;
use qtoda::scalars::{rat, ParamPoint};

fn main() -> qtoda::error::Result<()> {
    let order = 4;
    let p = ParamPoint::new(rat(1, 3), vec![rat(5, 2), rat(-7, 3)], order)?;
    println!("point: {p}");
    for (theta, e) in branch_coefficient_table(&p, order)? {
        println!("  e{theta} = {e}");
    }
    Ok(())
}
