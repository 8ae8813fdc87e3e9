//! Shifting x_N by q against the sum over lowered parameters.
//!
//!     cargo run --example contiguity

use qtoda::scalars::{int, rat, ParamPoint};
use qtoda::series::TruncatedSeries;
use qtoda::verification::{contiguity_coefficient, contiguity_sides};

fn main() -> qtoda::error::Result<()> {
    let order = 4;
    let p = ParamPoint::new(rat(2, 9), vec![int(3), rat(5, 2), int(-7)], order)?;
    let (q, s) = (p.q(), p.s());
    for k in 0..s.len() {
        println!("coefficient k={}: {}", k + 1, contiguity_coefficient(q, s, k)?);
    }
    let (lhs, terms) = contiguity_sides(q, s, order)?;
    let rhs = terms
        .iter()
        .try_fold(TruncatedSeries::zero(lhs.variant(), order), |acc, t| acc.add(t))?;
    println!("lhs has {} terms; sides agree: {}", lhs.len(), lhs == rhs);
    Ok(())
}
