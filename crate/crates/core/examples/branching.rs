//! Type B eigenfunction from the branching sum, compared with the order-by-order
//! solve of the type B operator.
//!
//!     cargo run --example branching -- 2 4

use qtoda::eigenfunctions::{f_b_branching, solve_eigen};
use qtoda::operators::build_toda_b;
use qtoda::scalars::PointSampler;
use qtoda::verification::POINT_RETRIES;

fn main() -> qtoda::error::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u32>().expect("integer argument"));
    let n = args.next().unwrap_or(2) as usize;
    let order = args.next().unwrap_or(4);

    let p = PointSampler::new(7).generic_point(n, order, POINT_RETRIES)?;
    println!("point: {p}");
    let branched = f_b_branching(&p, order)?;
    let solved = solve_eigen(&build_toda_b(&p), order)?;

    println!("{} terms through degree {order}", branched.len());
    for (m, c) in branched.iter().filter(|(m, _)| m.degree() <= 2) {
        println!("  deg {} {m}: {c}", m.degree());
    }
    match branched.first_difference(&solved, order) {
        None => println!("branching sum == eigen-solve"),
        Some((m, a, b)) => println!("differ at {m}: {a} vs {b}"),
    }
    Ok(())
}
