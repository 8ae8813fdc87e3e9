//! The type A eigenfunction built three independent ways at one point.
//!
//!     cargo run --example type_a

use qtoda::eigenfunctions::{f_a_direct, f_a_recursive, solve_eigen};
use qtoda::operators::build_toda_a;
use qtoda::scalars::{int, rat, ParamPoint};
use qtoda::series::ConeKind;
use qtoda::verification::verify_eigen;

fn main() -> qtoda::error::Result<()> {
    let order = 3;
    let p = ParamPoint::new(rat(3, 7), vec![int(2), int(5), int(11)], order)?;
    println!("point: {p}");

    let direct = f_a_direct(&p, order)?;
    let recursive = f_a_recursive(&p, order)?;
    let solved = solve_eigen(&build_toda_a(&p), order)?;

    for (m, c) in direct.iter() {
        println!("  {m}: {c}");
    }
    println!("recursive == direct: {}", recursive == direct);
    println!("eigen-solve == direct: {}", solved == direct);

    let report = verify_eigen(ConeKind::TypeA, &p, order)?;
    println!(
        "residual vanishes through degree {:?}: {}",
        report.trusted_degree, report.pass
    );
    Ok(())
}
