//! Writing elements as sums of `X-monomial * h^r * d^s`.

use wittcat::cli::parse_expr;
use wittcat::pbw::decompose::{decompose_BH, recombine, ShowBH};
use wittcat::pbw::ShowU;

fn main() -> wittcat::Result<()> {
    for (src, n) in [("t1^2*d1", 1), ("t1^3*d1", 1), ("t1*d2", 2), ("t1*t2*d1", 2)] {
        let u = parse_expr(src, Some(n))?.elem;
        let dec = decompose_BH(&u, 3)?;
        println!("{} = {}", src, ShowBH(&dec));
        assert_eq!(recombine(&dec)?, u, "{}", ShowU(&u));
    }
    Ok(())
}
