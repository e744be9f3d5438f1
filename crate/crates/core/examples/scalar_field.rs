//! Exact arithmetic in Q(a1, a2).

use wittcat::kernel::parse::parse_scalar;
use wittcat::kernel::Scalar;

fn main() -> wittcat::Result<()> {
    let x = parse_scalar("(a1^2 - 1)/(a1 - 1)", None)?;
    println!("(a1^2 - 1)/(a1 - 1) = {}", x);

    let y = parse_scalar("1/(a1 + a2) - 1/(a1 - a2)", None)?;
    println!("1/(a1 + a2) - 1/(a1 - a2) = {}", y);

    let half = Scalar::ratio(1, 2);
    println!("y at a2 = 1/2: {}", y.substitute(1, &half)?);
    println!("y * (a1^2 - a2^2) = {}", &y * &parse_scalar("a1^2 - a2^2", None)?);
    Ok(())
}
