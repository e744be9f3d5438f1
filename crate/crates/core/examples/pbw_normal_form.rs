//! Normal forms in the enveloping algebra localized at the `d_i`.

use wittcat::cli::parse_expr;
use wittcat::pbw::{self, ShowU};

fn main() -> wittcat::Result<()> {
    for src in ["d1*(t1*d1)", "(t1^2*d1)*(t1*d1)", "d1^-1*(t1*d1)*d1", "[d1^-1, t1^2*d1]"] {
        let e = parse_expr(src, Some(1))?;
        println!("{:<22} = {}", src, ShowU(&e.elem));
    }
    let x = parse_expr("t1*d2", Some(2))?.elem;
    let y = parse_expr("t2*d1", Some(2))?.elem;
    println!("[t1*d2, t2*d1] = {}", ShowU(&pbw::commutator(&x, &y)));
    Ok(())
}
