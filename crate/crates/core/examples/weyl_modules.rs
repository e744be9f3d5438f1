//! The twisted polynomial modules `A^a` and the Laurent modules `P(mu)`.

use wittcat::cli::{parse_dvec, parse_weyl};
use wittcat::kernel::Scalar;
use wittcat::weylmod::{is_simple_witness, DModule, ShowDVec};

fn main() -> wittcat::Result<()> {
    let a = DModule::twisted(vec![Scalar::one()]);
    let v = parse_dvec("t1^3", 1)?;
    let x = parse_weyl("d1^-1", 1)?;
    let w = a.apply_expr(&x, &v)?;
    println!("on A^1: d1^-1 t1^3 = {}", ShowDVec(&a, &w));
    println!("        d1 of that = {}", ShowDVec(&a, &a.apply_expr(&parse_weyl("d1", 1)?, &w)?));

    let p = DModule::laurent(vec![Scalar::param(0), Scalar::ratio(1, 2)]);
    let v = parse_dvec("t1^-1*t2", 2)?;
    let x = parse_weyl("d1*t1 - t1*d1", 2)?;
    println!("on P(a1, 1/2): [d1, t1] t^(mu+(-1,1)) = {}", ShowDVec(&p, &p.apply_expr(&x, &v)?));

    println!("P(0, 1/2): {:?}", is_simple_witness(&[Scalar::zero(), Scalar::ratio(1, 2)]));
    Ok(())
}
