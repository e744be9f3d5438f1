//! Weight modules induced from the centralizer: the action on a window of
//! weights, slice determinants, and the round trip back to the input.

use wittcat::cuspidal::{cuspidality_check, induce_g1, make_hrep, roundtrip, w_module, WinOp, WinVec};
use wittcat::glrep::exterior_power;
use wittcat::kernel::{MIndex, Scalar};

fn main() -> wittcat::Result<()> {
    let alpha = vec![Scalar::param(0), Scalar::param(1)];
    let rho = make_hrep(exterior_power(2, 1)?)?;
    let win = induce_g1(&rho, alpha.clone(), 1)?;

    let v = WinVec::basis((MIndex::zeros(2), 0));
    for ((m, b), c) in win.apply_op(WinOp::T(0, 1), &v)?.iter() {
        println!("t1*d2 on v_(0,0),1 has coefficient {} at v_{},{}", c, m, b + 1);
    }

    let rep = cuspidality_check(&win)?;
    println!("{} slice determinants, cuspidal on window: {}", rep.determinants.len(), rep.cuspidal_on_window);
    println!("excluded shifts: {}", rep.excluded.join("; "));

    let w = w_module(&[Scalar::one(), Scalar::zero()])?;
    let rt = roundtrip(&w, &alpha, 1, 2)?;
    for c in &rt.checks {
        println!("W(1,0) {}: {}", c.name, if c.pass { "ok" } else { "FAILED" });
    }
    Ok(())
}
