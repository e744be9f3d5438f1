//! Deciding whether two weights lie in the same block.

use wittcat::cuspidal::separation::{scalars_collide, z_eigenvalues};
use wittcat::cuspidal::separation_check;
use wittcat::kernel::Scalar;

fn main() {
    let a = Scalar::param(0);
    let gamma = vec![a.clone(), a.clone()];
    let lambda = vec![&a + &Scalar::ratio(1, 2), a.clone()];
    let r = separation_check(&gamma, &lambda);
    println!("(a1, a1) vs (a1 + 1/2, a1): disjoint {}, separating index {:?}", r.disjoint, r.separating_index);

    let shifted = vec![&a + &Scalar::int(2), &a - &Scalar::int(1)];
    let r = separation_check(&gamma, &shifted);
    println!("(a1, a1) vs (a1 + 2, a1 - 1): collision {:?}", r.collision);

    let (x, y) = (Scalar::zero(), Scalar::one());
    for s in [&x, &y, &Scalar::ratio(1, 2)] {
        let (e1, e2) = z_eigenvalues(s);
        println!("eigenvalue pair at {}: ({}, {})", s, e1, e2);
    }
    println!("0 and 1 collide: {}", scalars_collide(&x, &y));
}
