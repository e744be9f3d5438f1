//! The `z` elements and the generators `X_{m,j}` of the centralizer of the
//! `d_i` and `h_i`, with their leading shape.

use wittcat::centralizer::{h_monomial_basis, make_x, make_z, ZKind};
use wittcat::kernel::MIndex;
use wittcat::pbw::{centralizes, ShowU};

fn main() -> wittcat::Result<()> {
    for kind in [ZKind::Pair { i: 0, j: 1 }, ZKind::Triple { i: 0, l: 1, j: 0 }, ZKind::Cubic { i: 1 }] {
        let z = make_z(2, kind)?;
        println!("{} = {}", kind, ShowU(&z.elem));
    }

    for (m, j) in [([2, 1], 0), ([3, 0], 0)] {
        let x = make_x(&MIndex::from_slice(&m), j)?;
        println!();
        println!("X_{{{},{}}} via {:?}", x.m, j + 1, x.trace);
        println!("  centralizes: {}", centralizes(&x.elem, 2).is_ok());
        println!("  deg g_r: {:?}", x.shape.g_degrees);
        if !x.shape.is_exact() {
            println!("  below |m| - |r| at r = {}", x.shape.deficient.join(", "));
        }
    }

    let b = h_monomial_basis(2, 3)?;
    println!();
    println!("ordered X-monomials by degree (n = 2): {:?}, rank {}", b.count_by_degree(), b.rank);
    Ok(())
}
