//! Whittaker vectors in tensor modules over `A^1` and in `Q_1`.

use wittcat::centralizer::{make_z, ZKind};
use wittcat::glrep::exterior_power;
use wittcat::pbw::ShowU;
use wittcat::shenlarsson::{q1_whittaker_dimensions, theta_of, whittaker_space, WhSource};

fn main() -> wittcat::Result<()> {
    let wh = whittaker_space(2, &WhSource::Tensor(exterior_power(2, 1)?), 3)?.require_stable()?;
    println!("wh_1 T(A^1, natural): {:?}", wh.summary().basis);

    for k in 0..2 {
        let wh = whittaker_space(2, &WhSource::ImagePi(k), 2)?;
        println!("wh_1 im pi_{}: dim {} (stable: {})", k, wh.dim(), wh.stable());
    }

    let z = make_z(1, ZKind::Cubic { i: 0 })?;
    println!("Theta(z_1) v_1 = {}", ShowU(&theta_of(&z.elem, 1)?));
    for s in q1_whittaker_dimensions(1, 4)? {
        println!("degree <= {}: {} Whittaker vectors, {} Y-monomials", s.degree, s.kernel_dim, s.y_monomials);
    }
    Ok(())
}
