//! Finite-dimensional `gl_n`-modules from highest weights, with JSON output.

use wittcat::glrep::{exterior_power, highest_weight_module, weyl_dimension, GlRep};
use wittcat::kernel::Scalar;

fn main() -> wittcat::Result<()> {
    let lam: Vec<Scalar> = [2, 1, 0].iter().map(|&x| Scalar::int(x)).collect();
    let v = highest_weight_module(&lam)?;
    println!("V(2,1,0): dim {} (Weyl formula {})", v.dim(), weyl_dimension(&lam)?);
    for (w, basis) in v.weight_spaces() {
        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        println!("  weight ({}): multiplicity {}", w.join(","), basis.len());
    }

    let l2 = exterior_power(3, 2)?;
    println!("wedge^2 of the natural module, E_12 = \n{}", l2.e(0, 1));

    let text = serde_json::to_string(&l2.to_json()).expect("serializable");
    let back = GlRep::from_json(&serde_json::from_str(&text).expect("valid json"))?;
    println!("JSON round trip equal: {}", back == l2);
    Ok(())
}
