//! The tensor modules `T(P, V)` through `phi`, and the complex `pi`.

use wittcat::cli::parse_expr;
use wittcat::glrep::exterior_power;
use wittcat::kernel::{MIndex, Scalar};
use wittcat::shenlarsson::phi::ShowPhi;
use wittcat::shenlarsson::tensor::{pure, ShowTen};
use wittcat::shenlarsson::{phi, pi_map, TenVec, TensorModule};
use wittcat::weylmod::DModule;

fn main() -> wittcat::Result<()> {
    let x = parse_expr("t1^2*d2", Some(2))?.elem;
    println!("phi(t1^2*d2) = {}", ShowPhi(&phi(&x, 2)?));

    let p = DModule::laurent(vec![Scalar::param(0), Scalar::param(1)]);
    let tm = TensorModule::new(p.clone(), exterior_power(2, 1)?)?;
    let v = pure(&p.unit(), 0);
    println!("t1^2*d2 . t^mu (x) v1 = {}", ShowTen(&tm.apply(&x, &v)?));

    let w = TenVec::basis((MIndex::from_slice(&[1, 2]), 0));
    let once = pi_map(&p, 0, &w)?;
    println!("pi_0(t^(mu+(1,2)) (x) 1) = {}", ShowTen(&once));
    println!("pi_1 pi_0 = {}", ShowTen(&pi_map(&p, 1, &once)?));
    Ok(())
}
