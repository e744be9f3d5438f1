//! Brackets of polynomial vector fields and the generating set of `W_n`.

use wittcat::cli::parse_witt;
use wittcat::kernel::MIndex;
use wittcat::witt::{self, express_generator, ShowWitt};

fn main() -> wittcat::Result<()> {
    let (_, x) = parse_witt("t1^2*d2", Some(2))?;
    let (_, y) = parse_witt("t2*d1 + 3*d2", Some(2))?;
    let b = witt::bracket(&x, &y)?;
    println!("[{}, {}] = {}", ShowWitt(&x), ShowWitt(&y), ShowWitt(&b));

    let e = witt::euler(2);
    println!("[E, t1^2*d2] = {}", ShowWitt(&witt::bracket(&e, &x)?));

    let tree = express_generator(&MIndex::from_slice(&[3, 1]), 0)?;
    println!("t1^3*t2*d1 = {}", tree);
    println!("check: {}", ShowWitt(&tree.eval()));
    Ok(())
}
