//! Running the verification suite from a TOML configuration.

use wittcat::cli::{verify_all, Config};

fn main() -> wittcat::Result<()> {
    let cfg = Config::from_toml(
        r#"
        n = 2
        degree = 3
        radius = 2
        seed = 11
        alpha = ["a1", "a2 + 1/3"]
        "#,
    )?;
    let report = verify_all(&cfg);
    print!("{}", report.render());
    println!("all checks pass: {}", report.ok());
    Ok(())
}
