//! Tabulate a few Mittag-Leffler functions on the negative real axis.
//!
//! `cargo run --example mittag_leffler`

use fracvoigt::special::{ml_eval, MlParams};

fn main() -> fracvoigt::Result<()> {
    let params = [(0.25, 1.0), (0.5, 1.0), (0.5, 0.5), (0.9, 1.0), (1.0, 1.0)];
    print!("{:>8}", "z");
    for (a, b) in params {
        print!("  {:>12}", format!("E_({a},{b})"));
    }
    println!();
    for z in [0.0, -0.5, -1.0, -2.0, -5.0, -10.0, -20.0, -50.0, -100.0] {
        print!("{z:>8}");
        for (a, b) in params {
            let v = ml_eval(MlParams::new(a, b)?, z)?;
            print!("  {v:>12.6e}");
        }
        println!();
    }
    Ok(())
}
