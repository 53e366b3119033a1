//! Creep function k(t) of the fractional Voigt element for several orders,
//! printed as CSV columns. Each column saturates at E^-alpha.
//!
//! `cargo run --example creep_curve`

use fracvoigt::voigt::creep_function;
use fracvoigt::VoigtParams;

fn main() -> fracvoigt::Result<()> {
    let orders = [0.25, 0.5, 0.75, 1.0];
    let models = orders
        .iter()
        .map(|&a| VoigtParams::new(1.0, 2.0, a))
        .collect::<fracvoigt::Result<Vec<_>>>()?;

    print!("t");
    for a in orders {
        print!(",alpha={a}");
    }
    println!();
    for k in 0..=20 {
        let t = 0.25 * k as f64;
        print!("{t}");
        for m in &models {
            print!(",{:.8}", creep_function(m, t)?);
        }
        println!();
    }
    for (a, m) in orders.iter().zip(&models) {
        println!("# alpha={a}: limit {:.8}", m.creep_limit());
    }
    Ok(())
}
