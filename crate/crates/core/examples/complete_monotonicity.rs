//! Sample x -> E_{a,b}(-x) and its finite differences to see where complete
//! monotonicity holds (0 < a <= 1, b >= a) and where it fails (a > 1).

use fracvoigt::special::{ml_deriv_sign_probe, MlParams};

fn main() -> fracvoigt::Result<()> {
    for (a, b) in [(0.5, 1.0), (0.9, 0.9), (1.0, 2.0), (1.5, 1.0), (1.9, 1.0)] {
        let p = MlParams::new(a, b)?;
        let mut signs_ok = true;
        for k in 1..=400 {
            let x = 0.05 * k as f64;
            for n in 1..=3 {
                let d = ml_deriv_sign_probe(p, x, n, 1e-3)?;
                let expected = if n % 2 == 1 { -1.0 } else { 1.0 };
                if d * expected < -1e-9 {
                    signs_ok = false;
                }
            }
        }
        println!(
            "E_({a},{b}): alternating signs up to order 3 on (0, 20]: {signs_ok} (completely monotone by theory: {})",
            p.is_completely_monotone()
        );
    }
    Ok(())
}
