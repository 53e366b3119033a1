//! Convergence history of the linear fixed-point iteration, and the first
//! few iterates as truncated series.

use fracvoigt::voigt::{linear_strain, picard_linear, LinearIterates};
use fracvoigt::{Grid, Signal, SolverConfig, VoigtParams};

fn main() -> fracvoigt::Result<()> {
    let params = VoigtParams::new(1.0, 2.0, 0.5)?;
    let stress = Signal::from_fn(Grid::new(1.0, 256)?, |_| 1.0)?;
    let exact = linear_strain(&params, &stress)?;

    for (m, it) in LinearIterates::new(&params, &stress)?.take(6).enumerate() {
        let it = it?;
        println!(
            "eps_{m}: eps(1) = {:.10}, distance {:.3e}",
            it.values()[256],
            it.sup_distance(&exact)?
        );
    }

    let r = picard_linear(&params, &stress, &SolverConfig::default())?;
    println!(
        "\nconverged={} after {} iterations",
        r.converged, r.iterations
    );
    for (k, d) in r.diff_history.iter().enumerate().step_by(3) {
        println!("  iteration {:>2}: |eps_m - eps_(m-1)| = {d:.3e}", k + 1);
    }
    Ok(())
}
