//! Solve the nonlinear model with sigma(eps) = 1/(1+eps) for several orders
//! and report the residual of each fixed point.

use fracvoigt::nonlinear::{residual, solve_nonlinear, ConstitutiveLaw};
use fracvoigt::{Grid, SolverConfig, VoigtParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let law = ConstitutiveLaw::expression("1/(1+eps)")?;
    let grid = Grid::new(1.0, 256)?;
    for alpha in [0.3, 0.5, 0.8, 1.0] {
        let params = VoigtParams::new(1.0, 2.0, alpha)?;
        let r = solve_nonlinear(&params, &law, grid, &SolverConfig::default())?;
        println!(
            "alpha={alpha}: eps(1)={:.8}  sup={:.8}  iterations={}  residual={:.2e}",
            r.solution.values()[grid.n()],
            r.solution.sup_norm(),
            r.iterations,
            residual(&params, &law, &r.solution)?,
        );
    }
    Ok(())
}
