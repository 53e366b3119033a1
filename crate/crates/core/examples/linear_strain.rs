//! Strain under an oscillating load: closed-form convolution versus
//! successive approximations.

use fracvoigt::voigt::{linear_strain, picard_linear};
use fracvoigt::{Grid, Signal, SolverConfig, VoigtParams};

fn main() -> fracvoigt::Result<()> {
    let params = VoigtParams::new(1.0, 2.0, 0.6)?;
    let grid = Grid::new(10.0, 1000)?;
    let stress = Signal::from_fn(grid, |t| (1.5 * t).sin() + 0.5 * t / (1.0 + t))?;

    let direct = linear_strain(&params, &stress)?;
    let picard = picard_linear(&params, &stress, &SolverConfig::default())?;

    for i in (0..=grid.n()).step_by(50) {
        println!(
            "t={:>5.2}  sigma={:>8.4}  eps={:>8.5}  picard={:>8.5}",
            grid.point(i),
            stress.values()[i],
            direct.values()[i],
            picard.solution.values()[i],
        );
    }
    println!(
        "picard: {} iterations, sup distance to closed form {:.2e}",
        picard.iterations,
        picard.solution.sup_distance(&direct)?
    );
    Ok(())
}
