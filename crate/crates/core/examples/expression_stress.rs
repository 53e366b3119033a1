//! Parse stress histories from text, show how they were read, and feed them
//! to the strain solver. Invalid inputs report the offending offset.

use fracvoigt::expr::parse;
use fracvoigt::voigt::linear_strain;
use fracvoigt::{Grid, Signal, VoigtParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = VoigtParams::new(1.0, 2.0, 0.5)?;
    let grid = Grid::new(2.0, 400)?;

    for src in ["t", "t^2/2", "1 - exp(-3*t)", "sin(2*t)^2", "-t^2 + 2*t"] {
        let e = parse(src, "t")?;
        let stress = Signal::try_from_fn(grid, |t| {
            e.eval(t)
                .map_err(|err| Box::<dyn std::error::Error>::from(err.to_string()))
        })?;
        let eps = linear_strain(&params, &stress)?;
        println!(
            "{src:<16} parsed as {:<28} eps(2) = {:.8}",
            e.to_string(),
            eps.values()[grid.n()]
        );
    }

    for bad in ["2t", "sin(t", "t +* 1", "x + 1"] {
        let err = parse(bad, "t").unwrap_err();
        println!("{bad:<8} -> error at offset {}: {err}", err.offset());
    }
    Ok(())
}
