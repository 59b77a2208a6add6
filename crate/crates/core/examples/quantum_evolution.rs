// Evolve a quantum walk from the central node and write the time series
// as CSV to stdout.

use apollonian_walk::io::{self, SeriesLayout};
use apollonian_walk::prelude::*;

pub fn run_example() -> apollonian_walk::Result<()> {
    let net = Network::generate(3)?;
    let spectrum = eigendecompose(&net.laplacian())?;
    let source = net.default_source();
    let grid = TimeGrid::logarithmic(0.01, 100.0, 12)?;

    let series = evolve_series(&spectrum, source, WalkKind::Quantum, &grid)?;
    for snap in &series {
        println!(
            "t = {:>9.4}  return {:.6}  total {:.15}",
            snap.time,
            snap.at(source),
            snap.total()
        );
    }

    let amp = quantum_amplitude(&spectrum, source, 1, 1.0)?;
    println!("\namplitude <1|exp(-iHt)|{source}> at t = 1: {amp:.6}");

    println!();
    io::write_series_csv(&series[..3], SeriesLayout::Wide, false, std::io::stdout())?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
