// Search for the strongest quantum revival at the source in a time window.

use apollonian_walk::prelude::*;

pub fn run_example() -> apollonian_walk::Result<()> {
    let window = TimeGrid::linear(0.1, 200.0, 20_000)?;
    for g in 1..=4 {
        let net = Network::generate(g)?;
        let spectrum = eigendecompose(&net.laplacian())?;
        let source = net.default_source();
        let best = max_return_probability(&spectrum, source, &window)?;
        println!(
            "G = {g}, source {source}: max return {:.9} at t = {:.4} (grid step {:.4})",
            best.probability, best.time, best.resolution
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
