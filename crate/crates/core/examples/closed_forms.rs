// Compare the numerical quantum walk against the exact small-network
// expressions on a time grid.

use apollonian_walk::prelude::*;

pub fn run_example() -> apollonian_walk::Result<()> {
    let grid = TimeGrid::linear(0.0, 10.0, 1001)?;

    let s1 = eigendecompose(&Network::generate(1)?.laplacian())?;
    let mut worst1: f64 = 0.0;
    for &t in grid.times() {
        for j in 1..=4 {
            let snap = quantum_probability(&s1, j, t)?;
            for k in 1..=4 {
                worst1 = worst1.max((snap.at(k) - closed_form_g1(j, k, t)).abs());
            }
        }
    }
    println!("G = 1, all source/target pairs: max deviation {worst1:.2e}");

    let s2 = eigendecompose(&Network::generate(2)?.laplacian())?;
    let mut worst2: f64 = 0.0;
    for &t in grid.times() {
        let snap = quantum_probability(&s2, 4, t)?;
        for k in 1..=7 {
            worst2 = worst2.max((snap.at(k) - closed_form_g2(k, t)).abs());
        }
    }
    println!("G = 2, source at the center: max deviation {worst2:.2e}");

    let t = std::f64::consts::PI / 7.0;
    let snap = quantum_probability(&s2, 4, t)?;
    println!("\nG = 2 at t = pi/7: return probability {:.15} (25/49 = {:.15})", snap.at(4), 25.0 / 49.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
