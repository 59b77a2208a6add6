// Follow the classical random walk to equipartition and contrast it with
// the quantum walk, which never settles.

use apollonian_walk::prelude::*;

pub fn run_example() -> apollonian_walk::Result<()> {
    for g in 1..=4 {
        let net = Network::generate(g)?;
        let spectrum = eigendecompose(&net.laplacian())?;
        let n = net.node_count() as f64;
        let source = net.default_source();
        let gap = spectrum.eigenvalues()[1];
        let t = 20.0 / gap;
        let classical = classical_probability(&spectrum, source, t)?;
        let quantum = quantum_probability(&spectrum, source, t)?;
        let spread = |v: &[f64]| v.iter().map(|p| (p - 1.0 / n).abs()).fold(0.0, f64::max);
        println!(
            "G = {g}: gap {gap:.4}, t = {t:>8.2}, classical distance to 1/N {:.2e}, quantum {:.2e}",
            spread(&classical.values),
            spread(&quantum.values),
        );
    }

    let net = Network::generate(3)?;
    let spectrum = eigendecompose(&net.laplacian())?;
    println!("\nclassical return probability from the center, G = 3:");
    for t in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0] {
        let p = classical_probability(&spectrum, 4, t)?;
        println!("  t = {t:>4}: {:.8}", p.at(4));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
