// Measure how strongly the long-time quantum walk stays at its starting
// node compared with the uniform distribution.

use apollonian_walk::prelude::*;

pub fn run_example() -> apollonian_walk::Result<()> {
    for g in 1..=4 {
        let net = Network::generate(g)?;
        let spectrum = eigendecompose(&net.laplacian())?;
        let chi = limiting_matrix(&spectrum, &group_degenerate_default(&spectrum))?;
        let summary = localization_summary(&chi, &net)?;
        let center = summary.iter().find(|l| l.source == net.default_source()).unwrap();
        let strongest = summary
            .iter()
            .max_by(|a, b| a.ratio_to_uniform.total_cmp(&b.ratio_to_uniform))
            .unwrap();
        println!(
            "G = {g}: center return {:.6} ({:.2}x uniform), strongest at node {} ({:.2}x)",
            center.return_limit, center.ratio_to_uniform, strongest.source, strongest.ratio_to_uniform
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
