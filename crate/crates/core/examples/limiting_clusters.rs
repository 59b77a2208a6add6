// Compute the long-time average matrix, cluster a column into equal
// values, and compare the clusters with the symmetry orbits.

use apollonian_walk::io;
use apollonian_walk::prelude::*;

pub fn run_example() -> apollonian_walk::Result<()> {
    let net = Network::generate(3)?;
    let spectrum = eigendecompose(&net.laplacian())?;
    let chi = limiting_matrix(&spectrum, &group_degenerate_default(&spectrum))?;
    println!("G = 3 limiting matrix asymmetry: {:.2e}", chi.asymmetry());

    for source in [4, 9] {
        let (clustering, consistency) = analyze_source(&net, &chi, source, DEFAULT_CLUSTER_TOLERANCE)?;
        println!("\nsource {source}: {} clusters", clustering.clusters.len());
        for c in &clustering.clusters {
            println!("  chi = {:.12} nodes {:?}", c.value, c.nodes);
        }
        println!("  equalities not explained by symmetry: {:?}", consistency.unexplained_pairs);
        if source == 9 {
            println!("\n{}", io::cluster_report_to_json(&ClusterReport::new(&clustering, &consistency)));
        }
    }

    let avg = time_averaged_probability(&spectrum, 4, 4, 2000.0)?;
    println!("finite-time average of the return probability, T = 2000: {avg:.9}");
    println!("infinite-time limit:                                    {:.9}", chi.get(4, 4));
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
