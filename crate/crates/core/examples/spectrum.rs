// Diagonalize the Laplacian with both solvers, compare them, and list the
// degenerate eigenspaces.

use apollonian_walk::prelude::*;

pub fn run_example() -> apollonian_walk::Result<()> {
    let net = Network::generate(3)?;
    let h = net.laplacian();
    println!("G = 3: N = {}, trace = {}", h.order(), h.trace());

    let householder = eigendecompose(&h)?;
    let jacobi = eigendecompose_with(&h, EigenSolver::Jacobi)?;
    let gap = householder
        .eigenvalues()
        .iter()
        .zip(jacobi.eigenvalues())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("largest eigenvalue disagreement between solvers: {gap:.2e}");
    println!("reconstruction error: {:.2e}", householder.reconstruction_error(&h));
    println!("orthonormality error: {:.2e}", householder.orthonormality_error());

    let grouping = group_degenerate_default(&householder);
    println!("\n{} distinct eigenvalues (tolerance {:.1e}):", grouping.groups().len(), grouping.tolerance());
    for range in grouping.groups() {
        println!(
            "  E = {:>10.6} multiplicity {}",
            householder.eigenvalues()[range.start],
            range.len()
        );
    }

    println!("\nspectral radius by generation:");
    for g in 0..=5 {
        let s = eigendecompose(&Network::generate(g)?.laplacian())?;
        println!("  G = {g}: {:.6}", s.spectral_radius());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
