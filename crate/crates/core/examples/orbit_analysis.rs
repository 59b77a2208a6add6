// Lift permutations of the three corners to the whole network and
// partition the nodes into orbits.

use apollonian_walk::prelude::*;

pub fn run_example() -> apollonian_walk::Result<()> {
    let net = Network::generate(2)?;
    for corners in CornerPermutation::all() {
        let perm = net.corner_automorphism(corners);
        println!(
            "corners {:?} -> nodes {:?}, automorphism: {}",
            corners.images(),
            (1..=net.node_count()).map(|v| perm.apply(v)).collect::<Vec<_>>(),
            perm.is_automorphism(&net)
        );
    }

    let net = Network::generate(3)?;
    let full = corner_orbits(&net, None)?;
    println!("\nG = 3 orbits under all corner permutations: sizes {:?}", full.sizes());
    for source in [4, 9] {
        let fixed = corner_orbits(&net, Some(source))?;
        let nontrivial: Vec<&Vec<usize>> = fixed.classes.iter().filter(|c| c.len() > 1).collect();
        println!(
            "G = 3 orbits fixing node {source}: {} classes, nontrivial {nontrivial:?}",
            fixed.classes.len()
        );
    }

    let distances = net.distances_from(4)?;
    println!("\ndistances from node 4 at G = 3: {distances:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
