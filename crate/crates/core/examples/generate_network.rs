// Build Apollonian networks generation by generation and print their
// size, degree extremes and the edge list of the smallest nontrivial one.

use apollonian_walk::graph::{edge_count_for, node_count_for};
use apollonian_walk::io;
use apollonian_walk::Network;

pub fn run_example() -> apollonian_walk::Result<()> {
    println!("{:>3} {:>6} {:>6} {:>8} {:>8}", "G", "nodes", "edges", "max deg", "min deg");
    for g in 0..=6 {
        let net = Network::generate(g)?;
        assert_eq!(net.node_count(), node_count_for(g));
        assert_eq!(net.edge_count(), edge_count_for(g));
        let degrees: Vec<usize> = net.nodes().map(|v| net.degree(v)).collect::<apollonian_walk::Result<_>>()?;
        println!(
            "{:>3} {:>6} {:>6} {:>8} {:>8}",
            g,
            net.node_count(),
            net.edge_count(),
            degrees.iter().max().unwrap(),
            degrees.iter().min().unwrap(),
        );
    }

    let net = Network::generate(2)?;
    println!("\ninsertion history at G = 2:");
    for v in net.nodes() {
        let meta = net.meta(v)?;
        match meta.parent {
            Some(p) => println!("  node {v} (gen {}) inside triangle {p:?}", meta.gen),
            None => println!("  node {v} (gen {}) corner", meta.gen),
        }
    }
    println!("\n{}", io::edge_list_string(&net));

    match Network::generate(99) {
        Err(e) => println!("oversized request: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> apollonian_walk::Result<()> {
    run_example()
}
