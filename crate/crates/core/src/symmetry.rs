//! Equal-value clusters in limiting probabilities, checked against the
//! corner automorphism orbits.

use serde::{Deserialize, Serialize};

use crate::dynamics::LimitingMatrix;
use crate::error::{domain, Result};
use crate::graph::{corner_orbits, Network, OrbitPartition};

/// Default absolute tolerance for calling two χ values equal.
pub const DEFAULT_CLUSTER_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiCluster {
    /// Mean of the member values.
    pub value: f64,
    /// Ascending node indices.
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiClustering {
    pub source: usize,
    pub tolerance: f64,
    /// Ordered by ascending value.
    pub clusters: Vec<ChiCluster>,
}

impl ChiClustering {
    pub fn node_count(&self) -> usize {
        self.clusters.iter().map(|c| c.nodes.len()).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.nodes.len()).collect()
    }

    /// Cluster index for every node (entry `k - 1`).
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.node_count()];
        for (c, cluster) in self.clusters.iter().enumerate() {
            for &v in &cluster.nodes {
                labels[v - 1] = c;
            }
        }
        labels
    }
}

/// Sorts the column and merges neighbors whose gap is at most `tol`.
pub fn cluster_equal_limits(source: usize, column: &[f64], tol: f64) -> Result<ChiClustering> {
    if tol.is_nan() || tol <= 0.0 {
        return domain(format!("cluster tolerance must be positive, got {tol}"));
    }
    if column.is_empty() {
        return domain("empty probability column");
    }
    let total: f64 = column.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return domain(format!("probability column sums to {total}, not 1"));
    }
    let mut order: Vec<usize> = (0..column.len()).collect();
    order.sort_by(|&a, &b| column[a].total_cmp(&column[b]).then(a.cmp(&b)));

    let mut groups: Vec<Vec<usize>> = vec![vec![order[0]]];
    for w in order.windows(2) {
        if column[w[1]] - column[w[0]] <= tol {
            groups.last_mut().unwrap().push(w[1]);
        } else {
            groups.push(vec![w[1]]);
        }
    }
    let clusters = groups
        .into_iter()
        .map(|members| {
            let value = members.iter().map(|&i| column[i]).sum::<f64>() / members.len() as f64;
            let mut nodes: Vec<usize> = members.into_iter().map(|i| i + 1).collect();
            nodes.sort_unstable();
            ChiCluster { value, nodes }
        })
        .collect();
    Ok(ChiClustering {
        source,
        tolerance: tol,
        clusters,
    })
}

/// How a χ clustering relates to an orbit partition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitConsistency {
    pub source: usize,
    /// Orbits whose members landed in more than one cluster.
    pub split_orbits: Vec<Vec<usize>>,
    /// Pairs `k < l` inserted at the same generation that share a cluster
    /// but lie in different orbits.
    pub unexplained_pairs: Vec<[usize; 2]>,
}

impl OrbitConsistency {
    pub fn all_orbits_explained(&self) -> bool {
        self.split_orbits.is_empty()
    }
}

/// `orbits` should be taken under automorphisms that fix the clustering's
/// source (see [`corner_orbits`]).
pub fn orbit_consistency(
    clustering: &ChiClustering,
    orbits: &OrbitPartition,
    net: &Network,
) -> Result<OrbitConsistency> {
    let n = net.node_count();
    if clustering.node_count() != n || orbits.node_count() != n {
        return domain(format!(
            "node universes differ: clustering {}, orbits {}, network {n}",
            clustering.node_count(),
            orbits.node_count()
        ));
    }
    let cluster_of = clustering.labels();
    let orbit_of = orbits.labels();

    let split_orbits = orbits
        .classes
        .iter()
        .filter(|class| class.iter().any(|&v| cluster_of[v - 1] != cluster_of[class[0] - 1]))
        .cloned()
        .collect();

    let gens: Vec<u32> = net.node_meta().iter().map(|m| m.gen).collect();
    let mut unexplained_pairs = Vec::new();
    for cluster in &clustering.clusters {
        for (a, &k) in cluster.nodes.iter().enumerate() {
            for &l in &cluster.nodes[a + 1..] {
                if gens[k - 1] == gens[l - 1] && orbit_of[k - 1] != orbit_of[l - 1] {
                    unexplained_pairs.push([k, l]);
                }
            }
        }
    }
    Ok(OrbitConsistency {
        source: clustering.source,
        split_orbits,
        unexplained_pairs,
    })
}

/// Serialized cluster report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub source: usize,
    pub tol: f64,
    pub clusters: Vec<ChiCluster>,
    pub unexplained_pairs: Vec<[usize; 2]>,
}

impl ClusterReport {
    pub fn new(clustering: &ChiClustering, consistency: &OrbitConsistency) -> Self {
        Self {
            source: clustering.source,
            tol: clustering.tolerance,
            clusters: clustering.clusters.clone(),
            unexplained_pairs: consistency.unexplained_pairs.clone(),
        }
    }
}

/// Clusters the χ column of `source` and compares it with the corner orbits
/// fixing that source.
pub fn analyze_source(
    net: &Network,
    chi: &LimitingMatrix,
    source: usize,
    tol: f64,
) -> Result<(ChiClustering, OrbitConsistency)> {
    net.check_node(source)?;
    if chi.order() != net.node_count() {
        return domain("limiting matrix and network have different orders");
    }
    let clustering = cluster_equal_limits(source, &chi.column(source), tol)?;
    let orbits = corner_orbits(net, Some(source))?;
    let consistency = orbit_consistency(&clustering, &orbits, net)?;
    Ok((clustering, consistency))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Localization {
    pub source: usize,
    /// `χ(j, j)`.
    pub return_limit: f64,
    /// `χ(j, j) · N`; above 1 means more weight than equipartition.
    pub ratio_to_uniform: f64,
    /// `argmax_k χ(k, j)`, lowest index on ties.
    pub most_likely: usize,
}

pub fn localization_summary(chi: &LimitingMatrix, net: &Network) -> Result<Vec<Localization>> {
    let n = net.node_count();
    if chi.order() != n {
        return domain(format!(
            "limiting matrix of order {} does not match a network of {n} nodes",
            chi.order()
        ));
    }
    Ok(net
        .nodes()
        .map(|j| {
            let column = chi.column(j);
            let most_likely = column
                .iter()
                .enumerate()
                .fold(0, |best, (k, &v)| if v > column[best] { k } else { best })
                + 1;
            let return_limit = column[j - 1];
            Localization {
                source: j,
                return_limit,
                ratio_to_uniform: return_limit * n as f64,
                most_likely,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::limiting_matrix;
    use crate::spectral::{eigendecompose, group_degenerate_default};

    fn setup(g: u32) -> (Network, LimitingMatrix) {
        let net = Network::generate(g).unwrap();
        let s = eigendecompose(&net.laplacian()).unwrap();
        let chi = limiting_matrix(&s, &group_degenerate_default(&s)).unwrap();
        (net, chi)
    }

    #[test]
    fn uniform_column_is_one_cluster() {
        let c = cluster_equal_limits(1, &[0.25; 4], 1e-9).unwrap();
        assert_eq!(c.sizes(), vec![4]);
        assert!(cluster_equal_limits(1, &[0.25; 4], 0.0).is_err());
        assert!(cluster_equal_limits(1, &[0.5; 4], 1e-9).is_err());
    }

    #[test]
    fn central_source_at_g3() {
        let (net, chi) = setup(3);
        let (clustering, consistency) = analyze_source(&net, &chi, 4, DEFAULT_CLUSTER_TOLERANCE).unwrap();
        let mut sizes = clustering.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3, 3, 6]);
        assert!(consistency.all_orbits_explained());
        assert!(consistency.unexplained_pairs.is_empty());
    }

    #[test]
    fn central_source_at_g2_has_no_unexplained_pairs() {
        let (net, chi) = setup(2);
        let (clustering, consistency) = analyze_source(&net, &chi, 4, DEFAULT_CLUSTER_TOLERANCE).unwrap();
        // corners and generation-2 nodes share a value but differ in generation
        assert_eq!(clustering.sizes(), vec![6, 1]);
        assert!(consistency.all_orbits_explained());
        assert!(consistency.unexplained_pairs.is_empty());
    }

    #[test]
    fn off_center_source_at_g3_pairs_two_nodes() {
        let (net, chi) = setup(3);
        let (_, consistency) = analyze_source(&net, &chi, 9, DEFAULT_CLUSTER_TOLERANCE).unwrap();
        assert_eq!(consistency.unexplained_pairs, vec![[13, 15]]);
        assert!((chi.get(13, 9) - chi.get(15, 9)).abs() < 1e-9);
    }

    #[test]
    fn universe_mismatch_is_rejected() {
        let (net, chi) = setup(3);
        let clustering = cluster_equal_limits(4, &chi.column(4), 1e-9).unwrap();
        let small = Network::generate(2).unwrap();
        let orbits = corner_orbits(&small, Some(4)).unwrap();
        assert!(orbit_consistency(&clustering, &orbits, &net).is_err());
    }

    #[test]
    fn localization_at_small_generations() {
        let (net, chi) = setup(1);
        for loc in localization_summary(&chi, &net).unwrap() {
            assert!((loc.ratio_to_uniform - 2.5).abs() < 1e-12);
            assert_eq!(loc.most_likely, loc.source);
        }
        let (net, chi) = setup(2);
        let center = localization_summary(&chi, &net).unwrap()[3];
        assert!((center.return_limit - 37.0 / 49.0).abs() < 1e-12);
        assert!(center.return_limit > 1.0 / 7.0);
        let (net3, _) = setup(3);
        assert!(localization_summary(&chi, &net3).is_err());
    }
}
