//! Deterministic two-dimensional Apollonian networks.
//!
//! Generation 0 is the triangle on the corner nodes 1, 2, 3. Every later
//! generation inserts one node into each triangle created by the previous
//! generation and links it to the triangle's three vertices.
//!
//! Labels are assigned in creation order: the triangles born at generation
//! `g - 1` are visited in the order they were created, and each spawns the
//! next free index. Inserting `v` into `(a, b, c)` creates `(a, b, v)`,
//! `(a, c, v)`, `(b, c, v)` in that order. All node indices are 1-based.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::spectral::Hamiltonian;

/// Largest generation accepted by [`Network::generate`] (N = 1096).
pub const DEFAULT_GENERATION_CAP: u32 = 7;

/// Number of nodes of the generation-`g` network, `3 + (3^g - 1) / 2`.
pub fn node_count_for(generation: u32) -> usize {
    3 + (3usize.pow(generation) - 1) / 2
}

/// Number of edges of the generation-`g` network, `(3^(g+1) + 3) / 2`.
pub fn edge_count_for(generation: u32) -> usize {
    (3usize.pow(generation + 1) + 3) / 2
}

/// Insertion record of a node: the generation it was inserted at and the
/// triangle it was inserted into (absent for the three corners).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeMeta {
    pub gen: u32,
    pub parent: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    generation: u32,
    nodes: Vec<NodeMeta>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Network {
    /// Builds the generation-`generation` network under the default cap.
    pub fn generate(generation: u32) -> Result<Self> {
        Self::generate_with_cap(generation, DEFAULT_GENERATION_CAP)
    }

    pub fn generate_with_cap(generation: u32, cap: u32) -> Result<Self> {
        if generation > cap {
            return Err(Error::Capacity { generation, cap });
        }
        let n = node_count_for(generation);
        let mut nodes = Vec::with_capacity(n);
        nodes.extend(std::iter::repeat_n(NodeMeta { gen: 0, parent: None }, 3));
        let mut edges = Vec::with_capacity(edge_count_for(generation));
        edges.extend([(1, 2), (1, 3), (2, 3)]);

        let mut fresh: Vec<[usize; 3]> = vec![[1, 2, 3]];
        for gen in 1..=generation {
            let mut born = Vec::with_capacity(3 * fresh.len());
            for &[a, b, c] in &fresh {
                let v = nodes.len() + 1;
                nodes.push(NodeMeta {
                    gen,
                    parent: Some([a, b, c]),
                });
                edges.extend([(a, v), (b, v), (c, v)]);
                // v exceeds every existing index, so these stay sorted
                born.extend([[a, b, v], [a, c, v], [b, c, v]]);
            }
            fresh = born;
        }
        edges.sort_unstable();
        Ok(Self::assemble(generation, nodes, edges))
    }

    /// Rebuilds a network from serialized parts, rejecting anything that
    /// is not the canonical generation-`generation` network.
    pub fn from_parts(
        generation: u32,
        nodes: Vec<NodeMeta>,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        // no cap here: the parts already exist in memory
        let canonical = Self::generate_with_cap(generation, u32::MAX)?;
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        if nodes != canonical.nodes {
            return domain(format!(
                "node metadata is not the canonical labeling for generation {generation}"
            ));
        }
        if edges != canonical.edges {
            return domain(format!(
                "edge set is not the canonical generation-{generation} Apollonian network"
            ));
        }
        Ok(canonical)
    }

    fn assemble(generation: u32, nodes: Vec<NodeMeta>, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for &(i, j) in &edges {
            adjacency[i - 1].push(j);
            adjacency[j - 1].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            generation,
            nodes,
            edges,
            adjacency,
        }
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.nodes.len()
    }

    /// The unique generation-1 node, if the network has one.
    pub fn central_node(&self) -> Option<usize> {
        (self.generation >= 1).then_some(4)
    }

    /// Central node when present, node 1 otherwise.
    pub fn default_source(&self) -> usize {
        self.central_node().unwrap_or(1)
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.nodes.len() {
            return domain(format!(
                "node {node} is outside 1..={} for this network",
                self.nodes.len()
            ));
        }
        Ok(())
    }

    pub fn meta(&self, node: usize) -> Result<&NodeMeta> {
        self.check_node(node)?;
        Ok(&self.nodes[node - 1])
    }

    pub fn node_meta(&self) -> &[NodeMeta] {
        &self.nodes
    }

    /// Sorted neighbor list of `node`.
    pub fn neighbors(&self, node: usize) -> Result<&[usize]> {
        self.check_node(node)?;
        Ok(&self.adjacency[node - 1])
    }

    pub fn degree(&self, node: usize) -> Result<usize> {
        Ok(self.neighbors(node)?.len())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1
            && i <= self.nodes.len()
            && self.adjacency[i - 1].binary_search(&j).is_ok()
    }

    /// Graph Laplacian: degrees on the diagonal, -1 per edge. With unit
    /// transfer rate this matrix is also the Hamiltonian.
    pub fn laplacian(&self) -> Hamiltonian {
        let n = self.node_count();
        let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
        for &(i, j) in &self.edges {
            m[(i - 1, j - 1)] = -1.0;
            m[(j - 1, i - 1)] = -1.0;
        }
        for (i, list) in self.adjacency.iter().enumerate() {
            m[(i, i)] = list.len() as f64;
        }
        Hamiltonian::from_matrix(m).expect("a Laplacian is symmetric")
    }

    /// Breadth-first hop counts from `source` to every node (index `k - 1`).
    pub fn distances_from(&self, source: usize) -> Result<Vec<usize>> {
        self.check_node(source)?;
        let mut dist = vec![usize::MAX; self.node_count()];
        let mut queue = VecDeque::from([source]);
        dist[source - 1] = 0;
        while let Some(u) = queue.pop_front() {
            let du = dist[u - 1];
            for &w in &self.adjacency[u - 1] {
                if dist[w - 1] == usize::MAX {
                    dist[w - 1] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn shortest_path_length(&self, j: usize, k: usize) -> Result<usize> {
        self.check_node(k)?;
        Ok(self.distances_from(j)?[k - 1])
    }

    /// Extends a permutation of the corners to the whole network by
    /// mapping every inserted node to the node hosted by the image of its
    /// parent triangle.
    pub fn corner_automorphism(&self, corners: CornerPermutation) -> NodePermutation {
        let hosts: HashMap<[usize; 3], usize> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.parent.map(|p| (p, i + 1)))
            .collect();
        let mut image = Vec::with_capacity(self.node_count());
        image.extend_from_slice(&corners.0);
        for meta in &self.nodes[3..] {
            let parent = meta.parent.expect("inserted nodes have a parent");
            let mut mapped = parent.map(|v| image[v - 1]);
            mapped.sort_unstable();
            image.push(hosts[&mapped]);
        }
        NodePermutation { image }
    }

    /// All six corner automorphisms, in [`CornerPermutation::all`] order.
    pub fn corner_group(&self) -> Vec<NodePermutation> {
        CornerPermutation::all()
            .into_iter()
            .map(|c| self.corner_automorphism(c))
            .collect()
    }
}

/// A permutation of the corner nodes: entry `i` is the image of node `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CornerPermutation([usize; 3]);

impl CornerPermutation {
    pub const IDENTITY: Self = Self([1, 2, 3]);
    /// 1 -> 2 -> 3 -> 1.
    pub const ROTATION: Self = Self([2, 3, 1]);

    pub fn new(images: [usize; 3]) -> Result<Self> {
        let mut sorted = images;
        sorted.sort_unstable();
        if sorted != [1, 2, 3] {
            return domain(format!("{images:?} is not a permutation of the corners 1, 2, 3"));
        }
        Ok(Self(images))
    }

    pub fn all() -> [Self; 6] {
        [
            Self([1, 2, 3]),
            Self([1, 3, 2]),
            Self([2, 1, 3]),
            Self([2, 3, 1]),
            Self([3, 1, 2]),
            Self([3, 2, 1]),
        ]
    }

    pub fn images(&self) -> [usize; 3] {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.map(|v| self.0[v - 1]))
    }
}

/// A bijection of the nodes `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodePermutation {
    image: Vec<usize>,
}

impl NodePermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return domain(format!("image {image:?} is not a permutation of 1..={n}"));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Image of `node` (1-based). Panics when out of range.
    pub fn apply(&self, node: usize) -> usize {
        self.image[node - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn fixes(&self, node: usize) -> bool {
        self.apply(node) == node
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "permutations of different sizes");
        Self {
            image: other.image.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v - 1] = i + 1;
        }
        Self { image }
    }

    pub fn is_automorphism(&self, net: &Network) -> bool {
        self.len() == net.node_count()
            && net
                .edges()
                .iter()
                .all(|&(i, j)| net.has_edge(self.apply(i), self.apply(j)))
    }
}

/// Orbits of the nodes under a set of permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    /// Each class sorted ascending; classes ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub group_used: String,
}

impl OrbitPartition {
    /// Index into `classes` for every node (entry `k - 1`).
    pub fn labels(&self) -> Vec<usize> {
        let n = self.classes.iter().map(Vec::len).sum();
        let mut labels = vec![usize::MAX; n];
        for (c, class) in self.classes.iter().enumerate() {
            for &v in class {
                labels[v - 1] = c;
            }
        }
        labels
    }

    pub fn node_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Orbits under the group generated by `perms`, restricted to those fixing
/// `fixed_source` when one is given.
pub fn orbits(
    net: &Network,
    perms: &[NodePermutation],
    fixed_source: Option<usize>,
) -> Result<OrbitPartition> {
    if let Some(s) = fixed_source {
        net.check_node(s)?;
    }
    if let Some(bad) = perms.iter().position(|p| !p.is_automorphism(net)) {
        return domain(format!("permutation #{bad} is not an automorphism of the network"));
    }
    let used: Vec<&NodePermutation> = perms
        .iter()
        .filter(|p| fixed_source.is_none_or(|s| p.fixes(s)))
        .collect();

    let n = net.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in &used {
        for v in 1..=n {
            let (a, b) = (find(&mut parent, v - 1), find(&mut parent, p.apply(v) - 1));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 1..=n {
        let r = find(&mut parent, v - 1);
        by_root[r].push(v);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    classes.sort_by_key(|c| c[0]);

    let group_used = match fixed_source {
        Some(s) => format!("{} of {} permutations (those fixing node {s})", used.len(), perms.len()),
        None => format!("{} permutations", used.len()),
    };
    Ok(OrbitPartition {
        classes,
        group_used,
    })
}

/// Orbits under the corner automorphism group, optionally fixing a node.
pub fn corner_orbits(net: &Network, fixed_source: Option<usize>) -> Result<OrbitPartition> {
    let mut partition = orbits(net, &net.corner_group(), fixed_source)?;
    partition.group_used = format!("corner S3: {}", partition.group_used);
    Ok(partition)
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Apollonian network G={} (N={}, E={})",
            self.generation,
            self.node_count(),
            self.edge_count()
        )
    }
}
