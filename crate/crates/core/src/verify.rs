//! Self-check battery behind the `verify` subcommand.
//!
//! Each check reproduces one published property of the walks (closed forms,
//! revivals, equipartition, localization, χ clusters) or one numerical
//! invariant, and reports a pass/fail line with the measured quantity.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::closed_form::{closed_form_g1, closed_form_g2};
use crate::dynamics::{
    classical_probability, evolve_series, limiting_matrix, max_return_probability,
    quantum_probability, return_probability, time_averaged_probability, LimitingMatrix, TimeGrid,
    WalkKind,
};
use crate::error::Result;
use crate::graph::{corner_orbits, Network};
use crate::spectral::{eigendecompose, group_degenerate_default, Spectrum};
use crate::symmetry::{analyze_source, localization_summary, DEFAULT_CLUSTER_TOLERANCE};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub max_generation: u32,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Level {
    net: Network,
    spectrum: Spectrum,
    chi: LimitingMatrix,
}

/// Lazily built network/spectrum/χ per generation.
struct Levels(BTreeMap<u32, Level>);

impl Levels {
    fn get(&mut self, g: u32) -> Result<&Level> {
        if let std::collections::btree_map::Entry::Vacant(slot) = self.0.entry(g) {
            let net = Network::generate(g)?;
            let spectrum = eigendecompose(&net.laplacian())?;
            let chi = limiting_matrix(&spectrum, &group_degenerate_default(&spectrum))?;
            slot.insert(Level { net, spectrum, chi });
        }
        Ok(&self.0[&g])
    }
}

fn check(id: u32, name: &str, passed: bool, detail: String) -> Check {
    Check {
        id,
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Runs every check whose networks fit within `max_generation`.
pub fn run_checks(max_generation: u32) -> Result<Verdict> {
    let mut levels = Levels(BTreeMap::new());
    let mut checks = Vec::new();
    let grid = TimeGrid::linear(0.0, 4.0 * PI, 1000)?;

    if max_generation >= 1 {
        let s = &levels.get(1)?.spectrum;
        let mut err: f64 = 0.0;
        for j in 1..=4 {
            for snap in evolve_series(s, j, WalkKind::Quantum, &grid)? {
                for k in 1..=4 {
                    err = err.max((snap.at(k) - closed_form_g1(j, k, snap.time)).abs());
                }
            }
        }
        checks.push(check(1, "g1-closed-form", err <= 1e-10, format!("max abs error {err:.3e}")));
    }
    if max_generation >= 2 {
        let s = &levels.get(2)?.spectrum;
        let mut err: f64 = 0.0;
        for snap in evolve_series(s, 4, WalkKind::Quantum, &grid)? {
            for k in 1..=7 {
                err = err.max((snap.at(k) - closed_form_g2(k, snap.time)).abs());
            }
        }
        checks.push(check(2, "g2-closed-form", err <= 1e-10, format!("max abs error {err:.3e}")));
    }
    if max_generation >= 1 {
        let mut worst: f64 = 1.0;
        let cases: Vec<(u32, Vec<usize>)> = if max_generation >= 2 {
            vec![(1, (1..=4).collect()), (2, vec![4])]
        } else {
            vec![(1, (1..=4).collect())]
        };
        for (g, sources) in cases {
            let level = levels.get(g)?;
            let n = level.net.node_count() as f64;
            for j in sources {
                for m in 1..=5 {
                    let t = 2.0 * PI * m as f64 / n;
                    worst = worst.min(return_probability(&level.spectrum, j, t)?);
                }
            }
        }
        checks.push(check(
            3,
            "perfect-revival",
            worst >= 1.0 - 1e-9,
            format!("smallest return probability at t = 2πn/N: {worst:.15}"),
        ));
    }
    if max_generation >= 3 {
        let s = &levels.get(3)?.spectrum;
        let window = TimeGrid::linear(0.1, 200.0, crate::dynamics::DEFAULT_REVIVAL_POINTS)?;
        let r = max_return_probability(s, 4, &window)?;
        checks.push(check(
            4,
            "partial-revival",
            r.probability < 1.0 - 1e-6,
            format!("max π(4<-4) = {:.12} at t = {:.4}", r.probability, r.time),
        ));

        let mut worst: f64 = 0.0;
        for g in 3..=max_generation.min(4) {
            let level = levels.get(g)?;
            let n = level.net.node_count() as f64;
            let p = classical_probability(&level.spectrum, 4, 100.0)?;
            worst = worst.max(p.values.iter().map(|v| (v - 1.0 / n).abs()).fold(0.0, f64::max));
        }
        checks.push(check(
            5,
            "classical-equipartition",
            worst <= 1e-6,
            format!("max |p(k<-4, 100) - 1/N| = {worst:.3e}"),
        ));

        let mut ok = true;
        let mut min_ratio = f64::INFINITY;
        for g in 3..=max_generation.min(4) {
            let level = levels.get(g)?;
            for loc in localization_summary(&level.chi, &level.net)? {
                ok &= loc.most_likely == loc.source && loc.ratio_to_uniform > 1.0;
                min_ratio = min_ratio.min(loc.ratio_to_uniform);
            }
        }
        checks.push(check(
            6,
            "localization",
            ok,
            format!("smallest χ(j,j)·N = {min_ratio:.6}"),
        ));

        let level = levels.get(3)?;
        let (clustering, _) = analyze_source(&level.net, &level.chi, 4, DEFAULT_CLUSTER_TOLERANCE)?;
        let mut sizes = clustering.sizes();
        sizes.sort_unstable();
        let orbits = corner_orbits(&level.net, Some(4))?;
        let mut cluster_sets: Vec<Vec<usize>> =
            clustering.clusters.iter().map(|c| c.nodes.clone()).collect();
        cluster_sets.sort();
        let mut orbit_sets = orbits.classes.clone();
        orbit_sets.sort();
        checks.push(check(
            7,
            "central-clusters",
            sizes == [1, 3, 3, 3, 6] && cluster_sets == orbit_sets,
            format!("cluster sizes {sizes:?}"),
        ));

        let source = first_off_center_neighbor(&level.net);
        let (_, consistency) = analyze_source(&level.net, &level.chi, source, DEFAULT_CLUSTER_TOLERANCE)?;
        let gen3: Vec<[usize; 2]> = consistency
            .unexplained_pairs
            .iter()
            .copied()
            .filter(|p| level.net.node_meta()[p[0] - 1].gen == 3)
            .collect();
        let spread = gen3
            .iter()
            .map(|p| (level.chi.get(p[0], source) - level.chi.get(p[1], source)).abs())
            .fold(0.0, f64::max);
        checks.push(check(
            8,
            "unexplained-pairs",
            !gen3.is_empty() && spread <= 1e-9,
            format!("source {source}: pairs {gen3:?}, max gap {spread:.3e}"),
        ));
    }
    if max_generation >= 4 {
        let c3 = levels.get(3)?.chi.get(4, 4);
        let c4 = levels.get(4)?.chi.get(4, 4);
        checks.push(check(
            9,
            "return-growth",
            c4 > c3,
            format!("χ(4,4): G=3 {c3:.12}, G=4 {c4:.12}"),
        ));
    }
    if max_generation >= 1 {
        checks.push(property_check(&mut levels, max_generation)?);
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(Verdict {
        max_generation,
        passed,
        checks,
    })
}

/// Lowest-index generation-3 node adjacent to the center.
pub fn first_off_center_neighbor(net: &Network) -> usize {
    net.nodes()
        .find(|&v| net.node_meta()[v - 1].gen == 3 && net.has_edge(4, v))
        .expect("generation >= 3")
}

fn property_check(levels: &mut Levels, max_generation: u32) -> Result<Check> {
    let times = [0.0, 0.37, 1.9, 7.3, 31.0, 50.0];
    let mut sum_err: f64 = 0.0;
    let mut min_entry = f64::INFINITY;
    let mut sym_err: f64 = 0.0;
    let mut equiv_err: f64 = 0.0;
    let mut recon_err: f64 = 0.0;
    let mut avg_err: f64 = 0.0;
    let mut taylor_err: f64 = 0.0;

    for g in 1..=max_generation.min(5) {
        let level = levels.get(g)?;
        let (net, s) = (&level.net, &level.spectrum);
        let n = net.node_count();
        let h = net.laplacian();
        recon_err = recon_err.max(s.reconstruction_error(&h) / s.spectral_radius().max(1.0));

        let mut quantum = vec![DMatrix::zeros(n, n); times.len()];
        let mut classical = vec![DMatrix::zeros(n, n); times.len()];
        for j in 1..=n {
            for (ti, &t) in times.iter().enumerate() {
                let q = quantum_probability(s, j, t)?;
                let c = classical_probability(s, j, t)?;
                sum_err = sum_err.max((q.total() - 1.0).abs()).max((c.total() - 1.0).abs());
                min_entry = min_entry.min(q.values.iter().chain(&c.values).fold(f64::INFINITY, |m, v| m.min(*v)));
                for k in 1..=n {
                    quantum[ti][(k - 1, j - 1)] = q.at(k);
                    classical[ti][(k - 1, j - 1)] = c.at(k);
                }
            }
        }
        for ti in 0..times.len() {
            sym_err = sym_err
                .max((&quantum[ti] - quantum[ti].transpose()).abs().max())
                .max((&classical[ti] - classical[ti].transpose()).abs().max());
            for sigma in net.corner_group() {
                for j in 1..=n {
                    for k in 1..=n {
                        let a = quantum[ti][(sigma.apply(k) - 1, sigma.apply(j) - 1)];
                        equiv_err = equiv_err.max((a - quantum[ti][(k - 1, j - 1)]).abs());
                    }
                }
            }
        }
        if g <= 3 {
            for j in [1, net.default_source()] {
                for k in 1..=n {
                    let avg = time_averaged_probability(s, j, k, 2000.0)?;
                    avg_err = avg_err.max((avg - level.chi.get(k, j)).abs());
                }
            }
        }
        if g <= 2 {
            for t in [0.1, 0.5, 1.0] {
                let propagator = taylor_heat_kernel(h.matrix(), t);
                for j in 1..=n {
                    let p = classical_probability(s, j, t)?;
                    for k in 1..=n {
                        taylor_err = taylor_err.max((p.at(k) - propagator[(k - 1, j - 1)]).abs());
                    }
                }
            }
        }
    }
    let passed = sum_err <= 1e-10
        && min_entry >= -1e-12
        && sym_err <= 1e-12
        && equiv_err <= 1e-10
        && recon_err <= 1e-10
        && avg_err <= 0.01
        && taylor_err <= 1e-8;
    Ok(check(
        10,
        "properties",
        passed,
        format!(
            "sum {sum_err:.1e}, min entry {min_entry:.1e}, symmetry {sym_err:.1e}, \
             equivariance {equiv_err:.1e}, reconstruction {recon_err:.1e}, \
             finite-T average {avg_err:.1e}, Taylor {taylor_err:.1e}"
        ),
    ))
}

/// `exp(-tA)` by truncated power series; only for small `‖tA‖`.
fn taylor_heat_kernel(a: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    let n = a.nrows();
    let step = a * (-t);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = term.clone();
    for m in 1..=80 {
        term = &term * &step / m as f64;
        sum += &term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        let v = run_checks(2).unwrap();
        assert!(v.passed, "{v:#?}");
        let ids: Vec<u32> = v.checks.iter().map(|c| c.id).collect();
        assert_eq!(ids, vec![1, 2, 3, 10]);
    }

    #[test]
    fn zero_generation_runs_nothing() {
        let v = run_checks(0).unwrap();
        assert!(v.passed);
        assert!(v.checks.is_empty());
    }
}
