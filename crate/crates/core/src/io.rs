//! Text formats: edge lists, network JSON, spectrum/series/χ CSV.
//!
//! CSV floats are written in scientific notation with 17 significant
//! digits, which round-trips every `f64` exactly.

use std::io::Write;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dynamics::{LimitingMatrix, TransitionSnapshot, WalkKind};
use crate::error::{Error, Result};
use crate::graph::{Network, NodeMeta};
use crate::spectral::Spectrum;
use crate::symmetry::ClusterReport;

/// Probabilities in `[-PROBABILITY_CLAMP, 0)` are written as zero.
pub const PROBABILITY_CLAMP: f64 = 1e-12;

pub fn format_float(x: f64) -> String {
    // normalize -0.0
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn format_probability(p: f64) -> String {
    if (-PROBABILITY_CLAMP..0.0).contains(&p) {
        format_float(0.0)
    } else {
        format_float(p)
    }
}

fn parse_f64(field: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {field:?}")))
}

fn parse_usize(field: &str) -> Result<usize> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {field:?}")))
}

// ---------------------------------------------------------------- networks

/// Header line followed by one `i j` line per edge.
pub fn write_edge_list(net: &Network, mut w: impl Write) -> Result<()> {
    writeln!(w, "apollonian g={} n={}", net.generation(), net.node_count())?;
    for &(i, j) in net.edges() {
        writeln!(w, "{i} {j}")?;
    }
    Ok(())
}

pub fn edge_list_string(net: &Network) -> String {
    let mut buf = Vec::new();
    write_edge_list(net, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub generation: u32,
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let mut parts = header.split_whitespace();
    let (tag, g, n) = (parts.next(), parts.next(), parts.next());
    let (Some("apollonian"), Some(g), Some(n), None) = (tag, g, n, parts.next()) else {
        return Err(Error::Parse(format!("bad edge-list header {header:?}")));
    };
    let field = |s: &str, key: &str| -> Result<String> {
        s.strip_prefix(key)
            .map(str::to_owned)
            .ok_or_else(|| Error::Parse(format!("expected {key}<value> in header, got {s:?}")))
    };
    let generation = field(g, "g=")?
        .parse()
        .map_err(|_| Error::Parse(format!("bad generation in {header:?}")))?;
    let node_count = parse_usize(&field(n, "n=")?)?;

    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some(i), Some(j), None) => edges.push((parse_usize(i)?, parse_usize(j)?)),
            _ => return Err(Error::Parse(format!("bad edge line {line:?}"))),
        }
    }
    Ok(EdgeList {
        generation,
        node_count,
        edges,
    })
}

/// Parses an edge list and checks it is the canonical network it claims.
pub fn network_from_edge_list(text: &str) -> Result<Network> {
    let list = parse_edge_list(text)?;
    let canonical = Network::generate_with_cap(list.generation, u32::MAX)?;
    if canonical.node_count() != list.node_count {
        return Err(Error::Parse(format!(
            "header claims n={} but generation {} has {} nodes",
            list.node_count,
            list.generation,
            canonical.node_count()
        )));
    }
    Network::from_parts(list.generation, canonical.node_meta().to_vec(), list.edges)
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: usize,
    gen: u32,
    parent: Option<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct NetworkDoc {
    generation: u32,
    nodes: Vec<NodeDoc>,
    edges: Vec<[usize; 2]>,
}

pub fn network_to_json(net: &Network) -> String {
    let doc = NetworkDoc {
        generation: net.generation(),
        nodes: net
            .node_meta()
            .iter()
            .enumerate()
            .map(|(i, m)| NodeDoc {
                id: i + 1,
                gen: m.gen,
                parent: m.parent,
            })
            .collect(),
        edges: net.edges().iter().map(|&(i, j)| [i, j]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn network_from_json(text: &str) -> Result<Network> {
    let mut doc: NetworkDoc = serde_json::from_str(text)?;
    doc.nodes.sort_by_key(|n| n.id);
    if doc.nodes.iter().enumerate().any(|(i, n)| n.id != i + 1) {
        return Err(Error::Parse("node ids must be exactly 1..=N".into()));
    }
    let nodes = doc
        .nodes
        .iter()
        .map(|n| NodeMeta {
            gen: n.gen,
            parent: n.parent,
        })
        .collect();
    let edges = doc.edges.iter().map(|e| (e[0], e[1])).collect();
    Network::from_parts(doc.generation, nodes, edges)
}

// ---------------------------------------------------------------- spectra

pub fn write_spectrum_csv(s: &Spectrum, w: impl Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["index", "eigenvalue"])?;
    for (i, e) in s.eigenvalues().iter().enumerate() {
        out.write_record([(i + 1).to_string(), format_float(*e)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn parse_spectrum_csv(text: &str) -> Result<Vec<f64>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    expect_header(&mut rd, &["index", "eigenvalue"])?;
    let mut values = Vec::new();
    for (row, rec) in rd.records().enumerate() {
        let rec = rec?;
        if parse_usize(&rec[0])? != row + 1 {
            return Err(Error::Parse(format!("eigenvalue index out of sequence at row {}", row + 1)));
        }
        values.push(parse_f64(&rec[1])?);
    }
    Ok(values)
}

/// One row per node, one column per mode: `node,q_1,...,q_N`.
pub fn write_eigenvectors_csv(s: &Spectrum, w: impl Write) -> Result<()> {
    let n = s.order();
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["node".to_string()];
    header.extend((1..=n).map(|m| format!("q_{m}")));
    out.write_record(&header)?;
    for k in 1..=n {
        let mut rec = vec![k.to_string()];
        rec.extend((0..n).map(|m| format_float(s.component(k, m))));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn parse_eigenvectors_csv(text: &str) -> Result<DMatrix<f64>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let n = rd.headers()?.len().saturating_sub(1);
    let mut m = DMatrix::zeros(n, n);
    let mut rows = 0;
    for rec in rd.records() {
        let rec = rec?;
        let k = parse_usize(&rec[0])?;
        if k == 0 || k > n || rec.len() != n + 1 {
            return Err(Error::Parse(format!("bad eigenvector row for node {k}")));
        }
        for c in 0..n {
            m[(k - 1, c)] = parse_f64(&rec[c + 1])?;
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::Parse(format!("expected {n} eigenvector rows, got {rows}")));
    }
    Ok(m)
}

fn expect_header<R: std::io::Read>(rd: &mut csv::Reader<R>, want: &[&str]) -> Result<()> {
    let got = rd.headers()?;
    if got.iter().ne(want.iter().copied()) {
        return Err(Error::Parse(format!("expected header {want:?}, got {got:?}")));
    }
    Ok(())
}

// ---------------------------------------------------------------- series

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesLayout {
    /// `t,k,probability`
    Long,
    /// `t,p_1,...,p_N`
    Wide,
}

/// Writes snapshots in grid order. With `with_kind` a leading `kind`
/// column is added so classical and quantum series can share a file.
pub fn write_series_csv(
    snapshots: &[TransitionSnapshot],
    layout: SeriesLayout,
    with_kind: bool,
    w: impl Write,
) -> Result<()> {
    let n = snapshots.first().map_or(0, |s| s.values.len());
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = Vec::new();
    if with_kind {
        header.push("kind".into());
    }
    header.push("t".into());
    match layout {
        SeriesLayout::Long => header.extend(["k".into(), "probability".into()]),
        SeriesLayout::Wide => header.extend((1..=n).map(|k| format!("p_{k}"))),
    }
    out.write_record(&header)?;
    for snap in snapshots {
        let mut lead = Vec::with_capacity(2);
        if with_kind {
            lead.push(snap.kind.as_str().to_string());
        }
        lead.push(format_float(snap.time));
        match layout {
            SeriesLayout::Long => {
                for (k, p) in snap.values.iter().enumerate() {
                    let mut rec = lead.clone();
                    rec.push((k + 1).to_string());
                    rec.push(format_probability(*p));
                    out.write_record(&rec)?;
                }
            }
            SeriesLayout::Wide => {
                let mut rec = lead;
                rec.extend(snap.values.iter().map(|p| format_probability(*p)));
                out.write_record(&rec)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// A series row group read back from CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPoint {
    pub kind: Option<WalkKind>,
    pub time: f64,
    pub values: Vec<f64>,
}

fn parse_kind(s: &str) -> Result<WalkKind> {
    match s {
        "classical" => Ok(WalkKind::Classical),
        "quantum" => Ok(WalkKind::Quantum),
        other => Err(Error::Parse(format!("unknown walk kind {other:?}"))),
    }
}

/// Reads either layout, detected from the header.
pub fn parse_series_csv(text: &str) -> Result<Vec<SeriesPoint>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers()?.iter().map(str::to_owned).collect();
    let with_kind = header.first().map(String::as_str) == Some("kind");
    let off = usize::from(with_kind);
    if header.get(off).map(String::as_str) != Some("t") {
        return Err(Error::Parse(format!("series header must contain t, got {header:?}")));
    }
    let long = header[off + 1..] == ["k", "probability"];
    let mut points: Vec<SeriesPoint> = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let kind = if with_kind { Some(parse_kind(&rec[0])?) } else { None };
        let time = parse_f64(&rec[off])?;
        if long {
            let k = parse_usize(&rec[off + 1])?;
            let p = parse_f64(&rec[off + 2])?;
            let continues = points
                .last()
                .is_some_and(|last| last.kind == kind && last.time == time && last.values.len() + 1 == k);
            if continues {
                points.last_mut().unwrap().values.push(p);
            } else if k == 1 {
                points.push(SeriesPoint { kind, time, values: vec![p] });
            } else {
                return Err(Error::Parse(format!("node {k} out of sequence at t={time}")));
            }
        } else {
            let values = (off + 1..rec.len()).map(|c| parse_f64(&rec[c])).collect::<Result<_>>()?;
            points.push(SeriesPoint { kind, time, values });
        }
    }
    Ok(points)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub generation: u32,
    pub source: usize,
    pub snapshots: Vec<TransitionSnapshot>,
}

// ---------------------------------------------------------------- limits

/// `j,k,chi` for every source `j` and target `k`.
pub fn write_chi_csv(chi: &LimitingMatrix, w: impl Write) -> Result<()> {
    let n = chi.order();
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["j", "k", "chi"])?;
    for j in 1..=n {
        for k in 1..=n {
            out.write_record([j.to_string(), k.to_string(), format_probability(chi.get(k, j))])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn parse_chi_csv(text: &str) -> Result<LimitingMatrix> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    expect_header(&mut rd, &["j", "k", "chi"])?;
    let mut triples = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        triples.push((parse_usize(&rec[0])?, parse_usize(&rec[1])?, parse_f64(&rec[2])?));
    }
    let n = (triples.len() as f64).sqrt().round() as usize;
    if n * n != triples.len() {
        return Err(Error::Parse(format!("{} chi rows is not a square count", triples.len())));
    }
    let mut m = DMatrix::from_element(n, n, f64::NAN);
    for (j, k, v) in triples {
        if j == 0 || k == 0 || j > n || k > n {
            return Err(Error::Parse(format!("chi index ({j}, {k}) outside 1..={n}")));
        }
        m[(k - 1, j - 1)] = v;
    }
    if m.iter().any(|v| v.is_nan()) {
        return Err(Error::Parse("chi table has missing entries".into()));
    }
    LimitingMatrix::from_entries(m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitDocument {
    pub generation: u32,
    /// `chi[j - 1][k - 1] = χ(k, j)`: one array per source.
    pub chi: Vec<Vec<f64>>,
    pub report: Option<ClusterReport>,
}

impl LimitDocument {
    pub fn new(generation: u32, chi: &LimitingMatrix, report: Option<ClusterReport>) -> Self {
        Self {
            generation,
            chi: (1..=chi.order()).map(|j| chi.column(j)).collect(),
            report,
        }
    }
}

pub fn cluster_report_to_json(report: &ClusterReport) -> String {
    serde_json::to_string_pretty(report).expect("serializable") + "\n"
}

pub fn cluster_report_from_json(text: &str) -> Result<ClusterReport> {
    Ok(serde_json::from_str(text)?)
}
