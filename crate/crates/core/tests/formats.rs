use apollonian_walk::io::{self, SeriesLayout};
use apollonian_walk::prelude::*;
use proptest::prelude::*;

#[test]
fn networks_round_trip_through_both_formats() {
    for g in 0..=5 {
        let net = Network::generate(g).unwrap();
        assert_eq!(io::network_from_edge_list(&io::edge_list_string(&net)).unwrap(), net);
        assert_eq!(io::network_from_json(&io::network_to_json(&net)).unwrap(), net);
    }
}

#[test]
fn tampered_json_is_rejected() {
    let net = Network::generate(2).unwrap();
    let text = io::network_to_json(&net).replacen("\"gen\": 2", "\"gen\": 1", 1);
    assert!(io::network_from_json(&text).is_err());
}

#[test]
fn spectrum_and_chi_round_trip_bit_exactly() {
    let net = Network::generate(4).unwrap();
    let s = eigendecompose(&net.laplacian()).unwrap();
    let mut buf = Vec::new();
    io::write_spectrum_csv(&s, &mut buf).unwrap();
    let values = io::parse_spectrum_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
    assert_eq!(values, s.eigenvalues());

    let mut buf = Vec::new();
    io::write_eigenvectors_csv(&s, &mut buf).unwrap();
    let q = io::parse_eigenvectors_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
    assert_eq!(&q, s.eigenvectors());

    let chi = limiting_matrix(&s, &group_degenerate_default(&s)).unwrap();
    let mut buf = Vec::new();
    io::write_chi_csv(&chi, &mut buf).unwrap();
    let back = io::parse_chi_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
    assert_eq!(back.entries(), chi.entries());
}

#[test]
fn cluster_report_round_trips() {
    let net = Network::generate(3).unwrap();
    let s = eigendecompose(&net.laplacian()).unwrap();
    let chi = limiting_matrix(&s, &group_degenerate_default(&s)).unwrap();
    let (clustering, consistency) = analyze_source(&net, &chi, 9, 1e-9).unwrap();
    let report = ClusterReport::new(&clustering, &consistency);
    let text = io::cluster_report_to_json(&report);
    assert_eq!(io::cluster_report_from_json(&text).unwrap(), report);
}

fn snapshots() -> impl Strategy<Value = Vec<TransitionSnapshot>> {
    (1usize..6, 1usize..5).prop_flat_map(|(n, steps)| {
        prop::collection::vec(
            (any::<bool>(), prop::collection::vec(0.0f64..1.0, n)),
            steps,
        )
        .prop_map(move |rows| {
            rows.into_iter()
                .enumerate()
                .map(|(i, (quantum, values))| TransitionSnapshot {
                    source: 1,
                    time: 0.137 * i as f64,
                    kind: if quantum { WalkKind::Quantum } else { WalkKind::Classical },
                    values,
                })
                .collect()
        })
    })
}

proptest! {
    #[test]
    fn series_csv_round_trips(snaps in snapshots(), wide in any::<bool>(), with_kind in any::<bool>()) {
        let layout = if wide { SeriesLayout::Wide } else { SeriesLayout::Long };
        let mut buf = Vec::new();
        io::write_series_csv(&snaps, layout, with_kind, &mut buf).unwrap();
        let back = io::parse_series_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back.len(), snaps.len());
        for (p, s) in back.iter().zip(&snaps) {
            prop_assert_eq!(p.time, s.time);
            prop_assert_eq!(&p.values, &s.values);
            prop_assert_eq!(p.kind, with_kind.then_some(s.kind));
        }
    }
}
