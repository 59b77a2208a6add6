mod classical_equipartition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/classical_equipartition.rs"));
}

#[test]
fn classical_equipartition_runs() {
    classical_equipartition::run_example().expect("classical_equipartition example should run");
}

mod closed_forms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/closed_forms.rs"));
}

#[test]
fn closed_forms_runs() {
    closed_forms::run_example().expect("closed_forms example should run");
}

mod generate_network {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generate_network.rs"));
}

#[test]
fn generate_network_runs() {
    generate_network::run_example().expect("generate_network example should run");
}

mod limiting_clusters {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/limiting_clusters.rs"));
}

#[test]
fn limiting_clusters_runs() {
    limiting_clusters::run_example().expect("limiting_clusters example should run");
}

mod localization {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/localization.rs"));
}

#[test]
fn localization_runs() {
    localization::run_example().expect("localization example should run");
}

mod orbit_analysis {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/orbit_analysis.rs"));
}

#[test]
fn orbit_analysis_runs() {
    orbit_analysis::run_example().expect("orbit_analysis example should run");
}

mod quantum_evolution {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quantum_evolution.rs"));
}

#[test]
fn quantum_evolution_runs() {
    quantum_evolution::run_example().expect("quantum_evolution example should run");
}

mod revivals {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/revivals.rs"));
}

#[test]
fn revivals_runs() {
    revivals::run_example().expect("revivals example should run");
}

mod spectrum {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectrum.rs"));
}

#[test]
fn spectrum_runs() {
    spectrum::run_example().expect("spectrum example should run");
}
