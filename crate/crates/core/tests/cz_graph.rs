mod common;

use clifford_core::graph::{self, intersection_weights, reference_graph, CzGraph};
use clifford_core::{gates, GateMatrix, OrbitId};

#[test]
fn weights_are_zero_or_512() {
    let g = &common::data().graph;
    assert_eq!(g.node_count(), 20);
    for i in 0..20 {
        assert_eq!(g.weights()[i][i], 0);
        assert_eq!(g.degree(i), 9);
        assert_eq!(g.weights()[i].iter().sum::<u32>(), 4608);
        for j in 0..20 {
            assert!(matches!(g.weights()[i][j], 0 | 512));
            assert_eq!(g.weights()[i][j], g.weights()[j][i]);
        }
    }
    assert_eq!(g.edges().len(), 90);
}

#[test]
fn identity_orbit_reaches_nine_new_orbits() {
    let d = common::data();
    let o1 = OrbitId(1);
    let reached: Vec<OrbitId> = d.atlas.orbits().filter(|&o| d.graph.weight(o1, o) == 512).collect();
    assert_eq!(reached, (2..=10).map(OrbitId).collect::<Vec<_>>());
}

#[test]
fn distance_profile_from_identity_orbit() {
    let g = &common::data().graph;
    let dist: Vec<u32> = g.distances(0).into_iter().map(Option::unwrap).collect();
    let mut profile = [0; 4];
    for d in &dist {
        profile[*d as usize] += 1;
    }
    assert_eq!(profile, [1, 9, 9, 1]);
    assert_eq!(dist.iter().max(), Some(&3));
}

#[test]
fn matches_published_diagram() {
    let d = common::data();
    let labels = d.reference_labels().expect("isomorphism onto the reference diagram");
    assert_eq!(labels[0], OrbitId(1));
    assert_eq!(labels[19], OrbitId(20));
    let r = reference_graph();
    for a in 0..20 {
        for b in 0..20 {
            let ours = d.graph.weights()[a][b] > 0;
            assert_eq!(ours, r.has_edge(labels[a].index(), labels[b].index()));
        }
    }
    // labels form a bijection
    let mut sorted = labels.clone();
    sorted.sort();
    assert_eq!(sorted, (1..=20).map(OrbitId).collect::<Vec<_>>());
}

#[test]
fn cnot_gives_the_identical_graph() {
    let d = common::data();
    for gate in [gates::cnot_target1(), gates::cnot_target2()] {
        let g = CzGraph::build(&d.atlas, &d.c2, &gate).unwrap();
        assert_eq!(g.weights(), d.graph.weights());
    }
}

#[test]
fn local_gate_probe_is_degenerate() {
    let d = common::data();
    let local = GateMatrix::tensor(&gates::h(), &gates::p()).unwrap();
    let w = intersection_weights(&d.atlas, &d.c2, &local).unwrap();
    assert_eq!(w[0][0], 4608);
    for (i, row) in w.iter().enumerate() {
        assert_eq!(row[i], 4608);
    }
    assert!(CzGraph::build(&d.atlas, &d.c2, &local).is_err());
}

#[test]
fn dot_export() {
    let d = common::data();
    let dot = graph::to_dot(&d.graph, &d.atlas);
    assert!(dot.starts_with("graph cz_orbits {"));
    assert_eq!(dot.matches(" -- ").count(), 90);
    assert_eq!(dot.matches("[weight=512]").count(), 90);
    for n in 1..=20 {
        assert!(dot.contains(&format!("O{n};")), "O{n}");
    }
    assert!(dot.contains("{ rank=same; O20; } // layer 3"));
}

#[test]
fn json_export() {
    let d = common::data();
    let labels = d.reference_labels().unwrap();
    let text = graph::to_json(&d.graph, &d.atlas, Some(&labels));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let nodes = v["nodes"].as_array().unwrap();
    let edges = v["edges"].as_array().unwrap();
    assert_eq!(nodes.len(), 20);
    assert_eq!(edges.len(), 90);
    assert!(edges.iter().all(|e| e["weight"] == 512));
    assert!(nodes.iter().all(|n| n["size"] == 4608 && n["paper_label"].is_u64()));
    assert_eq!(nodes[0]["layer"], 0);
    assert_eq!(nodes[19]["paper_label"], 20);
    let plain = graph::to_json(&d.graph, &d.atlas, None);
    assert!(!plain.contains("paper_label"));
}
