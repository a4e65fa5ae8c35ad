use epg_core::Status;
use epg_wasm::{graph, stats, verdicts, GRAPH_CAP};

#[test]
fn stats_match_known_values() {
    let s = stats("C(4)xC(2)").unwrap();
    assert_eq!((s.order, s.exp, s.n_g), (8, 4, 6));
    assert_eq!(s.neighborhood_sizes, vec![[2, 2], [4, 4], [6, 1]]);
    let s = stats(" H(3) ").unwrap();
    assert_eq!((s.n_g, s.components, s.largest_component), (3, 13, 2));
    assert_eq!(stats("Q(16)").unwrap().universal, 1);
}

#[test]
fn graph_of_d8() {
    let g = graph("D(8)").unwrap();
    assert_eq!(g.nodes.len(), 7);
    assert_eq!(g.edges.len(), 3);
    let mut components: Vec<u32> = g.nodes.iter().map(|n| n.component).collect();
    components.dedup();
    assert_eq!(components.len(), 5);
    let json = serde_json::to_string(&g).unwrap();
    assert!(json.starts_with("{\"label\":\"D(8)\",\"nodes\":["));
}

#[test]
fn graph_respects_cap() {
    assert!(graph(&format!("C({})", GRAPH_CAP)).is_ok());
    let err = graph(&format!("C({})", 2 * GRAPH_CAP)).unwrap_err();
    assert!(err.contains("512"), "{err}");
}

#[test]
fn verdicts_cover_every_claim() {
    let v = verdicts("SD(32)").unwrap();
    assert_eq!(v.len(), 10);
    assert!(v.iter().all(|r| r.status != Status::Fail));
    assert!(verdicts("D(12)").is_err());
    assert!(verdicts("C(4)x").is_err());
}
