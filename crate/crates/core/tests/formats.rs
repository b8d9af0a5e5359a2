//! Serialization round trips for graphs, codes and reports.

use hitlab_core::covering::CoveringCode;
use hitlab_core::families::shift;
use hitlab_core::hitting::h_of_graph;
use hitlab_core::{Graph, DEFAULT_CAP};

#[test]
fn graph_json_and_dimacs() {
    let (g, _) = shift::build_shift_graph(3).unwrap();
    assert_eq!(Graph::parse(&g.to_json()).unwrap(), g);
    assert_eq!(Graph::parse(&g.to_dimacs()).unwrap(), g);
    let text = "c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
    assert_eq!(Graph::parse(text).unwrap(), Graph::complete(3).unwrap());
    assert!(Graph::parse("p edge 2 1\ne 1 3\n").is_err());
    assert!(Graph::parse("{\"n\":2,\"edges\":[[0,0]]}").is_err());
}

#[test]
fn code_text() {
    let code = CoveringCode::new(6, 1, [0b000111, 0b111000, 0]).unwrap();
    let text = code.to_text();
    assert!(text.starts_with("m=6 t=1\n"));
    assert_eq!(CoveringCode::from_text(&text).unwrap(), code);
}

#[test]
fn hitting_report() {
    let (g, _) = shift::build_shift_graph(2).unwrap();
    let r = h_of_graph(&g, DEFAULT_CAP).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["size"], 3);
    assert_eq!(v["optimal"], true);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}
