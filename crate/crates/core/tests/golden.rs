use std::path::PathBuf;

use thrackle::combinatorial::verify_topological;
use thrackle::families_geometric::{build_butterfly, build_star_cycle};
use thrackle::families_topological::{build_c6, build_kyncl, build_t1, build_t2};
use thrackle::geometric::verify_geometric;
use thrackle::io::{parse, serialize, Drawing};

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn builders() -> Vec<(&'static str, Drawing)> {
    vec![
        ("butterfly.json", build_butterfly().into()),
        ("pentagram.json", build_star_cycle(2).into()),
        ("c6.json", build_c6().into()),
        ("kyncl.json", build_kyncl().into()),
        ("t1_n2.json", build_t1(2).unwrap().into()),
        ("t2_n2.json", build_t2(2).unwrap().into()),
    ]
}

#[test]
fn builders_match_frozen_bytes() {
    for (name, d) in builders() {
        assert_eq!(serialize(&d), golden(name), "{name}");
    }
}

#[test]
fn goldens_parse_and_round_trip() {
    for (name, _) in builders() {
        let text = golden(name);
        let d = parse(&text).unwrap();
        assert_eq!(serialize(&d), text, "{name}");
        let ok = match &d {
            Drawing::Geometric(g) => verify_geometric(g).unwrap().ok,
            Drawing::Topological(t) => verify_topological(t).unwrap().ok,
        };
        assert!(ok, "{name}");
    }
}

#[test]
fn golden_butterfly_has_ten_points() {
    match parse(&golden("butterfly.json")).unwrap() {
        Drawing::Geometric(g) => assert_eq!(g.points.len(), 10),
        _ => panic!("butterfly is geometric"),
    }
}

#[test]
fn plane_hexagon_is_not_a_thrackle() {
    match parse(&golden("plane_hexagon.json")).unwrap() {
        Drawing::Geometric(g) => assert!(!verify_geometric(&g).unwrap().ok),
        _ => panic!("hexagon is geometric"),
    }
}

#[test]
fn builds_are_deterministic() {
    let a: Vec<String> = builders().iter().map(|(_, d)| serialize(d)).collect();
    let b: Vec<String> = builders().iter().map(|(_, d)| serialize(d)).collect();
    assert_eq!(a, b);
}
