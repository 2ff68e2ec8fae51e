use pseudolinear::forbidden::{classify_config, extract_forbidden, recheck_standalone, JunctionKind};
use pseudolinear::ingest::fixtures::{self, all_fixtures};
use pseudolinear::ingest::{load_drawing, DrawingDoc};
use pseudolinear::kn::{crosscheck_b_configuration, find_b_configuration, validate_good_drawing};
use pseudolinear::obstruction::{brute_force_obstruction, find_obstruction, SearchOptions};
use pseudolinear::stringset::StringSet;

fn sigma(doc: DrawingDoc) -> StringSet {
    load_drawing(&doc).unwrap().sigma
}

fn rainbows(doc: DrawingDoc) -> Option<usize> {
    find_obstruction(&sigma(doc)).unwrap().map(|r| r.rainbow_count())
}

#[test]
fn obstruction_fixtures() {
    assert_eq!(rainbows(fixtures::fix_b()), Some(2));
    assert_eq!(rainbows(fixtures::fix_w()), Some(2));
    assert_eq!(rainbows(fixtures::fix_tri()), Some(0));
    assert_eq!(rainbows(fixtures::fix_dot_chain()), Some(1));
    assert_eq!(rainbows(fixtures::fix_k4x_out()), Some(2));
}

#[test]
fn pseudolinear_fixtures() {
    for doc in [
        fixtures::fix_x(),
        fixtures::fix_par(),
        fixtures::fix_k4x_in(),
        fixtures::fix_k4_planar(),
    ] {
        assert_eq!(rainbows(doc), None);
    }
}

#[test]
fn polynomial_search_matches_oracle_on_fixtures() {
    for (name, doc) in all_fixtures() {
        let s = sigma(doc);
        let a = find_obstruction(&s).unwrap().is_some();
        let b = brute_force_obstruction(&s, 64).unwrap().is_some();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn b_configuration_on_k4() {
    let l = load_drawing(&fixtures::fix_k4x_out()).unwrap();
    let gd = validate_good_drawing(&l.sigma, l.graph_vertices.as_ref().unwrap()).unwrap();
    let b = find_b_configuration(&gd).unwrap().expect("B configuration");
    assert_eq!(b.cycle.rainbow_count(), 2);
    assert_eq!(b.cycle.cycle.len(), 3);
    for doc in [fixtures::fix_k4x_in(), fixtures::fix_k4_planar()] {
        let l = load_drawing(&doc).unwrap();
        let gd = validate_good_drawing(&l.sigma, l.graph_vertices.as_ref().unwrap()).unwrap();
        assert!(find_b_configuration(&gd).unwrap().is_none());
    }
}

#[test]
fn b_configuration_matches_obstruction_on_good_drawings() {
    let mut with_b = 0;
    for (name, doc) in all_fixtures() {
        let l = load_drawing(&doc).unwrap();
        let Some(gv) = l.graph_vertices else { continue };
        let gd = validate_good_drawing(&l.sigma, &gv).unwrap();
        let x = crosscheck_b_configuration(&gd, SearchOptions::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Some(b) = &x.b {
            assert_eq!(b.cycle.rainbow_count(), 2, "{name}");
            with_b += 1;
        }
    }
    assert!(with_b >= 4);
}

#[test]
fn forbidden_configurations() {
    let cfg = extract_forbidden(&sigma(fixtures::fix_k4x_out()), 16).unwrap();
    assert_eq!(classify_config(&cfg), (2, 3));
    assert!(recheck_standalone(&cfg).unwrap());

    let cfg = extract_forbidden(&sigma(fixtures::fix_tri()), 16).unwrap();
    assert_eq!(classify_config(&cfg), (0, 3));
    assert!(cfg.junctions.iter().all(|j| j.kind == JunctionKind::InteriorCrossing));
    assert!(cfg.strings.iter().all(|s| s.extended == [true, true]));
    assert!(recheck_standalone(&cfg).unwrap());

    let cfg = extract_forbidden(&sigma(fixtures::fix_dot_chain()), 16).unwrap();
    assert_eq!(classify_config(&cfg), (1, 3));
    assert_eq!(cfg.junctions.iter().filter(|j| j.kind == JunctionKind::Dot).count(), 1);
    assert!(recheck_standalone(&cfg).unwrap());

    let cfg = extract_forbidden(&sigma(fixtures::fix_w()), 16).unwrap();
    assert!(cfg.rainbows <= 2);
    assert!(recheck_standalone(&cfg).unwrap());
}
