use pseudolinear::error::Error;
use pseudolinear::extension::{extend_to_arrangement, verify_arrangement, ExtendOptions, PseudolineArrangement};
use pseudolinear::ids::{End, HalfSeg};
use pseudolinear::ingest::fixtures;
use pseudolinear::ingest::{load_drawing, polylines_to_stringset, DrawingDoc, Polyline};
use pseudolinear::stringset::StringSet;

fn sigma(doc: DrawingDoc) -> StringSet {
    load_drawing(&doc).unwrap().sigma
}

fn extend(s: &StringSet) -> PseudolineArrangement {
    extend_to_arrangement(s, ExtendOptions::default()).unwrap().0
}

#[test]
fn parallel_segments_become_two_crossing_lines() {
    let s = sigma(fixtures::fix_par());
    let arr = extend(&s);
    assert!(verify_arrangement(&arr, Some(&s)).is_empty());
    assert_eq!(arr.wiring.len(), 2);
    for (_, seq) in &arr.wiring {
        assert_eq!(seq.len(), 1);
    }
    let wd = arr.wiring_diagram().unwrap();
    assert_eq!(wd.events.len(), 1);
    assert_eq!(wd.events[0].2, 2);
}

#[test]
fn k4_with_inner_crossing_gives_six_pseudolines() {
    let s = sigma(fixtures::fix_k4x_in());
    let arr = extend(&s);
    assert!(verify_arrangement(&arr, Some(&s)).is_empty());
    assert_eq!(arr.wiring.len(), 6);
    for (_, seq) in &arr.wiring {
        assert_eq!(seq.len(), 5);
    }
    // Every pair swaps exactly once in the sweep.
    let wd = arr.wiring_diagram().unwrap();
    let swaps: usize = wd.events.iter().map(|(_, _, k)| k * (k - 1) / 2).sum();
    assert_eq!(swaps, 15);
}

#[test]
fn extending_an_arrangement_changes_nothing() {
    let s = sigma(fixtures::fix_k4x_in());
    let arr = extend(&s);
    let (again, trace) = extend_to_arrangement(&arr.strings, ExtendOptions::default()).unwrap();
    assert_eq!(trace.counted_steps(), 0);
    assert_eq!(again.strings.fingerprint(), arr.strings.fingerprint());
}

#[test]
fn obstructed_input_is_refused() {
    let s = sigma(fixtures::fix_b());
    let err = extend_to_arrangement(&s, ExtendOptions::default()).unwrap_err();
    assert_eq!(err, Error::ObstructionPresent);
}

#[test]
fn verify_reports_double_crossing() {
    let lines = [
        Polyline::ints("a", &[(0, 0), (10, 0)]),
        Polyline::ints("b", &[(2, -2), (5, 2), (8, -2)]),
    ];
    let s = polylines_to_stringset(&lines).unwrap();
    let problems = verify_arrangement(&PseudolineArrangement::from_stringset(&s), None);
    assert!(problems.iter().any(|p| p.contains("crosses twice")), "{problems:?}");
}

#[test]
fn verify_reports_missing_crossing() {
    let s = sigma(fixtures::fix_par());
    let problems = verify_arrangement(&PseudolineArrangement::from_stringset(&s), None);
    assert!(problems.iter().any(|p| p.contains("does not cross")), "{problems:?}");
}

#[test]
fn verify_reports_tangency() {
    let mut s = StringSet::new();
    let p: Vec<_> = (0..5).map(|i| s.add_point(format!("p{i}"), None, vec![])).collect();
    let a = s.add_string("a", vec![p[0], p[4], p[1]]);
    let b = s.add_string("b", vec![p[2], p[4], p[3]]);
    let (ga, gb) = (s.string(a).segs.clone(), s.string(b).segs.clone());
    // The two sides of `a` are adjacent at p4, so `b` stays on one side.
    s.set_rotation(
        p[4],
        vec![
            HalfSeg::new(ga[0], End::To),
            HalfSeg::new(ga[1], End::From),
            HalfSeg::new(gb[0], End::To),
            HalfSeg::new(gb[1], End::From),
        ],
    );
    s.set_outer_marks(vec![HalfSeg::new(ga[0], End::From)]);
    let problems = verify_arrangement(&PseudolineArrangement::from_stringset(&s), None);
    assert!(problems.iter().any(|p| p.contains("non-transversal")), "{problems:?}");
}

#[test]
fn verify_reports_lost_original() {
    let s = sigma(fixtures::fix_x());
    let other = sigma(fixtures::fix_k4x_in());
    let arr = extend(&other);
    let problems = verify_arrangement(&arr, Some(&s));
    assert!(!problems.is_empty());
}
