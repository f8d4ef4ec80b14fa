use ssgenus::genus::Exactness;
use ssgenus::report::{run_genus, EngineParams, Method, PaperStatus, Report, WitnessFile};
use ssgenus::{Error, GroupSpec, TripleSignature};

fn heuristic(seed: u64) -> EngineParams {
    EngineParams {
        heuristic: true,
        seed,
        ..EngineParams::default()
    }
}

fn round_trip(r: &Report) {
    let w = WitnessFile::from_json(&r.witness_file().to_json().unwrap()).unwrap();
    assert_eq!(w.verify().unwrap(), r.genus);
}

#[test]
fn d17_is_forced_by_its_quotient_and_cover() {
    let r = run_genus(GroupSpec::D(17), &heuristic(0)).unwrap();
    assert_eq!(r.triple, TripleSignature::new(2, 4, 6).unwrap());
    assert_eq!(r.exactness, Exactness::Exact);
    assert_eq!(r.method, Method::SandwichBound);
    assert_eq!(r.paper.status, PaperStatus::Match);
    assert!(r.notes.iter().any(|n| n.contains("S17")));
    assert!(r.notes.iter().any(|n| n.contains("B17")));
    round_trip(&r);
}

#[test]
fn large_b_is_an_upper_bound() {
    let r = run_genus(GroupSpec::B(9), &heuristic(0)).unwrap();
    assert_eq!(r.exactness, Exactness::UpperBound);
    for e in r.triple.entries() {
        assert_eq!(e % 2, 0, "{}", r.triple);
    }
    round_trip(&r);
}

#[test]
fn seeded_runs_repeat() {
    let a = run_genus(GroupSpec::Symmetric(14), &heuristic(7)).unwrap();
    let b = run_genus(
        GroupSpec::Symmetric(14),
        &EngineParams {
            jobs: 1,
            ..heuristic(7)
        },
    )
    .unwrap();
    assert_eq!((a.triple, &a.witness), (b.triple, &b.witness));
    round_trip(&a);
}

#[test]
fn exhaustive_beats_heuristic_within_threshold() {
    let r = run_genus(GroupSpec::B(5), &heuristic(0)).unwrap();
    assert_eq!(r.method, Method::Exhaustive);
    assert_eq!(r.genus, 289u32.into());
}

#[test]
fn too_large_without_heuristic() {
    let e = run_genus(GroupSpec::Symmetric(14), &EngineParams::default()).unwrap_err();
    assert!(matches!(e, Error::Capability(_)), "{e}");
}
