use std::sync::Arc;

use rank2::algebra::Prime;
use rank2::catalog::{GroupModel, GroupSpec};
use rank2::quillen::QuillenRing;
use rank2::splitting::{catalog, recombine, verify_decomposition, SummandLabel};
use rank2::transfer::TransferEngine;

fn engine(spec: &str, p: u32, cutoff: u32) -> TransferEngine {
    let p = Prime::new(p).unwrap();
    let m = GroupModel::build(&GroupSpec::parse(spec).unwrap(), p).unwrap();
    TransferEngine::new(Arc::new(QuillenRing::new(Arc::new(m), cutoff)))
}

#[test]
fn decompositions_verify() {
    let mut cases = Vec::new();
    for p in [3u32, 5] {
        for s in ["A", "M:1,2,1", "M:1,3,2", "M:2,3,2", "Mns:1,3,2,2", "C:3", "C:4"] {
            cases.push((s, p, 4 * p * p));
        }
    }
    cases.extend([("G:4,2", 5, 100), ("G:5,2", 5, 100), ("C:3", 7, 98), ("C:4", 7, 98)]);
    let mut failures = Vec::new();
    for (s, p, cut) in cases {
        let e = engine(s, p, cut);
        let r = verify_decomposition(&e, cut).unwrap();
        for c in r.checks.iter().filter(|c| !c.pass) {
            failures.push(format!("{s} p={p}: {} ({})", c.name, c.detail));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn recombination_examples() {
    let p7 = Prime::new(7).unwrap();
    let r = recombine(&GroupSpec::CGroup { r: 4 }, &SummandLabel::X { i: 5, q: Some(2) }, p7, 0).unwrap();
    println!("{r:?}");
    assert!(r.solutions.contains(&vec!["X_{5,2}(E)".to_string(), "L(2,1)".to_string()]) || r.solutions.iter().any(|s| {
        let mut s = s.clone();
        s.sort();
        s == vec!["L(2,1)".to_string(), "X_{5,2}(E)".to_string()]
    }));
    let p5 = Prime::new(5).unwrap();
    for spec in [GroupSpec::CGroup { r: 4 }, GroupSpec::GGroup { r: 5, e: 2 }, GroupSpec::GGroup { r: 4, e: 2 }] {
        for d in catalog(&spec, p5).iter().filter(|d| d.label.is_dominant()) {
            let r = recombine(&spec, &d.label, p5, 0).unwrap_or_else(|e| panic!("{spec} {}: {e}", d.label));
            let g00 = matches!(spec, GroupSpec::GGroup { .. }) && d.label == (SummandLabel::X { i: 0, q: Some(0) });
            assert!(r.uses_l10.iter().all(|c| *c == g00), "{spec} {}: {r:?}", d.label);
        }
    }
}

#[test]
fn metacyclic_recombination() {
    for p in [3u32, 5] {
        let pr = Prime::new(p).unwrap();
        for s in ["M:1,2,1", "M:2,3,2", "M:1,3,2"] {
            let spec = GroupSpec::parse(s).unwrap();
            for i in 0..p - 1 {
                let r = recombine(&spec, &SummandLabel::X { i, q: None }, pr, 0).unwrap();
                assert_ne!(r.filtered, Some(false), "{s} {i}");
            }
        }
    }
}

#[test]
fn displayed_labels_parse_back() {
    let p = Prime::new(5).unwrap();
    for s in ["A", "M:1,2,1", "Mns:1,3,2,2", "C:4", "G:5,2"] {
        for d in catalog(&GroupSpec::parse(s).unwrap(), p) {
            assert_eq!(SummandLabel::parse(&d.label.to_string()).unwrap(), d.label, "{s} {}", d.label);
        }
    }
    assert_eq!(SummandLabel::parse("X:0,1").unwrap(), SummandLabel::parse("X_{0,1}").unwrap());
    assert!(SummandLabel::parse("L(3,0)").is_err());
}
