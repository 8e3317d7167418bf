//! One PASS/FAIL line per acceptance criterion. Arithmetic is exact throughout.
//!
//! Criteria 6 and 11 are red: the computed values disagree with the stated ones
//! (see the notes printed beside them). They are reported as FAIL and do not
//! change the exit status; any other failure does.

use std::sync::Arc;
use std::time::Instant;

use rank2::algebra::Prime;
use rank2::catalog::{GroupModel, GroupSpec};
use rank2::nilpotent::{additive_audit, weight_consistency};
use rank2::quillen::{audit_model, QuillenRing};
use rank2::report::{dickson_checks, label_checks, named_examples, rank_checks, transfer_oracles, CheckRecord, Status};
use rank2::splitting::{catalog, recombine, verify_decomposition, SummandLabel};
use rank2::transfer::{out_idempotents, verify_idempotents, BisetOperator, TransferEngine};

const KNOWN_RED: [u32; 2] = [6, 11];

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn engine(spec: &str, p: u32, cutoff: u32) -> TransferEngine {
    let m = GroupModel::build(&GroupSpec::parse(spec).unwrap(), prime(p)).unwrap();
    TransferEngine::new(Arc::new(QuillenRing::new(Arc::new(m), cutoff)))
}

fn models(p: u32) -> Vec<String> {
    let mut v: Vec<String> = ["A", "M:1,2,1", "M:1,3,2", "M:2,3,2", "Mns:1,3,2,2", "C:3", "C:4"].map(String::from).to_vec();
    if p >= 5 {
        let pr = prime(p);
        let nr = (2..p).find(|e| pr.pow(*e, ((p - 1) / 2) as u64) == p - 1).unwrap();
        for r in [4, 5] {
            v.extend([format!("G:{r},1"), format!("G:{r},{nr}")]);
        }
    }
    v
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn failing(records: &[CheckRecord], tag: &str) -> Vec<String> {
    records.iter().filter(|c| c.status == Status::Fail).map(|c| format!("{tag}: {} ({})", c.name, c.detail)).collect()
}

fn c1_relations() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    let mut slowest = 0u128;
    for p in [3, 5, 7] {
        for s in models(p) {
            let t = Instant::now();
            let m = GroupModel::build(&GroupSpec::parse(&s).unwrap(), prime(p)).unwrap();
            for a in audit_model(&m) {
                n += 1;
                if !a.pass {
                    bad.push(format!("{s} p={p}: {}", a.name));
                }
            }
            let ms = t.elapsed().as_millis();
            slowest = slowest.max(ms);
            if ms >= 1000 {
                bad.push(format!("{s} p={p}: {ms} ms"));
            }
        }
    }
    let expected = [
        ("C:3", vec!["d2 = 0", "C y1 = y1^p", "C y2 = y2^p", "C^2 ="]),
        ("G:4,1", vec!["y1 w = 0", "w^2 = y2^p w", "C w = y2^(p-1) w"]),
    ];
    for (s, rels) in expected {
        let m = GroupModel::build(&GroupSpec::parse(s).unwrap(), prime(5)).unwrap();
        let names: Vec<String> = audit_model(&m).into_iter().map(|a| a.name).collect();
        for r in rels {
            if !names.iter().any(|x| x.contains(r)) {
                bad.push(format!("{s} audit lacks relation {r}"));
            }
        }
    }
    outcome(bad, format!("{n} relation audits, slowest model {slowest} ms"))
}

fn c2_transfer() -> Outcome {
    let mut recs = Vec::new();
    for (s, p) in [("C:3", 3), ("C:3", 5), ("M:1,2,1", 3), ("M:1,2,1", 5), ("G:5,1", 5), ("G:5,2", 5)] {
        let e = engine(s, p, 4 * p * p);
        let r = transfer_oracles(&e).unwrap();
        assert!(!r.is_empty(), "{s}");
        recs.extend(r.into_iter().map(|c| (format!("{s} p={p}"), c)));
    }
    let bad = recs.iter().filter(|(_, c)| c.status != Status::Pass).map(|(t, c)| format!("{t}: {}", c.detail)).collect();
    outcome(bad, format!("{} identities, all p+1 classes and all i <= p-1", recs.len()))
}

fn c3_dickson() -> Outcome {
    let mut bad = Vec::new();
    for p in [3, 5, 7] {
        bad.extend(failing(&dickson_checks(prime(p)), &format!("p={p}")));
    }
    outcome(bad, "generator invariance at p = 3, 5, 7; 48 elements at p = 3".into())
}

fn c4_labels() -> Outcome {
    let mut bad = Vec::new();
    for p in [3, 5, 7] {
        bad.extend(failing(&label_checks(prime(p)).unwrap(), &format!("p={p}")));
    }
    outcome(bad, "label(T-window i) = (p-1-i, i, 2i) for every i at p = 3, 5, 7".into())
}

fn c5_rank() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for p in [3, 5] {
        let cut = 2 * (p - 1) * (p + 2);
        let e = engine("C:3", p, cut);
        let r = rank_checks(&e, cut).unwrap();
        n += r.iter().filter(|c| c.status == Status::Pass).count();
        bad.extend(r.iter().filter(|c| c.status != Status::Pass).map(|c| format!("p={p}: {} ({})", c.name, c.detail)));
    }
    outcome(bad, format!("{n} ranks equal p+1 inside the stated span"))
}

fn c6_operators() -> Outcome {
    let mut bad = Vec::new();
    for p in [3u32, 5] {
        let e = engine("C:3", p, 4 * p * p);
        let m = e.model();
        let pr = e.p();
        let n = p - 1;
        let phi1 = BisetOperator::descriptor(m, "Phi1").unwrap();
        let phi2 = BisetOperator::descriptor(m, "Phi2").unwrap();
        let got = e.apply(&phi1.clone().sub(pr, phi2), &e.ring.eval_str("C").unwrap()).unwrap();
        let want = e.ring.eval_str(&format!("y1^{n} - y2^{n}")).unwrap();
        if got != want {
            bad.push(format!("p={p}: (Phi1-Phi2)(C) = {}, stated {}", got.display(m), want.display(m)));
        }
        let got = e.apply(&phi1, &e.ring.eval_str(&format!("y1^{n}")).unwrap()).unwrap();
        let want = e.ring.eval_str(&format!("y2^{n} - C")).unwrap();
        if got != want {
            bad.push(format!("p={p}: Phi1(y1^(p-1)) = {}, stated {}", got.display(m), want.display(m)));
        }
    }
    outcome(bad, "both witnesses reproduced at p = 3, 5".into())
}

fn decomposition_specs() -> Vec<(&'static str, u32, u32)> {
    let mut v = Vec::new();
    for p in [3u32, 5] {
        for s in ["A", "M:1,2,1", "M:1,3,2", "M:2,3,2", "Mns:1,3,2,2", "C:3", "C:4"] {
            v.push((s, p, 4 * p * p));
        }
    }
    for s in ["G:4,1", "G:4,2", "G:5,1", "G:5,2"] {
        v.push((s, 5, 100));
    }
    v.extend([("C:3", 7, 98), ("C:4", 7, 98)]);
    v
}

fn c7_c8_bookkeeping() -> (Outcome, Outcome, Vec<CheckRecord>) {
    let t = Instant::now();
    let mut book = Vec::new();
    let mut nonneg = Vec::new();
    let mut other = Vec::new();
    let mut named = Vec::new();
    let mut rows = 0;
    for (s, p, cut) in decomposition_specs() {
        let e = engine(s, p, cut);
        let r = verify_decomposition(&e, cut).unwrap();
        rows += r.table.len();
        for c in &r.checks {
            let tag = format!("{s} p={p}: {} ({})", c.name, c.detail);
            match (c.anchor.as_str(), c.pass) {
                (_, true) => {}
                ("global bookkeeping", false) => book.push(tag),
                ("summand multiplicities", false) => nonneg.push(tag),
                _ => other.push(tag),
            }
        }
        named.extend(named_examples(&e.ring.model.spec, prime(p)).unwrap());
    }
    let secs = t.elapsed().as_secs_f64();
    if secs >= 60.0 {
        book.push(format!("took {secs:.1} s"));
    }
    book.extend(other.iter().map(|o| format!("other check: {o}")));
    let n = decomposition_specs().len();
    (
        outcome(book, format!("{n} specs, {rows} degree rows, all element-level checks green, {secs:.1} s")),
        outcome(nonneg, format!("every description of the {n} specs")),
        named,
    )
}

fn c9_recombination() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    let p5 = prime(5);
    for s in ["C:4", "G:5,1", "G:5,2", "G:4,1", "G:4,2"] {
        let spec = GroupSpec::parse(s).unwrap();
        for d in catalog(&spec, p5).iter().filter(|d| d.label.is_dominant()) {
            n += 1;
            match recombine(&spec, &d.label, p5, 0) {
                Err(e) => bad.push(format!("{s} {}: {e}", d.label)),
                Ok(r) => {
                    let g00 = s.starts_with('G') && d.label == (SummandLabel::X { i: 0, q: Some(0) });
                    if r.uses_l10.iter().any(|c| *c != g00) {
                        bad.push(format!("{s} {}: c = 1 pattern violated", d.label));
                    }
                }
            }
        }
    }
    let r = recombine(&GroupSpec::CGroup { r: 4 }, &SummandLabel::X { i: 5, q: Some(2) }, prime(7), 0);
    let example = r.map(|r| {
        r.solutions.iter().any(|s| {
            let mut s = s.clone();
            s.sort();
            s == ["L(2,1)", "X_{5,2}(E)"]
        })
    });
    if example != Ok(true) {
        bad.push(format!("p=7 X_{{5,2}}(C(4)) example: {example:?}"));
    }
    outcome(bad, format!("{n} dominant summands at p = 5, c = 1 exactly at G X_{{0,0}}; p = 7 example reproduced"))
}

fn c10_idempotents() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for p in [3u32, 5] {
        for s in models(p) {
            let cut = 4 * p * p;
            let e = engine(&s, p, cut);
            let fam = out_idempotents(e.model()).unwrap();
            for a in verify_idempotents(&e, &fam, cut).unwrap() {
                n += 1;
                if !a.pass {
                    bad.push(format!("{s} p={p}: {} ({})", a.name, a.detail));
                }
            }
        }
    }
    outcome(bad, format!("{n} audits over every model at p = 3, 5"))
}

fn c11_nilpotent() -> Outcome {
    let mut bad = Vec::new();
    let p3 = prime(3);
    for s in ["M:2,3,2", "M:1,2,1"] {
        let a = additive_audit(&GroupSpec::parse(s).unwrap(), p3, 40).unwrap();
        if !a.pass {
            bad.push(format!("{}: {}", a.name, a.detail));
        }
    }
    let mut n = 0;
    for p in [3u32, 5] {
        let mut specs = vec!["C:3", "C:4", "M:1,2,1", "M:1,3,2", "M:2,3,2"];
        if p == 5 {
            specs.extend(["G:5,1", "G:5,2", "G:4,1", "G:4,2"]);
        }
        for s in specs {
            n += 1;
            let w = weight_consistency(&GroupSpec::parse(s).unwrap(), prime(p), 4 * p * p).unwrap();
            if !w.pass {
                bad.push(format!("p={p} {}: {}", w.name, w.detail));
            }
        }
    }
    outcome(bad, format!("additive audits at p = 3; {n} summand sums"))
}

fn c12_named(records: &[CheckRecord]) -> Outcome {
    let mut bad = failing(records, "named");
    for want in ["DA{1, YV}", "DA{1, a^2, a^4}", "X_{0,0}(G)"] {
        if !records.iter().any(|c| c.name.contains(want)) {
            bad.push(format!("example '{want}' not exercised"));
        }
    }
    outcome(bad, format!("{} series identities", records.len()))
}

fn note(k: u32) -> &'static str {
    match k {
        6 => {
            "the engine's (Phi1-Phi2)(C) is y2^(p-1) - y1^(p-1), the negative of the stated value; \
             Phi1(y1^(p-1)) matches, and the coset-sum transfer it rests on reproduces every class formula"
        }
        11 => {
            "for l = m - n, H^ev is additively (k[y] + k{c_1..c_(p-1)}) (x) k[v'] with |v'| = 2p, \
             which has dimension 2 in degree 4 at p = 3, not n + 1 = 3; the l > m - n case passes"
        }
        _ => "",
    }
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let timed = |k: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome, results: &mut Vec<(u32, &str, Outcome, f64)>| {
        let t = Instant::now();
        let o = f();
        results.push((k, name, o, t.elapsed().as_secs_f64()));
    };
    timed(1, "relation audits", &mut c1_relations, &mut results);
    timed(2, "transfer oracle", &mut c2_transfer, &mut results);
    timed(3, "Dickson invariance", &mut c3_dickson, &mut results);
    timed(4, "T-window labels", &mut c4_labels, &mut results);
    timed(5, "transferred d2 rank", &mut c5_rank, &mut results);
    timed(6, "operator witnesses", &mut c6_operators, &mut results);
    let t = Instant::now();
    let (c7, c8, named) = c7_c8_bookkeeping();
    let dt = t.elapsed().as_secs_f64();
    results.push((7, "global bookkeeping", c7, dt));
    results.push((8, "per-copy nonnegativity", c8, 0.0));
    timed(9, "recombination", &mut c9_recombination, &mut results);
    timed(10, "idempotent suite", &mut c10_idempotents, &mut results);
    timed(11, "nilpotent classes", &mut c11_nilpotent, &mut results);
    timed(12, "named examples", &mut || c12_named(&named), &mut results);

    let mut unexpected = Vec::new();
    for (k, name, o, secs) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {k:>2} {tag} {name} [{secs:.2} s]: {}", o.detail);
        if !o.pass {
            if KNOWN_RED.contains(k) {
                println!("             note: {}", note(*k));
            } else {
                unexpected.push(*k);
            }
        }
        if o.pass && KNOWN_RED.contains(k) {
            println!("             note: listed as red but passed");
        }
    }
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!("acceptance: {passed}/{} criteria pass in {:.1} s", results.len(), start.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
