use std::sync::Arc;

use rank2::algebra::Prime;
use rank2::catalog::{GroupModel, GroupSpec};
use rank2::quillen::{Element, QuillenRing};
use rank2::transfer::{
    frobenius_reciprocity, out_idempotents, transfer_of_restriction, transferred_d2_rank, verify_idempotents,
    BisetOperator, TransferEngine,
};

fn engine(spec: &str, p: u32, cutoff: u32) -> TransferEngine {
    let p = Prime::new(p).unwrap();
    let m = GroupModel::build(&GroupSpec::parse(spec).unwrap(), p).unwrap();
    TransferEngine::new(Arc::new(QuillenRing::new(Arc::new(m), cutoff)))
}

#[test]
fn class_transfer_formula_all_classes() {
    for p in [3u32, 5] {
        let e = engine("C:3", p, 4 * p * p);
        let n = (p - 1) as usize;
        for class in 0..=p as usize {
            for i in 0..=n {
                let mut f = vec![0u32; n + 1];
                f[i] = 1;
                // u^i y^{p-1-i}
                let z = e.transfer_from_class(class, &f).unwrap();
                let expected = if i < n {
                    Element::zero(p as usize + 1, 2 * n as u32)
                } else if class == p as usize {
                    e.ring.eval_str(&format!("y1^{n} - C")).unwrap()
                } else {
                    e.ring.eval_str(&format!("({class}*y1 + y2)^{n} - C")).unwrap()
                };
                assert_eq!(z, expected, "p={p} class={class} i={i}");
            }
        }
    }
}

#[test]
fn operator_witnesses() {
    for p in [3u32, 5] {
        let e = engine("C:3", p, 4 * p * p);
        let m = e.model();
        let pr = e.p();
        let phi1 = BisetOperator::descriptor(m, "Phi1").unwrap();
        let phi2 = BisetOperator::descriptor(m, "Phi2").unwrap();
        let n = p - 1;
        let c = e.ring.eval_str("C").unwrap();
        let diff = phi1.clone().sub(pr, phi2);
        assert_eq!(e.apply(&diff, &c).unwrap(), e.ring.eval_str(&format!("y2^{n} - y1^{n}")).unwrap());
        let y = e.ring.eval_str(&format!("y1^{n}")).unwrap();
        assert_eq!(e.apply(&phi1, &y).unwrap(), e.ring.eval_str(&format!("y2^{n} - C")).unwrap());
    }
}

#[test]
fn m121_swap() {
    for p in [3u32, 5] {
        let e = engine("M:1,2,1", p, 4 * p * p);
        let phi = BisetOperator::descriptor(e.model(), "swap").unwrap();
        let n = p - 1;
        for j in 1..=3 {
            let x = e.ring.eval_str(&format!("y^{n}*(y*v)^{j}")).unwrap();
            assert_eq!(e.apply(&phi, &x).unwrap(), x.scale(e.p(), p - 1), "p={p} j={j}");
        }
    }
}

#[test]
fn g_family_operators() {
    let g = engine("G:5,2", 5, 100);
    let phi = BisetOperator::descriptor(g.model(), "Phi").unwrap();
    for q in 0..4 {
        let x = g.ring.eval_str(&format!("v^{q}*y1^4")).unwrap();
        assert_eq!(g.apply(&phi, &x).unwrap(), x.scale(g.p(), 4), "q={q}");
    }
    let g4 = engine("G:4,2", 5, 120);
    let two = BisetOperator::descriptor_at(g4.model(), "Phi", 1).unwrap();
    let inner = g4.inner.clone().unwrap();
    for q in 1..3 {
        let x = inner.eval_str(&format!("(y1*v)^{q}*y1^4")).unwrap();
        assert_eq!(g4.apply(&two, &x).unwrap(), x.scale(g4.p(), 4), "q={q}");
    }
}

#[test]
fn idempotent_families() {
    for (spec, p) in [("C:3", 3u32), ("C:3", 5), ("A", 3), ("M:1,2,1", 5), ("G:5,2", 5), ("G:4,1", 5)] {
        let e = engine(spec, p, 4 * p * p);
        let fam = out_idempotents(e.model()).unwrap();
        for a in verify_idempotents(&e, &fam, 4 * p * p).unwrap() {
            assert!(a.pass, "{spec} p={p}: {} ({})", a.name, a.detail);
        }
    }
}

#[test]
fn reciprocity_and_restriction() {
    for (spec, p) in [("C:3", 3u32), ("C:3", 5), ("M:1,2,1", 3)] {
        let e = engine(spec, p, 4 * p * p);
        assert!(frobenius_reciprocity(&e, 0, 6).unwrap().pass, "{spec}");
        assert!(transfer_of_restriction(&e, 2 * p * p).unwrap().pass, "{spec}");
    }
}

#[test]
fn d2_rank() {
    for p in [3u32, 5] {
        let e = engine("C:3", p, 2 * p * (p + 2) * (p - 1));
        for q in 1..p {
            let c = transferred_d2_rank(&e, q).unwrap();
            assert_eq!(c.rank, c.expected_rank, "p={p} q={q}");
            assert!(c.in_span, "p={p} q={q}");
        }
    }
}
