use std::collections::BTreeMap;

use serde::Serialize;

use super::descriptions::{catalog, e_h_series, thm67_case, y_rules, YRule};
use super::{Check, RingTag, SummandDescription, SummandLabel};
use crate::algebra::linalg::Echelon;
use crate::algebra::series::PoincareSeries;
use crate::catalog::{Family, GroupSpec};
use crate::error::Result;
use crate::quillen::{closed_form, Element};
use crate::transfer::{out_idempotents, BisetOperator, TransferEngine};

/// How membership in a materialized Y-summand is decided.
#[derive(Debug)]
pub enum Membership {
    Idempotent(BisetOperator),
    Span(BTreeMap<u32, Echelon>),
}

/// A Y-summand realized inside the ring: per-degree dimensions and a membership test.
#[derive(Debug)]
pub struct YSubspace {
    pub rule: YRule,
    /// dims[d] for every degree d <= cutoff.
    pub dims: Vec<i64>,
    pub membership: Membership,
}

impl YSubspace {
    pub fn contains(&self, engine: &TransferEngine, x: &Element) -> Result<bool> {
        match &self.membership {
            Membership::Idempotent(op) => Ok(engine.apply(op, x)? == *x),
            Membership::Span(m) => Ok(m.get(&x.degree).map(|e| e.contains(&x.to_vector())).unwrap_or(false)),
        }
    }
}

/// Generators of the H_{i,q} block of H*(E) as a k[C,V]-module.
fn h_generators(p: u32, i: u32, q: u32) -> Vec<String> {
    let m1 = p - 1;
    let mono = |a: u32, b: u32, e: u32| format!("y1^{a}*y2^{b}*v^{e}");
    let mut out: Vec<String> = (0..=i).map(|k| mono(i - k, k, q)).collect();
    if i > 0 && i < m1 {
        let k = m1 - i;
        let tq = (i + q) % m1;
        out.extend((0..=i).map(|m| mono(m1 - m, k + m, tq)));
    }
    out
}

/// Materialize every Y-summand of the model, where the family supports it.
pub fn materialize_y(engine: &TransferEngine, cutoff: u32) -> Result<Option<Vec<YSubspace>>> {
    let ring = &engine.ring;
    let model = &ring.model;
    let p = ring.p();
    let pp = p.get();
    let rules = y_rules(&model.spec, p);
    let mut out = Vec::new();
    match model.family() {
        Family::Abelian => return Ok(None),
        Family::EType => {
            let c = ring.eval_str("C")?;
            let big_v = ring.eval_str(&format!("v^{}", pp - 1))?;
            let (dc, dv) = (c.degree, big_v.degree);
            for rule in rules {
                let (i, q) = rule.index;
                let gens: Vec<Element> =
                    h_generators(pp, i, q).iter().map(|w| ring.eval_str(w)).collect::<Result<_>>()?;
                let mut dims = vec![0i64; cutoff as usize + 1];
                let mut spans = BTreeMap::new();
                for d in (0..=cutoff).step_by(2) {
                    let ncols = ring.ncomp() * (d as usize / 2 + 1);
                    let mut e = Echelon::new(p, ncols);
                    for g in gens.iter().filter(|g| g.degree <= d) {
                        let rest = d - g.degree;
                        let mut a = 0;
                        while a * dc <= rest {
                            if (rest - a * dc) % dv == 0 {
                                let b = (rest - a * dc) / dv;
                                let mut x = g.clone();
                                for _ in 0..a {
                                    x = x.mul(p, &c);
                                }
                                for _ in 0..b {
                                    x = x.mul(p, &big_v);
                                }
                                e.insert(x.to_vector());
                            }
                            a += 1;
                        }
                    }
                    dims[d as usize] = e.rank() as i64;
                    spans.insert(d, e);
                }
                out.push(YSubspace { rule, dims, membership: Membership::Span(spans) });
            }
        }
        Family::Metacyclic | Family::GType => {
            let fam = out_idempotents(model)?;
            for rule in rules {
                let e = fam.iter().find(|e| e.index == rule.index).expect("idempotent for every Y index");
                let mut dims = vec![0i64; cutoff as usize + 1];
                for d in (0..=cutoff).step_by(2) {
                    let m = engine.matrix(&e.op, d)?;
                    dims[d as usize] = Echelon::from_vectors(p, m.len(), m).rank() as i64;
                }
                out.push(YSubspace { rule, dims, membership: Membership::Idempotent(e.op.clone()) });
            }
        }
    }
    Ok(Some(out))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub degree: u32,
    pub hilbert: i64,
    pub summands: i64,
}

#[derive(Debug, Serialize)]
pub struct DecompositionReport {
    pub spec: String,
    pub p: u32,
    pub cutoff: u32,
    pub checks: Vec<Check>,
    pub table: Vec<DegreeRow>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn first_mismatch(a: &[i64], b: &[i64]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

fn describe_mismatch(a: &[i64], b: &[i64]) -> String {
    match first_mismatch(a, b) {
        None => "agree".into(),
        Some(d) => format!("degree {d}: {} vs {}", a[d], b[d]),
    }
}

fn find<'a>(cat: &'a [SummandDescription], l: &SummandLabel) -> Option<&'a SummandDescription> {
    cat.iter().find(|d| d.label == *l)
}

/// Run every series and element-level identity of the stated splitting.
pub fn verify_decomposition(engine: &TransferEngine, cutoff: u32) -> Result<DecompositionReport> {
    let ring = &engine.ring;
    let spec: &GroupSpec = &ring.model.spec;
    let p = ring.p();
    let pp = p.get();
    let cat = catalog(spec, p);
    let mut checks = Vec::new();
    let mut check = |name: &str, anchor: &str, pass: bool, detail: String| {
        checks.push(Check { name: name.into(), anchor: anchor.into(), pass, detail })
    };

    // (a) global bookkeeping, exactly and against the computed ring
    let total = cat.iter().fold(PoincareSeries::zero(), |acc, d| acc.add(&d.series().positive_part()));
    let closed = closed_form(spec, p).positive_part();
    let hilbert = ring.hilbert(cutoff)?;
    let mut hpos = hilbert.clone();
    hpos[0] = 0;
    let texp = total.expand(cutoff);
    let table: Vec<DegreeRow> = (0..=cutoff)
        .step_by(2)
        .map(|d| DegreeRow { degree: d, hilbert: hilbert[d as usize], summands: texp[d as usize] })
        .collect();
    check(
        "summand series sum to the Hilbert series (exact)",
        "global bookkeeping",
        total.equals(&closed),
        format!("{} summands", cat.len()),
    );
    check(
        "summand series match computed slice dimensions",
        "global bookkeeping",
        first_mismatch(&texp, &hpos).is_none(),
        format!("degrees 2..={cutoff}: {}", describe_mismatch(&texp, &hpos)),
    );

    // per-copy nonnegativity
    let mut bad = Vec::new();
    for d in &cat {
        match d.per_copy() {
            Some(s) if s.nonnegative_through(cutoff) => {}
            _ => bad.push(d.label.to_string()),
        }
    }
    check(
        "per-copy series are nonnegative integral",
        "summand multiplicities",
        bad.is_empty(),
        if bad.is_empty() { format!("{} descriptions", cat.len()) } else { bad.join(", ") },
    );

    // Y rules account for every copy of every summand
    let rules = y_rules(spec, p);
    let mut counted: BTreeMap<SummandLabel, u32> = BTreeMap::new();
    for r in &rules {
        for c in &r.constituents {
            *counted.entry(*c).or_default() += r.weight;
        }
    }
    let accounted = cat.iter().all(|d| counted.get(&d.label).copied() == Some(d.multiplicity))
        && counted.keys().all(|l| find(&cat, l).is_some());
    check(
        "Y-summand constituents account for every summand copy",
        "Out-idempotent splitting",
        accounted,
        format!("{} Y-summands", rules.len()),
    );

    let constituent_series = |r: &YRule| -> Option<PoincareSeries> {
        r.constituents.iter().try_fold(PoincareSeries::zero(), |acc, l| {
            Some(acc.add(&find(&cat, l)?.per_copy()?.positive_part()))
        })
    };

    if let GroupSpec::CGroup { .. } = spec {
        let mut bad = Vec::new();
        for r in &rules {
            let h = e_h_series(p, r.index.0, r.index.1).positive_part();
            match constituent_series(r) {
                Some(s) if s.scale(r.weight as i64).equals(&h) => {}
                _ => bad.push(format!("Y_{{{},{}}}", r.index.0, r.index.1)),
            }
        }
        check(
            "Y-summand series equal the sum of their constituents (exact)",
            "Y-summand case formulas",
            bad.is_empty(),
            if bad.is_empty() { format!("{} Y-summands", rules.len()) } else { bad.join(", ") },
        );
    }

    // materialized Y-summands
    if let Some(ys) = materialize_y(engine, cutoff)? {
        let mut bad = Vec::new();
        for y in &ys {
            let expected = constituent_series(&y.rule).map(|s| s.scale(y.rule.weight as i64).expand(cutoff));
            let mut dims = y.dims.clone();
            dims[0] = 0;
            match expected {
                Some(e) if first_mismatch(&e, &dims).is_none() => {}
                Some(e) => bad.push(format!("Y{:?} {}", y.rule.index, describe_mismatch(&e, &dims))),
                None => bad.push(format!("Y{:?} missing constituent", y.rule.index)),
            }
        }
        check(
            "materialized Y-summands have the stated dimensions",
            "Y-summand case formulas",
            bad.is_empty(),
            if bad.is_empty() { format!("{} Y-summands, degrees 2..={cutoff}", ys.len()) } else { bad.join("; ") },
        );
        let mut sum = vec![0i64; cutoff as usize + 1];
        for y in &ys {
            for (s, d) in sum.iter_mut().zip(&y.dims) {
                *s += d;
            }
        }
        check(
            "Y-summands fill every slice",
            "Out-idempotent splitting",
            first_mismatch(&sum, &hilbert).is_none(),
            describe_mismatch(&sum, &hilbert),
        );
        if let Some(Membership::Span(_)) = ys.first().map(|y| &y.membership) {
            let mut ok = true;
            for d in (0..=cutoff).step_by(2) {
                let ncols = ring.ncomp() * (d as usize / 2 + 1);
                let mut all = Echelon::new(p, ncols);
                for y in &ys {
                    if let Membership::Span(m) = &y.membership {
                        for r in m[&d].rows() {
                            all.insert(r.clone());
                        }
                    }
                }
                ok &= all.rank() as i64 == hilbert[d as usize];
            }
            check("H_{i,q} blocks form a direct sum", "GL2 block decomposition", ok, format!("degrees 0..={cutoff}"));
        }

        // element-level witnesses
        let mut checked = 0;
        let mut bad = Vec::new();
        for y in &ys {
            let mut by_degree: BTreeMap<u32, Vec<Element>> = BTreeMap::new();
            for l in &y.rule.constituents {
                let Some(d) = find(&cat, l) else { continue };
                for t in &d.terms {
                    let Some(w) = &t.word else { continue };
                    if t.shift > cutoff {
                        continue;
                    }
                    let x = ring.eval_str(w)?;
                    checked += 1;
                    if x.degree != t.shift {
                        bad.push(format!("{w}: degree {} vs shift {}", x.degree, t.shift));
                    } else if !y.contains(engine, &x)? {
                        bad.push(format!("{w} not in Y{:?}", y.rule.index));
                    }
                    by_degree.entry(x.degree).or_default().push(x);
                }
            }
            for (d, xs) in by_degree {
                let ncols = ring.ncomp() * (d as usize / 2 + 1);
                let e = Echelon::from_vectors(p, ncols, xs.iter().map(Element::to_vector));
                if e.rank() != xs.len() {
                    bad.push(format!("dependent generators in Y{:?}, degree {d}", y.rule.index));
                }
            }
        }
        check(
            "description generators lie in their Y-summand and are independent",
            "element-level witnesses",
            bad.is_empty(),
            if bad.is_empty() { format!("{checked} generators") } else { bad.join("; ") },
        );
    }

    // series subtractions used in the descriptions
    let ca = PoincareSeries::free(&RingTag::CA.degrees(p, 2 * pp), 0, 1);
    let da = PoincareSeries::free(&RingTag::DA.degrees(p, 2 * pp), 0, 1);
    let cb = |s: u32| PoincareSeries::free(&RingTag::CB.degrees(p, 2 * pp), s, 1);
    let ky = PoincareSeries::free(&RingTag::KY.degrees(p, 2 * pp), 0, 1);
    let big_v = 2 * pp * (pp - 1);
    let a = 2 * (pp - 1);
    let ca_v = PoincareSeries::free(&RingTag::CA.degrees(p, 2 * pp), big_v, 1);
    let subs = [
        ("CA - CB{C} = DA", ca.sub(&cb(a)), da.clone()),
        ("CA - k[C] = CA{V}", ca.sub(&ky), ca_v),
        ("CA = DA + CB{Y}", ca.clone(), da.add(&cb(a))),
    ];
    for (name, lhs, rhs) in subs {
        let pass = lhs.equals(&rhs) && lhs.nonnegative_through(cutoff);
        check(name, "series subtraction", pass, "exact rational identity".into());
    }

    // L(2,q) descriptions are sums of shifted copies of one pattern
    let l2: Vec<_> = cat.iter().filter(|d| matches!(d.label, SummandLabel::L2(_))).collect();
    if !l2.is_empty() {
        let cbd = RingTag::CB.degrees(p, 2 * pp);
        let mut ok = true;
        for d in &l2 {
            let mut e = d.series().expand(cutoff);
            for g in &cbd {
                for k in (*g as usize..e.len()).rev() {
                    e[k] -= e[k - *g as usize];
                }
            }
            let shifts: Vec<u32> = d.terms.iter().map(|t| t.shift).collect();
            ok &= e.iter().enumerate().all(|(k, c)| *c >= 0 && (*c == 0 || shifts.contains(&(k as u32))));
        }
        check("L(2,q) series are shifted copies of one pattern", "L(2,q) structure", ok, format!("{} summands", l2.len()));
    }

    if let GroupSpec::CGroup { r: 3 } = spec {
        let mut overlaps = Vec::new();
        for i in 1..pp - 1 {
            for q in 0..pp - 1 {
                let (first, all) = thm67_case(p, i, q);
                if all.iter().filter(|c| **c != 6).count() > 1 {
                    overlaps.push(format!("({i},{q}): cases {all:?}, using {first}"));
                }
            }
        }
        let detail = if overlaps.is_empty() { "no overlapping cases".into() } else { overlaps.join("; ") };
        check("case table applied in printed order", "X_{i,q} case table", true, detail);
    }

    Ok(DecompositionReport { spec: spec.to_string(), p: pp, cutoff, checks, table })
}
