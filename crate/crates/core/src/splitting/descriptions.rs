use serde::Serialize;

use super::{RingTag, SummandDescription, SummandLabel, Term};
use crate::algebra::fp::Prime;
use crate::algebra::series::PoincareSeries;
use crate::catalog::GroupSpec;

fn join(parts: &[String]) -> String {
    let v: Vec<&str> = parts.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
    if v.is_empty() {
        "1".into()
    } else {
        v.join("*")
    }
}

fn pw(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn term(ring: RingTag, shift: u32, count: u32, word: Option<String>, s_part: bool) -> Term {
    let generator = word.as_deref().unwrap_or("1").replace('*', " ");
    Term { ring, generator, word, shift, count, s_part }
}

fn labelled(ring: RingTag, shift: u32, count: u32, generator: &str) -> Term {
    Term { ring, generator: generator.into(), word: None, shift, count, s_part: false }
}

struct Builder {
    p: Prime,
    vdeg: u32,
    out: Vec<SummandDescription>,
}

impl Builder {
    fn push(&mut self, label: SummandLabel, multiplicity: u32, terms: Vec<Term>) {
        self.out.push(SummandDescription { label, multiplicity, terms, p: self.p, vdeg: self.vdeg });
    }
}

/// Which of the six printed cases applies to X_{i,q}(E), 1 <= i <= p-2, and every case that matches.
pub fn thm67_case(p: Prime, i: u32, q: u32) -> (u32, Vec<u32>) {
    let m = p.get() - 1;
    let (i, q) = (i % m, q % m);
    let conds = [
        q == i && q != 0 && (3 * q) % m == 0,
        q == i && (3 * q) % m != 0,
        q == (m - (2 * i) % m) % m && q != 0 && (3 * i) % m != 0,
        q == 0 && (2 * i) % m == 0,
        q == 0,
        true,
    ];
    let all: Vec<u32> = conds.iter().enumerate().filter(|(_, c)| **c).map(|(k, _)| k as u32 + 1).collect();
    (all[0], all)
}

/// The complete stated splitting of a group.
pub fn catalog(spec: &GroupSpec, p: Prime) -> Vec<SummandDescription> {
    let mut b = Builder { p, vdeg: spec.v_degree(p), out: Vec::new() };
    match spec {
        GroupSpec::CGroup { r } => e_catalog(&mut b, *r),
        GroupSpec::ElemAbelian => a_catalog(&mut b),
        GroupSpec::GGroup { r, .. } => g_catalog(&mut b, *r),
        GroupSpec::MetacyclicNonSplit { .. } => b.push(SummandLabel::Whole, 1, vec![term(RingTag::Kyv, 0, 1, Some("1".into()), true)]),
        GroupSpec::MetacyclicSplit { .. } if spec.is_m121() => m121_catalog(&mut b),
        GroupSpec::MetacyclicSplit { .. } => split_catalog(&mut b),
    }
    b.out
}

fn e_catalog(b: &mut Builder, r: u32) {
    let pp = b.p.get();
    let m1 = pp - 1;
    let a = 2 * (pp - 1);
    let big_v = 2 * pp * (pp - 1);
    let d2 = 2 * (pp * pp - 1);
    let v = 2 * pp;
    let vv = pw("v", m1);
    for i in 0..pp {
        for q in 0..m1 {
            let m = i + 1;
            let label = SummandLabel::X { i, q: Some(q) };
            let s_word = |extra_v: bool| join(&[pw("y1", i), pw("v", q), if extra_v { vv.clone() } else { String::new() }]);
            let tq = (i + q) % m1;
            let t_word = |extra_v: bool| {
                join(&[pw("y1", m1), pw("y2", m1 - i), pw("v", tq), if extra_v { vv.clone() } else { String::new() }])
            };
            let s_deg = 2 * i + v * q;
            let t_deg = 2 * (2 * pp - 2 - i) + v * tq;
            let terms = if i == 0 {
                match (r, q) {
                    (3, 0) => vec![term(RingTag::DA, 0, 1, Some("1".into()), true)],
                    (_, 0) => vec![term(RingTag::CA, big_v, 1, Some(vv.clone()), true)],
                    _ => vec![term(RingTag::CA, v * q, 1, Some(pw("v", q)), true)],
                }
            } else if i == m1 {
                let w = join(&[pw("y1", m1), if q == 0 { vv.clone() } else { pw("v", q) }]);
                match (r, q) {
                    (3, 0) => vec![term(RingTag::DA, a + big_v, pp, Some(w), false)],
                    (_, 0) => vec![term(RingTag::CA, a + big_v, pp, Some(w), false)],
                    _ => vec![term(RingTag::CA, a + v * q, pp, Some(w), false)],
                }
            } else if r > 3 {
                if q == 0 {
                    vec![
                        term(RingTag::CA, s_deg + big_v, m, Some(s_word(true)), true),
                        term(RingTag::CA, t_deg, m, Some(t_word(false)), false),
                    ]
                } else {
                    vec![
                        term(RingTag::CA, s_deg, m, Some(s_word(false)), true),
                        term(RingTag::CA, t_deg, m, Some(t_word(false)), false),
                    ]
                }
            } else {
                let s = |ring, xv: bool| term(ring, s_deg + if xv { big_v } else { 0 }, m, Some(s_word(xv)), true);
                let t = |ring, xv: bool| term(ring, t_deg + if xv { big_v } else { 0 }, m, Some(t_word(xv)), false);
                match thm67_case(b.p, i, q).0 {
                    1 => vec![s(RingTag::DA, false), t(RingTag::DA, true)],
                    2 => vec![s(RingTag::DA, false), t(RingTag::CA, false)],
                    3 => vec![s(RingTag::CA, false), t(RingTag::DA, true)],
                    4 => vec![s(RingTag::CA, true), t(RingTag::DA, true)],
                    5 => vec![s(RingTag::CA, true), t(RingTag::CA, false)],
                    _ => vec![s(RingTag::CA, false), t(RingTag::CA, false)],
                }
            };
            b.push(label, m, terms);
        }
    }
    for i in 0..m1 {
        b.push(SummandLabel::L1(i), i + 1, vec![labelled(RingTag::KY, 2 * i, i + 1, &join(&[pw("u", i)]))]);
    }
    b.push(SummandLabel::L1(m1), pp, vec![labelled(RingTag::KY, a, pp, "Y")]);
    if r == 3 {
        for q in 0..m1 {
            let (shift, g) = if q == 0 { (a + d2, "Y D2".to_string()) } else { (a + 2 * (pp + 1) * q, format!("Y d2^{q}")) };
            b.push(SummandLabel::L2(q), pp + 1, vec![labelled(RingTag::CB, shift, pp + 1, &g)]);
        }
    }
}

fn a_catalog(b: &mut Builder) {
    let pp = b.p.get();
    let m1 = pp - 1;
    let d2 = 2 * (pp * pp - 1);
    let d2s = 2 * (pp + 1);
    for q in 0..m1 {
        let sh = d2s * q;
        let g = if q == 0 { String::new() } else { format!(" d2^{q}") };
        b.push(
            SummandLabel::X { i: 0, q: Some(q) },
            1,
            vec![
                labelled(RingTag::CbarSqD2, sh, 1, &format!("1{g}")),
                labelled(RingTag::CbarSqD2, sh + 6 * (pp - 1), 1, &format!("Cbar^3{g}")),
            ],
        );
    }
    for i in 1..pp {
        for q in 0..m1 {
            let m = i + 1;
            let mut terms = vec![labelled(
                RingTag::CB,
                2 * i + if q == 0 { d2 } else { d2s * q },
                m,
                &if q == 0 { format!("S^{i} D2") } else { format!("S^{i} d2^{q}") },
            )];
            if i < m1 {
                let k = m1 - i;
                let tq = (i + q) % m1;
                terms.push(labelled(RingTag::CB, 2 * (m1 + k) + d2s * tq, m, &format!("T^{k} d2^{tq}")));
            }
            b.push(SummandLabel::X { i, q: Some(q) }, m, terms);
        }
    }
    for i in 1..pp {
        b.push(SummandLabel::L1(i), i + 1, vec![labelled(RingTag::KY, 2 * i, i + 1, &format!("u^{i}"))]);
    }
}

fn m121_catalog(b: &mut Builder) {
    let pp = b.p.get();
    let m1 = pp - 1;
    let a = 2 * (pp - 1);
    let big_v = 2 * pp * (pp - 1);
    let d2 = 2 * (pp * pp - 1);
    let v = 2 * pp;
    for i in 0..m1 {
        let mut terms = Vec::new();
        if i > 0 {
            for j in 0..m1 {
                if j != i {
                    terms.push(term(RingTag::CA, 2 * j + v * i, 1, Some(join(&[pw("y", j), pw("v", i)])), true));
                }
            }
            terms.push(term(RingTag::DA, 2 * (pp + 1) * i, 1, Some(format!("(y*v)^{i}")), true));
        } else {
            for j in 1..m1 {
                terms.push(term(RingTag::CA, 2 * j + big_v, 1, Some(join(&[pw("y", j), pw("v", m1)])), true));
            }
            terms.push(term(RingTag::DA, 0, 1, Some("1".into()), true));
        }
        b.push(SummandLabel::X { i, q: None }, 1, terms);
    }
    for i in 0..m1 {
        let (shift, w) = if i == 0 {
            (a + d2, format!("y^{m1}*(y*v)^{m1}"))
        } else {
            (a + 2 * (pp + 1) * i, format!("y^{m1}*(y*v)^{i}"))
        };
        b.push(SummandLabel::L2(i), 1, vec![term(RingTag::CB, shift, 1, Some(w), false)]);
    }
    for i in 0..m1 {
        b.push(SummandLabel::L1(i), 1, vec![term(RingTag::KY, 2 * i, 1, (i > 0).then(|| pw("y", i)), false)]);
    }
}

fn split_catalog(b: &mut Builder) {
    let pp = b.p.get();
    let m1 = pp - 1;
    let v = b.vdeg;
    for i in 0..m1 {
        let e = if i == 0 { m1 } else { i };
        b.push(SummandLabel::X { i, q: None }, 1, vec![term(RingTag::KyV, v * e, 1, Some(pw("v", e)), false)]);
    }
    for i in 0..m1 {
        b.push(SummandLabel::L1(i), 1, vec![term(RingTag::KY, 2 * i, 1, (i > 0).then(|| pw("y", i)), false)]);
    }
}

fn g_catalog(b: &mut Builder, r: u32) {
    let pp = b.p.get();
    let m1 = pp - 1;
    let a = 2 * (pp - 1);
    let big_v = 2 * pp * (pp - 1);
    let d2 = 2 * (pp * pp - 1);
    let v = 2 * pp;
    // w_k is the model's generator w{k-1}
    let w = |k: u32| 2 * (k - 1) + 2 * pp;
    for s in 0..2u32 {
        for q in 0..m1 {
            let mut terms = Vec::new();
            for j in (0..m1).filter(|j| j % 2 == s) {
                if s == 0 && q == 0 && j == 0 {
                    terms.push(term(RingTag::CA, 0, 1, Some("1".into()), true));
                } else if q == 0 {
                    terms.push(term(RingTag::CA, 2 * j + big_v, 1, Some(join(&[pw("y1", j), pw("v", m1)])), true));
                } else {
                    let ring = if r == 4 && j == q { RingTag::DA } else { RingTag::CA };
                    terms.push(term(ring, 2 * j + v * q, 1, Some(join(&[pw("y1", j), pw("v", q)])), true));
                }
                if j > 0 {
                    let e = (j + q) % m1;
                    terms.push(term(
                        RingTag::CA,
                        w(m1 - j) + v * e,
                        1,
                        Some(join(&[format!("w{}", pp - 2 - j), pw("v", e)])),
                        false,
                    ));
                }
            }
            b.push(SummandLabel::X { i: s, q: Some(q) }, 1, terms);
        }
    }
    for q in 0..m1 {
        let word = Some(join(&[pw("y1", m1), pw("v", if q == 0 { m1 } else { q })]));
        let shift = a + if q == 0 { big_v } else { v * q };
        let ring = if r == 4 && q == 0 { RingTag::DA } else { RingTag::CA };
        b.push(SummandLabel::Imported { i: m1, q }, 1, vec![term(ring, shift, 1, word, false)]);
    }
    if r == 4 {
        for q in 0..m1 {
            let (shift, word) = if q == 0 {
                (a + d2, format!("C*y1^{m1}*v^{m1}"))
            } else {
                (a + 2 * (pp + 1) * q, join(&["C".into(), pw("y1", q), pw("v", q)]))
            };
            b.push(SummandLabel::L2(q), 1, vec![term(RingTag::CB, shift, 1, Some(word), false)]);
        }
    }
    for q in 0..m1 {
        b.push(SummandLabel::L1(q), 1, vec![term(RingTag::KY, 2 * q, 1, (q > 0).then(|| pw("y1", q)), false)]);
    }
}

/// Y-summand constituents: H*(Y) is the sum of one copy of each constituent.
#[derive(Clone, Debug, Serialize)]
pub struct YRule {
    pub index: (u32, u32),
    /// Number of copies of Y in the splitting (i+1 for GL2 families, else 1).
    pub weight: u32,
    pub constituents: Vec<SummandLabel>,
}

pub fn y_rules(spec: &GroupSpec, p: Prime) -> Vec<YRule> {
    let pp = p.get();
    let m1 = pp - 1;
    let md = |x: i64| x.rem_euclid(m1 as i64) as u32;
    let x = |i: u32, q: u32| SummandLabel::X { i, q: Some(q) };
    let mut out = Vec::new();
    match spec {
        GroupSpec::CGroup { r } => {
            for i in 0..pp {
                for q in 0..m1 {
                    let mut c = vec![x(i, q)];
                    if *r > 3 {
                        if q == 0 {
                            c.push(SummandLabel::L1(i));
                        }
                    } else if i == 0 || i == m1 {
                        if q == 0 {
                            c.push(SummandLabel::L2(0));
                            c.push(SummandLabel::L1(i));
                        }
                    } else {
                        let (ii, qq) = (i as i64, q as i64);
                        match thm67_case(p, i, q).0 {
                            1 => c.extend([SummandLabel::L2(q), SummandLabel::L2(md(2 * qq))]),
                            2 => c.push(SummandLabel::L2(q)),
                            3 => c.push(SummandLabel::L2(md(-ii))),
                            4 => c.extend([SummandLabel::L1(i), SummandLabel::L2(md(-ii))]),
                            5 => c.push(SummandLabel::L1(i)),
                            _ => {}
                        }
                    }
                    out.push(YRule { index: (i, q), weight: i + 1, constituents: c });
                }
            }
        }
        GroupSpec::ElemAbelian => {
            for i in 0..pp {
                for q in 0..m1 {
                    let mut c = vec![x(i, q)];
                    if q == 0 && i != 0 {
                        c.push(SummandLabel::L1(i));
                    }
                    out.push(YRule { index: (i, q), weight: i + 1, constituents: c });
                }
            }
        }
        GroupSpec::MetacyclicSplit { .. } => {
            let m121 = spec.is_m121();
            for i in 0..m1 {
                let mut c = vec![SummandLabel::X { i, q: None }];
                if m121 {
                    c.push(SummandLabel::L2(i));
                }
                if i == 0 {
                    c.extend((0..m1).map(SummandLabel::L1));
                }
                out.push(YRule { index: (i, 0), weight: 1, constituents: c });
            }
        }
        GroupSpec::MetacyclicNonSplit { .. } => {
            out.push(YRule { index: (0, 0), weight: 1, constituents: vec![SummandLabel::Whole] });
        }
        GroupSpec::GGroup { r, .. } => {
            for s in 0..2 {
                for q in 0..m1 {
                    let mut c = vec![x(s, q)];
                    if s == 0 {
                        c.push(SummandLabel::Imported { i: m1, q });
                    }
                    if *r == 4 && q % 2 == s {
                        c.push(SummandLabel::L2(q));
                    }
                    if q == 0 {
                        c.extend((0..m1).filter(|j| j % 2 == s).map(SummandLabel::L1));
                    }
                    out.push(YRule { index: (s, q), weight: 1, constituents: c });
                }
            }
        }
    }
    out
}

/// Series of the H_{i,q} block of H*(E): (i+1) copies of Y_{i,q}.
pub fn e_h_series(p: Prime, i: u32, q: u32) -> PoincareSeries {
    let pp = p.get();
    let m1 = pp - 1;
    let ca = RingTag::CA.degrees(p, 2 * pp);
    let v = 2 * pp;
    if i == 0 {
        PoincareSeries::free(&ca, v * q, 1)
    } else if i == m1 {
        PoincareSeries::free(&ca, 2 * m1 + v * q, pp as i64)
    } else {
        PoincareSeries::free(&ca, 2 * i + v * q, (i + 1) as i64)
            .add(&PoincareSeries::free(&ca, 2 * (2 * pp - 2 - i) + v * ((i + q) % m1), (i + 1) as i64))
    }
}
