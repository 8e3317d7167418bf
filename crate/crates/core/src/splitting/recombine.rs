use serde::Serialize;

use super::descriptions::catalog;
use super::SummandLabel;
use crate::algebra::fp::Prime;
use crate::algebra::series::PoincareSeries;
use crate::catalog::GroupSpec;
use crate::error::{Error, Result};

/// Ways of writing a summand's cohomology as a sum of E-level pieces, each used at most once.
#[derive(Clone, Debug, Serialize)]
pub struct Recombination {
    pub spec: String,
    pub target: String,
    pub candidates: usize,
    pub solutions: Vec<Vec<String>>,
    /// Per solution: whether L(1,0) occurs.
    pub uses_l10: Vec<bool>,
    /// For metacyclic groups with m - l > 1: the v-divisibility filter of the parent summand matches.
    pub filtered: Option<bool>,
}

struct Candidate {
    name: String,
    series: PoincareSeries,
    exp: Vec<i64>,
    start: usize,
}

fn candidate(name: String, series: PoincareSeries, cutoff: u32) -> Option<Candidate> {
    let exp = series.expand(cutoff);
    let start = exp.iter().position(|c| *c != 0)?;
    Some(Candidate { name, series, exp, start })
}

fn per_copy(spec: &GroupSpec, p: Prime, label: &SummandLabel) -> Result<PoincareSeries> {
    let cat = catalog(spec, p);
    let d = cat
        .iter()
        .find(|d| d.label == *label)
        .ok_or_else(|| Error::InvalidParameter(format!("{label} is not a summand of {spec}")))?;
    d.per_copy()
        .map(|s| s.positive_part())
        .ok_or_else(|| Error::NotCovered(format!("{label} series is not divisible by its multiplicity")))
}

fn search(target: &[i64], cands: &[Candidate]) -> Vec<Vec<usize>> {
    fn go(rem: &mut Vec<i64>, cands: &[Candidate], from: usize, picked: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(d) = rem.iter().position(|c| *c != 0) else {
            out.push(picked.clone());
            return;
        };
        if rem[d] < 0 {
            return;
        }
        for k in from..cands.len() {
            let c = &cands[k];
            if c.start != d {
                continue;
            }
            for (r, x) in rem.iter_mut().zip(&c.exp) {
                *r -= x;
            }
            if rem.iter().all(|x| *x >= 0) {
                picked.push(k);
                go(rem, cands, k + 1, picked, out);
                picked.pop();
            }
            for (r, x) in rem.iter_mut().zip(&c.exp) {
                *r += x;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut target.to_vec(), cands, 0, &mut Vec::new(), &mut out);
    out
}

/// Find every 0/1 combination of E-level pieces whose series equals the summand's.
pub fn recombine(spec: &GroupSpec, label: &SummandLabel, p: Prime, cutoff: u32) -> Result<Recombination> {
    spec.validate(p)?;
    let pp = p.get();
    let cutoff = cutoff.max(4 * pp * pp);
    let e = GroupSpec::CGroup { r: 3 };
    let mut cands = Vec::new();
    let mut filtered = None;
    let target = match spec {
        GroupSpec::CGroup { .. } | GroupSpec::GGroup { .. } => {
            let SummandLabel::X { q: Some(q), .. } = label else {
                return Err(Error::InvalidParameter(format!("{label} is not a dominant summand")));
            };
            for j in 0..pp {
                let l = SummandLabel::X { i: j, q: Some(*q) };
                cands.extend(candidate(format!("{l}(E)"), per_copy(&e, p, &l)?, cutoff));
            }
            for k in 0..pp - 1 {
                let l = SummandLabel::L2(k);
                cands.extend(candidate(l.to_string(), per_copy(&e, p, &l)?, cutoff));
            }
            let l10 = SummandLabel::L1(0);
            cands.extend(candidate(l10.to_string(), per_copy(&e, p, &l10)?, cutoff));
            per_copy(spec, p, label)?
        }
        GroupSpec::MetacyclicSplit { l, m, n } => {
            let SummandLabel::X { i, q: None } = label else {
                return Err(Error::InvalidParameter(format!("{label} is not a dominant summand")));
            };
            let parent = GroupSpec::MetacyclicSplit { l: m - 1, m: *m, n: *n };
            let (base, tag) = if parent.is_m121() { (e.clone(), "E") } else { (GroupSpec::CGroup { r: 4 }, "C") };
            for d in catalog(&base, p).into_iter().filter(|d| d.label.is_dominant()) {
                if let SummandLabel::X { i: j, .. } = d.label {
                    if j <= pp - 2 {
                        cands.extend(candidate(format!("S{}({tag})", d.label), d.s_part().positive_part(), cutoff));
                    }
                }
            }
            let parent_series = per_copy(&parent, p, label)?;
            if m - l > 1 {
                filtered = Some(filter_check(spec, &parent, *i, p, cutoff)?);
            }
            parent_series
        }
        _ => return Err(Error::Unsupported(format!("recombination for {spec}"))),
    };
    cands.sort_by_key(|c| c.start);
    let texp = target.expand(cutoff);
    let mut solutions = Vec::new();
    let mut uses_l10 = Vec::new();
    for sol in search(&texp, &cands) {
        let sum = sol.iter().fold(PoincareSeries::zero(), |acc, k| acc.add(&cands[*k].series));
        if sum.equals(&target) {
            uses_l10.push(sol.iter().any(|k| cands[*k].name == "L(1,0)"));
            solutions.push(sol.iter().map(|k| cands[*k].name.clone()).collect());
        }
    }
    if solutions.is_empty() {
        return Err(Error::NotCovered(format!("no recombination found for {label} of {spec}")));
    }
    Ok(Recombination {
        spec: spec.to_string(),
        target: label.to_string(),
        candidates: cands.len(),
        solutions,
        uses_l10,
        filtered,
    })
}

/// X_i(M) against the part of X_i(parent) = k[y,V]{v^i} whose v-exponent is divisible by p^(m-l-1).
fn filter_check(spec: &GroupSpec, parent: &GroupSpec, i: u32, p: Prime, cutoff: u32) -> Result<bool> {
    let pp = p.get();
    let vdeg = parent.v_degree(p);
    let step = spec.v_degree(p) / vdeg;
    let mut exp = vec![0i64; cutoff as usize + 1];
    let first = if i == 0 { pp - 1 } else { i };
    let mut b = first;
    while b * vdeg <= cutoff {
        if b % step == 0 {
            let mut d = b * vdeg;
            while d <= cutoff {
                exp[d as usize] += 1;
                d += 2;
            }
        }
        b += pp - 1;
    }
    exp[0] = 0;
    let own = per_copy(spec, p, &SummandLabel::X { i, q: None })?.expand(cutoff);
    Ok(own == exp)
}
