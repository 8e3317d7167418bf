use serde::Serialize;

use crate::algebra::fp::Prime;
use crate::algebra::series::PoincareSeries;
use crate::catalog::GroupSpec;
use crate::error::{Error, Result};
use crate::quillen::closed_form;
use crate::splitting::{catalog, SummandLabel};

/// Coefficient ring of one nilpotent generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NilBase {
    /// k[y, v]
    Kyv,
    /// k[v]
    Kv,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilGenerator {
    pub index: u32,
    pub degree: u32,
    pub base: NilBase,
    /// Out-weight: S_j with j = index mod (p-1) (metacyclic) or det^index.
    pub weight: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentPresentation {
    pub generators: Vec<NilGenerator>,
    pub rules: Vec<String>,
}

impl NilpotentPresentation {
    /// Products of nilpotent generators; every one vanishes.
    pub fn product(&self, a: u32, b: u32) -> Option<NilGenerator> {
        let _ = (a, b);
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum Coverage {
    Stated,
    NotStated(String),
}

#[derive(Clone, Debug)]
pub struct EvenCohomology {
    pub spec: GroupSpec,
    pub p: Prime,
    pub coverage: Coverage,
    pub presentation: NilpotentPresentation,
    pub h_star: PoincareSeries,
    pub nilpotent: PoincareSeries,
}

impl EvenCohomology {
    pub fn series(&self) -> PoincareSeries {
        self.h_star.add(&self.nilpotent)
    }
}

fn base_series(p: Prime, vdeg: u32, base: NilBase, shift: u32, over_big_v: bool) -> PoincareSeries {
    let v = if over_big_v { (p.get() - 1) * vdeg } else { vdeg };
    match base {
        NilBase::Kyv => PoincareSeries::free(&[2, v], shift, 1),
        NilBase::Kv => PoincareSeries::free(&[v], shift, 1),
    }
}

/// H^ev = H* + N with the stated nilradical presentation.
pub fn h_even(spec: &GroupSpec, p: Prime) -> Result<EvenCohomology> {
    spec.validate(p)?;
    let pp = p.get();
    let m1 = pp - 1;
    let vdeg = spec.v_degree(p);
    let mut rules = vec!["c_i c_j = 0".to_string()];
    let gen = |i: u32, base: NilBase| NilGenerator { index: i, degree: 2 * i, base, weight: i % m1 };
    let (coverage, generators) = match spec {
        GroupSpec::MetacyclicSplit { l, m, n } => {
            let big_n = pp.pow(m - l);
            if *l > m - n {
                (Coverage::Stated, (1..big_n).map(|i| gen(i, NilBase::Kyv)).collect())
            } else if *l == m - n {
                rules.push("y c_k = 0 for k not divisible by p".into());
                let g = (1..big_n).map(|i| gen(i, if i % pp == 0 { NilBase::Kyv } else { NilBase::Kv })).collect();
                (Coverage::Stated, g)
            } else {
                (Coverage::NotStated(format!("{spec}: l < m - n")), Vec::new())
            }
        }
        GroupSpec::CGroup { r: 3 } | GroupSpec::GGroup { r: 4, .. } => {
            (Coverage::Stated, (2..=pp - 2).map(|i| gen(i, NilBase::Kv)).collect())
        }
        GroupSpec::CGroup { .. } | GroupSpec::GGroup { .. } => {
            (Coverage::Stated, (1..=pp - 2).map(|i| gen(i, NilBase::Kv)).collect())
        }
        GroupSpec::MetacyclicNonSplit { .. } => {
            (Coverage::NotStated("non-split metacyclic groups".into()), Vec::new())
        }
        GroupSpec::ElemAbelian => (Coverage::NotStated("elementary abelian group".into()), Vec::new()),
    };
    let nilpotent = generators
        .iter()
        .fold(PoincareSeries::zero(), |acc, g| acc.add(&base_series(p, vdeg, g.base, g.degree, false)));
    Ok(EvenCohomology {
        spec: spec.clone(),
        p,
        coverage,
        presentation: NilpotentPresentation { generators, rules },
        h_star: closed_form(spec, p),
        nilpotent,
    })
}

/// Nilpotent layer assigned to one copy of a summand by Out-weight matching.
pub fn nilpotent_layer(ev: &EvenCohomology, label: &SummandLabel) -> PoincareSeries {
    let p = ev.p;
    let m1 = p.get() - 1;
    let vdeg = ev.spec.v_degree(p);
    let i = match (label, &ev.spec) {
        (SummandLabel::X { i, q: None }, GroupSpec::MetacyclicSplit { .. }) => *i,
        (SummandLabel::X { i: 0, q: Some(q) }, GroupSpec::CGroup { .. } | GroupSpec::GGroup { .. }) => *q,
        _ => return PoincareSeries::zero(),
    };
    let mut acc = PoincareSeries::zero();
    for g in &ev.presentation.generators {
        for r in 0..m1 {
            if (r + g.index) % m1 == i % m1 {
                acc = acc.add(&base_series(p, vdeg, g.base, g.degree + r * vdeg, true));
            }
        }
    }
    acc
}

/// H^ev of one copy of a summand (positive degrees).
pub fn h_even_summand(spec: &GroupSpec, p: Prime, label: &SummandLabel) -> Result<PoincareSeries> {
    let ev = h_even(spec, p)?;
    let d = catalog(spec, p)
        .into_iter()
        .find(|d| d.label == *label)
        .ok_or_else(|| Error::InvalidParameter(format!("{label} is not a summand of {spec}")))?;
    let h = d.per_copy().ok_or_else(|| Error::NotCovered(format!("{label} multiplicity")))?;
    Ok(h.positive_part().add(&nilpotent_layer(&ev, label)))
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// dim H^ev in degree 2n equals n + 1, for split metacyclic groups.
pub fn additive_audit(spec: &GroupSpec, p: Prime, cutoff: u32) -> Result<NilpotentCheck> {
    if !matches!(spec, GroupSpec::MetacyclicSplit { .. }) {
        return Err(Error::Unsupported(format!("additive audit for {spec}")));
    }
    let ev = h_even(spec, p)?;
    if let Coverage::NotStated(why) = &ev.coverage {
        return Err(Error::NotCovered(why.clone()));
    }
    let e = ev.series().expand(cutoff);
    let bad = (0..=cutoff).step_by(2).find(|d| e[*d as usize] != (*d / 2 + 1) as i64);
    Ok(NilpotentCheck {
        name: format!("dim H^ev(2n) = n + 1 for {spec}"),
        pass: bad.is_none(),
        detail: match bad {
            None => format!("degrees 0..={cutoff}"),
            Some(d) => format!("degree {d}: {} vs {}", e[d as usize], d / 2 + 1),
        },
    })
}

/// H^ev against its additive closed form: k[y,u]{1, c1} in even degrees when l > m - n,
/// (k[y] + k{c_1..c_(p-1)}) (x) k[v'] with |v'| = 2p when l = m - n.
pub fn additive_form(spec: &GroupSpec, p: Prime, cutoff: u32) -> Result<NilpotentCheck> {
    let GroupSpec::MetacyclicSplit { l, m, n } = *spec else {
        return Err(Error::Unsupported(format!("additive form for {spec}")));
    };
    let ev = h_even(spec, p)?;
    let pp = p.get();
    let want = if l > m - n {
        PoincareSeries::free(&[2, 2], 0, 1)
    } else if l == m - n {
        let cs = PoincareSeries::polynomial(&(1..pp).map(|i| (2 * i, 1)).collect::<Vec<_>>());
        PoincareSeries::free(&[2, 2 * pp], 0, 1).add(&cs.mul(&PoincareSeries::free(&[2 * pp], 0, 1)))
    } else {
        return Err(Error::NotCovered(format!("{spec}: l < m - n")));
    };
    let got = ev.series();
    Ok(NilpotentCheck {
        name: format!("H^ev of {spec} matches its additive closed form"),
        pass: got.equals(&want),
        detail: match got.first_difference(&want, cutoff) {
            None => "exact rational identity".into(),
            Some(d) => format!("first difference in degree {d}"),
        },
    })
}

/// Sum over the catalog of (multiplicity x H^ev of a summand) equals H^ev of the group.
pub fn weight_consistency(spec: &GroupSpec, p: Prime, cutoff: u32) -> Result<NilpotentCheck> {
    let ev = h_even(spec, p)?;
    let mut total = PoincareSeries::zero();
    for d in catalog(spec, p) {
        total = total.add(&h_even_summand(spec, p, &d.label)?.scale(d.multiplicity as i64));
    }
    let whole = ev.series().positive_part();
    let exact = total.equals(&whole);
    let diff = whole.sub(&ev.h_star.positive_part());
    Ok(NilpotentCheck {
        name: format!("summand H^ev series add up for {spec}"),
        pass: exact && diff.nonnegative_through(cutoff),
        detail: match total.first_difference(&whole, cutoff) {
            None => format!("exact; {} nilpotent generators", ev.presentation.generators.len()),
            Some(d) => format!("first difference in degree {d}"),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChowStatement {
    pub spec: String,
    pub asserted: bool,
    pub statement: String,
    pub series: Option<Vec<i64>>,
}

/// CH*(BP)/p, where the hypotheses identify it with H^ev.
pub fn chow_report(spec: &GroupSpec, p: Prime, cutoff: u32) -> Result<ChowStatement> {
    let ev = h_even(spec, p)?;
    let (asserted, statement) = match spec {
        GroupSpec::CGroup { .. } | GroupSpec::GGroup { .. } => (true, "CH*(BP)/p = H^ev(BP)".to_string()),
        GroupSpec::MetacyclicSplit { l, m, .. } if m - l == 1 => (true, "CH*(BP)/p = H^ev(BP)".to_string()),
        GroupSpec::MetacyclicSplit { .. } => (false, "not asserted: requires m - l = 1".to_string()),
        GroupSpec::MetacyclicNonSplit { .. } => (false, "not stated for non-split metacyclic groups".to_string()),
        GroupSpec::ElemAbelian => (false, "not asserted for the elementary abelian group".to_string()),
    };
    let series = (asserted && matches!(ev.coverage, Coverage::Stated)).then(|| ev.series().expand(cutoff));
    Ok(ChowStatement { spec: spec.to_string(), asserted: series.is_some(), statement, series })
}
