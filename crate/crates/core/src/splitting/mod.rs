//! Summand catalogs, Y-summand bookkeeping and recombination.

mod descriptions;
mod recombine;
mod verify;

use std::fmt;

use serde::Serialize;

use crate::algebra::fp::Prime;
use crate::algebra::series::PoincareSeries;
use crate::error::{Error, Result};

pub use descriptions::{catalog, e_h_series, thm67_case, y_rules, YRule};
pub use recombine::{recombine, Recombination};
pub use verify::{materialize_y, verify_decomposition, DecompositionReport, YSubspace};

/// One named verification outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn from_audit(a: crate::quillen::AuditRecord, anchor: &str) -> Check {
        Check { name: a.name, anchor: anchor.into(), pass: a.pass, detail: a.detail }
    }
}

/// Free coefficient rings of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RingTag {
    /// k[D1, D2]
    DA,
    /// k[C, V]
    CA,
    /// k[C, D2]
    CB,
    /// k[Y]
    KY,
    /// k[y, V]
    KyV,
    /// k[y, v]
    Kyv,
    /// k[Cbar^2, D2]
    CbarSqD2,
}

impl RingTag {
    /// Generator degrees; `vdeg` is the degree of v.
    pub fn degrees(&self, p: Prime, vdeg: u32) -> Vec<u32> {
        let pp = p.get();
        match self {
            RingTag::DA => vec![2 * (pp * pp - pp), 2 * (pp * pp - 1)],
            RingTag::CA => vec![2 * (pp - 1), (pp - 1) * vdeg],
            RingTag::CB => vec![2 * (pp - 1), 2 * (pp * pp - 1)],
            RingTag::KY => vec![2 * (pp - 1)],
            RingTag::KyV => vec![2, (pp - 1) * vdeg],
            RingTag::Kyv => vec![2, vdeg],
            RingTag::CbarSqD2 => vec![4 * (pp - 1), 2 * (pp * pp - 1)],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RingTag::DA => "DA",
            RingTag::CA => "CA",
            RingTag::CB => "CB",
            RingTag::KY => "k[Y]",
            RingTag::KyV => "k[y,V]",
            RingTag::Kyv => "k[y,v]",
            RingTag::CbarSqD2 => "k[Cbar^2,D2]",
        }
    }
}

/// `count` copies of a free ring module on one generator.
#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub ring: RingTag,
    pub generator: String,
    /// Ring word for the generator, when it can be materialized in the model.
    pub word: Option<String>,
    pub shift: u32,
    pub count: u32,
    /// Generator is a pure power y1^j (j <= p-2) times a power of v.
    pub s_part: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SummandLabel {
    /// Dominant summand; metacyclic summands use q = None.
    X { i: u32, q: Option<u32> },
    L1(u32),
    L2(u32),
    /// X_{i,q} of the index-p subgroup C(r-1).
    Imported { i: u32, q: u32 },
    /// The whole classifying space (single-summand families).
    Whole,
}

impl SummandLabel {
    /// Grammar: `X:i[,q]`, `L1:i`, `L2:i`, `Imp:i,q`, a bare `i[,q]`, or the displayed form.
    pub fn parse(s: &str) -> Result<SummandLabel> {
        let bad = || Error::Parse(format!("summand '{s}'"));
        if s == "BP" {
            return Ok(SummandLabel::Whole);
        }
        if let Some(inner) = s.strip_prefix("X_{").and_then(|r| r.strip_suffix("}(C)")) {
            return Self::parse(&format!("Imp:{inner}"));
        }
        if let Some(inner) = s.strip_prefix("X_{").and_then(|r| r.strip_suffix('}')) {
            return Self::parse(&format!("X:{inner}"));
        }
        if let Some(i) = s.strip_prefix("X_") {
            return Self::parse(&format!("X:{i}"));
        }
        if let Some(inner) = s.strip_prefix("L(").and_then(|r| r.strip_suffix(')')) {
            return match inner.split_once(',') {
                Some(("1", i)) => Self::parse(&format!("L1:{i}")),
                Some(("2", i)) => Self::parse(&format!("L2:{i}")),
                _ => Err(bad()),
            };
        }
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, r),
            None => ("X", s),
        };
        let nums: Vec<u32> = rest.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("X", [i]) => Ok(SummandLabel::X { i: *i, q: None }),
            ("X", [i, q]) => Ok(SummandLabel::X { i: *i, q: Some(*q) }),
            ("L1", [i]) => Ok(SummandLabel::L1(*i)),
            ("L2", [i]) => Ok(SummandLabel::L2(*i)),
            ("Imp", [i, q]) => Ok(SummandLabel::Imported { i: *i, q: *q }),
            _ => Err(bad()),
        }
    }

    pub fn is_dominant(&self) -> bool {
        matches!(self, SummandLabel::X { .. })
    }
}

impl fmt::Display for SummandLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandLabel::X { i, q: Some(q) } => write!(f, "X_{{{i},{q}}}"),
            SummandLabel::X { i, q: None } => write!(f, "X_{i}"),
            SummandLabel::L1(i) => write!(f, "L(1,{i})"),
            SummandLabel::L2(i) => write!(f, "L(2,{i})"),
            SummandLabel::Imported { i, q } => write!(f, "X_{{{i},{q}}}(C)"),
            SummandLabel::Whole => write!(f, "BP"),
        }
    }
}

/// A catalog entry. The terms describe m copies of the summand's cohomology.
#[derive(Clone, Debug, Serialize)]
pub struct SummandDescription {
    pub label: SummandLabel,
    pub multiplicity: u32,
    pub terms: Vec<Term>,
    #[serde(skip)]
    pub p: Prime,
    #[serde(skip)]
    pub vdeg: u32,
}

impl SummandDescription {
    /// Series of all m copies.
    pub fn series(&self) -> PoincareSeries {
        self.terms.iter().fold(PoincareSeries::zero(), |acc, t| {
            acc.add(&PoincareSeries::free(&t.ring.degrees(self.p, self.vdeg), t.shift, t.count as i64))
        })
    }

    /// Series of one copy, if the multiplicity divides every coefficient.
    pub fn per_copy(&self) -> Option<PoincareSeries> {
        self.series().divide(self.multiplicity as i64)
    }

    /// One copy restricted to its S-part generators.
    pub fn s_part(&self) -> PoincareSeries {
        self.terms.iter().filter(|t| t.s_part).fold(PoincareSeries::zero(), |acc, t| {
            let per = t.count / self.multiplicity.max(1);
            acc.add(&PoincareSeries::free(&t.ring.degrees(self.p, self.vdeg), t.shift, per as i64))
        })
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let c = if t.count > 1 { format!("{}", t.count) } else { String::new() };
                format!("{c}{}{{{}}}", t.ring.name(), t.generator)
            })
            .collect();
        parts.join(" + ")
    }
}
