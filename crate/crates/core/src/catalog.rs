use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::form::{self, Form, Lin2};
use crate::algebra::fp::Prime;
use crate::algebra::poly::{Polynomial, VarList};
use crate::error::{Error, Result};

/// A supported rank-2 group family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family")]
pub enum GroupSpec {
    ElemAbelian,
    MetacyclicSplit { l: u32, m: u32, n: u32 },
    /// Non-split metacyclic with relation a^{p^k} = b^{p^n}.
    MetacyclicNonSplit { l: u32, m: u32, n: u32, k: u32 },
    CGroup { r: u32 },
    GGroup { r: u32, e: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Abelian,
    Metacyclic,
    EType,
    GType,
}

fn parse_list(s: &str, n: usize, spec: &str) -> Result<Vec<u32>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(Error::Parse(format!("'{spec}' expects {n} comma-separated parameters")));
    }
    parts
        .iter()
        .map(|x| x.parse::<u32>().map_err(|_| Error::Parse(format!("'{x}' is not a non-negative integer in '{spec}'"))))
        .collect()
}

impl GroupSpec {
    /// Grammar: `A`, `M:l,m,n`, `Mns:l,m,n,k`, `C:r`, `G:r,e`.
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let s = s.trim();
        if s == "A" {
            return Ok(GroupSpec::ElemAbelian);
        }
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unrecognised group spec '{s}'")))?;
        match tag {
            "M" => {
                let v = parse_list(rest, 3, s)?;
                Ok(GroupSpec::MetacyclicSplit { l: v[0], m: v[1], n: v[2] })
            }
            "Mns" => {
                let v = parse_list(rest, 4, s)?;
                Ok(GroupSpec::MetacyclicNonSplit { l: v[0], m: v[1], n: v[2], k: v[3] })
            }
            "C" => Ok(GroupSpec::CGroup { r: parse_list(rest, 1, s)?[0] }),
            "G" => {
                let v = parse_list(rest, 2, s)?;
                Ok(GroupSpec::GGroup { r: v[0], e: v[1] })
            }
            _ => Err(Error::Parse(format!("unknown group family '{tag}' in '{s}'"))),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            GroupSpec::ElemAbelian => Family::Abelian,
            GroupSpec::MetacyclicSplit { .. } | GroupSpec::MetacyclicNonSplit { .. } => Family::Metacyclic,
            GroupSpec::CGroup { .. } => Family::EType,
            GroupSpec::GGroup { .. } => Family::GType,
        }
    }

    /// Check the parameter constraints of the family at prime p.
    pub fn validate(&self, p: Prime) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            GroupSpec::ElemAbelian => Ok(()),
            GroupSpec::MetacyclicSplit { l, m, n } => {
                let lo = m.saturating_sub(n).max(1);
                if !(m > l && l >= lo) {
                    return bad(format!("M:{l},{m},{n} violates m > l >= max(m-n, 1)"));
                }
                Ok(())
            }
            GroupSpec::MetacyclicNonSplit { l, m, n, k } => {
                if !(l >= 1 && l < m) {
                    return bad(format!("Mns:{l},{m},{n},{k} violates 1 <= l < m"));
                }
                if n < 1 {
                    return bad(format!("Mns:{l},{m},{n},{k} violates n >= 1"));
                }
                if !(k >= l && k < m) {
                    return bad(format!("Mns:{l},{m},{n},{k} violates l <= k < m"));
                }
                Ok(())
            }
            GroupSpec::CGroup { r } => {
                if r < 3 {
                    return bad(format!("C:{r} requires r >= 3"));
                }
                Ok(())
            }
            GroupSpec::GGroup { r, e } => {
                if p.get() < 5 {
                    return bad(format!("G:{r},{e} requires p >= 5 (got p = {})", p.get()));
                }
                if r < 4 {
                    return bad(format!("G:{r},{e} requires r >= 4"));
                }
                let e_mod = e % p.get();
                let nonresidue = e_mod != 0 && p.pow(e_mod, ((p.get() - 1) / 2) as u64) == p.get() - 1;
                if e != 1 && !nonresidue {
                    return bad(format!("G:{r},{e} requires e = 1 or a quadratic non-residue mod {}", p.get()));
                }
                Ok(())
            }
        }
    }

    /// Cohomological degree of v.
    pub fn v_degree(&self, p: Prime) -> u32 {
        let p = p.get();
        match *self {
            GroupSpec::MetacyclicSplit { l, m, .. } | GroupSpec::MetacyclicNonSplit { l, m, .. } => {
                2 * p.pow(m - l)
            }
            _ => 2 * p,
        }
    }

    pub fn is_m121(&self) -> bool {
        matches!(self, GroupSpec::MetacyclicSplit { l: 1, m: 2, n: 1 })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::ElemAbelian => write!(f, "A"),
            GroupSpec::MetacyclicSplit { l, m, n } => write!(f, "M:{l},{m},{n}"),
            GroupSpec::MetacyclicNonSplit { l, m, n, k } => write!(f, "Mns:{l},{m},{n},{k}"),
            GroupSpec::CGroup { r } => write!(f, "C:{r}"),
            GroupSpec::GGroup { r, e } => write!(f, "G:{r},{e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassLabel {
    Finite(u32),
    Infinity,
    Single,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElabClass {
    pub label: ClassLabel,
    pub name: String,
    pub y: String,
    pub u: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    /// Restriction image per class, as a dense binary form.
    #[serde(skip)]
    pub images: Vec<Form>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActionRole {
    CosetAction,
    OutGenerator,
    BisetPullback,
}

/// A substitution on generator names.
#[derive(Clone, Debug)]
pub struct ActionTable {
    pub name: String,
    pub role: ActionRole,
    pub images: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub enum DescriptorKind {
    /// Restrict to a class, pull back along a linear map, transfer back.
    Class { class: usize, pullback: Lin2 },
    /// Pull back inside the inner E-model, then transfer from the index-p subgroup.
    Subring { pullback: ActionTable },
    /// Restrict to a class of the inner E-model, pull back, transfer to E, then to the whole group.
    TwoStage { class: usize, pullback: Lin2 },
}

#[derive(Clone, Debug)]
pub struct SubgroupDescriptor {
    pub name: String,
    pub subgroup: String,
    pub kind: DescriptorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationScope {
    Own,
    Inner,
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub scope: RelationScope,
    pub word: Polynomial,
}

/// Full computational description of one group.
#[derive(Debug)]
pub struct GroupModel {
    pub spec: GroupSpec,
    pub p: Prime,
    pub classes: Vec<ElabClass>,
    pub gens: Arc<VarList>,
    pub generators: Vec<GeneratorSpec>,
    /// Unipotent coset action u -> u + y, shared by every class.
    pub coset: Lin2,
    pub out_generators: Vec<ActionTable>,
    pub descriptors: Vec<SubgroupDescriptor>,
    pub relations: Vec<Relation>,
    /// Exclusive exponent bounds used when enumerating spanning monomials.
    pub caps: Vec<u32>,
    /// Generators of which at most one factor appears in a spanning monomial.
    pub single_factor: Vec<usize>,
    pub class_transfers: bool,
    pub transfers_vanish: bool,
    pub single_summand: bool,
    /// For G-families: the E-model in which elements are represented.
    pub inner: Option<Arc<GroupModel>>,
    /// For G-families: Out generators and the c-action, on inner E-generators.
    pub inner_actions: Vec<ActionTable>,
}

fn lin_form(p: Prime, a: i64, b: i64) -> Form {
    vec![p.reduce(a), p.reduce(b)]
}

/// v restricted to an elementary abelian class: u^p - y^{p-1} u.
fn v_form(p: Prime) -> Form {
    let n = p.get() as usize;
    let mut f = form::zero(n);
    f[n] = 1;
    f[1] = p.neg(1);
    f
}

fn y_power(p: Prime, k: u32) -> Form {
    form::monomial(k as usize, 0, 1 % p.get())
}

fn word(p: Prime, vars: &Arc<VarList>, s: &str) -> Polynomial {
    Polynomial::parse(p, vars, s).unwrap_or_else(|e| panic!("built-in word '{s}': {e}"))
}

fn table(p: Prime, vars: &Arc<VarList>, name: &str, role: ActionRole, images: &[&str]) -> ActionTable {
    ActionTable { name: name.to_string(), role, images: images.iter().map(|s| word(p, vars, s)).collect() }
}

impl GroupModel {
    pub fn build(spec: &GroupSpec, p: Prime) -> Result<GroupModel> {
        spec.validate(p)?;
        Ok(match spec.family() {
            Family::Abelian => Self::abelian(p),
            Family::Metacyclic => Self::metacyclic(spec, p),
            Family::EType => Self::etype(spec, p),
            Family::GType => Self::gtype(spec, p),
        })
    }

    pub fn family(&self) -> Family {
        self.spec.family()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.index_of(name)
    }

    pub fn v_degree(&self) -> u32 {
        self.spec.v_degree(self.p)
    }

    /// The model in which this group's elements live (itself, or the inner E-model).
    pub fn ambient(&self) -> &GroupModel {
        self.inner.as_deref().unwrap_or(self)
    }

    pub fn parse_word(&self, s: &str) -> Result<Polynomial> {
        Polynomial::parse(self.p, &self.gens, s)
    }

    fn abelian(p: Prime) -> GroupModel {
        let gens = VarList::new(&[("y", 2), ("u", 2)]);
        let g = p.primitive_root().to_string();
        GroupModel {
            spec: GroupSpec::ElemAbelian,
            p,
            classes: vec![ElabClass { label: ClassLabel::Single, name: "A".into(), y: "y".into(), u: "u".into() }],
            generators: vec![
                GeneratorSpec { name: "y".into(), degree: 2, images: vec![lin_form(p, 1, 0)] },
                GeneratorSpec { name: "u".into(), degree: 2, images: vec![lin_form(p, 0, 1)] },
            ],
            coset: Lin2::new(p, 1, 0, 1, 1),
            out_generators: vec![
                table(p, &gens, "unipotent", ActionRole::OutGenerator, &["y", "u + y"]),
                table(p, &gens, "torus", ActionRole::OutGenerator, &[&format!("{g}*y"), "u"]),
            ],
            descriptors: Vec::new(),
            relations: Vec::new(),
            caps: vec![u32::MAX; 2],
            single_factor: Vec::new(),
            class_transfers: false,
            transfers_vanish: false,
            single_summand: false,
            inner: None,
            inner_actions: Vec::new(),
            gens,
        }
    }

    fn metacyclic(spec: &GroupSpec, p: Prime) -> GroupModel {
        let vdeg = spec.v_degree(p);
        let gens = VarList::new(&[("y", 2), ("v", vdeg)]);
        let frob = vdeg / (2 * p.get());
        let g = p.primitive_root().to_string();
        let split = matches!(spec, GroupSpec::MetacyclicSplit { .. });
        let mut descriptors = Vec::new();
        if spec.is_m121() {
            descriptors.push(SubgroupDescriptor {
                name: "swap".into(),
                subgroup: "H".into(),
                kind: DescriptorKind::Class { class: 0, pullback: Lin2::new(p, 0, 1, -1, 0) },
            });
        }
        GroupModel {
            spec: spec.clone(),
            p,
            classes: vec![ElabClass { label: ClassLabel::Single, name: "H".into(), y: "y".into(), u: "u".into() }],
            generators: vec![
                GeneratorSpec { name: "y".into(), degree: 2, images: vec![lin_form(p, 1, 0)] },
                GeneratorSpec { name: "v".into(), degree: vdeg, images: vec![form::pow(p, &v_form(p), frob)] },
            ],
            coset: Lin2::new(p, 1, 0, 1, 1),
            out_generators: if split {
                vec![table(p, &gens, "j", ActionRole::OutGenerator, &["y", &format!("{g}*v")])]
            } else {
                Vec::new()
            },
            descriptors,
            relations: Vec::new(),
            caps: vec![u32::MAX; 2],
            single_factor: Vec::new(),
            class_transfers: spec.is_m121(),
            transfers_vanish: false,
            single_summand: !split,
            inner: None,
            inner_actions: Vec::new(),
            gens,
        }
    }

    fn etype(spec: &GroupSpec, p: Prime) -> GroupModel {
        let pp = p.get();
        let gens = VarList::new(&[("y1", 2), ("y2", 2), ("C", 2 * (pp - 1)), ("v", 2 * pp)]);
        let mut classes = Vec::new();
        for j in 0..pp {
            classes.push(ElabClass {
                label: ClassLabel::Finite(j),
                name: format!("A{j}"),
                y: format!("y_{j}"),
                u: format!("u_{j}"),
            });
        }
        classes.push(ElabClass { label: ClassLabel::Infinity, name: "Ainf".into(), y: "y_inf".into(), u: "u_inf".into() });
        // y2 restricts to -j y on A_j so that j y1 + y2 vanishes there.
        let mut y1 = Vec::new();
        let mut y2 = Vec::new();
        for j in 0..pp {
            y1.push(lin_form(p, 1, 0));
            y2.push(lin_form(p, -(j as i64), 0));
        }
        y1.push(lin_form(p, 0, 0));
        y2.push(lin_form(p, 1, 0));
        let k = classes.len();
        let generators = vec![
            GeneratorSpec { name: "y1".into(), degree: 2, images: y1 },
            GeneratorSpec { name: "y2".into(), degree: 2, images: y2 },
            GeneratorSpec { name: "C".into(), degree: 2 * (pp - 1), images: vec![y_power(p, pp - 1); k] },
            GeneratorSpec { name: "v".into(), degree: 2 * pp, images: vec![v_form(p); k] },
        ];
        let g = p.primitive_root();
        let q = pp - 1;
        let relations = vec![
            Relation { name: "d2 = 0".into(), scope: RelationScope::Own, word: word(p, &gens, &format!("y1^{pp}*y2 - y1*y2^{pp}")) },
            Relation { name: "C y1 = y1^p".into(), scope: RelationScope::Own, word: word(p, &gens, &format!("C*y1 - y1^{pp}")) },
            Relation { name: "C y2 = y2^p".into(), scope: RelationScope::Own, word: word(p, &gens, &format!("C*y2 - y2^{pp}")) },
            Relation {
                name: "C^2 = y1^(2p-2) + y2^(2p-2) - y1^(p-1) y2^(p-1)".into(),
                scope: RelationScope::Own,
                word: word(p, &gens, &format!("C^2 - y1^{} - y2^{} + y1^{q}*y2^{q}", 2 * q, 2 * q)),
            },
        ];
        let a0 = 0usize;
        let ainf = pp as usize;
        let project = Lin2::new(p, 0, 1, 0, 0);
        let rotate = Lin2::new(p, 0, 1, -1, 0);
        let r = match spec {
            GroupSpec::CGroup { r } => *r,
            _ => 3,
        };
        GroupModel {
            spec: spec.clone(),
            p,
            classes,
            generators,
            coset: Lin2::new(p, 1, 0, 1, 1),
            out_generators: vec![
                table(p, &gens, "unipotent", ActionRole::OutGenerator, &["y1", "y1 + y2", "C", "v"]),
                table(p, &gens, "torus", ActionRole::OutGenerator, &[&format!("{g}*y1"), "y2", "C", &format!("{g}*v")]),
            ],
            descriptors: vec![
                SubgroupDescriptor {
                    name: "Phi1".into(),
                    subgroup: "A0".into(),
                    kind: DescriptorKind::Class { class: a0, pullback: project },
                },
                SubgroupDescriptor {
                    name: "Phi2".into(),
                    subgroup: "Ainf".into(),
                    kind: DescriptorKind::Class { class: ainf, pullback: project },
                },
                SubgroupDescriptor {
                    name: "Phi1'".into(),
                    subgroup: "A0".into(),
                    kind: DescriptorKind::Class { class: a0, pullback: rotate },
                },
                SubgroupDescriptor {
                    name: "Phi2'".into(),
                    subgroup: "Ainf".into(),
                    kind: DescriptorKind::Class { class: ainf, pullback: rotate },
                },
            ],
            relations,
            caps: vec![pp, pp, u32::MAX, u32::MAX],
            single_factor: Vec::new(),
            class_transfers: r == 3,
            transfers_vanish: r > 3,
            single_summand: false,
            inner: None,
            inner_actions: Vec::new(),
            gens,
        }
    }

    fn gtype(spec: &GroupSpec, p: Prime) -> GroupModel {
        let pp = p.get();
        let r = match spec {
            GroupSpec::GGroup { r, .. } => *r,
            _ => unreachable!(),
        };
        // the index-p subgroup C(r-1); its cohomology (mod nilpotents) is that of E
        let inner = Arc::new(Self::etype(&GroupSpec::CGroup { r: r - 1 }, p));
        let egens = inner.gens.clone();
        let mut vars: Vec<(String, u32)> = vec![("y1".into(), 2), ("C".into(), 2 * (pp - 1)), ("v".into(), 2 * pp)];
        for i in 0..pp - 2 {
            vars.push((format!("w{i}"), 2 * i + 2 * pp));
        }
        let var_refs: Vec<(&str, u32)> = vars.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        let gens = VarList::new(&var_refs);
        let w_word = format!("(y2^{pp} - y1^{}*y2)", pp - 1);
        let mut generators = Vec::new();
        let mut inner_words = Vec::new();
        for (name, _) in &vars {
            let src = if let Some(i) = name.strip_prefix('w') { format!("y2^{i}*{w_word}") } else { name.clone() };
            inner_words.push(word(p, &egens, &src));
        }
        for ((name, deg), w) in vars.iter().zip(&inner_words) {
            let images = (0..inner.classes.len())
                .map(|k| eval_word_component(&inner, w, k))
                .collect();
            generators.push(GeneratorSpec { name: name.clone(), degree: *deg, images });
        }
        let g = p.primitive_root();
        let mut i_images = vec!["-y1".to_string(), "C".into(), "v".into()];
        let mut k_images = vec!["y1".to_string(), "C".into(), format!("{g}*v")];
        for i in 0..pp - 2 {
            let sign = if (i + 1) % 2 == 0 { "" } else { "-" };
            i_images.push(format!("{sign}w{i}"));
            k_images.push(format!("{}*w{i}", p.pow(g, (i + 1) as u64)));
        }
        let i_refs: Vec<&str> = i_images.iter().map(String::as_str).collect();
        let k_refs: Vec<&str> = k_images.iter().map(String::as_str).collect();
        let q = pp - 1;
        let relations = vec![
            Relation { name: "y1 w = 0".into(), scope: RelationScope::Inner, word: word(p, &egens, &format!("y1*{w_word}")) },
            Relation {
                name: "w^2 = y2^p w".into(),
                scope: RelationScope::Inner,
                word: word(p, &egens, &format!("{w_word}^2 - y2^{pp}*{w_word}")),
            },
            Relation {
                name: "C w = y2^(p-1) w".into(),
                scope: RelationScope::Inner,
                word: word(p, &egens, &format!("C*{w_word} - y2^{q}*{w_word}")),
            },
            Relation { name: "C y1 = y1^p".into(), scope: RelationScope::Own, word: word(p, &gens, &format!("C*y1 - y1^{pp}")) },
        ];
        let mut descriptors = vec![SubgroupDescriptor {
            name: "Phi".into(),
            subgroup: format!("C({})", r - 1),
            kind: DescriptorKind::Subring {
                pullback: table(p, &egens, "a<->b", ActionRole::BisetPullback, &["y2", "-y1", "C", "v"]),
            },
        }];
        if r == 4 {
            descriptors.push(SubgroupDescriptor {
                name: "Phi".into(),
                subgroup: "<a,c^p>".into(),
                kind: DescriptorKind::TwoStage { class: 0, pullback: Lin2::new(p, 0, 1, -1, 0) },
            });
        }
        let inner_actions = vec![
            table(p, &egens, "c", ActionRole::CosetAction, &["y1", "y2 + y1", "C", "v"]),
            table(p, &egens, "i", ActionRole::OutGenerator, &["-y1", "-y2", "C", "v"]),
            table(p, &egens, "k", ActionRole::OutGenerator, &["y1", &format!("{g}*y2"), "C", &format!("{g}*v")]),
        ];
        let nw = (pp - 2) as usize;
        GroupModel {
            spec: spec.clone(),
            p,
            classes: inner.classes.clone(),
            generators,
            coset: inner.coset,
            out_generators: vec![
                table(p, &gens, "i", ActionRole::OutGenerator, &i_refs),
                table(p, &gens, "k", ActionRole::OutGenerator, &k_refs),
            ],
            descriptors,
            relations,
            caps: {
                let mut c = vec![u32::MAX; 3 + nw];
                c[0] = pp;
                c
            },
            single_factor: (3..3 + nw).collect(),
            class_transfers: false,
            transfers_vanish: false,
            single_summand: false,
            inner: Some(inner),
            inner_actions,
            gens,
        }
    }

    /// The E-level word of a G generator (identity on other families).
    pub fn inner_word(&self, gen: usize) -> Option<Polynomial> {
        let inner = self.inner.as_ref()?;
        let name = &self.generators[gen].name;
        let pp = self.p.get();
        let src = match name.strip_prefix('w') {
            Some(i) => format!("y2^{i}*(y2^{pp} - y1^{}*y2)", pp - 1),
            None => name.clone(),
        };
        Some(word(self.p, &inner.gens, &src))
    }
}

/// Evaluate a generator word on one class of a model.
pub fn eval_word_component(model: &GroupModel, w: &Polynomial, class: usize) -> Form {
    let p = model.p;
    let n = w.homogeneous_degree().unwrap_or(0) as usize / 2;
    let mut out = form::zero(n);
    let mut powers: Vec<Vec<Form>> = vec![vec![vec![1]]; model.generators.len()];
    for (e, c) in w.terms() {
        let mut t: Form = vec![c];
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let last = powers[i].last().unwrap().clone();
                powers[i].push(form::mul(p, &last, &model.generators[i].images[class]));
            }
            t = form::mul(p, &t, &powers[i][k as usize]);
        }
        form::add_into(p, &mut out, &t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["A", "M:1,2,1", "Mns:1,3,2,2", "C:3", "G:5,1"] {
            assert_eq!(GroupSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(GroupSpec::parse("Q:1").is_err());
        assert!(GroupSpec::parse("M:1,2").is_err());
    }

    #[test]
    fn validation() {
        assert!(GroupModel::build(&GroupSpec::GGroup { r: 4, e: 1 }, p(3)).is_err());
        assert!(GroupModel::build(&GroupSpec::MetacyclicSplit { l: 2, m: 2, n: 1 }, p(3)).is_err());
        assert!(GroupModel::build(&GroupSpec::CGroup { r: 2 }, p(3)).is_err());
        assert!(GroupSpec::GGroup { r: 4, e: 2 }.validate(p(5)).is_ok());
        assert!(GroupSpec::GGroup { r: 4, e: 4 }.validate(p(5)).is_err());
    }

    #[test]
    fn class_counts() {
        let e = GroupModel::build(&GroupSpec::CGroup { r: 3 }, p(3)).unwrap();
        assert_eq!(e.classes.len(), 4);
        let m = GroupModel::build(&GroupSpec::MetacyclicSplit { l: 1, m: 2, n: 1 }, p(5)).unwrap();
        assert_eq!(m.classes.len(), 1);
        assert_eq!(m.generators[1].degree, 10);
    }
}
