use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::form::{self, Form, Lin2};
use crate::algebra::fp::Prime;
use crate::algebra::linalg::{identity, mat_mul, Echelon};
use crate::algebra::poly::Polynomial;
use crate::catalog::{ActionTable, DescriptorKind, Family, GroupModel};
use crate::error::{Error, Result};
use crate::quillen::{AuditRecord, Element, QuillenRing};

/// One generator of the operator algebra.
#[derive(Clone, Debug)]
pub enum Atom {
    Identity,
    /// Ring endomorphism given by images of the model's generators.
    Substitution { name: String, images: Vec<Polynomial> },
    /// Restrict to a class, pull back, transfer back.
    Class { name: String, class: usize, pullback: Lin2 },
    /// Pull back inside the inner E-model, then transfer from the index-p subgroup.
    Subring { name: String, pullback: Vec<Polynomial> },
    /// Restrict to an inner class, pull back, transfer to E, then to the whole group.
    TwoStage { name: String, class: usize, pullback: Lin2 },
}

impl Atom {
    pub fn name(&self) -> &str {
        match self {
            Atom::Identity => "1",
            Atom::Substitution { name, .. }
            | Atom::Class { name, .. }
            | Atom::Subring { name, .. }
            | Atom::TwoStage { name, .. } => name,
        }
    }
}

/// Formal F_p-combination of atoms.
#[derive(Clone, Debug)]
pub struct BisetOperator {
    pub terms: Vec<(u32, Atom)>,
}

impl BisetOperator {
    pub fn atom(a: Atom) -> BisetOperator {
        BisetOperator { terms: vec![(1, a)] }
    }

    pub fn identity() -> BisetOperator {
        BisetOperator::atom(Atom::Identity)
    }

    pub fn combination(terms: Vec<(u32, Atom)>) -> BisetOperator {
        BisetOperator { terms }
    }

    pub fn sub(mut self, p: Prime, other: BisetOperator) -> BisetOperator {
        self.terms.extend(other.terms.into_iter().map(|(c, a)| (p.neg(c), a)));
        self
    }

    pub fn scale(mut self, p: Prime, c: u32) -> BisetOperator {
        for t in &mut self.terms {
            t.0 = p.mul(t.0, c);
        }
        self
    }

    /// The operator attached to a named catalog descriptor.
    pub fn descriptor(model: &GroupModel, name: &str) -> Result<BisetOperator> {
        Self::descriptor_at(model, name, 0)
    }

    /// The `k`-th descriptor with the given name.
    pub fn descriptor_at(model: &GroupModel, name: &str, k: usize) -> Result<BisetOperator> {
        let d = model
            .descriptors
            .iter()
            .filter(|d| d.name == name)
            .nth(k)
            .ok_or_else(|| Error::InvalidParameter(format!("no descriptor '{name}' on {}", model.spec)))?;
        let label = format!("[{},{}]", d.subgroup, d.name);
        let atom = match &d.kind {
            DescriptorKind::Class { class, pullback } => Atom::Class { name: label, class: *class, pullback: *pullback },
            DescriptorKind::Subring { pullback } => Atom::Subring { name: label, pullback: pullback.images.clone() },
            DescriptorKind::TwoStage { class, pullback } => {
                Atom::TwoStage { name: label, class: *class, pullback: *pullback }
            }
        };
        Ok(BisetOperator::atom(atom))
    }
}

impl fmt::Display for BisetOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(c, a)| format!("{c}{}", a.name())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Images of `a` followed by `b`.
pub fn compose_tables(a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    a.iter().map(|x| x.substitute(b)).collect()
}

pub fn table_power(model_gens: &[Polynomial], t: &[Polynomial], k: u32) -> Result<Vec<Polynomial>> {
    let mut acc = model_gens.to_vec();
    for _ in 0..k {
        acc = compose_tables(&acc, t)?;
    }
    Ok(acc)
}

fn generator_images(ring: &QuillenRing, gens: &crate::algebra::poly::VarList) -> Vec<Polynomial> {
    let vars = &ring.model.gens;
    debug_assert_eq!(vars.vars().len(), gens.vars().len());
    vars.vars().iter().map(|v| Polynomial::var(ring.p(), vars, &v.name).expect("own generator")).collect()
}

type MatrixCache = RwLock<HashMap<(String, u32), Arc<Vec<Vec<u32>>>>>;

/// Transfers and operator actions on one Quillen model.
#[derive(Debug)]
pub struct TransferEngine {
    pub ring: Arc<QuillenRing>,
    /// The inner E-ring of a G-family model.
    pub inner: Option<Arc<QuillenRing>>,
    atoms: MatrixCache,
}

impl TransferEngine {
    pub fn new(ring: Arc<QuillenRing>) -> TransferEngine {
        let inner = ring.model.inner.as_ref().map(|m| Arc::new(QuillenRing::new(m.clone(), ring.cutoff)));
        TransferEngine { ring, inner, atoms: RwLock::new(HashMap::new()) }
    }

    pub fn p(&self) -> Prime {
        self.ring.p()
    }

    pub fn model(&self) -> &GroupModel {
        &self.ring.model
    }

    fn inner_ring(&self) -> Result<&Arc<QuillenRing>> {
        self.inner.as_ref().ok_or_else(|| Error::Unsupported(format!("{} has no index-p subring", self.model().spec)))
    }

    /// Literal coset sum of a form: sum over i of sigma^i applied to f.
    pub fn coset_sum(p: Prime, coset: Lin2, f: &[u32]) -> Form {
        let mut acc = form::zero(form::degree(f));
        let mut cur = f.to_vec();
        for _ in 0..p.get() {
            form::add_into(p, &mut acc, &cur);
            cur = form::substitute(p, &cur, coset);
        }
        acc
    }

    /// Transfer from one elementary abelian class, certified by ring membership.
    pub fn transfer_from_class(&self, class: usize, f: &[u32]) -> Result<Element> {
        class_transfer(&self.ring, class, f)
    }

    /// Transfer from the index-p subgroup whose model is the inner E-ring.
    pub fn transfer_from_index_p_subring(&self, x: &Element) -> Result<Element> {
        let inner = self.inner_ring()?;
        let p = self.p();
        let c = action(self.model(), "c")?;
        let own = generator_images(inner, &inner.model.gens);
        let mut acc = Element::zero(x.ncomp(), x.degree);
        for j in 0..p.get() {
            let t = table_power(&own, &c.images, j)?;
            acc = acc.add(p, &inner.substitute(&t, x)?)?;
        }
        if !self.ring.contains(&acc)? {
            return Err(Error::NotInRing(acc.display(self.model())));
        }
        Ok(acc)
    }

    fn apply_atom(&self, a: &Atom, x: &Element) -> Result<Element> {
        let p = self.p();
        match a {
            Atom::Identity => Ok(x.clone()),
            Atom::Substitution { images, .. } => self.ring.substitute(images, x),
            Atom::Class { class, pullback, .. } => {
                let f = form::substitute(p, &x.comps[*class], *pullback);
                self.transfer_from_class(*class, &f)
            }
            Atom::Subring { pullback, .. } => {
                let inner = self.inner_ring()?;
                let y = inner.substitute(pullback, x)?;
                self.transfer_from_index_p_subring(&y)
            }
            Atom::TwoStage { class, pullback, .. } => {
                let inner = self.inner_ring()?;
                let f = form::substitute(p, &x.comps[*class], *pullback);
                let y = class_transfer(inner, *class, &f)?;
                self.transfer_from_index_p_subring(&y)
            }
        }
    }

    /// Action of an operator on an element.
    pub fn apply(&self, op: &BisetOperator, x: &Element) -> Result<Element> {
        let p = self.p();
        let mut acc = Element::zero(x.ncomp(), x.degree);
        for (c, a) in &op.terms {
            if *c != 0 {
                acc = acc.add(p, &self.apply_atom(a, x)?.scale(p, *c))?;
            }
        }
        Ok(acc)
    }

    fn atom_matrix(&self, a: &Atom, degree: u32) -> Result<Arc<Vec<Vec<u32>>>> {
        let key = (a.name().to_string(), degree);
        if let Some(m) = self.atoms.read().expect("operator cache poisoned").get(&key) {
            return Ok(m.clone());
        }
        let slice = self.ring.slice(degree)?;
        let m = match a {
            Atom::Identity => identity(slice.dim()),
            Atom::Substitution { images, .. } => self.ring.substitution_matrix(images, degree)?,
            _ => slice
                .elements
                .iter()
                .map(|b| {
                    let img = self.apply_atom(a, b)?;
                    slice.coordinates(&img).ok_or_else(|| Error::NotInRing(img.display(self.model())))
                })
                .collect::<Result<_>>()?,
        };
        let m = Arc::new(m);
        let mut w = self.atoms.write().expect("operator cache poisoned");
        Ok(w.entry(key).or_insert(m).clone())
    }

    /// Matrix of an operator on one slice; row k is the image of basis element k.
    pub fn matrix(&self, op: &BisetOperator, degree: u32) -> Result<Vec<Vec<u32>>> {
        let p = self.p();
        let n = self.ring.slice(degree)?.dim();
        let mut out = vec![vec![0u32; n]; n];
        for (c, a) in &op.terms {
            if *c == 0 {
                continue;
            }
            let m = self.atom_matrix(a, degree)?;
            for (o, r) in out.iter_mut().zip(m.iter()) {
                crate::algebra::linalg::axpy(p, o, *c, r);
            }
        }
        Ok(out)
    }

    /// Matrix of the composite "first ops[0], then ops[1], ...".
    pub fn compose(&self, ops: &[&BisetOperator], degree: u32) -> Result<Vec<Vec<u32>>> {
        let n = self.ring.slice(degree)?.dim();
        let mut acc = identity(n);
        for op in ops {
            acc = mat_mul(self.p(), &acc, &self.matrix(op, degree)?);
        }
        Ok(acc)
    }
}

/// Transfer from one class of a ring, zero on the other classes.
pub fn class_transfer(ring: &QuillenRing, class: usize, f: &[u32]) -> Result<Element> {
    let model = &ring.model;
    let p = ring.p();
    let n = model.classes.len();
    if class >= n {
        return Err(Error::InvalidParameter(format!("class {class} out of range")));
    }
    let degree = 2 * form::degree(f) as u32;
    if model.transfers_vanish {
        return Ok(Element::zero(n, degree));
    }
    if !model.class_transfers {
        return Err(Error::Unsupported(format!("class transfers on {}", model.spec)));
    }
    let z = Element::supported_on(n, class, TransferEngine::coset_sum(p, model.coset, f));
    if !ring.contains(&z)? {
        return Err(Error::NotInRing(z.display(model)));
    }
    Ok(z)
}

fn action<'a>(model: &'a GroupModel, name: &str) -> Result<&'a ActionTable> {
    model
        .inner_actions
        .iter()
        .chain(&model.out_generators)
        .find(|t| t.name == name)
        .ok_or_else(|| Error::Unsupported(format!("no action '{name}' on {}", model.spec)))
}

/// A verified-on-demand idempotent of the Out-group algebra.
#[derive(Clone, Debug)]
pub struct Idempotent {
    pub label: String,
    /// Index into the family: (i) for cyclic families, (s, q) for Z/2 x Z/(p-1).
    pub index: (u32, u32),
    pub op: BisetOperator,
}

/// Images for multiplying weight generators: each variable scaled by `c^weight`.
fn scaling_table(model: &GroupModel, weights: &[u32], c: u32) -> Vec<Polynomial> {
    let p = model.p;
    model
        .gens
        .vars()
        .iter()
        .zip(weights)
        .map(|(v, w)| Polynomial::var(p, &model.gens, &v.name).expect("own generator").scale(p.pow(c, *w as u64) as i64))
        .collect()
}

/// -sum_j j^{-i} [j*] over a cyclic group generated by `table` of order p-1.
fn cyclic_family(model: &GroupModel, gen_name: &str, table: &[Polynomial]) -> Result<Vec<(u32, BisetOperator)>> {
    let p = model.p;
    let g = p.primitive_root();
    let q = p.get() - 1;
    let own: Vec<Polynomial> =
        model.gens.vars().iter().map(|v| Polynomial::var(p, &model.gens, &v.name).expect("own generator")).collect();
    let mut powers = Vec::new();
    for m in 0..q {
        let t = table_power(&own, table, m)?;
        let j = p.pow(g, m as u64);
        let atom = if m == 0 {
            Atom::Identity
        } else {
            Atom::Substitution { name: format!("[{gen_name}^{m}]"), images: t }
        };
        powers.push((j, atom));
    }
    let mut out = Vec::new();
    for i in 0..q {
        let terms = powers
            .iter()
            .map(|(j, a)| (p.neg(p.inv(p.pow(*j, i as u64))), a.clone()))
            .collect();
        out.push((i, BisetOperator::combination(terms)));
    }
    Ok(out)
}

/// The Out-idempotent family of a model.
pub fn out_idempotents(model: &GroupModel) -> Result<Vec<Idempotent>> {
    let p = model.p;
    let g = p.primitive_root();
    let cyc = |gen: &str, t: &[Polynomial]| -> Result<Vec<Idempotent>> {
        Ok(cyclic_family(model, gen, t)?
            .into_iter()
            .map(|(i, op)| Idempotent { label: format!("e{i}"), index: (i, 0), op })
            .collect())
    };
    match model.family() {
        Family::Metacyclic if model.out_generators.is_empty() => {
            Ok(vec![Idempotent { label: "1".into(), index: (0, 0), op: BisetOperator::identity() }])
        }
        Family::Metacyclic => cyc("j", &model.out_generators[0].images),
        Family::Abelian => cyc("g", &scaling_table(model, &[1, 1], g)),
        Family::EType => cyc("g", &scaling_table(model, &[1, 1, 0, 2], g)),
        Family::GType => {
            let k = &model.out_generators.iter().find(|t| t.name == "k").expect("k table").images;
            let i = &model.out_generators.iter().find(|t| t.name == "i").expect("i table").images;
            let half = p.inv(2);
            let mut out = Vec::new();
            for s in 0..2u32 {
                let sign = if s == 0 { half } else { p.neg(half) };
                for (q, e) in cyclic_family(model, "k", k)? {
                    let mut terms = Vec::new();
                    for (c, a) in &e.terms {
                        terms.push((p.mul(*c, half), a.clone()));
                        let twisted = match a {
                            Atom::Identity => i.clone(),
                            Atom::Substitution { images, .. } => compose_tables(images, i)?,
                            _ => unreachable!(),
                        };
                        terms.push((
                            p.mul(*c, sign),
                            Atom::Substitution { name: format!("[i{}]", a.name()), images: twisted },
                        ));
                    }
                    out.push(Idempotent { label: format!("e{s},{q}"), index: (s, q), op: BisetOperator::combination(terms) });
                }
            }
            Ok(out)
        }
    }
}

/// Completeness, orthogonality and idempotency on every even slice up to `cutoff`.
pub fn verify_idempotents(engine: &TransferEngine, family: &[Idempotent], cutoff: u32) -> Result<Vec<AuditRecord>> {
    let p = engine.p();
    let (mut complete, mut orth, mut idem) = (true, true, true);
    let mut first_bad = None;
    for d in (0..=cutoff).step_by(2) {
        let n = engine.ring.slice(d)?.dim();
        let mats: Vec<_> = family.iter().map(|e| engine.matrix(&e.op, d)).collect::<Result<_>>()?;
        let mut sum = vec![vec![0u32; n]; n];
        for m in &mats {
            for (s, r) in sum.iter_mut().zip(m) {
                crate::algebra::linalg::axpy(p, s, 1, r);
            }
        }
        let ok_c = sum == identity(n);
        let mut ok_o = true;
        let mut ok_i = true;
        for (a, ma) in mats.iter().enumerate() {
            for (b, mb) in mats.iter().enumerate() {
                let prod = mat_mul(p, ma, mb);
                if a == b {
                    ok_i &= prod == *ma;
                } else {
                    ok_o &= prod.iter().all(|r| r.iter().all(|x| *x == 0));
                }
            }
        }
        if !(ok_c && ok_o && ok_i) && first_bad.is_none() {
            first_bad = Some(d);
        }
        complete &= ok_c;
        orth &= ok_o;
        idem &= ok_i;
    }
    let detail = match first_bad {
        None => format!("{} idempotents, degrees 0..={cutoff}", family.len()),
        Some(d) => format!("first failure in degree {d}"),
    };
    Ok(vec![
        AuditRecord { name: "idempotents sum to the identity".into(), pass: complete, detail: detail.clone() },
        AuditRecord { name: "idempotents are pairwise orthogonal".into(), pass: orth, detail: detail.clone() },
        AuditRecord { name: "idempotents are idempotent".into(), pass: idem, detail },
    ])
}

/// Random form of polynomial degree n.
pub fn random_form(p: Prime, n: usize, rng: &mut StdRng) -> Form {
    (0..=n).map(|_| rng.gen_range(0..p.get())).collect()
}

/// Tr(x * g|class) = Tr(x) * g on random forms, for every generator g and class.
pub fn frobenius_reciprocity(engine: &TransferEngine, seed: u64, samples: usize) -> Result<AuditRecord> {
    let ring = &engine.ring;
    let model = ring.model.as_ref();
    let p = ring.p();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked = 0;
    for class in 0..model.classes.len() {
        for (gi, g) in model.generators.iter().enumerate() {
            let mut e = vec![0u32; model.generators.len()];
            e[gi] = 1;
            let gel = ring.eval_monomial(&e);
            for _ in 0..samples {
                let max_n = (ring.cutoff.saturating_sub(g.degree) / 2) as usize;
                let n = rng.gen_range(0..=max_n.min(3 * p.get() as usize));
                let x = random_form(p, n, &mut rng);
                let lhs = engine.transfer_from_class(class, &form::mul(p, &x, &g.images[class]))?;
                let rhs = engine.transfer_from_class(class, &x)?.mul(p, &gel);
                checked += 1;
                if lhs != rhs {
                    return Ok(AuditRecord {
                        name: "Frobenius reciprocity".into(),
                        pass: false,
                        detail: format!("class {class}, generator {}, degree {}", g.name, 2 * n),
                    });
                }
            }
        }
    }
    Ok(AuditRecord { name: "Frobenius reciprocity".into(), pass: true, detail: format!("{checked} random checks, seed {seed}") })
}

/// Transfer of a restricted ring element vanishes, on every slice basis element.
pub fn transfer_of_restriction(engine: &TransferEngine, cutoff: u32) -> Result<AuditRecord> {
    let ring = &engine.ring;
    let mut checked = 0;
    for d in (0..=cutoff).step_by(2) {
        let slice = ring.slice(d)?;
        for b in &slice.elements {
            for class in 0..ring.ncomp() {
                checked += 1;
                if !engine.transfer_from_class(class, &b.comps[class])?.is_zero() {
                    return Ok(AuditRecord {
                        name: "transfer of a restriction vanishes".into(),
                        pass: false,
                        detail: format!("degree {d}, class {class}"),
                    });
                }
            }
        }
    }
    Ok(AuditRecord { name: "transfer of a restriction vanishes".into(), pass: true, detail: format!("{checked} checks") })
}

/// Rank of the p+1 transfers Tr_{A_j}(u^{p-1} d2(A_j)^q), and whether they lie in the expected span.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RankCertificate {
    pub q: u32,
    pub rank: usize,
    pub expected_rank: usize,
    pub in_span: bool,
}

pub fn transferred_d2_rank(engine: &TransferEngine, q: u32) -> Result<RankCertificate> {
    let ring = &engine.ring;
    let p = ring.p();
    let pp = p.get();
    if ring.model.family() != Family::EType || q == 0 || q > pp - 1 {
        return Err(Error::InvalidParameter(format!("needs an E-type model and 1 <= q <= p-1, got q = {q}")));
    }
    // d2(A_j) restricts to y (u^p - y^{p-1} u) on every class
    let d2 = form::mul(p, &[1, 0], &ring.model.generators[ring.model.gen_index("v").expect("v")].images[0]);
    let x = form::mul(p, &form::monomial(pp as usize - 1, pp as usize - 1, 1), &form::pow(p, &d2, q));
    let degree = 2 * form::degree(&x) as u32;
    let ncols = ring.ncomp() * (degree as usize / 2 + 1);
    let mut span = Echelon::new(p, ncols);
    let mut elems = Vec::new();
    for class in 0..ring.ncomp() {
        let z = engine.transfer_from_class(class, &x)?;
        span.insert(z.to_vector());
        elems.push(z);
    }
    let mut words = Vec::new();
    if q < pp - 1 {
        for k in 0..=q {
            words.push(format!("y1^{}*y2^{k}*C*v^{q}", q - k));
        }
        for k in 0..pp - q {
            words.push(format!("y1^{}*y2^{}*v^{q}", pp - 1 - k, q + k));
        }
    } else {
        let cv = format!("C*v^{}", pp - 1);
        for k in 0..pp {
            words.push(format!("y1^{}*y2^{k}*{cv}", pp - 1 - k));
        }
        words.push(format!("C*{cv}"));
    }
    let mut target = Echelon::new(p, ncols);
    for w in &words {
        target.insert(ring.eval_str(w)?.to_vector());
    }
    Ok(RankCertificate { q, rank: span.rank(), expected_rank: pp as usize + 1, in_span: span.is_subspace_of(&target) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::GroupSpec;

    fn engine(spec: &str, p: u32, cutoff: u32) -> TransferEngine {
        let p = Prime::new(p).unwrap();
        let m = GroupModel::build(&GroupSpec::parse(spec).unwrap(), p).unwrap();
        TransferEngine::new(Arc::new(QuillenRing::new(Arc::new(m), cutoff)))
    }

    #[test]
    fn class_transfer_examples() {
        let e = engine("C:3", 3, 40);
        let z = e.transfer_from_class(0, &[0, 0, 1]).unwrap();
        assert_eq!(z, e.ring.eval_str("y2^2 - C").unwrap());
        assert!(e.transfer_from_class(0, &[0, 1]).unwrap().is_zero());
        assert!(e.transfer_from_class(0, &[1, 0]).unwrap().is_zero());
        let z = e.transfer_from_class(3, &[0, 0, 1]).unwrap();
        assert_eq!(z, e.ring.eval_str("y1^2 - C").unwrap());
        let m = engine("M:1,2,1", 3, 40);
        let z = m.transfer_from_class(0, &[0, 0, 1]).unwrap();
        assert_eq!(z.comps[0], vec![2, 0, 0]);
        let c4 = engine("C:4", 3, 40);
        assert!(c4.transfer_from_class(0, &[0, 0, 1]).unwrap().is_zero());
    }

    #[test]
    fn subring_transfer() {
        let g = engine("G:5,2", 5, 60);
        let inner = g.inner.clone().unwrap();
        let z = g.transfer_from_index_p_subring(&inner.eval_str("y2^4").unwrap()).unwrap();
        assert_eq!(z, inner.eval_str("-y1^4").unwrap());
        assert!(g.transfer_from_index_p_subring(&inner.eval_str("C").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn idempotents_small() {
        let e = engine("M:1,2,1", 3, 36);
        let fam = out_idempotents(e.model()).unwrap();
        assert_eq!(fam.len(), 2);
        let v = e.ring.eval_str("v").unwrap();
        assert_eq!(e.apply(&fam[1].op, &v).unwrap(), v);
        assert!(e.apply(&fam[0].op, &v).unwrap().is_zero());
        for a in verify_idempotents(&e, &fam, 36).unwrap() {
            assert!(a.pass, "{}", a.name);
        }
    }

    #[test]
    fn rank_small() {
        let e = engine("C:3", 3, 80);
        for q in 1..=2 {
            let c = transferred_d2_rank(&e, q).unwrap();
            assert_eq!(c.rank, c.expected_rank);
            assert!(c.in_span);
        }
    }
}
