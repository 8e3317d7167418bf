use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use crate::algebra::form::{self, Form};
use crate::algebra::fp::Prime;
use crate::algebra::linalg::Echelon;
use crate::algebra::poly::{monomial_basis, Polynomial};
use crate::algebra::series::PoincareSeries;
use crate::catalog::{eval_word_component, Family, GroupModel, GroupSpec};
use crate::error::{Error, Result};

/// A class in the Quillen model: one binary form per elementary abelian class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub degree: u32,
    pub comps: Vec<Form>,
}

impl Element {
    pub fn zero(ncomp: usize, degree: u32) -> Element {
        Element { degree, comps: vec![form::zero(degree as usize / 2); ncomp] }
    }

    /// The element that is `f` on class `k` and zero elsewhere.
    pub fn supported_on(ncomp: usize, k: usize, f: Form) -> Element {
        let degree = 2 * form::degree(&f) as u32;
        let mut e = Element::zero(ncomp, degree);
        e.comps[k] = f;
        e
    }

    pub fn ncomp(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|f| f.iter().all(|x| *x == 0))
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, p: Prime, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.comps.iter_mut().zip(&other.comps) {
            form::add_into(p, a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, p: Prime, other: &Element) -> Result<Element> {
        self.add(p, &other.scale(p, p.get() - 1))
    }

    pub fn scale(&self, p: Prime, c: u32) -> Element {
        Element { degree: self.degree, comps: self.comps.iter().map(|f| form::scale(p, f, c)).collect() }
    }

    pub fn mul(&self, p: Prime, other: &Element) -> Element {
        Element {
            degree: self.degree + other.degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| form::mul(p, a, b)).collect(),
        }
    }

    pub fn to_vector(&self) -> Vec<u32> {
        self.comps.concat()
    }

    pub fn from_vector(ncomp: usize, degree: u32, v: &[u32]) -> Element {
        let len = degree as usize / 2 + 1;
        assert_eq!(v.len(), ncomp * len);
        Element { degree, comps: v.chunks(len).map(<[u32]>::to_vec).collect() }
    }

    pub fn display(&self, model: &GroupModel) -> String {
        let mut s = String::from("(");
        for (k, (f, c)) in self.comps.iter().zip(&model.classes).enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{}: {}", c.name, form::display(model.p, f, &c.y, &c.u));
        }
        s.push(')');
        s
    }
}

/// Basis of H^degree(P) inside the product of component rings.
#[derive(Debug)]
pub struct RingSlice {
    pub degree: u32,
    pub ncomp: usize,
    /// Number of spanning monomials evaluated.
    pub spanning: usize,
    /// Independent generator monomials, in acceptance order.
    pub monomials: Vec<Vec<u32>>,
    pub elements: Vec<Element>,
    pub echelon: Echelon,
}

impl RingSlice {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        if x.degree != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: x.degree });
        }
        Ok(self.echelon.contains(&x.to_vector()))
    }

    /// Coordinates of x on the independent monomials, if x lies in the ring.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<u32>> {
        if x.degree != self.degree {
            return None;
        }
        self.echelon.input_coordinates(&x.to_vector())
    }

    pub fn combine(&self, p: Prime, coords: &[u32]) -> Element {
        let mut v = vec![0u32; self.echelon.ncols()];
        for (c, e) in coords.iter().zip(&self.elements) {
            crate::algebra::linalg::axpy(p, &mut v, *c, &e.to_vector());
        }
        Element::from_vector(self.ncomp, self.degree, &v)
    }
}

pub fn monomial_name(model: &GroupModel, exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(model.gens.vars())
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.name.clone() } else { format!("{}^{e}", v.name) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The Quillen model of one group with a per-degree slice cache.
#[derive(Debug)]
pub struct QuillenRing {
    pub model: Arc<GroupModel>,
    pub cutoff: u32,
    cache: RwLock<BTreeMap<u32, Arc<RingSlice>>>,
}

impl QuillenRing {
    pub fn new(model: Arc<GroupModel>, cutoff: u32) -> QuillenRing {
        QuillenRing { model, cutoff, cache: RwLock::new(BTreeMap::new()) }
    }

    pub fn p(&self) -> Prime {
        self.model.p
    }

    pub fn ncomp(&self) -> usize {
        self.model.classes.len()
    }

    pub fn eval_word(&self, w: &Polynomial) -> Result<Element> {
        eval_word(&self.model, w)
    }

    pub fn eval_str(&self, s: &str) -> Result<Element> {
        self.eval_word(&self.model.parse_word(s)?)
    }

    pub fn eval_monomial(&self, exps: &[u32]) -> Element {
        let w = Polynomial::monomial(self.p(), &self.model.gens, exps.to_vec(), 1);
        eval_word(&self.model, &w).expect("monomials are homogeneous")
    }

    /// Generator monomials of the given degree that respect the audited exponent bounds.
    pub fn spanning_monomials(&self, degree: u32) -> Vec<Vec<u32>> {
        let m = &self.model;
        monomial_basis(&m.gens, degree)
            .into_iter()
            .filter(|e| e.iter().zip(&m.caps).all(|(x, c)| x < c))
            .filter(|e| m.single_factor.iter().map(|&i| e[i]).sum::<u32>() <= 1)
            .collect()
    }

    pub fn slice(&self, degree: u32) -> Result<Arc<RingSlice>> {
        if degree > self.cutoff {
            return Err(Error::CutoffExceeded { degree, cutoff: self.cutoff });
        }
        if degree % 2 != 0 {
            return Err(Error::InvalidParameter(format!("odd degree {degree}")));
        }
        if let Some(s) = self.cache.read().expect("slice cache poisoned").get(&degree) {
            return Ok(s.clone());
        }
        let built = Arc::new(self.build_slice(degree));
        let mut w = self.cache.write().expect("slice cache poisoned");
        Ok(w.entry(degree).or_insert(built).clone())
    }

    fn build_slice(&self, degree: u32) -> RingSlice {
        let ncomp = self.ncomp();
        let ncols = ncomp * (degree as usize / 2 + 1);
        let mut echelon = Echelon::tracking(self.p(), ncols);
        let mut monomials = Vec::new();
        let mut elements = Vec::new();
        let span = self.spanning_monomials(degree);
        for e in &span {
            let x = self.eval_monomial(e);
            if echelon.insert(x.to_vector()) {
                monomials.push(e.clone());
                elements.push(x);
            }
        }
        RingSlice { degree, ncomp, spanning: span.len(), monomials, elements, echelon }
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        self.slice(x.degree)?.contains(x)
    }

    pub fn coordinates(&self, x: &Element) -> Result<Vec<u32>> {
        self.slice(x.degree)?
            .coordinates(x)
            .ok_or_else(|| Error::NotInRing(x.display(&self.model)))
    }

    /// Apply the ring endomorphism given by generator images.
    pub fn substitute(&self, images: &[Polynomial], x: &Element) -> Result<Element> {
        let slice = self.slice(x.degree)?;
        let coords = slice.coordinates(x).ok_or_else(|| Error::NotInRing(x.display(&self.model)))?;
        let mut acc = vec![0u32; slice.echelon.ncols()];
        for (c, mono) in coords.iter().zip(&slice.monomials) {
            if *c == 0 {
                continue;
            }
            let img = self.image_of_monomial(images, mono)?;
            crate::algebra::linalg::axpy(self.p(), &mut acc, *c, &img.to_vector());
        }
        Ok(Element::from_vector(self.ncomp(), x.degree, &acc))
    }

    fn image_of_monomial(&self, images: &[Polynomial], mono: &[u32]) -> Result<Element> {
        let w = Polynomial::monomial(self.p(), &self.model.gens, mono.to_vec(), 1).substitute(images)?;
        if w.is_zero() {
            return Ok(Element::zero(self.ncomp(), self.model.gens.degree_of(mono)));
        }
        self.eval_word(&w)
    }

    /// Matrix of a substitution on the slice basis (row k = coordinates of the image of basis k).
    pub fn substitution_matrix(&self, images: &[Polynomial], degree: u32) -> Result<Vec<Vec<u32>>> {
        let slice = self.slice(degree)?;
        slice
            .monomials
            .iter()
            .map(|m| {
                let img = self.image_of_monomial(images, m)?;
                slice.coordinates(&img).ok_or_else(|| Error::NotInRing(img.display(&self.model)))
            })
            .collect()
    }

    /// Slice dimensions at every degree 0..=cutoff (odd entries are zero).
    pub fn hilbert(&self, cutoff: u32) -> Result<Vec<i64>> {
        let mut out = vec![0i64; cutoff as usize + 1];
        for d in (0..=cutoff).step_by(2) {
            out[d as usize] = self.slice(d)?.dim() as i64;
        }
        Ok(out)
    }
}

pub fn eval_word(model: &GroupModel, w: &Polynomial) -> Result<Element> {
    if w.vars() != &model.gens {
        return Err(Error::VariableMismatch);
    }
    let degree = match w.homogeneous_degree() {
        Some(d) => d,
        None if w.is_zero() => 0,
        None => return Err(Error::Inhomogeneous),
    };
    let comps = (0..model.classes.len()).map(|k| eval_word_component(model, w, k)).collect();
    Ok(Element { degree, comps })
}

/// Stated closed form of the Hilbert series of H*(P) mod nilpotents.
pub fn closed_form(spec: &GroupSpec, p: Prime) -> PoincareSeries {
    let pp = p.get();
    match spec.family() {
        Family::Abelian => PoincareSeries::free(&[2, 2], 0, 1),
        Family::Metacyclic => PoincareSeries::free(&[2, spec.v_degree(p)], 0, 1),
        Family::EType => {
            let mut terms = Vec::new();
            for i in 0..pp {
                for j in 0..pp {
                    terms.push((2 * (i + j), 1));
                }
            }
            terms.push((4 * (pp - 1), -1));
            PoincareSeries::polynomial(&terms).mul(&PoincareSeries::free(&[2 * (pp - 1), 2 * pp], 0, 1))
        }
        Family::GType => {
            let base = PoincareSeries::free(&[2], 0, 1)
                .add(&PoincareSeries::free(&[2], 2 * pp, 1))
                .add(&PoincareSeries::polynomial(&[(2 * (pp - 1), 1)]));
            base.mul(&PoincareSeries::free(&[2 * pp], 0, 1))
        }
    }
}

/// One audit record: name, pass flag, detail.
#[derive(Clone, Debug, serde::Serialize)]
pub struct AuditRecord {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Relation, coset-action and Out-action audits of a model.
pub fn audit_model(model: &GroupModel) -> Vec<AuditRecord> {
    let p = model.p;
    let mut out = Vec::new();
    for rel in &model.relations {
        let target = match rel.scope {
            crate::catalog::RelationScope::Own => model,
            crate::catalog::RelationScope::Inner => model.ambient(),
        };
        let pass = eval_word(target, &rel.word).map(|e| e.is_zero()).unwrap_or(false);
        out.push(AuditRecord { name: format!("relation {}", rel.name), pass, detail: rel.word.to_string() });
    }
    // the coset action has order p and fixes every generator's restriction image
    if model.family() == Family::Abelian {
        return finish_audit(model, out);
    }
    let mut acc = crate::algebra::form::Lin2::IDENTITY;
    for _ in 0..p.get() {
        acc = acc.then(p, model.coset);
    }
    out.push(AuditRecord {
        name: "coset action has order p".into(),
        pass: acc == crate::algebra::form::Lin2::IDENTITY,
        detail: model.coset.describe(p),
    });
    let fixed = model.generators.iter().all(|g| {
        g.images.iter().all(|f| form::substitute(p, f, model.coset) == *f)
    });
    out.push(AuditRecord {
        name: "coset action fixes generator restrictions".into(),
        pass: fixed,
        detail: format!("{} generators x {} classes", model.generators.len(), model.classes.len()),
    });
    finish_audit(model, out)
}

fn finish_audit(model: &GroupModel, mut out: Vec<AuditRecord>) -> Vec<AuditRecord> {
    // Out generators preserve relations
    let (tables, target) = if model.inner.is_some() {
        (&model.inner_actions, model.ambient())
    } else {
        (&model.out_generators, model)
    };
    for t in tables.iter() {
        let mut ok = true;
        for rel in &model.relations {
            let (w, tgt) = match rel.scope {
                crate::catalog::RelationScope::Inner => (rel.word.clone(), target),
                crate::catalog::RelationScope::Own if model.inner.is_none() => (rel.word.clone(), model),
                crate::catalog::RelationScope::Own => continue,
            };
            let moved = w.substitute(&t.images).and_then(|x| eval_word(tgt, &x)).map(|e| e.is_zero());
            ok &= moved.unwrap_or(false);
        }
        out.push(AuditRecord {
            name: format!("action '{}' preserves relations", t.name),
            pass: ok,
            detail: format!("{} relations", model.relations.len()),
        });
    }
    if let Some(inner) = &model.inner {
        // the G-level Out tables agree with the E-level actions on every generator
        let mut ok = true;
        for (name, gtab) in [("i", &model.out_generators[0]), ("k", &model.out_generators[1])] {
            let etab = model.inner_actions.iter().find(|t| t.name == name).expect("inner action");
            for gi in 0..model.generators.len() {
                let w = model.inner_word(gi).expect("inner word");
                let lhs = w.substitute(&etab.images).and_then(|x| eval_word(inner, &x));
                let rhs_word = gtab.images[gi].clone();
                let rhs = eval_word(model, &rhs_word);
                ok &= matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b);
            }
        }
        out.push(AuditRecord {
            name: "Out tables agree with the E-level action".into(),
            pass: ok,
            detail: "i and k on y1, C, v, w_i".into(),
        });
        // the c-action fixes every G generator
        let c = model.inner_actions.iter().find(|t| t.name == "c").expect("c action");
        let mut ok = true;
        for gi in 0..model.generators.len() {
            let w = model.inner_word(gi).expect("inner word");
            let moved = w.substitute(&c.images).and_then(|x| eval_word(inner, &x));
            let orig = eval_word(inner, &w);
            ok &= matches!((moved, orig), (Ok(a), Ok(b)) if a == b);
        }
        out.push(AuditRecord { name: "c-action fixes G generators".into(), pass: ok, detail: "y2 -> y2 + y1".into() });
    }
    out
}

/// Certificates for the exponent bounds used in slice enumeration.
pub fn audit_spanning(ring: &QuillenRing) -> Result<Vec<AuditRecord>> {
    let m = &ring.model;
    let mut out = Vec::new();
    for (i, cap) in m.caps.iter().enumerate() {
        if *cap == u32::MAX {
            continue;
        }
        let mut e = vec![0u32; m.generators.len()];
        e[i] = *cap;
        let deg = m.gens.degree_of(&e);
        if deg > ring.cutoff {
            continue;
        }
        let pass = ring.slice(deg)?.contains(&ring.eval_monomial(&e))?;
        out.push(AuditRecord {
            name: format!("{}^{cap} lies in the span of bounded monomials", m.generators[i].name),
            pass,
            detail: format!("degree {deg}"),
        });
    }
    let sf = &m.single_factor;
    let mut all = true;
    let mut checked = 0;
    for (a, &i) in sf.iter().enumerate() {
        for &j in &sf[a..] {
            let mut e = vec![0u32; m.generators.len()];
            e[i] += 1;
            e[j] += 1;
            let deg = m.gens.degree_of(&e);
            if deg > ring.cutoff {
                continue;
            }
            checked += 1;
            all &= ring.slice(deg)?.contains(&ring.eval_monomial(&e))?;
        }
    }
    if !sf.is_empty() {
        out.push(AuditRecord {
            name: "products of two w-generators lie in the span of bounded monomials".into(),
            pass: all,
            detail: format!("{checked} products"),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::GroupSpec;

    fn ring(spec: &str, p: u32, cutoff: u32) -> QuillenRing {
        let p = Prime::new(p).unwrap();
        let m = GroupModel::build(&GroupSpec::parse(spec).unwrap(), p).unwrap();
        QuillenRing::new(Arc::new(m), cutoff)
    }

    #[test]
    fn e_slices() {
        let r = ring("C:3", 3, 40);
        assert_eq!(r.slice(2).unwrap().dim(), 2);
        assert_eq!(r.slice(4).unwrap().dim(), 4);
        let c = r.eval_str("C").unwrap();
        assert!(c.comps.iter().all(|f| *f == vec![1, 0, 0]));
        assert!(r.eval_str("y1^3*y2 - y1*y2^3").unwrap().is_zero());
        assert!(r.eval_str("C^2 - y1^4 - y2^4 + y1^2*y2^2").unwrap().is_zero());
        // C - y1^2 isolates the class at infinity
        let lonely = Element::supported_on(4, 3, vec![1, 0, 0]);
        assert!(r.contains(&lonely).unwrap());
        assert_eq!(r.eval_str("C - y1^2").unwrap(), lonely);
        let off = Element::supported_on(4, 3, vec![0, 0, 1]);
        assert!(!r.contains(&off).unwrap());
    }

    #[test]
    fn metacyclic_slice() {
        let r = ring("M:1,2,1", 3, 20);
        assert_eq!(r.slice(6).unwrap().dim(), 2);
    }

    #[test]
    fn audits_pass() {
        for (s, p) in [("C:3", 3), ("C:3", 5), ("G:4,1", 5), ("G:5,3", 7), ("A", 3), ("M:1,2,1", 5)] {
            let r = ring(s, p, 4 * p * p);
            for a in audit_model(&r.model) {
                assert!(a.pass, "{s} p={p}: {}", a.name);
            }
            for a in audit_spanning(&r).unwrap() {
                assert!(a.pass, "{s} p={p}: {}", a.name);
            }
        }
    }

    #[test]
    fn hilbert_matches_closed_form() {
        for (s, p, cut) in [("C:3", 3, 36), ("G:4,1", 5, 60), ("M:1,3,2", 3, 40), ("A", 5, 30)] {
            let r = ring(s, p, cut);
            let h = r.hilbert(cut).unwrap();
            let c = closed_form(&r.model.spec, r.p()).expand(cut);
            assert_eq!(h, c, "{s} p={p}");
        }
    }
}
