use std::sync::Arc;

use serde::Serialize;

use crate::algebra::fp::Prime;
use crate::algebra::linalg::{left_kernel, Echelon};
use crate::algebra::poly::{Polynomial, VarList};
use crate::catalog::Family;
use crate::error::{Error, Result};
use crate::quillen::{Element, QuillenRing};

/// An invertible 2x2 matrix [[a, b], [c, d]] over F_p.
///
/// Acts on linear forms by columns: x1 -> a x1 + c x2, x2 -> b x1 + d x2,
/// and on v by the determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GL2Element {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl GL2Element {
    pub fn new(p: Prime, a: i64, b: i64, c: i64, d: i64) -> Result<GL2Element> {
        let g = GL2Element { a: p.reduce(a), b: p.reduce(b), c: p.reduce(c), d: p.reduce(d) };
        if g.det(p) == 0 {
            return Err(Error::InvalidParameter(format!("singular matrix {g:?}")));
        }
        Ok(g)
    }

    pub fn det(&self, p: Prime) -> u32 {
        p.sub(p.mul(self.a, self.d), p.mul(self.b, self.c))
    }

    pub fn identity() -> GL2Element {
        GL2Element { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn unipotent(p: Prime) -> GL2Element {
        GL2Element::new(p, 1, 1, 0, 1).expect("invertible")
    }

    /// diag(g, 1) for the smallest primitive root g.
    pub fn torus_left(p: Prime) -> GL2Element {
        GL2Element::new(p, p.primitive_root() as i64, 0, 0, 1).expect("invertible")
    }

    /// diag(1, g).
    pub fn torus_right(p: Prime) -> GL2Element {
        GL2Element::new(p, 1, 0, 0, p.primitive_root() as i64).expect("invertible")
    }

    pub fn all(p: Prime) -> Vec<GL2Element> {
        let q = p.get() as i64;
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        if let Ok(g) = GL2Element::new(p, a, b, c, d) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out
    }

    /// Generator images for the action on a model's generators.
    pub fn table(&self, ring: &QuillenRing) -> Result<Vec<Polynomial>> {
        let m = &ring.model;
        let p = m.p;
        let (x1, x2) = match m.family() {
            Family::Abelian => ("y", "u"),
            Family::EType => ("y1", "y2"),
            _ => return Err(Error::Unsupported(format!("GL2 action on {}", m.spec))),
        };
        let lin = |s: u32, t: u32| format!("{s}*{x1} + {t}*{x2}");
        let mut images = Vec::new();
        for var in m.gens.vars() {
            let src = match var.name.as_str() {
                n if n == x1 => lin(self.a, self.c),
                n if n == x2 => lin(self.b, self.d),
                "v" => format!("{}*v", self.det(p)),
                n => n.to_string(),
            };
            images.push(Polynomial::parse(p, &m.gens, &src)?);
        }
        Ok(images)
    }

    pub fn act(&self, ring: &QuillenRing, x: &Element) -> Result<Element> {
        ring.substitute(&self.table(ring)?, x)
    }

    /// Action on a polynomial in k[y,u] (first two variables of its ring).
    pub fn act_polynomial(&self, x: &Polynomial) -> Result<Polynomial> {
        let p = x.prime();
        let vars = x.vars();
        let names: Vec<String> = vars.vars().iter().map(|v| v.name.clone()).collect();
        let lin = |s: u32, t: u32| Polynomial::parse(p, vars, &format!("{s}*{} + {t}*{}", names[0], names[1]));
        let mut images = vec![lin(self.a, self.c)?, lin(self.b, self.d)?];
        for n in &names[2..] {
            images.push(Polynomial::var(p, vars, n)?);
        }
        x.substitute(&images)
    }
}

/// Dickson invariants D1 = Y^p + V and D2 = Y V in k[y,u].
pub fn dickson(p: Prime) -> (Polynomial, Polynomial) {
    let vars = VarList::new(&[("y", 2), ("u", 2)]);
    let q = p.get();
    let y = Polynomial::parse(p, &vars, &format!("y^{}", q - 1)).expect("word");
    let v = Polynomial::parse(p, &vars, &format!("(u^{q} - y^{}*u)^{}", q - 1, q - 1)).expect("word");
    let d1 = y.pow(q).add(&v).expect("same ring");
    let d2 = y.mul(&v).expect("same ring");
    (d1, d2)
}

/// Label of a simple GL2 composition factor S^i (x) det^q, with degree shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleLabel {
    pub i: u32,
    pub q: u32,
    pub shift: u32,
}

/// The subquotient W / W' of one degree slice.
#[derive(Clone, Debug)]
pub struct ModuleWindow {
    pub degree: u32,
    pub w: Vec<Element>,
    pub w_prime: Vec<Element>,
}

impl ModuleWindow {
    fn echelon(&self, ring: &QuillenRing, vs: &[Element]) -> Echelon {
        let ncols = ring.ncomp() * (self.degree as usize / 2 + 1);
        Echelon::from_vectors(ring.p(), ncols, vs.iter().map(Element::to_vector))
    }

    pub fn quotient_dim(&self, ring: &QuillenRing) -> usize {
        let sub = self.echelon(ring, &self.w_prime);
        let all = sub.sum(&self.echelon(ring, &self.w));
        all.rank() - sub.rank()
    }

    /// W' inside W and both stable under the two standard generators.
    pub fn is_stable(&self, ring: &QuillenRing) -> Result<bool> {
        let p = ring.p();
        let wp = self.echelon(ring, &self.w_prime);
        let w = wp.sum(&self.echelon(ring, &self.w));
        for g in [GL2Element::unipotent(p), GL2Element::torus_left(p), GL2Element::torus_right(p)] {
            for x in &self.w_prime {
                if !wp.contains(&g.act(ring, x)?.to_vector()) {
                    return Ok(false);
                }
            }
            for x in &self.w {
                if !w.contains(&g.act(ring, x)?.to_vector()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Highest-weight label of the subquotient, which must have a single unipotent-fixed line.
    pub fn label(&self, ring: &QuillenRing) -> Result<SimpleLabel> {
        let p = ring.p();
        let ncols = ring.ncomp() * (self.degree as usize / 2 + 1);
        let mut tracker = Echelon::tracking(p, ncols);
        let mut nsub = 0;
        for x in &self.w_prime {
            if tracker.insert(x.to_vector()) {
                nsub += 1;
            }
        }
        let mut quotient_basis = Vec::new();
        for x in &self.w {
            if tracker.insert(x.to_vector()) {
                quotient_basis.push(x.clone());
            }
        }
        let dim = quotient_basis.len();
        if dim == 0 {
            return Err(Error::NotIrreducible("zero window".into()));
        }
        let coords = |x: &Element| -> Result<Vec<u32>> {
            let c = tracker
                .input_coordinates(&x.to_vector())
                .ok_or_else(|| Error::NotIrreducible("window is not stable".into()))?;
            Ok(c[nsub..].to_vec())
        };
        let u = GL2Element::unipotent(p);
        let mut rows = Vec::new();
        for b in &quotient_basis {
            let img = u.act(ring, b)?.sub(p, b)?;
            rows.push(coords(&img)?);
        }
        let fixed = left_kernel(p, &rows, dim);
        if fixed.len() != 1 {
            return Err(Error::NotIrreducible(format!(
                "{} unipotent-fixed lines in a window of dimension {dim}",
                fixed.len()
            )));
        }
        let f = &fixed[0];
        let mut vec = vec![0u32; ncols];
        for (c, b) in f.iter().zip(&quotient_basis) {
            crate::algebra::linalg::axpy(p, &mut vec, *c, &b.to_vector());
        }
        let fx = Element::from_vector(ring.ncomp(), self.degree, &vec);
        let weight = |g: GL2Element| -> Result<u32> {
            let img = coords(&g.act(ring, &fx)?)?;
            let k = f.iter().position(|x| *x != 0).expect("nonzero fixed vector");
            let lambda = p.mul(img[k], p.inv(f[k]));
            if img.iter().zip(f).any(|(a, b)| *a != p.mul(lambda, *b)) {
                return Err(Error::NotIrreducible("fixed line is not a torus eigenline".into()));
            }
            p.discrete_log(lambda).ok_or_else(|| Error::NotIrreducible("zero torus eigenvalue".into()))
        };
        let a = weight(GL2Element::torus_left(p))?;
        let b = weight(GL2Element::torus_right(p))?;
        let pm1 = p.get() - 1;
        let i = dim as u32 - 1;
        if i % pm1 != (a + pm1 - b) % pm1 && !(i == pm1 && a == b) {
            return Err(Error::NotIrreducible(format!("weights ({a},{b}) do not fit dimension {dim}")));
        }
        let half = self.degree / 2;
        Ok(SimpleLabel { i, q: b % pm1, shift: half.saturating_sub(i) })
    }
}

/// Products of a list of ring elements with a slice basis.
fn times_slice(ring: &QuillenRing, x: &Element, degree: u32) -> Result<Vec<Element>> {
    Ok(ring.slice(degree)?.elements.iter().map(|b| x.mul(ring.p(), b)).collect())
}

/// S-window (degree 2i) and T-window (degree 2(p-1+i)) of an E-type or A-model ring.
pub fn standard_submodules(ring: &QuillenRing, i: u32) -> Result<(ModuleWindow, ModuleWindow)> {
    let p = ring.p();
    let q = p.get();
    if i > q - 2 {
        return Err(Error::InvalidParameter(format!("i = {i} outside 0..={}", q - 2)));
    }
    let (x1, x2) = match ring.model.family() {
        Family::EType => ("y1", "y2"),
        Family::Abelian => ("y", "u"),
        _ => return Err(Error::Unsupported("windows need an E-type or elementary abelian model".into())),
    };
    let mono = |a: u32, b: u32| ring.eval_str(&format!("{x1}^{a}*{x2}^{b}"));
    let s = ModuleWindow { degree: 2 * i, w: (0..=i).map(|k| mono(i - k, k)).collect::<Result<_>>()?, w_prime: Vec::new() };
    let tdeg = 2 * (q - 1 + i);
    let t_literal: Vec<Element> = (0..q - i).map(|k| mono(q - 1 - k, i + k)).collect::<Result<_>>()?;
    let mut w_prime = Vec::new();
    match ring.model.family() {
        Family::EType => {
            w_prime.extend(times_slice(ring, &ring.eval_str("C")?, 2 * i)?);
            if i >= 1 {
                // v times degree 2i - 2 lands in degree 2(p - 1 + i)
                w_prime.extend(times_slice(ring, &ring.eval_str("v")?, 2 * i - 2)?);
            }
        }
        _ => {
            // the complement of T inside S^{p-1+i}, together with multiples of d2
            let j = q - 1 + i;
            w_prime.push(mono(j, 0)?);
            w_prime.push(mono(0, j)?);
            for k in 1..i {
                w_prime.push(mono(j - k, k)?);
            }
            if i >= 1 {
                let d2 = ring.eval_str(&format!("{x1}^{q}*{x2} - {x1}*{x2}^{q}"))?;
                w_prime.extend(times_slice(ring, &d2, tdeg - 2 * (q + 1))?);
            }
        }
    }
    let t = ModuleWindow { degree: tdeg, w: t_literal, w_prime };
    Ok((s, t))
}

/// Window spanned by a single element with no sub-window.
pub fn line_window(x: Element) -> ModuleWindow {
    ModuleWindow { degree: x.degree, w: vec![x], w_prime: Vec::new() }
}

pub fn shared_e_ring(p: Prime, cutoff: u32) -> Result<QuillenRing> {
    let m = crate::catalog::GroupModel::build(&crate::catalog::GroupSpec::CGroup { r: 3 }, p)?;
    Ok(QuillenRing::new(Arc::new(m), cutoff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn dickson_degrees_and_invariance() {
        for q in [3, 5, 7] {
            let pr = p(q);
            let (d1, d2) = dickson(pr);
            assert_eq!(d1.homogeneous_degree(), Some(2 * (q * q - q)));
            assert_eq!(d2.homogeneous_degree(), Some(2 * (q * q - 1)));
            for g in [GL2Element::unipotent(pr), GL2Element::torus_left(pr), GL2Element::torus_right(pr)] {
                assert_eq!(g.act_polynomial(&d1).unwrap(), d1);
                assert_eq!(g.act_polynomial(&d2).unwrap(), d2);
            }
        }
        assert_eq!(GL2Element::all(p(3)).len(), 48);
    }

    #[test]
    fn lemma_labels_small() {
        let pr = p(3);
        let ring = shared_e_ring(pr, 40).unwrap();
        let (s, t) = standard_submodules(&ring, 1).unwrap();
        assert_eq!(s.label(&ring).unwrap(), SimpleLabel { i: 1, q: 0, shift: 0 });
        assert_eq!(t.label(&ring).unwrap(), SimpleLabel { i: 1, q: 1, shift: 2 });
        let v = line_window(ring.eval_str("v").unwrap());
        let l = v.label(&ring).unwrap();
        assert_eq!((l.i, l.q), (0, 1));
    }

    #[test]
    fn swap_twists_v() {
        let pr = p(3);
        let ring = shared_e_ring(pr, 20).unwrap();
        let g = GL2Element::new(pr, 0, 1, 1, 0).unwrap();
        assert_eq!(g.act(&ring, &ring.eval_str("y1").unwrap()).unwrap(), ring.eval_str("y2").unwrap());
        assert_eq!(g.act(&ring, &ring.eval_str("v").unwrap()).unwrap(), ring.eval_str("-v").unwrap());
    }
}
