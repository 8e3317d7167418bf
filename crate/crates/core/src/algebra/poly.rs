use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::fp::Prime;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    /// Cohomological degree, positive and even.
    pub degree: u32,
}

/// Ordered variable list shared by polynomials of one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarList {
    vars: Vec<Var>,
}

impl VarList {
    pub fn new(vars: &[(&str, u32)]) -> Arc<VarList> {
        Arc::new(VarList {
            vars: vars
                .iter()
                .map(|(n, d)| {
                    assert!(*d > 0 && d % 2 == 0, "variable {n} must have positive even degree");
                    Var { name: n.to_string(), degree: *d }
                })
                .collect(),
        })
    }

    pub fn from_vars(vars: Vec<Var>) -> Arc<VarList> {
        Arc::new(VarList { vars })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn degree_of(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.vars).map(|(e, v)| e * v.degree).sum()
    }
}

/// All exponent vectors of exactly the given cohomological degree, in
/// graded-lexicographic order (first variable's exponent descending).
pub fn monomial_basis(vars: &VarList, degree: u32) -> Vec<Vec<u32>> {
    let degs: Vec<u32> = vars.vars.iter().map(|v| v.degree).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; degs.len()];
    fill(&degs, 0, degree, &mut cur, &mut out);
    out
}

fn fill(degs: &[u32], k: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k == degs.len() {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let max = rest / degs[k];
    for e in (0..=max).rev() {
        cur[k] = e;
        fill(degs, k + 1, rest - e * degs[k], cur, out);
    }
    cur[k] = 0;
}

/// Sparse polynomial over F_p in a declared list of even-degree variables.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    p: Prime,
    vars: Arc<VarList>,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl Polynomial {
    pub fn zero(p: Prime, vars: &Arc<VarList>) -> Polynomial {
        Polynomial { p, vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(p: Prime, vars: &Arc<VarList>, c: i64) -> Polynomial {
        Polynomial::monomial(p, vars, vec![0; vars.len()], c)
    }

    pub fn monomial(p: Prime, vars: &Arc<VarList>, exps: Vec<u32>, c: i64) -> Polynomial {
        assert_eq!(exps.len(), vars.len());
        let mut out = Polynomial::zero(p, vars);
        let c = p.reduce(c);
        if c != 0 {
            out.terms.insert(exps, c);
        }
        out
    }

    pub fn var(p: Prime, vars: &Arc<VarList>, name: &str) -> Result<Polynomial> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Polynomial::monomial(p, vars, e, 1))
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn vars(&self) -> &Arc<VarList> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, u32)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Common degree of all terms, or None when zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| self.vars.degree_of(e));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.p != other.p || self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    fn add_term(&mut self, e: Vec<u32>, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Polynomial {
        let c = self.p.reduce(c);
        let mut out = Polynomial::zero(self.p, &self.vars);
        if c == 0 {
            return out;
        }
        for (e, a) in &self.terms {
            out.terms.insert(e.clone(), self.p.mul(*a, c));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.p, &self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, self.p.mul(*ca, *cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.p, &self.vars, 1);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Ring homomorphism sending variable i to `images[i]`; images live in a
    /// common target ring and must have the variable's degree.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.vars.len() {
            return Err(Error::VariableMismatch);
        }
        let target = images.first().map(|x| x.vars.clone()).unwrap_or_else(|| self.vars.clone());
        for (img, v) in images.iter().zip(self.vars.vars()) {
            if img.vars != target || img.p != self.p {
                return Err(Error::VariableMismatch);
            }
            if let Some(d) = img.homogeneous_degree() {
                if d != v.degree {
                    return Err(Error::DegreeMismatch { expected: v.degree, found: d });
                }
            } else if !img.is_zero() {
                return Err(Error::Inhomogeneous);
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut out = Polynomial::zero(self.p, &target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(self.p, &target, *c as i64);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = match powers[i].last() {
                        None => Polynomial::constant(self.p, &target, 1),
                        Some(last) => last.mul(&images[i])?,
                    };
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Substitution by variable name; unnamed variables map to themselves.
    pub fn substitute_named(&self, images: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let mut full = Vec::with_capacity(self.vars.len());
        for v in self.vars.vars() {
            match images.iter().find(|(n, _)| *n == v.name) {
                Some((_, img)) => full.push(img.clone()),
                None => full.push(Polynomial::var(self.p, &self.vars, &v.name)?),
            }
        }
        self.substitute(&full)
    }

    /// Parse an expression such as `C^2 - y1^4 + 2*y1*(y2+y1)^3`.
    pub fn parse(p: Prime, vars: &Arc<VarList>, src: &str) -> Result<Polynomial> {
        let mut parser = Parser { p, vars, s: src.as_bytes(), i: 0 };
        let out = parser.expr()?;
        parser.ws();
        if parser.i != parser.s.len() {
            return Err(Error::Parse(format!("trailing input at {} in '{src}'", parser.i)));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    p: Prime,
    vars: &'a Arc<VarList>,
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                self.term()?.scale(-1)
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let n = self.number()?;
            return Ok(base.pow(n as u32));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse(format!("expected a number at {start}")))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(Polynomial::constant(self.p, self.vars, (n % self.p.get() as u64) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_')
                {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                Polynomial::var(self.p, self.vars, name)
            }
            _ => Err(Error::Parse(format!("unexpected input at {}", self.i))),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Terms in graded-lexicographic order, coefficients as signed residues.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            self.vars.degree_of(b).cmp(&self.vars.degree_of(a)).then_with(|| b.cmp(a))
        });
        let p = self.p.get() as i64;
        for (k, e) in keys.into_iter().enumerate() {
            let c = self.terms[e] as i64;
            let c = if c > p / 2 { c - p } else { c };
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.vars())
                .filter(|(x, _)| **x > 0)
                .map(|(x, v)| if *x == 1 { v.name.clone() } else { format!("{}^{}", v.name, x) })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> (Prime, Arc<VarList>) {
        (Prime::new(3).unwrap(), VarList::new(&[("y1", 2), ("y2", 2), ("C", 4), ("v", 6)]))
    }

    #[test]
    fn basis_order() {
        let (_, v) = ring();
        let b = monomial_basis(&v, 4);
        assert_eq!(b[0], vec![2, 0, 0, 0]);
        assert_eq!(b[1], vec![1, 1, 0, 0]);
        assert_eq!(b[2], vec![0, 2, 0, 0]);
        assert_eq!(b[3], vec![0, 0, 1, 0]);
        let cv = VarList::new(&[("C", 4), ("v", 6)]);
        assert_eq!(monomial_basis(&cv, 12), vec![vec![3, 0], vec![0, 2]]);
        assert_eq!(monomial_basis(&cv, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn frobenius_and_parse() {
        let (p, v) = ring();
        let a = Polynomial::parse(p, &v, "(y2+y1)^3").unwrap();
        assert_eq!(a, Polynomial::parse(p, &v, "y2^3 + y1^3").unwrap());
        let d = Polynomial::parse(p, &v, "y1^3*y2 - y1*y2^3").unwrap();
        let swapped = d
            .substitute_named(&[
                ("y1", Polynomial::var(p, &v, "y2").unwrap()),
                ("y2", Polynomial::var(p, &v, "y1").unwrap()),
            ])
            .unwrap();
        assert_eq!(swapped, d.scale(-1));
    }

    #[test]
    fn coset_sum_of_squares() {
        let p = Prime::new(3).unwrap();
        let v = VarList::new(&[("y", 2), ("u", 2)]);
        let mut acc = Polynomial::zero(p, &v);
        for i in 0..3 {
            let f = Polynomial::parse(p, &v, &format!("(u+{i}*y)^2")).unwrap();
            acc = acc.add(&f).unwrap();
        }
        assert_eq!(acc, Polynomial::parse(p, &v, "2*y^2").unwrap());
        assert_eq!(acc.to_string(), "-y^2");
    }

    #[test]
    fn degree_checked_substitution() {
        let (p, v) = ring();
        let x = Polynomial::parse(p, &v, "y1").unwrap();
        let bad = Polynomial::parse(p, &v, "C").unwrap();
        let err = x.substitute_named(&[("y1", bad)]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }
}
