use std::sync::Arc;

use super::fp::Prime;
use super::poly::{Polynomial, VarList};

/// Dense binary form in k[y,u] of polynomial degree `len - 1`.
/// Entry `s` is the coefficient of y^{n-s} u^s.
pub type Form = Vec<u32>;

/// A linear substitution of one component: y -> a y + b u, u -> c y + d u.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Lin2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Lin2 {
    pub const IDENTITY: Lin2 = Lin2 { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(p: Prime, a: i64, b: i64, c: i64, d: i64) -> Lin2 {
        Lin2 { a: p.reduce(a), b: p.reduce(b), c: p.reduce(c), d: p.reduce(d) }
    }

    /// Composite "first self, then other" on forms: f -> other(self(f)).
    pub fn then(self, p: Prime, other: Lin2) -> Lin2 {
        // self sends y to a y + b u; other then rewrites y and u.
        let img = |x: u32, z: u32| -> (u32, u32) {
            (p.add(p.mul(x, other.a), p.mul(z, other.c)), p.add(p.mul(x, other.b), p.mul(z, other.d)))
        };
        let (a, b) = img(self.a, self.b);
        let (c, d) = img(self.c, self.d);
        Lin2 { a, b, c, d }
    }

    pub fn describe(&self, p: Prime) -> String {
        let lin = |x: u32, z: u32| -> String {
            let term = |c: u32, v: &str| -> Option<String> {
                match c {
                    0 => None,
                    1 => Some(v.to_string()),
                    _ if c == p.get() - 1 => Some(format!("-{v}")),
                    _ => Some(format!("{c}{v}")),
                }
            };
            let parts: Vec<String> = [term(x, "y"), term(z, "u")].into_iter().flatten().collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ").replace("+ -", "- ")
            }
        };
        format!("y -> {}, u -> {}", lin(self.a, self.b), lin(self.c, self.d))
    }
}

pub fn zero(n: usize) -> Form {
    vec![0; n + 1]
}

pub fn degree(f: &[u32]) -> usize {
    f.len() - 1
}

pub fn monomial(n: usize, s: usize, c: u32) -> Form {
    let mut f = zero(n);
    f[s] = c;
    f
}

pub fn mul(p: Prime, f: &[u32], g: &[u32]) -> Form {
    let mut out = vec![0u32; f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in g.iter().enumerate() {
            if *y != 0 {
                out[i + j] = p.add(out[i + j], p.mul(*x, *y));
            }
        }
    }
    out
}

pub fn pow(p: Prime, f: &[u32], e: u32) -> Form {
    let mut acc: Form = vec![1];
    let mut base = f.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(p, &base, &base);
        }
    }
    acc
}

pub fn add_into(p: Prime, acc: &mut [u32], f: &[u32]) {
    for (a, b) in acc.iter_mut().zip(f) {
        *a = p.add(*a, *b);
    }
}

pub fn scale(p: Prime, f: &[u32], c: u32) -> Form {
    f.iter().map(|x| p.mul(*x, c)).collect()
}

/// Apply a linear substitution to a form.
pub fn substitute(p: Prime, f: &[u32], m: Lin2) -> Form {
    let n = degree(f);
    let ly: Form = vec![m.a, m.b];
    let lu: Form = vec![m.c, m.d];
    let mut ypow: Vec<Form> = vec![vec![1]];
    let mut upow: Vec<Form> = vec![vec![1]];
    for k in 1..=n {
        ypow.push(mul(p, &ypow[k - 1], &ly));
        upow.push(mul(p, &upow[k - 1], &lu));
    }
    let mut out = zero(n);
    for (s, c) in f.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let term = mul(p, &ypow[n - s], &upow[s]);
        for (o, t) in out.iter_mut().zip(&term) {
            *o = p.add(*o, p.mul(*c, *t));
        }
    }
    out
}

/// The form as a Polynomial over variables named `y`, `u` (degree 2 each).
pub fn to_polynomial(p: Prime, f: &[u32], yname: &str, uname: &str) -> Polynomial {
    let vars: Arc<VarList> = VarList::new(&[(yname, 2), (uname, 2)]);
    let n = degree(f) as u32;
    let mut acc = Polynomial::zero(p, &vars);
    for (s, c) in f.iter().enumerate() {
        if *c != 0 {
            let m = Polynomial::monomial(p, &vars, vec![n - s as u32, s as u32], *c as i64);
            acc = acc.add(&m).expect("same variables");
        }
    }
    acc
}

pub fn from_polynomial(f: &Polynomial) -> Option<Form> {
    if f.vars().len() != 2 {
        return None;
    }
    let deg = f.homogeneous_degree()? as usize / 2;
    let mut out = zero(deg);
    for (e, c) in f.terms() {
        out[e[1] as usize] = c;
    }
    Some(out)
}

pub fn display(p: Prime, f: &[u32], yname: &str, uname: &str) -> String {
    to_polynomial(p, f, yname, uname).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_coset_sum() {
        // sum_i (u + i y)^{p-1} = -y^{p-1}
        for p in [3u32, 5, 7] {
            let pr = Prime::new(p).unwrap();
            let n = (p - 1) as usize;
            let x = monomial(n, n, 1);
            let mut acc = zero(n);
            let mut cur = x.clone();
            for _ in 0..p {
                add_into(pr, &mut acc, &cur);
                cur = substitute(pr, &cur, Lin2 { a: 1, b: 0, c: 1, d: 1 });
            }
            assert_eq!(acc, monomial(n, 0, p - 1));
        }
    }

    #[test]
    fn composition_order() {
        let p = Prime::new(5).unwrap();
        let s = Lin2::new(p, 0, 1, -1, 0);
        let t = Lin2::new(p, 1, 0, 1, 1);
        let f: Form = vec![1, 2, 3];
        let lhs = substitute(p, &substitute(p, &f, s), t);
        let rhs = substitute(p, &f, s.then(p, t));
        assert_eq!(lhs, rhs);
    }
}
