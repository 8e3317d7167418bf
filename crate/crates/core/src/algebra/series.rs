use std::collections::BTreeMap;
use std::fmt;

/// Exact rational series `numerator / prod (1 - t^d)`.
///
/// The numerator is indexed by degree in t (cohomological degree). The
/// denominator is kept factored and sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PoincareSeries {
    numerator: Vec<i64>,
    denominator: Vec<u32>,
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn one_minus(d: u32) -> Vec<i64> {
    let mut v = vec![0i64; d as usize + 1];
    v[0] = 1;
    v[d as usize] -= 1;
    v
}

fn multiset(d: &[u32]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for x in d {
        *m.entry(*x).or_insert(0) += 1;
    }
    m
}

impl PoincareSeries {
    pub fn new(numerator: Vec<i64>, mut denominator: Vec<u32>) -> PoincareSeries {
        assert!(denominator.iter().all(|d| *d > 0), "denominator degrees must be positive");
        denominator.sort_unstable();
        let mut numerator = numerator;
        trim(&mut numerator);
        PoincareSeries { numerator, denominator }
    }

    pub fn zero() -> PoincareSeries {
        PoincareSeries::new(Vec::new(), Vec::new())
    }

    /// t^shift times the Hilbert series of a polynomial ring on the given degrees.
    pub fn free(generators: &[u32], shift: u32, count: i64) -> PoincareSeries {
        let mut num = vec![0i64; shift as usize + 1];
        num[shift as usize] = count;
        PoincareSeries::new(num, generators.to_vec())
    }

    /// A polynomial (finite) series from (degree, coefficient) pairs.
    pub fn polynomial(terms: &[(u32, i64)]) -> PoincareSeries {
        let len = terms.iter().map(|(d, _)| *d as usize + 1).max().unwrap_or(0);
        let mut num = vec![0i64; len];
        for (d, c) in terms {
            num[*d as usize] += c;
        }
        PoincareSeries::new(num, Vec::new())
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    fn with_denominator(&self, target: &[u32]) -> Vec<i64> {
        let mine = multiset(&self.denominator);
        let mut extra = multiset(target);
        for (d, k) in mine {
            let e = extra.get_mut(&d).expect("target denominator must contain ours");
            assert!(*e >= k);
            *e -= k;
        }
        let mut num = self.numerator.clone();
        for (d, k) in extra {
            for _ in 0..k {
                num = poly_mul(&num, &one_minus(d));
            }
        }
        num
    }

    fn common_denominator(a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut m = multiset(a);
        for (d, k) in multiset(b) {
            let e = m.entry(d).or_insert(0);
            *e = (*e).max(k);
        }
        m.into_iter().flat_map(|(d, k)| std::iter::repeat(d).take(k)).collect()
    }

    pub fn add(&self, other: &PoincareSeries) -> PoincareSeries {
        let den = Self::common_denominator(&self.denominator, &other.denominator);
        let a = self.with_denominator(&den);
        let b = other.with_denominator(&den);
        let mut num = vec![0i64; a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            num[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            num[i] += x;
        }
        PoincareSeries::new(num, den).reduced()
    }

    pub fn scale(&self, c: i64) -> PoincareSeries {
        PoincareSeries::new(self.numerator.iter().map(|x| x * c).collect(), self.denominator.clone())
    }

    pub fn sub(&self, other: &PoincareSeries) -> PoincareSeries {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &PoincareSeries) -> PoincareSeries {
        let mut den = self.denominator.clone();
        den.extend_from_slice(&other.denominator);
        PoincareSeries::new(poly_mul(&self.numerator, &other.numerator), den).reduced()
    }

    pub fn shift(&self, k: u32) -> PoincareSeries {
        let mut num = vec![0i64; k as usize];
        num.extend_from_slice(&self.numerator);
        PoincareSeries::new(num, self.denominator.clone())
    }

    /// Exact division of every coefficient by `m`, if the numerator allows it.
    pub fn divide(&self, m: i64) -> Option<PoincareSeries> {
        if self.numerator.iter().all(|x| x % m == 0) {
            Some(PoincareSeries::new(
                self.numerator.iter().map(|x| x / m).collect(),
                self.denominator.clone(),
            ))
        } else {
            None
        }
    }

    /// Cancel denominator factors (1 - t^d) that divide the numerator exactly.
    pub fn reduced(&self) -> PoincareSeries {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        if num.is_empty() {
            return PoincareSeries::new(Vec::new(), Vec::new());
        }
        let mut k = den.len();
        while k > 0 {
            k -= 1;
            if let Some(q) = divide_one_minus(&num, den[k]) {
                num = q;
                den.remove(k);
            }
        }
        PoincareSeries::new(num, den)
    }

    /// Coefficients at degrees 0..=cutoff.
    pub fn expand(&self, cutoff: u32) -> Vec<i64> {
        let n = cutoff as usize + 1;
        let mut c = vec![0i64; n];
        for (i, x) in self.numerator.iter().enumerate().take(n) {
            c[i] = *x;
        }
        for &d in &self.denominator {
            let d = d as usize;
            for k in d..n {
                c[k] += c[k - d];
            }
        }
        c
    }

    pub fn coefficient(&self, degree: u32) -> i64 {
        self.expand(degree)[degree as usize]
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &PoincareSeries) -> bool {
        let a = poly_mul_den(&self.numerator, &other.denominator);
        let b = poly_mul_den(&other.numerator, &self.denominator);
        a == b
    }

    /// Degree bound beyond which agreement of expansions implies equality.
    pub fn agreement_bound(&self, other: &PoincareSeries) -> u32 {
        let da: u32 = self.denominator.iter().sum();
        let db: u32 = other.denominator.iter().sum();
        let na = self.numerator.len() as u32;
        let nb = other.numerator.len() as u32;
        (na + db).max(nb + da) + da + db
    }

    /// Equality checked only through expansions up to `agreement_bound`.
    pub fn equals_by_expansion(&self, other: &PoincareSeries) -> bool {
        let bound = self.agreement_bound(other);
        self.expand(bound) == other.expand(bound)
    }

    /// First degree where expansions differ, up to `cutoff`.
    pub fn first_difference(&self, other: &PoincareSeries, cutoff: u32) -> Option<u32> {
        let a = self.expand(cutoff);
        let b = other.expand(cutoff);
        a.iter().zip(&b).position(|(x, y)| x != y).map(|i| i as u32)
    }

    pub fn nonnegative_through(&self, cutoff: u32) -> bool {
        self.expand(cutoff).iter().all(|x| *x >= 0)
    }

    /// The first `n` nonzero coefficients as (degree, coefficient).
    pub fn leading_terms(&self, n: usize, cutoff: u32) -> Vec<(u32, i64)> {
        self.expand(cutoff)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .take(n)
            .map(|(d, c)| (d as u32, c))
            .collect()
    }

    /// Drop the degree-zero coefficient (reduced cohomology).
    pub fn positive_part(&self) -> PoincareSeries {
        let c0 = self.coefficient(0);
        self.sub(&PoincareSeries::polynomial(&[(0, c0)]))
    }
}

fn poly_mul_den(num: &[i64], den: &[u32]) -> Vec<i64> {
    let mut out = num.to_vec();
    for d in den {
        out = poly_mul(&out, &one_minus(*d));
    }
    trim(&mut out);
    out
}

fn divide_one_minus(num: &[i64], d: u32) -> Option<Vec<i64>> {
    let d = d as usize;
    if num.len() <= d {
        return None;
    }
    // num = q * (1 - t^d): q_k = num_k + q_{k-d}
    let qlen = num.len() - d;
    let mut q = vec![0i64; qlen];
    for k in 0..qlen {
        q[k] = num[k] + if k >= d { q[k - d] } else { 0 };
    }
    let mut back = poly_mul(&q, &one_minus(d as u32));
    back.resize(num.len(), 0);
    (back == num).then_some(q)
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(d, c)| match d {
                0 => format!("{c}"),
                _ if *c == 1 => format!("t^{d}"),
                _ if *c == -1 => format!("-t^{d}"),
                _ => format!("{c}t^{d}"),
            })
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
        if self.denominator.is_empty() {
            write!(f, "{num}")
        } else {
            let den: Vec<String> = self.denominator.iter().map(|d| format!("(1-t^{d})")).collect();
            write!(f, "({num})/({})", den.join(""))
        }
    }
}

impl fmt::Debug for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        let s = PoincareSeries::free(&[4, 6], 0, 1);
        let c = s.expand(12);
        assert_eq!((c[0], c[4], c[6], c[8], c[10], c[12]), (1, 1, 1, 1, 1, 2));
        assert_eq!(c[2], 0);
        let a = PoincareSeries::free(&[2, 2], 0, 1).expand(6);
        assert_eq!((a[0], a[2], a[4], a[6]), (1, 2, 3, 4));
        assert_eq!(PoincareSeries::polynomial(&[(4, 1)]).expand(8), vec![0, 0, 0, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn presentations_of_extraspecial_agree() {
        let lhs = PoincareSeries::new(vec![1, 0, 2, 0, 3, 0, 2], vec![4, 6]);
        let quotient = PoincareSeries::new(one_minus(8), vec![2, 2]);
        let rhs = quotient.add(&PoincareSeries::polynomial(&[(4, 1)])).mul(&PoincareSeries::free(&[6], 0, 1));
        assert!(lhs.equals(&rhs));
        assert!(lhs.equals_by_expansion(&rhs));
    }

    #[test]
    fn simple_identities() {
        let a = PoincareSeries::free(&[2], 0, 1);
        let b = PoincareSeries::new(vec![1, 0, 1], vec![4]);
        assert!(a.equals(&b));
        assert!(!a.equals(&PoincareSeries::free(&[4], 0, 1)));
    }

    #[test]
    fn subtraction_cancels() {
        let a = PoincareSeries::free(&[2, 4], 0, 1);
        assert!(a.sub(&a).is_zero());
    }
}
