use crate::error::{Error, Result};

/// An odd prime together with F_p arithmetic on `u32` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Prime> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not an odd prime")));
        }
        if p > 46_337 {
            return Err(Error::InvalidParameter(format!("p = {p} is too large")));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.0 as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.0 != 0, "inverse of zero in F_{}", self.0);
        self.pow(a, (self.0 - 2) as u64)
    }

    /// Smallest positive primitive root.
    pub fn primitive_root(self) -> u32 {
        let p = self.0;
        let order = p - 1;
        let factors = prime_factors(order);
        (2..p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (order / f) as u64) != 1))
            .expect("every prime has a primitive root")
    }

    /// Exponent e in [0, p-2] with g^e = a, for the primitive root g.
    pub fn discrete_log(self, a: u32) -> Option<u32> {
        let g = self.primitive_root();
        let mut x = 1;
        for e in 0..self.0 - 1 {
            if x == a % self.0 {
                return Some(e);
            }
            x = self.mul(x, g);
        }
        None
    }

    /// Binomial coefficient mod p via Lucas.
    pub fn binomial(self, n: u64, k: u64) -> u32 {
        if k > n {
            return 0;
        }
        let p = self.0 as u64;
        let (mut n, mut k) = (n, k);
        let mut acc = 1u32;
        while n > 0 || k > 0 {
            let (a, b) = (n % p, k % p);
            if b > a {
                return 0;
            }
            acc = self.mul(acc, small_binomial(self, a as u32, b as u32));
            n /= p;
            k /= p;
        }
        acc
    }
}

fn small_binomial(p: Prime, n: u32, k: u32) -> u32 {
    let mut num = 1;
    let mut den = 1;
    for i in 0..k {
        num = p.mul(num, n - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den))
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_odd_primes() {
        assert!(Prime::new(2).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(7).is_ok());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(Prime::new(3).unwrap().primitive_root(), 2);
        assert_eq!(Prime::new(5).unwrap().primitive_root(), 2);
        assert_eq!(Prime::new(7).unwrap().primitive_root(), 3);
    }

    #[test]
    fn lucas() {
        let p = Prime::new(5).unwrap();
        assert_eq!(p.binomial(8, 4), 0);
        assert_eq!(p.binomial(6, 1), 1);
        assert_eq!(p.binomial(4, 2), 1);
    }
}
