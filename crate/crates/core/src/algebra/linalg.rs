use super::fp::Prime;

/// Reduced row echelon basis of a subspace of F_p^n.
///
/// Optionally tracks, for every stored row, its expression as a combination
/// of the vectors that were accepted by `insert` (in acceptance order).
#[derive(Clone, Debug)]
pub struct Echelon {
    p: Prime,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    track: Option<Vec<Vec<u32>>>,
}

impl Echelon {
    pub fn new(p: Prime, ncols: usize) -> Echelon {
        Echelon { p, ncols, rows: Vec::new(), pivots: Vec::new(), track: None }
    }

    pub fn tracking(p: Prime, ncols: usize) -> Echelon {
        Echelon { track: Some(Vec::new()), ..Echelon::new(p, ncols) }
    }

    pub fn from_vectors(p: Prime, ncols: usize, vs: impl IntoIterator<Item = Vec<u32>>) -> Echelon {
        let mut e = Echelon::new(p, ncols);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after elimination against the stored rows, together with
    /// the coefficients used on each stored row.
    fn eliminate(&self, v: &mut [u32]) -> Vec<u32> {
        let p = self.p;
        let mut coeffs = vec![0u32; self.rows.len()];
        for (k, (row, &piv)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[piv];
            if c == 0 {
                continue;
            }
            coeffs[k] = c;
            for (x, r) in v.iter_mut().zip(row).skip(piv) {
                if *r != 0 {
                    *x = p.sub(*x, p.mul(c, *r));
                }
            }
        }
        coeffs
    }

    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ncols);
        let mut w = v.to_vec();
        self.eliminate(&mut w);
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|x| *x == 0)
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let p = self.p;
        let mut w = v;
        let coeffs = self.eliminate(&mut w);
        let Some(piv) = w.iter().position(|x| *x != 0) else {
            return false;
        };
        let inv = p.inv(w[piv]);
        for x in w.iter_mut() {
            *x = p.mul(*x, inv);
        }
        // tracked combination of the new row: (e_new - sum coeffs_k * row_k) * inv
        let new_track = self.track.as_ref().map(|t| {
            let n = t.len() + 1;
            let mut comb = vec![0u32; n];
            comb[n - 1] = 1;
            for (k, c) in coeffs.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                for (j, x) in t[k].iter().enumerate() {
                    comb[j] = p.sub(comb[j], p.mul(*c, *x));
                }
            }
            comb.iter().map(|x| p.mul(*x, inv)).collect::<Vec<u32>>()
        });
        if let Some(t) = self.track.as_mut() {
            for row in t.iter_mut() {
                row.push(0);
            }
        }
        // clear the new pivot from existing rows
        for k in 0..self.rows.len() {
            let c = self.rows[k][piv];
            if c == 0 {
                continue;
            }
            for j in 0..self.ncols {
                if w[j] != 0 {
                    self.rows[k][j] = p.sub(self.rows[k][j], p.mul(c, w[j]));
                }
            }
            if let (Some(t), Some(nt)) = (self.track.as_mut(), new_track.as_ref()) {
                for j in 0..nt.len() {
                    if nt[j] != 0 {
                        t[k][j] = p.sub(t[k][j], p.mul(c, nt[j]));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, piv);
        if let (Some(t), Some(nt)) = (self.track.as_mut(), new_track) {
            t.insert(pos, nt);
        }
        true
    }

    /// Coordinates of `v` with respect to the stored rows, if `v` lies in the span.
    pub fn row_coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&q| v[q]).collect();
        let mut back = vec![0u32; self.ncols];
        for (c, row) in coords.iter().zip(&self.rows) {
            if *c == 0 {
                continue;
            }
            for (b, r) in back.iter_mut().zip(row) {
                *b = self.p.add(*b, self.p.mul(*c, *r));
            }
        }
        (back == v).then_some(coords)
    }

    /// Coordinates of `v` with respect to the accepted input vectors (tracking only).
    pub fn input_coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let t = self.track.as_ref().expect("echelon built without tracking");
        let rc = self.row_coordinates(v)?;
        let n = self.rows.len();
        let mut out = vec![0u32; n];
        for (c, comb) in rc.iter().zip(t) {
            if *c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(comb) {
                *o = self.p.add(*o, self.p.mul(*c, *x));
            }
        }
        Some(out)
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Echelon) -> Echelon {
        let mut e = Echelon::new(self.p, self.ncols);
        for r in self.rows.iter().chain(&other.rows) {
            e.insert(r.clone());
        }
        e
    }
}

/// Basis of { x : x * M = 0 } for M given as rows (left kernel).
pub fn left_kernel(p: Prime, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut e = Echelon::tracking(p, ncols);
    let mut accepted = Vec::new();
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let residual = e.reduce(r);
        if residual.iter().any(|x| *x != 0) {
            e.insert(r.clone());
            accepted.push(i);
        } else {
            // r = sum c_k accepted_k
            let c = e.input_coordinates(r).expect("in span");
            let mut k = vec![0u32; rows.len()];
            k[i] = 1;
            for (ck, &a) in c.iter().zip(&accepted) {
                k[a] = p.neg(*ck);
            }
            kernel.push(k);
        }
    }
    kernel
}

/// Product of square-or-rectangular matrices given by rows: (a * b).
pub fn mat_mul(p: Prime, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            let mut out = vec![0u32; m];
            for (x, brow) in row.iter().zip(b) {
                if *x == 0 {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    *o = p.add(*o, p.mul(*x, *y));
                }
            }
            out
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0u32; n];
            r[i] = 1;
            r
        })
        .collect()
}

pub fn axpy(p: Prime, acc: &mut [u32], c: u32, x: &[u32]) {
    if c == 0 {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if *b != 0 {
            *a = p.add(*a, p.mul(c, *b));
        }
    }
}

/// A labelled degree slice: ambient dimension, basis labels and an echelon basis.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    pub ambient_dim: usize,
    pub labels: Vec<String>,
    pub basis: Echelon,
}

impl DegreeSlice {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_tracking() {
        let p = Prime::new(5).unwrap();
        let mut e = Echelon::tracking(p, 3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(!e.insert(vec![1, 3, 4]));
        assert_eq!(e.rank(), 2);
        let c = e.input_coordinates(&[2, 0, 2]).unwrap();
        // 2*(1,2,3) + (0,1,1) = (2, 0, 2) mod 5
        assert_eq!(c, vec![2, 1]);
        assert!(e.input_coordinates(&[0, 0, 1]).is_none());
    }

    #[test]
    fn kernel() {
        let p = Prime::new(3).unwrap();
        let rows = vec![vec![1, 1], vec![2, 2], vec![0, 1]];
        let k = left_kernel(p, &rows, 2);
        assert_eq!(k.len(), 1);
        let prod = mat_mul(p, &k, &rows);
        assert!(prod[0].iter().all(|x| *x == 0));
    }
}
