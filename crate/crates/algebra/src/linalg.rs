//! Dense linear algebra over an arbitrary [`Field`].

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(tI - M)` (Faddeev–LeVerrier is avoided
    /// in favour of Berkowitz, which needs no division). Coefficients low to high.
    pub fn charpoly(&self) -> Vec<F> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Berkowitz: build the vector for leading principal submatrices.
        let mut c: Vec<F> = vec![F::one()]; // high to low for 0x0
        for k in 0..n {
            // A_k = leading (k+1)x(k+1); partition with a = M[k][k],
            // R = row k cols 0..k, C = col k rows 0..k, S = leading k x k.
            let a = self.get(k, k).clone();
            let r: Vec<F> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let col: Vec<F> = (0..k).map(|i| self.get(i, k).clone()).collect();
            // Toeplitz column: 1, -a, -R C, -R S C, -R S^2 C, ...
            let mut t = vec![F::one(), a.neg()];
            let mut sc = col.clone();
            for _ in 0..k {
                let rc = r.iter().zip(&sc).fold(F::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
                t.push(rc.neg());
                let mut nsc = vec![F::zero(); k];
                for (i, item) in nsc.iter_mut().enumerate() {
                    *item = (0..k).fold(F::zero(), |acc, j| acc.add(&self.get(i, j).mul(&sc[j])));
                }
                sc = nsc;
            }
            // new c (length k+2) = Toeplitz(t) * c (length k+1)
            let mut nc = vec![F::zero(); k + 2];
            for (i, item) in nc.iter_mut().enumerate() {
                let mut acc = F::zero();
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && i - j < t.len() {
                        acc = acc.add(&t[i - j].mul(cj));
                    }
                }
                *item = acc;
            }
            c = nc;
        }
        c.reverse();
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{qi, Q};

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x == &qi(0)));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of t^3 - 2t^2 + 3t - 5
        let a = m(&[&[0, 0, 5], &[1, 0, -3], &[0, 1, 2]]);
        assert_eq!(a.charpoly(), vec![qi(-5), qi(3), qi(-2), qi(1)]);
        assert_eq!(a.det(), qi(5));
    }

    #[test]
    fn charpoly_constant_term_is_signed_det() {
        let a = m(&[&[2, 1, 0, 4], &[1, -1, 3, 0], &[0, 2, 1, 1], &[5, 0, 0, 1]]);
        let cp = a.charpoly();
        assert_eq!(cp[0], a.det());
        assert_eq!(cp[3], qi(-3));
    }
}
