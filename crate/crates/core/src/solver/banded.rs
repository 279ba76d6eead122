use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square band matrix with `kl` sub- and `ku` superdiagonals.
///
/// Rows are stored with room for `kl` extra superdiagonals so the LU factors
/// with row interchanges fit in place. With `kl = ku = n - 1` this is plain
/// dense storage.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix<T> {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<T>,
}

impl<T: Real> BandedMatrix<T> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let kl = kl.min(n.saturating_sub(1));
        let ku = ku.min(n.saturating_sub(1));
        let width = 2 * kl + ku + 1;
        BandedMatrix {
            n,
            kl,
            ku,
            width,
            data: vec![T::zero(); n * width],
        }
    }

    pub fn dense(n: usize) -> Self {
        Self::zeros(n, n.saturating_sub(1), n.saturating_sub(1))
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let mut m = Self::dense(rows.len());
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `(kl, ku)`.
    pub fn bandwidth(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    fn in_band(&self, i: usize, j: usize, extra: usize) -> bool {
        i < self.n && j < self.n && j + self.kl >= i && j <= i + self.ku + extra
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.kl - i)
    }

    /// Entry `(i, j)`, zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> T {
        if self.in_band(i, j, 0) {
            self.data[self.slot(i, j)]
        } else {
            T::zero()
        }
    }

    /// Panics outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(self.in_band(i, j, 0), "entry ({i}, {j}) outside the band");
        let k = self.slot(i, j);
        self.data[k] = v;
    }

    /// Panics outside the band.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        assert!(self.in_band(i, j, 0), "entry ({i}, {j}) outside the band");
        let k = self.slot(i, j);
        self.data[k] = self.data[k] + v;
    }

    fn col_range(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.kl)..(i + self.ku + 1).min(self.n)
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                self.col_range(i)
                    .fold(T::zero(), |acc, j| acc + self.get(i, j) * x[j])
            })
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        (0..self.n)
            .map(|i| {
                self.col_range(i)
                    .fold(T::zero(), |acc, j| acc + self.get(i, j).abs())
            })
            .fold(T::zero(), T::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// LU factorization with partial pivoting.
    pub fn factor(&self) -> Result<BandedLu<T>> {
        let mut a = self.clone();
        let n = a.n;
        let (kl, ku) = (a.kl, a.ku);
        let scale = self.norm_inf();
        let tiny = T::epsilon() * scale * T::count(n.max(1));
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let last_col = (k + kl + ku).min(n - 1);
            let piv = (k..=last_row)
                .max_by(|&r, &s| {
                    let (x, y) = (a.data[a.slot(r, k)].abs(), a.data[a.slot(s, k)].abs());
                    x.partial_cmp(&y).expect("finite entries")
                })
                .expect("nonempty pivot range");
            let pivot = a.data[a.slot(piv, k)];
            if !(pivot.abs() > tiny) {
                return Err(Error::SingularMatrix {
                    column: k,
                    pivot: pivot.abs().approx(),
                });
            }
            pivots.push(piv);
            if piv != k {
                for j in k..=last_col {
                    let (s1, s2) = (a.slot(k, j), a.slot(piv, j));
                    a.data.swap(s1, s2);
                }
            }
            for i in k + 1..=last_row {
                let si = a.slot(i, k);
                let l = a.data[si] / pivot;
                a.data[si] = l;
                if l == T::zero() {
                    continue;
                }
                for j in k + 1..=last_col {
                    let (d, s) = (a.slot(i, j), a.slot(k, j));
                    a.data[d] = a.data[d] - l * a.data[s];
                }
            }
        }
        Ok(BandedLu { lu: a, pivots })
    }
}

/// Factors from [`BandedMatrix::factor`].
#[derive(Debug, Clone)]
pub struct BandedLu<T> {
    lu: BandedMatrix<T>,
    pivots: Vec<usize>,
}

impl<T: Real> BandedLu<T> {
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let a = &self.lu;
        let n = a.n;
        assert_eq!(b.len(), n, "right-hand side length");
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
            for i in k + 1..=(k + a.kl).min(n.saturating_sub(1)) {
                x[i] = x[i] - a.data[a.slot(i, k)] * x[k];
            }
        }
        for k in (0..n).rev() {
            let last_col = (k + a.kl + a.ku).min(n - 1);
            let mut s = x[k];
            for j in k + 1..=last_col {
                s = s - a.data[a.slot(k, j)] * x[j];
            }
            x[k] = s / a.data[a.slot(k, k)];
        }
        x
    }
}
