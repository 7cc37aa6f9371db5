//! Dense exact rational matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use ncalg::{render, Q};
use num::{One, Zero};

/// A dense `rows × cols` matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, rhs: &RMat) -> RMat {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = RMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self += c · other`; panics on a shape mismatch.
    pub fn add_scaled(&mut self, other: &RMat, c: &Q) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shapes differ"
        );
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x += y * c;
            }
        }
    }

    pub fn scale(&self, c: &Q) -> RMat {
        RMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn sub(&self, other: &RMat) -> RMat {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn transpose(&self) -> RMat {
        RMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// The inverse by Gauss–Jordan elimination, or `None` if singular or
    /// not square.
    pub fn inverse(&self) -> Option<RMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = Q::one() / &a[(col, col)];
            for j in 0..n {
                a[(col, j)] *= &p;
                inv[(col, j)] *= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let (x, y) = (a[(col, j)].clone(), inv[(col, j)].clone());
                    a[(r, j)] -= &f * x;
                    inv[(r, j)] -= &f * y;
                }
            }
        }
        Some(inv)
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Q] {
        &self.data
    }
}

impl Index<(usize, usize)> for RMat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|j| render::rational(&self[(i, j)]))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
