use num_traits::{One, Zero};

use super::{Polynomial, Rational, RationalPoint};
use crate::error::{Error, Result};

/// Row-major matrix of polynomials sharing one ambient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| e.nvars() != first.nvars()) {
                return Err(Error::Shape("entries live in different rings".into()));
            }
        }
        Ok(PolyMatrix { nrows, ncols, entries })
    }

    /// Matrix of partials `∂f_i/∂x_j`.
    pub fn jacobian(components: &[Polynomial]) -> Result<Self> {
        let rows = components.iter().map(Polynomial::gradient).collect();
        Self::from_rows(rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    fn nvars(&self) -> usize {
        self.entries.first().map_or(0, Polynomial::nvars)
    }

    pub fn evaluate(&self, point: &RationalPoint) -> RationalMatrix {
        RationalMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|e| e.evaluate_at(point)).collect(),
        }
    }

    /// Determinant by Bareiss fraction-free elimination; every division
    /// performed is exact.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.nrows != self.ncols {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.nrows, self.ncols)));
        }
        let n = self.nrows;
        let nv = self.nvars();
        if n == 0 {
            return Ok(Polynomial::one(nv));
        }
        let mut m: Vec<Vec<Polynomial>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut negate = false;
        let mut prev = Polynomial::one(nv);
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(nv)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        let det = if negate { -det } else { det };
        debug_assert!(n > 4 || det == self.determinant_cofactor().unwrap());
        Ok(det)
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn determinant_cofactor(&self) -> Result<Polynomial> {
        if self.nrows != self.ncols {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.nrows, self.ncols)));
        }
        let cols: Vec<usize> = (0..self.ncols).collect();
        Ok(self.laplace(0, &cols))
    }

    fn laplace(&self, row: usize, cols: &[usize]) -> Polynomial {
        let nv = self.nvars();
        if cols.is_empty() {
            return Polynomial::one(nv);
        }
        let mut acc = Polynomial::zero(nv);
        for (k, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
            let term = e * &self.laplace(row + 1, &rest);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
}

/// Dense matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        Ok(RationalMatrix { nrows, ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| super::rat(v)).collect()).collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        RationalMatrix { nrows: n, ncols: n, entries }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.ncols + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.ncols.max(1)).map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                entries.push(self.get(i, j).clone());
            }
        }
        RationalMatrix { nrows: self.ncols, ncols: self.nrows, entries }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| (0..self.ncols).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    /// Row echelon form by Gaussian elimination; returns the reduced rows and
    /// the determinant sign/scale accumulated along the way.
    fn eliminate(&self) -> (Vec<Vec<Rational>>, usize, Rational) {
        let mut m = self.rows();
        let mut rank = 0;
        let mut det = Rational::one();
        for col in 0..self.ncols {
            let Some(p) = (rank..self.nrows).find(|&i| !m[i][col].is_zero()) else {
                det = Rational::zero();
                continue;
            };
            if p != rank {
                m.swap(p, rank);
                det = -det;
            }
            let pivot = m[rank][col].clone();
            det *= &pivot;
            for i in rank + 1..self.nrows {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = &m[i][col] / &pivot;
                let (top, bottom) = m.split_at_mut(i);
                for (target, source) in bottom[0][col..].iter_mut().zip(&top[rank][col..]) {
                    *target -= &f * source;
                }
            }
            rank += 1;
        }
        (m, rank, det)
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular or not square.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let mut a = self.rows();
        let mut inv = RationalMatrix::identity(n).rows();
        for col in 0..n {
            let p = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &pivot;
                inv[col][j] = &inv[col][j] / &pivot;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    let da = &f * &a[col][j];
                    a[i][j] -= da;
                    let di = &f * &inv[col][j];
                    inv[i][j] -= di;
                }
            }
        }
        Some(RationalMatrix { nrows: n, ncols: n, entries: inv.into_iter().flatten().collect() })
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.nrows != self.ncols {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.nrows, self.ncols)));
        }
        let (_, rank, det) = self.eliminate();
        Ok(if rank < self.nrows { Rational::zero() } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn numeric_differential_of_nagata() {
        let m = RationalMatrix::from_integers(&[&[3, -4, -2], &[1, -1, -1], &[0, 0, 1]]);
        assert_eq!(m.determinant().unwrap(), rat(1));
        let pm = PolyMatrix::from_rows(
            m.rows().into_iter().map(|r| r.into_iter().map(|c| Polynomial::constant(1, c)).collect()).collect(),
        )
        .unwrap();
        assert_eq!(pm.determinant().unwrap(), Polynomial::one(1));
    }

    #[test]
    fn inverse_round_trip() {
        let m = RationalMatrix::from_integers(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, RationalMatrix::from_integers(&[&[1, -1], &[-1, 2]]));
        assert!(RationalMatrix::from_integers(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn diagonal_jacobian() {
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let z2 = Polynomial::var(3, 2).scale(&rat(2));
        let j = PolyMatrix::jacobian(&[x, y, z2]).unwrap();
        assert_eq!(j.determinant().unwrap(), Polynomial::from_int(3, 2));
    }

    #[test]
    fn pivoting_and_shape_errors() {
        let m = RationalMatrix::from_integers(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant().unwrap(), rat(-1));
        let r = RationalMatrix::from_integers(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(r.rank(), 1);
        assert!(matches!(r.determinant(), Err(Error::Shape(_))));
        let pm = PolyMatrix::from_rows(vec![vec![Polynomial::one(1), Polynomial::one(1)]]).unwrap();
        assert!(matches!(pm.determinant(), Err(Error::Shape(_))));
        assert!(PolyMatrix::from_rows(vec![vec![Polynomial::one(1)], vec![]]).is_err());
    }

    #[test]
    fn singular_polynomial_matrix() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let m = PolyMatrix::from_rows(vec![
            vec![Polynomial::zero(2), x.clone(), y.clone()],
            vec![Polynomial::zero(2), y.clone(), x.clone()],
            vec![Polynomial::zero(2), &x + &y, &x * &y],
        ])
        .unwrap();
        assert!(m.determinant().unwrap().is_zero());
        let m2 = PolyMatrix::from_rows(vec![vec![Polynomial::zero(2), x.clone()], vec![y.clone(), Polynomial::one(2)]]).unwrap();
        assert_eq!(m2.determinant().unwrap(), -(&x * &y));
        assert_eq!(m2.determinant_cofactor().unwrap(), -(&x * &y));
    }
}
