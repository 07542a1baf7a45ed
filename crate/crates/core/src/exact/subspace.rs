use super::matrix::{axpy_neg, rref_in_place};
use super::{Matrix, Scalar};
use crate::error::{check_len, Error, Result};

/// A linear subspace of `Q^n`, stored as the rows of its reduced row-echelon
/// basis.
///
/// Rows are nonzero, pivots are 1 and strictly increasing, and every pivot
/// column is zero outside its own row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_rref_unchecked(
            ambient,
            (0..ambient).map(|i| unit(ambient, i)).collect(),
            (0..ambient).collect(),
        )
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut rows = Vec::new();
        for v in vectors {
            check_len(ambient, v.len())?;
            rows.push(v);
        }
        let pivots = rref_in_place(&mut rows, ambient);
        rows.truncate(pivots.len());
        Ok(Subspace {
            ambient,
            rows,
            pivots,
        })
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Subspace::span(m.cols(), m.row_vecs()).expect("matrix rows have matrix width")
    }

    fn from_rref_unchecked(ambient: usize, rows: Vec<Vec<Scalar>>, pivots: Vec<usize>) -> Self {
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient, self.rows.clone()).expect("rows have ambient width")
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_len(self.ambient, v.len())?;
        let mut r = v.to_vec();
        self.reduce_in_place(&mut r);
        Ok(r)
    }

    fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                axpy_neg(v, &f, row);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Scalar::is_zero))
    }

    /// Coordinates of `v` with respect to the reduced basis rows, or `None`
    /// when `v` lies outside the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Adds `v` to the subspace, keeping the basis fully reduced. Returns
    /// whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool> {
        check_len(self.ambient, v.len())?;
        let mut r = v.to_vec();
        self.reduce_in_place(&mut r);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                axpy_neg(row, &f, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for v in &self.rows {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Expresses vectors in terms of a fixed, linearly independent list.
///
/// Keeps the reduced form `R = T * V` of the list so that coordinates of a
/// member `w` are read off the pivot entries of `w` and mapped through `T`.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    ambient: usize,
    len: usize,
    space: Subspace,
    transform: Vec<Vec<Scalar>>,
}

impl Coordinatizer {
    pub fn new(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let k = vectors.len();
        let mut aug = Vec::with_capacity(k);
        for (i, v) in vectors.iter().enumerate() {
            check_len(ambient, v.len())?;
            let mut row = v.clone();
            row.extend(unit(k, i));
            aug.push(row);
        }
        let pivots = rref_in_place(&mut aug, ambient);
        if pivots.len() != k {
            return Err(Error::Usage(format!(
                "coordinate basis is dependent: rank {} of {k}",
                pivots.len()
            )));
        }
        let mut rows = Vec::with_capacity(k);
        let mut transform = Vec::with_capacity(k);
        for mut row in aug {
            transform.push(row.split_off(ambient));
            rows.push(row);
        }
        Ok(Coordinatizer {
            ambient,
            len: k,
            space: Subspace::from_rref_unchecked(ambient, rows, pivots),
            transform,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn span(&self) -> &Subspace {
        &self.space
    }

    /// `c` with `w = sum_i c[i] * vectors[i]`, or `None` outside the span.
    pub fn coords(&self, w: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        check_len(self.ambient, w.len())?;
        let Some(rc) = self.space.coordinates(w)? else {
            return Ok(None);
        };
        let mut c = vec![Scalar::zero(); self.len];
        for (r, coef) in rc.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (ci, t) in c.iter_mut().zip(&self.transform[r]) {
                if !t.is_zero() {
                    *ci += &(coef * t);
                }
            }
        }
        Ok(Some(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn contains_examples() {
        let s = Subspace::span(3, vec![v(&[1, 0, 0])]).unwrap();
        assert!(s.contains(&v(&[0, 0, 0])).unwrap());
        assert!(!s.contains(&v(&[0, 1, 0])).unwrap());
        // e1 - e3 = (e1 + e2) - (e2 + e3)
        let t = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert!(t.contains(&v(&[1, 0, -1])).unwrap());
        assert!(matches!(
            t.contains(&v(&[1, 0])),
            Err(Error::Dimension { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn sum_examples() {
        let s = Subspace::span(2, vec![v(&[1, 1])]).unwrap();
        assert_eq!(s.sum(&s).unwrap(), s);
        let t = Subspace::span(2, vec![v(&[1, -1])]).unwrap();
        assert_eq!(s.sum(&t).unwrap(), Subspace::full(2));
        let e1 = Subspace::span(3, vec![v(&[1, 0, 0])]).unwrap();
        let e2 = Subspace::span(3, vec![v(&[0, 1, 0])]).unwrap();
        assert_eq!(e1.sum(&e2).unwrap().dim(), 2);
        assert!(e1.sum(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn insert_keeps_rref() {
        let mut s = Subspace::zero(3);
        assert!(s.insert(&v(&[0, 2, 4])).unwrap());
        assert!(s.insert(&v(&[1, 1, 1])).unwrap());
        assert!(!s.insert(&v(&[2, 4, 6])).unwrap());
        let batch = Subspace::span(3, vec![v(&[0, 2, 4]), v(&[1, 1, 1])]).unwrap();
        assert_eq!(s, batch);
        assert_eq!(s.pivots(), &[0, 1]);
    }

    #[test]
    fn coordinatizer_recovers_combination() {
        let basis = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let c = Coordinatizer::new(3, &basis).unwrap();
        assert_eq!(c.coords(&v(&[2, 5, 3])).unwrap(), Some(v(&[2, 3])));
        assert_eq!(c.coords(&v(&[1, 0, 0])).unwrap(), None);
        assert!(Coordinatizer::new(3, &[v(&[1, 0, 0]), v(&[2, 0, 0])]).is_err());
    }
}
