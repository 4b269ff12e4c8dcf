//! Dense exact linear algebra over a field, used as a brute-force oracle
//! against the combinatorial shortcuts elsewhere.

use num_traits::{One, Zero};

use crate::ring::{BaseRing, Coeff};

/// The field computations run in: `Z` is replaced by its fraction field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field(BaseRing);

impl Field {
    pub fn of(ring: BaseRing) -> Field {
        match ring {
            BaseRing::Integers => Field(BaseRing::Rationals),
            other => Field(other),
        }
    }

    pub fn ring(self) -> BaseRing {
        self.0
    }

    fn inv(self, a: &Coeff) -> Coeff {
        self.0.div(&Coeff::one(), a).expect("pivot is nonzero")
    }

    fn sub(self, a: &Coeff, b: &Coeff) -> Coeff {
        self.0.add(a, &self.0.neg(b))
    }
}

/// Row-major dense matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Coeff>>,
}

impl Dense {
    pub fn zero(rows: usize, cols: usize) -> Dense {
        Dense { rows, cols, data: vec![vec![Coeff::zero(); cols]; rows] }
    }

    pub fn identity(d: usize) -> Dense {
        let mut m = Dense::zero(d, d);
        for i in 0..d {
            m.data[i][i] = Coeff::one();
        }
        m
    }

    pub fn mul(&self, o: &Dense, f: Field) -> Dense {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Dense::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = f.ring().add(&out.data[i][j], &f.ring().mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize, f: Field) -> Dense {
        (0..k).fold(Dense::identity(self.rows), |acc, _| acc.mul(self, f))
    }

    pub fn apply(&self, v: &[Coeff], f: Field) -> Vec<Coeff> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Coeff::zero(), |acc, (a, b)| f.ring().add(&acc, &f.ring().mul(a, b)))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Coeff>>, f: Field) -> (Vec<Vec<Coeff>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = f.inv(&rows[top][col]);
        for x in rows[top].iter_mut() {
            *x = f.ring().mul(x, &inv);
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(x, &f.ring().mul(&factor, p));
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    (rows, pivots)
}

/// A subspace of `F^dim`, stored as its reduced row echelon basis so that
/// equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vec<Coeff>>,
}

impl Subspace {
    pub fn span(dim: usize, vectors: Vec<Vec<Coeff>>, f: Field) -> Subspace {
        debug_assert!(vectors.iter().all(|v| v.len() == dim));
        let (basis, _) = rref(vectors, f);
        Subspace { dim, basis }
    }

    pub fn zero(dim: usize) -> Subspace {
        Subspace { dim, basis: Vec::new() }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(dim: usize, coords: impl IntoIterator<Item = usize>, f: Field) -> Subspace {
        let vectors = coords
            .into_iter()
            .map(|i| {
                let mut v = vec![Coeff::zero(); dim];
                v[i] = Coeff::one();
                v
            })
            .collect();
        Subspace::span(dim, vectors, f)
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Coeff>] {
        &self.basis
    }

    pub fn sum(&self, o: &Subspace, f: Field) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Subspace::span(self.dim, v, f)
    }

    /// Zassenhaus: reduce `[[U, U], [V, 0]]`; rows with vanishing left half
    /// span the intersection in their right half.
    pub fn intersect(&self, o: &Subspace, f: Field) -> Subspace {
        let d = self.dim;
        let mut rows = Vec::with_capacity(self.rank() + o.rank());
        for u in &self.basis {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for v in &o.basis {
            let mut r = v.clone();
            r.extend(std::iter::repeat_n(Coeff::zero(), d));
            rows.push(r);
        }
        let (reduced, _) = rref(rows, f);
        let inter = reduced.into_iter().filter(|r| r[..d].iter().all(Zero::is_zero)).map(|r| r[d..].to_vec()).collect();
        Subspace::span(d, inter, f)
    }

    pub fn image(&self, m: &Dense, f: Field) -> Subspace {
        Subspace::span(m.rows, self.basis.iter().map(|v| m.apply(v, f)).collect(), f)
    }
}

/// Null space of `m`.
pub fn kernel(m: &Dense, f: Field) -> Subspace {
    let (reduced, pivots) = rref(m.data.clone(), f);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Coeff::zero(); m.cols];
            v[fc] = Coeff::one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = f.ring().neg(&row[fc]);
            }
            v
        })
        .collect();
    Subspace::span(m.cols, vectors, f)
}

/// Column space of `m`.
pub fn image(m: &Dense, f: Field) -> Subspace {
    let cols = (0..m.cols).map(|c| m.data.iter().map(|r| r[c]).collect()).collect();
    Subspace::span(m.rows, cols, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::of(BaseRing::Integers)
    }

    fn dense(rows: &[&[i128]]) -> Dense {
        let data: Vec<Vec<Coeff>> =
            rows.iter().map(|r| r.iter().map(|&x| Coeff::from_integer(x)).collect()).collect();
        Dense { rows: data.len(), cols: data[0].len(), data }
    }

    #[test]
    fn kernel_and_image_of_a_jordan_block() {
        let n = dense(&[&[0, 1], &[0, 0]]);
        assert_eq!(kernel(&n, q()), Subspace::coordinate(2, [0], q()));
        assert_eq!(image(&n, q()), Subspace::coordinate(2, [0], q()));
        assert!(n.pow(2, q()).is_zero());
    }

    #[test]
    fn rank_nullity() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(kernel(&m, q()).rank() + image(&m, q()).rank(), 3);
        let k = kernel(&m, q());
        for v in k.basis() {
            assert!(m.apply(v, q()).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn intersection_of_planes() {
        let f = q();
        let a = Subspace::coordinate(3, [0, 1], f);
        let b = Subspace::span(3, vec![vec![1.into(), 0.into(), 1.into()], vec![0.into(), 1.into(), 0.into()]], f);
        let i = a.intersect(&b, f);
        assert_eq!(i, Subspace::coordinate(3, [1], f));
        assert_eq!(a.sum(&b, f).rank(), 3);
    }

    #[test]
    fn prime_field_reduces() {
        let f = Field::of(BaseRing::PrimeField(3));
        let m = dense(&[&[1, 1], &[2, 2]]);
        assert_eq!(image(&m, f).rank(), 1);
        let m = dense(&[&[3, 0], &[0, 1]]).data.iter().map(|r| r.iter().map(|c| f.ring().normalize(*c).unwrap()).collect()).collect();
        assert_eq!(rref(m, f).0.len(), 1);
    }
}
