use std::collections::BTreeMap;

use crate::error::ExactError;
use crate::field::{Field, Scalar};

/// Sparse vector: entries sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Builds a sparse vector from unsorted `(index, value)` pairs, summing
/// duplicates and dropping zeros.
pub fn collect_vec(field: &Field, entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, v) in entries {
        match acc.get_mut(&i) {
            Some(x) => *x = field.add(x, &v),
            None => {
                acc.insert(i, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()
}

/// `a + c*b`.
pub fn axpy(field: &Field, a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(field: &Field, c: &Scalar, v: &[(usize, Scalar)]) -> SparseVec {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

struct PivotRow {
    vec: SparseVec,
    tag: SparseVec,
}

/// Incremental row echelon form. Each stored row is normalized so that its
/// leading (smallest-index) entry is 1; rows may carry a "tag" vector that
/// records which inserted vectors they combine, so dependencies can be read
/// off when a new vector reduces to zero.
pub struct Echelon {
    field: Field,
    pivots: BTreeMap<usize, PivotRow>,
}

pub enum Insert {
    /// The vector was independent; its pivot column is returned.
    Independent(usize),
    /// The vector reduced to zero; the tag combination that vanishes.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `v` against the stored rows, returning the remainder and the
    /// accumulated tag (starting from `tag`).
    pub fn reduce_tagged(&self, v: SparseVec, tag: SparseVec) -> Result<(SparseVec, SparseVec), ExactError> {
        let f = &self.field;
        let mut work: BTreeMap<usize, Scalar> = v.into_iter().collect();
        let mut rest: SparseVec = Vec::new();
        let mut tag = tag;
        while let Some((col, val)) = work.pop_first() {
            if f.is_zero(&val) {
                continue;
            }
            match self.pivots.get(&col) {
                None => rest.push((col, val)),
                Some(row) => {
                    let c = f.neg(&val);
                    for (j, x) in row.vec.iter().skip(1) {
                        let add = f.mul(&c, x);
                        match work.get_mut(j) {
                            Some(y) => *y = f.add(y, &add),
                            None => {
                                work.insert(*j, add);
                            }
                        }
                    }
                    if !row.tag.is_empty() {
                        tag = axpy(f, &tag, &c, &row.tag);
                    }
                }
            }
        }
        Ok((rest, tag))
    }

    pub fn reduce(&self, v: SparseVec) -> Result<SparseVec, ExactError> {
        Ok(self.reduce_tagged(v, Vec::new())?.0)
    }

    pub fn insert(&mut self, v: SparseVec) -> Result<Option<usize>, ExactError> {
        match self.insert_tagged(v, Vec::new())? {
            Insert::Independent(c) => Ok(Some(c)),
            Insert::Dependent(_) => Ok(None),
        }
    }

    pub fn insert_tagged(&mut self, v: SparseVec, tag: SparseVec) -> Result<Insert, ExactError> {
        let (rest, tag) = self.reduce_tagged(v, tag)?;
        if rest.is_empty() {
            return Ok(Insert::Dependent(tag));
        }
        let f = &self.field;
        let inv = f.inv(&rest[0].1)?;
        let col = rest[0].0;
        let vec = scale(f, &inv, &rest);
        let tag = scale(f, &inv, &tag);
        self.pivots.insert(col, PivotRow { vec, tag });
        Ok(Insert::Independent(col))
    }

    /// Fully reduced rows (each pivot column appears in exactly one row),
    /// keyed by pivot column.
    pub fn reduced_rows(&self) -> Result<BTreeMap<usize, SparseVec>, ExactError> {
        let f = &self.field;
        let mut out: BTreeMap<usize, SparseVec> = BTreeMap::new();
        // back-substitute from the largest pivot down
        for (&col, row) in self.pivots.iter().rev() {
            let mut v = row.vec.clone();
            loop {
                let hit = v
                    .iter()
                    .skip(1)
                    .find(|(j, _)| out.contains_key(j))
                    .map(|(j, x)| (*j, x.clone()));
                match hit {
                    None => break,
                    Some((j, x)) => {
                        let c = f.neg(&x);
                        v = axpy(f, &v, &c, &out[&j]);
                    }
                }
            }
            out.insert(col, v);
        }
        Ok(out)
    }
}

/// Sparse matrix stored by rows.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> SparseMatrix {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn from_dense(field: &Field, rows: &[Vec<Scalar>]) -> SparseMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, x)| !field.is_zero(x))
                        .map(|(j, x)| (j, x.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> SparseMatrix {
        SparseMatrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    pub fn set(&mut self, field: &Field, i: usize, j: usize, x: Scalar) {
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                if field.is_zero(&x) {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !field.is_zero(&x) {
                    row.insert(k, (j, x));
                }
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                rows[*j].push((i, x.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, field: &Field, v: &[(usize, Scalar)]) -> SparseVec {
        let dense: BTreeMap<usize, &Scalar> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = field.zero();
            for (j, x) in row {
                if let Some(y) = dense.get(j) {
                    acc = field.add(&acc, &field.mul(x, y));
                }
            }
            if !field.is_zero(&acc) {
                out.push((i, acc));
            }
        }
        out
    }

    /// Echelon form of the rows, inserting sparsest rows first (a cheap
    /// Markowitz-style ordering that limits fill-in).
    fn echelon(&self, field: &Field) -> Result<Echelon, ExactError> {
        let mut order: Vec<usize> = (0..self.nrows).collect();
        order.sort_by_key(|&i| self.rows[i].len());
        let mut e = Echelon::new(field.clone());
        for i in order {
            if !self.rows[i].is_empty() {
                e.insert(self.rows[i].clone())?;
            }
        }
        Ok(e)
    }

    pub fn rank(&self, field: &Field) -> Result<usize, ExactError> {
        Ok(self.echelon(field)?.rank())
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel_basis(&self, field: &Field) -> Result<Vec<SparseVec>, ExactError> {
        let e = self.echelon(field)?;
        let rows = e.reduced_rows()?;
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !rows.contains_key(c)) {
            let mut v = vec![(free, field.one())];
            for (&pc, row) in &rows {
                if let Some((_, x)) = row.iter().find(|(j, _)| *j == free) {
                    v.push((pc, field.neg(x)));
                }
            }
            v.sort_by_key(|(j, _)| *j);
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn kernel_dim(&self, field: &Field) -> Result<usize, ExactError> {
        Ok(self.ncols - self.rank(field)?)
    }

    /// Entrywise image in `F_p` (see [`Field::reduce_mod`]).
    pub fn reduce_mod(&self, field: &Field, p: u64, root: Option<u64>) -> Result<SparseMatrix, ExactError> {
        let target = Field::Prime(p);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mapped = r
                    .iter()
                    .map(|(j, x)| Ok((*j, field.reduce_mod(x, p, root)?)))
                    .collect::<Result<Vec<_>, ExactError>>()?;
                Ok(mapped.into_iter().filter(|(_, x)| !target.is_zero(x)).collect())
            })
            .collect::<Result<Vec<_>, ExactError>>()?;
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_int(n)
    }

    #[test]
    fn axpy_cancels() {
        let f = Field::Rationals;
        let a = vec![(0, q(1)), (2, q(3))];
        let b = vec![(2, q(1)), (5, q(1))];
        assert_eq!(axpy(&f, &a, &q(-3), &b), vec![(0, q(1)), (5, q(-3))]);
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = Field::Rationals;
        let m = SparseMatrix::from_dense(&f, &[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(m.rank(&f).unwrap(), 1);
        let ker = m.kernel_basis(&f).unwrap();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.apply(&f, &v).is_empty());
        }
    }

    #[test]
    fn tagged_dependency() {
        let f = Field::Rationals;
        let mut e = Echelon::new(f.clone());
        let a = vec![(0, q(1)), (1, q(1))];
        let b = vec![(1, q(1)), (2, q(1))];
        let c = vec![(0, q(1)), (1, q(2)), (2, q(1))];
        assert!(matches!(e.insert_tagged(a, vec![(0, q(1))]).unwrap(), Insert::Independent(0)));
        assert!(matches!(e.insert_tagged(b, vec![(1, q(1))]).unwrap(), Insert::Independent(1)));
        match e.insert_tagged(c, vec![(2, q(1))]).unwrap() {
            Insert::Dependent(tag) => assert_eq!(tag, vec![(0, q(-1)), (1, q(-1)), (2, q(1))]),
            Insert::Independent(_) => panic!("c = a + b"),
        }
    }
}
