use super::field::Field;

/// Sparse column: (row, value) entries sorted by row, no explicit zeros.
pub type SparseColumn<F> = Vec<(usize, F)>;

/// Column-sparse matrix used for the large boundary operators.
#[derive(Clone, Debug)]
pub struct SparseMatrix<F: Field> {
    rows: usize,
    columns: Vec<SparseColumn<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, columns: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Appends a column given as unsorted entries; duplicate rows are summed.
    pub fn push_column(&mut self, mut entries: Vec<(usize, F)>) {
        entries.sort_by_key(|e| e.0);
        let mut col: SparseColumn<F> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            assert!(r < self.rows, "row index out of range");
            match col.last_mut() {
                Some((lr, lv)) if *lr == r => *lv = lv.add(&v),
                _ => col.push((r, v)),
            }
        }
        col.retain(|(_, v)| !v.is_zero());
        self.columns.push(col);
    }

    pub fn column(&self, j: usize) -> &SparseColumn<F> {
        &self.columns[j]
    }

    /// Dense product `A v`.
    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.columns.len());
        let mut out = vec![F::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (r, a) in col {
                out[*r] = out[*r].add(&a.mul(&v[j]));
            }
        }
        out
    }

    /// Product of two sparse matrices, `self * other`.
    pub fn compose(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols(), other.rows());
        let mut out = SparseMatrix::new(self.rows);
        for col in &other.columns {
            let mut entries = Vec::new();
            for (k, b) in col {
                for (r, a) in &self.columns[*k] {
                    entries.push((*r, a.mul(b)));
                }
            }
            out.push_column(entries);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Rank via the standard lowest-pivot column reduction.
    pub fn rank(&self) -> usize {
        ColumnReducer::from_matrix(self).rank()
    }
}

/// Incremental column reduction: columns are reduced as they are inserted,
/// so the rank of `[A | extra]` can be read off after appending `extra`.
#[derive(Clone, Debug)]
pub struct ColumnReducer<F: Field> {
    rows: usize,
    /// pivot_of_row[r] = reduced column whose lowest entry sits in row r
    pivot_of_row: Vec<Option<usize>>,
    reduced: Vec<SparseColumn<F>>,
    rank: usize,
}

impl<F: Field> ColumnReducer<F> {
    pub fn new(rows: usize) -> Self {
        ColumnReducer { rows, pivot_of_row: vec![None; rows], reduced: Vec::new(), rank: 0 }
    }

    pub fn from_matrix(m: &SparseMatrix<F>) -> Self {
        let mut red = Self::new(m.rows());
        for c in &m.columns {
            red.insert(c.clone());
        }
        red
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `col` against the stored pivots and stores it.
    /// Returns true when the column was independent of the previous ones.
    pub fn insert(&mut self, col: SparseColumn<F>) -> bool {
        let col = self.reduce(col);
        let independent = match col.last() {
            Some(&(low, _)) => {
                self.pivot_of_row[low] = Some(self.reduced.len());
                self.rank += 1;
                true
            }
            None => false,
        };
        self.reduced.push(col);
        independent
    }

    /// Reduces without storing; an empty result means `col` is in the span.
    pub fn reduce(&self, mut col: SparseColumn<F>) -> SparseColumn<F> {
        while let Some(&(low, ref val)) = col.last() {
            assert!(low < self.rows);
            let Some(k) = self.pivot_of_row[low] else { break };
            let pivot_col = &self.reduced[k];
            let pivot_val = &pivot_col.last().expect("pivot column nonempty").1;
            let factor = val.mul(&pivot_val.inv());
            col = axpy(&col, &factor.neg(), pivot_col);
        }
        col
    }

    pub fn contains(&self, col: SparseColumn<F>) -> bool {
        self.reduce(col).is_empty()
    }
}

/// Column reduction that records, for each inserted column, which
/// combination of tagged inputs it has become. A column that reduces to zero
/// is not stored; its tag is returned as a linear relation.
#[derive(Clone, Debug)]
pub struct TrackedReducer<F: Field> {
    rows: usize,
    pivot_of_row: Vec<Option<usize>>,
    reduced: Vec<SparseColumn<F>>,
    tags: Vec<SparseColumn<F>>,
}

impl<F: Field> TrackedReducer<F> {
    pub fn new(rows: usize) -> Self {
        TrackedReducer { rows, pivot_of_row: vec![None; rows], reduced: Vec::new(), tags: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Inserts `col` carrying `tag`. Returns `Some(relation)` when `col`
    /// lies in the span of the stored columns: the relation is the tag
    /// combination whose columns sum to zero.
    pub fn insert(&mut self, mut col: SparseColumn<F>, mut tag: SparseColumn<F>) -> Option<SparseColumn<F>> {
        while let Some(&(low, ref val)) = col.last() {
            assert!(low < self.rows);
            let Some(k) = self.pivot_of_row[low] else { break };
            let pivot_val = &self.reduced[k].last().expect("pivot column nonempty").1;
            let factor = val.mul(&pivot_val.inv()).neg();
            col = axpy(&col, &factor, &self.reduced[k]);
            tag = axpy(&tag, &factor, &self.tags[k]);
        }
        match col.last() {
            Some(&(low, _)) => {
                self.pivot_of_row[low] = Some(self.reduced.len());
                self.reduced.push(col);
                self.tags.push(tag);
                None
            }
            None => Some(tag),
        }
    }
}

/// Basis of {v : M v = 0}.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseColumn<F>> {
    let mut red = TrackedReducer::new(m.rows());
    (0..m.cols()).filter_map(|j| red.insert(m.column(j).clone(), vec![(j, F::one())])).collect()
}

/// Returns x + a*y for sorted sparse columns.
pub(crate) fn axpy<F: Field>(x: &SparseColumn<F>, a: &F, y: &SparseColumn<F>) -> SparseColumn<F> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            let v = a.mul(&y[j].1);
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = x[i].1.add(&a.mul(&y[j].1));
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Converts a dense vector to a sparse column.
pub fn sparse_from_dense<F: Field>(v: &[F]) -> SparseColumn<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Field, F2, Q};
    use crate::algebra::matrix::Matrix;
    use rand::{Rng, SeedableRng};

    #[test]
    fn sparse_rank_matches_dense() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let dense: Vec<Vec<Q>> = (0..cols)
                .map(|_| (0..rows).map(|_| Q::from_i64(rng.gen_range(-1..=1))).collect())
                .collect();
            let mut sp = SparseMatrix::new(rows);
            for c in &dense {
                sp.push_column(sparse_from_dense(c));
            }
            assert_eq!(sp.rank(), Matrix::from_columns(rows, &dense).rank());
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..9);
            let mut sp = SparseMatrix::<Q>::new(rows);
            for _ in 0..cols {
                sp.push_column((0..rows).map(|r| (r, Q::from_i64(rng.gen_range(-2..=2)))).collect());
            }
            let ker = kernel_basis(&sp);
            assert_eq!(ker.len(), cols - sp.rank());
            for v in ker {
                let mut dense = vec![Q::zero(); cols];
                for (i, x) in v {
                    dense[i] = x;
                }
                assert!(sp.mul_vec(&dense).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn reducer_membership() {
        let mut red = ColumnReducer::<F2>::new(3);
        assert!(red.insert(vec![(0, F2::one()), (1, F2::one())]));
        assert!(red.insert(vec![(1, F2::one()), (2, F2::one())]));
        assert!(red.contains(vec![(0, F2::one()), (2, F2::one())]));
        assert!(!red.insert(vec![(0, F2::one()), (2, F2::one())]));
        assert_eq!(red.rank(), 2);
    }
}
