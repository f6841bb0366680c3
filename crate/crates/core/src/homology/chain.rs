use crate::algebra::{ColumnReducer, Field, SparseColumn, SparseMatrix, TrackedReducer};

use super::HomologyError;

/// Integer column: (row, coefficient) pairs.
pub type IntColumn = Vec<(usize, i64)>;

/// Finite chain complex with integer boundary matrices.
///
/// `boundary[k][j]` is the boundary of the j-th k-cell as a combination of
/// (k−1)-cells; `boundary[0]` is all empty.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundary: Vec<Vec<IntColumn>>,
}

impl ChainComplex {
    /// Checks shapes and ∂∘∂ = 0 exactly.
    pub fn new(dims: Vec<usize>, boundary: Vec<Vec<IntColumn>>) -> Result<Self, HomologyError> {
        if dims.len() != boundary.len() {
            return Err(HomologyError::MalformedInput("one boundary list per degree".into()));
        }
        for (k, cols) in boundary.iter().enumerate() {
            if cols.len() != dims[k] {
                return Err(HomologyError::MalformedInput(format!("degree {k}: {} columns for {} cells", cols.len(), dims[k])));
            }
            let below = if k == 0 { 0 } else { dims[k - 1] };
            if cols.iter().flatten().any(|&(r, _)| r >= below) {
                return Err(HomologyError::MalformedInput(format!("degree {k}: face index out of range")));
            }
        }
        let c = ChainComplex { dims, boundary };
        for k in 2..c.dims.len() {
            for (j, col) in c.boundary[k].iter().enumerate() {
                if !c.apply_boundary(k - 1, col).is_empty() {
                    return Err(HomologyError::NotAChainComplex(format!("∂∂ ≠ 0 on cell {j} of degree {k}")));
                }
            }
        }
        Ok(c)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Highest degree with cells (0 for an empty complex).
    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn boundary_columns(&self, k: usize) -> &[IntColumn] {
        self.boundary.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// ∂_k applied to an integer k-chain.
    pub fn apply_boundary(&self, k: usize, chain: &IntColumn) -> IntColumn {
        let mut out = Vec::new();
        for &(j, a) in chain {
            out.extend(self.boundary[k][j].iter().map(|&(r, b)| (r, a * b)));
        }
        normalize_int(out)
    }

    pub fn boundary_matrix<F: Field>(&self, k: usize) -> SparseMatrix<F> {
        let rows = if k == 0 { 0 } else { self.dims[k - 1] };
        let mut m = SparseMatrix::new(rows);
        for col in self.boundary_columns(k) {
            m.push_column(to_field(col));
        }
        m
    }

    fn boundary_rank<F: Field>(&self, k: usize) -> usize {
        if k == 0 || k >= self.dims.len() {
            return 0;
        }
        self.boundary_matrix::<F>(k).rank()
    }

    /// Betti numbers over F in degrees 0..=top.
    pub fn betti<F: Field>(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.dims.len()).map(|k| self.boundary_rank::<F>(k)).collect();
        (0..self.dims.len()).map(|k| self.dims[k] - ranks[k] - ranks[k + 1]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Cells of degree ≤ top only. Homology below `top` is unchanged.
    pub fn truncated(&self, top: usize) -> ChainComplex {
        let n = (top + 1).min(self.dims.len());
        ChainComplex { dims: self.dims[..n].to_vec(), boundary: self.boundary[..n].to_vec() }
    }

    /// k-cycles that are independent modulo boundaries: a basis of H_k.
    /// Needs degree k+1 present to see all boundaries.
    pub fn homology_basis<F: Field>(&self, k: usize) -> Vec<SparseColumn<F>> {
        let mut cycles = TrackedReducer::<F>::new(if k == 0 { 0 } else { self.dims[k - 1] });
        let z: Vec<SparseColumn<F>> = self.boundary_columns(k)
            .iter()
            .enumerate()
            .filter_map(|(j, col)| cycles.insert(to_field(col), vec![(j, F::one())]))
            .collect();
        let mut red = ColumnReducer::<F>::new(self.dims[k]);
        for col in self.boundary_columns(k + 1) {
            red.insert(to_field(col));
        }
        z.into_iter().filter(|c| red.insert(c.clone())).collect()
    }

    /// Relations Σ c_j [z_j] = 0 in H_k among the given k-cycles.
    pub fn homology_relations<F: Field>(&self, k: usize, cycles: &[SparseColumn<F>]) -> Vec<SparseColumn<F>> {
        let mut red = TrackedReducer::<F>::new(self.dims[k]);
        for col in self.boundary_columns(k + 1) {
            red.insert(to_field(col), Vec::new());
        }
        cycles.iter().enumerate().filter_map(|(j, z)| red.insert(z.clone(), vec![(j, F::one())])).collect()
    }
}

/// Degree-wise integer chain map between two chain complexes.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    /// columns[k][j] = image of the j-th k-cell of the source
    columns: Vec<Vec<IntColumn>>,
}

impl ChainMap {
    /// Checks shapes and ∂∘f = f∘∂ exactly in every degree.
    pub fn new(source: &ChainComplex, target: &ChainComplex, columns: Vec<Vec<IntColumn>>) -> Result<Self, HomologyError> {
        if columns.len() != source.dims.len() {
            return Err(HomologyError::MalformedInput("one column list per source degree".into()));
        }
        for (k, cols) in columns.iter().enumerate() {
            let rows = target.dims.get(k).copied().unwrap_or(0);
            if cols.len() != source.dims[k] || cols.iter().flatten().any(|&(r, _)| r >= rows) {
                return Err(HomologyError::MalformedInput(format!("chain map shape mismatch in degree {k}")));
            }
        }
        let f = ChainMap { columns: columns.into_iter().map(|c| c.into_iter().map(normalize_int).collect()).collect() };
        for k in 1..source.dims.len() {
            if k >= target.dims.len() {
                continue;
            }
            for j in 0..source.dims[k] {
                let lhs = target.apply_boundary(k, &f.columns[k][j]);
                let rhs = f.apply(k - 1, &source.boundary[k][j]);
                if lhs != rhs {
                    return Err(HomologyError::NotAChainMap(format!("∂f ≠ f∂ on cell {j} of degree {k}")));
                }
            }
        }
        Ok(f)
    }

    pub fn degrees(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self, k: usize) -> &[IntColumn] {
        &self.columns[k]
    }

    pub fn apply(&self, k: usize, chain: &IntColumn) -> IntColumn {
        let mut out = Vec::new();
        for &(j, a) in chain {
            out.extend(self.columns[k][j].iter().map(|&(r, b)| (r, a * b)));
        }
        normalize_int(out)
    }

    pub fn apply_field<F: Field>(&self, k: usize, chain: &SparseColumn<F>) -> SparseColumn<F> {
        let mut out = Vec::new();
        for (j, a) in chain {
            out.extend(self.columns[k][*j].iter().map(|&(r, b)| (r, a.mul(&F::from_i64(b)))));
        }
        normalize_field(out)
    }

    /// g ∘ self.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        let n = self.columns.len().min(g.columns.len());
        ChainMap { columns: (0..n).map(|k| self.columns[k].iter().map(|c| g.apply(k, c)).collect()).collect() }
    }
}

/// Combines repeated rows and drops zeros; result sorted by row.
pub fn normalize_int(mut v: IntColumn) -> IntColumn {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: IntColumn = Vec::with_capacity(v.len());
    for (r, a) in v {
        match out.last_mut() {
            Some((lr, la)) if *lr == r => *la += a,
            _ => out.push((r, a)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

fn normalize_field<F: Field>(mut v: SparseColumn<F>) -> SparseColumn<F> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseColumn<F> = Vec::with_capacity(v.len());
    for (r, a) in v {
        match out.last_mut() {
            Some((lr, la)) if *lr == r => *la = la.add(&a),
            _ => out.push((r, a)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn to_field<F: Field>(col: &IntColumn) -> SparseColumn<F> {
    normalize_field(col.iter().map(|&(r, a)| (r, F::from_i64(a))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{F2, Q};

    /// Two-cell model of ℝP²: one cell per degree, ∂₂ = 2e₁.
    fn rp2_cells() -> ChainComplex {
        ChainComplex::new(vec![1, 1, 1], vec![vec![vec![]], vec![vec![]], vec![vec![(0, 2)]]]).unwrap()
    }

    #[test]
    fn betti_depends_on_field() {
        let c = rp2_cells();
        assert_eq!(c.betti::<Q>(), vec![1, 0, 0]);
        assert_eq!(c.betti::<F2>(), vec![1, 1, 1]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn rejects_non_complex() {
        let bad = ChainComplex::new(vec![2, 1, 1], vec![vec![vec![], vec![]], vec![vec![(0, 1)]], vec![vec![(0, 1)]]]);
        assert!(matches!(bad, Err(HomologyError::NotAChainComplex(_))));
    }

    #[test]
    fn identity_map_and_relations() {
        let c = rp2_cells();
        let id = ChainMap::new(&c, &c, vec![vec![vec![(0, 1)]]; 3]).unwrap();
        let z = c.homology_basis::<F2>(1);
        assert_eq!(z.len(), 1);
        assert!(c.homology_relations::<F2>(1, &[id.apply_field(1, &z[0])]).is_empty());
        assert!(ChainMap::new(&c, &c, vec![vec![vec![(0, 1)]], vec![vec![]], vec![vec![(0, 1)]]]).is_err());
    }
}
