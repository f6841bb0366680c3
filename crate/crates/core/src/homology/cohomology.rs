use crate::algebra::{ColumnReducer, ColumnSolver, Field, Matrix, sparse_from_dense};

use super::complex::SimplicialComplex;
use super::ring::GradedRing;
use super::HomologyError;

/// Betti numbers of K over F.
pub fn betti<F: Field>(k: &SimplicialComplex) -> Vec<usize> {
    k.chain_complex().betti::<F>()
}

/// Cocycle representatives of one degree and the projection of cocycles
/// onto their classes.
struct DegreeBasis<F: Field> {
    reps: Vec<Vec<F>>,
    /// columns: independent coboundaries, then the representatives
    solver: ColumnSolver<F>,
    coboundaries: usize,
}

impl<F: Field> DegreeBasis<F> {
    fn classify(&self, cocycle: &[F]) -> Result<Vec<F>, HomologyError> {
        let coords = self
            .solver
            .solve(cocycle)
            .ok_or_else(|| HomologyError::RingAxiom("cup product of cocycles is not a cocycle".into()))?;
        Ok(coords[self.coboundaries..].to_vec())
    }
}

/// Dense coboundary δ_k: C^k → C^{k+1}, the transpose of ∂_{k+1}.
fn coboundary<F: Field>(k: &SimplicialComplex, deg: usize) -> Matrix<F> {
    let rows = k.face_count(deg + 1);
    let cols = k.face_count(deg);
    let mut m = Matrix::zeros(rows, cols);
    for (r, face) in k.faces(deg + 1).iter().enumerate() {
        for i in 0..face.len() {
            let mut g = face.clone();
            g.remove(i);
            let c = k.face_index(&g).expect("faces are closed");
            m.set(r, c, F::from_i64(if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    m
}

fn degree_basis<F: Field>(k: &SimplicialComplex, deg: usize) -> DegreeBasis<F> {
    let n = k.face_count(deg);
    let cocycles = if deg < k.dim() { coboundary::<F>(k, deg).nullspace() } else { (0..n).map(|i| unit(n, i)).collect() };
    let mut red = ColumnReducer::new(n);
    let mut columns = Vec::new();
    if deg > 0 {
        let d = coboundary::<F>(k, deg - 1);
        for c in 0..d.cols() {
            let col = d.column(c);
            if red.insert(sparse_from_dense(&col)) {
                columns.push(col);
            }
        }
    }
    let coboundaries = columns.len();
    let reps: Vec<Vec<F>> = cocycles.into_iter().filter(|z| red.insert(sparse_from_dense(z))).collect();
    columns.extend(reps.iter().cloned());
    let solver = ColumnSolver::new(Matrix::from_columns(n, &columns)).expect("independent columns");
    DegreeBasis { reps, solver, coboundaries }
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Alexander-Whitney cup product of a p-cochain and a q-cochain.
pub fn cup_cochains<F: Field>(k: &SimplicialComplex, p: usize, alpha: &[F], q: usize, beta: &[F]) -> Vec<F> {
    k.faces(p + q)
        .iter()
        .map(|f| {
            let front = k.face_index(&f[..=p]).expect("front face");
            let back = k.face_index(&f[p..]).expect("back face");
            alpha[front].mul(&beta[back])
        })
        .collect()
}

/// H*(K; F) with cup products computed on cocycle representatives in the
/// complex's vertex order. Graded commutativity and associativity are
/// checked before returning.
pub fn cohomology_ring<F: Field>(k: &SimplicialComplex) -> Result<GradedRing<F>, HomologyError> {
    let bases: Vec<DegreeBasis<F>> = (0..=k.dim()).map(|d| degree_basis(k, d)).collect();
    let mut degrees = Vec::new();
    let mut offset = Vec::new();
    for (d, b) in bases.iter().enumerate() {
        offset.push(degrees.len());
        degrees.extend(std::iter::repeat_n(d, b.reps.len()));
    }
    let n = degrees.len();
    let locate = |i: usize| -> (usize, usize) {
        let d = degrees[i];
        (d, i - offset[d])
    };
    let mut table = vec![vec![vec![F::zero(); n]; n]; n];
    for a in 0..n {
        let (p, ia) = locate(a);
        for b in 0..n {
            let (q, ib) = locate(b);
            if p + q > k.dim() {
                continue;
            }
            let cup = cup_cochains(k, p, &bases[p].reps[ia], q, &bases[q].reps[ib]);
            for (j, c) in bases[p + q].classify(&cup)?.into_iter().enumerate() {
                table[a][b][offset[p + q] + j] = c;
            }
        }
    }
    let ones = vec![F::one(); k.face_count(0)];
    let unit_coords = bases[0].classify(&ones)?;
    let mut unit = vec![F::zero(); n];
    unit[..unit_coords.len()].clone_from_slice(&unit_coords);
    let reps = bases.into_iter().flat_map(|b| b.reps).collect();
    let ring = GradedRing::new(degrees, table, Some(unit), Some(reps))?;
    ring.check_graded_commutative()?;
    ring.check_associative()?;
    Ok(ring)
}

/// Evaluates cocycle representatives on a chain: ⟨φ, c⟩ = Σ φ(σ) c(σ).
pub fn pair<F: Field>(cochain: &[F], chain: &[(usize, F)]) -> F {
    chain.iter().fold(F::zero(), |acc, (i, c)| acc.add(&cochain[*i].mul(c)))
}
