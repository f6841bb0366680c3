//! The symmetric square SP²(K) = (K×K)/swap as a Δ-complex, the maps
//! δ₂(x) = [x,x] and ξ₂(x) = [x,x₀] on chains, and the checks built on them.

mod delta;

use serde::Serialize;

use crate::algebra::{Field, Matrix, SparseColumn};
use crate::homology::{cohomology_ring, pair, ChainComplex, ChainMap, HomologyError, IntColumn, SimplicialComplex};

pub use delta::{
    barycentric_poset_subdivision, face_subdivision, symmetric_chains, z2_quotient, CellProductComplex, DeltaComplex,
    FacePoset,
};

/// Cells of K×K with the swap action.
pub fn product_poset_complex(k: &SimplicialComplex) -> CellProductComplex {
    CellProductComplex::new(k)
}

/// Chain map C(K) → C(SP²K), with both complexes cut at the same degree.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub map: ChainMap,
    top: usize,
}

impl InducedMap {
    /// Highest degree whose homology both complexes determine.
    pub fn homology_top(&self) -> usize {
        self.top
    }

    /// A basis z_j of H_k(K) and a basis of the kernel of the induced map
    /// on H_k, written in the z_j.
    pub fn homology_kernel<F: Field>(&self, k: usize) -> (Vec<SparseColumn<F>>, Vec<SparseColumn<F>>) {
        assert!(k <= self.homology_top(), "degree {k} is past the computed range");
        let basis = self.source.homology_basis::<F>(k);
        let images: Vec<_> = basis.iter().map(|z| self.map.apply_field(k, z)).collect();
        let kernel = self.target.homology_relations::<F>(k, &images);
        (basis, kernel)
    }

    pub fn rank_on_homology<F: Field>(&self, k: usize) -> usize {
        let (basis, kernel) = self.homology_kernel::<F>(k);
        basis.len() - kernel.len()
    }
}

/// SP²(K) cut at `max_dim`, with δ₂ and ξ₂ as chain maps out of C(K).
#[derive(Clone, Debug)]
pub struct SymmetricSquare {
    base: SimplicialComplex,
    cells: CellProductComplex,
    quotient: DeltaComplex,
    subdivision: DeltaComplex,
    sd: ChainMap,
    max_dim: usize,
}

impl SymmetricSquare {
    /// Builds all simplices of dimension ≤ `max_dim`; None means everything.
    pub fn new(k: &SimplicialComplex, max_dim: Option<usize>) -> Result<Self, HomologyError> {
        let full = 2 * k.dim();
        let max_dim = max_dim.map_or(full, |m| m.clamp(1.min(full), full));
        let cells = CellProductComplex::new(k);
        let quotient = symmetric_chains(&cells, max_dim)?;
        let subdivision = face_subdivision(cells.factor(), max_dim.min(k.dim()))?;
        let source = k.chain_complex().truncated(max_dim);
        let sd = subdivision_map(k, cells.factor(), &source, &subdivision)?;
        Ok(SymmetricSquare { base: k.clone(), cells, quotient, subdivision, sd, max_dim })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn cells(&self) -> &CellProductComplex {
        &self.cells
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.quotient
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// True when nothing was cut off.
    pub fn is_complete(&self) -> bool {
        self.max_dim >= 2 * self.base.dim()
    }

    /// Highest degree whose homology the cut complex determines.
    pub fn determined_top(&self) -> usize {
        if self.is_complete() {
            self.quotient.dim()
        } else {
            self.max_dim - 1
        }
    }

    /// Betti numbers in degrees 0..=determined_top. A complete complex
    /// reports up to its last nonzero degree.
    pub fn betti<F: Field>(&self) -> Vec<usize> {
        let mut b = self.quotient.chain_complex().betti::<F>();
        b.resize(self.determined_top() + 1, 0);
        if self.is_complete() {
            while b.len() > 1 && b.last() == Some(&0) {
                b.pop();
            }
        }
        b
    }

    /// Map of chains of sd K into SP²: chain of faces (τ_i) ↦ orbit of
    /// the chain of cells (label(τ_i)).
    fn through(&self, label: impl Fn(usize) -> u32) -> Result<InducedMap, HomologyError> {
        let columns: Vec<Vec<IntColumn>> = (0..self.subdivision.counts().len())
            .map(|d| {
                (0..self.subdivision.counts()[d])
                    .map(|j| {
                        let img: Vec<u32> = self.subdivision.simplex(d, j).iter().map(|&g| label(g as usize)).collect();
                        let swapped: Vec<u32> = img.iter().map(|&c| self.cells.swap(c)).collect();
                        let t = self.quotient.find(&img).or_else(|| self.quotient.find(&swapped)).expect("image chain exists");
                        vec![(t, 1)]
                    })
                    .collect()
            })
            .collect();
        let lifted = ChainMap::new(self.subdivision.chain_complex(), self.quotient.chain_complex(), columns)?;
        let composed = self.sd.then(&lifted);
        let source = self.base.chain_complex().truncated(self.subdivision.dim());
        let cols = (0..composed.degrees()).map(|d| composed.columns(d).to_vec()).collect();
        let map = ChainMap::new(&source, self.quotient.chain_complex(), cols)?;
        let source_top = if self.subdivision.dim() >= self.base.dim() { self.base.dim() } else { self.subdivision.dim() - 1 };
        let top = source_top.min(self.determined_top());
        Ok(InducedMap { source, target: self.quotient.chain_complex().clone(), map, top })
    }

    /// δ₂: x ↦ [x, x].
    pub fn diagonal_map(&self) -> Result<InducedMap, HomologyError> {
        self.through(|g| self.cells.cell(g, g))
    }

    /// ξ₂: x ↦ [x, x₀].
    pub fn basepoint_map(&self, x0: usize) -> Result<InducedMap, HomologyError> {
        if x0 >= self.base.vertex_count() {
            return Err(HomologyError::MalformedInput(format!("basepoint {x0} is not a vertex")));
        }
        let v = self.cells.factor().global(0, x0);
        self.through(|g| self.cells.cell(g, v))
    }
}

/// Standard subdivision chain map C(K) → C(sd K):
/// sd(v) = v and sd(σ) = (−1)^{dim σ} · (sd(∂σ) followed by σ).
fn subdivision_map(
    k: &SimplicialComplex,
    poset: &FacePoset,
    source: &ChainComplex,
    sd: &DeltaComplex,
) -> Result<ChainMap, HomologyError> {
    let top = sd.dim().min(source.top());
    let mut columns: Vec<Vec<IntColumn>> = Vec::new();
    for d in 0..=top {
        let cols = (0..k.face_count(d))
            .map(|i| {
                let g = poset.global(d, i) as u32;
                if d == 0 {
                    return vec![(sd.find(&[g]).expect("vertex of sd K"), 1)];
                }
                let sign = if d % 2 == 0 { 1 } else { -1 };
                let mut out = Vec::new();
                for &(f, a) in &source.boundary_columns(d)[i] {
                    for &(c, b) in &columns[d - 1][f] {
                        let mut chain = sd.simplex(d - 1, c).to_vec();
                        chain.push(g);
                        out.push((sd.find(&chain).expect("cone over a face chain"), sign * a * b));
                    }
                }
                out
            })
            .collect();
        columns.push(cols);
    }
    for d in top + 1..source.dims().len() {
        columns.push(vec![Vec::new(); source.dims()[d]]);
    }
    ChainMap::new(source, sd.chain_complex(), columns)
}

/// Rank of an induced map on H_k next to the Betti numbers on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub degree: usize,
    pub betti_k: usize,
    pub betti_sp2: usize,
    pub rank: usize,
}

/// Injectivity of (ξ₂)_* and the inequality β_k(SP²K) ≥ β_k(K).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoldCheck {
    pub field: String,
    pub basepoint: usize,
    pub degrees: Vec<DegreeRank>,
    pub injective: bool,
    pub betti_inequality: bool,
    pub pass: bool,
}

/// Surjectivity of δ₂* on cohomology, read off as injectivity of (δ₂)_*.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalCheck {
    pub field: String,
    pub degrees: Vec<DegreeRank>,
    pub surjective: bool,
}

/// Products of classes pulled back along δ₂.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub field: String,
    /// pulled-back classes were searched in degrees 1..=this
    pub max_class_degree: usize,
    /// dimension of the image of δ₂* in each degree 0..=max_class_degree
    pub image_dims: Vec<usize>,
    /// longest nonzero product of pulled-back positive classes, at most 2
    pub verified_length: usize,
    /// degrees of a pair with nonzero product
    pub witness_degrees: Option<(usize, usize)>,
    pub certifies_dcat_ge_2: bool,
}

fn degree_ranks<F: Field>(map: &InducedMap, sp2: &SymmetricSquare) -> Vec<DegreeRank> {
    let bk = map.source.betti::<F>();
    let bs = sp2.betti::<F>();
    (0..=map.homology_top())
        .map(|d| DegreeRank { degree: d, betti_k: bk[d], betti_sp2: bs.get(d).copied().unwrap_or(0), rank: map.rank_on_homology::<F>(d) })
        .collect()
}

/// ξ₂ is a split monomorphism on homology with any coefficients.
pub fn dold_check<F: Field>(k: &SimplicialComplex, x0: usize) -> Result<DoldCheck, HomologyError> {
    let sp2 = SymmetricSquare::new(k, Some(k.dim() + 1))?;
    dold_check_on::<F>(&sp2, x0)
}

pub fn dold_check_on<F: Field>(sp2: &SymmetricSquare, x0: usize) -> Result<DoldCheck, HomologyError> {
    let map = sp2.basepoint_map(x0)?;
    let degrees = degree_ranks::<F>(&map, sp2);
    let injective = degrees.iter().all(|d| d.rank == d.betti_k);
    let betti_inequality = degrees.iter().all(|d| d.betti_sp2 >= d.betti_k);
    Ok(DoldCheck { field: F::name(), basepoint: x0, degrees, injective, betti_inequality, pass: injective && betti_inequality })
}

/// δ₂* : H*(SP²K) → H*(K) is onto in every degree ≤ dim K.
pub fn diagonal_check<F: Field>(k: &SimplicialComplex) -> Result<DiagonalCheck, HomologyError> {
    let sp2 = SymmetricSquare::new(k, Some(k.dim() + 1))?;
    diagonal_check_on::<F>(&sp2)
}

pub fn diagonal_check_on<F: Field>(sp2: &SymmetricSquare) -> Result<DiagonalCheck, HomologyError> {
    let map = sp2.diagonal_map()?;
    let degrees = degree_ranks::<F>(&map, sp2);
    let surjective = degrees.iter().all(|d| d.rank == d.betti_k);
    Ok(DiagonalCheck { field: F::name(), degrees, surjective })
}

/// Looks for two positive-degree classes of H*(K) in the image of δ₂*
/// whose cup product is nonzero.
///
/// Over a field the image of δ₂* in degree k is the annihilator of the
/// kernel of (δ₂)_* on H_k, so SP²(K) is only needed through dimension
/// `max_class_degree + 1`. Classes are searched up to dim K − 1, the most a
/// factor of a nonzero product of two positive classes can have.
pub fn sp2_bound_check<F: Field>(k: &SimplicialComplex) -> Result<BoundCheck, HomologyError> {
    let top = k.dim().saturating_sub(1).max(1);
    let sp2 = SymmetricSquare::new(k, Some(top + 1))?;
    let map = sp2.diagonal_map()?;
    let ring = cohomology_ring::<F>(k)?;
    let reps = ring.representatives().expect("cohomology ring keeps representatives");
    let degrees = ring.degrees();
    let mut image: Vec<Vec<Vec<F>>> = Vec::new();
    for d in 0..=top.min(k.dim()) {
        let classes: Vec<usize> = (0..ring.dim()).filter(|&i| degrees[i] == d).collect();
        let (basis, kernel) = map.homology_kernel::<F>(d);
        // rows: kernel vectors r; entry for class φ is Σ_j r_j ⟨φ, z_j⟩
        let mut m = Matrix::<F>::zeros(kernel.len(), classes.len());
        for (row, r) in kernel.iter().enumerate() {
            for (col, &i) in classes.iter().enumerate() {
                let v = r.iter().fold(F::zero(), |acc, (j, c)| acc.add(&c.mul(&pair(&reps[i], &basis[*j]))));
                m.set(row, col, v);
            }
        }
        let coords = if kernel.is_empty() {
            (0..classes.len()).map(|i| (0..classes.len()).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
        } else {
            m.nullspace()
        };
        image.push(
            coords
                .into_iter()
                .map(|c: Vec<F>| {
                    let mut v = vec![F::zero(); ring.dim()];
                    for (x, &i) in c.into_iter().zip(&classes) {
                        v[i] = x;
                    }
                    v
                })
                .collect(),
        );
    }
    let image_dims: Vec<usize> = image.iter().map(Vec::len).collect();
    let positive = image_dims.iter().skip(1).any(|&n| n > 0);
    let mut witness = None;
    'search: for p in 1..image.len() {
        for q in p..image.len() {
            for a in &image[p] {
                for b in &image[q] {
                    if ring.mul(a, b).iter().any(|x| !x.is_zero()) {
                        witness = Some((p, q));
                        break 'search;
                    }
                }
            }
        }
    }
    let verified_length = if witness.is_some() { 2 } else { usize::from(positive) };
    Ok(BoundCheck {
        field: F::name(),
        max_class_degree: image.len() - 1,
        image_dims,
        verified_length,
        witness_degrees: witness,
        certifies_dcat_ge_2: witness.is_some(),
    })
}

/// χ(SP²K) = (χ(K)² + χ(K)) / 2, counting swap orbits of cells.
pub fn expected_euler_characteristic(k: &SimplicialComplex) -> i64 {
    let chi = k.euler_characteristic();
    (chi * chi + chi) / 2
}

#[cfg(test)]
mod tests;
