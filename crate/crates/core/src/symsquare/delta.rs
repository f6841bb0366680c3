use std::collections::HashMap;

/// Largest number of simplices an order complex may have.
pub const SIMPLEX_BUDGET: usize = 2_500_000;

use crate::homology::{ChainComplex, ChainMap, HomologyError, IntColumn, SimplicialComplex};

/// Faces of K numbered globally: all vertices, then all edges, and so on.
/// `up[g]` lists the faces strictly containing face g, increasing.
#[derive(Clone, Debug)]
pub struct FacePoset {
    faces: Vec<Vec<usize>>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    up: Vec<Vec<u32>>,
}

impl FacePoset {
    pub fn new(k: &SimplicialComplex) -> Self {
        let mut faces = Vec::new();
        let mut dims = Vec::new();
        let mut offsets = Vec::new();
        for d in 0..=k.dim() {
            offsets.push(faces.len());
            for f in k.faces(d) {
                faces.push(f.clone());
                dims.push(d);
            }
        }
        let mut up = vec![Vec::new(); faces.len()];
        for (g, f) in faces.iter().enumerate() {
            for mask in 1u64..(1u64 << f.len()) - 1 {
                let sub: Vec<usize> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let s = offsets[sub.len() - 1] + k.face_index(&sub).expect("closed under faces");
                up[s].push(g as u32);
            }
        }
        for u in &mut up {
            u.sort_unstable();
        }
        FacePoset { faces, dims, offsets, up }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, g: usize) -> &[usize] {
        &self.faces[g]
    }

    pub fn dim_of(&self, g: usize) -> usize {
        self.dims[g]
    }

    /// Global id of the i-th face of dimension d.
    pub fn global(&self, d: usize, i: usize) -> usize {
        self.offsets[d] + i
    }

    pub fn above(&self, g: usize) -> &[u32] {
        &self.up[g]
    }
}

/// Cells σ×τ of K×K ordered by (σ,τ) ≤ (σ',τ') iff σ ⊆ σ' and τ ⊆ τ'.
/// Cell (σ,τ) has id gid(σ)·F + gid(τ) where F is the number of faces.
#[derive(Clone, Debug)]
pub struct CellProductComplex {
    poset: FacePoset,
}

impl CellProductComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        CellProductComplex { poset: FacePoset::new(k) }
    }

    pub fn factor(&self) -> &FacePoset {
        &self.poset
    }

    pub fn cell_count(&self) -> usize {
        self.poset.len() * self.poset.len()
    }

    pub fn cell(&self, a: usize, b: usize) -> u32 {
        (a * self.poset.len() + b) as u32
    }

    pub fn parts(&self, c: u32) -> (usize, usize) {
        let n = self.poset.len();
        (c as usize / n, c as usize % n)
    }

    pub fn cell_dim(&self, c: u32) -> usize {
        let (a, b) = self.parts(c);
        self.poset.dim_of(a) + self.poset.dim_of(b)
    }

    pub fn swap(&self, c: u32) -> u32 {
        let (a, b) = self.parts(c);
        self.cell(b, a)
    }

    /// Number of cells of each dimension.
    pub fn cells_by_dim(&self) -> Vec<usize> {
        let top = 2 * self.poset.dims.last().copied().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for c in 0..self.cell_count() as u32 {
            out[self.cell_dim(c)] += 1;
        }
        out
    }

    fn above(&self, c: u32, out: &mut Vec<u32>) {
        out.clear();
        let (a, b) = self.parts(c);
        let ups = |g: usize| std::iter::once(g as u32).chain(self.poset.above(g).iter().copied());
        for a2 in ups(a) {
            for b2 in ups(b) {
                if (a2 as usize, b2 as usize) != (a, b) {
                    out.push(self.cell(a2 as usize, b2 as usize));
                }
            }
        }
    }
}

/// Δ-complex given by ordered vertex tuples. A k-simplex is stored as k+1
/// labels; face i drops label i. Here the labels are poset elements and the
/// simplices are strict chains, possibly taken up to an involution.
#[derive(Clone, Debug)]
pub struct DeltaComplex {
    simplices: Vec<Vec<Vec<u32>>>,
    faces: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    chain: ChainComplex,
    swap: Option<Vec<u32>>,
}

/// Order complex of a poset up to dimension `max_dim`. With an
/// order-preserving involution only chains that are lexicographically no
/// larger than their image are kept, one per orbit. A chain fixed as a set is
/// fixed pointwise, so orbits of simplices form a Δ-complex.
fn order_complex(
    roots: impl Iterator<Item = u32>,
    above: impl Fn(u32, &mut Vec<u32>),
    swap: Option<&dyn Fn(u32) -> u32>,
    max_dim: usize,
) -> Result<DeltaComplex, HomologyError> {
    let canonical = |c: &[u32]| match swap {
        None => true,
        Some(s) => c.iter().map(|&x| (x, s(x))).find(|(x, y)| x != y).is_none_or(|(x, y)| x < y),
    };
    let mut simplices: Vec<Vec<Vec<u32>>> = vec![roots.filter(|&v| canonical(&[v])).map(|v| vec![v]).collect()];
    let mut buf = Vec::new();
    let mut total = simplices[0].len();
    for _ in 0..max_dim {
        let mut next = Vec::new();
        for c in simplices.last().expect("level") {
            buf.clear();
            above(*c.last().expect("nonempty chain"), &mut buf);
            buf.sort_unstable();
            for &u in &buf {
                let mut d = c.clone();
                d.push(u);
                if canonical(&d) {
                    next.push(d);
                    total += 1;
                    if total > SIMPLEX_BUDGET {
                        return Err(HomologyError::TooLarge(format!(
                            "more than {SIMPLEX_BUDGET} simplices through dimension {}",
                            simplices.len()
                        )));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        simplices.push(next);
    }
    let index: Vec<HashMap<Vec<u32>, usize>> =
        simplices.iter().map(|lv| lv.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect()).collect();
    let lookup = |c: Vec<u32>| -> usize {
        let c = match swap {
            Some(s) if !canonical(&c) => c.iter().map(|&x| s(x)).collect(),
            _ => c,
        };
        index[c.len() - 1][&c]
    };
    let mut faces = vec![Vec::new()];
    for lv in simplices.iter().skip(1) {
        faces.push(
            lv.iter()
                .map(|c| {
                    (0..c.len())
                        .map(|i| {
                            let mut d = c.clone();
                            d.remove(i);
                            lookup(d)
                        })
                        .collect()
                })
                .collect(),
        );
    }
    let boundary: Vec<Vec<IntColumn>> = faces
        .iter()
        .enumerate()
        .map(|(k, fs)| {
            if k == 0 {
                return vec![Vec::new(); simplices[0].len()];
            }
            fs.iter()
                .map(|f: &Vec<usize>| f.iter().enumerate().map(|(i, &j)| (j, if i % 2 == 0 { 1 } else { -1 })).collect())
                .collect()
        })
        .collect();
    let chain = ChainComplex::new(simplices.iter().map(Vec::len).collect(), boundary)?;
    Ok(DeltaComplex { simplices, faces, index, chain, swap: None })
}

impl DeltaComplex {
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Vertex tuple of the j-th k-simplex.
    pub fn simplex(&self, k: usize, j: usize) -> &[u32] {
        &self.simplices[k][j]
    }

    /// Index of face i of the j-th k-simplex.
    pub fn face(&self, k: usize, j: usize, i: usize) -> usize {
        self.faces[k][j][i]
    }

    pub fn find(&self, labels: &[u32]) -> Option<usize> {
        self.index.get(labels.len().checked_sub(1)?)?.get(labels).copied()
    }

    pub fn chain_complex(&self) -> &ChainComplex {
        &self.chain
    }

    /// Index of the image of the j-th k-simplex under the involution, for
    /// complexes that carry one.
    pub fn swap_simplex(&self, k: usize, j: usize) -> Option<usize> {
        let s = self.swap.as_ref()?;
        self.find(&self.simplices[k][j].iter().map(|&x| s[x as usize]).collect::<Vec<_>>())
    }

    /// Checks ∂_i∂_j = ∂_{j−1}∂_i for i < j on every simplex.
    pub fn face_identities_hold(&self) -> bool {
        (2..self.simplices.len()).all(|k| {
            (0..self.simplices[k].len()).all(|s| {
                (0..=k).all(|j| {
                    (0..j).all(|i| self.face(k - 1, self.face(k, s, j), i) == self.face(k - 1, self.face(k, s, i), j - 1))
                })
            })
        })
    }
}

/// Barycentric subdivision of K: chains of faces, labelled by global face id.
pub fn face_subdivision(poset: &FacePoset, max_dim: usize) -> Result<DeltaComplex, HomologyError> {
    order_complex(0..poset.len() as u32, |g, out| out.extend_from_slice(poset.above(g as usize)), None, max_dim)
}

/// Chains of cells of K×K, with the swap recorded on vertices.
pub fn barycentric_poset_subdivision(p: &CellProductComplex, max_dim: usize) -> Result<DeltaComplex, HomologyError> {
    let mut d = order_complex(0..p.cell_count() as u32, |c, out| p.above(c, out), None, max_dim)?;
    d.swap = Some((0..p.cell_count() as u32).map(|c| p.swap(c)).collect());
    Ok(d)
}

/// Orbits of chains of cells under the swap: the Δ-complex model of SP²(K).
pub fn symmetric_chains(p: &CellProductComplex, max_dim: usize) -> Result<DeltaComplex, HomologyError> {
    let s = |c: u32| p.swap(c);
    order_complex(0..p.cell_count() as u32, |c, out| p.above(c, out), Some(&s), max_dim)
}

/// The quotient of a swap-equivariant subdivision together with the
/// quotient chain map.
pub fn z2_quotient(sub: &DeltaComplex) -> Result<(DeltaComplex, ChainMap), HomologyError> {
    let swap = sub.swap.as_ref().ok_or_else(|| HomologyError::MalformedInput("complex carries no involution".into()))?;
    let s = |c: u32| swap[c as usize];
    // edges of an order complex are exactly the comparable pairs
    let mut up: HashMap<u32, Vec<u32>> = HashMap::new();
    for e in sub.simplices.get(1).map(Vec::as_slice).unwrap_or(&[]) {
        up.entry(e[0]).or_default().push(e[1]);
    }
    let above = |c: u32, out: &mut Vec<u32>| {
        out.clear();
        out.extend_from_slice(up.get(&c).map(Vec::as_slice).unwrap_or(&[]));
    };
    let q = order_complex(sub.simplices[0].iter().map(|v| v[0]), above, Some(&s), sub.dim())?;
    let columns = sub
        .simplices
        .iter()
        .map(|lv| {
            lv.iter()
                .map(|c| {
                    let img: Vec<u32> = c.iter().map(|&x| s(x)).collect();
                    let j = q.find(c).or_else(|| q.find(&img)).expect("every chain has an orbit");
                    vec![(j, 1)]
                })
                .collect()
        })
        .collect();
    let map = ChainMap::new(&sub.chain, &q.chain, columns)?;
    Ok((q, map))
}
