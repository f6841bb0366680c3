use std::collections::{BTreeSet, HashMap};

use serde::Deserialize;
use serde_json::{json, Value};

use super::chain::ChainComplex;
use super::HomologyError;

/// Finite abstract simplicial complex on vertices 0..n−1.
///
/// Faces of each dimension are stored sorted (vertices increasing inside a
/// face, faces in lexicographic order); cup products use this vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    maximal: Vec<Vec<usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    vertices: usize,
    maximal: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Closes the given simplices under taking faces. Every vertex in
    /// 0..vertices is a 0-face, listed or not.
    pub fn new(vertices: usize, simplices: Vec<Vec<usize>>) -> Result<Self, HomologyError> {
        let mut cleaned: Vec<Vec<usize>> = Vec::with_capacity(simplices.len());
        for s in simplices {
            if s.is_empty() {
                return Err(HomologyError::MalformedInput("empty simplex".into()));
            }
            if let Some(v) = s.iter().find(|&&v| v >= vertices) {
                return Err(HomologyError::MalformedInput(format!("vertex {v} out of range 0..{vertices}")));
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(HomologyError::NonSimplex(format!("repeated vertex in {s:?}")));
            }
            cleaned.push(sorted);
        }
        let top = cleaned.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top];
        for v in 0..vertices {
            sets[0].insert(vec![v]);
        }
        for s in &cleaned {
            for mask in 1u64..(1u64 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        while sets.len() > 1 && sets.last().is_some_and(BTreeSet::is_empty) {
            sets.pop();
        }
        let faces: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for (d, fs) in faces.iter().enumerate() {
            for f in fs {
                let covered = faces.get(d + 1).is_some_and(|up| up.iter().any(|g| is_subset(f, g)));
                if !covered {
                    maximal.push(f.clone());
                }
            }
        }
        Ok(SimplicialComplex { vertices, maximal, faces, index })
    }

    /// Parses `{"vertices": N, "maximal": [[...], ...]}`.
    pub fn from_json(value: &Value) -> Result<Self, HomologyError> {
        let raw: ComplexJson =
            serde_json::from_value(value.clone()).map_err(|e| HomologyError::MalformedInput(e.to_string()))?;
        Self::new(raw.vertices, raw.maximal)
    }

    pub fn from_json_str(text: &str) -> Result<Self, HomologyError> {
        let value: Value = serde_json::from_str(text).map_err(|e| HomologyError::MalformedInput(e.to_string()))?;
        Self::from_json(&value)
    }

    pub fn to_json(&self) -> Value {
        json!({ "vertices": self.vertices, "maximal": self.maximal })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    /// Maximal faces, ordered by dimension then lexicographically.
    pub fn maximal(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn faces(&self, k: usize) -> &[Vec<usize>] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face_count(&self, k: usize) -> usize {
        self.faces(k).len()
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        self.index.get(face.len().checked_sub(1)?)?.get(face).copied()
    }

    /// Σ (−1)^k · #k-faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces.iter().enumerate().map(|(k, f)| if k % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) }).sum()
    }

    /// Simplicial chain complex with the usual alternating-sign boundary.
    pub fn chain_complex(&self) -> ChainComplex {
        let mut boundaries = vec![vec![Vec::new(); self.faces[0].len()]];
        for k in 1..self.faces.len() {
            let cols = self.faces[k]
                .iter()
                .map(|f| {
                    (0..f.len())
                        .map(|i| {
                            let mut g = f.clone();
                            g.remove(i);
                            (self.index[k - 1][&g], if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect()
                })
                .collect();
            boundaries.push(cols);
        }
        ChainComplex::new(self.faces.iter().map(Vec::len).collect(), boundaries).expect("simplicial boundary")
    }

    /// Same complex with vertex v renamed to perm[v].
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, HomologyError> {
        let mut seen = vec![false; self.vertices];
        if perm.len() != self.vertices || perm.iter().any(|&p| p >= self.vertices || std::mem::replace(&mut seen[p], true)) {
            return Err(HomologyError::MalformedInput("relabeling is not a permutation".into()));
        }
        Self::new(self.vertices, self.maximal.iter().map(|s| s.iter().map(|&v| perm[v]).collect()).collect())
    }

    /// Vertex order reversed: v ↦ n−1−v.
    pub fn reversed(&self) -> Self {
        let perm: Vec<usize> = (0..self.vertices).rev().collect();
        self.relabeled(&perm).expect("reversal is a permutation")
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}
