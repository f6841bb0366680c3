use crate::algebra::{sparse_from_dense, ColumnReducer, Field, Matrix};

use super::HomologyError;

/// Finite-dimensional graded-commutative algebra given by structure
/// constants on a homogeneous basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedRing<F: Field> {
    degrees: Vec<usize>,
    /// table[a][b] = coordinates of e_a · e_b
    table: Vec<Vec<Vec<F>>>,
    unit: Option<Vec<F>>,
    /// cocycle representing each basis class, when the ring came from a complex
    representatives: Option<Vec<Vec<F>>>,
}

impl<F: Field> GradedRing<F> {
    pub fn new(
        degrees: Vec<usize>,
        table: Vec<Vec<Vec<F>>>,
        unit: Option<Vec<F>>,
        representatives: Option<Vec<Vec<F>>>,
    ) -> Result<Self, HomologyError> {
        let n = degrees.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(HomologyError::MalformedInput("structure constants must be n×n×n".into()));
        }
        if unit.as_ref().is_some_and(|u| u.len() != n) || representatives.as_ref().is_some_and(|r| r.len() != n) {
            return Err(HomologyError::MalformedInput("unit or representatives have the wrong length".into()));
        }
        let ring = GradedRing { degrees, table, unit, representatives };
        ring.check_degrees()?;
        Ok(ring)
    }

    pub fn field_name(&self) -> String {
        F::name()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Dimension of each graded piece, degrees 0..=max.
    pub fn graded_dims(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().unwrap_or(0);
        (0..=top).map(|d| self.degrees.iter().filter(|&&e| e == d).count()).collect()
    }

    pub fn unit(&self) -> Option<&[F]> {
        self.unit.as_deref()
    }

    pub fn representatives(&self) -> Option<&[Vec<F>]> {
        self.representatives.as_deref()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    pub fn product_of_basis(&self, a: usize, b: usize) -> &[F] {
        &self.table[a][b]
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xa.mul(yb);
                for (u, t) in self.table[a][b].iter().enumerate().filter(|(_, t)| !t.is_zero()) {
                    out[u] = out[u].add(&c.mul(t));
                }
            }
        }
        out
    }

    /// Basis vectors of positive degree.
    pub fn positive_basis(&self) -> Vec<Vec<F>> {
        (0..self.dim()).filter(|&i| self.degrees[i] > 0).map(|i| self.basis_vector(i)).collect()
    }

    fn check_degrees(&self) -> Result<(), HomologyError> {
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let d = self.degrees[a] + self.degrees[b];
                if self.table[a][b].iter().enumerate().any(|(u, t)| !t.is_zero() && self.degrees[u] != d) {
                    return Err(HomologyError::RingAxiom(format!("e{a}·e{b} leaves degree {d}")));
                }
            }
        }
        Ok(())
    }

    /// b·a = (−1)^{|a||b|} a·b on all basis pairs.
    pub fn check_graded_commutative(&self) -> Result<(), HomologyError> {
        for a in 0..self.dim() {
            for b in a + 1..self.dim() {
                let odd = self.degrees[a] * self.degrees[b] % 2 == 1;
                let ok = self.table[a][b]
                    .iter()
                    .zip(&self.table[b][a])
                    .all(|(x, y)| if odd { *x == y.neg() } else { x == y });
                if !ok {
                    return Err(HomologyError::RingAxiom(format!("e{a}, e{b} do not graded-commute")));
                }
            }
        }
        Ok(())
    }

    /// (e_a e_b) e_c = e_a (e_b e_c) on all basis triples.
    pub fn check_associative(&self) -> Result<(), HomologyError> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul(&self.table[a][b], &self.basis_vector(c));
                    let right = self.mul(&self.basis_vector(a), &self.table[b][c]);
                    if left != right {
                        return Err(HomologyError::RingAxiom(format!("(e{a}e{b})e{c} ≠ e{a}(e{b}e{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Largest k with V^k ≠ 0, where V¹ = span(gens) and V^{j+1} = span{g·v}.
    pub fn power_length(&self, gens: &[Vec<F>]) -> usize {
        let gens = independent(self.dim(), gens.to_vec());
        let mut current = gens.clone();
        let mut k = 0;
        while !current.is_empty() {
            k += 1;
            let next: Vec<Vec<F>> = gens.iter().flat_map(|g| current.iter().map(move |v| (g, v))).map(|(g, v)| self.mul(g, v)).collect();
            current = independent(self.dim(), next);
        }
        k
    }

    /// Largest k with (H⁺)^k ≠ 0.
    pub fn cup_length(&self) -> usize {
        self.power_length(&self.positive_basis())
    }

    /// H ⊗ H with the Koszul sign rule.
    pub fn tensor_square(&self) -> TensorSquareRing<F> {
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let degrees = pairs.iter().map(|&(a, b)| self.degrees[a] + self.degrees[b]).collect();
        let mut table = vec![vec![vec![F::zero(); n * n]; n * n]; n * n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(a2, b2)) in pairs.iter().enumerate() {
                let sign = if self.degrees[b] * self.degrees[a2] % 2 == 1 { F::one().neg() } else { F::one() };
                for (u, x) in self.table[a][a2].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (v, y) in self.table[b][b2].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let cell = &mut table[i][j][u * n + v];
                        *cell = cell.add(&sign.mul(&x.mul(y)));
                    }
                }
            }
        }
        let unit = self.unit.as_ref().map(|u| {
            let mut out = vec![F::zero(); n * n];
            for (a, x) in u.iter().enumerate() {
                for (b, y) in u.iter().enumerate() {
                    out[a * n + b] = x.mul(y);
                }
            }
            out
        });
        let multiplication = pairs.iter().map(|&(a, b)| self.table[a][b].clone()).collect();
        let ring = GradedRing::new(degrees, table, unit, None).expect("tensor square is graded");
        TensorSquareRing { base: self.clone(), ring, pairs, multiplication }
    }
}

/// H ⊗ H together with the multiplication map Δ*: a⊗b ↦ a·b.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSquareRing<F: Field> {
    base: GradedRing<F>,
    ring: GradedRing<F>,
    pairs: Vec<(usize, usize)>,
    /// multiplication[i] = Δ*(e_a ⊗ e_b) for pairs[i] = (a, b)
    multiplication: Vec<Vec<F>>,
}

impl<F: Field> TensorSquareRing<F> {
    pub fn base(&self) -> &GradedRing<F> {
        &self.base
    }

    pub fn ring(&self) -> &GradedRing<F> {
        &self.ring
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Δ* applied to an element of H ⊗ H.
    pub fn restrict_to_diagonal(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.base.dim()];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (u, t) in self.multiplication[i].iter().enumerate() {
                out[u] = out[u].add(&c.mul(t));
            }
        }
        out
    }

    /// Basis of the positive-degree part of ker Δ*.
    pub fn zero_divisors(&self) -> Vec<Vec<F>> {
        let degrees = self.ring.degrees();
        let top = degrees.iter().copied().max().unwrap_or(0);
        let mut out = Vec::new();
        for d in 1..=top {
            let idx: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] == d).collect();
            if idx.is_empty() {
                continue;
            }
            let cols: Vec<Vec<F>> = idx.iter().map(|&i| self.multiplication[i].clone()).collect();
            for v in Matrix::from_columns(self.base.dim(), &cols).nullspace() {
                let mut full = vec![F::zero(); degrees.len()];
                for (k, &i) in idx.iter().enumerate() {
                    full[i] = v[k].clone();
                }
                out.push(full);
            }
        }
        out
    }

    /// Largest k with a non-zero product of k zero-divisors (iterated span).
    pub fn zero_divisor_cuplength(&self) -> usize {
        self.ring.power_length(&self.zero_divisors())
    }

    /// ā = a⊗1 − 1⊗a for a basis class a of positive degree.
    pub fn basic_class(&self, a: usize) -> Option<Vec<F>> {
        let unit = self.base.unit()?;
        let n = self.base.dim();
        let mut out = vec![F::zero(); n * n];
        for (u, c) in unit.iter().enumerate() {
            out[a * n + u] = out[a * n + u].add(c);
            out[u * n + a] = out[u * n + a].sub(c);
        }
        Some(out)
    }

    /// Longest non-zero product of basic classes ā, searched exhaustively
    /// over multisets of positive-degree basis classes. A lower bound for
    /// [`Self::zero_divisor_cuplength`].
    pub fn basic_zero_divisor_cuplength(&self) -> usize {
        let basics: Vec<Vec<F>> =
            (0..self.base.dim()).filter(|&a| self.base.degrees()[a] > 0).filter_map(|a| self.basic_class(a)).collect();
        fn search<F: Field>(r: &GradedRing<F>, basics: &[Vec<F>], from: usize, acc: &[F], len: usize, best: &mut usize) {
            *best = (*best).max(len);
            for i in from..basics.len() {
                let next = r.mul(acc, &basics[i]);
                if next.iter().any(|x| !x.is_zero()) {
                    search(r, basics, i, &next, len + 1, best);
                }
            }
        }
        let mut best = 0;
        if let Some(unit) = self.ring.unit() {
            search(&self.ring, &basics, 0, unit, 0, &mut best);
        }
        best
    }
}

/// Maximal independent subset, in order.
fn independent<F: Field>(dim: usize, vs: Vec<Vec<F>>) -> Vec<Vec<F>> {
    let mut red = ColumnReducer::new(dim);
    vs.into_iter().filter(|v| red.insert(sparse_from_dense(v))).collect()
}
