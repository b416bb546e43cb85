//! Independent brute-force oracles. Nothing here calls the library's linear
//! algebra, series or graph code; inputs are read straight from documents.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet};

use lieweights::document::AlgebraDocument;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Full antisymmetric bracket table: `table[i][j]` = coefficients of `[X_i, X_j]`.
#[derive(Clone, Debug)]
pub struct Table {
    pub dim: usize,
    pub table: Vec<Vec<Vec<Q>>>,
}

impl Table {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            table: vec![vec![vec![Q::zero(); dim]; dim]; dim],
        }
    }

    pub fn from_document(doc: &AlgebraDocument) -> Self {
        let mut t = Self::zero(doc.dim);
        for b in &doc.brackets {
            let (i, j, k) = (b.i - 1, b.j - 1, b.k - 1);
            t.table[i][j][k] += &b.c;
            t.table[j][i][k] -= &b.c;
        }
        t
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &s * &self.table[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// `g ⊕ span{t_a}` with `[t_a, X_j] = diags[a][j] X_j`.
    pub fn extend_by_diagonals(&self, diags: &[Vec<i64>]) -> Table {
        let n = self.dim;
        let mut t = Table::zero(n + diags.len());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.table[i][j][k] = self.table[i][j][k].clone();
                }
            }
        }
        for (a, d) in diags.iter().enumerate() {
            for j in 0..n {
                t.table[n + a][j][j] = q(d[j]);
                t.table[j][n + a][j] = -q(d[j]);
            }
        }
        t
    }

    fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    /// Dimensions of `D^(0) ⊇ D^(1) ⊇ ...`, each term the span of all
    /// brackets of pairs from a basis of the previous one, until it repeats.
    pub fn derived_dims(&self) -> Vec<usize> {
        let mut current: Vec<Vec<Q>> = (0..self.dim).map(|i| self.unit(i)).collect();
        let mut dims = vec![self.dim];
        loop {
            let mut products = Vec::new();
            for a in 0..current.len() {
                for b in a + 1..current.len() {
                    products.push(self.bracket(&current[a], &current[b]));
                }
            }
            let next = echelon(products);
            let d = next.len();
            if d == *dims.last().unwrap() {
                return dims;
            }
            dims.push(d);
            if d == 0 {
                return dims;
            }
            current = next;
        }
    }

    /// Number of steps to reach zero, or `None` if the series stalls.
    pub fn derived_length(&self) -> Option<usize> {
        let dims = self.derived_dims();
        (*dims.last().unwrap() == 0).then(|| dims.len() - 1)
    }

    pub fn lower_central_dims(&self) -> Vec<usize> {
        let all: Vec<Vec<Q>> = (0..self.dim).map(|i| self.unit(i)).collect();
        let mut current = all.clone();
        let mut dims = vec![self.dim];
        loop {
            let mut products = Vec::new();
            for x in &all {
                for y in &current {
                    products.push(self.bracket(x, y));
                }
            }
            let next = echelon(products);
            let d = next.len();
            if d == *dims.last().unwrap() {
                return dims;
            }
            dims.push(d);
            if d == 0 {
                return dims;
            }
            current = next;
        }
    }

    /// `n − rank` of the map `z ↦ ([z, X_1], ..., [z, X_n])`.
    pub fn center_dim(&self) -> usize {
        let n = self.dim;
        let mut rows = Vec::new();
        for i in 0..n {
            for k in 0..n {
                rows.push(
                    (0..n)
                        .map(|j| self.table[j][i][k].clone())
                        .collect::<Vec<Q>>(),
                );
            }
        }
        n - echelon(rows).len()
    }
}

/// Echelon basis of the span of `vectors` by plain Gaussian elimination.
pub fn echelon(vectors: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut basis: Vec<(usize, Vec<Q>)> = Vec::new();
    for mut v in vectors {
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone() / &b[*p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone() / &v[p];
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push((p, v));
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}

/// Weight-graph adjacency from raw coordinates: `{a, b}` is an edge iff
/// `w_a + w_b` is not a weight.
pub fn weight_graph_adjacency(weights: &[Vec<i64>]) -> Vec<Vec<bool>> {
    let set: HashSet<&Vec<i64>> = weights.iter().collect();
    let p = weights.len();
    let mut adj = vec![vec![false; p]; p];
    for a in 0..p {
        for b in 0..p {
            if a != b {
                let s: Vec<i64> = weights[a]
                    .iter()
                    .zip(&weights[b])
                    .map(|(x, y)| x + y)
                    .collect();
                adj[a][b] = !set.contains(&s);
            }
        }
    }
    adj
}

pub fn edge_count(adj: &[Vec<bool>]) -> usize {
    let p = adj.len();
    (0..p)
        .flat_map(|a| (a + 1..p).map(move |b| (a, b)))
        .filter(|&(a, b)| adj[a][b])
        .count()
}

pub fn complement(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let p = adj.len();
    (0..p)
        .map(|a| (0..p).map(|b| a != b && !adj[a][b]).collect())
        .collect()
}

pub fn connected(adj: &[Vec<bool>]) -> bool {
    let p = adj.len();
    if p == 0 {
        return true;
    }
    let mut seen = vec![false; p];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..p {
            if adj[v][u] && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Largest clique by scanning all `2^p` vertex subsets.
pub fn brute_max_clique(adj: &[Vec<bool>]) -> usize {
    let p = adj.len();
    assert!(p <= 20);
    (0u32..1 << p)
        .filter(|&m| {
            let vs: Vec<usize> = (0..p).filter(|i| m >> i & 1 == 1).collect();
            vs.iter()
                .enumerate()
                .all(|(x, &a)| vs[x + 1..].iter().all(|&b| adj[a][b]))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Proper 2-colouring exists, by trying all `2^p` colourings.
pub fn brute_bipartite(adj: &[Vec<bool>]) -> bool {
    let p = adj.len();
    (0u32..1 << p)
        .any(|m| (0..p).all(|a| (0..p).all(|b| !adj[a][b] || (m >> a & 1) != (m >> b & 1))))
}

/// Whether `cycle` is a closed odd cycle of distinct vertices in `adj`.
pub fn is_odd_cycle(adj: &[Vec<bool>], cycle: &[usize]) -> bool {
    let distinct: BTreeSet<_> = cycle.iter().collect();
    cycle.len() >= 3
        && cycle.len() % 2 == 1
        && distinct.len() == cycle.len()
        && (0..cycle.len()).all(|x| adj[cycle[x]][cycle[(x + 1) % cycle.len()]])
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying every vertex permutation.
pub fn brute_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    let p = a.len();
    p == b.len()
        && permutations(p)
            .iter()
            .any(|m| (0..p).all(|x| (0..p).all(|y| a[x][y] == b[m[x]][m[y]])))
}
