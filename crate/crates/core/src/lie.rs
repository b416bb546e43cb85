//! Finite-dimensional Lie algebras over ℚ given by structure constants.
//!
//! Basis indices are 0-based in the API and 1-based in every rendered message.
//! Only brackets `[X_i, X_j]` with `i < j` are stored; the opposite order is
//! recovered by antisymmetry.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{self, axpy, is_zero, unit_vector, zero_vector, Vector};
use crate::rational::{format_rational, Rational};

/// Largest dimension accepted by [`LieAlgebra::new`].
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("structure constant index ({}, {}, {}) out of range for dimension {dim}", .i + 1, .j + 1, .k + 1)]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("self-bracket [X{}, X{}] must vanish", .i + 1, .i + 1)]
    SelfBracket { i: usize },
    #[error("duplicate structure constant ({}, {}, {})", .i + 1, .j + 1, .k + 1)]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on ({}, {}, {}): residual {}", .i + 1, .j + 1, .k + 1, render_vector(.residual))]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vec<Rational>,
    },
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix {} is not a derivation", .0 + 1)]
    NotADerivation(usize),
    #[error("derivations {} and {} do not commute", .0 + 1, .1 + 1)]
    NonCommutingDerivations(usize, usize),
}

fn render_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// Lie algebra with exact rational structure constants `c_{ij}^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    constants: BTreeMap<(usize, usize, usize), Rational>,
    labels: Option<Vec<String>>,
    /// `table[i * dim + j]`: sparse expansion of `[X_i, X_j]` for all ordered pairs.
    table: Vec<Vec<(usize, Rational)>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for ((i, j, k), c) in &self.constants {
            m.entry(&(i + 1, j + 1, k + 1), &format_rational(c));
        }
        m.finish()
    }
}

impl LieAlgebra {
    /// Validates a structure-constant table and builds the algebra.
    ///
    /// Entries `(i, j, k) -> c` mean `[X_i, X_j] ∋ c X_k`. Entries with
    /// `i > j` are folded into `(j, i, k) -> -c`; zero entries are dropped.
    pub fn new<I>(dim: usize, entries: I) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = ((usize, usize, usize), Rational)>,
    {
        if dim == 0 {
            return Err(LieError::ZeroDimension);
        }
        if dim > MAX_DIM {
            return Err(LieError::DimensionTooLarge(dim));
        }
        let mut constants = BTreeMap::new();
        for ((i, j, k), c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(LieError::IndexOutOfRange { i, j, k, dim });
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(LieError::SelfBracket { i });
            }
            let (key, value) = if i < j {
                ((i, j, k), c)
            } else {
                ((j, i, k), -c)
            };
            if constants.insert(key, value).is_some() {
                let (i, j, k) = key;
                return Err(LieError::DuplicateEntry { i, j, k });
            }
        }
        constants.retain(|_, c| !c.is_zero());
        let algebra = Self::from_constants(dim, constants);
        algebra.check_jacobi()?;
        Ok(algebra)
    }

    fn from_constants(dim: usize, constants: BTreeMap<(usize, usize, usize), Rational>) -> Self {
        let mut table = vec![Vec::new(); dim * dim];
        for (&(i, j, k), c) in &constants {
            table[i * dim + j].push((k, c.clone()));
            table[j * dim + i].push((k, -c.clone()));
        }
        Self {
            dim,
            constants,
            labels: None,
            table,
        }
    }

    pub fn abelian(dim: usize) -> Result<Self, LieError> {
        Self::new(dim, std::iter::empty())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim, "one label per basis vector");
        self.labels = Some(labels);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Name of basis vector `i`: its label if present, otherwise `X{i+1}`.
    pub fn basis_name(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("X{}", i + 1),
        }
    }

    /// Nonzero constants `c_{ij}^k` with `i < j`, in lexicographic order.
    pub fn constants(&self) -> impl Iterator<Item = ((usize, usize, usize), &Rational)> + '_ {
        self.constants.iter().map(|(&key, c)| (key, c))
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i * self.dim + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// `[X_i, X_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let mut out = zero_vector(self.dim);
        for (k, c) in &self.table[i * self.dim + j] {
            out[*k] += c;
        }
        out
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, LieError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let entries = &self.table[i * n + j];
                if entries.is_empty() {
                    continue;
                }
                let coeff = xi * yj;
                for (k, c) in entries {
                    out[*k] += &coeff * c;
                }
            }
        }
        out
    }

    /// `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]`
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, coeff) in &self.table[a * n + b] {
                for (l, d) in &self.table[m * n + c] {
                    out[*l] += coeff * d;
                }
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let residual = self.jacobi_residual(i, j, k);
                    if !is_zero(&residual) {
                        return Err(LieError::JacobiViolation { i, j, k, residual });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn derived_algebra(&self) -> Subspace {
        let n = self.dim;
        let vectors: Vec<Vector> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket_basis(i, j))
            .filter(|v| !is_zero(v))
            .collect();
        Subspace::span(n, &vectors)
    }

    /// `[A, B]` for subspaces `A`, `B`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let v = self.bracket_unchecked(x, y);
                if !is_zero(&v) {
                    vectors.push(v);
                }
            }
        }
        Subspace::span(self.dim, &vectors)
    }

    /// `D^(0) = L, D^(k+1) = [D^(k), D^(k)]`, stopping at the first repeat.
    /// The repeated term is not included.
    pub fn derived_series(&self) -> Vec<Subspace> {
        self.descending_series(|current| self.bracket_subspaces(current, current))
    }

    /// `C^1 = L, C^(k+1) = [L, C^k]`, stopping at the first repeat.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        self.descending_series(|current| self.bracket_subspaces(&full, current))
    }

    fn descending_series(&self, next: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let current = series.last().expect("series is nonempty");
            let following = next(current);
            if &following == current {
                return series;
            }
            series.push(following);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series()
            .last()
            .is_some_and(Subspace::is_zero)
    }

    /// Derived length `s` (`D^(s) = 0`, `D^(s-1) ≠ 0`), or `None` when the
    /// derived series stabilizes at a nonzero term.
    pub fn solvability_class(&self) -> Option<usize> {
        let series = self.derived_series();
        series
            .last()
            .filter(|s| s.is_zero())
            .map(|_| series.len() - 1)
    }

    /// Joint kernel of all `ad X_j`, as the nullspace of the stacked
    /// adjoint matrices.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // Row (j, k): coefficient of x_i is c_{ij}^k.
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let row: Vector = (0..n).map(|i| self.structure_constant(i, j, k)).collect();
                if !is_zero(&row) {
                    rows.push(row);
                }
            }
        }
        Subspace::from_rref(n, linalg::nullspace(&rows, n))
    }

    /// Extends the algebra by commuting derivations `t_a` acting through
    /// `[t_a, X] = D_a X`. New generators are appended after `X_1..X_n`.
    pub fn semidirect_product(&self, derivations: &[Derivation]) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        for (a, d) in derivations.iter().enumerate() {
            if d.size() != n || !d.is_derivation_of(self) {
                return Err(LieError::NotADerivation(a));
            }
        }
        for a in 0..derivations.len() {
            for b in a + 1..derivations.len() {
                if !derivations[a].commutes_with(&derivations[b]) {
                    return Err(LieError::NonCommutingDerivations(a, b));
                }
            }
        }
        let mut constants = self.constants.clone();
        for (a, d) in derivations.iter().enumerate() {
            for i in 0..n {
                for k in 0..n {
                    let entry = d.entry(k, i);
                    if !entry.is_zero() {
                        constants.insert((i, n + a, k), -entry.clone());
                    }
                }
            }
        }
        let mut product = Self::from_constants(n + derivations.len(), constants);
        product.check_jacobi()?;
        if let Some(labels) = &self.labels {
            let mut l = labels.clone();
            l.extend((0..derivations.len()).map(|a| format!("t{}", a + 1)));
            product.labels = Some(l);
        }
        Ok(product)
    }

    /// Relabels the basis: old `X_i` becomes new `X_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> LieAlgebra {
        assert_eq!(perm.len(), self.dim);
        let mut constants = BTreeMap::new();
        for (&(i, j, k), c) in &self.constants {
            let (pi, pj) = (perm[i], perm[j]);
            let (key, value) = if pi < pj {
                ((pi, pj, perm[k]), c.clone())
            } else {
                ((pj, pi, perm[k]), -c.clone())
            };
            constants.insert(key, value);
        }
        let mut out = Self::from_constants(self.dim, constants);
        if let Some(labels) = &self.labels {
            let mut l = labels.clone();
            for (i, name) in labels.iter().enumerate() {
                l[perm[i]] = name.clone();
            }
            out.labels = Some(l);
        }
        out
    }

    /// Rescales the basis, `X_i ↦ s_i X_i` (all `s_i` nonzero).
    pub fn rescaled(&self, scales: &[Rational]) -> LieAlgebra {
        assert_eq!(scales.len(), self.dim);
        assert!(
            scales.iter().all(|s| !s.is_zero()),
            "scales must be nonzero"
        );
        let constants = self
            .constants
            .iter()
            .map(|(&(i, j, k), c)| ((i, j, k), c * &scales[i] * &scales[j] / &scales[k]))
            .collect();
        let mut out = Self::from_constants(self.dim, constants);
        out.labels = self.labels.clone();
        out
    }
}

/// Linear subspace of `ℚ^n`, stored as a reduced row-echelon basis so that
/// equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| unit_vector(ambient_dim, i))
                .collect(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Self {
        Self {
            ambient_dim,
            basis: linalg::rref(vectors, ambient_dim).0,
        }
    }

    fn from_rref(ambient_dim: usize, basis: Vec<Vector>) -> Self {
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        linalg::rank(&rows, self.ambient_dim) == self.basis.len()
    }

    pub fn contains_basis_vector(&self, i: usize) -> bool {
        self.contains(&unit_vector(self.ambient_dim, i))
    }

    /// Sum of subspaces.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &rows)
    }
}

/// Linear endomorphism of the algebra given by its matrix in the basis:
/// column `i` holds the coordinates of `D X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    matrix: Vec<Vector>,
}

impl Derivation {
    pub fn from_matrix(matrix: Vec<Vector>) -> Self {
        let n = matrix.len();
        assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
        Self { matrix }
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let n = diag.len();
        let matrix = (0..n)
            .map(|r| {
                let mut row = zero_vector(n);
                row[r] = diag[r].clone();
                row
            })
            .collect();
        Self { matrix }
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.matrix[row][col]
    }

    /// Diagonal entries, when every off-diagonal entry vanishes.
    pub fn as_diagonal(&self) -> Option<Vector> {
        let n = self.size();
        let off_diagonal_zero =
            (0..n).all(|r| (0..n).all(|c| r == c || self.matrix[r][c].is_zero()));
        off_diagonal_zero.then(|| (0..n).map(|i| self.matrix[i][i].clone()).collect())
    }

    pub fn apply(&self, x: &[Rational]) -> Vector {
        let n = self.size();
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate() {
                let d = &self.matrix[k][i];
                if !d.is_zero() {
                    *slot += xi * d;
                }
            }
        }
        out
    }

    /// `D[X_i,X_j] = [DX_i,X_j] + [X_i,DX_j]` for all basis pairs.
    pub fn is_derivation_of(&self, algebra: &LieAlgebra) -> bool {
        let n = algebra.dim();
        if self.size() != n {
            return false;
        }
        let images: Vec<Vector> = (0..n).map(|i| self.apply(&unit_vector(n, i))).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(&algebra.bracket_basis(i, j));
                let mut rhs = algebra.bracket_unchecked(&images[i], &unit_vector(n, j));
                let second = algebra.bracket_unchecked(&unit_vector(n, i), &images[j]);
                axpy(&mut rhs, &Rational::from_integer(1.into()), &second);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn commutes_with(&self, other: &Derivation) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            let e = unit_vector(n, i);
            self.apply(&other.apply(&e)) == other.apply(&self.apply(&e))
        })
    }
}
