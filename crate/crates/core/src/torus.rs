//! Derivations, the diagonal torus and the weight system it induces.
//!
//! The input basis is assumed to be weight-adapted: only derivations that are
//! diagonal in the given basis are torus candidates. Weights are expressed in
//! the basis of fundamental weights `β_1..β_k`, the weights of a chosen set of
//! generators (basis vectors outside `[L, L]`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::lie::{Derivation, LieAlgebra};
use crate::linalg::{self, Vector};
use crate::rational::{int, to_i64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("no nonzero diagonal derivation: the basis is not weight-adapted or the algebra is characteristically nilpotent")]
    ZeroRank,
    #[error("basis vectors {} and {} share a weight (multi-dimensional weight space)", .0 + 1, .1 + 1)]
    MultipleWeights(usize, usize),
    #[error("no choice of fundamental weights gives integral coordinates")]
    NonIntegralWeights,
    #[error("generator weights do not span the weight space")]
    RankDeficient,
    #[error("fundamental index {} out of range for rank {rank}", .index + 1)]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight system must have rank at least 1")]
    EmptyRank,
    #[error("weight {} has {found} coordinates, expected {rank}", .index + 1)]
    WrongLength {
        index: usize,
        found: usize,
        rank: usize,
    },
    #[error("fundamental weight b{} is not among the weights", .0 + 1)]
    MissingFundamental(usize),
}

/// Integer coordinate vector of a weight in the fundamental basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    /// The fundamental weight `β_i` in rank `rank`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Self(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn sum(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinates relabeled by `sigma`: coordinate `i` moves to `sigma[i]`.
    pub fn relabeled(&self, sigma: &[usize]) -> Weight {
        let mut c = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            c[sigma[i]] = v;
        }
        Weight(c)
    }
}

/// Renders as a combination of fundamentals, e.g. `b1+b2`, `2b1-b3`, `0`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let magnitude = c.unsigned_abs();
            if magnitude == 1 {
                write!(f, "{sign}b{}", i + 1)?;
            } else {
                write!(f, "{sign}{magnitude}b{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `l_{β_i}(w)`, the coefficient of `β_i` in `w`.
pub fn beta_length(w: &Weight, i: usize) -> Result<i64, TorusError> {
    w.0.get(i).copied().ok_or(TorusError::IndexOutOfRange {
        index: i,
        rank: w.rank(),
    })
}

/// Commuting diagonal derivations, stored as their diagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torus {
    generators: Vec<Vector>,
}

impl Torus {
    pub fn from_diagonals(generators: Vec<Vector>) -> Self {
        Self { generators }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn derivation(&self, a: usize) -> Derivation {
        Derivation::diagonal(&self.generators[a])
    }

    pub fn derivations(&self) -> Vec<Derivation> {
        (0..self.rank()).map(|a| self.derivation(a)).collect()
    }
}

/// Basis of `Der(L)`, as the nullspace of the derivation condition in the
/// `n²` matrix entries.
pub fn derivation_space(algebra: &LieAlgebra) -> Vec<Derivation> {
    let n = algebra.dim();
    let unknown = |row: usize, col: usize| row * n + col;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in 0..n {
                // (D[X_i,X_j])_m - ([DX_i,X_j])_m - ([X_i,DX_j])_m = 0
                let mut row = linalg::zero_vector(n * n);
                for k in 0..n {
                    row[unknown(m, k)] += algebra.structure_constant(i, j, k);
                }
                for l in 0..n {
                    row[unknown(l, i)] -= algebra.structure_constant(l, j, m);
                    row[unknown(l, j)] -= algebra.structure_constant(i, l, m);
                }
                if !linalg::is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    linalg::nullspace(&rows, n * n)
        .into_iter()
        .map(|v| Derivation::from_matrix(v.chunks(n).map(<[Rational]>::to_vec).collect()))
        .collect()
}

/// The torus of all diagonal derivations: solutions of `d_k = d_i + d_j`
/// for every nonzero `c_{ij}^k`, with the reduced-echelon basis as generators.
pub fn diagonal_torus(algebra: &LieAlgebra) -> Result<Torus, TorusError> {
    let n = algebra.dim();
    let rows: Vec<Vector> = algebra
        .constants()
        .map(|((i, j, k), _)| {
            let mut row = linalg::zero_vector(n);
            row[i] += int(1);
            row[j] += int(1);
            row[k] -= int(1);
            row
        })
        .collect();
    let generators = linalg::nullspace(&rows, n);
    if generators.is_empty() {
        return Err(TorusError::ZeroRank);
    }
    Ok(Torus { generators })
}

/// Weights of the basis vectors in the fundamental basis `β_1..β_k`.
///
/// Vertex `j` of every graph built from this system is the weight of `X_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    rank: usize,
    weights: Vec<Weight>,
    fundamental_indices: Vec<usize>,
    lookup: HashMap<Weight, usize>,
}

impl WeightSystem {
    /// Builds a system from explicit integer weights. Each standard basis
    /// vector must occur; weights must be pairwise distinct.
    pub fn new(rank: usize, weights: Vec<Weight>) -> Result<Self, TorusError> {
        if rank == 0 {
            return Err(TorusError::EmptyRank);
        }
        for (index, w) in weights.iter().enumerate() {
            if w.rank() != rank {
                return Err(TorusError::WrongLength {
                    index,
                    found: w.rank(),
                    rank,
                });
            }
        }
        let mut lookup = HashMap::new();
        for (j, w) in weights.iter().enumerate() {
            if let Some(&i) = lookup.get(w) {
                return Err(TorusError::MultipleWeights(i, j));
            }
            lookup.insert(w.clone(), j);
        }
        let fundamental_indices = (0..rank)
            .map(|i| {
                lookup
                    .get(&Weight::fundamental(rank, i))
                    .copied()
                    .ok_or(TorusError::MissingFundamental(i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            rank,
            weights,
            fundamental_indices,
            lookup,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of weights `p` (equal to the algebra dimension).
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, j: usize) -> &Weight {
        &self.weights[j]
    }

    /// Position of `β_i` for each `i`.
    pub fn fundamental_indices(&self) -> &[usize] {
        &self.fundamental_indices
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.lookup.get(w).copied()
    }

    /// True when every coordinate is nonnegative.
    pub fn is_graded(&self) -> bool {
        self.weights
            .iter()
            .all(|w| w.coords().iter().all(|&c| c >= 0))
    }

    pub fn check_index(&self, i: usize) -> Result<(), TorusError> {
        if i < self.rank {
            Ok(())
        } else {
            Err(TorusError::IndexOutOfRange {
                index: i,
                rank: self.rank,
            })
        }
    }

    /// `E(β_i)`: positions of weights with `l_{β_i} ≥ 1`.
    pub fn support_set(&self, i: usize) -> Result<BTreeSet<usize>, TorusError> {
        self.check_index(i)?;
        Ok(self
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.coords()[i] >= 1)
            .map(|(j, _)| j)
            .collect())
    }

    /// Torus dual to the fundamental basis: generator `i` acts on `X_j` by
    /// `l_{β_i}(weight(X_j))`.
    pub fn fundamental_torus(&self) -> Torus {
        let generators = (0..self.rank)
            .map(|i| self.weights.iter().map(|w| int(w.coords()[i])).collect())
            .collect();
        Torus { generators }
    }

    /// Moves weight `j` to position `vertex_perm[j]` and relabels fundamental
    /// `i` as `sigma[i]`.
    pub fn relabeled(&self, vertex_perm: &[usize], sigma: &[usize]) -> WeightSystem {
        assert_eq!(vertex_perm.len(), self.len());
        assert_eq!(sigma.len(), self.rank);
        let mut weights = vec![Weight(Vec::new()); self.len()];
        for (j, w) in self.weights.iter().enumerate() {
            weights[vertex_perm[j]] = w.relabeled(sigma);
        }
        WeightSystem::new(self.rank, weights).expect("relabeling preserves validity")
    }
}

/// Weight system of `algebra` under the diagonal torus `torus`.
///
/// The fundamental weights are the weights of `rank` basis vectors outside
/// `[L, L]`; the first such choice (in basis order) giving nonnegative
/// integer coordinates wins, falling back to the first integral choice.
pub fn weight_system(algebra: &LieAlgebra, torus: &Torus) -> Result<WeightSystem, TorusError> {
    let n = algebra.dim();
    let k = torus.rank();
    if k == 0 {
        return Err(TorusError::ZeroRank);
    }
    let raw: Vec<Vector> = (0..n)
        .map(|j| torus.generators().iter().map(|g| g[j].clone()).collect())
        .collect();
    for j in 0..n {
        if let Some(i) = (0..j).find(|&i| raw[i] == raw[j]) {
            return Err(TorusError::MultipleWeights(i, j));
        }
    }
    let derived = algebra.derived_algebra();
    let candidates: Vec<usize> = (0..n)
        .filter(|&j| !derived.contains_basis_vector(j))
        .collect();

    let mut independent_seen = false;
    let mut first_integral: Option<(Vec<usize>, Vec<Vec<i64>>)> = None;
    for chosen in combinations(candidates.len(), k) {
        let chosen: Vec<usize> = chosen.into_iter().map(|c| candidates[c]).collect();
        let Some(coords) = coordinates_in(&raw, &chosen) else {
            continue;
        };
        independent_seen = true;
        let Some(coords) = coords else { continue };
        if coords.iter().all(|c| c.iter().all(|&x| x >= 0)) {
            return Ok(build(k, coords, chosen));
        }
        first_integral.get_or_insert((chosen, coords));
    }
    match first_integral {
        Some((chosen, coords)) => Ok(build(k, coords, chosen)),
        None if independent_seen => Err(TorusError::NonIntegralWeights),
        None => Err(TorusError::RankDeficient),
    }
}

fn build(rank: usize, coords: Vec<Vec<i64>>, chosen: Vec<usize>) -> WeightSystem {
    let weights: Vec<Weight> = coords.into_iter().map(Weight).collect();
    let lookup = weights
        .iter()
        .cloned()
        .enumerate()
        .map(|(j, w)| (w, j))
        .collect();
    WeightSystem {
        rank,
        weights,
        fundamental_indices: chosen,
        lookup,
    }
}

/// Coordinates of every raw weight in the basis formed by `raw[chosen]`.
/// Outer `None`: the chosen weights are dependent. Inner `None`: some
/// coordinate is not an integer.
fn coordinates_in(raw: &[Vector], chosen: &[usize]) -> Option<Option<Vec<Vec<i64>>>> {
    let k = chosen.len();
    let basis: Vec<Vector> = (0..k)
        .map(|a| chosen.iter().map(|&s| raw[s][a].clone()).collect())
        .collect();
    if linalg::rank(&basis, k) < k {
        return None;
    }
    let mut out = Vec::with_capacity(raw.len());
    for w in raw {
        let c = linalg::solve_square(&basis, w)?;
        match c.iter().map(to_i64).collect::<Option<Vec<i64>>>() {
            Some(ints) => out.push(ints),
            None => return Some(None),
        }
    }
    Some(Some(out))
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for t in i + 1..k {
                    next[t] = next[t - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Outcome of the Condition 1 surrogate: every weight-sum relation
/// `α_i + α_j = α_k` must be carried by a nonzero `c_{ij}^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition1 {
    pub holds: bool,
    /// Failing relations `(i, j, k)` with `i < j`.
    pub failures: Vec<(usize, usize, usize)>,
}

pub fn check_condition1(algebra: &LieAlgebra, ws: &WeightSystem) -> Condition1 {
    assert_eq!(
        algebra.dim(),
        ws.len(),
        "weight system must come from this algebra"
    );
    let mut failures = Vec::new();
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            if let Some(k) = ws.index_of(&ws.weight(i).sum(ws.weight(j))) {
                if algebra.structure_constant(i, j, k).is_zero() {
                    failures.push((i, j, k));
                }
            }
        }
    }
    Condition1 {
        holds: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn algebra(dim: usize, entries: &[(usize, usize, usize, i64)]) -> LieAlgebra {
        LieAlgebra::new(
            dim,
            entries
                .iter()
                .map(|&(i, j, k, c)| ((i - 1, j - 1, k - 1), int(c))),
        )
        .unwrap()
    }

    fn h3() -> LieAlgebra {
        algebra(3, &[(1, 2, 3, 1)])
    }

    fn l6() -> LieAlgebra {
        algebra(
            6,
            &[(1, 2, 3, 1), (1, 4, 5, 1), (2, 5, 6, 1), (3, 4, 6, -1)],
        )
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    /// Rank of the derivation constraint system, built column by column:
    /// column `(k, l)` is the defect of the elementary matrix `E_{kl}`.
    fn derivation_dim_oracle(l: &LieAlgebra) -> usize {
        let n = l.dim();
        let mut columns = Vec::new();
        for row in 0..n {
            for col in 0..n {
                let mut m = vec![linalg::zero_vector(n); n];
                m[row][col] = int(1);
                let d = Derivation::from_matrix(m);
                let mut defect = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let lhs = d.apply(&l.bracket_basis(i, j));
                        let a = l
                            .bracket(
                                &d.apply(&linalg::unit_vector(n, i)),
                                &linalg::unit_vector(n, j),
                            )
                            .unwrap();
                        let b = l
                            .bracket(
                                &linalg::unit_vector(n, i),
                                &d.apply(&linalg::unit_vector(n, j)),
                            )
                            .unwrap();
                        for m in 0..n {
                            defect.push(&lhs[m] - &a[m] - &b[m]);
                        }
                    }
                }
                columns.push(defect);
            }
        }
        n * n - linalg::rank(&columns, columns[0].len())
    }

    #[test]
    fn derivation_space_dimensions() {
        assert_eq!(derivation_space(&LieAlgebra::abelian(3).unwrap()).len(), 9);
        let h = h3();
        let der = derivation_space(&h);
        assert_eq!(der.len(), 6);
        assert_eq!(derivation_dim_oracle(&h), 6);
        assert!(der.iter().all(|d| d.is_derivation_of(&h)));
        let l = l6();
        assert_eq!(derivation_space(&l).len(), derivation_dim_oracle(&l));
    }

    #[test]
    fn l6_diagonal_derivations_lie_in_der() {
        let l = l6();
        let space = derivation_space(&l);
        let n = 36;
        let flat = |d: &Derivation| d.matrix().concat();
        let basis: Vec<Vector> = space.iter().map(flat).collect();
        let r = linalg::rank(&basis, n);
        for diag in [[1, 0, 1, 0, 1, 1], [0, 1, 1, 0, 0, 1], [0, 0, 0, 1, 1, 1]] {
            let d = Derivation::diagonal(&diag.map(int));
            assert!(d.is_derivation_of(&l));
            let mut rows = basis.clone();
            rows.push(flat(&d));
            assert_eq!(linalg::rank(&rows, n), r);
        }
    }

    #[test]
    fn diagonal_torus_ranks() {
        assert_eq!(diagonal_torus(&h3()).unwrap().rank(), 2);
        assert_eq!(diagonal_torus(&l6()).unwrap().rank(), 3);
        assert_eq!(
            diagonal_torus(&LieAlgebra::abelian(4).unwrap())
                .unwrap()
                .rank(),
            4
        );
        let l = l6();
        for d in diagonal_torus(&l).unwrap().derivations() {
            assert!(d.is_derivation_of(&l));
        }
    }

    #[test]
    fn zero_rank_when_no_diagonal_survives() {
        // d1 + d2 = d2 forces d1 = 0; d2 stays free.
        let l = algebra(2, &[(1, 2, 2, 1)]);
        assert_eq!(diagonal_torus(&l).unwrap().rank(), 1);
        // [X1,X2] = X1 + X2 forces d1 = d2 = d1 + d2, so everything vanishes.
        let l = LieAlgebra::new(2, [((0, 1, 0), int(1)), ((0, 1, 1), int(1))]).unwrap();
        assert_eq!(diagonal_torus(&l).unwrap_err(), TorusError::ZeroRank);
    }

    #[test]
    fn weight_system_examples() {
        let h = h3();
        let ws = weight_system(&h, &diagonal_torus(&h).unwrap()).unwrap();
        assert_eq!(ws.weights(), &[w(&[1, 0]), w(&[0, 1]), w(&[1, 1])]);
        assert_eq!(ws.fundamental_indices(), &[0, 1]);

        let l = l6();
        let ws = weight_system(&l, &diagonal_torus(&l).unwrap()).unwrap();
        assert_eq!(
            ws.weights(),
            &[
                w(&[1, 0, 0]),
                w(&[0, 1, 0]),
                w(&[1, 1, 0]),
                w(&[0, 0, 1]),
                w(&[1, 0, 1]),
                w(&[1, 1, 1])
            ]
        );
        assert_eq!(ws.fundamental_indices(), &[0, 1, 3]);
        assert!(ws.is_graded());

        let a = LieAlgebra::abelian(2).unwrap();
        let ws = weight_system(&a, &diagonal_torus(&a).unwrap()).unwrap();
        assert_eq!(ws.weights(), &[w(&[1, 0]), w(&[0, 1])]);
    }

    #[test]
    fn weights_are_additive_along_brackets() {
        let l = l6();
        let ws = weight_system(&l, &diagonal_torus(&l).unwrap()).unwrap();
        for ((i, j, k), _) in l.constants() {
            assert_eq!(ws.weight(i).sum(ws.weight(j)), *ws.weight(k));
        }
        for d in ws.fundamental_torus().derivations() {
            assert!(d.is_derivation_of(&l));
        }
    }

    #[test]
    fn heisenberg5_falls_back_to_signed_coordinates() {
        let h5 = algebra(5, &[(1, 2, 5, 1), (3, 4, 5, 1)]);
        let ws = weight_system(&h5, &diagonal_torus(&h5).unwrap()).unwrap();
        assert_eq!(ws.rank(), 3);
        assert_eq!(ws.fundamental_indices(), &[0, 1, 2]);
        assert_eq!(ws.weight(3), &w(&[1, 1, -1]));
        assert!(!ws.is_graded());
    }

    #[test]
    fn weight_system_errors() {
        // A torus smaller than the diagonal one can merge weight spaces.
        let h = h3();
        let t = Torus::from_diagonals(vec![vec![int(1), int(1), int(2)]]);
        assert_eq!(
            weight_system(&h, &t).unwrap_err(),
            TorusError::MultipleWeights(0, 1)
        );

        let t = Torus::from_diagonals(vec![
            vec![int(2), int(1), int(3)],
            vec![int(0), int(1), int(1)],
        ]);
        // Fundamentals X1, X2: coordinates stay integral.
        assert!(weight_system(&h, &t).is_ok());

        let t = Torus::from_diagonals(vec![vec![int(2), int(4), int(6)]]);
        // Rank 1 but two generators: X1 alone gives X2 = 2b1, X3 = 3b1.
        let ws = weight_system(&h, &t).unwrap();
        assert_eq!(ws.weights(), &[w(&[1]), w(&[2]), w(&[3])]);

        let t = Torus::from_diagonals(vec![vec![int(2), int(3), int(5)]]);
        // X1 gives X2 = 3/2 b1, X2 gives X1 = 2/3 b2: never integral.
        assert_eq!(
            weight_system(&h, &t).unwrap_err(),
            TorusError::NonIntegralWeights
        );
    }

    #[test]
    fn beta_lengths() {
        assert_eq!(beta_length(&w(&[1, 1, 1]), 0), Ok(1));
        assert_eq!(beta_length(&w(&[1, 0, 1]), 1), Ok(0));
        for i in 0..3 {
            assert_eq!(beta_length(&Weight::fundamental(3, i), i), Ok(1));
        }
        assert_eq!(
            beta_length(&w(&[1, 0]), 2),
            Err(TorusError::IndexOutOfRange { index: 2, rank: 2 })
        );
    }

    #[test]
    fn support_sets() {
        let l = l6();
        let ws = weight_system(&l, &diagonal_torus(&l).unwrap()).unwrap();
        assert_eq!(ws.support_set(0).unwrap(), BTreeSet::from([0, 2, 4, 5]));
        assert_eq!(ws.support_set(2).unwrap(), BTreeSet::from([3, 4, 5]));
        let h = h3();
        let ws = weight_system(&h, &diagonal_torus(&h).unwrap()).unwrap();
        assert_eq!(ws.support_set(0).unwrap(), BTreeSet::from([0, 2]));
        assert!(ws.support_set(2).is_err());
    }

    #[test]
    fn condition1_examples() {
        let l = l6();
        let ws = weight_system(&l, &diagonal_torus(&l).unwrap()).unwrap();
        assert_eq!(
            check_condition1(&l, &ws),
            Condition1 {
                holds: true,
                failures: vec![]
            }
        );
        let h = h3();
        let ws = weight_system(&h, &diagonal_torus(&h).unwrap()).unwrap();
        assert!(check_condition1(&h, &ws).holds);
    }

    #[test]
    fn condition1_failure_on_quotient_of_free_algebra() {
        // Three generators, [X1,X2]=X4, [X2,X3]=X5, [X1,X3]=X6,
        // [X1,X5]=X7, [X2,X6]=X7 and [X4,X3]=0: Jacobi holds, yet
        // weight(X4) + weight(X3) = weight(X7).
        let l = algebra(
            7,
            &[
                (1, 2, 4, 1),
                (2, 3, 5, 1),
                (1, 3, 6, 1),
                (1, 5, 7, 1),
                (2, 6, 7, 1),
            ],
        );
        let ws = weight_system(&l, &diagonal_torus(&l).unwrap()).unwrap();
        let c = check_condition1(&l, &ws);
        assert!(!c.holds);
        assert_eq!(c.failures, vec![(2, 3, 6)]);
    }

    #[test]
    fn explicit_weight_systems() {
        let ws = WeightSystem::new(2, vec![w(&[1, 0]), w(&[0, 1]), w(&[2, 1])]).unwrap();
        assert_eq!(ws.fundamental_indices(), &[0, 1]);
        assert_eq!(
            WeightSystem::new(2, vec![w(&[1, 0]), w(&[1, 0]), w(&[0, 1])]).unwrap_err(),
            TorusError::MultipleWeights(0, 1)
        );
        assert_eq!(
            WeightSystem::new(2, vec![w(&[1, 0]), w(&[1, 1])]).unwrap_err(),
            TorusError::MissingFundamental(1)
        );
        assert!(matches!(
            WeightSystem::new(2, vec![w(&[1])]),
            Err(TorusError::WrongLength { .. })
        ));
    }

    #[test]
    fn basis_scaling_leaves_weights_unchanged() {
        let l = l6();
        let s = l.rescaled(&[2, -3, 5, 7, 1, 13].map(int));
        let ws = |a: &LieAlgebra| weight_system(a, &diagonal_torus(a).unwrap()).unwrap();
        assert_eq!(ws(&l), ws(&s));
    }

    #[test]
    fn display_of_weights() {
        assert_eq!(w(&[1, 1, 0]).to_string(), "b1+b2");
        assert_eq!(w(&[2, 1]).to_string(), "2b1+b2");
        assert_eq!(w(&[1, 1, -1]).to_string(), "b1+b2-b3");
        assert_eq!(w(&[0, -2]).to_string(), "-2b2");
        assert_eq!(w(&[0, 0]).to_string(), "0");
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(
            combinations(3, 0).collect::<Vec<_>>(),
            vec![Vec::<usize>::new()]
        );
    }
}
