//! Decision procedures for 2-step solvability of `g ⊕ T_I`.
//!
//! The graph criterion reads everything off the weight graph: `g ⊕ T_I` is
//! declared 2-step solvable when the weight graph restricted to
//! `⋃_{i∈I} E(β_i)` is complete. The oracle builds the semidirect product
//! and computes its derived series. Subsets are index sets into the
//! fundamental weights, 0-based here and 1-based in reports.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{self, isomorphisms, GraphError, IsomorphismMode, SimpleGraph};
use crate::lie::{LieAlgebra, LieError, Subspace};
use crate::torus::{
    check_condition1, diagonal_torus, weight_system, Condition1, Torus, TorusError, WeightSystem,
};

/// Largest rank for which all subsets are enumerated.
pub const MAX_ENUMERATION_RANK: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolvabilityError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("index subset must be nonempty")]
    EmptySubset,
    #[error("rank {0} exceeds the enumeration limit of {MAX_ENUMERATION_RANK}")]
    RankTooLarge(usize),
    #[error("join decomposition precondition failed: {0}")]
    PreconditionFailed(JoinPrecondition),
    #[error("weight systems differ in shape: p = {p1} vs {p2}, rank = {k1} vs {k2}")]
    ShapeMismatch {
        p1: usize,
        p2: usize,
        k1: usize,
        k2: usize,
    },
    #[error("algebra is not nilpotent")]
    NotNilpotent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinPrecondition {
    OverlappingSupports(usize, usize),
    NotComplete,
}

impl std::fmt::Display for JoinPrecondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::OverlappingSupports(a, b) => {
                write!(f, "E(b{}) and E(b{}) intersect", a + 1, b + 1)
            }
            Self::NotComplete => write!(f, "the union subgraph is not complete"),
        }
    }
}

fn check_subset(ws: &WeightSystem, subset: &BTreeSet<usize>) -> Result<(), SolvabilityError> {
    if subset.is_empty() {
        return Err(SolvabilityError::EmptySubset);
    }
    for &i in subset {
        ws.check_index(i)?;
    }
    Ok(())
}

/// `⋃_{i∈I} E(β_i)`.
pub fn support_union(
    ws: &WeightSystem,
    subset: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>, SolvabilityError> {
    let mut out = BTreeSet::new();
    for &i in subset {
        out.extend(ws.support_set(i)?);
    }
    Ok(out)
}

/// Weight graph induced on `E(β_i)`.
pub fn fundamental_subgraph(ws: &WeightSystem, i: usize) -> Result<SimpleGraph, SolvabilityError> {
    let support = ws.support_set(i)?;
    Ok(graph::weight_graph(ws).induced(&support)?)
}

/// Graph-criterion verdict with the lexicographically first missing edge
/// (a sum-graph edge inside the union) when the answer is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVerdict {
    pub two_step: bool,
    pub missing_edge: Option<(usize, usize)>,
}

pub fn is_two_step_subtorus(
    ws: &WeightSystem,
    subset: &BTreeSet<usize>,
) -> Result<GraphVerdict, SolvabilityError> {
    check_subset(ws, subset)?;
    let union = support_union(ws, subset)?;
    Ok(first_sum_edge(ws, &union))
}

fn first_sum_edge(ws: &WeightSystem, vertices: &BTreeSet<usize>) -> GraphVerdict {
    let sums = graph::sum_graph(ws);
    let missing_edge = vertices
        .iter()
        .flat_map(|&a| vertices.range(a + 1..).map(move |&b| (a, b)))
        .find(|&(a, b)| sums.has_edge(a, b));
    GraphVerdict {
        two_step: missing_edge.is_none(),
        missing_edge,
    }
}

/// Pair `γ_1, γ_2 ∈ E(β_i)` whose sum is a weight outside `E(β_i)`.
///
/// Coordinates add, so `l_{β_i}(γ_1 + γ_2) ≥ 2` for any such pair and the
/// result is always `None` on integral systems.
pub fn three_step_witness(
    ws: &WeightSystem,
    i: usize,
) -> Result<Option<(usize, usize)>, SolvabilityError> {
    let support = ws.support_set(i)?;
    for &a in &support {
        for &b in support.range(a + 1..) {
            if let Some(k) = ws.index_of(&ws.weight(a).sum(ws.weight(b))) {
                if !support.contains(&k) {
                    return Ok(Some((a, b)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetEnumeration {
    /// Subsets passing the graph criterion, ordered by size then lexicographically.
    pub subsets: Vec<BTreeSet<usize>>,
    /// Members of `subsets` with no passing proper superset.
    pub maximal: Vec<BTreeSet<usize>>,
}

/// All nonempty `I` passing the graph criterion. A subset is only tested
/// when all of its one-smaller subsets passed.
pub fn enumerate_two_step_subsets(
    ws: &WeightSystem,
) -> Result<SubsetEnumeration, SolvabilityError> {
    let k = ws.rank();
    if k > MAX_ENUMERATION_RANK {
        return Err(SolvabilityError::RankTooLarge(k));
    }
    let mut passing = vec![false; 1 << k];
    let mut order: Vec<u32> = (1u32..1 << k).collect();
    order.sort_by_key(|&m| (m.count_ones(), mask_key(m, k)));
    let mut subsets = Vec::new();
    for mask in order {
        let subs_ok = (0..k).filter(|i| mask >> i & 1 == 1).all(|i| {
            let smaller = mask & !(1 << i);
            smaller == 0 || passing[smaller as usize]
        });
        if !subs_ok {
            continue;
        }
        let set = mask_to_set(mask, k);
        if is_two_step_subtorus(ws, &set)?.two_step {
            passing[mask as usize] = true;
            subsets.push(set);
        }
    }
    let maximal = subsets
        .iter()
        .filter(|s| {
            let mask = set_to_mask(s);
            (0..k).all(|i| mask >> i & 1 == 1 || !passing[(mask | 1 << i) as usize])
        })
        .cloned()
        .collect();
    Ok(SubsetEnumeration { subsets, maximal })
}

fn mask_key(mask: u32, k: usize) -> Vec<usize> {
    (0..k).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask_to_set(mask: u32, k: usize) -> BTreeSet<usize> {
    mask_key(mask, k).into_iter().collect()
}

fn set_to_mask(set: &BTreeSet<usize>) -> u32 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

/// Oracle verdict with the derived length of `g ⊕ T_I` and, when that
/// length exceeds 2, a basis pair of `D^(1)` with nonzero bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub two_step: bool,
    pub derived_length: usize,
    pub bracket_witness: Option<(usize, usize)>,
}

/// Builds `g ⊕ T_I` from the generators of `torus` indexed by `subset` and
/// computes its derived length directly.
pub fn oracle_two_step(
    algebra: &LieAlgebra,
    torus: &Torus,
    subset: &BTreeSet<usize>,
) -> Result<OracleVerdict, SolvabilityError> {
    if subset.is_empty() {
        return Err(SolvabilityError::EmptySubset);
    }
    let mut derivations = Vec::new();
    for &i in subset {
        if i >= torus.rank() {
            return Err(TorusError::IndexOutOfRange {
                index: i,
                rank: torus.rank(),
            }
            .into());
        }
        derivations.push(torus.derivation(i));
    }
    let product = algebra.semidirect_product(&derivations)?;
    let series = product.derived_series();
    let derived_length = match series.last() {
        Some(last) if last.is_zero() => series.len() - 1,
        _ => return Err(SolvabilityError::NotNilpotent),
    };
    let bracket_witness = if derived_length > 2 {
        nonzero_bracket_in(&product, &series[1])
    } else {
        None
    };
    Ok(OracleVerdict {
        two_step: derived_length <= 2,
        derived_length,
        bracket_witness,
    })
}

/// First pair of basis vectors lying in `space` with nonzero bracket.
fn nonzero_bracket_in(algebra: &LieAlgebra, space: &Subspace) -> Option<(usize, usize)> {
    let inside: Vec<usize> = (0..algebra.dim())
        .filter(|&i| space.contains_basis_vector(i))
        .collect();
    inside
        .iter()
        .flat_map(|&a| inside.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
        .find(|&(a, b)| {
            algebra
                .bracket_basis(a, b)
                .iter()
                .any(|c| !num_traits::Zero::is_zero(c))
        })
}

/// Graph criterion on the vertex set that actually spans `D^(1)(g ⊕ T_I)`:
/// weights with a nonzero coordinate in `I`, together with every weight that
/// is a sum of two weights. Agrees with [`oracle_two_step`] whenever every
/// weight-sum relation is carried by a bracket.
pub fn closure_two_step(
    ws: &WeightSystem,
    subset: &BTreeSet<usize>,
) -> Result<GraphVerdict, SolvabilityError> {
    check_subset(ws, subset)?;
    let sums = graph::sum_graph(ws);
    let mut vertices: BTreeSet<usize> = (0..ws.len())
        .filter(|&j| subset.iter().any(|&i| ws.weight(j).coords()[i] != 0))
        .collect();
    for (a, b) in sums.edges() {
        vertices.insert(
            ws.index_of(&ws.weight(a).sum(ws.weight(b)))
                .expect("sum-graph edge"),
        );
    }
    Ok(first_sum_edge(ws, &vertices))
}

/// Derived length of `g ⊕ T` for the full torus.
pub fn full_torus_check(algebra: &LieAlgebra, torus: &Torus) -> Result<usize, SolvabilityError> {
    let all: BTreeSet<usize> = (0..torus.rank()).collect();
    if all.is_empty() {
        return algebra
            .solvability_class()
            .ok_or(SolvabilityError::NotNilpotent);
    }
    Ok(oracle_two_step(algebra, torus, &all)?.derived_length)
}

/// Checks that the complete union subgraph over pairwise disjoint supports is
/// isomorphic to the join of the fundamental subgraphs.
pub fn join_decomposition_check(
    ws: &WeightSystem,
    subset: &BTreeSet<usize>,
) -> Result<bool, SolvabilityError> {
    check_subset(ws, subset)?;
    let supports: Vec<(usize, BTreeSet<usize>)> = subset
        .iter()
        .map(|&i| ws.support_set(i).map(|s| (i, s)))
        .collect::<Result<_, _>>()?;
    for (x, (a, sa)) in supports.iter().enumerate() {
        for (b, sb) in &supports[x + 1..] {
            if !sa.is_disjoint(sb) {
                return Err(SolvabilityError::PreconditionFailed(
                    JoinPrecondition::OverlappingSupports(*a, *b),
                ));
            }
        }
    }
    let union = support_union(ws, subset)?;
    let union_graph = graph::weight_graph(ws).induced(&union)?;
    if !union_graph.is_complete() {
        return Err(SolvabilityError::PreconditionFailed(
            JoinPrecondition::NotComplete,
        ));
    }
    let mut joined: Option<SimpleGraph> = None;
    for &i in subset {
        let g = fundamental_subgraph(ws, i)?;
        joined = Some(match joined {
            None => g,
            Some(acc) => graph::join(&acc, &g),
        });
    }
    let joined = joined.expect("nonempty subset");
    if joined.vertex_count() > graph::MAX_ISOMORPHISM_VERTICES {
        // Both sides are complete on the same vertex count.
        return Ok(joined.is_complete() && joined.vertex_count() == union_graph.vertex_count());
    }
    Ok(graph::are_isomorphic(&joined, &union_graph, IsomorphismMode::Structural)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Determination {
    /// `vertex_map[j]` is the image of weight `j`; `sigma[i]` the image of `β_i`.
    Equivalent {
        vertex_map: Vec<usize>,
        sigma: Vec<usize>,
    },
    /// Weight graphs are isomorphic but no isomorphism carries the family of
    /// fundamental subgraphs across.
    Distinguished,
    GraphsDiffer,
}

/// Joint search for a weight-graph isomorphism `φ` and `σ ∈ S_k` with
/// `φ(β_i) = β'_{σ(i)}` and `φ(E(β_i)) = E(β'_{σ(i)})` for every `i`.
pub fn determination_check(
    ws1: &WeightSystem,
    ws2: &WeightSystem,
) -> Result<Determination, SolvabilityError> {
    if ws1.len() != ws2.len() || ws1.rank() != ws2.rank() {
        return Err(SolvabilityError::ShapeMismatch {
            p1: ws1.len(),
            p2: ws2.len(),
            k1: ws1.rank(),
            k2: ws2.rank(),
        });
    }
    let p = ws1.len();
    if p > graph::MAX_ISOMORPHISM_VERTICES {
        return Err(GraphError::TooLarge {
            found: p,
            limit: graph::MAX_ISOMORPHISM_VERTICES,
        }
        .into());
    }
    let (g1, g2) = (graph::weight_graph(ws1), graph::weight_graph(ws2));
    let supports = |ws: &WeightSystem| -> Vec<BTreeSet<usize>> {
        (0..ws.rank())
            .map(|i| ws.support_set(i).expect("index in range"))
            .collect()
    };
    let (e1, e2) = (supports(ws1), supports(ws2));
    let mut graphs_match = false;
    let mut result = None;
    isomorphisms(&g1, &g2, IsomorphismMode::Structural, &mut |map| {
        graphs_match = true;
        let sigma: Option<Vec<usize>> = ws1
            .fundamental_indices()
            .iter()
            .map(|&f| ws2.fundamental_indices().iter().position(|&g| g == map[f]))
            .collect();
        let Some(sigma) = sigma else { return false };
        let carried = (0..ws1.rank()).all(|i| {
            let image: BTreeSet<usize> = e1[i].iter().map(|&v| map[v]).collect();
            image == e2[sigma[i]]
        });
        if carried {
            result = Some(Determination::Equivalent {
                vertex_map: map.to_vec(),
                sigma,
            });
        }
        carried
    });
    Ok(match result {
        Some(r) => r,
        None if graphs_match => Determination::Distinguished,
        None => Determination::GraphsDiffer,
    })
}

/// Per-subset verdicts as reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetVerdict {
    pub subset: BTreeSet<usize>,
    pub graph: GraphVerdict,
    pub oracle: Option<OracleVerdict>,
}

impl SubsetVerdict {
    pub fn agrees(&self) -> bool {
        self.oracle
            .as_ref()
            .is_none_or(|o| o.two_step == self.graph.two_step)
    }
}

/// A structural statement about the weight system, evaluated on this input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    /// `None` when the hypothesis of the statement does not apply.
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvabilityReport {
    pub algebra_id: String,
    pub dim: usize,
    pub rank: usize,
    pub weights: WeightSystem,
    pub abelian: Option<bool>,
    pub center_dim: Option<usize>,
    pub condition1: Option<Condition1>,
    pub sum_graph: SimpleGraph,
    pub weight_graph: SimpleGraph,
    pub properties: Vec<PropertyCheck>,
    pub verdicts: Vec<SubsetVerdict>,
    pub enumeration: SubsetEnumeration,
    pub full_torus_derived_length: Option<usize>,
}

impl SolvabilityReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &SubsetVerdict> {
        self.verdicts.iter().filter(|v| !v.agrees())
    }

    /// Derived length of `g ⊕ T` is at least 3 for nonabelian `g`.
    pub fn rigidity_obstruction(&self) -> Option<bool> {
        match (self.abelian, self.full_torus_derived_length) {
            (Some(false), Some(len)) => Some(len >= 3),
            _ => None,
        }
    }

    pub fn weight_graph_is_tree(&self) -> bool {
        self.weight_graph.is_tree()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Solvability(#[from] SolvabilityError),
    #[error("graph criterion and derived-series oracle disagree on {} subset(s)", .0.mismatches().count())]
    VerdictMismatch(Box<SolvabilityReport>),
}

impl From<LieError> for AnalyzeError {
    fn from(e: LieError) -> Self {
        Self::Solvability(e.into())
    }
}

impl From<TorusError> for AnalyzeError {
    fn from(e: TorusError) -> Self {
        Self::Solvability(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Cross-check every graph verdict with the derived-series oracle.
    pub oracle: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { oracle: true }
    }
}

/// Full pipeline on an algebra: torus, weights, graphs, structural checks,
/// subset verdicts and the full-torus derived length.
pub fn analyze(
    id: &str,
    algebra: &LieAlgebra,
    options: AnalyzeOptions,
) -> Result<SolvabilityReport, AnalyzeError> {
    if !algebra.is_nilpotent() {
        return Err(SolvabilityError::NotNilpotent.into());
    }
    let torus = diagonal_torus(algebra)?;
    let ws = weight_system(algebra, &torus)?;
    let normalized = ws.fundamental_torus();
    let mut report = base_report(id, ws)?;
    report.abelian = Some(algebra.is_abelian());
    report.center_dim = Some(algebra.center().dim());
    report.condition1 = Some(check_condition1(algebra, &report.weights));
    if options.oracle {
        for verdict in &mut report.verdicts {
            verdict.oracle = Some(oracle_two_step(algebra, &normalized, &verdict.subset)?);
        }
    }
    report.full_torus_derived_length = Some(full_torus_check(algebra, &normalized)?);
    report.properties = property_checks(&report);
    if report.mismatches().next().is_some() {
        return Err(AnalyzeError::VerdictMismatch(Box::new(report)));
    }
    Ok(report)
}

/// Graph-only pipeline for a weight system given without brackets.
pub fn analyze_weights(id: &str, ws: WeightSystem) -> Result<SolvabilityReport, SolvabilityError> {
    let mut report = base_report(id, ws)?;
    report.properties = property_checks(&report);
    Ok(report)
}

fn base_report(id: &str, ws: WeightSystem) -> Result<SolvabilityReport, SolvabilityError> {
    let sum_graph = graph::sum_graph(&ws);
    let weight_graph = sum_graph.complement();
    let k = ws.rank();
    if k > MAX_ENUMERATION_RANK {
        return Err(SolvabilityError::RankTooLarge(k));
    }
    let mut verdicts = Vec::new();
    for mask in 1u32..1 << k {
        let subset = mask_to_set(mask, k);
        let graph = is_two_step_subtorus(&ws, &subset)?;
        verdicts.push(SubsetVerdict {
            subset,
            graph,
            oracle: None,
        });
    }
    verdicts.sort_by(|a, b| (a.subset.len(), &a.subset).cmp(&(b.subset.len(), &b.subset)));
    let enumeration = enumerate_two_step_subsets(&ws)?;
    Ok(SolvabilityReport {
        algebra_id: id.to_string(),
        dim: ws.len(),
        rank: k,
        weights: ws,
        abelian: None,
        center_dim: None,
        condition1: None,
        sum_graph,
        weight_graph,
        properties: Vec::new(),
        verdicts,
        enumeration,
        full_torus_derived_length: None,
    })
}

fn check(name: &'static str, holds: Option<bool>, detail: String) -> PropertyCheck {
    PropertyCheck {
        name,
        holds,
        detail,
    }
}

/// The structural statements about weight graphs, evaluated on `report`.
pub fn property_checks(report: &SolvabilityReport) -> Vec<PropertyCheck> {
    let p = report.dim;
    let sums = &report.sum_graph;
    let wg = &report.weight_graph;
    let isolated = sums.isolated_vertices().len();
    let mut out = Vec::new();
    out.push(check(
        "isolated-vertex",
        Some(isolated >= 1),
        format!("{isolated} isolated vertices in the sum graph"),
    ));
    out.push(check(
        "isolated-equals-center",
        report.center_dim.map(|z| z == isolated),
        match report.center_dim {
            Some(z) => format!("{isolated} isolated vertices, dim Z = {z}"),
            None => "no brackets available".into(),
        },
    ));
    out.push(check(
        "connected",
        Some(wg.is_connected()),
        format!("{} edges", wg.edge_count()),
    ));
    let bound = graph::max_sum_edges(p);
    out.push(check(
        "sum-edge-bound",
        Some(sums.edge_count() <= bound),
        format!("q = {} <= {bound}", sums.edge_count()),
    ));
    let lower = graph::min_weight_graph_edges(p);
    out.push(check(
        "weight-edge-bound",
        Some(wg.edge_count() >= lower),
        format!("q = {} >= {lower}", wg.edge_count()),
    ));
    let (bip, bip_detail) = match wg.bipartition() {
        graph::Bipartition::OddCycle(c) => (false, format!("odd cycle {}", render_vertices(&c))),
        graph::Bipartition::Bipartite(_) => (true, "bipartite".into()),
    };
    out.push(check("not-bipartite", (p >= 4).then_some(!bip), bip_detail));
    let tri = wg.find_triangle();
    out.push(check(
        "triangle",
        (p >= 4).then_some(tri.is_some()),
        match tri {
            Some(t) => format!("triangle {}", render_vertices(&t)),
            None => "no triangle".into(),
        },
    ));
    let nonabelian = report.abelian.map(|a| !a).unwrap_or(sums.edge_count() > 0);
    out.push(check(
        "tree-iff-heisenberg3",
        nonabelian.then_some(wg.is_tree() == (p == 3)),
        format!("tree = {}, p = {p}", wg.is_tree()),
    ));
    if p <= graph::MAX_CLIQUE_VERTICES {
        let clique = wg.max_clique().expect("size checked");
        out.push(check(
            "clique-bound",
            (report.rank >= 3).then_some(clique.size() + 2 <= p),
            format!(
                "max clique {} = {}",
                clique.size(),
                render_vertices(&clique.members)
            ),
        ));
    }
    let full: BTreeSet<usize> = (0..report.rank).collect();
    let full_graph = report
        .verdicts
        .iter()
        .find(|v| v.subset == full)
        .map(|v| v.graph.two_step);
    out.push(check(
        "full-torus-not-two-step",
        nonabelian.then(|| match report.full_torus_derived_length {
            Some(len) => len >= 3 && full_graph == Some(false),
            None => full_graph == Some(false),
        }),
        match report.full_torus_derived_length {
            Some(len) => format!("derived length of g + T = {len}"),
            None => "graph criterion only".into(),
        },
    ));
    if let Some(c1) = &report.condition1 {
        out.push(check(
            "Condition-1 surrogate",
            Some(c1.holds),
            if c1.holds {
                "every weight-sum relation is carried by a bracket".into()
            } else {
                let (i, j, k) = c1.failures[0];
                format!("[X{}, X{}] has no X{} component", i + 1, j + 1, k + 1)
            },
        ));
    }
    out
}

fn render_vertices(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
