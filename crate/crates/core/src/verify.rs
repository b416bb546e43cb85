//! Invariant suite over documents and the catalog. Every check produces one
//! deterministic line.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalog::{Catalog, Golden};
use crate::document::{AlgebraDocument, DocumentError};
use crate::graph::{self, MAX_ISOMORPHISM_VERTICES};
use crate::lie::LieAlgebra;
use crate::solvability::{
    analyze, analyze_weights, determination_check, join_decomposition_check, three_step_witness,
    AnalyzeError, AnalyzeOptions, Determination, SolvabilityError, SolvabilityReport,
};
use crate::torus::{diagonal_torus, WeightSystem};

/// Relabelings tried per weight system.
pub const RELABELINGS: usize = 20;
pub const RELABEL_SEED: u64 = 0x6c69_6577;
pub const SWEEP_MAX: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub subject: String,
    pub invariant: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.outcome {
            Outcome::Pass => write!(
                f,
                "[PASS] {}: {}: {}",
                self.subject, self.invariant, self.detail
            ),
            Outcome::Fail => write!(
                f,
                "[FAIL] {}: {} failed: {}",
                self.subject, self.invariant, self.detail
            ),
            Outcome::Skip => write!(
                f,
                "[SKIP] {}: {}: {}",
                self.subject, self.invariant, self.detail
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| l.outcome == Outcome::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let count = |o| self.lines.iter().filter(|l| l.outcome == o).count();
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} skipped\n",
            self.lines.len(),
            count(Outcome::Pass),
            count(Outcome::Fail),
            count(Outcome::Skip)
        ));
        out
    }

    fn push(
        &mut self,
        subject: &str,
        invariant: &str,
        holds: Option<bool>,
        detail: impl Into<String>,
    ) {
        let outcome = match holds {
            Some(true) => Outcome::Pass,
            Some(false) => Outcome::Fail,
            None => Outcome::Skip,
        };
        self.lines.push(CheckLine {
            subject: subject.to_string(),
            invariant: invariant.to_string(),
            outcome,
            detail: detail.into(),
        });
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Solvability(#[from] SolvabilityError),
}

/// Runs every invariant on one document, followed by the bounds sweep.
pub fn verify_document(
    subject: &str,
    doc: &AlgebraDocument,
    golden: Option<&Golden>,
) -> Result<VerifyReport, VerifyError> {
    let mut out = VerifyReport::default();
    check_document(&mut out, subject, doc, golden)?;
    bounds_sweep(&mut out);
    Ok(out)
}

/// Every catalog entry, the pairwise distinction check and the bounds sweep.
pub fn verify_catalog(catalog: &Catalog) -> Result<VerifyReport, VerifyError> {
    let mut out = VerifyReport::default();
    let mut systems = Vec::new();
    for entry in catalog.entries() {
        if let Some(ws) = check_document(
            &mut out,
            &entry.name,
            &entry.document,
            entry.golden.as_ref(),
        )? {
            systems.push((entry.name.as_str(), ws));
        }
    }
    for (x, (n1, ws1)) in systems.iter().enumerate() {
        for (n2, ws2) in &systems[x + 1..] {
            if ws1.len() != ws2.len() || ws1.rank() != ws2.rank() {
                continue;
            }
            let subject = format!("{n1} vs {n2}");
            if ws1.len() > MAX_ISOMORPHISM_VERTICES {
                out.push(
                    &subject,
                    "distinct-systems",
                    None,
                    "too many weights for exhaustive search",
                );
                continue;
            }
            let (holds, detail) = match determination_check(ws1, ws2)? {
                Determination::GraphsDiffer => (true, "weight graphs differ".to_string()),
                Determination::Distinguished => {
                    (true, "fundamental subgraph families differ".to_string())
                }
                Determination::Equivalent { .. } => {
                    (ws1.weights() != ws2.weights(), "equivalent".to_string())
                }
            };
            out.push(&subject, "distinct-systems", Some(holds), detail);
        }
    }
    bounds_sweep(&mut out);
    Ok(out)
}

fn bounds_sweep(out: &mut VerifyReport) {
    let bad: Vec<usize> = (4..=SWEEP_MAX)
        .filter(|&p| !graph::lemma_inequality_holds(p).expect("p >= 4"))
        .collect();
    let detail = if bad.is_empty() {
        format!("edge-count inequality holds for 4 <= p <= {SWEEP_MAX}")
    } else {
        format!("fails for p in {bad:?}")
    };
    out.push("bounds", "inequality-sweep", Some(bad.is_empty()), detail);
}

fn check_document(
    out: &mut VerifyReport,
    subject: &str,
    doc: &AlgebraDocument,
    golden: Option<&Golden>,
) -> Result<Option<WeightSystem>, VerifyError> {
    let algebra = doc.algebra()?;
    let report = match &algebra {
        Some(l) => {
            out.push(
                subject,
                "nilpotent",
                Some(l.is_nilpotent()),
                format!("dimension {}", l.dim()),
            );
            if !l.is_nilpotent() {
                return Ok(None);
            }
            torus_rank(out, subject, l)?;
            match analyze(subject, l, AnalyzeOptions::default()) {
                Ok(r) => r,
                Err(AnalyzeError::VerdictMismatch(r)) => *r,
                Err(AnalyzeError::Solvability(e)) => return Err(e.into()),
            }
        }
        None => analyze_weights(subject, doc.weight_system()?)?,
    };
    if let Some(g) = golden {
        golden_checks(out, subject, &report, g);
    }
    for p in &report.properties {
        out.push(subject, p.name, p.holds, p.detail.clone());
    }
    if algebra.is_some() {
        oracle_agreement(out, subject, &report);
        three_step_soundness(out, subject, &report)?;
    }
    monotonicity(out, subject, &report);
    join_decompositions(out, subject, &report)?;
    relabeling_invariance(out, subject, &report.weights)?;
    Ok(Some(report.weights))
}

fn torus_rank(out: &mut VerifyReport, subject: &str, l: &LieAlgebra) -> Result<(), VerifyError> {
    let rank = diagonal_torus(l).map_err(SolvabilityError::from)?.rank();
    let n = l.dim();
    out.push(
        subject,
        "torus-rank",
        Some(rank <= n && (rank == n) == l.is_abelian()),
        format!("rank {rank}, dimension {n}, abelian = {}", l.is_abelian()),
    );
    Ok(())
}

fn render_subsets<'a>(subsets: impl IntoIterator<Item = &'a BTreeSet<usize>>) -> String {
    let parts: Vec<String> = subsets.into_iter().map(render_subset).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}

pub fn render_subset(s: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn golden_checks(out: &mut VerifyReport, subject: &str, report: &SolvabilityReport, g: &Golden) {
    out.push(
        subject,
        "golden-rank",
        Some(report.rank == g.rank),
        format!("rank {}, expected {}", report.rank, g.rank),
    );
    let weights: Vec<Vec<i64>> = report
        .weights
        .weights()
        .iter()
        .map(|w| w.coords().to_vec())
        .collect();
    let expected: Vec<Vec<i64>> = g.weights.iter().map(|w| w.to_vec()).collect();
    let rendered: Vec<String> = report
        .weights
        .weights()
        .iter()
        .map(|w| w.to_string())
        .collect();
    out.push(
        subject,
        "golden-weights",
        Some(weights == expected),
        rendered.join(", "),
    );
    let expected: Vec<BTreeSet<usize>> = g
        .two_step_subsets
        .iter()
        .map(|s| s.iter().map(|i| i - 1).collect())
        .collect();
    out.push(
        subject,
        "golden-two-step-subsets",
        Some(report.enumeration.subsets == expected),
        format!(
            "{}, expected {}",
            render_subsets(&report.enumeration.subsets),
            render_subsets(&expected)
        ),
    );
    if let Some(len) = report.full_torus_derived_length {
        out.push(
            subject,
            "golden-full-torus-length",
            Some(len == g.full_torus_derived_length),
            format!("{len}, expected {}", g.full_torus_derived_length),
        );
    }
}

fn oracle_agreement(out: &mut VerifyReport, subject: &str, report: &SolvabilityReport) {
    let bad: Vec<String> = report
        .mismatches()
        .map(|v| {
            let o = v
                .oracle
                .as_ref()
                .expect("mismatch implies an oracle verdict");
            format!(
                "{} graph says {}, derived length {}",
                render_subset(&v.subset),
                if v.graph.two_step {
                    "two-step"
                } else {
                    "not two-step"
                },
                o.derived_length
            )
        })
        .collect();
    let detail = if bad.is_empty() {
        format!(
            "{} subsets agree with the derived series",
            report.verdicts.len()
        )
    } else {
        bad.join("; ")
    };
    out.push(
        subject,
        "graph-criterion-vs-oracle",
        Some(bad.is_empty()),
        detail,
    );
}

fn three_step_soundness(
    out: &mut VerifyReport,
    subject: &str,
    report: &SolvabilityReport,
) -> Result<(), VerifyError> {
    let mut witnesses = Vec::new();
    let mut holds = true;
    for i in 0..report.rank {
        if let Some((a, b)) = three_step_witness(&report.weights, i)? {
            let single: BTreeSet<usize> = [i].into();
            let oracle = report
                .verdicts
                .iter()
                .find(|v| v.subset == single)
                .and_then(|v| v.oracle.as_ref());
            holds &= oracle.is_none_or(|o| !o.two_step);
            witnesses.push(format!("b{}: X{} X{}", i + 1, a + 1, b + 1));
        }
    }
    let detail = if witnesses.is_empty() {
        "no witness for any fundamental weight".into()
    } else {
        witnesses.join("; ")
    };
    out.push(subject, "three-step-witness", Some(holds), detail);
    Ok(())
}

fn monotonicity(out: &mut VerifyReport, subject: &str, report: &SolvabilityReport) {
    let failing: Vec<&BTreeSet<usize>> = report
        .verdicts
        .iter()
        .filter(|v| !v.graph.two_step)
        .map(|v| &v.subset)
        .collect();
    let violation = report
        .verdicts
        .iter()
        .filter(|v| v.graph.two_step)
        .find(|v| failing.iter().any(|f| f.is_subset(&v.subset)));
    let detail = match violation {
        Some(v) => format!(
            "{} passes but contains a failing subset",
            render_subset(&v.subset)
        ),
        None => format!(
            "{} failing subsets, none contained in a passing one",
            failing.len()
        ),
    };
    out.push(subject, "monotonicity", Some(violation.is_none()), detail);
}

fn join_decompositions(
    out: &mut VerifyReport,
    subject: &str,
    report: &SolvabilityReport,
) -> Result<(), VerifyError> {
    let mut checked = Vec::new();
    let mut bad = Vec::new();
    for v in &report.verdicts {
        match join_decomposition_check(&report.weights, &v.subset) {
            Ok(true) => checked.push(&v.subset),
            Ok(false) => bad.push(&v.subset),
            Err(SolvabilityError::PreconditionFailed(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let detail = if bad.is_empty() {
        format!(
            "join matches the union subgraph for {}",
            render_subsets(checked)
        )
    } else {
        format!("join differs for {}", render_subsets(bad.iter().copied()))
    };
    out.push(subject, "join-decomposition", Some(bad.is_empty()), detail);
    Ok(())
}

fn relabeling_invariance(
    out: &mut VerifyReport,
    subject: &str,
    ws: &WeightSystem,
) -> Result<(), VerifyError> {
    if ws.len() > MAX_ISOMORPHISM_VERTICES {
        out.push(
            subject,
            "determination",
            None,
            "too many weights for exhaustive search",
        );
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RELABEL_SEED);
    let mut vertex_perm: Vec<usize> = (0..ws.len()).collect();
    let mut sigma: Vec<usize> = (0..ws.rank()).collect();
    let mut failed = None;
    for round in 0..RELABELINGS {
        vertex_perm.shuffle(&mut rng);
        sigma.shuffle(&mut rng);
        let other = ws.relabeled(&vertex_perm, &sigma);
        if !matches!(
            determination_check(ws, &other)?,
            Determination::Equivalent { .. }
        ) {
            failed = Some(round);
            break;
        }
    }
    let detail = match failed {
        Some(round) => format!(
            "relabeling {} not recognized (vertex map {vertex_perm:?}, sigma {sigma:?})",
            round + 1
        ),
        None => format!("{RELABELINGS} random relabelings recognized as equivalent"),
    };
    out.push(subject, "determination", Some(failed.is_none()), detail);
    Ok(())
}
