//! Classification of `(G, A)` instances into the structural cases, the
//! singular-vertex checklist, refutations and corollary scans.

mod checklist;
mod classify;
mod scans;

use serde::{Deserialize, Serialize};

use crate::action::{orbit_partition, ActionSpec, OrbitPartition};
use crate::constructors::CatalogEntry;
use crate::error::{Error, Result};
use crate::graph::{build_graph, classify_shape, CommutingGraph, GraphShape};
use crate::group::{FiniteGroup, MAX_ORDER};
use crate::structure::{structure_report, StructureReport};

pub use checklist::{singular_vertex_checklist, CheckStatus, ChecklistItem};
pub use classify::classify_theorem_case;
pub use scans::{corollary_scans, refute_by_aut_clique, refute_by_clique, CliqueWitness, CorollaryReport, ScanResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    NotApplicable,
    NoSingularPxQ,
    Case1aD8,
    Case1bQ8D8,
    Case2a,
    Case2bSL24,
    Case2cSL24P5,
    Case3Quasisimple,
    Case3Product,
    Case4Frobenius,
}

/// The structural case an F-graph instance falls into, with the quantities
/// that were verified to place it there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum TheoremCase {
    NotApplicable { reason: String },
    /// `G = P × Q`, both elementary abelian, orbits `P∖1`, `Q∖1`, the rest.
    NoSingularPxQ { p: usize, q: usize, p_order: usize, q_order: usize },
    /// `O_p(G) = 1`, `p = 2`, Sylow 2-subgroup `D8`, `|F(G)| = q²`.
    Case1aD8 { q: usize, fitting_order: usize, h_over_g: usize },
    /// `O_p(G) = 1`, `p = 2`, Sylow 2-subgroup `Q8 ∗ D8`, `|F(G)| = 81`.
    Case1bQ8D8 { fitting_order: usize, h_over_g: usize, frobenius_kernel: usize },
    /// `O_p(G) = F(G) ≥ C_G(F(G))`; `G/F(G)` is `r : C` with `C` a cyclic
    /// `p`-group of order dividing `p²`.
    Case2a { p: usize, normal_prime: usize, complement_order: usize },
    Case2bSL24 { p: usize },
    Case2cSL24P5,
    Case3Quasisimple { name: String },
    /// `G = O_p(G) × E(G)` with `E(G) ≅ PSL(2,5)`.
    Case3Product { p: usize, op_order: usize, layer_order: usize },
    /// `F(G) = P × Q`, `G/P` Frobenius with kernel `F(G)/P`.
    Case4Frobenius { p: usize, q: usize, p_order: usize, q_order: usize, complement_order: usize },
}

impl TheoremCase {
    pub fn tag(&self) -> CaseTag {
        match self {
            TheoremCase::NotApplicable { .. } => CaseTag::NotApplicable,
            TheoremCase::NoSingularPxQ { .. } => CaseTag::NoSingularPxQ,
            TheoremCase::Case1aD8 { .. } => CaseTag::Case1aD8,
            TheoremCase::Case1bQ8D8 { .. } => CaseTag::Case1bQ8D8,
            TheoremCase::Case2a { .. } => CaseTag::Case2a,
            TheoremCase::Case2bSL24 { .. } => CaseTag::Case2bSL24,
            TheoremCase::Case2cSL24P5 => CaseTag::Case2cSL24P5,
            TheoremCase::Case3Quasisimple { .. } => CaseTag::Case3Quasisimple,
            TheoremCase::Case3Product { .. } => CaseTag::Case3Product,
            TheoremCase::Case4Frobenius { .. } => CaseTag::Case4Frobenius,
        }
    }

    /// Remarks attached to the classification.
    pub fn notes(&self) -> Vec<String> {
        match self {
            TheoremCase::Case2a { p, complement_order, .. } if *complement_order > *p => vec![format!(
                "case 2(a) complement has order {complement_order} = p^2; the sharper bound |C| dividing p would fail"
            )],
            TheoremCase::Case2bSL24 { .. } | TheoremCase::Case2cSL24P5 => {
                vec!["unwitnessed branch: no known instance realises this case".into()]
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseOutcome {
    Classified { case: TheoremCase },
    /// No branch verified: a counterexample candidate or an implementation bug.
    NoBranchMatches { reason: String },
}

impl CaseOutcome {
    pub fn case(&self) -> Option<&TheoremCase> {
        match self {
            CaseOutcome::Classified { case } => Some(case),
            CaseOutcome::NoBranchMatches { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularInfo {
    pub vertex: usize,
    pub orbit: usize,
    pub rep: usize,
    pub rep_label: String,
    pub size: usize,
    pub rep_order: usize,
}

/// One expected fact of a catalog entry compared with the computed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationCheck {
    pub fact: String,
    pub citation: String,
    pub expected: String,
    pub actual: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub group: String,
    pub action: String,
    pub order: usize,
    /// Order of the acting group on `G`, when it is at most the element cap.
    pub action_order: Option<usize>,
    /// Sizes of the nonidentity orbits, in orbit-id order.
    pub orbit_sizes: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub degree_census: Vec<usize>,
    pub shape: GraphShape,
    pub singular: Option<SingularInfo>,
    pub structure: StructureReport,
    pub theorem_case: CaseOutcome,
    pub notes: Vec<String>,
    pub checklist: Vec<ChecklistItem>,
    pub expectations: Vec<ExpectationCheck>,
}

impl AnalysisReport {
    /// No failed check, no failed expectation and a verified case.
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let CaseOutcome::NoBranchMatches { reason } = &self.theorem_case {
            out.push(format!("no case matches: {reason}"));
        }
        for item in &self.checklist {
            if item.status == CheckStatus::Fail {
                out.push(format!("checklist ({}): {}", item.item, item.detail));
            }
        }
        for e in &self.expectations {
            if !e.holds {
                out.push(format!("{}: expected {}, got {}", e.fact, e.expected, e.actual));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Orbits, graph and report for one instance.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub partition: OrbitPartition,
    pub graph: CommutingGraph,
    pub report: AnalysisReport,
}

/// Full pipeline: orbits, graph, shape, structure, case, checklist.
pub fn analyze(g: &FiniteGroup, action: &ActionSpec) -> Result<Analysis> {
    let partition = orbit_partition(g, action);
    let graph = build_graph(g, &partition, &action.name);
    let shape = classify_shape(&graph);
    let singular = graph.singular_vertex().filter(|_| shape.is_f_graph()).map(|v| {
        let vx = &graph.vertices[v];
        SingularInfo {
            vertex: v,
            orbit: vx.id,
            rep: vx.rep,
            rep_label: vx.rep_label.clone(),
            size: vx.size,
            rep_order: g.element_order(vx.rep),
        }
    });
    let theorem_case = match classify_theorem_case(g, action, &partition, &graph, &shape) {
        Ok(case) => CaseOutcome::Classified { case },
        Err(Error::NoBranchMatches(reason)) => CaseOutcome::NoBranchMatches { reason },
        Err(e) => return Err(e),
    };
    let notes = theorem_case.case().map(TheoremCase::notes).unwrap_or_default();
    let checklist = singular_vertex_checklist(g, action, &partition, &graph);
    let report = AnalysisReport {
        group: g.name().into(),
        action: action.name.clone(),
        order: g.order(),
        action_order: action.induced_order(g, MAX_ORDER).ok(),
        orbit_sizes: graph.vertices.iter().map(|v| v.size).collect(),
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        triangles: graph.triangles().len(),
        degree_census: graph.degree_census(),
        shape,
        singular,
        structure: structure_report(g),
        theorem_case,
        notes,
        checklist,
        expectations: Vec::new(),
    };
    Ok(Analysis { partition, graph, report })
}

fn check<T: std::fmt::Debug + PartialEq>(out: &mut Vec<ExpectationCheck>, fact: &str, citation: &str, expected: T, actual: T) {
    out.push(ExpectationCheck {
        fact: fact.into(),
        citation: citation.into(),
        holds: expected == actual,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    });
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Analyses one named action of a catalog entry and compares every
/// expected fact recorded for it.
pub fn analyze_entry(entry: &CatalogEntry, action_name: &str) -> Result<Analysis> {
    let action = entry
        .action(action_name)
        .ok_or_else(|| Error::Input(format!("{} has no action named {action_name}", entry.name)))?;
    let mut analysis = analyze(&entry.group, action)?;
    let r = &analysis.report;
    let mut out = Vec::new();
    if let Some(order) = entry.expected_order {
        check(&mut out, "group order", &entry.order_citation, order, entry.group.order());
    }
    for facts in entry.expected.iter().filter(|f| f.action == action_name) {
        let c = facts.citation.as_str();
        if let Some(sizes) = &facts.orbit_sizes {
            check(&mut out, "orbit sizes", c, sorted(sizes.clone()), sorted(r.orbit_sizes.clone()));
        }
        if let Some(v) = facts.vertices {
            check(&mut out, "vertices", c, v, r.vertices);
        }
        if let Some(e) = facts.edges {
            check(&mut out, "edges", c, e, r.edges);
        }
        if let Some(t) = facts.triangles {
            check(&mut out, "triangles", c, t, r.triangles);
        }
        if let Some(shape) = &facts.shape {
            out.push(ExpectationCheck {
                fact: "shape".into(),
                citation: c.into(),
                holds: shape.matches(&r.shape),
                expected: format!("{shape:?}"),
                actual: format!("{:?}", r.shape),
            });
        }
        if let Some(size) = facts.singular_size {
            check(&mut out, "singular vertex size", c, Some(size), r.singular.as_ref().map(|s| s.size));
        }
        if let Some(rep) = facts.singular_rep {
            let orbit = analysis.partition.orbit_of[rep];
            check(&mut out, "singular vertex orbit", c, Some(orbit), r.singular.as_ref().map(|s| s.orbit));
        }
        if let Some(orders) = &facts.pendant_orders {
            let actual: Vec<usize> = (0..analysis.graph.vertex_count())
                .filter(|&v| analysis.graph.degree(v) == 1)
                .map(|v| entry.group.element_order(analysis.graph.vertices[v].rep))
                .collect();
            check(&mut out, "orders at pendant vertices", c, sorted(orders.clone()), sorted(actual));
        }
        if let Some(tag) = facts.case {
            check(&mut out, "case", c, Some(tag), r.theorem_case.case().map(TheoremCase::tag));
        }
        if let Some(case) = &facts.case_detail {
            check(&mut out, "case detail", c, Some(case), r.theorem_case.case());
        }
    }
    analysis.report.expectations = out;
    Ok(analysis)
}

/// One catalog action's outcome inside [`verify_catalog`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub entry: String,
    pub report: AnalysisReport,
    /// Orbit sizes plus the identity orbit sum to `|G|`.
    pub orbit_sum_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entries: Vec<EntryResult>,
    /// Group-axiom audit per catalog group; `None` when it passed.
    pub audits: Vec<(String, Option<String>)>,
    pub corollaries: CorollaryReport,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            let subject = format!("{} / {}", e.entry, e.report.action);
            out.extend(e.report.failures().into_iter().map(|f| format!("{subject}: {f}")));
            if !e.orbit_sum_ok {
                out.push(format!("{subject}: orbit sizes do not sum to |G| - 1"));
            }
        }
        for (name, err) in &self.audits {
            if let Some(err) = err {
                out.push(format!("{name}: audit failed: {err}"));
            }
        }
        for r in self.corollaries.results.iter().filter(|r| !r.pass) {
            out.push(format!("{} {}: {}", r.corollary, r.subject, r.detail));
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Analyses every action of every entry, audits the groups and runs the
/// corollary scans. Entries are processed in parallel when the `parallel`
/// feature is on; results keep catalog order.
pub fn verify_catalog(entries: &[CatalogEntry]) -> Result<VerifyReport> {
    let jobs: Vec<(usize, &str)> =
        entries.iter().enumerate().flat_map(|(i, e)| e.actions.iter().map(move |a| (i, a.name.as_str()))).collect();
    let run = |&(i, name): &(usize, &str)| analyze_entry(&entries[i], name).map(|a| (i, a));
    #[cfg(feature = "parallel")]
    let analyses: Vec<(usize, Analysis)> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let analyses: Vec<(usize, Analysis)> = jobs.iter().map(run).collect::<Result<_>>()?;
    let results = analyses
        .iter()
        .map(|(i, a)| EntryResult {
            entry: entries[*i].name.clone(),
            orbit_sum_ok: a.report.orbit_sizes.iter().sum::<usize>() + 1 == a.report.order,
            report: a.report.clone(),
        })
        .collect();
    let audits = entries.iter().map(|e| (e.name.clone(), e.group.audit().err().map(|err| err.to_string()))).collect();
    let corollaries = corollary_scans(entries, &analyses)?;
    Ok(VerifyReport { entries: results, audits, corollaries })
}
