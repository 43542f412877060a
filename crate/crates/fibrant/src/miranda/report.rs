use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::MirandaFiber;
use crate::blowup::{regularize, BaseModification, BlowupError, BlowupEvent, CollisionRecord};
use crate::exactpoly::{rational_to_string, Rational};
use crate::lagrange::{build_global_sections, LagrangeError};
use crate::weierstrass::{
    genericity_guard, kodaira_tag, total_space_singularities, DualGraph, KodairaType, OrderTriple, TotalSpaceSingularity,
    WeierstrassError, WeierstrassFibration,
};

/// Bumped whenever the JSON layout of [`ClassificationReport`] changes.
pub const REPORT_VERSION: &str = "fibrant-report/1";

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Lagrange(#[from] LagrangeError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
}

impl AnalysisError {
    /// True for a rejected parameter rather than a failed computation.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            AnalysisError::Weierstrass(WeierstrassError::NonGeneric { .. })
                | AnalysisError::Lagrange(LagrangeError::Weierstrass(WeierstrassError::NonGeneric { .. }))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorEntry {
    pub name: String,
    pub origin: String,
    pub triple: OrderTriple,
    #[serde(with = "kodaira_tag")]
    pub kodaira: KodairaType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollisionEntry {
    /// Ordered like `types`.
    pub divisor_pair: [String; 2],
    pub types: [String; 2],
    pub point: String,
    pub count: usize,
    pub dual_graph: DualGraph,
    #[serde(with = "kodaira_tag")]
    pub label: KodairaType,
    #[serde(with = "kodaira_tag")]
    pub table_label: KodairaType,
    pub contracted: String,
}

impl CollisionEntry {
    fn from_record(c: &CollisionRecord) -> Self {
        let f: &MirandaFiber = &c.fiber;
        CollisionEntry {
            divisor_pair: c.divisor_pair.clone(),
            types: [f.pair.0.to_string(), f.pair.1.to_string()],
            point: c.point.to_string(),
            count: c.count,
            dual_graph: f.dual_graph.clone(),
            label: f.label,
            table_label: f.table_label,
            contracted: f.contracted.clone(),
        }
    }
}

/// Degree and singularities of the affine part of the residual curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuinticSingularities {
    pub degree: u32,
    pub nodes: u32,
    pub cusps: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationReport {
    pub version: String,
    #[serde(with = "crate::exactpoly::qserde::option")]
    pub alpha: Option<Rational>,
    pub divisors: Vec<DivisorEntry>,
    pub collisions: Vec<CollisionEntry>,
    pub total_space_singularities: Vec<TotalSpaceSingularity>,
    pub blowups: Vec<BlowupEvent>,
    pub quintic: Option<QuinticSingularities>,
    pub notes: Vec<String>,
}

/// Divisor pair, types, label, count and graph of one collision.
pub type CollisionShape = ([String; 2], [String; 2], String, usize, DualGraph);

/// α-free content of a report: divisor types by origin and collision
/// fibres, both sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportStructure {
    pub divisors: Vec<(String, String, OrderTriple, String)>,
    pub collisions: Vec<CollisionShape>,
    pub quintic: Option<QuinticSingularities>,
    pub blowups: usize,
}

impl ClassificationReport {
    pub fn divisor(&self, origin: &str, name: &str) -> Option<&DivisorEntry> {
        self.divisors.iter().find(|d| d.origin == origin && d.name == name)
    }

    /// Collisions between the named divisors (in either order) with this label.
    pub fn collisions_between(&self, d1: &str, d2: &str) -> Vec<&CollisionEntry> {
        self.collisions
            .iter()
            .filter(|c| (c.divisor_pair[0] == d1 && c.divisor_pair[1] == d2) || (c.divisor_pair[0] == d2 && c.divisor_pair[1] == d1))
            .collect()
    }

    pub fn structure(&self) -> ReportStructure {
        let mut divisors: Vec<_> =
            self.divisors.iter().map(|d| (d.origin.clone(), d.name.clone(), d.triple, d.kodaira.to_string())).collect();
        divisors.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        let mut collisions: Vec<_> = self
            .collisions
            .iter()
            .map(|c| (c.divisor_pair.clone(), c.types.clone(), c.label.to_string(), c.count, c.dual_graph.clone()))
            .collect();
        collisions.sort_by(|x, y| (&x.0, &x.1, &x.2, x.3).cmp(&(&y.0, &y.1, &y.2, y.3)));
        ReportStructure { divisors, collisions, quintic: self.quintic.clone(), blowups: self.blowups.len() }
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let alpha = self.alpha.as_ref().map(rational_to_string).unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "# Classification report (alpha = {alpha})\n");
        let _ = writeln!(s, "## Divisors\n");
        let _ = writeln!(s, "| divisor | origin | (L, K, N) | fibre |");
        let _ = writeln!(s, "|---|---|---|---|");
        for d in &self.divisors {
            let _ = writeln!(s, "| {} | {} | {} | {} |", d.name, d.origin, d.triple, d.kodaira);
        }
        let _ = writeln!(s, "\n## Collisions\n");
        let _ = writeln!(s, "| divisors | types | point | count | fibre | table label | multiplicities |");
        let _ = writeln!(s, "|---|---|---|---|---|---|---|");
        for c in &self.collisions {
            let m: Vec<String> = c.dual_graph.multiplicities.iter().map(u32::to_string).collect();
            let _ = writeln!(
                s,
                "| {} / {} | {} + {} | {} | {} | {} | {} | {} |",
                c.divisor_pair[0],
                c.divisor_pair[1],
                c.types[0],
                c.types[1],
                c.point,
                c.count,
                c.label,
                c.table_label,
                m.join(", ")
            );
        }
        let _ = writeln!(s, "\n## Total space singularities\n");
        for t in &self.total_space_singularities {
            let _ = writeln!(s, "- {t}");
        }
        if let Some(q) = &self.quintic {
            let _ = writeln!(s, "\n## Residual curve\n\ndegree {}, {} nodes, {} cusps in A0 != 0", q.degree, q.nodes, q.cusps);
        }
        if !self.notes.is_empty() {
            let _ = writeln!(s, "\n## Notes\n");
            for n in &self.notes {
                let _ = writeln!(s, "- {n}");
            }
        }
        s
    }
}

pub fn build_report(
    fib: &WeierstrassFibration,
    modification: &BaseModification,
    singularities: Vec<TotalSpaceSingularity>,
) -> ClassificationReport {
    let divisors = modification
        .divisors
        .iter()
        .map(|d| DivisorEntry { name: d.name.clone(), origin: d.origin.clone(), triple: d.triple, kodaira: d.kodaira })
        .collect();
    let collisions = modification.collisions.iter().map(CollisionEntry::from_record).collect();
    let quintic = modification
        .residual
        .as_ref()
        .map(|r| QuinticSingularities { degree: r.degree, nodes: r.nodes, cusps: r.cusps });
    ClassificationReport {
        version: REPORT_VERSION.into(),
        alpha: fib.params.alpha.clone(),
        divisors,
        collisions,
        total_space_singularities: singularities,
        blowups: modification.events.clone(),
        quintic,
        notes: modification.notes.clone(),
    }
}

/// The whole pipeline for the Lagrange top family at parameter `alpha`.
pub fn analyze_lagrange_family(alpha: &Rational) -> Result<ClassificationReport, AnalysisError> {
    genericity_guard(alpha)?;
    let fib = build_global_sections(alpha)?;
    let modification = regularize(&fib)?;
    let sing = total_space_singularities(&fib)?;
    Ok(build_report(&fib, &modification, sing))
}
