//! Miranda's list of collision fibres over nodes of the reduced
//! discriminant, and the end-to-end classification of the Lagrange family.

mod report;

pub use report::{
    analyze_lagrange_family, build_report, AnalysisError, ClassificationReport, CollisionEntry, CollisionShape, DivisorEntry, QuinticSingularities, ReportStructure,
    REPORT_VERSION,
};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weierstrass::{kodaira_tag, DualGraph, KodairaType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MirandaError {
    #[error("collision {0} + {1} is not on Miranda's list")]
    NotOnList(KodairaType, KodairaType),
}

/// Rows of Miranda's table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MirandaRow {
    IPlusI,
    IPlusIStarEven,
    IPlusIStarOdd,
    IIPlusIV,
    IIPlusI0Star,
    IIPlusIVStar,
    IVPlusI0Star,
    IIIPlusI0Star,
}

impl MirandaRow {
    pub const ALL: [MirandaRow; 8] = [
        MirandaRow::IPlusI,
        MirandaRow::IPlusIStarEven,
        MirandaRow::IPlusIStarOdd,
        MirandaRow::IIPlusIV,
        MirandaRow::IIPlusI0Star,
        MirandaRow::IIPlusIVStar,
        MirandaRow::IVPlusI0Star,
        MirandaRow::IIIPlusI0Star,
    ];

    /// A colliding pair on this row.
    pub fn example(&self) -> (KodairaType, KodairaType) {
        use KodairaType::*;
        match self {
            MirandaRow::IPlusI => (I(2), I(3)),
            MirandaRow::IPlusIStarEven => (I(2), IStar(1)),
            MirandaRow::IPlusIStarOdd => (I(3), IStar(1)),
            MirandaRow::IIPlusIV => (II, IV),
            MirandaRow::IIPlusI0Star => (II, IStar(0)),
            MirandaRow::IIPlusIVStar => (II, IVStar),
            MirandaRow::IVPlusI0Star => (IV, IStar(0)),
            MirandaRow::IIIPlusI0Star => (III, IStar(0)),
        }
    }
}

impl fmt::Display for MirandaRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MirandaRow::IPlusI => "I_M1 + I_M2",
            MirandaRow::IPlusIStarEven => "I_M1 + I_M2* (M1 even)",
            MirandaRow::IPlusIStarOdd => "I_M1 + I_M2* (M1 odd)",
            MirandaRow::IIPlusIV => "II + IV",
            MirandaRow::IIPlusI0Star => "II + I0*",
            MirandaRow::IIPlusIVStar => "II + IV*",
            MirandaRow::IVPlusI0Star => "IV + I0*",
            MirandaRow::IIIPlusI0Star => "III + I0*",
        })
    }
}

/// The fibre over a collision point.
///
/// `dual_graph` is `base`'s graph with `contracted_components` (indices into
/// `base.dual_graph()`) contracted. `label` is the Kodaira type whose index
/// agrees with the contraction counts; `table_label` is the "corresponding
/// Kodaira's types" column as printed, which differs for the `I + I*` rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MirandaFiber {
    #[serde(with = "pair_tags")]
    pub pair: (KodairaType, KodairaType),
    pub row: Option<MirandaRow>,
    pub dual_graph: DualGraph,
    #[serde(with = "kodaira_tag")]
    pub label: KodairaType,
    #[serde(with = "kodaira_tag")]
    pub table_label: KodairaType,
    #[serde(with = "kodaira_tag")]
    pub base: KodairaType,
    pub contracted: String,
    pub contracted_components: Vec<usize>,
}

mod pair_tags {
    use super::KodairaType;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &(KodairaType, KodairaType), s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq([p.0.to_string(), p.1.to_string()])
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(KodairaType, KodairaType), D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let p = |s: String| s.parse::<KodairaType>().map_err(serde::de::Error::custom);
        Ok((p(a)?, p(b)?))
    }
}

/// Contracts the listed components: each connected set of contracted
/// components becomes a point, and the surviving components through it
/// meet pairwise there.
pub fn contract(g: &DualGraph, remove: &[usize], shape: &str) -> DualGraph {
    let gone: BTreeSet<usize> = remove.iter().copied().collect();
    let keep: Vec<usize> = (0..g.component_count()).filter(|i| !gone.contains(i)).collect();
    let index = |i: usize| keep.iter().position(|&k| k == i);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in &g.edges {
        if let (Some(x), Some(y)) = (index(a), index(b)) {
            edges.push((x.min(y), x.max(y)));
        }
    }
    // clusters of removed components
    let mut seen = BTreeSet::new();
    for &start in &gone {
        if !seen.insert(start) {
            continue;
        }
        let mut stack = vec![start];
        let mut touching = BTreeSet::new();
        while let Some(c) = stack.pop() {
            for &(a, b) in &g.edges {
                let other = if a == c { b } else if b == c { a } else { continue };
                if gone.contains(&other) {
                    if seen.insert(other) {
                        stack.push(other);
                    }
                } else {
                    touching.insert(index(other).expect("kept component"));
                }
            }
        }
        let t: Vec<usize> = touching.into_iter().collect();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                edges.push((t[i], t[j]));
            }
        }
    }
    edges.sort();
    DualGraph { multiplicities: keep.iter().map(|&i| g.multiplicities[i]).collect(), edges, shape: shape.into() }
}

fn fiber(
    pair: (KodairaType, KodairaType),
    row: Option<MirandaRow>,
    base: KodairaType,
    remove: Vec<usize>,
    label: KodairaType,
    table_label: KodairaType,
    contracted: &str,
) -> MirandaFiber {
    let shape = if remove.is_empty() { base.dual_graph().shape } else { format!("{base} with {} components contracted", remove.len()) };
    MirandaFiber {
        pair,
        row,
        dual_graph: if remove.is_empty() { base.dual_graph() } else { contract(&base.dual_graph(), &remove, &shape) },
        label,
        table_label,
        base,
        contracted: contracted.into(),
        contracted_components: remove,
    }
}

/// Sort key putting the pair in the order the table rows are written.
fn row_rank(k: &KodairaType) -> (u8, u32) {
    use KodairaType::*;
    match *k {
        I(n) => (0, n),
        II => (1, 0),
        III => (2, 0),
        IV => (3, 0),
        IStar(n) => (4, n),
        IVStar => (5, 0),
        IIIStar => (6, 0),
        IIStar => (7, 0),
    }
}

/// Fibre over a node where fibres of types `k1` and `k2` collide.
pub fn collide(k1: KodairaType, k2: KodairaType) -> Result<MirandaFiber, MirandaError> {
    use KodairaType::*;
    let pair = if row_rank(&k1) <= row_rank(&k2) { (k1, k2) } else { (k2, k1) };
    let none = || "none".to_string();
    Ok(match pair {
        (I(0), other) => fiber(pair, None, other, vec![], other, other, &none()),
        (I(m1), I(m2)) => {
            let t = I(m1 + m2);
            fiber(pair, Some(MirandaRow::IPlusI), t, vec![], t, t, "none")
        }
        (I(m1), IStar(m2)) if m1 % 2 == 0 => {
            let h = m1 / 2;
            // interior multiplicity-2 components 1..=h of the chain of I*_{m1+m2}
            let remove = (1..=h as usize).collect();
            let text = format!("{h} components with multiplicity 2");
            fiber(pair, Some(MirandaRow::IPlusIStarEven), IStar(m1 + m2), remove, IStar(m2 + h), IStar(m1 + m2), &text)
        }
        (I(m1), IStar(m2)) => {
            let h = (m1 - 1) / 2;
            let base = IStar(m2 + h);
            // the two multiplicity-1 ends attached to chain component 0
            let n = (m2 + h) as usize;
            let text = format!("{h} components with multiplicity 2 and 2 components with multiplicity 1");
            fiber(pair, Some(MirandaRow::IPlusIStarOdd), base, vec![n + 1, n + 2], base, IStar(m1 + m2), &text)
        }
        (II, IV) => fiber(pair, Some(MirandaRow::IIPlusIV), IStar(0), vec![2, 3, 4], IStar(0), IStar(0), "3 components with multiplicity 1"),
        (II, IStar(0)) => fiber(pair, Some(MirandaRow::IIPlusI0Star), IVStar, vec![3, 4, 5, 6], IVStar, IVStar, "two of the three (1, 2) arms"),
        (II, IVStar) => fiber(
            pair,
            Some(MirandaRow::IIPlusIVStar),
            IIStar,
            vec![2, 3, 4, 8],
            IIStar,
            IIStar,
            "components with multiplicities 6, 5, 4, 3",
        ),
        (IV, IStar(0)) => fiber(
            pair,
            Some(MirandaRow::IVPlusI0Star),
            IIStar,
            vec![2, 3, 4, 5, 8],
            IIStar,
            IIStar,
            "components with multiplicities 6, 5, 4, 3, 3",
        ),
        (III, IStar(0)) => fiber(
            pair,
            Some(MirandaRow::IIIPlusI0Star),
            IIIStar,
            vec![3, 4, 7],
            IIIStar,
            IIIStar,
            "components with multiplicities 4, 3, 2",
        ),
        _ => return Err(MirandaError::NotOnList(pair.0, pair.1)),
    })
}
