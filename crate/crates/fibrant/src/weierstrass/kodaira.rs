//! Kodaira's list: fibre types, their dual graphs and the `(L, K, N)` table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{OrderTriple, WeierstrassError};
use crate::exactpoly::Order;
use crate::monodromy::SL2ZMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`; `I(0)` is a smooth fibre.
    I(u32),
    /// `I_n^*`
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

/// Components (with multiplicities) and intersection pattern of a fibre.
/// Edges are unordered pairs; a loop `(i, i)` is a node of component `i`,
/// and a repeated edge is a second intersection point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualGraph {
    pub multiplicities: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
    pub shape: String,
}

impl DualGraph {
    pub fn component_count(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn count_with_multiplicity(&self, m: u32) -> usize {
        self.multiplicities.iter().filter(|&&x| x == m).count()
    }

    /// Sum of the multiplicities.
    pub fn weighted_count(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == i) + usize::from(b == i)).sum()
    }

    /// `sum_j (C_i . C_j) m_j` for the fibre's intersection form, using
    /// self-intersection `-2` on rational components. Zero on every
    /// component of a Kodaira fibre of star, cycle or `E~` type.
    pub fn fibre_degree(&self, i: usize) -> i64 {
        let mut s = -2 * self.multiplicities[i] as i64;
        for &(a, b) in &self.edges {
            if a == b {
                continue;
            }
            if a == i {
                s += self.multiplicities[b] as i64;
            }
            if b == i {
                s += self.multiplicities[a] as i64;
            }
        }
        s
    }

    fn chain(mults: &[u32], shape: &str) -> Self {
        let edges = (1..mults.len()).map(|i| (i - 1, i)).collect();
        DualGraph { multiplicities: mults.to_vec(), edges, shape: shape.into() }
    }

    fn with_branch(mut self, at: usize, mults: &[u32]) -> Self {
        let mut prev = at;
        for &m in mults {
            self.multiplicities.push(m);
            let i = self.multiplicities.len() - 1;
            self.edges.push((prev, i));
            prev = i;
        }
        self
    }
}

impl KodairaType {
    pub const ROWS: usize = 11;

    pub fn is_smooth(&self) -> bool {
        *self == KodairaType::I(0)
    }

    /// Dynkin label as printed next to each row of the table.
    pub fn dynkin(&self) -> String {
        match *self {
            KodairaType::I(0) | KodairaType::II => "--".into(),
            KodairaType::I(n) => format!("A{}", n - 1),
            KodairaType::IStar(n) => format!("D{}", n + 4),
            KodairaType::III => "A1".into(),
            KodairaType::IV => "A2".into(),
            KodairaType::IVStar => "E6".into(),
            KodairaType::IIIStar => "E7".into(),
            KodairaType::IIStar => "E8".into(),
        }
    }

    /// Euler number of the fibre; equals `N` for a minimal triple.
    pub fn euler_number(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    pub fn dual_graph(&self) -> DualGraph {
        match *self {
            KodairaType::I(0) => DualGraph { multiplicities: vec![1], edges: vec![], shape: "smooth elliptic curve".into() },
            KodairaType::I(1) => DualGraph { multiplicities: vec![1], edges: vec![(0, 0)], shape: "nodal rational curve".into() },
            KodairaType::I(n) => {
                let n = n as usize;
                DualGraph {
                    multiplicities: vec![1; n],
                    edges: (0..n).map(|i| (i, (i + 1) % n)).map(|(a, b)| (a.min(b), a.max(b))).collect(),
                    shape: format!("cycle of {n} rational curves"),
                }
            }
            KodairaType::II => DualGraph { multiplicities: vec![1], edges: vec![], shape: "cuspidal rational curve".into() },
            KodairaType::III => {
                DualGraph { multiplicities: vec![1, 1], edges: vec![(0, 1)], shape: "two rational curves tangent at a point".into() }
            }
            KodairaType::IV => DualGraph {
                multiplicities: vec![1, 1, 1],
                edges: vec![(0, 1), (0, 2), (1, 2)],
                shape: "three rational curves through a point".into(),
            },
            KodairaType::IStar(n) => {
                // chain of n+1 components of multiplicity 2, two ends of multiplicity 1 on each side
                let mut g = DualGraph::chain(&vec![2; n as usize + 1], &format!("star D~{}", n + 4));
                let last = n as usize;
                g = g.with_branch(0, &[1]).with_branch(0, &[1]).with_branch(last, &[1]).with_branch(last, &[1]);
                g
            }
            KodairaType::IVStar => DualGraph::chain(&[1, 2, 3, 2, 1], "E~6").with_branch(2, &[2, 1]),
            KodairaType::IIIStar => DualGraph::chain(&[1, 2, 3, 4, 3, 2, 1], "E~7").with_branch(3, &[2]),
            KodairaType::IIStar => DualGraph::chain(&[2, 4, 6, 5, 4, 3, 2, 1], "E~8").with_branch(2, &[3]),
        }
    }

    /// Conjugacy-class representative of the local monodromy.
    pub fn monodromy(&self) -> SL2ZMatrix {
        let m = |a: i64, b: i64, c: i64, d: i64| SL2ZMatrix::new(a, b, c, d).expect("table entries are unimodular");
        match *self {
            KodairaType::I(n) => m(1, n as i64, 0, 1),
            KodairaType::IStar(n) => m(-1, -(n as i64), 0, -1),
            KodairaType::II => m(1, 1, -1, 0),
            KodairaType::III => m(0, 1, -1, 0),
            KodairaType::IV => m(0, 1, -1, -1),
            KodairaType::IVStar => m(-1, -1, 1, 0),
            KodairaType::IIIStar => m(0, -1, 1, 0),
            KodairaType::IIStar => m(0, -1, 1, 1),
        }
    }

    /// A triple on this type's row of the table (the minimal one).
    pub fn representative_triple(&self) -> OrderTriple {
        let t = |l: u32, k: u32, n: u32| OrderTriple::finite(l, k, n);
        match *self {
            KodairaType::I(n) => t(0, 0, n),
            KodairaType::IStar(0) => t(2, 3, 6),
            KodairaType::IStar(n) => t(2, 3, n + 6),
            KodairaType::II => t(1, 1, 2),
            KodairaType::III => t(1, 2, 3),
            KodairaType::IV => t(2, 2, 4),
            KodairaType::IVStar => t(3, 4, 8),
            KodairaType::IIIStar => t(3, 5, 9),
            KodairaType::IIStar => t(4, 5, 10),
        }
    }
}

/// Table lookup by `(L, K, N)`.
pub fn kodaira_classify(t: &OrderTriple) -> Result<KodairaType, WeierstrassError> {
    use Order::Finite as F;
    let (l, k, n) = (t.l, t.k, t.n);
    if l.at_least(4) && k.at_least(6) {
        return Err(WeierstrassError::NeedsNormalization(*t));
    }
    let not_in_table = || WeierstrassError::NotInTable(*t);
    let F(n) = n else { return Err(not_in_table()) };
    let ty = match n {
        0 if l == F(0) || k == F(0) => KodairaType::I(0),
        n if n >= 1 && l == F(0) && k == F(0) => KodairaType::I(n),
        2 if k == F(1) && l.at_least(1) => KodairaType::II,
        3 if l == F(1) && k.at_least(2) => KodairaType::III,
        4 if k == F(2) && l.at_least(2) => KodairaType::IV,
        6 if l.at_least(2) && k.at_least(3) => KodairaType::IStar(0),
        n if n >= 7 && l == F(2) && k == F(3) => KodairaType::IStar(n - 6),
        8 if k == F(4) && l.at_least(3) => KodairaType::IVStar,
        9 if l == F(3) && k.at_least(5) => KodairaType::IIIStar,
        10 if k == F(5) && l.at_least(4) => KodairaType::IIStar,
        _ => return Err(not_in_table()),
    };
    Ok(ty)
}

pub fn kodaira_monodromy(k: &KodairaType) -> SL2ZMatrix {
    k.monodromy()
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = WeierstrassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeierstrassError::UnknownType(s.to_string());
        let t = s.trim().replace('_', "");
        Ok(match t.as_str() {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = t.strip_prefix('I').ok_or_else(bad)?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let n: u32 = digits.parse().map_err(|_| bad())?;
                if star {
                    KodairaType::IStar(n)
                } else {
                    KodairaType::I(n)
                }
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KodairaRecord {
    tag: String,
    components: usize,
    multiplicities: Vec<u32>,
    dynkin: String,
    dual_graph: DualGraph,
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let g = self.dual_graph();
        KodairaRecord {
            tag: self.to_string(),
            components: g.component_count(),
            multiplicities: g.multiplicities.clone(),
            dynkin: self.dynkin(),
            dual_graph: g,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = KodairaRecord::deserialize(d)?;
        let k: KodairaType = r.tag.parse().map_err(serde::de::Error::custom)?;
        let g = k.dual_graph();
        if r.dual_graph != g || r.components != g.component_count() || r.multiplicities != g.multiplicities || r.dynkin != k.dynkin()
        {
            return Err(serde::de::Error::custom(format!("fibre data does not match type {k}")));
        }
        Ok(k)
    }
}

/// Serde adapter writing a [`KodairaType`] as its short name, e.g. `"I1*"`.
pub mod tag {
    use super::KodairaType;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(k: &KodairaType, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(k)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<KodairaType, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
