//! Colored quivers, their validation, and the double and extended double.
//!
//! Each color class carries a vertex subset, a partition into parts, an
//! order on the parts and (implicitly, by listing order) an order inside each
//! part.  Together these give the total order on the class used by the
//! Boalch relations.  Within a color the underlying graph is complete
//! k-partite: one edge for every pair of vertices in different parts, which
//! becomes the arrow from the larger to the smaller vertex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use ncalg::{Kind, Names, ParseCtx, Sym};
use serde::{Deserialize, Serialize};

use crate::error::QuiverError;

/// One color class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClass {
    pub id: String,
    pub vertices: Vec<u32>,
    /// Parts of the vertex set; the order inside a part is the listed order.
    pub partition: Vec<Vec<u32>>,
    /// Zero-based indices into `partition`, smallest part first.
    #[serde(default)]
    pub part_order: Vec<usize>,
}

/// An explicitly declared edge, used to cross-check the k-partite shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub color: String,
    pub vertices: [u32; 2],
}

/// A colored quiver on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredQuiver {
    pub n: u32,
    pub colors: Vec<ColorClass>,
    /// Optional explicit edge list; when absent the edges are derived from
    /// the partitions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<Edge>>,
}

/// A validation failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    NoVertices,
    DuplicateColor,
    VertexOutOfRange,
    DuplicateVertex,
    EmptyPart,
    OverlappingParts,
    PartitionMismatch,
    BadPartOrder,
    UnknownEdgeColor,
    SamePartEdge,
    EdgeOutsideColor,
    DuplicateEdge,
    MissingEdge,
    LoopEdge,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::NoVertices => "no vertices",
            ViolationKind::DuplicateColor => "duplicate color",
            ViolationKind::VertexOutOfRange => "vertex out of range",
            ViolationKind::DuplicateVertex => "duplicate vertex",
            ViolationKind::EmptyPart => "empty part",
            ViolationKind::OverlappingParts => "overlapping parts",
            ViolationKind::PartitionMismatch => "partition mismatch",
            ViolationKind::BadPartOrder => "bad part order",
            ViolationKind::UnknownEdgeColor => "unknown edge color",
            ViolationKind::SamePartEdge => "same-part edge",
            ViolationKind::EdgeOutsideColor => "edge outside color",
            ViolationKind::DuplicateEdge => "duplicate edge",
            ViolationKind::MissingEdge => "missing edge",
            ViolationKind::LoopEdge => "loop edge",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.message)
    }
}

impl ColorClass {
    /// A color whose parts are the given lists, in the given order.
    pub fn new(id: &str, partition: Vec<Vec<u32>>) -> Self {
        let vertices = partition.iter().flatten().copied().collect();
        let part_order = (0..partition.len()).collect();
        ColorClass {
            id: id.to_string(),
            vertices,
            partition,
            part_order,
        }
    }

    /// The part order, defaulting to the listed order when omitted.
    fn effective_part_order(&self) -> Vec<usize> {
        if self.part_order.is_empty() {
            (0..self.partition.len()).collect()
        } else {
            self.part_order.clone()
        }
    }

    /// The vertices of the class in their total order, smallest first.
    pub fn order(&self) -> Vec<u32> {
        self.effective_part_order()
            .into_iter()
            .filter_map(|p| self.partition.get(p))
            .flatten()
            .copied()
            .collect()
    }

    /// Position of a vertex in the total order.
    pub fn rank(&self, v: u32) -> Option<usize> {
        self.order().iter().position(|&x| x == v)
    }

    /// Index of the part containing a vertex.
    pub fn part_of(&self, v: u32) -> Option<usize> {
        self.partition.iter().position(|p| p.contains(&v))
    }

    /// True if `i` and `j` are in different parts, i.e. joined by an edge.
    pub fn joined(&self, i: u32, j: u32) -> bool {
        match (self.part_of(i), self.part_of(j)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        }
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.partition.len()
    }
}

impl ColoredQuiver {
    /// Parses and validates a quiver from JSON.
    pub fn from_json(s: &str) -> Result<Self, QuiverError> {
        let q: ColoredQuiver = serde_json::from_str(s)?;
        q.ensure_valid()?;
        Ok(q)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quiver serializes")
    }

    /// Returns an error listing all violations, if any.
    pub fn ensure_valid(&self) -> Result<(), QuiverError> {
        let v = validate(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(QuiverError::Invalid(v))
        }
    }

    /// Color index of a color id.
    pub fn color_index(&self, id: &str) -> Option<u16> {
        self.colors
            .iter()
            .position(|c| c.id == id)
            .map(|i| i as u16)
    }

    pub fn color(&self, c: u16) -> &ColorClass {
        &self.colors[c as usize]
    }

    /// Color names for rendering.
    pub fn names(&self) -> Names {
        Names::new(self.colors.iter().map(|c| c.id.clone()).collect())
    }

    /// Context for the expression parser.
    pub fn parse_ctx(&self) -> ParseCtx {
        ParseCtx::new(self.n, self.colors.iter().map(|c| c.id.clone()).collect())
    }

    /// The original arrows: for each color and each pair of vertices in
    /// different parts, the arrow from the larger to the smaller vertex.
    pub fn arrows(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        for (ci, c) in self.colors.iter().enumerate() {
            let order = c.order();
            for (a, &i) in order.iter().enumerate() {
                for &j in &order[a + 1..] {
                    if c.joined(i, j) {
                        out.push(Sym::v(ci as u16, i, j));
                    }
                }
            }
        }
        out
    }

    /// True if `x` is a generator of the extended double (or an idempotent
    /// of the quiver).
    pub fn has_symbol(&self, x: &Sym) -> bool {
        if x.kind == Kind::Idempotent {
            return x.target >= 1 && x.target <= self.n;
        }
        let Some(c) = self.colors.get(x.color as usize) else {
            return false;
        };
        let inside = c.vertices.contains(&x.target) && c.vertices.contains(&x.source);
        match x.kind {
            Kind::V => inside && c.joined(x.target, x.source),
            Kind::W => inside && x.target != x.source,
            Kind::Gamma | Kind::GammaInv => inside && x.target == x.source,
            Kind::Idempotent => unreachable!(),
        }
    }

    /// Checks that every symbol of a set belongs to the extended double.
    pub fn check_symbols<'a>(
        &self,
        syms: impl IntoIterator<Item = &'a Sym>,
    ) -> Result<(), QuiverError> {
        for x in syms {
            if !self.has_symbol(x) {
                return Err(QuiverError::UnknownSymbol(ncalg::render::sym_name(
                    x,
                    &self.names(),
                )));
            }
        }
        Ok(())
    }
}

/// Validates a colored quiver; the empty list means valid.
pub fn validate(q: &ColoredQuiver) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |kind, message: String| out.push(Violation { kind, message });
    if q.n == 0 {
        push(
            ViolationKind::NoVertices,
            "the quiver has no vertices".into(),
        );
    }
    let mut seen_ids = BTreeSet::new();
    for c in &q.colors {
        if !seen_ids.insert(c.id.clone()) {
            push(
                ViolationKind::DuplicateColor,
                format!("color '{}' is declared twice", c.id),
            );
        }
        let mut vs = BTreeSet::new();
        for &v in &c.vertices {
            if v == 0 || v > q.n {
                push(
                    ViolationKind::VertexOutOfRange,
                    format!("color '{}': vertex {v} not in 1..{}", c.id, q.n),
                );
            }
            if !vs.insert(v) {
                push(
                    ViolationKind::DuplicateVertex,
                    format!("color '{}': vertex {v} listed twice", c.id),
                );
            }
        }
        let mut covered = BTreeSet::new();
        for (pi, p) in c.partition.iter().enumerate() {
            if p.is_empty() {
                push(
                    ViolationKind::EmptyPart,
                    format!("color '{}': part {pi} is empty", c.id),
                );
            }
            for &v in p {
                if !covered.insert(v) {
                    push(
                        ViolationKind::OverlappingParts,
                        format!("color '{}': vertex {v} lies in more than one part", c.id),
                    );
                }
            }
        }
        if covered != vs {
            push(
                ViolationKind::PartitionMismatch,
                format!(
                    "color '{}': the parts do not cover exactly the color's vertices",
                    c.id
                ),
            );
        }
        let po = c.effective_part_order();
        let mut sorted = po.clone();
        sorted.sort_unstable();
        if sorted != (0..c.partition.len()).collect::<Vec<_>>() {
            push(
                ViolationKind::BadPartOrder,
                format!(
                    "color '{}': part order {:?} is not a permutation of the parts",
                    c.id, po
                ),
            );
        }
    }
    if let Some(edges) = &q.edges {
        let mut seen: BTreeMap<(String, u32, u32), usize> = BTreeMap::new();
        for e in edges {
            let [a, b] = e.vertices;
            let Some(c) = q.colors.iter().find(|c| c.id == e.color) else {
                push(
                    ViolationKind::UnknownEdgeColor,
                    format!("edge {a}-{b} has unknown color '{}'", e.color),
                );
                continue;
            };
            if a == b {
                push(
                    ViolationKind::LoopEdge,
                    format!("color '{}': edge {a}-{b} is a loop", c.id),
                );
                continue;
            }
            if !c.vertices.contains(&a) || !c.vertices.contains(&b) {
                push(
                    ViolationKind::EdgeOutsideColor,
                    format!(
                        "color '{}': edge {a}-{b} leaves the color's vertex set",
                        c.id
                    ),
                );
                continue;
            }
            if !c.joined(a, b) {
                push(
                    ViolationKind::SamePartEdge,
                    format!(
                        "color '{}': edge {a}-{b} joins two vertices of the same part",
                        c.id
                    ),
                );
            }
            *seen.entry((c.id.clone(), a.min(b), a.max(b))).or_default() += 1;
        }
        for ((id, a, b), k) in &seen {
            if *k > 1 {
                push(
                    ViolationKind::DuplicateEdge,
                    format!("color '{id}': edge {a}-{b} declared {k} times"),
                );
            }
        }
        for c in &q.colors {
            let order = c.order();
            for (x, &i) in order.iter().enumerate() {
                for &j in &order[x + 1..] {
                    if c.joined(i, j) && !seen.contains_key(&(c.id.clone(), i.min(j), i.max(j))) {
                        push(
                            ViolationKind::MissingEdge,
                            format!("color '{}': vertices {i} and {j} are in different parts but not joined", c.id),
                        );
                    }
                }
            }
        }
    }
    out
}

/// The arrows of the double quiver: every original arrow and its opposite.
pub fn double_quiver(q: &ColoredQuiver) -> Result<Vec<Sym>, QuiverError> {
    q.ensure_valid()?;
    let mut out: Vec<Sym> = Vec::new();
    for a in q.arrows() {
        out.push(a);
        out.push(Sym::v(a.color, a.source, a.target));
    }
    out.sort();
    Ok(out)
}

/// The generators of the extended double: arrows of the double, auxiliary
/// arrows `w` between all distinct same-color vertices, loops and inverse
/// loops.
pub fn extended_double(q: &ColoredQuiver) -> Result<Vec<Sym>, QuiverError> {
    let mut out = double_quiver(q)?;
    for (ci, c) in q.colors.iter().enumerate() {
        let ci = ci as u16;
        for &i in &c.vertices {
            for &j in &c.vertices {
                if i != j {
                    out.push(Sym::w(ci, i, j));
                }
            }
            out.push(Sym::gamma(ci, i));
            out.push(Sym::gamma_inv(ci, i));
        }
    }
    out.sort();
    Ok(out)
}

/// A valid single-color quiver with singleton parts on `1..=n` (the complete
/// graph with its natural order).
pub fn complete(n: u32) -> ColoredQuiver {
    ColoredQuiver {
        n,
        colors: vec![ColorClass::new("c", (1..=n).map(|i| vec![i]).collect())],
        edges: None,
    }
}

/// The interval: two vertices, one arrow `2 -> 1`.
pub fn interval() -> ColoredQuiver {
    complete(2)
}

/// The monochromatic triangle with partition `{1} ⊔ {2} ⊔ {3}`.
pub fn triangle() -> ColoredQuiver {
    complete(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_valid_and_has_three_arrows() {
        let t = triangle();
        assert!(validate(&t).is_empty());
        assert_eq!(
            t.arrows(),
            vec![Sym::v(0, 1, 2), Sym::v(0, 1, 3), Sym::v(0, 2, 3)]
        );
    }

    #[test]
    fn same_part_edge_is_reported() {
        let mut q = ColoredQuiver {
            n: 3,
            colors: vec![ColorClass::new("c", vec![vec![1], vec![2, 3]])],
            edges: None,
        };
        q.edges = Some(vec![
            Edge {
                color: "c".into(),
                vertices: [1, 2],
            },
            Edge {
                color: "c".into(),
                vertices: [1, 3],
            },
            Edge {
                color: "c".into(),
                vertices: [2, 3],
            },
        ]);
        let v = validate(&q);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::SamePartEdge);
        assert_eq!(v[0].kind.as_str(), "same-part edge");
    }

    #[test]
    fn missing_and_duplicate_edges_are_reported() {
        let mut q = interval();
        q.edges = Some(vec![]);
        assert_eq!(validate(&q)[0].kind, ViolationKind::MissingEdge);
        q.edges = Some(vec![
            Edge {
                color: "c".into(),
                vertices: [1, 2],
            },
            Edge {
                color: "c".into(),
                vertices: [2, 1],
            },
        ]);
        assert_eq!(validate(&q)[0].kind, ViolationKind::DuplicateEdge);
    }

    #[test]
    fn broken_partitions_are_reported() {
        let q = ColoredQuiver {
            n: 2,
            colors: vec![ColorClass {
                id: "c".into(),
                vertices: vec![1, 2],
                partition: vec![vec![1], vec![]],
                part_order: vec![0, 0],
            }],
            edges: None,
        };
        let kinds: Vec<_> = validate(&q).into_iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::EmptyPart));
        assert!(kinds.contains(&ViolationKind::PartitionMismatch));
        assert!(kinds.contains(&ViolationKind::BadPartOrder));
    }

    #[test]
    fn part_order_changes_the_total_order() {
        let c = ColorClass {
            id: "c".into(),
            vertices: vec![1, 2, 3],
            partition: vec![vec![3], vec![1, 2]],
            part_order: vec![1, 0],
        };
        assert_eq!(c.order(), vec![1, 2, 3]);
        assert!(!c.joined(1, 2));
        assert!(c.joined(2, 3));
    }

    #[test]
    fn symbol_membership() {
        let t = triangle();
        assert!(t.has_symbol(&Sym::v(0, 3, 1)));
        assert!(t.has_symbol(&Sym::gamma_inv(0, 2)));
        assert!(!t.has_symbol(&Sym::v(1, 3, 1)));
        assert!(!t.has_symbol(&Sym::w(0, 4, 1)));
    }
}
