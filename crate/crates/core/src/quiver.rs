//! Finite-discrete topological quivers.
//!
//! A quiver here is a finite vertex set, a finite edge set, source and range
//! maps, and a family of measures `λ = {λ^v}` on the range fibers. In the
//! discrete setting a measure supported on `r⁻¹(v)` is a positive weight on
//! each edge of that fiber, so the whole family is stored as one weight per
//! edge: `weight(e) = λ^{r(e)}({e})`.
//!
//! Vertex classification follows the usual definitions specialised to finite
//! discrete spaces: every vertex is finite-emitting, sinks are vertices that
//! emit no edge, and the regular vertices are exactly the non-sinks.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::rational_string;

/// One edge record of a quiver description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeData {
    pub id: String,
    pub src: String,
    pub rng: String,
    #[serde(with = "rational_string")]
    pub weight: BigRational,
}

/// Unvalidated quiver description, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuiverData {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeData>,
}

impl QuiverData {
    pub fn with_vertices<I, S>(vertices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        QuiverData {
            vertices: vertices.into_iter().map(Into::into).collect(),
            edges: Vec::new(),
        }
    }

    /// Appends an edge `id: src → rng` carrying `weight`.
    pub fn edge(mut self, id: &str, src: &str, rng: &str, weight: BigRational) -> Self {
        self.edges.push(EdgeData {
            id: id.into(),
            src: src.into(),
            rng: rng.into(),
            weight,
        });
        self
    }
}

/// `p/q` as a rational. Panics if `q == 0`.
pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    DuplicateVertex { vertex: String },
    DuplicateEdge { edge: String },
    DanglingSrc { edge: String, vertex: String },
    DanglingRng { edge: String, vertex: String },
    NonPositiveWeight { edge: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex { vertex } => write!(f, "duplicate vertex {vertex}"),
            Violation::DuplicateEdge { edge } => write!(f, "duplicate edge {edge}"),
            Violation::DanglingSrc { edge, vertex } => {
                write!(f, "dangling src {edge} (no vertex {vertex})")
            }
            Violation::DanglingRng { edge, vertex } => {
                write!(f, "dangling rng {edge} (no vertex {vertex})")
            }
            Violation::NonPositiveWeight { edge } => write!(f, "non-positive weight {edge}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural invariant of a quiver description.
///
/// Never fails; each broken invariant becomes one entry of the report, in
/// vertex-list then edge-list order.
pub fn validate(data: &QuiverData) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for v in &data.vertices {
        if !seen.insert(v.as_str()) {
            violations.push(Violation::DuplicateVertex { vertex: v.clone() });
        }
    }
    let mut seen_edges = HashSet::new();
    for e in &data.edges {
        if !seen_edges.insert(e.id.as_str()) {
            violations.push(Violation::DuplicateEdge { edge: e.id.clone() });
        }
        if !seen.contains(e.src.as_str()) {
            violations.push(Violation::DanglingSrc {
                edge: e.id.clone(),
                vertex: e.src.clone(),
            });
        }
        if !seen.contains(e.rng.as_str()) {
            violations.push(Violation::DanglingRng {
                edge: e.id.clone(),
                vertex: e.rng.clone(),
            });
        }
        if !e.weight.is_positive() {
            violations.push(Violation::NonPositiveWeight { edge: e.id.clone() });
        }
    }
    ValidationReport { violations }
}

/// The vertex sets `E⁰_sink`, `E⁰_fin`, `E⁰_reg`, `E⁰_sing`, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub sinks: Vec<String>,
    pub fin: Vec<String>,
    pub reg: Vec<String>,
    pub sing: Vec<String>,
}

/// A validated finite quiver with index-based adjacency.
///
/// Vertices and edges are addressed by their position in the description;
/// the string ids are kept for reporting and serialization.
#[derive(Debug, Clone)]
pub struct FiniteQuiver {
    data: QuiverData,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    src: Vec<usize>,
    rng: Vec<usize>,
    in_fibers: Vec<Vec<usize>>,
    out_fibers: Vec<Vec<usize>>,
}

impl PartialEq for FiniteQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl Eq for FiniteQuiver {}

impl FiniteQuiver {
    pub fn new(data: QuiverData) -> Result<Self, Error> {
        let report = validate(&data);
        if let Some(first) = report.violations.first() {
            return Err(Error::InvalidQuiver(first.to_string()));
        }
        let vertex_index: HashMap<_, _> = data
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let edge_index = data
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        let src: Vec<usize> = data.edges.iter().map(|e| vertex_index[&e.src]).collect();
        let rng: Vec<usize> = data.edges.iter().map(|e| vertex_index[&e.rng]).collect();
        let mut in_fibers = vec![Vec::new(); data.vertices.len()];
        let mut out_fibers = vec![Vec::new(); data.vertices.len()];
        for (e, (&s, &r)) in src.iter().zip(&rng).enumerate() {
            in_fibers[r].push(e);
            out_fibers[s].push(e);
        }
        Ok(FiniteQuiver {
            data,
            vertex_index,
            edge_index,
            src,
            rng,
            in_fibers,
            out_fibers,
        })
    }

    pub fn data(&self) -> &QuiverData {
        &self.data
    }

    pub fn num_vertices(&self) -> usize {
        self.data.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.data.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.data.vertices[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.data.edges[e].id
    }

    pub fn vertex(&self, id: &str) -> Result<usize, Error> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.into()))
    }

    pub fn edge(&self, id: &str) -> Result<usize, Error> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.into()))
    }

    pub fn src(&self, e: usize) -> usize {
        self.src[e]
    }

    pub fn rng(&self, e: usize) -> usize {
        self.rng[e]
    }

    pub fn weight(&self, e: usize) -> &BigRational {
        &self.data.edges[e].weight
    }

    /// Edges with range `v`, in edge-list order.
    pub fn in_fiber_of(&self, v: usize) -> &[usize] {
        &self.in_fibers[v]
    }

    /// Edges with source `v`, in edge-list order.
    pub fn out_fiber_of(&self, v: usize) -> &[usize] {
        &self.out_fibers[v]
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_fibers[v].is_empty()
    }

    /// Every vertex of a finite discrete quiver is finite-emitting.
    pub fn is_fin(&self, _v: usize) -> bool {
        true
    }

    pub fn is_regular(&self, v: usize) -> bool {
        self.is_fin(v) && !self.is_sink(v)
    }

    /// `r⁻¹(v)` paired with the weights of `λ^v`.
    pub fn in_fiber(&self, v: &str) -> Result<Vec<(&str, &BigRational)>, Error> {
        let v = self.vertex(v)?;
        Ok(self.in_fibers[v]
            .iter()
            .map(|&e| (self.edge_id(e), self.weight(e)))
            .collect())
    }

    pub fn classify(&self) -> VertexClassification {
        let pick = |pred: &dyn Fn(usize) -> bool| {
            (0..self.num_vertices())
                .filter(|&v| pred(v))
                .map(|v| self.vertex_id(v).to_owned())
                .collect::<Vec<_>>()
        };
        // the closure of a set is the set itself in a discrete space
        VertexClassification {
            sinks: pick(&|v| self.is_sink(v)),
            fin: pick(&|v| self.is_fin(v)),
            reg: pick(&|v| self.is_fin(v) && !self.is_sink(v)),
            sing: pick(&|v| !self.is_regular(v)),
        }
    }

    /// True iff every weight is 1, i.e. `λ` is the family of counting measures.
    pub fn is_counting(&self) -> bool {
        use num_traits::One;
        self.data.edges.iter().all(|e| e.weight.is_one())
    }
}
