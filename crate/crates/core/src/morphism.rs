//! Quiver morphisms, the regularity conditions and composition.
//!
//! A morphism `m = (m¹, m⁰)` maps edges to edges and vertices to vertices so
//! that both the source and range squares commute. It is *regular* when
//!
//! * **A1** both maps are proper (automatic between finite discrete spaces);
//! * **A2** on every range fiber `r⁻¹(v)` the edge map is injective and pushes
//!   `λ^v` forward onto `λ^{m⁰(v)}`;
//! * **A3** every vertex over a regular vertex is itself regular.
//!
//! With positive weights, A2 means that `m¹` restricts to a weight-preserving
//! bijection `r⁻¹(v) → r⁻¹(m⁰(v))`. The check reports the three halves of that
//! statement separately so every failure comes with a concrete witness.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::correspondence::EdgeVector;
use crate::error::Error;
use crate::quiver::{FiniteQuiver, QuiverData};
use crate::scalar::ScalarQ;

/// A pair of maps between two quivers; the squares are not enforced on
/// construction, see [`QuiverMorphism::check_morphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMorphism {
    dom: Arc<FiniteQuiver>,
    cod: Arc<FiniteQuiver>,
    vmap: Vec<usize>,
    emap: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Square {
    Src,
    Rng,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareFailure {
    pub edge: String,
    pub square: Square,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    pub failures: Vec<SquareFailure>,
}

impl fmt::Display for SquareFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (map, name) = match self.square {
            Square::Src => ("s", "source"),
            Square::Rng => ("r", "range"),
        };
        write!(
            f,
            "{name} square fails at {}: {map}(m¹(e)) ≠ m⁰({map}(e))",
            self.edge
        )
    }
}

impl SquareReport {
    pub fn is_morphism(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum A2Reason {
    /// Two fiber edges land on the same target edge.
    FiberNotInjective {
        edges: (String, String),
        target: String,
    },
    /// A target-fiber edge is hit by no edge of the fiber.
    NotOntoTargetFiber { target: String },
    /// A fiber edge and its image carry different weights.
    WeightMismatch { edge: String, target: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A2Failure {
    pub vertex: String,
    #[serde(flatten)]
    pub reason: A2Reason,
}

impl fmt::Display for A2Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.vertex;
        match &self.reason {
            A2Reason::FiberNotInjective { edges, target } => write!(
                f,
                "A2 at {v}: fiber not injective, {} and {} both map to {target}",
                edges.0, edges.1
            ),
            A2Reason::NotOntoTargetFiber { target } => {
                write!(f, "A2 at {v}: {target} in the target fiber has no preimage")
            }
            A2Reason::WeightMismatch { edge, target } => {
                write!(
                    f,
                    "A2 at {v}: weight of {edge} differs from weight of {target}"
                )
            }
        }
    }
}

/// Evidence for the regularity conditions, per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub a1: &'static str,
    pub a2_failures: Vec<A2Failure>,
    pub a3_failures: Vec<String>,
}

pub const A1_NOTE: &str = "pass: every map between finite discrete spaces is proper";

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.a2_failures.is_empty() && self.a3_failures.is_empty()
    }

    pub fn a2_holds(&self) -> bool {
        self.a2_failures.is_empty()
    }

    pub fn a3_holds(&self) -> bool {
        self.a3_failures.is_empty()
    }
}

/// Self-contained serialized form: both quivers inline, maps keyed by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismData {
    pub dom: QuiverData,
    pub cod: QuiverData,
    pub vmap: BTreeMap<String, String>,
    pub emap: BTreeMap<String, String>,
}

impl MorphismData {
    pub fn build(&self) -> Result<QuiverMorphism, Error> {
        let dom = Arc::new(FiniteQuiver::new(self.dom.clone())?);
        let cod = Arc::new(FiniteQuiver::new(self.cod.clone())?);
        QuiverMorphism::from_maps(dom, cod, &self.vmap, &self.emap)
    }
}

impl QuiverMorphism {
    /// Builds a morphism from index maps; checks only totality and ranges.
    pub fn new(
        dom: Arc<FiniteQuiver>,
        cod: Arc<FiniteQuiver>,
        vmap: Vec<usize>,
        emap: Vec<usize>,
    ) -> Result<Self, Error> {
        if vmap.len() != dom.num_vertices() || emap.len() != dom.num_edges() {
            return Err(Error::NotTotal(format!(
                "expected {} vertex and {} edge images, got {} and {}",
                dom.num_vertices(),
                dom.num_edges(),
                vmap.len(),
                emap.len()
            )));
        }
        if let Some(&w) = vmap.iter().find(|&&w| w >= cod.num_vertices()) {
            return Err(Error::UnknownVertex(format!("index {w} in codomain")));
        }
        if let Some(&x) = emap.iter().find(|&&x| x >= cod.num_edges()) {
            return Err(Error::UnknownEdge(format!("index {x} in codomain")));
        }
        Ok(QuiverMorphism {
            dom,
            cod,
            vmap,
            emap,
        })
    }

    /// Builds a morphism from id-keyed maps, rejecting missing or unknown keys.
    pub fn from_maps(
        dom: Arc<FiniteQuiver>,
        cod: Arc<FiniteQuiver>,
        vmap: &BTreeMap<String, String>,
        emap: &BTreeMap<String, String>,
    ) -> Result<Self, Error> {
        for k in vmap.keys() {
            dom.vertex(k)?;
        }
        for k in emap.keys() {
            dom.edge(k)?;
        }
        let vmap = (0..dom.num_vertices())
            .map(|v| {
                let id = dom.vertex_id(v);
                let target = vmap
                    .get(id)
                    .ok_or_else(|| Error::NotTotal(format!("vertex {id} has no image")))?;
                cod.vertex(target)
            })
            .collect::<Result<_, _>>()?;
        let emap = (0..dom.num_edges())
            .map(|e| {
                let id = dom.edge_id(e);
                let target = emap
                    .get(id)
                    .ok_or_else(|| Error::NotTotal(format!("edge {id} has no image")))?;
                cod.edge(target)
            })
            .collect::<Result<_, _>>()?;
        Self::new(dom, cod, vmap, emap)
    }

    pub fn identity(q: Arc<FiniteQuiver>) -> Self {
        let vmap = (0..q.num_vertices()).collect();
        let emap = (0..q.num_edges()).collect();
        QuiverMorphism {
            dom: q.clone(),
            cod: q,
            vmap,
            emap,
        }
    }

    pub fn to_data(&self) -> MorphismData {
        MorphismData {
            dom: self.dom.data().clone(),
            cod: self.cod.data().clone(),
            vmap: self.vmap_ids(),
            emap: self.emap_ids(),
        }
    }

    pub fn dom(&self) -> &Arc<FiniteQuiver> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteQuiver> {
        &self.cod
    }

    pub fn vmap(&self, v: usize) -> usize {
        self.vmap[v]
    }

    pub fn emap(&self, e: usize) -> usize {
        self.emap[e]
    }

    pub fn vmap_slice(&self) -> &[usize] {
        &self.vmap
    }

    pub fn emap_slice(&self) -> &[usize] {
        &self.emap
    }

    pub fn vmap_ids(&self) -> BTreeMap<String, String> {
        (0..self.vmap.len())
            .map(|v| {
                (
                    self.dom.vertex_id(v).to_owned(),
                    self.cod.vertex_id(self.vmap[v]).to_owned(),
                )
            })
            .collect()
    }

    pub fn emap_ids(&self) -> BTreeMap<String, String> {
        (0..self.emap.len())
            .map(|e| {
                (
                    self.dom.edge_id(e).to_owned(),
                    self.cod.edge_id(self.emap[e]).to_owned(),
                )
            })
            .collect()
    }

    /// Lists every edge at which the source or range square fails to commute.
    pub fn check_morphism(&self) -> SquareReport {
        let mut failures = Vec::new();
        for e in 0..self.dom.num_edges() {
            let x = self.emap[e];
            let edge = self.dom.edge_id(e).to_owned();
            if self.vmap[self.dom.src(e)] != self.cod.src(x) {
                failures.push(SquareFailure {
                    edge: edge.clone(),
                    square: Square::Src,
                });
            }
            if self.vmap[self.dom.rng(e)] != self.cod.rng(x) {
                failures.push(SquareFailure {
                    edge,
                    square: Square::Rng,
                });
            }
        }
        SquareReport { failures }
    }

    fn require_morphism(&self) -> Result<(), Error> {
        match self.check_morphism().failures.first() {
            None => Ok(()),
            Some(f) => Err(Error::NotAMorphism(format!(
                "{:?} square fails at edge {}",
                f.square, f.edge
            ))),
        }
    }

    /// A2 witnesses at a single vertex, in fiber order.
    fn a2_failures_at(&self, v: usize) -> Vec<A2Failure> {
        let vertex = self.dom.vertex_id(v).to_owned();
        let fail = |reason| A2Failure {
            vertex: vertex.clone(),
            reason,
        };
        let mut out = Vec::new();
        let mut hit: BTreeMap<usize, usize> = BTreeMap::new();
        for &e in self.dom.in_fiber_of(v) {
            let x = self.emap[e];
            if let Some(&prev) = hit.get(&x) {
                out.push(fail(A2Reason::FiberNotInjective {
                    edges: (self.dom.edge_id(prev).into(), self.dom.edge_id(e).into()),
                    target: self.cod.edge_id(x).into(),
                }));
            } else {
                hit.insert(x, e);
            }
            if self.dom.weight(e) != self.cod.weight(x) {
                out.push(fail(A2Reason::WeightMismatch {
                    edge: self.dom.edge_id(e).into(),
                    target: self.cod.edge_id(x).into(),
                }));
            }
        }
        for &x in self.cod.in_fiber_of(self.vmap[v]) {
            if !hit.contains_key(&x) {
                out.push(fail(A2Reason::NotOntoTargetFiber {
                    target: self.cod.edge_id(x).into(),
                }));
            }
        }
        out
    }

    /// Checks A1–A3. Rejects maps that are not quiver morphisms.
    pub fn check_regular(&self) -> Result<RegularityReport, Error> {
        self.require_morphism()?;
        let a2_failures = (0..self.dom.num_vertices())
            .flat_map(|v| self.a2_failures_at(v))
            .collect();
        let a3_failures = (0..self.dom.num_vertices())
            .filter(|&v| self.cod.is_regular(self.vmap[v]) && !self.dom.is_regular(v))
            .map(|v| self.dom.vertex_id(v).to_owned())
            .collect();
        Ok(RegularityReport {
            a1: A1_NOTE,
            a2_failures,
            a3_failures,
        })
    }

    pub fn is_regular(&self) -> bool {
        self.check_regular().is_ok_and(|r| r.is_regular())
    }

    /// `m¹_*(λ^v)` as a map from codomain edge indices to weights; zero
    /// entries are omitted.
    pub fn pushforward_at(&self, v: usize) -> BTreeMap<usize, BigRational> {
        let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
        for &e in self.dom.in_fiber_of(v) {
            *out.entry(self.emap[e]).or_insert_with(BigRational::zero) += self.dom.weight(e);
        }
        out
    }

    /// `m¹_*(λ^v)` keyed by codomain edge id.
    pub fn pushforward(&self, v: &str) -> Result<BTreeMap<String, BigRational>, Error> {
        let v = self.dom.vertex(v)?;
        Ok(self
            .pushforward_at(v)
            .into_iter()
            .map(|(x, w)| (self.cod.edge_id(x).to_owned(), w))
            .collect())
    }

    /// `λ^w` as a map from edge indices to weights.
    pub fn fiber_measure(q: &FiniteQuiver, w: usize) -> BTreeMap<usize, BigRational> {
        q.in_fiber_of(w)
            .iter()
            .map(|&x| (x, q.weight(x).clone()))
            .collect()
    }

    /// `n ∘ m`: first `m`, then `n`. Requires `m.cod == n.dom`.
    pub fn compose(n: &QuiverMorphism, m: &QuiverMorphism) -> Result<QuiverMorphism, Error> {
        if m.cod != n.dom {
            return Err(Error::CompositionMismatch);
        }
        Ok(QuiverMorphism {
            dom: m.dom.clone(),
            cod: n.cod.clone(),
            vmap: m.vmap.iter().map(|&w| n.vmap[w]).collect(),
            emap: m.emap.iter().map(|&x| n.emap[x]).collect(),
        })
    }

    /// Both sides of `Σ_{x ∈ r⁻¹(m⁰v)} ξ(x) λ(x) = Σ_{e ∈ r⁻¹(v)} ξ(m¹e) λ(e)`,
    /// one pair per domain vertex.
    pub fn integral_sides(&self, xi: &EdgeVector) -> Result<Vec<(ScalarQ, ScalarQ)>, Error> {
        xi.check_over(&self.cod)?;
        let w = |q: &FiniteQuiver, e: usize| ScalarQ::from_rational(q.weight(e).clone());
        Ok((0..self.dom.num_vertices())
            .map(|v| {
                let target: ScalarQ = self
                    .cod
                    .in_fiber_of(self.vmap[v])
                    .iter()
                    .map(|&x| xi.get(x) * w(&self.cod, x))
                    .sum();
                let pulled: ScalarQ = self
                    .dom
                    .in_fiber_of(v)
                    .iter()
                    .map(|&e| xi.get(self.emap[e]) * w(&self.dom, e))
                    .sum();
                (target, pulled)
            })
            .collect())
    }

    pub fn integral_identity_check(&self, xi: &EdgeVector) -> Result<bool, Error> {
        Ok(self.integral_sides(xi)?.iter().all(|(a, b)| a == b))
    }
}
