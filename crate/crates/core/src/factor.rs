//! Factor maps between topological graphs: the counting-measure case.
//!
//! With every weight equal to 1 a finite quiver is a topological graph, and a
//! pair of maps is a regular factor map exactly when it is a regular quiver
//! morphism. [`check_factor_map`] checks the factor-map conditions directly
//! from their definitions so [`equivalence_check`] compares two independent
//! computations.

use serde::Serialize;

use crate::error::Error;
use crate::morphism::{QuiverMorphism, SquareFailure};
use crate::quiver::FiniteQuiver;

pub const COMPACTIFICATION_NOTE: &str =
    "one-point compactification clauses hold vacuously: finite discrete spaces, no edge maps to ∞";

pub fn is_counting(q: &FiniteQuiver) -> bool {
    q.is_counting()
}

/// An `(x, v)` pair with `r(x) = m⁰(v)` whose lift count is not exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F2Failure {
    pub edge: String,
    pub vertex: String,
    pub preimages: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorMapReport {
    pub f1: Vec<SquareFailure>,
    pub f2: Vec<F2Failure>,
    /// Vertices over a regular vertex that emit nothing.
    pub regular_factor: Vec<String>,
    pub notes: Vec<&'static str>,
}

impl FactorMapReport {
    pub fn f1_holds(&self) -> bool {
        self.f1.is_empty()
    }

    pub fn f2_holds(&self) -> bool {
        self.f2.is_empty()
    }

    pub fn regular_factor_holds(&self) -> bool {
        self.regular_factor.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.f1_holds() && self.f2_holds() && self.regular_factor_holds()
    }
}

fn require_counting(m: &QuiverMorphism) -> Result<(), Error> {
    for (side, q) in [("domain", m.dom()), ("codomain", m.cod())] {
        if !is_counting(q) {
            return Err(Error::NotCounting(format!(
                "{side} has a weight other than 1"
            )));
        }
    }
    Ok(())
}

pub fn check_factor_map(m: &QuiverMorphism) -> Result<FactorMapReport, Error> {
    require_counting(m)?;
    let (dom, cod) = (m.dom(), m.cod());
    let f1 = m.check_morphism().failures;

    let mut f2 = Vec::new();
    for x in 0..cod.num_edges() {
        for v in (0..dom.num_vertices()).filter(|&v| m.vmap(v) == cod.rng(x)) {
            let preimages = dom
                .in_fiber_of(v)
                .iter()
                .filter(|&&e| m.emap(e) == x)
                .count();
            if preimages != 1 {
                f2.push(F2Failure {
                    edge: cod.edge_id(x).to_string(),
                    vertex: dom.vertex_id(v).to_string(),
                    preimages,
                });
            }
        }
    }

    let regular_factor = (0..dom.num_vertices())
        .filter(|&v| cod.is_regular(m.vmap(v)) && dom.out_fiber_of(v).is_empty())
        .map(|v| dom.vertex_id(v).to_string())
        .collect();

    Ok(FactorMapReport {
        f1,
        f2,
        regular_factor,
        notes: vec![COMPACTIFICATION_NOTE],
    })
}

/// Whether the factor-map verdict agrees with the regular-morphism verdict.
/// `false` would mean a bug in one of the two checkers.
pub fn equivalence_check(m: &QuiverMorphism) -> Result<bool, Error> {
    let factor = check_factor_map(m)?;
    let regular = match m.check_regular() {
        Ok(report) => report.is_regular(),
        Err(Error::NotAMorphism(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(factor.all_pass() == regular)
}
