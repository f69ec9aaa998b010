//! The correspondence morphism induced by a quiver morphism.
//!
//! A quiver morphism `m: E → F` pulls functions back along its two maps:
//! `μ⁰(f) = f ∘ m⁰` on vertex functions and `μ¹(ξ) = ξ ∘ m¹` on edge
//! functions. The pair `(μ¹, μ⁰)` goes from `(X_F, A_F)` to `(X_E, A_E)`.
//!
//! [`CorrMorphism::check_covariance`] verifies the four conditions on basis
//! elements:
//!
//! * **C1** `μ¹(f·ξ) = μ⁰(f)·μ¹(ξ)`
//! * **C2** `μ⁰⟨ξ, η⟩ = ⟨μ¹ξ, μ¹η⟩`
//! * **C3** `μ⁰(J_F) ⊆ J_E`
//! * **C4** `φ_E(μ⁰(f)) = (μ¹)⁽¹⁾(φ_F(f))` for `f ∈ J_F`
//!
//! C4 is decided twice: through the pointwise identity `μ¹(f∘s_F) = μ⁰(f)∘s_E`
//! and through the operator identity itself. The two routes must agree.

use std::fmt;

use serde::Serialize;

use crate::correspondence::{
    EdgeVector, FiberBlockOperator, IdMap, QuiverCorrespondence, RankOnePair, VertexFunction,
};
use crate::error::Error;
use crate::linalg::Matrix;
use crate::morphism::{A2Failure, QuiverMorphism};
use crate::quiver::FiniteQuiver;
use crate::scalar::ScalarQ;

/// Where an identity first failed, with both sides of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The basis inputs, e.g. `f=δ_u, ξ=δ_ℓ`.
    pub inputs: String,
    /// The vertex or edge of the domain quiver at which the sides differ.
    pub at: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<IdMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<IdMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail { witness: Witness },
    Undefined { reason: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.inputs, self.at)?;
        if let Some(lhs) = &self.lhs {
            write!(f, "; lhs = {lhs}")?;
        }
        if let Some(rhs) = &self.rhs {
            write!(f, "; rhs = {rhs}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail { witness } => write!(f, "fail ({witness})"),
            Verdict::Undefined { reason } => write!(f, "undefined ({reason})"),
        }
    }
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CovarianceReport {
    pub c1: Verdict,
    pub c2: Verdict,
    pub c3: Verdict,
    pub c4: Verdict,
    pub c4_reduction: Verdict,
    pub c4_operator: Verdict,
}

impl CovarianceReport {
    /// C1 and C2: the pair is a correspondence morphism.
    pub fn is_correspondence_morphism(&self) -> bool {
        self.c1.passed() && self.c2.passed()
    }

    pub fn is_covariant(&self) -> bool {
        self.is_correspondence_morphism() && self.c3.passed() && self.c4.passed()
    }

    /// `None` when the operator route is undefined.
    pub fn c4_routes_agree(&self) -> Option<bool> {
        match self.c4_operator {
            Verdict::Undefined { .. } => None,
            _ => Some(self.c4_reduction.passed() == self.c4_operator.passed()),
        }
    }
}

/// `(μ¹, μ⁰)` for a quiver morphism `m: E → F`.
#[derive(Debug, Clone)]
pub struct CorrMorphism {
    m: QuiverMorphism,
    a2_failure: Option<A2Failure>,
}

impl CorrMorphism {
    /// Pulls back along `m`. Regularity is not required; only the squares are.
    pub fn build(m: QuiverMorphism) -> Result<Self, Error> {
        let report = m.check_regular()?;
        Ok(CorrMorphism {
            a2_failure: report.a2_failures.into_iter().next(),
            m,
        })
    }

    pub fn morphism(&self) -> &QuiverMorphism {
        &self.m
    }

    fn dom(&self) -> &FiniteQuiver {
        self.m.dom()
    }

    fn cod(&self) -> &FiniteQuiver {
        self.m.cod()
    }

    /// `f ↦ f ∘ m⁰`, from `A_F` to `A_E`.
    pub fn mu0(&self, f: &VertexFunction) -> Result<VertexFunction, Error> {
        f.check_over(self.cod())?;
        Ok(VertexFunction::from_values(
            self.m
                .vmap_slice()
                .iter()
                .map(|&w| f.get(w).clone())
                .collect(),
        ))
    }

    /// `ξ ↦ ξ ∘ m¹`, from `X_F` to `X_E`.
    pub fn mu1(&self, xi: &EdgeVector) -> Result<EdgeVector, Error> {
        xi.check_over(self.cod())?;
        Ok(EdgeVector::from_values(
            self.m
                .emap_slice()
                .iter()
                .map(|&x| xi.get(x).clone())
                .collect(),
        ))
    }

    /// Matrix of `μ⁰`: rows indexed by vertices of `E`, columns by vertices of `F`.
    pub fn mu0_matrix(&self) -> Matrix {
        pullback_matrix(self.m.vmap_slice(), self.cod().num_vertices())
    }

    /// Matrix of `μ¹`: rows indexed by edges of `E`, columns by edges of `F`.
    pub fn mu1_matrix(&self) -> Matrix {
        pullback_matrix(self.m.emap_slice(), self.cod().num_edges())
    }

    fn require_a2(&self) -> Result<(), Error> {
        match &self.a2_failure {
            None => Ok(()),
            Some(f) => Err(Error::NotRegular(format!("(μ¹)⁽¹⁾ is undefined: {f}"))),
        }
    }

    /// `Σ θ_{μ¹ξᵢ, μ¹ηᵢ}` for a rank-one sum `Σ θ_{ξᵢ,ηᵢ}` over `F`.
    pub fn push_rank_one_sum(&self, pairs: &[RankOnePair]) -> Result<FiberBlockOperator, Error> {
        self.require_a2()?;
        let pushed = pairs
            .iter()
            .map(|(xi, eta)| Ok((self.mu1(xi)?, self.mu1(eta)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        QuiverCorrespondence::new(self.dom()).sum_theta(&pushed)
    }

    /// `(μ¹)⁽¹⁾(T)`, computed through the matrix-unit decomposition of `T`.
    pub fn mu1_super(&self, t: &FiberBlockOperator) -> Result<FiberBlockOperator, Error> {
        self.require_a2()?;
        let pairs = QuiverCorrespondence::new(self.cod()).rank_one_decompose(t)?;
        self.push_rank_one_sum(&pairs)
    }

    /// Checks `(μ¹)⁽¹⁾(σ_F(g)) = σ_E(μ¹(g))`.
    pub fn c4lemma_check(&self, g: &EdgeVector) -> Result<bool, Error> {
        let lhs = self.mu1_super(&QuiverCorrespondence::new(self.cod()).sigma(g)?)?;
        let rhs = QuiverCorrespondence::new(self.dom()).sigma(&self.mu1(g)?)?;
        Ok(lhs == rhs)
    }

    /// Checks `‖μ¹ξ‖² ≤ ‖ξ‖²` exactly.
    pub fn contraction_check(&self, xi: &EdgeVector) -> Result<bool, Error> {
        let pulled = QuiverCorrespondence::new(self.dom()).norm_sqr(&self.mu1(xi)?)?;
        let original = QuiverCorrespondence::new(self.cod()).norm_sqr(xi)?;
        Ok(pulled <= original)
    }

    pub fn check_covariance(&self) -> Result<CovarianceReport, Error> {
        let c1 = self.check_c1()?;
        let c2 = self.check_c2()?;
        let c3 = self.check_c3()?;
        let c4_reduction = self.check_c4_reduction()?;
        let c4_operator = self.check_c4_operator()?;
        let c4 = match (&c4_reduction, &c4_operator) {
            (Verdict::Pass, Verdict::Pass) => Verdict::Pass,
            (Verdict::Pass, other) => other.clone(),
            (failed, _) => failed.clone(),
        };
        Ok(CovarianceReport {
            c1,
            c2,
            c3,
            c4,
            c4_reduction,
            c4_operator,
        })
    }

    fn edge_mismatch(&self, inputs: String, lhs: &EdgeVector, rhs: &EdgeVector) -> Verdict {
        match (0..lhs.len()).find(|&e| lhs.get(e) != rhs.get(e)) {
            None => Verdict::Pass,
            Some(e) => Verdict::Fail {
                witness: Witness {
                    inputs,
                    at: self.dom().edge_id(e).to_owned(),
                    lhs: Some(lhs.labelled(self.dom())),
                    rhs: Some(rhs.labelled(self.dom())),
                },
            },
        }
    }

    fn check_c1(&self) -> Result<Verdict, Error> {
        let (cod, dom) = (self.cod(), self.dom());
        let (xf, xe) = (
            QuiverCorrespondence::new(cod),
            QuiverCorrespondence::new(dom),
        );
        for w in 0..cod.num_vertices() {
            let f = VertexFunction::delta(cod.num_vertices(), w);
            for x in 0..cod.num_edges() {
                let xi = EdgeVector::delta(cod.num_edges(), x);
                let lhs = self.mu1(&xf.left_action(&f, &xi)?)?;
                let rhs = xe.left_action(&self.mu0(&f)?, &self.mu1(&xi)?)?;
                let inputs = format!("f=δ_{}, ξ=δ_{}", cod.vertex_id(w), cod.edge_id(x));
                let verdict = self.edge_mismatch(inputs, &lhs, &rhs);
                if !verdict.passed() {
                    return Ok(verdict);
                }
            }
        }
        Ok(Verdict::Pass)
    }

    fn check_c2(&self) -> Result<Verdict, Error> {
        let (cod, dom) = (self.cod(), self.dom());
        let (xf, xe) = (
            QuiverCorrespondence::new(cod),
            QuiverCorrespondence::new(dom),
        );
        let n = cod.num_edges();
        for x in 0..n {
            for y in 0..n {
                let (dx, dy) = (EdgeVector::delta(n, x), EdgeVector::delta(n, y));
                let lhs = self.mu0(&xf.inner_product(&dx, &dy)?)?;
                let rhs = xe.inner_product(&self.mu1(&dx)?, &self.mu1(&dy)?)?;
                if let Some(v) = (0..dom.num_vertices()).find(|&v| lhs.get(v) != rhs.get(v)) {
                    return Ok(Verdict::Fail {
                        witness: Witness {
                            inputs: format!("ξ=δ_{}, η=δ_{}", cod.edge_id(x), cod.edge_id(y)),
                            at: dom.vertex_id(v).to_owned(),
                            lhs: Some(lhs.labelled(dom)),
                            rhs: Some(rhs.labelled(dom)),
                        },
                    });
                }
            }
        }
        Ok(Verdict::Pass)
    }

    fn check_c3(&self) -> Result<Verdict, Error> {
        let (cod, dom) = (self.cod(), self.dom());
        let dom_ideal = QuiverCorrespondence::new(dom).ideal_jx();
        for w in QuiverCorrespondence::new(cod).ideal_jx() {
            let pulled = self.mu0(&VertexFunction::delta(cod.num_vertices(), w))?;
            let outside = (0..dom.num_vertices())
                .find(|v| !dom_ideal.contains(v) && !pulled.get(*v).is_zero());
            if let Some(v) = outside {
                return Ok(Verdict::Fail {
                    witness: Witness {
                        inputs: format!("f=δ_{}", cod.vertex_id(w)),
                        at: dom.vertex_id(v).to_owned(),
                        lhs: Some(pulled.labelled(dom)),
                        rhs: None,
                    },
                });
            }
        }
        Ok(Verdict::Pass)
    }

    /// `μ¹(f ∘ s_F) = μ⁰(f) ∘ s_E` for `f = δ_w`, `w` regular in `F`.
    fn check_c4_reduction(&self) -> Result<Verdict, Error> {
        let (cod, dom) = (self.cod(), self.dom());
        let (xf, xe) = (
            QuiverCorrespondence::new(cod),
            QuiverCorrespondence::new(dom),
        );
        for w in xf.ideal_jx() {
            let f = VertexFunction::delta(cod.num_vertices(), w);
            let lhs = self.mu1(&xf.compose_with_src(&f))?;
            let rhs = xe.compose_with_src(&self.mu0(&f)?);
            let verdict = self.edge_mismatch(format!("f=δ_{}", cod.vertex_id(w)), &lhs, &rhs);
            if !verdict.passed() {
                return Ok(verdict);
            }
        }
        Ok(Verdict::Pass)
    }

    /// `φ_E(μ⁰(f)) = (μ¹)⁽¹⁾(φ_F(f))` for `f = δ_w`, `w` regular in `F`.
    fn check_c4_operator(&self) -> Result<Verdict, Error> {
        if let Some(f) = &self.a2_failure {
            return Ok(Verdict::Undefined {
                reason: format!("(μ¹)⁽¹⁾ is undefined: {f}"),
            });
        }
        let (cod, dom) = (self.cod(), self.dom());
        let (xf, xe) = (
            QuiverCorrespondence::new(cod),
            QuiverCorrespondence::new(dom),
        );
        for w in xf.ideal_jx() {
            let f = VertexFunction::delta(cod.num_vertices(), w);
            let lhs = xe.phi(&self.mu0(&f)?)?;
            let rhs = self.mu1_super(&xf.phi(&f)?)?;
            if lhs != rhs {
                let v = (0..dom.num_vertices())
                    .find(|&v| lhs.block(v) != rhs.block(v))
                    .expect("unequal operators differ in some block");
                return Ok(Verdict::Fail {
                    witness: Witness {
                        inputs: format!("f=δ_{}", cod.vertex_id(w)),
                        at: dom.vertex_id(v).to_owned(),
                        lhs: None,
                        rhs: None,
                    },
                });
            }
        }
        Ok(Verdict::Pass)
    }
}

fn pullback_matrix(map: &[usize], cols: usize) -> Matrix {
    Matrix::from_fn(map.len(), cols, |i, j| {
        if map[i] == j {
            ScalarQ::one()
        } else {
            ScalarQ::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::{rational, QuiverData};
    use std::sync::Arc;

    fn delta_e(q: &FiniteQuiver, id: &str) -> EdgeVector {
        QuiverCorrespondence::new(q).edge_delta(id).unwrap()
    }

    fn delta_v(q: &FiniteQuiver, id: &str) -> VertexFunction {
        QuiverCorrespondence::new(q).vertex_delta(id).unwrap()
    }

    #[test]
    fn pullbacks_of_indicators() {
        let cm = CorrMorphism::build(fixtures::m_collapse()).unwrap();
        let dom = fixtures::q_2cyc();
        let loop_q = fixtures::q_loop();
        assert_eq!(
            cm.mu1(&delta_e(&loop_q, "ℓ")).unwrap(),
            delta_e(&dom, "e1").add(&delta_e(&dom, "e2"))
        );
        assert_eq!(
            cm.mu0(&delta_v(&loop_q, "u")).unwrap(),
            delta_v(&dom, "a").add(&delta_v(&dom, "b"))
        );

        let cm = CorrMorphism::build(fixtures::m_bad_a3()).unwrap();
        assert_eq!(
            cm.mu0(&delta_v(&loop_q, "u")).unwrap(),
            VertexFunction::constant(2, ScalarQ::one())
        );

        let q = fixtures::q_4cyc();
        let cm = CorrMorphism::build(QuiverMorphism::identity(q.clone())).unwrap();
        assert_eq!(cm.mu0_matrix(), Matrix::identity(4));
        assert_eq!(cm.mu1_matrix(), Matrix::identity(4));

        let swap = QuiverMorphism::new(
            fixtures::q_2cyc(),
            fixtures::q_2cyc(),
            vec![0, 1],
            vec![1, 0],
        )
        .unwrap();
        assert!(CorrMorphism::build(swap).is_err());
    }

    #[test]
    fn mu1_super_on_fixtures() {
        let q = fixtures::q_2cyc();
        let id = CorrMorphism::build(QuiverMorphism::identity(q.clone())).unwrap();
        let x = QuiverCorrespondence::new(&q);
        let t = x
            .theta(&delta_e(&q, "e1"), &delta_e(&q, "e1").scale(&ScalarQ::i()))
            .unwrap();
        assert_eq!(id.mu1_super(&t).unwrap(), t);

        let cm = CorrMorphism::build(fixtures::m_collapse()).unwrap();
        let loop_q = fixtures::q_loop();
        assert_eq!(
            cm.mu1_super(&FiberBlockOperator::identity(&loop_q))
                .unwrap(),
            FiberBlockOperator::identity(&q)
        );
        assert!(cm
            .mu1_super(&FiberBlockOperator::zero(&loop_q))
            .unwrap()
            .is_zero());

        let bad = CorrMorphism::build(fixtures::m_bad_a2()).unwrap();
        assert!(matches!(
            bad.mu1_super(&FiberBlockOperator::identity(&loop_q)),
            Err(Error::NotRegular(_))
        ));
    }

    #[test]
    fn covariance_of_fixtures() {
        let r = CorrMorphism::build(fixtures::m_collapse())
            .unwrap()
            .check_covariance()
            .unwrap();
        assert!(r.is_covariant());
        assert_eq!(r.c4_routes_agree(), Some(true));

        for q in [fixtures::q_loop(), fixtures::e_bad(), fixtures::q_4cyc()] {
            let r = CorrMorphism::build(QuiverMorphism::identity(q))
                .unwrap()
                .check_covariance()
                .unwrap();
            assert!(r.is_covariant());
        }

        let r = CorrMorphism::build(fixtures::m_bad_a3())
            .unwrap()
            .check_covariance()
            .unwrap();
        assert!(r.is_correspondence_morphism());
        let w = r.c3.witness().expect("C3 fails");
        assert_eq!(w.inputs, "f=δ_u");
        assert_eq!(w.at, "b");
        assert_eq!(r.c4_routes_agree(), Some(true));
    }

    #[test]
    fn c2_fails_where_a2_fails() {
        let r = CorrMorphism::build(fixtures::m_bad_a2())
            .unwrap()
            .check_covariance()
            .unwrap();
        assert!(r.c1.passed());
        let w = r.c2.witness().expect("C2 fails");
        assert_eq!(w.at, "a");
        assert!(matches!(r.c4_operator, Verdict::Undefined { .. }));
        assert!(!r.c4.passed());
    }

    #[test]
    fn c2_only_sees_the_measure_half_of_a2() {
        // two half-weight loops onto a unit loop: not injective, but the
        // pushforward still equals λ, so C2 holds
        let dom = Arc::new(
            FiniteQuiver::new(
                QuiverData::with_vertices(["a"])
                    .edge("x", "a", "a", rational(1, 2))
                    .edge("y", "a", "a", rational(1, 2)),
            )
            .unwrap(),
        );
        let m = QuiverMorphism::new(dom, fixtures::q_loop(), vec![0], vec![0, 0]).unwrap();
        assert!(!m.check_regular().unwrap().a2_holds());
        let cm = CorrMorphism::build(m).unwrap();
        let r = cm.check_covariance().unwrap();
        assert!(r.c1.passed() && r.c2.passed());
        assert!(matches!(r.c4_operator, Verdict::Undefined { .. }));
    }

    #[test]
    fn c4_lemma_on_fixtures() {
        let cm = CorrMorphism::build(fixtures::m_collapse()).unwrap();
        assert!(cm
            .c4lemma_check(&delta_e(&fixtures::q_loop(), "ℓ"))
            .unwrap());

        let q = fixtures::e_bad();
        let id = CorrMorphism::build(QuiverMorphism::identity(q.clone())).unwrap();
        let g = EdgeVector::from_values(vec![ScalarQ::ratio(2, 3), ScalarQ::i()]);
        assert!(id.c4lemma_check(&g).unwrap());

        let cm = CorrMorphism::build(fixtures::m_mod2()).unwrap();
        let g = delta_e(&fixtures::q_2cyc(), "e1");
        assert!(cm.c4lemma_check(&g).unwrap());
        let dom = fixtures::q_4cyc();
        let expected = QuiverCorrespondence::new(&dom)
            .sigma(&delta_e(&dom, "f0").add(&delta_e(&dom, "f2")))
            .unwrap();
        assert_eq!(
            cm.mu1_super(
                &QuiverCorrespondence::new(&fixtures::q_2cyc())
                    .sigma(&g)
                    .unwrap()
            )
            .unwrap(),
            expected
        );
    }

    #[test]
    fn contraction_on_fixtures() {
        let cm = CorrMorphism::build(fixtures::m_collapse()).unwrap();
        assert!(cm
            .contraction_check(&delta_e(&fixtures::q_loop(), "ℓ"))
            .unwrap());
        assert!(cm.contraction_check(&EdgeVector::zeros(1)).unwrap());

        let cm = CorrMorphism::build(fixtures::m_mod2()).unwrap();
        let q = fixtures::q_2cyc();
        assert!(cm
            .contraction_check(&delta_e(&q, "e1").add(&delta_e(&q, "e2")))
            .unwrap());
    }
}
