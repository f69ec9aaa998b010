//! The quiver correspondence `(X_E, A_E)`.
//!
//! `A_E` is the algebra of functions on the vertices and `X_E` the space of
//! functions on the edges. The right Hilbert `A_E`-module structure is
//!
//! ```text
//! (ξ·f)(e)   = ξ(e) f(r(e))
//! (f·ξ)(e)   = f(s(e)) ξ(e)
//! ⟨ξ, η⟩(v)  = Σ_{r(e) = v} conj(ξ(e)) η(e) weight(e)
//! ```
//!
//! An `A_E`-linear operator on `X_E` cannot mix edges with different ranges,
//! so it is a block-diagonal matrix with one block per range fiber. In finite
//! dimensions every such operator is adjointable and compact; the adjoint is
//! taken with respect to the weighted inner product of each fiber.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::Error;
use crate::linalg::Matrix;
use crate::quiver::FiniteQuiver;
use crate::scalar::{rational_to_f64, ScalarQ};

macro_rules! function_space {
    ($(#[$doc:meta])* $name:ident, $what:literal) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, Debug)]
        pub struct $name(Vec<ScalarQ>);

        impl $name {
            pub fn from_values(values: Vec<ScalarQ>) -> Self {
                $name(values)
            }

            pub fn zeros(len: usize) -> Self {
                $name(vec![ScalarQ::zero(); len])
            }

            pub fn constant(len: usize, c: ScalarQ) -> Self {
                $name(vec![c; len])
            }

            /// Indicator function of position `i`.
            pub fn delta(len: usize, i: usize) -> Self {
                let mut v = Self::zeros(len);
                v.0[i] = ScalarQ::one();
                v
            }

            pub fn values(&self) -> &[ScalarQ] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn get(&self, i: usize) -> &ScalarQ {
                &self.0[i]
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(ScalarQ::is_zero)
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn scale(&self, c: &ScalarQ) -> Self {
                $name(self.0.iter().map(|a| c * a).collect())
            }

            /// Pointwise product.
            pub fn mul(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
            }

            pub fn conj(&self) -> Self {
                $name(self.0.iter().map(ScalarQ::conj).collect())
            }

            /// Pairs each value with its id in `q`, for serialization.
            pub fn labelled(&self, q: &FiniteQuiver) -> IdMap {
                IdMap(
                    self.0
                        .iter()
                        .enumerate()
                        .map(|(i, x)| (Self::id_in(q, i).to_owned(), x.clone()))
                        .collect(),
                )
            }

            fn check(&self, expected: usize) -> Result<(), Error> {
                if self.0.len() != expected {
                    return Err(Error::DimensionMismatch(format!(
                        "{} with {} entries over a quiver with {} {}",
                        stringify!($name),
                        self.0.len(),
                        expected,
                        $what
                    )));
                }
                Ok(())
            }
        }
    };
}

function_space!(
    /// An element of `A_E`: a function on the vertex set.
    VertexFunction,
    "vertices"
);
function_space!(
    /// An element of `X_E`: a function on the edge set.
    EdgeVector,
    "edges"
);

impl VertexFunction {
    fn id_in(q: &FiniteQuiver, i: usize) -> &str {
        q.vertex_id(i)
    }

    pub fn check_over(&self, q: &FiniteQuiver) -> Result<(), Error> {
        self.check(q.num_vertices())
    }
}

impl EdgeVector {
    fn id_in(q: &FiniteQuiver, i: usize) -> &str {
        q.edge_id(i)
    }

    pub fn check_over(&self, q: &FiniteQuiver) -> Result<(), Error> {
        self.check(q.num_edges())
    }
}

/// An ordered `{id: value}` map; serializes as a JSON object in the given order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdMap(pub Vec<(String, ScalarQ)>);

impl Serialize for IdMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl fmt::Display for IdMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<String> = self
            .0
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| format!("{k}: {v}"))
            .collect();
        write!(f, "{{{}}}", nonzero.join(", "))
    }
}

/// An `A_E`-linear operator on `X_E`, stored as one square block per vertex.
///
/// Block `v` is indexed by the in-fiber `r⁻¹(v)` in edge-list order; vertices
/// receiving no edge carry an empty block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberBlockOperator {
    blocks: Vec<Matrix>,
}

impl FiberBlockOperator {
    pub fn zero(q: &FiniteQuiver) -> Self {
        FiberBlockOperator {
            blocks: (0..q.num_vertices())
                .map(|v| {
                    let n = q.in_fiber_of(v).len();
                    Matrix::zeros(n, n)
                })
                .collect(),
        }
    }

    pub fn identity(q: &FiniteQuiver) -> Self {
        FiberBlockOperator {
            blocks: (0..q.num_vertices())
                .map(|v| Matrix::identity(q.in_fiber_of(v).len()))
                .collect(),
        }
    }

    /// Builds an operator from explicit blocks, checking them against the fibers of `q`.
    pub fn from_blocks(q: &FiniteQuiver, blocks: Vec<Matrix>) -> Result<Self, Error> {
        if blocks.len() != q.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for {} vertices",
                blocks.len(),
                q.num_vertices()
            )));
        }
        for (v, b) in blocks.iter().enumerate() {
            let n = q.in_fiber_of(v).len();
            if b.rows() != n || b.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "block at {} is {}x{}, fiber has {n} edges",
                    q.vertex_id(v),
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(FiberBlockOperator { blocks })
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Matrix, &Matrix) -> Result<Matrix, Error>,
    ) -> Result<Self, Error> {
        if self.blocks.len() != other.blocks.len() {
            return Err(Error::DimensionMismatch(format!(
                "operators over {} and {} vertices",
                self.blocks.len(),
                other.blocks.len()
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_, _>>()?;
        Ok(FiberBlockOperator { blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, Matrix::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, Matrix::sub)
    }

    /// Operator composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, Matrix::mul)
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        FiberBlockOperator {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    /// All block entries in vertex-major order.
    pub fn flatten(&self) -> Vec<ScalarQ> {
        self.blocks
            .iter()
            .flat_map(|b| {
                (0..b.rows()).flat_map(move |i| (0..b.cols()).map(move |j| b.get(i, j).clone()))
            })
            .collect()
    }
}

/// A rank-one term `θ_{ξ,η}` of a decomposition.
pub type RankOnePair = (EdgeVector, EdgeVector);

/// The correspondence `(X_E, A_E)` of a quiver.
#[derive(Clone, Copy, Debug)]
pub struct QuiverCorrespondence<'q> {
    q: &'q FiniteQuiver,
}

impl<'q> QuiverCorrespondence<'q> {
    pub fn new(q: &'q FiniteQuiver) -> Self {
        QuiverCorrespondence { q }
    }

    pub fn quiver(&self) -> &'q FiniteQuiver {
        self.q
    }

    fn weight(&self, e: usize) -> ScalarQ {
        ScalarQ::from_rational(self.q.weight(e).clone())
    }

    pub fn vertex_delta(&self, v: &str) -> Result<VertexFunction, Error> {
        Ok(VertexFunction::delta(
            self.q.num_vertices(),
            self.q.vertex(v)?,
        ))
    }

    pub fn edge_delta(&self, e: &str) -> Result<EdgeVector, Error> {
        Ok(EdgeVector::delta(self.q.num_edges(), self.q.edge(e)?))
    }

    pub fn unit(&self) -> VertexFunction {
        VertexFunction::constant(self.q.num_vertices(), ScalarQ::one())
    }

    fn check_op(&self, t: &FiberBlockOperator) -> Result<(), Error> {
        FiberBlockOperator::from_blocks(self.q, t.blocks.clone()).map(|_| ())
    }

    /// `⟨ξ, η⟩(v) = Σ_{r(e)=v} conj(ξ(e)) η(e) weight(e)`.
    pub fn inner_product(
        &self,
        xi: &EdgeVector,
        eta: &EdgeVector,
    ) -> Result<VertexFunction, Error> {
        xi.check_over(self.q)?;
        eta.check_over(self.q)?;
        Ok(VertexFunction::from_values(
            (0..self.q.num_vertices())
                .map(|v| {
                    self.q
                        .in_fiber_of(v)
                        .iter()
                        .map(|&e| xi.get(e).conj() * eta.get(e) * self.weight(e))
                        .sum()
                })
                .collect(),
        ))
    }

    /// `(f·ξ)(e) = f(s(e)) ξ(e)`.
    pub fn left_action(&self, f: &VertexFunction, xi: &EdgeVector) -> Result<EdgeVector, Error> {
        f.check_over(self.q)?;
        xi.check_over(self.q)?;
        Ok(EdgeVector::from_values(
            (0..self.q.num_edges())
                .map(|e| f.get(self.q.src(e)) * xi.get(e))
                .collect(),
        ))
    }

    /// `(ξ·f)(e) = ξ(e) f(r(e))`.
    pub fn right_action(&self, xi: &EdgeVector, f: &VertexFunction) -> Result<EdgeVector, Error> {
        f.check_over(self.q)?;
        xi.check_over(self.q)?;
        Ok(EdgeVector::from_values(
            (0..self.q.num_edges())
                .map(|e| xi.get(e) * f.get(self.q.rng(e)))
                .collect(),
        ))
    }

    /// Both module actions of `f` on `ξ`: `(f·ξ, ξ·f)`.
    pub fn module_actions(
        &self,
        f: &VertexFunction,
        xi: &EdgeVector,
    ) -> Result<(EdgeVector, EdgeVector), Error> {
        Ok((self.left_action(f, xi)?, self.right_action(xi, f)?))
    }

    /// `‖ξ‖² = max_v ⟨ξ, ξ⟩(v)`, exact.
    pub fn norm_sqr(&self, xi: &EdgeVector) -> Result<BigRational, Error> {
        let ip = self.inner_product(xi, xi)?;
        Ok(ip
            .values()
            .iter()
            .map(|x| x.re().clone())
            .max()
            .unwrap_or_else(BigRational::zero))
    }

    /// `‖ξ‖`, rounded; for reporting only.
    pub fn norm(&self, xi: &EdgeVector) -> Result<f64, Error> {
        Ok(rational_to_f64(&self.norm_sqr(xi)?).sqrt())
    }

    /// `θ_{ξ,η}(ζ) = ξ · ⟨η, ζ⟩`.
    pub fn theta(&self, xi: &EdgeVector, eta: &EdgeVector) -> Result<FiberBlockOperator, Error> {
        xi.check_over(self.q)?;
        eta.check_over(self.q)?;
        let blocks = (0..self.q.num_vertices())
            .map(|v| {
                let fiber = self.q.in_fiber_of(v);
                Matrix::from_fn(fiber.len(), fiber.len(), |i, j| {
                    let (x, y) = (fiber[i], fiber[j]);
                    xi.get(x) * &eta.get(y).conj() * self.weight(y)
                })
            })
            .collect();
        Ok(FiberBlockOperator { blocks })
    }

    /// `Σ θ_{ξᵢ,ηᵢ}`.
    pub fn sum_theta(&self, pairs: &[RankOnePair]) -> Result<FiberBlockOperator, Error> {
        pairs
            .iter()
            .try_fold(FiberBlockOperator::zero(self.q), |acc, (xi, eta)| {
                acc.add(&self.theta(xi, eta)?)
            })
    }

    pub fn apply(&self, t: &FiberBlockOperator, xi: &EdgeVector) -> Result<EdgeVector, Error> {
        self.check_op(t)?;
        xi.check_over(self.q)?;
        let mut out = EdgeVector::zeros(self.q.num_edges());
        for v in 0..self.q.num_vertices() {
            let fiber = self.q.in_fiber_of(v);
            let local: Vec<ScalarQ> = fiber.iter().map(|&e| xi.get(e).clone()).collect();
            for (i, value) in t.blocks[v].mul_vec(&local)?.into_iter().enumerate() {
                out.0[fiber[i]] = value;
            }
        }
        Ok(out)
    }

    /// Adjoint for the weighted inner product: block `W⁻¹ M^† W`.
    pub fn adjoint(&self, t: &FiberBlockOperator) -> Result<FiberBlockOperator, Error> {
        self.check_op(t)?;
        let blocks = (0..self.q.num_vertices())
            .map(|v| {
                let fiber = self.q.in_fiber_of(v);
                let m = &t.blocks[v];
                Matrix::from_fn(fiber.len(), fiber.len(), |i, j| {
                    let wi = self.weight(fiber[i]);
                    let wj = self.weight(fiber[j]);
                    wi.inv().expect("weights are positive") * m.get(j, i).conj() * wj
                })
            })
            .collect();
        Ok(FiberBlockOperator { blocks })
    }

    /// Multiplication operator by an edge function: `(σ(g)ξ)(e) = g(e) ξ(e)`.
    pub fn sigma(&self, g: &EdgeVector) -> Result<FiberBlockOperator, Error> {
        g.check_over(self.q)?;
        let blocks = (0..self.q.num_vertices())
            .map(|v| {
                let fiber = self.q.in_fiber_of(v);
                Matrix::from_fn(fiber.len(), fiber.len(), |i, j| {
                    if i == j {
                        g.get(fiber[i]).clone()
                    } else {
                        ScalarQ::zero()
                    }
                })
            })
            .collect();
        Ok(FiberBlockOperator { blocks })
    }

    /// Left action as an operator: `φ(f) = σ(f ∘ s)`.
    pub fn phi(&self, f: &VertexFunction) -> Result<FiberBlockOperator, Error> {
        f.check_over(self.q)?;
        self.sigma(&self.compose_with_src(f))
    }

    /// `f ∘ s` as an edge function.
    pub fn compose_with_src(&self, f: &VertexFunction) -> EdgeVector {
        EdgeVector::from_values(
            (0..self.q.num_edges())
                .map(|e| f.get(self.q.src(e)).clone())
                .collect(),
        )
    }

    /// Matrix-unit decomposition: one pair `(T[x,y]·δ_x, weight(y)⁻¹·δ_y)` per nonzero entry.
    pub fn rank_one_decompose(&self, t: &FiberBlockOperator) -> Result<Vec<RankOnePair>, Error> {
        self.check_op(t)?;
        let n = self.q.num_edges();
        let mut pairs = Vec::new();
        for v in 0..self.q.num_vertices() {
            let fiber = self.q.in_fiber_of(v);
            for (i, &x) in fiber.iter().enumerate() {
                for (j, &y) in fiber.iter().enumerate() {
                    let c = t.blocks[v].get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let w_inv = self.weight(y).inv().expect("weights are positive");
                    pairs.push((
                        EdgeVector::delta(n, x).scale(c),
                        EdgeVector::delta(n, y).scale(&w_inv),
                    ));
                }
            }
        }
        Ok(pairs)
    }

    /// Column-grouped decomposition: one pair `(Σ_x T[x,y]·δ_x, weight(y)⁻¹·δ_y)`
    /// per nonzero column `y`. Differs from [`Self::rank_one_decompose`] whenever
    /// a column has two nonzero entries.
    pub fn rank_one_decompose_by_columns(
        &self,
        t: &FiberBlockOperator,
    ) -> Result<Vec<RankOnePair>, Error> {
        self.check_op(t)?;
        let n = self.q.num_edges();
        let mut pairs = Vec::new();
        for v in 0..self.q.num_vertices() {
            let fiber = self.q.in_fiber_of(v);
            for (j, &y) in fiber.iter().enumerate() {
                let mut column = EdgeVector::zeros(n);
                for (i, &x) in fiber.iter().enumerate() {
                    column.0[x] = t.blocks[v].get(i, j).clone();
                }
                if column.is_zero() {
                    continue;
                }
                let w_inv = self.weight(y).inv().expect("weights are positive");
                pairs.push((column, EdgeVector::delta(n, y).scale(&w_inv)));
            }
        }
        Ok(pairs)
    }

    /// Indices of the vertices `v` with `δ_v ∈ J_X`. For a quiver
    /// correspondence this is the set of regular vertices.
    pub fn ideal_jx(&self) -> Vec<usize> {
        (0..self.q.num_vertices())
            .filter(|&v| self.q.is_regular(v))
            .collect()
    }

    /// `J_X` recomputed from its definition: `δ_v` acts by a compact operator
    /// (automatic here) and annihilates a basis of `ker φ`, which is found by
    /// Gaussian elimination on the matrix of `f ↦ φ(f)`.
    pub fn ideal_jx_by_kernel(&self) -> Result<Vec<usize>, Error> {
        let nv = self.q.num_vertices();
        let columns = (0..nv)
            .map(|v| Ok(self.phi(&VertexFunction::delta(nv, v))?.flatten()))
            .collect::<Result<Vec<_>, Error>>()?;
        let rows = columns.first().map_or(0, Vec::len);
        let phi_matrix = Matrix::from_fn(rows, nv, |i, j| columns[j][i].clone());
        let kernel: Vec<VertexFunction> = phi_matrix
            .nullspace()
            .into_iter()
            .map(VertexFunction::from_values)
            .collect();
        Ok((0..nv)
            .filter(|&v| {
                let dv = VertexFunction::delta(nv, v);
                kernel.iter().all(|b| dv.mul(b).is_zero())
            })
            .collect())
    }

    pub fn ideal_jx_ids(&self) -> Vec<String> {
        self.ideal_jx()
            .into_iter()
            .map(|v| self.q.vertex_id(v).to_owned())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::{rational, QuiverData};

    fn s(n: i64) -> ScalarQ {
        ScalarQ::from_int(n)
    }

    #[test]
    fn inner_products_on_fixtures() {
        let q = fixtures::q_wloop();
        let x = QuiverCorrespondence::new(&q);
        let l = x.edge_delta("ℓ").unwrap();
        assert_eq!(x.inner_product(&l, &l).unwrap().values(), &[s(2)]);

        let q = fixtures::q_loop();
        let x = QuiverCorrespondence::new(&q);
        let l = x.edge_delta("ℓ").unwrap();
        assert_eq!(x.inner_product(&l, &l).unwrap().values(), &[s(1)]);

        let q = fixtures::q_2cyc();
        let x = QuiverCorrespondence::new(&q);
        let (e1, e2) = (x.edge_delta("e1").unwrap(), x.edge_delta("e2").unwrap());
        assert!(x.inner_product(&e1, &e2).unwrap().is_zero());
        assert!(x.inner_product(&e1, &EdgeVector::zeros(5)).is_err());
    }

    #[test]
    fn module_actions_on_fixtures() {
        let q = fixtures::q_edge();
        let x = QuiverCorrespondence::new(&q);
        let (left, right) = x
            .module_actions(&x.vertex_delta("a").unwrap(), &x.edge_delta("e").unwrap())
            .unwrap();
        assert_eq!(left, x.edge_delta("e").unwrap());
        assert!(right.is_zero());

        let xi = EdgeVector::from_values(vec![ScalarQ::ratio(1, 3) + ScalarQ::i()]);
        let (left, right) = x.module_actions(&x.unit(), &xi).unwrap();
        assert_eq!((&left, &right), (&xi, &xi));

        let q = fixtures::q_loop();
        let x = QuiverCorrespondence::new(&q);
        let f = x.vertex_delta("u").unwrap().scale(&s(3));
        let l = x.edge_delta("ℓ").unwrap();
        let (left, right) = x.module_actions(&f, &l).unwrap();
        assert_eq!(left, l.scale(&s(3)));
        assert_eq!(right, l.scale(&s(3)));
    }

    #[test]
    fn norms() {
        let q = fixtures::q_wloop();
        let x = QuiverCorrespondence::new(&q);
        let l = x.edge_delta("ℓ").unwrap();
        assert_eq!(x.norm_sqr(&l).unwrap(), rational(2, 1));
        assert!((x.norm(&l).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(x.norm(&EdgeVector::zeros(1)).unwrap(), 0.0);

        let q = fixtures::q_2cyc();
        let x = QuiverCorrespondence::new(&q);
        let both = x
            .edge_delta("e1")
            .unwrap()
            .add(&x.edge_delta("e2").unwrap());
        assert_eq!(x.norm(&both).unwrap(), 1.0);
    }

    #[test]
    fn theta_blocks() {
        let q = fixtures::q_loop();
        let x = QuiverCorrespondence::new(&q);
        let l = x.edge_delta("ℓ").unwrap();
        assert_eq!(x.theta(&l, &l).unwrap().block(0), &Matrix::identity(1));

        let q = fixtures::q_wloop();
        let x = QuiverCorrespondence::new(&q);
        let l = x.edge_delta("ℓ").unwrap();
        assert_eq!(x.theta(&l, &l).unwrap().block(0).get(0, 0), &s(2));
        assert!(x.theta(&EdgeVector::zeros(1), &l).unwrap().is_zero());
    }

    #[test]
    fn phi_and_sigma() {
        let q = fixtures::q_edge();
        let x = QuiverCorrespondence::new(&q);
        let op = x.phi(&x.vertex_delta("a").unwrap()).unwrap();
        assert_eq!(op.block(q.vertex("b").unwrap()), &Matrix::identity(1));
        assert_eq!(op.block(q.vertex("a").unwrap()).rows(), 0);
        assert!(x.phi(&VertexFunction::zeros(2)).unwrap().is_zero());

        let q = fixtures::q_4cyc();
        let x = QuiverCorrespondence::new(&q);
        assert_eq!(
            x.sigma(&EdgeVector::constant(4, s(1))).unwrap(),
            FiberBlockOperator::identity(&q)
        );
    }

    #[test]
    fn operator_identities() {
        let q = FiniteQuiver::new(
            QuiverData::with_vertices(["a", "b"])
                .edge("x", "a", "b", rational(1, 2))
                .edge("y", "b", "b", rational(3, 1))
                .edge("z", "a", "a", rational(2, 3)),
        )
        .unwrap();
        let x = QuiverCorrespondence::new(&q);
        let xi = EdgeVector::from_values(vec![s(1), ScalarQ::i(), s(2)]);
        let eta = EdgeVector::from_values(vec![ScalarQ::ratio(1, 2), s(-1), ScalarQ::i()]);
        let xi2 = EdgeVector::from_values(vec![s(3), s(1), ScalarQ::i()]);
        let eta2 = EdgeVector::from_values(vec![s(0), ScalarQ::ratio(2, 5), s(1)]);

        let t = x.theta(&xi, &eta).unwrap();
        assert_eq!(x.adjoint(&t).unwrap(), x.theta(&eta, &xi).unwrap());
        assert_eq!(x.adjoint(&x.adjoint(&t).unwrap()).unwrap(), t);

        // θ_{ξ,η} θ_{ξ',η'} = θ_{ξ·⟨η,ξ'⟩, η'}
        let lhs = t.compose(&x.theta(&xi2, &eta2).unwrap()).unwrap();
        let shifted = x
            .right_action(&xi, &x.inner_product(&eta, &xi2).unwrap())
            .unwrap();
        assert_eq!(lhs, x.theta(&shifted, &eta2).unwrap());

        // θ acts as ξ·⟨η, ζ⟩
        let applied = x.apply(&t, &xi2).unwrap();
        let expected = x
            .right_action(&xi, &x.inner_product(&eta, &xi2).unwrap())
            .unwrap();
        assert_eq!(applied, expected);
    }

    #[test]
    fn rank_one_decompositions() {
        let q = fixtures::q_wloop();
        let x = QuiverCorrespondence::new(&q);
        let pairs = x
            .rank_one_decompose(&FiberBlockOperator::identity(&q))
            .unwrap();
        let l = x.edge_delta("ℓ").unwrap();
        assert_eq!(pairs, vec![(l.clone(), l.scale(&ScalarQ::ratio(1, 2)))]);
        assert!(x
            .rank_one_decompose(&FiberBlockOperator::zero(&q))
            .unwrap()
            .is_empty());

        let q = fixtures::q_loop();
        let x = QuiverCorrespondence::new(&q);
        let l = x.edge_delta("ℓ").unwrap();
        let pairs = x
            .rank_one_decompose(&x.phi(&x.vertex_delta("u").unwrap()).unwrap())
            .unwrap();
        assert_eq!(pairs, vec![(l.clone(), l)]);
    }

    #[test]
    fn ideal_on_fixtures() {
        for (q, expected) in [
            (fixtures::q_loop(), vec!["u"]),
            (fixtures::q_edge(), vec!["a"]),
            (fixtures::e_bad(), vec!["a"]),
        ] {
            let x = QuiverCorrespondence::new(&q);
            assert_eq!(x.ideal_jx_ids(), expected);
            assert_eq!(x.ideal_jx_by_kernel().unwrap(), x.ideal_jx());
        }
        let q = FiniteQuiver::new(QuiverData::with_vertices(["p", "q"])).unwrap();
        let x = QuiverCorrespondence::new(&q);
        assert!(x.ideal_jx().is_empty());
        assert!(x.ideal_jx_by_kernel().unwrap().is_empty());
    }

    #[test]
    fn labelled_output() {
        let q = fixtures::q_2cyc();
        let x = QuiverCorrespondence::new(&q);
        let v = x.edge_delta("e2").unwrap().scale(&ScalarQ::ratio(-1, 2));
        assert_eq!(v.labelled(&q).to_string(), "{e2: -1/2}");
    }
}
