//! Generators and relations for the Cuntz–Pimsner algebra of a finite quiver,
//! and the homomorphism induced by a regular morphism.
//!
//! The algebra `O_E` is generated by projections `p_v = u_A(δ_v)` and
//! partial isometries `t_e = u_X(δ_e)` subject to
//!
//! ```text
//! R1  p_v p_w = [v = w] p_v,   p_v* = p_v
//! R2  t_e* t_f = [e = f] weight(e) p_{r(e)}
//! R3  p_v t_e = [v = s(e)] t_e
//! R4  t_e p_v = [v = r(e)] t_e
//! R5  p_v = Σ_{s(e) = v} weight(e)⁻¹ t_e t_e*        for every regular v
//! ```
//!
//! R2 is the inner product of two edge indicators and R5 is covariance at
//! `δ_v`, using `φ(δ_v) = Σ θ_{δ_e, weight(e)⁻¹ δ_e}`. With unit weights these
//! are the Cuntz–Krieger relations.
//!
//! Every relation, and the image of every relation under an induced map, is
//! a linear combination of words of length at most two. [`Fragment`] is an
//! exact normal-form engine for that span: R1–R4 are applied as rewrite rules
//! on products of basis elements, and equality is decided modulo the linear
//! span of the R5 vectors. The gauge action becomes the grading
//! `deg p = 0`, `deg t = 1`, `deg t* = −1`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::correspondence::{EdgeVector, VertexFunction};
use crate::corrmorphism::CorrMorphism;
use crate::error::Error;
use crate::linalg::{axpy, SparseSpan, SparseVec};
use crate::morphism::QuiverMorphism;
use crate::quiver::FiniteQuiver;
use crate::scalar::ScalarQ;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `p_v`
    P(usize),
    /// `t_e`
    T(usize),
}

/// A generator or its adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub star: bool,
}

impl Letter {
    pub fn p(v: usize) -> Self {
        Letter {
            gen: Generator::P(v),
            star: false,
        }
    }

    pub fn t(e: usize) -> Self {
        Letter {
            gen: Generator::T(e),
            star: false,
        }
    }

    pub fn adjoint(self) -> Self {
        Letter {
            star: !self.star,
            ..self
        }
    }
}

pub type Word = Vec<Letter>;

/// A formal linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub terms: Vec<(ScalarQ, Word)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(word: Word) -> Self {
        Polynomial {
            terms: vec![(ScalarQ::one(), word)],
        }
    }

    pub fn term(c: ScalarQ, word: Word) -> Self {
        Polynomial {
            terms: vec![(c, word)],
        }
    }

    pub fn push(&mut self, c: ScalarQ, word: Word) {
        self.terms.push((c, word));
    }
}

/// Basis of the degree-≤2 fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// `p_v`, degree 0
    P(usize),
    /// `t_e`, degree 1
    T(usize),
    /// `t_e*`, degree −1
    TStar(usize),
    /// `t_e t_f*` with `r(e) = r(f)`, degree 0
    TT(usize, usize),
}

impl Basis {
    pub fn degree(self) -> i32 {
        match self {
            Basis::P(_) | Basis::TT(..) => 0,
            Basis::T(_) => 1,
            Basis::TStar(_) => -1,
        }
    }

    fn adjoint(self) -> Basis {
        match self {
            Basis::P(v) => Basis::P(v),
            Basis::T(e) => Basis::TStar(e),
            Basis::TStar(e) => Basis::T(e),
            Basis::TT(e, f) => Basis::TT(f, e),
        }
    }

    fn as_word(self) -> Word {
        match self {
            Basis::P(v) => vec![Letter::p(v)],
            Basis::T(e) => vec![Letter::t(e)],
            Basis::TStar(e) => vec![Letter::t(e).adjoint()],
            Basis::TT(e, f) => vec![Letter::t(e), Letter::t(f).adjoint()],
        }
    }
}

/// An element of the degree-≤2 fragment in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Deg2Element(SparseVec<Basis>);

impl Deg2Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: Basis) -> Self {
        Self::term(ScalarQ::one(), b)
    }

    pub fn term(c: ScalarQ, b: Basis) -> Self {
        let mut v = SparseVec::new();
        if !c.is_zero() {
            v.insert(b, c);
        }
        Deg2Element(v)
    }

    pub fn coefficients(&self) -> &SparseVec<Basis> {
        &self.0
    }

    pub fn coefficient(&self, b: Basis) -> ScalarQ {
        self.0.get(&b).cloned().unwrap_or_else(ScalarQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        axpy(&mut out, &ScalarQ::one(), &other.0);
        Deg2Element(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        axpy(&mut out, &-ScalarQ::one(), &other.0);
        Deg2Element(out)
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        let mut out = SparseVec::new();
        axpy(&mut out, c, &self.0);
        Deg2Element(out)
    }

    pub fn adjoint(&self) -> Self {
        Deg2Element(
            self.0
                .iter()
                .map(|(b, c)| (b.adjoint(), c.conj()))
                .collect(),
        )
    }

    /// The element as a polynomial in the generators.
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial {
            terms: self
                .0
                .iter()
                .map(|(b, c)| (c.clone(), b.as_word()))
                .collect(),
        }
    }
}

/// Degree of an element under the gauge grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grading {
    /// The zero element, homogeneous of every degree.
    Zero,
    Degree(i32),
    Mixed,
}

pub fn grading(x: &Deg2Element) -> Grading {
    let mut degrees = x.0.keys().map(|b| b.degree());
    let Some(first) = degrees.next() else {
        return Grading::Zero;
    };
    if degrees.all(|d| d == first) {
        Grading::Degree(first)
    } else {
        Grading::Mixed
    }
}

fn gen_name(q: &FiniteQuiver, g: Generator) -> String {
    match g {
        Generator::P(_) if q.num_vertices() == 1 => "p".into(),
        Generator::T(_) if q.num_edges() == 1 => "t".into(),
        Generator::P(v) => format!("p_{}", q.vertex_id(v)),
        Generator::T(e) => format!("t_{}", q.edge_id(e)),
    }
}

fn write_coefficient(c: &ScalarQ, out: &mut String) {
    if c.is_one() {
        return;
    }
    if c.is_real() && c.re().is_integer() {
        out.push_str(&format!("{} ", c.re().numer()));
    } else if c.is_real() {
        out.push_str(&format!("({}/{}) ", c.re().numer(), c.re().denom()));
    } else {
        out.push_str(&format!("({c}) "));
    }
}

/// Human-readable polynomial over `q`, e.g. `(1/2) t_e t_e* + p_a`. A
/// generator is written without subscript when it is the only one of its kind.
pub fn format_polynomial(q: &FiniteQuiver, p: &Polynomial) -> String {
    if p.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, word)) in p.terms.iter().enumerate() {
        let negative = c.is_real() && c.re() < &num_rational::BigRational::from_integer(0.into());
        let c = if negative { -c } else { c.clone() };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        write_coefficient(&c, &mut out);
        let letters: Vec<String> = word
            .iter()
            .map(|l| {
                let name = gen_name(q, l.gen);
                if l.star {
                    format!("{name}*")
                } else {
                    name
                }
            })
            .collect();
        out.push_str(&letters.join(" "));
    }
    out
}

pub fn format_element(q: &FiniteQuiver, x: &Deg2Element) -> String {
    format_polynomial(q, &x.to_polynomial())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationKind {
    R1,
    R2,
    R3,
    R4,
    R5,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

/// Generators-and-relations presentation of `O_E`.
#[derive(Debug, Clone)]
pub struct Presentation {
    quiver: Arc<FiniteQuiver>,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn emit(q: Arc<FiniteQuiver>) -> Self {
        let nv = q.num_vertices();
        let ne = q.num_edges();
        let weight = |e: usize| ScalarQ::from_rational(q.weight(e).clone());
        let mut relations = Vec::new();
        let mut push = |kind, lhs, rhs| relations.push(Relation { kind, lhs, rhs });

        for v in 0..nv {
            for w in 0..nv {
                let rhs = if v == w {
                    Polynomial::word(vec![Letter::p(v)])
                } else {
                    Polynomial::zero()
                };
                push(
                    RelationKind::R1,
                    Polynomial::word(vec![Letter::p(v), Letter::p(w)]),
                    rhs,
                );
            }
            push(
                RelationKind::R1,
                Polynomial::word(vec![Letter::p(v).adjoint()]),
                Polynomial::word(vec![Letter::p(v)]),
            );
        }
        for e in 0..ne {
            for f in 0..ne {
                let rhs = if e == f {
                    Polynomial::term(weight(e), vec![Letter::p(q.rng(e))])
                } else {
                    Polynomial::zero()
                };
                push(
                    RelationKind::R2,
                    Polynomial::word(vec![Letter::t(e).adjoint(), Letter::t(f)]),
                    rhs,
                );
            }
        }
        for v in 0..nv {
            for e in 0..ne {
                let rhs = if q.src(e) == v {
                    Polynomial::word(vec![Letter::t(e)])
                } else {
                    Polynomial::zero()
                };
                push(
                    RelationKind::R3,
                    Polynomial::word(vec![Letter::p(v), Letter::t(e)]),
                    rhs,
                );
            }
        }
        for e in 0..ne {
            for v in 0..nv {
                let rhs = if q.rng(e) == v {
                    Polynomial::word(vec![Letter::t(e)])
                } else {
                    Polynomial::zero()
                };
                push(
                    RelationKind::R4,
                    Polynomial::word(vec![Letter::t(e), Letter::p(v)]),
                    rhs,
                );
            }
        }
        for v in (0..nv).filter(|&v| q.is_regular(v)) {
            let mut rhs = Polynomial::zero();
            for &e in q.out_fiber_of(v) {
                let c = weight(e).inv().expect("weights are positive");
                rhs.push(c, vec![Letter::t(e), Letter::t(e).adjoint()]);
            }
            push(RelationKind::R5, Polynomial::word(vec![Letter::p(v)]), rhs);
        }
        Presentation {
            quiver: q,
            relations,
        }
    }

    pub fn quiver(&self) -> &Arc<FiniteQuiver> {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn format_relation(&self, r: &Relation) -> String {
        format!(
            "{} = {}",
            format_polynomial(&self.quiver, &r.lhs),
            format_polynomial(&self.quiver, &r.rhs)
        )
    }

    /// One relation per line.
    pub fn lines(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| self.format_relation(r))
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Normal-form engine for the degree-≤2 fragment of `O_E`.
///
/// Immutable after construction; the R5 subspace is computed once.
#[derive(Debug, Clone)]
pub struct Fragment {
    quiver: Arc<FiniteQuiver>,
    covariance: SparseSpan<Basis>,
}

impl Fragment {
    pub fn new(quiver: Arc<FiniteQuiver>) -> Self {
        let mut covariance = SparseSpan::new();
        for v in (0..quiver.num_vertices()).filter(|&v| quiver.is_regular(v)) {
            covariance.insert(&Self::covariance_vector(&quiver, v).0);
        }
        Fragment { quiver, covariance }
    }

    /// `P_v − Σ_{s(e)=v} weight(e)⁻¹ TT_{e,e}`.
    fn covariance_vector(q: &FiniteQuiver, v: usize) -> Deg2Element {
        let mut x = Deg2Element::basis(Basis::P(v));
        for &e in q.out_fiber_of(v) {
            let c = ScalarQ::from_rational(q.weight(e).clone())
                .inv()
                .expect("weights are positive");
            x = x.sub(&Deg2Element::term(c, Basis::TT(e, e)));
        }
        x
    }

    pub fn quiver(&self) -> &Arc<FiniteQuiver> {
        &self.quiver
    }

    fn weight(&self, e: usize) -> ScalarQ {
        ScalarQ::from_rational(self.quiver.weight(e).clone())
    }

    fn escape(&self, a: Basis, b: Basis) -> Error {
        let q = &self.quiver;
        let word: Word = a.as_word().into_iter().chain(b.as_word()).collect();
        Error::OutsideFragment(format_polynomial(q, &Polynomial::word(word)))
    }

    /// Product of two basis elements; `None` is zero.
    fn multiply_basis(&self, a: Basis, b: Basis) -> Result<Option<(ScalarQ, Basis)>, Error> {
        use Basis::*;
        let q = &self.quiver;
        let one = ScalarQ::one;
        let keep = |cond: bool, c: ScalarQ, x: Basis| Ok(cond.then_some((c, x)));
        match (a, b) {
            (P(v), P(w)) => keep(v == w, one(), P(v)),
            (P(v), T(e)) => keep(v == q.src(e), one(), T(e)),
            (P(v), TStar(e)) => keep(v == q.rng(e), one(), TStar(e)),
            (P(v), TT(e, f)) => keep(v == q.src(e), one(), TT(e, f)),
            (T(e), P(v)) => keep(v == q.rng(e), one(), T(e)),
            (TStar(e), P(v)) => keep(v == q.src(e), one(), TStar(e)),
            (TT(e, f), P(v)) => keep(v == q.src(f), one(), TT(e, f)),
            (TStar(e), T(f)) => keep(e == f, self.weight(e), P(q.rng(e))),
            (T(e), TStar(f)) => keep(q.rng(e) == q.rng(f), one(), TT(e, f)),
            (TStar(g), TT(e, f)) => keep(g == e, self.weight(e), TStar(f)),
            (TT(e, f), T(g)) => keep(f == g, self.weight(f), T(e)),
            (TT(e, f), TT(g, h)) => keep(f == g, self.weight(f), TT(e, h)),
            // paths of length two: zero unless composable, otherwise outside
            (T(e), T(f)) | (T(e), TT(f, _)) => {
                if q.rng(e) == q.src(f) {
                    Err(self.escape(a, b))
                } else {
                    Ok(None)
                }
            }
            (TStar(e), TStar(f)) | (TT(_, e), TStar(f)) => {
                if q.rng(f) == q.src(e) {
                    Err(self.escape(a, b))
                } else {
                    Ok(None)
                }
            }
        }
    }

    pub fn multiply(&self, x: &Deg2Element, y: &Deg2Element) -> Result<Deg2Element, Error> {
        let mut out = SparseVec::new();
        for (a, ca) in &x.0 {
            for (b, cb) in &y.0 {
                if let Some((c, basis)) = self.multiply_basis(*a, *b)? {
                    let coeff = ca * cb * c;
                    axpy(&mut out, &coeff, &[(basis, ScalarQ::one())].into());
                }
            }
        }
        Ok(Deg2Element(out))
    }

    pub fn letter(&self, l: Letter) -> Deg2Element {
        Deg2Element::basis(match (l.gen, l.star) {
            (Generator::P(v), _) => Basis::P(v),
            (Generator::T(e), false) => Basis::T(e),
            (Generator::T(e), true) => Basis::TStar(e),
        })
    }

    /// Normal form of a nonempty word.
    pub fn reduce(&self, word: &[Letter]) -> Result<Deg2Element, Error> {
        let (first, rest) = word
            .split_first()
            .ok_or_else(|| Error::OutsideFragment("the empty word (unit)".into()))?;
        rest.iter().try_fold(self.letter(*first), |acc, &l| {
            self.multiply(&acc, &self.letter(l))
        })
    }

    pub fn eval(&self, p: &Polynomial) -> Result<Deg2Element, Error> {
        p.terms
            .iter()
            .try_fold(Deg2Element::zero(), |acc, (c, word)| {
                Ok(acc.add(&self.reduce(word)?.scale(c)))
            })
    }

    /// True iff `x − y` lies in the span of the R5 relation vectors.
    pub fn equal(&self, x: &Deg2Element, y: &Deg2Element) -> bool {
        self.covariance.contains(&x.sub(y).0)
    }

    pub fn format(&self, x: &Deg2Element) -> String {
        format_element(&self.quiver, x)
    }
}

/// The homomorphism `O_F → O_E` induced by a regular morphism `E → F`,
/// recorded on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    /// The quiver whose algebra receives the images (`E`).
    dom: Arc<FiniteQuiver>,
    /// The quiver whose generators are mapped (`F`).
    cod: Arc<FiniteQuiver>,
    projections: Vec<Deg2Element>,
    isometries: Vec<Deg2Element>,
}

impl GeneratorMap {
    /// `p_w ↦ Σ_{m⁰(v)=w} p_v`, `t_x ↦ Σ_{m¹(e)=x} t_e`. Rejects non-regular morphisms.
    pub fn induced(m: &QuiverMorphism) -> Result<Self, Error> {
        let report = m.check_regular()?;
        if !report.is_regular() {
            let reason = report
                .a2_failures
                .first()
                .map(ToString::to_string)
                .or_else(|| {
                    report
                        .a3_failures
                        .first()
                        .map(|v| format!("A3 fails at {v}"))
                })
                .unwrap_or_default();
            return Err(Error::NotRegular(reason));
        }
        let cm = CorrMorphism::build(m.clone())?;
        let (dom, cod) = (m.dom().clone(), m.cod().clone());
        let projections = (0..cod.num_vertices())
            .map(|w| {
                let pulled = cm.mu0(&VertexFunction::delta(cod.num_vertices(), w))?;
                Ok(combination(pulled.values(), Basis::P))
            })
            .collect::<Result<_, Error>>()?;
        let isometries = (0..cod.num_edges())
            .map(|x| {
                let pulled = cm.mu1(&EdgeVector::delta(cod.num_edges(), x))?;
                Ok(combination(pulled.values(), Basis::T))
            })
            .collect::<Result<_, Error>>()?;
        Ok(GeneratorMap {
            dom,
            cod,
            projections,
            isometries,
        })
    }

    pub fn dom(&self) -> &Arc<FiniteQuiver> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteQuiver> {
        &self.cod
    }

    pub fn image(&self, g: Generator) -> &Deg2Element {
        match g {
            Generator::P(w) => &self.projections[w],
            Generator::T(x) => &self.isometries[x],
        }
    }

    pub fn projection_images(&self) -> &[Deg2Element] {
        &self.projections
    }

    pub fn isometry_images(&self) -> &[Deg2Element] {
        &self.isometries
    }

    fn letter_image(&self, l: Letter) -> Polynomial {
        let image = self.image(l.gen);
        let image = if l.star {
            image.adjoint()
        } else {
            image.clone()
        };
        image.to_polynomial()
    }

    /// Substitutes generator images into a polynomial over `cod`.
    pub fn substitute(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (c, word) in &p.terms {
            let mut partial = vec![(c.clone(), Word::new())];
            for &l in word {
                let image = self.letter_image(l);
                partial = partial
                    .iter()
                    .flat_map(|(c0, w0)| {
                        image.terms.iter().map(move |(c1, w1)| {
                            (c0 * c1, w0.iter().chain(w1).copied().collect::<Word>())
                        })
                    })
                    .collect();
            }
            out.terms.extend(partial);
        }
        out
    }

    /// `outer ∘ inner`: first `inner: O_G → O_F`, then `outer: O_F → O_E`.
    pub fn compose(outer: &GeneratorMap, inner: &GeneratorMap) -> Result<GeneratorMap, Error> {
        if outer.cod != inner.dom {
            return Err(Error::CompositionMismatch);
        }
        let fragment = Fragment::new(outer.dom.clone());
        let push = |x: &Deg2Element| fragment.eval(&outer.substitute(&x.to_polynomial()));
        Ok(GeneratorMap {
            dom: outer.dom.clone(),
            cod: inner.cod.clone(),
            projections: inner
                .projections
                .iter()
                .map(push)
                .collect::<Result<_, _>>()?,
            isometries: inner
                .isometries
                .iter()
                .map(push)
                .collect::<Result<_, _>>()?,
        })
    }

    /// Every `p` image has degree 0 and every `t` image degree 1.
    pub fn is_degree_preserving(&self) -> bool {
        let ok = |x: &Deg2Element, d| {
            matches!(grading(x), Grading::Zero) || grading(x) == Grading::Degree(d)
        };
        self.projections.iter().all(|x| ok(x, 0)) && self.isometries.iter().all(|x| ok(x, 1))
    }

    /// `Σ_w p_w ↦ Σ_v p_v`.
    pub fn is_unital(&self) -> bool {
        let image = self
            .projections
            .iter()
            .fold(Deg2Element::zero(), |acc, x| acc.add(x));
        let unit = (0..self.dom.num_vertices()).fold(Deg2Element::zero(), |acc, v| {
            acc.add(&Deg2Element::basis(Basis::P(v)))
        });
        image == unit
    }

    /// One line per generator, e.g. `t_ℓ ↦ t_e1 + t_e2`.
    pub fn lines(&self) -> Vec<String> {
        let projections = self
            .projections
            .iter()
            .enumerate()
            .map(|(w, x)| (Generator::P(w), x));
        let isometries = self
            .isometries
            .iter()
            .enumerate()
            .map(|(e, x)| (Generator::T(e), x));
        projections
            .chain(isometries)
            .map(|(g, x)| {
                format!(
                    "{} ↦ {}",
                    gen_name(&self.cod, g),
                    format_element(&self.dom, x)
                )
            })
            .collect()
    }
}

fn combination(values: &[ScalarQ], basis: fn(usize) -> Basis) -> Deg2Element {
    values
        .iter()
        .enumerate()
        .fold(Deg2Element::zero(), |acc, (i, c)| {
            acc.add(&Deg2Element::term(c.clone(), basis(i)))
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationVerdict {
    pub kind: RelationKind,
    pub relation: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub images: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub relations: Vec<RelationVerdict>,
}

impl VerificationReport {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationVerdict> {
        self.relations.iter().filter(|r| !r.holds)
    }
}

/// Substitutes the induced generator images into every relation of the
/// codomain presentation and decides each in the domain fragment.
pub fn verify_induced(m: &QuiverMorphism) -> Result<VerificationReport, Error> {
    let map = GeneratorMap::induced(m)?;
    verify_generator_map(&map)
}

pub fn verify_generator_map(map: &GeneratorMap) -> Result<VerificationReport, Error> {
    let presentation = Presentation::emit(map.cod.clone());
    let fragment = Fragment::new(map.dom.clone());
    let internal = |e: Error| Error::Internal(format!("relation image left the fragment: {e}"));
    let relations = presentation
        .relations()
        .iter()
        .map(|r| {
            let lhs = fragment.eval(&map.substitute(&r.lhs)).map_err(internal)?;
            let rhs = fragment.eval(&map.substitute(&r.rhs)).map_err(internal)?;
            let holds = fragment.equal(&lhs, &rhs);
            Ok(RelationVerdict {
                kind: r.kind,
                relation: presentation.format_relation(r),
                holds,
                images: (!holds).then(|| (fragment.format(&lhs), fragment.format(&rhs))),
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(VerificationReport { relations })
}
