//! Seeded random quivers, regular morphisms, targeted mutants and test vectors.
//!
//! Everything here is deterministic in the seed.

use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correspondence::{EdgeVector, FiberBlockOperator, VertexFunction};
use crate::error::Error;
use crate::linalg::Matrix;
use crate::morphism::QuiverMorphism;
use crate::quiver::{rational, EdgeData, FiniteQuiver, QuiverData};
use crate::scalar::ScalarQ;

const RETRY_LIMIT: u64 = 64;

const WEIGHT_POOL: [(i64, i64); 6] = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 2), (2, 3)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl GenBounds {
    pub const fn new(max_vertices: usize, max_edges: usize) -> Self {
        GenBounds {
            max_vertices,
            max_edges,
        }
    }

    fn halved(self) -> Self {
        GenBounds::new((self.max_vertices / 2).max(1), self.max_edges / 2)
    }
}

impl Default for GenBounds {
    fn default() -> Self {
        GenBounds::new(8, 16)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weights {
    /// Every weight is 1.
    Counting,
    /// Weights drawn from a small pool of positive rationals.
    #[default]
    Pool,
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw_weight(rng: &mut impl Rng, weights: Weights) -> BigRational {
    match weights {
        Weights::Counting => rational(1, 1),
        Weights::Pool => {
            let (p, q) = WEIGHT_POOL[rng.gen_range(0..WEIGHT_POOL.len())];
            rational(p, q)
        }
    }
}

pub fn random_quiver(rng: &mut impl Rng, bounds: GenBounds, weights: Weights) -> Arc<FiniteQuiver> {
    let n = rng.gen_range(1..=bounds.max_vertices.max(1));
    let m = rng.gen_range(0..=bounds.max_edges);
    let mut data = QuiverData::with_vertices((0..n).map(|i| format!("v{i}")));
    for j in 0..m {
        let (s, r) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let weight = draw_weight(rng, weights);
        data = data.edge(&format!("e{j}"), &format!("v{s}"), &format!("v{r}"), weight);
    }
    Arc::new(FiniteQuiver::new(data).expect("generated quivers are valid"))
}

pub fn gen_quiver(seed: u64, bounds: GenBounds, weights: Weights) -> Arc<FiniteQuiver> {
    random_quiver(&mut rng_for(seed), bounds, weights)
}

/// Multiplicities `k_w ∈ {1, 2}` lowered until every regular `w` can give
/// each of its `k_w` preimages an outgoing lifted edge.
fn cover_multiplicities(rng: &mut impl Rng, f: &FiniteQuiver) -> Vec<usize> {
    let mut k: Vec<usize> = (0..f.num_vertices())
        .map(|_| rng.gen_range(1..=2))
        .collect();
    loop {
        let mut changed = false;
        for u in (0..f.num_vertices()).filter(|&u| f.is_regular(u)) {
            let supply: usize = f.out_fiber_of(u).iter().map(|&x| k[f.rng(x)]).sum();
            if k[u] > supply {
                k[u] = supply;
                changed = true;
            }
        }
        if !changed {
            return k;
        }
    }
}

/// A regular morphism onto `f` by the cover construction: each vertex over
/// `w` receives exactly one lift of every edge into `w`, and lifted sources
/// are dealt round-robin so preimages of regular vertices emit.
pub fn random_cover(rng: &mut impl Rng, f: Arc<FiniteQuiver>) -> QuiverMorphism {
    let k = cover_multiplicities(rng, &f);
    let mut vertices = Vec::new();
    let mut vmap = Vec::new();
    let mut over: Vec<Vec<usize>> = vec![Vec::new(); f.num_vertices()];
    for w in 0..f.num_vertices() {
        for i in 0..k[w] {
            over[w].push(vertices.len());
            vertices.push(format!("{}.{i}", f.vertex_id(w)));
            vmap.push(w);
        }
    }

    // (cod edge, dom target) for every lifted edge, grouped by cod source
    let mut lifts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); f.num_vertices()];
    for x in 0..f.num_edges() {
        for &v in &over[f.rng(x)] {
            lifts[f.src(x)].push((x, v));
        }
    }
    let mut edges = Vec::new();
    for (u, group) in lifts.iter_mut().enumerate() {
        group.shuffle(rng);
        for (i, &(x, v)) in group.iter().enumerate() {
            edges.push((x, over[u][i % over[u].len()], v));
        }
    }
    edges.sort();

    let mut data = QuiverData::with_vertices(vertices.iter().cloned());
    let mut emap = Vec::new();
    for (x, s, r) in edges {
        data.edges.push(EdgeData {
            id: format!("{}.{}", f.edge_id(x), vertices[r]),
            src: vertices[s].clone(),
            rng: vertices[r].clone(),
            weight: f.weight(x).clone(),
        });
        emap.push(x);
    }
    let dom = Arc::new(FiniteQuiver::new(data).expect("covers are valid quivers"));
    QuiverMorphism::new(dom, f, vmap, emap).expect("cover maps are total")
}

fn retrying<T>(
    seed: u64,
    mut attempt: impl FnMut(&mut ChaCha8Rng) -> Option<T>,
) -> Result<T, Error> {
    for stream in 0..RETRY_LIMIT {
        let mut rng = rng_for(seed);
        rng.set_stream(stream);
        if let Some(t) = attempt(&mut rng) {
            return Ok(t);
        }
    }
    Err(Error::Internal(format!(
        "generation for seed {seed} exceeded {RETRY_LIMIT} retries"
    )))
}

/// A regular morphism whose domain fits in `bounds`.
pub fn gen_regular_morphism(
    seed: u64,
    bounds: GenBounds,
    weights: Weights,
) -> Result<QuiverMorphism, Error> {
    retrying(seed, |rng| {
        let f = random_quiver(rng, bounds.halved(), weights);
        let m = random_cover(rng, f);
        m.is_regular().then_some(m)
    })
}

/// `(n, m)` with `n: F → G` and `m: E → F` both regular, `E` within `bounds`.
pub fn gen_composable_pair(
    seed: u64,
    bounds: GenBounds,
    weights: Weights,
) -> Result<(QuiverMorphism, QuiverMorphism), Error> {
    retrying(seed, |rng| {
        let g = random_quiver(rng, bounds.halved().halved(), weights);
        let n = random_cover(rng, g);
        let m = random_cover(rng, n.dom().clone());
        (n.is_regular() && m.is_regular()).then_some((n, m))
    })
}

fn rebuild(
    m: &QuiverMorphism,
    data: QuiverData,
    vmap: Vec<usize>,
    emap: Vec<usize>,
) -> QuiverMorphism {
    let dom = Arc::new(FiniteQuiver::new(data).expect("mutants stay valid"));
    QuiverMorphism::new(dom, m.cod().clone(), vmap, emap).expect("mutants stay total")
}

/// Removes one domain edge: its target loses the lift of `m¹(e)`, so (A2)
/// fails by non-surjectivity. `None` when the domain has no edges.
pub fn drop_lifted_edge(rng: &mut impl Rng, m: &QuiverMorphism) -> Option<QuiverMorphism> {
    let dom = m.dom();
    if dom.num_edges() == 0 {
        return None;
    }
    let e = rng.gen_range(0..dom.num_edges());
    let mut data = dom.data().clone();
    data.edges.remove(e);
    let mut emap = m.emap_slice().to_vec();
    emap.remove(e);
    Some(rebuild(m, data, m.vmap_slice().to_vec(), emap))
}

/// Adds a parallel copy of one domain edge over the same codomain edge, so
/// (A2) fails by non-injectivity and the fiber measure doubles.
pub fn duplicate_lifted_edge(rng: &mut impl Rng, m: &QuiverMorphism) -> Option<QuiverMorphism> {
    let dom = m.dom();
    if dom.num_edges() == 0 {
        return None;
    }
    let e = rng.gen_range(0..dom.num_edges());
    let mut data = dom.data().clone();
    let mut copy = data.edges[e].clone();
    copy.id = format!("{}'", copy.id);
    data.edges.push(copy);
    let mut emap = m.emap_slice().to_vec();
    emap.push(m.emap(e));
    Some(rebuild(m, data, m.vmap_slice().to_vec(), emap))
}

/// Adds a fresh vertex over a regular codomain vertex together with one lift
/// of each edge into it. The new vertex is a sink, so only (A3) fails.
/// `None` when the codomain has no regular vertex.
pub fn add_sink_over_regular(rng: &mut impl Rng, m: &QuiverMorphism) -> Option<QuiverMorphism> {
    let (dom, cod) = (m.dom(), m.cod());
    let regular: Vec<usize> = (0..cod.num_vertices())
        .filter(|&w| cod.is_regular(w))
        .collect();
    let &w = regular.choose(rng)?;
    let preimages = |u: usize| -> Vec<usize> {
        (0..dom.num_vertices())
            .filter(|&v| m.vmap(v) == u)
            .collect()
    };

    let mut data = dom.data().clone();
    let sink = format!("{}.sink", cod.vertex_id(w));
    data.vertices.push(sink.clone());
    let mut vmap = m.vmap_slice().to_vec();
    vmap.push(w);
    let mut emap = m.emap_slice().to_vec();
    for &x in cod.in_fiber_of(w) {
        let sources = preimages(cod.src(x));
        let src = match sources.choose(rng) {
            Some(&v) => dom.vertex_id(v).to_string(),
            // src(x) = w has no other preimage: the sink itself is the only choice
            None => sink.clone(),
        };
        data.edges.push(EdgeData {
            id: format!("{}.{sink}", cod.edge_id(x)),
            src,
            rng: sink.clone(),
            weight: cod.weight(x).clone(),
        });
        emap.push(x);
    }
    Some(rebuild(m, data, vmap, emap))
}

/// Doubles the weight of one domain edge, breaking weight preservation only.
pub fn perturb_weight(rng: &mut impl Rng, m: &QuiverMorphism) -> Option<QuiverMorphism> {
    let dom = m.dom();
    if dom.num_edges() == 0 {
        return None;
    }
    let e = rng.gen_range(0..dom.num_edges());
    let mut data = dom.data().clone();
    data.edges[e].weight = &data.edges[e].weight * rational(2, 1);
    Some(rebuild(
        m,
        data,
        m.vmap_slice().to_vec(),
        m.emap_slice().to_vec(),
    ))
}

/// Small Gaussian rationals `(a + b·i)/2` with `a, b ∈ [-3, 3]`.
pub fn random_scalar(rng: &mut impl Rng) -> ScalarQ {
    let mut part = || rational(rng.gen_range(-3..=3), 2);
    ScalarQ::new(part(), part())
}

pub fn random_vertex_function(rng: &mut impl Rng, q: &FiniteQuiver) -> VertexFunction {
    VertexFunction::from_values((0..q.num_vertices()).map(|_| random_scalar(rng)).collect())
}

pub fn random_edge_vector(rng: &mut impl Rng, q: &FiniteQuiver) -> EdgeVector {
    EdgeVector::from_values((0..q.num_edges()).map(|_| random_scalar(rng)).collect())
}

pub fn random_operator(rng: &mut impl Rng, q: &FiniteQuiver) -> FiberBlockOperator {
    let blocks = (0..q.num_vertices())
        .map(|v| {
            let n = q.in_fiber_of(v).len();
            Matrix::from_fn(n, n, |_, _| random_scalar(rng))
        })
        .collect();
    FiberBlockOperator::from_blocks(q, blocks).expect("block sizes match fibers")
}
