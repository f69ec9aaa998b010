//! Small named quivers and morphisms used throughout the tests and the guide.
//!
//! | name        | data                                                        |
//! |-------------|-------------------------------------------------------------|
//! | `Q_LOOP`    | vertex `u`, loop `ℓ`, weight 1                              |
//! | `Q_WLOOP`   | vertex `u`, loop `ℓ`, weight 2                              |
//! | `Q_EDGE`    | `e: a → b`, weight 1                                        |
//! | `Q_2CYC`    | `e1: a → b`, `e2: b → a`, weights 1                         |
//! | `Q_4CYC`    | `fi: vi → v(i+1 mod 4)`, weights 1                          |
//! | `E_BAD`     | `g1: a → a`, `g2: a → b`, weights 1                         |

use std::sync::Arc;

use crate::morphism::QuiverMorphism;
use crate::quiver::{rational, FiniteQuiver, QuiverData};

fn build(data: QuiverData) -> Arc<FiniteQuiver> {
    Arc::new(FiniteQuiver::new(data).expect("fixture quivers are valid"))
}

pub fn q_loop() -> Arc<FiniteQuiver> {
    build(QuiverData::with_vertices(["u"]).edge("ℓ", "u", "u", rational(1, 1)))
}

pub fn q_wloop() -> Arc<FiniteQuiver> {
    build(QuiverData::with_vertices(["u"]).edge("ℓ", "u", "u", rational(2, 1)))
}

pub fn q_edge() -> Arc<FiniteQuiver> {
    build(QuiverData::with_vertices(["a", "b"]).edge("e", "a", "b", rational(1, 1)))
}

pub fn q_2cyc() -> Arc<FiniteQuiver> {
    build(
        QuiverData::with_vertices(["a", "b"])
            .edge("e1", "a", "b", rational(1, 1))
            .edge("e2", "b", "a", rational(1, 1)),
    )
}

pub fn q_4cyc() -> Arc<FiniteQuiver> {
    let mut data = QuiverData::with_vertices(["v0", "v1", "v2", "v3"]);
    for i in 0..4 {
        data = data.edge(
            &format!("f{i}"),
            &format!("v{i}"),
            &format!("v{}", (i + 1) % 4),
            rational(1, 1),
        );
    }
    build(data)
}

pub fn e_bad() -> Arc<FiniteQuiver> {
    build(
        QuiverData::with_vertices(["a", "b"])
            .edge("g1", "a", "a", rational(1, 1))
            .edge("g2", "a", "b", rational(1, 1)),
    )
}

fn morphism(
    dom: Arc<FiniteQuiver>,
    cod: Arc<FiniteQuiver>,
    vmap: &[(&str, &str)],
    emap: &[(&str, &str)],
) -> QuiverMorphism {
    let own = |pairs: &[(&str, &str)]| {
        pairs
            .iter()
            .map(|&(k, v)| (k.to_owned(), v.to_owned()))
            .collect()
    };
    QuiverMorphism::from_maps(dom, cod, &own(vmap), &own(emap)).expect("fixture maps are total")
}

/// `Q_2CYC → Q_LOOP`, collapsing both vertices and both edges.
pub fn m_collapse() -> QuiverMorphism {
    morphism(
        q_2cyc(),
        q_loop(),
        &[("a", "u"), ("b", "u")],
        &[("e1", "ℓ"), ("e2", "ℓ")],
    )
}

/// `Q_4CYC → Q_2CYC`, reducing indices mod 2.
pub fn m_mod2() -> QuiverMorphism {
    morphism(
        q_4cyc(),
        q_2cyc(),
        &[("v0", "a"), ("v1", "b"), ("v2", "a"), ("v3", "b")],
        &[("f0", "e1"), ("f1", "e2"), ("f2", "e1"), ("f3", "e2")],
    )
}

/// `Q_EDGE → Q_LOOP`; the empty fiber over `a` cannot push forward onto `{ℓ}`.
pub fn m_bad_a2() -> QuiverMorphism {
    morphism(q_edge(), q_loop(), &[("a", "u"), ("b", "u")], &[("e", "ℓ")])
}

/// `E_BAD → Q_LOOP`; measure-preserving, but the sink `b` lies over the regular `u`.
pub fn m_bad_a3() -> QuiverMorphism {
    morphism(
        e_bad(),
        q_loop(),
        &[("a", "u"), ("b", "u")],
        &[("g1", "ℓ"), ("g2", "ℓ")],
    )
}
