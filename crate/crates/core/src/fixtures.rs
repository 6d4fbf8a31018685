//! Built-in fixtures shared by tests, the acceptance suite and the CLI.

use crate::category::Presentation;
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;

/// One edge `e: w → v`.
pub fn edge() -> Presentation {
    Presentation::graph_path(&["v", "w"], &[("e", "w", "v")]).unwrap()
}

/// Two edges `e: v → u` and `f: w → u`.
pub fn two() -> Presentation {
    Presentation::graph_path(&["u", "v", "w"], &[("e", "v", "u"), ("f", "w", "u")]).unwrap()
}

pub fn free2() -> Presentation {
    Presentation::free_monoid(&["a", "b"]).unwrap()
}

pub fn n2() -> Presentation {
    Presentation::nk_monoid(2).unwrap()
}

/// The trivial category: one object, only its identity.
pub fn trivial() -> Presentation {
    Presentation::graph_path(&["*"], &[]).unwrap()
}

/// A single commuting square as a 2-graph: blue `e: q → p`, `e2: s → r`,
/// red `f: r → p`, `f2: s → q`, with `e f2 = f e2`.
pub fn kgraph_square() -> Presentation {
    Presentation::kgraph(
        2,
        &["p", "q", "r", "s"],
        &[("e", "q", "p", 0), ("e2", "s", "r", 0), ("f", "r", "p", 1), ("f2", "s", "q", 1)],
        &[("e", "f2", "f", "e2")],
    )
    .unwrap()
}

/// A one-vertex 2-graph whose squares make `e1𝔠 ∩ f1𝔠` need two generators.
pub fn kgraph_flip() -> Presentation {
    Presentation::kgraph(
        2,
        &["o"],
        &[("a", "o", "o", 0), ("b", "o", "o", 0), ("x", "o", "o", 1), ("y", "o", "o", 1)],
        &[("a", "x", "x", "a"), ("a", "y", "x", "b"), ("b", "x", "y", "a"), ("b", "y", "y", "b")],
    )
    .unwrap()
}

/// Free monoid on two letters times ℕ.
pub fn free2_times_n() -> Presentation {
    Presentation::direct_product(free2(), Presentation::nk_monoid(1).unwrap()).unwrap()
}

/// The pair groupoid on two units `1`, `2`.
pub fn pair_groupoid() -> FiniteGroupoid {
    FiniteGroupoid::pair(&["1", "2"])
}

/// The subcategory `{1, 2, (1,2)}` of the pair groupoid on `{1,2}`.
pub fn pair_sub() -> Presentation {
    let g = pair_groupoid();
    let chosen: Vec<usize> = ["1", "2", "(1,2)"].iter().map(|l| g.find(l).unwrap()).collect();
    Presentation::groupoid_sub(g, &chosen).unwrap()
}

/// ℤ/3 as a one-object category inside itself.
pub fn z3() -> Presentation {
    let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(3));
    let all: Vec<usize> = (0..g.len()).collect();
    Presentation::groupoid_sub(g, &all).unwrap()
}

/// A finite monoid that is not left cancellative: `{1, x, y, c}` with
/// `cx = cy = c` and every other product of letters equal to `c`.
pub fn non_cancellative_table() -> Presentation {
    Presentation::finite_table(
        &["1"],
        &[("x", "1", "1"), ("y", "1", "1"), ("c", "1", "1")],
        &[
            ("x", "x", "c"),
            ("x", "y", "c"),
            ("x", "c", "c"),
            ("y", "x", "c"),
            ("y", "y", "c"),
            ("y", "c", "c"),
            ("c", "x", "c"),
            ("c", "y", "c"),
            ("c", "c", "c"),
        ],
    )
    .unwrap()
}
