//! Brute-force oracles for the finite fixtures, computed without the hull,
//! ideal or envelope machinery.

use std::collections::{BTreeMap, BTreeSet};

use lcsc::category::{Morphism, Presentation};
use lcsc::coaction::{coaction_from_grading, katayama_verify, triangular_grading};
use lcsc::cstar::Effort;
use lcsc::fixtures;
use lcsc::group::FiniteGroup;
use lcsc::groupoid::FiniteGroupoid;
use lcsc::hull::generate_hull;
use lcsc::ideals::{constructible_ideals, spectrum};
use lcsc::linalg::op_norm;
use lcsc::pipeline::envelope_chain;
use lcsc::universal::{j_map, Letter, OrbitData};
use nalgebra::DMatrix;

type PMap = BTreeMap<usize, usize>;

fn compose(s: &PMap, t: &PMap) -> PMap {
    t.iter().filter_map(|(x, y)| s.get(y).map(|z| (*x, *z))).collect()
}

fn invert(s: &PMap) -> PMap {
    s.iter().map(|(x, y)| (*y, *x)).collect()
}

/// Closure of the left multiplications and their inverses under composition.
fn oracle_hull(p: &Presentation) -> (Vec<Morphism>, BTreeSet<PMap>) {
    let all = p.all_morphisms().unwrap();
    let index = |m: &Morphism| all.iter().position(|x| x == m).unwrap();
    let mut gens = Vec::new();
    for c in &all {
        let s: PMap = all.iter().filter_map(|x| p.compose(c, x).map(|cx| (index(x), index(&cx)))).collect();
        gens.push(invert(&s));
        gens.push(s);
    }
    let mut set: BTreeSet<PMap> = gens.iter().cloned().collect();
    loop {
        let current: Vec<PMap> = set.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for g in &gens {
                grew |= set.insert(compose(a, g));
            }
        }
        if !grew {
            break;
        }
    }
    (all, set)
}

fn hull_as_maps(p: &Presentation, all: &[Morphism]) -> BTreeSet<PMap> {
    let diam = p.diameter().unwrap();
    let h = generate_hull(p, 2 * diam + 2).unwrap();
    assert!(h.is_complete());
    h.elements()
        .iter()
        .map(|s| {
            all.iter()
                .enumerate()
                .filter_map(|(i, x)| s.apply(p, x).map(|y| (i, all.iter().position(|z| *z == y).unwrap())))
                .collect()
        })
        .collect()
}

fn finite_fixtures() -> Vec<(&'static str, Presentation)> {
    vec![
        ("edge", fixtures::edge()),
        ("two", fixtures::two()),
        ("trivial", fixtures::trivial()),
        ("kgraph-square", fixtures::kgraph_square()),
        ("pair-sub", fixtures::pair_sub()),
        ("z3", fixtures::z3()),
    ]
}

#[test]
fn hull_matches_partial_bijection_closure() {
    for (name, p) in finite_fixtures() {
        let (all, oracle) = oracle_hull(&p);
        assert_eq!(hull_as_maps(&p, &all), oracle, "{name}");
    }
    let (_, edge) = oracle_hull(&fixtures::edge());
    assert_eq!(edge.len(), 6);
}

/// Domains of the oracle hull, as sets of morphism indices.
fn oracle_ideals(hull: &BTreeSet<PMap>) -> Vec<BTreeSet<usize>> {
    let set: BTreeSet<BTreeSet<usize>> = hull.iter().map(|s| s.keys().copied().collect()).collect();
    set.into_iter().collect()
}

fn oracle_characters(ideals: &[BTreeSet<usize>]) -> Vec<Vec<bool>> {
    let n = ideals.len();
    let meet = |i: usize, j: usize| {
        let x: BTreeSet<usize> = ideals[i].intersection(&ideals[j]).copied().collect();
        ideals.iter().position(|y| *y == x).unwrap()
    };
    (1u32..(1 << n))
        .map(|bits| (0..n).map(|i| bits & (1 << i) != 0).collect::<Vec<bool>>())
        .filter(|chi| {
            (0..n).all(|i| !(ideals[i].is_empty() && chi[i])) && (0..n).all(|i| (0..n).all(|j| chi[meet(i, j)] == (chi[i] && chi[j])))
        })
        .collect()
}

/// Every cover `F` of every supported `X` has a supported member.
fn oracle_tight(ideals: &[BTreeSet<usize>], chi: &[bool]) -> bool {
    let n = ideals.len();
    for x in (0..n).filter(|&x| chi[x]) {
        let below: Vec<usize> = (0..n).filter(|&y| ideals[y].is_subset(&ideals[x])).collect();
        for bits in 0u32..(1 << below.len()) {
            let family: Vec<usize> = (0..below.len()).filter(|i| bits & (1 << i) != 0).map(|i| below[i]).collect();
            let covers = below.iter().filter(|&&z| !ideals[z].is_empty()).all(|&z| family.iter().any(|&f| !ideals[z].is_disjoint(&ideals[f])));
            if covers && family.iter().all(|&f| !chi[f]) {
                return false;
            }
        }
    }
    true
}

#[test]
fn semilattice_characters_and_tight_sets() {
    for (name, p) in finite_fixtures() {
        let (_, hull) = oracle_hull(&p);
        let ideals = oracle_ideals(&hull);
        let h = generate_hull(&p, 2 * p.diameter().unwrap() + 2).unwrap();
        let table = constructible_ideals(&p, &h).unwrap();
        assert_eq!(table.len(), ideals.len(), "{name}: 𝒥");
        let sp = spectrum(&p, &h).unwrap();
        let chars = oracle_characters(&ideals);
        assert_eq!(sp.characters.len(), chars.len(), "{name}: Ω");
        let tight = chars.iter().filter(|c| oracle_tight(&ideals, c)).count();
        assert_eq!(sp.boundary.len(), tight, "{name}: ∂Ω");
    }
}

#[test]
fn edge_semilattice_by_hand() {
    let (_, hull) = oracle_hull(&fixtures::edge());
    let ideals = oracle_ideals(&hull);
    assert_eq!(ideals.len(), 4);
    let chars = oracle_characters(&ideals);
    assert_eq!(chars.len(), 3);
    assert_eq!(chars.iter().filter(|c| oracle_tight(&ideals, c)).count(), 2);
}

fn real_matrix(all: usize, s: &PMap) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(all, all);
    for (x, y) in s {
        m[(*y, *x)] = 1.0;
    }
    m
}

/// The left regular algebra is spanned by the hull's partial permutation
/// matrices, so its dimension is their rank.
fn oracle_lambda_dim(p: &Presentation) -> usize {
    let (all, hull) = oracle_hull(p);
    let n = all.len();
    let rows: Vec<f64> = hull.iter().flat_map(|s| real_matrix(n, s).iter().copied().collect::<Vec<_>>()).collect();
    DMatrix::from_row_slice(hull.len(), n * n, &rows).rank(1e-9)
}

/// Center dimension of the algebra spanned by partial permutations.
fn oracle_center_dim(p: &Presentation) -> usize {
    let (all, hull) = oracle_hull(p);
    let n = all.len();
    let mats: Vec<DMatrix<f64>> = hull.iter().map(|s| real_matrix(n, s)).collect();
    let basis_rows: Vec<f64> = mats.iter().flat_map(|m| m.iter().copied().collect::<Vec<_>>()).collect();
    let span = DMatrix::from_row_slice(mats.len(), n * n, &basis_rows);
    // Solve Σ c_i (M_i G - G M_i) = 0 for every hull generator G.
    let mut blocks = Vec::new();
    for g in &mats {
        let cols: Vec<Vec<f64>> = mats.iter().map(|m| (m * g - g * m).iter().copied().collect()).collect();
        for r in 0..n * n {
            blocks.push(cols.iter().map(|c| c[r]).collect::<Vec<f64>>());
        }
    }
    let eqs = DMatrix::from_fn(blocks.len(), mats.len(), |i, j| blocks[i][j]);
    let svd = eqs.clone().svd(false, true);
    let vt = svd.v_t.unwrap();
    let null: Vec<_> = (0..mats.len()).filter(|&i| i >= svd.singular_values.len() || svd.singular_values[i] < 1e-9).map(|i| vt.row(i).transpose()).collect();
    if null.is_empty() {
        return 0;
    }
    let central = DMatrix::from_columns(&null);
    (span.transpose() * central).rank(1e-9)
}

#[test]
fn lambda_algebra_dimension_and_center() {
    for (name, p) in [("edge", fixtures::edge()), ("two", fixtures::two()), ("kgraph-square", fixtures::kgraph_square())] {
        let chain = envelope_chain(&p, &Effort::default()).unwrap();
        assert_eq!(chain.cover.dim, oracle_lambda_dim(&p), "{name}: dimension");
        assert_eq!(chain.cover.sizes().len(), oracle_center_dim(&p), "{name}: center");
    }
    assert_eq!(oracle_lambda_dim(&fixtures::edge()), 5);
}

#[test]
fn edge_norm_of_vertex_plus_edge() {
    let p = fixtures::edge();
    let chain = envelope_chain(&p, &Effort::default()).unwrap();
    let v = chain.position(&p.morphism("v").unwrap()).unwrap();
    let e = chain.position(&p.morphism("e").unwrap()).unwrap();
    // λ_v fixes v and e, λ_e sends w to e: two columns hit e.
    let sum = &chain.lambda_gens[v] + &chain.lambda_gens[e];
    assert!((op_norm(&sum) - 2f64.sqrt()).abs() < 1e-10);
    let env = &chain.envelope_gens[v] + &chain.envelope_gens[e];
    let bd = &chain.boundary_gens[v] + &chain.boundary_gens[e];
    assert!((op_norm(&env) - op_norm(&bd)).abs() < 1e-10);
    assert!((op_norm(&bd) - 2f64.sqrt()).abs() < 1e-10);
}

#[test]
fn katayama_dimensions() {
    for n in [2usize, 3] {
        let ga = triangular_grading(n).unwrap();
        let delta = coaction_from_grading(&ga).unwrap();
        let k = katayama_verify(&ga, &delta).unwrap();
        let dim_a = n * (n + 1) / 2;
        assert_eq!(k.target_dim, dim_a * n * n);
        assert_eq!(k.double_crossed_dim, dim_a * n * n);
    }
}

#[test]
fn j_map_values() {
    let z3 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(3));
    let od = OrbitData::new(&z3, 0);
    let u = z3.units()[0];
    for x in 0..z3.len() {
        let w = j_map(&z3, &od, x);
        if z3.is_unit(x) {
            assert!(w.is_empty());
        } else {
            assert_eq!(w.0, vec![Letter::Iso { rep: u, elem: x }]);
        }
    }
    let pair = fixtures::pair_groupoid();
    let od = OrbitData::new(&pair, 0);
    let a = j_map(&pair, &od, pair.find("(1,2)").unwrap());
    let b = j_map(&pair, &od, pair.find("(2,1)").unwrap());
    assert_eq!(a.0.len(), 1);
    assert!(matches!(a.0[0], Letter::Free { exp: 1 | -1, .. }));
    assert_eq!(b, a.inverse(&pair));
}
