use lcsc::category::Presentation;
use lcsc::coaction::{coaction_from_grading, GradedAlgebra};
use lcsc::cstar::{complete_isometry_check, Effort};
use lcsc::envelope::{block_decompose, diagonal, envelope_image, shilov_ideal, stabilize, upper_triangular};
use lcsc::fixtures;
use lcsc::germ::omega_and_boundary;
use lcsc::group::FiniteGroup;
use lcsc::groupoid::FiniteGroupoid;
use lcsc::hull::generate_hull;
use lcsc::ideals::{is_tight, spectrum};
use lcsc::lcm::OreGroup;
use lcsc::linalg::{max_abs_diff, random_mat, rng, unit, CMat};
use lcsc::parse::{parse_str, Format};
use lcsc::pipeline::Input;
use lcsc::report::Status;
use lcsc::universal::{j_map, reduce, Letter, OrbitData, UGWord};
use proptest::prelude::*;

/// Acyclic graphs: edge `i` runs from a higher to a lower vertex.
fn dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..=4).prop_flat_map(|n| {
        let edge = (1..n).prop_flat_map(|hi| (Just(hi), 0..hi));
        (Just(n), prop::collection::vec(edge, 1..=4))
    })
}

fn build(n: usize, edges: &[(usize, usize)]) -> Presentation {
    let objects: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let names: Vec<String> = (0..edges.len()).map(|i| format!("e{i}")).collect();
    let obj: Vec<&str> = objects.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = edges.iter().zip(&names).map(|((d, t), e)| (e.as_str(), obj[*d], obj[*t])).collect();
    Presentation::graph_path(&obj, &es).unwrap()
}

fn cat_text(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("class: path\nobjects: {}\n\n[generators]\n", (0..n).map(|i| format!("v{i}")).collect::<Vec<_>>().join(" "));
    for (i, (d, t)) in edges.iter().enumerate() {
        s.push_str(&format!("e{i}: v{d} -> v{t}\n"));
    }
    s
}

fn groupoids() -> Vec<FiniteGroupoid> {
    vec![
        fixtures::pair_groupoid(),
        FiniteGroupoid::from_group(&FiniteGroup::symmetric3()),
        FiniteGroupoid::transitive(&["a", "b", "c"], &FiniteGroup::cyclic(2)),
        FiniteGroupoid::disjoint_union(&[
            FiniteGroupoid::transitive(&["p", "q"], &FiniteGroup::cyclic(3)),
            FiniteGroupoid::from_group(&FiniteGroup::cyclic(4)),
        ]),
    ]
}

fn alphabet(g: &FiniteGroupoid, od: &OrbitData) -> Vec<Letter> {
    let mut out: Vec<Letter> = od.free_letters().into_iter().flat_map(|u| [Letter::Free { unit: u, exp: 1 }, Letter::Free { unit: u, exp: -2 }]).collect();
    for u in g.units().into_iter().filter(|&u| od.is_rep(u)) {
        out.extend(g.hom(u, u).into_iter().filter(|&x| !g.is_unit(x)).map(|x| Letter::Iso { rep: u, elem: x }));
    }
    out
}

fn noise() -> impl Strategy<Value = String> {
    proptest::string::string_regex("\\PC{0,200}").unwrap()
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![Just(Status::Certified), Just(Status::Bounded), "[a-z]{1,4}".prop_map(Status::Rejected)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hull_is_an_inverse_semigroup((n, edges) in dag()) {
        let p = build(n, &edges);
        let h = generate_hull(&p, 2 * p.diameter().unwrap() + 2).unwrap();
        prop_assert!(h.is_complete());
        for s in h.elements() {
            let si = s.inverse(&p);
            prop_assert!(h.contains(&si));
            prop_assert_eq!(&s.compose(&p, &si).unwrap().compose(&p, s).unwrap(), s);
            for t in h.elements() {
                prop_assert!(h.contains(&s.compose(&p, t).unwrap()));
            }
        }
    }

    #[test]
    fn germ_groupoids_satisfy_the_axioms((n, edges) in dag()) {
        let p = build(n, &edges);
        let h = generate_hull(&p, 2 * p.diameter().unwrap() + 2).unwrap();
        let sp = spectrum(&p, &h).unwrap();
        let (full, bd) = omega_and_boundary(&p, &h, &sp).unwrap();
        prop_assert!(full.groupoid.check_axioms().is_ok());
        prop_assert!(bd.groupoid.check_axioms().is_ok());
        prop_assert_eq!(full.groupoid.units().len(), sp.characters.len());
        let tight: Vec<usize> = (0..sp.characters.len()).filter(|&i| is_tight(&p, &sp.table, &sp.characters[i]).unwrap()).collect();
        prop_assert_eq!(tight, sp.boundary);
    }

    #[test]
    fn cat_text_round_trip((n, edges) in dag()) {
        let direct = build(n, &edges);
        let Input::Category(parsed) = parse_str(Format::Category, &cat_text(n, &edges)).unwrap() else {
            panic!("not a category");
        };
        let render = |p: &Presentation| p.all_morphisms().unwrap().iter().map(|m| p.render(m)).collect::<Vec<_>>();
        prop_assert_eq!(render(&parsed), render(&direct));
        prop_assert_eq!(parsed.objects(), direct.objects());
    }

    #[test]
    fn reduction_is_confluent(which in 0usize..4, seed in 0u64..4, picks in prop::collection::vec(any::<prop::sample::Index>(), 0..8), more in prop::collection::vec(any::<prop::sample::Index>(), 0..8)) {
        let g = &groupoids()[which];
        let od = OrbitData::new(g, seed);
        let alpha = alphabet(g, &od);
        prop_assume!(!alpha.is_empty());
        let w: Vec<Letter> = picks.iter().map(|i| *i.get(&alpha)).collect();
        let v: Vec<Letter> = more.iter().map(|i| *i.get(&alpha)).collect();
        let rw = reduce(g, w.iter().copied());
        prop_assert_eq!(&reduce(g, rw.0.iter().copied()), &rw);
        prop_assert!(rw.mul(g, &rw.inverse(g)).is_empty());
        let rv = reduce(g, v.iter().copied());
        prop_assert_eq!(reduce(g, w.iter().chain(&v).copied()), rw.mul(g, &rv));
    }

    #[test]
    fn j_map_is_a_homomorphism(which in 0usize..4, seed in 0u64..4) {
        let g = &groupoids()[which];
        let od = OrbitData::new(g, seed);
        let j: Vec<UGWord> = (0..g.len()).map(|x| j_map(g, &od, x)).collect();
        for a in 0..g.len() {
            for b in 0..g.len() {
                if let Some(ab) = g.product(a, b) {
                    prop_assert_eq!(&j[ab], &j[a].mul(g, &j[b]));
                }
            }
        }
    }

    #[test]
    fn coboundary_gradings_give_coactions(n in 2usize..=3, m in 2usize..=4, c in prop::collection::vec(0usize..4, 3)) {
        let gens: Vec<(CMat, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| (unit(n, i, j), (c[j] + m * 4 - c[i]) % m)).collect();
        let ga = GradedAlgebra::from_generators(&FiniteGroup::cyclic(m), n, &gens).unwrap();
        let delta = coaction_from_grading(&ga).unwrap();
        prop_assert!(delta.verify().valid(1e-10));
        prop_assert_eq!(delta.to_grading().unwrap().component_dims(), ga.component_dims());
        prop_assert_eq!(ga.component_dims().iter().sum::<usize>(), n * (n + 1) / 2);
    }

    #[test]
    fn status_combine_order(v in prop::collection::vec(status(), 0..8)) {
        let c = Status::combine(&v);
        match v.iter().find(|s| matches!(s, Status::Rejected(_))) {
            Some(first) => prop_assert_eq!(&c, first),
            None if v.contains(&Status::Bounded) => prop_assert_eq!(c, Status::Bounded),
            None => prop_assert_eq!(c, Status::Certified),
        }
    }

    #[test]
    fn ore_fractions_are_differences(a in (0u32..3, 0u32..3), b in (0u32..3, 0u32..3), c in (0u32..3, 0u32..3), d in (0u32..3, 0u32..3)) {
        let p = fixtures::n2();
        let ore = OreGroup::new(&p, 6);
        let m = |x: (u32, u32)| p.morphism(&format!("({},{})", x.0, x.1)).unwrap();
        let diff = |x: (u32, u32), y: (u32, u32)| (x.0 as i64 - y.0 as i64, x.1 as i64 - y.1 as i64);
        let f = ore.fraction(&m(a), &m(b)).unwrap();
        let g = ore.fraction(&m(c), &m(d)).unwrap();
        prop_assert_eq!(ore.equal(&f, &g).unwrap(), diff(a, b) == diff(c, d));
        prop_assert!(ore.is_identity(&ore.mul(&f, &ore.inv(&f)).unwrap()).unwrap());
        let fg = ore.mul(&f, &g).unwrap();
        let gf = ore.mul(&g, &f).unwrap();
        prop_assert!(ore.equal(&fg, &gf).unwrap());
        let (x, y) = (diff(a, b), diff(c, d));
        let s = (x.0 + y.0, x.1 + y.1);
        if s.0 >= 0 && s.1 >= 0 {
            let h = ore.fraction(&m((s.0 as u32, s.1 as u32)), &m((0, 0))).unwrap();
            prop_assert!(ore.equal(&fg, &h).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parser_never_panics(src in noise(), which in 0usize..3) {
        let format = [Format::Category, Format::Graded, Format::Groupoid][which];
        let _ = parse_str(format, &src);
    }

    #[test]
    fn parser_survives_near_miss_lines(lines in prop::collection::vec(prop_oneof![
        Just("class: path".to_string()),
        Just("objects: v w".to_string()),
        Just("[generators]".to_string()),
        Just("e: w -> v".to_string()),
        Just("group: cyclic 2".to_string()),
        Just("dim: 2".to_string()),
        Just("[generator x degree 1]".to_string()),
        Just("units: 1 2".to_string()),
        Just("[elements]".to_string()),
        Just("[products]".to_string()),
        "[a-z0-9:>\\-\\[\\] ()]{0,12}",
    ], 0..10), which in 0usize..3) {
        let format = [Format::Category, Format::Graded, Format::Groupoid][which];
        let _ = parse_str(format, &lines.join("\n"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn unitary_conjugation_is_completely_isometric(n in 2usize..=3, seed in 0u64..1000) {
        let mut r = rng(seed);
        let q = random_mat(&mut r, n, n).qr().q();
        prop_assert!(max_abs_diff(&(q.adjoint() * &q), &CMat::identity(n, n)) < 1e-10);
        let src = upper_triangular(n);
        let dst: Vec<CMat> = src.iter().map(|a| &q * a * q.adjoint()).collect();
        let labels: Vec<String> = (0..src.len()).map(|i| format!("t{i}")).collect();
        let effort = Effort { levels: 2, samples: 10, restarts: 1, steps: 20, seed, tol: 1e-9 };
        prop_assert!(complete_isometry_check(&src, &dst, &labels, &effort).unwrap().certified());
    }

    #[test]
    fn shilov_quotient_is_idempotent(kind in 0usize..3, n in 1usize..=3, m in 1usize..=2) {
        let (gens, expect) = match kind {
            0 => (upper_triangular(n), vec![n]),
            1 => (diagonal(n), vec![1; n]),
            _ => (stabilize(&upper_triangular(n), m), vec![n * m]),
        };
        let labels: Vec<String> = (0..gens.len()).map(|i| format!("g{i}")).collect();
        let effort = Effort { levels: 2, samples: 10, restarts: 1, steps: 20, seed: 0, tol: 1e-9 };
        let cover = block_decompose(&gens, 0).unwrap();
        let sh = shilov_ideal(&cover, &gens, &labels, &effort).unwrap();
        let mut blocks = sh.envelope_blocks.clone();
        blocks.sort_unstable();
        prop_assert_eq!(blocks, expect);
        let env = envelope_image(&cover, &sh, &gens);
        let again = block_decompose(&env, 0).unwrap();
        prop_assert!(shilov_ideal(&again, &env, &labels, &effort).unwrap().mask.is_empty());
    }
}
