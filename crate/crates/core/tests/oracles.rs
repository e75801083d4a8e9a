mod common;

use common::{compose, Brute};
use permgen::builder::build;
use permgen::cohomology::{h1_dimension, GfpModule, ModuleSpec};
use permgen::structure::{self, Analysis};
use permgen::{crowns, genset, Limits, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn limits() -> Limits {
    Limits::default()
}

#[test]
fn membership_agrees_on_small_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in common::small_groups(200) {
        let gens = common::gens_of(&g);
        let elems = common::elements(g.degree(), &gens);
        assert_eq!(elems.len() as u128, g.order(), "{name}");
        for e in &elems {
            assert!(g.contains(&Permutation::from_images(e.clone()).unwrap()), "{name}");
        }
        let n = g.degree();
        let mut outside = 0;
        for _ in 0..200 {
            let mut x: Vec<u32> = (0..n as u32).collect();
            x.shuffle(&mut rng);
            if rng.random_bool(0.5) {
                // A near miss: a member times a random transposition.
                let y = &elems[rng.random_range(0..elems.len())];
                let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
                x = y.clone();
                x.swap(i, j);
            }
            let member = elems.binary_search(&x).is_ok();
            outside += usize::from(!member);
            assert_eq!(g.contains(&Permutation::from_images(x).unwrap()), member, "{name}");
        }
        if g.order() < (1..=n as u128).product::<u128>() {
            assert!(outside > 0, "{name}: no non-member sampled");
        }
    }
}

#[test]
fn composition_is_left_to_right() {
    let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
    let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
    assert_eq!(a.mul(&b).images(), compose(a.images(), b.images()).as_slice());
}

#[test]
fn subgroup_counts() {
    for (expr, count) in [("S3", 6), ("S4", 30), ("C6", 4), ("K4", 5), ("Dih4", 10), ("A4", 10), ("A5", 59)] {
        let g = build(expr, &limits()).unwrap();
        let brute = Brute::new(&g).subgroups();
        assert_eq!(brute.len(), count, "{expr}");
        let lib = structure::all_subgroups(&g, &limits()).unwrap();
        assert_eq!(lib.len(), count, "{expr}");
        let mut lib_orders: Vec<u128> = lib.iter().map(|h| h.order()).collect();
        let mut brute_orders: Vec<u128> = brute.iter().map(|h| h.len() as u128).collect();
        lib_orders.sort();
        brute_orders.sort();
        assert_eq!(lib_orders, brute_orders, "{expr}");
    }
}

#[test]
fn frattini_matches_intersection_of_maximals() {
    for (expr, order) in [("C4", 2), ("S4", 1), ("C8", 4), ("Dih4", 2), ("Q(S4; (1,2)(3,4))", 1), ("EX3(2)", 2), ("C6", 1)] {
        let g = build(expr, &limits()).unwrap();
        let b = Brute::new(&g);
        let brute = b.frattini();
        assert_eq!(brute.len(), order, "{expr}");
        let lib = structure::frattini(&g, &limits()).unwrap();
        assert_eq!(lib.order(), order as u128, "{expr}");
        for x in brute {
            assert!(lib.contains(&Permutation::from_images(b.elems[x].clone()).unwrap()), "{expr}");
        }
    }
}

#[test]
fn d_matches_subset_search() {
    for (name, g) in common::small_groups(60) {
        let b = Brute::new(&g);
        assert_eq!(genset::d(&g, &limits()).unwrap(), b.d(), "{name}");
    }
}

#[test]
fn m_matches_irredundant_search() {
    for (name, g) in common::small_groups(60) {
        let b = Brute::new(&g);
        let lib = genset::m(&g, &limits()).unwrap();
        assert_eq!(lib.len(), b.m(), "{name}");
    }
}

#[test]
fn eulerian_matches_tuple_count() {
    for (expr, m) in [("S3", 2), ("C6", 2), ("K4", 2), ("K4", 3), ("A4", 2), ("Dih5", 2), ("S4", 2), ("A5", 2)] {
        let g = build(expr, &limits()).unwrap();
        let brute = Brute::new(&g).eulerian(m) as i128;
        assert_eq!(crowns::eulerian(&g, m, &limits()).unwrap(), brute, "{expr} {m}");
        assert_eq!(crowns::eulerian_brute(&g, m, 1 << 24).unwrap(), brute, "{expr} {m}");
    }
}

fn h1_case(expr: &str, prime: u32, matrices: Vec<Vec<Vec<u32>>>) {
    let g = build(expr, &limits()).unwrap();
    let dim = matrices[0].len();
    let spec = ModuleSpec { prime, dim, matrices: matrices.clone() };
    let m = GfpModule::from_spec(&g, &spec, &limits()).unwrap();
    let lib = h1_dimension(&g, &m, &limits()).unwrap();
    let brute = common::h1_brute(&Brute::new(&g), prime, dim, &matrices);
    assert_eq!(lib, brute, "{expr} over GF({prime})");
}

#[test]
fn h1_matches_cocycle_count() {
    let one = |n: usize| vec![vec![1u32]; n].into_iter().map(|r| vec![r]).collect::<Vec<_>>();
    // Trivial modules: H¹ = Hom(G, GF(p)).
    h1_case("C4", 2, one(1));
    h1_case("K4", 2, one(2));
    h1_case("S3", 2, one(2));
    h1_case("S3", 3, one(2));
    h1_case("C6", 3, one(1));
    // Sign module of S3 over GF(3).
    h1_case("S3", 3, vec![vec![vec![1]], vec![vec![2]]]);
    // C2 acting on GF(2)^2 by swapping coordinates.
    h1_case("C2", 2, vec![vec![vec![0, 1], vec![1, 0]]]);
}

#[test]
fn h1_matches_on_chief_factor_modules() {
    for expr in ["S3", "A4", "S4", "Dih4", "Dih5", "EX2B(1)", "SD(C7, C3, [g1 -> [g1^2]])"] {
        let g = build(expr, &limits()).unwrap();
        let a = Analysis::new(&g, &limits()).unwrap();
        let b = Brute::new(&g);
        for f in a.chief_series().unwrap().factors.iter().filter(|f| f.is_abelian()) {
            let m = GfpModule::from_factor(a.table(), f).unwrap();
            let rows: Vec<Vec<Vec<u32>>> = m.matrices.iter().map(|x| x.to_rows()).collect();
            assert_eq!(
                h1_dimension(&g, &m, &limits()).unwrap(),
                common::h1_brute(&b, m.prime, m.dim, &rows),
                "{expr}"
            );
        }
    }
}
