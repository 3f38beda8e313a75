use std::sync::Arc;

use orbitcat_core::algebra::{ext, simple, Algebra};
use orbitcat_core::corpus;
use orbitcat_core::density::*;
use orbitcat_core::error::Error;
use orbitcat_core::gradability::{brute_force_grading, is_gradable, Gradability};
use orbitcat_core::repr::is_rigid;
use orbitcat_core::tilde::{build_tilde, GradedAlgebra, DEFAULT_DEGREE_CAP};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build(p: orbitcat_core::algebra::AlgebraPresentation) -> Arc<Algebra> {
    Arc::new(Algebra::new(&p).unwrap())
}

fn graded(a: &Arc<Algebra>) -> GradedAlgebra {
    build_tilde(a, DEFAULT_DEGREE_CAP).unwrap()
}

fn zigzag_of(g: &GradedAlgebra) -> ZigzagData {
    let c = &g.base.quiver().simple_cycles()[0];
    match cycle_cover(g, c).unwrap() {
        Cover::Zigzag(z) => z,
        Cover::Failure(d) => panic!("{d}"),
    }
}

#[test]
fn relation_pairs_match_ext_table() {
    let a2 = build(corpus::linear_a(2, 101));
    assert!(minimal_relation_pairs(&a2).unwrap().is_empty());
    let tc = build(corpus::three_cycle(101));
    assert_eq!(minimal_relation_pairs(&tc).unwrap(), vec![(0, 2, 1)]);
    let l2 = build(corpus::ladder(2, 101));
    assert_eq!(minimal_relation_pairs(&l2).unwrap().len(), 1);
    for (name, p) in corpus::all(101) {
        let a = build(p);
        let pairs = minimal_relation_pairs(&a).unwrap();
        let nv = a.num_vertices();
        let mut count = 0;
        for i in 0..nv {
            for j in 0..nv {
                let d = ext(&simple(&a, i).unwrap(), &simple(&a, j).unwrap(), 2).unwrap().dim;
                count += d;
                assert_eq!(pairs.iter().any(|&(x, y, e)| (x, y, e) == (i, j, d)), d > 0, "{name}");
            }
        }
        assert_eq!(count, a.minimal_relations().len(), "{name}");
    }
}

#[test]
fn relations_on_paths() {
    let tc = build(corpus::three_cycle(101));
    let q = tc.quiver();
    let (al, be, ga) = (q.arrow_index("alpha").unwrap(), q.arrow_index("beta").unwrap(), q.arrow_index("gamma").unwrap());
    assert_eq!(find_relation_on_path(&tc, &[al, be]).unwrap(), RelationOnPath { start: 0, end: 2, relation: 0 });
    assert_eq!(find_relation_on_path(&tc, &[al, be, ga]).unwrap(), RelationOnPath { start: 0, end: 2, relation: 0 });
    assert_eq!(find_relation_on_path(&tc, &[ga, al, be]).unwrap(), RelationOnPath { start: 1, end: 3, relation: 0 });
    assert!(matches!(find_relation_on_path(&tc, &[be, ga]), Err(Error::PathNotVanishing(_))));
}

#[test]
fn covers_of_corpus_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (name, l) in [("three_cycle", 1), ("cyclic_2_1", 1), ("cyclic_4_1", 1), ("cyclic_5_2", 2)] {
        let a = build(corpus::all(101).into_iter().find(|(n, _)| n == name).unwrap().1);
        let g = graded(&a);
        let z = zigzag_of(&g);
        assert_eq!(z.len(), l, "{name}");
        for s in &z.sequences {
            assert!(s.verify(&a).unwrap() && s.len() <= g.top_degree, "{name}");
        }
        let r = verify_zigzag(&g, &z, &mut rng).unwrap();
        assert!(r.all_pass(), "{name}: {r:?}");
    }
}

#[test]
fn corrupted_zigzag_fails() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in ["three_cycle", "cyclic_5_2"] {
        let a = build(corpus::all(101).into_iter().find(|(n, _)| n == name).unwrap().1);
        let g = graded(&a);
        let z = zigzag_of(&g);
        // the zero map factors through anything
        let mut bad = z.clone();
        bad.f[0] = g.tilde.zero();
        let r = verify_zigzag(&g, &bad, &mut rng).unwrap();
        assert!(!r.f_not_factoring[0] && !r.all_pass(), "{name}");
        assert!(r.local, "{name}");
        // a degree-1 map in place of f
        let mut bad = z.clone();
        bad.f[0] = z.g[0].clone();
        assert!(!verify_zigzag(&g, &bad, &mut rng).unwrap().degrees_match, "{name}");
    }
}

#[test]
fn three_cycle_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let a = build(corpus::three_cycle(5));
    let g = graded(&a);
    let z = zigzag_of(&g);
    let t = &g.tilde;
    assert!(matches!(wrap_witness(t, &ZigzagData { p: vec![], ..z.clone() }, 1), Err(Error::InvalidInput(_))));
    let w = wrap_witness(t, &z, 1).unwrap();
    eprintln!("witness dims {:?}", w.dims());
    assert!(w.dim() <= 4);
    assert!(!is_gradable(&w, &mut rng).unwrap().is_gradable());
    assert!(brute_force_grading(&w, 1 << 16, &mut rng).unwrap().is_none());
    assert!(!is_rigid(&w).unwrap());
    let c = unwrapped_witness(t, &z, 1).unwrap();
    assert!(is_gradable(&c, &mut rng).unwrap().is_gradable());
    assert!(brute_force_grading(&c, 1 << 16, &mut rng).unwrap().is_some());
    // the presentation map is stuck in the homogenization loop
    let pres = zigzag_presentation(t, &z, 1, true).unwrap();
    assert!(matches!(
        orbitcat_core::gradability::homogenize_map(t, &pres).unwrap(),
        orbitcat_core::gradability::Homogenization::Stuck(_)
    ));
}

#[test]
fn certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, p) in corpus::all(101) {
        let a = build(p);
        let out = certify_not_dense(&a, &mut rng).unwrap();
        eprintln!("{name}: {}", match &out {
            DensityOutcome::Certificate(c) => format!("certificate, witness dims {:?}", c.witness.dims()),
            DensityOutcome::NoCycleFound => "no cycle".into(),
            DensityOutcome::Inconclusive(d) => format!("inconclusive {d:?}"),
        });
        if a.quiver().is_acyclic() {
            assert!(matches!(out, DensityOutcome::NoCycleFound), "{name}");
            continue;
        }
        let DensityOutcome::Certificate(c) = out else { panic!("{name}: no certificate") };
        assert!(c.is_valid());
        // a fresh run of the gradability test agrees
        let mut fresh = ChaCha8Rng::seed_from_u64(99);
        match is_gradable(&c.witness, &mut fresh).unwrap().decision {
            Gradability::NotGradable { .. } => {}
            _ => panic!("{name}: witness graded on rerun"),
        }
        for period in 2..=3 {
            let w = wrap_witness(&c.witness.algebra().clone(), &c.zigzag, period).unwrap();
            assert!(!is_gradable(&w, &mut rng).unwrap().is_gradable(), "{name} period {period}");
            let u = unwrapped_witness(&c.witness.algebra().clone(), &c.zigzag, period).unwrap();
            assert!(is_gradable(&u, &mut rng).unwrap().is_gradable(), "{name} period {period}");
        }
    }
}
