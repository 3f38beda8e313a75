//! The worked examples used throughout the tests: linear `A_n`, the 3-cycle with
//! one zero relation, commutative ladders, and cyclic quivers with non-overlapping
//! monomial relations.

use crate::algebra::{AlgebraPresentation, Quiver, Relation};
use crate::linalg::Field;

pub const DEFAULT_PRIME: u64 = 101;

fn field(p: u64) -> Field {
    Field::prime(p).expect("corpus prime")
}

/// Linearly oriented `A_n` with vertices `1..n`, no relations.
pub fn linear_a(n: usize, p: u64) -> AlgebraPresentation {
    let mut q = Quiver::new();
    for i in 1..=n {
        q.add_vertex(&i.to_string()).unwrap();
    }
    for i in 1..n {
        q.add_arrow(&format!("a{i}"), i - 1, i).unwrap();
    }
    AlgebraPresentation::new(field(p), q, vec![]).unwrap()
}

/// `alpha: 1 -> 2`, `beta: 2 -> 3`, `gamma: 3 -> 1` with `alpha*beta = 0`.
pub fn three_cycle(p: u64) -> AlgebraPresentation {
    let mut q = Quiver::new();
    for v in ["1", "2", "3"] {
        q.add_vertex(v).unwrap();
    }
    q.add_arrow("alpha", 0, 1).unwrap();
    q.add_arrow("beta", 1, 2).unwrap();
    q.add_arrow("gamma", 2, 0).unwrap();
    let r = Relation::monomial(q.parse_path("alpha*beta").unwrap());
    AlgebraPresentation::new(field(p), q, vec![r]).unwrap()
}

/// The `2 x n` grid `A_i -> A_{i+1}`, `B_i -> B_{i+1}`, `A_i -> B_i` with all squares commuting.
pub fn ladder(n: usize, p: u64) -> AlgebraPresentation {
    assert!(n >= 1);
    let f = field(p);
    let mut q = Quiver::new();
    for i in 1..=n {
        q.add_vertex(&format!("A{i}")).unwrap();
    }
    for i in 1..=n {
        q.add_vertex(&format!("B{i}")).unwrap();
    }
    for i in 1..n {
        q.add_arrow(&format!("a{i}"), i - 1, i).unwrap();
    }
    for i in 1..n {
        q.add_arrow(&format!("b{i}"), n + i - 1, n + i).unwrap();
    }
    for i in 1..=n {
        q.add_arrow(&format!("v{i}"), i - 1, n + i - 1).unwrap();
    }
    let rels = (1..n)
        .map(|i| {
            let top = q.parse_path(&format!("a{i}*v{}", i + 1)).unwrap();
            let bot = q.parse_path(&format!("v{i}*b{i}")).unwrap();
            Relation::new(vec![(1, top), (f.neg(1), bot)])
        })
        .collect();
    AlgebraPresentation::new(f, q, rels).unwrap()
}

/// Cyclic quiver on `0..=n` with `alpha_k: k-1 -> k` and `alpha_0: n -> 0`, and the
/// relations `alpha_r * ... * alpha_s` for each `(r, s)` in `segments`.
pub fn cyclic(n: usize, segments: &[(usize, usize)], p: u64) -> AlgebraPresentation {
    let mut q = Quiver::new();
    for v in 0..=n {
        q.add_vertex(&v.to_string()).unwrap();
    }
    q.add_arrow("alpha0", n, 0).unwrap();
    for k in 1..=n {
        q.add_arrow(&format!("alpha{k}"), k - 1, k).unwrap();
    }
    let rels = segments
        .iter()
        .map(|&(r, s)| {
            let path: Vec<String> = (r..=s).map(|k| format!("alpha{k}")).collect();
            Relation::monomial(q.parse_path(&path.join("*")).unwrap())
        })
        .collect();
    AlgebraPresentation::new(field(p), q, rels).unwrap()
}

/// Relation segments of the cyclic corpus algebras, keyed by `(n, l)`.
pub fn cyclic_segments(n: usize, l: usize) -> Vec<(usize, usize)> {
    match (n, l) {
        (2, 1) => vec![(1, 2)],
        (4, 1) => vec![(2, 4)],
        (5, 2) => vec![(1, 2), (4, 5)],
        _ => panic!("no corpus entry for cyclic ({n}, {l})"),
    }
}

/// Every corpus algebra with a stable name.
pub fn all(p: u64) -> Vec<(String, AlgebraPresentation)> {
    let mut out = vec![
        ("a2".to_string(), linear_a(2, p)),
        ("a3".to_string(), linear_a(3, p)),
        ("three_cycle".to_string(), three_cycle(p)),
    ];
    for n in 2..=5 {
        out.push((format!("ladder{n}"), ladder(n, p)));
    }
    for (n, l) in [(2, 1), (4, 1), (5, 2)] {
        out.push((format!("cyclic_{n}_{l}"), cyclic(n, &cyclic_segments(n, l), p)));
    }
    out
}
