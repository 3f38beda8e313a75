//! Finite fields, polynomials and dense linear algebra.

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{is_prime, next_prime, Elem, Embedding, Field, MAX_ORDER};
pub use matrix::{solve_system, AffineSolution, Echelon, Matrix};
pub use poly::{factor_poly, Poly};

use crate::error::{Error, Result};

/// An element of multiplicative order greater than `bound`, in `f` itself if
/// possible and otherwise in the smallest extension `GF(p^k)` (`k` a multiple
/// of `deg f`) that has one. Returns the field, the element and its order,
/// plus the embedding of `f` into the returned field.
pub fn element_of_order_exceeding(f: &Field, bound: u64) -> Result<(Field, Elem, u64, Embedding)> {
    let p = f.characteristic();
    let m = f.degree();
    let mut k = m;
    loop {
        let big = if k == m { f.clone() } else { Field::new(p, k)? };
        if big.order() - 1 > bound {
            let g = big.generator_candidate();
            let ord = big.order_of(g);
            if ord > bound {
                let emb = Embedding::find(f, &big)?;
                return Ok((big, g, ord, emb));
            }
            // generator candidate might not be primitive for untabled fields: scan
            if let Some(a) = (2..big.order().min(1 << 16)).find(|&a| big.order_of(a) > bound) {
                let ord = big.order_of(a);
                let emb = Embedding::find(f, &big)?;
                return Ok((big, a, ord, emb));
            }
        }
        k += m;
        if k > 64 {
            return Err(Error::SplittingFieldTooLarge { p, m: k as u64 });
        }
    }
}
