//! Dense univariate polynomials over a [`Field`] and their factorization
//! (squarefree decomposition, distinct-degree, Cantor–Zassenhaus).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{prime_divisors, Elem, Field};
use crate::error::{Error, Result};

/// Coefficients low-to-high, with no trailing zeros. The zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}x")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { c: vec![1] }
    }

    pub fn x() -> Poly {
        Poly { c: vec![0, 1] }
    }

    pub fn constant(a: Elem) -> Poly {
        Poly::from_raw(vec![a])
    }

    /// `x - a`
    pub fn linear(f: &Field, a: Elem) -> Poly {
        Poly { c: vec![f.neg(a), 1] }
    }

    pub fn from_coeffs(_f: &Field, c: Vec<Elem>) -> Poly {
        Poly::from_raw(c)
    }

    fn from_raw(mut c: Vec<Elem>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Elem {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let li = f.inv(self.leading());
        self.scale(f, li)
    }

    pub fn scale(&self, f: &Field, s: Elem) -> Poly {
        Poly::from_raw(self.c.iter().map(|&a| f.mul(a, s)).collect())
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| f.add(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        Poly::from_raw(v)
    }

    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| f.sub(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        Poly::from_raw(v)
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = f.mul_add(v[i + j], a, b);
            }
        }
        Poly::from_raw(v)
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn divrem(&self, f: &Field, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut qv = vec![0; r.len() - dd];
        let li = f.inv(d.leading());
        for k in (dd..r.len()).rev() {
            let coef = f.mul(r[k], li);
            if coef == 0 {
                continue;
            }
            qv[k - dd] = coef;
            for (i, &di) in d.c.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = f.sub(r[idx], f.mul(coef, di));
            }
        }
        r.truncate(dd);
        (Poly::from_raw(qv), Poly::from_raw(r))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, f: &Field, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn mul_mod(&self, f: &Field, o: &Poly, m: &Poly) -> Poly {
        self.mul(f, o).rem(f, m)
    }

    pub fn pow_mod(&self, f: &Field, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = Poly::one().rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(f, &base, m);
            }
            base = base.mul_mod(f, &base, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, f: &Field, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(f, self))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::from_raw(
            self.c.iter().enumerate().skip(1).map(|(i, &a)| f.mul(a, f.from_i64(i as i64))).collect(),
        )
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    /// Rabin's irreducibility test over `f` (positive degree required).
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let g = self.monic(f);
        let q = f.order();
        let x = Poly::x();
        // frob[k] = x^(q^k) mod g
        let mut frob = vec![x.rem(f, &g)];
        for k in 1..=n {
            let next = frob[k - 1].pow_mod(f, q, &g);
            frob.push(next);
        }
        if frob[n] != x.rem(f, &g) {
            return false;
        }
        for l in prime_divisors(n as u64) {
            let k = n / l as usize;
            let h = frob[k].sub(f, &x);
            if !h.gcd(f, &g).is_one() {
                return false;
            }
        }
        true
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self, f: &Field) -> Poly {
        let p = f.characteristic() as usize;
        let e = f.order() / f.characteristic();
        Poly::from_raw(self.c.iter().step_by(p).map(|&a| f.pow(a, e)).collect())
    }

    fn squarefree_decomposition(&self, f: &Field) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let fm = self.monic(f);
        if fm.deg_or_zero() == 0 {
            return out;
        }
        let d = fm.derivative(f);
        let mut c = fm.gcd(f, &d);
        let mut w = fm.divrem(f, &c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(f, &c);
            let z = w.divrem(f, &y).0;
            if !z.is_one() {
                out.push((z.monic(f), i));
            }
            i += 1;
            w = y;
            c = c.divrem(f, &w).0;
        }
        if !c.is_one() {
            let r = c.pth_root(f);
            let p = f.characteristic() as usize;
            for (g, m) in r.squarefree_decomposition(f) {
                out.push((g, m * p));
            }
        }
        out
    }

    fn distinct_degree(&self, f: &Field) -> Vec<(Poly, usize)> {
        let mut g = self.monic(f);
        let mut out = Vec::new();
        let q = f.order();
        let x = Poly::x();
        let mut h = x.rem(f, &g);
        let mut d = 1;
        while g.deg_or_zero() >= 2 * d {
            h = h.pow_mod(f, q, &g);
            let t = g.gcd(f, &h.sub(f, &x));
            if !t.is_one() {
                g = g.divrem(f, &t).0;
                h = h.rem(f, &g);
                out.push((t, d));
            }
            d += 1;
        }
        if g.deg_or_zero() > 0 {
            let n = g.deg_or_zero();
            out.push((g, n));
        }
        out
    }

    fn equal_degree<R: Rng>(&self, f: &Field, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
        let n = self.deg_or_zero();
        if n == 0 {
            return;
        }
        if n == d {
            out.push(self.monic(f));
            return;
        }
        let q = f.order();
        loop {
            let a = Poly::from_raw((0..n).map(|_| rng.gen_range(0..q)).collect());
            if a.deg_or_zero() == 0 {
                continue;
            }
            let b = if q % 2 == 1 {
                // a^((q^d - 1)/2) = (a^(1+q+...+q^(d-1)))^((q-1)/2)
                let mut t = a.rem(f, self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.pow_mod(f, q, self);
                    acc = acc.mul_mod(f, &t, self);
                }
                acc.pow_mod(f, (q - 1) / 2, self).sub(f, &Poly::one())
            } else {
                // absolute trace to GF(2)
                let bits = f.degree() as usize * d;
                let mut t = a.rem(f, self);
                let mut acc = t.clone();
                for _ in 1..bits {
                    t = t.mul_mod(f, &t, self);
                    acc = acc.add(f, &t);
                }
                acc
            };
            let g = self.gcd(f, &b);
            let gd = g.deg_or_zero();
            if gd > 0 && gd < n {
                let h = self.divrem(f, &g).0;
                g.equal_degree(f, d, rng, out);
                h.equal_degree(f, d, rng, out);
                return;
            }
        }
    }

    /// Factorization into monic irreducibles with multiplicities, using an explicit generator.
    pub fn factor_with<R: Rng>(&self, f: &Field, rng: &mut R) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for (sq, mult) in self.squarefree_decomposition(f) {
            for (part, d) in sq.distinct_degree(f) {
                let mut irr = Vec::new();
                part.equal_degree(f, d, rng, &mut irr);
                out.extend(irr.into_iter().map(|g| (g, mult)));
            }
        }
        out.sort_by(|a, b| (a.0.c.len(), &a.0.c).cmp(&(b.0.c.len(), &b.0.c)));
        Ok(out)
    }

    /// Factorization with a fixed internal seed, so results are reproducible.
    pub fn factor(&self, f: &Field) -> Result<Vec<(Poly, usize)>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        self.factor_with(f, &mut rng)
    }

    /// Distinct roots in `f`.
    pub fn roots(&self, f: &Field) -> Vec<Elem> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots: Vec<Elem> = self
            .factor(f)
            .unwrap()
            .into_iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| f.neg(g.c[0]))
            .collect();
        roots.sort_unstable();
        roots
    }
}

/// Factorization of a nonzero polynomial: irreducible monic factors with multiplicities.
pub fn factor_poly(f: &Field, p: &Poly) -> Result<Vec<(Poly, usize)>> {
    p.factor(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remultiply(f: &Field, fs: &[(Poly, usize)]) -> Poly {
        fs.iter().fold(Poly::one(), |acc, (g, m)| acc.mul(f, &g.pow(f, *m as u32)))
    }

    #[test]
    fn difference_of_squares_over_gf5() {
        let f = Field::prime(5).unwrap();
        let p = Poly::from_coeffs(&f, vec![f.from_i64(-1), 0, 1]);
        let fs = p.factor(&f).unwrap();
        assert_eq!(fs, vec![(Poly::linear(&f, 4), 1), (Poly::linear(&f, 1), 1)]);
    }

    #[test]
    fn x_is_its_own_factor() {
        let f = Field::prime(7).unwrap();
        assert_eq!(Poly::x().factor(&f).unwrap(), vec![(Poly::x(), 1)]);
    }

    #[test]
    fn cubic_over_gf2_is_irreducible() {
        let f = Field::prime(2).unwrap();
        let p = Poly::from_coeffs(&f, vec![1, 1, 0, 1]);
        // brute-force oracle: no roots, and a cubic without roots has no divisors
        assert!((0..2).all(|a| p.eval(&f, a) != 0));
        assert!(p.is_irreducible(&f));
        assert_eq!(p.factor(&f).unwrap(), vec![(p.clone(), 1)]);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f = Field::prime(3).unwrap();
        // (x+1)^3 (x^2+1)^2 x
        let a = Poly::linear(&f, 2).pow(&f, 3);
        let b = Poly::from_coeffs(&f, vec![1, 0, 1]).pow(&f, 2);
        let p = a.mul(&f, &b).mul(&f, &Poly::x());
        let fs = p.factor(&f).unwrap();
        assert_eq!(remultiply(&f, &fs), p);
        assert!(fs.iter().all(|(g, _)| g.is_irreducible(&f)));
        assert!(fs.contains(&(Poly::linear(&f, 2), 3)));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let f = Field::prime(5).unwrap();
        assert!(matches!(Poly::zero().factor(&f), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn factor_over_extension_field() {
        let f = Field::new(2, 3).unwrap();
        // x^8 - x splits into all linear factors over GF(8)
        let mut c = vec![0u64; 9];
        c[1] = 1;
        c[8] = 1;
        let p = Poly::from_coeffs(&f, c);
        let fs = p.factor(&f).unwrap();
        assert_eq!(fs.len(), 8);
        assert!(fs.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn factors_remultiply(coeffs in proptest::collection::vec(0u64..7, 1..12), lead in 1u64..7) {
                let f = Field::prime(7).unwrap();
                let mut c = coeffs;
                c.push(lead);
                let p = Poly::from_coeffs(&f, c);
                let fs = p.factor(&f).unwrap();
                prop_assert_eq!(remultiply(&f, &fs), p.monic(&f));
                for (g, _) in &fs {
                    prop_assert!(g.is_irreducible(&f));
                }
            }
        }
    }
}
