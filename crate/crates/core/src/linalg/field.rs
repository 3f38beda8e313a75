//! Finite fields GF(p^m).
//!
//! Elements are plain `u64` values. For a prime field they are the residues
//! `0..p`; for an extension they encode the coefficients of a polynomial in
//! base `p` (least significant digit = constant term), reduced modulo a
//! fixed irreducible modulus. The prime subfield is therefore embedded as
//! the constants `0..p`, which lets prime-field data be reused verbatim over
//! any extension.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element. Only meaningful together with its [`Field`].
pub type Elem = u64;

/// Largest field order for which log/exp tables are built.
const TABLE_LIMIT: u64 = 1 << 22;

/// Upper bound on the field order (keeps every element in a machine word).
pub const MAX_ORDER: u64 = 1 << 62;

#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus of degree `m`, low-to-high coefficients. `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

struct Tables {
    /// `exp[i] = x^i` for `i < 2(q-1)`.
    exp: Vec<u64>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.m)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Distinct prime divisors by trial division.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_ORDER {
            return Err(Error::ExtensionTooLarge { p, m: 1 });
        }
        Ok(Field {
            inner: Arc::new(Inner { p, m: 1, q: p, modulus: vec![0, 1], tables: None }),
        })
    }

    /// GF(p^m) with the lexicographically first suitable monic modulus of degree `m`.
    ///
    /// When tables are affordable the modulus is also primitive, so `x` generates
    /// the multiplicative group.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        if m == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        let base = Field::prime(p)?;
        if m == 1 {
            return Ok(base);
        }
        let q = checked_order(p, m).ok_or(Error::ExtensionTooLarge { p, m })?;
        let want_primitive = q <= TABLE_LIMIT;
        let modulus = find_modulus(&base, m, q, want_primitive);
        Self::with_modulus(p, m, modulus)
    }

    /// GF(p^m) for an explicit monic modulus, which is checked for irreducibility.
    pub fn with_modulus(p: u64, m: u32, modulus: Vec<u64>) -> Result<Field> {
        let base = Field::prime(p)?;
        if modulus.len() != m as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidInput("modulus must be monic of the stated degree".into()));
        }
        if m == 1 {
            return Ok(base);
        }
        let q = checked_order(p, m).ok_or(Error::ExtensionTooLarge { p, m })?;
        let poly = super::poly::Poly::from_coeffs(&base, modulus.clone());
        if !poly.is_irreducible(&base) {
            return Err(Error::InvalidInput(format!("modulus {poly:?} is reducible over GF({p})")));
        }
        let mut inner = Inner { p, m, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            inner.tables = build_tables(&inner);
        }
        Ok(Field { inner: Arc::new(inner) })
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.m == 1
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, v: i64) -> Elem {
        let p = self.inner.p as i128;
        (((v as i128) % p + p) % p) as u64
    }

    /// Encodes a coefficient vector (low-to-high) as an element.
    pub fn from_digits(&self, digits: &[u64]) -> Elem {
        assert!(digits.len() <= self.inner.m as usize);
        let p = self.inner.p;
        digits.iter().rev().fold(0u64, |acc, &d| acc * p + d % p)
    }

    pub fn digits(&self, a: Elem) -> Vec<u64> {
        let p = self.inner.p;
        let mut a = a;
        (0..self.inner.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    /// The element `x` (a root of the modulus); the primitive candidate for extensions.
    pub fn generator_candidate(&self) -> Elem {
        if self.inner.m == 1 {
            // smallest primitive root
            let p = self.inner.p;
            if p == 2 {
                return 1;
            }
            let ps = prime_divisors(p - 1);
            (2..p).find(|&g| ps.iter().all(|&l| self.pow(g, (p - 1) / l) != 1)).unwrap()
        } else {
            self.inner.p
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.p;
        if self.inner.m == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0u64;
            let mut place = 1u64;
            while a > 0 || b > 0 {
                let d = (a % p + b % p) % p;
                out += d * place;
                a /= p;
                b /= p;
                place = place.wrapping_mul(p);
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.inner.p;
        if self.inner.m == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else {
            let mut a = a;
            let mut out = 0u64;
            let mut place = 1u64;
            while a > 0 {
                let d = a % p;
                out += ((p - d) % p) * place;
                a /= p;
                place = place.wrapping_mul(p);
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if self.inner.m == 1 {
            let p = self.inner.p;
            if a >= b {
                a - b
            } else {
                a + p - b
            }
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.inner.m == 1 {
            let p = self.inner.p;
            if p < (1 << 32) {
                (a * b) % p
            } else {
                ((a as u128 * b as u128) % p as u128) as u64
            }
        } else if let Some(t) = &self.inner.tables {
            t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize]
        } else {
            self.mul_slow(a, b)
        }
    }

    /// `a + b*c`
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(a, self.mul(b, c))
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.p;
        let m = self.inner.m as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p as u128;
            }
        }
        let mut prod: Vec<u64> = prod.into_iter().map(|v| v as u64).collect();
        let md = &self.inner.modulus;
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // subtract c * x^(k-m) * modulus
            for (i, &md_i) in md.iter().enumerate().take(m) {
                let idx = k - m + i;
                prod[idx] = ((prod[idx] as u128 + (p - c) as u128 * md_i as u128) % p as u128) as u64;
            }
            prod[k] = 0;
        }
        self.from_digits(&prod[..m])
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero in {self:?}");
        if let Some(t) = &self.inner.tables {
            let q1 = self.inner.q - 1;
            let l = t.log[a as usize] as u64;
            t.exp[((q1 - l) % q1) as usize]
        } else {
            self.pow(a, self.inner.q - 2)
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// Multiplicative order of a nonzero element, searching at most `limit` powers.
    /// Returns `None` if the order exceeds `limit`.
    pub fn order_up_to(&self, a: Elem, limit: u64) -> Option<u64> {
        assert!(a != 0);
        let mut x = a;
        for k in 1..=limit {
            if x == 1 {
                return Some(k);
            }
            x = self.mul(x, a);
        }
        None
    }

    /// Exact multiplicative order, using the factorization of `q - 1`.
    pub fn order_of(&self, a: Elem) -> u64 {
        assert!(a != 0);
        let mut ord = self.inner.q - 1;
        for l in prime_divisors(ord) {
            while ord % l == 0 && self.pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        ord
    }

    /// Iterator over all elements (only sensible for small fields).
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.q
    }
}

fn checked_order(p: u64, m: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.checked_mul(p)?;
    }
    (q < MAX_ORDER).then_some(q)
}

fn find_modulus(base: &Field, m: u32, q: u64, primitive: bool) -> Vec<u64> {
    use super::poly::Poly;
    let p = base.characteristic();
    let q1_divs = if primitive { prime_divisors(q - 1) } else { Vec::new() };
    // enumerate low coefficients lexicographically (as base-p counter over m digits)
    let mut low = vec![0u64; m as usize];
    low[0] = 1;
    loop {
        let mut coeffs = low.clone();
        coeffs.push(1);
        let f = Poly::from_coeffs(base, coeffs.clone());
        if f.is_irreducible(base) {
            let ok = !primitive || {
                let x = Poly::x();
                q1_divs.iter().all(|&l| !x.pow_mod(base, (q - 1) / l, &f).is_one())
            };
            if ok {
                return coeffs;
            }
        }
        // increment counter
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
            assert!(i < m as usize, "no irreducible polynomial found");
        }
    }
}

fn build_tables(inner: &Inner) -> Option<Tables> {
    let q = inner.q;
    let p = inner.p;
    let m = inner.m as usize;
    let n = (q - 1) as usize;
    let mut exp = vec![0u64; 2 * n];
    let mut log = vec![0u32; q as usize];
    // x^i as digit vector, multiply by x each step
    let mut cur = vec![0u64; m];
    cur[0] = 1;
    let encode = |d: &[u64]| d.iter().rev().fold(0u64, |acc, &v| acc * p + v);
    for i in 0..n {
        let e = encode(&cur);
        if i > 0 && e == 1 {
            // modulus not primitive; fall back to slow multiplication
            return None;
        }
        exp[i] = e;
        log[e as usize] = i as u32;
        // multiply by x
        let top = cur[m - 1];
        for k in (1..m).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for k in 0..m {
                cur[k] = (cur[k] + (p - top) * inner.modulus[k] % p) % p;
            }
        }
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    Some(Tables { exp, log })
}

/// A field embedding `from -> to`, determined by the image of the generator `x`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub from: Field,
    pub to: Field,
    image_of_x: Elem,
}

impl Embedding {
    /// Finds an embedding of `from` into `to`; both must have the same
    /// characteristic and `deg from | deg to`.
    pub fn find(from: &Field, to: &Field) -> Result<Embedding> {
        if from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0 {
            return Err(Error::InvalidInput(format!("{from:?} does not embed into {to:?}")));
        }
        if from.is_prime_field() {
            return Ok(Embedding { from: from.clone(), to: to.clone(), image_of_x: 0 });
        }
        if from == to {
            return Ok(Embedding { from: from.clone(), to: to.clone(), image_of_x: from.generator_candidate() });
        }
        let f = super::poly::Poly::from_coeffs(to, from.modulus().to_vec());
        let roots = f.roots(to);
        let r = *roots.first().ok_or_else(|| Error::InvalidInput("modulus has no root in target".into()))?;
        Ok(Embedding { from: from.clone(), to: to.clone(), image_of_x: r })
    }

    /// Every embedding of `from` into `to`, one per root of the modulus of `from`.
    pub fn all(from: &Field, to: &Field) -> Result<Vec<Embedding>> {
        let first = Embedding::find(from, to)?;
        if from.is_prime_field() {
            return Ok(vec![first]);
        }
        let f = super::poly::Poly::from_coeffs(to, from.modulus().to_vec());
        Ok(f.roots(to).into_iter().map(|r| Embedding { from: from.clone(), to: to.clone(), image_of_x: r }).collect())
    }

    pub fn map(&self, a: Elem) -> Elem {
        if self.from.is_prime_field() {
            return a;
        }
        let d = self.from.digits(a);
        let mut acc = 0;
        for &c in d.iter().rev() {
            acc = self.to.add(self.to.mul(acc, self.image_of_x), c);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.from == self.to
    }
}
