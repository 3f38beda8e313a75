//! Zigzags of graded projectives built from an oriented cycle.
//!
//! The cycle is cut into segments alternating between paths with nonzero product
//! (giving degree-0 maps `f_i`) and chains of minimal relations (giving products of
//! degree-1 arrows `g_i`).

use std::sync::Arc;

use rand::Rng;

use super::relations::{find_relation_on_path, relation_with_summand, RelationSequence};
use crate::algebra::{projective, Algebra, Path};
use crate::error::Result;
use crate::linalg::{Echelon, Elem};
use crate::repr::is_local;
use crate::tilde::GradedAlgebra;

/// `A_i = P_{p[i]}<offsets[i]>`, `B_i = P_{q[i]}<offsets[i]>`, `f_i: A_i -> B_i` of degree 0
/// and `g_i: A_i -> B_{i-1}` of degree `g_degrees[i]`, indices modulo `len`. Elements live
/// in the graded algebra: `f[i]` in `e_{q_i} T e_{p_i}`, `g[i]` in `e_{q_{i-1}} T e_{p_i}`.
#[derive(Clone, Debug)]
pub struct ZigzagData {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub f: Vec<Vec<Elem>>,
    pub g: Vec<Vec<Elem>>,
    pub f_paths: Vec<Vec<usize>>,
    pub g_paths: Vec<Vec<usize>>,
    pub g_degrees: Vec<usize>,
    pub offsets: Vec<i64>,
    pub sequences: Vec<RelationSequence>,
}

impl ZigzagData {
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Total degree of one period.
    pub fn period_degree(&self) -> i64 {
        self.g_degrees.iter().sum::<usize>() as i64
    }

    /// Offset of `A_i`, `B_i` for any integer `i`.
    pub fn offset(&self, i: i64) -> i64 {
        let l = self.len() as i64;
        self.offsets[i.rem_euclid(l) as usize] + i.div_euclid(l) * self.period_degree()
    }
}

#[derive(Clone, Debug)]
pub enum Cover {
    Zigzag(ZigzagData),
    Failure(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct RelArc {
    start: usize,
    len: usize,
    rel: usize,
}

#[derive(Clone, Debug)]
enum Item {
    /// Uncovered segment `(start, len)` in unrolled positions.
    Free(usize, usize),
    Chain(Vec<RelArc>),
}

struct Walk<'a> {
    base: &'a Algebra,
    cycle: &'a [usize],
    arcs: Vec<RelArc>,
}

impl Walk<'_> {
    fn n(&self) -> usize {
        self.cycle.len()
    }

    fn seg(&self, s: usize, len: usize) -> Vec<usize> {
        (0..len).map(|k| self.cycle[(s + k) % self.n()]).collect()
    }

    fn vertex(&self, pos: usize) -> usize {
        self.base.quiver().arrow(self.cycle[pos % self.n()]).source
    }

    fn vanishes(&self, s: usize, len: usize) -> bool {
        let p = Path::new(self.base.quiver(), self.seg(s, len)).expect("cycle segment");
        self.base.path_element(&p).iter().all(|&c| c == 0)
    }

    /// Extends `[x, y]` by arcs within `[lo, hi]` keeping `y - x <= span`; positions are unrolled.
    fn extend(&self, mut chain: Vec<RelArc>, lo: usize, hi: usize, span: usize) -> Vec<RelArc> {
        let n = self.n();
        loop {
            let (x, y) = (chain[0].start, chain[chain.len() - 1].start + chain[chain.len() - 1].len);
            let fwd = self.arcs.iter().find(|a| a.start == y % n && y + a.len <= hi && y + a.len - x <= span);
            if let Some(a) = fwd {
                chain.push(RelArc { start: y, ..*a });
                continue;
            }
            let back = self.arcs.iter().find(|a| (a.start + a.len) % n == x % n && x >= lo + a.len && y + a.len - x <= span);
            if let Some(a) = back {
                chain.insert(0, RelArc { start: x - a.len, ..*a });
                continue;
            }
            return chain;
        }
    }
}

fn chain_span(c: &[RelArc]) -> (usize, usize) {
    (c[0].start, c[c.len() - 1].start + c[c.len() - 1].len)
}

/// Runs the covering argument on an oriented cycle (arrow list) of the base quiver.
pub fn cycle_cover(g: &GradedAlgebra, cycle: &[usize]) -> Result<Cover> {
    let base = g.base.as_ref();
    let n = cycle.len();
    let top = g.top_degree;
    let mut walk = Walk { base, cycle, arcs: Vec::new() };
    for s in 0..n {
        for len in 2..=n {
            if let Some(rel) = relation_with_summand(base, &walk.seg(s, len)) {
                walk.arcs.push(RelArc { start: s, len, rel });
            }
        }
    }
    // a vanishing power of the cycle carries a first relation
    let mut power = Vec::new();
    let mut found = None;
    for _ in 0..=base.dim() {
        power.extend_from_slice(cycle);
        if walk.vanishes(0, power.len()) {
            found = Some(find_relation_on_path(base, &power)?);
            break;
        }
    }
    let Some(r) = found else { return Ok(Cover::Failure("no power of the cycle vanishes".into())) };
    if r.end - r.start > n {
        return Ok(Cover::Failure("the relation on the cycle is longer than the cycle".into()));
    }
    let first = RelArc { start: r.start % n + 2 * n, len: r.end - r.start, rel: r.relation };
    let chain = walk.extend(vec![first], 0, 5 * n, n);
    let (x, y) = chain_span(&chain);
    if y - x >= n {
        return Ok(Cover::Failure("the relations close up around the cycle".into()));
    }
    let mut items = vec![Item::Chain(chain), Item::Free(y, x + n - y)];
    let mut steps = 0;
    while let Some(k) = items.iter().position(|it| matches!(it, Item::Free(s, l) if walk.vanishes(*s, *l))) {
        steps += 1;
        if steps > n * (top + 1) {
            return Ok(Cover::Failure("covering did not finish within the step bound".into()));
        }
        let Item::Free(s, l) = items[k] else { unreachable!() };
        let r = find_relation_on_path(base, &walk.seg(s, l))?;
        let arc = RelArc { start: s + r.start, len: r.end - r.start, rel: r.relation };
        let chain = walk.extend(vec![arc], s, s + l, l);
        let (cx, cy) = chain_span(&chain);
        let mut repl = Vec::new();
        if cx > s {
            repl.push(Item::Free(s, cx - s));
        }
        repl.push(Item::Chain(chain));
        if cy < s + l {
            repl.push(Item::Free(cy, s + l - cy));
        }
        items.splice(k..=k, repl);
        items = merge_chains(items);
    }
    assemble(g, &walk, items)
}

fn merge_chains(items: Vec<Item>) -> Vec<Item> {
    let mut out: Vec<Item> = Vec::new();
    for it in items {
        match (out.last_mut(), it) {
            (Some(Item::Chain(c)), Item::Chain(d)) => c.extend(d),
            (_, it) => out.push(it),
        }
    }
    if out.len() > 1 {
        if let (Item::Chain(_), Item::Chain(_)) = (&out[0], &out[out.len() - 1]) {
            let Some(Item::Chain(last)) = out.pop() else { unreachable!() };
            if let Item::Chain(c) = &mut out[0] {
                let mut joined = last;
                joined.append(c);
                *c = joined;
            }
        }
    }
    out
}

fn assemble(g: &GradedAlgebra, walk: &Walk, mut items: Vec<Item>) -> Result<Cover> {
    let t = &g.tilde;
    let Some(k0) = items.iter().position(|it| matches!(it, Item::Free(..))) else {
        return Ok(Cover::Failure("no segment of the cycle is free of relations".into()));
    };
    items.rotate_left(k0);
    let rho = g.rho_arrows();
    // (free segment, following chain) in cycle order
    let mut pairs = Vec::new();
    for w in items.chunks(2) {
        match w {
            [Item::Free(s, l), Item::Chain(c)] => pairs.push(((*s, *l), c.clone())),
            _ => return Ok(Cover::Failure("segments do not alternate".into())),
        }
    }
    let l = pairs.len();
    let mut z = ZigzagData {
        p: vec![],
        q: vec![],
        f: vec![],
        g: vec![],
        f_paths: vec![],
        g_paths: vec![],
        g_degrees: vec![],
        offsets: vec![],
        sequences: vec![],
    };
    for j in 0..l {
        let ((s, len), chain) = &pairs[(l - j) % l];
        if chain.len() > g.top_degree {
            return Ok(Cover::Failure(format!("a sequence of {} relations exceeds the top degree", chain.len())));
        }
        let fp = walk.seg(*s, *len);
        let gp: Vec<usize> = chain.iter().rev().map(|a| rho[a.rel]).collect();
        let fe = t.path_element(&Path::new(t.quiver(), fp.clone())?);
        let ge = t.path_element(&Path::new(t.quiver(), gp.clone())?);
        if ge.iter().all(|&c| c == 0) {
            return Ok(Cover::Failure("a product of degree-1 arrows vanishes".into()));
        }
        let mut simples = vec![walk.vertex(chain_span(chain).1)];
        simples.extend(chain.iter().rev().map(|a| walk.vertex(a.start)));
        z.p.push(walk.vertex(s + len));
        z.q.push(walk.vertex(*s));
        z.f.push(fe);
        z.g.push(ge);
        z.f_paths.push(fp);
        z.g_degrees.push(chain.len());
        z.g_paths.push(gp);
        z.sequences.push(RelationSequence { simples, relations: chain.iter().rev().map(|a| a.rel).collect() });
    }
    let mut a = 0i64;
    for j in 0..l {
        if j > 0 {
            a += z.g_degrees[j] as i64;
        }
        z.offsets.push(a);
    }
    Ok(Cover::Zigzag(z))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagReport {
    pub local: bool,
    pub f_nonzero_radical: bool,
    /// `f_i` homogeneous of degree 0 and `g_i` of degree `g_degrees[i]`.
    pub degrees_match: bool,
    pub offsets_distinct: bool,
    pub sequences_valid: bool,
    /// `f_i` is not in `Hom(A_i, A_{i+1}) g_{i+1} End(B_i) + End(A_i) g_i Hom(B_{i-1}, B_i)`.
    pub f_not_factoring: Vec<bool>,
    /// `g_i` is not in `End(A_i) f_i Hom(B_i, B_{i-1}) + Hom(A_i, A_{i-1}) f_{i-1} End(B_{i-1})`.
    pub g_not_factoring: Vec<bool>,
}

impl ZigzagReport {
    pub fn all_pass(&self) -> bool {
        self.local
            && self.f_nonzero_radical
            && self.degrees_match
            && self.offsets_distinct
            && self.sequences_valid
            && self.f_not_factoring.iter().all(|&b| b)
            && self.g_not_factoring.iter().all(|&b| b)
    }
}

/// Basis elements of `Hom_gr(P_x<a>, P_y<b>)`, i.e. paths `y -> x` of degree `a - b`.
fn hom_gr(t: &Algebra, x: usize, a: i64, y: usize, b: i64) -> Vec<Vec<Elem>> {
    t.paths_between(y, x).iter().filter(|&&i| t.degree(i) as i64 == a - b).map(|&i| t.unit(i)).collect()
}

/// Whether `target` lies in the span of products `post * mid * pre` over the given bases.
fn in_products(t: &Algebra, target: &[Elem], terms: &[(Vec<Vec<Elem>>, &[Elem], Vec<Vec<Elem>>)]) -> bool {
    let f = t.field();
    let mut ech = Echelon::new(t.dim());
    for (posts, mid, pres) in terms {
        for post in posts {
            let pm = t.mul(post, mid);
            for pre in pres {
                ech.insert(f, &t.mul(&pm, pre));
            }
        }
    }
    ech.contains(f, target)
}

/// Checks the hypotheses under which the zigzag module has a local endomorphism ring.
pub fn verify_zigzag<R: Rng>(g: &GradedAlgebra, z: &ZigzagData, rng: &mut R) -> Result<ZigzagReport> {
    let t: &Arc<Algebra> = &g.tilde;
    let l = z.len() as i64;
    let idx = |i: i64| i.rem_euclid(l) as usize;
    let mut local = !z.is_empty();
    for &v in z.p.iter().chain(&z.q) {
        local &= is_local(&projective(&g.base, v)?, rng)?;
    }
    let f_nonzero_radical = z.f.iter().all(|x| x.iter().any(|&c| c != 0) && t.in_radical(x));
    let homogeneous = |x: &[Elem], d: usize| x.iter().enumerate().all(|(i, &c)| c == 0 || t.degree(i) as usize == d);
    let degrees_match = z.f.iter().all(|x| homogeneous(x, 0))
        && z.g.iter().zip(&z.g_degrees).all(|(x, &d)| homogeneous(x, d) && x.iter().any(|&c| c != 0));
    let mut offs: Vec<i64> = z.offsets.clone();
    offs.sort_unstable();
    offs.dedup();
    let offsets_distinct = offs.len() == z.offsets.len() && z.offset(l) - z.offset(0) > 0;
    let mut sequences_valid = true;
    for (k, s) in z.sequences.iter().enumerate() {
        sequences_valid &= s.verify(&g.base)? && s.len() == z.g_degrees[k] && s.len() <= g.top_degree;
    }
    let a = |i: i64| (z.p[idx(i)], z.offset(i));
    let b = |i: i64| (z.q[idx(i)], z.offset(i));
    let hom = |(x, ax): (usize, i64), (y, by): (usize, i64)| hom_gr(t, x, ax, y, by);
    let mut f_ok = Vec::new();
    let mut g_ok = Vec::new();
    for i in 0..l {
        let fi = &z.f[idx(i)];
        let gi = &z.g[idx(i)];
        let terms = [
            (hom(b(i), b(i)), z.g[idx(i + 1)].as_slice(), hom(a(i), a(i + 1))),
            (hom(b(i - 1), b(i)), gi.as_slice(), hom(a(i), a(i))),
        ];
        f_ok.push(!in_products(t, fi, &terms));
        let terms = [
            (hom(b(i), b(i - 1)), fi.as_slice(), hom(a(i), a(i))),
            (hom(b(i - 1), b(i - 1)), z.f[idx(i - 1)].as_slice(), hom(a(i), a(i - 1))),
        ];
        g_ok.push(!in_products(t, gi, &terms));
    }
    Ok(ZigzagReport { local, f_nonzero_radical, degrees_match, offsets_distinct, sequences_valid, f_not_factoring: f_ok, g_not_factoring: g_ok })
}
