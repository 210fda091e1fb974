//! Exact computations in the modular group algebra `F_p G`.
//!
//! The augmentation ideal `Δ` is spanned by `g - 1`, and for a generating
//! set `S` of `G` we have `Δ^(k+1) = Σ_{s in S} Δ^k (s - 1)`, so each level
//! of the filtration is the row space of `2·dim Δ^k` products when `|S| = 2`.
//! Rows are kept in semi-echelon form with leftmost pivots; reducing a vector
//! against a level gives a canonical coset representative.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blackbox::{log_p, BlackBoxGroup};
use crate::error::{Error, Result};
use crate::group::{Elem, PGroup2};
use crate::params::Tuple5;

/// Default `|G|` cap for the table-based (direct) path.
pub fn default_algebra_cap(p: u64) -> usize {
    match p {
        2 => 1 << 11,
        3 => 2187,
        _ => {
            let mut c = 1usize;
            while c * (p as usize) <= 2187 {
                c *= p as usize;
            }
            c
        }
    }
}

/// Dense vector in `F_p G`, indexed by table element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    p: u8,
    coeffs: Vec<u8>,
}

impl AlgebraElement {
    pub fn zero(p: u64, n: usize) -> Self {
        AlgebraElement {
            p: p as u8,
            coeffs: vec![0; n],
        }
    }

    /// The group element `g` itself.
    pub fn group_element(p: u64, n: usize, g: usize) -> Self {
        let mut e = Self::zero(p, n);
        e.coeffs[g] = 1;
        e
    }

    /// `g - 1`.
    pub fn minus_one(p: u64, n: usize, g: usize) -> Self {
        let mut e = Self::zero(p, n);
        e.coeffs[g] = 1;
        e.coeffs[0] = (e.coeffs[0] + e.p - 1) % e.p;
        e
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<u8>) -> Self {
        let p8 = p as u8;
        let coeffs = coeffs.into_iter().map(|c| c % p8).collect();
        AlgebraElement { p: p8, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficient sum; zero exactly on `Δ`.
    pub fn augmentation(&self) -> u8 {
        self.coeffs
            .iter()
            .fold(0u32, |acc, &c| (acc + c as u32) % self.p as u32) as u8
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p as u16;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        AlgebraElement { p: self.p, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u8) -> Self {
        let p = self.p as u16;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| ((a as u16 * c as u16) % p) as u8)
            .collect();
        AlgebraElement { p: self.p, coeffs }
    }

    /// Product in `F_p G` (convolution through the group table).
    pub fn mul(&self, other: &Self, g: &BlackBoxGroup) -> Self {
        let n = self.coeffs.len();
        let p = self.p as u32;
        let mut acc = vec![0u32; n];
        let rhs: Vec<(usize, u32)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c as u32))
            .collect();
        for (x, &cx) in self.coeffs.iter().enumerate() {
            if cx == 0 {
                continue;
            }
            for &(y, cy) in &rhs {
                let xy = g.mul(x, y);
                acc[xy] = (acc[xy] + cx as u32 * cy) % p;
            }
        }
        AlgebraElement {
            p: self.p,
            coeffs: acc.into_iter().map(|c| c as u8).collect(),
        }
    }
}

/// Row representation used by the echelon routines.
trait Row: Clone + Send + Sync {
    fn from_coeffs(c: &[u8]) -> Self;
    fn to_coeffs(&self, n: usize) -> Vec<u8>;
    fn get(&self, i: usize) -> u8;
    fn leading(&self) -> Option<usize>;
    /// `self -= c * other`, where `other` vanishes before column `from`.
    fn sub_scaled(&mut self, c: u8, other: &Self, from: usize, ctx: &FieldCtx);
    fn scale(&mut self, c: u8, ctx: &FieldCtx);
    /// `self * h - self`, where `col[x] = x h`.
    fn times_minus_one(&self, col: &[u32], ctx: &FieldCtx) -> Self;
}

#[derive(Debug, Clone)]
struct FieldCtx {
    p: u8,
    n: usize,
    /// `reduce[t] = t mod p` for `t < p^2`.
    reduce: Vec<u8>,
    inverse: Vec<u8>,
}

impl FieldCtx {
    fn new(p: u64, n: usize) -> Self {
        let p8 = p as u8;
        let reduce = (0..(p * p) as usize).map(|t| (t % p as usize) as u8).collect();
        let mut inverse = vec![0u8; p as usize];
        for a in 1..p {
            inverse[a as usize] = (1..p).find(|b| a * b % p == 1).unwrap() as u8;
        }
        FieldCtx {
            p: p8,
            n,
            reduce,
            inverse,
        }
    }
}

#[derive(Debug, Clone)]
struct BitRow(Vec<u64>);

impl Row for BitRow {
    fn from_coeffs(c: &[u8]) -> Self {
        let mut w = vec![0u64; c.len().div_ceil(64)];
        for (i, &v) in c.iter().enumerate() {
            if v & 1 == 1 {
                w[i / 64] |= 1 << (i % 64);
            }
        }
        BitRow(w)
    }

    fn to_coeffs(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.get(i)).collect()
    }

    #[inline]
    fn get(&self, i: usize) -> u8 {
        ((self.0[i / 64] >> (i % 64)) & 1) as u8
    }

    fn leading(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    #[inline]
    fn sub_scaled(&mut self, c: u8, other: &Self, from: usize, _ctx: &FieldCtx) {
        if c & 1 == 1 {
            for (a, b) in self.0[from / 64..].iter_mut().zip(&other.0[from / 64..]) {
                *a ^= b;
            }
        }
    }

    fn scale(&mut self, _c: u8, _ctx: &FieldCtx) {}

    fn times_minus_one(&self, col: &[u32], _ctx: &FieldCtx) -> Self {
        let mut out = self.clone();
        for (k, &w) in self.0.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let i = k * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let j = col[i] as usize;
                out.0[j / 64] ^= 1 << (j % 64);
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
struct ByteRow(Vec<u8>);

impl Row for ByteRow {
    fn from_coeffs(c: &[u8]) -> Self {
        ByteRow(c.to_vec())
    }

    fn to_coeffs(&self, _n: usize) -> Vec<u8> {
        self.0.clone()
    }

    #[inline]
    fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    fn leading(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0)
    }

    #[inline]
    fn sub_scaled(&mut self, c: u8, other: &Self, from: usize, ctx: &FieldCtx) {
        let k = ctx.p - c;
        let red = &ctx.reduce;
        for (a, &b) in self.0[from..].iter_mut().zip(&other.0[from..]) {
            *a = red[(*a as usize) + (k as usize) * (b as usize)];
        }
    }

    fn scale(&mut self, c: u8, ctx: &FieldCtx) {
        for a in self.0.iter_mut() {
            *a = ctx.reduce[*a as usize * c as usize];
        }
    }

    fn times_minus_one(&self, col: &[u32], ctx: &FieldCtx) -> Self {
        let mut out = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[col[i] as usize] = v;
        }
        let p = ctx.p;
        for (o, &v) in out.iter_mut().zip(&self.0) {
            *o = ctx.reduce[*o as usize + (p - v) as usize % p as usize];
        }
        ByteRow(out)
    }
}

/// Rows with distinct pivots; each row is zero at the pivots of earlier rows
/// and has pivot coefficient 1.
#[derive(Debug, Clone)]
struct Echelon<R> {
    rows: Vec<R>,
    pivots: Vec<usize>,
}

impl<R: Row> Echelon<R> {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut R, ctx: &FieldCtx) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(piv);
            if c != 0 {
                v.sub_scaled(c, row, piv, ctx);
            }
        }
    }

    fn insert(&mut self, mut v: R, ctx: &FieldCtx) -> bool {
        self.reduce(&mut v, ctx);
        match v.leading() {
            None => false,
            Some(piv) => {
                let lead = v.get(piv);
                if lead != 1 {
                    v.scale(ctx.inverse[lead as usize], ctx);
                }
                self.rows.push(v);
                self.pivots.push(piv);
                true
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Levels<R> {
    ctx: FieldCtx,
    /// `levels[k - 1]` spans `Δ^k` for `k = 1..=depth`; the last is empty.
    levels: Vec<Echelon<R>>,
}

impl<R: Row> Levels<R> {
    fn compute(g: &BlackBoxGroup, p: u64, gens: &[usize], max_depth: usize) -> Result<Self> {
        let n = g.order();
        let ctx = FieldCtx::new(p, n);
        let cols: Vec<Vec<u32>> = gens
            .iter()
            .map(|&h| (0..n).map(|x| g.mul(x, h) as u32).collect())
            .collect();
        let mut first = Echelon::new();
        for x in 1..n {
            let e = AlgebraElement::minus_one(p, n, x);
            first.insert(R::from_coeffs(&e.coeffs), &ctx);
        }
        let mut levels = vec![first];
        while levels.last().unwrap().dim() > 0 {
            if levels.len() > max_depth {
                return Err(Error::FiltrationDepth(max_depth));
            }
            let prev = levels.last().unwrap();
            let mut next = Echelon::new();
            for row in &prev.rows {
                for col in &cols {
                    next.insert(row.times_minus_one(col, &ctx), &ctx);
                }
            }
            levels.push(next);
        }
        Ok(Levels { ctx, levels })
    }

    fn level(&self, k: usize) -> Option<&Echelon<R>> {
        if k == 0 {
            None
        } else {
            self.levels.get(k - 1)
        }
    }

    fn depth(&self) -> usize {
        self.levels.len()
    }

    fn reduce(&self, k: usize, v: &AlgebraElement) -> AlgebraElement {
        if k == 0 {
            return AlgebraElement::zero(v.p(), v.len());
        }
        match self.level(k) {
            None => v.clone(),
            Some(ech) => {
                let mut r = R::from_coeffs(&v.coeffs);
                ech.reduce(&mut r, &self.ctx);
                AlgebraElement {
                    p: v.p,
                    coeffs: r.to_coeffs(self.ctx.n),
                }
            }
        }
    }

    fn basis(&self, k: usize) -> Vec<AlgebraElement> {
        let p = self.ctx.p;
        match self.level(k) {
            None if k == 0 => (0..self.ctx.n)
                .map(|g| AlgebraElement::group_element(p as u64, self.ctx.n, g))
                .collect(),
            None => Vec::new(),
            Some(ech) => ech
                .rows
                .iter()
                .map(|r| AlgebraElement {
                    p,
                    coeffs: r.to_coeffs(self.ctx.n),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
enum LevelsImpl {
    Two(Levels<BitRow>),
    Odd(Levels<ByteRow>),
}

macro_rules! dispatch {
    ($self:expr, $l:ident => $body:expr) => {
        match &$self.inner {
            LevelsImpl::Two($l) => $body,
            LevelsImpl::Odd($l) => $body,
        }
    };
}

/// Echelonized bases of `Δ^k` for every `k` until `Δ^k = 0`.
#[derive(Debug, Clone)]
pub struct Filtration {
    p: u64,
    n: usize,
    dims: Vec<usize>,
    inner: LevelsImpl,
}

impl Filtration {
    /// Computes the full filtration of a p-group table.
    pub fn compute(g: &BlackBoxGroup, cap: usize) -> Result<Self> {
        let (p, _) = g.prime_power().ok_or(Error::NotPGroup(g.order()))?;
        if p > 251 {
            return Err(Error::InvalidShape(format!("prime {p} too large for byte rows")));
        }
        if g.order() > cap {
            return Err(Error::CapExceeded {
                order: g.order() as u64,
                cap: cap as u64,
            });
        }
        let gens = g.generating_set();
        let max_depth = 4 * g.exponent();
        let inner = if p == 2 {
            LevelsImpl::Two(Levels::compute(g, p, &gens, max_depth)?)
        } else {
            LevelsImpl::Odd(Levels::compute(g, p, &gens, max_depth)?)
        };
        let mut dims = vec![g.order()];
        match &inner {
            LevelsImpl::Two(l) => dims.extend(l.levels.iter().map(Echelon::dim)),
            LevelsImpl::Odd(l) => dims.extend(l.levels.iter().map(Echelon::dim)),
        }
        Ok(Filtration {
            p,
            n: g.order(),
            dims,
            inner,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    /// `dims()[k] = dim Δ^k` for `k = 0..=depth()`; the last entry is 0.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Nilpotency index: least `k` with `Δ^k = 0`.
    pub fn depth(&self) -> usize {
        dispatch!(self, l => l.depth())
    }

    /// Canonical representative of `v + Δ^k`.
    pub fn reduce(&self, k: usize, v: &AlgebraElement) -> AlgebraElement {
        if k > self.depth() {
            return v.clone();
        }
        dispatch!(self, l => l.reduce(k, v))
    }

    pub fn contains(&self, k: usize, v: &AlgebraElement) -> bool {
        self.reduce(k, v).is_zero()
    }

    /// Largest `k` with `v ∈ Δ^k`; `depth()` for `v = 0`.
    pub fn level_of(&self, v: &AlgebraElement) -> usize {
        let mut k = 0;
        while k < self.depth() && self.contains(k + 1, v) {
            k += 1;
        }
        k
    }

    pub fn basis(&self, k: usize) -> Vec<AlgebraElement> {
        dispatch!(self, l => l.basis(k))
    }
}

pub fn delta_powers(g: &BlackBoxGroup, cap: usize) -> Result<Filtration> {
    Filtration::compute(g, cap)
}

/// `M_n = {g : g - 1 ∈ Δ^n}`, as sorted element indices.
pub fn dimension_subgroup_direct(g: &BlackBoxGroup, f: &Filtration, n: usize) -> Vec<usize> {
    (0..g.order())
        .filter(|&x| f.contains(n, &AlgebraElement::minus_one(f.p, g.order(), x)))
        .collect()
}

/// Generators of `M_n` for the class-two group of `t` (`n >= 2`):
/// `<a^(p^k), b1^(p^(k+1)), b2^(p^(k+1))>` when `p^k < n <= 2p^k`, and
/// `<a^(p^(k+1)), b1^(p^(k+1)), b2^(p^(k+1))>` when `2p^k < n <= p^(k+1)`.
fn formula_generators(grp: &PGroup2, n: usize) -> Vec<Elem> {
    let p = grp.p();
    if n <= 1 {
        return vec![grp.a(), grp.b1(), grp.b2()];
    }
    let n = n as u64;
    let mut k = 0u32;
    while p.pow(k + 1) < n {
        k += 1;
    }
    let pk = p.pow(k);
    let a_exp = if n <= 2 * pk { pk } else { pk * p };
    let b_exp = pk * p;
    vec![
        grp.pow(&grp.a(), a_exp),
        grp.pow(&grp.b1(), b_exp),
        grp.pow(&grp.b2(), b_exp),
    ]
}

/// `M_n` of `construct(t)` from the closed form, as sorted indices in the
/// `(x, y, z)` enumeration.
pub fn dimension_subgroup_formula(t: &Tuple5, n: usize) -> Result<Vec<usize>> {
    let grp = PGroup2::new(*t)?;
    Ok(formula_subgroup(&grp, n))
}

fn formula_subgroup(grp: &PGroup2, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = grp
        .subgroup_generated(&formula_generators(grp, n))
        .iter()
        .map(|e| grp.index_of(e) as usize)
        .collect();
    v.sort_unstable();
    v
}

/// The chain `M_1 ⊇ M_2 ⊇ ... ⊇ M_K = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSubgroupChain {
    pub p: u64,
    /// `subgroups[n - 1] = M_n`, ending with the first trivial term.
    pub subgroups: Vec<Vec<usize>>,
}

impl DimensionSubgroupChain {
    pub fn direct(g: &BlackBoxGroup, f: &Filtration) -> Self {
        let mut subgroups = Vec::new();
        for n in 1.. {
            let m = dimension_subgroup_direct(g, f, n);
            let done = m.len() == 1;
            subgroups.push(m);
            if done {
                break;
            }
        }
        DimensionSubgroupChain { p: f.p, subgroups }
    }

    pub fn formula(t: &Tuple5) -> Result<Self> {
        let grp = PGroup2::new(*t)?;
        let mut cache: HashMap<Vec<Elem>, Vec<usize>> = HashMap::new();
        let mut subgroups = Vec::new();
        for n in 1.. {
            let gens = formula_generators(&grp, n);
            let m = cache
                .entry(gens)
                .or_insert_with(|| formula_subgroup(&grp, n))
                .clone();
            let done = m.len() == 1;
            subgroups.push(m);
            if done {
                break;
            }
        }
        Ok(DimensionSubgroupChain { p: t.p, subgroups })
    }

    /// `M_n`, trivial past the end of the chain.
    pub fn get(&self, n: usize) -> Vec<usize> {
        assert!(n >= 1);
        self.subgroups
            .get(n - 1)
            .cloned()
            .unwrap_or_else(|| vec![0])
    }

    fn size(&self, n: usize) -> usize {
        self.subgroups.get(n - 1).map_or(1, Vec::len)
    }

    /// `log_p [M_n : M_(n+1)]` for `n = 1..K-1`.
    pub fn ranks(&self) -> Vec<u32> {
        (1..self.subgroups.len())
            .map(|n| log_p((self.size(n) / self.size(n + 1)) as u64, self.p))
            .collect()
    }

    /// `d_k` with `p^(d_k) = [M_(2p^k) : M_(2p^k + 1)]`, for every `k` with
    /// `M_(2p^k)` nontrivial.
    pub fn jennings_dims(&self) -> Vec<u32> {
        let mut d = Vec::new();
        let mut pk = 1usize;
        while self.size(2 * pk) > 1 {
            d.push(log_p(
                (self.size(2 * pk) / self.size(2 * pk + 1)) as u64,
                self.p,
            ));
            pk *= self.p as usize;
        }
        d
    }
}

pub fn jennings_dims_formula(t: &Tuple5) -> Result<Vec<u32>> {
    Ok(DimensionSubgroupChain::formula(t)?.jennings_dims())
}

pub fn jennings_dims_direct(g: &BlackBoxGroup, f: &Filtration) -> Vec<u32> {
    DimensionSubgroupChain::direct(g, f).jennings_dims()
}

/// Graded dimensions `dim Δ^k/Δ^(k+1)` predicted from the quotient ranks
/// `r_n` of the dimension-subgroup chain: the coefficients of
/// `Π_n (1 + t^n + ... + t^((p-1)n))^(r_n)`.
pub fn graded_dims_from_ranks(p: u64, ranks: &[u32]) -> Vec<usize> {
    let mut poly = vec![1usize];
    for (i, &r) in ranks.iter().enumerate() {
        let n = i + 1;
        for _ in 0..r {
            let mut next = vec![0usize; poly.len() + (p as usize - 1) * n];
            for (deg, &c) in poly.iter().enumerate() {
                for j in 0..p as usize {
                    next[deg + j * n] += c;
                }
            }
            poly = next;
        }
    }
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
    poly
}

/// Least `k` with `Δ^k = 0`, from the quotient ranks:
/// `1 + (p - 1) Σ n r_n`.
pub fn nilpotency_index_from_ranks(p: u64, ranks: &[u32]) -> usize {
    1 + (p as usize - 1)
        * ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| (i + 1) * r as usize)
            .sum::<usize>()
}

/// Smallest `i` with `2^i >= index`; beyond it every `X_i` is everything.
pub fn default_i_max(nilpotency_index: usize) -> usize {
    let mut i = 1;
    while (1usize << i) < nilpotency_index {
        i += 1;
    }
    i
}

/// `|X_i|` for `i = 1..=i_max` (p = 2): the number of residues
/// `x ∈ Δ/Δ²` with `x^(2^i) ∈ Δ^(2^i + 1)`, computed by repeated squaring
/// with reduction at every stage.
pub fn squaring_kernel_sizes(g: &BlackBoxGroup, f: &Filtration, i_max: usize) -> Result<Vec<usize>> {
    if f.p != 2 {
        return Err(Error::RequiresTwo(f.p));
    }
    let n = g.order();
    let gens = g.generating_set();
    let d = gens.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut counts = vec![0usize; i_max];
    for mask in 0u32..(1 << d) {
        let mut cur = AlgebraElement::zero(2, n);
        for (j, &h) in gens.iter().enumerate() {
            if mask >> j & 1 == 1 {
                cur = cur.add(&AlgebraElement::minus_one(2, n, h));
            }
        }
        for (i, count) in counts.iter_mut().enumerate().map(|(i, c)| (i + 1, c)) {
            let src = (1usize << (i - 1)) + 1;
            let dst = (1usize << i) + 1;
            let next = f.reduce(dst, &cur.mul(&cur, g));
            // the result must not depend on the lift of `cur` mod Δ^src
            for _ in 0..2 {
                let lift = cur.add(&random_element(f, src, &mut rng));
                assert_eq!(
                    f.reduce(dst, &lift.mul(&lift, g)),
                    next,
                    "squaring map not well defined at stage {i}"
                );
            }
            if next.is_zero() {
                *count += 1;
            }
            cur = next;
        }
    }
    Ok(counts)
}

fn random_element(f: &Filtration, k: usize, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let mut acc = AlgebraElement::zero(f.p, f.n);
    for b in f.basis(k) {
        let c = rng.gen_range(0..f.p) as u8;
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Closed-form kernel sizes for `construct(t)` (p = 2): modulo `Δ^(2^i+1)`
/// the `2^i`-th power of `α1(b1-1) + α2(b2-1)` is
/// `b1^(α1 2^i) b2^(α2 2^i) a^(α1 α2 2^(i-1)) - 1`, which vanishes iff that
/// element lies in `M_(2^i + 1)`.
pub fn squaring_kernel_sizes_formula(t: &Tuple5, i_max: usize) -> Result<Vec<usize>> {
    if t.p != 2 {
        return Err(Error::RequiresTwo(t.p));
    }
    let grp = PGroup2::new(*t)?;
    let mut out = Vec::with_capacity(i_max);
    for i in 1..=i_max {
        let target = formula_subgroup(&grp, (1 << i) + 1);
        let mut count = 0;
        for a1 in 0..2u64 {
            for a2 in 0..2u64 {
                let e = grp.mul(
                    &grp.mul(
                        &grp.pow(&grp.b1(), a1 << i),
                        &grp.pow(&grp.b2(), a2 << i),
                    ),
                    &grp.pow(&grp.a(), (a1 * a2) << (i - 1)),
                );
                if target.binary_search(&(grp.index_of(&e) as usize)).is_ok() {
                    count += 1;
                }
            }
        }
        out.push(count);
    }
    Ok(out)
}
