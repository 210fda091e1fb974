//! Canonical classification tuple of a 2-generated class-two p-group given
//! by its multiplication table, plus two independent isomorphism tests.
//!
//! The canonical tuple maximizes `(|g1|, |g2|)` lexicographically over pairs
//! whose images split `G/G'` as `<g1 G'> x <g2 G'>` with `|g_i G'| = p^n_i`.
//! Whether a pair qualifies depends only on the cosets of `g1` and `g2`, so
//! the scan runs over pairs of cosets and takes the largest order inside
//! each coset.

use rayon::prelude::*;

use crate::blackbox::{log_p, BlackBoxGroup, Subgroup};
use crate::error::{Error, Result};
use crate::params::Tuple5;

/// Default cap on `|G|` for [`brute_isomorphic`].
pub const DEFAULT_BRUTE_CAP: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GPair {
    pub g1: usize,
    pub g2: usize,
    pub o1: usize,
    pub o2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Canonical {
    pub tuple: Tuple5,
    /// First pair found attaining the maximum.
    pub witness: GPair,
}

/// Structure of a validated 2-generated class-two p-group.
#[derive(Debug, Clone)]
pub struct ClassTwo<'a> {
    group: &'a BlackBoxGroup,
    pub p: u64,
    pub m: u32,
    pub n1: u32,
    pub n2: u32,
    pub derived: Subgroup,
    quotient: BlackBoxGroup,
    proj: Vec<usize>,
    orders: Vec<usize>,
    cosets: Vec<Vec<usize>>,
}

impl<'a> ClassTwo<'a> {
    /// Checks the hypotheses (p-group, nonabelian, class two, two
    /// generators) and computes `G'` and `G/G'`.
    pub fn analyze(group: &'a BlackBoxGroup) -> Result<Self> {
        let (p, _) = group.prime_power().ok_or(Error::NotPGroup(group.order()))?;
        let derived = group.derived_subgroup();
        if derived.len() == 1 {
            return Err(Error::Abelian);
        }
        if !derived.is_subset_of(&group.center()) {
            return Err(Error::ClassTooLarge);
        }
        let d = group.min_generators()?;
        if d != 2 {
            return Err(Error::NotTwoGenerated(d));
        }
        let (quotient, proj) = group.quotient(&derived)?;
        let inv = quotient.abelian_invariants()?;
        // rank of G/G' equals rank of G/Phi(G), so exactly two factors
        let (n1, n2) = (inv[0], inv[1]);
        let mut cosets = vec![Vec::new(); quotient.order()];
        for (g, &c) in proj.iter().enumerate() {
            cosets[c].push(g);
        }
        Ok(ClassTwo {
            group,
            p,
            m: log_p(derived.len() as u64, p),
            n1,
            n2,
            derived,
            quotient,
            proj,
            orders: group.element_orders(),
            cosets,
        })
    }

    pub fn group(&self) -> &BlackBoxGroup {
        self.group
    }

    pub fn quotient(&self) -> &BlackBoxGroup {
        &self.quotient
    }

    pub fn projection(&self) -> &[usize] {
        &self.proj
    }

    /// Coset pairs `(q1, q2)` of `G/G'` that split it as a direct product
    /// with the prescribed orders. Both orientations appear when `n1 = n2`.
    pub fn quotient_pairs(&self) -> Vec<(usize, usize)> {
        let q = &self.quotient;
        let qn = q.order();
        let qorders = q.element_orders();
        let want1 = self.p.pow(self.n1) as usize;
        let want2 = self.p.pow(self.n2) as usize;
        let mut out = Vec::new();
        let mut cyc = vec![false; qn];
        for q1 in (0..qn).filter(|&x| qorders[x] == want1) {
            cyc.iter_mut().for_each(|b| *b = false);
            let mut x = 0;
            loop {
                cyc[x] = true;
                x = q.mul(x, q1);
                if x == 0 {
                    break;
                }
            }
            for q2 in (0..qn).filter(|&x| qorders[x] == want2) {
                let mut y = q2;
                let mut disjoint = true;
                while y != 0 {
                    if cyc[y] {
                        disjoint = false;
                        break;
                    }
                    y = q.mul(y, q2);
                }
                if disjoint {
                    out.push((q1, q2));
                }
            }
        }
        out
    }

    /// Every pair `(g1, g2)` of the generating-pair set.
    pub fn gpairs(&self) -> impl Iterator<Item = GPair> + '_ {
        self.quotient_pairs().into_iter().flat_map(move |(q1, q2)| {
            self.cosets[q1].iter().flat_map(move |&g1| {
                self.cosets[q2].iter().map(move |&g2| GPair {
                    g1,
                    g2,
                    o1: self.orders[g1],
                    o2: self.orders[g2],
                })
            })
        })
    }

    /// Largest element order in each coset, with the smallest index
    /// attaining it.
    fn coset_maxima(&self) -> Vec<(usize, usize)> {
        self.cosets
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&g| (self.orders[g], g))
                    .max_by_key(|&(o, g)| (o, std::cmp::Reverse(g)))
                    .expect("cosets are nonempty")
            })
            .collect()
    }

    pub fn canonical(&self) -> Canonical {
        let maxima = self.coset_maxima();
        let mut best: Option<GPair> = None;
        for (q1, q2) in self.quotient_pairs() {
            let (o1, g1) = maxima[q1];
            if let Some(b) = &best {
                if o1 < b.o1 {
                    continue;
                }
            }
            let (o2, g2) = maxima[q2];
            let cand = GPair { g1, g2, o1, o2 };
            if best.is_none_or(|b| (o1, o2) > (b.o1, b.o2)) {
                best = Some(cand);
            }
        }
        let w = best.expect("G/G' has rank two, so a splitting pair exists");
        let e1 = log_p(w.o1 as u64, self.p);
        let e2 = log_p(w.o2 as u64, self.p);
        let tuple = Tuple5 {
            p: self.p,
            m: self.m,
            n1: self.n1,
            n2: self.n2,
            s1: self.m + self.n1 - e1,
            s2: self.m + self.n2 - e2,
        };
        Canonical { tuple, witness: w }
    }
}

/// All generating pairs of `G` (see [`ClassTwo::gpairs`]).
pub fn gpairs(g: &BlackBoxGroup) -> Result<Vec<GPair>> {
    Ok(ClassTwo::analyze(g)?.gpairs().collect())
}

pub fn canonical_tuple(g: &BlackBoxGroup) -> Result<Tuple5> {
    Ok(canonicalize(g)?.tuple)
}

pub fn canonicalize(g: &BlackBoxGroup) -> Result<Canonical> {
    Ok(ClassTwo::analyze(g)?.canonical())
}

/// A pair `(h1, h2)` generating `h` and satisfying the defining relations of
/// the tuple, if one exists. Because the presented group has order at most
/// `p^(m+n1+n2)`, such a pair certifies `h ≅ G_t` when the orders agree.
pub fn relations_witness(h: &BlackBoxGroup, t: &Tuple5) -> Option<(usize, usize)> {
    if !t.is_constructible() {
        return None;
    }
    let p = t.p;
    if p.checked_pow(t.total()) != Some(h.order() as u64) {
        return None;
    }
    let phi = h.frattini_subgroup().ok()?;
    let (frat, fproj) = h.quotient(&phi).ok()?;
    if frat.order() as u64 != p * p {
        return None;
    }
    let orders = h.element_orders();
    let o1 = p.pow(t.m + t.n1 - t.s1) as usize;
    let o2 = p.pow(t.m + t.n2 - t.s2) as usize;
    let cand1: Vec<usize> = (0..h.order())
        .filter(|&x| orders[x] == o1 && fproj[x] != 0)
        .collect();
    let cand2: Vec<usize> = (0..h.order())
        .filter(|&x| orders[x] == o2 && fproj[x] != 0)
        .collect();
    let (pm, pn1, pn2, ps1, ps2) = (
        p.pow(t.m),
        p.pow(t.n1),
        p.pow(t.n2),
        p.pow(t.s1),
        p.pow(t.s2),
    );
    for &h1 in &cand1 {
        // images of <h1> in the Frattini quotient
        let mut line = vec![false; frat.order()];
        let mut v = 0;
        loop {
            line[v] = true;
            v = frat.mul(v, fproj[h1]);
            if v == 0 {
                break;
            }
        }
        let h1_pow = h.pow(h1, pn1);
        for &h2 in &cand2 {
            if line[fproj[h2]] {
                continue;
            }
            let a = h.commutator(h2, h1);
            if h.pow(a, pm) != 0 {
                continue;
            }
            if h.mul(a, h1) != h.mul(h1, a) || h.mul(a, h2) != h.mul(h2, a) {
                continue;
            }
            if h1_pow != h.pow(a, ps1) || h.pow(h2, pn2) != h.pow(a, ps2) {
                continue;
            }
            if h.subgroup_generated(&[h1, h2]).len() == h.order() {
                return Some((h1, h2));
            }
        }
    }
    None
}

pub fn relations_isomorphic(h: &BlackBoxGroup, t: &Tuple5) -> bool {
    relations_witness(h, t).is_some()
}

/// Exhaustive isomorphism test: maps a generating sequence of `g` to
/// order-compatible images in `h` and checks the induced map on the
/// Cayley graph.
pub fn brute_isomorphic(g: &BlackBoxGroup, h: &BlackBoxGroup, cap: usize) -> Result<bool> {
    if g.order() > cap || h.order() > cap {
        return Err(Error::CapExceeded {
            order: g.order().max(h.order()) as u64,
            cap: cap as u64,
        });
    }
    if g.order() != h.order() {
        return Ok(false);
    }
    let n = g.order();
    let go = g.element_orders();
    let ho = h.element_orders();
    let mut a = go.clone();
    let mut b = ho.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(false);
    }
    let gens = g.generating_set();
    if gens.is_empty() {
        return Ok(true);
    }
    // spanning tree of the Cayley graph: x = parent[x] * gens[via[x]]
    let mut parent = vec![usize::MAX; n];
    let mut via = vec![0usize; n];
    let mut bfs = vec![0usize];
    parent[0] = 0;
    let mut head = 0;
    while head < bfs.len() {
        let x = bfs[head];
        head += 1;
        for (j, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if parent[y] == usize::MAX {
                parent[y] = x;
                via[y] = j;
                bfs.push(y);
            }
        }
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..n).filter(|&y| ho[y] == go[s]).collect())
        .collect();

    let check = |images: &[usize]| -> bool {
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        phi[0] = 0;
        used[0] = true;
        for &x in &bfs[1..] {
            let y = h.mul(phi[parent[x]], images[via[x]]);
            if used[y] {
                return false;
            }
            used[y] = true;
            phi[x] = y;
        }
        bfs.iter().all(|&x| {
            gens.iter()
                .zip(images)
                .all(|(&s, &img)| phi[g.mul(x, s)] == h.mul(phi[x], img))
        })
    };

    // Parallel over the first generator's image, sequential odometer over the rest.
    let found = candidates[0].par_iter().any(|&first| {
        let k = gens.len();
        let mut idx = vec![0usize; k];
        loop {
            let mut images = Vec::with_capacity(k);
            images.push(first);
            for j in 1..k {
                images.push(candidates[j][idx[j]]);
            }
            if check(&images) {
                return true;
            }
            let mut j = k - 1;
            loop {
                if j == 0 {
                    return false;
                }
                idx[j] += 1;
                if idx[j] < candidates[j].len() {
                    break;
                }
                idx[j] = 0;
                j -= 1;
            }
        }
    });
    Ok(found)
}
