//! Finite groups given by an explicit multiplication table.
//!
//! Elements are `0..n` with the identity at index 0. Subgroup machinery is
//! closure-based and quadratic in the worst case, which is fine at the sizes
//! used here (a few thousand elements).

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::params::is_prime;

const HEADER: &str = "pgrouptable v1";

/// Tables up to this order get an exhaustive associativity check on load.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;

const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlackBoxGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

/// A subgroup as a sorted member list, a membership bitmap and the
/// generators it was closed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask[g]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }
}

impl BlackBoxGroup {
    /// Validates and wraps a row-major table.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                n * n,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let g = Self::from_trusted_table(n, table);
        g.check_identity()?;
        g.check_latin()?;
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            g.check_associative_exhaustive()?;
        } else {
            g.check_associative_sampled(SAMPLED_ASSOC_TRIPLES, 0)?;
        }
        Ok(g)
    }

    /// Wraps a table already known to be a group with identity 0.
    pub(crate) fn from_trusted_table(n: usize, table: Vec<u32>) -> Self {
        let mut inverse = vec![0u32; n];
        for (g, inv) in inverse.iter_mut().enumerate() {
            let row = &table[g * n..(g + 1) * n];
            *inv = row.iter().position(|&v| v == 0).unwrap_or(0) as u32;
        }
        BlackBoxGroup { n, table, inverse }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.n + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g] as usize
    }

    pub fn pow(&self, g: usize, mut k: u64) -> usize {
        let mut base = g;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let left = self.mul(self.inv(g), self.inv(h));
        self.mul(left, self.mul(g, h))
    }

    pub fn check_identity(&self) -> Result<()> {
        for g in 0..self.n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(Error::InvalidTable(format!(
                    "index 0 is not the identity (fails at {g})"
                )));
            }
        }
        Ok(())
    }

    pub fn check_latin(&self) -> Result<()> {
        let n = self.n;
        let mut seen = vec![0usize; n];
        for r in 0..n {
            for c in 0..n {
                let v = self.mul(r, c);
                if seen[v] == r + 1 {
                    return Err(Error::InvalidTable(format!("row {r} repeats {v}")));
                }
                seen[v] = r + 1;
            }
        }
        let mut seen = vec![0usize; n];
        for c in 0..n {
            for r in 0..n {
                let v = self.mul(r, c);
                if seen[v] == c + 1 {
                    return Err(Error::InvalidTable(format!("column {c} repeats {v}")));
                }
                seen[v] = c + 1;
            }
        }
        Ok(())
    }

    pub fn check_associative_exhaustive(&self) -> Result<()> {
        for a in 0..self.n {
            for b in 0..self.n {
                let ab = self.mul(a, b);
                for c in 0..self.n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(non_associative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_associative_sampled(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (a, b, c) = (
                rng.gen_range(0..self.n),
                rng.gen_range(0..self.n),
                rng.gen_range(0..self.n),
            );
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(non_associative(a, b, c));
            }
        }
        Ok(())
    }

    /// Serializes to the line-oriented `pgrouptable v1` format.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n * self.n * 4 + 32);
        s.push_str(HEADER);
        s.push('\n');
        let _ = writeln!(s, "order {}", self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                if c > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}", self.mul(r, c));
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim_end) != Some(HEADER) {
            return Err(Error::Parse(format!("missing `{HEADER}` header")));
        }
        let order_line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing order line".into()))?;
        let n: usize = order_line
            .trim_end()
            .strip_prefix("order ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad order line {order_line:?}")))?;
        let mut table = Vec::with_capacity(n * n);
        for r in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            let before = table.len();
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("row {r}: bad entry {tok:?}")))?;
                table.push(v);
            }
            if table.len() - before != n {
                return Err(Error::Parse(format!(
                    "row {r}: expected {n} entries, found {}",
                    table.len() - before
                )));
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after table".into()));
        }
        Self::from_table(n, table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Conjugates the table by `perm` (old index -> new index). `perm[0]`
    /// must be 0.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        debug_assert_eq!(perm[0], 0);
        let mut table = vec![0u32; n * n];
        for g in 0..n {
            for h in 0..n {
                table[perm[g] * n + perm[h]] = perm[self.mul(g, h)] as u32;
            }
        }
        Self::from_trusted_table(n, table)
    }

    /// Relabels by a uniformly random permutation fixing the identity.
    pub fn random_relabel(&self, seed: u64) -> Self {
        self.relabel(&self.random_permutation(seed))
    }

    pub fn random_permutation(&self, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..self.n).collect();
        perm[1..].shuffle(&mut rng);
        perm
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut cur = g;
        let mut k = 1;
        while cur != 0 {
            cur = self.mul(cur, g);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n).map(|g| self.element_order(g)).collect()
    }

    pub fn exponent(&self) -> usize {
        self.element_orders().into_iter().max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|g| (0..g).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_generated(&self.generating_set())
    }

    pub fn trivial(&self) -> Subgroup {
        let mut mask = vec![false; self.n];
        mask[0] = true;
        Subgroup {
            members: vec![0],
            mask,
            gens: Vec::new(),
        }
    }

    /// Closure of `gens` under multiplication.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        self.extend_subgroup(&self.trivial(), gens)
    }

    /// Smallest subgroup containing `base` and `gens`.
    pub fn extend_subgroup(&self, base: &Subgroup, gens: &[usize]) -> Subgroup {
        let mut all_gens = base.gens.clone();
        let mut mask = base.mask.clone();
        let mut members = base.members.clone();
        for &g in gens {
            if mask[g] {
                continue;
            }
            all_gens.push(g);
            // Close from the identity under every generator so far.
            mask.iter_mut().for_each(|b| *b = false);
            mask[0] = true;
            members.clear();
            members.push(0);
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for &s in &all_gens {
                    let y = self.mul(x, s);
                    if !mask[y] {
                        mask[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            gens: all_gens,
        }
    }

    /// Wraps a membership mask that is known to be a subgroup.
    fn subgroup_from_mask(&self, mask: Vec<bool>) -> Subgroup {
        let elems: Vec<usize> = (0..self.n).filter(|&g| mask[g]).collect();
        let sub = self.subgroup_generated(&elems);
        debug_assert_eq!(sub.mask, mask);
        sub
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = vec![false; self.n];
        for g in 0..self.n {
            for h in 0..self.n {
                comms[self.commutator(g, h)] = true;
            }
        }
        let gens: Vec<usize> = (0..self.n).filter(|&c| comms[c]).collect();
        self.subgroup_generated(&gens)
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generating_set();
        let mask = (0..self.n)
            .map(|z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        self.subgroup_from_mask(mask)
    }

    /// Class at most two: `G' <= Z(G)`.
    pub fn nilpotency_class_le2(&self) -> bool {
        self.derived_subgroup().is_subset_of(&self.center())
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        let gens = self.generating_set();
        sub.members
            .iter()
            .all(|&x| gens.iter().all(|&g| sub.contains(self.mul(self.inv(g), self.mul(x, g)))))
    }

    /// Quotient by a normal subgroup, with the projection `G -> G/N`.
    /// Cosets are numbered by their smallest member, so the identity coset is 0.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(BlackBoxGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if proj[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in &normal.members {
                proj[self.mul(g, x)] = c;
            }
        }
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (i, &gi) in reps.iter().enumerate() {
            for (j, &gj) in reps.iter().enumerate() {
                table[i * q + j] = proj[self.mul(gi, gj)] as u32;
            }
        }
        Ok((Self::from_trusted_table(q, table), proj))
    }

    /// A generating set, chosen greedily by decreasing element order. For
    /// p-groups the greedy step runs modulo the Frattini subgroup, so the
    /// result has exactly `min_generators` elements.
    pub fn generating_set(&self) -> Vec<usize> {
        if self.n == 1 {
            return Vec::new();
        }
        let orders = self.element_orders();
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by_key(|&g| (std::cmp::Reverse(orders[g]), g));
        let mut sub = match self.frattini_subgroup() {
            Ok(phi) => phi,
            Err(_) => self.trivial(),
        };
        let mut gens = Vec::new();
        for g in by_order {
            if sub.len() == self.n {
                break;
            }
            if !sub.contains(g) {
                gens.push(g);
                sub = self.extend_subgroup(&sub, &[g]);
            }
        }
        gens
    }

    /// `(p, k)` with `|G| = p^k`, if the order is a prime power.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        prime_power(self.n as u64)
    }

    /// `G' G^p`.
    pub fn frattini_subgroup(&self) -> Result<Subgroup> {
        let (p, _) = self.prime_power().ok_or(Error::NotPGroup(self.n))?;
        let derived = self.derived_subgroup();
        let powers: Vec<usize> = (0..self.n).map(|g| self.pow(g, p)).collect();
        Ok(self.extend_subgroup(&derived, &powers))
    }

    /// Minimal number of generators of a p-group: the rank of `G/Phi(G)`.
    pub fn min_generators(&self) -> Result<usize> {
        let (p, _) = self.prime_power().ok_or(Error::NotPGroup(self.n))?;
        let phi = self.frattini_subgroup()?;
        Ok(log_p((self.n / phi.len()) as u64, p) as usize)
    }

    /// Invariant factors of an abelian p-group, largest first, as exponents.
    /// Peels off a cyclic subgroup of maximal order, which is always a direct
    /// summand, then recurses on the quotient.
    pub fn abelian_invariants(&self) -> Result<Vec<u32>> {
        let (p, _) = self.prime_power().ok_or(Error::NotPGroup(self.n))?;
        let mut out = Vec::new();
        let mut cur = self.clone();
        while cur.order() > 1 {
            let orders = cur.element_orders();
            let (g, &o) = orders
                .iter()
                .enumerate()
                .max_by_key(|&(i, o)| (*o, std::cmp::Reverse(i)))
                .expect("nonempty");
            out.push(log_p(o as u64, p));
            let cyc = cur.subgroup_generated(&[g]);
            cur = cur.quotient(&cyc)?.0;
        }
        Ok(out)
    }
}

fn non_associative(a: usize, b: usize, c: usize) -> Error {
    Error::InvalidTable(format!("non-associative triple ({a}, {b}, {c})"))
}

/// `(p, k)` with `n = p^k`, `k >= 0`, when `n` is a prime power (`1` maps to
/// `None` since the prime is undetermined).
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    debug_assert!(is_prime(p));
    let mut k = 0;
    let mut r = n;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Exact base-p logarithm of a power of p.
pub fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}
