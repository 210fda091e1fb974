//! Group-algebra fingerprints of admissible tuples and the sweep checking
//! that they separate distinct tuples.
//!
//! A fingerprint records, in this order: the order, the abelianization type,
//! the exponent, the Jennings dimensions `d_k` and (p = 2 only) the
//! squaring-chain kernel sizes `|X_i|`. Each entry is determined by `F_p G`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    default_i_max, delta_powers, jennings_dims_direct, nilpotency_index_from_ranks,
    squaring_kernel_sizes, squaring_kernel_sizes_formula, DimensionSubgroupChain,
};
use crate::blackbox::{log_p, BlackBoxGroup};
use crate::error::{Error, Result};
use crate::group::{PGroup2, DEFAULT_TABLE_CAP};
use crate::params::{enumerate_admissible, is_admissible, Tuple5};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub p: u64,
    /// `log_p |G|`.
    pub order: u32,
    pub abelianization: (u32, u32),
    /// `log_p exp(G)`.
    pub exponent: u32,
    pub d: Vec<u32>,
    /// Empty for odd p or when dropped.
    pub x: Vec<usize>,
}

/// Fingerprint components, in the order they are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Order,
    Quotient,
    Exponent,
    D,
    X,
}

impl Fingerprint {
    pub fn first_difference(&self, other: &Fingerprint) -> Option<Component> {
        if self.order != other.order {
            Some(Component::Order)
        } else if self.abelianization != other.abelianization {
            Some(Component::Quotient)
        } else if self.exponent != other.exponent {
            Some(Component::Exponent)
        } else if self.d != other.d {
            Some(Component::D)
        } else if self.x != other.x {
            Some(Component::X)
        } else {
            None
        }
    }

    pub fn without_x(mut self) -> Self {
        self.x.clear();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Path {
    Direct,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FingerprintOptions {
    /// Never build the group algebra; use the closed forms.
    pub formula_only: bool,
    /// Largest `|G|` for which the table-based path is used.
    pub direct_cap: usize,
    pub drop_x: bool,
}

impl FingerprintOptions {
    pub fn for_prime(p: u64) -> Self {
        FingerprintOptions {
            formula_only: false,
            direct_cap: default_direct_cap(p),
            drop_x: false,
        }
    }
}

/// `2^9` for p = 2, `3^5` for p = 3, `p^3` otherwise.
pub fn default_direct_cap(p: u64) -> usize {
    match p {
        2 => 1 << 9,
        3 => 243,
        _ => (p * p * p) as usize,
    }
}

/// Fingerprint of a group given only by its table (no tuple knowledge).
pub fn fingerprint_table(g: &BlackBoxGroup, drop_x: bool) -> Result<Fingerprint> {
    let (p, k) = g.prime_power().ok_or(Error::NotPGroup(g.order()))?;
    let derived = g.derived_subgroup();
    let (q, _) = g.quotient(&derived)?;
    let inv = q.abelian_invariants()?;
    if inv.len() != 2 {
        return Err(Error::NotTwoGenerated(inv.len()));
    }
    let f = delta_powers(g, usize::MAX)?;
    let d = jennings_dims_direct(g, &f);
    let x = if p == 2 && !drop_x {
        squaring_kernel_sizes(g, &f, default_i_max(f.depth()))?
    } else {
        Vec::new()
    };
    Ok(Fingerprint {
        p,
        order: k,
        abelianization: (inv[0], inv[1]),
        exponent: log_p(g.exponent() as u64, p),
        d,
        x,
    })
}

/// Fingerprint of an admissible tuple, plus which path produced it.
pub fn fingerprint_with(t: &Tuple5, opts: &FingerprintOptions) -> Result<(Fingerprint, Path)> {
    if !is_admissible(t) {
        return Err(Error::InvalidShape(format!("tuple {t} is not admissible")));
    }
    let grp = PGroup2::new(*t)?;
    let direct = !opts.formula_only && grp.order() <= opts.direct_cap as u64;
    if direct {
        let g = grp.multiplication_table(opts.direct_cap.max(DEFAULT_TABLE_CAP))?;
        return Ok((fingerprint_table(&g, opts.drop_x)?, Path::Direct));
    }
    let chain = DimensionSubgroupChain::formula(t)?;
    let x = if t.p == 2 && !opts.drop_x {
        let index = nilpotency_index_from_ranks(2, &chain.ranks());
        squaring_kernel_sizes_formula(t, default_i_max(index))?
    } else {
        Vec::new()
    };
    let fp = Fingerprint {
        p: t.p,
        order: t.total(),
        abelianization: grp.abelianization_type(),
        exponent: log_p(grp.exponent(), t.p),
        d: chain.jennings_dims(),
        x,
    };
    Ok((fp, Path::Formula))
}

pub fn fingerprint(t: &Tuple5) -> Result<Fingerprint> {
    Ok(fingerprint_with(t, &FingerprintOptions::for_prime(t.p))?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UClaim {
    /// Least `i >= 0` with `d_i = 0` (p odd) or `d_i < 3` (p = 2); indices
    /// past the end of `d` count as 0.
    pub u: u32,
    /// `s2` for p odd, `min(n2 - 1, s1, s2)` for p = 2.
    pub predicted: u32,
    pub holds: bool,
    /// `u = 0`, which only exists because the minimum starts at `i = 0`.
    pub index_zero: bool,
}

pub fn u_invariant(t: &Tuple5, d: &[u32]) -> UClaim {
    let threshold = if t.p == 2 { 3 } else { 1 };
    let u = (0..)
        .find(|&i| d.get(i).copied().unwrap_or(0) < threshold)
        .unwrap() as u32;
    let predicted = if t.p == 2 {
        (t.n2 - 1).min(t.s1).min(t.s2)
    } else {
        t.s2
    };
    UClaim {
        u,
        predicted,
        holds: u == predicted,
        index_zero: u == 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleRecord {
    pub tuple: Tuple5,
    pub fingerprint: Fingerprint,
    pub path: Path,
    pub u: UClaim,
    /// Exponent equals `p^(m + n1 - s1)`.
    pub exponent_claim: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    /// Shared `(m, n1, n2, s1)`.
    pub class: (u32, u32, u32, u32),
    pub s2: (u32, u32),
    /// `None` means the pair collides.
    pub component: Option<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub p: u64,
    pub max_total: u32,
    pub records: Vec<TupleRecord>,
    pub collisions: Vec<(Tuple5, Tuple5)>,
    pub separations: Vec<Separation>,
}

impl Report {
    pub fn u_failures(&self) -> Vec<Tuple5> {
        self.records.iter().filter(|r| !r.u.holds).map(|r| r.tuple).collect()
    }

    pub fn exponent_failures(&self) -> Vec<Tuple5> {
        self.records
            .iter()
            .filter(|r| !r.exponent_claim)
            .map(|r| r.tuple)
            .collect()
    }

    /// No collisions and no failed claims.
    pub fn passed(&self) -> bool {
        self.collisions.is_empty() && self.u_failures().is_empty() && self.exponent_failures().is_empty()
    }
}

/// Fingerprints every admissible tuple with `m + n1 + n2 <= max_total` and
/// reports collisions between distinct tuples.
pub fn verify_injectivity(p: u64, max_total: u32, opts: &FingerprintOptions) -> Result<Report> {
    let tuples = enumerate_admissible(p, max_total)?;
    let records = tuples
        .par_iter()
        .map(|t| {
            let (fingerprint, path) = fingerprint_with(t, opts)?;
            // u is read from the Jennings data even when X is dropped
            let u = u_invariant(t, &fingerprint.d);
            let exponent_claim = fingerprint.exponent == t.m + t.n1 - t.s1;
            Ok(TupleRecord {
                tuple: *t,
                fingerprint,
                path,
                u,
                exponent_claim,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut by_fp: BTreeMap<&Fingerprint, Vec<Tuple5>> = BTreeMap::new();
    for r in &records {
        by_fp.entry(&r.fingerprint).or_default().push(r.tuple);
    }
    let mut collisions = Vec::new();
    for ts in by_fp.values() {
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                collisions.push((ts[i], ts[j]));
            }
        }
    }
    collisions.sort();

    let mut separations = Vec::new();
    for (i, a) in records.iter().enumerate() {
        for b in &records[i + 1..] {
            let (ta, tb) = (a.tuple, b.tuple);
            if (ta.m, ta.n1, ta.n2, ta.s1) == (tb.m, tb.n1, tb.n2, tb.s1) {
                separations.push(Separation {
                    class: (ta.m, ta.n1, ta.n2, ta.s1),
                    s2: (ta.s2, tb.s2),
                    component: a.fingerprint.first_difference(&b.fingerprint),
                });
            }
        }
    }

    Ok(Report {
        p,
        max_total,
        records,
        collisions,
        separations,
    })
}
