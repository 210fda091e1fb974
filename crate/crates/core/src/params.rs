//! Classification parameters `(p; m, n1, n2, s1, s2)` and the admissible set.
//!
//! A tuple describes the group generated by `b1, b2` with `a = [b2, b1]`
//! central of order dividing `p^m` and `b_i^(p^n_i) = a^(p^s_i)`.
//! Admissible tuples are in bijection with isomorphism classes of
//! 2-generated p-groups of class exactly two.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trial-division primality test; `p` is always tiny here.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tuple5 {
    pub p: u64,
    pub m: u32,
    pub n1: u32,
    pub n2: u32,
    pub s1: u32,
    pub s2: u32,
}

impl Tuple5 {
    /// Builds a tuple, rejecting non-prime `p`.
    pub fn new(p: u64, m: u32, n1: u32, n2: u32, s1: u32, s2: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Tuple5 { p, m, n1, n2, s1, s2 })
    }

    /// `m + n1 + n2`, the base-p logarithm of the group order.
    pub fn total(&self) -> u32 {
        self.m + self.n1 + self.n2
    }

    /// Weaker than admissibility: the shape the group constructor accepts.
    pub fn is_constructible(&self) -> bool {
        0 < self.m
            && self.m <= self.n2
            && self.n2 <= self.n1
            && self.s1 <= self.m
            && self.s2 <= self.m
    }

    /// The five integers as written on the command line.
    pub fn shape_str(&self) -> String {
        format!("{},{},{},{},{}", self.m, self.n1, self.n2, self.s1, self.s2)
    }

    /// Parses `m,n1,n2,s1,s2`.
    pub fn parse_shape(p: u64, s: &str) -> Result<Self> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("tuple {s:?}: {e}")))?;
        if parts.len() != 5 {
            return Err(Error::Parse(format!("tuple {s:?}: expected 5 integers")));
        }
        Tuple5::new(p, parts[0], parts[1], parts[2], parts[3], parts[4])
    }

    fn ordering_key(&self) -> (u32, u32, u32, u32, u32, u32) {
        (self.total(), self.m, self.n1, self.n2, self.s1, self.s2)
    }
}

impl fmt::Display for Tuple5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.p, self.m, self.n1, self.n2, self.s1, self.s2
        )
    }
}

/// `0 < m <= n2 <= n1` with `s1, s2 <= m`, `n2 - s2 <= n1 - s1`,
/// `s1 < n1` when p = 2, and `s2 <= s1` apart from the p = 2 family
/// `s1 + 1 = s2 = m = n1 = n2`.
pub fn is_admissible(t: &Tuple5) -> bool {
    let Tuple5 { p, m, n1, n2, s1, s2 } = *t;
    let shape = 0 < m && s1 <= m && s2 <= m && m <= n2 && n2 <= n1;
    // no subtraction: stays in unsigned arithmetic
    let gap = n1 + s2 >= n2 + s1;
    let two = p != 2 || s1 < n1;
    let order = s1 >= s2 || (p == 2 && n1 == n2 && n2 == m && m == s2 && s2 == s1 + 1);
    shape && gap && two && order
}

/// All admissible tuples with `m + n1 + n2 <= max_total`, ordered by
/// `(total, m, n1, n2, s1, s2)`.
pub fn enumerate_admissible(p: u64, max_total: u32) -> Result<Vec<Tuple5>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut out = Vec::new();
    for (m, n1, n2) in shells(max_total) {
        for (s1, s2) in region_unchecked(p, m, n1, n2) {
            out.push(Tuple5 { p, m, n1, n2, s1, s2 });
        }
    }
    out.sort_by_key(Tuple5::ordering_key);
    Ok(out)
}

/// Every `(m, n1, n2)` with `0 < m <= n2 <= n1` and `m + n1 + n2 <= max_total`.
pub fn shells(max_total: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for total in 3..=max_total {
        for m in 1..=total {
            for n2 in m..=total {
                if m + 2 * n2 > total {
                    break;
                }
                let n1 = total - m - n2;
                if n1 >= n2 {
                    out.push((m, n1, n2));
                }
            }
        }
    }
    out
}

/// Admissible `(s1, s2)` pairs for fixed `(p, m, n1, n2)`, sorted.
pub fn region(p: u64, m: u32, n1: u32, n2: u32) -> Result<Vec<(u32, u32)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(0 < m && m <= n2 && n2 <= n1) {
        return Err(Error::InvalidShape(format!(
            "need 0 < m <= n2 <= n1, got m={m} n1={n1} n2={n2}"
        )));
    }
    Ok(region_unchecked(p, m, n1, n2))
}

fn region_unchecked(p: u64, m: u32, n1: u32, n2: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for s1 in 0..=m {
        for s2 in 0..=m {
            if is_admissible(&Tuple5 { p, m, n1, n2, s1, s2 }) {
                out.push((s1, s2));
            }
        }
    }
    out
}

/// Minimal SVG scatter of a region: one marker per admissible pair,
/// axis ticks at `0..=m`.
pub fn region_svg(m: u32, pairs: &[(u32, u32)]) -> String {
    let cell = 40.0;
    let margin = 40.0;
    let side = cell * m as f64;
    let size = side + 2.0 * margin;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    ));
    let x0 = margin;
    let y0 = margin + side;
    s.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{}\" y2=\"{y0}\" stroke=\"black\"/>\n",
        x0 + side
    ));
    s.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{}\" stroke=\"black\"/>\n",
        y0 - side
    ));
    for i in 0..=m {
        let d = cell * i as f64;
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{i}</text>\n",
            x0 + d,
            y0 + 15.0
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{i}</text>\n",
            x0 - 6.0,
            y0 - d + 3.0
        ));
    }
    for &(s1, s2) in pairs {
        s.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\"/>\n",
            x0 + cell * s1 as f64,
            y0 - cell * s2 as f64
        ));
    }
    s.push_str("</svg>\n");
    s
}
