//! Concrete model of the class-two group attached to a constructible tuple.
//!
//! Elements are kept in the normal form `a^x b1^y b2^z` with
//! `0 <= x < p^m`, `0 <= y < p^n1`, `0 <= z < p^n2`. Moving `b2^z1` past
//! `b1^y2` costs `a^(y2 z1)`; wrapping `b_i` past `p^n_i` costs `a^(p^s_i)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::blackbox::BlackBoxGroup;
use crate::error::{Error, Result};
use crate::params::Tuple5;

/// Default cap on `|G|` for [`PGroup2::multiplication_table`].
pub const DEFAULT_TABLE_CAP: usize = 1 << 12;

/// Largest supported `m + n1 + n2`.
pub const MAX_TOTAL_EXPONENT: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl Elem {
    pub const IDENTITY: Elem = Elem { x: 0, y: 0, z: 0 };

    pub fn new(x: u64, y: u64, z: u64) -> Self {
        Elem { x, y, z }
    }
}

#[derive(Debug, Clone)]
pub struct PGroup2 {
    tuple: Tuple5,
    pm: u64,
    pn1: u64,
    pn2: u64,
    ps1: u64,
    ps2: u64,
}

impl PGroup2 {
    /// Builds the group for any constructible tuple (admissible or not).
    pub fn new(tuple: Tuple5) -> Result<Self> {
        if !tuple.is_constructible() {
            return Err(Error::NotConstructible(tuple.to_string()));
        }
        let p = tuple.p;
        let order = p.checked_pow(tuple.total());
        if tuple.total() > MAX_TOTAL_EXPONENT || order.is_none() {
            return Err(Error::CapExceeded {
                order: order.unwrap_or(u64::MAX),
                cap: 1u64 << MAX_TOTAL_EXPONENT,
            });
        }
        Ok(PGroup2 {
            tuple,
            pm: p.pow(tuple.m),
            pn1: p.pow(tuple.n1),
            pn2: p.pow(tuple.n2),
            ps1: p.pow(tuple.s1),
            ps2: p.pow(tuple.s2),
        })
    }

    pub fn tuple(&self) -> &Tuple5 {
        &self.tuple
    }

    pub fn p(&self) -> u64 {
        self.tuple.p
    }

    pub fn order(&self) -> u64 {
        self.pm * self.pn1 * self.pn2
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    /// `a = [b2, b1]`.
    pub fn a(&self) -> Elem {
        Elem::new(1 % self.pm, 0, 0)
    }

    pub fn b1(&self) -> Elem {
        Elem::new(0, 1 % self.pn1, 0)
    }

    pub fn b2(&self) -> Elem {
        Elem::new(0, 0, 1 % self.pn2)
    }

    pub fn is_valid(&self, e: &Elem) -> bool {
        e.x < self.pm && e.y < self.pn1 && e.z < self.pn2
    }

    pub fn mul(&self, e1: &Elem, e2: &Elem) -> Elem {
        let ysum = e1.y + e2.y;
        let zsum = e1.z + e2.z;
        let c1 = ysum / self.pn1;
        let c2 = zsum / self.pn2;
        let pm = self.pm as u128;
        let x = (e1.x as u128
            + e2.x as u128
            + (e2.y as u128 * e1.z as u128) % pm
            + (self.ps1 * c1) as u128
            + (self.ps2 * c2) as u128)
            % pm;
        Elem {
            x: x as u64,
            y: ysum % self.pn1,
            z: zsum % self.pn2,
        }
    }

    pub fn pow(&self, e: &Elem, mut k: u64) -> Elem {
        let mut base = *e;
        let mut acc = Elem::IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, e: &Elem) -> Elem {
        self.pow(e, self.order() - 1)
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, g: &Elem, h: &Elem) -> Elem {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.mul(&self.mul(&gi, &hi), &self.mul(g, h))
    }

    /// Element order, found by repeated p-th powering.
    pub fn element_order(&self, e: &Elem) -> u64 {
        let mut cur = *e;
        let mut order = 1;
        while cur != Elem::IDENTITY {
            cur = self.pow(&cur, self.p());
            order *= self.p();
        }
        order
    }

    /// Maximum element order over the whole group.
    pub fn exponent(&self) -> u64 {
        self.elements().map(|e| self.element_order(&e)).max().unwrap_or(1)
    }

    /// `|G'| = p^m`; the derived subgroup is `<a>`.
    pub fn derived_order(&self) -> u64 {
        self.pm
    }

    /// `(n1, n2)` with `G/G' = C_{p^n1} x C_{p^n2}`.
    pub fn abelianization_type(&self) -> (u32, u32) {
        (self.tuple.n1, self.tuple.n2)
    }

    /// Position of `e` in the `(x, y, z)` lexicographic enumeration.
    pub fn index_of(&self, e: &Elem) -> u64 {
        (e.x * self.pn1 + e.y) * self.pn2 + e.z
    }

    pub fn element_at(&self, idx: u64) -> Elem {
        let z = idx % self.pn2;
        let rest = idx / self.pn2;
        Elem::new(rest / self.pn1, rest % self.pn1, z)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Subgroup generated by `gens`, as a set of elements.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> HashSet<Elem> {
        let mut seen = HashSet::new();
        seen.insert(Elem::IDENTITY);
        let mut queue = vec![Elem::IDENTITY];
        while let Some(e) = queue.pop() {
            for g in gens {
                let n = self.mul(&e, g);
                if seen.insert(n) {
                    queue.push(n);
                }
            }
        }
        seen
    }

    /// Multiplication table, elements in `(x, y, z)` lexicographic order.
    pub fn multiplication_table(&self, cap: usize) -> Result<BlackBoxGroup> {
        let n = self.order();
        if n > cap as u64 {
            return Err(Error::CapExceeded {
                order: n,
                cap: cap as u64,
            });
        }
        let n = n as usize;
        let elems: Vec<Elem> = self.elements().collect();
        let mut table = vec![0u32; n * n];
        for (i, g) in elems.iter().enumerate() {
            let row = &mut table[i * n..(i + 1) * n];
            for (j, h) in elems.iter().enumerate() {
                row[j] = self.index_of(&self.mul(g, h)) as u32;
            }
        }
        Ok(BlackBoxGroup::from_trusted_table(n, table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(p: u64, m: u32, n1: u32, n2: u32, s1: u32, s2: u32) -> PGroup2 {
        PGroup2::new(Tuple5::new(p, m, n1, n2, s1, s2).unwrap()).unwrap()
    }

    fn q8() -> PGroup2 {
        g(2, 1, 1, 1, 0, 0)
    }

    fn d8() -> PGroup2 {
        g(2, 1, 1, 1, 0, 1)
    }

    fn random_elem(gr: &PGroup2, rng: &mut ChaCha8Rng) -> Elem {
        gr.element_at(rng.gen_range(0..gr.order()))
    }

    #[test]
    fn rejects_non_constructible() {
        let t = Tuple5::new(2, 2, 1, 1, 0, 0).unwrap();
        assert!(matches!(PGroup2::new(t), Err(Error::NotConstructible(_))));
        let t = Tuple5::new(2, 1, 1, 1, 2, 0).unwrap();
        assert!(PGroup2::new(t).is_err());
    }

    #[test]
    fn mul_examples() {
        let d = d8();
        assert_eq!(d.mul(&Elem::new(0, 0, 1), &Elem::new(0, 1, 0)), Elem::new(1, 1, 1));
        let q = q8();
        assert_eq!(q.mul(&Elem::new(0, 1, 0), &Elem::new(0, 1, 0)), Elem::new(1, 0, 0));
        for e in q.elements() {
            assert_eq!(q.mul(&e, &Elem::IDENTITY), e);
            assert_eq!(q.mul(&Elem::IDENTITY, &e), e);
        }
    }

    // D8 with r = b1 (order 4), s = b2 (order 2), srs = r^-1.
    #[test]
    fn d8_model_satisfies_dihedral_relations() {
        let d = d8();
        let r = d.b1();
        let s = d.b2();
        assert_eq!(d.element_order(&r), 4);
        assert_eq!(d.element_order(&s), 2);
        assert_eq!(d.mul(&d.mul(&s, &r), &s), d.inv(&r));
        assert_eq!(d.pow(&r, 2), d.a());
    }

    #[test]
    fn pow_examples() {
        let q = q8();
        assert_eq!(q.pow(&q.b1(), 4), Elem::IDENTITY);
        for k in 0..10 {
            assert_eq!(q.pow(&Elem::IDENTITY, k), Elem::IDENTITY);
        }
        let h = g(2, 1, 2, 1, 0, 0);
        assert_eq!(h.pow(&h.b1(), 4), Elem::new(1, 0, 0));
        assert_eq!(h.pow(&h.b1(), 0), Elem::IDENTITY);
    }

    #[test]
    fn commutator_examples() {
        for gr in [q8(), d8(), g(3, 2, 3, 2, 1, 0)] {
            assert_eq!(gr.commutator(&gr.b2(), &gr.b1()), Elem::new(1, 0, 0));
            for e in gr.elements().take(20) {
                assert_eq!(gr.commutator(&e, &e), Elem::IDENTITY);
            }
        }
        let q = q8();
        assert_eq!(q.commutator(&q.b1(), &q.b2()), Elem::new(1, 0, 0));
        let h = g(3, 2, 2, 2, 0, 0);
        assert_eq!(h.commutator(&h.b1(), &h.b2()), Elem::new(8, 0, 0));
    }

    #[test]
    fn order_examples() {
        assert_eq!(q8().element_order(&q8().b1()), 4);
        assert_eq!(q8().element_order(&Elem::IDENTITY), 1);
        let h = g(2, 1, 2, 1, 1, 1);
        assert_eq!(h.element_order(&h.b1()), 4);
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(g(2, 1, 2, 1, 0, 0).exponent(), 8);
        assert_eq!(d8().exponent(), 4);
        assert_eq!(g(3, 1, 1, 1, 1, 1).exponent(), 3);
    }

    #[test]
    fn derived_and_abelianization() {
        assert_eq!(q8().derived_order(), 2);
        assert_eq!(q8().abelianization_type(), (1, 1));
        assert_eq!(g(3, 2, 2, 2, 0, 0).abelianization_type(), (2, 2));
        // cross-check against the table machinery
        let bb = q8().multiplication_table(DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(bb.derived_subgroup().len(), 2);
    }

    #[test]
    fn index_roundtrip() {
        let gr = g(3, 1, 2, 1, 1, 0);
        for i in 0..gr.order() {
            assert_eq!(gr.index_of(&gr.element_at(i)), i);
        }
        assert_eq!(gr.index_of(&Elem::IDENTITY), 0);
    }

    #[test]
    fn table_is_latin_with_identity_row() {
        let t = q8().multiplication_table(DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(t.order(), 8);
        for i in 0..8 {
            assert_eq!(t.mul(0, i), i);
            assert_eq!(t.mul(i, 0), i);
        }
        assert!(t.check_latin().is_ok());
        assert!(t.check_associative_exhaustive().is_ok());
    }

    #[test]
    fn table_cap() {
        let gr = g(2, 2, 6, 5, 0, 0);
        assert!(matches!(
            gr.multiplication_table(DEFAULT_TABLE_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    fn constructible(p: u64, max_total: u32) -> Vec<PGroup2> {
        let mut v = Vec::new();
        for (m, n1, n2) in crate::params::shells(max_total) {
            for s1 in 0..=m {
                for s2 in 0..=m {
                    v.push(g(p, m, n1, n2, s1, s2));
                }
            }
        }
        v
    }

    #[test]
    fn associativity_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for gr in constructible(2, 7).into_iter().chain(constructible(3, 5)).chain(constructible(5, 4)) {
            for _ in 0..10_000 {
                let (a, b, c) = (
                    random_elem(&gr, &mut rng),
                    random_elem(&gr, &mut rng),
                    random_elem(&gr, &mut rng),
                );
                assert_eq!(gr.mul(&gr.mul(&a, &b), &c), gr.mul(&a, &gr.mul(&b, &c)), "{:?}", gr.tuple());
            }
        }
    }

    #[test]
    fn class_two_and_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for gr in constructible(2, 8).into_iter().chain(constructible(3, 6)) {
            let t = *gr.tuple();
            let p = t.p;
            assert_eq!(gr.pow(&gr.b1(), p.pow(t.n1)), gr.pow(&gr.a(), p.pow(t.s1)));
            assert_eq!(gr.pow(&gr.b2(), p.pow(t.n2)), gr.pow(&gr.a(), p.pow(t.s2)));
            assert_eq!(gr.pow(&gr.a(), p.pow(t.m)), Elem::IDENTITY);
            assert_eq!(gr.element_order(&gr.a()), p.pow(t.m));
            for _ in 0..200 {
                let x = random_elem(&gr, &mut rng);
                let y = random_elem(&gr, &mut rng);
                let z = random_elem(&gr, &mut rng);
                let c = gr.commutator(&x, &y);
                assert_eq!(gr.mul(&c, &z), gr.mul(&z, &c));
                assert_eq!(gr.mul(&x, &gr.inv(&x)), Elem::IDENTITY);
            }
        }
    }

    // (xy)^n = [y,x]^(n(n-1)/2) x^n y^n
    #[test]
    fn power_identity_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for gr in constructible(2, 6).into_iter().chain(constructible(3, 5)) {
            let t = *gr.tuple();
            let bound = t.p.pow(t.m + t.n1);
            for _ in 0..300 {
                let x = random_elem(&gr, &mut rng);
                let y = random_elem(&gr, &mut rng);
                let n = rng.gen_range(0..bound);
                let lhs = gr.pow(&gr.mul(&x, &y), n);
                let c = gr.commutator(&y, &x);
                let rhs = gr.mul(
                    &gr.pow(&c, n * n.saturating_sub(1) / 2),
                    &gr.mul(&gr.pow(&x, n), &gr.pow(&y, n)),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn exponent_matches_closed_form_for_admissible() {
        for p in [2, 3] {
            for t in crate::params::enumerate_admissible(p, if p == 2 { 8 } else { 6 }).unwrap() {
                let gr = PGroup2::new(t).unwrap();
                assert_eq!(gr.exponent(), p.pow(t.m + t.n1 - t.s1), "{t}");
            }
        }
    }

    #[test]
    fn b_orders_match_closed_form() {
        for gr in constructible(2, 7).into_iter().chain(constructible(3, 6)) {
            let t = *gr.tuple();
            assert_eq!(gr.element_order(&gr.b1()), t.p.pow(t.m + t.n1 - t.s1));
            assert_eq!(gr.element_order(&gr.b2()), t.p.pow(t.m + t.n2 - t.s2));
        }
    }
}
