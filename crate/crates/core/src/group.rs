//! Finite groups stored as explicit multiplication tables.
//!
//! Every table uses index 0 for the identity. Elements are small integer
//! handles into the table; all arithmetic is a table lookup.

use std::collections::VecDeque;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

/// Largest group order any constructor will materialize.
pub const DEFAULT_MAX_ORDER: usize = 65536;

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;

/// Number of random triples tried above the exhaustive limit.
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 100_000;

/// Seed used for sampled associativity checks unless a caller overrides it.
pub const DEFAULT_LAW_SEED: u64 = 0x005e_ed0f_c7c1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group order {0}")]
    InvalidOrder(usize),
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("table is not a group: {0}")]
    NotAGroup(String),
}

/// Handle to an element of some [`GroupTable`]. Index 0 is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// An immutable finite group given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    /// Row-major; `mul[a * order + b]` is `a * b`.
    mul: Vec<u32>,
    inv: Vec<u32>,
    elt_order: Vec<u32>,
    label: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl GroupTable {
    /// Builds a group from an untrusted row-major table and checks every
    /// group law (identity at 0, Latin square rows and columns, associativity).
    pub fn from_mul_table(
        label: impl Into<String>,
        order: usize,
        mul: Vec<u32>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidOrder(0));
        }
        if order > DEFAULT_MAX_ORDER {
            return Err(GroupError::OrderCap {
                order,
                cap: DEFAULT_MAX_ORDER,
            });
        }
        if mul.len() != order * order {
            return Err(GroupError::NotAGroup(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&v| v as usize >= order) {
            return Err(GroupError::NotAGroup(format!("entry {bad} out of range")));
        }
        check_latin_square(order, &mul)?;
        let table = Self::from_trusted(label, order, mul);
        table.check_laws(DEFAULT_LAW_SEED)?;
        Ok(table)
    }

    /// Builds a group from a table already known to be a group with identity 0.
    pub(crate) fn from_trusted(label: impl Into<String>, order: usize, mul: Vec<u32>) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            let b = row
                .iter()
                .position(|&v| v == 0)
                .expect("every row of a group table contains the identity");
            inv[a] = b as u32;
        }
        let mut table = GroupTable {
            order,
            mul,
            inv,
            elt_order: vec![0; order],
            label: label.into(),
        };
        table.elt_order = (0..order)
            .map(|g| table.order_by_powers(Element(g as u32)) as u32)
            .collect();
        table
    }

    fn order_by_powers(&self, g: Element) -> usize {
        let mut k = 1;
        let mut acc = g;
        while !acc.is_identity() {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn element(&self, index: usize) -> Result<Element, GroupError> {
        if index < self.order {
            Ok(Element(index as u32))
        } else {
            Err(GroupError::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order as u32).map(Element)
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = Element> + '_ {
        (1..self.order as u32).map(Element)
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.mul[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        Element(self.inv[a.index()])
    }

    /// `a^k` for any integer `k`, negative powers included.
    pub fn pow(&self, a: Element, k: i64) -> Element {
        let o = self.elt_order[a.index()] as i64;
        let mut e = k.rem_euclid(o);
        let mut base = a;
        let mut acc = Element::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `b^-1 a b`.
    pub fn conjugate(&self, a: Element, b: Element) -> Element {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: Element, b: Element) -> Element {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    #[inline]
    pub fn commute(&self, a: Element, b: Element) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    #[inline]
    pub fn element_order(&self, g: Element) -> usize {
        self.elt_order[g.index()] as usize
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.elt_order
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        self.elt_order
            .iter()
            .fold(1usize, |acc, &o| lcm(acc, o as usize))
    }

    /// Subgroup generated by `gens`, sorted by index.
    pub fn closure(&self, gens: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        seen[0] = true;
        queue.push_back(Element::IDENTITY);
        while let Some(u) = queue.pop_front() {
            out.push(u);
            for &g in gens {
                let v = self.mul(u, g);
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    queue.push_back(v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Powers of `g`, starting from the identity.
    pub fn cyclic_subgroup(&self, g: Element) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.element_order(g));
        let mut acc = Element::IDENTITY;
        loop {
            out.push(acc);
            acc = self.mul(acc, g);
            if acc.is_identity() {
                break;
            }
        }
        out
    }

    pub fn is_cyclic(&self) -> bool {
        self.elt_order.iter().any(|&o| o as usize == self.order)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(Element(a as u32), Element(b as u32))))
    }

    pub fn center(&self) -> Vec<Element> {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.commute(z, g)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Vec<Element> {
        let mut gens: Vec<Element> = Vec::new();
        let mut seen = vec![false; self.order];
        for a in self.elements() {
            for b in self.elements() {
                let c = self.commutator(a, b);
                if !seen[c.index()] {
                    seen[c.index()] = true;
                    gens.push(c);
                }
            }
        }
        self.closure(&gens)
    }

    /// Dihedral 2-group of order at least 8: a cyclic subgroup `<x>` of index 2
    /// and an involution `y` outside it with `y^-1 x y = x^-1`.
    pub fn is_dihedral_2group(&self) -> bool {
        let n = self.order;
        if n < 8 || !n.is_power_of_two() {
            return false;
        }
        let half = n / 2;
        for x in self.nontrivial().filter(|&x| self.element_order(x) == half) {
            let mut in_x = vec![false; n];
            for e in self.cyclic_subgroup(x) {
                in_x[e.index()] = true;
            }
            let x_inv = self.inv(x);
            let found = self.nontrivial().any(|y| {
                !in_x[y.index()] && self.element_order(y) == 2 && self.conjugate(x, y) == x_inv
            });
            if found {
                return true;
            }
        }
        false
    }

    /// Checks identity, inverse and associativity laws. Associativity is
    /// exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`] and sampled above it.
    pub fn check_laws(&self, seed: u64) -> Result<(), GroupError> {
        let n = self.order;
        for g in self.elements() {
            if self.mul(Element::IDENTITY, g) != g || self.mul(g, Element::IDENTITY) != g {
                return Err(GroupError::NotAGroup(format!("identity law fails at {g}")));
            }
            if !self.mul(g, self.inv(g)).is_identity() || !self.mul(self.inv(g), g).is_identity() {
                return Err(GroupError::NotAGroup(format!("inverse law fails at {g}")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            let (a, b, c) = (Element(a as u32), Element(b as u32), Element(c as u32));
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul[a * n + b] as usize;
                    for c in 0..n {
                        let lhs = self.mul[ab * n + c];
                        let bc = self.mul[b * n + c] as usize;
                        if lhs != self.mul[a * n + bc] {
                            return Err(GroupError::NotAGroup(format!(
                                "associativity fails at (g{a}, g{b}, g{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAGroup(format!(
                        "associativity fails at (g{a}, g{b}, g{c})"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_latin_square(order: usize, mul: &[u32]) -> Result<(), GroupError> {
    for g in 0..order {
        if mul[g] as usize != g || mul[g * order] as usize != g {
            return Err(GroupError::NotAGroup(format!(
                "element 0 is not a two-sided identity (fails at g{g})"
            )));
        }
    }
    let mut seen = vec![usize::MAX; order];
    for a in 0..order {
        for b in 0..order {
            let v = mul[a * order + b] as usize;
            if seen[v] == a {
                return Err(GroupError::NotAGroup(format!("row g{a} repeats g{v}")));
            }
            seen[v] = a;
        }
    }
    seen.fill(usize::MAX);
    for b in 0..order {
        for a in 0..order {
            let v = mul[a * order + b] as usize;
            if seen[v] == b {
                return Err(GroupError::NotAGroup(format!("column g{b} repeats g{v}")));
            }
            seen[v] = b;
        }
    }
    Ok(())
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// The unique prime `p` and exponent `k` with `n = p^k`, if `n` is a
/// nontrivial prime power.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..).find(|d| n.is_multiple_of(*d)).unwrap_or(n);
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    #[test]
    fn rejects_non_group_tables() {
        // Z_3 with a broken row
        let bad = vec![0, 1, 2, 1, 2, 0, 2, 2, 1];
        assert!(matches!(
            GroupTable::from_mul_table("bad", 3, bad),
            Err(GroupError::NotAGroup(_))
        ));
        // identity not at 0
        let shifted = vec![1, 0, 0, 1];
        assert!(GroupTable::from_mul_table("shifted", 2, shifted).is_err());
        assert_eq!(
            GroupTable::from_mul_table("empty", 0, vec![]),
            Err(GroupError::InvalidOrder(0))
        );
    }

    #[test]
    fn rejects_latin_square_that_is_not_associative() {
        // A loop of order 5 with identity 0 that is not a group.
        let rows: [[u32; 5]; 5] = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let mul: Vec<u32> = rows.iter().flatten().copied().collect();
        let err = GroupTable::from_mul_table("loop5", 5, mul).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn element_orders() {
        assert_eq!(cyclic(6).unwrap().element_order(Element(1)), 6);
        let d16 = dihedral(16).unwrap();
        assert_eq!(d16.element_order(Element::IDENTITY), 1);
        assert_eq!(d16.element_order(SEMIDIRECT_X), 8);
        assert_eq!(d16.element_order(semidirect_y(8)), 2);
        let c4c2 = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        // (1,1) encodes as 1*2 + 1
        assert_eq!(c4c2.element_order(Element(3)), 4);
    }

    #[test]
    fn exponents() {
        assert_eq!(elementary_abelian(2, 4).unwrap().exponent(), 2);
        assert_eq!(modular(3, 2).unwrap().exponent(), 9);
        assert_eq!(generalized_quaternion(3).unwrap().exponent(), 8);
        assert_eq!(cyclic(1).unwrap().exponent(), 1);
    }

    #[test]
    fn closures() {
        let c8 = cyclic(8).unwrap();
        assert_eq!(c8.closure(&[Element::IDENTITY]), vec![Element::IDENTITY]);
        assert_eq!(c8.closure(&[Element(1)]).len(), 8);
        let d16 = dihedral(16).unwrap();
        let x2 = d16.pow(SEMIDIRECT_X, 2);
        let sub = d16.closure(&[x2, semidirect_y(8)]);
        assert_eq!(sub.len(), 8);
        // the subgroup is dihedral of order 8: five involutions
        let involutions = sub.iter().filter(|&&g| d16.element_order(g) == 2).count();
        assert_eq!(involutions, 5);
    }

    #[test]
    fn cyclicity() {
        assert!(cyclic(16).unwrap().is_cyclic());
        let c4 = cyclic(4).unwrap();
        assert!(!direct_product(&c4, &c4).unwrap().is_cyclic());
        assert!(!generalized_quaternion(2).unwrap().is_cyclic());
    }

    #[test]
    fn dihedral_recognition() {
        assert!(dihedral(16).unwrap().is_dihedral_2group());
        assert!(dihedral(8).unwrap().is_dihedral_2group());
        assert!(!semidihedral(16).unwrap().is_dihedral_2group());
        assert!(!cyclic(8).unwrap().is_dihedral_2group());
        assert!(!generalized_quaternion(3).unwrap().is_dihedral_2group());
        // C_2 and the Klein group are handled by the exponent-p clause
        assert!(!cyclic(2).unwrap().is_dihedral_2group());
        assert!(!elementary_abelian(2, 2).unwrap().is_dihedral_2group());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let c8 = cyclic(8).unwrap();
        assert_eq!(c8.pow(Element(1), -1), Element(7));
        assert_eq!(c8.pow(Element(3), 8), Element::IDENTITY);
        assert_eq!(c8.pow(Element(3), 3), Element(1));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(625), Some((5, 4)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(7), Some((7, 1)));
    }

    #[test]
    fn center_and_derived() {
        let q8 = generalized_quaternion(2).unwrap();
        assert_eq!(q8.center().len(), 2);
        assert_eq!(q8.derived_subgroup().len(), 2);
        let c4 = cyclic(4).unwrap();
        assert_eq!(c4.derived_subgroup().len(), 1);
    }
}
