//! Closed-form constructors for the families the census works with.
//!
//! Metacyclic constructions (`semidirect_cyclic`, `generalized_quaternion`)
//! encode the element `x^a y^b` at index `b * m + a`, so `x` is always
//! [`SEMIDIRECT_X`] and `y` is [`semidirect_y`]`(m)`.

use crate::group::{gcd, is_prime, Element, GroupError, GroupTable, DEFAULT_MAX_ORDER};

/// The generator `x` of the normal cyclic factor in metacyclic encodings.
pub const SEMIDIRECT_X: Element = Element(1);

/// The generator `y` of the acting factor in metacyclic encodings.
pub fn semidirect_y(m: usize) -> Element {
    Element(m as u32)
}

fn check_cap(order: usize, cap: usize) -> Result<(), GroupError> {
    if order > cap {
        Err(GroupError::OrderCap { order, cap })
    } else {
        Ok(())
    }
}

fn build(label: String, n: usize, f: impl Fn(usize, usize) -> usize) -> GroupTable {
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(f(a, b) as u32);
        }
    }
    GroupTable::from_trusted(label, n, mul)
}

/// `C_n` as addition mod `n`.
pub fn cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidOrder(0));
    }
    check_cap(n, DEFAULT_MAX_ORDER)?;
    Ok(build(format!("C({n})"), n, |a, b| (a + b) % n))
}

/// `A x B` with `(a, b)` stored at `a * |B| + b`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, GroupError> {
    direct_product_capped(a, b, DEFAULT_MAX_ORDER)
}

pub fn direct_product_capped(
    a: &GroupTable,
    b: &GroupTable,
    cap: usize,
) -> Result<GroupTable, GroupError> {
    let (na, nb) = (a.order(), b.order());
    let n = na
        .checked_mul(nb)
        .ok_or(GroupError::OrderCap { order: usize::MAX, cap })?;
    check_cap(n, cap.min(DEFAULT_MAX_ORDER))?;
    let label = format!("{}x{}", a.label(), b.label());
    Ok(build(label, n, |u, v| {
        let (a1, b1) = (u / nb, u % nb);
        let (a2, b2) = (v / nb, v % nb);
        let ap = a.mul(Element(a1 as u32), Element(a2 as u32)).index();
        let bp = b.mul(Element(b1 as u32), Element(b2 as u32)).index();
        ap * nb + bp
    }))
}

fn pow_mod(base: usize, mut e: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `C_m ⋊ C_k` where the generator `y` of `C_k` acts on `C_m` by `a ↦ t·a`.
///
/// Multiplication is `(a1, b1)(a2, b2) = (a1 + t^b1 · a2 mod m, b1 + b2 mod k)`,
/// so `y x y^-1 = x^t`.
pub fn semidirect_cyclic(m: usize, k: usize, t: i64) -> Result<GroupTable, GroupError> {
    if m == 0 || k == 0 {
        return Err(GroupError::InvalidOrder(0));
    }
    let n = m
        .checked_mul(k)
        .ok_or(GroupError::OrderCap { order: usize::MAX, cap: DEFAULT_MAX_ORDER })?;
    check_cap(n, DEFAULT_MAX_ORDER)?;
    let t = t.rem_euclid(m as i64) as usize;
    if gcd(t, m) != 1 && m > 1 {
        return Err(GroupError::InvalidAction(format!(
            "multiplier {t} is not a unit mod {m} (gcd(t, m) = {})",
            gcd(t, m)
        )));
    }
    if pow_mod(t, k, m) != 1 % m {
        return Err(GroupError::InvalidAction(format!(
            "t^k = {t}^{k} = {} is not 1 mod {m}",
            pow_mod(t, k, m)
        )));
    }
    let twist: Vec<usize> = (0..k).map(|b| pow_mod(t, b, m)).collect();
    let label = format!("C({m}):C({k})[{t}]");
    Ok(build(label, n, |u, v| {
        let (a1, b1) = (u % m, u / m);
        let (a2, b2) = (v % m, v / m);
        let a = (a1 + twist[b1] * a2) % m;
        let b = (b1 + b2) % k;
        b * m + a
    }))
}

fn two_group_alpha(order: usize, min: usize, family: &str) -> Result<usize, GroupError> {
    if !order.is_power_of_two() || order < min {
        return Err(GroupError::InvalidParameter(format!(
            "{family} order must be a power of 2 and at least {min}, got {order}"
        )));
    }
    Ok(order.trailing_zeros() as usize - 1)
}

/// Dihedral group of the given total order (at least 8): `x^y = x^-1`.
pub fn dihedral(order: usize) -> Result<GroupTable, GroupError> {
    two_group_alpha(order, 8, "dihedral")?;
    let m = order / 2;
    Ok(semidirect_cyclic(m, 2, m as i64 - 1)?.with_label(format!("D({order})")))
}

/// Semidihedral group of the given total order (at least 16): `x^y = x^(m/2 - 1)`.
pub fn semidihedral(order: usize) -> Result<GroupTable, GroupError> {
    two_group_alpha(order, 16, "semidihedral")?;
    let m = order / 2;
    Ok(semidirect_cyclic(m, 2, (m / 2) as i64 - 1)?.with_label(format!("SD({order})")))
}

/// `M_{p^(alpha+1)}`: `x^(p^alpha) = y^p = 1`, `x^y = x^(p^(alpha-1) + 1)`.
///
/// Requires `alpha >= 2` for odd `p` and `alpha >= 3` for `p = 2`.
pub fn modular(p: usize, alpha: u32) -> Result<GroupTable, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::InvalidParameter(format!("{p} is not prime")));
    }
    let min_alpha = if p == 2 { 3 } else { 2 };
    if alpha < min_alpha {
        return Err(GroupError::InvalidParameter(format!(
            "modular group needs alpha >= {min_alpha} for p = {p}, got {alpha}"
        )));
    }
    let m = checked_pow(p, alpha)?;
    let t = m / p + 1;
    Ok(semidirect_cyclic(m, p, t as i64)?.with_label(format!("M({p},{})", alpha + 1)))
}

fn checked_pow(p: usize, e: u32) -> Result<usize, GroupError> {
    p.checked_pow(e)
        .filter(|&v| v <= DEFAULT_MAX_ORDER)
        .ok_or(GroupError::OrderCap { order: usize::MAX, cap: DEFAULT_MAX_ORDER })
}

/// Generalized quaternion group of order `2^(alpha+1)` via the cocycle on
/// `Z_{2^alpha} x Z_2`:
/// `(a1,b1)(a2,b2) = (a1 + (-1)^b1 a2 + b1 b2 2^(alpha-1), b1 xor b2)`.
pub fn generalized_quaternion(alpha: u32) -> Result<GroupTable, GroupError> {
    if alpha < 2 {
        return Err(GroupError::InvalidParameter(format!(
            "generalized quaternion needs alpha >= 2, got {alpha}"
        )));
    }
    let m = checked_pow(2, alpha)?;
    check_cap(2 * m, DEFAULT_MAX_ORDER)?;
    let half = m / 2;
    Ok(build(format!("Q({})", 2 * m), 2 * m, |u, v| {
        let (a1, b1) = (u % m, u / m);
        let (a2, b2) = (v % m, v / m);
        let twisted = if b1 == 1 { (m - a2) % m } else { a2 };
        let a = (a1 + twisted + b1 * b2 * half) % m;
        (b1 ^ b2) * m + a
    }))
}

/// Upper unitriangular 3x3 matrices over `Z_p`, `p` an odd prime.
///
/// `(a, b, c)` is the matrix with `a` at (1,2), `b` at (2,3), `c` at (1,3),
/// stored at `a + p*b + p^2*c`.
pub fn heisenberg(p: usize) -> Result<GroupTable, GroupError> {
    if p == 2 || !is_prime(p) {
        return Err(GroupError::InvalidParameter(format!(
            "Heisenberg construction needs an odd prime, got {p}"
        )));
    }
    let n = checked_pow(p, 3)?;
    let decode = |u: usize| (u % p, (u / p) % p, u / (p * p));
    Ok(build(format!("H({p})"), n, |u, v| {
        let (a1, b1, c1) = decode(u);
        let (a2, b2, c2) = decode(v);
        let a = (a1 + a2) % p;
        let b = (b1 + b2) % p;
        let c = (c1 + c2 + a1 * b2) % p;
        a + p * b + p * p * c
    }))
}

/// `C_p^rank`.
pub fn elementary_abelian(p: usize, rank: u32) -> Result<GroupTable, GroupError> {
    abelian(p, &vec![1; rank as usize])
}

/// `C_{p^e1} x C_{p^e2} x ...` for the given exponent list.
pub fn abelian(p: usize, exponents: &[u32]) -> Result<GroupTable, GroupError> {
    let mut acc = cyclic(1)?;
    let mut first = true;
    for &e in exponents {
        let factor = cyclic(checked_pow(p, e)?)?;
        acc = if first { factor } else { direct_product(&acc, &factor)? };
        first = false;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn involutions(g: &GroupTable) -> Vec<Element> {
        g.elements().filter(|&e| g.element_order(e) == 2).collect()
    }

    #[test]
    fn cyclic_basics() {
        let c1 = cyclic(1).unwrap();
        assert_eq!((c1.order(), c1.exponent()), (1, 1));
        assert_eq!(cyclic(0), Err(GroupError::InvalidOrder(0)));
        let c12 = cyclic(12).unwrap();
        for g in c12.elements() {
            assert_eq!(c12.element_order(g), 12 / gcd(12, g.index()));
        }
    }

    #[test]
    fn product_orders_and_exponents() {
        let c4c2 = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!((c4c2.order(), c4c2.exponent()), (8, 4));
        assert_eq!(c4c2.label(), "C(4)xC(2)");
        let big = cyclic(300).unwrap();
        assert!(matches!(
            direct_product(&big, &big),
            Err(GroupError::OrderCap { order: 90000, .. })
        ));
        assert!(matches!(
            direct_product_capped(&cyclic(8).unwrap(), &cyclic(8).unwrap(), 32),
            Err(GroupError::OrderCap { order: 64, cap: 32 })
        ));
    }

    #[test]
    fn semidirect_action_errors_name_the_condition() {
        let err = semidirect_cyclic(8, 2, 2).unwrap_err();
        assert!(err.to_string().contains("not a unit"), "{err}");
        let err = semidirect_cyclic(9, 2, 4).unwrap_err();
        assert!(err.to_string().contains("is not 1 mod 9"), "{err}");
    }

    #[test]
    fn semidirect_families() {
        let d16 = semidirect_cyclic(8, 2, 7).unwrap();
        assert_eq!(d16.order(), 16);
        assert!(d16.is_dihedral_2group());
        let m27 = semidirect_cyclic(9, 3, 4).unwrap();
        assert_eq!(m27.element_order(SEMIDIRECT_X), 9);
        assert!(!m27.is_abelian());
        let s16 = semidirect_cyclic(8, 2, 3).unwrap();
        assert_eq!(s16.order(), 16);
        assert!(!s16.is_abelian());
        // y x y^-1 = x^t
        let y = semidirect_y(9);
        assert_eq!(m27.conjugate(SEMIDIRECT_X, m27.inv(y)), m27.pow(SEMIDIRECT_X, 4));
    }

    #[test]
    fn quaternion_has_one_involution() {
        for alpha in 2..=6 {
            let q = generalized_quaternion(alpha).unwrap();
            assert_eq!(q.order(), 1 << (alpha + 1));
            assert_eq!(involutions(&q).len(), 1, "alpha = {alpha}");
        }
        assert!(generalized_quaternion(1).is_err());
    }

    #[test]
    fn quaternion_involution_is_x_to_the_half() {
        let q16 = generalized_quaternion(3).unwrap();
        assert_eq!(q16.exponent(), 8);
        let inv = involutions(&q16);
        assert_eq!(inv, vec![q16.pow(SEMIDIRECT_X, 4)]);
        // every nontrivial cyclic subgroup contains it
        for g in q16.nontrivial() {
            assert!(q16.cyclic_subgroup(g).contains(&inv[0]));
        }
        // y^2 = x^(2^(alpha-1))
        let y = semidirect_y(8);
        assert_eq!(q16.mul(y, y), inv[0]);
    }

    #[test]
    fn heisenberg_groups() {
        let h3 = heisenberg(3).unwrap();
        assert_eq!((h3.order(), h3.exponent(), h3.is_abelian()), (27, 3, false));
        let h5 = heisenberg(5).unwrap();
        assert_eq!((h5.order(), h5.exponent()), (125, 5));
        assert!(heisenberg(2).is_err());
        assert!(heisenberg(9).is_err());
    }

    #[test]
    fn family_parameter_checks() {
        assert!(dihedral(4).is_err());
        assert!(dihedral(12).is_err());
        assert!(semidihedral(8).is_err());
        assert!(modular(2, 2).is_err());
        assert!(modular(3, 1).is_err());
        assert!(modular(4, 3).is_err());
        assert_eq!(modular(2, 3).unwrap().order(), 16);
        assert_eq!(modular(5, 2).unwrap().order(), 125);
    }

    #[test]
    fn constructed_tables_satisfy_group_laws() {
        let groups = [
            cyclic(12).unwrap(),
            dihedral(32).unwrap(),
            semidihedral(32).unwrap(),
            modular(3, 3).unwrap(),
            generalized_quaternion(4).unwrap(),
            heisenberg(5).unwrap(),
            abelian(2, &[1, 2, 3]).unwrap(),
        ];
        for g in &groups {
            g.check_laws(7).unwrap_or_else(|e| panic!("{}: {e}", g.label()));
            for e in g.elements() {
                assert_eq!(g.order() % g.element_order(e), 0);
            }
            assert_eq!(g.order() % g.exponent(), 0);
        }
    }
}
