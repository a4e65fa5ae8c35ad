//! Automorphism enumeration and isomorphism testing by backtracking over
//! generator images.

use crate::epg::neighborhood_sizes;
use crate::group::{Element, GroupError, GroupTable};

/// Largest order accepted by the backtracking searches.
pub const MORPHISM_ORDER_CAP: usize = 256;

fn check_cap(g: &GroupTable) -> Result<(), GroupError> {
    if g.order() > MORPHISM_ORDER_CAP {
        Err(GroupError::OrderCap {
            order: g.order(),
            cap: MORPHISM_ORDER_CAP,
        })
    } else {
        Ok(())
    }
}

/// A generating set chosen greedily by descending element order
/// (ties by index): each pick is the first element outside the span so far.
pub fn greedy_generators(g: &GroupTable) -> Vec<Element> {
    let mut candidates: Vec<Element> = g.nontrivial().collect();
    candidates.sort_by_key(|&e| (std::cmp::Reverse(g.element_order(e)), e));
    let mut gens = Vec::new();
    let mut span = vec![false; g.order()];
    span[0] = true;
    let mut covered = 1;
    for c in candidates {
        if covered == g.order() {
            break;
        }
        if span[c.index()] {
            continue;
        }
        gens.push(c);
        let sub = g.closure(&gens);
        covered = sub.len();
        for e in sub {
            span[e.index()] = true;
        }
    }
    gens
}

/// Extends `gens[i] -> images[i]` to an injective homomorphism on `<gens>`.
///
/// Walks the Cayley graph of `<gens>` breadth first and checks that every
/// edge `u -> u g` maps to `phi(u) -> phi(u) phi(g)`. Returns the partial
/// map (`u32::MAX` outside `<gens>`) or `None` on any clash.
fn extend(src: &GroupTable, dst: &GroupTable, gens: &[Element], images: &[Element]) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; src.order()];
    let mut used = vec![false; dst.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![Element::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let image_u = Element(map[u.index()]);
        for (&g, &h) in gens.iter().zip(images) {
            let v = src.mul(u, g);
            let image_v = dst.mul(image_u, h);
            match map[v.index()] {
                UNSET => {
                    if used[image_v.index()] {
                        return None;
                    }
                    used[image_v.index()] = true;
                    map[v.index()] = image_v.0;
                    queue.push(v);
                }
                existing if existing != image_v.0 => return None,
                _ => {}
            }
        }
    }
    Some(map)
}

/// Depth-first search over generator images. `visit` receives each complete
/// isomorphism and returns false to stop the search.
fn search_isomorphisms(
    src: &GroupTable,
    dst: &GroupTable,
    mut visit: impl FnMut(Vec<u32>) -> bool,
) {
    if src.order() != dst.order() {
        return;
    }
    let gens = greedy_generators(src);
    if gens.is_empty() {
        visit(vec![0]);
        return;
    }
    let mut images: Vec<Element> = Vec::with_capacity(gens.len());
    let mut maps: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    fn recurse(
        src: &GroupTable,
        dst: &GroupTable,
        gens: &[Element],
        images: &mut Vec<Element>,
        maps: &mut Vec<Vec<u32>>,
        visit: &mut dyn FnMut(Vec<u32>) -> bool,
    ) -> bool {
        let depth = images.len();
        if depth == gens.len() {
            return visit(maps.last().expect("at least one generator").clone());
        }
        let target = src.element_order(gens[depth]);
        for h in dst.nontrivial() {
            if dst.element_order(h) != target {
                continue;
            }
            if let Some(prev) = maps.last() {
                // the image of a new generator lies outside the image so far
                if prev.contains(&h.0) {
                    continue;
                }
            }
            images.push(h);
            if let Some(map) = extend(src, dst, &gens[..=depth], images) {
                maps.push(map);
                let keep_going = recurse(src, dst, gens, images, maps, visit);
                maps.pop();
                if !keep_going {
                    images.pop();
                    return false;
                }
            }
            images.pop();
        }
        true
    }
    recurse(src, dst, &gens, &mut images, &mut maps, &mut visit);
}

/// All automorphisms as image tables, sorted lexicographically.
pub fn automorphisms(g: &GroupTable) -> Result<Vec<Vec<u32>>, GroupError> {
    check_cap(g)?;
    let mut out = Vec::new();
    search_isomorphisms(g, g, |map| {
        out.push(map);
        true
    });
    out.sort();
    Ok(out)
}

/// Some isomorphism `a -> b`, as an image table, if one exists.
pub fn find_isomorphism(a: &GroupTable, b: &GroupTable) -> Result<Option<Vec<u32>>, GroupError> {
    check_cap(a)?;
    check_cap(b)?;
    if fingerprint(a) != fingerprint(b) {
        return Ok(None);
    }
    let mut found = None;
    search_isomorphisms(a, b, |map| {
        found = Some(map);
        false
    });
    Ok(found)
}

pub fn isomorphic(a: &GroupTable, b: &GroupTable) -> Result<bool, GroupError> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// Cheap isomorphism invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: usize,
    /// `(element order, count)`, ascending.
    pub element_orders: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    /// Element-order multiset of the abelianization; determines it up to isomorphism.
    pub abelianization: Vec<(usize, usize)>,
    /// Sorted closed-neighborhood sizes in the enhanced power graph.
    pub epg_degrees: Vec<usize>,
}

fn histogram(values: impl Iterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut v: Vec<usize> = values.collect();
    v.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((k, c)) if *k == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

pub fn fingerprint(g: &GroupTable) -> Fingerprint {
    let n = g.order();
    let derived = g.derived_subgroup();
    let mut in_derived = vec![false; n];
    for d in &derived {
        in_derived[d.index()] = true;
    }
    // one representative per coset of the derived subgroup
    let mut coset_seen = vec![false; n];
    let mut quotient_orders = Vec::new();
    for r in g.elements() {
        if coset_seen[r.index()] {
            continue;
        }
        for &d in &derived {
            coset_seen[g.mul(r, d).index()] = true;
        }
        let mut k = 1;
        let mut acc = r;
        while !in_derived[acc.index()] {
            acc = g.mul(acc, r);
            k += 1;
        }
        quotient_orders.push(k);
    }
    let mut epg_degrees = neighborhood_sizes(g);
    epg_degrees.sort_unstable();
    Fingerprint {
        order: n,
        exponent: g.exponent(),
        element_orders: histogram(g.element_orders().iter().map(|&o| o as usize)),
        center_order: g.center().len(),
        derived_order: derived.len(),
        abelianization: histogram(quotient_orders.into_iter()),
        epg_degrees,
    }
}

/// Composition `(a ∘ b)(g) = a(b(g))` of two image tables.
pub fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&v| a[v as usize]).collect()
}
