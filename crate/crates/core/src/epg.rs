//! The enhanced power graph: vertices are the nontrivial elements, and two
//! distinct vertices are joined when they generate a cyclic subgroup.
//!
//! Neighborhoods here are closed and include the identity, so for a
//! nontrivial `x` the neighborhood size is `deg(x) + 2`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::group::{gcd, Element, GroupTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EpgError {
    #[error("the identity is not a vertex of the enhanced power graph")]
    IdentityVertex,
    #[error("adjacency is only defined for distinct vertices, got {0} twice")]
    SameVertex(Element),
    #[error("the trivial group has an empty enhanced power graph")]
    TrivialGroup,
}

/// Membership bitmap for one cyclic subgroup `<x>`, reused across many `y`.
struct PowerScratch {
    stamp: Vec<u32>,
    generation: u32,
}

impl PowerScratch {
    fn new(n: usize) -> Self {
        PowerScratch {
            stamp: vec![0; n],
            generation: 0,
        }
    }

    fn load(&mut self, g: &GroupTable, x: Element) {
        self.generation += 1;
        let mut acc = Element::IDENTITY;
        loop {
            self.stamp[acc.index()] = self.generation;
            acc = g.mul(acc, x);
            if acc.is_identity() {
                break;
            }
        }
    }

    #[inline]
    fn contains(&self, e: Element) -> bool {
        self.stamp[e.index()] == self.generation
    }

    /// Whether `<x, y>` is cyclic, where `x` is the loaded element.
    ///
    /// For commuting `x, y` the subgroup `<x><y>` has order
    /// `o(x) o(y) / |<x> ∩ <y>|` and its largest element order is
    /// `lcm(o(x), o(y))`; the two agree exactly when the intersection has
    /// order `gcd(o(x), o(y))`.
    fn cyclic_with(&self, g: &GroupTable, x: Element, y: Element) -> bool {
        if !g.commute(x, y) {
            return false;
        }
        if self.contains(y) {
            return true;
        }
        let (ox, oy) = (g.element_order(x), g.element_order(y));
        let mut shared = 0;
        let mut acc = Element::IDENTITY;
        loop {
            if self.contains(acc) {
                shared += 1;
            }
            acc = g.mul(acc, y);
            if acc.is_identity() {
                break;
            }
        }
        shared == gcd(ox, oy)
    }
}

/// Whether `<x, y>` is cyclic, with no restrictions on `x` and `y`.
pub fn generates_cyclic(g: &GroupTable, x: Element, y: Element) -> bool {
    let mut scratch = PowerScratch::new(g.order());
    scratch.load(g, x);
    scratch.cyclic_with(g, x, y)
}

/// Adjacency in the enhanced power graph.
pub fn adjacent(g: &GroupTable, x: Element, y: Element) -> Result<bool, EpgError> {
    if x.is_identity() || y.is_identity() {
        return Err(EpgError::IdentityVertex);
    }
    if x == y {
        return Err(EpgError::SameVertex(x));
    }
    Ok(generates_cyclic(g, x, y))
}

fn neighbors_into(g: &GroupTable, scratch: &mut PowerScratch, x: Element, row: &mut Vec<bool>) {
    scratch.load(g, x);
    row.clear();
    row.extend(g.elements().map(|y| scratch.cyclic_with(g, x, y)));
}

/// Size of the closed neighborhood `{y in G : <x, y> cyclic}`.
pub fn neighborhood_size(g: &GroupTable, x: Element) -> Result<usize, EpgError> {
    if x.is_identity() {
        return Err(EpgError::IdentityVertex);
    }
    let mut scratch = PowerScratch::new(g.order());
    scratch.load(g, x);
    Ok(g.elements().filter(|&y| scratch.cyclic_with(g, x, y)).count())
}

/// Closed neighborhood sizes for every element, indexed by element.
/// Entry 0 is `|G|`, since the identity generates a cyclic group with anything.
pub fn neighborhood_sizes(g: &GroupTable) -> Vec<usize> {
    let row_size = |scratch: &mut PowerScratch, x: Element| -> usize {
        scratch.load(g, x);
        g.elements().filter(|&y| scratch.cyclic_with(g, x, y)).count()
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..g.order() as u32)
            .into_par_iter()
            .map_init(|| PowerScratch::new(g.order()), |s, x| row_size(s, Element(x)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut scratch = PowerScratch::new(g.order());
        g.elements().map(|x| row_size(&mut scratch, x)).collect()
    }
}

/// The invariant `n_G`: the largest closed neighborhood of a nontrivial element.
pub fn n_g(g: &GroupTable) -> Result<usize, EpgError> {
    if g.order() < 2 {
        return Err(EpgError::TrivialGroup);
    }
    Ok(neighborhood_sizes(g)[1..].iter().copied().max().unwrap_or(0))
}

/// Nontrivial elements adjacent to every other nontrivial element.
pub fn universal_vertices(g: &GroupTable) -> Vec<Element> {
    let n = g.order();
    let sizes = neighborhood_sizes(g);
    g.nontrivial().filter(|x| sizes[x.index()] == n).collect()
}

/// Disjoint-set forest with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[i] != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// The materialized enhanced power graph of one group.
#[derive(Debug, Clone)]
pub struct EpgGraph<'g> {
    group: &'g GroupTable,
    /// Row-major over all elements; row and column 0 (identity) stay false.
    adjacency: Vec<bool>,
    degree: Vec<usize>,
    /// Component label per element: the smallest vertex index in its component.
    component_of: Vec<u32>,
    components: Vec<Vec<Element>>,
}

/// Builds all pairwise adjacencies, degrees and connected components.
pub fn build_epg(g: &GroupTable) -> Result<EpgGraph<'_>, EpgError> {
    let n = g.order();
    if n < 2 {
        return Err(EpgError::TrivialGroup);
    }
    let row_of = |scratch: &mut PowerScratch, x: Element| -> Vec<bool> {
        let mut row = Vec::with_capacity(n);
        if !x.is_identity() {
            neighbors_into(g, scratch, x, &mut row);
            row[0] = false;
            row[x.index()] = false;
        } else {
            row.resize(n, false);
        }
        row
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<bool>> = {
        use rayon::prelude::*;
        (0..n as u32)
            .into_par_iter()
            .map_init(|| PowerScratch::new(n), |s, x| row_of(s, Element(x)))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<bool>> = {
        let mut scratch = PowerScratch::new(n);
        g.elements().map(|x| row_of(&mut scratch, x)).collect()
    };
    let adjacency: Vec<bool> = rows.into_iter().flatten().collect();
    let degree: Vec<usize> = (0..n)
        .map(|x| adjacency[x * n..(x + 1) * n].iter().filter(|&&b| b).count())
        .collect();

    let mut uf = UnionFind::new(n);
    for x in 1..n {
        for y in x + 1..n {
            if adjacency[x * n + y] {
                uf.union(x, y);
            }
        }
    }
    let mut min_of_root = vec![u32::MAX; n];
    for x in 1..n {
        let r = uf.find(x);
        min_of_root[r] = min_of_root[r].min(x as u32);
    }
    let mut component_of = vec![0u32; n];
    let mut components: Vec<Vec<Element>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 1..n {
        let label = min_of_root[uf.find(x)];
        component_of[x] = label;
        if slot[label as usize] == usize::MAX {
            slot[label as usize] = components.len();
            components.push(Vec::new());
        }
        components[slot[label as usize]].push(Element(x as u32));
    }
    Ok(EpgGraph {
        group: g,
        adjacency,
        degree,
        component_of,
        components,
    })
}

impl<'g> EpgGraph<'g> {
    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn vertex_count(&self) -> usize {
        self.group.order() - 1
    }

    pub fn is_adjacent(&self, x: Element, y: Element) -> bool {
        self.adjacency[x.index() * self.group.order() + y.index()]
    }

    pub fn degree(&self, x: Element) -> usize {
        self.degree[x.index()]
    }

    pub fn neighborhood_size(&self, x: Element) -> usize {
        self.degree(x) + 2
    }

    pub fn edge_count(&self) -> usize {
        self.degree.iter().sum::<usize>() / 2
    }

    /// Edges `(x, y)` with `x < y`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        let n = self.group.order();
        (1..n).flat_map(move |x| {
            (x + 1..n)
                .filter(move |&y| self.adjacency[x * n + y])
                .map(move |y| (Element(x as u32), Element(y as u32)))
        })
    }

    /// Components ordered by their smallest vertex; vertices sorted within each.
    pub fn components(&self) -> &[Vec<Element>] {
        &self.components
    }

    /// Label of the component containing `x`: its smallest vertex.
    pub fn component_label(&self, x: Element) -> Element {
        Element(self.component_of[x.index()])
    }

    pub fn n_g(&self) -> usize {
        self.group
            .nontrivial()
            .map(|x| self.neighborhood_size(x))
            .max()
            .unwrap_or(0)
    }

    pub fn universal_vertices(&self) -> Vec<Element> {
        let target = self.vertex_count() - 1;
        self.group
            .nontrivial()
            .filter(|&x| self.degree(x) == target)
            .collect()
    }

    pub fn largest_component(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// GraphViz rendering with vertices `g<index>` labeled `g<index>/o<order>`.
    pub fn to_dot(&self) -> String {
        let g = self.group;
        let mut out = String::new();
        let name = g.label().replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "graph \"{name}\" {{");
        for x in g.nontrivial() {
            let _ = writeln!(out, "  {x} [label=\"{x}/o{}\"];", g.element_order(x));
        }
        for (x, y) in self.edges() {
            let _ = writeln!(out, "  {x} -- {y};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    /// Independent brute force: `x ~ y` iff both lie in some `<z>`.
    fn common_cyclic_overgroup(g: &GroupTable, x: Element, y: Element) -> bool {
        g.elements().any(|z| {
            let powers = g.cyclic_subgroup(z);
            powers.contains(&x) && powers.contains(&y)
        })
    }

    #[test]
    fn adjacency_examples() {
        let c8 = cyclic(8).unwrap();
        assert_eq!(adjacent(&c8, Element(1), Element(3)), Ok(true));
        let v4 = elementary_abelian(2, 2).unwrap();
        for x in 1..4 {
            for y in x + 1..4 {
                assert_eq!(adjacent(&v4, Element(x), Element(y)), Ok(false));
            }
        }
        // Q8: x = i has order 4, x^2 is the central involution, y = j
        let q8 = generalized_quaternion(2).unwrap();
        let i = SEMIDIRECT_X;
        let minus_one = q8.pow(i, 2);
        let j = semidirect_y(4);
        assert_eq!(adjacent(&q8, i, minus_one), Ok(true));
        assert_eq!(adjacent(&q8, i, j), Ok(false));
        assert_eq!(q8.closure(&[i, minus_one]).len(), 4);
        assert_eq!(q8.closure(&[i, j]).len(), 8);
    }

    #[test]
    fn adjacency_rejects_identity_and_loops() {
        let c4 = cyclic(4).unwrap();
        assert_eq!(adjacent(&c4, Element(0), Element(1)), Err(EpgError::IdentityVertex));
        assert_eq!(adjacent(&c4, Element(2), Element(2)), Err(EpgError::SameVertex(Element(2))));
        assert_eq!(neighborhood_size(&c4, Element(0)), Err(EpgError::IdentityVertex));
        assert_eq!(n_g(&cyclic(1).unwrap()), Err(EpgError::TrivialGroup));
        assert!(build_epg(&cyclic(1).unwrap()).is_err());
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(neighborhood_size(&cyclic(8).unwrap(), Element(1)), Ok(8));
        let c4c2 = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        // (2, 0) -> 2 * 2 + 0
        assert_eq!(neighborhood_size(&c4c2, Element(4)), Ok(6));
        let s16 = semidihedral(16).unwrap();
        let x4 = s16.pow(SEMIDIRECT_X, 4);
        assert_eq!(neighborhood_size(&s16, x4), Ok(12));
        let m27 = modular(3, 2).unwrap();
        let x3 = m27.pow(SEMIDIRECT_X, 3);
        assert_eq!(neighborhood_size(&m27, x3), Ok(21));
    }

    #[test]
    fn semidihedral_central_involution_neighborhood_members() {
        // I(x^4) = <x> together with yx, yx^3, yx^5, yx^7
        let s16 = semidihedral(16).unwrap();
        let x = SEMIDIRECT_X;
        let y = semidirect_y(8);
        let x4 = s16.pow(x, 4);
        let mut expected: Vec<Element> = s16.cyclic_subgroup(x);
        for k in [1, 3, 5, 7] {
            expected.push(s16.mul(y, s16.pow(x, k)));
        }
        expected.sort();
        let mut actual: Vec<Element> =
            s16.elements().filter(|&e| generates_cyclic(&s16, x4, e)).collect();
        actual.sort();
        assert_eq!(actual, expected);
    }

    #[test]
    fn n_g_examples() {
        assert_eq!(n_g(&dihedral(16).unwrap()), Ok(8));
        assert_eq!(n_g(&generalized_quaternion(3).unwrap()), Ok(16));
        assert_eq!(n_g(&elementary_abelian(3, 2).unwrap()), Ok(3));
        assert_eq!(n_g(&modular(3, 2).unwrap()), Ok(21));
    }

    #[test]
    fn graph_structure_examples() {
        let c5 = cyclic(5).unwrap();
        let e = build_epg(&c5).unwrap();
        assert_eq!(e.edge_count(), 6);
        assert_eq!(e.components().len(), 1);

        let c9 = cyclic(9).unwrap();
        let e = build_epg(&c9).unwrap();
        assert_eq!(e.components().len(), 1);
        assert_eq!(e.components()[0].len(), 8);

        let c3c3 = elementary_abelian(3, 2).unwrap();
        let e = build_epg(&c3c3).unwrap();
        assert_eq!(e.components().len(), 4);
        assert!(e.components().iter().all(|c| c.len() == 2));
        for c in e.components() {
            assert!(c.iter().all(|&v| e.component_label(v) == c[0]));
        }
    }

    #[test]
    fn universal_vertex_examples() {
        assert!(universal_vertices(&elementary_abelian(2, 2).unwrap()).is_empty());
        let q16 = generalized_quaternion(3).unwrap();
        assert_eq!(universal_vertices(&q16), vec![q16.pow(SEMIDIRECT_X, 4)]);
        assert_eq!(
            universal_vertices(&cyclic(4).unwrap()),
            vec![Element(1), Element(2), Element(3)]
        );
        let e = build_epg(&q16).unwrap();
        assert_eq!(e.universal_vertices(), universal_vertices(&q16));
    }

    #[test]
    fn dot_output() {
        let c2 = cyclic(2).unwrap();
        assert_eq!(
            build_epg(&c2).unwrap().to_dot(),
            "graph \"C(2)\" {\n  g1 [label=\"g1/o2\"];\n}\n"
        );
        let c3 = cyclic(3).unwrap();
        let dot = build_epg(&c3).unwrap().to_dot();
        assert!(dot.contains("  g1 -- g2;\n"));
        assert_eq!(dot.matches("--").count(), 1);
        let v4 = elementary_abelian(2, 2).unwrap();
        let dot = build_epg(&v4).unwrap().to_dot();
        assert_eq!(dot.matches("[label=").count(), 3);
        assert_eq!(dot.matches("--").count(), 0);
    }

    #[test]
    fn dihedral_8_components() {
        let d8 = dihedral(8).unwrap();
        let e = build_epg(&d8).unwrap();
        let mut sizes: Vec<usize> = e.components().iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, vec![3, 1, 1, 1, 1]);
    }

    #[test]
    fn matches_brute_force_oracle() {
        let groups = [
            dihedral(16).unwrap(),
            semidihedral(16).unwrap(),
            generalized_quaternion(3).unwrap(),
            modular(2, 3).unwrap(),
            heisenberg(3).unwrap(),
            abelian(2, &[1, 2]).unwrap(),
            cyclic(12).unwrap(),
            semidirect_cyclic(7, 3, 2).unwrap(),
        ];
        for g in &groups {
            let e = build_epg(g).unwrap();
            for x in g.nontrivial() {
                for y in g.nontrivial().filter(|&y| y != x) {
                    assert_eq!(
                        e.is_adjacent(x, y),
                        common_cyclic_overgroup(g, x, y),
                        "{}: {x} {y}",
                        g.label()
                    );
                }
                assert_eq!(e.neighborhood_size(x), neighborhood_size(g, x).unwrap());
            }
        }
    }

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(6);
        assert!(uf.union(0, 1));
        assert!(uf.union(2, 3));
        assert!(uf.union(1, 3));
        assert!(!uf.union(0, 2));
        assert_eq!(uf.find(0), uf.find(3));
        assert_ne!(uf.find(4), uf.find(0));
    }
}
