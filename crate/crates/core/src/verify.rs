//! Claim checks over concrete groups, each producing a [`VerdictReport`].
//!
//! A report is `not-applicable` when the group falls outside the claim's
//! hypotheses, and a `fail` always carries a witness.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::catalog::{catalog_order16, CatalogError};
use crate::constructions::{dihedral, modular, semidihedral, semidirect_y, SEMIDIRECT_X};
use crate::epg::{build_epg, neighborhood_sizes};
use crate::group::{prime_power, Element, GroupError, GroupTable};
use crate::morphism::{automorphisms, compose};
use crate::spec::{Atom, GroupSpec, SpecError};

/// Per-group claims runnable by [`run_census`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    /// `exp(G) <= n_G <= |G|`.
    Bounds,
    /// `n_G = exp(G)` iff cyclic, exponent `p`, or dihedral 2-group.
    TheoremMain,
    /// `n_G > exp(G)` forces `n_G >= p^(a+1) - p^a + p^(a-1)`.
    PropSecondValue,
    /// Some element of order `p` attains `n_G`.
    LemmaOrderP,
    /// Abelian case: `n_G = exp(G)` iff cyclic or elementary abelian.
    AbelianCharacterization,
    /// Noncyclic abelian with `exp = p^a`, `a >= 2`: `n_G >= p^(a+1) - p^a + p^(a-1)`.
    NoncyclicAbelianBound,
    /// Groups of order `p^(a+1)` with a cyclic subgroup of order `p^a`.
    MaxCyclic,
    /// `n_G = |G|` iff a universal vertex exists.
    UniversalVertex,
    /// `n_G` equals the largest component size plus one.
    ComponentSize,
    /// A component with a single element of order `p` has that element as a hub.
    ComponentHub,
}

impl ClaimId {
    pub const ALL: [ClaimId; 10] = [
        ClaimId::Bounds,
        ClaimId::TheoremMain,
        ClaimId::PropSecondValue,
        ClaimId::LemmaOrderP,
        ClaimId::AbelianCharacterization,
        ClaimId::NoncyclicAbelianBound,
        ClaimId::MaxCyclic,
        ClaimId::UniversalVertex,
        ClaimId::ComponentSize,
        ClaimId::ComponentHub,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Bounds => "bounds",
            ClaimId::TheoremMain => "thm-main",
            ClaimId::PropSecondValue => "prop-second-value",
            ClaimId::LemmaOrderP => "lemma-order-p",
            ClaimId::AbelianCharacterization => "abelian-char",
            ClaimId::NoncyclicAbelianBound => "noncyclic-abelian",
            ClaimId::MaxCyclic => "maxcyclic",
            ClaimId::UniversalVertex => "universal",
            ClaimId::ComponentSize => "component-size",
            ClaimId::ComponentHub => "component-hub",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Element or number that certifies or refutes a claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Element(Element),
    Value(u64),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Element(e) => write!(f, "{e}"),
            Witness::Value(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub label: String,
    pub claim: String,
    pub status: Status,
    #[serde(rename = "nG")]
    pub n_g: Option<usize>,
    pub exp: usize,
    pub order: usize,
    pub p: Option<usize>,
    pub alpha: Option<u32>,
    pub witness: Option<Witness>,
}

/// Everything the per-group claims need, computed once.
pub struct Analysis<'g> {
    pub group: &'g GroupTable,
    pub order: usize,
    pub exponent: usize,
    /// Closed neighborhood size per element (entry 0 is `|G|`).
    pub sizes: Vec<usize>,
    pub n_g: Option<usize>,
    /// Smallest nontrivial element attaining `n_G`.
    pub maximizer: Option<Element>,
    /// `(p, k)` with `|G| = p^k`.
    pub prime_power: Option<(usize, u32)>,
    /// `a` with `exp(G) = p^a`.
    pub alpha: Option<u32>,
    pub abelian: bool,
    pub cyclic: bool,
    pub dihedral: bool,
}

impl<'g> Analysis<'g> {
    pub fn new(g: &'g GroupTable) -> Self {
        let order = g.order();
        let exponent = g.exponent();
        let sizes = neighborhood_sizes(g);
        let (n_g, maximizer) = if order >= 2 {
            let best = sizes[1..].iter().copied().max().expect("nontrivial group");
            let at = sizes[1..].iter().position(|&s| s == best).expect("max exists") + 1;
            (Some(best), Some(Element(at as u32)))
        } else {
            (None, None)
        };
        let prime_power = prime_power(order);
        let alpha = prime_power.and_then(|(p, _)| exact_log(exponent, p));
        Analysis {
            group: g,
            order,
            exponent,
            sizes,
            n_g,
            maximizer,
            prime_power,
            alpha,
            abelian: g.is_abelian(),
            cyclic: g.is_cyclic(),
            dihedral: g.is_dihedral_2group(),
        }
    }

    pub fn p(&self) -> Option<usize> {
        self.prime_power.map(|(p, _)| p)
    }

    fn report(&self, claim: ClaimId, status: Status, witness: Option<Witness>) -> VerdictReport {
        debug_assert!(status != Status::Fail || witness.is_some());
        VerdictReport {
            label: self.group.label().to_string(),
            claim: claim.as_str().to_string(),
            status,
            n_g: self.n_g,
            exp: self.exponent,
            order: self.order,
            p: self.p(),
            alpha: self.alpha,
            witness,
        }
    }

    fn not_applicable(&self, claim: ClaimId) -> VerdictReport {
        self.report(claim, Status::NotApplicable, None)
    }

    fn verdict(&self, claim: ClaimId, ok: bool, witness: Witness) -> VerdictReport {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.report(claim, status, Some(witness))
    }

    /// `(n_G, p, alpha, maximizer)` when the group is a nontrivial `p`-group
    /// for the given prime.
    fn p_group(&self, p: usize) -> Option<(usize, usize, u32, Element)> {
        match (self.prime_power, self.n_g, self.alpha, self.maximizer) {
            (Some((q, _)), Some(n_g), Some(alpha), Some(m)) if q == p => Some((n_g, p, alpha, m)),
            _ => None,
        }
    }

    pub fn run(&self, claim: ClaimId) -> VerdictReport {
        let Some(p) = self.p() else {
            if claim == ClaimId::Bounds || claim == ClaimId::UniversalVertex {
                return self.run_general(claim);
            }
            return self.not_applicable(claim);
        };
        match claim {
            ClaimId::Bounds | ClaimId::UniversalVertex => self.run_general(claim),
            ClaimId::TheoremMain => self.theorem_main(p),
            ClaimId::PropSecondValue => self.prop_second_value(p),
            ClaimId::LemmaOrderP => self.lemma_order_p(p),
            ClaimId::AbelianCharacterization => self.abelian_characterization(p),
            ClaimId::NoncyclicAbelianBound => self.noncyclic_abelian_bound(p),
            ClaimId::MaxCyclic => match self.prime_power {
                Some((_, k)) if k >= 1 => self.maxcyclic(p, k - 1),
                _ => self.not_applicable(claim),
            },
            ClaimId::ComponentSize => self.component_size(),
            ClaimId::ComponentHub => self.component_hub(p),
        }
    }

    fn run_general(&self, claim: ClaimId) -> VerdictReport {
        match claim {
            ClaimId::Bounds => self.bounds(),
            ClaimId::UniversalVertex => self.universal(),
            _ => unreachable!("only prime-independent claims"),
        }
    }

    pub fn bounds(&self) -> VerdictReport {
        let claim = ClaimId::Bounds;
        let (Some(n_g), Some(m)) = (self.n_g, self.maximizer) else {
            return self.not_applicable(claim);
        };
        let ok = self.exponent <= n_g && n_g <= self.order;
        self.verdict(claim, ok, if ok { Witness::Element(m) } else { Witness::Value(n_g as u64) })
    }

    pub fn theorem_main(&self, p: usize) -> VerdictReport {
        let claim = ClaimId::TheoremMain;
        let Some((n_g, p, _, m)) = self.p_group(p) else {
            return self.not_applicable(claim);
        };
        let lhs = n_g == self.exponent;
        let rhs = self.cyclic || self.exponent == p || self.dihedral;
        self.verdict(claim, lhs == rhs, Witness::Element(m))
    }

    pub fn prop_second_value(&self, p: usize) -> VerdictReport {
        let claim = ClaimId::PropSecondValue;
        let Some((n_g, p, alpha, m)) = self.p_group(p) else {
            return self.not_applicable(claim);
        };
        if n_g == self.exponent {
            return self.not_applicable(claim);
        }
        let ok = n_g >= second_value_bound(p, alpha);
        self.verdict(claim, ok, Witness::Element(m))
    }

    pub fn lemma_order_p(&self, p: usize) -> VerdictReport {
        let claim = ClaimId::LemmaOrderP;
        let Some((n_g, p, _, m)) = self.p_group(p) else {
            return self.not_applicable(claim);
        };
        let g = self.group;
        match g
            .nontrivial()
            .find(|&z| g.element_order(z) == p && self.sizes[z.index()] == n_g)
        {
            Some(z) => self.verdict(claim, true, Witness::Element(z)),
            None => self.verdict(claim, false, Witness::Element(m)),
        }
    }

    pub fn abelian_characterization(&self, p: usize) -> VerdictReport {
        let claim = ClaimId::AbelianCharacterization;
        let Some((n_g, p, _, m)) = self.p_group(p) else {
            return self.not_applicable(claim);
        };
        if !self.abelian {
            return self.not_applicable(claim);
        }
        let lhs = n_g == self.exponent;
        let rhs = self.cyclic || self.exponent == p;
        self.verdict(claim, lhs == rhs, Witness::Element(m))
    }

    pub fn noncyclic_abelian_bound(&self, p: usize) -> VerdictReport {
        let claim = ClaimId::NoncyclicAbelianBound;
        let Some((n_g, p, alpha, m)) = self.p_group(p) else {
            return self.not_applicable(claim);
        };
        if !self.abelian || self.cyclic || alpha < 2 {
            return self.not_applicable(claim);
        }
        let ok = n_g >= second_value_bound(p, alpha) && n_g > self.exponent;
        self.verdict(claim, ok, Witness::Element(m))
    }

    pub fn maxcyclic(&self, p: usize, alpha: u32) -> VerdictReport {
        let claim = ClaimId::MaxCyclic;
        let Some((n_g, p, _, m)) = self.p_group(p) else {
            return self.not_applicable(claim);
        };
        let Some(cyclic_order) = p.checked_pow(alpha) else {
            return self.not_applicable(claim);
        };
        let has_index_p_cyclic = cyclic_order.checked_mul(p) == Some(self.order)
            && self.group.element_orders().iter().any(|&o| o as usize == cyclic_order);
        if !has_index_p_cyclic {
            return self.not_applicable(claim);
        }
        let lhs = n_g == self.exponent;
        let rhs = self.cyclic || self.exponent == p || self.dihedral;
        self.verdict(claim, lhs == rhs, Witness::Element(m))
    }

    pub fn universal(&self) -> VerdictReport {
        let claim = ClaimId::UniversalVertex;
        let (Some(n_g), Some(m)) = (self.n_g, self.maximizer) else {
            return self.not_applicable(claim);
        };
        let universal = self.group.nontrivial().find(|x| self.sizes[x.index()] == self.order);
        let ok = (n_g == self.order) == universal.is_some();
        self.verdict(claim, ok, Witness::Element(universal.unwrap_or(m)))
    }

    pub fn component_size(&self) -> VerdictReport {
        let claim = ClaimId::ComponentSize;
        let Some(n_g) = self.n_g else {
            return self.not_applicable(claim);
        };
        let epg = build_epg(self.group).expect("nontrivial group");
        let largest = epg.largest_component();
        self.verdict(claim, n_g == largest + 1, Witness::Value(largest as u64))
    }

    pub fn component_hub(&self, p: usize) -> VerdictReport {
        let claim = ClaimId::ComponentHub;
        if self.p_group(p).is_none() {
            return self.not_applicable(claim);
        }
        let g = self.group;
        let epg = build_epg(g).expect("nontrivial group");
        let mut checked = 0u64;
        for comp in epg.components() {
            let order_p: Vec<Element> = comp.iter().copied().filter(|&v| g.element_order(v) == p).collect();
            if let [z] = order_p[..] {
                checked += 1;
                if comp.iter().any(|&v| v != z && !epg.is_adjacent(z, v)) {
                    return self.verdict(claim, false, Witness::Element(z));
                }
            }
        }
        self.verdict(claim, true, Witness::Value(checked))
    }
}

fn exact_log(value: usize, base: usize) -> Option<u32> {
    let mut v = value;
    let mut k = 0;
    while v > 1 {
        if !v.is_multiple_of(base) {
            return None;
        }
        v /= base;
        k += 1;
    }
    Some(k)
}

/// `p^(alpha+1) - p^alpha + p^(alpha-1)` for `alpha >= 1`.
pub fn second_value_bound(p: usize, alpha: u32) -> usize {
    assert!(alpha >= 1, "bound needs alpha >= 1");
    let low = p.pow(alpha - 1);
    low * p * p - low * p + low
}

pub fn check_bounds(g: &GroupTable) -> VerdictReport {
    Analysis::new(g).bounds()
}

pub fn check_theorem_main(g: &GroupTable, p: usize) -> VerdictReport {
    Analysis::new(g).theorem_main(p)
}

pub fn check_prop_second_value(g: &GroupTable, p: usize) -> VerdictReport {
    Analysis::new(g).prop_second_value(p)
}

pub fn check_lemma_order_p(g: &GroupTable, p: usize) -> VerdictReport {
    Analysis::new(g).lemma_order_p(p)
}

pub fn check_abelian_characterization(g: &GroupTable, p: usize) -> VerdictReport {
    Analysis::new(g).abelian_characterization(p)
}

pub fn check_noncyclic_abelian_bound(g: &GroupTable, p: usize) -> VerdictReport {
    Analysis::new(g).noncyclic_abelian_bound(p)
}

pub fn check_maxcyclic_prop(g: &GroupTable, p: usize, alpha: u32) -> VerdictReport {
    Analysis::new(g).maxcyclic(p, alpha)
}

/// Result of the order-16 census.
#[derive(Debug, Clone)]
pub struct Order16Census {
    pub reports: Vec<VerdictReport>,
    /// Catalog names of the groups with `n_G = exp(G)`, in catalog order.
    pub attaining_exponent: Vec<String>,
}

pub fn census_order16() -> Result<Order16Census, CatalogError> {
    let catalog = catalog_order16()?;
    let mut reports = Vec::with_capacity(catalog.len());
    let mut attaining_exponent = Vec::new();
    for entry in &catalog {
        let a = Analysis::new(&entry.table);
        if a.n_g == Some(a.exponent) {
            attaining_exponent.push(entry.name.clone());
        }
        reports.push(a.theorem_main(2));
    }
    Ok(Order16Census {
        reports,
        attaining_exponent,
    })
}

fn permutation_order(perm: &[u32]) -> usize {
    let identity: Vec<u32> = (0..perm.len() as u32).collect();
    let mut acc = perm.to_vec();
    let mut k = 1;
    while acc != identity {
        acc = compose(perm, &acc);
        k += 1;
    }
    k
}

/// No automorphism of order 4 of the dihedral group of order `2^(alpha+1)`
/// squares to inversion on the rotation `x` of order `2^alpha`.
pub fn check_dihedral_aut_fact(alpha: u32) -> Result<VerdictReport, GroupError> {
    if !(2..=5).contains(&alpha) {
        return Err(GroupError::InvalidParameter(format!(
            "dihedral automorphism check supports 2 <= alpha <= 5, got {alpha}"
        )));
    }
    let g = dihedral(1 << (alpha + 1))?;
    let auts = automorphisms(&g)?;
    let x = SEMIDIRECT_X;
    let x_inv = g.inv(x);
    let offending = auts.iter().position(|sigma| {
        permutation_order(sigma) == 4 && sigma[sigma[x.index()] as usize] == x_inv.0
    });
    let a = Analysis::new(&g);
    let claim = "dihedral-aut";
    Ok(VerdictReport {
        label: g.label().to_string(),
        claim: claim.into(),
        status: if offending.is_none() { Status::Pass } else { Status::Fail },
        n_g: a.n_g,
        exp: a.exponent,
        order: a.order,
        p: Some(2),
        alpha: Some(alpha),
        witness: Some(Witness::Value(offending.unwrap_or(auts.len()) as u64)),
    })
}

/// Families whose power identities are checked directly in the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityFamily {
    Modular,
    Semidihedral,
}

/// `(yx)^p = x^p` in `M_{p^(a+1)}` for odd `p`, `(yx)^2 = x^(2^(a-1)+2)` in
/// `M_{2^(a+1)}`, and `(yx)^2 = x^(2^(a-1))` in the semidihedral group.
pub fn check_power_identity(family: IdentityFamily, p: usize, alpha: u32) -> Result<VerdictReport, GroupError> {
    let (g, expected_exp) = match family {
        IdentityFamily::Modular => {
            let g = modular(p, alpha)?;
            let e = if p == 2 { (1usize << (alpha - 1)) + 2 } else { p };
            (g, e)
        }
        IdentityFamily::Semidihedral => {
            if p != 2 {
                return Err(GroupError::InvalidParameter("semidihedral groups are 2-groups".into()));
            }
            (semidihedral(1 << (alpha + 1))?, 1usize << (alpha - 1))
        }
    };
    let m = p.pow(alpha);
    let x = SEMIDIRECT_X;
    let y = semidirect_y(m);
    let yx = g.mul(y, x);
    let lhs = g.pow(yx, p as i64);
    let rhs = g.pow(x, expected_exp as i64);
    let a = Analysis::new(&g);
    Ok(VerdictReport {
        label: g.label().to_string(),
        claim: "proof-identities".into(),
        status: if lhs == rhs { Status::Pass } else { Status::Fail },
        n_g: a.n_g,
        exp: a.exponent,
        order: a.order,
        p: Some(p),
        alpha: Some(alpha),
        witness: Some(Witness::Element(lhs)),
    })
}

/// Built-in census: cyclic `C_{p^k}`, every abelian type of order up to
/// `p^4`, the D/SD/Q/M families up to order 1024, Heisenberg groups, their
/// products with `C_p` up to order 1024, and the order-16 catalog.
pub fn builtin_census() -> Vec<GroupSpec> {
    const FAMILY_CAP: usize = 1024;
    let mut out: Vec<GroupSpec> = Vec::new();
    let push = |s: GroupSpec, out: &mut Vec<GroupSpec>| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    let partitions: [&[u32]; 11] = [
        &[1],
        &[2],
        &[1, 1],
        &[3],
        &[2, 1],
        &[1, 1, 1],
        &[4],
        &[3, 1],
        &[2, 2],
        &[2, 1, 1],
        &[1, 1, 1, 1],
    ];
    for p in [2usize, 3, 5] {
        for k in 1..=6u32 {
            let n = p.pow(k);
            if n <= FAMILY_CAP {
                push(GroupSpec::atom(Atom::Cyclic(n)), &mut out);
            }
        }
        for parts in partitions.iter().filter(|parts| parts.len() > 1) {
            let atoms = parts.iter().map(|&e| Atom::Cyclic(p.pow(e))).collect();
            push(GroupSpec { atoms }, &mut out);
        }
        let mut nonabelian: Vec<Atom> = Vec::new();
        if p == 2 {
            for k in 3..=10u32 {
                nonabelian.push(Atom::Dihedral(1 << k));
                nonabelian.push(Atom::Quaternion(1 << k));
                if k >= 4 {
                    nonabelian.push(Atom::Semidihedral(1 << k));
                    nonabelian.push(Atom::Modular { p, k });
                }
            }
        } else {
            for k in 3..=10u32 {
                if p.pow(k) <= FAMILY_CAP {
                    nonabelian.push(Atom::Modular { p, k });
                }
            }
            nonabelian.push(Atom::Heisenberg(p));
        }
        for a in &nonabelian {
            push(GroupSpec::atom(a.clone()), &mut out);
        }
        for a in &nonabelian {
            if a.order().is_some_and(|o| o * p <= FAMILY_CAP) {
                push(GroupSpec::atom(a.clone()).times(Atom::Cyclic(p)), &mut out);
            }
        }
    }
    if let Ok(catalog) = crate::presentation::parse_catalog(crate::catalog::ORDER16_SOURCE) {
        for e in catalog {
            push(GroupSpec::atom(Atom::Presented(e.presentation)), &mut out);
        }
    }
    out
}

/// Outcome of running claims over a list of specs.
#[derive(Debug, Clone, Default)]
pub struct CensusReport {
    pub reports: Vec<VerdictReport>,
    /// Specs that could not be constructed, with the reason.
    pub errors: Vec<(String, String)>,
}

impl CensusReport {
    pub fn count(&self, status: Status) -> usize {
        self.reports.iter().filter(|r| r.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerdictReport> {
        self.reports.iter().filter(|r| r.status == Status::Fail)
    }
}

fn run_one(spec: &GroupSpec, claims: &[ClaimId], cap: usize) -> Result<Vec<VerdictReport>, SpecError> {
    let g = spec.build(cap)?;
    let a = Analysis::new(&g);
    Ok(claims.iter().map(|&c| a.run(c)).collect())
}

/// Runs every claim on every spec. Reports are ordered by spec, then claim.
pub fn run_census(specs: &[GroupSpec], claims: &[ClaimId], cap: usize) -> CensusReport {
    #[cfg(feature = "parallel")]
    let results: Vec<Result<Vec<VerdictReport>, SpecError>> = {
        use rayon::prelude::*;
        specs.par_iter().map(|s| run_one(s, claims, cap)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<Vec<VerdictReport>, SpecError>> =
        specs.iter().map(|s| run_one(s, claims, cap)).collect();

    let mut out = CensusReport::default();
    for (spec, r) in specs.iter().zip(results) {
        match r {
            Ok(reports) => out.reports.extend(reports),
            Err(e) => out.errors.push((spec.to_string(), e.to_string())),
        }
    }
    out
}

/// Line-delimited JSON, one verdict per line.
pub fn to_jsonl(reports: &[VerdictReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("verdicts serialize"));
        out.push('\n');
    }
    out
}

/// CSV with header `label,claim,status,nG,exp,order,p,alpha,witness`.
pub fn to_csv(reports: &[VerdictReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "claim", "status", "nG", "exp", "order", "p", "alpha", "witness"])
        .expect("in-memory write");
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in reports {
        w.write_record([
            r.label.clone(),
            r.claim.clone(),
            r.status.to_string(),
            opt(r.n_g.map(|v| v.to_string())),
            r.exp.to_string(),
            r.order.to_string(),
            opt(r.p.map(|v| v.to_string())),
            opt(r.alpha.map(|v| v.to_string())),
            opt(r.witness.map(|v| v.to_string())),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("UTF-8 CSV")
}
