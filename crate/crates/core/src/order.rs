//! Finite posets and c-posets.
//!
//! A c-poset `⟨P; ≤, φ⟩` is a poset together with an algebraic closure
//! operator `φ` on its subsets such that `φ(∅) = ∅` and
//! `x ≤ y ⟺ φ({x}) ⊆ φ({y})`.  Here `φ` is always presented by an
//! enumeration-operator code: `φ(X) = { x | ⟨x, k⟩ ∈ A, D_k ⊆ X }`, a
//! single application of the code (no fixpoint iteration — validity of the
//! code is what guarantees idempotence).
//!
//! φ-closed sets are *ideals*; an ideal is *proper* when it is neither
//! empty nor the whole carrier.  A proper ideal is *prime* when it
//! satisfies the three equivalent conditions checked by
//! [`primality_report`]: its complement is a filter, it is ∩-prime in the
//! ideal lattice, and `L(a₀, a₁) ⊆ I` forces `a₀ ∈ I` or `a₁ ∈ I`.

use crate::encoding::{set_decode, unpair, EnumOperator};
use crate::error::{Error, Result};
use crate::limits;
use crate::mask::{self, Mask};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// One validation check: verdict plus a human-readable counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass() -> Self {
        Check { passed: true, witness: None }
    }

    pub fn fail(witness: String) -> Self {
        Check { passed: false, witness: Some(witness) }
    }

    pub fn from_witness(witness: Option<String>) -> Self {
        match witness {
            None => Check::pass(),
            Some(w) => Check::fail(w),
        }
    }
}

// ---------------------------------------------------------------------------
// Posets
// ---------------------------------------------------------------------------

/// A finite poset over named elements (naturals).  The carrier is kept
/// sorted; subsets are bitmasks over carrier *indices*.
///
/// The relation is stored as given — [`Poset::validate`] reports whether it
/// actually is reflexive, antisymmetric and transitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<u64>,
    leq: Vec<bool>, // row-major n×n over indices
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetReport {
    pub reflexive: Check,
    pub antisymmetric: Check,
    pub transitive: Check,
}

impl PosetReport {
    pub fn passed(&self) -> bool {
        self.reflexive.passed && self.antisymmetric.passed && self.transitive.passed
    }
}

impl Poset {
    pub fn new(mut names: Vec<u64>, pairs: &[(u64, u64)]) -> Result<Self> {
        names.sort_unstable();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateName(w[0]));
            }
        }
        let n = names.len();
        let mut leq = vec![false; n * n];
        for &(a, b) in pairs {
            let i = index_in(&names, a).ok_or(Error::UnknownName(a))?;
            let j = index_in(&names, b).ok_or(Error::UnknownName(b))?;
            leq[i * n + j] = true;
        }
        Ok(Poset { names, leq })
    }

    /// Builds a poset from an index-level relation matrix with carrier
    /// `{0, …, n-1}`.
    pub fn from_matrix(n: usize, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), n * n);
        Poset { names: (0..n as u64).collect(), leq }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[u64] {
        &self.names
    }

    pub fn name(&self, i: usize) -> u64 {
        self.names[i]
    }

    pub fn index_of(&self, name: u64) -> Option<usize> {
        index_in(&self.names, name)
    }

    #[inline]
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n() + j]
    }

    pub fn leq_name(&self, a: u64, b: u64) -> Result<bool> {
        let i = self.index_of(a).ok_or(Error::UnknownName(a))?;
        let j = self.index_of(b).ok_or(Error::UnknownName(b))?;
        Ok(self.leq_idx(i, j))
    }

    /// All related pairs `(a, b)` with `a ≤ b`, by name, ascending.
    pub fn relation_pairs(&self) -> Vec<(u64, u64)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.leq_idx(i, j) {
                    out.push((self.names[i], self.names[j]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn validate(&self) -> PosetReport {
        let n = self.n();
        let mut reflexive = None;
        for i in 0..n {
            if !self.leq_idx(i, i) {
                reflexive = Some(format!("{} ≰ {}", self.names[i], self.names[i]));
                break;
            }
        }
        let mut antisymmetric = None;
        'anti: for i in 0..n {
            for j in 0..n {
                if i != j && self.leq_idx(i, j) && self.leq_idx(j, i) {
                    antisymmetric = Some(format!(
                        "{} ≤ {} and {} ≤ {}",
                        self.names[i], self.names[j], self.names[j], self.names[i]
                    ));
                    break 'anti;
                }
            }
        }
        let mut transitive = None;
        'trans: for i in 0..n {
            for j in 0..n {
                if !self.leq_idx(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq_idx(j, k) && !self.leq_idx(i, k) {
                        transitive = Some(format!(
                            "{} ≤ {} ≤ {} but {} ≰ {}",
                            self.names[i],
                            self.names[j],
                            self.names[k],
                            self.names[i],
                            self.names[k]
                        ));
                        break 'trans;
                    }
                }
            }
        }
        PosetReport {
            reflexive: Check::from_witness(reflexive),
            antisymmetric: Check::from_witness(antisymmetric),
            transitive: Check::from_witness(transitive),
        }
    }

    pub fn is_valid_order(&self) -> bool {
        self.validate().passed()
    }

    /// `↓X` as an index mask.
    pub fn downset(&self, x: Mask) -> Mask {
        let n = self.n();
        let mut out = 0;
        for i in 0..n {
            if mask::elems(x).any(|j| self.leq_idx(i, j)) {
                out |= mask::bit(i);
            }
        }
        out
    }

    /// Strict covers `(i, j)`: `i < j` with nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq_idx(i, j) || self.leq_idx(j, i) {
                    continue;
                }
                let between = (0..n).any(|k| {
                    k != i
                        && k != j
                        && self.leq_idx(i, k)
                        && self.leq_idx(k, j)
                        && !self.leq_idx(k, i)
                        && !self.leq_idx(j, k)
                });
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn index_in(sorted: &[u64], name: u64) -> Option<usize> {
    sorted.binary_search(&name).ok()
}

/// Lexicographically minimal relation matrix over all carrier
/// permutations, packed row-major into a `u64` (so carriers of size ≤ 8).
/// Two posets are isomorphic iff their digests agree.
pub fn canonical_order_digest(p: &Poset) -> Result<u64> {
    let n = p.n();
    if n * n > 64 {
        return Err(Error::SizeLimit { size: n, limit: 8 });
    }
    let mut best = u64::MAX;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |perm| {
        let mut bits = 0u64;
        for i in 0..n {
            for j in 0..n {
                if p.leq_idx(perm[i], perm[j]) {
                    bits |= 1 << (i * n + j);
                }
            }
        }
        if bits < best {
            best = bits;
        }
    });
    Ok(best)
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

// ---------------------------------------------------------------------------
// C-posets
// ---------------------------------------------------------------------------

/// A poset with an enumeration-operator code for its closure operator.
///
/// Construction checks only that the code is well-formed over the carrier
/// (every `⟨x, k⟩` has `x` a carrier element and `D_k ⊆ carrier`); the
/// closure axioms are the business of [`validate_cposet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPoset {
    poset: Poset,
    operator: EnumOperator,
    // (conclusion index, premise mask over indices), one per code
    rules: Vec<(u32, Mask)>,
}

impl CPoset {
    pub fn new(poset: Poset, operator: EnumOperator) -> Result<Self> {
        let mut rules = Vec::with_capacity(operator.len());
        for &code in operator.codes() {
            let (x, k) = unpair(code);
            let xi = poset.index_of(x).ok_or_else(|| Error::InvalidOperatorCode {
                code,
                detail: format!("conclusion {x} not in carrier"),
            })?;
            let mut premise = 0u64;
            for e in set_decode(k) {
                let ei = poset.index_of(e).ok_or_else(|| Error::InvalidOperatorCode {
                    code,
                    detail: format!("premise element {e} not in carrier"),
                })?;
                premise |= mask::bit(ei);
            }
            rules.push((xi as u32, premise));
        }
        Ok(CPoset { poset, operator, rules })
    }

    /// The downset c-poset of a poset: `φ(X) = ↓X`, coded with one pair
    /// `⟨a, {b}⟩` per related pair `a ≤ b`.
    pub fn downset_of(poset: &Poset) -> Result<Self> {
        let mut graph = Vec::new();
        for i in 0..poset.n() {
            for j in 0..poset.n() {
                if poset.leq_idx(i, j) {
                    graph.push((poset.name(i), vec![poset.name(j)]));
                }
            }
        }
        CPoset::new(poset.clone(), EnumOperator::from_graph(graph)?)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn operator(&self) -> &EnumOperator {
        &self.operator
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn names(&self) -> &[u64] {
        self.poset.names()
    }

    pub fn full_mask(&self) -> Mask {
        mask::full(self.n())
    }

    /// One application of the operator code to an index mask.
    #[inline]
    pub fn closure_mask(&self, x: Mask) -> Mask {
        let mut out = 0;
        for &(xi, premise) in &self.rules {
            if premise & !x == 0 {
                out |= 1u64 << xi;
            }
        }
        out
    }

    /// `φ(X)` for a set of element names.
    pub fn closure_names(&self, xs: &BTreeSet<u64>) -> Result<BTreeSet<u64>> {
        let m = self.mask_of_names(xs)?;
        Ok(self.names_of_mask(self.closure_mask(m)))
    }

    pub fn mask_of_names(&self, xs: &BTreeSet<u64>) -> Result<Mask> {
        let mut m = 0;
        for &x in xs {
            let i = self.poset.index_of(x).ok_or(Error::UnknownName(x))?;
            m |= mask::bit(i);
        }
        Ok(m)
    }

    pub fn names_of_mask(&self, m: Mask) -> BTreeSet<u64> {
        mask::elems(m).map(|i| self.poset.name(i)).collect()
    }

    /// `φ` tabulated on all `2^n` subsets (ceiling-guarded).
    pub fn closure_table(&self) -> Result<Vec<Mask>> {
        limits::check_exhaustive(self.n())?;
        Ok(mask::all_subsets(self.n())
            .map(|x| self.closure_mask(x))
            .collect())
    }

    pub fn format_mask(&self, m: Mask) -> String {
        mask::format_with_names(m, self.poset.names())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CPosetReport {
    pub reflexive: Check,
    pub antisymmetric: Check,
    pub transitive: Check,
    pub operator_well_formed: Check,
    pub empty_to_empty: Check,
    pub extensive: Check,
    pub monotone: Check,
    pub idempotent: Check,
    pub order_compatible: Check,
}

impl CPosetReport {
    pub fn passed(&self) -> bool {
        self.reflexive.passed
            && self.antisymmetric.passed
            && self.transitive.passed
            && self.operator_well_formed.passed
            && self.empty_to_empty.passed
            && self.extensive.passed
            && self.monotone.passed
            && self.idempotent.passed
            && self.order_compatible.passed
    }
}

/// Checks every c-poset axiom, exhaustively over all subsets of the
/// carrier.  Monotonicity is verified on all covering pairs
/// `X ⊆ X ∪ {a}`, which is equivalent to the full quantifier by induction
/// on the symmetric difference (and is automatic for enumeration
/// operators — a failure here means the evaluator itself is broken).
pub fn validate_cposet(p: &CPoset) -> Result<CPosetReport> {
    let n = p.n();
    let table = p.closure_table()?;
    let order = p.poset().validate();

    let empty_to_empty = if table[0] == 0 {
        Check::pass()
    } else {
        Check::fail(format!("φ(∅) = {}", p.format_mask(table[0])))
    };

    let mut extensive = None;
    let mut monotone = None;
    let mut idempotent = None;
    for x in mask::all_subsets(n) {
        let cx = table[x as usize];
        if extensive.is_none() && x & !cx != 0 {
            extensive = Some(format!(
                "X = {} ⊄ φ(X) = {}",
                p.format_mask(x),
                p.format_mask(cx)
            ));
        }
        if idempotent.is_none() {
            let in_range = cx < (1u64 << n);
            if !in_range {
                idempotent = Some(format!("φ({}) leaves the carrier", p.format_mask(x)));
            } else if table[cx as usize] != cx {
                idempotent = Some(format!(
                    "φ(φ({})) = {} ≠ φ({}) = {}",
                    p.format_mask(x),
                    p.format_mask(table[cx as usize]),
                    p.format_mask(x),
                    p.format_mask(cx)
                ));
            }
        }
        if monotone.is_none() {
            for i in 0..n {
                let y = x | mask::bit(i);
                if y != x && !mask::is_subset(cx, table[y as usize]) {
                    monotone = Some(format!(
                        "φ({}) ⊄ φ({})",
                        p.format_mask(x),
                        p.format_mask(y)
                    ));
                    break;
                }
            }
        }
    }

    let mut order_compatible = None;
    for i in 0..n {
        for j in 0..n {
            let closure_leq = mask::is_subset(table[mask::bit(i) as usize], table[mask::bit(j) as usize]);
            if p.poset().leq_idx(i, j) != closure_leq {
                order_compatible = Some(format!(
                    "{} ≤ {} is {} but φ({{{}}}) ⊆ φ({{{}}}) is {}",
                    p.poset().name(i),
                    p.poset().name(j),
                    p.poset().leq_idx(i, j),
                    p.poset().name(i),
                    p.poset().name(j),
                    closure_leq
                ));
                break;
            }
        }
        if order_compatible.is_some() {
            break;
        }
    }

    Ok(CPosetReport {
        reflexive: order.reflexive,
        antisymmetric: order.antisymmetric,
        transitive: order.transitive,
        // enforced by the constructor; reported for completeness
        operator_well_formed: Check::pass(),
        empty_to_empty,
        extensive: Check::from_witness(extensive),
        monotone: Check::from_witness(monotone),
        idempotent: Check::from_witness(idempotent),
        order_compatible: Check::from_witness(order_compatible),
    })
}

// ---------------------------------------------------------------------------
// Bounds, ideals, filters
// ---------------------------------------------------------------------------

/// `L(X)`: common lower bounds of `X`.  `L(∅)` is the whole carrier.
/// On a valid c-poset this is always an ideal (`L(X) = ∩_{x∈X} φ({x})`).
pub fn lower_bounds(p: &CPoset, x: Mask) -> Mask {
    let n = p.n();
    let mut out = 0;
    for i in 0..n {
        if mask::elems(x).all(|j| p.poset().leq_idx(i, j)) {
            out |= mask::bit(i);
        }
    }
    out
}

/// Common upper bounds of `X` (not an ideal in general).
pub fn upper_bounds(p: &CPoset, x: Mask) -> Mask {
    let n = p.n();
    let mut out = 0;
    for i in 0..n {
        if mask::elems(x).all(|j| p.poset().leq_idx(j, i)) {
            out |= mask::bit(i);
        }
    }
    out
}

/// Greatest element of a mask, if it has one.
pub fn greatest_in(p: &CPoset, m: Mask) -> Option<usize> {
    mask::elems(m).find(|&i| mask::elems(m).all(|j| p.poset().leq_idx(j, i)))
}

/// Least element of a mask, if it has one.
pub fn least_in(p: &CPoset, m: Mask) -> Option<usize> {
    mask::elems(m).find(|&i| mask::elems(m).all(|j| p.poset().leq_idx(i, j)))
}

/// Binary meet `a ∧ b` (greatest lower bound), if it exists.
pub fn meet(p: &CPoset, i: usize, j: usize) -> Option<usize> {
    greatest_in(p, lower_bounds(p, mask::bit(i) | mask::bit(j)))
}

/// Binary join `a ∨ b` (least upper bound), if it exists.
pub fn join(p: &CPoset, i: usize, j: usize) -> Option<usize> {
    least_in(p, upper_bounds(p, mask::bit(i) | mask::bit(j)))
}

pub fn is_ideal(p: &CPoset, m: Mask) -> bool {
    p.closure_mask(m) == m
}

pub fn is_upper_cone(p: &CPoset, m: Mask) -> bool {
    mask::elems(m).all(|i| (0..p.n()).all(|j| !p.poset().leq_idx(i, j) || mask::contains(m, j)))
}

pub fn is_down_directed(p: &CPoset, m: Mask) -> bool {
    if m == 0 {
        return false;
    }
    mask::elems(m).all(|i| {
        mask::elems(m).all(|j| {
            mask::elems(m).any(|r| p.poset().leq_idx(r, i) && p.poset().leq_idx(r, j))
        })
    })
}

/// A filter is a non-empty down-directed upper cone.
pub fn is_filter(p: &CPoset, m: Mask) -> bool {
    m != 0 && is_upper_cone(p, m) && is_down_directed(p, m)
}

/// All φ-ideals, ascending by bitmask (ceiling-guarded).
pub fn enumerate_ideals(p: &CPoset) -> Result<Vec<Mask>> {
    limits::check_exhaustive(p.n())?;
    Ok(mask::all_subsets(p.n())
        .filter(|&m| p.closure_mask(m) == m)
        .collect())
}

/// The lattice `Id P` of all ideals with meet `∩` and join `φ(· ∪ ·)`.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    pub ideals: Vec<Mask>, // ascending
    full: Mask,
}

impl IdealLattice {
    pub fn from_cposet(p: &CPoset) -> Result<Self> {
        Ok(IdealLattice { ideals: enumerate_ideals(p)?, full: p.full_mask() })
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, m: Mask) -> Option<usize> {
        self.ideals.binary_search(&m).ok()
    }

    pub fn meet(&self, a: Mask, b: Mask) -> Mask {
        a & b
    }

    pub fn join(&self, p: &CPoset, a: Mask, b: Mask) -> Mask {
        p.closure_mask(a | b)
    }

    pub fn is_union_closed(&self) -> bool {
        self.ideals.iter().all(|&a| {
            self.ideals
                .iter()
                .all(|&b| self.index_of(a | b).is_some())
        })
    }

    /// Distributivity of the ideal lattice.  A union-closed ideal family is
    /// a ring of sets, hence distributive; otherwise the triple law
    /// `x ∩ (y ∨ z) = (x ∩ y) ∨ (x ∩ z)` is checked on all triples.
    pub fn is_distributive(&self, p: &CPoset) -> bool {
        self.distributivity_witness(p).is_none()
    }

    /// First failing triple `(x, y, z)`, if any, by ascending mask order.
    pub fn distributivity_witness(&self, p: &CPoset) -> Option<(Mask, Mask, Mask)> {
        if self.is_union_closed() {
            return None;
        }
        let m = self.ideals.len();
        // join table, indexed by ideal positions
        let mut join_at = vec![0usize; m * m];
        for (yi, &y) in self.ideals.iter().enumerate() {
            for (zi, &z) in self.ideals.iter().enumerate() {
                let j = self.join(p, y, z);
                join_at[yi * m + zi] = self
                    .index_of(j)
                    .expect("join of ideals must be an ideal");
            }
        }
        let pos = |mask: Mask| self.index_of(mask).expect("meet of ideals must be an ideal");
        for (yi, &y) in self.ideals.iter().enumerate() {
            for (zi, &z) in self.ideals.iter().enumerate() {
                let yz = self.ideals[join_at[yi * m + zi]];
                for &x in &self.ideals {
                    let lhs = x & yz;
                    let rhs = self.ideals[join_at[pos(x & y) * m + pos(x & z)]];
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn top(&self) -> Mask {
        self.full
    }
}

/// Distributivity of `Id P` (the defining condition for a distributive
/// c-poset).
pub fn is_distributive(p: &CPoset) -> Result<bool> {
    Ok(IdealLattice::from_cposet(p)?.is_distributive(p))
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

/// The three equivalent primality conditions for a proper ideal, evaluated
/// independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityReport {
    /// The candidate is φ-closed at all.
    pub ideal: bool,
    /// Proper: neither empty nor the whole carrier.
    pub proper: bool,
    /// (1) the complement is a filter.
    pub complement_filter: bool,
    /// (2) ∩-prime in the ideal lattice: `J ∩ K ⊆ I ⟹ J ⊆ I or K ⊆ I`.
    pub cap_prime: bool,
    /// (3) `L(a₀, a₁) ⊆ I ⟹ a₀ ∈ I or a₁ ∈ I`.
    pub lower_bound_condition: bool,
}

impl PrimalityReport {
    /// The three  conditions agree (only meaningful on proper ideals).
    pub fn conditions_agree(&self) -> bool {
        self.complement_filter == self.cap_prime
            && self.cap_prime == self.lower_bound_condition
    }

    pub fn prime(&self) -> bool {
        self.ideal && self.proper && self.complement_filter
    }
}

/// Evaluates all three primality conditions for `candidate` against a
/// precomputed ideal lattice.
pub fn primality_report(p: &CPoset, candidate: Mask, lattice: &IdealLattice) -> PrimalityReport {
    let full = p.full_mask();
    let ideal = is_ideal(p, candidate);
    let proper = candidate != 0 && candidate != full;

    let complement_filter = is_filter(p, full & !candidate);

    // ∩-prime via the least ideal not below I: the set {J | J ⊄ I} is
    // closed under ∩ iff its total intersection still is not below I.
    let cap_prime = if candidate == full {
        false
    } else {
        let mut meet_of_rest = full;
        for &j in &lattice.ideals {
            if j & !candidate != 0 {
                meet_of_rest &= j;
            }
        }
        meet_of_rest & !candidate != 0
    };

    let n = p.n();
    let mut lower_bound_condition = true;
    'outer: for a in 0..n {
        for b in 0..n {
            let l = lower_bounds(p, mask::bit(a) | mask::bit(b));
            if mask::is_subset(l, candidate)
                && !mask::contains(candidate, a)
                && !mask::contains(candidate, b)
            {
                lower_bound_condition = false;
                break 'outer;
            }
        }
    }

    PrimalityReport { ideal, proper, complement_filter, cap_prime, lower_bound_condition }
}

/// Is the ideal prime?  Errors when the candidate is not an ideal, and
/// raises an internal-consistency fault when the three conditions disagree
/// on a proper ideal of a validated distributive c-poset.
pub fn is_prime(p: &CPoset, candidate: Mask) -> Result<bool> {
    if !is_ideal(p, candidate) {
        return Err(Error::NotIdeal(
            mask::format_with_names(candidate, p.names()),
        ));
    }
    let lattice = IdealLattice::from_cposet(p)?;
    let report = primality_report(p, candidate, &lattice);
    if report.proper && !report.conditions_agree() && lattice.is_distributive(p) {
        return Err(Error::InternalFault {
            law: "the equivalence of the three primality conditions",
            detail: format!(
                "ideal {}: complement-filter={}, ∩-prime={}, lower-bound={}",
                mask::format_with_names(candidate, p.names()),
                report.complement_filter,
                report.cap_prime,
                report.lower_bound_condition
            ),
        });
    }
    Ok(report.prime())
}

/// All prime ideals, ascending by bitmask.  Uses the complement-is-a-filter
/// condition (the defining one); agreement of the other two is a suite
/// criterion.
pub fn enumerate_primes(p: &CPoset) -> Result<Vec<Mask>> {
    let full = p.full_mask();
    Ok(enumerate_ideals(p)?
        .into_iter()
        .filter(|&m| m != 0 && m != full && is_filter(p, full & !m))
        .collect())
}

/// Separation: the smallest-bitmask prime ideal containing `ideal` and
/// disjoint from the down-directed set `filter`.
///
/// Preconditions are those of the separation theorem and are all checked:
/// `p` distributive, `ideal` a non-empty ideal, `filter` non-empty and
/// down-directed, and the two disjoint.
pub fn prime_separation(p: &CPoset, ideal: Mask, filter: Mask) -> Result<Mask> {
    if ideal == 0 {
        return Err(Error::EmptySeparand("ideal"));
    }
    if filter == 0 {
        return Err(Error::EmptySeparand("down-directed set"));
    }
    if !is_ideal(p, ideal) {
        return Err(Error::NotIdeal(mask::format_with_names(ideal, p.names())));
    }
    if !is_down_directed(p, filter) {
        return Err(Error::NotDownDirected(mask::format_with_names(
            filter,
            p.names(),
        )));
    }
    if ideal & filter != 0 {
        let common = mask::elems(ideal & filter).next().unwrap();
        return Err(Error::NotDisjoint(p.poset().name(common)));
    }
    let lattice = IdealLattice::from_cposet(p)?;
    if let Some((x, y, z)) = lattice.distributivity_witness(p) {
        return Err(Error::NotDistributive(format!(
            "triple x={}, y={}, z={} breaks x ∩ (y ∨ z) = (x ∩ y) ∨ (x ∩ z)",
            mask::format_with_names(x, p.names()),
            mask::format_with_names(y, p.names()),
            mask::format_with_names(z, p.names())
        )));
    }
    let full = p.full_mask();
    for &q in &lattice.ideals {
        if q != 0
            && q != full
            && mask::is_subset(ideal, q)
            && q & filter == 0
            && is_filter(p, full & !q)
        {
            return Ok(q);
        }
    }
    Err(Error::InternalFault {
        law: "the prime separation theorem",
        detail: format!(
            "no prime contains {} and avoids {}",
            mask::format_with_names(ideal, p.names()),
            mask::format_with_names(filter, p.names())
        ),
    })
}

// ---------------------------------------------------------------------------
// Maps between carriers
// ---------------------------------------------------------------------------

/// A finite map between element names, kept sorted by source.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ElementMap {
    pairs: Vec<(u64, u64)>,
}

impl ElementMap {
    pub fn new(mut pairs: Vec<(u64, u64)>) -> Result<Self> {
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Parse(format!(
                    "map lists source {} twice",
                    w[0].0
                )));
            }
        }
        Ok(ElementMap { pairs })
    }

    pub fn identity<I: IntoIterator<Item = u64>>(names: I) -> Self {
        ElementMap { pairs: names.into_iter().map(|a| (a, a)).collect() }
    }

    pub fn get(&self, a: u64) -> Option<u64> {
        self.pairs
            .binary_search_by_key(&a, |&(s, _)| s)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn inverse(&self) -> Result<Self> {
        let flipped: Vec<(u64, u64)> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        ElementMap::new(flipped).map_err(|_| {
            Error::NotBijective("two sources share a target; cannot invert".into())
        })
    }

    /// `self` then `next`.
    pub fn compose(&self, next: &ElementMap) -> Result<Self> {
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for &(a, b) in &self.pairs {
            let c = next.get(b).ok_or(Error::MapNotTotal(b))?;
            pairs.push((a, c));
        }
        ElementMap::new(pairs)
    }
}

/// Resolves a name map to an index-level vector from `p0` into `p1`,
/// enforcing totality and range.
pub fn resolve_map(p0: &Poset, p1: &Poset, g: &ElementMap) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(p0.n());
    for i in 0..p0.n() {
        let a = p0.name(i);
        let b = g.get(a).ok_or(Error::MapNotTotal(a))?;
        let j = p1
            .index_of(b)
            .ok_or(Error::MapOutsideCarrier { from: a, to: b })?;
        out.push(j);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub bijective: Check,
    pub order_preserving: Check,
    pub order_reflecting: Check,
    pub closure_commutes: Check,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.bijective.passed
            && self.order_preserving.passed
            && self.order_reflecting.passed
            && self.closure_commutes.passed
    }

    /// The witness of the first failed component, if any.
    pub fn first_witness(&self) -> Option<String> {
        [
            &self.bijective,
            &self.order_preserving,
            &self.order_reflecting,
            &self.closure_commutes,
        ]
        .iter()
        .find_map(|c| c.witness.clone())
    }
}

/// Is `g` an isomorphism of c-posets?  (Bijective, order preserving and
/// reflecting, and commuting with the closure operators on every subset.)
pub fn check_dp_isomorphism(p0: &CPoset, p1: &CPoset, g: &ElementMap) -> Result<IsoReport> {
    limits::check_exhaustive(p0.n())?;
    let idx = resolve_map(p0.poset(), p1.poset(), g)?;

    let bijective = {
        let mut seen = vec![false; p1.n()];
        let mut witness = None;
        for (i, &j) in idx.iter().enumerate() {
            if seen[j] {
                witness = Some(format!(
                    "two elements map to {}",
                    p1.poset().name(j)
                ));
                break;
            }
            seen[j] = true;
            let _ = i;
        }
        if witness.is_none() && p0.n() != p1.n() {
            witness = Some(format!("carrier sizes {} vs {}", p0.n(), p1.n()));
        }
        if witness.is_none() {
            if let Some(j) = seen.iter().position(|&s| !s) {
                witness = Some(format!("{} is not in the image", p1.poset().name(j)));
            }
        }
        Check::from_witness(witness)
    };

    let mut preserving = None;
    let mut reflecting = None;
    for i in 0..p0.n() {
        for j in 0..p0.n() {
            let src = p0.poset().leq_idx(i, j);
            let dst = p1.poset().leq_idx(idx[i], idx[j]);
            if src && !dst && preserving.is_none() {
                preserving = Some(format!(
                    "{} ≤ {} but images are unrelated",
                    p0.poset().name(i),
                    p0.poset().name(j)
                ));
            }
            if dst && !src && reflecting.is_none() {
                reflecting = Some(format!(
                    "images of {} and {} are related but sources are not",
                    p0.poset().name(i),
                    p0.poset().name(j)
                ));
            }
        }
    }

    let push = |m: Mask| -> Mask {
        let mut out = 0;
        for i in mask::elems(m) {
            out |= mask::bit(idx[i]);
        }
        out
    };
    let mut commutes = None;
    for x in mask::all_subsets(p0.n()) {
        let lhs = push(p0.closure_mask(x));
        let rhs = p1.closure_mask(push(x));
        if lhs != rhs {
            commutes = Some(format!(
                "g(φ₀({})) = {} but φ₁(g(X)) = {}",
                p0.format_mask(x),
                p1.format_mask(lhs),
                p1.format_mask(rhs)
            ));
            break;
        }
    }

    Ok(IsoReport {
        bijective,
        order_preserving: Check::from_witness(preserving),
        order_reflecting: Check::from_witness(reflecting),
        closure_commutes: Check::from_witness(commutes),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictReport {
    pub preimages_prime: Check,
    pub primes_checked: u64,
}

impl StrictReport {
    pub fn passed(&self) -> bool {
        self.preimages_prime.passed
    }
}

/// Strictness: the preimage of every prime ideal of `p1` under `g` is a
/// prime ideal of `p0`.  Vacuously true when `p1` has no primes.
pub fn check_strict(p0: &CPoset, p1: &CPoset, g: &ElementMap) -> Result<StrictReport> {
    let idx = resolve_map(p0.poset(), p1.poset(), g)?;
    let primes1 = enumerate_primes(p1)?;
    let primes0 = enumerate_primes(p0)?;
    let mut witness = None;
    for &q in &primes1 {
        let mut pre = 0u64;
        for (i, &j) in idx.iter().enumerate() {
            if mask::contains(q, j) {
                pre |= mask::bit(i);
            }
        }
        if primes0.binary_search(&pre).is_err() {
            witness = Some(format!(
                "preimage {} of prime {} is not prime",
                p0.format_mask(pre),
                p1.format_mask(q)
            ));
            break;
        }
    }
    Ok(StrictReport {
        preimages_prime: Check::from_witness(witness),
        primes_checked: primes1.len() as u64,
    })
}


#[cfg(test)]
mod tests {
    use super::*;

    /// Chain a < b < c with names 0 < 1 < 2 and the downset operator.
    fn chain3() -> CPoset {
        tests_support::chain(3)
    }

    fn antichain2() -> CPoset {
        tests_support::downset_cposet(&[0, 1], &[])
    }

    #[test]
    fn chain_validates() {
        let p = chain3();
        let report = validate_cposet(&p).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn missing_extensivity_pair_is_caught() {
        // Downset operator on the chain 0 < 1 without the pair ⟨0, {0}⟩.
        let poset = Poset::new(vec![0, 1], &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let op = EnumOperator::from_graph([(0u64, vec![1u64]), (1, vec![1])]).unwrap();
        let p = CPoset::new(poset, op).unwrap();
        let report = validate_cposet(&p).unwrap();
        assert!(!report.extensive.passed);
        assert!(!report.passed());
    }

    #[test]
    fn operator_code_outside_carrier_is_refused() {
        let poset = Poset::new(vec![0, 1], &[(0, 0), (1, 1)]).unwrap();
        let op = EnumOperator::from_graph([(7u64, vec![0u64])]).unwrap();
        assert!(matches!(
            CPoset::new(poset, op),
            Err(Error::InvalidOperatorCode { .. })
        ));
    }

    #[test]
    fn chain_ideals_and_primes() {
        let p = chain3();
        // Ideals of the 3-chain downset c-poset: ∅, {0}, {0,1}, {0,1,2}.
        assert_eq!(enumerate_ideals(&p).unwrap(), vec![0b000, 0b001, 0b011, 0b111]);
        // Primes: {0} and {0,1}.
        assert_eq!(enumerate_primes(&p).unwrap(), vec![0b001, 0b011]);
    }

    #[test]
    fn antichain_primes() {
        let p = antichain2();
        // Both singletons are prime: complement is the other singleton.
        assert_eq!(enumerate_primes(&p).unwrap(), vec![0b01, 0b10]);
    }

    #[test]
    fn three_conditions_agree_on_chain() {
        let p = chain3();
        let lattice = IdealLattice::from_cposet(&p).unwrap();
        for &i in &lattice.ideals {
            let r = primality_report(&p, i, &lattice);
            if r.proper {
                assert!(r.conditions_agree(), "ideal {i:b}: {r:?}");
            }
        }
    }

    #[test]
    fn antichain3_singleton_is_not_prime() {
        // Closure system {∅, {0}, {1}, {2}, P}: ideal {0} fails all three
        // conditions (complement not down-directed, ∅ = {1} ∩ {2} ⊆ {0},
        // L(1,2) = ∅ ⊆ {0}).
        let poset = Poset::new(vec![0, 1, 2], &[(0, 0), (1, 1), (2, 2)]).unwrap();
        let mut graph: Vec<(u64, Vec<u64>)> = vec![(0, vec![0]), (1, vec![1]), (2, vec![2])];
        for s in [vec![0u64, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            for x in [0u64, 1, 2] {
                graph.push((x, s.clone()));
            }
        }
        let p = CPoset::new(poset, EnumOperator::from_graph(graph).unwrap()).unwrap();
        assert!(validate_cposet(&p).unwrap().passed());
        let lattice = IdealLattice::from_cposet(&p).unwrap();
        let r = primality_report(&p, 0b001, &lattice);
        assert!(r.proper);
        assert!(!r.complement_filter && !r.cap_prime && !r.lower_bound_condition);
        assert!(r.conditions_agree());
        // And the ideal lattice is M3 plus bottom — not distributive.
        assert!(!lattice.is_distributive(&p));
    }

    #[test]
    fn downsets_are_distributive() {
        assert!(is_distributive(&chain3()).unwrap());
        assert!(is_distributive(&antichain2()).unwrap());
    }

    #[test]
    fn separation_on_chain_picks_smallest_prime() {
        let p = chain3();
        // I = {0}, F = {2}: both {0} and {0,1} work; smallest bitmask wins.
        assert_eq!(prime_separation(&p, 0b001, 0b100).unwrap(), 0b001);
        // I = {0,1}, F = {2}: only {0,1} works.
        assert_eq!(prime_separation(&p, 0b011, 0b100).unwrap(), 0b011);
    }

    #[test]
    fn separation_rejects_bad_inputs() {
        let p = chain3();
        assert!(matches!(
            prime_separation(&p, 0, 0b100),
            Err(Error::EmptySeparand("ideal"))
        ));
        assert!(matches!(
            prime_separation(&p, 0b001, 0),
            Err(Error::EmptySeparand(_))
        ));
        assert!(matches!(
            prime_separation(&p, 0b001, 0b001),
            Err(Error::NotDisjoint(0))
        ));
        // {0, 2} is not closed (φ adds nothing here — it *is* closed for
        // the downset operator? no: ↓{0,2} = {0,1,2}).
        assert!(matches!(
            prime_separation(&p, 0b101, 0b010),
            Err(Error::NotIdeal(_))
        ));
        // Non-distributive source is refused.
        let poset = Poset::new(vec![0, 1, 2], &[(0, 0), (1, 1), (2, 2)]).unwrap();
        let mut graph: Vec<(u64, Vec<u64>)> = vec![(0, vec![0]), (1, vec![1]), (2, vec![2])];
        for s in [vec![0u64, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            for x in [0u64, 1, 2] {
                graph.push((x, s.clone()));
            }
        }
        let m3ish = CPoset::new(poset, EnumOperator::from_graph(graph).unwrap()).unwrap();
        assert!(matches!(
            prime_separation(&m3ish, 0b001, 0b010),
            Err(Error::NotDistributive(_))
        ));
    }

    #[test]
    fn lower_bounds_is_intersection_of_singleton_closures() {
        let p = chain3();
        for x in mask::all_subsets(3) {
            if x == 0 {
                assert_eq!(lower_bounds(&p, x), 0b111);
                continue;
            }
            let mut expect = p.full_mask();
            for i in mask::elems(x) {
                expect &= p.closure_mask(mask::bit(i));
            }
            assert_eq!(lower_bounds(&p, x), expect, "X = {x:b}");
        }
    }

    #[test]
    fn is_prime_rejects_non_ideal() {
        let p = chain3();
        assert!(matches!(is_prime(&p, 0b100), Err(Error::NotIdeal(_))));
        assert!(is_prime(&p, 0b001).unwrap());
        assert!(!is_prime(&p, 0b111).unwrap());
        assert!(!is_prime(&p, 0).unwrap());
    }

    #[test]
    fn dp_isomorphism_detects_relabelling() {
        let p = chain3();
        let q_poset = Poset::new(
            vec![5, 9, 11],
            &[(5, 5), (5, 9), (5, 11), (9, 9), (9, 11), (11, 11)],
        )
        .unwrap();
        let q = CPoset::downset_of(&q_poset).unwrap();
        let g = ElementMap::new(vec![(0, 5), (1, 9), (2, 11)]).unwrap();
        assert!(check_dp_isomorphism(&p, &q, &g).unwrap().passed());
        // The order-reversing bijection is not an isomorphism.
        let bad = ElementMap::new(vec![(0, 11), (1, 9), (2, 5)]).unwrap();
        let report = check_dp_isomorphism(&p, &q, &bad).unwrap();
        assert!(!report.passed());
        assert!(!report.order_preserving.passed);
    }

    #[test]
    fn constant_map_to_singleton_is_vacuously_strict() {
        let p = antichain2();
        let singleton = CPoset::downset_of(&Poset::new(vec![0], &[(0, 0)]).unwrap()).unwrap();
        // The singleton c-poset has no proper ideals, hence no primes.
        assert!(enumerate_primes(&singleton).unwrap().is_empty());
        let g = ElementMap::new(vec![(0, 0), (1, 0)]).unwrap();
        let report = check_strict(&p, &singleton, &g).unwrap();
        assert!(report.passed());
        assert_eq!(report.primes_checked, 0);
    }

    #[test]
    fn strictness_fails_when_preimage_is_not_prime() {
        // Map the 2-antichain onto one point of the 2-antichain: the
        // preimage of the prime {other} is ∅, which is not proper.
        let p = antichain2();
        let g = ElementMap::new(vec![(0, 0), (1, 0)]).unwrap();
        let report = check_strict(&p, &antichain2(), &g).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn canonical_digest_identifies_isomorphic_posets() {
        let a = Poset::new(vec![0, 1, 2], &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]).unwrap();
        let b = Poset::new(vec![0, 1, 2], &[(0, 0), (1, 1), (2, 2), (2, 0), (2, 1)]).unwrap();
        let c = Poset::new(vec![0, 1, 2], &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(
            canonical_order_digest(&a).unwrap(),
            canonical_order_digest(&b).unwrap()
        );
        assert_ne!(
            canonical_order_digest(&a).unwrap(),
            canonical_order_digest(&c).unwrap()
        );
    }

    #[test]
    fn size_ceiling_is_enforced() {
        let n = 17u64;
        let names: Vec<u64> = (0..n).collect();
        let pairs: Vec<(u64, u64)> = (0..n).map(|i| (i, i)).collect();
        let poset = Poset::new(names.clone(), &pairs).unwrap();
        let op = EnumOperator::from_graph(names.iter().map(|&i| (i, vec![i]))).unwrap();
        let p = CPoset::new(poset, op).unwrap();
        assert!(matches!(
            validate_cposet(&p),
            Err(Error::SizeLimit { size: 17, .. })
        ));
        assert!(matches!(enumerate_ideals(&p), Err(Error::SizeLimit { .. })));
    }
}
