//! Finite T0 spaces presented by an indexed base.
//!
//! A space is a triple: points, a pool of base sets, and an index map
//! `β: {0,…,m-1} → pool` (so the indexed base may repeat sets).  The
//! topology is derived: all unions of base sets, plus `∅` and the whole
//! space.  Structural validity asks for T0 separation, a covering base,
//! and intersection-stability (every binary intersection of base sets is
//! a union of base sets); the two base-membership biconditionals —
//! `∅ ∈ B ⟺ sober ∧ down-directed` and `X ∈ B ⟺ compact ∧ up-directed` —
//! are evaluated and reported separately, since inputs are accepted for
//! inspection whether or not they satisfy them.
//!
//! Sobriety comes in two readings.  `Standard` quantifies over
//! *irreducible* closed sets (for finite T0 spaces this always holds; the
//! checks verify rather than assume it).  `StrictLiteral` quantifies over
//! *all* (proper, for the almost variant) nonempty closed sets, which is
//! a genuinely stronger condition; both verdicts are reported and the
//! mode in force is echoed.

use crate::error::{Error, Result};
use crate::limits;
use crate::mask::{self, Mask};
use crate::order::{Check, ElementMap, Poset};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which sobriety reading is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SoberMode {
    /// Quantify over irreducible closed sets (the literature's reading).
    #[serde(rename = "standard")]
    Standard,
    /// Quantify over all (proper) nonempty closed sets, as written.
    #[serde(rename = "strict-literal")]
    StrictLiteral,
}

impl fmt::Display for SoberMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SoberMode::Standard => write!(f, "standard"),
            SoberMode::StrictLiteral => write!(f, "strict-literal"),
        }
    }
}

/// A finite space with indexed base.  Point subsets are bitmasks over
/// point *indices* (the sorted name list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    point_names: Vec<u64>,
    pool: Vec<Mask>,
    beta: Vec<usize>,
}

impl Space {
    /// Builds a space from named points, a pool of base sets (lists of
    /// point names), and an optional index map `β` into the pool (the
    /// identity when omitted).
    pub fn new(
        mut points: Vec<u64>,
        pool_sets: Vec<Vec<u64>>,
        beta: Option<Vec<usize>>,
    ) -> Result<Self> {
        points.sort_unstable();
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateName(w[0]));
            }
        }
        let mut pool = Vec::with_capacity(pool_sets.len());
        for set in pool_sets {
            let mut m: Mask = 0;
            for name in set {
                let i = points
                    .binary_search(&name)
                    .map_err(|_| Error::UnknownPoint(name))?;
                m |= mask::bit(i);
            }
            pool.push(m);
        }
        let beta = match beta {
            Some(b) => {
                for &id in &b {
                    if id >= pool.len() {
                        return Err(Error::BadBaseIndex(id));
                    }
                }
                b
            }
            None => (0..pool.len()).collect(),
        };
        Ok(Space { point_names: points, pool, beta })
    }

    /// Generator fast path: points `0…n-1`, base = the given masks, `β`
    /// the identity.
    pub fn from_masks(n_points: usize, pool: Vec<Mask>) -> Self {
        debug_assert!(pool.iter().all(|&m| m <= mask::full(n_points)));
        let beta = (0..pool.len()).collect();
        Space { point_names: (0..n_points as u64).collect(), pool, beta }
    }

    /// Builds a space from already-indexed data: strictly ascending point
    /// names and pool masks over their positions, `β` the identity.
    pub fn from_named_masks(names: Vec<u64>, pool: Vec<Mask>) -> Result<Self> {
        if names.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("point names must be strictly ascending".into()));
        }
        let full = mask::full(names.len());
        if let Some(&bad) = pool.iter().find(|&&m| m & !full != 0) {
            return Err(Error::Parse(format!(
                "base mask {bad:#b} mentions points outside the {}-point carrier",
                names.len()
            )));
        }
        let beta = (0..pool.len()).collect();
        Ok(Space { point_names: names, pool, beta })
    }

    pub fn n_points(&self) -> usize {
        self.point_names.len()
    }

    pub fn full(&self) -> Mask {
        mask::full(self.n_points())
    }

    pub fn point_names(&self) -> &[u64] {
        &self.point_names
    }

    pub fn point_name(&self, i: usize) -> u64 {
        self.point_names[i]
    }

    pub fn point_index(&self, name: u64) -> Option<usize> {
        self.point_names.binary_search(&name).ok()
    }

    /// Number of base indices (the length of `β`, not of the pool).
    pub fn n_base(&self) -> usize {
        self.beta.len()
    }

    pub fn pool(&self) -> &[Mask] {
        &self.pool
    }

    pub fn beta_ids(&self) -> &[usize] {
        &self.beta
    }

    /// `β(i)` as a point mask.
    pub fn beta_set(&self, i: usize) -> Mask {
        self.pool[self.beta[i]]
    }

    /// The base as a *set* of sets: the distinct masks referenced by `β`,
    /// ascending.
    pub fn base_family(&self) -> Vec<Mask> {
        let mut fam: Vec<Mask> = self.beta.iter().map(|&id| self.pool[id]).collect();
        fam.sort_unstable();
        fam.dedup();
        fam
    }

    pub fn beta_is_injective(&self) -> bool {
        self.base_family().len() == self.n_base()
    }

    pub fn union_of_base(&self) -> Mask {
        self.beta.iter().fold(0, |acc, &id| acc | self.pool[id])
    }

    /// Is `m` open?  Opens are unions of base sets together with the
    /// whole space (adjoined even when the base fails to cover).
    pub fn is_open(&self, m: Mask) -> bool {
        if m == self.full() {
            return true;
        }
        let mut u = 0;
        for &b in &self.pool {
            if mask::is_subset(b, m) {
                u |= b;
            }
        }
        u == m
    }

    /// Every open set, ascending (ceiling-guarded: `2^points` candidates).
    pub fn opens(&self) -> Result<Vec<Mask>> {
        limits::check_exhaustive(self.n_points())?;
        Ok(mask::all_subsets(self.n_points())
            .filter(|&m| self.is_open(m))
            .collect())
    }

    /// Topological closure of a point set.
    pub fn closure_of(&self, m: Mask) -> Mask {
        if m == 0 {
            return 0;
        }
        let mut largest_disjoint_open = 0;
        for &b in &self.pool {
            if b & m == 0 {
                largest_disjoint_open |= b;
            }
        }
        self.full() & !largest_disjoint_open
    }

    /// The specialization order: `y ≤ x ⟺ y ∈ closure({x})`.
    pub fn specialization(&self) -> Poset {
        let n = self.n_points();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            let cl = self.closure_of(mask::bit(x));
            for y in mask::elems(cl) {
                leq[y * n + x] = true;
            }
        }
        let names = self.point_names.clone();
        // names are already sorted/distinct; rebuild through the matrix
        let mut pairs = Vec::new();
        for y in 0..n {
            for x in 0..n {
                if leq[y * n + x] {
                    pairs.push((names[y], names[x]));
                }
            }
        }
        Poset::new(names, &pairs).expect("carrier already validated")
    }

    pub fn format_point_set(&self, m: Mask) -> String {
        mask::format_with_names(m, &self.point_names)
    }

    fn closed_sets(&self) -> Result<Vec<Mask>> {
        let full = self.full();
        Ok(self.opens()?.into_iter().map(|o| full & !o).collect())
    }

    /// Maximal points of a set under specialization: `x ∈ m` with no
    /// strictly larger point inside `m`.
    fn has_unique_generic_point(&self, m: Mask) -> bool {
        mask::elems(m).any(|x| self.closure_of(mask::bit(x)) == m)
    }
}

/// Sobriety: every [irreducible] nonempty closed set is a point closure.
pub fn is_sober(s: &Space, mode: SoberMode) -> Result<bool> {
    sober_witness(s, mode, false).map(|w| w.is_none())
}

/// Almost sobriety: every [irreducible] *proper* nonempty closed set is a
/// point closure.
pub fn is_almost_sober(s: &Space, mode: SoberMode) -> Result<bool> {
    sober_witness(s, mode, true).map(|w| w.is_none())
}

/// First failing closed set, if any.  `proper_only` selects the almost
/// variant.  In `Standard` mode only irreducible closed sets (those that
/// are not unions of two strictly smaller closed sets) are quantified
/// over; finite irreducibility is equivalent to having a unique maximal
/// point, which is checked directly against all point closures.
fn sober_witness(s: &Space, mode: SoberMode, proper_only: bool) -> Result<Option<Mask>> {
    let full = s.full();
    for f in s.closed_sets()? {
        if f == 0 || (proper_only && f == full) {
            continue;
        }
        if mode == SoberMode::Standard && !is_irreducible_closed(s, f) {
            continue;
        }
        if !s.has_unique_generic_point(f) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Irreducibility of a nonempty closed set: it is not the union of two
/// strictly smaller closed sets.  Finitely, that means a unique maximal
/// point: the set is the union of its points' closures, so two distinct
/// maximal points would split it.
fn is_irreducible_closed(s: &Space, f: Mask) -> bool {
    let maximal = mask::elems(f)
        .filter(|&x| {
            mask::elems(f).all(|y| {
                x == y || !mask::contains(s.closure_of(mask::bit(y)), x) || {
                    // x ∈ cl{y} and y ∈ cl{x} cannot both hold unless x = y
                    // in a T0 space; treat mutual membership as non-strict.
                    mask::contains(s.closure_of(mask::bit(x)), y)
                }
            })
        })
        .count();
    maximal == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub mode: SoberMode,
    pub t0: Check,
    pub covering: Check,
    pub intersection_basis: Check,
    /// `∅ ∈ B ⟺ (sober ∧ base down-directed)`, under the mode in force.
    pub db_ii: Check,
    /// `X ∈ B ⟺ (compact ∧ base up-directed)`; finite spaces are compact.
    pub db_iii: Check,
    pub sober: bool,
    pub almost_sober: bool,
}

impl SpaceReport {
    /// Structural validity: T0 + covering base + intersection-stability.
    pub fn passed(&self) -> bool {
        self.t0.passed && self.covering.passed && self.intersection_basis.passed
    }

    /// Full conformance: structural validity plus both base-membership
    /// biconditionals.
    pub fn db_compliant(&self) -> bool {
        self.passed() && self.db_ii.passed && self.db_iii.passed
    }
}

/// Is the base family down-directed: every two members bound a third
/// from below?  (Vacuously true for the empty family.)
pub fn base_down_directed(fam: &[Mask]) -> bool {
    fam.iter().all(|&u| {
        fam.iter()
            .all(|&v| fam.iter().any(|&w| mask::is_subset(w, u & v)))
    })
}

/// Up-directedness of the base family.
pub fn base_up_directed(fam: &[Mask]) -> bool {
    fam.iter().all(|&u| {
        fam.iter()
            .all(|&v| fam.iter().any(|&w| mask::is_subset(u | v, w)))
    })
}

/// The three structural conditions alone (no sobriety computation): T0,
/// covering base, and intersection-stability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureChecks {
    pub t0: Check,
    pub covering: Check,
    pub intersection_basis: Check,
}

impl StructureChecks {
    pub fn passed(&self) -> bool {
        self.t0.passed && self.covering.passed && self.intersection_basis.passed
    }
}

pub fn structure_checks(s: &Space) -> StructureChecks {
    let n = s.n_points();
    let full = s.full();

    let mut t0 = None;
    for x in 0..n {
        for y in (x + 1)..n {
            let separated = s
                .pool
                .iter()
                .any(|&b| mask::contains(b, x) != mask::contains(b, y));
            if !separated {
                t0 = Some(format!(
                    "points {} and {} lie in exactly the same base sets",
                    s.point_name(x),
                    s.point_name(y)
                ));
                break;
            }
        }
        if t0.is_some() {
            break;
        }
    }

    let covered = s.union_of_base();
    let covering = if covered == full {
        Check::pass()
    } else {
        let missing = mask::elems(full & !covered).next().unwrap();
        Check::fail(format!(
            "point {} is in no base set",
            s.point_name(missing)
        ))
    };

    let mut intersection_basis = None;
    'pairs: for &a in &s.pool {
        for &b in &s.pool {
            let cut = a & b;
            let mut u = 0;
            for &c in &s.pool {
                if mask::is_subset(c, cut) {
                    u |= c;
                }
            }
            if u != cut {
                intersection_basis = Some(format!(
                    "{} ∩ {} = {} is not a union of base sets",
                    s.format_point_set(a),
                    s.format_point_set(b),
                    s.format_point_set(cut)
                ));
                break 'pairs;
            }
        }
    }

    StructureChecks {
        t0: Check::from_witness(t0),
        covering,
        intersection_basis: Check::from_witness(intersection_basis),
    }
}

pub fn validate_space(s: &Space, mode: SoberMode) -> Result<SpaceReport> {
    let n = s.n_points();
    let full = s.full();
    let structure = structure_checks(s);

    let sober = is_sober(s, mode)?;
    let almost_sober = is_almost_sober(s, mode)?;
    let fam = s.base_family();

    // Empty structures: both biconditionals hold vacuously.
    let (db_ii, db_iii) = if n == 0 && fam.is_empty() {
        (Check::pass(), Check::pass())
    } else {
        let has_empty = fam.contains(&0);
        let dd = base_down_directed(&fam);
        let rhs_ii = sober && dd;
        let db_ii = if has_empty == rhs_ii {
            Check::pass()
        } else {
            Check::fail(format!(
                "∅ ∈ base is {has_empty} but sober ({sober}, {mode} mode) ∧ down-directed ({dd}) is {rhs_ii}"
            ))
        };
        let has_whole = fam.contains(&full);
        let ud = base_up_directed(&fam);
        // finite spaces are compact
        let rhs_iii = ud;
        let db_iii = if has_whole == rhs_iii {
            Check::pass()
        } else {
            Check::fail(format!(
                "whole space ∈ base is {has_whole} but compact (true) ∧ up-directed ({ud}) is {rhs_iii}"
            ))
        };
        (db_ii, db_iii)
    };

    Ok(SpaceReport {
        mode,
        t0: structure.t0,
        covering: structure.covering,
        intersection_basis: structure.intersection_basis,
        db_ii,
        db_iii,
        sober,
        almost_sober,
    })
}

/// The classification record: base-order flags and the subcategory cells
/// the space belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub mode: SoberMode,
    pub has_empty_in_base: bool,
    pub has_whole_in_base: bool,
    pub down_directed: bool,
    pub up_directed: bool,
    /// Least element of `⟨B;⊆⟩` exists.
    pub zero_base: bool,
    /// Greatest element of `⟨B;⊆⟩` exists.
    pub one_base: bool,
    /// Closed under all binary intersections (the reading that matches
    /// meet-witness totality).
    pub multiplicative: bool,
    /// Closed under binary intersections with nonempty result.
    pub multiplicative_nonempty: bool,
    /// Closed under all binary unions.
    pub additive: bool,
    /// Closed under binary unions with nonempty result.
    pub additive_nonempty: bool,
    pub sober: bool,
    pub almost_sober: bool,
    /// Finite spaces are compact.
    pub compact: bool,
    /// Every base set of a finite space is compact-open.
    pub base_of_compact_opens: bool,
    /// Subcategory cells, e.g. `AS`, `ASp_s`, `Spec`.
    pub cells: Vec<String>,
}

pub fn classify(s: &Space, mode: SoberMode) -> Result<Classification> {
    let fam = s.base_family();
    let full = s.full();
    let has_empty_in_base = fam.contains(&0);
    let has_whole_in_base = fam.contains(&full);
    let down_directed = base_down_directed(&fam);
    let up_directed = base_up_directed(&fam);
    let zero_base = fam.iter().any(|&u| fam.iter().all(|&v| mask::is_subset(u, v)));
    let one_base = fam.iter().any(|&u| fam.iter().all(|&v| mask::is_subset(v, u)));
    let closed_under = |op: fn(Mask, Mask) -> Mask, nonempty_only: bool| {
        fam.iter().all(|&u| {
            fam.iter().all(|&v| {
                let r = op(u, v);
                (nonempty_only && r == 0) || fam.binary_search(&r).is_ok()
            })
        })
    };
    let multiplicative = closed_under(|a, b| a & b, false);
    let multiplicative_nonempty = closed_under(|a, b| a & b, true);
    let additive = closed_under(|a, b| a | b, false);
    let additive_nonempty = closed_under(|a, b| a | b, true);
    let sober = is_sober(s, mode)?;
    let almost_sober = is_almost_sober(s, mode)?;

    let mut cells = Vec::new();
    if almost_sober {
        // family name, with `_s`/`_c` variants and the classical name of
        // the 0-and-1 cell
        let mut family = |name: &str, both: &str, member: bool| {
            if member {
                cells.push(name.to_string());
                if zero_base {
                    cells.push(format!("{name}_s"));
                }
                if one_base {
                    cells.push(format!("{name}_c"));
                }
                if zero_base && one_base {
                    cells.push(both.to_string());
                }
            }
        };
        family("AS", "S", true);
        family("ASp", "Sp", multiplicative);
        family("AsSpec", "sSpec", additive);
        family("ASpec", "Spec", multiplicative && additive);
    }

    Ok(Classification {
        mode,
        has_empty_in_base,
        has_whole_in_base,
        down_directed,
        up_directed,
        zero_base,
        one_base,
        multiplicative,
        multiplicative_nonempty,
        additive,
        additive_nonempty,
        sober,
        almost_sober,
        compact: true,
        base_of_compact_opens: true,
        cells,
    })
}

// ---------------------------------------------------------------------------
// The Inc predicate
// ---------------------------------------------------------------------------

/// The extensional inclusion predicate of an indexed base:
/// `(i, k)` with `β(i) ⊆ ∪_{j ∈ D_k} β(j)` and `D_k ≠ ∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncPredicate {
    /// `(i, k)` pairs, ascending.
    pub entries: Vec<(u64, u64)>,
    /// Set codes skipped because they referenced out-of-range base
    /// indices.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<u64>,
}

impl IncPredicate {
    pub fn contains(&self, i: u64, k: u64) -> bool {
        self.entries.binary_search(&(i, k)).is_ok()
    }
}

/// Computes Inc extensionally over all base indices `i` and all set codes
/// `k ≤ maxk`.
pub fn inc_from_space(s: &Space, maxk: u64) -> IncPredicate {
    let m = s.n_base();
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    'codes: for k in 1..=maxk {
        let mut union = 0;
        let mut d = k;
        while d != 0 {
            let j = d.trailing_zeros() as usize;
            if j >= m {
                skipped.push(k);
                continue 'codes;
            }
            union |= s.beta_set(j);
            d &= d - 1;
        }
        for i in 0..m {
            if mask::is_subset(s.beta_set(i), union) {
                entries.push((i as u64, k));
            }
        }
    }
    entries.sort_unstable();
    IncPredicate { entries, skipped }
}

/// Resolves a point map on names to an index-level vector from `s0` into
/// `s1`, enforcing totality and range.
pub fn resolve_point_map(f: &ElementMap, s0: &Space, s1: &Space) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(s0.n_points());
    for x in 0..s0.n_points() {
        let name = s0.point_name(x);
        let to = f.get(name).ok_or(Error::MapNotTotal(name))?;
        let j = s1
            .point_index(to)
            .ok_or(Error::MapOutsideCarrier { from: name, to })?;
        out.push(j);
    }
    Ok(out)
}

/// Does every base set of `s1` pull back to a base set of `s0` under `f`?
pub fn check_spectral(f: &ElementMap, s0: &Space, s1: &Space) -> Result<Check> {
    let fam0 = s0.base_family();
    let idx = resolve_point_map(f, s0, s1)?;
    for &u in &s1.base_family() {
        let mut pre = 0;
        for (x, &fx) in idx.iter().enumerate() {
            if mask::contains(u, fx) {
                pre |= mask::bit(x);
            }
        }
        if fam0.binary_search(&pre).is_err() {
            return Ok(Check::fail(format!(
                "preimage {} of base set {} is not a base set",
                s0.format_point_set(pre),
                s1.format_point_set(u)
            )));
        }
    }
    Ok(Check::pass())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn discrete2() -> Space {
        Space::from_masks(2, vec![0b01, 0b10])
    }

    /// Points {p=0, q=1}, opens ∅, {q}, {p,q}.
    fn sierpinski() -> Space {
        Space::from_masks(2, vec![0b10, 0b11])
    }

    #[test]
    fn discrete_two_point_space_validates() {
        let s = discrete2();
        let r = validate_space(&s, SoberMode::Standard).unwrap();
        assert!(r.passed(), "{r:?}");
        // ∅ ∉ base and the base is not down-directed; sober holds — the
        // biconditional is false ⟺ false.
        assert!(r.db_ii.passed);
        // whole space ∉ base and base not up-directed.
        assert!(r.db_iii.passed);
        assert!(r.db_compliant());
    }

    #[test]
    fn indiscrete_like_base_fails_t0() {
        let s = Space::from_masks(2, vec![0b11]);
        let r = validate_space(&s, SoberMode::Standard).unwrap();
        assert!(!r.t0.passed);
        assert!(!r.passed());
    }

    #[test]
    fn singleton_with_point_base_passes_structurally_but_fails_db_ii() {
        let s = Space::from_masks(1, vec![0b1]);
        let r = validate_space(&s, SoberMode::Standard).unwrap();
        assert!(r.passed());
        // sober and down-directed but ∅ ∉ base.
        assert!(!r.db_ii.passed);
        assert!(r.db_iii.passed);
        assert!(!r.db_compliant());
    }

    #[test]
    fn empty_space_with_empty_base_set_is_compliant() {
        let s = Space::from_masks(0, vec![0]);
        let r = validate_space(&s, SoberMode::Standard).unwrap();
        assert!(r.passed());
        assert!(r.db_compliant(), "{r:?}");
        // And the fully empty presentation is vacuously compliant too.
        let bare = Space::from_masks(0, vec![]);
        assert!(validate_space(&bare, SoberMode::Standard)
            .unwrap()
            .db_compliant());
    }

    #[test]
    fn sierpinski_specialization_has_one_strict_pair() {
        let s = sierpinski();
        let order = s.specialization();
        assert!(order.is_valid_order());
        // closed sets are ∅, {p}, X; cl{q} = X so p ≤ q.
        assert!(order.leq_name(0, 1).unwrap());
        assert!(!order.leq_name(1, 0).unwrap());
        let r = validate_space(&s, SoberMode::Standard).unwrap();
        assert!(r.passed(), "{r:?}");
        // The bare base is down-directed and the space sober, so the
        // ∅-membership biconditional demands ∅ ∈ base; the enriched base
        // ∅, {q}, X is fully conformant.
        assert!(!r.db_ii.passed);
        let enriched = Space::from_masks(2, vec![0b00, 0b10, 0b11]);
        let re = validate_space(&enriched, SoberMode::Standard).unwrap();
        assert!(re.db_compliant(), "{re:?}");
    }

    #[test]
    fn discrete_specialization_is_antichain() {
        let order = discrete2().specialization();
        assert!(!order.leq_name(0, 1).unwrap());
        assert!(!order.leq_name(1, 0).unwrap());
    }

    #[test]
    fn finite_t0_spaces_are_sober_in_standard_mode() {
        for s in [discrete2(), sierpinski(), Space::from_masks(3, vec![0b001, 0b010, 0b100])] {
            assert!(is_sober(&s, SoberMode::Standard).unwrap());
            assert!(is_almost_sober(&s, SoberMode::Standard).unwrap());
        }
    }

    #[test]
    fn strict_literal_sobriety_distinguishes() {
        // Discrete 2-point: proper nonempty closed sets are the two point
        // closures — strictly almost sober; but X itself has no generic
        // point, so strict *sobriety* fails.
        let s = discrete2();
        assert!(is_almost_sober(&s, SoberMode::StrictLiteral).unwrap());
        assert!(!is_sober(&s, SoberMode::StrictLiteral).unwrap());
        // Discrete 3-point: {p,q} is closed, proper, and not a point
        // closure.
        let t = Space::from_masks(3, vec![0b001, 0b010, 0b100]);
        assert!(!is_almost_sober(&t, SoberMode::StrictLiteral).unwrap());
        // Sierpiński: the only proper nonempty closed set is {p} = cl{p},
        // and X = cl{q} — strictly sober.
        assert!(is_sober(&sierpinski(), SoberMode::StrictLiteral).unwrap());
    }

    #[test]
    fn classify_discrete_two_point() {
        let c = classify(&discrete2(), SoberMode::Standard).unwrap();
        assert!(!c.has_empty_in_base && !c.has_whole_in_base);
        assert!(!c.down_directed && !c.up_directed);
        assert!(!c.zero_base && !c.one_base);
        // {p} ∩ {q} = ∅ ∉ base: multiplicative fails outright but holds
        // under the nonempty carve-out.
        assert!(!c.multiplicative && c.multiplicative_nonempty);
        assert!(!c.additive && !c.additive_nonempty);
        assert_eq!(c.cells, vec!["AS".to_string()]);
    }

    #[test]
    fn classify_full_power_base() {
        // Base = all four subsets of a 2-point discrete space.
        let s = Space::from_masks(2, vec![0b00, 0b01, 0b10, 0b11]);
        let c = classify(&s, SoberMode::Standard).unwrap();
        assert!(c.zero_base && c.one_base);
        assert!(c.multiplicative && c.additive);
        assert_eq!(
            c.cells,
            vec![
                "AS", "AS_s", "AS_c", "S", "ASp", "ASp_s", "ASp_c", "Sp", "AsSpec", "AsSpec_s",
                "AsSpec_c", "sSpec", "ASpec", "ASpec_s", "ASpec_c", "Spec"
            ]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
        );
        let r = validate_space(&s, SoberMode::Standard).unwrap();
        assert!(r.db_compliant());
    }

    #[test]
    fn singleton_with_whole_base_is_one_base() {
        let c = classify(&Space::from_masks(1, vec![0b1]), SoberMode::Standard).unwrap();
        assert!(c.one_base);
        assert!(c.has_whole_in_base);
    }

    #[test]
    fn inc_from_space_examples() {
        // β(0) = {p}, β(1) = {p,q}
        let s = Space::from_masks(2, vec![0b01, 0b11]);
        let inc = inc_from_space(&s, 3);
        // k = 1 encodes D = {0}, k = 2 encodes D = {1}, k = 3 encodes {0,1}.
        assert!(inc.contains(0, 1)); // {p} ⊆ {p}
        assert!(inc.contains(0, 2)); // {p} ⊆ {p,q}
        assert!(!inc.contains(1, 1)); // {p,q} ⊄ {p}
        assert!(inc.contains(1, 2));
        assert!(inc.contains(1, 3));
        assert!(inc.skipped.is_empty());
        // Codes mentioning base index 2 are skipped and reported.
        let wide = inc_from_space(&s, 5);
        assert_eq!(wide.skipped, vec![4, 5]);
    }

    #[test]
    fn inc_is_monotone_in_premise_sets() {
        let s = Space::from_masks(3, vec![0b001, 0b011, 0b111]);
        let maxk = 7;
        let inc = inc_from_space(&s, maxk);
        for &(i, k) in &inc.entries {
            for k2 in 1..=maxk {
                if k & !k2 == 0 && !inc.contains(i, k2) {
                    panic!("({i},{k}) ∈ Inc but ({i},{k2}) ∉ Inc");
                }
            }
        }
    }

    #[test]
    fn check_spectral_identity_and_swap() {
        let s = discrete2();
        let id = ElementMap::identity([0, 1]);
        assert!(check_spectral(&id, &s, &s).unwrap().passed);
        let swap = ElementMap::new(vec![(0, 1), (1, 0)]).unwrap();
        assert!(check_spectral(&swap, &s, &s).unwrap().passed);
        // Constant map onto the Sierpiński closed point: preimage of {q}
        // is ∅ ∉ base of the discrete space... and of {p,q} is X ∉ base.
        let c = ElementMap::new(vec![(0, 0), (1, 0)]).unwrap();
        let to_sier = check_spectral(&c, &s, &sierpinski()).unwrap();
        assert!(!to_sier.passed);
    }

    #[test]
    fn closure_and_opens_are_consistent() {
        for s in [discrete2(), sierpinski(), Space::from_masks(3, vec![0b011, 0b110, 0b010])] {
            let opens = s.opens().unwrap();
            let full = s.full();
            for m in mask::all_subsets(s.n_points()) {
                // closure = smallest closed superset, computed naively
                let naive = opens
                    .iter()
                    .map(|&o| full & !o)
                    .filter(|&c| mask::is_subset(m, c))
                    .fold(full, |acc, c| acc & c);
                assert_eq!(s.closure_of(m), naive, "m = {m:b}");
            }
        }
    }

    #[test]
    fn beta_indirection_and_injectivization_flag() {
        let s = Space::new(
            vec![10, 20],
            vec![vec![10], vec![10, 20]],
            Some(vec![0, 0, 1]),
        )
        .unwrap();
        assert_eq!(s.n_base(), 3);
        assert!(!s.beta_is_injective());
        assert_eq!(s.base_family(), vec![0b01, 0b11]);
        assert_eq!(s.beta_set(1), 0b01);
    }

    #[test]
    fn bad_inputs_are_refused() {
        assert!(matches!(
            Space::new(vec![0, 0], vec![], None),
            Err(Error::DuplicateName(0))
        ));
        assert!(matches!(
            Space::new(vec![0], vec![vec![7]], None),
            Err(Error::UnknownPoint(7))
        ));
        assert!(matches!(
            Space::new(vec![0], vec![vec![0]], Some(vec![1])),
            Err(Error::BadBaseIndex(1))
        ));
    }
}
