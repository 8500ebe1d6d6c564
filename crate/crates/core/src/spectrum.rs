//! The spectrum of a c-poset and the laws connecting its base to the
//! source order.
//!
//! Points of the spectrum are the prime ideals; the base is indexed by
//! carrier elements, `β(a) = V_a = {I prime : a ∉ I}`.  Primes are kept
//! in ascending bitmask order and each spectrum point is *named* by its
//! prime's bitmask, so all indices are reproducible across runs.  Only
//! distributive sources are accepted: whether `{V_a}` is a basis (rather
//! than a subbasis) is not settled beyond that case, so anything else is
//! refused with the failing triple.
//!
//! The module also hosts the two symbolic translations between an
//! enumeration-operator code and the extensional inclusion predicate of
//! the spectral base; composing them is the identity on extensional
//! predicates, which the round-trip tests pin down.

use crate::encoding::{pair, unpair, EnumOperator};
use crate::error::{Error, Result};
use crate::limits;
use crate::mask::{self, Mask};
use crate::order::{enumerate_primes, Check, CPoset, IdealLattice};
use crate::topology::{structure_checks, IncPredicate, SoberMode, Space};
use serde::Serialize;

/// A constructed spectrum: the space, the source carrier, and the prime
/// ideals backing each point (ascending; point `i` is named by
/// `primes[i]`).
#[derive(Debug, Clone)]
pub struct SpectrumSpace {
    space: Space,
    source_carrier: Vec<u64>,
    primes: Vec<Mask>,
}

impl SpectrumSpace {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn into_space(self) -> Space {
        self.space
    }

    pub fn source_carrier(&self) -> &[u64] {
        &self.source_carrier
    }

    pub fn primes(&self) -> &[Mask] {
        &self.primes
    }

    pub fn n_points(&self) -> usize {
        self.primes.len()
    }

    /// `V_a` as a mask over prime indices, for carrier position `a`.
    pub fn v_a(&self, a: usize) -> Mask {
        self.space.beta_set(a)
    }

    /// `V_X` for a carrier-subset mask.
    pub fn v_of(&self, x: Mask) -> Mask {
        v_over_primes(&self.primes, x)
    }

    pub fn report(&self, mode: SoberMode) -> Result<crate::topology::SpaceReport> {
        crate::topology::validate_space(&self.space, mode)
    }
}

/// `V_X = {I : X ⊄ I}` over an ascending prime list.
fn v_over_primes(primes: &[Mask], x: Mask) -> Mask {
    let mut out = 0;
    for (i, &p) in primes.iter().enumerate() {
        if x & !p != 0 {
            out |= mask::bit(i);
        }
    }
    out
}

/// Builds the spectrum of a distributive c-poset.  The structural basis
/// conditions (T0, covering, intersection-stability) are theorems here,
/// so they are verified on every construction and a failure is raised as
/// an internal fault rather than returned as a report.
pub fn spectrum(p: &CPoset) -> Result<SpectrumSpace> {
    let lattice = IdealLattice::from_cposet(p)?;
    if let Some((x, y, z)) = lattice.distributivity_witness(p) {
        return Err(Error::NotDistributive(format!(
            "ideal triple x = {}, y = {}, z = {} fails x ∩ (y ∨ z) = (x ∩ y) ∨ (x ∩ z)",
            p.format_mask(x),
            p.format_mask(y),
            p.format_mask(z)
        )));
    }
    let primes = enumerate_primes(p)?;
    if primes.len() > limits::HARD_CEILING {
        return Err(Error::SizeLimit { size: primes.len(), limit: limits::HARD_CEILING });
    }
    let pool: Vec<Mask> = (0..p.n())
        .map(|a| {
            let mut v = 0;
            for (i, &pr) in primes.iter().enumerate() {
                if !mask::contains(pr, a) {
                    v |= mask::bit(i);
                }
            }
            v
        })
        .collect();
    for i in 0..pool.len() {
        for j in (i + 1)..pool.len() {
            if pool[i] == pool[j] {
                return Err(Error::InternalFault {
                    law: "injectivity of the spectral base on distributive sources",
                    detail: format!(
                        "V_{} = V_{} although the elements differ",
                        p.names()[i],
                        p.names()[j]
                    ),
                });
            }
        }
    }
    let space = Space::from_named_masks(primes.clone(), pool)?;
    let structure = structure_checks(&space);
    if !structure.passed() {
        let witness = [
            &structure.t0,
            &structure.covering,
            &structure.intersection_basis,
        ]
        .iter()
        .find_map(|c| c.witness.clone())
        .unwrap_or_default();
        return Err(Error::InternalFault {
            law: "basis-hood of the spectral base on distributive sources",
            detail: witness,
        });
    }
    Ok(SpectrumSpace { space, source_carrier: p.names().to_vec(), primes })
}

/// `V_X` over the spectrum of `p`, as a mask over ascending prime
/// indices.  `x` is a carrier-subset mask.
pub fn v_of_set(p: &CPoset, x: Mask) -> Result<Mask> {
    let primes = enumerate_primes(p)?;
    Ok(v_over_primes(&primes, x))
}

/// The exhaustive verification record for the base laws of a spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LphiReport {
    /// `V_X = V_{φ(X)}` for every subset.
    pub item_i: Check,
    /// `V_a ⊆ V_X ⟺ a ∈ φ(X)` for every *nonempty* X.  The law rests on
    /// prime separation, which needs a nonempty ideal; at X = ∅ it
    /// degenerates (V_∅ = ∅, and an element lying in every prime has an
    /// empty cone), so that case is excluded.
    pub item_ii: Check,
    /// `V_a ⊆ V_b ⟺ a ≤ b`.
    pub item_iii: Check,
    /// `V_a ∩ V_b = V_c ⟺ a ∧ b = c`.
    pub item_iv: Check,
    /// `V_a ∪ V_b = V_c ⟺ a ∨ b = c`, for pairs whose join exists and
    /// lands in `φ({a,b})`; other pairs are skipped and counted.
    pub item_v: Check,
    pub v_pairs_checked: usize,
    pub v_pairs_skipped: usize,
}

impl LphiReport {
    pub fn passed(&self) -> bool {
        self.item_i.passed
            && self.item_ii.passed
            && self.item_iii.passed
            && self.item_iv.passed
            && self.item_v.passed
    }
}

pub fn check_lphi(p: &CPoset) -> Result<LphiReport> {
    limits::check_exhaustive(p.n())?;
    let primes = enumerate_primes(p)?;
    if primes.len() > limits::HARD_CEILING {
        return Err(Error::SizeLimit { size: primes.len(), limit: limits::HARD_CEILING });
    }
    let n = p.n();
    let v: Vec<Mask> = (0..n)
        .map(|a| v_over_primes(&primes, mask::bit(a)))
        .collect();

    let mut item_i = None;
    let mut item_ii = None;
    for x in mask::all_subsets(n) {
        let vx = v_over_primes(&primes, x);
        let phi = p.closure_mask(x);
        if item_i.is_none() && vx != v_over_primes(&primes, phi) {
            item_i = Some(format!("V_X ≠ V_φ(X) at X = {}", p.format_mask(x)));
        }
        if item_ii.is_none() && x != 0 {
            for a in 0..n {
                if mask::is_subset(v[a], vx) != mask::contains(phi, a) {
                    item_ii = Some(format!(
                        "a = {}, X = {}: V_a ⊆ V_X is {} but a ∈ φ(X) is {}",
                        p.names()[a],
                        p.format_mask(x),
                        mask::is_subset(v[a], vx),
                        mask::contains(phi, a)
                    ));
                    break;
                }
            }
        }
    }

    let mut item_iii = None;
    'iii: for a in 0..n {
        for b in 0..n {
            if mask::is_subset(v[a], v[b]) != p.poset().leq_idx(a, b) {
                item_iii = Some(format!(
                    "a = {}, b = {}: V_a ⊆ V_b is {} but a ≤ b is {}",
                    p.names()[a],
                    p.names()[b],
                    mask::is_subset(v[a], v[b]),
                    p.poset().leq_idx(a, b)
                ));
                break 'iii;
            }
        }
    }

    let mut item_iv = None;
    'iv: for a in 0..n {
        for b in 0..n {
            let m = crate::order::meet(p, a, b);
            for c in 0..n {
                if (v[a] & v[b] == v[c]) != (m == Some(c)) {
                    item_iv = Some(format!(
                        "a = {}, b = {}, c = {}: V_a ∩ V_b = V_c is {} but a ∧ b = c is {}",
                        p.names()[a],
                        p.names()[b],
                        p.names()[c],
                        v[a] & v[b] == v[c],
                        m == Some(c)
                    ));
                    break 'iv;
                }
            }
        }
    }

    let mut item_v = None;
    let mut v_pairs_checked = 0;
    let mut v_pairs_skipped = 0;
    'v: for a in 0..n {
        for b in 0..n {
            let hypothesis = crate::order::join(p, a, b)
                .filter(|&j| mask::contains(p.closure_mask(mask::bit(a) | mask::bit(b)), j));
            let Some(j) = hypothesis else {
                v_pairs_skipped += 1;
                continue;
            };
            v_pairs_checked += 1;
            for c in 0..n {
                if (v[a] | v[b] == v[c]) != (j == c) {
                    item_v = Some(format!(
                        "a = {}, b = {}, c = {}: V_a ∪ V_b = V_c is {} but a ∨ b = c is {}",
                        p.names()[a],
                        p.names()[b],
                        p.names()[c],
                        v[a] | v[b] == v[c],
                        j == c
                    ));
                    break 'v;
                }
            }
        }
    }

    Ok(LphiReport {
        item_i: Check::from_witness(item_i),
        item_ii: Check::from_witness(item_ii),
        item_iii: Check::from_witness(item_iii),
        item_iv: Check::from_witness(item_iv),
        item_v: Check::from_witness(item_v),
        v_pairs_checked,
        v_pairs_skipped,
    })
}

// ---------------------------------------------------------------------------
// Symbolic Inc ↔ operator translations
// ---------------------------------------------------------------------------

/// Computes the inclusion predicate symbolically from an operator code,
/// without building the spectrum: `(i,k) ∈ Inc` iff some code `⟨i,k′⟩`
/// has `∅ ≠ D_{k′} ⊆ D_k`.  Set codes mentioning base indices out of
/// range are skipped and reported, mirroring the extensional computation.
pub fn inc_from_operator(c: &EnumOperator, n_base: usize, maxk: u64) -> IncPredicate {
    let rules: Vec<(u64, u64)> = c
        .codes()
        .iter()
        .map(|&code| unpair(code))
        .filter(|&(x, kp)| kp != 0 && (x as usize) < n_base)
        .collect();
    let in_range: u64 = if n_base >= 64 { u64::MAX } else { (1u64 << n_base) - 1 };
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for k in 1..=maxk {
        if k & !in_range != 0 {
            skipped.push(k);
            continue;
        }
        for i in 0..n_base as u64 {
            if rules
                .iter()
                .any(|&(x, kp)| x == i && kp & !k == 0)
            {
                entries.push((i, k));
            }
        }
    }
    entries.sort_unstable();
    IncPredicate { entries, skipped }
}

/// The operator whose codes are exactly the pair codes of the Inc
/// entries; applying it realizes the base-closure on nonempty index sets
/// and sends `∅` to `∅`.
pub fn operator_from_inc(inc: &IncPredicate) -> Result<EnumOperator> {
    let mut codes = Vec::with_capacity(inc.entries.len());
    for &(i, k) in &inc.entries {
        codes.push(pair(i, k)?);
    }
    Ok(EnumOperator::from_codes(codes))
}
