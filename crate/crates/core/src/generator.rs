//! Exhaustive and randomized instance generation.
//!
//! C-posets over a labeled carrier `{0, …, n-1}` are in bijection with
//! their families of ideals: an intersection-closed family of subsets
//! containing `∅` and the carrier, whose point closures are pairwise
//! distinct (that is antisymmetry of the induced order).  Exhaustive
//! generation therefore walks these families directly — for `n ≤ 5` a
//! family is a 32-bit bitmap indexed by subset mask — and re-emits each
//! survivor as a [`CPoset`] with the full operator code
//! `{⟨x, k⟩ : D_k ≠ ∅, x ∈ φ(D_k)}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encoding::{pair, EnumOperator};
use crate::error::{Error, Result};
use crate::mask::{self, Mask};
use crate::order::{CPoset, Poset};
use crate::topology::{validate_space, SoberMode, Space, SpaceReport};

/// Largest carrier for exhaustive c-poset generation.
pub const MAX_EXHAUSTIVE_CPOSET: usize = 5;
/// Largest carrier for exhaustive poset generation.
pub const MAX_EXHAUSTIVE_POSET: usize = 6;
/// Largest carrier for randomized c-poset generation.
pub const MAX_RANDOM_CPOSET: usize = 8;
/// Largest point count for exhaustive space generation.
pub const MAX_EXHAUSTIVE_SPACE_POINTS: usize = 5;
/// Largest base-family size for exhaustive space generation.
pub const MAX_EXHAUSTIVE_SPACE_BASE: usize = 6;

/// A materialized generation run: deterministic for fixed parameters
/// (and seed), one digest per instance.
#[derive(Debug, Clone)]
pub struct InstanceStream<T> {
    pub kind: &'static str,
    pub bounds: Vec<usize>,
    pub seed: Option<u64>,
    pub items: Vec<T>,
    /// Parallel to `items`: canonical-form digest for exhaustive
    /// streams (minimal relation encoding over carrier permutations),
    /// plain content digest for randomized ones.
    pub digests: Vec<u64>,
}

// ---------------------------------------------------------------------------
// Ideal families (intersection-closed set families)
// ---------------------------------------------------------------------------

/// A family of subsets of `{0, …, n-1}` for `n ≤ 5`, as a bitmap whose bit
/// `s` says the subset with mask `s` belongs to the family.
pub type Family = u32;

/// Visits every intersection-closed family over `{0, …, n-1}` that
/// contains both `∅` and the whole carrier, exactly once each.
///
/// Subsets are decided in descending mask order; including `s` closes the
/// family in a single pass because any new intersection `s ∩ t` has a
/// strictly smaller mask and intersections among added sets reduce to
/// `s ∩ (t ∩ t′)` with `t ∩ t′` already present.
pub fn for_each_ideal_family(n: usize, visit: &mut impl FnMut(Family)) -> Result<()> {
    if n > MAX_EXHAUSTIVE_CPOSET {
        return Err(Error::SizeLimit { size: n, limit: MAX_EXHAUSTIVE_CPOSET });
    }
    let full = mask::full(n) as u32;
    let seed: Family = (1 << 0) | (1u32 << full);
    descend(full.wrapping_sub(1) as i32, seed, visit);
    Ok(())
}

fn descend(s: i32, fam: Family, visit: &mut impl FnMut(Family)) {
    if s <= 0 {
        visit(fam);
        return;
    }
    let su = s as u32;
    if fam & (1 << su) != 0 {
        descend(s - 1, fam, visit);
        return;
    }
    descend(s - 1, fam, visit);
    let mut grown = fam | (1 << su);
    let mut rest = fam;
    while rest != 0 {
        let member = rest.trailing_zeros();
        grown |= 1 << (su & member);
        rest &= rest - 1;
    }
    descend(s - 1, grown, visit);
}

/// Point closures of a family: `closure[x]` is the smallest member
/// containing `x`.
pub fn point_closures(n: usize, fam: Family) -> [u32; 5] {
    let mut cl = [u32::MAX; 5];
    let mut rest = fam;
    while rest != 0 {
        let member = rest.trailing_zeros();
        for x in 0..n {
            if member & (1 << x) != 0 {
                cl[x] &= member;
            }
        }
        rest &= rest - 1;
    }
    cl
}

/// Antisymmetry of the induced order: point closures pairwise distinct.
pub fn family_is_antisymmetric(n: usize, fam: Family) -> bool {
    let cl = point_closures(n, fam);
    for x in 0..n {
        for y in (x + 1)..n {
            if cl[x] == cl[y] {
                return false;
            }
        }
    }
    true
}

/// Distributivity of the family as a lattice (meet `∩`, join = least
/// member above the union).  A union-closed family is a ring of sets and
/// hence distributive; otherwise the triple law is checked outright.
pub fn family_is_distributive(n: usize, fam: Family) -> bool {
    let full = mask::full(n) as u32;
    // Union-closed shortcut.
    let mut a_rest = fam;
    let mut union_closed = true;
    'outer: while a_rest != 0 {
        let a = a_rest.trailing_zeros();
        let mut b_rest = a_rest;
        while b_rest != 0 {
            let b = b_rest.trailing_zeros();
            if fam & (1u32 << (a | b)) == 0 {
                union_closed = false;
                break 'outer;
            }
            b_rest &= b_rest - 1;
        }
        a_rest &= a_rest - 1;
    }
    if union_closed {
        return true;
    }

    let members: Vec<u32> = (0..=full).filter(|&s| fam & (1 << s) != 0).collect();
    let join = |a: u32, b: u32| -> u32 {
        let u = a | b;
        let mut c = full;
        for &m in &members {
            if u & !m == 0 {
                c &= m;
            }
        }
        c
    };
    for (i, &y) in members.iter().enumerate() {
        for &z in &members[i..] {
            let yz = join(y, z);
            for &x in &members {
                if x & yz != join(x & y, x & z) {
                    return false;
                }
            }
        }
    }
    true
}

/// Rebuilds the c-poset a family denotes: order `x ≤ y ⟺ cl(x) ⊆ cl(y)`,
/// operator `{⟨x, k⟩ : D_k ≠ ∅, x ∈ φ(D_k)}` (so a single application of
/// the code computes the closure of any subset).
pub fn cposet_of_family(n: usize, fam: Family) -> Result<CPoset> {
    let full = mask::full(n) as u32;
    let cl = point_closures(n, fam);
    let names: Vec<u64> = (0..n as u64).collect();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if cl[x] & !cl[y] == 0 {
                pairs.push((x as u64, y as u64));
            }
        }
    }
    let poset = Poset::new(names, &pairs)?;
    let mut codes = Vec::new();
    for d in 1..=(full as u64) {
        let mut closure = full;
        let mut rest = fam;
        while rest != 0 {
            let member = rest.trailing_zeros();
            if d as u32 & !member == 0 {
                closure &= member;
            }
            rest &= rest - 1;
        }
        for x in mask::elems(closure as Mask) {
            // The set code of {i₀, i₁, …} over carrier names 0…n−1 is the
            // subset mask itself.
            codes.push(pair(x as u64, d)?);
        }
    }
    CPoset::new(poset, EnumOperator::from_codes(codes))
}

/// All distributive c-posets over the labeled carrier `{0, …, n-1}`,
/// presented as ideal-family bitmaps in ascending order.
pub fn distributive_families(n: usize) -> Result<Vec<Family>> {
    let mut out = Vec::new();
    for_each_ideal_family(n, &mut |fam| {
        if family_is_antisymmetric(n, fam) && family_is_distributive(n, fam) {
            out.push(fam);
        }
    })?;
    out.sort_unstable();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Labeled posets
// ---------------------------------------------------------------------------

/// Visits the row-mask matrix (`up[i]` = mask of all `j` with `i ≤ j`)
/// of every labeled poset on `{0, …, n-1}`, each exactly once, in a
/// deterministic order.
///
/// Element `k` is adjoined to each poset on `{0, …, k-1}` by choosing
/// the set `D` of elements below it (a downset) and the set `U` of
/// elements above it (an upset disjoint from `D` with `D ≤ U`
/// pointwise, so transitivity through `k` is free).
pub fn for_each_poset(n: usize, visit: &mut impl FnMut(&[u64])) -> Result<()> {
    if n > MAX_EXHAUSTIVE_POSET {
        return Err(Error::SizeLimit { size: n, limit: MAX_EXHAUSTIVE_POSET });
    }
    let mut up = Vec::with_capacity(n);
    extend_poset(n, &mut up, visit);
    Ok(())
}

fn extend_poset(n: usize, up: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
    let k = up.len();
    if k == n {
        visit(up);
        return;
    }
    let mut dn = [0u64; MAX_EXHAUSTIVE_POSET];
    for (j, &row) in up.iter().enumerate() {
        for i in mask::elems(row) {
            dn[i] |= mask::bit(j);
        }
    }
    for d in mask::all_subsets(k) {
        if mask::elems(d).any(|i| dn[i] & !d != 0) {
            continue;
        }
        let mut ceiling = mask::full(k) & !d;
        for a in mask::elems(d) {
            ceiling &= up[a];
        }
        // Descending sub-mask walk over candidate upsets, ∅ included.
        let mut u = ceiling;
        loop {
            if mask::elems(u).all(|b| up[b] & !u == 0) {
                for a in mask::elems(d) {
                    up[a] |= mask::bit(k);
                }
                up.push(mask::bit(k) | u);
                extend_poset(n, up, visit);
                up.pop();
                for a in mask::elems(d) {
                    up[a] &= !mask::bit(k);
                }
            }
            if u == 0 {
                break;
            }
            u = (u - 1) & ceiling;
        }
    }
}

fn poset_from_rows(n: usize, up: &[u64]) -> Poset {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in mask::elems(up[i]) {
            leq[i * n + j] = true;
        }
    }
    Poset::from_matrix(n, leq)
}

fn for_each_permutation(k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(perm: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize])) {
        if at == perm.len() {
            f(perm);
            return;
        }
        for swap in at..perm.len() {
            perm.swap(at, swap);
            rec(perm, at + 1, f);
            perm.swap(at, swap);
        }
    }
    rec(&mut (0..k).collect(), 0, f);
}

/// Canonical form of a labeled poset: the lexicographically minimal
/// row-major relation matrix over all carrier permutations, packed
/// with the first cell as the most significant bit.
pub fn canonical_poset_digest(n: usize, up: &[u64]) -> u64 {
    debug_assert!(n * n <= 64);
    if n == 0 {
        return 0;
    }
    let mut best = u64::MAX;
    for_each_permutation(n, &mut |p| {
        let mut bits = 0u64;
        for i in 0..n {
            for j in mask::elems(up[i]) {
                bits |= 1 << (n * n - 1 - (p[i] * n + p[j]));
            }
        }
        best = best.min(bits);
    });
    best
}

/// All labeled posets on `{0, …, n-1}`, with canonical digests.
pub fn gen_posets(n: usize) -> Result<InstanceStream<Poset>> {
    let mut items = Vec::new();
    let mut digests = Vec::new();
    for_each_poset(n, &mut |up| {
        items.push(poset_from_rows(n, up));
        digests.push(canonical_poset_digest(n, up));
    })?;
    Ok(InstanceStream { kind: "poset", bounds: vec![n], seed: None, items, digests })
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv_word(mut h: u64, x: u64) -> u64 {
    for b in x.to_le_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

fn content_digest(words: impl IntoIterator<Item = u64>) -> u64 {
    words.into_iter().fold(FNV_OFFSET, fnv_word)
}

/// `count` random posets on `{0, …, n-1}`: random bits above a shuffled
/// carrier, transitively closed.  Deterministic for a fixed seed.
pub fn gen_random_posets(n: usize, count: usize, seed: u64) -> Result<InstanceStream<Poset>> {
    crate::limits::check_exhaustive(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::with_capacity(count);
    let mut digests = Vec::with_capacity(count);
    for _ in 0..count {
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut up: Vec<u64> = (0..n).map(mask::bit).collect();
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen_bool(0.5) {
                    up[order[a]] |= mask::bit(order[b]);
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if up[i] & mask::bit(k) != 0 {
                    up[i] |= up[k];
                }
            }
        }
        digests.push(content_digest(up.iter().copied()));
        items.push(poset_from_rows(n, &up));
    }
    Ok(InstanceStream { kind: "poset", bounds: vec![n], seed: Some(seed), items, digests })
}

// ---------------------------------------------------------------------------
// Distributive c-posets
// ---------------------------------------------------------------------------

/// Canonical form of an ideal-family bitmap: the minimal bitmap over
/// all carrier permutations (the family determines the c-poset, so
/// this is a full isomorphism invariant).
pub fn canonical_family_digest(n: usize, fam: Family) -> u64 {
    let mut best = u64::MAX;
    for_each_permutation(n, &mut |p| {
        let mut permuted: u64 = 0;
        let mut rest = fam;
        while rest != 0 {
            let s = rest.trailing_zeros() as u64;
            let image = mask::elems(s).fold(0u64, |acc, x| acc | mask::bit(p[x]));
            permuted |= 1 << image;
            rest &= rest - 1;
        }
        best = best.min(permuted);
    });
    best
}

/// All distributive c-posets over the labeled carrier `{0, …, n-1}`.
pub fn gen_distributive_cposets(n: usize) -> Result<InstanceStream<CPoset>> {
    let fams = distributive_families(n)?;
    let mut items = Vec::with_capacity(fams.len());
    let mut digests = Vec::with_capacity(fams.len());
    for fam in fams {
        items.push(cposet_of_family(n, fam)?);
        digests.push(canonical_family_digest(n, fam));
    }
    Ok(InstanceStream { kind: "cposet", bounds: vec![n], seed: None, items, digests })
}

fn close_under_intersection(members: &mut Vec<Mask>) {
    members.sort_unstable();
    members.dedup();
    loop {
        let mut added = false;
        let snapshot = members.clone();
        for (i, &a) in snapshot.iter().enumerate() {
            for &b in &snapshot[i + 1..] {
                let c = a & b;
                if !members.contains(&c) {
                    members.push(c);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
        members.sort_unstable();
    }
    members.sort_unstable();
}

fn member_point_closures(n: usize, members: &[Mask]) -> Vec<Mask> {
    (0..n)
        .map(|x| {
            members
                .iter()
                .filter(|&&m| mask::contains(m, x))
                .fold(mask::full(n), |acc, &m| acc & m)
        })
        .collect()
}

fn members_antisymmetric(n: usize, members: &[Mask]) -> bool {
    let cl = member_point_closures(n, members);
    for x in 0..n {
        for y in (x + 1)..n {
            if cl[x] == cl[y] {
                return false;
            }
        }
    }
    true
}

fn members_distributive(n: usize, members: &[Mask]) -> bool {
    // A union-closed family is a sublattice of the powerset.
    let union_closed = members.iter().enumerate().all(|(i, &a)| {
        members[i..]
            .iter()
            .all(|&b| members.binary_search(&(a | b)).is_ok())
    });
    if union_closed {
        return true;
    }
    let full = mask::full(n);
    let join = |a: Mask, b: Mask| -> Mask {
        let u = a | b;
        members
            .iter()
            .filter(|&&m| u & !m == 0)
            .fold(full, |acc, &m| acc & m)
    };
    for (i, &y) in members.iter().enumerate() {
        for &z in &members[i..] {
            let yz = join(y, z);
            for &x in members {
                if x & yz != join(x & y, x & z) {
                    return false;
                }
            }
        }
    }
    true
}

/// Rebuilds the c-poset an explicit member list denotes; the general-
/// carrier sibling of [`cposet_of_family`] for `n ≤ 8`.
fn cposet_of_members(n: usize, members: &[Mask]) -> Result<CPoset> {
    let full = mask::full(n);
    let cl = member_point_closures(n, members);
    let names: Vec<u64> = (0..n as u64).collect();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if cl[x] & !cl[y] == 0 {
                pairs.push((x as u64, y as u64));
            }
        }
    }
    let poset = Poset::new(names, &pairs)?;
    let mut codes = Vec::new();
    for d in 1..=full {
        let closure = members
            .iter()
            .filter(|&&m| d & !m == 0)
            .fold(full, |acc, &m| acc & m);
        for x in mask::elems(closure) {
            codes.push(pair(x as u64, d)?);
        }
    }
    CPoset::new(poset, EnumOperator::from_codes(codes))
}

/// `count` random distributive c-posets with carriers between 2 and
/// `max_n ≤ 8`: ideal families are intersection closures of a few
/// random generators, rejected until antisymmetric and distributive
/// (with a downset-family fallback guaranteeing progress).
pub fn gen_random_distributive_cposets(
    max_n: usize,
    count: usize,
    seed: u64,
) -> Result<InstanceStream<CPoset>> {
    if !(2..=MAX_RANDOM_CPOSET).contains(&max_n) {
        return Err(Error::SizeLimit { size: max_n, limit: MAX_RANDOM_CPOSET });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::with_capacity(count);
    let mut digests = Vec::with_capacity(count);
    let mut stale = 0u32;
    while items.len() < count {
        let n = rng.gen_range(2..=max_n);
        let full = mask::full(n);
        let members = if stale < 400 {
            let mut members = vec![0, full];
            for _ in 0..rng.gen_range(2..=5) {
                members.push(rng.gen_range(0..=full));
            }
            close_under_intersection(&mut members);
            members
        } else {
            // Downset family of a random poset: always accepted.
            let random = gen_random_posets(n, 1, rng.gen())?;
            let poset = &random.items[0];
            (0..=full)
                .filter(|&m| {
                    mask::elems(m).all(|x| {
                        (0..n).all(|y| !poset.leq_idx(y, x) || mask::contains(m, y))
                    })
                })
                .collect()
        };
        if !members_antisymmetric(n, &members) || !members_distributive(n, &members) {
            stale += 1;
            continue;
        }
        stale = 0;
        digests.push(content_digest(
            std::iter::once(n as u64).chain(members.iter().copied()),
        ));
        items.push(cposet_of_members(n, &members)?);
    }
    Ok(InstanceStream { kind: "cposet", bounds: vec![max_n], seed: Some(seed), items, digests })
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

/// Visits every structurally valid space (T0, covering, intersection
/// basis) with exactly `n_points` points and at most `max_base`
/// distinct base sets, together with its full validation report in the
/// standard mode (the D:B biconditionals are evaluated, not required).
/// Base families are enumerated as ascending combinations of subset
/// masks, so the order is deterministic.
pub fn for_each_space(
    n_points: usize,
    max_base: usize,
    visit: &mut impl FnMut(&Space, &SpaceReport),
) -> Result<()> {
    if n_points > MAX_EXHAUSTIVE_SPACE_POINTS {
        return Err(Error::SizeLimit { size: n_points, limit: MAX_EXHAUSTIVE_SPACE_POINTS });
    }
    if max_base > MAX_EXHAUSTIVE_SPACE_BASE {
        return Err(Error::SizeLimit { size: max_base, limit: MAX_EXHAUSTIVE_SPACE_BASE });
    }
    let mut chosen = Vec::with_capacity(max_base);
    space_combinations(n_points, max_base, 0, &mut chosen, visit)
}

fn space_combinations(
    n_points: usize,
    max_base: usize,
    next: Mask,
    chosen: &mut Vec<Mask>,
    visit: &mut impl FnMut(&Space, &SpaceReport),
) -> Result<()> {
    let s = Space::from_masks(n_points, chosen.clone());
    let report = validate_space(&s, SoberMode::Standard)?;
    if report.passed() {
        visit(&s, &report);
    }
    if chosen.len() == max_base {
        return Ok(());
    }
    for m in next..=mask::full(n_points) {
        chosen.push(m);
        space_combinations(n_points, max_base, m + 1, chosen, visit)?;
        chosen.pop();
    }
    Ok(())
}

/// Canonical form of a space's base family over point permutations:
/// the minimal packed ascending family.
pub fn canonical_space_digest(s: &Space) -> u64 {
    let n = s.n_points();
    let fam = s.base_family();
    let mut best = u64::MAX;
    for_each_permutation(n, &mut |p| {
        let mut permuted: Vec<Mask> = fam
            .iter()
            .map(|&m| mask::elems(m).fold(0u64, |acc, x| acc | mask::bit(p[x])))
            .collect();
        permuted.sort_unstable();
        let packed = permuted.iter().fold(0u64, |acc, &m| (acc << 5) | m)
            | ((s.n_base() as u64) << 58);
        best = best.min(packed);
    });
    best
}

/// All structurally valid spaces at the given bounds, with reports
/// discarded and canonical digests attached.
pub fn gen_spaces(n_points: usize, max_base: usize) -> Result<InstanceStream<Space>> {
    let mut items = Vec::new();
    let mut digests = Vec::new();
    for_each_space(n_points, max_base, &mut |s, _| {
        items.push(s.clone());
        digests.push(canonical_space_digest(s));
    })?;
    Ok(InstanceStream {
        kind: "space",
        bounds: vec![n_points, max_base],
        seed: None,
        items,
        digests,
    })
}
