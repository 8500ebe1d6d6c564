//! Semilattice and lattice reducts: validated operation tables, the
//! join-ideal closure ψ, the embedding of a semilattice as a c-poset,
//! and the f_∧ / f_∨ index witnesses that make a base multiplicative or
//! additive *effectively* — as total tables over base indices, found by
//! scan or transported from the algebra through its spectrum.

use serde::{Deserialize, Serialize};

use crate::encoding::{pair, set_encode, EnumOperator};
use crate::error::{Error, Result};
use crate::limits;
use crate::mask::{self, Mask};
use crate::order::{CPoset, Check, Poset};
use crate::spectrum::{spectrum, SpectrumSpace};
use crate::topology::Space;

/// Which operation a table denotes.  The induced order reads
/// `a ≤ b ⟺ a∧b = a` for meet tables and `a ≤ b ⟺ a∨b = b` for join
/// tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Meet,
    Join,
}

/// A semilattice as a validated operation table over a named carrier.
/// The table is stored at index level against the strictly ascending
/// carrier; idempotence, commutativity, and associativity are checked
/// at construction, so every value of this type is a genuine
/// semilattice.
#[derive(Debug, Clone)]
pub struct Semilattice {
    names: Vec<u64>,
    kind: LatticeKind,
    table: Vec<usize>,
}

impl Semilattice {
    /// `rows[i][j]` must name the result of applying the operation to
    /// the `i`-th and `j`-th carrier elements; the carrier must be
    /// strictly ascending so the positional table is unambiguous.
    pub fn new(names: Vec<u64>, kind: LatticeKind, rows: &[Vec<u64>]) -> Result<Self> {
        for w in names.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::Parse(
                    "semilattice carrier must be strictly ascending".to_string(),
                ));
            }
        }
        let n = names.len();
        if rows.len() != n {
            return Err(Error::BadTable(format!(
                "{} table rows for {} carrier elements",
                rows.len(),
                n
            )));
        }
        let mut table = vec![0usize; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadTable(format!(
                    "row {} has {} entries for {} carrier elements",
                    i,
                    row.len(),
                    n
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                let t = names.binary_search(&v).map_err(|_| {
                    Error::BadTable(format!("table value {v} is not a carrier element"))
                })?;
                table[i * n + j] = t;
            }
        }
        let s = Semilattice { names, kind, table };
        s.validate_axioms()?;
        Ok(s)
    }

    fn validate_axioms(&self) -> Result<()> {
        let n = self.n();
        let name = |i: usize| self.names[i];
        for i in 0..n {
            if self.op_idx(i, i) != i {
                return Err(Error::BadTable(format!(
                    "not idempotent: op({0}, {0}) = {1}",
                    name(i),
                    name(self.op_idx(i, i))
                )));
            }
            for j in 0..n {
                if self.op_idx(i, j) != self.op_idx(j, i) {
                    return Err(Error::BadTable(format!(
                        "not commutative at ({}, {})",
                        name(i),
                        name(j)
                    )));
                }
                for k in 0..n {
                    if self.op_idx(self.op_idx(i, j), k) != self.op_idx(i, self.op_idx(j, k)) {
                        return Err(Error::BadTable(format!(
                            "not associative at ({}, {}, {})",
                            name(i),
                            name(j),
                            name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[u64] {
        &self.names
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    /// The operation at index level.
    pub fn op_idx(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n() + j]
    }

    /// The order induced by the table.
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        match self.kind {
            LatticeKind::Meet => self.op_idx(i, j) == i,
            LatticeKind::Join => self.op_idx(i, j) == j,
        }
    }

    /// The induced order as a poset; always well formed because the
    /// axioms were validated.
    pub fn poset(&self) -> Result<Poset> {
        let mut pairs = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.leq_idx(i, j) {
                    pairs.push((self.names[i], self.names[j]));
                }
            }
        }
        Poset::new(self.names.clone(), &pairs)
    }

    /// Cross-checks a separately supplied order against the induced one.
    pub fn check_order(&self, supplied: &Poset) -> Check {
        if supplied.names() != self.names() {
            return Check::fail("carriers differ".to_string());
        }
        for i in 0..self.n() {
            for j in 0..self.n() {
                if supplied.leq_idx(i, j) != self.leq_idx(i, j) {
                    return Check::fail(format!(
                        "supplied order and table-induced order disagree at ({}, {})",
                        self.names[i], self.names[j]
                    ));
                }
            }
        }
        Check::pass()
    }
}

/// A lattice as a pair of validated tables over one carrier, with the
/// absorption laws (and hence agreement of the two induced orders)
/// checked at construction.
#[derive(Debug, Clone)]
pub struct Lattice {
    join: Semilattice,
    meet: Semilattice,
}

impl Lattice {
    pub fn new(names: Vec<u64>, join_rows: &[Vec<u64>], meet_rows: &[Vec<u64>]) -> Result<Self> {
        let join = Semilattice::new(names.clone(), LatticeKind::Join, join_rows)?;
        let meet = Semilattice::new(names, LatticeKind::Meet, meet_rows)?;
        let n = join.n();
        for i in 0..n {
            for j in 0..n {
                if join.op_idx(i, meet.op_idx(i, j)) != i {
                    return Err(Error::BadTable(format!(
                        "absorption a ∨ (a ∧ b) = a fails at ({}, {})",
                        join.names()[i],
                        join.names()[j]
                    )));
                }
                if meet.op_idx(i, join.op_idx(i, j)) != i {
                    return Err(Error::BadTable(format!(
                        "absorption a ∧ (a ∨ b) = a fails at ({}, {})",
                        join.names()[i],
                        join.names()[j]
                    )));
                }
                if join.leq_idx(i, j) != meet.leq_idx(i, j) {
                    return Err(Error::BadTable(format!(
                        "the two induced orders disagree at ({}, {})",
                        join.names()[i],
                        join.names()[j]
                    )));
                }
            }
        }
        Ok(Lattice { join, meet })
    }

    pub fn n(&self) -> usize {
        self.join.n()
    }

    pub fn names(&self) -> &[u64] {
        self.join.names()
    }

    pub fn join(&self) -> &Semilattice {
        &self.join
    }

    pub fn meet(&self) -> &Semilattice {
        &self.meet
    }
}

/// The join-ideal closure
/// `ψ(X) = {s | s ≤ a₀ ∨ … ∨ aₙ for some a₀,…,aₙ ∈ X}`, computed by
/// closing `X` under binary joins and then taking the downset.
pub fn join_ideal_closure(s: &Semilattice, x: Mask) -> Result<Mask> {
    if s.kind() != LatticeKind::Join {
        return Err(Error::BadTable(
            "the join-ideal closure needs a join table".to_string(),
        ));
    }
    let mut joins = x;
    loop {
        let mut next = joins;
        for i in mask::elems(joins) {
            for j in mask::elems(joins) {
                next |= mask::bit(s.op_idx(i, j));
            }
        }
        if next == joins {
            break;
        }
        joins = next;
    }
    let mut out = 0;
    for t in 0..s.n() {
        if mask::elems(joins).any(|j| s.leq_idx(t, j)) {
            out |= mask::bit(t);
        }
    }
    Ok(out)
}

/// Embeds a semilattice as a c-poset on its induced order.  A join
/// table contributes the operator `{⟨s,k⟩ | D_k ≠ ∅, s ≤ ∨D_k}`, whose
/// closure is exactly ψ; a meet table, having no joins to close under,
/// contributes the downset operator.
pub fn cposet_from_semilattice(s: &Semilattice) -> Result<CPoset> {
    let poset = s.poset()?;
    match s.kind() {
        LatticeKind::Meet => CPoset::downset_of(&poset),
        LatticeKind::Join => {
            limits::check_exhaustive(s.n())?;
            let mut codes = Vec::new();
            for d in mask::all_subsets(s.n()).skip(1) {
                let join = mask::elems(d)
                    .reduce(|i, j| s.op_idx(i, j))
                    .expect("premise is nonempty");
                let premise = set_encode(mask::elems(d).map(|i| s.names()[i]))?;
                for t in 0..s.n() {
                    if s.leq_idx(t, join) {
                        codes.push(pair(s.names()[t], premise)?);
                    }
                }
            }
            CPoset::new(poset, EnumOperator::from_codes(codes))
        }
    }
}

/// A total index table witnessing that the base is closed under binary
/// intersection (meet kind) or union (join kind):
/// `β(i) ⋄ β(j) = β(table[i][j])`.
#[derive(Debug, Clone, Serialize)]
pub struct SemilatticeWitness {
    pub kind: LatticeKind,
    pub table: Vec<Vec<usize>>,
}

/// Result of scanning a base for a witness table: either the table or
/// the first pair whose intersection/union is not a base set.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum WitnessSearch {
    Found { witness: SemilatticeWitness },
    Absent { i: usize, j: usize },
}

impl WitnessSearch {
    pub fn found(&self) -> bool {
        matches!(self, WitnessSearch::Found { .. })
    }
}

fn find_witness(s: &Space, kind: LatticeKind) -> WitnessSearch {
    let m = s.n_base();
    let mut table = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            let combined = match kind {
                LatticeKind::Meet => s.beta_set(i) & s.beta_set(j),
                LatticeKind::Join => s.beta_set(i) | s.beta_set(j),
            };
            match (0..m).find(|&t| s.beta_set(t) == combined) {
                Some(t) => table[i][j] = t,
                None => return WitnessSearch::Absent { i, j },
            }
        }
    }
    WitnessSearch::Found {
        witness: SemilatticeWitness { kind, table },
    }
}

/// Scans for `f_∧` with `β(i) ∩ β(j) = β(f_∧(i,j))`, first match per
/// pair.
pub fn find_meet_witness(s: &Space) -> WitnessSearch {
    find_witness(s, LatticeKind::Meet)
}

/// Scans for `f_∨` with `β(i) ∪ β(j) = β(f_∨(i,j))`, first match per
/// pair.
pub fn find_join_witness(s: &Space) -> WitnessSearch {
    find_witness(s, LatticeKind::Join)
}

/// Round-trip report: the spectrum of the algebra (via its c-poset
/// embedding) together with the verification that the algebra's own
/// tables act as index witnesses on the spectral base —
/// `V_a ∩ V_b = V_{a∧b}` and/or `V_a ∪ V_b = V_{a∨b}`, exhaustively.
#[derive(Debug, Clone)]
pub struct SemilatticeDualityReport {
    pub kind: &'static str,
    pub spectrum: SpectrumSpace,
    pub meet_transport: Option<Check>,
    pub join_transport: Option<Check>,
    pub meet_witness: Option<SemilatticeWitness>,
    pub join_witness: Option<SemilatticeWitness>,
}

impl SemilatticeDualityReport {
    pub fn passed(&self) -> bool {
        let transports = [&self.meet_transport, &self.join_transport]
            .into_iter()
            .flatten()
            .all(|c| c.passed);
        let witnesses = match self.kind {
            "meet-semilattice" => self.meet_witness.is_some(),
            "join-semilattice" => self.join_witness.is_some(),
            _ => self.meet_witness.is_some() && self.join_witness.is_some(),
        };
        transports && witnesses
    }
}

fn transported(space: &Space, alg: &Semilattice) -> Check {
    for i in 0..alg.n() {
        for j in 0..alg.n() {
            let combined = match alg.kind() {
                LatticeKind::Meet => space.beta_set(i) & space.beta_set(j),
                LatticeKind::Join => space.beta_set(i) | space.beta_set(j),
            };
            if combined != space.beta_set(alg.op_idx(i, j)) {
                let (a, b) = (alg.names()[i], alg.names()[j]);
                return Check::fail(format!(
                    "V_{a} and V_{b} do not combine to V_{}",
                    alg.names()[alg.op_idx(i, j)]
                ));
            }
        }
    }
    Check::pass()
}

fn witness_of(space: &Space, kind: LatticeKind) -> Option<SemilatticeWitness> {
    match find_witness(space, kind) {
        WitnessSearch::Found { witness } => Some(witness),
        WitnessSearch::Absent { .. } => None,
    }
}

/// Checks the duality for one semilattice: its spectrum's base must
/// carry the transported table as a witness.
pub fn check_semilattice_duality(s: &Semilattice) -> Result<SemilatticeDualityReport> {
    let sp = spectrum(&cposet_from_semilattice(s)?)?;
    let (kind, meet_transport, join_transport) = match s.kind() {
        LatticeKind::Meet => ("meet-semilattice", Some(transported(sp.space(), s)), None),
        LatticeKind::Join => ("join-semilattice", None, Some(transported(sp.space(), s))),
    };
    let meet_witness = witness_of(sp.space(), LatticeKind::Meet).filter(|_| meet_transport.is_some());
    let join_witness = witness_of(sp.space(), LatticeKind::Join).filter(|_| join_transport.is_some());
    Ok(SemilatticeDualityReport {
        kind,
        spectrum: sp,
        meet_transport,
        join_transport,
        meet_witness,
        join_witness,
    })
}

/// Checks the duality for a lattice on the spectrum of its join
/// reduct: both tables must transport.
pub fn check_lattice_duality(l: &Lattice) -> Result<SemilatticeDualityReport> {
    let sp = spectrum(&cposet_from_semilattice(l.join())?)?;
    let meet_transport = Some(transported(sp.space(), l.meet()));
    let join_transport = Some(transported(sp.space(), l.join()));
    let meet_witness = witness_of(sp.space(), LatticeKind::Meet);
    let join_witness = witness_of(sp.space(), LatticeKind::Join);
    Ok(SemilatticeDualityReport {
        kind: "lattice",
        spectrum: sp,
        meet_transport,
        join_transport,
        meet_witness,
        join_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::tests_support::chain;
    use crate::order::{enumerate_ideals, validate_cposet};
    use crate::topology::{classify, SoberMode};

    /// The 2×2 grid 0 < a, b < 1 as carrier {0, 1, 2, 3} with
    /// 1 ∥ 2 and 1 ∨ 2 = 3.
    fn grid_lattice() -> Lattice {
        Lattice::new(
            vec![0, 1, 2, 3],
            &[
                vec![0, 1, 2, 3],
                vec![1, 1, 3, 3],
                vec![2, 3, 2, 3],
                vec![3, 3, 3, 3],
            ],
            &[
                vec![0, 0, 0, 0],
                vec![0, 1, 0, 1],
                vec![0, 0, 2, 2],
                vec![0, 1, 2, 3],
            ],
        )
        .unwrap()
    }

    /// M3: bottom 0, atoms 1, 2, 3, top 4 — modular, not distributive.
    fn m3_lattice() -> Lattice {
        let join = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 1, 4, 4, 4],
            vec![2, 4, 2, 4, 4],
            vec![3, 4, 4, 3, 4],
            vec![4, 4, 4, 4, 4],
        ];
        let meet = vec![
            vec![0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 1],
            vec![0, 0, 2, 0, 2],
            vec![0, 0, 0, 3, 3],
            vec![0, 1, 2, 3, 4],
        ];
        Lattice::new(vec![0, 1, 2, 3, 4], &join, &meet).unwrap()
    }

    fn chain_join(n: usize) -> Semilattice {
        let names: Vec<u64> = (0..n as u64).collect();
        let rows: Vec<Vec<u64>> = (0..n as u64)
            .map(|i| (0..n as u64).map(|j| i.max(j)).collect())
            .collect();
        Semilattice::new(names, LatticeKind::Join, &rows).unwrap()
    }

    fn chain_meet(n: usize) -> Semilattice {
        let names: Vec<u64> = (0..n as u64).collect();
        let rows: Vec<Vec<u64>> = (0..n as u64)
            .map(|i| (0..n as u64).map(|j| i.min(j)).collect())
            .collect();
        Semilattice::new(names, LatticeKind::Meet, &rows).unwrap()
    }

    #[test]
    fn table_axioms_are_enforced() {
        let not_idempotent = Semilattice::new(
            vec![0, 1],
            LatticeKind::Meet,
            &[vec![1, 1], vec![1, 1]],
        );
        assert!(matches!(not_idempotent, Err(Error::BadTable(w)) if w.contains("idempotent")));

        let not_commutative = Semilattice::new(
            vec![0, 1],
            LatticeKind::Meet,
            &[vec![0, 0], vec![1, 1]],
        );
        assert!(matches!(not_commutative, Err(Error::BadTable(w)) if w.contains("commutative")));

        let not_associative = Semilattice::new(
            vec![0, 1, 2],
            LatticeKind::Join,
            &[vec![0, 1, 0], vec![1, 1, 2], vec![0, 2, 2]],
        );
        assert!(matches!(not_associative, Err(Error::BadTable(w)) if w.contains("associative")));

        let out_of_carrier = Semilattice::new(
            vec![0, 1],
            LatticeKind::Meet,
            &[vec![0, 9], vec![9, 1]],
        );
        assert!(matches!(out_of_carrier, Err(Error::BadTable(_))));
    }

    #[test]
    fn absorption_is_enforced_on_lattices() {
        // Valid semilattice tables (both are max), but max/max is not a
        // lattice pairing: a ∧ (a ∨ b) = a fails.
        let max_rows: Vec<Vec<u64>> = (0..2u64)
            .map(|i| (0..2u64).map(|j| i.max(j)).collect())
            .collect();
        let err = Lattice::new(vec![0, 1], &max_rows.clone(), &max_rows);
        assert!(matches!(err, Err(Error::BadTable(w)) if w.contains("absorption")));
    }

    #[test]
    fn induced_order_cross_checks() {
        let s = chain_meet(3);
        let good = Poset::new(vec![0, 1, 2], &[(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)])
            .unwrap();
        assert!(s.check_order(&good).passed);
        let bad = Poset::new(vec![0, 1, 2], &[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(!s.check_order(&bad).passed);
    }

    #[test]
    fn join_ideal_closure_examples() {
        let grid = grid_lattice();
        assert_eq!(join_ideal_closure(grid.join(), 0).unwrap(), 0);
        // X = {a, b}: a ∨ b = 1, downset of {a, b, 1} is everything.
        assert_eq!(join_ideal_closure(grid.join(), 0b0110).unwrap(), 0b1111);
        let c = chain_join(4);
        assert_eq!(join_ideal_closure(&c, 0b1000).unwrap(), 0b1111);
        assert!(matches!(
            join_ideal_closure(&chain_meet(2), 0b1),
            Err(Error::BadTable(_))
        ));
    }

    #[test]
    fn semilattice_cposets_validate_and_match_psi() {
        for s in [chain_join(2), chain_join(4), grid_lattice().join().clone()] {
            let p = cposet_from_semilattice(&s).unwrap();
            assert!(validate_cposet(&p).unwrap().passed());
            for x in mask::all_subsets(s.n()) {
                assert_eq!(p.closure_mask(x), join_ideal_closure(&s, x).unwrap());
            }
        }
    }

    #[test]
    fn meet_semilattice_cposet_is_the_downset_cposet() {
        let p = cposet_from_semilattice(&chain_meet(3)).unwrap();
        assert!(validate_cposet(&p).unwrap().passed());
        for x in mask::all_subsets(3) {
            assert_eq!(p.closure_mask(x), chain(3).closure_mask(x));
        }
        let singleton = cposet_from_semilattice(
            &Semilattice::new(vec![7], LatticeKind::Join, &[vec![7]]).unwrap(),
        )
        .unwrap();
        assert_eq!(singleton.n(), 1);
    }

    #[test]
    fn grid_join_ideals_are_its_downsets_minus_the_gap() {
        // ψ-closed sets of the grid: ∅, {0}, ↓a, ↓b, and the whole
        // carrier — {0, a, b} is not closed because a ∨ b = 1.
        let p = cposet_from_semilattice(grid_lattice().join()).unwrap();
        let ideals = enumerate_ideals(&p).unwrap();
        assert_eq!(ideals, vec![0b0000, 0b0001, 0b0011, 0b0101, 0b1111]);
    }

    #[test]
    fn witness_scan_examples() {
        // Base closed under intersection.
        let s = Space::from_masks(2, vec![0b01, 0b11]);
        let found = find_meet_witness(&s);
        assert!(found.found());
        if let WitnessSearch::Found { witness } = found {
            assert_eq!(witness.table, vec![vec![0, 0], vec![0, 1]]);
        }
        if let WitnessSearch::Found { witness } = find_join_witness(&s) {
            assert_eq!(witness.table, vec![vec![0, 1], vec![1, 1]]);
        } else {
            panic!("nested base is closed under union");
        }

        // Two disjoint singletons without ∅ in the base.
        let disjoint = Space::from_masks(2, vec![0b01, 0b10]);
        assert!(matches!(
            find_meet_witness(&disjoint),
            WitnessSearch::Absent { i: 0, j: 1 }
        ));
        assert!(matches!(
            find_join_witness(&disjoint),
            WitnessSearch::Absent { i: 0, j: 1 }
        ));

        // Single base set: constant table.
        let single = Space::from_masks(1, vec![0b1]);
        assert!(find_meet_witness(&single).found());
    }

    #[test]
    fn meet_semilattice_duality_on_chains() {
        let r = check_semilattice_duality(&chain_meet(3)).unwrap();
        assert_eq!(r.kind, "meet-semilattice");
        assert!(r.passed(), "{:?}", r.meet_transport);
        let cells = classify(r.spectrum.space(), SoberMode::Standard)
            .unwrap()
            .cells;
        assert!(cells.contains(&"ASp".to_string()));
    }

    #[test]
    fn join_semilattice_duality_on_chains() {
        let r = check_semilattice_duality(&chain_join(3)).unwrap();
        assert_eq!(r.kind, "join-semilattice");
        assert!(r.passed(), "{:?}", r.join_transport);
        let cells = classify(r.spectrum.space(), SoberMode::Standard)
            .unwrap()
            .cells;
        assert!(cells.contains(&"AsSpec".to_string()));
    }

    #[test]
    fn lattice_duality_on_the_grid() {
        let r = check_lattice_duality(&grid_lattice()).unwrap();
        assert!(r.passed());
        assert!(r.meet_transport.as_ref().unwrap().passed);
        assert!(r.join_transport.as_ref().unwrap().passed);
        // Spectrum: two primes ↓a and ↓b; V = [∅, {q_b}, {q_a}, X].
        assert_eq!(r.spectrum.n_points(), 2);
        let cells = classify(r.spectrum.space(), SoberMode::Standard)
            .unwrap()
            .cells;
        assert!(cells.contains(&"ASpec".to_string()));
    }

    #[test]
    fn lattice_duality_on_the_singleton_is_trivial() {
        let l = Lattice::new(vec![7], &[vec![7]], &[vec![7]]).unwrap();
        let r = check_lattice_duality(&l).unwrap();
        assert!(r.passed());
        assert_eq!(r.spectrum.n_points(), 0);
    }

    #[test]
    fn m3_is_refused_as_non_distributive() {
        let err = check_lattice_duality(&m3_lattice());
        assert!(matches!(err, Err(Error::NotDistributive(_))));
    }
}
