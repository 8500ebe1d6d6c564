//! Normalization of presentations: carrier relabeling of c-posets with
//! the operator re-encoded code-for-code, first-occurrence base
//! injectivization, the downset embedding of plain posets, and reports
//! on the materialized relations of a finite presentation.
//!
//! At finite scale every relation is decidable outright; what remains
//! of the effectivity story is *which* data sets a presentation
//! materializes and how the translations move them around.  The report
//! records exactly that, with extensional sizes, so a claim like "the
//! inclusion predicate is computable from the operator codes" is backed
//! by the bytes on both sides.

use serde::Serialize;

use crate::encoding::{pair, set_decode, set_encode, unpair, EnumOperator};
use crate::error::{Error, Result};
use crate::limits;
use crate::mask;
use crate::order::{check_dp_isomorphism, CPoset, ElementMap, Poset};
use crate::spectrum::SpectrumSpace;
use crate::topology::{inc_from_space, Space};

/// Relabels the carrier of `p` along the injection `f` and re-encodes
/// the operator: a code `⟨x,k⟩` becomes `⟨f(x), k′⟩` with
/// `D_{k′} = f(D_k)`.  New names must stay below 64 so premise sets
/// remain encodable.  The result is verified to be DP-isomorphic to `p`
/// via `f` before it is returned.
pub fn relabel_cposet(p: &CPoset, f: &ElementMap) -> Result<CPoset> {
    let mut new_names = Vec::with_capacity(p.n());
    for &a in p.names() {
        new_names.push(f.get(a).ok_or(Error::MapNotTotal(a))?);
    }
    let mut sorted = new_names.clone();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::NotBijective(format!(
                "two carrier elements share the image {}",
                w[0]
            )));
        }
    }

    let mut pairs = Vec::new();
    for i in 0..p.n() {
        for j in 0..p.n() {
            if p.poset().leq_idx(i, j) {
                pairs.push((new_names[i], new_names[j]));
            }
        }
    }
    let poset = Poset::new(new_names, &pairs)?;

    let mut codes = Vec::with_capacity(p.operator().len());
    for &code in p.operator().codes() {
        let (x, k) = unpair(code);
        let fx = f.get(x).expect("codes are validated against the carrier");
        let premise = set_decode(k)
            .into_iter()
            .map(|d| f.get(d).expect("codes are validated against the carrier"));
        codes.push(pair(fx, set_encode(premise)?)?);
    }

    let relabeled = CPoset::new(poset, EnumOperator::from_codes(codes))?;
    let iso = check_dp_isomorphism(p, &relabeled, f)?;
    if !iso.passed() {
        return Err(Error::InternalFault {
            law: "the relabeling DP-isomorphism",
            detail: iso.first_witness().unwrap_or_default(),
        });
    }
    Ok(relabeled)
}

/// Restricts the base family to first-occurrence indices — the finite
/// analogue of the index set `V = {i | ∀j<i β(j) ≠ β(i)}` and of the
/// scan `u(n+1) = μi [β(i) ∉ {β(0),…,β(n)}]`.  Returns the injectivized
/// space together with `u`, which sends each new index to the old index
/// it kept.  The generated topology is untouched because the family of
/// distinct base sets is.
pub fn injectivize_base(s: &Space) -> Result<(Space, ElementMap)> {
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..s.n_base() {
        if (0..i).all(|j| s.beta_set(j) != s.beta_set(i)) {
            kept.push(i);
        }
    }
    let pool = kept.iter().map(|&i| s.beta_set(i)).collect();
    let space = Space::from_named_masks(s.point_names().to_vec(), pool)?;
    let u = ElementMap::new(
        kept.iter()
            .enumerate()
            .map(|(new, &old)| (new as u64, old as u64))
            .collect(),
    )?;
    Ok((space, u))
}

/// Embeds a plain poset as its downset c-poset, with the operator code
/// `{⟨a,k⟩ | D_k = {b}, a ≤ b}` (one entry per comparable pair).
pub fn poset_to_cposet(s: &Poset) -> Result<CPoset> {
    CPoset::downset_of(s)
}

/// Extensional size of one materialized relation.
#[derive(Debug, Clone, Serialize)]
pub struct RelationStat {
    pub relation: String,
    pub entries: usize,
    /// Length of the relation serialized as JSON, for reproducible
    /// size comparisons between presentations.
    pub bytes: usize,
}

/// What a finite presentation materializes: every relation the
/// effectivity definitions ask for, each decidable outright at this
/// scale, with sizes.  `conformant` states that the full required list
/// for the kind is present.
#[derive(Debug, Clone, Serialize)]
pub struct PresentationReport {
    pub kind: &'static str,
    pub carrier: usize,
    pub relations: Vec<RelationStat>,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_injective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_inequality_pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injectivization_available: Option<bool>,
    pub relabeling_applied: bool,
    pub conformant: bool,
}

fn stat<T: Serialize>(relation: &str, entries: usize, data: &T) -> RelationStat {
    let bytes = serde_json::to_vec(data).map(|v| v.len()).unwrap_or(0);
    RelationStat { relation: relation.to_string(), entries, bytes }
}

fn conforms(relations: &[RelationStat], required: &[&str]) -> bool {
    required
        .iter()
        .all(|r| relations.iter().any(|s| s.relation == *r))
}

/// Report for a c-poset presentation: the order relation and the
/// operator code set.
pub fn presentation_report_cposet(p: &CPoset) -> PresentationReport {
    let mut leq_pairs = Vec::new();
    for i in 0..p.n() {
        for j in 0..p.n() {
            if p.poset().leq_idx(i, j) {
                leq_pairs.push((p.names()[i], p.names()[j]));
            }
        }
    }
    let relations = vec![
        stat("leq", leq_pairs.len(), &leq_pairs),
        stat("operator-codes", p.operator().len(), &p.operator().codes()),
    ];
    let conformant = conforms(&relations, &["leq", "operator-codes"]);
    PresentationReport {
        kind: "cposet",
        carrier: p.n(),
        relations,
        provenance: "enumeration-operator codes supplied explicitly".to_string(),
        beta_injective: None,
        beta_inequality_pairs: None,
        injectivization_available: None,
        relabeling_applied: false,
        conformant,
    }
}

fn space_report(s: &Space, provenance: String) -> Result<PresentationReport> {
    limits::check_exhaustive(s.n_base())?;
    let base: Vec<Vec<u64>> = (0..s.n_base())
        .map(|i| {
            mask::elems(s.beta_set(i))
                .map(|x| s.point_name(x))
                .collect()
        })
        .collect();
    let inc = inc_from_space(s, mask::full(s.n_base()));
    let mut unequal = Vec::new();
    for i in 0..s.n_base() {
        for j in (i + 1)..s.n_base() {
            if s.beta_set(i) != s.beta_set(j) {
                unequal.push((i, j));
            }
        }
    }
    let injective = s.n_base() * (s.n_base().saturating_sub(1)) / 2 == unequal.len();
    let relations = vec![
        stat("beta", base.len(), &base),
        stat("inc", inc.entries.len(), &inc.entries),
        stat("beta-inequality", unequal.len(), &unequal),
    ];
    let conformant = conforms(&relations, &["beta", "inc", "beta-inequality"]);
    Ok(PresentationReport {
        kind: "space",
        carrier: s.n_points(),
        relations,
        provenance,
        beta_injective: Some(injective),
        beta_inequality_pairs: Some(unequal.len()),
        injectivization_available: Some(!injective),
        relabeling_applied: false,
        conformant,
    })
}

/// Report for a space presentation: the indexed base family, the full
/// inclusion predicate, and the β-inequality set.
pub fn presentation_report_space(s: &Space) -> Result<PresentationReport> {
    space_report(
        s,
        "base family supplied explicitly; Inc materialized from it".to_string(),
    )
}

/// Report for a spectrum, linking its inclusion predicate back to the
/// operator codes of the source c-poset.
pub fn presentation_report_spectrum(sp: &SpectrumSpace) -> Result<PresentationReport> {
    space_report(
        sp.space(),
        format!(
            "spectral base of a distributive c-poset on {} elements; \
             Inc is computable from the source operator codes and conversely",
            sp.source_carrier().len()
        ),
    )
}
