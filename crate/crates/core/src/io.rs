//! JSON input and output for every object kind the workbench handles.
//!
//! JSON is the single source format (DOT is output-only); a document is
//! dispatched on its mandatory `"kind"` field.  Emission is canonical:
//! carriers, relation pairs and operator codes ascend, so identical
//! objects always serialize to identical bytes.
//!
//! Parsing stops at schema level — names must resolve, indices must be
//! in range, operation tables must denote semilattices — while *law*
//! checking (poset axioms, T0, closure-operator properties) is left to
//! the explicit validators, so that a malformed-but-typed object can be
//! loaded and then reported on.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::encoding::{pair, set_decode, set_encode, unpair, EnumOperator};
use crate::error::{Error, Result};
use crate::lattices::{Lattice, LatticeKind, Semilattice};
use crate::mask;
use crate::order::{CPoset, ElementMap, Poset};
use crate::spectrum::SpectrumSpace;
use crate::topology::Space;

/// One closure-operator entry: either a raw Cantor pair code `⟨x, k⟩`
/// or the expanded `{x, set}` spelling of the same pair with
/// `set = D_k`.  The two forms round-trip bit-exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorItem {
    Code(u64),
    Set { x: u64, set: Vec<u64> },
}

impl OperatorItem {
    pub fn code(&self) -> Result<u64> {
        match self {
            OperatorItem::Code(c) => Ok(*c),
            OperatorItem::Set { x, set } => pair(*x, set_encode(set.iter().copied())?),
        }
    }
}

/// Provenance block attached to spectrum output: where the space came
/// from and which prime ideals its points are.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source_carrier: Vec<u64>,
    /// One prime ideal per spectrum point, as carrier-name lists.
    pub primes: Vec<Vec<u64>>,
}

/// The on-disk shape of every parseable document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    CPoset {
        carrier: Vec<u64>,
        leq: Vec<(u64, u64)>,
        operator: Vec<OperatorItem>,
    },
    Space {
        points: Vec<u64>,
        base: Vec<Vec<u64>>,
        /// Base index → pool id; identity when absent.  A repeated id
        /// encodes a non-injective β.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<Provenance>,
    },
    Poset {
        carrier: Vec<u64>,
        leq: Vec<(u64, u64)>,
    },
    Lattice {
        carrier: Vec<u64>,
        join: Vec<Vec<u64>>,
        meet: Vec<Vec<u64>>,
    },
    Semilattice {
        op: LatticeKind,
        carrier: Vec<u64>,
        table: Vec<Vec<u64>>,
    },
    Map {
        pairs: Vec<(u64, u64)>,
    },
}

/// A realized document: the typed object a file denotes.
#[derive(Debug, Clone)]
pub enum Parsed {
    CPoset(CPoset),
    Space(Space),
    Poset(Poset),
    Lattice(Lattice),
    Semilattice(Semilattice),
    Map(ElementMap),
}

impl Parsed {
    pub fn kind(&self) -> &'static str {
        match self {
            Parsed::CPoset(_) => "cposet",
            Parsed::Space(_) => "space",
            Parsed::Poset(_) => "poset",
            Parsed::Lattice(_) => "lattice",
            Parsed::Semilattice(_) => "semilattice",
            Parsed::Map(_) => "map",
        }
    }
}

/// Realizes a deserialized document, resolving names and indices.
pub fn realize(doc: Document) -> Result<Parsed> {
    match doc {
        Document::CPoset { carrier, leq, operator } => {
            let poset = Poset::new(carrier, &leq)?;
            let codes: Vec<u64> =
                operator.iter().map(OperatorItem::code).collect::<Result<_>>()?;
            Ok(Parsed::CPoset(CPoset::new(poset, EnumOperator::from_codes(codes))?))
        }
        Document::Space { points, base, beta, provenance: _ } => {
            Ok(Parsed::Space(Space::new(points, base, beta)?))
        }
        Document::Poset { carrier, leq } => Ok(Parsed::Poset(Poset::new(carrier, &leq)?)),
        Document::Lattice { carrier, join, meet } => {
            Ok(Parsed::Lattice(Lattice::new(carrier, &join, &meet)?))
        }
        Document::Semilattice { op, carrier, table } => {
            Ok(Parsed::Semilattice(Semilattice::new(carrier, op, &table)?))
        }
        Document::Map { pairs } => Ok(Parsed::Map(ElementMap::new(pairs)?)),
    }
}

/// Parses a JSON document; syntax errors keep serde's line/column text.
pub fn parse_str(text: &str) -> Result<Parsed> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    realize(doc)
}

pub fn parse_file(path: &Path) -> Result<Parsed> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

/// Which spelling of the operator entries to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OperatorForm {
    /// Raw pair codes, ascending.
    #[default]
    Codes,
    /// Expanded `{x, set}` objects, in code order.
    Sets,
}

pub fn cposet_document(p: &CPoset, form: OperatorForm) -> Document {
    let operator = p
        .operator()
        .codes()
        .iter()
        .map(|&code| match form {
            OperatorForm::Codes => OperatorItem::Code(code),
            OperatorForm::Sets => {
                let (x, k) = unpair(code);
                OperatorItem::Set { x, set: set_decode(k) }
            }
        })
        .collect();
    Document::CPoset {
        carrier: p.poset().names().to_vec(),
        leq: p.poset().relation_pairs(),
        operator,
    }
}

pub fn poset_document(p: &Poset) -> Document {
    Document::Poset { carrier: p.names().to_vec(), leq: p.relation_pairs() }
}

fn point_list(s: &Space, m: mask::Mask) -> Vec<u64> {
    mask::elems(m).map(|i| s.point_name(i)).collect()
}

pub fn space_document(s: &Space) -> Document {
    let identity = s.beta_ids().iter().copied().eq(0..s.pool().len());
    Document::Space {
        points: s.point_names().to_vec(),
        base: s.pool().iter().map(|&m| point_list(s, m)).collect(),
        beta: if identity { None } else { Some(s.beta_ids().to_vec()) },
        provenance: None,
    }
}

/// Spectrum output: the space document plus the provenance block naming
/// the source carrier and the prime ideals the points stand for.
pub fn spectrum_document(sp: &SpectrumSpace) -> Document {
    let s = sp.space();
    let carrier = sp.source_carrier();
    let primes = sp
        .primes()
        .iter()
        .map(|&p| mask::elems(p).map(|i| carrier[i]).collect())
        .collect();
    match space_document(s) {
        Document::Space { points, base, beta, .. } => Document::Space {
            points,
            base,
            beta,
            provenance: Some(Provenance {
                source_carrier: carrier.to_vec(),
                primes,
            }),
        },
        _ => unreachable!("space_document emits a space"),
    }
}

fn table_rows(s: &Semilattice) -> Vec<Vec<u64>> {
    let n = s.n();
    (0..n)
        .map(|i| (0..n).map(|j| s.names()[s.op_idx(i, j)]).collect())
        .collect()
}

pub fn semilattice_document(s: &Semilattice) -> Document {
    Document::Semilattice {
        op: s.kind(),
        carrier: s.names().to_vec(),
        table: table_rows(s),
    }
}

pub fn lattice_document(l: &Lattice) -> Document {
    Document::Lattice {
        carrier: l.names().to_vec(),
        join: table_rows(l.join()),
        meet: table_rows(l.meet()),
    }
}

pub fn map_document(m: &ElementMap) -> Document {
    Document::Map { pairs: m.pairs().to_vec() }
}

/// Canonical pretty JSON with a trailing newline.
pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::tests_support;
    use crate::spectrum::spectrum;

    fn chain3() -> CPoset {
        tests_support::chain(3)
    }

    #[test]
    fn cposet_round_trips_in_both_operator_forms() {
        let p = chain3();
        for form in [OperatorForm::Codes, OperatorForm::Sets] {
            let text = to_json(&cposet_document(&p, form));
            match parse_str(&text).unwrap() {
                Parsed::CPoset(q) => assert_eq!(p, q),
                other => panic!("expected cposet, got {}", other.kind()),
            }
        }
    }

    #[test]
    fn mixed_operator_forms_denote_the_same_codes() {
        // ⟨1, {0}⟩ = pair(1, 1) = 4 written both ways.
        let a = r#"{"kind":"cposet","carrier":[0,1],"leq":[[0,0],[0,1],[1,1]],
                    "operator":[1,4]}"#;
        let b = r#"{"kind":"cposet","carrier":[0,1],"leq":[[0,0],[0,1],[1,1]],
                    "operator":[{"x":0,"set":[0]},{"x":1,"set":[0]}]}"#;
        let (pa, pb) = match (parse_str(a).unwrap(), parse_str(b).unwrap()) {
            (Parsed::CPoset(pa), Parsed::CPoset(pb)) => (pa, pb),
            _ => panic!("expected c-posets"),
        };
        assert_eq!(pa, pb);
        assert_eq!(pa.operator().codes(), &[1, 4]);
    }

    #[test]
    fn dangling_operator_code_is_a_schema_error_with_the_code() {
        // ⟨7, ∅⟩ = pair(7, 0) = 35: conclusion 7 outside the carrier.
        let text = r#"{"kind":"cposet","carrier":[0,1],"leq":[[0,0],[1,1]],
                      "operator":[35]}"#;
        match parse_str(text) {
            Err(Error::InvalidOperatorCode { code: 35, .. }) => {}
            other => panic!("expected invalid-code error, got {other:?}"),
        }
    }

    #[test]
    fn space_round_trips_with_and_without_beta() {
        let injective = Space::from_masks(2, vec![0b01, 0b11]);
        let text = to_json(&space_document(&injective));
        assert!(!text.contains("beta"), "identity β stays implicit");
        match parse_str(&text).unwrap() {
            Parsed::Space(s) => assert_eq!(s, injective),
            other => panic!("expected space, got {}", other.kind()),
        }

        let doubled =
            Space::new(vec![10, 20], vec![vec![10], vec![10, 20]], Some(vec![0, 1, 0]))
                .unwrap();
        let text = to_json(&space_document(&doubled));
        assert!(text.contains("beta"));
        match parse_str(&text).unwrap() {
            Parsed::Space(s) => {
                assert_eq!(s, doubled);
                assert!(!s.beta_is_injective());
            }
            other => panic!("expected space, got {}", other.kind()),
        }
    }

    #[test]
    fn beta_out_of_range_is_rejected() {
        let text = r#"{"kind":"space","points":[0,1],"base":[[0],[0,1]],"beta":[0,2]}"#;
        match parse_str(text) {
            Err(Error::BadBaseIndex(2)) => {}
            other => panic!("expected bad base index, got {other:?}"),
        }
    }

    #[test]
    fn spectrum_document_names_primes_and_reparses_as_space() {
        let sp = spectrum(&chain3()).unwrap();
        let text = to_json(&spectrum_document(&sp));
        assert!(text.contains("provenance"));
        match parse_str(&text).unwrap() {
            Parsed::Space(s) => assert_eq!(&s, sp.space()),
            other => panic!("expected space, got {}", other.kind()),
        }
        let doc: Document = serde_json::from_str(&text).unwrap();
        match doc {
            Document::Space { provenance: Some(p), .. } => {
                assert_eq!(p.source_carrier, vec![0, 1, 2]);
                assert_eq!(p.primes, vec![vec![0], vec![0, 1]]);
            }
            _ => panic!("expected provenance"),
        }
    }

    #[test]
    fn lattice_and_semilattice_round_trip() {
        let l = Lattice::new(
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
        .unwrap();
        let text = to_json(&lattice_document(&l));
        match parse_str(&text).unwrap() {
            Parsed::Lattice(back) => {
                assert_eq!(back.names(), l.names());
                assert_eq!(to_json(&lattice_document(&back)), text);
            }
            other => panic!("expected lattice, got {}", other.kind()),
        }

        let s = l.join().clone();
        let text = to_json(&semilattice_document(&s));
        assert!(text.contains("\"op\": \"join\""));
        match parse_str(&text).unwrap() {
            Parsed::Semilattice(back) => {
                assert_eq!(to_json(&semilattice_document(&back)), text)
            }
            other => panic!("expected semilattice, got {}", other.kind()),
        }
    }

    #[test]
    fn map_round_trips_and_duplicate_source_is_rejected() {
        let m = ElementMap::new(vec![(0, 2), (1, 0)]).unwrap();
        let text = to_json(&map_document(&m));
        match parse_str(&text).unwrap() {
            Parsed::Map(back) => assert_eq!(back, m),
            other => panic!("expected map, got {}", other.kind()),
        }
        let dup = r#"{"kind":"map","pairs":[[0,1],[0,2]]}"#;
        assert!(matches!(parse_str(dup), Err(Error::Parse(_))));
    }

    #[test]
    fn unknown_kind_and_syntax_errors_carry_position() {
        match parse_str(r#"{"kind":"widget"}"#) {
            Err(Error::Parse(msg)) => assert!(msg.contains("widget") || msg.contains("kind")),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_str("{\n  \"kind\": \"poset\",\n  \"carrier\": [0,]\n}") {
            Err(Error::Parse(msg)) => {
                assert!(msg.contains("line 3"), "position missing from: {msg}")
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn emission_is_byte_deterministic() {
        let p = chain3();
        let a = to_json(&cposet_document(&p, OperatorForm::Codes));
        let b = to_json(&cposet_document(&chain3(), OperatorForm::Codes));
        assert_eq!(a, b);
    }
}
