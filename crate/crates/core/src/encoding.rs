//! Cantor pair codes, canonical finite-set codes, and generalized
//! enumeration operators.
//!
//! The pair code of `(x, y)` is `⟨x, y⟩ = (x + y)(x + y + 1)/2 + x`.  A
//! natural `k` codes the finite set `D_k` whose elements are the exponents
//! of the binary expansion of `k`; `D_0 = ∅`.  A (finite) enumeration
//! operator is a finite set `A` of pair codes acting on an arbitrary set
//! `B ⊆ ℕ` by
//!
//! ```text
//! A(B) = { x | ⟨x, k⟩ ∈ A for some k with D_k ⊆ B }.
//! ```
//!
//! Naturals are checked 64-bit: `pair` and `set_encode` report overflow
//! instead of wrapping, `unpair` and `set_decode` are total.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;

/// Cantor pair code `⟨x, y⟩`.  Errors when the code exceeds `u64`.
pub fn pair(x: u64, y: u64) -> Result<u64> {
    let s = x as u128 + y as u128;
    let t = s
        .checked_mul(s + 1)
        .map(|sq| sq / 2 + x as u128)
        .ok_or_else(|| Error::Overflow {
            op: "pair",
            detail: format!("pair({x}, {y})"),
        })?;
    u64::try_from(t).map_err(|_| Error::Overflow {
        op: "pair",
        detail: format!("pair({x}, {y})"),
    })
}

/// Inverse of [`pair`]; total on `u64`.
pub fn unpair(n: u64) -> (u64, u64) {
    let w = (((8u128 * n as u128 + 1).isqrt() - 1) / 2) as u64;
    let t = w as u128 * (w as u128 + 1) / 2;
    let x = (n as u128 - t) as u64;
    (x, w - x)
}

/// Elements of the canonical finite set `D_k`, ascending.
pub fn set_decode(k: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(k.count_ones() as usize);
    let mut rest = k;
    while rest != 0 {
        out.push(rest.trailing_zeros() as u64);
        rest &= rest - 1;
    }
    out
}

/// Canonical code of a finite set: `k = Σ 2^x`.  Elements ≥ 64 overflow.
pub fn set_encode<I: IntoIterator<Item = u64>>(elems: I) -> Result<u64> {
    let mut k = 0u64;
    for x in elems {
        if x >= 64 {
            return Err(Error::Overflow {
                op: "set_encode",
                detail: format!("element {x} needs bit 2^{x}"),
            });
        }
        k |= 1 << x;
    }
    Ok(k)
}

/// A finite enumeration operator: a set of pair codes, kept sorted.
///
/// Serializes as a JSON array of pair codes; deserializes from either that
/// form or an array of `{"x": …, "set": […]}` objects (the two round-trip
/// to the same value).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct EnumOperator {
    codes: Vec<u64>,
}

impl EnumOperator {
    pub fn from_codes<I: IntoIterator<Item = u64>>(codes: I) -> Self {
        let mut codes: Vec<u64> = codes.into_iter().collect();
        codes.sort_unstable();
        codes.dedup();
        EnumOperator { codes }
    }

    /// Builds the operator from `(x, D)` pairs, encoding each premise set.
    pub fn from_graph<I, S>(graph: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, S)>,
        S: IntoIterator<Item = u64>,
    {
        let mut codes = Vec::new();
        for (x, premise) in graph {
            codes.push(pair(x, set_encode(premise)?)?);
        }
        Ok(Self::from_codes(codes))
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Decoded graph: `(x, D_k)` per code, in code order.
    pub fn graph(&self) -> Vec<(u64, Vec<u64>)> {
        self.codes
            .iter()
            .map(|&c| {
                let (x, k) = unpair(c);
                (x, set_decode(k))
            })
            .collect()
    }

    /// Single application `A(B)`.
    pub fn apply(&self, input: &BTreeSet<u64>) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for &code in &self.codes {
            let (x, k) = unpair(code);
            if set_decode(k).iter().all(|e| input.contains(e)) {
                out.insert(x);
            }
        }
        out
    }
}

/// Free-function form of [`EnumOperator::apply`].
pub fn enum_apply(a: &EnumOperator, b: &BTreeSet<u64>) -> BTreeSet<u64> {
    a.apply(b)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CodeRepr {
    Code(u64),
    Graph { x: u64, set: Vec<u64> },
}

impl Serialize for EnumOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.codes.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EnumOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<CodeRepr>::deserialize(d)?;
        let mut codes = Vec::with_capacity(reprs.len());
        for r in reprs {
            match r {
                CodeRepr::Code(c) => codes.push(c),
                CodeRepr::Graph { x, set } => {
                    let k = set_encode(set).map_err(D::Error::custom)?;
                    codes.push(pair(x, k).map_err(D::Error::custom)?);
                }
            }
        }
        Ok(EnumOperator::from_codes(codes))
    }
}

/// The `{"x": …, "set": […]}` serialization of an operator.
pub fn operator_graph_json(op: &EnumOperator) -> serde_json::Value {
    serde_json::Value::Array(
        op.graph()
            .into_iter()
            .map(|(x, set)| serde_json::json!({ "x": x, "set": set }))
            .collect(),
    )
}
