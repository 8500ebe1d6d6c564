//! The two functors between distributive c-posets and based spaces, on
//! objects and on morphisms, with the round-trip isomorphisms.
//!
//! `P` sends a space with injectively indexed base to the c-poset of base
//! indices ordered by set inclusion, with the closure induced by the
//! inclusion predicate; `T` sends a distributive c-poset to its spectrum.
//! The unit `f_X: x ↦ {V ∈ B : x ∉ V}` and counit `ξ: (index of V_a) ↦ a`
//! witness that the two constructions invert each other on conformant
//! inputs; both are built concretely and verified extensionally, never
//! assumed.  Morphisms dualize contravariantly: spectral point maps pull
//! back to strict carrier maps, strict carrier maps push to effective
//! spectral maps carrying their index witness `h` explicitly.

use crate::error::{Error, Result};
use crate::limits;
use crate::mask::{self, Mask};
use crate::order::{
    check_dp_isomorphism, check_strict, enumerate_primes, resolve_map, CPoset, Check, ElementMap,
    IsoReport, Poset, StrictReport,
};
use crate::spectrum::{operator_from_inc, spectrum, SpectrumSpace};
use crate::topology::{check_spectral, inc_from_space, resolve_point_map, Space};

/// Which functor produced the derived side of a dual pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProducedBy {
    /// The c-poset was derived from the space.
    P,
    /// The space was derived from the c-poset.
    T,
}

/// A space and a c-poset related by one application of `P` or `T`.
#[derive(Debug, Clone)]
pub struct DualPair {
    pub space: Space,
    pub cposet: CPoset,
    pub produced: ProducedBy,
}

/// A point map together with the index witness `h` that makes it
/// effective: `f⁻¹(C_i) = B_{h(i)}` for every index `i` of the target
/// base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveSpectralMap {
    pub point_map: ElementMap,
    pub witness: ElementMap,
}

fn ensure_injective_base(s: &Space) -> Result<()> {
    for i in 0..s.n_base() {
        for j in (i + 1)..s.n_base() {
            if s.beta_set(i) == s.beta_set(j) {
                return Err(Error::BaseNotInjective { i, j });
            }
        }
    }
    Ok(())
}

/// The base c-poset of a space: carrier = base indices, order = set
/// inclusion, closure = "is contained in the union".  Requires an
/// injectively indexed base.
#[allow(non_snake_case)]
pub fn functor_P_obj(s: &Space) -> Result<CPoset> {
    ensure_injective_base(s)?;
    let m = s.n_base();
    limits::check_exhaustive(m)?;
    let names: Vec<u64> = (0..m as u64).collect();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if mask::is_subset(s.beta_set(i), s.beta_set(j)) {
                pairs.push((i as u64, j as u64));
            }
        }
    }
    let poset = Poset::new(names, &pairs)?;
    let inc = inc_from_space(s, mask::full(m));
    let operator = operator_from_inc(&inc)?;
    CPoset::new(poset, operator)
}

/// The spectrum, as the object part of `T`.
#[allow(non_snake_case)]
pub fn functor_T_obj(p: &CPoset) -> Result<SpectrumSpace> {
    spectrum(p)
}

/// The index map `U ↦ f⁻¹(U)` dual to a spectral point map
/// `f: X0 → X1`; it runs from the base indices of `X1` to those of `X0`.
#[allow(non_snake_case)]
pub fn functor_P_mor(f: &ElementMap, x0: &Space, x1: &Space) -> Result<ElementMap> {
    ensure_injective_base(x0)?;
    ensure_injective_base(x1)?;
    let idx = resolve_point_map(f, x0, x1)?;
    let mut pairs = Vec::with_capacity(x1.n_base());
    for u in 0..x1.n_base() {
        let target = x1.beta_set(u);
        let mut pre = 0;
        for (x, &fx) in idx.iter().enumerate() {
            if mask::contains(target, fx) {
                pre |= mask::bit(x);
            }
        }
        let v = (0..x0.n_base())
            .find(|&v| x0.beta_set(v) == pre)
            .ok_or_else(|| {
                Error::NotSpectral(format!(
                    "preimage {} of base set {} is not a base set of the source",
                    x0.format_point_set(pre),
                    x1.format_point_set(target)
                ))
            })?;
        pairs.push((u as u64, v as u64));
    }
    ElementMap::new(pairs)
}

/// The point map `I ↦ g⁻¹(I)` dual to a strict carrier map
/// `g: P0 → P1`; it runs from the spectrum of `P1` to that of `P0`, with
/// witness `h = g` at the index level.
#[allow(non_snake_case)]
pub fn functor_T_mor(g: &ElementMap, p0: &CPoset, p1: &CPoset) -> Result<EffectiveSpectralMap> {
    let strict = check_strict(p0, p1, g)?;
    if let Some(w) = strict.preimages_prime.witness {
        return Err(Error::NotStrict(w));
    }
    let idx = resolve_map(p0.poset(), p1.poset(), g)?;
    let primes1 = enumerate_primes(p1)?;
    let mut point_pairs = Vec::with_capacity(primes1.len());
    for &q in &primes1 {
        let mut pre = 0;
        for (i, &j) in idx.iter().enumerate() {
            if mask::contains(q, j) {
                pre |= mask::bit(i);
            }
        }
        point_pairs.push((q, pre));
    }
    let witness_pairs: Vec<(u64, u64)> = idx
        .iter()
        .enumerate()
        .map(|(i, &j)| (i as u64, j as u64))
        .collect();
    Ok(EffectiveSpectralMap {
        point_map: ElementMap::new(point_pairs)?,
        witness: ElementMap::new(witness_pairs)?,
    })
}

/// Verifies `f⁻¹(C_i) = B_{h(i)}` extensionally for every base index of
/// the target.
pub fn check_effective_spectral(
    m: &EffectiveSpectralMap,
    x0: &Space,
    x1: &Space,
) -> Result<Check> {
    let idx = resolve_point_map(&m.point_map, x0, x1)?;
    for i in 0..x1.n_base() {
        let Some(h) = m.witness.get(i as u64) else {
            return Ok(Check::fail(format!(
                "witness h is undefined at target base index {i}"
            )));
        };
        if h as usize >= x0.n_base() {
            return Ok(Check::fail(format!(
                "witness h({i}) = {h} is outside the source base"
            )));
        }
        let target = x1.beta_set(i);
        let mut pre = 0;
        for (x, &fx) in idx.iter().enumerate() {
            if mask::contains(target, fx) {
                pre |= mask::bit(x);
            }
        }
        if pre != x0.beta_set(h as usize) {
            return Ok(Check::fail(format!(
                "f⁻¹(C_{i}) = {} but B_{h} = {}",
                x0.format_point_set(pre),
                x0.format_point_set(x0.beta_set(h as usize))
            )));
        }
    }
    Ok(Check::pass())
}

/// The unit round trip for a space: the dual c-poset, its spectrum, and
/// the homeomorphism `f_X` (with inverse), both carrying identity index
/// witnesses.
#[derive(Debug, Clone)]
pub struct UnitReport {
    pub dual: CPoset,
    pub spectrum: SpectrumSpace,
    pub forward: EffectiveSpectralMap,
    pub inverse: EffectiveSpectralMap,
}

/// Builds and verifies `f_X: x ↦ {V ∈ B : x ∉ V}` from `s` onto the
/// spectrum of its base c-poset.  Fails with a witness when `f_X` is not
/// a bijection, which on structurally valid input pinpoints a violated
/// conformance condition of the base.
pub fn unit_map(s: &Space) -> Result<UnitReport> {
    let dual = functor_P_obj(s)?;
    let sp = spectrum(&dual)?;
    let mut hit = vec![None; sp.n_points()];
    let mut forward_pairs = Vec::with_capacity(s.n_points());
    for x in 0..s.n_points() {
        let mut mx: Mask = 0;
        for i in 0..s.n_base() {
            if !mask::contains(s.beta_set(i), x) {
                mx |= mask::bit(i);
            }
        }
        let pos = sp.primes().binary_search(&mx).map_err(|_| {
            Error::NotAlmostSober(format!(
                "f_X({}) = {} is not a prime ideal of the base c-poset",
                s.point_name(x),
                dual.format_mask(mx)
            ))
        })?;
        if let Some(other) = hit[pos] {
            return Err(Error::NotAlmostSober(format!(
                "points {} and {} lie in exactly the same base sets",
                s.point_name(other),
                s.point_name(x)
            )));
        }
        hit[pos] = Some(x);
        forward_pairs.push((s.point_name(x), mx));
    }
    if let Some(pos) = hit.iter().position(|h| h.is_none()) {
        return Err(Error::NotAlmostSober(format!(
            "prime ideal {} is not the image of any point",
            dual.format_mask(sp.primes()[pos])
        )));
    }

    // Pullback identity f_X⁻¹(V_A) = A, a theorem once f_X is bijective.
    for a in 0..s.n_base() {
        let va = sp.space().beta_set(a);
        let mut pre = 0;
        for (x, &(_, mx)) in forward_pairs.iter().enumerate() {
            let pos = sp.primes().binary_search(&mx).expect("image verified above");
            if mask::contains(va, pos) {
                pre |= mask::bit(x);
            }
        }
        if pre != s.beta_set(a) {
            return Err(Error::InternalFault {
                law: "the unit pullback identity",
                detail: format!(
                    "f_X⁻¹(V_{a}) = {} but β({a}) = {}",
                    s.format_point_set(pre),
                    s.format_point_set(s.beta_set(a))
                ),
            });
        }
    }

    let base_identity = ElementMap::identity(0..s.n_base() as u64);
    let inverse_pairs: Vec<(u64, u64)> =
        forward_pairs.iter().map(|&(x, mx)| (mx, x)).collect();
    Ok(UnitReport {
        dual,
        spectrum: sp,
        forward: EffectiveSpectralMap {
            point_map: ElementMap::new(forward_pairs)?,
            witness: base_identity.clone(),
        },
        inverse: EffectiveSpectralMap {
            point_map: ElementMap::new(inverse_pairs)?,
            witness: base_identity,
        },
    })
}

/// The counit round trip for a c-poset: the spectrum, its base c-poset,
/// and the isomorphism `ξ: (index of V_a) ↦ a` with its verification.
#[derive(Debug, Clone)]
pub struct CounitReport {
    pub spectrum: SpectrumSpace,
    pub image: CPoset,
    pub xi: ElementMap,
    pub iso: IsoReport,
}

pub fn counit_map(p: &CPoset) -> Result<CounitReport> {
    let sp = spectrum(p)?;
    let image = functor_P_obj(sp.space())?;
    let xi = ElementMap::new(
        (0..p.n()).map(|a| (a as u64, p.names()[a])).collect(),
    )?;
    let iso = check_dp_isomorphism(&image, p, &xi)?;
    if !iso.passed() {
        return Err(Error::InternalFault {
            law: "the counit DP-isomorphism",
            detail: iso.first_witness().unwrap_or_default(),
        });
    }
    Ok(CounitReport { spectrum: sp, image, xi, iso })
}

/// Dualization report for a spectral point map: the induced index map
/// and its verified strictness.
#[derive(Debug, Clone)]
pub struct SpectralSideReport {
    pub dual: ElementMap,
    pub strict: StrictReport,
}

/// Checks that a spectral map dualizes to a strict map between the base
/// c-posets (the space-to-order direction of morphism duality).
pub fn morphism_duality_spectral(
    f: &ElementMap,
    x0: &Space,
    x1: &Space,
) -> Result<SpectralSideReport> {
    let spectral = check_spectral(f, x0, x1)?;
    if let Some(w) = spectral.witness {
        return Err(Error::NotSpectral(w));
    }
    let dual = functor_P_mor(f, x0, x1)?;
    let b0 = functor_P_obj(x0)?;
    let b1 = functor_P_obj(x1)?;
    let strict = check_strict(&b1, &b0, &dual)?;
    Ok(SpectralSideReport { dual, strict })
}

/// Dualization report for a strict carrier map: the induced effective
/// spectral map with its two verifications.
#[derive(Debug, Clone)]
pub struct StrictSideReport {
    pub dual: EffectiveSpectralMap,
    pub spectral: Check,
    pub effective: Check,
}

/// Checks that a strict map dualizes to an effective spectral map
/// between the spectra (the order-to-space direction).
pub fn morphism_duality_strict(
    g: &ElementMap,
    p0: &CPoset,
    p1: &CPoset,
) -> Result<StrictSideReport> {
    let dual = functor_T_mor(g, p0, p1)?;
    let s0 = spectrum(p0)?;
    let s1 = spectrum(p1)?;
    let spectral = check_spectral(&dual.point_map, s1.space(), s0.space())?;
    let effective = check_effective_spectral(&dual, s1.space(), s0.space())?;
    Ok(StrictSideReport { dual, spectral, effective })
}

/// Contravariance on the space side: `P(f₁₂ ∘ f₀₁) = P(f₀₁) ∘ P(f₁₂)`
/// for composable spectral maps, compared extensionally.
pub fn contravariance_spectral(
    f01: &ElementMap,
    f12: &ElementMap,
    x0: &Space,
    x1: &Space,
    x2: &Space,
) -> Result<Check> {
    let composite = f01.compose(f12)?;
    let dual_composite = functor_P_mor(&composite, x0, x2)?;
    let d01 = functor_P_mor(f01, x0, x1)?;
    let d12 = functor_P_mor(f12, x1, x2)?;
    let chained = d12.compose(&d01)?;
    Ok(if dual_composite == chained {
        Check::pass()
    } else {
        Check::fail(format!(
            "P(f₁₂ ∘ f₀₁) = {:?} differs from P(f₀₁) ∘ P(f₁₂) = {:?}",
            dual_composite.pairs(),
            chained.pairs()
        ))
    })
}

/// Contravariance on the order side: `T(g₁₂ ∘ g₀₁) = T(g₀₁) ∘ T(g₁₂)`
/// for composable strict maps.
pub fn contravariance_strict(
    g01: &ElementMap,
    g12: &ElementMap,
    p0: &CPoset,
    p1: &CPoset,
    p2: &CPoset,
) -> Result<Check> {
    let composite = g01.compose(g12)?;
    let dual_composite = functor_T_mor(&composite, p0, p2)?;
    let d01 = functor_T_mor(g01, p0, p1)?;
    let d12 = functor_T_mor(g12, p1, p2)?;
    let chained = d12.point_map.compose(&d01.point_map)?;
    Ok(if dual_composite.point_map == chained {
        Check::pass()
    } else {
        Check::fail(format!(
            "T(g₁₂ ∘ g₀₁) = {:?} differs from T(g₀₁) ∘ T(g₁₂) = {:?}",
            dual_composite.point_map.pairs(),
            chained.pairs()
        ))
    })
}

/// Is the closure of `p` exactly the lower-cone operator?
pub fn is_downset_closure(p: &CPoset) -> Result<Check> {
    limits::check_exhaustive(p.n())?;
    for x in mask::all_subsets(p.n()) {
        let phi = p.closure_mask(x);
        let down = p.poset().downset(x);
        if phi != down {
            return Ok(Check::fail(format!(
                "φ({}) = {} but ↓{} = {}",
                p.format_mask(x),
                p.format_mask(phi),
                p.format_mask(x),
                p.format_mask(down)
            )));
        }
    }
    Ok(Check::pass())
}

/// Isomorphism-transfer report: when `ξ: P0 → P1` is a DP-isomorphism
/// and `P1` has the lower-cone closure, so does `P0`.  All three facts
/// are established extensionally.
#[derive(Debug, Clone)]
pub struct LdsReport {
    pub iso: IsoReport,
    pub target_downset: Check,
    pub source_downset: Check,
}

impl LdsReport {
    pub fn passed(&self) -> bool {
        self.iso.passed() && self.target_downset.passed && self.source_downset.passed
    }
}

pub fn check_lds(p0: &CPoset, p1: &CPoset, xi: &ElementMap) -> Result<LdsReport> {
    Ok(LdsReport {
        iso: check_dp_isomorphism(p0, p1, xi)?,
        target_downset: is_downset_closure(p1)?,
        source_downset: is_downset_closure(p0)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::tests_support::{chain, downset_cposet, m3ish};
    use crate::order::validate_cposet;

    fn discrete2() -> Space {
        Space::from_masks(2, vec![0b01, 0b10])
    }

    fn closure_tables_agree(a: &CPoset, b: &CPoset) -> bool {
        a.n() == b.n()
            && mask::all_subsets(a.n()).all(|x| a.closure_mask(x) == b.closure_mask(x))
    }

    #[test]
    fn p_obj_on_discrete_two_point_is_the_antichain() {
        let b = functor_P_obj(&discrete2()).unwrap();
        assert!(validate_cposet(&b).unwrap().passed());
        assert!(closure_tables_agree(&b, &downset_cposet(&[0, 1], &[])));
    }

    #[test]
    fn p_obj_on_nested_base_is_the_chain() {
        let s = Space::from_masks(2, vec![0b01, 0b11]);
        let b = functor_P_obj(&s).unwrap();
        assert!(validate_cposet(&b).unwrap().passed());
        assert!(b.poset().leq_idx(0, 1));
        assert!(!b.poset().leq_idx(1, 0));
        assert!(closure_tables_agree(&b, &chain(2)));
    }

    #[test]
    fn p_obj_on_single_base_set_is_the_singleton() {
        let s = Space::from_masks(1, vec![0b1]);
        let b = functor_P_obj(&s).unwrap();
        assert_eq!(b.n(), 1);
        assert!(validate_cposet(&b).unwrap().passed());
    }

    #[test]
    fn p_obj_refuses_a_non_injective_base() {
        let s = Space::new(vec![0, 1], vec![vec![0], vec![0]], None).unwrap();
        assert!(matches!(
            functor_P_obj(&s),
            Err(Error::BaseNotInjective { i: 0, j: 1 })
        ));
    }

    #[test]
    fn p_mor_identity_and_swap() {
        let s = discrete2();
        let id = ElementMap::identity([0, 1]);
        let d = functor_P_mor(&id, &s, &s).unwrap();
        assert_eq!(d.pairs(), &[(0, 0), (1, 1)]);
        let swap = ElementMap::new(vec![(0, 1), (1, 0)]).unwrap();
        let d = functor_P_mor(&swap, &s, &s).unwrap();
        assert_eq!(d.pairs(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn p_mor_collapse_onto_a_point() {
        // Source base contains the whole space, so the collapse map onto
        // a single point is spectral and P picks that index.
        let x0 = Space::from_masks(2, vec![0b01, 0b10, 0b11]);
        let x1 = Space::from_masks(1, vec![0b1]);
        let f = ElementMap::new(vec![(0, 0), (1, 0)]).unwrap();
        let d = functor_P_mor(&f, &x0, &x1).unwrap();
        assert_eq!(d.pairs(), &[(0, 2)]);
        // Without {p,q} in the source base the same map is not spectral.
        let poor = discrete2();
        assert!(matches!(
            functor_P_mor(&f, &poor, &x1),
            Err(Error::NotSpectral(_))
        ));
    }

    #[test]
    fn t_mor_on_a_chain_embedding() {
        let p0 = chain(2);
        let p1 = chain(3);
        let g = ElementMap::new(vec![(0, 0), (1, 2)]).unwrap();
        let m = functor_T_mor(&g, &p0, &p1).unwrap();
        // Both primes of the 3-chain pull back to the 2-chain's only
        // prime {0}.
        assert_eq!(m.point_map.pairs(), &[(0b001, 0b01), (0b011, 0b01)]);
        assert_eq!(m.witness.pairs(), &[(0, 0), (1, 2)]);
        let s0 = spectrum(&p0).unwrap();
        let s1 = spectrum(&p1).unwrap();
        assert!(check_spectral(&m.point_map, s1.space(), s0.space())
            .unwrap()
            .passed);
        assert!(check_effective_spectral(&m, s1.space(), s0.space())
            .unwrap()
            .passed);
    }

    #[test]
    fn t_mor_refuses_non_strict_maps() {
        // Collapsing the 2-antichain onto the bottom of the 2-chain is
        // not strict: the preimage of the prime {0} is the whole
        // antichain carrier.
        let p0 = downset_cposet(&[0, 1], &[]);
        let p1 = chain(2);
        let g = ElementMap::new(vec![(0, 0), (1, 0)]).unwrap();
        assert!(matches!(
            functor_T_mor(&g, &p0, &p1),
            Err(Error::NotStrict(_))
        ));
    }

    #[test]
    fn effective_check_rejects_a_shifted_witness() {
        let p0 = chain(2);
        let p1 = chain(3);
        let g = ElementMap::new(vec![(0, 0), (1, 2)]).unwrap();
        let m = functor_T_mor(&g, &p0, &p1).unwrap();
        let s0 = spectrum(&p0).unwrap();
        let s1 = spectrum(&p1).unwrap();
        let wrong = EffectiveSpectralMap {
            point_map: m.point_map.clone(),
            witness: ElementMap::new(vec![(0, 1), (1, 2)]).unwrap(),
        };
        assert!(!check_effective_spectral(&wrong, s1.space(), s0.space())
            .unwrap()
            .passed);
    }

    #[test]
    fn unit_map_on_the_discrete_two_point_space() {
        let r = unit_map(&discrete2()).unwrap();
        assert_eq!(r.spectrum.n_points(), 2);
        assert_eq!(r.forward.point_map.pairs(), &[(0, 0b10), (1, 0b01)]);
        let sp_space = r.spectrum.space().clone();
        assert!(check_effective_spectral(&r.forward, &discrete2(), &sp_space)
            .unwrap()
            .passed);
        assert!(check_effective_spectral(&r.inverse, &sp_space, &discrete2())
            .unwrap()
            .passed);
    }

    #[test]
    fn unit_map_on_a_conformant_singleton() {
        // The conformant singleton presentation carries base {∅, {p}}.
        let s = Space::from_masks(1, vec![0b0, 0b1]);
        let r = unit_map(&s).unwrap();
        assert_eq!(r.spectrum.n_points(), 1);
        assert_eq!(r.forward.point_map.pairs(), &[(0, 0b01)]);
    }

    #[test]
    fn unit_map_reports_the_nonconformant_singleton() {
        // Base {{p}} alone: the base c-poset is the singleton, whose
        // spectrum is empty, so f_X cannot reach anything.
        let s = Space::from_masks(1, vec![0b1]);
        assert!(matches!(unit_map(&s), Err(Error::NotAlmostSober(_))));
    }

    #[test]
    fn unit_map_round_trips_a_spectrum() {
        let sp = spectrum(&chain(3)).unwrap();
        let r = unit_map(sp.space()).unwrap();
        assert_eq!(r.spectrum.n_points(), sp.n_points());
    }

    #[test]
    fn counit_is_an_isomorphism_on_small_cposets() {
        for p in [
            chain(1),
            chain(3),
            downset_cposet(&[0, 1], &[]),
            downset_cposet(&[0, 1, 2], &[(0, 2), (1, 2)]),
            downset_cposet(&[], &[]),
        ] {
            let r = counit_map(&p).unwrap();
            assert!(r.iso.passed(), "{:?}", r.iso);
            assert_eq!(r.image.n(), p.n());
        }
    }

    #[test]
    fn counit_on_the_antichain_is_the_canonical_relabelling() {
        let p = downset_cposet(&[10, 20], &[]);
        let r = counit_map(&p).unwrap();
        assert_eq!(r.xi.pairs(), &[(0, 10), (1, 20)]);
    }

    #[test]
    fn morphism_duality_both_sides() {
        let s = discrete2();
        let swap = ElementMap::new(vec![(0, 1), (1, 0)]).unwrap();
        let a = morphism_duality_spectral(&swap, &s, &s).unwrap();
        assert!(a.strict.passed());

        let g = ElementMap::new(vec![(0, 0), (1, 2)]).unwrap();
        let b = morphism_duality_strict(&g, &chain(2), &chain(3)).unwrap();
        assert!(b.spectral.passed && b.effective.passed);
    }

    #[test]
    fn contravariance_on_composable_pairs() {
        let s = discrete2();
        let swap = ElementMap::new(vec![(0, 1), (1, 0)]).unwrap();
        assert!(contravariance_spectral(&swap, &swap, &s, &s, &s)
            .unwrap()
            .passed);

        let g01 = ElementMap::new(vec![(0, 0), (1, 2)]).unwrap();
        let g12 = ElementMap::new(vec![(0, 0), (1, 1), (2, 3)]).unwrap();
        assert!(
            contravariance_strict(&g01, &g12, &chain(2), &chain(3), &chain(4))
                .unwrap()
                .passed
        );
    }

    #[test]
    fn lds_transfers_the_downset_property() {
        let p0 = downset_cposet(&[5, 9, 11], &[(5, 9), (9, 11)]);
        let p1 = chain(3);
        let xi = ElementMap::new(vec![(5, 0), (9, 1), (11, 2)]).unwrap();
        let r = check_lds(&p0, &p1, &xi).unwrap();
        assert!(r.passed(), "{r:?}");
        // Identity on a downset c-poset.
        let id = ElementMap::identity([0, 1, 2]);
        assert!(check_lds(&chain(3), &chain(3), &id).unwrap().passed());
    }

    #[test]
    fn lds_fails_on_a_non_isomorphism_first() {
        // The closure of the non-distributive antichain is strictly
        // larger than the lower cone, and no relabelling fixes that: the
        // isomorphism check fails before any transfer is claimed.
        let p0 = m3ish();
        let p1 = downset_cposet(&[0, 1, 2], &[]);
        let id = ElementMap::identity([0, 1, 2]);
        let r = check_lds(&p0, &p1, &id).unwrap();
        assert!(!r.iso.passed());
        assert!(!r.source_downset.passed);
        assert!(r.target_downset.passed);
        assert!(!r.passed());
    }
}
