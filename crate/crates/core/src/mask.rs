//! Bitmask subsets of an indexed carrier.
//!
//! Bit `i` stands for the carrier element with index `i`.  All exhaustive
//! subset loops in the crate run over `0..(1 << n)` of these.

pub type Mask = u64;

#[inline]
pub fn bit(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub fn contains(m: Mask, i: usize) -> bool {
    m & bit(i) != 0
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

#[inline]
pub fn full(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

#[inline]
pub fn card(m: Mask) -> usize {
    m.count_ones() as usize
}

/// Indices of the set bits, ascending.
pub fn elems(m: Mask) -> impl Iterator<Item = usize> {
    let mut rest = m;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// All `2^n` subsets of `{0, …, n-1}`, ascending as masks.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Mask> {
    debug_assert!(n < 64);
    0..(1u64 << n)
}

/// Renders a mask as `{a, b, c}` using the supplied element names.
pub fn format_with_names(m: Mask, names: &[u64]) -> String {
    let inner = elems(m)
        .map(|i| names[i].to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{inner}}}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_iteration_is_ascending_and_complete() {
        let all: Vec<Mask> = all_subsets(3).collect();
        assert_eq!(all, vec![0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn elems_lists_bit_positions() {
        assert_eq!(elems(0b101101).collect::<Vec<_>>(), vec![0, 2, 3, 5]);
        assert_eq!(elems(0).count(), 0);
    }

    #[test]
    fn full_mask_edge_cases() {
        assert_eq!(full(0), 0);
        assert_eq!(full(1), 1);
        assert_eq!(full(5), 0b11111);
        assert_eq!(full(63), (1u64 << 63) - 1);
    }
}
