//! Subsets of a small ground set stored as `u32` bitmasks.
//!
//! Bit `i` set means vertex `i` (0-based) is a member.

/// Iterates the set bits of `mask` in ascending order.
pub fn members(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

#[inline]
pub fn size(mask: u32) -> usize {
    mask.count_ones() as usize
}

#[inline]
pub fn full(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> u32 {
    indices.into_iter().fold(0, |m, i| m | (1 << i))
}

/// Scatters the low bits of `pattern` onto the set positions of `positions`
/// (software `pdep`). Order preserving: `a < b` implies
/// `deposit(a, p) < deposit(b, p)`.
#[inline]
pub fn deposit(mut pattern: u32, positions: u32) -> u32 {
    let mut out = 0;
    let mut pos = positions;
    while pattern != 0 && pos != 0 {
        let low = pos & pos.wrapping_neg();
        if pattern & 1 == 1 {
            out |= low;
        }
        pattern >>= 1;
        pos &= pos - 1;
    }
    out
}

/// Next integer with the same popcount (Gosper's hack).
#[inline]
pub fn next_same_popcount(x: u32) -> u64 {
    let x = x as u64;
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// All `t`-element subsets of `within`, ascending by mask value.
pub fn combinations(within: u32, t: usize) -> impl Iterator<Item = u32> {
    let m = size(within);
    let limit = 1u64 << m;
    let mut pattern: Option<u64> = if t > m {
        None
    } else if t == 0 {
        Some(0)
    } else {
        Some((1u64 << t) - 1)
    };
    std::iter::from_fn(move || {
        let p = pattern?;
        if p >= limit && t > 0 {
            return None;
        }
        pattern = if t == 0 {
            None
        } else {
            Some(next_same_popcount(p as u32))
        };
        Some(deposit(p as u32, within))
    })
}

/// All subsets of `mask` (including the empty set and `mask` itself).
pub fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// Canonical order on subsets: by cardinality, then by mask value.
#[inline]
pub fn canonical_key(mask: u32) -> (u32, u32) {
    (mask.count_ones(), mask)
}

/// 1-based sorted vertex list.
pub fn to_labels(mask: u32) -> Vec<usize> {
    members(mask).map(|v| v + 1).collect()
}
