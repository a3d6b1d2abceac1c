//! Independent reference for Stanley depth, for tests only.
//!
//! Computes `max over all interval partitions of min |top|` by exhaustive
//! recursion over every interval choice (any top size), memoized on the set
//! of covered elements. It shares no code with the level search in
//! [`crate::poset`]; the only common fact is that the least uncovered element
//! in a fixed linear extension is the bottom of its interval.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poset::CharacteristicPoset;
use crate::subset;

/// Ground sets up to this size fit the `u64` covered-state key.
pub const ORACLE_CAP: usize = 32;

pub fn sdepth_exhaustive_oracle(p: &CharacteristicPoset) -> Result<usize> {
    let elements = p.elements();
    if elements.len() > ORACLE_CAP {
        return Err(Error::CapExceeded {
            n: elements.len(),
            cap: ORACLE_CAP,
        });
    }
    // Own linear extension: ascending cardinality, ties by descending mask,
    // deliberately different from the search's tie-break.
    let mut order: Vec<u32> = elements.to_vec();
    order.sort_by_key(|&m| (subset::size(m), std::cmp::Reverse(m)));
    let mut index = HashMap::new();
    for (i, &e) in order.iter().enumerate() {
        index.insert(e, i);
    }
    let intervals_from: Vec<Vec<(u64, usize)>> = order
        .iter()
        .map(|&bottom| {
            let free = subset::full(p.n()) & !bottom;
            subset::subsets(free)
                .map(|extra| {
                    let top = bottom | extra;
                    let members = subset::subsets(extra)
                        .fold(0u64, |acc, s| acc | 1u64 << index[&(bottom | s)]);
                    (members, subset::size(top))
                })
                .collect()
        })
        .collect();
    let full: u64 = (1u64 << order.len()) - 1;
    let mut memo = HashMap::new();
    Ok(best(0, full, p.n(), &intervals_from, &mut memo))
}

// Best achievable min top size for the elements outside `covered`.
fn best(
    covered: u64,
    full: u64,
    n: usize,
    intervals_from: &[Vec<(u64, usize)>],
    memo: &mut HashMap<u64, usize>,
) -> usize {
    if covered == full {
        return usize::MAX;
    }
    if let Some(&v) = memo.get(&covered) {
        return v;
    }
    let least = (!covered).trailing_zeros() as usize;
    let mut result = 0;
    for &(members, top_size) in &intervals_from[least] {
        if members & covered != 0 || top_size <= result {
            continue;
        }
        let rest = best(covered | members, full, n, intervals_from, memo);
        result = result.max(top_size.min(rest));
        if result == n {
            break;
        }
    }
    memo.insert(covered, result);
    result
}
