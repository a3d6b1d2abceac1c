//! Fixtures shared by the criterion benchmarks.

use sdepth_core::{build_poset, complete_kpartite, CharacteristicPoset};

/// Poset of the d-uniform complete clutter with the given part sizes.
pub fn complete_poset(d: usize, parts: &[usize]) -> CharacteristicPoset {
    let g = complete_kpartite(d, parts).expect("valid family parameters");
    build_poset(&g.clutter).expect("within the search cap")
}
