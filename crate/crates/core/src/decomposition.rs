//! Splitting a d-uniform clutter into d disjoint minimal vertex covers, each
//! meeting every edge exactly once.
//!
//! The recursion takes a unit cover `V_1`, contracts it (setting its
//! variables to 1 leaves a (d-1)-uniform minor on `V \ V_1`), decomposes the
//! minor and lifts the parts back. Every unit cover is tried at each level,
//! so `None` means no sequence of choices works.

use std::collections::BTreeSet;

use crate::bounds::{paper_upper_integral, Rational};
use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::subset;

/// Ordered disjoint vertex sets `V_1..V_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DPartition {
    pub parts: Vec<u32>,
}

impl DPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|&p| subset::size(p)).collect()
    }

    /// Parts in canonical order, for comparing partitions as unordered
    /// families.
    pub fn canonical(&self) -> DPartition {
        let mut parts = self.parts.clone();
        parts.sort_by_key(|&p| subset::canonical_key(p));
        DPartition { parts }
    }
}

/// Minimal vertex covers meeting every edge in exactly one vertex,
/// canonically ordered.
pub fn unit_covers(c: &Clutter) -> Result<Vec<u32>> {
    c.uniform_degree().ok_or(Error::NotUniform)?;
    Ok(c.minimal_vertex_covers()
        .into_iter()
        .filter(|&u| c.edges().iter().all(|&e| subset::size(e & u) == 1))
        .collect())
}

/// The canonical (least by size, then mask) unit cover.
pub fn find_unit_cover(c: &Clutter) -> Result<Option<u32>> {
    Ok(unit_covers(c)?.into_iter().next())
}

/// First decomposition in canonical choice order, checked against `c`.
pub fn decompose_dpartition(c: &Clutter) -> Result<Option<DPartition>> {
    let d = c.uniform_degree().ok_or(Error::NotUniform)?;
    let mut first = None;
    search(c, d, &mut |parts| {
        first = Some(parts);
        true
    })?;
    match first {
        Some(parts) => {
            let p = DPartition { parts };
            if !verify_dpartition(c, &p) {
                return Err(Error::InvariantViolation(format!(
                    "decomposition {:?} fails verification",
                    p.parts
                )));
            }
            Ok(Some(p))
        }
        None => Ok(None),
    }
}

/// Every decomposition as an unordered family, canonically ordered and
/// deduplicated.
pub fn all_dpartitions(c: &Clutter) -> Result<Vec<DPartition>> {
    let d = c.uniform_degree().ok_or(Error::NotUniform)?;
    let mut found = BTreeSet::new();
    search(c, d, &mut |parts| {
        found.insert(DPartition { parts }.canonical());
        false
    })?;
    for p in &found {
        if !verify_dpartition(c, p) {
            return Err(Error::InvariantViolation(format!(
                "decomposition {:?} fails verification",
                p.parts
            )));
        }
    }
    Ok(found.into_iter().collect())
}

/// The smallest integral-clutter bound over all decompositions of `c`, with
/// the decomposition attaining it. Different decompositions can have
/// different part sizes, hence different bounds.
pub fn tightest_integral_bound(c: &Clutter) -> Result<Option<(DPartition, Rational)>> {
    let edges = c.edges().len() as u64;
    let mut best: Option<(DPartition, Rational)> = None;
    for p in all_dpartitions(c)? {
        let bound = paper_upper_integral(&p.sizes(), edges)?;
        if best.as_ref().map_or(true, |(_, b)| bound < *b) {
            best = Some((p, bound));
        }
    }
    Ok(best)
}

// Depth-first over unit-cover choices. `visit` receives each complete
// decomposition in original labels and returns true to stop.
fn search(c: &Clutter, d: usize, visit: &mut dyn FnMut(Vec<u32>) -> bool) -> Result<bool> {
    if d == 1 {
        return Ok(visit(vec![c.vertex_mask()]));
    }
    for u in unit_covers(c)? {
        let minor = c.contract_set(u)?;
        if minor.clutter.uniform_degree() != Some(d - 1) {
            continue;
        }
        let stop = search(&minor.clutter, d - 1, &mut |rest| {
            let mut parts = Vec::with_capacity(d);
            parts.push(u);
            parts.extend(rest.into_iter().map(|p| minor.lift(p)));
            visit(parts)
        })?;
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Checks independently that the parts are pairwise disjoint, cover every
/// vertex, are each a minimal vertex cover of `c`, and meet every edge in
/// exactly one vertex.
pub fn verify_dpartition(c: &Clutter, p: &DPartition) -> bool {
    let disjoint = p
        .parts
        .iter()
        .enumerate()
        .all(|(i, &a)| p.parts[i + 1..].iter().all(|&b| a & b == 0));
    let union = p.parts.iter().fold(0, |m, &x| m | x) == c.vertex_mask();
    let minimal = p.parts.iter().all(|&x| c.is_minimal_cover(x));
    let unit = c
        .edges()
        .iter()
        .all(|&e| p.parts.iter().all(|&x| subset::size(e & x) == 1));
    disjoint && union && minimal && unit
}
