//! Clutters (antichain hypergraphs), their minors, vertex covers and the
//! complete k-partite generator.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset;

/// Largest vertex count accepted anywhere in the crate.
pub const VERTEX_CAP: usize = 24;

/// A 0-based vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }

    pub fn label(self) -> usize {
        self.0 + 1
    }
}

/// A clutter on vertices `0..n`: a nonempty antichain of nonempty edges
/// covering every vertex. Edges are kept sorted by mask value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clutter {
    n: usize,
    edges: Vec<u32>,
}

impl Clutter {
    /// Validates and canonicalizes. Duplicate edges are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = u32>) -> Result<Self> {
        Self::with_cap(n, edges, VERTEX_CAP)
    }

    pub fn with_cap(n: usize, edges: impl IntoIterator<Item = u32>, cap: usize) -> Result<Self> {
        let cap = cap.min(VERTEX_CAP);
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        let all = subset::full(n);
        let mut edges: Vec<u32> = edges.into_iter().collect();
        for (i, &e) in edges.iter().enumerate() {
            if e == 0 {
                return Err(Error::EmptyEdge(i));
            }
            if e & !all != 0 {
                let bad = (e & !all).trailing_zeros() as i64 + 1;
                return Err(Error::VertexOutOfRange { vertex: bad, n });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.is_empty() {
            return Err(Error::NoEdges);
        }
        for (i, &a) in edges.iter().enumerate() {
            for &b in &edges[i + 1..] {
                if a & b == a {
                    return Err(Error::ContainedEdge { inner: a, outer: b });
                }
                if a & b == b {
                    return Err(Error::ContainedEdge { inner: b, outer: a });
                }
            }
        }
        let used = edges.iter().fold(0, |m, e| m | e);
        if used != all {
            return Err(Error::IsolatedVertex(
                (!used & all).trailing_zeros() as usize
            ));
        }
        Ok(Self { n, edges })
    }

    /// Builds from 1-based vertex lists.
    pub fn from_labels(n: usize, edges: &[Vec<i64>]) -> Result<Self> {
        let masks = edges
            .iter()
            .map(|edge| {
                edge.iter().try_fold(0u32, |m, &v| {
                    if v < 1 || v as usize > n || v as usize > VERTEX_CAP {
                        Err(Error::VertexOutOfRange { vertex: v, n })
                    } else {
                        Ok(m | 1 << (v - 1))
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn vertex_mask(&self) -> u32 {
        subset::full(self.n)
    }

    pub fn min_edge_size(&self) -> usize {
        self.edges
            .iter()
            .map(|&e| subset::size(e))
            .min()
            .unwrap_or(0)
    }

    /// Edge sizes when every edge has the same size `d`.
    pub fn uniform_degree(&self) -> Option<usize> {
        let d = subset::size(self.edges[0]);
        self.edges
            .iter()
            .all(|&e| subset::size(e) == d)
            .then_some(d)
    }

    pub fn is_cover(&self, set: u32) -> bool {
        self.edges.iter().all(|&e| e & set != 0)
    }

    /// True when `set` meets every edge and dropping any member breaks that.
    pub fn is_minimal_cover(&self, set: u32) -> bool {
        self.is_cover(set)
            && subset::members(set).all(|v| {
                let rest = set & !(1 << v);
                self.edges.iter().any(|&e| e & rest == 0)
            })
    }

    /// Edges as 1-based sorted vertex lists, sorted lexicographically.
    pub fn edge_labels(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.edges.iter().map(|&e| subset::to_labels(e)).collect();
        out.sort();
        out
    }

    /// Set variable `v` to 0: drop every edge through `v`, then drop the
    /// vertices left uncovered.
    pub fn deletion(&self, v: VertexId) -> Result<Minor> {
        self.check_vertex(v)?;
        let bit = 1u32 << v.0;
        let kept: Vec<u32> = self
            .edges
            .iter()
            .copied()
            .filter(|e| e & bit == 0)
            .collect();
        if kept.is_empty() {
            return Err(Error::EmptyResult);
        }
        Ok(Minor::compact(&kept, &identity_labels(self.n)))
    }

    /// Set variable `v` to 1: remove `v` from every edge and keep only the
    /// inclusion-minimal results.
    pub fn contraction(&self, v: VertexId) -> Result<Minor> {
        self.check_vertex(v)?;
        let bit = 1u32 << v.0;
        if self.edges.contains(&bit) {
            return Err(Error::UnitIdeal);
        }
        let stripped: Vec<u32> = self.edges.iter().map(|e| e & !bit).collect();
        Ok(Minor::compact(
            &minimalize(stripped),
            &identity_labels(self.n),
        ))
    }

    /// Contracts every vertex of `set` one at a time in ascending order,
    /// re-minimalizing after each step. Vertices that already disappeared as
    /// isolated are skipped.
    pub fn contract_set(&self, set: u32) -> Result<Minor> {
        let mut minor = Minor {
            clutter: self.clone(),
            labels: identity_labels(self.n),
        };
        for v in subset::members(set) {
            let Some(local) = minor.labels.iter().position(|l| l.0 == v) else {
                continue;
            };
            let step = minor.clutter.contraction(VertexId(local))?;
            minor = minor.then(step);
        }
        Ok(minor)
    }

    /// All inclusion-minimal vertex covers, ordered by size then mask value.
    pub fn minimal_vertex_covers(&self) -> Vec<u32> {
        let mut found = BTreeSet::new();
        self.cover_branch(0, 0, &mut found);
        let mut out: Vec<u32> = found.into_iter().collect();
        out.sort_by_key(|&m| subset::canonical_key(m));
        out
    }

    // Branch on the vertices of the first edge missed by `chosen`. Vertices
    // already branched on at this node are forbidden in later siblings, so
    // every cover is reached at most once.
    fn cover_branch(&self, chosen: u32, forbidden: u32, found: &mut BTreeSet<u32>) {
        let Some(&missed) = self.edges.iter().find(|&&e| e & chosen == 0) else {
            found.insert(chosen);
            return;
        };
        let mut forbidden = forbidden;
        for v in subset::members(missed & !forbidden) {
            let next = chosen | 1 << v;
            if self.every_member_has_private_edge(next) {
                self.cover_branch(next, forbidden, found);
            }
            forbidden |= 1 << v;
        }
    }

    // A set in which some member has no private edge cannot grow into a
    // minimal cover.
    fn every_member_has_private_edge(&self, set: u32) -> bool {
        subset::members(set).all(|v| {
            let bit = 1u32 << v;
            self.edges.iter().any(|&e| e & set == bit)
        })
    }

    /// Checks that no edge meets a block twice. Condition (2) of the usual
    /// definition (minimal number of blocks) is not checked.
    pub fn validate_kpartite(&self, p: &VertexPartition) -> Result<bool> {
        p.check_covers(self.n)?;
        Ok(self
            .edges
            .iter()
            .all(|&e| p.blocks.iter().all(|&b| subset::size(e & b) <= 1)))
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v.0 as i64 + 1,
                n: self.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edge_labels()
            .iter()
            .map(|e| {
                let s: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", s.join(","))
            })
            .collect();
        write!(f, "n={} [{}]", self.n, edges.join(" "))
    }
}

/// A clutter obtained by deletions/contractions, with `labels[i]` giving the
/// original vertex behind local vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub clutter: Clutter,
    pub labels: Vec<VertexId>,
}

impl Minor {
    // Drops uncovered vertices and renumbers the rest in ascending order.
    fn compact(edges: &[u32], labels: &[VertexId]) -> Self {
        let used = edges.iter().fold(0, |m, e| m | e);
        let keep: Vec<usize> = subset::members(used).collect();
        let edges: Vec<u32> = edges.iter().map(|&e| compress(e, used)).collect();
        let clutter = Clutter::new(keep.len(), edges)
            .expect("compacted minor of a valid clutter is a valid clutter");
        Self {
            clutter,
            labels: keep.into_iter().map(|i| labels[i]).collect(),
        }
    }

    fn then(self, step: Minor) -> Minor {
        Minor {
            labels: step.labels.iter().map(|l| self.labels[l.0]).collect(),
            clutter: step.clutter,
        }
    }

    /// Maps a local vertex set back to original vertex indices.
    pub fn lift(&self, local: u32) -> u32 {
        subset::members(local).fold(0, |m, i| m | 1 << self.labels[i].0)
    }
}

/// Gathers the bits of `mask` that sit at positions of `positions` into the
/// low bits (software `pext`).
fn compress(mask: u32, positions: u32) -> u32 {
    subset::members(positions)
        .enumerate()
        .filter(|&(_, p)| mask & 1 << p != 0)
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn identity_labels(n: usize) -> Vec<VertexId> {
    (0..n).map(VertexId).collect()
}

/// Keeps the inclusion-minimal members of a family, sorted and deduplicated.
pub fn minimalize(mut sets: Vec<u32>) -> Vec<u32> {
    sets.sort_by_key(|&m| subset::canonical_key(m));
    sets.dedup();
    let mut out: Vec<u32> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|&m| m & s == m) {
            out.push(s);
        }
    }
    out.sort_unstable();
    out
}

/// Ordered disjoint nonempty vertex blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    pub blocks: Vec<u32>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<u32>) -> Self {
        Self { blocks }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|&b| subset::size(b)).collect()
    }

    /// Blocks must be nonempty, disjoint and together equal `0..n`.
    pub fn check_covers(&self, n: usize) -> Result<()> {
        let mut seen = 0u32;
        for &b in &self.blocks {
            if b == 0 || b & seen != 0 {
                return Err(Error::PartitionMismatch);
            }
            seen |= b;
        }
        if seen != subset::full(n) {
            return Err(Error::PartitionMismatch);
        }
        Ok(())
    }
}

/// Output of [`complete_kpartite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteKPartite {
    pub clutter: Clutter,
    pub partition: VertexPartition,
    pub degree: usize,
    /// `sizes[i] = input[permutation[i]]`.
    pub permutation: Vec<usize>,
}

/// The d-uniform complete k-partite clutter with block sizes `parts`.
///
/// Block sizes are sorted ascending (stable) and blocks take consecutive
/// vertex ranges in that order.
pub fn complete_kpartite(d: usize, parts: &[usize]) -> Result<CompleteKPartite> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if parts.contains(&0) {
        return Err(Error::ZeroPartSize);
    }
    let k = parts.len();
    if d > k {
        return Err(Error::DegreeExceedsParts { d, k });
    }
    let n: usize = parts.iter().sum();
    if n > VERTEX_CAP {
        return Err(Error::CapExceeded { n, cap: VERTEX_CAP });
    }
    let mut permutation: Vec<usize> = (0..k).collect();
    permutation.sort_by_key(|&i| parts[i]);
    let mut blocks = Vec::with_capacity(k);
    let mut start = 0;
    for &i in &permutation {
        blocks.push(subset::full(parts[i]) << start);
        start += parts[i];
    }
    let edges = complete_edges(&blocks, d);
    Ok(CompleteKPartite {
        clutter: Clutter::new(n, edges)?,
        partition: VertexPartition::new(blocks),
        degree: d,
        permutation,
    })
}

/// Every d-set meeting `d` distinct blocks in one vertex each.
pub fn complete_edges(blocks: &[u32], d: usize) -> Vec<u32> {
    let mut edges = Vec::new();
    for chosen in subset::combinations(subset::full(blocks.len()), d) {
        let mut partial = vec![0u32];
        for b in subset::members(chosen) {
            partial = partial
                .iter()
                .flat_map(|&m| subset::members(blocks[b]).map(move |v| m | 1 << v))
                .collect();
        }
        edges.extend(partial);
    }
    edges.sort_unstable();
    edges
}

/// A random antichain of nonempty subsets of `0..n`: pick each nonempty
/// subset with probability 1/4, then keep the minimal ones.
pub fn random_antichain<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u32> {
    loop {
        let picks: Vec<u32> = (1..=subset::full(n))
            .filter(|_| rng.gen_bool(0.25))
            .collect();
        if !picks.is_empty() {
            return minimalize(picks);
        }
    }
}
