//! Characteristic posets of squarefree monomial ideals and exact Stanley
//! depth by interval partition search.
//!
//! For a squarefree ideal with generator supports `A_1..A_q` in `n`
//! variables, the poset is the up-set `{C ⊆ [n] : C ⊇ A_i for some i}` of the
//! Boolean lattice. A partition of it into intervals `[C, D]` is a Stanley
//! decomposition whose depth is `min |D|`, and the Stanley depth of the ideal
//! is the best such minimum over all interval partitions.
//!
//! # Search
//!
//! [`sdepth_at_least`] decides whether some partition has every top of size
//! at least `k`. Elements are visited in canonical order (cardinality, then
//! mask value). The least uncovered element is necessarily the bottom of its
//! interval, so the search branches only on its top.
//!
//! Two reductions keep the search small without changing the answer:
//!
//! * An interval `[X, D]` with `|D| > k` splits into intervals whose tops have
//!   size exactly `k` plus singletons of size above `k`. So bottoms below
//!   level `k` only ever take tops of size exactly `k`, and everything at
//!   level `k` or above that is still uncovered becomes a singleton.
//! * Every uncovered element below level `k` will become a bottom, and a
//!   bottom at level `i` consumes `C(k-i, j-i)` elements at level `j`. Walking
//!   the levels upward gives the exact number of bottoms each level must
//!   supply; a negative count refutes the current branch.
//!
//! The first witness in depth-first order is the canonical certificate.
//! With more than one thread the root choices are explored in parallel and
//! the least successful root branch wins, which reproduces the sequential
//! certificate exactly.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::clutter::{minimalize, Clutter};
use crate::error::{Error, Result};
use crate::subset;

/// Largest `n` accepted for exact Stanley depth.
pub const SDEPTH_CAP: usize = 20;

const ABSENT: u32 = u32::MAX;

/// The up-closed family of subsets of `[n]` containing some generator.
#[derive(Debug, Clone)]
pub struct CharacteristicPoset {
    n: usize,
    generators: Vec<u32>,
    // canonical order: cardinality, then mask value
    elements: Vec<u32>,
    // mask -> position in `elements`, ABSENT outside the poset
    position: Vec<u32>,
}

impl CharacteristicPoset {
    /// Poset of the ideal generated by `generators` (any family of subsets of
    /// `[n]`; non-minimal members are discarded). The empty generator gives
    /// the unit ideal.
    pub fn from_generators(n: usize, generators: &[u32]) -> Result<Self> {
        if n > SDEPTH_CAP {
            return Err(Error::CapExceeded { n, cap: SDEPTH_CAP });
        }
        if n == 0 || generators.is_empty() {
            return Err(Error::NoEdges);
        }
        let all = subset::full(n);
        if let Some(&g) = generators.iter().find(|&&g| g & !all != 0) {
            let bad = (g & !all).trailing_zeros() as i64 + 1;
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        let generators = minimalize(generators.to_vec());

        let mut member = vec![false; 1usize << n];
        for &g in &generators {
            for extra in subset::subsets(all & !g) {
                member[(g | extra) as usize] = true;
            }
        }
        let mut elements: Vec<u32> = (0..=all).filter(|&m| member[m as usize]).collect();
        elements.sort_by_key(|&m| subset::canonical_key(m));
        let mut position = vec![ABSENT; 1usize << n];
        for (i, &e) in elements.iter().enumerate() {
            position[e as usize] = i as u32;
        }
        Ok(Self {
            n,
            generators,
            elements,
            position,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimal generator supports, sorted by mask value.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Ground set in canonical order.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, set: u32) -> bool {
        (set as usize) < self.position.len() && self.position[set as usize] != ABSENT
    }

    pub fn min_generator_size(&self) -> usize {
        self.generators
            .iter()
            .map(|&g| subset::size(g))
            .min()
            .unwrap_or(0)
    }
}

/// Poset of the edge ideal of `c`.
pub fn build_poset(c: &Clutter) -> Result<CharacteristicPoset> {
    CharacteristicPoset::from_generators(c.n(), c.edges())
}

/// `[bottom, top]` in the Boolean lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub bottom: u32,
    pub top: u32,
}

impl Interval {
    pub fn new(bottom: u32, top: u32) -> Self {
        Self { bottom, top }
    }

    pub fn len(&self) -> usize {
        1 << subset::size(self.top & !self.bottom)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        subset::subsets(self.top & !self.bottom).map(move |s| self.bottom | s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalPartition {
    pub intervals: Vec<Interval>,
}

impl IntervalPartition {
    /// Smallest top size, the Stanley depth of the decomposition.
    pub fn depth(&self) -> Option<usize> {
        self.intervals.iter().map(|i| subset::size(i.top)).min()
    }
}

/// Outcome of [`exact_sdepth`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdepthResult {
    pub value: usize,
    pub certificate: IntervalPartition,
    /// `value + 1`, the level whose search was exhausted; `None` when
    /// `value == n`.
    pub refutation_level: Option<usize>,
}

/// Search settings. Results do not depend on `threads`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { threads: 1 }
    }
}

/// True iff the intervals are pairwise disjoint, cover the poset exactly, have
/// bottoms in the poset and tops of size at least `k`.
pub fn validate_partition(p: &CharacteristicPoset, part: &IntervalPartition, k: usize) -> bool {
    let all = subset::full(p.n);
    let mut seen = vec![false; 1usize << p.n];
    let mut count = 0usize;
    for iv in &part.intervals {
        if iv.bottom & !iv.top != 0
            || iv.top & !all != 0
            || !p.contains(iv.bottom)
            || subset::size(iv.top) < k
        {
            return false;
        }
        for m in iv.members() {
            if std::mem::replace(&mut seen[m as usize], true) {
                return false;
            }
            count += 1;
        }
    }
    count == p.len()
}

/// A partition whose tops all have size at least `k`, if one exists.
pub fn sdepth_at_least(p: &CharacteristicPoset, k: usize) -> Result<Option<IntervalPartition>> {
    sdepth_at_least_with(p, k, SearchConfig::default())
}

pub fn sdepth_at_least_with(
    p: &CharacteristicPoset,
    k: usize,
    config: SearchConfig,
) -> Result<Option<IntervalPartition>> {
    let min = p.min_generator_size();
    if k < min || k > p.n {
        return Err(Error::DepthOutOfRange { k, min, max: p.n });
    }
    let mut search = Search::new(p, k);
    let found = if config.threads > 1 {
        search.solve_parallel(config.threads)
    } else {
        search.solve().then_some(search)
    };
    Ok(found.map(|s| s.certificate()))
}

/// Largest `k` with a partition of tops all of size `>= k`, with certificate.
/// Levels are tried from `n` downward.
pub fn exact_sdepth(p: &CharacteristicPoset) -> Result<SdepthResult> {
    exact_sdepth_with(p, SearchConfig::default())
}

pub fn exact_sdepth_with(p: &CharacteristicPoset, config: SearchConfig) -> Result<SdepthResult> {
    for k in (p.min_generator_size()..=p.n).rev() {
        if let Some(certificate) = sdepth_at_least_with(p, k, config)? {
            if !validate_partition(p, &certificate, k) || certificate.depth() != Some(k) {
                return Err(Error::InvariantViolation(format!(
                    "certificate at level {k} failed validation"
                )));
            }
            return Ok(SdepthResult {
                value: k,
                certificate,
                refutation_level: (k < p.n).then_some(k + 1),
            });
        }
    }
    // Every element as its own interval always reaches the generator level.
    Err(Error::InvariantViolation("no feasible level found".into()))
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    bottom: u32,
    cursor: usize,
    free: u32,
    pattern: u64,
    limit: u64,
    chosen: Option<u32>,
}

#[derive(Clone)]
struct Search<'a> {
    poset: &'a CharacteristicPoset,
    k: usize,
    covered: Vec<bool>,
    uncovered_at: Vec<i64>,
    chosen: Vec<Interval>,
    binom: Vec<Vec<i64>>,
    // elements of cardinality j occupy level_start[j]..level_start[j + 1]
    level_start: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(poset: &'a CharacteristicPoset, k: usize) -> Self {
        let mut uncovered_at = vec![0i64; poset.n + 1];
        for &e in &poset.elements {
            uncovered_at[subset::size(e)] += 1;
        }
        let mut binom = vec![vec![0i64; poset.n + 1]; poset.n + 1];
        for a in 0..=poset.n {
            binom[a][0] = 1;
            for b in 1..=a {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        let mut level_start = vec![0usize; poset.n + 2];
        for j in 0..=poset.n {
            level_start[j + 1] = level_start[j] + uncovered_at[j] as usize;
        }
        Self {
            poset,
            k,
            level_start,
            covered: vec![false; 1usize << poset.n],
            uncovered_at,
            chosen: Vec::new(),
            binom,
        }
    }

    // Least uncovered element at or after `from` that sits below level k.
    fn next_bottom(&self, from: usize) -> Option<usize> {
        let elements = &self.poset.elements;
        let mut c = from;
        while c < elements.len() && self.covered[elements[c] as usize] {
            c += 1;
        }
        (c < elements.len() && subset::size(elements[c]) < self.k).then_some(c)
    }

    // Walking levels upward from `level`, the number of bottoms each level
    // must still supply. `None` when some level would need a negative count.
    fn bottoms_needed(&self, level: usize) -> Option<[i64; SDEPTH_CAP + 1]> {
        let k = self.k;
        let mut bottoms = [0i64; SDEPTH_CAP + 1];
        for j in level..=k {
            let mut b = self.uncovered_at[j];
            for i in level..j {
                b -= bottoms[i] * self.binom[k - i][j - i];
            }
            if b < 0 {
                return None;
            }
            bottoms[j] = b;
        }
        Some(bottoms)
    }

    // Pruning at a new bottom position: level counts, a free top for every
    // pending bottom on this level, and on levels that must supply no
    // bottoms, a free lower neighbour for every uncovered element.
    fn viable(&self, cursor: usize) -> bool {
        let elements = &self.poset.elements;
        let level = subset::size(elements[cursor]);
        let Some(bottoms) = self.bottoms_needed(level) else {
            return false;
        };
        let all = subset::full(self.poset.n);
        let level_end = self.level_start[level + 1];
        let tops_ok = elements[cursor..level_end]
            .iter()
            .filter(|&&e| !self.covered[e as usize])
            .all(|&e| {
                subset::combinations(all & !e, self.k - level)
                    .any(|extra| self.interval_free(e, e | extra))
            });
        if !tops_ok {
            return false;
        }
        (level + 1..=self.k).filter(|&j| bottoms[j] == 0).all(|j| {
            elements[self.level_start[j]..self.level_start[j + 1]]
                .iter()
                .filter(|&&y| !self.covered[y as usize])
                .all(|&y| {
                    subset::members(y).any(|v| {
                        let below = y & !(1 << v);
                        self.poset.contains(below) && !self.covered[below as usize]
                    })
                })
        })
    }

    fn frame(&self, cursor: usize) -> Frame {
        let bottom = self.poset.elements[cursor];
        let free = subset::full(self.poset.n) & !bottom;
        let t = self.k - subset::size(bottom);
        Frame {
            bottom,
            cursor,
            free,
            pattern: (1u64 << t) - 1,
            limit: 1u64 << subset::size(free),
            chosen: None,
        }
    }

    fn interval_free(&self, bottom: u32, top: u32) -> bool {
        subset::subsets(top & !bottom).all(|s| !self.covered[(bottom | s) as usize])
    }

    // Next size-k top of the frame's bottom whose interval is entirely
    // uncovered, in ascending mask order.
    fn next_top(&self, f: &mut Frame) -> Option<u32> {
        while f.pattern < f.limit {
            let top = f.bottom | subset::deposit(f.pattern as u32, f.free);
            f.pattern = subset::next_same_popcount(f.pattern as u32);
            if self.interval_free(f.bottom, top) {
                return Some(top);
            }
        }
        None
    }

    fn set_covered(&mut self, bottom: u32, top: u32, value: bool) {
        let delta = if value { -1 } else { 1 };
        for s in subset::subsets(top & !bottom) {
            let m = bottom | s;
            self.covered[m as usize] = value;
            self.uncovered_at[subset::size(m)] += delta;
        }
    }

    fn place(&mut self, bottom: u32, top: u32) {
        self.set_covered(bottom, top, true);
        self.chosen.push(Interval::new(bottom, top));
    }

    fn unplace(&mut self, bottom: u32, top: u32) {
        self.set_covered(bottom, top, false);
        self.chosen.pop();
    }

    // Depth-first search from the current covered state. On success the
    // state holds the placed intervals.
    fn solve(&mut self) -> bool {
        self.solve_until(&|| false)
    }

    // Depth-first search that gives up (returning false) once `stop` holds.
    fn solve_until(&mut self, stop: &dyn Fn() -> bool) -> bool {
        let Some(start) = self.next_bottom(0) else {
            return true;
        };
        if !self.viable(start) {
            return false;
        }
        let mut stack = vec![self.frame(start)];
        let mut steps = 0u32;
        while let Some(f) = stack.last_mut() {
            steps = steps.wrapping_add(1);
            if steps % 1024 == 0 && stop() {
                return false;
            }
            if let Some(top) = f.chosen.take() {
                let bottom = f.bottom;
                self.unplace(bottom, top);
            }
            let mut frame = *f;
            match self.next_top(&mut frame) {
                None => {
                    stack.pop();
                }
                Some(top) => {
                    frame.chosen = Some(top);
                    *stack.last_mut().expect("frame present") = frame;
                    self.place(frame.bottom, top);
                    match self.next_bottom(frame.cursor + 1) {
                        None => return true,
                        Some(c) => {
                            if self.viable(c) {
                                let child = self.frame(c);
                                stack.push(child);
                            }
                        }
                    }
                }
            }
        }
        false
    }

    // Root-level parallel search; the least successful root choice wins.
    // Branches above the best success so far are abandoned.
    fn solve_parallel(self, threads: usize) -> Option<Search<'a>> {
        let Some(start) = self.next_bottom(0) else {
            return Some(self);
        };
        if !self.viable(start) {
            return None;
        }
        let mut root = self.frame(start);
        let mut tops = Vec::new();
        while let Some(top) = self.next_top(&mut root) {
            tops.push(top);
        }
        let winner = AtomicUsize::new(usize::MAX);
        let branch = |(i, top): (usize, &u32)| {
            if winner.load(Ordering::Relaxed) < i {
                return None;
            }
            let mut s = self.clone();
            s.place(root.bottom, *top);
            let found = s.solve_until(&|| winner.load(Ordering::Relaxed) < i);
            if found {
                winner.fetch_min(i, Ordering::Relaxed);
            }
            found.then_some(s)
        };
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| tops.par_iter().enumerate().find_map_first(branch)),
            Err(_) => tops.iter().enumerate().find_map(branch),
        }
    }

    fn certificate(&self) -> IntervalPartition {
        let mut intervals = self.chosen.clone();
        intervals.extend(
            self.poset
                .elements
                .iter()
                .filter(|&&e| !self.covered[e as usize])
                .map(|&e| Interval::new(e, e)),
        );
        intervals.sort_by_key(|iv| subset::canonical_key(iv.bottom));
        IntervalPartition { intervals }
    }
}
