//! Closed-form Stanley depth bounds for complete k-partite clutters and the
//! counting quantities behind them.
//!
//! All values are exact rationals. For a d-uniform complete k-partite clutter
//! with part sizes `r`, the upper bound is
//!
//! ```text
//! d + (1/|E|) · Σ_{j_1<…<j_d} Σ_i C(r_{j_i}, 2) · (r_{j_1}⋯r_{j_d}) / r_{j_i}
//! ```
//!
//! where the double sum is meant to count the squarefree degree-(d+1)
//! monomials of the ideal. For `k = d` it does; for `k > d` it misses the
//! (d+1)-sets that meet d+1 distinct parts, so [`BoundsReport`] carries the
//! brute-force count next to it.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::clutter::{complete_edges, Clutter, VertexPartition};
use crate::error::{Error, Result};
use crate::subset;

pub type Rational = Ratio<i64>;

/// `C(r, 2)`, zero for `r < 2`.
pub fn binom2(r: u64) -> u64 {
    r * r.saturating_sub(1) / 2
}

fn check_parts(r: &[usize], d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if r.contains(&0) {
        return Err(Error::ZeroPartSize);
    }
    if d > r.len() {
        return Err(Error::DegreeExceedsParts { d, k: r.len() });
    }
    Ok(())
}

/// Number of edges of the d-uniform complete clutter on parts `r`: the
/// elementary symmetric polynomial `e_d(r)`.
pub fn edge_count(r: &[usize], d: usize) -> Result<u64> {
    check_parts(r, d)?;
    // e[j] holds e_j of the prefix processed so far.
    let mut e = vec![0u64; d + 1];
    e[0] = 1;
    for &x in r {
        for j in (1..=d).rev() {
            e[j] += e[j - 1] * x as u64;
        }
    }
    Ok(e[d])
}

/// The double sum in the k-partite bound.
pub fn paper_numerator(r: &[usize], d: usize) -> Result<u64> {
    check_parts(r, d)?;
    let mut total = 0u64;
    for chosen in subset::combinations(subset::full(r.len()), d) {
        let sizes: Vec<u64> = subset::members(chosen).map(|j| r[j] as u64).collect();
        let product: u64 = sizes.iter().product();
        total += sizes
            .iter()
            .map(|&s| binom2(s) * (product / s))
            .sum::<u64>();
    }
    Ok(total)
}

/// `d + paper_numerator(r, d) / e_d(r)`.
pub fn paper_upper_kpartite(r: &[usize], d: usize) -> Result<Rational> {
    let numerator = paper_numerator(r, d)?;
    let edges = edge_count(r, d)?;
    Ok(Rational::from_integer(d as i64) + Rational::new(numerator as i64, edges as i64))
}

/// `d + Σ (r_i − 1)/2` with `d = r.len()`.
pub fn paper_upper_dpartite(r: &[usize]) -> Rational {
    let d = r.len() as i64;
    let halves: i64 = r.iter().map(|&x| x as i64 - 1).sum();
    Rational::from_integer(d) + Rational::new(halves, 2)
}

/// `d + (Π r_i / |E|) · Σ (r_i − 1)/2` for a d-partite clutter with part sizes
/// `r` and `edge_count` edges.
pub fn paper_upper_integral(r: &[usize], edge_count: u64) -> Result<Rational> {
    if r.contains(&0) {
        return Err(Error::ZeroPartSize);
    }
    let product: u64 = r.iter().map(|&x| x as u64).product();
    if edge_count == 0 || edge_count > product {
        return Err(Error::EdgeCountOutOfRange {
            count: edge_count,
            max: product,
        });
    }
    let halves: i64 = r.iter().map(|&x| x as i64 - 1).sum();
    let scale = Rational::new(product as i64, edge_count as i64);
    Ok(Rational::from_integer(r.len() as i64) + scale * Rational::new(halves, 2))
}

/// `(n + 2)/2`, stated for complete bipartite graphs with `n >= 4`.
pub fn bipartite_upper(n: usize) -> Result<Rational> {
    if n < 4 {
        return Err(Error::TooFewVertices(n));
    }
    Ok(Rational::new(n as i64 + 2, 2))
}

/// Number of (d+1)-subsets of the vertex set containing an edge, counted by
/// enumeration.
pub fn count_support_d_plus_1(c: &Clutter) -> Result<u64> {
    let d = c.uniform_degree().ok_or(Error::NotUniform)?;
    let count = subset::combinations(c.vertex_mask(), d + 1)
        .filter(|&s| c.edges().iter().any(|&e| e & s == e))
        .count();
    Ok(count as u64)
}

pub fn floor(q: Rational) -> i64 {
    q.floor().to_integer()
}

/// Every bound and count for one complete k-partite instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub d: usize,
    pub k: usize,
    pub n: usize,
    pub r: Vec<usize>,
    pub edge_count: u64,
    pub lower: usize,
    pub paper_numerator: u64,
    #[serde(with = "rational_json")]
    pub paper_upper: Rational,
    pub paper_upper_floor: i64,
    #[serde(with = "rational_json::option")]
    pub bipartite_upper: Option<Rational>,
    pub bruteforce_count: u64,
    #[serde(with = "rational_json")]
    pub corrected_upper: Rational,
    /// Brute-force count differs from the closed-form numerator.
    pub count_discrepancy: bool,
}

impl BoundsReport {
    /// FLAG condition: an exact value above the floor of the closed-form bound.
    pub fn exceeds_paper_floor(&self, exact: usize) -> bool {
        exact as i64 > self.paper_upper_floor
    }
}

/// Bounds for `c`, which must be exactly the d-uniform complete clutter on
/// the blocks of `p`.
pub fn bounds_report(c: &Clutter, p: &VertexPartition, d: usize) -> Result<BoundsReport> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if d > p.blocks.len() {
        return Err(Error::DegreeExceedsParts {
            d,
            k: p.blocks.len(),
        });
    }
    if !c.validate_kpartite(p)? || complete_edges(&p.blocks, d) != c.edges() {
        return Err(Error::NotComplete);
    }
    let r = p.sizes();
    let k = r.len();
    let edge_count = edge_count(&r, d)?;
    let paper_numerator = paper_numerator(&r, d)?;
    let paper_upper = paper_upper_kpartite(&r, d)?;
    let bruteforce_count = count_support_d_plus_1(c)?;
    let lower = Rational::from_integer(d as i64);
    Ok(BoundsReport {
        d,
        k,
        n: c.n(),
        edge_count,
        lower: d,
        paper_numerator,
        paper_upper,
        paper_upper_floor: floor(paper_upper),
        bipartite_upper: if d == 2 && k == 2 {
            bipartite_upper(c.n()).ok()
        } else {
            None
        },
        bruteforce_count,
        corrected_upper: lower + Rational::new(bruteforce_count as i64, edge_count as i64),
        count_discrepancy: bruteforce_count != paper_numerator,
        r,
    })
}

/// Rationals as `{"num": int, "den": int}` in lowest terms.
pub mod rational_json {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wire {
        num: i64,
        den: i64,
    }

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            num: *q.numer(),
            den: *q.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(w.num, w.den))
    }

    pub mod option {
        use super::{Rational, Wire};
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            q.map(|q| Wire {
                num: *q.numer(),
                den: *q.denom(),
            })
            .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            match Option::<Wire>::deserialize(d)? {
                Some(w) if w.den == 0 => Err(serde::de::Error::custom("zero denominator")),
                Some(w) => Ok(Some(Rational::new(w.num, w.den))),
                None => Ok(None),
            }
        }
    }
}

/// Formats as `p/q`, or `p` for integers.
pub fn fmt_rational(q: Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Lossy decimal view, for human-readable tables only.
pub fn approx(q: Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
