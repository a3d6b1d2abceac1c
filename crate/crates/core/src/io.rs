//! JSON interchange formats. All vertex lists are 1-based and sorted.
//!
//! * clutter: `{"n": 4, "edges": [[1,3],[1,4],[2,3],[2,4]]}`, edges sorted
//!   lexicographically; unknown fields are ignored, so generator output with
//!   partition metadata still reads as a clutter.
//! * certificate: `{"k": 3, "intervals": [{"bottom": [1,3], "top": [1,2,3]}, ...]}`
//! * d-partition: `{"parts": [[1,2],[3,4]]}`

use serde::{Deserialize, Serialize};

use crate::clutter::{Clutter, CompleteKPartite, VertexPartition};
use crate::decomposition::DPartition;
use crate::error::{Error, Result};
use crate::poset::{Interval, IntervalPartition, SdepthResult};
use crate::subset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClutterJson {
    pub n: usize,
    pub edges: Vec<Vec<i64>>,
}

impl From<&Clutter> for ClutterJson {
    fn from(c: &Clutter) -> Self {
        Self {
            n: c.n(),
            edges: c
                .edge_labels()
                .into_iter()
                .map(|e| e.into_iter().map(|v| v as i64).collect())
                .collect(),
        }
    }
}

impl TryFrom<&ClutterJson> for Clutter {
    type Error = Error;

    fn try_from(j: &ClutterJson) -> Result<Self> {
        Clutter::from_labels(j.n, &j.edges)
    }
}

pub fn clutter_to_json(c: &Clutter) -> String {
    serde_json::to_string(&ClutterJson::from(c)).expect("plain data serializes")
}

pub fn clutter_from_json(text: &str) -> Result<Clutter> {
    let j: ClutterJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Clutter::try_from(&j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub blocks: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    /// Position `i` holds the index into the requested part sizes that block
    /// `i` came from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub permutation: Vec<usize>,
}

impl PartitionJson {
    pub fn to_partition(&self, n: usize) -> Result<VertexPartition> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| labels_to_mask(b, n))
            .collect::<Result<Vec<_>>>()?;
        let p = VertexPartition::new(blocks);
        if p.sizes() != self.sizes {
            return Err(Error::PartitionMismatch);
        }
        Ok(p)
    }
}

/// Generator output: the clutter fields plus degree and partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedJson {
    pub n: usize,
    pub edges: Vec<Vec<i64>>,
    pub d: usize,
    pub partition: PartitionJson,
}

impl From<&CompleteKPartite> for GeneratedJson {
    fn from(g: &CompleteKPartite) -> Self {
        let ClutterJson { n, edges } = ClutterJson::from(&g.clutter);
        Self {
            n,
            edges,
            d: g.degree,
            partition: PartitionJson {
                blocks: g
                    .partition
                    .blocks
                    .iter()
                    .map(|&b| subset::to_labels(b))
                    .collect(),
                sizes: g.partition.sizes(),
                permutation: g.permutation.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub k: usize,
    pub intervals: Vec<IntervalJson>,
}

impl CertificateJson {
    pub fn new(k: usize, part: &IntervalPartition) -> Self {
        Self {
            k,
            intervals: part
                .intervals
                .iter()
                .map(|iv| IntervalJson {
                    bottom: subset::to_labels(iv.bottom),
                    top: subset::to_labels(iv.top),
                })
                .collect(),
        }
    }

    pub fn to_partition(&self, n: usize) -> Result<IntervalPartition> {
        let intervals = self
            .intervals
            .iter()
            .map(|iv| {
                Ok(Interval::new(
                    labels_to_mask(&iv.bottom, n)?,
                    labels_to_mask(&iv.top, n)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalPartition { intervals })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdepthJson {
    pub value: usize,
    pub refutation_level: Option<usize>,
    pub certificate: CertificateJson,
}

impl From<&SdepthResult> for SdepthJson {
    fn from(r: &SdepthResult) -> Self {
        Self {
            value: r.value,
            refutation_level: r.refutation_level,
            certificate: CertificateJson::new(r.value, &r.certificate),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DPartitionJson {
    pub parts: Vec<Vec<usize>>,
}

impl From<&DPartition> for DPartitionJson {
    fn from(p: &DPartition) -> Self {
        Self {
            parts: p.parts.iter().map(|&x| subset::to_labels(x)).collect(),
        }
    }
}

impl DPartitionJson {
    pub fn to_dpartition(&self, n: usize) -> Result<DPartition> {
        let parts = self
            .parts
            .iter()
            .map(|p| labels_to_mask(p, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(DPartition { parts })
    }
}

fn labels_to_mask(labels: &[usize], n: usize) -> Result<u32> {
    labels.iter().try_fold(0u32, |m, &v| {
        if v == 0 || v > n || v > 32 {
            Err(Error::VertexOutOfRange {
                vertex: v as i64,
                n,
            })
        } else {
            Ok(m | 1 << (v - 1))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::complete_kpartite;
    use crate::poset::{build_poset, exact_sdepth, validate_partition};

    #[test]
    fn clutter_json_shape() {
        let g = complete_kpartite(2, &[2, 2]).unwrap();
        assert_eq!(
            clutter_to_json(&g.clutter),
            r#"{"n":4,"edges":[[1,3],[1,4],[2,3],[2,4]]}"#
        );
        let gen = serde_json::to_string(&GeneratedJson::from(&g)).unwrap();
        assert_eq!(clutter_from_json(&gen).unwrap(), g.clutter);
    }

    #[test]
    fn malformed_clutters() {
        assert!(matches!(clutter_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            clutter_from_json(r#"{"n":2,"edges":[[0,1]]}"#),
            Err(Error::VertexOutOfRange { vertex: 0, .. })
        ));
        assert!(matches!(
            clutter_from_json(r#"{"n":3,"edges":[[1,2],[1,2,3]]}"#),
            Err(Error::ContainedEdge { .. })
        ));
    }

    #[test]
    fn certificate_round_trip_validates() {
        let g = complete_kpartite(2, &[2, 2]).unwrap();
        let p = build_poset(&g.clutter).unwrap();
        let r = exact_sdepth(&p).unwrap();
        let text = serde_json::to_string(&SdepthJson::from(&r)).unwrap();
        assert!(text.starts_with(r#"{"value":3,"refutation_level":4,"certificate":{"k":3,"intervals":[{"bottom":[1,3],"top":[1,2,3]}"#));
        let back: SdepthJson = serde_json::from_str(&text).unwrap();
        let part = back.certificate.to_partition(4).unwrap();
        assert_eq!(part, r.certificate);
        assert!(validate_partition(&p, &part, back.certificate.k));
    }

    #[test]
    fn partition_json_checks_sizes() {
        let j = PartitionJson {
            blocks: vec![vec![1, 2], vec![3, 4]],
            sizes: vec![2, 1],
            permutation: vec![],
        };
        assert_eq!(j.to_partition(4), Err(Error::PartitionMismatch));
    }
}
