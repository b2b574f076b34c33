use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{verify_nontrivial_action, WitnessCertificate};
use crate::fullgroup::{f2_to_delta, F2Word};
use crate::{Error, Result};

pub const MAX_FREE_WORD_LEN: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeSubgroupSummary {
    #[serde(with = "crate::json::decimal")]
    pub max_len: usize,
    #[serde(with = "crate::json::decimal")]
    pub words_checked: usize,
    /// Number of certified words of each length `1..=max_len`.
    pub per_length: Vec<String>,
    #[serde(with = "crate::json::decimal")]
    pub longest_image: usize,
    /// The widest witness used sits at column `2^max_witness_log2`.
    #[serde(with = "crate::json::decimal")]
    pub max_witness_log2: u64,
}

/// Certifies the image in `Δ` of every nontrivial freely reduced word of
/// length at most `max_len`.
pub fn free_subgroup_certificates(max_len: usize) -> Result<Vec<(F2Word, WitnessCertificate)>> {
    if max_len > MAX_FREE_WORD_LEN {
        return Err(Error::CostGuard {
            what: "free word length",
            value: max_len.to_string(),
            limit: MAX_FREE_WORD_LEN.to_string(),
        });
    }
    F2Word::enumerate(max_len)
        .into_par_iter()
        .map(|u| {
            let image = f2_to_delta(&u);
            if image.is_empty() {
                return Err(Error::ConstructionBug(format!("{u} maps to the identity")));
            }
            let cert = verify_nontrivial_action(&image)?;
            Ok((u, cert))
        })
        .collect()
}

/// Runs [`free_subgroup_certificates`] and keeps only the counts.
pub fn verify_free_subgroup(max_len: usize) -> Result<FreeSubgroupSummary> {
    let certs = free_subgroup_certificates(max_len)?;
    let mut per_length = vec![0usize; max_len];
    for (u, _) in &certs {
        per_length[u.len() - 1] += 1;
    }
    Ok(FreeSubgroupSummary {
        max_len,
        words_checked: certs.len(),
        per_length: per_length.iter().map(ToString::to_string).collect(),
        longest_image: certs.iter().map(|(_, c)| c.word.len()).max().unwrap_or(0),
        max_witness_log2: certs.iter().map(|(_, c)| c.index).max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::VertexCoord;

    #[test]
    fn length_one() {
        let certs = free_subgroup_certificates(1).unwrap();
        assert_eq!(certs.len(), 4);
        let (_, alpha) = certs.iter().find(|(u, _)| u.to_string() == "a").unwrap();
        assert_eq!(alpha.word.to_string(), "AB");
        assert_eq!(alpha.witness, VertexCoord::new(8, 0));
    }

    #[test]
    fn commutator_is_certified() {
        let certs = free_subgroup_certificates(4).unwrap();
        let (_, c) = certs.iter().find(|(u, _)| u.to_string() == "abAB").unwrap();
        assert_eq!(c.word.to_string(), "ABACBACA");
        assert_eq!(c.displacement, VertexCoord::new(0, 8));
    }

    #[test]
    fn summary_counts() {
        let s = verify_free_subgroup(3).unwrap();
        assert_eq!(s.words_checked, 4 + 12 + 36);
        assert_eq!(s.per_length, ["4", "12", "36"]);
        assert_eq!(s.longest_image, 6);
        assert!(verify_free_subgroup(9).is_err());
    }
}
