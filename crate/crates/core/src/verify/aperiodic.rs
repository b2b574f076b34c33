use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lattice::{
    column_cycle, extract_window, label_of, lambda_colour, word_count_below_length, Configuration, EdgeRef, Letter,
    VertexCoord,
};
use crate::{Error, Result};

/// `λ` and its translate by `translation` disagree at `witness_edge`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperiodicityCertificate {
    pub translation: VertexCoord,
    pub witness_edge: EdgeRef,
    pub colour_at: Letter,
    pub colour_shifted: Letter,
}

impl AperiodicityCertificate {
    /// Re-evaluates `λ` at the witness edge with and without the shift.
    pub fn validate(&self) -> Result<()> {
        let at = lambda_colour(&self.witness_edge);
        let shifted = lambda_colour(&self.witness_edge.translated(&self.translation));
        if self.translation.is_origin() || at != self.colour_at || shifted != self.colour_shifted || at == shifted {
            return Err(Error::CertificateRejected(format!(
                "translation {} at {}: recorded {} vs {}, evaluated {at} vs {shifted}",
                self.translation, self.witness_edge, self.colour_at, self.colour_shifted
            )));
        }
        Ok(())
    }
}

// Beyond this the smallest column with a usable period is too wide to build.
const MAX_PROBE_LABEL: u64 = 1 << 24;
const FALLBACK_RADIUS: u64 = 32;

fn certificate(t: &VertexCoord, e: EdgeRef) -> Option<AperiodicityCertificate> {
    let colour_at = lambda_colour(&e);
    let colour_shifted = lambda_colour(&e.translated(t));
    (colour_at != colour_shifted).then(|| AperiodicityCertificate {
        translation: t.clone(),
        witness_edge: e,
        colour_at,
        colour_shifted,
    })
}

// Scans one joint period of columns x and x + dx for a disagreement.
fn scan_column_pair(t: &VertexCoord, x: &BigInt) -> Option<AperiodicityCertificate> {
    let m1 = column_cycle(label_of(x)).len();
    let m2 = column_cycle(label_of(&(x + &t.x))).len();
    (0..m1.lcm(&m2)).find_map(|y| certificate(t, EdgeRef::vertical(x.clone(), y)))
}

fn vertical_probe(t: &VertexCoord) -> Option<AperiodicityCertificate> {
    // A column whose period m does not divide dy shows its D somewhere the
    // shifted column does not. The first word of length m - 1 sits on
    // column 2^j with j the count of shorter words.
    let dy = &t.y;
    let m = (2u64..64).find(|&m| !dy.is_multiple_of(&BigInt::from(m)))?;
    let j = word_count_below_length(m as usize - 1)?;
    if j > MAX_PROBE_LABEL {
        return None;
    }
    scan_column_pair(t, &(BigInt::one() << j))
}

fn horizontal_probe(t: &VertexCoord) -> Option<AperiodicityCertificate> {
    // Column ±2^v with v the 2-adic valuation of dx has label v, while
    // column ±2^v + dx has label at least v + 1, so the two carry different
    // words and their vertical sequences cannot agree.
    let v = label_of(&t.x);
    let mut x = BigInt::one() << v;
    if t.x.sign() == Sign::Minus {
        x = -x;
    }
    scan_column_pair(t, &x)
}

fn window_scan(t: &VertexCoord) -> Option<AperiodicityCertificate> {
    let lambda = Configuration::lambda();
    let moved = Configuration::at(t.clone());
    (1..=FALLBACK_RADIUS).find_map(|r| {
        let here = extract_window(&lambda, &VertexCoord::origin(), r);
        let there = extract_window(&moved, &VertexCoord::origin(), r);
        let differing = here.pattern.edges().zip(there.pattern.edges()).find(|(a, b)| a.3 != b.3);
        differing.and_then(|((dx, dy, o, _), _)| certificate(t, EdgeRef::new(VertexCoord::new(dx, dy), o)))
    })
}

/// An edge where `λ` and its translate by `t` differ, for any nonzero `t`.
///
/// Purely vertical shifts are caught by a column whose period does not
/// divide the shift; anything else by two columns with different labels.
/// An expanding window scan backs both up.
pub fn period_breaker(t: &VertexCoord) -> Result<AperiodicityCertificate> {
    if t.is_origin() {
        return Err(Error::CertificateRejected("the zero translation fixes everything".into()));
    }
    let targeted = if t.x.is_zero() { vertical_probe(t) } else { horizontal_probe(t) };
    targeted
        .or_else(|| window_scan(t))
        .ok_or_else(|| Error::ConstructionBug(format!("no edge distinguishes λ from its translate by {t}")))
}

/// Certificates for every nonzero `t` with `|t|∞ ≤ range`, ordered by row
/// then column of `t`.
pub fn verify_aperiodicity(range: u64) -> Result<Vec<AperiodicityCertificate>> {
    let r = range as i64;
    let translations: Vec<VertexCoord> =
        (-r..=r).flat_map(|dy| (-r..=r).map(move |dx| VertexCoord::new(dx, dy))).filter(|t| !t.is_origin()).collect();
    translations.par_iter().map(period_breaker).collect()
}

/// An edge, in `sigma`'s own coordinates, on which the translates `sigma`
/// and `rho` of `λ` disagree; `None` when they are the same configuration.
pub fn separating_edge(sigma: &Configuration, rho: &Configuration) -> Result<Option<EdgeRef>> {
    let t = &rho.offset - &sigma.offset;
    if t.is_origin() {
        return Ok(None);
    }
    let cert = period_breaker(&t)?;
    let neg_offset = -sigma.offset.clone();
    Ok(Some(cert.witness_edge.translated(&neg_offset)))
}
