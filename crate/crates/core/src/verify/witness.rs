use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::separating_edge;
use crate::fullgroup::{apply_word, FullWord};
use crate::lattice::{word_index, Configuration, DeltaWord, EdgeRef, Letter, VertexCoord};
use crate::{Error, Result};

/// Evidence that `word` moves some point of the orbit closure of `λ`.
///
/// The witness translate `τ` of `λ` has `w⁻¹ D` written upward from its
/// origin, so `w` walks `τ` up `|w|` steps and lands on a `D` edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub word: DeltaWord,
    #[serde(with = "crate::json::decimal")]
    pub index: u64,
    pub witness: VertexCoord,
    #[serde(with = "crate::json::displacement")]
    pub displacement: VertexCoord,
    #[serde(with = "crate::json::decimal")]
    pub h_bound: BigUint,
    pub final_up_edge: Letter,
    pub differs_from_start: bool,
}

/// Whether the vertical edges read upward from `v` in `λ` spell `w⁻¹` then `D`.
pub fn is_occurrence_base(w: &DeltaWord, v: &VertexCoord) -> bool {
    let read = Configuration::lambda().up_string(v, w.len() + 1);
    read.split_last().is_some_and(|(&last, body)| last == Letter::D && body.iter().eq(w.letters().iter().rev()))
}

/// The vertex `(2^i, 0)` with `i = word_index(w)`, where column `2^i` of `λ`
/// carries `w` itself. Checked by evaluation before it is returned.
pub fn find_witness(w: &DeltaWord) -> Result<VertexCoord> {
    let i = word_index(w)?;
    let v = VertexCoord::new(BigInt::one() << i, 0);
    if !is_occurrence_base(w, &v) {
        return Err(Error::ConstructionBug(format!("column 2^{i} does not carry {w}")));
    }
    Ok(v)
}

/// Radius within which every vertex sees an occurrence base of `w⁻¹ D`:
/// `2^(i+1) + |w| + 1`. Columns labelled `i` are at most `2^(i+1)` apart and
/// each repeats `w⁻¹ D` with period `|w| + 1`.
pub fn witness_bound(w: &DeltaWord) -> Result<BigUint> {
    let i = word_index(w)?;
    Ok((BigUint::one() << (i + 1)) + BigUint::from(w.len() + 1))
}

/// Builds the witness translate for `w`, acts on it, and checks that `w`
/// moves it straight up by `|w|` onto a `D` edge and that the image differs
/// from the start.
///
/// ```
/// use quadrille::verify::verify_nontrivial_action;
/// use quadrille::lattice::VertexCoord;
///
/// let cert = verify_nontrivial_action(&"BA".parse().unwrap()).unwrap();
/// assert_eq!(cert.witness, VertexCoord::new(32, 0));
/// assert_eq!(cert.displacement, VertexCoord::new(0, 2));
/// ```
pub fn verify_nontrivial_action(w: &DeltaWord) -> Result<WitnessCertificate> {
    let witness = find_witness(w)?;
    let index = word_index(w)?;
    let tau = Configuration::at(witness.clone());
    let acted = apply_word(&FullWord::from(w), &tau);

    let expected = VertexCoord::new(0, w.len());
    if acted.displacement != expected {
        return Err(Error::ConstructionBug(format!(
            "{w} moved its witness by {} instead of {expected}",
            acted.displacement
        )));
    }
    let final_up_edge = acted.result.colour(&EdgeRef::vertical(0, 0));
    if final_up_edge != Letter::D {
        return Err(Error::ConstructionBug(format!("{w} ended below {final_up_edge}, not D")));
    }
    let differs = match separating_edge(&tau, &acted.result)? {
        Some(e) => tau.colour(&e) != acted.result.colour(&e),
        None => false,
    };
    if !differs {
        return Err(Error::ConstructionBug(format!("no edge separates {w}·τ from τ")));
    }

    Ok(WitnessCertificate {
        word: w.clone(),
        index,
        witness,
        displacement: acted.displacement,
        h_bound: witness_bound(w)?,
        final_up_edge,
        differs_from_start: true,
    })
}

/// Re-derives every field of a certificate, e.g. one read back from JSON.
pub fn validate_certificate(cert: &WitnessCertificate) -> Result<()> {
    let reject = |msg: String| Err(Error::CertificateRejected(msg));
    if cert.word.is_empty() {
        return reject("empty word".into());
    }
    if word_index(&cert.word)? != cert.index {
        return reject(format!("index {} does not belong to {}", cert.index, cert.word));
    }
    if !is_occurrence_base(&cert.word, &cert.witness) {
        return reject(format!("{} is not an occurrence of {}⁻¹D", cert.witness, cert.word));
    }
    if cert.witness.linf_norm() > BigInt::from(cert.h_bound.clone()) {
        return reject("witness lies beyond h_bound".into());
    }
    if cert.h_bound != witness_bound(&cert.word)? {
        return reject(format!("h_bound {} is not the bound for {}", cert.h_bound, cert.word));
    }
    let tau = Configuration::at(cert.witness.clone());
    let acted = apply_word(&FullWord::from(&cert.word), &tau);
    if acted.displacement != cert.displacement || cert.displacement != VertexCoord::new(0, cert.word.len()) {
        return reject(format!("displacement is {}, certificate says {}", acted.displacement, cert.displacement));
    }
    let up = acted.result.colour(&EdgeRef::vertical(0, 0));
    if up != cert.final_up_edge || up != Letter::D {
        return reject(format!("final up-edge is {up}"));
    }
    let separated = separating_edge(&tau, &acted.result)?.is_some_and(|e| tau.colour(&e) != acted.result.colour(&e));
    if !cert.differs_from_start || !separated {
        return reject("image is not shown to differ from the witness".into());
    }
    Ok(())
}
