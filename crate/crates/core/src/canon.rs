//! Canonicalization by orbit scan.

use crate::error::{Error, Result};
use crate::group::orbit;
use crate::quad::TurynQuad;

/// Returns the unique canonical member of the orbit of `quad`.
///
/// Fails with [`Error::CanonicalCount`] if the orbit holds zero or several
/// canonical members; either would mean the canonical form is not a
/// well-defined class invariant.
pub fn canonicalize(quad: &TurynQuad) -> Result<TurynQuad> {
    let members = orbit(quad)?;
    let mut canonical = members.into_iter().filter(TurynQuad::is_canonical);
    match (canonical.next(), canonical.next()) {
        (Some(q), None) => Ok(q),
        (None, _) => Err(Error::CanonicalCount { found: 0 }),
        (Some(_), Some(_)) => Err(Error::CanonicalCount {
            found: 2 + canonical.count(),
        }),
    }
}

pub fn equivalent(s1: &TurynQuad, s2: &TurynQuad) -> Result<bool> {
    if s1.n() != s2.n() {
        return Err(Error::LengthMismatch {
            expected: s1.n(),
            found: s2.n(),
        });
    }
    Ok(canonicalize(s1)? == canonicalize(s2)?)
}
