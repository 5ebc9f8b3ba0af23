//! Modular rank probes: map a characteristic-0 matrix to `F_p` and compute
//! the rank there. A ring homomorphism can only lose rank, so a probe gives a
//! lower bound for the exact rank and a cheap consistency gate.

use crate::error::ExactError;
use crate::field::Field;
use crate::sparse::SparseMatrix;

/// Primes used by default: 7 contains the primitive cube roots of unity
/// (2 and 4), 13 contains the primitive sixth roots (4 and 10).
pub const DEFAULT_PROBE_PRIMES: [u64; 2] = [7, 13];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub prime: u64,
    /// Image of `t` for quotient rings.
    pub root: Option<u64>,
    pub rank: usize,
}

/// Probes the rank of `m` (over `field`, characteristic 0) modulo each prime
/// where a homomorphism exists. Primes where the modulus has no root or a
/// denominator vanishes are skipped.
pub fn probe_ranks(m: &SparseMatrix, field: &Field, primes: &[u64]) -> Vec<ProbeResult> {
    let mut out = Vec::new();
    if field.characteristic() != 0 {
        return out;
    }
    for &p in primes {
        let root = match field {
            Field::Quotient(_) => match field.modulus_roots_mod(p).first() {
                Some(&r) => Some(r),
                None => continue,
            },
            _ => None,
        };
        let reduced: Result<SparseMatrix, ExactError> = m.reduce_mod(field, p, root);
        if let Ok(r) = reduced {
            if let Ok(rank) = r.rank(&Field::Prime(p)) {
                out.push(ProbeResult { prime: p, root, rank });
            }
        }
    }
    out
}

/// Exact rank together with the probes; a probe exceeding the exact rank is
/// impossible for a correct elimination and is returned as an error.
pub fn rank_with_probes(
    m: &SparseMatrix,
    field: &Field,
    primes: &[u64],
) -> Result<(usize, Vec<ProbeResult>), ExactError> {
    let exact = m.rank(field)?;
    let probes = probe_ranks(m, field, primes);
    if let Some(bad) = probes.iter().find(|p| p.rank > exact) {
        return Err(ExactError::Shape(format!(
            "modular rank {} mod {} exceeds exact rank {exact}",
            bad.rank, bad.prime
        )));
    }
    Ok((exact, probes))
}
