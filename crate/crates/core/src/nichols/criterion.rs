//! Structural checks: block diagonality of `S_n`, and the derivation
//! criterion `u ∈ ker S_n ⇔ ∂_x u ∈ ker S_{n-1}` for every `x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braiding::Cocycle;
use crate::error::NicholsError;
use crate::hurwitz::{all_orbits, HurwitzOrbit};
use crate::nichols::symmetrizer::block_matrix;
use crate::nichols::words::{cubic_operator, derivation, symmetrizer, GradedVector};

/// Every `S_n` image of a word, and for `n = 3` every `X_3` image, stays in
/// the Hurwitz orbit of the word.
pub fn block_diagonal(c: &Cocycle, n: usize) -> Result<bool, NicholsError> {
    let f = c.field();
    let orbits = all_orbits(c.rack(), n)?;
    Ok(orbits.par_iter().all(|o| {
        o.tuples.iter().all(|t| {
            let w = GradedVector::word(f, t);
            let mut images = vec![symmetrizer(c, &w)];
            if n == 3 {
                images.push(cubic_operator(c, &w));
            }
            images.iter().all(|v| v.terms().all(|(u, _)| o.index_of(u).is_some()))
        })
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub degree: usize,
    /// Kernel basis vectors tested (all must have every derivative in ker S_{n-1}).
    pub kernel_vectors: usize,
    pub random_vectors: usize,
    pub holds: bool,
}

fn derivatives_in_kernel(c: &Cocycle, u: &GradedVector) -> bool {
    (0..c.size()).all(|x| symmetrizer(c, &derivation(c, x, u)).is_zero())
}

fn block_vector(c: &Cocycle, o: &HurwitzOrbit, coeffs: impl IntoIterator<Item = (usize, braidrack_exact::Scalar)>) -> GradedVector {
    let f = c.field();
    let mut v = GradedVector::zero(o.arity);
    for (j, x) in coeffs {
        v.add_term(f, o.tuples[j].clone(), x);
    }
    v
}

/// Tests the criterion in degree `n` on a kernel basis of every block, on
/// random combinations of kernel vectors and on `samples` random vectors per
/// block with small integer coefficients.
pub fn derivation_criterion(c: &Cocycle, n: usize, samples: usize, seed: u64) -> Result<CriterionReport, NicholsError> {
    let f = c.field();
    let orbits = all_orbits(c.rack(), n)?;
    let results: Vec<(usize, usize, bool)> = orbits
        .par_iter()
        .enumerate()
        .map(|(k, o)| -> Result<(usize, usize, bool), NicholsError> {
            let m = block_matrix(c, o, |v| symmetrizer(c, v));
            let kernel = m.kernel_basis(f)?;
            let mut holds = true;
            for u in &kernel {
                holds &= derivatives_in_kernel(c, &block_vector(c, o, u.iter().cloned()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x2545_f491));
            let mut small = || f.from_int(rng.gen_range(-2i64..=2));
            let mut tested = kernel.len();
            for _ in 0..samples {
                // a random vector, and a random kernel combination
                let u = block_vector(c, o, (0..o.len()).map(|j| (j, small())));
                holds &= symmetrizer(c, &u).is_zero() == derivatives_in_kernel(c, &u);
                if !kernel.is_empty() {
                    let mut v = GradedVector::zero(n);
                    for b in &kernel {
                        let lambda = small();
                        v = v.add(f, &block_vector(c, o, b.iter().map(|(j, x)| (*j, f.mul(&lambda, x)))));
                    }
                    holds &= symmetrizer(c, &v).is_zero() && derivatives_in_kernel(c, &v);
                }
                tested += 2;
            }
            Ok((kernel.len(), tested - kernel.len(), holds))
        })
        .collect::<Result<_, _>>()?;
    Ok(CriterionReport {
        degree: n,
        kernel_vectors: results.iter().map(|r| r.0).sum(),
        random_vectors: results.iter().map(|r| r.1).sum(),
        holds: results.iter().all(|r| r.2),
    })
}
