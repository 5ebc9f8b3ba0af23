//! Quantum symmetrizer ranks computed directly on Hurwitz-orbit blocks.
//!
//! Every `c_i` maps the span of a Hurwitz orbit of `Xⁿ` to itself, so `S_n`
//! is block diagonal and its rank is the sum of block ranks. Blocks are
//! evaluated in word-sized arithmetic: exactly for small finite fields and
//! through a modular image for characteristic 0. Large blocks use a random
//! sketch `S_n R` whose rank equals `rank S_n` unless the sketch loses rank;
//! a result is only accepted when the sketch has a comfortable surplus of
//! columns.

use braidrack_exact::{DenseEchelon, Reduction, SmallField, SparseMatrix};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braiding::Cocycle;
use crate::error::NicholsError;
use crate::hurwitz::{all_orbits, HurwitzOrbit};
use crate::nichols::words::{symmetrizer, GradedVector};

/// Default bound on `dⁿ` for symmetrizer ranks.
pub const DEFAULT_WORD_CAP: usize = 300_000;

/// Blocks up to this size are eliminated column by column.
pub const DETERMINISTIC_BLOCK: usize = 1_500;

/// Extra sketch columns required beyond the observed rank.
pub const SKETCH_SURPLUS: usize = 24;

/// How a rank was obtained; ordered from strongest to weakest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RankRoute {
    /// Exact elimination over the declared field.
    Exact,
    /// Exact elimination of the image modulo `prime` (a lower bound).
    Modular { prime: u64 },
    /// Random sketch over the declared finite field or modulo `prime`.
    Sketch { prime: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrizerRank {
    pub degree: usize,
    pub rank: usize,
    pub words: usize,
    pub blocks: usize,
    pub largest_block: usize,
    /// Weakest route used by any block.
    pub route: RankRoute,
}

#[derive(Clone, Debug)]
pub struct RankOptions {
    pub word_cap: usize,
    pub deterministic_block: usize,
    pub seed: u64,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            word_cap: DEFAULT_WORD_CAP,
            deterministic_block: DETERMINISTIC_BLOCK,
            seed: 0x5eed,
        }
    }
}

/// First prime tried for modular images of characteristic-0 fields.
fn probe_start(c: &Cocycle) -> u64 {
    match c.field().modulus() {
        Some(_) => 10_007,
        None => 1_000_003,
    }
}

/// A block with its braid tables in word-sized arithmetic.
struct Block {
    len: usize,
    /// `braid[i][k] = (target, coefficient)` for `c_i` on word `k`.
    braid: Vec<Vec<(usize, u32)>>,
}

impl Block {
    fn new(o: &HurwitzOrbit, q: &[Vec<u32>]) -> Block {
        let n = o.arity;
        let braid = (0..n - 1)
            .map(|i| {
                o.tuples
                    .iter()
                    .enumerate()
                    .map(|(k, t)| (o.edges[i][k], q[t[i] as usize][t[i + 1] as usize]))
                    .collect()
            })
            .collect();
        Block { len: o.len(), braid }
    }

    fn apply_braid(&self, f: &SmallField, i: usize, v: &[u32], out: &mut [u32]) {
        out.iter_mut().for_each(|x| *x = 0);
        for (k, &(t, q)) in self.braid[i].iter().enumerate() {
            if v[k] != 0 {
                out[t] = f.add(out[t], f.mul(q, v[k]));
            }
        }
    }

    /// `S_n v` for a dense vector.
    fn symmetrize(&self, f: &SmallField, v: &[u32]) -> Vec<u32> {
        let n = self.braid.len() + 1;
        let mut cur = v.to_vec();
        let mut tmp = vec![0u32; self.len];
        for k in (2..=n).rev() {
            let start = n - k;
            let base = cur.clone();
            for i in (start..start + k - 1).rev() {
                self.apply_braid(f, i, &cur, &mut tmp);
                for (x, (b, t)) in cur.iter_mut().zip(base.iter().zip(&tmp)) {
                    *x = f.add(*b, *t);
                }
            }
        }
        cur
    }

    fn rank_columns(&self, f: &SmallField) -> usize {
        let mut e = DenseEchelon::new(f.clone(), self.len);
        let mut unit = vec![0u32; self.len];
        for j in 0..self.len {
            unit[j] = 1;
            e.insert(self.symmetrize(f, &unit));
            unit[j] = 0;
        }
        e.rank()
    }

    /// Rank of `S_n R` for random `R` with at least `SKETCH_SURPLUS` more
    /// columns than the rank found.
    fn rank_sketch(&self, f: &SmallField, rng: &mut ChaCha8Rng) -> usize {
        let mut cols = 2 * SKETCH_SURPLUS;
        loop {
            let cols_now = cols.min(self.len);
            let mut e = DenseEchelon::new(f.clone(), self.len);
            for _ in 0..cols_now {
                let v: Vec<u32> = (0..self.len).map(|_| f.element_from(rng.next_u64())).collect();
                e.insert(self.symmetrize(f, &v));
            }
            if cols_now == self.len || e.rank() + SKETCH_SURPLUS <= cols_now {
                return e.rank();
            }
            cols *= 2;
        }
    }
}

/// `rank S_n`, summed over the Hurwitz blocks of `Xⁿ`.
pub fn symmetrizer_rank(c: &Cocycle, n: usize, opts: &RankOptions) -> Result<SymmetrizerRank, NicholsError> {
    let d = c.size();
    let words = d.checked_pow(n as u32).unwrap_or(usize::MAX);
    if words > opts.word_cap {
        return Err(NicholsError::DegreeCap { degree: n, size: words, cap: opts.word_cap });
    }
    if n == 0 {
        return Ok(SymmetrizerRank { degree: 0, rank: 1, words: 1, blocks: 1, largest_block: 1, route: RankRoute::Exact });
    }
    let orbits = all_orbits(c.rack(), n)?;
    let largest = orbits.iter().map(HurwitzOrbit::len).max().unwrap_or(0);
    let exact_field = c.field().characteristic() != 0;
    let red = Reduction::best(c.field(), probe_start(c)).ok_or_else(|| {
        NicholsError::NoImage(c.field().to_string())
    })?;
    let q: Vec<Vec<u32>> = c
        .values()
        .iter()
        .map(|row| row.iter().map(|s| red.map(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let prime = match red.target {
        SmallField::Prime(p) if !exact_field => Some(p),
        _ => None,
    };
    let results: Vec<(usize, RankRoute)> = orbits
        .par_iter()
        .enumerate()
        .map(|(k, o)| -> Result<(usize, RankRoute), NicholsError> {
            // tiny characteristic-0 blocks: exact over the declared field
            if !exact_field && o.len() <= 64 && n <= 6 {
                return Ok((exact_block_rank(c, o)?, RankRoute::Exact));
            }
            let block = Block::new(o, &q);
            if o.len() <= opts.deterministic_block {
                let route = match prime {
                    Some(p) => RankRoute::Modular { prime: p },
                    None => RankRoute::Exact,
                };
                Ok((block.rank_columns(&red.target), route))
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (k as u64).wrapping_mul(0x9e37_79b9));
                Ok((block.rank_sketch(&red.target, &mut rng), RankRoute::Sketch { prime }))
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(SymmetrizerRank {
        degree: n,
        rank: results.iter().map(|r| r.0).sum(),
        words,
        blocks: orbits.len(),
        largest_block: largest,
        route: results.iter().map(|r| r.1).max().unwrap_or(RankRoute::Exact),
    })
}

/// Matrix of a degree-`n` operator on one block over the declared field
/// (column `j` is the image of word `j`).
pub fn block_matrix(
    c: &Cocycle,
    o: &HurwitzOrbit,
    op: impl Fn(&GradedVector) -> GradedVector,
) -> SparseMatrix {
    let f = c.field();
    let len = o.len();
    let mut rows = vec![Vec::new(); len];
    for (j, t) in o.tuples.iter().enumerate() {
        let image = op(&GradedVector::word(f, t));
        for (w, x) in image.terms() {
            let i = o.index_of(w).expect("blocks are invariant");
            rows[i].push((j, x.clone()));
        }
    }
    for r in rows.iter_mut() {
        r.sort_by_key(|(j, _)| *j);
    }
    SparseMatrix { nrows: len, ncols: len, rows }
}

fn exact_block_rank(c: &Cocycle, o: &HurwitzOrbit) -> Result<usize, NicholsError> {
    let m = block_matrix(c, o, |v| symmetrizer(c, v));
    Ok(m.rank(c.field())?)
}

/// `rank S_n` over the declared field by exact elimination of every block.
pub fn symmetrizer_rank_exact(c: &Cocycle, n: usize, word_cap: usize) -> Result<usize, NicholsError> {
    let d = c.size();
    let words = d.checked_pow(n as u32).unwrap_or(usize::MAX);
    if words > word_cap {
        return Err(NicholsError::DegreeCap { degree: n, size: words, cap: word_cap });
    }
    if n == 0 {
        return Ok(1);
    }
    let orbits = all_orbits(c.rack(), n)?;
    let ranks: Vec<usize> = orbits
        .par_iter()
        .map(|o| exact_block_rank(c, o))
        .collect::<Result<_, _>>()?;
    Ok(ranks.iter().sum())
}
