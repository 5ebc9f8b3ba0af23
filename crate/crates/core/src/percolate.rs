//! Quarantine closures and minimal plagues of Hurwitz 3-orbits.
//!
//! Each tuple `T` spawns the family `(T, σ₂T, σ₁σ₂T)`. The families are
//! positional: when two of the three positions are in a set, the third one
//! is added. A family with repeated members therefore still needs two filled
//! positions, and `T = σ₂T` alone is enough to force `σ₁σ₂T`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::PercolateError;
use crate::hurwitz::{all_orbits, HurwitzOrbit};
use crate::rack::Rack;

/// Largest orbit handled by the bitmask search.
pub const MAX_ORBIT: usize = 24;

/// Families `(T, σ₂T, σ₁σ₂T)` as tuple indices, one per tuple.
pub fn families(o: &HurwitzOrbit) -> Result<Vec<[usize; 3]>, PercolateError> {
    if o.arity != 3 {
        return Err(PercolateError::WrongArity(o.arity));
    }
    Ok((0..o.len())
        .map(|k| {
            let s2 = o.edges[1][k];
            [k, s2, o.edges[0][s2]]
        })
        .collect())
}

/// Quarantine closure on bitmasks, with families precomputed.
#[derive(Clone, Debug)]
pub struct Closure {
    size: usize,
    families: Vec<[usize; 3]>,
    /// `watch[k]` lists the families in which tuple `k` occurs.
    watch: Vec<Vec<usize>>,
}

impl Closure {
    pub fn new(o: &HurwitzOrbit) -> Result<Closure, PercolateError> {
        if o.len() > MAX_ORBIT {
            return Err(PercolateError::OrbitTooLarge(o.len()));
        }
        let families = families(o)?;
        let mut watch = vec![Vec::new(); o.len()];
        for (f, fam) in families.iter().enumerate() {
            for &k in fam {
                if !watch[k].contains(&f) {
                    watch[k].push(f);
                }
            }
        }
        Ok(Closure { size: o.len(), families, watch })
    }

    pub fn full(&self) -> u32 {
        if self.size == 32 {
            u32::MAX
        } else {
            (1u32 << self.size) - 1
        }
    }

    pub fn close(&self, seed: u32) -> u32 {
        let mut set = seed;
        let mut stack: Vec<usize> = (0..self.size).filter(|&k| seed >> k & 1 == 1).collect();
        while let Some(k) = stack.pop() {
            for &f in &self.watch[k] {
                let fam = self.families[f];
                let filled = fam.iter().filter(|&&j| set >> j & 1 == 1).count();
                if filled >= 2 {
                    for j in fam {
                        if set >> j & 1 == 0 {
                            set |= 1 << j;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        set
    }
}

/// Smallest quarantine containing `seed` (tuple indices).
pub fn quarantine_closure(o: &HurwitzOrbit, seed: &[usize]) -> Result<Vec<usize>, PercolateError> {
    if seed.is_empty() {
        return Err(PercolateError::EmptySeed);
    }
    let c = Closure::new(o)?;
    let mask = seed.iter().fold(0u32, |m, &k| m | 1 << k);
    let out = c.close(mask);
    Ok((0..o.len()).filter(|&k| out >> k & 1 == 1).collect())
}

pub fn is_quarantine(o: &HurwitzOrbit, set: &[usize]) -> Result<bool, PercolateError> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(quarantine_closure(o, &sorted)? == sorted)
}

/// Minimal plague with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlagueResult {
    pub orbit_size: usize,
    /// Lexicographically least minimal plague (tuple indices).
    pub witness: Vec<usize>,
    pub plague_size: usize,
    #[serde(serialize_with = "ratio_string")]
    pub immunity: Ratio<usize>,
    /// Subsets of size `plague_size - 1` checked and found not to percolate.
    pub certified_subsets: u64,
}

fn ratio_string<S: serde::Serializer>(r: &Ratio<usize>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

pub fn format_ratio(r: &Ratio<usize>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns true; returns the number of subsets visited and the hit.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u32) -> bool) -> (u64, Option<u32>) {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut count = 0u64;
    if k > n {
        return (0, None);
    }
    loop {
        let mask = idx.iter().fold(0u32, |m, &i| m | 1 << i);
        count += 1;
        if f(mask) {
            return (count, Some(mask));
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return (count, None);
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact minimal plague by iterative deepening over subset size.
pub fn minimal_plague(o: &HurwitzOrbit) -> Result<PlagueResult, PercolateError> {
    let c = Closure::new(o)?;
    let n = o.len();
    let full = c.full();
    let mut previous = 0u64;
    for k in 1..=n {
        let (count, hit) = for_each_subset(n, k, |m| c.close(m) == full);
        if let Some(mask) = hit {
            let witness: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            return Ok(PlagueResult {
                orbit_size: n,
                plague_size: k,
                immunity: Ratio::new(k, n),
                witness,
                certified_subsets: previous,
            });
        }
        previous = count;
    }
    unreachable!("the whole orbit is a plague")
}

/// Re-checks minimality: no subset of size `plague_size - 1` percolates.
pub fn certify_minimal(o: &HurwitzOrbit, plague_size: usize) -> Result<bool, PercolateError> {
    let c = Closure::new(o)?;
    if plague_size <= 1 {
        return Ok(true);
    }
    let full = c.full();
    let (_, hit) = for_each_subset(o.len(), plague_size - 1, |m| c.close(m) == full);
    Ok(hit.is_none())
}

/// One row of the immunity table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImmunityRow {
    pub orbit_size: usize,
    pub orbits: usize,
    pub plague_size: usize,
    #[serde(serialize_with = "ratio_string")]
    pub immunity: Ratio<usize>,
    /// Witness for the first orbit of this size, as 1-based tuples.
    pub witness: Vec<Vec<usize>>,
}

/// Minimal plagues of every 3-orbit, grouped by orbit size.
pub fn immunity_table(r: &Rack) -> Result<BTreeMap<usize, ImmunityRow>, PercolateError> {
    let orbits = all_orbits(r, 3).map_err(|_| PercolateError::OrbitTooLarge(usize::MAX))?;
    let results: Vec<PlagueResult> = orbits
        .par_iter()
        .map(minimal_plague)
        .collect::<Result<_, _>>()?;
    let mut table: BTreeMap<usize, ImmunityRow> = BTreeMap::new();
    for (o, res) in orbits.iter().zip(&results) {
        match table.get_mut(&o.len()) {
            Some(row) => {
                if row.plague_size != res.plague_size {
                    return Err(PercolateError::ImmunityMismatch {
                        size: o.len(),
                        a: row.plague_size,
                        b: res.plague_size,
                    });
                }
                row.orbits += 1;
            }
            None => {
                table.insert(
                    o.len(),
                    ImmunityRow {
                        orbit_size: o.len(),
                        orbits: 1,
                        plague_size: res.plague_size,
                        immunity: res.immunity,
                        witness: res
                            .witness
                            .iter()
                            .map(|&k| o.tuples[k].iter().map(|&x| x as usize + 1).collect())
                            .collect(),
                    },
                );
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{orbit, ORBIT_CAP};
    use crate::presets::preset;

    #[test]
    fn dihedral_eight_orbit() {
        let r = preset("D3").unwrap();
        let o = orbit(&r, &[0, 0, 1], ORBIT_CAP).unwrap();
        let p = minimal_plague(&o).unwrap();
        assert_eq!(p.plague_size, 3);
        assert_eq!(p.immunity, Ratio::new(3, 8));
        assert!(certify_minimal(&o, 3).unwrap());
        assert_eq!(p.certified_subsets, 28);
        assert_eq!(quarantine_closure(&o, &[]), Err(PercolateError::EmptySeed));
    }

    #[test]
    fn subsets_enumerated_in_order() {
        let mut seen = Vec::new();
        let (count, _) = for_each_subset(4, 2, |m| {
            seen.push(m);
            false
        });
        assert_eq!(count, 6);
        assert_eq!(seen, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    }
}
