//! Kernel of `X_3 = 1 + c_{12} + c_{12}c_{23}` per Hurwitz 3-orbit, and the
//! three conditions for many cubic relations.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::braiding::Cocycle;
use crate::error::NicholsError;
use crate::hurwitz::{all_orbits, HurwitzOrbit};
use crate::nichols::closed::eight_orbit_bound;
use crate::nichols::hilbert::{factorizations, Factorization};
use crate::nichols::symmetrizer::block_matrix;
use crate::nichols::words::{cubic_operator, shuffle_factor, symmetrizer};
use crate::percolate::{format_ratio, minimal_plague};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitKernel {
    pub size: usize,
    /// Least tuple of the orbit, 1-based.
    pub representative: Vec<usize>,
    pub kernel: usize,
    /// `dim ker S_3` on the block.
    pub symmetrizer_kernel: usize,
    pub plague_size: Option<usize>,
    #[serde(serialize_with = "opt_ratio")]
    pub immunity: Option<Ratio<usize>>,
    /// `kernel <= immunity · #orbit`.
    pub within_immunity_bound: Option<bool>,
    pub optimal: Option<bool>,
    /// For orbits of size 8, the bound from the diagonal scalar of `(x,x,y)`.
    pub eight_orbit_bound: Option<usize>,
}

fn opt_ratio<S: serde::Serializer>(r: &Option<Ratio<usize>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&format_ratio(r)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicKernel {
    pub total: usize,
    pub orbits: Vec<OrbitKernel>,
    /// Sum of kernels by orbit size.
    pub by_size: BTreeMap<usize, usize>,
    /// `dim ker(1 + c)` on `V ⊗ V`.
    pub braid_kernel: usize,
    /// `dim ker S_3` on `V^{⊗3}`.
    pub symmetrizer_kernel: usize,
    /// `dim ker S_3 <= dim V · dim ker(1 + c) + dim ker X_3`.
    pub kernel_identity_holds: bool,
    pub immunity_bounds_hold: bool,
    pub eight_orbit_bounds_hold: bool,
}

fn orbit_kernel(c: &Cocycle, o: &HurwitzOrbit, plague: Option<usize>) -> Result<OrbitKernel, NicholsError> {
    let f = c.field();
    let x3 = block_matrix(c, o, |v| cubic_operator(c, v));
    let kernel = x3.kernel_dim(f)?;
    let s3 = block_matrix(c, o, |v| symmetrizer(c, v));
    let symmetrizer_kernel = s3.kernel_dim(f)?;
    let immunity = plague.map(|p| Ratio::new(p, o.len()));
    let eight = if o.len() == 8 {
        o.tuples
            .iter()
            .find(|t| t[0] == t[1] && t[1] != t[2])
            .map(|t| eight_orbit_bound(1, c.q(t[0] as usize, t[0] as usize), f))
    } else {
        None
    };
    Ok(OrbitKernel {
        size: o.len(),
        representative: o.min_tuple().iter().map(|&x| x as usize + 1).collect(),
        kernel,
        symmetrizer_kernel,
        plague_size: plague,
        immunity,
        within_immunity_bound: plague.map(|p| kernel <= p),
        optimal: plague.map(|p| kernel == p),
        eight_orbit_bound: eight,
    })
}

/// `dim ker X_3`, block by block.
pub fn cubic_kernel(c: &Cocycle) -> Result<CubicKernel, NicholsError> {
    let orbits = all_orbits(c.rack(), 3)?;
    // plague sizes depend only on the orbit graph; one search per size
    let mut plagues: BTreeMap<usize, Option<usize>> = BTreeMap::new();
    for o in &orbits {
        plagues
            .entry(o.len())
            .or_insert_with(|| minimal_plague(o).ok().map(|p| p.plague_size));
    }
    let rows: Vec<OrbitKernel> = orbits
        .par_iter()
        .map(|o| orbit_kernel(c, o, plagues[&o.len()]))
        .collect::<Result<_, _>>()?;
    let total = rows.iter().map(|r| r.kernel).sum();
    let mut by_size = BTreeMap::new();
    for r in &rows {
        *by_size.entry(r.size).or_insert(0) += r.kernel;
    }
    let braid_kernel = braid_kernel(c)?;
    let symmetrizer_kernel: usize = rows.iter().map(|r| r.symmetrizer_kernel).sum();
    let d = c.size();
    Ok(CubicKernel {
        total,
        by_size,
        braid_kernel,
        symmetrizer_kernel,
        kernel_identity_holds: symmetrizer_kernel <= d * braid_kernel + total,
        immunity_bounds_hold: rows.iter().all(|r| r.within_immunity_bound != Some(false)),
        eight_orbit_bounds_hold: rows.iter().all(|r| r.eight_orbit_bound.map_or(true, |b| r.kernel <= b)),
        orbits: rows,
    })
}

/// `dim ker(1 + c)` on `V ⊗ V`.
pub fn braid_kernel(c: &Cocycle) -> Result<usize, NicholsError> {
    let mut total = 0;
    for o in all_orbits(c.rack(), 2)? {
        let m = block_matrix(c, &o, |v| shuffle_factor(c, 0, 2, v));
        total += m.kernel_dim(c.field())?;
    }
    Ok(total)
}

/// The three conditions for many cubic relations, with condition (1)
/// checked only on a truncated Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub dim_v: usize,
    /// Graded dimensions used (degree 0 up to the truncation).
    pub dims: Vec<usize>,
    pub cubic_kernel: usize,
    /// `(dim V)((dim V)² − 1)/3`.
    pub cubic_target: String,
    pub cond1_truncated: bool,
    pub factorizations: Vec<Factorization>,
    pub cond2: bool,
    pub cond3: bool,
}

/// `cond3: 3·ker ≥ d(d²−1)`; `cond2: 3·dim𝔅₃ ≤ d(3·dim𝔅₂ − (d²−1))`;
/// `cond1`: the series up to `dims.len() − 1` matches a product of
/// factors `(n)_t`, `(n)_{t²}`.
pub fn check_conditions(d: usize, dims: &[usize], cubic_kernel: usize, series_complete: bool) -> ConditionReport {
    let di = d as i64;
    let target = Ratio::new(di * (di * di - 1), 3);
    let cond3 = Ratio::from_integer(cubic_kernel as i64) >= target;
    let cond2 = dims.len() > 3 && 3 * dims[3] as i64 <= di * (3 * dims[2] as i64 - (di * di - 1));
    let facs = factorizations(dims, series_complete);
    ConditionReport {
        dim_v: d,
        dims: dims.to_vec(),
        cubic_kernel,
        cubic_target: target.to_string(),
        cond1_truncated: !facs.is_empty(),
        factorizations: facs,
        cond2,
        cond3,
    }
}
