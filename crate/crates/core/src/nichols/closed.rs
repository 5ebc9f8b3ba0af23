//! Closed-form kernel dimensions and the counting inequality for braided racks.

use braidrack_exact::{Field, Scalar, SparseMatrix};
use serde::Serialize;

use crate::error::NicholsError;

/// `dim ker X_3` on a 1-orbit with fiber dimension `e`, where the base
/// element acts on its fiber by the scalar `q`.
pub fn one_orbit_kernel(e: usize, q: &Scalar, field: &Field) -> usize {
    let e = e as u64;
    let p = field.characteristic();
    let one = field.one();
    let is_one = *q == one;
    let is_minus_one = *q == field.neg(&one);
    let q2 = field.mul(q, q);
    let cube_root = field.is_zero(&field.add(&field.add(&one, q), &q2));
    let sixth_root = field.is_zero(&field.add(&field.sub(&one, q), &q2));
    let value = if p == 3 && is_one {
        e * (e * e + 2) / 3
    } else if is_minus_one || (is_one && p != 3) {
        e * (e * e - 1) / 3
    } else if p != 3 && cube_root {
        e * (e + 1) * (e + 2) / 6
    } else if p != 2 && p != 3 && sixth_root {
        e * e.saturating_sub(1) * e.saturating_sub(2) / 6
    } else {
        0
    };
    value as usize
}

/// Matrix of `X_3` on `W^{⊗3}` for `c(v ⊗ w) = q w ⊗ v` on an
/// `e`-dimensional `W`: `w_1 w_2 w_3 ↦ w_1 w_2 w_3 + q w_2 w_1 w_3 + q² w_3 w_1 w_2`.
pub fn one_orbit_matrix(e: usize, q: &Scalar, field: &Field) -> SparseMatrix {
    let n = e * e * e;
    let code = |a: usize, b: usize, c: usize| (a * e + b) * e + c;
    let q2 = field.mul(q, q);
    let mut m = SparseMatrix::zero(n, n);
    for a in 0..e {
        for b in 0..e {
            for c in 0..e {
                let col = code(a, b, c);
                for (row, coef) in [(code(a, b, c), field.one()), (code(b, a, c), q.clone()), (code(c, a, b), q2.clone())] {
                    let old = m.rows[row]
                        .iter()
                        .find(|(j, _)| *j == col)
                        .map(|(_, x)| x.clone())
                        .unwrap_or_else(|| field.zero());
                    m.set(field, row, col, field.add(&old, &coef));
                }
            }
        }
    }
    m
}

/// Kernel dimension of [`one_orbit_matrix`] by exact elimination.
pub fn one_orbit_kernel_computed(e: usize, q: &Scalar, field: &Field) -> Result<usize, NicholsError> {
    Ok(one_orbit_matrix(e, q, field).kernel_dim(field)?)
}

/// Upper bound for `dim ker X_3` on an 8-orbit `𝒪(x,x,y)` where `x` acts on
/// its `e`-dimensional fiber by `q`. For `e = 1` and `q ≠ −1` the bound is 2.
pub fn eight_orbit_bound(e: usize, q: &Scalar, field: &Field) -> usize {
    let minus_one = *q == field.neg(&field.one());
    if minus_one {
        e * e * (5 * e + 1) / 2
    } else if e == 1 {
        2
    } else {
        e * e * (5 * e - 1) / 2
    }
}

/// Inputs to the counting inequality: `d` elements, fiber dimension `e`,
/// the rack counts `k₃` and `m`, and the kernel dimensions `d₁`, `d₈` per
/// orbit of size 1 and 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityInput {
    pub d: i64,
    pub e: i64,
    pub k3: i64,
    pub m: i64,
    pub d1: i64,
    pub d8: i64,
}

impl InequalityInput {
    /// `12k₃d₈ + 24d₁ − k₃² − 30k₃ + m − 8d²(e³−1) + 8(e−1)`.
    pub fn printed(&self) -> i64 {
        let InequalityInput { d, e, k3, m, d1, d8 } = *self;
        12 * k3 * d8 + 24 * d1 - k3 * k3 - 30 * k3 + m - 8 * d * d * (e * e * e - 1) + 8 * (e - 1)
    }

    /// `12k₃d₈ + 24d₁ − e³(k₃² + 30k₃ − m) − 8(e³ − e)`, the same count with
    /// the fiber dimension carried through every orbit term.
    pub fn derived(&self) -> i64 {
        let InequalityInput { e, k3, m, d1, d8, .. } = *self;
        let e3 = e * e * e;
        12 * k3 * d8 + 24 * d1 - e3 * (k3 * k3 + 30 * k3 - m) - 8 * (e3 - e)
    }

    pub fn holds(&self) -> bool {
        self.printed() >= 0
    }
}

/// The two specializations of the inequality. With `d₁ = e(e²−1)/3` and
/// `d₈ = e²(5e+1)/2` the left side is `e²(6k₃ − e k₃² + e m)`; with
/// `d₁ = e(e²+2)/3` and `d₈ = e²(5e−1)/2` it is `−e(e²k₃² − e²m + 6ek₃ − 24)`.
pub fn reduction_minus_one(e: i64, k3: i64, m: i64) -> (i64, i64) {
    let input = InequalityInput {
        d: 0,
        e,
        k3,
        m,
        d1: e * (e * e - 1) / 3,
        d8: e * e * (5 * e + 1) / 2,
    };
    (input.derived(), e * e * (6 * k3 - e * k3 * k3 + e * m))
}

pub fn reduction_char_three(e: i64, k3: i64, m: i64) -> (i64, i64) {
    let input = InequalityInput {
        d: 0,
        e,
        k3,
        m,
        d1: e * (e * e + 2) / 3,
        d8: e * e * (5 * e - 1) / 2,
    };
    (input.derived(), -e * (e * e * k3 * k3 - e * e * m + 6 * e * k3 - 24))
}

/// Linear form `(coefficient of d₈, coefficient of d₁, constant)` of the
/// printed inequality at fixed `d, e, k₃, m`.
pub fn specialize(d: i64, e: i64, k3: i64, m: i64) -> (i64, i64, i64) {
    let at = |d1, d8| InequalityInput { d, e, k3, m, d1, d8 }.printed();
    let constant = at(0, 0);
    (at(0, 1) - constant, at(1, 0) - constant, constant)
}

/// Largest `k₃` compatible with the reduced inequality: for `q = −1`,
/// `e k₃² − e m − 6k₃ ≤ 0` with `m ≤ k₃` and `3 | m`; otherwise
/// `e² k₃² − e² m + 6e k₃ − 24 ≤ 0` with `m ≤ k₃`.
pub fn k3_bound(e: i64, minus_one: bool) -> i64 {
    let feasible = |k3: i64| {
        if minus_one {
            let m = k3 - k3 % 3;
            e * k3 * k3 - e * m - 6 * k3 <= 0
        } else {
            e * e * k3 * k3 - e * e * k3 + 6 * e * k3 - 24 <= 0
        }
    };
    (0..=K3_SEARCH).filter(|&k| feasible(k)).max().unwrap_or(0)
}

/// Search range for [`k3_bound`]; both reduced forms grow like `k₃²`.
pub const K3_SEARCH: i64 = 256;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let f = Field::Rationals;
        assert_eq!(one_orbit_kernel(1, &f.from_int(-1), &f), 0);
        let f3 = Field::Prime(3);
        assert_eq!(one_orbit_kernel(1, &f3.one(), &f3), 1);
        let z = Field::parse("QQ[t]/(t^2+t+1)").unwrap();
        assert_eq!(one_orbit_kernel(2, &z.generator().unwrap(), &z), 4);
        assert_eq!(eight_orbit_bound(1, &f.from_int(-1), &f), 3);
        assert_eq!(eight_orbit_bound(1, &f.from_int(2), &f), 2);
        assert_eq!(eight_orbit_bound(2, &f.from_int(-1), &f), 22);
    }

    #[test]
    fn dihedral_arithmetic() {
        let v = InequalityInput { d: 3, e: 1, k3: 2, m: 0, d1: 0, d8: 3 };
        assert_eq!(v.printed(), 8);
        assert_eq!(v.derived(), 8);
    }

    #[test]
    fn k3_bounds() {
        assert_eq!(k3_bound(1, true), 6);
        assert_eq!(k3_bound(2, true), 3);
        assert_eq!(k3_bound(1, false), 3);
        assert_eq!(k3_bound(3, false), 1);
    }
}
