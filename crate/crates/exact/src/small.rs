//! Word-sized arithmetic for small finite fields and modular images.
//!
//! A [`SmallField`] is either `F_p` with `p < 2^31` or a finite field given
//! by addition and multiplication tables. [`Reduction`] maps scalars of a
//! [`Field`] into one: an isomorphism for finite fields, a ring
//! homomorphism to `F_p` for characteristic 0.

use std::collections::HashMap;

use crate::error::ExactError;
use crate::field::{Field, Scalar};

/// Largest finite field handled by tables.
pub const TABLE_ORDER_MAX: u64 = 1024;

#[derive(Clone, Debug)]
pub enum SmallField {
    Prime(u64),
    Table {
        order: u32,
        characteristic: u64,
        add: Vec<u32>,
        mul: Vec<u32>,
        neg: Vec<u32>,
        inv: Vec<u32>,
    },
}

impl SmallField {
    pub fn order(&self) -> u64 {
        match self {
            SmallField::Prime(p) => *p,
            SmallField::Table { order, .. } => *order as u64,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            SmallField::Prime(p) => *p,
            SmallField::Table { characteristic, .. } => *characteristic,
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            SmallField::Prime(p) => ((a as u64 + b as u64) % p) as u32,
            SmallField::Table { order, add, .. } => add[(a * order + b) as usize],
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            SmallField::Prime(p) => ((a as u64 * b as u64) % p) as u32,
            SmallField::Table { order, mul, .. } => mul[(a * order + b) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match self {
            SmallField::Prime(p) => ((p - a as u64) % p) as u32,
            SmallField::Table { neg, .. } => neg[a as usize],
        }
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        match self {
            SmallField::Prime(p) => {
                let (mut r, mut base, mut e) = (1u64, a as u64, p - 2);
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                r as u32
            }
            SmallField::Table { inv, .. } => inv[a as usize],
        }
    }

    /// Uniformly random element from a 64-bit random word.
    pub fn element_from(&self, bits: u64) -> u32 {
        (bits % self.order()) as u32
    }

    /// Rank of the given vectors (dense rows of equal length).
    pub fn rank(&self, rows: Vec<Vec<u32>>) -> usize {
        let mut e = DenseEchelon::new(self.clone(), rows.first().map_or(0, |r| r.len()));
        for r in rows {
            e.insert(r);
        }
        e.rank()
    }
}

/// Incremental echelon form over a [`SmallField`] with dense rows. Pivot
/// rows are kept fully reduced against each other.
pub struct DenseEchelon {
    field: SmallField,
    width: usize,
    /// `(pivot column, row)`; the row has 1 at its pivot.
    rows: Vec<(usize, Vec<u32>)>,
}

impl DenseEchelon {
    pub fn new(field: SmallField, width: usize) -> DenseEchelon {
        DenseEchelon { field, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` and stores it if independent; returns whether it was.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.width, "row width");
        let f = &self.field;
        for (col, row) in &self.rows {
            let c = v[*col];
            if c != 0 {
                let m = f.neg(c);
                for (x, y) in v.iter_mut().zip(row) {
                    if *y != 0 {
                        *x = f.add(*x, f.mul(m, *y));
                    }
                }
            }
        }
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[col]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[col];
            if c != 0 {
                let m = f.neg(c);
                for (x, y) in row.iter_mut().zip(&v) {
                    if *y != 0 {
                        *x = f.add(*x, f.mul(m, *y));
                    }
                }
            }
        }
        self.rows.push((col, v));
        true
    }
}

/// A map from scalars of `source` into a [`SmallField`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub source: Field,
    pub target: SmallField,
    /// Image of `t` when the source is a quotient ring over the rationals.
    pub root: Option<u64>,
    index: Option<HashMap<Scalar, u32>>,
}

impl Reduction {
    /// True when the map is an isomorphism (finite source field), so ranks
    /// are exact rather than lower bounds.
    pub fn is_exact(&self) -> bool {
        self.source.characteristic() != 0
    }

    pub fn map(&self, a: &Scalar) -> Result<u32, ExactError> {
        if let Some(index) = &self.index {
            return index.get(a).copied().ok_or_else(|| ExactError::BadScalar {
                literal: self.source.format(a),
                reason: "not an element of the field".into(),
            });
        }
        match (&self.target, self.source.characteristic()) {
            (SmallField::Prime(p), 0) => match self.source.reduce_mod(a, *p, self.root)? {
                Scalar::Mod(x) => Ok(x as u32),
                _ => unreachable!("prime field image"),
            },
            (_, _) => match a {
                Scalar::Mod(x) => Ok(*x as u32),
                _ => unreachable!("prime field scalar"),
            },
        }
    }

    /// Isomorphism onto word-sized arithmetic for a finite field.
    pub fn finite(field: &Field) -> Option<Reduction> {
        match field {
            Field::Rationals => None,
            Field::Prime(p) if *p < (1 << 31) => Some(Reduction {
                source: field.clone(),
                target: SmallField::Prime(*p),
                root: None,
                index: None,
            }),
            Field::Prime(_) => None,
            Field::Quotient(_) => {
                let order = field.order()?;
                if order > TABLE_ORDER_MAX {
                    return None;
                }
                let elements = field.elements()?;
                let index: HashMap<Scalar, u32> =
                    elements.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
                let n = elements.len();
                let mut add = vec![0; n * n];
                let mut mul = vec![0; n * n];
                for (i, a) in elements.iter().enumerate() {
                    for (j, b) in elements.iter().enumerate() {
                        add[i * n + j] = index[&field.add(a, b)];
                        mul[i * n + j] = index[&field.mul(a, b)];
                    }
                }
                let neg = elements.iter().map(|a| index[&field.neg(a)]).collect();
                let inv = elements
                    .iter()
                    .map(|a| field.inv(a).map_or(0, |x| index[&x]))
                    .collect();
                Some(Reduction {
                    source: field.clone(),
                    target: SmallField::Table {
                        order: n as u32,
                        characteristic: field.characteristic(),
                        add,
                        mul,
                        neg,
                        inv,
                    },
                    root: None,
                    index: Some(index),
                })
            }
        }
    }

    /// Homomorphism from a characteristic-0 field to `F_p` for the first
    /// prime `p >= start` where the modulus (if any) has a root.
    pub fn modular(field: &Field, start: u64) -> Option<Reduction> {
        if field.characteristic() != 0 {
            return None;
        }
        let mut p = start.max(3);
        for _ in 0..10_000 {
            if is_prime(p) {
                let root = match field {
                    Field::Quotient(_) => match field.modulus_roots_mod(p).first() {
                        Some(&r) => Some(r),
                        None => {
                            p += 1;
                            continue;
                        }
                    },
                    _ => None,
                };
                return Some(Reduction {
                    source: field.clone(),
                    target: SmallField::Prime(p),
                    root,
                    index: None,
                });
            }
            p += 1;
        }
        None
    }

    /// Exact isomorphism when the field is finite and small, otherwise a
    /// modular image starting at `start`.
    pub fn best(field: &Field, start: u64) -> Option<Reduction> {
        Reduction::finite(field).or_else(|| Reduction::modular(field, start))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_element_field_tables() {
        let f = Field::parse("Fp(2)[t]/(t^2+t+1)").unwrap();
        let r = Reduction::finite(&f).unwrap();
        let t = r.map(&f.generator().unwrap()).unwrap();
        let s = &r.target;
        // t^2 = t + 1
        let t2 = s.mul(t, t);
        assert_eq!(t2, s.add(t, r.map(&f.one()).unwrap()));
        assert_eq!(s.mul(t, s.inv(t)), r.map(&f.one()).unwrap());
        assert!(r.is_exact());
    }

    #[test]
    fn modular_image_has_cube_roots() {
        let f = Field::parse("QQ[t]/(t^2+t+1)").unwrap();
        let r = Reduction::modular(&f, 10_000).unwrap();
        let SmallField::Prime(p) = r.target else { panic!() };
        assert_eq!(p % 3, 1);
        let t = r.map(&f.generator().unwrap()).unwrap();
        let s = &r.target;
        assert_eq!(s.mul(t, s.mul(t, t)), 1);
        assert!(!r.is_exact());
    }

    #[test]
    fn dense_rank() {
        let s = SmallField::Prime(7);
        assert_eq!(s.rank(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
    }
}
