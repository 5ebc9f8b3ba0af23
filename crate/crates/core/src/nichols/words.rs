//! Tensor words, the braid operators `c_i`, quantum symmetrizers and skew
//! derivations acting on them.

use std::collections::BTreeMap;

use braidrack_exact::{Field, Scalar};

use crate::braiding::Cocycle;
use crate::error::NicholsError;

/// Element of `V^{⊗n}` in the basis of words `v_{x_1} ⊗ … ⊗ v_{x_n}`
/// (0-based letters). No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVector {
    degree: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl GradedVector {
    pub fn zero(degree: usize) -> GradedVector {
        GradedVector { degree, terms: BTreeMap::new() }
    }

    pub fn word(field: &Field, w: &[u32]) -> GradedVector {
        let mut v = GradedVector::zero(w.len());
        v.add_term(field, w.to_vec(), field.one());
        v
    }

    pub fn from_terms(
        field: &Field,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> GradedVector {
        let mut v = GradedVector::zero(degree);
        for (w, c) in terms {
            v.add_term(field, w, c);
        }
        v
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, field: &Field, w: &[u32]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add_term(&mut self, field: &Field, w: Vec<u32>, c: Scalar) {
        assert_eq!(w.len(), self.degree, "word degree");
        if field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = field.add(x, &c);
                if field.is_zero(&s) {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, field: &Field, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(field, w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, field: &Field, c: &Scalar) -> GradedVector {
        if field.is_zero(c) {
            return GradedVector::zero(self.degree);
        }
        GradedVector {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), field.mul(c, x))).collect(),
        }
    }

    /// If the vector has degree 0, its scalar value.
    pub fn scalar(&self, field: &Field) -> Option<Scalar> {
        (self.degree == 0).then(|| self.coefficient(field, &[]))
    }
}

/// Letters `a, b, c, …` for elements `0, 1, 2, …`.
pub fn format_word(w: &[u32]) -> String {
    w.iter().map(|&x| letter(x)).collect()
}

pub fn letter(x: u32) -> char {
    char::from(b'a' + x as u8)
}

/// Parses a plain word such as `"aab"`.
pub fn parse_word(text: &str, d: usize) -> Result<Vec<u32>, NicholsError> {
    text.chars()
        .map(|ch| {
            let x = (ch as u32).wrapping_sub('a' as u32);
            if ch.is_ascii_lowercase() && (x as usize) < d {
                Ok(x)
            } else {
                Err(NicholsError::BadRelation(format!("letter {ch:?} outside a..{}", letter(d as u32 - 1))))
            }
        })
        .collect()
}

/// `c_i` (1-based, acting on positions `i, i+1`).
pub fn braid_map(c: &Cocycle, i: usize, v: &GradedVector) -> GradedVector {
    assert!(i >= 1 && i < v.degree, "braid index {i} out of range for degree {}", v.degree);
    braid_at(c, i - 1, v)
}

fn braid_at(c: &Cocycle, i: usize, v: &GradedVector) -> GradedVector {
    let f = c.field();
    let mut out = GradedVector::zero(v.degree);
    for (w, x) in &v.terms {
        let (q, next) = c.braid_word(i, w);
        out.add_term(f, next, f.mul(&q, x));
    }
    out
}

/// `c_i^{-1}`: `v_a ⊗ v_b ↦ q_{b,y}^{-1} v_b ⊗ v_y` with `b ▷ y = a`.
pub fn braid_map_inverse(c: &Cocycle, i: usize, v: &GradedVector) -> GradedVector {
    assert!(i >= 1 && i < v.degree, "braid index {i} out of range for degree {}", v.degree);
    let (f, r) = (c.field(), c.rack());
    let mut out = GradedVector::zero(v.degree);
    for (w, x) in &v.terms {
        let (a, b) = (w[i - 1] as usize, w[i] as usize);
        let y = r.op_inv(b, a);
        let mut next = w.clone();
        next[i - 1] = b as u32;
        next[i] = y as u32;
        let q = f.inv(c.q(b, y)).expect("cocycle entries are nonzero");
        out.add_term(f, next, f.mul(&q, x));
    }
    out
}

/// `1 + c_s + c_s c_{s+1} + … + c_s⋯c_{s+k-2}` on positions `s..s+k`
/// (0-based `s`), evaluated in Horner form.
pub fn shuffle_factor(c: &Cocycle, start: usize, k: usize, v: &GradedVector) -> GradedVector {
    let f = c.field();
    let mut w = v.clone();
    for i in (start..start + k - 1).rev() {
        w = v.add(f, &braid_at(c, i, &w));
    }
    w
}

/// `S_n = (id ⊗ S_{n-1}) ∘ X_n`.
pub fn symmetrizer(c: &Cocycle, v: &GradedVector) -> GradedVector {
    let n = v.degree;
    let mut w = v.clone();
    for k in (2..=n).rev() {
        w = shuffle_factor(c, n - k, k, &w);
    }
    w
}

/// `X_3 = 1 + c_{12} + c_{12} c_{23}` on a degree-3 vector.
pub fn cubic_operator(c: &Cocycle, v: &GradedVector) -> GradedVector {
    assert_eq!(v.degree, 3);
    shuffle_factor(c, 0, 3, v)
}

/// Skew derivation `∂_y` with `∂_y(x w) = δ_{x,y} w + q_{x,φ_x⁻¹(y)} x ∂_{φ_x⁻¹(y)}(w)`.
pub fn derivation(c: &Cocycle, y: usize, v: &GradedVector) -> GradedVector {
    let (f, r) = (c.field(), c.rack());
    let mut out = GradedVector::zero(v.degree.saturating_sub(1));
    if v.degree == 0 {
        return out;
    }
    for (w, x) in &v.terms {
        let mut target = y;
        let mut coef = x.clone();
        for (pos, &letter) in w.iter().enumerate() {
            let l = letter as usize;
            if l == target {
                let mut rest = w[..pos].to_vec();
                rest.extend_from_slice(&w[pos + 1..]);
                out.add_term(f, rest, coef.clone());
            }
            let next = r.op_inv(l, target);
            coef = f.mul(&coef, c.q(l, next));
            target = next;
        }
    }
    out
}

/// Applies `∂_{chain[0]} ∘ ∂_{chain[1]} ∘ …`, rightmost first.
pub fn derivation_chain(c: &Cocycle, chain: &[u32], v: &GradedVector) -> GradedVector {
    chain
        .iter()
        .rev()
        .fold(v.clone(), |acc, &y| derivation(c, y as usize, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::constant_cocycle;
    use crate::presets::preset;

    fn d3(q: i64) -> Cocycle {
        let f = Field::Rationals;
        constant_cocycle(&preset("D3").unwrap(), &f, &f.from_int(q)).unwrap()
    }

    #[test]
    fn braid_on_dihedral_word() {
        let c = d3(-1);
        let f = c.field().clone();
        let v = GradedVector::word(&f, &[0, 1, 2]);
        let out = braid_map(&c, 1, &v);
        assert_eq!(out, GradedVector::from_terms(&f, 3, [(vec![2, 0, 2], f.from_int(-1))]));
        assert_eq!(braid_map_inverse(&c, 1, &out), v);
    }

    #[test]
    fn derivation_basics() {
        let c = d3(-1);
        let f = c.field().clone();
        let a = GradedVector::word(&f, &[0]);
        assert_eq!(derivation(&c, 0, &a).scalar(&f), Some(f.one()));
        assert!(derivation(&c, 1, &a).is_zero());
    }

    #[test]
    fn square_of_generator_is_in_kernel() {
        let c = d3(-1);
        let f = c.field().clone();
        assert!(symmetrizer(&c, &GradedVector::word(&f, &[0, 0])).is_zero());
        let c = d3(1);
        assert!(!symmetrizer(&c, &GradedVector::word(&f, &[0, 0])).is_zero());
    }
}
