//! Named racks with fixed labelings.
//!
//! | name | labeling |
//! |------|----------|
//! | `D3` | φ1=(2 3), φ2=(1 3), φ3=(1 2) |
//! | `T`  | φ1=(2 3 4), φ2=(1 4 3), φ3=(1 2 4), φ4=(1 3 2) |
//! | `A`  | transpositions of S4: x1=(1 2), x2=(1 3), x3=(2 3), x4=(3 4), x5=(1 4), x6=(2 4) |
//! | `B`  | 4-cycles of S4: x1=(1 2 3 4), x2=(1 2 4 3), x3=(1 4 2 3), x4=(1 3 4 2), x5=(1 3 2 4), x6=(1 4 3 2) |
//! | `C`  | transpositions of S5: x1=(1 2), x2=(2 3), x3=(1 3), x4=(2 4), x5=(1 4), x6=(2 5), x7=(1 5), x8=(3 4), x9=(3 5), x10=(4 5) |
//! | `Aff(q,a)` | element `c0 + c1 t + ...` of F_q has label `1 + c0 + c1 p + ...`; `x▷y = (1-a)x + a y` |
//!
//! F_q for prime powers is `F_p[t]/(f)` with `f` the first irreducible
//! polynomial in the scan `t^k + c` (c = 1..p-1), then all monic polynomials
//! of degree k; this gives `t^2+1` for F_9 and `t^2+2` for F_25.

use braidrack_exact::{Field, Irreducibility, Scalar};

use crate::error::RackError;
use crate::perm::Perm;
use crate::rack::{conjugacy_class_rack, Rack};

/// Names accepted by [`preset`] besides `Aff(q,a)`.
pub const PRESET_NAMES: [&str; 8] = ["D3", "T", "A", "B", "C", "Aff(7,3)", "Aff(7,5)", "Aff(9,2)"];

/// A rack realised as a conjugacy class in a permutation group, with the
/// class elements listed in rack order.
#[derive(Clone, Debug)]
pub struct ClassModel {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub labels: Vec<Perm>,
}

fn perms(n: usize, cycles: &[&str]) -> Vec<Perm> {
    cycles
        .iter()
        .map(|c| Perm::parse_cycles(n, c).expect("preset cycle"))
        .collect()
}

/// Rack whose element `i` is `labels[i]`, with `x▷y = xyx⁻¹`.
pub fn rack_from_labels(labels: &[Perm]) -> Result<Rack, RackError> {
    let index: std::collections::HashMap<&Perm, usize> = labels.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = Vec::with_capacity(labels.len());
    for x in labels {
        let mut row = Vec::with_capacity(labels.len());
        for y in labels {
            let c = x.conjugate(y);
            let &k = index.get(&c).ok_or(RackError::ElementNotInGroup)?;
            row.push(k as u32);
        }
        table.push(row);
    }
    Rack::new(table)
}

/// Permutation-group models of the class racks, labeled as in the table above.
pub fn class_model(name: &str) -> Option<ClassModel> {
    let (degree, gens, labels): (usize, Vec<&str>, Vec<&str>) = match name {
        "D3" => (3, vec!["(1 2)", "(1 2 3)"], vec!["(2 3)", "(1 3)", "(1 2)"]),
        "A" => (
            4,
            vec!["(1 2)", "(1 2 3 4)"],
            vec!["(1 2)", "(1 3)", "(2 3)", "(3 4)", "(1 4)", "(2 4)"],
        ),
        "B" => (
            4,
            vec!["(1 2)", "(1 2 3 4)"],
            vec!["(1 2 3 4)", "(1 2 4 3)", "(1 4 2 3)", "(1 3 4 2)", "(1 3 2 4)", "(1 4 3 2)"],
        ),
        "C" => (
            5,
            vec!["(1 2)", "(1 2 3 4 5)"],
            vec![
                "(1 2)", "(2 3)", "(1 3)", "(2 4)", "(1 4)", "(2 5)", "(1 5)", "(3 4)", "(3 5)", "(4 5)",
            ],
        ),
        _ => return None,
    };
    Some(ClassModel {
        degree,
        generators: perms(degree, &gens),
        labels: perms(degree, &labels),
    })
}

pub fn preset(name: &str) -> Result<Rack, RackError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "D3" => Rack::from_permutations(&perms(3, &["(2 3)", "(1 3)", "(1 2)"])),
        "T" => Rack::from_permutations(&perms(4, &["(2 3 4)", "(1 4 3)", "(1 2 4)", "(1 3 2)"])),
        "A" | "B" | "C" => rack_from_labels(&class_model(&compact).unwrap().labels),
        other => {
            if let Some(args) = other.strip_prefix("Aff(").and_then(|r| r.strip_suffix(')')) {
                let (q, a) = args
                    .split_once(',')
                    .ok_or_else(|| RackError::UnknownPreset(name.to_string()))?;
                let q: u64 = q.parse().map_err(|_| RackError::UnknownPreset(name.to_string()))?;
                affine(q, a)
            } else if let Some(n) = other.strip_prefix("trivial(").and_then(|r| r.strip_suffix(')')) {
                let n: usize = n.parse().map_err(|_| RackError::UnknownPreset(name.to_string()))?;
                if n == 0 {
                    return Err(RackError::UnknownPreset(name.to_string()));
                }
                Rack::new(vec![(0..n as u32).collect(); n])
            } else {
                Err(RackError::UnknownPreset(name.to_string()))
            }
        }
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// The field F_q used for affine racks (see module docs for the modulus).
pub fn finite_field(q: u64) -> Option<Field> {
    let (p, k) = prime_power(q)?;
    let fp = Field::Prime(p);
    if k == 1 {
        return Some(fp);
    }
    if k > 3 {
        return None;
    }
    let k = k as usize;
    let try_modulus = |coeffs: Vec<u64>| -> Option<Field> {
        let m: Vec<Scalar> = coeffs.into_iter().map(Scalar::Mod).collect();
        let f = Field::quotient(fp.clone(), m).ok()?;
        (f.irreducibility() == Irreducibility::Verified).then_some(f)
    };
    for c in 1..p {
        let mut coeffs = vec![0u64; k + 1];
        coeffs[0] = c;
        coeffs[k] = 1;
        if let Some(f) = try_modulus(coeffs) {
            return Some(f);
        }
    }
    for n in 0..p.pow(k as u32) {
        let mut coeffs: Vec<u64> = (0..k).map(|i| (n / p.pow(i as u32)) % p).collect();
        coeffs.push(1);
        if let Some(f) = try_modulus(coeffs) {
            return Some(f);
        }
    }
    None
}

/// `Aff(F_q, a)`; `a` is a scalar literal in the model of F_q.
pub fn affine(q: u64, alpha: &str) -> Result<Rack, RackError> {
    let err = |reason: &str| RackError::AffineNotARack {
        q: q.to_string(),
        alpha: alpha.to_string(),
        reason: reason.to_string(),
    };
    let field = finite_field(q).ok_or_else(|| err("q is not a supported prime power"))?;
    let a = field.parse_scalar(alpha).map_err(|e| err(&e.to_string()))?;
    affine_in(&field, &a).map_err(|_| err("alpha is not a unit"))
}

/// `Aff(F, a)` for a finite field given explicitly.
pub fn affine_in(field: &Field, a: &Scalar) -> Result<Rack, RackError> {
    let elements = field.elements().ok_or(RackError::UnknownPreset(field.to_string()))?;
    if field.is_zero(a) {
        return Err(RackError::AffineNotARack {
            q: elements.len().to_string(),
            alpha: field.format(a),
            reason: "alpha is zero".into(),
        });
    }
    let index: std::collections::HashMap<&Scalar, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let one_minus = field.sub(&field.one(), a);
    let table = elements
        .iter()
        .map(|x| {
            let base = field.mul(&one_minus, x);
            elements
                .iter()
                .map(|y| index[&field.add(&base, &field.mul(a, y))] as u32)
                .collect()
        })
        .collect();
    Rack::new(table)
}

/// For a prime `p > 3`: a field size `q ∈ {p, p²}` and `a` with
/// `1 - a + a² = 0` in F_q (the smallest such element in label order).
pub fn braided_affine_param(p: u64) -> Option<(u64, Field, Scalar)> {
    if p <= 3 || prime_power(p) != Some((p, 1)) {
        return None;
    }
    for q in [p, p * p] {
        let f = finite_field(q)?;
        for a in f.elements()? {
            let v = f.add(&f.sub(&f.one(), &a), &f.mul(&a, &a));
            if f.is_zero(&v) {
                return Some((q, f, a));
            }
        }
    }
    None
}

/// The class rack of `g` in `⟨generators⟩` (labels in breadth-first order).
pub fn class_rack(generators: &[Perm], g: &Perm) -> Result<(Rack, Vec<Perm>), RackError> {
    conjugacy_class_rack(generators, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_translations() {
        let b = preset("B").unwrap();
        assert_eq!(b.phi(0).to_string(), "(2 3 4 5)");
        assert_eq!(b.phi(1).to_string(), "(1 5 6 3)");
        assert_eq!(b.phi(5).to_string(), "(2 5 4 3)");
        let a = preset("A").unwrap();
        assert_eq!(a.phi(0).to_string(), "(2 3)(5 6)");
        assert_eq!(a.phi(1).to_string(), "(1 3)(4 5)");
        let t = preset("T").unwrap();
        assert_eq!(t.phi(0).to_string(), "(2 3 4)");
    }

    #[test]
    fn field_models() {
        assert_eq!(finite_field(9).unwrap().to_string(), "Fp(3)[t]/(t^2+1)");
        assert_eq!(finite_field(25).unwrap().to_string(), "Fp(5)[t]/(t^2+2)");
        assert_eq!(finite_field(4).unwrap().to_string(), "Fp(2)[t]/(t^2+t+1)");
        assert!(finite_field(12).is_none());
    }

    #[test]
    fn affine_parameters() {
        let (q, _, a) = braided_affine_param(7).unwrap();
        assert_eq!((q, a), (7, Scalar::Mod(3)));
        let (q, f, a) = braided_affine_param(13).unwrap();
        assert_eq!((q, f.format(&a)), (13, "4".to_string()));
        let (q, f, a) = braided_affine_param(5).unwrap();
        assert_eq!(q, 25);
        // a^2 = a - 1
        assert_eq!(f.mul(&a, &a), f.sub(&a, &f.one()));
        assert!(affine(7, "0").is_err());
        assert!(preset("Aff(6,5)").is_err());
    }
}
