//! Finitely presented quotients `T(V)/(R)` with homogeneous relations,
//! computed degree by degree.
//!
//! `A_n = (A_{n-1} ⊗ V) / span{ b·r : b ∈ basis(A_{n-k}), r ∈ R_k }`: the
//! ideal in degree `n` is `I_{n-1}·V + V·I_{n-1} + R_n`, and modulo the first
//! summand only products `b·r` with `r` ending in the last position remain.
//! The monomial basis keeps the candidates `b·x` that are not pivots.

use std::collections::BTreeMap;

use braidrack_exact::sparse::{axpy, collect_vec};
use braidrack_exact::{Echelon, Field, Scalar, SparseVec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braiding::Cocycle;
use crate::error::NicholsError;
use crate::nichols::engine::Grading;
use crate::nichols::words::{parse_word, symmetrizer, GradedVector};

/// Relations file entry: `{"degree": 2, "terms": [{"word": "ab", "coeff": "q^2"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub degree: usize,
    pub terms: Vec<RelationTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub word: String,
    pub coeff: String,
}

/// A braided space with homogeneous relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub cocycle: Cocycle,
    pub relations: Vec<GradedVector>,
}

impl Presentation {
    pub fn new(cocycle: Cocycle, relations: Vec<GradedVector>) -> Presentation {
        Presentation { cocycle, relations }
    }

    pub fn from_files(cocycle: Cocycle, files: &[RelationFile]) -> Result<Presentation, NicholsError> {
        let f = cocycle.field().clone();
        let d = cocycle.size();
        let mut relations = Vec::new();
        for (k, r) in files.iter().enumerate() {
            let mut v = GradedVector::zero(r.degree);
            for t in &r.terms {
                let w = parse_word(&t.word, d)?;
                if w.len() != r.degree {
                    return Err(NicholsError::NotHomogeneous(k + 1));
                }
                let c = f.parse_scalar(&t.coeff)?;
                v.add_term(&f, w, c);
            }
            relations.push(v);
        }
        Ok(Presentation { cocycle, relations })
    }

    pub fn from_json(cocycle: Cocycle, text: &str) -> Result<Presentation, NicholsError> {
        let files: Vec<RelationFile> =
            serde_json::from_str(text).map_err(|e| NicholsError::BadRelation(e.to_string()))?;
        Presentation::from_files(cocycle, &files)
    }

    pub fn to_files(&self) -> Vec<RelationFile> {
        let f = self.cocycle.field();
        self.relations
            .iter()
            .map(|r| RelationFile {
                degree: r.degree(),
                terms: r
                    .terms()
                    .map(|(w, c)| RelationTerm {
                        word: crate::nichols::words::format_word(w),
                        coeff: f.format(c),
                    })
                    .collect(),
            })
            .collect()
    }
}

/// Parses a relation written as a sum of monomials, such as
/// `ab+q^2bc+qca` or `(a^2b^2)^3 + b(a^2b^2)^2a^2b`. A coefficient is an
/// optional integer followed by an optional power of `q`.
pub fn parse_relation(field: &Field, d: usize, text: &str) -> Result<GradedVector, NicholsError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let mut terms: Vec<(Vec<u32>, Scalar)> = Vec::new();
    let bad = |msg: String| NicholsError::BadRelation(format!("{text:?}: {msg}"));
    while pos < chars.len() {
        let mut negative = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            negative = chars[pos] == '-';
            pos += 1;
        } else if !terms.is_empty() {
            return Err(bad(format!("expected sign at {pos}")));
        }
        // coefficient
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut coeff: String = chars[start..pos].iter().collect();
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
        }
        if pos < chars.len() && chars[pos] == 'q' {
            pos += 1;
            let mut power = String::from("q");
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let s = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                power.push('^');
                power.extend(&chars[s..pos]);
            }
            coeff = if coeff.is_empty() { power } else { format!("{coeff}*{power}") };
        }
        if coeff.is_empty() {
            coeff.push('1');
        }
        let mut c = field.parse_scalar(&coeff)?;
        if negative {
            c = field.neg(&c);
        }
        let word = parse_monomial(&chars, &mut pos, d).map_err(bad)?;
        if word.is_empty() {
            return Err(bad(format!("empty monomial at {pos}")));
        }
        terms.push((word, c));
    }
    let degree = terms.first().map_or(0, |t| t.0.len());
    if terms.iter().any(|t| t.0.len() != degree) {
        return Err(NicholsError::BadRelation(format!("{text:?} is not homogeneous")));
    }
    Ok(GradedVector::from_terms(field, degree, terms))
}

fn parse_monomial(chars: &[char], pos: &mut usize, d: usize) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    while *pos < chars.len() {
        let ch = chars[*pos];
        let factor = if ch == '(' {
            *pos += 1;
            let inner = parse_monomial(chars, pos, d)?;
            if *pos >= chars.len() || chars[*pos] != ')' {
                return Err("unbalanced parenthesis".into());
            }
            *pos += 1;
            inner
        } else if ch.is_ascii_lowercase() && ch != 'q' {
            let x = ch as u32 - 'a' as u32;
            if x as usize >= d {
                return Err(format!("letter {ch:?} outside the generators"));
            }
            *pos += 1;
            vec![x]
        } else {
            break;
        };
        let mut power = 1usize;
        if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            let s = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            power = chars[s..*pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "bad exponent".to_string())?;
        }
        for _ in 0..power {
            out.extend_from_slice(&factor);
        }
    }
    Ok(out)
}

/// `S_n(r) = 0` for each relation `r`.
pub fn relation_in_kernel(p: &Presentation) -> Vec<bool> {
    p.relations
        .par_iter()
        .map(|r| symmetrizer(&p.cocycle, r).is_zero())
        .collect()
}

/// Per-degree dimensions of a graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub field: String,
    pub dims: Vec<usize>,
    pub methods: Vec<DimMethod>,
    /// The last entry is zero, so the algebra is finite-dimensional and
    /// `dims` lists every nonzero component.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimMethod {
    /// Rank of the quantum symmetrizer on Hurwitz blocks.
    SymmetrizerRank,
    /// Kernel of the derivations, degree by degree.
    DerivationKernel,
    /// Monomial basis of a presented quotient.
    QuotientBasis,
}

impl GradedDims {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.dims.iter().rposition(|&x| x != 0)
    }
}

#[derive(Clone, Debug)]
struct QuotientLevel {
    grade: Vec<usize>,
    /// Normal form of candidate `b·x` at index `b·d + x`.
    mult: Vec<SparseVec>,
    dim: usize,
}

/// Dimensions of `T(V)/(R)` up to `max_degree`, stopping at the first zero.
pub fn quotient_dims(p: &Presentation, max_degree: usize) -> Result<GradedDims, NicholsError> {
    let c = &p.cocycle;
    let f = c.field().clone();
    let d = c.size();
    for (k, r) in p.relations.iter().enumerate() {
        if r.is_zero() || r.degree() == 0 {
            return Err(NicholsError::NotHomogeneous(k + 1));
        }
    }
    let grading = Grading::new(c);
    let word_grade = |w: &[u32]| w.iter().fold(0usize, |g, &x| grading.right[g][x as usize]);
    // relations split by their grade; mixed relations disable the blocking
    let graded = p.relations.iter().all(|r| {
        let gs: Vec<usize> = r.terms().map(|(w, _)| word_grade(w)).collect();
        gs.windows(2).all(|w| w[0] == w[1])
    });
    let block_of = |g: usize| if graded { g } else { 0 };

    let mut levels = vec![QuotientLevel { grade: vec![0], mult: Vec::new(), dim: 1 }];
    let mut dims = vec![1usize];
    while dims.len() <= max_degree && *dims.last().unwrap() != 0 {
        let n = dims.len();
        let prev = &levels[n - 1];
        // candidate blocks
        let mut cand_block: Vec<usize> = Vec::with_capacity(prev.dim * d);
        let mut blocks: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
        for b in 0..prev.dim {
            for x in 0..d {
                let g = grading.right[prev.grade[b]][x];
                cand_block.push(g);
                blocks.entry(block_of(g)).or_default();
            }
        }
        // relation images b·r
        for r in &p.relations {
            let k = r.degree();
            if k > n {
                continue;
            }
            let base = &levels[n - k];
            for b in 0..base.dim {
                let mut image: SparseVec = Vec::new();
                for (w, coef) in r.terms() {
                    let mut cur: SparseVec = vec![(b, f.one())];
                    for (step, &x) in w[..k - 1].iter().enumerate() {
                        let mult = &levels[n - k + step + 1].mult;
                        let mut next: SparseVec = Vec::new();
                        for (i, lambda) in &cur {
                            next = axpy(&f, &next, lambda, &mult[i * d + x as usize]);
                        }
                        cur = next;
                        if cur.is_empty() {
                            break;
                        }
                    }
                    let last = w[k - 1] as usize;
                    let cand: Vec<(usize, Scalar)> =
                        cur.into_iter().map(|(i, lambda)| (i * d + last, f.mul(coef, &lambda))).collect();
                    image = axpy(&f, &image, &f.one(), &cand);
                }
                if !image.is_empty() {
                    let g = r.terms().next().map_or(0, |(w, _)| {
                        w.iter().fold(base.grade[b], |g, &x| grading.right[g][x as usize])
                    });
                    blocks.entry(block_of(g)).or_default().push(image);
                }
            }
        }
        // eliminate each block; pivots are the smallest candidate index
        let reduced: Vec<BTreeMap<usize, SparseVec>> = blocks
            .par_iter()
            .map(|(_, vecs)| {
                let mut e = Echelon::new(f.clone());
                for v in vecs {
                    e.insert(v.clone())?;
                }
                Ok(e.reduced_rows()?)
            })
            .collect::<Result<_, NicholsError>>()?;
        let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for r in reduced {
            pivots.extend(r);
        }
        let total = prev.dim * d;
        let mut index_of = vec![usize::MAX; total];
        let mut level = QuotientLevel { grade: Vec::new(), mult: vec![Vec::new(); total], dim: 0 };
        for (cand, slot) in index_of.iter_mut().enumerate() {
            if !pivots.contains_key(&cand) {
                *slot = level.dim;
                level.mult[cand] = vec![(level.dim, f.one())];
                level.grade.push(cand_block[cand]);
                level.dim += 1;
            }
        }
        for (cand, row) in &pivots {
            let v: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(j, _)| j != cand)
                .map(|(j, x)| (index_of[*j], f.neg(x)))
                .collect();
            level.mult[*cand] = collect_vec(&f, v);
        }
        dims.push(level.dim);
        levels.push(level);
    }
    let complete = *dims.last().unwrap() == 0;
    Ok(GradedDims {
        field: f.to_string(),
        methods: vec![DimMethod::QuotientBasis; dims.len()],
        dims,
        complete,
    })
}

/// Relations of the two finite-dimensional presented examples: `d3char2`
/// (the dihedral rack of order 3 over `F₄`) and `t-new` (the tetrahedral rack
/// with a cube root of unity).
pub const PRESENTATION_PRESETS: &[&str] = &["d3char2", "t-new"];

pub fn preset_relations(name: &str) -> Result<&'static [&'static str], NicholsError> {
    match name {
        "d3char2" => Ok(&[
            "ab+q^2bc+qca",
            "ac+q^2cb+qba",
            "a^3",
            "b^3",
            "c^3",
            "(a^2b^2)^3+b(a^2b^2)^2a^2b+b^2(a^2b^2)^2a^2+ab^2(a^2b^2)^2a",
        ]),
        "t-new" => Ok(&[
            "a^3",
            "b^3",
            "c^3",
            "d^3",
            "-q^2ab-qbc+ca",
            "-q^2ac-qcd+da",
            "qad-q^2ba+db",
            "qbd+q^2cb+dc",
            "a^2bcb^2+abcb^2a+bcb^2a^2+cb^2a^2b+b^2a^2bc+ba^2bcb+bcba^2c+cbabac+cb^2aca",
        ]),
        _ => Err(NicholsError::UnknownPreset(name.to_string())),
    }
}

pub fn presentation_preset(name: &str) -> Result<Presentation, NicholsError> {
    let texts = preset_relations(name)?;
    let cocycle = crate::braiding::cocycle_preset(name, None)
        .map_err(|_| NicholsError::UnknownPreset(name.to_string()))?;
    let f = cocycle.field().clone();
    let d = cocycle.size();
    let relations = texts
        .iter()
        .map(|t| parse_relation(&f, d, t))
        .collect::<Result<_, _>>()?;
    Ok(Presentation::new(cocycle, relations))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_powers_and_groups() {
        let f = Field::Rationals;
        let r = parse_relation(&f, 3, "(ab)^2c - 2*b^2a^2c").unwrap();
        assert_eq!(r.degree(), 5);
        assert_eq!(r.coefficient(&f, &[0, 1, 0, 1, 2]), f.one());
        assert_eq!(r.coefficient(&f, &[1, 1, 0, 0, 2]), f.from_int(-2));
        assert!(parse_relation(&f, 3, "ab+c").is_err());
        assert!(parse_relation(&f, 2, "ac").is_err());
    }

    #[test]
    fn free_quotient_by_squares() {
        // x², y², xy + yx over a trivial-like cocycle give the exterior algebra
        let c = crate::braiding::constant_cocycle(
            &crate::presets::preset("D3").unwrap(),
            &Field::Rationals,
            &Field::Rationals.from_int(-1),
        )
        .unwrap();
        let p = Presentation::new(c.clone(), vec![]);
        let dims = quotient_dims(&p, 3).unwrap();
        assert_eq!(dims.dims, vec![1, 3, 9, 27]);
        let f = c.field();
        let rels = ["a^2", "b^2", "c^2", "ab+bc+ca", "ac+cb+ba"]
            .iter()
            .map(|t| parse_relation(f, 3, t).unwrap())
            .collect();
        let p = Presentation::new(c, rels);
        assert!(relation_in_kernel(&p).iter().all(|&x| x));
        let dims = quotient_dims(&p, 6).unwrap();
        assert_eq!(dims.dims, vec![1, 3, 4, 3, 1, 0]);
        assert!(dims.complete);
    }
}
