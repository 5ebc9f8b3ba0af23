//! Graded components of a Nichols algebra from the skew derivations.
//!
//! `u ∈ V^{⊗n}` vanishes in `𝔅(V)` exactly when every `∂_y u` vanishes in
//! `𝔅_{n-1}(V)`. So `𝔅_n` is the quotient of `𝔅_{n-1} ⊗ V` by the kernel of
//! `D(u) = (∂_y u)_y`, and a basis of monomials `b·x` is chosen greedily.
//! For a word `u` and a letter `x`,
//! `∂_y(u x) = ∂_y(u) x + δ_{y, g_u(x)} χ_u(x) u` with `g_u = φ_{u_1}⋯φ_{u_m}`
//! and `χ_u(x) = ∏_j q_{u_j, φ_{u_{j+1}}⋯φ_{u_m}(x)}`, so `D(b·x)` only needs
//! the stored derivatives of `b` and the multiplication table one degree
//! down. Candidates are split by the grading `g_u`, which `D` respects.

use std::collections::BTreeMap;

use braidrack_exact::sparse::{axpy, collect_vec};
use braidrack_exact::{Echelon, Insert, Scalar, SparseVec};
use rayon::prelude::*;

use crate::braiding::Cocycle;
use crate::error::NicholsError;
use crate::nichols::words::GradedVector;
use crate::perm::Perm;

/// Inner-group grading shared by the derivation and quotient engines.
#[derive(Clone, Debug)]
pub(crate) struct Grading {
    /// Group elements, identity first.
    pub elements: Vec<Perm>,
    /// `right[g][x]` = index of `elements[g] ∘ φ_x`.
    pub right: Vec<Vec<usize>>,
}

/// Largest inner group used for the grading; above it everything is one block.
pub const GRADING_CAP: usize = 200_000;

impl Grading {
    pub fn new(c: &Cocycle) -> Grading {
        let r = c.rack();
        let d = r.size();
        match r.inner_group(GRADING_CAP) {
            Ok(g) => {
                let right = g
                    .elements
                    .iter()
                    .map(|e| (0..d).map(|x| g.index[&e.compose(&r.phi(x))]).collect())
                    .collect();
                Grading { elements: g.elements, right }
            }
            Err(_) => Grading {
                elements: vec![Perm::identity(d)],
                right: vec![vec![0; d]],
            },
        }
    }
}

/// One graded component.
#[derive(Clone, Debug)]
pub struct Level {
    /// Basis monomial `k` is `parent[k].0 · parent[k].1` (index one level down, letter).
    pub parent: Vec<(usize, u32)>,
    pub grade: Vec<usize>,
    /// `χ_b(z)` for each letter `z`.
    chi: Vec<Vec<Scalar>>,
    /// `D(b)` with coordinate `y · dim_{n-1} + i`.
    derivs: Vec<SparseVec>,
    /// Normal form of the candidate `b·x` (index `b·d + x`, `b` one level down).
    pub mult: Vec<SparseVec>,
}

impl Level {
    pub fn dim(&self) -> usize {
        self.parent.len()
    }
}

/// Graded components `𝔅_0, …, 𝔅_N` of `𝔅(V)` with monomial bases.
pub struct NicholsAlgebra {
    cocycle: Cocycle,
    grading: Grading,
    levels: Vec<Level>,
}

impl NicholsAlgebra {
    pub fn new(c: &Cocycle) -> NicholsAlgebra {
        let d = c.size();
        let f = c.field();
        let root = Level {
            parent: vec![(0, 0)],
            grade: vec![0],
            chi: vec![vec![f.one(); d]],
            derivs: vec![Vec::new()],
            mult: Vec::new(),
        };
        NicholsAlgebra {
            cocycle: c.clone(),
            grading: Grading::new(c),
            levels: vec![root],
        }
    }

    /// Computes components up to `max_degree` or the first zero one.
    pub fn compute(c: &Cocycle, max_degree: usize) -> Result<NicholsAlgebra, NicholsError> {
        let mut a = NicholsAlgebra::new(c);
        while a.top_computed() < max_degree && !a.is_finished() {
            a.extend()?;
        }
        Ok(a)
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n]
    }

    pub fn top_computed(&self) -> usize {
        self.levels.len() - 1
    }

    /// The last computed component is zero (so all later ones are).
    pub fn is_finished(&self) -> bool {
        self.levels.last().is_some_and(|l| l.dim() == 0)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Level::dim).collect()
    }

    /// Monomial representing basis element `k` of degree `n`.
    pub fn basis_word(&self, n: usize, mut k: usize) -> Vec<u32> {
        let mut w = Vec::with_capacity(n);
        for m in (1..=n).rev() {
            let (b, x) = self.levels[m].parent[k];
            w.push(x);
            k = b;
        }
        w.reverse();
        w
    }

    /// Adds the next component.
    pub fn extend(&mut self) -> Result<(), NicholsError> {
        let n = self.levels.len();
        let c = &self.cocycle;
        let f = c.field().clone();
        let d = c.size();
        let prev = &self.levels[n - 1];
        let dim_prev = prev.dim();
        let dim_prev2 = if n >= 2 { self.levels[n - 2].dim() } else { 1 };
        let grading = &self.grading;

        // candidates grouped by grade
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for b in 0..dim_prev {
            for x in 0..d {
                blocks.entry(grading.right[prev.grade[b]][x]).or_default().push(b * d + x);
            }
        }
        let derivative = |cand: usize| -> SparseVec {
            let (b, x) = (cand / d, cand % d);
            let mut entries: Vec<(usize, Scalar)> = Vec::new();
            for (idx, lambda) in &prev.derivs[b] {
                let (y, i) = (idx / dim_prev2, idx % dim_prev2);
                for (j, mu) in &prev.mult[i * d + x] {
                    entries.push((y * dim_prev + j, f.mul(lambda, mu)));
                }
            }
            let g = &grading.elements[prev.grade[b]];
            entries.push((g.apply(x) * dim_prev + b, prev.chi[b][x].clone()));
            collect_vec(&f, entries)
        };

        let results: Vec<Vec<(usize, Result<SparseVec, SparseVec>)>> = blocks
            .par_iter()
            .map(|(_, cands)| {
                let mut e = Echelon::new(f.clone());
                let mut out = Vec::with_capacity(cands.len());
                for &cand in cands {
                    let v = derivative(cand);
                    match e.insert_tagged(v.clone(), vec![(cand, f.one())])? {
                        Insert::Independent(_) => out.push((cand, Ok(v))),
                        Insert::Dependent(tag) => out.push((cand, Err(tag))),
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, NicholsError>>()?;

        let mut flat: Vec<(usize, Result<SparseVec, SparseVec>)> = results.into_iter().flatten().collect();
        flat.sort_by_key(|(cand, _)| *cand);
        let mut index_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut level = Level {
            parent: Vec::new(),
            grade: Vec::new(),
            chi: Vec::new(),
            derivs: Vec::new(),
            mult: vec![Vec::new(); dim_prev * d],
        };
        let r = c.rack();
        for (cand, res) in &flat {
            if let Ok(v) = res {
                let (b, x) = (cand / d, cand % d);
                index_of.insert(*cand, level.parent.len());
                level.mult[*cand] = vec![(level.parent.len(), f.one())];
                level.parent.push((b, x as u32));
                level.grade.push(grading.right[prev.grade[b]][x]);
                level.chi.push((0..d).map(|z| f.mul(&prev.chi[b][r.op(x, z)], c.q(x, z))).collect());
                level.derivs.push(v.clone());
            }
        }
        for (cand, res) in flat {
            if let Err(tag) = res {
                let v: Vec<(usize, Scalar)> = tag
                    .into_iter()
                    .filter(|(j, _)| *j != cand)
                    .map(|(j, lambda)| (index_of[&j], f.neg(&lambda)))
                    .collect();
                level.mult[cand] = collect_vec(&f, v);
            }
        }
        self.levels.push(level);
        Ok(())
    }

    /// Coordinates of `b · x` for a vector `b` in degree `n`.
    pub fn multiply_letter(&self, n: usize, v: &SparseVec, x: u32) -> SparseVec {
        let f = self.cocycle.field();
        let d = self.cocycle.size();
        let mult = &self.levels[n + 1].mult;
        let mut acc: SparseVec = Vec::new();
        for (i, lambda) in v {
            acc = axpy(f, &acc, lambda, &mult[i * d + x as usize]);
        }
        acc
    }

    /// Image of a tensor in `𝔅_n` (coordinates in the monomial basis).
    pub fn normal_form(&self, v: &GradedVector) -> Result<SparseVec, NicholsError> {
        let n = v.degree();
        if n > self.top_computed() {
            return Err(NicholsError::DegreeCap { degree: n, size: 0, cap: self.top_computed() });
        }
        let f = self.cocycle.field();
        let mut out: SparseVec = Vec::new();
        for (w, coef) in v.terms() {
            let mut cur: SparseVec = vec![(0, f.one())];
            for (m, &x) in w.iter().enumerate() {
                cur = self.multiply_letter(m, &cur, x);
                if cur.is_empty() {
                    break;
                }
            }
            out = axpy(f, &out, coef, &cur);
        }
        Ok(out)
    }

    /// `D(b)` for basis element `k` of degree `n`, as `(y, coordinates)`.
    pub fn derivatives(&self, n: usize, k: usize) -> Vec<(usize, SparseVec)> {
        let dim_prev = self.levels[n - 1].dim();
        let mut by_y: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (idx, x) in &self.levels[n].derivs[k] {
            by_y.entry(idx / dim_prev).or_default().push((idx % dim_prev, x.clone()));
        }
        by_y.into_iter().collect()
    }
}
