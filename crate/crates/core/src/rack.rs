//! Finite racks given by their operation tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::RackError;
use crate::perm::{Perm, PermGroup, GROUP_CAP};

/// A validated finite rack. Internally elements are `0..d`; the JSON format
/// and all user-facing labels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rack {
    table: Vec<Vec<u32>>,
    inverse: Vec<Vec<u32>>,
}

/// On-disk rack format: `{"size": d, "table": [[...], ...]}` with 1-based
/// entries, row `i` listing `i▷1, ..., i▷d`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RackFile {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl Rack {
    /// Validates a 0-based table.
    pub fn new(table: Vec<Vec<u32>>) -> Result<Rack, RackError> {
        let d = table.len();
        if d == 0 || table.iter().any(|r| r.len() != d) {
            return Err(RackError::NotSquare);
        }
        for (i, row) in table.iter().enumerate() {
            if let Some(&v) = row.iter().find(|&&v| v as usize >= d) {
                return Err(RackError::EntryOutOfRange {
                    row: i + 1,
                    value: v as usize + 1,
                    size: d,
                });
            }
            let mut seen = vec![false; d];
            for &v in row {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(RackError::RowNotPermutation(i + 1));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = table[i][table[j][k] as usize];
                    let rhs = table[table[i][j] as usize][table[i][k] as usize];
                    if lhs != rhs {
                        return Err(RackError::SelfDistributivityFails(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        let inverse = table
            .iter()
            .map(|row| {
                let mut inv = vec![0u32; d];
                for (j, &v) in row.iter().enumerate() {
                    inv[v as usize] = j as u32;
                }
                inv
            })
            .collect();
        Ok(Rack { table, inverse })
    }

    /// Validates a 1-based table.
    pub fn from_one_based(table: &[Vec<usize>]) -> Result<Rack, RackError> {
        let d = table.len();
        let mut t = Vec::with_capacity(d);
        for (i, row) in table.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for &v in row {
                if v == 0 || v > d {
                    return Err(RackError::EntryOutOfRange { row: i + 1, value: v, size: d });
                }
                r.push((v - 1) as u32);
            }
            t.push(r);
        }
        Rack::new(t)
    }

    /// Builds the rack on `{0..d}` whose translations are the given
    /// permutations.
    pub fn from_permutations(perms: &[Perm]) -> Result<Rack, RackError> {
        Rack::new(perms.iter().map(|p| p.0.clone()).collect())
    }

    pub fn from_file(file: &RackFile) -> Result<Rack, RackError> {
        if file.size != file.table.len() {
            return Err(RackError::BadFile(format!(
                "size {} but {} rows",
                file.size,
                file.table.len()
            )));
        }
        Rack::from_one_based(&file.table)
    }

    pub fn to_file(&self) -> RackFile {
        RackFile {
            size: self.size(),
            table: self.one_based_table(),
        }
    }

    pub fn from_json(text: &str) -> Result<Rack, RackError> {
        let file: RackFile = serde_json::from_str(text).map_err(|e| RackError::BadFile(e.to_string()))?;
        Rack::from_file(&file)
    }

    /// Canonical JSON: `{"size":d,"table":[[..],..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("rack serializes")
    }

    pub fn one_based_table(&self) -> Vec<Vec<usize>> {
        self.table
            .iter()
            .map(|r| r.iter().map(|&v| v as usize + 1).collect())
            .collect()
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    /// `i ▷ j`.
    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i][j] as usize
    }

    /// `φ_i⁻¹(j)`.
    #[inline]
    pub fn op_inv(&self, i: usize, j: usize) -> usize {
        self.inverse[i][j] as usize
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn phi(&self, i: usize) -> Perm {
        Perm(self.table[i].clone())
    }

    pub fn phis(&self) -> Vec<Perm> {
        (0..self.size()).map(|i| self.phi(i)).collect()
    }

    pub fn is_quandle(&self) -> bool {
        (0..self.size()).all(|i| self.op(i, i) == i)
    }

    /// Quandle with `x▷(y▷x) = y` or `x▷y = y` for all `x, y`.
    pub fn is_braided(&self) -> bool {
        let d = self.size();
        self.is_quandle()
            && (0..d).all(|x| (0..d).all(|y| self.op(x, y) == y || self.op(x, self.op(y, x)) == y))
    }

    pub fn is_faithful(&self) -> bool {
        let mut rows: Vec<&Vec<u32>> = self.table.iter().collect();
        rows.sort();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// Orbits of the inner group, each sorted, ordered by smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let d = self.size();
        let mut comp = vec![usize::MAX; d];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..d {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut k = 0;
            while k < members.len() {
                let y = members[k];
                k += 1;
                for x in 0..d {
                    for z in [self.op(x, y), self.op_inv(x, y)] {
                        if comp[z] == usize::MAX {
                            comp[z] = c;
                            members.push(z);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().len() == 1
    }

    pub fn inner_group(&self, cap: usize) -> Result<PermGroup, RackError> {
        PermGroup::generate(&self.phis(), cap)
    }

    /// The common order of the translations, if they all have the same order.
    pub fn degree(&self) -> Option<usize> {
        let orders: Vec<usize> = self.phis().iter().map(|p| p.order()).collect();
        if orders.windows(2).all(|w| w[0] == w[1]) {
            orders.first().copied()
        } else {
            None
        }
    }

    /// For a fixed `x`, the return step of each `y`: the least `n >= 1` with
    /// `x▷(y▷(x▷…))` (n symbols) equal to `y`, searched up to `2d`.
    pub fn return_steps(&self, x: usize) -> Vec<Option<usize>> {
        let d = self.size();
        (0..d)
            .map(|y| {
                // f[n]: n symbols starting with x; g[n]: n symbols starting with y
                let (mut f, mut g) = (x, y);
                if f == y {
                    return Some(1);
                }
                for n in 2..=2 * d {
                    let (nf, ng) = (self.op(x, g), self.op(y, f));
                    f = nf;
                    g = ng;
                    if f == y {
                        return Some(n);
                    }
                }
                None
            })
            .collect()
    }

    /// `k_n` for the element `x`: number of `y` with return step exactly `n`
    /// (`n >= 2`); also returns the number of `y` that never return.
    pub fn k_profile(&self, x: usize) -> (BTreeMap<usize, usize>, usize) {
        let mut k = BTreeMap::new();
        let mut never = 0;
        for s in self.return_steps(x) {
            match s {
                Some(1) => {}
                Some(n) => *k.entry(n).or_insert(0) += 1,
                None => never += 1,
            }
        }
        (k, never)
    }

    /// `m` relative to the element `x`: `#{y : x▷y != y, x▷³y = y}`.
    pub fn m_count(&self, x: usize) -> usize {
        (0..self.size())
            .filter(|&y| self.op(x, y) != y && self.op(x, self.op(x, self.op(x, y))) == y)
            .count()
    }

    /// `t` relative to `x`: ordered pairs `(y, z)` of distinct elements
    /// different from `x`, both fixed by `φ_x`, with `y▷z = z`.
    pub fn t_count(&self, x: usize) -> usize {
        let d = self.size();
        let fixed: Vec<usize> = (0..d).filter(|&y| y != x && self.op(x, y) == y).collect();
        let mut t = 0;
        for &y in &fixed {
            for &z in &fixed {
                if y != z && self.op(y, z) == z {
                    t += 1;
                }
            }
        }
        t
    }

    pub fn invariants(&self) -> RackInvariants {
        RackInvariants::compute(self)
    }

    /// `φ_{i▷j} = φ_i φ_j φ_i⁻¹` for all `i, j`.
    pub fn conjugation_law_holds(&self) -> bool {
        let phis = self.phis();
        let d = self.size();
        (0..d).all(|i| (0..d).all(|j| phis[self.op(i, j)] == phis[i].conjugate(&phis[j])))
    }

    /// Relabels by a bijection `f` (0-based images): the result satisfies
    /// `f(i)▷'f(j) = f(i▷j)`.
    pub fn relabel(&self, f: &[usize]) -> Rack {
        let d = self.size();
        let mut t = vec![vec![0u32; d]; d];
        for i in 0..d {
            for j in 0..d {
                t[f[i]][f[j]] = f[self.op(i, j)] as u32;
            }
        }
        Rack::new(t).expect("relabeling preserves the axioms")
    }
}

/// Rack-level invariants. Fields that only make sense for indecomposable
/// faithful racks are `None` otherwise, with the reason in `undefined`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RackInvariants {
    pub size: usize,
    pub is_quandle: bool,
    pub is_braided: bool,
    pub is_faithful: bool,
    pub is_indecomposable: bool,
    /// 1-based components.
    pub components: Vec<Vec<usize>>,
    pub inner_group_order: Option<usize>,
    pub degree: Option<usize>,
    pub k: Option<BTreeMap<usize, usize>>,
    pub m: Option<usize>,
    pub t: Option<usize>,
    /// `(k2, k3)` shorthand when `k` is defined.
    pub k2: Option<usize>,
    pub k3: Option<usize>,
    pub phi1_cycle_type: Vec<usize>,
    pub undefined: Option<String>,
}

impl RackInvariants {
    pub fn compute(r: &Rack) -> RackInvariants {
        let comps = r.components();
        let is_indecomposable = comps.len() == 1;
        let is_faithful = r.is_faithful();
        let inner_group_order = r.inner_group(GROUP_CAP).ok().map(|g| g.order());
        let mut inv = RackInvariants {
            size: r.size(),
            is_quandle: r.is_quandle(),
            is_braided: r.is_braided(),
            is_faithful,
            is_indecomposable,
            components: comps.iter().map(|c| c.iter().map(|x| x + 1).collect()).collect(),
            inner_group_order,
            degree: None,
            k: None,
            m: None,
            t: None,
            k2: None,
            k3: None,
            phi1_cycle_type: r.phi(0).cycle_type(),
            undefined: None,
        };
        if !(is_indecomposable && is_faithful) {
            inv.undefined = Some(
                match (is_indecomposable, is_faithful) {
                    (false, false) => "rack is decomposable and not faithful",
                    (false, true) => "rack is decomposable",
                    _ => "rack is not faithful",
                }
                .to_string(),
            );
            return inv;
        }
        inv.degree = r.degree();
        let (k, never) = r.k_profile(0);
        if never > 0 {
            inv.undefined = Some(format!("{never} elements have no return step within 2d"));
        }
        inv.k2 = Some(k.get(&2).copied().unwrap_or(0));
        inv.k3 = Some(k.get(&3).copied().unwrap_or(0));
        inv.k = Some(k);
        inv.m = Some(r.m_count(0));
        inv.t = Some(r.t_count(0));
        inv
    }
}

/// Searches for an isomorphism `r1 → r2`; returns the 0-based image list.
pub fn find_isomorphism(r1: &Rack, r2: &Rack) -> Option<Vec<usize>> {
    let d = r1.size();
    if d != r2.size() {
        return None;
    }
    let profile = |r: &Rack, x: usize| -> (Vec<usize>, usize) {
        let fixed_by = (0..r.size()).filter(|&y| r.op(y, x) == x).count();
        (r.phi(x).cycle_type(), fixed_by)
    };
    let p1: Vec<_> = (0..d).map(|x| profile(r1, x)).collect();
    let p2: Vec<_> = (0..d).map(|x| profile(r2, x)).collect();
    {
        let (mut a, mut b) = (p1.clone(), p2.clone());
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }
    let mut map = vec![usize::MAX; d];
    let mut used = vec![false; d];
    iso_search(r1, r2, &p1, &p2, &mut map, &mut used).then_some(map)
}

/// Extends the partial map by closing under the operation; returns the
/// newly assigned elements or `None` on conflict.
fn iso_close(r1: &Rack, r2: &Rack, map: &mut [usize], used: &mut [bool]) -> Option<Vec<usize>> {
    let d = r1.size();
    let mut added = Vec::new();
    let mut assigned: Vec<usize> = (0..d).filter(|&x| map[x] != usize::MAX).collect();
    let mut k = 0;
    let fail = |map: &mut [usize], used: &mut [bool], added: &[usize]| {
        for &x in added {
            used[map[x]] = false;
            map[x] = usize::MAX;
        }
    };
    while k < assigned.len() {
        let a = assigned[k];
        k += 1;
        let mut j = 0;
        while j < assigned.len() {
            let b = assigned[j];
            j += 1;
            for (x, y) in [
                (r1.op(a, b), r2.op(map[a], map[b])),
                (r1.op(b, a), r2.op(map[b], map[a])),
                (r1.op_inv(a, b), r2.op_inv(map[a], map[b])),
                (r1.op_inv(b, a), r2.op_inv(map[b], map[a])),
            ] {
                if map[x] == usize::MAX {
                    if used[y] {
                        fail(map, used, &added);
                        return None;
                    }
                    map[x] = y;
                    used[y] = true;
                    added.push(x);
                    assigned.push(x);
                } else if map[x] != y {
                    fail(map, used, &added);
                    return None;
                }
            }
        }
    }
    Some(added)
}

fn iso_search(
    r1: &Rack,
    r2: &Rack,
    p1: &[(Vec<usize>, usize)],
    p2: &[(Vec<usize>, usize)],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let d = r1.size();
    let Some(x) = (0..d).find(|&x| map[x] == usize::MAX) else {
        return true;
    };
    for y in 0..d {
        if used[y] || p1[x] != p2[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if let Some(added) = iso_close(r1, r2, map, used) {
            if iso_search(r1, r2, p1, p2, map, used) {
                return true;
            }
            for a in added {
                used[map[a]] = false;
                map[a] = usize::MAX;
            }
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}

pub fn is_isomorphic(r1: &Rack, r2: &Rack) -> bool {
    find_isomorphism(r1, r2).is_some()
}

/// The conjugacy-class rack of `g` inside `⟨generators⟩`, with `x▷y = xyx⁻¹`.
/// Element 1 is `g`; the others follow in breadth-first order of conjugation
/// by the generators. Returns the labeling (rack index → permutation).
pub fn conjugacy_class_rack(generators: &[Perm], g: &Perm) -> Result<(Rack, Vec<Perm>), RackError> {
    let group = PermGroup::generate(generators, GROUP_CAP)?;
    if !group.contains(g) {
        return Err(RackError::ElementNotInGroup);
    }
    let mut class = vec![g.clone()];
    let mut index: std::collections::HashMap<Perm, usize> = std::collections::HashMap::new();
    index.insert(g.clone(), 0);
    let mut k = 0;
    while k < class.len() {
        let x = class[k].clone();
        k += 1;
        for s in generators {
            let y = s.conjugate(&x);
            if !index.contains_key(&y) {
                index.insert(y.clone(), class.len());
                class.push(y);
            }
        }
    }
    let table = class
        .iter()
        .map(|x| class.iter().map(|y| index[&x.conjugate(y)] as u32).collect())
        .collect();
    Ok((Rack::new(table)?, class))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> Rack {
        Rack::from_one_based(&[vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Rack::from_one_based(&[vec![1, 1, 2], vec![3, 2, 1], vec![2, 1, 3]]),
            Err(RackError::RowNotPermutation(1))
        );
        assert!(matches!(
            Rack::from_one_based(&[vec![2, 1, 3], vec![1, 2, 3], vec![1, 2, 3]]),
            Err(RackError::SelfDistributivityFails(..))
        ));
        let trivial = Rack::from_one_based(&vec![vec![1, 2, 3, 4]; 4]).unwrap();
        assert!(trivial.is_braided());
        assert!(!trivial.is_indecomposable());
    }

    #[test]
    fn dihedral_invariants() {
        let r = d3();
        let inv = r.invariants();
        assert_eq!((inv.k2, inv.k3, inv.m, inv.t, inv.degree), (Some(0), Some(2), Some(0), Some(0), Some(2)));
        assert!(inv.is_braided && inv.is_faithful && inv.is_indecomposable);
        assert_eq!(inv.inner_group_order, Some(6));
        assert!(r.conjugation_law_holds());
    }

    #[test]
    fn json_round_trip() {
        let r = d3();
        let text = r.to_json();
        assert_eq!(text, r#"{"size":3,"table":[[1,3,2],[3,2,1],[2,1,3]]}"#);
        assert_eq!(Rack::from_json(&text).unwrap(), r);
    }

    #[test]
    fn relabel_is_isomorphic() {
        let r = d3();
        let s = r.relabel(&[2, 0, 1]);
        let f = find_isomorphism(&r, &s).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(f[r.op(i, j)], s.op(f[i], f[j]));
            }
        }
    }
}
