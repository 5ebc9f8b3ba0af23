//! Hurwitz action of the braid group on tuples of rack elements.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::HurwitzError;
use crate::perm::Perm;
use crate::rack::Rack;

/// Default cap on the number of tuples in one orbit.
pub const ORBIT_CAP: usize = 1_000_000;

/// `σ_i` (1-based strand index): `(…, x_i, x_{i+1}, …) ↦ (…, x_i▷x_{i+1}, x_i, …)`.
pub fn sigma(r: &Rack, i: usize, tup: &[u32]) -> Vec<u32> {
    let mut out = tup.to_vec();
    let (x, y) = (tup[i - 1] as usize, tup[i] as usize);
    out[i - 1] = r.op(x, y) as u32;
    out[i] = x as u32;
    out
}

/// `σ_i⁻¹`: `(…, u, v, …) ↦ (…, v, φ_v⁻¹(u), …)`.
pub fn sigma_inverse(r: &Rack, i: usize, tup: &[u32]) -> Vec<u32> {
    let mut out = tup.to_vec();
    let (u, v) = (tup[i - 1] as usize, tup[i] as usize);
    out[i - 1] = v as u32;
    out[i] = r.op_inv(v, u) as u32;
    out
}

/// One orbit with its σ-labeled edges: `edges[i][k]` is the index of
/// `σ_{i+1}(tuples[k])`. Tuples hold 0-based elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzOrbit {
    pub arity: usize,
    pub tuples: Vec<Vec<u32>>,
    pub edges: Vec<Vec<usize>>,
}

/// Export format: 1-based tuples and 0-based target indices.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrbitExport {
    pub arity: usize,
    pub tuples: Vec<Vec<usize>>,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
}

impl HurwitzOrbit {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, tup: &[u32]) -> Option<usize> {
        self.tuples.iter().position(|t| t == tup)
    }

    /// The σ_i action as a permutation of tuple indices (1-based `i`).
    pub fn sigma_perm(&self, i: usize) -> Perm {
        Perm(self.edges[i - 1].iter().map(|&k| k as u32).collect())
    }

    /// Far commutation and the braid relation, as permutations of the orbit.
    pub fn braid_relations_hold(&self) -> bool {
        let n = self.arity;
        let s: Vec<Perm> = (1..n).map(|i| self.sigma_perm(i)).collect();
        for i in 0..s.len() {
            for j in 0..s.len() {
                let ok = if i.abs_diff(j) >= 2 {
                    s[i].compose(&s[j]) == s[j].compose(&s[i])
                } else if i.abs_diff(j) == 1 {
                    s[i].compose(&s[j]).compose(&s[i]) == s[j].compose(&s[i]).compose(&s[j])
                } else {
                    true
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    pub fn export(&self) -> OrbitExport {
        OrbitExport {
            arity: self.arity,
            tuples: self
                .tuples
                .iter()
                .map(|t| t.iter().map(|&x| x as usize + 1).collect())
                .collect(),
            sigma1: self.edges.first().cloned().unwrap_or_default(),
            sigma2: self.edges.get(1).cloned().unwrap_or_default(),
        }
    }

    /// Lexicographically least tuple.
    pub fn min_tuple(&self) -> &[u32] {
        self.tuples.iter().min().expect("orbits are nonempty")
    }
}

/// Breadth-first closure of `seed` under all `σ_i^{±1}`; tuples are listed
/// in discovery order.
pub fn orbit(r: &Rack, seed: &[u32], cap: usize) -> Result<HurwitzOrbit, HurwitzError> {
    let n = seed.len();
    let mut tuples = vec![seed.to_vec()];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    index.insert(seed.to_vec(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for i in 1..n {
            for next in [sigma(r, i, &tuples[k]), sigma_inverse(r, i, &tuples[k])] {
                if !index.contains_key(&next) {
                    if tuples.len() >= cap {
                        return Err(HurwitzError::OrbitSizeCap(cap));
                    }
                    index.insert(next.clone(), tuples.len());
                    tuples.push(next);
                    queue.push_back(tuples.len() - 1);
                }
            }
        }
    }
    let edges = (1..n)
        .map(|i| tuples.iter().map(|t| index[&sigma(r, i, t)]).collect())
        .collect();
    Ok(HurwitzOrbit { arity: n, tuples, edges })
}

fn decode(mut code: usize, d: usize, n: usize) -> Vec<u32> {
    let mut t = vec![0u32; n];
    for k in (0..n).rev() {
        t[k] = (code % d) as u32;
        code /= d;
    }
    t
}

fn encode(t: &[u32], d: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * d + x as usize)
}

/// All orbits of `Xⁿ`, each seeded by its lexicographically least tuple and
/// listed in order of those seeds.
pub fn all_orbits(r: &Rack, n: usize) -> Result<Vec<HurwitzOrbit>, HurwitzError> {
    let d = r.size();
    let total = d.pow(n as u32);
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for code in 0..total {
        if seen[code] {
            continue;
        }
        let o = orbit(r, &decode(code, d, n), ORBIT_CAP)?;
        for t in &o.tuples {
            seen[encode(t, d)] = true;
        }
        out.push(o);
    }
    Ok(out)
}

/// Orbit-size counts together with the closed formulas for braided
/// indecomposable racks (arity 3).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrbitCensus {
    pub arity: usize,
    pub counts: BTreeMap<usize, usize>,
    pub total: usize,
    /// `Σ j·N_j = dⁿ`.
    pub total_check: bool,
    /// Closed-form counts (arity 3, braided indecomposable racks only).
    pub formulas: Option<BTreeMap<usize, i64>>,
    pub formulas_match: Option<bool>,
}

/// Closed-form orbit counts for an indecomposable braided rack; `N24` is
/// whatever remains of `d³`.
pub fn census_formulas(d: i64, k2: i64, k3: i64, m: i64, t: i64) -> BTreeMap<usize, i64> {
    let mut f = BTreeMap::new();
    f.insert(1, d);
    f.insert(3, d * k2);
    f.insert(6, d * t / 6);
    f.insert(9, d * (k2 * (k2 - 1) - t) / 3);
    f.insert(8, d * k3 / 2);
    f.insert(12, d * m / 12);
    f.insert(16, d * (k2 * k3 - k2 * k2 + k2 + t) / 4);
    let covered: i64 = f.iter().map(|(j, n)| *j as i64 * n).sum();
    f.insert(24, (d * d * d - covered) / 24);
    f.retain(|_, n| *n != 0);
    f
}

pub fn census(r: &Rack, n: usize) -> Result<OrbitCensus, HurwitzError> {
    let orbits = all_orbits(r, n)?;
    let mut counts = BTreeMap::new();
    for o in &orbits {
        *counts.entry(o.len()).or_insert(0) += 1;
    }
    let total: usize = counts.iter().map(|(j, c)| j * c).sum();
    let mut census = OrbitCensus {
        arity: n,
        counts,
        total,
        total_check: total == r.size().pow(n as u32),
        formulas: None,
        formulas_match: None,
    };
    if n == 3 && r.is_braided() && r.is_indecomposable() {
        let inv = r.invariants();
        let f = census_formulas(
            r.size() as i64,
            inv.k2.unwrap_or(0) as i64,
            inv.k3.unwrap_or(0) as i64,
            inv.m.unwrap_or(0) as i64,
            inv.t.unwrap_or(0) as i64,
        );
        let matches = f.len() == census.counts.len()
            && f.iter().all(|(j, v)| census.counts.get(j).map(|&c| c as i64) == Some(*v));
        census.formulas = Some(f);
        census.formulas_match = Some(matches);
    }
    Ok(census)
}

/// An isomorphism of σ-labeled orbit graphs (tuple index map `o1 → o2`).
pub fn orbit_isomorphism(o1: &HurwitzOrbit, o2: &HurwitzOrbit) -> Option<Vec<usize>> {
    if o1.arity != o2.arity || o1.len() != o2.len() {
        return None;
    }
    let n = o1.len();
    // orbits are connected, so the image of tuple 0 determines everything
    'candidate: for start in 0..n {
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = start;
        used[start] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for i in 0..o1.arity - 1 {
                let (a, b) = (o1.edges[i][k], o2.edges[i][map[k]]);
                if map[a] == usize::MAX {
                    if used[b] {
                        continue 'candidate;
                    }
                    map[a] = b;
                    used[b] = true;
                    queue.push_back(a);
                } else if map[a] != b {
                    continue 'candidate;
                }
                // inverse edges: the σ-preimage of k must map to the preimage of map[k]
                let pa = o1.edges[i].iter().position(|&x| x == k).unwrap();
                let pb = o2.edges[i].iter().position(|&x| x == map[k]).unwrap();
                if map[pa] == usize::MAX {
                    if used[pb] {
                        continue 'candidate;
                    }
                    map[pa] = pb;
                    used[pb] = true;
                    queue.push_back(pa);
                } else if map[pa] != pb {
                    continue 'candidate;
                }
            }
        }
        if map.iter().all(|&x| x != usize::MAX) {
            return Some(map);
        }
    }
    None
}

pub fn orbit_isomorphic(o1: &HurwitzOrbit, o2: &HurwitzOrbit) -> bool {
    orbit_isomorphism(o1, o2).is_some()
}

/// Applies an inner automorphism `g` diagonally. Inner automorphisms commute
/// with the Hurwitz action, so the edge structure is unchanged.
pub fn conjugate_orbit(g: &Perm, o: &HurwitzOrbit) -> HurwitzOrbit {
    HurwitzOrbit {
        arity: o.arity,
        tuples: o
            .tuples
            .iter()
            .map(|t| t.iter().map(|&x| g.apply(x as usize) as u32).collect())
            .collect(),
        edges: o.edges.clone(),
    }
}

/// `φ_{x_1} ∘ … ∘ φ_{x_n}`, constant along each orbit.
pub fn inner_product(r: &Rack, tup: &[u32]) -> Perm {
    tup.iter()
        .fold(Perm::identity(r.size()), |acc, &x| acc.compose(&r.phi(x as usize)))
}

/// Builds an orbit whose tuples are listed in the given order, provided the
/// list is exactly one Hurwitz orbit.
pub fn orbit_from_tuples(r: &Rack, tuples: Vec<Vec<u32>>) -> Option<HurwitzOrbit> {
    let n = tuples.first()?.len();
    let index: HashMap<&Vec<u32>, usize> = tuples.iter().enumerate().map(|(k, t)| (t, k)).collect();
    if index.len() != tuples.len() {
        return None;
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut e = Vec::with_capacity(tuples.len());
        for t in &tuples {
            e.push(*index.get(&sigma(r, i, t))?);
        }
        edges.push(e);
    }
    let o = HurwitzOrbit { arity: n, tuples, edges };
    // closed under σ_i, so it is a union of orbits; check it is a single one
    (orbit(r, &o.tuples[0], o.len() + 1).ok()?.len() == o.len()).then_some(o)
}

/// Letter-named orbit (letter `k` is tuple `k`).
#[derive(Clone, Debug)]
pub struct NamedOrbit {
    pub names: Vec<char>,
    pub orbit: HurwitzOrbit,
}

impl NamedOrbit {
    pub fn from_list(r: &Rack, list: Vec<(char, Vec<u32>)>) -> Option<NamedOrbit> {
        let (names, tuples): (Vec<char>, Vec<Vec<u32>>) = list.into_iter().unzip();
        Some(NamedOrbit { names, orbit: orbit_from_tuples(r, tuples)? })
    }

    /// Tuple indices of the given letters.
    pub fn indices(&self, letters: &str) -> Vec<usize> {
        letters
            .chars()
            .map(|c| self.names.iter().position(|&n| n == c).expect("known letter"))
            .collect()
    }

    pub fn letters(&self, indices: &[usize]) -> String {
        indices.iter().map(|&k| self.names[k]).collect()
    }
}

/// Reference orbit graph for each possible 3-orbit size of a braided rack,
/// built from the named triple lists (sizes 1, 3, 6 come from a trivial rack).
pub fn reference_orbit(size: usize) -> Option<NamedOrbit> {
    use crate::presets::preset;
    let simple = |seed: [u32; 3]| {
        let r = preset("trivial(3)").ok()?;
        let o = orbit(&r, &seed, ORBIT_CAP).ok()?;
        let names = (0..o.len()).map(|k| (b'A' + k as u8) as char).collect();
        Some(NamedOrbit { names, orbit: o })
    };
    match size {
        1 => simple([0, 0, 0]),
        3 => simple([0, 0, 1]),
        6 => simple([0, 1, 2]),
        8 => {
            let r = preset("D3").ok()?;
            NamedOrbit::from_list(&r, named::size8(&r, 0, 1))
        }
        9 => {
            let r = preset("C").ok()?;
            NamedOrbit::from_list(&r, named::size9(&r, 0, 7, 8))
        }
        12 => {
            let r = preset("T").ok()?;
            NamedOrbit::from_list(&r, named::size12(&r, 0, 1))
        }
        16 => {
            let r = preset("A").ok()?;
            NamedOrbit::from_list(&r, named::size16(&r, 0, 3, 1))
        }
        24 => {
            let r = preset("Aff(7,3)").ok()?;
            (2..7).find_map(|c| NamedOrbit::from_list(&r, named::size24(&r, 0, 1, c)))
        }
        _ => None,
    }
}

/// Sizes of Hurwitz 3-orbits that occur over braided racks.
pub const BRAIDED_ORBIT_SIZES: [usize; 8] = [1, 3, 6, 8, 9, 12, 16, 24];

/// Named triples of the orbit-size classification, in the labeling used by
/// the orbit pictures: returns the names and tuples for an orbit seeded by
/// the given parameters.
pub mod named {
    use super::*;

    fn t(a: usize, b: usize, c: usize) -> Vec<u32> {
        vec![a as u32, b as u32, c as u32]
    }

    /// Size 24 (and the generic labeling) from `(a, b, c)`.
    pub fn size24(r: &Rack, a: usize, b: usize, c: usize) -> Vec<(char, Vec<u32>)> {
        let o = |x, y| r.op(x, y);
        let ab = o(a, b);
        let ac = o(a, c);
        let bc = o(b, c);
        let ab_c = o(ab, c);
        let a_bc = o(a, bc);
        let list = [
            ('A', t(a, b, c)),
            ('B', t(ab, ac, a)),
            ('C', t(ab, a, c)),
            ('D', t(ab_c, a_bc, ab)),
            ('E', t(b, ab, c)),
            ('F', t(ab, c, ac)),
            ('G', t(b, ab_c, ab)),
            ('H', t(ab_c, ab, ac)),
            ('I', t(a_bc, b, ab)),
            ('J', t(b, c, ab_c)),
            ('K', t(c, ab_c, ac)),
            ('L', t(a_bc, ab, a)),
            ('M', t(c, bc, ab_c)),
            ('N', t(a_bc, a, b)),
            ('O', t(bc, b, ab_c)),
            ('P', t(c, ac, bc)),
            ('Q', t(bc, a_bc, b)),
            ('R', t(a, c, bc)),
            ('S', t(a, bc, b)),
            ('T', t(bc, ab_c, a_bc)),
            ('U', t(ac, a, bc)),
            ('V', t(ac, bc, a_bc)),
            ('W', t(ab_c, ac, a_bc)),
            ('X', t(ac, a_bc, a)),
        ];
        list.to_vec()
    }

    /// Size 8 from `(a, c)` with `a▷c ≠ c`.
    pub fn size8(r: &Rack, a: usize, c: usize) -> Vec<(char, Vec<u32>)> {
        let ac = r.op(a, c);
        let a2c = r.op(a, ac);
        vec![
            ('A', t(c, ac, ac)),
            ('B', t(a, c, ac)),
            ('C', t(a, a, c)),
            ('D', t(ac, a, ac)),
            ('E', t(a, ac, a)),
            ('F', t(ac, ac, a2c)),
            ('G', t(ac, a2c, a)),
            ('H', t(a2c, a, a)),
        ]
    }

    /// Size 12 from `(a, c)` with `a▷c ≠ c`, `a▷³c = c`.
    pub fn size12(r: &Rack, a: usize, c: usize) -> Vec<(char, Vec<u32>)> {
        let ac = r.op(a, c);
        let ca = r.op(c, a);
        vec![
            ('A', t(a, ac, c)),
            ('B', t(a, c, ca)),
            ('C', t(ac, a, ca)),
            ('D', t(ac, ca, c)),
            ('E', t(a, ca, ac)),
            ('F', t(c, ac, ca)),
            ('G', t(ac, c, a)),
            ('H', t(c, a, ac)),
            ('I', t(c, ca, a)),
            ('J', t(ca, c, ac)),
            ('K', t(ca, ac, a)),
            ('L', t(ca, a, c)),
        ]
    }

    /// Size 9 from `(a, b, c)` with `a` commuting with `b` and `c`.
    pub fn size9(r: &Rack, a: usize, b: usize, c: usize) -> Vec<(char, Vec<u32>)> {
        let bc = r.op(b, c);
        vec![
            ('A', t(b, c, a)),
            ('B', t(bc, b, a)),
            ('C', t(c, bc, a)),
            ('D', t(b, a, c)),
            ('E', t(bc, a, b)),
            ('F', t(c, a, bc)),
            ('G', t(a, b, c)),
            ('H', t(a, bc, b)),
            ('I', t(a, c, bc)),
        ]
    }

    /// Size 16 from `(a, b, c)` where only `a, b` commute.
    pub fn size16(r: &Rack, a: usize, b: usize, c: usize) -> Vec<(char, Vec<u32>)> {
        let ac = r.op(a, c);
        let bc = r.op(b, c);
        let a_bc = r.op(a, bc);
        vec![
            ('A', t(a, c, bc)),
            ('B', t(ac, a, bc)),
            ('C', t(ac, a_bc, a)),
            ('D', t(a, bc, b)),
            ('E', t(c, ac, bc)),
            ('F', t(ac, bc, a_bc)),
            ('G', t(b, ac, a)),
            ('H', t(a, b, c)),
            ('I', t(a_bc, b, a)),
            ('J', t(b, a, c)),
            ('K', t(c, bc, ac)),
            ('L', t(bc, ac, a_bc)),
            ('M', t(a_bc, a, b)),
            ('N', t(b, c, ac)),
            ('O', t(bc, b, ac)),
            ('P', t(bc, a_bc, b)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;

    #[test]
    fn sigma_examples() {
        let r = preset("D3").unwrap();
        assert_eq!(sigma(&r, 1, &[0, 1, 2]), vec![2, 0, 2]);
        assert_eq!(sigma(&r, 1, &[1, 1, 0]), vec![1, 1, 0]);
        let t = [0u32, 2, 1];
        assert_eq!(sigma_inverse(&r, 2, &sigma(&r, 2, &t)), t.to_vec());
    }

    #[test]
    fn dihedral_census() {
        let r = preset("D3").unwrap();
        let c = census(&r, 3).unwrap();
        assert_eq!(c.counts, BTreeMap::from([(1, 3), (8, 3)]));
        assert_eq!(c.formulas_match, Some(true));
        let o = orbit(&r, &[0, 0, 1], ORBIT_CAP).unwrap();
        assert_eq!(o.len(), 8);
        assert!(o.braid_relations_hold());
    }

    #[test]
    fn reference_orbits_exist() {
        for size in BRAIDED_ORBIT_SIZES {
            let named = reference_orbit(size).unwrap_or_else(|| panic!("size {size}"));
            assert_eq!(named.orbit.len(), size);
            assert!(named.orbit.braid_relations_hold());
        }
    }
}
