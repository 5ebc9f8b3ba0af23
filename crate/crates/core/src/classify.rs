//! Exhaustive search for small indecomposable braided racks of a given degree.
//!
//! All translations of an indecomposable rack are conjugate, so the table is
//! built around a fixed `φ_1 = σ` of each admissible cycle type. Cells are
//! filled by depth-first search; each assignment is pushed through
//! self-distributivity, the braided condition and the commuting symmetry
//! `x▷y = y ⇔ y▷x = x` before the next branch.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::ClassifyError;
use crate::presets::{preset, PRESET_NAMES};
use crate::rack::{is_isomorphic, Rack};

/// Largest rack size the search accepts.
pub const SIZE_CAP: usize = 16;

const UNSET: u8 = u8::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub degrees: Vec<usize>,
    /// Bound on the number of elements not commuting with a fixed one.
    pub k3_max: Option<usize>,
    pub size_max: usize,
    pub require_indecomposable: bool,
}

impl Default for SearchSpec {
    fn default() -> Self {
        SearchSpec { degrees: vec![2, 3, 4, 6], k3_max: Some(6), size_max: 12, require_indecomposable: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundRack {
    /// Preset isomorphic to the rack, if any.
    pub name: Option<String>,
    pub size: usize,
    pub degree: usize,
    pub k3: usize,
    pub m: usize,
    /// 1-based table of the lexicographically least labeling found.
    pub table: Vec<Vec<usize>>,
}

/// Cycle types (lengths ≥ 2, descending) on `moved` points with lcm `degree`.
fn moved_cycle_types(degree: usize, moved: usize) -> Vec<Vec<usize>> {
    fn rec(degree: usize, left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let l = cur.iter().fold(1, |a, &b| num_integer::lcm(a, b));
            if l == degree {
                out.push(cur.clone());
            }
            return;
        }
        for len in (2..=max.min(left)).rev() {
            if degree % len == 0 {
                cur.push(len);
                rec(degree, left - len, len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(degree, moved, degree, &mut Vec::new(), &mut out);
    out
}

struct Search {
    n: usize,
    degree: usize,
    homogeneous: bool,
    fixed_target: usize,
    /// Allowed cycle lengths with multiplicities (fixed points excluded).
    cycles: BTreeMap<usize, usize>,
    table: Vec<u8>,
    inv: Vec<u8>,
    fixed: Vec<usize>,
    moved: Vec<usize>,
    trail: Vec<(usize, usize)>,
    queue: Vec<(usize, usize)>,
    found: Vec<Vec<Vec<u32>>>,
}

impl Search {
    fn new(n: usize, degree: usize, sigma_cycles: &[usize], homogeneous: bool) -> Search {
        let moved: usize = sigma_cycles.iter().sum();
        let mut cycles = BTreeMap::new();
        for &c in sigma_cycles {
            *cycles.entry(c).or_insert(0) += 1;
        }
        Search {
            n,
            degree,
            homogeneous,
            fixed_target: n - moved,
            cycles,
            table: vec![UNSET; n * n],
            inv: vec![UNSET; n * n],
            fixed: vec![0; n],
            moved: vec![0; n],
            trail: Vec::new(),
            queue: Vec::new(),
            found: Vec::new(),
        }
    }

    fn get(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.table[x * self.n + y];
        (v != UNSET).then_some(v as usize)
    }

    fn pre(&self, x: usize, z: usize) -> Option<usize> {
        let v = self.inv[x * self.n + z];
        (v != UNSET).then_some(v as usize)
    }

    fn assign(&mut self, x: usize, y: usize, z: usize) -> bool {
        let n = self.n;
        if let Some(old) = self.get(x, y) {
            return old == z;
        }
        if self.pre(x, z).is_some() {
            return false;
        }
        if z == y {
            if self.homogeneous && self.fixed[x] + 1 > self.fixed_target {
                return false;
            }
            self.fixed[x] += 1;
        } else {
            if self.homogeneous && self.moved[x] + 1 > n - self.fixed_target {
                return false;
            }
            self.moved[x] += 1;
        }
        self.table[x * n + y] = z as u8;
        self.inv[x * n + z] = y as u8;
        self.trail.push((x, y));
        self.queue.push((x, y));
        self.cycle_ok(x, y)
    }

    /// A cycle closed by the new entry must have an admissible length.
    fn cycle_ok(&self, x: usize, y: usize) -> bool {
        let mut len = 1;
        let mut j = self.get(x, y).unwrap();
        while j != y {
            match self.get(x, j) {
                Some(k) => {
                    j = k;
                    len += 1;
                    if len > self.degree {
                        return false;
                    }
                }
                None => return true,
            }
        }
        if len == 1 {
            return true;
        }
        if self.degree % len != 0 {
            return false;
        }
        if !self.homogeneous {
            return true;
        }
        // count closed cycles of this length in the row
        let allowed = self.cycles.get(&len).copied().unwrap_or(0);
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut l = 0;
            let mut j = s;
            let mut closed = true;
            loop {
                if seen[j] && j != s {
                    closed = false;
                    break;
                }
                seen[j] = true;
                match self.get(x, j) {
                    Some(k) => {
                        l += 1;
                        j = k;
                        if j == s {
                            break;
                        }
                        if l > self.degree {
                            closed = false;
                            break;
                        }
                    }
                    None => {
                        closed = false;
                        break;
                    }
                }
            }
            if closed && l == len {
                count += 1;
            }
        }
        count <= allowed
    }

    fn undo(&mut self, mark: usize) {
        let n = self.n;
        while self.trail.len() > mark {
            let (x, y) = self.trail.pop().unwrap();
            let z = self.table[x * n + y] as usize;
            if z == y {
                self.fixed[x] -= 1;
            } else {
                self.moved[x] -= 1;
            }
            self.table[x * n + y] = UNSET;
            self.inv[x * n + z] = UNSET;
        }
        self.queue.clear();
    }

    /// `a▷(b▷c) = (a▷b)▷(a▷c)` for one triple, deducing a missing entry.
    fn triple(&mut self, a: usize, b: usize, c: usize) -> bool {
        let (s, r) = (self.get(a, b), self.get(a, c));
        let u = self.get(b, c);
        match (u, s, r) {
            (Some(u), Some(s), Some(r)) => match (self.get(a, u), self.get(s, r)) {
                (Some(l), Some(rh)) => l == rh,
                (Some(l), None) => self.assign(s, r, l),
                (None, Some(rh)) => self.assign(a, u, rh),
                (None, None) => true,
            },
            (None, Some(s), Some(r)) => match self.get(s, r).and_then(|rh| self.pre(a, rh)) {
                Some(w) => self.assign(b, c, w),
                None => true,
            },
            _ => true,
        }
    }

    fn propagate(&mut self) -> bool {
        let n = self.n;
        while let Some((x, y)) = self.queue.pop() {
            let z = self.get(x, y).unwrap();
            let ok = if z == y { self.assign(y, x, x) } else { self.assign(y, z, x) };
            if !ok {
                return false;
            }
            for k in 0..n {
                // (b,c) = (x,y); (a,b) = (x,y); (a,c) = (x,y)
                if !self.triple(k, x, y) || !self.triple(x, y, k) || !self.triple(x, k, y) {
                    return false;
                }
                // (a, b▷c) = (x, y)
                if let Some(c) = self.pre(k, y) {
                    if !self.triple(x, k, c) {
                        return false;
                    }
                }
                // (a▷b, a▷c) = (x, y)
                if let (Some(b), Some(c)) = (self.pre(k, x), self.pre(k, y)) {
                    if !self.triple(k, b, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn candidates(&self, x: usize, y: usize) -> Vec<usize> {
        let n = self.n;
        let back = self.get(y, x);
        (0..n)
            .filter(|&z| self.pre(x, z).is_none())
            .filter(|&z| {
                if z == y {
                    back.map_or(true, |b| b == x) && (!self.homogeneous || self.fixed[x] < self.fixed_target)
                } else {
                    back != Some(x) && (!self.homogeneous || self.moved[x] < n - self.fixed_target)
                }
            })
            .collect()
    }

    fn run(&mut self) {
        let n = self.n;
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for x in 0..n {
            for y in 0..n {
                if self.get(x, y).is_some() {
                    continue;
                }
                let c = self.candidates(x, y);
                if best.as_ref().map_or(true, |b| c.len() < b.2.len()) {
                    let done = c.len() <= 1;
                    best = Some((x, y, c));
                    if done {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|b| b.2.len() <= 1) {
                break;
            }
        }
        let Some((x, y, cands)) = best else {
            let table: Vec<Vec<u32>> = self.table.chunks(n).map(|r| r.iter().map(|&v| v as u32).collect()).collect();
            self.found.push(table);
            return;
        };
        for z in cands {
            let mark = self.trail.len();
            if self.assign(x, y, z) && self.propagate() {
                self.run();
            }
            self.undo(mark);
        }
    }
}

/// Racks satisfying `spec`, up to isomorphism, ordered by size and table.
pub fn search(spec: &SearchSpec) -> Result<Vec<FoundRack>, ClassifyError> {
    if spec.size_max > SIZE_CAP {
        return Err(ClassifyError::SizeCapExceeded(spec.size_max, SIZE_CAP));
    }
    let mut tasks = Vec::new();
    for n in 2..=spec.size_max {
        for &degree in &spec.degrees {
            let max_moved = spec.k3_max.map_or(n - 1, |k| k.min(n - 1));
            for moved in 1..=max_moved {
                for cycles in moved_cycle_types(degree, moved) {
                    tasks.push((n, degree, cycles));
                }
            }
        }
    }
    let homogeneous = spec.require_indecomposable;
    let leaves: Vec<(usize, Rack)> = tasks
        .par_iter()
        .flat_map_iter(|(n, degree, cycles)| {
            let mut s = Search::new(*n, *degree, cycles, homogeneous);
            // φ of element 0: fixed points first, then the cycles in order
            let mut ok = (0..*n).all(|x| s.assign(x, x, x));
            let mut start = s.fixed_target;
            for f in 0..start {
                ok &= s.assign(0, f, f);
            }
            for &len in cycles {
                for i in 0..len {
                    ok &= s.assign(0, start + i, start + (i + 1) % len);
                }
                start += len;
            }
            if ok && s.propagate() {
                s.run();
            }
            let degree = *degree;
            s.found.into_iter().filter_map(move |t| Rack::new(t).ok().map(|r| (degree, r)))
        })
        .filter(|(degree, r)| {
            r.is_braided()
                && r.degree() == Some(*degree)
                && (!spec.require_indecomposable || r.is_indecomposable())
        })
        .collect();
    Ok(dedupe(leaves, spec))
}

fn dedupe(leaves: Vec<(usize, Rack)>, spec: &SearchSpec) -> Vec<FoundRack> {
    // bucket by cheap invariants, then split buckets by isomorphism
    let mut buckets: BTreeMap<(usize, usize, Vec<usize>, usize), Vec<Rack>> = BTreeMap::new();
    for (degree, r) in leaves {
        let key = (r.size(), degree, r.phi(0).cycle_type(), r.m_count(0));
        buckets.entry(key).or_default().push(r);
    }
    let mut out = Vec::new();
    for ((size, degree, _, m), racks) in buckets {
        let mut classes: Vec<Rack> = Vec::new();
        for r in racks {
            match classes.iter_mut().find(|c| is_isomorphic(c, &r)) {
                Some(c) => {
                    if r.table() < c.table() {
                        *c = r;
                    }
                }
                None => classes.push(r),
            }
        }
        for r in classes {
            let k3 = r.phi(0).moved_points();
            if spec.k3_max.is_some_and(|k| k3 > k) {
                continue;
            }
            out.push(FoundRack { name: preset_name(&r), size, degree, k3, m, table: r.one_based_table() });
        }
    }
    out.sort_by(|a, b| (a.size, &a.table).cmp(&(b.size, &b.table)));
    out
}

/// Name of the preset isomorphic to `r`.
pub fn preset_name(r: &Rack) -> Option<String> {
    PRESET_NAMES
        .iter()
        .filter_map(|name| preset(name).ok().map(|p| (name, p)))
        .find(|(_, p)| p.size() == r.size() && is_isomorphic(p, r))
        .map(|(name, _)| name.to_string())
}

/// One row of the rack tables with its recomputed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub rack: String,
    pub expected: RowValues,
    pub computed: RowValues,
    pub matches: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RowValues {
    pub degree: usize,
    pub size: usize,
    pub k3: usize,
    /// Not listed for every rack.
    pub m: Option<usize>,
}

/// Known `(degree, size, k₃, m)` of the named braided racks.
pub const TABLE_ROWS: [(&str, usize, usize, usize, Option<usize>); 8] = [
    ("D3", 2, 3, 2, Some(0)),
    ("T", 3, 4, 3, Some(3)),
    ("A", 2, 6, 4, Some(0)),
    ("B", 4, 6, 4, Some(0)),
    ("C", 2, 10, 6, Some(0)),
    ("Aff(7,3)", 6, 7, 6, Some(0)),
    ("Aff(7,5)", 6, 7, 6, Some(0)),
    ("Aff(9,2)", 2, 9, 8, None),
];

/// Recomputes every row of [`TABLE_ROWS`] from the presets.
pub fn verify_tables() -> Vec<TableRow> {
    TABLE_ROWS
        .iter()
        .map(|&(name, degree, size, k3, m)| {
            let expected = RowValues { degree, size, k3, m };
            let computed = match preset(name) {
                Ok(r) => {
                    let inv = r.invariants();
                    RowValues {
                        degree: inv.degree.unwrap_or(0),
                        size: inv.size,
                        k3: inv.k3.unwrap_or(0),
                        m: inv.m,
                    }
                }
                Err(_) => RowValues { degree: 0, size: 0, k3: 0, m: None },
            };
            let matches = computed.degree == degree
                && computed.size == size
                && computed.k3 == k3
                && m.map_or(true, |m| computed.m == Some(m));
            TableRow { rack: name.to_string(), expected, computed, matches }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_types() {
        assert_eq!(moved_cycle_types(6, 6), vec![vec![6]]);
        assert_eq!(moved_cycle_types(6, 5), vec![vec![3, 2]]);
        assert_eq!(moved_cycle_types(2, 4), vec![vec![2, 2]]);
        assert!(moved_cycle_types(4, 3).is_empty());
    }

    #[test]
    fn rejects_large_sizes() {
        let spec = SearchSpec { size_max: 17, ..SearchSpec::default() };
        assert_eq!(search(&spec), Err(ClassifyError::SizeCapExceeded(17, SIZE_CAP)));
    }
}
