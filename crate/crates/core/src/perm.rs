//! Permutations of `{0..n-1}` and small permutation-group closures.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::RackError;

/// A permutation stored as its image list: `p[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// Builds a permutation of `{1..n}` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Perm {
        let mut p: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let b = c[(k + 1) % c.len()];
                p[a - 1] = (b - 1) as u32;
            }
        }
        Perm(p)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `(1,2)` on `{1..n}`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Perm, RackError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() || rest == "()" {
            return Ok(Perm::identity(n));
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| RackError::BadPermutation(text.into()))?;
            let close = open.find(')').ok_or_else(|| RackError::BadPermutation(text.into()))?;
            let body = &open[..close];
            let cyc: Result<Vec<usize>, _> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect();
            let cyc = cyc.map_err(|_| RackError::BadPermutation(text.into()))?;
            if cyc.iter().any(|&a| a == 0 || a > n) {
                return Err(RackError::BadPermutation(text.into()));
            }
            cycles.push(cyc);
            rest = open[close + 1..].trim_start();
        }
        let mut seen = vec![false; n];
        for c in &cycles {
            for &a in c {
                if std::mem::replace(&mut seen[a - 1], true) {
                    return Err(RackError::BadPermutation(text.into()));
                }
            }
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Ok(Perm::from_cycles(n, &refs))
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Perm) -> Perm {
        self.compose(other).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Non-trivial cycles, each starting at its smallest element, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.apply(s);
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.apply(j);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Cycle lengths (including fixed points as 1), sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.apply(j);
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> usize {
        self.cycle_type()
            .into_iter()
            .fold(1, |acc, l| num_integer::lcm(acc, l))
    }

    pub fn moved_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &j)| *i as u32 != j).count()
    }
}

impl fmt::Display for Perm {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A finite permutation group enumerated by breadth-first closure. Every
/// element carries a shortest word in the generators (generator indices).
pub struct PermGroup {
    pub generators: Vec<Perm>,
    pub elements: Vec<Perm>,
    pub index: HashMap<Perm, usize>,
    /// `(parent element, generator)` that first reached each element.
    parent: Vec<Option<(usize, usize)>>,
}

/// Default cap on enumerated group elements.
pub const GROUP_CAP: usize = 10_000_000;

impl PermGroup {
    pub fn generate(generators: &[Perm], cap: usize) -> Result<PermGroup, RackError> {
        let n = generators.first().map_or(0, |g| g.len());
        let id = Perm::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut parent = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let next = g.compose(&elements[e]);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(RackError::GroupTooLarge(cap));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    parent.push(Some((e, gi)));
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(PermGroup {
            generators: generators.to_vec(),
            elements,
            index,
            parent,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// A shortest word (generator indices, first applied first) for element `e`.
    pub fn word(&self, mut e: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.parent[e] {
            w.push(g);
            e = p;
        }
        w.reverse();
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_round_trip() {
        let p = Perm::parse_cycles(6, "(2 3)(5 6)").unwrap();
        assert_eq!(p.to_string(), "(2 3)(5 6)");
        assert_eq!(p.order(), 2);
        assert_eq!(p.cycle_type(), vec![2, 2, 1, 1]);
        assert!(Perm::parse_cycles(3, "(1 1)").is_err());
        assert!(Perm::parse_cycles(3, "(1 4)").is_err());
    }

    #[test]
    fn symmetric_group_order() {
        let g = PermGroup::generate(
            &[Perm::parse_cycles(5, "(1 2)").unwrap(), Perm::parse_cycles(5, "(1 2 3 4 5)").unwrap()],
            GROUP_CAP,
        )
        .unwrap();
        assert_eq!(g.order(), 120);
        for e in 0..g.order() {
            let w = g.word(e);
            let mut p = Perm::identity(5);
            for gi in w {
                p = g.generators[gi].compose(&p);
            }
            assert_eq!(p, g.elements[e]);
        }
    }
}
