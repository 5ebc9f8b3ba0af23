use braidrack::classify::{preset_name, search, verify_tables, FoundRack, SearchSpec};
use braidrack::rack::{is_isomorphic, Rack};

fn names(found: &[FoundRack]) -> Vec<String> {
    found.iter().map(|r| r.name.clone().unwrap_or_else(|| format!("unnamed({})", r.size))).collect()
}

fn spec(degrees: &[usize], k3_max: Option<usize>, size_max: usize) -> SearchSpec {
    SearchSpec { degrees: degrees.to_vec(), k3_max, size_max, require_indecomposable: true }
}

#[test]
fn bounded_searches_by_degree() {
    assert_eq!(names(&search(&spec(&[2], Some(6), 12)).unwrap()), ["D3", "A", "C"]);
    assert_eq!(names(&search(&spec(&[3], Some(6), 12)).unwrap()), ["T"]);
    assert_eq!(names(&search(&spec(&[4], Some(6), 12)).unwrap()), ["B"]);
    let mut deg6 = names(&search(&spec(&[6], Some(6), 12)).unwrap());
    deg6.sort();
    assert_eq!(deg6, ["Aff(7,3)", "Aff(7,5)"]);
}

#[test]
fn degree_two_with_larger_k3() {
    let found = search(&spec(&[2], Some(8), 12)).unwrap();
    assert_eq!(names(&found), ["D3", "A", "Aff(9,2)", "C", "unnamed(12)"]);
    let extra = &found[4];
    assert_eq!((extra.k3, extra.degree), (8, 2));
}

/// `x▷y = (1 − M)x + My` on `(Z/3)²` with `M = −1 + N`, `N² = 0`.
fn affine_z3_squared() -> Rack {
    let m = [[2u32, 1], [0, 2]];
    let one_minus = [[(1 + 3 - m[0][0]) % 3, (3 - m[0][1]) % 3], [(3 - m[1][0]) % 3, (1 + 3 - m[1][1]) % 3]];
    let apply = |a: [[u32; 2]; 2], v: [u32; 2]| [(a[0][0] * v[0] + a[0][1] * v[1]) % 3, (a[1][0] * v[0] + a[1][1] * v[1]) % 3];
    let elems: Vec<[u32; 2]> = (0..9).map(|k| [k / 3, k % 3]).collect();
    let index = |v: [u32; 2]| v[0] * 3 + v[1];
    let table = elems
        .iter()
        .map(|&x| {
            elems
                .iter()
                .map(|&y| {
                    let (p, q) = (apply(one_minus, x), apply(m, y));
                    index([(p[0] + q[0]) % 3, (p[1] + q[1]) % 3])
                })
                .collect()
        })
        .collect();
    Rack::new(table).unwrap()
}

#[test]
fn unbounded_search_up_to_nine() {
    let found = search(&spec(&[2, 3, 4, 6], None, 9)).unwrap();
    let named: Vec<String> = found.iter().filter_map(|r| r.name.clone()).collect();
    assert_eq!(named, ["D3", "T", "A", "B", "Aff(7,5)", "Aff(7,3)", "Aff(9,2)"]);
    let unnamed: Vec<&FoundRack> = found.iter().filter(|r| r.name.is_none()).collect();
    assert_eq!(unnamed.len(), 1);
    let extra = unnamed[0];
    assert_eq!((extra.size, extra.degree, extra.k3, extra.m), (9, 6, 8, 0));
    let r = Rack::from_one_based(&extra.table).unwrap();
    let affine = affine_z3_squared();
    assert!(affine.is_braided() && affine.is_indecomposable());
    assert!(is_isomorphic(&r, &affine));
}

/// Every quandle of size `n` with translations fixing their own element,
/// enumerated row by row with no propagation.
fn brute_force(n: usize) -> Vec<Rack> {
    fn perms_fixing(n: usize, x: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(n: usize, x: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            let i = cur.len();
            for v in 0..n as u32 {
                if (i == x) != (v as usize == x) || cur.contains(&v) {
                    continue;
                }
                cur.push(v);
                rec(n, x, cur, out);
                cur.pop();
            }
        }
        rec(n, x, &mut cur, &mut out);
        out
    }
    fn consistent(t: &[Vec<u32>]) -> bool {
        let k = t.len();
        let n = t[0].len();
        for a in 0..k {
            for b in 0..k {
                let ab = t[a][b] as usize;
                if ab >= k {
                    continue;
                }
                for c in 0..n {
                    if t[a][t[b][c] as usize] != t[ab][t[a][c] as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn rec(n: usize, rows: &[Vec<Vec<u32>>], t: &mut Vec<Vec<u32>>, out: &mut Vec<Rack>) {
        if t.len() == n {
            out.push(Rack::new(t.clone()).unwrap());
            return;
        }
        for p in &rows[t.len()] {
            t.push(p.clone());
            if consistent(t) {
                rec(n, rows, t, out);
            }
            t.pop();
        }
    }
    let rows: Vec<_> = (0..n).map(|x| perms_fixing(n, x)).collect();
    let mut out = Vec::new();
    rec(n, &rows, &mut Vec::new(), &mut out);
    out
}

#[test]
fn agrees_with_brute_force_on_small_sizes() {
    let found = search(&spec(&[2, 3, 4, 6], None, 6)).unwrap();
    let mut classes: Vec<Rack> = Vec::new();
    for n in 2..=6 {
        for r in brute_force(n) {
            let good = r.is_braided()
                && r.is_indecomposable()
                && matches!(r.degree(), Some(2 | 3 | 4 | 6));
            if good && !classes.iter().any(|c| is_isomorphic(c, &r)) {
                classes.push(r);
            }
        }
    }
    assert_eq!(classes.len(), found.len());
    for f in &found {
        let r = Rack::from_one_based(&f.table).unwrap();
        assert!(classes.iter().any(|c| is_isomorphic(c, &r)));
    }
}

#[test]
fn emitted_racks_satisfy_the_filters_and_are_ordered() {
    let s = spec(&[2, 3, 4, 6], Some(6), 10);
    let found = search(&s).unwrap();
    for f in &found {
        let r = Rack::from_one_based(&f.table).unwrap();
        assert!(r.is_braided() && r.is_indecomposable());
        assert_eq!(r.degree(), Some(f.degree));
        assert!(f.k3 <= 6);
        assert_eq!(preset_name(&r), f.name);
    }
    let keys: Vec<_> = found.iter().map(|f| (f.size, f.table.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(search(&s).unwrap(), found);
}

#[test]
fn rack_table_rows() {
    let rows = verify_tables();
    assert_eq!(rows.len(), 8);
    for row in &rows {
        assert!(row.matches, "{row:?}");
    }
    let a = rows.iter().find(|r| r.rack == "A").unwrap();
    assert_eq!((a.computed.degree, a.computed.size, a.computed.k3, a.computed.m), (2, 6, 4, Some(0)));
}
