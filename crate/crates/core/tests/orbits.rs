use std::collections::{BTreeMap, BTreeSet};

use braidrack::hurwitz::{
    all_orbits, census, conjugate_orbit, inner_product, orbit, orbit_isomorphic, orbit_isomorphism,
    reference_orbit, sigma, sigma_inverse, BRAIDED_ORBIT_SIZES, ORBIT_CAP,
};
use braidrack::percolate::{certify_minimal, immunity_table, is_quarantine, minimal_plague, quarantine_closure, Closure};
use braidrack::presets::preset;
use braidrack::Rack;
use num_rational::Ratio;
use proptest::prelude::*;

const BRAIDED: [&str; 8] = ["D3", "T", "A", "B", "C", "Aff(7,3)", "Aff(7,5)", "Aff(9,2)"];

/// Orbit sizes by union-find over the σ₁, σ₂ edges of X³.
fn union_find_census(r: &Rack) -> BTreeMap<usize, usize> {
    let d = r.size();
    let code = |t: &[usize]| (t[0] * d + t[1]) * d + t[2];
    let mut parent: Vec<usize> = (0..d * d * d).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let here = code(&[x, y, z]);
                for there in [code(&[r.op(x, y), x, z]), code(&[x, r.op(y, z), y])] {
                    let (a, b) = (find(&mut parent, here), find(&mut parent, there));
                    parent[a] = b;
                }
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for c in 0..d * d * d {
        *sizes.entry(find(&mut parent, c)).or_insert(0) += 1;
    }
    let mut counts = BTreeMap::new();
    for s in sizes.values() {
        *counts.entry(*s).or_insert(0) += 1;
    }
    counts
}

#[test]
fn census_matches_union_find_and_formulas() {
    let expected: [(&str, &[(usize, usize)]); 8] = [
        ("D3", &[(1, 3), (8, 3)]),
        ("T", &[(1, 4), (8, 6), (12, 1)]),
        ("A", &[(1, 6), (3, 6), (8, 12), (16, 6)]),
        ("B", &[(1, 6), (3, 6), (8, 12), (16, 6)]),
        ("C", &[(1, 10), (3, 30), (8, 30), (9, 20), (16, 30)]),
        ("Aff(7,3)", &[(1, 7), (8, 21), (24, 7)]),
        ("Aff(7,5)", &[(1, 7), (8, 21), (24, 7)]),
        ("Aff(9,2)", &[(1, 9), (8, 36), (24, 18)]),
    ];
    for (name, counts) in expected {
        let r = preset(name).unwrap();
        let c = census(&r, 3).unwrap();
        let want: BTreeMap<usize, usize> = counts.iter().copied().collect();
        assert_eq!(c.counts, want, "{name}");
        assert_eq!(union_find_census(&r), want, "{name}");
        assert!(c.total_check);
        assert_eq!(c.formulas_match, Some(true), "{name}");
    }
}

#[test]
fn non_braided_rack_census_has_no_formulas() {
    let r = preset("Aff(5,2)").unwrap();
    assert!(!r.is_braided());
    let c = census(&r, 3).unwrap();
    assert!(c.total_check);
    assert_eq!(c.formulas, None);
    assert_eq!(c.counts, union_find_census(&r));
}

#[test]
fn arity_four_totals() {
    let r = preset("D3").unwrap();
    let c = census(&r, 4).unwrap();
    assert_eq!(c.total, 81);
    for o in all_orbits(&r, 4).unwrap() {
        assert!(o.braid_relations_hold());
    }
}

#[test]
fn orbits_match_exactly_one_reference_graph() {
    let refs: Vec<_> = BRAIDED_ORBIT_SIZES.iter().map(|&s| reference_orbit(s).unwrap()).collect();
    for i in 0..refs.len() {
        for j in 0..refs.len() {
            assert_eq!(orbit_isomorphic(&refs[i].orbit, &refs[j].orbit), i == j);
        }
    }
    for name in BRAIDED {
        let r = preset(name).unwrap();
        for o in all_orbits(&r, 3).unwrap() {
            assert!(o.braid_relations_hold());
            let matches = refs.iter().filter(|n| orbit_isomorphic(&n.orbit, &o)).count();
            assert_eq!(matches, 1, "{name} orbit of size {}", o.len());
            let p = inner_product(&r, &o.tuples[0]);
            assert!(o.tuples.iter().all(|t| inner_product(&r, t) == p));
        }
    }
}

#[test]
fn dihedral_eight_orbits_have_explicit_bijection() {
    let r = preset("D3").unwrap();
    let o1 = orbit(&r, &[0, 0, 1], ORBIT_CAP).unwrap();
    let o2 = orbit(&r, &[1, 1, 2], ORBIT_CAP).unwrap();
    let f = orbit_isomorphism(&o1, &o2).unwrap();
    for i in 0..2 {
        for k in 0..8 {
            assert_eq!(f[o1.edges[i][k]], o2.edges[i][f[k]]);
        }
    }
    let nine = reference_orbit(9).unwrap().orbit;
    let twelve = reference_orbit(12).unwrap().orbit;
    assert!(!orbit_isomorphic(&nine, &twelve));
}

fn tuple_set(o: &braidrack::hurwitz::HurwitzOrbit) -> BTreeSet<Vec<u32>> {
    o.tuples.iter().cloned().collect()
}

#[test]
fn conjugation_moves_eight_orbits() {
    let t = preset("T").unwrap();
    let o = orbit(&t, &[0, 0, 1], ORBIT_CAP).unwrap();
    let moved = conjugate_orbit(&t.phi(0), &o);
    assert_eq!(tuple_set(&moved), tuple_set(&orbit(&t, &[0, 0, 2], ORBIT_CAP).unwrap()));
    assert!(orbit_isomorphic(&o, &moved));
    let same = conjugate_orbit(&braidrack::Perm::identity(4), &o);
    assert_eq!(same, o);

    let b = preset("B").unwrap();
    let mut cur = orbit(&b, &[0, 0, 1], ORBIT_CAP).unwrap();
    let mut reached = BTreeSet::new();
    for _ in 0..4 {
        let z = (1..6).find(|&z| tuple_set(&cur).contains(&vec![0, 0, z])).unwrap();
        reached.insert(z + 1);
        cur = conjugate_orbit(&b.phi(0), &cur);
    }
    assert_eq!(reached, BTreeSet::from([2, 3, 4, 5]));
}

#[test]
fn named_plagues_and_quarantines() {
    let eight = reference_orbit(8).unwrap();
    let full = |n: &braidrack::hurwitz::NamedOrbit, s: &str| {
        quarantine_closure(&n.orbit, &n.indices(s)).unwrap().len() == n.orbit.len()
    };
    assert!(full(&eight, "ADH"));
    for q in ["ABDEFG", "BCDEGH"] {
        assert!(is_quarantine(&eight.orbit, &eight.indices(q)).unwrap(), "{q}");
    }
    for s in ["AC", "AH", "CF", "FH", "AF"] {
        assert!(!full(&eight, s), "{s}");
    }

    let nine = reference_orbit(9).unwrap();
    assert!(full(&nine, "ABC"));
    for q in ["BCEGH", "ABDGI", "BF", "ACFHI", "DH", "AE", "DE", "EF", "EI"] {
        assert!(is_quarantine(&nine.orbit, &nine.indices(q)).unwrap(), "{q}");
    }

    assert!(full(&reference_orbit(3).unwrap(), "A"));
    let six = reference_orbit(6).unwrap();
    assert!(full(&six, "AB"));
    assert!((0..6).all(|k| quarantine_closure(&six.orbit, &[k]).unwrap().len() < 6));
    assert!(full(&reference_orbit(12).unwrap(), "ABDE"));
    assert!(full(&reference_orbit(16).unwrap(), "ABCEH"));
    assert!(full(&reference_orbit(24).unwrap(), "ABCDEKN"));
}

#[test]
fn minimal_plague_sizes_by_orbit_size() {
    let want = [(1, 1), (3, 1), (6, 2), (8, 3), (9, 3), (12, 4), (16, 5), (24, 7)];
    for (size, plague) in want {
        let o = reference_orbit(size).unwrap().orbit;
        let p = minimal_plague(&o).unwrap();
        assert_eq!(p.plague_size, plague, "size {size}");
        assert_eq!(p.immunity, Ratio::new(plague, size));
        assert!(certify_minimal(&o, plague).unwrap());
        assert_eq!(quarantine_closure(&o, &p.witness).unwrap().len(), size);
    }
}

#[test]
fn immunity_tables_of_presets() {
    let ratio = |a, b| Ratio::new(a, b);
    let c = immunity_table(&preset("C").unwrap()).unwrap();
    let got: Vec<_> = c.values().map(|r| (r.orbit_size, r.immunity)).collect();
    assert_eq!(
        got,
        vec![(1, ratio(1, 1)), (3, ratio(1, 3)), (8, ratio(3, 8)), (9, ratio(1, 3)), (16, ratio(5, 16))]
    );
    let t = immunity_table(&preset("T").unwrap()).unwrap();
    let got: Vec<_> = t.values().map(|r| (r.orbit_size, r.immunity)).collect();
    assert_eq!(got, vec![(1, ratio(1, 1)), (8, ratio(3, 8)), (12, ratio(1, 3))]);
    let a = immunity_table(&preset("Aff(7,3)").unwrap()).unwrap();
    let got: Vec<_> = a.values().map(|r| (r.orbit_size, r.immunity)).collect();
    assert_eq!(got, vec![(1, ratio(1, 1)), (8, ratio(3, 8)), (24, ratio(7, 24))]);
}

proptest! {
    #[test]
    fn sigma_inverse_undoes_sigma(name in prop::sample::select(BRAIDED.to_vec()), seed in any::<[u8; 4]>(), i in 1usize..4) {
        let r = preset(name).unwrap();
        let d = r.size() as u8;
        let t: Vec<u32> = seed.iter().map(|&x| (x % d) as u32).collect();
        prop_assert_eq!(sigma_inverse(&r, i, &sigma(&r, i, &t)), t.clone());
        prop_assert_eq!(sigma(&r, i, &sigma_inverse(&r, i, &t)), t);
    }

    #[test]
    fn closure_is_a_closure_operator(size in prop::sample::select(BRAIDED_ORBIT_SIZES.to_vec()), a in any::<u32>(), b in any::<u32>()) {
        let o = reference_orbit(size).unwrap().orbit;
        let c = Closure::new(&o).unwrap();
        let a = a & c.full();
        let b = b & c.full();
        let ca = c.close(a);
        prop_assert_eq!(ca & a, a);
        prop_assert_eq!(c.close(ca), ca);
        prop_assert_eq!(c.close(a & b) & ca, c.close(a & b));
    }
}
