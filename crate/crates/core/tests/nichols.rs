use braidrack::braiding::{coboundary_twist, cocycle_preset, constant_cocycle, Cocycle};
use braidrack::exact::{Field, Scalar};
use braidrack::nichols::closed::{one_orbit_kernel, one_orbit_kernel_computed};
use braidrack::nichols::hilbert::{factorizations, product_polynomial, product_series};
use braidrack::nichols::integral::{evaluate_chain, integral_preset};
use braidrack::nichols::quotient::{parse_relation, presentation_preset, quotient_dims, relation_in_kernel, Presentation};
use braidrack::nichols::symmetrizer::{symmetrizer_rank, RankOptions};
use braidrack::nichols::words::{braid_map, braid_map_inverse, derivation, format_word, parse_word, symmetrizer, GradedVector};
use braidrack::nichols::{graded_dims, NicholsAlgebra};
use braidrack::presets::preset;
use proptest::prelude::*;

fn constant(rack: &str, field: &Field, q: i64) -> Cocycle {
    constant_cocycle(&preset(rack).unwrap(), field, &field.from_int(q)).unwrap()
}

fn d3_minus_one() -> Cocycle {
    constant("D3", &Field::Rationals, -1)
}

/// Permutations of `0..n` with a reduced word for each, found by bubble sort.
fn reduced_words(n: usize) -> Vec<Vec<usize>> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n)
        .into_iter()
        .map(|mut p| {
            let mut word = Vec::new();
            while let Some(i) = (0..n.saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
                p.swap(i, i + 1);
                word.push(i + 1);
            }
            word
        })
        .collect()
}

/// `Σ_σ T_σ` with the Matsumoto lift of each permutation.
fn symmetrizer_by_permutations(c: &Cocycle, words: &[Vec<usize>], v: &GradedVector) -> GradedVector {
    let f = c.field();
    let mut out = GradedVector::zero(v.degree());
    for w in words {
        let image = w.iter().fold(v.clone(), |acc, &i| braid_map(c, i, &acc));
        out = out.add(f, &image);
    }
    out
}

fn all_words(d: usize, n: usize) -> Vec<Vec<u32>> {
    (0..d.pow(n as u32))
        .map(|mut k| {
            let mut w = vec![0u32; n];
            for slot in w.iter_mut().rev() {
                *slot = (k % d) as u32;
                k /= d;
            }
            w
        })
        .collect()
}

/// Rank by dense Gauss-Jordan elimination over the field.
fn dense_rank(f: &Field, mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !f.is_zero(&rows[i][col])) else { continue };
        rows.swap(rank, p);
        let inv = f.inv(&rows[rank][col]).unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if !f.is_zero(&row[col]) {
                let m = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(x, &f.mul(&m, y));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn naive_rank(c: &Cocycle, n: usize) -> usize {
    let f = c.field();
    let words = all_words(c.size(), n);
    let lifts = reduced_words(n);
    let rows = words
        .iter()
        .map(|w| {
            let image = symmetrizer_by_permutations(c, &lifts, &GradedVector::word(f, w));
            words.iter().map(|u| image.coefficient(f, u)).collect()
        })
        .collect();
    dense_rank(f, rows)
}

#[test]
fn horner_symmetrizer_matches_permutation_sum() {
    for c in [d3_minus_one(), constant("T", &Field::Rationals, 2), cocycle_preset("t-new", None).unwrap()] {
        let f = c.field();
        for n in 1..=4 {
            let lifts = reduced_words(n);
            assert_eq!(lifts.len(), (1..=n).product::<usize>());
            for w in all_words(c.size(), n).iter().step_by(7) {
                let v = GradedVector::word(f, w);
                assert_eq!(symmetrizer(&c, &v), symmetrizer_by_permutations(&c, &lifts, &v), "{w:?}");
            }
        }
    }
}

#[test]
fn ranks_agree_with_dense_elimination() {
    let cases = [
        (d3_minus_one(), 4),
        (constant("D3", &Field::Rationals, 2), 3),
        (constant("T", &Field::Rationals, -1), 4),
        (constant("T", &Field::Prime(2), 1), 4),
        (cocycle_preset("d3char2", None).unwrap(), 5),
    ];
    for (c, top) in cases {
        let engine = graded_dims(&c, top).unwrap().dims;
        for n in 0..=top {
            let naive = naive_rank(&c, n);
            assert_eq!(engine[n], naive, "engine, degree {n}");
            assert_eq!(symmetrizer_rank(&c, n, &RankOptions::default()).unwrap().rank, naive, "symmetrizer, degree {n}");
        }
    }
}

#[test]
fn dihedral_algebra_is_twelve_dimensional() {
    let g = graded_dims(&d3_minus_one(), 8).unwrap();
    assert_eq!(g.dims, vec![1, 3, 4, 3, 1, 0]);
    assert!(g.complete);
    assert_eq!(g.total(), 12);
    let q2 = graded_dims(&constant("D3", &Field::Rationals, 2), 3).unwrap();
    assert_eq!(q2.dims, vec![1, 3, 9, 27]);
}

#[test]
fn derivations_detect_the_kernel() {
    // u lies in ker S_n exactly when every ∂_y u lies in ker S_{n-1}
    let c = d3_minus_one();
    let f = c.field();
    for w in all_words(3, 3) {
        let u = GradedVector::word(f, &w);
        let swapped = braid_map(&c, 1, &u);
        let v = u.add(f, &swapped);
        let in_kernel = symmetrizer(&c, &v).is_zero();
        let derivatives = (0..3).all(|y| symmetrizer(&c, &derivation(&c, y, &v)).is_zero());
        assert_eq!(in_kernel, derivatives, "{w:?}");
        // 1 + c_1 kills u whenever c fixes the pair up to sign
        assert_eq!(in_kernel, w[0] == w[1], "{w:?}");
    }
}

#[test]
fn normal_form_kills_relations() {
    let c = d3_minus_one();
    let f = c.field();
    let algebra = NicholsAlgebra::compute(&c, 4).unwrap();
    for text in ["aa", "bb", "ab+bc+ca", "ac+cb+ba"] {
        let r = parse_relation(f, 3, text).unwrap();
        assert!(algebra.normal_form(&r).unwrap().is_empty(), "{text}");
    }
    assert!(!algebra.normal_form(&parse_relation(f, 3, "ab").unwrap()).unwrap().is_empty());
}

#[test]
fn quotients_reproduce_derivation_kernels() {
    let c = d3_minus_one();
    let f = c.field();
    let relations = ["aa", "bb", "cc", "ab+bc+ca", "ac+cb+ba"].iter().map(|t| parse_relation(f, 3, t).unwrap()).collect();
    let p = Presentation::new(c.clone(), relations);
    assert_eq!(relation_in_kernel(&p), vec![true; 5]);
    assert_eq!(quotient_dims(&p, 8).unwrap().dims, graded_dims(&c, 8).unwrap().dims);

    let p = presentation_preset("d3char2").unwrap();
    assert!(relation_in_kernel(&p).iter().all(|&x| x));
    let quotient = quotient_dims(&p, 6).unwrap().dims;
    assert_eq!(quotient, graded_dims(&p.cocycle, 6).unwrap().dims);
    assert_eq!(quotient, product_series(&[(3, 1), (4, 1), (6, 1), (6, 2)], 6).iter().map(|&x| x as usize).collect::<Vec<_>>());
}

#[test]
fn integrals_survive_the_derivation_chain() {
    let (value, report) = {
        let p = integral_preset("t-new").unwrap();
        evaluate_chain(&cocycle_preset("t-new", None).unwrap(), p.word, p.chain).unwrap()
    };
    let f = cocycle_preset("t-new", None).unwrap().field().clone();
    let q = f.generator().unwrap();
    assert_eq!(value, f.neg(&f.mul(&q, &q)));
    assert!(report.nonzero);
    let p = integral_preset("d3char2").unwrap();
    let (value, _) = evaluate_chain(&cocycle_preset("d3char2", None).unwrap(), p.word, p.chain).unwrap();
    assert!(value == Field::parse("Fp(2)[t]/(t^2+t+1)").unwrap().one());
}

#[test]
fn one_orbit_kernels_by_elimination() {
    for (spec, qs) in [("QQ", &["1", "-1", "2", "3"][..]), ("Fp(3)", &["1", "2"]), ("Fp(7)", &["2", "3", "4", "5"])] {
        let f = Field::parse(spec).unwrap();
        for q in qs {
            let q = f.parse_scalar(q).unwrap();
            for e in 1..=3 {
                assert_eq!(one_orbit_kernel(e, &q, &f), one_orbit_kernel_computed(e, &q, &f).unwrap(), "{spec} q={q:?} e={e}");
            }
        }
    }
}

/// `∏ (1 + t^r + … + t^{r(n-1)})` by repeated polynomial multiplication.
fn expand(factors: &[(usize, usize)]) -> Vec<u64> {
    factors.iter().fold(vec![1u64], |acc, &(n, r)| {
        let mut out = vec![0u64; acc.len() + r * (n - 1)];
        for (i, a) in acc.iter().enumerate() {
            for j in 0..n {
                out[i + j * r] += a;
            }
        }
        out
    })
}

proptest! {
    #[test]
    fn braid_inverse_undoes_braid(word in prop::collection::vec(0u32..4, 2..6), i in 1usize..5) {
        let c = cocycle_preset("t-new", None).unwrap();
        let i = 1 + (i - 1) % (word.len() - 1);
        let v = GradedVector::word(c.field(), &word);
        prop_assert_eq!(braid_map_inverse(&c, i, &braid_map(&c, i, &v)), v.clone());
        prop_assert_eq!(braid_map(&c, i, &braid_map_inverse(&c, i, &v)), v);
    }

    #[test]
    fn words_round_trip(word in prop::collection::vec(0u32..12, 0..10)) {
        prop_assert_eq!(parse_word(&format_word(&word), 12).unwrap(), word);
    }

    #[test]
    fn series_match_expansion(factors in prop::collection::vec((2usize..6, 1usize..3), 0..5)) {
        let full = expand(&factors);
        prop_assert_eq!(product_polynomial(&factors), full.clone());
        prop_assert_eq!(full.iter().sum::<u64>(), factors.iter().map(|&(n, _)| n as u64).product::<u64>());
        let mut dims: Vec<usize> = full.iter().map(|&x| x as usize).collect();
        dims.push(0);
        let mut t: Vec<usize> = factors.iter().filter(|f| f.1 == 1).map(|f| f.0).collect();
        let mut t2: Vec<usize> = factors.iter().filter(|f| f.1 == 2).map(|f| f.0).collect();
        t.sort();
        t2.sort();
        prop_assert!(factorizations(&dims, true).iter().any(|x| x.t == t && x.t2 == t2));
    }

    #[test]
    fn twists_keep_graded_dims(scales in prop::collection::vec(prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5]), 3)) {
        let c = d3_minus_one();
        let f = c.field();
        let twist: Vec<Scalar> = scales.iter().map(|&s| f.from_int(s)).collect();
        let t = coboundary_twist(&c, &twist).unwrap();
        prop_assert!(t.yang_baxter_holds());
        prop_assert_eq!(graded_dims(&t, 5).unwrap().dims, vec![1, 3, 4, 3, 1, 0]);
    }
}
