use braidrack_exact::bareiss::rank_rational;
use braidrack_exact::probe::{probe_ranks, rank_with_probes, DEFAULT_PROBE_PRIMES};
use braidrack_exact::{Field, Scalar, SparseMatrix};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    [
        "QQ",
        "Fp(7)",
        "Fp(13)",
        "QQ[t]/(t^2+t+1)",
        "QQ[t]/(t^2-t+1)",
        "Fp(2)[t]/(t^2+t+1)",
        "Fp(5)[t]/(t^2+2)",
    ]
    .iter()
    .map(|s| Field::parse(s).unwrap())
    .collect()
}

/// An element from small integer data: a0 + a1 t (t ignored for plain fields).
fn element(f: &Field, a0: i64, a1: i64, den: i64) -> Scalar {
    let c0 = f.div(&f.from_int(a0), &f.from_int(den)).unwrap_or_else(|_| f.from_int(a0));
    match f.generator() {
        Some(t) => f.add(&c0, &f.mul(&f.from_int(a1), &t)),
        None => c0,
    }
}

proptest! {
    #[test]
    fn field_axioms(fi in 0usize..7, a in (-9i64..9, -9i64..9, 1i64..5),
                    b in (-9i64..9, -9i64..9, 1i64..5), c in (-9i64..9, -9i64..9, 1i64..5)) {
        let f = &fields()[fi];
        let (x, y, z) = (element(f, a.0, a.1, a.2), element(f, b.0, b.1, b.2), element(f, c.0, c.1, c.2));
        prop_assert_eq!(f.add(&f.add(&x, &y), &z), f.add(&x, &f.add(&y, &z)));
        prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
        prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
        prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
        prop_assert!(f.is_zero(&f.add(&x, &f.neg(&x))));
        if !f.is_zero(&x) {
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
    }

    #[test]
    fn print_parse_round_trip(fi in 0usize..7, a in (-30i64..30, -30i64..30, 1i64..7)) {
        let f = &fields()[fi];
        let x = element(f, a.0, a.1, a.2);
        let text = f.format(&x);
        let back = f.parse_scalar(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(f.format(&back), text);
    }

    #[test]
    fn rank_nullity_and_modular_gate(rows in 1usize..7, cols in 1usize..7,
                                     seed in proptest::collection::vec(-3i64..4, 49)) {
        let q = Field::Rationals;
        let dense: Vec<Vec<Scalar>> = (0..rows)
            .map(|i| (0..cols).map(|j| q.from_int(seed[i * 7 + j])).collect())
            .collect();
        let m = SparseMatrix::from_dense(&q, &dense);
        let r = m.rank(&q).unwrap();
        let ker = m.kernel_basis(&q).unwrap();
        prop_assert_eq!(r + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.apply(&q, v).is_empty());
        }
        prop_assert_eq!(rank_rational(&m), r);
        for p in [2u64, 3, 5, 7] {
            let mp = m.reduce_mod(&q, p, None).unwrap();
            prop_assert!(mp.rank(&Field::Prime(p)).unwrap() <= r);
        }
    }
}

fn mat(f: &Field, rows: &[&[&str]]) -> SparseMatrix {
    let dense: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(|s| f.parse_scalar(s).unwrap()).collect())
        .collect();
    SparseMatrix::from_dense(f, &dense)
}

#[test]
fn warmup_two_by_two() {
    let q = Field::Rationals;
    assert_eq!(mat(&q, &[&["1", "-1"], &["-1", "1"]]).rank(&q).unwrap(), 1);
    assert_eq!(mat(&q, &[&["1", "2"], &["2", "1"]]).rank(&q).unwrap(), 2);
    assert_eq!(SparseMatrix::identity(&q, 5).rank(&q).unwrap(), 5);
    assert_eq!(SparseMatrix::zero(4, 4).kernel_dim(&q).unwrap(), 4);
}

fn six_by_six(f: &Field, q: &str) -> SparseMatrix {
    let qv = f.parse_scalar(q).unwrap();
    let q2v = f.mul(&qv, &qv);
    let z = f.zero();
    let o = f.one();
    let rows = vec![
        vec![o.clone(), z.clone(), qv.clone(), q2v.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone(), qv.clone(), q2v.clone()],
        vec![qv.clone(), q2v.clone(), o.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone(), q2v.clone(), qv.clone()],
        vec![q2v.clone(), qv.clone(), z.clone(), z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), q2v.clone(), qv.clone(), z.clone(), o.clone()],
    ];
    SparseMatrix::from_dense(f, &rows)
}

#[test]
fn six_by_six_ranks() {
    let z3 = Field::parse("QQ[t]/(t^2+t+1)").unwrap();
    assert_eq!(six_by_six(&z3, "t").rank(&z3).unwrap(), 5);
    let z6 = Field::parse("QQ[t]/(t^2-t+1)").unwrap();
    assert_eq!(six_by_six(&z6, "t").rank(&z6).unwrap(), 5);
    let q = Field::Rationals;
    assert_eq!(six_by_six(&q, "1").rank(&q).unwrap(), 4);
    assert_eq!(six_by_six(&q, "-1").rank(&q).unwrap(), 4);
    assert_eq!(six_by_six(&q, "2").rank(&q).unwrap(), 6);
}

#[test]
fn three_by_three_determinant_cases() {
    let q = Field::Rationals;
    let m1 = mat(&q, &[&["2", "1", "0"], &["0", "1", "2"], &["1", "1", "1"]]);
    assert_eq!(m1.kernel_dim(&q).unwrap(), 1);
    // q = 2: 1+q = 3, q^2 = 4, q+q^2 = 6
    let m2 = mat(&q, &[&["3", "4", "0"], &["0", "1", "6"], &["4", "2", "1"]]);
    assert_eq!(m2.kernel_dim(&q).unwrap(), 0);
}

#[test]
fn probes_bound_exact_rank() {
    let z3 = Field::parse("QQ[t]/(t^2+t+1)").unwrap();
    let m = six_by_six(&z3, "t");
    let (exact, probes) = rank_with_probes(&m, &z3, &DEFAULT_PROBE_PRIMES).unwrap();
    assert_eq!(exact, 5);
    // 7 splits t^2+t+1; 13 also does (3 and 9)
    assert!(probes.iter().all(|p| p.rank <= exact));
    assert!(probes.iter().any(|p| p.prime == 7 && p.rank == 5));
    assert!(probe_ranks(&m, &Field::Prime(7), &[7]).is_empty());
}

#[test]
fn quotient_ring_elimination_hits_zero_divisor() {
    let f = Field::parse("QQ[t]/(t^2-1)").unwrap();
    let m = mat(&f, &[&["t+1", "1"], &["0", "t-1"]]);
    assert!(m.rank(&f).is_err());
}
