//! End-to-end verification report: every reference table value and every
//! structural invariant, recomputed and compared exactly.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braiding::{
    cocycle_preset, coboundary_twist, constant_cocycle, group_model_cocycle, t_group_model, transposition_sign,
    Cocycle,
};
use crate::classify::{search, verify_tables, FoundRack, SearchSpec};
use crate::error::{BraidingError, RackError};
use crate::exact::{Field, Scalar};
use crate::hurwitz::{census, reference_orbit, BRAIDED_ORBIT_SIZES};
use crate::nichols::closed::{
    eight_orbit_bound, k3_bound, one_orbit_kernel, one_orbit_kernel_computed, reduction_char_three,
    reduction_minus_one, specialize, InequalityInput,
};
use crate::nichols::criterion::{block_diagonal, derivation_criterion};
use crate::nichols::cubic::{check_conditions, cubic_kernel};
use crate::nichols::hilbert::{product_polynomial, product_series};
use crate::nichols::integral::{evaluate_chain, integral_preset};
use crate::nichols::quotient::{presentation_preset, quotient_dims, relation_in_kernel};
use crate::nichols::symmetrizer::{symmetrizer_rank, RankOptions};
use crate::nichols::{graded_dims, NicholsAlgebra};
use crate::percolate::{certify_minimal, format_ratio, immunity_table, minimal_plague};
use crate::presets::{class_model, preset, PRESET_NAMES};
use crate::rack::Rack;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn criteria(self) -> &'static [&'static str] {
        match self {
            Profile::Quick => &["P1", "P2", "P3", "P4", "P8", "P9", "P10", "P11"],
            Profile::Full => &["P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9", "P10", "P11", "P12"],
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// A reference table of known values.
    Table,
    /// A closed formula evaluated independently of the computation.
    Formula,
    /// An identity or invariant that must hold.
    Invariant,
    /// A runtime budget.
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub check: String,
    pub source: Source,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: String,
    pub title: String,
    pub pass: bool,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub profile: Profile,
    pub pass: bool,
    pub criteria: Vec<Criterion>,
}

impl Report {
    /// Drops runtimes so that the report is identical across runs.
    pub fn without_timings(mut self) -> Report {
        for c in &mut self.criteria {
            for e in &mut c.entries {
                e.runtime_ms = None;
            }
        }
        self
    }
}

impl Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.entries.iter().filter(|e| !e.matches).count();
        write!(
            f,
            "{} {} {} ({} checks, {} failed)",
            self.id,
            if self.pass { "pass" } else { "FAIL" },
            self.title,
            self.entries.len(),
            failed
        )
    }
}

struct Section {
    entries: Vec<Entry>,
    clock: Instant,
}

impl Section {
    fn new() -> Section {
        Section { entries: Vec::new(), clock: Instant::now() }
    }

    fn lap(&mut self) -> u64 {
        let ms = self.clock.elapsed().as_millis() as u64;
        self.clock = Instant::now();
        ms
    }

    fn push(&mut self, check: impl Into<String>, source: Source, expected: String, computed: String, matches: bool) {
        let ms = self.lap();
        self.entries.push(Entry { check: check.into(), source, expected, computed, matches, runtime_ms: Some(ms) });
    }

    fn eq<T: Debug + PartialEq, E: Display>(&mut self, check: impl Into<String>, source: Source, expected: T, computed: Result<T, E>) {
        match computed {
            Ok(v) => {
                let m = v == expected;
                self.push(check, source, format!("{expected:?}"), format!("{v:?}"), m);
            }
            Err(e) => self.push(check, source, format!("{expected:?}"), format!("error: {e}"), false),
        }
    }

    /// Within budget, the computed text equals the expected one so that the
    /// report stays stable; the elapsed time goes to `runtime_ms`.
    fn budget(&mut self, check: &str, start: Instant, limit_ms: u64) {
        let ms = start.elapsed().as_millis() as u64;
        let expected = format!("< {limit_ms} ms");
        let computed = if ms < limit_ms { expected.clone() } else { format!("{ms} ms") };
        self.clock = Instant::now();
        self.entries.push(Entry {
            check: check.into(),
            source: Source::Budget,
            expected,
            computed,
            matches: ms < limit_ms,
            runtime_ms: Some(ms),
        });
    }

    fn finish(self, id: &str, title: &str) -> Criterion {
        Criterion {
            id: id.into(),
            title: title.into(),
            pass: !self.entries.is_empty() && self.entries.iter().all(|e| e.matches),
            entries: self.entries,
        }
    }
}

type Failure = String;

fn fail<E: Display>(e: E) -> Failure {
    e.to_string()
}

/// Runs the criteria of `profile`, reporting progress through `progress`.
pub fn verify(profile: Profile, mut progress: impl FnMut(&Criterion)) -> Report {
    let mut criteria = Vec::new();
    for id in profile.criteria() {
        let c = run_criterion(id).expect("criterion ids are fixed");
        progress(&c);
        criteria.push(c);
    }
    Report { profile, pass: criteria.iter().all(|c| c.pass), criteria }
}

/// Runs one criterion by id (`"P1"` … `"P12"`).
pub fn run_criterion(id: &str) -> Option<Criterion> {
    Some(match id {
        "P1" => p1_census(),
        "P2" => p2_immunity(),
        "P3" => p3_closed_forms(),
        "P4" => p4_dihedral(),
        "P5" => p5_dihedral_char_two(),
        "P6" => p6_tetrahedral(),
        "P7" => p7_tetrahedral_new(),
        "P8" => p8_negative_controls(),
        "P9" => p9_classification(),
        "P10" => p10_inequality(),
        "P11" => p11_truncations(),
        "P12" => p12_invariants(),
        _ => return None,
    })
}

// ---- configurations ----

fn rationals_constant(rack: &str, q: i64) -> Result<Cocycle, Failure> {
    let f = Field::Rationals;
    constant_cocycle(&preset(rack).map_err(fail)?, &f, &f.from_int(q)).map_err(fail)
}

/// Braided spaces used across the criteria, by display name.
pub fn configurations() -> Vec<(String, Result<Cocycle, Failure>)> {
    let f2 = Field::Prime(2);
    let mut out: Vec<(String, Result<Cocycle, Failure>)> = vec![
        ("D3, q = -1".into(), rationals_constant("D3", -1)),
        ("D3, q = 2".into(), rationals_constant("D3", 2)),
        ("D3 over F4".into(), cocycle_preset("d3char2", None).map_err(fail)),
        ("T, q = -1".into(), rationals_constant("T", -1)),
        (
            "T over F2".into(),
            preset("T").map_err(fail).and_then(|r| constant_cocycle(&r, &f2, &f2.one()).map_err(fail)),
        ),
        ("T, new example".into(), cocycle_preset("t-new", None).map_err(fail)),
        (
            "T, rho(x1) = rho(x2x4) = -1".into(),
            t_group_model(&Field::Rationals, &Field::Rationals.from_int(-1), &Field::Rationals.from_int(-1))
                .map(|m| m.cocycle)
                .map_err(fail),
        ),
        ("A, q = -1".into(), rationals_constant("A", -1)),
    ];
    for (rack, sign) in [("A", 1), ("A", -1), ("C", 1), ("C", -1)] {
        out.push((
            format!("{rack}, rho = sign, commuting {sign:+}"),
            transposition_sign(rack, sign).map(|m| m.cocycle).map_err(fail),
        ));
    }
    out.push(("B, rho(x1) = -1".into(), cocycle_preset("group(S4,(1234),-1)", None).map_err(fail)));
    out.push(("Aff(7,3), q = 1".into(), rationals_constant("Aff(7,3)", 1)));
    out
}

fn config(name: &str) -> Result<Cocycle, Failure> {
    configurations()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, c)| c)
        .unwrap_or_else(|| Err(format!("no configuration {name:?}")))
}

fn series(factors: &[(usize, usize)], max_degree: usize) -> Vec<usize> {
    product_series(factors, max_degree).into_iter().map(|x| x as usize).collect()
}

fn full_series(factors: &[(usize, usize)]) -> Vec<usize> {
    let mut v: Vec<usize> = product_polynomial(factors).into_iter().map(|x| x as usize).collect();
    v.push(0);
    v
}

fn engine_dims(c: &Result<Cocycle, Failure>, max_degree: usize) -> Result<Vec<usize>, Failure> {
    let c = c.as_ref().map_err(Clone::clone)?;
    graded_dims(c, max_degree).map(|g| g.dims).map_err(fail)
}

fn symmetrizer_dims(c: &Result<Cocycle, Failure>, max_degree: usize) -> Result<Vec<usize>, Failure> {
    let c = c.as_ref().map_err(Clone::clone)?;
    let opts = RankOptions::default();
    (0..=max_degree)
        .map(|n| symmetrizer_rank(c, n, &opts).map(|r| r.rank).map_err(fail))
        .collect()
}

// ---- criteria ----

fn p1_census() -> Criterion {
    census_criterion(preset)
}

/// The census criterion with racks supplied by `load`.
pub fn census_criterion(load: impl Fn(&str) -> Result<Rack, RackError>) -> Criterion {
    let start = Instant::now();
    let mut s = Section::new();
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
        let want: BTreeMap<usize, usize> = counts.iter().copied().collect();
        let c = load(name).map_err(fail).and_then(|r| census(&r, 3).map_err(fail));
        s.eq(format!("{name}: orbit sizes in X^3"), Source::Table, want, c.as_ref().map(|c| c.counts.clone()).map_err(Clone::clone));
        s.eq(
            format!("{name}: closed formulas and sum j*N_j = d^3"),
            Source::Formula,
            (true, Some(true)),
            c.map(|c| (c.total_check, c.formulas_match)),
        );
    }
    s.budget("runtime", start, 2_000);
    s.finish("P1", "orbit census")
}

fn p2_immunity() -> Criterion {
    let start = Instant::now();
    let mut s = Section::new();
    let expected: [(usize, usize, &str); 8] =
        [(1, 1, "1"), (3, 1, "1/3"), (6, 2, "1/3"), (8, 3, "3/8"), (9, 3, "1/3"), (12, 4, "1/3"), (16, 5, "5/16"), (24, 7, "7/24")];
    for (size, plague, imm) in expected {
        let computed = reference_orbit(size)
            .ok_or_else(|| format!("no reference orbit of size {size}"))
            .and_then(|o| {
                let p = minimal_plague(&o.orbit).map_err(fail)?;
                let minimal = certify_minimal(&o.orbit, p.plague_size).map_err(fail)?;
                Ok((p.plague_size, format_ratio(&p.immunity), minimal))
            });
        s.eq(format!("orbit size {size}: minimal plague, immunity, certified"), Source::Table, (plague, imm.to_string(), true), computed);
    }
    debug_assert_eq!(BRAIDED_ORBIT_SIZES.len(), expected.len());
    let by_size: BTreeMap<usize, usize> = expected.iter().map(|e| (e.0, e.1)).collect();
    for name in PRESET_NAMES {
        let computed = preset(name).map_err(fail).and_then(|r| immunity_table(&r).map_err(fail)).map(|t| {
            t.values().map(|row| (row.orbit_size, row.plague_size)).collect::<BTreeMap<_, _>>()
        });
        let want = computed
            .as_ref()
            .map(|t| t.keys().map(|k| (*k, by_size.get(k).copied().unwrap_or(0))).collect())
            .unwrap_or_default();
        s.eq(format!("{name}: plague sizes of every 3-orbit"), Source::Table, want, computed);
    }
    s.budget("runtime", start, 30_000);
    s.finish("P2", "orbit immunity")
}

fn p3_closed_forms() -> Criterion {
    let mut s = Section::new();
    let fields: Vec<(&str, Vec<(&str, &str)>)> = vec![
        ("QQ", vec![("1", "1"), ("-1", "-1"), ("generic", "2")]),
        ("Fp(3)", vec![("1", "1"), ("-1", "2")]),
        ("Fp(7)", vec![("1", "1"), ("-1", "6"), ("zeta3", "2"), ("zeta6", "3")]),
        ("QQ[t]/(t^2+t+1)", vec![("1", "1"), ("-1", "-1"), ("zeta3", "t"), ("zeta6", "-t"), ("generic", "2")]),
        ("QQ[t]/(t^2-t+1)", vec![("1", "1"), ("-1", "-1"), ("zeta3", "t-1"), ("zeta6", "t"), ("generic", "2")]),
    ];
    for (spec, qs) in fields {
        let field = match Field::parse(spec) {
            Ok(f) => f,
            Err(e) => {
                s.push(format!("field {spec}"), Source::Formula, "parses".into(), e.to_string(), false);
                continue;
            }
        };
        for (label, text) in qs {
            let q = match field.parse_scalar(text) {
                Ok(q) => q,
                Err(e) => {
                    s.push(format!("{spec}, q = {label}"), Source::Formula, "parses".into(), e.to_string(), false);
                    continue;
                }
            };
            let expected: Vec<usize> = (1..=3).map(|e| one_orbit_kernel(e, &q, &field)).collect();
            let computed: Result<Vec<usize>, Failure> =
                (1..=3).map(|e| one_orbit_kernel_computed(e, &q, &field).map_err(fail)).collect();
            s.eq(format!("1-orbit kernel, {spec}, q = {label}, e = 1..3"), Source::Formula, expected, computed);
        }
    }
    for (name, c) in configurations() {
        let computed = c.and_then(|c| {
            let k = cubic_kernel(&c).map_err(fail)?;
            Ok(k.eight_orbit_bounds_hold)
        });
        s.eq(format!("{name}: 8-orbit blocks within their bound"), Source::Formula, true, computed);
    }
    // the optimal case: q = -1 and (1 + c^3)(v_x ⊗ v_y) = 0
    let computed = config("D3, q = -1").and_then(|c| {
        let k = cubic_kernel(&c).map_err(fail)?;
        Ok(k.orbits.iter().filter(|o| o.size == 8).map(|o| (o.kernel, o.optimal)).collect::<Vec<_>>())
    });
    s.eq("D3, q = -1: 8-orbit kernels are optimal", Source::Table, vec![(3, Some(true)); 3], computed);
    let f = Field::Rationals;
    s.eq(
        "8-orbit bounds at (e, q) = (1, -1), (1, 2), (2, -1)",
        Source::Formula,
        vec![3, 2, 22],
        Ok::<_, Failure>(vec![
            eight_orbit_bound(1, &f.from_int(-1), &f),
            eight_orbit_bound(1, &f.from_int(2), &f),
            eight_orbit_bound(2, &f.from_int(-1), &f),
        ]),
    );
    s.finish("P3", "closed-form kernels")
}

fn conditions(c: &Cocycle, degree: usize) -> Result<(bool, bool, bool, usize), Failure> {
    let g = graded_dims(c, degree).map_err(fail)?;
    let k = cubic_kernel(c).map_err(fail)?;
    let r = check_conditions(c.size(), &g.dims, k.total, g.complete);
    Ok((r.cond1_truncated, r.cond2, r.cond3, k.total))
}

fn p4_dihedral() -> Criterion {
    let start = Instant::now();
    let mut s = Section::new();
    let c = config("D3, q = -1");
    let want = full_series(&[(2, 1), (2, 1), (3, 1)]);
    s.eq("graded dims, derivation kernels", Source::Table, want.clone(), engine_dims(&c, 8));
    s.eq("graded dims, symmetrizer ranks", Source::Table, want[..5].to_vec(), symmetrizer_dims(&c, 4));
    s.eq("total dimension", Source::Table, 12, engine_dims(&c, 8).map(|d| d.iter().sum::<usize>()));
    s.eq(
        "conditions (1, truncated), (2), (3)",
        Source::Table,
        (true, true, true),
        c.as_ref().map_err(Clone::clone).and_then(|c| conditions(c, 6)).map(|r| (r.0, r.1, r.2)),
    );
    s.eq(
        "q = 2: condition (3)",
        Source::Table,
        false,
        config("D3, q = 2").and_then(|c| conditions(&c, 4)).map(|r| r.2),
    );
    s.budget("runtime", start, 5_000);
    s.finish("P4", "D3 with q = -1")
}

/// Relations vanish both under `S_n` and in the derivation engine.
fn relations_vanish(name: &str, s: &mut Section) -> Result<(), Failure> {
    let p = presentation_preset(name).map_err(fail)?;
    let direct = relation_in_kernel(&p);
    s.eq("relations in ker S_n", Source::Table, vec![true; p.relations.len()], Ok::<_, Failure>(direct));
    let top = p.relations.iter().map(|r| r.degree()).max().unwrap_or(0);
    let algebra = NicholsAlgebra::compute(&p.cocycle, top).map_err(fail)?;
    let engine: Result<Vec<bool>, Failure> =
        p.relations.iter().map(|r| algebra.normal_form(r).map(|v| v.is_empty()).map_err(fail)).collect();
    s.eq("relations vanish in the derivation engine", Source::Invariant, vec![true; p.relations.len()], engine);
    Ok(())
}

fn presented_example(
    s: &mut Section,
    name: &str,
    factors: &[(usize, usize)],
    total: usize,
    top: usize,
    symmetrizer_degree: usize,
) {
    let want = full_series(factors);
    if let Err(e) = relations_vanish(name, s) {
        s.push("relations", Source::Table, "checked".into(), format!("error: {e}"), false);
    }
    let quotient = presentation_preset(name).map_err(fail).and_then(|p| quotient_dims(&p, 40).map_err(fail));
    s.eq("quotient series", Source::Table, want.clone(), quotient.as_ref().map(|q| q.dims.clone()).map_err(Clone::clone));
    s.eq(
        "quotient total and top degree",
        Source::Table,
        (total, Some(top)),
        quotient.as_ref().map(|q| (q.total(), q.top_degree())).map_err(Clone::clone),
    );
    let c = cocycle_preset(name, None).map_err(fail);
    let engine = engine_dims(&c, 40);
    s.eq("series from derivation kernels", Source::Table, want.clone(), engine);
    s.eq(
        format!("symmetrizer ranks through degree {symmetrizer_degree}"),
        Source::Table,
        want[..=symmetrizer_degree].to_vec(),
        symmetrizer_dims(&c, symmetrizer_degree),
    );
}

fn p5_dihedral_char_two() -> Criterion {
    let mut s = Section::new();
    presented_example(&mut s, "d3char2", &[(3, 1), (4, 1), (6, 1), (6, 2)], 432, 20, 8);
    let chain = integral_preset("d3char2").map_err(fail).and_then(|p| {
        let c = cocycle_preset("d3char2", None).map_err(fail)?;
        evaluate_chain(&c, p.word, p.chain).map(|r| r.1.nonzero).map_err(fail)
    });
    s.eq("derivation chain on the integral is nonzero", Source::Table, true, chain);
    s.finish("P5", "D3 over F4, dimension 432")
}

fn p6_tetrahedral() -> Criterion {
    let mut s = Section::new();
    let c = config("T, q = -1");
    let want = series(&[(2, 1), (2, 1), (3, 1), (6, 1)], 6);
    s.eq("QQ: derivation kernels through degree 6", Source::Table, want.clone(), engine_dims(&c, 6));
    s.eq("QQ: symmetrizer ranks through degree 6", Source::Table, want, symmetrizer_dims(&c, 6));
    s.eq("QQ: total dimension", Source::Table, 72, engine_dims(&c, 12).map(|d| d.iter().sum::<usize>()));
    let c = config("T over F2");
    let want = full_series(&[(2, 1), (2, 1), (3, 1), (3, 1)]);
    s.eq("F2: series from derivation kernels", Source::Table, want.clone(), engine_dims(&c, 10));
    s.eq("F2: symmetrizer ranks through degree 7", Source::Table, want, symmetrizer_dims(&c, 7));
    s.finish("P6", "T with q = -1 over QQ and F2")
}

fn p7_tetrahedral_new() -> Criterion {
    let mut s = Section::new();
    presented_example(&mut s, "t-new", &[(6, 1), (6, 1), (6, 1), (6, 1), (2, 2), (2, 2)], 5184, 24, 6);
    let chain = integral_preset("t-new").map_err(fail).and_then(|p| {
        let c = cocycle_preset("t-new", None).map_err(fail)?;
        let f = c.field().clone();
        let (value, _) = evaluate_chain(&c, p.word, p.chain).map_err(fail)?;
        let q = f.generator().ok_or("no generator")?;
        let minus_q2 = f.neg(&f.mul(&q, &q));
        Ok((value == minus_q2, f.format(&value)))
    });
    s.eq(
        "derivation chain on the integral equals -q^2",
        Source::Table,
        (true, "t+1".to_string()),
        chain,
    );
    s.finish("P7", "new T example, dimension 5184")
}

fn p8_negative_controls() -> Criterion {
    let mut s = Section::new();
    s.eq(
        "T, rho(x1) = rho(x2x4) = -1: condition (3)",
        Source::Table,
        false,
        config("T, rho(x1) = rho(x2x4) = -1").and_then(|c| conditions(&c, 4)).map(|r| r.2),
    );
    let b = class_model("B").ok_or("no model for B".to_string()).and_then(|m| {
        let f = Field::Rationals;
        let g = m.labels[0].clone();
        let x6 = m.labels[5].clone();
        let model = group_model_cocycle(&f, &m.generators, &g, Some(&m.labels), &[(g.clone(), f.from_int(-1)), (x6, f.one())]);
        match model {
            Err(BraidingError::CharacterInconsistent(_)) => Ok("rejected".to_string()),
            Err(e) => Err(fail(e)),
            Ok(model) => conditions(&model.cocycle, 4).map(|r| format!("condition (3) {}", r.2)),
        }
    });
    s.eq("B, rho(x1) = -1, rho(x6) = 1", Source::Table, "rejected".to_string(), b);
    s.eq(
        "Aff(7,3), q = 1: condition (3)",
        Source::Table,
        false,
        config("Aff(7,3), q = 1").and_then(|c| conditions(&c, 4)).map(|r| r.2),
    );
    s.finish("P8", "negative controls")
}

fn names(found: &[FoundRack]) -> Vec<String> {
    let mut v: Vec<String> =
        found.iter().map(|r| r.name.clone().unwrap_or_else(|| format!("unnamed({})", r.size))).collect();
    v.sort();
    v
}

fn p9_classification() -> Criterion {
    let start = Instant::now();
    let mut s = Section::new();
    let cases: [(&[usize], usize, &[&str]); 4] = [
        (&[2], 6, &["A", "C", "D3"]),
        (&[3], 6, &["T"]),
        (&[4], 6, &["B"]),
        (&[6], 6, &["Aff(7,3)", "Aff(7,5)"]),
    ];
    for (degrees, k3, want) in cases {
        let spec = SearchSpec { degrees: degrees.to_vec(), k3_max: Some(k3), size_max: 12, require_indecomposable: true };
        let want: Vec<String> = want.iter().map(|x| x.to_string()).collect();
        s.eq(format!("degree {degrees:?}, k3 <= {k3}, size <= 12"), Source::Table, want, search(&spec).map(|f| names(&f)));
    }
    let spec = SearchSpec { degrees: vec![2], k3_max: Some(8), size_max: 12, require_indecomposable: true };
    s.eq(
        "degree 2, k3 <= 8: contains Aff(9,2)",
        Source::Table,
        true,
        search(&spec).map(|f| f.iter().any(|r| r.name.as_deref() == Some("Aff(9,2)") && r.k3 == 8)),
    );
    for row in verify_tables() {
        s.push(
            format!("{}: (degree, size, k3, m)", row.rack),
            Source::Table,
            format!("{:?}", row.expected),
            format!("{:?}", row.computed),
            row.matches,
        );
    }
    s.budget("runtime", start, 600_000);
    s.finish("P9", "classification")
}

fn p10_inequality() -> Criterion {
    let mut s = Section::new();
    s.eq("(d, e, k3, m) = (6, 1, 4, 0): (d8, d1, constant)", Source::Table, (48, 24, -136), Ok::<_, Failure>(specialize(6, 1, 4, 0)));
    s.eq("(d, e, k3, m) = (10, 1, 6, 0): (d8, d1, constant)", Source::Table, (72, 24, -216), Ok::<_, Failure>(specialize(10, 1, 6, 0)));
    let v = InequalityInput { d: 3, e: 1, k3: 2, m: 0, d1: 0, d8: 3 };
    s.eq("D3 arithmetic", Source::Formula, 8, Ok::<_, Failure>(v.printed()));
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e9);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let e = rng.gen_range(1..=6i64);
        let k3 = rng.gen_range(0..=40i64);
        let m = rng.gen_range(0..=k3);
        for (label, (derived, closed)) in [("q = -1", reduction_minus_one(e, k3, m)), ("char 3", reduction_char_three(e, k3, m))] {
            if derived != closed {
                bad.push(format!("{label} at ({e}, {k3}, {m})"));
            }
        }
    }
    s.eq("both reductions at 200 random points", Source::Formula, Vec::<String>::new(), Ok::<_, Failure>(bad));
    s.eq(
        "k3 bounds: q = -1 (e = 1, 2), q != -1 (e = 1)",
        Source::Table,
        (6, 3, 3),
        Ok::<_, Failure>((k3_bound(1, true), k3_bound(2, true), k3_bound(1, false))),
    );
    s.finish("P10", "counting inequality")
}

fn p11_truncations() -> Criterion {
    let mut s = Section::new();
    let abc = [(2, 1), (2, 1), (3, 1), (3, 1), (4, 1), (4, 1)];
    let c_series = [(4, 1), (4, 1), (4, 1), (4, 1), (5, 1), (5, 1), (6, 1), (6, 1), (6, 1), (6, 1)];
    for (name, factors, degree) in [
        ("A, rho = sign, commuting +1", &abc[..], 6),
        ("A, rho = sign, commuting -1", &abc[..], 6),
        ("B, rho(x1) = -1", &abc[..], 6),
        ("C, rho = sign, commuting +1", &c_series[..], 4),
        ("C, rho = sign, commuting -1", &c_series[..], 4),
    ] {
        let c = config(name);
        let want = series(factors, degree);
        s.eq(format!("{name}: derivation kernels through degree {degree}"), Source::Table, want.clone(), engine_dims(&c, degree));
        s.eq(format!("{name}: symmetrizer ranks through degree {degree}"), Source::Table, want, symmetrizer_dims(&c, degree));
    }
    s.finish("P11", "truncated series for A, B, C")
}

fn random_unit(f: &Field, rng: &mut ChaCha8Rng) -> Scalar {
    match f.elements() {
        Some(all) => {
            let units: Vec<Scalar> = all.into_iter().filter(|x| !f.is_zero(x)).collect();
            units[rng.gen_range(0..units.len())].clone()
        }
        None => loop {
            let a = f.from_int(rng.gen_range(-4..=4));
            let b = match f.generator() {
                Some(t) => f.mul(&f.from_int(rng.gen_range(-2..=2)), &t),
                None => f.zero(),
            };
            let x = f.add(&a, &b);
            if !f.is_zero(&x) {
                break x;
            }
        },
    }
}

/// Graded dims through degree 4, the cubic kernel and `rank S_3`.
fn twist_signature(c: &Cocycle) -> Result<(Vec<usize>, usize, usize), Failure> {
    let dims = graded_dims(c, 4).map_err(fail)?.dims;
    let k = cubic_kernel(c).map_err(fail)?.total;
    let r = symmetrizer_rank(c, 3, &RankOptions::default()).map_err(fail)?.rank;
    Ok((dims, k, r))
}

fn p12_invariants() -> Criterion {
    let mut s = Section::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7157);
    for (name, c) in configurations() {
        let c = match c {
            Ok(c) => c,
            Err(e) => {
                s.push(format!("{name}: configuration"), Source::Invariant, "builds".into(), e, false);
                continue;
            }
        };
        s.eq(format!("{name}: Yang-Baxter equation"), Source::Invariant, true, Ok::<_, Failure>(c.yang_baxter_holds()));
        let blocks: Result<Vec<bool>, Failure> = (2..=4).map(|n| block_diagonal(&c, n).map_err(fail)).collect();
        s.eq(format!("{name}: S_n and X_3 block diagonal, n = 2..4"), Source::Invariant, vec![true; 3], blocks);
        let k = cubic_kernel(&c).map_err(fail);
        s.eq(
            format!("{name}: block kernels within immunity bounds"),
            Source::Invariant,
            true,
            k.as_ref().map(|k| k.immunity_bounds_hold).map_err(Clone::clone),
        );
        s.eq(
            format!("{name}: dim ker S_3 <= d dim ker(1+c) + dim ker X_3"),
            Source::Invariant,
            true,
            k.as_ref().map(|k| k.kernel_identity_holds).map_err(Clone::clone),
        );
        let base = twist_signature(&c);
        let twisted: Result<Vec<bool>, Failure> = (0..20)
            .map(|_| {
                let f: Vec<Scalar> = (0..c.size()).map(|_| random_unit(c.field(), &mut rng)).collect();
                let t = coboundary_twist(&c, &f).map_err(fail)?;
                Ok(twist_signature(&t)? == *base.as_ref().map_err(Clone::clone)?)
            })
            .collect();
        s.eq(format!("{name}: 20 coboundary twists preserve ranks"), Source::Invariant, vec![true; 20], twisted);
        let criterion: Result<Vec<bool>, Failure> =
            (1..=4).map(|n| derivation_criterion(&c, n, 2, n as u64).map(|r| r.holds).map_err(fail)).collect();
        s.eq(format!("{name}: derivation criterion, n = 1..4"), Source::Invariant, vec![true; 4], criterion);
    }
    s.finish("P12", "structural invariants")
}
