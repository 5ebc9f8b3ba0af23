use braidrack::braiding::{
    aff73_group_model, coboundary_twist, cocycle_preset, constant_cocycle, group_model_cocycle, t_group_model,
    t_monomial_generators, t_new_cocycle, transposition_sign, Cocycle,
};
use braidrack::exact::{Field, Scalar};
use braidrack::presets::{class_model, preset};
use braidrack::{BraidingError, Perm, PermGroup};
use proptest::prelude::*;

fn sign(p: &Perm) -> i64 {
    let transpositions: usize = p.cycle_type().iter().map(|l| l - 1).sum();
    if transpositions % 2 == 0 { 1 } else { -1 }
}

#[test]
fn constant_cocycles() {
    let f = Field::Rationals;
    for name in ["D3", "T", "A", "B", "C", "Aff(7,3)"] {
        let r = preset(name).unwrap();
        for q in [-1, 1, 2] {
            let c = constant_cocycle(&r, &f, &f.from_int(q)).unwrap();
            assert!(c.yang_baxter_holds());
        }
    }
    let r = preset("D3").unwrap();
    assert_eq!(constant_cocycle(&r, &f, &f.zero()), Err(BraidingError::ZeroScalar));
}

#[test]
fn new_example_tables_validate() {
    let t = t_new_cocycle().unwrap();
    assert!(t.yang_baxter_holds());
    let field = t.field().clone();
    let q = field.generator().unwrap();
    assert_eq!(*t.q(1, 2), field.neg(&q));
    assert_eq!(*t.q(3, 3), q);
    let d = cocycle_preset("d3char2", None).unwrap();
    assert_eq!(d.field().characteristic(), 2);
    assert!(d.yang_baxter_holds());
}

#[test]
fn json_round_trip() {
    let c = t_new_cocycle().unwrap();
    let text = c.to_json();
    assert_eq!(Cocycle::from_json(&text).unwrap(), c);
    let by_name = r#"{"rack":"D3","field":"QQ","values":[["-1","-1","-1"],["-1","-1","-1"],["-1","-1","-1"]]}"#;
    let c = Cocycle::from_json(by_name).unwrap();
    assert_eq!(c.size(), 3);
    let with_q = r#"{"rack":"D3","field":"Fp(2)[t]/(t^2+t+1)","values":[["q","q","q"],["q","q","q"],["q","q","q"]]}"#;
    assert_eq!(Cocycle::from_json(with_q).unwrap(), cocycle_preset("d3char2", None).unwrap());
}

#[test]
fn t_monomial_group_relations() {
    let gens = t_monomial_generators();
    let x1 = &gens[0];
    assert_eq!(x1.order(), 6);
    let x2x4 = gens[1].compose(&gens[3]);
    // (x2 x4)^2 = x1^4 holds in the model as it does in the enveloping group
    let sq = x2x4.compose(&x2x4);
    let x1_4 = x1.compose(x1).compose(x1).compose(x1);
    assert_eq!(sq, x1_4);
    // x2 x4 = x1^5 here, so rho(x1) = -1 forces rho(x2 x4) = -1
    let x1_5 = x1_4.compose(x1);
    assert_eq!(x2x4, x1_5);
    let g = PermGroup::generate(&gens, 1_000_000).unwrap();
    assert_eq!(g.order(), 24);
}

#[test]
fn t_group_models() {
    let f = Field::Rationals;
    let m = t_group_model(&f, &f.from_int(-1), &f.from_int(-1)).unwrap();
    assert!(m.cocycle.yang_baxter_holds());
    assert_eq!(m.cocycle.rack(), &preset("T").unwrap());
    assert!(t_group_model(&f, &f.from_int(-1), &f.from_int(1)).is_err());
}

#[test]
fn four_cycle_model() {
    let model = class_model("B").unwrap();
    let f = Field::Rationals;
    let g = &model.labels[0];
    let c = cocycle_preset("group(S4,(1234),-1)", None).unwrap();
    assert_eq!(c.rack(), &preset("B").unwrap());
    assert_eq!(*c.q(0, 0), f.from_int(-1));
    let x6 = &model.labels[5];
    assert_eq!(*x6, g.inverse());
    let bad = group_model_cocycle(
        &f,
        &model.generators,
        g,
        Some(&model.labels),
        &[(g.clone(), f.from_int(-1)), (x6.clone(), f.from_int(1))],
    );
    assert!(matches!(bad, Err(BraidingError::CharacterInconsistent(_))));
    let not_central = group_model_cocycle(
        &f,
        &model.generators,
        g,
        None,
        &[(Perm::parse_cycles(4, "(1 2)").unwrap(), f.from_int(1))],
    );
    assert!(matches!(not_central, Err(BraidingError::NotInCentralizer(_))));
}

#[test]
fn transposition_models() {
    for name in ["A", "C"] {
        for sign in [1, -1] {
            let m = transposition_sign(name, sign).unwrap();
            assert_eq!(m.cocycle.rack(), &preset(name).unwrap());
            assert!(m.cocycle.yang_baxter_holds());
            assert!(m.cocycle.diagonal_is_constant());
        }
        // the sign choice -1 is the constant cocycle after rescaling by sgn(h_x)
        let m = transposition_sign(name, -1).unwrap();
        let f = Field::Rationals;
        let twist: Vec<Scalar> = m.coset_reps.iter().map(|h| f.from_int(sign(h))).collect();
        let twisted = coboundary_twist(&m.cocycle, &twist).unwrap();
        assert_eq!(twisted, constant_cocycle(&preset(name).unwrap(), &f, &f.from_int(-1)).unwrap());
    }
}

#[test]
fn affine_model_twists_to_constant() {
    let f = Field::Rationals;
    let m = aff73_group_model(&f, &f.from_int(-1)).unwrap();
    assert_eq!(m.cocycle.rack(), &preset("Aff(7,3)").unwrap());
    let twist: Vec<Scalar> = m.rep_lengths.iter().map(|&l| f.from_int(if l % 2 == 0 { 1 } else { -1 })).collect();
    let twisted = coboundary_twist(&m.cocycle, &twist).unwrap();
    let constant = constant_cocycle(m.cocycle.rack(), &f, &f.from_int(-1)).unwrap();
    assert_eq!(twisted, constant);
}

proptest! {
    #[test]
    fn twists_preserve_the_cocycle_condition(signs in prop::collection::vec(prop::bool::ANY, 4), scale in 1i64..5) {
        let f = Field::Rationals;
        let c = constant_cocycle(&preset("T").unwrap(), &f, &f.from_int(-1)).unwrap();
        let fx: Vec<Scalar> = signs.iter().map(|&s| f.from_int(if s { scale } else { -1 })).collect();
        let t = coboundary_twist(&c, &fx).unwrap();
        prop_assert!(t.yang_baxter_holds());
        let back: Vec<Scalar> = fx.iter().map(|x| f.inv(x).unwrap()).collect();
        prop_assert_eq!(coboundary_twist(&t, &back).unwrap(), c);
    }
}
