use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pcalab::basepca::kit::numeral;
use pcalab::basepca::{code_apply, kit, tuple, CodePca, Pca, TupleScheme};
use pcalab::coding::{CodingScheme, Nat};
use pcalab::k2::{make_k, make_sigma, ModelTag};
use pcalab::morphisms::*;
use pcalab::oracle::program;
use pcalab::{Outcome, PartialFn};

const FUEL: u64 = 200_000;

fn defined_pairs(n: usize, seed: u64) -> Vec<(Nat, Nat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let (a, b) = (CodePca.sample(&mut rng), CodePca.sample(&mut rng));
        if code_apply(&a, &b, 2000).is_value() {
            out.push((a, b));
        }
    }
    out
}

#[test]
fn gamma_hat_is_constant() {
    let a = numeral(7);
    let f = gamma_hat(&a);
    for x in 0..10u32 {
        assert_eq!(f.eval(&Nat::from(x), 10), Outcome::Value(a.clone()));
    }
    assert_ne!(
        gamma_hat(&numeral(1)).eval(&Nat::from(0u32), 10),
        f.eval(&Nat::from(0u32), 10)
    );
}

#[test]
fn rho_table_rows() {
    let s = TupleScheme;
    let rho = make_rho(RhoVariant::Total, Arc::new(TupleScheme));
    let rho_p = make_rho(RhoVariant::Partial, Arc::new(TupleScheme));
    let (q, r) = (s.q(), s.r());
    let x = numeral(3);
    let qq = tuple(&[q.clone(), q.clone()]).unwrap();
    let row1 = tuple(&[tuple(std::slice::from_ref(&x)).unwrap()]).unwrap();
    assert_eq!(
        rho.eval(&row1, FUEL),
        Outcome::Value(tuple(&[r.clone(), qq.clone()]).unwrap())
    );
    let xb = tuple(&[x.clone(), numeral(4)]).unwrap();
    let row2 = tuple(std::slice::from_ref(&xb)).unwrap();
    assert_eq!(rho.eval(&row2, FUEL), Outcome::Value(qq.clone()));
    let row3 = tuple(&[xb, program("SUCC")]).unwrap();
    let want = tuple(&[r.clone(), tuple(&[r.clone(), numeral(5)]).unwrap()]).unwrap();
    assert_eq!(rho.eval(&row3, FUEL), Outcome::Value(want.clone()));
    assert_eq!(rho_p.eval(&row3, FUEL), Outcome::Value(want));
    let off = tuple(&[numeral(9)]).unwrap();
    assert_eq!(rho.eval(&off, FUEL), Outcome::Value(tuple(&[r.clone(), r]).unwrap()));
    assert_eq!(rho_p.eval(&off, FUEL), Outcome::Undefined);
}

#[test]
fn rho_realizes_gamma_hat() {
    let pairs = defined_pairs(15, 3);
    for tag in [ModelTag::K2, ModelTag::K2P] {
        let g = gamma_hat_morphism(tag, tuple_points(8));
        let report = check_realizer(&g, &rho_for(tag), &pairs, FUEL);
        assert!(report.passed(), "{report}");
        assert_eq!(report.cases, 15);
    }
}

#[test]
fn k_is_not_a_realizer() {
    let g = gamma_hat_morphism(ModelTag::K2, tuple_points(5));
    let k = make_k(&g.target.model);
    let report = check_realizer(&g, &k, &defined_pairs(5, 4), FUEL);
    assert!(!report.failures.is_empty(), "{report}");
}

#[test]
fn identity_morphism_realizer() {
    let g = identity_morphism();
    let report = check_realizer(&g, &program("\\x y. x y"), &defined_pairs(30, 5), FUEL);
    assert!(report.passed(), "{report}");
}

#[test]
fn undefined_products_are_skipped() {
    let g = identity_morphism();
    let pairs = vec![(numeral(1), numeral(2)), (kit().i.clone(), numeral(2))];
    let report = check_realizer(&g, &program("\\x y. x y"), &pairs, FUEL);
    assert_eq!(report.skipped, 1);
    assert!(report.passed(), "{report}");
}

#[test]
fn deciders() {
    let k = kit();
    for tag in [ModelTag::K2, ModelTag::K2P] {
        let g = gamma_hat_morphism(tag, tuple_points(6));
        let d = read_point(&g.target.model);
        let (top, bot) = (gamma_hat(&k.top), gamma_hat(&k.bot));
        assert!(check_decider(&g, &d, &top, &bot, FUEL).passed());
        let swapped = check_decider(&g, &d, &bot, &top, FUEL);
        assert_eq!(swapped.failures.len(), 2, "{swapped}");
    }
}

#[test]
fn represents_succ_and_partial_functions() {
    let points: Vec<Nat> = (0..8).map(numeral).collect();
    let succ = PartialFn::from_fn("succ#", |x, fuel| {
        pcalab::basepca::code_apply_in(&program("SUCC"), x, fuel)
    });
    for tag in [ModelTag::K2, ModelTag::K2P] {
        let g = gamma_hat_morphism(tag, tuple_points(6));
        let rf = represent_fn(&g.target.model, &succ);
        let report = check_represents(&g, &rf, &succ, &points, FUEL);
        assert!(report.passed(), "{report}");
        let wrong = represent_fn(&g.target.model, &PartialFn::from_fn("id", |x, _| Ok(x.clone())));
        assert!(!check_represents(&g, &wrong, &succ, &points, FUEL).failures.is_empty());
    }
    let even = PartialFn::table((0..8).step_by(2).map(|n| (numeral(n), numeral(n / 2))));
    let g = gamma_hat_morphism(ModelTag::K2P, tuple_points(6));
    let report = check_represents(&g, &represent_fn(&g.target.model, &even), &even, &points, FUEL);
    assert!(report.passed(), "{report}");
    assert_eq!(report.skipped, 4);
}

#[test]
fn preorder() {
    let dom: Vec<Nat> = defined_pairs(10, 6).into_iter().map(|p| p.0).collect();
    let id = identity_morphism();
    assert!(check_preorder(&id, &id, &kit().i, &dom, FUEL).passed());
    assert!(!check_preorder(&id, &id, &program("\\x. #0"), &dom, FUEL)
        .failures
        .is_empty());

    let xis = vec![numeral(0), kit().k.clone(), program("SUCC")];
    let eg = epsilon_gamma_morphism(xis);
    let (down, up) = epsilon_gamma_witnesses(&numeral(0));
    assert!(check_preorder(&eg, &id, &down, &dom, FUEL).passed());
    assert!(check_preorder(&id, &eg, &up, &dom, FUEL).passed());
}

#[test]
fn retraction_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let dom: Vec<Nat> = (0..6).map(|_| CodePca.sample(&mut rng)).collect();
    let pts = tuple_points(5);
    for tag in [ModelTag::K2, ModelTag::K2P] {
        let model = tuple_model(tag);
        let alpha = PartialFn::from_fn("pair0", |x, _| {
            Ok(pcalab::basepca::tuple(&[x.clone(), numeral(0)]).unwrap())
        });
        let beta = model.apply(&make_sigma(&model), &alpha);
        assert_eq!(
            epsilon_retract_member(&model, &beta, &alpha, &dom, &pts, FUEL),
            pcalab::report::Verdict::Pass
        );
        let k = make_k(&model);
        assert!(matches!(
            epsilon_retract_member(&model, &k, &alpha, &dom, &pts, FUEL),
            pcalab::report::Verdict::Fail(_)
        ));
    }
}

#[test]
fn adjunction() {
    let report = epsilon_prime_adjunction(30, 11, FUEL);
    assert!(report.passed(), "{report}");
}

#[test]
fn constant_functions_and_the_epsilon_prime_window() {
    let a = numeral(7);
    let alpha = gamma_hat(&a);
    let pts = tuple_points(6);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let sampled: Vec<Nat> = (0..40).map(|_| CodePca.sample(&mut rng)).collect();
    assert!(epsilon_prime_window(&alpha, &sampled, &pts, FUEL).is_empty());
    let ka = code_apply(&kit().k, &a, 100).value().cloned().unwrap();
    assert_eq!(
        epsilon_prime_window(&alpha, std::slice::from_ref(&ka), &pts, FUEL),
        vec![ka]
    );
    let k = kit().k.clone();
    let ab = program(pcalab::morphisms::ADJOINT);
    assert_eq!(
        epsilon_prime_window(&pcalab::oracle::make_bar(&k), &[k.clone(), ab], &pts, FUEL),
        vec![k]
    );
}

const TWO_QUERIES: &str = "\\t. IFZ (PRED (LEN t)) (\\u. ASK (HEAD t)) (\\u. IFZ (PRED (PRED (LEN t))) (\\v. ASK (NTH1 t)) (\\v. RET (NTH2 t)) #0) #0";

#[test]
fn f_claim_two_queries() {
    let d = DeltaData::identity();
    let f = build_f_realizer(&d).unwrap();
    let a = program(TWO_QUERIES);
    let succ = program("SUCC");
    let report = claim_check(&d, &f, &a, &succ, &numeral(3), 3, FUEL);
    assert!(report.passed(), "{report}");
    assert_eq!(report.cases, 5);
    assert!(report.notes.iter().any(|n| n.contains("after 2 queries")));
    let out = code_apply(&f, &succ, FUEL);
    assert!(out.is_value());
}

#[test]
fn f_claim_immediate_result() {
    let d = DeltaData::identity();
    let f = build_f_realizer(&d).unwrap();
    let a = program("\\t. RET (SUCC (HEAD t))");
    let report = claim_check(&d, &f, &a, &kit().i, &numeral(1), 3, FUEL);
    assert!(report.passed(), "{report}");
    let s1 = tuple(&[numeral(1)]).unwrap();
    let fab = pcalab::basepca::code_apply_all(&f, &[a, kit().i.clone(), s1], &mut pcalab::Fuel::new(FUEL));
    assert_eq!(fab, Ok(numeral(2)));
}

#[test]
fn f_claim_diverges() {
    let d = DeltaData::identity();
    let f = build_f_realizer(&d).unwrap();
    let a = program("\\t. ASK #0");
    let report = claim_check(&d, &f, &a, &kit().i, &numeral(1), 3, 20_000);
    assert_eq!(report.inconclusive, 1, "{report}");
    assert!(report.failures.is_empty());
}

#[test]
fn f_recursion_equation() {
    let d = DeltaData::identity();
    let f = build_f_realizer(&d).unwrap();
    let progs = [
        program(TWO_QUERIES),
        program("\\t. RET (HEAD t)"),
        program(pcalab::oracle::ECHO),
    ];
    let mut samples = Vec::new();
    for a in &progs {
        for b in [program("SUCC"), kit().i.clone()] {
            for v in [vec![numeral(2)], vec![numeral(2), numeral(5)]] {
                samples.push((a.clone(), b.clone(), tuple(&v).unwrap()));
            }
        }
    }
    let report = check_f_recursion(&d, &f, &samples, FUEL);
    assert!(report.passed(), "{report}");
}
