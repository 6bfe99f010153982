use std::sync::Arc;

use pcalab::basepca::{check_pca_axioms, Pca};
use pcalab::coding::{e_n, nat, Nat};
use pcalab::dialogue::{tree_to_fn_pointed, SeqTree};
use pcalab::k2::orig::{outside_b, random_b};
use pcalab::k2::strategy::{run_family, run_strategy, FnFamily, FnStrategy, RandomStrategy, Side};
use pcalab::k2::*;
use pcalab::{Exec, Fuel, Outcome, PartialFn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FUEL: u64 = 100_000;

fn v(n: u64) -> Outcome {
    Outcome::Value(nat(n))
}

#[test]
fn k2_application_of_a_leaf() {
    let m = Model::k2();
    let alpha = tree_to_fn_pointed(&SeqTree::leaf(9), m.scheme.clone());
    let beta = PartialFn::named_builtin("succ").unwrap();
    assert_eq!(m.apply(&alpha, &beta).eval(&nat(4), FUEL), v(9));
}

#[test]
fn k2p_application_of_empty_tables() {
    let m = Model::k2p();
    let f = m.apply(&PartialFn::empty(), &PartialFn::empty());
    for x in 0..5 {
        assert_eq!(f.eval(&nat(x), FUEL), Outcome::Undefined);
    }
}

#[test]
fn k2orig_reads_sequentially() {
    let m = Model::k2orig();
    let s = m.scheme.clone();
    let (x, b0, y) = (nat(3), nat(8), 5u32);
    let (one, two) = (
        s.encode(std::slice::from_ref(&x)).unwrap(),
        s.encode(&[x.clone(), b0.clone()]).unwrap(),
    );
    let alpha = PartialFn::table([(one, nat(0)), (two, nat(y as u64 + 1))]);
    let beta = PartialFn::table([(nat(0), b0)]);
    let t = m.trace(&alpha, &beta, &x, FUEL);
    assert_eq!(t.outcome, v(5));
    assert_eq!(t.steps.len(), 1);
}

#[test]
fn compiled_constant_and_single_query() {
    let m = Model::k2();
    let seven = compile_strategy(Arc::new(FnStrategy(|_: &mut strategy::Ask<'_>| Ok(nat(7)))), &m);
    let ask3 = compile_strategy(
        Arc::new(FnStrategy(|ask: &mut strategy::Ask<'_>| ask(Side::First, &nat(3)))),
        &m,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let (a, b) = (m.sample_element(&mut rng), m.sample_element(&mut rng));
        let phi = |g: &PartialFn| pcalab::dialogue::interrogate(&m.apply(g, &a), &b, m.scheme.as_ref(), FUEL).outcome;
        assert_eq!(phi(&seven), v(7));
        assert_eq!(phi(&ask3), a.eval(&nat(3), FUEL));
    }
}

fn strategy_agreement(m: &Model, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..30 {
        let g = RandomStrategy {
            seed: seed * 1000 + i,
            depth: 4,
            points: 4,
            results: m.result_pool(),
            partial: m.tag == ModelTag::K2P,
        };
        let compiled = compile_strategy(Arc::new(g.clone()), m);
        for _ in 0..10 {
            let (a, b) = (m.sample_element(&mut rng), m.sample_element(&mut rng));
            let direct = Outcome::from_eval(run_strategy(&g, &a, &b, &mut Fuel::new(FUEL)));
            let via = pcalab::dialogue::interrogate(&m.apply(&compiled, &a), &b, m.scheme.as_ref(), FUEL).outcome;
            assert_eq!(via, direct, "strategy {i}");
        }
    }
}

#[test]
fn compiled_strategies_agree_with_direct_execution() {
    strategy_agreement(&Model::k2(), 1);
    strategy_agreement(&Model::k2p(), 2);
}

#[test]
fn compiled_families() {
    let m = Model::k2();
    let id = compile_strategy_family(
        Arc::new(FnFamily {
            name: "id".into(),
            f: |a: &Nat, _: &mut strategy::Ask<'_>| Ok(a.clone()),
        }),
        &m,
    );
    let second = compile_strategy_family(
        Arc::new(FnFamily {
            name: "second".into(),
            f: |a: &Nat, ask: &mut strategy::Ask<'_>| ask(Side::Second, a),
        }),
        &m,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let (a, b) = (m.sample_element(&mut rng), m.sample_element(&mut rng));
        let fam = RandomStrategy {
            seed: 77,
            depth: 3,
            points: 4,
            results: m.result_pool(),
            partial: false,
        };
        let compiled = compile_strategy_family(Arc::new(fam.clone()), &m);
        for x in 0..4 {
            let x = nat(x);
            assert_eq!(m.apply(&m.apply(&id, &a), &b).eval(&x, FUEL), Outcome::Value(x.clone()));
            assert_eq!(m.apply(&m.apply(&second, &a), &b).eval(&x, FUEL), b.eval(&x, FUEL));
            let direct = Outcome::from_eval(run_family(&fam, &x, &a, &b, &mut Fuel::new(FUEL)));
            assert_eq!(m.apply(&m.apply(&compiled, &a), &b).eval(&x, FUEL), direct);
        }
    }
}

#[test]
fn k_on_empty_table_is_undefined() {
    let m = Model::k2p();
    let k = make_k(&m);
    let f = m.apply(
        &m.apply(&k, &PartialFn::empty()),
        &PartialFn::named_builtin("succ").unwrap(),
    );
    assert_eq!(f.eval(&nat(2), FUEL), Outcome::Undefined);
}

#[test]
fn s_machine_cases() {
    let m = Model::k2();
    let s = m.scheme.as_ref();
    let a = nat(2);
    let start = s.encode(&[s.encode(std::slice::from_ref(&a)).unwrap()]).unwrap();
    let rr9 = s.tag_result(&s.tag_result(&nat(9)).unwrap()).unwrap();
    let qx = s.tag_query(&nat(6)).unwrap();
    let code = s.encode(&[a]).unwrap();
    let beta = PartialFn::empty();
    let double = PartialFn::table([(start.clone(), rr9)]);
    assert_eq!(
        s_machine(&m, &double, &beta, &code, FUEL),
        Outcome::Value(s.tag_result(&nat(9)).unwrap())
    );
    let query = PartialFn::table([(start, qx.clone())]);
    assert_eq!(s_machine(&m, &query, &beta, &code, FUEL), Outcome::Value(qx));
    let qq = s.tag_query(&s.q()).unwrap();
    assert_eq!(s_machine(&m, &query, &beta, &nat(0), FUEL), Outcome::Value(qq));
}

#[test]
fn skk_is_identity() {
    for m in [Model::k2(), Model::k2p()] {
        let (k, s) = (make_k(&m), make_s(&m));
        let skk = m.apply(&m.apply(&s, &k), &k);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let g = m.sample_element(&mut rng);
            let f = m.apply(&skk, &g);
            for x in [0, 1, 2, 5] {
                assert_eq!(f.eval(&nat(x), FUEL), g.eval(&nat(x), FUEL), "{}", g.describe());
            }
        }
    }
}

#[test]
fn s_with_empty_gamma_in_k2p() {
    let m = Model::k2p();
    let s = make_s(&m);
    let ask = |x| {
        compile_unary(
            Arc::new(strategy::RandomUnary {
                seed: x,
                depth: 2,
                points: 3,
                results: vec![nat(1)],
                partial: false,
            }),
            &m,
        )
    };
    let (a, b, g) = (ask(1), ask(2), PartialFn::empty());
    let lhs = m.apply(&m.apply(&m.apply(&s, &a), &b), &g);
    let rhs = m.apply(&m.apply(&a, &g), &m.apply(&b, &g));
    for x in 0..4 {
        assert_eq!(lhs.eval(&nat(x), FUEL), rhs.eval(&nat(x), FUEL));
    }
}

#[test]
fn sigma_gives_constants() {
    for m in [Model::k2(), Model::k2p()] {
        let sigma = make_sigma(&m);
        let succ = PartialFn::named_builtin("succ").unwrap();
        let four = PartialFn::named_builtin("const:4").unwrap();
        let f = m.apply(&m.apply(&sigma, &succ), &four);
        for x in 0..6 {
            assert_eq!(f.eval(&nat(x), FUEL), v(5));
        }
    }
    let m = Model::k2p();
    let f = m.apply(
        &m.apply(&make_sigma(&m), &PartialFn::empty()),
        &PartialFn::named_builtin("const:4").unwrap(),
    );
    assert_eq!(f.eval(&nat(0), FUEL), Outcome::Undefined);
}

#[test]
fn axioms_in_k2_and_k2p() {
    for m in [Model::k2(), Model::k2p()] {
        let r = check_pca_axioms(&K2Pca::new(m), 20, 3, FUEL, Exec::Parallel);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn axioms_in_k2orig() {
    let r = check_pca_axioms(&K2Pca::new(Model::k2orig()), 10, 3, FUEL, Exec::Parallel);
    assert!(r.passed(), "{r}");
}

#[test]
fn b_membership() {
    let m = Model::k2orig();
    let (kp, sp) = make_k_prime_s_prime(&m);
    let s = m.scheme.as_ref();
    assert_eq!(kp.eval(&e_n(s, 3).unwrap(), FUEL), v(3));
    assert_eq!(sp.eval(&e_n(s, 0).unwrap(), FUEL), v(0));
    assert!(in_counterexample_b(&m, &kp, 20, FUEL).passed());
    assert!(in_counterexample_b(&m, &sp, 20, FUEL).passed());
    assert!(!in_counterexample_b(&m, &PartialFn::named_builtin("succ").unwrap(), 20, FUEL).passed());
    assert!(!in_counterexample_b(&m, &outside_b(&m), 20, FUEL).passed());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let (a, b) = (random_b(&m, &mut rng), random_b(&m, &mut rng));
        assert!(in_counterexample_b(&m, &m.apply(&a, &b), 20, FUEL).passed());
    }
}

#[test]
fn b_axioms() {
    let r = check_pca_axioms(&K2Pca::b_subpca(), 10, 5, FUEL, Exec::Parallel);
    assert!(r.passed(), "{r}");
}

#[test]
fn k2p_apply_is_total() {
    let p = K2Pca::new(Model::k2p());
    let e = p.app(&PartialFn::empty(), &PartialFn::empty(), &mut Fuel::new(1));
    assert!(e.is_ok());
}
