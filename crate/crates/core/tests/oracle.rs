use pcalab::basepca::{kit, numeral, tuple};
use pcalab::coding::nat;
use pcalab::oracle::*;
use pcalab::{Outcome, PartialFn, Verdict};

const FUEL: u64 = 100_000;

fn lift(name: &str) -> PartialFn {
    numeral_lift(&PartialFn::named_builtin(name).unwrap())
}

fn primes_to_100() -> PartialFn {
    let p = PartialFn::named_builtin("primechar").unwrap();
    let table: Vec<(u64, u64)> = (0..=100)
        .map(|n| (n, p.eval(&nat(n), FUEL).value().unwrap().try_into().unwrap()))
        .collect();
    PartialFn::table_u64(&table)
}

#[test]
fn identity_asks_nothing() {
    let m = OracleModel::new(PartialFn::empty());
    let id = program(IDENTITY);
    for b in 0..5 {
        let t = m.apply(&id, &numeral(b), FUEL);
        assert_eq!(t.outcome, Outcome::Value(numeral(b)));
        assert!(t.steps.is_empty());
    }
}

#[test]
fn echo_with_succ() {
    let m = OracleModel::new(lift("succ"));
    let echo = program(ECHO);
    let t = m.apply(&echo, &numeral(6), FUEL);
    assert_eq!(t.outcome, Outcome::Value(numeral(7)));
    assert_eq!(t.steps.len(), 1);
    assert!(m.validate_trace(&echo, &t, FUEL));
}

#[test]
fn oracle_miss_is_undefined() {
    let m = OracleModel::new(PartialFn::empty());
    assert_eq!(m.apply(&program(ECHO), &numeral(1), FUEL).outcome, Outcome::Undefined);
}

#[test]
fn twin_primes_with_two_queries() {
    let m = OracleModel::new(numeral_lift(&primes_to_100()));
    let twin = program(TWIN);
    let prime = |n: u64| (2..n).all(|d| !n.is_multiple_of(d)) && n >= 2;
    for b in 0..50 {
        let t = m.apply(&twin, &numeral(b), FUEL);
        let expect = numeral((prime(b) && prime(b + 2)) as u64);
        assert_eq!(t.outcome, Outcome::Value(expect), "b = {b}");
        assert_eq!(t.steps.len(), 2);
        assert!(m.validate_trace(&twin, &t, FUEL));
    }
}

#[test]
fn forged_trace_is_rejected() {
    let m = OracleModel::new(lift("succ"));
    let echo = program(ECHO);
    let mut t = m.apply(&echo, &numeral(2), FUEL);
    t.steps[0].answer = numeral(9);
    assert!(!m.validate_trace(&echo, &t, FUEL));
}

#[test]
fn reductions() {
    let points: Vec<_> = (0..8).map(numeral).collect();
    let f = numeral_lift(&primes_to_100());
    let m = OracleModel::new(f.clone());
    assert!(check_represents_in_oracle(&m, &program(ECHO), &f, &points, FUEL).passed());
    let succ_prog = program("\\t. RET (SUCC (HEAD t))");
    assert!(check_represents_in_oracle(&m, &succ_prog, &lift("succ"), &points, FUEL).passed());
    assert!(!check_represents_in_oracle(&m, &program(IDENTITY), &f, &points, FUEL).passed());
}

#[test]
fn join_equations_and_upper_bounds() {
    let k = kit();
    let (f, g) = (lift("succ"), numeral_lift(&primes_to_100()));
    let j = join(&f, &g);
    for x in 0..50 {
        let x = numeral(x);
        let left = tuple(&[k.top.clone(), x.clone()]).unwrap();
        let right = tuple(&[k.bot.clone(), x.clone()]).unwrap();
        assert_eq!(j.eval(&left, FUEL), f.eval(&x, FUEL));
        assert_eq!(j.eval(&right, FUEL), g.eval(&x, FUEL));
    }
    assert_eq!(j.eval(&numeral(3), FUEL), Outcome::Undefined);
    let m = OracleModel::new(j);
    let points: Vec<_> = (0..10).map(numeral).collect();
    assert!(check_represents_in_oracle(&m, &program(LEFT), &f, &points, FUEL).passed());
    assert!(check_represents_in_oracle(&m, &program(RIGHT), &g, &points, FUEL).passed());
}

#[test]
fn join_witness_in_k2p() {
    let k = kit();
    let model = tuple_k2p();
    let bar = make_bar(&join_witness_element());
    let g1 = PartialFn::table((0..6).map(|x| (numeral(x), numeral(x * 10))));
    let g2 = PartialFn::table((2..9).map(|x| (numeral(x), numeral(x + 100))));
    for (a, b) in [
        (g1.clone(), g2.clone()),
        (g1.clone(), g1.clone()),
        (PartialFn::empty(), PartialFn::empty()),
    ] {
        let lhs = model.apply(&model.apply(&bar, &a), &b);
        let rhs = join(&a, &b);
        for x in 0..10 {
            for t in [&k.top, &k.bot] {
                let y = tuple(&[t.clone(), numeral(x)]).unwrap();
                assert_eq!(lhs.eval(&y, FUEL), rhs.eval(&y, FUEL));
            }
        }
    }
}

#[test]
fn bar_elements() {
    let k = kit();
    let succ = make_bar(&pcalab::basepca::compile_program("SUCC").unwrap());
    assert_eq!(succ.eval(&numeral(4), FUEL), Outcome::Value(numeral(5)));
    let kb = make_bar(&k.k);
    assert!(kb.eval(&numeral(4), FUEL).is_value());
    let fst = make_bar(&k.fst);
    assert_eq!(fst.eval(&numeral(4), FUEL), Outcome::Undefined);
}

#[test]
fn downward_closure() {
    let points: Vec<_> = (0..6).map(nat).collect();
    let g = PartialFn::table_u64(&[(0, 1), (1, 2), (2, 3), (3, 4)]);
    let h = PartialFn::table_u64(&[(0, 9)]);
    let below = PartialFn::table_u64(&[(1, 2), (3, 4)]);
    let conflict = PartialFn::table_u64(&[(1, 5)]);
    assert_eq!(
        downward_closure_member(&[h.clone(), g.clone()], &below, &points, FUEL),
        Verdict::Pass
    );
    assert!(matches!(
        downward_closure_member(&[h, g], &conflict, &points, FUEL),
        Verdict::Fail(_)
    ));
}
