//! The named property suites behind `pca check`, with the sample counts and
//! budgets used for acceptance.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basepca::{
    check_kit_laws, code_apply, k_law, kit, numeral, s_law, sample_law, sequences, tuple, CodePca, Pca,
};
use crate::coding::{e_n, nat, CantorScheme, CodingScheme, CompactScheme, Nat};
use crate::dialogue::{eval_tree, fn_to_tree, interrogate, random_tree, tree_to_fn};
use crate::error::Error;
use crate::k2::orig::{outside_b, random_b};
use crate::k2::strategy::{run_strategy, RandomStrategy};
use crate::k2::{compile_strategy, in_counterexample_b, make_k, make_k_prime_s_prime, K2Pca, Model, ModelTag};
use crate::morphisms::*;
use crate::oracle::{join, join_witness_element, make_bar, numeral_lift, program, tuple_k2p, OracleModel, ECHO, TWIN};
use crate::par::Exec;
use crate::partialfn::{Fuel, Outcome, PartialFn};
use crate::report::{CheckReport, Verdict};

/// Parameters of a suite run. `samples` overrides the suite's own count.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub samples: Option<usize>,
    pub seed: u64,
    pub fuel: u64,
    pub exec: Exec,
    /// The algebra for the axiom suites: `code`, `k2`, `k2p`, `k2orig`.
    pub model: String,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: None,
            seed: 1,
            fuel: 100_000,
            exec: Exec::default(),
            model: "k2".into(),
        }
    }
}

impl SuiteConfig {
    fn n(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "coding",
    "k-axiom",
    "s-axiom",
    "axioms",
    "kit",
    "strategy",
    "roundtrip",
    "rho",
    "join",
    "oracle",
    "b",
    "realizer",
    "decider",
    "preorder",
    "represents",
    "adjunction",
    "fclaim",
];

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<CheckReport, Error> {
    Ok(match name {
        "coding" => coding(),
        "k-axiom" => axiom(cfg, true)?,
        "s-axiom" => axiom(cfg, false)?,
        "axioms" => {
            let mut r = axiom(cfg, true)?;
            r.merge(axiom(cfg, false)?);
            r
        }
        "kit" => check_kit_laws(cfg.n(20), cfg.seed, cfg.fuel, cfg.exec),
        "strategy" => strategy(cfg),
        "roundtrip" => roundtrip(cfg),
        "rho" => rho(cfg),
        "join" => joins(cfg),
        "oracle" => twin_primes(cfg),
        "b" => counterexample_b(cfg),
        "realizer" => realizer(cfg),
        "decider" => decider(cfg),
        "preorder" => preorder(cfg),
        "represents" => represents(cfg),
        "adjunction" => adjunction(cfg),
        "fclaim" => fclaim(cfg),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

/// Exhaustive injectivity and round trip on sequences of length at most 4
/// over `0..=6`, and distinct `E_n` for `n ≤ 20`, in both codings.
pub fn coding() -> CheckReport {
    let mut report = CheckReport::new("coding");
    let alphabet: Vec<Nat> = (0..=6).map(nat).collect();
    let seqs = sequences(&alphabet, 4);
    let schemes: [Box<dyn CodingScheme>; 2] = [Box::new(CantorScheme::new()), Box::new(CompactScheme::new())];
    for s in &schemes {
        let mut seen: HashMap<Nat, &Vec<Nat>> = HashMap::new();
        for seq in &seqs {
            report.record(match s.encode(seq) {
                Err(e) => Verdict::Fail(format!("{}: {seq:?}: {e}", s.name())),
                Ok(code) => match seen.insert(code.clone(), seq) {
                    Some(prev) => Verdict::Fail(format!("{}: {prev:?} and {seq:?} share {code}", s.name())),
                    None if s.decode(&code).as_ref() != Some(seq) => {
                        Verdict::Fail(format!("{}: {seq:?} does not decode back", s.name()))
                    }
                    None => Verdict::Pass,
                },
            });
        }
        let mut es = HashMap::new();
        for n in 0..=20 {
            report.record(match e_n(s.as_ref(), n) {
                Err(e) => Verdict::Fail(format!("{}: E_{n}: {e}", s.name())),
                Ok(c) => match es.insert(c, n) {
                    Some(m) => Verdict::Fail(format!("{}: E_{m} = E_{n}", s.name())),
                    None => Verdict::Pass,
                },
            });
        }
    }
    report
}

fn axiom(cfg: &SuiteConfig, k: bool) -> Result<CheckReport, Error> {
    let (nk, ns) = (cfg.n(100), cfg.n(50));
    Ok(match cfg.model.as_str() {
        "code" => law(&CodePca, k, nk, ns, cfg),
        "b" => law(&K2Pca::b_subpca(), k, nk, ns, cfg),
        tag => law(&K2Pca::new(Model::for_tag(tag.parse()?)), k, nk, ns, cfg),
    })
}

fn law<P: Pca + Sync>(p: &P, k: bool, nk: usize, ns: usize, cfg: &SuiteConfig) -> CheckReport
where
    P::Elem: Send + Sync,
{
    let fuel = cfg.fuel;
    if k {
        sample_law(
            &format!("{}: axiom (k)", p.name()),
            nk,
            cfg.seed,
            cfg.exec,
            |rng| (p.sample(rng), p.sample(rng)),
            |(a, b)| k_law(p, a, b, fuel),
        )
    } else {
        sample_law(
            &format!("{}: axiom (s)", p.name()),
            ns,
            cfg.seed ^ 0x5eed,
            cfg.exec,
            |rng| (p.sample(rng), p.sample(rng), p.sample(rng)),
            |(a, b, c)| s_law(p, a, b, c, fuel),
        )
    }
}

/// Compiled strategies against direct execution: random strategies of
/// depth 4, ten argument pairs each, in `K2` and `K2^p`.
pub fn strategy(cfg: &SuiteConfig) -> CheckReport {
    let mut report = CheckReport::new("compiled strategies");
    for m in [Model::k2(), Model::k2p()] {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for i in 0..cfg.n(30) as u64 {
            let g = RandomStrategy {
                seed: cfg.seed.wrapping_mul(1000).wrapping_add(i),
                depth: 4,
                points: 4,
                results: m.result_pool(),
                partial: m.tag == ModelTag::K2P,
            };
            let compiled = compile_strategy(Arc::new(g.clone()), &m);
            for _ in 0..10 {
                let (a, b) = (m.sample_element(&mut rng), m.sample_element(&mut rng));
                let direct = Outcome::from_eval(run_strategy(&g, &a, &b, &mut Fuel::new(cfg.fuel)));
                let via = interrogate(&m.apply(&compiled, &a), &b, m.scheme.as_ref(), cfg.fuel).outcome;
                report.record(outcome_eq(&via, &direct, || format!("{}: strategy {i}", m.tag)));
            }
        }
    }
    report
}

/// Trees to functions and back: random trees of depth 3 over `{0,1,2}`,
/// twenty oracles each.
pub fn roundtrip(cfg: &SuiteConfig) -> CheckReport {
    let mut report = CheckReport::new("tree round trips");
    let s: Arc<dyn CodingScheme> = Arc::new(CantorScheme::new());
    let alphabet = [nat(0), nat(1), nat(2)];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.n(20) {
        let t = random_tree(&mut rng, 3, &alphabet, 6);
        let alpha = tree_to_fn(&t, s.clone());
        for _ in 0..20 {
            let entries: Vec<(u64, u64)> = (0..6).map(|p| (p, rng.gen_range(0..3))).collect();
            let beta = PartialFn::table_u64(&entries);
            let direct = eval_tree(&t, &beta, cfg.fuel).0;
            let via = interrogate(&alpha, &beta, s.as_ref(), cfg.fuel).outcome;
            report.record(outcome_eq(&via, &direct, || format!("tree {i}")));
        }
        let back = fn_to_tree(&alpha, s.as_ref(), 3, &alphabet, cfg.fuel);
        report.record(if back == t.restrict(&alphabet, 3) {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("tree {i} is not recovered"))
        });
    }
    report
}

fn outcome_eq(x: &Outcome, y: &Outcome, at: impl FnOnce() -> String) -> Verdict {
    if *x == Outcome::OutOfFuel || *y == Outcome::OutOfFuel {
        Verdict::Inconclusive
    } else if x == y {
        Verdict::Pass
    } else {
        Verdict::Fail(format!("{}: {x} vs {y}", at()))
    }
}

/// Pairs of sampled codes whose product is defined.
pub fn defined_pairs(n: usize, seed: u64, fuel: u64) -> Vec<(Nat, Nat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let (a, b) = (CodePca.sample(&mut rng), CodePca.sample(&mut rng));
        if code_apply(&a, &b, fuel).is_value() {
            out.push((a, b));
        }
    }
    out
}

/// `ρâb̂ = \widehat{ab}` on 20 points for both variants.
pub fn rho(cfg: &SuiteConfig) -> CheckReport {
    let pairs = defined_pairs(cfg.n(50), cfg.seed, cfg.fuel);
    let mut report = CheckReport::new("rho realizes the constant embedding");
    for tag in [ModelTag::K2, ModelTag::K2P] {
        let g = gamma_hat_morphism(tag, tuple_points(20));
        report.merge(check_realizer(&g, &rho_for(tag), &pairs, cfg.fuel));
    }
    report
}

/// Primality on `0..=100` as a table.
pub fn primes_to_100() -> PartialFn {
    let prime = |n: u64| n >= 2 && (2..n).all(|d| !n.is_multiple_of(d));
    let table: Vec<(u64, u64)> = (0..=100).map(|n| (n, prime(n) as u64)).collect();
    PartialFn::table_u64(&table)
}

/// Both join equations on 50 points per shape, undefined off shape, and
/// `ā γ1 γ2 = γ1 ⊔ γ2` in `K2^p` on 20 sampled table pairs.
pub fn joins(cfg: &SuiteConfig) -> CheckReport {
    let k = kit();
    let mut report = CheckReport::new("joins");
    let f = numeral_lift(&PartialFn::named_builtin("succ").expect("builtin"));
    let g = numeral_lift(&primes_to_100());
    let j = join(&f, &g);
    for x in 0..cfg.n(50) as u64 {
        let x = numeral(x);
        let left = tuple(&[k.top.clone(), x.clone()]).expect("codes");
        let right = tuple(&[k.bot.clone(), x.clone()]).expect("codes");
        report.record(outcome_eq(&j.eval(&left, cfg.fuel), &f.eval(&x, cfg.fuel), || {
            format!("[T, {x}]")
        }));
        report.record(outcome_eq(&j.eval(&right, cfg.fuel), &g.eval(&x, cfg.fuel), || {
            format!("[F, {x}]")
        }));
        report.record(outcome_eq(&j.eval(&x, cfg.fuel), &Outcome::Undefined, || {
            format!("off shape at {x}")
        }));
    }
    let model = tuple_k2p();
    let bar = make_bar(&join_witness_element());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let table = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..8);
        PartialFn::table((0..n).map(|_| (numeral(rng.gen_range(0..10)), numeral(rng.gen_range(0..20)))))
    };
    for i in 0..20 {
        let (a, b) = (table(&mut rng), table(&mut rng));
        let lhs = model.apply(&model.apply(&bar, &a), &b);
        let rhs = join(&a, &b);
        for x in 0..10 {
            for t in [&k.top, &k.bot] {
                let y = tuple(&[t.clone(), numeral(x)]).expect("codes");
                report.record(outcome_eq(&lhs.eval(&y, cfg.fuel), &rhs.eval(&y, cfg.fuel), || {
                    format!("pair {i} at {y}")
                }));
            }
        }
    }
    report
}

/// The two-query twin-prime program relative to the primality table: the
/// answer for every `b < 50`, two oracle calls each, traces replayed.
pub fn twin_primes(cfg: &SuiteConfig) -> CheckReport {
    let mut report = CheckReport::new("oracle application");
    let m = OracleModel::new(numeral_lift(&primes_to_100()));
    let twin = program(TWIN);
    let prime = |n: u64| n >= 2 && (2..n).all(|d| !n.is_multiple_of(d));
    for b in 0..cfg.n(50) as u64 {
        let t = m.apply(&twin, &numeral(b), cfg.fuel);
        let expect = Outcome::Value(numeral((prime(b) && prime(b + 2)) as u64));
        let v = outcome_eq(&t.outcome, &expect, || format!("b = {b}")).and(|| {
            if t.steps.len() == 2 && m.validate_trace(&twin, &t, cfg.fuel) {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("b = {b}: trace does not replay"))
            }
        });
        report.record(v);
    }
    report
}

/// `k′, s′ ∈ B`, the axioms on `B`, closure of `B` under application, and
/// the computable `g ∉ B`.
pub fn counterexample_b(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.n(30);
    let m = Model::k2orig();
    let (kp, sp) = make_k_prime_s_prime(&m);
    let mut report = in_counterexample_b(&m, &kp, 20, cfg.fuel);
    report.property = "counterexample B".into();
    report.merge(in_counterexample_b(&m, &sp, 20, cfg.fuel));
    let b = K2Pca::b_subpca();
    report.merge(law(&b, true, n, n, cfg));
    report.merge(law(&b, false, n, n, cfg));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..n {
        let (x, y) = (random_b(&m, &mut rng), random_b(&m, &mut rng));
        report.merge(in_counterexample_b(&m, &m.apply(&x, &y), 20, cfg.fuel));
    }
    let outside = in_counterexample_b(&m, &outside_b(&m), 20, cfg.fuel);
    report.record(if outside.failures.is_empty() {
        Verdict::Fail("g passes the membership test".into())
    } else {
        Verdict::Pass
    });
    report
}

fn expect_failures(r: CheckReport, what: &str) -> Verdict {
    if r.failures.is_empty() {
        Verdict::Fail(format!("{what} was not refuted"))
    } else {
        Verdict::Pass
    }
}

/// `ρ` in `K2`, `λxy.xy` for the identity, and `k` refuted as a realizer.
pub fn realizer(cfg: &SuiteConfig) -> CheckReport {
    let pairs = defined_pairs(cfg.n(20), cfg.seed, cfg.fuel);
    let g = gamma_hat_morphism(ModelTag::K2, tuple_points(8));
    let mut report = check_realizer(&g, &rho_for(ModelTag::K2), &pairs, cfg.fuel);
    report.property = "realizers".into();
    report.merge(check_realizer(
        &identity_morphism(),
        &program("\\x y. x y"),
        &pairs,
        cfg.fuel,
    ));
    let k = make_k(&g.target.model);
    report.record(expect_failures(
        check_realizer(&g, &k, &pairs[..pairs.len().min(5)], cfg.fuel),
        "k as a realizer",
    ));
    report
}

/// `d` reads the constant in both models; swapped Booleans are refuted.
pub fn decider(cfg: &SuiteConfig) -> CheckReport {
    let k = kit();
    let mut report = CheckReport::new("deciders");
    for tag in [ModelTag::K2, ModelTag::K2P] {
        let g = gamma_hat_morphism(tag, tuple_points(8));
        let d = read_point(&g.target.model);
        let (top, bot) = (gamma_hat(&k.top), gamma_hat(&k.bot));
        report.merge(check_decider(&g, &d, &top, &bot, cfg.fuel));
        report.record(expect_failures(
            check_decider(&g, &d, &bot, &top, cfg.fuel),
            "swapped Booleans",
        ));
    }
    report
}

/// Reflexivity of the identity, `εγ ≅ id` in both directions, and a
/// constant witness refuted.
pub fn preorder(cfg: &SuiteConfig) -> CheckReport {
    let dom: Vec<Nat> = defined_pairs(cfg.n(20), cfg.seed, cfg.fuel)
        .into_iter()
        .map(|p| p.0)
        .collect();
    let id = identity_morphism();
    let mut report = check_preorder(&id, &id, &kit().i, &dom, cfg.fuel);
    report.property = "preorder".into();
    let eg = epsilon_gamma_morphism(vec![numeral(0), kit().k.clone(), program("SUCC")]);
    let (down, up) = epsilon_gamma_witnesses(&numeral(0));
    report.merge(check_preorder(&eg, &id, &down, &dom, cfg.fuel));
    report.merge(check_preorder(&id, &eg, &up, &dom, cfg.fuel));
    report.record(expect_failures(
        check_preorder(&id, &id, &program("\\x. #0"), &dom, cfg.fuel),
        "a constant witness",
    ));
    report
}

/// `succ` on numerals represented in both models, a partial table in
/// `K2^p`, and a wrong `r_f` refuted.
pub fn represents(cfg: &SuiteConfig) -> CheckReport {
    let points: Vec<Nat> = (0..cfg.n(10) as u64).map(numeral).collect();
    let succ_code = program("SUCC");
    let succ = PartialFn::from_fn("succ#", move |x, fuel| {
        crate::basepca::code_apply_in(&succ_code, x, fuel)
    });
    let mut report = CheckReport::new("representability");
    for tag in [ModelTag::K2, ModelTag::K2P] {
        let g = gamma_hat_morphism(tag, tuple_points(6));
        report.merge(check_represents(
            &g,
            &represent_fn(&g.target.model, &succ),
            &succ,
            &points,
            cfg.fuel,
        ));
        let wrong = represent_fn(&g.target.model, &PartialFn::from_fn("id", |x, _| Ok(x.clone())));
        report.record(expect_failures(
            check_represents(&g, &wrong, &succ, &points, cfg.fuel),
            "a wrong r_f",
        ));
    }
    let half = PartialFn::table((0..10).step_by(2).map(|n| (numeral(n), numeral(n / 2))));
    let g = gamma_hat_morphism(ModelTag::K2P, tuple_points(6));
    report.merge(check_represents(
        &g,
        &represent_fn(&g.target.model, &half),
        &half,
        &points,
        cfg.fuel,
    ));
    report
}

/// `b̄â = ā` on sampled `(a, x)`, the converse refuted on the sample, and
/// `a ∈ ε′(ā)`.
pub fn adjunction(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.n(30);
    let mut report = epsilon_prime_adjunction(n, cfg.seed, cfg.fuel);
    let pts = tuple_points(6);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xeca);
    for _ in 0..n {
        let a = CodePca.sample(&mut rng);
        let window = epsilon_prime_window(&make_bar(&a), std::slice::from_ref(&a), &pts, cfg.fuel);
        report.record(if window == [a.clone()] {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("{a} is not in its own window"))
        });
    }
    report
}

/// Asks the oracle at the point, then at the first answer, and returns the
/// second answer.
pub const TWO_QUERIES: &str =
    "\\t. IFZ (PRED (LEN t)) (\\u. ASK (HEAD t)) (\\u. IFZ (PRED (PRED (LEN t))) (\\v. ASK (NTH1 t)) (\\v. RET (NTH2 t)) #0) #0";

/// The chain `F a b (s y) ≃ F a b v` for interrogations of length 0, 1
/// and 2, the result step, and the recursion equation of `F`.
pub fn fclaim(cfg: &SuiteConfig) -> CheckReport {
    let mut report = CheckReport::new("F realizer");
    let d = DeltaData::identity();
    let f = match build_f_realizer(&d) {
        Ok(f) => f,
        Err(e) => {
            report.record(Verdict::Fail(format!("F: {e}")));
            return report;
        }
    };
    let succ = program("SUCC");
    let cases = [
        (program("\\t. RET (SUCC (HEAD t))"), kit().i.clone(), numeral(1), 0),
        (program(ECHO), succ.clone(), numeral(2), 1),
        (program(TWO_QUERIES), succ.clone(), numeral(3), 2),
    ];
    let mut samples = Vec::new();
    for (a, b, y, len) in &cases {
        let r = claim_check(&d, &f, a, b, y, 3, cfg.fuel);
        let want = format!("result after {len} queries");
        let seen = r.notes.contains(&want);
        report.merge(r);
        report.record(if seen {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("expected {want}"))
        });
        for v in [vec![y.clone()], vec![y.clone(), numeral(7)]] {
            samples.push((a.clone(), b.clone(), tuple(&v).expect("codes")));
        }
    }
    report.merge(check_f_recursion(&d, &f, &samples, cfg.fuel));
    report
}
