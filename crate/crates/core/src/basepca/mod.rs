//! The base combinatory algebra: coded combinator terms under call-by-value
//! reduction, the kit built from it, and generic law checks for anything
//! that implements [`Pca`].

pub mod engine;
pub mod kit;
pub mod lambda;
pub mod term;

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coding::{CodingScheme, Nat};
use crate::error::Error;
use crate::par::Exec;
use crate::partialfn::{Eval, Fuel, Halt, Outcome};
use crate::report::{CheckReport, Verdict};

pub use kit::{compile_program, derived_kit, kit, numeral, tuple, untuple, Kit};
pub use lambda::{bracket_abstract, parse};
pub use term::{Prim, Term, Value};

/// `a · b` on codes. Non-codes, and codes whose application gets stuck, are
/// undefined.
pub fn code_apply_in(a: &Nat, b: &Nat, fuel: &mut Fuel) -> Eval {
    let ta = Term::from_code(a).ok_or(Halt::Undefined)?;
    let tb = Term::from_code(b).ok_or(Halt::Undefined)?;
    let v = engine::eval_term(&Term::app(ta, tb), fuel)?;
    Ok(v.to_code())
}

pub fn code_apply(a: &Nat, b: &Nat, fuel: u64) -> Outcome {
    Outcome::from_eval(code_apply_in(a, b, &mut Fuel::new(fuel)))
}

/// `f a1 … an`, left to right, on one budget.
pub fn code_apply_all(f: &Nat, args: &[Nat], fuel: &mut Fuel) -> Eval {
    let mut cur = f.clone();
    for a in args {
        cur = code_apply_in(&cur, a, fuel)?;
    }
    Ok(cur)
}

/// A partial combinatory algebra as seen by the law checkers.
pub trait Pca: Sync {
    type Elem: Clone + Send + Sync + fmt::Debug;

    fn name(&self) -> String;

    fn k(&self) -> Self::Elem;

    fn s(&self) -> Self::Elem;

    /// Application. Models whose application is decided pointwise always
    /// return a node here and report definedness through [`Pca::defined`].
    fn app(&self, a: &Self::Elem, b: &Self::Elem, fuel: &mut Fuel) -> Eval<Self::Elem>;

    fn defined(&self, e: &Eval<Self::Elem>, fuel: u64) -> Verdict;

    /// Outcome-equality, with undefined results compared as well.
    fn compare(&self, x: &Eval<Self::Elem>, y: &Eval<Self::Elem>, fuel: u64) -> Verdict;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

/// Compares two base outcomes.
pub fn compare_eval(x: &Eval, y: &Eval) -> Verdict {
    match (x, y) {
        (Err(Halt::OutOfFuel), _) | (_, Err(Halt::OutOfFuel)) => Verdict::Inconclusive,
        (Ok(a), Ok(b)) if a == b => Verdict::Pass,
        (Err(Halt::Undefined), Err(Halt::Undefined)) => Verdict::Pass,
        _ => Verdict::Fail(format!("{} vs {}", show(x), show(y))),
    }
}

fn show(x: &Eval) -> String {
    match x {
        Ok(c) => match Value::from_code(c) {
            Some(v) => v.to_string(),
            None => format!("code {c}"),
        },
        Err(h) => format!("{h:?}"),
    }
}

/// The combinator algebra on term codes.
#[derive(Clone, Copy, Debug, Default)]
pub struct CodePca;

impl CodePca {
    /// A random closed term of small depth, reduced to a value. Draws that
    /// get stuck or run long are discarded.
    pub fn sample_value(rng: &mut ChaCha8Rng) -> Value {
        loop {
            let t = random_term(rng, 3);
            if let Ok(v) = engine::eval_term(&t, &mut Fuel::new(200)) {
                return v;
            }
        }
    }
}

fn random_term(rng: &mut ChaCha8Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..12) {
            0..=8 => Term::Prim(Prim::ALL[rng.gen_range(0..9)]),
            _ => Term::num(rng.gen_range(0..4)),
        };
    }
    Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1))
}

impl Pca for CodePca {
    type Elem = Nat;

    fn name(&self) -> String {
        "code".into()
    }

    fn k(&self) -> Nat {
        Term::Prim(Prim::K).to_code()
    }

    fn s(&self) -> Nat {
        Term::Prim(Prim::S).to_code()
    }

    fn app(&self, a: &Nat, b: &Nat, fuel: &mut Fuel) -> Eval {
        code_apply_in(a, b, fuel)
    }

    fn defined(&self, e: &Eval, _fuel: u64) -> Verdict {
        match e {
            Ok(_) => Verdict::Pass,
            Err(Halt::OutOfFuel) => Verdict::Inconclusive,
            Err(Halt::Undefined) => Verdict::Fail("undefined".into()),
        }
    }

    fn compare(&self, x: &Eval, y: &Eval, _fuel: u64) -> Verdict {
        compare_eval(x, y)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Nat {
        CodePca::sample_value(rng).to_code()
    }
}

/// A deliberately broken algebra: `k` is replaced by `s`.
pub struct Mutated<P>(pub P);

impl<P: Pca> Pca for Mutated<P> {
    type Elem = P::Elem;

    fn name(&self) -> String {
        format!("{} (k := s)", self.0.name())
    }

    fn k(&self) -> P::Elem {
        self.0.s()
    }

    fn s(&self) -> P::Elem {
        self.0.s()
    }

    fn app(&self, a: &P::Elem, b: &P::Elem, fuel: &mut Fuel) -> Eval<P::Elem> {
        self.0.app(a, b, fuel)
    }

    fn defined(&self, e: &Eval<P::Elem>, fuel: u64) -> Verdict {
        self.0.defined(e, fuel)
    }

    fn compare(&self, x: &Eval<P::Elem>, y: &Eval<P::Elem>, fuel: u64) -> Verdict {
        self.0.compare(x, y, fuel)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> P::Elem {
        self.0.sample(rng)
    }
}

fn app2<P: Pca>(p: &P, f: &P::Elem, a: &P::Elem, fuel: u64) -> Eval<P::Elem> {
    p.app(f, a, &mut Fuel::new(fuel))
}

fn then_app<P: Pca>(p: &P, f: &Eval<P::Elem>, a: &P::Elem, fuel: u64) -> Eval<P::Elem> {
    match f {
        Ok(f) => app2(p, f, a, fuel),
        Err(h) => Err(*h),
    }
}

/// Axiom (k) on one draw: `k a ↓`, `k a b ↓`, `k a b = a`.
pub fn k_law<P: Pca>(p: &P, a: &P::Elem, b: &P::Elem, fuel: u64) -> Verdict {
    let ka = app2(p, &p.k(), a, fuel);
    let kab = then_app(p, &ka, b, fuel);
    p.defined(&ka, fuel)
        .and(|| p.defined(&kab, fuel))
        .and(|| p.compare(&kab, &Ok(a.clone()), fuel))
}

/// Axiom (s) on one draw: `s a ↓`, `s a b ↓`, `s a b c ≃ (a c)(b c)`.
pub fn s_law<P: Pca>(p: &P, a: &P::Elem, b: &P::Elem, c: &P::Elem, fuel: u64) -> Verdict {
    let sa = app2(p, &p.s(), a, fuel);
    let sab = then_app(p, &sa, b, fuel);
    let lhs = then_app(p, &sab, c, fuel);
    let ac = app2(p, a, c, fuel);
    let bc = app2(p, b, c, fuel);
    let rhs = match (&ac, &bc) {
        (Ok(x), Ok(y)) => app2(p, x, y, fuel),
        (Err(h), _) | (_, Err(h)) => Err(*h),
    };
    p.defined(&sa, fuel)
        .and(|| p.defined(&sab, fuel))
        .and(|| p.compare(&lhs, &rhs, fuel))
}

/// Runs `law` on `count` conclusive draws. Draws whose verdict is
/// inconclusive (both sides diverge past the budget) are redrawn, at most
/// `4 * count` extra times, and the redraws are noted in the report.
pub fn sample_law<T, D, L>(property: &str, count: usize, seed: u64, exec: Exec, mut draw: D, law: L) -> CheckReport
where
    T: Send + Sync,
    D: FnMut(&mut ChaCha8Rng) -> T,
    L: Fn(&T) -> Verdict + Sync + Send,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new(property);
    let mut redrawn = 0;
    let mut pending = count;
    while pending > 0 {
        let batch: Vec<T> = (0..pending).map(|_| draw(&mut rng)).collect();
        for v in exec.map(&batch, &law) {
            if v == Verdict::Inconclusive && redrawn < 4 * count {
                redrawn += 1;
                continue;
            }
            report.record(v);
            pending -= 1;
        }
    }
    if redrawn > 0 {
        report.note(format!("{redrawn} diverging draws redrawn"));
    }
    report
}

/// Axioms (k) and (s) on seeded random samples.
pub fn check_pca_axioms<P: Pca>(p: &P, samples: usize, seed: u64, fuel: u64, exec: Exec) -> CheckReport {
    let mut report = sample_law(
        &format!("{}: axiom (k)", p.name()),
        samples,
        seed,
        exec,
        |rng| (p.sample(rng), p.sample(rng)),
        |(a, b)| k_law(p, a, b, fuel),
    );
    let s = sample_law(
        &format!("{}: axiom (s)", p.name()),
        samples,
        seed ^ 0x5eed,
        exec,
        |rng| (p.sample(rng), p.sample(rng), p.sample(rng)),
        |(a, b, c)| s_law(p, a, b, c, fuel),
    );
    report.property = format!("{}: axioms (k), (s)", p.name());
    report.merge(s);
    report
}

/// Kit laws on CodePCA: pairing, cases, and the fixed-point equation.
pub fn check_kit_laws(samples: usize, seed: u64, fuel: u64, exec: Exec) -> CheckReport {
    let k = kit();
    let run = |f: &Nat, args: &[Nat]| code_apply_all(f, args, &mut Fuel::new(fuel));
    let mut report = sample_law(
        "kit: pairing and cases",
        samples,
        seed,
        exec,
        |rng| (CodePca.sample(rng), CodePca.sample(rng)),
        |(a, b)| {
            let p = run(&k.pair, &[a.clone(), b.clone()]);
            let first = p.clone().and_then(|p| run(&k.fst, &[p]));
            let second = p.and_then(|p| run(&k.snd, &[p]));
            let yes = run(&k.cases, &[k.top.clone(), a.clone(), b.clone()]);
            let no = run(&k.cases, &[k.bot.clone(), a.clone(), b.clone()]);
            compare_eval(&first, &Ok(a.clone()))
                .and(|| compare_eval(&second, &Ok(b.clone())))
                .and(|| compare_eval(&yes, &Ok(a.clone())))
                .and(|| compare_eval(&no, &Ok(b.clone())))
        },
    );
    let countdown = compile_program("\\g x. IFZ x (\\u. #0) (\\u. g (PRED x)) #0").expect("program");
    let fix = sample_law(
        "kit: z f x = f (z f) x",
        samples,
        seed ^ 0xf1,
        exec,
        |rng| {
            let f = if rng.gen_bool(0.5) {
                countdown.clone()
            } else {
                CodePca.sample(rng)
            };
            let x = if rng.gen_bool(0.5) {
                numeral(rng.gen_range(0..6))
            } else {
                CodePca.sample(rng)
            };
            (f, x)
        },
        |(f, x)| {
            let zf = run(&k.fix, std::slice::from_ref(f));
            let lhs = zf.clone().and_then(|zf| run(&zf, std::slice::from_ref(x)));
            let rhs = zf.clone().and_then(|zf| run(f, &[zf, x.clone()]));
            let defined = match zf {
                Ok(_) => Verdict::Pass,
                Err(h) => Verdict::Fail(format!("z f: {h:?}")),
            };
            defined.and(|| compare_eval(&lhs, &rhs))
        },
    );
    report.property = "kit laws".into();
    report.merge(fix);
    report
}

/// The kit's tuple coder as a coding scheme on element codes, with
/// `q = ⊥` and `r = ⊤`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TupleScheme;

impl CodingScheme for TupleScheme {
    fn name(&self) -> &str {
        "tuple"
    }

    fn encode(&self, items: &[Nat]) -> Result<Nat, Error> {
        tuple(items)
    }

    fn decode(&self, code: &Nat) -> Option<Vec<Nat>> {
        untuple(code)
    }

    fn q(&self) -> Nat {
        kit().bot.clone()
    }

    fn r(&self) -> Nat {
        kit().top.clone()
    }
}

/// How naturals of a coding scheme are carried by elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bridge {
    /// The scheme already codes elements.
    Direct,
    /// A natural `n` is carried by the numeral `#n`.
    Numeral,
}

impl Bridge {
    pub fn carry(self, n: &Nat) -> Nat {
        match self {
            Bridge::Direct => n.clone(),
            Bridge::Numeral => Term::Num(n.clone()).to_code(),
        }
    }
}

/// Translators `a`, `b` between a scheme and the tuple coder, and the
/// marker reader `c`.
#[derive(Clone, Debug)]
pub struct Compat {
    pub a: Nat,
    pub b: Nat,
    pub c: Nat,
    pub bridge: Bridge,
}

/// Known witnesses for the built-in schemes.
pub fn compatibility_witnesses(scheme: &dyn CodingScheme) -> Option<Compat> {
    match scheme.name() {
        "tuple" => {
            let i = kit().i.clone();
            Some(Compat {
                a: i.clone(),
                b: i.clone(),
                c: i,
                bridge: Bridge::Direct,
            })
        }
        "cantor" => Some(Compat {
            a: kit::lib_code("CDECODE"),
            b: kit::lib_code("CENCODE"),
            c: kit::lib_code("CMARK"),
            bridge: Bridge::Numeral,
        }),
        _ => None,
    }
}

/// Checks `a⟨u⃗⟩ = [u⃗]`, `b[u⃗] = ⟨u⃗⟩`, `c q = ⊥` and `c r = ⊤` over a
/// window of sequences.
pub fn check_compatible(scheme: &dyn CodingScheme, window: &[Vec<Nat>], fuel: u64, exec: Exec) -> CheckReport {
    let mut report = CheckReport::new(format!("compatibility of `{}`", scheme.name()));
    if scheme.q() == scheme.r() {
        report.record(Verdict::Fail("markers coincide".into()));
        return report;
    }
    let Some(w) = compatibility_witnesses(scheme) else {
        report.record(Verdict::Fail("no witnesses within the search budget".into()));
        return report;
    };
    let k = kit();
    let run = |f: &Nat, x: &Nat| code_apply_in(f, x, &mut Fuel::new(fuel));
    report.record(compare_eval(
        &run(&w.c, &w.bridge.carry(&scheme.q())),
        &Ok(k.bot.clone()),
    ));
    report.record(compare_eval(
        &run(&w.c, &w.bridge.carry(&scheme.r())),
        &Ok(k.top.clone()),
    ));
    let verdicts = exec.map(window, |u| {
        let coded = match scheme.encode(u) {
            Ok(c) => w.bridge.carry(&c),
            Err(e) => return Verdict::Fail(e.to_string()),
        };
        let carried: Vec<Nat> = u.iter().map(|x| w.bridge.carry(x)).collect();
        let tup = match tuple(&carried) {
            Ok(t) => t,
            Err(e) => return Verdict::Fail(e.to_string()),
        };
        compare_eval(&run(&w.a, &coded), &Ok(tup.clone())).and(|| compare_eval(&run(&w.b, &tup), &Ok(coded)))
    });
    report.record_all(verdicts);
    report
}

/// All sequences of length at most `len` over `alphabet`.
pub fn sequences(alphabet: &[Nat], len: usize) -> Vec<Vec<Nat>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for s in &layer {
            for a in alphabet {
                let mut t: Vec<Nat> = s.clone();
                t.push(a.clone());
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{nat, CantorScheme};

    #[test]
    fn worked_applications() {
        let k = kit();
        let k3 = code_apply(&k.k, &numeral(3), 100).value().unwrap().clone();
        assert_eq!(code_apply(&k3, &numeral(5), 100), Outcome::Value(numeral(3)));
        assert_eq!(code_apply(&k.i, &numeral(7), 100), Outcome::Value(numeral(7)));
        assert_eq!(code_apply(&k.fst, &numeral(3), 100), Outcome::Undefined);
        assert_eq!(code_apply(&nat(0), &numeral(3), 100), Outcome::Undefined);
    }

    #[test]
    fn axioms_hold_and_mutation_is_caught() {
        let good = check_pca_axioms(&CodePca, 40, 7, 100_000, Exec::Sequential);
        assert!(good.passed(), "{good}");
        let bad = check_pca_axioms(&Mutated(CodePca), 40, 7, 100_000, Exec::Sequential);
        assert!(!bad.failures.is_empty());
    }

    #[test]
    fn kit_laws() {
        let r = check_kit_laws(20, 3, 100_000, Exec::Sequential);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn tuple_scheme_is_self_compatible() {
        let alphabet = [numeral(0), numeral(1), kit().k.clone()];
        let r = check_compatible(&TupleScheme, &sequences(&alphabet, 3), 10_000, Exec::Sequential);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cantor_translators() {
        let window = sequences(&[nat(0), nat(1), nat(2)], 3);
        let r = check_compatible(&CantorScheme::new(), &window, 2_000_000, Exec::Parallel);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn tuple_scheme_tags() {
        let s = TupleScheme;
        let v = numeral(4);
        assert_eq!(
            s.untag(&s.tag_query(&v).unwrap()),
            crate::coding::Tagged::Query(v.clone())
        );
        assert_eq!(s.untag(&s.tag_result(&v).unwrap()), crate::coding::Tagged::Result(v));
        assert_eq!(s.untag(&s.neither()), crate::coding::Tagged::Neither);
    }
}
