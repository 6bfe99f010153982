//! Computation relative to an oracle over the combinator PCA: the
//! application `a ·^f b`, witnessed reductions, joins `f ⊔ g` and finite
//! surrogates for ideals.
//!
//! Tuples `[u0, …]`, `⊤` and `⊥` are those of the kit. A program answers a
//! history `[b, u0, …, uj−1]` with `[⊥, v]` to ask the oracle at `v`, or
//! with `[⊤, c]` to return `c`.

use std::sync::Arc;

use crate::basepca::kit::numeral_value;
use crate::basepca::{code_apply_in, compile_program, kit, tuple, untuple, Term, TupleScheme};
use crate::coding::Nat;
use crate::dialogue::{Step, Trace};
use crate::k2::{Model, ModelTag};
use crate::partialfn::{Eval, Fuel, Halt, Outcome, PartialFn};
use crate::report::{CheckReport, Verdict};

/// `A[f]`: the carrier of the base PCA with application relative to `f`.
#[derive(Clone, Debug)]
pub struct OracleModel {
    pub f: PartialFn,
}

impl OracleModel {
    pub fn new(f: PartialFn) -> Self {
        OracleModel { f }
    }

    /// `a ·^f b` on a shared budget, recording the oracle calls.
    pub fn apply_in(&self, a: &Nat, b: &Nat, fuel: &mut Fuel, steps: &mut Vec<Step>) -> Eval {
        let k = kit();
        let mut history = vec![b.clone()];
        loop {
            fuel.tick()?;
            let u = tuple(&history).map_err(|_| Halt::Undefined)?;
            let w = code_apply_in(a, &u, fuel)?;
            match untuple(&w).as_deref() {
                Some([t, v]) if *t == k.bot => {
                    let answer = self.f.eval_in(v, fuel)?;
                    steps.push(Step {
                        query: v.clone(),
                        answer: answer.clone(),
                    });
                    history.push(answer);
                }
                Some([t, c]) if *t == k.top => return Ok(c.clone()),
                _ => return Err(Halt::Undefined),
            }
        }
    }

    /// `a ·^f b` with its trace.
    pub fn apply(&self, a: &Nat, b: &Nat, fuel: u64) -> Trace {
        let mut steps = Vec::new();
        let out = self.apply_in(a, b, &mut Fuel::new(fuel), &mut steps);
        Trace {
            point: Some(b.clone()),
            steps,
            outcome: Outcome::from_eval(out),
        }
    }

    /// Replays a trace: every recorded answer is the oracle's value at the
    /// query, every query is what `a` asks at that history, and the outcome
    /// is what `a` does after the last answer.
    pub fn validate_trace(&self, a: &Nat, trace: &Trace, fuel: u64) -> bool {
        let k = kit();
        let Some(b) = &trace.point else {
            return false;
        };
        let mut history = vec![b.clone()];
        let ask = |h: &[Nat]| {
            let u = tuple(h).ok()?;
            let w = code_apply_in(a, &u, &mut Fuel::new(fuel)).ok()?;
            untuple(&w)
        };
        for step in &trace.steps {
            match ask(&history).as_deref() {
                Some([t, v]) if *t == k.bot && *v == step.query => {}
                _ => return false,
            }
            if self.f.eval(&step.query, fuel) != Outcome::Value(step.answer.clone()) {
                return false;
            }
            history.push(step.answer.clone());
        }
        match (&trace.outcome, ask(&history).as_deref()) {
            (Outcome::Value(c), Some([t, d])) => *t == k.top && c == d,
            (Outcome::Value(_), _) => false,
            _ => true,
        }
    }
}

/// `n ↦ f(n)` carried by numerals: `#n ↦ #f(n)`, undefined on other codes.
pub fn numeral_lift(f: &PartialFn) -> PartialFn {
    let f = f.clone();
    PartialFn::from_fn(format!("lift({})", f.describe()), move |x, fuel| {
        let n = numeral_value(x).ok_or(Halt::Undefined)?;
        let v = f.eval_in(&n, fuel)?;
        Ok(Term::Num(v).to_code())
    })
}

/// Checks `a ·^f x ≃ g(x)` on `points`: `a` witnesses `g ≤_T f` there.
pub fn check_represents_in_oracle(m: &OracleModel, a: &Nat, g: &PartialFn, points: &[Nat], fuel: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{} reduces to {}", g.describe(), m.f.describe()));
    for x in points {
        let lhs = m.apply(a, x, fuel).outcome;
        let rhs = g.eval(x, fuel);
        report.record(if lhs == Outcome::OutOfFuel || rhs == Outcome::OutOfFuel {
            Verdict::Inconclusive
        } else if lhs == rhs {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("at {x}: {lhs} vs {rhs}"))
        });
    }
    report
}

/// `(f ⊔ g)([⊤, x]) ≃ f(x)`, `(f ⊔ g)([⊥, x]) ≃ g(x)`, undefined elsewhere.
pub fn join(f: &PartialFn, g: &PartialFn) -> PartialFn {
    let (f, g) = (f.clone(), g.clone());
    let name = format!("{}+{}", f.describe(), g.describe());
    PartialFn::from_fn(name, move |y, fuel| {
        let k = kit();
        match untuple(y).as_deref() {
            Some([t, x]) if *t == k.top => f.eval_in(x, fuel),
            Some([t, x]) if *t == k.bot => g.eval_in(x, fuel),
            _ => Err(Halt::Undefined),
        }
    })
}

/// `f0 ⊔ (f1 ⊔ (… ⊔ fn))`; the empty join is the empty function.
pub fn join_all(fs: &[PartialFn]) -> PartialFn {
    match fs {
        [] => PartialFn::empty(),
        [f] => f.clone(),
        [f, rest @ ..] => join(f, &join_all(rest)),
    }
}

/// The identity: returns the point without asking.
pub const IDENTITY: &str = "\\t. RET (HEAD t)";

/// Asks the oracle at the point and returns the answer.
pub const ECHO: &str = "\\t. IFZ (PRED (LEN t)) (\\u. ASK (HEAD t)) (\\u. RET (NTH1 t)) #0";

/// Asks `[⊤, x]`, witnessing `f ≤_T f ⊔ g`.
pub const LEFT: &str =
    "\\t. IFZ (PRED (LEN t)) (\\u. ASK (PAIR #2 (PAIR TRUE (PAIR (HEAD t) #0)))) (\\u. RET (NTH1 t)) #0";

/// Asks `[⊥, x]`, witnessing `g ≤_T f ⊔ g`.
pub const RIGHT: &str =
    "\\t. IFZ (PRED (LEN t)) (\\u. ASK (PAIR #2 (PAIR FALSE (PAIR (HEAD t) #0)))) (\\u. RET (NTH1 t)) #0";

/// On a numeral `#b`: asks at `b` and at `b+2` and returns `#1` if both
/// answers are nonzero, else `#0`.
pub const TWIN: &str = "\\t. (\\n. IFZ (PRED n) (\\u. ASK (HEAD t)) (\\u. IFZ (PRED (PRED n)) (\\v. ASK (SUCC (SUCC (HEAD t)))) (\\v. RET (IFZ (NTH1 t) (\\w. #0) (\\w. IFZ (NTH2 t) (\\z. #0) (\\z. #1) #0) #0)) #0) #0) (LEN t)";

/// In `K2^p` over the tuple coding, `ā γ1 γ2 = γ1 ⊔ γ2`. A probe is
/// `[[y, v…], w…]` with `v` answers of `γ2` and `w` answers of `γ1`.
pub const JOIN_WITNESS: &str = "\\p. (\\z. (\\y. HEAD y (\\u. IFZ (PRED (LEN p)) (\\v. ASK (NTH1 y)) (\\v. RET (RET (NTH1 p))) #0) (\\u. IFZ (PRED (LEN z)) (\\v. RET (ASK (NTH1 y))) (\\v. RET (RET (NTH1 z))) #0) #0) (HEAD z)) (HEAD p)";

pub fn program(src: &str) -> Nat {
    compile_program(src).unwrap_or_else(|e| panic!("built-in program: {e}"))
}

pub fn join_witness_element() -> Nat {
    program(JOIN_WITNESS)
}

/// `ā`: the partial function `x ↦ a·x`.
pub fn make_bar(a: &Nat) -> PartialFn {
    PartialFn::program(a.clone())
}

/// `K2^p` over the kit's tuple coding, the model in which `ā` lives.
pub fn tuple_k2p() -> Model {
    Model::new(ModelTag::K2P, Arc::new(TupleScheme))
}

/// `f ⊆ g` for some `g ∈ gens`, observed on `points`.
pub fn downward_closure_member(gens: &[PartialFn], f: &PartialFn, points: &[Nat], fuel: u64) -> Verdict {
    let mut inconclusive = false;
    for g in gens {
        let mut contained = true;
        for x in points {
            match (f.eval(x, fuel), g.eval(x, fuel)) {
                (Outcome::OutOfFuel, _) | (_, Outcome::OutOfFuel) => inconclusive = true,
                (Outcome::Value(a), Outcome::Value(b)) if a == b => {}
                (Outcome::Value(_), _) => {
                    contained = false;
                    break;
                }
                _ => {}
            }
        }
        if contained && !inconclusive {
            return Verdict::Pass;
        }
    }
    if inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Fail(format!("{} is below no generator", f.describe()))
    }
}
