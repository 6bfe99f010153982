//! Fuel-bounded, memoized partial functions `ℕ → ℕ`: the carrier of every
//! model in the crate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::coding::{nat, Nat};
use crate::error::Error;
use crate::k2::Model;

/// Three-valued evaluation result.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Value(Nat),
    Undefined,
    OutOfFuel,
}

impl Outcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            Outcome::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Outcome::Value(_))
    }

    pub fn from_eval(r: Eval) -> Outcome {
        match r {
            Ok(v) => Outcome::Value(v),
            Err(Halt::Undefined) => Outcome::Undefined,
            Err(Halt::OutOfFuel) => Outcome::OutOfFuel,
        }
    }

    pub fn into_eval(self) -> Eval {
        match self {
            Outcome::Value(v) => Ok(v),
            Outcome::Undefined => Err(Halt::Undefined),
            Outcome::OutOfFuel => Err(Halt::OutOfFuel),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(v) => write!(f, "result {v}"),
            Outcome::Undefined => f.write_str("undefined"),
            Outcome::OutOfFuel => f.write_str("out-of-fuel"),
        }
    }
}

/// Why an evaluation stopped without a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Halt {
    Undefined,
    OutOfFuel,
}

pub type Eval<T = Nat> = Result<T, Halt>;

/// A single global step budget shared by every nested simulation of one
/// evaluation call.
#[derive(Clone, Debug)]
pub struct Fuel {
    left: u64,
}

impl Fuel {
    pub fn new(budget: u64) -> Self {
        Fuel { left: budget }
    }

    pub fn left(&self) -> u64 {
        self.left
    }

    pub fn tick(&mut self) -> Eval<()> {
        self.spend(1)
    }

    pub fn spend(&mut self, cost: u64) -> Eval<()> {
        if self.left < cost {
            self.left = 0;
            Err(Halt::OutOfFuel)
        } else {
            self.left -= cost;
            Ok(())
        }
    }
}

/// A host-defined evaluation rule backing a [`PartialFn`].
pub trait Rule: Send + Sync {
    fn name(&self) -> String;

    fn apply(&self, x: &Nat, fuel: &mut Fuel) -> Eval;
}

pub enum Body {
    Table(BTreeMap<Nat, Nat>),
    Builtin(Arc<dyn Rule>),
    /// `x ↦ a·x` in the base combinator PCA.
    Program(Nat),
    App {
        model: Model,
        left: PartialFn,
        right: PartialFn,
    },
}

struct Node {
    body: Body,
    total: bool,
    // point -> (definite outcome, fuel cost of the cold evaluation)
    memo: Mutex<HashMap<Nat, (Outcome, u64)>>,
}

/// An element of `A^A` or `Ptl(A,A)`. Cheap to clone.
#[derive(Clone)]
pub struct PartialFn(Arc<Node>);

impl fmt::Debug for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl PartialFn {
    fn from_body(body: Body, total: bool) -> Self {
        PartialFn(Arc::new(Node {
            body,
            total,
            memo: Mutex::new(HashMap::new()),
        }))
    }

    pub fn table<I: IntoIterator<Item = (Nat, Nat)>>(entries: I) -> Self {
        Self::from_body(Body::Table(entries.into_iter().collect()), false)
    }

    pub fn table_u64(entries: &[(u64, u64)]) -> Self {
        Self::table(entries.iter().map(|&(x, y)| (nat(x), nat(y))))
    }

    pub fn empty() -> Self {
        Self::table(std::iter::empty())
    }

    pub fn builtin(rule: Arc<dyn Rule>) -> Self {
        Self::from_body(Body::Builtin(rule), false)
    }

    /// A rule whose element is total by construction.
    pub fn total_builtin(rule: Arc<dyn Rule>) -> Self {
        Self::from_body(Body::Builtin(rule), true)
    }

    pub fn from_fn<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Nat, &mut Fuel) -> Eval + Send + Sync + 'static,
    {
        Self::builtin(Arc::new(FnRule { name: name.into(), f }))
    }

    /// A closure whose element is total by construction.
    pub fn total_fn<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Nat, &mut Fuel) -> Eval + Send + Sync + 'static,
    {
        Self::total_builtin(Arc::new(FnRule { name: name.into(), f }))
    }

    pub fn program(code: Nat) -> Self {
        Self::from_body(Body::Program(code), false)
    }

    /// `n ↦ m` where `a·#n = #m`: a program read on naturals through
    /// numerals. Values that are not numerals count as undefined.
    pub fn numeric_program(code: Nat) -> Self {
        Self::from_fn(format!("prog#{}", code.bits()), move |x, fuel| {
            let v = crate::basepca::code_apply_in(&code, &crate::basepca::Term::Num(x.clone()).to_code(), fuel)?;
            crate::basepca::kit::numeral_value(&v).ok_or(Halt::Undefined)
        })
    }

    pub fn app(model: Model, left: PartialFn, right: PartialFn) -> Self {
        Self::from_body(Body::App { model, left, right }, false)
    }

    /// Named builtin rules understood by the oracle file format.
    pub fn named_builtin(spec: &str) -> Result<Self, Error> {
        let f = match spec {
            "succ" => Self::from_fn("succ", |x, _| Ok(x + 1u32)),
            "id" => Self::from_fn("id", |x, _| Ok(x.clone())),
            "primechar" => Self::from_fn("primechar", |x, _| Ok(nat(is_prime(x) as u64))),
            other => match other.strip_prefix("const:") {
                Some(n) => {
                    let c: Nat = n.parse().map_err(|_| Error::Parse(format!("bad constant `{n}`")))?;
                    Self::from_fn(format!("const:{c}"), move |_, _| Ok(c.clone()))
                }
                None => return Err(Error::UnknownName(other.to_string())),
            },
        };
        Ok(f)
    }

    pub fn body(&self) -> &Body {
        &self.0.body
    }

    pub fn totality_claim(&self) -> bool {
        self.0.total
    }

    pub fn ptr_eq(&self, other: &PartialFn) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn describe(&self) -> String {
        match &self.0.body {
            Body::Table(t) => format!("table[{}]", t.len()),
            Body::Builtin(r) => r.name(),
            Body::Program(c) => format!("prog#{}", c.bits()),
            Body::App { model, left, right } => {
                format!("({} {} {})", model.tag, left.describe(), right.describe())
            }
        }
    }

    /// Evaluates at `x` with a fresh budget.
    pub fn eval(&self, x: &Nat, fuel: u64) -> Outcome {
        let mut budget = Fuel::new(fuel);
        Outcome::from_eval(self.eval_in(x, &mut budget))
    }

    /// Evaluates at `x`, drawing from a shared budget. Every call costs one
    /// unit; memo hits charge the recorded cold cost so that outcomes never
    /// depend on the memo state.
    pub fn eval_in(&self, x: &Nat, fuel: &mut Fuel) -> Eval {
        if let Body::Table(t) = &self.0.body {
            fuel.tick()?;
            return t.get(x).cloned().ok_or(Halt::Undefined);
        }
        let cached = self.0.memo.lock().unwrap().get(x).cloned();
        if let Some((out, cost)) = cached {
            fuel.spend(cost)?;
            return out.into_eval();
        }
        let before = fuel.left();
        let result = fuel.tick().and_then(|_| self.eval_cold(x, fuel));
        if result != Err(Halt::OutOfFuel) {
            let cost = before - fuel.left();
            self.0
                .memo
                .lock()
                .unwrap()
                .insert(x.clone(), (Outcome::from_eval(result.clone()), cost));
        }
        result
    }

    /// Evaluation without consulting or updating the memo at this node.
    pub fn eval_cold(&self, x: &Nat, fuel: &mut Fuel) -> Eval {
        match &self.0.body {
            Body::Table(t) => t.get(x).cloned().ok_or(Halt::Undefined),
            Body::Builtin(rule) => rule.apply(x, fuel),
            Body::Program(code) => crate::basepca::code_apply_in(code, x, fuel),
            Body::App { model, left, right } => model.eval_app(left, right, x, fuel),
        }
    }

    pub fn clear_memo(&self) {
        self.0.memo.lock().unwrap().clear();
    }
}

struct FnRule<F> {
    name: String,
    f: F,
}

impl<F> Rule for FnRule<F>
where
    F: Fn(&Nat, &mut Fuel) -> Eval + Send + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn apply(&self, x: &Nat, fuel: &mut Fuel) -> Eval {
        (self.f)(x, fuel)
    }
}

fn is_prime(x: &Nat) -> bool {
    let Some(n) = crate::coding::small(x) else {
        return false;
    };
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A point where two functions were observed to differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub point: Nat,
    pub left: Outcome,
    pub right: Outcome,
}

/// Result of comparing two functions on a finite sample.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AgreeReport {
    pub differ: Vec<Disagreement>,
    pub inconclusive: Vec<Nat>,
}

impl AgreeReport {
    pub fn equal(&self) -> bool {
        self.differ.is_empty() && self.inconclusive.is_empty()
    }
}

/// Compares `f` and `g` pointwise. Out-of-fuel on either side is reported
/// as inconclusive, never as a disagreement.
pub fn agree_on<'a, I>(f: &PartialFn, g: &PartialFn, points: I, fuel: u64) -> AgreeReport
where
    I: IntoIterator<Item = &'a Nat>,
{
    let mut report = AgreeReport::default();
    for x in points {
        let a = f.eval(x, fuel);
        let b = g.eval(x, fuel);
        if a == Outcome::OutOfFuel || b == Outcome::OutOfFuel {
            report.inconclusive.push(x.clone());
        } else if a != b {
            report.differ.push(Disagreement {
                point: x.clone(),
                left: a,
                right: b,
            });
        }
    }
    report
}

/// `g(x) = f(x)` where `f` is defined within the budget, `default`
/// where `f` is definitely undefined.
pub fn extend_total(f: &PartialFn, default: Nat) -> PartialFn {
    let inner = f.clone();
    let name = format!("total({}, {default})", inner.describe());
    PartialFn::total_builtin(Arc::new(FnRule {
        name,
        f: move |x: &Nat, fuel: &mut Fuel| match inner.eval_in(x, fuel) {
            Err(Halt::Undefined) => Ok(default.clone()),
            other => other,
        },
    }))
}

/// Parses the oracle file format: `x y` table lines, `@builtin <name>`,
/// `@prog <term>` and `#` comments. Table lines and a directive may not be
/// mixed; a table may be empty.
pub fn parse_oracle(text: &str) -> Result<PartialFn, Error> {
    let mut entries = BTreeMap::new();
    let mut directive: Option<PartialFn> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::OracleFile { line: lineno, msg };
        if let Some(rest) = line.strip_prefix("@builtin ") {
            directive = Some(PartialFn::named_builtin(rest.trim()).map_err(|e| err(e.to_string()))?);
        } else if let Some(rest) = line.strip_prefix("@prog ") {
            let code = crate::basepca::compile_program(rest).map_err(|e| err(e.to_string()))?;
            directive = Some(PartialFn::numeric_program(code));
        } else {
            let mut parts = line.split(' ');
            let (Some(x), Some(y), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(format!("expected `x y`, got `{line}`")));
            };
            let x: Nat = x.parse().map_err(|_| err(format!("bad natural `{x}`")))?;
            let y: Nat = y.parse().map_err(|_| err(format!("bad natural `{y}`")))?;
            if entries.insert(x.clone(), y).is_some() {
                return Err(err(format!("duplicate entry for {x}")));
            }
        }
        if directive.is_some() && !entries.is_empty() {
            return Err(err("table entries mixed with a directive".into()));
        }
    }
    Ok(directive.unwrap_or_else(|| PartialFn::table(entries)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_builtin() {
        let t = PartialFn::table_u64(&[(3, 7)]);
        assert_eq!(t.eval(&nat(3), 10), Outcome::Value(nat(7)));
        assert_eq!(t.eval(&nat(4), 10), Outcome::Undefined);
        let succ = PartialFn::named_builtin("succ").unwrap();
        assert_eq!(succ.eval(&nat(41), 1), Outcome::Value(nat(42)));
    }

    #[test]
    fn agreement() {
        let t = PartialFn::table_u64(&[(0, 1)]);
        let succ = PartialFn::named_builtin("succ").unwrap();
        assert!(agree_on(&t, &succ, &[nat(0)], 10).equal());
        let r = agree_on(&t, &succ, &[nat(0), nat(1)], 10);
        assert_eq!(
            r.differ,
            vec![Disagreement {
                point: nat(1),
                left: Outcome::Undefined,
                right: Outcome::Value(nat(2)),
            }]
        );
        assert!(agree_on(&succ, &succ, &[nat(5), nat(9)], 10).equal());
    }

    #[test]
    fn out_of_fuel_is_inconclusive() {
        let spin = PartialFn::from_fn("spin", |_, fuel| loop {
            fuel.tick()?;
        });
        let r = agree_on(&spin, &spin, &[nat(0)], 10);
        assert!(r.differ.is_empty());
        assert_eq!(r.inconclusive, vec![nat(0)]);
    }

    #[test]
    fn totalization() {
        let f = extend_total(&PartialFn::table_u64(&[(0, 5)]), nat(9));
        assert_eq!(f.eval(&nat(0), 10), Outcome::Value(nat(5)));
        assert_eq!(f.eval(&nat(77), 10), Outcome::Value(nat(9)));
        assert!(f.totality_claim());
        let spin = PartialFn::from_fn("spin", |_, fuel| loop {
            fuel.tick()?;
        });
        assert_eq!(extend_total(&spin, nat(1)).eval(&nat(0), 50), Outcome::OutOfFuel);
    }

    #[test]
    fn memo_charges_cold_cost() {
        let slow = PartialFn::from_fn("slow", |x, fuel| {
            fuel.spend(20)?;
            Ok(x.clone())
        });
        let cold = slow.eval(&nat(3), 10);
        assert_eq!(cold, Outcome::OutOfFuel);
        assert_eq!(slow.eval(&nat(3), 100), Outcome::Value(nat(3)));
        // warm memo must not make a short budget succeed
        assert_eq!(slow.eval(&nat(3), 10), Outcome::OutOfFuel);
        assert_eq!(slow.eval(&nat(3), 21), Outcome::Value(nat(3)));
        assert_eq!(slow.eval(&nat(3), 20), Outcome::OutOfFuel);
    }

    #[test]
    fn oracle_file() {
        let f = parse_oracle("# squares\n0 0\n1 1\n2 4\n").unwrap();
        assert_eq!(f.eval(&nat(2), 5), Outcome::Value(nat(4)));
        let g = parse_oracle("@builtin const:12\n").unwrap();
        assert_eq!(g.eval(&nat(99), 5), Outcome::Value(nat(12)));
        assert!(parse_oracle("1 2 3\n").is_err());
        assert!(parse_oracle("1  2\n").is_err());
        assert!(parse_oracle("@builtin nope\n").is_err());
        let succ = parse_oracle("@prog SUCC\n").unwrap();
        assert_eq!(succ.eval(&nat(4), 100), Outcome::Value(nat(5)));
        let p = parse_oracle("@builtin primechar").unwrap();
        assert_eq!(p.eval(&nat(97), 5), Outcome::Value(nat(1)));
        assert_eq!(p.eval(&nat(91), 5), Outcome::Value(nat(0)));
    }
}
