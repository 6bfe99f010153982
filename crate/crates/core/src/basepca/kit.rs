//! The standard kit of the combinator PCA: Booleans and cases, pairing,
//! numerals, tuple coding with its manipulators, and the fixed point.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::coding::Nat;
use crate::error::Error;

use super::lambda::parse_with;
use super::term::{Prim, Term, Value};

/// Library definitions, compiled in order. Branches of `IFZ` and of a
/// Boolean are thunked (`\u. …` applied to `#0`) since application is
/// strict.
const LIBRARY: &[(&str, &str)] = &[
    ("I", "S K K"),
    ("TRUE", "K"),
    ("FALSE", "K I"),
    ("IF", "I"),
    ("LEN", "FST"),
    ("HEAD", "\\t. FST (SND t)"),
    ("NTH1", "\\t. FST (SND (SND t))"),
    ("NTH2", "\\t. FST (SND (SND (SND t)))"),
    ("SINGLE", "\\x. PAIR #1 (PAIR x #0)"),
    ("PREPEND", "\\x t. PAIR (SUCC (FST t)) (PAIR x (SND t))"),
    (
        "APPL",
        "FIX (\\f n l y. IFZ n (\\u. PAIR y #0) (\\u. PAIR (FST l) (f (PRED n) (SND l) y)) #0)",
    ),
    ("APPEND", "\\t y. PAIR (SUCC (FST t)) (APPL (FST t) (SND t) y)"),
    ("ADD", "FIX (\\f m n. IFZ n (\\u. m) (\\u. SUCC (f m (PRED n))) #0)"),
    ("SUB", "FIX (\\f m n. IFZ n (\\u. m) (\\u. f (PRED m) (PRED n)) #0)"),
    (
        "LEQ",
        "FIX (\\f m n. IFZ m (\\u. TRUE) (\\u. IFZ n (\\v. FALSE) (\\v. f (PRED m) (PRED n)) #0) #0)",
    ),
    ("TRI", "FIX (\\f s. IFZ s (\\u. #0) (\\u. ADD (f (PRED s)) s) #0)"),
    ("CONS", "\\a t. SUCC (ADD (TRI (ADD a t)) t)"),
    (
        "UNP",
        "FIX (\\f w r. LEQ (SUCC w) r (\\u. f (SUCC w) (SUB r (SUCC w))) (\\u. PAIR (SUB w r) r) #0)",
    ),
    ("UNPAIR", "\\z. UNP #0 z"),
    (
        "CDECODE",
        "FIX (\\f n. IFZ n (\\u. PAIR #0 #0) (\\u. (\\p. PREPEND (FST p) (f (SND p))) (UNPAIR (PRED n))) #0)",
    ),
    (
        "CENCL",
        "FIX (\\f n l. IFZ n (\\u. #0) (\\u. CONS (FST l) (f (PRED n) (SND l))) #0)",
    ),
    ("CENCODE", "\\t. CENCL (FST t) (SND t)"),
    ("CMARK", "\\n. IFZ n FALSE TRUE"),
    ("ASK", "\\v. PAIR #2 (PAIR FALSE (PAIR v #0))"),
    ("RET", "\\c. PAIR #2 (PAIR TRUE (PAIR c #0))"),
];

fn library() -> &'static HashMap<String, Term> {
    static LIB: OnceLock<HashMap<String, Term>> = OnceLock::new();
    LIB.get_or_init(|| {
        let mut env = HashMap::new();
        for (name, src) in LIBRARY {
            let t = parse_with(src, &env).unwrap_or_else(|e| panic!("library `{name}`: {e}"));
            env.insert(name.to_string(), t);
        }
        env
    })
}

/// Parses a program with the kit's names in scope.
pub fn parse_program(src: &str) -> Result<Term, Error> {
    parse_with(src, library())
}

/// Compiles a closed program to its element code. The program must be in
/// normal form once abstracted (lambdas always are).
pub fn compile_program(src: &str) -> Result<Nat, Error> {
    let t = parse_program(src)?;
    Ok(t.to_code())
}

pub fn lib_term(name: &str) -> Term {
    library()
        .get(name)
        .unwrap_or_else(|| panic!("no library entry `{name}`"))
        .clone()
}

pub fn lib_code(name: &str) -> Nat {
    lib_term(name).to_code()
}

/// Element codes of the kit.
#[derive(Clone, Debug)]
pub struct Kit {
    pub k: Nat,
    pub s: Nat,
    pub i: Nat,
    pub pair: Nat,
    pub fst: Nat,
    pub snd: Nat,
    pub top: Nat,
    pub bot: Nat,
    pub cases: Nat,
    pub fix: Nat,
    pub len: Nat,
    pub head: Nat,
    pub single: Nat,
    pub append: Nat,
}

pub fn kit() -> &'static Kit {
    static KIT: OnceLock<Kit> = OnceLock::new();
    KIT.get_or_init(|| Kit {
        k: Term::Prim(Prim::K).to_code(),
        s: Term::Prim(Prim::S).to_code(),
        i: lib_code("I"),
        pair: Term::Prim(Prim::Pair).to_code(),
        fst: Term::Prim(Prim::Fst).to_code(),
        snd: Term::Prim(Prim::Snd).to_code(),
        top: lib_code("TRUE"),
        bot: lib_code("FALSE"),
        cases: lib_code("IF"),
        fix: Term::Prim(Prim::Fix).to_code(),
        len: lib_code("LEN"),
        head: lib_code("HEAD"),
        single: lib_code("SINGLE"),
        append: lib_code("APPEND"),
    })
}

/// Same as [`kit`]; the kit is derived once from the base constants.
pub fn derived_kit() -> &'static Kit {
    kit()
}

pub fn numeral(n: u64) -> Nat {
    Term::num(n).to_code()
}

pub fn numeral_value(code: &Nat) -> Option<Nat> {
    match Term::from_code(code)? {
        Term::Num(n) => Some(n),
        _ => None,
    }
}

pub fn top_value() -> Value {
    Value::from_term(&lib_term("TRUE")).expect("value")
}

pub fn bot_value() -> Value {
    Value::from_term(&lib_term("FALSE")).expect("value")
}

/// `[u0, …, un-1]` as the value `PAIR #n (PAIR u0 (… (PAIR un-1 #0)))`.
pub fn tuple_value(items: &[Value]) -> Value {
    let mut list = Value::num(0u32.into());
    for item in items.iter().rev() {
        list = Value::partial(Prim::Pair, vec![item.clone(), list]);
    }
    Value::partial(Prim::Pair, vec![Value::num(Nat::from(items.len())), list])
}

pub fn untuple_value(v: &Value) -> Option<Vec<Value>> {
    let (len, mut list) = v.as_pair()?;
    let n = u64::try_from(len.as_num()?).ok()?;
    let mut out = Vec::new();
    for _ in 0..n {
        let (head, tail) = list.as_pair()?;
        out.push(head.clone());
        list = tail;
    }
    (list.as_num()? == &Nat::from(0u32)).then_some(out)
}

/// Tuple of element codes; fails on non-codes.
pub fn tuple(items: &[Nat]) -> Result<Nat, Error> {
    let values = items
        .iter()
        .map(|c| Value::from_code(c).ok_or(Error::NotACode))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(tuple_value(&values).to_code())
}

pub fn untuple(code: &Nat) -> Option<Vec<Nat>> {
    let v = Value::from_code(code)?;
    Some(untuple_value(&v)?.iter().map(Value::to_code).collect())
}

/// `p a b` as a code.
pub fn pair_code(a: &Value, b: &Value) -> Nat {
    Value::partial(Prim::Pair, vec![a.clone(), b.clone()]).to_code()
}
