//! Combinator terms, normal-form values and their injective numbering.

use std::fmt;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::coding::Nat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prim {
    K,
    S,
    Pair,
    Fst,
    Snd,
    Succ,
    Pred,
    Ifz,
    Fix,
}

impl Prim {
    pub const ALL: [Prim; 9] = [
        Prim::K,
        Prim::S,
        Prim::Pair,
        Prim::Fst,
        Prim::Snd,
        Prim::Succ,
        Prim::Pred,
        Prim::Ifz,
        Prim::Fix,
    ];

    /// Number of arguments at which the constant contracts.
    pub fn arity(self) -> usize {
        match self {
            Prim::K | Prim::Fix => 2,
            Prim::S | Prim::Ifz => 3,
            // a saturated pair is data, applying it further is stuck
            Prim::Pair => 3,
            Prim::Fst | Prim::Snd | Prim::Succ | Prim::Pred => 1,
        }
    }

    fn id(self) -> u64 {
        self as u64
    }

    pub fn name(self) -> &'static str {
        match self {
            Prim::K => "K",
            Prim::S => "S",
            Prim::Pair => "PAIR",
            Prim::Fst => "FST",
            Prim::Snd => "SND",
            Prim::Succ => "SUCC",
            Prim::Pred => "PRED",
            Prim::Ifz => "IFZ",
            Prim::Fix => "FIX",
        }
    }

    pub fn from_name(s: &str) -> Option<Prim> {
        Prim::ALL.iter().copied().find(|p| p.name() == s)
    }
}

const NUM_BASE: u64 = 9;

/// Combinator terms, possibly with variables (before abstraction).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Prim(Prim),
    Num(Nat),
    Var(String),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn app(f: Term, x: Term) -> Term {
        Term::App(Box::new(f), Box::new(x))
    }

    pub fn apps<I: IntoIterator<Item = Term>>(head: Term, args: I) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn num(n: u64) -> Term {
        Term::Num(Nat::from(n))
    }

    pub fn size(&self) -> usize {
        match self {
            Term::App(f, x) => 1 + f.size() + x.size(),
            _ => 1,
        }
    }

    pub fn occurs(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::App(f, x) => f.occurs(name) || x.occurs(name),
            _ => false,
        }
    }

    pub fn first_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(f, x) => f.first_var().or_else(|| x.first_var()),
            _ => None,
        }
    }

    /// Syntactic value: an atom, or a constant applied to values below its
    /// arity. Variables count as values since they stand for elements.
    pub fn is_value(&self) -> bool {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, x) = head {
            args.push(x.as_ref());
            head = f;
        }
        match head {
            Term::Prim(p) => args.len() < p.arity() && args.iter().all(|a| a.is_value()),
            _ => args.is_empty(),
        }
    }

    /// Injective numbering: a leading sentinel bit, then the pre-order
    /// serialization (`0` for application, `1` + Elias-gamma atom id).
    pub fn to_code(&self) -> Nat {
        let mut bits = vec![1u8];
        write_term(self, &mut bits);
        BigUint::from_radix_be(&bits, 2).expect("binary digits")
    }

    pub fn from_code(code: &Nat) -> Option<Term> {
        if code.is_zero() {
            return None;
        }
        let bits = code.to_radix_be(2);
        let mut pos = 1;
        let t = read_term(&bits, &mut pos)?;
        (pos == bits.len()).then_some(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Prim(p) => f.write_str(p.name()),
            Term::Num(n) => write!(f, "#{n}"),
            Term::Var(v) => f.write_str(v),
            Term::App(a, b) => {
                write!(f, "{a} ")?;
                if matches!(**b, Term::App(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

fn write_gamma(v: &Nat, bits: &mut Vec<u8>) {
    let digits = v.to_radix_be(2);
    bits.extend(std::iter::repeat_n(0u8, digits.len() - 1));
    bits.extend(digits);
}

fn read_gamma(bits: &[u8], pos: &mut usize) -> Option<Nat> {
    let mut zeros = 0;
    while *bits.get(*pos)? == 0 {
        zeros += 1;
        *pos += 1;
    }
    let end = *pos + zeros + 1;
    let digits = bits.get(*pos..end)?;
    *pos = end;
    BigUint::from_radix_be(digits, 2)
}

fn write_term(t: &Term, bits: &mut Vec<u8>) {
    match t {
        Term::App(f, x) => {
            bits.push(0);
            write_term(f, bits);
            write_term(x, bits);
        }
        Term::Prim(p) => {
            bits.push(1);
            write_gamma(&Nat::from(p.id() + 1), bits);
        }
        Term::Num(n) => {
            bits.push(1);
            write_gamma(&(n + NUM_BASE + 1u32), bits);
        }
        Term::Var(_) => panic!("terms with free variables have no code"),
    }
}

fn read_term(bits: &[u8], pos: &mut usize) -> Option<Term> {
    let tag = *bits.get(*pos)?;
    *pos += 1;
    if tag == 0 {
        let f = read_term(bits, pos)?;
        let x = read_term(bits, pos)?;
        return Some(Term::app(f, x));
    }
    let id = read_gamma(bits, pos)? - BigUint::one();
    if id < Nat::from(NUM_BASE) {
        let i = u64::try_from(&id).ok()? as usize;
        Some(Term::Prim(Prim::ALL[i]))
    } else {
        Some(Term::Num(id - NUM_BASE))
    }
}

/// A normal form: a numeral, or a constant applied to fewer values than its
/// arity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Value(Rc<ValueNode>);

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ValueNode {
    Num(Nat),
    Partial(Prim, Vec<Value>),
}

impl Value {
    pub fn num(n: Nat) -> Value {
        Value(Rc::new(ValueNode::Num(n)))
    }

    pub fn prim(p: Prim) -> Value {
        Value(Rc::new(ValueNode::Partial(p, Vec::new())))
    }

    pub fn partial(p: Prim, args: Vec<Value>) -> Value {
        debug_assert!(args.len() < p.arity());
        Value(Rc::new(ValueNode::Partial(p, args)))
    }

    pub fn node(&self) -> &ValueNode {
        &self.0
    }

    pub fn as_num(&self) -> Option<&Nat> {
        match &*self.0 {
            ValueNode::Num(n) => Some(n),
            _ => None,
        }
    }

    /// `(a, b)` when the value is `PAIR a b`.
    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match &*self.0 {
            ValueNode::Partial(Prim::Pair, args) if args.len() == 2 => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    pub fn to_term(&self) -> Term {
        match &*self.0 {
            ValueNode::Num(n) => Term::Num(n.clone()),
            ValueNode::Partial(p, args) => Term::apps(Term::Prim(*p), args.iter().map(Value::to_term)),
        }
    }

    pub fn to_code(&self) -> Nat {
        self.to_term().to_code()
    }

    /// Reads a value back from a code; `None` for non-codes and for codes
    /// of terms that are not in normal form.
    pub fn from_code(code: &Nat) -> Option<Value> {
        Value::from_term(&Term::from_code(code)?)
    }

    pub fn from_term(t: &Term) -> Option<Value> {
        match t {
            Term::Num(n) => Some(Value::num(n.clone())),
            Term::Prim(p) => Some(Value::prim(*p)),
            Term::Var(_) => None,
            Term::App(f, x) => {
                let f = Value::from_term(f)?;
                let x = Value::from_term(x)?;
                match &*f.0 {
                    ValueNode::Partial(p, args) if args.len() + 1 < p.arity() => {
                        let mut args = args.clone();
                        args.push(x);
                        Some(Value::partial(*p, args))
                    }
                    _ => None,
                }
            }
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All closed terms with at most `size` nodes over the given atoms.
    fn enumerate(size: usize, atoms: &[Term]) -> Vec<Term> {
        let mut by_size: Vec<Vec<Term>> = vec![Vec::new(), atoms.to_vec()];
        for n in 2..=size {
            let mut here = Vec::new();
            for left in 1..n - 1 {
                let right = n - 1 - left;
                for f in &by_size[left] {
                    for x in &by_size[right] {
                        here.push(Term::app(f.clone(), x.clone()));
                    }
                }
            }
            by_size.push(here);
        }
        by_size.into_iter().flatten().collect()
    }

    #[test]
    fn numbering_round_trips_exhaustively() {
        let atoms = [Term::Prim(Prim::K), Term::Prim(Prim::S), Term::num(0)];
        let terms = enumerate(8, &atoms);
        let mut seen = std::collections::HashSet::new();
        for t in &terms {
            let c = t.to_code();
            assert_eq!(Term::from_code(&c).as_ref(), Some(t));
            assert!(seen.insert(c.clone()), "duplicate code for {t}");
            if let Term::App(f, x) = t {
                assert!(c > f.to_code() && c > x.to_code());
            }
        }
        // Catalan(k) shapes with k applications, 3^(k+1) leaf choices, k <= 3
        assert_eq!(terms.len(), 3 + 9 + 2 * 27 + 5 * 81);
    }

    #[test]
    fn non_codes_rejected() {
        assert_eq!(Term::from_code(&Nat::from(0u32)), None);
        // sentinel then a lone application tag
        assert_eq!(Term::from_code(&Nat::from(0b10u32)), None);
        // trailing garbage after a complete atom
        let mut c = Term::Prim(Prim::K).to_code();
        c <<= 1;
        assert_eq!(Term::from_code(&c), None);
    }

    #[test]
    fn values_and_redexes() {
        let k = Term::Prim(Prim::K);
        let kk = Term::app(k.clone(), k.clone());
        assert!(kk.is_value());
        assert!(Value::from_code(&kk.to_code()).is_some());
        let redex = Term::app(kk, k);
        assert!(!redex.is_value());
        assert!(Value::from_code(&redex.to_code()).is_none());
        let pair = Term::apps(Term::Prim(Prim::Pair), [Term::num(1), Term::num(2)]);
        assert!(pair.is_value());
        assert!(Value::from_term(&pair).unwrap().as_pair().is_some());
    }
}
