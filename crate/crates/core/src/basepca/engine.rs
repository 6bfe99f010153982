//! Call-by-value reduction of combinator terms under a fuel budget.

use crate::partialfn::{Eval, Fuel, Halt};

use super::term::{Prim, Term, Value, ValueNode};

enum Frame {
    /// `a c` is being computed; `b c` comes next.
    Right { b: Value, c: Value },
    /// `b c` is being computed; apply `left` to it.
    Join { left: Value },
    /// `g (FIX g)` is being computed; apply it to `y`.
    Then { y: Value },
}

/// Applies one value to another. Each contraction costs one unit of fuel;
/// building a partial application is free. Pending work lives on an
/// explicit stack, so deep reductions do not exhaust the call stack.
pub fn apply(f: &Value, x: &Value, fuel: &mut Fuel) -> Eval<Value> {
    let mut stack: Vec<Frame> = Vec::new();
    let mut f = f.clone();
    let mut x = x.clone();
    loop {
        let (p, mut args) = match f.node() {
            ValueNode::Num(_) => return Err(Halt::Undefined),
            ValueNode::Partial(p, args) => (*p, args.clone()),
        };
        args.push(x);
        let done = if args.len() < p.arity() {
            Value::partial(p, args)
        } else {
            fuel.tick()?;
            let mut args = args.into_iter();
            let mut next = || args.next().expect("saturated");
            match p {
                Prim::K => next(),
                Prim::S => {
                    let (a, b, c) = (next(), next(), next());
                    stack.push(Frame::Right { b, c: c.clone() });
                    f = a;
                    x = c;
                    continue;
                }
                Prim::Pair => return Err(Halt::Undefined),
                Prim::Fst | Prim::Snd => {
                    let v = next();
                    let (a, b) = v.as_pair().ok_or(Halt::Undefined)?;
                    if p == Prim::Fst {
                        a.clone()
                    } else {
                        b.clone()
                    }
                }
                Prim::Succ => {
                    let n = next().as_num().ok_or(Halt::Undefined)?.clone();
                    Value::num(n + 1u32)
                }
                Prim::Pred => {
                    let n = next().as_num().ok_or(Halt::Undefined)?.clone();
                    Value::num(if n == 0u32.into() { n } else { n - 1u32 })
                }
                Prim::Ifz => {
                    let (n, a, b) = (next(), next(), next());
                    let n = n.as_num().ok_or(Halt::Undefined)?;
                    if *n == 0u32.into() {
                        a
                    } else {
                        b
                    }
                }
                Prim::Fix => {
                    let (g, y) = (next(), next());
                    stack.push(Frame::Then { y });
                    x = Value::partial(Prim::Fix, vec![g.clone()]);
                    f = g;
                    continue;
                }
            }
        };
        match stack.pop() {
            None => return Ok(done),
            Some(Frame::Right { b, c }) => {
                stack.push(Frame::Join { left: done });
                f = b;
                x = c;
            }
            Some(Frame::Join { left }) => {
                f = left;
                x = done;
            }
            Some(Frame::Then { y }) => {
                f = done;
                x = y;
            }
        }
    }
}

/// Evaluates a closed term, arguments before application.
pub fn eval_term(t: &Term, fuel: &mut Fuel) -> Eval<Value> {
    match t {
        Term::Prim(p) => Ok(Value::prim(*p)),
        Term::Num(n) => Ok(Value::num(n.clone())),
        Term::Var(_) => Err(Halt::Undefined),
        Term::App(f, x) => {
            let f = eval_term(f, fuel)?;
            let x = eval_term(x, fuel)?;
            apply(&f, &x, fuel)
        }
    }
}
