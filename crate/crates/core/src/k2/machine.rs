//! The combinators `k`, `s` and `σ` of the tagged models, each compiled
//! from a strategy family.

use std::sync::Arc;

use crate::coding::{CodingScheme, Nat, Tagged};
use crate::partialfn::{Fuel, Halt, Outcome, PartialFn};

use super::strategy::{compile_strategy_family, qq, run_family, Ask, Side, Stop, StrategyFamily};
use super::{Model, ModelTag};

/// `G_a(α, β) = α(a)`.
pub struct KFamily;

impl StrategyFamily for KFamily {
    fn name(&self) -> String {
        "k".into()
    }

    fn play(&self, point: &Nat, ask: &mut Ask<'_>) -> Result<Nat, Stop> {
        ask(Side::First, point)
    }
}

/// `G_x(α, β) = α(β(x))`: with `β = â` this is the constant `α(a)`.
pub struct SigmaFamily;

impl StrategyFamily for SigmaFamily {
    fn name(&self) -> String {
        "sigma".into()
    }

    fn play(&self, point: &Nat, ask: &mut Ask<'_>) -> Result<Nat, Stop> {
        let a = ask(Side::Second, point)?;
        ask(Side::First, &a)
    }
}

/// `S^{αβ}` as a family over codes `⟨a⟩ ∗ u`.
///
/// The entries of `u` are answers of the third argument. They are consumed
/// by alternating phases: `α` interrogated at the point `⟨a, c0, …⟩` until
/// it returns `⟨r,⟨q,b⟩⟩`, then `β` interrogated at `b` until it returns
/// `⟨r,c⟩`, which extends the point. An unanswered query is re-emitted; a
/// double result `⟨r,⟨r,y⟩⟩` with `u` used up gives `⟨r,y⟩`.
pub struct SMachine {
    pub model: Model,
}

fn enc(s: &dyn CodingScheme, items: &[Nat]) -> Result<Nat, Stop> {
    s.encode(items).map_err(|_| Stop::Halt(Halt::OutOfFuel))
}

impl SMachine {
    /// Any other shape. In `K2` the value is one that is neither tag, so
    /// the composite is undefined exactly where `(αγ)(βγ)` is; in `K2^p`
    /// there is no value.
    fn malformed(&self) -> Result<Nat, Stop> {
        match self.model.tag {
            ModelTag::K2P => Err(Stop::Stuck),
            _ => Ok(self.model.scheme.neither()),
        }
    }
}

impl StrategyFamily for SMachine {
    fn name(&self) -> String {
        "s".into()
    }

    fn play(&self, point: &Nat, ask: &mut Ask<'_>) -> Result<Nat, Stop> {
        let s = self.model.scheme.as_ref();
        let tag = |r: Result<Nat, crate::error::Error>| r.map_err(|_| Stop::Halt(Halt::OutOfFuel));
        let Some((a, u)) = s.decode_point(point) else {
            return Ok(qq(s));
        };
        let mut next = u.iter();
        let mut cs = vec![a];
        loop {
            let at = enc(s, &cs)?;
            let mut probe = vec![at];
            let b = loop {
                match s.untag(&ask(Side::First, &enc(s, &probe)?)?) {
                    Tagged::Query(x) => match next.next() {
                        Some(v) => probe.push(v.clone()),
                        None => return tag(s.tag_query(&x)),
                    },
                    Tagged::Result(z) => match s.untag(&z) {
                        Tagged::Query(b) => break b,
                        Tagged::Result(y) if next.len() == 0 => return tag(s.tag_result(&y)),
                        _ => return self.malformed(),
                    },
                    Tagged::Neither => return self.malformed(),
                }
            };
            let mut probe = vec![b];
            let c = loop {
                match s.untag(&ask(Side::Second, &enc(s, &probe)?)?) {
                    Tagged::Query(x) => match next.next() {
                        Some(w) => probe.push(w.clone()),
                        None => return tag(s.tag_query(&x)),
                    },
                    Tagged::Result(c) => break c,
                    Tagged::Neither => return self.malformed(),
                }
            };
            cs.push(c);
        }
    }
}

/// `S^{αβ}(code)` computed directly from `α` and `β`.
pub fn s_machine(model: &Model, alpha: &PartialFn, beta: &PartialFn, code: &Nat, fuel: u64) -> Outcome {
    let m = SMachine { model: model.clone() };
    Outcome::from_eval(run_family(&m, code, alpha, beta, &mut Fuel::new(fuel)))
}

pub fn make_k(model: &Model) -> PartialFn {
    match model.tag {
        ModelTag::K2Orig => super::orig::make_k(model),
        _ => compile_strategy_family(Arc::new(KFamily), model),
    }
}

pub fn make_s(model: &Model) -> PartialFn {
    match model.tag {
        ModelTag::K2Orig => super::orig::make_s(model),
        _ => compile_strategy_family(Arc::new(SMachine { model: model.clone() }), model),
    }
}

/// `σ` with `σ α â = \widehat{α(a)}`.
pub fn make_sigma(model: &Model) -> PartialFn {
    compile_strategy_family(Arc::new(SigmaFamily), model)
}
