//! Kleene's original application on total functions: `αβ(x) = y` when
//! `α⟨x,β(0),…,β(n−1)⟩ = y+1` and `α` is `0` on the shorter prefixes.
//!
//! Also the subset `B = {α | α(E_n) = n for all n}`, which contains `k′`,
//! `s′` and is closed under application but not under "recursive in".

use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::coding::{e_index, e_n, nat, CodingScheme, Nat};
use crate::dialogue::Step;
use crate::partialfn::{Eval, Fuel, Halt, PartialFn, Rule};
use crate::report::{CheckReport, Verdict};

use super::strategy::Mix;
use super::Model;

/// Largest `n` recognised as an `E_n` by `k′`, `s′` and `force_b`.
pub const E_LIMIT: usize = 64;

/// `αβ(x)` under sequential reading, recording each read of `β`.
pub fn orig_apply_in(
    scheme: &dyn CodingScheme,
    alpha: &mut dyn FnMut(&Nat, &mut Fuel) -> Eval,
    beta: &mut dyn FnMut(&Nat, &mut Fuel) -> Eval,
    x: &Nat,
    fuel: &mut Fuel,
    steps: &mut Vec<Step>,
) -> Eval {
    let mut history = vec![x.clone()];
    loop {
        fuel.tick()?;
        let code = scheme.encode(&history).map_err(|_| Halt::OutOfFuel)?;
        let v = alpha(&code, fuel)?;
        if !v.is_zero() {
            return Ok(v - 1u32);
        }
        let n = nat(steps.len() as u64);
        let b = beta(&n, fuel)?;
        steps.push(Step {
            query: n,
            answer: b.clone(),
        });
        history.push(b);
    }
}

#[derive(Debug)]
enum Need {
    Alpha,
    Beta,
    Gamma,
    Halt(Halt),
}

impl From<Halt> for Need {
    fn from(h: Halt) -> Self {
        Need::Halt(h)
    }
}

type Sim<'a> = dyn FnMut(&Nat, &mut Fuel) -> Result<Nat, Need> + 'a;

fn known(prefix: &[Nat], i: &Nat, who: Need) -> Result<Nat, Need> {
    i.to_usize().and_then(|i| prefix.get(i).cloned()).ok_or(who)
}

/// Kleene application on partially known functions.
fn sim_apply(
    scheme: &dyn CodingScheme,
    alpha: &mut Sim<'_>,
    beta: &mut Sim<'_>,
    x: &Nat,
    fuel: &mut Fuel,
) -> Result<Nat, Need> {
    let mut history = vec![x.clone()];
    let mut n = 0u64;
    loop {
        fuel.tick()?;
        let code = scheme.encode(&history).map_err(|_| Halt::OutOfFuel)?;
        let v = alpha(&code, fuel)?;
        if !v.is_zero() {
            return Ok(v - 1u32);
        }
        history.push(beta(&nat(n), fuel)?);
        n += 1;
    }
}

struct KOrig {
    scheme: Arc<dyn CodingScheme>,
}

impl Rule for KOrig {
    fn name(&self) -> String {
        "k".into()
    }

    // at ⟨m, α(0), …, α(j−1)⟩ with m = ⟨x, …⟩: read α up to x, then α(x)+2
    fn apply(&self, probe: &Nat, fuel: &mut Fuel) -> Eval {
        fuel.tick()?;
        let s = self.scheme.as_ref();
        let Some((m, a)) = s.decode_point(probe) else {
            return Ok(Nat::one());
        };
        let Some((x, _)) = s.decode_point(&m) else {
            return Ok(Nat::one());
        };
        match x.to_usize().and_then(|i| a.get(i)) {
            Some(ax) => Ok(ax + 2u32),
            None => Ok(Nat::zero()),
        }
    }
}

struct SOrig {
    scheme: Arc<dyn CodingScheme>,
}

impl Rule for SOrig {
    fn name(&self) -> String {
        "s".into()
    }

    // at ⟨⟨⟨x, γ-prefix⟩, β-prefix⟩, α-prefix⟩: simulate (αγ)(βγ)(x) and emit
    // 0, 1 or 2 to read more of α, β or γ, or v+3 for the value v
    fn apply(&self, probe: &Nat, fuel: &mut Fuel) -> Eval {
        fuel.tick()?;
        let s = self.scheme.as_ref();
        let Some((m, a)) = s.decode_point(probe) else {
            return Ok(Nat::one());
        };
        let Some((p, b)) = s.decode_point(&m) else {
            return Ok(nat(3));
        };
        let Some((x, g)) = s.decode_point(&p) else {
            return Ok(nat(3));
        };
        let mut ag = |y: &Nat, f: &mut Fuel| {
            let mut al = |c: &Nat, _: &mut Fuel| known(&a, c, Need::Alpha);
            let mut ga = |i: &Nat, _: &mut Fuel| known(&g, i, Need::Gamma);
            sim_apply(s, &mut al, &mut ga, y, f)
        };
        let mut bg = |y: &Nat, f: &mut Fuel| {
            let mut be = |c: &Nat, _: &mut Fuel| known(&b, c, Need::Beta);
            let mut ga = |i: &Nat, _: &mut Fuel| known(&g, i, Need::Gamma);
            sim_apply(s, &mut be, &mut ga, y, f)
        };
        Ok(match sim_apply(s, &mut ag, &mut bg, &x, fuel) {
            Ok(v) => v + 3u32,
            Err(Need::Alpha) => nat(0),
            Err(Need::Beta) => nat(1),
            Err(Need::Gamma) => nat(2),
            Err(Need::Halt(h)) => return Err(h),
        })
    }
}

pub fn make_k(model: &Model) -> PartialFn {
    PartialFn::total_builtin(Arc::new(KOrig {
        scheme: model.scheme.clone(),
    }))
}

pub fn make_s(model: &Model) -> PartialFn {
    PartialFn::total_builtin(Arc::new(SOrig {
        scheme: model.scheme.clone(),
    }))
}

struct ForceB {
    name: String,
    scheme: Arc<dyn CodingScheme>,
    inner: PartialFn,
}

impl Rule for ForceB {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn apply(&self, x: &Nat, fuel: &mut Fuel) -> Eval {
        match e_index(self.scheme.as_ref(), x, E_LIMIT) {
            Some(n) => Ok(nat(n as u64)),
            None => self.inner.eval_in(x, fuel),
        }
    }
}

/// `x ↦ n` if `x = E_n`, else `g(x)`.
pub fn force_b(model: &Model, g: &PartialFn) -> PartialFn {
    let rule = Arc::new(ForceB {
        name: format!("B[{}]", g.describe()),
        scheme: model.scheme.clone(),
        inner: g.clone(),
    });
    if g.totality_claim() {
        PartialFn::total_builtin(rule)
    } else {
        PartialFn::builtin(rule)
    }
}

/// `(k′, s′)`: `k` and `s` redefined to be `n` at `E_n`.
pub fn make_k_prime_s_prime(model: &Model) -> (PartialFn, PartialFn) {
    let kp = force_b(model, &make_k(model));
    let sp = force_b(model, &make_s(model));
    (kp, sp)
}

/// The window test `α(E_n) = n` for `n ≤ window`.
pub fn in_counterexample_b(model: &Model, alpha: &PartialFn, window: usize, fuel: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{} in B up to E_{window}", alpha.describe()));
    for n in 0..=window {
        let v = match e_n(model.scheme.as_ref(), n) {
            Err(e) => Verdict::Fail(format!("E_{n}: {e}")),
            Ok(code) => match alpha.eval(&code, fuel) {
                crate::Outcome::Value(v) if v == nat(n as u64) => Verdict::Pass,
                crate::Outcome::OutOfFuel => Verdict::Inconclusive,
                other => Verdict::Fail(format!("at E_{n}: {other}")),
            },
        };
        report.record(v);
    }
    report
}

/// A total function with small, mostly nonzero values, so that Kleene
/// application answers after few reads.
pub fn random_total(rng: &mut ChaCha8Rng) -> PartialFn {
    let seed: u64 = rng.gen();
    let zeros = rng.gen_range(0..2u64);
    PartialFn::total_fn(format!("small({seed:x})"), move |x, _| {
        let h = Mix(seed).feed(x);
        Ok(if h.below(10) < zeros {
            Nat::zero()
        } else {
            nat(1 + h.feed_u64(1).below(4))
        })
    })
}

/// A member of `B` drawn from the corpus.
pub fn random_b(model: &Model, rng: &mut ChaCha8Rng) -> PartialFn {
    force_b(model, &random_total(rng))
}

/// A computable `g` with `g(E_0) = 1` and `g(E_n) = n` otherwise. Being
/// computable it is recursive in every element of `B`, yet it is not in `B`.
pub fn outside_b(model: &Model) -> PartialFn {
    let scheme = model.scheme.clone();
    PartialFn::total_fn("g", move |x, _| {
        Ok(match e_index(scheme.as_ref(), x, E_LIMIT) {
            Some(0) => nat(1),
            Some(n) => nat(n as u64),
            None => Nat::zero(),
        })
    })
}
