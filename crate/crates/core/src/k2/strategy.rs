//! Bisequential strategies, their direct execution, and their compilation
//! into elements whose applications replay them.

use std::sync::Arc;

use crate::coding::{CodingScheme, Nat};
use crate::partialfn::{Eval, Fuel, Halt, PartialFn, Rule};

use super::{Model, ModelTag};

/// Which argument a strategy interrogates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// Why a strategy did not produce a result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stop {
    Halt(Halt),
    /// The answer to this query is not available yet.
    Pending(Side, Nat),
    /// No move at this history.
    Stuck,
}

impl From<Halt> for Stop {
    fn from(h: Halt) -> Self {
        Stop::Halt(h)
    }
}

pub type Ask<'a> = dyn FnMut(Side, &Nat) -> Result<Nat, Stop> + 'a;

/// A strategy querying two functions. `play` must be a pure function of
/// the answers it receives.
pub trait BisequentialStrategy: Send + Sync {
    fn play(&self, ask: &mut Ask<'_>) -> Result<Nat, Stop>;
}

/// A point-indexed family `a ↦ G_a` of bisequential strategies.
pub trait StrategyFamily: Send + Sync {
    fn name(&self) -> String;

    fn play(&self, point: &Nat, ask: &mut Ask<'_>) -> Result<Nat, Stop>;
}

pub type UnaryAsk<'a> = dyn FnMut(&Nat) -> Result<Nat, Stop> + 'a;

/// A point-indexed family of sequential strategies on one function.
pub trait UnaryFamily: Send + Sync {
    fn name(&self) -> String;

    fn play(&self, point: &Nat, ask: &mut UnaryAsk<'_>) -> Result<Nat, Stop>;
}

fn stop_to_halt(s: Stop) -> Halt {
    match s {
        Stop::Halt(h) => h,
        Stop::Pending(..) | Stop::Stuck => Halt::Undefined,
    }
}

/// `G(α, β)` by running the strategy against the functions themselves.
pub fn run_strategy(g: &dyn BisequentialStrategy, alpha: &PartialFn, beta: &PartialFn, fuel: &mut Fuel) -> Eval {
    let mut ask = |side: Side, x: &Nat| -> Result<Nat, Stop> {
        let f = if side == Side::First { alpha } else { beta };
        Ok(f.eval_in(x, fuel)?)
    };
    g.play(&mut ask).map_err(stop_to_halt)
}

/// `G_a(α, β)` directly.
pub fn run_family(g: &dyn StrategyFamily, point: &Nat, alpha: &PartialFn, beta: &PartialFn, fuel: &mut Fuel) -> Eval {
    let mut ask = |side: Side, x: &Nat| -> Result<Nat, Stop> {
        let f = if side == Side::First { alpha } else { beta };
        Ok(f.eval_in(x, fuel)?)
    };
    g.play(point, &mut ask).map_err(stop_to_halt)
}

/// `F_a(β)` directly.
pub fn run_unary(g: &dyn UnaryFamily, point: &Nat, beta: &PartialFn, fuel: &mut Fuel) -> Eval {
    let mut ask = |x: &Nat| -> Result<Nat, Stop> { Ok(beta.eval_in(x, fuel)?) };
    g.play(point, &mut ask).map_err(stop_to_halt)
}

enum Shape {
    Single(Arc<dyn BisequentialStrategy>),
    Family(Arc<dyn StrategyFamily>),
}

struct Compiled {
    shape: Shape,
    model: Model,
}

impl Compiled {
    /// Value for probes outside the protocol: in `K2` a result whose value
    /// is `⟨q,q⟩`, keeping the element's applications total.
    fn off_protocol(&self) -> Eval {
        let s = self.model.scheme.as_ref();
        match self.model.tag {
            ModelTag::K2P => Err(Halt::Undefined),
            _ => Ok(s.tag_result(&qq(s)).expect("marker tag")),
        }
    }
}

pub(crate) fn qq(s: &dyn CodingScheme) -> Nat {
    s.tag_query(&s.q()).expect("marker tag")
}

impl Rule for Compiled {
    fn name(&self) -> String {
        match &self.shape {
            Shape::Single(_) => "strategy".into(),
            Shape::Family(f) => f.name(),
        }
    }

    fn apply(&self, x: &Nat, fuel: &mut Fuel) -> Eval {
        fuel.tick()?;
        let s = self.model.scheme.as_ref();
        // probe = ⟨p, a0, …⟩; family: p = ⟨point, b0, …⟩, single: p = ⟨b0, …⟩
        let Some((p, firsts)) = s.decode_point(x) else {
            return self.off_protocol();
        };
        let (point, seconds) = match &self.shape {
            Shape::Single(_) => match s.decode(&p) {
                Some(bs) => (None, bs),
                None => return self.off_protocol(),
            },
            Shape::Family(_) => match s.decode_point(&p) {
                Some((a, bs)) => (Some(a), bs),
                None => return self.off_protocol(),
            },
        };
        let (mut i, mut j) = (0, 0);
        let mut ask = |side: Side, u: &Nat| -> Result<Nat, Stop> {
            let (hist, k) = match side {
                Side::First => (&firsts, &mut i),
                Side::Second => (&seconds, &mut j),
            };
            match hist.get(*k) {
                Some(v) => {
                    *k += 1;
                    Ok(v.clone())
                }
                None => Err(Stop::Pending(side, u.clone())),
            }
        };
        let played = match (&self.shape, &point) {
            (Shape::Single(g), _) => g.play(&mut ask),
            (Shape::Family(g), Some(a)) => g.play(a, &mut ask),
            (Shape::Family(_), None) => unreachable!("family probes carry a point"),
        };
        let all_first = i == firsts.len();
        let all_second = j == seconds.len();
        let tag = |r: Result<Nat, crate::error::Error>| r.expect("tag");
        match played {
            Err(Stop::Pending(Side::First, u)) => Ok(tag(s.tag_query(&u))),
            Err(Stop::Pending(Side::Second, v)) if all_first => Ok(tag(s.tag_result(&tag(s.tag_query(&v))))),
            Ok(c) if all_first && all_second => Ok(tag(s.tag_result(&tag(s.tag_result(&c))))),
            Err(Stop::Halt(h)) => Err(h),
            _ => self.off_protocol(),
        }
    }
}

/// `φ_G` with `φ(φ_G α, β) = G(α, β)`.
pub fn compile_strategy(g: Arc<dyn BisequentialStrategy>, model: &Model) -> PartialFn {
    let total = model.tag != ModelTag::K2P;
    let rule = Arc::new(Compiled {
        shape: Shape::Single(g),
        model: model.clone(),
    });
    if total {
        PartialFn::total_builtin(rule)
    } else {
        PartialFn::builtin(rule)
    }
}

/// `φ_G` with `((φ_G α) β)(a) = G_a(α, β)`.
pub fn compile_strategy_family(g: Arc<dyn StrategyFamily>, model: &Model) -> PartialFn {
    let total = model.tag != ModelTag::K2P;
    let rule = Arc::new(Compiled {
        shape: Shape::Family(g),
        model: model.clone(),
    });
    if total {
        PartialFn::total_builtin(rule)
    } else {
        PartialFn::builtin(rule)
    }
}

struct CompiledUnary {
    family: Arc<dyn UnaryFamily>,
    model: Model,
}

impl Rule for CompiledUnary {
    fn name(&self) -> String {
        self.family.name()
    }

    fn apply(&self, x: &Nat, fuel: &mut Fuel) -> Eval {
        fuel.tick()?;
        let s = self.model.scheme.as_ref();
        let off = || match self.model.tag {
            ModelTag::K2P => Err(Halt::Undefined),
            _ => Ok(qq(s)),
        };
        let Some((a, answers)) = s.decode_point(x) else {
            return off();
        };
        let mut k = 0;
        let mut ask = |u: &Nat| -> Result<Nat, Stop> {
            match answers.get(k) {
                Some(v) => {
                    k += 1;
                    Ok(v.clone())
                }
                None => Err(Stop::Pending(Side::Second, u.clone())),
            }
        };
        let played = self.family.play(&a, &mut ask);
        let done = k == answers.len();
        match played {
            Err(Stop::Pending(_, u)) => Ok(s.tag_query(&u).expect("tag")),
            Ok(c) if done => Ok(s.tag_result(&c).expect("tag")),
            Err(Stop::Halt(h)) => Err(h),
            _ => off(),
        }
    }
}

/// `α_F` with `(α_F β)(a) = F_a(β)`.
pub fn compile_unary(f: Arc<dyn UnaryFamily>, model: &Model) -> PartialFn {
    let total = model.tag != ModelTag::K2P;
    let rule = Arc::new(CompiledUnary {
        family: f,
        model: model.clone(),
    });
    if total {
        PartialFn::total_builtin(rule)
    } else {
        PartialFn::builtin(rule)
    }
}

/// A strategy given by a closure.
pub struct FnStrategy<F>(pub F);

impl<F> BisequentialStrategy for FnStrategy<F>
where
    F: Fn(&mut Ask<'_>) -> Result<Nat, Stop> + Send + Sync,
{
    fn play(&self, ask: &mut Ask<'_>) -> Result<Nat, Stop> {
        (self.0)(ask)
    }
}

/// A family given by a closure.
pub struct FnFamily<F> {
    pub name: String,
    pub f: F,
}

impl<F> StrategyFamily for FnFamily<F>
where
    F: Fn(&Nat, &mut Ask<'_>) -> Result<Nat, Stop> + Send + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn play(&self, point: &Nat, ask: &mut Ask<'_>) -> Result<Nat, Stop> {
        (self.f)(point, ask)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic hash state fed with naturals.
#[derive(Clone, Copy, Debug)]
pub struct Mix(pub u64);

impl Mix {
    pub fn feed(self, n: &Nat) -> Mix {
        let mut h = splitmix(self.0 ^ 0x51);
        for d in n.iter_u64_digits() {
            h = splitmix(h ^ d);
        }
        Mix(splitmix(h ^ n.bits()))
    }

    pub fn feed_u64(self, n: u64) -> Mix {
        Mix(splitmix(self.0 ^ splitmix(n)))
    }

    pub fn below(self, n: u64) -> u64 {
        self.0 % n
    }
}

/// A pseudo-random strategy of bounded depth. Every move is a hash of the
/// seed, the point (for families) and the answers received so far. Query
/// points are fresh within each side's history.
#[derive(Clone, Debug)]
pub struct RandomStrategy {
    pub seed: u64,
    pub depth: usize,
    pub points: u64,
    /// Results are drawn from this list.
    pub results: Vec<Nat>,
    /// Whether a move may be `Stuck`.
    pub partial: bool,
}

impl RandomStrategy {
    fn run(&self, start: Mix, ask: &mut Ask<'_>) -> Result<Nat, Stop> {
        let mut h = start;
        let mut used: [Vec<u64>; 2] = [Vec::new(), Vec::new()];
        for step in 0..=self.depth {
            h = h.feed_u64(step as u64);
            let pick = h.below(10);
            if step == self.depth || pick < 3 {
                if self.partial && h.feed_u64(99).below(8) == 0 {
                    return Err(Stop::Stuck);
                }
                let i = h.feed_u64(7).below(self.results.len() as u64) as usize;
                return Ok(self.results[i].clone());
            }
            let side = if pick < 7 { 0 } else { 1 };
            let free: Vec<u64> = (0..self.points).filter(|p| !used[side].contains(p)).collect();
            if free.is_empty() {
                return Ok(self.results[0].clone());
            }
            let p = free[h.feed_u64(13).below(free.len() as u64) as usize];
            used[side].push(p);
            let s = if side == 0 { Side::First } else { Side::Second };
            let answer = ask(s, &Nat::from(p))?;
            h = h.feed(&answer);
        }
        unreachable!("the last step returns")
    }
}

impl BisequentialStrategy for RandomStrategy {
    fn play(&self, ask: &mut Ask<'_>) -> Result<Nat, Stop> {
        self.run(Mix(self.seed), ask)
    }
}

impl StrategyFamily for RandomStrategy {
    fn name(&self) -> String {
        format!("random-strategy({})", self.seed)
    }

    fn play(&self, point: &Nat, ask: &mut Ask<'_>) -> Result<Nat, Stop> {
        self.run(Mix(self.seed).feed(point), ask)
    }
}

/// A pseudo-random sequential family on one function: at each point it
/// asks at most `depth` fresh queries below `points` and returns one of
/// `results`.
#[derive(Clone, Debug)]
pub struct RandomUnary {
    pub seed: u64,
    pub depth: usize,
    pub points: u64,
    pub results: Vec<Nat>,
    pub partial: bool,
}

impl UnaryFamily for RandomUnary {
    fn name(&self) -> String {
        format!("random-unary({})", self.seed)
    }

    fn play(&self, point: &Nat, ask: &mut UnaryAsk<'_>) -> Result<Nat, Stop> {
        let mut h = Mix(self.seed).feed(point);
        let mut used = Vec::new();
        for step in 0..=self.depth {
            h = h.feed_u64(step as u64);
            if step == self.depth || h.below(10) < 5 {
                if self.partial && h.feed_u64(99).below(6) == 0 {
                    return Err(Stop::Stuck);
                }
                let i = h.feed_u64(7).below(self.results.len() as u64) as usize;
                return Ok(self.results[i].clone());
            }
            let free: Vec<u64> = (0..self.points).filter(|p| !used.contains(p)).collect();
            if free.is_empty() {
                break;
            }
            let p = free[h.feed_u64(13).below(free.len() as u64) as usize];
            used.push(p);
            let answer = ask(&Nat::from(p))?;
            h = h.feed(&answer);
        }
        Ok(self.results[0].clone())
    }
}
