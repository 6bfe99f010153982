//! The models `K2(A)` and `K2^p(A)` under interrogation application, and
//! Kleene's original `K2` under sequential reading.

pub mod machine;
pub mod orig;
pub mod strategy;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::basepca::Pca;
use crate::coding::{nat, CantorScheme, CodingScheme, CompactScheme, Nat};
use crate::dialogue::{self, Trace};
use crate::error::Error;
use crate::partialfn::{extend_total, Eval, Fuel, Outcome, PartialFn};
use crate::report::Verdict;

pub use machine::{make_k, make_s, make_sigma, s_machine};
pub use orig::{force_b, in_counterexample_b, make_k_prime_s_prime};
pub use strategy::{compile_strategy, compile_strategy_family, compile_unary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelTag {
    K2,
    K2P,
    K2Orig,
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelTag::K2 => "k2",
            ModelTag::K2P => "k2p",
            ModelTag::K2Orig => "k2orig",
        })
    }
}

impl FromStr for ModelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "k2" => Ok(ModelTag::K2),
            "k2p" => Ok(ModelTag::K2P),
            "k2orig" => Ok(ModelTag::K2Orig),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// A model: its protocol and the coding it interrogates through.
#[derive(Clone, Debug)]
pub struct Model {
    pub tag: ModelTag,
    pub scheme: Arc<dyn CodingScheme>,
}

impl Model {
    pub fn new(tag: ModelTag, scheme: Arc<dyn CodingScheme>) -> Self {
        Model { tag, scheme }
    }

    pub fn k2() -> Self {
        Self::new(ModelTag::K2, Arc::new(CantorScheme::new()))
    }

    pub fn k2p() -> Self {
        Self::new(ModelTag::K2P, Arc::new(CantorScheme::new()))
    }

    /// Sequential reading re-codes the whole prefix at every step, so this
    /// model uses the compact coding.
    pub fn k2orig() -> Self {
        Self::new(ModelTag::K2Orig, Arc::new(CompactScheme::new()))
    }

    pub fn for_tag(tag: ModelTag) -> Self {
        match tag {
            ModelTag::K2 => Self::k2(),
            ModelTag::K2P => Self::k2p(),
            ModelTag::K2Orig => Self::k2orig(),
        }
    }

    /// `αβ`. Never fails; only its values at points can be missing.
    pub fn apply(&self, alpha: &PartialFn, beta: &PartialFn) -> PartialFn {
        PartialFn::app(self.clone(), alpha.clone(), beta.clone())
    }

    /// `(αβ)(x)` on a shared budget.
    pub fn eval_app(&self, alpha: &PartialFn, beta: &PartialFn, x: &Nat, fuel: &mut Fuel) -> Eval {
        match self.tag {
            ModelTag::K2Orig => orig::orig_apply_in(
                self.scheme.as_ref(),
                &mut |c, f| alpha.eval_in(c, f),
                &mut |n, f| beta.eval_in(n, f),
                x,
                fuel,
                &mut Vec::new(),
            ),
            _ => dialogue::interrogate_in(alpha, beta, self.scheme.as_ref(), Some(x), fuel),
        }
    }

    /// `(αβ)(x)` with every query of `β` recorded.
    pub fn trace(&self, alpha: &PartialFn, beta: &PartialFn, x: &Nat, fuel: u64) -> Trace {
        match self.tag {
            ModelTag::K2Orig => {
                let mut steps = Vec::new();
                let out = orig::orig_apply_in(
                    self.scheme.as_ref(),
                    &mut |c, f| alpha.eval_in(c, f),
                    &mut |n, f| beta.eval_in(n, f),
                    x,
                    &mut Fuel::new(fuel),
                    &mut steps,
                );
                Trace {
                    point: Some(x.clone()),
                    steps,
                    outcome: Outcome::from_eval(out),
                }
            }
            _ => dialogue::interrogate_at(alpha, beta, self.scheme.as_ref(), x, fuel),
        }
    }

    /// The named combinators `k s sigma kprime sprime`.
    pub fn combinator(&self, name: &str) -> Option<PartialFn> {
        match (name, self.tag) {
            ("k", _) => Some(make_k(self)),
            ("s", _) => Some(make_s(self)),
            ("sigma", ModelTag::K2 | ModelTag::K2P) => Some(make_sigma(self)),
            ("kprime", ModelTag::K2Orig) => Some(make_k_prime_s_prime(self).0),
            ("sprime", ModelTag::K2Orig) => Some(make_k_prime_s_prime(self).1),
            _ => None,
        }
    }

    /// Values a random element returns: plain naturals and the tagged
    /// shapes that interrogations react to.
    pub fn result_pool(&self) -> Vec<Nat> {
        let s = self.scheme.as_ref();
        let mut pool: Vec<Nat> = (0..4).map(nat).collect();
        for c in 0..3 {
            pool.push(s.tag_query(&nat(c)).expect("small tag"));
            pool.push(s.tag_result(&nat(c)).expect("small tag"));
        }
        let q1 = s.tag_query(&nat(1)).expect("small tag");
        let r2 = s.tag_result(&nat(2)).expect("small tag");
        pool.push(s.tag_result(&q1).expect("small tag"));
        pool.push(s.tag_result(&r2).expect("small tag"));
        pool
    }

    /// A random element of the test corpus: compiled sequential families,
    /// constants, `succ`, and finite tables (totalized in the total models).
    pub fn sample_element(&self, rng: &mut ChaCha8Rng) -> PartialFn {
        if self.tag == ModelTag::K2Orig {
            return orig::random_total(rng);
        }
        let pool = self.result_pool();
        let partial = self.tag == ModelTag::K2P;
        match rng.gen_range(0..10) {
            0..=4 => compile_unary(
                Arc::new(strategy::RandomUnary {
                    seed: rng.gen(),
                    depth: rng.gen_range(0..3),
                    points: 4,
                    results: pool,
                    partial,
                }),
                self,
            ),
            5 => {
                let c = self.scheme.tag_result(pool.choose(rng).unwrap()).expect("small tag");
                PartialFn::total_fn(format!("const:{c}"), move |_, _| Ok(c.clone()))
            }
            6 => PartialFn::named_builtin("succ").expect("builtin"),
            7 if partial => PartialFn::empty(),
            _ => {
                let keys: Vec<Nat> = (0..6)
                    .map(nat)
                    .chain((0..4).map(|a| self.scheme.encode(&[nat(a)]).expect("small code")))
                    .collect();
                let n = rng.gen_range(1..=keys.len());
                let table = PartialFn::table(
                    keys.choose_multiple(rng, n)
                        .map(|k| (k.clone(), pool.choose(rng).unwrap().clone())),
                );
                if partial {
                    table
                } else {
                    let c = pool.choose(rng).unwrap();
                    extend_total(&table, self.scheme.tag_result(c).expect("small tag"))
                }
            }
        }
    }
}

/// Which elements the axiom suites draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corpus {
    Standard,
    /// Members of `B`, with `k′, s′` as combinators.
    B,
}

/// A model as a [`Pca`] on its function elements. Equality of elements is
/// agreement on `points`.
pub struct K2Pca {
    pub model: Model,
    pub corpus: Corpus,
    pub points: Vec<Nat>,
    k: PartialFn,
    s: PartialFn,
}

impl K2Pca {
    pub fn new(model: Model) -> Self {
        let (k, s) = (make_k(&model), make_s(&model));
        K2Pca {
            model,
            corpus: Corpus::Standard,
            points: [0, 1, 2, 3, 5].map(nat).to_vec(),
            k,
            s,
        }
    }

    /// `B` inside Kleene's original model.
    pub fn b_subpca() -> Self {
        let model = Model::k2orig();
        let (k, s) = make_k_prime_s_prime(&model);
        // 0, 1 and 3 are E_0, E_1 and E_2
        let points = (0..6).map(nat).collect();
        K2Pca {
            model,
            corpus: Corpus::B,
            points,
            k,
            s,
        }
    }

    fn pointwise(&self, f: &PartialFn, g: &PartialFn, fuel: u64) -> Verdict {
        let mut inconclusive = false;
        for x in &self.points {
            let (a, b) = (f.eval(x, fuel), g.eval(x, fuel));
            if a == Outcome::OutOfFuel || b == Outcome::OutOfFuel {
                inconclusive = true;
            } else if a != b {
                return Verdict::Fail(format!("at {x}: {a} vs {b}"));
            }
        }
        if inconclusive {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }
}

impl Pca for K2Pca {
    type Elem = PartialFn;

    fn name(&self) -> String {
        match self.corpus {
            Corpus::Standard => self.model.tag.to_string(),
            Corpus::B => format!("{} B", self.model.tag),
        }
    }

    fn k(&self) -> PartialFn {
        self.k.clone()
    }

    fn s(&self) -> PartialFn {
        self.s.clone()
    }

    fn app(&self, a: &PartialFn, b: &PartialFn, _fuel: &mut Fuel) -> Eval<PartialFn> {
        Ok(self.model.apply(a, b))
    }

    /// In `K2^p` every application is an element. Otherwise an element must
    /// be total, observed on the points.
    fn defined(&self, e: &Eval<PartialFn>, fuel: u64) -> Verdict {
        let f = match e {
            Ok(f) => f,
            Err(h) => return Verdict::Fail(format!("application failed: {h:?}")),
        };
        if self.model.tag == ModelTag::K2P {
            return Verdict::Pass;
        }
        let mut verdict = Verdict::Pass;
        for x in &self.points {
            match f.eval(x, fuel) {
                Outcome::Value(_) => {}
                Outcome::OutOfFuel => verdict = Verdict::Inconclusive,
                Outcome::Undefined => return Verdict::Fail(format!("{} undefined at {x}", f.describe())),
            }
        }
        verdict
    }

    fn compare(&self, x: &Eval<PartialFn>, y: &Eval<PartialFn>, fuel: u64) -> Verdict {
        match (x, y) {
            (Ok(f), Ok(g)) => self.pointwise(f, g, fuel),
            (Err(a), Err(b)) if a == b => Verdict::Pass,
            _ => Verdict::Fail(format!("{x:?} vs {y:?}")),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> PartialFn {
        match self.corpus {
            Corpus::Standard => self.model.sample_element(rng),
            Corpus::B => orig::random_b(&self.model, rng),
        }
    }
}
