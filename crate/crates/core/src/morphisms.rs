//! Applicative morphisms out of the combinator algebra, checked on finite
//! windows: realizers, deciders, representability and the preorder, the
//! embedding `γ(a) = {â}` with its realizers `ρ`, the retraction `ε`, the
//! adjunction on `T(A)`, and the realizer `F` of the factorization.
//!
//! A morphism here is a relation `a ↦ γ(a)` given by a finite window of
//! members, optionally with a membership test that decides more than the
//! window shows. All checks are refuters: a pass means no counterexample on
//! the sample.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basepca::kit::{lib_code, numeral};
use crate::basepca::{
    code_apply, code_apply_all, code_apply_in, compare_eval, kit, tuple, untuple, CodePca, Pca, TupleScheme,
};
use crate::coding::{CodingScheme, Nat};
use crate::error::Error;
use crate::k2::strategy::{Stop, UnaryAsk, UnaryFamily};
use crate::k2::{compile_unary, K2Pca, Model, ModelTag};
use crate::oracle::{make_bar, program, tuple_k2p};
use crate::partialfn::{Eval, Fuel, Halt, Outcome, PartialFn};
use crate::report::{CheckReport, Verdict};

pub type Window<E> = Arc<dyn Fn(&Nat) -> Vec<E> + Send + Sync>;
pub type Member<E> = Arc<dyn Fn(&Nat, &E, u64) -> Verdict + Send + Sync>;

/// A relation from codes of the base algebra to elements of `target`.
pub struct Morphism<P: Pca> {
    pub name: String,
    pub target: P,
    window: Window<P::Elem>,
    member: Option<Member<P::Elem>>,
    pub realizer: Option<P::Elem>,
    pub decider: Option<P::Elem>,
}

impl<P: Pca> Morphism<P> {
    pub fn new(name: impl Into<String>, target: P, window: Window<P::Elem>) -> Self {
        Morphism {
            name: name.into(),
            target,
            window,
            member: None,
            realizer: None,
            decider: None,
        }
    }

    /// Replaces "agrees with a window member" by a custom test.
    pub fn with_member(mut self, member: Member<P::Elem>) -> Self {
        self.member = Some(member);
        self
    }

    pub fn with_realizer(mut self, r: P::Elem) -> Self {
        self.realizer = Some(r);
        self
    }

    pub fn with_decider(mut self, d: P::Elem) -> Self {
        self.decider = Some(d);
        self
    }

    /// The sampled members of `γ(a)`; never empty.
    pub fn window(&self, a: &Nat) -> Vec<P::Elem> {
        let w = (self.window)(a);
        assert!(!w.is_empty(), "{}: empty window at {a}", self.name);
        w
    }

    /// `e ∈ γ(a)`, up to the target's observational equality.
    pub fn member(&self, a: &Nat, e: &P::Elem, fuel: u64) -> Verdict {
        if let Some(m) = &self.member {
            return m(a, e, fuel);
        }
        let mut inconclusive = false;
        let mut first = None;
        for w in self.window(a) {
            match self.target.compare(&Ok(e.clone()), &Ok(w), fuel) {
                Verdict::Pass => return Verdict::Pass,
                Verdict::Inconclusive => inconclusive = true,
                Verdict::Fail(m) => {
                    first.get_or_insert(m);
                }
            }
        }
        if inconclusive {
            Verdict::Inconclusive
        } else {
            Verdict::Fail(format!("not in {}({a}): {}", self.name, first.unwrap_or_default()))
        }
    }

    fn app(&self, f: &P::Elem, x: &P::Elem, fuel: u64) -> Eval<P::Elem> {
        self.target.app(f, x, &mut Fuel::new(fuel))
    }

    fn app2(&self, f: &P::Elem, x: &P::Elem, y: &P::Elem, fuel: u64) -> Eval<P::Elem> {
        let fx = self.app(f, x, fuel)?;
        self.app(&fx, y, fuel)
    }

    fn lands_in(&self, a: &Nat, e: Eval<P::Elem>, fuel: u64) -> Verdict {
        let defined = self.target.defined(&e, fuel);
        match e {
            Ok(e) => defined.and(|| self.member(a, &e, fuel)),
            Err(_) => defined,
        }
    }
}

/// `r b b′ ∈ γ(aa′)` for the sampled members of `γ(a)`, `γ(a′)`. Pairs
/// whose product is undefined are skipped.
pub fn check_realizer<P: Pca>(g: &Morphism<P>, r: &P::Elem, pairs: &[(Nat, Nat)], fuel: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("realizer for {}", g.name));
    for (a, a2) in pairs {
        let c = match code_apply(a, a2, fuel) {
            Outcome::Value(c) => c,
            Outcome::Undefined => {
                report.skipped += 1;
                continue;
            }
            Outcome::OutOfFuel => {
                report.record(Verdict::Inconclusive);
                continue;
            }
        };
        for b in g.window(a) {
            for b2 in g.window(a2) {
                let v = g.lands_in(&c, g.app2(r, &b, &b2, fuel), fuel);
                report.record(tag(v, || format!("({a}, {a2})")));
            }
        }
    }
    report
}

/// `γ ≼ γ′` witnessed by `s`: `s b ∈ γ′(a)` for `b ∈ γ(a)`, `a ∈ dom`.
pub fn check_preorder<P: Pca>(g: &Morphism<P>, g2: &Morphism<P>, s: &P::Elem, dom: &[Nat], fuel: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{} below {}", g.name, g2.name));
    for a in dom {
        for b in g.window(a) {
            let v = g2.lands_in(a, g.app(s, &b, fuel), fuel);
            report.record(tag(v, || format!("at {a}")));
        }
    }
    report
}

/// `d b = ⊤′` for `b ∈ γ(⊤)` and `d b = ⊥′` for `b ∈ γ(⊥)`, where `⊤`, `⊥`
/// are the kit's Booleans and `top`, `bot` the target's.
pub fn check_decider<P: Pca>(g: &Morphism<P>, d: &P::Elem, top: &P::Elem, bot: &P::Elem, fuel: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("decider for {}", g.name));
    let k = kit();
    for (a, want) in [(&k.top, top), (&k.bot, bot)] {
        for b in g.window(a) {
            let v = g.target.compare(&g.app(d, &b, fuel), &Ok(want.clone()), fuel);
            report.record(tag(v, || format!("on the image of {a}")));
        }
    }
    report
}

/// `r_f b ∈ γ(f(a))` for `b ∈ γ(a)`; points where `f` is undefined are
/// skipped.
pub fn check_represents<P: Pca>(
    g: &Morphism<P>,
    rf: &P::Elem,
    f: &PartialFn,
    points: &[Nat],
    fuel: u64,
) -> CheckReport {
    let mut report = CheckReport::new(format!("{} represents {}", g.name, f.describe()));
    for a in points {
        let c = match f.eval(a, fuel) {
            Outcome::Value(c) => c,
            Outcome::Undefined => {
                report.skipped += 1;
                continue;
            }
            Outcome::OutOfFuel => {
                report.record(Verdict::Inconclusive);
                continue;
            }
        };
        for b in g.window(a) {
            let v = g.lands_in(&c, g.app(rf, &b, fuel), fuel);
            report.record(tag(v, || format!("at {a}")));
        }
    }
    report
}

fn tag(v: Verdict, at: impl FnOnce() -> String) -> Verdict {
    match v {
        Verdict::Fail(m) => Verdict::Fail(format!("{}: {m}", at())),
        v => v,
    }
}

/// `â`, the constant function with value `a`.
pub fn gamma_hat(a: &Nat) -> PartialFn {
    let a = a.clone();
    PartialFn::total_fn(format!("^{a}"), move |_, _| Ok(a.clone()))
}

/// `K2(A)` or `K2^p(A)` over the kit's tuple coding.
pub fn tuple_model(tag: ModelTag) -> Model {
    match tag {
        ModelTag::K2P => tuple_k2p(),
        _ => Model::new(ModelTag::K2, Arc::new(TupleScheme)),
    }
}

/// Points of the tuple models: numerals and a few small values.
pub fn tuple_points(n: usize) -> Vec<Nat> {
    let k = kit();
    let mut pts = vec![k.k.clone(), k.s.clone(), k.i.clone(), k.top.clone(), k.bot.clone()];
    let mut i = 0;
    while pts.len() < n {
        pts.push(numeral(i));
        i += 1;
    }
    pts.truncate(n);
    pts
}

/// `γ(a) = {â}` into the tuple model of the given kind, observed on
/// `points`.
pub fn gamma_hat_morphism(tag: ModelTag, points: Vec<Nat>) -> Morphism<K2Pca> {
    let model = tuple_model(tag);
    let mut target = K2Pca::new(model);
    target.points = points;
    Morphism::new(format!("hat:{tag}"), target, Arc::new(|a: &Nat| vec![gamma_hat(a)]))
}

/// The identity on the base algebra.
pub fn identity_morphism() -> Morphism<CodePca> {
    Morphism::new("id", CodePca, Arc::new(|a: &Nat| vec![a.clone()]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoVariant {
    /// Total, for `K2(A)`.
    Total,
    /// Defined only on the protocol shapes, for `K2^p(A)`.
    Partial,
}

/// `ρ` with `ρâb̂ = \widehat{ab}`:
///
/// | probe | value |
/// |---|---|
/// | `⟨⟨x⟩⟩` | `⟨r,⟨q,q⟩⟩` |
/// | `⟨⟨x,b⟩⟩` | `⟨q,q⟩` |
/// | `⟨⟨x,b⟩,a⟩` | `⟨r,⟨r,ab⟩⟩`, or `⟨r,⟨q,q⟩⟩` when `ab` is undefined |
/// | otherwise | `⟨r,r⟩` |
///
/// The partial variant leaves `ab` undefined where it is and has no value
/// off the three shapes.
pub fn make_rho(variant: RhoVariant, scheme: Arc<dyn CodingScheme>) -> PartialFn {
    let name = match variant {
        RhoVariant::Total => "rho",
        RhoVariant::Partial => "rho_p",
    };
    let rule = move |probe: &Nat, fuel: &mut Fuel| -> Eval {
        fuel.tick()?;
        let s = scheme.as_ref();
        let enc = |items: &[Nat]| s.encode(items).map_err(|_| Halt::Undefined);
        let qq = || enc(&[s.q(), s.q()]);
        let off = || match variant {
            RhoVariant::Total => enc(&[s.r(), s.r()]),
            RhoVariant::Partial => Err(Halt::Undefined),
        };
        let items = s.decode(probe).unwrap_or_default();
        let inner = items.first().and_then(|m| s.decode(m)).unwrap_or_default();
        match (items.len(), inner.len()) {
            (1, 1) => enc(&[s.r(), qq()?]),
            (1, 2) => qq(),
            (2, 2) => match code_apply_in(&items[1], &inner[1], fuel) {
                Ok(c) => enc(&[s.r(), enc(&[s.r(), c])?]),
                Err(Halt::Undefined) if variant == RhoVariant::Total => enc(&[s.r(), qq()?]),
                Err(h) => Err(h),
            },
            _ => off(),
        }
    };
    match variant {
        RhoVariant::Total => PartialFn::total_fn(name, rule),
        RhoVariant::Partial => PartialFn::from_fn(name, rule),
    }
}

/// `ρ` for the tuple model of the given kind.
pub fn rho_for(tag: ModelTag) -> PartialFn {
    let variant = match tag {
        ModelTag::K2P => RhoVariant::Partial,
        _ => RhoVariant::Total,
    };
    make_rho(variant, Arc::new(TupleScheme))
}

struct FnUnary<F> {
    name: String,
    f: F,
}

impl<F> UnaryFamily for FnUnary<F>
where
    F: Fn(&Nat, &mut UnaryAsk<'_>) -> Result<Nat, Stop> + Send + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn play(&self, point: &Nat, ask: &mut UnaryAsk<'_>) -> Result<Nat, Stop> {
        (self.f)(point, ask)
    }
}

/// Reads its argument at the point and returns the answer. On constant
/// functions this is the identity, so it decides `γ(a) = {â}` against the
/// Booleans `\hat⊤`, `\hat⊥`.
pub fn read_point(model: &Model) -> PartialFn {
    compile_unary(
        Arc::new(FnUnary {
            name: "read".into(),
            f: |x: &Nat, ask: &mut UnaryAsk<'_>| ask(x),
        }),
        model,
    )
}

/// `r_f` with `r_f â = \widehat{f(a)}`: query the constant, apply `f`.
pub fn represent_fn(model: &Model, f: &PartialFn) -> PartialFn {
    let f = f.clone();
    compile_unary(
        Arc::new(FnUnary {
            name: format!("rep({})", f.describe()),
            f: move |x: &Nat, ask: &mut UnaryAsk<'_>| {
                let a = ask(x)?;
                f.eval_in(&a, &mut Fuel::new(1 << 20)).map_err(Stop::Halt)
            },
        }),
        model,
    )
}

/// `β ∈ ε(α)`: `βâ` agrees with `\widehat{α(a)}` on `points` for every
/// `a` in `dom` where `α` has a value.
pub fn epsilon_retract_member(
    model: &Model,
    beta: &PartialFn,
    alpha: &PartialFn,
    dom: &[Nat],
    points: &[Nat],
    fuel: u64,
) -> Verdict {
    let mut inconclusive = false;
    for a in dom {
        let c = match alpha.eval(a, fuel) {
            Outcome::Value(c) => c,
            Outcome::Undefined => continue,
            Outcome::OutOfFuel => {
                inconclusive = true;
                continue;
            }
        };
        let lhs = model.apply(beta, &gamma_hat(a));
        for x in points {
            match lhs.eval(x, fuel) {
                Outcome::Value(v) if v == c => {}
                Outcome::OutOfFuel => inconclusive = true,
                other => return Verdict::Fail(format!("at a = {a}, x = {x}: {other} vs {c}")),
            }
        }
    }
    if inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    }
}

/// In `K2^p` over the tuple coding, `b̄â = ā`: asked at `[x]`, query the
/// constant; asked at `[x, a]`, return `a·x`.
pub const ADJOINT: &str = "\\t. IFZ (PRED (LEN t)) (\\u. ASK FALSE) (\\u. RET (NTH1 t (HEAD t))) #0";

pub fn adjoint_element() -> Nat {
    program(ADJOINT)
}

/// The sampled `ε′(α) = {c | c̄ = α}`: candidates whose `c̄` agrees with
/// `α` on `points`.
pub fn epsilon_prime_window(alpha: &PartialFn, candidates: &[Nat], points: &[Nat], fuel: u64) -> Vec<Nat> {
    candidates
        .iter()
        .filter(|c| {
            let cb = make_bar(c);
            points.iter().all(|x| {
                let (u, v) = (cb.eval(x, fuel), alpha.eval(x, fuel));
                u != Outcome::OutOfFuel && u == v
            })
        })
        .cloned()
        .collect()
}

/// `γε′ ≼ id` on `T(A)`: `b̄â` agrees with `ā` at sampled `(a, x)`. Then
/// the converse on the explicit `α = \overline{SUCC}`: no sampled `s`
/// sends `α` into `γε′(α)`, i.e. makes `s̄α` a constant `ĉ` with `c̄ = α`.
pub fn epsilon_prime_adjunction(samples: usize, seed: u64, fuel: u64) -> CheckReport {
    let mut report = CheckReport::new("adjunction on T(A)");
    let model = tuple_k2p();
    let bbar = make_bar(&adjoint_element());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = tuple_points(6);
    for _ in 0..samples {
        let a = CodePca.sample(&mut rng);
        let x = CodePca.sample(&mut rng);
        let lhs = model.eval_app(&bbar, &gamma_hat(&a), &x, &mut Fuel::new(fuel));
        let rhs = code_apply_in(&a, &x, &mut Fuel::new(fuel));
        report.record(tag(compare_eval(&lhs, &rhs), || format!("at a = {a}, x = {x}")));
    }

    let succ = program("SUCC");
    let alpha = make_bar(&succ);
    let candidates: Vec<Nat> = (0..samples)
        .map(|_| CodePca.sample(&mut rng))
        .chain([succ.clone(), kit().i.clone()])
        .collect();
    let window = epsilon_prime_window(&alpha, &candidates, &pts, fuel);
    report.note(format!(
        "sampled window of epsilon' at bar(SUCC): {} codes",
        window.len()
    ));
    for s in &candidates {
        let image = model.apply(&make_bar(s), &alpha);
        let hit = window
            .iter()
            .any(|c| pts.iter().all(|x| image.eval(x, fuel) == Outcome::Value(c.clone())));
        report.record(if hit {
            Verdict::Fail(format!("{s} witnesses the converse on the sample"))
        } else {
            Verdict::Pass
        });
    }
    report
}

/// The elements realizing a morphism `δ` into the base algebra, as used to
/// build `F`: application realizer `r`, decider `d`, projections `π0`,
/// `π1` of a tagged value, `c` with `c v u` extending the history `v` by
/// `u`, and `s` with `s x = [x]`.
#[derive(Clone, Debug)]
pub struct DeltaData {
    pub r: Nat,
    pub d: Nat,
    pub pi0: Nat,
    pub pi1: Nat,
    pub c: Nat,
    pub s: Nat,
}

impl DeltaData {
    /// `δ` the identity. Tagged values are the tuples `[⊥, e]` and
    /// `[⊤, g]`, so the projections are `HEAD` and `NTH1`.
    pub fn identity() -> Self {
        DeltaData {
            r: program("\\x y. x y"),
            d: kit().i.clone(),
            pi0: kit().head.clone(),
            pi1: lib_code("NTH1"),
            c: kit().append.clone(),
            s: kit().single.clone(),
        }
    }
}

const F_TEMPLATE: &str =
    "\\R D P0 P1 C. FIX (\\f a b v. (\\w. D (R P0 w) (\\u. R P1 w) (\\u. f a b (C v (R b (R P1 w)))) #0) (a v))";

/// `F` with `F a b v ≃ if d(rπ0(av)) then rπ1(av) else F a b (c v (r b (rπ1(av))))`.
pub fn build_f_realizer(d: &DeltaData) -> Result<Nat, Error> {
    let template = crate::basepca::compile_program(F_TEMPLATE)?;
    let args = [d.r.clone(), d.d.clone(), d.pi0.clone(), d.pi1.clone(), d.c.clone()];
    code_apply_all(&template, &args, &mut Fuel::new(10_000)).map_err(|_| Error::Parse("F does not reduce".into()))
}

fn ap(f: &Nat, args: &[Nat], fuel: u64) -> Eval {
    code_apply_all(f, args, &mut Fuel::new(fuel))
}

/// The right-hand side of `F`'s equation, unfolded once by hand.
pub fn f_unfold(d: &DeltaData, f: &Nat, a: &Nat, b: &Nat, v: &Nat, fuel: u64) -> Eval {
    let k = kit();
    let w = ap(a, std::slice::from_ref(v), fuel)?;
    let test = ap(&d.d, &[ap(&d.r, &[d.pi0.clone(), w.clone()], fuel)?], fuel)?;
    let g = || ap(&d.r, &[d.pi1.clone(), w.clone()], fuel);
    if test == k.top {
        g()
    } else if test == k.bot {
        let u = ap(&d.r, &[b.clone(), g()?], fuel)?;
        let v2 = ap(&d.c, &[v.clone(), u], fuel)?;
        ap(f, &[a.clone(), b.clone(), v2], fuel)
    } else {
        Err(Halt::Undefined)
    }
}

/// `F a b v` against [`f_unfold`] on each sample.
pub fn check_f_recursion(d: &DeltaData, f: &Nat, samples: &[(Nat, Nat, Nat)], fuel: u64) -> CheckReport {
    let mut report = CheckReport::new("F recursion");
    for (a, b, v) in samples {
        let lhs = ap(f, &[a.clone(), b.clone(), v.clone()], fuel);
        let rhs = f_unfold(d, f, a, b, v, fuel);
        report.record(tag(compare_eval(&lhs, &rhs), || format!("at ({a}, {b}, {v})")));
    }
    report
}

/// Along the interrogation of `β = b̄` by `α = ā` at `y` (with `δ` the
/// identity, so `v` is the history itself): `F a b (s y) ≃ F a b v` for
/// each history `v` of length at most `max_len`, and at the result step
/// `F a b v = rπ1(av)`, which is also `(āb̄)(y)` in `K2^p`.
pub fn claim_check(d: &DeltaData, f: &Nat, a: &Nat, b: &Nat, y: &Nat, max_len: usize, fuel: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("claim at {y}"));
    let k = kit();
    let start = match ap(&d.s, std::slice::from_ref(y), fuel) {
        Ok(v) => v,
        Err(h) => {
            report.record(halt_verdict(h, "s y"));
            return report;
        }
    };
    let base = ap(f, &[a.clone(), b.clone(), start], fuel);
    if base == Err(Halt::OutOfFuel) {
        report.record(Verdict::Inconclusive);
        return report;
    }
    let mut history = vec![y.clone()];
    while history.len() <= max_len {
        let Ok(v) = tuple(&history) else {
            report.record(Verdict::Fail("history is not a tuple".into()));
            break;
        };
        let here = ap(f, &[a.clone(), b.clone(), v.clone()], fuel);
        report.record(tag(compare_eval(&base, &here), || {
            format!("length {}", history.len() - 1)
        }));
        let w = match ap(a, std::slice::from_ref(&v), fuel) {
            Ok(w) => w,
            Err(h) => {
                report.record(halt_verdict(h, "a v"));
                break;
            }
        };
        match untuple(&w).as_deref() {
            Some([t, e]) if *t == k.bot => match ap(b, std::slice::from_ref(e), fuel) {
                Ok(u) => history.push(u),
                Err(h) => {
                    report.record(halt_verdict(h, "b e"));
                    break;
                }
            },
            Some([t, _]) if *t == k.top => {
                let g = ap(&d.r, &[d.pi1.clone(), w.clone()], fuel);
                report.record(tag(compare_eval(&here, &g), || "result step".into()));
                let direct = tuple_k2p().eval_app(&make_bar(a), &make_bar(b), y, &mut Fuel::new(fuel));
                report.record(tag(compare_eval(&g, &direct), || "against the interrogation".into()));
                report.note(format!("result after {} queries", history.len() - 1));
                return report;
            }
            _ => {
                report.record(Verdict::Fail(format!("a answers {w}, not a tagged value")));
                return report;
            }
        }
    }
    report.note(format!("no result within {max_len} queries"));
    report
}

fn halt_verdict(h: Halt, what: &str) -> Verdict {
    match h {
        Halt::OutOfFuel => Verdict::Inconclusive,
        Halt::Undefined => Verdict::Fail(format!("{what} undefined")),
    }
}

/// `εγ(a)`: the codes `b` with `b ξ = a` for the sampled `ξ`. The window
/// holds `k a`.
pub fn epsilon_gamma_morphism(xis: Vec<Nat>) -> Morphism<CodePca> {
    let window: Window<Nat> = Arc::new(|a: &Nat| {
        let ka = code_apply(&kit().k, a, 1000).value().cloned().expect("k a is a value");
        vec![ka]
    });
    let member: Member<Nat> = Arc::new(move |a: &Nat, b: &Nat, fuel: u64| {
        let mut verdict = Verdict::Pass;
        for xi in &xis {
            match code_apply(b, xi, fuel) {
                Outcome::Value(v) if v == *a => {}
                Outcome::OutOfFuel => verdict = Verdict::Inconclusive,
                other => return Verdict::Fail(format!("{b} at {xi}: {other}")),
            }
        }
        verdict
    });
    Morphism::new("eps.hat", CodePca, window).with_member(member)
}

/// The witnesses of `εγ ≅ id`: `λb. b ξ` one way, `λb x. b` the other.
pub fn epsilon_gamma_witnesses(xi: &Nat) -> (Nat, Nat) {
    let apply_xi = code_apply_all(&program("\\z b. b z"), std::slice::from_ref(xi), &mut Fuel::new(1000))
        .expect("partial application");
    (apply_xi, kit().k.clone())
}
