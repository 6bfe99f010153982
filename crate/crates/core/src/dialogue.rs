//! Interrogations: a function answers queries from a history of answers
//! until it produces a result. Sequential trees are the explicit form of
//! the same behaviour, and the two forms convert into each other.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::coding::{CodingScheme, Nat, Tagged};
use crate::partialfn::{Eval, Fuel, Halt, Outcome, PartialFn, Rule};

/// One answered query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub query: Nat,
    pub answer: Nat,
}

/// A recorded dialogue and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub point: Option<Nat>,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.point {
            writeln!(f, "point {p}")?;
        }
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {i}: ask {} -> {}", s.query, s.answer)?;
        }
        write!(f, "{}", self.outcome)
    }
}

/// Codes a history. A history too wide for the coding window exhausts the
/// evaluation's resources like running out of fuel does.
pub fn encode_history(scheme: &dyn CodingScheme, items: &[Nat]) -> Eval {
    scheme.encode(items).map_err(|_| Halt::OutOfFuel)
}

/// The dialogue loop with both sides given as closures. `point`, when
/// present, is prefixed to every probed history.
pub fn dialogue_in(
    scheme: &dyn CodingScheme,
    point: Option<&Nat>,
    alpha: &mut dyn FnMut(&Nat, &mut Fuel) -> Eval,
    beta: &mut dyn FnMut(&Nat, &mut Fuel) -> Eval,
    fuel: &mut Fuel,
    steps: &mut Vec<Step>,
) -> Eval {
    let mut history: Vec<Nat> = point.into_iter().cloned().collect();
    loop {
        fuel.tick()?;
        let v = alpha(&encode_history(scheme, &history)?, fuel)?;
        match scheme.untag(&v) {
            Tagged::Query(b) => {
                let a = beta(&b, fuel)?;
                steps.push(Step {
                    query: b,
                    answer: a.clone(),
                });
                history.push(a);
            }
            Tagged::Result(c) => return Ok(c),
            Tagged::Neither => return Err(Halt::Undefined),
        }
    }
}

/// `φ^a(α, β)` on a shared budget, without a trace.
pub fn interrogate_in(
    alpha: &PartialFn,
    beta: &PartialFn,
    scheme: &dyn CodingScheme,
    point: Option<&Nat>,
    fuel: &mut Fuel,
) -> Eval {
    let mut steps = Vec::new();
    dialogue_in(
        scheme,
        point,
        &mut |x, f| alpha.eval_in(x, f),
        &mut |x, f| beta.eval_in(x, f),
        fuel,
        &mut steps,
    )
}

fn traced(alpha: &PartialFn, beta: &PartialFn, scheme: &dyn CodingScheme, point: Option<&Nat>, fuel: u64) -> Trace {
    let mut steps = Vec::new();
    let out = dialogue_in(
        scheme,
        point,
        &mut |x, f| alpha.eval_in(x, f),
        &mut |x, f| beta.eval_in(x, f),
        &mut Fuel::new(fuel),
        &mut steps,
    );
    Trace {
        point: point.cloned(),
        steps,
        outcome: Outcome::from_eval(out),
    }
}

/// `φ(α, β)`.
pub fn interrogate(alpha: &PartialFn, beta: &PartialFn, scheme: &dyn CodingScheme, fuel: u64) -> Trace {
    traced(alpha, beta, scheme, None, fuel)
}

/// `φ^a(α, β)`: the point `a` heads every probed history.
pub fn interrogate_at(alpha: &PartialFn, beta: &PartialFn, scheme: &dyn CodingScheme, a: &Nat, fuel: u64) -> Trace {
    traced(alpha, beta, scheme, Some(a), fuel)
}

/// Replays a trace against `α` and `β`: every step must be a query of `α`
/// answered by `β`, and a result must be what `α` returns at the end.
pub fn validate_trace(
    trace: &Trace,
    alpha: &PartialFn,
    beta: &PartialFn,
    scheme: &dyn CodingScheme,
    fuel: u64,
) -> bool {
    let mut history: Vec<Nat> = trace.point.iter().cloned().collect();
    for s in &trace.steps {
        let Ok(probe) = encode_history(scheme, &history) else {
            return false;
        };
        let Outcome::Value(v) = alpha.eval(&probe, fuel) else {
            return false;
        };
        if scheme.untag(&v) != Tagged::Query(s.query.clone()) {
            return false;
        }
        if beta.eval(&s.query, fuel) != Outcome::Value(s.answer.clone()) {
            return false;
        }
        history.push(s.answer.clone());
    }
    match &trace.outcome {
        Outcome::Value(c) => match encode_history(scheme, &history).map(|p| alpha.eval(&p, fuel)) {
            Ok(Outcome::Value(v)) => scheme.untag(&v) == Tagged::Result(c.clone()),
            _ => false,
        },
        _ => true,
    }
}

/// A finite sequential tree with leaf labels. `Branch` asks the oracle at
/// `point`; the answer selects an explicit child, else the `otherwise`
/// child when branching is total there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqTree {
    Leaf(Option<Nat>),
    Branch {
        point: Nat,
        explicit: BTreeMap<Nat, SeqTree>,
        otherwise: Option<Box<SeqTree>>,
    },
    /// A node left unexplored (depth bound or fuel).
    Cut,
}

impl SeqTree {
    pub fn leaf(v: u64) -> SeqTree {
        SeqTree::Leaf(Some(Nat::from(v)))
    }

    pub fn branch<I: IntoIterator<Item = (u64, SeqTree)>>(point: u64, children: I) -> SeqTree {
        SeqTree::Branch {
            point: Nat::from(point),
            explicit: children.into_iter().map(|(a, t)| (Nat::from(a), t)).collect(),
            otherwise: None,
        }
    }

    fn child(&self, answer: &Nat) -> Option<&SeqTree> {
        match self {
            SeqTree::Branch {
                explicit, otherwise, ..
            } => explicit.get(answer).or(otherwise.as_deref()),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SeqTree::Branch {
                explicit, otherwise, ..
            } => {
                1 + explicit
                    .values()
                    .chain(otherwise.as_deref())
                    .map(SeqTree::depth)
                    .max()
                    .unwrap_or(0)
            }
            _ => 0,
        }
    }

    /// The tree as seen through answers from `alphabet` down to `depth`
    /// branchings: total branching is unfolded, dead ends become unlabeled
    /// leaves and deeper branchings are cut.
    pub fn restrict(&self, alphabet: &[Nat], depth: usize) -> SeqTree {
        match self {
            SeqTree::Branch { point, .. } => {
                if depth == 0 {
                    return SeqTree::Cut;
                }
                let explicit = alphabet
                    .iter()
                    .map(|a| {
                        let sub = match self.child(a) {
                            Some(t) => t.restrict(alphabet, depth - 1),
                            None => SeqTree::Leaf(None),
                        };
                        (a.clone(), sub)
                    })
                    .collect();
                SeqTree::Branch {
                    point: point.clone(),
                    explicit,
                    otherwise: None,
                }
            }
            other => other.clone(),
        }
    }
}

/// `Φ_{T,F}(α)` and the path of answered queries.
pub fn eval_tree(tree: &SeqTree, oracle: &PartialFn, fuel: u64) -> (Outcome, Vec<Step>) {
    let mut fuel = Fuel::new(fuel);
    let mut path = Vec::new();
    let mut node = tree;
    let out = loop {
        match node {
            SeqTree::Leaf(Some(v)) => break Ok(v.clone()),
            SeqTree::Leaf(None) => break Err(Halt::Undefined),
            SeqTree::Cut => break Err(Halt::OutOfFuel),
            SeqTree::Branch { point, .. } => {
                if let Err(h) = fuel.tick() {
                    break Err(h);
                }
                let a = match oracle.eval_in(point, &mut fuel) {
                    Ok(a) => a,
                    Err(h) => break Err(h),
                };
                path.push(Step {
                    query: point.clone(),
                    answer: a.clone(),
                });
                match node.child(&a) {
                    Some(next) => node = next,
                    None => break Err(Halt::Undefined),
                }
            }
        }
    };
    (Outcome::from_eval(out), path)
}

struct TreeRule {
    tree: Arc<SeqTree>,
    scheme: Arc<dyn CodingScheme>,
    pointed: bool,
}

impl TreeRule {
    fn respond(&self, answers: &[Nat]) -> Nat {
        let s = &self.scheme;
        let off_protocol = || s.tag_query(&s.q()).expect("marker tag");
        let mut node = self.tree.as_ref();
        let mut rest = answers;
        loop {
            match node {
                SeqTree::Branch { point, .. } => match rest.split_first() {
                    None => return s.tag_query(point).expect("query tag"),
                    Some((a, tail)) => match node.child(a) {
                        Some(next) => {
                            node = next;
                            rest = tail;
                        }
                        None => return s.neither(),
                    },
                },
                _ if !rest.is_empty() => return off_protocol(),
                SeqTree::Leaf(Some(v)) => return s.tag_result(v).expect("result tag"),
                SeqTree::Leaf(None) | SeqTree::Cut => return s.neither(),
            }
        }
    }
}

impl Rule for TreeRule {
    fn name(&self) -> String {
        format!("tree(depth {})", self.tree.depth())
    }

    fn apply(&self, x: &Nat, fuel: &mut Fuel) -> Eval {
        fuel.tick()?;
        let s = &self.scheme;
        let Some(mut items) = s.decode(x) else {
            return Ok(s.tag_query(&s.q()).expect("marker tag"));
        };
        if self.pointed {
            if items.is_empty() {
                return Ok(s.tag_query(&s.q()).expect("marker tag"));
            }
            items.remove(0);
        }
        Ok(self.respond(&items))
    }
}

/// A total `α` with `φ_α = Φ_{T,F}`. Internal nodes answer `⟨q, c⟩`,
/// labeled leaves `⟨r, F(s)⟩`; histories leaving the tree are answered
/// with a value that is neither tag, and off-protocol codes with `⟨q,q⟩`.
pub fn tree_to_fn(tree: &SeqTree, scheme: Arc<dyn CodingScheme>) -> PartialFn {
    PartialFn::total_builtin(Arc::new(TreeRule {
        tree: Arc::new(tree.clone()),
        scheme,
        pointed: false,
    }))
}

/// As [`tree_to_fn`], for probes that carry a point in front of the
/// history; the point is ignored.
pub fn tree_to_fn_pointed(tree: &SeqTree, scheme: Arc<dyn CodingScheme>) -> PartialFn {
    PartialFn::total_builtin(Arc::new(TreeRule {
        tree: Arc::new(tree.clone()),
        scheme,
        pointed: true,
    }))
}

/// Explores the interrogations of `α` with answers drawn from `alphabet`,
/// up to `depth` branchings. A repeated query is answered from the path
/// instead of branching again.
pub fn fn_to_tree(alpha: &PartialFn, scheme: &dyn CodingScheme, depth: usize, alphabet: &[Nat], fuel: u64) -> SeqTree {
    explore(alpha, scheme, depth, alphabet, fuel, &mut Vec::new(), &mut Vec::new())
}

fn explore(
    alpha: &PartialFn,
    scheme: &dyn CodingScheme,
    depth: usize,
    alphabet: &[Nat],
    fuel: u64,
    history: &mut Vec<Nat>,
    asked: &mut Vec<(Nat, Nat)>,
) -> SeqTree {
    let mut forced = 0;
    let tree = loop {
        let probe = match scheme.encode(history) {
            Ok(p) => p,
            Err(_) => break SeqTree::Cut,
        };
        let v = match alpha.eval(&probe, fuel) {
            Outcome::Value(v) => v,
            Outcome::Undefined => break SeqTree::Leaf(None),
            Outcome::OutOfFuel => break SeqTree::Cut,
        };
        match scheme.untag(&v) {
            Tagged::Result(c) => break SeqTree::Leaf(Some(c)),
            Tagged::Neither => break SeqTree::Leaf(None),
            Tagged::Query(b) => {
                if let Some((_, a)) = asked.iter().find(|(p, _)| *p == b) {
                    // a repeat is not a new node; bound the run of repeats
                    if forced > depth + alphabet.len() {
                        break SeqTree::Cut;
                    }
                    forced += 1;
                    history.push(a.clone());
                    continue;
                }
                if depth == 0 {
                    break SeqTree::Cut;
                }
                let mut explicit = BTreeMap::new();
                for a in alphabet {
                    history.push(a.clone());
                    asked.push((b.clone(), a.clone()));
                    let sub = explore(alpha, scheme, depth - 1, alphabet, fuel, history, asked);
                    asked.pop();
                    history.pop();
                    explicit.insert(a.clone(), sub);
                }
                break SeqTree::Branch {
                    point: b,
                    explicit,
                    otherwise: None,
                };
            }
        }
    };
    history.truncate(history.len() - forced);
    tree
}

/// A random tree of at most `depth` branchings over `alphabet`. Branch
/// points are fresh along every path and drawn below `points`. Some
/// children are missing and some leaves unlabeled, so undefined outcomes
/// occur.
pub fn random_tree(rng: &mut ChaCha8Rng, depth: usize, alphabet: &[Nat], points: u64) -> SeqTree {
    random_tree_at(rng, depth, alphabet, points, &mut Vec::new())
}

fn random_tree_at(rng: &mut ChaCha8Rng, depth: usize, alphabet: &[Nat], points: u64, used: &mut Vec<u64>) -> SeqTree {
    if depth == 0 || used.len() as u64 >= points || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.9) {
            SeqTree::leaf(rng.gen_range(0..10))
        } else {
            SeqTree::Leaf(None)
        };
    }
    let point = loop {
        let p = rng.gen_range(0..points);
        if !used.contains(&p) {
            break p;
        }
    };
    used.push(point);
    let mut explicit = BTreeMap::new();
    for a in alphabet {
        if rng.gen_bool(0.9) {
            explicit.insert(a.clone(), random_tree_at(rng, depth - 1, alphabet, points, used));
        }
    }
    used.pop();
    SeqTree::Branch {
        point: Nat::from(point),
        explicit,
        otherwise: None,
    }
}
