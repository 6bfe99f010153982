//! The `pca` front end: a line-oriented session and the batch commands
//! built on it.
//!
//! Exit statuses: 0 success, 1 property failure, 2 fuel exhausted (or a
//! check with only inconclusive cases), 3 usage or parse error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::basepca::kit::numeral_value;
use crate::basepca::{compile_program, Term, Value};
use crate::coding::{nat, Nat};
use crate::dialogue::{fn_to_tree, SeqTree, Trace};
use crate::k2::{Model, ModelTag};
use crate::oracle::{numeral_lift, OracleModel};
use crate::par::Exec;
use crate::partialfn::{parse_oracle, Outcome, PartialFn};
use crate::suites::{run_suite, SuiteConfig};

pub const OK: i32 = 0;
pub const FAILED: i32 = 1;
pub const NO_FUEL: i32 = 2;
pub const USAGE: i32 = 3;

/// The algebra a session applies elements in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SessionModel {
    K2(ModelTag),
    /// `A[f]` with `f` the session oracle.
    Oracle,
}

impl std::str::FromStr for SessionModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "oracle" => Ok(SessionModel::Oracle),
            tag => tag
                .parse::<ModelTag>()
                .map(SessionModel::K2)
                .map_err(|_| format!("unknown model `{tag}` (expected k2, k2p, k2orig or oracle)")),
        }
    }
}

/// A named value: a function, or a program of the combinator algebra.
#[derive(Clone, Debug)]
pub enum Val {
    Fn(PartialFn),
    Prog(Nat),
}

/// One command's printed output and exit status.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reply {
    pub out: String,
    pub status: i32,
}

impl Reply {
    fn ok(out: String) -> Reply {
        Reply { out, status: OK }
    }

    fn usage(msg: impl Into<String>) -> Reply {
        Reply {
            out: format!("error: {}", msg.into()),
            status: USAGE,
        }
    }
}

pub struct Session {
    pub model: SessionModel,
    pub env: BTreeMap<String, Val>,
    pub fuel: u64,
    pub seed: u64,
    /// The oracle of `A[f]`, on naturals.
    pub oracle: Option<PartialFn>,
    pub exec: Exec,
    pub quit: bool,
}

impl Default for Session {
    fn default() -> Self {
        Session {
            model: SessionModel::K2(ModelTag::K2),
            env: BTreeMap::new(),
            fuel: 100_000,
            seed: 1,
            oracle: None,
            exec: Exec::default(),
            quit: false,
        }
    }
}

/// An expression: a name, or an application `(f g …)` / `(apply f g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    Name(String),
    App(Box<Expr>, Box<Expr>),
}

fn tokenize(src: &str) -> Vec<String> {
    src.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

fn parse_expr(tokens: &[String], pos: &mut usize) -> Result<Expr, String> {
    let tok = tokens.get(*pos).ok_or("expression expected")?;
    *pos += 1;
    if tok == ")" {
        return Err("unexpected `)`".into());
    }
    if tok != "(" {
        return Ok(Expr::Name(tok.clone()));
    }
    if tokens.get(*pos).map(String::as_str) == Some("apply") {
        *pos += 1;
    }
    let mut e = parse_expr(tokens, pos)?;
    let mut args = 0;
    while tokens.get(*pos).map(String::as_str) != Some(")") {
        if *pos >= tokens.len() {
            return Err("missing `)`".into());
        }
        e = Expr::App(Box::new(e), Box::new(parse_expr(tokens, pos)?));
        args += 1;
    }
    *pos += 1;
    if args == 0 {
        return Err("application needs an argument".into());
    }
    Ok(e)
}

/// Splits a command line into an expression and the words after it.
fn split_expr(words: &[String]) -> Result<(Expr, Vec<String>), String> {
    let mut pos = 0;
    let e = parse_expr(words, &mut pos)?;
    Ok((e, words[pos..].to_vec()))
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    s.parse().map_err(|_| format!("`{s}` is not a natural number"))
}

fn flag_value<'a>(words: &'a [String], i: &mut usize, flag: &str) -> Result<&'a str, String> {
    *i += 1;
    words.get(*i).map(String::as_str).ok_or(format!("{flag} needs a value"))
}

/// A code printed as a natural when it is a numeral, else as a term.
fn show_code(c: &Nat) -> String {
    match numeral_value(c) {
        Some(n) => n.to_string(),
        None => match Value::from_code(c) {
            Some(v) => v.to_string(),
            None => format!("code:{c}"),
        },
    }
}

/// An `A[f]` trace with numerals shown as naturals.
fn show_oracle_trace(t: &Trace) -> String {
    let mut s = String::new();
    if let Some(p) = &t.point {
        let _ = writeln!(s, "point {}", show_code(p));
    }
    for (i, st) in t.steps.iter().enumerate() {
        let _ = writeln!(s, "step {i}: ask {} -> {}", show_code(&st.query), show_code(&st.answer));
    }
    match &t.outcome {
        Outcome::Value(c) => {
            let _ = write!(s, "result {}", show_code(c));
        }
        other => {
            let _ = write!(s, "{other}");
        }
    }
    s
}

fn outcome_status(o: &Outcome) -> i32 {
    if *o == Outcome::OutOfFuel {
        NO_FUEL
    } else {
        OK
    }
}

/// Renders a sequential tree, one node per line.
pub fn render_tree(t: &SeqTree) -> String {
    fn go(t: &SeqTree, indent: usize, out: &mut String) {
        match t {
            SeqTree::Leaf(Some(v)) => {
                let _ = writeln!(out, "result {v}");
            }
            SeqTree::Leaf(None) => {
                let _ = writeln!(out, "undefined");
            }
            SeqTree::Cut => {
                let _ = writeln!(out, "cut");
            }
            SeqTree::Branch {
                point,
                explicit,
                otherwise,
            } => {
                let _ = writeln!(out, "ask {point}");
                for (a, sub) in explicit {
                    let _ = write!(out, "{:w$}{a} -> ", "", w = indent + 2);
                    go(sub, indent + 2, out);
                }
                if let Some(sub) = otherwise {
                    let _ = write!(out, "{:w$}* -> ", "", w = indent + 2);
                    go(sub, indent + 2, out);
                }
            }
        }
    }
    let mut out = String::new();
    go(t, 0, &mut out);
    out.pop();
    out
}

impl Session {
    fn k2_model(&self) -> Result<Model, String> {
        match self.model {
            SessionModel::K2(tag) => Ok(Model::for_tag(tag)),
            SessionModel::Oracle => Err("this command needs model k2, k2p or k2orig".into()),
        }
    }

    fn lookup(&self, name: &str) -> Result<Val, String> {
        if let Some(v) = self.env.get(name) {
            return Ok(v.clone());
        }
        if let Ok(m) = self.k2_model() {
            if let Some(f) = m.combinator(name) {
                return Ok(Val::Fn(f));
            }
        }
        Err(format!("unknown name `{name}`"))
    }

    fn as_fn(&self, v: Val) -> PartialFn {
        match v {
            Val::Fn(f) => f,
            Val::Prog(c) => PartialFn::numeric_program(c),
        }
    }

    fn element(&self, e: &Expr) -> Result<PartialFn, String> {
        match e {
            Expr::Name(n) => Ok(self.as_fn(self.lookup(n)?)),
            Expr::App(f, g) => {
                let m = self.k2_model()?;
                Ok(m.apply(&self.element(f)?, &self.element(g)?))
            }
        }
    }

    fn define(&mut self, name: &str, v: Val) -> Result<(), String> {
        if self.env.contains_key(name) {
            return Err(format!("`{name}` is already defined"));
        }
        if ["k", "s", "sigma", "kprime", "sprime"].contains(&name) {
            return Err(format!("`{name}` is reserved"));
        }
        self.env.insert(name.to_string(), v);
        Ok(())
    }

    /// Runs a line of `;`-separated commands. The status is the largest
    /// status of the commands run; a usage error stops the line.
    pub fn run_line(&mut self, line: &str) -> Reply {
        let mut outs = Vec::new();
        let mut status = OK;
        for cmd in line.split(';') {
            if cmd.trim().is_empty() {
                continue;
            }
            let r = self.run_command(cmd);
            if !r.out.is_empty() {
                outs.push(r.out);
            }
            status = status.max(r.status);
            if r.status == USAGE || self.quit {
                break;
            }
        }
        Reply {
            out: outs.join("\n"),
            status,
        }
    }

    pub fn run_command(&mut self, cmd: &str) -> Reply {
        match self.command(cmd.trim()) {
            Ok(r) => r,
            Err(msg) => Reply::usage(msg),
        }
    }

    fn command(&mut self, cmd: &str) -> Result<Reply, String> {
        let words = tokenize(cmd);
        let Some(head) = words.first() else {
            return Ok(Reply::default());
        };
        let rest = &words[1..];
        match head.as_str() {
            "quit" | "exit" => {
                self.quit = true;
                Ok(Reply::default())
            }
            "model" => {
                let [tag, more @ ..] = rest else {
                    return Err("usage: model <k2|k2p|k2orig|oracle> [<oracle name>]".into());
                };
                let model: SessionModel = tag.parse()?;
                if let [name] = more {
                    self.oracle = Some(self.as_fn(self.lookup(name)?));
                } else if !more.is_empty() {
                    return Err("usage: model oracle <name>".into());
                }
                self.model = model;
                Ok(Reply::ok(format!("model {}", rest.join(" "))))
            }
            "fuel" => {
                let [n] = rest else {
                    return Err("usage: fuel <n>".into());
                };
                self.fuel = n.parse().map_err(|_| format!("bad fuel `{n}`"))?;
                Ok(Reply::ok(format!("fuel {}", self.fuel)))
            }
            "seed" => {
                let [n] = rest else {
                    return Err("usage: seed <n>".into());
                };
                self.seed = n.parse().map_err(|_| format!("bad seed `{n}`"))?;
                Ok(Reply::ok(format!("seed {}", self.seed)))
            }
            "load" => {
                let [name, file] = rest else {
                    return Err("usage: load <name> <file>".into());
                };
                let text = std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
                let f = parse_oracle(&text).map_err(|e| format!("{file}: {e}"))?;
                self.define(name, Val::Fn(f))?;
                Ok(Reply::ok(format!("{name} loaded")))
            }
            "def" => self.def(cmd),
            "apply" => {
                let (f, after) = split_expr(rest)?;
                let (g, after) = split_expr(&after)?;
                let [as_, name] = after.as_slice() else {
                    return Err("usage: apply <f> <g> as <name>".into());
                };
                if as_ != "as" {
                    return Err("usage: apply <f> <g> as <name>".into());
                }
                let v = self.element(&Expr::App(Box::new(f), Box::new(g)))?;
                self.define(name, Val::Fn(v))?;
                Ok(Reply::ok(format!("{name} defined")))
            }
            "eval" => self.eval(rest),
            "check" => self.check(rest),
            "tree" => self.tree(rest),
            "names" => Ok(Reply::ok(self.env.keys().cloned().collect::<Vec<_>>().join(" "))),
            other => Err(format!("unknown command `{other}`")),
        }
    }

    fn def(&mut self, cmd: &str) -> Result<Reply, String> {
        let mut parts = cmd.splitn(4, char::is_whitespace).filter(|s| !s.is_empty());
        let (_, name, kind) = (parts.next(), parts.next(), parts.next());
        let body = parts.next().unwrap_or("").trim();
        let (Some(name), Some(kind)) = (name, kind) else {
            return Err("usage: def <name> @prog <term> | @builtin <rule> | @table x:y,…".into());
        };
        let v = match kind {
            "@prog" => Val::Prog(compile_program(body).map_err(|e| e.to_string())?),
            "@builtin" => Val::Fn(PartialFn::named_builtin(body).map_err(|e| e.to_string())?),
            "@table" => {
                let mut entries = Vec::new();
                for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (x, y) = item.split_once(':').ok_or(format!("bad table entry `{item}`"))?;
                    entries.push((parse_nat(x)?, parse_nat(y)?));
                }
                Val::Fn(PartialFn::table(entries))
            }
            other => return Err(format!("unknown definition kind `{other}`")),
        };
        self.define(name, v)?;
        Ok(Reply::ok(format!("{name} defined")))
    }

    fn eval(&mut self, rest: &[String]) -> Result<Reply, String> {
        let (e, after) = split_expr(rest)?;
        let (point, trace) = match after.as_slice() {
            [p] => (p, false),
            [p, t] if t == "--trace" => (p, true),
            _ => return Err("usage: eval <expr> <point> [--trace]".into()),
        };
        let x = parse_nat(point)?;
        if self.model == SessionModel::Oracle {
            let Expr::Name(name) = &e else {
                return Err("in the oracle model eval takes a program name".into());
            };
            let Val::Prog(a) = self.lookup(name)? else {
                return Err(format!("`{name}` is not a program"));
            };
            let f = self
                .oracle
                .clone()
                .ok_or("no oracle: use --oracle-file or `model oracle <name>`")?;
            let m = OracleModel::new(numeral_lift(&f));
            let t = m.apply(&a, &Term::Num(x).to_code(), self.fuel);
            let status = outcome_status(&t.outcome);
            let mut shown = show_oracle_trace(&t);
            if !trace {
                shown = shown.lines().last().unwrap_or_default().to_string();
            }
            return Ok(Reply { out: shown, status });
        }
        let model = self.k2_model()?;
        let t = match &e {
            Expr::App(f, g) => model.trace(&self.element(f)?, &self.element(g)?, &x, self.fuel),
            Expr::Name(_) => Trace {
                point: Some(x.clone()),
                steps: Vec::new(),
                outcome: self.element(&e)?.eval(&x, self.fuel),
            },
        };
        let status = outcome_status(&t.outcome);
        let out = if trace { t.to_string() } else { t.outcome.to_string() };
        Ok(Reply { out, status })
    }

    fn check(&mut self, rest: &[String]) -> Result<Reply, String> {
        let [suite, flags @ ..] = rest else {
            return Err("usage: check <suite> [--samples N] [--seed S] [--allow-inconclusive]".into());
        };
        let mut cfg = SuiteConfig {
            samples: None,
            seed: self.seed,
            fuel: self.fuel,
            exec: self.exec,
            model: match self.model {
                SessionModel::K2(tag) => tag.to_string(),
                SessionModel::Oracle => "code".into(),
            },
        };
        let mut allow = false;
        let mut i = 0;
        while i < flags.len() {
            match flags[i].as_str() {
                "--samples" => {
                    cfg.samples = Some(
                        flag_value(flags, &mut i, "--samples")?
                            .parse()
                            .map_err(|_| "bad --samples")?,
                    )
                }
                "--seed" => cfg.seed = flag_value(flags, &mut i, "--seed")?.parse().map_err(|_| "bad --seed")?,
                "--model" => cfg.model = flag_value(flags, &mut i, "--model")?.to_string(),
                "--allow-inconclusive" => allow = true,
                other => return Err(format!("unknown flag `{other}`")),
            }
            i += 1;
        }
        let report = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
        let status = match report.status() {
            NO_FUEL if allow => OK,
            s => s,
        };
        Ok(Reply {
            out: report.to_string(),
            status,
        })
    }

    fn tree(&mut self, rest: &[String]) -> Result<Reply, String> {
        let (e, flags) = split_expr(rest)?;
        let (mut depth, mut alphabet) = (3usize, vec![nat(0), nat(1), nat(2)]);
        let mut i = 0;
        while i < flags.len() {
            match flags[i].as_str() {
                "--depth" => {
                    depth = flag_value(&flags, &mut i, "--depth")?
                        .parse()
                        .map_err(|_| "bad --depth")?
                }
                "--alphabet" => {
                    alphabet = flag_value(&flags, &mut i, "--alphabet")?
                        .split(',')
                        .map(parse_nat)
                        .collect::<Result<_, _>>()?
                }
                other => return Err(format!("unknown flag `{other}`")),
            }
            i += 1;
        }
        let model = self.k2_model()?;
        if model.tag == ModelTag::K2Orig {
            return Err("trees describe interrogations: use model k2 or k2p".into());
        }
        let alpha = self.element(&e)?;
        let t = fn_to_tree(&alpha, model.scheme.as_ref(), depth, &alphabet, self.fuel);
        Ok(Reply::ok(render_tree(&t)))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pca",
    about = "Interrogation models, oracle application and their property suites"
)]
struct Cli {
    /// k2, k2p, k2orig or oracle.
    #[arg(long, global = true, default_value = "k2")]
    model: String,
    #[arg(long, global = true, default_value_t = 100_000)]
    fuel: u64,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Oracle for `--model oracle`; bound as `f` in other models.
    #[arg(long, global = true)]
    oracle_file: Option<PathBuf>,
    #[arg(long, global = true)]
    trace: bool,
    /// Run suites on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate an element (or a program in the oracle model) at a point.
    Eval {
        /// A program of the combinator algebra, bound as `p`.
        #[arg(long)]
        prog: Option<String>,
        /// An expression over named elements; defaults to `p`, then `f`.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        point: String,
    },
    /// Run a property suite.
    Check {
        suite: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        allow_inconclusive: bool,
    },
    /// Print the sequential tree of an element.
    Tree {
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value = "0,1,2")]
        alphabet: String,
    },
    /// Read commands from standard input.
    Repl,
    /// Run a script of commands, echoing each line.
    Run {
        #[arg(long)]
        script: PathBuf,
    },
}

fn session_for(cli: &Cli) -> Result<Session, String> {
    let mut s = Session {
        model: cli.model.parse()?,
        fuel: cli.fuel,
        seed: cli.seed,
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
        ..Session::default()
    };
    if let Some(path) = &cli.oracle_file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let f = parse_oracle(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        s.oracle = Some(f.clone());
        s.env.insert("f".into(), Val::Fn(f));
    }
    Ok(s)
}

fn script<R: BufRead>(session: &mut Session, input: R, echo: bool, out: &mut dyn std::io::Write) -> i32 {
    let mut status = OK;
    for line in input.lines() {
        let Ok(line) = line else { break };
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if echo {
            let _ = writeln!(out, "> {line}");
        }
        let r = session.run_line(line);
        if !r.out.is_empty() {
            let _ = writeln!(out, "{}", r.out);
        }
        if r.status != OK {
            let _ = writeln!(out, "status {}", r.status);
        }
        status = status.max(r.status);
        if session.quit {
            break;
        }
    }
    status
}

/// Runs the command line `args` (program name first), writing to `out`.
pub fn main_with(args: Vec<String>, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => OK,
                _ => USAGE,
            };
        }
    };
    let mut session = match session_for(&cli) {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return USAGE;
        }
    };
    let line = match &cli.cmd {
        Cmd::Eval { prog, expr, point } => {
            if let Some(p) = prog {
                if let Err(msg) = compile_program(p)
                    .map_err(|e| e.to_string())
                    .and_then(|c| session.define("p", Val::Prog(c)))
                {
                    let _ = writeln!(err, "error: {msg}");
                    return USAGE;
                }
            }
            let target = expr
                .clone()
                .unwrap_or_else(|| if prog.is_some() { "p".into() } else { "f".into() });
            format!("eval {target} {point}{}", if cli.trace { " --trace" } else { "" })
        }
        Cmd::Check {
            suite,
            samples,
            allow_inconclusive,
        } => {
            let mut l = format!("check {suite}");
            if let Some(n) = samples {
                let _ = write!(l, " --samples {n}");
            }
            if *allow_inconclusive {
                l.push_str(" --allow-inconclusive");
            }
            l
        }
        Cmd::Tree { expr, depth, alphabet } => {
            format!(
                "tree {} --depth {depth} --alphabet {alphabet}",
                expr.as_deref().unwrap_or("f")
            )
        }
        Cmd::Repl => {
            let stdin = std::io::stdin();
            return script(&mut session, stdin.lock(), false, out);
        }
        Cmd::Run { script: path } => {
            return match std::fs::File::open(path) {
                Ok(f) => script(&mut session, std::io::BufReader::new(f), true, out),
                Err(e) => {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    USAGE
                }
            };
        }
    };
    let r = session.run_command(&line);
    if r.status == USAGE {
        let _ = writeln!(err, "{}", r.out);
    } else if !r.out.is_empty() {
        let _ = writeln!(out, "{}", r.out);
    }
    r.status
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let toks = tokenize("(apply k (a b)) 0");
        let (e, rest) = split_expr(&toks).unwrap();
        let n = |s: &str| Box::new(Expr::Name(s.into()));
        assert_eq!(e, Expr::App(n("k"), Box::new(Expr::App(n("a"), n("b")))));
        assert_eq!(rest, vec!["0".to_string()]);
        assert!(split_expr(&tokenize("(k")).is_err());
        assert!(split_expr(&tokenize("(k)")).is_err());
    }

    #[test]
    fn session_commands() {
        let mut s = Session::default();
        let r = s.run_line("def a @prog SUCC; model k2p; eval (apply sigma a) 3 --trace; eval (k a k) 4");
        assert_eq!(r.status, OK, "{}", r.out);
        assert!(r.out.contains("step 0: ask 0 -> 1"), "{}", r.out);
        assert!(r.out.ends_with("result 5"), "{}", r.out);
        assert_eq!(s.run_line("eval missing 0").status, USAGE);
        assert_eq!(s.run_line("def a @prog K").status, USAGE);
        assert_eq!(s.run_line("frobnicate").status, USAGE);
    }

    #[test]
    fn oracle_eval_and_fuel() {
        let mut s = Session::default();
        let r = s.run_line("def sq @table 3:9; def e @prog \\t. IFZ (PRED (LEN t)) (\\u. ASK (HEAD t)) (\\u. RET (NTH1 t)) #0; model oracle sq; eval e 3 --trace");
        assert_eq!(r.status, OK, "{}", r.out);
        assert!(r.out.ends_with("point 3\nstep 0: ask 3 -> 9\nresult 9"), "{}", r.out);
        let r = s.run_line("fuel 3; eval e 3");
        assert_eq!(r.status, NO_FUEL, "{}", r.out);
    }

    #[test]
    fn trees() {
        let mut s = Session::default();
        let r = s.run_line("tree k --depth 2 --alphabet 0,1");
        assert_eq!(r.status, OK, "{}", r.out);
    }

    #[test]
    fn batch_usage_errors() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let args = |a: &[&str]| a.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(
            main_with(args(&["pca", "--bogus", "check", "coding"]), &mut out, &mut err),
            USAGE
        );
        assert_eq!(main_with(args(&["pca", "check", "nosuch"]), &mut out, &mut err), USAGE);
        assert_eq!(
            main_with(args(&["pca", "--model", "k9", "check", "coding"]), &mut out, &mut err),
            USAGE
        );
        assert_eq!(main_with(args(&["pca", "check", "coding"]), &mut out, &mut err), OK);
    }
}
