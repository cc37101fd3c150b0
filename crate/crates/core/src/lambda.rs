//! Untyped lambda calculus with de Bruijn indices, as a rewriting system
//! under beta reduction.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::enumerable::EnumerableArs;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(Box<Term>, Box<Term>),
    Abs(Box<Term>),
}

pub fn var(i: usize) -> Term {
    Term::Var(i)
}

pub fn app(f: Term, a: Term) -> Term {
    Term::App(Box::new(f), Box::new(a))
}

pub fn abs(body: Term) -> Term {
    Term::Abs(Box::new(body))
}

/// `\x. x`
pub fn identity() -> Term {
    abs(var(0))
}

/// `\x. \y. x`
pub fn k_combinator() -> Term {
    abs(abs(var(1)))
}

/// `\x. x x`
pub fn small_omega() -> Term {
    abs(app(var(0), var(0)))
}

/// `(\x. x x) (\x. x x)`
pub fn omega() -> Term {
    app(small_omega(), small_omega())
}

impl Term {
    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Abs(b) => 1 + b.size(),
        }
    }

    /// Well scoped under `binders` enclosing binders.
    pub fn is_closed_under(&self, binders: usize) -> bool {
        match self {
            Term::Var(i) => *i < binders,
            Term::App(f, a) => f.is_closed_under(binders) && a.is_closed_under(binders),
            Term::Abs(b) => b.is_closed_under(binders + 1),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.is_closed_under(0)
    }

    pub fn is_redex(&self) -> bool {
        matches!(self, Term::App(f, _) if matches!(**f, Term::Abs(_)))
    }

    /// Print with free index `i` (counted outside all binders) named
    /// `context[i]`. Free indices past the context print as `#i`.
    pub fn display_with<'a>(&'a self, context: &'a [String]) -> impl fmt::Display + 'a {
        Shown { term: self, context }
    }
}

pub fn shift(t: &Term, amount: isize, cutoff: usize) -> Result<Term> {
    Ok(match t {
        Term::Var(k) if *k >= cutoff => {
            let moved = *k as isize + amount;
            if moved < 0 {
                return Err(Error::NegativeIndex);
            }
            Term::Var(moved as usize)
        }
        Term::Var(k) => Term::Var(*k),
        Term::App(f, a) => app(shift(f, amount, cutoff)?, shift(a, amount, cutoff)?),
        Term::Abs(b) => abs(shift(b, amount, cutoff + 1)?),
    })
}

fn shift_up(t: &Term, amount: usize, cutoff: usize) -> Term {
    shift(t, amount as isize, cutoff).expect("shifting up cannot go negative")
}

pub fn substitute(t: &Term, j: usize, s: &Term) -> Term {
    match t {
        Term::Var(k) if *k == j => s.clone(),
        Term::Var(k) => Term::Var(*k),
        Term::App(f, a) => app(substitute(f, j, s), substitute(a, j, s)),
        Term::Abs(b) => abs(substitute(b, j + 1, &shift_up(s, 1, 0))),
    }
}

/// Contract `(\. body) arg`.
pub fn contract(body: &Term, arg: &Term) -> Term {
    let replaced = substitute(body, 0, &shift_up(arg, 1, 0));
    shift(&replaced, -1, 0).expect("the bound index was just substituted away")
}

/// All one-step reducts, one per redex position, in leftmost-outermost
/// order. Duplicates are kept.
pub fn beta_steps_by_position(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    collect_steps(t, &mut out);
    out
}

fn collect_steps(t: &Term, out: &mut Vec<Term>) {
    match t {
        Term::Var(_) => {}
        Term::Abs(b) => {
            let start = out.len();
            collect_steps(b, out);
            for r in &mut out[start..] {
                *r = abs(std::mem::replace(r, Term::Var(0)));
            }
        }
        Term::App(f, a) => {
            if let Term::Abs(body) = &**f {
                out.push(contract(body, a));
            }
            let start = out.len();
            collect_steps(f, out);
            for r in &mut out[start..] {
                *r = app(std::mem::replace(r, Term::Var(0)), (**a).clone());
            }
            let start = out.len();
            collect_steps(a, out);
            for r in &mut out[start..] {
                *r = app((**f).clone(), std::mem::replace(r, Term::Var(0)));
            }
        }
    }
}

/// The distinct one-step reducts, leftmost-outermost first.
pub fn beta_step_enum(t: &Term) -> Vec<Term> {
    let mut seen = HashSet::new();
    beta_steps_by_position(t)
        .into_iter()
        .filter(|r| seen.insert(r.clone()))
        .collect()
}

pub fn is_beta_nf(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Abs(b) => is_beta_nf(b),
        Term::App(f, a) => !t.is_redex() && is_beta_nf(f) && is_beta_nf(a),
    }
}

pub fn leftmost_outermost_step(t: &Term) -> Option<Term> {
    match t {
        Term::Var(_) => None,
        Term::Abs(b) => leftmost_outermost_step(b).map(abs),
        Term::App(f, a) => {
            if let Term::Abs(body) = &**f {
                return Some(contract(body, a));
            }
            if let Some(f2) = leftmost_outermost_step(f) {
                return Some(app(f2, (**a).clone()));
            }
            leftmost_outermost_step(a).map(|a2| app((**f).clone(), a2))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostOutermost,
    FirstEnumerated,
}

impl Strategy {
    pub fn step(self, t: &Term) -> Option<Term> {
        match self {
            Strategy::LeftmostOutermost => leftmost_outermost_step(t),
            Strategy::FirstEnumerated => beta_step_enum(t).into_iter().next(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeResult {
    /// `path` starts at the input and ends at `term`.
    NormalForm {
        term: Term,
        path: Vec<Term>,
    },
    FuelExhausted {
        last: Term,
        steps: usize,
    },
}

impl NormalizeResult {
    /// The final term is a normal form and each step is a beta step.
    pub fn validate(&self) -> bool {
        match self {
            NormalizeResult::NormalForm { term, path } => {
                is_beta_nf(term)
                    && path.last() == Some(term)
                    && path.windows(2).all(|w| beta_step_enum(&w[0]).contains(&w[1]))
            }
            NormalizeResult::FuelExhausted { .. } => true,
        }
    }
}

pub fn normalize(t: &Term, strategy: Strategy, fuel: usize) -> NormalizeResult {
    let mut path = vec![t.clone()];
    for _ in 0..fuel {
        let cur = path.last().expect("nonempty");
        match strategy.step(cur) {
            Some(next) => path.push(next),
            None => break,
        }
    }
    let last = path.last().expect("nonempty").clone();
    if is_beta_nf(&last) {
        NormalizeResult::NormalForm { term: last, path }
    } else {
        NormalizeResult::FuelExhausted {
            last,
            steps: path.len() - 1,
        }
    }
}

/// Beta reduction on all terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct Beta;

impl EnumerableArs for Beta {
    type Key = Term;

    fn successors_of(&self, key: &Term) -> Vec<Term> {
        beta_step_enum(key)
    }

    fn is_normal_form(&self, key: &Term) -> bool {
        is_beta_nf(key)
    }
}

/// Every term of exactly `size` constructors whose free indices are below
/// `binders`.
pub fn terms_of_size(size: usize, binders: usize) -> Vec<Term> {
    let mut memo = HashMap::new();
    gen_terms(size, binders, &mut memo)
}

fn gen_terms(size: usize, binders: usize, memo: &mut HashMap<(usize, usize), Vec<Term>>) -> Vec<Term> {
    if let Some(v) = memo.get(&(size, binders)) {
        return v.clone();
    }
    let mut out = Vec::new();
    match size {
        0 => {}
        1 => out.extend((0..binders).map(Term::Var)),
        _ => {
            out.extend(gen_terms(size - 1, binders + 1, memo).into_iter().map(abs));
            for left in 1..size - 1 {
                let fs = gen_terms(left, binders, memo);
                let args = gen_terms(size - 1 - left, binders, memo);
                for f in &fs {
                    for a in &args {
                        out.push(app(f.clone(), a.clone()));
                    }
                }
            }
        }
    }
    memo.insert((size, binders), out.clone());
    out
}

/// Closed terms with at most `max_size` constructors, smallest first.
pub fn closed_terms(max_size: usize) -> Vec<Term> {
    let mut memo = HashMap::new();
    (1..=max_size).flat_map(|s| gen_terms(s, 0, &mut memo)).collect()
}

/// Bounded search for conversions `a <->* b`. Forward steps are unrestricted;
/// backward steps (expansions) are drawn from the closed terms of at most
/// `universe` constructors, since a term has infinitely many expansions.
#[derive(Debug, Clone)]
pub struct ConversionSearch {
    expansions: HashMap<Term, Vec<Term>>,
}

impl ConversionSearch {
    pub fn new(universe: usize) -> Self {
        let mut expansions: HashMap<Term, Vec<Term>> = HashMap::new();
        for t in closed_terms(universe) {
            for r in beta_step_enum(&t) {
                expansions.entry(r).or_default().push(t.clone());
            }
        }
        ConversionSearch { expansions }
    }

    fn neighbours(&self, t: &Term) -> Vec<Term> {
        let mut out = beta_step_enum(t);
        if let Some(e) = self.expansions.get(t) {
            out.extend(e.iter().cloned());
        }
        out
    }

    /// Every term within `depth` forward or backward steps of `start`.
    pub fn ball(&self, start: &Term, depth: usize) -> HashSet<Term> {
        let mut seen = HashSet::from([start.clone()]);
        let mut frontier = VecDeque::from([(start.clone(), 0)]);
        while let Some((t, d)) = frontier.pop_front() {
            if d == depth {
                continue;
            }
            for n in self.neighbours(&t) {
                if seen.insert(n.clone()) {
                    frontier.push_back((n, d + 1));
                }
            }
        }
        seen
    }

    /// A conversion path of at most `depth` steps, if the search finds one.
    pub fn connect(&self, a: &Term, b: &Term, depth: usize) -> Option<Vec<Term>> {
        let mut parent: HashMap<Term, Option<Term>> = HashMap::from([(a.clone(), None)]);
        let mut frontier = VecDeque::from([(a.clone(), 0)]);
        while let Some((t, d)) = frontier.pop_front() {
            if &t == b {
                let mut path = vec![t.clone()];
                let mut cur = t;
                while let Some(Some(p)) = parent.get(&cur) {
                    path.push(p.clone());
                    cur = p.clone();
                }
                path.reverse();
                return Some(path);
            }
            if d == depth {
                continue;
            }
            for n in self.neighbours(&t) {
                if !parent.contains_key(&n) {
                    parent.insert(n.clone(), Some(t.clone()));
                    frontier.push_back((n, d + 1));
                }
            }
        }
        None
    }
}

// ---- printing ----

struct Shown<'a> {
    term: &'a Term,
    context: &'a [String],
}

const BINDER_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

fn binder_name(depth: usize, context: &[String]) -> String {
    // Skip names that would capture a printed free variable.
    let mut k = depth;
    loop {
        let base = BINDER_NAMES[k % BINDER_NAMES.len()];
        let round = k / BINDER_NAMES.len();
        let name = if round == 0 {
            base.to_string()
        } else {
            format!("{base}{round}")
        };
        if !context.contains(&name) {
            return name;
        }
        k += BINDER_NAMES.len();
    }
}

impl Shown<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, t: &Term, bound: &mut Vec<String>) -> fmt::Result {
        match t {
            Term::Var(i) if *i < bound.len() => f.write_str(&bound[bound.len() - 1 - i]),
            Term::Var(i) => match self.context.get(i - bound.len()) {
                Some(name) => f.write_str(name),
                None => write!(f, "#{}", i - bound.len()),
            },
            Term::Abs(b) => {
                let name = binder_name(bound.len(), self.context);
                write!(f, "\\{name}. ")?;
                bound.push(name);
                let r = self.write(f, b, bound);
                bound.pop();
                r
            }
            Term::App(fun, arg) => {
                if matches!(**fun, Term::Abs(_)) {
                    f.write_str("(")?;
                    self.write(f, fun, bound)?;
                    f.write_str(")")?;
                } else {
                    self.write(f, fun, bound)?;
                }
                f.write_str(" ")?;
                if matches!(**arg, Term::Var(_)) {
                    self.write(f, arg, bound)
                } else {
                    f.write_str("(")?;
                    self.write(f, arg, bound)?;
                    f.write_str(")")
                }
            }
        }
    }
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.term, &mut Vec::new())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&[]).fmt(f)
    }
}

// ---- parsing ----

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lambda,
    Dot,
    Open,
    Close,
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '\\' | 'λ' => Tok::Lambda,
            '.' => Tok::Dot,
            '(' => Tok::Open,
            ')' => Tok::Close,
            c if c.is_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(name)));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    context: &'a [String],
    bound: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn term(&mut self) -> Result<Term> {
        if self.peek() == Some(&Tok::Lambda) {
            return self.abstraction();
        }
        let mut t = match self.atom()? {
            Some(t) => t,
            None => return self.fail("expected a term"),
        };
        loop {
            if self.peek() == Some(&Tok::Lambda) {
                let body = self.abstraction()?;
                return Ok(app(t, body));
            }
            match self.atom()? {
                Some(a) => t = app(t, a),
                None => return Ok(t),
            }
        }
    }

    fn abstraction(&mut self) -> Result<Term> {
        self.at += 1;
        let mut names = Vec::new();
        while let Some(Tok::Ident(n)) = self.peek() {
            names.push(n.clone());
            self.at += 1;
        }
        if names.is_empty() {
            return self.fail("expected a binder name");
        }
        if self.peek() != Some(&Tok::Dot) {
            return self.fail("expected '.'");
        }
        self.at += 1;
        let count = names.len();
        self.bound.extend(names);
        let mut body = self.term()?;
        self.bound.truncate(self.bound.len() - count);
        for _ in 0..count {
            body = abs(body);
        }
        Ok(body)
    }

    fn atom(&mut self) -> Result<Option<Term>> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let position = self.pos();
                self.at += 1;
                if let Some(i) = self.bound.iter().rev().position(|b| *b == name) {
                    return Ok(Some(var(i)));
                }
                match self.context.iter().position(|c| *c == name) {
                    Some(i) => Ok(Some(var(self.bound.len() + i))),
                    None => Err(Error::UnboundName { name, position }),
                }
            }
            Some(Tok::Open) => {
                self.at += 1;
                let t = self.term()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.fail("expected ')'");
                }
                self.at += 1;
                Ok(Some(t))
            }
            _ => Ok(None),
        }
    }
}

/// Parse `\x. body`, juxtaposition and parentheses. A free name resolves to
/// its position in `context`.
pub fn parse_term(text: &str, context: &[String]) -> Result<Term> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        end: text.len(),
        context,
        bound: Vec::new(),
    };
    let t = p.term()?;
    if p.at != p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Term {
        parse_term(s, &[]).unwrap()
    }

    #[test]
    fn shifting() {
        assert_eq!(shift(&var(0), 1, 0).unwrap(), var(1));
        assert_eq!(shift(&abs(var(0)), 5, 0).unwrap(), abs(var(0)));
        assert_eq!(shift(&abs(var(1)), 1, 0).unwrap(), abs(var(2)));
        assert_eq!(shift(&var(0), -1, 0), Err(Error::NegativeIndex));
    }

    #[test]
    fn substitution() {
        assert_eq!(substitute(&var(0), 0, &identity()), identity());
        assert_eq!(substitute(&abs(var(1)), 0, &var(0)), abs(var(1)));
        assert_eq!(
            substitute(&app(var(0), var(1)), 0, &identity()),
            app(identity(), var(1))
        );
    }

    #[test]
    fn step_enumeration() {
        assert_eq!(beta_step_enum(&omega()), vec![omega()]);
        assert_eq!(beta_step_enum(&app(identity(), identity())), vec![identity()]);
        let kio = app(app(k_combinator(), identity()), omega());
        assert_eq!(beta_step_enum(&kio), vec![app(abs(identity()), omega()), kio.clone()]);
        // the root and inner redex of I (I I) both give I I
        let iii = app(identity(), app(identity(), identity()));
        assert_eq!(beta_steps_by_position(&iii).len(), 2);
        assert_eq!(beta_step_enum(&iii), vec![app(identity(), identity())]);
    }

    #[test]
    fn normal_forms() {
        assert!(is_beta_nf(&identity()));
        assert!(!is_beta_nf(&omega()));
        assert!(is_beta_nf(&abs(app(var(0), identity()))));
    }

    #[test]
    fn leftmost_outermost() {
        let kio = app(app(k_combinator(), identity()), omega());
        let one = leftmost_outermost_step(&kio).unwrap();
        assert_eq!(one, app(abs(identity()), omega()));
        assert_eq!(leftmost_outermost_step(&one), Some(identity()));
        assert_eq!(leftmost_outermost_step(&identity()), None);
    }

    #[test]
    fn normalization() {
        let kio = app(app(k_combinator(), identity()), omega());
        match normalize(&kio, Strategy::LeftmostOutermost, 50) {
            NormalizeResult::NormalForm { term, path } => {
                assert_eq!(term, identity());
                assert_eq!(path.len(), 3);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            normalize(&omega(), Strategy::FirstEnumerated, 100),
            NormalizeResult::FuelExhausted { steps: 100, .. }
        ));
        let t = parse("(\\x. \\y. y) ((\\z. z) (\\z. z))");
        for s in [Strategy::LeftmostOutermost, Strategy::FirstEnumerated] {
            let r = normalize(&t, s, 10);
            assert!(r.validate());
            assert!(matches!(r, NormalizeResult::NormalForm { term, .. } if term == parse("\\y. y")));
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(parse("\\x. x"), abs(var(0)));
        assert_eq!(parse("(\\x. x x)(\\x. x x)"), omega());
        assert_eq!(parse("λx y. x"), k_combinator());
        assert_eq!(parse_term("\\x. y", &["y".into()]).unwrap(), abs(var(1)));
        assert_eq!(parse("\\a b c. a b c"), abs(abs(abs(app(app(var(2), var(1)), var(0))))));
        assert_eq!(parse("\\f. f \\x. x"), abs(app(var(0), identity())));
        assert!(matches!(
            parse_term("\\x. y", &[]),
            Err(Error::UnboundName { position: 4, .. })
        ));
        assert!(matches!(
            parse_term("(\\x. x", &[]),
            Err(Error::Parse { position: 6, .. })
        ));
        assert!(matches!(parse_term("\\. x", &[]), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_term("x $", &["x".into()]),
            Err(Error::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn printing_round_trips() {
        for t in closed_terms(6) {
            let shown = t.to_string();
            assert_eq!(parse(&shown), t, "{shown}");
        }
        let ctx = vec!["x".to_string()];
        let t = abs(app(var(0), var(1)));
        let shown = t.display_with(&ctx).to_string();
        assert_eq!(shown, "\\x1. x1 x");
        assert_eq!(parse_term(&shown, &ctx).unwrap(), t);
    }

    #[test]
    fn term_counts() {
        // closed terms by size: 0, 1, 2, 4, 13, 42
        let counts: Vec<usize> = (1..=6).map(|s| terms_of_size(s, 0).len()).collect();
        assert_eq!(counts, vec![0, 1, 2, 4, 13, 42]);
    }
}
