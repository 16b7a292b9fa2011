//! Slanted algebras `(A, ◇, ■)` with values in the canonical extension, their σ/π extensions,
//! term evaluation and validity of inequalities.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::completion::{dm_completion, extend_negation_pi, extend_negation_sigma, CanonicalExtension, CompletionError};
use crate::subordination::ProtoSubAlg;
use crate::syntax::{Inequality, SyntaxError, Term};

type ExtendFn = fn(&CanonicalExtension, &[usize]) -> std::result::Result<Vec<usize>, CompletionError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlantedError {
    #[error("{0} is not monotone, so its extension to the completion is undefined")]
    NotMonotone(&'static str),
    #[error("variable '{0}' has no value")]
    UnboundVariable(String),
    #[error("the term uses ~ but the carrier has no negation")]
    MissingNegation,
    #[error("negation fails the {0} law needed for its extension")]
    NegationLawsFail(&'static str),
    #[error("the completion was built for a different carrier")]
    CarrierMismatch,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

pub type Result<T, E = SlantedError> = std::result::Result<T, E>;

/// Which extension interprets `~` on the completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NegationMode {
    #[default]
    Sigma,
    Pi,
}

/// `◇a = ⋀≺[a]` and `■a = ⋁≺⁻¹[a]`, computed in the completion.
#[derive(Debug)]
pub struct SlantedAlg {
    sub: ProtoSubAlg,
    ext: Arc<CanonicalExtension>,
    diamond: Vec<usize>,
    square: Vec<usize>,
    diamond_monotone: bool,
    square_monotone: bool,
    /// `◇a` closed for every `a`; `■a` open for every `a`.
    pub proper_flags: (bool, bool),
    sigma: OnceLock<Option<Vec<usize>>>,
    pi: OnceLock<Option<Vec<usize>>>,
    neg_sigma: OnceLock<Result<Vec<usize>>>,
    neg_pi: OnceLock<Result<Vec<usize>>>,
    pub negation_mode: NegationMode,
}

pub fn build_slanted(s: &ProtoSubAlg, ext: Arc<CanonicalExtension>) -> Result<SlantedAlg> {
    if ext.base() != s.carrier().poset() {
        return Err(SlantedError::CarrierMismatch);
    }
    let d = ext.delta();
    let n = s.n();
    let diamond: Vec<usize> = (0..n).map(|a| d.meet_all(s.succ(a).iter().map(|x| ext.embed_of(x)))).collect();
    let square: Vec<usize> = (0..n).map(|a| d.join_all(s.pred(a).iter().map(|x| ext.embed_of(x)))).collect();
    let po = s.carrier().poset();
    let mono = |f: &[usize]| (0..n).all(|a| po.up(a).iter().all(|b| d.leq(f[a], f[b])));
    let proper_flags = (
        diamond.iter().all(|&u| ext.closed().contains(u)),
        square.iter().all(|&u| ext.open().contains(u)),
    );
    Ok(SlantedAlg {
        diamond_monotone: mono(&diamond),
        square_monotone: mono(&square),
        sub: s.clone(),
        ext,
        diamond,
        square,
        proper_flags,
        sigma: OnceLock::new(),
        pi: OnceLock::new(),
        neg_sigma: OnceLock::new(),
        neg_pi: OnceLock::new(),
        negation_mode: NegationMode::Sigma,
    })
}

/// [`build_slanted`] over a freshly computed completion of the carrier.
pub fn slanted_of(s: &ProtoSubAlg) -> SlantedAlg {
    let ext = Arc::new(dm_completion(s.carrier().poset()));
    build_slanted(s, ext).expect("completion of the same carrier")
}

impl SlantedAlg {
    pub fn sub(&self) -> &ProtoSubAlg {
        &self.sub
    }

    pub fn ext(&self) -> &Arc<CanonicalExtension> {
        &self.ext
    }

    /// `◇a` as an element of the completion.
    #[inline]
    pub fn diamond(&self, a: usize) -> usize {
        self.diamond[a]
    }

    /// `■a` as an element of the completion.
    #[inline]
    pub fn square(&self, a: usize) -> usize {
        self.square[a]
    }

    pub fn diamond_table(&self) -> &[usize] {
        &self.diamond
    }

    pub fn square_table(&self) -> &[usize] {
        &self.square
    }

    pub fn diamond_monotone(&self) -> bool {
        self.diamond_monotone
    }

    pub fn square_monotone(&self) -> bool {
        self.square_monotone
    }

    /// `◇k = ⋀{◇a | k ≤ a}` on closed `k`, then `◇u = ⋁{◇k | k ≤ u, k closed}`.
    pub fn sigma_extension(&self) -> Result<&[usize]> {
        self.sigma
            .get_or_init(|| {
                if !self.diamond_monotone {
                    return None;
                }
                let (c, d) = (&self.ext, self.ext.delta());
                let n = self.sub.n();
                let mut on_closed = vec![d.top(); d.n()];
                for k in c.closed().iter() {
                    on_closed[k] = d.meet_all((0..n).filter(|&a| d.leq(k, c.embed_of(a))).map(|a| self.diamond[a]));
                }
                Some(
                    (0..d.n())
                        .map(|u| d.join_all(c.closed().iter().filter(|&k| d.leq(k, u)).map(|k| on_closed[k])))
                        .collect(),
                )
            })
            .as_deref()
            .ok_or(SlantedError::NotMonotone("◇"))
    }

    /// `■o = ⋁{■a | a ≤ o}` on open `o`, then `■u = ⋀{■o | u ≤ o, o open}`.
    pub fn pi_extension(&self) -> Result<&[usize]> {
        self.pi
            .get_or_init(|| {
                if !self.square_monotone {
                    return None;
                }
                let (c, d) = (&self.ext, self.ext.delta());
                let n = self.sub.n();
                let mut on_open = vec![d.bot(); d.n()];
                for o in c.open().iter() {
                    on_open[o] = d.join_all((0..n).filter(|&a| d.leq(c.embed_of(a), o)).map(|a| self.square[a]));
                }
                Some(
                    (0..d.n())
                        .map(|u| d.meet_all(c.open().iter().filter(|&o| d.leq(u, o)).map(|o| on_open[o])))
                        .collect(),
                )
            })
            .as_deref()
            .ok_or(SlantedError::NotMonotone("■"))
    }

    /// Extension of the carrier's negation selected by `negation_mode`.
    pub fn negation(&self) -> Result<&[usize]> {
        let neg = self.sub.carrier().neg().ok_or(SlantedError::MissingNegation)?;
        let (cell, f): (_, ExtendFn) = match self.negation_mode {
            NegationMode::Sigma => (&self.neg_sigma, extend_negation_sigma),
            NegationMode::Pi => (&self.neg_pi, extend_negation_pi),
        };
        cell.get_or_init(|| {
            f(&self.ext, neg).map_err(|e| match e {
                CompletionError::NegationLawsFail(l) => SlantedError::NegationLawsFail(l),
                _ => SlantedError::MissingNegation,
            })
        })
        .as_deref()
        .map_err(Clone::clone)
    }

    /// `◇` on an element of the completion: the algebra's own value on the image of the
    /// embedding, the σ-extension elsewhere.
    pub fn apply_diamond(&self, u: usize) -> Result<usize> {
        match self.ext.base_of(u) {
            Some(a) => Ok(self.diamond[a]),
            None => Ok(self.sigma_extension()?[u]),
        }
    }

    /// `■` on an element of the completion, using the π-extension off the image.
    pub fn apply_square(&self, u: usize) -> Result<usize> {
        match self.ext.base_of(u) {
            Some(a) => Ok(self.square[a]),
            None => Ok(self.pi_extension()?[u]),
        }
    }

    pub fn compile(&self, ineq: &Inequality) -> CompiledInequality {
        CompiledInequality::new(ineq)
    }
}

/// Assignment of variables to base elements.
pub type Assignment = BTreeMap<String, usize>;

#[derive(Debug, Clone)]
enum Node {
    Var(usize),
    Top,
    Bot,
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Diamond(Box<Node>),
    Square(Box<Node>),
}

fn compile_term(t: &Term, vars: &[String]) -> Node {
    let rec = |x: &Term| Box::new(compile_term(x, vars));
    match t {
        Term::Var(v) => Node::Var(vars.iter().position(|w| w == v).expect("variable collected")),
        Term::Top => Node::Top,
        Term::Bot => Node::Bot,
        Term::Not(a) => Node::Not(rec(a)),
        Term::And(a, b) => Node::And(rec(a), rec(b)),
        Term::Or(a, b) => Node::Or(rec(a), rec(b)),
        Term::Diamond(a) => Node::Diamond(rec(a)),
        Term::Square(a) => Node::Square(rec(a)),
    }
}

fn uses_not(n: &Node) -> bool {
    match n {
        Node::Var(_) | Node::Top | Node::Bot => false,
        Node::Not(_) => true,
        Node::And(a, b) | Node::Or(a, b) => uses_not(a) || uses_not(b),
        Node::Diamond(a) | Node::Square(a) => uses_not(a),
    }
}

fn eval(sa: &SlantedAlg, n: &Node, env: &[usize]) -> Result<usize> {
    let d = sa.ext.delta();
    Ok(match n {
        Node::Var(i) => env[*i],
        Node::Top => d.top(),
        Node::Bot => d.bot(),
        Node::Not(a) => {
            let v = eval(sa, a, env)?;
            sa.negation()?[v]
        }
        Node::And(a, b) => d.meet(eval(sa, a, env)?, eval(sa, b, env)?),
        Node::Or(a, b) => d.join(eval(sa, a, env)?, eval(sa, b, env)?),
        Node::Diamond(a) => sa.apply_diamond(eval(sa, a, env)?)?,
        Node::Square(a) => sa.apply_square(eval(sa, a, env)?)?,
    })
}

/// An inequality with variables numbered in sorted order.
#[derive(Debug, Clone)]
pub struct CompiledInequality {
    pub vars: Vec<String>,
    lhs: Node,
    rhs: Node,
}

impl CompiledInequality {
    pub fn new(ineq: &Inequality) -> Self {
        let vars: Vec<String> = ineq.vars().into_iter().collect();
        let lhs = compile_term(&ineq.lhs, &vars);
        let rhs = compile_term(&ineq.rhs, &vars);
        CompiledInequality { vars, lhs, rhs }
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ok(Self::new(&crate::syntax::parse_inequality(src)?))
    }

    /// First failing assignment (base indices, in variable order), or `None` if valid.
    pub fn first_failure(&self, sa: &SlantedAlg) -> Result<Option<Vec<usize>>> {
        if (uses_not(&self.lhs) || uses_not(&self.rhs)) && sa.sub.carrier().neg().is_none() {
            return Err(SlantedError::MissingNegation);
        }
        let n = sa.sub.n();
        let k = self.vars.len();
        let mut asg = vec![0usize; k];
        let d = sa.ext.delta();
        if n == 0 && k > 0 {
            return Ok(None);
        }
        loop {
            let env: Vec<usize> = asg.iter().map(|&a| sa.ext.embed_of(a)).collect();
            let l = eval(sa, &self.lhs, &env)?;
            let r = eval(sa, &self.rhs, &env)?;
            if !d.leq(l, r) {
                return Ok(Some(asg));
            }
            // odometer with the first variable most significant
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                asg[i] += 1;
                if asg[i] < n {
                    break;
                }
                asg[i] = 0;
            }
        }
    }

    pub fn holds(&self, sa: &SlantedAlg) -> Result<bool> {
        Ok(self.first_failure(sa)?.is_none())
    }
}

/// Evaluates a term in the completion under an assignment of base elements.
pub fn evaluate(sa: &SlantedAlg, t: &Term, v: &Assignment) -> Result<usize> {
    let vars: Vec<String> = t.vars().into_iter().collect();
    let mut env = Vec::with_capacity(vars.len());
    for name in &vars {
        let a = *v.get(name).ok_or_else(|| SlantedError::UnboundVariable(name.clone()))?;
        env.push(sa.ext.embed_of(a));
    }
    eval(sa, &compile_term(t, &vars), &env)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validity {
    pub valid: bool,
    /// First failing assignment in lexicographic order of sorted variable names.
    pub witness: Option<Assignment>,
}

/// Validity over all assignments of base elements, evaluated in the completion.
pub fn valid(sa: &SlantedAlg, ineq: &Inequality) -> Result<Validity> {
    let c = CompiledInequality::new(ineq);
    let fail = c.first_failure(sa)?;
    Ok(Validity {
        valid: fail.is_none(),
        witness: fail.map(|asg| c.vars.iter().cloned().zip(asg).collect()),
    })
}

/// Structural flags of a slanted algebra. The regularity and normality flags need a lattice
/// carrier and are `None` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlantedFlags {
    pub diamond_monotone: bool,
    pub square_monotone: bool,
    pub monotone: bool,
    /// `◇(a ∨ b) = ◇a ∨ ◇b`
    pub diamond_regular: Option<bool>,
    /// `■(a ∧ b) = ■a ∧ ■b`
    pub square_regular: Option<bool>,
    pub regular: Option<bool>,
    pub normal: Option<bool>,
    /// `◇a ≤ b ⇔ a ≤ ■b`
    pub tense: bool,
}

pub fn classify_slanted(sa: &SlantedAlg) -> SlantedFlags {
    let d = sa.ext.delta();
    let n = sa.sub.n();
    let e = |a: usize| sa.ext.embed_of(a);
    let tense = (0..n).all(|a| (0..n).all(|b| d.leq(sa.diamond[a], e(b)) == d.leq(e(a), sa.square[b])));
    let (diamond_regular, square_regular, normal) = match sa.sub.carrier().lattice() {
        Some(l) => {
            let dr = (0..n).all(|a| (0..n).all(|b| sa.diamond[l.join(a, b)] == d.join(sa.diamond[a], sa.diamond[b])));
            let sr = (0..n).all(|a| (0..n).all(|b| sa.square[l.meet(a, b)] == d.meet(sa.square[a], sa.square[b])));
            let nb = sa.diamond[l.bot()] == d.bot() && sa.square[l.top()] == d.top();
            (Some(dr), Some(sr), Some(dr && sr && nb))
        }
        None => (None, None, None),
    };
    SlantedFlags {
        diamond_monotone: sa.diamond_monotone,
        square_monotone: sa.square_monotone,
        monotone: sa.diamond_monotone && sa.square_monotone,
        diamond_regular,
        square_regular,
        regular: diamond_regular.zip(square_regular).map(|(a, b)| a && b),
        normal,
        tense,
    }
}
