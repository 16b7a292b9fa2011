//! Input/output logic: norms over propositional formulas, read as a relation on a small free
//! Boolean algebra and closed under the rules of the systems `N₁ … N₄`.
//!
//! Norm files hold one `body |~ head` per line; `#` starts a comment and blank lines are
//! skipped. Inside a formula write `| ~` with a space, since `|~` separates body from head.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::bits::ElementSet;
use crate::completion::{dm_completion, CanonicalExtension};
use crate::order::{free_boolean_algebra, Carrier, FreeBooleanAlgebra};
use crate::slanted::build_slanted;
use crate::subordination::{close_i, ProtoSubAlg, SubordError};
use crate::syntax::{parse_formula, Formula, SyntaxError};

pub const MAX_VARIABLES: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {source}")]
    Syntax { line: usize, source: SyntaxError },
    #[error("line {line}: expected 'body |~ head'")]
    MissingSeparator { line: usize },
    #[error("line {line}: more than one '|~'; write '| ~' for a disjunction with a negation")]
    AmbiguousSeparator { line: usize },
    #[error("{0} distinct atoms; at most {MAX_VARIABLES} are supported")]
    TooManyVariables(usize),
    #[error("atom '{0}' has no value")]
    UnboundAtom(String),
    #[error("the formula uses ~ or -> but the carrier has no negation")]
    MissingNegation,
    #[error("the carrier must be a bounded lattice")]
    NotALattice,
    #[error(transparent)]
    Subord(#[from] SubordError),
}

pub type Result<T, E = IoError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Norm {
    pub body: Formula,
    pub head: Formula,
}

impl std::fmt::Display for Norm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} |~ {}", self.body, self.head)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormativeSystem {
    pub norms: Vec<Norm>,
}

impl NormativeSystem {
    pub fn new(norms: Vec<Norm>) -> Self {
        Self { norms }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.norms.iter().flat_map(|n| n.body.atoms().into_iter().chain(n.head.atoms())).collect()
    }
}

fn syntax_at(line: usize, offset: usize, e: SyntaxError) -> IoError {
    IoError::Syntax { line, source: SyntaxError { position: e.position + offset, message: e.message } }
}

/// Parses `body |~ head`; positions in errors are byte offsets into `text`.
pub fn parse_norm(text: &str, line: usize) -> Result<Norm> {
    let mut parts = text.match_indices("|~");
    let (at, _) = parts.next().ok_or(IoError::MissingSeparator { line })?;
    if parts.next().is_some() {
        return Err(IoError::AmbiguousSeparator { line });
    }
    let body = parse_formula(&text[..at]).map_err(|e| syntax_at(line, 0, e))?;
    let head = parse_formula(&text[at + 2..]).map_err(|e| syntax_at(line, at + 2, e))?;
    Ok(Norm { body, head })
}

pub fn parse_norms(text: &str) -> Result<NormativeSystem> {
    let mut norms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        norms.push(parse_norm(content, i + 1)?);
    }
    Ok(NormativeSystem { norms })
}

/// Comma-separated formulas; the empty string is the empty set.
pub fn parse_gamma(text: &str) -> Result<Vec<Formula>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_formula(s).map_err(|e| IoError::Syntax { line: 1, source: e }))
        .collect()
}

fn check_count(vars: &BTreeSet<String>) -> Result<()> {
    if vars.len() > MAX_VARIABLES {
        return Err(IoError::TooManyVariables(vars.len()));
    }
    Ok(())
}

/// Truth-table bitmask of `f`, with `vars[j]` read off bit `j` of the row number.
pub fn truth_table(f: &Formula, vars: &[String]) -> Result<usize> {
    let k = vars.len();
    let full = (1usize << (1usize << k)) - 1;
    Ok(match f {
        Formula::Atom(a) => {
            let j = vars.iter().position(|v| v == a).ok_or_else(|| IoError::UnboundAtom(a.clone()))?;
            FreeBooleanAlgebra::generator_mask(k, j)
        }
        Formula::Top => full,
        Formula::Bot => 0,
        Formula::Not(a) => full & !truth_table(a, vars)?,
        Formula::And(a, b) => truth_table(a, vars)? & truth_table(b, vars)?,
        Formula::Or(a, b) => truth_table(a, vars)? | truth_table(b, vars)?,
        Formula::Implies(a, b) => (full & !truth_table(a, vars)?) | truth_table(b, vars)?,
    })
}

/// Classical consequence, by truth tables.
pub fn entails(phi: &Formula, psi: &Formula) -> Result<bool> {
    let vars: BTreeSet<String> = phi.atoms().into_iter().chain(psi.atoms()).collect();
    check_count(&vars)?;
    let vars: Vec<String> = vars.into_iter().collect();
    Ok(truth_table(phi, &vars)? & !truth_table(psi, &vars)? == 0)
}

struct FreeCache {
    fba: Arc<FreeBooleanAlgebra>,
    carrier: Arc<Carrier>,
    ext: Arc<CanonicalExtension>,
}

fn free_cache(k: usize) -> &'static FreeCache {
    static CACHE: [OnceLock<FreeCache>; MAX_VARIABLES + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[k].get_or_init(|| {
        let fba = free_boolean_algebra(k).expect("k within range");
        let carrier = Arc::new(Carrier::Lattice(fba.lattice.clone()));
        let ext = Arc::new(dm_completion(fba.lattice.poset()));
        FreeCache { fba: Arc::new(fba), carrier, ext }
    })
}

/// The closure `N_i` of a normative system, over the free Boolean algebra on its atoms.
#[derive(Debug, Clone)]
pub struct NormClosure {
    vars: Vec<String>,
    fba: Arc<FreeBooleanAlgebra>,
    system: u8,
    closed: ProtoSubAlg,
}

impl NormClosure {
    /// Closes `norms` under system `i`, over the atoms of `norms` plus `extra_atoms`.
    pub fn new<I: IntoIterator<Item = String>>(norms: &NormativeSystem, i: u8, extra_atoms: I) -> Result<Self> {
        let mut vars = norms.atoms();
        vars.extend(extra_atoms);
        check_count(&vars)?;
        let vars: Vec<String> = vars.into_iter().collect();
        let cache = free_cache(vars.len());
        let pairs = norms
            .norms
            .iter()
            .map(|n| Ok((truth_table(&n.body, &vars)?, truth_table(&n.head, &vars)?)))
            .collect::<Result<Vec<_>>>()?;
        let raw = ProtoSubAlg::from_pairs(cache.carrier.clone(), &pairs)?;
        let closed = close_i(&raw, i)?;
        Ok(NormClosure { vars, fba: cache.fba.clone(), system: i, closed })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn system(&self) -> u8 {
        self.system
    }

    pub fn algebra(&self) -> &FreeBooleanAlgebra {
        &self.fba
    }

    pub fn relation(&self) -> &ProtoSubAlg {
        &self.closed
    }

    /// The element of the free algebra denoted by `f`.
    pub fn element(&self, f: &Formula) -> Result<usize> {
        truth_table(f, &self.vars)
    }

    pub fn derives(&self, body: &Formula, head: &Formula) -> Result<bool> {
        Ok(self.closed.holds(self.element(body)?, self.element(head)?))
    }

    /// `{b : (α, b) ∈ N_i for some α ∈ Γ}`.
    pub fn out_set(&self, gamma: &[Formula]) -> Result<ElementSet> {
        let mut acc = ElementSet::empty(self.fba.lattice.n());
        for a in gamma {
            acc.union_with(self.closed.succ(self.element(a)?));
        }
        Ok(acc)
    }

    pub fn out(&self, gamma: &[Formula], psi: &Formula) -> Result<bool> {
        Ok(self.out_set(gamma)?.contains(self.element(psi)?))
    }

    /// `◇ᵢ(⋀Γ) ≤ ψ`, with `⋀∅ = ⊤`.
    pub fn modal_output(&self, gamma: &[Formula], psi: &Formula) -> Result<bool> {
        let l = &self.fba.lattice;
        let k = gamma.iter().try_fold(l.top(), |acc, f| Ok::<_, IoError>(l.meet(acc, self.element(f)?)))?;
        let target = self.element(psi)?;
        let cache = free_cache(self.vars.len());
        let sa = build_slanted(&self.closed, cache.ext.clone()).expect("same carrier");
        let ext = sa.ext();
        let dk = sa.apply_diamond(ext.embed_of(k)).expect("value on the image");
        Ok(ext.delta().leq(dk, ext.embed_of(target)))
    }

    /// Disjunctive normal form of an element, over the closure's atoms.
    pub fn render(&self, element: usize) -> String {
        render_element(element, &self.vars)
    }
}

/// Disjunction of the minterms of a truth-table mask; `T` and `F` for the extremes.
pub fn render_element(mask: usize, vars: &[String]) -> String {
    let rows = 1usize << vars.len();
    let full = (1usize << rows) - 1;
    if mask == 0 {
        return "F".into();
    }
    if mask == full {
        return "T".into();
    }
    for (j, v) in vars.iter().enumerate() {
        let g = FreeBooleanAlgebra::generator_mask(vars.len(), j);
        if mask == g {
            return v.clone();
        }
        if mask == full & !g {
            return format!("~{v}");
        }
    }
    let minterms: Vec<String> = (0..rows)
        .filter(|r| mask >> r & 1 == 1)
        .map(|r| {
            let lits: Vec<String> = vars
                .iter()
                .enumerate()
                .map(|(j, v)| if r >> j & 1 == 1 { v.clone() } else { format!("~{v}") })
                .collect();
            lits.join(" & ")
        })
        .collect();
    if minterms.len() == 1 {
        minterms[0].clone()
    } else {
        minterms.iter().map(|m| if vars.len() > 1 { format!("({m})") } else { m.clone() }).collect::<Vec<_>>().join(" | ")
    }
}

fn atoms_of(norms: &NormativeSystem, fs: &[&Formula]) -> BTreeSet<String> {
    let mut v = norms.atoms();
    for f in fs {
        v.extend(f.atoms());
    }
    v
}

/// `(body, head) ∈ N_i`.
pub fn derive(norms: &NormativeSystem, i: u8, body: &Formula, head: &Formula) -> Result<bool> {
    let c = NormClosure::new(norms, i, atoms_of(norms, &[body, head]))?;
    c.derives(body, head)
}

/// `ψ ∈ out_i(N, Γ)`: some `α ∈ Γ` has `(α, ψ) ∈ N_i`.
pub fn out(norms: &NormativeSystem, i: u8, gamma: &[Formula], psi: &Formula) -> Result<bool> {
    let refs: Vec<&Formula> = gamma.iter().chain(std::iter::once(psi)).collect();
    let c = NormClosure::new(norms, i, atoms_of(norms, &refs))?;
    c.out(gamma, psi)
}

/// `◇ᵢ^σ(⋀Γ) ≤ ψ` in the slanted algebra of `N_i`.
pub fn modal_output(norms: &NormativeSystem, i: u8, gamma: &[Formula], psi: &Formula) -> Result<bool> {
    let refs: Vec<&Formula> = gamma.iter().chain(std::iter::once(psi)).collect();
    let c = NormClosure::new(norms, i, atoms_of(norms, &refs))?;
    c.modal_output(gamma, psi)
}

/// A proto-subordination algebra on a bounded lattice with a valuation of atoms.
#[derive(Debug, Clone)]
pub struct IoModel {
    pub sub: ProtoSubAlg,
    pub valuation: BTreeMap<String, usize>,
}

impl IoModel {
    /// Homomorphic image of a formula; `α → β` is read as `¬α ∨ β`.
    pub fn value(&self, f: &Formula) -> Result<usize> {
        let l = self.sub.carrier().lattice().ok_or(IoError::NotALattice)?;
        let neg = || self.sub.carrier().neg().ok_or(IoError::MissingNegation);
        Ok(match f {
            Formula::Atom(a) => *self.valuation.get(a).ok_or_else(|| IoError::UnboundAtom(a.clone()))?,
            Formula::Top => l.top(),
            Formula::Bot => l.bot(),
            Formula::Not(a) => neg()?[self.value(a)?],
            Formula::And(a, b) => l.meet(self.value(a)?, self.value(b)?),
            Formula::Or(a, b) => l.join(self.value(a)?, self.value(b)?),
            Formula::Implies(a, b) => l.join(neg()?[self.value(a)?], self.value(b)?),
        })
    }
}

/// Index of the first norm `(α, β)` with `h(α) ⊀ h(β)`, or `None` if all norms hold.
pub fn check_model(m: &IoModel, norms: &NormativeSystem) -> Result<Option<usize>> {
    for (i, n) in norms.norms.iter().enumerate() {
        if !m.sub.holds(m.value(&n.body)?, m.value(&n.head)?) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
