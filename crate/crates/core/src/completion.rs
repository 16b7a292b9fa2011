//! Canonical extensions of finite posets, built as Dedekind–MacNeille completions, and the
//! σ/π extensions of a negation.

use std::collections::HashSet;

use thiserror::Error;

use crate::bits::{ElementSet, Relation};
use crate::order::{check_negation_laws, is_down_directed, is_up_directed, to_lattice, FinLattice, FinPoset, OrderError};

/// Largest base size for which the subset-enumerating checks run.
pub const ENUMERATION_LIMIT: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("subset enumeration needs at most {limit} base elements, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("negation fails the {0} law on the base")]
    NegationLawsFail(&'static str),
    #[error("map is not an order embedding of the base")]
    NotAnEmbedding,
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A finite poset together with a complete lattice it embeds into.
///
/// For posets produced by [`dm_completion`] the lattice is the Dedekind–MacNeille completion,
/// which for finite posets is the canonical extension.
#[derive(Clone, Debug)]
pub struct CanonicalExtension {
    base: FinPoset,
    delta: FinLattice,
    embed: Vec<usize>,
    base_of: Vec<Option<usize>>,
    closed: ElementSet,
    open: ElementSet,
}

/// Cuts `(L, L^u)` with `L = (L^u)^l`, ordered by inclusion of lower parts; `embed(x) = ↓x`.
pub fn dm_completion(p: &FinPoset) -> CanonicalExtension {
    let n = p.n();
    let mut cuts: Vec<ElementSet> = Vec::new();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    for s in std::iter::once(ElementSet::full(n)).chain((0..n).map(|x| p.down(x).clone())) {
        if seen.insert(s.clone()) {
            cuts.push(s);
        }
    }
    // close under pairwise intersection
    let mut i = 0;
    while i < cuts.len() {
        for j in 0..i {
            let c = cuts[i].intersection(&cuts[j]);
            if seen.insert(c.clone()) {
                cuts.push(c);
            }
        }
        i += 1;
    }
    cuts.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.iter().cmp(b.iter())));

    let m = cuts.len();
    let mut leq = Relation::empty(m);
    for i in 0..m {
        for j in 0..m {
            if cuts[i].is_subset(&cuts[j]) {
                leq.insert(i, j);
            }
        }
    }
    let embed: Vec<usize> = (0..n)
        .map(|x| cuts.iter().position(|c| c == p.down(x)).expect("principal cut present"))
        .collect();
    let labels: Vec<String> = (0..m)
        .map(|i| match embed.iter().position(|&e| e == i) {
            Some(x) => p.label(x).to_string(),
            None => {
                let maxes: Vec<&str> = cuts[i]
                    .iter()
                    .filter(|&x| cuts[i].iter().all(|y| y == x || !p.leq(x, y)))
                    .map(|x| p.label(x))
                    .collect();
                format!("[{}]", maxes.join(","))
            }
        })
        .collect();
    let poset = FinPoset::from_relation(leq).expect("inclusion is a partial order");
    let poset = poset.with_labels(labels).expect("label count");
    let delta = to_lattice(&poset).expect("a closure system is a complete lattice");
    CanonicalExtension::assemble(p.clone(), delta, embed)
}

impl CanonicalExtension {
    fn assemble(base: FinPoset, delta: FinLattice, embed: Vec<usize>) -> Self {
        let mut base_of = vec![None; delta.n()];
        for (x, &e) in embed.iter().enumerate() {
            base_of[e] = Some(x);
        }
        let (closed, open) = if base.n() <= ENUMERATION_LIMIT {
            closed_and_open_by_definition(&base, &delta, &embed)
        } else {
            // Finite directed sets have extrema, so both sets are the image of the embedding.
            let image = ElementSet::from_indices(delta.n(), embed.iter().copied());
            (image.clone(), image)
        };
        Self { base, delta, embed, base_of, closed, open }
    }

    /// Wraps an arbitrary order embedding of `base` into a finite lattice, for checking
    /// density and compactness of candidate completions.
    pub fn from_parts(base: FinPoset, delta: FinLattice, embed: Vec<usize>) -> Result<Self, CompletionError> {
        if embed.len() != base.n()
            || embed.iter().any(|&e| e >= delta.n())
            || !base.is_order_embedding(&embed, delta.poset())
        {
            return Err(CompletionError::NotAnEmbedding);
        }
        Ok(Self::assemble(base, delta, embed))
    }

    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn delta(&self) -> &FinLattice {
        &self.delta
    }

    pub fn embed(&self) -> &[usize] {
        &self.embed
    }

    #[inline]
    pub fn embed_of(&self, x: usize) -> usize {
        self.embed[x]
    }

    /// Base element sent to `u`, if any.
    #[inline]
    pub fn base_of(&self, u: usize) -> Option<usize> {
        self.base_of[u]
    }

    /// Meets of non-empty down-directed subsets of the image.
    pub fn closed(&self) -> &ElementSet {
        &self.closed
    }

    /// Joins of non-empty up-directed subsets of the image.
    pub fn open(&self) -> &ElementSet {
        &self.open
    }

    pub fn image(&self) -> ElementSet {
        ElementSet::from_indices(self.delta.n(), self.embed.iter().copied())
    }
}

/// Non-empty subsets of the base (as masks) that are down- resp. up-directed.
fn directed_masks(base: &FinPoset) -> (Vec<u64>, Vec<u64>) {
    let n = base.n();
    let mut down = Vec::new();
    let mut up = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let s = ElementSet::from_mask(n, mask);
        if is_down_directed(&s, base) {
            down.push(mask);
        }
        if is_up_directed(&s, base) {
            up.push(mask);
        }
    }
    (down, up)
}

fn mask_members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn closed_and_open_by_definition(base: &FinPoset, delta: &FinLattice, embed: &[usize]) -> (ElementSet, ElementSet) {
    let (down, up) = directed_masks(base);
    let closed = ElementSet::from_indices(
        delta.n(),
        down.iter().map(|&m| delta.meet_all(mask_members(m).map(|x| embed[x]))),
    );
    let open = ElementSet::from_indices(
        delta.n(),
        up.iter().map(|&m| delta.join_all(mask_members(m).map(|x| embed[x]))),
    );
    (closed, open)
}

fn check_enumerable(c: &CanonicalExtension) -> Result<(), CompletionError> {
    if c.base.n() > ENUMERATION_LIMIT {
        return Err(CompletionError::TooLarge { n: c.base.n(), limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// Every element is a join of closed elements and a meet of open elements.
pub fn verify_dense(c: &CanonicalExtension) -> Result<bool, CompletionError> {
    check_enumerable(c)?;
    let d = &c.delta;
    let (k, o) = closed_and_open_by_definition(&c.base, d, &c.embed);
    Ok((0..d.n()).all(|u| {
        d.join_all(k.iter().filter(|&x| d.leq(x, u))) == u && d.meet_all(o.iter().filter(|&x| d.leq(u, x))) == u
    }))
}

/// For non-empty down-directed `F` and up-directed `I` in the base,
/// `⋀F ≤ ⋁I` implies `a ≤ b` for some `a ∈ F`, `b ∈ I`.
pub fn verify_compact(c: &CanonicalExtension) -> Result<bool, CompletionError> {
    check_enumerable(c)?;
    let d = &c.delta;
    let n = c.base.n();
    let (down, up) = directed_masks(&c.base);
    let ups: Vec<(u64, usize)> = up
        .iter()
        .map(|&m| (m, d.join_all(mask_members(m).map(|x| c.embed[x]))))
        .collect();
    for &f in &down {
        let meet = d.meet_all(mask_members(f).map(|x| c.embed[x]));
        // base elements above some member of F, judged in delta
        let above: u64 = (0..n)
            .filter(|&b| mask_members(f).any(|a| d.leq(c.embed[a], c.embed[b])))
            .fold(0, |acc, b| acc | 1 << b);
        for &(i, join) in &ups {
            if d.leq(meet, join) && i & above == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// σ-extension of a negation: `¬o = ⋀{¬a | a ≤ o}` on open `o`, then
/// `¬u = ⋁{¬o | u ≤ o, o open}`. Needs an antitone, left self-adjoint base negation.
pub fn extend_negation_sigma(c: &CanonicalExtension, neg: &[usize]) -> Result<Vec<usize>, CompletionError> {
    let laws = check_negation_laws(&c.base, neg)?;
    if !laws.antitone {
        return Err(CompletionError::NegationLawsFail("antitone"));
    }
    if !laws.left_self_adjoint {
        return Err(CompletionError::NegationLawsFail("left self-adjoint"));
    }
    let d = &c.delta;
    let n = c.base.n();
    let mut on_open = vec![d.top(); d.n()];
    for o in c.open.iter() {
        on_open[o] = d.meet_all((0..n).filter(|&a| d.leq(c.embed[a], o)).map(|a| c.embed[neg[a]]));
    }
    Ok((0..d.n())
        .map(|u| d.join_all(c.open.iter().filter(|&o| d.leq(u, o)).map(|o| on_open[o])))
        .collect())
}

/// π-extension of a negation: `¬k = ⋁{¬a | k ≤ a}` on closed `k`, then
/// `¬u = ⋀{¬k | k ≤ u, k closed}`. Needs an antitone, right self-adjoint base negation.
pub fn extend_negation_pi(c: &CanonicalExtension, neg: &[usize]) -> Result<Vec<usize>, CompletionError> {
    let laws = check_negation_laws(&c.base, neg)?;
    if !laws.antitone {
        return Err(CompletionError::NegationLawsFail("antitone"));
    }
    if !laws.right_self_adjoint {
        return Err(CompletionError::NegationLawsFail("right self-adjoint"));
    }
    let d = &c.delta;
    let n = c.base.n();
    let mut on_closed = vec![d.bot(); d.n()];
    for k in c.closed.iter() {
        on_closed[k] = d.join_all((0..n).filter(|&a| d.leq(k, c.embed[a])).map(|a| c.embed[neg[a]]));
    }
    Ok((0..d.n())
        .map(|u| d.meet_all(c.closed.iter().filter(|&k| d.leq(k, u)).map(|k| on_closed[k])))
        .collect())
}

/// Law flags of an extended negation, read off on the completion itself.
pub fn extended_negation_laws(c: &CanonicalExtension, ext: &[usize]) -> crate::order::NegationReport {
    check_negation_laws(c.delta.poset(), ext).expect("extension table has the right shape")
}
