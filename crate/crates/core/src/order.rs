//! Finite posets and lattices, irreducibles, prime filters, directedness, negation laws and
//! small free Boolean algebras.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{ElementSet, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PosetLaw {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl fmt::Display for PosetLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PosetLaw::Reflexivity => "reflexivity",
            PosetLaw::Antisymmetry => "antisymmetry",
            PosetLaw::Transitivity => "transitivity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("order matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("{law} fails at {witness:?}")]
    PosetLawViolation { law: PosetLaw, witness: Vec<usize> },
    #[error("elements {a} and {b} have no {missing}")]
    NotALattice { a: usize, b: usize, missing: &'static str },
    #[error("the carrier is empty")]
    EmptyCarrier,
    #[error("the lattice is not distributive")]
    NotDistributive,
    #[error("free Boolean algebras are supported on at most 3 generators, got {0}")]
    TooManyVariables(usize),
    #[error("invalid negation table: {0}")]
    BadNegation(String),
    #[error("index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{labels} labels given for {n} elements")]
    LabelCount { labels: usize, n: usize },
}

pub type Result<T, E = OrderError> = std::result::Result<T, E>;

/// A finite partial order on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    leq: Relation,
    geq: Relation,
    labels: Vec<String>,
}

/// Checks the poset laws on a boolean `leq` matrix.
///
/// Witnesses are the first failing tuple in index order: `(a)` for reflexivity, `(a, b)` with
/// `a < b` for antisymmetry, `(a, b, c)` for transitivity.
pub fn validate_poset(matrix: &[Vec<bool>]) -> Result<FinPoset> {
    let n = matrix.len();
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(OrderError::NotSquare { row, len: r.len(), expected: n });
        }
    }
    FinPoset::from_relation(Relation::from_matrix(matrix))
}

impl FinPoset {
    pub fn from_relation(leq: Relation) -> Result<Self> {
        let n = leq.size();
        for a in 0..n {
            if !leq.contains(a, a) {
                return Err(OrderError::PosetLawViolation { law: PosetLaw::Reflexivity, witness: vec![a] });
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if leq.contains(a, b) && leq.contains(b, a) {
                    return Err(OrderError::PosetLawViolation {
                        law: PosetLaw::Antisymmetry,
                        witness: vec![a, b],
                    });
                }
            }
        }
        if let Some((a, b, c)) = first_transitivity_failure(&leq) {
            return Err(OrderError::PosetLawViolation {
                law: PosetLaw::Transitivity,
                witness: vec![a, b, c],
            });
        }
        let geq = leq.transpose();
        Ok(Self { leq, geq, labels: (0..n).map(|i| i.to_string()).collect() })
    }

    /// Reflexive-transitive closure of the given covering pairs `(lower, upper)`.
    pub fn from_hasse(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut r = Relation::identity(n);
        for &(a, b) in covers {
            for i in [a, b] {
                if i >= n {
                    return Err(OrderError::IndexOutOfRange { index: i, n });
                }
            }
            r.insert(a, b);
        }
        // Warshall
        for k in 0..n {
            let rk = r.row(k).clone();
            for a in 0..n {
                if r.contains(a, k) {
                    r.row_mut(a).union_with(&rk);
                }
            }
        }
        Self::from_relation(r)
    }

    pub fn chain(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for a in 0..n {
            for b in a..n {
                r.insert(a, b);
            }
        }
        Self::from_relation(r).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relation(Relation::identity(n)).expect("antichain is a poset")
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n() {
            return Err(OrderError::LabelCount { labels: labels.len(), n: self.n() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.leq.size()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `↑a`.
    #[inline]
    pub fn up(&self, a: usize) -> &ElementSet {
        self.leq.row(a)
    }

    /// `↓a`.
    #[inline]
    pub fn down(&self, a: usize) -> &ElementSet {
        self.geq.row(a)
    }

    pub fn relation(&self) -> &Relation {
        &self.leq
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.n()).find(|&a| self.up(a).count() == self.n())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.n()).find(|&a| self.down(a).count() == self.n())
    }

    pub fn upper_bounds(&self, s: &ElementSet) -> ElementSet {
        let mut acc = ElementSet::full(self.n());
        for a in s.iter() {
            acc.intersect_with(self.up(a));
        }
        acc
    }

    pub fn lower_bounds(&self, s: &ElementSet) -> ElementSet {
        let mut acc = ElementSet::full(self.n());
        for a in s.iter() {
            acc.intersect_with(self.down(a));
        }
        acc
    }

    pub fn down_closure(&self, s: &ElementSet) -> ElementSet {
        self.geq.image(s)
    }

    pub fn up_closure(&self, s: &ElementSet) -> ElementSet {
        self.leq.image(s)
    }

    pub fn is_down_set(&self, s: &ElementSet) -> bool {
        self.down_closure(s) == *s
    }

    pub fn is_up_set(&self, s: &ElementSet) -> bool {
        self.up_closure(s) == *s
    }

    /// True if `f` (indexed by elements of `self`) is order-preserving into `target`.
    pub fn is_order_preserving(&self, f: &[usize], target: &FinPoset) -> bool {
        (0..self.n()).all(|a| self.up(a).iter().all(|b| target.leq(f[a], f[b])))
    }

    /// True if `f` is an order embedding into `target`: `a ≤ b ⇔ f(a) ≤ f(b)`.
    pub fn is_order_embedding(&self, f: &[usize], target: &FinPoset) -> bool {
        (0..self.n()).all(|a| (0..self.n()).all(|b| self.leq(a, b) == target.leq(f[a], f[b])))
    }
}

fn first_transitivity_failure(leq: &Relation) -> Option<(usize, usize, usize)> {
    let n = leq.size();
    for a in 0..n {
        for b in 0..n {
            if !leq.contains(a, b) {
                continue;
            }
            for c in 0..n {
                if leq.contains(b, c) && !leq.contains(a, c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// A finite lattice with precomputed operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLattice {
    poset: FinPoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bot: usize,
    top: usize,
    distributive: bool,
    boolean: bool,
    neg: Option<Vec<usize>>,
}

/// Computes meets and joins, or reports the first pair lacking one.
///
/// Boolean lattices get their complement table as negation.
pub fn to_lattice(p: &FinPoset) -> Result<FinLattice> {
    let n = p.n();
    if n == 0 {
        return Err(OrderError::EmptyCarrier);
    }
    let downs: HashMap<&ElementSet, usize> = (0..n).map(|a| (p.down(a), a)).collect();
    let ups: HashMap<&ElementSet, usize> = (0..n).map(|a| (p.up(a), a)).collect();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lb = p.down(a).intersection(p.down(b));
            let m = *downs
                .get(&lb)
                .ok_or(OrderError::NotALattice { a, b, missing: "meet" })?;
            let ub = p.up(a).intersection(p.up(b));
            let j = *ups
                .get(&ub)
                .ok_or(OrderError::NotALattice { a, b, missing: "join" })?;
            meet[a * n + b] = m;
            join[a * n + b] = j;
        }
    }
    let bot = p.bottom().expect("finite lattice has a bottom");
    let top = p.top().expect("finite lattice has a top");
    Ok(FinLattice::assemble(p.clone(), meet, join, bot, top))
}

impl FinLattice {
    fn assemble(poset: FinPoset, meet: Vec<usize>, join: Vec<usize>, bot: usize, top: usize) -> Self {
        let mut l = FinLattice { poset, meet, join, bot, top, distributive: false, boolean: false, neg: None };
        l.distributive = l.check_distributive();
        if l.distributive {
            let comp: Option<Vec<usize>> = (0..l.n()).map(|a| l.complement(a)).collect();
            if let Some(c) = comp {
                l.boolean = true;
                l.neg = Some(c);
            }
        }
        l
    }

    /// Trusted constructor for lattices whose tables and flags are known by construction.
    pub(crate) fn from_known_parts(
        poset: FinPoset,
        meet: Vec<usize>,
        join: Vec<usize>,
        bot: usize,
        top: usize,
        distributive: bool,
        neg: Option<Vec<usize>>,
    ) -> Self {
        let boolean = neg.is_some() && distributive;
        FinLattice { poset, meet, join, bot, top, distributive, boolean, neg }
    }

    fn check_distributive(&self) -> bool {
        let n = self.n();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Replaces the negation table.
    pub fn with_negation(mut self, neg: Vec<usize>) -> Result<Self> {
        if neg.len() != self.n() {
            return Err(OrderError::BadNegation(format!(
                "table has {} entries for {} elements",
                neg.len(),
                self.n()
            )));
        }
        if let Some(&bad) = neg.iter().find(|&&x| x >= self.n()) {
            return Err(OrderError::IndexOutOfRange { index: bad, n: self.n() });
        }
        self.neg = Some(neg);
        Ok(self)
    }

    pub fn without_negation(mut self) -> Self {
        self.neg = None;
        self
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        self.poset = self.poset.with_labels(labels)?;
        Ok(self)
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n() + b]
    }

    /// Meet of a family; `⊤` for the empty family.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a family; `⊥` for the empty family.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean
    }

    pub fn neg(&self) -> Option<&[usize]> {
        self.neg.as_deref()
    }

    pub fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }

    /// First complement of `a` in index order.
    pub fn complement(&self, a: usize) -> Option<usize> {
        (0..self.n()).find(|&b| self.meet(a, b) == self.bot && self.join(a, b) == self.top)
    }
}

/// Join-irreducible elements: `x ≠ ⊥` with `x = a ∨ b ⇒ x = a or x = b`.
pub fn join_irreducibles(l: &FinLattice) -> ElementSet {
    let n = l.n();
    let mut out = ElementSet::empty(n);
    for x in 0..n {
        if x == l.bot() {
            continue;
        }
        let irreducible = l
            .poset()
            .down(x)
            .iter()
            .all(|a| l.poset().down(x).iter().all(|b| l.join(a, b) != x || a == x || b == x));
        if irreducible {
            out.insert(x);
        }
    }
    out
}

/// Meet-irreducible elements: `x ≠ ⊤` with `x = a ∧ b ⇒ x = a or x = b`.
pub fn meet_irreducibles(l: &FinLattice) -> ElementSet {
    let n = l.n();
    let mut out = ElementSet::empty(n);
    for x in 0..n {
        if x == l.top() {
            continue;
        }
        let irreducible = l
            .poset()
            .up(x)
            .iter()
            .all(|a| l.poset().up(x).iter().all(|b| l.meet(a, b) != x || a == x || b == x));
        if irreducible {
            out.insert(x);
        }
    }
    out
}

/// Prime filters of a finite distributive lattice, as `↑a` for each join-prime `a`, in index
/// order of `a`.
pub fn prime_filters(l: &FinLattice) -> Result<Vec<ElementSet>> {
    if !l.is_distributive() {
        return Err(OrderError::NotDistributive);
    }
    let n = l.n();
    let join_prime = |a: usize| {
        a != l.bot()
            && (0..n).all(|x| {
                (0..n).all(|y| !l.leq(a, l.join(x, y)) || l.leq(a, x) || l.leq(a, y))
            })
    };
    Ok((0..n).filter(|&a| join_prime(a)).map(|a| l.poset().up(a).clone()).collect())
}

/// Filter test: non-empty, upward closed, closed under binary meets.
pub fn is_filter(s: &ElementSet, l: &FinLattice) -> bool {
    !s.is_empty()
        && l.poset().is_up_set(s)
        && s.iter().all(|a| s.iter().all(|b| s.contains(l.meet(a, b))))
}

/// Prime filter test: a proper filter with `a ∨ b ∈ F ⇒ a ∈ F or b ∈ F`.
pub fn is_prime_filter(s: &ElementSet, l: &FinLattice) -> bool {
    let n = l.n();
    is_filter(s, l)
        && !s.contains(l.bot())
        && (0..n).all(|a| (0..n).all(|b| !s.contains(l.join(a, b)) || s.contains(a) || s.contains(b)))
}

/// Every pair in `s` has a common lower bound in `s`. The empty set qualifies.
pub fn is_down_directed(s: &ElementSet, p: &FinPoset) -> bool {
    s.iter().all(|a| s.iter().all(|b| p.down(a).intersection(p.down(b)).intersects(s)))
}

/// Every pair in `s` has a common upper bound in `s`. The empty set qualifies.
pub fn is_up_directed(s: &ElementSet, p: &FinPoset) -> bool {
    s.iter().all(|a| s.iter().all(|b| p.up(a).intersection(p.up(b)).intersects(s)))
}

/// Independent flags for the usual laws of a unary negation on a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegationReport {
    /// `a ≤ b ⇒ ¬b ≤ ¬a`
    pub antitone: bool,
    /// `¬¬a = a`
    pub involutive: bool,
    /// `¬a ≤ b ⇔ ¬b ≤ a`
    pub left_self_adjoint: bool,
    /// `a ≤ ¬b ⇔ b ≤ ¬a`
    pub right_self_adjoint: bool,
    /// `a ≤ ¬¬a`
    pub inflationary: bool,
    /// `¬¬a ≤ a`
    pub deflationary: bool,
}

pub fn check_negation_laws(p: &FinPoset, neg: &[usize]) -> Result<NegationReport> {
    let n = p.n();
    if neg.len() != n {
        return Err(OrderError::BadNegation(format!("table has {} entries for {n} elements", neg.len())));
    }
    if let Some(&bad) = neg.iter().find(|&&x| x >= n) {
        return Err(OrderError::IndexOutOfRange { index: bad, n });
    }
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    Ok(NegationReport {
        antitone: pairs().all(|(a, b)| !p.leq(a, b) || p.leq(neg[b], neg[a])),
        involutive: (0..n).all(|a| neg[neg[a]] == a),
        left_self_adjoint: pairs().all(|(a, b)| p.leq(neg[a], b) == p.leq(neg[b], a)),
        right_self_adjoint: pairs().all(|(a, b)| p.leq(a, neg[b]) == p.leq(b, neg[a])),
        inflationary: (0..n).all(|a| p.leq(a, neg[neg[a]])),
        deflationary: (0..n).all(|a| p.leq(neg[neg[a]], a)),
    })
}

/// The free Boolean algebra on `k` generators, realised as truth tables.
///
/// Element `i` is the Boolean function whose truth table is the bit vector `i` over the `2^k`
/// rows; row `r` assigns generator `j` the value of bit `j` of `r`.
#[derive(Clone, Debug)]
pub struct FreeBooleanAlgebra {
    pub k: usize,
    pub lattice: FinLattice,
    pub generators: Vec<usize>,
}

impl FreeBooleanAlgebra {
    pub fn rows(&self) -> usize {
        1 << self.k
    }

    /// Truth-table mask of generator `j`.
    pub fn generator_mask(k: usize, j: usize) -> usize {
        (0..1usize << k).filter(|r| r >> j & 1 == 1).fold(0, |m, r| m | 1 << r)
    }
}

pub fn free_boolean_algebra(k: usize) -> Result<FreeBooleanAlgebra> {
    if k > 3 {
        return Err(OrderError::TooManyVariables(k));
    }
    let rows = 1usize << k;
    let n = 1usize << rows;
    let full = n - 1;
    let mut leq = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if a & !b == 0 {
                leq.insert(a, b);
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|m| format!("{m:0rows$b}")).collect();
    let poset = FinPoset::from_relation(leq)?.with_labels(labels)?;
    let meet = (0..n * n).map(|i| (i / n) & (i % n)).collect();
    let join = (0..n * n).map(|i| (i / n) | (i % n)).collect();
    let neg = (0..n).map(|a| full & !a).collect();
    let lattice = FinLattice::from_known_parts(poset, meet, join, 0, full, true, Some(neg));
    let generators = (0..k).map(|j| FreeBooleanAlgebra::generator_mask(k, j)).collect();
    Ok(FreeBooleanAlgebra { k, lattice, generators })
}

/// A finite carrier: a poset, or a lattice with operations.
#[derive(Clone, Debug)]
pub enum Carrier {
    Poset(FinPoset),
    Lattice(FinLattice),
}

impl Carrier {
    /// Promotes to a lattice carrier when every pair has a meet and a join.
    pub fn from_poset(p: FinPoset) -> Self {
        match to_lattice(&p) {
            Ok(l) => Carrier::Lattice(l),
            Err(_) => Carrier::Poset(p),
        }
    }

    pub fn poset(&self) -> &FinPoset {
        match self {
            Carrier::Poset(p) => p,
            Carrier::Lattice(l) => l.poset(),
        }
    }

    pub fn lattice(&self) -> Option<&FinLattice> {
        match self {
            Carrier::Poset(_) => None,
            Carrier::Lattice(l) => Some(l),
        }
    }

    pub fn n(&self) -> usize {
        self.poset().n()
    }

    pub fn neg(&self) -> Option<&[usize]> {
        self.lattice().and_then(FinLattice::neg)
    }

    pub fn is_distributive_lattice(&self) -> bool {
        self.lattice().is_some_and(FinLattice::is_distributive)
    }
}

impl From<FinLattice> for Carrier {
    fn from(l: FinLattice) -> Self {
        Carrier::Lattice(l)
    }
}

impl From<FinPoset> for Carrier {
    fn from(p: FinPoset) -> Self {
        Carrier::from_poset(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;

    #[test]
    fn antisymmetry_witness() {
        let m = vec![vec![true, true], vec![true, true]];
        let err = validate_poset(&m).unwrap_err();
        assert_eq!(
            err,
            OrderError::PosetLawViolation { law: PosetLaw::Antisymmetry, witness: vec![0, 1] }
        );
    }

    #[test]
    fn reflexivity_and_transitivity_witnesses() {
        let m = vec![vec![true, false], vec![false, false]];
        assert!(matches!(
            validate_poset(&m),
            Err(OrderError::PosetLawViolation { law: PosetLaw::Reflexivity, witness }) if witness == vec![1]
        ));
        let m = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(matches!(
            validate_poset(&m),
            Err(OrderError::PosetLawViolation { law: PosetLaw::Transitivity, witness }) if witness == vec![0, 1, 2]
        ));
    }

    #[test]
    fn b4_lattice_and_irreducibles() {
        let l = algebras::b4();
        assert!(l.is_distributive() && l.is_boolean());
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(join_irreducibles(&l).iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(meet_irreducibles(&l).iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(l.neg().unwrap(), &[3, 2, 1, 0]);
    }

    #[test]
    fn non_lattice_reports_pair() {
        let p = FinPoset::antichain(2);
        assert!(matches!(to_lattice(&p), Err(OrderError::NotALattice { a: 0, b: 1, .. })));
    }

    #[test]
    fn m3_and_n5_are_not_distributive() {
        assert!(!algebras::m3().is_distributive());
        assert!(!algebras::n5().is_distributive());
        assert_eq!(prime_filters(&algebras::m3()), Err(OrderError::NotDistributive));
    }

    #[test]
    fn directedness_of_empty_set() {
        let p = FinPoset::antichain(3);
        let e = ElementSet::empty(3);
        assert!(is_down_directed(&e, &p) && is_up_directed(&e, &p));
        let two = ElementSet::from_indices(3, [0, 1]);
        assert!(!is_down_directed(&two, &p));
    }

    #[test]
    fn free_algebra_sizes() {
        for k in 0..=3 {
            let f = free_boolean_algebra(k).unwrap();
            assert_eq!(f.lattice.n(), 1 << (1 << k));
            assert_eq!(join_irreducibles(&f.lattice).count(), 1 << k);
        }
        assert_eq!(free_boolean_algebra(4).unwrap_err(), OrderError::TooManyVariables(4));
    }

    #[test]
    fn free_algebra_tables_agree_with_order() {
        for k in 0..=2 {
            let f = free_boolean_algebra(k).unwrap();
            let rebuilt = to_lattice(f.lattice.poset()).unwrap();
            assert_eq!(rebuilt, f.lattice);
        }
    }

    #[test]
    fn negation_report_on_chain() {
        let p = FinPoset::chain(3);
        let r = check_negation_laws(&p, &[2, 1, 0]).unwrap();
        assert!(r.antitone && r.involutive && r.left_self_adjoint && r.right_self_adjoint);
        let r = check_negation_laws(&p, &[2, 0, 0]).unwrap();
        assert!(r.antitone && !r.involutive && r.inflationary && !r.deflationary);
        assert!(r.right_self_adjoint);
    }
}
