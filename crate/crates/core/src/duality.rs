//! Subordination spaces of finite subordination lattices and relational counterparts of the
//! algebraic conditions.
//!
//! Points are the join-irreducibles `J` of the completion, with `j R i` iff `i ≤ ◇j`. The
//! prime-filter presentation uses `P R Q` iff `≺[P] ⊆ Q`, ordered by reverse inclusion so that
//! `j ↦ ↑j` is an isomorphism.
//!
//! The bijection `λ: J → M`, `λ(j) = ⋁{x | j ≰ x}`, preserves order; its inverse `κ` turns the
//! law `■m ≤ n ⇔ κ(m) ≤ ◇κ(n)` on meet-irreducibles into statements about `R`. Carried through
//! for SL1 and S9 this yields witnesses `j` above `i₁ ∨ i₂` (resp. `i₁`); the `*Below` variants
//! keep the same premises but ask for `j` below instead.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{find_isomorphism, ElementSet, Relation};
use crate::completion::dm_completion;
use crate::order::{join_irreducibles, meet_irreducibles, prime_filters, FinLattice};
use crate::slanted::{build_slanted, SlantedAlg};
use crate::subordination::{is_subordination_algebra, ProtoSubAlg};

/// Largest number of points for which down-sets are enumerated.
pub const DOWNSET_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("expected a subordination algebra on a finite distributive lattice")]
    NotSubordinationLattice,
    #[error("the lattice is not distributive")]
    NotDistributive,
    #[error("{0} points exceed the down-set enumeration limit")]
    TooLarge(usize),
    #[error("unknown relational condition '{0}'")]
    UnknownCondition(String),
}

pub type Result<T, E = DualityError> = std::result::Result<T, E>;

/// A finite poset of points with a binary relation `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubordinationSpace {
    pub labels: Vec<String>,
    pub order: Relation,
    pub r: Relation,
}

impl SubordinationSpace {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.contains(a, b)
    }

    #[inline]
    pub fn rel(&self, a: usize, b: usize) -> bool {
        self.r.contains(a, b)
    }
}

fn require_sublattice(s: &ProtoSubAlg) -> Result<&FinLattice> {
    match s.carrier().lattice() {
        Some(l) if l.is_distributive() && is_subordination_algebra(s) => Ok(l),
        _ => Err(DualityError::NotSubordinationLattice),
    }
}

fn slanted_for(s: &ProtoSubAlg) -> SlantedAlg {
    let ext = Arc::new(dm_completion(s.carrier().poset()));
    build_slanted(s, ext).expect("same carrier")
}

/// Points `J` of the completion, `j R i` iff `i ≤ ◇j`.
pub fn build_space_jirr(s: &ProtoSubAlg) -> Result<SubordinationSpace> {
    require_sublattice(s)?;
    Ok(space_of_slanted(&slanted_for(s)))
}

/// [`build_space_jirr`] on an already built slanted algebra; `◇` must be monotone.
pub fn space_of_slanted(sa: &SlantedAlg) -> SubordinationSpace {
    let d = sa.ext().delta();
    let points: Vec<usize> = join_irreducibles(d).iter().collect();
    let k = points.len();
    let mut order = Relation::empty(k);
    let mut r = Relation::empty(k);
    for (x, &j) in points.iter().enumerate() {
        let dj = sa.apply_diamond(j).expect("subordination algebras are monotone");
        for (y, &i) in points.iter().enumerate() {
            if d.leq(j, i) {
                order.insert(x, y);
            }
            if d.leq(i, dj) {
                r.insert(x, y);
            }
        }
    }
    SubordinationSpace { labels: points.iter().map(|&j| d.label(j).to_string()).collect(), order, r }
}

/// Prime filters, ordered by reverse inclusion, `P R Q` iff `≺[P] ⊆ Q`.
pub fn build_space_primefilters(s: &ProtoSubAlg) -> Result<SubordinationSpace> {
    let l = require_sublattice(s)?;
    let filters = prime_filters(l).map_err(|_| DualityError::NotDistributive)?;
    let k = filters.len();
    let mut order = Relation::empty(k);
    let mut r = Relation::empty(k);
    for (x, p) in filters.iter().enumerate() {
        let image = s.prec().image(p);
        for (y, q) in filters.iter().enumerate() {
            if q.is_subset(p) {
                order.insert(x, y);
            }
            if image.is_subset(q) {
                r.insert(x, y);
            }
        }
    }
    let labels = filters
        .iter()
        .map(|p| {
            let least = p.iter().find(|&a| p.iter().all(|b| l.leq(a, b))).expect("principal");
            format!("↑{}", l.label(least))
        })
        .collect();
    Ok(SubordinationSpace { labels, order, r })
}

/// An isomorphism of points preserving and reflecting both order and `R`.
pub fn spaces_isomorphic(a: &SubordinationSpace, b: &SubordinationSpace) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    find_isomorphism(a.len(), &[(&a.order, &b.order), (&a.r, &b.r)])
}

/// `λ(j) = ⋁{x | j ≰ x}` for each join-irreducible `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMap {
    /// `(j, λ(j))` in increasing order of `j`.
    pub pairs: Vec<(usize, usize)>,
}

impl LambdaMap {
    pub fn to_meet_irreducible(&self, j: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == j).map(|p| p.1)
    }

    pub fn to_join_irreducible(&self, m: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.1 == m).map(|p| p.0)
    }
}

pub fn lambda_map(l: &FinLattice) -> Result<LambdaMap> {
    if !l.is_distributive() {
        return Err(DualityError::NotDistributive);
    }
    let pairs = join_irreducibles(l)
        .iter()
        .map(|j| (j, l.join_all((0..l.n()).filter(|&x| !l.leq(j, x)))))
        .collect();
    Ok(LambdaMap { pairs })
}

/// `λ` lands in `M`, is a bijection, and preserves and reflects order.
pub fn lambda_is_order_isomorphism(l: &FinLattice, lam: &LambdaMap) -> bool {
    let m = meet_irreducibles(l);
    let image = ElementSet::from_indices(l.n(), lam.pairs.iter().map(|p| p.1));
    image == m
        && lam.pairs.len() == m.count()
        && lam.pairs.iter().all(|&(j1, m1)| lam.pairs.iter().all(|&(j2, m2)| l.leq(j1, j2) == l.leq(m1, m2)))
}

/// `■m ≤ n ⇔ κ(m) ≤ ◇κ(n)` for all meet-irreducibles `m, n` of the completion, `κ = λ⁻¹`.
pub fn lambda_law_holds(s: &ProtoSubAlg) -> Result<bool> {
    require_sublattice(s)?;
    lambda_law_holds_in(&slanted_for(s))
}

/// [`lambda_law_holds`] on an already built slanted algebra over a distributive carrier.
pub fn lambda_law_holds_in(sa: &SlantedAlg) -> Result<bool> {
    let d = sa.ext().delta();
    let lam = lambda_map(d)?;
    let ms: Vec<usize> = meet_irreducibles(d).iter().collect();
    let kappa = |m: usize| lam.to_join_irreducible(m).expect("λ is onto M");
    Ok(ms.iter().all(|&m| {
        ms.iter().all(|&n| {
            let sq = sa.apply_square(m).expect("monotone");
            let dk = sa.apply_diamond(kappa(n)).expect("monotone");
            d.leq(sq, n) == d.leq(kappa(m), dk)
        })
    }))
}

macro_rules! conditions {
    ($($variant:ident => $text:expr),+ $(,)?) => {
        /// First-order conditions on a subordination space.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum RelCondition { $($variant),+ }

        impl RelCondition {
            pub const ALL: &'static [RelCondition] = &[$(RelCondition::$variant),+];

            pub fn name(self) -> &'static str {
                match self { $(RelCondition::$variant => $text),+ }
            }
        }
    };
}

conditions! {
    Reflexive => "reflexive",
    Transitive => "transitive",
    Dense => "dense",
    Proper => "proper",
    CT => "ct",
    S9Fwd => "s9_fwd",
    S9Bwd => "s9_bwd",
    SL1 => "sl1",
    SL2 => "sl2",
    S9Below => "s9_below",
    SL1Below => "sl1_below",
}

impl fmt::Display for RelCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelCondition {
    type Err = DualityError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        RelCondition::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| DualityError::UnknownCondition(t.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelCheck {
    pub holds: bool,
    /// First failing tuple of points (for `proper`, the failing down-set).
    pub witness: Option<Vec<usize>>,
}

fn tuples(k: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = k.checked_pow(arity as u32).unwrap_or(0);
    (0..total).map(move |mut c| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = c % k;
            c /= k;
        }
        t
    })
}

/// Evaluates a condition; tuples are searched in lexicographic order of the named points:
/// `(i)`, `(i, j, k)`, `(i, k)`, `(j, i)`, `(i₁, i₂, i₃)` or `(i₁, i₂, i₃, i₄)`.
pub fn check_relational(sp: &SubordinationSpace, cond: RelCondition) -> Result<RelCheck> {
    let k = sp.len();
    let pts = || 0..k;
    let r = |a: usize, b: usize| sp.rel(a, b);
    let le = |a: usize, b: usize| sp.leq(a, b);
    let fail: Option<Vec<usize>> = match cond {
        RelCondition::Reflexive => pts().find(|&i| !r(i, i)).map(|i| vec![i]),
        RelCondition::Transitive => tuples(k, 3).find(|t| r(t[0], t[1]) && r(t[1], t[2]) && !r(t[0], t[2])),
        RelCondition::Dense => tuples(k, 2).find(|t| r(t[0], t[1]) && !pts().any(|j| r(t[0], j) && r(j, t[1]))),
        RelCondition::CT => {
            tuples(k, 2).find(|t| r(t[0], t[1]) && !pts().any(|m| le(m, t[0]) && r(t[0], m) && r(m, t[1])))
        }
        RelCondition::S9Fwd => tuples(k, 3).find(|t| {
            let (i1, i2, i3) = (t[0], t[1], t[2]);
            r(i3, i1) && r(i3, i2) && !pts().any(|j| le(i1, j) && r(i3, j) && r(j, i2))
        }),
        RelCondition::S9Bwd => tuples(k, 3).find(|t| {
            let (i1, i2, i3) = (t[0], t[1], t[2]);
            pts().any(|j| le(i1, j) && r(j, i2) && r(i3, j)) && !(r(i3, i1) && r(i3, i2))
        }),
        RelCondition::S9Below => tuples(k, 3).find(|t| {
            let (i1, i2, i3) = (t[0], t[1], t[2]);
            (r(i3, i1) && r(i3, i2)) != pts().any(|j| le(j, i1) && r(j, i2) && r(i3, j))
        }),
        RelCondition::SL1 => tuples(k, 4).find(|t| {
            let (i1, i2, i3, i4) = (t[0], t[1], t[2], t[3]);
            r(i4, i1) && r(i4, i2) && r(i3, i4) && !pts().any(|j| le(i1, j) && le(i2, j) && r(i3, j))
        }),
        RelCondition::SL1Below => tuples(k, 4).find(|t| {
            let (i1, i2, i3, i4) = (t[0], t[1], t[2], t[3]);
            r(i4, i1) && r(i4, i2) && r(i3, i4) && !pts().any(|j| le(j, i1) && le(j, i2) && r(i3, j))
        }),
        RelCondition::SL2 => tuples(k, 4).find(|t| {
            let (i1, i2, i3, i4) = (t[0], t[1], t[2], t[3]);
            r(i1, i4) && r(i2, i4) && r(i4, i3) && !pts().any(|j| le(j, i1) && le(j, i2) && r(j, i3))
        }),
        RelCondition::Proper => {
            if k > DOWNSET_LIMIT {
                return Err(DualityError::TooLarge(k));
            }
            // every non-empty down-set D contains R[p] for some point p
            (1u64..1 << k)
                .map(|mask| ElementSet::from_mask(k, mask))
                .filter(|d| d.iter().all(|x| pts().all(|y| !le(y, x) || d.contains(y))))
                .find(|d| !pts().any(|p| sp.r.row(p).is_subset(d)))
                .map(|d| d.iter().collect())
        }
    };
    Ok(RelCheck { holds: fail.is_none(), witness: fail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;
    use crate::order::Carrier;

    fn leq_sub(l: FinLattice) -> ProtoSubAlg {
        let r = l.poset().relation().clone();
        ProtoSubAlg::new(Arc::new(Carrier::Lattice(l)), r).unwrap()
    }

    #[test]
    fn chain_space() {
        let s = leq_sub(algebras::chain(3));
        let sp = build_space_jirr(&s).unwrap();
        assert_eq!(sp.labels, vec!["m", "1"]);
        // points: m = 0, 1 = 1
        assert_eq!(sp.r.pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 0), (1, 1)]);
        let pf = build_space_primefilters(&s).unwrap();
        assert!(spaces_isomorphic(&sp, &pf).is_some());
        let transposed = SubordinationSpace { r: sp.r.transpose(), ..sp.clone() };
        assert!(spaces_isomorphic(&sp, &transposed).is_none());
    }

    #[test]
    fn lambda_examples() {
        let b4 = algebras::b4();
        let lam = lambda_map(&b4).unwrap();
        assert_eq!(lam.pairs, vec![(1, 2), (2, 1)]);
        let c = algebras::chain(3);
        let lam = lambda_map(&c).unwrap();
        // λ(m) = 0, λ(1) = m
        assert_eq!(lam.pairs, vec![(1, 0), (2, 1)]);
        assert!(lambda_is_order_isomorphism(&c, &lam));
        assert!(lambda_law_holds(&leq_sub(c)).unwrap());
    }

    #[test]
    fn rejects_non_subordination() {
        let s = ProtoSubAlg::new(Arc::new(algebras::b4().into()), Relation::empty(4)).unwrap();
        assert_eq!(build_space_jirr(&s), Err(DualityError::NotSubordinationLattice));
    }

    #[test]
    fn condition_names_roundtrip() {
        for c in RelCondition::ALL {
            assert_eq!(c.name().parse::<RelCondition>().unwrap(), *c);
        }
    }
}
