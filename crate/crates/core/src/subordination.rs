//! Proto-subordination algebras: a binary relation on a finite carrier, its first-order
//! properties, the named classes built from them, and Horn-rule closure.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{ElementSet, Relation};
use crate::order::{join_irreducibles, Carrier, FinLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubordError {
    #[error("{property} needs {need}")]
    MissingStructure { property: String, need: &'static str },
    #[error("pair ({a}, {b}) out of range for {n} elements")]
    IndexOutOfRange { a: usize, b: usize, n: usize },
    #[error("relation on {got} elements does not fit a carrier of {n}")]
    SizeMismatch { got: usize, n: usize },
    #[error("closure system must be 1..=4, got {0}")]
    InvalidSystem(u8),
    #[error("unknown property '{0}'")]
    UnknownProperty(String),
    #[error("unknown rule '{0}'")]
    UnknownRule(String),
}

pub type Result<T, E = SubordError> = std::result::Result<T, E>;

/// A finite carrier with a binary relation `≺`.
#[derive(Clone, Debug)]
pub struct ProtoSubAlg {
    carrier: Arc<Carrier>,
    prec: Relation,
    inv: Relation,
}

impl PartialEq for ProtoSubAlg {
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && self.carrier.poset() == other.carrier.poset()
    }
}

impl ProtoSubAlg {
    pub fn new(carrier: Arc<Carrier>, prec: Relation) -> Result<Self> {
        if prec.size() != carrier.n() {
            return Err(SubordError::SizeMismatch { got: prec.size(), n: carrier.n() });
        }
        let inv = prec.transpose();
        Ok(Self { carrier, prec, inv })
    }

    pub fn from_pairs(carrier: Arc<Carrier>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = carrier.n();
        let prec = match Relation::from_pairs(n, pairs.iter().copied()) {
            Some(r) => r,
            None => {
                let &(a, b) = pairs.iter().find(|(a, b)| *a >= n || *b >= n).unwrap();
                return Err(SubordError::IndexOutOfRange { a, b, n });
            }
        };
        Self::new(carrier, prec)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn n(&self) -> usize {
        self.carrier.n()
    }

    pub fn prec(&self) -> &Relation {
        &self.prec
    }

    #[inline]
    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.prec.contains(a, b)
    }

    /// `≺[a]`.
    #[inline]
    pub fn succ(&self, a: usize) -> &ElementSet {
        self.prec.row(a)
    }

    /// `≺⁻¹[a]`.
    #[inline]
    pub fn pred(&self, a: usize) -> &ElementSet {
        self.inv.row(a)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.prec.pairs().collect()
    }

    /// Same carrier, different relation.
    pub fn with_relation(&self, prec: Relation) -> Self {
        Self::new(self.carrier.clone(), prec).expect("same carrier size")
    }
}

impl fmt::Display for ProtoSubAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.carrier.poset();
        let items: Vec<String> = self.prec.pairs().map(|(a, b)| format!("({}, {})", p.label(a), p.label(b))).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

macro_rules! named_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $text:expr),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

named_enum! {
    /// First-order conditions on `≺`.
    PropertyName {
        Bot => "BOT",
        Top => "TOP",
        SI => "SI",
        WO => "WO",
        And => "AND",
        Or => "OR",
        D => "D",
        S6 => "S6",
        CT => "CT",
        T => "T",
        DD => "DD",
        UD => "UD",
        S9Fwd => "S9_FWD",
        S9Bwd => "S9_BWD",
        SL1 => "SL1",
        SL2 => "SL2",
        PrecInLeq => "PREC_IN_LEQ",
        LeqInPrec => "LEQ_IN_PREC",
        Proper => "PROPER",
    }
}

impl FromStr for PropertyName {
    type Err = SubordError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let alias = match t {
            "⊥" => "BOT",
            "⊤" => "TOP",
            "S9=>" | "S9⇒" => "S9_FWD",
            "S9<=" | "S9⇐" => "S9_BWD",
            other => other,
        };
        PropertyName::ALL
            .iter()
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(alias))
            .ok_or_else(|| SubordError::UnknownProperty(t.to_string()))
    }
}

/// Outcome of a property check; `witness` is the first counterexample tuple in index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl PropertyCheck {
    fn from_witness(w: Option<Vec<usize>>) -> Self {
        PropertyCheck { holds: w.is_none(), witness: w }
    }
}

fn need_lattice<'a>(s: &'a ProtoSubAlg, p: PropertyName, what: &'static str) -> Result<&'a FinLattice> {
    s.carrier
        .lattice()
        .ok_or(SubordError::MissingStructure { property: p.name().to_string(), need: what })
}

/// Checks one property. Tuple orders of witnesses:
///
/// | property | tuple |
/// |---|---|
/// | BOT, TOP | `()` |
/// | SI | `(a, b, x)` with `a ≤ b ≺ x` |
/// | WO | `(b, x, y)` with `b ≺ x ≤ y` |
/// | AND | `(a, x, y)` |
/// | OR | `(a, b, x)` |
/// | D | `(a, c)` |
/// | S6, PREC_IN_LEQ, LEQ_IN_PREC | `(a, b)` |
/// | CT, T | `(a, b, c)` |
/// | DD | `(a, x1, x2)` |
/// | UD | `(a1, a2, x)` |
/// | S9_FWD | `(a, b, x, c)` |
/// | S9_BWD | `(a, b, x, a', b')` |
/// | SL1, SL2 | `(a, b, c)` |
/// | PROPER | `(a)` |
pub fn check_property(s: &ProtoSubAlg, p: PropertyName) -> Result<PropertyCheck> {
    let n = s.n();
    let po = s.carrier.poset();
    let w: Option<Vec<usize>> = match p {
        PropertyName::Bot => {
            let b = po.bottom().ok_or(SubordError::MissingStructure {
                property: p.name().into(),
                need: "a bottom element",
            })?;
            (!s.holds(b, b)).then(Vec::new)
        }
        PropertyName::Top => {
            let t = po.top().ok_or(SubordError::MissingStructure {
                property: p.name().into(),
                need: "a top element",
            })?;
            (!s.holds(t, t)).then(Vec::new)
        }
        PropertyName::SI => first(
            (0..n).flat_map(|a| po.up(a).iter().flat_map(move |b| s.succ(b).iter().map(move |x| (a, b, x)))),
            |&(a, _, x)| !s.holds(a, x),
        )
        .map(|(a, b, x)| vec![a, b, x]),
        PropertyName::WO => first(
            (0..n).flat_map(|b| s.succ(b).iter().flat_map(move |x| po.up(x).iter().map(move |y| (b, x, y)))),
            |&(b, _, y)| !s.holds(b, y),
        )
        .map(|(b, x, y)| vec![b, x, y]),
        PropertyName::And => {
            let l = need_lattice(s, p, "binary meets")?;
            first(
                (0..n).flat_map(|a| s.succ(a).iter().flat_map(move |x| s.succ(a).iter().map(move |y| (a, x, y)))),
                |&(a, x, y)| !s.holds(a, l.meet(x, y)),
            )
            .map(|(a, x, y)| vec![a, x, y])
        }
        PropertyName::Or => {
            let l = need_lattice(s, p, "binary joins")?;
            first(
                (0..n).flat_map(|a| {
                    (0..n).flat_map(move |b| s.succ(a).intersection(s.succ(b)).iter().map(move |x| (a, b, x)).collect::<Vec<_>>())
                }),
                |&(a, b, x)| !s.holds(l.join(a, b), x),
            )
            .map(|(a, b, x)| vec![a, b, x])
        }
        PropertyName::D => first(
            (0..n).flat_map(|a| s.succ(a).iter().map(move |c| (a, c))),
            |&(a, c)| !s.succ(a).intersects(s.pred(c)),
        )
        .map(|(a, c)| vec![a, c]),
        PropertyName::S6 => {
            let neg = s.carrier.neg().ok_or(SubordError::MissingStructure {
                property: p.name().into(),
                need: "a negation",
            })?;
            first((0..n).flat_map(|a| s.succ(a).iter().map(move |b| (a, b))), |&(a, b)| !s.holds(neg[b], neg[a]))
                .map(|(a, b)| vec![a, b])
        }
        PropertyName::CT => {
            let l = need_lattice(s, p, "binary meets")?;
            first(
                (0..n).flat_map(|a| {
                    s.succ(a).iter().flat_map(move |b| s.succ(l.meet(a, b)).iter().map(move |c| (a, b, c)))
                }),
                |&(a, _, c)| !s.holds(a, c),
            )
            .map(|(a, b, c)| vec![a, b, c])
        }
        PropertyName::T => first(
            (0..n).flat_map(|a| s.succ(a).iter().flat_map(move |b| s.succ(b).iter().map(move |c| (a, b, c)))),
            |&(a, _, c)| !s.holds(a, c),
        )
        .map(|(a, b, c)| vec![a, b, c]),
        PropertyName::DD => first(
            (0..n).flat_map(|a| s.succ(a).iter().flat_map(move |x1| s.succ(a).iter().map(move |x2| (a, x1, x2)))),
            |&(a, x1, x2)| !s.succ(a).intersection(po.down(x1)).intersects(po.down(x2)),
        )
        .map(|(a, x1, x2)| vec![a, x1, x2]),
        PropertyName::UD => first(
            (0..n).flat_map(|a1| {
                (0..n).flat_map(move |a2| s.succ(a1).intersection(s.succ(a2)).iter().map(move |x| (a1, a2, x)).collect::<Vec<_>>())
            }),
            |&(a1, a2, x)| !s.pred(x).intersection(po.up(a1)).intersects(po.up(a2)),
        )
        .map(|(a1, a2, x)| vec![a1, a2, x]),
        PropertyName::S9Fwd => {
            let l = need_lattice(s, p, "binary joins")?;
            // ∃c(c≺b ∧ x≺a∨c) ⇒ ∃a'∃b'(a'≺a ∧ b'≺b ∧ x ≤ a'∨b')
            let rhs = |a: usize, b: usize, x: usize| {
                s.pred(a).iter().any(|a1| s.pred(b).iter().any(|b1| l.leq(x, l.join(a1, b1))))
            };
            let mut found = None;
            'outer: for a in 0..n {
                for b in 0..n {
                    for x in 0..n {
                        let c = s.pred(b).iter().find(|&c| s.holds(x, l.join(a, c)));
                        if let Some(c) = c {
                            if !rhs(a, b, x) {
                                found = Some(vec![a, b, x, c]);
                                break 'outer;
                            }
                        }
                    }
                }
            }
            found
        }
        PropertyName::S9Bwd => {
            let l = need_lattice(s, p, "binary joins")?;
            // ∃a'∃b'(a'≺a ∧ b'≺b ∧ x ≤ a'∨b') ⇒ ∃c(c≺b ∧ x≺a∨c)
            let mut found = None;
            'outer: for a in 0..n {
                for b in 0..n {
                    for x in 0..n {
                        let lhs = s
                            .pred(a)
                            .iter()
                            .flat_map(|a1| s.pred(b).iter().map(move |b1| (a1, b1)))
                            .find(|&(a1, b1)| l.leq(x, l.join(a1, b1)));
                        if let Some((a1, b1)) = lhs {
                            if !s.pred(b).iter().any(|c| s.holds(x, l.join(a, c))) {
                                found = Some(vec![a, b, x, a1, b1]);
                                break 'outer;
                            }
                        }
                    }
                }
            }
            found
        }
        PropertyName::SL1 => {
            let l = need_lattice(s, p, "binary joins")?;
            first(
                (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))),
                |&(a, b, c)| {
                    s.holds(a, l.join(b, c))
                        && !s.pred(b).iter().any(|b1| s.pred(c).iter().any(|c1| s.holds(a, l.join(b1, c1))))
                },
            )
            .map(|(a, b, c)| vec![a, b, c])
        }
        // b∧c ≺ a ⇒ ∃b'∃c'(b≺b' ∧ c≺c' ∧ b'∧c' ≺ a)
        PropertyName::SL2 => {
            let l = need_lattice(s, p, "binary meets")?;
            first(
                (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))),
                |&(a, b, c)| {
                    s.holds(l.meet(b, c), a)
                        && !s.succ(b).iter().any(|b1| s.succ(c).iter().any(|c1| s.holds(l.meet(b1, c1), a)))
                },
            )
            .map(|(a, b, c)| vec![a, b, c])
        }
        PropertyName::PrecInLeq => {
            first((0..n).flat_map(|a| s.succ(a).iter().map(move |b| (a, b))), |&(a, b)| !po.leq(a, b))
                .map(|(a, b)| vec![a, b])
        }
        PropertyName::LeqInPrec => {
            first((0..n).flat_map(|a| po.up(a).iter().map(move |b| (a, b))), |&(a, b)| !s.holds(a, b))
                .map(|(a, b)| vec![a, b])
        }
        PropertyName::Proper => {
            let bot = po.bottom().ok_or(SubordError::MissingStructure {
                property: p.name().into(),
                need: "a bottom element",
            })?;
            (0..n)
                .find(|&a| a != bot && s.pred(a).iter().all(|x| x == bot))
                .map(|a| vec![a])
        }
    };
    Ok(PropertyCheck::from_witness(w))
}

fn first<T, I: Iterator<Item = T>>(mut it: I, bad: impl Fn(&T) -> bool) -> Option<T> {
    it.find(|t| bad(t))
}

/// `Some(holds)`, or `None` when the carrier lacks the structure the property mentions.
pub fn property_holds(s: &ProtoSubAlg, p: PropertyName) -> Option<bool> {
    check_property(s, p).ok().map(|c| c.holds)
}

named_enum! {
    /// Named classes of proto-subordination algebras.
    ClassName {
        DiamondPremonotone => "◇-premonotone",
        BoxPremonotone => "■-premonotone",
        Premonotone => "premonotone",
        DiamondDirected => "◇-directed",
        BoxDirected => "■-directed",
        DiamondMonotone => "◇-monotone",
        BoxMonotone => "■-monotone",
        Monotone => "directed/monotone",
        DiamondRegular => "◇-regular",
        BoxRegular => "■-regular",
        Regular => "regular",
        DiamondNormal => "◇-normal",
        BoxNormal => "■-normal",
        SubordinationAlgebra => "subordination algebra",
    }
}

impl ClassName {
    pub fn properties(self) -> &'static [PropertyName] {
        use PropertyName::*;
        match self {
            ClassName::DiamondPremonotone => &[SI],
            ClassName::BoxPremonotone => &[WO],
            ClassName::Premonotone => &[SI, WO],
            ClassName::DiamondDirected => &[WO, DD],
            ClassName::BoxDirected => &[SI, UD],
            ClassName::DiamondMonotone => &[WO, DD, SI],
            ClassName::BoxMonotone => &[SI, UD, WO],
            ClassName::Monotone => &[SI, WO, UD, DD],
            ClassName::DiamondRegular => &[SI, WO, DD, Or],
            ClassName::BoxRegular => &[SI, WO, UD, And],
            ClassName::Regular => &[SI, WO, Or, And],
            ClassName::DiamondNormal => &[SI, WO, DD, Or, Bot],
            ClassName::BoxNormal => &[SI, WO, UD, And, Top],
            ClassName::SubordinationAlgebra => &[SI, WO, Or, And, Bot, Top],
        }
    }
}

/// Every named class the algebra belongs to, in table order. Classes whose properties need
/// structure the carrier lacks are not reported.
pub fn classify(s: &ProtoSubAlg) -> Vec<ClassName> {
    let mut cache: Vec<Option<Option<bool>>> = vec![None; PropertyName::ALL.len()];
    let mut holds = |p: PropertyName| -> bool {
        let i = PropertyName::ALL.iter().position(|&q| q == p).unwrap();
        *cache[i].get_or_insert_with(|| property_holds(s, p)) == Some(true)
    };
    ClassName::ALL
        .iter()
        .copied()
        .filter(|c| c.properties().iter().all(|&p| holds(p)))
        .collect()
}

pub fn is_subordination_algebra(s: &ProtoSubAlg) -> bool {
    ClassName::SubordinationAlgebra.properties().iter().all(|&p| property_holds(s, p) == Some(true))
}

named_enum! {
    /// Horn rules available to [`close`].
    Rule {
        Bot => "BOT",
        Top => "TOP",
        SI => "SI",
        WO => "WO",
        And => "AND",
        Or => "OR",
        CT => "CT",
        T => "T",
    }
}

impl Rule {
    pub fn property(self) -> PropertyName {
        match self {
            Rule::Bot => PropertyName::Bot,
            Rule::Top => PropertyName::Top,
            Rule::SI => PropertyName::SI,
            Rule::WO => PropertyName::WO,
            Rule::And => PropertyName::And,
            Rule::Or => PropertyName::Or,
            Rule::CT => PropertyName::CT,
            Rule::T => PropertyName::T,
        }
    }

    fn bit(self) -> u8 {
        1 << Rule::ALL.iter().position(|&r| r == self).unwrap()
    }
}

/// A set of [`Rule`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RuleSet(u8);

impl RuleSet {
    pub fn empty() -> Self {
        RuleSet(0)
    }

    pub fn of(rules: &[Rule]) -> Self {
        RuleSet(rules.iter().fold(0, |m, r| m | r.bit()))
    }

    /// The rule sets of the systems `≺₁ … ≺₄`.
    pub fn system(i: u8) -> Result<Self> {
        use Rule::*;
        Ok(match i {
            1 => Self::of(&[Top, SI, WO, And]),
            2 => Self::of(&[Top, SI, WO, And, Or]),
            3 => Self::of(&[Top, SI, WO, And, CT]),
            4 => Self::of(&[Top, SI, WO, And, Or, CT]),
            other => return Err(SubordError::InvalidSystem(other)),
        })
    }

    pub fn contains(self, r: Rule) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn with(self, r: Rule) -> Self {
        RuleSet(self.0 | r.bit())
    }

    pub fn rules(self) -> impl Iterator<Item = Rule> {
        Rule::ALL.iter().copied().filter(move |&r| self.contains(r))
    }

    /// All `2^8` rule sets.
    pub fn all_subsets() -> impl Iterator<Item = RuleSet> {
        (0u16..256).map(|m| RuleSet(m as u8))
    }
}

impl FromStr for RuleSet {
    type Err = SubordError;

    fn from_str(s: &str) -> Result<Self> {
        let mut set = RuleSet::empty();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let prop: PropertyName = part.parse().map_err(|_| SubordError::UnknownRule(part.to_string()))?;
            let rule = Rule::ALL
                .iter()
                .copied()
                .find(|r| r.property() == prop)
                .ok_or_else(|| SubordError::UnknownRule(part.to_string()))?;
            set = set.with(rule);
        }
        Ok(set)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.rules().map(Rule::name).collect();
        f.write_str(&names.join(","))
    }
}

/// Least relation containing `≺` and closed under `rules`.
pub fn close(s: &ProtoSubAlg, rules: RuleSet) -> Result<ProtoSubAlg> {
    close_counting_rounds(s, rules).map(|(c, _)| c)
}

/// As [`close`], also returning the number of passes made (the last one adds nothing).
pub fn close_counting_rounds(s: &ProtoSubAlg, rules: RuleSet) -> Result<(ProtoSubAlg, usize)> {
    let po = s.carrier.poset();
    let n = s.n();
    let missing = |r: Rule, need: &'static str| SubordError::MissingStructure { property: r.name().into(), need };
    let bot = if rules.contains(Rule::Bot) {
        Some(po.bottom().ok_or(missing(Rule::Bot, "a bottom element"))?)
    } else {
        None
    };
    let top = if rules.contains(Rule::Top) {
        Some(po.top().ok_or(missing(Rule::Top, "a top element"))?)
    } else {
        None
    };
    let lat = s.carrier.lattice();
    for (r, need) in [(Rule::And, "binary meets"), (Rule::Or, "binary joins"), (Rule::CT, "binary meets")] {
        if rules.contains(r) && lat.is_none() {
            return Err(missing(r, need));
        }
    }

    let mut r = s.prec.clone();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let before = r.count();
        if let Some(b) = bot {
            r.insert(b, b);
        }
        if let Some(t) = top {
            r.insert(t, t);
        }
        if rules.contains(Rule::SI) {
            for a in 0..n {
                let mut acc = r.row(a).clone();
                for b in po.up(a).iter() {
                    acc.union_with(r.row(b));
                }
                *r.row_mut(a) = acc;
            }
        }
        if rules.contains(Rule::WO) {
            for a in 0..n {
                let up = po.up_closure(r.row(a));
                *r.row_mut(a) = up;
            }
        }
        if let (true, Some(l)) = (rules.contains(Rule::And), lat) {
            for a in 0..n {
                let row = r.row_mut(a);
                let mut items: Vec<usize> = row.iter().collect();
                let mut i = 0;
                while i < items.len() {
                    for j in 0..i {
                        let m = l.meet(items[i], items[j]);
                        if row.insert(m) {
                            items.push(m);
                        }
                    }
                    i += 1;
                }
            }
        }
        if let (true, Some(l)) = (rules.contains(Rule::Or), lat) {
            for a in 0..n {
                for b in a + 1..n {
                    let common = r.row(a).intersection(r.row(b));
                    if !common.is_empty() {
                        r.row_mut(l.join(a, b)).union_with(&common);
                    }
                }
            }
        }
        if let (true, Some(l)) = (rules.contains(Rule::CT), lat) {
            for a in 0..n {
                let mut items: Vec<usize> = r.row(a).iter().collect();
                let mut i = 0;
                while i < items.len() {
                    let m = l.meet(a, items[i]);
                    let extra = r.row(m).clone();
                    for c in extra.iter() {
                        if r.insert(a, c) {
                            items.push(c);
                        }
                    }
                    i += 1;
                }
            }
        }
        if rules.contains(Rule::T) {
            for a in 0..n {
                let mut items: Vec<usize> = r.row(a).iter().collect();
                let mut i = 0;
                while i < items.len() {
                    let extra = r.row(items[i]).clone();
                    for c in extra.iter() {
                        if r.insert(a, c) {
                            items.push(c);
                        }
                    }
                    i += 1;
                }
            }
        }
        if r.count() == before {
            break;
        }
    }
    Ok((s.with_relation(r), rounds))
}

/// `close` with the rules of system `i ∈ {1, 2, 3, 4}`.
pub fn close_i(s: &ProtoSubAlg, i: u8) -> Result<ProtoSubAlg> {
    close(s, RuleSet::system(i)?)
}

/// Rules closing a relation into a subordination algebra.
pub fn subordination_rules() -> RuleSet {
    use Rule::*;
    RuleSet::of(&[Bot, Top, SI, WO, And, Or])
}

/// All subordination algebras on a finite lattice, sorted by pair list.
///
/// Such a relation is fixed by its values `◇j = ⋀≺[j]` on join-irreducibles `j`, so closing
/// `{(j, f(j))}` for every map `f: J → A` produces each of them.
pub fn subordination_relations(l: &FinLattice) -> Vec<Relation> {
    let carrier = Arc::new(Carrier::Lattice(l.clone()));
    let js: Vec<usize> = join_irreducibles(l).iter().collect();
    let n = l.n();
    let rules = subordination_rules();
    let mut seen: HashSet<Relation> = HashSet::new();
    let mut f = vec![0usize; js.len()];
    loop {
        let pairs: Vec<(usize, usize)> = js.iter().zip(&f).map(|(&j, &v)| (j, v)).collect();
        let s = ProtoSubAlg::from_pairs(carrier.clone(), &pairs).expect("indices in range");
        let c = close(&s, rules).expect("lattice carrier");
        seen.insert(c.prec().clone());
        // odometer
        let mut i = 0;
        loop {
            if i == f.len() {
                let mut out: Vec<Relation> = seen.into_iter().collect();
                out.sort_by_key(|r| r.pairs().collect::<Vec<_>>());
                return out;
            }
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;

    fn b4() -> Arc<Carrier> {
        Arc::new(algebras::b4().into())
    }

    fn chain3() -> Arc<Carrier> {
        Arc::new(algebras::chain(3).into())
    }

    #[test]
    fn si_closure_of_aa() {
        // B4 indices: 0, a=1, a'=2, 1=3
        let s = ProtoSubAlg::from_pairs(b4(), &[(1, 1)]).unwrap();
        let c = close(&s, RuleSet::of(&[Rule::SI, Rule::WO])).unwrap();
        assert_eq!(c.pairs(), vec![(0, 1), (0, 3), (1, 1), (1, 3)]);
    }

    #[test]
    fn six_rule_closure() {
        let s = ProtoSubAlg::from_pairs(b4(), &[(1, 1), (2, 2)]).unwrap();
        let c = close(&s, subordination_rules()).unwrap();
        assert_eq!(
            c.pairs(),
            vec![(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 3), (2, 2), (2, 3), (3, 3)]
        );
    }

    #[test]
    fn si_failure_on_chain() {
        // 0 < m < 1, ≺ = {(1, 0)}
        let s = ProtoSubAlg::from_pairs(chain3(), &[(2, 0)]).unwrap();
        let c = check_property(&s, PropertyName::SI).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some(vec![0, 2, 0]));
        // (m, 1, 0) is a violation too
        assert!(s.carrier().poset().leq(1, 2) && s.holds(2, 0) && !s.holds(1, 0));
    }

    #[test]
    fn empty_relation_classes() {
        let s = ProtoSubAlg::from_pairs(b4(), &[]).unwrap();
        let cls = classify(&s);
        assert!(cls.contains(&ClassName::Premonotone));
        assert!(cls.contains(&ClassName::Monotone));
        assert!(cls.contains(&ClassName::Regular));
        assert!(!cls.contains(&ClassName::SubordinationAlgebra));
    }

    #[test]
    fn missing_structure() {
        let p = Arc::new(Carrier::Poset(algebras::antichain2()));
        let s = ProtoSubAlg::from_pairs(p, &[(0, 1)]).unwrap();
        assert!(matches!(check_property(&s, PropertyName::And), Err(SubordError::MissingStructure { .. })));
        assert!(matches!(check_property(&s, PropertyName::Bot), Err(SubordError::MissingStructure { .. })));
        assert!(check_property(&s, PropertyName::SI).unwrap().holds);
    }

    #[test]
    fn rule_parsing() {
        let r: RuleSet = "SI, WO,AND".parse().unwrap();
        assert_eq!(r, RuleSet::of(&[Rule::SI, Rule::WO, Rule::And]));
        assert!("SI,D".parse::<RuleSet>().is_err());
        assert_eq!(RuleSet::system(5), Err(SubordError::InvalidSystem(5)));
    }

    #[test]
    fn subordination_relations_on_b4_match_filtering() {
        let l = algebras::b4();
        let c = Arc::new(Carrier::Lattice(l.clone()));
        let by_closure = subordination_relations(&l);
        let mut by_filter: Vec<Relation> = (0u64..1 << 16)
            .map(|code| Relation::from_code(4, code))
            .filter(|r| is_subordination_algebra(&ProtoSubAlg::new(c.clone(), r.clone()).unwrap()))
            .collect();
        by_filter.sort_by_key(|r| r.pairs().collect::<Vec<_>>());
        assert_eq!(by_closure, by_filter);
    }
}
