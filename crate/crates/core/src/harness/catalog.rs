//! The built-in checks: each relates a first-order condition on `≺` to a modal inequality on
//! the slanted algebra, a structural fact, or a relational condition on the dual space.

use std::cell::OnceCell;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::ElementSet;
use crate::completion::{extend_negation_pi, extend_negation_sigma, CanonicalExtension};
use crate::duality::{build_space_primefilters, check_relational, lambda_law_holds_in, space_of_slanted, RelCondition, SubordinationSpace};
use crate::order::{check_negation_laws, is_down_directed, is_up_directed, Carrier, FinPoset, NegationReport};
use crate::slanted::{build_slanted, classify_slanted, CompiledInequality, NegationMode, SlantedAlg};
use crate::subordination::{property_holds, ClassName, PropertyName, ProtoSubAlg};

use super::output::{verify_output_extremality, MAP_LIMIT};

/// Which statements a check belongs to; acceptance runs select by group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    NegationExtension,
    ModalReading,
    Directedness,
    RulesToModal,
    ModalToRules,
    SlantedClasses,
    ClosedOpen,
    ModalCharacterization,
    OutputExtremality,
    SpaceIsomorphism,
    SpaceCorrespondence,
    RelationalCorrespondence,
    Lambda,
}

/// What a check is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Relation,
    Negation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CarrierClass {
    Any,
    Lattice,
    DistributiveLattice,
    /// Lattice with a negation that is antitone, involutive and self-adjoint.
    InvolutiveNegation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Iff,
    Implies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NegLaw {
    Antitone,
    Involutive,
    LeftSelfAdjoint,
    RightSelfAdjoint,
    Inflationary,
    Deflationary,
}

impl NegLaw {
    fn of(self, r: &NegationReport) -> bool {
        match self {
            NegLaw::Antitone => r.antitone,
            NegLaw::Involutive => r.involutive,
            NegLaw::LeftSelfAdjoint => r.left_self_adjoint,
            NegLaw::RightSelfAdjoint => r.right_self_adjoint,
            NegLaw::Inflationary => r.inflationary,
            NegLaw::Deflationary => r.deflationary,
        }
    }
}

/// Universally quantified facts that are not a single inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fact {
    /// `a ≺ b ⇒ ◇a ≤ b ∧ a ≤ ■b`
    PrecBelowModalities,
    /// `◇a ≤ b ⇔ a ≺ b`
    DiamondReadsPrec,
    /// `a ≤ ■b ⇔ a ≺ b`
    SquareReadsPrec,
    DiamondMonotone,
    SquareMonotone,
    SlantedMonotone,
    SlantedRegular,
    SlantedNormal,
    /// `≺[D]` down-directed for down-directed `D`
    ImageDownDirected,
    /// `◇⋀D = ⋀≺[D]`, closed, for down-directed `D`
    DiamondOfClosed,
    /// `◇k ≤ b ⇒ ∃a ≥ k. a ≺ b`
    ClosedDiamondBelowElement,
    /// `◇k ≤ o ⇒ ∃a ≥ k ∃b ≤ o. a ≺ b`
    ClosedDiamondBelowOpen,
    /// `≺⁻¹[U]` up-directed for up-directed `U`
    PreimageUpDirected,
    /// `■⋁U = ⋁≺⁻¹[U]`, open, for up-directed `U`
    SquareOfOpen,
    /// `a ≤ ■o ⇒ ∃b ≤ o. a ≺ b`
    ElementBelowOpenSquare,
    /// `k ≤ ■o ⇒ ∃a ≥ k ∃b ≤ o. a ≺ b`
    ClosedBelowOpenSquare,
    /// `◇ᵢ` largest and `■ᵢ` least among qualifying maps
    OutputExtremal(u8),
    /// join-irreducible and prime-filter spaces are isomorphic
    SpacesIsomorphic,
    /// `■m ≤ n ⇔ κ(m) ≤ ◇κ(n)` on meet-irreducibles
    LambdaLaw,
}

/// One side of a check.
#[derive(Debug, Clone)]
pub enum Side {
    True,
    Prop(PropertyName),
    Class(ClassName),
    /// Validity of every listed inequality on the slanted algebra.
    Valid(Vec<(&'static str, Arc<CompiledInequality>)>),
    Fact(Fact),
    Rel(RelCondition),
    /// The extension of the carrier negation satisfies a law.
    Extended(NegationMode, NegLaw),
    /// The base negation satisfies a law.
    Base(NegLaw),
    Not(Box<Side>),
}

impl Side {
    fn valid(ineqs: &[&'static str]) -> Side {
        Side::Valid(
            ineqs
                .iter()
                .map(|&t| (t, Arc::new(CompiledInequality::parse(t).expect("catalog inequalities parse"))))
                .collect(),
        )
    }

    pub fn describe(&self) -> String {
        match self {
            Side::True => "true".into(),
            Side::Prop(p) => p.name().into(),
            Side::Class(c) => c.name().into(),
            Side::Valid(v) => v.iter().map(|(t, _)| *t).collect::<Vec<_>>().join(" and "),
            Side::Fact(f) => format!("{f:?}"),
            Side::Rel(r) => format!("R {r}"),
            Side::Extended(m, l) => format!("{m:?} extension {l:?}"),
            Side::Base(l) => format!("negation {l:?}"),
            Side::Not(s) => format!("not ({})", s.describe()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckSpec {
    pub name: &'static str,
    pub group: Group,
    pub scope: Scope,
    pub carrier: CarrierClass,
    /// Largest carrier the check is run on.
    pub max_n: usize,
    pub requires: Vec<PropertyName>,
    /// Laws the base negation must satisfy (negation scope only).
    pub requires_neg: Vec<NegLaw>,
    pub mode: Mode,
    pub lhs: Side,
    pub rhs: Side,
}

impl CheckSpec {
    pub fn statement(&self) -> String {
        let mut pre: Vec<String> = self
            .requires
            .iter()
            .map(|&p| match p {
                PropertyName::DD => "DD (non-empty)".to_string(),
                PropertyName::UD => "UD (non-empty)".to_string(),
                _ => p.name().to_string(),
            })
            .collect();
        pre.extend(self.requires_neg.iter().map(|l| format!("negation {l:?}")));
        let op = match self.mode {
            Mode::Iff => "iff",
            Mode::Implies => "implies",
        };
        let body = match (&self.lhs, self.mode) {
            (Side::True, Mode::Implies) => self.rhs.describe(),
            _ => format!("{} {op} {}", self.lhs.describe(), self.rhs.describe()),
        };
        if pre.is_empty() {
            body
        } else {
            format!("under {}: {body}", pre.join(", "))
        }
    }

    /// The same check with its right-hand side negated, which should then fail.
    pub fn corrupted(&self) -> CheckSpec {
        CheckSpec { rhs: Side::Not(Box::new(self.rhs.clone())), ..self.clone() }
    }
}

/// A carrier with its completion, shared by all instances on it.
#[derive(Debug, Clone)]
pub struct CorpusCarrier {
    pub name: String,
    pub carrier: Arc<Carrier>,
    pub ext: Arc<CanonicalExtension>,
}

/// A relation on a corpus carrier with lazily computed facts.
pub struct Instance<'c> {
    pub carrier: &'c CorpusCarrier,
    pub sub: ProtoSubAlg,
    props: [OnceCell<Option<bool>>; 19],
    slanted: OnceCell<SlantedAlg>,
    space: OnceCell<SubordinationSpace>,
}

impl<'c> Instance<'c> {
    pub fn new(carrier: &'c CorpusCarrier, sub: ProtoSubAlg) -> Self {
        Instance { carrier, sub, props: Default::default(), slanted: OnceCell::new(), space: OnceCell::new() }
    }

    pub fn prop(&self, p: PropertyName) -> Option<bool> {
        let i = PropertyName::ALL.iter().position(|&q| q == p).expect("listed");
        *self.props[i].get_or_init(|| property_holds(&self.sub, p))
    }

    /// A property as a check precondition. (DD) and (UD) are read as non-empty directedness:
    /// compactness says nothing about `⋀∅ = ⊤`, so an empty `≺[a]` would make `◇a = ⊤` without
    /// `a ≺ ⊤`.
    pub fn precondition(&self, p: PropertyName) -> bool {
        let n = self.sub.n();
        self.prop(p) == Some(true)
            && match p {
                PropertyName::DD => (0..n).all(|a| !self.sub.succ(a).is_empty()),
                PropertyName::UD => (0..n).all(|a| !self.sub.pred(a).is_empty()),
                _ => true,
            }
    }

    pub fn slanted(&self) -> &SlantedAlg {
        self.slanted.get_or_init(|| build_slanted(&self.sub, self.carrier.ext.clone()).expect("completion of the carrier"))
    }

    fn space(&self) -> &SubordinationSpace {
        self.space.get_or_init(|| space_of_slanted(self.slanted()))
    }
}

/// A negation table on a corpus carrier.
pub struct NegInstance<'c> {
    pub carrier: &'c CorpusCarrier,
    pub neg: Vec<usize>,
    report: NegationReport,
}

impl<'c> NegInstance<'c> {
    pub fn new(carrier: &'c CorpusCarrier, neg: Vec<usize>) -> Self {
        let report = check_negation_laws(carrier.carrier.poset(), &neg).expect("table over the carrier");
        NegInstance { carrier, neg, report }
    }
}

pub enum Subject<'a, 'c> {
    Relation(&'a Instance<'c>),
    Negation(&'a NegInstance<'c>),
}

/// Outcome of one check on one subject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Skip,
    /// `lhs`/`rhs` are `None` when a side could not be evaluated; `note` says why.
    Counterexample { lhs: Option<bool>, rhs: Option<bool>, note: Option<String> },
}

fn carrier_fits(class: CarrierClass, c: &Carrier) -> bool {
    match class {
        CarrierClass::Any => true,
        CarrierClass::Lattice => c.lattice().is_some(),
        CarrierClass::DistributiveLattice => c.is_distributive_lattice(),
        CarrierClass::InvolutiveNegation => match (c.lattice(), c.neg()) {
            (Some(l), Some(neg)) => {
                let r = check_negation_laws(l.poset(), neg).expect("table over the carrier");
                r.antitone && r.involutive && (r.left_self_adjoint || r.right_self_adjoint)
            }
            _ => false,
        },
    }
}

pub fn verify_check(spec: &CheckSpec, subject: &Subject<'_, '_>) -> Verdict {
    let gate = match (spec.scope, subject) {
        (Scope::Relation, Subject::Relation(inst)) => {
            inst.sub.n() <= spec.max_n
                && carrier_fits(spec.carrier, &inst.carrier.carrier)
                && spec.requires.iter().all(|&p| inst.precondition(p))
        }
        (Scope::Negation, Subject::Negation(ni)) => {
            ni.carrier.carrier.n() <= spec.max_n && spec.requires_neg.iter().all(|l| l.of(&ni.report))
        }
        _ => false,
    };
    if !gate {
        return Verdict::Skip;
    }
    let l = eval_side(&spec.lhs, subject);
    let r = eval_side(&spec.rhs, subject);
    let ok = match (&l, &r) {
        (Ok(a), Ok(b)) => match spec.mode {
            Mode::Iff => a == b,
            Mode::Implies => !a || *b,
        },
        _ => false,
    };
    if ok {
        return Verdict::Pass;
    }
    let note = l.as_ref().err().or(r.as_ref().err()).cloned();
    Verdict::Counterexample { lhs: l.ok(), rhs: r.ok(), note }
}

type Eval = Result<bool, String>;

fn eval_side(side: &Side, subject: &Subject<'_, '_>) -> Eval {
    match (side, subject) {
        (Side::True, _) => Ok(true),
        (Side::Not(s), _) => eval_side(s, subject).map(|b| !b),
        (Side::Prop(p), Subject::Relation(i)) => i.prop(*p).ok_or_else(|| format!("{p} needs more structure")),
        (Side::Class(c), Subject::Relation(i)) => c
            .properties()
            .iter()
            .try_fold(true, |acc, &p| i.prop(p).map(|b| acc && b))
            .ok_or_else(|| format!("{} needs more structure", c.name())),
        (Side::Valid(list), Subject::Relation(i)) => {
            let sa = i.slanted();
            for (text, c) in list {
                match c.holds(sa) {
                    Ok(true) => {}
                    Ok(false) => return Ok(false),
                    Err(e) => return Err(format!("{text}: {e}")),
                }
            }
            Ok(true)
        }
        (Side::Fact(f), Subject::Relation(i)) => eval_fact(*f, i),
        (Side::Rel(c), Subject::Relation(i)) => {
            check_relational(i.space(), *c).map(|r| r.holds).map_err(|e| e.to_string())
        }
        (Side::Base(law), Subject::Negation(ni)) => Ok(law.of(&ni.report)),
        (Side::Extended(mode, law), Subject::Negation(ni)) => {
            let ext = &ni.carrier.ext;
            let table = match mode {
                NegationMode::Sigma => extend_negation_sigma(ext, &ni.neg),
                NegationMode::Pi => extend_negation_pi(ext, &ni.neg),
            }
            .map_err(|e| e.to_string())?;
            let r = check_negation_laws(ext.delta().poset(), &table).map_err(|e| e.to_string())?;
            Ok(law.of(&r))
        }
        _ => Err("side does not apply to this subject".into()),
    }
}

fn nonempty_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (1u64..1 << n).map(move |m| ElementSet::from_mask(n, m))
}

fn eval_fact(f: Fact, i: &Instance<'_>) -> Eval {
    let s = &i.sub;
    let n = s.n();
    let po: &FinPoset = s.carrier().poset();
    let ext = &i.carrier.ext;
    let d = ext.delta();
    let e = |a: usize| ext.embed_of(a);
    let sa = i.slanted();
    let all_pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let err = |x: crate::slanted::SlantedError| x.to_string();
    Ok(match f {
        Fact::PrecBelowModalities => {
            s.pairs().iter().all(|&(a, b)| d.leq(sa.diamond(a), e(b)) && d.leq(e(a), sa.square(b)))
        }
        Fact::DiamondReadsPrec => all_pairs().all(|(a, b)| d.leq(sa.diamond(a), e(b)) == s.holds(a, b)),
        Fact::SquareReadsPrec => all_pairs().all(|(a, b)| d.leq(e(a), sa.square(b)) == s.holds(a, b)),
        Fact::DiamondMonotone => sa.diamond_monotone(),
        Fact::SquareMonotone => sa.square_monotone(),
        Fact::SlantedMonotone => classify_slanted(sa).monotone,
        Fact::SlantedRegular => classify_slanted(sa).regular.ok_or("regularity needs a lattice")?,
        Fact::SlantedNormal => classify_slanted(sa).normal.ok_or("normality needs a lattice")?,
        Fact::ImageDownDirected => nonempty_subsets(n)
            .filter(|ds| is_down_directed(ds, po))
            .all(|ds| is_down_directed(&s.prec().image(&ds), po)),
        Fact::PreimageUpDirected => {
            let inv = s.prec().transpose();
            nonempty_subsets(n).filter(|us| is_up_directed(us, po)).all(|us| is_up_directed(&inv.image(&us), po))
        }
        Fact::DiamondOfClosed => {
            for ds in nonempty_subsets(n).filter(|ds| is_down_directed(ds, po)) {
                let k = d.meet_all(ds.iter().map(e));
                let lhs = sa.apply_diamond(k).map_err(err)?;
                let rhs = d.meet_all(s.prec().image(&ds).iter().map(e));
                if lhs != rhs || !ext.closed().contains(lhs) {
                    return Ok(false);
                }
            }
            true
        }
        Fact::SquareOfOpen => {
            let inv = s.prec().transpose();
            for us in nonempty_subsets(n).filter(|us| is_up_directed(us, po)) {
                let o = d.join_all(us.iter().map(e));
                let lhs = sa.apply_square(o).map_err(err)?;
                let rhs = d.join_all(inv.image(&us).iter().map(e));
                if lhs != rhs || !ext.open().contains(lhs) {
                    return Ok(false);
                }
            }
            true
        }
        Fact::ClosedDiamondBelowElement => {
            for k in ext.closed().iter() {
                let dk = sa.apply_diamond(k).map_err(err)?;
                let ok = (0..n)
                    .filter(|&b| d.leq(dk, e(b)))
                    .all(|b| (0..n).any(|a| d.leq(k, e(a)) && s.holds(a, b)));
                if !ok {
                    return Ok(false);
                }
            }
            true
        }
        Fact::ClosedDiamondBelowOpen => {
            for k in ext.closed().iter() {
                let dk = sa.apply_diamond(k).map_err(err)?;
                let ok = ext.open().iter().filter(|&o| d.leq(dk, o)).all(|o| {
                    s.pairs().iter().any(|&(a, b)| d.leq(k, e(a)) && d.leq(e(b), o))
                });
                if !ok {
                    return Ok(false);
                }
            }
            true
        }
        Fact::ElementBelowOpenSquare => {
            for o in ext.open().iter() {
                let so = sa.apply_square(o).map_err(err)?;
                let ok = (0..n)
                    .filter(|&a| d.leq(e(a), so))
                    .all(|a| (0..n).any(|b| d.leq(e(b), o) && s.holds(a, b)));
                if !ok {
                    return Ok(false);
                }
            }
            true
        }
        Fact::ClosedBelowOpenSquare => {
            for o in ext.open().iter() {
                let so = sa.apply_square(o).map_err(err)?;
                let ok = ext.closed().iter().filter(|&k| d.leq(k, so)).all(|k| {
                    s.pairs().iter().any(|&(a, b)| d.leq(k, e(a)) && d.leq(e(b), o))
                });
                if !ok {
                    return Ok(false);
                }
            }
            true
        }
        Fact::OutputExtremal(item) => verify_output_extremality(s, ext, item).map_err(|e| e.to_string())?.holds(),
        Fact::SpacesIsomorphic => {
            let pf = build_space_primefilters(s).map_err(|e| e.to_string())?;
            crate::duality::spaces_isomorphic(i.space(), &pf).is_some()
        }
        Fact::LambdaLaw => lambda_law_holds_in(sa).map_err(|e| e.to_string())?,
    })
}

fn spec(name: &'static str, group: Group, requires: &[PropertyName], mode: Mode, lhs: Side, rhs: Side) -> CheckSpec {
    CheckSpec {
        name,
        group,
        scope: Scope::Relation,
        carrier: CarrierClass::Any,
        max_n: usize::MAX,
        requires: requires.to_vec(),
        requires_neg: Vec::new(),
        mode,
        lhs,
        rhs,
    }
}

fn on(mut c: CheckSpec, carrier: CarrierClass) -> CheckSpec {
    c.carrier = carrier;
    c
}

fn neg_spec(name: &'static str, requires: &[NegLaw], rhs: Side) -> CheckSpec {
    CheckSpec {
        name,
        group: Group::NegationExtension,
        scope: Scope::Negation,
        carrier: CarrierClass::Any,
        max_n: usize::MAX,
        requires: Vec::new(),
        requires_neg: requires.to_vec(),
        mode: Mode::Implies,
        lhs: Side::True,
        rhs,
    }
}

/// Every shipped check, in report order.
pub fn catalog() -> Vec<CheckSpec> {
    use CarrierClass::*;
    use Group::*;
    use Mode::*;
    use NegLaw::*;
    use PropertyName as P;
    let v = Side::valid;
    let prop = Side::Prop;
    let fact = Side::Fact;
    const DIRECTED: &[P] = &[P::SI, P::WO, P::UD, P::DD];
    const SUBLATTICE: &[P] = &[P::SI, P::WO, P::Or, P::And, P::Bot, P::Top];
    let mut c = vec![
        neg_spec("neg-sigma-antitone", &[Antitone, LeftSelfAdjoint], Side::Extended(NegationMode::Sigma, Antitone)),
        neg_spec(
            "neg-sigma-adjoint",
            &[Antitone, LeftSelfAdjoint],
            Side::Extended(NegationMode::Sigma, LeftSelfAdjoint),
        ),
        neg_spec(
            "neg-sigma-inflationary",
            &[Antitone, LeftSelfAdjoint, Inflationary],
            Side::Extended(NegationMode::Sigma, Inflationary),
        ),
        neg_spec(
            "neg-sigma-involutive",
            &[Antitone, LeftSelfAdjoint, Involutive],
            Side::Extended(NegationMode::Sigma, Involutive),
        ),
        neg_spec("neg-pi-antitone", &[Antitone, RightSelfAdjoint], Side::Extended(NegationMode::Pi, Antitone)),
        neg_spec(
            "neg-pi-adjoint",
            &[Antitone, RightSelfAdjoint],
            Side::Extended(NegationMode::Pi, RightSelfAdjoint),
        ),
        neg_spec(
            "neg-pi-deflationary",
            &[Antitone, RightSelfAdjoint, Deflationary],
            Side::Extended(NegationMode::Pi, Deflationary),
        ),
        neg_spec(
            "neg-pi-involutive",
            &[Antitone, RightSelfAdjoint, Involutive],
            Side::Extended(NegationMode::Pi, Involutive),
        ),
        spec("prec-below-modalities", ModalReading, &[], Implies, Side::True, fact(Fact::PrecBelowModalities)),
        spec("diamond-reads-prec", ModalReading, &[P::WO, P::DD], Implies, Side::True, fact(Fact::DiamondReadsPrec)),
        spec("square-reads-prec", ModalReading, &[P::SI, P::UD], Implies, Side::True, fact(Fact::SquareReadsPrec)),
        on(spec("or-gives-ud", Directedness, &[], Implies, prop(P::Or), prop(P::UD)), Lattice),
        on(spec("and-gives-dd", Directedness, &[], Implies, prop(P::And), prop(P::DD)), Lattice),
        on(spec("ud-iff-or", Directedness, &[P::SI], Iff, prop(P::UD), prop(P::Or)), Lattice),
        on(spec("dd-iff-and", Directedness, &[P::WO], Iff, prop(P::DD), prop(P::And)), Lattice),
        spec("si-diamond-monotone", RulesToModal, &[P::SI], Implies, Side::True, fact(Fact::DiamondMonotone)),
        on(
            spec("si-and-square-meets-dl", RulesToModal, &[P::SI], Implies, prop(P::And), v(&["[]a & []b <= [](a & b)"])),
            DistributiveLattice,
        ),
        on(
            spec("si-ud-and-square-meets", RulesToModal, &[P::SI, P::UD], Implies, prop(P::And), v(&["[]a & []b <= [](a & b)"])),
            Lattice,
        ),
        spec("wo-square-monotone", RulesToModal, &[P::WO], Implies, Side::True, fact(Fact::SquareMonotone)),
        on(
            spec("wo-or-diamond-joins-dl", RulesToModal, &[P::WO], Implies, prop(P::Or), v(&["<>(a | b) <= <>a | <>b"])),
            DistributiveLattice,
        ),
        on(
            spec("wo-dd-or-diamond-joins", RulesToModal, &[P::WO, P::DD], Implies, prop(P::Or), v(&["<>(a | b) <= <>a | <>b"])),
            Lattice,
        ),
        on(spec("bot-diamond-bot", RulesToModal, &[], Implies, prop(P::Bot), v(&["<>F <= F"])), Lattice),
        on(spec("top-square-top", RulesToModal, &[], Implies, prop(P::Top), v(&["T <= []T"])), Lattice),
        spec("si-iff-diamond-monotone", ModalToRules, &[P::WO, P::DD], Iff, prop(P::SI), fact(Fact::DiamondMonotone)),
        on(
            spec("or-iff-diamond-joins", ModalToRules, &[P::WO, P::DD], Iff, prop(P::Or), v(&["<>(a | b) <= <>a | <>b"])),
            Lattice,
        ),
        on(spec("bot-iff-diamond-bot", ModalToRules, &[P::WO, P::DD], Iff, prop(P::Bot), v(&["<>F <= F"])), Lattice),
        spec("wo-iff-square-monotone", ModalToRules, &[P::SI, P::UD], Iff, prop(P::WO), fact(Fact::SquareMonotone)),
        on(
            spec("and-iff-square-meets", ModalToRules, &[P::SI, P::UD], Iff, prop(P::And), v(&["[]a & []b <= [](a & b)"])),
            Lattice,
        ),
        on(spec("top-iff-square-top", ModalToRules, &[P::SI, P::UD], Iff, prop(P::Top), v(&["T <= []T"])), Lattice),
        spec("monotone-iff-slanted-monotone", SlantedClasses, DIRECTED, Iff, Side::Class(ClassName::Monotone), fact(Fact::SlantedMonotone)),
        on(
            spec("regular-iff-slanted-regular", SlantedClasses, DIRECTED, Iff, Side::Class(ClassName::Regular), fact(Fact::SlantedRegular)),
            Lattice,
        ),
        on(
            spec(
                "subordination-iff-slanted-normal",
                SlantedClasses,
                DIRECTED,
                Iff,
                Side::Class(ClassName::SubordinationAlgebra),
                fact(Fact::SlantedNormal),
            ),
            Lattice,
        ),
        spec("image-down-directed", ClosedOpen, &[P::SI, P::DD, P::WO], Implies, Side::True, fact(Fact::ImageDownDirected)),
        spec("diamond-of-closed", ClosedOpen, &[P::SI, P::DD, P::WO], Implies, Side::True, fact(Fact::DiamondOfClosed)),
        spec(
            "closed-diamond-below-element",
            ClosedOpen,
            &[P::SI, P::DD, P::WO],
            Implies,
            Side::True,
            fact(Fact::ClosedDiamondBelowElement),
        ),
        spec(
            "closed-diamond-below-open",
            ClosedOpen,
            &[P::SI, P::DD, P::WO],
            Implies,
            Side::True,
            fact(Fact::ClosedDiamondBelowOpen),
        ),
        spec("preimage-up-directed", ClosedOpen, &[P::WO, P::UD, P::SI], Implies, Side::True, fact(Fact::PreimageUpDirected)),
        spec("square-of-open", ClosedOpen, &[P::WO, P::UD, P::SI], Implies, Side::True, fact(Fact::SquareOfOpen)),
        spec(
            "element-below-open-square",
            ClosedOpen,
            &[P::WO, P::UD, P::SI],
            Implies,
            Side::True,
            fact(Fact::ElementBelowOpenSquare),
        ),
        spec(
            "closed-below-open-square",
            ClosedOpen,
            &[P::WO, P::UD, P::SI],
            Implies,
            Side::True,
            fact(Fact::ClosedBelowOpenSquare),
        ),
        spec("prec-in-leq-iff-inflationary", ModalCharacterization, &[], Iff, prop(P::PrecInLeq), v(&["a <= <>a"])),
        spec("prec-in-leq-iff-deflationary-box", ModalCharacterization, &[], Iff, prop(P::PrecInLeq), v(&["[]a <= a"])),
        spec("leq-in-prec-iff-deflationary", ModalCharacterization, &[P::WO, P::DD], Iff, prop(P::LeqInPrec), v(&["<>a <= a"])),
        spec("t-iff-diamond-4", ModalCharacterization, &[P::WO, P::DD, P::SI], Iff, prop(P::T), v(&["<>a <= <><>a"])),
        spec("d-iff-diamond-dense", ModalCharacterization, &[P::WO, P::DD, P::SI], Iff, prop(P::D), v(&["<><>a <= <>a"])),
        on(
            spec("ct-iff-diamond-ct", ModalCharacterization, &[P::WO, P::DD, P::SI], Iff, prop(P::CT), v(&["<>a <= <>(a & <>a)"])),
            Lattice,
        ),
        on(
            spec(
                "sl2-iff-diamond-sl2",
                ModalCharacterization,
                &[P::WO, P::DD, P::SI],
                Iff,
                prop(P::SL2),
                v(&["<>(<>a & <>b) <= <>(a & b)"]),
            ),
            Lattice,
        ),
        on(spec("ct-gives-t", ModalCharacterization, &[P::SI], Implies, prop(P::CT), prop(P::T)), Lattice),
        on(
            spec("s6-iff-box-dual", ModalCharacterization, DIRECTED, Iff, prop(P::S6), v(&["~<>a <= []~a", "[]~a <= ~<>a"])),
            InvolutiveNegation,
        ),
        on(
            spec("s6-iff-diamond-dual", ModalCharacterization, DIRECTED, Iff, prop(P::S6), v(&["<>~a <= ~[]a", "~[]a <= <>~a"])),
            InvolutiveNegation,
        ),
        on(
            spec(
                "s9-fwd-iff-box",
                ModalCharacterization,
                &[P::SI, P::UD, P::WO],
                Iff,
                prop(P::S9Fwd),
                v(&["[](a | []b) <= []a | []b"]),
            ),
            Lattice,
        ),
        on(
            spec(
                "s9-bwd-iff-box",
                ModalCharacterization,
                &[P::SI, P::UD, P::WO],
                Iff,
                prop(P::S9Bwd),
                v(&["[]a | []b <= [](a | []b)"]),
            ),
            Lattice,
        ),
        on(
            spec("sl1-iff-box", ModalCharacterization, &[P::SI, P::UD, P::WO], Iff, prop(P::SL1), v(&["[](a | b) <= []([]a | []b)"])),
            Lattice,
        ),
    ];
    for (item, name) in [(1, "output-extremal-1"), (2, "output-extremal-2"), (3, "output-extremal-3"), (4, "output-extremal-4")] {
        let mut s = on(spec(name, OutputExtremality, DIRECTED, Implies, Side::True, fact(Fact::OutputExtremal(item))), Lattice);
        s.max_n = MAP_LIMIT;
        c.push(s);
    }
    let dual = |name, group, lhs, rhs| on(spec(name, group, SUBLATTICE, Iff, lhs, rhs), DistributiveLattice);
    c.extend([
        on(spec("spaces-isomorphic", SpaceIsomorphism, SUBLATTICE, Implies, Side::True, fact(Fact::SpacesIsomorphic)), DistributiveLattice),
        dual("reflexive-iff-prec-in-leq", SpaceCorrespondence, prop(P::PrecInLeq), Side::Rel(RelCondition::Reflexive)),
        dual("transitive-iff-d", SpaceCorrespondence, prop(P::D), Side::Rel(RelCondition::Transitive)),
        dual("dense-iff-t", SpaceCorrespondence, prop(P::T), Side::Rel(RelCondition::Dense)),
        dual("proper-iff-proper", SpaceCorrespondence, prop(P::Proper), Side::Rel(RelCondition::Proper)),
        dual("ct-iff-relational", RelationalCorrespondence, prop(P::CT), Side::Rel(RelCondition::CT)),
        dual("s9-fwd-iff-relational", RelationalCorrespondence, prop(P::S9Fwd), Side::Rel(RelCondition::S9Fwd)),
        dual("s9-bwd-iff-relational", RelationalCorrespondence, prop(P::S9Bwd), Side::Rel(RelCondition::S9Bwd)),
        dual("sl1-iff-relational", RelationalCorrespondence, prop(P::SL1), Side::Rel(RelCondition::SL1)),
        dual("sl2-iff-relational", RelationalCorrespondence, prop(P::SL2), Side::Rel(RelCondition::SL2)),
        on(spec("lambda-law", Lambda, SUBLATTICE, Implies, Side::True, fact(Fact::LambdaLaw)), DistributiveLattice),
    ]);
    c
}

pub fn find_check(name: &str) -> Option<CheckSpec> {
    catalog().into_iter().find(|c| c.name == name)
}
