//! Instance generation, the check catalog, and suite reports.
//!
//! A suite run enumerates relations on each configured carrier (all of them when the carrier
//! has at most `max_n` elements; otherwise every subordination relation obtained by closure
//! plus seeded random samples), evaluates every catalog entry on every instance, and
//! aggregates pass/skip/counterexample counts per entry. Counterexamples are listed in a
//! canonical order so two runs with the same configuration serialize identically once the
//! `timing` block is dropped.

mod catalog;
mod output;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebras;
use crate::bits::Relation;
use crate::completion::dm_completion;
use crate::iologic::{Norm, NormativeSystem};
use crate::order::{check_negation_laws, Carrier};
use crate::subordination::{close, property_holds, subordination_relations, subordination_rules, PropertyName, ProtoSubAlg, Rule, RuleSet, SubordError};
use crate::syntax::Formula;

pub use catalog::{
    catalog, find_check, CarrierClass, CheckSpec, CorpusCarrier, Fact, Group, Instance, Mode, NegInstance, NegLaw, Scope,
    Side, Subject, Verdict, verify_check,
};
pub use output::{
    diamond_qualifies, largest_below, smallest_above, square_qualifies, verify_output_extremality, OutputExtremality,
    MAP_LIMIT,
};

/// Exhaustive enumeration covers at most `2^16` relations.
pub const EXHAUSTIVE_CELLS: usize = 16;
/// Counterexamples kept per check in a report; the count covers all of them.
pub const LISTED_COUNTEREXAMPLES: usize = 20;
/// Join-irreducible count up to which closure-generated enumeration is used.
const CLOSURE_GENERATED_JOINS: u32 = 4;
const DENSITIES: [f64; 3] = [0.1, 0.3, 0.5];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0} cells exceed the exhaustive enumeration limit of {EXHAUSTIVE_CELLS}")]
    TooLarge(usize),
    #[error("unknown carrier '{0}'")]
    UnknownCarrier(String),
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("requires {0}")]
    NotApplicable(&'static str),
    #[error(transparent)]
    Subord(#[from] SubordError),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenMode {
    /// All relations on small carriers; closure-generated plus random samples on larger ones.
    Exhaustive,
    /// Random samples only.
    Random,
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub corpus: String,
    pub carriers: Vec<CorpusCarrier>,
    pub mode: GenMode,
    /// Random relations per carrier; each is also added in closed form.
    pub samples: usize,
    pub seed: u64,
    /// Largest carrier enumerated exhaustively.
    pub max_n: usize,
}

impl CorpusCarrier {
    pub fn new(name: impl Into<String>, carrier: Carrier) -> Self {
        let ext = Arc::new(dm_completion(carrier.poset()));
        CorpusCarrier { name: name.into(), carrier: Arc::new(carrier), ext }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let c = algebras::builtin(name).ok_or_else(|| HarnessError::UnknownCarrier(name.to_string()))?;
        Ok(CorpusCarrier::new(name, c))
    }
}

/// Carriers of the default corpus.
pub const DEFAULT_CARRIERS: &[&str] = &["chain2", "chain3", "chain4", "b4", "antichain2", "fd2", "b8", "b4_top", "m3", "n5"];

impl GenConfig {
    pub fn new(corpus: impl Into<String>, carriers: Vec<CorpusCarrier>, mode: GenMode, seed: u64) -> Self {
        GenConfig { corpus: corpus.into(), carriers, mode, samples: 500, seed, max_n: 4 }
    }

    pub fn from_names(corpus: impl Into<String>, names: &[&str], mode: GenMode, seed: u64) -> Result<Self> {
        let carriers = names.iter().map(|n| CorpusCarrier::builtin(n)).collect::<Result<_>>()?;
        Ok(GenConfig::new(corpus, carriers, mode, seed))
    }

    /// Chains 2–4, B4 and the 2-antichain exhaustively; FD(2) and B8 by closure; B4 with a new
    /// top, M3 and N5 by random samples.
    pub fn default_corpus(seed: u64) -> Self {
        GenConfig::from_names("default", DEFAULT_CARRIERS, GenMode::Exhaustive, seed).expect("built-in carriers")
    }
}

/// Generated subjects: relations and negation tables, each tagged with a carrier index.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub relations: Vec<(usize, Relation)>,
    pub negations: Vec<(usize, Vec<usize>)>,
}

/// All relations on the carrier satisfying every property in `filter`, in code order.
pub fn enumerate_relations<'a>(
    carrier: &'a Arc<Carrier>,
    filter: &[PropertyName],
) -> Result<impl Iterator<Item = ProtoSubAlg> + 'a> {
    let n = carrier.n();
    if n * n > EXHAUSTIVE_CELLS {
        return Err(HarnessError::TooLarge(n * n));
    }
    let filter = filter.to_vec();
    Ok((0..1u64 << (n * n)).filter_map(move |code| {
        let s = ProtoSubAlg::new(carrier.clone(), Relation::from_code(n, code)).expect("same size");
        filter.iter().all(|&p| property_holds(&s, p) == Some(true)).then_some(s)
    }))
}

/// A relation with each pair present independently with probability `density`.
pub fn random_relation(n: usize, density: f64, rng: &mut impl Rng) -> Relation {
    let mut r = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                r.insert(a, b);
            }
        }
    }
    r
}

/// Antitone maps on a small poset, in lexicographic order.
fn antitone_maps(c: &Carrier) -> Vec<Vec<usize>> {
    let p = c.poset();
    let n = p.n();
    let mut out = Vec::new();
    let total = n.pow(n as u32);
    for mut code in 0..total {
        let mut f = vec![0; n];
        for slot in f.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        if (0..n).all(|a| p.up(a).iter().all(|b| p.leq(f[b], f[a]))) {
            out.push(f);
        }
    }
    out
}

pub fn generate(cfg: &GenConfig) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut corpus = Corpus::default();
    for (ci, cc) in cfg.carriers.iter().enumerate() {
        let c = &cc.carrier;
        let n = c.n();
        let small = n <= cfg.max_n && n * n <= EXHAUSTIVE_CELLS;
        if cfg.mode == GenMode::Exhaustive && small {
            corpus.relations.extend((0..1u64 << (n * n)).map(|code| (ci, Relation::from_code(n, code))));
        } else {
            if cfg.mode == GenMode::Exhaustive {
                if let Some(l) = c.lattice().filter(|l| crate::order::join_irreducibles(l).count() as u32 <= CLOSURE_GENERATED_JOINS) {
                    corpus.relations.extend(subordination_relations(l).into_iter().map(|r| (ci, r)));
                }
            }
            let rules: Vec<Rule> = Rule::ALL.to_vec();
            for k in 0..cfg.samples {
                let r = random_relation(n, DENSITIES[k % DENSITIES.len()], &mut rng);
                corpus.relations.push((ci, r.clone()));
                // closing under a random rule set reaches structured regions sampling rarely hits
                let mut chosen = rules.clone();
                chosen.shuffle(&mut rng);
                let take = rng.gen_range(0..=chosen.len());
                let rs = RuleSet::of(&chosen[..take]);
                let s = ProtoSubAlg::new(c.clone(), r).expect("same size");
                if let Ok(closed) = close(&s, rs) {
                    corpus.relations.push((ci, closed.prec().clone()));
                }
            }
        }
        // negations: the carrier's own, and on small carriers every antitone map
        let mut negs: Vec<Vec<usize>> = Vec::new();
        if let Some(neg) = c.neg() {
            negs.push(neg.to_vec());
        }
        if cfg.mode == GenMode::Exhaustive && n <= cfg.max_n {
            for f in antitone_maps(c) {
                if !negs.contains(&f) {
                    negs.push(f);
                }
            }
        } else if cc.name == "antichain2" {
            negs.push(algebras::ANTICHAIN2_SWAP.to_vec());
        }
        corpus.negations.extend(negs.into_iter().map(|f| (ci, f)));
    }
    corpus
}

/// A failing subject, with enough data to replay it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub carrier: String,
    pub prec: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub neg: Option<Vec<usize>>,
    pub lhs: Option<bool>,
    pub rhs: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Counterexample {
    /// Subordination JSON reproducing the failing relation (relation-scope checks).
    pub fn replay(&self) -> crate::json::SubordinationJson {
        crate::json::SubordinationJson {
            algebra: crate::json::AlgebraRef::Named(self.carrier.clone()),
            prec: self.prec.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub group: Group,
    pub statement: String,
    /// Subjects on which the precondition held.
    pub tested: usize,
    pub passed: usize,
    pub skipped: usize,
    pub counterexample_count: usize,
    /// The first few counterexamples in canonical order.
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn skip_rate(&self) -> f64 {
        let total = self.tested + self.skipped;
        if total == 0 {
            1.0
        } else {
            self.skipped as f64 / total as f64
        }
    }
}

/// Wall-clock data, kept apart so reports compare equal across runs without it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub per_check_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub corpus: String,
    pub mode: GenMode,
    pub seed: u64,
    pub samples: usize,
    pub max_n: usize,
    pub carriers: Vec<String>,
    pub relations: usize,
    pub negations: usize,
    pub checks: Vec<CheckReport>,
    /// Checks whose precondition never held.
    pub coverage_gaps: Vec<String>,
    pub counterexamples: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

impl Report {
    /// 0 when every check passed everywhere and was exercised at least once, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn without_timing(&self) -> Report {
        Report { timing: None, ..self.clone() }
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Default)]
struct Tally {
    tested: usize,
    passed: usize,
    skipped: usize,
    cex: Vec<(usize, Counterexample)>,
    time: Duration,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.passed += other.passed;
        self.skipped += other.skipped;
        self.cex.extend(other.cex);
        self.time += other.time;
        self
    }
}

fn record(t: &mut Tally, v: Verdict, key: usize, make: impl FnOnce(Option<bool>, Option<bool>, Option<String>) -> Counterexample) {
    match v {
        Verdict::Skip => t.skipped += 1,
        Verdict::Pass => {
            t.tested += 1;
            t.passed += 1;
        }
        Verdict::Counterexample { lhs, rhs, note } => {
            t.tested += 1;
            t.cex.push((key, make(lhs, rhs, note)));
        }
    }
}

fn prec_pairs(r: &Relation) -> Vec<[usize; 2]> {
    r.pairs().map(|(a, b)| [a, b]).collect()
}

pub fn run_suite(cfg: &GenConfig) -> Report {
    run_suite_with(cfg, &catalog())
}

/// Runs the given checks over the generated corpus.
pub fn run_suite_with(cfg: &GenConfig, checks: &[CheckSpec]) -> Report {
    let start = Instant::now();
    let corpus = generate(cfg);
    let k = checks.len();
    let rel_checks: Vec<usize> = (0..k).filter(|&i| checks[i].scope == Scope::Relation).collect();
    let neg_checks: Vec<usize> = (0..k).filter(|&i| checks[i].scope == Scope::Negation).collect();

    let relation_tallies = corpus
        .relations
        .par_iter()
        .enumerate()
        .fold(
            || vec![Tally::default(); k],
            |mut acc, (idx, (ci, rel))| {
                let cc = &cfg.carriers[*ci];
                let sub = ProtoSubAlg::new(cc.carrier.clone(), rel.clone()).expect("same size");
                let inst = Instance::new(cc, sub);
                let subject = Subject::Relation(&inst);
                for &c in &rel_checks {
                    let t0 = Instant::now();
                    let v = verify_check(&checks[c], &subject);
                    acc[c].time += t0.elapsed();
                    record(&mut acc[c], v, idx, |lhs, rhs, note| Counterexample {
                        carrier: cc.name.clone(),
                        prec: prec_pairs(rel),
                        neg: None,
                        lhs,
                        rhs,
                        note,
                    });
                }
                acc
            },
        )
        .reduce(|| vec![Tally::default(); k], |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect());

    let mut tallies = relation_tallies;
    for (idx, (ci, neg)) in corpus.negations.iter().enumerate() {
        let cc = &cfg.carriers[*ci];
        let ni = NegInstance::new(cc, neg.clone());
        let subject = Subject::Negation(&ni);
        for &c in &neg_checks {
            let t0 = Instant::now();
            let v = verify_check(&checks[c], &subject);
            tallies[c].time += t0.elapsed();
            record(&mut tallies[c], v, idx, |lhs, rhs, note| Counterexample {
                carrier: cc.name.clone(),
                prec: Vec::new(),
                neg: Some(neg.clone()),
                lhs,
                rhs,
                note,
            });
        }
    }

    let mut reports = Vec::with_capacity(k);
    let mut timing = Timing::default();
    let mut gaps = Vec::new();
    let mut total_cex = 0;
    for (spec, mut t) in checks.iter().zip(tallies) {
        t.cex.sort();
        total_cex += t.cex.len();
        if t.tested == 0 {
            gaps.push(spec.name.to_string());
        }
        timing.per_check_ms.insert(spec.name.to_string(), t.time.as_secs_f64() * 1e3);
        reports.push(CheckReport {
            name: spec.name.to_string(),
            group: spec.group,
            statement: spec.statement(),
            tested: t.tested,
            passed: t.passed,
            skipped: t.skipped,
            counterexample_count: t.cex.len(),
            counterexamples: t.cex.into_iter().take(LISTED_COUNTEREXAMPLES).map(|(_, c)| c).collect(),
        });
    }
    timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    Report {
        corpus: cfg.corpus.clone(),
        mode: cfg.mode,
        seed: cfg.seed,
        samples: cfg.samples,
        max_n: cfg.max_n,
        carriers: cfg.carriers.iter().map(|c| c.name.clone()).collect(),
        relations: corpus.relations.len(),
        negations: corpus.negations.len(),
        checks: reports,
        passed: total_cex == 0 && gaps.is_empty(),
        coverage_gaps: gaps,
        counterexamples: total_cex,
        timing: Some(timing),
    }
}

/// Runs one named check on one relation; the carrier's completion is computed on the spot.
pub fn verify_named(name: &str, carrier_name: &str, s: &ProtoSubAlg) -> Result<Verdict> {
    let spec = find_check(name).ok_or_else(|| HarnessError::UnknownCheck(name.to_string()))?;
    let cc = CorpusCarrier {
        name: carrier_name.to_string(),
        carrier: s.carrier().clone(),
        ext: Arc::new(dm_completion(s.carrier().poset())),
    };
    let inst = Instance::new(&cc, s.clone());
    Ok(verify_check(&spec, &Subject::Relation(&inst)))
}

/// Runs one named negation check on a negation table over a carrier.
pub fn verify_named_negation(name: &str, carrier_name: &str, carrier: Arc<Carrier>, neg: Vec<usize>) -> Result<Verdict> {
    let spec = find_check(name).ok_or_else(|| HarnessError::UnknownCheck(name.to_string()))?;
    if check_negation_laws(carrier.poset(), &neg).is_err() {
        return Err(HarnessError::NotApplicable("a negation table over the carrier"));
    }
    let cc = CorpusCarrier { name: carrier_name.to_string(), ext: Arc::new(dm_completion(carrier.poset())), carrier };
    let ni = NegInstance::new(&cc, neg);
    Ok(verify_check(&spec, &Subject::Negation(&ni)))
}

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn random_formula(rng: &mut impl Rng, depth: u32) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        return match rng.gen_range(0..8) {
            0 => Formula::Top,
            1 => Formula::Bot,
            i => Formula::Atom(ATOMS[i % 3].to_string()),
        };
    }
    let op = rng.gen_range(0..4);
    let a = Box::new(random_formula(rng, depth - 1));
    if op == 0 {
        return Formula::Not(a);
    }
    let b = Box::new(random_formula(rng, depth - 1));
    match op {
        1 => Formula::And(a, b),
        2 => Formula::Or(a, b),
        _ => Formula::Implies(a, b),
    }
}

/// Seeded random normative systems with 1–3 norms over the atoms `p, q, r`.
pub fn random_normative_systems(seed: u64, count: usize) -> Vec<NormativeSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            let norms = (0..k)
                .map(|_| Norm { body: random_formula(&mut rng, 2), head: random_formula(&mut rng, 2) })
                .collect();
            NormativeSystem::new(norms)
        })
        .collect()
}

/// Seeded random formulas over `p, q, r`.
pub fn random_formulas(seed: u64, count: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_formula(&mut rng, 2)).collect()
}

/// The rules `close` uses for subordination algebras, for callers building corpora by hand.
pub fn subordination_closure(s: &ProtoSubAlg) -> Result<ProtoSubAlg> {
    Ok(close(s, subordination_rules())?)
}
