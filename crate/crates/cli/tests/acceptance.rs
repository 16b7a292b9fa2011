//! Acceptance criteria 1–9. Prints one PASS/FAIL line per criterion and exits non-zero if any
//! criterion fails or exceeds its time bound.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ioalg_core::algebras;
use ioalg_core::completion::{dm_completion, verify_compact, verify_dense};
use ioalg_core::harness::{
    catalog, random_formulas, random_normative_systems, run_suite_with, CheckSpec, GenConfig, GenMode, Group, Report,
};
use ioalg_core::iologic::{derive, parse_norms, NormClosure};
use ioalg_core::subordination::{property_holds, PropertyName, ProtoSubAlg};
use ioalg_core::syntax::{parse_formula, Formula};
use ioalg_core::{Carrier, FinLattice, FinPoset, Relation};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn checks_where(pred: impl Fn(&CheckSpec) -> bool) -> Vec<CheckSpec> {
    catalog().into_iter().filter(|c| pred(c)).collect()
}

fn config(names: &[&str]) -> GenConfig {
    GenConfig::from_names("acceptance", names, GenMode::Exhaustive, 7).expect("built-in carriers")
}

/// Zero counterexamples and every check exercised.
fn clean(r: &Report) -> Outcome {
    for c in &r.checks {
        if c.counterexample_count > 0 {
            return Err(format!("{}: {} counterexamples, first {:?}", c.name, c.counterexample_count, c.counterexamples[0]));
        }
        if c.tested == 0 {
            return Err(format!("{}: never tested (skip rate 100%)", c.name));
        }
    }
    let tested: usize = r.checks.iter().map(|c| c.tested).sum();
    Ok(format!("{} checks, {} relations, {} evaluations", r.checks.len(), r.relations, tested))
}

fn c1() -> Outcome {
    let names = ["prec-in-leq-iff-inflationary", "prec-in-leq-iff-deflationary-box", "leq-in-prec-iff-deflationary"];
    let checks = checks_where(|c| names.contains(&c.name));
    let carriers = ["chain2", "chain3", "chain4", "b4"];
    let r = run_suite_with(&config(&carriers), &checks);
    let summary = clean(&r)?;
    if r.relations != 16 + 512 + 65_536 + 65_536 {
        return Err(format!("expected every relation, got {}", r.relations));
    }
    // independent oracle: ◇a is the lattice meet of ≺[a] (⊤ when empty)
    let mut gated = 0;
    for name in carriers {
        let l = algebras::builtin(name).unwrap().lattice().unwrap().clone();
        let n = l.n();
        let c: Arc<Carrier> = Arc::new(l.clone().into());
        for code in 0..1u64 << (n * n) {
            let rel = Relation::from_code(n, code);
            let dia: Vec<usize> = (0..n).map(|a| l.meet_all((0..n).filter(|&b| rel.contains(a, b)))).collect();
            let in_leq = rel.pairs().all(|(a, b)| l.leq(a, b));
            if in_leq != (0..n).all(|a| l.leq(a, dia[a])) {
                return Err(format!("oracle: ≺⊆≤ vs a ≤ ◇a differ on {name} code {code}"));
            }
            let s = ProtoSubAlg::new(c.clone(), rel.clone()).unwrap();
            let nonempty = (0..n).all(|a| (0..n).any(|b| rel.contains(a, b)));
            let wo_dd = nonempty
                && property_holds(&s, PropertyName::WO) == Some(true)
                && property_holds(&s, PropertyName::DD) == Some(true);
            if wo_dd {
                gated += 1;
                let leq_in = (0..n).all(|a| (0..n).all(|b| !l.leq(a, b) || rel.contains(a, b)));
                if leq_in != (0..n).all(|a| l.leq(dia[a], a)) {
                    return Err(format!("oracle: ≤⊆≺ vs ◇a ≤ a differ on {name} code {code}"));
                }
            }
        }
    }
    let reported = r.check("leq-in-prec-iff-deflationary").unwrap().tested;
    if reported != gated {
        return Err(format!("harness tested {reported} WO+DD instances, oracle counts {gated}"));
    }
    Ok(format!("{summary}; oracle agrees on all, {gated} WO+DD instances"))
}

fn c2() -> Outcome {
    let groups = [Group::ModalReading, Group::Directedness, Group::RulesToModal, Group::ModalToRules, Group::SlantedClasses];
    let r = run_suite_with(&config(&["chain2", "chain3", "chain4", "b4"]), &checks_where(|c| groups.contains(&c.group)));
    clean(&r)
}

fn c3() -> Outcome {
    let items = checks_where(|c| c.group == Group::ModalCharacterization && !c.name.starts_with("prec-in-leq") && c.name != "leq-in-prec-iff-deflationary");
    let r = run_suite_with(&config(&["b4"]), &items);
    let b4 = clean(&r)?;
    let s6 = checks_where(|c| c.name.starts_with("s6-"));
    let mut cfg = config(&["b8"]);
    cfg.samples = 500;
    let r8 = run_suite_with(&cfg, &s6);
    let b8 = clean(&r8)?;
    Ok(format!("B4: {b4}; S6 on B8: {b8}"))
}

fn c4() -> Outcome {
    let checks = checks_where(|c| c.group == Group::OutputExtremality);
    let r = run_suite_with(&config(&["chain2", "chain3", "chain4", "b4", "fd2", "b8"]), &checks);
    clean(&r)
}

fn c5() -> Outcome {
    let groups = [Group::SpaceIsomorphism, Group::SpaceCorrespondence, Group::RelationalCorrespondence, Group::Lambda];
    let checks = checks_where(|c| groups.contains(&c.group));
    let b4 = clean(&run_suite_with(&config(&["b4"]), &checks))?;
    let mut cfg = config(&["fd2"]);
    cfg.samples = 0;
    let fd2 = clean(&run_suite_with(&cfg, &checks))?;
    Ok(format!("B4: {b4}; FD(2): {fd2}"))
}

fn labeled_posets(n: usize) -> Vec<FinPoset> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    (0..1u64 << off.len())
        .filter_map(|m| {
            let mut r = Relation::identity(n);
            for (k, &(a, b)) in off.iter().enumerate() {
                if m >> k & 1 == 1 {
                    r.insert(a, b);
                }
            }
            FinPoset::from_relation(r).ok()
        })
        .collect()
}

fn random_poset(rng: &mut ChaCha8Rng) -> FinPoset {
    let n = rng.gen_range(5..=6);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let covers: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(0.35))
        .map(|(a, b)| (perm[a], perm[b]))
        .collect();
    FinPoset::from_hasse(n, &covers).expect("acyclic")
}

fn is_order_iso(p: &FinPoset, l: &FinLattice, embed: &[usize]) -> bool {
    let n = p.n();
    embed.iter().collect::<BTreeSet<_>>().len() == n
        && l.n() == n
        && (0..n).all(|a| (0..n).all(|b| p.leq(a, b) == l.leq(embed[a], embed[b])))
}

fn c6() -> Outcome {
    let fours = labeled_posets(4);
    if fours.len() != 219 {
        return Err(format!("{} labeled 4-element posets, expected 219", fours.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let randoms: Vec<FinPoset> = (0..200).map(|_| random_poset(&mut rng)).collect();
    for (i, p) in fours.iter().chain(&randoms).enumerate() {
        let ext = dm_completion(p);
        if !verify_dense(&ext).map_err(|e| e.to_string())? || !verify_compact(&ext).map_err(|e| e.to_string())? {
            return Err(format!("poset #{i} fails density or compactness"));
        }
        if !p.is_order_embedding(ext.embed(), ext.delta().poset()) {
            return Err(format!("poset #{i}: embed is not an order embedding"));
        }
    }
    let mut lattices = 0;
    for name in algebras::BUILTIN_NAMES {
        if let Some(l) = algebras::builtin(name).unwrap().lattice() {
            let ext = dm_completion(l.poset());
            if !is_order_iso(l.poset(), ext.delta(), ext.embed()) {
                return Err(format!("{name}: embed is not an isomorphism"));
            }
            lattices += 1;
        }
    }
    Ok(format!("219 labeled 4-posets and 200 random 5–6-posets dense and compact; embed onto on {lattices} lattices"))
}

fn c7() -> Outcome {
    let checks = checks_where(|c| c.group == Group::NegationExtension);
    let r = run_suite_with(&config(&["b4", "b8", "antichain2"]), &checks);
    clean(&r)
}

const VARS: [&str; 3] = ["p", "q", "r"];

fn valuations() -> impl Iterator<Item = u8> {
    0..8u8
}

fn holds(f: &Formula, v: u8) -> bool {
    match f {
        Formula::Atom(a) => v >> VARS.iter().position(|x| x == a).expect("atom in p, q, r") & 1 == 1,
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(a) => !holds(a, v),
        Formula::And(a, b) => holds(a, v) && holds(b, v),
        Formula::Or(a, b) => holds(a, v) || holds(b, v),
        Formula::Implies(a, b) => !holds(a, v) || holds(b, v),
    }
}

fn entails(premises: &[&Formula], x: &Formula) -> bool {
    valuations().all(|w| !premises.iter().all(|p| holds(p, w)) || holds(x, w))
}

/// Simple-minded output: x follows from the heads of norms whose bodies follow from a.
fn oracle_out1(ns: &[(Formula, Formula)], a: &Formula, x: &Formula) -> bool {
    let heads: Vec<&Formula> = ns.iter().filter(|(b, _)| entails(&[a], b)).map(|(_, h)| h).collect();
    entails(&heads, x)
}

/// Basic output: for every valuation making a true, x follows from the heads it fires.
fn oracle_out2(ns: &[(Formula, Formula)], a: &Formula, x: &Formula) -> bool {
    valuations().filter(|&v| holds(a, v)).all(|v| {
        let heads: Vec<&Formula> = ns.iter().filter(|(b, _)| holds(b, v)).map(|(_, h)| h).collect();
        entails(&heads, x)
    })
}

fn c8() -> Outcome {
    let f = |s: &str| parse_formula(s).unwrap();
    let n = parse_norms("p |~ q").unwrap();
    if !derive(&n, 1, &f("p & r"), &f("q | r")).map_err(|e| e.to_string())? {
        return Err("(p∧r, q∨r) not derived in N1".into());
    }
    // (p∨r, q) is outside N2 as well: the valuation r=1, p=0 fires no norm
    for i in [1, 2] {
        if derive(&n, i, &f("p | r"), &f("q")).unwrap() {
            return Err(format!("(p∨r, q) derived in N{i} from {{(p,q)}}"));
        }
    }
    if !valuations().any(|v| holds(&f("p | r"), v) && !holds(&f("p"), v)) {
        return Err("no valuation separates p∨r from p".into());
    }
    let n2 = parse_norms("p |~ q\nr |~ q").unwrap();
    let split = !derive(&n2, 1, &f("p | r"), &f("q")).unwrap() && derive(&n2, 2, &f("p | r"), &f("q")).unwrap();
    if !split {
        return Err("(p∨r, q) should be outside N1 and inside N2 for {(p,q), (r,q)}".into());
    }
    let c = NormClosure::new(&n, 1, []).map_err(|e| e.to_string())?;
    let q = c.element(&f("q")).unwrap();
    let out = c.out_set(&[f("p")]).unwrap();
    let up_q: BTreeSet<usize> = (0..c.algebra().lattice.n()).filter(|&x| q & !x == 0).collect();
    if out.iter().collect::<BTreeSet<_>>() != up_q {
        return Err("out1({p}) differs from the up-set of q".into());
    }

    let systems = random_normative_systems(7, 100);
    let gammas = random_formulas(8, 10);
    let psis = random_formulas(9, 12);
    let vars = || ["p", "q", "r"].map(String::from);
    let (mut inclusions, mut agreements, mut semantic) = (0, 0, 0);
    for (k, ns) in systems.iter().enumerate() {
        let closures: Vec<NormClosure> = (1..=4).map(|i| NormClosure::new(ns, i, vars())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let pairs: Vec<(Formula, Formula)> = ns.norms.iter().map(|n| (n.body.clone(), n.head.clone())).collect();
        for g in &gammas {
            for psi in &psis {
                let sem = [oracle_out1(&pairs, g, psi), oracle_out2(&pairs, g, psi)];
                for i in 0..2 {
                    if closures[i].derives(g, psi).unwrap() != sem[i] {
                        return Err(format!("system #{k}: N{} and its valuation semantics differ on ({g}, {psi})", i + 1));
                    }
                }
                semantic += 2;
            }
        }
        for (lo, hi) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            for g in &gammas {
                let a = closures[lo].out_set(std::slice::from_ref(g)).unwrap();
                let b = closures[hi].out_set(std::slice::from_ref(g)).unwrap();
                if !a.is_subset(&b) {
                    return Err(format!("system #{k}: out{} not within out{} on {g}", lo + 1, hi + 1));
                }
                inclusions += 1;
            }
        }
        for c in &closures {
            for g in gammas.iter().take(4) {
                for psi in &psis {
                    let gs = std::slice::from_ref(g);
                    if c.out(gs, psi).unwrap() != c.modal_output(gs, psi).unwrap() {
                        return Err(format!("system #{k}, i={}: out and modal_output differ on ({g}, {psi})", c.system()));
                    }
                    agreements += 1;
                }
            }
        }
    }
    Ok(format!(
        "(p∧r, q∨r) ∈ N1; (p∨r, q) ∉ N1, N2 for {{(p,q)}} and ∈ N2 only once (r,q) is added; out1({{p}}) = ↑q; \
         {semantic} closure/valuation agreements, {inclusions} monotonicity and {agreements} singleton agreements on 100 systems"
    ))
}

fn strip_timing(mut v: Value) -> Value {
    if let Some(o) = v.as_object_mut() {
        o.remove("timing");
    }
    v
}

fn c9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("report{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_ioalg"))
            .args(["verify", "--corpus", "default", "--seed", "7", "--out"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        if status.status.code() != Some(0) {
            return Err(format!("run {k} exited with {:?}", status.status.code()));
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        reports.push(strip_timing(serde_json::from_str(&text).map_err(|e| e.to_string())?));
    }
    if reports[0] != reports[1] {
        return Err("reports differ beyond timing".into());
    }
    let checks = reports[0]["checks"].as_array().map_or(0, Vec::len);
    Ok(format!("two runs identical modulo timing ({checks} checks, exit 0)"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "≺⊆≤ and ≤⊆≺ modal readings, exhaustive", Duration::from_secs(60), c1),
        (2, "reading, directedness, rules/modal, slanted classes", Duration::from_secs(300), c2),
        (3, "modal characterizations on B4, S6 on B8", Duration::from_secs(600), c3),
        (4, "output extremality by map enumeration", Duration::from_secs(300), c4),
        (5, "space isomorphism and relational correspondence", Duration::from_secs(300), c5),
        (6, "canonical extension density and compactness", Duration::from_secs(60), c6),
        (7, "negation extension laws", Duration::from_secs(10), c7),
        (8, "input/output sanity", Duration::from_secs(60), c8),
        (9, "determinism of verify", Duration::from_secs(600), c9),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (k, what, bound, run) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let t0 = Instant::now();
        let outcome = run();
        let took = t0.elapsed();
        let line = match outcome {
            Ok(_) if took > bound => {
                failed += 1;
                format!("FAIL criterion {k} ({what}): took {:.1}s, bound {}s", took.as_secs_f64(), bound.as_secs())
            }
            Ok(msg) => format!("PASS criterion {k} ({what}): {msg} [{:.1}s, bound {}s]", took.as_secs_f64(), bound.as_secs()),
            Err(msg) => {
                failed += 1;
                format!("FAIL criterion {k} ({what}): {msg} [{:.1}s]", took.as_secs_f64())
            }
        };
        println!("{line}");
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
