use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ioalg_core::completion::{dm_completion, verify_compact, verify_dense};
use ioalg_core::duality::{build_space_jirr, build_space_primefilters, check_relational, RelCondition};
use ioalg_core::harness::{self, GenConfig, GenMode, Verdict};
use ioalg_core::iologic::{parse_gamma, parse_norm, parse_norms, NormClosure};
use ioalg_core::json::{load_algebra, read, CompletionJson, SpaceJson, SubordinationJson};
use ioalg_core::slanted::{build_slanted, classify_slanted, valid, NegationMode};
use ioalg_core::subordination::{check_property, classify, close, PropertyName, ProtoSubAlg, RuleSet, SubordError};
use ioalg_core::syntax::{parse_formula, parse_inequality};

const GRAMMARS: &str = "\
Algebra JSON:
  {\"elements\": [\"0\", \"a\", \"a'\", \"1\"], \"leq\": [[1,1,1,1], [0,1,0,1], [0,0,1,1], [0,0,0,1]]}
  {\"elements\": [\"0\", \"a\", \"a'\", \"1\"], \"hasse\": [[0,1], [0,2], [1,3], [2,3]]}
  \"leq\" is the full order matrix (entries true/false or 0/1, row i column j means i <= j);
  \"hasse\" lists covering pairs [lower, upper] and is closed reflexively and transitively.
  Exactly one of the two is given. Optional \"neg\": [...] maps each index to its negation.
  Indices refer to positions in \"elements\". Wherever an algebra is expected, a built-in name
  (chain2, chain3, chain4, chain5, b4, b8, fd2, b4_top, m3, n5, antichain2) or a path to such a
  file may be given instead.

Subordination JSON:
  {\"algebra\": <algebra JSON | built-in name | file path>, \"prec\": [[i, j], ...]}

Norm file:
  one norm per line, written  body |~ head
  '#' starts a comment running to the end of the line; blank lines are ignored.

Formulas (norms, --gamma, --query):
  atoms [a-z][a-z0-9]*, constants T F, connectives ~ & | ->, parentheses.
  Precedence ~ > & > | > ->; & and | associate left, -> right. a -> b abbreviates ~a | b.

Modal inequalities (--ineq):
  term <= term, with terms over atoms, T, F, ~, <>, [], &, | and parentheses.
  Precedence ~ <> [] > & > |.

Exit codes: 0 holds / success, 1 fails / counterexample found, 2 usage or input error.";

#[derive(Parser)]
#[command(name = "ioalg", version, about = "Input/output logic on finite subordination algebras", after_long_help = GRAMMARS)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check relational properties of a subordination instance.
    Check {
        #[command(flatten)]
        input: SubInput,
        /// Comma-separated properties, e.g. SI,WO,AND (all 19 when omitted).
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
        /// Also list the named classes the instance belongs to.
        #[arg(long)]
        classes: bool,
        /// Reserved: demand a Boolean carrier for "subordination algebra". Not implemented.
        #[arg(long)]
        strict_boolean: bool,
    },
    /// Close a relation under Horn rules; prints the closed subordination JSON.
    Close {
        #[command(flatten)]
        input: SubInput,
        /// Comma-separated rules among BOT, TOP, SI, WO, AND, OR, CT, T.
        #[arg(long, conflicts_with = "system")]
        rules: Option<String>,
        /// One of the systems 1..4.
        #[arg(long)]
        system: Option<u8>,
    },
    /// Decide whether a norm is derivable in N_i.
    Derive {
        #[arg(long)]
        system: u8,
        /// Norm file.
        #[arg(long)]
        norms: PathBuf,
        /// A norm `body |~ head`.
        #[arg(long)]
        query: String,
    },
    /// Output of a normative system on a set of inputs.
    Out {
        #[arg(long)]
        system: u8,
        #[arg(long)]
        norms: PathBuf,
        /// Comma-separated input formulas.
        #[arg(long, default_value = "")]
        gamma: String,
        /// Formula to test for membership; lists the minimal outputs when omitted.
        #[arg(long)]
        query: Option<String>,
        /// Use the modal reading ◇ᵢ(⋀Γ) ≤ ψ instead of the union of norm heads.
        #[arg(long)]
        modal: bool,
    },
    /// Validity of a modal inequality on the slanted algebra of an instance.
    Slanted {
        #[command(flatten)]
        input: SubInput,
        #[arg(long)]
        ineq: String,
        /// Extension interpreting ~ on the completion.
        #[arg(long, value_enum, default_value_t = NegArg::Sigma)]
        negation: NegArg,
    },
    /// Dedekind-MacNeille completion of a poset, as algebra JSON with an "embed" map.
    Completion {
        /// Algebra JSON file or built-in name.
        #[arg(long)]
        algebra: String,
    },
    /// Dual subordination space and relational conditions on it.
    Dual {
        #[command(flatten)]
        input: SubInput,
        /// Comma-separated conditions: reflexive, transitive, dense, proper, ct, s9_fwd, s9_bwd,
        /// sl1, sl2, s9_below, sl1_below.
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
        /// Build points from prime filters instead of join-irreducibles.
        #[arg(long)]
        prime_filters: bool,
    },
    /// Run the check catalog over a corpus, or one check on one instance.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum NegArg {
    Sigma,
    Pi,
}

#[derive(Args)]
struct SubInput {
    /// Subordination JSON file.
    #[arg(long, conflicts_with_all = ["algebra", "prec"])]
    sub: Option<PathBuf>,
    /// Algebra JSON file or built-in name (with --prec).
    #[arg(long, requires = "prec")]
    algebra: Option<String>,
    /// Pairs `[[i, j], ...]`, inline or as a file; also accepts a subordination JSON file.
    #[arg(long)]
    prec: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// `default`, or a comma-separated list of built-in carriers.
    #[arg(long, default_value = "default")]
    corpus: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Largest carrier enumerated exhaustively (at most 4).
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Random relations per carrier.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Write the full report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run only this catalog entry.
    #[arg(long)]
    check: Option<String>,
    /// With --check: a subordination JSON file to run it on.
    #[arg(long, requires = "check")]
    instance: Option<PathBuf>,
    /// Leave wall-clock data out of the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

struct Outcome {
    json: Value,
    text: String,
    code: u8,
}

type Res<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe downstream is not an error of ours
            let _ = match cli.format {
                Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&o.json).expect("serializable")),
                Format::Text => write!(stdout, "{}", o.text),
            };
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Res<Outcome> {
    match cmd {
        Command::Check { input, props, classes, strict_boolean } => {
            if strict_boolean {
                return Err("--strict-boolean is reserved and not implemented".into());
            }
            cmd_check(&input, &props, classes)
        }
        Command::Close { input, rules, system } => cmd_close(&input, rules.as_deref(), system),
        Command::Derive { system, norms, query } => cmd_derive(system, &norms, &query),
        Command::Out { system, norms, gamma, query, modal } => cmd_out(system, &norms, &gamma, query.as_deref(), modal),
        Command::Slanted { input, ineq, negation } => cmd_slanted(&input, &ineq, negation),
        Command::Completion { algebra } => cmd_completion(&algebra),
        Command::Dual { input, check, prime_filters } => cmd_dual(&input, &check, prime_filters),
        Command::Verify(args) => cmd_verify(&args),
    }
}

struct Loaded {
    name: String,
    sub: ProtoSubAlg,
    neg: Option<Vec<usize>>,
}

fn parent(p: &Path) -> Option<&Path> {
    p.parent().filter(|d| !d.as_os_str().is_empty())
}

fn load_sub_file(path: &Path) -> Res<Loaded> {
    let text = read(path).map_err(err)?;
    let j = SubordinationJson::parse(&text).map_err(err)?;
    let l = j.load(parent(path)).map_err(err)?;
    Ok(Loaded { name: l.algebra_name, sub: l.sub, neg: l.neg })
}

fn load_input(input: &SubInput) -> Res<Loaded> {
    if let Some(p) = &input.sub {
        return load_sub_file(p);
    }
    let prec = input.prec.as_deref().ok_or("give --sub, or --prec (with --algebra unless it names a subordination file)")?;
    let Some(alg) = &input.algebra else {
        return load_sub_file(Path::new(prec));
    };
    let (name, a) = load_algebra(alg, None).map_err(err)?;
    let text = if prec.trim_start().starts_with('[') { prec.to_string() } else { read(Path::new(prec)).map_err(err)? };
    let pairs: Vec<[usize; 2]> = match serde_json::from_str::<Value>(&text).map_err(err)? {
        Value::Object(o) => serde_json::from_value(o.get("prec").cloned().ok_or("expected a \"prec\" field")?).map_err(err)?,
        v => serde_json::from_value(v).map_err(err)?,
    };
    let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|[a, b]| (a, b)).collect();
    let sub = ProtoSubAlg::from_pairs(Arc::new(a.carrier), &pairs).map_err(err)?;
    Ok(Loaded { name, sub, neg: a.neg })
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn cmd_check(input: &SubInput, props: &[String], classes: bool) -> Res<Outcome> {
    let l = load_input(input)?;
    let names: Vec<PropertyName> = if props.is_empty() {
        PropertyName::ALL.to_vec()
    } else {
        props.iter().map(|p| p.parse::<PropertyName>().map_err(err)).collect::<Res<_>>()?
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for p in names {
        let c = match check_property(&l.sub, p) {
            Ok(c) => c,
            // only properties asked for by name must apply
            Err(SubordError::MissingStructure { need, .. }) if props.is_empty() => {
                writeln!(text, "{p}: not applicable (needs {need})").unwrap();
                rows.push(json!({"property": p.name(), "holds": null, "needs": need}));
                continue;
            }
            Err(e) => return Err(err(e)),
        };
        all &= c.holds;
        match &c.witness {
            Some(w) => writeln!(text, "{p}: fails at {w:?}").unwrap(),
            None => writeln!(text, "{p}: holds").unwrap(),
        }
        rows.push(json!({"property": p.name(), "holds": c.holds, "witness": c.witness}));
    }
    let mut out = json!({"algebra": l.name, "holds": all, "properties": rows});
    if classes {
        let cs: Vec<&str> = classify(&l.sub).into_iter().map(|c| c.name()).collect();
        writeln!(text, "classes: {}", cs.join(", ")).unwrap();
        out["classes"] = json!(cs);
    }
    Ok(Outcome { json: out, text, code: if all { 0 } else { 1 } })
}

fn cmd_close(input: &SubInput, rules: Option<&str>, system: Option<u8>) -> Res<Outcome> {
    let l = load_input(input)?;
    let rs = match (rules, system) {
        (Some(r), None) => r.parse::<RuleSet>().map_err(err)?,
        (None, Some(i)) => RuleSet::system(i).map_err(err)?,
        _ => return Err("give exactly one of --rules and --system".into()),
    };
    let closed = close(&l.sub, rs).map_err(err)?;
    let added = closed.prec().pairs().count() - l.sub.prec().pairs().count();
    let sj = SubordinationJson::inline(&closed, l.neg.as_deref());
    let text = format!("closed under {rs}: {added} pairs added\n{}\n", serde_json::to_string(&sj).map_err(err)?);
    let json = json!({"rules": rs.to_string(), "added": added, "subordination": sj});
    Ok(Outcome { json, text, code: 0 })
}

fn norms_from(path: &Path) -> Res<ioalg_core::iologic::NormativeSystem> {
    parse_norms(&read(path).map_err(err)?).map_err(err)
}

fn cmd_derive(system: u8, norms: &Path, query: &str) -> Res<Outcome> {
    let ns = norms_from(norms)?;
    let q = parse_norm(query, 1).map_err(err)?;
    let holds = ioalg_core::iologic::derive(&ns, system, &q.body, &q.head).map_err(err)?;
    Ok(Outcome {
        json: json!({"holds": holds, "system": system}),
        text: format!("({q}) in N{system}: {}\n", verdict(holds)),
        code: if holds { 0 } else { 1 },
    })
}

fn cmd_out(system: u8, norms: &Path, gamma: &str, query: Option<&str>, modal: bool) -> Res<Outcome> {
    let ns = norms_from(norms)?;
    let gamma = parse_gamma(gamma).map_err(err)?;
    let psi = query.map(parse_formula).transpose().map_err(err)?;
    let mut extra: Vec<String> = gamma.iter().flat_map(|f| f.atoms()).collect();
    if let Some(p) = &psi {
        extra.extend(p.atoms());
    }
    let c = NormClosure::new(&ns, system, extra).map_err(err)?;
    match psi {
        Some(psi) => {
            let holds = if modal { c.modal_output(&gamma, &psi) } else { c.out(&gamma, &psi) }.map_err(err)?;
            Ok(Outcome {
                json: json!({"holds": holds, "system": system, "modal": modal}),
                text: format!("{psi} in out{system}: {}\n", verdict(holds)),
                code: if holds { 0 } else { 1 },
            })
        }
        None => {
            if modal {
                return Err("--modal needs --query".into());
            }
            let set = c.out_set(&gamma).map_err(err)?;
            // out_i is an up-set; list its minimal members
            let minimal: Vec<String> = set
                .iter()
                .filter(|&x| !set.iter().any(|y| y != x && y & !x == 0))
                .map(|x| c.render(x))
                .collect();
            Ok(Outcome {
                json: json!({"system": system, "vars": c.vars(), "minimal": minimal, "size": set.count()}),
                text: format!("out{system} is generated by: {}\n", if minimal.is_empty() { "nothing".into() } else { minimal.join(" ; ") }),
                code: 0,
            })
        }
    }
}

fn cmd_slanted(input: &SubInput, ineq: &str, negation: NegArg) -> Res<Outcome> {
    let l = load_input(input)?;
    let ineq = parse_inequality(ineq).map_err(err)?;
    let ext = Arc::new(dm_completion(l.sub.carrier().poset()));
    let mut sa = build_slanted(&l.sub, ext.clone()).map_err(err)?;
    sa.negation_mode = match negation {
        NegArg::Sigma => NegationMode::Sigma,
        NegArg::Pi => NegationMode::Pi,
    };
    let v = valid(&sa, &ineq).map_err(err)?;
    let flags = classify_slanted(&sa);
    let delta = ext.delta();
    let labels = |t: &[usize]| t.iter().map(|&u| delta.label(u).to_string()).collect::<Vec<_>>();
    let po = l.sub.carrier().poset();
    let witness = v.witness.as_ref().map(|w| w.iter().map(|(k, &a)| (k.clone(), Value::from(po.label(a)))).collect::<serde_json::Map<String, Value>>());
    let mut text = format!("{ineq}: {}", if v.valid { "valid" } else { "not valid" });
    if let Some(w) = &witness {
        write!(text, " (fails at {})", Value::Object(w.clone())).unwrap();
    }
    text.push('\n');
    let json = json!({
        "valid": v.valid,
        "witness": witness,
        "diamond": labels(sa.diamond_table()),
        "square": labels(sa.square_table()),
        "flags": flags,
    });
    Ok(Outcome { json, text, code: if v.valid { 0 } else { 1 } })
}

fn cmd_completion(algebra: &str) -> Res<Outcome> {
    let (_, a) = load_algebra(algebra, None).map_err(err)?;
    let ext = dm_completion(a.carrier.poset());
    let dense = verify_dense(&ext).map_err(err)?;
    let compact = verify_compact(&ext).map_err(err)?;
    let cj = CompletionJson::of(&ext);
    let text = format!(
        "completion has {} elements; embed {:?}; dense {dense}, compact {compact}\n",
        cj.delta.elements.len(),
        cj.embed
    );
    Ok(Outcome { json: serde_json::to_value(&cj).map_err(err)?, text, code: 0 })
}

fn cmd_dual(input: &SubInput, checks: &[String], prime_filters: bool) -> Res<Outcome> {
    let l = load_input(input)?;
    let sp = if prime_filters { build_space_primefilters(&l.sub) } else { build_space_jirr(&l.sub) }.map_err(err)?;
    let conds: Vec<RelCondition> = checks.iter().map(|c| c.parse::<RelCondition>().map_err(err)).collect::<Res<_>>()?;
    let mut text = String::new();
    let sj = SpaceJson::of(&sp);
    writeln!(text, "points: {}", sj.points.join(", ")).unwrap();
    let r: Vec<String> = sj.r.iter().map(|&[a, b]| format!("({}, {})", sj.points[a], sj.points[b])).collect();
    writeln!(text, "R: {}", r.join(", ")).unwrap();
    let mut rows = Vec::new();
    let mut all = true;
    for c in conds {
        let res = check_relational(&sp, c).map_err(err)?;
        all &= res.holds;
        match &res.witness {
            Some(w) => writeln!(text, "{c}: fails at {w:?}").unwrap(),
            None => writeln!(text, "{c}: holds").unwrap(),
        }
        rows.push(json!({"condition": c.name(), "holds": res.holds, "witness": res.witness}));
    }
    let mut json = serde_json::to_value(&sj).map_err(err)?;
    json["checks"] = json!(rows);
    Ok(Outcome { json, text, code: if all { 0 } else { 1 } })
}

fn cmd_verify(a: &VerifyArgs) -> Res<Outcome> {
    if let Some(name) = &a.check {
        return verify_one(name, a.instance.as_deref());
    }
    if a.max_n > 4 {
        return Err("exhaustive enumeration is limited to carriers of at most 4 elements".into());
    }
    let mode = match a.mode {
        ModeArg::Exhaustive => GenMode::Exhaustive,
        ModeArg::Random => GenMode::Random,
    };
    let mut cfg = if a.corpus == "default" {
        let mut c = GenConfig::default_corpus(a.seed);
        c.mode = mode;
        c
    } else {
        let names: Vec<&str> = a.corpus.split(',').map(str::trim).collect();
        GenConfig::from_names(a.corpus.clone(), &names, mode, a.seed).map_err(err)?
    };
    cfg.max_n = a.max_n;
    cfg.samples = a.samples;
    let mut report = harness::run_suite(&cfg);
    if a.no_timing {
        report = report.without_timing();
    }
    let json = serde_json::to_value(&report).map_err(err)?;
    if let Some(path) = &a.out {
        let text = serde_json::to_string_pretty(&report).map_err(err)?;
        std::fs::write(path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    let mut text = format!(
        "corpus {} ({} relations, {} negations, seed {})\n",
        report.corpus, report.relations, report.negations, report.seed
    );
    for c in &report.checks {
        let status = if c.counterexample_count > 0 {
            "FAIL"
        } else if c.tested == 0 {
            "GAP "
        } else {
            "ok  "
        };
        writeln!(text, "{status} {:<36} tested {:>7}  skipped {:>7}  counterexamples {}", c.name, c.tested, c.skipped, c.counterexample_count)
            .unwrap();
    }
    writeln!(text, "{}", if report.passed { "all checks passed" } else { "FAILED" }).unwrap();
    Ok(Outcome { json, text, code: report.exit_code() as u8 })
}

fn verify_one(name: &str, instance: Option<&Path>) -> Res<Outcome> {
    let path = instance.ok_or("--check needs --instance")?;
    let text = read(path).map_err(err)?;
    // a counterexample copied out of a report replays as is
    let l = match serde_json::from_str::<harness::Counterexample>(&text) {
        Ok(cx) => {
            let l = cx.replay().load(parent(path)).map_err(err)?;
            Loaded { name: l.algebra_name, sub: l.sub, neg: cx.neg.or(l.neg) }
        }
        Err(_) => load_sub_file(path)?,
    };
    let spec = harness::find_check(name).ok_or_else(|| format!("unknown check '{name}'"))?;
    let v = if spec.scope == harness::Scope::Negation {
        let neg = l.neg.clone().ok_or("the algebra has no negation table")?;
        harness::verify_named_negation(name, &l.name, l.sub.carrier().clone(), neg).map_err(err)?
    } else {
        harness::verify_named(name, &l.name, &l.sub).map_err(err)?
    };
    let (label, code, detail) = match &v {
        Verdict::Pass => ("pass", 0, json!(null)),
        Verdict::Skip => ("skip", 0, json!(null)),
        Verdict::Counterexample { lhs, rhs, note } => ("counterexample", 1, json!({"lhs": lhs, "rhs": rhs, "note": note})),
    };
    Ok(Outcome {
        json: json!({"check": name, "statement": spec.statement(), "verdict": label, "detail": detail}),
        text: format!("{name}: {label}\n  {}\n", spec.statement()),
        code,
    })
}
