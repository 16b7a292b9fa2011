use std::sync::Arc;

use proptest::prelude::*;

use ioalg_core::algebras;
use ioalg_core::bits::find_isomorphism;
use ioalg_core::completion::{dm_completion, extend_negation_pi, extend_negation_sigma};
use ioalg_core::duality::{build_space_jirr, check_relational, RelCondition};
use ioalg_core::iologic::{check_model, IoModel, Norm, NormClosure, NormativeSystem};
use ioalg_core::order::check_negation_laws;
use ioalg_core::subordination::{
    close, property_holds, subordination_relations, PropertyName, ProtoSubAlg, RuleSet,
};
use ioalg_core::syntax::Formula;
use ioalg_core::{Carrier, FinLattice, FinPoset, Relation};

fn carrier(l: FinLattice) -> Arc<Carrier> {
    Arc::new(l.into())
}

fn closed_under(s: &ProtoSubAlg, rules: RuleSet) -> bool {
    rules.rules().all(|r| property_holds(s, r.property()) == Some(true))
}

/// Least closed superset, found by intersecting every closed relation that contains `code`.
#[test]
fn closure_is_least_closed_superset() {
    for l in [algebras::chain(2), algebras::chain(3)] {
        let n = l.n();
        let c = carrier(l);
        let all = 1u64 << (n * n);
        for rules in RuleSet::all_subsets() {
            let closed: Vec<u64> = (0..all)
                .filter(|&code| closed_under(&ProtoSubAlg::new(c.clone(), Relation::from_code(n, code)).unwrap(), rules))
                .collect();
            for code in 0..all {
                let least = closed.iter().filter(|&&k| k & code == code).fold(all - 1, |acc, &k| acc & k);
                let s = ProtoSubAlg::new(c.clone(), Relation::from_code(n, code)).unwrap();
                let got = close(&s, rules).unwrap().prec().code();
                assert_eq!(got, least, "n={n} rules={rules} code={code}");
            }
        }
    }
}

fn b4_relation() -> impl Strategy<Value = Relation> {
    any::<u16>().prop_map(|c| Relation::from_code(4, c as u64))
}

fn rule_set() -> impl Strategy<Value = RuleSet> {
    let all: Vec<RuleSet> = RuleSet::all_subsets().collect();
    proptest::sample::select(all)
}

proptest! {
    #[test]
    fn closure_is_extensive_idempotent_monotone(r in b4_relation(), extra in b4_relation(), rules in rule_set()) {
        let c = carrier(algebras::b4());
        let s = ProtoSubAlg::new(c.clone(), r.clone()).unwrap();
        let once = close(&s, rules).unwrap();
        prop_assert!(r.is_subset(once.prec()));
        prop_assert!(closed_under(&once, rules));
        let twice = close(&once, rules).unwrap();
        prop_assert_eq!(twice.prec(), once.prec());
        let mut bigger = r.clone();
        bigger.union_with(&extra);
        let big = close(&s.with_relation(bigger), rules).unwrap();
        prop_assert!(once.prec().is_subset(big.prec()));
    }
}

fn random_poset() -> impl Strategy<Value = FinPoset> {
    (2usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |covers| FinPoset::from_hasse(n, &covers).unwrap())
    })
}

fn permuted(p: &FinPoset, perm: &[usize]) -> FinPoset {
    let rel = Relation::from_pairs(p.n(), p.relation().pairs().map(|(a, b)| (perm[a], perm[b]))).unwrap();
    FinPoset::from_relation(rel).unwrap()
}

proptest! {
    #[test]
    fn completion_is_unique_up_to_isomorphism(p in random_poset(), seed in any::<u64>()) {
        let n = p.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let q = permuted(&p, &perm);
        let (a, b) = (dm_completion(&p), dm_completion(&q));
        prop_assert_eq!(a.delta().n(), b.delta().n());
        // an order isomorphism of the completions that carries one embedding onto the other
        let m = a.delta().n();
        let loop_at = |u: usize| Relation::from_pairs(m, [(u, u)]).unwrap();
        let tags: Vec<(Relation, Relation)> = (0..n).map(|x| (loop_at(a.embed()[x]), loop_at(b.embed()[perm[x]]))).collect();
        let mut pairs = vec![(a.delta().poset().relation(), b.delta().poset().relation())];
        pairs.extend(tags.iter().map(|(r, t)| (r, t)));
        let iso = find_isomorphism(m, &pairs);
        prop_assert!(iso.is_some());
        let f = iso.unwrap();
        prop_assert!((0..n).all(|x| f[a.embed()[x]] == b.embed()[perm[x]]));
    }
}

fn labeled_posets(n: usize) -> Vec<FinPoset> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    (0..1u64 << off.len())
        .filter_map(|m| {
            let pairs = off.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, &p)| p);
            let mut r = Relation::identity(n);
            for (a, b) in pairs {
                r.insert(a, b);
            }
            FinPoset::from_relation(r).ok()
        })
        .collect()
}

fn maps(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(n as u32)).map(move |mut c| {
        (0..n)
            .map(|_| {
                let v = c % n;
                c /= n;
                v
            })
            .collect()
    })
}

/// Over every labeled poset with at most three elements and every self-map: whenever the
/// base laws allow an extension, it agrees with the negation on the image of the embedding
/// and is antitone on the completion.
#[test]
fn negation_extensions_extend_and_stay_antitone() {
    let mut extended = [0usize; 2];
    for n in 1..=3 {
        for p in labeled_posets(n) {
            let ext = dm_completion(&p);
            let d = ext.delta();
            for neg in maps(n) {
                let laws = check_negation_laws(&p, &neg).unwrap();
                for (k, result) in [extend_negation_sigma(&ext, &neg), extend_negation_pi(&ext, &neg)].into_iter().enumerate() {
                    let allowed = laws.antitone && if k == 0 { laws.left_self_adjoint } else { laws.right_self_adjoint };
                    assert_eq!(result.is_ok(), allowed);
                    let Ok(e) = result else { continue };
                    extended[k] += 1;
                    assert!((0..n).all(|a| e[ext.embed()[a]] == ext.embed()[neg[a]]));
                    assert!((0..d.n()).all(|u| (0..d.n()).all(|v| !d.leq(u, v) || d.leq(e[v], e[u]))));
                }
            }
        }
    }
    assert!(extended.iter().all(|&c| c > 0));
}

fn formula_over(atoms: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        proptest::sample::select(atoms).prop_map(|a| Formula::Atom(a.to_string())),
        Just(Formula::Top),
        Just(Formula::Bot),
    ];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Formula::Not(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::Or(Box::new(a), Box::new(b))),
        ]
    })
}

fn system_over(atoms: &'static [&'static str]) -> impl Strategy<Value = NormativeSystem> {
    proptest::collection::vec((formula_over(atoms), formula_over(atoms)), 1..=3)
        .prop_map(|ns| NormativeSystem::new(ns.into_iter().map(|(body, head)| Norm { body, head }).collect()))
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivability_ignores_unused_variables(
        ns in system_over(&["p", "q"]),
        body in formula_over(&["p", "q"]),
        head in formula_over(&["p", "q"]),
        i in 1u8..=4,
    ) {
        let small = NormClosure::new(&ns, i, names(&["p", "q"])).unwrap();
        let large = NormClosure::new(&ns, i, names(&["p", "q", "r"])).unwrap();
        prop_assert_eq!(small.derives(&body, &head).unwrap(), large.derives(&body, &head).unwrap());
    }

    /// A model closed under the rules of system i that satisfies every norm satisfies every
    /// derived norm.
    #[test]
    fn models_satisfy_derived_norms(
        ns in system_over(&["p", "q", "r"]),
        queries in proptest::collection::vec((formula_over(&["p", "q", "r"]), formula_over(&["p", "q", "r"])), 16),
        valuation in proptest::collection::vec(0usize..8, 3),
        seed_rel in any::<u64>(),
        i in 1u8..=4,
    ) {
        let c = carrier(algebras::b8());
        let val = ["p", "q", "r"].iter().map(|a| a.to_string()).zip(valuation).collect();
        let seed = ProtoSubAlg::new(c.clone(), Relation::from_code(8, seed_rel & seed_rel.rotate_left(17))).unwrap();
        let probe = IoModel { sub: seed, valuation: val };
        let mut rel = probe.sub.prec().clone();
        for n in &ns.norms {
            rel.insert(probe.value(&n.body).unwrap(), probe.value(&n.head).unwrap());
        }
        let closed = close(&probe.sub.with_relation(rel), RuleSet::system(i).unwrap()).unwrap();
        let model = IoModel { sub: closed, valuation: probe.valuation };
        prop_assert_eq!(check_model(&model, &ns).unwrap(), None);
        let nc = NormClosure::new(&ns, i, names(&["p", "q", "r"])).unwrap();
        for (body, head) in &queries {
            if nc.derives(body, head).unwrap() {
                prop_assert!(model.sub.holds(model.value(body).unwrap(), model.value(head).unwrap()));
            }
        }
        for n in &ns.norms {
            prop_assert!(nc.derives(&n.body, &n.head).unwrap());
        }
    }
}

/// The relational SL1 and S9 conditions ask for a point above the given ones; asking for one
/// below instead breaks the correspondence on some subordination algebra.
#[test]
fn below_variants_do_not_correspond() {
    let mut broken = [false; 2];
    for l in [algebras::b4(), algebras::chain(3), algebras::chain(4), algebras::fd2(), algebras::b8()] {
        let c = carrier(l.clone());
        for rel in subordination_relations(&l) {
            let s = ProtoSubAlg::new(c.clone(), rel).unwrap();
            let sp = build_space_jirr(&s).unwrap();
            let cases = [
                (PropertyName::SL1, RelCondition::SL1, RelCondition::SL1Below),
                (PropertyName::S9Fwd, RelCondition::S9Fwd, RelCondition::S9Below),
            ];
            for (k, (alg, rel_cond, below)) in cases.into_iter().enumerate() {
                let algebraic = property_holds(&s, alg).unwrap();
                assert_eq!(check_relational(&sp, rel_cond).unwrap().holds, algebraic, "{alg} on {:?}", s.pairs());
                broken[k] |= check_relational(&sp, below).unwrap().holds != algebraic;
            }
        }
    }
    assert_eq!(broken, [true, true]);
}

/// `b∧c ≺ a` asks for successors `b'`, `c'` of `b` and `c` whose meet is below `a` in `≺`;
/// reading them as predecessors gives a different property.
#[test]
fn sl2_uses_successors() {
    let mut differs = false;
    for l in [algebras::chain(3), algebras::b4()] {
        let n = l.n();
        let c = carrier(l.clone());
        for code in 0..1u64 << (n * n) {
            let s = ProtoSubAlg::new(c.clone(), Relation::from_code(n, code)).unwrap();
            let reading = |forward: bool| {
                (0..n).all(|a| {
                    (0..n).all(|b| {
                        (0..n).all(|cc| {
                            !s.holds(l.meet(b, cc), a)
                                || (0..n).any(|b2| {
                                    (0..n).any(|c2| {
                                        let near = if forward { s.holds(b, b2) && s.holds(cc, c2) } else { s.holds(b2, b) && s.holds(c2, cc) };
                                        near && s.holds(l.meet(b2, c2), a)
                                    })
                                })
                        })
                    })
                })
            };
            let succ = reading(true);
            assert_eq!(property_holds(&s, PropertyName::SL2), Some(succ), "code {code}");
            differs |= succ != reading(false);
        }
    }
    assert!(differs);
}
