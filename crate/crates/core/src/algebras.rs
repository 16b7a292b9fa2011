//! Small named carriers used by tests, the CLI and the verification corpus.

use crate::bits::Relation;
use crate::order::{to_lattice, Carrier, FinLattice, FinPoset};

fn lattice_from_hasse(n: usize, covers: &[(usize, usize)], labels: &[&str]) -> FinLattice {
    let p = FinPoset::from_hasse(n, covers)
        .and_then(|p| p.with_labels(labels.iter().copied()))
        .expect("builtin order is valid");
    to_lattice(&p).expect("builtin order is a lattice")
}

/// The `n`-element chain `0 < m1 < … < 1`; the 3-chain is labelled `0 < m < 1`.
pub fn chain(n: usize) -> FinLattice {
    assert!(n >= 1);
    let labels: Vec<String> = match n {
        1 => vec!["0".into()],
        3 => vec!["0".into(), "m".into(), "1".into()],
        _ => (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == n - 1 => "1".to_string(),
                i => format!("m{i}"),
            })
            .collect(),
    };
    to_lattice(&FinPoset::chain(n).with_labels(labels).unwrap()).unwrap()
}

/// The powerset of `k` atoms, element `i` being the subset with bitmask `i`.
pub fn boolean(k: usize, atom_names: &[&str]) -> FinLattice {
    assert_eq!(atom_names.len(), k);
    let n = 1usize << k;
    let mut leq = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if a & !b == 0 {
                leq.insert(a, b);
            }
        }
    }
    let labels: Vec<String> = (0..n)
        .map(|m| {
            if m == 0 {
                "0".to_string()
            } else if m == n - 1 && k > 1 {
                "1".to_string()
            } else {
                (0..k).filter(|j| m >> j & 1 == 1).map(|j| atom_names[j]).collect()
            }
        })
        .collect();
    let p = FinPoset::from_relation(leq).unwrap().with_labels(labels).unwrap();
    to_lattice(&p).unwrap()
}

/// `{0, a, a', 1}` with complement negation.
pub fn b4() -> FinLattice {
    boolean(2, &["a", "a'"])
}

/// The eight-element Boolean algebra on atoms `x, y, z`.
pub fn b8() -> FinLattice {
    boolean(3, &["x", "y", "z"])
}

/// The free distributive lattice on two generators: `0 < p&q < p, q < p|q < 1`.
pub fn fd2() -> FinLattice {
    lattice_from_hasse(
        6,
        &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)],
        &["0", "p&q", "p", "q", "p|q", "1"],
    )
}

/// `B4` with a new top added.
pub fn b4_top() -> FinLattice {
    lattice_from_hasse(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)], &["0", "a", "a'", "1", "T"])
}

/// The diamond `M3` (not distributive).
pub fn m3() -> FinLattice {
    lattice_from_hasse(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], &["0", "a", "b", "c", "1"])
}

/// The pentagon `N5` (not distributive).
pub fn n5() -> FinLattice {
    lattice_from_hasse(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], &["0", "a", "b", "c", "1"])
}

/// The two-element antichain `{x, y}`.
pub fn antichain2() -> FinPoset {
    FinPoset::antichain(2).with_labels(["x", "y"]).unwrap()
}

/// Negation on [`antichain2`] swapping its two elements.
pub const ANTICHAIN2_SWAP: [usize; 2] = [1, 0];

pub const BUILTIN_NAMES: &[&str] =
    &["chain2", "chain3", "chain4", "chain5", "b4", "b8", "fd2", "b4_top", "m3", "n5", "antichain2"];

/// Looks up a named carrier.
pub fn builtin(name: &str) -> Option<Carrier> {
    let c = match name {
        "chain2" | "2" => chain(2).into(),
        "chain3" => chain(3).into(),
        "chain4" => chain(4).into(),
        "chain5" => chain(5).into(),
        "b4" => b4().into(),
        "b8" => b8().into(),
        "fd2" => fd2().into(),
        "b4_top" => b4_top().into(),
        "m3" => m3().into(),
        "n5" => n5().into(),
        "antichain2" => Carrier::Poset(antichain2()),
        _ => return None,
    };
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_shapes() {
        let l = b4();
        assert_eq!(l.poset().labels(), &["0", "a", "a'", "1"]);
        assert_eq!(chain(3).poset().labels(), &["0", "m", "1"]);
        assert_eq!(b8().poset().labels()[3], "xy");
        assert!(fd2().is_distributive() && !fd2().is_boolean());
        assert!(b4_top().is_distributive());
        for name in BUILTIN_NAMES {
            assert!(builtin(name).is_some(), "{name}");
        }
    }
}
