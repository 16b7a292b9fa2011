//! Extremality of the closure operators `◇ᵢ` and `■ᵢ` among maps on a small lattice.
//!
//! `◇ᵢ` is checked against every map `f ≤ ◇` with the item's properties: monotone (1, 3),
//! join-preserving (2, 4), and `f a ≤ f(a ∧ f a)` (3, 4). It must qualify and lie above all of
//! them.
//!
//! `■ᵢ` grows with `≺ᵢ`, so it sits above `■` and is checked as the least map `g ≥ ■` with
//! `g ⊤ = ⊤`, `g(a ∧ b) = g a ∧ g b`, and (3, 4) the relation `a ≤ g b` closed under (CT).
//! For items 1 and 2 monotone maps would do as well; for 3 and 4 neither monotonicity nor
//! `g(a ∨ g a) ≤ g a` pins `■ᵢ` down.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::completion::CanonicalExtension;
use crate::order::FinLattice;
use crate::slanted::build_slanted;
use crate::subordination::{close_i, property_holds, PropertyName, ProtoSubAlg};

use super::HarnessError;

/// Largest carrier for which maps are enumerated.
pub const MAP_LIMIT: usize = 4;

const DIRECTED: [PropertyName; 4] = [PropertyName::SI, PropertyName::WO, PropertyName::UD, PropertyName::DD];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputExtremality {
    pub item: u8,
    pub diamond: Vec<usize>,
    pub square: Vec<usize>,
    /// A map that `◇ᵢ` fails to dominate, or `◇ᵢ` itself if it lacks the properties.
    pub diamond_witness: Option<Vec<usize>>,
    /// A map that `■ᵢ` fails to lie below, or `■ᵢ` itself if it lacks the properties.
    pub square_witness: Option<Vec<usize>>,
}

impl OutputExtremality {
    pub fn holds(&self) -> bool {
        self.diamond_witness.is_none() && self.square_witness.is_none()
    }
}

fn monotone(l: &FinLattice, f: &[usize]) -> bool {
    let n = l.n();
    (0..n).all(|a| l.poset().up(a).iter().all(|b| l.leq(f[a], f[b])))
}

/// Properties asked of a diamond-like map for the given item.
pub fn diamond_qualifies(l: &FinLattice, f: &[usize], item: u8) -> bool {
    let n = l.n();
    let shape = match item {
        1 | 3 => monotone(l, f),
        _ => (0..n).all(|a| (0..n).all(|b| f[l.join(a, b)] == l.join(f[a], f[b]))),
    };
    shape && (item < 3 || (0..n).all(|a| l.leq(f[a], f[l.meet(a, f[a])])))
}

/// Properties asked of a box-like map for the given item.
pub fn square_qualifies(l: &FinLattice, g: &[usize], item: u8) -> bool {
    let n = l.n();
    let normal = g[l.top()] == l.top() && (0..n).all(|a| (0..n).all(|b| g[l.meet(a, b)] == l.meet(g[a], g[b])));
    // a ≤ g b and a ∧ b ≤ g c imply a ≤ g c
    let ct = || {
        (0..n).all(|a| {
            (0..n).filter(|&b| l.leq(a, g[b])).all(|b| (0..n).all(|c| !l.leq(l.meet(a, b), g[c]) || l.leq(a, g[c])))
        })
    };
    normal && (item < 3 || ct())
}

/// Every map `f` with `lo ≤ f ≤ hi` pointwise, in lexicographic order.
fn maps_between(l: &FinLattice, lo: &[usize], hi: &[usize]) -> impl Iterator<Item = Vec<usize>> {
    let n = l.n();
    let choices: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&v| l.leq(lo[a], v) && l.leq(v, hi[a])).collect()).collect();
    let total: usize = choices.iter().map(Vec::len).product();
    (0..total).map(move |mut c| {
        let mut f = vec![0; n];
        for a in (0..n).rev() {
            let k = choices[a].len();
            f[a] = choices[a][c % k];
            c /= k;
        }
        f
    })
}

/// `None` if `candidate ≤ bound` qualifies and dominates every qualifying map below `bound`;
/// otherwise the first offending map.
pub fn largest_below(l: &FinLattice, bound: &[usize], candidate: &[usize], item: u8) -> Option<Vec<usize>> {
    let n = l.n();
    let below = |f: &[usize], g: &[usize]| (0..n).all(|a| l.leq(f[a], g[a]));
    if !below(candidate, bound) || !diamond_qualifies(l, candidate, item) {
        return Some(candidate.to_vec());
    }
    let bottom = vec![l.bot(); n];
    maps_between(l, &bottom, bound).find(|f| diamond_qualifies(l, f, item) && !below(f, candidate))
}

/// Dual of [`largest_below`]: `candidate ≥ bound` qualifies and lies below every qualifying map
/// above `bound`.
pub fn smallest_above(l: &FinLattice, bound: &[usize], candidate: &[usize], item: u8) -> Option<Vec<usize>> {
    let n = l.n();
    let below = |f: &[usize], g: &[usize]| (0..n).all(|a| l.leq(f[a], g[a]));
    if !below(bound, candidate) || !square_qualifies(l, candidate, item) {
        return Some(candidate.to_vec());
    }
    let top = vec![l.top(); n];
    maps_between(l, bound, &top).find(|g| square_qualifies(l, g, item) && !below(candidate, g))
}

/// Compares `◇ᵢ`, `■ᵢ` of the closure `≺ᵢ` against all qualifying maps.
pub fn verify_output_extremality(
    s: &ProtoSubAlg,
    ext: &Arc<CanonicalExtension>,
    item: u8,
) -> Result<OutputExtremality, HarnessError> {
    let l = s.carrier().lattice().ok_or(HarnessError::NotApplicable("a lattice carrier"))?;
    if l.n() > MAP_LIMIT {
        return Err(HarnessError::NotApplicable("at most four elements"));
    }
    let nonempty = (0..s.n()).all(|a| !s.succ(a).is_empty() && !s.pred(a).is_empty());
    if !nonempty || !DIRECTED.iter().all(|&p| property_holds(s, p) == Some(true)) {
        return Err(HarnessError::NotApplicable("a directed relation with non-empty images"));
    }
    let to_base = |u: usize| ext.base_of(u).expect("a finite lattice is its own completion");
    let sa = build_slanted(s, ext.clone()).map_err(|_| HarnessError::NotApplicable("a matching completion"))?;
    let si = close_i(s, item)?;
    let sai = build_slanted(&si, ext.clone()).expect("same carrier");
    let n = l.n();
    let dia: Vec<usize> = (0..n).map(|a| to_base(sa.diamond(a))).collect();
    let sq: Vec<usize> = (0..n).map(|a| to_base(sa.square(a))).collect();
    let dia_i: Vec<usize> = (0..n).map(|a| to_base(sai.diamond(a))).collect();
    let sq_i: Vec<usize> = (0..n).map(|a| to_base(sai.square(a))).collect();
    Ok(OutputExtremality {
        item,
        diamond_witness: largest_below(l, &dia, &dia_i, item),
        square_witness: smallest_above(l, &sq, &sq_i, item),
        diamond: dia_i,
        square: sq_i,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;
    use crate::completion::dm_completion;
    use crate::order::Carrier;

    fn b4_sub(pairs: &[(usize, usize)]) -> (ProtoSubAlg, Arc<CanonicalExtension>) {
        let c = Arc::new(Carrier::Lattice(algebras::b4()));
        let ext = Arc::new(dm_completion(c.poset()));
        (ProtoSubAlg::from_pairs(c, pairs).unwrap(), ext)
    }

    #[test]
    fn identity_is_extremal() {
        let leq: Vec<(usize, usize)> = algebras::b4().poset().relation().pairs().collect();
        let (s, ext) = b4_sub(&leq);
        for i in 1..=4 {
            let r = verify_output_extremality(&s, &ext, i).unwrap();
            assert!(r.holds(), "item {i}: {r:?}");
            assert_eq!(r.diamond, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn empty_images_are_not_applicable() {
        // vacuously directed, but ◇a = ⋀∅ = ⊤ would not read back as a ≺ ⊤
        let (s, ext) = b4_sub(&[]);
        assert!(matches!(verify_output_extremality(&s, &ext, 1), Err(HarnessError::NotApplicable(_))));
    }

    #[test]
    fn top_relation_collapses() {
        let all: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
        let (s, ext) = b4_sub(&all);
        let r = verify_output_extremality(&s, &ext, 4).unwrap();
        assert!(r.holds());
        assert_eq!(r.diamond, vec![0, 0, 0, 0]);
        assert_eq!(r.square, vec![3, 3, 3, 3]);
    }

    #[test]
    fn printed_square_condition_is_not_enough() {
        // maps g ≥ ■ that are normal and satisfy g(a ∨ g a) ≤ g a, yet undercut ■₃ on some instance
        let c = Arc::new(Carrier::Lattice(algebras::b4()));
        let ext = Arc::new(dm_completion(c.poset()));
        let l = c.lattice().unwrap();
        let mut undercut = 0;
        for code in 0..(1u64 << 16) {
            let s = ProtoSubAlg::new(c.clone(), crate::bits::Relation::from_code(4, code)).unwrap();
            let Ok(r) = verify_output_extremality(&s, &ext, 3) else { continue };
            assert!(r.holds());
            let sa = build_slanted(&s, ext.clone()).unwrap();
            let sq: Vec<usize> = (0..4).map(|a| ext.base_of(sa.square(a)).unwrap()).collect();
            let top = vec![l.top(); 4];
            undercut += maps_between(l, &sq, &top)
                .filter(|g| {
                    square_qualifies(l, g, 1)
                        && (0..4).all(|a| l.leq(g[l.join(a, g[a])], g[a]))
                        && (0..4).any(|a| !l.leq(r.square[a], g[a]))
                })
                .count();
        }
        assert!(undercut > 0);
    }

    #[test]
    fn lowered_candidate_is_caught() {
        let l = algebras::b4();
        let id = [0, 1, 2, 3];
        let mut low = id;
        low[1] = 0;
        let w = largest_below(&l, &id, &low, 1).unwrap();
        assert!((0..4).any(|a| !l.leq(w[a], low[a])));
        assert!(diamond_qualifies(&l, &w, 1));
    }

    #[test]
    fn monotone_is_too_weak_for_square() {
        // a monotone map above ■ whose relation fails (CT) undercuts ■₃
        let c = Arc::new(Carrier::Lattice(algebras::b4()));
        let ext = Arc::new(dm_completion(c.poset()));
        let l = c.lattice().unwrap();
        let mut found = false;
        for code in 0..(1u64 << 16) {
            let s = ProtoSubAlg::new(c.clone(), crate::bits::Relation::from_code(4, code)).unwrap();
            let Ok(r) = verify_output_extremality(&s, &ext, 3) else { continue };
            let sa = build_slanted(&s, ext.clone()).unwrap();
            let sq: Vec<usize> = (0..4).map(|a| ext.base_of(sa.square(a)).unwrap()).collect();
            let top = vec![l.top(); 4];
            found |= maps_between(l, &sq, &top).any(|g| monotone(l, &g) && (0..4).any(|a| !l.leq(r.square[a], g[a])));
            if found {
                break;
            }
        }
        assert!(found);
    }
}
