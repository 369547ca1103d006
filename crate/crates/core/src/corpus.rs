//! Named built-in semigroups and the exhaustive test corpus.

use itertools::Itertools;

use crate::bits::ElemSet;
use crate::constructions::{
    adjoin_absorbing, adjoin_zero, counterexample_instance, exel_boolean4, symmetric_inverse_semigroup,
    szendrei_example, Congruence, ConstructionError, Group,
};
use crate::semigroup::{CayleyTable, InverseSemigroup};
use crate::semilattice::Semilattice;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "szendrei", "exel-z2", "ix1", "ix2", "ix3", "boolean4", "boolean8", "chain3", "brandt2", "z2-zero",
];

/// Largest semilattice size in the exhaustive enumeration.
pub const SEMILATTICE_CORPUS_MAX: usize = 6;

pub fn builtin(name: &str) -> Option<InverseSemigroup> {
    let s = match name {
        "szendrei" => szendrei_example(),
        "exel-z2" => counterexample_instance().family.semigroup,
        "ix1" => symmetric_inverse_semigroup(1).ok()?,
        "ix2" => symmetric_inverse_semigroup(2).ok()?,
        "ix3" => symmetric_inverse_semigroup(3).ok()?,
        "boolean4" => boolean4(),
        "boolean8" => Semilattice::powerset(3).as_inverse_semigroup(),
        "chain3" => Semilattice::chain(3).as_inverse_semigroup(),
        "brandt2" => brandt(&Group::cyclic(1), 2).ok()?,
        "z2-zero" => adjoin_zero(Group::cyclic(2).table()).ok()?,
        _ => return None,
    };
    Some(if s.name().is_some() { s } else { s.with_name(name) })
}

/// `{0,1} x {0,1}` under coordinatewise product; element `m` has bitmask `m`
/// with the first coordinate in bit 0.
pub fn boolean4() -> InverseSemigroup {
    Semilattice::powerset(2)
        .as_inverse_semigroup()
        .with_labels(["(0,0)", "(1,0)", "(0,1)", "(1,1)"].map(String::from).to_vec())
        .expect("four labels")
        .with_name("boolean4")
}

/// The Brandt semigroup `B(G, n)`: zero plus triples `(i, g, j)` with
/// `(i,g,j)(k,h,l) = (i,gh,l)` when `j = k` and zero otherwise.
pub fn brandt(group: &Group, n: usize) -> Result<InverseSemigroup, ConstructionError> {
    let m = group.len();
    let size = 1 + n * n * m;
    if size > crate::bits::MAX_ELEMENTS {
        return Err(ConstructionError::SizeCap {
            what: "brandt size",
            value: size,
            max: crate::bits::MAX_ELEMENTS,
        });
    }
    let index = |i: usize, j: usize, g: usize| 1 + (i * n + j) * m + g;
    let decode = |a: usize| {
        let a = a - 1;
        ((a / m) / n, (a / m) % n, a % m)
    };
    let table = CayleyTable::from_fn(size, |a, b| {
        if a == 0 || b == 0 {
            return 0;
        }
        let (i, j, g) = decode(a);
        let (k, l, h) = decode(b);
        if j == k {
            index(i, l, group.mul(g, h))
        } else {
            0
        }
    })?;
    Ok(InverseSemigroup::from_table(table, 0)?.with_name(format!("brandt({m},{n})")))
}

/// Rees quotient `I(k) / {rank <= r}`.
pub fn rees_quotient_of_symmetric(k: usize, r: usize) -> Result<InverseSemigroup, ConstructionError> {
    let ix = symmetric_inverse_semigroup(k)?;
    let maps = crate::constructions::partial_bijections(k);
    let labels: Vec<usize> = maps
        .iter()
        .enumerate()
        .map(|(i, f)| if f.domain().len() <= r { 0 } else { i })
        .collect();
    let congruence = Congruence::from_labels(&labels);
    let q = crate::constructions::quotient(ix.table(), &congruence)?;
    Ok(q.semigroup.with_name(format!("I({k})/rank<={r}")))
}

/// Canonical form of a finite poset with least element 0: the least
/// row-major order matrix over all relabelings that fix 0.
fn canonical_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> (Vec<bool>, Vec<usize>) {
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    for tail in (1..n).permutations(n.saturating_sub(1)) {
        let perm: Vec<usize> = std::iter::once(0).chain(tail).collect();
        let key: Vec<bool> = (0..n * n).map(|i| leq(perm[i / n], perm[i % n])).collect();
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, perm));
        }
    }
    best.expect("at least one permutation")
}

fn canonical_semilattice(e: &Semilattice) -> (Vec<bool>, Semilattice) {
    // move zero to index 0 first
    let n = e.len();
    let order: Vec<usize> = std::iter::once(e.zero()).chain((0..n).filter(|&x| x != e.zero())).collect();
    let (key, perm) = canonical_order(n, |i, j| e.leq(order[i], order[j]));
    let relabel: Vec<usize> = perm.iter().map(|&p| order[p]).collect();
    let canon = Semilattice::from_order(n, |i, j| e.leq(relabel[i], relabel[j])).expect("relabeled semilattice");
    (key, canon)
}

/// All semilattices with 0 of each size `1..=max_size`, one per isomorphism
/// class, grouped by size. Built by adding a maximal element on top of a
/// down-set of a smaller one.
pub fn semilattices_up_to(max_size: usize) -> Vec<Vec<Semilattice>> {
    let mut levels: Vec<Vec<Semilattice>> = Vec::new();
    if max_size == 0 {
        return levels;
    }
    levels.push(vec![Semilattice::chain(1)]);
    for n in 2..=max_size {
        let mut found: Vec<(Vec<bool>, Semilattice)> = Vec::new();
        for base in &levels[n - 2] {
            let m = base.len();
            // nonempty down-sets = the new element's strict down-set
            for mask in 1u32..(1 << m) {
                let d: ElemSet = (0..m).filter(|&x| mask & (1 << x) != 0).collect();
                if !d.contains(base.zero()) || !d.iter().all(|x| base.below(x).is_subset(&d)) {
                    continue;
                }
                let leq = |x: usize, y: usize| match (x == m, y == m) {
                    (false, false) => base.leq(x, y),
                    (false, true) => d.contains(x),
                    (true, false) => false,
                    (true, true) => true,
                };
                let Ok(e) = Semilattice::from_order(n, leq) else { continue };
                let (key, canon) = canonical_semilattice(&e);
                if !found.iter().any(|(k, _)| *k == key) {
                    found.push((key, canon));
                }
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        levels.push(found.into_iter().map(|(_, e)| e).collect());
    }
    levels
}

/// Canonical key, for isomorphism tests.
pub fn semilattice_key(e: &Semilattice) -> Vec<bool> {
    canonical_semilattice(e).0
}

/// Finite Boolean algebras with `2^k` elements, `k = 1..=max_atoms`.
pub fn boolean_algebras(max_atoms: u32) -> Vec<Semilattice> {
    (1..=max_atoms).map(Semilattice::powerset).collect()
}

/// Every semilattice the acceptance checks run over: the exhaustive
/// enumeration, Boolean algebras up to 16 elements and the idempotent
/// semilattices of the built-ins.
pub fn semilattice_corpus() -> Vec<(String, Semilattice)> {
    let mut out = Vec::new();
    for (level, members) in semilattices_up_to(SEMILATTICE_CORPUS_MAX).into_iter().enumerate() {
        for (i, e) in members.into_iter().enumerate() {
            out.push((format!("semilattice{}-{i}", level + 1), e));
        }
    }
    for e in boolean_algebras(4) {
        out.push((format!("boolean-algebra{}", e.len()), e));
    }
    for name in BUILTIN_NAMES {
        let s = builtin(name).expect("listed builtin");
        let idem = s.idempotent_semilattice().expect("builtins are inverse semigroups");
        out.push((format!("E({name})"), idem.lattice));
    }
    out
}

fn z4_half() -> ElemSet {
    [0, 2].iter().collect()
}

/// The inverse semigroups (all with at most 34 elements) used by the law
/// suites.
pub fn inverse_semigroup_corpus() -> Vec<(String, InverseSemigroup)> {
    let mut out: Vec<(String, InverseSemigroup)> = Vec::new();
    for (name, e) in semilattice_corpus() {
        if name.starts_with("semilattice") || name.starts_with("boolean") {
            out.push((name, e.as_inverse_semigroup()));
        }
    }
    for name in BUILTIN_NAMES {
        out.push((name.to_string(), builtin(name).expect("listed builtin")));
    }

    let z2 = Group::cyclic(2);
    let z4 = Group::cyclic(4);
    let v4 = Group::klein_four();
    let exel = [
        ("exel-z2-mixed", exel_boolean4(z2.clone(), z2.all(), z2.trivial_subgroup())),
        ("exel-z2-trivial", exel_boolean4(z2.clone(), z2.trivial_subgroup(), z2.trivial_subgroup())),
        ("exel-z4-half", exel_boolean4(z4.clone(), z4_half(), z4_half())),
        ("exel-z4-full", exel_boolean4(z4.clone(), z4.all(), z4_half())),
        ("exel-v4-split", exel_boolean4(v4.clone(), [0, 1].iter().collect(), [0, 2].iter().collect())),
        ("exel-v4-shared", exel_boolean4(v4.clone(), [0, 1].iter().collect(), [0, 1].iter().collect())),
        ("exel-s3-a3", exel_boolean4(Group::symmetric3(), [0, 3, 4].iter().collect(), Group::symmetric3().all())),
    ];
    for (name, fam) in exel {
        out.push((name.to_string(), fam.expect("valid family").semigroup));
    }

    for (name, g) in [("z3", Group::cyclic(3)), ("z4", z4.clone()), ("v4", v4.clone()), ("s3", Group::symmetric3())] {
        out.push((format!("{name}-zero"), adjoin_zero(g.table()).expect("group with zero")));
    }
    out.push(("brandt-z2-2".into(), brandt(&z2, 2).expect("small")));
    out.push(("brandt3".into(), brandt(&Group::cyclic(1), 3).expect("small")));
    out.push(("ix3/rank1".into(), rees_quotient_of_symmetric(3, 1).expect("Rees congruence")));
    out.push(("ix3/rank2".into(), rees_quotient_of_symmetric(3, 2).expect("Rees congruence")));

    let absorbing = ["szendrei", "ix2", "boolean4", "chain3", "z2-zero", "exel-z2", "brandt2"];
    for name in absorbing {
        let s = builtin(name).expect("listed builtin");
        out.push((format!("{name}+z"), adjoin_absorbing(&s).expect("valid")));
    }
    out.push(("szendrei+z+z".into(), adjoin_absorbing(&adjoin_absorbing(&szendrei_example()).unwrap()).unwrap()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All partial orders on `0..n` with 0 least and all meets, by brute
    /// force over relations on the nonzero elements.
    fn brute_force_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
        let mut keys = std::collections::BTreeSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let rel = |x: usize, y: usize| {
                x == y || x == 0 || pairs.iter().position(|&p| p == (x, y)).is_some_and(|i| mask & (1 << i) != 0)
            };
            if let Ok(e) = Semilattice::from_order(n, rel) {
                keys.insert(semilattice_key(&e));
            }
        }
        keys.len()
    }

    #[test]
    fn semilattice_counts_match_lattice_counts() {
        // n-element semilattices with 0 are (n+1)-element lattices
        let levels = semilattices_up_to(6);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        let levels = semilattices_up_to(5);
        for n in 1..=5 {
            assert_eq!(levels[n - 1].len(), brute_force_count(n), "size {n}");
        }
    }

    #[test]
    fn enumerated_semilattices_are_pairwise_non_isomorphic() {
        for level in semilattices_up_to(5) {
            let keys: std::collections::BTreeSet<_> = level.iter().map(semilattice_key).collect();
            assert_eq!(keys.len(), level.len());
        }
    }

    #[test]
    fn builtins_load() {
        for name in BUILTIN_NAMES {
            assert!(builtin(name).is_some(), "{name}");
        }
        assert!(builtin("nope").is_none());
        assert_eq!(builtin("brandt2").unwrap().len(), 5);
        assert_eq!(builtin("exel-z2").unwrap().name(), Some("exel-z2"));
    }

    #[test]
    fn brandt_is_combinatorial_rank_one_part_of_i2() {
        let b = brandt(&Group::cyclic(1), 2).unwrap();
        assert_eq!(b.idempotents().len(), 3);
        let bz = brandt(&Group::cyclic(2), 2).unwrap();
        assert_eq!(bz.len(), 9);
    }

    #[test]
    fn rees_quotients() {
        assert_eq!(rees_quotient_of_symmetric(3, 1).unwrap().len(), 25);
        assert_eq!(rees_quotient_of_symmetric(3, 2).unwrap().len(), 7);
    }

    #[test]
    fn corpus_sizes() {
        let corpus = inverse_semigroup_corpus();
        assert!(corpus.iter().all(|(_, s)| s.len() <= 34));
        assert!(corpus.iter().any(|(_, s)| s.len() == 34));
        let names: std::collections::BTreeSet<_> = corpus.iter().map(|(n, _)| n.clone()).collect();
        assert_eq!(names.len(), corpus.len());
    }
}
