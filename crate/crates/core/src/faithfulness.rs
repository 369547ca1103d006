//! Essential coincidence, continuity and the kernel of the regular
//! representation.

use crate::regular::{RegularError, RegularRepresentation};
use crate::semigroup::{ElementId, IdempotentLattice, InverseSemigroup};

/// `s` and `t` essentially coincide: `s*s = t*t` and every nonzero
/// idempotent `f <= s*s` lies above a nonzero idempotent `e` with `se = te`.
pub fn essentially_coincides(s: &InverseSemigroup, a: ElementId, b: ElementId) -> bool {
    let source = s.source(a);
    if source != s.source(b) {
        return false;
    }
    let idem = s.idempotents();
    let below_source = s.down_set(source).intersection(&idem).without(s.zero());
    below_source.iter().all(|f| {
        s.down_set(f)
            .intersection(&idem)
            .without(s.zero())
            .iter()
            .any(|e| s.mul(a, e) == s.mul(b, e))
    })
}

/// Continuous means essential coincidence implies equality. The witness is
/// the first pair `s < t` (by index) that coincides essentially.
pub fn is_continuous(s: &InverseSemigroup) -> (bool, Option<(ElementId, ElementId)>) {
    for a in s.elements() {
        for b in a + 1..s.len() {
            if essentially_coincides(s, a, b) {
                return (false, Some((a, b)));
            }
        }
    }
    (true, None)
}

/// `se = e` for a nonzero idempotent `e` forces `s` idempotent. The
/// witness is a pair `(s, e)` where it does not.
pub fn is_e_star_unitary(s: &InverseSemigroup) -> (bool, Option<(ElementId, ElementId)>) {
    let nonzero_idem = s.idempotents().without(s.zero());
    for a in s.elements().filter(|&a| !s.is_idempotent(a)) {
        if let Some(e) = nonzero_idem.iter().find(|&e| s.mul(a, e) == e) {
            return (false, Some((a, e)));
        }
    }
    (true, None)
}

/// Truth of the faithfulness conditions for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairConditions {
    pub s: ElementId,
    pub t: ElementId,
    /// `lambda_s = lambda_t`
    pub cond_ii: bool,
    /// `st*t = ts*s` and `s*s t*t` dense in `s*s` and in `t*t`
    pub cond_iii: bool,
    /// `tt*s = ss*t` and `ss* tt*` dense in `ss*` and in `tt*`
    pub cond_iv: bool,
    pub equivalent: bool,
    pub continuous: bool,
}

impl PairConditions {
    /// `(ii) <=> (iii) <=> (iv)` holds for this pair.
    pub fn all_agree(&self) -> bool {
        self.cond_ii == self.cond_iii && self.cond_iii == self.cond_iv
    }

    /// Condition (i), equality under every tight representation, is not
    /// enumerable. On continuous semigroups it equals (ii); elsewhere this
    /// returns `None`.
    pub fn cond_i(&self) -> Option<bool> {
        self.continuous.then_some(self.cond_ii)
    }
}

fn dense_in(idem: &IdempotentLattice, y: ElementId, x: ElementId) -> bool {
    let (Some(iy), Some(ix)) = (idem.index_of(y), idem.index_of(x)) else {
        return false;
    };
    idem.lattice.is_dense(iy, ix).unwrap_or(false)
}

/// Evaluate (ii), (iii), (iv) and essential coincidence for `(s, t)`.
pub fn pair_conditions(
    rep: &RegularRepresentation<'_>,
    continuous: bool,
    a: ElementId,
    b: ElementId,
) -> PairConditions {
    let s = rep.space().source();
    let idem = rep.idempotents();
    let (sa, sb) = (s.source(a), s.source(b));
    let (ra, rb) = (s.range(a), s.range(b));

    let cond_ii = rep.lambda(a) == rep.lambda(b);
    let meet_sources = s.mul(sa, sb);
    let cond_iii =
        s.mul(a, sb) == s.mul(b, sa) && dense_in(idem, meet_sources, sa) && dense_in(idem, meet_sources, sb);
    let meet_ranges = s.mul(ra, rb);
    let cond_iv =
        s.mul(rb, a) == s.mul(ra, b) && dense_in(idem, meet_ranges, ra) && dense_in(idem, meet_ranges, rb);

    PairConditions {
        s: a,
        t: b,
        cond_ii,
        cond_iii,
        cond_iv,
        equivalent: essentially_coincides(s, a, b),
        continuous,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    /// Pairs `s < t` with `lambda_s = lambda_t`, by index.
    pub pairs: Vec<PairConditions>,
    pub continuous: bool,
    pub continuity_witness: Option<(ElementId, ElementId)>,
    /// Kernel pairs with `s*s = t*t` that fail to coincide essentially.
    /// Always empty unless something is broken.
    pub unrelated: Vec<(ElementId, ElementId)>,
}

pub fn kernel_pairs(rep: &RegularRepresentation<'_>) -> KernelReport {
    let s = rep.space().source();
    let (continuous, continuity_witness) = is_continuous(s);
    let mut pairs = Vec::new();
    let mut unrelated = Vec::new();
    for a in s.elements() {
        for b in a + 1..s.len() {
            if rep.lambda(a) != rep.lambda(b) {
                continue;
            }
            let c = pair_conditions(rep, continuous, a, b);
            if s.source(a) == s.source(b) && !c.equivalent {
                unrelated.push((a, b));
            }
            pairs.push(c);
        }
    }
    KernelReport {
        pairs,
        continuous,
        continuity_witness,
        unrelated,
    }
}

/// Conditions for every ordered pair, row-major.
pub fn all_pair_conditions(rep: &RegularRepresentation<'_>) -> Vec<PairConditions> {
    let s = rep.space().source();
    let (continuous, _) = is_continuous(s);
    s.elements()
        .flat_map(|a| s.elements().map(move |b| (a, b)))
        .map(|(a, b)| pair_conditions(rep, continuous, a, b))
        .collect()
}

/// Like [`pair_conditions`] but builds the regular representation itself.
pub fn theorem_conditions(s: &InverseSemigroup, a: ElementId, b: ElementId) -> Result<PairConditions, RegularError> {
    let rep = RegularRepresentation::new(s)?;
    let (continuous, _) = is_continuous(s);
    Ok(pair_conditions(&rep, continuous, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::Semilattice;

    fn szendrei() -> InverseSemigroup {
        InverseSemigroup::validate(
            vec![vec![0, 0, 0, 0], vec![0, 1, 1, 1], vec![0, 1, 2, 3], vec![0, 1, 3, 2]],
            0,
        )
        .unwrap()
    }

    fn z2_with_zero() -> InverseSemigroup {
        InverseSemigroup::validate(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]], 0).unwrap()
    }

    #[test]
    fn szendrei_is_neither_continuous_nor_e_star_unitary() {
        let s = szendrei();
        assert!(essentially_coincides(&s, 3, 2));
        assert!(essentially_coincides(&s, 3, 3));
        assert_eq!(is_continuous(&s), (false, Some((2, 3))));
        assert_eq!(is_e_star_unitary(&s), (false, Some((3, 1))));
    }

    #[test]
    fn groups_and_semilattices_are_e_star_unitary() {
        assert_eq!(is_e_star_unitary(&z2_with_zero()), (true, None));
        assert_eq!(is_e_star_unitary(&Semilattice::powerset(2).as_inverse_semigroup()), (true, None));
        assert_eq!(is_continuous(&z2_with_zero()), (true, None));
    }

    #[test]
    fn boolean_algebras_are_continuous_with_empty_kernel() {
        let b = Semilattice::powerset(3).as_inverse_semigroup();
        assert_eq!(is_continuous(&b), (true, None));
        let rep = RegularRepresentation::new(&b).unwrap();
        assert!(kernel_pairs(&rep).pairs.is_empty());
    }

    #[test]
    fn szendrei_kernel_contains_s_and_one() {
        let s = szendrei();
        let rep = RegularRepresentation::new(&s).unwrap();
        let report = kernel_pairs(&rep);
        assert!(!report.continuous);
        let pair = report.pairs.iter().find(|c| (c.s, c.t) == (2, 3)).unwrap();
        assert!(pair.cond_ii && pair.equivalent);
        assert_eq!(pair.cond_i(), None);
        assert!(report.unrelated.is_empty());
    }

    #[test]
    fn conditions_hold_trivially_on_the_diagonal() {
        let b = Semilattice::powerset(2).as_inverse_semigroup();
        for s in b.elements() {
            let c = theorem_conditions(&b, s, s).unwrap();
            assert!(c.cond_ii && c.cond_iii && c.cond_iv && c.all_agree());
            assert_eq!(c.cond_i(), Some(true));
        }
    }
}
