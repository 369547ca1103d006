//! Filters, ultrafilters and characters on finite posets with 0.
//!
//! On a finite poset every filter has a least element (a finite
//! downward-directed set is bounded below inside itself), so the filters
//! are exactly the up-sets of nonzero elements. Enumeration uses that;
//! the tests compare it against a scan of all subsets.

use std::fmt;

use crate::bits::ElemSet;
use crate::semigroup::{ElementId, InverseSemigroup};
use crate::semilattice::{LatticeError, LatticeRepresentation, Semilattice, TightnessOptions};

/// A finite partially ordered set with least element.
pub trait FinitePoset {
    fn poset_len(&self) -> usize;
    fn bottom(&self) -> ElementId;
    fn le(&self, a: ElementId, b: ElementId) -> bool;
    /// `{ y : x <= y }`
    fn up_set(&self, x: ElementId) -> ElemSet;
}

impl FinitePoset for Semilattice {
    fn poset_len(&self) -> usize {
        self.len()
    }

    fn bottom(&self) -> ElementId {
        self.zero()
    }

    fn le(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b)
    }

    fn up_set(&self, x: ElementId) -> ElemSet {
        self.above(x)
    }
}

impl FinitePoset for InverseSemigroup {
    fn poset_len(&self) -> usize {
        self.len()
    }

    fn bottom(&self) -> ElementId {
        self.zero()
    }

    fn le(&self, a: ElementId, b: ElementId) -> bool {
        self.natural_leq(a, b)
    }

    fn up_set(&self, x: ElementId) -> ElemSet {
        InverseSemigroup::up_set(self, x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    members: ElemSet,
}

impl Filter {
    /// Wrap a set already known to be a filter.
    pub fn new_unchecked(members: ElemSet) -> Self {
        Filter { members }
    }

    pub fn checked<P: FinitePoset + ?Sized>(poset: &P, members: ElemSet) -> Result<Self, FilterViolation> {
        is_filter(poset, &members)?;
        Ok(Filter { members })
    }

    pub fn principal<P: FinitePoset + ?Sized>(poset: &P, x: ElementId) -> Self {
        Filter {
            members: poset.up_set(x),
        }
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The least member.
    pub fn minimum<P: FinitePoset + ?Sized>(&self, poset: &P) -> Option<ElementId> {
        self.members
            .iter()
            .find(|&m| self.members.iter().all(|x| poset.le(m, x)))
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.members.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterViolation {
    Empty,
    ContainsZero,
    OutOfRange(ElementId),
    /// `member` is in the set, `above >= member` is not.
    NotUpwardClosed { member: ElementId, above: ElementId },
    /// No member lies below both.
    NotDirected { x: ElementId, y: ElementId },
}

pub fn is_filter<P: FinitePoset + ?Sized>(poset: &P, members: &ElemSet) -> Result<(), FilterViolation> {
    if members.is_empty() {
        return Err(FilterViolation::Empty);
    }
    if let Some(x) = members.difference(&ElemSet::full(poset.poset_len())).first() {
        return Err(FilterViolation::OutOfRange(x));
    }
    if members.contains(poset.bottom()) {
        return Err(FilterViolation::ContainsZero);
    }
    for x in members.iter() {
        if let Some(above) = poset.up_set(x).difference(members).first() {
            return Err(FilterViolation::NotUpwardClosed { member: x, above });
        }
    }
    for x in members.iter() {
        for y in members.iter().filter(|&y| y > x) {
            if !members.iter().any(|z| poset.le(z, x) && poset.le(z, y)) {
                return Err(FilterViolation::NotDirected { x, y });
            }
        }
    }
    Ok(())
}

/// All filters, in increasing member-set order.
pub fn filters<P: FinitePoset + ?Sized>(poset: &P) -> Vec<Filter> {
    let mut out: Vec<Filter> = (0..poset.poset_len())
        .filter(|&x| x != poset.bottom())
        .map(|x| Filter::principal(poset, x))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Filters not properly contained in any other filter.
pub fn ultrafilters<P: FinitePoset + ?Sized>(poset: &P) -> Vec<Filter> {
    let all = filters(poset);
    all.iter()
        .filter(|f| {
            !all.iter()
                .any(|g| g != *f && f.members.is_subset(&g.members))
        })
        .copied()
        .collect()
}

/// Saturation test on a semilattice: a filter is an ultrafilter iff it
/// contains every element meeting all of its members.
pub fn is_ultrafilter_by_criterion(e: &Semilattice, filter: &Filter) -> bool {
    e.nonzero()
        .iter()
        .filter(|&y| filter.members.iter().all(|x| e.intersects(x, y)))
        .all(|y| filter.contains(y))
}

/// Ultrafilters of a semilattice selected by the saturation test.
pub fn ultrafilters_by_criterion(e: &Semilattice) -> Vec<Filter> {
    filters(e)
        .into_iter()
        .filter(|f| is_ultrafilter_by_criterion(e, f))
        .collect()
}

/// A nonzero meet-preserving map into `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterViolation {
    WrongLength { expected: usize, got: usize },
    ZeroNotPreserved,
    IdenticallyZero,
    MeetNotPreserved { x: ElementId, y: ElementId },
}

impl Character {
    pub fn new(e: &Semilattice, values: Vec<bool>) -> Result<Self, CharacterViolation> {
        if values.len() != e.len() {
            return Err(CharacterViolation::WrongLength { expected: e.len(), got: values.len() });
        }
        if values[e.zero()] {
            return Err(CharacterViolation::ZeroNotPreserved);
        }
        if !values.iter().any(|&v| v) {
            return Err(CharacterViolation::IdenticallyZero);
        }
        for x in 0..e.len() {
            for y in x + 1..e.len() {
                if values[e.meet(x, y)] != (values[x] && values[y]) {
                    return Err(CharacterViolation::MeetNotPreserved { x, y });
                }
            }
        }
        Ok(Character { values })
    }

    /// `phi_xi(x) = 1` iff `x` is in the filter.
    pub fn of_filter(e: &Semilattice, filter: &Filter) -> Result<Self, CharacterViolation> {
        Self::new(e, (0..e.len()).map(|x| filter.contains(x)).collect())
    }

    pub fn value(&self, x: ElementId) -> bool {
        self.values[x]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// `xi_phi = { x : phi(x) = 1 }`
    pub fn support(&self) -> ElemSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(x, _)| x)
            .collect()
    }

    /// The character as a representation in the two-element Boolean algebra.
    pub fn as_representation<'a>(&self, e: &'a Semilattice) -> LatticeRepresentation<'a> {
        let map = self
            .values
            .iter()
            .map(|&v| if v { ElemSet::singleton(0) } else { ElemSet::empty() })
            .collect();
        LatticeRepresentation::new(e, 1, map).expect("characters preserve 0 and meets")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BijectionFailure {
    NotACharacter(Filter, CharacterViolation),
    NotAFilter(Character, FilterViolation),
    RoundTrip(Filter),
    CountMismatch { filters: usize, characters: usize },
}

/// Characters found directly: `phi_m(x) = [m <= x]` for each nonzero `m`.
pub fn characters(e: &Semilattice) -> Vec<Character> {
    let mut out: Vec<Character> = e
        .nonzero()
        .iter()
        .map(|m| Character {
            values: (0..e.len()).map(|x| e.leq(m, x)).collect(),
        })
        .collect();
    out.sort_by_key(Character::support);
    out
}

/// Pair every filter with its character, checking both directions of the
/// correspondence.
pub fn character_filter_bijection(e: &Semilattice) -> Result<Vec<(Filter, Character)>, BijectionFailure> {
    let fs = filters(e);
    let cs = characters(e);
    if fs.len() != cs.len() {
        return Err(BijectionFailure::CountMismatch { filters: fs.len(), characters: cs.len() });
    }
    for c in &cs {
        Character::new(e, c.values.clone())
            .map_err(|v| BijectionFailure::NotACharacter(Filter::new_unchecked(c.support()), v))?;
        let f = Filter::checked(e, c.support()).map_err(|v| BijectionFailure::NotAFilter(c.clone(), v))?;
        if Character::of_filter(e, &f).as_ref() != Ok(c) {
            return Err(BijectionFailure::RoundTrip(f));
        }
    }
    fs.into_iter()
        .map(|f| {
            let c = Character::of_filter(e, &f).map_err(|v| BijectionFailure::NotACharacter(f, v))?;
            if c.support() != f.members() {
                return Err(BijectionFailure::RoundTrip(f));
            }
            Ok((f, c))
        })
        .collect()
}

/// Characters that are tight as representations in `{0, 1}`.
pub fn tight_characters(e: &Semilattice, options: TightnessOptions) -> Result<Vec<Character>, LatticeError> {
    let mut out = Vec::new();
    for c in characters(e) {
        if c.as_representation(e).is_tight(options)?.is_tight() {
            out.push(c);
        }
    }
    Ok(out)
}

/// Characters of ultrafilters, found by maximality.
pub fn ultrafilter_characters(e: &Semilattice) -> Vec<Character> {
    let mut out: Vec<Character> = ultrafilters(e)
        .iter()
        .map(|f| Character::of_filter(e, f).expect("filters give characters"))
        .collect();
    out.sort_by_key(Character::support);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::InverseSemigroup;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().collect()
    }

    fn szendrei() -> InverseSemigroup {
        InverseSemigroup::validate(
            vec![vec![0, 0, 0, 0], vec![0, 1, 1, 1], vec![0, 1, 2, 3], vec![0, 1, 3, 2]],
            0,
        )
        .unwrap()
    }

    /// Zero plus two incomparable atoms and nothing else.
    fn antichain2() -> Semilattice {
        Semilattice::from_order(3, |a, b| a == b || a == 0).unwrap()
    }

    fn brute_filters<P: FinitePoset>(p: &P) -> Vec<Filter> {
        let n = p.poset_len();
        let mut out: Vec<Filter> = (1u32..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<ElemSet>())
            .filter(|s| is_filter(p, s).is_ok())
            .map(Filter::new_unchecked)
            .collect();
        out.sort();
        out
    }

    #[test]
    fn filter_axioms() {
        let c = Semilattice::chain(3);
        for x in 1..3 {
            assert!(is_filter(&c, &c.above(x)).is_ok());
        }
        let s = szendrei();
        assert_eq!(is_filter(&s, &set(&[2, 3])), Err(FilterViolation::NotDirected { x: 2, y: 3 }));
        assert_eq!(is_filter(&s, &ElemSet::empty()), Err(FilterViolation::Empty));
        assert_eq!(is_filter(&s, &set(&[0, 1, 2, 3])), Err(FilterViolation::ContainsZero));
        assert_eq!(
            is_filter(&s, &set(&[1, 2])),
            Err(FilterViolation::NotUpwardClosed { member: 1, above: 3 })
        );
    }

    #[test]
    fn principal_filters_are_all_filters() {
        let posets = [
            Semilattice::chain(4),
            Semilattice::powerset(3),
            antichain2(),
            Semilattice::from_order(5, |a, b| a == b || a == 0 || (a == 1 && b >= 2)).unwrap(),
        ];
        for p in &posets {
            assert_eq!(filters(p), brute_filters(p));
        }
        let s = szendrei();
        assert_eq!(filters(&s), brute_filters(&s));
    }

    #[test]
    fn ultrafilter_examples() {
        let c = Semilattice::chain(3);
        assert_eq!(ultrafilters(&c), vec![Filter::new_unchecked(set(&[1, 2]))]);
        let b = Semilattice::powerset(2);
        assert_eq!(
            ultrafilters(&b),
            vec![Filter::new_unchecked(set(&[1, 3])), Filter::new_unchecked(set(&[2, 3]))]
        );
        assert_eq!(ultrafilters(&szendrei()), vec![Filter::new_unchecked(set(&[1, 2, 3]))]);
    }

    #[test]
    fn criterion_examples() {
        let c = Semilattice::chain(3);
        assert!(is_ultrafilter_by_criterion(&c, &Filter::new_unchecked(set(&[1, 2]))));
        assert!(!is_ultrafilter_by_criterion(&c, &Filter::new_unchecked(set(&[2]))));
        let two = Semilattice::chain(2);
        assert!(is_ultrafilter_by_criterion(&two, &Filter::new_unchecked(set(&[1]))));
        for e in [c, two, Semilattice::powerset(3), antichain2()] {
            assert_eq!(ultrafilters_by_criterion(&e), ultrafilters(&e));
        }
    }

    #[test]
    fn bijection_examples() {
        let c = Semilattice::chain(3);
        let pairs = character_filter_bijection(&c).unwrap();
        let (_, phi) = pairs.iter().find(|(f, _)| f.members() == set(&[2])).unwrap();
        assert_eq!(phi.values(), &[false, false, true]);
        assert_eq!(character_filter_bijection(&Semilattice::powerset(2)).unwrap().len(), 3);
    }

    #[test]
    fn character_validation() {
        let c = Semilattice::chain(3);
        assert_eq!(Character::new(&c, vec![false; 3]), Err(CharacterViolation::IdenticallyZero));
        assert_eq!(Character::new(&c, vec![true; 3]), Err(CharacterViolation::ZeroNotPreserved));
        assert_eq!(
            Character::new(&c, vec![false, true, false]),
            Err(CharacterViolation::MeetNotPreserved { x: 1, y: 2 })
        );
    }

    #[test]
    fn tight_character_examples() {
        let opts = TightnessOptions::exhaustive();
        let c = Semilattice::chain(3);
        let tight = tight_characters(&c, opts).unwrap();
        assert_eq!(tight.len(), 1);
        assert_eq!(tight[0].support(), set(&[1, 2]));

        let b = Semilattice::powerset(2);
        let tight: Vec<_> = tight_characters(&b, opts).unwrap().iter().map(Character::support).collect();
        assert_eq!(tight, vec![set(&[1, 3]), set(&[2, 3])]);
        let top_only = Character::of_filter(&b, &Filter::new_unchecked(set(&[3]))).unwrap();
        let w = top_only.as_representation(&b).is_tight(opts).unwrap();
        assert!(!w.is_tight());

        let a = antichain2();
        let tight: Vec<_> = tight_characters(&a, opts).unwrap().iter().map(Character::support).collect();
        assert_eq!(tight, vec![set(&[1]), set(&[2])]);
    }
}
