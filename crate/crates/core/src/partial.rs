//! Partial bijections of a finite set, the elements of `I(X)`.

use std::fmt;

use crate::bits::{ElemSet, MAX_ELEMENTS};

/// An injective partial map of `{0, .., n-1}` into itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    map: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialBijectionError {
    OutOfRange { point: usize, image: usize },
    NotInjective { first: usize, second: usize, image: usize },
    TooLarge(usize),
    GroundMismatch { left: usize, right: usize },
}

impl PartialBijection {
    pub fn new(map: Vec<Option<usize>>) -> Result<Self, PartialBijectionError> {
        let n = map.len();
        if n > MAX_ELEMENTS {
            return Err(PartialBijectionError::TooLarge(n));
        }
        let mut seen: Vec<Option<usize>> = vec![None; n];
        for (point, image) in map.iter().enumerate() {
            let Some(image) = *image else { continue };
            if image >= n {
                return Err(PartialBijectionError::OutOfRange { point, image });
            }
            if let Some(first) = seen[image] {
                return Err(PartialBijectionError::NotInjective { first, second: point, image });
            }
            seen[image] = Some(point);
        }
        Ok(PartialBijection { map })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PartialBijectionError> {
        let mut map = vec![None; n];
        for &(x, y) in pairs {
            if x >= n {
                return Err(PartialBijectionError::OutOfRange { point: x, image: y });
            }
            map[x] = Some(y);
        }
        Self::new(map)
    }

    pub fn empty(n: usize) -> Self {
        PartialBijection { map: vec![None; n] }
    }

    pub fn identity_on(n: usize, domain: &ElemSet) -> Self {
        PartialBijection {
            map: (0..n).map(|x| domain.contains(x).then_some(x)).collect(),
        }
    }

    /// Size of the ground set.
    pub fn ground(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn domain(&self) -> ElemSet {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, y)| y.is_some())
            .map(|(x, _)| x)
            .collect()
    }

    pub fn range(&self) -> ElemSet {
        self.map.iter().flatten().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.iter().enumerate().all(|(x, y)| y.is_none_or(|y| y == x))
    }

    /// `self` after `first`: defined on `first^{-1}(dom self)`.
    pub fn after(&self, first: &Self) -> Result<Self, PartialBijectionError> {
        if self.ground() != first.ground() {
            return Err(PartialBijectionError::GroundMismatch {
                left: self.ground(),
                right: first.ground(),
            });
        }
        Ok(PartialBijection {
            map: first.map.iter().map(|y| y.and_then(|y| self.map[y])).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![None; self.ground()];
        for (x, y) in self.map.iter().enumerate() {
            if let Some(y) = *y {
                map[y] = Some(x);
            }
        }
        PartialBijection { map }
    }

    /// The graph as sorted pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .collect()
    }

    /// Ordering key: domain first, then the graph.
    pub fn canonical_key(&self) -> (ElemSet, Vec<Option<usize>>) {
        (self.domain(), self.map.clone())
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (x, y)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_pbij(n: usize) -> impl Strategy<Value = PartialBijection> {
        (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n)).prop_map(
            move |(perm, keep)| {
                PartialBijection::new((0..n).map(|x| keep[x].then_some(perm[x])).collect()).unwrap()
            },
        )
    }

    #[test]
    fn composition_domain_convention() {
        // f: 0->1, 2->0 ; g: 1->2
        let f = PartialBijection::from_pairs(3, &[(0, 1), (2, 0)]).unwrap();
        let g = PartialBijection::from_pairs(3, &[(1, 2)]).unwrap();
        let gf = g.after(&f).unwrap();
        assert_eq!(gf.pairs(), vec![(0, 2)]);
        assert_eq!(f.inverse().pairs(), vec![(0, 2), (1, 0)]);
    }

    #[test]
    fn rejects_non_injective_maps() {
        assert_eq!(
            PartialBijection::new(vec![Some(1), Some(1)]),
            Err(PartialBijectionError::NotInjective { first: 0, second: 1, image: 1 })
        );
        assert!(PartialBijection::new(vec![Some(3)]).is_err());
    }

    proptest! {
        #[test]
        fn inverse_semigroup_laws(f in arb_pbij(5), g in arb_pbij(5), h in arb_pbij(5)) {
            // (h g) f = h (g f)
            prop_assert_eq!(h.after(&g).unwrap().after(&f).unwrap(), h.after(&g.after(&f).unwrap()).unwrap());
            // f f^{-1} f = f
            prop_assert_eq!(f.after(&f.inverse()).unwrap().after(&f).unwrap(), f.clone());
            // (g f)^{-1} = f^{-1} g^{-1}
            prop_assert_eq!(g.after(&f).unwrap().inverse(), f.inverse().after(&g.inverse()).unwrap());
            // f^{-1} f is the identity on dom f
            prop_assert_eq!(f.inverse().after(&f).unwrap(), PartialBijection::identity_on(5, &f.domain()));
            // domain of the composite
            let expected: ElemSet = f.domain().iter().filter(|&x| g.domain().contains(f.apply(x).unwrap())).collect();
            prop_assert_eq!(g.after(&f).unwrap().domain(), expected);
        }
    }
}
