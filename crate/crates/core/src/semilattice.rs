//! Finite meet-semilattices with 0 and their representations in finite
//! Boolean algebras.
//!
//! A finite Boolean algebra is always the powerset of its atoms, so a
//! representation stores each image as an [`ElemSet`] of target atoms.
//! Joins, meets and complements in the target are then set operations.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::bits::{ElemSet, MAX_ELEMENTS};
use crate::semigroup::{CayleyTable, ElementId, InverseSemigroup};

/// Exhaustive tightness search is refused above this many elements.
/// Results are guaranteed complete up to 14 elements; 15 and 16 are
/// accepted because the Y-search prunes well on Boolean algebras.
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty semilattice")]
    Empty,
    #[error("semilattice has {n} elements, capacity is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {x}^{y} = {value} out of range 0..{n}")]
    EntryOutOfRange { x: usize, y: usize, value: usize, n: usize },
    #[error("meet is not commutative at ({0},{1})")]
    NotCommutative(ElementId, ElementId),
    #[error("meet is not associative at ({0},{1},{2})")]
    NotAssociative(ElementId, ElementId, ElementId),
    #[error("meet is not idempotent at {0}")]
    NotIdempotent(ElementId),
    #[error("{zero} is not below {witness}")]
    ZeroNotMinimum { zero: ElementId, witness: ElementId },
    #[error("relation is not a partial order at ({0},{1})")]
    NotPartialOrder(ElementId, ElementId),
    #[error("{0} and {1} have no greatest lower bound")]
    NoMeet(ElementId, ElementId),
    #[error("cover element {0} is not in the covered set")]
    SubsetViolation(ElementId),
    #[error("{y} is not below {x}")]
    OrderViolation { y: ElementId, x: ElementId },
    #[error("map has {got} entries, expected {expected}")]
    MapLength { expected: usize, got: usize },
    #[error("image of 0 is nonzero")]
    ZeroNotPreserved,
    #[error("image of {x}^{y} differs from the meet of the images")]
    MeetNotPreserved { x: ElementId, y: ElementId },
    #[error("target has {atoms} atoms, capacity is {max}")]
    TargetTooLarge { atoms: usize, max: usize },
    #[error("image uses atom {atom}, target has {atoms}")]
    ImageOutOfRange { atom: usize, atoms: usize },
    #[error("simplified tightness test needs a finite set whose images join to 1; none exists")]
    HypothesisUnverified,
    #[error("exhaustive tightness search limited to {limit} elements, got {n}")]
    SizeCap { n: usize, limit: usize },
}

/// A finite meet-semilattice with least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    n: usize,
    meet: Vec<ElementId>,
    zero: ElementId,
    below: Vec<ElemSet>,
    above: Vec<ElemSet>,
    /// `disjoint[x] = { z : z ^ x = 0 }`
    disjoint: Vec<ElemSet>,
}

impl Semilattice {
    pub fn from_meet_table(rows: Vec<Vec<ElementId>>, zero: ElementId) -> Result<Self, LatticeError> {
        let n = rows.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge { n, max: MAX_ELEMENTS });
        }
        let mut meet = Vec::with_capacity(n * n);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(LatticeError::NotSquare { row: x, len: row.len(), n });
            }
            for (y, value) in row.into_iter().enumerate() {
                if value >= n {
                    return Err(LatticeError::EntryOutOfRange { x, y, value, n });
                }
                meet.push(value);
            }
        }
        let m = |x: usize, y: usize| meet[x * n + y];
        for x in 0..n {
            if m(x, x) != x {
                return Err(LatticeError::NotIdempotent(x));
            }
            for y in 0..n {
                if m(x, y) != m(y, x) {
                    return Err(LatticeError::NotCommutative(x, y));
                }
                for z in 0..n {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(LatticeError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        if zero >= n {
            return Err(LatticeError::EntryOutOfRange { x: zero, y: zero, value: zero, n });
        }
        if let Some(w) = (0..n).find(|&x| m(zero, x) != zero) {
            return Err(LatticeError::ZeroNotMinimum { zero, witness: w });
        }
        Ok(Self::assemble(n, meet, zero))
    }

    /// Build from an order relation; meets are computed as greatest lower bounds.
    pub fn from_order(n: usize, leq: impl Fn(ElementId, ElementId) -> bool) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge { n, max: MAX_ELEMENTS });
        }
        for x in 0..n {
            if !leq(x, x) {
                return Err(LatticeError::NotPartialOrder(x, x));
            }
            for y in 0..n {
                if x != y && leq(x, y) && leq(y, x) {
                    return Err(LatticeError::NotPartialOrder(x, y));
                }
                for z in 0..n {
                    if leq(x, y) && leq(y, z) && !leq(x, z) {
                        return Err(LatticeError::NotPartialOrder(x, z));
                    }
                }
            }
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| leq(z, x)))
            .ok_or_else(|| LatticeError::ZeroNotMinimum {
                zero: 0,
                witness: (0..n).find(|&x| !leq(0, x)).unwrap_or(0),
            })?;
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<_> = (0..n).filter(|&z| leq(z, x) && leq(z, y)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&z| leq(z, g)))
                    .ok_or(LatticeError::NoMeet(x, y))?;
                meet[x * n + y] = glb;
            }
        }
        Ok(Self::assemble(n, meet, zero))
    }

    fn assemble(n: usize, meet: Vec<ElementId>, zero: ElementId) -> Self {
        let mut below = vec![ElemSet::empty(); n];
        let mut above = vec![ElemSet::empty(); n];
        let mut disjoint = vec![ElemSet::empty(); n];
        for x in 0..n {
            for y in 0..n {
                let xy = meet[x * n + y];
                if xy == x {
                    below[y].insert(x);
                    above[x].insert(y);
                }
                if xy == zero {
                    disjoint[x].insert(y);
                }
            }
        }
        Semilattice {
            n,
            meet,
            zero,
            below,
            above,
            disjoint,
        }
    }

    /// The powerset of `k` points; element `m` is the subset with bitmask `m`.
    pub fn powerset(k: u32) -> Self {
        let n = 1usize << k;
        Self::assemble(n, (0..n * n).map(|i| (i / n) & (i % n)).collect(), 0)
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n > 0 && n <= MAX_ELEMENTS);
        Self::assemble(n, (0..n * n).map(|i| (i / n).min(i % n)).collect(), 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        self.zero
    }

    #[inline]
    pub fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.meet[x * self.n + y]
    }

    /// Meet of a finite set; `None` for the empty set (no top assumed).
    pub fn meet_all(&self, xs: &[ElementId]) -> Option<ElementId> {
        xs.iter().copied().reduce(|a, b| self.meet(a, b))
    }

    #[inline]
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.below[y].contains(x)
    }

    /// `[0, x]`
    pub fn below(&self, x: ElementId) -> ElemSet {
        self.below[x]
    }

    pub fn above(&self, x: ElementId) -> ElemSet {
        self.above[x]
    }

    /// Elements whose meet with `x` is 0.
    pub fn disjoint_from(&self, x: ElementId) -> ElemSet {
        self.disjoint[x]
    }

    #[inline]
    pub fn intersects(&self, x: ElementId, y: ElementId) -> bool {
        self.meet(x, y) != self.zero
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn nonzero(&self) -> ElemSet {
        self.all().without(self.zero)
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<ElementId> {
        self.nonzero()
            .iter()
            .filter(|&x| self.below[x].len() == 2)
            .collect()
    }

    pub fn top(&self) -> Option<ElementId> {
        (0..self.n).find(|&x| self.below[x].len() == self.n)
    }

    pub fn meet_table(&self) -> Vec<Vec<ElementId>> {
        self.meet.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    /// The semilattice as an inverse semigroup under meet.
    pub fn as_inverse_semigroup(&self) -> InverseSemigroup {
        let table = CayleyTable::from_fn(self.n, |x, y| self.meet(x, y)).expect("meet table is in range");
        InverseSemigroup::from_table(table, self.zero).expect("a semilattice is an inverse semigroup")
    }

    /// `E^{X,Y}`: elements below all of `xs` and disjoint from all of `ys`.
    pub fn constrained_set(&self, xs: &[ElementId], ys: &[ElementId]) -> ElemSet {
        let mut out = self.all();
        for &x in xs {
            out = out.intersection(&self.below[x]);
        }
        for &y in ys {
            out = out.intersection(&self.disjoint[y]);
        }
        out
    }

    /// Whether `cover` is a cover of `set`: every nonzero member of `set`
    /// meets some member of `cover` nontrivially.
    pub fn is_cover(&self, cover: &ElemSet, set: &ElemSet) -> Result<CoverCheck, LatticeError> {
        if let Some(z) = cover.difference(set).first() {
            return Err(LatticeError::SubsetViolation(z));
        }
        Ok(self.uncovered(cover, set).map_or(CoverCheck::Cover, CoverCheck::Uncovered))
    }

    fn uncovered(&self, cover: &ElemSet, set: &ElemSet) -> Option<ElementId> {
        set.without(self.zero)
            .iter()
            .find(|&x| cover.iter().all(|z| !self.intersects(z, x)))
    }

    /// Inclusion-minimal covers of `set` with at most `cap` members, in
    /// increasing [`ElemSet`] order.
    pub fn minimal_covers(&self, set: &ElemSet, cap: usize) -> MinimalCovers {
        let set = set.intersection(&self.all());
        let targets = set.without(self.zero);
        // candidates[x] = members of `set` meeting x
        let candidates: Vec<(ElementId, ElemSet)> = targets
            .iter()
            .map(|x| (x, targets.intersection(&self.all().difference(&self.disjoint[x]))))
            .collect();
        let mut search = CoverSearch {
            lattice: self,
            candidates: &candidates,
            targets,
            cap,
            found: Vec::new(),
            cap_exceeded: false,
        };
        search.extend(ElemSet::empty(), ElemSet::empty());
        let mut covers = search.found;
        covers.sort();
        MinimalCovers {
            covers,
            cap_exceeded: search.cap_exceeded,
        }
    }

    /// `y` is dense in `x`: no nonzero `z <= x` is disjoint from `y`.
    pub fn is_dense(&self, y: ElementId, x: ElementId) -> Result<bool, LatticeError> {
        Ok(self.density_witness(y, x)?.is_none())
    }

    /// A nonzero `z <= x` disjoint from `y`, if any.
    pub fn density_witness(&self, y: ElementId, x: ElementId) -> Result<Option<ElementId>, LatticeError> {
        if !self.leq(y, x) {
            return Err(LatticeError::OrderViolation { y, x });
        }
        Ok(self.constrained_set(&[x], &[y]).without(self.zero).first())
    }

    /// Boolean algebra structure, when the order is that of a powerset.
    pub fn boolean_structure(&self) -> Option<BooleanAlgebra> {
        let atoms = self.atoms();
        let k = atoms.len();
        if k >= usize::BITS as usize || self.n != 1 << k {
            return None;
        }
        let masks: Vec<usize> = (0..self.n)
            .map(|x| {
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| self.leq(a, x))
                    .fold(0, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let mut by_mask = vec![usize::MAX; self.n];
        for (x, &m) in masks.iter().enumerate() {
            if by_mask[m] != usize::MAX {
                return None;
            }
            by_mask[m] = x;
        }
        for x in 0..self.n {
            for y in 0..self.n {
                if self.leq(x, y) != (masks[x] & !masks[y] == 0) {
                    return None;
                }
            }
        }
        Some(BooleanAlgebra {
            carrier: self.clone(),
            atoms,
            masks,
            by_mask,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverCheck {
    Cover,
    /// A nonzero member of the set meeting no member of the candidate.
    Uncovered(ElementId),
}

impl CoverCheck {
    pub fn is_cover(&self) -> bool {
        matches!(self, CoverCheck::Cover)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalCovers {
    pub covers: Vec<ElemSet>,
    /// Some branch was cut at the size cap, so larger minimal covers may exist.
    pub cap_exceeded: bool,
}

struct CoverSearch<'a> {
    lattice: &'a Semilattice,
    candidates: &'a [(ElementId, ElemSet)],
    targets: ElemSet,
    cap: usize,
    found: Vec<ElemSet>,
    cap_exceeded: bool,
}

impl CoverSearch<'_> {
    // Branch on the candidates for the first uncovered target. Each
    // candidate tried is excluded from later siblings, so every set is
    // produced at most once.
    fn extend(&mut self, chosen: ElemSet, mut excluded: ElemSet) {
        let covered = self.covered_by(&chosen);
        let Some(&(_, options)) = self.candidates.iter().find(|(x, _)| !covered.contains(*x)) else {
            if self.is_minimal(&chosen) {
                self.found.push(chosen);
            }
            return;
        };
        if chosen.len() == self.cap {
            self.cap_exceeded = true;
            return;
        }
        for z in options.difference(&excluded).iter() {
            self.extend(chosen.with(z), excluded);
            excluded.insert(z);
        }
    }

    fn covered_by(&self, chosen: &ElemSet) -> ElemSet {
        self.candidates
            .iter()
            .filter(|(_, opts)| !opts.is_disjoint(chosen))
            .map(|&(x, _)| x)
            .collect()
    }

    fn is_minimal(&self, chosen: &ElemSet) -> bool {
        chosen.iter().all(|z| {
            let rest = chosen.without(z);
            self.lattice.uncovered(&rest, &self.targets).is_some()
        })
    }
}

/// A semilattice whose order is that of a finite Boolean algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanAlgebra {
    carrier: Semilattice,
    atoms: Vec<ElementId>,
    /// bit i of `masks[x]` is set iff `atoms[i] <= x`
    masks: Vec<usize>,
    by_mask: Vec<ElementId>,
}

impl BooleanAlgebra {
    pub fn carrier(&self) -> &Semilattice {
        &self.carrier
    }

    pub fn atoms(&self) -> &[ElementId] {
        &self.atoms
    }

    pub fn top(&self) -> ElementId {
        self.by_mask[self.by_mask.len() - 1]
    }

    pub fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        self.by_mask[self.masks[x] | self.masks[y]]
    }

    pub fn complement(&self, x: ElementId) -> ElementId {
        self.by_mask[!self.masks[x] & (self.by_mask.len() - 1)]
    }

    pub fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.carrier.meet(x, y)
    }

    /// Positions (in [`atoms`](Self::atoms)) of the atoms below `x`.
    pub fn atom_set(&self, x: ElementId) -> ElemSet {
        let m = self.masks[x];
        (0..self.atoms.len()).filter(|i| m >> i & 1 == 1).collect()
    }

    /// The element whose atoms are exactly `set`.
    pub fn from_atom_set(&self, set: &ElemSet) -> ElementId {
        self.by_mask[set.iter().fold(0, |m, i| m | 1 << i)]
    }

    pub fn join_table(&self) -> Vec<Vec<ElementId>> {
        let n = self.carrier.len();
        (0..n).map(|x| (0..n).map(|y| self.join(x, y)).collect()).collect()
    }

    pub fn complements(&self) -> Vec<ElementId> {
        (0..self.carrier.len()).map(|x| self.complement(x)).collect()
    }
}

/// A map from a semilattice to the powerset of `target_atoms` points
/// preserving 0 and meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeRepresentation<'a> {
    source: &'a Semilattice,
    target_atoms: usize,
    map: Vec<ElemSet>,
}

impl<'a> LatticeRepresentation<'a> {
    pub fn new(source: &'a Semilattice, target_atoms: usize, map: Vec<ElemSet>) -> Result<Self, LatticeError> {
        if target_atoms > MAX_ELEMENTS {
            return Err(LatticeError::TargetTooLarge { atoms: target_atoms, max: MAX_ELEMENTS });
        }
        if map.len() != source.len() {
            return Err(LatticeError::MapLength { expected: source.len(), got: map.len() });
        }
        let full = ElemSet::full(target_atoms);
        if let Some(atom) = map.iter().find_map(|img| img.difference(&full).first()) {
            return Err(LatticeError::ImageOutOfRange { atom, atoms: target_atoms });
        }
        if !map[source.zero()].is_empty() {
            return Err(LatticeError::ZeroNotPreserved);
        }
        for x in 0..source.len() {
            for y in x + 1..source.len() {
                if map[source.meet(x, y)] != map[x].intersection(&map[y]) {
                    return Err(LatticeError::MeetNotPreserved { x, y });
                }
            }
        }
        Ok(LatticeRepresentation {
            source,
            target_atoms,
            map,
        })
    }

    /// A representation into a table-given Boolean algebra.
    pub fn into_algebra(
        source: &'a Semilattice,
        target: &BooleanAlgebra,
        map: &[ElementId],
    ) -> Result<Self, LatticeError> {
        Self::new(source, target.atoms().len(), map.iter().map(|&b| target.atom_set(b)).collect())
    }

    /// The identity of a Boolean algebra, viewed as a representation.
    pub fn identity(algebra: &'a BooleanAlgebra) -> Self {
        let carrier = algebra.carrier();
        Self::into_algebra(carrier, algebra, &(0..carrier.len()).collect::<Vec<_>>())
            .expect("identity preserves meets")
    }

    pub fn source(&self) -> &'a Semilattice {
        self.source
    }

    pub fn target_atoms(&self) -> usize {
        self.target_atoms
    }

    pub fn target_top(&self) -> ElemSet {
        ElemSet::full(self.target_atoms)
    }

    #[inline]
    pub fn image(&self, x: ElementId) -> ElemSet {
        self.map[x]
    }

    pub fn images(&self) -> &[ElemSet] {
        &self.map
    }

    pub fn join_of(&self, zs: &ElemSet) -> ElemSet {
        zs.iter().fold(ElemSet::empty(), |acc, z| acc.union(&self.map[z]))
    }

    /// `meet_{x in X} s(x) ^ meet_{y in Y} not s(y)`
    pub fn bound(&self, xs: &[ElementId], ys: &[ElementId]) -> ElemSet {
        let top = self.target_top();
        let upper = xs.iter().fold(top, |acc, &x| acc.intersection(&self.map[x]));
        ys.iter().fold(upper, |acc, &y| acc.difference(&self.map[y]))
    }

    /// Evaluate the tightness inequality for one triple `(X, Y, Z)`.
    pub fn check_triple(&self, xs: &[ElementId], ys: &[ElementId], zs: &[ElementId]) -> Result<TripleCheck, LatticeError> {
        let set = self.source.constrained_set(xs, ys);
        let cover: ElemSet = zs.iter().collect();
        let check = self.source.is_cover(&cover, &set)?;
        let join = self.join_of(&cover);
        let bound = self.bound(xs, ys);
        Ok(TripleCheck {
            is_cover: check.is_cover(),
            join,
            bound,
            holds: bound.is_subset(&join),
        })
    }

    pub fn is_tight(&self, options: TightnessOptions) -> Result<TightVerdict, LatticeError> {
        match options.mode {
            TightMode::Exhaustive => self.tight_exhaustive(options.cover_cap),
            TightMode::Simplified => self.tight_simplified(options.cover_cap),
        }
    }

    /// Whether some finite set of elements has images joining to the top.
    pub fn images_join_to_top(&self) -> bool {
        self.join_of(&self.source.all()) == self.target_top()
    }

    fn tight_exhaustive(&self, cap: Option<usize>) -> Result<TightVerdict, LatticeError> {
        let e = self.source;
        if e.len() > EXHAUSTIVE_LIMIT {
            return Err(LatticeError::SizeCap { n: e.len(), limit: EXHAUSTIVE_LIMIT });
        }
        let nonzero = e.nonzero().to_vec();
        let mut covers = CoverCache::new(e, cap);

        // X = {} or a singleton: a finite X may be replaced by its meet.
        let x_choices = std::iter::once(None).chain((0..e.len()).map(Some));
        for x in x_choices {
            let (base, upper) = match x {
                None => (e.all(), self.target_top()),
                Some(x) => (e.below(x), self.map[x]),
            };
            if upper.is_empty() {
                continue;
            }
            // (E^{X,Y}, bound) -> first Y reaching it
            let mut keys: BTreeMap<(ElemSet, ElemSet), Vec<ElementId>> = BTreeMap::new();
            let mut ys = Vec::new();
            self.collect_y(&nonzero, 0, base, upper, &mut ys, &mut keys);
            for ((set, bound), ys) in keys {
                for cover in covers.get(&set).iter() {
                    let join = self.join_of(cover);
                    if !bound.is_subset(&join) {
                        return Ok(TightVerdict::NotTight(TightnessWitness {
                            x: x.into_iter().collect(),
                            y: ys,
                            z: cover.to_vec(),
                            join,
                            bound,
                        }));
                    }
                }
            }
        }
        Ok(covers.verdict())
    }

    fn collect_y(
        &self,
        nonzero: &[ElementId],
        from: usize,
        set: ElemSet,
        bound: ElemSet,
        ys: &mut Vec<ElementId>,
        keys: &mut BTreeMap<(ElemSet, ElemSet), Vec<ElementId>>,
    ) {
        // an empty bound satisfies the inequality for every extension of Y
        if bound.is_empty() {
            return;
        }
        keys.entry((set, bound)).or_insert_with(|| ys.clone());
        for (i, &y) in nonzero.iter().enumerate().skip(from) {
            ys.push(y);
            let next_set = set.intersection(&self.source.disjoint_from(y));
            let next_bound = bound.difference(&self.map[y]);
            self.collect_y(nonzero, i + 1, next_set, next_bound, ys, keys);
            ys.pop();
        }
    }

    fn tight_simplified(&self, cap: Option<usize>) -> Result<TightVerdict, LatticeError> {
        if !self.images_join_to_top() {
            return Err(LatticeError::HypothesisUnverified);
        }
        let e = self.source;
        let mut covers = CoverCache::new(e, cap);
        for x in e.nonzero().iter() {
            let bound = self.map[x];
            for cover in covers.get(&e.below(x)).iter() {
                let join = self.join_of(cover);
                if !bound.is_subset(&join) {
                    return Ok(TightVerdict::NotTight(TightnessWitness {
                        x: vec![x],
                        y: Vec::new(),
                        z: cover.to_vec(),
                        join,
                        bound,
                    }));
                }
            }
        }
        Ok(covers.verdict())
    }

    /// First pair `y <= x` with `y` dense in `x` but `s(y) != s(x)`.
    pub fn dense_pair_violation(&self) -> Option<(ElementId, ElementId)> {
        let e = self.source;
        for x in 0..e.len() {
            for y in e.below(x).iter() {
                if y != x && self.map[y] != self.map[x] && e.is_dense(y, x).unwrap_or(false) {
                    return Some((y, x));
                }
            }
        }
        None
    }

    /// Every dense pair `y <= x` has equal images.
    pub fn dense_pairs_respected(&self) -> bool {
        self.dense_pair_violation().is_none()
    }

    /// Whether this representation of a Boolean algebra preserves top,
    /// join and complement as well (0 and meet hold by construction).
    pub fn is_boolean_homomorphism(&self, source: &BooleanAlgebra) -> bool {
        let top = self.target_top();
        let n = self.source.len();
        self.map[source.top()] == top
            && (0..n).all(|x| self.map[source.complement(x)] == top.difference(&self.map[x]))
            && (0..n).all(|x| (0..n).all(|y| self.map[source.join(x, y)] == self.map[x].union(&self.map[y])))
    }
}

struct CoverCache<'a> {
    lattice: &'a Semilattice,
    cap: Option<usize>,
    cache: HashMap<ElemSet, Vec<ElemSet>>,
    capped_at: Option<usize>,
}

impl<'a> CoverCache<'a> {
    fn new(lattice: &'a Semilattice, cap: Option<usize>) -> Self {
        CoverCache {
            lattice,
            cap,
            cache: HashMap::new(),
            capped_at: None,
        }
    }

    fn get(&mut self, set: &ElemSet) -> &[ElemSet] {
        if !self.cache.contains_key(set) {
            let cap = self.cap.unwrap_or(set.len());
            let found = self.lattice.minimal_covers(set, cap);
            if found.cap_exceeded {
                self.capped_at = Some(cap);
            }
            self.cache.insert(*set, found.covers);
        }
        &self.cache[set]
    }

    fn verdict(&self) -> TightVerdict {
        match self.capped_at {
            Some(cap) => TightVerdict::TightUpToCap { cap },
            None => TightVerdict::Tight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TightMode {
    #[default]
    Exhaustive,
    Simplified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TightnessOptions {
    pub mode: TightMode,
    /// Largest cover considered; `None` means the size of the covered set,
    /// which never cuts a minimal cover.
    pub cover_cap: Option<usize>,
}

impl TightnessOptions {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn simplified() -> Self {
        TightnessOptions {
            mode: TightMode::Simplified,
            cover_cap: None,
        }
    }
}

/// A triple `(X, Y, Z)` with `Z` a cover of `E^{X,Y}` whose join misses part
/// of the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessWitness {
    pub x: Vec<ElementId>,
    pub y: Vec<ElementId>,
    pub z: Vec<ElementId>,
    pub join: ElemSet,
    pub bound: ElemSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TightVerdict {
    Tight,
    /// No violation among covers up to the cap; larger covers were not searched.
    TightUpToCap { cap: usize },
    NotTight(TightnessWitness),
}

impl TightVerdict {
    pub fn is_tight(&self) -> bool {
        matches!(self, TightVerdict::Tight)
    }

    pub fn witness(&self) -> Option<&TightnessWitness> {
        match self {
            TightVerdict::NotTight(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleCheck {
    pub is_cover: bool,
    pub join: ElemSet,
    pub bound: ElemSet,
    pub holds: bool,
}

/// The down-set representation `x -> { y != 0 : y <= x }` in `P(E \ {0})`.
#[derive(Debug, Clone)]
pub struct ElementaryRepresentation<'a> {
    pub rep: LatticeRepresentation<'a>,
    /// `atoms[i]` is the nonzero element that target atom `i` stands for.
    pub atoms: Vec<ElementId>,
}

impl ElementaryRepresentation<'_> {
    /// Image of `x` as a set of elements of the semilattice.
    pub fn image_elements(&self, x: ElementId) -> ElemSet {
        self.rep.image(x).iter().map(|i| self.atoms[i]).collect()
    }
}

pub fn elementary_representation(e: &Semilattice) -> ElementaryRepresentation<'_> {
    let atoms = e.nonzero().to_vec();
    let map = (0..e.len())
        .map(|x| {
            atoms
                .iter()
                .enumerate()
                .filter(|(_, &y)| e.leq(y, x))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let rep = LatticeRepresentation::new(e, atoms.len(), map).expect("down-sets preserve meets");
    ElementaryRepresentation { rep, atoms }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().collect()
    }

    // chain 0 < y < 1 as indices 0 < 1 < 2
    const Y: usize = 1;
    const ONE: usize = 2;

    /// Two atoms `e1 = 1`, `e2 = 2` and top `3`; this is `powerset(2)`.
    fn boolean4() -> Semilattice {
        Semilattice::powerset(2)
    }

    /// Brute force: all inclusion-minimal covers of `f`.
    fn brute_minimal_covers(e: &Semilattice, f: &ElemSet) -> Vec<ElemSet> {
        let members = f.to_vec();
        let subsets: Vec<ElemSet> = (0u32..1 << members.len())
            .map(|m| (0..members.len()).filter(|i| m >> i & 1 == 1).map(|i| members[i]).collect())
            .collect();
        let covers: Vec<ElemSet> = subsets
            .iter()
            .copied()
            .filter(|z| e.is_cover(z, f).unwrap().is_cover())
            .collect();
        let mut minimal: Vec<ElemSet> = covers
            .iter()
            .copied()
            .filter(|z| !covers.iter().any(|w| w != z && w.is_subset(z)))
            .collect();
        minimal.sort();
        minimal
    }

    #[test]
    fn meet_table_validation() {
        assert!(matches!(
            Semilattice::from_meet_table(vec![vec![0, 1], vec![0, 1]], 0),
            Err(LatticeError::NotCommutative(0, 1))
        ));
        assert!(matches!(
            Semilattice::from_meet_table(vec![vec![0, 0], vec![0, 0]], 0),
            Err(LatticeError::NotIdempotent(1))
        ));
        assert!(matches!(
            Semilattice::from_meet_table(vec![vec![0, 0], vec![0, 1]], 1),
            Err(LatticeError::ZeroNotMinimum { zero: 1, witness: 0 })
        ));
        // two maximal elements and two minimal ones: no meet for the top pair
        let n = 4;
        let leq = |a: usize, b: usize| a == b || (a < 2 && b >= 2);
        assert!(Semilattice::from_order(n, leq).is_err());
    }

    #[test]
    fn constrained_sets() {
        let b = boolean4();
        assert_eq!(b.constrained_set(&[3], &[]), b.all());
        let c = Semilattice::chain(3);
        assert_eq!(c.constrained_set(&[ONE], &[Y]), set(&[0]));
        assert_eq!(c.constrained_set(&[], &[]), c.all());
    }

    #[test]
    fn cover_checks() {
        let c = Semilattice::chain(3);
        assert_eq!(c.is_cover(&ElemSet::empty(), &set(&[0])).unwrap(), CoverCheck::Cover);
        let b = boolean4();
        assert!(b.is_cover(&set(&[1, 2]), &b.all()).unwrap().is_cover());
        assert!(c.is_cover(&set(&[Y]), &c.all()).unwrap().is_cover());
        assert_eq!(c.is_cover(&ElemSet::empty(), &c.all()).unwrap(), CoverCheck::Uncovered(Y));
        assert_eq!(c.is_cover(&set(&[ONE]), &set(&[0, Y])), Err(LatticeError::SubsetViolation(ONE)));
    }

    #[test]
    fn minimal_cover_examples() {
        let c = Semilattice::chain(3);
        let found = c.minimal_covers(&set(&[0]), 1);
        assert_eq!(found.covers, vec![ElemSet::empty()]);
        assert!(!found.cap_exceeded);

        let b = boolean4();
        let found = b.minimal_covers(&b.all(), 4);
        assert_eq!(found.covers, vec![set(&[1, 2]), set(&[3])]);

        assert_eq!(c.minimal_covers(&c.all(), 3).covers, vec![set(&[Y]), set(&[ONE])]);
    }

    #[test]
    fn minimal_cover_cap_is_reported() {
        let b = boolean4();
        let found = b.minimal_covers(&b.all(), 1);
        assert_eq!(found.covers, vec![set(&[3])]);
        assert!(found.cap_exceeded);
    }

    #[test]
    fn minimal_covers_match_brute_force_on_powerset_and_chains() {
        for e in [Semilattice::powerset(3), Semilattice::chain(5), Semilattice::powerset(2)] {
            for x in 0..e.len() {
                let f = e.below(x);
                assert_eq!(e.minimal_covers(&f, f.len()).covers, brute_minimal_covers(&e, &f));
            }
            let f = e.all();
            assert_eq!(e.minimal_covers(&f, f.len()).covers, brute_minimal_covers(&e, &f));
        }
    }

    #[test]
    fn density() {
        let c = Semilattice::chain(3);
        for x in 0..3 {
            assert!(c.is_dense(x, x).unwrap());
        }
        assert!(c.is_dense(Y, ONE).unwrap());
        let b = boolean4();
        assert_eq!(b.density_witness(1, 3).unwrap(), Some(2));
        assert!(!b.is_dense(1, 3).unwrap());
        assert_eq!(b.is_dense(3, 1), Err(LatticeError::OrderViolation { y: 3, x: 1 }));
    }

    #[test]
    fn boolean_recognition() {
        assert!(Semilattice::chain(3).boolean_structure().is_none());
        let b = boolean4().boolean_structure().unwrap();
        assert_eq!(b.atoms(), &[1, 2]);
        assert_eq!(b.complement(1), 2);
        assert_eq!(b.top(), 3);
        assert_eq!(b.join(1, 2), 3);
        let p3 = Semilattice::powerset(3).boolean_structure().unwrap();
        assert_eq!(p3.atoms().len(), 3);
        // chain of 2 is the two-element Boolean algebra; chain of 4 has the right
        // size but only one atom
        assert!(Semilattice::chain(2).boolean_structure().is_some());
        assert!(Semilattice::chain(4).boolean_structure().is_none());
    }

    #[test]
    fn elementary_representations() {
        let two = Semilattice::chain(2);
        let r = elementary_representation(&two);
        assert_eq!(r.image_elements(1), set(&[1]));
        assert!(r.image_elements(0).is_empty());

        let c = Semilattice::chain(3);
        let r = elementary_representation(&c);
        assert_eq!(r.image_elements(ONE), set(&[Y, ONE]));
        assert_eq!(r.image_elements(Y), set(&[Y]));

        let b = boolean4();
        assert_eq!(elementary_representation(&b).image_elements(3), set(&[1, 2, 3]));
    }

    #[test]
    fn chain_elementary_representation_is_not_tight() {
        let c = Semilattice::chain(3);
        let r = elementary_representation(&c);
        let verdict = r.rep.is_tight(TightnessOptions::exhaustive()).unwrap();
        assert!(!verdict.is_tight());
        let triple = r.rep.check_triple(&[ONE], &[Y], &[]).unwrap();
        assert!(triple.is_cover);
        assert!(!triple.holds);
        assert!(triple.join.is_empty());
        // the bound is {1}, i.e. the atom standing for the top element
        assert_eq!(triple.bound.iter().map(|i| r.atoms[i]).collect::<Vec<_>>(), vec![ONE]);
        assert_eq!(r.rep.dense_pair_violation(), Some((Y, ONE)));
    }

    #[test]
    fn identity_on_boolean_algebra_is_tight() {
        let b = boolean4().boolean_structure().unwrap();
        let id = LatticeRepresentation::identity(&b);
        assert_eq!(id.is_tight(TightnessOptions::exhaustive()).unwrap(), TightVerdict::Tight);
        assert_eq!(id.is_tight(TightnessOptions::simplified()).unwrap(), TightVerdict::Tight);
        assert!(id.is_boolean_homomorphism(&b));
        assert!(id.dense_pairs_respected());
    }

    #[test]
    fn zero_map_on_two_elements_is_not_tight() {
        let two = Semilattice::chain(2);
        let zero = LatticeRepresentation::new(&two, 1, vec![ElemSet::empty(); 2]).unwrap();
        let verdict = zero.is_tight(TightnessOptions::exhaustive()).unwrap();
        assert!(!verdict.is_tight());
        let triple = zero.check_triple(&[], &[], &[1]).unwrap();
        assert!(triple.is_cover && !triple.holds);
        assert_eq!(zero.is_tight(TightnessOptions::simplified()), Err(LatticeError::HypothesisUnverified));
    }

    #[test]
    fn tight_chain_representation_identifies_dense_pair() {
        // sigma(y) = sigma(1) = {0}: the character of the ultrafilter {y, 1}
        let c = Semilattice::chain(3);
        let rep = LatticeRepresentation::new(&c, 1, vec![ElemSet::empty(), set(&[0]), set(&[0])]).unwrap();
        assert!(rep.is_tight(TightnessOptions::exhaustive()).unwrap().is_tight());
        assert!(rep.dense_pairs_respected());
    }

    #[test]
    fn representation_validation() {
        let c = Semilattice::chain(3);
        assert_eq!(
            LatticeRepresentation::new(&c, 1, vec![set(&[0]); 3]),
            Err(LatticeError::ZeroNotPreserved)
        );
        assert_eq!(
            LatticeRepresentation::new(&c, 2, vec![ElemSet::empty(), set(&[0]), set(&[1])]),
            Err(LatticeError::MeetNotPreserved { x: 1, y: 2 })
        );
        assert_eq!(
            LatticeRepresentation::new(&c, 1, vec![ElemSet::empty(), set(&[0]), set(&[4])]),
            Err(LatticeError::ImageOutOfRange { atom: 4, atoms: 1 })
        );
    }

    #[test]
    fn exhaustive_refuses_large_inputs() {
        let big = Semilattice::chain(EXHAUSTIVE_LIMIT + 1);
        let r = elementary_representation(&big);
        assert!(matches!(
            r.rep.is_tight(TightnessOptions::exhaustive()),
            Err(LatticeError::SizeCap { .. })
        ));
        // the simplified test applies: the top's image is everything
        assert!(!r.rep.is_tight(TightnessOptions::simplified()).unwrap().is_tight());
    }
}
