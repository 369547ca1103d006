//! Finite inverse semigroups given by Cayley tables.
//!
//! A table is validated once; the involution, the idempotents and the
//! natural partial order are derived at that point and never change.

use thiserror::Error;

use crate::bits::{ElemSet, MAX_ELEMENTS};
use crate::semilattice::{BooleanAlgebra, Semilattice};

/// Dense index of an element, in `0..n`.
pub type ElementId = usize;

/// Above this size the four-way order cross-check is sampled.
pub const FULL_CROSS_CHECK_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("empty table")]
    Empty,
    #[error("table has {n} elements, capacity is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {a}*{b} = {value} is out of range 0..{n}")]
    EntryOutOfRange { a: usize, b: usize, value: usize, n: usize },
    #[error("zero index {zero} is out of range 0..{n}")]
    ZeroOutOfRange { zero: usize, n: usize },
    #[error("NotAssociative a={a},b={b},c={c}")]
    NotAssociative { a: ElementId, b: ElementId, c: ElementId },
    #[error("ZeroNotAbsorbing s={0}")]
    ZeroNotAbsorbing(ElementId),
    #[error("NoInverse s={0}")]
    NoInverse(ElementId),
    #[error("NonUniqueInverse s={s},first={first},second={second}")]
    NonUniqueInverse { s: ElementId, first: ElementId, second: ElementId },
    #[error("CorruptTable: {0}")]
    CorruptTable(String),
    #[error("labels: expected {expected}, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// A finite binary operation on `0..n`, not yet known to be anything more.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<ElementId>,
}

impl CayleyTable {
    pub fn new(rows: Vec<Vec<ElementId>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(AlgebraError::TooLarge { n, max: MAX_ELEMENTS });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::NotSquare { row: a, len: row.len(), n });
            }
            for (b, value) in row.into_iter().enumerate() {
                if value >= n {
                    return Err(AlgebraError::EntryOutOfRange { a, b, value, n });
                }
                mul.push(value);
            }
        }
        Ok(CayleyTable { n, mul })
    }

    pub fn from_fn(n: usize, f: impl Fn(ElementId, ElementId) -> ElementId) -> Result<Self, AlgebraError> {
        Self::new((0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<ElementId>> {
        self.mul.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        for a in 0..self.n {
            for b in 0..self.n {
                let ab = self.mul(a, b);
                for c in 0..self.n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(AlgebraError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_zero(&self, zero: ElementId) -> Result<(), AlgebraError> {
        if zero >= self.n {
            return Err(AlgebraError::ZeroOutOfRange { zero, n: self.n });
        }
        match (0..self.n).find(|&s| self.mul(zero, s) != zero || self.mul(s, zero) != zero) {
            Some(s) => Err(AlgebraError::ZeroNotAbsorbing(s)),
            None => Ok(()),
        }
    }

    /// The absorbing element, if there is one (it is unique when it exists).
    pub fn find_zero(&self) -> Option<ElementId> {
        (0..self.n).find(|&z| self.check_zero(z).is_ok())
    }

    /// Unique inverses by exhaustive search.
    pub fn inverses(&self) -> Result<Vec<ElementId>, AlgebraError> {
        (0..self.n)
            .map(|s| {
                let mut found = None;
                for x in 0..self.n {
                    let sx = self.mul(s, x);
                    if self.mul(sx, s) == s && self.mul(self.mul(x, s), x) == x {
                        if let Some(first) = found {
                            return Err(AlgebraError::NonUniqueInverse { s, first, second: x });
                        }
                        found = Some(x);
                    }
                }
                found.ok_or(AlgebraError::NoInverse(s))
            })
            .collect()
    }

    pub fn idempotents(&self) -> ElemSet {
        (0..self.n).filter(|&e| self.mul(e, e) == e).collect()
    }
}

/// A validated finite inverse semigroup with zero.
#[derive(Debug, Clone)]
pub struct InverseSemigroup {
    table: CayleyTable,
    zero: ElementId,
    inv: Vec<ElementId>,
    idempotents: ElemSet,
    /// `below[t] = { s : s <= t }`
    below: Vec<ElemSet>,
    /// `above[s] = { t : s <= t }`
    above: Vec<ElemSet>,
    name: Option<String>,
    labels: Option<Vec<String>>,
}

impl PartialEq for InverseSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.zero == other.zero
    }
}

impl Eq for InverseSemigroup {}

impl InverseSemigroup {
    pub fn validate(rows: Vec<Vec<ElementId>>, zero: ElementId) -> Result<Self, AlgebraError> {
        Self::from_table(CayleyTable::new(rows)?, zero)
    }

    pub fn from_table(table: CayleyTable, zero: ElementId) -> Result<Self, AlgebraError> {
        table.check_associative()?;
        table.check_zero(zero)?;
        let inv = table.inverses()?;
        let idempotents = table.idempotents();
        let n = table.len();

        for e in idempotents.iter() {
            for f in idempotents.iter() {
                if table.mul(e, f) != table.mul(f, e) {
                    return Err(AlgebraError::CorruptTable(format!("idempotents {e} and {f} do not commute")));
                }
            }
        }

        let mut below = vec![ElemSet::empty(); n];
        let mut above = vec![ElemSet::empty(); n];
        let stride = if n <= FULL_CROSS_CHECK_LIMIT { 1 } else { (n * n).div_ceil(4096) };
        #[allow(clippy::needless_range_loop)]
        for s in 0..n {
            let ss = table.mul(inv[s], s);
            for t in 0..n {
                if table.mul(t, ss) == s {
                    below[t].insert(s);
                    above[s].insert(t);
                }
                if (s * n + t).is_multiple_of(stride) {
                    let conds = order_conditions(&table, &inv, &idempotents, s, t);
                    if conds.iter().any(|&c| c != conds[0]) {
                        return Err(AlgebraError::CorruptTable(format!(
                            "natural order conditions disagree on ({s},{t}): {conds:?}"
                        )));
                    }
                }
            }
        }

        Ok(InverseSemigroup {
            table,
            zero,
            inv,
            idempotents,
            below,
            above,
            name: None,
            labels: None,
        })
    }

    /// Validate a table whose absorbing element is found rather than given.
    pub fn from_table_detect_zero(table: CayleyTable) -> Result<Self, AlgebraError> {
        let zero = table.find_zero().ok_or_else(|| {
            // report the failure against the least idempotent, the only candidate
            let e = least_idempotent(&table);
            let s = (0..table.len())
                .find(|&s| table.mul(e, s) != e || table.mul(s, e) != e)
                .unwrap_or(e);
            AlgebraError::ZeroNotAbsorbing(s)
        })?;
        Self::from_table(table, zero)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.len() {
            return Err(AlgebraError::LabelCount { expected: self.len(), got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `s`, or its index when the semigroup is unlabelled.
    pub fn label(&self, s: ElementId) -> String {
        match &self.labels {
            Some(l) => l[s].clone(),
            None => s.to_string(),
        }
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        self.zero
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table.mul(a, b)
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, elems: &[ElementId]) -> ElementId {
        let mut it = elems.iter().copied();
        let first = it.next().expect("empty product");
        it.fold(first, |acc, x| self.mul(acc, x))
    }

    #[inline]
    pub fn inv(&self, s: ElementId) -> ElementId {
        self.inv[s]
    }

    /// `s* s`
    #[inline]
    pub fn source(&self, s: ElementId) -> ElementId {
        self.mul(self.inv[s], s)
    }

    /// `s s*`
    #[inline]
    pub fn range(&self, s: ElementId) -> ElementId {
        self.mul(s, self.inv[s])
    }

    #[inline]
    pub fn is_idempotent(&self, s: ElementId) -> bool {
        self.idempotents.contains(s)
    }

    pub fn idempotents(&self) -> ElemSet {
        self.idempotents
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    /// Natural partial order: `s <= t` iff `t s* s = s`.
    #[inline]
    pub fn natural_leq(&self, s: ElementId, t: ElementId) -> bool {
        self.below[t].contains(s)
    }

    /// The four defining conditions of the natural order, evaluated
    /// independently: `t s*s = s`, `s s* t = s`, `t e = s`, `e t = s`.
    pub fn natural_leq_conditions(&self, s: ElementId, t: ElementId) -> [bool; 4] {
        order_conditions(&self.table, &self.inv, &self.idempotents, s, t)
    }

    pub fn down_set(&self, t: ElementId) -> ElemSet {
        self.below[t]
    }

    pub fn up_set(&self, s: ElementId) -> ElemSet {
        self.above[s]
    }

    /// `E(S)` with meet `ef`.
    pub fn idempotent_semilattice(&self) -> Result<IdempotentLattice, AlgebraError> {
        IdempotentLattice::build(&self.table, self.idempotents)
    }

    pub fn is_boolean_inverse_semigroup(&self) -> Result<BooleanIsgVerdict, AlgebraError> {
        boolean_verdict(&self.table, self.idempotents)
    }

    /// Relabel with a permutation: element `s` becomes `perm[s]`.
    pub fn permuted(&self, perm: &[ElementId]) -> Result<Self, AlgebraError> {
        let n = self.len();
        let mut back = vec![0; n];
        for (s, &p) in perm.iter().enumerate() {
            back[p] = s;
        }
        let table = CayleyTable::from_fn(n, |a, b| perm[self.mul(back[a], back[b])])?;
        let mut out = Self::from_table(table, perm[self.zero])?;
        out.name = self.name.clone();
        out.labels = self.labels.as_ref().map(|l| (0..n).map(|p| l[back[p]].clone()).collect());
        Ok(out)
    }
}

fn order_conditions(
    table: &CayleyTable,
    inv: &[ElementId],
    idempotents: &ElemSet,
    s: ElementId,
    t: ElementId,
) -> [bool; 4] {
    let s_star = inv[s];
    [
        table.mul(t, table.mul(s_star, s)) == s,
        table.mul(table.mul(s, s_star), t) == s,
        idempotents.iter().any(|e| table.mul(t, e) == s),
        idempotents.iter().any(|e| table.mul(e, t) == s),
    ]
}

fn least_idempotent(table: &CayleyTable) -> ElementId {
    let idem = table.idempotents();
    let mut it = idem.iter();
    let first = it.next().expect("finite semigroup without idempotents");
    it.fold(first, |acc, e| table.mul(acc, e))
}

/// `E(S)` as a semilattice, re-indexed densely, together with the embedding.
#[derive(Debug, Clone)]
pub struct IdempotentLattice {
    pub lattice: Semilattice,
    /// `elements[i]` is the semigroup element for lattice index `i`.
    pub elements: Vec<ElementId>,
    position: Vec<Option<usize>>,
}

impl IdempotentLattice {
    fn build(table: &CayleyTable, idempotents: ElemSet) -> Result<Self, AlgebraError> {
        let elements = idempotents.to_vec();
        let mut position = vec![None; table.len()];
        for (i, &e) in elements.iter().enumerate() {
            position[e] = Some(i);
        }
        let mut rows = Vec::with_capacity(elements.len());
        for &e in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for &f in &elements {
                let ef = table.mul(e, f);
                row.push(position[ef].ok_or_else(|| {
                    AlgebraError::CorruptTable(format!("product of idempotents {e},{f} is not idempotent"))
                })?);
            }
            rows.push(row);
        }
        let zero = position[least_idempotent(table)].expect("least idempotent is idempotent");
        let lattice = Semilattice::from_meet_table(rows, zero)
            .map_err(|err| AlgebraError::CorruptTable(format!("idempotents do not form a semilattice: {err}")))?;
        Ok(IdempotentLattice {
            lattice,
            elements,
            position,
        })
    }

    /// Lattice index of a semigroup idempotent.
    pub fn index_of(&self, e: ElementId) -> Option<usize> {
        self.position.get(e).copied().flatten()
    }

    pub fn element(&self, i: usize) -> ElementId {
        self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BooleanIsgFailure {
    /// `E(S)` is not order-isomorphic to a Boolean algebra.
    IdempotentsNotBoolean { idempotents: usize },
    /// The least idempotent does not absorb this element.
    LeastIdempotentNotAbsorbing { least: ElementId, witness: ElementId },
}

#[derive(Debug, Clone)]
pub enum BooleanIsgVerdict {
    Boolean(BooleanAlgebra),
    NotBoolean(BooleanIsgFailure),
}

impl BooleanIsgVerdict {
    pub fn is_boolean(&self) -> bool {
        matches!(self, BooleanIsgVerdict::Boolean(_))
    }
}

fn boolean_verdict(table: &CayleyTable, idempotents: ElemSet) -> Result<BooleanIsgVerdict, AlgebraError> {
    let lattice = IdempotentLattice::build(table, idempotents)?;
    let Some(algebra) = lattice.lattice.boolean_structure() else {
        return Ok(BooleanIsgVerdict::NotBoolean(BooleanIsgFailure::IdempotentsNotBoolean {
            idempotents: lattice.len(),
        }));
    };
    let least = lattice.element(lattice.lattice.zero());
    if let Some(witness) = (0..table.len()).find(|&s| table.mul(least, s) != least || table.mul(s, least) != least) {
        return Ok(BooleanIsgVerdict::NotBoolean(BooleanIsgFailure::LeastIdempotentNotAbsorbing {
            least,
            witness,
        }));
    }
    Ok(BooleanIsgVerdict::Boolean(algebra))
}

/// Boolean-inverse-semigroup test for a table that need not have a zero
/// (a group, say). The table must still be an inverse semigroup.
pub fn boolean_inverse_semigroup_check(table: &CayleyTable) -> Result<BooleanIsgVerdict, AlgebraError> {
    table.check_associative()?;
    table.inverses()?;
    boolean_verdict(table, table.idempotents())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn szendrei_rows() -> Vec<Vec<usize>> {
        // 0, i, 1, s
        vec![vec![0, 0, 0, 0], vec![0, 1, 1, 1], vec![0, 1, 2, 3], vec![0, 1, 3, 2]]
    }

    fn z3_with_zero() -> Vec<Vec<usize>> {
        // index 0 is the zero, 1 + k is k in Z/3
        (0..4)
            .map(|a| {
                (0..4)
                    .map(|b| if a == 0 || b == 0 { 0 } else { 1 + (a - 1 + b - 1) % 3 })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn two_element_semilattice_is_self_inverse() {
        let s = InverseSemigroup::validate(vec![vec![0, 0], vec![0, 1]], 0).unwrap();
        assert_eq!((0..2).map(|x| s.inv(x)).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(s.idempotents().to_vec(), vec![0, 1]);
    }

    #[test]
    fn szendrei_table_validates_with_s_self_inverse() {
        let s = InverseSemigroup::validate(szendrei_rows(), 0).unwrap();
        assert_eq!(s.inv(3), 3);
        assert_eq!(s.idempotents().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn group_with_zero_inverts_like_the_group() {
        let s = InverseSemigroup::validate(z3_with_zero(), 0).unwrap();
        // 1 + 1 = 2 in Z/3 is inverse to 1
        assert_eq!(s.inv(1), 1);
        assert_eq!(s.inv(2), 3);
        assert_eq!(s.inv(3), 2);
    }

    #[test]
    fn natural_order_examples() {
        let s = InverseSemigroup::validate(szendrei_rows(), 0).unwrap();
        for t in s.elements() {
            assert!(s.natural_leq(0, t));
        }
        assert!(s.natural_leq(1, 3), "i <= s");
        assert!(!s.natural_leq(3, 2), "s is not below 1");
        assert!(!s.natural_leq(2, 3));
        assert_eq!(s.natural_leq_conditions(3, 2), [false; 4]);
        assert_eq!(s.natural_leq_conditions(1, 3), [true; 4]);
    }

    #[test]
    fn validation_errors() {
        // a*b = b: left-zero-ish table on {0,1,2} that is not associative after tampering
        let mut rows = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]];
        rows[1][2] = 1;
        assert!(matches!(
            InverseSemigroup::validate(rows, 0),
            Err(AlgebraError::NotAssociative { .. })
        ));

        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(InverseSemigroup::validate(z2, 0), Err(AlgebraError::ZeroNotAbsorbing(1)));

        // right-zero band {0} u {a, b}: a b = b, b a = a; every element is its own
        // inverse candidate and more
        let rz = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]];
        assert!(matches!(
            InverseSemigroup::validate(rz, 0),
            Err(AlgebraError::NonUniqueInverse { s: 1, .. })
        ));

        // null semigroup on {0, a}: a a = 0, so a a* a = 0 != a
        let null = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(InverseSemigroup::validate(null, 0), Err(AlgebraError::NoInverse(1)));

        assert!(matches!(
            InverseSemigroup::validate(vec![vec![0, 5], vec![0, 1]], 0),
            Err(AlgebraError::EntryOutOfRange { value: 5, .. })
        ));
    }

    #[test]
    fn idempotent_semilattices() {
        let s = InverseSemigroup::validate(szendrei_rows(), 0).unwrap();
        let e = s.idempotent_semilattice().unwrap();
        assert_eq!(e.elements, vec![0, 1, 2]);
        // chain 0 < i < 1
        assert!(e.lattice.leq(0, 1) && e.lattice.leq(1, 2));
        assert_eq!(e.index_of(3), None);

        let g = InverseSemigroup::validate(z3_with_zero(), 0).unwrap();
        let e = g.idempotent_semilattice().unwrap();
        assert_eq!(e.elements, vec![0, 1]);
    }

    #[test]
    fn boolean_inverse_semigroup_recognition() {
        let z2 = CayleyTable::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        match boolean_inverse_semigroup_check(&z2).unwrap() {
            BooleanIsgVerdict::NotBoolean(BooleanIsgFailure::LeastIdempotentNotAbsorbing { least: 0, witness: 1 }) => {}
            other => panic!("unexpected verdict {other:?}"),
        }
        let s = InverseSemigroup::validate(szendrei_rows(), 0).unwrap();
        assert!(matches!(
            s.is_boolean_inverse_semigroup().unwrap(),
            BooleanIsgVerdict::NotBoolean(BooleanIsgFailure::IdempotentsNotBoolean { idempotents: 3 })
        ));
    }

    #[test]
    fn permutation_preserves_structure() {
        let s = InverseSemigroup::validate(szendrei_rows(), 0).unwrap();
        let p = s.permuted(&[3, 2, 1, 0]).unwrap();
        assert_eq!(p.zero(), 3);
        assert!(p.natural_leq(2, 0));
        assert_eq!(p.inv(0), 0);
    }
}
