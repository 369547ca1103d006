//! Generators for the example semigroups: symmetric inverse semigroups,
//! the Vagner-Preston map, adjoined zeros, congruence quotients and the
//! quotient family `S(E, G, {N_x})` built from `E x G`.

use thiserror::Error;

use crate::bits::ElemSet;
use crate::partial::PartialBijection;
use crate::semigroup::{AlgebraError, CayleyTable, ElementId, InverseSemigroup};
use crate::semilattice::{LatticeError, LatticeRepresentation, Semilattice, TightVerdict, TightnessOptions};

/// Largest `k` accepted by [`symmetric_inverse_semigroup`]; `I(4)` has 209 elements.
pub const SYMMETRIC_MAX_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("SizeCap: {what} = {value} exceeds {max}")]
    SizeCap { what: &'static str, value: usize, max: usize },
    #[error("product of {a} and {b} leaves the given set of maps")]
    NotClosed { a: usize, b: usize },
    #[error("the given maps contain no empty map to serve as zero")]
    NoEmptyMap,
    #[error("NotACongruence: {s}~{t} but not {product}")]
    NotACongruence { s: ElementId, t: ElementId, u: ElementId, product: &'static str },
    #[error("congruence covers {got} elements, table has {expected}")]
    CongruenceSize { expected: usize, got: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("SpecViolation: {0}")]
    SpecViolation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An inverse semigroup of partial bijections closed under composition,
/// with `st` meaning "apply `t`, then `s`".
pub fn from_partial_bijections(maps: &[PartialBijection]) -> Result<InverseSemigroup, ConstructionError> {
    let zero = maps.iter().position(PartialBijection::is_empty).ok_or(ConstructionError::NoEmptyMap)?;
    let mut rows = Vec::with_capacity(maps.len());
    for (a, s) in maps.iter().enumerate() {
        let mut row = Vec::with_capacity(maps.len());
        for (b, t) in maps.iter().enumerate() {
            let st = s.after(t).map_err(|_| ConstructionError::NotClosed { a, b })?;
            row.push(maps.iter().position(|m| *m == st).ok_or(ConstructionError::NotClosed { a, b })?);
        }
        rows.push(row);
    }
    let labels = maps.iter().map(ToString::to_string).collect();
    Ok(InverseSemigroup::validate(rows, zero)?.with_labels(labels)?)
}

/// All partial bijections of `k` points, ordered by (domain, graph).
pub fn partial_bijections(k: usize) -> Vec<PartialBijection> {
    fn extend(k: usize, x: usize, used: &mut Vec<bool>, map: &mut Vec<Option<usize>>, out: &mut Vec<PartialBijection>) {
        if x == k {
            out.push(PartialBijection::new(map.clone()).expect("injective by construction"));
            return;
        }
        map[x] = None;
        extend(k, x + 1, used, map, out);
        for y in 0..k {
            if !used[y] {
                used[y] = true;
                map[x] = Some(y);
                extend(k, x + 1, used, map, out);
                map[x] = None;
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(k, 0, &mut vec![false; k], &mut vec![None; k], &mut out);
    out.sort_by_key(PartialBijection::canonical_key);
    out
}

/// `I(X)` for `|X| = k`.
pub fn symmetric_inverse_semigroup(k: usize) -> Result<InverseSemigroup, ConstructionError> {
    if k > SYMMETRIC_MAX_POINTS {
        return Err(ConstructionError::SizeCap {
            what: "points",
            value: k,
            max: SYMMETRIC_MAX_POINTS,
        });
    }
    Ok(from_partial_bijections(&partial_bijections(k))?.with_name(format!("I({k})")))
}

/// The four-element example `{0, i, 1, s}` inside `I({1,2,3})`: `i` is the
/// partial identity on `1`, `s` swaps `2` and `3` and fixes `1`.
pub fn szendrei_example() -> InverseSemigroup {
    let maps = [
        PartialBijection::empty(3),
        PartialBijection::from_pairs(3, &[(0, 0)]).unwrap(),
        PartialBijection::identity_on(3, &ElemSet::full(3)),
        PartialBijection::from_pairs(3, &[(0, 0), (1, 2), (2, 1)]).unwrap(),
    ];
    from_partial_bijections(&maps)
        .and_then(|s| Ok(s.with_labels(["0", "i", "1", "s"].map(String::from).to_vec())?))
        .expect("closed under composition")
        .with_name("szendrei")
}

/// Adjoin a new zero at index 0 to any finite inverse semigroup table;
/// old element `s` becomes `s + 1`.
pub fn adjoin_zero(table: &CayleyTable) -> Result<InverseSemigroup, ConstructionError> {
    let n = table.len() + 1;
    let t = CayleyTable::from_fn(n, |a, b| if a == 0 || b == 0 { 0 } else { table.mul(a - 1, b - 1) + 1 })?;
    Ok(InverseSemigroup::from_table(t, 0)?)
}

/// `S' = S u {z}` with `zs = sz = z`; `z` is index 0 and the old zero
/// becomes a nonzero idempotent.
pub fn adjoin_absorbing(s: &InverseSemigroup) -> Result<InverseSemigroup, ConstructionError> {
    let n = s.len() + 1;
    let t = CayleyTable::from_fn(n, |a, b| if a == 0 || b == 0 { 0 } else { s.mul(a - 1, b - 1) + 1 })?;
    let mut out = InverseSemigroup::from_table(t, 0)?;
    if let Some(labels) = s.labels() {
        let labels = std::iter::once("z".to_string()).chain(labels.iter().cloned()).collect();
        out = out.with_labels(labels)?;
    }
    if let Some(name) = s.name() {
        out = out.with_name(format!("{name}+z"));
    }
    Ok(out)
}

/// The Vagner-Preston map `gamma(s): D_{s*s} -> D_{ss*}, t -> st`, where
/// `D_e = { t : tt* <= e }`.
#[derive(Debug, Clone)]
pub struct VagnerPreston {
    pub gamma: Vec<PartialBijection>,
    /// Same maps with `0` removed from every domain.
    pub zero_removed: Vec<PartialBijection>,
    pub injective: bool,
    pub homomorphism: bool,
    /// Why the verbatim idempotent restriction is not even a representation.
    pub verbatim_failure: Option<LatticeError>,
    pub zero_removed_tightness: TightVerdict,
    /// Target atom `i` of the zero-removed restriction is element `atoms[i]`.
    pub atoms: Vec<ElementId>,
    /// Zero-removed image of each idempotent, indexed like the idempotent
    /// semilattice, in atom positions.
    pub zero_removed_images: Vec<ElemSet>,
}

pub fn vagner_preston(s: &InverseSemigroup) -> Result<VagnerPreston, ConstructionError> {
    let n = s.len();
    let domain = |e: ElementId| -> ElemSet { s.elements().filter(|&t| s.natural_leq(s.range(t), e)).collect() };
    let gamma: Vec<PartialBijection> = s
        .elements()
        .map(|a| {
            let map = (0..n)
                .map(|t| domain(s.source(a)).contains(t).then(|| s.mul(a, t)))
                .collect();
            PartialBijection::new(map).expect("left translation is injective on D_{s*s}")
        })
        .collect();
    let zero_removed: Vec<PartialBijection> = gamma
        .iter()
        .map(|g| {
            let mut pairs = g.pairs();
            pairs.retain(|&(t, _)| t != s.zero());
            PartialBijection::from_pairs(n, &pairs).expect("restriction stays injective")
        })
        .collect();

    let injective = (0..n).all(|a| (a + 1..n).all(|b| gamma[a] != gamma[b]));
    let homomorphism = s
        .elements()
        .all(|a| s.elements().all(|b| gamma[a].after(&gamma[b]).ok().as_ref() == Some(&gamma[s.mul(a, b)])));

    let idem = s.idempotent_semilattice()?;
    let verbatim_failure = LatticeRepresentation::new(
        &idem.lattice,
        n,
        idem.elements.iter().map(|&e| gamma[e].domain()).collect(),
    )
    .err();

    let atoms: Vec<ElementId> = s.elements().filter(|&t| t != s.zero()).collect();
    let position = |t: ElementId| atoms.iter().position(|&a| a == t).expect("nonzero");
    let zero_removed_images: Vec<ElemSet> = idem
        .elements
        .iter()
        .map(|&e| zero_removed[e].domain().iter().map(position).collect())
        .collect();
    let rep = LatticeRepresentation::new(&idem.lattice, atoms.len(), zero_removed_images.clone())?;
    let zero_removed_tightness = rep.is_tight(TightnessOptions::exhaustive()).or_else(|err| match err {
        LatticeError::SizeCap { .. } => rep.is_tight(TightnessOptions::simplified()),
        other => Err(other),
    })?;

    Ok(VagnerPreston {
        gamma,
        zero_removed,
        injective,
        homomorphism,
        verbatim_failure,
        zero_removed_tightness,
        atoms,
        zero_removed_images,
    })
}

/// An equivalence relation on `0..n`, stored as class ids numbered by
/// first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: usize,
}

impl Congruence {
    /// From arbitrary per-element labels; equal labels share a class.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut class_of = Vec::with_capacity(labels.len());
        let mut reps: Vec<usize> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            match reps.iter().position(|&r| labels[r] == *l) {
                Some(c) => class_of.push(c),
                None => {
                    class_of.push(reps.len());
                    reps.push(i);
                }
            }
        }
        Congruence {
            classes: reps.len(),
            class_of,
        }
    }

    /// From a list of blocks; unlisted elements are singletons.
    pub fn from_blocks(n: usize, blocks: &[Vec<ElementId>]) -> Result<Self, ConstructionError> {
        let mut label: Vec<usize> = (0..n).collect();
        for block in blocks {
            let Some(&first) = block.first() else { continue };
            for &x in block {
                if x >= n {
                    return Err(ConstructionError::CongruenceSize { expected: n, got: x + 1 });
                }
                label[x] = first;
            }
        }
        Ok(Self::from_labels(&label))
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn full(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, x: ElementId) -> usize {
        self.class_of[x]
    }

    /// Least member of each class.
    pub fn representatives(&self) -> Vec<ElementId> {
        let mut reps = vec![usize::MAX; self.classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            reps[c] = reps[c].min(x);
        }
        reps
    }

    /// Check left and right compatibility with `table`.
    pub fn verify(&self, table: &CayleyTable) -> Result<(), ConstructionError> {
        if self.len() != table.len() {
            return Err(ConstructionError::CongruenceSize { expected: table.len(), got: self.len() });
        }
        let reps = self.representatives();
        for s in 0..table.len() {
            let t = reps[self.class_of[s]];
            if s == t {
                continue;
            }
            for u in 0..table.len() {
                if self.class_of[table.mul(u, s)] != self.class_of[table.mul(u, t)] {
                    return Err(ConstructionError::NotACongruence { s, t, u, product: "us~ut" });
                }
                if self.class_of[table.mul(s, u)] != self.class_of[table.mul(t, u)] {
                    return Err(ConstructionError::NotACongruence { s, t, u, product: "su~tu" });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub semigroup: InverseSemigroup,
    pub congruence: Congruence,
}

/// `S / ~`, validated as an inverse semigroup with zero.
pub fn quotient(table: &CayleyTable, congruence: &Congruence) -> Result<Quotient, ConstructionError> {
    congruence.verify(table)?;
    let reps = congruence.representatives();
    let q = CayleyTable::from_fn(congruence.class_count(), |a, b| {
        congruence.class_of(table.mul(reps[a], reps[b]))
    })?;
    Ok(Quotient {
        semigroup: InverseSemigroup::from_table_detect_zero(q)?,
        congruence: congruence.clone(),
    })
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    table: CayleyTable,
    identity: ElementId,
    inverse: Vec<ElementId>,
    labels: Vec<String>,
}

impl Group {
    pub fn from_table(table: CayleyTable) -> Result<Self, ConstructionError> {
        table
            .check_associative()
            .map_err(|e| ConstructionError::NotAGroup(e.to_string()))?;
        let n = table.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table.mul(e, g) == g && table.mul(g, e) == g))
            .ok_or_else(|| ConstructionError::NotAGroup("no identity".into()))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table.mul(g, h) == identity)
                    .ok_or_else(|| ConstructionError::NotAGroup(format!("{g} has no inverse")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Group {
            table,
            identity,
            inverse,
            labels: (0..n).map(|g| g.to_string()).collect(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    pub fn cyclic(n: usize) -> Self {
        let t = CayleyTable::from_fn(n, |a, b| (a + b) % n).expect("in range");
        Self::from_table(t).expect("Z/n is a group")
    }

    pub fn klein_four() -> Self {
        let t = CayleyTable::from_fn(4, |a, b| a ^ b).expect("in range");
        Self::from_table(t).expect("Z/2 x Z/2 is a group")
    }

    /// `S_3` as permutations of three points in lexicographic order.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        // (p q)(x) = p(q(x))
        let t = CayleyTable::from_fn(6, |a, b| {
            let (p, q) = (perms[a], perms[b]);
            idx([p[q[0]], p[q[1]], p[q[2]]])
        })
        .expect("in range");
        Self::from_table(t).expect("S3 is a group")
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table.mul(a, b)
    }

    pub fn inv(&self, g: ElementId) -> ElementId {
        self.inverse[g]
    }

    pub fn label(&self, g: ElementId) -> &str {
        &self.labels[g]
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn trivial_subgroup(&self) -> ElemSet {
        ElemSet::singleton(self.identity)
    }

    pub fn is_subgroup(&self, h: &ElemSet) -> bool {
        h.contains(self.identity)
            && h.iter().all(|a| h.contains(self.inv(a)) && h.iter().all(|b| h.contains(self.mul(a, b))))
    }

    /// Normality by conjugation scan.
    pub fn is_normal(&self, h: &ElemSet) -> bool {
        self.is_subgroup(h)
            && (0..self.len()).all(|g| h.iter().all(|x| h.contains(self.mul(self.mul(g, x), self.inv(g)))))
    }
}

/// Inputs for the quotient family: a semilattice `E`, a group `G` and a
/// normal subgroup `N_x` for every `x` in `E`.
#[derive(Debug, Clone)]
pub struct ExelFamilySpec {
    pub base: Semilattice,
    pub base_labels: Vec<String>,
    pub group: Group,
    /// indexed by elements of `base`
    pub normal_subgroups: Vec<ElemSet>,
}

impl ExelFamilySpec {
    pub fn check(&self) -> Result<(), ConstructionError> {
        let e = &self.base;
        if self.normal_subgroups.len() != e.len() {
            return Err(ConstructionError::SpecViolation(format!(
                "{} subgroups given for {} semilattice elements",
                self.normal_subgroups.len(),
                e.len()
            )));
        }
        for (x, n) in self.normal_subgroups.iter().enumerate() {
            if !self.group.is_normal(n) {
                return Err(ConstructionError::SpecViolation(format!("N_{x} = {n} is not a normal subgroup")));
            }
        }
        if self.normal_subgroups[e.zero()] != self.group.all() {
            return Err(ConstructionError::SpecViolation("N_0 != G".into()));
        }
        for x in 0..e.len() {
            for y in e.above(x).iter() {
                if !self.normal_subgroups[y].is_subset(&self.normal_subgroups[x]) {
                    return Err(ConstructionError::SpecViolation(format!(
                        "{x} <= {y} but N_{x} does not contain N_{y}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `S(E, G, {N_x}) = (E x G) / ~`, with `(x,g) ~ (y,h)` iff `x = y` and
/// `h^-1 g` lies in `N_x`.
#[derive(Debug, Clone)]
pub struct ExelFamily {
    pub semigroup: InverseSemigroup,
    /// class of `(x, g)`, indexed by `x * |G| + g`
    pub class_of: Vec<ElementId>,
    /// `(x, g)` representative of each class, least `g` first
    pub representatives: Vec<(ElementId, ElementId)>,
    group_len: usize,
}

impl ExelFamily {
    /// The element `[x, g]`.
    pub fn class(&self, x: ElementId, g: ElementId) -> ElementId {
        self.class_of[x * self.group_len + g]
    }
}

pub fn exel_family(spec: &ExelFamilySpec) -> Result<ExelFamily, ConstructionError> {
    spec.check()?;
    let e = &spec.base;
    let g = &spec.group;
    let m = g.len();
    let n = e.len() * m;
    if n > crate::bits::MAX_ELEMENTS {
        return Err(ConstructionError::SizeCap {
            what: "|E| * |G|",
            value: n,
            max: crate::bits::MAX_ELEMENTS,
        });
    }
    let product = CayleyTable::from_fn(n, |a, b| {
        let (x, gx) = (a / m, a % m);
        let (y, hy) = (b / m, b % m);
        e.meet(x, y) * m + g.mul(gx, hy)
    })?;
    // label (x, g) by (x, least member of the coset g N_x)
    let labels: Vec<(usize, usize)> = (0..n)
        .map(|a| {
            let (x, gx) = (a / m, a % m);
            let coset_min = spec.normal_subgroups[x]
                .iter()
                .map(|k| g.mul(gx, k))
                .min()
                .expect("subgroups are nonempty");
            (x, coset_min)
        })
        .collect();
    let congruence = Congruence::from_labels(&labels);
    let q = quotient(&product, &congruence)?;
    let representatives: Vec<(usize, usize)> = congruence
        .representatives()
        .into_iter()
        .map(|a| (a / m, a % m))
        .collect();
    let class_labels = representatives
        .iter()
        .map(|&(x, h)| format!("[{},{}]", spec.base_labels[x], g.label(h)))
        .collect();
    let semigroup = q.semigroup.with_labels(class_labels)?;
    let family = ExelFamily {
        semigroup,
        class_of: (0..n).map(|a| congruence.class_of(a)).collect(),
        representatives,
        group_len: m,
    };

    let one = g.identity();
    if family.semigroup.zero() != family.class(e.zero(), one) {
        return Err(ConstructionError::SpecViolation("[0,1] is not the zero".into()));
    }
    let expected: ElemSet = (0..e.len()).map(|x| family.class(x, one)).collect();
    if family.semigroup.idempotents() != expected || expected.len() != e.len() {
        return Err(ConstructionError::SpecViolation("E(S) is not {[x,1]} with x -> [x,1] injective".into()));
    }
    for x in 0..e.len() {
        for y in 0..e.len() {
            if family.semigroup.mul(family.class(x, one), family.class(y, one)) != family.class(e.meet(x, y), one) {
                return Err(ConstructionError::SpecViolation(format!("x -> [x,1] does not preserve {x}^{y}")));
            }
        }
    }
    Ok(family)
}

/// The four-element Boolean algebra `{0, e1, e2, 1}` as a semilattice;
/// `e1 = (1,0)` is index 1, `e2 = (0,1)` is index 2, `1` is index 3.
pub fn boolean4_base() -> (Semilattice, Vec<String>) {
    (Semilattice::powerset(2), ["0", "e1", "e2", "1"].map(String::from).to_vec())
}

/// The quotient family over `{0, e1, e2, 1}` with `N_0 = G`,
/// `N_{e_i} = n_i` and `N_1 = {1}`.
pub fn exel_boolean4(group: Group, n1: ElemSet, n2: ElemSet) -> Result<ExelFamily, ConstructionError> {
    let (base, base_labels) = boolean4_base();
    let trivial = group.trivial_subgroup();
    let all = group.all();
    let spec = ExelFamilySpec {
        base,
        base_labels,
        normal_subgroups: vec![all, n1, n2, trivial],
        group,
    };
    exel_family(&spec)
}

/// `G = Z/2 = {1, n}` with `N_{e1} = N_{e2} = G`, and the pair
/// `s = [1,1]`, `t = [1,n]`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub family: ExelFamily,
    pub s: ElementId,
    pub t: ElementId,
}

pub fn counterexample_instance() -> Counterexample {
    let group = Group::cyclic(2).with_labels(vec!["1".into(), "n".into()]);
    let all = group.all();
    let family = exel_boolean4(group, all, all).expect("valid family");
    let s = family.class(3, 0);
    let t = family.class(3, 1);
    let semigroup = family.semigroup.clone().with_name("exel-z2");
    Counterexample {
        family: ExelFamily { semigroup, ..family },
        s,
        t,
    }
}
