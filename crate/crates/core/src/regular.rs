//! The regular representation of an inverse semigroup on its ultrafilters.
//!
//! `Omega` is the set of ultrafilters of `S` under the natural order.
//! For an idempotent `e`, `Omega_e` collects the ultrafilters `xi` with
//! `e xi` inside `xi`, and `lambda_s` sends `xi` in `Omega_{s*s}` to the
//! up-closure of `s xi`, which lands in `Omega_{ss*}`.
//!
//! Construction checks every law it relies on and reports a
//! [`RegularError::TheoremViolation`] if one fails; that can only
//! happen through a bug.

use thiserror::Error;

use crate::bits::ElemSet;
use crate::filters::{ultrafilters, Filter};
use crate::partial::PartialBijection;
use crate::semigroup::{AlgebraError, ElementId, IdempotentLattice, InverseSemigroup};
use crate::semilattice::{LatticeError, LatticeRepresentation, TightVerdict, TightnessOptions, EXHAUSTIVE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularError {
    #[error("{0} is not idempotent")]
    NotIdempotent(ElementId),
    #[error("DomainViolation: s*s xi is not inside xi for s={s}, xi={filter}")]
    DomainViolation { s: ElementId, filter: Filter },
    #[error("TheoremViolation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn violation(msg: impl Into<String>) -> RegularError {
    RegularError::TheoremViolation(msg.into())
}

/// `e xi = { e t : t in xi }`, as a plain set.
pub fn act(s: &InverseSemigroup, e: ElementId, filter: &Filter) -> ElemSet {
    filter.members().iter().map(|t| s.mul(e, t)).collect()
}

/// The ultrafilters of `S` with the sets `Omega_e`.
#[derive(Debug, Clone)]
pub struct UltrafilterSpace<'a> {
    source: &'a InverseSemigroup,
    points: Vec<Filter>,
    /// indexed by element; `Some` exactly on idempotents
    omega: Vec<Option<ElemSet>>,
}

impl<'a> UltrafilterSpace<'a> {
    pub fn new(source: &'a InverseSemigroup) -> Result<Self, RegularError> {
        let points = ultrafilters(source);
        let mut omega = vec![None; source.len()];
        for e in source.idempotents().iter() {
            let mut members = ElemSet::empty();
            for (i, xi) in points.iter().enumerate() {
                // et != 0 for all t in xi, for an ultrafilter
                let fast = xi.members().iter().all(|t| source.mul(e, t) != source.zero());
                let direct = act(source, e, xi).is_subset(&xi.members());
                if fast != direct {
                    return Err(violation(format!(
                        "membership tests disagree for e={e}, xi={xi}: et!=0 gives {fast}, e xi in xi gives {direct}"
                    )));
                }
                if fast {
                    members.insert(i);
                }
            }
            omega[e] = Some(members);
        }
        Ok(UltrafilterSpace { source, points, omega })
    }

    pub fn source(&self) -> &'a InverseSemigroup {
        self.source
    }

    pub fn points(&self) -> &[Filter] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.points.len())
    }

    /// Index of an ultrafilter among the points.
    pub fn point_of(&self, filter: &Filter) -> Option<usize> {
        self.points.binary_search(filter).ok()
    }

    /// The least element of a point, which generates it.
    pub fn generator(&self, point: usize) -> ElementId {
        self.points[point].minimum(self.source).expect("finite filters are principal")
    }

    pub fn omega_e(&self, e: ElementId) -> Result<ElemSet, RegularError> {
        self.omega
            .get(e)
            .copied()
            .flatten()
            .ok_or(RegularError::NotIdempotent(e))
    }

    /// `lambda_s(xi)`: the filter generated by `s xi`.
    pub fn lambda_apply(&self, s: ElementId, filter: &Filter) -> Result<Filter, RegularError> {
        let sg = self.source;
        let source_idem = sg.source(s);
        if !act(sg, source_idem, filter).is_subset(&filter.members()) {
            return Err(RegularError::DomainViolation { s, filter: *filter });
        }
        let image = act(sg, s, filter);
        let members = image
            .iter()
            .fold(ElemSet::empty(), |acc, u| acc.union(&sg.up_set(u)));
        let out = Filter::checked(sg, members)
            .map_err(|v| violation(format!("lambda_{s}({filter}) is not a filter: {v:?}")))?;
        if !act(sg, sg.range(s), &out).is_subset(&members) {
            return Err(violation(format!("ss* lambda_{s}({filter}) is not inside lambda_{s}({filter})")));
        }
        if !image.is_subset(&members) {
            return Err(violation(format!("s xi is not inside lambda_{s}({filter})")));
        }
        if self.point_of(filter).is_some() && self.point_of(&out).is_none() {
            return Err(violation(format!(
                "lambda_{s} moves the ultrafilter {filter} to {out}, which is not maximal"
            )));
        }
        Ok(out)
    }

    /// `lambda_s` as a partial bijection of the points.
    pub fn lambda(&self, s: ElementId) -> Result<PartialBijection, RegularError> {
        let domain = self.omega_e(self.source.source(s))?;
        let mut map = vec![None; self.len()];
        for i in domain.iter() {
            let image = self.lambda_apply(s, &self.points[i])?;
            map[i] = Some(
                self.point_of(&image)
                    .ok_or_else(|| violation(format!("lambda_{s} leaves the ultrafilter space")))?,
            );
        }
        PartialBijection::new(map).map_err(|err| violation(format!("lambda_{s} is not injective: {err:?}")))
    }
}

/// `s -> lambda_s`, checked.
#[derive(Debug, Clone)]
pub struct RegularRepresentation<'a> {
    space: UltrafilterSpace<'a>,
    lambdas: Vec<PartialBijection>,
    idempotents: IdempotentLattice,
    tightness: TightVerdict,
}

impl<'a> RegularRepresentation<'a> {
    pub fn new(source: &'a InverseSemigroup) -> Result<Self, RegularError> {
        let space = UltrafilterSpace::new(source)?;
        let lambdas = source
            .elements()
            .map(|s| space.lambda(s))
            .collect::<Result<Vec<_>, _>>()?;
        let idempotents = source.idempotent_semilattice()?;
        let mut rep = RegularRepresentation {
            space,
            lambdas,
            idempotents,
            tightness: TightVerdict::Tight,
        };
        rep.check_laws()?;
        let options = if rep.idempotents.len() <= EXHAUSTIVE_LIMIT {
            TightnessOptions::exhaustive()
        } else {
            TightnessOptions::simplified()
        };
        rep.tightness = rep.idempotent_restriction().is_tight(options)?;
        if !rep.tightness.is_tight() {
            return Err(violation(format!(
                "idempotent restriction is not tight: {:?}",
                rep.tightness
            )));
        }
        Ok(rep)
    }

    fn check_laws(&self) -> Result<(), RegularError> {
        let s = self.space.source;
        for a in s.elements() {
            let la = &self.lambdas[a];
            if la.domain() != self.space.omega_e(s.source(a))? {
                return Err(violation(format!("dom lambda_{a} != Omega_(s*s)")));
            }
            if la.range() != self.space.omega_e(s.range(a))? {
                return Err(violation(format!("ran lambda_{a} != Omega_(ss*)")));
            }
            if self.lambdas[s.inv(a)] != la.inverse() {
                return Err(violation(format!("lambda_(s*) != lambda_s^-1 for s={a}")));
            }
            for b in s.elements() {
                // lambda_b after lambda_a is lambda_{ba}
                let composite = self.lambdas[b].after(la).expect("same ground set");
                if composite != self.lambdas[s.mul(b, a)] {
                    return Err(violation(format!("lambda_{b} lambda_{a} != lambda_({b}{a})")));
                }
            }
        }
        for e in s.idempotents().iter() {
            for f in s.idempotents().iter() {
                let both = self.space.omega_e(e)?.intersection(&self.space.omega_e(f)?);
                if both != self.space.omega_e(s.mul(e, f))? {
                    return Err(violation(format!("Omega_{e} n Omega_{f} != Omega_(ef)")));
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &UltrafilterSpace<'a> {
        &self.space
    }

    pub fn lambda(&self, s: ElementId) -> &PartialBijection {
        &self.lambdas[s]
    }

    pub fn lambdas(&self) -> &[PartialBijection] {
        &self.lambdas
    }

    pub fn idempotents(&self) -> &IdempotentLattice {
        &self.idempotents
    }

    /// `e -> Omega_e` on `E(S)`, as a representation in `P(Omega)`.
    pub fn idempotent_restriction(&self) -> LatticeRepresentation<'_> {
        let map = self
            .idempotents
            .elements
            .iter()
            .map(|&e| self.space.omega_e(e).expect("idempotent"))
            .collect();
        LatticeRepresentation::new(&self.idempotents.lattice, self.space.len(), map)
            .expect("Omega_e n Omega_f = Omega_ef was checked")
    }

    pub fn tightness(&self) -> &TightVerdict {
        &self.tightness
    }

    pub fn is_faithful(&self) -> bool {
        let n = self.lambdas.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.lambdas[a] != self.lambdas[b]))
    }
}

pub fn regular_representation(source: &InverseSemigroup) -> Result<RegularRepresentation<'_>, RegularError> {
    RegularRepresentation::new(source)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SameOmega {
    pub equal: bool,
    /// nonzero idempotent below `e` disjoint from `ef`, if any
    pub e_witness: Option<ElementId>,
    pub f_witness: Option<ElementId>,
}

impl SameOmega {
    pub fn ef_dense_in_both(&self) -> bool {
        self.e_witness.is_none() && self.f_witness.is_none()
    }
}

/// Compare `Omega_e` with `Omega_f` and, independently, test whether `ef`
/// is dense in both `e` and `f`. The two answers must agree.
pub fn same_omega_diagnosis(
    space: &UltrafilterSpace<'_>,
    idempotents: &IdempotentLattice,
    e: ElementId,
    f: ElementId,
) -> Result<SameOmega, RegularError> {
    let s = space.source();
    let equal = space.omega_e(e)? == space.omega_e(f)?;
    let ie = idempotents.index_of(e).ok_or(RegularError::NotIdempotent(e))?;
    let jf = idempotents.index_of(f).ok_or(RegularError::NotIdempotent(f))?;
    let ef = idempotents.index_of(s.mul(e, f)).expect("idempotents are closed under products");
    let lattice = &idempotents.lattice;
    let e_witness = lattice.density_witness(ef, ie)?.map(|z| idempotents.element(z));
    let f_witness = lattice.density_witness(ef, jf)?.map(|z| idempotents.element(z));
    let out = SameOmega {
        equal,
        e_witness,
        f_witness,
    };
    if out.equal != out.ef_dense_in_both() {
        return Err(violation(format!(
            "Omega_{e} == Omega_{f} is {equal} but density of ef gives {}",
            out.ef_dense_in_both()
        )));
    }
    Ok(out)
}
