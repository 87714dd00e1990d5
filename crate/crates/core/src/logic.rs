//! Clauses, theories and entailment over a finite domain.
//!
//! A clause is read disjunctively: `w ⊨ X` when some member of `X` lies
//! below `w`. A closed theory is represented by its model set, which is
//! always upward closed; clause membership is recovered on demand.

use std::ops::Deref;

use crate::poset::{Domain, ElementId, ElementSet};

/// A finite set of domain elements, possibly empty.
///
/// Stored as given. [`canonical_clause`] is the explicit normalisation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause(ElementSet);

impl Clause {
    pub fn new(members: ElementSet) -> Self {
        Clause(members)
    }

    /// The unsatisfiable clause `{}`.
    pub fn empty(d: &Domain) -> Self {
        Clause(d.empty_set())
    }

    pub fn singleton(d: &Domain, x: ElementId) -> Self {
        Clause(d.set_of([x]))
    }

    pub fn of(d: &Domain, members: impl IntoIterator<Item = ElementId>) -> Self {
        Clause(d.set_of(members))
    }

    pub fn members(&self) -> &ElementSet {
        &self.0
    }

    pub fn into_members(self) -> ElementSet {
        self.0
    }

    pub fn display(&self, d: &Domain) -> String {
        let names: Vec<&str> = self.0.iter().map(|x| d.name(x)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl Deref for Clause {
    type Target = ElementSet;

    fn deref(&self) -> &ElementSet {
        &self.0
    }
}

impl From<ElementSet> for Clause {
    fn from(members: ElementSet) -> Self {
        Clause(members)
    }
}

/// A set of clauses. The empty theory is modelled by every element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub clauses: Vec<Clause>,
}

impl Theory {
    pub fn new(clauses: Vec<Clause>) -> Self {
        Theory { clauses }
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

impl FromIterator<Clause> for Theory {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        Theory { clauses: iter.into_iter().collect() }
    }
}

/// A logically closed theory, held as its (upward-closed) model set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedTheory {
    model_set: ElementSet,
}

impl ClosedTheory {
    /// Wraps a model set; returns `None` unless it is upward closed.
    pub fn from_upset(d: &Domain, model_set: ElementSet) -> Option<Self> {
        d.is_upward_closed(&model_set).then_some(ClosedTheory { model_set })
    }

    pub fn model_set(&self) -> &ElementSet {
        &self.model_set
    }

    pub fn is_consistent(&self) -> bool {
        !self.model_set.is_empty()
    }

    /// Theory inclusion `self ⊆ other`, which reverses model-set inclusion.
    pub fn is_subtheory_of(&self, other: &ClosedTheory) -> bool {
        other.model_set.is_subset(&self.model_set)
    }
}

pub fn satisfies(d: &Domain, w: ElementId, x: &Clause) -> bool {
    x.intersects(d.down(w))
}

pub fn models_theory(d: &Domain, w: ElementId, t: &Theory) -> bool {
    t.clauses.iter().all(|x| satisfies(d, w, x))
}

/// Elements satisfying a clause, i.e. its upward closure.
pub fn clause_models(d: &Domain, x: &Clause) -> ElementSet {
    d.upward_closure(x)
}

pub fn model_set(d: &Domain, t: &Theory) -> ElementSet {
    let mut models = d.all();
    for x in &t.clauses {
        models.intersect_with(&clause_models(d, x));
    }
    models
}

/// `T ⊨ X`, decided on the minimal models of `T`.
pub fn entails(d: &Domain, t: &Theory, x: &Clause) -> bool {
    let minimal = d.minimal_elements(&model_set(d, t));
    minimal.iter().all(|w| satisfies(d, w, x))
}

/// `T ⊨ X`, decided by scanning every element of the domain.
pub fn entails_full_scan(d: &Domain, t: &Theory, x: &Clause) -> bool {
    d.ids().all(|w| !models_theory(d, w, t) || satisfies(d, w, x))
}

/// Smyth preorder `X ⊑# Y`: every member of `Y` lies above some member of `X`.
pub fn smyth_leq(d: &Domain, x: &Clause, y: &Clause) -> bool {
    y.is_subset(&d.upward_closure(x))
}

pub fn canonical_clause(d: &Domain, x: &Clause) -> Clause {
    Clause(d.minimal_elements(x))
}

pub fn close(d: &Domain, t: &Theory) -> ClosedTheory {
    ClosedTheory { model_set: model_set(d, t) }
}

pub fn closed_contains(d: &Domain, ct: &ClosedTheory, x: &Clause) -> bool {
    ct.model_set.iter().all(|w| satisfies(d, w, x))
}
