//! Disjunctive programs over a domain, with default negation.
//!
//! A rule `Y <- C, ~N` fires when its positive body `C` holds and `N` does
//! not. Answer models are elements that satisfy the consequences of their
//! own reduct; min-answer models are additionally minimal models of it.
//!
//! In a finite domain the elements satisfying `cons(Q)` for a negation-free
//! `Q` are exactly `↑Mod(Q)`: the antichain of minimal models is itself a
//! clause entailed by `Q`. The answer-model check therefore looks for a model
//! of the reduct below `w` instead of materialising `cons`.

use crate::error::{Error, Result};
use crate::logic::{satisfies, Clause, ClosedTheory};
use crate::poset::{Domain, ElementId, ElementSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedRule {
    pub head: Clause,
    pub pos_body: Clause,
    /// Default-negated clause; `{}` marks a trivially extended rule.
    pub neg_body: Clause,
}

impl ExtendedRule {
    pub fn new(head: Clause, pos_body: Clause, neg_body: Clause) -> Self {
        ExtendedRule { head, pos_body, neg_body }
    }

    pub fn plain(d: &Domain, head: Clause, pos_body: Clause) -> Self {
        ExtendedRule { head, pos_body, neg_body: Clause::empty(d) }
    }

    pub fn is_trivially_extended(&self) -> bool {
        self.neg_body.is_empty()
    }

    /// Elements at which the rule holds (body false or head true).
    fn holds_at(&self, d: &Domain) -> ElementSet {
        let mut ok = d.upward_closure(&self.pos_body).complement();
        ok.union_with(&d.upward_closure(&self.head));
        ok
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<ExtendedRule>,
}

impl Program {
    pub fn new(rules: Vec<ExtendedRule>) -> Self {
        Program { rules }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn is_negation_free(&self) -> bool {
        self.rules.iter().all(ExtendedRule::is_trivially_extended)
    }

    fn require_negation_free(&self) -> Result<()> {
        match self.rules.iter().position(|r| !r.is_trivially_extended()) {
            Some(rule) => Err(Error::NegationNotAllowed { rule }),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnswerKind {
    MinAnswer,
    Answer,
    None,
}

/// Diagnostic summary of one element against a program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerModelReport {
    pub element: ElementId,
    pub reduct_size: usize,
    pub kind: AnswerKind,
    /// Least-index minimal model of the reduct below `element`, if any.
    pub witness: Option<ElementId>,
}

fn models_unchecked(d: &Domain, rules: &[ExtendedRule]) -> ElementSet {
    let mut models = d.all();
    for rule in rules {
        models.intersect_with(&rule.holds_at(d));
    }
    models
}

pub fn model_of_program(d: &Domain, w: ElementId, p: &Program) -> Result<bool> {
    p.require_negation_free()?;
    Ok(p.rules.iter().all(|r| !satisfies(d, w, &r.pos_body) || satisfies(d, w, &r.head)))
}

/// All models of a negation-free program.
pub fn program_models(d: &Domain, p: &Program) -> Result<ElementSet> {
    p.require_negation_free()?;
    Ok(models_unchecked(d, &p.rules))
}

/// `cons(P)` as a closed theory with model set `↑Mod(P)`.
pub fn cons_program(d: &Domain, p: &Program) -> Result<ClosedTheory> {
    let up = d.upward_closure(&program_models(d, p)?);
    Ok(ClosedTheory::from_upset(d, up).expect("upward closure is an upset"))
}

pub fn minimal_models(d: &Domain, p: &Program) -> Result<Vec<ElementId>> {
    Ok(d.minimal_elements(&program_models(d, p)?).to_vec())
}

/// The reduct `P/w`: rules whose negated clause `w` satisfies are dropped,
/// the rest lose their negated part.
pub fn reduct(d: &Domain, p: &Program, w: ElementId) -> Program {
    let rules = p
        .rules
        .iter()
        .filter(|r| !satisfies(d, w, &r.neg_body))
        .map(|r| ExtendedRule::plain(d, r.head.clone(), r.pos_body.clone()))
        .collect();
    Program { rules }
}

fn reduct_models(d: &Domain, p: &Program, w: ElementId) -> (usize, ElementSet) {
    let kept: Vec<ExtendedRule> = p.rules.iter().filter(|r| !satisfies(d, w, &r.neg_body)).cloned().collect();
    (kept.len(), models_unchecked(d, &kept))
}

/// Returns a model of `P/w` lying below `w` (the least-index minimal one),
/// when `w` is an answer model.
pub fn answer_witness(d: &Domain, p: &Program, w: ElementId) -> Option<ElementId> {
    let (_, mut models) = reduct_models(d, p, w);
    models.intersect_with(d.down(w));
    d.minimal_elements(&models).first()
}

pub fn is_answer_model(d: &Domain, p: &Program, w: ElementId) -> bool {
    answer_witness(d, p, w).is_some()
}

/// `w` is a minimal model of its own reduct.
pub fn is_min_answer_model(d: &Domain, p: &Program, w: ElementId) -> bool {
    let (_, mut models) = reduct_models(d, p, w);
    if !models.contains(w) {
        return false;
    }
    models.intersect_with(d.down(w));
    models.len() == 1
}

pub fn enumerate_answer_models(d: &Domain, p: &Program) -> Vec<ElementId> {
    d.ids().filter(|&w| is_answer_model(d, p, w)).collect()
}

pub fn enumerate_min_answer_models(d: &Domain, p: &Program) -> Vec<ElementId> {
    d.ids().filter(|&w| is_min_answer_model(d, p, w)).collect()
}

pub fn report(d: &Domain, p: &Program, w: ElementId) -> AnswerModelReport {
    let (reduct_size, models) = reduct_models(d, p, w);
    let mut below = models.clone();
    below.intersect_with(d.down(w));
    let witness = d.minimal_elements(&below).first();
    let kind = if models.contains(w) && below.len() == 1 {
        AnswerKind::MinAnswer
    } else if witness.is_some() {
        AnswerKind::Answer
    } else {
        AnswerKind::None
    };
    AnswerModelReport { element: w, reduct_size, kind, witness }
}
