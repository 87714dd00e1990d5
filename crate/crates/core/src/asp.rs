//! Classical extended disjunctive programs and their link to domain programs
//! over the truth-value domain `T^V`.
//!
//! Literals over a finite vocabulary `V` are packed into bit masks: bit
//! `2·v` is the atom `v`, bit `2·v + 1` its classical negation `-v`. The
//! inconsistent total set `V±` is symbolic and never a domain element,
//! because it has no supremum in `T^V`.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::logic::{satisfies, Clause};
use crate::poset::{Domain, ElementId, SYNTHETIC_BOTTOM};
use crate::program::{self, ExtendedRule, Program};

pub const DEFAULT_MAX_VARIABLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn complement(self) -> Self {
        Literal { var: self.var, negated: !self.negated }
    }

    fn bit(self) -> u32 {
        1 << (2 * self.var + self.negated as usize)
    }
}

/// A set of literals over the vocabulary, as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiteralSet(pub u32);

impl LiteralSet {
    pub fn of(literals: impl IntoIterator<Item = Literal>) -> Self {
        LiteralSet(literals.into_iter().fold(0, |m, l| m | l.bit()))
    }

    pub fn contains(self, l: Literal) -> bool {
        self.0 & l.bit() != 0
    }

    pub fn is_subset(self, other: LiteralSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: LiteralSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_consistent(self) -> bool {
        let pos = self.0 & 0x5555_5555;
        let neg = (self.0 >> 1) & 0x5555_5555;
        pos & neg == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn literals(self) -> impl Iterator<Item = Literal> {
        (0..32).filter(move |b| self.0 & (1 << b) != 0).map(|b| Literal { var: b / 2, negated: b % 2 == 1 })
    }
}

/// Declared propositional variables, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    names: Vec<String>,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(Vocabulary { names })
    }

    /// Variables `p0, p1, ...`.
    pub fn numbered(count: usize) -> Self {
        Vocabulary { names: (0..count).map(|i| format!("p{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Interns a variable, returning its index.
    pub fn intern(&mut self, name: &str) -> usize {
        match self.index(name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    /// `V±`, every literal over the vocabulary.
    pub fn total(&self) -> LiteralSet {
        LiteralSet(if self.names.is_empty() { 0 } else { (1u32 << (2 * self.names.len())) - 1 })
    }

    pub fn literal_name(&self, l: Literal) -> String {
        if l.negated { format!("-{}", self.names[l.var]) } else { self.names[l.var].clone() }
    }

    pub fn format_set(&self, s: LiteralSet) -> String {
        let parts: Vec<String> = s.literals().map(|l| self.literal_name(l)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    fn check_bound(&self, limit: usize) -> Result<()> {
        if self.len() > limit {
            return Err(Error::BoundExceeded { what: "variable count", limit, actual: self.len() });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalRule {
    pub head: Vec<Literal>,
    pub pos: Vec<Literal>,
    pub neg: Vec<Literal>,
}

impl ClassicalRule {
    fn head_set(&self) -> LiteralSet {
        LiteralSet::of(self.head.iter().copied())
    }

    fn pos_set(&self) -> LiteralSet {
        LiteralSet::of(self.pos.iter().copied())
    }

    fn neg_set(&self) -> LiteralSet {
        LiteralSet::of(self.neg.iter().copied())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalProgram {
    pub vocabulary: Vocabulary,
    pub rules: Vec<ClassicalRule>,
}

impl ClassicalProgram {
    pub fn is_negation_free(&self) -> bool {
        self.rules.iter().all(|r| r.neg.is_empty())
    }

    fn require_negation_free(&self) -> Result<()> {
        match self.rules.iter().position(|r| !r.neg.is_empty()) {
            Some(rule) => Err(Error::NegationNotAllowed { rule }),
            None => Ok(()),
        }
    }

    /// Rules as `(head, pos, neg)` sets, ignoring literal order and repeats.
    pub fn normalized(&self) -> Vec<(LiteralSet, LiteralSet, LiteralSet)> {
        self.rules.iter().map(|r| (r.head_set(), r.pos_set(), r.neg_set())).collect()
    }
}

/// An answer set: a consistent literal set, or the inconsistent `V±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnswerSet {
    Proper(LiteralSet),
    InconsistentTotal,
}

impl AnswerSet {
    fn from_mask(vocab: &Vocabulary, s: LiteralSet) -> Self {
        if s.is_consistent() {
            AnswerSet::Proper(s)
        } else {
            debug_assert_eq!(s, vocab.total());
            AnswerSet::InconsistentTotal
        }
    }

    pub fn display(&self, vocab: &Vocabulary) -> String {
        match self {
            AnswerSet::Proper(s) => vocab.format_set(*s),
            AnswerSet::InconsistentTotal => "V±".to_string(),
        }
    }
}

/// The domain `T^V` of consistent literal sets ordered by inclusion.
#[derive(Clone, Debug)]
pub struct TvDomain {
    pub vocabulary: Vocabulary,
    pub domain: Domain,
    sets: Vec<LiteralSet>,
    index: HashMap<LiteralSet, ElementId>,
}

/// Builds `T^V` over a vocabulary of at most `max_variables` variables.
///
/// Elements are listed by base-3 counting (digit per variable: unknown,
/// true, false), so the empty set `_bot_` comes first. Names join literals
/// with `&`, e.g. `p&-q`.
pub fn tv_domain(vocabulary: &Vocabulary, max_variables: usize) -> Result<TvDomain> {
    vocabulary.check_bound(max_variables)?;
    let k = vocabulary.len();
    let count = 3usize.pow(k as u32);
    let mut sets = Vec::with_capacity(count);
    for code in 0..count {
        let mut c = code;
        let mut lits = Vec::new();
        for var in 0..k {
            match c % 3 {
                1 => lits.push(Literal::pos(var)),
                2 => lits.push(Literal::neg(var)),
                _ => {}
            }
            c /= 3;
        }
        sets.push(LiteralSet::of(lits));
    }
    let names: Vec<String> = sets
        .iter()
        .map(|s| {
            if s.is_empty() {
                SYNTHETIC_BOTTOM.to_string()
            } else {
                s.literals().map(|l| vocabulary.literal_name(l)).collect::<Vec<_>>().join("&")
            }
        })
        .collect();
    let domain = Domain::from_relation(names, |i, j| sets[i].is_subset(sets[j]), false)?;
    let index = sets.iter().enumerate().map(|(i, s)| (*s, ElementId::new(i))).collect();
    Ok(TvDomain { vocabulary: vocabulary.clone(), domain, sets, index })
}

impl TvDomain {
    pub fn literal_set(&self, e: ElementId) -> LiteralSet {
        self.sets[e.index()]
    }

    /// The element for a consistent literal set.
    pub fn element(&self, s: LiteralSet) -> Option<ElementId> {
        self.index.get(&s).copied()
    }

    pub fn atom(&self, l: Literal) -> ElementId {
        self.index[&LiteralSet::of([l])]
    }

    /// `w' = {p ∈ V± | w ⊨ {p}}`, computed through clause satisfaction.
    pub fn atoms_satisfied(&self, w: ElementId) -> LiteralSet {
        let mut out = LiteralSet::default();
        for var in 0..self.vocabulary.len() {
            for l in [Literal::pos(var), Literal::neg(var)] {
                if satisfies(&self.domain, w, &Clause::singleton(&self.domain, self.atom(l))) {
                    out.0 |= l.bit();
                }
            }
        }
        out
    }

    /// `⊔X` in the domain, taken as the unique minimal upper bound of the
    /// atoms of `X`; `None` when it does not exist.
    pub fn join(&self, x: LiteralSet) -> Option<ElementId> {
        let atoms = self.domain.set_of(x.literals().map(|l| self.atom(l)));
        let mub = self.domain.mub(&atoms);
        if mub.len() == 1 { mub.first() } else { None }
    }
}

/// `X` is closed by the rules of a negation-free program.
pub fn closed_by_rules(x: LiteralSet, p: &ClassicalProgram) -> Result<bool> {
    p.require_negation_free()?;
    Ok(closed_unchecked(x, p))
}

fn closed_unchecked(x: LiteralSet, p: &ClassicalProgram) -> bool {
    p.rules.iter().all(|r| !r.pos_set().is_subset(x) || r.head_set().intersects(x))
}

/// Both answer-set conditions: `X` is consistent or equal to `V±`, and `X`
/// is closed by rules.
fn meets_conditions(x: LiteralSet, total: LiteralSet, p: &ClassicalProgram) -> bool {
    (x.is_consistent() || x == total) && closed_unchecked(x, p)
}

/// `α(P)` for a negation-free program: the minimal sets meeting both
/// answer-set conditions. Computed by filtering every subset of `V±` and
/// comparing pairwise.
pub fn alpha(p: &ClassicalProgram) -> Result<Vec<AnswerSet>> {
    p.require_negation_free()?;
    p.vocabulary.check_bound(DEFAULT_MAX_VARIABLES)?;
    let total = p.vocabulary.total();
    let candidates: Vec<LiteralSet> =
        (0..=total.0).map(LiteralSet).filter(|&x| meets_conditions(x, total, p)).collect();
    let mut out: Vec<AnswerSet> = candidates
        .iter()
        .filter(|&&x| !candidates.iter().any(|&y| y != x && y.is_subset(x)))
        .map(|&x| AnswerSet::from_mask(&p.vocabulary, x))
        .collect();
    out.sort();
    Ok(out)
}

/// The Gelfond-Lifschitz transform `P/X`.
pub fn gl_transform(p: &ClassicalProgram, x: LiteralSet) -> ClassicalProgram {
    let rules = p
        .rules
        .iter()
        .filter(|r| !r.neg_set().intersects(x))
        .map(|r| ClassicalRule { head: r.head.clone(), pos: r.pos.clone(), neg: Vec::new() })
        .collect();
    ClassicalProgram { vocabulary: p.vocabulary.clone(), rules }
}

/// `X ∈ α(Q)`, checked by testing every proper subset of `X`.
fn is_minimal_condition_set(x: LiteralSet, total: LiteralSet, q: &ClassicalProgram) -> bool {
    if !meets_conditions(x, total, q) {
        return false;
    }
    let mut sub = x.0;
    while sub != 0 {
        sub = (sub - 1) & x.0;
        if meets_conditions(LiteralSet(sub), total, q) {
            return false;
        }
    }
    true
}

/// Every `X ⊆ V±` with `X ∈ α(P/X)`, by brute force over all candidates.
pub fn answer_sets(p: &ClassicalProgram) -> Result<Vec<AnswerSet>> {
    p.vocabulary.check_bound(DEFAULT_MAX_VARIABLES)?;
    let total = p.vocabulary.total();
    let mut out = Vec::new();
    for x in (0..=total.0).map(LiteralSet) {
        if !x.is_consistent() && x != total {
            continue;
        }
        if is_minimal_condition_set(x, total, &gl_transform(p, x)) {
            out.push(AnswerSet::from_mask(&p.vocabulary, x));
        }
    }
    out.sort();
    Ok(out)
}

fn atom_literal(tv: &TvDomain, e: ElementId) -> Option<Literal> {
    let s = tv.literal_set(e);
    if s.len() == 1 { s.literals().next() } else { None }
}

/// Translates a propositional domain program over `T^V` into its associated
/// classical program.
pub fn associate(tv: &TvDomain, p: &Program) -> Result<ClassicalProgram> {
    let bad = |rule: usize, reason: &str| Error::NotPropositional { rule, reason: reason.to_string() };
    let atoms_of = |rule: usize, clause: &Clause, part: &str| -> Result<Vec<Literal>> {
        clause
            .iter()
            .map(|e| atom_literal(tv, e).ok_or_else(|| bad(rule, &format!("{part} member `{}` is not an atom", tv.domain.name(e)))))
            .collect()
    };
    let mut rules = Vec::with_capacity(p.len());
    for (i, r) in p.rules.iter().enumerate() {
        let head = atoms_of(i, &r.head, "head")?;
        let neg = atoms_of(i, &r.neg_body, "negated")?;
        if r.pos_body.len() != 1 {
            return Err(bad(i, "positive body must be a singleton clause"));
        }
        let body = r.pos_body.first().expect("singleton");
        let pos = tv.literal_set(body).literals().collect();
        rules.push(ClassicalRule { head, pos, neg });
    }
    Ok(ClassicalProgram { vocabulary: tv.vocabulary.clone(), rules })
}

/// Translates a classical program into the propositional program over `T^V`.
/// Positive bodies must be consistent; an empty body becomes `{⊥}`.
pub fn associate_inverse(tv: &TvDomain, p: &ClassicalProgram) -> Result<Program> {
    if tv.vocabulary != p.vocabulary {
        return Err(Error::Invalid("program vocabulary differs from the domain's".into()));
    }
    let d = &tv.domain;
    let mut rules = Vec::with_capacity(p.rules.len());
    for (i, r) in p.rules.iter().enumerate() {
        let body = tv.element(r.pos_set()).ok_or_else(|| Error::NotPropositional {
            rule: i,
            reason: "positive body contains complementary literals".into(),
        })?;
        let head = Clause::of(d, r.head.iter().map(|&l| tv.atom(l)));
        let neg = Clause::of(d, r.neg.iter().map(|&l| tv.atom(l)));
        rules.push(ExtendedRule::new(head, Clause::singleton(d, body), neg));
    }
    Ok(Program::new(rules))
}

/// One named assertion of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub(crate) fn record(&mut self, name: &'static str, failure: Option<String>) {
        self.checks.push(Check { name, passed: failure.is_none(), counterexample: failure });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(cx) = &c.counterexample {
                write!(f, " ({cx})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of checking the min-answer-model / answer-set correspondence on
/// one classical program.
#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub answer_sets: Vec<AnswerSet>,
    /// Min-answer models of the associated domain program, as literal sets.
    pub min_answer_models: Vec<LiteralSet>,
    pub report: VerificationReport,
}

pub fn verify_theorem1(p: &ClassicalProgram) -> Result<Theorem1Report> {
    let tv = tv_domain(&p.vocabulary, DEFAULT_MAX_VARIABLES)?;
    let d = &tv.domain;
    let dp = associate_inverse(&tv, p)?;
    let sets = answer_sets(p)?;
    let mins = program::enumerate_min_answer_models(d, &dp);
    let vocab = &p.vocabulary;
    let mut report = VerificationReport::default();

    let commute = d.ids().find_map(|w| {
        let lhs = associate(&tv, &program::reduct(d, &dp, w)).ok()?.normalized();
        let rhs = gl_transform(p, tv.atoms_satisfied(w)).normalized();
        (lhs != rhs).then(|| format!("reduct at {} differs from the transform", d.name(w)))
    });
    report.record("reduct-commutes-with-association", commute);

    let not_closed = mins.iter().find_map(|&w| {
        let wp = tv.atoms_satisfied(w);
        let q = gl_transform(p, wp);
        (!wp.is_consistent() || !closed_unchecked(wp, &q))
            .then(|| format!("min-answer model {} is not a consistent rule-closed set", d.name(w)))
    });
    report.record("min-answer-model-closed-by-rules", not_closed);

    let consistent: Vec<LiteralSet> =
        sets.iter().filter_map(|s| if let AnswerSet::Proper(x) = s { Some(*x) } else { None }).collect();
    let not_answer = consistent.iter().find_map(|&x| match tv.join(x) {
        None => Some(format!("join of {} does not exist", vocab.format_set(x))),
        Some(e) => (!program::is_answer_model(d, &dp, e))
            .then(|| format!("join of answer set {} is not an answer model", vocab.format_set(x))),
    });
    report.record("answer-set-join-is-answer-model", not_answer);

    let not_set = mins.iter().find_map(|&w| {
        let wp = tv.atoms_satisfied(w);
        (!sets.contains(&AnswerSet::Proper(wp)))
            .then(|| format!("{} is a min-answer model but {} is not an answer set", d.name(w), vocab.format_set(wp)))
    });
    report.record("min-answer-model-is-answer-set", not_set);

    let not_min = consistent.iter().find_map(|&x| match tv.join(x) {
        None => Some(format!("join of {} does not exist", vocab.format_set(x))),
        Some(e) => (!program::is_min_answer_model(d, &dp, e))
            .then(|| format!("join of answer set {} is not a min-answer model", vocab.format_set(x))),
    });
    report.record("answer-set-join-is-min-answer-model", not_min);

    let total_case = if sets.contains(&AnswerSet::InconsistentTotal) {
        if sets.len() != 1 {
            Some("V± is an answer set alongside others".to_string())
        } else if !mins.is_empty() {
            Some(format!("V± is an answer set but {} min-answer models exist", mins.len()))
        } else {
            None
        }
    } else {
        None
    };
    report.record("inconsistent-answer-set-excludes-min-answer-models", total_case);

    let min_answer_models: Vec<LiteralSet> = mins.iter().map(|&w| tv.literal_set(w)).collect();
    Ok(Theorem1Report { answer_sets: sets, min_answer_models, report })
}

#[derive(Clone, Debug)]
pub struct Theorem2Report {
    pub minimally_closed: Vec<AnswerSet>,
    pub minimal_models: Vec<LiteralSet>,
    pub report: VerificationReport,
}

/// Checks minimal models of the associated domain program against the
/// minimally rule-closed sets `α(P')` of a negation-free classical program.
pub fn verify_theorem2(p: &ClassicalProgram) -> Result<Theorem2Report> {
    p.require_negation_free()?;
    let tv = tv_domain(&p.vocabulary, DEFAULT_MAX_VARIABLES)?;
    let d = &tv.domain;
    let dp = associate_inverse(&tv, p)?;
    let closed = alpha(p)?;
    let minimal = program::minimal_models(d, &dp)?;
    let vocab = &p.vocabulary;
    let mut report = VerificationReport::default();

    let fwd = minimal.iter().find_map(|&w| {
        let wp = tv.atoms_satisfied(w);
        (!closed.contains(&AnswerSet::Proper(wp)))
            .then(|| format!("minimal model {} but {} not minimally closed", d.name(w), vocab.format_set(wp)))
    });
    report.record("minimal-model-is-minimally-closed", fwd);

    let back = closed.iter().find_map(|s| match s {
        AnswerSet::InconsistentTotal => None,
        AnswerSet::Proper(x) => match tv.join(*x) {
            None => Some(format!("join of {} does not exist", vocab.format_set(*x))),
            Some(e) => (!minimal.contains(&e))
                .then(|| format!("join of {} is not a minimal model", vocab.format_set(*x))),
        },
    });
    report.record("minimally-closed-join-is-minimal-model", back);

    let total_case = if closed.contains(&AnswerSet::InconsistentTotal) {
        let models = program::program_models(d, &dp)?;
        if closed.len() != 1 {
            Some("V± minimally closed alongside other sets".to_string())
        } else if !models.is_empty() {
            Some(format!("V± minimally closed but {} models exist", models.len()))
        } else {
            None
        }
    } else {
        None
    };
    report.record("inconsistent-closure-excludes-models", total_case);

    let minimal_models = minimal.iter().map(|&w| tv.literal_set(w)).collect();
    Ok(Theorem2Report { minimally_closed: closed, minimal_models, report })
}

/// Shape of randomly generated classical programs.
#[derive(Clone, Copy, Debug)]
pub struct ProgramShape {
    pub max_variables: usize,
    pub max_rules: usize,
    pub max_head: usize,
    pub max_pos: usize,
    pub max_neg: usize,
    pub classical_negation: bool,
}

impl Default for ProgramShape {
    fn default() -> Self {
        ProgramShape { max_variables: 5, max_rules: 8, max_head: 2, max_pos: 2, max_neg: 2, classical_negation: true }
    }
}

impl ProgramShape {
    pub fn negation_free(self) -> Self {
        ProgramShape { max_neg: 0, ..self }
    }
}

/// A random classical program over `p0..p{k-1}` with `1 ≤ k ≤ max_variables`.
/// Positive bodies are kept consistent so the program has an associated
/// domain program.
pub fn random_classical_program<R: Rng>(rng: &mut R, shape: &ProgramShape) -> ClassicalProgram {
    let k = rng.gen_range(1..=shape.max_variables.max(1));
    let vocabulary = Vocabulary::numbered(k);
    let literal = |rng: &mut R| {
        let var = rng.gen_range(0..k);
        if shape.classical_negation && rng.gen_bool(0.3) { Literal::neg(var) } else { Literal::pos(var) }
    };
    let count = rng.gen_range(0..=shape.max_rules);
    let mut rules = Vec::with_capacity(count);
    for _ in 0..count {
        let head: Vec<Literal> = (0..rng.gen_range(0..=shape.max_head)).map(|_| literal(rng)).collect();
        let mut pos: Vec<Literal> = Vec::new();
        for _ in 0..rng.gen_range(0..=shape.max_pos) {
            let l = literal(rng);
            if !pos.contains(&l.complement()) {
                pos.push(l);
            }
        }
        let neg: Vec<Literal> = (0..rng.gen_range(0..=shape.max_neg)).map(|_| literal(rng)).collect();
        rules.push(ClassicalRule { head, pos, neg });
    }
    ClassicalProgram { vocabulary, rules }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prog(vars: &[&str], rules: &[(&[&str], &[&str], &[&str])]) -> ClassicalProgram {
        let vocabulary = Vocabulary::new(vars.iter().copied()).unwrap();
        let lit = |s: &str| match s.strip_prefix('-') {
            Some(v) => Literal::neg(vocabulary.index(v).unwrap()),
            None => Literal::pos(vocabulary.index(s).unwrap()),
        };
        let rules = rules
            .iter()
            .map(|(h, p, n)| ClassicalRule {
                head: h.iter().map(|s| lit(s)).collect(),
                pos: p.iter().map(|s| lit(s)).collect(),
                neg: n.iter().map(|s| lit(s)).collect(),
            })
            .collect();
        ClassicalProgram { vocabulary, rules }
    }

    fn set(p: &ClassicalProgram, lits: &[&str]) -> LiteralSet {
        LiteralSet::of(lits.iter().map(|s| match s.strip_prefix('-') {
            Some(v) => Literal::neg(p.vocabulary.index(v).unwrap()),
            None => Literal::pos(p.vocabulary.index(s).unwrap()),
        }))
    }

    #[test]
    fn tv_of_one_and_two_variables() {
        let tv = tv_domain(&Vocabulary::new(["p"]).unwrap(), 10).unwrap();
        let d = &tv.domain;
        assert_eq!(d.len(), 3);
        assert_eq!(d.bottom(), ElementId::new(0));
        let (p, np) = (d.element("p").unwrap(), d.element("-p").unwrap());
        assert!(!d.leq(p, np) && !d.leq(np, p));
        assert!(!d.consistent_pair(p, np));

        let tv = tv_domain(&Vocabulary::new(["p", "q"]).unwrap(), 10).unwrap();
        let d = &tv.domain;
        assert_eq!(d.len(), 9);
        let pq = d.set_named(&["p", "q"]).unwrap();
        assert_eq!(d.mub(&pq), d.set_named(&["p&q"]).unwrap());
    }

    #[test]
    fn tv_bound() {
        assert!(tv_domain(&Vocabulary::numbered(4), 3).unwrap_err().is_bound());
    }

    #[test]
    fn closed_by_rules_cases() {
        let p = prog(&["p", "q"], &[(&["p", "q"], &[], &[])]);
        assert!(closed_by_rules(set(&p, &["p"]), &p).unwrap());
        assert!(!closed_by_rules(LiteralSet::default(), &p).unwrap());
        let empty = prog(&["p"], &[]);
        assert!(closed_by_rules(LiteralSet::default(), &empty).unwrap());
        let contra = prog(&["p"], &[(&["p"], &[], &[]), (&["-p"], &["p"], &[])]);
        assert!(closed_by_rules(set(&contra, &["p", "-p"]), &contra).unwrap());
        let neg = prog(&["p", "q"], &[(&["p"], &[], &["q"])]);
        assert!(closed_by_rules(LiteralSet::default(), &neg).is_err());
    }

    #[test]
    fn alpha_cases() {
        let p = prog(&["p", "q"], &[(&["p", "q"], &[], &[])]);
        assert_eq!(alpha(&p).unwrap(), vec![AnswerSet::Proper(set(&p, &["p"])), AnswerSet::Proper(set(&p, &["q"]))]);
        let both = prog(&["p"], &[(&["p"], &[], &[]), (&["-p"], &[], &[])]);
        assert_eq!(alpha(&both).unwrap(), vec![AnswerSet::InconsistentTotal]);
        let empty = prog(&["p"], &[]);
        assert_eq!(alpha(&empty).unwrap(), vec![AnswerSet::Proper(LiteralSet::default())]);
    }

    #[test]
    fn gl_transform_cases() {
        let p = prog(&["p", "q"], &[(&["p"], &[], &["q"])]);
        assert_eq!(gl_transform(&p, LiteralSet::default()).normalized(), vec![(set(&p, &["p"]), LiteralSet(0), LiteralSet(0))]);
        assert!(gl_transform(&p, set(&p, &["q"])).rules.is_empty());
        let choice = prog(&["p", "q"], &[(&["p"], &[], &["q"]), (&["q"], &[], &["p"])]);
        let t = gl_transform(&choice, set(&choice, &["p"]));
        assert_eq!(t.normalized(), vec![(set(&choice, &["p"]), LiteralSet(0), LiteralSet(0))]);
    }

    #[test]
    fn answer_set_cases() {
        let choice = prog(&["p", "q"], &[(&["p"], &[], &["q"]), (&["q"], &[], &["p"])]);
        assert_eq!(
            answer_sets(&choice).unwrap(),
            vec![AnswerSet::Proper(set(&choice, &["p"])), AnswerSet::Proper(set(&choice, &["q"]))]
        );
        let odd = prog(&["p"], &[(&["p"], &[], &["p"])]);
        assert!(answer_sets(&odd).unwrap().is_empty());
        let fact = prog(&["p"], &[(&["p"], &[], &[])]);
        assert_eq!(answer_sets(&fact).unwrap(), vec![AnswerSet::Proper(set(&fact, &["p"]))]);
    }

    #[test]
    fn answer_sets_match_alpha_without_negation() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        for _ in 0..100 {
            let p = random_classical_program(&mut rng, &ProgramShape { max_variables: 3, ..ProgramShape::default() }.negation_free());
            assert_eq!(answer_sets(&p).unwrap(), alpha(&p).unwrap());
        }
    }

    #[test]
    fn association_round_trip() {
        let p = prog(&["p", "q", "r", "s"], &[(&["p", "q"], &["r", "s"], &[]), (&["p"], &[], &["-q"])]);
        let tv = tv_domain(&p.vocabulary, 10).unwrap();
        let dp = associate_inverse(&tv, &p).unwrap();
        let d = &tv.domain;
        assert_eq!(dp.rules[0].pos_body.first().map(|e| d.name(e).to_string()), Some("r&s".to_string()));
        assert_eq!(dp.rules[1].pos_body.first(), Some(d.bottom()));
        assert_eq!(associate(&tv, &dp).unwrap(), p);
    }

    #[test]
    fn association_rejects_non_propositional() {
        let tv = tv_domain(&Vocabulary::new(["p", "q"]).unwrap(), 10).unwrap();
        let d = &tv.domain;
        let pq = d.element("p&q").unwrap();
        let bad_head = Program::new(vec![ExtendedRule::plain(d, Clause::singleton(d, pq), Clause::singleton(d, d.bottom()))]);
        assert!(matches!(associate(&tv, &bad_head), Err(Error::NotPropositional { rule: 0, .. })));
        let bot_neg = Program::new(vec![ExtendedRule::new(
            Clause::singleton(d, d.element("p").unwrap()),
            Clause::singleton(d, d.bottom()),
            Clause::singleton(d, d.bottom()),
        )]);
        assert!(associate(&tv, &bot_neg).is_err());
        let inconsistent = prog(&["p"], &[(&["p"], &["p", "-p"], &[])]);
        let tv1 = tv_domain(&inconsistent.vocabulary, 10).unwrap();
        assert!(associate_inverse(&tv1, &inconsistent).is_err());
    }

    #[test]
    fn min_answer_models_match_answer_sets() {
        let choice = prog(&["p", "q"], &[(&["p"], &[], &["q"]), (&["q"], &[], &["p"])]);
        let r = verify_theorem1(&choice).unwrap();
        assert!(r.report.passed(), "{}", r.report);
        assert_eq!(r.min_answer_models, vec![set(&choice, &["p"]), set(&choice, &["q"])]);

        let both = prog(&["p"], &[(&["p"], &[], &[]), (&["-p"], &[], &[])]);
        let r = verify_theorem1(&both).unwrap();
        assert!(r.report.passed(), "{}", r.report);
        assert_eq!(r.answer_sets, vec![AnswerSet::InconsistentTotal]);
        assert!(r.min_answer_models.is_empty());

        let empty = ClassicalProgram::default();
        let r = verify_theorem1(&empty).unwrap();
        assert!(r.report.passed());
        assert_eq!(r.min_answer_models, vec![LiteralSet::default()]);
        assert_eq!(r.answer_sets, vec![AnswerSet::Proper(LiteralSet::default())]);
    }

    #[test]
    fn minimal_models_match_minimally_closed_sets() {
        let either = prog(&["p", "q"], &[(&["p", "q"], &[], &[])]);
        let r = verify_theorem2(&either).unwrap();
        assert!(r.report.passed(), "{}", r.report);
        assert_eq!(r.minimal_models, vec![set(&either, &["p"]), set(&either, &["q"])]);

        let contra = prog(&["p"], &[(&["p"], &[], &[]), (&["-p"], &["p"], &[])]);
        let r = verify_theorem2(&contra).unwrap();
        assert!(r.report.passed(), "{}", r.report);
        assert_eq!(r.minimally_closed, vec![AnswerSet::InconsistentTotal]);
        assert!(r.minimal_models.is_empty());

        assert!(verify_theorem2(&ClassicalProgram::default()).unwrap().report.passed());
        let neg = prog(&["p", "q"], &[(&["p"], &[], &["q"])]);
        assert!(verify_theorem2(&neg).is_err());
    }
}
