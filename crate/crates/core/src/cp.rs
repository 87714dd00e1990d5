//! Clause propagation and the `T_P` operator on explicitly stored theories.
//!
//! This engine is a syntactic oracle for `cons(P)` on tiny domains. A closed
//! theory is kept extensionally as the set of every clause (subset of the
//! domain) it contains, so it is only available up to a configured bound.
//!
//! One CP(P) step picks premises `X_1..X_n` from the theory with selected
//! members `a_i ∈ X_i` and a rule `Y <- Z` such that `mub{a_1..a_n} ⊨ Z`,
//! concluding `Y ∪ ⋃(X_i \ {a_i})`. Picks are made with pairwise distinct
//! selected elements: selecting the same element twice only adds a second
//! residue, which weakens the conclusion by a superset.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::logic::{close, closed_contains, smyth_leq, Clause, Theory};
use crate::poset::{Domain, ElementId, ElementSet};
use crate::program::Program;

pub const DEFAULT_MAX_DOMAIN: usize = 12;
const HARD_MAX_DOMAIN: usize = 20;

type Mask = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CpConfig {
    pub max_domain: usize,
    /// Cap on the number of premises per step; `None` means `|D|`.
    pub max_premises: Option<usize>,
}

impl Default for CpConfig {
    fn default() -> Self {
        CpConfig { max_domain: DEFAULT_MAX_DOMAIN, max_premises: None }
    }
}

impl CpConfig {
    fn check(&self, d: &Domain) -> Result<()> {
        let limit = self.max_domain.min(HARD_MAX_DOMAIN);
        if d.len() > limit {
            return Err(Error::BoundExceeded { what: "domain size", limit, actual: d.len() });
        }
        Ok(())
    }
}

fn mask_of(x: &ElementSet) -> Mask {
    x.iter().fold(0, |m, e| m | (1 << e.index()))
}

fn clause_of(d: &Domain, mask: Mask) -> Clause {
    Clause::of(d, d.ids().filter(|e| mask & (1 << e.index()) != 0))
}

/// A closed theory stored as the explicit set of its clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionalTheory {
    width: usize,
    members: FixedBitSet,
}

impl ExtensionalTheory {
    /// Logical closure of a clause set, computed through model sets.
    pub fn closure_of(d: &Domain, clauses: impl IntoIterator<Item = Clause>) -> Self {
        let closed = close(d, &Theory::new(clauses.into_iter().collect()));
        let width = d.len();
        let mut members = FixedBitSet::with_capacity(1 << width);
        for mask in 0..(1u32 << width) {
            if closed_contains(d, &closed, &clause_of(d, mask)) {
                members.insert(mask as usize);
            }
        }
        ExtensionalTheory { width, members }
    }

    /// `cons({{⊥}})`, the start of the `T_P` iteration.
    pub fn initial(d: &Domain) -> Self {
        Self::closure_of(d, [Clause::singleton(d, d.bottom())])
    }

    pub fn contains(&self, x: &Clause) -> bool {
        self.members.contains(mask_of(x) as usize)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_subset(&self, other: &ExtensionalTheory) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn clauses(&self, d: &Domain) -> Vec<Clause> {
        self.members.ones().map(|m| clause_of(d, m as Mask)).collect()
    }

    fn masks(&self) -> impl Iterator<Item = Mask> + '_ {
        self.members.ones().map(|m| m as Mask)
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

struct Selection {
    elements: Vec<ElementId>,
    mub: Clause,
}

fn selections(d: &Domain, cfg: &CpConfig) -> Vec<Selection> {
    let cap = cfg.max_premises.unwrap_or(d.len());
    (0..(1u32 << d.len()))
        .filter(|s| (s.count_ones() as usize) <= cap)
        .map(|s| {
            let elements: Vec<ElementId> = d.ids().filter(|e| s & (1 << e.index()) != 0).collect();
            let mub = Clause::new(d.mub(&d.set_of(elements.iter().copied())));
            Selection { elements, mub }
        })
        .collect()
}

/// Residues `X \ {a}` over premises `X` of the theory containing `a`.
fn residues(t: &ExtensionalTheory, a: ElementId) -> Vec<Mask> {
    let bit = 1 << a.index();
    t.masks().filter(|x| x & bit != 0).map(|x| x & !bit).collect::<BTreeSet<_>>().into_iter().collect()
}

fn minimal_masks(masks: impl IntoIterator<Item = Mask>) -> Vec<Mask> {
    let all: BTreeSet<Mask> = masks.into_iter().collect();
    all.iter().copied().filter(|&m| !all.iter().any(|&o| o != m && o & m == o)).collect()
}

fn propagate(d: &Domain, p: &Program, t: &ExtensionalTheory, cfg: &CpConfig, minimal: bool) -> Result<BTreeSet<Mask>> {
    cfg.check(d)?;
    if let Some(rule) = p.rules.iter().position(|r| !r.is_trivially_extended()) {
        return Err(Error::NegationNotAllowed { rule });
    }
    let mut residue_table: Vec<Vec<Mask>> = d.ids().map(|a| residues(t, a)).collect();
    if minimal {
        for r in residue_table.iter_mut() {
            *r = minimal_masks(r.iter().copied());
        }
    }

    let mut out = BTreeSet::new();
    for sel in selections(d, cfg) {
        if sel.elements.iter().any(|a| residue_table[a.index()].is_empty()) {
            continue;
        }
        for rule in &p.rules {
            // mub{a_i} ⊨ Z as a clause-to-clause consequence
            if !smyth_leq(d, &rule.pos_body, &sel.mub) {
                continue;
            }
            let mut acc: Vec<Mask> = vec![mask_of(&rule.head)];
            for a in &sel.elements {
                let next = acc.iter().flat_map(|u| residue_table[a.index()].iter().map(move |r| u | r));
                acc = if minimal { minimal_masks(next) } else { next.collect::<BTreeSet<_>>().into_iter().collect() };
            }
            out.extend(acc);
        }
    }
    if minimal {
        return Ok(minimal_masks(out).into_iter().collect());
    }
    Ok(out)
}

/// Every CP(P)-consequence of `t`, sorted by bit pattern.
pub fn cp_consequences(d: &Domain, p: &Program, t: &ExtensionalTheory, cfg: &CpConfig) -> Result<Vec<Clause>> {
    Ok(propagate(d, p, t, cfg, false)?.into_iter().map(|m| clause_of(d, m)).collect())
}

/// The subset-minimal CP(P)-consequences of `t`. Every consequence is a
/// superset of one of these, so both sets have the same logical closure.
pub fn cp_minimal_consequences(d: &Domain, p: &Program, t: &ExtensionalTheory, cfg: &CpConfig) -> Result<Vec<Clause>> {
    Ok(propagate(d, p, t, cfg, true)?.into_iter().map(|m| clause_of(d, m)).collect())
}

/// `T_P(T) = cons({Y | Y is a CP(P)-consequence of T})`.
pub fn tp_step(d: &Domain, p: &Program, t: &ExtensionalTheory, cfg: &CpConfig) -> Result<ExtensionalTheory> {
    let conclusions = cp_minimal_consequences(d, p, t, cfg)?;
    Ok(ExtensionalTheory::closure_of(d, conclusions))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint {
    pub theory: ExtensionalTheory,
    /// Steps applied from `cons({{⊥}})` until the theory stopped changing.
    pub iterations: usize,
}

/// Least fixpoint of `T_P`, iterated upward from `cons({{⊥}})`.
pub fn tp_fixpoint(d: &Domain, p: &Program, cfg: &CpConfig) -> Result<Fixpoint> {
    cfg.check(d)?;
    let mut current = ExtensionalTheory::initial(d);
    let mut iterations = 0;
    loop {
        let next = tp_step(d, p, &current, cfg)?;
        iterations += 1;
        if next == current {
            return Ok(Fixpoint { theory: current, iterations });
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::satisfies;
    use crate::program::ExtendedRule;

    fn diamond() -> Domain {
        Domain::build(&["a", "b", "t"], &[("a", "t"), ("b", "t")], true).unwrap()
    }

    fn cl(d: &Domain, names: &[&str]) -> Clause {
        Clause::new(d.set_named(names).unwrap())
    }

    fn all_clauses(d: &Domain) -> Vec<Clause> {
        (0..(1u32 << d.len())).map(|m| clause_of(d, m)).collect()
    }

    #[test]
    fn initial_theory_is_clauses_with_bottom() {
        let d = diamond();
        let t = ExtensionalTheory::initial(&d);
        for x in all_clauses(&d) {
            assert_eq!(t.contains(&x), x.contains(d.bottom()));
        }
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn zero_premise_firing() {
        let d = diamond();
        let p = Program::new(vec![ExtendedRule::plain(&d, cl(&d, &["a"]), cl(&d, &["_bot_"]))]);
        let t = ExtensionalTheory::initial(&d);
        let cons = cp_consequences(&d, &p, &t, &CpConfig::default()).unwrap();
        assert!(cons.contains(&cl(&d, &["a"])));
    }

    #[test]
    fn two_premises_join_at_top() {
        let d = diamond();
        // {a} and {b} in the theory; mub{a, b} = {t} entails the body {t}.
        let t = ExtensionalTheory::closure_of(&d, [cl(&d, &["a"]), cl(&d, &["b"])]);
        let p = Program::new(vec![ExtendedRule::plain(&d, cl(&d, &["b"]), cl(&d, &["t"]))]);
        let cons = cp_consequences(&d, &p, &t, &CpConfig::default()).unwrap();
        assert!(cons.contains(&cl(&d, &["b"])));
    }

    #[test]
    fn residues_join_the_head() {
        let d = Domain::build(&["a", "c", "t"], &[("a", "t")], true).unwrap();
        let t = ExtensionalTheory::closure_of(&d, [cl(&d, &["a", "c"])]);
        let p = Program::new(vec![ExtendedRule::plain(&d, cl(&d, &["t"]), cl(&d, &["a"]))]);
        let cons = cp_consequences(&d, &p, &t, &CpConfig::default()).unwrap();
        assert!(cons.contains(&cl(&d, &["t", "c"])));
    }

    #[test]
    fn empty_program_fixpoint() {
        let d = diamond();
        let fp = tp_fixpoint(&d, &Program::default(), &CpConfig::default()).unwrap();
        assert_eq!(fp.theory, ExtensionalTheory::initial(&d));
        assert_eq!(fp.iterations, 1);
    }

    #[test]
    fn chain_program_fixpoint() {
        let d = diamond();
        let p = Program::new(vec![
            ExtendedRule::plain(&d, cl(&d, &["a"]), cl(&d, &["_bot_"])),
            ExtendedRule::plain(&d, cl(&d, &["t"]), cl(&d, &["a"])),
        ]);
        let fp = tp_fixpoint(&d, &p, &CpConfig::default()).unwrap();
        let top = d.element("t").unwrap();
        for x in all_clauses(&d) {
            assert_eq!(fp.theory.contains(&x), satisfies(&d, top, &x), "{}", x.display(&d));
        }
        let again = tp_step(&d, &p, &fp.theory, &CpConfig::default()).unwrap();
        assert_eq!(again, fp.theory);
    }

    #[test]
    fn full_and_minimal_consequences_close_alike() {
        let d = diamond();
        let p = Program::new(vec![
            ExtendedRule::plain(&d, cl(&d, &["a", "b"]), cl(&d, &["_bot_"])),
            ExtendedRule::plain(&d, cl(&d, &["t"]), cl(&d, &["a"])),
        ]);
        let cfg = CpConfig::default();
        let mut t = ExtensionalTheory::initial(&d);
        for _ in 0..3 {
            let full = ExtensionalTheory::closure_of(&d, cp_consequences(&d, &p, &t, &cfg).unwrap());
            let min = ExtensionalTheory::closure_of(&d, cp_minimal_consequences(&d, &p, &t, &cfg).unwrap());
            assert_eq!(full, min);
            t = min;
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let names: Vec<String> = (0..5).map(|i| format!("e{i}")).collect();
        let d = Domain::from_relation(names, |i, j| i == 0 || i == j, false).unwrap();
        let cfg = CpConfig { max_domain: 4, max_premises: None };
        let err = tp_fixpoint(&d, &Program::default(), &cfg).unwrap_err();
        assert!(err.is_bound());
    }
}
