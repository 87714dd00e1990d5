//! Seeded generators for random domains, theories and programs.
//!
//! Used by the property suites, the differential harnesses and the CLI's
//! `--seed` mode. Every generator is a pure function of the RNG state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::{Clause, Theory};
use crate::poset::{Domain, ElementId};
use crate::program::{ExtendedRule, Program};

/// The generator behind every `--seed` flag.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random poset on `size` named elements (`e0`, `e1`, ...) plus a
/// synthetic bottom when none arises. Orders only run from lower to higher
/// index, so the relation is acyclic by construction.
pub fn random_domain<R: Rng>(rng: &mut R, size: usize, edge_probability: f64) -> Domain {
    let names: Vec<String> = (0..size).map(|i| format!("e{i}")).collect();
    let mut edges = vec![vec![false; size]; size];
    for (i, row) in edges.iter_mut().enumerate() {
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(edge_probability);
        }
    }
    Domain::from_relation(names, |i, j| edges[i][j], true).expect("acyclic relation")
}

/// A random poset of exactly `size` elements whose first element `e0` is
/// the bottom.
pub fn random_rooted_domain<R: Rng>(rng: &mut R, size: usize, edge_probability: f64) -> Domain {
    assert!(size >= 1);
    let names: Vec<String> = (0..size).map(|i| format!("e{i}")).collect();
    let mut edges = vec![vec![false; size]; size];
    for (i, row) in edges.iter_mut().enumerate().skip(1) {
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(edge_probability);
        }
    }
    Domain::from_relation(names, |i, j| i == 0 || edges[i][j], false).expect("rooted acyclic relation")
}

pub fn random_clause<R: Rng>(rng: &mut R, d: &Domain, max_len: usize) -> Clause {
    let len = rng.gen_range(0..=max_len.min(d.len()));
    let members: Vec<ElementId> = (0..len).map(|_| ElementId::new(rng.gen_range(0..d.len()))).collect();
    Clause::of(d, members)
}

/// Like [`random_clause`] but never empty.
pub fn random_nonempty_clause<R: Rng>(rng: &mut R, d: &Domain, max_len: usize) -> Clause {
    loop {
        let c = random_clause(rng, d, max_len.max(1));
        if !c.is_empty() {
            return c;
        }
    }
}

pub fn random_theory<R: Rng>(rng: &mut R, d: &Domain, max_clauses: usize, max_len: usize) -> Theory {
    let count = rng.gen_range(0..=max_clauses);
    (0..count).map(|_| random_nonempty_clause(rng, d, max_len)).collect()
}

/// Random program; heads may occasionally be empty. With `negation`, about
/// half the rules get a non-empty default-negated clause.
pub fn random_program<R: Rng>(rng: &mut R, d: &Domain, max_rules: usize, negation: bool) -> Program {
    let count = rng.gen_range(0..=max_rules);
    let rules = (0..count)
        .map(|_| {
            let head = if rng.gen_bool(0.1) { Clause::empty(d) } else { random_nonempty_clause(rng, d, 2) };
            let pos_body = if rng.gen_bool(0.3) {
                Clause::singleton(d, d.bottom())
            } else {
                random_nonempty_clause(rng, d, 2)
            };
            let neg_body = if negation && rng.gen_bool(0.5) {
                random_nonempty_clause(rng, d, 2)
            } else {
                Clause::empty(d)
            };
            ExtendedRule::new(head, pos_body, neg_body)
        })
        .collect();
    Program::new(rules)
}
