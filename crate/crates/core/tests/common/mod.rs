//! Naive reference implementations used as test oracles. Nothing here calls
//! into the library's engines; everything is plain loops over small sets.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

/// A poset as an explicit reflexive-transitive relation.
pub struct NaivePoset {
    pub names: Vec<String>,
    pub le: Vec<Vec<bool>>,
}

impl NaivePoset {
    pub fn from_relation(names: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let mut le = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                le[i][j] = i == j || rel(i, j);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        NaivePoset { names, le }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).unwrap_or_else(|| panic!("no element {name}"))
    }

    pub fn satisfies(&self, w: usize, clause: &[usize]) -> bool {
        clause.iter().any(|&x| self.le[x][w])
    }

    pub fn models(&self, theory: &[Vec<usize>]) -> Vec<usize> {
        (0..self.len()).filter(|&w| theory.iter().all(|c| self.satisfies(w, c))).collect()
    }

    pub fn minimal(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&x| !set.iter().any(|&y| y != x && self.le[y][x])).collect()
    }

    pub fn entails(&self, theory: &[Vec<usize>], clause: &[usize]) -> bool {
        self.models(theory).iter().all(|&w| self.satisfies(w, clause))
    }
}

/// A rule `head <- body, ~neg` over element indices.
#[derive(Clone, Debug)]
pub struct NaiveRule {
    pub head: Vec<usize>,
    pub body: Vec<usize>,
    pub neg: Vec<usize>,
}

impl NaivePoset {
    pub fn rule_holds(&self, w: usize, r: &NaiveRule) -> bool {
        !self.satisfies(w, &r.body) || self.satisfies(w, &r.head)
    }

    fn reduct<'a>(&self, rules: &'a [NaiveRule], w: usize) -> Vec<&'a NaiveRule> {
        rules.iter().filter(|r| !self.satisfies(w, &r.neg)).collect()
    }

    pub fn reduct_len(&self, rules: &[NaiveRule], w: usize) -> usize {
        self.reduct(rules, w).len()
    }

    /// Some model of `P/w` lies below `w`.
    pub fn is_answer_model(&self, rules: &[NaiveRule], w: usize) -> bool {
        let red = self.reduct(rules, w);
        (0..self.len()).any(|v| self.le[v][w] && red.iter().all(|r| self.rule_holds(v, r)))
    }

    /// `w` models `P/w` and nothing strictly below does.
    pub fn is_min_answer_model(&self, rules: &[NaiveRule], w: usize) -> bool {
        let red = self.reduct(rules, w);
        let model = |v: usize| red.iter().all(|r| self.rule_holds(v, r));
        model(w) && !(0..self.len()).any(|v| v != w && self.le[v][w] && model(v))
    }
}

// ---------------------------------------------------------------- contexts

pub const TABLE1_OBJECTS: [&str; 9] = ["1", "2", "3", "4", "5", "6", "7", "8", "9"];
pub const TABLE1_ATTRIBUTES: [&str; 10] = ["sd", "st", "f", "m", "rw", "ww", "w", "d", "c", "e"];

/// The restaurant context: each meal with its attributes.
pub const TABLE1_ROWS: [&str; 9] = [
    "f ww d",
    "m rw c",
    "sd f ww d c e",
    "st m rw d c e",
    "sd st f w",
    "sd st m w c",
    "sd st m rw w d c e",
    "m w c",
    "sd st d",
];

pub struct NaiveContext {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub has: Vec<BTreeSet<usize>>,
}

impl NaiveContext {
    pub fn table1() -> Self {
        let attributes: Vec<String> = TABLE1_ATTRIBUTES.iter().map(|s| s.to_string()).collect();
        let has = TABLE1_ROWS
            .iter()
            .map(|row| row.split_whitespace().map(|a| attributes.iter().position(|x| x == a).unwrap()).collect())
            .collect();
        NaiveContext { objects: TABLE1_OBJECTS.iter().map(|s| s.to_string()).collect(), attributes, has }
    }

    pub fn from_incidence(incidence: &[Vec<bool>]) -> Self {
        let m = incidence.first().map_or(0, Vec::len);
        NaiveContext {
            objects: (0..incidence.len()).map(|i| format!("g{i}")).collect(),
            attributes: (0..m).map(|i| format!("m{i}")).collect(),
            has: incidence.iter().map(|row| (0..m).filter(|&j| row[j]).collect()).collect(),
        }
    }

    pub fn attr(&self, name: &str) -> usize {
        self.attributes.iter().position(|a| a == name).unwrap()
    }

    pub fn obj(&self, name: &str) -> usize {
        self.objects.iter().position(|a| a == name).unwrap()
    }

    /// Objects having every attribute of `b`.
    pub fn common_objects(&self, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.objects.len()).filter(|&g| b.is_subset(&self.has[g])).collect()
    }

    /// Attributes shared by every object of `a`.
    pub fn common_attributes(&self, a: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.attributes.len()).filter(|m| a.iter().all(|&g| self.has[g].contains(m))).collect()
    }

    pub fn closure(&self, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.common_attributes(&self.common_objects(b))
    }

    /// Extent of the object concept of `g` or the attribute concept of `m`.
    pub fn object_extent(&self, g: usize) -> BTreeSet<usize> {
        self.common_objects(&self.has[g])
    }

    pub fn attribute_extent(&self, m: usize) -> BTreeSet<usize> {
        self.common_objects(&BTreeSet::from([m]))
    }

    /// Distinct attribute/object concept extents, labelled by names.
    pub fn aoc_extents(&self) -> Vec<(BTreeSet<usize>, Vec<String>)> {
        let mut out: Vec<(BTreeSet<usize>, Vec<String>)> = Vec::new();
        let labelled = (0..self.objects.len())
            .map(|g| (self.object_extent(g), self.objects[g].clone()))
            .chain((0..self.attributes.len()).map(|m| (self.attribute_extent(m), self.attributes[m].clone())));
        for (ext, name) in labelled {
            match out.iter_mut().find(|(e, _)| *e == ext) {
                Some((_, names)) => names.push(name),
                None => out.push((ext, vec![name])),
            }
        }
        out
    }

    /// The dual of the AOC order plus a bottom at the end when needed.
    /// Element names are every label of a node; lookups go by any label.
    pub fn dual_domain(&self) -> (NaivePoset, Vec<Vec<String>>) {
        let nodes = self.aoc_extents();
        let n = nodes.len();
        let mut labels: Vec<Vec<String>> = nodes.iter().map(|(_, l)| l.clone()).collect();
        let least = (0..n).find(|&i| nodes.iter().all(|(e, _)| e.is_subset(&nodes[i].0)));
        let extra = least.is_none() as usize;
        if extra == 1 {
            labels.push(vec!["_bot_".to_string()]);
        }
        let names = labels.iter().map(|l| l.join("=")).collect();
        let poset = NaivePoset::from_relation(names, |i, j| {
            if i == n {
                return true;
            }
            j < n && nodes[j].0.is_subset(&nodes[i].0)
        });
        (poset, labels)
    }
}

pub fn label_index(labels: &[Vec<String>], name: &str) -> usize {
    labels.iter().position(|l| l.iter().any(|x| x == name)).unwrap_or_else(|| panic!("no label {name}"))
}

// ----------------------------------------------------- classical programs

/// A literal as `(variable, negated)`.
pub type Lit = (usize, bool);

#[derive(Clone, Debug)]
pub struct NaiveClassicalRule {
    pub head: Vec<Lit>,
    pub pos: Vec<Lit>,
    pub neg: Vec<Lit>,
}

pub fn consistent(x: &BTreeSet<Lit>) -> bool {
    !x.iter().any(|&(v, n)| x.contains(&(v, !n)))
}

pub fn total(k: usize) -> BTreeSet<Lit> {
    (0..k).flat_map(|v| [(v, false), (v, true)]).collect()
}

pub fn all_literal_sets(k: usize) -> Vec<BTreeSet<Lit>> {
    let lits: Vec<Lit> = total(k).into_iter().collect();
    (0u32..(1 << lits.len()))
        .map(|mask| lits.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &l)| l).collect())
        .collect()
}

fn closed(x: &BTreeSet<Lit>, rules: &[NaiveClassicalRule]) -> bool {
    rules.iter().all(|r| !r.pos.iter().all(|l| x.contains(l)) || r.head.iter().any(|l| x.contains(l)))
}

fn acceptable(x: &BTreeSet<Lit>, k: usize, rules: &[NaiveClassicalRule]) -> bool {
    (consistent(x) || *x == total(k)) && closed(x, rules)
}

/// Minimal sets that are closed by the rules and consistent or total.
pub fn naive_alpha(k: usize, rules: &[NaiveClassicalRule]) -> Vec<BTreeSet<Lit>> {
    let ok: Vec<BTreeSet<Lit>> = all_literal_sets(k).into_iter().filter(|x| acceptable(x, k, rules)).collect();
    ok.iter().filter(|x| !ok.iter().any(|y| y != *x && y.is_subset(x))).cloned().collect()
}

fn subsets(x: &BTreeSet<Lit>) -> Vec<BTreeSet<Lit>> {
    let items: Vec<Lit> = x.iter().copied().collect();
    (0u32..(1 << items.len()))
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &l)| l).collect())
        .collect()
}

/// Gelfond-Lifschitz answer sets: each candidate `X` is tested for being a
/// minimal acceptable set of its own reduct by trying all subsets.
pub fn naive_answer_sets(k: usize, rules: &[NaiveClassicalRule]) -> Vec<BTreeSet<Lit>> {
    all_literal_sets(k)
        .into_iter()
        .filter(|x| consistent(x) || *x == total(k))
        .filter(|x| {
            let reduct: Vec<NaiveClassicalRule> = rules
                .iter()
                .filter(|r| !r.neg.iter().any(|l| x.contains(l)))
                .map(|r| NaiveClassicalRule { head: r.head.clone(), pos: r.pos.clone(), neg: vec![] })
                .collect();
            acceptable(x, k, &reduct) && subsets(x).iter().all(|y| y == x || !acceptable(y, k, &reduct))
        })
        .collect()
}
