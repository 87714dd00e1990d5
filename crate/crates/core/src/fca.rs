//! Formal contexts, concepts, and the attribute/object-concept poset.
//!
//! Object and attribute sets are bit sets over context indices. The domain
//! built from a context is the order dual of its AOC poset, so a customer's
//! wishes become a theory of singleton clauses and concept closure becomes
//! entailment.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::Rng;
use rand::seq::index::sample;

use crate::asp::VerificationReport;
use crate::error::{Error, Result};
use crate::logic::{entails, model_set, Clause, Theory};
use crate::poset::{is_valid_name, Domain, ElementId, ElementSet};

pub const DEFAULT_MAX_ATTRIBUTES: usize = 20;
/// Attribute counts up to this are checked exhaustively.
pub const EXHAUSTIVE_ATTRIBUTE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    /// `intents[g]`: attributes of object `g`.
    intents: Vec<FixedBitSet>,
    /// `extents[m]`: objects having attribute `m`.
    extents: Vec<FixedBitSet>,
}

impl FormalContext {
    /// `incidence[g][m]` is `gIm`. Names must be distinct across `G ∪ M`.
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: &[Vec<bool>]) -> Result<Self> {
        for (i, n) in objects.iter().enumerate() {
            if objects[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        for (i, n) in attributes.iter().enumerate() {
            if attributes[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
            if objects.contains(n) {
                return Err(Error::OverlappingNames(n.clone()));
            }
        }
        if incidence.len() != objects.len() {
            return Err(Error::Invalid(format!("{} incidence rows for {} objects", incidence.len(), objects.len())));
        }
        let (g, m) = (objects.len(), attributes.len());
        let mut intents = vec![FixedBitSet::with_capacity(m); g];
        let mut extents = vec![FixedBitSet::with_capacity(g); m];
        for (i, row) in incidence.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Invalid(format!("row {} has {} cells, expected {m}", i + 1, row.len())));
            }
            for (j, &cell) in row.iter().enumerate() {
                intents[i].set(j, cell);
                extents[j].set(i, cell);
            }
        }
        Ok(FormalContext { objects, attributes, intents, extents })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.intents[g].contains(m)
    }

    pub fn object_intent(&self, g: usize) -> &FixedBitSet {
        &self.intents[g]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|n| n == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|n| n == name)
    }

    pub fn objects_named<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet> {
        named(&self.objects, names)
    }

    pub fn attributes_named<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet> {
        named(&self.attributes, names)
    }

    pub fn object_names(&self, a: &FixedBitSet) -> Vec<&str> {
        a.ones().map(|g| self.objects[g].as_str()).collect()
    }

    pub fn attribute_names(&self, b: &FixedBitSet) -> Vec<&str> {
        b.ones().map(|m| self.attributes[m].as_str()).collect()
    }

    pub fn all_objects(&self) -> FixedBitSet {
        full(self.objects.len())
    }

    pub fn all_attributes(&self) -> FixedBitSet {
        full(self.attributes.len())
    }

    /// `A′`: attributes shared by every object in `A`.
    pub fn derive_objects(&self, a: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_attributes();
        for g in a.ones() {
            out.intersect_with(&self.intents[g]);
        }
        out
    }

    /// `B′`: objects having every attribute in `B`.
    pub fn derive_attrs(&self, b: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_objects();
        for m in b.ones() {
            out.intersect_with(&self.extents[m]);
        }
        out
    }

    /// `B″`.
    pub fn closure(&self, b: &FixedBitSet) -> FixedBitSet {
        self.derive_objects(&self.derive_attrs(b))
    }
}

fn full(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

fn named<S: AsRef<str>>(universe: &[String], names: &[S]) -> Result<FixedBitSet> {
    let mut out = FixedBitSet::with_capacity(universe.len());
    for n in names {
        let i = universe.iter().position(|u| u == n.as_ref()).ok_or_else(|| Error::UnknownName(n.as_ref().to_string()))?;
        out.insert(i);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: FixedBitSet,
    pub intent: FixedBitSet,
}

impl Concept {
    /// Checks `A′ = B` and `B′ = A`.
    pub fn new(ctx: &FormalContext, extent: FixedBitSet, intent: FixedBitSet) -> Result<Self> {
        if ctx.derive_objects(&extent) != intent || ctx.derive_attrs(&intent) != extent {
            return Err(Error::Invalid("extent and intent do not determine each other".into()));
        }
        Ok(Concept { extent, intent })
    }

    /// `(B′, B″)`.
    pub fn from_attributes(ctx: &FormalContext, b: &FixedBitSet) -> Self {
        let extent = ctx.derive_attrs(b);
        let intent = ctx.derive_objects(&extent);
        Concept { extent, intent }
    }

    /// `(A″, A′)`.
    pub fn from_objects(ctx: &FormalContext, a: &FixedBitSet) -> Self {
        let intent = ctx.derive_objects(a);
        let extent = ctx.derive_attrs(&intent);
        Concept { extent, intent }
    }

    /// Concept order: extent inclusion.
    pub fn leq(&self, other: &Concept) -> bool {
        self.extent.is_subset(&other.extent)
    }
}

fn extent_key(c: &Concept) -> (usize, Vec<usize>) {
    (c.extent.count_ones(..), c.extent.ones().collect())
}

/// Every concept, from closing each attribute subset. Sorted by extent
/// size, then by extent members.
pub fn all_concepts(ctx: &FormalContext, max_attributes: usize) -> Result<Vec<Concept>> {
    let m = ctx.attributes.len();
    if m > max_attributes {
        return Err(Error::BoundExceeded { what: "attribute count", limit: max_attributes, actual: m });
    }
    let mut seen = HashMap::new();
    for mask in 0u64..(1u64 << m) {
        let mut b = FixedBitSet::with_capacity(m);
        for j in 0..m {
            b.set(j, mask & (1 << j) != 0);
        }
        let c = Concept::from_attributes(ctx, &b);
        seen.entry(c.extent.clone()).or_insert(c);
    }
    let mut out: Vec<Concept> = seen.into_values().collect();
    out.sort_by_key(extent_key);
    Ok(out)
}

/// A node of the AOC poset: one concept and every name it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AocNode {
    pub labels: Vec<String>,
    pub concept: Concept,
}

impl AocNode {
    pub fn label(&self) -> String {
        self.labels.join("=")
    }
}

/// The attribute and object concepts of a context, merged where they
/// coincide. Nodes appear in order of their first name, objects first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AocPoset {
    pub nodes: Vec<AocNode>,
    object_node: Vec<usize>,
    attribute_node: Vec<usize>,
}

impl AocPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.nodes[i].concept.leq(&self.nodes[j].concept)
    }

    pub fn object_node(&self, g: usize) -> usize {
        self.object_node[g]
    }

    pub fn attribute_node(&self, m: usize) -> usize {
        self.attribute_node[m]
    }

    pub fn node_named(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.labels.iter().any(|l| l == name))
    }
}

pub fn aoc_poset(ctx: &FormalContext) -> AocPoset {
    let mut nodes: Vec<AocNode> = Vec::new();
    let mut place = |label: &str, concept: Concept| -> usize {
        match nodes.iter().position(|n| n.concept == concept) {
            Some(i) => {
                nodes[i].labels.push(label.to_string());
                i
            }
            None => {
                nodes.push(AocNode { labels: vec![label.to_string()], concept });
                nodes.len() - 1
            }
        }
    };
    let object_node = (0..ctx.objects.len())
        .map(|g| {
            let mut a = FixedBitSet::with_capacity(ctx.objects.len());
            a.insert(g);
            place(&ctx.objects[g], Concept::from_objects(ctx, &a))
        })
        .collect();
    let attribute_node = (0..ctx.attributes.len())
        .map(|m| {
            let mut b = FixedBitSet::with_capacity(ctx.attributes.len());
            b.insert(m);
            place(&ctx.attributes[m], Concept::from_attributes(ctx, &b))
        })
        .collect();
    AocPoset { nodes, object_node, attribute_node }
}

/// `ι`: AOC node index to domain element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub iota: Vec<ElementId>,
}

impl Embedding {
    pub fn image(&self, node: usize) -> ElementId {
        self.iota[node]
    }
}

/// The order dual of the AOC poset as a domain, with `_bot_` appended when
/// no node is greatest. Element `i` is node `i`, named by its merged label.
pub fn to_domain(aoc: &AocPoset) -> Result<(Domain, Embedding)> {
    for node in &aoc.nodes {
        if let Some(bad) = node.labels.iter().find(|l| !is_valid_name(l)) {
            return Err(Error::Invalid(format!("`{bad}` cannot be used as an element name")));
        }
    }
    let names = aoc.nodes.iter().map(AocNode::label).collect();
    let domain = Domain::from_relation(names, |i, j| aoc.leq(j, i), true)?;
    let iota = (0..aoc.len()).map(ElementId::new).collect();
    Ok((domain, Embedding { iota }))
}

/// Checks that `ι` is injective, order-reversing in both directions, and
/// reaches every element other than an inserted bottom.
pub fn check_embedding(aoc: &AocPoset, d: &Domain, emb: &Embedding) -> VerificationReport {
    let mut report = VerificationReport::default();
    let n = aoc.len();
    if emb.iota.len() != n || emb.iota.iter().any(|e| e.index() >= d.len()) {
        report.record("embedding-well-formed", Some("embedding size or range mismatch".into()));
        return report;
    }
    report.record("embedding-well-formed", None);

    let mut collision = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            if emb.image(i) == emb.image(j) {
                collision = Some(format!("`{}` and `{}` share an image", aoc.nodes[i].label(), aoc.nodes[j].label()));
                break 'outer;
            }
        }
    }
    report.record("embedding-injective", collision);

    let mut reversal = None;
    'rev: for i in 0..n {
        for j in 0..n {
            if aoc.leq(i, j) != d.leq(emb.image(j), emb.image(i)) {
                reversal = Some(format!("order between `{}` and `{}` not reversed", aoc.nodes[i].label(), aoc.nodes[j].label()));
                break 'rev;
            }
        }
    }
    report.record("embedding-order-reversing", reversal);

    let image = d.set_of(emb.iota.iter().copied());
    let missed = d
        .ids()
        .find(|&e| !image.contains(e) && !(d.has_synthetic_bottom() && e == d.bottom()))
        .map(|e| format!("element `{}` is not an image", d.name(e)));
    report.record("embedding-covers-compact-elements", missed);
    report
}

/// `{m | {{ι(m_1)}, …, {ι(m_n)}} ⊨ {ι(m)}}`.
pub fn closure_via_entailment(ctx: &FormalContext, aoc: &AocPoset, d: &Domain, emb: &Embedding, a: &FixedBitSet) -> FixedBitSet {
    let theory = attribute_theory(ctx, aoc, d, emb, a);
    let mut out = FixedBitSet::with_capacity(ctx.attributes.len());
    for m in 0..ctx.attributes.len() {
        let goal = Clause::singleton(d, emb.image(aoc.attribute_node(m)));
        out.set(m, entails(d, &theory, &goal));
    }
    out
}

/// The theory `{{ι(m)} | m ∈ A}`.
pub fn attribute_theory(ctx: &FormalContext, aoc: &AocPoset, d: &Domain, emb: &Embedding, a: &FixedBitSet) -> Theory {
    debug_assert_eq!(a.len(), ctx.attributes.len());
    a.ones().map(|m| Clause::singleton(d, emb.image(aoc.attribute_node(m)))).collect()
}

/// Objects whose image is a model of `t`.
pub fn object_models(ctx: &FormalContext, aoc: &AocPoset, d: &Domain, emb: &Embedding, t: &Theory) -> FixedBitSet {
    let models: ElementSet = model_set(d, t);
    let mut out = FixedBitSet::with_capacity(ctx.objects.len());
    for g in 0..ctx.objects.len() {
        out.set(g, models.contains(emb.image(aoc.object_node(g))));
    }
    out
}

#[derive(Clone, Debug)]
pub struct Theorem3Report {
    pub subsets_checked: usize,
    pub exhaustive: bool,
    pub report: VerificationReport,
}

/// Compares `B″` with entailment-based closure on attribute subsets: all of
/// them when `|M| ≤ 12` or `exhaustive` is set, otherwise `samples` seeded
/// random subsets.
pub fn verify_theorem3<R: Rng>(ctx: &FormalContext, exhaustive: bool, samples: usize, rng: &mut R) -> Result<Theorem3Report> {
    let m = ctx.attributes.len();
    let exhaustive = exhaustive || m <= EXHAUSTIVE_ATTRIBUTE_LIMIT;
    if exhaustive && m > DEFAULT_MAX_ATTRIBUTES {
        return Err(Error::BoundExceeded { what: "attribute count", limit: DEFAULT_MAX_ATTRIBUTES, actual: m });
    }
    let aoc = aoc_poset(ctx);
    let (d, emb) = to_domain(&aoc)?;
    let mut report = check_embedding(&aoc, &d, &emb);

    let subsets: Vec<FixedBitSet> = if exhaustive {
        (0u64..(1u64 << m))
            .map(|mask| {
                let mut b = FixedBitSet::with_capacity(m);
                (0..m).for_each(|j| b.set(j, mask & (1 << j) != 0));
                b
            })
            .collect()
    } else {
        (0..samples)
            .map(|_| {
                let k = rng.gen_range(0..=m);
                let mut b = FixedBitSet::with_capacity(m);
                sample(rng, m, k).into_iter().for_each(|j| b.insert(j));
                b
            })
            .collect()
    };

    let mismatch = subsets.iter().find_map(|a| {
        let lhs = ctx.closure(a);
        let rhs = closure_via_entailment(ctx, &aoc, &d, &emb, a);
        (lhs != rhs).then(|| {
            format!(
                "A = {{{}}}: closure {{{}}} but entailment gives {{{}}}",
                ctx.attribute_names(a).join(", "),
                ctx.attribute_names(&lhs).join(", "),
                ctx.attribute_names(&rhs).join(", ")
            )
        })
    });
    report.record("closure-equals-entailment", mismatch);
    Ok(Theorem3Report { subsets_checked: subsets.len(), exhaustive, report })
}

/// Random context with objects `g0..` and attributes `m0..`.
pub fn random_context<R: Rng>(rng: &mut R, objects: usize, attributes: usize, density: f64) -> FormalContext {
    let incidence: Vec<Vec<bool>> =
        (0..objects).map(|_| (0..attributes).map(|_| rng.gen_bool(density)).collect()).collect();
    FormalContext::new(
        (0..objects).map(|i| format!("g{i}")).collect(),
        (0..attributes).map(|i| format!("m{i}")).collect(),
        &incidence,
    )
    .expect("generated names are distinct")
}
