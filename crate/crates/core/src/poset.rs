//! Finite partial orders with a least element.
//!
//! Every finite poset with a bottom is a coherent algebraic cpo in which all
//! elements are compact, so this is the only kind of domain the crate needs.
//! The order is stored as two dense bit matrices (`up[x]` and `down[x]`),
//! which turns every query into a row scan.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Name given to a bottom element that had to be inserted.
pub const SYNTHETIC_BOTTOM: &str = "_bot_";

/// Index of an element inside its owning [`Domain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u32);

impl ElementId {
    pub fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of elements of one domain, iterated in index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet(FixedBitSet);

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet(bits)
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = ElementId>) -> Self {
        let mut set = Self::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, id: ElementId) {
        self.0.insert(id.index());
    }

    pub fn remove(&mut self, id: ElementId) {
        self.0.set(id.index(), false);
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.0.contains(id.index())
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.0.ones().map(ElementId::new)
    }

    pub fn first(&self) -> Option<ElementId> {
        self.0.minimum().map(ElementId::new)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        self.0.difference_with(&other.0);
    }

    pub fn complement(&self) -> ElementSet {
        let mut bits = self.0.clone();
        bits.toggle_range(..);
        ElementSet(bits)
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }
}

impl FromIterator<ElementId> for ElementSet {
    /// Collects into a set sized to the largest index seen. Prefer
    /// [`ElementSet::from_ids`] when the universe is known.
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let ids: Vec<ElementId> = iter.into_iter().collect();
        let universe = ids.iter().map(|id| id.index() + 1).max().unwrap_or(0);
        ElementSet::from_ids(universe, ids)
    }
}

/// A finite partial order with a least element.
///
/// Immutable after construction. Elements keep their construction order and
/// every set-valued query returns elements sorted by index.
#[derive(Clone, Debug)]
pub struct Domain {
    names: Vec<String>,
    lookup: HashMap<String, ElementId>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    bottom: ElementId,
    synthetic_bottom: bool,
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for Domain {}

impl Domain {
    /// Builds a domain from element names and `(below, above)` pairs.
    ///
    /// The order is the reflexive-transitive closure of the pairs. An
    /// element token such as `2=rw` declares one element reachable under
    /// each `=`-separated name. When no unique least element exists and
    /// `auto_bottom` is set, a fresh `_bot_` is appended below everything.
    pub fn build<S: AsRef<str>>(elements: &[S], order_pairs: &[(S, S)], auto_bottom: bool) -> Result<Domain> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup = alias_table(&names)?;
        let n = names.len();
        let mut up: Vec<ElementSet> = (0..n).map(|_| ElementSet::empty(n)).collect();
        for (lo, hi) in order_pairs {
            let lo = *lookup.get(lo.as_ref()).ok_or_else(|| Error::UnknownName(lo.as_ref().to_string()))?;
            let hi = *lookup.get(hi.as_ref()).ok_or_else(|| Error::UnknownName(hi.as_ref().to_string()))?;
            up[lo.index()].insert(hi);
        }
        Self::from_rows(names, lookup, up, auto_bottom)
    }

    /// Builds a domain from an order predicate `leq(i, j)` over element
    /// indices. The predicate need not be transitive; its closure is taken.
    pub fn from_relation(names: Vec<String>, leq: impl Fn(usize, usize) -> bool, auto_bottom: bool) -> Result<Domain> {
        let lookup = alias_table(&names)?;
        let n = names.len();
        let up = (0..n)
            .map(|i| ElementSet::from_ids(n, (0..n).filter(|&j| leq(i, j)).map(ElementId::new)))
            .collect();
        Self::from_rows(names, lookup, up, auto_bottom)
    }

    fn from_rows(
        mut names: Vec<String>,
        mut lookup: HashMap<String, ElementId>,
        mut up: Vec<ElementSet>,
        auto_bottom: bool,
    ) -> Result<Domain> {
        let n = names.len();
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(ElementId::new(i));
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(ElementId::new(k)) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j.index() != i && up[j.index()].contains(ElementId::new(i)) {
                    return Err(Error::Cycle(names[i].clone(), names[j.index()].clone()));
                }
            }
        }

        let least: Vec<usize> = (0..n).filter(|&i| up[i].len() == n).collect();
        let (bottom, synthetic_bottom) = match least.as_slice() {
            [b] => (ElementId::new(*b), false),
            _ if !auto_bottom => return Err(Error::NoLeastElement),
            _ => {
                if lookup.contains_key(SYNTHETIC_BOTTOM) {
                    return Err(Error::DuplicateName(SYNTHETIC_BOTTOM.to_string()));
                }
                let id = ElementId::new(n);
                names.push(SYNTHETIC_BOTTOM.to_string());
                lookup.insert(SYNTHETIC_BOTTOM.to_string(), id);
                let mut grown: Vec<ElementSet> =
                    up.into_iter().map(|row| ElementSet::from_ids(n + 1, row.iter())).collect();
                grown.push(ElementSet::full(n + 1));
                up = grown;
                (id, true)
            }
        };

        let n = names.len();
        let mut down: Vec<ElementSet> = (0..n).map(|_| ElementSet::empty(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j.index()].insert(ElementId::new(i));
            }
        }
        Ok(Domain { names, lookup, up, down, bottom, synthetic_bottom })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> {
        (0..self.len()).map(ElementId::new)
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    /// True when the bottom was inserted during construction.
    pub fn has_synthetic_bottom(&self) -> bool {
        self.synthetic_bottom
    }

    pub fn name(&self, id: ElementId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks up an element by display name or alias.
    pub fn id(&self, name: &str) -> Option<ElementId> {
        self.lookup.get(name).copied()
    }

    pub fn element(&self, name: &str) -> Result<ElementId> {
        self.id(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.len())
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set_of(&self, ids: impl IntoIterator<Item = ElementId>) -> ElementSet {
        ElementSet::from_ids(self.len(), ids)
    }

    /// Resolves names into a set.
    pub fn set_named<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSet> {
        let ids = names.iter().map(|s| self.element(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(self.set_of(ids))
    }

    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.up[x.index()].contains(y)
    }

    /// `{y | x ⊑ y}`
    pub fn up(&self, x: ElementId) -> &ElementSet {
        &self.up[x.index()]
    }

    /// `{y | y ⊑ x}`
    pub fn down(&self, x: ElementId) -> &ElementSet {
        &self.down[x.index()]
    }

    /// Common upper bounds of `xs`; all of the domain for the empty set.
    pub fn upper_bounds(&self, xs: &ElementSet) -> ElementSet {
        let mut bounds = self.all();
        for x in xs.iter() {
            bounds.intersect_with(self.up(x));
        }
        bounds
    }

    /// Minimal upper bounds. `mub(∅) = {⊥}`; an empty result means `xs`
    /// has no common upper bound.
    pub fn mub(&self, xs: &ElementSet) -> ElementSet {
        self.minimal_elements(&self.upper_bounds(xs))
    }

    pub fn consistent_pair(&self, x: ElementId, y: ElementId) -> bool {
        self.up(x).intersects(self.up(y))
    }

    pub fn upward_closure(&self, xs: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in xs.iter() {
            out.union_with(self.up(x));
        }
        out
    }

    pub fn downward_closure(&self, xs: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in xs.iter() {
            out.union_with(self.down(x));
        }
        out
    }

    pub fn minimal_elements(&self, xs: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in xs.iter() {
            let mut below = self.down(x).clone();
            below.intersect_with(xs);
            if below.len() == 1 {
                out.insert(x);
            }
        }
        out
    }

    pub fn maximal_elements(&self, xs: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in xs.iter() {
            let mut above = self.up(x).clone();
            above.intersect_with(xs);
            if above.len() == 1 {
                out.insert(x);
            }
        }
        out
    }

    pub fn is_upward_closed(&self, xs: &ElementSet) -> bool {
        self.upward_closure(xs) == *xs
    }

    /// Covering pairs `(x, y)` with `x ⊏ y` and nothing strictly between,
    /// in index order.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for x in self.ids() {
            for y in self.up(x).iter() {
                if x == y {
                    continue;
                }
                let between = self.up(x).iter().any(|z| z != x && z != y && self.leq(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn format_set(&self, xs: &ElementSet) -> String {
        xs.iter().map(|x| self.name(x)).collect::<Vec<_>>().join(" ")
    }
}

/// A single element name: non-empty, no whitespace and none of the
/// characters the text formats reserve (`{}(),=#%:~`).
pub fn is_valid_name(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "{}(),=#%:~".contains(c))
}

fn alias_table(names: &[String]) -> Result<HashMap<String, ElementId>> {
    let mut lookup = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::Invalid("empty element name".into()));
        }
        let id = ElementId::new(i);
        let mut keys = vec![name.as_str()];
        if name.contains('=') {
            keys.extend(name.split('=').filter(|s| !s.is_empty()));
        }
        for key in keys {
            if lookup.insert(key.to_string(), id).is_some_and(|prev| prev != id) {
                return Err(Error::DuplicateName(key.to_string()));
            }
        }
    }
    Ok(lookup)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diamond() -> Domain {
        Domain::build(&["a", "b", "t"], &[("a", "t"), ("b", "t")], true).unwrap()
    }

    fn vee() -> Domain {
        Domain::build(&["a", "b"], &[], true).unwrap()
    }

    fn id(d: &Domain, n: &str) -> ElementId {
        d.element(n).unwrap()
    }

    #[test]
    fn diamond_gets_a_bottom() {
        let d = diamond();
        assert_eq!(d.len(), 4);
        assert!(d.has_synthetic_bottom());
        assert_eq!(d.name(d.bottom()), "_bot_");
        assert!(d.leq(d.bottom(), id(&d, "t")));
        assert!(!d.leq(id(&d, "a"), id(&d, "b")));
        assert!(d.leq(id(&d, "a"), id(&d, "t")));
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Domain::build(&["a", "b"], &[("a", "b"), ("b", "a")], true).unwrap_err();
        assert!(matches!(err, Error::Cycle(..)));
    }

    #[test]
    fn unknown_and_duplicate_names() {
        assert_eq!(
            Domain::build(&["a"], &[("a", "z")], true).unwrap_err(),
            Error::UnknownName("z".into())
        );
        assert_eq!(Domain::build(&["a", "a"], &[], true).unwrap_err(), Error::DuplicateName("a".into()));
        assert_eq!(Domain::build(&["a=b", "b"], &[], true).unwrap_err(), Error::DuplicateName("b".into()));
    }

    #[test]
    fn missing_bottom_without_auto() {
        assert_eq!(Domain::build(&["a", "b"], &[], false).unwrap_err(), Error::NoLeastElement);
        let chain = Domain::build(&["x", "y"], &[("x", "y")], false).unwrap();
        assert_eq!(chain.bottom(), id(&chain, "x"));
        assert!(!chain.has_synthetic_bottom());
    }

    #[test]
    fn aliases_resolve_to_one_element() {
        let d = Domain::build(&["2=rw", "3"], &[("3", "rw")], true).unwrap();
        assert_eq!(d.id("2"), d.id("rw"));
        assert_eq!(d.id("2=rw"), d.id("2"));
        assert_eq!(d.name(id(&d, "rw")), "2=rw");
    }

    #[test]
    fn mub_cases() {
        let d = diamond();
        let ab = d.set_named(&["a", "b"]).unwrap();
        assert_eq!(d.mub(&ab), d.set_named(&["t"]).unwrap());
        assert_eq!(d.mub(&d.empty_set()), d.set_of([d.bottom()]));

        let v = vee();
        assert!(v.mub(&v.set_named(&["a", "b"]).unwrap()).is_empty());
        assert!(!v.consistent_pair(id(&v, "a"), id(&v, "b")));
        assert!(v.consistent_pair(id(&v, "a"), id(&v, "a")));
    }

    #[test]
    fn closures_and_minima() {
        let d = diamond();
        let a = d.set_named(&["a"]).unwrap();
        assert_eq!(d.upward_closure(&a), d.set_named(&["a", "t"]).unwrap());
        assert!(d.minimal_elements(&d.empty_set()).is_empty());
        let at = d.set_named(&["a", "t"]).unwrap();
        assert_eq!(d.minimal_elements(&at), a);
        assert_eq!(d.maximal_elements(&d.all()), d.set_named(&["t"]).unwrap());
    }

    #[test]
    fn covers_of_diamond() {
        let d = diamond();
        let names: Vec<(String, String)> =
            d.covers().into_iter().map(|(x, y)| (d.name(x).to_string(), d.name(y).to_string())).collect();
        assert_eq!(names.len(), 4);
        assert!(names.contains(&("_bot_".into(), "a".into())));
        assert!(!names.contains(&("_bot_".into(), "t".into())));
    }
}
