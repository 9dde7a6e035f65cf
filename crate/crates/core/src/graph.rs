//! Finite graph interpretations: a domain of nodes, named constants and
//! named binary relations (properties).

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of nodes, stored positionally over the graph domain.
pub type NodeSet = FixedBitSet;

/// Dense index of a node in a graph's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of a property in a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropId(pub u32);

/// A binary relation over a fixed domain, stored as one successor row per
/// node. `image(a)` is `R(a) = {b | (a, b) ∈ R}`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryRelation {
    rows: Vec<FixedBitSet>,
}

impl BinaryRelation {
    pub fn empty(domain: usize) -> Self {
        BinaryRelation {
            rows: vec![FixedBitSet::with_capacity(domain); domain],
        }
    }

    pub fn identity(domain: usize) -> Self {
        let mut r = Self::empty(domain);
        for a in 0..domain {
            r.rows[a].insert(a);
        }
        r
    }

    pub fn from_pairs(domain: usize, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut r = Self::empty(domain);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn domain_len(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, a: NodeId, b: NodeId) {
        self.rows[a.index()].insert(b.index());
    }

    pub fn contains(&self, a: NodeId, b: NodeId) -> bool {
        self.rows[a.index()].contains(b.index())
    }

    pub fn image(&self, a: NodeId) -> &FixedBitSet {
        &self.rows[a.index()]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_clear())
    }

    /// Pairs in lexicographic (domain) order.
    pub fn pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.rows.iter().enumerate().flat_map(|(a, row)| {
            row.ones()
                .map(move |b| (NodeId(a as u32), NodeId(b as u32)))
        })
    }

    pub fn inverse(&self) -> Self {
        let mut r = Self::empty(self.domain_len());
        for (a, b) in self.pairs() {
            r.insert(b, a);
        }
        r
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (row, o) in r.rows.iter_mut().zip(&other.rows) {
            row.union_with(o);
        }
        r
    }

    /// Relational composition `self ∘ other`: first `self`, then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.domain_len();
        let mut r = Self::empty(n);
        for a in 0..n {
            let row = &mut r.rows[a];
            for c in self.rows[a].ones() {
                row.union_with(&other.rows[c]);
            }
        }
        r
    }

    /// Reflexive-transitive closure, by a breadth-first search from each node.
    pub fn reflexive_transitive_closure(&self) -> Self {
        let n = self.domain_len();
        let mut r = Self::empty(n);
        let mut stack = Vec::new();
        for a in 0..n {
            let reach = &mut r.rows[a];
            reach.insert(a);
            stack.push(a);
            while let Some(c) = stack.pop() {
                for b in self.rows[c].ones() {
                    if !reach.put(b) {
                        stack.push(b);
                    }
                }
            }
        }
        r
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.pairs().map(|(a, b)| (a.0, b.0)))
            .finish()
    }
}

/// A graph interpretation. The domain, constants and properties are fixed
/// at construction time; every node name is also a constant.
#[derive(Debug, Clone)]
pub struct Graph {
    nodes: Vec<String>,
    node_index: HashMap<String, NodeId>,
    props: Vec<(String, BinaryRelation)>,
    prop_index: HashMap<String, PropId>,
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn empty() -> Self {
        GraphBuilder::default().build()
    }

    pub fn domain_len(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn node_name(&self, n: NodeId) -> &str {
        &self.nodes[n.index()]
    }

    /// Looks up a constant (node name).
    pub fn constant(&self, name: &str) -> Option<NodeId> {
        self.node_index.get(name).copied()
    }

    pub fn prop_names(&self) -> impl Iterator<Item = &str> {
        self.props.iter().map(|(n, _)| n.as_str())
    }

    pub fn prop_id(&self, name: &str) -> Option<PropId> {
        self.prop_index.get(name).copied()
    }

    pub fn prop(&self, id: PropId) -> &BinaryRelation {
        &self.props[id.0 as usize].1
    }

    /// The relation named `name`, if the graph mentions it.
    pub fn relation(&self, name: &str) -> Option<&BinaryRelation> {
        self.prop_id(name).map(|id| self.prop(id))
    }

    pub fn full_set(&self) -> NodeSet {
        let mut s = NodeSet::with_capacity(self.domain_len());
        s.insert_range(..);
        s
    }

    pub fn empty_set(&self) -> NodeSet {
        NodeSet::with_capacity(self.domain_len())
    }

    /// Node names of a set, in domain order.
    pub fn names_of<'a>(&'a self, set: &'a NodeSet) -> impl Iterator<Item = &'a str> + 'a {
        set.ones().map(move |i| self.nodes[i].as_str())
    }

    /// Builds a node set from names; panics on unknown names.
    pub fn set_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> NodeSet {
        let mut s = self.empty_set();
        for n in names {
            let id = self
                .constant(n)
                .unwrap_or_else(|| panic!("unknown node `{n}`"));
            s.insert(id.index());
        }
        s
    }

    /// Triples `(subject, property, object)` in property order, then
    /// subject order, then object order.
    pub fn triples(&self) -> impl Iterator<Item = (&str, &str, &str)> + '_ {
        self.props.iter().flat_map(move |(p, rel)| {
            rel.pairs()
                .map(move |(a, b)| (self.node_name(a), p.as_str(), self.node_name(b)))
        })
    }
}

/// Incremental construction of a [`Graph`]. Nodes get indices in order of
/// first mention.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    nodes: Vec<String>,
    node_index: HashMap<String, NodeId>,
    props: Vec<(String, Vec<(NodeId, NodeId)>)>,
    prop_index: HashMap<String, PropId>,
}

impl GraphBuilder {
    pub fn node(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.node_index.get(name) {
            return id;
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(name.to_owned());
        self.node_index.insert(name.to_owned(), id);
        id
    }

    pub fn edge(&mut self, subject: &str, prop: &str, object: &str) -> &mut Self {
        let a = self.node(subject);
        let b = self.node(object);
        let p = match self.prop_index.get(prop) {
            Some(&p) => p,
            None => {
                let p = PropId(self.props.len() as u32);
                self.props.push((prop.to_owned(), Vec::new()));
                self.prop_index.insert(prop.to_owned(), p);
                p
            }
        };
        self.props[p.0 as usize].1.push((a, b));
        self
    }

    pub fn build(self) -> Graph {
        let n = self.nodes.len();
        let props = self
            .props
            .into_iter()
            .map(|(name, pairs)| (name, BinaryRelation::from_pairs(n, pairs)))
            .collect();
        Graph {
            nodes: self.nodes,
            node_index: self.node_index,
            props,
            prop_index: self.prop_index,
        }
    }
}
