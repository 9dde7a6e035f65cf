#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use recshacl::{
    Graph, PartialInterpretation, PathExpr, Rule, Schema, ShapeAssignment, ShapeExpr, Target,
    Vocabulary,
};

pub const PROPS: [&str; 2] = ["p", "q"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fig1() -> Graph {
    let text = std::fs::read_to_string(fixture("fig1.graph")).unwrap();
    recshacl::parse_graph(&text).unwrap()
}

pub fn schema_fixture(name: &str) -> Schema {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    recshacl::parse_schema(&text).unwrap()
}

/// A random schema over a random graph, small enough for exhaustive sweeps.
#[derive(Debug, Clone)]
pub struct Instance {
    pub seed: u64,
    pub graph: Graph,
    pub schema: Schema,
}

pub struct Gen {
    rng: ChaCha8Rng,
    nodes: Vec<String>,
    names: Vec<String>,
    /// Shape names a body may mention; `None` means all of them.
    allowed: Option<usize>,
}

impl Gen {
    fn path(&mut self, depth: u32) -> PathExpr {
        let p = PathExpr::prop(*PROPS.choose(&mut self.rng).unwrap());
        if depth == 0 {
            return p;
        }
        match self.rng.gen_range(0..9) {
            0 => p.inverse(),
            1 => self.path(depth - 1).union(self.path(depth - 1)),
            2 => self.path(depth - 1).then(self.path(depth - 1)),
            3 => self.path(depth - 1).star(),
            4 => self.path(depth - 1).optional(),
            _ => p,
        }
    }

    fn shape(&mut self, depth: u32) -> ShapeExpr {
        let allowed = self.allowed.unwrap_or(self.names.len());
        let leaf = depth == 0 || self.rng.gen_bool(0.25);
        if leaf {
            return match self.rng.gen_range(0..8) {
                0 => ShapeExpr::Top,
                1 => ShapeExpr::nominal(self.nodes.choose(&mut self.rng).unwrap().clone()),
                2 => ShapeExpr::Eq(self.path(1), self.path(1)),
                3 => ShapeExpr::Disj(self.path(1), self.path(1)),
                4 => {
                    let q: Vec<&str> = PROPS.iter().copied().filter(|_| self.rng.gen_bool(0.5)).collect();
                    ShapeExpr::closed(q)
                }
                _ if allowed > 0 => ShapeExpr::name(self.names[self.rng.gen_range(0..allowed)].clone()),
                _ => ShapeExpr::Top,
            };
        }
        match self.rng.gen_range(0..6) {
            0 => self.shape(depth - 1).and(self.shape(depth - 1)),
            1 => self.shape(depth - 1).or(self.shape(depth - 1)),
            2 => self.shape(depth - 1).not(),
            3 => ShapeExpr::forall(self.path(1), self.shape(depth - 1)),
            _ => {
                let n = self.rng.gen_range(1..=2);
                ShapeExpr::geq(n, self.path(1), self.shape(depth - 1))
            }
        }
    }
}

fn graph(rng: &mut ChaCha8Rng, domain: usize) -> (Graph, Vec<String>) {
    let nodes: Vec<String> = (0..domain).map(|i| format!("n{i}")).collect();
    let mut b = Graph::builder();
    for n in &nodes {
        b.node(n);
    }
    for a in &nodes {
        for p in PROPS {
            for c in &nodes {
                if rng.gen_bool(0.35) {
                    b.edge(a, p, c);
                }
            }
        }
    }
    (b.build(), nodes)
}

fn instance(seed: u64, recursive: bool, max_shapes: usize, max_domain: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let domain = rng.gen_range(1..=max_domain);
    let shapes = rng.gen_range(1..=max_shapes);
    let (graph, nodes) = graph(&mut rng, domain);
    let names: Vec<String> = (0..shapes).map(|i| format!("s{i}")).collect();
    let mut gen = Gen {
        rng,
        nodes,
        names: names.clone(),
        allowed: None,
    };
    let mut rules = Vec::new();
    for (i, name) in names.iter().enumerate() {
        if !recursive {
            gen.allowed = Some(i);
        }
        let body = gen.shape(3);
        rules.push(Rule::new(name.clone(), body));
    }
    gen.allowed = Some(0);
    let targets = (0..gen.rng.gen_range(0..=2))
        .map(|_| {
            let q = gen.shape(2);
            let s = names[gen.rng.gen_range(0..names.len())].clone();
            Target::new(q, s)
        })
        .collect();
    let schema = Schema::new(rules, targets).expect("generated schemas are well formed");
    Instance {
        seed,
        graph,
        schema,
    }
}

/// Random instances with at most three shape names and three nodes.
pub fn random_instances(count: usize, base_seed: u64) -> Vec<Instance> {
    (0..count as u64).map(|i| instance(base_seed + i, true, 3, 3)).collect()
}

/// Random schemas in which each rule mentions only earlier heads.
pub fn random_nonrecursive(count: usize, base_seed: u64) -> Vec<Instance> {
    (0..count as u64).map(|i| instance(base_seed + i, false, 3, 3)).collect()
}

/// Connective names occurring in a shape, for coverage checks.
pub fn connectives(phi: &ShapeExpr, out: &mut BTreeSet<&'static str>) {
    let tag = match phi {
        ShapeExpr::Top => "top",
        ShapeExpr::Name(_) => "name",
        ShapeExpr::Nominal(_) => "nominal",
        ShapeExpr::And(..) => "and",
        ShapeExpr::Or(..) => "or",
        ShapeExpr::Not(_) => "not",
        ShapeExpr::Forall(p, _) | ShapeExpr::GeqN(_, p, _) => {
            path_connectives(p, out);
            if matches!(phi, ShapeExpr::Forall(..)) {
                "forall"
            } else {
                "geq"
            }
        }
        ShapeExpr::Eq(a, b) | ShapeExpr::Disj(a, b) => {
            path_connectives(a, out);
            path_connectives(b, out);
            if matches!(phi, ShapeExpr::Eq(..)) {
                "eq"
            } else {
                "disjoint"
            }
        }
        ShapeExpr::Closed(_) => "closed",
    };
    out.insert(tag);
    for c in phi.children() {
        connectives(c, out);
    }
}

fn path_connectives(e: &PathExpr, out: &mut BTreeSet<&'static str>) {
    match e {
        PathExpr::Prop(_) => {
            out.insert("prop");
        }
        PathExpr::Inverse(a) => {
            out.insert("inverse");
            path_connectives(a, out);
        }
        PathExpr::Union(a, b) => {
            out.insert("union");
            path_connectives(a, out);
            path_connectives(b, out);
        }
        PathExpr::Compose(a, b) => {
            out.insert("compose");
            path_connectives(a, out);
            path_connectives(b, out);
        }
        PathExpr::Star(a) => {
            out.insert("star");
            path_connectives(a, out);
        }
        PathExpr::Optional(a) => {
            out.insert("optional");
            path_connectives(a, out);
        }
    }
}

pub const ALL_CONNECTIVES: [&str; 17] = [
    "top", "name", "nominal", "and", "or", "not", "forall", "geq", "eq", "disjoint", "closed",
    "prop", "inverse", "union", "compose", "star", "optional",
];

/// The two-valued assignment with atom `(s, a)` true iff bit `s·|Δ| + a`
/// of `code` is set.
pub fn assignment(vocab: &Arc<Vocabulary>, domain: usize, code: u64) -> ShapeAssignment {
    let mut m = ShapeAssignment::bottom(vocab.clone(), domain);
    for s in vocab.ids() {
        for a in 0..domain {
            if code >> (s.index() * domain + a) & 1 == 1 {
                m.get_mut(s).insert(a);
            }
        }
    }
    m
}

/// The consistent pair whose atom `(s, a)` is base-3 digit `s·|Δ| + a` of
/// `code`: 0 false, 1 unknown, 2 true.
pub fn pair(vocab: &Arc<Vocabulary>, domain: usize, code: u64) -> PartialInterpretation {
    let mut lower = ShapeAssignment::bottom(vocab.clone(), domain);
    let mut upper = lower.clone();
    for s in vocab.ids() {
        for a in 0..domain {
            let d = code / 3u64.pow((s.index() * domain + a) as u32) % 3;
            if d == 2 {
                lower.get_mut(s).insert(a);
            }
            if d >= 1 {
                upper.get_mut(s).insert(a);
            }
        }
    }
    PartialInterpretation::new(lower, upper).unwrap()
}

/// Inverse of [`pair`].
pub fn pair_code(p: &PartialInterpretation) -> u64 {
    let domain = p.domain_len();
    let mut code = 0;
    for s in p.vocabulary().ids() {
        for a in 0..domain {
            let d = p.lower().get(s).contains(a) as u64 + p.upper().get(s).contains(a) as u64;
            code += d * 3u64.pow((s.index() * domain + a) as u32);
        }
    }
    code
}

pub fn sorted(mut v: Vec<ShapeAssignment>) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = v
        .drain(..)
        .map(|m| m.sets().iter().map(|s| s.ones().collect()).collect())
        .collect();
    out.sort();
    out
}
