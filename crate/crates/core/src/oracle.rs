//! Brute-force reference semantics for tiny instances.
//!
//! Everything here is computed by exhaustive sweeps over candidate
//! interpretations, evaluating rule bodies with the AST evaluators of
//! [`crate::eval`] only. Nothing from [`crate::fixpoint`] is used, so the
//! two can be compared in tests.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::eval::eval_shape_2v;
use crate::graph::{Graph, NodeSet};
use crate::interp::{PartialInterpretation, ShapeAssignment, ShapeId, Vocabulary};
use crate::schema::{Schema, ShapeExpr};

/// Largest `|S|·|Δ|` accepted by [`oracle_supported`].
pub const SUPPORTED_ATOM_CAP: usize = 20;
/// Largest `|S|·|Δ|` accepted by [`oracle_partial_stable`].
pub const PARTIAL_ATOM_CAP: usize = 12;

fn atoms(schema: &Schema, g: &Graph) -> usize {
    schema.vocabulary().len() * g.domain_len()
}

fn check_cap(n: usize, cap: usize, base: u128) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            needed: base.saturating_pow(n as u32),
            cap: base.saturating_pow(cap as u32),
        });
    }
    Ok(())
}

/// Assignment whose atom `(s, a)` is bit `s·|Δ| + a` of `bits`.
fn decode(vocab: &Arc<Vocabulary>, domain: usize, bits: impl Fn(usize) -> bool) -> ShapeAssignment {
    let mut m = ShapeAssignment::bottom(vocab.clone(), domain);
    for s in vocab.ids() {
        for a in 0..domain {
            if bits(s.index() * domain + a) {
                m.get_mut(s).insert(a);
            }
        }
    }
    m
}

fn immediate(schema: &Schema, g: &Graph, m: &ShapeAssignment) -> Result<ShapeAssignment> {
    let mut out = ShapeAssignment::bottom(schema.vocabulary().clone(), g.domain_len());
    for r in schema.rules() {
        let id = schema.vocabulary().id(&r.head).expect("head is in the vocabulary");
        *out.get_mut(id) = eval_shape_2v(&r.body, g, m)?;
    }
    Ok(out)
}

/// Every two-valued `m` with `T_D(m) = m`, by a sweep over all `2^(|S|·|Δ|)`
/// assignments. Models come in increasing order of their bit encoding.
pub fn oracle_supported(schema: &Schema, g: &Graph) -> Result<Vec<ShapeAssignment>> {
    let n = atoms(schema, g);
    check_cap(n, SUPPORTED_ATOM_CAP, 2)?;
    let vocab = schema.vocabulary();
    let mut out = Vec::new();
    for code in 0u64..(1u64 << n) {
        let m = decode(vocab, g.domain_len(), |i| code >> i & 1 == 1);
        if immediate(schema, g, &m)? == m {
            out.push(m);
        }
    }
    Ok(out)
}

/// Rewrites `φ` so that each shape name `s` becomes `+s` where it occurs
/// under an even number of negations and `-s` under an odd number.
fn split_polarity(phi: &ShapeExpr, positive: bool) -> ShapeExpr {
    use ShapeExpr::*;
    match phi {
        Name(s) => Name(format!("{}{s}", if positive { '+' } else { '-' })),
        Not(x) => Not(Box::new(split_polarity(x, !positive))),
        And(x, y) => And(
            Box::new(split_polarity(x, positive)),
            Box::new(split_polarity(y, positive)),
        ),
        Or(x, y) => Or(
            Box::new(split_polarity(x, positive)),
            Box::new(split_polarity(y, positive)),
        ),
        GeqN(n, e, x) => GeqN(*n, e.clone(), Box::new(split_polarity(x, positive))),
        Forall(e, x) => Forall(e.clone(), Box::new(split_polarity(x, positive))),
        Top | Nominal(_) | Eq(..) | Disj(..) | Closed(_) => phi.clone(),
    }
}

/// The approximator evaluated on arbitrary (not necessarily consistent)
/// pairs: positive occurrences read `pos`, negative occurrences read `neg`.
/// `Ψ(x, y)₁` is `bound(x, y)` and `Ψ(x, y)₂` is `bound(y, x)`.
struct Bounds<'a> {
    schema: &'a Schema,
    graph: &'a Graph,
    split: Vec<(usize, ShapeExpr)>,
    vocab: Arc<Vocabulary>,
}

impl<'a> Bounds<'a> {
    fn new(schema: &'a Schema, graph: &'a Graph) -> Self {
        let names = schema.vocabulary().names();
        let vocab = Arc::new(Vocabulary::new(
            names
                .iter()
                .map(|s| format!("+{s}"))
                .chain(names.iter().map(|s| format!("-{s}"))),
        ));
        let split = schema
            .rules()
            .iter()
            .map(|r| {
                let id = schema.vocabulary().id(&r.head).expect("head is in the vocabulary");
                (id.index(), split_polarity(&r.body, true))
            })
            .collect();
        Bounds {
            schema,
            graph,
            split,
            vocab,
        }
    }

    fn bound(&self, pos: &ShapeAssignment, neg: &ShapeAssignment) -> Result<ShapeAssignment> {
        let sets: Vec<NodeSet> = pos.sets().iter().chain(neg.sets()).cloned().collect();
        let joint = ShapeAssignment::from_sets(self.vocab.clone(), self.graph.domain_len(), sets)?;
        let mut out = ShapeAssignment::bottom(self.schema.vocabulary().clone(), self.graph.domain_len());
        for (i, body) in &self.split {
            *out.get_mut(ShapeId(*i as u32)) = eval_shape_2v(body, self.graph, &joint)?;
        }
        Ok(out)
    }

    /// Least fixpoint of a monotone operator by iteration from the empty
    /// assignment.
    fn lfp(&self, f: impl Fn(&ShapeAssignment) -> Result<ShapeAssignment>) -> Result<ShapeAssignment> {
        let mut z = ShapeAssignment::bottom(self.schema.vocabulary().clone(), self.graph.domain_len());
        for _ in 0..=atoms(self.schema, self.graph) {
            let next = f(&z)?;
            if next == z {
                return Ok(z);
            }
            z = next;
        }
        Err(Error::NoConvergence(atoms(self.schema, self.graph) + 1))
    }
}

/// Every consistent pair `(x, y)` with `x = lfp(z ↦ Ψ(z, y)₁)` and
/// `y = lfp(z ↦ Ψ(x, z)₂)`, by a sweep over all `3^(|S|·|Δ|)` pairs.
pub fn oracle_partial_stable(schema: &Schema, g: &Graph) -> Result<Vec<PartialInterpretation>> {
    let n = atoms(schema, g);
    check_cap(n, PARTIAL_ATOM_CAP, 3)?;
    let b = Bounds::new(schema, g);
    let vocab = schema.vocabulary();
    let total = 3u64.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        // Digit 0 is false, 1 unknown, 2 true.
        let digits: Vec<u64> = (0..n).map(|i| code / 3u64.pow(i as u32) % 3).collect();
        let x = decode(vocab, g.domain_len(), |i| digits[i] == 2);
        let y = decode(vocab, g.domain_len(), |i| digits[i] >= 1);
        if b.lfp(|z| b.bound(z, &y))? != x {
            continue;
        }
        if b.lfp(|z| b.bound(z, &x))? != y {
            continue;
        }
        out.push(PartialInterpretation::new(x, y)?);
    }
    Ok(out)
}

/// The unique model of a non-recursive schema, evaluating each rule once
/// its dependencies are known.
pub fn oracle_unique_extension(schema: &Schema, g: &Graph) -> Result<ShapeAssignment> {
    let vocab = schema.vocabulary();
    let mut m = ShapeAssignment::bottom(vocab.clone(), g.domain_len());
    let mut done: HashSet<&str> = HashSet::new();
    while done.len() < schema.rules().len() {
        let ready = schema.rules().iter().find(|r| {
            if done.contains(r.head.as_str()) {
                return false;
            }
            let mut ok = true;
            r.body.visit_names(&mut |s| ok &= done.contains(s));
            ok
        });
        let Some(r) = ready else {
            return Err(Error::InvalidSchema("schema is recursive".into()));
        };
        let s = eval_shape_2v(&r.body, g, &m)?;
        *m.get_mut(vocab.id(&r.head).expect("head is in the vocabulary")) = s;
        done.insert(&r.head);
    }
    Ok(m)
}
