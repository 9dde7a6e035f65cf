//! Fixpoint semantics induced by the immediate consequence operator and its
//! three-valued approximator: Kripke-Kleene, well-founded, (partial)
//! stable and supported models.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::Program;
use crate::interp::{PartialInterpretation, ShapeAssignment, ShapeId};
use crate::graph::NodeId;

/// Default cap on the number of candidates model enumeration may explore.
pub const DEFAULT_MAX_CANDIDATES: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemanticsKind {
    Supported,
    Stable,
    WellFounded,
    KripkeKleene,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 4] = [
        SemanticsKind::Supported,
        SemanticsKind::Stable,
        SemanticsKind::WellFounded,
        SemanticsKind::KripkeKleene,
    ];

    /// Whether the semantics yields a set of two-valued models rather than
    /// a single three-valued one.
    pub fn is_model_set(self) -> bool {
        matches!(self, SemanticsKind::Supported | SemanticsKind::Stable)
    }

    pub fn short_name(self) -> &'static str {
        match self {
            SemanticsKind::Supported => "supported",
            SemanticsKind::Stable => "stable",
            SemanticsKind::WellFounded => "wf",
            SemanticsKind::KripkeKleene => "kk",
        }
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for SemanticsKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "supported" | "sup" => Ok(SemanticsKind::Supported),
            "stable" | "st" => Ok(SemanticsKind::Stable),
            "wf" | "well-founded" => Ok(SemanticsKind::WellFounded),
            "kk" | "kripke-kleene" => Ok(SemanticsKind::KripkeKleene),
            other => Err(format!("unknown semantics `{other}`")),
        }
    }
}

/// Resource limits for model enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_candidates: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

pub fn t_op(prog: &Program, a: &ShapeAssignment) -> ShapeAssignment {
    prog.t_op(a)
}

pub fn psi_op(prog: &Program, p: &PartialInterpretation) -> PartialInterpretation {
    prog.psi_op(p)
}

/// Least fixpoint of a ≤t-monotone operator, by iteration from `bottom`.
///
/// On a lattice with `k` atoms an ascending chain stabilizes within `k + 1`
/// applications; exceeding that means `f` is not monotone.
pub fn lfp_monotone(
    bottom: ShapeAssignment,
    mut f: impl FnMut(&ShapeAssignment) -> ShapeAssignment,
) -> Result<ShapeAssignment> {
    let bound = bottom.vocabulary().len() * bottom.domain_len() + 1;
    let mut x = bottom;
    for _ in 0..=bound {
        let next = f(&x);
        if next == x {
            return Ok(x);
        }
        debug_assert!(x.leq_t(&next).unwrap_or(false), "operator not monotone");
        x = next;
    }
    Err(Error::NoConvergence(bound))
}

/// The ≤p-least fixpoint of the approximator.
pub fn kripke_kleene(prog: &Program) -> PartialInterpretation {
    iterate_from_least(prog, |p| prog.psi_op(p))
}

fn iterate_from_least(
    prog: &Program,
    mut step: impl FnMut(&PartialInterpretation) -> PartialInterpretation,
) -> PartialInterpretation {
    let mut p = prog.least_precise();
    loop {
        let next = step(&p);
        if next == p {
            return p;
        }
        debug_assert!(p.precision_leq(&next).unwrap_or(false));
        p = next;
    }
}

/// `(lfp z ↦ A(z, y)₁, lfp z ↦ A(x, z)₂)` for `p = (x, y)`.
///
/// Fails with [`Error::Inconsistent`] when the two least fixpoints do not
/// form a consistent pair, which can happen for arbitrary inputs but not
/// along the well-founded iteration.
pub fn stable_revision(prog: &Program, p: &PartialInterpretation) -> Result<PartialInterpretation> {
    let (lower, upper) = stable_revision_raw(prog, p.lower(), p.upper())?;
    PartialInterpretation::new(lower, upper)
}

fn stable_revision_raw(
    prog: &Program,
    x: &ShapeAssignment,
    y: &ShapeAssignment,
) -> Result<(ShapeAssignment, ShapeAssignment)> {
    let lower = lfp_monotone(prog.bottom(), |z| prog.psi_lower(z, y))?;
    let upper = lfp_monotone(prog.bottom(), |z| prog.psi_upper(x, z))?;
    Ok((lower, upper))
}

/// The ≤p-least partial stable fixpoint.
pub fn well_founded(prog: &Program) -> PartialInterpretation {
    iterate_from_least(prog, |p| {
        stable_revision(prog, p).expect("stable revision is consistent along the well-founded chain")
    })
}

/// Whether `a` is a fixpoint of the operator whose exact pair is a partial
/// stable fixpoint.
pub fn is_stable(prog: &Program, a: &ShapeAssignment) -> bool {
    if prog.t_op(a) != *a {
        return false;
    }
    match lfp_monotone(prog.bottom(), |z| prog.psi_lower(z, a)) {
        Ok(least) => least == *a,
        Err(_) => false,
    }
}

/// Joins `p` with `Ψ(p)` in the precision order until stable. `None` when
/// the two disagree on a decided atom, in which case no exact fixpoint is
/// ≤p-above `p`.
fn propagate(prog: &Program, mut p: PartialInterpretation) -> Option<PartialInterpretation> {
    loop {
        let q = prog.psi_op(&p);
        let (mut lower, mut upper) = p.clone().into_parts();
        for s in prog.vocabulary().ids() {
            lower.get_mut(s).union_with(q.lower().get(s));
            upper.get_mut(s).intersect_with(q.upper().get(s));
        }
        let next = PartialInterpretation::new(lower, upper).ok()?;
        if next == p {
            return Some(p);
        }
        p = next;
    }
}

fn first_unknown(p: &PartialInterpretation) -> Option<(ShapeId, NodeId)> {
    p.vocabulary().ids().find_map(|s| {
        let mut u = p.upper().get(s).clone();
        u.difference_with(p.lower().get(s));
        u.ones().next().map(|n| (s, NodeId(n as u32)))
    })
}

fn decide(p: &PartialInterpretation, s: ShapeId, n: NodeId, value: bool) -> PartialInterpretation {
    let (mut lower, mut upper) = p.clone().into_parts();
    if value {
        lower.get_mut(s).insert(n.index());
    } else {
        upper.get_mut(s).set(n.index(), false);
    }
    PartialInterpretation::new(lower, upper).expect("deciding an unknown atom keeps consistency")
}

struct Search<'p, 'a> {
    prog: &'p Program<'a>,
    visited: u128,
    cap: u128,
    found: Vec<ShapeAssignment>,
}

impl Search<'_, '_> {
    fn run(&mut self, p: PartialInterpretation) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::CandidateLimit { cap: self.cap });
        }
        let Some(p) = propagate(self.prog, p) else {
            return Ok(());
        };
        match first_unknown(&p) {
            None => {
                let a = p.lower().clone();
                if self.prog.t_op(&a) == a {
                    self.found.push(a);
                }
                Ok(())
            }
            Some((s, n)) => {
                self.run(decide(&p, s, n, false))?;
                self.run(decide(&p, s, n, true))
            }
        }
    }
}

/// All fixpoints of the immediate consequence operator.
///
/// The search starts from the Kripke-Kleene fixpoint, which approximates
/// every fixpoint, branches on undecided atoms (false first, vocabulary
/// then domain order) and propagates each branch with the approximator.
pub fn enumerate_supported(prog: &Program, limits: Limits) -> Result<Vec<ShapeAssignment>> {
    let mut search = Search {
        prog,
        visited: 0,
        cap: limits.max_candidates,
        found: Vec::new(),
    };
    search.run(prog.least_precise())?;
    Ok(search.found)
}

/// All stable models: the supported models passing [`is_stable`].
pub fn enumerate_stable(prog: &Program, limits: Limits) -> Result<Vec<ShapeAssignment>> {
    Ok(enumerate_supported(prog, limits)?
        .into_iter()
        .filter(|a| is_stable(prog, a))
        .collect())
}

/// All partial stable fixpoints, by sweeping every three-valued refinement
/// of the Kripke-Kleene fixpoint. Exponential in the number of atoms the
/// Kripke-Kleene fixpoint leaves unknown; meant for tiny instances.
pub fn enumerate_partial_stable(
    prog: &Program,
    limits: Limits,
) -> Result<Vec<PartialInterpretation>> {
    let kk = kripke_kleene(prog);
    let mut unknown = Vec::new();
    for s in prog.vocabulary().ids() {
        for n in kk.nodes_with(s, crate::truth::TruthValue::Unknown).ones() {
            unknown.push((s, NodeId(n as u32)));
        }
    }
    let needed = 3u128.checked_pow(unknown.len() as u32).unwrap_or(u128::MAX);
    if needed > limits.max_candidates {
        return Err(Error::CapExceeded {
            needed,
            cap: limits.max_candidates,
        });
    }
    let mut out = Vec::new();
    for code in 0..needed {
        let mut c = code;
        let (mut lower, mut upper) = kk.clone().into_parts();
        for &(s, n) in &unknown {
            match c % 3 {
                0 => upper.get_mut(s).set(n.index(), false),
                1 => {}
                _ => lower.get_mut(s).insert(n.index()),
            }
            c /= 3;
        }
        let p = PartialInterpretation::new_unchecked(lower, upper);
        // Partial stable fixpoints are fixpoints of the approximator.
        if prog.psi_op(&p) != p {
            continue;
        }
        let (l, u) = stable_revision_raw(prog, p.lower(), p.upper())?;
        if &l == p.lower() && &u == p.upper() {
            out.push(p);
        }
    }
    Ok(out)
}

/// The model(s) of a semantics, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Models {
    Partial(PartialInterpretation),
    Set(Vec<ShapeAssignment>),
}

pub fn models(prog: &Program, sigma: SemanticsKind, limits: Limits) -> Result<Models> {
    Ok(match sigma {
        SemanticsKind::KripkeKleene => Models::Partial(kripke_kleene(prog)),
        SemanticsKind::WellFounded => Models::Partial(well_founded(prog)),
        SemanticsKind::Supported => Models::Set(enumerate_supported(prog, limits)?),
        SemanticsKind::Stable => Models::Set(enumerate_stable(prog, limits)?),
    })
}
