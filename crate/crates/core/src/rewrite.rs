//! Elementary moves on terms and the congruence they generate.
//!
//! Five local rewrites (associativity, left and right units, functoriality
//! of units, exchange) generate equality of cells in free ω-categories.
//! [`equivalent`] searches the move graph within a [`Budget`] and only
//! answers [`Verdict::Proved`] or [`Verdict::Refuted`] when it has a path or
//! a separating invariant.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::nerve::{CellRef, Finite2Category, FiniteCategory};
use crate::polygraph::Polygraph;
use crate::term::{format_position, CellTerm, GeneratorId, Position, Step};

/// Outcome of a budgeted decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Proved,
    Refuted,
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Proved
        } else {
            Verdict::Refuted
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Proved => "PROVED",
            Verdict::Refuted => "REFUTED",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// Search limits: explored terms and growth of term size over the inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: usize,
    pub extra_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 100_000,
            extra_size: 8,
        }
    }
}

impl Budget {
    /// The smaller budget used for composability checks during construction.
    pub fn internal() -> Self {
        Budget {
            nodes: 4_000,
            extra_size: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Assoc,
    UnitL,
    UnitR,
    UnitFunct,
    Exchange,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Assoc => "ASSOC",
            MoveKind::UnitL => "UNIT_L",
            MoveKind::UnitR => "UNIT_R",
            MoveKind::UnitFunct => "UNIT_FUNCT",
            MoveKind::Exchange => "EXCHANGE",
        })
    }
}

/// Forward directions: `((x*y)*z) -> (x*(y*z))`, unit removal,
/// `(i_c *k i_e) -> i_(c *k e)`, and `((x*k y) *l (z*k t)) -> ((x*l z) *k (y*l t))`
/// for `l < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// One rewrite of the subterm at `position`.
///
/// Unit moves record the composition index `level` of the unit; a unit
/// insertion may also carry the base cell of the inserted unit (otherwise the
/// computed boundary is used).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryMove {
    pub kind: MoveKind,
    pub position: Position,
    pub direction: Direction,
    pub level: Option<usize>,
    pub unit: Option<CellTerm>,
}

impl fmt::Display for ElementaryMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} @ {} {}",
            self.kind,
            format_position(&self.position),
            self.direction
        )?;
        if let Some(k) = self.level {
            write!(f, " *{k}")?;
        }
        if let Some(u) = &self.unit {
            write!(f, " {u}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Check {
    Quick,
    Full,
}

fn cells_equal(p: &Polygraph, a: &CellTerm, b: &CellTerm, check: Check) -> bool {
    match check {
        Check::Full => p.decide_equal(a, b) == Verdict::Proved,
        Check::Quick => quick_equal(p, a, b),
    }
}

/// Equality test that never searches: exact up to dimension 1, canonical
/// forms above. Sound but incomplete.
pub fn quick_equal(p: &Polygraph, a: &CellTerm, b: &CellTerm) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    if a == b {
        return true;
    }
    match a.dim() {
        0 => false,
        1 => matches!((p.path(a), p.path(b)), (Ok(x), Ok(y)) if x == y),
        _ => canonical_form(p, a) == canonical_form(p, b),
    }
}

fn strip_units(t: &CellTerm, n: usize) -> &CellTerm {
    let mut cur = t;
    for _ in 0..n {
        if let CellTerm::Id(inner) = cur {
            cur = inner;
        }
    }
    cur
}

/// The rewrite of a single subterm, or `None` when it does not apply.
fn local_rewrite(
    p: &Polygraph,
    s: &CellTerm,
    kind: MoveKind,
    dir: Direction,
    level: Option<usize>,
    unit: Option<&CellTerm>,
    check: Check,
) -> Option<CellTerm> {
    use Direction::*;
    use MoveKind::*;
    let d = s.dim();
    match (kind, dir, s) {
        (Assoc, Forward, CellTerm::Comp(k, a, z)) => match &**a {
            CellTerm::Comp(k2, x, y) if k2 == k => Some(CellTerm::comp_unchecked(
                *k,
                (**x).clone(),
                CellTerm::comp_unchecked(*k, (**y).clone(), (**z).clone()),
            )),
            _ => None,
        },
        (Assoc, Backward, CellTerm::Comp(k, x, b)) => match &**b {
            CellTerm::Comp(k2, y, z) if k2 == k => Some(CellTerm::comp_unchecked(
                *k,
                CellTerm::comp_unchecked(*k, (**x).clone(), (**y).clone()),
                (**z).clone(),
            )),
            _ => None,
        },
        (UnitL, Forward, CellTerm::Comp(k, a, b)) => {
            (level.is_none_or(|l| l == *k) && a.is_unit_on_dim(*k)).then(|| (**b).clone())
        }
        (UnitR, Forward, CellTerm::Comp(k, a, b)) => {
            (level.is_none_or(|l| l == *k) && b.is_unit_on_dim(*k)).then(|| (**a).clone())
        }
        (UnitL | UnitR, Backward, _) => {
            let k = level?;
            if k >= d {
                return None;
            }
            let left = kind == UnitL;
            let boundary = if left { p.tgt_k(s, k) } else { p.src_k(s, k) }.ok()?;
            let base = match unit {
                Some(z) => {
                    if z.dim() != k || !cells_equal(p, z, &boundary, check) {
                        return None;
                    }
                    z.clone()
                }
                None => boundary,
            };
            let u = CellTerm::iterated_id(base, d - k);
            Some(if left {
                CellTerm::comp_unchecked(k, u, s.clone())
            } else {
                CellTerm::comp_unchecked(k, s.clone(), u)
            })
        }
        (UnitFunct, Forward, CellTerm::Comp(k, a, b)) if *k + 1 < d => match (&**a, &**b) {
            (CellTerm::Id(c), CellTerm::Id(e)) => Some(CellTerm::id(CellTerm::comp_unchecked(
                *k,
                (**c).clone(),
                (**e).clone(),
            ))),
            _ => None,
        },
        (UnitFunct, Backward, CellTerm::Id(inner)) => match &**inner {
            CellTerm::Comp(k, c, e) => Some(CellTerm::comp_unchecked(
                *k,
                CellTerm::id((**c).clone()),
                CellTerm::id((**e).clone()),
            )),
            _ => None,
        },
        (Exchange, Forward, CellTerm::Comp(l, a, b)) => match (&**a, &**b) {
            (CellTerm::Comp(k, x, y), CellTerm::Comp(k2, z, t)) if k == k2 && l < k => {
                Some(CellTerm::comp_unchecked(
                    *k,
                    CellTerm::comp_unchecked(*l, (**x).clone(), (**z).clone()),
                    CellTerm::comp_unchecked(*l, (**y).clone(), (**t).clone()),
                ))
            }
            _ => None,
        },
        (Exchange, Backward, CellTerm::Comp(k, a, b)) => match (&**a, &**b) {
            (CellTerm::Comp(l, x, z), CellTerm::Comp(l2, y, t)) if l == l2 && l < k => {
                let ok = |u: &CellTerm, v: &CellTerm| match (p.src_k(u, *k), p.tgt_k(v, *k)) {
                    (Ok(su), Ok(tv)) => cells_equal(p, &su, &tv, check),
                    _ => false,
                };
                (ok(x, y) && ok(z, t)).then(|| {
                    CellTerm::comp_unchecked(
                        *l,
                        CellTerm::comp_unchecked(*k, (**x).clone(), (**y).clone()),
                        CellTerm::comp_unchecked(*k, (**z).clone(), (**t).clone()),
                    )
                })
            }
            _ => None,
        },
        _ => None,
    }
}

/// Apply a move, checking that it is applicable. Conditions that depend on
/// equality of lower cells are decided with the internal budget.
pub fn apply_move(p: &Polygraph, t: &CellTerm, mv: &ElementaryMove) -> Result<CellTerm> {
    let s = t.subterm(&mv.position).ok_or_else(|| {
        Error::Invalid(format!("no subterm at {}", format_position(&mv.position)))
    })?;
    let r = local_rewrite(
        p,
        s,
        mv.kind,
        mv.direction,
        mv.level,
        mv.unit.as_ref(),
        Check::Full,
    )
    .ok_or_else(|| Error::Invalid(format!("move {mv} does not apply to {s}")))?;
    t.replace(&mv.position, r)
        .ok_or_else(|| Error::Invalid(format!("no subterm at {}", format_position(&mv.position))))
}

/// The move undoing `mv`, given the term `before` it was applied to.
pub fn inverse_move(before: &CellTerm, mv: &ElementaryMove) -> ElementaryMove {
    let mut inv = ElementaryMove {
        kind: mv.kind,
        position: mv.position.clone(),
        direction: mv.direction.flip(),
        level: mv.level,
        unit: None,
    };
    if matches!(mv.kind, MoveKind::UnitL | MoveKind::UnitR) && mv.direction == Direction::Forward {
        if let Some(CellTerm::Comp(k, a, b)) = before.subterm(&mv.position) {
            let u = if mv.kind == MoveKind::UnitL { a } else { b };
            let d = u.dim();
            inv.level = Some(*k);
            inv.unit = Some(strip_units(u, d - k).clone());
        }
    }
    inv
}

const KINDS: [(MoveKind, Direction); 8] = [
    (MoveKind::Assoc, Direction::Forward),
    (MoveKind::Assoc, Direction::Backward),
    (MoveKind::UnitL, Direction::Forward),
    (MoveKind::UnitR, Direction::Forward),
    (MoveKind::UnitFunct, Direction::Forward),
    (MoveKind::UnitFunct, Direction::Backward),
    (MoveKind::Exchange, Direction::Forward),
    (MoveKind::Exchange, Direction::Backward),
];

/// Every move applicable to `t`, in a fixed order, with its result.
///
/// Side conditions of backward exchanges are tested with [`quick_equal`], so
/// the enumeration is complete for terms of dimension at most 2.
pub fn elementary_moves(p: &Polygraph, t: &CellTerm) -> Vec<(ElementaryMove, CellTerm)> {
    let mut out = Vec::new();
    if t.dim() == 0 {
        return out;
    }
    for pos in t.positions() {
        let s = t.subterm(&pos).expect("position comes from the term");
        let mut push = |kind, direction, level, r: CellTerm| {
            let result = t.replace(&pos, r).expect("position comes from the term");
            out.push((
                ElementaryMove {
                    kind,
                    position: pos.clone(),
                    direction,
                    level,
                    unit: None,
                },
                result,
            ));
        };
        for (kind, dir) in KINDS {
            if let Some(r) = local_rewrite(p, s, kind, dir, None, None, Check::Quick) {
                let level = match (kind, s) {
                    (MoveKind::UnitL | MoveKind::UnitR, CellTerm::Comp(k, _, _)) => Some(*k),
                    _ => None,
                };
                push(kind, dir, level, r);
            }
        }
        for k in 0..s.dim() {
            for kind in [MoveKind::UnitL, MoveKind::UnitR] {
                if let Some(r) =
                    local_rewrite(p, s, kind, Direction::Backward, Some(k), None, Check::Quick)
                {
                    push(kind, Direction::Backward, Some(k), r);
                }
            }
        }
    }
    out
}

const CANONICAL_STEP_CAP: usize = 10_000;

/// Deterministic representative obtained by absorbing units, pushing units
/// out of composites, left-associating and putting smaller composition
/// indices outside.
///
/// Used as a hashing key: equal canonical forms imply equivalence, the
/// converse is not claimed.
pub fn canonical_form(p: &Polygraph, t: &CellTerm) -> CellTerm {
    canonical_form_traced(p, t).0
}

/// [`canonical_form`] together with the moves leading to it.
pub fn canonical_form_traced(p: &Polygraph, t: &CellTerm) -> (CellTerm, Vec<ElementaryMove>) {
    let mut normalizer = Normalizer {
        p,
        trace: Vec::new(),
        steps: 0,
    };
    let mut pos = Vec::new();
    let r = normalizer.normalize(t, &mut pos);
    (r, normalizer.trace)
}

struct Normalizer<'a> {
    p: &'a Polygraph,
    trace: Vec<ElementaryMove>,
    steps: usize,
}

const CANONICAL_RULES: [(MoveKind, Direction); 5] = [
    (MoveKind::UnitL, Direction::Forward),
    (MoveKind::UnitR, Direction::Forward),
    (MoveKind::UnitFunct, Direction::Forward),
    (MoveKind::Assoc, Direction::Backward),
    (MoveKind::Exchange, Direction::Backward),
];

impl Normalizer<'_> {
    fn normalize(&mut self, t: &CellTerm, pos: &mut Position) -> CellTerm {
        let t = match t {
            CellTerm::Gen(_) => return t.clone(),
            CellTerm::Id(inner) => {
                pos.push(Step::Inner);
                let i = self.normalize(inner, pos);
                pos.pop();
                CellTerm::id(i)
            }
            CellTerm::Comp(k, a, b) => {
                pos.push(Step::Left);
                let a = self.normalize(a, pos);
                pos.pop();
                pos.push(Step::Right);
                let b = self.normalize(b, pos);
                pos.pop();
                CellTerm::comp_unchecked(*k, a, b)
            }
        };
        self.root(t, pos)
    }

    /// Rewrite at the root of a term whose children are already normal.
    fn root(&mut self, t: CellTerm, pos: &mut Position) -> CellTerm {
        let mut t = t;
        loop {
            if self.steps >= CANONICAL_STEP_CAP || !matches!(t, CellTerm::Comp(..)) {
                return t;
            }
            let Some((kind, dir, r)) = CANONICAL_RULES.iter().find_map(|&(kind, dir)| {
                local_rewrite(self.p, &t, kind, dir, None, None, Check::Quick)
                    .map(|r| (kind, dir, r))
            }) else {
                return t;
            };
            self.steps += 1;
            let level = match (kind, &t) {
                (MoveKind::UnitL | MoveKind::UnitR, CellTerm::Comp(k, _, _)) => Some(*k),
                _ => None,
            };
            self.trace.push(ElementaryMove {
                kind,
                position: pos.clone(),
                direction: dir,
                level,
                unit: None,
            });
            t = match (kind, r) {
                (MoveKind::UnitL | MoveKind::UnitR, r) => r,
                (MoveKind::UnitFunct, CellTerm::Id(inner)) => {
                    pos.push(Step::Inner);
                    let i = self.root((*inner).clone(), pos);
                    pos.pop();
                    CellTerm::id(i)
                }
                (MoveKind::Assoc, CellTerm::Comp(k, a, b)) => {
                    pos.push(Step::Left);
                    let a = self.root((*a).clone(), pos);
                    pos.pop();
                    CellTerm::Comp(k, std::sync::Arc::new(a), b)
                }
                (MoveKind::Exchange, CellTerm::Comp(k, a, b)) => {
                    pos.push(Step::Left);
                    let a = self.root((*a).clone(), pos);
                    pos.pop();
                    pos.push(Step::Right);
                    let b = self.root((*b).clone(), pos);
                    pos.pop();
                    CellTerm::comp_unchecked(k, a, b)
                }
                (_, r) => r,
            };
        }
    }
}

/// Result of an equivalence query. For `Proved`, `path` rewrites the first
/// term into the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub verdict: Verdict,
    pub path: Vec<ElementaryMove>,
    pub explored: usize,
    pub reason: String,
}

impl Equivalence {
    fn proved(path: Vec<ElementaryMove>, explored: usize, reason: &str) -> Self {
        Equivalence {
            verdict: Verdict::Proved,
            path,
            explored,
            reason: reason.to_string(),
        }
    }

    fn refuted(reason: String) -> Self {
        Equivalence {
            verdict: Verdict::Refuted,
            path: Vec::new(),
            explored: 0,
            reason,
        }
    }
}

/// Number of occurrences of each top-dimensional generator.
pub fn top_weights(t: &CellTerm) -> HashMap<GeneratorId, usize> {
    let d = t.dim();
    let mut out = HashMap::new();
    fn walk(t: &CellTerm, d: usize, out: &mut HashMap<GeneratorId, usize>) {
        match t {
            CellTerm::Gen(g) if g.dim() == d => *out.entry(g.clone()).or_default() += 1,
            CellTerm::Gen(_) => {}
            CellTerm::Id(inner) => walk(inner, d, out),
            CellTerm::Comp(_, a, b) => {
                walk(a, d, out);
                walk(b, d, out);
            }
        }
    }
    walk(t, d, &mut out);
    out
}

/// Apply a sequence of moves, returning every intermediate term.
pub fn replay(p: &Polygraph, t: &CellTerm, path: &[ElementaryMove]) -> Result<Vec<CellTerm>> {
    let mut terms = vec![t.clone()];
    for mv in path {
        let next = apply_move(p, terms.last().expect("nonempty"), mv)?;
        terms.push(next);
    }
    Ok(terms)
}

/// Inverts a move sequence starting at `start`.
fn invert_path(start: &CellTerm, path: &[ElementaryMove]) -> Vec<ElementaryMove> {
    let mut terms = vec![start.clone()];
    for mv in path {
        let before = terms.last().expect("nonempty");
        let r = local_rewrite_unchecked(before, mv).unwrap_or_else(|| before.clone());
        terms.push(r);
    }
    path.iter()
        .zip(terms.iter())
        .map(|(mv, before)| inverse_move(before, mv))
        .rev()
        .collect()
}

/// Replays a move known to be valid without re-checking side conditions.
fn local_rewrite_unchecked(t: &CellTerm, mv: &ElementaryMove) -> Option<CellTerm> {
    let s = t.subterm(&mv.position)?;
    let r = local_rewrite_trusting(s, mv)?;
    t.replace(&mv.position, r)
}

fn local_rewrite_trusting(s: &CellTerm, mv: &ElementaryMove) -> Option<CellTerm> {
    let empty = Polygraph::empty();
    match (mv.kind, mv.direction) {
        (MoveKind::UnitL | MoveKind::UnitR, Direction::Backward) => {
            // The boundary cannot be recomputed without the polygraph, so
            // trusted replay needs the unit base.
            let k = mv.level?;
            let base = mv.unit.clone()?;
            let u = CellTerm::iterated_id(base, s.dim() - k);
            Some(if mv.kind == MoveKind::UnitL {
                CellTerm::comp_unchecked(k, u, s.clone())
            } else {
                CellTerm::comp_unchecked(k, s.clone(), u)
            })
        }
        (MoveKind::Exchange, Direction::Backward) => match s {
            CellTerm::Comp(k, a, b) => match (&**a, &**b) {
                (CellTerm::Comp(l, x, z), CellTerm::Comp(_, y, t)) => {
                    Some(CellTerm::comp_unchecked(
                        *l,
                        CellTerm::comp_unchecked(*k, (**x).clone(), (**y).clone()),
                        CellTerm::comp_unchecked(*k, (**z).clone(), (**t).clone()),
                    ))
                }
                _ => None,
            },
            _ => None,
        },
        (kind, dir) => local_rewrite(&empty, s, kind, dir, mv.level, None, Check::Quick),
    }
}

/// Fill in unit bases of backward unit moves so that the path can be
/// inverted and replayed without the polygraph.
fn annotate_path(p: &Polygraph, start: &CellTerm, path: &mut [ElementaryMove]) -> Result<()> {
    let mut cur = start.clone();
    for mv in path.iter_mut() {
        if matches!(mv.kind, MoveKind::UnitL | MoveKind::UnitR)
            && mv.direction == Direction::Backward
            && mv.unit.is_none()
        {
            let s = cur
                .subterm(&mv.position)
                .ok_or_else(|| Error::Invalid("bad path".into()))?;
            let k = mv
                .level
                .ok_or_else(|| Error::Invalid("unit move without level".into()))?;
            mv.unit = Some(if mv.kind == MoveKind::UnitL {
                p.tgt_k(s, k)?
            } else {
                p.src_k(s, k)?
            });
        }
        cur = local_rewrite_unchecked(&cur, mv)
            .ok_or_else(|| Error::Invalid(format!("move {mv} does not apply")))?;
    }
    Ok(())
}

/// Budgeted decision of equality of two cells.
pub fn decide(p: &Polygraph, u: &CellTerm, v: &CellTerm, budget: &Budget) -> Verdict {
    match equivalent(p, u, v, budget) {
        Ok(e) => e.verdict,
        Err(_) => Verdict::Refuted,
    }
}

/// Decide whether two terms denote the same cell.
///
/// Tries, in order: syntactic equality, separating invariants (boundaries,
/// top-dimensional weights), equal canonical forms, then a bidirectional
/// breadth-first search over the move graph whose two frontiers meet
/// through canonical forms.
pub fn equivalent(
    p: &Polygraph,
    u: &CellTerm,
    v: &CellTerm,
    budget: &Budget,
) -> Result<Equivalence> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
            context: "equivalence of cells".into(),
        });
    }
    if u == v {
        return Ok(Equivalence::proved(Vec::new(), 1, "identical terms"));
    }
    let d = u.dim();
    if d == 0 {
        return Ok(Equivalence::refuted("distinct objects".into()));
    }
    if top_weights(u) != top_weights(v) {
        return Ok(Equivalence::refuted(format!(
            "weight vectors in dimension {d} differ"
        )));
    }
    for (which, a, b) in [
        ("sources", p.src(u)?, p.src(v)?),
        ("targets", p.tgt(u)?, p.tgt(v)?),
    ] {
        if p.decide_equal(&a, &b) == Verdict::Refuted {
            return Ok(Equivalence::refuted(format!("{which} differ")));
        }
    }
    if d == 1 {
        let proved = p.path(u)? == p.path(v)?;
        if !proved {
            return Ok(Equivalence::refuted("distinct paths".into()));
        }
    }
    let (cu, mut tu) = canonical_form_traced(p, u);
    let (cv, mut tv) = canonical_form_traced(p, v);
    if cu == cv {
        annotate_path(p, u, &mut tu)?;
        annotate_path(p, v, &mut tv)?;
        tu.extend(invert_path(v, &tv));
        return Ok(Equivalence::proved(tu, 2, "equal canonical forms"));
    }
    search(p, u, v, budget)
}

struct Side {
    terms: Vec<CellTerm>,
    parent: Vec<Option<(usize, ElementaryMove)>>,
    index: HashMap<CellTerm, usize>,
    keys: HashMap<CellTerm, usize>,
    frontier: VecDeque<usize>,
}

impl Side {
    fn new(p: &Polygraph, t: &CellTerm) -> Self {
        let mut s = Side {
            terms: vec![t.clone()],
            parent: vec![None],
            index: HashMap::new(),
            keys: HashMap::new(),
            frontier: VecDeque::new(),
        };
        s.index.insert(t.clone(), 0);
        s.keys.insert(canonical_form(p, t), 0);
        s.frontier.push_back(0);
        s
    }

    /// Moves from the root of this side to node `i`.
    fn path_to(&self, i: usize) -> Vec<ElementaryMove> {
        let mut out = Vec::new();
        let mut cur = i;
        while let Some((prev, mv)) = &self.parent[cur] {
            out.push(mv.clone());
            cur = *prev;
        }
        out.reverse();
        out
    }
}

fn search(p: &Polygraph, u: &CellTerm, v: &CellTerm, budget: &Budget) -> Result<Equivalence> {
    let max_size = u.size().max(v.size()) + budget.extra_size;
    let mut sides = [Side::new(p, u), Side::new(p, v)];
    let mut explored = 2;
    loop {
        let which = match (sides[0].frontier.is_empty(), sides[1].frontier.is_empty()) {
            (true, true) => break,
            (false, true) => 0,
            (true, false) => 1,
            (false, false) => usize::from(sides[1].frontier.len() < sides[0].frontier.len()),
        };
        let other = 1 - which;
        let i = sides[which]
            .frontier
            .pop_front()
            .expect("nonempty frontier");
        let t = sides[which].terms[i].clone();
        for (mv, next) in elementary_moves(p, &t) {
            if next.size() > max_size || sides[which].index.contains_key(&next) {
                continue;
            }
            let j = sides[which].terms.len();
            sides[which].terms.push(next.clone());
            sides[which].parent.push(Some((i, mv)));
            sides[which].index.insert(next.clone(), j);
            explored += 1;
            let (key, key_trace) = canonical_form_traced(p, &next);
            let meet = sides[other]
                .index
                .get(&next)
                .map(|&m| (m, None))
                .or_else(|| sides[other].keys.get(&key).map(|&m| (m, Some(key_trace))));
            if let Some((m, via_key)) = meet {
                let path = join_paths(p, &sides, which, j, m, via_key)?;
                return Ok(Equivalence::proved(path, explored, "search"));
            }
            sides[which].keys.entry(key).or_insert(j);
            sides[which].frontier.push_back(j);
            if explored >= budget.nodes {
                return Ok(Equivalence {
                    verdict: Verdict::Unknown,
                    path: Vec::new(),
                    explored,
                    reason: "node budget exhausted".into(),
                });
            }
        }
    }
    Ok(Equivalence {
        verdict: Verdict::Unknown,
        path: Vec::new(),
        explored,
        reason: "size-bounded component exhausted without meeting".into(),
    })
}

/// Path from the root of side 0 to the root of side 1 through node `j` of
/// side `which` and node `m` of the other side.
fn join_paths(
    p: &Polygraph,
    sides: &[Side; 2],
    which: usize,
    j: usize,
    m: usize,
    via_key: Option<Vec<ElementaryMove>>,
) -> Result<Vec<ElementaryMove>> {
    let other = 1 - which;
    // a: root(which) ->* node j ->* key ; b: root(other) ->* node m ->* key
    let mut a = sides[which].path_to(j);
    let mut b = sides[other].path_to(m);
    if via_key.is_some() {
        let (_, tj) = canonical_form_traced(p, &sides[which].terms[j]);
        let (_, tm) = canonical_form_traced(p, &sides[other].terms[m]);
        a.extend(tj);
        b.extend(tm);
    }
    let root_a = &sides[which].terms[0];
    let root_b = &sides[other].terms[0];
    annotate_path(p, root_a, &mut a)?;
    annotate_path(p, root_b, &mut b)?;
    let (first, second, second_root) = if which == 0 {
        (a, b, root_b)
    } else {
        (b, a, root_a)
    };
    let mut path = first;
    path.extend(invert_path(second_root, &second));
    Ok(path)
}

/// The part of the move graph reachable from `t` within the budget.
#[derive(Clone, Debug, Default)]
pub struct MoveGraph {
    pub vertices: Vec<CellTerm>,
    pub edges: Vec<(usize, ElementaryMove, usize)>,
    pub complete: bool,
}

/// Breadth-first exploration of the move graph around `t`.
pub fn explore(p: &Polygraph, t: &CellTerm, budget: &Budget) -> MoveGraph {
    let max_size = t.size() + budget.extra_size;
    let mut g = MoveGraph {
        vertices: vec![t.clone()],
        edges: Vec::new(),
        complete: true,
    };
    let mut index: HashMap<CellTerm, usize> = HashMap::from([(t.clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = g.vertices[i].clone();
        for (mv, next) in elementary_moves(p, &cur) {
            if next.size() > max_size {
                continue;
            }
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if g.vertices.len() >= budget.nodes {
                        g.complete = false;
                        continue;
                    }
                    let j = g.vertices.len();
                    g.vertices.push(next.clone());
                    index.insert(next, j);
                    queue.push_back(j);
                    j
                }
            };
            g.edges.push((i, mv, j));
        }
    }
    g
}

/// Targets for evaluation of terms.
pub trait Model {
    type Cell: Clone + Eq + fmt::Debug;
    fn unit(&self, c: &Self::Cell) -> Option<Self::Cell>;
    fn compose(&self, k: usize, a: &Self::Cell, b: &Self::Cell) -> Option<Self::Cell>;
    fn source(&self, c: &Self::Cell) -> Option<Self::Cell>;
    fn target(&self, c: &Self::Cell) -> Option<Self::Cell>;
}

/// Evaluation of a term in a model.
pub fn rho<M: Model>(
    model: &M,
    interp: &impl Fn(&GeneratorId) -> Option<M::Cell>,
    t: &CellTerm,
) -> Result<M::Cell> {
    match t {
        CellTerm::Gen(g) => interp(g).ok_or_else(|| Error::UnknownGenerator(g.name().to_string())),
        CellTerm::Id(inner) => {
            let x = rho(model, interp, inner)?;
            model
                .unit(&x)
                .ok_or_else(|| Error::Invalid(format!("model has no unit on {x:?}")))
        }
        CellTerm::Comp(k, a, b) => {
            let x = rho(model, interp, a)?;
            let y = rho(model, interp, b)?;
            model
                .compose(*k, &x, &y)
                .ok_or_else(|| Error::NotComposable {
                    k: *k,
                    detail: format!("images {x:?} and {y:?}"),
                })
        }
    }
}

/// Checks that an interpretation respects the boundaries of every generator.
pub fn check_interpretation<M: Model>(
    p: &Polygraph,
    model: &M,
    interp: &impl Fn(&GeneratorId) -> Option<M::Cell>,
) -> Result<()> {
    for g in p.all_generators().filter(|g| g.dim() > 0) {
        let a = p.attachment(g).expect("generator of positive dimension");
        let x = interp(g).ok_or_else(|| Error::UnknownGenerator(g.name().to_string()))?;
        let s = rho(model, interp, &a.src)?;
        let t = rho(model, interp, &a.tgt)?;
        if model.source(&x) != Some(s.clone()) || model.target(&x) != Some(t.clone()) {
            return Err(Error::Invalid(format!(
                "image {x:?} of `{g}` does not have boundaries {s:?} -> {t:?}"
            )));
        }
    }
    Ok(())
}

/// True when some interpretation separates the two terms.
pub fn refuted_by_model<M: Model>(
    model: &M,
    interp: &impl Fn(&GeneratorId) -> Option<M::Cell>,
    u: &CellTerm,
    v: &CellTerm,
) -> Result<bool> {
    Ok(rho(model, interp, u)? != rho(model, interp, v)?)
}

/// Terms of a polygraph as a model of itself, units and composites checked.
pub struct TermModel<'a>(pub &'a Polygraph);

impl Model for TermModel<'_> {
    type Cell = CellTerm;

    fn unit(&self, c: &CellTerm) -> Option<CellTerm> {
        Some(CellTerm::id(c.clone()))
    }

    fn compose(&self, k: usize, a: &CellTerm, b: &CellTerm) -> Option<CellTerm> {
        self.0.compose(k, a, b).ok()
    }

    fn source(&self, c: &CellTerm) -> Option<CellTerm> {
        self.0.src(c).ok()
    }

    fn target(&self, c: &CellTerm) -> Option<CellTerm> {
        self.0.tgt(c).ok()
    }
}

/// Outcome of a basis check, with a human-readable justification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub verdict: Verdict,
    pub detail: String,
}

impl BasisReport {
    fn new(verdict: Verdict, detail: impl Into<String>) -> Self {
        BasisReport {
            verdict,
            detail: detail.into(),
        }
    }
}

/// For each arrow of `c`, the paths of `sigma`-arrows evaluating to it.
struct PathCensus {
    paths: Vec<Vec<Vec<usize>>>,
    exhaustive: bool,
    clash: Option<(Vec<usize>, Vec<usize>, usize)>,
}

fn census(c: &FiniteCategory, sigma: &[usize]) -> PathCensus {
    let n = c.num_arrows();
    let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for o in 0..c.num_objects() {
        paths[c.identity(o)].push(Vec::new());
    }
    // (value, path) pairs of the current length
    let mut layer: Vec<(usize, Vec<usize>)> = sigma.iter().map(|&s| (s, vec![s])).collect();
    let mut clash = None;
    let mut exhaustive = true;
    let mut length = 1;
    while !layer.is_empty() {
        for (value, path) in &layer {
            if let Some(prev) = paths[*value].first() {
                clash.get_or_insert((prev.clone(), path.clone(), *value));
            }
            paths[*value].push(path.clone());
        }
        if clash.is_some() {
            break;
        }
        if length > n {
            exhaustive = false;
            break;
        }
        let mut next = Vec::new();
        for (value, path) in &layer {
            for &s in sigma {
                if let Some(v) = c.compose(s, *value) {
                    let mut q = path.clone();
                    q.push(s);
                    next.push((v, q));
                }
            }
        }
        layer = next;
        length += 1;
    }
    PathCensus {
        paths,
        exhaustive,
        clash,
    }
}

fn path_name(c: &FiniteCategory, path: &[usize]) -> String {
    if path.is_empty() {
        return "empty path".into();
    }
    path.iter()
        .rev()
        .map(|&a| c.arrow_name(a).to_string())
        .collect::<Vec<_>>()
        .join(" o ")
}

/// Whether the arrows `sigma` freely generate the finite category `c`.
///
/// Exact: every arrow must be the value of exactly one path of `sigma`
/// arrows (identities of the empty path only). In a finite category any
/// cycle of generators repeats a value, so enumeration always terminates.
pub fn check_basis(c: &FiniteCategory, sigma: &[usize]) -> BasisReport {
    if let Some(&s) = sigma.iter().find(|&&s| c.is_identity(s)) {
        return BasisReport::new(
            Verdict::Refuted,
            format!("{} is an identity", c.arrow_name(s)),
        );
    }
    let census = census(c, sigma);
    if let Some((p1, p2, v)) = census.clash {
        return BasisReport::new(
            Verdict::Refuted,
            format!(
                "{} has two decompositions: {} and {}",
                c.arrow_name(v),
                path_name(c, &p1),
                path_name(c, &p2)
            ),
        );
    }
    if !census.exhaustive {
        return BasisReport::new(Verdict::Unknown, "path enumeration did not terminate");
    }
    if let Some(a) = (0..c.num_arrows()).find(|&a| census.paths[a].is_empty()) {
        return BasisReport::new(
            Verdict::Refuted,
            format!(
                "{} is not a composite of the candidate arrows",
                c.arrow_name(a)
            ),
        );
    }
    BasisReport::new(
        Verdict::Proved,
        "every arrow is the value of exactly one path",
    )
}

/// The polygraph freely generated by candidate cells of a finite 2-category
/// whose 1-cells are already known to be freely generated by `sigma1`.
fn presentation(
    c: &Finite2Category,
    sigma1: &[usize],
    sigma2: &[usize],
    arrow_paths: &[Vec<usize>],
) -> Result<Polygraph> {
    let base = c.base();
    let mut p = Polygraph::new(2)?;
    let objs: Vec<GeneratorId> = (0..base.num_objects())
        .map(|o| p.add_object(&sanitize(base.object_name(o), "o", o)))
        .collect::<Result<_>>()?;
    let mut gen1 = HashMap::new();
    for (i, &a) in sigma1.iter().enumerate() {
        let g = p.add_cell(
            &sanitize(base.arrow_name(a), "a", i),
            CellTerm::gen(objs[base.arrow_src(a)].clone()),
            CellTerm::gen(objs[base.arrow_tgt(a)].clone()),
        )?;
        gen1.insert(a, g);
    }
    let term_of = |a: usize| -> CellTerm {
        let path = &arrow_paths[a];
        let gens: Vec<GeneratorId> = path.iter().map(|s| gen1[s].clone()).collect();
        p.path_term(&(objs[base.arrow_src(a)].clone(), gens))
    };
    let boundaries: Vec<(CellTerm, CellTerm)> = sigma2
        .iter()
        .map(|&x| (term_of(c.cell_src(x)), term_of(c.cell_tgt(x))))
        .collect();
    for (i, (&x, (s, t))) in sigma2.iter().zip(boundaries).enumerate() {
        p.add_cell(&sanitize(c.cell_name(x), "c", i), s, t)?;
    }
    Ok(p)
}

fn sanitize(name: &str, prefix: &str, i: usize) -> String {
    if crate::term::is_identifier(name) {
        name.to_string()
    } else {
        format!("{prefix}{i}")
    }
}

/// Bounded check that `sigma2` freely generates the 2-cells of `c` over the
/// free 1-category on `sigma1`.
///
/// Surjectivity is computed exactly by closing the candidate cells under
/// composition. Injectivity is checked on all terms of size at most `bound`:
/// two inequivalent terms with the same value refute; `Proved` means no
/// such pair exists within the bound and every cell is reached by it.
pub fn check_basis_2cat(
    c: &Finite2Category,
    sigma1: &[usize],
    sigma2: &[usize],
    bound: usize,
) -> BasisReport {
    let base = c.base();
    let one = check_basis(base, sigma1);
    if one.verdict != Verdict::Proved {
        return BasisReport::new(one.verdict, format!("1-cells: {}", one.detail));
    }
    if let Some(&x) = sigma2.iter().find(|&&x| c.is_unit2(x)) {
        return BasisReport::new(Verdict::Refuted, format!("{} is a unit", c.cell_name(x)));
    }
    // exact surjectivity
    let mut reached: HashSet<usize> = sigma2.iter().copied().collect();
    reached.extend((0..base.num_arrows()).map(|a| c.unit2(a)));
    loop {
        let current: Vec<usize> = reached.iter().copied().collect();
        let mut grew = false;
        for &x in &current {
            for &y in &current {
                for r in [c.vcomp(x, y), c.hcomp(x, y)].into_iter().flatten() {
                    grew |= reached.insert(r);
                }
            }
        }
        if !grew {
            break;
        }
    }
    if let Some(x) = (0..c.num_cells()).find(|x| !reached.contains(x)) {
        return BasisReport::new(
            Verdict::Refuted,
            format!(
                "{} is not a composite of the candidate cells",
                c.cell_name(x)
            ),
        );
    }
    let census = census(base, sigma1);
    let arrow_paths: Vec<Vec<usize>> = census.paths.iter().map(|ps| ps[0].clone()).collect();
    let p = match presentation(c, sigma1, sigma2, &arrow_paths) {
        Ok(p) => p,
        Err(e) => {
            return BasisReport::new(Verdict::Unknown, format!("cannot build presentation: {e}"))
        }
    };
    let idx_of_gen: HashMap<GeneratorId, CellRef> = p
        .generators(0)
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), CellRef::Obj(i)))
        .chain(
            p.generators(1)
                .iter()
                .zip(sigma1)
                .map(|(g, &a)| (g.clone(), CellRef::Arrow(a))),
        )
        .chain(
            p.generators(2)
                .iter()
                .zip(sigma2)
                .map(|(g, &x)| (g.clone(), CellRef::Two(x))),
        )
        .collect();
    let interp = |g: &GeneratorId| idx_of_gen.get(g).copied();
    let units: Vec<CellTerm> = (0..base.num_arrows())
        .map(|a| {
            let gens = arrow_paths[a]
                .iter()
                .map(|&s| {
                    p.generators(1)[sigma1.iter().position(|&x| x == s).expect("basis arrow")]
                        .clone()
                })
                .collect();
            p.path_term(&(p.generators(0)[base.arrow_src(a)].clone(), gens))
        })
        .collect();
    let terms = enumerate_terms(&p, 2, &units, bound, 20_000);
    let mut fibers: HashMap<usize, Vec<CellTerm>> = HashMap::new();
    for t in &terms {
        let Ok(CellRef::Two(x)) = rho(c, &interp, t) else {
            return BasisReport::new(Verdict::Unknown, format!("could not evaluate {t}"));
        };
        let key = canonical_form(&p, t);
        let fiber = fibers.entry(x).or_default();
        if !fiber.contains(&key) {
            fiber.push(key);
        }
    }
    let mut verdict = Verdict::Proved;
    let mut detail = format!(
        "all {} cells reached by terms of size <= {bound}; fibers connected",
        c.num_cells()
    );
    if let Some(x) = (0..c.num_cells()).find(|x| !fibers.contains_key(x)) {
        verdict = Verdict::Unknown;
        detail = format!("{} not reached by terms of size <= {bound}", c.cell_name(x));
    }
    let mut xs: Vec<&usize> = fibers.keys().collect();
    xs.sort();
    for x in xs {
        let fiber = &fibers[x];
        for other in &fiber[1..] {
            match decide(&p, &fiber[0], other, &Budget::internal()) {
                Verdict::Proved => {}
                Verdict::Refuted => {
                    return BasisReport::new(
                        Verdict::Refuted,
                        format!(
                            "{} and {} both evaluate to {}",
                            fiber[0],
                            other,
                            c.cell_name(*x)
                        ),
                    )
                }
                Verdict::Unknown => {
                    verdict = Verdict::Unknown;
                    detail = format!("could not connect {} and {}", fiber[0], other);
                }
            }
        }
    }
    BasisReport::new(verdict, detail)
}

/// Well-formed terms of dimension `dim` with at most `max_size` composition
/// nodes, built from generators and units on `units`, up to `limit` terms.
///
/// Composability is decided with [`Polygraph::decide_equal`]; pairs it
/// cannot decide are skipped.
pub fn enumerate_terms(
    p: &Polygraph,
    dim: usize,
    units: &[CellTerm],
    max_size: usize,
    limit: usize,
) -> Vec<CellTerm> {
    let mut by_size: Vec<Vec<CellTerm>> = Vec::new();
    let mut seen: HashSet<CellTerm> = HashSet::new();
    let mut level0 = Vec::new();
    for t in p
        .generators(dim)
        .iter()
        .map(|g| CellTerm::gen(g.clone()))
        .chain(
            units
                .iter()
                .filter(|u| u.dim() + 1 == dim)
                .map(|u| CellTerm::id(u.clone())),
        )
    {
        if seen.insert(t.clone()) {
            level0.push(t);
        }
    }
    by_size.push(level0);
    let boundaries = |t: &CellTerm, k: usize| (p.src_k(t, k).ok(), p.tgt_k(t, k).ok());
    for s in 1..=max_size {
        let mut level = Vec::new();
        'outer: for ls in 0..s {
            let rs = s - 1 - ls;
            for a in &by_size[ls] {
                for b in &by_size[rs] {
                    for k in 0..dim {
                        let (Some(sa), _) = boundaries(a, k) else {
                            continue;
                        };
                        let (_, Some(tb)) = boundaries(b, k) else {
                            continue;
                        };
                        if p.decide_equal(&sa, &tb) != Verdict::Proved {
                            continue;
                        }
                        let t = CellTerm::comp_unchecked(k, a.clone(), b.clone());
                        if seen.insert(t.clone()) {
                            level.push(t);
                            if seen.len() >= limit {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        by_size.push(level);
        if seen.len() >= limit {
            break;
        }
    }
    by_size.into_iter().flatten().collect()
}
