//! Functors between finite (2-)categories, the discrete Conduché condition,
//! pullbacks and slices over 1-categories.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::nerve::{Arrow, Cell2, CellRef, Finite2Category, FiniteCategory};
use crate::rewrite::{check_basis, check_basis_2cat, BasisReport, Verdict};

/// A strict functor between finite 2-categories; 1-categories enter as
/// locally discrete 2-categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunctor {
    source: Finite2Category,
    target: Finite2Category,
    objects: Vec<usize>,
    arrows: Vec<usize>,
    cells: Vec<usize>,
}

impl FiniteFunctor {
    /// Checks boundaries, units and both compositions exhaustively.
    pub fn new(
        source: Finite2Category,
        target: Finite2Category,
        objects: Vec<usize>,
        arrows: Vec<usize>,
        cells: Vec<usize>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidFunctor(m));
        let (sb, tb) = (source.base(), target.base());
        if objects.len() != sb.num_objects()
            || arrows.len() != sb.num_arrows()
            || cells.len() != source.num_cells()
        {
            return bad("cell maps do not cover the source".into());
        }
        if objects.iter().any(|&o| o >= tb.num_objects())
            || arrows.iter().any(|&a| a >= tb.num_arrows())
            || cells.iter().any(|&x| x >= target.num_cells())
        {
            return bad("cell maps leave the target".into());
        }
        for a in 0..sb.num_arrows() {
            let fa = arrows[a];
            if tb.arrow_src(fa) != objects[sb.arrow_src(a)]
                || tb.arrow_tgt(fa) != objects[sb.arrow_tgt(a)]
            {
                return bad(format!(
                    "{} is not sent to an arrow between the images of its ends",
                    sb.arrow_name(a)
                ));
            }
            if target.unit2(fa) != cells[source.unit2(a)] {
                return bad(format!("unit of {} is not preserved", sb.arrow_name(a)));
            }
        }
        for o in 0..sb.num_objects() {
            if arrows[sb.identity(o)] != tb.identity(objects[o]) {
                return bad(format!(
                    "identity of {} is not preserved",
                    sb.object_name(o)
                ));
            }
        }
        for x in 0..source.num_cells() {
            let fx = cells[x];
            if target.cell_src(fx) != arrows[source.cell_src(x)]
                || target.cell_tgt(fx) != arrows[source.cell_tgt(x)]
            {
                return bad(format!(
                    "{} is not sent to a 2-cell between the images of its boundaries",
                    source.cell_name(x)
                ));
            }
        }
        for (g, f, h) in sb.comp_table() {
            if tb.compose(arrows[g], arrows[f]) != Some(arrows[h]) {
                return bad(format!(
                    "composite {} o {} is not preserved",
                    sb.arrow_name(g),
                    sb.arrow_name(f)
                ));
            }
        }
        for (b, a, c) in source.vcomp_table() {
            if target.vcomp(cells[b], cells[a]) != Some(cells[c]) {
                return bad(format!(
                    "{} o1 {} is not preserved",
                    source.cell_name(b),
                    source.cell_name(a)
                ));
            }
        }
        for (b, a, c) in source.hcomp_table() {
            if target.hcomp(cells[b], cells[a]) != Some(cells[c]) {
                return bad(format!(
                    "{} o0 {} is not preserved",
                    source.cell_name(b),
                    source.cell_name(a)
                ));
            }
        }
        Ok(FiniteFunctor {
            source,
            target,
            objects,
            arrows,
            cells,
        })
    }

    /// A functor of 1-categories.
    pub fn between_categories(
        source: &FiniteCategory,
        target: &FiniteCategory,
        objects: Vec<usize>,
        arrows: Vec<usize>,
    ) -> Result<Self> {
        if arrows.iter().any(|&a| a >= target.num_arrows()) {
            return Err(Error::InvalidFunctor("arrow map leaves the target".into()));
        }
        let s = Finite2Category::locally_discrete(source.clone());
        let t = Finite2Category::locally_discrete(target.clone());
        let cells = arrows.iter().map(|&a| t.unit2(a)).collect();
        FiniteFunctor::new(s, t, objects, arrows, cells)
    }

    pub fn identity(c: &Finite2Category) -> Self {
        FiniteFunctor {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.base().num_objects()).collect(),
            arrows: (0..c.base().num_arrows()).collect(),
            cells: (0..c.num_cells()).collect(),
        }
    }

    pub fn source(&self) -> &Finite2Category {
        &self.source
    }

    pub fn target(&self) -> &Finite2Category {
        &self.target
    }

    pub fn on_object(&self, o: usize) -> usize {
        self.objects[o]
    }

    pub fn on_arrow(&self, a: usize) -> usize {
        self.arrows[a]
    }

    pub fn on_cell(&self, x: usize) -> usize {
        self.cells[x]
    }

    pub fn apply(&self, c: CellRef) -> CellRef {
        match c {
            CellRef::Obj(o) => CellRef::Obj(self.objects[o]),
            CellRef::Arrow(a) => CellRef::Arrow(self.arrows[a]),
            CellRef::Two(x) => CellRef::Two(self.cells[x]),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &FiniteFunctor) -> Result<FiniteFunctor> {
        FiniteFunctor::new(
            self.source.clone(),
            other.target.clone(),
            self.objects.iter().map(|&o| other.objects[o]).collect(),
            self.arrows.iter().map(|&a| other.arrows[a]).collect(),
            self.cells.iter().map(|&x| other.cells[x]).collect(),
        )
    }
}

/// Which lifting condition a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConducheKind {
    /// Factorization of a 1-cell image.
    Arrow,
    /// Vertical factorization of a 2-cell image.
    Vertical,
    /// Horizontal factorization of a 2-cell image.
    Horizontal,
    /// A non-unit cell sent to a unit.
    Unit,
}

/// A cell whose image has a factorization lifting zero or several times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConducheWitness {
    pub kind: ConducheKind,
    pub cell: String,
    pub image: String,
    pub factors: Option<(String, String)>,
    pub lifts: Vec<(String, String)>,
}

impl fmt::Display for ConducheWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            ConducheKind::Arrow => "o",
            ConducheKind::Vertical => "o1",
            ConducheKind::Horizontal | ConducheKind::Unit => "o0",
        };
        match &self.factors {
            None => write!(
                f,
                "{} is not a unit but is sent to the unit {}",
                self.cell, self.image
            ),
            Some((g, h)) => {
                write!(
                    f,
                    "{} is sent to {} = {g} {op} {h}, which lifts ",
                    self.cell, self.image
                )?;
                if self.lifts.is_empty() {
                    write!(f, "0 times")
                } else {
                    let lifts: Vec<String> = self
                        .lifts
                        .iter()
                        .map(|(a, b)| format!("({a}, {b})"))
                        .collect();
                    write!(f, "{} times: {}", self.lifts.len(), lifts.join(", "))
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConducheReport {
    pub holds: bool,
    pub witness: Option<ConducheWitness>,
}

fn factorizations(table: Vec<(usize, usize, usize)>) -> BTreeMap<usize, Vec<(usize, usize)>> {
    let mut m: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (g, f, h) in table {
        m.entry(h).or_default().push((g, f));
    }
    m
}

/// Exhaustive check of unique lifting of factorizations and units.
///
/// For every cell `x` and every factorization `F(x) = y' ∘_k y''` there must
/// be exactly one `(x', x'')` with `x = x' ∘_k x''` over it; a cell sent to
/// a unit must itself be a unit.
pub fn check_conduche(f: &FiniteFunctor) -> ConducheReport {
    let (s, t) = (&f.source, &f.target);
    let (sb, tb) = (s.base(), t.base());
    let witness = |kind, cell: String, image: String, factors, lifts| ConducheReport {
        holds: false,
        witness: Some(ConducheWitness {
            kind,
            cell,
            image,
            factors,
            lifts,
        }),
    };
    let src_f = factorizations(sb.comp_table());
    let tgt_f = factorizations(tb.comp_table());
    for a in 0..sb.num_arrows() {
        let fa = f.arrows[a];
        for &(g, h) in tgt_f.get(&fa).into_iter().flatten() {
            let lifts: Vec<(usize, usize)> = src_f
                .get(&a)
                .into_iter()
                .flatten()
                .copied()
                .filter(|&(g2, h2)| f.arrows[g2] == g && f.arrows[h2] == h)
                .collect();
            if lifts.len() != 1 {
                return witness(
                    ConducheKind::Arrow,
                    sb.arrow_name(a).to_string(),
                    tb.arrow_name(fa).to_string(),
                    Some((tb.arrow_name(g).to_string(), tb.arrow_name(h).to_string())),
                    lifts
                        .iter()
                        .map(|&(x, y)| (sb.arrow_name(x).to_string(), sb.arrow_name(y).to_string()))
                        .collect(),
                );
            }
        }
    }
    for a in 0..sb.num_arrows() {
        if tb.is_identity(f.arrows[a]) && !sb.is_identity(a) {
            return witness(
                ConducheKind::Unit,
                sb.arrow_name(a).to_string(),
                tb.arrow_name(f.arrows[a]).to_string(),
                None,
                Vec::new(),
            );
        }
    }
    for (kind, src_t, tgt_t) in [
        (ConducheKind::Vertical, s.vcomp_table(), t.vcomp_table()),
        (ConducheKind::Horizontal, s.hcomp_table(), t.hcomp_table()),
    ] {
        let src_f = factorizations(src_t);
        let tgt_f = factorizations(tgt_t);
        for x in 0..s.num_cells() {
            let fx = f.cells[x];
            for &(b, a) in tgt_f.get(&fx).into_iter().flatten() {
                let lifts: Vec<(usize, usize)> = src_f
                    .get(&x)
                    .into_iter()
                    .flatten()
                    .copied()
                    .filter(|&(b2, a2)| f.cells[b2] == b && f.cells[a2] == a)
                    .collect();
                if lifts.len() != 1 {
                    return witness(
                        kind,
                        s.cell_name(x).to_string(),
                        t.cell_name(fx).to_string(),
                        Some((t.cell_name(b).to_string(), t.cell_name(a).to_string())),
                        lifts
                            .iter()
                            .map(|&(p, q)| (s.cell_name(p).to_string(), s.cell_name(q).to_string()))
                            .collect(),
                    );
                }
            }
        }
    }
    for x in 0..s.num_cells() {
        if t.is_unit2(f.cells[x]) && !s.is_unit2(x) {
            return witness(
                ConducheKind::Unit,
                s.cell_name(x).to_string(),
                t.cell_name(f.cells[x]).to_string(),
                None,
                Vec::new(),
            );
        }
    }
    ConducheReport {
        holds: true,
        witness: None,
    }
}

/// A pullback square `P -> X`, `P -> Y` over the common target.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub category: Finite2Category,
    pub left: FiniteFunctor,
    pub right: FiniteFunctor,
}

/// `X ×_A Y` computed cellwise.
pub fn pullback(f: &FiniteFunctor, g: &FiniteFunctor) -> Result<Pullback> {
    if f.target != g.target {
        return Err(Error::InvalidFunctor(
            "pullback needs a common target".into(),
        ));
    }
    let (x, y) = (&f.source, &g.source);
    let (xb, yb) = (x.base(), y.base());
    let pairs = |n: usize, m: usize, fx: &[usize], gy: &[usize]| -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| fx[i] == gy[j])
            .collect()
    };
    let objs = pairs(xb.num_objects(), yb.num_objects(), &f.objects, &g.objects);
    let arrs = pairs(xb.num_arrows(), yb.num_arrows(), &f.arrows, &g.arrows);
    let cells = pairs(x.num_cells(), y.num_cells(), &f.cells, &g.cells);
    let oi: HashMap<(usize, usize), usize> =
        objs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let ai: HashMap<(usize, usize), usize> =
        arrs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let ci: HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let base = FiniteCategory::new(
        objs.iter()
            .map(|&(i, j)| format!("({},{})", xb.object_name(i), yb.object_name(j)))
            .collect(),
        arrs.iter()
            .map(|&(i, j)| Arrow {
                name: format!("({},{})", xb.arrow_name(i), yb.arrow_name(j)),
                src: oi[&(xb.arrow_src(i), yb.arrow_src(j))],
                tgt: oi[&(xb.arrow_tgt(i), yb.arrow_tgt(j))],
            })
            .collect(),
        objs.iter()
            .map(|&(i, j)| ai[&(xb.identity(i), yb.identity(j))])
            .collect(),
        |p, q| {
            let (p, q) = (arrs[p], arrs[q]);
            ai.get(&(xb.compose(p.0, q.0)?, yb.compose(p.1, q.1)?))
                .copied()
        },
    )?;
    let cat = Finite2Category::new(
        base,
        cells
            .iter()
            .map(|&(i, j)| Cell2 {
                name: format!("({},{})", x.cell_name(i), y.cell_name(j)),
                src: ai[&(x.cell_src(i), y.cell_src(j))],
                tgt: ai[&(x.cell_tgt(i), y.cell_tgt(j))],
            })
            .collect(),
        arrs.iter()
            .map(|&(i, j)| ci[&(x.unit2(i), y.unit2(j))])
            .collect(),
        |p, q| {
            let (p, q) = (cells[p], cells[q]);
            ci.get(&(x.vcomp(p.0, q.0)?, y.vcomp(p.1, q.1)?)).copied()
        },
        |p, q| {
            let (p, q) = (cells[p], cells[q]);
            ci.get(&(x.hcomp(p.0, q.0)?, y.hcomp(p.1, q.1)?)).copied()
        },
    )?;
    let left = FiniteFunctor::new(
        cat.clone(),
        x.clone(),
        objs.iter().map(|p| p.0).collect(),
        arrs.iter().map(|p| p.0).collect(),
        cells.iter().map(|p| p.0).collect(),
    )?;
    let right = FiniteFunctor::new(
        cat.clone(),
        y.clone(),
        objs.iter().map(|p| p.1).collect(),
        arrs.iter().map(|p| p.1).collect(),
        cells.iter().map(|p| p.1).collect(),
    )?;
    Ok(Pullback {
        category: cat,
        left,
        right,
    })
}

/// `X/a` for `f: X -> A` with `A` a 1-category, with the forgetful functor
/// to `X` and the tag `p` of each cell.
///
/// Cells are pairs `(x, p)` with `p: f(tgt_0 x) -> a`; a 1-cell `(x, p)`
/// goes from `(src x, p ∘ f(x))` to `(tgt x, p)` and a 2-cell `(χ, p)` from
/// `(src χ, p)` to `(tgt χ, p)`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub apex: usize,
    pub category: Finite2Category,
    pub forget: FiniteFunctor,
    pub objects: Vec<(usize, usize)>,
    pub arrows: Vec<(usize, usize)>,
    pub cells: Vec<(usize, usize)>,
}

pub fn slice_over(f: &FiniteFunctor, a: usize) -> Result<Slice> {
    let x = &f.source;
    let xb = x.base();
    if !f.target.is_locally_discrete() {
        return Err(Error::InvalidFunctor(
            "slices are taken over 1-categories".into(),
        ));
    }
    let ab = f.target.base();
    if a >= ab.num_objects() {
        return Err(Error::Invalid(format!("no object {a} in the base")));
    }
    let tags = |o: usize| ab.hom(f.objects[o], a);
    let objs: Vec<(usize, usize)> = (0..xb.num_objects())
        .flat_map(|o| tags(o).into_iter().map(move |p| (o, p)))
        .collect();
    let arrs: Vec<(usize, usize)> = (0..xb.num_arrows())
        .flat_map(|e| tags(xb.arrow_tgt(e)).into_iter().map(move |p| (e, p)))
        .collect();
    let cells: Vec<(usize, usize)> = (0..x.num_cells())
        .flat_map(|c| tags(x.tgt0(c)).into_iter().map(move |p| (c, p)))
        .collect();
    let oi: HashMap<(usize, usize), usize> =
        objs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let ai: HashMap<(usize, usize), usize> =
        arrs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let ci: HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let name = |n: &str, p: usize| format!("({n},{})", ab.arrow_name(p));
    let after = |p: usize, e: usize| ab.compose(p, f.arrows[e]).expect("tag is composable");
    let base = FiniteCategory::new(
        objs.iter()
            .map(|&(o, p)| name(xb.object_name(o), p))
            .collect(),
        arrs.iter()
            .map(|&(e, p)| Arrow {
                name: name(xb.arrow_name(e), p),
                src: oi[&(xb.arrow_src(e), after(p, e))],
                tgt: oi[&(xb.arrow_tgt(e), p)],
            })
            .collect(),
        objs.iter()
            .map(|&(o, p)| ai[&(xb.identity(o), p)])
            .collect(),
        |g, h| {
            let ((eg, pg), (eh, ph)) = (arrs[g], arrs[h]);
            if ph != after(pg, eg) {
                return None;
            }
            ai.get(&(xb.compose(eg, eh)?, pg)).copied()
        },
    )?;
    let cat = Finite2Category::new(
        base,
        cells
            .iter()
            .map(|&(c, p)| Cell2 {
                name: name(x.cell_name(c), p),
                src: ai[&(x.cell_src(c), p)],
                tgt: ai[&(x.cell_tgt(c), p)],
            })
            .collect(),
        arrs.iter().map(|&(e, p)| ci[&(x.unit2(e), p)]).collect(),
        |b, c| {
            let ((xb2, pb), (xc, pc)) = (cells[b], cells[c]);
            if pb != pc {
                return None;
            }
            ci.get(&(x.vcomp(xb2, xc)?, pb)).copied()
        },
        |b, c| {
            let ((xb2, pb), (xc, pc)) = (cells[b], cells[c]);
            if pc != after(pb, x.cell_src(xb2)) {
                return None;
            }
            ci.get(&(x.hcomp(xb2, xc)?, pb)).copied()
        },
    )?;
    let forget = FiniteFunctor::new(
        cat.clone(),
        x.clone(),
        objs.iter().map(|p| p.0).collect(),
        arrs.iter().map(|p| p.0).collect(),
        cells.iter().map(|p| p.0).collect(),
    )?;
    Ok(Slice {
        apex: a,
        category: cat,
        forget,
        objects: objs,
        arrows: arrs,
        cells,
    })
}

/// The usual slice `A/a` with its projection `π_a: A/a -> A`.
pub fn slice(c: &FiniteCategory, a: usize) -> Result<(FiniteCategory, FiniteFunctor)> {
    let id = FiniteFunctor::identity(&Finite2Category::locally_discrete(c.clone()));
    let s = slice_over(&id, a)?;
    Ok((s.category.base().clone(), s.forget))
}

/// `X/β: X/a -> X/a'` for `β: a -> a'`, post-composing tags with `β`.
pub fn slice_map(
    from: &Slice,
    to: &Slice,
    base: &FiniteCategory,
    beta: usize,
) -> Result<FiniteFunctor> {
    if base.arrow_src(beta) != from.apex || base.arrow_tgt(beta) != to.apex {
        return Err(Error::Invalid(format!(
            "{} does not go between the apexes",
            base.arrow_name(beta)
        )));
    }
    let index = |pairs: &[(usize, usize)]| -> HashMap<(usize, usize), usize> {
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect()
    };
    let (oi, ai, ci) = (index(&to.objects), index(&to.arrows), index(&to.cells));
    let push = |(x, p): (usize, usize), idx: &HashMap<(usize, usize), usize>| -> Result<usize> {
        let q = base
            .compose(beta, p)
            .ok_or_else(|| Error::Invalid("tag is not composable".into()))?;
        idx.get(&(x, q))
            .copied()
            .ok_or_else(|| Error::Invalid("slice cell missing".into()))
    };
    FiniteFunctor::new(
        from.category.clone(),
        to.category.clone(),
        from.objects
            .iter()
            .map(|&p| push(p, &oi))
            .collect::<Result<_>>()?,
        from.arrows
            .iter()
            .map(|&p| push(p, &ai))
            .collect::<Result<_>>()?,
        from.cells
            .iter()
            .map(|&p| push(p, &ci))
            .collect::<Result<_>>()?,
    )
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Checks that gluing the slices `X/a` along all maps `X/β` recovers the
/// cells of `X` bijectively, in every dimension.
pub fn check_slice_colimit(f: &FiniteFunctor) -> Result<bool> {
    let ab = f.target.base().clone();
    let slices: Vec<Slice> = (0..ab.num_objects())
        .map(|a| slice_over(f, a))
        .collect::<Result<_>>()?;
    let x = &f.source;
    let sizes = [x.base().num_objects(), x.base().num_arrows(), x.num_cells()];
    for (dim, &size) in sizes.iter().enumerate() {
        let cells_of = |s: &Slice| -> Vec<(usize, usize)> {
            match dim {
                0 => s.objects.clone(),
                1 => s.arrows.clone(),
                _ => s.cells.clone(),
            }
        };
        let mut offsets = Vec::new();
        let mut total = 0;
        for s in &slices {
            offsets.push(total);
            total += cells_of(s).len();
        }
        let mut parent: Vec<usize> = (0..total).collect();
        for beta in 0..ab.num_arrows() {
            let (a, b) = (ab.arrow_src(beta), ab.arrow_tgt(beta));
            let m = slice_map(&slices[a], &slices[b], &ab, beta)?;
            for i in 0..cells_of(&slices[a]).len() {
                let j = match dim {
                    0 => m.on_object(i),
                    1 => m.on_arrow(i),
                    _ => m.on_cell(i),
                };
                let (ri, rj) = (
                    find(&mut parent, offsets[a] + i),
                    find(&mut parent, offsets[b] + j),
                );
                parent[ri] = rj;
            }
        }
        let mut class_to_cell: HashMap<usize, usize> = HashMap::new();
        let mut covered = vec![false; size];
        for (s, &off) in slices.iter().zip(&offsets) {
            for (i, &(c, _)) in cells_of(s).iter().enumerate() {
                let r = find(&mut parent, off + i);
                if *class_to_cell.entry(r).or_insert(c) != c {
                    return Ok(false);
                }
                covered[c] = true;
            }
        }
        if class_to_cell.len() != size || covered.iter().any(|&c| !c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An object to which every object has exactly one arrow.
pub fn terminal_object(c: &FiniteCategory) -> Option<usize> {
    (0..c.num_objects()).find(|&t| (0..c.num_objects()).all(|o| c.hom(o, t).len() == 1))
}

/// A non-unit cell all of whose factorizations have a unit factor on the
/// relevant side.
pub fn is_indecomposable(c: &Finite2Category, cell: CellRef) -> bool {
    let b = c.base();
    match cell {
        CellRef::Obj(_) => false,
        CellRef::Arrow(a) => {
            !b.is_identity(a)
                && b.comp_table()
                    .iter()
                    .filter(|&&(_, _, h)| h == a)
                    .all(|&(g, f, _)| {
                        g == b.identity(b.arrow_tgt(a)) || f == b.identity(b.arrow_src(a))
                    })
        }
        CellRef::Two(x) => {
            if c.is_unit2(x) {
                return false;
            }
            let v = c
                .vcomp_table()
                .iter()
                .filter(|&&(_, _, h)| h == x)
                .all(|&(q, p, _)| q == c.unit2(c.cell_tgt(x)) || p == c.unit2(c.cell_src(x)));
            let h = c
                .hcomp_table()
                .iter()
                .filter(|&&(_, _, h)| h == x)
                .all(|&(q, p, _)| {
                    q == c.unit2(b.identity(c.tgt0(x))) || p == c.unit2(b.identity(c.src0(x)))
                });
            v && h
        }
    }
}

/// Result of transporting a basis of the target to the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub conduche: ConducheReport,
    pub target_basis: Vec<(usize, BasisReport)>,
    pub source_basis: Vec<(usize, BasisReport)>,
    /// `x` indecomposable iff `F(x)` is, over all cells.
    pub indecomposables: Verdict,
}

impl TransferReport {
    pub fn verdict(&self) -> Verdict {
        if !self.conduche.holds {
            return Verdict::Unknown;
        }
        let mut v = self.indecomposables;
        for (_, r) in &self.source_basis {
            v = match (v, r.verdict) {
                (Verdict::Refuted, _) | (_, Verdict::Refuted) => Verdict::Refuted,
                (Verdict::Unknown, _) | (_, Verdict::Unknown) => Verdict::Unknown,
                _ => Verdict::Proved,
            };
        }
        if self.source_basis.is_empty() {
            Verdict::Unknown
        } else {
            v
        }
    }
}

/// Checks that `F⁻¹(Σ^D)` is a basis of the source, given a Conduché `F`
/// and a basis `Σ^D` of the target (2-cells only when the target has any).
pub fn basis_transfer(
    f: &FiniteFunctor,
    sigma1: &[usize],
    sigma2: &[usize],
    bound: usize,
) -> TransferReport {
    let conduche = check_conduche(f);
    let mut report = TransferReport {
        conduche: conduche.clone(),
        target_basis: Vec::new(),
        source_basis: Vec::new(),
        indecomposables: Verdict::Unknown,
    };
    if !conduche.holds {
        return report;
    }
    let (s, t) = (&f.source, &f.target);
    let two = !(s.is_locally_discrete() && t.is_locally_discrete());
    let target_report = if two {
        check_basis_2cat(t, sigma1, sigma2, bound)
    } else {
        check_basis(t.base(), sigma1)
    };
    report
        .target_basis
        .push((if two { 2 } else { 1 }, target_report.clone()));
    if target_report.verdict != Verdict::Proved {
        return report;
    }
    let pre1: Vec<usize> = (0..s.base().num_arrows())
        .filter(|&a| sigma1.contains(&f.arrows[a]))
        .collect();
    let pre2: Vec<usize> = (0..s.num_cells())
        .filter(|&x| sigma2.contains(&f.cells[x]))
        .collect();
    report.source_basis.push((1, check_basis(s.base(), &pre1)));
    if two {
        report
            .source_basis
            .push((2, check_basis_2cat(s, &pre1, &pre2, bound)));
    }
    let arrows_ok = (0..s.base().num_arrows()).all(|a| {
        is_indecomposable(s, CellRef::Arrow(a)) == is_indecomposable(t, CellRef::Arrow(f.arrows[a]))
    });
    let cells_ok = (0..s.num_cells()).all(|x| {
        is_indecomposable(s, CellRef::Two(x)) == is_indecomposable(t, CellRef::Two(f.cells[x]))
    });
    report.indecomposables = if arrows_ok && cells_ok {
        Verdict::Proved
    } else {
        Verdict::Refuted
    };
    report
}
