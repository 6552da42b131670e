//! Finite 1- and 2-categories given by complete tables, their nerves, and
//! homology of the normalized chains of those nerves.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologyGroup, IntMatrix};
use crate::polygraph::Polygraph;
use crate::rewrite::Model;
use num_bigint::BigInt;

/// A cell of a finite (2-)category by dimension and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellRef {
    Obj(usize),
    Arrow(usize),
    Two(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A small category with every composite tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
}

impl FiniteCategory {
    /// Tabulates `comp(g, f) = g ∘ f` on all composable pairs and checks the
    /// category axioms exhaustively.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        comp: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCategory(m));
        if identities.len() != objects.len() {
            return bad("one identity per object is required".into());
        }
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return bad(format!("arrow {} has an unknown endpoint", a.name));
            }
        }
        for (o, &i) in identities.iter().enumerate() {
            if i >= arrows.len() || arrows[i].src != o || arrows[i].tgt != o {
                return bad(format!(
                    "identity of {} is not an endomorphism of it",
                    objects[o]
                ));
            }
        }
        let mut table = HashMap::new();
        for (f, af) in arrows.iter().enumerate() {
            for (g, ag) in arrows.iter().enumerate() {
                if af.tgt != ag.src {
                    continue;
                }
                let Some(h) = comp(g, f).filter(|&h| h < arrows.len()) else {
                    return bad(format!("composite {} o {} is missing", ag.name, af.name));
                };
                if arrows[h].src != af.src || arrows[h].tgt != ag.tgt {
                    return bad(format!(
                        "composite {} o {} = {} has wrong endpoints",
                        ag.name, af.name, arrows[h].name
                    ));
                }
                table.insert((g, f), h);
            }
        }
        let c = FiniteCategory {
            objects,
            arrows,
            identities,
            comp: table,
        };
        c.verify()?;
        Ok(c)
    }

    fn verify(&self) -> Result<()> {
        for (f, a) in self.arrows.iter().enumerate() {
            if self.comp[&(self.identities[a.tgt], f)] != f
                || self.comp[&(f, self.identities[a.src])] != f
            {
                return Err(Error::InvalidCategory(format!(
                    "unit law fails for {}",
                    a.name
                )));
            }
        }
        for (&(g, f), &gf) in &self.comp {
            for h in self.arrows_from(self.arrows[g].tgt) {
                let left = self.comp[&(h, gf)];
                let right = self.comp[&(self.comp[&(h, g)], f)];
                if left != right {
                    return Err(Error::InvalidCategory(format!(
                        "associativity fails on ({}, {}, {})",
                        self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_src(&self, a: usize) -> usize {
        self.arrows[a].src
    }

    pub fn arrow_tgt(&self, a: usize) -> usize {
        self.arrows[a].tgt
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identities[self.arrows[a].src] == a
    }

    /// `g ∘ f` when `tgt f = src g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    /// All `(g, f, g ∘ f)`, sorted.
    pub fn comp_table(&self) -> Vec<(usize, usize, usize)> {
        let mut t: Vec<_> = self.comp.iter().map(|(&(g, f), &h)| (g, f, h)).collect();
        t.sort_unstable();
        t
    }

    pub fn arrows_from(&self, o: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].src == o)
            .collect()
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].src == x && self.arrows[a].tgt == y)
            .collect()
    }

    pub fn non_identity_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| !self.is_identity(a))
            .collect()
    }

    /// The poset `[n] = {0 < 1 < ... < n}`.
    pub fn simplex(n: usize) -> Self {
        let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        let mut identities = Vec::new();
        for i in 0..=n {
            identities.push(arrows.len());
            index.insert((i, i), arrows.len());
            arrows.push(Arrow {
                name: format!("1_{i}"),
                src: i,
                tgt: i,
            });
        }
        for i in 0..=n {
            for j in i + 1..=n {
                index.insert((i, j), arrows.len());
                arrows.push(Arrow {
                    name: format!("{i}{j}"),
                    src: i,
                    tgt: j,
                });
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
        FiniteCategory::new(objects, arrows, identities, |g, f| {
            index.get(&(ends[f].0, ends[g].1)).copied()
        })
        .expect("posets are categories")
    }

    /// A finite poset given by its order relation on `0..n`.
    pub fn poset(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        let mut identities = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || le(i, j) {
                    if i == j {
                        identities[i] = arrows.len();
                    }
                    index.insert((i, j), arrows.len());
                    arrows.push(Arrow {
                        name: if i == j {
                            format!("1_{i}")
                        } else {
                            format!("{i}<{j}")
                        },
                        src: i,
                        tgt: j,
                    });
                }
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
        FiniteCategory::new(objects, arrows, identities, |g, f| {
            index.get(&(ends[f].0, ends[g].1)).copied()
        })
    }

    /// The one-object category of a finite monoid; element 0 is the unit and
    /// `table[a][b] = a·b`.
    pub fn monoid(names: &[&str], table: &[Vec<usize>]) -> Result<Self> {
        let arrows = names
            .iter()
            .map(|n| Arrow {
                name: n.to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        FiniteCategory::new(vec!["*".into()], arrows, vec![0], |g, f| {
            table.get(g).and_then(|row| row.get(f)).copied()
        })
    }

    /// The cyclic group `Z/n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteCategory::monoid(&refs, &table).expect("groups are categories")
    }
}

/// Name-based construction of a finite category; identities are added as
/// `1_X` and composites with identities are implicit.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    arrows: Vec<(String, String, String)>,
    comps: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn arrow(&mut self, name: &str, src: &str, tgt: &str) -> &mut Self {
        self.arrows.push((name.into(), src.into(), tgt.into()));
        self
    }

    /// Declares `g ∘ f = h`.
    pub fn comp(&mut self, g: &str, f: &str, h: &str) -> &mut Self {
        self.comps.push((g.into(), f.into(), h.into()));
        self
    }

    pub fn build(&self) -> Result<FiniteCategory> {
        let (objects, arrows, identities) = self.skeleton()?;
        let table = self.table(&arrows, &identities)?;
        FiniteCategory::new(objects, arrows, identities, |g, f| {
            table.get(&(g, f)).copied()
        })
    }

    fn skeleton(&self) -> Result<(Vec<String>, Vec<Arrow>, Vec<usize>)> {
        let mut seen = HashSet::new();
        for o in &self.objects {
            if !seen.insert(o.clone()) {
                return Err(Error::InvalidCategory(format!("duplicate object {o}")));
            }
        }
        let obj = |n: &str| {
            self.objects
                .iter()
                .position(|o| o == n)
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {n}")))
        };
        let mut arrows: Vec<Arrow> = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| Arrow {
                name: format!("1_{o}"),
                src: i,
                tgt: i,
            })
            .collect();
        let identities = (0..self.objects.len()).collect();
        for (name, s, t) in &self.arrows {
            if arrows.iter().any(|a| &a.name == name) {
                return Err(Error::InvalidCategory(format!("duplicate arrow {name}")));
            }
            arrows.push(Arrow {
                name: name.clone(),
                src: obj(s)?,
                tgt: obj(t)?,
            });
        }
        Ok((self.objects.clone(), arrows, identities))
    }

    fn table(
        &self,
        arrows: &[Arrow],
        identities: &[usize],
    ) -> Result<HashMap<(usize, usize), usize>> {
        let idx = |n: &str| {
            arrows
                .iter()
                .position(|a| a.name == n)
                .ok_or_else(|| Error::InvalidCategory(format!("unknown arrow {n}")))
        };
        let mut table = HashMap::new();
        for (f, a) in arrows.iter().enumerate() {
            table.insert((identities[a.tgt], f), f);
            table.insert((f, identities[a.src]), f);
        }
        for (g, f, h) in &self.comps {
            declare(&mut table, (idx(g)?, idx(f)?), idx(h)?, || format!("{g} o {f}"))?;
        }
        Ok(table)
    }
}

/// Records a declared composite, rejecting a second, different value.
fn declare(
    table: &mut HashMap<(usize, usize), usize>,
    key: (usize, usize),
    value: usize,
    what: impl Fn() -> String,
) -> Result<()> {
    match table.insert(key, value) {
        Some(old) if old != value => Err(Error::InvalidCategory(format!(
            "{} is declared with two different values",
            what()
        ))),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell2 {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A strict 2-category with tabulated vertical and horizontal composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finite2Category {
    base: FiniteCategory,
    cells: Vec<Cell2>,
    units: Vec<usize>,
    vcomp: HashMap<(usize, usize), usize>,
    hcomp: HashMap<(usize, usize), usize>,
}

impl Finite2Category {
    /// Tabulates `vcomp(b, a) = b ∘_1 a` and `hcomp(b, a) = b ∘_0 a` on all
    /// composable pairs and checks the axioms, including the exchange law,
    /// exhaustively.
    pub fn new(
        base: FiniteCategory,
        cells: Vec<Cell2>,
        units: Vec<usize>,
        vcomp: impl Fn(usize, usize) -> Option<usize>,
        hcomp: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCategory(m));
        if units.len() != base.num_arrows() {
            return bad("one unit 2-cell per arrow is required".into());
        }
        for c in &cells {
            if c.src >= base.num_arrows() || c.tgt >= base.num_arrows() {
                return bad(format!("2-cell {} has an unknown boundary", c.name));
            }
            let (s, t) = (base.arrow(c.src), base.arrow(c.tgt));
            if s.src != t.src || s.tgt != t.tgt {
                return bad(format!("boundaries of 2-cell {} are not parallel", c.name));
            }
        }
        for (a, &u) in units.iter().enumerate() {
            if u >= cells.len() || cells[u].src != a || cells[u].tgt != a {
                return bad(format!(
                    "unit of {} has wrong boundaries",
                    base.arrow_name(a)
                ));
            }
        }
        let src0 = |x: usize| base.arrow_src(cells[x].src);
        let tgt0 = |x: usize| base.arrow_tgt(cells[x].src);
        let mut vtable = HashMap::new();
        let mut htable = HashMap::new();
        for a in 0..cells.len() {
            for b in 0..cells.len() {
                if cells[b].src == cells[a].tgt {
                    let Some(c) = vcomp(b, a).filter(|&c| c < cells.len()) else {
                        return bad(format!(
                            "vertical composite {} o1 {} is missing",
                            cells[b].name, cells[a].name
                        ));
                    };
                    if cells[c].src != cells[a].src || cells[c].tgt != cells[b].tgt {
                        return bad(format!(
                            "vertical composite {} o1 {} = {} has wrong boundaries",
                            cells[b].name, cells[a].name, cells[c].name
                        ));
                    }
                    vtable.insert((b, a), c);
                }
                if src0(b) == tgt0(a) {
                    let Some(c) = hcomp(b, a).filter(|&c| c < cells.len()) else {
                        return bad(format!(
                            "horizontal composite {} o0 {} is missing",
                            cells[b].name, cells[a].name
                        ));
                    };
                    let s = base.compose(cells[b].src, cells[a].src);
                    let t = base.compose(cells[b].tgt, cells[a].tgt);
                    if s != Some(cells[c].src) || t != Some(cells[c].tgt) {
                        return bad(format!(
                            "horizontal composite {} o0 {} = {} has wrong boundaries",
                            cells[b].name, cells[a].name, cells[c].name
                        ));
                    }
                    htable.insert((b, a), c);
                }
            }
        }
        let c = Finite2Category {
            base,
            cells,
            units,
            vcomp: vtable,
            hcomp: htable,
        };
        c.verify()?;
        Ok(c)
    }

    fn verify(&self) -> Result<()> {
        let name = |x: usize| self.cells[x].name.as_str();
        let bad = |m: String| Err(Error::InvalidCategory(m));
        for (x, c) in self.cells.iter().enumerate() {
            if self.vcomp[&(self.units[c.tgt], x)] != x || self.vcomp[&(x, self.units[c.src])] != x
            {
                return bad(format!("vertical unit law fails for {}", c.name));
            }
            let (s0, t0) = (self.src0(x), self.tgt0(x));
            let left = self.units[self.base.identity(t0)];
            let right = self.units[self.base.identity(s0)];
            if self.hcomp[&(left, x)] != x || self.hcomp[&(x, right)] != x {
                return bad(format!("horizontal unit law fails for {}", c.name));
            }
        }
        for (&(g, f), &gf) in &self.base.comp {
            if self.hcomp[&(self.units[g], self.units[f])] != self.units[gf] {
                return bad(format!(
                    "units are not functorial on ({}, {})",
                    self.base.arrow_name(g),
                    self.base.arrow_name(f)
                ));
            }
        }
        for (&(b, a), &ba) in &self.vcomp {
            for c in 0..self.cells.len() {
                if self.cells[c].src == self.cells[b].tgt
                    && self.vcomp[&(c, ba)] != self.vcomp[&(self.vcomp[&(c, b)], a)]
                {
                    return bad(format!(
                        "vertical associativity fails on ({}, {}, {})",
                        name(c),
                        name(b),
                        name(a)
                    ));
                }
            }
        }
        for (&(b, a), &ba) in &self.hcomp {
            for c in 0..self.cells.len() {
                if self.src0(c) == self.tgt0(b)
                    && self.hcomp[&(c, ba)] != self.hcomp[&(self.hcomp[&(c, b)], a)]
                {
                    return bad(format!(
                        "horizontal associativity fails on ({}, {}, {})",
                        name(c),
                        name(b),
                        name(a)
                    ));
                }
            }
        }
        let vpairs: Vec<(usize, usize, usize)> =
            self.vcomp.iter().map(|(&(b, a), &c)| (b, a, c)).collect();
        for &(b2, b1, b) in &vpairs {
            for &(a2, a1, a) in &vpairs {
                if self.src0(b2) != self.tgt0(a2) {
                    continue;
                }
                let left = self.hcomp[&(b, a)];
                let right = self.vcomp[&(self.hcomp[&(b2, a2)], self.hcomp[&(b1, a1)])];
                if left != right {
                    return bad(format!(
                        "exchange law fails on ({}, {}, {}, {})",
                        name(b2),
                        name(b1),
                        name(a2),
                        name(a1)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &FiniteCategory {
        &self.base
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, x: usize) -> &Cell2 {
        &self.cells[x]
    }

    pub fn cell_name(&self, x: usize) -> &str {
        &self.cells[x].name
    }

    pub fn cell_index(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    pub fn cell_src(&self, x: usize) -> usize {
        self.cells[x].src
    }

    pub fn cell_tgt(&self, x: usize) -> usize {
        self.cells[x].tgt
    }

    pub fn src0(&self, x: usize) -> usize {
        self.base.arrow_src(self.cells[x].src)
    }

    pub fn tgt0(&self, x: usize) -> usize {
        self.base.arrow_tgt(self.cells[x].src)
    }

    pub fn unit2(&self, a: usize) -> usize {
        self.units[a]
    }

    pub fn is_unit2(&self, x: usize) -> bool {
        self.units[self.cells[x].src] == x
    }

    /// `b ∘_1 a` when `src b = tgt a`.
    pub fn vcomp(&self, b: usize, a: usize) -> Option<usize> {
        self.vcomp.get(&(b, a)).copied()
    }

    /// `b ∘_0 a` when `src_0 b = tgt_0 a`.
    pub fn hcomp(&self, b: usize, a: usize) -> Option<usize> {
        self.hcomp.get(&(b, a)).copied()
    }

    /// All `(b, a, b ∘_1 a)`, sorted.
    pub fn vcomp_table(&self) -> Vec<(usize, usize, usize)> {
        let mut t: Vec<_> = self.vcomp.iter().map(|(&(b, a), &c)| (b, a, c)).collect();
        t.sort_unstable();
        t
    }

    /// All `(b, a, b ∘_0 a)`, sorted.
    pub fn hcomp_table(&self) -> Vec<(usize, usize, usize)> {
        let mut t: Vec<_> = self.hcomp.iter().map(|(&(b, a), &c)| (b, a, c)).collect();
        t.sort_unstable();
        t
    }

    /// True when every 2-cell is a unit.
    pub fn is_locally_discrete(&self) -> bool {
        (0..self.cells.len()).all(|x| self.is_unit2(x))
    }

    /// Only unit 2-cells.
    pub fn locally_discrete(base: FiniteCategory) -> Self {
        let cells = (0..base.num_arrows())
            .map(|a| Cell2 {
                name: format!("1_{}", base.arrow_name(a)),
                src: a,
                tgt: a,
            })
            .collect();
        let units = (0..base.num_arrows()).collect();
        let b2 = base.clone();
        Finite2Category::new(
            base,
            cells,
            units,
            |b, a| (a == b).then_some(a),
            |b, a| b2.compose(b, a),
        )
        .expect("locally discrete 2-categories are valid")
    }

    /// The double suspension of a finite commutative monoid: one object, one
    /// arrow, 2-cells the elements; both compositions are the product.
    pub fn double_suspension(names: &[&str], table: &[Vec<usize>]) -> Result<Self> {
        let base = FiniteCategory::monoid(&["1_*"], &[vec![0]])?;
        let cells = names
            .iter()
            .map(|n| Cell2 {
                name: n.to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let op = |b: usize, a: usize| table.get(b).and_then(|r| r.get(a)).copied();
        Finite2Category::new(base, cells, vec![0], op, op)
    }

    /// `B²(Z/n)`.
    pub fn double_suspension_cyclic(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Finite2Category::double_suspension(&refs, &table).expect("abelian groups give 2-categories")
    }

    /// The hom-category `C(x, y)`: 1-cells and 2-cells with vertical composition.
    pub fn hom_category(&self, x: usize, y: usize) -> FiniteCategory {
        let arrows1 = self.base.hom(x, y);
        let pos: HashMap<usize, usize> = arrows1.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let cells: Vec<usize> = (0..self.cells.len())
            .filter(|&c| pos.contains_key(&self.cells[c].src))
            .collect();
        let cpos: HashMap<usize, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let objects = arrows1
            .iter()
            .map(|&a| self.base.arrow_name(a).to_string())
            .collect();
        let arrows = cells
            .iter()
            .map(|&c| Arrow {
                name: self.cells[c].name.clone(),
                src: pos[&self.cells[c].src],
                tgt: pos[&self.cells[c].tgt],
            })
            .collect();
        let identities = arrows1.iter().map(|&a| cpos[&self.units[a]]).collect();
        FiniteCategory::new(objects, arrows, identities, |g, f| {
            self.vcomp(cells[g], cells[f])
                .and_then(|c| cpos.get(&c).copied())
        })
        .expect("hom-categories of a 2-category are categories")
    }
}

/// Name-based construction of a finite 2-category.  Unit 2-cells `1_f` are
/// added for every arrow (including identities, `1_1_X`); composites with
/// units, whiskering by units of identities and composites of units are
/// implicit.
#[derive(Clone, Debug, Default)]
pub struct TwoCategoryBuilder {
    pub base: CategoryBuilder,
    cells: Vec<(String, String, String)>,
    vcomps: Vec<(String, String, String)>,
    hcomps: Vec<(String, String, String)>,
}

impl TwoCategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        self.base.object(name);
        self
    }

    pub fn arrow(&mut self, name: &str, src: &str, tgt: &str) -> &mut Self {
        self.base.arrow(name, src, tgt);
        self
    }

    pub fn comp(&mut self, g: &str, f: &str, h: &str) -> &mut Self {
        self.base.comp(g, f, h);
        self
    }

    pub fn cell(&mut self, name: &str, src: &str, tgt: &str) -> &mut Self {
        self.cells.push((name.into(), src.into(), tgt.into()));
        self
    }

    /// Declares `b ∘_1 a = c`.
    pub fn vcomp(&mut self, b: &str, a: &str, c: &str) -> &mut Self {
        self.vcomps.push((b.into(), a.into(), c.into()));
        self
    }

    /// Declares `b ∘_0 a = c`.
    pub fn hcomp(&mut self, b: &str, a: &str, c: &str) -> &mut Self {
        self.hcomps.push((b.into(), a.into(), c.into()));
        self
    }

    pub fn build(&self) -> Result<Finite2Category> {
        let base = self.base.build()?;
        let n1 = base.num_arrows();
        let mut cells: Vec<Cell2> = (0..n1)
            .map(|a| Cell2 {
                name: format!("1_{}", base.arrow_name(a)),
                src: a,
                tgt: a,
            })
            .collect();
        let units: Vec<usize> = (0..n1).collect();
        let arrow = |n: &str| {
            base.arrow_index(n)
                .ok_or_else(|| Error::InvalidCategory(format!("unknown arrow {n}")))
        };
        for (name, s, t) in &self.cells {
            if cells.iter().any(|c| &c.name == name) {
                return Err(Error::InvalidCategory(format!("duplicate 2-cell {name}")));
            }
            cells.push(Cell2 {
                name: name.clone(),
                src: arrow(s)?,
                tgt: arrow(t)?,
            });
        }
        let idx = |n: &str| {
            cells
                .iter()
                .position(|c| c.name == n)
                .ok_or_else(|| Error::InvalidCategory(format!("unknown 2-cell {n}")))
        };
        let mut v = HashMap::new();
        let mut h = HashMap::new();
        for (x, c) in cells.iter().enumerate() {
            v.insert((units[c.tgt], x), x);
            v.insert((x, units[c.src]), x);
            let s0 = base.arrow_src(c.src);
            let t0 = base.arrow_tgt(c.src);
            h.insert((units[base.identity(t0)], x), x);
            h.insert((x, units[base.identity(s0)]), x);
        }
        for &(g, f) in base.comp.keys() {
            let gf = base.compose(g, f).expect("tabulated");
            h.insert((units[g], units[f]), units[gf]);
        }
        for (b, a, c) in &self.vcomps {
            declare(&mut v, (idx(b)?, idx(a)?), idx(c)?, || format!("{b} o1 {a}"))?;
        }
        for (b, a, c) in &self.hcomps {
            declare(&mut h, (idx(b)?, idx(a)?), idx(c)?, || format!("{b} o0 {a}"))?;
        }
        Finite2Category::new(
            base,
            cells,
            units,
            |b, a| v.get(&(b, a)).copied(),
            |b, a| h.get(&(b, a)).copied(),
        )
    }
}

impl Model for FiniteCategory {
    type Cell = CellRef;

    fn unit(&self, c: &CellRef) -> Option<CellRef> {
        match *c {
            CellRef::Obj(o) => Some(CellRef::Arrow(self.identity(o))),
            _ => None,
        }
    }

    fn compose(&self, k: usize, a: &CellRef, b: &CellRef) -> Option<CellRef> {
        match (k, *a, *b) {
            (0, CellRef::Arrow(g), CellRef::Arrow(f)) => self.compose(g, f).map(CellRef::Arrow),
            _ => None,
        }
    }

    fn source(&self, c: &CellRef) -> Option<CellRef> {
        match *c {
            CellRef::Arrow(a) => Some(CellRef::Obj(self.arrow_src(a))),
            _ => None,
        }
    }

    fn target(&self, c: &CellRef) -> Option<CellRef> {
        match *c {
            CellRef::Arrow(a) => Some(CellRef::Obj(self.arrow_tgt(a))),
            _ => None,
        }
    }
}

impl Model for Finite2Category {
    type Cell = CellRef;

    fn unit(&self, c: &CellRef) -> Option<CellRef> {
        match *c {
            CellRef::Obj(o) => Some(CellRef::Arrow(self.base.identity(o))),
            CellRef::Arrow(a) => Some(CellRef::Two(self.unit2(a))),
            CellRef::Two(_) => None,
        }
    }

    fn compose(&self, k: usize, a: &CellRef, b: &CellRef) -> Option<CellRef> {
        match (k, *a, *b) {
            (0, CellRef::Arrow(g), CellRef::Arrow(f)) => {
                self.base.compose(g, f).map(CellRef::Arrow)
            }
            (0, CellRef::Two(y), CellRef::Two(x)) => self.hcomp(y, x).map(CellRef::Two),
            (1, CellRef::Two(y), CellRef::Two(x)) => self.vcomp(y, x).map(CellRef::Two),
            _ => None,
        }
    }

    fn source(&self, c: &CellRef) -> Option<CellRef> {
        match *c {
            CellRef::Obj(_) => None,
            CellRef::Arrow(a) => Some(CellRef::Obj(self.base.arrow_src(a))),
            CellRef::Two(x) => Some(CellRef::Arrow(self.cell_src(x))),
        }
    }

    fn target(&self, c: &CellRef) -> Option<CellRef> {
        match *c {
            CellRef::Obj(_) => None,
            CellRef::Arrow(a) => Some(CellRef::Obj(self.base.arrow_tgt(a))),
            CellRef::Two(x) => Some(CellRef::Arrow(self.cell_tgt(x))),
        }
    }
}

/// A simplicial set presented by its simplices degree by degree.
pub trait SimplicialModel {
    type Simplex: Clone + Eq + std::hash::Hash + Ord + fmt::Debug;
    /// All `m`-simplices, in a fixed order.
    fn simplices(&self, m: usize) -> Vec<Self::Simplex>;
    /// `d_i x` for an `m`-simplex `x`, `0 <= i <= m`.
    fn face(&self, i: usize, x: &Self::Simplex) -> Self::Simplex;
    /// `s_i x` for an `m`-simplex `x`, `0 <= i <= m`.
    fn degeneracy(&self, i: usize, x: &Self::Simplex) -> Self::Simplex;
    fn label(&self, x: &Self::Simplex) -> String;
}

/// Simplices up to degree `cutoff` with faces and degeneracies as index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialTruncation {
    cutoff: usize,
    labels: Vec<Vec<String>>,
    /// `faces[m][x][i]` indexes `d_i x` in degree `m - 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[m][x][i]` indexes `s_i x` in degree `m + 1`, for `m < cutoff`.
    degeneracies: Vec<Vec<Vec<usize>>>,
    degenerate: Vec<Vec<bool>>,
}

impl SimplicialTruncation {
    pub fn from_model<M: SimplicialModel>(model: &M, cutoff: usize) -> Result<Self> {
        let simplices: Vec<Vec<M::Simplex>> = (0..=cutoff).map(|m| model.simplices(m)).collect();
        let index: Vec<HashMap<&M::Simplex, usize>> = simplices
            .iter()
            .map(|xs| xs.iter().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let lookup = |m: usize, x: &M::Simplex| {
            index[m]
                .get(x)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("{x:?} is not a {m}-simplex")))
        };
        let mut faces = vec![Vec::new()];
        for m in 1..=cutoff {
            let table = simplices[m]
                .iter()
                .map(|x| {
                    (0..=m)
                        .map(|i| lookup(m - 1, &model.face(i, x)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            faces.push(table);
        }
        let mut degeneracies = Vec::new();
        for m in 0..cutoff {
            let table = simplices[m]
                .iter()
                .map(|x| {
                    (0..=m)
                        .map(|i| lookup(m + 1, &model.degeneracy(i, x)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            degeneracies.push(table);
        }
        let mut degenerate = vec![vec![false; simplices[0].len()]];
        for m in 1..=cutoff {
            let flags = (0..simplices[m].len())
                .map(|x| (0..m).any(|l| degeneracies[m - 1][faces[m][x][l]][l] == x))
                .collect();
            degenerate.push(flags);
        }
        let labels = simplices
            .iter()
            .map(|xs| xs.iter().map(|x| model.label(x)).collect())
            .collect();
        Ok(SimplicialTruncation {
            cutoff,
            labels,
            faces,
            degeneracies,
            degenerate,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn count(&self, m: usize) -> usize {
        self.labels[m].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn nondegenerate(&self, m: usize) -> Vec<usize> {
        (0..self.count(m))
            .filter(|&x| !self.degenerate[m][x])
            .collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.cutoff)
            .map(|m| self.nondegenerate(m).len())
            .collect()
    }

    pub fn label(&self, m: usize, x: usize) -> &str {
        &self.labels[m][x]
    }

    pub fn face(&self, m: usize, x: usize, i: usize) -> usize {
        self.faces[m][x][i]
    }

    pub fn degeneracy(&self, m: usize, x: usize, i: usize) -> usize {
        self.degeneracies[m][x][i]
    }

    pub fn is_degenerate(&self, m: usize, x: usize) -> bool {
        self.degenerate[m][x]
    }

    /// Checks all simplicial identities on the stored range.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: &str, m: usize, x: usize| {
            Err(Error::Invalid(format!(
                "simplicial identity {what} fails on {m}-simplex {}",
                self.labels[m][x]
            )))
        };
        for m in 2..=self.cutoff {
            for x in 0..self.count(m) {
                for j in 0..=m {
                    for i in 0..j {
                        // d_i d_j = d_{j-1} d_i
                        let a = self.face(m - 1, self.face(m, x, j), i);
                        let b = self.face(m - 1, self.face(m, x, i), j - 1);
                        if a != b {
                            return fail("d_i d_j = d_{j-1} d_i", m, x);
                        }
                    }
                }
            }
        }
        for m in 0..self.cutoff {
            for x in 0..self.count(m) {
                for j in 0..=m {
                    let sj = self.degeneracy(m, x, j);
                    for i in 0..=m + 1 {
                        let d = self.face(m + 1, sj, i);
                        let expected = if i == j || i == j + 1 {
                            Some(x)
                        } else if m == 0 {
                            None
                        } else if i < j {
                            Some(self.degeneracy(m - 1, self.face(m, x, i), j - 1))
                        } else {
                            Some(self.degeneracy(m - 1, self.face(m, x, i - 1), j))
                        };
                        if let Some(e) = expected {
                            if d != e {
                                return fail("d_i s_j", m, x);
                            }
                        }
                    }
                    if m + 1 < self.cutoff {
                        for i in 0..=j {
                            // s_i s_j = s_{j+1} s_i
                            let a = self.degeneracy(m + 1, sj, i);
                            let b = self.degeneracy(m + 1, self.degeneracy(m, x, i), j + 1);
                            if a != b {
                                return fail("s_i s_j = s_{j+1} s_i", m, x);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Normalized chains: nondegenerate simplices, alternating face sums,
/// degenerate faces sent to zero.
pub fn normalized_chains(x: &SimplicialTruncation) -> ChainComplex {
    let bases: Vec<Vec<usize>> = (0..=x.cutoff).map(|m| x.nondegenerate(m)).collect();
    let positions: Vec<HashMap<usize, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    let mut boundaries = Vec::new();
    for m in 1..=x.cutoff {
        let mut d = IntMatrix::zero(bases[m - 1].len(), bases[m].len());
        for (col, &s) in bases[m].iter().enumerate() {
            for i in 0..=m {
                if let Some(&row) = positions[m - 1].get(&x.face(m, s, i)) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    d.add_to(row, col, &BigInt::from(sign));
                }
            }
        }
        boundaries.push(d);
    }
    ChainComplex::new(bases.iter().map(Vec::len).collect(), boundaries)
        .expect("normalized chains form a complex")
}

/// Categories whose nerve can be enumerated.
pub trait Nerve {
    fn nerve(&self, cutoff: usize) -> SimplicialTruncation;
}

impl Nerve for FiniteCategory {
    fn nerve(&self, cutoff: usize) -> SimplicialTruncation {
        nerve1(self, cutoff)
    }
}

impl Nerve for Finite2Category {
    fn nerve(&self, cutoff: usize) -> SimplicialTruncation {
        nerve2(self, cutoff)
    }
}

/// `H_k` of the nerve, computed from the truncation at degree `k + 1`.
pub fn singular_homology(c: &impl Nerve, k: usize) -> HomologyGroup {
    normalized_chains(&c.nerve(k + 1))
        .homology(k)
        .expect("degree within truncation")
}

/// A chain of composable arrows starting at an object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

struct Nerve1<'a>(&'a FiniteCategory);

impl Chain {
    fn vertex(&self, c: &FiniteCategory, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            c.arrow_tgt(self.arrows[i - 1])
        }
    }
}

/// All chains of `m` composable arrows in `c`, lexicographically.
pub fn chains(c: &FiniteCategory, m: usize) -> Vec<Chain> {
    let mut layer: Vec<Chain> = (0..c.num_objects())
        .map(|o| Chain {
            start: o,
            arrows: Vec::new(),
        })
        .collect();
    for _ in 0..m {
        let mut next = Vec::new();
        for ch in &layer {
            let end = ch.vertex(c, ch.arrows.len());
            for a in c.arrows_from(end) {
                let mut arrows = ch.arrows.clone();
                arrows.push(a);
                next.push(Chain {
                    start: ch.start,
                    arrows,
                });
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

impl SimplicialModel for Nerve1<'_> {
    type Simplex = Chain;

    fn simplices(&self, m: usize) -> Vec<Chain> {
        chains(self.0, m)
    }

    fn face(&self, i: usize, x: &Chain) -> Chain {
        let m = x.arrows.len();
        let c = self.0;
        let mut arrows = x.arrows.clone();
        let mut start = x.start;
        if i == 0 {
            start = c.arrow_tgt(arrows.remove(0));
        } else if i == m {
            arrows.pop();
        } else {
            let f = arrows[i - 1];
            let g = arrows.remove(i);
            arrows[i - 1] = c.compose(g, f).expect("chain is composable");
        }
        Chain { start, arrows }
    }

    fn degeneracy(&self, i: usize, x: &Chain) -> Chain {
        let v = x.vertex(self.0, i);
        let mut arrows = x.arrows.clone();
        arrows.insert(i, self.0.identity(v));
        Chain {
            start: x.start,
            arrows,
        }
    }

    fn label(&self, x: &Chain) -> String {
        if x.arrows.is_empty() {
            self.0.object_name(x.start).to_string()
        } else {
            x.arrows
                .iter()
                .map(|&a| self.0.arrow_name(a))
                .collect::<Vec<_>>()
                .join("|")
        }
    }
}

/// The nerve of a finite category up to degree `cutoff`.
pub fn nerve1(c: &FiniteCategory, cutoff: usize) -> SimplicialTruncation {
    SimplicialTruncation::from_model(&Nerve1(c), cutoff)
        .expect("nerve of a category is closed under faces")
}

/// An `m`-simplex of the Duskin nerve.
///
/// `arrows[(i, j)]` for `i < j` is `X_ij : X_i -> X_j`; `cells[(i, j, k)]` for
/// `i < j < k` is `X_ijk : X_ik => X_jk ∘ X_ij`. Entries with repeated
/// indices are the units forced by normalization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DuskinSimplex {
    pub objects: Vec<usize>,
    pub arrows: BTreeMap<(usize, usize), usize>,
    pub cells: BTreeMap<(usize, usize, usize), usize>,
}

impl DuskinSimplex {
    fn arrow(&self, c: &Finite2Category, i: usize, j: usize) -> usize {
        if i == j {
            c.base().identity(self.objects[i])
        } else {
            self.arrows[&(i, j)]
        }
    }

    fn cell(&self, c: &Finite2Category, i: usize, j: usize, k: usize) -> usize {
        if i == j || j == k {
            c.unit2(self.arrow(c, i, k))
        } else {
            self.cells[&(i, j, k)]
        }
    }

    fn reindex(
        &self,
        c: &Finite2Category,
        m: usize,
        map: impl Fn(usize) -> usize,
    ) -> DuskinSimplex {
        let objects = (0..=m).map(|a| self.objects[map(a)]).collect();
        let mut arrows = BTreeMap::new();
        let mut cells = BTreeMap::new();
        for a in 0..=m {
            for b in a + 1..=m {
                arrows.insert((a, b), self.arrow(c, map(a), map(b)));
                for e in b + 1..=m {
                    cells.insert((a, b, e), self.cell(c, map(a), map(b), map(e)));
                }
            }
        }
        DuskinSimplex {
            objects,
            arrows,
            cells,
        }
    }
}

struct Duskin<'a>(&'a Finite2Category);

impl Duskin<'_> {
    /// `(X_kl ∘_0 X_ijk) ∘_1 X_ikl = (X_jkl ∘_0 X_ij) ∘_1 X_ijl`
    fn cocycle(&self, x: &DuskinSimplex, i: usize, j: usize, k: usize, l: usize) -> bool {
        let c = self.0;
        let left = c
            .hcomp(c.unit2(x.arrow(c, k, l)), x.cell(c, i, j, k))
            .and_then(|w| c.vcomp(w, x.cell(c, i, k, l)));
        let right = c
            .hcomp(x.cell(c, j, k, l), c.unit2(x.arrow(c, i, j)))
            .and_then(|w| c.vcomp(w, x.cell(c, i, j, l)));
        left.is_some() && left == right
    }

    /// All extensions of an `(m-1)`-simplex by a new last vertex `m`.
    fn extend(&self, x: &DuskinSimplex, m: usize, out: &mut Vec<DuskinSimplex>) {
        let c = self.0;
        let base = c.base();
        for o in 0..base.num_objects() {
            let mut y = x.clone();
            y.objects.push(o);
            self.choose_arrows(y, m, 0, out);
        }
    }

    fn choose_arrows(&self, y: DuskinSimplex, m: usize, i: usize, out: &mut Vec<DuskinSimplex>) {
        let c = self.0;
        if i == m {
            let pairs: Vec<(usize, usize)> = (0..m)
                .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
                .collect();
            self.choose_cells(y, m, &pairs, 0, out);
            return;
        }
        for a in c.base().hom(y.objects[i], y.objects[m]) {
            let mut z = y.clone();
            z.arrows.insert((i, m), a);
            self.choose_arrows(z, m, i + 1, out);
        }
    }

    fn choose_cells(
        &self,
        y: DuskinSimplex,
        m: usize,
        pairs: &[(usize, usize)],
        p: usize,
        out: &mut Vec<DuskinSimplex>,
    ) {
        let c = self.0;
        if p == pairs.len() {
            out.push(y);
            return;
        }
        let (i, j) = pairs[p];
        let src = y.arrow(c, i, m);
        let tgt = c.base().compose(y.arrow(c, j, m), y.arrow(c, i, j));
        for x in 0..c.num_cells() {
            if c.cell_src(x) != src || Some(c.cell_tgt(x)) != tgt {
                continue;
            }
            let mut z = y.clone();
            z.cells.insert((i, j, m), x);
            // every cocycle whose cells are now all fixed: (h, i, j, m) for h < i
            if (0..i).all(|h| self.cocycle(&z, h, i, j, m)) {
                self.choose_cells(z, m, pairs, p + 1, out);
            }
        }
    }
}

impl SimplicialModel for Duskin<'_> {
    type Simplex = DuskinSimplex;

    fn simplices(&self, m: usize) -> Vec<DuskinSimplex> {
        let mut layer: Vec<DuskinSimplex> = (0..self.0.base().num_objects())
            .map(|o| DuskinSimplex {
                objects: vec![o],
                arrows: BTreeMap::new(),
                cells: BTreeMap::new(),
            })
            .collect();
        for d in 1..=m {
            let mut next = Vec::new();
            for x in &layer {
                self.extend(x, d, &mut next);
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    fn face(&self, i: usize, x: &DuskinSimplex) -> DuskinSimplex {
        let m = x.objects.len() - 1;
        x.reindex(self.0, m - 1, |a| if a < i { a } else { a + 1 })
    }

    fn degeneracy(&self, i: usize, x: &DuskinSimplex) -> DuskinSimplex {
        let m = x.objects.len() - 1;
        x.reindex(self.0, m + 1, |a| if a <= i { a } else { a - 1 })
    }

    fn label(&self, x: &DuskinSimplex) -> String {
        let c = self.0;
        let objs: Vec<&str> = x.objects.iter().map(|&o| c.base().object_name(o)).collect();
        let arrows: Vec<String> = x
            .arrows
            .iter()
            .map(|(&(i, j), &a)| format!("{i}{j}:{}", c.base().arrow_name(a)))
            .collect();
        let cells: Vec<String> = x
            .cells
            .iter()
            .map(|(&(i, j, k), &a)| format!("{i}{j}{k}:{}", c.cell_name(a)))
            .collect();
        let mut parts = vec![objs.join(",")];
        if !arrows.is_empty() {
            parts.push(arrows.join(","));
        }
        if !cells.is_empty() {
            parts.push(cells.join(","));
        }
        parts.join(" | ")
    }
}

/// The Duskin nerve of a finite 2-category up to degree `cutoff`.
pub fn nerve2(c: &Finite2Category, cutoff: usize) -> SimplicialTruncation {
    SimplicialTruncation::from_model(&Duskin(c), cutoff)
        .expect("Duskin nerve is closed under faces")
}

/// Number of `m`-simplices of the nerve of `c`, without enumerating them.
pub fn nerve_count(c: &FiniteCategory, m: usize) -> u128 {
    let mut ending: Vec<u128> = vec![1; c.num_objects()];
    for _ in 0..m {
        let mut next = vec![0u128; c.num_objects()];
        for a in 0..c.num_arrows() {
            next[c.arrow_tgt(a)] += ending[c.arrow_src(a)];
        }
        ending = next;
    }
    ending.iter().sum()
}

/// `S_n(C)`: objects are chains of `n` composable 1-cells, arrows are
/// `n`-tuples of 2-cells between them, composed vertically componentwise.
pub fn horizontal_slice(c: &Finite2Category, n: usize) -> FiniteCategory {
    let base = c.base();
    let objs = chains(base, n);
    let obj_index: HashMap<&Chain, usize> =
        objs.iter().enumerate().map(|(i, ch)| (ch, i)).collect();
    // 2-cells as a graph over objects of C
    let mut tuples: Vec<(usize, Vec<usize>)> =
        (0..base.num_objects()).map(|o| (o, Vec::new())).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for (start, xs) in &tuples {
            let end = xs.last().map_or(*start, |&x| c.tgt0(x));
            for x in 0..c.num_cells() {
                if c.src0(x) == end {
                    let mut ys = xs.clone();
                    ys.push(x);
                    next.push((*start, ys));
                }
            }
        }
        tuples = next;
    }
    tuples.sort();
    let boundary = |(start, xs): &(usize, Vec<usize>), tgt: bool| Chain {
        start: *start,
        arrows: xs
            .iter()
            .map(|&x| if tgt { c.cell_tgt(x) } else { c.cell_src(x) })
            .collect(),
    };
    let arrows: Vec<Arrow> = tuples
        .iter()
        .map(|t| Arrow {
            name: if t.1.is_empty() {
                format!("1_{}", base.object_name(t.0))
            } else {
                t.1.iter()
                    .map(|&x| c.cell_name(x))
                    .collect::<Vec<_>>()
                    .join("|")
            },
            src: obj_index[&boundary(t, false)],
            tgt: obj_index[&boundary(t, true)],
        })
        .collect();
    let tuple_index: HashMap<&(usize, Vec<usize>), usize> =
        tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let identities = objs
        .iter()
        .map(|ch| {
            tuple_index[&(
                ch.start,
                ch.arrows.iter().map(|&a| c.unit2(a)).collect::<Vec<_>>(),
            )]
        })
        .collect();
    let names = objs.iter().map(|ch| Nerve1(base).label(ch)).collect();
    FiniteCategory::new(names, arrows, identities, |g, f| {
        let (sg, xg) = &tuples[g];
        let (_, xf) = &tuples[f];
        let xs: Option<Vec<usize>> = xg.iter().zip(xf).map(|(&b, &a)| c.vcomp(b, a)).collect();
        tuple_index.get(&(*sg, xs?)).copied()
    })
    .expect("horizontal slices are categories")
}

/// `V_m(C)`: objects of `C`; an arrow `x -> y` is a chain of `m` vertically
/// composable 2-cells of `C(x, y)` (a 1-cell when `m = 0`); composition is
/// horizontal, componentwise.
pub fn vertical_slice(c: &Finite2Category, m: usize) -> FiniteCategory {
    let base = c.base();
    let mut arrows_key: Vec<(usize, usize, Chain)> = Vec::new();
    for x in 0..base.num_objects() {
        for y in 0..base.num_objects() {
            let hom = c.hom_category(x, y);
            let ones = base.hom(x, y);
            for ch in chains(&hom, m) {
                let start = ones[ch.start];
                let cells = ch
                    .arrows
                    .iter()
                    .map(|&a| local_cell(c, &ones, &hom, a))
                    .collect();
                arrows_key.push((
                    x,
                    y,
                    Chain {
                        start,
                        arrows: cells,
                    },
                ));
            }
        }
    }
    let key_index: HashMap<&Chain, usize> = arrows_key
        .iter()
        .enumerate()
        .map(|(i, (_, _, ch))| (ch, i))
        .collect();
    let arrows: Vec<Arrow> = arrows_key
        .iter()
        .map(|(x, y, ch)| Arrow {
            name: if ch.arrows.is_empty() {
                base.arrow_name(ch.start).to_string()
            } else {
                ch.arrows
                    .iter()
                    .map(|&a| c.cell_name(a))
                    .collect::<Vec<_>>()
                    .join("|")
            },
            src: *x,
            tgt: *y,
        })
        .collect();
    let identities = (0..base.num_objects())
        .map(|o| {
            let id = base.identity(o);
            key_index[&Chain {
                start: id,
                arrows: vec![c.unit2(id); m],
            }]
        })
        .collect();
    let names = (0..base.num_objects())
        .map(|o| base.object_name(o).to_string())
        .collect();
    FiniteCategory::new(names, arrows, identities, |g, f| {
        let cg = &arrows_key[g].2;
        let cf = &arrows_key[f].2;
        let start = base.compose(cg.start, cf.start)?;
        let cells: Option<Vec<usize>> = cg
            .arrows
            .iter()
            .zip(&cf.arrows)
            .map(|(&b, &a)| c.hcomp(b, a))
            .collect();
        key_index
            .get(&Chain {
                start,
                arrows: cells?,
            })
            .copied()
    })
    .expect("vertical slices are categories")
}

fn local_cell(c: &Finite2Category, ones: &[usize], hom: &FiniteCategory, a: usize) -> usize {
    let name = hom.arrow_name(a);
    let cell = c.cell_index(name).expect("hom-category arrows are 2-cells");
    debug_assert!(ones.contains(&c.cell_src(cell)));
    cell
}

/// `|N(S_n(C))_m|`.
pub fn binerve_level(c: &Finite2Category, n: usize, m: usize) -> u128 {
    nerve_count(&horizontal_slice(c, n), m)
}

/// `|N(V_m(C))_n|`, the same bisimplicial level computed the other way.
pub fn binerve_level_vertical(c: &Finite2Category, n: usize, m: usize) -> u128 {
    nerve_count(&vertical_slice(c, m), n)
}

/// Labels of the `(n, m)`-cells of the bisimplicial nerve.
pub fn binerve_cells(c: &Finite2Category, n: usize, m: usize) -> Vec<String> {
    let s = horizontal_slice(c, n);
    chains(&s, m)
        .iter()
        .map(|ch| Nerve1(&s).label(ch))
        .collect()
}

/// The free category on an acyclic graph: identities, then every nonempty
/// path of generators.
pub fn realize_free_category(p: &Polygraph) -> Result<FiniteCategory> {
    if (2..=p.max_dim()).any(|d| p.rank(d) > 0) {
        return Err(Error::Invalid(
            "only 1-dimensional polygraphs present free categories".into(),
        ));
    }
    let objs = p.generators(0);
    let obj_index: HashMap<&str, usize> = objs
        .iter()
        .enumerate()
        .map(|(i, o)| (o.name(), i))
        .collect();
    let edges: Vec<(String, usize, usize)> = p
        .generators(1)
        .iter()
        .map(|g| {
            let a = p.attachment(g).expect("1-generators are attached");
            let end = |t: &crate::term::CellTerm| match t {
                crate::term::CellTerm::Gen(x) => obj_index[x.name()],
                _ => unreachable!("boundaries of 1-generators are objects"),
            };
            (g.name().to_string(), end(&a.src), end(&a.tgt))
        })
        .collect();
    // cycle detection by depth-first search
    let mut state = vec![0u8; objs.len()];
    fn dfs(v: usize, edges: &[(String, usize, usize)], state: &mut [u8]) -> Option<String> {
        state[v] = 1;
        for (name, s, t) in edges {
            if *s != v {
                continue;
            }
            match state[*t] {
                1 => return Some(name.clone()),
                0 => {
                    if let Some(e) = dfs(*t, edges, state) {
                        return Some(e);
                    }
                }
                _ => {}
            }
        }
        state[v] = 2;
        None
    }
    for v in 0..objs.len() {
        if state[v] == 0 {
            if let Some(e) = dfs(v, &edges, &mut state) {
                return Err(Error::CyclicGraph(e));
            }
        }
    }
    let mut arrows: Vec<Arrow> = objs
        .iter()
        .enumerate()
        .map(|(i, o)| Arrow {
            name: format!("1_{}", o.name()),
            src: i,
            tgt: i,
        })
        .collect();
    let mut paths: Vec<(usize, Vec<usize>)> = (0..objs.len()).map(|o| (o, Vec::new())).collect();
    let mut layer: Vec<(usize, Vec<usize>)> = paths.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (start, es) in &layer {
            let end = es.last().map_or(*start, |&e| edges[e].2);
            for (e, (_, s, _)) in edges.iter().enumerate() {
                if *s == end {
                    let mut q = es.clone();
                    q.push(e);
                    next.push((*start, q));
                }
            }
        }
        for (start, es) in &next {
            arrows.push(Arrow {
                name: es
                    .iter()
                    .rev()
                    .map(|&e| edges[e].0.as_str())
                    .collect::<Vec<_>>()
                    .join(" o "),
                src: *start,
                tgt: edges[*es.last().expect("nonempty")].2,
            });
        }
        paths.extend(next.iter().cloned());
        layer = next;
    }
    let index: HashMap<&(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let names = objs.iter().map(|o| o.name().to_string()).collect();
    let identities = (0..objs.len()).collect();
    FiniteCategory::new(names, arrows, identities, |g, f| {
        let (sf, ef) = &paths[f];
        let (_, eg) = &paths[g];
        let mut q = ef.clone();
        q.extend(eg);
        index.get(&(*sf, q)).copied()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_categories() {
        let d1 = FiniteCategory::simplex(1);
        assert_eq!(d1.num_arrows(), 3);
        let n = nerve1(&d1, 3);
        assert_eq!(n.nondegenerate_counts(), vec![2, 1, 0, 0]);
        n.check_identities().unwrap();
        assert_eq!(singular_homology(&d1, 0), HomologyGroup::free(1));
        assert_eq!(singular_homology(&d1, 1), HomologyGroup::zero());
    }

    #[test]
    fn cyclic_group_nerve() {
        let z2 = FiniteCategory::cyclic_group(2);
        let n = nerve1(&z2, 3);
        assert_eq!(n.counts(), vec![1, 2, 4, 8]);
        assert_eq!(n.nondegenerate_counts(), vec![1, 1, 1, 1]);
        assert_eq!(
            singular_homology(&z2, 1),
            HomologyGroup::with_torsion(0, &[2])
        );
        assert_eq!(singular_homology(&z2, 2), HomologyGroup::zero());
    }

    #[test]
    fn builder_rejects_bad_tables() {
        let mut b = CategoryBuilder::new();
        b.object("A")
            .object("B")
            .arrow("f", "A", "B")
            .arrow("g", "B", "A");
        let err = b.build().unwrap_err();
        assert!(err.to_string().contains("missing"), "{err}");
        b.comp("g", "f", "1_A").comp("f", "g", "1_B");
        assert!(b.build().is_ok());
        // (a a) b = b b = a but a (a b) = a b = b
        let mut broken = CategoryBuilder::new();
        broken.object("A").arrow("a", "A", "A").arrow("b", "A", "A");
        broken
            .comp("a", "a", "b")
            .comp("a", "b", "b")
            .comp("b", "a", "a")
            .comp("b", "b", "a");
        assert!(broken.build().is_err());
    }

    #[test]
    fn double_suspension_of_z2() {
        let c = Finite2Category::double_suspension_cyclic(2);
        let n = nerve2(&c, 3);
        n.check_identities().unwrap();
        assert_eq!(n.count(2), 2);
        assert_eq!(n.nondegenerate(2).len(), 1);
        assert_eq!(singular_homology(&c, 0), HomologyGroup::free(1));
        assert_eq!(singular_homology(&c, 1), HomologyGroup::zero());
        assert_eq!(
            singular_homology(&c, 2),
            HomologyGroup::with_torsion(0, &[2])
        );
    }

    #[test]
    fn duskin_agrees_with_nerve_on_categories() {
        let d2 = FiniteCategory::simplex(2);
        let two = Finite2Category::locally_discrete(d2.clone());
        assert_eq!(nerve1(&d2, 3).counts(), nerve2(&two, 3).counts());
    }

    #[test]
    fn bisimplicial_levels() {
        let c = Finite2Category::double_suspension_cyclic(2);
        assert_eq!(binerve_level(&c, 1, 1), 2);
        for n in 0..3 {
            for m in 0..3 {
                assert_eq!(binerve_level(&c, n, m), binerve_level_vertical(&c, n, m));
            }
            assert_eq!(binerve_level(&c, 0, n), 1);
        }
    }

    #[test]
    fn free_categories() {
        let mut p = Polygraph::new(1).unwrap();
        for o in ["A", "B", "C", "D"] {
            p.add_object(o).unwrap();
        }
        p.add_cell_words("f", "(c_A)", "(c_B)").unwrap();
        p.add_cell_words("g", "(c_B)", "(c_D)").unwrap();
        p.add_cell_words("h", "(c_A)", "(c_C)").unwrap();
        p.add_cell_words("k", "(c_C)", "(c_D)").unwrap();
        let c = realize_free_category(&p).unwrap();
        assert_eq!(c.num_arrows(), 10);
        let mut loopy = Polygraph::new(1).unwrap();
        loopy.add_object("A").unwrap();
        loopy.add_cell_words("l", "(c_A)", "(c_A)").unwrap();
        assert!(matches!(
            realize_free_category(&loopy),
            Err(Error::CyclicGraph(_))
        ));
    }
}
