//! Polygraphs (computads): generators graded by dimension, each attached
//! along a parallel pair of cells of the free category one dimension below.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rewrite::{self, Budget, Verdict};
use crate::term::{self, CellTerm, GeneratorId};

/// Largest dimension a polygraph may declare.
pub const MAX_DIM: usize = 16;

/// Source and target of a generator of positive dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub src: CellTerm,
    pub tgt: CellTerm,
}

/// A finite polygraph of bounded dimension.
#[derive(Clone, Debug)]
pub struct Polygraph {
    max_dim: usize,
    cells: Vec<Vec<GeneratorId>>,
    attach: HashMap<GeneratorId, Attachment>,
    names: HashMap<Arc<str>, GeneratorId>,
}

impl PartialEq for Polygraph {
    fn eq(&self, other: &Self) -> bool {
        self.max_dim == other.max_dim && self.cells == other.cells && self.attach == other.attach
    }
}

impl Eq for Polygraph {}

/// A 1-cell of a free 1-category written as its source object followed by
/// the generators of the path, first one first.
pub type Path = (GeneratorId, Vec<GeneratorId>);

impl Polygraph {
    pub fn new(max_dim: usize) -> Result<Self> {
        if max_dim > MAX_DIM {
            return Err(Error::Invalid(format!(
                "dimension {max_dim} exceeds the supported maximum {MAX_DIM}"
            )));
        }
        Ok(Polygraph {
            max_dim,
            cells: vec![Vec::new(); max_dim + 1],
            attach: HashMap::new(),
            names: HashMap::new(),
        })
    }

    /// The polygraph with no generators at all.
    pub fn empty() -> Self {
        Polygraph::new(0).expect("dimension 0 is always supported")
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Generators of dimension `dim` in declaration order.
    pub fn generators(&self, dim: usize) -> &[GeneratorId] {
        self.cells.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn rank(&self, dim: usize) -> usize {
        self.generators(dim).len()
    }

    /// All generators, lowest dimension first.
    pub fn all_generators(&self) -> impl Iterator<Item = &GeneratorId> {
        self.cells.iter().flatten()
    }

    pub fn generator(&self, name: &str) -> Option<&GeneratorId> {
        self.names.get(name)
    }

    pub fn contains(&self, g: &GeneratorId) -> bool {
        self.names.get(g.name()) == Some(g)
    }

    /// Position of `g` among the generators of its dimension.
    pub fn index_of(&self, g: &GeneratorId) -> Option<usize> {
        self.generators(g.dim()).iter().position(|h| h == g)
    }

    pub fn attachment(&self, g: &GeneratorId) -> Option<&Attachment> {
        self.attach.get(g)
    }

    pub fn add_object(&mut self, name: &str) -> Result<GeneratorId> {
        self.register(name, 0)
    }

    /// Attach a new generator along the parallel pair `src`, `tgt`.
    pub fn add_cell(&mut self, name: &str, src: CellTerm, tgt: CellTerm) -> Result<GeneratorId> {
        let dim = src.dim() + 1;
        if tgt.dim() + 1 != dim {
            return Err(Error::DimensionMismatch {
                expected: src.dim(),
                found: tgt.dim(),
                context: format!("target of `{name}`"),
            });
        }
        if dim > self.max_dim {
            return Err(Error::DimensionMismatch {
                expected: self.max_dim,
                found: dim,
                context: format!("generator `{name}` exceeds the declared dimension"),
            });
        }
        self.check_name(name)?;
        self.check_term(&src)?;
        self.check_term(&tgt)?;
        if dim >= 2 {
            for (which, a, b) in [
                ("sources", self.src(&src)?, self.src(&tgt)?),
                ("targets", self.tgt(&src)?, self.tgt(&tgt)?),
            ] {
                match self.decide_equal(&a, &b) {
                    Verdict::Proved => {}
                    Verdict::Refuted => {
                        return Err(Error::NotParallel {
                            name: name.to_string(),
                            detail: format!("{which} {a} and {b} differ"),
                        })
                    }
                    Verdict::Unknown => {
                        return Err(Error::NotParallel {
                            name: name.to_string(),
                            detail: format!("could not decide whether {which} {a} and {b} agree"),
                        })
                    }
                }
            }
        }
        let g = self.register(name, dim)?;
        self.attach.insert(g.clone(), Attachment { src, tgt });
        Ok(g)
    }

    /// Like [`add_cell`](Self::add_cell) with boundaries given as words.
    pub fn add_cell_words(&mut self, name: &str, src: &str, tgt: &str) -> Result<GeneratorId> {
        let s = self.parse(src)?;
        let t = self.parse(tgt)?;
        self.add_cell(name, s, t)
    }

    fn check_name(&self, name: &str) -> Result<()> {
        if !term::is_identifier(name) {
            return Err(Error::Invalid(format!(
                "`{name}` is not a valid generator name"
            )));
        }
        if self.names.contains_key(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        Ok(())
    }

    fn register(&mut self, name: &str, dim: usize) -> Result<GeneratorId> {
        self.check_name(name)?;
        let g = GeneratorId::new(name, dim);
        self.cells[dim].push(g.clone());
        self.names.insert(Arc::from(name), g.clone());
        Ok(g)
    }

    /// Generators of dimension at most `n`.
    pub fn skeleton(&self, n: usize) -> Polygraph {
        let n = n.min(self.max_dim);
        let mut cells = self.cells[..=n].to_vec();
        cells.resize(n + 1, Vec::new());
        let attach = self
            .attach
            .iter()
            .filter(|(g, _)| g.dim() <= n)
            .map(|(g, a)| (g.clone(), a.clone()))
            .collect();
        let names = self
            .names
            .iter()
            .filter(|(_, g)| g.dim() <= n)
            .map(|(k, g)| (k.clone(), g.clone()))
            .collect();
        Polygraph {
            max_dim: n,
            cells,
            attach,
            names,
        }
    }

    /// Parse a word and check that it denotes a cell of the free category.
    pub fn parse(&self, word: &str) -> Result<CellTerm> {
        let t = term::parse_with(word, &mut |name| self.generator(name).cloned())?;
        self.check_term(&t)?;
        Ok(t)
    }

    pub fn src(&self, t: &CellTerm) -> Result<CellTerm> {
        self.boundary(t, false)
    }

    pub fn tgt(&self, t: &CellTerm) -> Result<CellTerm> {
        self.boundary(t, true)
    }

    fn boundary(&self, t: &CellTerm, target: bool) -> Result<CellTerm> {
        match t {
            CellTerm::Gen(g) => {
                if g.dim() == 0 {
                    return Err(Error::ZeroDimensionalBoundary);
                }
                let a = self
                    .attach
                    .get(g)
                    .ok_or_else(|| Error::UnknownGenerator(g.name().to_string()))?;
                Ok(if target { a.tgt.clone() } else { a.src.clone() })
            }
            CellTerm::Id(inner) => Ok((**inner).clone()),
            CellTerm::Comp(k, u, v) => {
                let d = u.dim();
                if *k + 1 == d {
                    if target {
                        self.boundary(u, true)
                    } else {
                        self.boundary(v, false)
                    }
                } else {
                    Ok(CellTerm::comp_unchecked(
                        *k,
                        self.boundary(u, target)?,
                        self.boundary(v, target)?,
                    ))
                }
            }
        }
    }

    /// Iterated source of dimension `k`; `t` itself when `k = dim t`.
    pub fn src_k(&self, t: &CellTerm, k: usize) -> Result<CellTerm> {
        self.iterated(t, k, false)
    }

    pub fn tgt_k(&self, t: &CellTerm, k: usize) -> Result<CellTerm> {
        self.iterated(t, k, true)
    }

    fn iterated(&self, t: &CellTerm, k: usize, target: bool) -> Result<CellTerm> {
        let d = t.dim();
        if k > d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: k,
                context: "iterated boundary above the cell's dimension".into(),
            });
        }
        let mut cur = t.clone();
        for _ in k..d {
            cur = self.boundary(&cur, target)?;
        }
        Ok(cur)
    }

    /// Checks generator membership, dimensions and composability of every node.
    pub fn check_term(&self, t: &CellTerm) -> Result<()> {
        match t {
            CellTerm::Gen(g) => {
                if self.contains(g) {
                    Ok(())
                } else {
                    Err(Error::UnknownGenerator(g.name().to_string()))
                }
            }
            CellTerm::Id(inner) => self.check_term(inner),
            CellTerm::Comp(k, u, v) => {
                self.check_term(u)?;
                self.check_term(v)?;
                let (du, dv) = (u.dim(), v.dim());
                if du != dv {
                    return Err(Error::DimensionMismatch {
                        expected: du,
                        found: dv,
                        context: format!("operands of *{k}"),
                    });
                }
                if *k >= du {
                    return Err(Error::NotComposable {
                        k: *k,
                        detail: format!("operands have dimension {du}"),
                    });
                }
                self.check_composable(*k, u, v)
            }
        }
    }

    fn check_composable(&self, k: usize, u: &CellTerm, v: &CellTerm) -> Result<()> {
        let s = self.src_k(u, k)?;
        let t = self.tgt_k(v, k)?;
        match self.decide_equal(&s, &t) {
            Verdict::Proved => Ok(()),
            Verdict::Refuted => Err(Error::NotComposable {
                k,
                detail: format!("{k}-source {s} of {u} differs from {k}-target {t} of {v}"),
            }),
            Verdict::Unknown => Err(Error::CompositionUnknown {
                k,
                detail: format!("{k}-source {s} of {u} against {k}-target {t} of {v}"),
            }),
        }
    }

    /// Equality of two cells of the free category.
    ///
    /// Exact in dimensions 0 and 1; above that a budgeted search that may
    /// return [`Verdict::Unknown`].
    pub fn decide_equal(&self, a: &CellTerm, b: &CellTerm) -> Verdict {
        self.decide_equal_with(a, b, &Budget::internal())
    }

    /// [`Polygraph::decide_equal`] with an explicit search budget.
    pub fn decide_equal_with(&self, a: &CellTerm, b: &CellTerm, budget: &Budget) -> Verdict {
        if a.dim() != b.dim() {
            return Verdict::Refuted;
        }
        if a == b {
            return Verdict::Proved;
        }
        match a.dim() {
            0 => Verdict::Refuted,
            1 => match (self.path(a), self.path(b)) {
                (Ok(p), Ok(q)) => Verdict::from(p == q),
                _ => Verdict::Unknown,
            },
            _ => rewrite::decide(self, a, b, budget),
        }
    }

    /// Normal form of a 1-cell.
    pub fn path(&self, t: &CellTerm) -> Result<Path> {
        match t {
            CellTerm::Gen(g) if g.dim() == 1 => {
                let a = self
                    .attach
                    .get(g)
                    .ok_or_else(|| Error::UnknownGenerator(g.name().to_string()))?;
                match &a.src {
                    CellTerm::Gen(x) => Ok((x.clone(), vec![g.clone()])),
                    other => Err(Error::Invalid(format!(
                        "source {other} of `{g}` is not an object"
                    ))),
                }
            }
            CellTerm::Id(inner) => match &**inner {
                CellTerm::Gen(x) if x.dim() == 0 => Ok((x.clone(), Vec::new())),
                other => Err(Error::Invalid(format!("{other} is not an object"))),
            },
            CellTerm::Comp(0, u, v) => {
                let (src, mut first) = self.path(v)?;
                let (_, second) = self.path(u)?;
                first.extend(second);
                Ok((src, first))
            }
            other => Err(Error::DimensionMismatch {
                expected: 1,
                found: other.dim(),
                context: format!("{other} is not a 1-cell"),
            }),
        }
    }

    /// The term of a path: generators composed left-associatively.
    pub fn path_term(&self, path: &Path) -> CellTerm {
        let (src, gens) = path;
        let mut it = gens.iter().rev();
        match it.next() {
            None => CellTerm::id(CellTerm::gen(src.clone())),
            Some(last) => it.fold(CellTerm::gen(last.clone()), |acc, g| {
                CellTerm::comp_unchecked(0, acc, CellTerm::gen(g.clone()))
            }),
        }
    }

    /// `k`-composite of `u` and `v`, whiskering the lower-dimensional one
    /// with units first.
    pub fn compose(&self, k: usize, u: &CellTerm, v: &CellTerm) -> Result<CellTerm> {
        let d = u.dim().max(v.dim());
        if k >= d {
            return Err(Error::NotComposable {
                k,
                detail: format!("cells of dimension {} and {}", u.dim(), v.dim()),
            });
        }
        if u.dim() <= k || v.dim() <= k {
            return Err(Error::NotComposable {
                k,
                detail: format!("both cells must have dimension > {k}"),
            });
        }
        let pad = |t: &CellTerm| CellTerm::iterated_id(t.clone(), d - t.dim());
        let (u, v) = (pad(u), pad(v));
        self.check_term(&u)?;
        self.check_term(&v)?;
        self.check_composable(k, &u, &v)?;
        Ok(CellTerm::comp_unchecked(k, u, v))
    }

    /// Declared generators as text in the polygraph file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dim {}", self.max_dim);
        for g in self.all_generators() {
            match self.attach.get(g) {
                None => {
                    let _ = writeln!(out, "gen 0 {}", g.name());
                }
                Some(a) => {
                    let _ = writeln!(out, "gen {} {} : {} -> {}", g.dim(), g.name(), a.src, a.tgt);
                }
            }
        }
        out
    }
}

/// A strict functor between free categories given on generators.
#[derive(Clone, Debug)]
pub struct PolyFunctor {
    source: Arc<Polygraph>,
    target: Arc<Polygraph>,
    image: BTreeMap<GeneratorId, CellTerm>,
}

impl PolyFunctor {
    /// Checks that every source generator has a well-formed image of the same
    /// dimension; boundary preservation is left to [`validate`](Self::validate).
    pub fn new(
        source: Arc<Polygraph>,
        target: Arc<Polygraph>,
        image: BTreeMap<GeneratorId, CellTerm>,
    ) -> Result<Self> {
        for g in source.all_generators() {
            let t = image
                .get(g)
                .ok_or_else(|| Error::InvalidFunctor(format!("no image for `{g}`")))?;
            if t.dim() != g.dim() {
                return Err(Error::InvalidFunctor(format!(
                    "image of `{g}` has dimension {} instead of {}",
                    t.dim(),
                    g.dim()
                )));
            }
            target.check_term(t)?;
        }
        if let Some(extra) = image.keys().find(|g| !source.contains(g)) {
            return Err(Error::InvalidFunctor(format!(
                "`{extra}` is not a source generator"
            )));
        }
        Ok(PolyFunctor {
            source,
            target,
            image,
        })
    }

    pub fn identity(p: Arc<Polygraph>) -> Self {
        let image = p
            .all_generators()
            .map(|g| (g.clone(), CellTerm::gen(g.clone())))
            .collect();
        PolyFunctor {
            source: p.clone(),
            target: p,
            image,
        }
    }

    pub fn source(&self) -> &Polygraph {
        &self.source
    }

    pub fn target(&self) -> &Polygraph {
        &self.target
    }

    pub fn image(&self, g: &GeneratorId) -> Option<&CellTerm> {
        self.image.get(g)
    }

    /// Structural substitution of generator images.
    pub fn apply(&self, t: &CellTerm) -> Result<CellTerm> {
        t.map_generators(&mut |g| {
            self.image
                .get(g)
                .cloned()
                .ok_or_else(|| Error::UnknownGenerator(g.name().to_string()))
        })
    }

    /// True iff every generator is sent to a generator.
    pub fn is_rigid(&self) -> bool {
        self.image.values().all(|t| matches!(t, CellTerm::Gen(_)))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PolyFunctor) -> Result<PolyFunctor> {
        if *self.target != *other.source {
            return Err(Error::InvalidFunctor(
                "target and source do not match".into(),
            ));
        }
        let image = self
            .image
            .iter()
            .map(|(g, t)| Ok((g.clone(), other.apply(t)?)))
            .collect::<Result<_>>()?;
        Ok(PolyFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            image,
        })
    }

    /// Boundary preservation, generator by generator.
    pub fn validate(&self) -> Verdict {
        self.validate_with(&Budget::internal())
    }

    /// [`PolyFunctor::validate`] with an explicit search budget.
    pub fn validate_with(&self, budget: &Budget) -> Verdict {
        let mut verdict = Verdict::Proved;
        for g in self.source.all_generators().filter(|g| g.dim() > 0) {
            let Some(a) = self.source.attachment(g) else {
                return Verdict::Refuted;
            };
            let img = &self.image[g];
            let pairs = [
                (self.target.src(img), self.apply(&a.src)),
                (self.target.tgt(img), self.apply(&a.tgt)),
            ];
            for pair in pairs {
                let (Ok(x), Ok(y)) = pair else {
                    return Verdict::Refuted;
                };
                if self.target.check_term(&y).is_err() {
                    return Verdict::Refuted;
                }
                match self.target.decide_equal_with(&x, &y, budget) {
                    Verdict::Refuted => return Verdict::Refuted,
                    Verdict::Unknown => verdict = Verdict::Unknown,
                    Verdict::Proved => {}
                }
            }
        }
        verdict
    }
}
