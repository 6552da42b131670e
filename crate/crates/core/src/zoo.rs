//! Named example polygraphs, bubble detection and the table of expected
//! results for the small 2-categories of the zoo.

use std::collections::HashMap;
use std::fmt;

use crate::abelianize::ChainMap;
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologyGroup, IntMatrix};
use crate::nerve::Finite2Category;
use crate::polygraph::Polygraph;
use crate::rewrite::Verdict;
use crate::term::{CellTerm, GeneratorId};

fn obj(p: &Polygraph, name: &str) -> CellTerm {
    CellTerm::gen(p.generator(name).expect("declared above").clone())
}

/// A composite of 1-generators in diagrammatic order; empty means `1_start`.
fn path(p: &Polygraph, start: &str, gens: &[String]) -> CellTerm {
    let start = p.generator(start).expect("declared above").clone();
    let gens = gens
        .iter()
        .map(|g| p.generator(g).expect("declared above").clone())
        .collect();
    p.path_term(&(start, gens))
}

/// `D_n`: one `n`-generator `e{n}`, and `e{k}m`, `e{k}p` in each dimension
/// `k < n`.
pub fn globe(n: usize) -> Polygraph {
    let mut p = Polygraph::new(n).expect("dimension in range");
    add_sphere_cells(&mut p, n as isize - 1);
    if n == 0 {
        p.add_object("e0").expect("fresh name");
    } else {
        let (s, t) = (
            obj(&p, &format!("e{}m", n - 1)),
            obj(&p, &format!("e{}p", n - 1)),
        );
        p.add_cell(&format!("e{n}"), s, t)
            .expect("parallel boundaries");
    }
    p
}

fn add_sphere_cells(p: &mut Polygraph, n: isize) {
    for k in 0..=n {
        for sign in ["m", "p"] {
            let name = format!("e{k}{sign}");
            if k == 0 {
                p.add_object(&name).expect("fresh name");
            } else {
                let (s, t) = (
                    obj(p, &format!("e{}m", k - 1)),
                    obj(p, &format!("e{}p", k - 1)),
                );
                p.add_cell(&name, s, t).expect("parallel boundaries");
            }
        }
    }
}

/// `S_n`: two parallel generators in each dimension up to `n`; `S_{-1}` is
/// empty.
pub fn sphere(n: isize) -> Polygraph {
    if n < 0 {
        return Polygraph::empty();
    }
    let mut p = Polygraph::new(n as usize).expect("dimension in range");
    add_sphere_cells(&mut p, n);
    p
}

/// `B^n M` for the free monoid (`n = 1`) or free commutative monoid on
/// `generators`: one object `o` and the generators in dimension `n`.
pub fn suspension_monoid(n: usize, generators: &[&str], commutative: bool) -> Result<Polygraph> {
    if n == 0 {
        return Err(Error::Invalid("suspensions start in dimension 1".into()));
    }
    if n > 1 && !commutative {
        return Err(Error::Invalid(format!(
            "B^{n} of a monoid is a category only for commutative monoids"
        )));
    }
    if n == 1 && commutative && generators.len() > 1 {
        return Err(Error::Invalid(
            "a free commutative monoid on several generators is not free as a monoid".into(),
        ));
    }
    let mut p = Polygraph::new(n)?;
    let o = CellTerm::gen(p.add_object("o")?);
    let unit = CellTerm::iterated_id(o, n - 1);
    for g in generators {
        p.add_cell(g, unit.clone(), unit.clone())?;
    }
    Ok(p)
}

/// `A_(m,n)`: objects `A0..Am`, `B1..B(n-1)`; `f_i` chain the `A`s, `g_j`
/// chain `A0, B1, ..., B(n-1), Am`; `alpha: f_m ∘ ... ∘ f_1 => g_n ∘ ... ∘ g_1`.
/// When `n = 0` the endpoints `A0` and `Am` coincide.
pub fn a_family(m: usize, n: usize) -> Polygraph {
    let mut p = Polygraph::new(2).expect("dimension in range");
    let a = |i: usize| {
        if n == 0 && i == m {
            "A0".to_string()
        } else {
            format!("A{i}")
        }
    };
    let b = |j: usize| {
        if j == 0 {
            "A0".to_string()
        } else if j == n {
            a(m)
        } else {
            format!("B{j}")
        }
    };
    for i in 0..=m {
        if i == 0 || a(i) != "A0" {
            p.add_object(&a(i)).expect("fresh name");
        }
    }
    for j in 1..n {
        p.add_object(&b(j)).expect("fresh name");
    }
    for i in 0..m {
        let (s, t) = (obj(&p, &a(i)), obj(&p, &a(i + 1)));
        p.add_cell(&format!("f{}", i + 1), s, t).expect("objects");
    }
    for j in 0..n {
        let (s, t) = (obj(&p, &b(j)), obj(&p, &b(j + 1)));
        p.add_cell(&format!("g{}", j + 1), s, t).expect("objects");
    }
    let fs: Vec<String> = (1..=m).map(|i| format!("f{i}")).collect();
    let gs: Vec<String> = (1..=n).map(|j| format!("g{j}")).collect();
    let (s, t) = (path(&p, "A0", &fs), path(&p, "A0", &gs));
    p.add_cell("alpha", s, t).expect("parallel boundaries");
    p
}

/// One object `A`, the given loops on it, and 2-generators `(name, src, tgt)`
/// between composites of loops (empty composite is `1_A`).
fn one_object(loops: &[&str], cells: &[(&str, &[&str], &[&str])]) -> Polygraph {
    let mut p = Polygraph::new(2).expect("dimension in range");
    let a = CellTerm::gen(p.add_object("A").expect("fresh name"));
    for l in loops {
        p.add_cell(l, a.clone(), a.clone()).expect("loop");
    }
    add_cells(&mut p, "A", cells);
    p
}

fn two_objects(arrows: &[&str], cells: &[(&str, &[&str], &[&str])]) -> Polygraph {
    let mut p = Polygraph::new(2).expect("dimension in range");
    let a = CellTerm::gen(p.add_object("A").expect("fresh name"));
    let b = CellTerm::gen(p.add_object("B").expect("fresh name"));
    for f in arrows {
        p.add_cell(f, a.clone(), b.clone()).expect("arrow");
    }
    add_cells(&mut p, "A", cells);
    p
}

fn add_cells(p: &mut Polygraph, start: &str, cells: &[(&str, &[&str], &[&str])]) {
    for (name, s, t) in cells {
        let s: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        let t: Vec<String> = t.iter().map(|x| x.to_string()).collect();
        let (s, t) = (path(p, start, &s), path(p, start, &t));
        p.add_cell(name, s, t).expect("parallel boundaries");
    }
}

/// Whether an example is known to have matching singular and polygraphic
/// homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Good {
    Yes,
    No,
    Conjectural,
}

impl fmt::Display for Good {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Good::Yes => "yes",
            Good::No => "no",
            Good::Conjectural => "conjectural",
        })
    }
}

/// A named example with its expected invariants.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn() -> Polygraph,
    /// Polygraphic homology in degrees `0..=2`.
    pub expected_pol_homology: Vec<HomologyGroup>,
    pub homotopy_type: &'static str,
    pub good: Good,
    pub bubble_free: bool,
    /// Part of the six-entry classification table.
    pub in_table: bool,
}

fn z() -> HomologyGroup {
    HomologyGroup::free(1)
}

fn zero() -> HomologyGroup {
    HomologyGroup::zero()
}

/// The zoo: the six table entries first, then bouquets, the lemniscate and
/// the torus.
///
/// Homotopy types and goodness are recorded values; polygraphic homology is
/// the value of the weight formula and is recomputed by the tests.
pub fn zoo_2cats() -> Vec<ZooEntry> {
    vec![
        ZooEntry {
            name: "s2",
            description: "A, B; f, g: A -> B; alpha, beta: f => g",
            build: || {
                two_objects(
                    &["f", "g"],
                    &[("alpha", &["f"], &["g"]), ("beta", &["f"], &["g"])],
                )
            },
            expected_pol_homology: vec![z(), zero(), z()],
            homotopy_type: "S2",
            good: Good::Yes,
            bubble_free: true,
            in_table: true,
        },
        ZooEntry {
            name: "s2_opposed",
            description: "A, B; f, g: A -> B; alpha: f => g, beta: g => f",
            build: || {
                two_objects(
                    &["f", "g"],
                    &[("alpha", &["f"], &["g"]), ("beta", &["g"], &["f"])],
                )
            },
            expected_pol_homology: vec![z(), zero(), z()],
            homotopy_type: "S2",
            good: Good::Yes,
            bubble_free: true,
            in_table: true,
        },
        ZooEntry {
            name: "s2_endo",
            description: "A, B; h: A -> B; gamma: h => h",
            build: || two_objects(&["h"], &[("gamma", &["h"], &["h"])]),
            expected_pol_homology: vec![z(), zero(), z()],
            homotopy_type: "S2",
            good: Good::Yes,
            bubble_free: true,
            in_table: true,
        },
        ZooEntry {
            name: "s2_loop",
            description: "A; l: A -> A; lambda, mu: l => 1_A",
            build: || one_object(&["l"], &[("lambda", &["l"], &[]), ("mu", &["l"], &[])]),
            expected_pol_homology: vec![z(), zero(), z()],
            homotopy_type: "S2",
            good: Good::Yes,
            bubble_free: true,
            in_table: true,
        },
        ZooEntry {
            name: "kz2_loop",
            description: "A; f: A -> A; alpha: f => 1_A, beta: 1_A => f",
            build: || one_object(&["f"], &[("alpha", &["f"], &[]), ("beta", &[], &["f"])]),
            expected_pol_homology: vec![z(), zero(), z()],
            homotopy_type: "K(Z,2)",
            good: Good::No,
            bubble_free: false,
            in_table: true,
        },
        ZooEntry {
            name: "b2n",
            description: "A; alpha: 1_A => 1_A",
            build: || one_object(&[], &[("alpha", &[], &[])]),
            expected_pol_homology: vec![z(), zero(), z()],
            homotopy_type: "K(Z,2)",
            good: Good::No,
            bubble_free: false,
            in_table: true,
        },
        ZooEntry {
            name: "bouquet_s1_s2",
            description: "A; f, g: A -> A; alpha, beta: f => g",
            build: || {
                one_object(
                    &["f", "g"],
                    &[("alpha", &["f"], &["g"]), ("beta", &["f"], &["g"])],
                )
            },
            expected_pol_homology: vec![z(), z(), z()],
            homotopy_type: "S1 v S2",
            good: Good::Yes,
            bubble_free: true,
            in_table: false,
        },
        ZooEntry {
            name: "bouquet_s2_s2",
            description: "A, B; f, g: A -> B; alpha, beta, gamma: f => g",
            build: || {
                two_objects(
                    &["f", "g"],
                    &[
                        ("alpha", &["f"], &["g"]),
                        ("beta", &["f"], &["g"]),
                        ("gamma", &["f"], &["g"]),
                    ],
                )
            },
            expected_pol_homology: vec![z(), zero(), HomologyGroup::free(2)],
            homotopy_type: "S2 v S2",
            good: Good::Yes,
            bubble_free: true,
            in_table: false,
        },
        ZooEntry {
            name: "lemniscate",
            description: "A; f, g: A -> A; alpha: f => 1_A, beta: g => 1_A",
            build: || {
                one_object(
                    &["f", "g"],
                    &[("alpha", &["f"], &[]), ("beta", &["g"], &[])],
                )
            },
            expected_pol_homology: vec![z(), zero(), zero()],
            homotopy_type: "point",
            good: Good::Yes,
            bubble_free: true,
            in_table: false,
        },
        ZooEntry {
            name: "torus",
            description: "A; f, g: A -> A; alpha: g o f => f o g",
            build: || one_object(&["f", "g"], &[("alpha", &["f", "g"], &["g", "f"])]),
            expected_pol_homology: vec![z(), HomologyGroup::free(2), z()],
            homotopy_type: "T2",
            good: Good::Yes,
            bubble_free: true,
            in_table: false,
        },
    ]
}

pub fn zoo_entry(name: &str) -> Option<ZooEntry> {
    zoo_2cats().into_iter().find(|e| e.name == name)
}

/// Builders addressable by name: zoo entries, `dN` (globe), `sN` (sphere),
/// `a_M_N`.
pub fn build_named(name: &str) -> Option<Polygraph> {
    if let Some(e) = zoo_entry(name) {
        return Some((e.build)());
    }
    let num = |s: &str| s.parse::<usize>().ok();
    if let Some(n) = name.strip_prefix('d').and_then(num) {
        return (n <= 12).then(|| globe(n));
    }
    if let Some(n) = name.strip_prefix('s').and_then(num) {
        return (n <= 12).then(|| sphere(n as isize));
    }
    if let Some(rest) = name.strip_prefix("a_") {
        let (m, n) = rest.split_once('_')?;
        return Some(a_family(num(m)?, num(n)?));
    }
    None
}

/// `λ(F)` for the functor from the torus polygraph to `B¹(ℕ×ℕ)` sending
/// `f` to `(1,0)` and `g` to `(0,1)`, together with the low-degree complex
/// of `B¹(ℕ×ℕ)` on its generators `(1,0)`, `(0,1)`.
pub fn torus_chain_map() -> (ChainMap, ChainComplex) {
    let target = ChainComplex::new(
        vec![1, 2, 0],
        vec![IntMatrix::zero(1, 2), IntMatrix::zero(2, 0)],
    )
    .expect("zero boundaries");
    let map = ChainMap {
        matrices: vec![
            IntMatrix::identity(1),
            IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]),
            IntMatrix::zero(0, 1),
        ],
    };
    (map, target)
}

/// Outcome of a bubble search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BubbleReport {
    pub verdict: Verdict,
    /// A bubble when the verdict is `Refuted`.
    pub witness: Option<String>,
    pub reason: String,
}

impl BubbleReport {
    fn new(verdict: Verdict, witness: Option<String>, reason: impl Into<String>) -> Self {
        BubbleReport {
            verdict,
            witness,
            reason: reason.into(),
        }
    }
}

/// Exact scan: a bubble is a non-unit 2-cell from `1_x` to `1_x`.
pub fn bubble_free_finite(c: &Finite2Category) -> BubbleReport {
    let b = c.base();
    for x in 0..c.num_cells() {
        let s = c.cell_src(x);
        if !c.is_unit2(x) && b.is_identity(s) && c.cell_tgt(x) == s {
            return BubbleReport::new(
                Verdict::Refuted,
                Some(c.cell_name(x).to_string()),
                "non-unit 2-cell between identities",
            );
        }
    }
    BubbleReport::new(
        Verdict::Proved,
        None,
        "no 2-cell between identities other than units",
    )
}

/// Bubbles of a free 2-category presented by `p`.
///
/// Every 2-cell is a vertical composite of whiskered generators, so a bubble
/// on `A` is a rewriting sequence from the empty path on `A` back to itself.
/// `Proved` comes from two sound criteria: no generator with unit source (or
/// none with unit target), or every generator strictly shortening (or every
/// one strictly lengthening) paths. Otherwise rewriting sequences through
/// paths of length at most `bound` are searched, visiting at most `nodes`
/// paths per object; a return to the empty path is a bubble.
pub fn bubble_free(p: &Polygraph, bound: usize, nodes: usize) -> Result<BubbleReport> {
    if p.max_dim() < 2 || p.rank(2) == 0 {
        return Ok(BubbleReport::new(Verdict::Proved, None, "no 2-generators"));
    }
    if (3..=p.max_dim()).any(|d| p.rank(d) > 0) {
        return Err(Error::Invalid(
            "bubble detection needs a polygraph of dimension 2".into(),
        ));
    }
    let ones = p.generators(1);
    let one_index: HashMap<&GeneratorId, usize> =
        ones.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let objs = p.generators(0);
    let obj_index: HashMap<&GeneratorId, usize> =
        objs.iter().enumerate().map(|(i, g)| (g, i)).collect();
    struct Rule {
        gen: GeneratorId,
        at: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
    }
    let mut rules = Vec::new();
    for g in p.generators(2) {
        let a = p.attachment(g).expect("attached");
        let (s0, s) = p.path(&a.src)?;
        let (_, t) = p.path(&a.tgt)?;
        rules.push(Rule {
            gen: g.clone(),
            at: obj_index[&s0],
            src: s.iter().map(|x| one_index[x]).collect(),
            tgt: t.iter().map(|x| one_index[x]).collect(),
        });
    }
    if rules.iter().all(|r| !r.src.is_empty()) {
        return Ok(BubbleReport::new(
            Verdict::Proved,
            None,
            "no 2-generator has a unit source",
        ));
    }
    if rules.iter().all(|r| !r.tgt.is_empty()) {
        return Ok(BubbleReport::new(
            Verdict::Proved,
            None,
            "no 2-generator has a unit target",
        ));
    }
    if rules.iter().all(|r| r.src.len() > r.tgt.len())
        || rules.iter().all(|r| r.src.len() < r.tgt.len())
    {
        return Ok(BubbleReport::new(
            Verdict::Proved,
            None,
            "every 2-generator changes path length in the same direction",
        ));
    }
    let ends: Vec<(usize, usize)> = ones
        .iter()
        .map(|g| {
            let a = p.attachment(g).expect("attached");
            let end = |t: &CellTerm| match t {
                CellTerm::Gen(x) => obj_index[x],
                _ => unreachable!("1-generators join objects"),
            };
            (end(&a.src), end(&a.tgt))
        })
        .collect();
    let mut exhausted = true;
    for start in 0..objs.len() {
        let vertex = |path: &[usize], i: usize| if i == 0 { start } else { ends[path[i - 1]].1 };
        let mut states: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(Vec::new(), 0)]);
        // (previous state, rule, position)
        let mut parent: Vec<Option<(usize, usize, usize)>> = vec![None];
        let mut head = 0;
        while head < states.len() {
            let cur = states[head].clone();
            for (ri, r) in rules.iter().enumerate() {
                for i in 0..=cur.len() {
                    if i + r.src.len() > cur.len()
                        || cur[i..i + r.src.len()] != r.src[..]
                        || vertex(&cur, i) != r.at
                    {
                        continue;
                    }
                    let mut next = cur[..i].to_vec();
                    next.extend(&r.tgt);
                    next.extend(&cur[i + r.src.len()..]);
                    if next.is_empty() {
                        let mut steps = vec![(head, ri, i)];
                        let mut s = head;
                        while let Some((prev, rj, j)) = parent[s] {
                            steps.push((prev, rj, j));
                            s = prev;
                        }
                        steps.reverse();
                        let w = witness(
                            p,
                            &states,
                            &rules
                                .iter()
                                .map(|r| (r.gen.clone(), r.src.len()))
                                .collect::<Vec<_>>(),
                            &objs[start],
                            &steps,
                        )?;
                        return Ok(BubbleReport::new(
                            Verdict::Refuted,
                            Some(w.to_word()),
                            format!("bubble on {}", objs[start]),
                        ));
                    }
                    if next.len() > bound || index.contains_key(&next) {
                        if next.len() > bound {
                            exhausted = false;
                        }
                        continue;
                    }
                    if states.len() >= nodes {
                        exhausted = false;
                        continue;
                    }
                    index.insert(next.clone(), states.len());
                    states.push(next);
                    parent.push(Some((head, ri, i)));
                }
            }
            head += 1;
        }
    }
    if exhausted {
        // every reachable path from every empty path was visited
        return Ok(BubbleReport::new(
            Verdict::Proved,
            None,
            "rewriting from empty paths never returns to them",
        ));
    }
    Ok(BubbleReport::new(
        Verdict::Unknown,
        None,
        format!("no bubble through paths of length <= {bound} within {nodes} nodes"),
    ))
}

fn witness(
    p: &Polygraph,
    states: &[Vec<usize>],
    rules: &[(GeneratorId, usize)],
    start: &GeneratorId,
    steps: &[(usize, usize, usize)],
) -> Result<CellTerm> {
    let ones = p.generators(1);
    let term_of = |from: &GeneratorId, gens: &[usize]| -> Option<CellTerm> {
        if gens.is_empty() {
            return None;
        }
        Some(p.path_term(&(
            from.clone(),
            gens.iter().map(|&i| ones[i].clone()).collect(),
        )))
    };
    let obj_at = |path: &[usize], i: usize| -> GeneratorId {
        if i == 0 {
            start.clone()
        } else {
            match &p.attachment(&ones[path[i - 1]]).expect("attached").tgt {
                CellTerm::Gen(x) => x.clone(),
                _ => unreachable!("1-generators join objects"),
            }
        }
    };
    let mut total: Option<CellTerm> = None;
    for &(state, rule, pos) in steps {
        let cur = &states[state];
        let (g, len) = &rules[rule];
        let mut w = CellTerm::gen(g.clone());
        if let Some(prefix) = term_of(start, &cur[..pos]) {
            w = p.compose(0, &w, &prefix)?;
        }
        let after = pos + len;
        if let Some(suffix) = term_of(&obj_at(cur, after), &cur[after..]) {
            w = p.compose(0, &suffix, &w)?;
        }
        total = Some(match total {
            None => w,
            Some(t) => p.compose(1, &w, &t)?,
        });
    }
    Ok(total.expect("at least one step"))
}
