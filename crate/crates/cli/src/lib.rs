//! Command-line front end.
//!
//! Inputs are files (`.poly`, `.cat`, `.2cat`, `.fun`, `.chain`) or builtins:
//! `zoo:NAME` for polygraphs from the zoo and its builders (`zoo:d3`,
//! `zoo:s4`, `zoo:a_1_2`), and `fin:NAME` for small finite categories and
//! functors. Exit codes: 0 success, 1 a refutation or counterexample, 2 bad
//! input.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use omegacat::conduche::{check_conduche, slice, FiniteFunctor};
use omegacat::formats::{parse_2category, parse_category, parse_functor_spec, parse_polygraph, write_category};
use omegacat::homology::format_homology;
use omegacat::nerve::{binerve_cells, binerve_level, binerve_level_vertical, realize_free_category, singular_homology};
use omegacat::rewrite::{canonical_form_traced, check_basis, check_basis_2cat, elementary_moves, equivalent};
use omegacat::term::format_position;
use omegacat::zoo::{build_named, bubble_free, bubble_free_finite, zoo_2cats, zoo_entry};
use omegacat::{
    abelianize, Budget, ChainComplex, ElementaryMove, Finite2Category, FiniteCategory, HomologyGroup, PolyFunctor,
    Polygraph, Verdict,
};

#[derive(Parser, Debug)]
#[command(name = "omegacat", version, about = "Polygraphs, their homology and finite 2-categories")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Maximum number of explored terms.
    #[arg(long, default_value_t = Budget::default().nodes)]
    budget_nodes: usize,
    /// Allowed growth of term size over the inputs.
    #[arg(long, default_value_t = Budget::default().extra_size)]
    budget_size: usize,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget {
            nodes: self.budget_nodes,
            extra_size: self.budget_size,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a builtin polygraph in the `.poly` format.
    Build { name: String },
    /// Load an input and check it.
    Validate {
        input: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print the abelianized chain complex.
    Abelianize { input: String },
    /// Polygraphic homology.
    HomologyPol {
        input: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Singular homology of the nerve.
    HomologySing {
        input: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Operations on words.
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Check that named cells form a basis.
    CheckBasis {
        input: String,
        /// Comma-separated 1-cells.
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<String>,
        /// Comma-separated 2-cells.
        #[arg(long, value_delimiter = ',')]
        sigma2: Vec<String>,
        /// Length bound for 2-cell factorizations.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Check the lifting conditions of a finite functor.
    CheckConduche { input: String },
    /// The slice over an object and its projection.
    Slice { input: String, object: String },
    /// Cells of the bisimplicial nerve at level (n, m).
    Binerve {
        input: String,
        n: usize,
        m: usize,
        /// List the cells.
        #[arg(long)]
        cells: bool,
    },
    /// Look for bubbles.
    BubbleFree {
        input: String,
        /// Maximal path length during the search.
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Maximum number of visited paths per object.
        #[arg(long, default_value_t = Budget::default().nodes)]
        budget_nodes: usize,
    },
    /// The zoo of examples.
    Zoo {
        #[command(subcommand)]
        op: ZooOp,
    },
}

#[derive(Subcommand, Debug)]
enum WordOp {
    /// Dimension and boundaries.
    Parse { input: String, word: String },
    /// Normalized spelling.
    Print { input: String, word: String },
    /// Decide equality of two words.
    Eq {
        input: String,
        left: String,
        right: String,
        /// Print the rewriting path.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Applicable elementary moves.
    Moves { input: String, word: String },
    /// Canonical form and the moves reaching it.
    Normalize { input: String, word: String },
}

#[derive(Subcommand, Debug)]
enum ZooOp {
    List,
    Build { name: String },
}

enum Input {
    Poly(Polygraph),
    Cat(FiniteCategory),
    TwoCat(Finite2Category),
    PolyFunctor(PolyFunctor),
    FinFunctor(FiniteFunctor),
    Chain(ChainComplex),
}

impl Input {
    fn kind(&self) -> &'static str {
        match self {
            Input::Poly(_) => "polygraph",
            Input::Cat(_) => "category",
            Input::TwoCat(_) => "2-category",
            Input::PolyFunctor(_) => "polygraph functor",
            Input::FinFunctor(_) => "finite functor",
            Input::Chain(_) => "chain complex",
        }
    }
}

fn builtin_finite(name: &str) -> Option<Input> {
    Some(match name {
        "delta0" => Input::Cat(FiniteCategory::simplex(0)),
        "delta1" => Input::Cat(FiniteCategory::simplex(1)),
        "delta2" => Input::Cat(FiniteCategory::simplex(2)),
        "delta3" => Input::Cat(FiniteCategory::simplex(3)),
        "bz2" => Input::Cat(FiniteCategory::cyclic_group(2)),
        "b2z2" => Input::TwoCat(Finite2Category::double_suspension_cyclic(2)),
        "b2z3" => Input::TwoCat(Finite2Category::double_suspension_cyclic(3)),
        "collapse" => {
            let f = FiniteFunctor::between_categories(
                &FiniteCategory::simplex(1),
                &FiniteCategory::simplex(0),
                vec![0, 0],
                vec![0, 0, 0],
            )
            .expect("constant functor");
            Input::FinFunctor(f)
        }
        _ => return None,
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(spec: &str) -> Result<Input> {
    load_from(spec, Path::new("."))
}

fn load_from(spec: &str, base: &Path) -> Result<Input> {
    if let Some(name) = spec.strip_prefix("zoo:") {
        return build_named(name).map(Input::Poly).ok_or_else(|| anyhow!("unknown builtin polygraph `{name}`"));
    }
    if let Some(name) = spec.strip_prefix("fin:") {
        return builtin_finite(name).ok_or_else(|| anyhow!("unknown builtin `{name}`"));
    }
    let path: PathBuf = if Path::new(spec).is_absolute() || base == Path::new(".") {
        PathBuf::from(spec)
    } else {
        base.join(spec)
    };
    let text = read(&path)?;
    let at = |e: omegacat::Error| match e {
        omegacat::Error::File { .. } => anyhow!("{}:{e}", path.display()),
        _ => anyhow!("{}: {e}", path.display()),
    };
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    Ok(match ext {
        "poly" => Input::Poly(parse_polygraph(&text).map_err(at)?),
        "cat" => Input::Cat(parse_category(&text).map_err(at)?),
        "2cat" => Input::TwoCat(parse_2category(&text).map_err(at)?),
        "chain" => Input::Chain(ChainComplex::from_text(&text).map_err(at)?),
        "fun" => {
            let spec = parse_functor_spec(&text).map_err(at)?;
            let dir = path.parent().unwrap_or(Path::new("."));
            let (src, tgt) = (load_from(&spec.source, dir)?, load_from(&spec.target, dir)?);
            match (src, tgt) {
                (Input::Poly(s), Input::Poly(t)) => {
                    Input::PolyFunctor(spec.build_poly(Arc::new(s), Arc::new(t)).map_err(at)?)
                }
                (s, t) => {
                    let (s, t) = (as_2cat(s)?, as_2cat(t)?);
                    Input::FinFunctor(spec.build_finite(&s, &t).map_err(at)?)
                }
            }
        }
        _ => bail!("{}: unknown file type (expected .poly, .cat, .2cat, .fun or .chain)", path.display()),
    })
}

fn as_2cat(i: Input) -> Result<Finite2Category> {
    match i {
        Input::Cat(c) => Ok(Finite2Category::locally_discrete(c)),
        Input::TwoCat(c) => Ok(c),
        other => bail!("expected a finite category, found a {}", other.kind()),
    }
}

fn polygraph(spec: &str) -> Result<Polygraph> {
    match load(spec)? {
        Input::Poly(p) => Ok(p),
        other => bail!("expected a polygraph, found a {}", other.kind()),
    }
}

fn two_category(spec: &str) -> Result<Finite2Category> {
    as_2cat(load(spec)?)
}

/// Text and JSON renderings of the same result.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Report {
            code: 0,
            text: text.into(),
            json,
        }
    }

    fn verdict(v: Verdict, text: impl Into<String>, json: Value) -> Self {
        Report {
            code: if v == Verdict::Refuted { 1 } else { 0 },
            text: text.into(),
            json,
        }
    }
}

fn group_json(h: &HomologyGroup) -> Value {
    json!({
        "rank": h.betti,
        "torsion": h.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "text": h.to_string(),
    })
}

fn homology_report(groups: &[HomologyGroup]) -> Report {
    Report::ok(format_homology(groups), json!({ "homology": groups.iter().map(group_json).collect::<Vec<_>>() }))
}

fn move_json(m: &ElementaryMove) -> Value {
    json!({
        "kind": m.kind.to_string(),
        "path": format_position(&m.position),
        "direction": m.direction.to_string(),
        "level": m.level,
        "unit": m.unit.as_ref().map(ToString::to_string),
    })
}

fn plural(n: usize, word: &str) -> String {
    format!("{n} {word}{}", if n == 1 { "" } else { "s" })
}

fn lookup(names: impl Fn(&str) -> Option<usize>, wanted: &[String], what: &str) -> Result<Vec<usize>> {
    wanted.iter().map(|n| names(n).ok_or_else(|| anyhow!("unknown {what} `{n}`"))).collect()
}

fn cmd_validate(input: &str, budget: Budget) -> Result<Report> {
    Ok(match load(input)? {
        Input::Poly(p) => {
            let ranks: Vec<usize> = (0..=p.max_dim()).map(|d| p.rank(d)).collect();
            Report::ok(
                format!("valid polygraph of dimension {}, ranks {ranks:?}", p.max_dim()),
                json!({ "kind": "polygraph", "dimension": p.max_dim(), "ranks": ranks }),
            )
        }
        Input::Cat(c) => Report::ok(
            format!("valid category: {} objects, {} arrows", c.num_objects(), c.num_arrows()),
            json!({ "kind": "category", "objects": c.num_objects(), "arrows": c.num_arrows() }),
        ),
        Input::TwoCat(c) => Report::ok(
            format!(
                "valid 2-category: {} objects, {} arrows, {} 2-cells",
                c.base().num_objects(),
                c.base().num_arrows(),
                c.num_cells()
            ),
            json!({
                "kind": "2-category",
                "objects": c.base().num_objects(),
                "arrows": c.base().num_arrows(),
                "cells": c.num_cells(),
            }),
        ),
        Input::PolyFunctor(f) => {
            let v = f.validate_with(&budget);
            Report::verdict(
                v,
                format!("{v} (functor of polygraphs{})", if f.is_rigid() { ", rigid" } else { "" }),
                json!({ "kind": "polygraph functor", "verdict": v.to_string(), "rigid": f.is_rigid() }),
            )
        }
        Input::FinFunctor(_) => Report::ok("valid functor", json!({ "kind": "finite functor" })),
        Input::Chain(c) => Report::ok(
            format!("valid chain complex, ranks {:?}", c.ranks()),
            json!({ "kind": "chain complex", "ranks": c.ranks() }),
        ),
    })
}

fn cmd_homology_pol(input: &str, max_degree: Option<usize>) -> Result<Report> {
    let c = match load(input)? {
        Input::Poly(p) => abelianize(&p),
        Input::Chain(c) => c,
        other => bail!("polygraphic homology needs a polygraph or chain complex, found a {}", other.kind()),
    };
    let c = match max_degree {
        Some(k) if k > c.max_deg() => c.padded(k),
        _ => c,
    };
    let top = max_degree.unwrap_or(c.max_deg());
    let groups: Vec<HomologyGroup> = (0..=top).map(|k| c.homology(k)).collect::<omegacat::Result<_>>()?;
    Ok(homology_report(&groups))
}

fn cmd_homology_sing(input: &str, max_degree: usize) -> Result<Report> {
    let groups: Vec<HomologyGroup> = match load(input)? {
        Input::Cat(c) => (0..=max_degree).map(|k| singular_homology(&c, k)).collect(),
        Input::TwoCat(c) => (0..=max_degree).map(|k| singular_homology(&c, k)).collect(),
        Input::Poly(p) => {
            let c = realize_free_category(&p)?;
            (0..=max_degree).map(|k| singular_homology(&c, k)).collect()
        }
        other => bail!("singular homology needs a finite category, found a {}", other.kind()),
    };
    Ok(homology_report(&groups))
}

fn cmd_word(op: WordOp) -> Result<Report> {
    match op {
        WordOp::Parse { input, word } => {
            let p = polygraph(&input)?;
            let t = p.parse(&word)?;
            let mut text = format!("dimension {}", t.dim());
            let mut j = json!({ "word": t.to_word(), "dimension": t.dim() });
            if t.dim() > 0 {
                let (s, g) = (p.src(&t)?, p.tgt(&t)?);
                text.push_str(&format!("\nsource {s}\ntarget {g}"));
                j["source"] = json!(s.to_word());
                j["target"] = json!(g.to_word());
            }
            Ok(Report::ok(text, j))
        }
        WordOp::Print { input, word } => {
            let t = polygraph(&input)?.parse(&word)?;
            Ok(Report::ok(t.to_word(), json!({ "word": t.to_word() })))
        }
        WordOp::Eq {
            input,
            left,
            right,
            trace,
            budget,
        } => {
            let p = polygraph(&input)?;
            let (u, v) = (p.parse(&left)?, p.parse(&right)?);
            let e = equivalent(&p, &u, &v, &budget.budget())?;
            let mut text = match e.verdict {
                Verdict::Proved => format!("PROVED ({})", plural(e.path.len(), "move")),
                Verdict::Refuted => format!("REFUTED ({})", e.reason),
                Verdict::Unknown => format!("UNKNOWN ({}, {} explored)", e.reason, e.explored),
            };
            if trace {
                for m in &e.path {
                    text.push_str(&format!("\n{m}"));
                }
            }
            let j = json!({
                "verdict": e.verdict.to_string(),
                "moves": e.path.iter().map(move_json).collect::<Vec<_>>(),
                "explored": e.explored,
                "reason": e.reason,
            });
            Ok(Report::verdict(e.verdict, text, j))
        }
        WordOp::Moves { input, word } => {
            let p = polygraph(&input)?;
            let t = p.parse(&word)?;
            let moves = elementary_moves(&p, &t);
            let text = moves.iter().map(|(m, r)| format!("{m} => {r}")).collect::<Vec<_>>().join("\n");
            let j: Vec<Value> = moves
                .iter()
                .map(|(m, r)| {
                    let mut v = move_json(m);
                    v["result"] = json!(r.to_word());
                    v
                })
                .collect();
            Ok(Report::ok(text, json!({ "moves": j })))
        }
        WordOp::Normalize { input, word } => {
            let p = polygraph(&input)?;
            let t = p.parse(&word)?;
            let (c, path) = canonical_form_traced(&p, &t);
            let text = format!("{c} ({})", plural(path.len(), "move"));
            Ok(Report::ok(
                text,
                json!({ "normal_form": c.to_word(), "moves": path.iter().map(move_json).collect::<Vec<_>>() }),
            ))
        }
    }
}

fn cmd_check_basis(input: &str, sigma: &[String], sigma2: &[String], bound: usize) -> Result<Report> {
    let c = two_category(input)?;
    let s1 = lookup(|n| c.base().arrow_index(n), sigma, "arrow")?;
    let s2 = lookup(|n| c.cell_index(n), sigma2, "2-cell")?;
    let r = if c.is_locally_discrete() && s2.is_empty() {
        check_basis(c.base(), &s1)
    } else {
        check_basis_2cat(&c, &s1, &s2, bound)
    };
    Ok(Report::verdict(
        r.verdict,
        format!("{}: {}", r.verdict, r.detail),
        json!({ "verdict": r.verdict.to_string(), "detail": r.detail }),
    ))
}

fn cmd_check_conduche(input: &str) -> Result<Report> {
    let f = match load(input)? {
        Input::FinFunctor(f) => f,
        other => bail!("expected a finite functor, found a {}", other.kind()),
    };
    let r = check_conduche(&f);
    let v = Verdict::from(r.holds);
    let text = match &r.witness {
        Some(w) => format!("{v}\n{w}"),
        None => v.to_string(),
    };
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "kind": format!("{:?}", w.kind),
            "cell": w.cell,
            "image": w.image,
            "factors": w.factors,
            "lifts": w.lifts,
        })
    });
    Ok(Report::verdict(v, text, json!({ "verdict": v.to_string(), "witness": witness })))
}

fn cmd_slice(input: &str, object: &str) -> Result<Report> {
    let c = match load(input)? {
        Input::Cat(c) => c,
        Input::TwoCat(c) if c.is_locally_discrete() => c.base().clone(),
        other => bail!("slices are taken in finite 1-categories, found a {}", other.kind()),
    };
    let a = c.object_index(object).ok_or_else(|| anyhow!("unknown object `{object}`"))?;
    let (s, pi) = slice(&c, a)?;
    let conduche = Verdict::from(check_conduche(&pi).holds);
    let cat = write_category(&s);
    Ok(Report::verdict(
        conduche,
        format!("{cat}# projection Conduché: {conduche}"),
        json!({
            "objects": s.num_objects(),
            "arrows": s.num_arrows(),
            "category": cat,
            "projection_conduche": conduche.to_string(),
        }),
    ))
}

fn cmd_binerve(input: &str, n: usize, m: usize, cells: bool) -> Result<Report> {
    let c = two_category(input)?;
    let (h, v) = (binerve_level(&c, n, m), binerve_level_vertical(&c, n, m));
    let agree = Verdict::from(h == v);
    let mut text = format!("level ({n},{m}): {h} cells via S_{n}, {v} via V_{m}");
    let listed = if cells { binerve_cells(&c, n, m) } else { Vec::new() };
    for x in &listed {
        text.push_str(&format!("\n{x}"));
    }
    Ok(Report::verdict(
        agree,
        text,
        json!({ "n": n, "m": m, "horizontal": h.to_string(), "vertical": v.to_string(), "cells": listed }),
    ))
}

fn cmd_bubble_free(input: &str, bound: usize, nodes: usize) -> Result<Report> {
    let r = match load(input)? {
        Input::Poly(p) => bubble_free(&p, bound, nodes)?,
        Input::TwoCat(c) => bubble_free_finite(&c),
        Input::Cat(c) => bubble_free_finite(&Finite2Category::locally_discrete(c)),
        other => bail!("bubble detection needs a polygraph or finite 2-category, found a {}", other.kind()),
    };
    let mut text = r.verdict.to_string();
    if let Some(w) = &r.witness {
        text.push_str(&format!("\nbubble {w}"));
    }
    Ok(Report::verdict(
        r.verdict,
        text,
        json!({ "verdict": r.verdict.to_string(), "witness": r.witness, "reason": r.reason }),
    ))
}

fn cmd_zoo(op: ZooOp) -> Result<Report> {
    match op {
        ZooOp::List => {
            let entries = zoo_2cats();
            let text = entries
                .iter()
                .map(|e| {
                    let h: Vec<String> = e.expected_pol_homology.iter().map(ToString::to_string).collect();
                    format!(
                        "{:<14} {:<10} good={:<11} bubble-free={:<5} H=({})  {}",
                        e.name,
                        e.homotopy_type,
                        e.good.to_string(),
                        e.bubble_free,
                        h.join(", "),
                        e.description
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let j: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "description": e.description,
                        "homotopy_type": e.homotopy_type,
                        "good": e.good.to_string(),
                        "bubble_free": e.bubble_free,
                        "in_table": e.in_table,
                        "homology": e.expected_pol_homology.iter().map(group_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Report::ok(text, json!({ "entries": j })))
        }
        ZooOp::Build { name } => {
            let e = zoo_entry(&name).ok_or_else(|| anyhow!("no zoo entry `{name}`"))?;
            let text = (e.build)().to_text();
            Ok(Report::ok(text.trim_end().to_string(), json!({ "name": e.name, "poly": text })))
        }
    }
}

fn dispatch(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Build { name } => {
            let p = build_named(&name).ok_or_else(|| anyhow!("unknown builtin polygraph `{name}`"))?;
            let text = p.to_text();
            Ok(Report::ok(text.trim_end().to_string(), json!({ "name": name, "poly": text })))
        }
        Command::Validate { input, budget } => cmd_validate(&input, budget.budget()),
        Command::Abelianize { input } => {
            let c = abelianize(&polygraph(&input)?);
            let text = c.to_text();
            Ok(Report::ok(text.trim_end().to_string(), json!({ "ranks": c.ranks(), "chain": text })))
        }
        Command::HomologyPol { input, max_degree } => cmd_homology_pol(&input, max_degree),
        Command::HomologySing { input, max_degree } => cmd_homology_sing(&input, max_degree),
        Command::Word { op } => cmd_word(op),
        Command::CheckBasis {
            input,
            sigma,
            sigma2,
            bound,
        } => cmd_check_basis(&input, &sigma, &sigma2, bound),
        Command::CheckConduche { input } => cmd_check_conduche(&input),
        Command::Slice { input, object } => cmd_slice(&input, &object),
        Command::Binerve { input, n, m, cells } => cmd_binerve(&input, n, m, cells),
        Command::BubbleFree {
            input,
            bound,
            budget_nodes,
        } => cmd_bubble_free(&input, bound, budget_nodes),
        Command::Zoo { op } => cmd_zoo(op),
    }
}

/// Runs one invocation; `argv[0]` is the program name. Returns the exit code
/// and the text to print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string().trim_end().to_string());
        }
    };
    let json_out = cli.json;
    match dispatch(cli.command) {
        Ok(r) => {
            let out = if json_out { serde_json::to_string_pretty(&r.json).expect("json values serialize") } else { r.text };
            (r.code, out)
        }
        Err(e) => {
            let msg = format!("{e:#}");
            let out = if json_out {
                serde_json::to_string_pretty(&json!({ "error": msg })).expect("json values serialize")
            } else {
                format!("error: {msg}")
            };
            (2, out)
        }
    }
}
