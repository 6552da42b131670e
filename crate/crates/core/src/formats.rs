//! Line-oriented text formats for polygraphs, finite (2-)categories and
//! functors. Blank lines and text after `#` are ignored everywhere.
//!
//! Polygraph (`.poly`):
//! ```text
//! dim 2
//! gen 0 A
//! gen 1 f : (c_A) -> (c_A)
//! gen 2 alpha : (c_f) -> (i_(c_A))
//! ```
//! Finite category (`.cat`), identities `1_X` implicit:
//! ```text
//! object A
//! arrow f : A -> B
//! comp g f = h
//! ```
//! Finite 2-category (`.2cat`) adds `cell NAME : f => g`, `vcomp b a = c`
//! and `hcomp b a = c`; units `1_f` are implicit.
//!
//! Functors list `source PATH`, `target PATH` and then `map NAME -> WORD`
//! for polygraphs, or `obj`, `arrow`, `cell` lines `NAME -> NAME` for finite
//! categories (identities and units are sent to identities and units).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::conduche::FiniteFunctor;
use crate::error::{Error, Result};
use crate::nerve::{Finite2Category, FiniteCategory, TwoCategoryBuilder};
use crate::polygraph::{PolyFunctor, Polygraph};

/// Non-empty lines with comments stripped: `(line number, column of first
/// character, content)`.
fn content_lines(text: &str) -> Vec<(usize, usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let trimmed = l.trim_start();
            let col = l.len() - trimmed.len() + 1;
            let trimmed = trimmed.trim_end();
            (!trimmed.is_empty()).then_some((i + 1, col, trimmed))
        })
        .collect()
}

fn file_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::File {
        line,
        column,
        message: message.into(),
    }
}

/// Reads a polygraph; `dim` may be omitted, in which case the largest
/// generator dimension is used.
pub fn parse_polygraph(text: &str) -> Result<Polygraph> {
    let lines = content_lines(text);
    let mut declared = None;
    let mut gens = Vec::new();
    for &(ln, col, l) in &lines {
        let mut words = l.split_whitespace();
        match words.next() {
            Some("dim") => {
                let d = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| file_error(ln, col, "expected `dim N`"))?;
                if declared.is_some() || !gens.is_empty() {
                    return Err(file_error(ln, col, "`dim` must come first and only once"));
                }
                declared = Some(d);
            }
            Some("gen") => gens.push((ln, col, l)),
            Some(other) => {
                return Err(file_error(
                    ln,
                    col,
                    format!("unknown declaration `{other}`"),
                ))
            }
            None => {}
        }
    }
    let mut parsed = Vec::new();
    for (ln, col, l) in gens {
        let rest = &l[3..];
        let rest_offset = col + 3;
        let stripped = rest.trim_start();
        let mut off = rest_offset + (rest.len() - stripped.len());
        let (dim_s, after) = stripped
            .split_once(char::is_whitespace)
            .unwrap_or((stripped, ""));
        let dim: usize = dim_s
            .parse()
            .map_err(|_| file_error(ln, off, format!("`{dim_s}` is not a dimension")))?;
        off += dim_s.len() + 1;
        let (head, boundary) = match after.split_once(':') {
            Some((h, b)) => (h, Some((b, off + h.len() + 1))),
            None => (after, None),
        };
        let name = head.trim().to_string();
        if name.is_empty() {
            return Err(file_error(ln, off, "missing generator name"));
        }
        parsed.push((ln, off, dim, name, boundary));
    }
    let max_dim = declared.unwrap_or_else(|| parsed.iter().map(|g| g.2).max().unwrap_or(0));
    let mut p = Polygraph::new(max_dim).map_err(|e| e.at_line(1, 0))?;
    for (ln, off, dim, name, boundary) in parsed {
        match (dim, boundary) {
            (0, None) => {
                p.add_object(&name).map_err(|e| e.at_line(ln, off))?;
            }
            (0, Some((_, c))) => return Err(file_error(ln, c, "0-generators have no boundary")),
            (_, None) => {
                return Err(file_error(
                    ln,
                    off,
                    format!("`{name}` needs `: SRC -> TGT`"),
                ))
            }
            (d, Some((b, c))) => {
                let (s, t) = b
                    .split_once("->")
                    .ok_or_else(|| file_error(ln, c, "expected `SRC -> TGT`"))?;
                let src = p.parse(s).map_err(|e| e.at_line(ln, c))?;
                let tgt = p.parse(t).map_err(|e| e.at_line(ln, c + s.len() + 2))?;
                if src.dim() + 1 != d {
                    return Err(file_error(
                        ln,
                        c,
                        format!("boundary of a {d}-generator must have dimension {}", d - 1),
                    ));
                }
                p.add_cell(&name, src, tgt)
                    .map_err(|e| e.at_line(ln, off))?;
            }
        }
    }
    Ok(p)
}

/// The `.poly` text of `p`.
pub fn write_polygraph(p: &Polygraph) -> String {
    p.to_text()
}

fn category_lines(text: &str, two: bool) -> Result<TwoCategoryBuilder> {
    let mut b = TwoCategoryBuilder::new();
    for (ln, col, l) in content_lines(text) {
        let w: Vec<&str> = l.split_whitespace().collect();
        match (w[0], w.len()) {
            ("object", 2) => {
                b.object(w[1]);
            }
            ("arrow", 6) if w[2] == ":" && w[4] == "->" => {
                b.arrow(w[1], w[3], w[5]);
            }
            ("comp", 5) if w[3] == "=" => {
                b.comp(w[1], w[2], w[4]);
            }
            ("cell", 6) if two && w[2] == ":" && w[4] == "=>" => {
                b.cell(w[1], w[3], w[5]);
            }
            ("vcomp", 5) if two && w[3] == "=" => {
                b.vcomp(w[1], w[2], w[4]);
            }
            ("hcomp", 5) if two && w[3] == "=" => {
                b.hcomp(w[1], w[2], w[4]);
            }
            (kw, _) => return Err(file_error(ln, col, format!("malformed `{kw}` line"))),
        }
    }
    Ok(b)
}

pub fn parse_category(text: &str) -> Result<FiniteCategory> {
    category_lines(text, false)?.base.build()
}

pub fn parse_2category(text: &str) -> Result<Finite2Category> {
    category_lines(text, true)?.build()
}

fn identity_name(c: &FiniteCategory, a: usize) -> String {
    if c.is_identity(a) {
        format!("1_{}", c.object_name(c.arrow_src(a)))
    } else {
        c.arrow_name(a).to_string()
    }
}

/// The `.cat` text of `c`; identities are left implicit.
pub fn write_category(c: &FiniteCategory) -> String {
    let mut out = String::new();
    for o in 0..c.num_objects() {
        let _ = writeln!(out, "object {}", c.object_name(o));
    }
    for a in c.non_identity_arrows() {
        let _ = writeln!(
            out,
            "arrow {} : {} -> {}",
            c.arrow_name(a),
            c.object_name(c.arrow_src(a)),
            c.object_name(c.arrow_tgt(a))
        );
    }
    for (g, f, h) in c.comp_table() {
        if !c.is_identity(g) && !c.is_identity(f) {
            let _ = writeln!(
                out,
                "comp {} {} = {}",
                c.arrow_name(g),
                c.arrow_name(f),
                identity_name(c, h)
            );
        }
    }
    out
}

/// The `.2cat` text of `c`; identities and units are left implicit.
pub fn write_2category(c: &Finite2Category) -> String {
    let b = c.base();
    let mut out = write_category(b);
    let cell_name = |x: usize| {
        if c.is_unit2(x) {
            format!("1_{}", identity_name(b, c.cell_src(x)))
        } else {
            c.cell_name(x).to_string()
        }
    };
    for x in (0..c.num_cells()).filter(|&x| !c.is_unit2(x)) {
        let _ = writeln!(
            out,
            "cell {} : {} => {}",
            c.cell_name(x),
            identity_name(b, c.cell_src(x)),
            identity_name(b, c.cell_tgt(x))
        );
    }
    for (kw, table) in [("vcomp", c.vcomp_table()), ("hcomp", c.hcomp_table())] {
        for (y, x, z) in table {
            if !c.is_unit2(y) && !c.is_unit2(x) {
                let _ = writeln!(
                    out,
                    "{kw} {} {} = {}",
                    c.cell_name(y),
                    c.cell_name(x),
                    cell_name(z)
                );
            }
        }
        // whiskering by units of non-identity arrows is not implicit
        if kw == "hcomp" {
            for (y, x, z) in c.hcomp_table() {
                let y_whisker = c.is_unit2(y) && !b.is_identity(c.cell_src(y)) && !c.is_unit2(x);
                let x_whisker = c.is_unit2(x) && !b.is_identity(c.cell_src(x)) && !c.is_unit2(y);
                if y_whisker || x_whisker {
                    let _ = writeln!(
                        out,
                        "hcomp {} {} = {}",
                        cell_name(y),
                        cell_name(x),
                        cell_name(z)
                    );
                }
            }
        }
    }
    out
}

/// A parsed functor file, before its endpoints are loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorSpec {
    pub source: String,
    pub target: String,
    /// `(line, kind, name, value)` with kind one of `map`, `obj`, `arrow`, `cell`.
    pub entries: Vec<(usize, String, String, String)>,
}

pub fn parse_functor_spec(text: &str) -> Result<FunctorSpec> {
    let mut source = None;
    let mut target = None;
    let mut entries = Vec::new();
    for (ln, col, l) in content_lines(text) {
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kw {
            "source" => source = Some(rest.to_string()),
            "target" => target = Some(rest.to_string()),
            "map" | "obj" | "arrow" | "cell" => {
                let (name, value) = rest
                    .split_once("->")
                    .ok_or_else(|| file_error(ln, col, format!("expected `{kw} NAME -> VALUE`")))?;
                entries.push((
                    ln,
                    kw.to_string(),
                    name.trim().to_string(),
                    value.trim().to_string(),
                ));
            }
            other => {
                return Err(file_error(
                    ln,
                    col,
                    format!("unknown declaration `{other}`"),
                ))
            }
        }
    }
    Ok(FunctorSpec {
        source: source.ok_or_else(|| file_error(1, 1, "missing `source` line"))?,
        target: target.ok_or_else(|| file_error(1, 1, "missing `target` line"))?,
        entries,
    })
}

impl FunctorSpec {
    /// A functor of polygraphs from `map` lines.
    pub fn build_poly(
        &self,
        source: Arc<Polygraph>,
        target: Arc<Polygraph>,
    ) -> Result<PolyFunctor> {
        let mut image = BTreeMap::new();
        for (ln, kw, name, value) in &self.entries {
            if kw != "map" {
                return Err(file_error(
                    *ln,
                    1,
                    format!("`{kw}` lines belong to finite functors"),
                ));
            }
            let g = source
                .generator(name)
                .ok_or_else(|| file_error(*ln, 1, format!("unknown source generator `{name}`")))?;
            let t = target.parse(value).map_err(|e| e.at_line(*ln, 0))?;
            if image.insert(g.clone(), t).is_some() {
                return Err(file_error(*ln, 1, format!("`{name}` is mapped twice")));
            }
        }
        PolyFunctor::new(source, target, image)
    }

    /// A functor of finite 2-categories from `obj`, `arrow`, `cell` lines.
    pub fn build_finite(
        &self,
        source: &Finite2Category,
        target: &Finite2Category,
    ) -> Result<FiniteFunctor> {
        let (sb, tb) = (source.base(), target.base());
        let mut objects = vec![None; sb.num_objects()];
        let mut arrows = vec![None; sb.num_arrows()];
        let mut cells = vec![None; source.num_cells()];
        for (ln, kw, name, value) in &self.entries {
            let missing = |what: &str, n: &str| file_error(*ln, 1, format!("unknown {what} `{n}`"));
            match kw.as_str() {
                "obj" => {
                    let i = sb
                        .object_index(name)
                        .ok_or_else(|| missing("source object", name))?;
                    objects[i] = Some(
                        tb.object_index(value)
                            .ok_or_else(|| missing("target object", value))?,
                    );
                }
                "arrow" => {
                    let i = sb
                        .arrow_index(name)
                        .ok_or_else(|| missing("source arrow", name))?;
                    arrows[i] = Some(
                        tb.arrow_index(value)
                            .ok_or_else(|| missing("target arrow", value))?,
                    );
                }
                "cell" => {
                    let i = source
                        .cell_index(name)
                        .ok_or_else(|| missing("source cell", name))?;
                    cells[i] = Some(
                        target
                            .cell_index(value)
                            .ok_or_else(|| missing("target cell", value))?,
                    );
                }
                _ => {
                    return Err(file_error(
                        *ln,
                        1,
                        "`map` lines belong to polygraph functors",
                    ))
                }
            }
        }
        let objects: Vec<usize> = objects
            .iter()
            .enumerate()
            .map(|(o, x)| {
                x.ok_or_else(|| {
                    Error::InvalidFunctor(format!("no image for object {}", sb.object_name(o)))
                })
            })
            .collect::<Result<_>>()?;
        for o in 0..sb.num_objects() {
            arrows[sb.identity(o)].get_or_insert(tb.identity(objects[o]));
        }
        let arrows: Vec<usize> = arrows
            .iter()
            .enumerate()
            .map(|(a, x)| {
                x.ok_or_else(|| {
                    Error::InvalidFunctor(format!("no image for arrow {}", sb.arrow_name(a)))
                })
            })
            .collect::<Result<_>>()?;
        for a in 0..sb.num_arrows() {
            cells[source.unit2(a)].get_or_insert(target.unit2(arrows[a]));
        }
        let cells: Vec<usize> = cells
            .iter()
            .enumerate()
            .map(|(x, y)| {
                y.ok_or_else(|| {
                    Error::InvalidFunctor(format!("no image for cell {}", source.cell_name(x)))
                })
            })
            .collect::<Result<_>>()?;
        FiniteFunctor::new(source.clone(), target.clone(), objects, arrows, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelianize::abelianize;
    use crate::homology::HomologyGroup;

    #[test]
    fn polygraph_round_trip() {
        let text = "# B2N\ndim 2\ngen 0 A\ngen 2 alpha : (i_(c_A)) -> (i_(c_A))\n";
        let p = parse_polygraph(text).unwrap();
        assert_eq!(
            write_polygraph(&parse_polygraph(&write_polygraph(&p)).unwrap()),
            write_polygraph(&p)
        );
        let h = abelianize(&p).all_homology();
        assert_eq!(
            h,
            vec![
                HomologyGroup::free(1),
                HomologyGroup::zero(),
                HomologyGroup::free(1)
            ]
        );
    }

    #[test]
    fn polygraph_errors_have_positions() {
        let err = parse_polygraph("dim 1\ngen 0 A\ngen 1 f : (c_A) -> (c_B)\n").unwrap_err();
        match err {
            Error::File { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
        let err = parse_polygraph("gen 0 A\ngen 1 f : (c_A -> (c_A)\n").unwrap_err();
        assert!(matches!(err, Error::File { line: 2, .. }), "{err}");
    }

    #[test]
    fn category_round_trip() {
        let text = "object A\nobject B\narrow f : A -> B\narrow g : B -> A\ncomp g f = 1_A\ncomp f g = 1_B\n";
        let c = parse_category(text).unwrap();
        assert_eq!(c.num_arrows(), 4);
        assert_eq!(parse_category(&write_category(&c)).unwrap(), c);
        let bad = "object A\narrow e : A -> A\ncomp e e = 1_A\ncomp e e = e\narrow x : A -> A\n";
        assert!(parse_category(bad).is_err());
    }

    #[test]
    fn two_category_round_trip() {
        let c = Finite2Category::double_suspension_cyclic(2);
        let text = write_2category(&c);
        let d = parse_2category(&text).unwrap();
        assert_eq!(d.num_cells(), 2);
        assert_eq!(write_2category(&d), text);
    }

    #[test]
    fn functor_files() {
        let p = Arc::new(parse_polygraph("gen 0 A\ngen 0 B\ngen 1 f : (c_A) -> (c_B)\n").unwrap());
        let q = Arc::new(parse_polygraph("gen 0 C\n").unwrap());
        let spec = parse_functor_spec(
            "source p.poly\ntarget q.poly\nmap A -> (c_C)\nmap B -> (c_C)\nmap f -> (i_(c_C))\n",
        )
        .unwrap();
        let f = spec.build_poly(p, q).unwrap();
        assert_eq!(f.validate(), crate::rewrite::Verdict::Proved);
    }
}
