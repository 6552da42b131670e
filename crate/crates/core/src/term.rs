//! Cells of free ω-categories represented as well-formed terms.
//!
//! A [`CellTerm`] is a tree whose leaves are generators and whose inner nodes
//! are units (`Id`) or formal `k`-compositions (`Comp`). The concrete word
//! syntax is only a serialization of these trees:
//!
//! ```text
//! WORD := "(" ATOM ")"
//! ATOM := "c_" IDENT | "i_" WORD | WORD " *" NAT " " WORD
//! ```
//!
//! Boundaries of generators live in the hosting [`Polygraph`](crate::Polygraph),
//! so everything that needs them (sources, targets, composability) is found
//! there rather than here.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A generator of a polygraph: a name together with its dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    name: Arc<str>,
    dim: usize,
}

impl GeneratorId {
    pub fn new(name: impl Into<Arc<str>>, dim: usize) -> Self {
        GeneratorId {
            name: name.into(),
            dim,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.dim)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Generator names are ASCII identifiers.
pub fn is_identifier(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(is_ident_byte)
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// A term denoting a cell of a free ω-category.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellTerm {
    Gen(GeneratorId),
    /// Unit on a cell one dimension lower.
    Id(Arc<CellTerm>),
    /// Formal composite `(left *k right)`.
    Comp(usize, Arc<CellTerm>, Arc<CellTerm>),
}

/// One step of a path into a term tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Left,
    Right,
    Inner,
}

/// A path from the root of a term to one of its subterms.
pub type Position = Vec<Step>;

/// Render a position as `root` or a dotted list like `L.R.I`.
pub fn format_position(pos: &[Step]) -> String {
    if pos.is_empty() {
        return "root".to_string();
    }
    pos.iter()
        .map(|s| match s {
            Step::Left => "L",
            Step::Right => "R",
            Step::Inner => "I",
        })
        .collect::<Vec<_>>()
        .join(".")
}

impl CellTerm {
    pub fn gen(g: GeneratorId) -> Self {
        CellTerm::Gen(g)
    }

    pub fn id(inner: CellTerm) -> Self {
        CellTerm::Id(Arc::new(inner))
    }

    /// `n`-fold unit on `inner`.
    pub fn iterated_id(inner: CellTerm, n: usize) -> Self {
        (0..n).fold(inner, |t, _| CellTerm::id(t))
    }

    /// Builds `(left *k right)` without checking composability.
    ///
    /// Use [`Polygraph::compose`](crate::Polygraph::compose) for a checked
    /// construction.
    pub fn comp_unchecked(k: usize, left: CellTerm, right: CellTerm) -> Self {
        CellTerm::Comp(k, Arc::new(left), Arc::new(right))
    }

    pub fn dim(&self) -> usize {
        match self {
            CellTerm::Gen(g) => g.dim,
            CellTerm::Id(inner) => inner.dim() + 1,
            CellTerm::Comp(_, left, _) => left.dim(),
        }
    }

    /// Number of composition nodes.
    pub fn size(&self) -> usize {
        match self {
            CellTerm::Gen(_) => 0,
            CellTerm::Id(inner) => inner.size(),
            CellTerm::Comp(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Number of nodes of the tree, a cheap bound used by searches.
    pub fn node_count(&self) -> usize {
        match self {
            CellTerm::Gen(_) => 1,
            CellTerm::Id(inner) => 1 + inner.node_count(),
            CellTerm::Comp(_, l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Number of occurrences of `Gen(g)`.
    pub fn occurrences(&self, g: &GeneratorId) -> usize {
        match self {
            CellTerm::Gen(h) => usize::from(h == g),
            CellTerm::Id(inner) => inner.occurrences(g),
            CellTerm::Comp(_, l, r) => l.occurrences(g) + r.occurrences(g),
        }
    }

    /// `Some((inner, n))` when the term is syntactically `Id^n(inner)` with
    /// `n >= 1` and `inner` not itself a unit.
    pub fn unit_base(&self) -> Option<(&CellTerm, usize)> {
        let mut t = self;
        let mut n = 0;
        while let CellTerm::Id(inner) = t {
            t = inner;
            n += 1;
        }
        (n > 0).then_some((t, n))
    }

    /// True when the term is syntactically `Id^(d-k)(z)` with `z` a `k`-cell.
    pub fn is_unit_on_dim(&self, k: usize) -> bool {
        let d = self.dim();
        if d <= k {
            return false;
        }
        let mut t = self;
        for _ in 0..(d - k) {
            match t {
                CellTerm::Id(inner) => t = inner,
                _ => return false,
            }
        }
        true
    }

    pub fn subterm(&self, pos: &[Step]) -> Option<&CellTerm> {
        let mut t = self;
        for step in pos {
            t = match (t, step) {
                (CellTerm::Comp(_, l, _), Step::Left) => l,
                (CellTerm::Comp(_, _, r), Step::Right) => r,
                (CellTerm::Id(inner), Step::Inner) => inner,
                _ => return None,
            };
        }
        Some(t)
    }

    /// Replace the subterm at `pos`; `None` when the path does not exist.
    pub fn replace(&self, pos: &[Step], new: CellTerm) -> Option<CellTerm> {
        let Some((step, rest)) = pos.split_first() else {
            return Some(new);
        };
        match (self, step) {
            (CellTerm::Comp(k, l, r), Step::Left) => Some(CellTerm::Comp(
                *k,
                Arc::new(l.replace(rest, new)?),
                r.clone(),
            )),
            (CellTerm::Comp(k, l, r), Step::Right) => Some(CellTerm::Comp(
                *k,
                l.clone(),
                Arc::new(r.replace(rest, new)?),
            )),
            (CellTerm::Id(inner), Step::Inner) => {
                Some(CellTerm::Id(Arc::new(inner.replace(rest, new)?)))
            }
            _ => None,
        }
    }

    /// All positions of the tree in pre-order.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut stack = vec![(self, Vec::new())];
        while let Some((t, pos)) = stack.pop() {
            match t {
                CellTerm::Gen(_) => {}
                CellTerm::Id(inner) => {
                    let mut p = pos.clone();
                    p.push(Step::Inner);
                    stack.push((inner, p));
                }
                CellTerm::Comp(_, l, r) => {
                    let mut pr = pos.clone();
                    pr.push(Step::Right);
                    stack.push((r, pr));
                    let mut pl = pos.clone();
                    pl.push(Step::Left);
                    stack.push((l, pl));
                }
            }
            out.push(pos);
        }
        out
    }

    /// Structural substitution of generators.
    pub fn map_generators<E>(
        &self,
        f: &mut impl FnMut(&GeneratorId) -> std::result::Result<CellTerm, E>,
    ) -> std::result::Result<CellTerm, E> {
        Ok(match self {
            CellTerm::Gen(g) => f(g)?,
            CellTerm::Id(inner) => CellTerm::id(inner.map_generators(f)?),
            CellTerm::Comp(k, l, r) => {
                CellTerm::comp_unchecked(*k, l.map_generators(f)?, r.map_generators(f)?)
            }
        })
    }

    /// Every generator occurring in the term, in order of first occurrence.
    pub fn generators(&self) -> Vec<GeneratorId> {
        let mut out: Vec<GeneratorId> = Vec::new();
        self.visit_generators(&mut |g| {
            if !out.contains(g) {
                out.push(g.clone());
            }
        });
        out
    }

    fn visit_generators(&self, f: &mut impl FnMut(&GeneratorId)) {
        match self {
            CellTerm::Gen(g) => f(g),
            CellTerm::Id(inner) => inner.visit_generators(f),
            CellTerm::Comp(_, l, r) => {
                l.visit_generators(f);
                r.visit_generators(f);
            }
        }
    }

    /// The concrete word for this term.
    pub fn to_word(&self) -> String {
        let mut s = String::new();
        self.write_word(&mut s);
        s
    }

    fn write_word(&self, out: &mut String) {
        match self {
            CellTerm::Gen(g) => {
                out.push_str("(c_");
                out.push_str(g.name());
                out.push(')');
            }
            CellTerm::Id(inner) => {
                out.push_str("(i_");
                inner.write_word(out);
                out.push(')');
            }
            CellTerm::Comp(k, l, r) => {
                out.push('(');
                l.write_word(out);
                out.push_str(" *");
                out.push_str(&k.to_string());
                out.push(' ');
                r.write_word(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for CellTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

impl fmt::Debug for CellTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

/// A symbol of the word alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    Open,
    Close,
    Gen(String),
    Unit,
    Star(usize),
}

/// A symbol together with the (1-based) column where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub symbol: Symbol,
    pub column: usize,
}

/// Split a word into symbols. Whitespace between symbols is ignored.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let column = i + 1;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'(' => {
                tokens.push(Token {
                    symbol: Symbol::Open,
                    column,
                });
                i += 1;
            }
            b')' => {
                tokens.push(Token {
                    symbol: Symbol::Close,
                    column,
                });
                i += 1;
            }
            b'*' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(Error::Parse {
                        column,
                        message: "expected a composition index after `*`".into(),
                    });
                }
                let k = text[start..j].parse::<usize>().map_err(|_| Error::Parse {
                    column,
                    message: "composition index too large".into(),
                })?;
                tokens.push(Token {
                    symbol: Symbol::Star(k),
                    column,
                });
                i = j;
            }
            b'c' if bytes.get(i + 1) == Some(&b'_') => {
                let start = i + 2;
                let mut j = start;
                while j < bytes.len() && is_ident_byte(bytes[j]) {
                    j += 1;
                }
                if j == start {
                    return Err(Error::Parse {
                        column,
                        message: "expected a generator name after `c_`".into(),
                    });
                }
                tokens.push(Token {
                    symbol: Symbol::Gen(text[start..j].to_string()),
                    column,
                });
                i = j;
            }
            b'i' if bytes.get(i + 1) == Some(&b'_') => {
                tokens.push(Token {
                    symbol: Symbol::Unit,
                    column,
                });
                i += 2;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    column,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(tokens)
}

/// Number of symbols of a word.
pub fn length(text: &str) -> Result<usize> {
    Ok(tokenize(text)?.len())
}

/// `P_w(i)`: opening minus closing parentheses among the first `i+1` symbols.
pub fn parenthesis_profile(symbols: &[Symbol]) -> Vec<i64> {
    let mut depth = 0i64;
    symbols
        .iter()
        .map(|s| {
            match s {
                Symbol::Open => depth += 1,
                Symbol::Close => depth -= 1,
                _ => {}
            }
            depth
        })
        .collect()
}

/// Nonempty, never negative, and back to zero exactly at the last symbol.
pub fn is_well_parenthesized_symbols(symbols: &[Symbol]) -> bool {
    let profile = parenthesis_profile(symbols);
    let Some((last, init)) = profile.split_last() else {
        return false;
    };
    *last == 0 && init.iter().all(|&p| p > 0)
}

pub fn is_well_parenthesized(text: &str) -> bool {
    match tokenize(text) {
        Ok(tokens) => {
            let symbols: Vec<Symbol> = tokens.into_iter().map(|t| t.symbol).collect();
            is_well_parenthesized_symbols(&symbols)
        }
        Err(_) => false,
    }
}

/// Parse a word into a term, resolving generator names with `resolve`.
///
/// Only the syntax and the dimension discipline of the tree are checked here;
/// composability needs the hosting polygraph.
pub fn parse_with(
    text: &str,
    resolve: &mut impl FnMut(&str) -> Option<GeneratorId>,
) -> Result<CellTerm> {
    let tokens = tokenize(text)?;
    let mut depth = 0i64;
    for tok in &tokens {
        match tok.symbol {
            Symbol::Open => depth += 1,
            Symbol::Close => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse {
                column: tok.column,
                message: "unbalanced parentheses: unexpected `)`".into(),
            });
        }
    }
    if depth > 0 {
        return Err(Error::Parse {
            column: text.len() + 1,
            message: format!("unbalanced parentheses: {depth} left open"),
        });
    }
    let mut parser = WordParser {
        tokens: &tokens,
        pos: 0,
        end_column: text.len() + 1,
        resolve,
    };
    let term = parser.word()?;
    if let Some(tok) = tokens.get(parser.pos) {
        return Err(Error::Parse {
            column: tok.column,
            message: "trailing symbols after a complete word".into(),
        });
    }
    Ok(term)
}

struct WordParser<'a, F> {
    tokens: &'a [Token],
    pos: usize,
    end_column: usize,
    resolve: &'a mut F,
}

impl<F: FnMut(&str) -> Option<GeneratorId>> WordParser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn column(&self) -> usize {
        self.peek().map_or(self.end_column, |t| t.column)
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.peek() {
            Some(Token {
                symbol: Symbol::Close,
                ..
            }) => {
                self.pos += 1;
                Ok(())
            }
            Some(tok) => Err(Error::Parse {
                column: tok.column,
                message: "expected `)`".into(),
            }),
            None => Err(Error::Parse {
                column: self.end_column,
                message: "unbalanced parentheses: missing `)`".into(),
            }),
        }
    }

    fn word(&mut self) -> Result<CellTerm> {
        match self.peek() {
            Some(Token {
                symbol: Symbol::Open,
                ..
            }) => self.pos += 1,
            Some(tok) => {
                return Err(Error::Parse {
                    column: tok.column,
                    message: "expected `(`".into(),
                })
            }
            None => {
                return Err(Error::Parse {
                    column: self.end_column,
                    message: "unexpected end of word".into(),
                })
            }
        }
        let column = self.column();
        let term = match self.peek().map(|t| t.symbol.clone()) {
            Some(Symbol::Gen(name)) => {
                self.pos += 1;
                let g = (self.resolve)(&name).ok_or(Error::UnknownGenerator(name))?;
                CellTerm::Gen(g)
            }
            Some(Symbol::Unit) => {
                self.pos += 1;
                CellTerm::id(self.word()?)
            }
            Some(Symbol::Open) => {
                let left = self.word()?;
                let k = match self.peek() {
                    Some(Token {
                        symbol: Symbol::Star(k),
                        ..
                    }) => *k,
                    _ => {
                        return Err(Error::Parse {
                            column: self.column(),
                            message: "expected a composition symbol `*k`".into(),
                        })
                    }
                };
                let star_column = self.column();
                self.pos += 1;
                let right = self.word()?;
                let (dl, dr) = (left.dim(), right.dim());
                if dl != dr {
                    return Err(Error::Parse {
                        column: star_column,
                        message: format!("operands of `*{k}` have dimensions {dl} and {dr}"),
                    });
                }
                if k >= dl {
                    return Err(Error::Parse {
                        column: star_column,
                        message: format!("`*{k}` needs operands of dimension > {k}, found {dl}"),
                    });
                }
                CellTerm::comp_unchecked(k, left, right)
            }
            Some(_) => {
                return Err(Error::Parse {
                    column,
                    message: "expected `c_NAME`, `i_` or `(`".into(),
                })
            }
            None => {
                return Err(Error::Parse {
                    column: self.end_column,
                    message: "unbalanced parentheses: missing `)`".into(),
                })
            }
        };
        self.expect_close()?;
        Ok(term)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str, dim: usize) -> CellTerm {
        CellTerm::gen(GeneratorId::new(name, dim))
    }

    fn resolver(name: &str) -> Option<GeneratorId> {
        let dim = match name {
            "x" | "y" | "A" | "B" => 0,
            "f" | "g" | "h" => 1,
            _ => 2,
        };
        Some(GeneratorId::new(name, dim))
    }

    #[test]
    fn dimensions() {
        assert_eq!(g("alpha", 2).dim(), 2);
        assert_eq!(CellTerm::id(g("f", 1)).dim(), 2);
        assert_eq!(CellTerm::comp_unchecked(0, g("g", 1), g("f", 1)).dim(), 1);
    }

    #[test]
    fn sizes() {
        assert_eq!(g("alpha", 2).size(), 0);
        let xy = CellTerm::comp_unchecked(0, g("f", 1), g("g", 1));
        assert_eq!(CellTerm::comp_unchecked(0, xy, g("h", 1)).size(), 2);
        assert_eq!(length("(c_a)").unwrap(), 3);
    }

    #[test]
    fn parenthesis_counting() {
        let syms: Vec<Symbol> = tokenize("(c_a)")
            .unwrap()
            .into_iter()
            .map(|t| t.symbol)
            .collect();
        assert_eq!(parenthesis_profile(&syms), vec![1, 1, 0]);
        assert!(is_well_parenthesized("(c_a)"));
        assert!(!is_well_parenthesized("(c_a)(c_b)"));
        assert!(!is_well_parenthesized(""));
        assert!(!is_well_parenthesized("((c_a)"));
    }

    #[test]
    fn parse_simple_words() {
        let t = parse_with("(c_alpha)", &mut resolver).unwrap();
        assert_eq!(t, g("alpha", 2));
        let t = parse_with("((c_alpha) *1 (i_(c_f)))", &mut resolver).unwrap();
        assert_eq!(
            t,
            CellTerm::comp_unchecked(1, g("alpha", 2), CellTerm::id(g("f", 1)))
        );
        assert_eq!(t.to_word(), "((c_alpha) *1 (i_(c_f)))");
        let spaced = parse_with(" ( ( c_alpha )*1(i_ (c_f) ) ) ", &mut resolver).unwrap();
        assert_eq!(spaced, t);
    }

    #[test]
    fn parse_errors() {
        let err = parse_with("((c_a)", &mut resolver).unwrap_err();
        assert!(err.to_string().contains("unbalanced"), "{err}");
        assert!(parse_with("(c_a)(c_b)", &mut resolver).is_err());
        assert!(matches!(
            parse_with("(c_zz)", &mut |_| None),
            Err(Error::UnknownGenerator(_))
        ));
        // *1 on 1-dimensional operands
        assert!(parse_with("((c_f) *1 (c_g))", &mut resolver).is_err());
        // mixed dimensions
        assert!(parse_with("((c_alpha) *0 (c_g))", &mut resolver).is_err());
        assert!(parse_with("(c_)", &mut resolver).is_err());
        assert!(parse_with("((c_f) * (c_g))", &mut resolver).is_err());
    }

    #[test]
    fn positions_and_replacement() {
        let t = parse_with("(((c_f) *0 (c_g)) *0 (i_(c_x)))", &mut resolver).unwrap();
        let positions = t.positions();
        assert_eq!(positions.len(), t.node_count());
        assert_eq!(t.subterm(&[Step::Right, Step::Inner]), Some(&g("x", 0)));
        let r = t.replace(&[Step::Left, Step::Right], g("h", 1)).unwrap();
        assert_eq!(r.to_word(), "(((c_f) *0 (c_h)) *0 (i_(c_x)))");
        assert!(t.replace(&[Step::Inner], g("h", 1)).is_none());
    }

    #[test]
    fn unit_detection() {
        let u = CellTerm::iterated_id(g("x", 0), 2);
        assert!(u.is_unit_on_dim(0));
        assert!(u.is_unit_on_dim(1));
        let v = CellTerm::id(g("f", 1));
        assert!(v.is_unit_on_dim(1));
        assert!(!v.is_unit_on_dim(0));
        assert!(!g("alpha", 2).is_unit_on_dim(1));
    }
}
