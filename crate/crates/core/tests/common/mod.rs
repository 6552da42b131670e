//! Test-side oracles and generators, independent of the library algorithms.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use omegacat::rewrite::Model;
use omegacat::{CellTerm, GeneratorId, HomologyGroup, Polygraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Invariant factors of an integer matrix by plain Euclidean row and column
/// reduction.
pub fn oracle_invariants(mut a: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // move a nonzero entry of least absolute value to (t, t)
        let mut best = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && best.is_none_or(|(_, _, v): (usize, usize, i128)| a[i][j].abs() < v)
                {
                    best = Some((i, j, a[i][j].abs()));
                }
            }
        }
        let Some((i, j, _)) = best else { break };
        a.swap(t, i);
        for r in a.iter_mut() {
            r.swap(t, j);
        }
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / p;
            for j in t..cols {
                a[i][j] -= q * a[t][j];
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / p;
            for i in t..rows {
                a[i][j] -= q * a[i][t];
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest, otherwise fold a row into row t
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
        if let Some(i) = bad {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// `H_k` of `ranks`, `d[n]` the matrix of `C_n -> C_{n-1}` (rows `ranks[n-1]`),
/// for `k < ranks.len() - 1`, or for the top degree with no outgoing boundary.
pub fn oracle_homology(
    ranks: &[usize],
    d: &BTreeMap<usize, Vec<Vec<i128>>>,
    k: usize,
) -> (usize, Vec<i128>) {
    let inv = |n: usize| -> Vec<i128> {
        match d.get(&n) {
            Some(m) if n < ranks.len() => oracle_invariants(m.clone(), ranks[n]),
            _ => Vec::new(),
        }
    };
    let out_rank = if k == 0 { 0 } else { inv(k).len() };
    let incoming = inv(k + 1);
    let betti = ranks[k] - out_rank - incoming.len();
    (betti, incoming.into_iter().filter(|&x| x > 1).collect())
}

pub fn group_matches(g: &HomologyGroup, (betti, torsion): &(usize, Vec<i128>)) -> bool {
    let mine: Vec<i128> = g
        .torsion
        .iter()
        .map(|t| i128::try_from(t.clone()).unwrap())
        .collect();
    g.betti == *betti && mine == *torsion
}

/// Polygraphic homology read off the text form: each `(c_NAME)` token of a
/// boundary word counts once.
pub fn oracle_pol_homology(p: &Polygraph) -> Vec<(usize, Vec<i128>)> {
    let text = p.to_text();
    let mut names: Vec<Vec<String>> = vec![Vec::new(); p.max_dim() + 1];
    let mut bounds: Vec<(usize, String, String)> = Vec::new();
    for line in text.lines() {
        let w: Vec<&str> = line.split_whitespace().collect();
        if w.first() != Some(&"gen") {
            continue;
        }
        let d: usize = w[1].parse().unwrap();
        names[d].push(w[2].to_string());
        if d > 0 {
            let rest = line.split_once(':').unwrap().1;
            let (s, t) = rest.split_once("->").unwrap();
            bounds.push((d, s.to_string(), t.to_string()));
        }
    }
    let count = |word: &str, name: &str| word.matches(&format!("(c_{name})")).count() as i128;
    let ranks: Vec<usize> = names.iter().map(Vec::len).collect();
    let mut d = BTreeMap::new();
    for n in 1..ranks.len() {
        let cells: Vec<&(usize, String, String)> = bounds.iter().filter(|b| b.0 == n).collect();
        let m: Vec<Vec<i128>> = names[n - 1]
            .iter()
            .map(|g| {
                cells
                    .iter()
                    .map(|(_, s, t)| count(t, g) - count(s, g))
                    .collect()
            })
            .collect();
        d.insert(n, m);
    }
    (0..ranks.len())
        .map(|k| oracle_homology(&ranks, &d, k))
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(a: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != BigInt::from(0)) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::from(0);
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant by fraction-free elimination.
pub fn bareiss_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut m = a.to_vec();
    let mut prev = BigInt::from(1);
    let mut sign = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| m[i][c] != BigInt::from(0)) else {
            return BigInt::from(0);
        };
        if p != c {
            m.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &m[c][c] * &m[i][j] - &m[i][c] * &m[c][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[c][c].clone();
    }
    if n == 0 {
        BigInt::from(1)
    } else {
        m[n - 1][n - 1].clone() * sign
    }
}

/// Objects `A`, `B`; `f : A -> B`, `g : B -> A`, `h : A -> A` and a few
/// 2-generators between their composites.
pub fn word_polygraph() -> Polygraph {
    let mut p = Polygraph::new(2).unwrap();
    p.add_object("A").unwrap();
    p.add_object("B").unwrap();
    p.add_cell_words("f", "(c_A)", "(c_B)").unwrap();
    p.add_cell_words("g", "(c_B)", "(c_A)").unwrap();
    p.add_cell_words("h", "(c_A)", "(c_A)").unwrap();
    p.add_cell_words("alpha", "(c_f)", "((c_f) *0 (c_h))")
        .unwrap();
    p.add_cell_words("beta", "(c_h)", "((c_g) *0 (c_f))")
        .unwrap();
    p.add_cell_words("gamma", "(c_h)", "(i_(c_A))").unwrap();
    p.add_cell_words("delta", "(i_(c_A))", "((c_h) *0 (c_h))")
        .unwrap();
    p.add_cell_words("eps", "(c_g)", "(c_g)").unwrap();
    p.add_cell_words("zeta", "((c_g) *0 (c_f))", "((c_g) *0 (c_f))")
        .unwrap();
    p
}

/// Combines random pool members until a term of the requested dimension
/// with at most `max_nodes` nodes is found.
pub fn random_term(p: &Polygraph, rng: &mut ChaCha8Rng, dim: usize, max_nodes: usize) -> CellTerm {
    let objects: Vec<CellTerm> = p.generators(0).iter().cloned().map(CellTerm::gen).collect();
    let mut ones: Vec<CellTerm> = p.generators(1).iter().cloned().map(CellTerm::gen).collect();
    ones.extend(objects.iter().cloned().map(CellTerm::id));
    grow(p, rng, &mut ones, &[0], max_nodes.min(7), 12);
    if dim == 1 {
        return ones.choose(rng).unwrap().clone();
    }
    let mut twos: Vec<CellTerm> = p.generators(2).iter().cloned().map(CellTerm::gen).collect();
    for _ in 0..3 {
        twos.push(CellTerm::id(ones.choose(rng).unwrap().clone()));
    }
    twos.push(CellTerm::id(CellTerm::id(
        objects.choose(rng).unwrap().clone(),
    )));
    grow(p, rng, &mut twos, &[0, 1], max_nodes, 80);
    let big = twos.iter().map(CellTerm::node_count).max().unwrap();
    let large: Vec<&CellTerm> = twos.iter().filter(|t| t.node_count() * 2 >= big).collect();
    if rng.gen_bool(0.85) {
        (*large.choose(rng).unwrap()).clone()
    } else {
        twos.choose(rng).unwrap().clone()
    }
}

fn grow(
    p: &Polygraph,
    rng: &mut ChaCha8Rng,
    pool: &mut Vec<CellTerm>,
    ks: &[usize],
    max_nodes: usize,
    tries: usize,
) {
    for _ in 0..tries {
        let u = pool.choose(rng).unwrap().clone();
        let v = pool.choose(rng).unwrap().clone();
        let k = *ks.choose(rng).unwrap();
        let t = CellTerm::comp_unchecked(k, u, v);
        if t.node_count() <= max_nodes && p.check_term(&t).is_ok() {
            pool.push(t);
        }
    }
}

/// Cells of the strict monoidal category of finite ordinals and all maps,
/// seen as a 2-category with one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdCell {
    Pt,
    One(usize),
    Two(usize, usize, Vec<usize>),
}

pub struct Ordinals;

impl Model for Ordinals {
    type Cell = OrdCell;

    fn unit(&self, c: &OrdCell) -> Option<OrdCell> {
        match c {
            OrdCell::Pt => Some(OrdCell::One(0)),
            OrdCell::One(n) => Some(OrdCell::Two(*n, *n, (0..*n).collect())),
            OrdCell::Two(..) => None,
        }
    }

    fn compose(&self, k: usize, a: &OrdCell, b: &OrdCell) -> Option<OrdCell> {
        match (k, a, b) {
            (0, OrdCell::Pt, OrdCell::Pt) => Some(OrdCell::Pt),
            (0, OrdCell::One(m), OrdCell::One(n)) => Some(OrdCell::One(m + n)),
            (0, OrdCell::Two(s1, t1, f1), OrdCell::Two(s2, t2, f2)) => {
                let mut map = f2.clone();
                map.extend(f1.iter().map(|x| x + t2));
                Some(OrdCell::Two(s1 + s2, t1 + t2, map))
            }
            (1, OrdCell::Two(s1, t1, f1), OrdCell::Two(s2, t2, f2)) if t2 == s1 => {
                Some(OrdCell::Two(*s2, *t1, f2.iter().map(|&x| f1[x]).collect()))
            }
            _ => None,
        }
    }

    fn source(&self, c: &OrdCell) -> Option<OrdCell> {
        match c {
            OrdCell::Pt => None,
            OrdCell::One(_) => Some(OrdCell::Pt),
            OrdCell::Two(s, _, _) => Some(OrdCell::One(*s)),
        }
    }

    fn target(&self, c: &OrdCell) -> Option<OrdCell> {
        match c {
            OrdCell::Pt => None,
            OrdCell::One(_) => Some(OrdCell::Pt),
            OrdCell::Two(_, t, _) => Some(OrdCell::One(*t)),
        }
    }
}

/// An interpretation of [`word_polygraph`] in [`Ordinals`].
pub fn ordinal_interp(g: &GeneratorId) -> Option<OrdCell> {
    Some(match g.name() {
        "A" | "B" => OrdCell::Pt,
        "f" => OrdCell::One(1),
        "g" => OrdCell::One(2),
        "h" => OrdCell::One(0),
        "alpha" => OrdCell::Two(1, 1, vec![0]),
        "beta" => OrdCell::Two(0, 3, vec![]),
        "gamma" | "delta" => OrdCell::Two(0, 0, vec![]),
        "eps" => OrdCell::Two(2, 2, vec![1, 0]),
        "zeta" => OrdCell::Two(3, 3, vec![0, 0, 2]),
        _ => return None,
    })
}

/// The top-level splittings `(k, left, right)` of a word `(u *k v)` found by
/// scanning for stars at depth one.
pub fn top_splits(word: &str) -> Vec<(usize, String, String)> {
    let b = word.as_bytes();
    let mut depth = 0;
    let mut out = Vec::new();
    for (i, &c) in b.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 1 => {
                let end = word[i + 1..].find(' ').map_or(word.len(), |e| i + 1 + e);
                let k = word[i + 1..end].parse().unwrap();
                out.push((
                    k,
                    word[1..i - 1].to_string(),
                    word[end + 1..word.len() - 1].to_string(),
                ));
            }
            _ => {}
        }
    }
    out
}
