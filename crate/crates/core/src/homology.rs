//! Integer matrices, Smith normal form, chain complexes and their homology.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &BigInt) {
        self.data[i * self.cols + j] += x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let x = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] += x;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let x = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] += x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = x;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d[0][0] | d[1][1] | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by repeated smallest-pivot elimination.
///
/// The pivot is the nonzero entry of least absolute value in the remaining
/// block, ties broken by lowest row then column, so the result is
/// deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(&pivot);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(&pivot);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                let (pi, pj) = smallest_entry_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry on row `t` or column `t` of the block.
fn smallest_entry_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let candidates = (t..d.rows)
        .map(|i| (i, t))
        .chain((t + 1..d.cols).map(|j| (t, j)));
    for (i, j) in candidates {
        let x = d.get(i, j);
        if x.is_zero() {
            continue;
        }
        let b = d.get(best.0, best.1);
        if b.is_zero() || x.abs() < b.abs() || (x.abs() == b.abs() && (i, j) < best) {
            best = (i, j);
        }
    }
    best
}

/// A finitely generated abelian group `Z^betti + Z/t1 + Z/t2 + ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup {
            betti: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn with_torsion(betti: usize, torsion: &[u64]) -> Self {
        HomologyGroup {
            betti,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A bounded chain complex of free abelian groups of finite rank.
///
/// `boundary(n)` is the matrix of `d_n : C_n -> C_{n-1}` with
/// `rank(n-1)` rows and `rank(n)` columns; `d_0` is the zero map to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `boundaries[i]` is `d_{i+1}`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Invalid("a chain complex needs degree 0".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::Invalid(format!(
                "{} ranks need {} boundary matrices, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        let mut all = vec![IntMatrix::zero(0, ranks[0])];
        for (i, b) in boundaries.into_iter().enumerate() {
            let n = i + 1;
            if b.rows != ranks[n - 1] || b.cols != ranks[n] {
                return Err(Error::Invalid(format!(
                    "d_{n} has shape {}x{}, expected {}x{}",
                    b.rows,
                    b.cols,
                    ranks[n - 1],
                    ranks[n]
                )));
            }
            all.push(b);
        }
        for n in 2..ranks.len() {
            if !all[n - 1].mul(&all[n]).is_zero() {
                return Err(Error::Invalid(format!("d_{} o d_{n} is not zero", n - 1)));
            }
        }
        Ok(ChainComplex {
            ranks,
            boundaries: all,
        })
    }

    pub fn max_deg(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> Option<&IntMatrix> {
        self.boundaries.get(n)
    }

    /// The same complex with zero groups appended up to degree `to_deg`.
    pub fn padded(&self, to_deg: usize) -> ChainComplex {
        let mut c = self.clone();
        while c.max_deg() < to_deg {
            let n = c.ranks.len();
            c.boundaries.push(IntMatrix::zero(c.ranks[n - 1], 0));
            c.ranks.push(0);
        }
        c
    }

    /// `H_k`; the boundary out of degree `max_deg + 1` is taken to be zero.
    pub fn homology(&self, k: usize) -> Result<HomologyGroup> {
        if k > self.max_deg() {
            return Err(Error::DegreeOutOfRange {
                k,
                max: self.max_deg(),
            });
        }
        let rank_in = if k == 0 {
            0
        } else {
            smith_normal_form(&self.boundaries[k]).rank()
        };
        let (rank_out, torsion) = match self.boundaries.get(k + 1) {
            Some(b) => {
                let factors = smith_normal_form(b).invariant_factors();
                let torsion = factors.iter().filter(|x| !x.is_one()).cloned().collect();
                (factors.len(), torsion)
            }
            None => (0, Vec::new()),
        };
        Ok(HomologyGroup {
            betti: self.ranks[k] - rank_in - rank_out,
            torsion,
        })
    }

    /// Homology in every degree.
    pub fn all_homology(&self) -> Vec<HomologyGroup> {
        (0..=self.max_deg())
            .map(|k| self.homology(k).expect("degree in range"))
            .collect()
    }

    /// Text format: a `deg n rank r` line per degree, followed for `n >= 1`
    /// by the rows of `d_n` when both ranks involved are positive.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in 0..=self.max_deg() {
            out.push_str(&format!("deg {n} rank {}\n", self.ranks[n]));
            let b = &self.boundaries[n];
            if n > 0 && b.rows > 0 && b.cols > 0 {
                for i in 0..b.rows {
                    let row: Vec<String> = b.row(i).iter().map(ToString::to_string).collect();
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<ChainComplex> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut ranks = Vec::new();
        let mut boundaries = Vec::new();
        let mut i = 0;
        while i < lines.len() {
            let (line_no, l) = lines[i];
            let words: Vec<&str> = l.split_whitespace().collect();
            let bad = || Error::File {
                line: line_no,
                column: 1,
                message: "expected `deg N rank R`".into(),
            };
            if words.len() != 4 || words[0] != "deg" || words[2] != "rank" {
                return Err(bad());
            }
            let n: usize = words[1].parse().map_err(|_| bad())?;
            let r: usize = words[3].parse().map_err(|_| bad())?;
            if n != ranks.len() {
                return Err(Error::File {
                    line: line_no,
                    column: 1,
                    message: format!("expected degree {}", ranks.len()),
                });
            }
            i += 1;
            if n > 0 {
                let rows = ranks[n - 1];
                let mut m = IntMatrix::zero(rows, r);
                if rows > 0 && r > 0 {
                    for row in 0..rows {
                        let Some(&(ln, l)) = lines.get(i) else {
                            return Err(Error::File {
                                line: line_no,
                                column: 1,
                                message: format!("missing rows of d_{n}"),
                            });
                        };
                        let entries: Vec<&str> = l.split_whitespace().collect();
                        if entries.len() != r {
                            return Err(Error::File {
                                line: ln,
                                column: 1,
                                message: format!("expected {r} entries"),
                            });
                        }
                        for (j, e) in entries.iter().enumerate() {
                            let x: BigInt = e.parse().map_err(|_| Error::File {
                                line: ln,
                                column: 1,
                                message: format!("`{e}` is not an integer"),
                            })?;
                            m.set(row, j, x);
                        }
                        i += 1;
                    }
                }
                boundaries.push(m);
            }
            ranks.push(r);
        }
        ChainComplex::new(ranks, boundaries)
    }
}

/// Degreewise equality of homology up to degree `up_to` (zero groups beyond
/// the top degree of either complex).
pub fn complexes_iso_homology(c1: &ChainComplex, c2: &ChainComplex, up_to: usize) -> bool {
    let c1 = c1.padded(up_to + 1);
    let c2 = c2.padded(up_to + 1);
    (0..=up_to).all(|k| c1.homology(k).ok() == c2.homology(k).ok())
}

/// Format `H_k = ...` lines.
pub fn format_homology(groups: &[HomologyGroup]) -> String {
    groups
        .iter()
        .enumerate()
        .map(|(k, h)| format!("H_{k} = {h}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        (0..m.rows().min(m.cols()))
            .map(|i| i64::try_from(m.get(i, i)).unwrap())
            .collect()
    }

    #[test]
    fn small_snf() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let r = smith_normal_form(&a);
        assert_eq!(diag(&r.d), vec![2, 4]);
        assert_eq!(r.u.mul(&a).mul(&r.v), r.d);
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zero(2, 3);
        let r = smith_normal_form(&z);
        assert!(r.d.is_zero());
        assert_eq!(r.u, IntMatrix::identity(2));
        assert_eq!(r.v, IntMatrix::identity(3));
        let i = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&i).d, i);
        let e = IntMatrix::zero(0, 4);
        assert_eq!(smith_normal_form(&e).rank(), 0);
    }

    #[test]
    fn divisibility_fix() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let r = smith_normal_form(&a);
        assert_eq!(diag(&r.d), vec![1, 6]);
        assert_eq!(r.u.mul(&a).mul(&r.v), r.d);
    }

    #[test]
    fn formatting() {
        assert_eq!(HomologyGroup::zero().to_string(), "0");
        assert_eq!(HomologyGroup::free(1).to_string(), "Z");
        assert_eq!(HomologyGroup::free(2).to_string(), "Z^2");
        assert_eq!(HomologyGroup::with_torsion(0, &[2]).to_string(), "Z/2");
        assert_eq!(
            HomologyGroup::with_torsion(2, &[2, 4]).to_string(),
            "Z^2 + Z/2 + Z/4"
        );
    }

    #[test]
    fn circle_and_projective_plane() {
        // one vertex, one edge: H = Z, Z
        let c = ChainComplex::new(vec![1, 1], vec![IntMatrix::zero(1, 1)]).unwrap();
        assert_eq!(
            c.all_homology(),
            vec![HomologyGroup::free(1), HomologyGroup::free(1)]
        );
        // Z <-0- Z <-2- Z
        let rp2 = ChainComplex::new(
            vec![1, 1, 1],
            vec![IntMatrix::zero(1, 1), IntMatrix::from_rows(&[vec![2]])],
        )
        .unwrap();
        assert_eq!(
            rp2.homology(1).unwrap(),
            HomologyGroup::with_torsion(0, &[2])
        );
        assert_eq!(rp2.homology(2).unwrap(), HomologyGroup::zero());
        assert!(matches!(
            rp2.homology(3),
            Err(Error::DegreeOutOfRange { .. })
        ));
        assert_eq!(rp2.padded(4).homology(4).unwrap(), HomologyGroup::zero());
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_rows(&[vec![1]]);
        let d2 = IntMatrix::from_rows(&[vec![1]]);
        assert!(ChainComplex::new(vec![1, 1, 1], vec![d1, d2]).is_err());
        assert!(ChainComplex::new(vec![1, 2], vec![IntMatrix::zero(2, 1)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = ChainComplex::new(
            vec![2, 1, 0],
            vec![
                IntMatrix::from_rows(&[vec![-1], vec![1]]),
                IntMatrix::zero(1, 0),
            ],
        )
        .unwrap();
        let text = c.to_text();
        assert_eq!(text, "deg 0 rank 2\ndeg 1 rank 1\n-1\n1\ndeg 2 rank 0\n");
        assert_eq!(ChainComplex::from_text(&text).unwrap(), c);
    }

    #[test]
    fn iso_homology() {
        let point = ChainComplex::new(vec![1], vec![]).unwrap();
        let interval =
            ChainComplex::new(vec![2, 1], vec![IntMatrix::from_rows(&[vec![-1], vec![1]])])
                .unwrap();
        assert!(complexes_iso_homology(&point, &interval, 1));
        let b2n = ChainComplex::new(
            vec![1, 0, 1],
            vec![IntMatrix::zero(1, 0), IntMatrix::zero(0, 1)],
        )
        .unwrap();
        assert!(!complexes_iso_homology(&b2n, &point, 2));
    }
}
