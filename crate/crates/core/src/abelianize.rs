//! Weight functions and the abelianization chain complex of a polygraph.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, IntMatrix};
use crate::polygraph::{PolyFunctor, Polygraph};
use crate::term::{CellTerm, GeneratorId};

/// Occurrences of `alpha` in a term of the same dimension.
pub fn weight(alpha: &GeneratorId, t: &CellTerm) -> Result<usize> {
    if alpha.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            found: t.dim(),
            context: format!("weight of {alpha}"),
        });
    }
    Ok(top_weight(alpha, t))
}

fn top_weight(alpha: &GeneratorId, t: &CellTerm) -> usize {
    match t {
        CellTerm::Gen(g) => usize::from(g == alpha),
        CellTerm::Id(_) => 0,
        CellTerm::Comp(_, l, r) => top_weight(alpha, l) + top_weight(alpha, r),
    }
}

/// `w_n(t) = Σ w_α(t) α` over generators of dimension `dim t`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightVector {
    pub dim: usize,
    pub coords: BTreeMap<GeneratorId, BigInt>,
}

impl WeightVector {
    pub fn get(&self, g: &GeneratorId) -> BigInt {
        self.coords.get(g).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(Zero::is_zero)
    }

    /// Coordinates in the declaration order of `p`'s generators.
    pub fn to_column(&self, p: &Polygraph) -> Vec<BigInt> {
        p.generators(self.dim).iter().map(|g| self.get(g)).collect()
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        let mut coords = self.coords.clone();
        for (g, x) in &other.coords {
            *coords.entry(g.clone()).or_default() += x;
        }
        coords.retain(|_, x| !x.is_zero());
        WeightVector {
            dim: self.dim,
            coords,
        }
    }
}

pub fn weight_vector(t: &CellTerm) -> WeightVector {
    fn walk(t: &CellTerm, out: &mut BTreeMap<GeneratorId, BigInt>) {
        match t {
            CellTerm::Gen(g) => *out.entry(g.clone()).or_default() += 1,
            CellTerm::Id(_) => {}
            CellTerm::Comp(_, l, r) => {
                walk(l, out);
                walk(r, out);
            }
        }
    }
    let mut coords = BTreeMap::new();
    walk(t, &mut coords);
    WeightVector {
        dim: t.dim(),
        coords,
    }
}

/// `λ(P)`: `ℤΣ_n` in degree `n`, `∂x = w(tgt x) - w(src x)`.
pub fn abelianize(p: &Polygraph) -> ChainComplex {
    let ranks: Vec<usize> = (0..=p.max_dim()).map(|n| p.rank(n)).collect();
    let mut boundaries = Vec::new();
    for n in 1..=p.max_dim() {
        let lower = p.generators(n - 1);
        let mut d = IntMatrix::zero(lower.len(), p.rank(n));
        for (col, x) in p.generators(n).iter().enumerate() {
            let a = p.attachment(x).expect("generators are attached");
            let t = weight_vector(&a.tgt);
            let s = weight_vector(&a.src);
            for (row, g) in lower.iter().enumerate() {
                d.set(row, col, t.get(g) - s.get(g));
            }
        }
        boundaries.push(d);
    }
    ChainComplex::new(ranks, boundaries).expect("abelianized boundaries compose to zero")
}

/// A degreewise family of integer matrices between two complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    /// `matrices[n]` maps degree `n` of the source to degree `n` of the target.
    pub matrices: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            matrices: c.ranks().iter().map(|&r| IntMatrix::identity(r)).collect(),
        }
    }

    /// Checks shapes and `∂' f_n = f_{n-1} ∂` in every degree.
    pub fn check(&self, source: &ChainComplex, target: &ChainComplex) -> Result<()> {
        for (n, f) in self.matrices.iter().enumerate() {
            if f.rows() != target.rank(n) || f.cols() != source.rank(n) {
                return Err(Error::Invalid(format!(
                    "chain map has wrong shape in degree {n}"
                )));
            }
        }
        for n in 1..self.matrices.len() {
            let (Some(d), Some(d2)) = (source.boundary(n), target.boundary(n)) else {
                continue;
            };
            if d2.mul(&self.matrices[n]) != self.matrices[n - 1].mul(d) {
                return Err(Error::Invalid(format!(
                    "chain map does not commute with d_{n}"
                )));
            }
        }
        Ok(())
    }

    pub fn degree(&self, k: usize) -> Option<&IntMatrix> {
        self.matrices.get(k)
    }
}

/// `λ(F)`: the column of generator `x` is `w(F(x))`.
pub fn abelianize_functor(f: &PolyFunctor) -> Result<ChainMap> {
    let (p, q) = (f.source(), f.target());
    let top = p.max_dim();
    let mut matrices = Vec::new();
    for n in 0..=top {
        let gens = p.generators(n);
        let rows = if n <= q.max_dim() { q.rank(n) } else { 0 };
        let mut m = IntMatrix::zero(rows, gens.len());
        for (col, x) in gens.iter().enumerate() {
            let image = f.apply(&CellTerm::gen(x.clone()))?;
            if n <= q.max_dim() {
                for (row, v) in weight_vector(&image).to_column(q).into_iter().enumerate() {
                    m.set(row, col, v);
                }
            }
        }
        matrices.push(m);
    }
    let map = ChainMap { matrices };
    let target = abelianize(q).padded(top);
    map.check(&abelianize(p), &target)?;
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn circle() -> Polygraph {
        let mut p = Polygraph::new(1).unwrap();
        p.add_object("A").unwrap();
        p.add_object("B").unwrap();
        p.add_cell_words("f", "(c_A)", "(c_B)").unwrap();
        p.add_cell_words("g", "(c_A)", "(c_B)").unwrap();
        p
    }

    #[test]
    fn weights_of_units_and_composites() {
        let p = circle();
        let f = p.generator("f").unwrap().clone();
        let a = p.parse("(c_A)").unwrap();
        assert_eq!(weight(&f, &CellTerm::id(a)).unwrap(), 0);
        let t = p.parse("((c_f) *0 (i_(c_A)))").unwrap();
        assert_eq!(weight(&f, &t).unwrap(), 1);
        assert!(weight(&f, &p.parse("(c_A)").unwrap()).is_err());
        assert_eq!(weight(p.generator("g").unwrap(), &t).unwrap(), 0);
    }

    #[test]
    fn circle_complex() {
        let p = circle();
        let c = abelianize(&p);
        let d = c.boundary(1).unwrap();
        assert_eq!(d, &IntMatrix::from_rows(&[vec![-1, -1], vec![1, 1]]));
        let h = c.all_homology();
        assert_eq!(h[0].betti, 1);
        assert_eq!(h[1].betti, 1);
    }

    #[test]
    fn identity_functor_is_identity() {
        let p = Arc::new(circle());
        let f = PolyFunctor::identity(p.clone());
        let m = abelianize_functor(&f).unwrap();
        assert_eq!(m, ChainMap::identity(&abelianize(&p)));
    }
}
