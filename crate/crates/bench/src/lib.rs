//! Deterministic inputs shared by the benchmarks.

use omegacat::{CellTerm, IntMatrix, Polygraph};

/// An `n × n` matrix with entries from a linear congruential sequence in
/// `[-100, 100]`.
pub fn lcg_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut x = seed;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((x >> 33) % 201) as i64 - 100
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

/// One object, one loop `f` and 2-cells `a_i : f => f`.
pub fn endo_polygraph(cells: usize) -> Polygraph {
    let mut p = Polygraph::new(2).expect("dimension 2");
    p.add_object("A").expect("fresh name");
    p.add_cell_words("f", "(c_A)", "(c_A)").expect("loop");
    for i in 0..cells {
        p.add_cell_words(&format!("a{i}"), "(c_f)", "(c_f)").expect("endomorphism");
    }
    p
}

/// `a0 *1 a1 *1 ... ` nested to the right, each factor padded by a unit.
pub fn vertical_stack(p: &Polygraph, n: usize) -> CellTerm {
    let unit = p.parse("(i_(c_f))").expect("unit");
    let mut t = p.parse("(c_a0)").expect("generator");
    for i in 1..n {
        let g = p.parse(&format!("(c_a{})", i % p.rank(2))).expect("generator");
        let padded = CellTerm::comp_unchecked(1, g, unit.clone());
        t = CellTerm::comp_unchecked(1, padded, t);
    }
    t
}
