//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use omegacat::conduche::{basis_transfer, check_conduche, pullback, slice, FiniteFunctor};
use omegacat::nerve::{
    binerve_level, binerve_level_vertical, nerve2, normalized_chains, realize_free_category,
    singular_homology, TwoCategoryBuilder,
};
use omegacat::rewrite::{check_interpretation, decide, elementary_moves, replay, rho};
use omegacat::zoo::{a_family, bubble_free, globe, sphere, zoo_2cats, zoo_entry};
use omegacat::{
    abelianize, smith_normal_form, weight_vector, Budget, CellTerm, Finite2Category,
    FiniteCategory, HomologyGroup, IntMatrix, Polygraph, Verdict,
};
use rand::Rng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn show(groups: &[HomologyGroup]) -> String {
    groups
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Library homology in degrees `0..=top`, checked against the token-counting
/// oracle in every degree the polygraph has.
fn pol_homology(p: &Polygraph, top: usize) -> Result<Vec<HomologyGroup>, String> {
    let h = abelianize(p).padded(top).all_homology();
    let oracle = oracle_pol_homology(p);
    for (k, o) in oracle.iter().enumerate() {
        ensure(group_matches(&h[k], o), || {
            format!("H_{k}: library {} vs oracle {o:?}", h[k])
        })?;
    }
    Ok(h)
}

fn expect_groups(
    h: &[HomologyGroup],
    expected: &[HomologyGroup],
    what: &str,
) -> Result<(), String> {
    ensure(h == expected, || {
        format!("{what}: got [{}], expected [{}]", show(h), show(expected))
    })
}

fn z(b: usize) -> HomologyGroup {
    HomologyGroup::free(b)
}

fn c1_bubble() -> Outcome {
    let p = zoo_entry("b2n").ok_or("missing b2n")?.build;
    let p = p();
    let h = pol_homology(&p, 4)?;
    expect_groups(&h, &[z(1), z(0), z(1), z(0), z(0)], "B2N")?;
    Ok(show(&h))
}

fn c2_globes() -> Outcome {
    for n in 0..=6 {
        let h = pol_homology(&globe(n), n)?;
        let mut expected = vec![z(0); n + 1];
        expected[0] = z(1);
        expect_groups(&h, &expected, &format!("D_{n}"))?;
    }
    Ok("D_0..D_6 contractible".into())
}

fn c3_spheres() -> Outcome {
    for n in 0..=5usize {
        let p = sphere(n as isize);
        let h = pol_homology(&p, n)?;
        let mut expected = vec![z(0); n + 1];
        expected[0] = z(1);
        expected[n] = z(if n == 0 { 2 } else { 1 });
        expect_groups(&h, &expected, &format!("S_{n}"))?;
    }
    Ok("S_0..S_5".into())
}

fn c4_family() -> Outcome {
    for m in 0..=4 {
        for n in 0..=4 {
            let h = pol_homology(&a_family(m, n), 2)?;
            let expected = if m + n == 0 {
                vec![z(1), z(0), z(1)]
            } else {
                vec![z(1), z(0), z(0)]
            };
            expect_groups(&h, &expected, &format!("A_({m},{n})"))?;
        }
    }
    Ok("25 instances".into())
}

/// Random acyclic graphs, edges from lower to higher vertices.
fn random_dag(seed: u64) -> (Polygraph, usize, Vec<(usize, usize)>) {
    let mut r = rng(seed);
    let v = r.gen_range(1..=5);
    let mut p = Polygraph::new(1).unwrap();
    for i in 0..v {
        p.add_object(&format!("o{i}")).unwrap();
    }
    let mut edges = Vec::new();
    if v > 1 {
        for e in 0..r.gen_range(0..=7) {
            let i = r.gen_range(0..v - 1);
            let j = r.gen_range(i + 1..v);
            p.add_cell_words(&format!("e{e}"), &format!("(c_o{i})"), &format!("(c_o{j})"))
                .unwrap();
            edges.push((i, j));
        }
    }
    (p, v, edges)
}

fn c5_low_degrees() -> Outcome {
    for seed in 0..10 {
        let (p, v, edges) = random_dag(1000 + seed);
        let pol = abelianize(&p).padded(1).all_homology();
        let cat = realize_free_category(&p).map_err(|e| e.to_string())?;
        let sing = [singular_homology(&cat, 0), singular_homology(&cat, 1)];
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(i, j) in &edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
        let comps = (0..v).filter(|&x| find(&mut parent, x) == x).count();
        let graph = [z(comps), z(edges.len() + comps - v)];
        for k in 0..2 {
            ensure(pol[k] == sing[k] && sing[k] == graph[k], || {
                format!(
                    "seed {seed} H_{k}: pol {}, nerve {}, graph {}",
                    pol[k], sing[k], graph[k]
                )
            })?;
        }
    }
    Ok("10 graphs".into())
}

/// Duskin simplices of `B²(Z/2)`: 2-cocycles on `[m]` with values in `Z/2`.
type Cocycle = BTreeMap<(usize, usize, usize), u8>;

fn triples(m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                out.push((i, j, k));
            }
        }
    }
    out
}

fn cocycles(m: usize) -> Vec<Cocycle> {
    let ts = triples(m);
    let mut out = Vec::new();
    for bits in 0u32..1 << ts.len() {
        let x: Cocycle = ts
            .iter()
            .enumerate()
            .map(|(n, &t)| (t, ((bits >> n) & 1) as u8))
            .collect();
        let ok = (0..=m).all(|i| {
            (i + 1..=m).all(|j| {
                (j + 1..=m).all(|k| {
                    (k + 1..=m)
                        .all(|l| x[&(j, k, l)] ^ x[&(i, j, l)] == x[&(i, k, l)] ^ x[&(i, j, k)])
                })
            })
        });
        if ok {
            out.push(x);
        }
    }
    out
}

fn reindex(x: &Cocycle, m: usize, map: impl Fn(usize) -> usize) -> Cocycle {
    triples(m)
        .into_iter()
        .map(|(a, b, c)| {
            let (i, j, k) = (map(a), map(b), map(c));
            let v = if i < j && j < k { x[&(i, j, k)] } else { 0 };
            ((a, b, c), v)
        })
        .collect()
}

fn c6_b2z2() -> Outcome {
    let top = 3;
    let simplices: Vec<Vec<Cocycle>> = (0..=top).map(cocycles).collect();
    let face =
        |m: usize, x: &Cocycle, r: usize| reindex(x, m - 1, |a| if a < r { a } else { a + 1 });
    let degen =
        |m: usize, x: &Cocycle, r: usize| reindex(x, m + 1, |a| if a <= r { a } else { a - 1 });
    let nondeg: Vec<Vec<Cocycle>> = (0..=top)
        .map(|m| {
            simplices[m]
                .iter()
                .filter(|x| m == 0 || !(0..m).any(|r| degen(m - 1, &face(m, x, r), r) == **x))
                .cloned()
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = nondeg.iter().map(Vec::len).collect();
    let mut d = BTreeMap::new();
    for m in 1..=top {
        let mut mat = vec![vec![0i128; ranks[m]]; ranks[m - 1]];
        for (col, x) in nondeg[m].iter().enumerate() {
            for r in 0..=m {
                let y = face(m, x, r);
                if let Some(row) = nondeg[m - 1].iter().position(|z| *z == y) {
                    mat[row][col] += if r % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        d.insert(m, mat);
    }
    let c = Finite2Category::double_suspension_cyclic(2);
    let truncation = nerve2(&c, top);
    let counts: Vec<usize> = simplices.iter().map(Vec::len).collect();
    ensure(truncation.counts() == counts, || {
        format!(
            "simplex counts {:?} vs oracle {counts:?}",
            truncation.counts()
        )
    })?;
    ensure(truncation.nondegenerate_counts() == ranks, || {
        format!(
            "nondegenerate {:?} vs oracle {ranks:?}",
            truncation.nondegenerate_counts()
        )
    })?;
    let chains = normalized_chains(&truncation);
    let mut h = Vec::new();
    for k in 0..top {
        let lib = singular_homology(&c, k);
        let oracle = oracle_homology(&ranks, &d, k);
        ensure(group_matches(&lib, &oracle), || {
            format!("H_{k}: {lib} vs oracle {oracle:?}")
        })?;
        ensure(chains.homology(k).ok() == Some(lib.clone()), || {
            format!("H_{k} differs between truncations")
        })?;
        h.push(lib);
    }
    expect_groups(
        &h,
        &[z(1), z(0), HomologyGroup::with_torsion(0, &[2])],
        "B2(Z/2)",
    )?;
    Ok(format!("{}; counts {counts:?}", show(&h)))
}

fn two_categories() -> Vec<(&'static str, Finite2Category)> {
    let mut parallel = TwoCategoryBuilder::new();
    parallel
        .object("A")
        .object("B")
        .arrow("f", "A", "B")
        .arrow("g", "A", "B")
        .cell("alpha", "f", "g");
    let mut looped = TwoCategoryBuilder::new();
    looped
        .object("A")
        .object("B")
        .arrow("f", "A", "B")
        .arrow("g", "B", "B")
        .comp("g", "f", "f")
        .comp("g", "g", "g")
        .cell("theta", "g", "1_B")
        .hcomp("theta", "1_f", "1_f")
        .hcomp("theta", "theta", "theta")
        .hcomp("theta", "1_g", "1_g")
        .hcomp("1_g", "theta", "1_g");
    vec![
        ("B2(Z/2)", Finite2Category::double_suspension_cyclic(2)),
        ("B2(Z/3)", Finite2Category::double_suspension_cyclic(3)),
        (
            "Delta2",
            Finite2Category::locally_discrete(FiniteCategory::simplex(2)),
        ),
        ("parallel", parallel.build().expect("parallel 2-cell")),
        ("idempotent", looped.build().expect("idempotent loop")),
    ]
}

fn c7_binerve() -> Outcome {
    let mut total = 0u128;
    for (name, c) in two_categories() {
        for n in 0..=3 {
            for m in 0..=3 {
                let (h, v) = (binerve_level(&c, n, m), binerve_level_vertical(&c, n, m));
                ensure(h == v, || {
                    format!("{name} ({n},{m}): {h} via S_n, {v} via V_m")
                })?;
                total += h;
            }
        }
    }
    Ok(format!("5 categories, 16 levels each, {total} cells"))
}

fn c8_snf() -> Outcome {
    let mut r = rng(8);
    for case in 0..500 {
        let (rows, cols) = (r.gen_range(1..=8), r.gen_range(1..=8));
        let zero_rows = r.gen_bool(0.2);
        let raw: Vec<Vec<i64>> = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|_| {
                        if zero_rows && i % 3 == 0 {
                            0
                        } else {
                            r.gen_range(-100..=100)
                        }
                    })
                    .collect()
            })
            .collect();
        let a = IntMatrix::from_rows(&raw);
        let s = smith_normal_form(&a);
        ensure(s.u.mul(&a).mul(&s.v) == s.d, || {
            format!("case {case}: U A V != D")
        })?;
        let to_vec = |m: &IntMatrix| -> Vec<Vec<BigInt>> {
            (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
        };
        for (name, m) in [("U", &s.u), ("V", &s.v)] {
            let det = bareiss_det(&to_vec(m));
            ensure(det == BigInt::from(1) || det == BigInt::from(-1), || {
                format!("case {case}: det {name} = {det}")
            })?;
        }
        for i in 0..rows {
            for j in 0..cols {
                ensure(i == j || s.d.get(i, j) == &BigInt::from(0), || {
                    format!("case {case}: D not diagonal")
                })?;
            }
        }
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| s.d.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            let ok = w[0] >= BigInt::from(0)
                && if w[0] == BigInt::from(0) {
                    w[1] == BigInt::from(0)
                } else {
                    (&w[1] % &w[0]) == BigInt::from(0)
                };
            ensure(ok, || {
                format!("case {case}: divisibility fails on {diag:?}")
            })?;
        }
        let rank = bareiss_rank(&raw);
        ensure(s.rank() == rank, || {
            format!("case {case}: SNF rank {} vs Bareiss {rank}", s.rank())
        })?;
    }
    Ok("500 matrices".into())
}

fn c9_words() -> Outcome {
    let p = word_polygraph();
    check_interpretation(&p, &Ordinals, &ordinal_interp).map_err(|e| e.to_string())?;
    let mut r = rng(9);
    let cases = 10_000;
    let (mut moves, mut multi, mut splits) = (0usize, 0usize, 0usize);
    for case in 0..cases {
        let dim = if case % 5 == 0 { 1 } else { 2 };
        let t = random_term(&p, &mut r, dim, 15);
        // round trip
        let word = t.to_word();
        let back = p
            .parse(&word)
            .map_err(|e| format!("case {case}: {word}: {e}"))?;
        ensure(back == t, || {
            format!("case {case}: {word} reparses as {back}")
        })?;
        // unique decomposition of every subterm
        let mut stack = vec![t.clone()];
        while let Some(s) = stack.pop() {
            let w = s.to_word();
            let found = top_splits(&w);
            match &s {
                CellTerm::Comp(k, a, b) => {
                    ensure(found == vec![(*k, a.to_word(), b.to_word())], || {
                        format!("case {case}: {w} splits as {found:?}")
                    })?;
                    stack.push((**a).clone());
                    stack.push((**b).clone());
                    splits += 1;
                }
                CellTerm::Id(inner) => {
                    ensure(found.is_empty(), || format!("case {case}: unit {w} splits"))?;
                    stack.push((**inner).clone());
                }
                CellTerm::Gen(_) => ensure(found.is_empty(), || {
                    format!("case {case}: generator {w} splits")
                })?,
            }
        }
        // moves: parallelism, weights, evaluation
        let (src, tgt) = (p.src(&t).unwrap(), p.tgt(&t).unwrap());
        let w = weight_vector(&t);
        let value = rho(&Ordinals, &ordinal_interp, &t).map_err(|e| format!("case {case}: {e}"))?;
        let all = elementary_moves(&p, &t);
        for (mv, u) in &all {
            p.check_term(u)
                .map_err(|e| format!("case {case}: {mv} on {t} gives ill-formed {u}: {e}"))?;
            let parallel = if dim == 1 {
                p.src(u).unwrap() == src && p.tgt(u).unwrap() == tgt
            } else {
                p.path(&p.src(u).unwrap()).unwrap() == p.path(&src).unwrap()
                    && p.path(&p.tgt(u).unwrap()).unwrap() == p.path(&tgt).unwrap()
            };
            ensure(parallel, || {
                format!("case {case}: {mv} on {t} changes the boundary")
            })?;
            ensure(weight_vector(u) == w, || {
                format!("case {case}: {mv} on {t} changes weights")
            })?;
            let v = rho(&Ordinals, &ordinal_interp, u).map_err(|e| format!("case {case}: {e}"))?;
            ensure(v == value, || {
                format!("case {case}: {mv} on {t} changes the value")
            })?;
            moves += 1;
        }
        // a short random rewriting sequence
        if !all.is_empty() && case % 4 == 0 {
            let mut cur = t.clone();
            let mut path = Vec::new();
            for _ in 0..3 {
                let next = elementary_moves(&p, &cur);
                if next.is_empty() {
                    break;
                }
                let (mv, u) = next[r.gen_range(0..next.len())].clone();
                path.push(mv);
                cur = u;
            }
            let terms = replay(&p, &t, &path).map_err(|e| format!("case {case}: replay {e}"))?;
            ensure(terms.last() == Some(&cur), || {
                format!("case {case}: replay disagrees")
            })?;
            ensure(weight_vector(&cur) == w, || {
                format!("case {case}: sequence changes weights")
            })?;
            let v = rho(&Ordinals, &ordinal_interp, &cur).map_err(|e| e.to_string())?;
            ensure(v == value, || {
                format!("case {case}: sequence changes the value")
            })?;
            multi += 1;
        }
        // values separate: a refutation never coexists with distinct values being proved
        if case % 50 == 0 && dim == 2 {
            let other = random_term(&p, &mut r, 2, 7);
            if p.path(&p.src(&other).unwrap()).unwrap() == p.path(&src).unwrap()
                && p.path(&p.tgt(&other).unwrap()).unwrap() == p.path(&tgt).unwrap()
            {
                let ov = rho(&Ordinals, &ordinal_interp, &other).map_err(|e| e.to_string())?;
                let verdict = decide(
                    &p,
                    &t,
                    &other,
                    &Budget {
                        nodes: 2_000,
                        extra_size: 2,
                    },
                );
                ensure(!(ov != value && verdict == Verdict::Proved), || {
                    format!("case {case}: {t} and {other} proved equal with distinct values")
                })?;
            }
        }
    }
    Ok(format!(
        "{cases} terms, {splits} splittings, {moves} moves, {multi} sequences"
    ))
}

fn free_basis(c: &FiniteCategory, names: &[String]) -> Vec<usize> {
    names.iter().filter_map(|n| c.arrow_index(n)).collect()
}

fn random_poset(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> FiniteCategory {
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
        for j in i + 1..n {
            le[i][j] = r.gen_bool(0.45);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    FiniteCategory::poset(n, |i, j| le[i][j]).unwrap()
}

fn random_monotone(
    r: &mut rand_chacha::ChaCha8Rng,
    b: &FiniteCategory,
    a: &FiniteCategory,
) -> Option<FiniteFunctor> {
    for _ in 0..200 {
        let objects: Vec<usize> = (0..b.num_objects())
            .map(|_| r.gen_range(0..a.num_objects()))
            .collect();
        let arrows: Option<Vec<usize>> = (0..b.num_arrows())
            .map(|x| {
                a.hom(objects[b.arrow_src(x)], objects[b.arrow_tgt(x)])
                    .first()
                    .copied()
            })
            .collect();
        if let Some(arrows) = arrows {
            return FiniteFunctor::between_categories(b, a, objects, arrows).ok();
        }
    }
    None
}

fn c10_conduche() -> Outcome {
    let mut r = rng(10);
    let mut parallel = omegacat::nerve::CategoryBuilder::new();
    parallel
        .object("A")
        .object("B")
        .arrow("f", "A", "B")
        .arrow("g", "A", "B");
    let dag = random_dag(77).0;
    let dag_names: Vec<String> = dag
        .generators(1)
        .iter()
        .map(|g| g.name().to_string())
        .collect();
    let simplex_basis = |n: usize| (0..n).map(|i| format!("{i}{}", i + 1)).collect::<Vec<_>>();
    let mut diamond = [[false; 4]; 4];
    for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)] {
        diamond[i][j] = true;
    }
    let cats: Vec<(&str, FiniteCategory, Option<Vec<String>>)> = vec![
        ("Delta1", FiniteCategory::simplex(1), Some(simplex_basis(1))),
        ("Delta2", FiniteCategory::simplex(2), Some(simplex_basis(2))),
        ("Delta3", FiniteCategory::simplex(3), Some(simplex_basis(3))),
        ("Z/2", FiniteCategory::cyclic_group(2), None),
        ("Z/3", FiniteCategory::cyclic_group(3), None),
        (
            "idempotent",
            FiniteCategory::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).unwrap(),
            None,
        ),
        (
            "diamond",
            FiniteCategory::poset(4, |i, j| diamond[i][j]).unwrap(),
            None,
        ),
        (
            "parallel",
            parallel.build().unwrap(),
            Some(vec!["f".into(), "g".into()]),
        ),
        (
            "free graph",
            realize_free_category(&dag).unwrap(),
            Some(dag_names),
        ),
        ("random poset", random_poset(&mut r, 5), None),
    ];
    let mut slices = 0;
    let mut transfers = 0;
    for (name, c, basis) in &cats {
        for a in 0..c.num_objects() {
            let (_, pi) = slice(c, a).map_err(|e| format!("{name}/{a}: {e}"))?;
            let report = check_conduche(&pi);
            ensure(report.holds, || {
                format!("{name}/{a}: {}", report.witness.as_ref().unwrap())
            })?;
            slices += 1;
            if let Some(basis) = basis {
                let sigma = free_basis(c, basis);
                let t = basis_transfer(&pi, &sigma, &[], 4);
                ensure(t.verdict() == Verdict::Proved, || {
                    format!("{name}/{a}: transfer {}", t.verdict())
                })?;
                transfers += 1;
            }
        }
    }
    let collapse = FiniteFunctor::between_categories(
        &FiniteCategory::simplex(1),
        &FiniteCategory::simplex(0),
        vec![0, 0],
        vec![0, 0, 0],
    )
    .map_err(|e| e.to_string())?;
    let report = check_conduche(&collapse);
    let witness = report.witness.clone().ok_or("collapse has no witness")?;
    ensure(!report.holds && witness.lifts.len() == 2, || {
        format!("collapse: {witness}")
    })?;
    let mut instances = 0;
    let mut attempts = 0;
    while instances < 20 {
        attempts += 1;
        ensure(attempts < 2_000, || {
            format!("only {instances} Conduché instances found")
        })?;
        let na = r.gen_range(2..=4);
        let a = random_poset(&mut r, na);
        let f = if instances % 2 == 0 {
            let apex = r.gen_range(0..a.num_objects());
            slice(&a, apex).unwrap().1
        } else {
            let nx = r.gen_range(2..=4);
            let x = random_poset(&mut r, nx);
            match random_monotone(&mut r, &x, &a) {
                Some(f) if check_conduche(&f).holds => f,
                _ => continue,
            }
        };
        let nb = r.gen_range(1..=4);
        let b = random_poset(&mut r, nb);
        let Some(g) = random_monotone(&mut r, &b, &a) else {
            continue;
        };
        let pb = pullback(&f, &g).map_err(|e| e.to_string())?;
        let report = check_conduche(&pb.right);
        ensure(report.holds, || {
            format!(
                "pullback instance {instances}: {}",
                report.witness.as_ref().unwrap()
            )
        })?;
        instances += 1;
    }
    Ok(format!(
        "{slices} slices, {transfers} transfers, collapse lifts twice, {instances} pullbacks"
    ))
}

fn c11_zoo() -> Outcome {
    let mut rows = Vec::new();
    for e in zoo_2cats().into_iter().filter(|e| e.in_table) {
        let p = (e.build)();
        let report = bubble_free(&p, 6, 100_000).map_err(|e| e.to_string())?;
        let expected = if e.bubble_free {
            Verdict::Proved
        } else {
            Verdict::Refuted
        };
        ensure(report.verdict == expected, || {
            format!("{}: {} expected {expected}", e.name, report.verdict)
        })?;
        rows.push(format!("{}={}", e.name, report.verdict));
    }
    ensure(rows.len() == 6, || format!("{} table entries", rows.len()))?;
    let torus = (zoo_entry("torus").ok_or("missing torus")?.build)();
    let h = pol_homology(&torus, 2)?;
    expect_groups(&h, &[z(1), z(2), z(1)], "torus")?;
    Ok(format!("{}; torus {}", rows.join(" "), show(&h)))
}

fn main() {
    let criteria: Vec<(&str, Option<Duration>, fn() -> Outcome)> = vec![
        (
            "polygraphic homology of B2N",
            Some(Duration::from_secs(1)),
            c1_bubble,
        ),
        (
            "globes are acyclic",
            Some(Duration::from_secs(1)),
            c2_globes,
        ),
        ("spheres", Some(Duration::from_secs(1)), c3_spheres),
        ("A_(m,n) family", Some(Duration::from_secs(2)), c4_family),
        (
            "low-degree coherence",
            Some(Duration::from_secs(5)),
            c5_low_degrees,
        ),
        (
            "singular homology of B2(Z/2)",
            Some(Duration::from_secs(10)),
            c6_b2z2,
        ),
        ("bisimplicial coherence", None, c7_binerve),
        ("Smith normal form", Some(Duration::from_secs(10)), c8_snf),
        ("word calculus", None, c9_words),
        ("Conduché functors", None, c10_conduche),
        ("zoo classification", None, c11_zoo),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failures += 1;
                ("FAIL", d.clone())
            }
        };
        println!(
            "criterion {:>2} {tag} {name} [{:.2?}] {detail}",
            i + 1,
            elapsed
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
