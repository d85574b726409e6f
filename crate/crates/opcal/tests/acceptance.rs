//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always show; exits non-zero if any criterion fails.
//!
//! The unique-minimizer sweeps for k = 6 and 7 only run when
//! `OPCAL_ACCEPTANCE_DEEP` is set (hours on one core). Their checkpoint
//! directory defaults to `target/acceptance-deep` and can be moved with
//! `OPCAL_ACCEPTANCE_DIR`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use opcal::maxinfo::{sweep, SweepOptions};
use opcal_core::algebra::{d_apply, dot, int, ints, rat, sort_desc_permutation, t_apply};
use opcal_core::arrangement::{sign_vector, skcz_witness, Sign};
use opcal_core::loss::{dl_formula, op_loss, pi_map, rho_apply, ww_hinge};
use opcal_core::partition::{embed, enumerate_ordered_partitions, permute_partition, quasi_link};
use opcal_core::regions::{figure1_data, lift, omega_map, region_polytope, Point2};
use opcal_core::risk::{
    argmax_in_top_block, bayes_op, bayes_ww_enum, bayes_ww_lp, check_majority_prop, check_sln_prop, LossTable,
};
use opcal_core::{OrderedPartition, Permutation, ProbVector, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- independent oracles -------------------------------------------------

/// `[L(v)]_y = sum_{i != y} max(0, 1 - (v_y - v_i))`, straight from the
/// definition.
fn hinge_oracle(v: &[Rational]) -> Vec<Rational> {
    (0..v.len())
        .map(|y| {
            (0..v.len())
                .filter(|&i| i != y)
                .map(|i| {
                    let x = Rational::one() - (&v[y] - &v[i]);
                    if x.is_positive() {
                        x
                    } else {
                        Rational::zero()
                    }
                })
                .sum()
        })
        .collect()
}

/// `[ℓ(S)]_i = |S_1| - 1 + sum_{j<l} |S_1 ∪ … ∪ S_{j+1}| · 1{i ∉ S_1 ∪ … ∪ S_j}`.
fn op_loss_oracle(s: &OrderedPartition) -> Vec<i64> {
    let blocks = s.blocks();
    (0..s.k())
        .map(|i| {
            let mut total = blocks[0].len() as i64 - 1;
            for j in 1..blocks.len() {
                let head: Vec<usize> = blocks[..j].concat();
                let upto: usize = blocks[..=j].iter().map(Vec::len).sum();
                if !head.contains(&i) {
                    total += upto as i64;
                }
            }
            total
        })
        .collect()
}

/// `[σv]_i = v_{σ(i)}`.
fn act<T: Clone>(sigma: &Permutation, v: &[T]) -> Vec<T> {
    (0..v.len()).map(|i| v[sigma.image(i)].clone()).collect()
}

fn fubini(k: usize) -> usize {
    let mut a = vec![1usize];
    for n in 1..=k {
        let mut c = 1usize;
        let mut s = 0;
        for i in 1..=n {
            c = c * (n - i + 1) / i;
            s += c * a[n - i];
        }
        a.push(s);
    }
    a[k]
}

fn random_prob(rng: &mut ChaCha8Rng, k: usize) -> ProbVector {
    loop {
        let w: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=50)).collect();
        if let Ok(p) = ProbVector::from_weights(&w) {
            return p;
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn random_vector(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    (0..k).map(|_| random_rational(rng, 30, 8)).collect()
}

fn random_permutation(rng: &mut ChaCha8Rng, k: usize) -> Permutation {
    let mut m: Vec<usize> = (0..k).collect();
    m.shuffle(rng);
    Permutation::new(m).unwrap()
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

// ---- criteria --------------------------------------------------------------

fn embedding_identity() -> Check {
    let mut checks = 0;
    for k in 3..=6 {
        let parts = enumerate_ordered_partitions(k).map_err(|e| e.to_string())?;
        ensure(parts.len() == fubini(k) - 1, || format!("|OP_{k}| = {}", parts.len()))?;
        for s in &parts {
            let lhs = ints(&op_loss(s));
            let rhs = ww_hinge(&ints(&embed(s))).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("{s}: op_loss {lhs:?} != ww_hinge {rhs:?}"))?;
            ensure(op_loss_oracle(s) == op_loss(s), || format!("{s}: op_loss differs from its definition"))?;
            ensure(hinge_oracle(&ints(&embed(s))) == rhs, || format!("{s}: ww_hinge differs from its definition"))?;
            checks += 1;
        }
    }
    ensure(checks == 12 + 74 + 540 + 4682, || format!("{checks} checks"))?;
    Ok(format!("{checks} partitions"))
}

/// Columns as printed in the `OPk` and `ell` listings for k = 3.
const OPK: [[i64; 12]; 3] = [
    [-2, -2, -1, -1, -1, -1, 0, -1, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, -1, 0, -2, -1, -1, -1, -2],
    [-1, 0, 0, -1, -2, 0, -1, 0, 0, -1, -2, -1],
];
const ELL: [[i64; 12]; 3] = [
    [5, 5, 4, 3, 2, 3, 1, 2, 1, 0, 0, 0],
    [0, 2, 1, 0, 0, 3, 1, 5, 4, 3, 2, 5],
    [2, 0, 1, 3, 5, 0, 4, 0, 1, 3, 5, 2],
];

fn listing_fidelity() -> Check {
    let col = |m: &[[i64; 12]; 3], j: usize| vec![m[0][j], m[1][j], m[2][j]];
    let listed: BTreeSet<(Vec<i64>, Vec<i64>)> = (0..12).map(|j| (col(&OPK, j), col(&ELL, j))).collect();
    ensure(listed.len() == 12, || "listing has repeated columns".into())?;
    let ours: BTreeSet<(Vec<i64>, Vec<i64>)> = enumerate_ordered_partitions(3)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|s| (embed(s), op_loss(s)))
        .collect();
    ensure(ours == listed, || {
        format!("unmatched: {:?}", ours.symmetric_difference(&listed).collect::<Vec<_>>())
    })?;
    // The first column is 2|3|1.
    let first = quasi_link(&col(&OPK, 0)).map_err(|e| e.to_string())?;
    ensure(first.to_string() == "2|3|1", || format!("first column decodes to {first}"))?;
    Ok("12/12 columns".into())
}

fn triple_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut n = 0;
    for k in 3..=5 {
        let parts = enumerate_ordered_partitions(k).map_err(|e| e.to_string())?;
        let table = LossTable::new(k).map_err(|e| e.to_string())?;
        let oracle_losses: Vec<Vec<i64>> = parts.iter().map(op_loss_oracle).collect();
        for _ in 0..1000 {
            let p = random_prob(&mut rng, k);
            let brute = table.bayes(&p).map_err(|e| e.to_string())?.value;
            let skcz = bayes_ww_enum(&p).map_err(|e| e.to_string())?;
            let lp = bayes_ww_lp(&p, 1).map_err(|e| e.to_string())?;
            let def = oracle_losses
                .iter()
                .map(|l| dot(p.entries(), &ints(l)).unwrap())
                .min()
                .unwrap();
            ensure(brute == skcz && skcz == lp && lp == def, || {
                format!("p=({p}): OP_k {brute}, S_kC_Z {skcz}, LP {lp}, definition {def}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} distributions"))
}

fn dl_formula_check() -> Check {
    let mut n = 0;
    for k in 2..=8 {
        for mask in 0u32..(1 << (k - 1)) {
            let s: Vec<i64> = (0..k).map(|i| if i == 0 { 0 } else { ((mask >> (i - 1)) & 1) as i64 }).collect();
            // -T s by explicit prefix sums.
            let mut acc = 0;
            let v: Vec<Rational> = s
                .iter()
                .map(|x| {
                    acc += x;
                    int(-acc)
                })
                .collect();
            let l = hinge_oracle(&v);
            let direct: Vec<Rational> = (0..k).map(|i| if i == 0 { l[0].clone() } else { &l[i] - &l[i - 1] }).collect();
            let closed = ints(&dl_formula(&s).map_err(|e| e.to_string())?);
            ensure(closed == direct, || format!("s={s:?}: formula {closed:?}, direct {direct:?}"))?;
            ensure(d_apply(&t_apply(&s)) == s, || format!("D T s != s for {s:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} indicator vectors"))
}

fn equivariance_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let tables: Vec<Vec<OrderedPartition>> = (3..=5).map(|k| enumerate_ordered_partitions(k).unwrap()).collect();
    const N: usize = 10_000;
    for _ in 0..N {
        let k = rng.gen_range(3..=5);
        let v = random_vector(&mut rng, k);
        let c = random_rational(&mut rng, 30, 8);
        let sigma = random_permutation(&mut rng, k);
        let l = ww_hinge(&v).unwrap();
        ensure(l == hinge_oracle(&v), || format!("ww_hinge({v:?}) disagrees with definition"))?;

        let shifted: Vec<Rational> = v.iter().map(|x| x + &c).collect();
        ensure(ww_hinge(&shifted).unwrap() == l, || format!("translation: v={v:?} c={c}"))?;

        ensure(ww_hinge(&act(&sigma, &v)).unwrap() == act(&sigma, &l), || {
            format!("L(σv) != σL(v): v={v:?} σ={sigma}")
        })?;
        let s = tables[k - 3].choose(&mut rng).unwrap();
        let moved = permute_partition(&sigma.inverse(), s).unwrap();
        ensure(act(&sigma, &op_loss(s)) == op_loss(&moved), || format!("σℓ(S) != ℓ(σ'S): S={s} σ={sigma}"))?;

        for j in 0..k {
            for i in 0..k {
                ensure(v[j] <= v[i] || l[j] < l[i], || format!("order reversal: v={v:?} j={j} i={i}"))?;
            }
        }

        // Reduced hinge from its definition on π(v).
        let z = pi_map(&v).unwrap();
        let reduced: Vec<Rational> = (0..k)
            .map(|y| {
                rho_apply(y, &z)
                    .unwrap()
                    .iter()
                    .map(|x| {
                        let h = Rational::one() - x;
                        if h.is_positive() {
                            h
                        } else {
                            Rational::zero()
                        }
                    })
                    .sum()
            })
            .collect();
        ensure(reduced == l, || format!("reduction: v={v:?}"))?;

        let m = rng.gen_range(1..k);
        let swap = Permutation::transposition(k, 0, m).unwrap();
        ensure(pi_map(&act(&swap, &v)).unwrap() == rho_apply(m, &z).unwrap(), || {
            format!("πσ_m != ρ_m π: v={v:?} m={}", m + 1)
        })?;

        let p = random_vector(&mut rng, k);
        let q = random_vector(&mut rng, k);
        let sort = |x: &[Rational]| act(&sort_desc_permutation(x), x);
        let (ps, qs) = (sort(&p), sort(&q));
        ensure(dot(&ps, &qs).unwrap() >= dot(&ps, &act(&sigma, &qs)).unwrap(), || {
            format!("rearrangement: p={ps:?} q={qs:?} σ={sigma}")
        })?;
    }
    Ok(format!("{N} instances x 6 lemmas"))
}

fn maximal_informativeness() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for k in 3..=5 {
        let mut opts = SweepOptions::new(k);
        opts.jobs = jobs();
        opts.out_dir = dir.path().to_path_buf();
        counts.push(certified_sweep(&opts)?);
    }
    ensure(counts == [12, 74, 540], || format!("counts {counts:?}"))?;
    let deep = if std::env::var_os("OPCAL_ACCEPTANCE_DEEP").is_some() {
        let base = std::env::var_os("OPCAL_ACCEPTANCE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance-deep"));
        for (k, expected) in [(6, 4682), (7, 47292)] {
            let mut opts = SweepOptions::new(k);
            opts.deep = true;
            opts.jobs = jobs();
            opts.out_dir = base.clone();
            opts.progress = true;
            let n = certified_sweep(&opts)?;
            ensure(n == expected, || format!("k={k}: {n} != {expected}"))?;
            counts.push(n);
        }
        "k=6,7 swept"
    } else {
        "k=6,7 deep sweep not run (set OPCAL_ACCEPTANCE_DEEP)"
    };
    Ok(format!("counts {counts:?}; {deep}"))
}

/// Runs the sweep and re-checks every witness against the definition of ℓ.
fn certified_sweep(opts: &SweepOptions) -> Result<usize, String> {
    let mut log = std::io::stderr();
    let summary = sweep(opts, &mut log).map_err(|e| format!("{e:#}"))?;
    ensure(summary.missing.is_empty(), || format!("k={}: no witness for {:?}", opts.k, summary.missing))?;
    let parts = enumerate_ordered_partitions(opts.k).map_err(|e| e.to_string())?;
    ensure(summary.records.len() == parts.len(), || format!("k={}: {} records", opts.k, summary.records.len()))?;
    let losses: Vec<Vec<i64>> = parts.iter().map(op_loss_oracle).collect();
    for r in &summary.records {
        ensure(r.margin.is_positive(), || format!("{}: margin {}", r.partition, r.margin))?;
        let own = dot(r.witness.entries(), &ints(&op_loss_oracle(&r.partition))).unwrap();
        for (t, l) in parts.iter().zip(&losses) {
            if *t != r.partition {
                let gap = dot(r.witness.entries(), &ints(l)).unwrap() - &own;
                ensure(gap >= r.margin, || format!("{} vs {t}: gap {gap} < margin {}", r.partition, r.margin))?;
            }
        }
    }
    Ok(summary.records.len())
}

/// Segments drawn in the decision-region figure, in sixths.
const FIGURE1_EDGES: [((i64, i64), (i64, i64)); 18] = [
    ((0, 0), (2, 1)),
    ((2, 2), (2, 1)),
    ((3, 0), (2, 1)),
    ((6, 0), (3, 1)),
    ((2, 2), (3, 1)),
    ((3, 0), (3, 1)),
    ((6, 0), (3, 2)),
    ((2, 2), (3, 2)),
    ((3, 3), (3, 2)),
    ((0, 6), (2, 3)),
    ((2, 2), (2, 3)),
    ((3, 3), (2, 3)),
    ((0, 6), (1, 3)),
    ((2, 2), (1, 3)),
    ((0, 3), (1, 3)),
    ((0, 0), (1, 2)),
    ((2, 2), (1, 2)),
    ((0, 3), (1, 2)),
];

/// `num/den` in sixths.
type Frac = (i64, i64);

/// Label placements from the same figure.
const FIGURE1_LABELS: [(&str, Frac, Frac); 12] = [
    ("1|2,3", (3, 2), (3, 2)),
    ("1|2|3", (7, 4), (1, 3)),
    ("1,2|3", (5, 2), (1, 1)),
    ("2|1|3", (15, 4), (1, 3)),
    ("2|1,3", (3, 1), (3, 2)),
    ("2|3|1", (18, 5), (2, 1)),
    ("3|2|1", (2, 1), (18, 5)),
    ("2,3|1", (5, 2), (5, 2)),
    ("3|1,2", (3, 2), (3, 1)),
    ("1,3|2", (1, 1), (5, 2)),
    ("3|1|2", (3, 10), (19, 5)),
    ("1|3|2", (3, 10), (9, 5)),
];

/// Expected region vertices, in sixths.
const FIGURE1_REGIONS: [(&str, &[(i64, i64)]); 12] = [
    ("1|2,3", &[(0, 0), (2, 1), (2, 2), (1, 2)]),
    ("1|2|3", &[(0, 0), (3, 0), (2, 1)]),
    ("1,2|3", &[(2, 2), (2, 1), (3, 0), (3, 1)]),
    ("2|1|3", &[(3, 0), (6, 0), (3, 1)]),
    ("2|1,3", &[(2, 2), (3, 1), (6, 0), (3, 2)]),
    ("2|3|1", &[(6, 0), (3, 3), (3, 2)]),
    ("2,3|1", &[(2, 2), (3, 2), (3, 3), (2, 3)]),
    ("3|2|1", &[(0, 6), (3, 3), (2, 3)]),
    ("3|1,2", &[(2, 2), (2, 3), (0, 6), (1, 3)]),
    ("3|1|2", &[(0, 6), (0, 3), (1, 3)]),
    ("1,3|2", &[(2, 2), (1, 3), (0, 3), (1, 2)]),
    ("1|3|2", &[(0, 0), (1, 2), (0, 3)]),
];

fn sixths((x, y): (i64, i64)) -> Point2 {
    (rat(x, 6), rat(y, 6))
}

fn on_simplex_boundary((x, y): &Point2) -> bool {
    x.is_zero() || y.is_zero() || (x + y).is_one()
}

fn figure1() -> Check {
    let polys = figure1_data().map_err(|e| e.to_string())?;
    ensure(polys.len() == 12, || format!("{} regions", polys.len()))?;
    let area: Rational = polys.iter().map(|p| p.area()).sum();
    ensure(area == rat(1, 2), || format!("total area {area}"))?;
    for (label, pts) in FIGURE1_REGIONS {
        let s = OrderedPartition::parse(label).map_err(|e| e.to_string())?;
        let poly = region_polytope(&s).map_err(|e| e.to_string())?.ok_or(format!("{label} empty"))?;
        let want: BTreeSet<Point2> = pts.iter().map(|&p| sixths(p)).collect();
        ensure(poly.vertex_set() == want, || format!("{label}: {:?}", poly.vertices))?;
    }
    // Interior edges of the computed tiling are exactly the drawn segments.
    let mut edges = BTreeSet::new();
    for poly in &polys {
        let n = poly.vertices.len();
        for i in 0..n {
            let (a, b) = (&poly.vertices[i], &poly.vertices[(i + 1) % n]);
            let mid = ((&a.0 + &b.0) / int(2), (&a.1 + &b.1) / int(2));
            if !on_simplex_boundary(&mid) {
                edges.insert(if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) });
            }
        }
    }
    let drawn: BTreeSet<(Point2, Point2)> = FIGURE1_EDGES
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (sixths(a), sixths(b));
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    ensure(edges == drawn, || format!("edge sets differ: {:?}", edges.symmetric_difference(&drawn).collect::<Vec<_>>()))?;
    // Every printed label sits in its computed region.
    for (label, (xn, xd), (yn, yd)) in FIGURE1_LABELS {
        let p = lift(&rat(xn, 6 * xd), &rat(yn, 6 * yd)).map_err(|e| e.to_string())?;
        let report = bayes_op(&p).map_err(|e| e.to_string())?;
        ensure(report.minimizers.iter().any(|s| s.to_string() == label), || {
            format!("label {label} lands in {:?}", report.minimizers)
        })?;
    }
    Ok("12 regions, 18 edges, 12 labels".into())
}

fn argmax_link() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut n = 0;
    for _ in 0..500 {
        let k = rng.gen_range(3..=5);
        let mut w: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=30)).collect();
        let j = rng.gen_range(0..k);
        w[j] = 0;
        w[j] = w.iter().sum::<u64>() + rng.gen_range(1..=30);
        let p = ProbVector::from_weights(&w).unwrap();
        ensure(check_majority_prop(&p) == Ok(true), || format!("majority p=({p})"))?;
        let report = bayes_op(&p).unwrap();
        ensure(report.minimizers.iter().all(|s| s.top_block() == [j]), || format!("majority top block p=({p})"))?;
        n += 1;
    }
    for k in 3..=5i64 {
        for _ in 0..50 {
            let den = rng.gen_range(2..=60);
            let alpha = rat(1, k) + (Rational::one() - rat(1, k)) * rat(rng.gen_range(1..den), den);
            let j = rng.gen_range(0..k as usize);
            ensure(check_sln_prop(k as usize, &alpha, j) == Ok(true), || format!("sln k={k} α={alpha} j*={}", j + 1))?;
            n += 1;
        }
    }
    let tables: Vec<LossTable> = (3..=5).map(|k| LossTable::new(k).unwrap()).collect();
    let mut points = 0;
    while points < 500 {
        let k = rng.gen_range(3..=5);
        let p = random_prob(&mut rng, k);
        if *p.max() <= rat(1, k as i64) {
            continue;
        }
        let report = tables[k - 3].bayes(&p).unwrap();
        let s = report.minimizers.choose(&mut rng).unwrap();
        let v = ints(&embed(s));
        let risk = dot(p.entries(), &hinge_oracle(&v)).unwrap();
        ensure(risk == bayes_ww_enum(&p).unwrap(), || format!("embed({s}) not optimal at ({p})"))?;
        ensure(argmax_in_top_block(&p, &v) == Ok(true), || format!("top block p=({p}) v=embed({s})"))?;
        points += 1;
    }
    Ok(format!("{} checks", n + points))
}

fn omega_comparison() -> Check {
    let cells = omega_map(60).map_err(|e| e.to_string())?;
    ensure(cells.len() == 61 * 62 / 2, || format!("{} grid points", cells.len()))?;
    let mut separating = 0;
    let mut nested = 0;
    for c in &cells {
        let p = lift(&c.p2, &c.p3).unwrap();
        // Majority with a unique argmax, computed here.
        let cs = p.entries().iter().filter(|x| **x == *p.max()).count() == 1 && *p.max() > rat(1, 2);
        ensure(cs == c.cs, || format!("omega_cs at ({},{})", c.p2, c.p3))?;
        if c.cs && !c.boundary {
            ensure(c.in_omega_ww(), || format!("omega_cs but not omega_ww at ({},{})", c.p2, c.p3))?;
            nested += 1;
        }
        if c.in_omega_ww() && !c.cs {
            separating += 1;
        }
    }
    ensure(separating > 0, || "no point separates the two sets".into())?;
    let named = cells
        .iter()
        .find(|c| c.p2 == rat(3, 10) && c.p3 == rat(3, 10))
        .ok_or("grid misses (2/5,3/10,3/10)")?;
    ensure(named.in_omega_ww() && !named.cs, || format!("(2/5,3/10,3/10): {named:?}"))?;
    Ok(format!("{nested} nested points, {separating} in omega_ww only"))
}

fn arrangement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let mut affine = 0;
    const N: usize = 10_000;
    for i in 0..N {
        let k = rng.gen_range(3..=5);
        let v: Vec<Rational> = (0..k).map(|_| random_rational(&mut rng, 8, 2)).collect();
        let theta = sign_vector(&v);
        let w = skcz_witness(&theta).map_err(|e| e.to_string())?.ok_or(format!("NotFound for v={v:?}"))?;
        // Closed cell membership, by definition.
        for a in 0..k {
            for b in (0..k).filter(|&b| b != a) {
                let x = 1 - (w[a] - w[b]);
                let ok = match theta.get(a, b) {
                    Sign::Pos => x >= 0,
                    Sign::Neg => x <= 0,
                    Sign::Zero => x == 0,
                };
                ensure(ok, || format!("witness {w:?} outside the closed cell of {v:?}"))?;
            }
        }
        if i % 5 == 0 {
            let v: Vec<Rational> = (0..k).map(|_| random_rational(&mut rng, 40, 7)).collect();
            let u: Vec<Rational> = v.iter().map(|x| x + random_rational(&mut rng, 1, 1) / int(997)).collect();
            if sign_vector(&v) != sign_vector(&u) {
                continue;
            }
            let lam = rat(rng.gen_range(0..=20), 20);
            let mix: Vec<Rational> = v.iter().zip(&u).map(|(a, b)| &lam * a + (Rational::one() - &lam) * b).collect();
            let (lv, lu) = (hinge_oracle(&v), hinge_oracle(&u));
            let line: Vec<Rational> = lv.iter().zip(&lu).map(|(a, b)| &lam * a + (Rational::one() - &lam) * b).collect();
            ensure(ww_hinge(&mix).unwrap() == line, || format!("not affine between {v:?} and {u:?}"))?;
            affine += 1;
        }
    }
    Ok(format!("{N} witnesses, {affine} affineness checks"))
}

fn main() {
    type Criterion = (usize, &'static str, u64, fn() -> Check);
    let criteria: [Criterion; 10] = [
        (1, "embedding identity", 5, embedding_identity),
        (2, "listing fidelity", 1, listing_fidelity),
        (3, "triple-oracle Bayes risk", 120, triple_oracle),
        (4, "DL formula", 1, dl_formula_check),
        (5, "equivariance and invariance", 30, equivariance_suite),
        (6, "maximal informativeness", 600, maximal_informativeness),
        (7, "decision-region figure", 5, figure1),
        (8, "argmax-link propositions", 120, argmax_link),
        (9, "Ω comparison", 300, omega_comparison),
        (10, "arrangement witnesses", 60, arrangement),
    ];
    let deep = std::env::var_os("OPCAL_ACCEPTANCE_DEEP").is_some();
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        // The deep sweep is hours-scale by design; the limit covers k <= 5.
        let over = took > Duration::from_secs(limit) && !(id == 6 && deep);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded {limit}s")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {status} {name} [{:.2}s / {limit}s] {detail}",
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
