//! Seeded property suites. Each suite reports how many cases it checked,
//! how many failed and the first failing case verbatim.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use opcal_core::algebra::{d_apply, dot, int, ints, rat, sort_desc_permutation, t_apply};
use opcal_core::arrangement::{closed_cell_contains, closed_cell_contains_int, sign_vector, WitnessScanner};
use opcal_core::loss::{dl_formula, op_loss, pi_map, reduced_hinge, rho_apply, ww_hinge, ww_hinge_int};
use opcal_core::lp::{build_bayes_lp, solve_lp, BayesLpLayout};
use opcal_core::partition::{embed, enumerate_ordered_partitions, is_in_skcz, permute_partition, quasi_link, skcz_vectors};
use opcal_core::regions::{figure1_data, lift, omega_map};
use opcal_core::risk::{
    argmax_in_top_block, bayes_op, bayes_ww_enum, bayes_ww_lp, bayes_ww_lp_solution, check_majority_prop, check_sln_prop,
    trivial_partition_vector, LossTable,
};
use opcal_core::witness::WitnessSearch;
use opcal_core::{OrderedPartition, Permutation, ProbVector, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const SUITES: [&str; 12] = [
    "partitions",
    "embedding",
    "listing",
    "oracle-agreement",
    "dl-formula",
    "equivariance",
    "propositions",
    "lp",
    "figure1",
    "omega",
    "arrangement",
    "maxinfo",
];

/// Embedded `OP_3` as printed in the reference listing, one column per
/// partition, together with the matching loss columns.
pub const LISTING_EMBED: [[i64; 12]; 3] = [
    [-2, -2, -1, -1, -1, -1, 0, -1, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, -1, 0, -2, -1, -1, -1, -2],
    [-1, 0, 0, -1, -2, 0, -1, 0, 0, -1, -2, -1],
];

pub const LISTING_LOSS: [[i64; 12]; 3] = [
    [5, 5, 4, 3, 2, 3, 1, 2, 1, 0, 0, 0],
    [0, 2, 1, 0, 0, 3, 1, 5, 4, 3, 2, 5],
    [2, 0, 1, 3, 5, 0, 4, 0, 1, 3, 5, 2],
];

/// Decision region vertices in `(p2, p3)`, in sixths.
pub const FIGURE1_SIXTHS: [(&str, &[(i64, i64)]); 12] = [
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

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Cuts random case counts by ten and skips the `k = 5` sweep.
    pub quick: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<17} {} seed={} cases={} failures={}",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.seed,
            self.cases,
            self.failures
        )?;
        if let Some(c) = &self.first_failure {
            write!(f, "\n  first counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    /// Library errors count as failures.
    fn result(&mut self, r: opcal_core::Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => self.check(false, || format!("{}: error {e}", what())),
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
    }
}

/// Suites draw from their own stream so results do not depend on which
/// other suites ran.
fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn random_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

fn random_vector(rng: &mut impl Rng, k: usize) -> Vec<Rational> {
    (0..k).map(|_| random_rational(rng, 24, 6)).collect()
}

fn random_prob(rng: &mut impl Rng, k: usize) -> ProbVector {
    loop {
        let w: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=30)).collect();
        if let Ok(p) = ProbVector::from_weights(&w) {
            return p;
        }
    }
}

/// `max p > 1/2`.
fn random_majority(rng: &mut impl Rng, k: usize) -> ProbVector {
    let mut w: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=20)).collect();
    let j = rng.gen_range(0..k);
    w[j] = 0;
    w[j] = w.iter().sum::<u64>() + rng.gen_range(1..=20);
    ProbVector::from_weights(&w).expect("positive weight")
}

/// `max p > 1/k`.
fn random_above_uniform(rng: &mut impl Rng, k: usize) -> ProbVector {
    loop {
        let p = random_prob(rng, k);
        if *p.max() > rat(1, k as i64) {
            return p;
        }
    }
}

fn random_permutation(rng: &mut impl Rng, k: usize) -> Permutation {
    let mut m: Vec<usize> = (0..k).collect();
    m.shuffle(rng);
    Permutation::new(m).expect("shuffled identity")
}

fn show(v: &[Rational]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn fubini(k: usize) -> usize {
    // a(n) = sum_{i=1..n} C(n,i) a(n-i)
    let mut a = vec![1usize];
    for n in 1..=k {
        let mut c = 1usize;
        let mut total = 0;
        for i in 1..=n {
            c = c * (n - i + 1) / i;
            total += c * a[n - i];
        }
        a.push(total);
    }
    a[k]
}

pub fn run_suite(name: &str, opts: VerifyOptions) -> Option<SuiteReport> {
    let name: &'static str = SUITES.iter().find(|s| **s == name)?;
    let mut rng = rng_for(opts.seed, name);
    let scale = |n: usize| if opts.quick { n.div_ceil(10) } else { n };
    let t = match name {
        "partitions" => partitions(),
        "embedding" => embedding(),
        "listing" => listing(),
        "oracle-agreement" => oracle_agreement(&mut rng, scale(1000)),
        "dl-formula" => dl(),
        "equivariance" => equivariance(&mut rng, scale(10_000)),
        "propositions" => propositions(&mut rng, scale(500), scale(50)),
        "lp" => lp(&mut rng, scale(300)),
        "figure1" => figure1(),
        "omega" => omega(if opts.quick { 12 } else { 60 }),
        "arrangement" => arrangement(&mut rng, scale(10_000)),
        "maxinfo" => maxinfo(if opts.quick { 4 } else { 5 }),
        _ => unreachable!("listed suite"),
    };
    Some(SuiteReport {
        name,
        seed: opts.seed,
        cases: t.cases,
        failures: t.failures,
        first_failure: t.first,
    })
}

fn partitions() -> Tally {
    let mut t = Tally::default();
    for k in 2..=7 {
        let all = enumerate_ordered_partitions(k).expect("k in range");
        t.check(all.len() + 1 == fubini(k), || format!("k={k}: {} partitions", all.len()));
        let distinct: BTreeSet<&OrderedPartition> = all.iter().collect();
        t.check(distinct.len() == all.len(), || format!("k={k}: duplicates"));
        if k <= 6 {
            for s in &all {
                let v = embed(s);
                t.check(is_in_skcz(&v), || format!("embed({s}) = {v:?} not in S_k C_Z"));
                t.check(quasi_link(&v).ok().as_ref() == Some(s), || format!("quasi_link(embed({s})) != {s}"));
            }
        }
        if k <= 5 {
            let vs = skcz_vectors(k).expect("k in range");
            t.check(vs.len() == all.len(), || format!("k={k}: |S_k C_Z| = {}", vs.len()));
            for v in vs {
                let back = quasi_link(&v).map(|s| embed(&s));
                t.check(back.as_ref().ok() == Some(&v), || format!("embed(quasi_link({v:?})) = {back:?}"));
            }
        }
    }
    t
}

fn embedding() -> Tally {
    let mut t = Tally::default();
    for k in 3..=6 {
        for s in enumerate_ordered_partitions(k).expect("k in range") {
            let lhs = ints(&op_loss(&s));
            let rhs = ww_hinge(&ints(&embed(&s)));
            t.check(rhs.as_ref().ok() == Some(&lhs), || format!("{s}: op_loss {lhs:?} vs ww_hinge {rhs:?}"));
        }
    }
    t
}

fn listing() -> Tally {
    let mut t = Tally::default();
    let column = |m: &[[i64; 12]; 3], j: usize| vec![m[0][j], m[1][j], m[2][j]];
    let expected: BTreeSet<(Vec<i64>, Vec<i64>)> = (0..12)
        .map(|j| (column(&LISTING_EMBED, j), column(&LISTING_LOSS, j)))
        .collect();
    let parts = enumerate_ordered_partitions(3).expect("k = 3");
    t.check(parts.len() == 12, || format!("{} partitions", parts.len()));
    for s in parts {
        let pair = (embed(&s), op_loss(&s));
        t.check(expected.contains(&pair), || format!("{s}: {pair:?} not listed"));
    }
    for (v, l) in &expected {
        let ok = quasi_link(v).map(|s| op_loss(&s) == *l).unwrap_or(false);
        t.check(ok, || format!("listed column {v:?} -> {l:?} not reproduced"));
    }
    t
}

fn oracle_agreement(rng: &mut ChaCha8Rng, n: usize) -> Tally {
    let mut t = Tally::default();
    for k in 3..=5 {
        let table = LossTable::new(k).expect("k in range");
        let ps: Vec<ProbVector> = (0..n).map(|_| random_prob(rng, k)).collect();
        let parts: Vec<Tally> = ps
            .par_iter()
            .map(|p| {
                let mut t = Tally::default();
                let a = table.bayes(p).map(|r| r.value);
                let b = bayes_ww_enum(p);
                let c = bayes_ww_lp(p, 1);
                let ok = matches!((&a, &b, &c), (Ok(a), Ok(b), Ok(c)) if a == b && b == c);
                t.check(ok, || format!("p=({p}): op {a:?}, S_k C_Z {b:?}, lp {c:?}"));
                t
            })
            .collect();
        parts.into_iter().for_each(|p| t.merge(p));
    }
    t
}

fn dl() -> Tally {
    let mut t = Tally::default();
    for k in 2..=8 {
        for mask in 0u32..(1 << (k - 1)) {
            let mut s = vec![0i64; k];
            for (bit, slot) in s[1..].iter_mut().enumerate() {
                *slot = ((mask >> bit) & 1) as i64;
            }
            let v: Vec<i64> = t_apply(&s).into_iter().map(|x| -x).collect();
            let direct = d_apply(&ww_hinge_int(&v));
            let closed = dl_formula(&s);
            t.check(closed.as_ref().ok() == Some(&direct), || format!("s={s:?}: formula {closed:?}, direct {direct:?}"));
        }
    }
    t
}

fn equivariance(rng: &mut ChaCha8Rng, n: usize) -> Tally {
    let mut t = Tally::default();
    let tables: Vec<Vec<OrderedPartition>> = (3..=5).map(|k| enumerate_ordered_partitions(k).expect("k")).collect();
    for _ in 0..n {
        let k = rng.gen_range(3..=5);
        let v = random_vector(rng, k);
        let w = random_vector(rng, k);
        let c = random_rational(rng, 24, 6);
        let sigma = random_permutation(rng, k);
        let l = ww_hinge(&v).expect("k >= 2");

        let shifted: Vec<Rational> = v.iter().map(|x| x + &c).collect();
        t.check(ww_hinge(&shifted).as_ref() == Ok(&l), || format!("translation v={} c={c}", show(&v)));

        let lhs = ww_hinge(&sigma.apply(&v).expect("dims")).expect("k");
        t.check(lhs == sigma.apply(&l).expect("dims"), || format!("equivariance v={} sigma={sigma}", show(&v)));

        let s = tables[k - 3].choose(rng).expect("nonempty");
        let lhs = sigma.apply(&op_loss(s)).expect("dims");
        let rhs = permute_partition(&sigma.inverse(), s).map(|x| op_loss(&x));
        t.check(rhs.as_ref() == Ok(&lhs), || format!("op_loss equivariance S={s} sigma={sigma}"));

        let reversed = (0..k).all(|j| (0..k).all(|i| v[j] <= v[i] || l[j] < l[i]));
        t.check(reversed, || format!("order reversal v={}", show(&v)));

        let z = pi_map(&v).expect("k");
        t.check(reduced_hinge(&z).as_ref() == Ok(&l), || format!("reduction v={}", show(&v)));

        let m = rng.gen_range(1..k);
        let swap = Permutation::transposition(k, 0, m).expect("m < k");
        let lhs = pi_map(&swap.apply(&v).expect("dims")).expect("k");
        t.check(rho_apply(m, &z).as_ref() == Ok(&lhs), || format!("pi/rho m={} v={}", m + 1, show(&v)));

        let sort = |x: &[Rational]| sort_desc_permutation(x).apply(x).expect("dims");
        let (ps, qs) = (sort(&v), sort(&w));
        let base = dot(&ps, &qs).expect("dims");
        let moved = dot(&ps, &sigma.apply(&qs).expect("dims")).expect("dims");
        t.check(base >= moved, || format!("rearrangement p={} q={} sigma={sigma}", show(&ps), show(&qs)));

        let mut cz: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        cz[0] = 0;
        let sz: Vec<i64> = cz.iter().map(|&x| i64::from(x >= 1)).collect();
        let neg = |x: Vec<i64>| x.into_iter().map(|y| -y).collect::<Vec<_>>();
        let lc = ww_hinge_int(&neg(t_apply(&cz)));
        let ls = ww_hinge_int(&neg(t_apply(&sz)));
        t.check(lc.iter().zip(&ls).all(|(a, b)| a >= b), || format!("margin tightening c={cz:?}"));
    }
    t
}

fn propositions(rng: &mut ChaCha8Rng, n: usize, n_alpha: usize) -> Tally {
    let mut t = Tally::default();
    for _ in 0..n {
        let k = rng.gen_range(3..=5);
        let p = random_majority(rng, k);
        t.result(check_majority_prop(&p), || format!("majority p=({p})"));
    }
    for k in 3..=5i64 {
        for _ in 0..n_alpha {
            let den = rng.gen_range(2..=40);
            let num = rng.gen_range(1..den);
            let alpha = rat(1, k) + (Rational::one() - rat(1, k)) * rat(num, den);
            let j = rng.gen_range(0..k as usize);
            t.result(check_sln_prop(k as usize, &alpha, j), || format!("sln k={k} alpha={alpha} j*={}", j + 1));
        }
    }
    let tables: Vec<LossTable> = (3..=5).map(|k| LossTable::new(k).expect("k")).collect();
    for _ in 0..n {
        let k = rng.gen_range(3..=5);
        let p = random_above_uniform(rng, k);
        let report = tables[k - 3].bayes(&p).expect("dims");
        let s = report.minimizers.choose(rng).expect("nonempty");
        let v = ints(&embed(s));
        t.result(argmax_in_top_block(&p, &v), || format!("top block p=({p}) v=embed({s})"));
    }
    for _ in 0..n {
        let k = rng.gen_range(3..=5);
        let p = random_prob(rng, k);
        let kk = int(k as i64);
        let low = p.entries().iter().min().expect("k >= 2").clone();
        let r = dot(p.entries(), &ints(&ww_hinge_int(&trivial_partition_vector(&p)))).expect("dims");
        let at_zero = kk.clone() - Rational::one();
        let expected = &kk - int(2) + &kk * &low;
        let ok = r == expected && r <= at_zero && (r == at_zero) == (low == Rational::one() / &kk);
        t.check(ok, || format!("trivial partition p=({p}): {r}"));
    }
    t
}

fn lp(rng: &mut ChaCha8Rng, n: usize) -> Tally {
    let mut t = Tally::default();
    for _ in 0..n {
        let k = rng.gen_range(3..=5);
        let p = random_prob(rng, k);
        let sigma = sort_desc_permutation(p.entries());
        let sorted = p.permuted(&sigma).expect("dims");
        let Ok(prog) = build_bayes_lp(&sorted, 1) else {
            t.check(false, || format!("building LP for p=({p})"));
            continue;
        };
        let first = solve_lp(&prog);
        let again = solve_lp(&prog);
        t.check(first == again, || format!("nondeterministic solve p=({p})"));
        match first.and_then(|o| o.into_optimal()) {
            Ok((x, value)) => {
                t.check(prog.is_feasible(&x), || format!("infeasible optimum p=({p})"));
                let layout = BayesLpLayout { k };
                let integral = (0..k - 1).all(|j| x[layout.z(j)].is_integer());
                t.check(integral, || format!("fractional z p=({p}): {}", show(&x[..k - 1])));
                // Every embedded point gives a feasible value no better than the optimum.
                let best = skcz_vectors(k)
                    .expect("k")
                    .iter()
                    .map(|v| dot(sorted.entries(), &ints(&ww_hinge_int(v))).expect("dims"))
                    .min()
                    .expect("nonempty");
                t.check(best == value, || format!("LP {value} vs best embedded {best} p=({p})"));
            }
            Err(e) => t.check(false, || format!("p=({p}): {e}")),
        }
        let mut prev = Rational::zero();
        for m in 1..k {
            match bayes_ww_lp(&p, m) {
                Ok(r) => {
                    t.check(r >= prev, || format!("constrained risk decreases at n={m} p=({p})"));
                    prev = r;
                }
                Err(e) => t.check(false, || format!("n={m} p=({p}): {e}")),
            }
        }
        if let Ok((value, v)) = bayes_ww_lp_solution(&p, 1) {
            let r = dot(p.entries(), &ww_hinge(&v).expect("k")).expect("dims");
            t.check(r == value, || format!("mapped-back minimizer has risk {r} != {value} p=({p})"));
        }
    }
    t
}

fn figure1() -> Tally {
    let mut t = Tally::default();
    let polys = match figure1_data() {
        Ok(p) => p,
        Err(e) => {
            t.check(false, || format!("figure1_data: {e}"));
            return t;
        }
    };
    let table = LossTable::new(3).expect("k = 3");
    t.check(polys.len() == 12, || format!("{} regions", polys.len()));
    let area: Rational = polys.iter().map(|p| p.area()).sum();
    t.check(area == rat(1, 2), || format!("total area {area}"));
    for (label, pts) in FIGURE1_SIXTHS {
        let expected: BTreeSet<(Rational, Rational)> = pts.iter().map(|&(x, y)| (rat(x, 6), rat(y, 6))).collect();
        let found = polys.iter().find(|p| p.label.to_string() == label);
        t.check(found.is_some_and(|p| p.vertex_set() == expected), || {
            format!("region {label}: {:?}", found.map(|p| p.vertices.clone()))
        });
    }
    for poly in &polys {
        let (x, y) = poly.centroid();
        let report = lift(&x, &y).and_then(|p| table.bayes(&p));
        let ok = report.is_ok_and(|r| r.minimizers == [poly.label.clone()]);
        t.check(ok, || format!("centroid of {} is not uniquely labelled", poly.label));
        for (x, y) in &poly.vertices {
            let p = lift(x, y).expect("vertex in simplex");
            let ties = table.bayes(&p).map(|r| r.minimizers.len()).unwrap_or(0);
            let on_edge = x.is_zero() || y.is_zero() || (x + y).is_one();
            t.check(ties >= 3 || (on_edge && ties >= 2), || format!("vertex ({x},{y}) of {} has {ties} ties", poly.label));
        }
    }
    t
}

fn omega(resolution: usize) -> Tally {
    let mut t = Tally::default();
    let cells = match omega_map(resolution) {
        Ok(c) => c,
        Err(e) => {
            t.check(false, || format!("omega_map: {e}"));
            return t;
        }
    };
    let mut separating = 0;
    for c in &cells {
        if c.cs && !c.boundary {
            t.check(c.in_omega_ww(), || format!("omega_cs but not omega_ww at ({},{})", c.p2, c.p3));
        }
        if c.in_omega_ww() && !c.cs {
            separating += 1;
        }
    }
    t.check(separating > 0, || "no point in omega_ww outside omega_cs".into());
    let table = LossTable::new(3).expect("k = 3");
    let at = |x: Rational, y: Rational| opcal_core::regions::omega_cell(&table, &x, &y);
    let c = at(rat(3, 10), rat(3, 10));
    t.check(c.as_ref().is_ok_and(|c| c.in_omega_ww() && !c.cs), || format!("(2/5,3/10,3/10): {c:?}"));
    let c = at(rat(1, 3), rat(1, 3));
    t.check(c.as_ref().is_ok_and(|c| !c.in_omega_ww() && !c.cs), || format!("uniform: {c:?}"));
    t
}

fn arrangement(rng: &mut ChaCha8Rng, n: usize) -> Tally {
    let mut t = Tally::default();
    let scanners: Vec<WitnessScanner> = (3..=5).map(|k| WitnessScanner::new(k).expect("k")).collect();
    for i in 0..n {
        let k = rng.gen_range(3..=5);
        // Small denominators land on hyperplanes often.
        let v: Vec<Rational> = (0..k).map(|_| random_rational(rng, 8, 2)).collect();
        let theta = sign_vector(&v);
        t.check(closed_cell_contains(&theta, &v), || format!("v={} outside its own cell", show(&v)));
        match scanners[k - 3].find(&theta) {
            Ok(Some(w)) => t.check(closed_cell_contains_int(&theta, w), || format!("bad witness for v={}", show(&v))),
            Ok(None) => t.check(false, || format!("no S_k C_Z point in the closed cell of v={}", show(&v))),
            Err(e) => t.check(false, || format!("v={}: {e}", show(&v))),
        }
        if i % 10 == 0 {
            // Generic point plus a tiny offset stays in the same open cell.
            let v: Vec<Rational> = (0..k).map(|_| random_rational(rng, 20, 7)).collect();
            let w: Vec<Rational> = v.iter().map(|x| x + random_rational(rng, 1, 1000) / int(1000)).collect();
            if sign_vector(&v) != sign_vector(&w) {
                continue;
            }
            let lam = rat(rng.gen_range(0..=12), 12);
            let mix: Vec<Rational> = v.iter().zip(&w).map(|(a, b)| &lam * a + (Rational::one() - &lam) * b).collect();
            let (lv, lw) = (ww_hinge(&v).expect("k"), ww_hinge(&w).expect("k"));
            let affine: Vec<Rational> = lv.iter().zip(&lw).map(|(a, b)| &lam * a + (Rational::one() - &lam) * b).collect();
            t.check(ww_hinge(&mix).as_ref() == Ok(&affine), || format!("not affine between {} and {}", show(&v), show(&w)));
        }
    }
    t
}

fn maxinfo(max_k: usize) -> Tally {
    let mut t = Tally::default();
    for k in 3..=max_k {
        let search = WitnessSearch::new(k).expect("k in range");
        let parts: Vec<Tally> = (0..search.len())
            .into_par_iter()
            .map(|i| {
                let mut t = Tally::default();
                let s = &search.table().partitions()[i];
                match search.find(i) {
                    Ok(Some(r)) => {
                        t.result(search.certify(&r), || format!("{s}: margin {} not certified", r.margin));
                        let unique = bayes_op(&r.witness).is_ok_and(|b| b.minimizers == [s.clone()]);
                        t.check(unique, || format!("{s}: not the unique minimizer at ({})", r.witness));
                    }
                    Ok(None) => t.check(false, || format!("{s}: no unique-minimizer witness")),
                    Err(e) => t.check(false, || format!("{s}: {e}")),
                }
                t
            })
            .collect();
        parts.into_iter().for_each(|p| t.merge(p));
    }
    t
}
