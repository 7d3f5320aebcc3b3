//! Closed forms against exhaustive enumeration, grouped into suites.
//!
//! Every check walks its cases in increasing `n` and stops at the first
//! failure, so the reported counterexample is the smallest one reached.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix_models::thin_exact;
use crate::meanders::{
    binomial_lemma_histogram, binomial_lemma_sides, cumulant_distribution, gnp_count,
    joint_distribution, loop_count, loop_count_comb, semi_loop_distribution, thin_count,
    LoopPolynomial, MeanderClass, BINOMIAL_LEMMA_MAX,
};
use crate::oracle;
use crate::partitions::{
    enumerate_interval, enumerate_kr_interval, enumerate_nc, enumerate_set_partitions,
    kr_interval_meet_nc, refinement_leq, CombSubset, NcPartition,
};
use crate::transforms::{
    boolean_inverse, boolean_transform, free_inverse, free_transform, free_transform_fixed_point,
    last_block_sum, semi_meander_series, shallow_top_series, thin_series, LaurentPoly, TruncSeries,
    Var,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Suite {
    Lemmas,
    Thin,
    ShallowTop,
    Semi,
    Transforms,
    All,
}

impl Suite {
    pub const LEAVES: [Suite; 5] = [
        Suite::Lemmas,
        Suite::Thin,
        Suite::ShallowTop,
        Suite::Semi,
        Suite::Transforms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Thin => "thin",
            Suite::ShallowTop => "shallow-top",
            Suite::Semi => "semi",
            Suite::Transforms => "transforms",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Suite::LEAVES
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Replaces the largest order of every enumerative check.
    pub max_n: Option<usize>,
    /// Replaces the per-class enumeration budgets.
    pub budget_override: Option<usize>,
    /// Perturbs one closed-form value per suite at `n = 3` so that the
    /// failure path can be exercised.
    pub inject_fault: bool,
}

impl VerifyOptions {
    fn limit(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }

    fn budget(&self, class: MeanderClass) -> usize {
        self.budget_override.unwrap_or(class.budget())
    }

    fn tamper(&self, n: usize) -> bool {
        self.inject_fault && n == 3
    }
}

/// Outcome of one check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub scope: String,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {}/{} ({}): {} cases",
            self.suite, self.name, self.scope, self.cases
        );
        if let Some(c) = &self.counterexample {
            s.push_str("\n  counterexample: ");
            s.push_str(c);
        }
        s
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// One line per check, then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "verify {}: {} checks, {} passed, {} failed\n",
            self.suite,
            self.checks.len(),
            self.checks.len() - failed,
            failed
        ));
        out
    }
}

/// Counts cases and keeps the first failure.
struct Tally {
    cases: u64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failure: None,
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn finish(self, suite: Suite, name: &'static str, scope: String) -> Check {
        Check {
            suite,
            name,
            scope,
            cases: self.cases,
            counterexample: self.failure,
        }
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let leaves: Vec<Suite> = match suite {
        Suite::All => Suite::LEAVES.to_vec(),
        s => vec![s],
    };
    for s in leaves {
        checks.extend(match s {
            Suite::Lemmas => lemmas(opts)?,
            Suite::Thin => thin(opts)?,
            Suite::ShallowTop => shallow_top(opts)?,
            Suite::Semi => semi(opts)?,
            Suite::Transforms => transforms(opts)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(VerifyReport { suite, checks })
}

fn poly_mismatch(n: usize, expected: &LaurentPoly, got: &LaurentPoly) -> String {
    format!("n = {n}: closed form {expected} vs enumeration {got}")
}

fn bump(p: &LaurentPoly) -> LaurentPoly {
    p + &LaurentPoly::y()
}

fn lemmas(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Lemmas;
    let big_n = opts.limit(8);
    let mut out = Vec::new();

    // Kreweras complements of interval partitions are exactly the combs.
    let mut t = Tally::new();
    for n in 1..=big_n {
        let combs: HashSet<NcPartition> = enumerate_kr_interval(n)?
            .map(|q| q.to_partition())
            .collect();
        let mut images = HashSet::new();
        for p in enumerate_interval(n)? {
            let k = p.kreweras();
            let q = CombSubset::from_partition(&k);
            let mut ok = q.is_ok() && combs.contains(&k);
            if opts.tamper(n) {
                ok = false;
            }
            t.case(ok, || format!("n = {n}: Kr({p}) = {k} is not a comb"));
            images.insert(k);
        }
        t.case(images == combs, || {
            format!(
                "n = {n}: {} complements vs {} combs",
                images.len(),
                combs.len()
            )
        });
        if t.failed() {
            break;
        }
    }
    out.push(t.finish(s, "kr-interval-combs", format!("n <= {big_n}")));

    // Kr-interval meet against the greatest comb below both arguments.
    let mut t = Tally::new();
    for n in 1..=big_n {
        let combs: Vec<CombSubset> = enumerate_kr_interval(n)?.collect();
        let below = |p: &NcPartition| -> Result<Vec<bool>> {
            combs
                .iter()
                .map(|c| refinement_leq(&c.to_partition(), p))
                .collect()
        };
        let comb_below: Vec<Vec<bool>> = combs
            .iter()
            .map(|c| below(&c.to_partition()))
            .collect::<Result<_>>()?;
        for b in enumerate_nc(n)? {
            let under_b = below(&b)?;
            for (ia, a) in combs.iter().enumerate() {
                let common: Vec<usize> = (0..combs.len())
                    .filter(|&j| comb_below[ia][j] && under_b[j])
                    .collect();
                let top = common
                    .iter()
                    .copied()
                    .max_by_key(|&j| combs[j].len())
                    .expect("0_n is below both");
                let greatest = common
                    .iter()
                    .all(|&j| combs[j].mask() & !combs[top].mask() == 0);
                let meet = kr_interval_meet_nc(&a.to_partition(), &b)?;
                let ok = greatest && meet == combs[top].to_partition();
                t.case(ok, || {
                    format!(
                        "n = {n}: comb {a} and {b}: meet {meet}, expected {}",
                        combs[top]
                    )
                });
            }
        }
        if t.failed() {
            break;
        }
    }
    out.push(t.finish(s, "kr-interval-meet", format!("n <= {big_n}")));

    // Loop formula for combs with trivial meet.
    let mut t = Tally::new();
    for n in 1..=big_n {
        let betas: Vec<NcPartition> = enumerate_nc(n)?.collect();
        for q in enumerate_kr_interval(n)? {
            let a = q.to_partition();
            for b in &betas {
                let Ok(formula) = loop_count_comb(&q, b) else {
                    continue;
                };
                let direct = loop_count(&a, b)?;
                let geometric = oracle::loop_count_geometric(&a, b)?;
                t.case(formula == direct && direct == geometric, || {
                    format!("n = {n}: Q = {q}, beta = {b}: formula {formula}, cycles {direct}, curves {geometric}")
                });
            }
        }
        if t.failed() {
            break;
        }
    }
    out.push(t.finish(s, "comb-loop-formula", format!("n <= {big_n}")));

    // Block-product identity over all set partitions.
    let big_m = opts.max_n.map_or(10, |m| m.min(BINOMIAL_LEMMA_MAX));
    let mut t = Tally::new();
    'outer: for m in 1..=big_m {
        for p in enumerate_set_partitions(m)? {
            let hist = binomial_lemma_histogram(&p)?;
            for a in 1..=3i64 {
                for b in 1..=3i64 {
                    let (lhs, rhs) =
                        binomial_lemma_sides(&p, &hist, &BigInt::from(a), &BigInt::from(b));
                    t.case(lhs == rhs, || {
                        format!(
                            "m = {m}, {:?}, (A, B) = ({a}, {b}): {lhs} vs {rhs}",
                            p.blocks()
                        )
                    });
                    if t.failed() {
                        break 'outer;
                    }
                }
            }
        }
    }
    out.push(t.finish(
        s,
        "block-product-identity",
        format!("m <= {big_m}, A, B in 1..=3"),
    ));

    // Kreweras invariance of the loop count, and cycles against curves.
    let kr_n = opts.limit(7);
    let mut t = Tally::new();
    for n in 1..=kr_n {
        let all: Vec<NcPartition> = enumerate_nc(n)?.collect();
        let kr: Vec<NcPartition> = all.iter().map(NcPartition::kreweras).collect();
        for (a, ka) in all.iter().zip(&kr) {
            for (b, kb) in all.iter().zip(&kr) {
                let before = loop_count(a, b)?;
                let after = loop_count(ka, kb)?;
                let curves = oracle::loop_count_geometric(a, b)?;
                t.case(before == after && before == curves, || {
                    format!("n = {n}: ({a}, {b}) has {before} loops, complements {after}, curves {curves}")
                });
            }
        }
        if t.failed() {
            break;
        }
    }
    out.push(t.finish(s, "kreweras-loop-invariance", format!("n <= {kr_n}")));
    Ok(out)
}

fn loop_table(
    class: MeanderClass,
    n: usize,
    budget: usize,
) -> Result<(LaurentPoly, LoopPolynomial)> {
    let joint = joint_distribution(class, n, budget)?;
    let by_norm: Vec<BigUint> = joint.by_norm().into_iter().map(BigUint::from).collect();
    Ok((
        joint.to_poly(),
        LoopPolynomial::from_norm_grading(class, n, &by_norm)?,
    ))
}

fn thin(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Thin;
    let class = MeanderClass::Thin;
    let big_n = opts.limit(12);
    let budget = opts.budget(class);
    let series = thin_series(big_n);
    let (mut tm, mut tk, mut tl, mut tx) = (Tally::new(), Tally::new(), Tally::new(), Tally::new());
    for n in 1..=big_n {
        let (brute, loops) = loop_table(class, n, budget)?;
        let mut closed = series.m.c(n).clone();
        if opts.tamper(n) {
            closed = bump(&closed);
        }
        tm.case(closed == brute, || poly_mismatch(n, &closed, &brute));

        let cum = cumulant_distribution(class, n, budget)?.to_poly();
        tk.case(series.k.c(n) == &cum, || {
            poly_mismatch(n, series.k.c(n), &cum)
        });

        for k in 1..=n {
            let expect = thin_count(n, k)?;
            let got = loops.coeff(k);
            tl.case(expect == got, || {
                format!("n = {n}, k = {k}: closed form {expect} vs enumeration {got}")
            });
        }

        for l in 1..=5usize {
            let exact = thin_exact(n, l)?;
            let poly = loops.evaluate(&BigInt::from(l));
            tx.case(exact == poly, || {
                format!("n = {n}, l = {l}: matrix trace {exact} vs polynomial {poly}")
            });
        }
        if tm.failed() || tk.failed() || tl.failed() || tx.failed() {
            break;
        }
    }
    let scope = format!("n <= {big_n}");
    Ok(vec![
        tm.finish(s, "moment-series", scope.clone()),
        tk.finish(s, "cumulant-series", scope.clone()),
        tl.finish(s, "loop-distribution", scope.clone()),
        tx.finish(s, "matrix-model-trace", format!("{scope}, l <= 5")),
    ])
}

fn shallow_top(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::ShallowTop;
    let class = MeanderClass::ShallowTop;
    let big_n = opts.limit(9);
    let budget = opts.budget(class);
    let series = shallow_top_series(big_n);
    let (mut tm, mut tk, mut tg) = (Tally::new(), Tally::new(), Tally::new());
    for n in 1..=big_n {
        let (brute, _) = loop_table(class, n, budget)?;
        let mut closed = series.m.c(n).clone();
        if opts.tamper(n) {
            closed = bump(&closed);
        }
        tm.case(closed == brute, || poly_mismatch(n, &closed, &brute));

        let cum = cumulant_distribution(class, n, budget)?.to_poly();
        tk.case(series.k.c(n) == &cum, || {
            poly_mismatch(n, series.k.c(n), &cum)
        });

        // One loop means ‖α⁻¹β‖ = n - 1; m blocks of α means ‖α‖ = n - m.
        let single = series.m.c(n).set_one(Var::B);
        for m in 1..=n {
            let coeff = single.coefficient([n as i32 - 1, (n - m) as i32, 0]);
            let expect = BigInt::from(gnp_count(n, m)?);
            tg.case(coeff == expect, || {
                format!("n = {n}, m = {m}: series {coeff} vs count {expect}")
            });
        }
        if tm.failed() || tk.failed() || tg.failed() {
            break;
        }
    }
    let scope = format!("n <= {big_n}");
    Ok(vec![
        tm.finish(s, "moment-series", scope.clone()),
        tk.finish(s, "cumulant-series", scope.clone()),
        tg.finish(s, "meanders-by-top-blocks", scope),
    ])
}

fn semi(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Semi;
    let class = MeanderClass::SemiShallowTop;
    let big_n = opts.limit(14);
    let budget = opts.budget(class);
    let series = semi_meander_series(big_n);
    let (mut tm, mut tl, mut tc) = (Tally::new(), Tally::new(), Tally::new());
    for n in 1..=big_n {
        let (brute, loops) = loop_table(class, n, budget)?;
        let brute = brute.set_one(Var::B);
        let mut closed = series.c(n).clone();
        if opts.tamper(n) {
            closed = bump(&closed);
        }
        tm.case(closed == brute, || poly_mismatch(n, &closed, &brute));

        let expect = semi_loop_distribution(n)?;
        let from_series = series.c(n).set_one(Var::A);
        let mut ok = expect == loops;
        for r in 0..n {
            ok &= from_series.coefficient([r as i32, 0, 0])
                == BigInt::from(expect.to_norm_grading()[r].clone());
        }
        tl.case(ok, || {
            format!(
                "n = {n}: closed form {:?} vs enumeration {:?}",
                expect.coeffs(),
                loops.coeffs()
            )
        });

        let meanders = loops.coeff(1);
        let count = BigUint::from(2u32).pow(n.div_ceil(2) as u32 - 1);
        tc.case(meanders == count, || {
            format!("n = {n}: {meanders} semi-meanders, expected {count}")
        });
        if tm.failed() || tl.failed() || tc.failed() {
            break;
        }
    }
    let scope = format!("n <= {big_n}");
    Ok(vec![
        tm.finish(s, "moment-series", scope.clone()),
        tl.finish(s, "loop-distribution", scope.clone()),
        tc.finish(s, "semi-meander-count", scope),
    ])
}

/// Deterministic pseudo-random series with few terms per coefficient, so
/// that products over many blocks stay small.
pub fn random_series(order: usize, seed: u64) -> TruncSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TruncSeries::from_fn(order, |_| {
        let c = rng.random_range(-3i64..=3);
        let mut p = LaurentPoly::constant(c);
        let e = [
            rng.random_range(0..=2),
            rng.random_range(0..=1),
            rng.random_range(-1..=1),
        ];
        p.add_term(e, BigInt::from(rng.random_range(-2i64..=2)));
        p
    })
}

fn transforms(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Transforms;
    let order = opts.limit(12);
    let oracle_order = opts.limit(10);
    let mut inputs = vec![
        ("thin K".to_string(), thin_series(order).k),
        ("shallow-top K".to_string(), shallow_top_series(order).k),
    ];
    for seed in 0..4u64 {
        inputs.push((format!("random seed {seed}"), random_series(order, seed)));
    }

    let (mut tb, mut tf, mut tp) = (Tally::new(), Tally::new(), Tally::new());
    for (label, k) in &inputs {
        let m = boolean_transform(k);
        let mut back = boolean_inverse(&m);
        if opts.inject_fault && label == "thin K" {
            back = back.add(&TruncSeries::x(order))?;
        }
        tb.case(&back == k, || first_difference(label, k, &back));

        let m = free_transform(k);
        let back = free_inverse(&m);
        tf.case(&back == k, || first_difference(label, k, &back));

        let fixed = free_transform_fixed_point(k)?;
        tp.case(fixed == m, || first_difference(label, &fixed, &m));
    }

    let (mut ob, mut of, mut ol) = (Tally::new(), Tally::new(), Tally::new());
    for seed in 0..3u64 {
        let label = format!("random seed {seed}");
        let k = random_series(oracle_order, seed);
        let direct = oracle::boolean_moments(&k)?;
        let fast = boolean_transform(&k);
        ob.case(direct == fast, || first_difference(&label, &direct, &fast));

        let direct = oracle::free_moments(&k)?;
        let fast = free_transform(&k);
        of.case(direct == fast, || first_difference(&label, &direct, &fast));

        let h = random_series(oracle_order, seed + 100);
        let direct = oracle::last_block_moments(&h, &k)?;
        let fast = last_block_sum(&h, &k)?;
        ol.case(direct == fast, || first_difference(&label, &direct, &fast));
    }
    Ok(vec![
        tb.finish(s, "boolean-round-trip", format!("order {order}")),
        tf.finish(s, "free-round-trip", format!("order {order}")),
        tp.finish(s, "free-fixed-point", format!("order {order}")),
        ob.finish(
            s,
            "boolean-vs-interval-sum",
            format!("order {oracle_order}"),
        ),
        of.finish(s, "free-vs-nc-sum", format!("order {oracle_order}")),
        ol.finish(s, "last-block-vs-nc-sum", format!("order {oracle_order}")),
    ])
}

fn first_difference(label: &str, expected: &TruncSeries, got: &TruncSeries) -> String {
    let order = expected.order().min(got.order());
    for n in 1..=order {
        if expected.c(n) != got.c(n) {
            return format!(
                "{label}, coefficient {n}: {} vs {}",
                expected.c(n),
                got.c(n)
            );
        }
    }
    format!("{label}: orders {} vs {}", expected.order(), got.order())
}
