//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria 4 and 5 compare against closed forms whose printed versions do
//! not match enumeration; they are evaluated as printed and are expected to
//! fail. The run exits non-zero only when some other criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use meander_core::matrix_models::{estimate, EstimateReport, Model, ModelSpec};
use meander_core::meanders::{
    binomial, binomial_lemma_histogram, binomial_lemma_sides, generating_coefficient, loop_count,
    loop_count_comb, meander_polynomial, MeanderClass,
};
use meander_core::partitions::{
    enumerate_kr_interval, enumerate_nc, enumerate_set_partitions, NcPartition,
};
use meander_core::transforms::{
    boolean_inverse, boolean_transform, free_inverse, free_transform, semi_meander_series,
    shallow_top_series, thin_series, LaurentPoly, TruncSeries, Var,
};
use meander_core::{matrix_models::thin_exact, oracle, verify::random_series};
use num_bigint::{BigInt, BigUint};

const THIN_MAX_N: usize = 12;
const THIN_TIME: Duration = Duration::from_secs(10);
const SHALLOW_TOP_MAX_N: usize = 9;
const SHALLOW_TOP_TIME: Duration = Duration::from_secs(120);
const SEMI_MAX_N: usize = 14;
const COMB_MAX_N: usize = 8;
const BLOCK_PRODUCT_MAX_M: usize = 10;
const BLOCK_PRODUCT_VALUES: [i64; 3] = [1, 2, 3];
const KREWERAS_MAX_N: usize = 7;
const ROUND_TRIP_ORDER: usize = 12;
const ORACLE_ORDER: usize = 10;
const RANDOM_SEEDS: u64 = 4;
const THIN_MODEL_MAX_N: usize = 16;
const THIN_MODEL_MAX_L: usize = 5;
const THIN_MODEL_TIME: Duration = Duration::from_secs(5);
const MC_MAX_N: usize = 3;
const MC_L: usize = 2;
const MC_SAMPLES: usize = 400;
const MC_SEED: u64 = 2024;
const MC_DIMS: [usize; 3] = [8, 16, 32];
const MC_BAND_STDERR: f64 = 3.0;
const MC_BAND_BIAS: f64 = 10.0;
const MC_TREND_STDERR: f64 = 2.0;
const MC_TIME: Duration = Duration::from_secs(300);
const EXPECTED_FAILURES: [usize; 2] = [4, 5];

type Criterion = (usize, &'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.ok &= took < limit;
    o.detail = format!(
        "{}; {:.2} s (limit {} s)",
        o.detail,
        took.as_secs_f64(),
        limit.as_secs()
    );
    o
}

fn first_mismatch(found: Option<String>, cases: usize) -> Outcome {
    match found {
        None => outcome(true, format!("{cases} cases")),
        Some(m) => outcome(false, format!("{cases} cases, first mismatch: {m}")),
    }
}

fn thin_closed_form() -> Outcome {
    timed(THIN_TIME, || {
        let m = thin_series(THIN_MAX_N).m;
        let mut bad = None;
        for n in 1..=THIN_MAX_N {
            let brute = generating_coefficient(MeanderClass::Thin, n).unwrap();
            if bad.is_none() && m.c(n) != &brute {
                bad = Some(format!("n = {n}"));
            }
        }
        first_mismatch(bad, THIN_MAX_N)
    })
}

fn thin_loop_distribution() -> Outcome {
    timed(THIN_TIME, || {
        let mut bad = None;
        let mut cases = 0;
        for n in 1..=THIN_MAX_N {
            let p = meander_polynomial(MeanderClass::Thin, n).unwrap();
            for k in 1..=n {
                cases += 1;
                let expect = BigUint::from(2u32).pow(n as u32 - 1) * binomial(n - 1, k - 1);
                if bad.is_none() && p.coeff(k) != expect {
                    bad = Some(format!("n = {n}, k = {k}: {} vs {expect}", p.coeff(k)));
                }
            }
        }
        first_mismatch(bad, cases)
    })
}

fn shallow_top_series_matches() -> Outcome {
    timed(SHALLOW_TOP_TIME, || {
        let m = shallow_top_series(SHALLOW_TOP_MAX_N).m;
        let mut bad = None;
        for n in 1..=SHALLOW_TOP_MAX_N {
            let brute = generating_coefficient(MeanderClass::ShallowTop, n).unwrap();
            if bad.is_none() && m.c(n) != &brute {
                bad = Some(format!("n = {n}"));
            }
        }
        first_mismatch(bad, SHALLOW_TOP_MAX_N)
    })
}

/// The count exactly as printed: `(1/n) C(n, m-1) C(n+m-1, m-1)`, as a
/// rational so that non-integral values are reported rather than truncated.
fn printed_gnp(n: usize, m: usize) -> (BigUint, BigUint) {
    (
        binomial(n, m - 1) * binomial(n + m - 1, m - 1),
        BigUint::from(n),
    )
}

fn gnp_identity() -> Outcome {
    let m_series = shallow_top_series(SHALLOW_TOP_MAX_N).m;
    let mut bad = None;
    let mut cases = 0;
    let mut failures = 0;
    for n in 1..=SHALLOW_TOP_MAX_N {
        let single = m_series.c(n).set_one(Var::B);
        for m in 1..=n {
            cases += 1;
            let coeff = single.coefficient([n as i32 - 1, (n - m) as i32, 0]);
            let (num, den) = printed_gnp(n, m);
            let matches = BigInt::from(num.clone()) == &coeff * BigInt::from(den.clone());
            if !matches {
                failures += 1;
                if bad.is_none() {
                    bad = Some(format!(
                        "n = {n}, m = {m}: series {coeff}, formula {num}/{den}"
                    ));
                }
            }
        }
    }
    let mut o = first_mismatch(bad, cases);
    o.detail = format!("{failures} of {}", o.detail);
    o
}

/// `[X^n] M(X, Y, 1)` as printed, in the `Y`-grading of the series.
fn printed_semi(n: usize) -> LaurentPoly {
    let k = n.div_ceil(2) as u32;
    let two_y = LaurentPoly::monomial([1, 0, 0], 2);
    if n.is_multiple_of(2) {
        two_y.pow(k - 1) * LaurentPoly::y().pow(k)
    } else {
        (two_y * (LaurentPoly::y() + LaurentPoly::one())).pow(k - 1)
    }
}

fn semi_series() -> Outcome {
    let m = semi_meander_series(SEMI_MAX_N);
    let (mut brute_bad, mut printed_bad, mut count_bad) = (None, Vec::new(), None);
    for n in 1..=SEMI_MAX_N {
        let brute = generating_coefficient(MeanderClass::SemiShallowTop, n)
            .unwrap()
            .set_one(Var::B);
        if brute_bad.is_none() && m.c(n) != &brute {
            brute_bad = Some(n);
        }
        if m.c(n).set_one(Var::A) != printed_semi(n) {
            printed_bad.push(n);
        }
        let meanders = meander_polynomial(MeanderClass::SemiShallowTop, n)
            .unwrap()
            .coeff(1);
        if count_bad.is_none() && meanders != BigUint::from(2u32).pow(n.div_ceil(2) as u32 - 1) {
            count_bad = Some(n);
        }
    }
    let part = |bad: bool| if bad { "FAIL" } else { "PASS" };
    outcome(
        brute_bad.is_none() && printed_bad.is_empty() && count_bad.is_none(),
        format!(
            "coefficients vs enumeration {}, printed two-case formula {}{}, semi-meander count {}",
            part(brute_bad.is_some()),
            part(!printed_bad.is_empty()),
            if printed_bad.is_empty() {
                String::new()
            } else {
                format!(" (n = {printed_bad:?})")
            },
            part(count_bad.is_some()),
        ),
    )
}

fn lemmas() -> Outcome {
    let mut comb_cases = 0;
    let mut comb_ok = true;
    for n in 1..=COMB_MAX_N {
        let betas: Vec<NcPartition> = enumerate_nc(n).unwrap().collect();
        for q in enumerate_kr_interval(n).unwrap() {
            let a = q.to_partition();
            for b in &betas {
                if let Ok(k) = loop_count_comb(&q, b) {
                    comb_cases += 1;
                    comb_ok &= k == loop_count(&a, b).unwrap();
                }
            }
        }
    }

    let mut block_cases = 0;
    let mut block_ok = true;
    for m in 1..=BLOCK_PRODUCT_MAX_M {
        for p in enumerate_set_partitions(m).unwrap() {
            let hist = binomial_lemma_histogram(&p).unwrap();
            for a in BLOCK_PRODUCT_VALUES {
                for b in BLOCK_PRODUCT_VALUES {
                    let (lhs, rhs) =
                        binomial_lemma_sides(&p, &hist, &BigInt::from(a), &BigInt::from(b));
                    block_cases += 1;
                    block_ok &= lhs == rhs;
                }
            }
        }
    }

    let mut kr_cases = 0;
    let mut kr_ok = true;
    for n in 1..=KREWERAS_MAX_N {
        let all: Vec<NcPartition> = enumerate_nc(n).unwrap().collect();
        let kr: Vec<NcPartition> = all.iter().map(NcPartition::kreweras).collect();
        for (a, ka) in all.iter().zip(&kr) {
            for (b, kb) in all.iter().zip(&kr) {
                kr_cases += 1;
                kr_ok &= loop_count(a, b).unwrap() == loop_count(ka, kb).unwrap();
            }
        }
    }
    outcome(
        comb_ok && block_ok && kr_ok,
        format!(
            "comb formula {comb_cases} pairs ({comb_ok}), block products {block_cases} cases ({block_ok}), Kreweras invariance {kr_cases} pairs ({kr_ok})"
        ),
    )
}

fn transforms() -> Outcome {
    let mut inputs: Vec<TruncSeries> = (0..RANDOM_SEEDS)
        .map(|s| random_series(ROUND_TRIP_ORDER, s))
        .collect();
    inputs.push(thin_series(ROUND_TRIP_ORDER).k);
    inputs.push(shallow_top_series(ROUND_TRIP_ORDER).k);
    let mut round_ok = true;
    for k in &inputs {
        round_ok &= boolean_inverse(&boolean_transform(k)) == *k;
        round_ok &= free_inverse(&free_transform(k)) == *k;
        let m = free_transform(k);
        round_ok &= free_transform(&free_inverse(&m)) == m;
    }
    let mut oracle_ok = true;
    for s in 0..RANDOM_SEEDS {
        let k = random_series(ORACLE_ORDER, s);
        oracle_ok &= boolean_transform(&k) == oracle::boolean_moments(&k).unwrap();
        oracle_ok &= free_transform(&k) == oracle::free_moments(&k).unwrap();
    }
    outcome(
        round_ok && oracle_ok,
        format!(
            "round trips on {} series at order {ROUND_TRIP_ORDER} ({round_ok}), partition sums on {RANDOM_SEEDS} random series at order {ORACLE_ORDER} ({oracle_ok})",
            inputs.len()
        ),
    )
}

fn thin_matrix_model() -> Outcome {
    timed(THIN_MODEL_TIME, || {
        let mut bad = None;
        let mut cases = 0;
        for n in 1..=THIN_MODEL_MAX_N {
            for l in 1..=THIN_MODEL_MAX_L {
                cases += 1;
                let expect = BigInt::from(l) * BigInt::from(2 + 2 * l).pow(n as u32 - 1);
                match thin_exact(n, l) {
                    Ok(v) if v == expect => {}
                    Ok(v) => bad = bad.or(Some(format!("n = {n}, l = {l}: {v} vs {expect}"))),
                    Err(e) => bad = bad.or(Some(format!("n = {n}, l = {l}: {e}"))),
                }
            }
        }
        first_mismatch(bad, cases)
    })
}

fn monte_carlo() -> Outcome {
    timed(MC_TIME, || {
        let models = [
            Model::GueDf,
            Model::WishartPt,
            Model::NcNc,
            Model::ShallowTop,
        ];
        let mut problems = Vec::new();
        let mut worst = 0.0f64;
        for model in models {
            for n in 1..=MC_MAX_N {
                let reports: Vec<EstimateReport> = MC_DIMS
                    .iter()
                    .map(|&d| {
                        estimate(&ModelSpec::new(model, n, MC_L, d, MC_SAMPLES, MC_SEED)).unwrap()
                    })
                    .collect();
                let target: f64 = reports[0].exact_target.parse().unwrap();
                let last = reports.last().unwrap();
                let d = last.d as f64;
                let allowance = MC_BAND_STDERR * last.stderr + MC_BAND_BIAS * target / (d * d);
                let err = (last.mean - target).abs();
                worst = worst.max(err / allowance);
                if err > allowance {
                    problems.push(format!(
                        "{model} n = {n}: |{:.4} - {target}| > {allowance:.4}",
                        last.mean
                    ));
                }
                let slack = MC_TREND_STDERR * reports.iter().map(|r| r.stderr).fold(0.0, f64::max);
                for w in reports.windows(2) {
                    let (e0, e1) = ((w[0].mean - target).abs(), (w[1].mean - target).abs());
                    if e1 > e0 + slack {
                        problems.push(format!(
                            "{model} n = {n}: error rises from {e0:.4} at d = {} to {e1:.4} at d = {}",
                            w[0].d, w[1].d
                        ));
                    }
                }
            }
        }
        outcome(
            problems.is_empty(),
            if problems.is_empty() {
                format!(
                    "{} model orders, largest error/allowance at d = 32 is {worst:.3}",
                    4 * MC_MAX_N
                )
            } else {
                problems.join("; ")
            },
        )
    })
}

fn run_binary(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_meander"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 2] = [
        &["verify", "all"],
        &[
            "simulate",
            "nc-nc",
            "2",
            "2",
            "--d",
            "8,12",
            "--samples",
            "50",
            "--seed",
            "7",
        ],
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for args in runs {
        let (a, ca) = run_binary(args);
        let (b, cb) = run_binary(args);
        let same = a == b && ca == cb && ca == 0 && !a.is_empty();
        ok &= same;
        notes.push(format!(
            "`{}` {} bytes ({})",
            args.join(" "),
            a.len(),
            if same { "identical" } else { "differs" }
        ));
    }
    outcome(ok, notes.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "thin moment series vs enumeration", thin_closed_form),
        (2, "thin loop distribution", thin_loop_distribution),
        (
            3,
            "shallow-top moment series vs enumeration",
            shallow_top_series_matches,
        ),
        (
            4,
            "printed shallow-top meander count by blocks",
            gnp_identity,
        ),
        (5, "semi-meander series", semi_series),
        (6, "combinatorial lemmas", lemmas),
        (7, "transform engine", transforms),
        (8, "thin matrix model trace", thin_matrix_model),
        (9, "Monte Carlo matrix models", monte_carlo),
        (10, "CLI determinism", determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let o = f();
        println!(
            "{} {id:>2} {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.ok && !EXPECTED_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
