//! Command bodies. Each returns the full output text so that stdout and
//! `--out` receive identical bytes.

use std::ops::RangeInclusive;

use meander_core::matrix_models::{estimate, EstimateReport, Model, ModelSpec, NcVariant};
use meander_core::meanders::{
    meander_polynomial_with_budget, rainbow, LoopPolynomial, MeanderClass,
};
use meander_core::partitions::{
    enumerate_interval, enumerate_kr_interval, enumerate_nc, NcPartition,
};
use meander_core::transforms::{semi_meander_series, shallow_top_series, thin_series, TruncSeries};
use meander_core::verify::{self, Suite, VerifyOptions};
use meander_core::Error;

use crate::{Failure, Outcome, EXIT_OK, EXIT_VERIFY};

/// Largest order streamed by `enumerate` without an override.
pub fn enumerate_budget(kind: &str) -> Option<usize> {
    match kind {
        "nc" => Some(12),
        "interval" | "kr-interval" => Some(20),
        "rainbow" => Some(1000),
        _ => None,
    }
}

fn partition_line(p: &NcPartition, csv: bool, index: usize) -> String {
    if csv {
        format!("{index},\"{p}\"\n")
    } else {
        format!(
            "{}\n",
            serde_json::to_string(p).expect("partition serializes")
        )
    }
}

pub fn enumerate(
    kind: &str,
    n: usize,
    csv: bool,
    budget_override: Option<usize>,
) -> Result<String, Failure> {
    let default = enumerate_budget(kind).ok_or_else(|| {
        Failure::usage(format!(
            "unknown kind '{kind}' (nc, interval, kr-interval, rainbow)"
        ))
    })?;
    let budget = budget_override.unwrap_or(default);
    if n > budget {
        return Err(Error::ResourceLimit {
            what: format!("{kind} enumeration"),
            n,
            budget,
        }
        .into());
    }
    let parts: Box<dyn Iterator<Item = NcPartition>> = match kind {
        "nc" => Box::new(enumerate_nc(n)?),
        "interval" => Box::new(enumerate_interval(n)?),
        "kr-interval" => Box::new(enumerate_kr_interval(n)?.map(|q| q.to_partition())),
        _ => Box::new(std::iter::once(rainbow(n)?)),
    };
    let mut text = String::new();
    if csv {
        text.push_str("index,partition\n");
    }
    let mut count = 0;
    for p in parts {
        count += 1;
        text.push_str(&partition_line(&p, csv, count));
    }
    if csv {
        text.push_str(&format!("count,{count}\n"));
    } else {
        text.push_str(&format!("{{\"count\":{count}}}\n"));
    }
    Ok(text)
}

/// `5`, `1..5` or `1..=5`; both ends inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::usage(format!("bad range '{s}'"));
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            )
        }
        None => {
            let v = s.parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

pub fn polynomial(
    class: &str,
    range: &str,
    csv: bool,
    budget_override: Option<usize>,
) -> Result<String, Failure> {
    let class: MeanderClass = class.parse()?;
    let range = parse_range(range)?;
    let budget = budget_override.unwrap_or(class.budget());
    let polys: Vec<LoopPolynomial> = range
        .map(|n| meander_polynomial_with_budget(class, n, budget))
        .collect::<meander_core::Result<_>>()?;
    let mut text = String::new();
    if csv {
        text.push_str(LoopPolynomial::CSV_HEADER);
        text.push('\n');
        for p in &polys {
            text.push_str(&p.csv_rows());
        }
    } else {
        for p in &polys {
            text.push_str(&serde_json::to_string(p).expect("polynomial serializes"));
            text.push('\n');
        }
    }
    Ok(text)
}

pub fn series(which: &str, order: usize, cumulants: bool, csv: bool) -> Result<String, Failure> {
    if order == 0 {
        return Err(Failure::usage("order must be at least 1"));
    }
    let s: TruncSeries = match (which, cumulants) {
        ("thin", false) => thin_series(order).m,
        ("thin", true) => thin_series(order).k,
        ("shallow-top", false) => shallow_top_series(order).m,
        ("shallow-top", true) => shallow_top_series(order).k,
        ("semi", false) => semi_meander_series(order),
        ("semi", true) => return Err(Failure::usage("the semi series has no cumulant form")),
        _ => {
            return Err(Failure::usage(format!(
                "unknown series '{which}' (thin, shallow-top, semi)"
            )))
        }
    };
    if !csv {
        return Ok(format!("{}\n", s.to_json()));
    }
    let mut text = String::from("n,eY,eA,eB,coeff\n");
    for rec in s.to_records() {
        for t in rec.terms {
            text.push_str(&format!(
                "{},{},{},{},{}\n",
                rec.n, t.e_y, t.e_a, t.e_b, t.coeff
            ));
        }
    }
    Ok(text)
}

pub fn verify(suite: &str, opts: &VerifyOptions, csv: bool) -> Result<Outcome, Failure> {
    let suite: Suite = suite.parse()?;
    let report = verify::run(suite, opts)?;
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    };
    let text = if csv {
        let mut t = String::from("status,suite,check,scope,cases,counterexample\n");
        for c in &report.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let cx = c
                .counterexample
                .as_deref()
                .unwrap_or("")
                .replace('"', "\"\"");
            t.push_str(&format!(
                "{status},{},{},\"{}\",{},\"{cx}\"\n",
                c.suite, c.name, c.scope, c.cases
            ));
        }
        t
    } else {
        report.render()
    };
    Ok(Outcome { text, code })
}

pub struct SimulateRequest<'a> {
    pub model: &'a str,
    pub n: usize,
    pub l: usize,
    pub ds: &'a [usize],
    pub samples: usize,
    pub seed: u64,
    pub variant: &'a str,
    pub budget_override: Option<usize>,
}

pub fn simulate(req: &SimulateRequest<'_>, csv: bool) -> Result<String, Failure> {
    let model: Model = req.model.parse()?;
    let variant: NcVariant = req.variant.parse()?;
    if req.ds.is_empty() {
        return Err(Failure::usage("--d needs at least one dimension"));
    }
    // The thin model is exact, so a single row stands for every d.
    let ds: Vec<usize> = if model == Model::Thin {
        vec![0]
    } else {
        req.ds.to_vec()
    };
    let mut reports: Vec<EstimateReport> = Vec::new();
    for &d in &ds {
        let mut spec = ModelSpec::new(model, req.n, req.l, d, req.samples, req.seed);
        spec.variant = variant;
        spec.target_budget = req.budget_override;
        reports.push(estimate(&spec)?);
    }
    let mut text = String::new();
    if csv {
        text.push_str(EstimateReport::CSV_HEADER);
        text.push('\n');
        for r in &reports {
            text.push_str(&r.csv_row());
            text.push('\n');
        }
    } else {
        for r in &reports {
            text.push_str(&serde_json::to_string(r).expect("report serializes"));
            text.push('\n');
        }
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..5").unwrap(), 1..=5);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        for bad in ["0..3", "5..2", "x", "1..", ""] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn enumerate_counts() {
        let t = enumerate("nc", 3, false, None).unwrap();
        assert_eq!(t.lines().count(), 6);
        assert!(t.ends_with("{\"count\":5}\n"));
        assert_eq!(
            enumerate("interval", 1, false, None).unwrap(),
            "[[1]]\n{\"count\":1}\n"
        );
        let c = enumerate("nc", 2, true, None).unwrap();
        assert_eq!(c, "index,partition\n1,\"{1}⊔{2}\"\n2,\"{1,2}\"\ncount,2\n");
        let e = enumerate("nc", 13, false, None).unwrap_err();
        assert_eq!(e.code, crate::EXIT_LIMIT);
        assert_eq!(
            enumerate("trees", 3, false, None).unwrap_err().code,
            crate::EXIT_USAGE
        );
    }

    #[test]
    fn thin_simulation_is_exact() {
        let req = SimulateRequest {
            model: "thin",
            n: 3,
            l: 2,
            ds: &[8, 16],
            samples: 10,
            seed: 1,
            variant: "independent",
            budget_override: None,
        };
        let t = simulate(&req, true).unwrap();
        assert_eq!(
            t,
            format!("{}\nthin,3,2,0,0,1,72,0,72\n", EstimateReport::CSV_HEADER)
        );
    }
}
