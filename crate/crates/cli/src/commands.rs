use gaussmod::asymptotics::{asym_rows, rounding_terms};
use gaussmod::partitions::{p_le_k_prefix, qbinom_coeffs};
use gaussmod::periods::{minimal_period, pi_n, QPeriodTable};
use gaussmod::quasifit::{
    check_slope_period_of, fit_table, fit_window, genfun, quasi_period, CountTable, QuasiFit,
};
use gaussmod::verify::{run_suite, tally, Ranges, Suite};
use gaussmod::{Error, Modulus, Result};
use num_bigint::BigUint;

use crate::output::{Cell, Data, Report, Table};

fn to_len(v: &BigUint, what: &str) -> Result<usize> {
    usize::try_from(v)
        .ok()
        .filter(|&x| x <= 1 << 32)
        .ok_or_else(|| Error::TooLarge(format!("{what} = {v}")))
}

fn seq(values: &[u32]) -> Data {
    Data::Seq(values.iter().map(Cell::int).collect())
}

pub fn coeffs(n: usize, k: usize, m: Modulus) -> Result<Report> {
    let v = qbinom_coeffs(n, k, m)?;
    Ok(Report {
        command: "coeffs",
        params: vec![("n", Cell::int(n)), ("k", Cell::int(k)), ("mod", Cell::int(m))],
        data: seq(v.values()),
        failed: false,
    })
}

pub fn partitions(k: usize, m: Modulus, len: usize) -> Result<Report> {
    let v = p_le_k_prefix(k, m, len)?;
    Ok(Report {
        command: "partitions",
        params: vec![("k", Cell::int(k)), ("mod", Cell::int(m)), ("len", Cell::int(len))],
        data: seq(v.values()),
        failed: false,
    })
}

pub fn period(k: usize, m: Modulus, verify: bool) -> Result<Report> {
    let pi = pi_n(m, k as u64)?;
    let mut fields = vec![
        ("k", Cell::int(k)),
        ("mod", Cell::int(m)),
        ("period", Cell::int(&pi)),
    ];
    let mut failed = false;
    if verify {
        let len = 3 * to_len(&pi, "period")?;
        let observed = match minimal_period(&p_le_k_prefix(k, m, len)?) {
            Ok(p) => Cell::int(p),
            Err(Error::NoPeriodFound { .. }) => Cell::Null,
            Err(e) => return Err(e),
        };
        let ok = observed == Cell::int(&pi);
        failed = !ok;
        fields.push(("observed_period", observed));
        fields.push(("verified", Cell::Bool(ok)));
    }
    Ok(Report {
        command: "period",
        params: vec![
            ("k", Cell::int(k)),
            ("mod", Cell::int(m)),
            ("verify", Cell::Bool(verify)),
        ],
        data: Data::Record {
            fields,
            tables: vec![],
        },
        failed,
    })
}

pub fn qperiod(k: usize, m: Modulus) -> Result<Report> {
    let t = QPeriodTable::build(m, k as u64)?;
    t.check_invariants()?;
    let mut trace = Table::new("trace", &["k", "pi", "ratio", "branch", "pi_prime"]);
    for s in t.steps() {
        trace.push(vec![
            Cell::int(s.k),
            Cell::int(&s.pi),
            Cell::int(&s.ratio),
            Cell::text(s.branch.label()),
            Cell::int(&s.pi_prime),
        ]);
    }
    Ok(Report {
        command: "qperiod",
        params: vec![("k", Cell::int(k)), ("mod", Cell::int(m))],
        data: Data::Record {
            fields: vec![
                ("k", Cell::int(k)),
                ("mod", Cell::int(m)),
                ("pi", Cell::int(t.pi(k as u64))),
                ("pi_prime", Cell::int(t.pi_prime(k as u64))),
            ],
            tables: vec![trace],
        },
        failed: false,
    })
}

pub fn count(k: usize, r: u32, m: Modulus, from: usize, to: usize) -> Result<Report> {
    if from > to {
        return Err(Error::InvalidArgs(format!("--from {from} exceeds --to {to}")));
    }
    if r >= m.get() {
        return Err(Error::InvalidResidue {
            residue: u64::from(r),
            modulus: u64::from(m.get()),
        });
    }
    let table = CountTable::build(k, m, to);
    let mut rows = Table::new("counts", &["n", "f"]);
    for n in from..=to {
        rows.push(vec![Cell::int(n), Cell::int(table.get(n, r))]);
    }
    Ok(Report {
        command: "count",
        params: vec![
            ("k", Cell::int(k)),
            ("r", Cell::int(r)),
            ("mod", Cell::int(m)),
            ("from", Cell::int(from)),
            ("to", Cell::int(to)),
        ],
        data: Data::Record {
            fields: vec![],
            tables: vec![rows],
        },
        failed: false,
    })
}

fn fit_with_table(k: usize, r: u32, m: Modulus, min_n: usize) -> Result<(QuasiFit, CountTable)> {
    if k == 0 {
        return Err(Error::InvalidArgs("k must be at least 1".into()));
    }
    let q = quasi_period(k, m)?;
    let table = CountTable::build(k, m, fit_window(k, q).max(min_n));
    Ok((fit_table(&table, r)?, table))
}

fn pieces_table(f: &QuasiFit) -> Table {
    let mut t = Table::new("pieces", &["i", "intercept", "slope", "sample_base"]);
    for (p, base) in f.pieces.iter().zip(&f.sample_base) {
        t.push(vec![
            Cell::int(p.class),
            Cell::int(p.intercept),
            Cell::int(p.slope),
            Cell::int(base),
        ]);
    }
    t
}

pub fn fit(k: usize, r: u32, m: Modulus) -> Result<Report> {
    let (f, _) = fit_with_table(k, r, m, 0)?;
    let mut fields = vec![
        ("k", Cell::int(k)),
        ("r", Cell::int(r)),
        ("mod", Cell::int(m)),
        ("quasi_period", Cell::int(f.quasi_period)),
    ];
    let mut failed = false;
    match check_slope_period_of(&f) {
        Ok(s) => {
            failed = !s.passed;
            fields.extend([
                ("slope_shift", Cell::int(s.shift)),
                ("slope_period", Cell::text(if s.passed { "pass" } else { "fail" })),
                ("min_slope_period", Cell::int(s.min_slope_period)),
                ("zero_sum_below", Cell::Bool(s.in_hypothesis)),
            ]);
        }
        Err(Error::HypothesisNotMet(_)) => {
            fields.extend([
                ("slope_shift", Cell::Null),
                ("slope_period", Cell::text("skipped")),
                ("min_slope_period", Cell::Null),
                ("zero_sum_below", Cell::Null),
            ]);
        }
        Err(e) => return Err(e),
    }
    Ok(Report {
        command: "fit",
        params: vec![("k", Cell::int(k)), ("r", Cell::int(r)), ("mod", Cell::int(m))],
        data: Data::Record {
            fields,
            tables: vec![pieces_table(&f)],
        },
        failed,
    })
}

pub fn genfun_cmd(k: usize, r: u32, m: Modulus, terms: usize) -> Result<Report> {
    if terms == 0 {
        return Err(Error::InvalidArgs("--terms must be positive".into()));
    }
    let (f, table) = fit_with_table(k, r, m, terms - 1)?;
    let g = genfun(&f);
    let series = g.expand(terms);
    let mut expansion = Table::new("expansion", &["n", "series", "count"]);
    let mut matches = true;
    for (n, &s) in series.iter().enumerate() {
        let c = table.get(n, r);
        matches &= s == c as i64;
        expansion.push(vec![Cell::int(n), Cell::int(s), Cell::int(c)]);
    }
    let mut numerator = Table::new("numerator", &["power", "coefficient"]);
    for (i, c) in g.numerator().iter().enumerate().filter(|(_, c)| **c != 0) {
        numerator.push(vec![Cell::int(i), Cell::int(c)]);
    }
    let mut head = Table::new("head_correction", &["power", "coefficient"]);
    for (i, c) in g.head_correction.iter().enumerate() {
        head.push(vec![Cell::int(i), Cell::int(c)]);
    }
    let mut pieces = Table::new("pieces", &["i", "b", "m"]);
    for (i, (b, s)) in g.numerator_b.iter().zip(&g.numerator_m).enumerate() {
        pieces.push(vec![Cell::int(i), Cell::int(b), Cell::int(s)]);
    }
    Ok(Report {
        command: "genfun",
        params: vec![
            ("k", Cell::int(k)),
            ("r", Cell::int(r)),
            ("mod", Cell::int(m)),
            ("terms", Cell::int(terms)),
        ],
        data: Data::Record {
            fields: vec![
                ("quasi_period", Cell::int(g.q)),
                ("denominator", Cell::text(format!("(1 - x^{})^2", g.q))),
                ("expansion_matches", Cell::Bool(matches)),
            ],
            tables: vec![pieces, head, numerator, expansion],
        },
        failed: !matches,
    })
}

pub fn verify(suite: Suite, ranges: Ranges) -> Result<Report> {
    let outcomes = run_suite(suite, &ranges)?;
    let (pass, fail, skip) = tally(&outcomes);
    let mut checks = Table::new("checks", &["suite", "case", "status", "detail"]);
    for o in &outcomes {
        checks.push(vec![
            Cell::text(o.suite.name()),
            Cell::text(o.case.clone()),
            Cell::text(o.status.label()),
            Cell::text(o.detail.clone()),
        ]);
    }
    Ok(Report {
        command: "verify",
        params: vec![
            ("suite", Cell::text(suite.name())),
            ("k_max", Cell::int(ranges.k_max)),
            ("mod_max", Cell::int(ranges.mod_max)),
            ("n_max", Cell::int(ranges.n_max)),
            ("l_max", Cell::int(ranges.l_max)),
        ],
        data: Data::Record {
            fields: vec![
                ("passed", Cell::int(pass)),
                ("failed", Cell::int(fail)),
                ("skipped", Cell::int(skip)),
            ],
            tables: vec![checks],
        },
        failed: fail > 0,
    })
}

/// Parse a grid such as `2,8,10..20,100..1000/100,10^6`: single values,
/// inclusive ranges with an optional step, and powers written `a^b`.
pub fn parse_grid(spec: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidArgs(format!("bad k-grid {spec:?}"));
    let num = |s: &str| -> Result<u64> {
        match s.split_once('^') {
            Some((b, e)) => {
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                let e: u32 = e.trim().parse().map_err(|_| bad())?;
                b.checked_pow(e).ok_or_else(bad)
            }
            None => s.trim().parse().map_err(|_| bad()),
        }
    };
    let mut out = Vec::new();
    for item in spec.split(',') {
        match item.split_once("..") {
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once('/') {
                    Some((h, s)) => (num(h)?, num(s)?),
                    None => (num(rest)?, 1),
                };
                let lo = num(lo)?;
                if step == 0 || lo > hi {
                    return Err(bad());
                }
                out.extend((lo..=hi).step_by(step as usize));
            }
            None => out.push(num(item)?),
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

pub fn asymptotics(p: u64, e: Option<u32>, grid: &str) -> Result<Report> {
    let ks = parse_grid(grid)?;
    let mut rows = Table::new(
        "rows",
        &["quantity", "p", "e", "k", "exact", "estimate", "rel_error", "rounding"],
    );
    for r in asym_rows(p, e, &ks)? {
        rows.push(vec![
            Cell::text(r.quantity.label()),
            Cell::int(r.p),
            Cell::int(r.e),
            Cell::int(r.k),
            Cell::float(Some(r.exact)),
            Cell::float(r.estimate),
            Cell::float(r.rel_error()),
            Cell::int(rounding_terms(r.p, r.k)?),
        ]);
    }
    let mut params = vec![("p", Cell::int(p))];
    if let Some(e) = e {
        params.push(("e", Cell::int(e)));
    }
    params.push(("k_grid", Cell::text(grid)));
    Ok(Report {
        command: "asymptotics",
        params,
        data: Data::Record {
            fields: vec![],
            tables: vec![rows],
        },
        failed: false,
    })
}
