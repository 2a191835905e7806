//! Command implementations. Every command produces a deterministic document
//! (rendered as human text, JSON, or CSV) plus the conjunction of its
//! agreement flags; the process exit code is 0 only when every flag holds.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use lefcount::braidcoh::MultiplicityCache;
use lefcount::glcount::{self, GlcountError};
use lefcount::lseries::{self, QLaurent, WeightTag};
use lefcount::symcomb::{ClassFunction, CycleType};
use lefcount::toristat;
use lefcount::{q_display, q_pow, Q};

use crate::stat::Stat;
use crate::{CliError, RunConfig};

pub struct Output {
    pub json: Value,
    pub human: String,
    pub csv: String,
    pub all_match: bool,
}

fn map_glcount_err(e: GlcountError) -> CliError {
    match e {
        GlcountError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Failure(other.to_string()),
    }
}

fn csv_table(header: &str, rows: &[String]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    out
}

/// Quotes a CSV field when its content requires it.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn verify_gl(
    cfg: &RunConfig,
    cache: &mut MultiplicityCache,
    stat: &Stat,
    q: u64,
    n: u32,
) -> Result<Output, CliError> {
    let chi = stat
        .class_function(n)
        .map_err(CliError::Usage)?;
    let ctx = glcount::field_for_prime_power(q).map_err(map_glcount_err)?;
    let report =
        glcount::verify_gl(&chi, &ctx, cfg.budget, cfg.jobs, cache).map_err(map_glcount_err)?;
    let mut json = report.to_json();
    json["stat"] = Value::String(stat.name());
    let human = format!(
        "verify-gl {} at q={q}, n={n}:\n  lhs (brute force)   = {}\n  rhs (cohomological) = {}\n  match: {}",
        stat.name(),
        q_display(&report.lhs),
        q_display(&report.rhs),
        report.matches
    );
    let csv = csv_table(
        "command,stat,q,n,lhs,rhs,match",
        &[format!(
            "verify-gl,{},{q},{n},{},{},{}",
            csv_field(&stat.name()),
            q_display(&report.lhs),
            q_display(&report.rhs),
            report.matches
        )],
    );
    Ok(Output {
        json,
        human,
        csv,
        all_match: report.matches,
    })
}

pub fn fit(
    cfg: &RunConfig,
    stat: &Stat,
    n: u32,
    qs: &[u64],
) -> Result<Output, CliError> {
    let chi = stat.class_function(n).map_err(CliError::Usage)?;
    let coeffs =
        glcount::fit_multiplicities(&chi, qs, cfg.budget, cfg.jobs).map_err(map_glcount_err)?;
    let rendered: Vec<Value> = coeffs
        .iter()
        .map(|c| {
            if c.is_integer() {
                Value::String(c.numer().to_string())
            } else {
                Value::String(q_display(c))
            }
        })
        .collect();
    let json = json!({
        "command": "fit",
        "stat": stat.name(),
        "n": n,
        "qs": qs,
        "coefficients": rendered,
    });
    let list: Vec<String> = coeffs.iter().map(q_display).collect();
    let human = format!(
        "fit {} at n={n} over q in {qs:?}:\n  a = [{}]",
        stat.name(),
        list.join(", ")
    );
    let rows: Vec<String> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("fit,{},{n},{i},{}", csv_field(&stat.name()), q_display(c)))
        .collect();
    let csv = csv_table("command,stat,n,i,a_i", &rows);
    Ok(Output {
        json,
        human,
        csv,
        all_match: true,
    })
}

pub fn stable(tag_name: &str, tag: WeightTag, i_max: u32) -> Result<Output, CliError> {
    let all = lseries::stable_coefficients(tag, i_max)
        .map_err(|e| CliError::Failure(e.to_string()))?;
    // a_1..a_I; a_0 reported separately
    let a0 = all[0].to_string();
    let tail: Vec<String> = all[1..].iter().map(|z| z.to_string()).collect();
    let json = json!({
        "command": "stable",
        "stat": tag_name,
        "i_max": i_max,
        "a0": a0,
        "coefficients": tail,
    });
    let human = format!(
        "stable multiplicities for {tag_name}, i = 1..{i_max}:\n  [{}]\n  (a_0 = {a0})",
        tail.join(", ")
    );
    let rows: Vec<String> = all
        .iter()
        .enumerate()
        .map(|(i, z)| format!("stable,{tag_name},{i},{z}"))
        .collect();
    let csv = csv_table("command,stat,i,a_i", &rows);
    Ok(Output {
        json,
        human,
        csv,
        all_match: true,
    })
}

/// Whether the brute-force torus oracle covers (q, n).
fn tori_oracle_supported(q: u64, n: u32) -> bool {
    (n == 2 && q <= 7 || n == 3 && q <= 3) && glcount::factor_prime_power(q).is_some()
}

pub fn tori(
    _cfg: &RunConfig,
    stat: &Stat,
    q: u64,
    n: u32,
) -> Result<Output, CliError> {
    let chi = stat.class_function(n).map_err(CliError::Usage)?;
    let value =
        toristat::tori_statistic(&chi, q).map_err(|e| CliError::Failure(e.to_string()))?;
    let (brute, matches) = if tori_oracle_supported(q, n) {
        let counts = toristat::tori_bruteforce(q, n)
            .map_err(|e| CliError::Failure(e.to_string()))?;
        let weighted: Q = counts
            .iter()
            .map(|(mu, &c)| chi.value(mu) * lefcount::q_int(c as i64))
            .sum();
        let ok = weighted == value;
        (Some(weighted), ok)
    } else {
        (None, true)
    };
    let json = json!({
        "command": "tori",
        "stat": stat.name(),
        "q": q,
        "n": n,
        "value": q_display(&value),
        "brute": brute.as_ref().map(q_display),
        "match": matches,
    });
    let human = format!(
        "tori statistic {} at q={q}, n={n}:\n  cohomological = {}\n  brute force   = {}\n  match: {matches}",
        stat.name(),
        q_display(&value),
        brute
            .as_ref()
            .map(q_display)
            .unwrap_or_else(|| "(n/a)".into()),
    );
    let csv = csv_table(
        "command,stat,q,n,value,brute,match",
        &[format!(
            "tori,{},{q},{n},{},{},{matches}",
            csv_field(&stat.name()),
            q_display(&value),
            brute.as_ref().map(q_display).unwrap_or_default(),
        )],
    );
    Ok(Output {
        json,
        human,
        csv,
        all_match: matches,
    })
}

pub fn factor_stats(cfg: &RunConfig, q: u64, n: u32) -> Result<Output, CliError> {
    let ctx = glcount::field_for_prime_power(q).map_err(map_glcount_err)?;
    let dist =
        glcount::profile_distribution(&ctx, n, cfg.budget, cfg.jobs).map_err(map_glcount_err)?;
    let total: u64 = dist.values().sum();

    let mut linear_histogram: BTreeMap<u32, u64> = BTreeMap::new();
    let mut linear_total = 0u64;
    let mut moebius_sum: i64 = 0;
    let mut quad_total = Q::zero();
    let mut distinct_total = 0u64;
    let quad = lefcount::symcomb::CharacterPolynomial::quadratic_excess();
    for (mu, &count) in &dist {
        let fixed = mu.count(1);
        *linear_histogram.entry(fixed).or_insert(0) += count;
        linear_total += u64::from(fixed) * count;
        // (-1)^{deg} mu(f) = sign(sigma_f), so mu(f) = (-1)^n sign
        let sign = mu.sign() as i64 * if n.is_multiple_of(2) { 1 } else { -1 };
        moebius_sum += sign * count as i64;
        quad_total += quad.eval(mu) * lefcount::q_int(count as i64);
        if mu.has_distinct_lengths() {
            distinct_total += count;
        }
    }
    let irreducible = dist
        .get(&CycleType::from_parts(&[n]))
        .copied()
        .unwrap_or(0);
    let formula = glcount::irreducible_count_formula(q, n);
    let matches = lefcount::Z::from(irreducible) == formula;

    let mut types = serde_json::Map::new();
    for (mu, &count) in &dist {
        types.insert(mu.to_string(), Value::from(count));
    }
    let mut histogram = serde_json::Map::new();
    for (k, &count) in &linear_histogram {
        histogram.insert(k.to_string(), Value::from(count));
    }
    let json = json!({
        "command": "factor-stats",
        "q": q,
        "n": n,
        "squarefree_total": total,
        "types": types,
        "linear_factor_histogram": histogram,
        "linear_factor_total": linear_total,
        "moebius_sum": moebius_sum,
        "quadratic_excess_total": q_display(&quad_total),
        "irreducible_count": irreducible,
        "irreducible_count_formula": formula.to_string(),
        "distinct_degree_count": distinct_total,
        "match": matches,
    });
    let mut human = format!(
        "squarefree degree-{n} polynomials over F_{q}: {total}\nby factorization type:\n"
    );
    for (mu, &count) in &dist {
        human.push_str(&format!("  {mu}: {count}\n"));
    }
    human.push_str(&format!(
        "linear factors total: {linear_total}\nmoebius sum: {moebius_sum}\nquadratic excess total: {}\nirreducible: {irreducible} (formula: {formula}, match: {matches})\ndistinct factor degrees: {distinct_total}",
        q_display(&quad_total)
    ));
    let rows: Vec<String> = dist
        .iter()
        .map(|(mu, &count)| format!("factor-stats,{q},{n},{},{count}", csv_field(&mu.to_string())))
        .collect();
    let csv = csv_table("command,q,n,cycle_type,count", &rows);
    Ok(Output {
        json,
        human,
        csv,
        all_match: matches,
    })
}

struct TableRow {
    row: u32,
    side: &'static str,
    label: &'static str,
    value: String,
    detail: Option<String>,
    methods: &'static str,
    matches: bool,
}

pub fn table_a(
    cfg: &RunConfig,
    cache: &mut MultiplicityCache,
    q: u64,
    n: u32,
) -> Result<Output, CliError> {
    if n < 2 {
        return Err(CliError::Usage("table-a requires n >= 2".into()));
    }
    let ctx = glcount::field_for_prime_power(q).map_err(map_glcount_err)?;
    let dist =
        glcount::profile_distribution(&ctx, n, cfg.budget, cfg.jobs).map_err(map_glcount_err)?;
    let count = Q::from_integer(lefcount::Z::from(dist.values().sum::<u64>()));

    let lift = |s: &Stat| s.class_function(n).map_err(CliError::Usage);
    let brute = |chi: &ClassFunction| glcount::weighted_total(chi, &dist);
    let mut rhs = |chi: &ClassFunction| -> Result<Q, CliError> {
        glcount::rhs_conf_sum(chi, q, cache).map_err(map_glcount_err)
    };

    let trivial = lift(&Stat::Trivial)?;
    let x1 = lift(&Stat::X1)?;
    let quadf = lift(&Stat::Quad)?;
    let signf = lift(&Stat::Sign)?;
    let chi1f = lift(&Stat::Chi1)?;

    let mut rows: Vec<TableRow> = Vec::new();

    // (1) left: squarefree count
    let b1 = brute(&trivial);
    let r1 = rhs(&trivial)?;
    rows.push(TableRow {
        row: 1,
        side: "polynomials",
        label: "squarefree count",
        value: q_display(&b1),
        detail: None,
        methods: "brute,cohomology",
        matches: b1 == r1,
    });

    // (2) left: expected number of linear factors
    let b2 = brute(&x1) / &count;
    let r2 = rhs(&x1)? / rhs(&trivial)?;
    let series_l = lseries::weighted_l(WeightTag::X1).coefficient(n).eval(q)
        / lseries::conf_l().coefficient(n).eval(q);
    rows.push(TableRow {
        row: 2,
        side: "polynomials",
        label: "expected linear factors",
        value: q_display(&b2),
        detail: None,
        methods: "brute,cohomology,series",
        matches: b2 == r2 && b2 == series_l,
    });

    // (3) left: expected excess of irreducible vs reducible quadratic
    // factors (the negated quadratic-excess statistic)
    let b3 = -brute(&quadf) / &count;
    let r3 = -rhs(&quadf)? / rhs(&trivial)?;
    let series_q = -lseries::weighted_l(WeightTag::PQuad).coefficient(n).eval(q)
        / lseries::conf_l().coefficient(n).eval(q);
    let (lim_n, lim_d) = lseries::residue_ratio(WeightTag::PQuad);
    let limit = -(lim_n.eval(q) / lim_d.eval(q));
    rows.push(TableRow {
        row: 3,
        side: "polynomials",
        label: "expected quadratic excess (irreducible vs reducible)",
        value: q_display(&b3),
        detail: Some(format!("limit {}", q_display(&limit))),
        methods: "brute,cohomology,series",
        matches: b3 == r3 && b3 == series_q,
    });

    // (4) left: Moebius average; sign statistic vanishes for n >= 2
    let sign_flip = if n.is_multiple_of(2) { Q::one() } else { -Q::one() };
    let b4 = brute(&signf) * &sign_flip;
    let r4 = rhs(&signf)? * &sign_flip;
    rows.push(TableRow {
        row: 4,
        side: "polynomials",
        label: "moebius sum (discriminant equidistribution)",
        value: q_display(&b4),
        detail: None,
        methods: "brute,cohomology",
        matches: b4 == r4 && b4.is_zero(),
    });

    // (5) left: irreducible count
    let b5 = brute(&chi1f);
    let r5 = rhs(&chi1f)?;
    let f5 = Q::from_integer(glcount::irreducible_count_formula(q, n));
    rows.push(TableRow {
        row: 5,
        side: "polynomials",
        label: "irreducible count",
        value: q_display(&b5),
        detail: None,
        methods: "brute,cohomology,formula",
        matches: b5 == r5 && b5 == f5,
    });

    // right column: maximal tori
    let torus_err = |e: toristat::ToristatError| CliError::Failure(e.to_string());
    let brute_counts = if tori_oracle_supported(q, n) {
        Some(toristat::tori_bruteforce(q, n).map_err(torus_err)?)
    } else {
        None
    };
    let weighted = |chi: &ClassFunction| -> Option<Q> {
        brute_counts.as_ref().map(|counts| {
            counts
                .iter()
                .map(|(mu, &c)| chi.value(mu) * lefcount::q_int(c as i64))
                .sum()
        })
    };
    let torus_count = q_pow(q, i64::from(n) * i64::from(n) - i64::from(n));

    // (1) right: number of maximal tori
    let t1 = toristat::tori_statistic(&trivial, q).map_err(torus_err)?;
    let t1b = weighted(&trivial);
    rows.push(TableRow {
        row: 1,
        side: "tori",
        label: "maximal torus count",
        value: q_display(&t1),
        detail: None,
        methods: "cohomology,formula,oracle",
        matches: t1 == torus_count && t1b.is_none_or(|b| b == t1),
    });

    // (2) right: expected eigenvectors
    let t2_total = toristat::tori_statistic(&x1, q).map_err(torus_err)?;
    let t2 = &t2_total / &torus_count;
    let mut closed = Q::zero();
    for i in 0..n {
        closed += q_pow(q, -i64::from(i));
    }
    let t2b = weighted(&x1).map(|b| b / &torus_count);
    rows.push(TableRow {
        row: 2,
        side: "tori",
        label: "expected eigenvectors",
        value: q_display(&t2),
        detail: None,
        methods: "cohomology,formula,oracle",
        matches: t2 == closed && t2b.is_none_or(|b| b == t2),
    });

    // (3) right: expected excess of reducible vs irreducible 2-dimensional
    // subtori; the leading n-1 coefficients follow floor((i+1)/2) q^{-i}
    let t3_poly = toristat::tori_quadratic_excess_poly(n).map_err(torus_err)?;
    let t3 = t3_poly.eval(q);
    let mut pattern = QLaurent::zero();
    for i in 1..n {
        pattern = pattern.add(&QLaurent::monomial(
            -i64::from(i),
            lefcount::q_int(i64::from(i.div_ceil(2))),
        ));
    }
    let leading_ok = (1..n).all(|i| t3_poly.coefficient(-i64::from(i)) == pattern.coefficient(-i64::from(i)));
    let t3b = weighted(&quadf).map(|b| b / &torus_count);
    rows.push(TableRow {
        row: 3,
        side: "tori",
        label: "expected quadratic excess (reducible vs irreducible)",
        value: q_display(&t3),
        detail: Some(format!("stable truncation {}", q_display(&pattern.eval(q)))),
        methods: "cohomology,series,oracle",
        matches: leading_ok && t3b.is_none_or(|b| b == t3),
    });

    // (4) right: parity bias
    let t4 = toristat::tori_statistic(&signf, q).map_err(torus_err)?;
    let bias = q_pow(q, i64::from(n) * i64::from(n - 1) / 2);
    let t4b = weighted(&signf);
    rows.push(TableRow {
        row: 4,
        side: "tori",
        label: "parity bias of factor count",
        value: q_display(&t4),
        detail: None,
        methods: "cohomology,formula,oracle",
        matches: t4 == bias && t4b.is_none_or(|b| b == t4),
    });

    // (5) right: irreducible maximal tori
    let t5_formula = Q::from_integer(toristat::pnt_tori_formula(q, n));
    let t5_chi1 = toristat::pnt_tori_chi1(q, n).map_err(torus_err)?;
    let t5b = weighted(&chi1f);
    rows.push(TableRow {
        row: 5,
        side: "tori",
        label: "irreducible torus count",
        value: q_display(&t5_formula),
        detail: None,
        methods: "formula,cohomology,oracle",
        matches: t5_formula == t5_chi1 && t5b.is_none_or(|b| b == t5_formula),
    });

    let all_match = rows.iter().all(|r| r.matches);
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "row": r.row,
                "side": r.side,
                "label": r.label,
                "value": r.value,
                "detail": r.detail,
                "methods": r.methods,
                "match": r.matches,
            })
        })
        .collect();
    let json = json!({
        "command": "table-a",
        "q": q,
        "n": n,
        "rows": json_rows,
        "match": all_match,
    });
    let mut human = format!("counting table at q = {q}, n = {n}\n");
    for side in ["polynomials", "tori"] {
        human.push_str(&format!(
            "\n{}\n",
            if side == "polynomials" {
                "squarefree polynomials in F_q[T]"
            } else {
                "maximal tori in GL_n(F_q)"
            }
        ));
        for r in rows.iter().filter(|r| r.side == side) {
            human.push_str(&format!(
                "  ({}) {}: {}{}  [{}]  match: {}\n",
                r.row,
                r.label,
                r.value,
                r.detail
                    .as_ref()
                    .map(|d| format!(" ({d})"))
                    .unwrap_or_default(),
                r.methods,
                r.matches
            ));
        }
    }
    let csv_rows: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "table-a,{q},{n},{},{},{},{},{},{}",
                r.row,
                r.side,
                csv_field(r.label),
                csv_field(&r.value),
                csv_field(r.methods),
                r.matches
            )
        })
        .collect();
    let csv = csv_table("command,q,n,row,side,label,value,methods,match", &csv_rows);
    Ok(Output {
        json,
        human,
        csv,
        all_match,
    })
}
