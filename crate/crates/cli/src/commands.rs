use cuspidal_core::divisor::degree_weights;
use cuspidal_core::index::{index_value, squarefree_class_number_p};
use cuspidal_core::lattice::beta_cokernel_degree0;
use cuspidal_core::order::{gcd_of_image, h_of_c0, kappa};
use cuspidal_core::selftest;
use cuspidal_core::{
    beta_matrix, build_c0, build_e0, cusp_count, enumerate_cusps, factorize, main_theorem_report, order_closed_form,
    order_matrix_path, residues, FactoredInteger, Sign, SignVector,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::args::{Command, MAX_LEVEL};
use crate::output::{exit, CliError, Report, Table, SCHEMA};

type CmdResult = Result<Report, CliError>;

pub fn run(command: &Command) -> CmdResult {
    match command {
        Command::Cusps { n } => cusps(level(*n)?),
        Command::Divisor { n, eps } => {
            let n = level(*n)?;
            let eps = parse_eps(eps.as_deref(), n.t())?;
            divisor(n, eps)
        }
        Command::Order { n, eps } => {
            let n = level(*n)?;
            let eps = parse_eps(eps.as_deref(), n.t())?;
            order(n, eps)
        }
        Command::Eisenstein { n, eps, terms } => {
            let n = level(*n)?;
            let eps = parse_eps(eps.as_deref(), n.t())?;
            if *terms == 0 {
                return Err(CliError::usage("--terms must be at least 1"));
            }
            eisenstein(n, eps, *terms)
        }
        Command::Residues { n, eps } => {
            let n = level(*n)?;
            let eps = parse_eps(eps.as_deref(), n.t())?;
            residue_table(n, eps)
        }
        Command::Beta { n, l } => beta(level(*n)?, *l),
        Command::Index { n, p, eps, all_eps: _, exclude_all_plus } => {
            let n = level(*n)?;
            let signs = match eps {
                Some(e) => vec![parse_eps(Some(e), n.t())?],
                None => SignVector::enumerate(n.t()),
            };
            index(n, *p, signs, *exclude_all_plus)
        }
        Command::Report { n, p } => report(level(*n)?, *p),
        Command::Selftest { max_n } => {
            if *max_n < 1 || *max_n > 5000 {
                return Err(CliError::usage("--max-n must lie in 1..=5000"));
            }
            run_selftest(*max_n)
        }
    }
}

fn level(n: u64) -> Result<FactoredInteger, CliError> {
    if n == 0 || n > MAX_LEVEL {
        return Err(CliError::usage(format!("N must lie in 1..={MAX_LEVEL}, got {n}")));
    }
    Ok(factorize(n)?)
}

/// Accepts `+1,-1`, a single `-1`, or the shorthand `+-` / `pm`.
pub fn parse_eps(raw: Option<&str>, t: usize) -> Result<SignVector, CliError> {
    let signs = match raw.map(str::trim) {
        None | Some("") => Vec::new(),
        Some(s) if s.chars().all(|c| matches!(c, '+' | '-' | 'p' | 'm')) => s
            .chars()
            .map(|c| if matches!(c, '+' | 'p') { Sign::Plus } else { Sign::Minus })
            .collect(),
        Some(s) => s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .ok()
                    .and_then(Sign::from_value)
                    .ok_or_else(|| CliError::bad_eps(format!("cannot parse sign {part:?}; use +1/-1")))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    if signs.len() != t {
        return Err(CliError::bad_eps(format!("expected {t} signs (one per prime exactly dividing N), got {}", signs.len())));
    }
    Ok(SignVector::new(signs))
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn header(command: &str, n: &FactoredInteger) -> Value {
    json!({"schema": SCHEMA, "command": command, "N": n.value()})
}

fn extend(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn cusps(n: FactoredInteger) -> CmdResult {
    let classes = enumerate_cusps(&n);
    let mut table = Table::new(&["level", "x", "z", "orbit_size", "field_degree"]);
    let mut rows = Vec::new();
    for c in &classes {
        for x in &c.representatives {
            table.push(vec![s(c.level), s(x), s(c.z), s(c.orbit_size), s(c.field_degree)]);
            rows.push(json!({
                "level": c.level,
                "x": x,
                "z": c.z,
                "orbit_size": c.orbit_size,
                "field_degree": c.field_degree,
            }));
        }
    }
    let grouped: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "level": c.level,
                "z": c.z,
                "orbit_size": c.orbit_size,
                "field_degree": c.field_degree,
                "representatives": c.representatives,
            })
        })
        .collect();
    let json = extend(
        header("cusps", &n),
        json!({"cusp_count": cusp_count(&n), "cusps": rows, "classes": grouped}),
    );
    Ok(Report::ok(json, table))
}

fn divisor(n: FactoredInteger, eps: SignVector) -> CmdResult {
    let c0 = build_c0(&n, &eps)?;
    let weights = degree_weights(&n);
    let mut table = Table::new(&["d", "degree_P_d", "a"]);
    let coeffs: Vec<Value> = n
        .divisors()
        .iter()
        .zip(c0.coeffs())
        .zip(&weights)
        .map(|((d, a), w)| {
            table.push(vec![s(d), s(w), s(a)]);
            json!({"d": d, "degree_P_d": w, "a": s(a)})
        })
        .collect();
    let degree = c0.degree();
    let json = extend(
        header("divisor", &n),
        json!({"eps": eps.to_string(), "coefficients": coeffs, "degree": s(&degree)}),
    );
    let code = if degree == BigInt::from(0) { exit::OK } else { exit::INVARIANT };
    Ok(Report { json, table, code })
}

fn order(n: FactoredInteger, eps: SignVector) -> CmdResult {
    let closed = order_closed_form(&n, &eps)?;
    let matrix = order_matrix_path(&n, &eps)?;
    let gcd = gcd_of_image(&n, &build_c0(&n, &eps)?)?;
    let agree = closed == matrix;
    let mut table = Table::new(&["N", "eps", "closed_form", "matrix_path", "agree", "kappa", "h", "gcd"]);
    let kappa = kappa(&n);
    let h = h_of_c0(&n);
    table.push(vec![s(n.value()), eps.to_string(), s(&closed), s(&matrix), s(agree), s(&kappa), s(h), s(&gcd)]);
    let json = extend(
        header("order", &n),
        json!({
            "eps": eps.to_string(),
            "closed_form": s(&closed),
            "matrix_path": s(&matrix),
            "agree": agree,
            "kappa": s(&kappa),
            "h": h,
            "gcd": s(&gcd),
        }),
    );
    Ok(Report { json, table, code: if agree { exit::OK } else { exit::INVARIANT } })
}

fn eisenstein(n: FactoredInteger, eps: SignVector, terms: usize) -> CmdResult {
    let series = build_e0(&n, &eps, terms)?;
    let mut table = Table::new(&["n", "scaled_24a", "a"]);
    for k in 0..=terms {
        table.push(vec![s(k), s(series.scaled_coeff(k)), rational(&series.coeff(k))]);
    }
    let scaled: Vec<String> = (1..=terms).map(|k| s(series.scaled_coeff(k))).collect();
    let plain: Vec<String> = (1..=terms).map(|k| rational(&series.coeff(k))).collect();
    let json = extend(
        header("eisenstein", &n),
        json!({
            "eps": eps.to_string(),
            "terms": terms,
            "denominator": 24,
            "a0": rational(&series.coeff(0)),
            "scaled_a0": s(series.scaled_coeff(0)),
            "scaled_coefficients": scaled,
            "coefficients": plain,
        }),
    );
    Ok(Report::ok(json, table))
}

fn residue_table(n: FactoredInteger, eps: SignVector) -> CmdResult {
    let table_data = residues(&n, &eps)?;
    let mut table = Table::new(&["level", "orbit_size", "residue"]);
    let rows: Vec<Value> = table_data
        .rows
        .iter()
        .map(|r| {
            table.push(vec![s(r.level), s(r.orbit_size), rational(&r.residue)]);
            json!({"level": r.level, "orbit_size": r.orbit_size, "residue": rational(&r.residue)})
        })
        .collect();
    let sum = table_data.weighted_sum();
    let zero = sum == BigRational::from_integer(0.into());
    let json = extend(
        header("residues", &n),
        json!({"eps": eps.to_string(), "rows": rows, "weighted_sum": rational(&sum), "sum_is_zero": zero}),
    );
    Ok(Report { json, table, code: if zero { exit::OK } else { exit::INVARIANT } })
}

fn beta(n: FactoredInteger, l: u64) -> CmdResult {
    if !cuspidal_core::arith::is_prime(l) {
        return Err(cuspidal_core::Error::NotPrime(l).into());
    }
    let matrix = beta_matrix(&n, l)?;
    let divisors = beta_cokernel_degree0(&n, l)?;
    let m = n.value() / l;
    let mut table = Table::new(&["row_level", "images"]);
    let target = factorize(m)?;
    for (i, d) in target.divisors().iter().enumerate() {
        table.push(vec![s(d), matrix.row(i).iter().map(s).collect::<Vec<_>>().join(",")]);
    }
    let rows: Vec<Vec<String>> = matrix.to_rows().iter().map(|r| r.iter().map(s).collect()).collect();
    let json = extend(
        header("beta", &n),
        json!({
            "l": l,
            "M": m,
            "source_levels": n.divisors(),
            "target_levels": target.divisors(),
            "matrix": rows,
            "degree_zero_elementary_divisors": divisors.iter().map(s).collect::<Vec<_>>(),
        }),
    );
    Ok(Report::ok(json, table))
}

fn index(n: FactoredInteger, p: Option<u64>, signs: Vec<SignVector>, exclude_all_plus: bool) -> CmdResult {
    if let Some(p) = p {
        if p == 2 {
            return Err(cuspidal_core::Error::EvenPrime.into());
        }
        if !cuspidal_core::arith::is_prime(p) {
            return Err(cuspidal_core::Error::NotPrime(p).into());
        }
    }
    let kind = if n.is_squarefree() { "n" } else { "n0" };
    let mut table = Table::new(&["eps", "kind", "index", "valuation"]);
    let rows: Vec<Value> = signs
        .iter()
        .filter(|e| !(exclude_all_plus && e.is_all_plus()))
        .map(|e| {
            let value = index_value(&n, e);
            let val = p.map(|p| cuspidal_core::arith::valuation_big(&value, p));
            table.push(vec![e.to_string(), kind.to_string(), s(&value), val.map(s).unwrap_or_default()]);
            let mut row = json!({"eps": e.to_string(), "kind": kind, "index": s(&value)});
            if let Some(v) = val {
                row["valuation"] = json!(v);
            }
            row
        })
        .collect();
    let mut json = extend(header("index", &n), json!({"p": p, "exclude_all_plus": exclude_all_plus, "rows": rows}));
    if let (Some(p), true) = (p, n.is_squarefree()) {
        json["class_number_exponent"] = json!(squarefree_class_number_p(&n, p, !exclude_all_plus)?);
    }
    Ok(Report::ok(json, table))
}

fn report(n: FactoredInteger, p: u64) -> CmdResult {
    let rep = main_theorem_report(&n, p)?;
    let mut table = Table::new(&["eps", "index", "index_valuation", "order", "order_valuation"]);
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            table.push(vec![
                r.eps.to_string(),
                s(&r.index),
                s(r.index_valuation),
                r.order.as_ref().map(s).unwrap_or_default(),
                r.order_valuation.map(s).unwrap_or_default(),
            ]);
            json!({
                "eps": r.eps.to_string(),
                "index": s(&r.index),
                "index_valuation": r.index_valuation,
                "order": r.order.as_ref().map(s),
                "order_valuation": r.order_valuation,
            })
        })
        .collect();
    let coherent = rep.rows_coherent();
    let json = extend(
        header("report", &n),
        json!({
            "p": p,
            "applicable": rep.applicability.is_applicable(),
            "reason": rep.applicability.reason(),
            "rows": rows,
            "rows_coherent": coherent,
        }),
    );
    Ok(Report { json, table, code: if coherent { exit::OK } else { exit::INVARIANT } })
}

fn run_selftest(max_n: u64) -> CmdResult {
    let results = selftest::run_all(max_n);
    let all = results.iter().all(|r| r.passed());
    let mut table = Table::new(&["check", "bound", "cases", "passed", "failure"]);
    let checks: Vec<Value> = results
        .iter()
        .map(|r| {
            table.push(vec![s(r.name), s(r.bound), s(r.cases), s(r.passed()), r.failure.clone().unwrap_or_default()]);
            json!({"name": r.name, "bound": r.bound, "cases": r.cases, "passed": r.passed(), "failure": r.failure})
        })
        .collect();
    let json = json!({"schema": SCHEMA, "command": "selftest", "max_n": max_n, "checks": checks, "all_passed": all});
    Ok(Report { json, table, code: if all { exit::OK } else { exit::INVARIANT } })
}
