use kbessel::inequalities::{
    check_sequence_ratio_direction, sample_cases, turan_grid, Case, CheckOptions, Claim, ConfluentVariant, Direction,
    GridSpec, InequalityReport, Spacing, DEFAULT_COUNT,
};
use kbessel::kgamma::{gamma_k, gamma_k_integral_oracle, gamma_k_limit_oracle, KGammaArg};
use kbessel::series::{
    modified_i_kbessel, w_kbessel, wright_representation, wright_representation_with, EvalResult, KBesselShape,
    RepresentationConstants,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::{DirectionArg, EvalArgs, Format, GridArgs, Oracle, OracleArgs, ScanArgs, SpacingArg, VerifyArgs};
use crate::functions::{max_terms, series_options, Bound, Prepared};
use crate::output::{emit, num, to_json, Csv, Exit, Failure, SCHEMA_VERSION};

pub const ROW_COLUMNS: [&str; 5] = ["x", "value", "abs_error_bound", "terms_used", "converged"];

fn params_json(bound: &Bound) -> Value {
    Value::Object(bound.used().iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn row_json(x: f64, r: &EvalResult) -> Value {
    json!({
        "x": x,
        "value": r.value,
        "abs_error_bound": r.abs_error_bound,
        "terms_used": r.terms_used,
        "converged": r.converged,
    })
}

fn row_fields(x: f64, r: &EvalResult) -> Vec<String> {
    vec![num(x), num(r.value), num(r.abs_error_bound), r.terms_used.to_string(), r.converged.to_string()]
}

fn status(results: &[EvalResult]) -> Exit {
    if results.iter().all(|r| r.converged) {
        Exit::Ok
    } else {
        Exit::Numerical
    }
}

pub fn eval(args: &EvalArgs) -> Result<Exit, Failure> {
    let opts = series_options(args.tol, max_terms(args.output.max_terms)?)?;
    let mut bound = Bound::new(&args.params);
    let prepared = Prepared::new(args.function, &mut bound)?;
    let x = bound.get("x")?;
    let result = prepared.evaluate(x, &opts)?;

    let comparison = if args.compare_paper_constants {
        let Prepared::WrightRep(p, _) = &prepared else {
            return Err(Failure::usage("--compare-paper-constants applies to wright-rep only"));
        };
        let printed = wright_representation_with(p, x, &opts, RepresentationConstants::PrintedPrefactor)?;
        Some((printed, result.value / printed.value, p.k * p.k))
    } else {
        None
    };

    let doc = match args.output.format {
        Format::Json => {
            let mut doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "eval",
                "function": args.function.name(),
                "params": params_json(&bound),
                "result": row_json(x, &result),
            });
            if let Some((printed, ratio, k2)) = &comparison {
                doc["printed_constants"] = json!({
                    "result": row_json(x, printed),
                    "ratio": ratio,
                    "k_squared": k2,
                });
            }
            to_json(&doc)
        }
        Format::Csv => {
            let mut csv = Csv::new(&ROW_COLUMNS);
            csv.row(&row_fields(x, &result));
            csv.finish()
        }
        Format::Text => {
            let mut s = format!(
                "function: {}\nvalue: {}\nabs_error_bound: {}\nterms_used: {}\nconverged: {}\n",
                args.function.name(),
                num(result.value),
                num(result.abs_error_bound),
                result.terms_used,
                result.converged
            );
            if let Some((printed, ratio, k2)) = &comparison {
                s += &format!(
                    "printed_value: {}\nratio: {}\nk_squared: {}\n",
                    num(printed.value),
                    num(*ratio),
                    num(*k2)
                );
            }
            s
        }
    };
    emit(&doc, args.output.out.as_deref())?;
    let mut all = vec![result];
    all.extend(comparison.map(|c| c.0));
    Ok(status(&all))
}

fn grid_from_args(g: &GridArgs) -> Result<Option<GridSpec>, Failure> {
    if g.start.is_none() && g.stop.is_none() && g.count.is_none() && g.spacing.is_none() {
        return Ok(None);
    }
    let (Some(start), Some(stop)) = (g.start, g.stop) else {
        return Err(Failure::usage("a grid needs both --start and --stop"));
    };
    let count = g.count.unwrap_or(DEFAULT_COUNT);
    let grid = match g.spacing {
        Some(SpacingArg::Linear) => GridSpec::linear(start, stop, count),
        Some(SpacingArg::Logarithmic) => GridSpec::logarithmic(start, stop, count),
        None => GridSpec::auto(start, stop).and_then(|a| GridSpec::new(start, stop, count, a.spacing)),
    };
    Ok(Some(grid?))
}

fn grid_json(g: &GridSpec) -> Value {
    json!({
        "start": g.start,
        "stop": g.stop,
        "count": g.count,
        "spacing": match g.spacing { Spacing::Linear => "linear", Spacing::Logarithmic => "logarithmic" },
    })
}

pub fn scan(args: &ScanArgs) -> Result<Exit, Failure> {
    let opts = series_options(args.tol, max_terms(args.output.max_terms)?)?;
    let mut bound = Bound::new(&args.params);
    let prepared = Prepared::new(args.function, &mut bound)?;
    let grid = match grid_from_args(&args.grid)? {
        Some(g) => g,
        None => GridSpec::logarithmic(1e-3, 20.0, DEFAULT_COUNT)?,
    };
    let points = grid.points();
    let results = points
        .par_iter()
        .map(|&x| prepared.evaluate(x, &opts))
        .collect::<Result<Vec<_>, _>>()?;

    let doc = match args.output.format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "scan",
            "function": args.function.name(),
            "params": params_json(&bound),
            "grid": grid_json(&grid),
            "rows": points.iter().zip(&results).map(|(&x, r)| row_json(x, r)).collect::<Vec<_>>(),
        })),
        Format::Csv | Format::Text => {
            let mut csv = Csv::new(&ROW_COLUMNS);
            for (&x, r) in points.iter().zip(&results) {
                csv.row(&row_fields(x, r));
            }
            csv.finish()
        }
    };
    emit(&doc, args.output.out.as_deref())?;
    Ok(status(&results))
}

fn direction(d: DirectionArg) -> Direction {
    match d {
        DirectionArg::Increasing => Direction::Increasing,
        DirectionArg::Decreasing => Direction::Decreasing,
        DirectionArg::Convex => Direction::Convex,
        DirectionArg::Concave => Direction::Concave,
    }
}

fn explicit_case(claim: Claim, bound: &mut Bound) -> Result<Case, Failure> {
    Ok(match claim {
        Claim::Thm1 => {
            let shape = bound.shape()?;
            Case::Thm1 { shape, mu: bound.get("mu")? }
        }
        Claim::Thm2 => {
            let shape = bound.shape()?;
            Case::Thm2 { shape, m: bound.get("m")? }
        }
        Claim::Thm3Turan => Case::Thm3Turan {
            k: bound.get("k")?,
            gamma: bound.get("gamma")?,
            lambda: bound.get("lambda")?,
            x: bound.get("x")?,
            delta: bound.get_or("delta", 0.5),
        },
        Claim::Thm4a => {
            let shape = bound.shape()?;
            let variant = ConfluentVariant::A {
                a: bound.get("a")?,
                c: bound.get("c_param")?,
            };
            Case::Thm4 { variant, shape }
        }
        Claim::Thm4b => Case::Thm4 {
            variant: ConfluentVariant::B,
            shape: bound.shape()?,
        },
        Claim::Thm4c => Case::Thm4 {
            variant: ConfluentVariant::C,
            shape: bound.shape()?,
        },
        Claim::LemmaSeq => {
            let p = bound.shape()?;
            let q = KBesselShape { nu: bound.get("mu")?, ..p };
            Case::LemmaSeq { p, q }
        }
    })
}

fn run_case(case: &Case, grid: Option<&GridSpec>, opts: &CheckOptions, n_max: usize) -> kbessel::Result<Vec<InequalityReport>> {
    match case {
        Case::LemmaSeq { p, q } => Ok(vec![check_sequence_ratio_direction(p, q, n_max, opts.direction)?]),
        _ => case.run(grid, opts),
    }
}

fn report_line(r: &InequalityReport) -> String {
    let p = &r.params;
    let mut s = format!(
        "{} k={} nu={} gamma={} lambda={}",
        r.claim_id,
        num(p.k),
        num(p.nu),
        num(p.gamma),
        num(p.lambda)
    );
    for (name, v) in &r.aux {
        s += &format!(" {name}={}", num(*v));
    }
    s += &format!(
        " direction={} pass={} max_violation={} min_slack={} violations={}\n",
        r.direction.as_str(),
        r.pass,
        num(r.max_violation),
        num(r.min_slack),
        r.violations.len()
    );
    for v in r.violations.iter().take(3) {
        let pts: Vec<String> = v.points.iter().map(|x| num(*x)).collect();
        s += &format!("  witness at [{}] delta={}\n", pts.join(", "), num(v.observed_delta));
    }
    s
}

pub fn verify(args: &VerifyArgs) -> Result<Exit, Failure> {
    let claim: Claim = args.claim.parse()?;
    let opts = CheckOptions {
        tol: args.tol,
        direction: args.claim_direction.map(direction),
        max_terms: Some(max_terms(args.output.max_terms)?),
    };
    let grid = grid_from_args(&args.grid)?;
    let mut bound = Bound::new(&args.params);
    let cases = match args.random {
        Some(n) => sample_cases(claim, n, args.seed)?,
        None => vec![explicit_case(claim, &mut bound)?],
    };
    if let (Claim::Thm3Turan, None, Some(Case::Thm3Turan { delta, .. })) = (claim, &grid, cases.first()) {
        // Validate the default ν-grid early for a clear message.
        turan_grid(*delta)?;
    }
    let outcomes: Vec<_> = cases
        .par_iter()
        .map(|c| run_case(c, grid.as_ref(), &opts, args.n_max))
        .collect();
    let mut reports = Vec::new();
    for outcome in outcomes {
        reports.push(outcome?);
    }
    let all_pass = reports.iter().flatten().all(|r| r.pass);

    let doc = match args.output.format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
            doc.insert("command".into(), json!("verify"));
            doc.insert("claim".into(), json!(claim.as_str()));
            if let Some(n) = args.random {
                doc.insert("random".into(), json!(n));
                doc.insert("seed".into(), json!(args.seed));
            }
            doc.insert("all_pass".into(), json!(all_pass));
            let entries: Vec<Value> = cases
                .iter()
                .zip(&reports)
                .map(|(c, rs)| json!({ "case": c, "reports": rs }))
                .collect();
            doc.insert("cases".into(), Value::Array(entries));
            to_json(&Value::Object(doc))
        }
        Format::Csv => {
            let mut csv = Csv::new(&[
                "case", "claim_id", "k", "nu", "gamma", "lambda", "direction", "pass", "max_violation", "min_slack",
                "violations",
            ]);
            for (i, rs) in reports.iter().enumerate() {
                for r in rs {
                    csv.row(&[
                        i.to_string(),
                        r.claim_id.clone(),
                        num(r.params.k),
                        num(r.params.nu),
                        num(r.params.gamma),
                        num(r.params.lambda),
                        r.direction.as_str().to_string(),
                        r.pass.to_string(),
                        num(r.max_violation),
                        num(r.min_slack),
                        r.violations.len().to_string(),
                    ]);
                }
            }
            csv.finish()
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports.iter().flatten() {
                s += &report_line(r);
            }
            let total = reports.iter().flatten().count();
            let passed = reports.iter().flatten().filter(|r| r.pass).count();
            let cases_passed = reports.iter().filter(|rs| rs.iter().all(|r| r.pass)).count();
            s += &format!("{cases_passed}/{} cases pass ({passed}/{total} reports)\n", reports.len());
            s
        }
    };
    emit(&doc, args.output.out.as_deref())?;
    Ok(if all_pass { Exit::Ok } else { Exit::Violation })
}

/// `Σ (x/2)ⁿ / (n! Γ(n + ν + 1))` summed until the terms stop mattering.
fn classical_modified_bessel(nu: f64, x: f64) -> f64 {
    let mut term = (-kbessel::classical::ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= x / 2.0 / (n * (n + nu));
        sum += term;
        if term <= f64::EPSILON * 1e-3 * sum.abs() || n > 1000.0 {
            return sum;
        }
    }
}

pub fn oracle_compare(args: &OracleArgs) -> Result<Exit, Failure> {
    let mut bound = Bound::new(&args.params);
    let (primary, oracle, tolerance) = match args.oracle {
        Oracle::Integral => {
            let arg = KGammaArg::new(bound.get("x")?, bound.get("k")?)?;
            let oracle = gamma_k_integral_oracle(arg, args.tol.unwrap_or(1e-10))?;
            (gamma_k(arg)?, oracle, 1e-8)
        }
        Oracle::Limit => {
            let arg = KGammaArg::new(bound.get("x")?, bound.get("k")?)?;
            let n = bound.get_or("n", 1e6);
            if n < 1.0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            (gamma_k(arg)?, gamma_k_limit_oracle(arg, n as u64)?, 1e-4)
        }
        Oracle::WrightRep => {
            let p = bound.params()?;
            let x = bound.get("x")?;
            let tol = args.tol.unwrap_or(1e-14);
            let primary = w_kbessel(&p, x, tol)?;
            let rep = wright_representation(&p, x, tol)?;
            if !primary.converged || !rep.converged {
                return Err(Failure {
                    exit: Exit::Numerical,
                    message: "series did not meet the tolerance".into(),
                });
            }
            (primary.value, rep.value, 1e-10)
        }
        Oracle::ClassicalLimit => {
            let nu = bound.get("nu")?;
            let x = bound.get("x")?;
            if x < 0.0 {
                return Err(Failure::usage("classical-limit needs x >= 0"));
            }
            let shape = KBesselShape::new(1.0, nu, 1.0, 1.0)?;
            let primary = modified_i_kbessel(&shape, x, args.tol.unwrap_or(1e-15))?.value;
            (primary, classical_modified_bessel(nu, x), 1e-12)
        }
    };
    let deviation = if oracle == 0.0 { (primary - oracle).abs() } else { ((primary - oracle) / oracle).abs() };
    let pass = deviation <= tolerance;
    let name = match args.oracle {
        Oracle::Integral => "integral",
        Oracle::Limit => "limit",
        Oracle::WrightRep => "wright-rep",
        Oracle::ClassicalLimit => "classical-limit",
    };
    let doc = match args.output.format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "oracle-compare",
            "oracle": name,
            "params": params_json(&bound),
            "primary": primary,
            "oracle_value": oracle,
            "relative_deviation": deviation,
            "tolerance": tolerance,
            "pass": pass,
        })),
        Format::Csv => {
            let mut csv = Csv::new(&["oracle", "primary", "oracle_value", "relative_deviation", "tolerance", "pass"]);
            csv.row(&[name.into(), num(primary), num(oracle), num(deviation), num(tolerance), pass.to_string()]);
            csv.finish()
        }
        Format::Text => format!(
            "oracle: {name}\nprimary: {}\noracle_value: {}\nrelative_deviation: {}\ntolerance: {}\npass: {pass}\n",
            num(primary),
            num(oracle),
            num(deviation),
            num(tolerance)
        ),
    };
    emit(&doc, args.output.out.as_deref())?;
    Ok(if pass { Exit::Ok } else { Exit::Violation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_series_at_two() {
        assert!((classical_modified_bessel(0.0, 2.0) - 2.2795853023360673).abs() < 1e-15);
    }
}
