//! The `check` subcommand: interpolation-inequality suites on JSON cases.

use hyperlift::bounds::{taylor_derivative_check, DerivativeTable};
use hyperlift::io::to_json;
use hyperlift::norms::{sup_abs_poly, DEFAULT_SUP_SAMPLES};
use hyperlift::{glaeser_check_poly, lagrange_coeff_check, LiftError, Poly64};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::commands::{check_grid, emit_json, read_input};
use crate::{Args, CliError, CliResult, Suite};

/// `f` given directly or as a sum of squares.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlaeserCaseSpec {
    #[serde(default)]
    f: Option<Vec<f64>>,
    #[serde(default)]
    squares: Option<Vec<Vec<f64>>>,
    /// Defaults to `sqrt(sup |f″|)`.
    #[serde(default, rename = "M")]
    m: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlaeserSpec {
    interval: [f64; 2],
    cases: Vec<GlaeserCaseSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LagrangeCaseSpec {
    coeffs: Vec<f64>,
    /// Defaults to the degree.
    #[serde(default)]
    m: Option<usize>,
    /// Defaults to `sup |P|` on `[0, B]`.
    #[serde(default, rename = "A")]
    a: Option<f64>,
    #[serde(rename = "B")]
    b: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LagrangeSpec {
    cases: Vec<LagrangeCaseSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaylorCaseSpec {
    coeffs: Vec<f64>,
    m: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaylorSpec {
    interval: [f64; 2],
    cases: Vec<TaylorCaseSpec>,
}

#[derive(Serialize)]
struct SuiteReport<R> {
    suite: &'static str,
    all_hold: bool,
    cases: Vec<R>,
}

fn parse<S: DeserializeOwned>(text: &str, what: &str) -> CliResult<S> {
    serde_json::from_str(text).map_err(|e| LiftError::InvalidInput(format!("{what} cases: {e}")).into())
}

fn interval(raw: [f64; 2]) -> CliResult<(f64, f64)> {
    let [a, b] = raw;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(LiftError::InvalidInput(format!("interval [{a}, {b}] must be finite with a < b")).into());
    }
    Ok((a, b))
}

fn glaeser_function(idx: usize, case: &GlaeserCaseSpec) -> CliResult<Poly64> {
    match (&case.f, &case.squares) {
        (Some(f), None) => Ok(Poly64::new(f.clone())),
        (None, Some(sq)) => Ok(sq.iter().map(|c| Poly64::new(c.clone())).fold(Poly64::zero(), |acc, p| &acc + &(&p * &p))),
        _ => Err(LiftError::InvalidInput(format!("case {idx}: give exactly one of `f` and `squares`")).into()),
    }
}

pub fn check(args: &Args) -> CliResult<()> {
    let suite = args.suite.ok_or_else(|| CliError::Usage("check needs --suite glaeser|lagrange|taylor".into()))?;
    check_grid(args)?;
    let text = read_input(&args.input)?;
    let json = match suite {
        Suite::Glaeser => {
            let spec: GlaeserSpec = parse(&text, "glaeser")?;
            let (a, b) = interval(spec.interval)?;
            let cases = spec
                .cases
                .iter()
                .enumerate()
                .map(|(idx, case)| {
                    let f = glaeser_function(idx, case)?;
                    let m = match case.m {
                        Some(m) => m,
                        None => sup_abs_poly(&f.nth_derivative(2), a, b, DEFAULT_SUP_SAMPLES).sqrt().max(f64::MIN_POSITIVE),
                    };
                    Ok(glaeser_check_poly(&f, (a, b), m, args.grid)?)
                })
                .collect::<CliResult<Vec<_>>>()?;
            let all_hold = cases.iter().all(|r| r.violations == 0);
            to_json(&SuiteReport { suite: "glaeser", all_hold, cases })?
        }
        Suite::Lagrange => {
            let spec: LagrangeSpec = parse(&text, "lagrange")?;
            let cases = spec
                .cases
                .iter()
                .map(|case| {
                    let p = Poly64::new(case.coeffs.clone());
                    let m = case.m.unwrap_or_else(|| p.degree().unwrap_or(0));
                    let a = match case.a {
                        Some(a) => a,
                        None if case.b > 0.0 => sup_abs_poly(&p, 0.0, case.b, DEFAULT_SUP_SAMPLES) * (1.0 + 1e-12),
                        None => 0.0,
                    };
                    Ok(lagrange_coeff_check(&p, m, a, case.b)?)
                })
                .collect::<CliResult<Vec<_>>>()?;
            let all_hold = cases.iter().all(|r| r.holds);
            to_json(&SuiteReport { suite: "lagrange", all_hold, cases })?
        }
        Suite::Taylor => {
            let spec: TaylorSpec = parse(&text, "taylor")?;
            let iv = interval(spec.interval)?;
            let cases = spec
                .cases
                .iter()
                .map(|case| {
                    let table = DerivativeTable::from_poly(&Poly64::new(case.coeffs.clone()), iv, case.m, args.grid);
                    Ok(taylor_derivative_check(&table, case.m)?)
                })
                .collect::<CliResult<Vec<_>>>()?;
            let all_hold = cases.iter().all(|r| r.holds);
            to_json(&SuiteReport { suite: "taylor", all_hold, cases })?
        }
    };
    emit_json(args.out.as_deref(), &json)
}
