//! JSON API behind the browser demo. Everything returns a JSON string so
//! the page needs no bindings beyond `String -> String` calls; the exact
//! fraction strings inside are converted to floats only at the plotting
//! layer in JavaScript.

use serde_json::{json, Value};

use padic_nevanlinna::rat::{format_rat, parse_rat};
use padic_nevanlinna::report::{
    run_defect, run_fmt_check, run_polygon, run_sharpness, run_smt_report, ReportBundle,
};
use padic_nevanlinna::scenario::parse_scenario;
use padic_nevanlinna::series::EntireSeries;
use padic_nevanlinna::valuation::PrimeConfig;
use padic_nevanlinna::Rat;

fn bundle_json(bundle: &ReportBundle, extra: Value) -> String {
    let curves: Value =
        serde_json::from_str(&bundle.dump).expect("dump artifact is canonical JSON");
    let mut out = json!({
        "passed": bundle.passed,
        "report": bundle.report,
        "plot": bundle.plot,
        "curves": curves,
    });
    if let (Value::Object(base), Value::Object(add)) = (&mut out, extra) {
        base.extend(add);
    }
    out.to_string()
}

/// Generate the tight configuration for `(n, d, p)`, check the exact
/// equality, and return the curves together with the scenario document.
pub fn sharpness_report(n: usize, d: u32, p: u64) -> Result<String, String> {
    let grid = (0..=3).map(|k| Rat::from_integer(k.into())).collect();
    let run = run_sharpness(n, d, p, grid).map_err(|e| e.to_string())?;
    let defects: Vec<String> = run
        .scenario
        .hypersurfaces
        .iter()
        .map(|h| {
            padic_nevanlinna::projective::defect(&run.scenario.map, h, &run.scenario.prime)
                .map(|v| format_rat(&v))
        })
        .collect::<padic_nevanlinna::Result<_>>()
        .map_err(|e| e.to_string())?;
    Ok(bundle_json(
        &run.bundle,
        json!({
            "scenario_toml": run.scenario_toml,
            "defects": defects,
        }),
    ))
}

/// Newton polygon, Gauss norm, and counting function of one polynomial,
/// given as comma-separated exact fractions `a_0, a_1, ...`.
pub fn series_report(coeffs_csv: &str, p: u64) -> Result<String, String> {
    let cfg = PrimeConfig::new(p).map_err(|e| e.to_string())?;
    let coeffs: Vec<Rat> = coeffs_csv
        .split(',')
        .map(|part| parse_rat(part).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let f = EntireSeries::polynomial(coeffs);
    let polygon = f.newton_polygon(&cfg).map_err(|e| e.to_string())?;
    let gauss = f.gauss_norm(&cfg).map_err(|e| e.to_string())?;
    let counting = f.counting_plf(&cfg).map_err(|e| e.to_string())?;
    let vertices: Vec<Value> = polygon
        .vertices()
        .iter()
        .map(|(i, v)| json!([i, format_rat(v)]))
        .collect();
    let slopes: Vec<String> = polygon.slopes().iter().map(format_rat).collect();
    Ok(json!({
        "series": f.to_string(),
        "polygon": { "vertices": vertices, "root_log_radii": slopes },
        "curves": {
            "gauss_norm": gauss.to_canonical(),
            "counting": counting.to_canonical(),
        },
    })
    .to_string())
}

/// Parse a scenario document and run one of the standard subcommands:
/// `fmt-check`, `smt-report`, `defect`, or `polygon`.
pub fn scenario_report(toml_text: &str, subcommand: &str) -> Result<String, String> {
    let scenario = parse_scenario(toml_text).map_err(|e| e.to_string())?;
    let bundle = match subcommand {
        "fmt-check" => run_fmt_check(&scenario),
        "smt-report" => run_smt_report(&scenario),
        "defect" => run_defect(&scenario),
        "polygon" => run_polygon(&scenario),
        other => return Err(format!("unknown subcommand {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(bundle_json(&bundle, json!({})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharpness_json_shape() {
        let text = sharpness_report(2, 2, 3).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["passed"], Value::Bool(true));
        assert_eq!(v["defects"].as_array().unwrap().len(), 2);
        assert!(v["curves"]["margin"]["slopes"].is_array());
        assert!(v["scenario_toml"].as_str().unwrap().contains("prime = 3"));
    }

    #[test]
    fn series_json_shape() {
        let text = series_report("1, 1, 3", 3).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let vertices = v["polygon"]["vertices"].as_array().unwrap();
        assert_eq!(vertices.len(), 3);
        assert_eq!(v["polygon"]["root_log_radii"][1], "1");
        assert_eq!(v["curves"]["gauss_norm"]["slopes"][2], "2");
    }

    #[test]
    fn scenario_json_runs_subcommands() {
        let doc = r#"
prime = 3
dimension = 1
s_grid = ["0", "1", "2"]

[map]
coordinates = [{ coeffs = ["0", "1"] }, { coeffs = ["1"] }]

[[hypersurfaces]]
degree = 1
monomials = [{ coeff = "1", exps = [1, 0] }]
"#;
        for sub in ["fmt-check", "smt-report", "defect", "polygon"] {
            let text = scenario_report(doc, sub).unwrap();
            let v: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(v["passed"], Value::Bool(true), "{sub}");
        }
        assert!(scenario_report(doc, "unknown").is_err());
        assert!(scenario_report("prime = 4", "fmt-check").is_err());
    }

    #[test]
    fn bad_series_input_is_reported() {
        assert!(series_report("1, 0.5", 3).is_err());
        assert!(series_report("1, 2", 4).is_err());
        assert!(series_report("0", 3).is_err());
    }
}
