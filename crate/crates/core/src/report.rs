//! Report assembly: one function per subcommand, each producing the three
//! deterministic artifacts — a human-readable report, a canonical JSON dump
//! of every piecewise-linear function (exact fraction strings), and a plot
//! table sampled on the scenario's grid.
//!
//! Identical scenarios produce byte-identical artifacts: all maps are
//! ordered, all numbers are exact fractions, and nothing here looks at the
//! clock or the environment.
//!
//! The `passed` flag separates a *mathematical* failure (an identity or
//! bound check that did not hold — CLI exit 1) from input errors, which are
//! returned as `Err` (CLI exit 2).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{sharpness_family, transversality_check};
use crate::plf::{Interval, PLFunction};
use crate::projective::{
    self, smt_report, Hypersurface, NevanlinnaReport, PositionStatus, VarietySpec,
};
use crate::rat::{format_rat, rat, rat_int, Rat};
use crate::scenario::{render_scenario, sharpness_scenario, Scenario};
use crate::valuation::PrimeConfig;

/// The three artifacts of a run plus the mathematical verdict.
#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub report: String,
    pub dump: String,
    pub plot: String,
    pub passed: bool,
}

/// Named columns for the dump and plot artifacts.
type Columns<'a> = Vec<(String, &'a PLFunction)>;

fn render_dump(columns: &Columns) -> String {
    let map: BTreeMap<&str, _> = columns
        .iter()
        .map(|(name, f)| (name.as_str(), f.to_canonical()))
        .collect();
    let mut text = serde_json::to_string_pretty(&map).expect("canonical forms serialize");
    text.push('\n');
    text
}

fn render_plot(grid: &[Rat], columns: &Columns) -> String {
    let mut out = String::from("s");
    for (name, _) in columns {
        out.push('\t');
        out.push_str(name);
    }
    out.push('\n');
    for s in grid {
        out.push_str(&format_rat(s));
        for (_, f) in columns {
            out.push('\t');
            match f.eval(s) {
                Ok(v) => out.push_str(&format_rat(&v)),
                Err(_) => out.push('-'),
            }
        }
        out.push('\n');
    }
    out
}

fn scenario_header(scenario: &Scenario) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "prime p = {}; target P^{}; multiplier M = {}",
        scenario.prime.prime(),
        scenario.ambient_dim,
        scenario.multiplier
    );
    let _ = writeln!(
        out,
        "map mode: {}; no common zero: {}",
        if scenario.map.is_polynomial_mode() {
            "polynomial"
        } else {
            "truncated series"
        },
        scenario.map.no_common_zero()
    );
    out
}

/// Check the first main theorem identity `m + N = d*T + const` on every
/// hypersurface, comparing the piecewise-linear route with the independent
/// Jensen route through the lowest pullback coefficient.
pub fn run_fmt_check(scenario: &Scenario) -> Result<ReportBundle> {
    let cfg = &scenario.prime;
    let t = scenario.map.characteristic(cfg)?;
    let mut report = String::from("first main theorem check\n");
    report.push_str(&scenario_header(scenario));
    let mut columns: Columns = vec![("T".into(), &t)];
    let mut passed = true;
    let mut rows = Vec::new();
    let mut stored: Vec<(PLFunction, PLFunction)> = Vec::new();
    for d in &scenario.hypersurfaces {
        let m = projective::proximity(&scenario.map, d, cfg)?;
        let n = projective::counting(&scenario.map, d, cfg)?;
        stored.push((m, n));
    }
    for (i, d) in scenario.hypersurfaces.iter().enumerate() {
        let jensen = projective::jensen_constant(&scenario.map, d, cfg)?;
        match projective::fmt_residual(&scenario.map, d, cfg) {
            Ok(residual) => {
                let agree = residual == jensen;
                passed &= agree;
                rows.push(format!(
                    "hypersurface {i}: {} (degree {})\n  m + N - d*T = {} (constant, exact); jensen route -log|a_k| = {}; {}",
                    d.poly(),
                    d.degree(),
                    format_rat(&residual),
                    format_rat(&jensen),
                    if agree { "agree" } else { "MISMATCH" },
                ));
            }
            Err(Error::NonConstantResidual) => {
                passed = false;
                rows.push(format!(
                    "hypersurface {i}: {} (degree {})\n  m + N - d*T is NOT constant: mathematical check failed",
                    d.poly(),
                    d.degree(),
                ));
            }
            Err(e) => return Err(e),
        }
    }
    for (i, (m, n)) in stored.iter().enumerate() {
        columns.push((format!("m[{i}]"), m));
        columns.push((format!("N[{i}]"), n));
    }
    for row in rows {
        report.push_str(&row);
        report.push('\n');
    }
    let _ = writeln!(report, "RESULT: {}", if passed { "PASS" } else { "FAIL" });
    Ok(ReportBundle {
        dump: render_dump(&columns),
        plot: render_plot(&scenario.s_grid, &columns),
        report,
        passed,
    })
}

/// Derive the position status from the scenario's witness points: at every
/// point, the hypersurfaces through it (plus the variety's equations) must
/// meet transversally. No witness points means the hypotheses stay
/// asserted.
fn witness_status(scenario: &Scenario) -> Result<(PositionStatus, Vec<String>)> {
    if scenario.witness_points.is_empty() {
        return Ok((PositionStatus::Asserted, vec![]));
    }
    let mut notes = Vec::new();
    let mut all_ok = true;
    for (k, point) in scenario.witness_points.iter().enumerate() {
        let through: Vec<Hypersurface> = scenario
            .hypersurfaces
            .iter()
            .filter(|d| {
                d.poly()
                    .eval_at_point(point.coords())
                    .map(|v| v.is_zero())
                    .unwrap_or(false)
            })
            .cloned()
            .collect();
        let count = through.len();
        let ok = transversality_check(&through, &scenario.variety, point)?;
        all_ok &= ok;
        notes.push(format!(
            "witness {k}: {count} hypersurface(s) through it; transverse: {}",
            if ok { "yes" } else { "NO" }
        ));
    }
    let status = if all_ok {
        PositionStatus::Witnessed {
            points: scenario.witness_points.len(),
        }
    } else {
        PositionStatus::Asserted
    };
    Ok((status, notes))
}

fn smt_columns<'a>(rep: &'a NevanlinnaReport) -> Columns<'a> {
    let mut columns: Columns = vec![("T".into(), &rep.characteristic)];
    for (i, h) in rep.hypersurfaces.iter().enumerate() {
        columns.push((format!("m[{i}]"), &h.proximity));
        columns.push((format!("N[{i}]"), &h.counting));
    }
    columns.push(("sum".into(), &rep.weighted_sum));
    columns.push(("bound".into(), &rep.bound));
    columns.push(("margin".into(), &rep.margin));
    columns
}

fn render_smt_body(rep: &NevanlinnaReport, report: &mut String) {
    let _ = writeln!(report, "characteristic T: {}", rep.characteristic);
    for (i, h) in rep.hypersurfaces.iter().enumerate() {
        let _ = writeln!(report, "hypersurface {i} (degree {}):", h.degree);
        let _ = writeln!(report, "  m: {}", h.proximity);
        let _ = writeln!(report, "  N: {}", h.counting);
        let _ = writeln!(
            report,
            "  m + N - d*T = {} (constant, exact)",
            format_rat(&h.fmt_residual)
        );
        if let Some(defect) = &h.defect {
            let _ = writeln!(report, "  defect = {}", format_rat(defect));
        }
    }
    let _ = writeln!(report, "sum of m_i/deg D_i: {}", rep.weighted_sum);
    let _ = writeln!(report, "bound (n-1+max_i M/deg D_i)*T: {}", rep.bound);
    let _ = writeln!(report, "margin = bound - sum: {}", rep.margin);
    let slope = rep
        .verdict
        .margin_eventual_slope
        .as_ref()
        .map(format_rat)
        .unwrap_or_else(|| "undefined (bounded window)".into());
    let _ = writeln!(
        report,
        "verdict on {}: margin eventual slope {}; infimum {}; bounded below: {}",
        rep.verdict.window,
        slope,
        rep.verdict.margin_infimum,
        if rep.verdict.bounded_below {
            "yes"
        } else {
            "NO"
        }
    );
    if let Some(rank) = &rep.proximity_rank {
        let entries: Vec<String> = rank
            .entries
            .iter()
            .map(|(i, s)| format!("(D{i}: {})", format_rat(s)))
            .collect();
        let _ = writeln!(
            report,
            "proximity slopes sorted: {}; all but top n = {} bounded: {}",
            entries.join(", "),
            rank.variety_dim,
            if rank.passes { "yes" } else { "NO" }
        );
    }
}

/// Evaluate the second-main-theorem bound and margin for the scenario.
pub fn run_smt_report(scenario: &Scenario) -> Result<ReportBundle> {
    let cfg = &scenario.prime;
    if !projective::verify_image_in_variety(&scenario.map, &scenario.variety, cfg)? {
        return Err(Error::ImageNotInVariety);
    }
    let (status, witness_notes) = witness_status(scenario)?;
    let rep = smt_report(
        &scenario.map,
        &scenario.hypersurfaces,
        &scenario.variety,
        scenario.multiplier,
        cfg,
        status,
    )?;
    let mut report = String::from("second main theorem report\n");
    report.push_str(&scenario_header(scenario));
    let _ = writeln!(
        report,
        "variety: dim n = {} with {} equation(s); image in variety: {}",
        rep.variety_dim,
        scenario.variety.equations().len(),
        if rep.image_in_variety { "yes" } else { "NO" }
    );
    let _ = writeln!(report, "position hypotheses: {}", rep.position_status);
    for note in &witness_notes {
        let _ = writeln!(report, "  {note}");
    }
    render_smt_body(&rep, &mut report);
    let witness_ok = matches!(rep.position_status, PositionStatus::Witnessed { .. })
        || scenario.witness_points.is_empty();
    let passed = rep.verdict.bounded_below && witness_ok;
    let _ = writeln!(report, "RESULT: {}", if passed { "PASS" } else { "FAIL" });
    let columns = smt_columns(&rep);
    Ok(ReportBundle {
        dump: render_dump(&columns),
        plot: render_plot(&scenario.s_grid, &columns),
        report,
        passed,
    })
}

/// Exact defects for every hypersurface; checks `0 <= defect <= 1`.
pub fn run_defect(scenario: &Scenario) -> Result<ReportBundle> {
    let cfg = &scenario.prime;
    let t = scenario.map.characteristic(cfg)?;
    let mut report = String::from("defect report\n");
    report.push_str(&scenario_header(scenario));
    let mut columns: Columns = vec![("T".into(), &t)];
    let mut stored = Vec::new();
    let mut passed = true;
    let mut sum = rat_int(0);
    let mut lines = Vec::new();
    for (i, d) in scenario.hypersurfaces.iter().enumerate() {
        let delta = projective::defect(&scenario.map, d, cfg)?;
        let in_range = rat_int(0) <= delta && delta <= rat_int(1);
        passed &= in_range;
        sum += &delta;
        lines.push(format!(
            "hypersurface {i} (degree {}): defect = {}{}",
            d.degree(),
            format_rat(&delta),
            if in_range { "" } else { "  OUT OF RANGE" }
        ));
        stored.push(projective::proximity(&scenario.map, d, cfg)?);
    }
    for (i, m) in stored.iter().enumerate() {
        columns.push((format!("m[{i}]"), m));
    }
    for line in lines {
        report.push_str(&line);
        report.push('\n');
    }
    let _ = writeln!(report, "defect sum: {}", format_rat(&sum));
    let _ = writeln!(report, "RESULT: {}", if passed { "PASS" } else { "FAIL" });
    Ok(ReportBundle {
        dump: render_dump(&columns),
        plot: render_plot(&scenario.s_grid, &columns),
        report,
        passed,
    })
}

/// Newton polygons, disk zero counts on the grid, and counting functions
/// for every coordinate and every pullback.
pub fn run_polygon(scenario: &Scenario) -> Result<ReportBundle> {
    let cfg = &scenario.prime;
    let mut report = String::from("newton polygon report\n");
    report.push_str(&scenario_header(scenario));
    let mut owned: Vec<(String, PLFunction)> = Vec::new();

    for (i, coord) in scenario.map.coords().iter().enumerate() {
        if coord.is_zero() {
            let _ = writeln!(report, "coordinate {i}: 0 (skipped)");
            continue;
        }
        let polygon = coord.newton_polygon(cfg)?;
        let _ = writeln!(report, "coordinate {i}: {coord}");
        let _ = writeln!(
            report,
            "  polygon vertices: {}",
            format_vertices(polygon.vertices())
        );
        owned.push((format!("G[f{i}]"), coord.gauss_norm(cfg)?));
    }
    for (j, d) in scenario.hypersurfaces.iter().enumerate() {
        let pulled = d.pullback(&scenario.map, cfg)?;
        let polygon = pulled.newton_polygon(cfg)?;
        let _ = writeln!(report, "pullback {j}: {pulled}");
        let _ = writeln!(
            report,
            "  polygon vertices: {}",
            format_vertices(polygon.vertices())
        );
        let _ = writeln!(
            report,
            "  root log-radii: [{}]",
            polygon
                .slopes()
                .iter()
                .map(format_rat)
                .collect::<Vec<_>>()
                .join(", ")
        );
        let counts: Vec<String> = scenario
            .s_grid
            .iter()
            .map(|s| match pulled.zero_count(s, cfg) {
                Ok(c) => format!("n({}) = {c}", format_rat(s)),
                Err(_) => format!("n({}) = outside window", format_rat(s)),
            })
            .collect();
        let _ = writeln!(report, "  disk zero counts: {}", counts.join(", "));
        owned.push((format!("G[Q{j}]"), pulled.gauss_norm(cfg)?));
        owned.push((format!("N[Q{j}]"), pulled.counting_plf(cfg)?));
    }
    let columns: Columns = owned.iter().map(|(n, f)| (n.clone(), f)).collect();
    let _ = writeln!(report, "RESULT: PASS");
    Ok(ReportBundle {
        dump: render_dump(&columns),
        plot: render_plot(&scenario.s_grid, &columns),
        report,
        passed: true,
    })
}

fn format_vertices(vertices: &[(usize, Rat)]) -> String {
    let parts: Vec<String> = vertices
        .iter()
        .map(|(i, v)| format!("({i}, {})", format_rat(v)))
        .collect();
    format!("[{}]", parts.join(", "))
}

/// Output of [`run_sharpness`]: the artifacts plus the generated scenario
/// document, so the configuration can be rerun through the other
/// subcommands.
#[derive(Debug, Clone)]
pub struct SharpnessRun {
    pub bundle: ReportBundle,
    pub scenario_toml: String,
    pub scenario: Scenario,
}

/// Generate the tight configuration for `(n, d, p)`, verify the equality
/// `sum m_i/d = (n - 1 + 1/d) T + O(1)` exactly on `s >= 0`, and check that
/// the defects add up to `n - 1 + 1/d`.
pub fn run_sharpness(n: usize, d: u32, p: u64, s_grid: Vec<Rat>) -> Result<SharpnessRun> {
    let cfg = PrimeConfig::new(p)?;
    let family = sharpness_family(n, d, &cfg)?;
    let scenario = sharpness_scenario(&family, s_grid);
    let scenario_toml = render_scenario(&scenario);

    let rep = smt_report(
        &family.map,
        &family.hypersurfaces,
        &VarietySpec::projective_space(n),
        1,
        &cfg,
        PositionStatus::Witnessed { points: 1 },
    )?;

    let upper = Interval::at_least(rat_int(0));
    let margin_constant = rep.margin.restrict(&upper)?.is_constant_on(&upper)?;
    let defect_sum: Rat = rep
        .hypersurfaces
        .iter()
        .map(|h| h.defect.clone().expect("polynomial mode"))
        .sum();
    let expected_sum = rat_int(n as i64 - 1) + rat(1, d as i64);
    let defects_tight = defect_sum == expected_sum;

    let mut report = String::from("tight configuration report\n");
    let _ = writeln!(report, "n = {n}, d = {d}, p = {p}");
    for (i, h) in family.hypersurfaces.iter().enumerate() {
        let _ = writeln!(report, "Q[{i}] = {}", h.poly());
    }
    let _ = writeln!(
        report,
        "witness P = ({})",
        family
            .witness
            .coords()
            .iter()
            .map(format_rat)
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(report, "transversality at P: verified by the generator");
    render_smt_body(&rep, &mut report);
    match &margin_constant {
        Some(c) => {
            let _ = writeln!(
                report,
                "equality: (n-1+1/d)*T - sum m_i/d is the constant {} on s >= 0 (exact)",
                format_rat(c)
            );
        }
        None => {
            let _ = writeln!(report, "equality FAILED: margin is not constant on s >= 0");
        }
    }
    let _ = writeln!(
        report,
        "defect sum = {} (expected n - 1 + 1/d = {})",
        format_rat(&defect_sum),
        format_rat(&expected_sum)
    );
    let passed = margin_constant.is_some() && defects_tight;
    let _ = writeln!(report, "RESULT: {}", if passed { "PASS" } else { "FAIL" });

    let columns = smt_columns(&rep);
    let bundle = ReportBundle {
        dump: render_dump(&columns),
        plot: render_plot(&scenario.s_grid, &columns),
        report,
        passed,
    };
    Ok(SharpnessRun {
        bundle,
        scenario_toml,
        scenario,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    const LINE_SCENARIO: &str = r#"
prime = 3
dimension = 1
s_grid = ["-1", "0", "1", "2"]

[map]
coordinates = [{ coeffs = ["0", "1"] }, { coeffs = ["1"] }]

[[hypersurfaces]]
degree = 1
monomials = [{ coeff = "1", exps = [1, 0] }]

[[hypersurfaces]]
degree = 1
monomials = [{ coeff = "1", exps = [0, 1] }]
"#;

    #[test]
    fn fmt_bundle_passes_and_is_deterministic() {
        let scenario = parse_scenario(LINE_SCENARIO).unwrap();
        let a = run_fmt_check(&scenario).unwrap();
        let b = run_fmt_check(&scenario).unwrap();
        assert!(a.passed);
        assert_eq!(a.report, b.report);
        assert_eq!(a.dump, b.dump);
        assert_eq!(a.plot, b.plot);
        assert!(a.report.contains("RESULT: PASS"));
        // plot has one row per grid point plus a header
        assert_eq!(a.plot.lines().count(), 5);
        assert!(!a.plot.contains('.'), "no floating point in artifacts");
    }

    #[test]
    fn smt_bundle_reports_positive_margin() {
        let scenario = parse_scenario(LINE_SCENARIO).unwrap();
        let bundle = run_smt_report(&scenario).unwrap();
        assert!(bundle.passed);
        assert!(bundle.report.contains("proximity slopes sorted"));
    }

    #[test]
    fn defect_bundle_in_range() {
        let scenario = parse_scenario(LINE_SCENARIO).unwrap();
        let bundle = run_defect(&scenario).unwrap();
        assert!(bundle.passed);
        assert!(bundle.report.contains("defect sum: 1"));
    }

    #[test]
    fn polygon_bundle_counts() {
        let scenario = parse_scenario(LINE_SCENARIO).unwrap();
        let bundle = run_polygon(&scenario).unwrap();
        assert!(bundle.report.contains("n(0) = 1"));
    }

    #[test]
    fn sharpness_run_is_tight() {
        let grid = vec![rat_int(0), rat_int(1), rat_int(2), rat_int(3)];
        let run = run_sharpness(2, 2, 3, grid).unwrap();
        assert!(run.bundle.passed);
        assert!(run.bundle.report.contains("defect sum = 3/2"));
        // margin column in the plot table is constant 0
        for line in run.bundle.plot.lines().skip(1) {
            assert!(line.ends_with("\t0"), "margin not 0 in {line}");
        }
        // the emitted scenario re-parses
        let reparsed = parse_scenario(&run.scenario_toml).unwrap();
        assert_eq!(reparsed.hypersurfaces, run.scenario.hypersurfaces);
    }

    #[test]
    fn image_not_in_variety_is_a_precondition_error() {
        let text = LINE_SCENARIO.to_string()
            + r#"
[variety]
dimension = 1
equations = [[{ coeff = "1", exps = [1, 0] }]]
"#;
        let scenario = parse_scenario(&text).unwrap();
        assert!(matches!(
            run_smt_report(&scenario),
            Err(Error::ImageNotInVariety)
        ));
    }
}
