//! The analysis commands behind the CLI surface.

use std::path::Path;

use serde::Serialize;

use unikit::catalog::{verify_instance, InstanceReport, CATALOG_NAMES};
use unikit::implications::{check_implication_axioms, check_property, ImplicationProperty, PropertyReport};
use unikit::negations::classify_negation;
use unikit::numerics::{uniform_grid, Grid, Tolerances, DEFAULT_TRIPLE_GRID_N};
use unikit::representations::{extract_representation, scan_cuts, CutReport, CutRole, EqualityRecord};
use unikit::uninorms::{check_uninorm_axioms_seeded, AxiomReport, BinaryOperator, OperatorKind};

use crate::report::{emit, num, ReportEnvelope};
use crate::specfile::{load_spec, ParsedSpec};
use crate::CommonOpts;

const VERSION: &str = env!("CARGO_PKG_VERSION");

type Outcome = Result<bool, String>;

fn tolerances(common: &CommonOpts) -> Result<Tolerances, String> {
    let tol = Tolerances {
        eq_tol: common.tol,
        exact_tol: common.exact_tol,
        jump_floor: common.jump_floor,
        ..Tolerances::default()
    };
    tol.validate().map_err(|e| e.to_string())?;
    Ok(tol)
}

fn grid(common: &CommonOpts) -> Result<Grid, String> {
    uniform_grid(common.grid).map_err(|e| e.to_string())
}

fn envelope<T: Serialize>(common: &CommonOpts, command: &str, inputs: Vec<String>, pass: bool, payload: T) -> ReportEnvelope<T> {
    ReportEnvelope {
        tool_version: VERSION,
        command: command.to_string(),
        inputs,
        grid_n: common.grid,
        tolerances: Tolerances {
            eq_tol: common.tol,
            exact_tol: common.exact_tol,
            jump_floor: common.jump_floor,
            ..Tolerances::default()
        },
        seed: common.seed,
        pass,
        payload,
    }
}

pub fn verify_catalog(common: &CommonOpts, only: &[String], out: Option<&Path>, csv: Option<&Path>) -> Outcome {
    let names: Vec<String> = if only.is_empty() {
        CATALOG_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        for name in only {
            if !CATALOG_NAMES.contains(&name.as_str()) {
                return Err(format!("unknown catalog instance `{name}`"));
            }
        }
        only.to_vec()
    };
    let grid = grid(common)?;
    let tol = tolerances(common)?;
    let mut reports: Vec<InstanceReport> = Vec::new();
    for name in &names {
        reports.push(verify_instance(name, &grid, &tol).map_err(|e| e.to_string())?);
    }
    let pass = reports.iter().all(|r| r.pass);

    if let Some(path) = csv {
        let mut rows = String::from("instance,relation,pass,residual\n");
        for r in &reports {
            for o in &r.outcomes {
                rows.push_str(&format!("{},{},{},{}\n", r.name, o.description, o.pass, num(o.residual)));
            }
        }
        std::fs::write(path, rows).map_err(|e| e.to_string())?;
    }

    let report = envelope(common, "verify-catalog", names, pass, reports);
    emit(out, &report.render()).map_err(|e| e.to_string())?;
    Ok(pass)
}

#[derive(Serialize)]
#[serde(untagged)]
enum AxiomPayload {
    Uninorm(AxiomReport),
    Implication(Vec<PropertyReport>),
    Negation(unikit::negations::NegationClass),
}

pub fn axioms(common: &CommonOpts, op_path: &Path, out: Option<&Path>) -> Outcome {
    let grid = grid(common)?;
    let tol = tolerances(common)?;
    let (pass, payload) = match load_spec(op_path).map_err(|e| e.to_string())? {
        ParsedSpec::Operator(op) => {
            if op.kind() == OperatorKind::Implication {
                let mut reports = check_implication_axioms(&op, &grid, &tol);
                let triple = uniform_grid(DEFAULT_TRIPLE_GRID_N).map_err(|e| e.to_string())?;
                reports.push(
                    check_property(&op, ImplicationProperty::EP, &triple, &tol, None).map_err(|e| e.to_string())?,
                );
                (reports.iter().all(|r| r.holds), AxiomPayload::Implication(reports))
            } else {
                let triple = uniform_grid(DEFAULT_TRIPLE_GRID_N).map_err(|e| e.to_string())?;
                let report = check_uninorm_axioms_seeded(&op, &triple, &tol, common.seed);
                (report.pass, AxiomPayload::Uninorm(report))
            }
        }
        ParsedSpec::Negation(n) => {
            let class = classify_negation(&n, &grid, &tol).map_err(|e| e.to_string())?;
            (class.is_negation, AxiomPayload::Negation(class))
        }
    };
    let report = envelope(common, "axioms", vec![op_path.display().to_string()], pass, payload);
    emit(out, &report.render()).map_err(|e| e.to_string())?;
    Ok(pass)
}

fn parse_role(role: &str) -> Result<CutRole, String> {
    match role {
        "uninorm-cut" => Ok(CutRole::UninormCut),
        "implication-cut" => Ok(CutRole::ImplicationCut),
        other => Err(format!("unknown cut role `{other}` (uninorm-cut or implication-cut)")),
    }
}

fn cut_csv(reports: &[CutReport]) -> String {
    let mut csv = String::from("alpha,monotone,continuous,f0,f1,valid\n");
    for r in reports {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            num(r.alpha),
            r.monotone_ok,
            r.continuity.continuous,
            num(r.endpoint_low),
            num(r.endpoint_high),
            r.valid
        ));
    }
    csv
}

pub fn cuts(
    common: &CommonOpts,
    op_path: &Path,
    role: &str,
    alphas: Option<&str>,
    alpha_grid: usize,
    out: Option<&Path>,
) -> Outcome {
    let ParsedSpec::Operator(op) = load_spec(op_path).map_err(|e| e.to_string())? else {
        return Err("cuts requires an [operator] spec".into());
    };
    let role = parse_role(role)?;
    let alphas: Vec<f64> = match alphas {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number")))
            .collect::<Result<_, _>>()?,
        None => (1..=alpha_grid).map(|k| k as f64 / (alpha_grid + 1) as f64).collect(),
    };
    let grid = grid(common)?;
    let tol = tolerances(common)?;
    let reports = scan_cuts(&op, role, &alphas, &grid, &tol).map_err(|e| e.to_string())?;
    let valid = reports.iter().filter(|r| r.valid).count();
    emit(out, &cut_csv(&reports)).map_err(|e| e.to_string())?;
    let summary = format!("valid {valid} of {}\n", reports.len());
    if out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(true)
}

#[derive(Serialize)]
struct ExtractRecord {
    alpha: f64,
    reconstruction_residual: f64,
    u_star_axiom_residual: f64,
}

pub fn extract(
    common: &CommonOpts,
    op_path: Option<&Path>,
    catalog: Option<&str>,
    alpha: f64,
    out_dir: &Path,
) -> Outcome {
    let (op, input_name) = match (op_path, catalog) {
        (Some(path), None) => {
            let ParsedSpec::Operator(op) = load_spec(path).map_err(|e| e.to_string())? else {
                return Err("extract requires an [operator] spec".into());
            };
            (op, path.display().to_string())
        }
        (None, Some(reference)) => {
            let Some((instance, operator)) = reference.split_once(':') else {
                return Err(format!("catalog reference `{reference}` is not instance:operator"));
            };
            let inst = unikit::catalog::catalog_instance(instance).map_err(|e| e.to_string())?;
            let op = inst.operator(operator).map_err(|e| e.to_string())?.clone();
            (op, reference.to_string())
        }
        _ => return Err("extract needs exactly one of --op or --catalog".into()),
    };
    let grid = grid(common)?;
    let tol = tolerances(common)?;

    let record = match extract_representation(&op, alpha, &grid, &tol) {
        Ok(record) => record,
        Err(unikit::Error::Precondition(msg)) => {
            // The cut is not a continuous negation: report it and signal
            // an analysis-negative result.
            let reports = scan_cuts(&op, CutRole::ImplicationCut, &[alpha], &grid, &tol).map_err(|e| e.to_string())?;
            let report = envelope(common, "extract", vec![input_name], false, &reports[0]);
            print!("{}", report.render());
            eprintln!("invalid cut: {msg}");
            return Ok(false);
        }
        Err(e) => return Err(e.to_string()),
    };

    std::fs::create_dir_all(out_dir).map_err(|e| e.to_string())?;
    let mut n_csv = String::from("x,value\n");
    for &x in grid.points() {
        n_csv.push_str(&format!("{},{}\n", num(x), num(record.n_star.eval(x))));
    }
    std::fs::write(out_dir.join("n_star.csv"), n_csv).map_err(|e| e.to_string())?;

    let mut u_csv = String::from("x,y,value\n");
    for &x in grid.points() {
        for &y in grid.points() {
            u_csv.push_str(&format!("{},{},{}\n", num(x), num(y), num(record.u_star.eval(x, y))));
        }
    }
    std::fs::write(out_dir.join("u_star.csv"), u_csv).map_err(|e| e.to_string())?;

    let pass = record.reconstruction_residual <= tol.eq_tol;
    let payload = ExtractRecord {
        alpha: record.alpha,
        reconstruction_residual: record.reconstruction_residual,
        u_star_axiom_residual: record.u_star_axiom_residual,
    };
    let report = envelope(common, "extract", vec![input_name], pass, payload);
    std::fs::write(out_dir.join("record.json"), report.render()).map_err(|e| e.to_string())?;
    print!("{}", report.render());
    Ok(pass)
}

fn parse_exclusions(raw: Option<&str>) -> Result<Vec<(f64, f64)>, String> {
    let Some(raw) = raw else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for pair in raw.split(';') {
        let Some((x, y)) = pair.split_once(',') else {
            return Err(format!("exclusion `{pair}` is not x,y"));
        };
        let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number"));
        out.push((parse(x)?, parse(y)?));
    }
    Ok(out)
}

pub fn equal(common: &CommonOpts, a_path: &Path, b_path: &Path, exclude: Option<&str>, out: Option<&Path>) -> Outcome {
    let load_op = |path: &Path| -> Result<BinaryOperator, String> {
        match load_spec(path).map_err(|e| e.to_string())? {
            ParsedSpec::Operator(op) => Ok(op),
            ParsedSpec::Negation(_) => Err(format!("{}: equal requires [operator] specs", path.display())),
        }
    };
    let a = load_op(a_path)?;
    let b = load_op(b_path)?;
    let exclusions = parse_exclusions(exclude)?;
    let grid = grid(common)?;
    let tol = tolerances(common)?;
    let record: EqualityRecord = unikit::representations::operators_equal(&a, &b, &grid, &tol, &exclusions);
    let pass = record.max_residual <= tol.eq_tol;
    let report = envelope(
        common,
        "equal",
        vec![a_path.display().to_string(), b_path.display().to_string()],
        pass,
        record,
    );
    emit(out, &report.render()).map_err(|e| e.to_string())?;
    Ok(pass)
}

pub fn sample(common: &CommonOpts, op_path: &Path, out: Option<&Path>) -> Outcome {
    let ParsedSpec::Operator(op) = load_spec(op_path).map_err(|e| e.to_string())? else {
        return Err("sample requires an [operator] spec".into());
    };
    let grid = grid(common)?;
    let mut csv = String::from("x,y,value\n");
    for &x in grid.points() {
        for &y in grid.points() {
            csv.push_str(&format!("{},{},{}\n", num(x), num(y), num(op.eval(x, y))));
        }
    }
    emit(out, &csv).map_err(|e| e.to_string())?;
    Ok(true)
}
