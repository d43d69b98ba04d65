//! Parser for the operator-spec file format: one `[operator]` or
//! `[negation]` section of `key = value` lines, `#` comments, unknown
//! keys rejected.

use std::collections::BTreeMap;
use std::path::Path;

use unikit::negations::{build_negation, Negation, NegationSpec};
use unikit::uninorms::{
    band_ordinal_sum, band_rescale, conjugate_shift, drastic_band_uninorm, minmax_uninorm, power_band_uninorm,
    representable_uninorm, t_conorm_max, t_conorm_prob_sum, t_norm_drastic, t_norm_min, t_norm_product,
    BinaryOperator, CrossMode, GeneratorDescriptor, OperatorKind, OuterOps,
};

/// A parse or validation failure, with the offending line when known.
#[derive(Debug)]
pub struct SpecError {
    pub message: String,
    pub line: Option<usize>,
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl SpecError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self { message: message.into(), line: Some(line) }
    }

    fn general(message: impl Into<String>) -> Self {
        Self { message: message.into(), line: None }
    }
}

/// Either side of the spec-file grammar.
pub enum ParsedSpec {
    Operator(BinaryOperator),
    Negation(Negation),
}

struct Section {
    kind: String,
    kind_line: usize,
    entries: BTreeMap<String, (String, usize)>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key).map(|(v, _)| v)
    }

    fn require(&mut self, key: &str) -> Result<String, SpecError> {
        self.take(key)
            .ok_or_else(|| SpecError::at(self.kind_line, format!("missing key `{key}` for builder")))
    }

    fn require_f64(&mut self, key: &str) -> Result<f64, SpecError> {
        let line = self.line_of(key);
        let raw = self.require(key)?;
        raw.parse::<f64>().map_err(|_| SpecError::at(line, format!("key `{key}`: not a number: `{raw}`")))
    }

    fn take_bool(&mut self, key: &str, default: bool) -> Result<bool, SpecError> {
        let line = self.line_of(key);
        match self.take(key) {
            None => Ok(default),
            Some(v) => match v.as_str() {
                "true" => Ok(true),
                "false" => Ok(false),
                other => Err(SpecError::at(line, format!("key `{key}`: expected true or false, got `{other}`"))),
            },
        }
    }

    fn line_of(&self, key: &str) -> usize {
        self.entries.get(key).map(|&(_, l)| l).unwrap_or(self.kind_line)
    }

    fn reject_leftovers(&self) -> Result<(), SpecError> {
        if let Some((key, (_, line))) = self.entries.iter().next() {
            return Err(SpecError::at(*line, format!("unknown key `{key}`")));
        }
        Ok(())
    }
}

fn parse_section(text: &str) -> Result<Section, SpecError> {
    let mut section: Option<Section> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if section.is_some() {
                return Err(SpecError::at(line_no, "only one section per file"));
            }
            if name != "operator" && name != "negation" {
                return Err(SpecError::at(line_no, format!("unknown section `[{name}]`")));
            }
            section = Some(Section { kind: name.to_string(), kind_line: line_no, entries: BTreeMap::new() });
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(SpecError::at(line_no, format!("expected `key = value`, got `{line}`")));
        };
        let sec = section
            .as_mut()
            .ok_or_else(|| SpecError::at(line_no, "key before any [operator] or [negation] section"))?;
        let key = key.trim().to_string();
        if sec.entries.contains_key(&key) {
            return Err(SpecError::at(line_no, format!("duplicate key `{key}`")));
        }
        sec.entries.insert(key, (value.trim().to_string(), line_no));
    }
    section.ok_or_else(|| SpecError::general("no [operator] or [negation] section found"))
}

/// Parses and builds a spec file.
pub fn load_spec(path: &Path) -> Result<ParsedSpec, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpecError::general(format!("cannot read {}: {e}", path.display())))?;
    let mut sec = parse_section(&text)?;
    let _ = sec.take("name");
    let neutral_override = match sec.take("neutral") {
        None => None,
        Some(v) => Some(
            v.parse::<f64>()
                .map_err(|_| SpecError::at(sec.kind_line, format!("key `neutral`: not a number: `{v}`")))?,
        ),
    };
    let builder_line = sec.line_of("builder");
    let builder = sec.require("builder")?;
    let spec = if sec.kind == "operator" {
        let mut op = build_operator(&builder, builder_line, &mut sec)?;
        if let Some(e) = neutral_override {
            op = op.with_neutral(e);
        }
        ParsedSpec::Operator(op)
    } else {
        if neutral_override.is_some() {
            return Err(SpecError::at(sec.kind_line, "`neutral` is not a negation key"));
        }
        ParsedSpec::Negation(build_negation_spec(&builder, builder_line, &mut sec)?)
    };
    sec.reject_leftovers()?;
    Ok(spec)
}

fn build_operator(builder: &str, line: usize, sec: &mut Section) -> Result<BinaryOperator, SpecError> {
    let wrap = |e: unikit::Error| SpecError::at(line, e.to_string());
    match builder {
        "representable" => {
            if let Some(g) = sec.take("generator") {
                if g != "logratio" {
                    return Err(SpecError::at(line, format!("unknown generator `{g}` (only logratio)")));
                }
            }
            let k = sec.require_f64("k")?;
            let disjunctive = sec.take_bool("disjunctive", true)?;
            Ok(representable_uninorm(GeneratorDescriptor::log_ratio(k).map_err(wrap)?, disjunctive))
        }
        "minmax" => {
            let t = match sec.require("t")?.as_str() {
                "min" => t_norm_min(),
                "product" => t_norm_product(),
                "drastic" => t_norm_drastic(),
                other => return Err(SpecError::at(line, format!("unknown t-norm `{other}`"))),
            };
            let s = match sec.require("s")?.as_str() {
                "max" => t_conorm_max(),
                "probsum" => t_conorm_prob_sum(),
                other => return Err(SpecError::at(line, format!("unknown t-conorm `{other}`"))),
            };
            let e = sec.require_f64("e")?;
            let mode = match sec.require("mode")?.as_str() {
                "min" => CrossMode::Min,
                "max" => CrossMode::Max,
                other => return Err(SpecError::at(line, format!("unknown cross mode `{other}`"))),
            };
            minmax_uninorm(t, s, e, mode).map_err(wrap)
        }
        "drastic-band" => {
            let e = sec.require_f64("e")?;
            drastic_band_uninorm(e).map_err(wrap)
        }
        "power-band" => Ok(power_band_uninorm()),
        "conjugate-shift" => {
            let base = sec.require("base")?;
            if base != "power-band" {
                return Err(SpecError::at(line, format!("unsupported shift base `{base}` (only power-band)")));
            }
            let w = sec.require_f64("w")?;
            let z = sec.require_f64("z")?;
            conjugate_shift(power_band_uninorm(), w, z).map_err(wrap)
        }
        "band-ordinal-sum" => {
            let inner_op = match sec.require("inner")?.as_str() {
                "power-band" => power_band_uninorm(),
                "representable" => {
                    let k = sec.require_f64("k")?;
                    representable_uninorm(GeneratorDescriptor::log_ratio(k).map_err(wrap)?, true)
                }
                other => return Err(SpecError::at(line, format!("unknown inner operator `{other}`"))),
            };
            let a = sec.require_f64("a")?;
            let d = sec.require_f64("d")?;
            let outer = match sec.require("outer")?.as_str() {
                "minmax" => OuterOps::MinMax,
                "prod-dualprod" => OuterOps::ProdDualProd,
                other => return Err(SpecError::at(line, format!("unknown outer completion `{other}`"))),
            };
            Ok(band_ordinal_sum(&band_rescale(&inner_op, a, d).map_err(wrap)?, outer))
        }
        "equf" => {
            let inst = unikit::catalog::catalog_instance("equf").map_err(wrap)?;
            Ok(inst.operator("U").map_err(wrap)?.clone())
        }
        "catalog" => {
            let instance = sec.require("instance")?;
            let operator = sec.require("operator")?;
            let inst = unikit::catalog::catalog_instance(&instance).map_err(wrap)?;
            Ok(inst.operator(&operator).map_err(wrap)?.clone())
        }
        "sampled" => {
            let file = sec.require("file")?;
            load_sampled_operator(Path::new(&file)).map_err(|e| SpecError::at(line, e.message))
        }
        other => Err(SpecError::at(line, format!("unknown operator builder `{other}`"))),
    }
}

fn build_negation_spec(builder: &str, line: usize, sec: &mut Section) -> Result<Negation, SpecError> {
    let wrap = |e: unikit::Error| SpecError::at(line, e.to_string());
    let spec = match builder {
        "standard" => NegationSpec::Standard,
        "sugeno" => NegationSpec::Sugeno { lambda: sec.require_f64("lambda")? },
        "step" => NegationSpec::Step { e: sec.require_f64("e")? },
        "powerlog" => NegationSpec::PowerLog,
        "table" => {
            let raw = sec.require("points")?;
            let mut points = Vec::new();
            for part in raw.split(';') {
                let Some((x, y)) = part.split_once(':') else {
                    return Err(SpecError::at(line, format!("table point `{part}` is not x:y")));
                };
                let parse = |s: &str| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| SpecError::at(line, format!("table value `{s}` is not a number")))
                };
                points.push((parse(x)?, parse(y)?));
            }
            NegationSpec::Table(points)
        }
        other => return Err(SpecError::at(line, format!("unknown negation builder `{other}`"))),
    };
    build_negation(spec).map_err(wrap)
}

/// Ingests a sampled operator from a `x,y,value` CSV over a rectangular
/// grid. Exact sample points evaluate to the stored values; everything
/// else interpolates bilinearly between the bracketing samples.
pub fn load_sampled_operator(path: &Path) -> Result<BinaryOperator, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpecError::general(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "x,y,value" => {}
        _ => return Err(SpecError::general("sampled CSV must start with the header `x,y,value`")),
    }
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(SpecError::at(line_no, "expected three comma-separated values"));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| SpecError::at(line_no, format!("`{s}` is not a number")))
        };
        rows.push((parse(fields[0])?, parse(fields[1])?, parse(fields[2])?));
    }
    if rows.is_empty() {
        return Err(SpecError::general("sampled CSV has no data rows"));
    }
    let mut xs: Vec<f64> = rows.iter().map(|r| r.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut ys: Vec<f64> = rows.iter().map(|r| r.1).collect();
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let mut values = vec![f64::NAN; xs.len() * ys.len()];
    for (x, y, v) in &rows {
        let i = xs.binary_search_by(|p| p.total_cmp(x)).unwrap();
        let j = ys.binary_search_by(|p| p.total_cmp(y)).unwrap();
        values[i * ys.len() + j] = *v;
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(SpecError::general("sampled CSV does not cover a full rectangular grid"));
    }
    let name = format!("sampled({})", path.display());
    let stride = ys.len();
    Ok(BinaryOperator::new(name, OperatorKind::Raw, move |x, y| {
        let locate = |axis: &[f64], v: f64| -> (usize, usize, f64) {
            match axis.binary_search_by(|p| p.total_cmp(&v)) {
                Ok(i) => (i, i, 0.0),
                Err(0) => (0, 0, 0.0),
                Err(i) if i >= axis.len() => (axis.len() - 1, axis.len() - 1, 0.0),
                Err(i) => {
                    let frac = (v - axis[i - 1]) / (axis[i] - axis[i - 1]);
                    (i - 1, i, frac)
                }
            }
        };
        let (i0, i1, fx) = locate(&xs, x);
        let (j0, j1, fy) = locate(&ys, y);
        let v00 = values[i0 * stride + j0];
        let v01 = values[i0 * stride + j1];
        let v10 = values[i1 * stride + j0];
        let v11 = values[i1 * stride + j1];
        let lo = v00 + (v01 - v00) * fy;
        let hi = v10 + (v11 - v10) * fy;
        lo + (hi - lo) * fx
    }))
}
