//! Command-line front end. `run` does all the work so tests can drive it
//! without spawning a process.

use crate::germ::{lct_newton, GermError, PlaneGerm, DEFAULT_MAX_ITER};
use crate::rational::{fmt_q, parse_q, Q};
use crate::singular::singular_locus;
use crate::surface::{analyze, boyer_lower_bound, wps_lct, SurfaceError, SurfaceLct, SurfaceModel};
use crate::table::{
    enumerate_candidates, exceptionality, ke_status, verify_table, ClassificationReport, Dataset, DatasetError,
    RowInstance,
};
use crate::weights::{
    bishop_lichnerowicz, case_trichotomy, generic_quasismooth, generic_support, is_del_pezzo,
    is_hypersurface_well_formed, is_wps_well_formed, k_squared, milnor_number, parse_monomial, Case, Coeff,
    QuasiPolynomial, Quasismoothness, Quintuple, WeightError, VAR_NAMES,
};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "dplct", version, about = "Global log canonical thresholds of del Pezzo hypersurfaces")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Dataset file; defaults to $DPLCT_DATASET, then the bundled table.
    #[arg(long, global = true)]
    pub dataset: Option<PathBuf>,
    /// Cap on Newton–Puiseux adaptation steps per germ.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER, global = true)]
    pub max_iter: usize,
    /// Treat germ input as known only through this total degree.
    #[arg(long, global = true)]
    pub trunc: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, validity checks and singular locus of a quintuple.
    Info {
        #[arg(num_args = 4, required = true)]
        weights: Vec<u64>,
        #[arg(long)]
        degree: u64,
    },
    /// Global lct with its per-curve breakdown.
    Lct {
        #[arg(num_args = 4, required = true)]
        weights: Vec<u64>,
        #[arg(long)]
        degree: u64,
        /// Branch condition such as `contains_yzt=false`; repeatable.
        #[arg(long = "tag", value_parser = parse_tag)]
        tags: Vec<(String, bool)>,
        /// Polynomial file: one `monomial [coefficient]` per line.
        #[arg(long)]
        equation: Option<PathBuf>,
    },
    /// Main-case quintuples of a given index with bounded weights.
    Enumerate {
        #[arg(long = "I")]
        index: i64,
        #[arg(long)]
        max_a3: u64,
    },
    /// Recompute every column of the table.
    VerifyTable {
        path: Option<PathBuf>,
        /// Series parameter range, `a..b`.
        #[arg(long, default_value = "1..3", value_parser = parse_range)]
        n: (i64, i64),
    },
    /// lct of a plane curve germ.
    #[command(group(ArgGroup::new("input").required(true).args(["support", "germ"])))]
    GermLct {
        /// Exponents with unit coefficients, e.g. `(0,2),(3,0)`.
        #[arg(long)]
        support: Option<String>,
        /// Germ file: one `i j coefficient` per line.
        #[arg(long)]
        germ: Option<PathBuf>,
    },
}

fn parse_tag(s: &str) -> Result<(String, bool), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=true|false")?;
    let v = v.trim().parse::<bool>().map_err(|_| format!("{v:?} is not true or false"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a < 1 || b < a {
        return Err("need 1 <= a <= b".into());
    }
    Ok((a, b))
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Unsupported(String),
    Mismatch(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Mismatch(_) => "mismatch",
            CliError::Invalid(_) => "invalid_input",
            CliError::Unsupported(_) => "unsupported",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Unsupported(m) | CliError::Mismatch(m) => m,
        }
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn germ_unsupported(e: &GermError) -> bool {
    matches!(
        e,
        GermError::AdaptationExhausted { .. }
            | GermError::IrrationalRoot { .. }
            | GermError::NonIntegralSlope { .. }
            | GermError::TruncationTooSmall(_)
    )
}

impl From<GermError> for CliError {
    fn from(e: GermError) -> Self {
        if germ_unsupported(&e) {
            CliError::Unsupported(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        let unsupported = match &e {
            SurfaceError::Unsupported(_) | SurfaceError::NotMainCase(_) => true,
            SurfaceError::Germ { source, .. } => germ_unsupported(source),
            _ => false,
        };
        if unsupported {
            CliError::Unsupported(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

/// A command's result in every output format.
struct Rendered {
    json: Value,
    text: String,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
    /// Nonzero mismatch count turns into exit code 1 after printing.
    mismatches: usize,
}

const TABLE_HEADER: [&str; 7] = ["weights", "d", "I", "k2", "lct_branches", "ke", "exceptionality"];

fn weights_str(w: [u64; 4]) -> String {
    format!("({},{},{},{})", w[0], w[1], w[2], w[3])
}

fn cond_str(c: &BTreeMap<String, bool>) -> String {
    c.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

/// `value` alone for unconditional rows, else `cond:value` joined by `;`.
fn branch_cells<T: ToString>(items: &[(BTreeMap<String, bool>, T)]) -> String {
    items
        .iter()
        .map(|(c, v)| if c.is_empty() { v.to_string() } else { format!("{}:{}", cond_str(c), v.to_string()) })
        .collect::<Vec<_>>()
        .join(";")
}

fn table_csv_row(q: &Quintuple, lcts: &[(BTreeMap<String, bool>, Q)]) -> Vec<String> {
    let lct: Vec<_> = lcts.iter().map(|(c, v)| (c.clone(), fmt_q(v))).collect();
    let ke: Vec<_> = lcts.iter().map(|(c, v)| (c.clone(), format!("{:?}", ke_status(v)))).collect();
    let ex: Vec<_> = lcts.iter().map(|(c, v)| (c.clone(), format!("{:?}", exceptionality(v)))).collect();
    vec![
        weights_str(q.weights()),
        q.degree().to_string(),
        q.fano_index().to_string(),
        fmt_q(&k_squared(q)),
        branch_cells(&lct),
        branch_cells(&ke),
        branch_cells(&ex),
    ]
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn quintuple(weights: &[u64], degree: u64) -> Result<Quintuple, CliError> {
    let w: [u64; 4] = weights.try_into().map_err(|_| CliError::Invalid("expected four weights".into()))?;
    Ok(Quintuple::new(w, degree)?)
}

fn var_names(s: &[usize]) -> Vec<&'static str> {
    s.iter().map(|&i| VAR_NAMES[i]).collect()
}

fn cmd_info(weights: &[u64], degree: u64) -> Result<Rendered, CliError> {
    let q = quintuple(weights, degree)?;
    let support = generic_support(&q);
    let wps = is_wps_well_formed(q.weights());
    let hyp = !support.is_empty() && is_hypersurface_well_formed(&q, &support);
    let (qs_ok, qs_json, qs_text) = match generic_quasismooth(&q, &support) {
        Ok(Quasismoothness::Ok) => (true, json!({"status": "ok"}), "yes".to_string()),
        Ok(Quasismoothness::Fail(s)) => {
            let names = var_names(&s);
            let text = format!("no (S={{{}}})", names.join(","));
            (false, json!({"status": "fail", "witness": names}), text)
        }
        Err(e) => (false, json!({"status": "linear_cone", "message": e.to_string()}), format!("no ({e})")),
    };
    let case = case_trichotomy(&q);
    let milnor = milnor_number(&q).ok().map(|m| m.to_string());
    let locus = if qs_ok { singular_locus(&q, &support).ok() } else { None };
    let points: Option<Vec<String>> = locus.as_ref().map(|l| l.points.iter().map(|p| p.to_string()).collect());
    let bl = bishop_lichnerowicz(&q);
    let k2 = k_squared(&q);
    let json = json!({
        "weights": q.weights(),
        "degree": q.degree(),
        "I": q.fano_index(),
        "k2": fmt_q(&k2),
        "milnor_number": milnor,
        "wps_well_formed": wps,
        "hypersurface_well_formed": hyp,
        "quasismooth": qs_json,
        "del_pezzo": is_del_pezzo(&q),
        "case": to_json(&case),
        "bishop_lichnerowicz": [bl.0, bl.1],
        "singular_points": points,
        "boyer_bound": fmt_q(&boyer_lower_bound(&q, &support)),
        "wps_lct": fmt_q(&wps_lct(q.weights())),
    });
    let mut text = String::new();
    let mut line = |k: &str, v: String| text.push_str(&format!("{k:<26}{v}\n"));
    line("quintuple", q.to_string());
    line("I", q.fano_index().to_string());
    line("K^2", fmt_q(&k2));
    line("Milnor number", milnor.clone().unwrap_or_else(|| "-".into()));
    line("WPS well formed", wps.to_string());
    line("hypersurface well formed", hyp.to_string());
    line("quasismooth", qs_text);
    line("del Pezzo", is_del_pezzo(&q).to_string());
    line("case", format!("{case:?}"));
    line("Bishop-Lichnerowicz", format!("{}, {}", bl.0, bl.1));
    let sing = match &points {
        None => "-".to_string(),
        Some(p) if p.is_empty() => "smooth".to_string(),
        Some(p) => p.join(", "),
    };
    line("singular points", sing);
    let csv_rows = vec![table_csv_row(&q, &[])];
    Ok(Rendered { json, text, csv_header: TABLE_HEADER.to_vec(), csv_rows, mismatches: 0 })
}

/// Reads `monomial [coefficient]` lines; `#` starts a comment.
fn read_equation(path: &Path, q: &Quintuple) -> Result<QuasiPolynomial, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let mut terms = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: String| CliError::Invalid(format!("{}:{}: {m}", path.display(), no + 1));
        let mut parts = line.split_whitespace();
        let mono = parse_monomial(parts.next().unwrap_or("")).map_err(|e| bad(e.to_string()))?;
        let coeff = match parts.next() {
            Some(c) => parse_q(c).map_err(|e| bad(e.to_string()))?,
            None => Q::from_integer(1.into()),
        };
        if parts.next().is_some() {
            return Err(bad("expected `monomial [coefficient]`".into()));
        }
        if terms.insert(mono, Coeff::Value(coeff)).is_some() {
            return Err(bad("repeated monomial".into()));
        }
    }
    Ok(QuasiPolynomial::new(q.clone(), terms)?)
}

#[derive(Serialize)]
struct BranchOut {
    cond: BTreeMap<String, bool>,
    #[serde(with = "crate::rational::serde_q")]
    lct: Q,
    #[serde(with = "crate::rational::serde_opt_q")]
    table_value: Option<Q>,
    ke: crate::table::KeStatus,
    exceptionality: crate::table::Exceptionality,
    analysis: SurfaceLct,
}

/// Branches of `inst` compatible with `tags`.
fn select_branches(inst: &RowInstance, tags: &BTreeMap<String, bool>) -> Result<Vec<usize>, CliError> {
    let known: std::collections::BTreeSet<&String> = inst.branches.iter().flat_map(|b| b.cond.keys()).collect();
    if let Some(t) = tags.keys().find(|t| !known.contains(t)) {
        return Err(CliError::Invalid(format!("tag {t} does not apply to {}", inst.label)));
    }
    Ok((0..inst.branches.len())
        .filter(|&k| inst.branches[k].cond.iter().all(|(c, v)| tags.get(c).is_none_or(|t| t == v)))
        .collect())
}

fn cmd_lct(
    cli: &Cli,
    weights: &[u64],
    degree: u64,
    tags: &[(String, bool)],
    equation: Option<&Path>,
) -> Result<Rendered, CliError> {
    let q = quintuple(weights, degree)?;
    let case = case_trichotomy(&q);
    if case != Case::MainCase {
        return Err(CliError::Unsupported(format!("{q} is outside the main case ({case:?})")));
    }
    let tags: BTreeMap<String, bool> = tags.iter().cloned().collect();
    let mut models: Vec<(SurfaceModel, Option<Q>)> = Vec::new();
    let source = match equation {
        Some(path) => {
            let poly = read_equation(path, &q)?;
            models.push((SurfaceModel::new(&poly, tags.clone(), vec![])?, None));
            json!({"equation": path.display().to_string()})
        }
        None => {
            let ds = Dataset::resolve(cli.dataset.as_deref())?;
            let inst = ds.find(&q)?.ok_or_else(|| {
                CliError::Invalid(format!("no shipped equation for {q}; pass --equation"))
            })?;
            for k in select_branches(&inst, &tags)? {
                models.push((inst.model(k)?, Some(inst.branches[k].value.clone())));
            }
            json!({"row": inst.label, "n": inst.n})
        }
    };
    let mut branches = Vec::new();
    for (model, expected) in models {
        let boyer = boyer_lower_bound(&q, model.support());
        let cond = model.tags().clone();
        let analysis = analyze(&model.with_max_iter(cli.max_iter))?;
        let v = analysis.value.clone();
        branches.push((boyer, BranchOut {
            cond,
            ke: ke_status(&v),
            exceptionality: exceptionality(&v),
            lct: v,
            table_value: expected,
            analysis,
        }));
    }
    let json = json!({
        "quintuple": {"weights": q.weights(), "degree": q.degree()},
        "I": q.fano_index(),
        "source": source,
        "branches": branches.iter().map(|(b, o)| {
            let mut v = to_json(o);
            v["boyer_bound"] = Value::String(fmt_q(b));
            v
        }).collect::<Vec<_>>(),
    });
    let mut text = format!("{q}  I={}\n", q.fano_index());
    for (boyer, b) in &branches {
        let head = if b.cond.is_empty() { "lct".to_string() } else { format!("lct [{}]", cond_str(&b.cond)) };
        text.push_str(&format!(
            "{head} = {}  ({:?}, {:?})  attained by {} at {}\n",
            fmt_q(&b.lct),
            b.exceptionality,
            b.ke,
            b.analysis.witness.divisor,
            b.analysis.witness.point
        ));
        text.push_str(&format!("  Boyer bound {}\n", fmt_q(boyer)));
        for c in &b.analysis.curves {
            text.push_str(&format!(
                "  C_{}: lambda={} mult={} value={} at {}\n",
                VAR_NAMES[c.w],
                fmt_q(&c.lambda),
                c.multiplicity,
                fmt_q(&c.value),
                c.witness
            ));
            for p in &c.points {
                text.push_str(&format!(
                    "    {}: {} lct={}\n",
                    p.point,
                    p.germ.as_deref().unwrap_or("smooth"),
                    fmt_q(&p.local_lct)
                ));
            }
        }
        for m in &b.analysis.members {
            text.push_str(&format!("  {}: {} lines at {} value={}\n", m.divisor, m.lines, m.point.point, fmt_q(&m.value)));
        }
    }
    let lcts: Vec<_> = branches.iter().map(|(_, b)| (b.cond.clone(), b.lct.clone())).collect();
    let csv_rows = vec![table_csv_row(&q, &lcts)];
    Ok(Rendered { json, text, csv_header: TABLE_HEADER.to_vec(), csv_rows, mismatches: 0 })
}

fn cmd_enumerate(cli: &Cli, index: i64, max_a3: u64) -> Result<Rendered, CliError> {
    if index < 1 || max_a3 < 1 {
        return Err(CliError::Invalid("need I >= 1 and max-a3 >= 1".into()));
    }
    let ds = Dataset::resolve(cli.dataset.as_deref())?;
    let found = enumerate_candidates(index, max_a3);
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut csv_rows = Vec::new();
    for q in &found {
        let inst = ds.find(q)?;
        let lcts: Vec<(BTreeMap<String, bool>, Q)> = inst
            .as_ref()
            .map(|i| i.branches.iter().map(|b| (b.cond.clone(), b.value.clone())).collect())
            .unwrap_or_default();
        let row = inst.as_ref().map(|i| i.label.clone());
        entries.push(json!({
            "weights": q.weights(),
            "degree": q.degree(),
            "k2": fmt_q(&k_squared(q)),
            "table_row": row,
            "table_n": inst.as_ref().and_then(|i| i.n),
        }));
        text.push_str(&format!("{q}  {}\n", row.unwrap_or_else(|| "not in table".into())));
        csv_rows.push(table_csv_row(q, &lcts));
    }
    text.push_str(&format!("{} quintuples\n", found.len()));
    let json = json!({"I": index, "max_a3": max_a3, "count": found.len(), "quintuples": entries});
    Ok(Rendered { json, text, csv_header: TABLE_HEADER.to_vec(), csv_rows, mismatches: 0 })
}

fn cmd_verify(cli: &Cli, path: Option<&Path>, n: (i64, i64)) -> Result<Rendered, CliError> {
    let ds = Dataset::resolve(path.or(cli.dataset.as_deref()))?;
    let reports: Vec<ClassificationReport> = verify_table(&ds, n.0..=n.1)?;
    let bad = reports.iter().filter(|r| !r.mismatches.is_empty()).count();
    let mut text = String::new();
    for r in reports.iter().filter(|r| !r.mismatches.is_empty()) {
        let at = r.n.map(|n| format!(" n={n}")).unwrap_or_default();
        for m in &r.mismatches {
            text.push_str(&format!("{}{at}: {} expected {} computed {}\n", r.label, m.column, m.expected, m.computed));
        }
    }
    text.push_str(&format!("{bad} mismatches / {} rows\n", reports.len()));
    let csv_rows = reports
        .iter()
        .map(|r| {
            let q = Quintuple::new(r.weights, r.degree).expect("verified rows are quintuples");
            let lcts: Vec<_> = r.branches.iter().filter_map(|b| b.lct.clone().map(|v| (b.cond.clone(), v))).collect();
            table_csv_row(&q, &lcts)
        })
        .collect();
    let json = json!({"rows": reports.len(), "mismatched_rows": bad, "reports": to_json(&reports)});
    Ok(Rendered { json, text, csv_header: TABLE_HEADER.to_vec(), csv_rows, mismatches: bad })
}

/// Parses `(i,j),(k,l),…`.
fn parse_support(s: &str) -> Result<Vec<(u32, u32)>, CliError> {
    let bad = || CliError::Invalid(format!("bad support {s:?}; expected (i,j),(k,l),..."));
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let (pair, tail) = body.split_once(')').ok_or_else(bad)?;
        let (a, b) = pair.split_once(',').ok_or_else(bad)?;
        out.push((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
        rest = tail.trim_start();
        if let Some(t) = rest.strip_prefix(',') {
            rest = t.trim_start();
            if rest.is_empty() {
                return Err(bad());
            }
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn read_germ(path: &Path) -> Result<BTreeMap<(u32, u32), Q>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let mut terms = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || CliError::Invalid(format!("{}:{}: expected `i j coefficient`", path.display(), no + 1));
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [i, j, c] = parts[..] else {
            return Err(bad());
        };
        let m = (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?);
        let c = parse_q(c).map_err(|_| bad())?;
        *terms.entry(m).or_insert_with(|| Q::from_integer(0.into())) += c;
    }
    Ok(terms)
}

fn cmd_germ_lct(cli: &Cli, support: Option<&str>, germ: Option<&Path>) -> Result<Rendered, CliError> {
    let terms = match (support, germ) {
        (Some(s), _) => parse_support(s)?.into_iter().map(|m| (m, Q::from_integer(1.into()))).collect(),
        (None, Some(p)) => read_germ(p)?,
        (None, None) => return Err(CliError::Invalid("give --support or --germ".into())),
    };
    let g = PlaneGerm::new(terms, cli.trunc)?;
    let cert = lct_newton(&g, cli.max_iter)?;
    let json = json!({"germ": g.to_string(), "multiplicity": g.multiplicity(), "certificate": to_json(&cert)});
    let mut text = format!("germ {g}\nlct = {}\nt0 = {}\n", fmt_q(&cert.value), fmt_q(&cert.t0));
    for s in &cert.adapted_coordinates {
        text.push_str(&format!("  {s}\n"));
    }
    let csv_rows = vec![vec![g.to_string(), fmt_q(&cert.value), fmt_q(&cert.t0)]];
    Ok(Rendered { json, text, csv_header: vec!["germ", "lct", "t0"], csv_rows, mismatches: 0 })
}

fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Info { weights, degree } => cmd_info(weights, *degree),
        Command::Lct { weights, degree, tags, equation } => cmd_lct(cli, weights, *degree, tags, equation.as_deref()),
        Command::Enumerate { index, max_a3 } => cmd_enumerate(cli, *index, *max_a3),
        Command::VerifyTable { path, n } => cmd_verify(cli, path.as_deref(), *n),
        Command::GermLct { support, germ } => cmd_germ_lct(cli, support.as_deref(), germ.as_deref()),
    }
}

/// Canonical JSON: sorted keys, two-space indentation, trailing newline.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's map is ordered by key unless `preserve_order` is on.
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn render(r: &Rendered, format: Format) -> String {
    match format {
        Format::Json => canonical_json(&r.json),
        Format::Text => r.text.clone(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&r.csv_header).expect("in-memory write");
            for row in &r.csv_rows {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
    }
}

fn report_error(e: &CliError, format: Format, err: &mut dyn Write) {
    let _ = match format {
        Format::Json => {
            let v = json!({"error": {"code": e.code(), "kind": e.kind(), "message": e.message()}});
            err.write_all(canonical_json(&v).as_bytes())
        }
        _ => writeln!(err, "error ({}): {}", e.kind(), e.message()),
    };
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let _ = out.write_all(render(&r, cli.format).as_bytes());
            if r.mismatches > 0 {
                report_error(&CliError::Mismatch(format!("{} rows disagree with the table", r.mismatches)), cli.format, err);
                EXIT_MISMATCH
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            report_error(&e, cli.format, err);
            e.code()
        }
    }
}
