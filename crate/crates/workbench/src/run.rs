//! Run configurations, report assembly, and text rendering.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use extcohom_core::abelian::{is_well_defined, reduce_vec, Subgroup};
use extcohom_core::ambient::AmbientExtension;
use extcohom_core::cohomology::{cohomology_group_with_limits, Limits};
use extcohom_core::matrix::IntMatrix;
use extcohom_core::module::GModule;
use extcohom_core::seven_term::{seven_term_report, SevenTermContext, SevenTermReport};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::battery::{battery_by_name, run_battery};
use crate::doc::{
    int_strings, parse_ints, BatteryDoc, CohomologyDoc, ConfigEcho, ExtensionDoc, GroupEntry, JointEntry, MapEntry,
    MatrixDoc, SevenTermDoc, ToolInfo,
};
use crate::error::{Result, WorkbenchError};
use crate::preset::{build_preset, Preset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Preset { preset: String, module: String },
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Request {
    Cohomology { degree: usize },
    SevenTerm,
    Battery { name: String },
    Inspect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub source: Option<Source>,
    pub request: Request,
    pub format: Format,
    pub budget: u128,
    pub trials: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(source: Option<Source>, request: Request) -> Self {
        RunConfig { source, request, format: Format::Json, budget: Limits::default().max_cells, trials: 20, seed: 0 }
    }

    pub fn limits(&self) -> Limits {
        Limits { max_cells: self.budget }
    }

    fn echo(&self) -> ConfigEcho {
        let mut e = ConfigEcho { budget: self.budget.to_string(), ..ConfigEcho::default() };
        match &self.source {
            Some(Source::Preset { preset, module }) => {
                e.preset = Some(preset.clone());
                e.module = Some(module.clone());
            }
            Some(Source::File(p)) => e.input = Some(p.display().to_string()),
            None => {}
        }
        match &self.request {
            Request::Cohomology { degree } => e.degree = Some(*degree),
            Request::Battery { name } => {
                e.battery = Some(name.clone());
                e.trials = Some(self.trials);
                e.seed = Some(self.seed);
            }
            Request::SevenTerm | Request::Inspect => {}
        }
        e
    }

    fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(WorkbenchError::BadParams("size budget must be positive".into()));
        }
        Ok(())
    }
}

/// A finished document in both renderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub json: String,
    pub text: String,
    pub passed: bool,
}

impl Emitted {
    pub fn render(&self, format: Format) -> &str {
        match format {
            Format::Json => &self.json,
            Format::Text => &self.text,
        }
    }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn load(source: &Source) -> Result<(AmbientExtension, Arc<GModule>, ExtensionDoc)> {
    match source {
        Source::Preset { preset, module } => {
            let (p, ext, m) = build_preset(preset, module)?;
            let gens: Vec<u32> = p.generators().iter().map(|&(_, g)| g).collect();
            let doc = ExtensionDoc::from_parts(&ext, &m, &gens);
            Ok((ext, m, doc))
        }
        Source::File(path) => {
            let text = std::fs::read_to_string(path)?;
            let doc: ExtensionDoc = serde_json::from_str(&text).map_err(|e| WorkbenchError::Parse(e.to_string()))?;
            let (ext, m) = doc.to_parts()?;
            Ok((ext, m, doc))
        }
    }
}

fn require_source(config: &RunConfig) -> Result<&Source> {
    config.source.as_ref().ok_or_else(|| WorkbenchError::BadParams("no input given".into()))
}

fn group_entry(name: &str, invariants: &[BigInt]) -> GroupEntry {
    GroupEntry { name: name.into(), invariants: int_strings(invariants) }
}

pub fn seven_term_doc(config: &RunConfig, report: &SevenTermReport, input: ExtensionDoc) -> SevenTermDoc {
    SevenTermDoc {
        tool: ToolInfo::current(),
        kind: "seven-term".into(),
        config: config.echo(),
        input,
        groups: report.groups.iter().map(|g| group_entry(g.name, &g.invariants)).collect(),
        h2_full: group_entry(report.h2_full.name, &report.h2_full.invariants),
        h2_restricted_inclusion: MatrixDoc::from_matrix(&report.h2_restricted_inclusion),
        maps: report
            .maps
            .iter()
            .map(|m| MapEntry {
                name: m.name.into(),
                source: m.source.into(),
                target: m.target.into(),
                matrix: MatrixDoc::from_matrix(&m.matrix),
                well_defined: m.well_defined,
            })
            .collect(),
        inflation_injective: report.inflation_injective,
        inflation_in_restricted_kernel: report.inflation_in_restricted_kernel,
        joints: report
            .joints
            .iter()
            .map(|j| JointEntry {
                at: j.at.into(),
                image_equals_kernel: j.image_equals_kernel,
                composite_zero: j.composite_zero,
                verdict: if j.exact() { "exact".into() } else { "not exact".into() },
            })
            .collect(),
        exact: report.is_exact(),
    }
}

fn invariants_text(inv: &[String]) -> String {
    if inv.is_empty() {
        "0".into()
    } else {
        inv.iter().map(|t| if t == "0" { "Z".to_string() } else { format!("Z_{t}") }).collect::<Vec<_>>().join(" + ")
    }
}

fn matrix_text(m: &MatrixDoc) -> String {
    if m.rows == 0 || m.cols == 0 {
        return format!("({}x{} zero matrix)", m.rows, m.cols);
    }
    m.entries.iter().map(|r| format!("[{}]", r.join(" "))).collect::<Vec<_>>().join(" ")
}

fn seven_term_text(doc: &SevenTermDoc) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "seven-term sequence ({} {})", doc.tool.name, doc.tool.version);
    for g in &doc.groups {
        let _ = writeln!(s, "  {:<14} {}", g.name, invariants_text(&g.invariants));
    }
    let _ = writeln!(s, "  {:<14} {}", doc.h2_full.name, invariants_text(&doc.h2_full.invariants));
    for m in &doc.maps {
        let _ = writeln!(s, "  {:<7} {}", m.name, matrix_text(&m.matrix));
    }
    let _ = writeln!(s, "  inflation injective: {}", doc.inflation_injective);
    for j in &doc.joints {
        let _ = writeln!(s, "  at {:<14} {}", j.at, j.verdict);
    }
    let _ = writeln!(s, "  inflation lands in H2(G,M)_1: {}", doc.inflation_in_restricted_kernel);
    let _ = writeln!(s, "  verdict: {}", if doc.exact { "exact" } else { "NOT exact" });
    s
}

fn battery_text(doc: &BatteryDoc) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "battery {} ({} {})",
        doc.config.battery.as_deref().unwrap_or("?"),
        doc.tool.name,
        doc.tool.version
    );
    for c in &doc.cases {
        let status = if c.passed { "pass" } else { "FAIL" };
        let _ = write!(s, "  {status} {:<18} {:<14}", c.preset, c.module);
        if let Some(e) = &c.error {
            let _ = write!(s, " error: {e}");
        }
        let _ = writeln!(s);
    }
    let t = &doc.tallies;
    let _ = writeln!(
        s,
        "  {}/{} cases passed; routes {}/{}; evens {}/{}; split {}/{}; rho {}/{}; lambda {}/{}",
        t.passed,
        t.cases,
        t.routes_agree,
        t.routes_checked,
        t.evens_hold,
        t.evens_checked,
        t.split_hold,
        t.split_checked,
        t.rho_agree,
        t.rho_trials,
        t.lambda_agree,
        t.lambda_trials
    );
    s
}

/// Executes a configuration and renders the resulting document.
pub fn run_and_emit(config: &RunConfig) -> Result<Emitted> {
    config.validate()?;
    match &config.request {
        Request::Cohomology { degree } => {
            let (_, m, input) = load(require_source(config)?)?;
            let h = cohomology_group_with_limits(&m, *degree, &config.limits())?;
            let doc = CohomologyDoc {
                tool: ToolInfo::current(),
                kind: "cohomology".into(),
                config: config.echo(),
                input,
                degree: *degree,
                group: group_entry(&format!("H{degree}(G,M)"), h.invariants()),
                order: h.order().map(|o| o.to_string()),
            };
            let text = format!("H{degree}(G,M) = {}\n", invariants_text(&doc.group.invariants));
            Ok(Emitted { json: to_json(&doc), text, passed: true })
        }
        Request::SevenTerm => {
            let (ext, m, input) = load(require_source(config)?)?;
            let ctx = SevenTermContext::with_limits(ext, m, config.limits())?;
            let report = seven_term_report(&ctx)?;
            let doc = seven_term_doc(config, &report, input);
            Ok(Emitted { json: to_json(&doc), text: seven_term_text(&doc), passed: doc.exact })
        }
        Request::Battery { name } => {
            let cases =
                battery_by_name(name).ok_or_else(|| WorkbenchError::BadParams(format!("unknown battery `{name}`")))?;
            let (entries, tallies) = run_battery(&cases, config.trials, config.seed, config.limits());
            let passed = tallies.passed == tallies.cases;
            let doc = BatteryDoc {
                tool: ToolInfo::current(),
                kind: "battery".into(),
                config: config.echo(),
                cases: entries,
                tallies,
                passed,
            };
            Ok(Emitted { json: to_json(&doc), text: battery_text(&doc), passed })
        }
        Request::Inspect => {
            let Some(Source::File(path)) = &config.source else {
                return Err(WorkbenchError::BadParams("inspect needs an input file".into()));
            };
            let text = std::fs::read_to_string(path)?;
            let doc = inspect_document(&text)?;
            let rendered = format!(
                "{}: {}\n{}",
                doc.document_kind,
                if doc.valid { "valid" } else { "INVALID" },
                doc.problems.iter().map(|p| format!("  {p}\n")).collect::<String>()
            );
            Ok(Emitted { json: to_json(&doc), text: rendered, passed: doc.valid })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InspectionDoc {
    pub tool: ToolInfo,
    pub kind: String,
    pub document_kind: String,
    pub valid: bool,
    pub problems: Vec<String>,
}

fn moduli_of(g: &GroupEntry) -> Result<Vec<BigInt>> {
    parse_ints(&g.invariants)
}

fn subgroup_image(moduli: &[BigInt], m: &IntMatrix) -> Result<Subgroup> {
    Ok(if m.cols() == 0 { Subgroup::generated(moduli, Vec::new())? } else { Subgroup::image(moduli, m)? })
}

fn subgroup_kernel(src: &[BigInt], m: &IntMatrix, dst: &[BigInt]) -> Result<Subgroup> {
    Ok(if m.cols() == 0 {
        Subgroup::generated(src, Vec::new())?
    } else if m.rows() == 0 {
        Subgroup::whole(src)
    } else {
        Subgroup::kernel(src, m, dst)?
    })
}

/// Re-checks a seven-term document from its serialized groups and matrices alone.
fn check_seven_term(doc: &SevenTermDoc, problems: &mut Vec<String>) -> Result<()> {
    doc.input.to_parts()?;
    if doc.groups.len() != 7 || doc.maps.len() != 6 || doc.joints.len() != 5 {
        problems.push("expected 7 groups, 6 maps and 5 joints".into());
        return Ok(());
    }
    let moduli: Vec<Vec<BigInt>> = doc.groups.iter().map(moduli_of).collect::<Result<_>>()?;
    let mats: Vec<IntMatrix> = doc.maps.iter().map(|m| m.matrix.to_matrix()).collect::<Result<_>>()?;
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != moduli[i + 1].len() || m.cols() != moduli[i].len() {
            problems.push(format!("map {} has the wrong shape", doc.maps[i].name));
            return Ok(());
        }
        if m.cols() > 0 && !is_well_defined(&moduli[i], m, &moduli[i + 1]) {
            problems.push(format!("map {} does not send relations to relations", doc.maps[i].name));
        }
    }
    for i in 0..5 {
        let image = subgroup_image(&moduli[i + 1], &mats[i])?;
        let kernel = subgroup_kernel(&moduli[i + 1], &mats[i + 1], &moduli[i + 2])?;
        let exact = image.same_as(&kernel);
        let zero = mats[i].cols() == 0
            || mats[i + 1].rows() == 0
            || mats[i + 1].cols() == 0
            || mats[i + 1]
                .mul(&mats[i])?
                .col_vecs()
                .iter()
                .all(|c| reduce_vec(c, &moduli[i + 2]).iter().all(Zero::is_zero));
        if !zero {
            problems.push(format!("composite into {} is not zero", doc.groups[i + 2].name));
        }
        if exact != doc.joints[i].image_equals_kernel {
            problems.push(format!("recorded exactness at {} does not match the matrices", doc.joints[i].at));
        }
        if !exact {
            problems.push(format!("not exact at {}", doc.joints[i].at));
        }
    }
    let full = moduli_of(&doc.h2_full)?;
    let incl = doc.h2_restricted_inclusion.to_matrix()?;
    if incl.rows() != full.len() || incl.cols() != moduli[4].len() {
        problems.push("inclusion of H2(G,M)_1 has the wrong shape".into());
    }
    Ok(())
}

/// Parses any document this tool writes (or an extension input) and re-validates it.
pub fn inspect_document(text: &str) -> Result<InspectionDoc> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| WorkbenchError::Parse(e.to_string()))?;
    let kind = value.get("kind").and_then(|k| k.as_str()).unwrap_or("extension").to_string();
    let parse_err = |e: serde_json::Error| WorkbenchError::Parse(e.to_string());
    let mut problems = Vec::new();
    match kind.as_str() {
        "extension" => {
            let doc: ExtensionDoc = serde_json::from_value(value).map_err(parse_err)?;
            doc.to_parts()?;
        }
        "cohomology" => {
            let doc: CohomologyDoc = serde_json::from_value(value).map_err(parse_err)?;
            doc.input.to_parts()?;
            moduli_of(&doc.group)?;
        }
        "seven-term" => {
            let doc: SevenTermDoc = serde_json::from_value(value).map_err(parse_err)?;
            check_seven_term(&doc, &mut problems)?;
        }
        "battery" => {
            let doc: BatteryDoc = serde_json::from_value(value).map_err(parse_err)?;
            if crate::battery::tally(&doc.cases) != doc.tallies {
                problems.push("tallies do not match the cases".into());
            }
            if doc.passed != (doc.tallies.passed == doc.tallies.cases) {
                problems.push("overall verdict does not match the tallies".into());
            }
        }
        other => return Err(WorkbenchError::Parse(format!("unknown document kind `{other}`"))),
    }
    Ok(InspectionDoc {
        tool: ToolInfo::current(),
        kind: "inspection".into(),
        document_kind: kind,
        valid: problems.is_empty(),
        problems,
    })
}

/// Convenience for tests: the seven-term document of a preset and module.
pub fn seven_term_for(preset: &str, module: &str) -> Result<SevenTermDoc> {
    let config =
        RunConfig::new(Some(Source::Preset { preset: preset.into(), module: module.into() }), Request::SevenTerm);
    let (ext, m, input) = load(config.source.as_ref().expect("set"))?;
    let _ = Preset::parse(preset)?;
    let ctx = SevenTermContext::with_limits(ext, m, config.limits())?;
    Ok(seven_term_doc(&config, &seven_term_report(&ctx)?, input))
}
