//! JSON documents. Exact integers are written as decimal strings.

use std::sync::Arc;

use extcohom_core::abelian::FgAbelianGroup;
use extcohom_core::ambient::AmbientExtension;
use extcohom_core::group::FiniteGroup;
use extcohom_core::matrix::IntMatrix;
use extcohom_core::module::GModule;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WorkbenchError};

pub const TOOL_NAME: &str = "extcohom";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo { name: TOOL_NAME.into(), version: TOOL_VERSION.into() }
    }
}

pub fn int_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

pub fn parse_ints(v: &[String]) -> Result<Vec<BigInt>> {
    v.iter()
        .map(|s| s.parse::<BigInt>().map_err(|_| WorkbenchError::Parse(format!("`{s}` is not an integer"))))
        .collect()
}

/// An integer matrix with its shape (empty matrices keep their dimensions).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        MatrixDoc { rows: m.rows(), cols: m.cols(), entries: m.row_vecs().iter().map(|r| int_strings(r)).collect() }
    }

    pub fn to_matrix(&self) -> Result<IntMatrix> {
        if self.entries.len() != self.rows {
            return Err(WorkbenchError::Parse("matrix row count does not match its shape".into()));
        }
        let rows: Vec<Vec<BigInt>> = self.entries.iter().map(|r| parse_ints(r)).collect::<Result<_>>()?;
        if rows.iter().any(|r| r.len() != self.cols) {
            return Err(WorkbenchError::Parse("matrix column count does not match its shape".into()));
        }
        if self.rows == 0 {
            return Ok(IntMatrix::zeros(0, self.cols));
        }
        Ok(IntMatrix::from_rows(self.cols, &rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    /// Multiplication table; element 0 is the identity.
    pub table: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub element: u32,
    pub matrix: MatrixDoc,
}

/// Abelian group `Z^generators / rows(relations)` with action matrices on listed group generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub generators: usize,
    pub relations: MatrixDoc,
    pub action: Vec<ActionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDoc {
    pub group: GroupDoc,
    pub normal_generators: Vec<u32>,
    pub module: ModuleDoc,
}

impl ExtensionDoc {
    /// Records an extension and a module through the action of `generators`.
    pub fn from_parts(ext: &AmbientExtension, module: &GModule, generators: &[u32]) -> Self {
        let g = ext.group();
        let base = module.base();
        ExtensionDoc {
            group: GroupDoc { table: g.table_rows() },
            normal_generators: ext.normal().elements().iter().copied().filter(|&x| x != 0).collect(),
            module: ModuleDoc {
                generators: base.ngens(),
                relations: MatrixDoc::from_matrix(base.relations()),
                action: generators
                    .iter()
                    .map(|&x| ActionDoc { element: x, matrix: MatrixDoc::from_matrix(module.action_on_generators(x)) })
                    .collect(),
            },
        }
    }

    pub fn to_parts(&self) -> Result<(AmbientExtension, Arc<GModule>)> {
        let g = Arc::new(FiniteGroup::from_table(self.group.table.clone())?);
        if self.normal_generators.iter().any(|&x| x as usize >= g.order()) {
            return Err(WorkbenchError::Parse("normal generator out of range".into()));
        }
        let ext = AmbientExtension::from_generators(&g, &self.normal_generators)?;
        let rel = self.module.relations.to_matrix()?;
        let rel = if rel.rows() == 0 { IntMatrix::zeros(0, self.module.generators) } else { rel };
        let base = FgAbelianGroup::new(self.module.generators, rel)?;
        let mut gens = Vec::with_capacity(self.module.action.len());
        for a in &self.module.action {
            if a.element as usize >= g.order() {
                return Err(WorkbenchError::Parse("action element out of range".into()));
            }
            gens.push((a.element, a.matrix.to_matrix()?));
        }
        let module =
            if gens.is_empty() { GModule::trivial(g, base) } else { GModule::from_generators(g, base, &gens)? };
        Ok((ext, Arc::new(module)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub name: String,
    pub invariants: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub name: String,
    pub source: String,
    pub target: String,
    pub matrix: MatrixDoc,
    pub well_defined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointEntry {
    pub at: String,
    pub image_equals_kernel: bool,
    pub composite_zero: bool,
    pub verdict: String,
}

/// Echo of the configuration that produced a document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub module: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub battery: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub budget: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDoc {
    pub tool: ToolInfo,
    pub kind: String,
    pub config: ConfigEcho,
    pub input: ExtensionDoc,
    pub degree: usize,
    pub group: GroupEntry,
    pub order: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SevenTermDoc {
    pub tool: ToolInfo,
    pub kind: String,
    pub config: ConfigEcho,
    pub input: ExtensionDoc,
    pub groups: Vec<GroupEntry>,
    pub h2_full: GroupEntry,
    pub h2_restricted_inclusion: MatrixDoc,
    pub maps: Vec<MapEntry>,
    pub inflation_injective: bool,
    pub inflation_in_restricted_kernel: bool,
    pub joints: Vec<JointEntry>,
    pub exact: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseEntry {
    pub preset: String,
    pub module: String,
    pub exact: Option<bool>,
    pub joints: Vec<String>,
    /// Invariant generators on which all applicable transgression routes were compared.
    pub routes_checked: usize,
    pub routes_agree: Option<bool>,
    pub routes_compared: Vec<String>,
    pub evens: Option<bool>,
    pub split_case: Option<bool>,
    pub additivity: Option<bool>,
    pub rho_trials: usize,
    pub rho_agree: usize,
    pub lambda_trials: usize,
    pub lambda_agree: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tallies {
    pub cases: usize,
    pub passed: usize,
    pub exact: usize,
    pub routes_checked: usize,
    pub routes_agree: usize,
    pub evens_checked: usize,
    pub evens_hold: usize,
    pub split_checked: usize,
    pub split_hold: usize,
    pub rho_trials: usize,
    pub rho_agree: usize,
    pub lambda_trials: usize,
    pub lambda_agree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryDoc {
    pub tool: ToolInfo,
    pub kind: String,
    pub config: ConfigEcho,
    pub cases: Vec<CaseEntry>,
    pub tallies: Tallies,
    pub passed: bool,
}
