//! Category files, morphism/object literals and class descriptors from the command line.

use std::path::Path;

use catpure::category::Category;
use catpure::concrete::ConcreteDescriptor;
use catpure::limits::Limits;
use catpure::qe::ClassDescriptor;
use catpure::{CatError, FiniteCategory, ModCategory};
use serde_json::Value;

/// Process-level failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<CatError> for Failure {
    fn from(e: CatError) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

pub fn exit_code(e: &CatError) -> u8 {
    match e {
        CatError::CapExceeded { .. } => 3,
        CatError::Missing(_) | CatError::Internal(_) => 1,
        _ => 2,
    }
}

pub enum Loaded {
    Module(ModCategory),
    Table(FiniteCategory),
}

pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// A JSON object with a `kind` field is a concrete descriptor; anything else is a table.
pub fn load_category(path: &Path) -> Result<Loaded, Failure> {
    let v = read_json(path)?;
    if v.get("kind").is_some() {
        let d: ConcreteDescriptor = serde_path_to_error::deserialize(&v)
            .map_err(|e| Failure::usage(format!("{}: field `{}`: {}", path.display(), e.path(), e.inner())))?;
        return Ok(Loaded::Module(ModCategory::from_descriptor(d)?));
    }
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
    let table = FiniteCategory::from_value(&v).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let report = table.validate();
    if !report.valid {
        let v = serde_json::to_string(&report.violations).unwrap_or_default();
        return Err(Failure::usage(format!("{}: category axioms fail: {v}", path.display())));
    }
    Ok(Loaded::Table(table.with_name(name)))
}

/// Shorthand (`coker-div:2`), inline JSON, or a path to a JSON file.
pub fn parse_class(arg: &str) -> Result<ClassDescriptor, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(arg).map_err(|e| Failure::usage(format!("class: {e}")))?;
        return Ok(ClassDescriptor::from_json(&v)?);
    }
    let path = Path::new(arg);
    if path.extension().is_some_and(|e| e == "json") && path.exists() {
        return Ok(ClassDescriptor::from_json(&read_json(path)?)?);
    }
    Ok(ClassDescriptor::parse(arg)?)
}

/// Literal syntax per category: JSON for modules, names for tables.
pub trait Literals: Limits {
    fn parse_mor(&self, s: &str) -> Result<Self::Mor, Failure>;
    fn parse_obj(&self, s: &str) -> Result<Self::Obj, Failure>;
}

fn json_arg(s: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::usage(format!("literal `{s}`: {e}")))
}

impl Literals for ModCategory {
    fn parse_mor(&self, s: &str) -> Result<Self::Mor, Failure> {
        Ok(self.parse_morphism(&json_arg(s)?)?)
    }

    fn parse_obj(&self, s: &str) -> Result<Self::Obj, Failure> {
        let factors: Vec<u32> = serde_path_to_error::deserialize(&json_arg(s)?)
            .map_err(|e| Failure::usage(format!("object `{s}`: {}", e.inner())))?;
        Ok(self.object(&factors)?)
    }
}

impl Literals for FiniteCategory {
    fn parse_mor(&self, s: &str) -> Result<Self::Mor, Failure> {
        self.mor(s).ok_or_else(|| Failure::usage(format!("no morphism named `{s}` in {}", self.label())))
    }

    fn parse_obj(&self, s: &str) -> Result<Self::Obj, Failure> {
        self.obj(s).ok_or_else(|| Failure::usage(format!("no object named `{s}` in {}", self.label())))
    }
}
