//! JSON complex and module files.
//!
//! Syntax problems are reported as [`Error::Parse`] with a line and column;
//! well-formed files that violate an invariant (shapes, unimodularity) get the
//! corresponding validation error instead.

use serde::de::DeserializeOwned;

use crate::complex::chain::{ComplexFile, GroupRingComplex};
use crate::complex::module::{CoeffModule, ModuleFile};
use crate::error::{Error, Result};

fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
}

pub fn complex_from_json(text: &str) -> Result<GroupRingComplex> {
    GroupRingComplex::try_from(parse_json::<ComplexFile>(text)?)
}

pub fn complex_to_json(cx: &GroupRingComplex) -> String {
    serde_json::to_string_pretty(&ComplexFile::from(cx.clone())).expect("complex serializes")
}

pub fn module_from_json(text: &str) -> Result<CoeffModule> {
    let f: ModuleFile = parse_json(text)?;
    CoeffModule::new(f.rank, f.action)
}

pub fn module_to_json(m: &CoeffModule) -> String {
    serde_json::to_string_pretty(&ModuleFile::from(m.clone())).expect("module serializes")
}
