//! Resolving fields, characters and families from flags and files.

use std::fs;
use std::path::{Path, PathBuf};

use flseq_core::characters::{Character, CharacterSpec};
use flseq_core::finite_field::{Field, FieldDescription};
use flseq_core::projective::MoebiusMap;
use flseq_core::records::{
    character_from_description, verify_rows, FamilyDocument, SequenceRecord,
};
use flseq_core::sequence::{build_sequence, Family, PhiStrategy};
use flseq_core::ExecMode;

use crate::error::CliError;
use crate::GlobalOpts;

pub fn field(g: &GlobalOpts) -> Result<Field, CliError> {
    if let Some(path) = &g.field_file {
        let desc: FieldDescription = read_json(path)?;
        return Ok(Field::from_description(&desc)?);
    }
    match (g.q, g.p, g.m) {
        (Some(q), _, _) => Ok(Field::from_order(q)?),
        (None, Some(p), Some(m)) => Ok(Field::new(p, m, None)?),
        _ => Err(CliError::invalid(
            "no field given; use --q, --p with --m, or --field-file",
        )),
    }
}

pub fn character(g: &GlobalOpts, field: &Field) -> Result<Character, CliError> {
    let d = g
        .char_order
        .ok_or_else(|| CliError::invalid("--char-order is required"))?;
    Ok(Character::new(field, CharacterSpec::Order(d))?)
}

pub fn strategy(g: &GlobalOpts) -> Result<PhiStrategy, CliError> {
    Ok(PhiStrategy::parse(&g.phis, g.seed)?)
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

pub fn manifest_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// A family together with the document that describes it.
pub struct LoadedFamily {
    pub family: Family,
    pub document: FamilyDocument,
}

/// Reads a family document, a single-sequence record, or CSV exponent rows
/// whose provenance sits in `<file>.manifest.json`.
pub fn load_family(path: &Path, mode: ExecMode) -> Result<LoadedFamily, CliError> {
    let text = read_text(path)?;
    let malformed = |e: serde_json::Error| CliError::invalid(format!("{}: {e}", path.display()));
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(&text).map_err(malformed)?;
        if value.get("phis").is_some() {
            let document: FamilyDocument = serde_json::from_value(value).map_err(malformed)?;
            let family = document.rebuild(mode)?;
            return Ok(LoadedFamily { family, document });
        }
        let record: SequenceRecord = serde_json::from_value(value).map_err(malformed)?;
        return from_record(&record);
    }
    let rows =
        parse_rows(&text).map_err(|msg| CliError::invalid(format!("{}: {msg}", path.display())))?;
    let mut document: FamilyDocument = read_json(&manifest_path(path))?;
    let family = FamilyDocument {
        entries: None,
        ..document.clone()
    }
    .rebuild(mode)?;
    verify_rows(&family, &rows)?;
    document.entries = Some(rows);
    Ok(LoadedFamily { family, document })
}

fn from_record(record: &SequenceRecord) -> Result<LoadedFamily, CliError> {
    let field = Field::from_description(&record.field)?;
    let psi = MoebiusMap::from_coeff_vectors(&field, &record.psi)?;
    let phi = MoebiusMap::from_coeff_vectors(&field, &record.phi)?;
    let chi = character_from_description(&field, &record.chi)?;
    let seq = build_sequence(&phi, &psi, &chi)?;
    if seq.exponents() != record.entries.as_slice() {
        return Err(CliError::invalid(
            "stored entries differ from the rebuilt sequence",
        ));
    }
    let family = Family::new(vec![seq])?;
    let document = FamilyDocument::from_family(&family, None, true)?;
    Ok(LoadedFamily { family, document })
}

fn parse_rows(text: &str) -> Result<Vec<Vec<u32>>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, line)| {
            line.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|e| format!("line {}: {e}", n + 1))
                })
                .collect()
        })
        .collect()
}
