//! JSON documents for sequences and families.
//!
//! A family document pins the field, `ψ`, `χ` and every `φ`, which is enough
//! to rebuild the family. Entries are optional: when present they are
//! checked against the rebuild.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{Character, CharacterDescription, CharacterError, CharacterSpec};
use crate::exec::ExecMode;
use crate::finite_field::{Field, FieldDescription, FieldError};
use crate::projective::{GroupError, MoebiusMap};
use crate::sequence::{build_family, CharSequence, Family, SequenceError};

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("invalid field: {0}")]
    Field(#[from] FieldError),
    #[error("invalid map: {0}")]
    Group(#[from] GroupError),
    #[error("invalid character: {0}")]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("character index {index} has order {actual}, document says {stated}")]
    CharacterOrder {
        index: u32,
        stated: u32,
        actual: u32,
    },
    #[error("member {0}: stored entries differ from the rebuilt sequence")]
    EntriesMismatch(usize),
    #[error("document lists {phis} maps but {entries} entry rows")]
    RowCountMismatch { phis: usize, entries: usize },
    #[error("sequence has no recorded origin")]
    MissingOrigin,
}

/// `[a, b, c, d]` as coefficient vectors.
pub type MapCoeffs = Vec<Vec<u32>>;

pub fn map_coeffs(map: &MoebiusMap) -> MapCoeffs {
    map.elements().iter().map(|x| x.coeffs()).collect()
}

pub fn character_from_description(
    field: &Field,
    desc: &CharacterDescription,
) -> Result<Character, RecordError> {
    let chi = Character::new(field, CharacterSpec::Index(desc.index))?;
    if chi.order() != desc.order {
        return Err(RecordError::CharacterOrder {
            index: desc.index,
            stated: desc.order,
            actual: chi.order(),
        });
    }
    Ok(chi)
}

/// `{"field":…, "psi":…, "phi":…, "chi":…, "entries":[e_0,…,e_q]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub field: FieldDescription,
    pub psi: MapCoeffs,
    pub phi: MapCoeffs,
    pub chi: CharacterDescription,
    pub entries: Vec<u32>,
}

impl SequenceRecord {
    pub fn from_sequence(seq: &CharSequence) -> Result<Self, RecordError> {
        let origin = seq.origin().ok_or(RecordError::MissingOrigin)?;
        Ok(SequenceRecord {
            field: origin.psi.field().description(),
            psi: map_coeffs(&origin.psi),
            phi: map_coeffs(&origin.phi),
            chi: origin.chi.description(),
            entries: seq.exponents().to_vec(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub field: FieldDescription,
    pub psi: MapCoeffs,
    pub chi: CharacterDescription,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    /// `N = q + 1`.
    pub length: usize,
    /// `M`.
    pub size: usize,
    pub phis: Vec<MapCoeffs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<u32>>>,
}

impl FamilyDocument {
    pub fn from_family(
        family: &Family,
        strategy: Option<String>,
        include_entries: bool,
    ) -> Result<Self, RecordError> {
        let first = family.members()[0]
            .origin()
            .ok_or(RecordError::MissingOrigin)?;
        let phis = family
            .phis()
            .ok_or(RecordError::MissingOrigin)?
            .into_iter()
            .map(map_coeffs)
            .collect();
        let entries = include_entries.then(|| {
            family
                .members()
                .iter()
                .map(|m| m.exponents().to_vec())
                .collect()
        });
        Ok(FamilyDocument {
            field: first.psi.field().description(),
            psi: map_coeffs(&first.psi),
            chi: first.chi.description(),
            strategy,
            length: family.sequence_length(),
            size: family.size(),
            phis,
            entries,
        })
    }

    /// Rebuilds the family from its provenance and checks any stored entries.
    pub fn rebuild(&self, mode: ExecMode) -> Result<Family, RecordError> {
        let field = Field::from_description(&self.field)?;
        let psi = MoebiusMap::from_coeff_vectors(&field, &self.psi)?;
        let chi = character_from_description(&field, &self.chi)?;
        let phis = self
            .phis
            .iter()
            .map(|p| MoebiusMap::from_coeff_vectors(&field, p))
            .collect::<Result<Vec<_>, _>>()?;
        let family = build_family(&phis, &psi, &chi, mode)?;
        if let Some(rows) = &self.entries {
            verify_rows(&family, rows)?;
        }
        Ok(family)
    }
}

/// Checks exponent rows (e.g. read back from CSV) against a family.
pub fn verify_rows(family: &Family, rows: &[Vec<u32>]) -> Result<(), RecordError> {
    if rows.len() != family.size() {
        return Err(RecordError::RowCountMismatch {
            phis: family.size(),
            entries: rows.len(),
        });
    }
    for (i, (member, row)) in family.members().iter().zip(rows).enumerate() {
        if member.exponents() != row.as_slice() {
            return Err(RecordError::EntriesMismatch(i));
        }
    }
    Ok(())
}
