//! Character sequences along the orbit of a full-cycle map, and families of
//! them.
//!
//! For a map `ψ` whose orbit of 1 covers the projective line, a choice of
//! `φ` and a character `χ` gives the length-`q+1` sequence
//! `j -> χ(φ(ψ^j(1)))`. Composing `φ` with `ψ^s` on the right rotates the
//! sequence left by `s`, which is what [`cyclic_shift`] relies on.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::gcd;
use crate::characters::{Character, UnitValue};
use crate::exec::{map_ordered, ExecMode};
use crate::finite_field::Field;
use crate::projective::{enumerate_group, GroupError, MoebiusMap, ENUMERATION_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("psi does not cycle through all q+1 points starting from 1")]
    PsiNotFullCycle,
    #[error("maps and character belong to different fields")]
    FieldMismatch,
    #[error("a family needs at least one member")]
    EmptyFamily,
    #[error("family members have different lengths or alphabets")]
    LengthMismatch,
    #[error("field of order {q} exceeds the enumeration limit {limit}")]
    FieldTooLarge { q: u32, limit: u32 },
    #[error("requested {requested} distinct maps but the group has only {available}")]
    TooManySamples { requested: u64, available: u64 },
    #[error("invalid phi strategy {0:?}; expected all, coset-distinct or sample:K[,seed=S]")]
    InvalidStrategy(String),
}

impl From<GroupError> for SequenceError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::FieldTooLarge { q, limit } => SequenceError::FieldTooLarge { q, limit },
            _ => SequenceError::FieldMismatch,
        }
    }
}

/// The `(ψ, φ, χ)` a sequence was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceOrigin {
    pub psi: MoebiusMap,
    pub phi: MoebiusMap,
    pub chi: Character,
}

/// A sequence of roots of unity `exp(2πi e_j / denominator)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSequence {
    exponents: Vec<u32>,
    denominator: u32,
    order: u32,
    origin: Option<SequenceOrigin>,
}

impl CharSequence {
    /// A free-standing sequence; its alphabet order is the smallest `d` with
    /// every value a `d`-th root of unity.
    pub fn from_exponents(exponents: Vec<u32>, denominator: u32) -> Self {
        let denominator = denominator.max(1);
        let exponents: Vec<u32> = exponents.into_iter().map(|e| e % denominator).collect();
        let g = exponents
            .iter()
            .fold(denominator as u64, |g, &e| gcd(g, e as u64));
        CharSequence {
            exponents,
            denominator,
            order: denominator / g as u32,
            origin: None,
        }
    }

    /// A ±1 sequence (`true` is -1), denominator 2.
    pub fn from_signs(negative: &[bool]) -> Self {
        Self::from_exponents(negative.iter().map(|&n| n as u32).collect(), 2)
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    /// Order of the alphabet: the character order for built sequences.
    pub fn alphabet_order(&self) -> u32 {
        self.order
    }

    pub fn origin(&self) -> Option<&SequenceOrigin> {
        self.origin.as_ref()
    }

    pub fn entry(&self, j: usize) -> UnitValue {
        UnitValue {
            exponent: self.exponents[j],
            denominator: self.denominator,
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = UnitValue> + '_ {
        (0..self.len()).map(|j| self.entry(j))
    }

    /// True when every entry is ±1.
    pub fn is_binary(&self) -> bool {
        self.order <= 2
    }

    /// Entries as ±1 integers, for binary sequences.
    pub fn signs(&self) -> Option<Vec<i64>> {
        if !self.is_binary() {
            return None;
        }
        Some(
            self.exponents
                .iter()
                .map(|&e| if e == 0 { 1 } else { -1 })
                .collect(),
        )
    }

    /// Exponents joined by commas.
    pub fn csv_row(&self) -> String {
        let parts: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        parts.join(",")
    }
}

/// Builds sequences for a fixed `(ψ, χ)`, computing the orbit once.
#[derive(Debug, Clone)]
pub struct SequenceBuilder {
    psi: MoebiusMap,
    chi: Character,
    orbit: Vec<u32>,
}

impl SequenceBuilder {
    pub fn new(psi: &MoebiusMap, chi: &Character) -> Result<Self, SequenceError> {
        if psi.field() != chi.field() {
            return Err(SequenceError::FieldMismatch);
        }
        let orbit = psi.orbit_codes(1);
        if orbit.len() != psi.field().order() as usize + 1 {
            return Err(SequenceError::PsiNotFullCycle);
        }
        Ok(SequenceBuilder {
            psi: psi.clone(),
            chi: chi.clone(),
            orbit,
        })
    }

    pub fn psi(&self) -> &MoebiusMap {
        &self.psi
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    /// Point codes `ψ^j(1)` for `j = 0..=q`.
    pub fn orbit_codes(&self) -> &[u32] {
        &self.orbit
    }

    pub fn build(&self, phi: &MoebiusMap) -> Result<CharSequence, SequenceError> {
        if phi.field() != self.psi.field() {
            return Err(SequenceError::FieldMismatch);
        }
        let exponents = self
            .orbit
            .iter()
            .map(|&z| self.chi.exponent_at_code(phi.apply_code(z)))
            .collect();
        Ok(CharSequence {
            exponents,
            denominator: self.chi.denominator(),
            order: self.chi.order(),
            origin: Some(SequenceOrigin {
                psi: self.psi.clone(),
                phi: phi.clone(),
                chi: self.chi.clone(),
            }),
        })
    }
}

/// Entry `j` is `χ(φ(ψ^j(1)))` for `j = 0..=q`.
pub fn build_sequence(
    phi: &MoebiusMap,
    psi: &MoebiusMap,
    chi: &Character,
) -> Result<CharSequence, SequenceError> {
    SequenceBuilder::new(psi, chi)?.build(phi)
}

/// Left rotation: entry `j` of the result is entry `(j + s) mod N` of `seq`.
/// For built sequences the origin's `φ` becomes `φ ∘ ψ^s`.
pub fn cyclic_shift(seq: &CharSequence, s: usize) -> CharSequence {
    let n = seq.len();
    if n == 0 {
        return seq.clone();
    }
    let s = s % n;
    let mut exponents = seq.exponents.clone();
    exponents.rotate_left(s);
    let origin = seq.origin.as_ref().map(|o| SequenceOrigin {
        psi: o.psi.clone(),
        phi: o.phi.compose(&o.psi.pow(s as u64)).expect("same field"),
        chi: o.chi.clone(),
    });
    CharSequence {
        exponents,
        denominator: seq.denominator,
        order: seq.order,
        origin,
    }
}

/// A nonempty set of equal-length sequences over a common alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    members: Vec<CharSequence>,
}

impl Family {
    pub fn new(members: Vec<CharSequence>) -> Result<Self, SequenceError> {
        let first = members.first().ok_or(SequenceError::EmptyFamily)?;
        if members
            .iter()
            .any(|m| m.len() != first.len() || m.denominator != first.denominator)
        {
            return Err(SequenceError::LengthMismatch);
        }
        Ok(Family { members })
    }

    pub fn members(&self) -> &[CharSequence] {
        &self.members
    }

    /// `M`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `N`.
    pub fn sequence_length(&self) -> usize {
        self.members[0].len()
    }

    /// The `φ` of each member, when all members carry an origin.
    pub fn phis(&self) -> Option<Vec<&MoebiusMap>> {
        self.members
            .iter()
            .map(|m| m.origin.as_ref().map(|o| &o.phi))
            .collect()
    }

    /// Largest alphabet order among members.
    pub fn alphabet_order(&self) -> u32 {
        self.members.iter().map(|m| m.order).max().unwrap_or(1)
    }

    /// Index pairs `(i, j)`, `i < j`, of members with identical entries.
    pub fn duplicate_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                if self.members[i].exponents == self.members[j].exponents {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Member `i` is `build_sequence(phis[i], psi, chi)`.
pub fn build_family(
    phis: &[MoebiusMap],
    psi: &MoebiusMap,
    chi: &Character,
    mode: ExecMode,
) -> Result<Family, SequenceError> {
    if phis.is_empty() {
        return Err(SequenceError::EmptyFamily);
    }
    let builder = SequenceBuilder::new(psi, chi)?;
    let members = map_ordered(mode, phis, |phi| builder.build(phi))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Family::new(members)
}

/// Which maps `φ` make up a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiStrategy {
    /// Every element of the group (q ≤ 64).
    All,
    /// `count` distinct maps drawn uniformly with a seeded ChaCha8 stream.
    Sample { count: usize, seed: u64 },
    /// One representative per left coset `φ⟨ψ⟩` (q ≤ 64), so no member is a
    /// cyclic shift of another.
    CosetDistinct,
}

impl PhiStrategy {
    /// Parses `all`, `coset-distinct`, `sample:K`, `sample:K,seed=S` or
    /// `sample:K,S`; `default_seed` fills in a missing seed.
    pub fn parse(s: &str, default_seed: u64) -> Result<Self, SequenceError> {
        let bad = || SequenceError::InvalidStrategy(s.to_string());
        match s.trim() {
            "all" => Ok(PhiStrategy::All),
            "coset-distinct" => Ok(PhiStrategy::CosetDistinct),
            other => {
                let rest = other.strip_prefix("sample:").ok_or_else(bad)?;
                let (count, seed) = match rest.split_once(',') {
                    Some((c, s)) => {
                        let s = s.trim();
                        let s = s.strip_prefix("seed=").unwrap_or(s);
                        (c, s.parse::<u64>().map_err(|_| bad())?)
                    }
                    None => (rest, default_seed),
                };
                let count = count.trim().parse::<usize>().map_err(|_| bad())?;
                if count == 0 {
                    return Err(bad());
                }
                Ok(PhiStrategy::Sample { count, seed })
            }
        }
    }
}

impl FromStr for PhiStrategy {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, 0)
    }
}

impl fmt::Display for PhiStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiStrategy::All => write!(f, "all"),
            PhiStrategy::CosetDistinct => write!(f, "coset-distinct"),
            PhiStrategy::Sample { count, seed } => write!(f, "sample:{count},seed={seed}"),
        }
    }
}

/// Deterministic list of maps for a strategy. `psi` is only consulted by
/// [`PhiStrategy::CosetDistinct`].
pub fn select_phis(
    field: &Field,
    strategy: PhiStrategy,
    psi: &MoebiusMap,
) -> Result<Vec<MoebiusMap>, SequenceError> {
    if psi.field() != field {
        return Err(SequenceError::FieldMismatch);
    }
    match strategy {
        PhiStrategy::All => Ok(enumerate_group(field)?),
        PhiStrategy::Sample { count, seed } => sample_maps(field, count, seed),
        PhiStrategy::CosetDistinct => coset_representatives(field, psi),
    }
}

fn group_order(q: u64) -> u64 {
    q * (q * q - 1)
}

fn sample_maps(field: &Field, count: usize, seed: u64) -> Result<Vec<MoebiusMap>, SequenceError> {
    let q = field.order();
    let available = group_order(q as u64);
    if count as u64 > available {
        return Err(SequenceError::TooManySamples {
            requested: count as u64,
            available,
        });
    }
    // Each group element has exactly q-1 nonsingular matrix representatives,
    // so rejection sampling over matrices is uniform on the group.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coeffs = [(); 4].map(|_| rng.gen_range(0..q));
        if let Ok(map) = MoebiusMap::from_codes(field, coeffs) {
            if seen.insert(map.clone()) {
                out.push(map);
            }
        }
    }
    Ok(out)
}

fn coset_representatives(
    field: &Field,
    psi: &MoebiusMap,
) -> Result<Vec<MoebiusMap>, SequenceError> {
    let q = field.order();
    if q > ENUMERATION_LIMIT {
        return Err(SequenceError::FieldTooLarge {
            q,
            limit: ENUMERATION_LIMIT,
        });
    }
    let cycle: Vec<MoebiusMap> = (0..psi.order()).map(|s| psi.pow(s)).collect();
    let mut covered = HashSet::new();
    let mut reps = Vec::new();
    for phi in enumerate_group(field)? {
        if covered.contains(&phi) {
            continue;
        }
        for power in &cycle {
            covered.insert(phi.compose(power)?);
        }
        reps.push(phi);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::CharacterSpec;
    use crate::projective::find_psi;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    fn signs_of(seq: &CharSequence) -> Vec<i64> {
        seq.signs().unwrap()
    }

    #[test]
    fn q3_examples() {
        let f = gf(3);
        let psi = MoebiusMap::from_codes(&f, [1, 1, 2, 1]).unwrap();
        let chi = Character::quadratic(&f).unwrap();
        let id = MoebiusMap::identity(&f);
        let recip = MoebiusMap::from_codes(&f, [0, 1, 1, 0]).unwrap();
        assert_eq!(
            signs_of(&build_sequence(&id, &psi, &chi).unwrap()),
            vec![1, 1, -1, 1]
        );
        assert_eq!(
            signs_of(&build_sequence(&recip, &psi, &chi).unwrap()),
            vec![1, 1, -1, 1]
        );

        let fam = build_family(&[id, recip], &psi, &chi, ExecMode::Sequential).unwrap();
        assert_eq!(fam.size(), 2);
        assert_eq!(fam.duplicate_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn trivial_character_gives_all_ones() {
        let f = gf(7);
        let psi = find_psi(&f).unwrap();
        let chi = Character::trivial(&f).unwrap();
        for phi in enumerate_group(&f).unwrap().iter().step_by(17) {
            let seq = build_sequence(phi, &psi, &chi).unwrap();
            assert_eq!(seq.len(), 8);
            assert!(seq.exponents().iter().all(|&e| e == 0));
        }
    }

    #[test]
    fn rejects_non_cycling_psi() {
        let f = gf(5);
        let chi = Character::quadratic(&f).unwrap();
        let id = MoebiusMap::identity(&f);
        assert_eq!(
            build_sequence(&id, &id, &chi).unwrap_err(),
            SequenceError::PsiNotFullCycle
        );
        let other = Character::quadratic(&gf(7)).unwrap();
        let psi = find_psi(&f).unwrap();
        assert_eq!(
            build_sequence(&id, &psi, &other).unwrap_err(),
            SequenceError::FieldMismatch
        );
    }

    #[test]
    fn shift_examples() {
        let seq = CharSequence::from_signs(&[false, false, true, false]);
        assert_eq!(cyclic_shift(&seq, 0), seq);
        assert_eq!(cyclic_shift(&seq, 4), seq);
        assert_eq!(signs_of(&cyclic_shift(&seq, 1)), vec![1, -1, 1, 1]);
    }

    #[test]
    fn shift_tracks_origin() {
        let f = gf(7);
        let psi = find_psi(&f).unwrap();
        let chi = Character::new(&f, CharacterSpec::Order(3)).unwrap();
        let phi = MoebiusMap::from_codes(&f, [2, 5, 1, 3]).unwrap();
        let seq = build_sequence(&phi, &psi, &chi).unwrap();
        for s in 0..8 {
            let shifted = cyclic_shift(&seq, s);
            let rebuilt = build_sequence(&shifted.origin().unwrap().phi, &psi, &chi).unwrap();
            assert_eq!(rebuilt, shifted);
        }
    }

    #[test]
    fn family_of_whole_group() {
        let f = gf(5);
        let psi = find_psi(&f).unwrap();
        let chi = Character::quadratic(&f).unwrap();
        let phis = select_phis(&f, PhiStrategy::All, &psi).unwrap();
        let fam = build_family(&phis, &psi, &chi, ExecMode::Parallel).unwrap();
        assert_eq!((fam.size(), fam.sequence_length()), (120, 6));
    }

    #[test]
    fn family_validation() {
        assert_eq!(Family::new(vec![]).unwrap_err(), SequenceError::EmptyFamily);
        let a = CharSequence::from_signs(&[false, true]);
        let b = CharSequence::from_signs(&[false, true, true]);
        assert_eq!(
            Family::new(vec![a, b]).unwrap_err(),
            SequenceError::LengthMismatch
        );
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("all".parse::<PhiStrategy>().unwrap(), PhiStrategy::All);
        assert_eq!(
            PhiStrategy::parse("sample:4,seed=7", 0).unwrap(),
            PhiStrategy::Sample { count: 4, seed: 7 }
        );
        assert_eq!(
            PhiStrategy::parse("sample:4", 9).unwrap(),
            PhiStrategy::Sample { count: 4, seed: 9 }
        );
        assert_eq!(
            PhiStrategy::parse("sample:4,3", 9).unwrap(),
            PhiStrategy::Sample { count: 4, seed: 3 }
        );
        assert!(PhiStrategy::parse("sample:x", 0).is_err());
        assert!(PhiStrategy::parse("some", 0).is_err());
        let s = PhiStrategy::Sample { count: 4, seed: 7 };
        assert_eq!(PhiStrategy::parse(&s.to_string(), 0).unwrap(), s);
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = gf(13);
        let psi = find_psi(&f).unwrap();
        let s = PhiStrategy::Sample { count: 5, seed: 1 };
        let a = select_phis(&f, s, &psi).unwrap();
        let b = select_phis(&f, s, &psi).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().collect::<HashSet<_>>().len(), 5);
        let all = PhiStrategy::Sample { count: 24, seed: 3 };
        assert_eq!(
            select_phis(&gf(3), all, &find_psi(&gf(3)).unwrap())
                .unwrap()
                .len(),
            24
        );
        let too_many = PhiStrategy::Sample { count: 25, seed: 3 };
        assert!(matches!(
            select_phis(&gf(3), too_many, &find_psi(&gf(3)).unwrap()),
            Err(SequenceError::TooManySamples { .. })
        ));
    }

    #[test]
    fn sampling_works_beyond_enumeration_limit() {
        let f = gf(101);
        let psi = find_psi(&f).unwrap();
        let phis = select_phis(&f, PhiStrategy::Sample { count: 3, seed: 2 }, &psi).unwrap();
        assert_eq!(phis.len(), 3);
        assert!(matches!(
            select_phis(&f, PhiStrategy::All, &psi),
            Err(SequenceError::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn coset_distinct_q3() {
        let f = gf(3);
        let psi = find_psi(&f).unwrap();
        let reps = select_phis(&f, PhiStrategy::CosetDistinct, &psi).unwrap();
        assert_eq!(reps.len(), 6);
    }

    #[test]
    fn coset_count_matches_lagrange() {
        for q in [2u64, 4, 5, 7, 8, 9] {
            let f = gf(q);
            let psi = find_psi(&f).unwrap();
            let reps = select_phis(&f, PhiStrategy::CosetDistinct, &psi).unwrap();
            assert_eq!(reps.len() as u64, q * (q - 1));
        }
    }
}
