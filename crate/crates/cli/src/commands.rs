use std::path::Path;

use flseq_core::arith::is_prime;
use flseq_core::bounds::{compare_with_welch, kerdock_check, BoundReport, WelchComparison};
use flseq_core::characters::CharacterDescription;
use flseq_core::correlation::{autocorrelation_report, cross_spectrum, tmax_family, FamilyMaximum};
use flseq_core::exec::map_ordered;
use flseq_core::finite_field::FieldDescription;
use flseq_core::linear_span::sequence_span;
use flseq_core::projective::{find_psi, ProjPoint};
use flseq_core::records::{map_coeffs, FamilyDocument, MapCoeffs};
use flseq_core::sequence::{build_family, select_phis, Family};
use flseq_core::ExecMode;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::CliError;
use crate::input::{self, manifest_path};
use crate::output::{csv, emit, num, to_json};
use crate::{Format, GlobalOpts};

const SPAN_CONVENTION: &str =
    "linear span is computed on root-of-unity exponents reduced into Z_d, d the character order";
const CHARACTER_CONVENTION: &str = "chi(0) = chi(inf) = 1";

fn mode() -> ExecMode {
    ExecMode::default()
}

fn out_path(g: &GlobalOpts) -> Option<&Path> {
    g.out.as_deref()
}

#[derive(Serialize)]
struct PsiReport {
    field: FieldDescription,
    psi: MapCoeffs,
    order: u64,
    orbit: Vec<ProjPoint>,
    orbit_display: Vec<String>,
}

pub fn psi(g: &GlobalOpts) -> Result<(), CliError> {
    let field = input::field(g)?;
    let psi = find_psi(&field)?;
    let orbit = psi.orbit(&ProjPoint::Finite(field.one()))?;
    let text = match g.format {
        Format::Json => to_json(&PsiReport {
            field: field.description(),
            psi: map_coeffs(&psi),
            order: psi.order(),
            orbit_display: orbit.iter().map(ToString::to_string).collect(),
            orbit,
        }),
        Format::Csv => csv(
            &["step", "point"],
            orbit
                .iter()
                .enumerate()
                .map(|(k, pt)| [k.to_string(), pt.to_string()]),
        ),
    };
    emit(out_path(g), &text)
}

fn build(g: &GlobalOpts) -> Result<(Family, String), CliError> {
    let field = input::field(g)?;
    let chi = input::character(g, &field)?;
    let strategy = input::strategy(g)?;
    let psi = find_psi(&field)?;
    let phis = select_phis(&field, strategy, &psi)?;
    let family = build_family(&phis, &psi, &chi, mode())?;
    Ok((family, strategy.to_string()))
}

pub fn family(g: &GlobalOpts) -> Result<(), CliError> {
    let (family, strategy) = build(g)?;
    match g.format {
        Format::Json => {
            let doc = FamilyDocument::from_family(&family, Some(strategy), true)?;
            emit(out_path(g), &to_json(&doc))
        }
        Format::Csv => {
            let out = out_path(g)
                .ok_or_else(|| CliError::invalid("--format csv for family needs --out"))?;
            let manifest = FamilyDocument::from_family(&family, Some(strategy), false)?;
            let rows: String = family
                .members()
                .iter()
                .map(|m| m.csv_row() + "\n")
                .collect();
            emit(Some(out), &rows)?;
            emit(Some(&manifest_path(out)), &to_json(&manifest))
        }
    }
}

fn pair_components(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
struct MemberCorrelation {
    index: usize,
    #[serde(rename = "T0")]
    t0: f64,
    tmax: f64,
    argmax_shift: usize,
    spectrum: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct PairSpectrum {
    i: usize,
    j: usize,
    spectrum: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct CorrelateReport<'a> {
    field: &'a FieldDescription,
    psi: &'a MapCoeffs,
    chi: &'a CharacterDescription,
    length: usize,
    size: usize,
    members: Vec<MemberCorrelation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<PairSpectrum>>,
    #[serde(rename = "TA")]
    ta: FamilyMaximum,
    welch: WelchComparison,
    notes: Vec<String>,
}

fn member_correlations(family: &Family) -> Vec<MemberCorrelation> {
    map_ordered(mode(), family.members(), |m| {
        let r = autocorrelation_report(m);
        MemberCorrelation {
            index: 0,
            t0: r.peak().re,
            tmax: r.tmax,
            argmax_shift: r.argmax_shift,
            spectrum: r.spectrum.iter().copied().map(pair_components).collect(),
        }
    })
    .into_iter()
    .enumerate()
    .map(|(index, m)| MemberCorrelation { index, ..m })
    .collect()
}

fn pair_spectra(family: &Family) -> Vec<PairSpectrum> {
    let n = family.size();
    let members = family.members();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    map_ordered(mode(), &pairs, |&(i, j)| {
        let spectrum = cross_spectrum(&members[i], &members[j])
            .expect("family members share length and alphabet");
        PairSpectrum {
            i,
            j,
            spectrum: spectrum.into_iter().map(pair_components).collect(),
        }
    })
}

fn family_notes(family: &Family) -> Vec<String> {
    let dups = family.duplicate_pairs();
    match dups.first() {
        None => Vec::new(),
        Some((i, j)) => vec![format!(
            "duplicate members: {} pair(s) of identical sequences, first ({i}, {j}); T(A) equals N",
            dups.len()
        )],
    }
}

pub fn correlate(g: &GlobalOpts, path: &Path, pairs: bool) -> Result<(), CliError> {
    let loaded = input::load_family(path, mode())?;
    let family = &loaded.family;
    let doc = &loaded.document;
    let members = member_correlations(family);
    let pair_list = pairs.then(|| pair_spectra(family));
    let text = match g.format {
        Format::Json => {
            let ta = tmax_family(family, mode());
            to_json(&CorrelateReport {
                field: &doc.field,
                psi: &doc.psi,
                chi: &doc.chi,
                length: family.sequence_length(),
                size: family.size(),
                members,
                pairs: pair_list,
                ta,
                welch: compare_with_welch(
                    ta.value,
                    family.sequence_length() as u64,
                    family.size() as u64,
                ),
                notes: family_notes(family),
            })
        }
        Format::Csv => {
            let spectrum_rows = |i: usize, j: usize, spectrum: &[[f64; 2]]| -> Vec<Vec<String>> {
                spectrum
                    .iter()
                    .enumerate()
                    .map(|(s, &[re, im])| {
                        vec![
                            i.to_string(),
                            j.to_string(),
                            s.to_string(),
                            num(re),
                            num(im),
                            num(re.hypot(im)),
                        ]
                    })
                    .collect()
            };
            let mut rows: Vec<Vec<String>> = Vec::new();
            for m in &members {
                rows.extend(spectrum_rows(m.index, m.index, &m.spectrum));
            }
            for p in pair_list.iter().flatten() {
                rows.extend(spectrum_rows(p.i, p.j, &p.spectrum));
            }
            csv(&["i", "j", "s", "re", "im", "abs"], rows)
        }
    };
    emit(out_path(g), &text)
}

#[derive(Serialize)]
struct BoundsOutput {
    #[serde(flatten)]
    report: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured: Option<WelchComparison>,
}

fn key_value_csv(value: &serde_json::Value) -> String {
    fn walk(prefix: &str, v: &serde_json::Value, rows: &mut Vec<[String; 2]>) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, v, rows);
                }
            }
            serde_json::Value::String(s) => rows.push([prefix.to_string(), format!("\"{s}\"")]),
            other => rows.push([prefix.to_string(), other.to_string()]),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    csv(&["key", "value"], rows)
}

fn emit_value<T: Serialize>(g: &GlobalOpts, value: &T) -> Result<(), CliError> {
    let text = match g.format {
        Format::Json => to_json(value),
        Format::Csv => key_value_csv(&serde_json::to_value(value).expect("report serialization")),
    };
    emit(out_path(g), &text)
}

pub fn bounds(g: &GlobalOpts, n: u64, m: u64, measured: Option<f64>) -> Result<(), CliError> {
    let report = BoundReport::new(n, m)?;
    let measured = match measured {
        Some(x) if !x.is_finite() || x < 0.0 => {
            return Err(CliError::invalid(
                "--measured must be a finite non-negative number",
            ))
        }
        other => other.map(|x| compare_with_welch(x, n, m)),
    };
    emit_value(g, &BoundsOutput { report, measured })
}

pub fn kerdock(g: &GlobalOpts, degree: u32) -> Result<(), CliError> {
    emit_value(g, &kerdock_check(degree)?)
}

#[derive(Serialize)]
struct SpanEntry {
    index: usize,
    span: usize,
    connection: Vec<u32>,
    modulus: u32,
}

#[derive(Serialize)]
struct LinspanReport<'a> {
    chi: &'a CharacterDescription,
    periods: usize,
    convention: &'static str,
    members: Vec<SpanEntry>,
}

fn check_span_supported(d: u32) -> Result<(), CliError> {
    if d == 1 || is_prime(d as u64) {
        Ok(())
    } else {
        Err(CliError::Unsupported(format!(
            "character order {d} is composite; linear span is only computed for prime orders \
             (exponent streams over Z_d), and no convention is defined for composite d"
        )))
    }
}

fn spans(family: &Family, periods: usize) -> Result<Vec<SpanEntry>, CliError> {
    map_ordered(mode(), family.members(), |m| sequence_span(m, periods))
        .into_iter()
        .enumerate()
        .map(|(index, r)| {
            let r = r?;
            Ok(SpanEntry {
                index,
                span: r.span,
                connection: r.connection,
                modulus: r.modulus,
            })
        })
        .collect()
}

pub fn linspan(g: &GlobalOpts, path: &Path, periods: usize) -> Result<(), CliError> {
    if periods == 0 {
        return Err(CliError::invalid("--periods must be at least 1"));
    }
    let loaded = input::load_family(path, mode())?;
    check_span_supported(loaded.document.chi.order)?;
    let members = spans(&loaded.family, periods)?;
    let text = match g.format {
        Format::Json => to_json(&LinspanReport {
            chi: &loaded.document.chi,
            periods,
            convention: SPAN_CONVENTION,
            members,
        }),
        Format::Csv => csv(
            &["index", "span", "modulus", "connection"],
            members.iter().map(|e| {
                let conn: Vec<String> = e.connection.iter().map(u32::to_string).collect();
                [
                    e.index.to_string(),
                    e.span.to_string(),
                    e.modulus.to_string(),
                    conn.join(" "),
                ]
            }),
        ),
    };
    emit(out_path(g), &text)
}

#[derive(Serialize)]
struct MemberSummary {
    index: usize,
    #[serde(rename = "T0")]
    t0: f64,
    tmax: f64,
    argmax_shift: usize,
}

#[derive(Serialize)]
#[serde(untagged)]
enum SpanSection {
    Computed {
        periods: usize,
        members: Vec<SpanEntry>,
    },
    Skipped {
        skipped: String,
    },
}

#[derive(Serialize)]
struct FullReport {
    family: FamilyDocument,
    psi_orbit: Vec<ProjPoint>,
    seed: u64,
    members: Vec<MemberSummary>,
    #[serde(rename = "TA")]
    ta: FamilyMaximum,
    bounds: BoundReport,
    welch: WelchComparison,
    linear_span: SpanSection,
    notes: Vec<String>,
    conventions: Vec<&'static str>,
}

pub fn report(g: &GlobalOpts) -> Result<(), CliError> {
    if g.format == Format::Csv {
        return Err(CliError::invalid("report is only available as JSON"));
    }
    let (family, strategy) = build(g)?;
    let first = family.members()[0]
        .origin()
        .expect("built sequences carry their origin");
    let psi_orbit = first
        .psi
        .orbit(&ProjPoint::Finite(first.psi.field().one()))?;
    let d = first.chi.order();
    let (n, m) = (family.sequence_length() as u64, family.size() as u64);
    let ta = tmax_family(&family, mode());
    let members = member_correlations(&family)
        .into_iter()
        .map(|c| MemberSummary {
            index: c.index,
            t0: c.t0,
            tmax: c.tmax,
            argmax_shift: c.argmax_shift,
        })
        .collect();
    let linear_span = match check_span_supported(d) {
        Ok(()) => SpanSection::Computed {
            periods: 2,
            members: spans(&family, 2)?,
        },
        Err(e) => SpanSection::Skipped {
            skipped: e.to_string(),
        },
    };
    let report = FullReport {
        family: FamilyDocument::from_family(&family, Some(strategy), true)?,
        psi_orbit,
        seed: g.seed,
        members,
        ta,
        bounds: BoundReport::new(n, m)?,
        welch: compare_with_welch(ta.value, n, m),
        linear_span,
        notes: family_notes(&family),
        conventions: vec![CHARACTER_CONVENTION, SPAN_CONVENTION],
    };
    emit(out_path(g), &to_json(&report))
}
