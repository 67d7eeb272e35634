//! Serializable row types shared by the json, csv and text renderers.

use probident_core::exact::rational::rational_to_f64;
use probident_core::exact::{format_rational, parse_rational, PiGradedValue};
use probident_core::identities::{IdentityReport, SeriesTally};
use serde::{Deserialize, Serialize};

use crate::CliError;

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// An [`IdentityReport`] with float approximations of both sides. The
/// approximations are `null` when a side exceeds the `f64` range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRow {
    #[serde(flatten)]
    pub report: IdentityReport,
    pub approx_lhs: Option<f64>,
    pub approx_rhs: Option<f64>,
}

impl From<IdentityReport> for IdentityRow {
    fn from(report: IdentityReport) -> Self {
        IdentityRow {
            approx_lhs: finite(report.approx_lhs()),
            approx_rhs: finite(report.approx_rhs()),
            report,
        }
    }
}

/// Flat CSV shape of an [`IdentityRow`]; π-graded values are embedded as
/// JSON text and an absent `p` is an empty cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCsvRow {
    pub identity: String,
    pub n: u64,
    pub p: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub residual: String,
    pub approx_lhs: Option<f64>,
    pub approx_rhs: Option<f64>,
    pub note: String,
}

fn graded_json(v: &PiGradedValue) -> String {
    serde_json::to_string(v).expect("π-graded values always serialize")
}

impl From<&IdentityRow> for IdentityCsvRow {
    fn from(row: &IdentityRow) -> Self {
        let r = &row.report;
        IdentityCsvRow {
            identity: r.identity.tag().to_string(),
            n: r.n,
            p: r.p.as_ref().map(format_rational).unwrap_or_default(),
            lhs: graded_json(&r.lhs),
            rhs: graded_json(&r.rhs),
            equal: r.equal,
            residual: graded_json(&r.residual),
            approx_lhs: row.approx_lhs,
            approx_rhs: row.approx_rhs,
            note: r.note.clone().unwrap_or_default(),
        }
    }
}

impl TryFrom<IdentityCsvRow> for IdentityRow {
    type Error = CliError;

    fn try_from(c: IdentityCsvRow) -> Result<Self, Self::Error> {
        let bad = |what: &str, e: &dyn std::fmt::Display| CliError::Parse(format!("{what}: {e}"));
        let graded = |what: &str, s: &str| -> Result<PiGradedValue, CliError> {
            serde_json::from_str(s).map_err(|e| bad(what, &e))
        };
        let report = IdentityReport {
            identity: c.identity.parse().map_err(|e| bad("identity", &e))?,
            n: c.n,
            p: if c.p.is_empty() {
                None
            } else {
                Some(parse_rational(&c.p).map_err(|e| bad("p", &e))?)
            },
            lhs: graded("lhs", &c.lhs)?,
            rhs: graded("rhs", &c.rhs)?,
            equal: c.equal,
            residual: graded("residual", &c.residual)?,
            note: (!c.note.is_empty()).then_some(c.note),
        };
        Ok(IdentityRow { report, approx_lhs: c.approx_lhs, approx_rhs: c.approx_rhs })
    }
}

/// Reads identity rows back from CSV produced by `--format csv`.
pub fn read_identity_csv<R: std::io::Read>(reader: R) -> Result<Vec<IdentityRow>, CliError> {
    csv::Reader::from_reader(reader)
        .deserialize::<IdentityCsvRow>()
        .map(|row| row.map_err(|e| CliError::Parse(e.to_string())).and_then(IdentityRow::try_from))
        .collect()
}

/// Partial sum of the arcsine-moment series. Exact quantities are `num/den`
/// strings, the target is π-graded, and the `approx_*` fields are floats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub n: u64,
    pub terms: u64,
    pub partial_sum: String,
    pub last_term: String,
    pub tail_bound: String,
    pub target: PiGradedValue,
    pub brackets_target: bool,
    pub approx_partial_sum: f64,
    pub approx_tail_bound: f64,
    pub approx_target: f64,
    pub ratio_to_target: f64,
    pub note: String,
}

impl SeriesRow {
    pub fn new(tally: &SeriesTally, note: &str) -> Self {
        SeriesRow {
            n: tally.n,
            terms: tally.terms_used,
            partial_sum: format_rational(&tally.partial_sum),
            last_term: format_rational(&tally.last_term),
            tail_bound: format_rational(&tally.tail_bound),
            target: tally.target.clone(),
            brackets_target: tally.brackets_target(),
            approx_partial_sum: rational_to_f64(&tally.partial_sum),
            approx_tail_bound: rational_to_f64(&tally.tail_bound),
            approx_target: tally.target_f64(),
            ratio_to_target: tally.ratio_to_target(),
            note: note.to_string(),
        }
    }
}

/// One numeric cross-check from the `density` command.
///
/// * `density`: the ₂F₁ form at `x` against the Appell F₁ form (no
///   reference within 0.01 of the origin, where the double series is slow).
/// * `moment`: `E X^(2n)` by quadrature against `C(2n,n)²/16ⁿ`.
/// * `t-moment`: `E T^(2n)` by quadrature against `(½)_n/(p+½)_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub kind: String,
    pub n: Option<u32>,
    pub p: Option<String>,
    pub x: Option<f64>,
    pub value: Option<f64>,
    pub reference: Option<f64>,
    pub abs_diff: Option<f64>,
    pub ok: bool,
    pub message: Option<String>,
}
