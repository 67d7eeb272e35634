use num_bigint::BigInt;
use probident_core::exact::rational::{frac, rational_to_f64};
use probident_core::exact::{central_binomial, format_rational, pochhammer, Rational};
use probident_core::identities::{p_points, series_partial_sum, verify, IdentityId, Parameter};
use probident_core::montecarlo::{
    estimate_even_moment, estimate_odd_moment, factorization_check, RngStream, SampleStats, StatisticId,
    Z_THRESHOLD,
};
use probident_core::specfun::{beta_diff_density, beta_diff_density_appell, moment_by_quadrature, t_density_moment};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{DensityArgs, ReportArgs, SampleArgs, SeriesArgs, SweepArgs, VerifyArgs};
use crate::rows::{DensityRow, IdentityRow, SeriesRow};
use crate::CliError;

/// Largest order used for `multi-convolution` in a report (the composition
/// count grows like n^(m-1)).
pub const REPORT_MULTI_N_MAX: u64 = 30;
pub const REPORT_MULTI_M_MAX: i64 = 6;
/// Largest order certified in `p` in a report (8n+4 points per order).
pub const REPORT_PARAMETRIC_N_MAX: u64 = 10;
/// Largest order for the series tallies in a report.
pub const REPORT_SERIES_N_MAX: u64 = 5;
/// Relative agreement demanded between the ₂F₁ and Appell forms.
pub const APPELL_REL_TOL: f64 = 1e-9;
/// The Appell cross-check is skipped for |x| below this.
pub const APPELL_MIN_ABS_X: f64 = 0.01;
pub const DENSITY_MOMENT_N_MAX: u32 = 6;
pub const T_MOMENT_N_MAX: u32 = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Document {
    Identity(IdentityRow),
    Identities(Vec<IdentityRow>),
    Sample(SampleStats),
    Series(SeriesRow),
    Density(Vec<DensityRow>),
    Report(FullReport),
}

pub struct Outcome {
    pub passed: bool,
    pub document: Document,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityGroup {
    pub identity: IdentityId,
    pub scope: String,
    pub passed: bool,
    pub checks: usize,
    pub note: Option<String>,
    pub reports: Vec<IdentityRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FullReport {
    pub passed: bool,
    pub n_max: u64,
    pub identities: Vec<IdentityGroup>,
    pub series: Vec<SeriesRow>,
}

type Job = (IdentityId, u64, Option<Rational>);

fn run_jobs(jobs: &[Job]) -> Result<Vec<IdentityRow>, CliError> {
    jobs.par_iter()
        .map(|(id, n, p)| verify(*id, *n, p.as_ref()).map(IdentityRow::from).map_err(CliError::from))
        .collect()
}

fn require_parameter(id: IdentityId, present: bool) -> Result<(), CliError> {
    if id.parameter() != Parameter::None && !present {
        let what = if id.parameter() == Parameter::Parts { "the number of factors m" } else { "p" };
        return Err(CliError::Usage(format!("{id} needs {what}; pass --p (or --p-list for sweep)")));
    }
    Ok(())
}

pub fn verify_cmd(a: &VerifyArgs) -> Result<Outcome, CliError> {
    require_parameter(a.identity, a.p.is_some())?;
    let row = IdentityRow::from(verify(a.identity, a.n, a.p.as_ref())?);
    Ok(Outcome { passed: row.report.equal, document: Document::Identity(row) })
}

pub fn sweep_cmd(a: &SweepArgs) -> Result<Outcome, CliError> {
    require_parameter(a.identity, a.p_list.is_some())?;
    let params: Vec<Option<Rational>> = match (&a.p_list, a.identity.parameter()) {
        (Some(list), Parameter::Shape | Parameter::Parts) => list.0.iter().cloned().map(Some).collect(),
        _ => vec![None],
    };
    let jobs: Vec<Job> = (1..=a.n_max)
        .flat_map(|n| params.iter().map(move |p| (a.identity, n, p.clone())))
        .collect();
    let rows = run_jobs(&jobs)?;
    Ok(Outcome { passed: rows.iter().all(|r| r.report.equal), document: Document::Identities(rows) })
}

pub fn sample_cmd(a: &SampleArgs) -> Result<Outcome, CliError> {
    let stream = RngStream::new(a.seed, a.stream);
    let stats = match (a.statistic, a.odd) {
        (StatisticId::Factorization, false) => factorization_check(a.n, a.samples, &stream)?,
        (_, false) => estimate_even_moment(a.statistic, a.n, a.p.as_ref(), a.samples, &stream)?,
        (_, true) => estimate_odd_moment(a.statistic, a.n, a.p.as_ref(), a.samples, &stream)?,
    };
    Ok(Outcome { passed: stats.passes(Z_THRESHOLD), document: Document::Sample(stats) })
}

fn series_row(n: u64, terms: u64) -> Result<SeriesRow, CliError> {
    let tally = series_partial_sum(n, terms)?;
    Ok(SeriesRow::new(&tally, IdentityId::Remark2Series.note().unwrap_or_default()))
}

pub fn series_cmd(a: &SeriesArgs) -> Result<Outcome, CliError> {
    let row = series_row(a.n, a.terms)?;
    Ok(Outcome { passed: row.brackets_target, document: Document::Series(row) })
}

fn check_row(kind: &str, n: u32, p: Option<&Rational>, value: Result<f64, String>, exact: f64, tol: f64) -> DensityRow {
    let p = p.map(format_rational);
    match value {
        Ok(v) => DensityRow {
            kind: kind.to_string(),
            n: Some(n),
            p,
            x: None,
            value: Some(v),
            reference: Some(exact),
            abs_diff: Some((v - exact).abs()),
            ok: (v - exact).abs() <= tol,
            message: None,
        },
        Err(message) => DensityRow {
            kind: kind.to_string(),
            n: Some(n),
            p,
            x: None,
            value: None,
            reference: Some(exact),
            abs_diff: None,
            ok: false,
            message: Some(message),
        },
    }
}

fn density_point(x: f64) -> DensityRow {
    let mut row = DensityRow {
        kind: "density".to_string(),
        n: None,
        p: None,
        x: Some(x),
        value: None,
        reference: None,
        abs_diff: None,
        ok: true,
        message: None,
    };
    if x == 0.0 {
        row.message = Some("the density has a logarithmic singularity at the origin".to_string());
        return row;
    }
    match beta_diff_density(x) {
        Ok(v) => row.value = Some(v),
        Err(e) => {
            row.ok = false;
            row.message = Some(e.to_string());
            return row;
        }
    }
    if x.abs() >= APPELL_MIN_ABS_X {
        match beta_diff_density_appell(x) {
            Ok(r) => {
                let v = row.value.unwrap_or(f64::NAN);
                row.reference = Some(r);
                row.abs_diff = Some((v - r).abs());
                row.ok = (v - r).abs() <= APPELL_REL_TOL * r.abs();
            }
            Err(e) => {
                row.ok = false;
                row.message = Some(e.to_string());
            }
        }
    }
    row
}

/// Density values at `points` evenly spaced interior points with the Appell
/// cross-check, then quadrature moments of the density and of the t-ratio
/// law, each required to match the exact value within `tol`.
pub fn density_cmd(a: &DensityArgs) -> Result<Outcome, CliError> {
    if !(a.tol > 0.0 && a.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", a.tol)));
    }
    let k = a.points;
    let xs: Vec<f64> = (1..=k).map(|i| -1.0 + 2.0 * i as f64 / (k + 1) as f64).collect();
    let mut rows: Vec<DensityRow> = xs.par_iter().map(|&x| density_point(x)).collect();

    let quad_tol = a.tol / 10.0;
    let moments: Vec<DensityRow> = (0..=DENSITY_MOMENT_N_MAX)
        .into_par_iter()
        .map(|n| {
            let c = central_binomial(u64::from(n));
            let exact = rational_to_f64(&Rational::new(&c * &c, BigInt::from(1) << (4 * n)));
            let value = moment_by_quadrature(n, quad_tol).map(|r| r.value).map_err(|e| e.to_string());
            check_row("moment", n, None, value, exact, a.tol)
        })
        .collect();
    rows.extend(moments);

    let shapes = [frac(1, 3), frac(1, 2), frac(1, 1), frac(5, 2)];
    let jobs: Vec<(Rational, u32)> =
        shapes.iter().flat_map(|p| (0..=T_MOMENT_N_MAX).map(move |n| (p.clone(), n))).collect();
    let t_rows: Vec<DensityRow> = jobs
        .par_iter()
        .map(|(p, n)| {
            let half = frac(1, 2);
            let exact = rational_to_f64(&(pochhammer(&half, u64::from(*n)) / pochhammer(&(p + &half), u64::from(*n))));
            let value = t_density_moment(*n, rational_to_f64(p), quad_tol)
                .map(|r| r.value)
                .map_err(|e| e.to_string());
            check_row("t-moment", *n, Some(p), value, exact, a.tol)
        })
        .collect();
    rows.extend(t_rows);

    Ok(Outcome { passed: rows.iter().all(|r| r.ok), document: Document::Density(rows) })
}

fn group_jobs(id: IdentityId, n_max: u64) -> (Vec<Job>, String) {
    match id.parameter() {
        Parameter::None => ((1..=n_max).map(|n| (id, n, None)).collect(), format!("n = 1..{n_max}")),
        Parameter::Shape => {
            let top = n_max.min(REPORT_PARAMETRIC_N_MAX);
            let jobs = (1..=top).flat_map(|n| p_points(n).into_iter().map(move |p| (id, n, Some(p)))).collect();
            (jobs, format!("n = 1..{top}, p = j + 1/3 for j = 0..8n+3"))
        }
        Parameter::Parts => {
            let top = n_max.min(REPORT_MULTI_N_MAX);
            let jobs = (1..=top)
                .flat_map(|n| (1..=REPORT_MULTI_M_MAX).map(move |m| (id, n, Some(Rational::from_integer(m.into())))))
                .collect();
            (jobs, format!("n = 1..{top}, m = 1..{REPORT_MULTI_M_MAX}"))
        }
    }
}

pub fn report_cmd(a: &ReportArgs) -> Result<Outcome, CliError> {
    let ids: Vec<IdentityId> = match (a.all, a.identity) {
        (_, Some(id)) => vec![id],
        (true, None) => IdentityId::ALL.to_vec(),
        (false, None) => return Err(CliError::Usage("report needs --all or --identity".to_string())),
    };
    let mut groups = Vec::with_capacity(ids.len());
    for id in &ids {
        let (jobs, scope) = group_jobs(*id, a.n_max);
        let reports = run_jobs(&jobs)?;
        groups.push(IdentityGroup {
            identity: *id,
            scope,
            passed: reports.iter().all(|r| r.report.equal),
            checks: reports.len(),
            note: id.note().map(str::to_string),
            reports,
        });
    }
    let series: Vec<SeriesRow> = if ids.contains(&IdentityId::Remark2Series) {
        (1..=a.n_max.min(REPORT_SERIES_N_MAX))
            .into_par_iter()
            .map(|n| series_row(n, a.terms))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let passed = groups.iter().all(|g| g.passed) && series.iter().all(|s| s.brackets_target);
    Ok(Outcome {
        passed,
        document: Document::Report(FullReport { passed, n_max: a.n_max, identities: groups, series }),
    })
}
