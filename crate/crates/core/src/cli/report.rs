use serde::{Deserialize, Serialize};

use super::{CliError, Command, OutputFormat, RunConfig, RunOutcome, EXIT_OK, EXIT_VERIFY_FAIL};
use crate::model::{
    dual_superpotentials, exchange_map, pcs_partner_coefficients, pt_constraint_check, Branch,
    PotentialCoefficients, PtConstraint, SusyParams,
};
use crate::numerics::{verify_spectrum, Complex64Ser, VerificationReport};
use crate::sl2::{correspondence_residuals, solve_correspondence};
use crate::spectra::{
    bifurcation_scan, merged_levels, two_series_spectrum, SeriesLabel, SpectrumSeries,
};

pub const SCHEMA_VERSION: &str = "1";

pub const CSV_HEADER: [&str; 7] = ["C", "branch", "series", "n", "re_E", "im_E", "residual"];

/// One line of the energy table. `residual` is empty for analytic rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    #[serde(rename = "C")]
    pub c: f64,
    pub branch: Branch,
    pub series: String,
    pub n: usize,
    #[serde(rename = "re_E")]
    pub re_e: f64,
    #[serde(rename = "im_E")]
    pub im_e: f64,
    pub residual: Option<f64>,
}

/// Parses an energy table written by the CLI.
pub fn csv_rows(text: &str) -> Result<Vec<CsvRow>, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("bad CSV header: {e}")))?
        .iter()
        .map(str::to_owned)
        .collect();
    if header != CSV_HEADER {
        return Err(CliError::Usage(format!(
            "unexpected CSV columns {header:?}"
        )));
    }
    reader
        .deserialize()
        .collect::<Result<Vec<CsvRow>, _>>()
        .map_err(|e| CliError::Usage(format!("bad CSV row: {e}")))
}

fn write_csv(rows: &[CsvRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Numeric(format!("CSV encoding: {e}"));
    w.write_record(CSV_HEADER).map_err(err)?;
    for r in rows {
        // `Display` for f64 is the shortest representation that round-trips.
        w.write_record([
            r.c.to_string(),
            r.branch.to_string(),
            r.series.clone(),
            r.n.to_string(),
            r.re_e.to_string(),
            r.im_e.to_string(),
            r.residual.map(|x| x.to_string()).unwrap_or_default(),
        ])
        .map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Numeric(format!("CSV encoding: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Numeric(e.to_string()))
}

fn series_rows(c: f64, s: &SpectrumSeries) -> impl Iterator<Item = CsvRow> + '_ {
    s.energies.iter().enumerate().map(move |(n, e)| CsvRow {
        c,
        branch: s.branch,
        series: s.label.to_string(),
        n,
        re_e: e.re + 0.0,
        im_e: e.im + 0.0,
        residual: None,
    })
}

#[derive(Serialize)]
struct Coefficients {
    t2: Complex64Ser,
    st: Complex64Ser,
    e0: Complex64Ser,
}

impl From<PotentialCoefficients> for Coefficients {
    fn from(v: PotentialCoefficients) -> Self {
        Self {
            t2: v.t2.into(),
            st: v.st.into(),
            e0: v.e0.into(),
        }
    }
}

#[derive(Serialize)]
struct Header {
    schema_version: &'static str,
    command: Command,
}

impl Header {
    fn new(command: Command) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
        }
    }
}

#[derive(Serialize)]
struct SuperpotentialOut {
    series: SeriesLabel,
    lam: Complex64Ser,
    mu: Complex64Ser,
    factorization_energy: Complex64Ser,
    pt_antisymmetric: bool,
    /// `V+` of this superpotential; its `V−` is the analysed potential.
    partner: Coefficients,
}

#[derive(Serialize)]
struct AnalyzeReport {
    #[serde(flatten)]
    header: Header,
    params: SusyParams,
    branch: Branch,
    potential: Coefficients,
    pt_constraint: PtConstraint,
    superpotentials: Vec<SuperpotentialOut>,
}

#[derive(Serialize)]
struct LevelOut {
    n: usize,
    energy: Complex64Ser,
}

#[derive(Serialize)]
struct SeriesOut {
    series: SeriesLabel,
    branch: Branch,
    factorization_energy: Complex64Ser,
    levels: Vec<LevelOut>,
}

impl From<&SpectrumSeries> for SeriesOut {
    fn from(s: &SpectrumSeries) -> Self {
        Self {
            series: s.label,
            branch: s.branch,
            factorization_energy: s.factorization_energy.into(),
            levels: s
                .energies
                .iter()
                .enumerate()
                .map(|(n, e)| LevelOut {
                    n,
                    energy: (*e).into(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct SpectrumReport {
    #[serde(flatten)]
    header: Header,
    params: SusyParams,
    branch: Branch,
    series: Vec<SeriesOut>,
    /// Both towers merged and sorted, degenerate levels repeated.
    merged: Vec<Complex64Ser>,
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    header: Header,
    pass: bool,
    summary: String,
    #[serde(flatten)]
    report: VerificationReport,
}

#[derive(Serialize)]
struct Sl2Solution {
    m: Complex64Ser,
    b: Complex64Ser,
    b_squared: Complex64Ser,
    residuals: [f64; 4],
    max_residual: f64,
}

#[derive(Serialize)]
struct Sl2Report {
    #[serde(flatten)]
    header: Header,
    params: SusyParams,
    branch: Branch,
    target: Coefficients,
    solutions: Vec<Sl2Solution>,
}

#[derive(Serialize)]
struct BifurcationPointOut {
    c: f64,
    all_real: bool,
    /// `null` when the branches have different level counts.
    conjugation_defect: f64,
    plus: Vec<SeriesOut>,
    minus: Vec<SeriesOut>,
}

#[derive(Serialize)]
struct BifurcationReport {
    #[serde(flatten)]
    header: Header,
    params: SusyParams,
    points: Vec<BifurcationPointOut>,
}

#[derive(Serialize)]
struct ExchangeReport {
    #[serde(flatten)]
    header: Header,
    params: SusyParams,
    exchanged: SusyParams,
    /// Largest `|A|, |B|` change after applying the exchange twice (rounding only).
    involution_defect: f64,
    branch: Branch,
    before: Coefficients,
    after: Coefficients,
    /// Largest `(t2, st)` difference on the same branch.
    shape_distance_same_branch: f64,
    /// Same, against the opposite branch of the original parameters.
    shape_distance_flipped_branch: f64,
    factorization_energies_before: [Complex64Ser; 2],
    factorization_energies_after: [Complex64Ser; 2],
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Numeric(format!("JSON encoding: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn ok(output: String) -> RunOutcome {
    RunOutcome {
        exit_code: EXIT_OK,
        output,
        summary: None,
    }
}

pub(super) fn render(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let p = cfg.params;
    let br = cfg.branch;
    let csv = cfg.output.format == OutputFormat::Csv;
    match cfg.command {
        Command::Analyze => {
            let (w, wp) = dual_superpotentials(&p, br);
            let superpotentials = [(SeriesLabel::Series1, w), (SeriesLabel::Series2, wp)]
                .into_iter()
                .map(|(series, w)| SuperpotentialOut {
                    series,
                    lam: w.lam.into(),
                    mu: w.mu.into(),
                    factorization_energy: w.factorization_energy.into(),
                    pt_antisymmetric: w.is_pt_antisymmetric(0.0),
                    partner: w.partner_potentials().1.into(),
                })
                .collect();
            Ok(ok(json(&AnalyzeReport {
                header: Header::new(cfg.command),
                params: p,
                branch: br,
                potential: pcs_partner_coefficients(&p, br).into(),
                pt_constraint: pt_constraint_check(&p),
                superpotentials,
            })?))
        }
        Command::Spectrum => {
            let (s1, s2) = two_series_spectrum(&p, br);
            if csv {
                let rows: Vec<CsvRow> =
                    series_rows(p.c, &s1).chain(series_rows(p.c, &s2)).collect();
                return Ok(ok(write_csv(&rows)?));
            }
            Ok(ok(json(&SpectrumReport {
                header: Header::new(cfg.command),
                params: p,
                branch: br,
                series: vec![(&s1).into(), (&s2).into()],
                merged: merged_levels(&s1, &s2)
                    .into_iter()
                    .map(Into::into)
                    .collect(),
            })?))
        }
        Command::Verify => {
            let report = verify_spectrum(&p, br, &cfg.verify_options()?)?;
            let pass = report.pass();
            let m = &report.matching;
            let summary = format!(
                "{} matched, max |ΔE| = {:.3e} (tol {:e}), {} unmatched analytic, {} unmatched numeric: {}",
                m.matches.len(),
                m.max_delta,
                report.tol_match,
                m.unmatched_analytic.len(),
                m.unmatched_numeric.len(),
                if pass { "PASS" } else { "FAIL" }
            );
            let output = if csv {
                let (s1, s2) = two_series_spectrum(&p, br);
                let mut rows: Vec<CsvRow> =
                    series_rows(p.c, &s1).chain(series_rows(p.c, &s2)).collect();
                let mut n = 0;
                for level in &report.numeric {
                    for _ in 0..level.multiplicity {
                        rows.push(CsvRow {
                            c: p.c,
                            branch: br,
                            series: "numeric".into(),
                            n,
                            re_e: level.energy.re + 0.0,
                            im_e: level.energy.im + 0.0,
                            residual: Some(level.residual),
                        });
                        n += 1;
                    }
                }
                write_csv(&rows)?
            } else {
                json(&VerifyReport {
                    header: Header::new(cfg.command),
                    pass,
                    summary: summary.clone(),
                    report,
                })?
            };
            Ok(RunOutcome {
                exit_code: if pass { EXIT_OK } else { EXIT_VERIFY_FAIL },
                output,
                summary: Some(summary),
            })
        }
        Command::Sl2 => {
            let solutions = solve_correspondence(&p, br)?
                .into_iter()
                .map(|s| {
                    let residuals = correspondence_residuals(&s, &p, br);
                    Sl2Solution {
                        m: s.m.into(),
                        b: s.b.into(),
                        b_squared: (s.b * s.b).into(),
                        residuals,
                        max_residual: residuals.iter().fold(0.0, |a, r| a.max(r.abs())),
                    }
                })
                .collect();
            let target = pcs_partner_coefficients(&p, br).shape();
            Ok(ok(json(&Sl2Report {
                header: Header::new(cfg.command),
                params: p,
                branch: br,
                target: target.into(),
                solutions,
            })?))
        }
        Command::Bifurcation => {
            let cs = cfg.scan.values();
            let points = bifurcation_scan(&p, &cs)?;
            if csv {
                let mut rows = Vec::new();
                for &c in &cs {
                    let q = p.with_c(c);
                    for b in Branch::BOTH {
                        let (s1, s2) = two_series_spectrum(&q, b);
                        rows.extend(series_rows(c, &s1));
                        rows.extend(series_rows(c, &s2));
                    }
                }
                return Ok(ok(write_csv(&rows)?));
            }
            let points = points
                .iter()
                .map(|pt| {
                    let q = p.with_c(pt.c);
                    let plus = two_series_spectrum(&q, Branch::Plus);
                    let minus = two_series_spectrum(&q, Branch::Minus);
                    BifurcationPointOut {
                        c: pt.c,
                        all_real: pt.all_real(),
                        conjugation_defect: pt.conjugation_defect(),
                        plus: vec![(&plus.0).into(), (&plus.1).into()],
                        minus: vec![(&minus.0).into(), (&minus.1).into()],
                    }
                })
                .collect();
            Ok(ok(json(&BifurcationReport {
                header: Header::new(cfg.command),
                params: p,
                points,
            })?))
        }
        Command::Exchange => {
            let q = exchange_map(&p);
            let before = pcs_partner_coefficients(&p, br);
            let after = pcs_partner_coefficients(&q, br);
            let flipped = pcs_partner_coefficients(&p, br.flipped());
            let energies = |x: &SusyParams| {
                let (w, wp) = dual_superpotentials(x, br);
                [
                    w.factorization_energy.into(),
                    wp.factorization_energy.into(),
                ]
            };
            Ok(ok(json(&ExchangeReport {
                header: Header::new(cfg.command),
                params: p,
                exchanged: q,
                involution_defect: {
                    let r = exchange_map(&q);
                    (r.a - p.a).abs().max((r.b - p.b).abs())
                },
                branch: br,
                before: before.into(),
                after: after.into(),
                shape_distance_same_branch: before.shape_distance(&after),
                shape_distance_flipped_branch: flipped.shape_distance(&after),
                factorization_energies_before: energies(&p),
                factorization_energies_after: energies(&q),
            })?))
        }
    }
}
