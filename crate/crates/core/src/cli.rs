//! Report generation behind the `courant-cube` binary.
//!
//! Every command builds a serializable report and renders it as Markdown, CSV or JSON.
//! JSON reports carry `"schema": 1` and deserialize back into the same structs.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{covers_cutoff, pleijel_cutoff, screen_candidates, PleijelCutoff, FABER_KRAHN_RATIO};
use crate::error::{invalid, Error, Result};
use crate::nodal::{
    count_nodal_domains, sweep_eigenspace, EigenCombo, NodalConfig, NodalCount, SweepConfig, SweepResult,
};
use crate::spectrum::{enumerate_groups, find_group, product_nodal_count, BoxSpec, EigenvalueGroup, ModeTriple};
use crate::symmetry::{group_parity, symmetric_index, Parity};

pub const SCHEMA_VERSION: u32 = 1;

/// Samples closer than this to a predictor subcase boundary are left out of the
/// predictor agreement check.
pub const PREDICTOR_MARGIN: f64 = 1e-2;

/// Resolution used to confirm product-mode witnesses numerically.
const WITNESS_RESOLUTION: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => invalid(format!("unknown format {other:?}, expected md, csv or json")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub lambda_max: f64,
    pub format: Format,
    /// Starting resolution of the nodal counter.
    pub resolution: usize,
    pub sweep_samples: usize,
    pub seed: u64,
    pub bx: BoxSpec,
    pub max_resolution: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            lambda_max: 48.0,
            format: Format::Md,
            resolution: 128,
            sweep_samples: 500,
            seed: 0,
            bx: BoxSpec::CUBE,
            max_resolution: NodalConfig::default().max_resolution,
        }
    }
}

impl ReportConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_max >= 3.0) || !self.lambda_max.is_finite() {
            return invalid(format!("lambda_max must be a finite value >= 3, got {}", self.lambda_max));
        }
        if self.sweep_samples == 0 {
            return invalid("sweep needs at least one sample");
        }
        self.bx.validate()
    }

    fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            samples: self.sweep_samples,
            resolution: self.resolution,
            seed: self.seed,
            nodal: NodalConfig { max_resolution: self.max_resolution },
        }
    }
}

/// Rendered output plus the warnings that decide the exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub warnings: Vec<String>,
}

impl Output {
    fn clean(text: String) -> Self {
        Output { text, warnings: Vec::new() }
    }

    /// 0 for a clean run, 2 when the run completed with warnings.
    pub fn exit_code(&self) -> i32 {
        if self.warnings.is_empty() {
            0
        } else {
            2
        }
    }
}

pub fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn format_range(lo: u64, hi: u64) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{lo}..{hi}")
    }
}

fn join_modes(modes: &[ModeTriple]) -> String {
    modes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" & ")
}

fn join_ks(ks: &[u64]) -> String {
    ks.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// table

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub k_min: u64,
    pub k_max: u64,
    pub value: f64,
    pub multiplicity: usize,
    pub representatives: Vec<ModeTriple>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub schema: u32,
    pub command: String,
    pub bx: BoxSpec,
    pub lambda_max: f64,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn build(config: &ReportConfig) -> Result<Self> {
        config.validate()?;
        let rows = enumerate_groups(&config.bx, config.lambda_max)?
            .into_iter()
            .map(|g| TableRow {
                k_min: g.k_min,
                k_max: g.k_max,
                value: g.value,
                multiplicity: g.multiplicity(),
                representatives: g.representatives(),
            })
            .collect();
        Ok(TableReport {
            schema: SCHEMA_VERSION,
            command: "table".into(),
            bx: config.bx,
            lambda_max: config.lambda_max,
            rows,
        })
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Md => {
                out.push_str("| k | (ℓ,m,n) | λ_k |\n|---|---|---|\n");
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} |",
                        format_range(r.k_min, r.k_max),
                        join_modes(&r.representatives),
                        format_value(r.value)
                    );
                }
            }
            Format::Csv => {
                out.push_str("k_min,k_max,value,multiplicity,representatives\n");
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        r.k_min,
                        r.k_max,
                        format_value(r.value),
                        r.multiplicity,
                        csv_field(&join_modes(&r.representatives))
                    );
                }
            }
            Format::Json => out = to_json(self),
        }
        out
    }
}

pub fn cmd_table(config: &ReportConfig) -> Result<Output> {
    Ok(Output::clean(TableReport::build(config)?.render(config.format)))
}

// ---------------------------------------------------------------------------
// screen

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScreenRow {
    pub k_min: u64,
    pub k_max: u64,
    pub value: f64,
    pub multiplicity: usize,
    pub ratio: f64,
    pub fk_pass: bool,
    pub candidate: bool,
    pub parity: Option<Parity>,
    pub j: Option<u64>,
    pub bound: Option<u64>,
    pub symmetry_excluded: bool,
    pub survivor: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScreenReport {
    pub schema: u32,
    pub command: String,
    pub bx: BoxSpec,
    pub lambda_max: f64,
    pub fk_constant: f64,
    pub cutoff: PleijelCutoff,
    /// Whether every eigenvalue below the cutoff was screened.
    pub covers_cutoff: bool,
    pub rows: Vec<ScreenRow>,
    pub candidates: Vec<u64>,
    pub survivors: Vec<u64>,
}

impl ScreenReport {
    pub fn build(config: &ReportConfig) -> Result<Self> {
        config.validate()?;
        let cutoff = pleijel_cutoff()?;
        let mut rows = Vec::new();
        for rec in screen_candidates(&config.bx, config.lambda_max)? {
            let g = &rec.group;
            let parity = group_parity(g);
            let sym = parity.map(|p| symmetric_index(&config.bx, g.value, p)).transpose()?;
            let symmetry_excluded = sym.as_ref().is_some_and(|s| s.bound < g.k_min);
            rows.push(ScreenRow {
                k_min: g.k_min,
                k_max: g.k_max,
                value: g.value,
                multiplicity: g.multiplicity(),
                ratio: rec.ratio,
                fk_pass: rec.fk_pass,
                candidate: rec.candidate,
                parity,
                j: sym.as_ref().map(|s| s.j),
                bound: sym.as_ref().map(|s| s.bound),
                symmetry_excluded,
                survivor: rec.candidate && !symmetry_excluded,
            });
        }
        let candidates = rows.iter().filter(|r| r.candidate).map(|r| r.k_min).collect();
        let survivors = rows.iter().filter(|r| r.survivor).map(|r| r.k_min).collect();
        Ok(ScreenReport {
            schema: SCHEMA_VERSION,
            command: "screen".into(),
            bx: config.bx,
            lambda_max: config.lambda_max,
            fk_constant: FABER_KRAHN_RATIO,
            cutoff,
            covers_cutoff: covers_cutoff(&config.bx, config.lambda_max, &cutoff)?,
            rows,
            candidates,
            survivors,
        })
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let par = |p: Option<Parity>| p.map(|p| p.to_string()).unwrap_or_else(|| "mixed".into());
        match format {
            Format::Md => {
                let _ = writeln!(out, "# Screening up to λ = {}\n", format_value(self.lambda_max));
                let _ = writeln!(out, "Faber–Krahn condition: λ^(3/2)/k ≥ 4π/3 = {:.5}", self.fk_constant);
                let _ = writeln!(
                    out,
                    "Cutoff: μ root {:.5}, Courant sharp only if λ < {:.1} (μ² = {:.4}); covered: {}\n",
                    self.cutoff.mu_root,
                    self.cutoff.lambda_cutoff,
                    self.cutoff.lambda_cutoff,
                    if self.covers_cutoff { "yes" } else { "no" }
                );
                out.push_str("| k | λ | mult | λ^(3/2)/k | FK | parity | j | 2j | symmetry | survivor |\n");
                out.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {:.4} | {} | {} | {} | {} | {} | {} |",
                        format_range(r.k_min, r.k_max),
                        format_value(r.value),
                        r.multiplicity,
                        r.ratio,
                        if r.fk_pass { "pass" } else { "fail" },
                        par(r.parity),
                        opt(r.j),
                        opt(r.bound),
                        if r.symmetry_excluded { "excluded" } else { "-" },
                        if r.survivor { "yes" } else { "no" }
                    );
                }
                let _ = writeln!(out, "\nCandidates (Faber–Krahn): k = {}", join_ks(&self.candidates));
                let _ = writeln!(out, "Survivors (after symmetry): k = {}", join_ks(&self.survivors));
            }
            Format::Csv => {
                out.push_str("k_min,k_max,value,multiplicity,ratio,fk_pass,candidate,parity,j,bound,symmetry_excluded,survivor\n");
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},{},{},{}",
                        r.k_min,
                        r.k_max,
                        format_value(r.value),
                        r.multiplicity,
                        r.ratio,
                        r.fk_pass,
                        r.candidate,
                        par(r.parity),
                        opt(r.j),
                        opt(r.bound),
                        r.symmetry_excluded,
                        r.survivor
                    );
                }
            }
            Format::Json => out = to_json(self),
        }
        out
    }
}

pub fn cmd_screen(config: &ReportConfig) -> Result<Output> {
    let report = ScreenReport::build(config)?;
    let mut warnings = Vec::new();
    if !report.covers_cutoff {
        warnings.push(format!(
            "lambda_max = {} stops below the cutoff {:.4}",
            format_value(config.lambda_max),
            report.cutoff.lambda_cutoff
        ));
    }
    Ok(Output { text: report.render(config.format), warnings })
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: u32,
    pub command: String,
    pub value: f64,
    pub k_min: u64,
    pub k_max: u64,
    pub resolution: usize,
    pub seed: u64,
    pub predictor_margin: f64,
    pub predictor_checked: usize,
    pub predictor_agreed: usize,
    pub non_converged: Vec<usize>,
    pub result: SweepResult,
}

impl SweepReport {
    pub fn build(config: &ReportConfig, group: &EigenvalueGroup) -> Result<Self> {
        config.validate()?;
        let result = sweep_eigenspace(group, &config.sweep_config())?;
        let (checked, agreed) = result.predictor_agreement(PREDICTOR_MARGIN);
        Ok(SweepReport {
            schema: SCHEMA_VERSION,
            command: "sweep".into(),
            value: group.value,
            k_min: group.k_min,
            k_max: group.k_max,
            resolution: config.resolution,
            seed: config.seed,
            predictor_margin: PREDICTOR_MARGIN,
            predictor_checked: checked,
            predictor_agreed: agreed,
            non_converged: result.non_converged().map(|s| s.index).collect(),
            result,
        })
    }

    fn has_predictor(&self) -> bool {
        self.result.samples.iter().any(|s| s.prediction.is_some())
    }

    fn summary_md(&self, out: &mut String) {
        let hist: Vec<String> = self.result.histogram.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        let _ = writeln!(
            out,
            "Sweep of λ = {} (k = {}), {} samples, resolution {}, seed {}",
            format_value(self.value),
            format_range(self.k_min, self.k_max),
            self.result.samples.len(),
            self.resolution,
            self.seed
        );
        let _ = writeln!(out, "Histogram of nodal domain counts: {{{}}}", hist.join(", "));
        if self.has_predictor() {
            let _ = writeln!(
                out,
                "Quadric predictor agreement (margin > {}): {}/{}",
                self.predictor_margin, self.predictor_agreed, self.predictor_checked
            );
        }
        let _ = writeln!(out, "Non-converged samples: {}", self.non_converged.len());
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Md => {
                let _ = writeln!(out, "# Eigenspace sweep\n");
                self.summary_md(&mut out);
                out.push_str("\n| sample | coefficients | domains | + | − | resolution | converged | predicted | margin |\n");
                out.push_str("|---|---|---|---|---|---|---|---|---|\n");
                for s in &self.result.samples {
                    let coeffs: Vec<String> = s.coeffs.iter().map(|c| format!("{c:.4}")).collect();
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                        s.index,
                        coeffs.join(", "),
                        s.count.total,
                        s.count.positive_components,
                        s.count.negative_components,
                        s.count.resolution_used,
                        s.count.converged,
                        s.prediction.as_ref().map(|p| p.count.to_string()).unwrap_or_else(|| "-".into()),
                        s.margin.map(|m| format!("{m:.4}")).unwrap_or_else(|| "-".into()),
                    );
                }
            }
            Format::Csv => {
                out.push_str("sample,coefficients,total,positive,negative,resolution,converged,predicted,margin\n");
                for s in &self.result.samples {
                    let coeffs: Vec<String> = s.coeffs.iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{}",
                        s.index,
                        csv_field(&coeffs.join(" ")),
                        s.count.total,
                        s.count.positive_components,
                        s.count.negative_components,
                        s.count.resolution_used,
                        s.count.converged,
                        s.prediction.as_ref().map(|p| p.count.to_string()).unwrap_or_default(),
                        s.margin.map(|m| m.to_string()).unwrap_or_default(),
                    );
                }
            }
            Format::Json => out = to_json(self),
        }
        out
    }

    fn warnings(&self) -> Vec<String> {
        let mut w: Vec<String> = self
            .result
            .non_converged()
            .map(|s| format!("sample {} did not converge (total {} at resolution {})", s.index, s.count.total, s.count.resolution_used))
            .collect();
        if self.predictor_agreed != self.predictor_checked {
            w.push(format!(
                "quadric predictor disagrees on {} of {} samples",
                self.predictor_checked - self.predictor_agreed,
                self.predictor_checked
            ));
        }
        w
    }
}

pub fn cmd_sweep(config: &ReportConfig, value: f64) -> Result<Output> {
    let group = find_group(&config.bx, value)?;
    let report = SweepReport::build(config, &group)?;
    let warnings = report.warnings();
    Ok(Output { text: report.render(config.format), warnings })
}

// ---------------------------------------------------------------------------
// verdict

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateStatus {
    CourantSharp,
    NotCourantSharp,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateVerdict {
    pub k: u64,
    pub value: f64,
    pub status: CandidateStatus,
    pub method: String,
    /// Largest nodal domain count found for this eigenvalue.
    pub max_domains: usize,
    pub witness: Option<ModeTriple>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub schema: u32,
    pub command: String,
    pub bx: BoxSpec,
    pub cutoff: PleijelCutoff,
    pub candidates: Vec<u64>,
    pub survivors: Vec<u64>,
    pub decisions: Vec<CandidateVerdict>,
    pub sweeps: Vec<SweepReport>,
    pub courant_sharp: Vec<u64>,
    pub warnings: Vec<String>,
    pub verdict: String,
}

impl VerdictReport {
    pub fn build(config: &ReportConfig) -> Result<Self> {
        let screen = ScreenReport::build(config)?;
        let mut warnings = Vec::new();
        if !screen.covers_cutoff {
            warnings.push(format!("screening stops at λ = {} below the cutoff", format_value(config.lambda_max)));
        }
        if !config.bx.is_cube() {
            warnings.push("the eigenvalue cutoff is established for the cube only".into());
        }
        let groups = enumerate_groups(&config.bx, config.lambda_max)?;
        let mut decisions = Vec::new();
        let mut sweeps = Vec::new();
        for &k in &screen.survivors {
            let group = groups.iter().find(|g| g.k_min == k).expect("survivor comes from the table");
            let (decision, sweep) = decide_candidate(config, group, &mut warnings)?;
            decisions.push(decision);
            sweeps.extend(sweep);
        }
        let courant_sharp: Vec<u64> = decisions
            .iter()
            .filter(|d| d.status == CandidateStatus::CourantSharp)
            .map(|d| d.k)
            .collect();
        let listed: Vec<String> = decisions
            .iter()
            .filter(|d| d.status == CandidateStatus::CourantSharp)
            .map(|d| format!("k={} (λ={})", d.k, format_value(d.value)))
            .collect();
        Ok(VerdictReport {
            schema: SCHEMA_VERSION,
            command: "verdict".into(),
            bx: config.bx,
            cutoff: screen.cutoff,
            candidates: screen.candidates,
            survivors: screen.survivors,
            decisions,
            sweeps,
            courant_sharp,
            warnings,
            verdict: format!("Courant sharp: {}", listed.join(", ")),
        })
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Md => {
                out.push_str("# Courant-sharp eigenvalues\n\n");
                let _ = writeln!(
                    out,
                    "Cutoff: λ < {:.1} (μ root {:.5})",
                    self.cutoff.lambda_cutoff, self.cutoff.mu_root
                );
                let _ = writeln!(out, "Candidates (Faber–Krahn): k = {}", join_ks(&self.candidates));
                let _ = writeln!(out, "Survivors (after symmetry): k = {}\n", join_ks(&self.survivors));
                out.push_str("| k | λ | status | max domains | method |\n|---|---|---|---|---|\n");
                for d in &self.decisions {
                    let status = match d.status {
                        CandidateStatus::CourantSharp => "Courant sharp",
                        CandidateStatus::NotCourantSharp => "not Courant sharp",
                        CandidateStatus::Undecided => "undecided",
                    };
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} |",
                        d.k,
                        format_value(d.value),
                        status,
                        d.max_domains,
                        d.method
                    );
                }
                for s in &self.sweeps {
                    out.push('\n');
                    s.summary_md(&mut out);
                }
                if !self.warnings.is_empty() {
                    out.push_str("\n## Warnings\n\n");
                    for w in &self.warnings {
                        let _ = writeln!(out, "- {w}");
                    }
                }
                let _ = writeln!(out, "\n{}", self.verdict);
            }
            Format::Csv => {
                out.push_str("k,value,status,max_domains,method\n");
                for d in &self.decisions {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        d.k,
                        format_value(d.value),
                        serde_json::to_value(&d.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                        d.max_domains,
                        csv_field(&d.method)
                    );
                }
            }
            Format::Json => out = to_json(self),
        }
        out
    }
}

/// Decides one surviving candidate: a product mode with `k` domains proves it sharp;
/// otherwise a sweep of the eigenspace (checked against the quadric predictor where one
/// exists) has to show every eigenfunction stays below `k`.
fn decide_candidate(
    config: &ReportConfig,
    group: &EigenvalueGroup,
    warnings: &mut Vec<String>,
) -> Result<(CandidateVerdict, Option<SweepReport>)> {
    let k = group.k_min;
    let best_product = group.modes.iter().max_by_key(|t| product_nodal_count(t)).copied();
    if let Some(t) = group.modes.iter().find(|t| product_nodal_count(t) == k) {
        let numeric = count_nodal_domains(&EigenCombo::pure(*t), WITNESS_RESOLUTION)?;
        if numeric.total as u64 != k || !numeric.converged {
            warnings.push(format!("numerical count of witness {t} is {} (expected {k})", numeric.total));
        }
        let domains = if k == 1 { "1 nodal domain".to_string() } else { format!("{k} nodal domains") };
        return Ok((
            CandidateVerdict {
                k,
                value: group.value,
                status: CandidateStatus::CourantSharp,
                method: format!("product mode {t} has {domains}"),
                max_domains: k as usize,
                witness: Some(*t),
            },
            None,
        ));
    }

    let sweep = SweepReport::build(config, group)?;
    warnings.extend(sweep.warnings());
    let max_sampled = sweep.result.max_total();
    let max_product = best_product.map(|t| product_nodal_count(&t) as usize).unwrap_or(0);
    let max_domains = max_sampled.max(max_product);
    let predicted_max = sweep
        .result
        .samples
        .iter()
        .filter_map(|s| s.prediction.as_ref().map(|p| p.count as usize))
        .max();

    let (status, method) = if max_domains as u64 >= k {
        (CandidateStatus::CourantSharp, format!("sampled eigenfunction with {max_domains} nodal domains"))
    } else if let Some(pmax) = predicted_max {
        let agrees = sweep.predictor_agreed == sweep.predictor_checked && pmax < k as usize;
        if agrees {
            (
                CandidateStatus::NotCourantSharp,
                format!(
                    "quadric analysis and sweep: at most {} nodal domains (< {k}), predictor agreement {}/{}",
                    pmax.max(max_sampled),
                    sweep.predictor_agreed,
                    sweep.predictor_checked
                ),
            )
        } else {
            (CandidateStatus::Undecided, "sweep and quadric predictor disagree".to_string())
        }
    } else {
        warnings.push(format!("no exact analysis available for λ = {}", format_value(group.value)));
        (CandidateStatus::Undecided, format!("sweep found at most {max_domains} nodal domains"))
    };
    Ok((CandidateVerdict { k, value: group.value, status, method, max_domains, witness: None }, Some(sweep)))
}

pub fn cmd_verdict(config: &ReportConfig) -> Result<Output> {
    let report = VerdictReport::build(config)?;
    Ok(Output { text: report.render(config.format), warnings: report.warnings.clone() })
}

// ---------------------------------------------------------------------------
// nodal

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodalReport {
    pub schema: u32,
    pub command: String,
    pub value: f64,
    pub modes: Vec<ModeTriple>,
    pub coeffs: Vec<f64>,
    #[serde(flatten)]
    pub count: NodalCount,
}

pub fn cmd_nodal(
    config: &ReportConfig,
    modes: &[ModeTriple],
    coeffs: &[f64],
    resolution: usize,
) -> Result<Output> {
    let combo = EigenCombo::from_modes(&config.bx, modes, coeffs)?;
    let count = crate::nodal::count_nodal_domains_with(
        &combo,
        resolution,
        &NodalConfig { max_resolution: config.max_resolution },
    )?;
    let report = NodalReport {
        schema: SCHEMA_VERSION,
        command: "nodal".into(),
        value: combo.group().value,
        modes: modes.to_vec(),
        coeffs: coeffs.to_vec(),
        count,
    };
    let warnings = if count.converged {
        Vec::new()
    } else {
        vec![format!("count did not converge up to resolution {}", count.resolution_used)]
    };
    Ok(Output { text: to_json(&report), warnings })
}
