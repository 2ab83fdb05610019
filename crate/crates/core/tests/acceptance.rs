//! Acceptance criteria, one pass/fail line each.
//!
//! Runs without the libtest harness so every line is printed even when an
//! earlier criterion fails. Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::Normal;

use courant_cube::bounds::{lattice_lower_bound, pleijel_cutoff};
use courant_cube::cli::{cmd_table, ReportConfig, ScreenReport, TableReport, PREDICTOR_MARGIN};
use courant_cube::nodal::{count_nodal_domains, count_nodal_domains_with, sweep_eigenspace, EigenCombo, NodalConfig, SweepConfig};
use courant_cube::spectrum::{enumerate_groups, find_group, BoxSpec, ModeTriple};
use courant_cube::symmetry::{symmetric_index, symmetry_excludes, Parity};

const GOLDEN_TABLE: &str = include_str!("golden/table_48.md");

const TABLE_GROUPS: usize = 31;
const TABLE_LIMIT: Duration = Duration::from_secs(1);
const CANDIDATES: [u64; 5] = [1, 2, 5, 8, 12];
const MU_ROOT: f64 = 6.97836;
const MU_TOL: f64 = 1e-4;
const LAMBDA_CUTOFF: f64 = 48.7;
const LAMBDA_TOL: f64 = 0.05;
const LEMMA_SAMPLES: usize = 200;
const LEMMA_LIMIT: Duration = Duration::from_secs(1);
const FIGURE_RESOLUTION: usize = 128;
const FIGURE_LIMIT: Duration = Duration::from_secs(10);
const SWEEP_SAMPLES: usize = 500;
const SWEEP_LIMIT: Duration = Duration::from_secs(600);
const PRODUCT_RESOLUTION: usize = 32;
const PRODUCT_LIMIT: Duration = Duration::from_secs(30);
const COURANT_SAMPLES: usize = 50;
const COURANT_RESOLUTION: usize = 32;
const COURANT_MAX_RESOLUTION: usize = 256;
const SMALL_VALUE: f64 = 27.0;

type Check = Result<String, String>;

fn brute_force_count(lambda: f64) -> u64 {
    let top = lambda.sqrt().ceil() as u64;
    let mut count = 0;
    for l in 1..=top {
        for m in 1..=top {
            for n in 1..=top {
                if ((l * l + m * m + n * n) as f64) < lambda {
                    count += 1;
                }
            }
        }
    }
    count
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()))
    }
}

fn table_reproduction() -> Check {
    let config = ReportConfig::default();
    let start = Instant::now();
    let output = cmd_table(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let report = TableReport::build(&config).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    if report.rows.len() != TABLE_GROUPS {
        problems.push(format!("{} distinct eigenvalues <= 48, expected {TABLE_GROUPS}", report.rows.len()));
    }
    if output.text != GOLDEN_TABLE {
        problems.push("rows differ from the reference table".into());
    }
    let first = report.rows.first().map(|r| (r.value, r.k_min));
    let last = report.rows.last().map(|r| (r.value, r.k_max));
    if first != Some((3.0, 1)) || last != Some((48.0, 121)) {
        problems.push(format!("first {first:?}, last {last:?}"));
    }
    let nine: Vec<(f64, u64, u64)> =
        report.rows.iter().filter(|r| r.multiplicity == 9).map(|r| (r.value, r.k_min, r.k_max)).collect();
    if nine != [(38.0, 79, 87), (41.0, 88, 96)] {
        problems.push(format!("multiplicity-9 rows {nine:?}"));
    }
    if let Err(e) = within(elapsed, TABLE_LIMIT) {
        problems.push(e);
    }
    if problems.is_empty() {
        Ok(format!("{} rows, k 1..121", report.rows.len()))
    } else {
        Err(problems.join("; "))
    }
}

fn screening() -> Check {
    let report = ScreenReport::build(&ReportConfig::default()).map_err(|e| e.to_string())?;
    if report.candidates == CANDIDATES {
        Ok(format!("candidates {:?}", report.candidates))
    } else {
        Err(format!("candidates {:?}, expected {CANDIDATES:?}", report.candidates))
    }
}

fn cutoff_constants() -> Check {
    let c = pleijel_cutoff().map_err(|e| e.to_string())?;
    let detail = format!("mu {:.6}, lambda {:.4}", c.mu_root, c.lambda_cutoff);
    if (c.mu_root - MU_ROOT).abs() <= MU_TOL && (c.lambda_cutoff - LAMBDA_CUTOFF).abs() <= LAMBDA_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lattice_lemma() -> Check {
    let start = Instant::now();
    let mut violations = Vec::new();
    for i in 0..LEMMA_SAMPLES {
        let lambda = 3.0 + 197.0 * (i as f64 + 0.5) / LEMMA_SAMPLES as f64;
        if lambda.fract() == 0.0 {
            return Err(format!("sample {lambda} is an integer"));
        }
        let bound = lattice_lower_bound(lambda).map_err(|e| e.to_string())?;
        if brute_force_count(lambda) as f64 <= bound {
            violations.push(lambda);
        }
    }
    within(start.elapsed(), LEMMA_LIMIT)?;
    if violations.is_empty() {
        Ok(format!("{LEMMA_SAMPLES} samples in [3, 200], 0 violations"))
    } else {
        Err(format!("violations at {violations:?}"))
    }
}

fn symmetry_exclusions() -> Check {
    let mut seen = Vec::new();
    for (value, parity, j, bound) in [(9.0, Parity::Even, 2, 4), (14.0, Parity::Odd, 5, 10)] {
        let s = symmetric_index(&BoxSpec::CUBE, value, parity).map_err(|e| e.to_string())?;
        let excluded = symmetry_excludes(&BoxSpec::CUBE, &s.group);
        let got = (s.parity, s.j, s.bound, excluded);
        if got != (parity, j, bound, true) {
            return Err(format!("λ={value}: {got:?}"));
        }
        seen.push(format!("λ={value} {parity} j={j} bound {bound}"));
    }
    Ok(seen.join(", "))
}

fn figure_cases() -> Check {
    let cases: [([f64; 3], usize); 12] = [
        ([1.0, 1.0, 0.0], 2),
        ([1.0, -1.0, 0.0], 4),
        ([1.0, 0.0, 0.0], 3),
        ([0.2, 0.2, -0.4], 3),
        ([0.3, 0.3, 0.4], 2),
        ([0.2, 0.2, 0.6], 2),
        ([0.1, 0.1, 0.8], 3),
        ([0.2, 0.9, -0.1], 3),
        ([0.5, 0.6, -0.1], 2),
        ([0.5, 0.8, -0.3], 2),
        ([0.8, 0.8, -0.6], 2),
        ([0.8, 0.8, -2.6], 3),
    ];
    let mut slowest = Duration::ZERO;
    for ([a, b, c], expected) in cases {
        let combo = EigenCombo::phi(a, b, c).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let count = count_nodal_domains(&combo, FIGURE_RESOLUTION).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        within(elapsed, FIGURE_LIMIT).map_err(|e| format!("({a},{b},{c}): {e}"))?;
        slowest = slowest.max(elapsed);
        if !count.converged || count.total != expected {
            return Err(format!(
                "({a},{b},{c}): {} domains at {}, converged {}, expected {expected}",
                count.total, count.resolution_used, count.converged
            ));
        }
    }
    Ok(format!("12 cases, slowest {:.2} s", slowest.as_secs_f64()))
}

fn lambda_11_sweep() -> Check {
    let config = ReportConfig::default();
    let group = find_group(&BoxSpec::CUBE, 11.0).map_err(|e| e.to_string())?;
    let sweep = SweepConfig {
        samples: SWEEP_SAMPLES,
        resolution: config.resolution,
        seed: config.seed,
        nodal: NodalConfig { max_resolution: config.max_resolution },
    };
    let start = Instant::now();
    let result = sweep_eigenspace(&group, &sweep).map_err(|e| e.to_string())?;
    within(start.elapsed(), SWEEP_LIMIT)?;
    let outside: Vec<usize> = result.histogram.keys().copied().filter(|k| !(2..=4).contains(k)).collect();
    let (checked, agreed) = result.predictor_agreement(PREDICTOR_MARGIN);
    let detail = format!("histogram {:?}, predictor {agreed}/{checked}", result.histogram);
    if outside.is_empty() && checked > 0 && checked == agreed {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn product_modes() -> Check {
    let start = Instant::now();
    let groups = enumerate_groups(&BoxSpec::CUBE, SMALL_VALUE).map_err(|e| e.to_string())?;
    let triples: Vec<ModeTriple> = groups.iter().flat_map(|g| g.modes.iter().copied()).collect();
    let unordered: BTreeSet<ModeTriple> = triples.iter().map(|t| t.sorted()).collect();
    for t in &triples {
        let count = count_nodal_domains(&EigenCombo::pure(*t), PRODUCT_RESOLUTION).map_err(|e| e.to_string())?;
        let expected = (t.l * t.m * t.n) as usize;
        if count.total != expected {
            return Err(format!("{t}: {} domains, expected {expected}", count.total));
        }
    }
    within(start.elapsed(), PRODUCT_LIMIT)?;
    Ok(format!("{} ordered triples ({} up to permutation) count lmn", triples.len(), unordered.len()))
}

fn courant_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let normal = Normal::new(0.0, 1.0).map_err(|e| e.to_string())?;
    let config = NodalConfig { max_resolution: COURANT_MAX_RESOLUTION };
    let groups = enumerate_groups(&BoxSpec::CUBE, SMALL_VALUE).map_err(|e| e.to_string())?;
    let mut violations = Vec::new();
    let mut evaluated = 0;
    for g in &groups {
        for _ in 0..COURANT_SAMPLES {
            let coeffs: Vec<f64> = (0..g.multiplicity()).map(|_| rand::Rng::sample(&mut rng, normal)).collect();
            let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
            let coeffs = coeffs.into_iter().map(|c| c / norm).collect();
            let combo = EigenCombo::new(g.clone(), coeffs).map_err(|e| e.to_string())?;
            let count = count_nodal_domains_with(&combo, COURANT_RESOLUTION, &config).map_err(|e| e.to_string())?;
            evaluated += 1;
            if count.total as u64 > g.k_max {
                violations.push(format!("λ={} total {} > {}", g.value, count.total, g.k_max));
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("{evaluated} combos over {} eigenvalues, 0 violations", groups.len()))
    } else {
        Err(violations.join("; "))
    }
}

fn end_to_end_verdict() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_courant-cube"))
        .arg("verdict")
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().find(|l| l.starts_with("Courant sharp:")).unwrap_or("").to_string();
    if out.status.code() == Some(0) && line == "Courant sharp: k=1 (λ=3), k=2 (λ=6)" {
        Ok(line)
    } else {
        Err(format!("exit {:?}, verdict {line:?}", out.status.code()))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("table reproduction", table_reproduction),
        ("screening candidates", screening),
        ("cutoff constants", cutoff_constants),
        ("lattice lower bound", lattice_lemma),
        ("symmetry exclusions", symmetry_exclusions),
        ("figure nodal counts", figure_cases),
        ("lambda 11 sweep", lambda_11_sweep),
        ("product-mode oracle", product_modes),
        ("Courant property", courant_property),
        ("end-to-end verdict", end_to_end_verdict),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {:>2} {name} ({secs:.2} s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name} ({secs:.2} s): {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
