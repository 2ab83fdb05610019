//! Numerical nodal-domain counting.
//!
//! An eigenfunction is sampled on the interior lattice `(iπ/n, jπ/n, kπ/n)`,
//! `1 ≤ i, j, k ≤ n−1`. Positive and negative samples are grouped into face-connected
//! (6-neighbour) components; samples that are zero belong to no component. Labeling runs
//! a union-find over maximal same-sign runs along `x`, so the forest holds a few nodes per
//! lattice row instead of one per sample.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quadric::{predict_components, reduce_to_quadric, subcase_margin, ComponentPrediction};
use crate::sampling::SphereSequence;
use crate::spectrum::{find_group, BoxSpec, EigenvalueGroup, ModeTriple};
use crate::symmetry::antipodal_sign;

pub const MIN_SAMPLE_RESOLUTION: usize = 8;
pub const MIN_DRIVER_RESOLUTION: usize = 16;
pub const DEFAULT_MAX_RESOLUTION: usize = 512;

/// Samples with `|u| ≤ ZERO_SNAP · Σ|c_t|` are stored as exact zeros. This only absorbs
/// floating-point cancellation on nodal sets that pass through lattice points.
pub const ZERO_SNAP: f64 = 1e-12;

/// A real combination of the modes of one eigenvalue group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenCombo {
    group: EigenvalueGroup,
    coeffs: Vec<f64>,
}

impl EigenCombo {
    /// `coeffs[t]` multiplies `group.modes[t]`.
    pub fn new(group: EigenvalueGroup, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != group.multiplicity() {
            return invalid(format!(
                "{} coefficients for an eigenspace of dimension {}",
                coeffs.len(),
                group.multiplicity()
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return invalid("coefficients must be finite");
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return invalid("coefficients are all zero");
        }
        Ok(EigenCombo { group, coeffs })
    }

    /// A combination given on any subset of modes sharing one eigenvalue of `bx`, in any
    /// order; the missing modes get coefficient zero.
    pub fn from_modes(bx: &BoxSpec, modes: &[ModeTriple], coeffs: &[f64]) -> Result<Self> {
        if modes.is_empty() || modes.len() != coeffs.len() {
            return invalid(format!("{} modes but {} coefficients", modes.len(), coeffs.len()));
        }
        let value = modes[0].eigenvalue_in(bx);
        if let Some(t) = modes.iter().find(|t| t.eigenvalue_in(bx) != value) {
            return invalid(format!("mode {t} does not have eigenvalue {value}"));
        }
        let group = find_group(bx, value)?;
        let mut full = vec![0.0; group.multiplicity()];
        for (t, c) in modes.iter().zip(coeffs) {
            let pos = group.position_of(t).expect("mode belongs to its own group");
            full[pos] += c;
        }
        EigenCombo::new(group, full)
    }

    /// The single product mode `sin(ℓx) sin(my) sin(nz)` inside its cube eigenspace.
    pub fn pure(t: ModeTriple) -> Self {
        EigenCombo::from_modes(&BoxSpec::CUBE, &[t], &[1.0]).expect("a mode is a valid combination")
    }

    /// `Φ_{a,b,c} = a sin x sin y sin 3z + b sin y sin z sin 3x + c sin z sin x sin 3y`.
    pub fn phi(a: f64, b: f64, c: f64) -> Result<Self> {
        let modes = [ModeTriple { l: 1, m: 1, n: 3 }, ModeTriple { l: 3, m: 1, n: 1 }, ModeTriple { l: 1, m: 3, n: 1 }];
        EigenCombo::from_modes(&BoxSpec::CUBE, &modes, &[a, b, c])
    }

    pub fn group(&self) -> &EigenvalueGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `(a, b, c)` if this is an eigenfunction `Φ_{a,b,c}` of the cube's `λ = 11` space.
    pub fn phi_coefficients(&self) -> Option<[f64; 3]> {
        let m = &self.group.modes;
        let is_eleven = m.len() == 3
            && m[0] == ModeTriple { l: 1, m: 1, n: 3 }
            && m[1] == ModeTriple { l: 1, m: 3, n: 1 }
            && m[2] == ModeTriple { l: 3, m: 1, n: 1 };
        is_eleven.then(|| [self.coeffs[0], self.coeffs[2], self.coeffs[1]])
    }

    pub fn prediction(&self) -> Option<ComponentPrediction> {
        let [a, b, c] = self.phi_coefficients()?;
        reduce_to_quadric(a, b, c).ok().map(|q| predict_components(&q))
    }

    pub fn negated(&self) -> Self {
        EigenCombo { group: self.group.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// `u ∘ g` for the antipodal map `g(x, y, z) = (π−x, π−y, π−z)`.
    pub fn antipodal(&self) -> Self {
        let coeffs = self.group.modes.iter().zip(&self.coeffs).map(|(t, c)| antipodal_sign(t) * c).collect();
        EigenCombo { group: self.group.clone(), coeffs }
    }

    pub fn value_at(&self, x: f64, y: f64, z: f64) -> f64 {
        self.group
            .modes
            .iter()
            .zip(&self.coeffs)
            .map(|(t, c)| c * (t.l as f64 * x).sin() * (t.m as f64 * y).sin() * (t.n as f64 * z).sin())
            .sum()
    }
}

/// `sin(π p / n)`, reduced to the first quadrant so that lattice zeros are exact and
/// `sin(ℓ(π − x)) = ±sin(ℓx)` holds bit for bit.
pub fn sin_pi_ratio(p: u64, n: u64) -> f64 {
    let mut r = p % (2 * n);
    let mut sign = 1.0;
    if r >= n {
        r -= n;
        sign = -1.0;
    }
    if 2 * r > n {
        r = n - r;
    }
    if r == 0 {
        return 0.0;
    }
    sign * (PI * r as f64 / n as f64).sin()
}

/// Samples of a field on the interior lattice of `(0, π)³`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarGrid {
    n: usize,
    /// `(n−1)³` values, `x` fastest: entry `(i, j, k)` sits at `((k−1)(n−1) + j−1)(n−1) + i−1`.
    values: Vec<f64>,
}

impl ScalarGrid {
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        if n < 2 || values.len() != (n - 1).pow(3) {
            return invalid(format!("{} values do not fill a grid of resolution {n}", values.len()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return invalid("grid values must be finite");
        }
        Ok(ScalarGrid { n, values })
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at lattice point `(iπ/n, jπ/n, kπ/n)`, indices in `1..n`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        let m = self.n - 1;
        assert!((1..=m).contains(&i) && (1..=m).contains(&j) && (1..=m).contains(&k));
        self.values[((k - 1) * m + (j - 1)) * m + (i - 1)]
    }
}

pub fn sample_field(combo: &EigenCombo, n: usize) -> Result<ScalarGrid> {
    if n < MIN_SAMPLE_RESOLUTION {
        return invalid(format!("resolution {n} is below {MIN_SAMPLE_RESOLUTION}"));
    }
    let m = n - 1;
    let table = |freq: u32| -> Vec<f64> { (1..=m).map(|i| sin_pi_ratio(freq as u64 * i as u64, n as u64)).collect() };
    let terms: Vec<(f64, Vec<f64>, Vec<f64>, Vec<f64>)> = combo
        .group
        .modes
        .iter()
        .zip(&combo.coeffs)
        .filter(|(_, &c)| c != 0.0)
        .map(|(t, &c)| (c, table(t.l), table(t.m), table(t.n)))
        .collect();
    let snap = ZERO_SNAP * combo.coeffs.iter().map(|c| c.abs()).sum::<f64>();

    let mut values = vec![0.0; m * m * m];
    let mut weights = vec![0.0; terms.len()];
    for (row_idx, row) in values.chunks_exact_mut(m).enumerate() {
        let (j, k) = (row_idx % m, row_idx / m);
        for (w, (c, _, sy, sz)) in weights.iter_mut().zip(&terms) {
            *w = c * sy[j] * sz[k];
        }
        for (i, out) in row.iter_mut().enumerate() {
            let v: f64 = weights.iter().zip(&terms).map(|(w, (_, sx, _, _))| w * sx[i]).sum();
            *out = if v.abs() <= snap { 0.0 } else { v };
        }
    }
    Ok(ScalarGrid { n, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodalCount {
    pub positive_components: usize,
    pub negative_components: usize,
    pub total: usize,
    pub zero_samples: usize,
    pub resolution_used: usize,
    pub converged: bool,
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Default)]
struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    fn make(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.size.push(1);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Maximal run of same-sign samples along one lattice row, inclusive bounds.
#[derive(Clone, Copy)]
struct Run {
    start: u32,
    end: u32,
    positive: bool,
    id: u32,
}

fn collect_runs(row: &[f64], sets: &mut DisjointSets, signs: &mut Vec<bool>, out: &mut Vec<Run>) {
    out.clear();
    let mut i = 0;
    while i < row.len() {
        let v = row[i];
        if v == 0.0 {
            i += 1;
            continue;
        }
        let positive = v > 0.0;
        let start = i;
        while i < row.len() && row[i] != 0.0 && (row[i] > 0.0) == positive {
            i += 1;
        }
        let id = sets.make();
        signs.push(positive);
        out.push(Run { start: start as u32, end: (i - 1) as u32, positive, id });
    }
}

/// Union same-sign runs of two face-adjacent rows that share an `x` index.
fn join_rows(a: &[Run], b: &[Run], sets: &mut DisjointSets) {
    let (mut p, mut q) = (0, 0);
    while p < a.len() && q < b.len() {
        let (ra, rb) = (a[p], b[q]);
        if ra.start <= rb.end && rb.start <= ra.end && ra.positive == rb.positive {
            sets.union(ra.id, rb.id);
        }
        if ra.end < rb.end {
            p += 1;
        } else {
            q += 1;
        }
    }
}

/// Face-connected components of the positive and negative samples. `converged` is left
/// false; [`count_nodal_domains`] decides it.
pub fn count_components(grid: &ScalarGrid) -> NodalCount {
    let m = grid.n - 1;
    let mut sets = DisjointSets::default();
    let mut signs: Vec<bool> = Vec::new();
    let mut prev_slice: Vec<Vec<Run>> = vec![Vec::new(); m];
    let mut cur_slice: Vec<Vec<Run>> = vec![Vec::new(); m];

    for k in 0..m {
        for j in 0..m {
            let row = &grid.values[(k * m + j) * m..][..m];
            let mut runs = std::mem::take(&mut cur_slice[j]);
            collect_runs(row, &mut sets, &mut signs, &mut runs);
            if j > 0 {
                join_rows(&runs, &cur_slice[j - 1], &mut sets);
            }
            if k > 0 {
                join_rows(&runs, &prev_slice[j], &mut sets);
            }
            cur_slice[j] = runs;
        }
        std::mem::swap(&mut prev_slice, &mut cur_slice);
    }

    let (mut positive, mut negative) = (0, 0);
    for id in 0..signs.len() as u32 {
        if sets.find(id) == id {
            if signs[id as usize] {
                positive += 1;
            } else {
                negative += 1;
            }
        }
    }
    NodalCount {
        positive_components: positive,
        negative_components: negative,
        total: positive + negative,
        zero_samples: grid.values.iter().filter(|v| **v == 0.0).count(),
        resolution_used: grid.n,
        converged: false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodalConfig {
    /// Largest resolution the doubling driver may reach.
    pub max_resolution: usize,
}

impl Default for NodalConfig {
    fn default() -> Self {
        NodalConfig { max_resolution: DEFAULT_MAX_RESOLUTION }
    }
}

pub fn count_nodal_domains(combo: &EigenCombo, n0: usize) -> Result<NodalCount> {
    count_nodal_domains_with(combo, n0, &NodalConfig::default())
}

/// Counts at `n0`, `2n0`, `4n0`, ... until two consecutive totals agree (converged) or the
/// next doubling would pass `config.max_resolution` (not converged, last count returned).
pub fn count_nodal_domains_with(combo: &EigenCombo, n0: usize, config: &NodalConfig) -> Result<NodalCount> {
    if n0 < MIN_DRIVER_RESOLUTION {
        return invalid(format!("starting resolution {n0} is below {MIN_DRIVER_RESOLUTION}"));
    }
    if 2 * n0 > config.max_resolution {
        return invalid(format!(
            "resolution cap {} leaves no room to double {n0}",
            config.max_resolution
        ));
    }
    let mut n = n0;
    let mut last = count_components(&sample_field(combo, n)?);
    while 2 * n <= config.max_resolution {
        n *= 2;
        let next = count_components(&sample_field(combo, n)?);
        let agree = next.total == last.total;
        last = next;
        if agree {
            last.converged = true;
            return Ok(last);
        }
    }
    Ok(last)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    pub index: usize,
    pub coeffs: Vec<f64>,
    pub count: NodalCount,
    /// Quadric prediction, for the cube's `λ = 11` eigenspace only.
    pub prediction: Option<ComponentPrediction>,
    /// Distance to the nearest predictor subcase boundary (same condition).
    pub margin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub value: f64,
    /// Total domain count → number of samples.
    pub histogram: BTreeMap<usize, usize>,
    pub samples: Vec<SweepSample>,
}

impl SweepResult {
    pub fn non_converged(&self) -> impl Iterator<Item = &SweepSample> {
        self.samples.iter().filter(|s| !s.count.converged)
    }

    pub fn max_total(&self) -> usize {
        self.samples.iter().map(|s| s.count.total).max().unwrap_or(0)
    }

    /// Samples farther than `min_margin` from every subcase boundary, and how many of
    /// them the quadric predictor gets right.
    pub fn predictor_agreement(&self, min_margin: f64) -> (usize, usize) {
        let checked: Vec<&SweepSample> =
            self.samples.iter().filter(|s| s.margin.is_some_and(|m| m > min_margin)).collect();
        let agreed = checked
            .iter()
            .filter(|s| s.prediction.as_ref().is_some_and(|p| p.count as usize == s.count.total))
            .count();
        (checked.len(), agreed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub samples: usize,
    pub resolution: usize,
    pub seed: u64,
    pub nodal: NodalConfig,
}

/// Counts nodal domains for `samples` coefficient vectors spread over the unit sphere of
/// the eigenspace. Samples are independent and evaluated in parallel; the output is in
/// sample order and identical for identical inputs.
pub fn sweep_eigenspace(group: &EigenvalueGroup, config: &SweepConfig) -> Result<SweepResult> {
    if config.samples == 0 {
        return invalid("a sweep needs at least one sample");
    }
    if group.multiplicity() == 0 {
        return invalid("empty eigenspace");
    }
    let seq = SphereSequence::new(group.multiplicity(), config.seed);
    let samples = (0..config.samples)
        .into_par_iter()
        .map(|index| {
            let coeffs = seq.point(index as u64);
            let combo = EigenCombo::new(group.clone(), coeffs.clone())?;
            let count = count_nodal_domains_with(&combo, config.resolution, &config.nodal)?;
            let quadric = combo.phi_coefficients().and_then(|[a, b, c]| reduce_to_quadric(a, b, c).ok());
            Ok(SweepSample {
                index,
                coeffs,
                count,
                prediction: quadric.as_ref().map(predict_components),
                margin: quadric.as_ref().map(subcase_margin),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut histogram = BTreeMap::new();
    for s in &samples {
        *histogram.entry(s.count.total).or_insert(0) += 1;
    }
    Ok(SweepResult { value: group.value, histogram, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn mt(l: u32, m: u32, n: u32) -> ModeTriple {
        ModeTriple::new(l, m, n).unwrap()
    }

    #[test]
    fn sine_table_is_exact_on_lattice_zeros() {
        assert_eq!(sin_pi_ratio(0, 16), 0.0);
        assert_eq!(sin_pi_ratio(16, 16), 0.0);
        assert_eq!(sin_pi_ratio(32, 16), 0.0);
        assert_eq!(sin_pi_ratio(8, 16), 1.0);
        assert_eq!(sin_pi_ratio(24, 16), -1.0);
        assert_eq!(sin_pi_ratio(3, 16), sin_pi_ratio(13, 16));
        for p in 0..64u64 {
            assert!((sin_pi_ratio(p, 16) - (PI * p as f64 / 16.0).sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn ground_state_is_positive() {
        let g = sample_field(&EigenCombo::pure(mt(1, 1, 1)), 16).unwrap();
        assert!(g.values().iter().all(|v| *v > 0.0));
        assert_eq!(g.values().len(), 15 * 15 * 15);
    }

    #[test]
    fn nodal_plane_samples_are_zero() {
        let g = sample_field(&EigenCombo::pure(mt(1, 1, 2)), 16).unwrap();
        for i in 1..16 {
            for j in 1..16 {
                assert_eq!(g.get(i, j, 8), 0.0);
            }
        }
    }

    #[test]
    fn phi_111_at_centre() {
        let combo = EigenCombo::phi(1.0, 1.0, 1.0).unwrap();
        let g = sample_field(&combo, 16).unwrap();
        assert_eq!(g.get(8, 8, 8), -3.0);
        assert!((combo.value_at(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2) + 3.0).abs() < 1e-12);
    }

    #[test]
    fn sampled_values_match_direct_evaluation() {
        let combo = EigenCombo::phi(0.2, 0.9, -0.1).unwrap();
        let n = 20;
        let g = sample_field(&combo, n).unwrap();
        for (i, j, k) in [(1, 2, 3), (5, 17, 9), (19, 19, 1), (10, 10, 10)] {
            let h = PI / n as f64;
            let direct = crate::quadric::phi([0.2, 0.9, -0.1], i as f64 * h, j as f64 * h, k as f64 * h);
            assert!((g.get(i, j, k) - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_coarse_grids_and_bad_combos() {
        let combo = EigenCombo::pure(mt(1, 1, 1));
        assert!(sample_field(&combo, 7).is_err());
        assert!(count_nodal_domains(&combo, 8).is_err());
        let g = find_group(&BoxSpec::CUBE, 6.0).unwrap();
        assert!(EigenCombo::new(g.clone(), vec![0.0; 3]).is_err());
        assert!(EigenCombo::new(g, vec![1.0; 2]).is_err());
        assert!(EigenCombo::from_modes(&BoxSpec::CUBE, &[mt(1, 1, 2), mt(1, 1, 1)], &[1.0, 1.0]).is_err());
        assert!(ScalarGrid::from_values(4, vec![0.0; 10]).is_err());
    }

    #[test]
    fn small_counts() {
        let c = count_components(&sample_field(&EigenCombo::pure(mt(1, 1, 1)), 32).unwrap());
        assert_eq!((c.positive_components, c.negative_components, c.total), (1, 0, 1));
        assert!(!c.converged);
        let c = count_components(&sample_field(&EigenCombo::pure(mt(2, 3, 4)), 64).unwrap());
        assert_eq!(c.total, 24);
        assert_eq!(c.positive_components, 12);
    }

    #[test]
    fn crossed_planes_give_four() {
        let c = count_components(&sample_field(&EigenCombo::phi(1.0, -1.0, 0.0).unwrap(), 128).unwrap());
        assert_eq!(c.total, 4);
        assert!(c.zero_samples > 0);
    }

    #[test]
    fn handmade_grid_components() {
        // two positive blobs separated by a zero wall, a negative blob touching one diagonally
        let n = 5;
        let m = n - 1;
        let mut v = vec![0.0; m * m * m];
        let idx = |i: usize, j: usize, k: usize| (k * m + j) * m + i;
        v[idx(0, 0, 0)] = 1.0;
        v[idx(1, 0, 0)] = 1.0;
        v[idx(3, 0, 0)] = 2.0;
        v[idx(2, 1, 0)] = -1.0;
        v[idx(3, 3, 3)] = -1.0;
        let c = count_components(&ScalarGrid::from_values(n, v).unwrap());
        assert_eq!((c.positive_components, c.negative_components), (2, 2));
        assert_eq!(c.zero_samples, 64 - 5);
    }

    #[test]
    fn driver_converges_on_ground_state() {
        let c = count_nodal_domains(&EigenCombo::pure(mt(1, 1, 1)), 16).unwrap();
        assert!(c.converged);
        assert_eq!(c.resolution_used, 32);
        assert_eq!(c.total, 1);
    }

    #[test]
    fn driver_rejects_cap_without_room() {
        let cfg = NodalConfig { max_resolution: 31 };
        assert!(count_nodal_domains_with(&EigenCombo::pure(mt(1, 1, 1)), 16, &cfg).is_err());
    }

    #[test]
    fn phi_coefficients_round_trip() {
        let combo = EigenCombo::phi(0.1, 0.2, 0.3).unwrap();
        assert_eq!(combo.coeffs(), &[0.1, 0.3, 0.2]);
        assert_eq!(combo.phi_coefficients(), Some([0.1, 0.2, 0.3]));
        assert_eq!(EigenCombo::pure(mt(1, 1, 2)).phi_coefficients(), None);
    }

    #[test]
    fn single_sample_sweep_of_ground_state() {
        let g = find_group(&BoxSpec::CUBE, 3.0).unwrap();
        let cfg = SweepConfig { samples: 1, resolution: 16, seed: 0, nodal: NodalConfig::default() };
        let r = sweep_eigenspace(&g, &cfg).unwrap();
        assert_eq!(r.histogram, BTreeMap::from([(1, 1)]));
        assert!(r.samples[0].prediction.is_none());
    }
}
