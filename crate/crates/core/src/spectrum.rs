//! Dirichlet modes and eigenvalues of the cube and of rectangular boxes.
//!
//! On `(0, π)³` the eigenfunctions `sin(ℓx) sin(my) sin(nz)` have eigenvalue `ℓ² + m² + n²`.
//! A box with side lengths `(aπ, bπ, cπ)` is described by the weights `(1/a², 1/b², 1/c²)`
//! so that its eigenvalues are `α ℓ² + β m² + γ n²`.
//!
//! Eigenvalues are kept as `f64`. For the cube every value is an integer far below 2⁵³,
//! so sums and comparisons are exact; for general boxes two modes share an eigenvalue
//! only when the weighted sums are bit-for-bit equal (no epsilon), which makes
//! "irrational" boxes come out with simple eigenvalues.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A Dirichlet mode `(ℓ, m, n)` with all entries ≥ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeTriple {
    pub l: u32,
    pub m: u32,
    pub n: u32,
}

impl ModeTriple {
    pub fn new(l: u32, m: u32, n: u32) -> Result<Self> {
        if l == 0 || m == 0 || n == 0 {
            return invalid(format!("mode ({l},{m},{n}) must have positive entries"));
        }
        Ok(Self { l, m, n })
    }

    /// Eigenvalue on the cube, `ℓ² + m² + n²`.
    pub fn eigenvalue(&self) -> u64 {
        let (l, m, n) = (self.l as u64, self.m as u64, self.n as u64);
        l * l + m * m + n * n
    }

    /// Eigenvalue on a general box, `α ℓ² + β m² + γ n²`.
    pub fn eigenvalue_in(&self, bx: &BoxSpec) -> f64 {
        let (l, m, n) = (self.l as f64, self.m as f64, self.n as f64);
        bx.alpha * (l * l) + bx.beta * (m * m) + bx.gamma * (n * n)
    }

    /// The permutation of this triple sorted ascending, e.g. `(3,1,2) -> (1,2,3)`.
    pub fn sorted(&self) -> ModeTriple {
        let mut v = [self.l, self.m, self.n];
        v.sort_unstable();
        ModeTriple { l: v[0], m: v[1], n: v[2] }
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.l, self.m, self.n]
    }
}

impl fmt::Display for ModeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.m, self.n)
    }
}

impl FromStr for ModeTriple {
    type Err = Error;

    /// Parses `l,m,n`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return invalid(format!("expected a triple l,m,n, got {s:?}"));
        }
        let mut v = [0u32; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad mode number {p:?} in {s:?}")))?;
        }
        ModeTriple::new(v[0], v[1], v[2])
    }
}

/// Eigenvalue weights of a box; the cube is `(1, 1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxSpec {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl BoxSpec {
    pub const CUBE: BoxSpec = BoxSpec { alpha: 1.0, beta: 1.0, gamma: 1.0 };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let bx = BoxSpec { alpha, beta, gamma };
        bx.validate()?;
        Ok(bx)
    }

    pub fn validate(&self) -> Result<()> {
        for w in [self.alpha, self.beta, self.gamma] {
            if !(w.is_finite() && w > 0.0) {
                return invalid(format!("box weights must be positive and finite, got {self:?}"));
            }
        }
        Ok(())
    }

    pub fn is_cube(&self) -> bool {
        *self == Self::CUBE
    }

    /// The ground-state eigenvalue `α + β + γ`.
    pub fn ground_state(&self) -> f64 {
        ModeTriple { l: 1, m: 1, n: 1 }.eigenvalue_in(self)
    }
}

impl Default for BoxSpec {
    fn default() -> Self {
        Self::CUBE
    }
}

impl FromStr for BoxSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidInput(format!("bad box weights {s:?}")))?;
        match parts[..] {
            [a, b, c] => BoxSpec::new(a, b, c),
            _ => invalid(format!("expected three box weights a,b,c, got {s:?}")),
        }
    }
}

/// One distinct eigenvalue with all of its modes and its Courant index range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueGroup {
    pub value: f64,
    /// Lexicographically ordered; this order fixes the coefficient basis of an eigenfunction.
    pub modes: Vec<ModeTriple>,
    pub k_min: u64,
    pub k_max: u64,
}

impl EigenvalueGroup {
    pub fn multiplicity(&self) -> usize {
        self.modes.len()
    }

    /// The value as an integer when it is one (always the case on the cube).
    pub fn integer_value(&self) -> Option<u64> {
        (self.value.fract() == 0.0 && self.value >= 0.0).then_some(self.value as u64)
    }

    /// Distinct sorted triples among the modes, e.g. `(1,1,6)` and `(2,3,5)` for 38.
    pub fn representatives(&self) -> Vec<ModeTriple> {
        let mut reps: Vec<ModeTriple> = self.modes.iter().map(ModeTriple::sorted).collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    pub fn position_of(&self, t: &ModeTriple) -> Option<usize> {
        self.modes.binary_search(t).ok()
    }
}

fn check_lambda(lambda: f64, what: &str) -> Result<()> {
    if !lambda.is_finite() {
        return invalid(format!("{what} must be finite, got {lambda}"));
    }
    Ok(())
}

/// Loop bound covering every `x ≥ 1` with `weight·x² ≤ budget`; callers filter the overshoot.
fn isqrt_bound(budget: f64, weight: f64) -> u32 {
    if budget < weight {
        return 0;
    }
    (budget / weight).sqrt().floor() as u32 + 1
}

/// All eigenvalues `≤ lambda_max` (closed bound), ascending, with modes and index ranges.
pub fn enumerate_groups(bx: &BoxSpec, lambda_max: f64) -> Result<Vec<EigenvalueGroup>> {
    bx.validate()?;
    check_lambda(lambda_max, "lambda_max")?;
    if lambda_max < bx.ground_state() {
        return invalid(format!(
            "lambda_max = {lambda_max} is below the ground state {}",
            bx.ground_state()
        ));
    }

    let mut modes: Vec<(f64, ModeTriple)> = Vec::new();
    let l_hi = isqrt_bound(lambda_max - bx.beta - bx.gamma, bx.alpha);
    for l in 1..=l_hi {
        let m_hi = isqrt_bound(lambda_max - bx.alpha * (l as f64 * l as f64) - bx.gamma, bx.beta);
        for m in 1..=m_hi {
            let n_hi = isqrt_bound(
                lambda_max - bx.alpha * (l as f64 * l as f64) - bx.beta * (m as f64 * m as f64),
                bx.gamma,
            );
            for n in 1..=n_hi {
                let t = ModeTriple { l, m, n };
                let v = t.eigenvalue_in(bx);
                if v <= lambda_max {
                    modes.push((v, t));
                }
            }
        }
    }
    modes.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut groups: Vec<EigenvalueGroup> = Vec::new();
    let mut next_k = 1u64;
    for (value, t) in modes {
        match groups.last_mut() {
            Some(g) if g.value == value => {
                g.modes.push(t);
                g.k_max += 1;
            }
            _ => groups.push(EigenvalueGroup { value, modes: vec![t], k_min: next_k, k_max: next_k }),
        }
        next_k += 1;
    }
    Ok(groups)
}

/// The group whose eigenvalue equals `value` exactly.
pub fn find_group(bx: &BoxSpec, value: f64) -> Result<EigenvalueGroup> {
    let groups = enumerate_groups(bx, value)?;
    match groups.into_iter().last() {
        Some(g) if g.value == value => Ok(g),
        _ => invalid(format!("{value} is not an eigenvalue of {bx:?}")),
    }
}

/// `N(λ)`: number of modes, with multiplicity, whose eigenvalue is strictly below `lambda`.
///
/// Counts whole columns in `n` for each `(ℓ, m)` instead of visiting every triple.
pub fn counting_function(bx: &BoxSpec, lambda: f64) -> Result<u64> {
    bx.validate()?;
    check_lambda(lambda, "lambda")?;
    let mut count = 0u64;
    let mut l = 1u32;
    loop {
        if (ModeTriple { l, m: 1, n: 1 }).eigenvalue_in(bx) >= lambda {
            break;
        }
        let mut m = 1u32;
        loop {
            if (ModeTriple { l, m, n: 1 }).eigenvalue_in(bx) >= lambda {
                break;
            }
            let rest = lambda - bx.alpha * (l as f64 * l as f64) - bx.beta * (m as f64 * m as f64);
            // Estimate, then settle against the exact eigenvalue expression.
            let mut n = (rest / bx.gamma).max(0.0).sqrt().ceil() as u32 + 1;
            while n > 0 && (ModeTriple { l, m, n }).eigenvalue_in(bx) >= lambda {
                n -= 1;
            }
            while (ModeTriple { l, m, n: n + 1 }).eigenvalue_in(bx) < lambda {
                n += 1;
            }
            count += n as u64;
            m += 1;
        }
        l += 1;
    }
    Ok(count)
}

/// Number of nodal domains of the pure product mode `sin(ℓx) sin(my) sin(nz)`.
pub fn product_nodal_count(t: &ModeTriple) -> u64 {
    t.l as u64 * t.m as u64 * t.n as u64
}
