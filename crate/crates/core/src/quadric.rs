//! Exact analysis of the `λ = 11` eigenspace of the cube.
//!
//! Every eigenfunction is
//!
//! ```text
//! Φ_{a,b,c} = a sin x sin y sin 3z + b sin y sin z sin 3x + c sin z sin x sin 3y
//! ```
//!
//! and `sin 3t = sin t (4 cos² t − 1)` gives `Φ = sin x sin y sin z · q(cos x, cos y, cos z)`
//! with `q(u, v, w) = 4(A u² + B v² + C w²) − (A + B + C)` and `(A, B, C) = (b, c, a)`.
//! The nodal domains of `Φ` are therefore the components of `(−1, 1)³` minus the quadric
//! `q = 0`, which a case analysis on the signs of `A, B, C` and `A + B + C` counts exactly.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Relative size below which a coefficient (or the coefficient sum) counts as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// Coefficients `[A, B, C]` of `u², v², w²` in `4(Au² + Bv² + Cw²) − (A+B+C) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadricCoeffs {
    pub coeffs: [f64; 3],
    /// The `(a, b, c)` of `Φ_{a,b,c}` this quadric came from.
    pub source: [f64; 3],
}

impl QuadricCoeffs {
    pub fn sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// `q(u, v, w)`; same sign as `Φ` at `(arccos u, arccos v, arccos w)`.
    pub fn value(&self, u: f64, v: f64, w: f64) -> f64 {
        let [a, b, c] = self.coeffs;
        4.0 * (a * u * u + b * v * v + c * w * w) - self.sum()
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    fn is_zero(&self, x: f64) -> bool {
        x.abs() <= ZERO_TOLERANCE * self.scale()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadricClass {
    Cylinder,
    DoublePlanes,
    CrossedPlanes,
    Cone,
    Ellipsoid,
    HyperboloidOneSheet,
    HyperboloidTwoSheets,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentPrediction {
    /// Number of connected components of the cube minus the quadric; always 2, 3 or 4.
    pub count: u8,
    pub subcase: String,
    /// Half-length of the segment the ellipsoid cuts out of each edge parallel to its
    /// longest axis (edge-cut ellipsoids only).
    pub w0: Option<f64>,
}

impl ComponentPrediction {
    fn new(count: u8, subcase: &str) -> Self {
        ComponentPrediction { count, subcase: subcase.to_string(), w0: None }
    }
}

/// `Φ_{a,b,c}(x, y, z)` evaluated directly from the sines.
pub fn phi(abc: [f64; 3], x: f64, y: f64, z: f64) -> f64 {
    let [a, b, c] = abc;
    let (sx, sy, sz) = (x.sin(), y.sin(), z.sin());
    a * sx * sy * (3.0 * z).sin() + b * sy * sz * (3.0 * x).sin() + c * sz * sx * (3.0 * y).sin()
}

pub fn reduce_to_quadric(a: f64, b: f64, c: f64) -> Result<QuadricCoeffs> {
    if ![a, b, c].iter().all(|x| x.is_finite()) {
        return invalid(format!("coefficients must be finite, got ({a}, {b}, {c})"));
    }
    if a == 0.0 && b == 0.0 && c == 0.0 {
        return invalid("Φ_{0,0,0} vanishes identically");
    }
    // The u² term comes from sin 3x, which carries b; v² from sin 3y (c); w² from sin 3z (a).
    Ok(QuadricCoeffs { coeffs: [b, c, a], source: [a, b, c] })
}

pub fn classify(q: &QuadricCoeffs) -> QuadricClass {
    let nonzero: Vec<f64> = q.coeffs.iter().copied().filter(|&x| !q.is_zero(x)).collect();
    let sum_zero = q.is_zero(q.sum());
    match nonzero[..] {
        [_] => QuadricClass::DoublePlanes,
        [p, r] => {
            if p.signum() != r.signum() && sum_zero {
                QuadricClass::CrossedPlanes
            } else {
                QuadricClass::Cylinder
            }
        }
        _ => {
            let product: f64 = q.coeffs.iter().product();
            let all_same = q.coeffs.iter().all(|x| x.signum() == q.coeffs[0].signum());
            if sum_zero {
                QuadricClass::Cone
            } else if all_same {
                QuadricClass::Ellipsoid
            } else if product.signum() * q.sum().signum() < 0.0 {
                QuadricClass::HyperboloidOneSheet
            } else {
                QuadricClass::HyperboloidTwoSheets
            }
        }
    }
}

/// Coefficients rescaled so they sum to one (sign flip included), sorted ascending.
fn sum_normalized(q: &QuadricCoeffs) -> [f64; 3] {
    let s = q.sum();
    let mut v = q.coeffs.map(|x| if q.is_zero(x) { 0.0 } else { x / s });
    v.sort_by(f64::total_cmp);
    v
}

/// Number of components of `(−1, 1)³ \ Q`, from the case analysis of the quadric.
///
/// Inputs sitting exactly on a subcase boundary get the closed subcase, e.g. an ellipsoid
/// with `a + b = 1/4` is predicted to cut the edges with `w0 = 0`.
pub fn predict_components(q: &QuadricCoeffs) -> ComponentPrediction {
    match classify(q) {
        QuadricClass::DoublePlanes => ComponentPrediction::new(3, "double planes"),
        QuadricClass::CrossedPlanes => ComponentPrediction::new(4, "crossed planes"),
        QuadricClass::Cone => ComponentPrediction::new(3, "double cone"),
        QuadricClass::HyperboloidTwoSheets => ComponentPrediction::new(3, "two-sheet hyperboloid"),
        QuadricClass::Cylinder => {
            let v = sum_normalized(q);
            let (lo, hi) = if v[0] == 0.0 { (v[1], v[2]) } else if v[1] == 0.0 { (v[0], v[2]) } else { (v[0], v[1]) };
            if lo < 0.0 || hi < 0.0 {
                // Both hyperbola branches run from face to face without meeting the other pair.
                ComponentPrediction::new(3, "hyperbolic cylinder")
            } else if lo <= 0.25 {
                ComponentPrediction::new(3, "elliptic cylinder, edge-cut")
            } else {
                ComponentPrediction::new(2, "elliptic cylinder")
            }
        }
        QuadricClass::Ellipsoid => {
            let [a, b, c] = sum_normalized(q);
            if a + b <= 0.25 {
                let w0 = ((0.25 - (a + b)).max(0.0) / c).sqrt();
                ComponentPrediction { count: 3, subcase: "ellipsoid edge-cut".into(), w0: Some(w0) }
            } else {
                ComponentPrediction::new(2, "ellipsoid")
            }
        }
        QuadricClass::HyperboloidOneSheet => {
            // after normalization exactly one coefficient is negative and sorts first
            let [_, a, b] = sum_normalized(q);
            if a <= 0.25 {
                ComponentPrediction::new(3, "one-sheet hyperboloid, a <= 1/4")
            } else if b < 0.75 {
                ComponentPrediction::new(2, "one-sheet hyperboloid, 1/4 < a <= b < 3/4")
            } else if a < 0.75 {
                ComponentPrediction::new(2, "one-sheet hyperboloid, 1/4 < a < 3/4 <= b")
            } else {
                ComponentPrediction::new(2, "one-sheet hyperboloid, 3/4 <= a")
            }
        }
    }
}

/// Distance of the coefficients to the nearest boundary between subcases of
/// [`predict_components`]: the coordinate planes (`abc = 0`) and the cone plane
/// (`a + b + c = 0`) measured on the unit sphere, plus `a + b = 1/4` for ellipsoids and
/// `a = 1/4` for one-sheet hyperboloids measured after normalizing the sum to one.
pub fn subcase_margin(q: &QuadricCoeffs) -> f64 {
    let norm = q.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt();
    let unit = q.coeffs.map(|x| x / norm);
    let mut margin = unit.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    margin = margin.min(unit.iter().sum::<f64>().abs() / 3f64.sqrt());
    match classify(q) {
        QuadricClass::Ellipsoid => {
            let [a, b, _] = sum_normalized(q);
            margin = margin.min((a + b - 0.25).abs());
        }
        QuadricClass::HyperboloidOneSheet => {
            let [_, a, _] = sum_normalized(q);
            margin = margin.min((a - 0.25).abs());
        }
        _ => {}
    }
    margin
}
