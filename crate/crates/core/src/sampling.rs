//! Deterministic, seedable quasi-uniform points on the unit sphere `S^{d−1}`.
//!
//! Points come from the additive recurrence `t_i = frac(s + (i+1)·α)` with the generalized
//! golden-ratio increments `α_k = φ_d^{−(k+1)}`, where `φ_d` is the positive root of
//! `x^{d+1} = x + 1`. Each coordinate is pushed through the inverse normal CDF and the
//! resulting Gaussian vector is normalized, which carries uniformity on the cube over to
//! the sphere. The shift `s` is drawn from a ChaCha stream keyed by the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

#[derive(Clone, Debug)]
pub struct SphereSequence {
    increments: Vec<f64>,
    shift: Vec<f64>,
    normal: Normal,
}

fn generalized_golden_ratio(dim: usize) -> f64 {
    let mut x = 2.0f64;
    for _ in 0..64 {
        x = (1.0 + x).powf(1.0 / (dim as f64 + 1.0));
    }
    x
}

impl SphereSequence {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim >= 1, "sphere dimension must be positive");
        let phi = generalized_golden_ratio(dim);
        let increments = (1..=dim).map(|k| phi.powi(-(k as i32)).fract()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = (0..dim).map(|_| rng.gen::<f64>()).collect();
        SphereSequence { increments, shift, normal: Normal::new(0.0, 1.0).expect("standard normal") }
    }

    pub fn dim(&self) -> usize {
        self.increments.len()
    }

    /// The `index`-th unit vector of the sequence.
    pub fn point(&self, index: u64) -> Vec<f64> {
        let step = (index + 1) as f64;
        let gauss: Vec<f64> = self
            .increments
            .iter()
            .zip(&self.shift)
            .map(|(a, s)| {
                let t = (s + step * a).fract().clamp(1e-12, 1.0 - 1e-12);
                self.normal.inverse_cdf(t)
            })
            .collect();
        let norm = gauss.iter().map(|g| g * g).sum::<f64>().sqrt();
        if norm == 0.0 {
            let mut e = vec![0.0; gauss.len()];
            e[0] = 1.0;
            return e;
        }
        gauss.into_iter().map(|g| g / norm).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_roots() {
        assert!((generalized_golden_ratio(1) - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        let p3 = generalized_golden_ratio(3);
        assert!((p3.powi(4) - p3 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_vectors_and_determinism() {
        let a = SphereSequence::new(3, 7);
        let b = SphereSequence::new(3, 7);
        let c = SphereSequence::new(3, 8);
        for i in 0..50 {
            let p = a.point(i);
            assert!((p.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
            assert_eq!(p, b.point(i));
        }
        assert_ne!(a.point(0), c.point(0));
    }

    #[test]
    fn roughly_uniform_on_s2() {
        // every octant receives close to an eighth of the points
        let seq = SphereSequence::new(3, 1);
        let mut octants = [0usize; 8];
        let total = 4000;
        for i in 0..total {
            let p = seq.point(i);
            let o = (p[0] > 0.0) as usize | ((p[1] > 0.0) as usize) << 1 | ((p[2] > 0.0) as usize) << 2;
            octants[o] += 1;
        }
        for c in octants {
            assert!((c as f64 - total as f64 / 8.0).abs() < 0.1 * total as f64 / 8.0, "{octants:?}");
        }
        // mean of z close to zero
        let mean: f64 = (0..total).map(|i| seq.point(i)[2]).sum::<f64>() / total as f64;
        assert!(mean.abs() < 0.02);
    }

    #[test]
    fn one_dimensional_points_are_signs() {
        let seq = SphereSequence::new(1, 3);
        for i in 0..10 {
            assert_eq!(seq.point(i)[0].abs(), 1.0);
        }
    }
}
