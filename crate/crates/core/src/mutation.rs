//! Position samplers shared by the bit-flip and weight mutations.
//!
//! The standard-bit mutation touches every position independently with
//! probability `1/m`. Instead of drawing `m` coins per step, [`GlobalSampler`]
//! draws the number of touched positions from Binomial(m, 1/m) by inverting
//! a precomputed CDF, then picks that many distinct positions uniformly.
//! Both procedures induce the same distribution over position sets.

use crate::rng::RngStream;

/// Binomial(m, 1/m) inverse-CDF table plus distinct-position drawing.
#[derive(Clone, Debug)]
pub struct GlobalSampler {
    m: usize,
    cdf: Vec<f64>,
}

impl GlobalSampler {
    pub fn new(m: usize) -> Self {
        let cdf = match m {
            0 => vec![1.0],
            // probability 1 of touching the single position
            1 => vec![0.0, 1.0],
            _ => {
                let p = 1.0 / m as f64;
                let q = 1.0 - p;
                let mut pmf = 1.0;
                for _ in 0..m {
                    pmf *= q;
                }
                let ratio = p / q;
                let mut acc = pmf;
                let mut cdf = vec![acc];
                let mut k = 0usize;
                while k < m && acc < 1.0 - 1e-17 && pmf > 0.0 {
                    pmf *= (m - k) as f64 / (k + 1) as f64 * ratio;
                    acc += pmf;
                    cdf.push(acc);
                    k += 1;
                }
                cdf
            }
        };
        GlobalSampler { m, cdf }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of positions to touch.
    pub fn count(&self, rng: &mut RngStream) -> usize {
        if self.m == 0 {
            return 0;
        }
        let u = rng.unit();
        self.cdf.iter().position(|&c| u < c).unwrap_or(self.cdf.len() - 1)
    }

    /// Fills `out` with the distinct positions touched by one mutation.
    pub fn sample_into(&self, rng: &mut RngStream, out: &mut Vec<usize>) {
        out.clear();
        let k = self.count(rng);
        while out.len() < k {
            let i = rng.index(self.m);
            if !out.contains(&i) {
                out.push(i);
            }
        }
    }
}

/// Single uniform position for the local (RLS) mutation, `None` when `m == 0`.
#[inline]
pub fn sample_local(m: usize, rng: &mut RngStream) -> Option<usize> {
    (m > 0).then(|| rng.index(m))
}
