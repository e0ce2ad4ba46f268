//! Seeded sampling of rationals, points and polynomials for randomized
//! identity checks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Polynomial, Rational, RationalPoint};

/// Deterministic sampler; identical seeds give identical streams on every
/// platform.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Numerator in `[-1000, 1000]`, denominator in `[1, 97]`.
    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-1000i64..=1000);
        let d = self.rng.gen_range(1i64..=97);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn point(&mut self, n: usize) -> RationalPoint {
        RationalPoint::new((0..n).map(|_| self.rational()).collect())
    }

    /// Random polynomial with at most `terms` terms of total degree at most
    /// `max_degree` and small integer coefficients.
    pub fn polynomial(&mut self, nvars: usize, max_degree: u32, terms: usize) -> Polynomial {
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let mut budget = self.rng.gen_range(0..=max_degree);
            let mut e = vec![0u32; nvars];
            while budget > 0 && nvars > 0 {
                e[self.rng.gen_range(0..nvars)] += 1;
                budget -= 1;
            }
            let c = self.rng.gen_range(-9i64..=9);
            out.push((e, crate::poly::rat(c)));
        }
        Polynomial::from_terms(nvars, out)
    }

    /// Like [`Sampler::polynomial`] but never zero.
    pub fn nonzero_polynomial(&mut self, nvars: usize, max_degree: u32, terms: usize) -> Polynomial {
        loop {
            let p = self.polynomial(nvars, max_degree, terms);
            if !p.is_zero() {
                return p;
            }
        }
    }
}
