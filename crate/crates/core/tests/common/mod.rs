#![allow(dead_code)]

use fixlocus::automorphism::{Automorphism, TameGenerator};
use fixlocus::poly::{rat, ratio, RationalMatrix};
use fixlocus::random::Sampler;
use fixlocus::{Polynomial, RationalPoint};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// Deterministic proptest configuration running exactly `cases` cases.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x0f1c_5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Polynomials with small integer and rational coefficients.
pub fn poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=3);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(e, n, d)| (e, ratio(n, d))))
    })
}

pub fn nonzero_poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(nvars, max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Exact agreement of two polynomials at `count` seeded random points.
pub fn agree_at_points(lhs: &Polynomial, rhs: &Polynomial, seed: u64, count: usize) -> bool {
    let mut s = Sampler::new(seed);
    (0..count).all(|_| {
        let p: RationalPoint = s.point(lhs.nvars());
        lhs.evaluate_at(&p) == rhs.evaluate_at(&p)
    })
}

/// A random tame word of `len` generators in `n` variables.
pub fn random_tame_word(s: &mut Sampler, n: usize, len: usize) -> Vec<TameGenerator> {
    (0..len)
        .map(|_| {
            if s.int(0, 2) == 0 {
                loop {
                    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| s.int(-2, 2)).collect()).collect();
                    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                    let matrix = RationalMatrix::from_integers(&refs);
                    if !num_traits::Zero::is_zero(&matrix.determinant().unwrap()) {
                        let translation = (0..n).map(|_| rat(s.int(-3, 3))).collect();
                        return TameGenerator::Affine { matrix, translation };
                    }
                }
            } else {
                let target = s.index(n);
                let shift = s.polynomial(n, 2, 3);
                let shift = Polynomial::from_terms(
                    n,
                    shift.terms().filter(|(m, _)| m.exponent(target) == 0).map(|(m, c)| (m.exponents().to_vec(), c.clone())),
                );
                TameGenerator::Elementary { target, shift }
            }
        })
        .collect()
}

pub fn random_tame(s: &mut Sampler, n: usize, len: usize) -> Automorphism {
    Automorphism::from_generators(n, random_tame_word(s, n, len)).expect("tame words are automorphisms")
}
