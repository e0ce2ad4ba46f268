mod common;

use common::{agree_at_points, config, random_tame, random_tame_word};
use fixlocus::automorphism::{
    detect_order, eigen_factor, fixed_hypersurface_part, jacobian_and_classify, Automorphism, FixedPart, Order,
    PolynomialMap, TameGenerator,
};
use fixlocus::poly::{rat, RationalMatrix};
use fixlocus::random::Sampler;
use fixlocus::theorem::fiber_shift_holds;
use fixlocus::Polynomial;
use num_traits::One;
use proptest::prelude::*;

#[test]
fn chain_rule_on_random_tame_words() {
    let mut s = Sampler::new(2024);
    for _ in 0..50 {
        let word = random_tame_word(&mut s, 3, 4);
        let f = Automorphism::from_generators(3, word[..2].to_vec()).unwrap();
        let g = Automorphism::from_generators(3, word[2..].to_vec()).unwrap();
        let gf = Automorphism::from_generators(3, word).unwrap();
        assert_eq!(gf.forward(), &g.forward().compose(f.forward()).unwrap());
        let lhs = gf.forward().jacobian_determinant();
        let rhs = &g.forward().jacobian_determinant().compose(f.forward().components()).unwrap()
            * &f.forward().jacobian_determinant();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn chain_rule_on_raw_maps() {
    let mut s = Sampler::new(77);
    for i in 0..20 {
        let f = PolynomialMap::new((0..3).map(|_| s.polynomial(3, 2, 3)).collect()).unwrap();
        let g = PolynomialMap::new((0..3).map(|_| s.polynomial(3, 2, 3)).collect()).unwrap();
        let lhs = g.compose(&f).unwrap().jacobian_determinant();
        let rhs = &g.jacobian_determinant().compose(f.components()).unwrap() * &f.jacobian_determinant();
        assert_eq!(lhs, rhs);
        assert!(agree_at_points(&lhs, &rhs, i, 50));
    }
}

#[test]
fn inverse_law() {
    let mut s = Sampler::new(5);
    for _ in 0..30 {
        let f = random_tame(&mut s, 3, 3);
        assert!(f.forward().compose(f.inverse()).unwrap().is_identity());
        assert!(f.inverse().compose(f.forward()).unwrap().is_identity());
        let inv_det = f.inverse().jacobian_determinant().compose(f.forward().components()).unwrap();
        assert!((&f.forward().jacobian_determinant() * &inv_det).is_one());
        let p = s.point(3);
        assert_eq!(f.inverse().apply(&f.forward().apply(&p)), p);
    }
}

fn signed_permutation(s: &mut Sampler, n: usize) -> TameGenerator {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, s.index(i + 1));
    }
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if perm[i] == j { if s.int(0, 1) == 0 { 1 } else { -1 } } else { 0 }).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    TameGenerator::Affine { matrix: RationalMatrix::from_integers(&refs), translation: vec![rat(0); n] }
}

#[test]
fn finite_order_forces_root_of_unity_jacobian() {
    let mut s = Sampler::new(9);
    for _ in 0..40 {
        let f = Automorphism::from_generators(3, vec![signed_permutation(&mut s, 3)]).unwrap();
        match detect_order(f.forward(), 16, 512) {
            Order::Finite(m) => assert!(f.jacobian_constant().pow(m as i32).is_one()),
            Order::ExceedsBound => panic!("signed permutations have order at most 6"),
        }
    }
}

proptest! {
    #![proptest_config(config(40))]

    /// Triangular maps x ↦ x + a·b(y, z) are special and fix V(b); the fiber
    /// shift identity then reads b(f(p)) = b(p).
    #[test]
    fn triangular_maps_fix_their_shift(seed in 0u64..10_000) {
        let mut s = Sampler::new(seed);
        let shift = loop {
            let b = s.nonzero_polynomial(3, 3, 3);
            let b = Polynomial::from_terms(
                3,
                b.terms().filter(|(m, _)| m.exponent(0) == 0).map(|(m, c)| (m.exponents().to_vec(), c.clone())),
            );
            if !b.is_constant() {
                break b;
            }
        };
        let f = Automorphism::from_generators(3, vec![TameGenerator::Elementary { target: 0, shift: shift.clone() }]).unwrap();
        prop_assert!(jacobian_and_classify(&f, 64).is_special());
        let FixedPart::Hypersurface(h) = fixed_hypersurface_part(f.forward()) else {
            panic!("nonconstant shift gives a hypersurface");
        };
        prop_assert!(h.divides(&shift));
        let c = eigen_factor(&f, &h).unwrap();
        prop_assert!(c.is_one());
        prop_assert!(fiber_shift_holds(&f, &h, &c, seed));
    }
}
