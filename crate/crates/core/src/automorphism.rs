//! Polynomial maps of affine space and certified automorphisms.
//!
//! An [`Automorphism`] always carries an inverse that has been checked
//! symbolically in both directions; a constant nonzero Jacobian alone is
//! never taken as evidence of invertibility.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::{irreducible_multivariate, Irreducibility, DEFAULT_DEGREE_CAP};
use crate::poly::{gcd_all, is_squarefree, squarefree_part, PolyMatrix, Polynomial, Rational, RationalMatrix, RationalPoint};

pub const DEFAULT_ITER_BOUND: u32 = 16;
pub const DEFAULT_ORDER_DEGREE_CAP: u32 = 512;
pub const DEFAULT_ROOT_OF_UNITY_BOUND: u32 = 64;

/// A polynomial self-map of affine `n`-space, given by its `n` components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    components: Vec<Polynomial>,
}

impl PolynomialMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::Arity { expected: n, found: bad.nvars() });
        }
        Ok(PolynomialMap { components })
    }

    pub fn identity(n: usize) -> Self {
        PolynomialMap { components: (0..n).map(|i| Polynomial::var(n, i)).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().enumerate().all(|(i, c)| *c == Polynomial::var(self.nvars(), i))
    }

    /// Largest total degree among the components.
    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolynomialMap) -> Result<PolynomialMap> {
        if inner.nvars() != self.nvars() {
            return Err(Error::Arity { expected: self.nvars(), found: inner.nvars() });
        }
        let components = self.components.iter().map(|c| c.compose(&inner.components)).collect::<Result<_>>()?;
        Ok(PolynomialMap { components })
    }

    pub fn apply(&self, point: &RationalPoint) -> RationalPoint {
        RationalPoint::new(self.components.iter().map(|c| c.evaluate_at(point)).collect())
    }

    pub fn jacobian_matrix(&self) -> PolyMatrix {
        PolyMatrix::jacobian(&self.components).expect("components share a ring")
    }

    pub fn jacobian_determinant(&self) -> Polynomial {
        self.jacobian_matrix().determinant().expect("square")
    }

    /// The nonzero polynomials among `f_i - x_i`; they cut out `Fix(f)`.
    pub fn fixed_ideal_generators(&self) -> Vec<Polynomial> {
        let n = self.nvars();
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| c - &Polynomial::var(n, i))
            .filter(|g| !g.is_zero())
            .collect()
    }

    /// The differential `d_a f` as a rational matrix.
    pub fn differential_at(&self, a: &RationalPoint) -> Result<RationalMatrix> {
        if a.dim() != self.nvars() {
            return Err(Error::Arity { expected: self.nvars(), found: a.dim() });
        }
        Ok(self.jacobian_matrix().evaluate(a))
    }

    /// Classifies a map that merely claims to be an automorphism: the
    /// Jacobian determinant must be a nonzero constant.
    pub fn classify(&self, root_bound: u32) -> Result<Specialness> {
        let det = self.jacobian_determinant();
        match det.constant_value() {
            Some(c) if !c.is_zero() => Ok(Specialness::from_lambda(c, root_bound)),
            Some(_) => Err(Error::NotAutomorphism("Jacobian determinant vanishes identically".into())),
            None => Err(Error::NotAutomorphism(format!("Jacobian determinant {det} is not constant"))),
        }
    }
}

/// Generators of the tame group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TameGenerator {
    /// `x ↦ A x + b`.
    Affine { matrix: RationalMatrix, translation: Vec<Rational> },
    /// `x_target ↦ x_target + shift`, where `shift` does not involve `x_target`.
    Elementary { target: usize, shift: Polynomial },
}

impl TameGenerator {
    fn check(&self, n: usize) -> Result<()> {
        match self {
            TameGenerator::Affine { matrix, translation } => {
                if matrix.nrows() != n || matrix.ncols() != n || translation.len() != n {
                    return Err(Error::Construction(format!("affine generator is not {n}-dimensional")));
                }
                if matrix.determinant()?.is_zero() {
                    return Err(Error::Construction("affine generator has a singular matrix".into()));
                }
            }
            TameGenerator::Elementary { target, shift } => {
                if *target >= n || shift.nvars() != n {
                    return Err(Error::Construction(format!("elementary generator is not {n}-dimensional")));
                }
                if shift.contains_var(*target) {
                    return Err(Error::Construction(format!(
                        "elementary generator shift involves its own variable {target}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn as_map(&self, n: usize, inverse: bool) -> PolynomialMap {
        match self {
            TameGenerator::Affine { matrix, translation } => {
                let (m, b) = if inverse {
                    let inv = matrix.inverse().expect("checked nonsingular");
                    let b = inv.mul_vec(translation).into_iter().map(|c| -c).collect::<Vec<_>>();
                    (inv, b)
                } else {
                    (matrix.clone(), translation.clone())
                };
                let components = (0..n)
                    .map(|i| {
                        (0..n).fold(Polynomial::constant(n, b[i].clone()), |acc, j| {
                            acc + Polynomial::var(n, j).scale(m.get(i, j))
                        })
                    })
                    .collect();
                PolynomialMap { components }
            }
            TameGenerator::Elementary { target, shift } => {
                let mut components: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
                components[*target] = if inverse {
                    &components[*target] - shift
                } else {
                    &components[*target] + shift
                };
                PolynomialMap { components }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    TameWord(Vec<TameGenerator>),
    ExplicitPair,
}

/// A polynomial map together with a verified polynomial inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    forward: PolynomialMap,
    inverse: PolynomialMap,
    provenance: Provenance,
    jacobian: Rational,
}

impl Automorphism {
    /// Composes a tame word; the first generator is applied first, so the
    /// forward map is `g_k ∘ ... ∘ g_1` and the inverse is
    /// `g_1⁻¹ ∘ ... ∘ g_k⁻¹`.
    pub fn from_generators(n: usize, word: Vec<TameGenerator>) -> Result<Self> {
        let mut forward = PolynomialMap::identity(n);
        let mut inverse = PolynomialMap::identity(n);
        for g in &word {
            g.check(n)?;
            forward = g.as_map(n, false).compose(&forward)?;
            inverse = inverse.compose(&g.as_map(n, true))?;
        }
        Self::certify(forward, inverse, Provenance::TameWord(word))
    }

    /// Certifies a user-supplied pair of mutually inverse maps.
    pub fn from_pair(forward: PolynomialMap, inverse: PolynomialMap) -> Result<Self> {
        if forward.nvars() != inverse.nvars() {
            return Err(Error::Construction(format!(
                "forward map has {} components, inverse has {}",
                forward.nvars(),
                inverse.nvars()
            )));
        }
        Self::certify(forward, inverse, Provenance::ExplicitPair)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_generators(n, Vec::new()).expect("identity is an automorphism")
    }

    fn certify(forward: PolynomialMap, inverse: PolynomialMap, provenance: Provenance) -> Result<Self> {
        if !forward.compose(&inverse)?.is_identity() {
            return Err(Error::Construction("forward ∘ inverse is not the identity".into()));
        }
        if !inverse.compose(&forward)?.is_identity() {
            return Err(Error::Construction("inverse ∘ forward is not the identity".into()));
        }
        let det = forward.jacobian_determinant();
        let jacobian = match det.constant_value() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(Error::Integrity(format!("invertible map with Jacobian determinant {det}"))),
        };
        Ok(Automorphism { forward, inverse, provenance, jacobian })
    }

    pub fn nvars(&self) -> usize {
        self.forward.nvars()
    }

    pub fn forward(&self) -> &PolynomialMap {
        &self.forward
    }

    pub fn inverse(&self) -> &PolynomialMap {
        &self.inverse
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The constant Jacobian determinant `λ`.
    pub fn jacobian_constant(&self) -> &Rational {
        &self.jacobian
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Automorphism) -> Result<Automorphism> {
        let forward = self.forward.compose(&inner.forward)?;
        let inverse = inner.inverse.compose(&self.inverse)?;
        Self::certify(forward, inverse, Provenance::ExplicitPair)
    }

    pub fn inverted(&self) -> Automorphism {
        Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            provenance: Provenance::ExplicitPair,
            jacobian: self.jacobian.recip(),
        }
    }
}

/// Special means Jacobian determinant equal to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Specialness {
    Special,
    /// `lambda_order` is the multiplicative order of `lambda` when it is at
    /// most the probe bound.
    NonSpecial { lambda: Rational, lambda_order: Option<u32> },
}

impl Specialness {
    fn from_lambda(lambda: Rational, root_bound: u32) -> Self {
        if lambda.is_one() {
            Specialness::Special
        } else {
            let lambda_order = root_of_unity_order(&lambda, root_bound);
            Specialness::NonSpecial { lambda, lambda_order }
        }
    }

    pub fn is_special(&self) -> bool {
        matches!(self, Specialness::Special)
    }

    pub fn lambda(&self) -> Rational {
        match self {
            Specialness::Special => Rational::one(),
            Specialness::NonSpecial { lambda, .. } => lambda.clone(),
        }
    }
}

/// Smallest `k <= bound` with `lambda^k = 1`.
pub fn root_of_unity_order(lambda: &Rational, bound: u32) -> Option<u32> {
    let mut power = lambda.clone();
    for k in 1..=bound {
        if power.is_one() {
            return Some(k);
        }
        power *= lambda;
    }
    None
}

pub fn jacobian_and_classify(f: &Automorphism, root_bound: u32) -> Specialness {
    Specialness::from_lambda(f.jacobian_constant().clone(), root_bound)
}

/// The union of the codimension-one components of `Fix(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedPart {
    /// `f` is the identity.
    WholeSpace,
    /// No hypersurface lies in `Fix(f)`.
    Unit,
    /// Reduced (squarefree, normalized) equation of the hypersurface part.
    Hypersurface(Polynomial),
}

/// `h` is the squarefree part of the gcd of the nonzero `f_i - x_i`: a
/// hypersurface lies in `Fix(f)` iff its reduced equation divides each of them.
pub fn fixed_hypersurface_part(f: &PolynomialMap) -> FixedPart {
    let gens = f.fixed_ideal_generators();
    if gens.is_empty() {
        return FixedPart::WholeSpace;
    }
    let g = gcd_all(f.nvars(), &gens);
    if g.is_constant() {
        FixedPart::Unit
    } else {
        FixedPart::Hypersurface(squarefree_part(&g).expect("nonzero gcd"))
    }
}

/// The constant `c` with `h ∘ f = c·h`, without any consistency check.
pub fn invariance_constant(f: &Automorphism, h: &Polynomial) -> Result<Rational> {
    if h.is_zero() {
        return Err(Error::Precondition("eigen factor of the zero polynomial".into()));
    }
    if h.nvars() != f.nvars() {
        return Err(Error::Arity { expected: f.nvars(), found: h.nvars() });
    }
    let image = h.compose(f.forward().components())?;
    image
        .div_exact(h)
        .and_then(|q| q.constant_value())
        .ok_or_else(|| Error::NotInvariant(format!("h ∘ f is not a constant multiple of h = {h}")))
}

/// Returns `c` with `h ∘ f = c·h`.
///
/// When `{h = 0}` lies in `Fix(f)`, also checks the constant against the
/// Jacobian `λ`: `c = 1` when `λ = 1`, and `c = λ` when `h` is squarefree
/// and irreducible. A mismatch there is an [`Error::Integrity`].
pub fn eigen_factor(f: &Automorphism, h: &Polynomial) -> Result<Rational> {
    let c = invariance_constant(f, h)?;

    let inside_fix = f.forward().fixed_ideal_generators().iter().all(|g| h.divides(g));
    if inside_fix {
        let lambda = f.jacobian_constant();
        if lambda.is_one() {
            if !c.is_one() {
                return Err(Error::Integrity(format!("special map with h ∘ f = {c}·h on a fixed hypersurface")));
            }
        } else if !h.is_constant() && is_squarefree(h) {
            if let Ok(Irreducibility::Irreducible { .. }) = irreducible_multivariate(h, DEFAULT_DEGREE_CAP) {
                if c != *lambda {
                    return Err(Error::Integrity(format!("h ∘ f = {c}·h but the Jacobian is {lambda}")));
                }
            }
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    /// No `m <= iter_bound` gives the identity, or the iterates outgrew the
    /// degree cap. Presumed infinite, not proven.
    ExceedsBound,
}

const ORDER_PRIME: u64 = 2_147_483_647;
const ORDER_PROBES: usize = 4;
const ORDER_SEED: u64 = 0x0bd1_7e55;

/// Per component, `(exponents, coefficient mod p)` for each term.
type ModularMap = Vec<Vec<(Vec<u32>, u64)>>;

/// `f` with coefficients reduced mod [`ORDER_PRIME`]; `None` when a
/// denominator vanishes there.
fn reduce_map(f: &PolynomialMap) -> Option<ModularMap> {
    let p = BigInt::from(ORDER_PRIME);
    let residue = |z: &BigInt| -> u64 { (((z % &p) + &p) % &p).to_u64().expect("reduced mod p") };
    f.components()
        .iter()
        .map(|c| {
            c.terms()
                .map(|(m, q)| {
                    let den = residue(q.denom());
                    (den != 0).then(|| (m.exponents().to_vec(), residue(q.numer()) * pow_mod(den, ORDER_PRIME - 2) % ORDER_PRIME))
                })
                .collect()
        })
        .collect()
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % ORDER_PRIME;
        }
        a = a * a % ORDER_PRIME;
        e >>= 1;
    }
    acc
}

fn apply_mod(f: &[Vec<(Vec<u32>, u64)>], x: &[u64]) -> Vec<u64> {
    f.iter()
        .map(|terms| {
            terms.iter().fold(0, |acc, (exps, c)| {
                let term = exps.iter().zip(x).fold(*c, |t, (&e, &xi)| t * pow_mod(xi, e as u64) % ORDER_PRIME);
                (acc + term) % ORDER_PRIME
            })
        })
        .collect()
}

/// Smallest `m <= iter_bound` with `f^m = id`.
///
/// Orbits of a few random points mod a large prime rule out most `m`; a
/// candidate is confirmed by composing `f` with itself, abandoned once an
/// iterate exceeds `degree_cap`.
pub fn detect_order(f: &PolynomialMap, iter_bound: u32, degree_cap: u32) -> Order {
    let n = f.nvars();
    let screen = reduce_map(f).map(|g| {
        let mut rng = ChaCha8Rng::seed_from_u64(ORDER_SEED);
        let starts: Vec<Vec<u64>> =
            (0..ORDER_PROBES).map(|_| (0..n).map(|_| rng.gen_range(0..ORDER_PRIME)).collect()).collect();
        let mut current = starts.clone();
        (1..=iter_bound)
            .map(|_| {
                current = current.iter().map(|x| apply_mod(&g, x)).collect();
                current == starts
            })
            .collect::<Vec<bool>>()
    });
    let mut power = f.clone();
    let mut reached = 1;
    for m in 1..=iter_bound {
        if let Some(closes) = &screen {
            if !closes[m as usize - 1] {
                continue;
            }
        }
        while reached < m {
            power = f.compose(&power).expect("same dimension");
            reached += 1;
            if power.degree() > degree_cap {
                return Order::ExceedsBound;
            }
        }
        if power.is_identity() {
            return Order::Finite(m);
        }
    }
    Order::ExceedsBound
}

/// Checks at a smooth point `a` of `{h = 0}` that `∇h(a)` is an eigenvector
/// of `(d_a f)ᵀ` with eigenvalue `λ = Jac(f)` and that `det(d_a f) = λ`.
pub fn eigen_check(f: &Automorphism, a: &RationalPoint, h: &Polynomial) -> Result<bool> {
    if h.nvars() != f.nvars() {
        return Err(Error::Arity { expected: f.nvars(), found: h.nvars() });
    }
    let d = f.forward().differential_at(a)?;
    if !h.evaluate_at(a).is_zero() {
        return Err(Error::Precondition("point does not lie on the hypersurface".into()));
    }
    let grad: Vec<Rational> = h.gradient().iter().map(|g| g.evaluate_at(a)).collect();
    if grad.iter().all(Zero::is_zero) {
        return Err(Error::Precondition(
            "singular point of the hypersurface; use the smoothness checker instead".into(),
        ));
    }
    let lambda = f.jacobian_constant();
    let image = d.transpose().mul_vec(&grad);
    let eigen = image.iter().zip(&grad).all(|(u, g)| *u == lambda * g);
    Ok(eigen && d.determinant()? == *lambda)
}
