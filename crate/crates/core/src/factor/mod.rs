//! Factorization over the rationals and irreducibility of hypersurface
//! equations.

mod modp;
mod univariate;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{gcd, is_squarefree, Monomial, Polynomial, Rational, RationalMatrix};

/// `unit * prod(factor^multiplicity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    pub unit: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl FactorList {
    pub fn expand(&self, nvars: usize) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(nvars, self.unit.clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Sorts factors by degree, then by rendered form, and merges repeats.
    fn canonicalize(&mut self) {
        let mut merged: Vec<(Polynomial, u32)> = Vec::new();
        for (f, e) in self.factors.drain(..) {
            match merged.iter_mut().find(|(g, _)| *g == f) {
                Some((_, m)) => *m += e,
                None => merged.push((f, e)),
            }
        }
        merged.sort_by_key(|(f, _)| (f.total_degree(), f.to_string()));
        self.factors = merged;
    }
}

/// Factorization of a univariate polynomial (exactly one variable occurring)
/// into irreducibles over the rationals.
pub fn factor_univariate(p: &Polynomial) -> Result<FactorList> {
    if p.is_zero() {
        return Err(Error::Domain("factorization of the zero polynomial".into()));
    }
    let occurring = p.occurring_vars();
    if occurring.len() > 1 {
        return Err(Error::Contract(format!("expected a univariate polynomial, {} variables occur", occurring.len())));
    }
    let n = p.nvars();
    let Some(&var) = occurring.first() else {
        return Ok(FactorList { unit: p.constant_value().unwrap(), factors: Vec::new() });
    };

    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(p, var) {
        let dense = to_dense(&part, var);
        for f in univariate::factor_squarefree(&dense) {
            factors.push((from_dense(&f, n, var), mult));
        }
    }
    let mut list = FactorList { unit: Rational::one(), factors };
    let expanded = list.expand(n);
    list.unit = p.div_exact(&expanded).and_then(|u| u.constant_value()).expect("factors reproduce the input");
    list.canonicalize();
    Ok(list)
}

/// Yun's algorithm: normalized squarefree `a_i` with `p ~ prod a_i^i`.
fn squarefree_decomposition(p: &Polynomial, var: usize) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    let dp = p.derivative(var);
    let b = gcd(p, &dp);
    let mut c = p.div_exact(&b).expect("gcd divides");
    let mut d = &dp.div_exact(&b).expect("gcd divides") - &c.derivative(var);
    let mut i = 1;
    while !c.is_constant() {
        let a = gcd(&c, &d);
        c = c.div_exact(&a).expect("gcd divides");
        d = &d.div_exact(&a).expect("gcd divides") - &c.derivative(var);
        if !a.is_constant() {
            out.push((a.normalized(), i));
        }
        i += 1;
    }
    out
}

fn to_dense(p: &Polynomial, var: usize) -> Vec<BigInt> {
    let p = p.normalized();
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut v = vec![BigInt::zero(); deg + 1];
    for (m, c) in p.terms() {
        v[m.exponent(var) as usize] = c.to_integer();
    }
    v
}

fn from_dense(v: &[BigInt], nvars: usize, var: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for (k, c) in v.iter().enumerate() {
        let m = Monomial::one(nvars).with_exponent(var, k as u32);
        p = p + Polynomial::monomial(m, BigRational::from_integer(c.clone()));
    }
    p
}

/// Outcome of the multivariate irreducibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    /// Irreducible over the rationals. `absolute` records whether
    /// irreducibility over the algebraic closure is also certified.
    Irreducible { absolute: bool },
    Reducible(FactorList),
    Unknown(String),
}

impl Irreducibility {
    pub fn is_reducible(&self) -> bool {
        matches!(self, Irreducibility::Reducible(_))
    }
}

pub const DEFAULT_DEGREE_CAP: u32 = 8;
const MAX_VARIABLES: usize = 4;
const MAX_CANDIDATES: u64 = 1 << 16;

/// Irreducibility of a squarefree polynomial over the rationals by
/// Kronecker substitution.
///
/// Occurring variables `v_1, ..., v_k` with degrees `d_i` are mapped to
/// `t^(w_i)` with mixed-radix weights `w_1 = 1`, `w_{i+1} = w_i (d_i + 1)`;
/// every factor of `p` maps to a divisor of the image, and every divisor of
/// the image pulls back uniquely, so it suffices to try the divisors of the
/// univariate image and keep those that divide `p` exactly.
pub fn irreducible_multivariate(p: &Polynomial, degree_cap: u32) -> Result<Irreducibility> {
    if p.is_constant() {
        return Err(Error::Domain("irreducibility of a constant".into()));
    }
    if !is_squarefree(p) {
        return Err(Error::Contract("irreducibility test needs a squarefree polynomial".into()));
    }
    let p = p.normalized();
    let degree = p.total_degree().unwrap();
    if degree > degree_cap {
        return Ok(Irreducibility::Unknown(format!("total degree {degree} exceeds cap {degree_cap}")));
    }
    let vars = p.occurring_vars();
    if vars.len() > MAX_VARIABLES {
        return Ok(Irreducibility::Unknown(format!("{} variables exceed the supported {MAX_VARIABLES}", vars.len())));
    }
    if degree == 1 {
        return Ok(Irreducibility::Irreducible { absolute: true });
    }

    let n = p.nvars();
    let degs: Vec<u32> = vars.iter().map(|&v| p.degree_in(v).unwrap()).collect();
    let mut weights = Vec::with_capacity(vars.len());
    let mut w: u64 = 1;
    for &d in &degs {
        weights.push(w);
        w *= d as u64 + 1;
    }
    let image = Polynomial::from_terms(
        1,
        p.terms().map(|(m, c)| {
            let e: u64 = vars.iter().zip(&weights).map(|(&v, &wt)| m.exponent(v) as u64 * wt).sum();
            (vec![e as u32], c.clone())
        }),
    );
    let univariate = factor_univariate(&image)?;
    let count: u64 = univariate.factors.iter().map(|(_, e)| *e as u64 + 1).product();
    if count > MAX_CANDIDATES {
        return Ok(Irreducibility::Unknown(format!("{count} recombination candidates")));
    }

    let pull_back = |u: &Polynomial| -> Option<Polynomial> {
        let mut terms = Vec::new();
        for (m, c) in u.terms() {
            let mut e = m.exponent(0) as u64;
            let mut exps = vec![0u32; n];
            for (&v, &d) in vars.iter().zip(&degs) {
                let digit = e % (d as u64 + 1);
                e /= d as u64 + 1;
                exps[v] = digit as u32;
            }
            if e != 0 {
                return None;
            }
            terms.push((exps, c.clone()));
        }
        Some(Polynomial::from_terms(n, terms))
    };

    let mut candidates: Vec<Polynomial> = Vec::new();
    let mut choice = vec![0u32; univariate.factors.len()];
    'enumerate: loop {
        let mut k = 0;
        loop {
            if k == choice.len() {
                break 'enumerate;
            }
            if choice[k] < univariate.factors[k].1 {
                choice[k] += 1;
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        let u = univariate
            .factors
            .iter()
            .zip(&choice)
            .fold(Polynomial::one(1), |acc, ((f, _), &c)| &acc * &f.pow(c));
        if let Some(c) = pull_back(&u) {
            let c = c.normalized();
            let deg = c.total_degree().unwrap_or(0);
            if deg > 0 && deg < degree {
                candidates.push(c);
            }
        }
    }
    candidates.sort_by_key(|c| (c.total_degree(), c.to_string()));
    for c in candidates {
        if let Some(q) = p.div_exact(&c) {
            let mut factors = Vec::new();
            for part in [c, q] {
                match irreducible_multivariate(&part, degree_cap)? {
                    Irreducibility::Reducible(list) => factors.extend(list.factors),
                    Irreducibility::Irreducible { .. } => factors.push((part.normalized(), 1)),
                    Irreducibility::Unknown(why) => return Ok(Irreducibility::Unknown(why)),
                }
            }
            let mut list = FactorList { unit: Rational::one(), factors };
            list.unit = p.div_exact(&list.expand(n)).and_then(|u| u.constant_value()).expect("factors reproduce p");
            list.canonicalize();
            return Ok(Irreducibility::Reducible(list));
        }
    }
    Ok(Irreducibility::Irreducible { absolute: absolutely_irreducible_certificate(&p) })
}

/// Certificates of irreducibility over the algebraic closure for a
/// polynomial already known to be irreducible over the rationals: degree one;
/// degree one in some variable with coprime coefficients; or a quadric whose
/// homogenized symmetric matrix has rank at least 3.
pub fn absolutely_irreducible_certificate(p: &Polynomial) -> bool {
    match p.total_degree() {
        Some(1) => return true,
        Some(2) if quadric_rank(p) >= 3 => return true,
        _ => {}
    }
    (0..p.nvars()).any(|v| {
        if p.degree_in(v) != Some(1) {
            return false;
        }
        let cs = p.coefficients_in(v);
        gcd(&cs[0], &cs[1]).is_constant()
    })
}

/// Rank of the symmetric matrix of the homogenization of a total-degree-two
/// polynomial; the quadric splits into linear factors over the algebraic
/// closure iff this rank is at most 2.
pub fn quadric_rank(p: &Polynomial) -> usize {
    let n = p.nvars();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut m = vec![vec![Rational::zero(); n + 1]; n + 1];
    for (mono, c) in p.terms() {
        let idx: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, mono.exponent(v) as usize)).collect();
        match idx.as_slice() {
            [] => m[n][n] += c,
            [i] => {
                m[*i][n] += c * &half;
                m[n][*i] += c * &half;
            }
            [i, j] if i == j => m[*i][*i] += c,
            [i, j] => {
                m[*i][*j] += c * &half;
                m[*j][*i] += c * &half;
            }
            _ => panic!("quadric_rank on a polynomial of degree above two"),
        }
    }
    RationalMatrix::from_rows(m).expect("square").rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn x1() -> Polynomial {
        Polynomial::var(1, 0)
    }

    fn vars(n: usize) -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(n, i)).collect()
    }

    #[test]
    fn difference_of_squares() {
        let x = x1();
        let f = factor_univariate(&(&x.pow(2) - &Polynomial::one(1))).unwrap();
        assert_eq!(f.unit, rat(1));
        let names: Vec<String> = f.factors.iter().map(|(g, _)| g.to_string()).collect();
        assert_eq!(names, vec!["x + 1", "x - 1"]);
    }

    #[test]
    fn sum_of_squares_is_irreducible() {
        let x = x1();
        let p = &x.pow(2) + &Polynomial::one(1);
        let f = factor_univariate(&p).unwrap();
        assert_eq!(f.factors, vec![(p, 1)]);
    }

    #[test]
    fn quadratic_with_rational_roots() {
        let x = x1();
        let p = &(&x.pow(2).scale(&rat(6)) + &x.scale(&rat(5))) + &Polynomial::one(1);
        let f = factor_univariate(&p).unwrap();
        // oracle: roots -1/2 and -1/3
        for r in [ratio(-1, 2), ratio(-1, 3)] {
            assert!(f.factors.iter().any(|(g, _)| g.evaluate(std::slice::from_ref(&r)) == rat(0)));
        }
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(1), p);
    }

    #[test]
    fn multiplicities_and_units() {
        let x = x1();
        let a = &x - &Polynomial::from_int(1, 2);
        let b = &x.pow(2) + &Polynomial::from_int(1, 3);
        let p = (&(&a.pow(3) * &b) * &x).scale(&ratio(-5, 7));
        let f = factor_univariate(&p).unwrap();
        assert_eq!(f.expand(1), p);
        assert_eq!(f.unit, ratio(-5, 7));
        assert!(f.factors.contains(&(a.clone(), 3)));
        assert!(matches!(factor_univariate(&Polynomial::zero(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn univariate_precondition() {
        let v = vars(2);
        assert!(matches!(factor_univariate(&(&v[0] + &v[1])), Err(Error::Contract(_))));
        let in_y = &v[1].pow(2) - &Polynomial::one(2);
        assert_eq!(factor_univariate(&in_y).unwrap().factors.len(), 2);
    }

    #[test]
    fn cone_is_absolutely_irreducible() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        // oracle: rank of the quadratic form matrix
        assert_eq!(quadric_rank(&(&(x * z) + &(y * y))), 3);
        assert_eq!(quadric_rank(&(&(x * x) - &(y * z))), 3);
        assert_eq!(quadric_rank(&(y * z)), 2);
        for q in [&(x * z) + &(y * y), &(x * x) - &(y * z)] {
            assert_eq!(irreducible_multivariate(&q, 8).unwrap(), Irreducibility::Irreducible { absolute: true });
        }
    }

    #[test]
    fn product_of_coordinates_is_reducible() {
        let v = vars(3);
        let r = irreducible_multivariate(&(&v[1] * &v[2]), 8).unwrap();
        let Irreducibility::Reducible(list) = r else { panic!("expected reducible") };
        assert_eq!(list.factors, vec![(v[1].clone(), 1), (v[2].clone(), 1)]);
    }

    #[test]
    fn hidden_factorization_and_caps() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let a = &(x * y) + &z.pow(2);
        let b = &(x - y) + &Polynomial::one(3);
        let p = &a * &b;
        let Irreducibility::Reducible(list) = irreducible_multivariate(&p, 8).unwrap() else { panic!() };
        assert_eq!(list.expand(3), p.normalized());
        assert_eq!(list.factors.len(), 2);
        assert!(matches!(irreducible_multivariate(&p, 2).unwrap(), Irreducibility::Unknown(_)));
        assert!(matches!(irreducible_multivariate(&a.pow(2), 8), Err(Error::Contract(_))));
        // rationally irreducible cubic without an absolute certificate
        let cubic = &(&x.pow(3) + &y.pow(3)) + &(&z.pow(3) + &(&(x * y) * z));
        assert_eq!(irreducible_multivariate(&cubic, 8).unwrap(), Irreducibility::Irreducible { absolute: false });
    }

    #[test]
    fn rationally_irreducible_but_absolutely_reducible_quadric() {
        let v = vars(2);
        // x^2 + y^2 = (x + iy)(x - iy)
        let p = &v[0].pow(2) + &v[1].pow(2);
        assert_eq!(irreducible_multivariate(&p, 8).unwrap(), Irreducibility::Irreducible { absolute: false });
    }
}
