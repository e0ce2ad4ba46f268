//! Factorization of squarefree integer polynomials: factor modulo a good
//! prime, Hensel-lift the modular factors, recombine subsets by exact trial
//! division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{Field, Fp};

/// Dense integer polynomial, coefficients low to high, no trailing zeros.
pub(crate) type Zx = Vec<BigInt>;

const SPLIT_SEED: u64 = 0x5eed_f00d;

pub(crate) fn trim(mut a: Zx) -> Zx {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &Zx) -> usize {
    a.len().saturating_sub(1)
}

fn mul(a: &Zx, b: &Zx) -> Zx {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn content(a: &Zx) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(a: &Zx) -> Zx {
    let mut g = content(a);
    if g.is_zero() {
        return Vec::new();
    }
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient in `Z[x]`, or `None` if `b` does not divide `a`.
pub(crate) fn div_exact(a: &Zx, b: &Zx) -> Option<Zx> {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + b.len() - 1].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(trim(q))
    } else {
        None
    }
}

fn to_field(a: &Zx, f: &Field) -> Fp {
    let p = BigInt::from(f.p);
    f.trim(a.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
}

fn from_field(a: &Fp) -> Zx {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn symmetric_mod(a: &Zx, m: &BigInt) -> Zx {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_all(a: &Zx, m: &BigInt) -> Zx {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn small_primes() -> impl Iterator<Item = u64> {
    (5u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Smallest prime `p >= 5` not dividing the leading coefficient and keeping
/// `f` squarefree modulo `p` (equivalently, not dividing the discriminant).
fn good_prime(f: &Zx) -> Field {
    let lc = f.last().unwrap();
    for p in small_primes() {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = Field::new(p);
        if field.is_squarefree(&to_field(f, &field)) {
            return field;
        }
    }
    unreachable!("a squarefree integer polynomial has only finitely many bad primes")
}

/// `2^deg * ceil(||f||_2) * |lc(f)|`: bounds the coefficients of
/// `lc(f) * g` for every factor `g` of `f`.
fn coefficient_bound(f: &Zx) -> BigInt {
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    (BigInt::one() << degree(f)) * norm * f.last().unwrap().abs()
}

/// Lifts `f ≡ lc(f) * prod(factors) (mod p)` with monic `factors` to the
/// same congruence modulo `p^k`, returning the lifted factors and `p^k`.
fn hensel_lift(f: &Zx, factors: &[Fp], field: &Field, bound: &BigInt) -> (Vec<Zx>, BigInt) {
    let p = BigInt::from(field.p);
    let lc = f.last().unwrap().clone();
    let lc_inv = field.inv(to_field(&vec![lc.clone()], field)[0]);

    // s_i with sum_i s_i * prod_{j != i} g_j ≡ 1 (mod p)
    let cofactor_inverses: Vec<Fp> = (0..factors.len())
        .map(|i| {
            let others = factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(vec![1u64], |acc, (_, g)| field.mul_poly(&acc, g));
            field.inv_mod(&others, &factors[i]).expect("modular factors are coprime")
        })
        .collect();

    let mut lifted: Vec<Zx> = factors.iter().map(from_field).collect();
    let mut modulus = p.clone();
    let target = bound * 2;
    while modulus <= target {
        let next = &modulus * &p;
        let prod = lifted.iter().fold(vec![lc.clone()], |acc, g| mod_all(&mul(&acc, g), &next));
        let diff: Zx = (0..f.len())
            .map(|i| {
                let d = &f[i] - prod.get(i).cloned().unwrap_or_else(BigInt::zero);
                d.mod_floor(&next) / &modulus
            })
            .collect();
        let e = field.scale(&to_field(&trim(diff), field), lc_inv);
        if !e.is_empty() {
            for (g, s) in lifted.iter_mut().zip(&cofactor_inverses) {
                let gp = to_field(g, field);
                let delta = field.rem(&field.mul_poly(s, &e), &gp);
                for (k, c) in delta.iter().enumerate() {
                    g[k] += &modulus * BigInt::from(*c);
                }
            }
        }
        modulus = next;
    }
    (lifted, modulus)
}

/// Irreducible factors over `Z` of a primitive squarefree `f` with positive
/// leading coefficient. The product of the result is `f`.
pub(crate) fn factor_squarefree(f: &Zx) -> Vec<Zx> {
    if degree(f) <= 1 {
        return vec![f.clone()];
    }
    let field = good_prime(f);
    let fp = field.monic(&to_field(f, &field));
    let modular = field.factor_squarefree(&fp, SPLIT_SEED);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let bound = coefficient_bound(f);
    let (mut lifted, modulus) = hensel_lift(f, &modular, &field, &bound);
    debug_assert_eq!(
        mod_all(&lifted.iter().fold(vec![f.last().unwrap().clone()], |acc, g| mul(&acc, g)), &modulus),
        mod_all(f, &modulus)
    );

    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in subsets(lifted.len(), size) {
            let lc = rest.last().unwrap().clone();
            let candidate = subset.iter().fold(vec![lc], |acc, &i| mod_all(&mul(&acc, &lifted[i]), &modulus));
            let candidate = primitive(&symmetric_mod(&candidate, &modulus));
            if degree(&candidate) == 0 {
                continue;
            }
            if let Some(q) = div_exact(&rest, &candidate) {
                found.push(candidate);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if degree(&rest) > 0 {
        found.push(primitive(&rest));
    }
    found
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Zx {
        trim(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn product(fs: &[Zx]) -> Zx {
        fs.iter().fold(z(&[1]), |acc, g| mul(&acc, g))
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(subsets(3, 1), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over Q but splits modulo every prime
        let f = z(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f.clone()]);
    }

    #[test]
    fn non_monic_product() {
        // (2x + 1)(3x + 1)(x^2 - 2)
        let f = product(&[z(&[1, 2]), z(&[1, 3]), z(&[-2, 0, 1])]);
        let mut fs = factor_squarefree(&f);
        fs.sort();
        assert_eq!(product(&fs), f);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn large_coefficients_need_lifting() {
        // (x - 1000)(x + 999)(x^2 + 1)
        let f = product(&[z(&[-1000, 1]), z(&[999, 1]), z(&[1, 0, 1])]);
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f);
        assert!(fs.contains(&z(&[-1000, 1])));
    }

    #[test]
    fn exact_division_in_z() {
        let f = z(&[1, 5, 6]);
        assert_eq!(div_exact(&f, &z(&[1, 2])), Some(z(&[1, 3])));
        assert_eq!(div_exact(&f, &z(&[1, 4])), None);
    }
}
