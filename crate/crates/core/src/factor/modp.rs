//! Dense univariate polynomials over a small prime field, and their
//! factorization (distinct-degree followed by Cantor–Zassenhaus splitting).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients low to high, no trailing zeros; the zero polynomial is empty.
pub(crate) type Fp = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Field { p }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn trim(&self, mut a: Fp) -> Fp {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(v)
    }

    pub fn mul_poly(&self, a: &Fp, b: &Fp) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, a: &Fp, c: u64) -> Fp {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(&self, a: &Fp) -> Fp {
        match a.last() {
            Some(&lc) => self.scale(a, self.inv(lc)),
            None => Vec::new(),
        }
    }

    pub fn divrem(&self, a: &Fp, b: &Fp) -> (Fp, Fp) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + b.len() - 1], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + self.p - self.mul(c, bj)) % self.p;
            }
        }
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &Fp, b: &Fp) -> Fp {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &Fp, b: &Fp) -> Fp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Inverse of `a` modulo `m`, if they are coprime.
    pub fn inv_mod(&self, a: &Fp, m: &Fp) -> Option<Fp> {
        let (mut r0, mut r1) = (m.clone(), self.rem(a, m));
        let (mut s0, mut s1): (Fp, Fp) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul_poly(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = self.inv(r0[0]);
        Some(self.rem(&self.scale(&s0, c), m))
    }

    pub fn derivative(&self, a: &Fp) -> Fp {
        self.trim(a.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.p)).collect())
    }

    pub fn powmod(&self, base: &Fp, exp: &BigUint, m: &Fp) -> Fp {
        let mut acc: Fp = self.rem(&vec![1], m);
        let base = self.rem(base, m);
        for i in (0..exp.bits()).rev() {
            acc = self.rem(&self.mul_poly(&acc, &acc), m);
            if exp.bit(i) {
                acc = self.rem(&self.mul_poly(&acc, &base), m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, a: &Fp) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    /// Monic irreducible factors of a monic squarefree polynomial, sorted.
    pub fn factor_squarefree(&self, f: &Fp, seed: u64) -> Vec<Fp> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, &mut rng, &mut out);
        }
        out.sort();
        out
    }

    fn distinct_degree(&self, f: &Fp) -> Vec<(Fp, usize)> {
        let x: Fp = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut out = Vec::new();
        let mut f = f.clone();
        let mut h = self.rem(&x, &f);
        let mut i = 1;
        while f.len() > 2 * i {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
            i += 1;
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((f, d));
        }
        out
    }

    fn equal_degree(&self, g: &Fp, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
        if g.len() - 1 == d {
            out.push(g.clone());
            return;
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Fp = self.trim((0..g.len() - 1).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let mut b = self.gcd(&a, g);
            if b.len() == 1 {
                let c = self.sub(&self.powmod(&a, &exp, g), &vec![1]);
                b = self.gcd(&c, g);
            }
            if b.len() > 1 && b.len() < g.len() {
                let rest = self.divrem(g, &b).0;
                self.equal_degree(&b, d, rng, out);
                self.equal_degree(&rest, d, rng, out);
                return;
            }
        }
    }
}
