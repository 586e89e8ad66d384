//! Table-driven arithmetic in GF(p^k) for `q ≤ 512`.
//!
//! Elements are integers `0..q` encoding polynomial coefficients little-endian
//! in base `p`: `c_0 + c_1 p + … + c_{k-1} p^{k-1}` stands for `c_0 + c_1 x + …`.
//! The modulus is the lexicographically smallest monic irreducible polynomial of
//! degree `k`, comparing coefficient vectors from `c_0` upwards.

use crate::error::{Error, Result};

pub const MAX_Q: u64 = 512;

/// A finite field given by full addition and multiplication tables.
#[derive(Debug, Clone)]
pub struct FieldTable {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
    primitive: u16,
}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p as u32, k))
}

/// Remainder of `a` modulo monic `m`, coefficients little-endian mod `p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn digits(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = p.pow(k);
    for idx in 0..count {
        // idx enumerates (c_0, …, c_{k-1}) with c_0 most significant.
        let mut coeffs = vec![0u32; k as usize];
        let mut rest = idx;
        for i in (0..k as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs.push(1);
        if coeffs[0] != 0 && is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl FieldTable {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        if q > MAX_Q {
            return Err(Error::UnsupportedField(q));
        }
        let qq = q as u32;
        let n = qq as usize;
        let modulus = smallest_irreducible(p, k);
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..qq {
            let da = digits(a, p, k as usize);
            for b in 0..qq {
                let db = digits(b, p, k as usize);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * qq + b) as usize] = encode(&sum) as u16;
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(k as usize, 0);
                mul[(a * qq + b) as usize] = encode(&r) as u16;
            }
        }
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u16;
                }
                if mul[a * n + b] == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        let mut f = FieldTable { p, k, q: qq, modulus, add, mul, neg, inv, frob: vec![0; n], primitive: 0 };
        f.frob = (0..n as u16).map(|x| f.pow(x, p as u64)).collect();
        f.primitive = (1..n as u16)
            .find(|&g| f.multiplicative_order(g) == qq - 1)
            .expect("multiplicative group is cyclic");
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients little-endian.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn div(&self, a: u16, b: u16) -> u16 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut acc = 1u16;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: u16) -> u16 {
        self.frob[a as usize]
    }

    pub fn multiplicative_order(&self, a: u16) -> u32 {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u16 {
        n.rem_euclid(self.p as i64) as u16
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FieldTable::new(6).is_err());
        assert!(FieldTable::new(1024).is_err());
        assert!(FieldTable::new(1).is_err());
    }

    #[test]
    fn moduli_are_lex_smallest_low_to_high() {
        assert_eq!(FieldTable::new(4).unwrap().modulus(), &[1, 1, 1]);
        // x³+x²+1 has coefficient vector (1,0,1) < (1,1,0) of x³+x+1.
        assert_eq!(FieldTable::new(8).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(FieldTable::new(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FieldTable::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    assert_eq!(f.pow(a, q - 1), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.multiplicative_order(f.primitive()), q as u32 - 1);
        }
    }

    #[test]
    fn frobenius_fixes_prime_subfield_only() {
        for q in [4u64, 8, 9, 25, 27, 49, 125, 243, 256, 512] {
            let f = FieldTable::new(q).unwrap();
            let fixed: Vec<u16> = f.elements().filter(|&x| f.frobenius(x) == x).collect();
            assert_eq!(fixed, (0..f.p() as u16).collect::<Vec<_>>());
            for a in f.elements() {
                for b in f.elements().step_by(7) {
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }
}
