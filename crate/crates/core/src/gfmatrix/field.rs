use crate::error::{Error, Result};
use crate::util::is_prime;

/// Largest field order for which full addition and multiplication tables are built.
pub const MAX_FIELD_ORDER: u64 = 1024;

/// `GF(p^a)` presented as `GF(p)[x] / (modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u64,
    pub a: u32,
    /// Monic modulus, constant term first; length `a + 1`.
    pub modulus: Vec<u64>,
}

/// An element of a [`Field`], encoded as `Σ cᵢ pⁱ` over its coefficient list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u32);

/// Table-driven arithmetic for one finite field.
#[derive(Debug, Clone)]
pub struct Field {
    desc: FieldDescriptor,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Field descriptor with the lexicographically smallest monic irreducible
/// modulus, comparing coefficient tuples from the constant term up.
pub fn make_field(p: u64, a: u32) -> Result<FieldDescriptor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a == 0 {
        return Err(Error::Semantic("field degree must be positive".into()));
    }
    let q = p
        .checked_pow(a)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or_else(|| Error::CapExceeded {
            what: format!("field order {p}^{a}"),
            cap: MAX_FIELD_ORDER as u128,
        })?;
    for t in 0..q {
        // c0 is the most significant digit of t
        let mut coeffs = vec![0u64; a as usize + 1];
        let mut rest = t;
        for i in (0..a as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[a as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return Ok(FieldDescriptor { p, a, modulus: coeffs });
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Monic `f` of degree `d` is irreducible iff no monic polynomial of degree
/// `1..=d/2` divides it.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        let count = p.pow(k as u32);
        for t in 0..count {
            let mut g = vec![0u64; k + 1];
            let mut rest = t;
            for c in g.iter_mut().take(k) {
                *c = rest % p;
                rest /= p;
            }
            g[k] = 1;
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` modulo monic `g`, length `deg g`.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p * p - lead * gc % p) % p;
            }
        }
        r.pop();
    }
    r.resize(dg, 0);
    r
}

impl Field {
    pub fn new(p: u64, a: u32) -> Result<Self> {
        Ok(Self::from_descriptor(make_field(p, a)?))
    }

    pub fn from_descriptor(desc: FieldDescriptor) -> Self {
        let p = desc.p;
        let a = desc.a as usize;
        let q = p.pow(desc.a) as u32;
        let coeffs: Vec<Vec<u64>> = (0..q).map(|x| decode(x, p, a)).collect();
        let mut add = vec![0u32; (q * q) as usize];
        let mut mul = vec![0u32; (q * q) as usize];
        for x in 0..q as usize {
            for y in 0..q as usize {
                let sum: Vec<u64> = coeffs[x].iter().zip(&coeffs[y]).map(|(u, v)| (u + v) % p).collect();
                add[x * q as usize + y] = encode(&sum, p);
                let mut prod = vec![0u64; 2 * a - 1];
                for (i, u) in coeffs[x].iter().enumerate() {
                    for (j, v) in coeffs[y].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + u * v) % p;
                    }
                }
                mul[x * q as usize + y] = encode(&poly_rem(&prod, &desc.modulus, p), p);
            }
        }
        let mut neg = vec![0u32; q as usize];
        let mut inv = vec![0u32; q as usize];
        for x in 0..q {
            for y in 0..q {
                if add[(x * q + y) as usize] == 0 {
                    neg[x as usize] = y;
                }
                if mul[(x * q + y) as usize] == 1 {
                    inv[x as usize] = y;
                }
            }
        }
        Field {
            desc,
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    /// Coefficients `c0..c_{a-1}` of the residue-class representative.
    pub fn coeffs(&self, x: Fq) -> Vec<u64> {
        decode(x.0, self.desc.p, self.desc.a as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fq> {
        if coeffs.len() != self.desc.a as usize || coeffs.iter().any(|&c| c >= self.desc.p) {
            return Err(Error::Semantic(format!(
                "coefficients {coeffs:?} do not describe an element of GF({})",
                self.q
            )));
        }
        Ok(Fq(encode(coeffs, self.desc.p)))
    }

    /// `x^k` as a field element, i.e. the k-th polynomial basis vector for `k < a`.
    pub fn basis(&self, k: u32) -> Fq {
        let mut acc = self.one();
        let x = if self.desc.a == 1 {
            self.one()
        } else {
            Fq(self.desc.p as u32)
        };
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    #[inline]
    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        Fq(self.add[(x.0 * self.q + y.0) as usize])
    }

    #[inline]
    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        Fq(self.mul[(x.0 * self.q + y.0) as usize])
    }

    #[inline]
    pub fn neg(&self, x: Fq) -> Fq {
        Fq(self.neg[x.0 as usize])
    }

    #[inline]
    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: Fq) -> Option<Fq> {
        (x.0 != 0).then(|| Fq(self.inv[x.0 as usize]))
    }

    pub fn multiplicative_order(&self, x: Fq) -> Option<u32> {
        if x.0 == 0 {
            return None;
        }
        let mut k = 1;
        let mut y = x;
        while y != self.one() {
            y = self.mul(y, x);
            k += 1;
        }
        Some(k)
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fq {
        self.elements()
            .skip(1)
            .find(|&x| self.multiplicative_order(x) == Some(self.q - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

fn decode(mut x: u32, p: u64, a: usize) -> Vec<u64> {
    let mut c = vec![0u64; a];
    for ci in c.iter_mut() {
        *ci = x as u64 % p;
        x /= p as u32;
    }
    c
}

fn encode(coeffs: &[u64], p: u64) -> u32 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}
