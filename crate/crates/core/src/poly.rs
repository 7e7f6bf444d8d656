//! Sparse multivariate polynomials with integer coefficients.
//!
//! Monomials are sorted `(variable, exponent)` lists so that polynomials in
//! many nominal variables stay compact when only a few occur.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Sorted by variable index, exponents nonzero.
pub type Monomial = Vec<(u32, u32)>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c.into());
        p
    }

    pub fn var(v: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![(v, 1)], BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(Poly { terms })
    }

    /// Evaluate over `Z`, variables looked up by `value`.
    pub fn eval(&self, value: &dyn Fn(u32) -> BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                t *= num_traits::pow::pow(value(v), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Evaluate modulo `modulus`, all arithmetic in `u128`.
    pub fn eval_mod(&self, modulus: u64, value: &dyn Fn(u32) -> u64) -> u64 {
        let m = modulus as u128;
        let mut acc: u128 = 0;
        for (mono, c) in &self.terms {
            let cm = c.mod_floor(&BigInt::from(modulus)).to_u64().unwrap() as u128;
            if cm == 0 {
                continue;
            }
            let mut t = cm;
            for &(v, e) in mono {
                t = t * pow_mod(value(v) as u128 % m, e, m) % m;
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % m;
        }
        acc as u64
    }

    /// Largest variable index occurring.
    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v)).max()
    }
}

fn pow_mod(mut b: u128, mut e: u32, m: u128) -> u128 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(|(v, e)| if *e == 1 { format!("x{v}") } else { format!("x{v}^{e}") }).collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_square() {
        let p = Poly::var(0).add(&Poly::var(1));
        let sq = p.pow(2);
        assert_eq!(sq.num_terms(), 3);
        let cross = sq.sub(&Poly::var(0).pow(2)).sub(&Poly::var(1).pow(2));
        assert_eq!(cross.div_exact(&BigInt::from(2)).unwrap(), Poly::var(0).mul(&Poly::var(1)));
        assert!(cross.div_exact(&BigInt::from(4)).is_none());
    }

    #[test]
    fn evaluation() {
        let p = Poly::var(0).pow(3).add(&Poly::constant(5).mul(&Poly::var(2)));
        let v = |i: u32| BigInt::from(i + 2);
        assert_eq!(p.eval(&v), BigInt::from(8 + 20));
        assert_eq!(p.eval_mod(7, &|i| (i + 2) as u64), 28 % 7);
    }
}
