//! Classical big Witt vectors over `Z` and `Z/m`.
//!
//! Over `Z` every operation goes through ghost components, which are
//! injective there. Over `Z/m` the universal polynomials from [`universal`]
//! are evaluated directly.

mod ring;
pub mod universal;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::divisors;
use crate::error::{Error, Result};

pub use ring::BaseRing;
use universal::{compiled, WittOp};

/// A finite divisor-closed set of positive integers, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncationSet {
    elements: Vec<u64>,
}

impl TruncationSet {
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() == Some(&0) {
            return Err(Error::Invalid("truncation sets contain positive integers".into()));
        }
        for &d in &elements {
            for e in divisors(d) {
                if elements.binary_search(&e).is_err() {
                    return Err(Error::Invalid(format!("truncation set contains {d} but not its divisor {e}")));
                }
            }
        }
        Ok(TruncationSet { elements })
    }

    /// `<n>`, the divisors of `n`.
    pub fn divisors_of(n: u64) -> Self {
        TruncationSet { elements: divisors(n) }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.elements.binary_search(&d).is_ok()
    }

    pub fn index_of(&self, d: u64) -> Option<usize> {
        self.elements.binary_search(&d).ok()
    }

    /// `S/r = { d : r d in S }`.
    pub fn divided_by(&self, r: u64) -> Self {
        TruncationSet { elements: self.elements.iter().filter(|&&d| d % r == 0).map(|&d| d / r).collect() }
    }

    pub fn is_subset(&self, other: &TruncationSet) -> bool {
        self.elements.iter().all(|&d| other.contains(d))
    }
}

/// An element of `W_S(R)`, components listed in the order of `S`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    truncation: TruncationSet,
    ring: BaseRing,
    components: Vec<BigInt>,
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "W[{}]({})", self.ring, parts.join(", "))
    }
}

impl WittVector {
    pub fn new(truncation: TruncationSet, ring: BaseRing, components: Vec<BigInt>) -> Result<Self> {
        if components.len() != truncation.len() {
            return Err(Error::Invalid(format!("{} components for a truncation set of size {}", components.len(), truncation.len())));
        }
        let components = components.iter().map(|c| ring.reduce(c)).collect();
        Ok(WittVector { truncation, ring, components })
    }

    pub fn from_i64(truncation: TruncationSet, ring: BaseRing, components: &[i64]) -> Result<Self> {
        Self::new(truncation, ring, components.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(truncation: TruncationSet, ring: BaseRing) -> Self {
        let components = vec![BigInt::zero(); truncation.len()];
        WittVector { truncation, ring, components }
    }

    pub fn one(truncation: TruncationSet, ring: BaseRing) -> Self {
        teichmuller(&BigInt::one(), truncation, ring)
    }

    pub fn truncation(&self) -> &TruncationSet {
        &self.truncation
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn components(&self) -> &[BigInt] {
        &self.components
    }

    pub fn component(&self, d: u64) -> &BigInt {
        &self.components[self.truncation.index_of(d).expect("index outside the truncation set")]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    /// Components as `u64`, for vectors over `Z/m`.
    pub fn residues(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.to_u64().expect("residue out of range")).collect()
    }

    /// Restrict to a smaller truncation set (the truncation map `R^S_T`).
    pub fn truncate(&self, t: &TruncationSet) -> Result<Self> {
        if !t.is_subset(&self.truncation) {
            return Err(Error::Invalid("target truncation set is not a subset".into()));
        }
        let components = t.elements().iter().map(|&d| self.component(d).clone()).collect();
        Ok(WittVector { truncation: t.clone(), ring: self.ring, components })
    }

    /// The vector over `Z` with the given ghost components, if it exists.
    pub fn from_ghost(truncation: TruncationSet, ghost: &[BigInt]) -> Option<Self> {
        let s = truncation.elements();
        let mut comps: Vec<BigInt> = Vec::with_capacity(s.len());
        for (i, &d) in s.iter().enumerate() {
            let mut rest = ghost[i].clone();
            for (j, &e) in s[..i].iter().enumerate() {
                if d % e == 0 {
                    rest -= BigInt::from(e) * num_traits::pow::pow(comps[j].clone(), (d / e) as usize);
                }
            }
            let (q, r) = rest.div_rem(&BigInt::from(d));
            if !r.is_zero() {
                return None;
            }
            comps.push(q);
        }
        Some(WittVector { truncation, ring: BaseRing::Integers, components: comps })
    }

    fn check_same(&self, other: &WittVector) -> Result<()> {
        if self.truncation != other.truncation || self.ring != other.ring {
            return Err(Error::ContextMismatch("truncation sets or base rings".into()));
        }
        Ok(())
    }

    fn via_polynomials(&self, other: Option<&WittVector>, op: WittOp, out: &TruncationSet) -> Self {
        let m = self.ring.modulus().expect("polynomial path is for Z/m");
        let a = self.residues();
        let b = other.map(|o| o.residues());
        let comps = out
            .elements()
            .iter()
            .map(|&d| {
                let poly = compiled(op, d, m);
                let value = |v: u32| {
                    let e = (v / 2) as u64;
                    let src = if v.is_multiple_of(2) { &a } else { b.as_ref().unwrap() };
                    src[self.truncation.index_of(e).unwrap()]
                };
                BigInt::from(poly.eval(value))
            })
            .collect();
        WittVector { truncation: out.clone(), ring: self.ring, components: comps }
    }
}

/// `gh_d(w) = sum_{e | d} e * w_e^{d/e}` for every `d` in the truncation set.
pub fn ghost(w: &WittVector) -> Result<Vec<BigInt>> {
    if !w.ring.is_torsion_free() {
        return Err(Error::TorsionRing(w.ring.to_string()));
    }
    Ok(ghost_unchecked(&w.truncation, &w.components))
}

fn ghost_unchecked(s: &TruncationSet, comps: &[BigInt]) -> Vec<BigInt> {
    s.elements()
        .iter()
        .map(|&d| {
            let mut acc = BigInt::zero();
            for (j, &e) in s.elements().iter().enumerate() {
                if e > d {
                    break;
                }
                if d % e == 0 {
                    acc += BigInt::from(e) * num_traits::pow::pow(comps[j].clone(), (d / e) as usize);
                }
            }
            acc
        })
        .collect()
}

fn solve_ghost(s: &TruncationSet, gh: &[BigInt]) -> WittVector {
    WittVector::from_ghost(s.clone(), gh).expect("ghost components outside the image: Witt integrality violated")
}

pub fn witt_add(a: &WittVector, b: &WittVector) -> Result<WittVector> {
    a.check_same(b)?;
    Ok(match a.ring {
        BaseRing::Integers => {
            let gh: Vec<BigInt> = ghost(a)?.into_iter().zip(ghost(b)?).map(|(x, y)| x + y).collect();
            solve_ghost(&a.truncation, &gh)
        }
        BaseRing::IntegersMod(_) => a.via_polynomials(Some(b), WittOp::Sum, &a.truncation),
    })
}

pub fn witt_mul(a: &WittVector, b: &WittVector) -> Result<WittVector> {
    a.check_same(b)?;
    Ok(match a.ring {
        BaseRing::Integers => {
            let gh: Vec<BigInt> = ghost(a)?.into_iter().zip(ghost(b)?).map(|(x, y)| x * y).collect();
            solve_ghost(&a.truncation, &gh)
        }
        BaseRing::IntegersMod(_) => a.via_polynomials(Some(b), WittOp::Product, &a.truncation),
    })
}

/// `k * w` for `k >= 0`, by doubling.
pub fn witt_scale(w: &WittVector, k: &BigInt) -> Result<WittVector> {
    if k < &BigInt::zero() {
        return match w.ring {
            BaseRing::Integers => {
                let gh: Vec<BigInt> = ghost(w)?.into_iter().map(|x| x * k).collect();
                Ok(solve_ghost(&w.truncation, &gh))
            }
            BaseRing::IntegersMod(_) => Err(Error::Invalid("negative multiple over Z/m".into())),
        };
    }
    let mut acc = WittVector::zero(w.truncation.clone(), w.ring);
    let mut base = w.clone();
    let mut k = k.clone();
    let two = BigInt::from(2);
    while !k.is_zero() {
        if k.is_odd() {
            acc = witt_add(&acc, &base)?;
        }
        k /= &two;
        if !k.is_zero() {
            base = witt_add(&base, &base)?;
        }
    }
    Ok(acc)
}

/// `F_r : W_S(R) -> W_{S/r}(R)`, characterized by `gh_d(F_r w) = gh_{rd}(w)`.
pub fn frobenius(r: u64, w: &WittVector) -> Result<WittVector> {
    if r == 0 {
        return Err(Error::Invalid("Frobenius index must be positive".into()));
    }
    let out = w.truncation.divided_by(r);
    Ok(match w.ring {
        BaseRing::Integers => {
            let gh = ghost(w)?;
            let shifted: Vec<BigInt> = out.elements().iter().map(|&d| gh[w.truncation.index_of(r * d).unwrap()].clone()).collect();
            solve_ghost(&out, &shifted)
        }
        BaseRing::IntegersMod(_) => w.via_polynomials(None, WittOp::Frobenius(r), &out),
    })
}

/// `V_r : W_{S/r}(R) -> W_S(R)`, `(V_r w)_d = w_{d/r}` when `r | d` and `0` otherwise.
pub fn verschiebung(r: u64, w: &WittVector, target: &TruncationSet) -> Result<WittVector> {
    if r == 0 || target.divided_by(r) != w.truncation {
        return Err(Error::Invalid(format!("V_{r} does not map into the requested truncation set")));
    }
    let components = target.elements().iter().map(|&d| if d % r == 0 { w.component(d / r).clone() } else { BigInt::zero() }).collect();
    Ok(WittVector { truncation: target.clone(), ring: w.ring, components })
}

/// The Teichmüller vector `[r] = (r, 0, ..., 0)`.
pub fn teichmuller(r: &BigInt, truncation: TruncationSet, ring: BaseRing) -> WittVector {
    let mut components = vec![BigInt::zero(); truncation.len()];
    if !components.is_empty() {
        components[0] = ring.reduce(r);
    }
    WittVector { truncation, ring, components }
}

/// `V_e(1)` in `W_S(R)` for `e` in `S`.
pub fn v_unit(e: u64, truncation: &TruncationSet, ring: BaseRing) -> WittVector {
    let components = truncation.elements().iter().map(|&d| BigInt::from((d == e) as u8)).collect();
    WittVector { truncation: truncation.clone(), ring, components }
}

/// Coordinates of a vector over `Z` in the basis `V_e(1)`, `e` in `S`.
///
/// Uses `gh_j = sum_{e | j} e c_e`; the divisions are exact because
/// `W_S(Z)` is spanned by these vectors.
pub fn v_coordinates(w: &WittVector) -> Result<Vec<BigInt>> {
    let gh = ghost(w)?;
    let s = w.truncation.elements();
    let mut c: Vec<BigInt> = Vec::with_capacity(s.len());
    for (i, &j) in s.iter().enumerate() {
        let mut rest = gh[i].clone();
        for (k, &e) in s[..i].iter().enumerate() {
            if j % e == 0 {
                rest -= BigInt::from(e) * &c[k];
            }
        }
        let (q, r) = rest.div_rem(&BigInt::from(j));
        assert!(r.is_zero(), "V_e(1) do not span at {j}");
        c.push(q);
    }
    Ok(c)
}

/// `sum_e c_e V_e(1)` in `W_S(R)`; over `Z/m` the coefficients must be nonnegative.
pub fn from_v_coordinates(coords: &[BigInt], truncation: &TruncationSet, ring: BaseRing) -> Result<WittVector> {
    let s = truncation.elements();
    match ring {
        BaseRing::Integers => {
            let gh: Vec<BigInt> = s.iter().map(|&j| s.iter().zip(coords).filter(|(&e, _)| j % e == 0).map(|(&e, c)| BigInt::from(e) * c).sum()).collect();
            Ok(solve_ghost(truncation, &gh))
        }
        BaseRing::IntegersMod(_) => {
            let mut acc = WittVector::zero(truncation.clone(), ring);
            for (&e, c) in s.iter().zip(coords) {
                if !c.is_zero() {
                    acc = witt_add(&acc, &witt_scale(&v_unit(e, truncation, ring), c)?)?;
                }
            }
            Ok(acc)
        }
    }
}

/// Reduce a vector over `Z` to `Z/m` componentwise (a ring map).
pub fn reduce_mod(w: &WittVector, m: u64) -> Result<WittVector> {
    let ring = BaseRing::integers_mod(m)?;
    WittVector::new(w.truncation.clone(), ring, w.components.clone())
}

/// Every vector of `W_S(Z/m)`.
pub fn enumerate(truncation: &TruncationSet, ring: BaseRing) -> Option<Vec<WittVector>> {
    let m = ring.modulus()?;
    let mut out = vec![Vec::<BigInt>::new()];
    for _ in 0..truncation.len() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut v2 = v.clone();
                    v2.push(BigInt::from(x));
                    v2
                })
            })
            .collect();
    }
    Some(out.into_iter().map(|c| WittVector { truncation: truncation.clone(), ring, components: c }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u64) -> TruncationSet {
        TruncationSet::divisors_of(n)
    }

    fn z(n: u64, c: &[i64]) -> WittVector {
        WittVector::from_i64(s(n), BaseRing::Integers, c).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn truncation_sets() {
        assert!(TruncationSet::new(vec![1, 2, 4]).is_ok());
        assert!(TruncationSet::new(vec![1, 4]).is_err());
        assert_eq!(s(12).divided_by(2).elements(), &[1, 2, 3, 6]);
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(ghost(&z(2, &[2, 0])).unwrap(), bi(&[2, 4]));
        assert_eq!(ghost(&z(2, &[0, 1])).unwrap(), bi(&[0, 2]));
        assert_eq!(ghost(&z(6, &[0, 0, 0, 0])).unwrap(), bi(&[0, 0, 0, 0]));
        let f2 = WittVector::from_i64(s(2), BaseRing::IntegersMod(2), &[1, 0]).unwrap();
        assert!(matches!(ghost(&f2), Err(Error::TorsionRing(_))));
    }

    #[test]
    fn addition_over_integers() {
        let one = z(2, &[1, 0]);
        assert_eq!(witt_add(&one, &one).unwrap(), z(2, &[2, -1]));
    }

    #[test]
    fn witt_f2_is_z4() {
        let ring = BaseRing::IntegersMod(2);
        let one = WittVector::one(s(2), ring);
        let mut acc = one.clone();
        let mut order = 1;
        while !acc.is_zero() {
            acc = witt_add(&acc, &one).unwrap();
            order += 1;
        }
        assert_eq!(order, 4);
    }

    #[test]
    fn frobenius_and_verschiebung() {
        let t3 = teichmuller(&BigInt::from(3), s(2), BaseRing::Integers);
        assert_eq!(frobenius(2, &t3).unwrap(), z(1, &[9]));
        let v = verschiebung(2, &z(1, &[1]), &s(2)).unwrap();
        assert_eq!(v, z(2, &[0, 1]));
        assert_eq!(frobenius(1, &v).unwrap(), v);
    }

    #[test]
    fn polynomial_path_agrees_with_lifting() {
        let ring = BaseRing::IntegersMod(4);
        let all = enumerate(&s(4), ring).unwrap();
        for (i, a) in all.iter().enumerate().step_by(5) {
            let b = &all[(i * 7 + 3) % all.len()];
            let lift = |w: &WittVector| WittVector::new(w.truncation.clone(), BaseRing::Integers, w.components.clone()).unwrap();
            let sum = reduce_mod(&witt_add(&lift(a), &lift(b)).unwrap(), 4).unwrap();
            let prod = reduce_mod(&witt_mul(&lift(a), &lift(b)).unwrap(), 4).unwrap();
            assert_eq!(witt_add(a, b).unwrap(), sum);
            assert_eq!(witt_mul(a, b).unwrap(), prod);
            let fr = reduce_mod(&frobenius(2, &lift(a)).unwrap(), 4).unwrap();
            assert_eq!(frobenius(2, a).unwrap(), fr);
        }
    }

    #[test]
    fn v_basis_round_trip() {
        let w = z(6, &[3, -1, 2, 5]);
        let c = v_coordinates(&w).unwrap();
        assert_eq!(from_v_coordinates(&c, &s(6), BaseRing::Integers).unwrap(), w);
        let t = teichmuller(&BigInt::from(2), s(6), BaseRing::Integers);
        let c = v_coordinates(&t).unwrap();
        assert_eq!(from_v_coordinates(&c, &s(6), BaseRing::Integers).unwrap(), t);
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let two = teichmuller(&BigInt::from(2), s(6), BaseRing::Integers);
        let three = teichmuller(&BigInt::from(3), s(6), BaseRing::Integers);
        let six = teichmuller(&BigInt::from(6), s(6), BaseRing::Integers);
        assert_eq!(witt_mul(&two, &three).unwrap(), six);
    }
}
