//! Sparse Laurent polynomials over [`Scalar`] in the monomial basis
//! `X^μ`, μ ∈ ½P.
//!
//! Exponents are "doubled fundamental coordinates": `e_i(μ) = 2(μ, α_i^∨)`,
//! an integer vector for any μ in the half-weight lattice. A full weight
//! (μ ∈ P) therefore has even coordinates, and the half roots appearing in
//! Weyl denominators have the integer vectors `α.exp / 2`.
//!
//! Formal powers of q are powers of `u` inside the scalars; `X^δ`-type
//! factors never appear explicitly (translations act through scalar q-shifts
//! on monomials).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use crate::rootsys::RootSystem;

/// Monomial exponent: doubled fundamental coordinates of a weight in ½P.
pub type Exp = Vec<i64>;

/// Errors from ring operations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingError {
    /// Exact division was requested but the divisor does not divide.
    NotDivisible,
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::NotDivisible => write!(f, "polynomial division is not exact"),
        }
    }
}

pub fn add_exp(a: &[i64], b: &[i64]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn neg_exp(a: &[i64]) -> Exp {
    a.iter().map(|x| -x).collect()
}

pub fn sub_exp(a: &[i64], b: &[i64]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `q^j` as a scalar, with q = u^D taken from the root system.
pub fn qpow(rs: &RootSystem, j: i64) -> Scalar {
    Scalar::u_pow(j * rs.q_denominator)
}

/// Sparse Laurent polynomial; never stores zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(alloc::vec![0; rank], Scalar::one())
    }

    pub fn monomial(exp: Exp, coeff: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, Scalar)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term.
    pub fn ct(&self) -> Scalar {
        match self.terms.iter().next() {
            Some((e, _)) => self.coeff(&alloc::vec![0; e.len()]),
            None => Scalar::zero(),
        }
    }

    pub fn add_term(&mut self, exp: Exp, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                let s = &*c + &coeff;
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * s))
                .collect(),
        }
    }

    /// Multiplication by a single monomial.
    pub fn mul_monomial(&self, exp: &[i64], coeff: &Scalar) -> Self {
        if coeff.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exp(e, exp), c * coeff))
                .collect(),
        }
    }

    /// The involution `X^μ -> X^{-μ}` (q untouched).
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (neg_exp(e), c.clone()))
                .collect(),
        }
    }

    /// The involution `q -> q^{-1}` (monomials untouched).
    pub fn iota(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.iota()))
                .collect(),
        }
    }

    /// Action of a finite Weyl element on monomials.
    pub fn w_action(&self, rs: &RootSystem, w: usize) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (rs.apply_weyl_exp(w, e), c.clone()))
                .collect(),
        }
    }

    /// Whether every simple reflection fixes the polynomial.
    pub fn is_symmetric(&self, rs: &RootSystem) -> bool {
        (0..rs.rank).all(|i| self.w_action(rs, rs.simple_reflection(i)) == *self)
    }

    /// Transforms each monomial independently.
    pub fn map_monomials<F: FnMut(&Exp, &Scalar) -> (Exp, Scalar)>(&self, mut f: F) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let (e2, c2) = f(e, c);
            out.add_term(e2, c2);
        }
        out
    }

    /// Constant term of `self * other` without forming the product.
    pub fn ct_of_product(&self, other: &LaurentPoly) -> Scalar {
        let (small, large) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Scalar::zero();
        for (e, c) in &small.terms {
            let oc = large.terms.get(&neg_exp(e));
            if let Some(oc) = oc {
                acc = &acc + &(c * oc);
            }
        }
        acc
    }

    fn bounds(&self) -> Option<(Exp, Exp)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for e in it {
            for (i, &x) in e.iter().enumerate() {
                if x < lo[i] {
                    lo[i] = x;
                }
                if x > hi[i] {
                    hi[i] = x;
                }
            }
        }
        Some((lo, hi))
    }

    /// Exact division. The quotient's support per coordinate is pinned down
    /// exactly by the supports of dividend and divisor (lowest and highest
    /// graded parts of a product multiply in a domain), which both guards
    /// against non-exact input and guarantees termination.
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        assert!(!g.is_zero(), "exact division by zero polynomial");
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (flo, fhi) = self.bounds().unwrap();
        let (glo, ghi) = g.bounds().unwrap();
        let qlo = sub_exp(&flo, &glo);
        let qhi = sub_exp(&fhi, &ghi);
        if qlo.iter().zip(&qhi).any(|(l, h)| l > h) {
            return Err(RingError::NotDivisible);
        }
        let (ge, gc) = g.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            let te = sub_exp(re, ge);
            if te.iter().zip(qlo.iter().zip(&qhi)).any(|(t, (l, h))| t < l || t > h) {
                return Err(RingError::NotDivisible);
            }
            let tc = rc / gc;
            for (e, c) in &g.terms {
                let delta = &(-&tc) * c;
                rem.add_term(add_exp(e, &te), delta);
            }
            quot.add_term(te, tc);
        }
        Ok(quot)
    }

    /// Division by a product given in factored form.
    pub fn exact_div_many(&self, factors: &[LaurentPoly]) -> Result<LaurentPoly, RingError> {
        let mut cur = self.clone();
        for g in factors {
            cur = cur.exact_div(g)?;
        }
        Ok(cur)
    }

    /// Renders terms in exponent order, for diagnostics and reports.
    pub fn to_text(&self) -> String {
        use alloc::format;
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("({})*X{:?}", c.to_text(), e));
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        let (small, large) = if self.num_terms() <= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                out.add_term(add_exp(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanKind, RootSystem};

    fn a1() -> RootSystem {
        RootSystem::new(CartanKind::A, 1).unwrap()
    }

    fn mono(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(alloc::vec![e], Scalar::one())
    }

    #[test]
    fn arithmetic_and_ct() {
        let f = &mono(4) + &mono(-4);
        let g = &mono(4) - &mono(-4);
        let p = &f * &g;
        assert_eq!(p, &mono(8) - &mono(-8));
        assert!((&f - &f).is_zero());
        assert_eq!(p.ct(), Scalar::zero());
        assert_eq!((&f * &f.bar()).ct(), Scalar::from_int(2));
        assert_eq!(f.ct_of_product(&f.bar()), Scalar::from_int(2));
    }

    #[test]
    fn half_root_division() {
        // (X - X^{-1}) / (X^{1/2} - X^{-1/2}) = X^{1/2} + X^{-1/2},
        // X = X^α, exponents doubled fundamental coordinates.
        let f = &mono(4) - &mono(-4);
        let g = &mono(2) - &mono(-2);
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q, &mono(2) + &mono(-2));
        // Non-divisible input is rejected.
        let bad = &mono(4) + &mono(0);
        assert_eq!(bad.exact_div(&g), Err(RingError::NotDivisible));
        let bad2 = &mono(3) - &mono(-3);
        assert_eq!(bad2.exact_div(&g), Err(RingError::NotDivisible));
    }

    #[test]
    fn division_round_trip_higher_rank() {
        let rs = RootSystem::new(CartanKind::B, 2).unwrap();
        let mk = |e: &[i64]| LaurentPoly::monomial(e.to_vec(), Scalar::one());
        let f = &(&mk(&[2, 0]) - &mk(&[0, 2])) * &(&mk(&[-2, 2]) + &mk(&[4, -2]));
        let g = &mk(&[2, 0]) - &mk(&[0, 2]);
        assert_eq!(f.exact_div(&g).unwrap(), &mk(&[-2, 2]) + &mk(&[4, -2]));
        let _ = rs;
    }

    #[test]
    fn symmetry_and_actions() {
        let rs = a1();
        let f = &mono(2) + &mono(-2);
        assert!(f.is_symmetric(&rs));
        assert!(!mono(2).is_symmetric(&rs));
        let s = rs.simple_reflection(0);
        assert_eq!(mono(2).w_action(&rs, s), mono(-2));
        assert_eq!(f.bar(), f);
        let g = mono(2).scaled(&qpow(&rs, 1));
        assert_eq!(g.iota(), mono(2).scaled(&qpow(&rs, -1)));
    }
}
