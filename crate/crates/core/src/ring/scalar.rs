//! Exact coefficient arithmetic: rational functions in one formal variable
//! `u` with unbounded integer coefficients.
//!
//! A [`Scalar`] is a reduced fraction `num/den` of integer polynomials in
//! `u`. The parameter q of the surrounding theory is a fixed integer power of
//! `u` (the power depends on the root system and is chosen by the callers),
//! so fractional powers of q never need a separate representation: every
//! exponent that can occur is an integer exponent of `u`.
//!
//! Canonical form, maintained by every constructor and operation: `num` and
//! `den` have no common factor, the leading coefficient of `den` is positive,
//! and zero is `0/1`. Equality is therefore structural.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial in `u`. `coeffs[i]` is the coefficient of `u^i`;
/// the last entry is nonzero, and the zero polynomial has no entries.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            ZPoly::zero()
        } else {
            ZPoly { coeffs: vec![c] }
        }
    }

    /// `c * u^exp`.
    pub fn monomial(c: BigInt, exp: usize) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        ZPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of a nonzero polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn mul_pow_u(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Coefficients in reverse order: `u^d * p(1/u)` for `d = deg p`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        ZPoly::from_coeffs(coeffs)
    }

    /// Nonnegative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn scaled(&self, c: &BigInt) -> Self {
        ZPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn divided_by_int(&self, c: &BigInt) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.divided_by_int(&c)
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn divide_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero(), "division of ZPoly by zero");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = d.degree().unwrap();
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = d.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            let c = &rem[i];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
            debug_assert!(rem[i].is_zero());
            quot[i - dd] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder: the remainder of `lc(d)^(deg self - deg d + 1) * self`
    /// divided by `d`.
    fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let mut r = self.clone();
        let lead = d.leading_coeff().unwrap().clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.leading_coeff().unwrap().clone();
            // r <- lc(d) * r - c * u^(dr-dd) * d
            let mut next = r.scaled(&lead);
            let shifted = d.mul_pow_u(dr - dd).scaled(&c);
            next = (&next) - (&shifted);
            debug_assert!(next.degree().map_or(true, |nd| nd < dr));
            r = next;
        }
        r
    }

    /// Polynomial gcd, primitive-PRS, normalized to positive leading
    /// coefficient.
    pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
        if a.is_zero() {
            return b.abs_normalized();
        }
        if b.is_zero() {
            return a.abs_normalized();
        }
        let c = a.content().gcd(&b.content());
        let (mut p, mut q) = if a.degree() >= b.degree() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        loop {
            let r = p.pseudo_rem(&q);
            if r.is_zero() {
                return q.primitive().scaled(&c).abs_normalized();
            }
            p = q;
            q = r.primitive();
        }
    }

    fn abs_normalized(&self) -> Self {
        match self.leading_coeff() {
            Some(l) if l.sign() == Sign::Minus => -self,
            _ => self.clone(),
        }
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        ZPoly::from_coeffs(coeffs)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.sign() == Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if e == 1 {
                    write!(f, "u")?;
                } else {
                    write!(f, "u^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Reduced fraction of two [`ZPoly`]s: an element of Q(u).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: ZPoly,
    den: ZPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: ZPoly::constant(BigInt::from(n)),
            den: ZPoly::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar {
            num: ZPoly::constant(n),
            den: ZPoly::one(),
        }
    }

    /// Rational constant `p/q`.
    pub fn from_fraction(p: BigInt, q: BigInt) -> Self {
        Scalar::from_polys(ZPoly::constant(p), ZPoly::constant(q))
    }

    /// `u^e`, for any sign of `e`.
    pub fn u_pow(e: i64) -> Self {
        if e >= 0 {
            Scalar {
                num: ZPoly::monomial(BigInt::one(), e as usize),
                den: ZPoly::one(),
            }
        } else {
            Scalar {
                num: ZPoly::one(),
                den: ZPoly::monomial(BigInt::one(), (-e) as usize),
            }
        }
    }

    /// Builds and canonicalizes `num/den`. Panics if `den` is zero.
    pub fn from_polys(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "scalar with zero denominator");
        let mut s = Scalar { num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = ZPoly::one();
            return;
        }
        let g = ZPoly::gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num = self.num.divide_exact(&g).expect("gcd divides numerator");
            self.den = self.den.divide_exact(&g).expect("gcd divides denominator");
        }
        if self.den.leading_coeff().unwrap().sign() == Sign::Minus {
            self.num = -&self.num;
            self.den = -&self.den;
        }
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        Scalar::from_polys(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inverse().pow(-e);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The involution `u -> 1/u`.
    pub fn iota(&self) -> Self {
        if self.is_zero() {
            return Scalar::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let rn = self.num.reversed();
        let rd = self.den.reversed();
        if dd >= dn {
            Scalar::from_polys(rn.mul_pow_u(dd - dn), rd)
        } else {
            Scalar::from_polys(rn, rd.mul_pow_u(dn - dd))
        }
    }

    /// If the scalar is `(a/b) * u^e` for integers `a, b`, returns
    /// `(a, b, e)` with `a/b` reduced and `b > 0`.
    pub fn as_u_monomial(&self) -> Option<(BigInt, BigInt, i64)> {
        if self.is_zero() {
            return None;
        }
        let vn = self.num.valuation().unwrap();
        let vd = self.den.valuation().unwrap();
        if self.num.degree() != Some(vn) || self.den.degree() != Some(vd) {
            return None;
        }
        Some((
            self.num.coeffs()[vn].clone(),
            self.den.coeffs()[vd].clone(),
            vn as i64 - vd as i64,
        ))
    }

    /// Canonical text form, e.g. `u^4 - 2*u^2 + 1` or `(u^2 + 1)/(2*u)`.
    pub fn to_text(&self) -> String {
        use alloc::format;
        if self.den.is_one() {
            format!("{}", self.num)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::from_polys(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        // Cross-reduce first to keep the final gcd cheap.
        let g1 = ZPoly::gcd(&self.num, &rhs.den);
        let g2 = ZPoly::gcd(&rhs.num, &self.den);
        let n1 = self.num.divide_exact(&g1).unwrap();
        let d2 = rhs.den.divide_exact(&g1).unwrap();
        let n2 = rhs.num.divide_exact(&g2).unwrap();
        let d1 = self.den.divide_exact(&g2).unwrap();
        Scalar::from_polys(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inverse()
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
