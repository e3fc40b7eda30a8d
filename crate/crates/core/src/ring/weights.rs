//! Weight functions used by the inner products and shift operators: the Weyl
//! denominator δ, the truncated theta-style product Δ_k, the symmetric
//! measure μ_k, and the binomial products φ_k.
//!
//! All of them are honest Laurent polynomials (μ_k has exponents in the root
//! lattice even though its factors involve half roots), so constant terms and
//! inner products stay inside exact arithmetic.

use alloc::vec::Vec;

use super::laurent::{qpow, LaurentPoly};
use crate::rootsys::{KParam, RootSystem};

fn half_root_exp(rs: &RootSystem, p: usize) -> Vec<i64> {
    rs.positive_roots[p]
        .exp
        .iter()
        .map(|&e| {
            debug_assert!(e % 2 == 0);
            e / 2
        })
        .collect()
}

/// The factors `q^{k_α} X^{α/2} - q^{-k_α} X^{-α/2}`, one per positive root.
pub fn phi_k_factors(rs: &RootSystem, k: &KParam) -> Vec<LaurentPoly> {
    (0..rs.positive_roots.len())
        .map(|p| {
            let ka = k.of(rs.positive_roots[p].half_len_sq);
            let h = half_root_exp(rs, p);
            let mut f = LaurentPoly::monomial(h.clone(), qpow(rs, ka));
            f.add_term(h.iter().map(|&e| -e).collect(), -qpow(rs, -ka));
            f
        })
        .collect()
}

/// `φ_k = Π_{α>0} (q^{k_α} X^{α/2} - q^{-k_α} X^{-α/2})`.
pub fn phi_k(rs: &RootSystem, k: &KParam) -> LaurentPoly {
    product(rs, phi_k_factors(rs, k))
}

/// The Weyl denominator `δ = φ_0 = Π_{α>0} (X^{α/2} - X^{-α/2})` in factored
/// form.
pub fn weyl_denominator_factors(rs: &RootSystem) -> Vec<LaurentPoly> {
    phi_k_factors(rs, &KParam::equal(0))
}

/// The Weyl denominator as a single polynomial.
pub fn weyl_denominator(rs: &RootSystem) -> LaurentPoly {
    phi_k(rs, &KParam::equal(0))
}

/// `Δ_k = Π_{α∈R} Π_{i=0}^{k_α-1} (1 - q^{2i} X^α)`; requires `k ≥ 0`.
pub fn delta_k(rs: &RootSystem, k: &KParam) -> LaurentPoly {
    assert!(
        k.k_long >= 0 && k.k_short >= 0,
        "truncated product needs nonnegative multiplicity parameters"
    );
    let rank = rs.rank;
    let mut acc = LaurentPoly::one(rank);
    for p in 0..rs.positive_roots.len() {
        let ka = k.of(rs.positive_roots[p].half_len_sq);
        let e: Vec<i64> = rs.positive_roots[p].exp.clone();
        let eneg: Vec<i64> = e.iter().map(|&x| -x).collect();
        for i in 0..ka {
            for exp in [&e, &eneg] {
                let mut f = LaurentPoly::one(rank);
                f.add_term(exp.clone(), -qpow(rs, 2 * i));
                acc = &acc * &f;
            }
        }
    }
    acc
}

/// `μ_k = Π_{α>0} Π_{i=1-k_α}^{k_α} (q^i X^{α/2} - q^{-i} X^{-α/2})`;
/// requires `k ≥ 0`. Its monomials all lie in the root lattice.
pub fn mu_k(rs: &RootSystem, k: &KParam) -> LaurentPoly {
    assert!(
        k.k_long >= 0 && k.k_short >= 0,
        "symmetric measure needs nonnegative multiplicity parameters"
    );
    let mut acc = LaurentPoly::one(rs.rank);
    for p in 0..rs.positive_roots.len() {
        let ka = k.of(rs.positive_roots[p].half_len_sq);
        let h = half_root_exp(rs, p);
        let hneg: Vec<i64> = h.iter().map(|&e| -e).collect();
        for i in (1 - ka)..=ka {
            let mut f = LaurentPoly::monomial(h.clone(), qpow(rs, i));
            f.add_term(hneg.clone(), -qpow(rs, -i));
            acc = &acc * &f;
        }
    }
    acc
}

fn product(rs: &RootSystem, factors: Vec<LaurentPoly>) -> LaurentPoly {
    let mut acc = LaurentPoly::one(rs.rank);
    for f in factors {
        acc = &acc * &f;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::scalar::Scalar;
    use crate::rootsys::CartanKind;

    fn qp(rs: &RootSystem, j: i64) -> Scalar {
        qpow(rs, j)
    }

    #[test]
    fn truncated_product_constant_terms() {
        let rs = RootSystem::new(CartanKind::A, 1).unwrap();
        // k = 1: (1 - X)(1 - X^{-1}) has constant term 2.
        assert_eq!(delta_k(&rs, &KParam::equal(1)).ct(), Scalar::from_int(2));
        // k = 2: constant term 2 + 2q^2 + 2q^4.
        let d2 = delta_k(&rs, &KParam::equal(2));
        let expected =
            &Scalar::from_int(2) * &(&(&Scalar::one() + &qp(&rs, 2)) + &qp(&rs, 4));
        assert_eq!(d2.ct(), expected);
        assert!(d2.is_symmetric(&rs));
    }

    #[test]
    fn measure_lives_in_root_lattice() {
        for (kind, rank, kl, ks) in [
            (CartanKind::A, 2usize, 2i64, 2i64),
            (CartanKind::B, 2, 1, 2),
            (CartanKind::G, 2, 1, 1),
        ] {
            let rs = RootSystem::new(kind, rank).unwrap();
            let m = mu_k(&rs, &KParam::new(kl, ks));
            for (e, _) in m.terms() {
                let w = rs.from_exp(e);
                assert!(rs.in_root_lattice(&w), "exponent {:?} outside root lattice", e);
            }
        }
    }

    #[test]
    fn measure_matches_scaled_quotient() {
        // μ_k · δ agrees with Δ_k · φ_k up to the sign (-1)^{Σ k_α} and the
        // q-power q^{Σ k_α(k_α-1)}.
        for (kind, rank, kl, ks) in [
            (CartanKind::A, 1usize, 2i64, 2i64),
            (CartanKind::A, 1, 3, 3),
            (CartanKind::A, 2, 2, 2),
            (CartanKind::B, 2, 1, 2),
        ] {
            let rs = RootSystem::new(kind, rank).unwrap();
            let k = KParam::new(kl, ks);
            let mut sign = 1i64;
            let mut qexp = 0i64;
            for p in 0..rs.positive_roots.len() {
                let ka = k.of(rs.positive_roots[p].half_len_sq);
                sign = if ka % 2 == 0 { sign } else { -sign };
                qexp += ka * (ka - 1);
            }
            let lhs = &delta_k(&rs, &k) * &phi_k(&rs, &k);
            let rhs = (&mu_k(&rs, &k) * &weyl_denominator(&rs))
                .scaled(&(&Scalar::from_int(sign) * &qpow(&rs, qexp)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn denominator_division() {
        // δ divides φ-type antisymmetric products exactly; quotient of
        // δ_{k=1 numerator} by factored δ works factor by factor.
        let rs = RootSystem::new(CartanKind::A, 2).unwrap();
        let k = KParam::equal(1);
        let num = &delta_k(&rs, &k) * &phi_k(&rs, &k);
        let q = num
            .exact_div_many(&weyl_denominator_factors(&rs))
            .unwrap();
        assert_eq!(q, mu_k(&rs, &k).scaled(&Scalar::from_int(-1)));
    }
}
