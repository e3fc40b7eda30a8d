//! Parameter-shift operators for equal multiplicities: the antisymmetric
//! multiplier `𝒳` built from half-root binomials, its translation-operator
//! counterparts `𝒴` and `𝒴̂` expanded over subsets of the positive roots, the
//! raising operator `G = 𝒳⁻¹𝒴` and lowering operator `Ĝ = 𝒴̂ ∘ (𝒳·)` that
//! move between the orthogonal bases at multiplicity `k` and `k+1`, the
//! closed-form constants they produce on that basis, and exact verification
//! of the squared-norm recursion the ladder implies.

use alloc::vec::Vec;

use crate::dahaop::{antisymmetrize, apply_fy, q_antisymmetrize};
use crate::macpoly::{
    d_k, inner_cherednik, inner_k, macdonald, norm_formula_rhs, q_rat_pow, Method,
};
use crate::ring::weights::{phi_k, phi_k_factors};
use crate::ring::{qpow, LaurentPoly, Scalar};
use crate::rootsys::{rat_int, KParam, RootSystem, Weight};

/// Cached data for the shift operators at a fixed equal multiplicity `k`.
///
/// The multiplier is `𝒳 = Π_{α>0} (q^{-k} X^{α/2} - q^{k} X^{-α/2})`, kept
/// both as a product and in factored form so divisions stay exact.  The
/// operators `𝒴 = Π_{α>0} (q^{-k} Y^{α^∨/2} - q^{k} Y^{-α^∨/2})` and
/// `𝒴̂ = Π_{α>0} (q^{k} Y^{α^∨/2} - q^{-k} Y^{-α^∨/2})` are stored expanded:
/// picking the first summand of each factor on a subset `E` of the positive
/// roots contributes the exponent `μ_E = Σ_{α∈E} α^∨ - ρ^∨`, which lies in
/// the coweight lattice, so every term is an honest translation operator even
/// though the individual factors involve half coweights.
pub struct ShiftContext {
    pub k: i64,
    /// Factors of the multiplier, one per positive root.
    pub x_factors: Vec<LaurentPoly>,
    /// The multiplier `𝒳` itself.
    pub x_mult: LaurentPoly,
    /// Terms `(μ_E, (-1)^{|Eᶜ|} q^{k(|Eᶜ|-|E|)})` of `𝒴`.
    pub y_terms: Vec<(Weight, Scalar)>,
    /// Terms `(μ_E, (-1)^{|Eᶜ|} q^{-k(|Eᶜ|-|E|)})` of `𝒴̂`.
    pub yhat_terms: Vec<(Weight, Scalar)>,
}

impl ShiftContext {
    pub fn new(rs: &RootSystem, k: i64) -> Self {
        assert!(k >= 1, "shift operators act between positive multiplicities");
        let kneg = KParam::equal(-k);
        let x_factors = phi_k_factors(rs, &kneg);
        let x_mult = phi_k(rs, &kneg);
        let np = rs.positive_roots.len();
        assert!(np < 20, "subset expansion grows as 2^{{|R⁺|}}");
        let mut y_terms = Vec::with_capacity(1usize << np);
        let mut yhat_terms = Vec::with_capacity(1usize << np);
        for mask in 0u32..(1u32 << np) {
            let mut mu = rs.rho_vee.scaled(&rat_int(-1));
            let mut inside = 0i64;
            for (p, root) in rs.positive_roots.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    mu = &mu + &root.coroot_weight();
                    inside += 1;
                }
            }
            assert!(rs.in_coweight_lattice(&mu), "subset exponent stays in P^∨");
            let outside = np as i64 - inside;
            let sign = Scalar::from_int(if outside % 2 == 0 { 1 } else { -1 });
            y_terms.push((mu.clone(), &sign * &qpow(rs, k * (outside - inside))));
            yhat_terms.push((mu, &sign * &qpow(rs, -k * (outside - inside))));
        }
        let ctx = ShiftContext {
            k,
            x_factors,
            x_mult,
            y_terms,
            yhat_terms,
        };
        ctx.check_expansion(rs);
        ctx
    }

    /// Re-evaluates both expansions on sample eigenvalues `Y^μ ↦ q^{2(μ,ν)}`
    /// and compares against the factored products they came from.
    fn check_expansion(&self, rs: &RootSystem) {
        let probes = [rs.rho.clone(), rs.rho.scaled(&rat_int(2))];
        for nu in &probes {
            for (hat, terms) in [(false, &self.y_terms), (true, &self.yhat_terms)] {
                let mut sum = Scalar::zero();
                for (mu, c) in terms.iter() {
                    sum = &sum + &(c * &q_rat_pow(rs, &(rs.inner(mu, nu) * rat_int(2))));
                }
                let kk = if hat { self.k } else { -self.k };
                let mut prod = Scalar::one();
                for root in &rs.positive_roots {
                    let a = rs.inner(&root.coroot_weight(), nu);
                    let f = &(&qpow(rs, kk) * &q_rat_pow(rs, &a))
                        - &(&qpow(rs, -kk) * &q_rat_pow(rs, &-&a));
                    prod = &prod * &f;
                }
                assert_eq!(sum, prod, "subset expansion matches the factored product");
            }
        }
    }

    /// `𝒴 f` (or `𝒴̂ f` when `hat` is set): the signed sum of translation
    /// operators applied in the polynomial representation at multiplicity `k`.
    pub fn apply_y_product(&self, rs: &RootSystem, hat: bool, f: &LaurentPoly) -> LaurentPoly {
        let kp = KParam::equal(self.k);
        let terms = if hat { &self.yhat_terms } else { &self.y_terms };
        apply_fy(rs, &kp, terms, f)
    }

    /// Raising operator `G f = 𝒳^{-1}(𝒴 f)`, sending Weyl-invariant
    /// polynomials at multiplicity `k` to Weyl-invariant polynomials at
    /// `k+1`.  The division is exact on invariant input — `𝒴 f` always lands
    /// in `𝒳 · ℂ_q[X]^W` — so a failed division means a bug and panics.
    pub fn apply_g(&self, rs: &RootSystem, f: &LaurentPoly) -> LaurentPoly {
        debug_assert!(f.is_symmetric(rs));
        let num = self.apply_y_product(rs, false, f);
        if num.is_zero() {
            return num;
        }
        num.exact_div_many(&self.x_factors)
            .expect("raised polynomial is divisible by the antisymmetric multiplier")
    }

    /// Lowering operator `Ĝ f = 𝒴̂ (𝒳 f)`, sending Weyl-invariant
    /// polynomials at multiplicity `k+1` back to multiplicity `k`.
    pub fn apply_ghat(&self, rs: &RootSystem, f: &LaurentPoly) -> LaurentPoly {
        self.apply_y_product(rs, true, &(&self.x_mult * f))
    }
}

/// Constant attached to the raising operator on the orthogonal basis:
/// `c_k(λ) = Π_{α>0} (q^{-k+(α^∨,λ+(k+1)ρ)} - q^{k-(α^∨,λ+(k+1)ρ)})`, so that
/// `G` maps the basis element at weight `λ+ρ` and multiplicity `k` to
/// `q^{k|R⁺|} c_k(λ)` times the one at weight `λ` and multiplicity `k+1`.
pub fn c_k(rs: &RootSystem, k: i64, lambda: &Weight) -> Scalar {
    let shift = lambda + &rs.rho.scaled(&rat_int(k + 1));
    let mut out = Scalar::one();
    for root in &rs.positive_roots {
        let a = rs.inner(&root.coroot_weight(), &shift);
        let f = &q_rat_pow(rs, &(&a - &rat_int(k))) - &q_rat_pow(rs, &(rat_int(k) - &a));
        out = &out * &f;
    }
    out
}

/// Constant attached to the lowering operator:
/// `ĉ_k(λ) = Π_{α>0} (q^{k+(α^∨,λ+(k+1)ρ)} - q^{-k-(α^∨,λ+(k+1)ρ)})`, so that
/// `Ĝ` maps the basis element at weight `λ` and multiplicity `k+1` to
/// `q^{-k|R⁺|} ĉ_k(λ)` times the one at weight `λ+ρ` and multiplicity `k`.
pub fn chat_k(rs: &RootSystem, k: i64, lambda: &Weight) -> Scalar {
    let shift = lambda + &rs.rho.scaled(&rat_int(k + 1));
    let mut out = Scalar::one();
    for root in &rs.positive_roots {
        let a = rs.inner(&root.coroot_weight(), &shift);
        let f = &q_rat_pow(rs, &(&a + &rat_int(k))) - &q_rat_pow(rs, &-&(&a + &rat_int(k)));
        out = &out * &f;
    }
    out
}

/// One rung of the squared-norm ladder:
/// `Π_{α>0} (1 - q^{2(α^∨,λ+(k+1)ρ)+2k})/(1 - q^{2(α^∨,λ+(k+1)ρ)-2k})`,
/// relating the squared norm at multiplicity `k+1` and weight `λ` to the one
/// at multiplicity `k` and weight `λ+ρ`.
pub fn shift_ladder_factor(rs: &RootSystem, k: i64, lambda: &Weight) -> Scalar {
    let shift = lambda + &rs.rho.scaled(&rat_int(k + 1));
    let mut out = Scalar::one();
    for root in &rs.positive_roots {
        let a2 = rs.inner(&root.coroot_weight(), &shift) * rat_int(2);
        let num = &Scalar::one() - &q_rat_pow(rs, &(&a2 + &rat_int(2 * k)));
        let den = &Scalar::one() - &q_rat_pow(rs, &(&a2 - &rat_int(2 * k)));
        out = &out * &(&num / &den);
    }
    out
}

/// Exact verification of the squared-norm recursion from multiplicity `1` up
/// to `kmax` at dominant weight `λ`, with every ingredient computed by an
/// independent route:
///
/// * the orthogonal basis elements along the ladder path and their squared
///   norms under both inner products, built directly;
/// * the base case — every squared norm at multiplicity `1` equals `1`;
/// * each rung in symmetric form (`shift_ladder_factor`) and in sesquilinear
///   form (the `(-1)^{|R⁺|} (d_{k+1}/d_k)(ĉ_k/c_k)` recursion);
/// * the bridge `⟨·,·⟩_k = d_k^{-1}(-1)^{k|R⁺|} q^{k(k-1)|R⁺|} ⟨·,·⟩'_k`
///   between the two norms on the basis;
/// * agreement of the assembled ladder with the closed product form and with
///   the directly computed top norm.
///
/// Returns `true` exactly when every comparison holds.
pub fn verify_norm_recursion(rs: &RootSystem, lambda: &Weight, kmax: i64) -> bool {
    assert!(kmax >= 1);
    assert!(rs.in_weight_lattice(lambda) && rs.is_dominant(lambda));
    let npos = rs.positive_roots.len() as i64;

    // Norms along the ladder path: level k visits the weight λ + (kmax-k)ρ.
    let mut norms_sym: Vec<Scalar> = Vec::new();
    let mut norms_sesq: Vec<Scalar> = Vec::new();
    for k in 1..=kmax {
        let kp = KParam::equal(k);
        let mu = lambda + &rs.rho.scaled(&rat_int(kmax - k));
        let p = macdonald(rs, &kp, &mu, Method::Gram).expand(rs);
        norms_sym.push(inner_k(rs, &kp, &p, &p));
        norms_sesq.push(inner_cherednik(rs, &kp, &p, &p));
    }

    let mut ok = norms_sym[0] == Scalar::one();
    for k in 1..=kmax {
        let sign = Scalar::from_int(if (k * npos) % 2 == 0 { 1 } else { -1 });
        let conv = &(&sign * &qpow(rs, k * (k - 1) * npos)) / &d_k(rs, &KParam::equal(k));
        ok &= norms_sym[(k - 1) as usize] == &conv * &norms_sesq[(k - 1) as usize];
    }

    let mut ladder = Scalar::one();
    let step_sign = Scalar::from_int(if npos % 2 == 0 { 1 } else { -1 });
    for k in 1..kmax {
        let lam_next = lambda + &rs.rho.scaled(&rat_int(kmax - k - 1));
        let rung = shift_ladder_factor(rs, k, &lam_next);
        ok &= norms_sym[k as usize] == &rung * &norms_sym[(k - 1) as usize];
        ladder = &ladder * &rung;

        let ratio = &d_k(rs, &KParam::equal(k + 1)) / &d_k(rs, &KParam::equal(k));
        let cfrac = &chat_k(rs, k, &lam_next) / &c_k(rs, k, &lam_next);
        let rhs = &(&(&step_sign * &ratio) * &cfrac) * &norms_sesq[(k - 1) as usize];
        ok &= norms_sesq[k as usize] == rhs;
    }

    ok &= ladder == norm_formula_rhs(rs, &KParam::equal(kmax), lambda);
    ok &= ladder == norms_sym[(kmax - 1) as usize];
    ok
}

/// Both antisymmetrizer identities for the pair `𝒴`, `𝒴̂` on Weyl-invariant
/// input: the classical antisymmetrizer kills `(𝒴 - 𝒴̂) f`, and so does the
/// Hecke antisymmetrizer at the same multiplicity.  Returns `true` when both
/// differences vanish identically.
pub fn verify_antisymmetrizer_bridge(rs: &RootSystem, k: i64, f: &LaurentPoly) -> bool {
    assert!(f.is_symmetric(rs));
    let ctx = ShiftContext::new(rs, k);
    let diff = &ctx.apply_y_product(rs, false, f) - &ctx.apply_y_product(rs, true, f);
    let kp = KParam::equal(k);
    antisymmetrize(rs, &diff).is_zero() && q_antisymmetrize(rs, &kp, &diff).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use crate::dahaop::is_hecke_antisymmetric;
    use crate::macpoly::orbit_sum;
    use crate::rootsys::CartanKind;

    fn wt(rs: &RootSystem, fund: &[i64]) -> Weight {
        let mut acc = Weight::zero(rs.rank);
        for (i, &c) in fund.iter().enumerate() {
            acc = &acc + &rs.fund_weights[i].scaled(&rat_int(c));
        }
        acc
    }

    fn aggregate(terms: &[(Weight, Scalar)]) -> BTreeMap<Weight, Scalar> {
        let mut map: BTreeMap<Weight, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            let e = map.entry(w.clone()).or_insert_with(Scalar::zero);
            *e = &*e + c;
        }
        map.retain(|_, c| !c.is_zero());
        map
    }

    #[test]
    fn multiplier_turns_invariants_into_hecke_antiinvariants() {
        for (kind, rank, k) in [
            (CartanKind::A, 1, 1),
            (CartanKind::A, 1, 2),
            (CartanKind::A, 2, 1),
            (CartanKind::B, 2, 1),
        ] {
            let rs = RootSystem::new(kind, rank).unwrap();
            let ctx = ShiftContext::new(&rs, k);
            let kp = KParam::equal(k);
            let mut inputs = alloc::vec![LaurentPoly::one(rs.rank)];
            for i in 0..rs.rank {
                inputs.push(orbit_sum(&rs, &rs.fund_weights[i]));
            }
            for f in &inputs {
                let xf = &ctx.x_mult * f;
                assert!(
                    is_hecke_antisymmetric(&rs, &kp, &xf),
                    "every T_i + t^{{-1}} kills the multiplied invariant"
                );
            }
        }
    }

    #[test]
    fn longest_element_swaps_the_two_y_products() {
        for (kind, rank, k) in [(CartanKind::A, 2, 1), (CartanKind::B, 2, 2)] {
            let rs = RootSystem::new(kind, rank).unwrap();
            let ctx = ShiftContext::new(&rs, k);
            let w0 = rs.longest_elt();
            let mapped: Vec<(Weight, Scalar)> = ctx
                .y_terms
                .iter()
                .map(|(mu, c)| (rs.apply_weyl(w0, mu), c.clone()))
                .collect();
            let sign = Scalar::from_int(if rs.positive_roots.len() % 2 == 0 {
                1
            } else {
                -1
            });
            let scaled: Vec<(Weight, Scalar)> = ctx
                .yhat_terms
                .iter()
                .map(|(mu, c)| (mu.clone(), &sign * c))
                .collect();
            assert_eq!(aggregate(&mapped), aggregate(&scaled));
        }
    }

    #[test]
    fn raising_operator_hits_the_next_orthogonal_basis() {
        // (kind, rank, k, λ): G sends the basis element at λ+ρ and
        // multiplicity k to q^{k|R⁺|} c_k(λ) times the one at λ and k+1.
        let cases: &[(CartanKind, usize, i64, &[i64])] = &[
            (CartanKind::A, 1, 1, &[0]),
            (CartanKind::A, 1, 1, &[1]),
            (CartanKind::A, 1, 2, &[1]),
            (CartanKind::A, 2, 1, &[0, 0]),
            (CartanKind::A, 2, 1, &[1, 0]),
            (CartanKind::B, 2, 1, &[0, 0]),
        ];
        for &(kind, rank, k, fund) in cases {
            let rs = RootSystem::new(kind, rank).unwrap();
            let ctx = ShiftContext::new(&rs, k);
            let lambda = wt(&rs, fund);
            let source = &lambda + &rs.rho;
            let p_low = macdonald(&rs, &KParam::equal(k), &source, Method::Gram).expand(&rs);
            let p_high = macdonald(&rs, &KParam::equal(k + 1), &lambda, Method::Gram).expand(&rs);
            let npos = rs.positive_roots.len() as i64;
            let expected = p_high.scaled(&(&qpow(&rs, k * npos) * &c_k(&rs, k, &lambda)));
            assert_eq!(ctx.apply_g(&rs, &p_low), expected);
        }
    }

    #[test]
    fn raising_operator_kills_basis_elements_below_rho() {
        // When λ - ρ is not dominant the raised basis element vanishes.
        for (kind, rank, k, fund) in [
            (CartanKind::A, 1, 1, alloc::vec![0i64]),
            (CartanKind::A, 2, 1, alloc::vec![0, 0]),
            (CartanKind::A, 2, 1, alloc::vec![1, 0]),
        ] {
            let rs = RootSystem::new(kind, rank).unwrap();
            let ctx = ShiftContext::new(&rs, k);
            let lambda = wt(&rs, &fund);
            let p = macdonald(&rs, &KParam::equal(k), &lambda, Method::Gram).expand(&rs);
            assert!(ctx.apply_g(&rs, &p).is_zero());
        }
    }

    #[test]
    fn lowering_operator_hits_the_previous_orthogonal_basis() {
        // Ĝ sends the basis element at λ and multiplicity k+1 to
        // q^{-k|R⁺|} ĉ_k(λ) times the one at λ+ρ and multiplicity k.
        let cases: &[(CartanKind, usize, i64, &[i64])] = &[
            (CartanKind::A, 1, 1, &[0]),
            (CartanKind::A, 1, 1, &[1]),
            (CartanKind::A, 1, 1, &[2]),
            (CartanKind::A, 1, 2, &[1]),
            (CartanKind::A, 2, 1, &[0, 0]),
            (CartanKind::A, 2, 1, &[0, 1]),
        ];
        for &(kind, rank, k, fund) in cases {
            let rs = RootSystem::new(kind, rank).unwrap();
            let ctx = ShiftContext::new(&rs, k);
            let lambda = wt(&rs, fund);
            let target = &lambda + &rs.rho;
            let p_high = macdonald(&rs, &KParam::equal(k + 1), &lambda, Method::Gram).expand(&rs);
            let p_low = macdonald(&rs, &KParam::equal(k), &target, Method::Gram).expand(&rs);
            let npos = rs.positive_roots.len() as i64;
            let expected = p_low.scaled(&(&qpow(&rs, -k * npos) * &chat_k(&rs, k, &lambda)));
            assert_eq!(ctx.apply_ghat(&rs, &p_high), expected);
        }
        // Lowering the zero polynomial gives zero.
        let rs = RootSystem::new(CartanKind::A, 1).unwrap();
        let ctx = ShiftContext::new(&rs, 1);
        assert!(ctx.apply_ghat(&rs, &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn raising_and_lowering_are_adjoint() {
        // ⟨G f, g⟩'_{k+1} = (d_{k+1}/d_k) ⟨f, Ĝ g⟩'_k for invariant f, g.
        for (kind, rank, k) in [
            (CartanKind::A, 1, 1),
            (CartanKind::A, 1, 2),
            (CartanKind::A, 2, 1),
        ] {
            let rs = RootSystem::new(kind, rank).unwrap();
            let ctx = ShiftContext::new(&rs, k);
            let ratio = &d_k(&rs, &KParam::equal(k + 1)) / &d_k(&rs, &KParam::equal(k));
            let mut fs = alloc::vec![LaurentPoly::one(rs.rank)];
            let mut gs = alloc::vec![LaurentPoly::one(rs.rank)];
            fs.push(orbit_sum(&rs, &rs.fund_weights[0]));
            gs.push(orbit_sum(&rs, &rs.fund_weights[rs.rank - 1]));
            fs.push(orbit_sum(&rs, &wt(&rs, &alloc::vec![1; rs.rank])));
            for f in &fs {
                for g in &gs {
                    let lhs = inner_cherednik(
                        &rs,
                        &KParam::equal(k + 1),
                        &ctx.apply_g(&rs, f),
                        g,
                    );
                    let rhs = &ratio
                        * &inner_cherednik(&rs, &KParam::equal(k), f, &ctx.apply_ghat(&rs, g));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn norm_recursion_ladder() {
        let a1 = RootSystem::new(CartanKind::A, 1).unwrap();
        assert!(verify_norm_recursion(&a1, &wt(&a1, &[0]), 3));
        assert!(verify_norm_recursion(&a1, &wt(&a1, &[1]), 3));
        let a2 = RootSystem::new(CartanKind::A, 2).unwrap();
        assert!(verify_norm_recursion(&a2, &wt(&a2, &[0, 0]), 2));
        assert!(verify_norm_recursion(&a2, &wt(&a2, &[1, 0]), 2));
        let b2 = RootSystem::new(CartanKind::B, 2).unwrap();
        assert!(verify_norm_recursion(&b2, &wt(&b2, &[0, 0]), 2));
    }

    #[test]
    fn antisymmetrizer_bridge() {
        let a1 = RootSystem::new(CartanKind::A, 1).unwrap();
        assert!(verify_antisymmetrizer_bridge(
            &a1,
            1,
            &LaurentPoly::one(a1.rank)
        ));
        let m = orbit_sum(&a1, &wt(&a1, &[1]));
        assert!(verify_antisymmetrizer_bridge(&a1, 2, &(&m * &m)));
        let a2 = RootSystem::new(CartanKind::A, 2).unwrap();
        assert!(verify_antisymmetrizer_bridge(
            &a2,
            1,
            &orbit_sum(&a2, &wt(&a2, &[1, 0]))
        ));
    }

    #[test]
    fn shift_constants_in_rank_one() {
        let rs = RootSystem::new(CartanKind::A, 1).unwrap();
        let zero = wt(&rs, &[0]);
        assert_eq!(c_k(&rs, 1, &zero), &qpow(&rs, 1) - &qpow(&rs, -1));
        assert_eq!(chat_k(&rs, 1, &zero), &qpow(&rs, 3) - &qpow(&rs, -3));
    }
}
