//! The extended affine Weyl group `Ŵ = W ⋉ τ(P^∨)` in the normal form
//! `τ(λ)·w`, together with its action on affine roots and on monomials.
//!
//! Conventions:
//! - Affine roots are `±β + k·δ` with β a positive root; `[β, k]` is positive
//!   iff `k > 0`, or `k = 0` and the finite part is positive.
//! - Finite elements act level-wise, `w([β, k]) = [wβ, k]`; translations act
//!   by `τ(λ)([β, k]) = [β, k - (λ, β)]`.
//! - Generator indices: `0..rank` are the finite simple reflections, `rank`
//!   is the affine one, `s_0 = τ(θ^∨) s_θ` with θ the highest root.
//! - On monomials, `τ(λ) X^μ = q^{2(λ,μ)} X^μ`, so the affine reflection
//!   sends `X^μ` to `q^{-2(μ,θ^∨)} X^{s_θ μ}`.
//! - Words are stored in application order: `word[0]` acts first.

use alloc::vec::Vec;

use crate::rootsys::{RootSystem, Weight};

/// The affine root `sign·β + level·δ`, with `β = positive_roots[pos]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AffineRoot {
    pub sign: i8,
    pub pos: usize,
    pub level: i64,
}

impl AffineRoot {
    /// The simple affine root for a generator index (`rank` = affine node).
    pub fn simple(rs: &RootSystem, j: usize) -> Self {
        if j < rs.rank {
            AffineRoot {
                sign: 1,
                pos: j,
                level: 0,
            }
        } else {
            assert_eq!(j, rs.rank, "generator index out of range");
            AffineRoot {
                sign: -1,
                pos: rs.theta,
                level: 1,
            }
        }
    }

    pub fn negated(&self) -> Self {
        AffineRoot {
            sign: -self.sign,
            pos: self.pos,
            level: -self.level,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.level > 0 || (self.level == 0 && self.sign > 0)
    }

    /// Finite part as simple-root coordinates.
    pub fn finite_coords(&self, rs: &RootSystem) -> Vec<i64> {
        rs.positive_roots[self.pos]
            .coords
            .iter()
            .map(|&c| c * self.sign as i64)
            .collect()
    }

    /// The monomial `X^{α̂} = q^{-2k} X^{finite part}` as
    /// (doubled fundamental coordinates, u-exponent).
    pub fn monomial(&self, rs: &RootSystem) -> (Vec<i64>, i64) {
        let exp: Vec<i64> = rs.positive_roots[self.pos]
            .exp
            .iter()
            .map(|&e| e * self.sign as i64)
            .collect();
        (exp, -2 * self.level * rs.q_denominator)
    }

    /// The multiplicity parameter attached to this root's length.
    pub fn half_len_sq(&self, rs: &RootSystem) -> i64 {
        rs.positive_roots[self.pos].half_len_sq
    }
}

/// Precomputed monomial action of one extended affine Weyl element:
/// finite part permutes exponents, the translation contributes a q-power.
pub struct MonomialAction {
    w: usize,
    /// `t[i] = D·(λ, ω_i)`; the u-shift on `X^μ` is `Σ e_i(wμ)·t_i`.
    t: Vec<i64>,
}

impl MonomialAction {
    /// Returns the image exponent and the u-exponent shift.
    pub fn apply(&self, rs: &RootSystem, exp: &[i64]) -> (Vec<i64>, i64) {
        let e = rs.apply_weyl_exp(self.w, exp);
        let shift: i64 = e.iter().zip(&self.t).map(|(&a, &b)| a * b).sum();
        (e, shift)
    }
}

/// `D·(λ, ω_i)` for each fundamental weight; integral for λ ∈ P^∨.
pub fn translation_u_shifts(rs: &RootSystem, lambda: &Weight) -> Vec<i64> {
    (0..rs.rank)
        .map(|i| {
            let v = rs.inner(lambda, &rs.fund_weights[i]) * crate::rootsys::rat_int(rs.q_denominator);
            assert!(v.is_integer(), "translation weight outside P^∨ scale");
            num_traits::ToPrimitive::to_i64(&v.to_integer()).expect("small shift")
        })
        .collect()
}

/// An element `τ(λ)·w` of the extended affine Weyl group, λ ∈ P^∨.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ExtAffineWeylElt {
    /// Translation part, in simple-root coordinates.
    pub lambda: Weight,
    /// Finite part, as an index into the Weyl group enumeration.
    pub w: usize,
}

fn pairing_i64(rs: &RootSystem, a: &Weight, b: &Weight) -> i64 {
    let v = rs.inner(a, b);
    assert!(v.is_integer(), "pairing must be integral here");
    num_traits::ToPrimitive::to_i64(&v.to_integer()).expect("small pairing")
}

impl ExtAffineWeylElt {
    pub fn identity(rs: &RootSystem) -> Self {
        ExtAffineWeylElt {
            lambda: Weight::zero(rs.rank),
            w: 0,
        }
    }

    pub fn finite(w: usize, rs: &RootSystem) -> Self {
        ExtAffineWeylElt {
            lambda: Weight::zero(rs.rank),
            w,
        }
    }

    pub fn translation(rs: &RootSystem, lambda: &Weight) -> Self {
        assert!(
            rs.in_coweight_lattice(lambda),
            "translations are indexed by the coweight lattice"
        );
        ExtAffineWeylElt {
            lambda: lambda.clone(),
            w: 0,
        }
    }

    /// The generator `s_j` (`j = rank` for the affine node).
    pub fn simple(rs: &RootSystem, j: usize) -> Self {
        if j < rs.rank {
            Self::finite(rs.simple_reflection(j), rs)
        } else {
            assert_eq!(j, rs.rank, "generator index out of range");
            ExtAffineWeylElt {
                lambda: rs.positive_roots[rs.theta].coroot_weight(),
                w: rs.positive_roots[rs.theta].reflection,
            }
        }
    }

    /// Group product: `τ(λ₁)w₁ · τ(λ₂)w₂ = τ(λ₁ + w₁λ₂)(w₁w₂)`.
    pub fn mul(&self, rs: &RootSystem, other: &Self) -> Self {
        ExtAffineWeylElt {
            lambda: &self.lambda + &rs.apply_weyl(self.w, &other.lambda),
            w: rs.weyl_mul(self.w, other.w),
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let winv = rs.weyl_inverse(self.w);
        ExtAffineWeylElt {
            lambda: rs.apply_weyl(winv, &self.lambda).scaled(&crate::rootsys::rat(-1, 1)),
            w: winv,
        }
    }

    pub fn is_identity(&self, rs: &RootSystem) -> bool {
        self.w == 0 && self.lambda == Weight::zero(rs.rank)
    }

    /// Image of an affine root.
    pub fn apply_affine_root(&self, rs: &RootSystem, ar: &AffineRoot) -> AffineRoot {
        let coords = rs.apply_weyl_coords(self.w, &ar.finite_coords(rs));
        let (sign, pos) = rs.find_root(&coords).expect("image of a root is a root");
        let beta = rs.positive_roots[pos].to_weight().scaled(&crate::rootsys::rat(sign as i64, 1));
        let level = ar.level - pairing_i64(rs, &self.lambda, &beta);
        AffineRoot { sign, pos, level }
    }

    /// Length of the element; zero exactly on the Ω subgroup.
    pub fn length(&self, rs: &RootSystem) -> i64 {
        // τ(λ)w = w·τ(λ') with λ' = w^{-1}λ.
        let winv = rs.weyl_inverse(self.w);
        let lp = rs.apply_weyl(winv, &self.lambda);
        let mut total = 0i64;
        for p in 0..rs.positive_roots.len() {
            let alpha = rs.positive_roots[p].to_weight();
            let pairing = pairing_i64(rs, &lp, &alpha);
            let image = rs.apply_weyl_coords(self.w, &rs.positive_roots[p].coords);
            let (sign, _) = rs.find_root(&image).unwrap();
            let chi = if sign < 0 { 1 } else { 0 };
            total += (pairing + chi).abs();
        }
        total
    }

    /// Whether right multiplication by `s_j` shortens the element.
    pub fn has_descent(&self, rs: &RootSystem, j: usize) -> bool {
        !self
            .apply_affine_root(rs, &AffineRoot::simple(rs, j))
            .is_positive()
    }

    /// Splits into a length-zero part ω and a reduced word, in application
    /// order: `self = ω · s_{word[last]} ⋯ s_{word[0]}`.
    pub fn reduced_word(&self, rs: &RootSystem) -> (Self, Vec<u8>) {
        let mut cur = self.clone();
        let mut word = Vec::new();
        let mut remaining = cur.length(rs);
        while remaining > 0 {
            let j = (0..=rs.rank)
                .find(|&j| cur.has_descent(rs, j))
                .expect("positive length element has a descent");
            cur = cur.mul(rs, &Self::simple(rs, j));
            word.push(j as u8);
            remaining -= 1;
            debug_assert_eq!(cur.length(rs), remaining);
        }
        (cur, word)
    }

    /// Rebuilds an element from an Ω part and an application-order word.
    pub fn from_parts(rs: &RootSystem, omega: &Self, word: &[u8]) -> Self {
        let mut out = omega.clone();
        for &j in word.iter().rev() {
            out = out.mul(rs, &Self::simple(rs, j as usize));
        }
        out
    }

    /// Precomputes the action on monomials.
    pub fn monomial_action(&self, rs: &RootSystem) -> MonomialAction {
        MonomialAction {
            w: self.w,
            t: translation_u_shifts(rs, &self.lambda),
        }
    }
}

/// The associated affine roots of a word in application order:
/// entry `m` is `s_{word[0]} ⋯ s_{word[m-1]} (α_{word[m]})`.
pub fn associated_roots(rs: &RootSystem, word: &[u8]) -> Vec<AffineRoot> {
    let mut prefix = ExtAffineWeylElt::identity(rs);
    let mut out = Vec::with_capacity(word.len());
    for &j in word {
        let s = ExtAffineWeylElt::simple(rs, j as usize);
        out.push(prefix.apply_affine_root(rs, &AffineRoot::simple(rs, j as usize)));
        prefix = prefix.mul(rs, &s);
    }
    out
}

/// The length-zero subgroup Ω, identity first, then one element per nonzero
/// minuscule coweight (its translation part).
pub fn omega_elements(rs: &RootSystem) -> Vec<ExtAffineWeylElt> {
    let mut out = alloc::vec![ExtAffineWeylElt::identity(rs)];
    for b in rs.minuscule_coweights_nonzero() {
        let mut found = None;
        for w in 0..rs.weyl_order() {
            let cand = ExtAffineWeylElt {
                lambda: b.clone(),
                w,
            };
            if cand.length(rs) == 0 {
                assert!(found.is_none(), "length-zero part must be unique");
                found = Some(cand);
            }
        }
        out.push(found.expect("every minuscule coweight indexes an Ω element"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{rat, CartanKind};

    fn rs_of(kind: CartanKind, rank: usize) -> RootSystem {
        RootSystem::new(kind, rank).unwrap()
    }

    #[test]
    fn generator_lengths_and_descents() {
        for (kind, rank) in [
            (CartanKind::A, 1usize),
            (CartanKind::A, 2),
            (CartanKind::B, 2),
            (CartanKind::G, 2),
        ] {
            let rs = rs_of(kind, rank);
            for j in 0..=rank {
                let s = ExtAffineWeylElt::simple(&rs, j);
                assert_eq!(s.length(&rs), 1, "generator {} in {}{}", j, kind, rank);
                assert!(s.has_descent(&rs, j));
                assert!(s.mul(&rs, &s).is_identity(&rs));
                // s_j(α_j) = -α_j.
                let a = AffineRoot::simple(&rs, j);
                assert_eq!(s.apply_affine_root(&rs, &a), a.negated());
            }
        }
    }

    #[test]
    fn translation_homomorphism() {
        let rs = rs_of(CartanKind::B, 2);
        let b1 = &rs.fund_coweights[0];
        let tv = rs.positive_roots[rs.theta].coroot_weight();
        let t1 = ExtAffineWeylElt::translation(&rs, &tv);
        let t2 = ExtAffineWeylElt::translation(&rs, b1);
        let t12 = t1.mul(&rs, &t2);
        assert_eq!(t12, ExtAffineWeylElt::translation(&rs, &(&tv + b1)));
        assert_eq!(t12, t2.mul(&rs, &t1));
        // w τ(λ) w^{-1} = τ(wλ).
        let w = ExtAffineWeylElt::finite(rs.simple_reflection(0), &rs);
        let conj = w.mul(&rs, &t1).mul(&rs, &w.inverse(&rs));
        assert_eq!(
            conj,
            ExtAffineWeylElt::translation(&rs, &rs.apply_weyl(rs.simple_reflection(0), &tv))
        );
        // Dominant translations have length Σ_{α>0} (λ, α).
        let mut expect = rat(0, 1);
        for r in &rs.positive_roots {
            expect += rs.inner(&tv, &r.to_weight());
        }
        assert_eq!(rat(t1.length(&rs), 1), expect);
    }

    #[test]
    fn words_round_trip_and_match_length() {
        for (kind, rank) in [(CartanKind::A, 2usize), (CartanKind::B, 2), (CartanKind::G, 2)] {
            let rs = rs_of(kind, rank);
            let mut samples = alloc::vec![
                ExtAffineWeylElt::translation(&rs, &rs.fund_coweights[0]),
                ExtAffineWeylElt::translation(&rs, &rs.positive_roots[rs.theta].coroot_weight()),
            ];
            // A pseudo-random walk through products of generators.
            let mut x = ExtAffineWeylElt::identity(&rs);
            let mut state = 9901u64;
            for _ in 0..16 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (rank + 1);
                x = x.mul(&rs, &ExtAffineWeylElt::simple(&rs, j));
                samples.push(x.clone());
            }
            for s in &samples {
                let (omega, word) = s.reduced_word(&rs);
                assert_eq!(word.len() as i64, s.length(&rs));
                assert_eq!(omega.length(&rs), 0);
                assert_eq!(&ExtAffineWeylElt::from_parts(&rs, &omega, &word), s);
                // Associated roots are distinct and positive.
                let roots = associated_roots(&rs, &word);
                for (i, r) in roots.iter().enumerate() {
                    assert!(r.is_positive());
                    assert!(!roots[..i].contains(r));
                }
                // Descent criterion matches length change in every direction.
                for j in 0..=rank {
                    let longer = s.mul(&rs, &ExtAffineWeylElt::simple(&rs, j));
                    let delta = longer.length(&rs) - s.length(&rs);
                    assert_eq!(delta.abs(), 1);
                    assert_eq!(delta < 0, s.has_descent(&rs, j));
                }
            }
        }
    }

    #[test]
    fn omega_permutes_simple_affine_roots() {
        for (kind, rank, expected) in [
            (CartanKind::A, 1usize, 2usize),
            (CartanKind::A, 2, 3),
            (CartanKind::B, 2, 2),
            (CartanKind::G, 2, 1),
            (CartanKind::D, 4, 4),
        ] {
            let rs = rs_of(kind, rank);
            let omega = omega_elements(&rs);
            assert_eq!(omega.len(), expected);
            let simples: Vec<AffineRoot> =
                (0..=rank).map(|j| AffineRoot::simple(&rs, j)).collect();
            for o in &omega {
                let mut images: Vec<AffineRoot> = simples
                    .iter()
                    .map(|a| o.apply_affine_root(&rs, a))
                    .collect();
                images.sort();
                let mut sorted = simples.clone();
                sorted.sort();
                assert_eq!(images, sorted);
            }
        }
    }

    #[test]
    fn a1_pi_and_affine_reflection() {
        let rs = rs_of(CartanKind::A, 1);
        let omega = omega_elements(&rs);
        let pi = &omega[1];
        // π = τ(ω^∨)·s, π² = 1, π(α_0) = α_1.
        assert_eq!(pi.lambda, rs.fund_coweights[0]);
        assert_ne!(pi.w, 0);
        assert!(pi.mul(&rs, pi).is_identity(&rs));
        assert_eq!(
            pi.apply_affine_root(&rs, &AffineRoot::simple(&rs, 1)),
            AffineRoot::simple(&rs, 0)
        );
        // The affine reflection sends X^ω to q^{-2} X^{-ω}.
        let s0 = ExtAffineWeylElt::simple(&rs, 1);
        let act = s0.monomial_action(&rs);
        let (e, shift) = act.apply(&rs, &[2]);
        assert_eq!(e, alloc::vec![-2]);
        assert_eq!(shift, -2 * rs.q_denominator);
        // τ(ω^∨) X^ω = q X^ω since (ω^∨, ω) = 1/2.
        let t = ExtAffineWeylElt::translation(&rs, &rs.fund_coweights[0]);
        let (e2, shift2) = t.monomial_action(&rs).apply(&rs, &[2]);
        assert_eq!(e2, alloc::vec![2]);
        assert_eq!(shift2, rs.q_denominator);
    }

    #[test]
    fn translation_words_for_y_operators() {
        // τ(b) for the first fundamental coweight of A2 has length 2 and its
        // associated roots have positive finite parts exactly when the sign
        // pattern says so.
        let rs = rs_of(CartanKind::A, 2);
        let t = ExtAffineWeylElt::translation(&rs, &rs.fund_coweights[0]);
        let (omega, word) = t.reduced_word(&rs);
        assert_eq!(word.len() as i64, t.length(&rs));
        assert!(omega.length(&rs) == 0 && !omega.is_identity(&rs));
        let roots = associated_roots(&rs, &word);
        assert_eq!(roots.len(), word.len());
    }
}
