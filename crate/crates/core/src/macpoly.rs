//! Symmetric Macdonald polynomials and their exact inner-product theory:
//! monomial symmetric functions, the two scalar products (the constant-term
//! product against the truncated theta density and the sesquilinear product
//! against the full density), Gram and eigenvector constructions of the
//! orthogonal basis, Macdonald difference operators for minuscule coweights,
//! and closed-form norm and constant-term evaluations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive};

use crate::dahaop::{apply_fy, fy_eigenvalue, is_w_closed, orbit_terms};
use crate::linalg::Mat;
use crate::ring::weights::{delta_k, mu_k, weyl_denominator};
use crate::ring::{qpow, LaurentPoly, Scalar};
use crate::rootsys::{rat_int, KParam, Rat, RootSystem, Weight};

/// Monomial symmetric function `m_λ = Σ_{μ ∈ Wλ} X^μ` for dominant `λ`.
pub fn orbit_sum(rs: &RootSystem, lambda: &Weight) -> LaurentPoly {
    assert!(rs.is_dominant(lambda), "orbit sums take dominant weights");
    let e = rs.to_exp(lambda).expect("weight lattice point");
    let mut out = LaurentPoly::zero();
    for img in rs.orbit_exp(&e) {
        out.add_term(img, Scalar::one());
    }
    out
}

/// Expands a symmetric polynomial in monomial symmetric functions; the
/// coefficient of `m_λ` is the coefficient of the dominant exponent `λ`.
pub fn to_msum(rs: &RootSystem, f: &LaurentPoly) -> BTreeMap<Weight, Scalar> {
    let mut out = BTreeMap::new();
    for (e, c) in f.terms() {
        if rs.is_dominant_exp(e) {
            out.insert(rs.from_exp(e), c.clone());
        }
    }
    out
}

/// Scalar product `⟨f, g⟩_k = |W|^{-1} [f ḡ Δ_k]₀` with `ḡ` the inversion
/// `X^μ ↦ X^{-μ}`.
pub fn inner_k(rs: &RootSystem, k: &KParam, f: &LaurentPoly, g: &LaurentPoly) -> Scalar {
    let prod = f * &g.bar();
    let ct = prod.ct_of_product(&delta_k(rs, k));
    &ct * &Scalar::from_int(rs.weyl_order() as i64).inverse()
}

/// Sesquilinear product `⟨f, g⟩'_k = [f · ι(ḡ) · μ_k]₀` against the full
/// density, with `ι` inverting `q`.
pub fn inner_cherednik(rs: &RootSystem, k: &KParam, f: &LaurentPoly, g: &LaurentPoly) -> Scalar {
    let prod = f * &g.bar().iota();
    prod.ct_of_product(&mu_k(rs, k))
}

fn rat_as_i64(r: &Rat) -> i64 {
    assert!(r.is_integer(), "expected an integer value");
    r.to_integer().to_i64().expect("value fits in i64")
}

/// `q^x` for a rational exponent `x` whose denominator divides the global
/// monomial scale.
pub fn q_rat_pow(rs: &RootSystem, x: &Rat) -> Scalar {
    Scalar::u_pow(rat_as_i64(&(x * rat_int(rs.q_denominator))))
}

/// Balanced q-integer `[x] = (q^x - q^{-x})/(q - q^{-1})`.
pub fn q_integer(rs: &RootSystem, x: &Rat) -> Scalar {
    let num = &q_rat_pow(rs, x) - &q_rat_pow(rs, &-x);
    let den = &qpow(rs, 1) - &qpow(rs, -1);
    &num / &den
}

/// Balanced q-factorial `[n]! = [1][2]⋯[n]`.
pub fn q_factorial(rs: &RootSystem, n: i64) -> Scalar {
    assert!(n >= 0);
    let mut acc = Scalar::one();
    for i in 1..=n {
        acc = &acc * &q_integer(rs, &rat_int(i));
    }
    acc
}

/// Balanced q-binomial `[n choose r] = [n]!/([r]! [n-r]!)`.
pub fn q_binomial(rs: &RootSystem, n: i64, r: i64) -> Scalar {
    assert!((0..=n).contains(&r));
    &q_factorial(rs, n) / &(&q_factorial(rs, r) * &q_factorial(rs, n - r))
}

/// The Poincaré-type normalization constant
/// `d_k = q^{Σ k_α} Σ_w q^{-2 Σ_{α ∈ R_w} k_α}`, evaluated both as the sum
/// over the Weyl group and as the closed product
/// `Π_{α>0} (q^{(α^∨,ρ_k)+k_α} - q^{-(α^∨,ρ_k)-k_α})/(q^{(α^∨,ρ_k)} - q^{-(α^∨,ρ_k)})`;
/// the two evaluations are checked against each other.
pub fn d_k(rs: &RootSystem, k: &KParam) -> Scalar {
    let ksum: i64 = rs
        .positive_roots
        .iter()
        .map(|r| k.of(r.half_len_sq))
        .sum();
    let mut sum = Scalar::zero();
    for w in 0..rs.weyl_order() {
        let mut inv = 0i64;
        for root in &rs.positive_roots {
            let img = rs.apply_weyl_coords(w, &root.coords);
            let (sign, _) = rs.find_root(&img).expect("root image");
            if sign < 0 {
                inv += k.of(root.half_len_sq);
            }
        }
        sum = &sum + &qpow(rs, -2 * inv);
    }
    let via_sum = &qpow(rs, ksum) * &sum;

    let rho_k = rs.rho_k(k);
    let mut via_product = Scalar::one();
    for root in &rs.positive_roots {
        let x = rs.inner(&root.coroot_weight(), &rho_k);
        let ka = rat_int(k.of(root.half_len_sq));
        let num = &q_rat_pow(rs, &(&x + &ka)) - &q_rat_pow(rs, &-(&x + &ka));
        let den = &q_rat_pow(rs, &x) - &q_rat_pow(rs, &-&x);
        via_product = &via_product * &(&num / &den);
    }
    assert_eq!(via_sum, via_product, "two evaluations of d_k agree");
    via_sum
}

/// `⟨1, 1⟩_k = |W|^{-1} [Δ_k]₀`.
pub fn poincare_ct(rs: &RootSystem, k: &KParam) -> Scalar {
    &delta_k(rs, k).ct() * &Scalar::from_int(rs.weyl_order() as i64).inverse()
}

/// Closed form for `⟨1, 1⟩_k`:
/// `q^{Σ k_α(k_α - 1)} Π_{α>0} Π_{i=1}^{k_α - 1} [(α^∨,ρ_k)+i]/[(α^∨,ρ_k)-i]`.
pub fn poincare_ct_rhs(rs: &RootSystem, k: &KParam) -> Scalar {
    let rho_k = rs.rho_k(k);
    let mut esum = 0i64;
    let mut prod = Scalar::one();
    for root in &rs.positive_roots {
        let ka = k.of(root.half_len_sq);
        esum += ka * (ka - 1);
        let x = rs.inner(&root.coroot_weight(), &rho_k);
        for i in 1..ka {
            let ri = rat_int(i);
            prod = &prod * &(&q_integer(rs, &(&x + &ri)) / &q_integer(rs, &(&x - &ri)));
        }
    }
    &qpow(rs, esum) * &prod
}

/// Constant term of
/// `Π_{α>0} Π_{i=0}^{k-1} (1 - q^{2i} X^α)(1 - q^{2i+2} X^{-α})`
/// for a single parameter `k`.
pub fn ct_product_lhs(rs: &RootSystem, k: i64) -> Scalar {
    assert!(k >= 0);
    let mut prod = LaurentPoly::one(rs.rank);
    for root in &rs.positive_roots {
        let neg: Vec<i64> = root.exp.iter().map(|&x| -x).collect();
        for i in 0..k {
            let mut f1 = LaurentPoly::one(rs.rank);
            f1.add_term(root.exp.clone(), -&qpow(rs, 2 * i));
            let mut f2 = LaurentPoly::one(rs.rank);
            f2.add_term(neg.clone(), -&qpow(rs, 2 * i + 2));
            prod = &(&prod * &f1) * &f2;
        }
    }
    prod.ct()
}

/// Product of balanced q-binomials `Π_i [k·d_i choose k]` over the degrees
/// `d_i` of the basic invariants.
pub fn ct_product_rhs(rs: &RootSystem, k: i64) -> Scalar {
    let mut prod = Scalar::one();
    for &d in &rs.degrees {
        prod = &prod * &q_binomial(rs, k * d, k);
    }
    prod
}

/// The two constant-term evaluations agree up to a pure monomial in `q`;
/// returns that measured factor `lhs/rhs` and panics if it is not a signed
/// power of `u`.
pub fn ct_product_monomial_factor(rs: &RootSystem, k: i64) -> Scalar {
    let lhs = ct_product_lhs(rs, k);
    let rhs = ct_product_rhs(rs, k);
    let ratio = &lhs / &rhs;
    let (num, den, _) = ratio
        .as_u_monomial()
        .expect("constant-term ratio is a pure monomial");
    assert!(num.abs() == den.abs(), "monomial factor has unit coefficient");
    ratio
}

/// Weyl character `χ_λ = (Σ_w (-1)^{l(w)} X^{w(λ+ρ)}) / (Σ_w (-1)^{l(w)} X^{wρ})`
/// by exact division.
pub fn weyl_character(rs: &RootSystem, lambda: &Weight) -> LaurentPoly {
    assert!(rs.is_dominant(lambda));
    let shifted = lambda + &rs.rho;
    let e = rs.to_exp(&shifted).expect("λ+ρ in the weight lattice");
    let mut num = LaurentPoly::zero();
    for w in 0..rs.weyl_order() {
        let img = rs.apply_weyl_exp(w, &e);
        let c = if rs.weyl_sign(w) > 0 {
            Scalar::one()
        } else {
            -&Scalar::one()
        };
        num.add_term(img, c);
    }
    num.exact_div(&weyl_denominator(rs))
        .expect("character numerator is divisible by the Weyl denominator")
}

/// A symmetric Macdonald polynomial, stored by its coefficients on monomial
/// symmetric functions `m_μ` for dominant `μ ≤ λ` (unit leading coefficient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacdonaldPoly {
    pub lambda: Weight,
    pub coeffs: BTreeMap<Weight, Scalar>,
}

impl MacdonaldPoly {
    pub fn expand(&self, rs: &RootSystem) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (mu, c) in &self.coeffs {
            out = &out + &orbit_sum(rs, mu).scaled(c);
        }
        out
    }
}

/// Dominant weights `μ ≤ λ` ordered by increasing height of `λ - μ`
/// (so `λ` is first and the order refines dominance downward).
pub fn basis_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut basis = rs.dominant_weights_below(lambda);
    let key = |mu: &Weight| -> (i64, Vec<i64>) {
        let diff = lambda - mu;
        let ht: Rat = diff.coords.iter().sum();
        (
            rat_as_i64(&ht),
            rs.to_exp(mu).expect("weight lattice point"),
        )
    };
    basis.sort_by(|a, b| key(a).cmp(&key(b)));
    assert_eq!(basis[0], *lambda);
    basis
}

/// Construction method for [`macdonald`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Solve the orthogonality conditions `⟨P, m_μ⟩_k = 0` for `μ < λ`.
    Gram,
    /// Extract the eigenvector of a separating symmetric `Y`-operator.
    Eigen,
    /// Run both constructions and check that they agree.
    Both,
}

/// Gram construction: the unique `P = m_λ + Σ_{μ<λ} c_μ m_μ` orthogonal to
/// every lower `m_μ` for `⟨·,·⟩_k`.
pub fn macdonald_gram(rs: &RootSystem, k: &KParam, lambda: &Weight) -> MacdonaldPoly {
    let basis = basis_below(rs, lambda);
    let n = basis.len();
    let ms: Vec<LaurentPoly> = basis.iter().map(|mu| orbit_sum(rs, mu)).collect();
    let mut coeffs = BTreeMap::new();
    coeffs.insert(lambda.clone(), Scalar::one());
    if n > 1 {
        let dk = delta_k(rs, k);
        let winv = Scalar::from_int(rs.weyl_order() as i64).inverse();
        let gram = |i: usize, j: usize| -> Scalar {
            let prod = &ms[j] * &ms[i].bar();
            &prod.ct_of_product(&dk) * &winv
        };
        let mut a = Mat::zeros(n - 1, n - 1);
        let mut b = Vec::with_capacity(n - 1);
        for i in 1..n {
            for j in 1..n {
                a.set(i - 1, j - 1, gram(i, j));
            }
            b.push(-&gram(i, 0));
        }
        let sol = a.solve(&b).expect("Gram system is nonsingular");
        for (j, c) in sol.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(basis[j + 1].clone(), c);
            }
        }
    }
    MacdonaldPoly {
        lambda: lambda.clone(),
        coeffs,
    }
}

/// Cost estimate for applying `Σ_{λ in the orbit of π} Y^λ`: orbit size
/// times the translation length, which counts the Hecke generators each
/// `Y`-word expands into.
fn orbit_operator_cost(rs: &RootSystem, pi: &Weight) -> i64 {
    let mut len = 0i64;
    for root in &rs.positive_roots {
        let p = rs.inner(pi, &root.to_weight());
        assert!(p.is_integer(), "coweight pairings with roots are integral");
        len += p.to_integer().to_i64().expect("small pairing").abs();
    }
    let orbit = (rs.weyl_order() / rs.stabilizer_order(pi)) as i64;
    orbit * len
}

/// Term lists of symmetric `Y`-operators tried, in order, when looking for
/// one whose eigenvalues separate `λ` from the lower dominant weights.
/// Cheaper operators (short words, small orbits) are tried first.
fn separating_candidates(rs: &RootSystem) -> Vec<Vec<(Weight, Scalar)>> {
    let mut singles: Vec<(i64, usize)> = (0..rs.rank)
        .map(|i| (orbit_operator_cost(rs, &rs.fund_coweights[i]), i))
        .collect();
    singles.sort();
    let mut out: Vec<Vec<(Weight, Scalar)>> = singles
        .iter()
        .map(|&(_, i)| orbit_terms(rs, &rs.fund_coweights[i]))
        .collect();
    for a in 0..singles.len() {
        for b in (a + 1)..singles.len() {
            let mut pair = out[a].clone();
            pair.extend(out[b].iter().cloned());
            out.push(pair);
        }
    }
    out.push(orbit_terms(rs, &rs.rho_vee));
    out
}

/// Matrix of the symmetric operator `f(Y)` on the monomial symmetric basis
/// below `λ`; checked to be triangular with the predicted eigenvalues on the
/// diagonal.
fn lf_matrix(
    rs: &RootSystem,
    k: &KParam,
    terms: &[(Weight, Scalar)],
    basis: &[Weight],
) -> Mat {
    let n = basis.len();
    let index: BTreeMap<&Weight, usize> = basis.iter().zip(0..n).collect();
    let mut m = Mat::zeros(n, n);
    for (j, mu) in basis.iter().enumerate() {
        let image = apply_fy(rs, k, terms, &orbit_sum(rs, mu));
        for (nu, c) in to_msum(rs, &image) {
            let i = *index
                .get(&nu)
                .expect("the symmetric Y-operator preserves the span below λ");
            assert!(
                i == j || rs.dominance_leq(&nu, mu),
                "symmetric Y-operators are triangular in dominance order"
            );
            m.set(i, j, c);
        }
        assert_eq!(
            m.at(j, j),
            &fy_eigenvalue(rs, k, terms, mu),
            "diagonal entries are the predicted eigenvalues"
        );
    }
    m
}

/// Eigenvector construction: `P_λ` as the eigenvector of a separating
/// symmetric `Y`-operator, normalized by unit leading coefficient, via
/// back-substitution in the triangular matrix.
pub fn macdonald_eigen(rs: &RootSystem, k: &KParam, lambda: &Weight) -> MacdonaldPoly {
    let basis = basis_below(rs, lambda);
    let n = basis.len();
    let mut coeffs = BTreeMap::new();
    coeffs.insert(lambda.clone(), Scalar::one());
    if n > 1 {
        let terms = separating_candidates(rs)
            .into_iter()
            .find(|cand| {
                assert!(is_w_closed(rs, cand));
                let top = fy_eigenvalue(rs, k, cand, lambda);
                basis[1..]
                    .iter()
                    .all(|mu| fy_eigenvalue(rs, k, cand, mu) != top)
            })
            .expect("some candidate operator separates the eigenvalues");
        let m = lf_matrix(rs, k, &terms, &basis);
        let top = fy_eigenvalue(rs, k, &terms, lambda);
        let mut c = alloc::vec![Scalar::one()];
        for i in 1..n {
            let mut acc = Scalar::zero();
            for (j, cj) in c.iter().enumerate() {
                acc = &acc + &(m.at(i, j) * cj);
            }
            let ci = &acc / &(&top - m.at(i, i));
            if !ci.is_zero() {
                coeffs.insert(basis[i].clone(), ci.clone());
            }
            c.push(ci);
        }
    }
    MacdonaldPoly {
        lambda: lambda.clone(),
        coeffs,
    }
}

/// Symmetric Macdonald polynomial for dominant `λ`, by the requested method.
pub fn macdonald(rs: &RootSystem, k: &KParam, lambda: &Weight, method: Method) -> MacdonaldPoly {
    match method {
        Method::Gram => macdonald_gram(rs, k, lambda),
        Method::Eigen => macdonald_eigen(rs, k, lambda),
        Method::Both => {
            let g = macdonald_gram(rs, k, lambda);
            let e = macdonald_eigen(rs, k, lambda);
            assert_eq!(g, e, "Gram and eigenvector constructions agree");
            g
        }
    }
}

/// Macdonald difference operator for a nonzero minuscule coweight `π`:
/// `D_π f = Σ_w w( Π_{(α,π)=1, α>0} (1 - q^{2k_α} X^α)/(1 - X^α) · τ(π) f )`,
/// evaluated exactly by clearing the full Weyl-invariant denominator
/// `Π_{α ∈ R} (1 - X^α)`.
pub fn macdonald_operator(
    rs: &RootSystem,
    k: &KParam,
    pi: &Weight,
    f: &LaurentPoly,
) -> LaurentPoly {
    assert!(
        rs.minuscule_coweights_nonzero()
            .iter()
            .any(|w| w == pi),
        "the difference operator needs a nonzero minuscule coweight"
    );
    let elt = crate::afweyl::ExtAffineWeylElt::translation(rs, pi);
    let tf = crate::dahaop::apply_group_elt(rs, &elt, f);

    // Clear denominators with the W-invariant product H = Π_{α ∈ R}(1 - X^α):
    // each summand w(N τf / D) becomes w(N τf H/D) / H, and H/D keeps the
    // factors of the unselected positive roots and of all negative roots.
    let mut core = tf;
    let mut all_factors: Vec<LaurentPoly> = Vec::new();
    for root in &rs.positive_roots {
        for sign in [1i64, -1] {
            let e: Vec<i64> = root.exp.iter().map(|&x| sign * x).collect();
            let mut fac = LaurentPoly::one(rs.rank);
            fac.add_term(e, -&Scalar::one());
            all_factors.push(fac);
        }
    }
    for root in &rs.positive_roots {
        let selected = rs.inner(&root.to_weight(), pi) == rat_int(1);
        let mut fac = LaurentPoly::one(rs.rank);
        if selected {
            fac.add_term(root.exp.clone(), -&qpow(rs, 2 * k.of(root.half_len_sq)));
        } else {
            fac.add_term(root.exp.clone(), -&Scalar::one());
        }
        core = &core * &fac;
        let neg: Vec<i64> = root.exp.iter().map(|&x| -x).collect();
        let mut nfac = LaurentPoly::one(rs.rank);
        nfac.add_term(neg, -&Scalar::one());
        core = &core * &nfac;
    }
    let mut total = LaurentPoly::zero();
    for w in 0..rs.weyl_order() {
        total = &total + &core.w_action(rs, w);
    }
    total
        .exact_div_many(&all_factors)
        .expect("the symmetrized sum clears the invariant denominator")
}

/// Diagonal coefficient of `D_π` on `m_λ`:
/// `q^{2(π,ρ_k)} Σ_w q^{2(π, w(λ+ρ_k))}`.
pub fn macdonald_operator_eigenvalue(
    rs: &RootSystem,
    k: &KParam,
    pi: &Weight,
    lambda: &Weight,
) -> Scalar {
    let shift = lambda + &rs.rho_k(k);
    let mut sum = Scalar::zero();
    for w in 0..rs.weyl_order() {
        let x = rs.inner(pi, &rs.apply_weyl(w, &shift)) * rat_int(2);
        sum = &sum + &q_rat_pow(rs, &x);
    }
    &q_rat_pow(rs, &(rs.inner(pi, &rs.rho_k(k)) * rat_int(2))) * &sum
}

/// Term list of the full Weyl sum `Σ_{w ∈ W} Y^{w(π)}` (stabilizer
/// multiplicities included).
pub fn weyl_sum_terms(rs: &RootSystem, pi: &Weight) -> Vec<(Weight, Scalar)> {
    let mut map: BTreeMap<Weight, i64> = BTreeMap::new();
    for w in 0..rs.weyl_order() {
        *map.entry(rs.apply_weyl(w, pi)).or_insert(0) += 1;
    }
    map.into_iter()
        .map(|(w, m)| (w, Scalar::from_int(m)))
        .collect()
}

/// Closed form for the squared norm `⟨P_λ, P_λ⟩_k`:
/// `Π_{α>0} Π_{i=1}^{k_α-1}
///  (1 - q^{2(α^∨,λ+ρ_k)+2i}) / (1 - q^{2(α^∨,λ+ρ_k)-2i})`.
/// At `λ = 0` this specializes to `⟨1, 1⟩_k`.
pub fn norm_formula_rhs(rs: &RootSystem, k: &KParam, lambda: &Weight) -> Scalar {
    let shift = lambda + &rs.rho_k(k);
    let mut prod = Scalar::one();
    for root in &rs.positive_roots {
        let x = rs.inner(&root.coroot_weight(), &shift) * rat_int(2);
        for i in 1..k.of(root.half_len_sq) {
            let up = &Scalar::one() - &q_rat_pow(rs, &(&x + &rat_int(2 * i)));
            let dn = &Scalar::one() - &q_rat_pow(rs, &(&x - &rat_int(2 * i)));
            prod = &prod * &(&up / &dn);
        }
    }
    prod
}
