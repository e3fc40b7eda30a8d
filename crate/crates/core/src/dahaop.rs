//! Polynomial representation of the double affine Hecke algebra.
//!
//! The algebra acts on `LaurentPoly` (the group algebra of the weight lattice
//! with coefficients in `Scalar`).  Generators:
//!
//! * `apply_t(j, ·)` — the Hecke generator `T_j`, for `j = 0..rank` a finite
//!   simple reflection and `j = rank` the affine node.  Each `T_j` satisfies
//!   the quadratic relation `(T_j - t_j)(T_j + t_j^{-1}) = 0` with
//!   `t_j = q^{k_j}` determined by the length of the corresponding root.
//! * `apply_group_elt` — the monomial action of an extended affine Weyl
//!   group element (translations multiply by powers of `q`).
//! * [`YOp`] / `apply_y` — the commuting translation operators `Y^λ`,
//!   `λ` in the coweight lattice, built as `ω · T^{±1}` words from a reduced
//!   decomposition of `τ(λ)`.
//!
//! The module also provides classical and Hecke (anti)symmetrizers and
//! [`DiffOpForm`], an exact normal form for operators as finite sums
//! `Σ f_{λ,w}(X) · τ(λ) w` with rational-function coefficients; `res`
//! (restriction to the translation part) turns a `Y`-operator word into the
//! difference operator it induces on symmetric functions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::afweyl::{associated_roots, AffineRoot, ExtAffineWeylElt, MonomialAction};
use crate::ring::{qpow, LaurentPoly, Scalar};
use crate::rootsys::{rat_int, KParam, Rat, RootSystem, Weight};

/// `t_α = q^{k_α}` for the root at `pos` in `positive_roots`.
pub fn t_root(rs: &RootSystem, k: &KParam, pos: usize) -> Scalar {
    qpow(rs, k.of(rs.positive_roots[pos].half_len_sq))
}

/// Hecke parameter of generator `j`; the affine node (`j == rank`) carries
/// the parameter of the highest root.
pub fn t_gen(rs: &RootSystem, k: &KParam, j: usize) -> Scalar {
    let pos = if j == rs.rank { rs.theta } else { j };
    t_root(rs, k, pos)
}

fn rat_as_i64(r: &Rat) -> i64 {
    assert!(r.is_integer(), "expected an integer pairing");
    r.to_integer().to_i64().expect("pairing fits in i64")
}

/// Applies a monomial substitution `X^μ ↦ q^{shift} X^{wμ}` term by term.
pub fn apply_monomial_action(
    rs: &RootSystem,
    act: &MonomialAction,
    f: &LaurentPoly,
) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in f.terms() {
        let (e2, ushift) = act.apply(rs, e);
        out.add_term(e2, c * &Scalar::u_pow(ushift));
    }
    out
}

/// Action of an extended affine Weyl group element on polynomials.
pub fn apply_group_elt(rs: &RootSystem, elt: &ExtAffineWeylElt, f: &LaurentPoly) -> LaurentPoly {
    apply_monomial_action(rs, &elt.monomial_action(rs), f)
}

/// Action of the simple reflection `s_j` (affine for `j == rank`).
pub fn apply_s(rs: &RootSystem, j: usize, f: &LaurentPoly) -> LaurentPoly {
    if j < rs.rank {
        f.w_action(rs, rs.simple_reflection(j))
    } else {
        apply_group_elt(rs, &ExtAffineWeylElt::simple(rs, j), f)
    }
}

/// The Hecke generator `T_j` applied to `f`.
///
/// On a monomial with `r = (μ, α_j^∨)` the action is
/// `T_j X^μ = t_j X^{s_j μ} + (t_j - t_j^{-1}) (X^{s_j μ} - X^μ)/(X^{-α_j} - 1)`,
/// where the last quotient expands into a geometric string of monomials.
/// For the affine node the same formula holds with `X^{-α̂_0} = q^2 X^θ`.
/// Panics if some pairing `(μ, α_j^∨)` is a half-integer; the representation
/// is defined on the full weight lattice only.
pub fn apply_t(rs: &RootSystem, k: &KParam, j: usize, f: &LaurentPoly) -> LaurentPoly {
    let t = t_gen(rs, k, j);
    let tdiff = &t - &t.inverse();
    let mut out = LaurentPoly::zero();
    if j < rs.rank {
        let alpha = &rs.positive_roots[j];
        let srefl = rs.simple_reflection(j);
        for (e, c) in f.terms() {
            let r2 = e[j];
            assert!(r2 % 2 == 0, "Hecke action needs integral coroot pairings");
            let r = r2 / 2;
            out.add_term(rs.apply_weyl_exp(srefl, e), &t * c);
            let step = &tdiff * c;
            if r >= 0 {
                for m in 0..r {
                    let mut e2 = e.clone();
                    for (x, &a) in e2.iter_mut().zip(&alpha.exp) {
                        *x -= m * a;
                    }
                    out.add_term(e2, step.clone());
                }
            } else {
                for m in 1..=(-r) {
                    let mut e2 = e.clone();
                    for (x, &a) in e2.iter_mut().zip(&alpha.exp) {
                        *x += m * a;
                    }
                    out.add_term(e2, -&step);
                }
            }
        }
    } else {
        let theta = &rs.positive_roots[rs.theta];
        for (e, c) in f.terms() {
            let r2 = rs.exp_pair_coroot_x2(e, theta);
            assert!(r2 % 2 == 0, "Hecke action needs integral coroot pairings");
            let r = r2 / 2;
            // t_0 (q^2 X^θ)^{-r} X^μ
            out.add_term(
                rs.apply_weyl_exp(theta.reflection, e),
                &(&t * c) * &qpow(rs, -2 * r),
            );
            let step = &tdiff * c;
            if r >= 0 {
                for m in 1..=r {
                    let mut e2 = e.clone();
                    for (x, &a) in e2.iter_mut().zip(&theta.exp) {
                        *x -= m * a;
                    }
                    out.add_term(e2, -&(&step * &qpow(rs, -2 * m)));
                }
            } else {
                for m in 0..(-r) {
                    let mut e2 = e.clone();
                    for (x, &a) in e2.iter_mut().zip(&theta.exp) {
                        *x += m * a;
                    }
                    out.add_term(e2, &step * &qpow(rs, 2 * m));
                }
            }
        }
    }
    out
}

/// `T_j^{-1} = T_j + (t_j^{-1} - t_j)`.
pub fn apply_t_inv(rs: &RootSystem, k: &KParam, j: usize, f: &LaurentPoly) -> LaurentPoly {
    let t = t_gen(rs, k, j);
    let g = apply_t(rs, k, j, f);
    &g + &f.scaled(&(&t.inverse() - &t))
}

/// `T_j` or `T_j^{-1}` according to `sign`.
pub fn apply_t_signed(
    rs: &RootSystem,
    k: &KParam,
    j: usize,
    sign: i8,
    f: &LaurentPoly,
) -> LaurentPoly {
    if sign > 0 {
        apply_t(rs, k, j, f)
    } else {
        apply_t_inv(rs, k, j, f)
    }
}

/// `T_w` for a finite Weyl group element, along its reduced word.
pub fn apply_tw(rs: &RootSystem, k: &KParam, w: usize, f: &LaurentPoly) -> LaurentPoly {
    let word = rs.weyl_elt(w).word.clone();
    let mut g = f.clone();
    for &j in word.iter().rev() {
        g = apply_t(rs, k, j as usize, &g);
    }
    g
}

/// A translation operator `Y^λ` in factored form: the sign word of a reduced
/// decomposition `τ(λ) = ω · s_{j_l} ⋯ s_{j_1}` together with the
/// inversion signs, so that `Y^λ = ω · T_{j_l}^{ε_l} ⋯ T_{j_1}^{ε_1}`.
#[derive(Clone, Debug)]
pub struct YOp {
    pub lambda: Weight,
    pub omega: ExtAffineWeylElt,
    /// Generator indices in application order (`word[0]` acts first).
    pub word: Vec<u8>,
    /// `+1` where the associated affine root has positive finite part.
    pub eps: Vec<i8>,
}

impl YOp {
    pub fn new(rs: &RootSystem, lambda: &Weight) -> Self {
        let elt = ExtAffineWeylElt::translation(rs, lambda);
        let (omega, word) = elt.reduced_word(rs);
        let eps = associated_roots(rs, &word)
            .iter()
            .map(|ar| if ar.sign > 0 { 1 } else { -1 })
            .collect();
        YOp {
            lambda: lambda.clone(),
            omega,
            word,
            eps,
        }
    }

    pub fn apply(&self, rs: &RootSystem, k: &KParam, f: &LaurentPoly) -> LaurentPoly {
        let mut g = f.clone();
        for (j, e) in self.word.iter().zip(&self.eps) {
            g = apply_t_signed(rs, k, *j as usize, *e, &g);
        }
        apply_group_elt(rs, &self.omega, &g)
    }

    /// `(Y^λ)^{-1} = Y^{-λ}` applied via the inverted word.
    pub fn apply_inverse(&self, rs: &RootSystem, k: &KParam, f: &LaurentPoly) -> LaurentPoly {
        let mut g = apply_group_elt(rs, &self.omega.inverse(rs), f);
        for m in (0..self.word.len()).rev() {
            g = apply_t_signed(rs, k, self.word[m] as usize, -self.eps[m], &g);
        }
        g
    }
}

/// `Y^λ f` for any `λ` in the coweight lattice, via the decomposition
/// `λ = μ - ν` into dominant parts and `Y^λ = Y^μ (Y^ν)^{-1}`.
pub fn apply_y(rs: &RootSystem, k: &KParam, lambda: &Weight, f: &LaurentPoly) -> LaurentPoly {
    let mut pos = Weight::zero(rs.rank);
    let mut neg = Weight::zero(rs.rank);
    let mut has_pos = false;
    let mut has_neg = false;
    for i in 0..rs.rank {
        let c = rat_as_i64(&rs.inner(lambda, &rs.positive_roots[i].to_weight()));
        if c > 0 {
            pos = &pos + &rs.fund_coweights[i].scaled(&rat_int(c));
            has_pos = true;
        } else if c < 0 {
            neg = &neg + &rs.fund_coweights[i].scaled(&rat_int(-c));
            has_neg = true;
        }
    }
    let mut g = f.clone();
    if has_neg {
        g = YOp::new(rs, &neg).apply_inverse(rs, k, &g);
    }
    if has_pos {
        g = YOp::new(rs, &pos).apply(rs, k, &g);
    }
    g
}

/// `Y^λ f` along a single signed word for `τ(λ)`, without splitting `λ`
/// into dominant parts.  Always agrees with [`apply_y`].
pub fn apply_y_signed(rs: &RootSystem, k: &KParam, lambda: &Weight, f: &LaurentPoly) -> LaurentPoly {
    YOp::new(rs, lambda).apply(rs, k, f)
}

/// `f(Y) g` for `f = Σ c_λ Y^λ` given by an explicit term list.
pub fn apply_fy(
    rs: &RootSystem,
    k: &KParam,
    terms: &[(Weight, Scalar)],
    g: &LaurentPoly,
) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (lambda, c) in terms {
        out = &out + &apply_y(rs, k, lambda, g).scaled(c);
    }
    out
}

/// The Weyl orbit of `λ` as a term list with unit coefficients.
pub fn orbit_terms(rs: &RootSystem, lambda: &Weight) -> Vec<(Weight, Scalar)> {
    let mut set: BTreeSet<Weight> = BTreeSet::new();
    for w in 0..rs.weyl_order() {
        set.insert(rs.apply_weyl(w, lambda));
    }
    set.into_iter().map(|w| (w, Scalar::one())).collect()
}

/// Whether a `Y`-term multiset is invariant under the finite Weyl group.
pub fn is_w_closed(rs: &RootSystem, terms: &[(Weight, Scalar)]) -> bool {
    let mut map: BTreeMap<Weight, Scalar> = BTreeMap::new();
    for (w, c) in terms {
        let e = map.entry(w.clone()).or_insert_with(Scalar::zero);
        *e = &*e + c;
    }
    map.retain(|_, c| !c.is_zero());
    for i in 0..rs.rank {
        let s = rs.simple_reflection(i);
        for (w, c) in &map {
            let img = rs.apply_weyl(s, w);
            match map.get(&img) {
                Some(c2) if c2 == c => {}
                _ => return false,
            }
        }
    }
    true
}

/// Joint eigenvalue of `f(Y) = Σ c_λ Y^λ` attached to the weight `μ`:
/// `Σ c_λ q^{2(λ, μ + ρ_k)}`.
pub fn fy_eigenvalue(
    rs: &RootSystem,
    k: &KParam,
    terms: &[(Weight, Scalar)],
    mu: &Weight,
) -> Scalar {
    let shift = mu + &rs.rho_k(k);
    let mut out = Scalar::zero();
    for (lambda, c) in terms {
        let p = rs.inner(lambda, &shift) * rat_int(2 * rs.q_denominator);
        out = &out + &(c * &Scalar::u_pow(rat_as_i64(&p)));
    }
    out
}

/// Classical symmetrizer `(1/|W|) Σ_w w`.
pub fn symmetrize(rs: &RootSystem, f: &LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for w in 0..rs.weyl_order() {
        acc = &acc + &f.w_action(rs, w);
    }
    acc.scaled(&Scalar::from_int(rs.weyl_order() as i64).inverse())
}

/// Classical antisymmetrizer `(1/|W|) Σ_w (-1)^{l(w)} w`.
pub fn antisymmetrize(rs: &RootSystem, f: &LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for w in 0..rs.weyl_order() {
        let g = f.w_action(rs, w);
        if rs.weyl_sign(w) > 0 {
            acc = &acc + &g;
        } else {
            acc = &acc - &g;
        }
    }
    acc.scaled(&Scalar::from_int(rs.weyl_order() as i64).inverse())
}

/// Poincaré-type normalizer `Σ_w t^{-2 l(w)}` of the Hecke antisymmetrizer.
/// Requires equal parameters on all root lengths.
pub fn hecke_d(rs: &RootSystem, k: &KParam) -> Scalar {
    assert!(
        k.is_equal(),
        "Hecke antisymmetrizer requires equal parameters"
    );
    let t = qpow(rs, k.k_long);
    let mut acc = Scalar::zero();
    for w in 0..rs.weyl_order() {
        acc = &acc + &t.pow(-2 * rs.weyl_len(w) as i64);
    }
    acc
}

/// Hecke antisymmetrizer `d^{-1} Σ_w (-t)^{-l(w)} T_w` (equal parameters).
/// It projects onto the space annihilated by every `T_i + t^{-1}`.
pub fn q_antisymmetrize(rs: &RootSystem, k: &KParam, f: &LaurentPoly) -> LaurentPoly {
    let d = hecke_d(rs, k);
    let t = qpow(rs, k.k_long);
    let mut acc = LaurentPoly::zero();
    for w in 0..rs.weyl_order() {
        let l = rs.weyl_len(w) as i64;
        let mut c = t.pow(-l);
        if l % 2 != 0 {
            c = -&c;
        }
        acc = &acc + &apply_tw(rs, k, w, f).scaled(&c);
    }
    acc.scaled(&d.inverse())
}

/// Whether `T_i f = t_i f` for every finite generator (equivalently, `f` is
/// `W`-symmetric).
pub fn is_hecke_symmetric(rs: &RootSystem, k: &KParam, f: &LaurentPoly) -> bool {
    (0..rs.rank).all(|i| apply_t(rs, k, i, f) == f.scaled(&t_gen(rs, k, i)))
}

/// Whether `(T_i + t_i^{-1}) f = 0` for every finite generator.
pub fn is_hecke_antisymmetric(rs: &RootSystem, k: &KParam, f: &LaurentPoly) -> bool {
    (0..rs.rank).all(|i| {
        let g = apply_t(rs, k, i, f);
        (&g + &f.scaled(&t_gen(rs, k, i).inverse())).is_zero()
    })
}

// ---------------------------------------------------------------------------
// Exact rational operator forms.
// ---------------------------------------------------------------------------

/// A canonical denominator factor `q^{2·shift} X^{sign·α_pos} - 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DenFactor {
    pub pos: usize,
    pub sign: i8,
    pub shift: i64,
}

impl DenFactor {
    /// Factor for `X^{α̂} - 1` where `X^{α̂} = q^{-2·level} X^{finite part}`.
    pub fn from_affine(ar: &AffineRoot) -> Self {
        DenFactor {
            pos: ar.pos,
            sign: ar.sign,
            shift: -ar.level,
        }
    }

    pub fn poly(&self, rs: &RootSystem) -> LaurentPoly {
        let mut e = rs.positive_roots[self.pos].exp.clone();
        if self.sign < 0 {
            for x in e.iter_mut() {
                *x = -*x;
            }
        }
        let mut p = LaurentPoly::monomial(e, qpow(rs, 2 * self.shift));
        p.add_term(alloc::vec![0; rs.rank], -&Scalar::one());
        p
    }
}

/// An exact rational function `num / Π factor^mult` in the `X` variables.
/// Fractions are kept unreduced; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatX {
    pub num: LaurentPoly,
    pub den: BTreeMap<DenFactor, u32>,
}

impl RatX {
    pub fn zero() -> Self {
        RatX {
            num: LaurentPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RatX {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn from_scalar(rank: usize, c: &Scalar) -> Self {
        Self::from_poly(LaurentPoly::monomial(alloc::vec![0; rank], c.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn den_poly(&self, rs: &RootSystem) -> LaurentPoly {
        let mut p = LaurentPoly::one(rs.rank);
        for (f, &m) in &self.den {
            let fp = f.poly(rs);
            for _ in 0..m {
                p = &p * &fp;
            }
        }
        p
    }

    pub fn add(&self, rs: &RootSystem, other: &RatX) -> RatX {
        let mut den: BTreeMap<DenFactor, u32> = self.den.clone();
        for (f, &m) in &other.den {
            let e = den.entry(*f).or_insert(0);
            *e = (*e).max(m);
        }
        let scale = |r: &RatX| -> LaurentPoly {
            let mut p = r.num.clone();
            for (f, &m) in &den {
                let have = r.den.get(f).copied().unwrap_or(0);
                let fp = f.poly(rs);
                for _ in have..m {
                    p = &p * &fp;
                }
            }
            p
        };
        let num = &scale(self) + &scale(other);
        RatX { num, den }
    }

    pub fn mul(&self, rs: &RootSystem, other: &RatX) -> RatX {
        let _ = rs;
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            *den.entry(*f).or_insert(0) += m;
        }
        RatX {
            num: &self.num * &other.num,
            den,
        }
    }

    pub fn scaled(&self, c: &Scalar) -> RatX {
        RatX {
            num: self.num.scaled(c),
            den: self.den.clone(),
        }
    }

    /// Substitution `X^μ ↦ q^{2(λ,wμ)} X^{wμ}` for a group element `τ(λ)w`,
    /// applied to numerator and denominator factors alike.
    pub fn group_transform(&self, rs: &RootSystem, elt: &ExtAffineWeylElt) -> RatX {
        let act = elt.monomial_action(rs);
        let num = apply_monomial_action(rs, &act, &self.num);
        let mut den = BTreeMap::new();
        for (f, &m) in &self.den {
            let mut coords = rs.positive_roots[f.pos].coords.clone();
            if f.sign < 0 {
                for x in coords.iter_mut() {
                    *x = -*x;
                }
            }
            let img = rs.apply_weyl_coords(elt.w, &coords);
            let (sign, pos) = rs.find_root(&img).expect("root image is a root");
            let mut root_w = rs.positive_roots[pos].to_weight();
            if sign < 0 {
                root_w = root_w.scaled(&rat_int(-1));
            }
            let pairing = rat_as_i64(&rs.inner(&elt.lambda, &root_w));
            let key = DenFactor {
                pos,
                sign,
                shift: f.shift + pairing,
            };
            *den.entry(key).or_insert(0) += m;
        }
        RatX { num, den }
    }

    /// Exact equality of the represented rational functions.
    pub fn eq_rat(&self, rs: &RootSystem, other: &RatX) -> bool {
        &self.num * &other.den_poly(rs) == &other.num * &self.den_poly(rs)
    }
}

/// An operator in normal form `Σ_{(λ,w)} f_{λ,w}(X) · τ(λ) w`, with each
/// coefficient an exact rational function of the `X` variables.  The key is
/// the translation weight `λ` together with the finite Weyl index `w`.
#[derive(Clone, Debug)]
pub struct DiffOpForm {
    pub cells: BTreeMap<(Weight, usize), RatX>,
}

impl DiffOpForm {
    pub fn zero() -> Self {
        DiffOpForm {
            cells: BTreeMap::new(),
        }
    }

    pub fn identity(rs: &RootSystem) -> Self {
        Self::from_scalar(rs, &Scalar::one())
    }

    pub fn from_scalar(rs: &RootSystem, c: &Scalar) -> Self {
        let mut cells = BTreeMap::new();
        cells.insert(
            (Weight::zero(rs.rank), 0usize),
            RatX::from_scalar(rs.rank, c),
        );
        DiffOpForm { cells }
    }

    /// Multiplication operator by a Laurent polynomial.
    pub fn from_poly(rs: &RootSystem, p: &LaurentPoly) -> Self {
        let mut cells = BTreeMap::new();
        cells.insert(
            (Weight::zero(rs.rank), 0usize),
            RatX::from_poly(p.clone()),
        );
        DiffOpForm { cells }
    }

    pub fn from_group(rs: &RootSystem, elt: &ExtAffineWeylElt) -> Self {
        let _ = rs;
        let mut cells = BTreeMap::new();
        cells.insert(
            (elt.lambda.clone(), elt.w),
            RatX::from_scalar(elt.lambda.coords.len(), &Scalar::one()),
        );
        DiffOpForm { cells }
    }

    fn insert_cell(&mut self, rs: &RootSystem, key: (Weight, usize), val: RatX) {
        if val.is_zero() {
            return;
        }
        match self.cells.remove(&key) {
            Some(old) => {
                let sum = old.add(rs, &val);
                if !sum.is_zero() {
                    self.cells.insert(key, sum);
                }
            }
            None => {
                self.cells.insert(key, val);
            }
        }
    }

    pub fn add(&self, rs: &RootSystem, other: &DiffOpForm) -> DiffOpForm {
        let mut out = self.clone();
        for (key, val) in &other.cells {
            out.insert_cell(rs, key.clone(), val.clone());
        }
        out
    }

    pub fn mul(&self, rs: &RootSystem, other: &DiffOpForm) -> DiffOpForm {
        let mut out = DiffOpForm::zero();
        for ((l1, w1), r1) in &self.cells {
            let g1 = ExtAffineWeylElt {
                lambda: l1.clone(),
                w: *w1,
            };
            for ((l2, w2), r2) in &other.cells {
                let g2 = ExtAffineWeylElt {
                    lambda: l2.clone(),
                    w: *w2,
                };
                let g = g1.mul(rs, &g2);
                let val = r1.mul(rs, &r2.group_transform(rs, &g1));
                out.insert_cell(rs, (g.lambda, g.w), val);
            }
        }
        out
    }

    /// Drops the finite Weyl part of every cell: the restriction of the
    /// operator to symmetric functions as a difference operator in `τ(λ)`.
    pub fn res(&self, rs: &RootSystem) -> DiffOpForm {
        let mut out = DiffOpForm::zero();
        for ((l, _), r) in &self.cells {
            out.insert_cell(rs, (l.clone(), 0), r.clone());
        }
        out
    }

    /// Applies the operator to a polynomial; the result must clear all
    /// denominators, which is checked by exact division.
    pub fn apply(&self, rs: &RootSystem, f: &LaurentPoly) -> LaurentPoly {
        let mut global: BTreeMap<DenFactor, u32> = BTreeMap::new();
        for r in self.cells.values() {
            for (fac, &m) in &r.den {
                let e = global.entry(*fac).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let mut numer = LaurentPoly::zero();
        for ((l, w), r) in &self.cells {
            let elt = ExtAffineWeylElt {
                lambda: l.clone(),
                w: *w,
            };
            let mut term = &r.num * &apply_group_elt(rs, &elt, f);
            for (fac, &m) in &global {
                let have = r.den.get(fac).copied().unwrap_or(0);
                let fp = fac.poly(rs);
                for _ in have..m {
                    term = &term * &fp;
                }
            }
            numer = &numer + &term;
        }
        let mut factors = Vec::new();
        for (fac, &m) in &global {
            let fp = fac.poly(rs);
            for _ in 0..m {
                factors.push(fp.clone());
            }
        }
        numer
            .exact_div_many(&factors)
            .expect("operator application must clear denominators")
    }

    /// Exact equality of operators, cell by cell with cross-multiplied
    /// rational coefficients.
    pub fn eq_op(&self, rs: &RootSystem, other: &DiffOpForm) -> bool {
        let keys: BTreeSet<_> = self.cells.keys().chain(other.cells.keys()).collect();
        let zero = RatX::zero();
        for key in keys {
            let a = self.cells.get(key).unwrap_or(&zero);
            let b = other.cells.get(key).unwrap_or(&zero);
            if !a.eq_rat(rs, b) {
                return false;
            }
        }
        true
    }
}

/// The elementary factor `G^{ε}(α̂)` of an operator word:
/// `G^{+}(α̂) = (t X^{α̂} - t^{-1})/(X^{α̂} - 1) - (t - t^{-1}) s_{α̂}/(X^{α̂} - 1)`,
/// and `G^{-}(α̂) = G^{+}(α̂) - (t - t^{-1}) s_{α̂}`, so that
/// `T_j = s_j G^{+}(α̂_j)` and inverted letters of a `Y`-word use `G^{-}`.
pub fn g_factor(rs: &RootSystem, k: &KParam, ar: &AffineRoot, eps: i8) -> DiffOpForm {
    let t = t_root(rs, k, ar.pos);
    let tdiff = &t - &t.inverse();
    let fac = DenFactor::from_affine(ar);
    let (xe, xu) = ar.monomial(rs);
    let xhat = LaurentPoly::monomial(xe, Scalar::u_pow(xu));
    // s_{α̂} for α̂ = sign·β + level·δ is τ(-sign·level·β^∨) s_β.
    let beta = &rs.positive_roots[ar.pos];
    let refl = ExtAffineWeylElt {
        lambda: beta
            .coroot_weight()
            .scaled(&rat_int(-(ar.sign as i64) * ar.level)),
        w: beta.reflection,
    };

    let mut id_num = xhat.scaled(&t);
    id_num.add_term(alloc::vec![0; rs.rank], -&t.inverse());
    let s_num = if eps > 0 {
        LaurentPoly::one(rs.rank).scaled(&-&tdiff)
    } else {
        xhat.scaled(&-&tdiff)
    };

    let mut cells = BTreeMap::new();
    cells.insert(
        (Weight::zero(rs.rank), 0usize),
        RatX {
            num: id_num,
            den: BTreeMap::from([(fac, 1u32)]),
        },
    );
    cells.insert(
        (refl.lambda.clone(), refl.w),
        RatX {
            num: s_num,
            den: BTreeMap::from([(fac, 1u32)]),
        },
    );
    DiffOpForm { cells }
}

/// Normal form of the generator `T_j`.
pub fn opform_t(rs: &RootSystem, k: &KParam, j: usize) -> DiffOpForm {
    let s = ExtAffineWeylElt::simple(rs, j);
    let ar = AffineRoot::simple(rs, j);
    DiffOpForm::from_group(rs, &s).mul(rs, &g_factor(rs, k, &ar, 1))
}

/// Normal form of `T_j^{-1}`.
pub fn opform_t_inv(rs: &RootSystem, k: &KParam, j: usize) -> DiffOpForm {
    let t = t_gen(rs, k, j);
    opform_t(rs, k, j).add(rs, &DiffOpForm::from_scalar(rs, &(&t.inverse() - &t)))
}

/// Normal form of `Y^λ = τ(λ) G^{ε_l}(α^{(l)}) ⋯ G^{ε_1}(α^{(1)})`, the
/// associated affine roots running along a reduced word for `τ(λ)`.
pub fn opform_y(rs: &RootSystem, k: &KParam, lambda: &Weight) -> DiffOpForm {
    let elt = ExtAffineWeylElt::translation(rs, lambda);
    let (_, word) = elt.reduced_word(rs);
    let roots = associated_roots(rs, &word);
    let mut form = DiffOpForm::from_group(rs, &elt);
    for ar in roots.iter().rev() {
        let eps = if ar.sign > 0 { 1 } else { -1 };
        form = form.mul(rs, &g_factor(rs, k, ar, eps));
    }
    form
}

/// The diagonal coefficient predicted for `res(Y^λ)` at the translation
/// cell `τ(λ)`: the product of `(t X^{α̂} - t^{-1})/(X^{α̂} - 1)` over the
/// images under `τ(λ)` of the affine roots inverted by `τ(λ)`.
pub fn y_leading_cell(rs: &RootSystem, k: &KParam, lambda: &Weight) -> RatX {
    let elt = ExtAffineWeylElt::translation(rs, lambda);
    let (_, word) = elt.reduced_word(rs);
    let mut out = RatX::from_scalar(rs.rank, &Scalar::one());
    for ar in associated_roots(rs, &word) {
        let img = elt.apply_affine_root(rs, &ar);
        let t = t_root(rs, k, img.pos);
        let (xe, xu) = img.monomial(rs);
        let mut num = LaurentPoly::monomial(xe, &t * &Scalar::u_pow(xu));
        num.add_term(alloc::vec![0; rs.rank], -&t.inverse());
        let cell = RatX {
            num,
            den: BTreeMap::from([(DenFactor::from_affine(&img), 1u32)]),
        };
        out = out.mul(rs, &cell);
    }
    out
}
