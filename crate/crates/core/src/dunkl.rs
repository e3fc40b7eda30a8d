//! Rational-coefficient operators on polynomials in `x_1..x_n` with two
//! formal parameters `k` and `h`: divided differences `b_ij`, the commuting
//! Dunkl-type operators `D_i = ∂_i - k Σ_{j≠i} b_ij`, the deformed
//! transpositions `ŝ_i = s_i + h·b_{i,i+1}`, and the restriction of
//! `Σ D_i²` to symmetric polynomials as a second-order difference-differential
//! operator.  All coefficients live in `ℚ[k,h]`, so every identity is checked
//! symbolically rather than at sampled parameter values.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rootsys::{rat_int, Rat};

/// Polynomial in the formal parameters `k` and `h` over `ℚ`, indexed by
/// `(degree in k, degree in h)`.  Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KhPoly {
    pub terms: BTreeMap<(u32, u32), Rat>,
}

impl KhPoly {
    pub fn zero() -> Self {
        KhPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut p = KhPoly::zero();
        p.add_term(0, 0, r);
        p
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    /// The parameter `k` as a polynomial.
    pub fn k_gen() -> Self {
        let mut p = KhPoly::zero();
        p.add_term(1, 0, Rat::one());
        p
    }

    /// The parameter `h` as a polynomial.
    pub fn h_gen() -> Self {
        let mut p = KhPoly::zero();
        p.add_term(0, 1, Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, dk: u32, dh: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((dk, dh)) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &KhPoly) -> KhPoly {
        let mut out = self.clone();
        for (&(dk, dh), c) in &other.terms {
            out.add_term(dk, dh, c.clone());
        }
        out
    }

    pub fn neg(&self) -> KhPoly {
        KhPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, -c))
                .collect(),
        }
    }

    pub fn sub(&self, other: &KhPoly) -> KhPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &KhPoly) -> KhPoly {
        let mut out = KhPoly::zero();
        for (&(ak, ah), ac) in &self.terms {
            for (&(bk, bh), bc) in &other.terms {
                out.add_term(ak + bk, ah + bh, ac * bc);
            }
        }
        out
    }
}

/// Polynomial in `x_1..x_n` with `KhPoly` coefficients, stored as a sparse
/// map from exponent vectors to coefficients with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, KhPoly>,
}

impl RatPoly {
    pub fn zero(n: usize) -> Self {
        RatPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        let mut p = RatPoly::zero(n);
        p.add_term(alloc::vec![0; n], KhPoly::one());
        p
    }

    /// The variable `x_i` (zero-based index).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut e = alloc::vec![0u32; n];
        e[i] = 1;
        let mut p = RatPoly::zero(n);
        p.add_term(e, KhPoly::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: KhPoly) {
        assert_eq!(exp.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.scaled(&KhPoly::from_rat(rat_int(-1))))
    }

    pub fn scaled(&self, c: &KhPoly) -> RatPoly {
        let mut out = RatPoly::zero(self.n);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        assert_eq!(self.n, other.n);
        let mut out = RatPoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(&a, &b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    /// Partial derivative in `x_i`.
    pub fn partial(&self, i: usize) -> RatPoly {
        assert!(i < self.n);
        let mut out = RatPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.mul(&KhPoly::from_rat(rat_int(e[i] as i64))));
        }
        out
    }

    /// The transposition `s_ij` exchanging `x_i` and `x_j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> RatPoly {
        let mut out = RatPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.swap(i, j);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// The permutation action `x_i ↦ x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> RatPoly {
        assert_eq!(perm.len(), self.n);
        let mut out = RatPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut e2 = alloc::vec![0u32; self.n];
            for (i, &x) in e.iter().enumerate() {
                e2[perm[i]] = x;
            }
            out.add_term(e2, c.clone());
        }
        out
    }
}

/// Divided difference `b_ij f = (s_ij f - f)/(x_i - x_j)`, which is always an
/// honest polynomial; computed monomial by monomial from the closed form of
/// `(x_j^p x_i^r - x_i^p x_j^r)/(x_i-x_j)` rather than by division.
pub fn apply_b(i: usize, j: usize, f: &RatPoly) -> RatPoly {
    assert!(i != j && i < f.n && j < f.n);
    let mut out = RatPoly::zero(f.n);
    for (e, c) in &f.terms {
        let p = e[i];
        let r = e[j];
        if p > r {
            // (x_j^p x_i^r - x_i^p x_j^r)/(x_i-x_j) = -Σ_m x_i^{r+m} x_j^{p-1-m}.
            for m in 0..(p - r) {
                let mut e2 = e.clone();
                e2[i] = r + m;
                e2[j] = p - 1 - m;
                out.add_term(e2, c.neg());
            }
        } else if p < r {
            for m in 0..(r - p) {
                let mut e2 = e.clone();
                e2[i] = p + m;
                e2[j] = r - 1 - m;
                out.add_term(e2, c.clone());
            }
        }
    }
    out
}

/// Dunkl-type operator `D_i f = ∂_i f - k Σ_{j≠i} b_ij f` with `k` formal.
pub fn apply_d(i: usize, f: &RatPoly) -> RatPoly {
    let k = KhPoly::k_gen();
    let mut out = f.partial(i);
    for j in 0..f.n {
        if j != i {
            out = out.sub(&apply_b(i, j, f).scaled(&k));
        }
    }
    out
}

/// Deformed transposition `ŝ_i f = s_i f + h·b_{i,i+1} f` with `h` formal
/// (zero-based: `ŝ_i` mixes `x_{i+1}` and `x_{i+2}` in one-based labels).
pub fn apply_shat(i: usize, f: &RatPoly) -> RatPoly {
    assert!(i + 1 < f.n);
    f.swap_vars(i, i + 1)
        .add(&apply_b(i, i + 1, f).scaled(&KhPoly::h_gen()))
}

/// The second-order operator that `Σ D_i²` restricts to on symmetric
/// polynomials: `Σ_i ∂_i² + 2k Σ_{i<j} (x_i-x_j)^{-1}(∂_i - ∂_j)`.  The
/// rational factor is evaluated exactly: on symmetric `f` the difference
/// `g = (∂_i-∂_j)f` is antisymmetric in `(i,j)`, so `b_ij g = -2g/(x_i-x_j)`
/// and the quotient is `-b_ij(g)/2` without any division.
pub fn sym_laplacian(f: &RatPoly) -> RatPoly {
    let k = KhPoly::k_gen();
    let mut out = RatPoly::zero(f.n);
    for i in 0..f.n {
        out = out.add(&f.partial(i).partial(i));
    }
    for i in 0..f.n {
        for j in (i + 1)..f.n {
            let g = f.partial(i).sub(&f.partial(j));
            debug_assert!(
                g.swap_vars(i, j).add(&g).is_zero(),
                "difference of partials of a symmetric polynomial is antisymmetric"
            );
            // 2k · (x_i-x_j)^{-1} g = -k · b_ij g.
            out = out.sub(&apply_b(i, j, &g).scaled(&k));
        }
    }
    out
}

/// Whether `Σ_i D_i² f` equals `sym_laplacian f`; meaningful for symmetric
/// `f`, where the divided-difference parts of each `D_i` collapse to the
/// displayed rational coefficients.
pub fn res_sum_squares_check(f: &RatPoly) -> bool {
    let mut lhs = RatPoly::zero(f.n);
    for i in 0..f.n {
        lhs = lhs.add(&apply_d(i, &apply_d(i, f)));
    }
    lhs == sym_laplacian(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::rat;

    fn x(n: usize, i: usize) -> RatPoly {
        RatPoly::var(n, i)
    }

    /// All monomials in `n` variables of total degree at most `d`.
    fn monomials(n: usize, d: u32) -> Vec<RatPoly> {
        let mut exps: Vec<Vec<u32>> = alloc::vec![alloc::vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for e in &exps {
                let used: u32 = e.iter().sum();
                for v in 0..=(d - used) {
                    let mut e2 = e.clone();
                    e2.push(v);
                    next.push(e2);
                }
            }
            exps = next;
        }
        exps.into_iter()
            .map(|e| {
                let mut p = RatPoly::zero(n);
                p.add_term(e, KhPoly::one());
                p
            })
            .collect()
    }

    fn elem(n: usize, r: usize) -> RatPoly {
        // e_r = Σ_{i_1<…<i_r} x_{i_1}⋯x_{i_r} via the generating product.
        let mut coeffs = alloc::vec![RatPoly::zero(n); r + 1];
        coeffs[0] = RatPoly::one(n);
        for i in 0..n {
            for c in (1..=r).rev() {
                let bumped = coeffs[c - 1].mul(&x(n, i));
                coeffs[c] = coeffs[c].add(&bumped);
            }
        }
        coeffs[r].clone()
    }

    fn power_sum(n: usize, m: u32) -> RatPoly {
        let mut out = RatPoly::zero(n);
        for i in 0..n {
            let mut e = alloc::vec![0u32; n];
            e[i] = m;
            out.add_term(e, KhPoly::one());
        }
        out
    }

    #[test]
    fn divided_difference_closed_forms() {
        let n = 2;
        assert_eq!(
            apply_b(0, 1, &x(n, 0)),
            RatPoly::one(n).scaled(&KhPoly::from_rat(rat(-1, 1)))
        );
        assert!(apply_b(0, 1, &x(n, 0).mul(&x(n, 1))).is_zero());
        let expected = x(n, 0).add(&x(n, 1)).scaled(&KhPoly::from_rat(rat(-1, 1)));
        assert_eq!(apply_b(0, 1, &x(n, 0).mul(&x(n, 0))), expected);
        // Divided differences kill symmetric polynomials.
        for f in [elem(3, 1), elem(3, 2), elem(3, 3), power_sum(3, 4)] {
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                assert!(apply_b(i, j, &f).is_zero());
            }
        }
    }

    #[test]
    fn dunkl_operator_basics_and_commutativity() {
        let n = 2;
        // D_1 x_1 = 1 + k.
        let expected = RatPoly::one(n).scaled(&KhPoly::one().add(&KhPoly::k_gen()));
        assert_eq!(apply_d(0, &x(n, 0)), expected);
        assert!(apply_d(0, &RatPoly::one(n)).is_zero());
        // [D_i, D_j] = 0 symbolically on all monomials of bounded degree.
        for (n, d) in [(2usize, 6u32), (3, 5), (4, 4)] {
            for f in monomials(n, d) {
                for i in 0..n {
                    for j in (i + 1)..n {
                        let lhs = apply_d(i, &apply_d(j, &f));
                        let rhs = apply_d(j, &apply_d(i, &f));
                        assert_eq!(lhs, rhs, "commuting family");
                    }
                }
            }
        }
    }

    #[test]
    fn permutations_conjugate_the_family() {
        // w D_i w^{-1} = D_{w(i)} for the transpositions generating S_3.
        let n = 3;
        let perms: [[usize; 3]; 3] = [[1, 0, 2], [0, 2, 1], [2, 1, 0]];
        for perm in perms {
            let mut inv = [0usize; 3];
            for (i, &p) in perm.iter().enumerate() {
                inv[p] = i;
            }
            for f in monomials(n, 4) {
                for i in 0..n {
                    let lhs = apply_d(i, &f.permute(&inv)).permute(&perm);
                    let rhs = apply_d(perm[i], &f);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn classical_yang_baxter_for_divided_differences() {
        let n = 3;
        let comm = |a: (usize, usize), b: (usize, usize), f: &RatPoly| -> RatPoly {
            apply_b(a.0, a.1, &apply_b(b.0, b.1, f))
                .sub(&apply_b(b.0, b.1, &apply_b(a.0, a.1, f)))
        };
        for f in monomials(n, 4) {
            let total = comm((0, 1), (0, 2), &f)
                .add(&comm((0, 1), (1, 2), &f))
                .add(&comm((0, 2), (1, 2), &f));
            assert!(total.is_zero());
        }
    }

    #[test]
    fn deformed_transpositions_satisfy_the_degenerate_relations() {
        let n = 3;
        assert_eq!(apply_shat(0, &RatPoly::one(n)), RatPoly::one(n));
        let h = KhPoly::h_gen();
        for f in monomials(n, 4) {
            // Involution and braid relation.
            for i in 0..n - 1 {
                assert_eq!(apply_shat(i, &apply_shat(i, &f)), f);
            }
            let lhs = apply_shat(0, &apply_shat(1, &apply_shat(0, &f)));
            let rhs = apply_shat(1, &apply_shat(0, &apply_shat(1, &f)));
            assert_eq!(lhs, rhs);
            // x_{i+1} ŝ_i - ŝ_i x_i = h = ŝ_i x_{i+1} - x_i ŝ_i.
            for i in 0..n - 1 {
                let a = apply_shat(i, &f)
                    .mul(&x(n, i + 1))
                    .sub(&apply_shat(i, &f.mul(&x(n, i))));
                assert_eq!(a, f.scaled(&h));
                let b = apply_shat(i, &f.mul(&x(n, i + 1)))
                    .sub(&apply_shat(i, &f).mul(&x(n, i)));
                assert_eq!(b, f.scaled(&h));
            }
            // Distant variables commute with ŝ_i.
            let c = apply_shat(0, &f.mul(&x(n, 2))).sub(&apply_shat(0, &f).mul(&x(n, 2)));
            assert!(c.is_zero());
        }
    }

    #[test]
    fn sum_of_squares_restricts_to_the_displayed_operator() {
        assert!(res_sum_squares_check(&RatPoly::one(2)));
        let sym2: Vec<RatPoly> = alloc::vec![
            elem(2, 2),
            power_sum(2, 2),
            elem(2, 1).mul(&elem(2, 1)),
            power_sum(2, 4),
        ];
        for f in &sym2 {
            assert!(res_sum_squares_check(f));
        }
        let sym3: Vec<RatPoly> = alloc::vec![
            elem(3, 2),
            elem(3, 3),
            power_sum(3, 3),
            elem(3, 1).mul(&elem(3, 2)),
        ];
        for f in &sym3 {
            assert!(res_sum_squares_check(f));
        }
        // e₂ in four variables, as a spot check at higher rank.
        assert!(res_sum_squares_check(&elem(4, 2)));
    }
}
