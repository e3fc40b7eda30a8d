//! Reduced irreducible root systems: Cartan data, root closure, the finite
//! Weyl group, lattices, orders, and the exact bilinear form.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * The invariant form is normalized so that short roots have squared
//!   length 2; `d_i = (α_i, α_i)/2` is 1 for short simple roots and 2 or 3
//!   for long ones.
//! * `cartan[i][j] = (α_i, α_j^∨)`, so rows are roots and columns coroots.
//! * Weights carry exact rational coordinates in the simple-root basis.
//! * Monomial exponents elsewhere in the crate use "doubled fundamental
//!   coordinates": the integer vector `e_i(μ) = 2(μ, α_i^∨)`, which is
//!   injective on the half-weight lattice ½P.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used for weight coordinates and form values.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Cartan type letter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum CartanKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanKind {
    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(CartanKind::A),
            'B' => Some(CartanKind::B),
            'C' => Some(CartanKind::C),
            'D' => Some(CartanKind::D),
            'E' => Some(CartanKind::E),
            'F' => Some(CartanKind::F),
            'G' => Some(CartanKind::G),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            CartanKind::A => 'A',
            CartanKind::B => 'B',
            CartanKind::C => 'C',
            CartanKind::D => 'D',
            CartanKind::E => 'E',
            CartanKind::F => 'F',
            CartanKind::G => 'G',
        }
    }
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Errors from root-system construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootSysError {
    /// The (kind, rank) pair is not a reduced irreducible system.
    UnsupportedRank { kind: CartanKind, rank: usize },
    /// Rank exceeds the configured cap.
    RankCapExceeded { rank: usize, cap: usize },
}

impl fmt::Display for RootSysError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSysError::UnsupportedRank { kind, rank } => {
                write!(f, "no irreducible root system of type {kind}{rank}")
            }
            RootSysError::RankCapExceeded { rank, cap } => {
                write!(f, "rank {rank} exceeds the cap {cap}")
            }
        }
    }
}

/// Default bound on the rank accepted by [`RootSystem::new`].
pub const DEFAULT_RANK_CAP: usize = 4;

/// Vector in the span of the simple roots, exact rational coordinates in the
/// simple-root basis. Used for weights and coweights alike.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Weight {
    pub coords: Vec<Rat>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![Rat::zero(); rank],
        }
    }

    pub fn from_int_coords(c: &[i64]) -> Self {
        Weight {
            coords: c.iter().map(|&x| rat_int(x)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        Weight {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// One positive root with every derived representation precomputed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Root {
    /// Integer coordinates in the simple-root basis.
    pub coords: Vec<i64>,
    /// Doubled fundamental coordinates `2(α, α_j^∨)`.
    pub exp: Vec<i64>,
    /// Half squared length `(α,α)/2`: 1 for short, 2 or 3 for long.
    pub half_len_sq: i64,
    /// `α^∨` in the simple-coroot basis (integer).
    pub coroot: Vec<i64>,
    /// Index of the reflection `s_α` in the Weyl group table.
    pub reflection: usize,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn to_weight(&self) -> Weight {
        Weight::from_int_coords(&self.coords)
    }

    /// `α^∨` as a rational vector in the simple-root basis.
    pub fn coroot_weight(&self) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .map(|&c| rat(c, self.half_len_sq))
                .collect(),
        }
    }
}

/// One finite Weyl group element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElt {
    /// Reduced word; the element is the product of `s_i` in this order, and
    /// acts by applying the rightmost generator first.
    pub word: Vec<u8>,
    /// Row-major action on simple-root coordinates.
    pub mat: Vec<i64>,
    /// Row-major action on doubled fundamental coordinates.
    pub mat_exp: Vec<i64>,
    pub length: u32,
    pub inverse: usize,
}

impl WeylElt {
    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Multiplicity of each root length class in a k-parameter assignment.
/// Simply-laced systems must use `equal`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct KParam {
    pub k_long: i64,
    pub k_short: i64,
}

impl KParam {
    pub fn equal(k: i64) -> Self {
        KParam {
            k_long: k,
            k_short: k,
        }
    }

    pub fn new(k_long: i64, k_short: i64) -> Self {
        KParam { k_long, k_short }
    }

    /// k for a root of the given half squared length.
    pub fn of(&self, half_len_sq: i64) -> i64 {
        if half_len_sq > 1 {
            self.k_long
        } else {
            self.k_short
        }
    }

    pub fn is_equal(&self) -> bool {
        self.k_long == self.k_short
    }
}

/// A reduced irreducible root system with its Weyl group fully enumerated.
pub struct RootSystem {
    pub kind: CartanKind,
    pub rank: usize,
    /// `cartan[i][j] = (α_i, α_j^∨)`.
    pub cartan: Vec<Vec<i64>>,
    /// `d[i] = (α_i, α_i)/2`.
    pub d: Vec<i64>,
    /// All positive roots; the first `rank` entries are the simple roots.
    pub positive_roots: Vec<Root>,
    /// Index of the highest root θ in `positive_roots`.
    pub theta: usize,
    /// Fundamental weights `ω_i` with `(ω_i, α_j^∨) = δ_ij`.
    pub fund_weights: Vec<Weight>,
    /// Fundamental coweights `b_i` with `(b_i, α_j) = δ_ij`.
    pub fund_coweights: Vec<Weight>,
    /// Half sum of positive roots.
    pub rho: Weight,
    /// Half sum of positive coroots.
    pub rho_vee: Weight,
    /// Degrees of the basic Weyl invariants, ascending.
    pub degrees: Vec<i64>,
    pub weyl_order: u64,
    /// q = u^D where D is twice the smallest m with `(P^∨, P) ⊆ (1/m)Z`.
    pub q_denominator: i64,
    weyl: Vec<WeylElt>,
    longest: usize,
    index: BTreeMap<Vec<i64>, usize>,
    root_lookup: BTreeMap<Vec<i64>, usize>,
    gram: Vec<Vec<Rat>>,
}

impl RootSystem {
    pub fn new(kind: CartanKind, rank: usize) -> Result<Self, RootSysError> {
        Self::with_rank_cap(kind, rank, DEFAULT_RANK_CAP)
    }

    pub fn with_rank_cap(
        kind: CartanKind,
        rank: usize,
        cap: usize,
    ) -> Result<Self, RootSysError> {
        let valid = match kind {
            CartanKind::A => rank >= 1,
            CartanKind::B | CartanKind::C => rank >= 2,
            CartanKind::D => rank >= 4,
            CartanKind::E => (6..=8).contains(&rank),
            CartanKind::F => rank == 4,
            CartanKind::G => rank == 2,
        };
        if !valid {
            return Err(RootSysError::UnsupportedRank { kind, rank });
        }
        if rank > cap {
            return Err(RootSysError::RankCapExceeded { rank, cap });
        }
        Ok(Self::build(kind, rank))
    }

    fn cartan_and_lengths(kind: CartanKind, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize, a: i64, b: i64| {
            c[i][j] = a;
            c[j][i] = b;
        };
        let mut d = vec![1i64; n];
        match kind {
            CartanKind::A => {
                for i in 0..n - 1 {
                    link(&mut c, i, i + 1, -1, -1);
                }
            }
            CartanKind::B => {
                // Nodes 0..n-2 long, node n-1 short.
                for i in 0..n - 1 {
                    link(&mut c, i, i + 1, -1, -1);
                }
                c[n - 2][n - 1] = -2;
                for di in d.iter_mut().take(n - 1) {
                    *di = 2;
                }
            }
            CartanKind::C => {
                // Nodes 0..n-2 short, node n-1 long.
                for i in 0..n - 1 {
                    link(&mut c, i, i + 1, -1, -1);
                }
                c[n - 1][n - 2] = -2;
                d[n - 1] = 2;
            }
            CartanKind::D => {
                for i in 0..n - 2 {
                    link(&mut c, i, i + 1, -1, -1);
                }
                c[n - 2][n - 1] = 0;
                c[n - 1][n - 2] = 0;
                link(&mut c, n - 3, n - 1, -1, -1);
            }
            CartanKind::E => {
                // Chain 0-2-3-4-..., with node 1 attached to node 3.
                link(&mut c, 0, 2, -1, -1);
                for i in 2..n - 1 {
                    link(&mut c, i, i + 1, -1, -1);
                }
                link(&mut c, 1, 3, -1, -1);
            }
            CartanKind::F => {
                // Nodes 0,1 long; nodes 2,3 short.
                link(&mut c, 0, 1, -1, -1);
                link(&mut c, 1, 2, -2, -1);
                link(&mut c, 2, 3, -1, -1);
                d[0] = 2;
                d[1] = 2;
            }
            CartanKind::G => {
                // Node 0 short, node 1 long.
                link(&mut c, 0, 1, -1, -3);
                d[1] = 3;
            }
        }
        (c, d)
    }

    fn build(kind: CartanKind, rank: usize) -> Self {
        let (cartan, d) = Self::cartan_and_lengths(kind, rank);
        // (α_i, α_j) = d_j * cartan[i][j]; must be symmetric.
        let gram: Vec<Vec<Rat>> = (0..rank)
            .map(|i| (0..rank).map(|j| rat_int(d[j] * cartan[i][j])).collect())
            .collect();
        for i in 0..rank {
            for j in 0..rank {
                debug_assert_eq!(gram[i][j], gram[j][i]);
            }
        }

        // Close the simple roots under simple reflections, keeping positives.
        let refl_coords = |coords: &[i64], i: usize| -> Vec<i64> {
            let pairing: i64 = coords
                .iter()
                .enumerate()
                .map(|(j, &cj)| cj * cartan[j][i])
                .sum();
            let mut out = coords.to_vec();
            out[i] -= pairing;
            out
        };
        let mut seen: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push(e);
        }
        while let Some(coords) = queue.pop() {
            for i in 0..rank {
                let r = refl_coords(&coords, i);
                if r.iter().all(|&x| x >= 0) && !seen.contains_key(&r) {
                    seen.insert(r.clone(), ());
                    queue.push(r);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_keys().collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        // Weyl group BFS over action matrices.
        let mat_mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
            let mut out = vec![0i64; rank * rank];
            for i in 0..rank {
                for k in 0..rank {
                    let aik = a[i * rank + k];
                    if aik == 0 {
                        continue;
                    }
                    for j in 0..rank {
                        out[i * rank + j] += aik * b[k * rank + j];
                    }
                }
            }
            out
        };
        let mut gen_mat = Vec::with_capacity(rank);
        let mut gen_mat_exp = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut m = vec![0i64; rank * rank];
            let mut me = vec![0i64; rank * rank];
            for j in 0..rank {
                m[j * rank + j] = 1;
                me[j * rank + j] = 1;
            }
            // Coordinates: c'_i = c_i - Σ_j cartan[j][i] c_j.
            for j in 0..rank {
                m[i * rank + j] -= cartan[j][i];
            }
            // Doubled fundamental coordinates: e'_j = e_j - cartan[i][j] e_i.
            for j in 0..rank {
                me[j * rank + i] -= cartan[i][j];
            }
            gen_mat.push(m);
            gen_mat_exp.push(me);
        }
        let identity: Vec<i64> = {
            let mut m = vec![0i64; rank * rank];
            for j in 0..rank {
                m[j * rank + j] = 1;
            }
            m
        };
        let mut weyl = vec![WeylElt {
            word: Vec::new(),
            mat: identity.clone(),
            mat_exp: identity.clone(),
            length: 0,
            inverse: 0,
        }];
        let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        index.insert(identity, 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &wi in &frontier {
                for i in 0..rank {
                    let mat = mat_mul(&weyl[wi].mat, &gen_mat[i]);
                    if !index.contains_key(&mat) {
                        let mat_exp = mat_mul(&weyl[wi].mat_exp, &gen_mat_exp[i]);
                        let mut word = weyl[wi].word.clone();
                        word.push(i as u8);
                        let id = weyl.len();
                        index.insert(mat.clone(), id);
                        weyl.push(WeylElt {
                            word,
                            mat,
                            mat_exp,
                            length: weyl[wi].length + 1,
                            inverse: 0,
                        });
                        next.push(id);
                    }
                }
            }
            frontier = next;
        }
        for wi in 0..weyl.len() {
            let mut m = weyl[0].mat.clone();
            for &g in weyl[wi].word.iter().rev() {
                m = mat_mul(&m, &gen_mat[g as usize]);
            }
            weyl[wi].inverse = index[&m];
        }
        let longest = (0..weyl.len())
            .max_by_key(|&i| weyl[i].length)
            .expect("nonempty Weyl group");

        // Root records.
        let pair_coroot = |coords: &[i64], j: usize| -> i64 {
            coords
                .iter()
                .enumerate()
                .map(|(i, &ci)| ci * cartan[i][j])
                .sum()
        };
        let half_len = |coords: &[i64]| -> i64 {
            // (α, α)/2 via the Gram matrix; exact and integral for roots.
            let mut acc = Rat::zero();
            for (i, &ci) in coords.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                for (j, &cj) in coords.iter().enumerate() {
                    if cj != 0 {
                        acc += &gram[i][j] * rat_int(ci * cj);
                    }
                }
            }
            let h = acc / rat_int(2);
            assert!(h.is_integer());
            h.to_integer().to_i64().unwrap()
        };
        let mut positive_roots: Vec<Root> = pos
            .iter()
            .map(|coords| {
                let hl = half_len(coords);
                let exp: Vec<i64> = (0..rank).map(|j| 2 * pair_coroot(coords, j)).collect();
                let coroot: Vec<i64> = coords
                    .iter()
                    .enumerate()
                    .map(|(i, &ci)| {
                        let v = rat_int(ci * d[i]) / rat_int(hl);
                        assert!(v.is_integer());
                        v.to_integer().to_i64().unwrap()
                    })
                    .collect();
                Root {
                    coords: coords.clone(),
                    exp,
                    half_len_sq: hl,
                    coroot,
                    reflection: 0,
                }
            })
            .collect();
        // Reflection table: s_α(λ) = λ - (λ, α^∨)α.
        for r in positive_roots.iter_mut() {
            let mut m = vec![0i64; rank * rank];
            for j in 0..rank {
                m[j * rank + j] = 1;
            }
            for j in 0..rank {
                // Column j: image of α_j; (α_j, α^∨) = Σ_i coroot_i (α_j, α_i^∨)·... use exp of α_j: (α_j, α^∨).
                let pairing: i64 = r
                    .coroot
                    .iter()
                    .enumerate()
                    .map(|(i, &mi)| mi * cartan[j][i])
                    .sum();
                for t in 0..rank {
                    m[t * rank + j] -= pairing * r.coords[t];
                }
            }
            r.reflection = *index.get(&m).expect("reflection is a Weyl element");
        }
        let theta = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.height())
            .map(|(i, _)| i)
            .unwrap();
        assert!(
            positive_roots[theta].exp.iter().all(|&e| e >= 0),
            "highest root must be dominant"
        );

        // Fundamental weights: coords x with Σ_i x_i cartan[i][j] = δ_rj.
        let cartan_rat: Vec<Vec<Rat>> = (0..rank)
            .map(|i| (0..rank).map(|j| rat_int(cartan[i][j])).collect())
            .collect();
        let fund_weights: Vec<Weight> = (0..rank)
            .map(|r| Weight {
                coords: solve_unit(&cartan_rat, r),
            })
            .collect();
        let fund_coweights: Vec<Weight> = (0..rank)
            .map(|r| Weight {
                coords: solve_unit(&gram, r),
            })
            .collect();

        let mut rho = Weight::zero(rank);
        let mut rho_vee = Weight::zero(rank);
        for r in &positive_roots {
            rho = &rho + &r.to_weight().scaled(&rat(1, 2));
            rho_vee = &rho_vee + &r.coroot_weight().scaled(&rat(1, 2));
        }

        // Degrees: one plus the conjugate of the height partition.
        let max_h = positive_roots.iter().map(|r| r.height()).max().unwrap() as usize;
        let mut by_height = vec![0i64; max_h + 1];
        for r in &positive_roots {
            by_height[r.height() as usize] += 1;
        }
        let mut degrees: Vec<i64> = Vec::new();
        let mut level = 1;
        while by_height
            .iter()
            .skip(1)
            .any(|&n| n >= level)
        {
            let exponent = by_height.iter().skip(1).filter(|&&n| n >= level).count() as i64;
            degrees.push(exponent + 1);
            level += 1;
        }
        degrees.sort_unstable();
        assert_eq!(degrees.len(), rank);
        let weyl_order: u64 = degrees.iter().map(|&x| x as u64).product();
        assert_eq!(weyl_order, weyl.len() as u64, "Weyl order cross-check");

        // D = 2m with (P^∨, P) ⊆ (1/m)Z.
        let mut m = BigInt::one();
        for b in &fund_coweights {
            for w in &fund_weights {
                let v = inner_with(&gram, b, w);
                m = num_integer::Integer::lcm(&m, v.denom());
            }
        }
        let q_denominator = 2 * m.to_i64().expect("small lattice index");

        let root_lookup: BTreeMap<Vec<i64>, usize> = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect();

        let rs = RootSystem {
            kind,
            rank,
            cartan,
            d,
            positive_roots,
            theta,
            fund_weights,
            fund_coweights,
            rho,
            rho_vee,
            degrees,
            weyl_order,
            q_denominator,
            weyl,
            longest,
            index,
            root_lookup,
            gram,
        };
        // Basic sanity of ρ and ρ^∨.
        for i in 0..rank {
            assert!(rs.pair_coroot(&rs.rho, i).is_one());
            assert!(rs
                .inner(&rs.rho_vee, &rs.simple_root(i).to_weight())
                .is_one());
        }
        rs
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive_roots[i]
    }

    pub fn theta_root(&self) -> &Root {
        &self.positive_roots[self.theta]
    }

    /// Invariant bilinear form.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Rat {
        inner_with(&self.gram, a, b)
    }

    /// `(λ, α_i^∨)`.
    pub fn pair_coroot(&self, w: &Weight, i: usize) -> Rat {
        let mut acc = Rat::zero();
        for (j, c) in w.coords.iter().enumerate() {
            if !c.is_zero() {
                acc += c * rat_int(self.cartan[j][i]);
            }
        }
        acc
    }

    /// `(λ, α^∨)` for an arbitrary positive root.
    pub fn pair_root_coroot(&self, w: &Weight, root: &Root) -> Rat {
        let mut acc = Rat::zero();
        for (i, &mi) in root.coroot.iter().enumerate() {
            if mi != 0 {
                acc += self.pair_coroot(w, i) * rat_int(mi);
            }
        }
        acc
    }

    /// Doubled fundamental coordinates of μ, if μ ∈ ½P.
    pub fn to_exp(&self, w: &Weight) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let v = self.pair_coroot(w, i) * rat_int(2);
            if !v.is_integer() {
                return None;
            }
            out.push(v.to_integer().to_i64()?);
        }
        Some(out)
    }

    /// Weight with the given doubled fundamental coordinates.
    pub fn from_exp(&self, exp: &[i64]) -> Weight {
        let mut acc = Weight::zero(self.rank);
        for (i, &e) in exp.iter().enumerate() {
            if e != 0 {
                acc = &acc + &self.fund_weights[i].scaled(&rat(e, 2));
            }
        }
        acc
    }

    /// `(μ, α^∨)` doubled, read off an exponent vector.
    pub fn exp_pair_coroot_x2(&self, exp: &[i64], root: &Root) -> i64 {
        root.coroot
            .iter()
            .zip(exp)
            .map(|(&m, &e)| m * e)
            .sum()
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn weyl_elt(&self, i: usize) -> &WeylElt {
        &self.weyl[i]
    }

    pub fn weyl_len(&self, i: usize) -> u32 {
        self.weyl[i].length
    }

    pub fn weyl_sign(&self, i: usize) -> i64 {
        self.weyl[i].sign()
    }

    pub fn weyl_inverse(&self, i: usize) -> usize {
        self.weyl[i].inverse
    }

    pub fn longest_elt(&self) -> usize {
        self.longest
    }

    /// Index of the element represented by the given reduced word.
    pub fn weyl_from_word(&self, word: &[usize]) -> usize {
        let mut w = 0usize;
        for &i in word {
            w = self.weyl_mul_gen(w, i);
        }
        w
    }

    /// `w · s_i`.
    pub fn weyl_mul_gen(&self, w: usize, i: usize) -> usize {
        let n = self.rank;
        let a = &self.weyl[w].mat;
        // Multiplying by the generator matrix on the right only changes column i ... compute full product.
        let g = self.simple_reflection_mat(i);
        let mut out = vec![0i64; n * n];
        for r in 0..n {
            for k in 0..n {
                let ark = a[r * n + k];
                if ark == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] += ark * g[k * n + c];
                }
            }
        }
        self.index[&out]
    }

    pub fn weyl_mul(&self, a: usize, b: usize) -> usize {
        let n = self.rank;
        let (ma, mb) = (&self.weyl[a].mat, &self.weyl[b].mat);
        let mut out = vec![0i64; n * n];
        for r in 0..n {
            for k in 0..n {
                let v = ma[r * n + k];
                if v == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] += v * mb[k * n + c];
                }
            }
        }
        self.index[&out]
    }

    fn simple_reflection_mat(&self, i: usize) -> Vec<i64> {
        let n = self.rank;
        let mut m = vec![0i64; n * n];
        for j in 0..n {
            m[j * n + j] = 1;
        }
        for j in 0..n {
            m[i * n + j] -= self.cartan[j][i];
        }
        m
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple_reflection(&self, i: usize) -> usize {
        self.positive_roots[i].reflection
    }

    pub fn apply_weyl(&self, w: usize, v: &Weight) -> Weight {
        let n = self.rank;
        let m = &self.weyl[w].mat;
        let mut out = vec![Rat::zero(); n];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.coords.iter().enumerate() {
                let coeff = m[r * n + c];
                if coeff != 0 && !x.is_zero() {
                    *o += x * rat_int(coeff);
                }
            }
        }
        Weight { coords: out }
    }

    /// Applies a Weyl element to simple-root coordinates.
    pub fn apply_weyl_coords(&self, w: usize, coords: &[i64]) -> Vec<i64> {
        let n = self.rank;
        let m = &self.weyl[w].mat;
        let mut out = vec![0i64; n];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, &x) in coords.iter().enumerate() {
                *o += m[r * n + c] * x;
            }
        }
        out
    }

    /// Looks a root up by simple-root coordinates, as `(sign, index)` with
    /// `index` into `positive_roots`.
    pub fn find_root(&self, coords: &[i64]) -> Option<(i8, usize)> {
        if let Some(&i) = self.root_lookup.get(coords) {
            return Some((1, i));
        }
        let neg: Vec<i64> = coords.iter().map(|&x| -x).collect();
        self.root_lookup.get(&neg).map(|&i| (-1, i))
    }

    pub fn apply_weyl_exp(&self, w: usize, exp: &[i64]) -> Vec<i64> {
        let n = self.rank;
        let m = &self.weyl[w].mat_exp;
        let mut out = vec![0i64; n];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, &x) in exp.iter().enumerate() {
                *o += m[r * n + c] * x;
            }
        }
        out
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        (0..self.rank).all(|i| !self.pair_coroot(w, i).is_negative())
    }

    pub fn is_dominant_exp(&self, exp: &[i64]) -> bool {
        exp.iter().all(|&e| e >= 0)
    }

    /// Dominant representative of the orbit, and an element sending λ to it.
    pub fn dominant_rep(&self, w: &Weight) -> (Weight, usize) {
        let mut cur = w.clone();
        let mut acc = 0usize; // acc(λ) = cur
        loop {
            let mut moved = false;
            for i in 0..self.rank {
                if self.pair_coroot(&cur, i).is_negative() {
                    cur = self.apply_weyl(self.simple_reflection(i), &cur);
                    acc = self.weyl_mul(self.simple_reflection(i), acc);
                    moved = true;
                }
            }
            if !moved {
                return (cur, acc);
            }
        }
    }

    /// The W-orbit of λ, sorted for determinism.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut set: Vec<Weight> = Vec::new();
        for wi in 0..self.weyl.len() {
            let img = self.apply_weyl(wi, w);
            if !set.contains(&img) {
                set.push(img);
            }
        }
        set.sort();
        set
    }

    pub fn orbit_exp(&self, exp: &[i64]) -> Vec<Vec<i64>> {
        let mut set: Vec<Vec<i64>> = Vec::new();
        for wi in 0..self.weyl.len() {
            let img = self.apply_weyl_exp(wi, exp);
            if !set.contains(&img) {
                set.push(img);
            }
        }
        set.sort();
        set
    }

    /// Orbit stabilizer size (needed to weight orbit sums).
    pub fn stabilizer_order(&self, w: &Weight) -> usize {
        (0..self.weyl.len())
            .filter(|&wi| self.apply_weyl(wi, w) == *w)
            .count()
    }

    /// λ ≤ μ in dominance order: μ − λ a nonnegative integer combination of
    /// simple roots.
    pub fn dominance_leq(&self, lo: &Weight, hi: &Weight) -> bool {
        (hi - lo)
            .coords
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// The two-clause order with ties on dominant representatives broken by
    /// dominance on the weight side: λ ≺ μ iff λ⁺ < μ⁺, or λ⁺ = μ⁺ and λ < μ.
    pub fn prec_weight(&self, a: &Weight, b: &Weight) -> bool {
        self.prec_impl(a, b, false)
    }

    /// The translation-side order: λ ≺ μ iff λ⁺ < μ⁺, or λ⁺ = μ⁺ and λ > μ.
    pub fn prec_translation(&self, a: &Weight, b: &Weight) -> bool {
        self.prec_impl(a, b, true)
    }

    fn prec_impl(&self, a: &Weight, b: &Weight, flip: bool) -> bool {
        if a == b {
            return false;
        }
        let (ap, _) = self.dominant_rep(a);
        let (bp, _) = self.dominant_rep(b);
        if ap != bp {
            return self.dominance_leq(&ap, &bp);
        }
        if flip {
            self.dominance_leq(b, a)
        } else {
            self.dominance_leq(a, b)
        }
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        w.coords.iter().all(|c| c.is_integer())
    }

    pub fn in_weight_lattice(&self, w: &Weight) -> bool {
        (0..self.rank).all(|i| self.pair_coroot(w, i).is_integer())
    }

    pub fn in_coweight_lattice(&self, w: &Weight) -> bool {
        (0..self.rank).all(|i| {
            self.inner(w, &self.simple_root(i).to_weight())
                .is_integer()
        })
    }

    pub fn in_coroot_lattice(&self, w: &Weight) -> bool {
        w.coords
            .iter()
            .enumerate()
            .all(|(i, c)| (c * rat_int(self.d[i])).is_integer())
    }

    /// Sum of fundamental coordinates `(λ, α_i^∨)`; the height measure used
    /// by enumeration bounds.
    pub fn fund_coord_sum(&self, w: &Weight) -> Rat {
        (0..self.rank).map(|i| self.pair_coroot(w, i)).sum()
    }

    /// All dominant weights μ with μ ≤ λ, λ itself included, sorted by
    /// decreasing height of μ (λ first) with a lexicographic tiebreak.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        assert!(self.is_dominant(lambda));
        let mut out: Vec<(Rat, Vec<i64>, Weight)> = Vec::new();
        let mut stack: Vec<(usize, Weight)> = vec![(0, Weight::zero(self.rank))];
        while let Some((i, partial)) = stack.pop() {
            if i == self.rank {
                if self.dominance_leq(&partial, lambda) {
                    let exp = self.to_exp(&partial).expect("dominant weight in P");
                    out.push((self.fund_coord_sum(&partial), exp, partial));
                }
                continue;
            }
            // Bound m_i: coordinates of the partial sum must stay ≤ λ's.
            let mut mi = 0i64;
            loop {
                let cand = &partial + &self.fund_weights[i].scaled(&rat_int(mi));
                let fits = cand
                    .coords
                    .iter()
                    .zip(&lambda.coords)
                    .all(|(c, l)| c <= l);
                if !fits {
                    break;
                }
                stack.push((i + 1, cand));
                mi += 1;
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        out.into_iter().map(|(_, _, w)| w).collect()
    }

    /// ρ_k = ½ Σ_{α>0} k_α α.
    pub fn rho_k(&self, k: &KParam) -> Weight {
        let mut acc = Weight::zero(self.rank);
        for r in &self.positive_roots {
            acc = &acc + &r.to_weight().scaled(&rat(k.of(r.half_len_sq), 2));
        }
        acc
    }

    /// Minuscule coweights: zero together with every fundamental coweight
    /// whose simple root enters the highest root with coefficient 1.
    pub fn minuscule_coweights(&self) -> Vec<Weight> {
        let mut out = vec![Weight::zero(self.rank)];
        let theta = &self.positive_roots[self.theta];
        for i in 0..self.rank {
            if theta.coords[i] == 1 {
                out.push(self.fund_coweights[i].clone());
            }
        }
        out
    }

    /// Nonzero minuscule coweights.
    pub fn minuscule_coweights_nonzero(&self) -> Vec<Weight> {
        self.minuscule_coweights()
            .into_iter()
            .filter(|w| !w.is_zero())
            .collect()
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }
}

fn inner_with(gram: &[Vec<Rat>], a: &Weight, b: &Weight) -> Rat {
    let mut acc = Rat::zero();
    for (i, x) in a.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coords.iter().enumerate() {
            if !y.is_zero() {
                acc += x * y * &gram[i][j];
            }
        }
    }
    acc
}

/// Solves `Mᵀ`-free unit system: returns x with `Σ_i x_i M[i][r'] = δ_{r r'}`,
/// i.e. row vector x with x·M = e_r.
fn solve_unit(m: &[Vec<Rat>], r: usize) -> Vec<Rat> {
    let n = m.len();
    // Transpose to solve Mᵀ x = e_r by Gaussian elimination.
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| m[j][i].clone()).collect();
            row.push(if i == r { Rat::one() } else { Rat::zero() });
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .expect("nonsingular lattice system");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..=n {
                    let t = &a[col][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    (0..n).map(|i| a[i][n].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(kind: CartanKind, rank: usize) -> RootSystem {
        RootSystem::new(kind, rank).unwrap()
    }

    #[test]
    fn a1_basics() {
        let r = rs(CartanKind::A, 1);
        assert_eq!(r.positive_roots.len(), 1);
        assert_eq!(r.q_denominator, 4);
        assert_eq!(r.degrees, vec![2]);
        assert_eq!(r.weyl_order, 2);
        // ω = α/2 and ρ = ω.
        assert_eq!(r.fund_weights[0].coords, vec![rat(1, 2)]);
        assert_eq!(r.rho, r.fund_weights[0]);
        assert_eq!(r.to_exp(&r.rho.clone()), Some(vec![2]));
        // The half root α/2 = ω shares that exponent vector.
        let half_alpha = r.simple_root(0).to_weight().scaled(&rat(1, 2));
        assert_eq!(r.to_exp(&half_alpha), Some(vec![2]));
    }

    #[test]
    fn a2_tables() {
        let r = rs(CartanKind::A, 2);
        assert_eq!(r.positive_roots.len(), 3);
        assert_eq!(r.degrees, vec![2, 3]);
        assert_eq!(r.weyl_order, 6);
        assert_eq!(r.q_denominator, 6);
        let w1 = &r.fund_weights[0];
        assert_eq!(r.inner(w1, w1), rat(2, 3));
        assert_eq!(w1.coords, vec![rat(2, 3), rat(1, 3)]);
        // Highest root is α₁ + α₂ and all three minuscule coweights exist.
        assert_eq!(r.theta_root().coords, vec![1, 1]);
        assert_eq!(r.minuscule_coweights().len(), 3);
        // Cartan pairing reproduces the Cartan matrix.
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    r.pair_coroot(&r.simple_root(i).to_weight(), j),
                    rat_int(r.cartan[i][j])
                );
            }
        }
    }

    #[test]
    fn b2_tables() {
        let r = rs(CartanKind::B, 2);
        assert_eq!(r.positive_roots.len(), 4);
        assert_eq!(r.degrees, vec![2, 4]);
        assert_eq!(r.weyl_order, 8);
        assert_eq!(r.q_denominator, 4);
        let theta = r.theta_root();
        assert_eq!(theta.coords, vec![1, 2]);
        let tw = theta.to_weight();
        assert_eq!(r.inner(&tw, &tw), rat_int(4));
        // Short root has squared length 2.
        let a2 = r.simple_root(1).to_weight();
        assert_eq!(r.inner(&a2, &a2), rat_int(2));
        // One nonzero minuscule coweight, attached to the long simple root.
        assert_eq!(r.minuscule_coweights_nonzero().len(), 1);
    }

    #[test]
    fn g2_f4_tables() {
        let g = rs(CartanKind::G, 2);
        assert_eq!(g.positive_roots.len(), 6);
        assert_eq!(g.degrees, vec![2, 6]);
        assert_eq!(g.weyl_order, 12);
        assert_eq!(g.q_denominator, 2);
        assert_eq!(g.minuscule_coweights().len(), 1); // only zero
        let f = rs(CartanKind::F, 4);
        assert_eq!(f.positive_roots.len(), 24);
        assert_eq!(f.degrees, vec![2, 6, 8, 12]);
        assert_eq!(f.weyl_order, 1152);
        assert_eq!(f.q_denominator, 2);
    }

    #[test]
    fn classical_series_tables() {
        let a3 = rs(CartanKind::A, 3);
        assert_eq!(a3.degrees, vec![2, 3, 4]);
        assert_eq!(a3.weyl_order, 24);
        let c3 = rs(CartanKind::C, 3);
        assert_eq!(c3.degrees, vec![2, 4, 6]);
        assert_eq!(c3.weyl_order, 48);
        assert_eq!(c3.theta_root().coords, vec![2, 2, 1]);
        assert_eq!(c3.theta_root().half_len_sq, 2);
        let b3 = rs(CartanKind::B, 3);
        assert_eq!(b3.degrees, vec![2, 4, 6]);
        let d4 = rs(CartanKind::D, 4);
        assert_eq!(d4.degrees, vec![2, 4, 4, 6]);
        assert_eq!(d4.weyl_order, 192);
    }

    #[test]
    fn rank_cap_and_validity() {
        assert!(matches!(
            RootSystem::new(CartanKind::A, 5),
            Err(RootSysError::RankCapExceeded { .. })
        ));
        assert!(RootSystem::with_rank_cap(CartanKind::A, 5, 8).is_ok());
        assert!(matches!(
            RootSystem::new(CartanKind::G, 3),
            Err(RootSysError::UnsupportedRank { .. })
        ));
        assert!(matches!(
            RootSystem::new(CartanKind::D, 3),
            Err(RootSysError::UnsupportedRank { .. })
        ));
    }

    #[test]
    fn weyl_group_structure() {
        let r = rs(CartanKind::B, 2);
        let w0 = r.longest_elt();
        assert_eq!(r.weyl_len(w0), 4);
        // w0 is an involution here and sends ρ to -ρ.
        assert_eq!(r.weyl_inverse(w0), w0);
        let rho = r.rho.clone();
        assert_eq!(r.apply_weyl(w0, &rho), -&rho);
        // Exponent-level action matches weight-level action.
        for wi in 0..r.weyl_order() {
            let img = r.apply_weyl(wi, &rho);
            let exp = r.to_exp(&rho).unwrap();
            assert_eq!(r.apply_weyl_exp(wi, &exp), r.to_exp(&img).unwrap());
        }
    }

    #[test]
    fn orbits_and_dominance() {
        let r = rs(CartanKind::A, 2);
        let w1 = r.fund_weights[0].clone();
        assert_eq!(r.orbit(&w1).len(), 3);
        let rho = r.rho.clone();
        assert_eq!(r.orbit(&rho).len(), 6);
        assert_eq!(r.stabilizer_order(&Weight::zero(2)), 6);
        // 0 ≤ α₁+α₂ and the dominant weights under ρ are ρ and 0.
        let theta = r.theta_root().to_weight();
        assert!(r.dominance_leq(&Weight::zero(2), &theta));
        let below = r.dominant_weights_below(&rho);
        assert_eq!(below.len(), 2);
        assert_eq!(below[0], rho);
        assert!(below[1].is_zero());
        // ω₁ and ω₂ are dominance-incomparable with each other.
        assert!(!r.dominance_leq(&r.fund_weights[0].clone(), &r.fund_weights[1].clone()));
    }

    #[test]
    fn the_two_tie_breaking_orders() {
        let r = rs(CartanKind::A, 1);
        let omega = r.fund_weights[0].clone();
        let momega = -&omega;
        // Same dominant representative; the translation-side order prefers
        // the dominant element, the weight-side order the antidominant one.
        assert!(r.prec_translation(&omega, &momega));
        assert!(!r.prec_translation(&momega, &omega));
        assert!(r.prec_weight(&momega, &omega));
        assert!(!r.prec_weight(&omega, &momega));
        assert!(!r.prec_weight(&omega, &omega));
        // First clause: 0 ≺ α either way.
        let alpha = r.simple_root(0).to_weight();
        assert!(r.prec_weight(&Weight::zero(1), &alpha));
        assert!(r.prec_translation(&Weight::zero(1), &alpha));
    }

    #[test]
    fn lattice_memberships() {
        let r = rs(CartanKind::B, 2);
        let w2 = r.fund_weights[1].clone(); // short-node weight, not in Q
        assert!(r.in_weight_lattice(&w2));
        assert!(!r.in_root_lattice(&w2));
        let b1 = r.fund_coweights[0].clone();
        assert!(r.in_coweight_lattice(&b1));
        // θ^∨ ∈ Q^∨.
        let tv = r.theta_root().coroot_weight();
        assert!(r.in_coroot_lattice(&tv));
        assert!(r.in_coweight_lattice(&tv));
    }

    #[test]
    fn exp_round_trip() {
        let r = rs(CartanKind::B, 2);
        for w in [
            r.rho.clone(),
            r.fund_weights[0].clone(),
            &r.fund_weights[1] + &r.fund_weights[1],
            r.theta_root().to_weight().scaled(&rat(1, 2)),
        ] {
            let exp = r.to_exp(&w).unwrap();
            assert_eq!(r.from_exp(&exp), w);
        }
        assert_eq!(r.to_exp(&r.fund_weights[1].scaled(&rat(1, 3))), None);
    }

    #[test]
    fn rho_k_pairs_to_k() {
        let r = rs(CartanKind::B, 2);
        let k = KParam::new(2, 3);
        let rk = r.rho_k(&k);
        // (ρ_k, α_i^∨) = k_i.
        assert_eq!(r.pair_coroot(&rk, 0), rat_int(2));
        assert_eq!(r.pair_coroot(&rk, 1), rat_int(3));
    }
}
