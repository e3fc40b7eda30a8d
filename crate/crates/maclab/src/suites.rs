//! The verification suites.  Each suite expands its parameters into a list
//! of independent cases; a small worker pool may evaluate them in any order,
//! and the results are reassembled by case index so that the rendered report
//! does not depend on the worker count.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use maclab_core::afweyl::{omega_elements, AffineRoot};
use maclab_core::dahaop::{
    antisymmetrize, apply_fy, apply_group_elt, apply_t, apply_t_inv, apply_y, fy_eigenvalue,
    orbit_terms, q_antisymmetrize, t_gen,
};
use maclab_core::dunkl::{apply_b, apply_d, apply_shat, res_sum_squares_check, KhPoly, RatPoly};
use maclab_core::linalg::span_rank;
use maclab_core::macpoly::{
    ct_product_lhs, ct_product_rhs, d_k, inner_cherednik, inner_k, macdonald_eigen,
    macdonald_gram, norm_formula_rhs, orbit_sum, poincare_ct, poincare_ct_rhs, q_rat_pow,
    weyl_character, MacdonaldPoly, Method,
};
use maclab_core::ring::weights::phi_k_factors;
use maclab_core::ring::{qpow, LaurentPoly, Scalar};
use maclab_core::rootsys::{rat_int, KParam, RootSystem, Weight};
use maclab_core::shiftop::{
    c_k, chat_k, verify_antisymmetrizer_bridge, verify_norm_recursion, ShiftContext,
};

use crate::report::CaseRecord;
use crate::select::{dominant_weights_up_to, k_label, weight_from_fund, weight_label, RsSelect};

pub const SUITE_NAMES: &[&str] = &[
    "norm",
    "ct",
    "daha-relations",
    "shift",
    "dunkl",
    "adjoint",
    "antisym",
];

/// Shared knobs for every suite builder.
#[derive(Clone)]
pub struct SuiteParams {
    pub types: Vec<RsSelect>,
    pub k_lo: i64,
    pub k_hi: i64,
    /// Cap on the sum of fundamental coordinates of the weights visited.
    pub maxheight: i64,
    pub method: Method,
    /// Number of variables for the rational-coefficient operator checks.
    pub dunkl_vars: usize,
    /// Total-degree cap for the rational-coefficient operator checks.
    pub dunkl_degree: u32,
}

/// One deferred case: a stable id plus the closure that evaluates it.
pub struct CaseJob {
    pub id: String,
    run: Box<dyn FnOnce() -> CaseRecord + Send>,
}

impl CaseJob {
    pub fn new(id: String, run: impl FnOnce() -> CaseRecord + Send + 'static) -> Self {
        CaseJob {
            id,
            run: Box::new(run),
        }
    }

    pub fn run(self) -> CaseRecord {
        (self.run)()
    }
}

/// Evaluates the cases on up to `jobs` worker threads.  Results are written
/// into per-case slots, so the output order equals the input order no matter
/// how the work is interleaved.
pub fn run_cases(jobs: usize, cases: Vec<CaseJob>) -> Vec<CaseRecord> {
    let jobs = jobs.max(1);
    if jobs == 1 || cases.len() <= 1 {
        return cases.into_iter().map(|c| c.run()).collect();
    }
    let n = cases.len();
    let slots: Vec<Mutex<Option<CaseRecord>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let pending: Vec<Mutex<Option<CaseJob>>> =
        cases.into_iter().map(|c| Mutex::new(Some(c))).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(n) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let job = pending[i].lock().unwrap().take().expect("each job taken once");
                let rec = job.run();
                *slots[i].lock().unwrap() = Some(rec);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every job ran"))
        .collect()
}

pub fn build_suite(name: &str, p: &SuiteParams) -> Result<Vec<CaseJob>, String> {
    match name {
        "norm" => Ok(norm_cases(p)),
        "ct" => Ok(ct_cases(p)),
        "daha-relations" => Ok(daha_cases(p)),
        "shift" => Ok(shift_cases(p)),
        "dunkl" => Ok(dunkl_cases(p)),
        "adjoint" => Ok(adjoint_cases(p)),
        "antisym" => Ok(antisym_cases(p)),
        other => Err(format!(
            "unknown suite `{other}` (expected one of: {})",
            SUITE_NAMES.join(", ")
        )),
    }
}

fn has_two_lengths(rs: &RootSystem) -> bool {
    let lengths: BTreeSet<i64> = rs.positive_roots.iter().map(|r| r.half_len_sq).collect();
    lengths.len() > 1
}

/// Multiplicity choices for one root system: every equal value in the range,
/// plus adjacent unequal long/short pairs when two root lengths exist.
fn kparams(rs: &RootSystem, lo: i64, hi: i64, include_unequal: bool) -> Vec<KParam> {
    let lo = lo.max(0);
    let mut out: Vec<KParam> = (lo..=hi).map(KParam::equal).collect();
    if include_unequal && has_two_lengths(rs) {
        for a in lo.max(1)..hi {
            out.push(KParam {
                k_long: a,
                k_short: a + 1,
            });
            out.push(KParam {
                k_long: a + 1,
                k_short: a,
            });
        }
    }
    out
}

/// All exponent vectors with entries in `{-2, 0, 2}` — the monomial grid the
/// operator-relation checks run over.
fn grid_exps(rank: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for idx in 0..3usize.pow(rank as u32) {
        let mut e = vec![0i64; rank];
        let mut v = idx;
        for x in e.iter_mut() {
            *x = ((v % 3) as i64 - 1) * 2;
            v /= 3;
        }
        out.push(e);
    }
    out
}

fn mono(e: &[i64]) -> LaurentPoly {
    LaurentPoly::monomial(e.to_vec(), Scalar::one())
}

fn build_poly(rs: &RootSystem, k: &KParam, lambda: &Weight, method: Method) -> (MacdonaldPoly, bool) {
    match method {
        Method::Both => {
            let g = macdonald_gram(rs, k, lambda);
            let e = macdonald_eigen(rs, k, lambda);
            let agree = g == e;
            (g, agree)
        }
        Method::Gram => (macdonald_gram(rs, k, lambda), true),
        Method::Eigen => (macdonald_eigen(rs, k, lambda), true),
    }
}

// ---------------------------------------------------------------------------
// norm
// ---------------------------------------------------------------------------

fn norm_cases(p: &SuiteParams) -> Vec<CaseJob> {
    let mut jobs = Vec::new();
    for sel in &p.types {
        let rs0 = sel.build();
        let lambdas = dominant_weights_up_to(&rs0, p.maxheight);
        for k in kparams(&rs0, p.k_lo, p.k_hi, true) {
            for (coords, _) in &lambdas {
                let id = format!(
                    "norm/{}/{}/{}",
                    sel.label,
                    k_label(&k),
                    weight_label(coords)
                );
                let sel = sel.clone();
                let coords = coords.clone();
                let method = p.method;
                let jid = id.clone();
                jobs.push(CaseJob::new(id, move || {
                    let rs = sel.build();
                    let lambda = weight_from_fund(&rs, &coords);
                    norm_case(jid, &rs, &k, &lambda, method)
                }));
            }
        }
    }
    jobs
}

fn norm_case(id: String, rs: &RootSystem, k: &KParam, lambda: &Weight, method: Method) -> CaseRecord {
    let (p, methods_agree) = build_poly(rs, k, lambda, method);
    let mut notes: Vec<String> = Vec::new();
    if method == Method::Both {
        notes.push(if methods_agree {
            "gram and eigen agree".to_string()
        } else {
            "gram and eigen disagree".to_string()
        });
    }
    if k.k_long == 0 && k.k_short == 0 {
        // Degenerate multiplicity: the polynomial collapses to the plain
        // orbit sum, which is the meaningful exact check here.
        let collapses = p.coeffs.len() == 1
            && p.coeffs
                .get(lambda)
                .map(|c| c.is_one())
                .unwrap_or(false);
        notes.push("k=0: equals the monomial orbit sum".to_string());
        return CaseRecord {
            id,
            q_denominator: rs.q_denominator,
            lhs: None,
            rhs: None,
            pass: collapses && methods_agree,
            note: notes.join("; "),
        };
    }
    let expanded = p.expand(rs);
    let lhs = inner_k(rs, k, &expanded, &expanded);
    let rhs = norm_formula_rhs(rs, k, lambda);
    let mut pass = lhs == rhs && methods_agree;
    if k.k_long == 1 && k.k_short == 1 {
        let chi = weyl_character(rs, lambda);
        let matches = expanded == chi;
        notes.push("k=1: compared against the Weyl character".to_string());
        pass = pass && matches;
        if !matches {
            notes.push("Weyl character mismatch".to_string());
        }
    }
    CaseRecord {
        id,
        q_denominator: rs.q_denominator,
        lhs: Some(lhs.to_text()),
        rhs: Some(rhs.to_text()),
        pass,
        note: notes.join("; "),
    }
}

// ---------------------------------------------------------------------------
// ct
// ---------------------------------------------------------------------------

fn ct_cases(p: &SuiteParams) -> Vec<CaseJob> {
    let mut jobs = Vec::new();
    for sel in &p.types {
        // The constant-term identities hold for strictly positive
        // multiplicities; at zero both sides degenerate differently.
        for kv in p.k_lo.max(1)..=p.k_hi {
            let k = KParam::equal(kv);
            let id = format!("ct/{}/k{}/poincare", sel.label, kv);
            let sel1 = sel.clone();
            let jid = id.clone();
            jobs.push(CaseJob::new(id, move || {
                let rs = sel1.build();
                let lhs = poincare_ct(&rs, &k);
                let rhs = poincare_ct_rhs(&rs, &k);
                CaseRecord::compare(jid, rs.q_denominator, lhs.to_text(), rhs.to_text())
            }));
            let id = format!("ct/{}/k{}/full-product", sel.label, kv);
            let sel2 = sel.clone();
            let jid = id.clone();
            jobs.push(CaseJob::new(id, move || {
                let rs = sel2.build();
                let lhs = ct_product_lhs(&rs, kv);
                let rhs = ct_product_rhs(&rs, kv);
                let ratio = &lhs / &rhs;
                let (pass, note) = match ratio.as_u_monomial() {
                    Some((num, den, _)) => {
                        let unit = num == den || num == -den.clone();
                        (
                            unit,
                            format!("agrees up to the pure monomial factor {}", ratio.to_text()),
                        )
                    }
                    None => (false, "ratio is not a pure monomial".to_string()),
                };
                CaseRecord {
                    id: jid,
                    q_denominator: rs.q_denominator,
                    lhs: Some(lhs.to_text()),
                    rhs: Some(rhs.to_text()),
                    pass,
                    note,
                }
            }));
        }
    }
    jobs
}

// ---------------------------------------------------------------------------
// daha-relations
// ---------------------------------------------------------------------------

/// Finite part of the `j`-th generator's root: the simple root for finite
/// indices, minus the highest root for the extra node.
fn affine_finite_part(rs: &RootSystem, j: usize) -> Weight {
    if j < rs.rank {
        rs.simple_root(j).to_weight()
    } else {
        rs.theta_root().to_weight().scaled(&rat_int(-1))
    }
}

/// Order of `s_i s_j` read off the product of the two Cartan integers;
/// `None` when the product is four or more (no finite braid relation, as for
/// the rank-one extended diagram).
fn braid_order(rs: &RootSystem, i: usize, j: usize) -> Option<usize> {
    let bi = affine_finite_part(rs, i);
    let bj = affine_finite_part(rs, j);
    let two = rat_int(2);
    let aij = &(&two * &rs.inner(&bi, &bj)) / &rs.inner(&bj, &bj);
    let aji = &(&two * &rs.inner(&bi, &bj)) / &rs.inner(&bi, &bi);
    let prod = &aij * &aji;
    if prod == rat_int(0) {
        Some(2)
    } else if prod == rat_int(1) {
        Some(3)
    } else if prod == rat_int(2) {
        Some(4)
    } else if prod == rat_int(3) {
        Some(6)
    } else {
        None
    }
}

fn alternating_apply(
    rs: &RootSystem,
    k: &KParam,
    first: usize,
    second: usize,
    len: usize,
    f: &LaurentPoly,
) -> LaurentPoly {
    let seq: Vec<usize> = (0..len)
        .map(|s| if s % 2 == 0 { first } else { second })
        .collect();
    let mut acc = f.clone();
    for &j in seq.iter().rev() {
        acc = apply_t(rs, k, j, &acc);
    }
    acc
}

fn daha_cases(p: &SuiteParams) -> Vec<CaseJob> {
    let mut jobs = Vec::new();
    for sel in &p.types {
        let rs0 = sel.build();
        for k in kparams(&rs0, p.k_lo.max(1), p.k_hi, true) {
            for class in [
                "quadratic",
                "braid",
                "omega",
                "cross",
                "y-commute",
                "center",
            ] {
                let id = format!("daha/{}/{}/{}", sel.label, k_label(&k), class);
                let sel1 = sel.clone();
                let jid = id.clone();
                jobs.push(CaseJob::new(id, move || {
                    let rs = sel1.build();
                    daha_class_case(jid, &rs, &k, class)
                }));
            }
        }
    }
    jobs
}

fn daha_class_case(id: String, rs: &RootSystem, k: &KParam, class: &str) -> CaseRecord {
    let grid = grid_exps(rs.rank);
    let mut pass = true;
    let mut checked = 0usize;
    match class {
        "quadratic" => {
            // (T_j - t_j)(T_j + t_j^{-1}) kills every grid monomial.
            for j in 0..=rs.rank {
                let t = t_gen(rs, k, j);
                let diff = &t.inverse() - &t;
                for e in &grid {
                    let f = mono(e);
                    let a = apply_t(rs, k, j, &f);
                    let b = apply_t(rs, k, j, &a);
                    let lhs = &(&b + &a.scaled(&diff)) - &f;
                    pass &= lhs.is_zero();
                    checked += 1;
                }
            }
        }
        "braid" => {
            for i in 0..=rs.rank {
                for j in (i + 1)..=rs.rank {
                    let Some(m) = braid_order(rs, i, j) else {
                        continue;
                    };
                    for e in &grid {
                        let f = mono(e);
                        let lhs = alternating_apply(rs, k, i, j, m, &f);
                        let rhs = alternating_apply(rs, k, j, i, m, &f);
                        pass &= lhs == rhs;
                        checked += 1;
                    }
                }
            }
        }
        "omega" => {
            // π T_j π^{-1} = T_{σ(j)} where π permutes the extended diagram.
            for omega in omega_elements(rs) {
                if omega.is_identity(rs) {
                    continue;
                }
                let inv = omega.inverse(rs);
                for j in 0..=rs.rank {
                    let img = omega.apply_affine_root(rs, &AffineRoot::simple(rs, j));
                    let Some(sj) = (0..=rs.rank).find(|&i| AffineRoot::simple(rs, i) == img)
                    else {
                        pass = false;
                        continue;
                    };
                    for e in &grid {
                        let f = mono(e);
                        let lhs = apply_group_elt(
                            rs,
                            &omega,
                            &apply_t(rs, k, j, &apply_group_elt(rs, &inv, &f)),
                        );
                        let rhs = apply_t(rs, k, sj, &f);
                        pass &= lhs == rhs;
                        checked += 1;
                    }
                }
            }
        }
        "cross" => {
            let one = Scalar::one();
            for mu in &grid {
                for j in 0..rs.rank {
                    let r = mu[j] / 2;
                    let t = t_gen(rs, k, j);
                    let tdiff = &t - &t.inverse();
                    for e in &grid {
                        let g = mono(e);
                        let xg = g.mul_monomial(mu, &one);
                        let lhs = apply_t(rs, k, j, &xg);
                        let tg = apply_t(rs, k, j, &g);
                        let ok = match r {
                            0 => lhs == tg.mul_monomial(mu, &one),
                            1 => {
                                let se = rs.apply_weyl_exp(rs.simple_reflection(j), mu);
                                &lhs - &tg.mul_monomial(&se, &one) == xg.scaled(&tdiff)
                            }
                            -1 => {
                                let se = rs.apply_weyl_exp(rs.simple_reflection(j), mu);
                                let rhs = g.mul_monomial(&se, &(-&tdiff));
                                &lhs - &tg.mul_monomial(&se, &one) == rhs
                            }
                            _ => continue,
                        };
                        pass &= ok;
                        checked += 1;
                    }
                }
                // Extra node: the reflection shifts by the highest root and a
                // compensating q-power.
                let rhat = -rs.exp_pair_coroot_x2(mu, rs.theta_root()) / 2;
                if rhat.abs() <= 1 {
                    let theta_exp: Vec<i64> = rs
                        .to_exp(&rs.theta_root().to_weight())
                        .expect("highest root lies in the weight lattice");
                    let t0 = t_gen(rs, k, rs.rank);
                    let tdiff = &t0 - &t0.inverse();
                    let image_exp: Vec<i64> = mu
                        .iter()
                        .zip(&theta_exp)
                        .map(|(&a, &b)| a + rhat * b)
                        .collect();
                    let qshift = qpow(rs, 2 * rhat);
                    for e in &grid {
                        let g = mono(e);
                        let xg = g.mul_monomial(mu, &one);
                        let lhs = apply_t(rs, k, rs.rank, &xg);
                        let tg = apply_t(rs, k, rs.rank, &g);
                        let ok = match rhat {
                            0 => lhs == tg.mul_monomial(mu, &one),
                            1 => {
                                &lhs - &tg.mul_monomial(&image_exp, &qshift)
                                    == xg.scaled(&tdiff)
                            }
                            -1 => {
                                let rhs = g.mul_monomial(&image_exp, &(-&(&qshift * &tdiff)));
                                &lhs - &tg.mul_monomial(&image_exp, &qshift) == rhs
                            }
                            _ => unreachable!(),
                        };
                        pass &= ok;
                        checked += 1;
                    }
                }
            }
        }
        "y-commute" => {
            for i in 0..rs.rank {
                for j in i..rs.rank {
                    let li = &rs.fund_coweights[i];
                    let lj = &rs.fund_coweights[j];
                    let sum = li + lj;
                    for e in &grid {
                        let f = mono(e);
                        let ab = apply_y(rs, k, li, &apply_y(rs, k, lj, &f));
                        let ba = apply_y(rs, k, lj, &apply_y(rs, k, li, &f));
                        let joint = apply_y(rs, k, &sum, &f);
                        pass &= ab == ba && ab == joint;
                        checked += 1;
                    }
                }
            }
        }
        "center" => {
            // W-closed translation sums commute with every generator.
            for i in 0..rs.rank {
                let terms = orbit_terms(rs, &rs.fund_coweights[i]);
                for j in 0..=rs.rank {
                    for e in &grid {
                        let f = mono(e);
                        let lhs = apply_t(rs, k, j, &apply_fy(rs, k, &terms, &f));
                        let rhs = apply_fy(rs, k, &terms, &apply_t(rs, k, j, &f));
                        pass &= lhs == rhs;
                        checked += 1;
                    }
                }
            }
        }
        other => panic!("unknown relation class {other}"),
    }
    CaseRecord::bulk(id, rs.q_denominator, pass, checked)
}

// ---------------------------------------------------------------------------
// adjoint
// ---------------------------------------------------------------------------

fn adjoint_cases(p: &SuiteParams) -> Vec<CaseJob> {
    let mut jobs = Vec::new();
    for sel in &p.types {
        let rs0 = sel.build();
        for k in kparams(&rs0, p.k_lo.max(1), p.k_hi, true) {
            for class in [
                "y-triangular",
                "fy-triangular",
                "eigenfunction",
                "t-star",
                "y-star",
            ] {
                let id = format!("adjoint/{}/{}/{}", sel.label, k_label(&k), class);
                let sel1 = sel.clone();
                let jid = id.clone();
                let maxheight = p.maxheight;
                jobs.push(CaseJob::new(id, move || {
                    let rs = sel1.build();
                    adjoint_class_case(jid, &rs, &k, class, maxheight)
                }));
            }
        }
    }
    jobs
}

fn adjoint_class_case(
    id: String,
    rs: &RootSystem,
    k: &KParam,
    class: &str,
    maxheight: i64,
) -> CaseRecord {
    let mut pass = true;
    let mut checked = 0usize;
    match class {
        "y-triangular" => {
            let rho_k = rs.rho_k(k);
            for lam in &rs.fund_coweights {
                for e in grid_exps(rs.rank) {
                    let mu = rs.from_exp(&e);
                    let g = apply_y(rs, k, lam, &mono(&e));
                    for (e2, _) in g.terms() {
                        let nu = rs.from_exp(e2);
                        pass &= nu == mu || rs.prec_weight(&nu, &mu);
                    }
                    if rs.is_dominant(&mu) {
                        let expo = &rat_int(2) * &rs.inner(lam, &(&mu + &rho_k));
                        pass &= g.coeff(&e) == q_rat_pow(rs, &expo);
                    }
                    checked += 1;
                }
            }
        }
        "fy-triangular" => {
            for i in 0..rs.rank {
                let terms = orbit_terms(rs, &rs.fund_coweights[i]);
                for (_, mu) in dominant_weights_up_to(rs, maxheight.min(2)) {
                    let m = orbit_sum(rs, &mu);
                    let image = apply_fy(rs, k, &terms, &m);
                    let msum = maclab_core::macpoly::to_msum(rs, &image);
                    for (nu, c) in &msum {
                        if nu == &mu {
                            pass &= c == &fy_eigenvalue(rs, k, &terms, &mu);
                        } else {
                            pass &= rs.dominance_leq(nu, &mu);
                        }
                    }
                    checked += 1;
                }
            }
        }
        "eigenfunction" => {
            for (_, lambda) in dominant_weights_up_to(rs, maxheight.min(2)) {
                let pe = macdonald_gram(rs, k, &lambda).expand(rs);
                for i in 0..rs.rank {
                    let terms = orbit_terms(rs, &rs.fund_coweights[i]);
                    let lhs = apply_fy(rs, k, &terms, &pe);
                    let rhs = pe.scaled(&fy_eigenvalue(rs, k, &terms, &lambda));
                    pass &= lhs == rhs;
                    checked += 1;
                }
            }
        }
        "t-star" => {
            let mons: Vec<LaurentPoly> = grid_exps(rs.rank)
                .into_iter()
                .take(5)
                .map(|e| mono(&e))
                .collect();
            for f in &mons {
                for g in &mons {
                    for i in 0..rs.rank {
                        let lhs = inner_cherednik(rs, k, &apply_t(rs, k, i, f), g);
                        let rhs = inner_cherednik(rs, k, f, &apply_t_inv(rs, k, i, g));
                        pass &= lhs == rhs;
                        checked += 1;
                    }
                }
            }
        }
        "y-star" => {
            let mons: Vec<LaurentPoly> = grid_exps(rs.rank)
                .into_iter()
                .take(4)
                .map(|e| mono(&e))
                .collect();
            for lam in &rs.fund_coweights {
                let neg = lam.scaled(&rat_int(-1));
                for f in &mons {
                    for g in &mons {
                        let lhs = inner_cherednik(rs, k, &apply_y(rs, k, lam, f), g);
                        let rhs = inner_cherednik(rs, k, f, &apply_y(rs, k, &neg, g));
                        pass &= lhs == rhs;
                        checked += 1;
                    }
                }
            }
        }
        other => panic!("unknown adjoint class {other}"),
    }
    CaseRecord::bulk(id, rs.q_denominator, pass, checked)
}

// ---------------------------------------------------------------------------
// shift
// ---------------------------------------------------------------------------

fn shift_cases(p: &SuiteParams) -> Vec<CaseJob> {
    let mut jobs = Vec::new();
    let lo = p.k_lo.max(1);
    for sel in &p.types {
        let rs0 = sel.build();
        let lambdas = dominant_weights_up_to(&rs0, p.maxheight);
        for kv in lo..=p.k_hi {
            for (coords, _) in &lambdas {
                let id = format!("shift/{}/k{}/raise/{}", sel.label, kv, weight_label(coords));
                let sel1 = sel.clone();
                let coords1 = coords.clone();
                let jid = id.clone();
                jobs.push(CaseJob::new(id, move || {
                    let rs = sel1.build();
                    shift_raise_case(jid, &rs, kv, &coords1)
                }));
                let id = format!("shift/{}/k{}/lower/{}", sel.label, kv, weight_label(coords));
                let sel2 = sel.clone();
                let coords2 = coords.clone();
                let jid = id.clone();
                jobs.push(CaseJob::new(id, move || {
                    let rs = sel2.build();
                    shift_lower_case(jid, &rs, kv, &coords2)
                }));
            }
            let id = format!("shift/{}/k{}/raise-kill", sel.label, kv);
            let sel3 = sel.clone();
            let jid = id.clone();
            let maxheight = p.maxheight;
            jobs.push(CaseJob::new(id, move || {
                let rs = sel3.build();
                shift_kill_case(jid, &rs, kv, maxheight)
            }));
            let id = format!("shift/{}/k{}/adjoint", sel.label, kv);
            let sel4 = sel.clone();
            let jid = id.clone();
            jobs.push(CaseJob::new(id, move || {
                let rs = sel4.build();
                shift_adjoint_case(jid, &rs, kv)
            }));
        }
        for (coords, _) in &lambdas {
            let id = format!("shift/{}/ladder/{}", sel.label, weight_label(coords));
            let sel5 = sel.clone();
            let coords5 = coords.clone();
            let jid = id.clone();
            let khi = p.k_hi.max(1);
            jobs.push(CaseJob::new(id, move || {
                let rs = sel5.build();
                let lambda = weight_from_fund(&rs, &coords5);
                let ok = verify_norm_recursion(&rs, &lambda, khi);
                CaseRecord::bulk(jid, rs.q_denominator, ok, 1)
                    .with_note(format!("recursion down from k={khi}"))
            }));
        }
    }
    jobs
}

/// Raising: the operator sends the orthogonal polynomial for `λ+ρ` at
/// multiplicity `k` to a predicted multiple of the one for `λ` at `k+1`.
fn shift_raise_case(id: String, rs: &RootSystem, kv: i64, coords: &[i64]) -> CaseRecord {
    let lambda = weight_from_fund(rs, coords);
    let shifted = &lambda + &rs.rho;
    let ctx = ShiftContext::new(rs, kv);
    let input = macdonald_gram(rs, &KParam::equal(kv), &shifted).expand(rs);
    let image = ctx.apply_g(rs, &input);
    let target = macdonald_gram(rs, &KParam::equal(kv + 1), &lambda).expand(rs);
    let np = rs.positive_roots.len() as i64;
    let predicted = &qpow(rs, kv * np) * &c_k(rs, kv, &lambda);
    let lead = image.coeff(&rs.to_exp(&lambda).expect("dominant weight"));
    let pass = lead == predicted && image == target.scaled(&predicted);
    CaseRecord {
        id,
        q_denominator: rs.q_denominator,
        lhs: Some(lead.to_text()),
        rhs: Some(predicted.to_text()),
        pass,
        note: "proportionality constant of the raising step".to_string(),
    }
}

/// Lowering: the adjoint operator undoes the shift with its own predicted
/// constant.
fn shift_lower_case(id: String, rs: &RootSystem, kv: i64, coords: &[i64]) -> CaseRecord {
    let lambda = weight_from_fund(rs, coords);
    let shifted = &lambda + &rs.rho;
    let ctx = ShiftContext::new(rs, kv);
    let input = macdonald_gram(rs, &KParam::equal(kv + 1), &lambda).expand(rs);
    let image = ctx.apply_ghat(rs, &input);
    let target = macdonald_gram(rs, &KParam::equal(kv), &shifted).expand(rs);
    let np = rs.positive_roots.len() as i64;
    let predicted = &qpow(rs, -kv * np) * &chat_k(rs, kv, &lambda);
    let lead = image.coeff(&rs.to_exp(&shifted).expect("dominant weight"));
    let pass = lead == predicted && image == target.scaled(&predicted);
    CaseRecord {
        id,
        q_denominator: rs.q_denominator,
        lhs: Some(lead.to_text()),
        rhs: Some(predicted.to_text()),
        pass,
        note: "proportionality constant of the lowering step".to_string(),
    }
}

/// The raising operator annihilates every basis polynomial whose index does
/// not exceed `ρ` componentwise.
fn shift_kill_case(id: String, rs: &RootSystem, kv: i64, maxheight: i64) -> CaseRecord {
    let ctx = ShiftContext::new(rs, kv);
    let mut pass = true;
    let mut checked = 0usize;
    for (coords, nu) in dominant_weights_up_to(rs, maxheight) {
        if coords.iter().all(|&c| c >= 1) {
            continue;
        }
        let input = macdonald_gram(rs, &KParam::equal(kv), &nu).expand(rs);
        pass &= ctx.apply_g(rs, &input).is_zero();
        checked += 1;
    }
    CaseRecord::bulk(id, rs.q_denominator, pass, checked)
}

/// `⟨G f, g⟩'` at multiplicity `k+1` equals the mass-ratio times
/// `⟨f, Ĝ g⟩'` at multiplicity `k`, on symmetric inputs.
fn shift_adjoint_case(id: String, rs: &RootSystem, kv: i64) -> CaseRecord {
    let ctx = ShiftContext::new(rs, kv);
    let ratio = &d_k(rs, &KParam::equal(kv + 1)) / &d_k(rs, &KParam::equal(kv));
    let mut fs = vec![LaurentPoly::one(rs.rank)];
    let mut gs = vec![LaurentPoly::one(rs.rank)];
    fs.push(orbit_sum(rs, &rs.fund_weights[0]));
    gs.push(orbit_sum(rs, &rs.fund_weights[rs.rank - 1]));
    fs.push(orbit_sum(rs, &weight_from_fund(rs, &vec![1; rs.rank])));
    let mut pass = true;
    let mut checked = 0usize;
    for f in &fs {
        for g in &gs {
            let lhs = inner_cherednik(rs, &KParam::equal(kv + 1), &ctx.apply_g(rs, f), g);
            let rhs = &ratio * &inner_cherednik(rs, &KParam::equal(kv), f, &ctx.apply_ghat(rs, g));
            pass &= lhs == rhs;
            checked += 1;
        }
    }
    CaseRecord::bulk(id, rs.q_denominator, pass, checked)
}

// ---------------------------------------------------------------------------
// antisym
// ---------------------------------------------------------------------------

fn antisym_cases(p: &SuiteParams) -> Vec<CaseJob> {
    let mut jobs = Vec::new();
    for sel in &p.types {
        let rs0 = sel.build();
        let lambdas = dominant_weights_up_to(&rs0, p.maxheight);
        for kv in p.k_lo.max(1)..=p.k_hi {
            for class in ["divisible", "projector", "bridge"] {
                let id = format!("antisym/{}/k{}/{}", sel.label, kv, class);
                let sel1 = sel.clone();
                let jid = id.clone();
                let maxheight = p.maxheight;
                jobs.push(CaseJob::new(id, move || {
                    let rs = sel1.build();
                    antisym_class_case(jid, &rs, kv, class, maxheight)
                }));
            }
            for (coords, _) in &lambdas {
                let id = format!("antisym/{}/k{}/rank/{}", sel.label, kv, weight_label(coords));
                let sel2 = sel.clone();
                let coords2 = coords.clone();
                let jid = id.clone();
                jobs.push(CaseJob::new(id, move || {
                    let rs = sel2.build();
                    antisym_rank_case(jid, &rs, kv, &coords2)
                }));
            }
        }
    }
    jobs
}

/// Monomial exponents spanning the space of all `X^ν` with dominant
/// representative at most `λ`.
fn cell_exps(rs: &RootSystem, lambda: &Weight) -> Vec<Vec<i64>> {
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    for mu in rs.dominant_weights_below(lambda) {
        let e = rs.to_exp(&mu).expect("dominant weight below a lattice weight");
        for o in rs.orbit_exp(&e) {
            set.insert(o);
        }
    }
    set.into_iter().collect()
}

fn antisym_class_case(
    id: String,
    rs: &RootSystem,
    kv: i64,
    class: &str,
    maxheight: i64,
) -> CaseRecord {
    let k = KParam::equal(kv);
    let neg = KParam::equal(-kv);
    let mut pass = true;
    let mut checked = 0usize;
    let lambdas = dominant_weights_up_to(rs, maxheight);
    match class {
        "divisible" => {
            // Images of the deformed antisymmetrizer are divisible by the
            // deformed odd denominator, with symmetric quotient.
            let factors = phi_k_factors(rs, &neg);
            let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
            for (_, lambda) in &lambdas {
                for e in cell_exps(rs, lambda) {
                    if !seen.insert(e.clone()) {
                        continue;
                    }
                    let h = q_antisymmetrize(rs, &k, &mono(&e));
                    if !h.is_zero() {
                        match h.exact_div_many(&factors) {
                            Ok(qt) => pass &= qt.is_symmetric(rs),
                            Err(_) => pass = false,
                        }
                    }
                    checked += 1;
                }
            }
        }
        "projector" => {
            let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
            for (_, lambda) in &lambdas {
                let sym = orbit_sum(rs, lambda);
                pass &= q_antisymmetrize(rs, &k, &sym).is_zero();
                checked += 1;
                for e in cell_exps(rs, lambda) {
                    if !seen.insert(e.clone()) {
                        continue;
                    }
                    let once = q_antisymmetrize(rs, &k, &mono(&e));
                    pass &= q_antisymmetrize(rs, &k, &once) == once;
                    checked += 1;
                }
            }
        }
        "bridge" => {
            let mut fs = vec![LaurentPoly::one(rs.rank)];
            fs.push(orbit_sum(rs, &rs.fund_weights[0]));
            fs.push(orbit_sum(rs, &weight_from_fund(rs, &vec![1; rs.rank])));
            for f in &fs {
                pass &= verify_antisymmetrizer_bridge(rs, kv, f);
                checked += 1;
            }
        }
        other => panic!("unknown antisym class {other}"),
    }
    CaseRecord::bulk(id, rs.q_denominator, pass, checked)
}

/// Rank comparison: on the span of all monomials below `λ`, the deformed and
/// the classical antisymmetrizers have equal rank (hence equal kernel
/// dimension).
fn antisym_rank_case(id: String, rs: &RootSystem, kv: i64, coords: &[i64]) -> CaseRecord {
    let k = KParam::equal(kv);
    let lambda = weight_from_fund(rs, coords);
    let exps = cell_exps(rs, &lambda);
    let dim = exps.len();
    let images_q: Vec<LaurentPoly> = exps
        .iter()
        .map(|e| q_antisymmetrize(rs, &k, &mono(e)))
        .collect();
    let images_c: Vec<LaurentPoly> = exps.iter().map(|e| antisymmetrize(rs, &mono(e))).collect();
    let support: BTreeSet<Vec<i64>> = images_q
        .iter()
        .chain(images_c.iter())
        .flat_map(|f| f.terms().map(|(e, _)| e.clone()))
        .collect();
    let coords_of = |f: &LaurentPoly| -> Vec<Scalar> {
        support.iter().map(|e| f.coeff(e)).collect()
    };
    let rank_q = span_rank(&images_q.iter().map(&coords_of).collect::<Vec<_>>());
    let rank_c = span_rank(&images_c.iter().map(&coords_of).collect::<Vec<_>>());
    let mut rec = CaseRecord::compare(
        id,
        rs.q_denominator,
        rank_q.to_string(),
        rank_c.to_string(),
    );
    rec.note = format!(
        "ranks on a {dim}-dimensional span; kernel dimensions {} and {}",
        dim - rank_q,
        dim - rank_c
    );
    rec
}

// ---------------------------------------------------------------------------
// dunkl
// ---------------------------------------------------------------------------

/// All monomials in `n` variables of total degree at most `d`.
fn rat_monomials(n: usize, d: u32) -> Vec<RatPoly> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let used: u32 = cur.iter().sum();
        for v in 0..=(d - used) {
            cur.push(v);
            rec(n, d, cur, out);
            cur.pop();
        }
    }
    let mut exps = Vec::new();
    rec(n, d, &mut Vec::new(), &mut exps);
    exps.into_iter()
        .map(|e| {
            let mut p = RatPoly::zero(n);
            p.add_term(e, KhPoly::one());
            p
        })
        .collect()
}

/// Elementary symmetric polynomial `e_r` in `n` variables.
fn rat_elementary(n: usize, r: usize) -> RatPoly {
    let mut sum = RatPoly::zero(n);
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let mut e = vec![0u32; n];
        for &i in &idx {
            e[i] = 1;
        }
        let mut term = RatPoly::zero(n);
        term.add_term(e, KhPoly::one());
        sum = sum.add(&term);
        // next r-combination of {0..n}
        let mut pos = r;
        loop {
            if pos == 0 {
                return sum;
            }
            pos -= 1;
            if idx[pos] + 1 <= n - (r - pos) {
                idx[pos] += 1;
                for p2 in pos + 1..r {
                    idx[p2] = idx[p2 - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Products of elementary symmetric polynomials with total degree at most
/// `d` — an exact basis slice of the symmetric subspace.
fn symmetric_basis(n: usize, d: u32) -> Vec<RatPoly> {
    let es: Vec<(u32, RatPoly)> = (1..=n)
        .map(|r| (r as u32, rat_elementary(n, r)))
        .collect();
    let mut out = vec![RatPoly::one(n)];
    let mut stack = vec![(0usize, 0u32, RatPoly::one(n))];
    while let Some((start, deg, poly)) = stack.pop() {
        for (i, (di, ei)) in es.iter().enumerate().skip(start) {
            if deg + di > d {
                continue;
            }
            let next = poly.mul(ei);
            out.push(next.clone());
            stack.push((i, deg + di, next));
        }
    }
    out
}

fn dunkl_cases(p: &SuiteParams) -> Vec<CaseJob> {
    let vars = p.dunkl_vars.max(2);
    let degree = p.dunkl_degree;
    let mut jobs = Vec::new();
    let id = "dunkl/basics".to_string();
    let jid = id.clone();
    jobs.push(CaseJob::new(id, move || {
        let mut pass = true;
        let mut checked = 0usize;
        for n in 2..=vars {
            for i in 0..n {
                for j in 0..n {
                    let image = apply_d(i, &RatPoly::var(n, j));
                    let expected = if i == j {
                        let mut e = KhPoly::one();
                        e.add_term(1, 0, rat_int(n as i64 - 1));
                        RatPoly::one(n).scaled(&e)
                    } else {
                        RatPoly::one(n).scaled(&KhPoly::k_gen().neg())
                    };
                    pass &= image.sub(&expected).is_zero();
                    checked += 1;
                }
            }
        }
        CaseRecord::bulk(jid, 0, pass, checked)
    }));
    for n in 2..=vars {
        let id = format!("dunkl/commute/n{n}");
        let jid = id.clone();
        jobs.push(CaseJob::new(id, move || {
            let mut pass = true;
            let mut checked = 0usize;
            for f in rat_monomials(n, degree) {
                for i in 0..n {
                    for j in i + 1..n {
                        let ab = apply_d(i, &apply_d(j, &f));
                        let ba = apply_d(j, &apply_d(i, &f));
                        pass &= ab.sub(&ba).is_zero();
                        checked += 1;
                    }
                }
            }
            CaseRecord::bulk(jid, 0, pass, checked)
        }));
    }
    let id = "dunkl/yang-baxter".to_string();
    let jid = id.clone();
    let yb_deg = degree.min(5);
    jobs.push(CaseJob::new(id, move || {
        let mut pass = true;
        let mut checked = 0usize;
        for f in rat_monomials(3, yb_deg) {
            let lhs = apply_b(0, 1, &apply_b(1, 2, &apply_b(0, 1, &f)));
            let rhs = apply_b(1, 2, &apply_b(0, 1, &apply_b(1, 2, &f)));
            pass &= lhs.sub(&rhs).is_zero();
            checked += 1;
        }
        CaseRecord::bulk(jid, 0, pass, checked)
    }));
    let id = "dunkl/degenerate".to_string();
    let jid = id.clone();
    let dg_deg = degree.min(4);
    jobs.push(CaseJob::new(id, move || {
        let mut pass = true;
        let mut checked = 0usize;
        for f in rat_monomials(3, dg_deg) {
            for i in 0..2 {
                // involution
                let twice = apply_shat(i, &apply_shat(i, &f));
                pass &= twice.sub(&f).is_zero();
                // deformed commutation with the adjacent coordinates
                let xi = RatPoly::var(3, i);
                let xi1 = RatPoly::var(3, i + 1);
                let h = RatPoly::one(3).scaled(&KhPoly::h_gen());
                let a = xi1.mul(&apply_shat(i, &f)).sub(&apply_shat(i, &xi.mul(&f)));
                pass &= a.sub(&h.mul(&f)).is_zero();
                let b = apply_shat(i, &xi1.mul(&f)).sub(&xi.mul(&apply_shat(i, &f)));
                pass &= b.sub(&h.mul(&f)).is_zero();
                checked += 3;
            }
            let lhs = apply_shat(0, &apply_shat(1, &apply_shat(0, &f)));
            let rhs = apply_shat(1, &apply_shat(0, &apply_shat(1, &f)));
            pass &= lhs.sub(&rhs).is_zero();
            checked += 1;
        }
        for f in rat_monomials(4, dg_deg.min(3)) {
            let lhs = apply_shat(0, &apply_shat(2, &f));
            let rhs = apply_shat(2, &apply_shat(0, &f));
            pass &= lhs.sub(&rhs).is_zero();
            checked += 1;
        }
        CaseRecord::bulk(jid, 0, pass, checked)
    }));
    let id = "dunkl/conjugation".to_string();
    let jid = id.clone();
    let cj_deg = degree.min(4);
    jobs.push(CaseJob::new(id, move || {
        let mut pass = true;
        let mut checked = 0usize;
        let perms = [
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 1, 0],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        for f in rat_monomials(3, cj_deg) {
            for perm in &perms {
                let mut inv = vec![0usize; 3];
                for (a, &b) in perm.iter().enumerate() {
                    inv[b] = a;
                }
                for i in 0..3 {
                    let lhs = apply_d(i, &f.permute(&inv)).permute(perm);
                    let rhs = apply_d(perm[i], &f);
                    pass &= lhs.sub(&rhs).is_zero();
                    checked += 1;
                }
            }
        }
        CaseRecord::bulk(jid, 0, pass, checked)
    }));
    for n in 2..=vars {
        let id = format!("dunkl/restriction/n{n}");
        let jid = id.clone();
        jobs.push(CaseJob::new(id, move || {
            let mut pass = true;
            let mut checked = 0usize;
            for f in symmetric_basis(n, degree) {
                pass &= res_sum_squares_check(&f);
                checked += 1;
            }
            CaseRecord::bulk(jid, 0, pass, checked).with_note(format!(
                "{checked} instances; restricted operator is \
                 sum_i d_i^2 + 2k sum_(i<j) (x_i-x_j)^-1 (d_i-d_j)"
            ))
        }));
    }
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;
    use maclab_core::rootsys::CartanKind;

    fn small_params() -> SuiteParams {
        SuiteParams {
            types: vec![RsSelect {
                kind: CartanKind::A,
                rank: 1,
                label: "A1".to_string(),
            }],
            k_lo: 1,
            k_hi: 1,
            maxheight: 1,
            method: Method::Both,
            dunkl_vars: 2,
            dunkl_degree: 3,
        }
    }

    #[test]
    fn suites_run_and_pass_on_a_tiny_selection() {
        for suite in SUITE_NAMES {
            let p = small_params();
            let cases = build_suite(suite, &p).unwrap();
            assert!(!cases.is_empty(), "suite {suite} produced no cases");
            let recs = run_cases(2, cases);
            for r in &recs {
                assert!(r.pass, "case {} failed", r.id);
            }
        }
        assert!(build_suite("nope", &small_params()).is_err());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let p = small_params();
        let one: Vec<String> = run_cases(1, build_suite("ct", &p).unwrap())
            .into_iter()
            .map(|r| format!("{}|{:?}|{:?}|{}", r.id, r.lhs, r.rhs, r.pass))
            .collect();
        let four: Vec<String> = run_cases(4, build_suite("ct", &p).unwrap())
            .into_iter()
            .map(|r| format!("{}|{:?}|{:?}|{}", r.id, r.lhs, r.rhs, r.pass))
            .collect();
        assert_eq!(one, four);
    }

    #[test]
    fn elementary_symmetric_generation() {
        let e2 = rat_elementary(3, 2);
        // x1x2 + x1x3 + x2x3 has three terms.
        let probe = apply_b(0, 1, &e2);
        assert!(probe.is_zero(), "symmetric polynomials are killed");
        assert_eq!(symmetric_basis(2, 2).len(), 4); // 1, e1, e1^2, e2
    }
}
