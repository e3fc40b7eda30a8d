//! Serialized form of a computed Macdonald polynomial: the m-expansion with
//! exact coefficients, the squared-norm comparison used as its verdict, and
//! conversions in both directions (used by the `poly` command and by the
//! on-disk cache).

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use maclab_core::macpoly::{inner_k, macdonald, norm_formula_rhs, MacdonaldPoly, Method};
use maclab_core::ring::{Scalar, ZPoly};
use maclab_core::rootsys::{KParam, RootSystem, Weight};

use crate::report::FORMAT_VERSION;
use crate::select::{fund_coords, weight_from_fund};

/// One m-expansion coefficient.  The `num`/`den` integer arrays (constant
/// term first, base-10) allow exact reconstruction; `text` is the canonical
/// human rendering of the same value.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CoeffEntry {
    /// Doubled coordinates of the dominant weight indexing the orbit sum.
    pub exp: Vec<i64>,
    pub text: String,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

/// A computed polynomial with its metadata and norm verdict.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PolyDoc {
    pub format_version: u32,
    pub family: String,
    pub rank: usize,
    /// Monomial scale: `q = u^D`.
    pub q_denominator: i64,
    pub k_long: i64,
    pub k_short: i64,
    /// Fundamental coordinates of the leading weight `λ`.
    pub weight: Vec<i64>,
    pub method: String,
    /// Sorted by `exp`; the entry for `λ` has coefficient one.
    pub coeffs: Vec<CoeffEntry>,
    /// Squared norm `⟨P, P⟩_k` computed from the coefficients.
    pub norm_lhs: String,
    /// The closed product form of the same norm.
    pub norm_rhs: String,
    pub verdict: String,
}

fn zpoly_strings(p: &ZPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn zpoly_from_strings(v: &[String]) -> Result<ZPoly, String> {
    let coeffs: Result<Vec<BigInt>, _> = v.iter().map(|s| BigInt::from_str(s)).collect();
    Ok(ZPoly::from_coeffs(
        coeffs.map_err(|_| "bad integer in cached coefficient".to_string())?,
    ))
}

pub fn scalar_entry(exp: Vec<i64>, c: &Scalar) -> CoeffEntry {
    CoeffEntry {
        exp,
        text: c.to_text(),
        num: zpoly_strings(c.num()),
        den: zpoly_strings(c.den()),
    }
}

pub fn entry_scalar(e: &CoeffEntry) -> Result<Scalar, String> {
    Ok(Scalar::from_polys(
        zpoly_from_strings(&e.num)?,
        zpoly_from_strings(&e.den)?,
    ))
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Gram => "gram",
        Method::Eigen => "eigen",
        Method::Both => "both",
    }
}

/// Computes `P_λ`, its squared norm, and the closed norm form, and packages
/// everything as a document.  With [`Method::Both`] the two constructions are
/// compared here (rather than panicking inside the core) and a disagreement
/// is reported as a `FAIL` verdict.
pub fn build_doc(
    rs: &RootSystem,
    family: &str,
    k: &KParam,
    lambda: &Weight,
    method: Method,
) -> PolyDoc {
    let (p, methods_agree) = match method {
        Method::Both => {
            let g = macdonald(rs, k, lambda, Method::Gram);
            let e = macdonald(rs, k, lambda, Method::Eigen);
            let agree = g == e;
            (g, agree)
        }
        m => (macdonald(rs, k, lambda, m), true),
    };
    doc_from_poly(rs, family, k, &p, method_name(method), methods_agree)
}

/// Packages an already-computed polynomial, evaluating its norm both ways.
pub fn doc_from_poly(
    rs: &RootSystem,
    family: &str,
    k: &KParam,
    p: &MacdonaldPoly,
    method: &str,
    methods_agree: bool,
) -> PolyDoc {
    let expanded = p.expand(rs);
    let lhs = inner_k(rs, k, &expanded, &expanded);
    let rhs = norm_formula_rhs(rs, k, &p.lambda);
    let mut coeffs: Vec<CoeffEntry> = p
        .coeffs
        .iter()
        .map(|(mu, c)| scalar_entry(rs.to_exp(mu).expect("dominant weight"), c))
        .collect();
    coeffs.sort_by(|a, b| a.exp.cmp(&b.exp));
    let pass = lhs == rhs && methods_agree;
    PolyDoc {
        format_version: FORMAT_VERSION,
        family: family.to_string(),
        rank: rs.rank,
        q_denominator: rs.q_denominator,
        k_long: k.k_long,
        k_short: k.k_short,
        weight: fund_coords(rs, &p.lambda),
        method: method.to_string(),
        coeffs,
        norm_lhs: lhs.to_text(),
        norm_rhs: rhs.to_text(),
        verdict: if pass { "PASS" } else { "FAIL" }.to_string(),
    }
}

/// Rebuilds the polynomial from a document's exact coefficient arrays.
pub fn poly_from_doc(rs: &RootSystem, doc: &PolyDoc) -> Result<MacdonaldPoly, String> {
    let lambda = weight_from_fund(rs, &doc.weight);
    let mut coeffs = std::collections::BTreeMap::new();
    for e in &doc.coeffs {
        if e.exp.len() != rs.rank {
            return Err("coefficient exponent has wrong rank".to_string());
        }
        let mu = rs.from_exp(&e.exp);
        coeffs.insert(mu, entry_scalar(e)?);
    }
    Ok(MacdonaldPoly { lambda, coeffs })
}

pub fn doc_to_json(doc: &PolyDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn doc_to_text(doc: &PolyDoc) -> String {
    let mut out = String::new();
    writeln!(out, "# family: {}  rank: {}", doc.family, doc.rank).unwrap();
    writeln!(out, "# format_version: {}", doc.format_version).unwrap();
    writeln!(out, "# q = u^{}", doc.q_denominator).unwrap();
    writeln!(
        out,
        "# k_long: {}  k_short: {}  method: {}",
        doc.k_long, doc.k_short, doc.method
    )
    .unwrap();
    let wl: Vec<String> = doc.weight.iter().map(|c| c.to_string()).collect();
    writeln!(out, "# lambda (fundamental coords): [{}]", wl.join(",")).unwrap();
    for e in &doc.coeffs {
        let el: Vec<String> = e.exp.iter().map(|c| c.to_string()).collect();
        writeln!(out, "m[{}] : {}", el.join(","), e.text).unwrap();
    }
    writeln!(out, "norm lhs: {}", doc.norm_lhs).unwrap();
    writeln!(out, "norm rhs: {}", doc.norm_rhs).unwrap();
    writeln!(out, "verdict: {}", doc.verdict).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use maclab_core::rootsys::CartanKind;

    #[test]
    fn documents_round_trip_exactly() {
        let rs = RootSystem::new(CartanKind::A, 1).unwrap();
        let k = KParam::equal(2);
        let lambda = weight_from_fund(&rs, &[2]);
        let doc = build_doc(&rs, "A1", &k, &lambda, Method::Both);
        assert_eq!(doc.verdict, "PASS");
        let p = poly_from_doc(&rs, &doc).unwrap();
        assert_eq!(p, macdonald(&rs, &k, &lambda, Method::Gram));
        let parsed: PolyDoc = serde_json::from_str(&doc_to_json(&doc)).unwrap();
        assert_eq!(parsed.coeffs.len(), doc.coeffs.len());
        assert!(doc_to_text(&doc).contains("verdict: PASS"));
    }
}
