//! Parsing of command-line selectors: root-system labels, multiplicity
//! ranges, weights in fundamental coordinates, and the stable id fragments
//! built from them.

use maclab_core::rootsys::{rat_int, CartanKind, KParam, RootSystem, Weight};

/// A parsed root-system selector such as `A1` or `B2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsSelect {
    pub kind: CartanKind,
    pub rank: usize,
    pub label: String,
}

impl RsSelect {
    pub fn build(&self) -> RootSystem {
        RootSystem::new(self.kind, self.rank).expect("selector was validated at parse time")
    }
}

/// Parses one label like `A2` or `G2`.
pub fn parse_type(s: &str) -> Result<RsSelect, String> {
    let s = s.trim();
    let mut chars = s.chars();
    let letter = chars
        .next()
        .ok_or_else(|| "empty root-system label".to_string())?;
    let kind = CartanKind::from_letter(letter)
        .ok_or_else(|| format!("unknown family letter in `{s}`"))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| format!("bad rank in root-system label `{s}`"))?;
    RootSystem::new(kind, rank).map_err(|e| format!("unsupported root system `{s}`: {e:?}"))?;
    Ok(RsSelect {
        kind,
        rank,
        label: format!("{}{}", letter.to_ascii_uppercase(), rank),
    })
}

/// Parses a comma-separated list of labels.
pub fn parse_types(s: &str) -> Result<Vec<RsSelect>, String> {
    s.split(',').map(parse_type).collect()
}

/// Parses a multiplicity selector: a single value `2` or an inclusive range
/// `1..3`.
pub fn parse_k_range(s: &str) -> Result<(i64, i64), String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let lo: i64 = a.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
        let hi: i64 = b.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok((lo, hi))
    } else {
        let v: i64 = s.parse().map_err(|_| format!("bad multiplicity `{s}`"))?;
        Ok((v, v))
    }
}

/// Parses fundamental coordinates `2` or `1,0` into a weight of the given
/// root system.
pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight, String> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| format!("bad weight `{s}`")))
        .collect::<Result<_, _>>()?;
    if coords.len() != rs.rank {
        return Err(format!(
            "weight `{s}` has {} coordinates, expected {}",
            coords.len(),
            rs.rank
        ));
    }
    if coords.iter().any(|&c| c < 0) {
        return Err(format!("weight `{s}` is not dominant"));
    }
    Ok(weight_from_fund(rs, &coords))
}

pub fn weight_from_fund(rs: &RootSystem, coords: &[i64]) -> Weight {
    let mut acc = Weight::zero(rs.rank);
    for (i, &c) in coords.iter().enumerate() {
        acc = &acc + &rs.fund_weights[i].scaled(&rat_int(c));
    }
    acc
}

/// Fundamental coordinates of a dominant weight (each equals half of the
/// corresponding doubled coordinate).
pub fn fund_coords(rs: &RootSystem, w: &Weight) -> Vec<i64> {
    let exp = rs.to_exp(w).expect("weight-lattice element");
    exp.iter()
        .map(|&e| {
            assert!(e % 2 == 0, "weight-lattice doubled coordinates are even");
            e / 2
        })
        .collect()
}

/// All dominant weights whose fundamental coordinates sum to at most `h`,
/// ordered lexicographically by those coordinates.
pub fn dominant_weights_up_to(rs: &RootSystem, h: i64) -> Vec<(Vec<i64>, Weight)> {
    let mut coords = vec![vec![]];
    for _ in 0..rs.rank {
        let mut next = Vec::new();
        for c in &coords {
            let used: i64 = c.iter().sum();
            for v in 0..=(h - used) {
                let mut c2 = c.clone();
                c2.push(v);
                next.push(c2);
            }
        }
        coords = next;
    }
    coords
        .into_iter()
        .map(|c| {
            let w = weight_from_fund(rs, &c);
            (c, w)
        })
        .collect()
}

/// Stable id fragment for a multiplicity choice, e.g. `k2` or `kl2-ks1`.
pub fn k_label(k: &KParam) -> String {
    if k.k_long == k.k_short {
        format!("k{}", k.k_long)
    } else {
        format!("kl{}-ks{}", k.k_long, k.k_short)
    }
}

/// Stable id fragment for a weight, e.g. `w[1,0]`.
pub fn weight_label(coords: &[i64]) -> String {
    let inner: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("w[{}]", inner.join(","))
}
