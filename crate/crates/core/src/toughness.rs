//! Exact toughness by cutset enumeration.
//!
//! All ratios are exact rationals. A complete graph has infinite toughness;
//! disconnected graphs are rejected rather than assigned toughness 0.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{component_count_mask, Graph, VertexSet};

pub type Rational = Ratio<i64>;

/// Default vertex cap for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 24;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn int(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// Serde adapter writing a [`Rational`] as `"p/q"`.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Toughness {
    Finite(Rational),
    Infinite,
}

impl Toughness {
    pub fn is_at_least(&self, t: Rational) -> bool {
        match self {
            Toughness::Infinite => true,
            Toughness::Finite(v) => *v >= t,
        }
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Toughness::Finite(v) => Some(*v),
            Toughness::Infinite => None,
        }
    }
}

impl Ord for Toughness {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Toughness::Infinite, Toughness::Infinite) => Ordering::Equal,
            (Toughness::Infinite, _) => Ordering::Greater,
            (_, Toughness::Infinite) => Ordering::Less,
            (Toughness::Finite(a), Toughness::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Toughness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Toughness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Toughness::Infinite => f.write_str("inf"),
            Toughness::Finite(r) => f.write_str(&format_rational(r)),
        }
    }
}

impl FromStr for Toughness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "inf" {
            Ok(Toughness::Infinite)
        } else {
            parse_rational(s).map(Toughness::Finite)
        }
    }
}

impl Serialize for Toughness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Toughness {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToughnessCertificate {
    pub toughness: Toughness,
    /// A tough set; empty when the toughness is infinite.
    pub witness: VertexSet,
}

impl ToughnessCertificate {
    /// Re-derives `|witness| = τ · c(G − witness)` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        match self.toughness {
            Toughness::Infinite => g.is_complete() && self.witness.is_empty(),
            Toughness::Finite(t) => {
                let c = crate::graph::components(g, &self.witness).len();
                c >= 2 && int(self.witness.len()) == t * int(c)
            }
        }
    }
}

/// A `t`-toughness decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToughDecision {
    pub tough: bool,
    /// A cutset with `|S| < t·c(G − S)` when `tough` is false.
    pub counterexample: Option<VertexSet>,
}

fn check_input(g: &Graph, cap: usize) -> Result<Vec<u64>> {
    if g.n() > cap || g.n() > 64 {
        return Err(Error::OverCap { n: g.n(), cap: cap.min(64) });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok((0..g.n()).map(|v| g.adj_mask(v)).collect())
}

/// Visits the `k`-subsets of `0..n` as masks, in lexicographic order of
/// their sorted member lists. The visitor returns `false` to stop.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if !visit(mask) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn toughness_exact(g: &Graph) -> Result<ToughnessCertificate> {
    toughness_exact_with_cap(g, DEFAULT_CAP)
}

/// Minimum of `|S| / c(G − S)` over all cutsets. The witness is the
/// lexicographically least set among minimizers of `(ratio, |S|)`.
pub fn toughness_exact_with_cap(g: &Graph, cap: usize) -> Result<ToughnessCertificate> {
    let adj = check_input(g, cap)?;
    if g.is_complete() {
        return Ok(ToughnessCertificate { toughness: Toughness::Infinite, witness: VertexSet::new() });
    }
    let n = g.n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best: Option<(Rational, u64)> = None;
    for k in 1..=n - 2 {
        // At most n − k components remain, so k/(n − k) bounds every ratio at this size.
        if let Some((b, _)) = best {
            if rational(k as i64, (n - k) as i64) >= b {
                break;
            }
        }
        for_each_combination(n, k, |mask| {
            let c = component_count_mask(&adj, full & !mask);
            if c >= 2 {
                let r = rational(k as i64, c as i64);
                if best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, mask));
                }
            }
            true
        });
    }
    let (t, mask) = best.expect("a connected noncomplete graph has a cutset");
    Ok(ToughnessCertificate { toughness: Toughness::Finite(t), witness: VertexSet::from_mask(mask) })
}

pub fn is_t_tough(g: &Graph, t: Rational) -> Result<ToughDecision> {
    is_t_tough_with_cap(g, t, DEFAULT_CAP)
}

/// Decides `|S| ≥ t·c(G − S)` for every cutset, stopping at the first
/// violation.
pub fn is_t_tough_with_cap(g: &Graph, t: Rational, cap: usize) -> Result<ToughDecision> {
    let adj = check_input(g, cap)?;
    if g.is_complete() {
        return Ok(ToughDecision { tough: true, counterexample: None });
    }
    let n = g.n();
    // N(v) of a minimum-degree vertex is a cutset with ratio at most δ/2.
    let v = (0..n).min_by_key(|&v| g.degree(v)).expect("n ≥ 1");
    let d = g.degree(v);
    if d + 2 <= n && rational(d as i64, 2) < t {
        let s = g.neighbors(v).clone();
        let c = crate::graph::components(g, &s).len();
        if int(d) < t * int(c) {
            return Ok(ToughDecision { tough: false, counterexample: Some(s) });
        }
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut witness = None;
    for k in 1..=n - 2 {
        if rational(k as i64, (n - k) as i64) >= t {
            break;
        }
        for_each_combination(n, k, |mask| {
            let c = component_count_mask(&adj, full & !mask);
            if c >= 2 && int(k) < t * int(c) {
                witness = Some(VertexSet::from_mask(mask));
                return false;
            }
            true
        });
        if witness.is_some() {
            break;
        }
    }
    Ok(ToughDecision { tough: witness.is_none(), counterexample: witness })
}

/// A tough set of minimum cardinality, lexicographically least among those.
pub fn min_tough_set(g: &Graph) -> Result<VertexSet> {
    min_tough_set_with_cap(g, DEFAULT_CAP)
}

pub fn min_tough_set_with_cap(g: &Graph, cap: usize) -> Result<VertexSet> {
    if g.is_complete() {
        return Err(Error::Complete);
    }
    Ok(toughness_exact_with_cap(g, cap)?.witness)
}
