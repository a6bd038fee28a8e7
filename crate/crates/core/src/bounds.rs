//! Exact evaluation of the closed-form size bounds, and a cross-check table
//! between formulas and enumerated constructions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::{beta_hat, floor_value, j_1t_family, j_family};
use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `C(n, k)` in machine arithmetic for small arguments; saturates on overflow.
pub fn binomial_u128(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = match acc.checked_mul(n as u128 - j) {
            Some(v) => v / (j + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn c(n: i64, k: i64) -> BigInt {
    binomial(n, k)
}

/// Identifiers of the evaluable bounds and size formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    Ekr,
    Hm,
    ThmA,
    ThmB,
    ThmCSize,
    ThmD,
    ThmE,
    ThmF,
    Thm1_9,
    Cor1_10,
    Thm1_14,
    Thm1_17,
    Thm1_19,
    Lem2_1,
    Lem2_2b,
    Lem2_2c,
    Lem2_5,
    Thm2_6,
    NI,
    JISize,
    HmSize,
    J1tSize,
}

impl TheoremId {
    pub const ALL: [TheoremId; 22] = [
        TheoremId::Ekr,
        TheoremId::Hm,
        TheoremId::ThmA,
        TheoremId::ThmB,
        TheoremId::ThmCSize,
        TheoremId::ThmD,
        TheoremId::ThmE,
        TheoremId::ThmF,
        TheoremId::Thm1_9,
        TheoremId::Cor1_10,
        TheoremId::Thm1_14,
        TheoremId::Thm1_17,
        TheoremId::Thm1_19,
        TheoremId::Lem2_1,
        TheoremId::Lem2_2b,
        TheoremId::Lem2_2c,
        TheoremId::Lem2_5,
        TheoremId::Thm2_6,
        TheoremId::NI,
        TheoremId::JISize,
        TheoremId::HmSize,
        TheoremId::J1tSize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Ekr => "ekr",
            TheoremId::Hm => "hm",
            TheoremId::ThmA => "thma",
            TheoremId::ThmB => "thmb",
            TheoremId::ThmCSize => "thmc-size",
            TheoremId::ThmD => "thmd",
            TheoremId::ThmE => "thme",
            TheoremId::ThmF => "thmf",
            TheoremId::Thm1_9 => "thm1.9",
            TheoremId::Cor1_10 => "cor1.10",
            TheoremId::Thm1_14 => "thm1.14",
            TheoremId::Thm1_17 => "thm1.17",
            TheoremId::Thm1_19 => "thm1.19",
            TheoremId::Lem2_1 => "lem2.1",
            TheoremId::Lem2_2b => "lem2.2b",
            TheoremId::Lem2_2c => "lem2.2c",
            TheoremId::Lem2_5 => "lem2.5",
            TheoremId::Thm2_6 => "thm2.6",
            TheoremId::NI => "n_i",
            TheoremId::JISize => "|j_i|",
            TheoremId::HmSize => "|hm|",
            TheoremId::J1tSize => "|j_i^{1,t}|",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let want = s.to_ascii_lowercase();
        let alias = match want.as_str() {
            "ni" | "n" => "n_i",
            "ji" | "j_i" | "j" => "|j_i|",
            "hmsize" | "hm_size" => "|hm|",
            "j1t" | "j_1t" => "|j_i^{1,t}|",
            "thmc" => "thmc-size",
            other => other,
        };
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == alias)
            .ok_or_else(|| Error::BadParameters(format!("unknown bound id {s:?}")))
    }
}

/// Parameters of a bound; each id reads only the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub n: Option<i64>,
    pub k: Option<i64>,
    pub s: Option<i64>,
    pub t: Option<i64>,
    pub beta: Option<i64>,
    pub gamma: Option<i64>,
    pub r: Option<i64>,
    pub i: Option<i64>,
    pub l: Option<i64>,
    pub ell: Option<i64>,
    pub chi: Option<i64>,
    pub eta: Option<i64>,
    /// `s_1, …, s_{r+1}` (or `s_1, …, s_r`), nonincreasing.
    pub parts: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub id: TheoremId,
    pub params: BoundParams,
}

impl BoundQuery {
    pub fn new(id: TheoremId, params: BoundParams) -> Self {
        BoundQuery { id, params }
    }
}

/// Result of [`evaluate_bound`]. The two-case bound reports both branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Single(BigInt),
    TwoCase {
        small_k: BigInt,
        large_k: BigInt,
        small_k_applies: bool,
        large_k_applies: bool,
    },
}

impl BoundValue {
    /// The single value, or the applicable branch (the second when both apply).
    pub fn value(&self) -> &BigInt {
        match self {
            BoundValue::Single(v) => v,
            BoundValue::TwoCase { small_k, large_k, small_k_applies, .. } => {
                if *small_k_applies {
                    small_k
                } else {
                    large_k
                }
            }
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Single(v) => write!(f, "{v}"),
            BoundValue::TwoCase { small_k, large_k, small_k_applies, large_k_applies } => write!(
                f,
                "{small_k}{} / {large_k}{}",
                if *small_k_applies { " (applies)" } else { "" },
                if *large_k_applies { " (applies)" } else { "" }
            ),
        }
    }
}

struct P<'a> {
    id: TheoremId,
    p: &'a BoundParams,
}

impl P<'_> {
    fn get(&self, name: &str, v: Option<i64>) -> Result<i64> {
        v.ok_or_else(|| Error::BadParameters(format!("{} needs parameter {name}", self.id)))
    }
    fn n(&self) -> Result<i64> {
        self.get("n", self.p.n)
    }
    fn k(&self) -> Result<i64> {
        self.get("k", self.p.k)
    }
    fn s(&self) -> Result<i64> {
        self.get("s", self.p.s)
    }
    fn t(&self) -> Result<i64> {
        self.get("t", self.p.t)
    }
    fn beta(&self) -> Result<i64> {
        self.get("beta", self.p.beta)
    }
    fn require(&self, ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::BadParameters(format!("{} requires {what}", self.id)))
        }
    }
    fn parts(&self, want: usize) -> Result<&[i64]> {
        let ps = &self.p.parts;
        if ps.len() != want {
            return Err(Error::BadParameters(format!("{} needs {want} part sizes, got {}", self.id, ps.len())));
        }
        Ok(ps)
    }
}

fn nonincreasing(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

/// `N_i`; `i = k` uses the shorter form.
pub fn n_i(n: i64, k: i64, i: i64) -> BigInt {
    let head = c(n - 1, k - 1) - c(n - k, k - 1);
    if i == k {
        head
    } else {
        head + c(n - k - i, k - i - 1)
    }
}

pub fn evaluate_bound(q: &BoundQuery) -> Result<BoundValue> {
    use BoundValue::Single;
    let p = P { id: q.id, p: &q.params };
    let pos = |v: i64, name: &str| p.require(v >= 1, &format!("{name} >= 1"));
    match q.id {
        TheoremId::Ekr => {
            let (n, k) = (p.n()?, p.k()?);
            p.require(k >= 1 && n >= 2 * k, "1 <= k and n >= 2k")?;
            Ok(Single(c(n - 1, k - 1)))
        }
        TheoremId::Hm | TheoremId::HmSize => {
            let (n, k) = (p.n()?, p.k()?);
            p.require(k >= 1 && n > k, "1 <= k < n")?;
            Ok(Single(c(n - 1, k - 1) - c(n - k - 1, k - 1) + 1))
        }
        TheoremId::ThmA => {
            let (n, k, s) = (p.n()?, p.k()?, p.s()?);
            pos(s, "s")?;
            p.require(s.min(3) <= k && 2 * k <= n, "min{3,s} <= k <= n/2")?;
            let head = c(n - 1, k - 1) - c(n - k, k - 1);
            let small_k = &head + (n - k);
            let large_k = &head + c(n - k - s, k - s - 1) + s;
            let small_k_applies = 2 < k && k <= s + 2;
            let large_k_applies = k <= 2 || k >= s + 2;
            if small_k_applies && large_k_applies && small_k != large_k {
                return Err(Error::TheoremViolation(format!(
                    "two-case bound disagrees at k = s + 2: {small_k} vs {large_k}"
                )));
            }
            Ok(BoundValue::TwoCase { small_k, large_k, small_k_applies, large_k_applies })
        }
        TheoremId::ThmB => {
            let (n, k) = (p.n()?, p.k()?);
            p.require(3 <= k && 2 * k < n, "3 <= k < n/2")?;
            Ok(Single(n_i(n, k, 2) + 2))
        }
        TheoremId::ThmCSize => {
            let (n, k) = (p.n()?, p.k()?);
            p.require(5 <= k && 2 * k < n, "5 <= k < n/2")?;
            Ok(Single(c(n - k - 3, k - 1) + 2))
        }
        TheoremId::ThmD => {
            let (n, k, s, t) = (p.n()?, p.k()?, p.s()?, p.t()?);
            p.require(2 <= s && s <= t && k >= 1, "2 <= s <= t")?;
            Ok(Single(c(n - 1, k - 1) - c(n - s * k - 1, k - 1) + s + t - 1))
        }
        TheoremId::ThmE => {
            let (n, k) = (p.n()?, p.k()?);
            let chi = p.get("chi", p.p.chi)?;
            let eta = p.get("eta", p.p.eta)?;
            p.require(k >= 2 && chi >= 1 && eta >= 1, "k >= 2, chi >= 1, eta >= 1")?;
            Ok(Single(c(n, k) - c(n - chi + 1, k) + eta - 1))
        }
        TheoremId::ThmF => {
            let (n, k) = (p.n()?, p.k()?);
            let r = p.get("r", p.p.r)?;
            pos(r, "r")?;
            let ps = p.parts(r as usize + 1)?;
            p.require(k >= 2 && nonincreasing(ps) && ps[r as usize] >= 2, "k >= 2 and s_1 >= … >= s_{r+1} >= 2")?;
            let (sr, sr1) = (ps[r as usize - 1], ps[r as usize]);
            Ok(Single(c(n, k) - c(n - r, k) - c(n - sr1 * k - r, k - 1) + sr + sr1 - 1))
        }
        TheoremId::Thm1_9 => {
            let (n, k, s, t, beta) = (p.n()?, p.k()?, p.s()?, p.t()?, p.beta()?);
            p.require(k >= 3 && 1 <= s && s <= t && beta >= 0, "k >= 3, 1 <= s <= t, beta >= 0")?;
            let f = floor_value(k as u64, s as u64, beta as u64) as i64;
            let bh = beta_hat(k as u64, s as u64, beta as u64) as i64;
            Ok(Single(c(n - 1, k - 1) - c(n - f - 1, k - 1) + s + t + bh - 1))
        }
        TheoremId::Cor1_10 => {
            let (n, k, t) = (p.n()?, p.k()?, p.t()?);
            p.require(k >= 3 && t >= 1, "k >= 3, t >= 1")?;
            Ok(Single(c(n - 1, k - 1) - c(n - k - 1, k - 1) + t))
        }
        TheoremId::Thm1_14 => {
            let (n, k, t) = (p.n()?, p.k()?, p.t()?);
            let gamma = p.get("gamma", p.p.gamma)?;
            p.require(k >= 5 && t >= 1 && 1 <= gamma && gamma <= k - 2, "k >= 5, t >= 1, 1 <= gamma <= k-2")?;
            Ok(Single(n_i(n, k, gamma) + gamma * t))
        }
        TheoremId::Thm1_17 => {
            let (n, k, beta) = (p.n()?, p.k()?, p.beta()?);
            let r = p.get("r", p.p.r)?;
            pos(r, "r")?;
            let ps = p.parts(r as usize + 1)?;
            p.require(k >= 3 && beta >= 0 && nonincreasing(ps) && ps[r as usize] >= 1, "k >= 3 and s_1 >= … >= s_{r+1} >= 1")?;
            let (sr, sr1) = (ps[r as usize - 1], ps[r as usize]);
            let f = floor_value(k as u64, sr1 as u64, beta as u64) as i64;
            let bh = beta_hat(k as u64, sr1 as u64, beta as u64) as i64;
            Ok(Single(c(n, k) - c(n - r, k) - c(n - f - r, k - 1) + sr + sr1 + bh - 1))
        }
        TheoremId::Thm1_19 => {
            let (n, k) = (p.n()?, p.k()?);
            let r = p.get("r", p.p.r)?;
            let gamma = p.get("gamma", p.p.gamma)?;
            pos(r, "r")?;
            let ps = p.parts(r as usize)?;
            p.require(
                k >= 5 && nonincreasing(ps) && ps[r as usize - 1] >= 1 && 1 <= gamma && gamma <= k - 2,
                "k >= 5, s_1 >= … >= s_r >= 1, 1 <= gamma <= k-2",
            )?;
            let t = ps[r as usize - 1];
            Ok(Single(
                c(n, k) - c(n - r, k) - c(n - k - r + 1, k - 1) + c(n - k - r - gamma + 1, k - gamma - 1) + gamma * t,
            ))
        }
        TheoremId::Lem2_1 => {
            let (n, k, s, t) = (p.n()?, p.k()?, p.s()?, p.t()?);
            p.require(1 <= s && s <= t && k >= 1, "1 <= s <= t")?;
            Ok(Single(c(n - 1, k - 1) - c(n - (s + 1) * k / 2 - 1, k - 1) + (s + 1) * t))
        }
        TheoremId::Lem2_2b => {
            let (n, k, s, beta) = (p.n()?, p.k()?, p.s()?, p.beta()?);
            p.require(k >= 1 && s >= 1 && beta >= 0, "k, s >= 1, beta >= 0")?;
            let f = floor_value(k as u64, s as u64, beta as u64) as i64;
            Ok(Single(c(n - 1, k - 1) - c(n - f - 1, k - 1)))
        }
        TheoremId::Lem2_2c => {
            let (n, k, beta) = (p.n()?, p.k()?, p.beta()?);
            p.require(k >= 1 && beta >= 0, "k >= 1, beta >= 0")?;
            Ok(Single(c(n - 1, k - 1) - c(n - k, k - 1) + c(n - k - beta - 1, k - beta - 2)))
        }
        TheoremId::Lem2_5 => {
            let k = p.k()?;
            let ell = p.get("ell", p.p.ell)?;
            p.require(k >= 1 && ell >= 0, "k >= 1, ell >= 0")?;
            let den = c(2 * k, k) * 2;
            let num = BigInt::from(ell) * ell;
            Ok(Single((num + &den - 1) / den))
        }
        TheoremId::Thm2_6 => {
            let k = p.k()?;
            let l = p.get("l", p.p.l)?;
            p.require(k >= 0 && l >= 0, "k, l >= 0")?;
            Ok(Single(c(k + l, k)))
        }
        TheoremId::NI => {
            let (n, k) = (p.n()?, p.k()?);
            let i = p.get("i", p.p.i)?;
            p.require(k >= 1 && 0 <= i && i <= k, "0 <= i <= k")?;
            Ok(Single(n_i(n, k, i)))
        }
        TheoremId::JISize => {
            let (n, k) = (p.n()?, p.k()?);
            let i = p.get("i", p.p.i)?;
            p.require(k >= 1 && 0 <= i && i < k, "0 <= i <= k-1")?;
            Ok(Single(n_i(n, k, i) + i))
        }
        TheoremId::J1tSize => {
            let (n, k, t) = (p.n()?, p.k()?, p.t()?);
            let i = p.get("i", p.p.i)?;
            p.require(k >= 1 && 0 <= i && i < k && t >= 1, "0 <= i <= k-1, t >= 1")?;
            Ok(Single(n_i(n, k, i) + i + i * (t - 1)))
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }
}

/// One grid cell of the consistency table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: u32,
    pub k: u32,
    pub i: u32,
    pub t: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyRow {
    pub check: String,
    pub point: GridPoint,
    pub expected: String,
    pub actual: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// `n ∈ [n_lo, n_hi]`, `k ∈ ks`, `i ≤ k-1`, `t ∈ ts`.
pub fn grid(ns: impl IntoIterator<Item = u32>, ks: &[u32], ts: &[u32]) -> Vec<GridPoint> {
    let mut out = Vec::new();
    for n in ns {
        for &k in ks {
            for i in 0..k {
                for &t in ts {
                    out.push(GridPoint { n, k, i, t });
                }
            }
        }
    }
    out
}

pub fn consistency_matrix(points: &[GridPoint]) -> Vec<ConsistencyRow> {
    consistency_matrix_with(points, |_, v| v)
}

/// Same as [`consistency_matrix`], with every formula value passed through
/// `mutate(check, value)` first.
pub fn consistency_matrix_with(points: &[GridPoint], mutate: impl Fn(&str, BigInt) -> BigInt) -> Vec<ConsistencyRow> {
    let mut rows = Vec::new();
    for &pt in points {
        let GridPoint { n, k, i, t } = pt;
        let (ni, ki, ii, ti) = (n as i64, k as i64, i as i64, t as i64);
        let mut push = |check: &str, expected: BigInt, actual: std::result::Result<BigInt, String>| {
            let expected = mutate(check, expected);
            let (actual, verdict) = match actual {
                Ok(a) => {
                    let v = Verdict::from_bool(a == expected);
                    (a.to_string(), v)
                }
                Err(reason) => (String::new(), Verdict::Skipped(reason)),
            };
            rows.push(ConsistencyRow {
                check: check.to_string(),
                point: pt,
                expected: expected.to_string(),
                actual,
                verdict,
            });
        };

        let j_formula = n_i(ni, ki, ii) + ii;
        let j_enum = j_family(n, k, i, None).map(|f| BigInt::from(f.len())).map_err(|e| e.to_string());
        push("j_i-size", j_formula.clone(), j_enum.clone());

        let j1t_enum = j_1t_family(n, k, i, t, None).map(|f| BigInt::from(f.len())).map_err(|e| e.to_string());
        match &j_enum {
            Ok(j) => push("j_i^{1,t}-size", j + ii * (ti - 1), j1t_enum),
            Err(e) => push("j_i^{1,t}-size", j_formula + ii * (ti - 1), Err(e.clone())),
        }

        if k >= 3 {
            let q = |id, s, beta| {
                evaluate_bound(&BoundQuery::new(
                    id,
                    BoundParams { n: Some(ni), k: Some(ki), s: Some(s), t: Some(ti), beta: Some(beta), ..Default::default() },
                ))
            };
            let a = q(TheoremId::Thm1_9, 1, 0).map(|v| v.value().clone());
            let b = q(TheoremId::Cor1_10, 1, 0).map(|v| v.value().clone());
            if let (Ok(a), Ok(b)) = (a, b) {
                push("thm1.9-vs-cor1.10", b, Ok(a));
            }
        }

        if k >= 5 && (1..=ki - 2).contains(&ii) {
            let v = evaluate_bound(&BoundQuery::new(
                TheoremId::Thm1_14,
                BoundParams { n: Some(ni), k: Some(ki), t: Some(1), gamma: Some(ii), ..Default::default() },
            ))
            .map(|v| v.value().clone())
            .map_err(|e| e.to_string());
            push("thm1.14-at-t1", n_i(ni, ki, ii) + ii, v);
        }

        if (1..k).contains(&i) {
            let lhs = n_i(ni, ki, ii - 1) - n_i(ni, ki, ii);
            push("n_i-telescoping", c(ni - ki - ii, ki - ii), Ok(lhs));
        }

        // Lemma 2.2: the upper bound dominates the lower bound for every |T| <= floor
        let s = ii.max(1);
        let beta = ti - 1;
        let f = floor_value(ki as u64, s as u64, beta as u64) as i64;
        let upper = c(ni - 1, ki - 1) - c(ni - f - 1, ki - 1);
        let worst = (0..=f).map(|tt| c(ni - 1, ki - 1) - c(ni - tt - 1, ki - 1)).max().unwrap();
        let dominated = mutate("lem2.2-b-vs-a", upper.clone()) >= worst;
        rows.push(ConsistencyRow {
            check: "lem2.2-b-vs-a".into(),
            point: pt,
            expected: format!(">= {worst}"),
            actual: upper.to_string(),
            verdict: Verdict::from_bool(dominated),
        });

    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(id: TheoremId, f: impl FnOnce(&mut BoundParams)) -> Result<BigInt> {
        let mut p = BoundParams::default();
        f(&mut p);
        evaluate_bound(&BoundQuery::new(id, p)).map(|v| v.value().clone())
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(9, 2), BigInt::from(36));
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(-3, 1), BigInt::zero());
        assert_eq!(binomial_u128(60, 30), 118264581564861424);
    }

    #[test]
    fn pascal_and_symmetry() {
        let mut row: Vec<BigInt> = vec![BigInt::one()];
        for n in 1..=80i64 {
            let mut next = vec![BigInt::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(n, k), row[k as usize]);
                assert_eq!(binomial(n, k), binomial(n, n - k));
            }
        }
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn bound_examples() {
        let hm = q(TheoremId::Hm, |p| {
            p.n = Some(10);
            p.k = Some(3);
        })
        .unwrap();
        let t19 = q(TheoremId::Thm1_9, |p| {
            p.n = Some(10);
            p.k = Some(3);
            p.s = Some(1);
            p.t = Some(1);
            p.beta = Some(0);
        })
        .unwrap();
        assert_eq!(t19, BigInt::from(22));
        assert_eq!(t19, hm);
        let n2 = q(TheoremId::NI, |p| {
            p.n = Some(12);
            p.k = Some(4);
            p.i = Some(2);
        })
        .unwrap();
        assert_eq!(n2, BigInt::from(115));
        let d = q(TheoremId::ThmD, |p| {
            p.n = Some(20);
            p.k = Some(2);
            p.s = Some(2);
            p.t = Some(2);
        })
        .unwrap();
        assert_eq!(d, BigInt::from(7));
        let cor = q(TheoremId::Cor1_10, |p| {
            p.n = Some(12);
            p.k = Some(3);
            p.t = Some(2);
        })
        .unwrap();
        assert_eq!(cor, BigInt::from(29));
    }

    #[test]
    fn bound_ranges() {
        let e = q(TheoremId::Thm1_14, |p| {
            p.n = Some(20);
            p.k = Some(4);
            p.t = Some(2);
            p.gamma = Some(2);
        });
        assert!(matches!(e, Err(Error::BadParameters(_))));
        assert!(matches!(q(TheoremId::Ekr, |p| p.n = Some(5)), Err(Error::BadParameters(_))));
    }

    #[test]
    fn two_case_agrees_on_overlap() {
        for s in 1..5i64 {
            for n in 12..20i64 {
                let k = s + 2;
                if 2 * k > n {
                    continue;
                }
                let v = evaluate_bound(&BoundQuery::new(
                    TheoremId::ThmA,
                    BoundParams { n: Some(n), k: Some(k), s: Some(s), ..Default::default() },
                ))
                .unwrap();
                match v {
                    BoundValue::TwoCase { small_k, large_k, large_k_applies, .. } => {
                        assert!(large_k_applies);
                        if k > 2 {
                            assert_eq!(small_k, large_k);
                        }
                    }
                    _ => panic!("expected two branches"),
                }
            }
        }
    }

    #[test]
    fn telescoping_and_monotonicity() {
        for n in 10..=20i64 {
            for k in 3..=6i64 {
                for i in 1..k {
                    assert_eq!(n_i(n, k, i - 1) - n_i(n, k, i), binomial(n - k - i, k - i));
                }
                for a in 0..(n - k) {
                    assert!(binomial(n - a - 1, k - 1) >= binomial(n - a - 2, k - 1));
                }
            }
        }
    }

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn consistency_small_grid() {
        assert!(consistency_matrix(&[]).is_empty());
        let pts = grid(10..=11, &[3, 4], &[1, 2]);
        let rows = consistency_matrix(&pts);
        assert!(rows.iter().all(|r| !r.verdict.is_fail()), "{rows:#?}");
        let bad = consistency_matrix_with(&pts, |c, v| if c == "j_i-size" { v + 1 } else { v });
        assert!(bad.iter().any(|r| r.check == "j_i-size" && r.verdict.is_fail()));
    }
}
