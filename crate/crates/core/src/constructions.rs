//! Generators for the named families: stars, Hilton–Milner type families,
//! the `J_i` hierarchy and its `(1,t)` and multipartite extensions, the
//! restricted stars `St_1(A_1,…,A_m:s)`, and extremal families for the
//! `ℓ(F) ≥ s+β` problem.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::iso::canonical_form;
use crate::kneser::{self, DisjointnessGraph};
use crate::setfam::{all_k_sets, bit, elements_mask, interval_mask, lex_cmp, mask_elements, Family, KSet};

fn check_nk(n: u32, k: u32) -> Result<()> {
    if k < 1 || k > n || n > 64 {
        return Err(Error::BadParameters(format!("need 1 <= k <= n <= 64, got n={n}, k={k}")));
    }
    Ok(())
}

fn check_element(n: u32, e: u32) -> Result<()> {
    if e < 1 || e > n {
        return Err(Error::ElementOutOfRange { element: e as i64, n });
    }
    Ok(())
}

fn mask_of(n: u32, elements: &[u32]) -> Result<u64> {
    for &e in elements {
        check_element(n, e)?;
    }
    Ok(elements_mask(elements))
}

fn fmt_mask(m: u64) -> String {
    format!("{:?}", mask_elements(m))
}

/// `St_center`: every k-set containing `center`.
pub fn star(n: u32, k: u32, center: u32) -> Result<Family> {
    check_nk(n, k)?;
    check_element(n, center)?;
    Family::filtered(n, k, |m| m & bit(center) != 0)
}

/// Sets through 1 meeting `b`, together with `b` itself.
pub fn hm_family(n: u32, k: u32, b: &KSet) -> Result<Family> {
    check_nk(n, k)?;
    if b.n() != n || b.len() != k {
        return Err(Error::WrongSetSize { expected: k, found: b.len() as usize });
    }
    if b.contains(1) {
        return Err(Error::AnchorViolation(format!("B = {b} contains 1")));
    }
    let bm = b.mask();
    Family::filtered(n, k, |m| (m & 1 != 0 && m & bm != 0) || m == bm)
}

/// Sets with at least two elements in {1,2,3}.
pub fn hm_prime(n: u32, k: u32) -> Result<Family> {
    check_nk(n, k)?;
    if n < 3 {
        return Err(Error::BadParameters("HM' needs n >= 3".into()));
    }
    Family::filtered(n, k, |m| (m & 0b111).count_ones() >= 2)
}

/// Anchors of `J_i`: `J` contains 1 and has `i+1` elements, `E` is a
/// `(k-1)`-set outside `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JAnchors {
    pub j: Vec<u32>,
    pub e: Vec<u32>,
}

impl JAnchors {
    pub fn default_for(n: u32, k: u32, i: u32) -> Result<Self> {
        if i + k > n {
            return Err(Error::Infeasible(format!("default anchors need n >= i + k = {}", i + k)));
        }
        Ok(JAnchors { j: (1..=i + 1).collect(), e: (i + 2..=i + k).collect() })
    }
}

pub fn j_family(n: u32, k: u32, i: u32, anchors: Option<&JAnchors>) -> Result<Family> {
    check_nk(n, k)?;
    let anchors = match anchors {
        Some(a) => a.clone(),
        None => JAnchors::default_for(n, k, i)?,
    };
    let jm = mask_of(n, &anchors.j)?;
    let em = mask_of(n, &anchors.e)?;
    if jm & 1 == 0 || jm.count_ones() != i + 1 || anchors.j.len() != (i + 1) as usize {
        return Err(Error::AnchorViolation(format!("J must contain 1 and have {} elements", i + 1)));
    }
    if em.count_ones() != k - 1 || anchors.e.len() != (k - 1) as usize || em & jm != 0 {
        return Err(Error::AnchorViolation(format!("E must be a {}-set disjoint from J", k - 1)));
    }
    Family::filtered(n, k, |m| {
        (m & em == em && m & jm != 0) || m & jm == jm || (m & 1 != 0 && m & em != 0)
    })
}

/// `[2,k+1]`, `[i+1,k+i]` and the sets through 1 avoiding `[2,k+i]`.
pub fn f_i_family(n: u32, k: u32, i: u32) -> Result<Family> {
    check_nk(n, k)?;
    if i < 1 || i > k {
        return Err(Error::BadParameters(format!("F_i needs 1 <= i <= k, got i={i}")));
    }
    if k + i > n {
        return Err(Error::Infeasible(format!("F_i needs n >= k + i = {}", k + i)));
    }
    let a = interval_mask(2, k + 1);
    let b = interval_mask(i + 1, k + i);
    let avoid = interval_mask(2, k + i);
    Family::filtered(n, k, |m| m == a || m == b || (m & 1 != 0 && m & avoid == 0))
}

/// The `t-1` lexicographically first sets satisfying `admissible`, or an
/// error naming `what`.
fn first_admissible(n: u32, k: u32, count: usize, what: &str, admissible: impl Fn(u64) -> bool) -> Result<Vec<u64>> {
    let found: Vec<u64> = all_k_sets(n, k).into_iter().filter(|&m| admissible(m)).take(count).collect();
    if found.len() < count {
        return Err(Error::Infeasible(format!(
            "only {} admissible {what} exist, {count} needed",
            found.len()
        )));
    }
    Ok(found)
}

fn explicit_sets(n: u32, k: u32, sets: &[Vec<u32>], count: usize, what: &str, admissible: impl Fn(u64) -> bool) -> Result<Vec<u64>> {
    if sets.len() != count {
        return Err(Error::AnchorViolation(format!("{count} {what} needed, {} given", sets.len())));
    }
    let mut out = Vec::with_capacity(count);
    for s in sets {
        let m = KSet::new(n, s)?.mask();
        if m.count_ones() != k {
            return Err(Error::WrongSetSize { expected: k, found: s.len() });
        }
        if !admissible(m) {
            return Err(Error::AnchorViolation(format!("{s:?} is not an admissible {what}")));
        }
        if out.contains(&m) {
            return Err(Error::DuplicateSet(mask_elements(m)));
        }
        out.push(m);
    }
    Ok(out)
}

/// `F_{s,t}`: sets through 1 meeting `[2,sk+1]`, the blocks
/// `A_i = [(i-1)k+2, ik+1]`, and `t-1` sets through 1 avoiding `[2,sk+1]`.
pub fn f_st_family(n: u32, k: u32, s: u32, t: u32, f_sets: Option<&[Vec<u32>]>) -> Result<Family> {
    check_nk(n, k)?;
    if s < 1 || t < 1 {
        return Err(Error::BadParameters("s and t must be positive".into()));
    }
    if s * k + 1 > n {
        return Err(Error::Infeasible(format!("F_(s,t) needs n >= sk + 1 = {}", s * k + 1)));
    }
    let block = interval_mask(2, s * k + 1);
    let admissible = |m: u64| m & 1 != 0 && m & block == 0;
    let fs = match f_sets {
        Some(sets) => explicit_sets(n, k, sets, (t - 1) as usize, "F_j", admissible)?,
        None => first_admissible(n, k, (t - 1) as usize, "F_j", admissible)?,
    };
    let mut masks: Vec<u64> = all_k_sets(n, k).into_iter().filter(|&m| m & 1 != 0 && m & block != 0).collect();
    masks.extend((1..=s).map(|i| interval_mask((i - 1) * k + 2, i * k + 1)));
    masks.extend(fs);
    Family::from_masks(n, k, masks)
}

fn anchor_masks(anchors: &[KSet]) -> Result<Vec<u64>> {
    let masks: Vec<u64> = anchors.iter().map(KSet::mask).collect();
    for (i, m) in masks.iter().enumerate() {
        if masks[..i].contains(m) {
            return Err(Error::DuplicateSet(mask_elements(*m)));
        }
    }
    Ok(masks)
}

/// Elements lying in at least `m - s + 1` of the `m` anchors.
pub fn t_set(anchors: &[KSet], s: u32) -> Result<Vec<u32>> {
    let masks = anchor_masks(anchors)?;
    Ok(mask_elements(t_mask(&masks, s)?))
}

pub(crate) fn t_mask(masks: &[u64], s: u32) -> Result<u64> {
    let m = masks.len() as u32;
    if s < 1 || m < s {
        return Err(Error::BadParameters(format!("need 1 <= s <= m, got s={s}, m={m}")));
    }
    let need = m - s + 1;
    let mut out = 0u64;
    for e in 0..64 {
        let c = masks.iter().filter(|&&a| a >> e & 1 == 1).count() as u32;
        if c >= need {
            out |= 1u64 << e;
        }
    }
    Ok(out)
}

fn disjoint_count(m: u64, anchors: &[u64]) -> u32 {
    anchors.iter().filter(|&&a| a & m == 0).count() as u32
}

fn anchors_on(n: u32, k: u32, anchors: &[KSet]) -> Result<Vec<u64>> {
    for a in anchors {
        if a.n() != n || a.len() != k {
            return Err(Error::AnchorViolation(format!("anchor {a} is not a {k}-set on [{n}]")));
        }
    }
    anchor_masks(anchors)
}

/// `St_1(A_1,…,A_m:s)`: sets through 1 disjoint from at most `s-1` anchors.
pub fn star_restricted(n: u32, k: u32, anchors: &[KSet], s: u32) -> Result<Family> {
    star_restricted_multipartite(n, k, anchors, s, 1)
}

/// `St_r^{[r-1]}(A_1,…,A_m:s)`: sets through `r` avoiding `[r-1]` and
/// disjoint from at most `s-1` anchors.
pub fn star_restricted_multipartite(n: u32, k: u32, anchors: &[KSet], s: u32, r: u32) -> Result<Family> {
    check_nk(n, k)?;
    if r < 1 || r > n {
        return Err(Error::BadParameters(format!("need 1 <= r <= n, got r={r}")));
    }
    if s < 1 {
        return Err(Error::BadParameters("s must be positive".into()));
    }
    let masks = anchors_on(n, k, anchors)?;
    let low = interval_mask(1, r);
    if let Some(a) = masks.iter().find(|&&a| a & low != 0) {
        return Err(Error::AnchorViolation(format!("anchor {} meets [{r}]", fmt_mask(*a))));
    }
    let below = interval_mask(1, r - 1) * u64::from(r > 1);
    Family::filtered(n, k, |m| {
        m & bit(r) != 0 && m & below == 0 && disjoint_count(m, &masks) < s
    })
}

/// `⌊(s+β)k/(β+1)⌋`.
pub fn floor_value(k: u64, s: u64, beta: u64) -> u64 {
    (s + beta) * k / (beta + 1)
}

/// Largest `β' >= β` keeping `⌊(s+β')k/(β'+1)⌋` unchanged; `β` itself when
/// that value is `k`.
pub fn beta_hat(k: u64, s: u64, beta: u64) -> u64 {
    let f = floor_value(k, s, beta);
    if f <= k {
        return beta;
    }
    let mut b = beta;
    while floor_value(k, s, b + 1) == f {
        b += 1;
    }
    b
}

/// Anchors of `J_i^{1,t}` and `J_{i,r}^{1,t}`: the distinguished elements
/// `x_1,…,x_i`, the common core `E`, and optionally the blocks `B_1,…,B_i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct J1tAnchors {
    pub xs: Vec<u32>,
    pub e: Vec<u32>,
    pub blocks: Option<Vec<Vec<Vec<u32>>>>,
}

impl J1tAnchors {
    /// `x_j = r + j`, `E = {r+i+1,…,r+i+k-1}`.
    pub fn default_for(n: u32, k: u32, i: u32, r: u32) -> Result<Self> {
        if r + i + k - 1 > n {
            return Err(Error::Infeasible(format!("default anchors need n >= r + i + k - 1 = {}", r + i + k - 1)));
        }
        Ok(J1tAnchors {
            xs: (r + 1..=r + i).collect(),
            e: (r + i + 1..=r + i + k - 1).collect(),
            blocks: None,
        })
    }
}

/// Which reading of `J_{i,r}^{1,t}` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum J1trMode {
    /// `St_r^{[r-1]}(A_1,…,A_i:1) ∪ B_1 ∪ … ∪ B_i`.
    Literal,
    /// Adds the stars `St_1,…,St_{r-1}` and the sets `A_1,…,A_i`.
    Completed,
}

/// `J_i^{1,t}`.
pub fn j_1t_family(n: u32, k: u32, i: u32, t: u32, anchors: Option<&J1tAnchors>) -> Result<Family> {
    build_j1tr(n, k, i, t, 1, J1trMode::Completed, anchors)
}

/// `J_{i,r}^{1,t}` in either mode.
pub fn j_1t_r_family(
    n: u32,
    k: u32,
    i: u32,
    t: u32,
    r: u32,
    mode: J1trMode,
    anchors: Option<&J1tAnchors>,
) -> Result<Family> {
    build_j1tr(n, k, i, t, r, mode, anchors)
}

fn build_j1tr(n: u32, k: u32, i: u32, t: u32, r: u32, mode: J1trMode, anchors: Option<&J1tAnchors>) -> Result<Family> {
    check_nk(n, k)?;
    if r < 1 || t < 1 {
        return Err(Error::BadParameters("r and t must be positive".into()));
    }
    if i + 1 > k {
        return Err(Error::BadParameters(format!("need i <= k - 1, got i={i}, k={k}")));
    }
    let anchors = match anchors {
        Some(a) => a.clone(),
        None => J1tAnchors::default_for(n, k, i, r)?,
    };
    if anchors.xs.len() != i as usize {
        return Err(Error::AnchorViolation(format!("{i} distinguished elements needed, {} given", anchors.xs.len())));
    }
    let low = interval_mask(1, r);
    let below = interval_mask(1, r - 1) * u64::from(r > 1);
    let xm = mask_of(n, &anchors.xs)?;
    let em = mask_of(n, &anchors.e)?;
    if xm.count_ones() != i || xm & low != 0 {
        return Err(Error::AnchorViolation(format!("x_j must be {i} distinct elements outside [{r}]")));
    }
    let jm = low | xm;
    if em.count_ones() != k - 1 || anchors.e.len() != (k - 1) as usize || em & jm != 0 {
        return Err(Error::AnchorViolation(format!("E must be a {}-set outside J", k - 1)));
    }
    let a_sets: Vec<u64> = anchors.xs.iter().map(|&x| em | bit(x)).collect();

    // B_j: contains J minus {1..r-1, x_j}, avoids E, [r-1] and x_j
    let mut blocks: Vec<Vec<u64>> = Vec::with_capacity(i as usize);
    for (j, &x) in anchors.xs.iter().enumerate() {
        let must = jm & !below & !bit(x);
        let admissible = move |m: u64| m & must == must && m & (em | below | bit(x)) == 0;
        let what = format!("sets in block B_{}", j + 1);
        let block = match &anchors.blocks {
            Some(bs) => {
                let given = bs.get(j).ok_or_else(|| Error::AnchorViolation(format!("block B_{} missing", j + 1)))?;
                explicit_sets(n, k, given, (t - 1) as usize, &what, admissible)?
            }
            None => first_admissible(n, k, (t - 1) as usize, &what, admissible)?,
        };
        blocks.push(block);
    }
    let mut seen = HashSet::new();
    for m in blocks.iter().flatten() {
        if !seen.insert(*m) {
            return Err(Error::TheoremViolation(format!("blocks overlap in {}", fmt_mask(*m))));
        }
    }

    let mut masks: Vec<u64> = all_k_sets(n, k)
        .into_iter()
        .filter(|&m| {
            let restricted = m & bit(r) != 0 && m & below == 0 && a_sets.iter().all(|&a| a & m != 0);
            let lower_star = mode == J1trMode::Completed && m & below != 0;
            restricted || lower_star
        })
        .collect();
    if mode == J1trMode::Completed {
        masks.extend(&a_sets);
    }
    masks.extend(blocks.into_iter().flatten());
    Family::from_masks(n, k, masks)
}

/// `St_1(A_1,…,A_m:s) ∪ {A_1,…,A_m} ∪ {F_1,…,F_{t-1}}` with the `F_j` the
/// lexicographically first sets through 1 disjoint from at least `s` anchors.
pub fn ranked_l_family(n: u32, k: u32, s: u32, t: u32, anchors: &[KSet]) -> Result<Family> {
    check_nk(n, k)?;
    if t < 1 {
        return Err(Error::BadParameters("t must be positive".into()));
    }
    let masks = anchors_on(n, k, anchors)?;
    if (masks.len() as u32) < s {
        return Err(Error::BadParameters(format!("at least s = {s} anchors needed")));
    }
    if let Some(a) = masks.iter().find(|&&a| a & 1 != 0) {
        return Err(Error::AnchorViolation(format!("anchor {} contains 1", fmt_mask(*a))));
    }
    let mut out = star_restricted(n, k, anchors, s)?.masks();
    let fs = first_admissible(n, k, (t - 1) as usize, "F_j", |m| m & 1 != 0 && disjoint_count(m, &masks) >= s)?;
    out.extend(&masks);
    out.extend(fs);
    Family::from_masks(n, k, out)
}

/// An extremal family for the `ℓ(F) ≥ s+β` problem together with its anchors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub family: Family,
    pub anchors: Vec<KSet>,
    pub extra: Vec<KSet>,
    pub beta_hat: u64,
    pub floor: u64,
}

/// Searches anchor tuples `A_1,…,A_{s+β̂}` avoiding 1 with `|T| = ⌊(s+β)k/(β+1)⌋`
/// and sets `F_1,…,F_{t-1}` through 1 disjoint from at least `s` anchors such
/// that the anchors and the `F_j` form an (s,t)-union intersecting family.
/// Anchor tuples are generated up to relabelling; the first success wins.
pub fn hmnew3_extremal(n: u32, k: u32, s: u32, t: u32, beta: u32, budget: u64) -> Result<Extremal> {
    check_nk(n, k)?;
    if k < 3 || s < 1 || t < s {
        return Err(Error::BadParameters(format!("need k >= 3 and t >= s >= 1, got k={k}, s={s}, t={t}")));
    }
    let bh = beta_hat(k as u64, s as u64, beta as u64);
    let f = floor_value(k as u64, s as u64, beta as u64);
    let m = s as u64 + bh;
    let slack = m * k as u64 - f * (bh + 1);
    let window = (f + slack) as u32;
    if window + 1 > n {
        return Err(Error::Infeasible(format!("anchors need {window} elements besides 1, n = {n}")));
    }
    let mut search = AnchorSearch {
        n,
        k,
        s,
        t,
        need: (bh + 1) as u32,
        target: f as u32,
        slack: slack as u32,
        m: m as usize,
        pool: all_k_sets(window, k).into_iter().map(|a| a << 1).collect(),
        seen: HashSet::new(),
        nodes: 0,
        budget,
        found: None,
    };
    search.pool.sort_by(|a, b| lex_cmp(*a, *b));
    search.rec(&mut Vec::new(), 1)?;
    match search.found {
        Some((anchors, extra)) => {
            let mut masks: Vec<u64> = all_k_sets(n, k)
                .into_iter()
                .filter(|&x| x & 1 != 0 && disjoint_count(x, &anchors) < s)
                .collect();
            masks.extend(&anchors);
            masks.extend(&extra);
            Ok(Extremal {
                family: Family::from_masks(n, k, masks)?,
                anchors: anchors.iter().map(|&a| KSet::from_mask_unchecked(n, a)).collect(),
                extra: extra.iter().map(|&a| KSet::from_mask_unchecked(n, a)).collect(),
                beta_hat: bh,
                floor: f,
            })
        }
        None => Err(Error::Infeasible(format!(
            "no {m} distinct anchors with |T| = {f} admit {} extra sets (k={k}, s={s}, t={t}, β={beta}, n={n})",
            t - 1
        ))),
    }
}

struct AnchorSearch {
    n: u32,
    k: u32,
    s: u32,
    t: u32,
    need: u32,
    target: u32,
    slack: u32,
    m: usize,
    pool: Vec<u64>,
    seen: HashSet<Vec<u8>>,
    nodes: u64,
    budget: u64,
    found: Option<(Vec<u64>, Vec<u64>)>,
}

impl AnchorSearch {
    /// `used` is the highest element index (0-based bit) consumed so far plus one.
    fn rec(&mut self, chosen: &mut Vec<u64>, used: u32) -> Result<()> {
        if self.found.is_some() {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let counts: Vec<u32> = (0..64).map(|e| chosen.iter().filter(|&&a| a >> e & 1 == 1).count() as u32).collect();
        let support = counts.iter().filter(|&&c| c > 0).count() as u32;
        if support > self.target + self.slack {
            return Ok(());
        }
        let wasted: u32 = counts.iter().map(|&c| c.saturating_sub(self.need)).sum();
        if wasted > self.slack {
            return Ok(());
        }
        if chosen.len() == self.m {
            let tm = t_mask(chosen, self.s)?;
            if tm.count_ones() != self.target {
                return Ok(());
            }
            let family = Family::from_masks(self.n, self.k, chosen.clone())?;
            if !self.seen.insert(canonical_form(&family).bytes().to_vec()) {
                return Ok(());
            }
            if let Some(extra) = self.extras(chosen)? {
                self.found = Some((chosen.clone(), extra));
            }
            return Ok(());
        }
        let last = chosen.last().copied();
        let used_mask = crate::setfam::ground_mask(used);
        for i in 0..self.pool.len() {
            let a = self.pool[i];
            if a >> self.n != 0 {
                continue;
            }
            // anchors in increasing lex order, new elements taken in order
            if let Some(l) = last {
                if lex_cmp(a, l).is_le() {
                    continue;
                }
            }
            let fresh = a & !used_mask;
            let j = fresh.count_ones();
            if fresh != crate::setfam::ground_mask(used + j) & !used_mask {
                continue;
            }
            chosen.push(a);
            self.rec(chosen, used + j)?;
            chosen.pop();
            if self.found.is_some() {
                break;
            }
        }
        Ok(())
    }

    /// Lexicographically first `t-1` sets through 1, each disjoint from at
    /// least `s` anchors, keeping the anchors plus extras (s,t)-union intersecting.
    fn extras(&self, anchors: &[u64]) -> Result<Option<Vec<u64>>> {
        let cands: Vec<u64> = all_k_sets(self.n, self.k)
            .into_iter()
            .filter(|&x| x & 1 != 0 && disjoint_count(x, anchors) >= self.s)
            .collect();
        let want = (self.t - 1) as usize;
        let (s, t) = (self.s as usize, self.t as usize);
        let base = Family::from_masks(self.n, self.k, anchors.to_vec())?;
        if !kneser::is_union_intersecting(&base, s, t)? {
            return Ok(None);
        }
        fn rec(
            cands: &[u64],
            start: usize,
            want: usize,
            cur: &mut Vec<u64>,
            anchors: &[u64],
            n: u32,
            k: u32,
            s: usize,
            t: usize,
        ) -> Result<bool> {
            if cur.len() == want {
                return Ok(true);
            }
            for i in start..cands.len() {
                let mut masks = anchors.to_vec();
                masks.extend(cur.iter());
                let g = DisjointnessGraph::new(Family::from_masks(n, k, masks)?);
                let x = KSet::from_mask_unchecked(n, cands[i]);
                if g.extension_witness(&x, &[s, t])?.is_some() {
                    continue;
                }
                cur.push(cands[i]);
                if rec(cands, i + 1, want, cur, anchors, n, k, s, t)? {
                    return Ok(true);
                }
                cur.pop();
            }
            Ok(false)
        }
        let mut cur = Vec::new();
        if rec(&cands, 0, want, &mut cur, anchors, self.n, self.k, s, t)? {
            Ok(Some(cur))
        } else {
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::binomial_u128 as c;
    use crate::iso::is_isomorphic;
    use crate::structure;

    fn kset(n: u32, e: &[u32]) -> KSet {
        KSet::new(n, e).unwrap()
    }

    #[test]
    fn stars() {
        assert_eq!(star(4, 2, 1).unwrap().element_lists(), vec![vec![1, 2], vec![1, 3], vec![1, 4]]);
        assert_eq!(star(5, 2, 5).unwrap().element_lists(), vec![vec![1, 5], vec![2, 5], vec![3, 5], vec![4, 5]]);
        assert_eq!(star(10, 3, 1).unwrap().len(), 36);
        assert!(matches!(star(4, 2, 5), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn hilton_milner() {
        let hm = hm_family(10, 3, &kset(10, &[2, 3, 4])).unwrap();
        assert_eq!(hm.len(), 22);
        assert_eq!(hm.len() as u128, c(9, 2) - c(6, 2) + 1);
        assert!(structure::is_intersecting(&hm));
        let p = hm_prime(7, 3).unwrap();
        let h = hm_family(7, 3, &kset(7, &[2, 3, 4])).unwrap();
        assert_eq!(p.len(), h.len());
        assert_eq!(p.len(), 13);
        let h4 = hm_family(12, 4, &kset(12, &[2, 3, 4, 5])).unwrap();
        assert!(h4.len() > hm_prime(12, 4).unwrap().len());
        assert!(matches!(hm_family(10, 3, &kset(10, &[1, 3, 4])), Err(Error::AnchorViolation(_))));
    }

    #[test]
    fn j_families() {
        assert_eq!(j_family(10, 3, 0, None).unwrap(), star(10, 3, 1).unwrap());
        let j1 = j_family(10, 3, 1, None).unwrap();
        assert_eq!(j1.len(), 22);
        let hm = hm_family(10, 3, &kset(10, &[2, 3, 4])).unwrap();
        assert!(is_isomorphic(&j1, &hm).unwrap().is_some());
        let j2 = j_family(10, 3, 2, None).unwrap();
        assert_eq!(j2.len() as u128, c(9, 2) - c(7, 2) + c(5, 0) + 2);
        assert_eq!(j2.len(), 18);
        let bad = JAnchors { j: vec![2, 3], e: vec![4, 5] };
        assert!(matches!(j_family(10, 3, 1, Some(&bad)), Err(Error::AnchorViolation(_))));
    }

    #[test]
    fn f_families() {
        assert_eq!(f_i_family(10, 3, 1).unwrap().len(), 16);
        let f3 = f_i_family(10, 3, 3).unwrap();
        assert_eq!(f3.len(), 8);
        assert!(f3.contains_mask(elements_mask(&[4, 5, 6])));
        assert!(matches!(f_i_family(10, 3, 0), Err(Error::BadParameters(_))));
    }

    #[test]
    fn f_st() {
        assert_eq!(f_st_family(20, 2, 2, 2, None).unwrap().len(), 7);
        let f = f_st_family(12, 3, 1, 1, None).unwrap();
        assert_eq!(f.len(), 28);
        assert_eq!(f.len(), hm_family(12, 3, &kset(12, &[2, 3, 4])).unwrap().len());
        assert!(matches!(f_st_family(8, 3, 2, 4, None), Err(Error::Infeasible(_))));
        let f = f_st_family(20, 2, 2, 2, Some(&[vec![1, 20]])).unwrap();
        assert!(f.contains_mask(elements_mask(&[1, 20])));
        assert!(f_st_family(20, 2, 2, 2, Some(&[vec![1, 2]])).is_err());
    }

    #[test]
    fn t_sets() {
        let a = [kset(6, &[2, 3, 4]), kset(6, &[3, 4, 5]), kset(6, &[4, 5, 6])];
        assert_eq!(t_set(&a, 1).unwrap(), vec![4]);
        assert_eq!(t_set(&a, 2).unwrap(), vec![3, 4, 5]);
        assert_eq!(t_set(&a, 3).unwrap(), vec![2, 3, 4, 5, 6]);
        let dup = [kset(6, &[2, 3, 4]), kset(6, &[2, 3, 4])];
        assert!(matches!(t_set(&dup, 1), Err(Error::DuplicateSet(_))));
    }

    #[test]
    fn restricted_stars() {
        let f = star_restricted(6, 2, &[kset(6, &[2, 3])], 1).unwrap();
        assert_eq!(f.element_lists(), vec![vec![1, 2], vec![1, 3]]);
        assert_eq!(f.len() as u128, c(5, 1) - c(3, 1));
        // s = m with disjoint anchors: star minus the sets avoiding the union
        let a = [kset(10, &[2, 3, 4]), kset(10, &[5, 6, 7])];
        let f = star_restricted(10, 3, &a, 2).unwrap();
        let g = Family::filtered(10, 3, |m| m & 1 != 0 && m & elements_mask(&[2, 3, 4, 5, 6, 7]) != 0).unwrap();
        assert_eq!(f, g);
        // s = 1 with two anchors sharing {2,3}
        let a = [kset(10, &[2, 3, 4]), kset(10, &[2, 3, 5])];
        let f = star_restricted(10, 3, &a, 1).unwrap();
        let lemma_c = c(9, 2) - c(7, 2) + c(5, 0);
        assert_eq!(f.len() as u128, lemma_c);
        assert!(matches!(star_restricted(6, 2, &[kset(6, &[1, 3])], 1), Err(Error::AnchorViolation(_))));
    }

    #[test]
    fn restricted_multipartite() {
        let a = [kset(10, &[2, 3, 4]), kset(10, &[5, 6, 7])];
        assert_eq!(star_restricted_multipartite(10, 3, &a, 2, 1).unwrap(), star_restricted(10, 3, &a, 2).unwrap());
        let f = star_restricted_multipartite(8, 2, &[kset(8, &[3, 4])], 1, 2).unwrap();
        assert_eq!(f.element_lists(), vec![vec![2, 3], vec![2, 4]]);
        assert!(matches!(
            star_restricted_multipartite(8, 2, &[kset(8, &[2, 4])], 1, 2),
            Err(Error::AnchorViolation(_))
        ));
    }

    #[test]
    fn beta_hat_values() {
        assert_eq!(floor_value(3, 3, 5), 4);
        assert_eq!(beta_hat(3, 3, 5), 5);
        assert_eq!(beta_hat(3, 1, 0), 0);
        assert_eq!(floor_value(4, 2, 1), 6);
        assert_eq!(beta_hat(4, 2, 1), 1);
        for k in 1..8 {
            for s in 1..6 {
                for b in 0..10 {
                    let bh = beta_hat(k, s, b);
                    assert!(bh >= b);
                    let f = floor_value(k, s, b);
                    if f > k {
                        assert!((b..=bh).all(|x| floor_value(k, s, x) == f));
                        assert_ne!(floor_value(k, s, bh + 1), f);
                    }
                }
            }
        }
    }

    #[test]
    fn j_1t() {
        let a = j_1t_family(12, 3, 1, 1, None).unwrap();
        assert!(is_isomorphic(&a, &j_family(12, 3, 1, None).unwrap()).unwrap().is_some());
        let b = j_1t_family(12, 3, 2, 3, None).unwrap();
        assert_eq!(b.len(), j_family(12, 3, 2, None).unwrap().len() + 4);
        assert!(kneser::is_union_intersecting(&b, 1, 3).unwrap());
        assert!(matches!(j_1t_family(5, 3, 2, 2, None), Err(Error::Infeasible(_))));
    }

    #[test]
    fn j_1t_r() {
        for (i, t) in [(1, 1), (2, 2), (2, 3)] {
            let comp = j_1t_r_family(12, 3, i, t, 1, J1trMode::Completed, None).unwrap();
            assert!(is_isomorphic(&comp, &j_1t_family(12, 3, i, t, None).unwrap()).unwrap().is_some());
        }
        let lit = j_1t_r_family(12, 3, 1, 1, 2, J1trMode::Literal, None).unwrap();
        // sets through 2 avoiding 1 that meet {3,4,5}: C(10,2) - C(7,2)
        assert_eq!(lit.len(), 24);
        let bad = J1tAnchors { xs: vec![4], e: vec![4, 5], blocks: None };
        assert!(matches!(
            j_1t_r_family(12, 3, 1, 1, 2, J1trMode::Literal, Some(&bad)),
            Err(Error::AnchorViolation(_))
        ));
    }

    #[test]
    fn l_families() {
        let a = [kset(20, &[2, 3, 4]), kset(20, &[5, 6, 7])];
        let l = ranked_l_family(20, 3, 2, 2, &a).unwrap();
        assert_eq!(l.len() as u128, c(19, 2) - c(13, 2) + 3);
        let hm = ranked_l_family(10, 3, 1, 1, &[kset(10, &[2, 3, 4])]).unwrap();
        assert_eq!(hm, hm_family(10, 3, &kset(10, &[2, 3, 4])).unwrap());
        assert!(matches!(ranked_l_family(20, 3, 1, 1, &[kset(20, &[1, 3, 4])]), Err(Error::AnchorViolation(_))));
    }

    #[test]
    fn extremal_examples() {
        let e = hmnew3_extremal(10, 3, 1, 1, 0, 1_000_000).unwrap();
        assert_eq!(e.family.len(), 22);
        let hm = hm_family(10, 3, &kset(10, &[2, 3, 4])).unwrap();
        assert!(is_isomorphic(&e.family, &hm).unwrap().is_some());
        assert!(matches!(hmnew3_extremal(12, 3, 3, 3, 5, 1_000_000), Err(Error::Infeasible(_))));
        let e = hmnew3_extremal(18, 3, 2, 2, 0, 1_000_000).unwrap();
        assert_eq!(e.family.len() as u128, c(17, 2) - c(11, 2) + 3);
        assert_eq!(structure::ell(&e.family, 2).unwrap().value, 2);
    }
}
