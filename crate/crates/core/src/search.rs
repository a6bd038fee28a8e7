//! Exact maximum-family search under constraints: a brute-force oracle over
//! every subfamily for tiny instances, a branch and bound that scales past
//! it, enumeration of maximal families, and the exhaustive anchor sweep for
//! the restricted-star inequalities.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::bounds::binomial_u128;
use crate::constructions::{floor_value, t_mask};
use crate::error::{Error, Result};
use crate::iso::canonical_form;
use crate::kneser::{self, multipartite_search};
use crate::setfam::{all_k_sets, elements_mask, ground_mask, lex_cmp, Family};
use crate::structure;

/// Constraints on a family.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    /// Forbidden complete multipartite pattern `[s_1,…,s_m]` in the disjointness graph.
    pub pattern: Option<Vec<usize>>,
    /// `(r, c)`: require `ℓ_r(F) >= c`.
    pub ell_min: Option<(usize, usize)>,
    pub must_contain: Vec<Vec<u32>>,
    pub must_avoid: Vec<Vec<u32>>,
}

impl ConstraintSpec {
    pub fn pattern(sizes: &[usize]) -> Self {
        ConstraintSpec { pattern: Some(sizes.to_vec()), ..Default::default() }
    }

    pub fn with_ell_min(mut self, r: usize, c: usize) -> Self {
        self.ell_min = Some((r, c));
        self
    }

    pub fn validate(&self, n: u32, k: u32) -> Result<()> {
        if self.pattern.is_none() && self.ell_min.is_none() && self.must_contain.is_empty() && self.must_avoid.is_empty() {
            return Err(Error::BadParameters("constraint spec is empty".into()));
        }
        if let Some(p) = &self.pattern {
            if p.is_empty() || p.contains(&0) {
                return Err(Error::BadParameters("pattern sizes must be nonempty and positive".into()));
            }
        }
        if let Some((r, _)) = self.ell_min {
            if r < 2 {
                return Err(Error::BadParameters("ℓ_r needs r >= 2".into()));
            }
        }
        for s in self.must_contain.iter().chain(&self.must_avoid) {
            crate::setfam::KSet::new(n, s).and_then(|x| {
                if x.len() == k {
                    Ok(())
                } else {
                    Err(Error::WrongSetSize { expected: k, found: s.len() })
                }
            })?;
        }
        Ok(())
    }

    fn has_anchors(&self) -> bool {
        !self.must_contain.is_empty() || !self.must_avoid.is_empty()
    }

    /// Checks `f` through the graph and ℓ solvers.
    pub fn is_satisfied_by(&self, f: &Family) -> Result<bool> {
        for s in &self.must_contain {
            if !f.contains_mask(elements_mask(s)) {
                return Ok(false);
            }
        }
        for s in &self.must_avoid {
            if f.contains_mask(elements_mask(s)) {
                return Ok(false);
            }
        }
        if let Some(p) = &self.pattern {
            if kneser::contains_complete_multipartite(&kneser::build_graph(f), p)?.is_some() {
                return Ok(false);
            }
        }
        if let Some((r, c)) = self.ell_min {
            if structure::ell(f, r)?.value < c {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub max_size: usize,
    pub witness: Family,
    pub optimal: bool,
    pub nodes_explored: u64,
    pub wall_budget_hit: bool,
}

const ORACLE_LIMIT: usize = 24;

/// Verdicts of every subfamily, indexed by bit pattern over the lex-ordered k-sets.
struct Oracle {
    sets: Vec<u64>,
    valid: Vec<bool>,
}

impl Oracle {
    fn run(n: u32, k: u32, spec: &ConstraintSpec) -> Result<Oracle> {
        spec.validate(n, k)?;
        let total = binomial_u128(n as i64, k as i64);
        if total > ORACLE_LIMIT as u128 {
            return Err(Error::TooLarge(format!("C({n},{k}) = {total} sets, oracle handles at most {ORACLE_LIMIT}")));
        }
        let sets = all_k_sets(n, k);
        let v = sets.len();
        let mut adj = vec![0u32; v];
        for i in 0..v {
            for j in 0..v {
                if i != j && sets[i] & sets[j] == 0 {
                    adj[i] |= 1 << j;
                }
            }
        }
        let size = 1usize << v;
        let bit_of = |s: &Vec<u32>| -> u32 {
            let m = elements_mask(s);
            1 << sets.iter().position(|&x| x == m).unwrap()
        };
        let contain: u32 = spec.must_contain.iter().map(bit_of).fold(0, |a, b| a | b);
        let avoid: u32 = spec.must_avoid.iter().map(bit_of).fold(0, |a, b| a | b);

        // pattern-freeness is hereditary: test only witnesses through the top set
        let free: Vec<bool> = match &spec.pattern {
            None => vec![true; size],
            Some(p) => {
                let mut free = vec![true; size];
                for mask in 1..size {
                    let top = 31 - (mask as u32).leading_zeros() as usize;
                    let rest = mask & !(1 << top);
                    free[mask] = free[rest] && !pattern_through(&adj, mask as u32, top, p);
                }
                free
            }
        };
        let ell_ok: Vec<bool> = match spec.ell_min {
            None => vec![true; size],
            Some((r, c)) => {
                let mut clique_free = vec![true; size];
                for mask in 1..size {
                    let top = 31 - (mask as u32).leading_zeros() as usize;
                    let rest = mask & !(1 << top);
                    clique_free[mask] = clique_free[rest] && !clique_through(&adj, rest as u32, top, r - 1);
                }
                // largest clique-free subfamily of each mask
                let mut best = vec![0u8; size];
                for mask in 1..size {
                    best[mask] = if clique_free[mask] {
                        (mask as u32).count_ones() as u8
                    } else {
                        let mut b = 0;
                        let mut m = mask;
                        while m != 0 {
                            let low = m & m.wrapping_neg();
                            b = b.max(best[mask ^ low]);
                            m ^= low;
                        }
                        b
                    };
                }
                (0..size).map(|mask| (mask as u32).count_ones() as usize - best[mask] as usize >= c).collect()
            }
        };
        let valid = (0..size)
            .map(|m| free[m] && ell_ok[m] && (m as u32) & contain == contain && (m as u32) & avoid == 0)
            .collect();
        Ok(Oracle { sets, valid })
    }

    fn family(&self, n: u32, k: u32, mask: usize) -> Family {
        let masks = (0..self.sets.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.sets[i]).collect();
        Family::from_sorted_unchecked(n, k, masks)
    }
}

/// Whether the sets in `mask` contain the pattern with vertex `v` in it.
fn pattern_through(adj: &[u32], mask: u32, v: usize, sizes: &[usize]) -> bool {
    fn fill(adj: &[u32], mask: u32, sizes: &[usize], parts: &mut Vec<u32>, p: usize, from: usize) -> bool {
        if p == sizes.len() {
            return true;
        }
        if parts[p].count_ones() as usize == sizes[p] {
            return fill(adj, mask, sizes, parts, p + 1, 0);
        }
        let used: u32 = parts.iter().fold(0, |a, b| a | b);
        for u in from..adj.len() {
            if mask >> u & 1 == 0 || used >> u & 1 == 1 {
                continue;
            }
            let ok = parts
                .iter()
                .enumerate()
                .all(|(q, &pm)| q == p || pm & !adj[u] == 0);
            if !ok {
                continue;
            }
            parts[p] |= 1 << u;
            if fill(adj, mask, sizes, parts, p, u + 1) {
                return true;
            }
            parts[p] &= !(1 << u);
        }
        false
    }
    (0..sizes.len()).any(|p| {
        let mut parts = vec![0u32; sizes.len()];
        parts[p] = 1 << v;
        fill(adj, mask, sizes, &mut parts, 0, 0)
    })
}

/// Whether `mask` holds `r` pairwise disjoint sets all disjoint from `v`.
fn clique_through(adj: &[u32], mask: u32, v: usize, r: usize) -> bool {
    fn rec(adj: &[u32], cand: u32, r: usize) -> bool {
        if r == 0 {
            return true;
        }
        let mut c = cand;
        while c != 0 {
            let u = c.trailing_zeros() as usize;
            c &= c - 1;
            if rec(adj, c & adj[u], r - 1) {
                return true;
            }
        }
        false
    }
    rec(adj, mask & adj[v], r)
}

fn lex_smaller(a: usize, b: usize) -> bool {
    lex_cmp(a as u64, b as u64).is_lt()
}

/// Exhaustive maximum over all `2^C(n,k)` subfamilies.
pub fn oracle_max_family(n: u32, k: u32, spec: &ConstraintSpec) -> Result<SearchResult> {
    let oracle = Oracle::run(n, k, spec)?;
    let mut best: Option<usize> = None;
    for (mask, &ok) in oracle.valid.iter().enumerate() {
        if !ok {
            continue;
        }
        best = match best {
            None => Some(mask),
            Some(b) => {
                let (cm, cb) = (mask.count_ones(), b.count_ones());
                if cm > cb || (cm == cb && lex_smaller(mask, b)) {
                    Some(mask)
                } else {
                    Some(b)
                }
            }
        };
    }
    let best = best.ok_or_else(|| Error::Infeasible("no family satisfies the constraints".into()))?;
    let witness = oracle.family(n, k, best);
    recheck(spec, &witness)?;
    Ok(SearchResult {
        max_size: witness.len(),
        witness,
        optimal: true,
        nodes_explored: oracle.valid.len() as u64,
        wall_budget_hit: false,
    })
}

fn recheck(spec: &ConstraintSpec, f: &Family) -> Result<()> {
    if !spec.is_satisfied_by(f)? {
        return Err(Error::TheoremViolation(format!("search witness fails its own constraints: {f:?}")));
    }
    Ok(())
}

/// Maximal-under-inclusion families satisfying `spec`, one per isomorphism
/// class, largest first and then by certificate.
pub fn enumerate_maximal(n: u32, k: u32, spec: &ConstraintSpec, limit: usize) -> Result<Vec<Family>> {
    let oracle = Oracle::run(n, k, spec)?;
    let v = oracle.sets.len();
    let mut classes: Vec<(usize, Vec<u8>, Family)> = Vec::new();
    let mut seen = HashSet::new();
    for (mask, &ok) in oracle.valid.iter().enumerate() {
        if !ok || (0..v).any(|i| mask >> i & 1 == 0 && oracle.valid[mask | 1 << i]) {
            continue;
        }
        let f = oracle.family(n, k, mask);
        let cert = canonical_form(&f).bytes().to_vec();
        if seen.insert(cert.clone()) {
            if classes.len() == limit {
                return Err(Error::LimitExceeded(limit));
            }
            classes.push((f.len(), cert, f));
        }
    }
    classes.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(classes.into_iter().map(|c| c.2).collect())
}

/// Include/exclude search over the lex-ordered k-sets.
pub fn branch_and_bound_max(n: u32, k: u32, spec: &ConstraintSpec, budget: u64) -> Result<SearchResult> {
    spec.validate(n, k)?;
    if binomial_u128(n as i64, k as i64) > 4096 {
        return Err(Error::TooLarge(format!("C({n},{k}) sets exceed the search limit of 4096")));
    }
    let sets = all_k_sets(n, k);
    let v = sets.len();
    let adj = kneser::adjacency(&sets);
    let index = |s: &Vec<u32>| sets.iter().position(|&x| x == elements_mask(s)).unwrap();
    let mut forced_in = BitSet::new(v);
    let mut forced_out = BitSet::new(v);
    for s in &spec.must_contain {
        forced_in.insert(index(s));
    }
    for s in &spec.must_avoid {
        forced_out.insert(index(s));
    }
    let mut bb = BranchAndBound {
        n,
        k,
        spec,
        sets: &sets,
        adj: &adj,
        forced_in,
        forced_out,
        current: BitSet::new(v),
        best: None,
        nodes: 0,
        budget,
        hit: false,
    };
    if spec.has_anchors() || v == 0 {
        bb.rec(0)?;
    } else {
        // every nonempty family is isomorphic to one containing {1..k}
        bb.leaf()?;
        if bb.admits(0)? {
            bb.current.insert(0);
            bb.rec(1)?;
            bb.current.remove(0);
        }
    }
    let best = bb.best.clone();
    let optimal = !bb.hit;
    match best {
        Some(b) => {
            let witness = Family::from_sorted_unchecked(n, k, b.iter().map(|i| sets[i]).collect());
            recheck(spec, &witness)?;
            Ok(SearchResult {
                max_size: witness.len(),
                witness,
                optimal,
                nodes_explored: bb.nodes,
                wall_budget_hit: bb.hit,
            })
        }
        None if bb.hit => Ok(SearchResult {
            max_size: 0,
            witness: Family::empty(n, k)?,
            optimal: false,
            nodes_explored: bb.nodes,
            wall_budget_hit: true,
        }),
        None => Err(Error::Infeasible("no family satisfies the constraints".into())),
    }
}

struct BranchAndBound<'a> {
    n: u32,
    k: u32,
    spec: &'a ConstraintSpec,
    sets: &'a [u64],
    adj: &'a [BitSet],
    forced_in: BitSet,
    forced_out: BitSet,
    current: BitSet,
    best: Option<BitSet>,
    nodes: u64,
    budget: u64,
    hit: bool,
}

impl BranchAndBound<'_> {
    fn best_len(&self) -> Option<usize> {
        self.best.as_ref().map(BitSet::count)
    }

    /// Whether adding set `i` to the current family keeps the pattern out.
    fn admits(&self, i: usize) -> Result<bool> {
        if self.forced_out.contains(i) {
            return Ok(false);
        }
        let Some(p) = &self.spec.pattern else { return Ok(true) };
        let mut allowed = self.current.clone();
        allowed.insert(i);
        Ok(multipartite_search(self.adj, &allowed, p, Some(i), u64::MAX)?.is_none())
    }

    /// Undecided sets that can still join; with a `[1,t]` pattern a set
    /// already disjoint from `t` members is out for good.
    fn open_candidates(&self, i: usize) -> usize {
        let t = match self.spec.pattern.as_deref() {
            Some(&[1, t]) | Some(&[t, 1]) => t,
            _ => return self.sets.len() - i,
        };
        (i..self.sets.len())
            .filter(|&j| self.adj[j].intersection_count(&self.current) < t)
            .count()
    }

    fn leaf(&mut self) -> Result<()> {
        let size = self.current.count();
        if let Some(b) = self.best_len() {
            if size < b {
                return Ok(());
            }
        }
        let mut fi = self.forced_in.clone();
        fi.difference_with(&self.current);
        if !fi.is_empty() {
            return Ok(());
        }
        if let Some((r, c)) = self.spec.ell_min {
            let f = Family::from_sorted_unchecked(self.n, self.k, self.current.iter().map(|i| self.sets[i]).collect());
            if structure::ell(&f, r)?.value < c {
                return Ok(());
            }
        }
        let better = match &self.best {
            None => true,
            Some(b) => size > b.count() || lex_before(&self.current, b),
        };
        if better {
            self.best = Some(self.current.clone());
        }
        Ok(())
    }

    fn rec(&mut self, i: usize) -> Result<()> {
        if self.hit {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.hit = true;
            return Ok(());
        }
        if i == self.sets.len() {
            return self.leaf();
        }
        if let Some(b) = self.best_len() {
            if self.current.count() + self.open_candidates(i) < b {
                return Ok(());
            }
        }
        if self.admits(i)? {
            self.current.insert(i);
            self.rec(i + 1)?;
            self.current.remove(i);
        }
        if !self.forced_in.contains(i) {
            self.rec(i + 1)?;
        }
        Ok(())
    }
}

/// Lexicographic order on index sets of equal size: the lowest differing index
/// belongs to the smaller one.
fn lex_before(a: &BitSet, b: &BitSet) -> bool {
    if a.count() != b.count() {
        return false;
    }
    for (x, y) in a.iter().zip(b.iter()) {
        if x != y {
            return x < y;
        }
    }
    false
}

/// Outcome of one anchor tuple in [`lemma22_sweep`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorCase {
    pub anchors: Vec<Vec<u32>>,
    pub t_size: usize,
    pub star_size: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma22Report {
    pub n: u32,
    pub k: u32,
    pub s: u32,
    pub beta: u32,
    pub floor: u64,
    pub tuples: usize,
    pub upper_bound: u128,
    pub equality_cases: usize,
    pub t_at_floor: usize,
    /// Tuples violating the lower bound in terms of `|T|`.
    pub lower_violations: Vec<AnchorCase>,
    /// Tuples exceeding the upper bound.
    pub upper_violations: Vec<AnchorCase>,
    /// Tuples where equality and `|T| = floor` disagree.
    pub equality_mismatches: Vec<AnchorCase>,
    /// For `s = 1`: the `|T| = k-1` refinement.
    pub part_c: Option<PartC>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartC {
    pub upper_bound: u128,
    pub equality_cases: usize,
    pub upper_violations: Vec<AnchorCase>,
    pub equality_mismatches: Vec<AnchorCase>,
}

impl Lemma22Report {
    pub fn violations(&self) -> usize {
        self.lower_violations.len()
            + self.upper_violations.len()
            + self.equality_mismatches.len()
            + self.part_c.as_ref().map_or(0, |c| c.upper_violations.len() + c.equality_mismatches.len())
    }
}

/// Every tuple of `s+β` distinct k-sets avoiding 1, up to relabelling, with
/// `|St_1(A_1,…:s)|` compared against the bounds in terms of `|T|` and of
/// `⌊(s+β)k/(β+1)⌋`.
pub fn lemma22_sweep(n: u32, k: u32, s: u32, beta: u32) -> Result<Lemma22Report> {
    if k < 1 || s < 1 || n < k + 1 || n > 24 {
        return Err(Error::BadParameters(format!("need 1 <= k < n <= 24 and s >= 1, got n={n}, k={k}, s={s}")));
    }
    let m = (s + beta) as usize;
    let f = floor_value(k as u64, s as u64, beta as u64);
    let (ni, ki) = (n as i64, k as i64);
    let head = binomial_u128(ni - 1, ki - 1);
    let upper = head - binomial_u128(ni - f as i64 - 1, ki - 1);
    let c_upper = (s == 1).then(|| {
        head - binomial_u128(ni - ki, ki - 1) + binomial_u128(ni - ki - beta as i64 - 1, ki - beta as i64 - 2)
    });
    let window = ((s + beta) * k).min(n - 1);
    let mut pool: Vec<u64> = all_k_sets(window, k).into_iter().map(|a| a << 1).collect();
    pool.sort_by(|a, b| lex_cmp(*a, *b));
    let star: Vec<u64> = all_k_sets(n, k).into_iter().filter(|x| x & 1 != 0).collect();

    let mut report = Lemma22Report {
        n,
        k,
        s,
        beta,
        floor: f,
        tuples: 0,
        upper_bound: upper,
        equality_cases: 0,
        t_at_floor: 0,
        lower_violations: Vec::new(),
        upper_violations: Vec::new(),
        equality_mismatches: Vec::new(),
        part_c: c_upper.map(|u| PartC {
            upper_bound: u,
            equality_cases: 0,
            upper_violations: Vec::new(),
            equality_mismatches: Vec::new(),
        }),
    };
    let mut seen = HashSet::new();
    let mut visit = |anchors: &[u64]| -> Result<()> {
        let fam = Family::from_masks(n, k, anchors.to_vec())?;
        if !seen.insert(canonical_form(&fam).bytes().to_vec()) {
            return Ok(());
        }
        report.tuples += 1;
        let t = t_mask(anchors, s)?.count_ones() as usize;
        let size = star
            .iter()
            .filter(|&&x| (anchors.iter().filter(|&&a| a & x == 0).count() as u32) < s)
            .count() as u128;
        let case = || AnchorCase {
            anchors: anchors.iter().map(|&a| crate::setfam::mask_elements(a)).collect(),
            t_size: t,
            star_size: size,
        };
        let lower = head - binomial_u128(ni - t as i64 - 1, ki - 1);
        if lower > size {
            report.lower_violations.push(case());
        }
        if size > upper {
            report.upper_violations.push(case());
        }
        if size == upper {
            report.equality_cases += 1;
        }
        if t as u64 == f {
            report.t_at_floor += 1;
        }
        if (size == upper) != (t as u64 == f) {
            report.equality_mismatches.push(case());
        }
        if let Some(pc) = report.part_c.as_mut() {
            if size > pc.upper_bound {
                pc.upper_violations.push(case());
            }
            if size == pc.upper_bound {
                pc.equality_cases += 1;
            }
            if beta >= 1 && (size == pc.upper_bound) != (t == (k - 1) as usize) {
                pc.equality_mismatches.push(case());
            }
        }
        Ok(())
    };
    for_each_anchor_tuple(&pool, m, &mut visit)?;
    Ok(report)
}

/// Lex-increasing tuples of sets from `pool` (all avoiding element 1) whose
/// new elements always come in order `2, 3, …`.
fn for_each_anchor_tuple(pool: &[u64], m: usize, visit: &mut dyn FnMut(&[u64]) -> Result<()>) -> Result<()> {
    fn rec(pool: &[u64], m: usize, start: usize, used: u32, cur: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64]) -> Result<()>) -> Result<()> {
        if cur.len() == m {
            return visit(cur);
        }
        let used_mask = ground_mask(used);
        for i in start..pool.len() {
            let a = pool[i];
            let fresh = a & !used_mask;
            let j = fresh.count_ones();
            if fresh != ground_mask(used + j) & !used_mask {
                continue;
            }
            cur.push(a);
            rec(pool, m, i + 1, used + j, cur, visit)?;
            cur.pop();
        }
        Ok(())
    }
    rec(pool, m, 0, 1, &mut Vec::new(), visit)
}
