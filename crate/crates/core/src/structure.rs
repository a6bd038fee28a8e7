//! Structural invariants of families: intersecting-ness, the removal
//! invariant `ℓ_r`, maximum element degree, disjoint-pair peeling, and skew
//! cross-intersecting set-pair systems.

use crate::bitset::BitSet;
use crate::bounds::binomial_u128;
use crate::error::{Error, Result};
use crate::kneser::{self, DisjointnessGraph};
use crate::setfam::{ground_mask, lex_cmp, mask_elements, Family, KSet};

pub fn is_intersecting(f: &Family) -> bool {
    let masks = f.masks();
    masks
        .iter()
        .enumerate()
        .all(|(i, &a)| masks[i + 1..].iter().all(|&b| a & b != 0))
}

/// Exact `ℓ_r` together with an optimal removal set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ell {
    pub value: usize,
    /// Indices into the family, ascending.
    pub removal: Vec<usize>,
    pub nodes: u64,
}

impl Ell {
    pub fn removed(&self, f: &Family) -> Family {
        f.subfamily(&self.removal)
    }

    pub fn remainder(&self, f: &Family) -> Family {
        f.without_indices(&self.removal)
    }
}

/// Minimum number of members whose removal leaves no `r` pairwise disjoint sets.
pub fn ell(f: &Family, r: usize) -> Result<Ell> {
    ell_with_budget(f, r, u64::MAX)
}

pub fn ell_with_budget(f: &Family, r: usize, budget: u64) -> Result<Ell> {
    if r < 2 {
        return Err(Error::BadParameters(format!("ℓ_r needs r >= 2, got {r}")));
    }
    let g = DisjointnessGraph::new(f.clone());
    if r == 2 {
        min_vertex_cover(&g, budget)
    } else {
        min_clique_hitting_set(&g, r, budget)
    }
}

/// ℓ_2 as the complement of a maximum independent set among the vertices
/// that have at least one edge.
fn min_vertex_cover(g: &DisjointnessGraph, budget: u64) -> Result<Ell> {
    let v = g.order();
    let adj = g.adjacency();
    let active: Vec<usize> = (0..v).filter(|&i| !adj[i].is_empty()).collect();
    if active.is_empty() {
        return Ok(Ell { value: 0, removal: Vec::new(), nodes: 0 });
    }
    // complement graph on the active vertices, relabelled 0..a
    let a = active.len();
    let mut comp = vec![BitSet::new(a); a];
    for (x, &i) in active.iter().enumerate() {
        for (y, &j) in active.iter().enumerate() {
            if x != y && !adj[i].contains(j) {
                comp[x].insert(y);
            }
        }
    }
    let mut mc = MaxClique { adj: &comp, best: Vec::new(), nodes: 0, budget };
    let mut r = Vec::new();
    mc.expand(&mut r, BitSet::full(a))?;
    let keep: BitSet = {
        let mut b = BitSet::new(a);
        for &x in &mc.best {
            b.insert(x);
        }
        b
    };
    let removal: Vec<usize> = (0..a).filter(|x| !keep.contains(*x)).map(|x| active[x]).collect();
    Ok(Ell { value: removal.len(), removal, nodes: mc.nodes })
}

/// Maximum clique by greedy-colouring branch and bound.
struct MaxClique<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl MaxClique<'_> {
    fn color_sort(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let (order, colors) = self.color_sort(&p);
        for i in (0..order.len()).rev() {
            if r.len() + colors[i] <= self.best.len() {
                return Ok(());
            }
            let v = order[i];
            r.push(v);
            let mut np = p.clone();
            np.intersect_with(&self.adj[v]);
            if np.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np)?;
            }
            r.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// ℓ_r for r >= 3: minimum hitting set of the r-cliques.
fn min_clique_hitting_set(g: &DisjointnessGraph, r: usize, budget: u64) -> Result<Ell> {
    let cliques = g.cliques(r);
    if cliques.is_empty() {
        return Ok(Ell { value: 0, removal: Vec::new(), nodes: 0 });
    }
    let v = g.order();
    let clique_sets: Vec<BitSet> = cliques
        .iter()
        .map(|c| {
            let mut b = BitSet::new(v);
            for &x in c {
                b.insert(x);
            }
            b
        })
        .collect();
    // greedy upper bound: repeatedly take the vertex in most unhit cliques
    let mut greedy = BitSet::new(v);
    loop {
        let unhit: Vec<&BitSet> = clique_sets.iter().filter(|c| !c.intersects(&greedy)).collect();
        if unhit.is_empty() {
            break;
        }
        let mut counts = vec![0usize; v];
        for c in &unhit {
            for x in c.iter() {
                counts[x] += 1;
            }
        }
        let best = (0..v).max_by_key(|&x| (counts[x], std::cmp::Reverse(x))).unwrap();
        greedy.insert(best);
    }
    let mut hs = HittingSet {
        cliques: &clique_sets,
        best: greedy,
        nodes: 0,
        budget,
    };
    hs.solve(&mut BitSet::new(v), &mut BitSet::new(v))?;
    let removal: Vec<usize> = hs.best.iter().collect();
    Ok(Ell { value: removal.len(), removal, nodes: hs.nodes })
}

struct HittingSet<'a> {
    cliques: &'a [BitSet],
    best: BitSet,
    nodes: u64,
    budget: u64,
}

impl HittingSet<'_> {
    fn solve(&mut self, chosen: &mut BitSet, forbidden: &mut BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let unhit: Vec<&BitSet> = self.cliques.iter().filter(|c| !c.intersects(chosen)).collect();
        if unhit.is_empty() {
            if chosen.count() < self.best.count() {
                self.best = chosen.clone();
            }
            return Ok(());
        }
        // lower bound: greedy packing of vertex-disjoint unhit cliques
        let mut covered = BitSet::new(chosen.capacity());
        let mut packing = 0;
        for c in &unhit {
            if !c.intersects(&covered) {
                packing += 1;
                covered.union_with(c);
            }
        }
        if chosen.count() + packing >= self.best.count() {
            return Ok(());
        }
        // branch on the unhit clique with fewest admissible vertices
        let branch = unhit
            .iter()
            .min_by_key(|c| c.count() - c.intersection_count(forbidden))
            .unwrap();
        let options: Vec<usize> = branch.iter().filter(|&x| !forbidden.contains(x)).collect();
        let mut newly_forbidden = Vec::new();
        for x in options {
            chosen.insert(x);
            self.solve(chosen, forbidden)?;
            chosen.remove(x);
            // later branches exclude x
            forbidden.insert(x);
            newly_forbidden.push(x);
        }
        for x in newly_forbidden {
            forbidden.remove(x);
        }
        Ok(())
    }
}

/// Element of maximum degree (smallest on ties) and its degree.
pub fn max_element_degree(f: &Family) -> Result<(u32, usize)> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut deg = vec![0usize; f.n() as usize];
    for s in f.iter() {
        for e in s.elements() {
            deg[(e - 1) as usize] += 1;
        }
    }
    let (i, &d) = deg
        .iter()
        .enumerate()
        .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
        .unwrap();
    Ok((i as u32 + 1, d))
}

/// Record of the peeling procedure that splits a (1,t)-union intersecting
/// family into an intersecting core and the sets removed along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelingTrace {
    /// `(B_i, C_i)`: the chosen set and its first disjoint partner per round.
    pub pairs: Vec<(KSet, KSet)>,
    /// Sets removed in each round (the neighbourhood of `B_i` that remained).
    pub rounds: Vec<Family>,
    pub removed: Family,
    pub core: Family,
}

impl PeelingTrace {
    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    /// The 2m-pair skew system `(B_1,C_1),…,(B_m,C_m),(C_m,B_m),…,(C_1,B_1)`.
    pub fn doubled_system(&self) -> SetPairSystem {
        let mut pairs: Vec<(u64, u64)> =
            self.pairs.iter().map(|(b, c)| (b.mask(), c.mask())).collect();
        for (b, c) in self.pairs.iter().rev() {
            pairs.push((c.mask(), b.mask()));
        }
        SetPairSystem { pairs }
    }
}

/// Repeatedly picks the lexicographically first set `B` that still has a
/// disjoint partner, records the first such partner `C`, and deletes every
/// remaining set disjoint from `B`, until the remainder is intersecting.
pub fn peel(f: &Family, t: usize) -> Result<PeelingTrace> {
    if t < 1 {
        return Err(Error::BadParameters("t must be at least 1".into()));
    }
    if !kneser::is_union_intersecting(f, 1, t)? {
        return Err(Error::NotUnionIntersecting { s: 1, t });
    }
    let (n, k) = (f.n(), f.k());
    let mut current: Vec<u64> = f.masks();
    let mut pairs = Vec::new();
    let mut rounds = Vec::new();
    loop {
        let choice = current.iter().find_map(|&b| {
            current.iter().find(|&&c| b & c == 0).map(|&c| (b, c))
        });
        let Some((b, c)) = choice else { break };
        let (gone, kept): (Vec<u64>, Vec<u64>) = current.iter().partition(|&&x| x & b == 0);
        current = kept;
        pairs.push((KSet::from_mask_unchecked(n, b), KSet::from_mask_unchecked(n, c)));
        rounds.push(Family::from_sorted_unchecked(n, k, gone));
    }
    let core = Family::from_sorted_unchecked(n, k, current);
    let removed = f.difference(&core);
    let trace = PeelingTrace { pairs, rounds, removed, core };

    let m = trace.m();
    let limit = binomial_u128(2 * k as i64 - 1, k as i64 - 1);
    if !verify_set_pair_system(&trace.doubled_system(), k, k)? || m as u128 > limit {
        return Err(Error::TheoremViolation(format!(
            "peeling produced {m} rounds, the doubled pair system must be skew with at most C(2k-1,k-1) = {limit}"
        )));
    }
    if trace.removed.len() > m * (t - 1) {
        return Err(Error::TheoremViolation(format!(
            "peeling removed {} sets in {m} rounds with t = {t}",
            trace.removed.len()
        )));
    }
    Ok(trace)
}

/// Ordered pairs `(A_i, B_i)` of finite sets over elements `1..=64`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPairSystem {
    pairs: Vec<(u64, u64)>,
}

impl SetPairSystem {
    pub fn new(pairs: &[(Vec<u32>, Vec<u32>)]) -> Result<Self> {
        let to_mask = |v: &[u32]| -> Result<u64> {
            let mut m = 0u64;
            for &e in v {
                if !(1..=64).contains(&e) {
                    return Err(Error::ElementOutOfRange { element: e as i64, n: 64 });
                }
                m |= 1u64 << (e - 1);
            }
            Ok(m)
        };
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((to_mask(a)?, to_mask(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SetPairSystem { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> Vec<(Vec<u32>, Vec<u32>)> {
        self.pairs
            .iter()
            .map(|&(a, b)| (mask_elements(a), mask_elements(b)))
            .collect()
    }

    fn is_skew(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| a & b == 0)
            && self.pairs.iter().enumerate().all(|(i, &(a, _))| {
                self.pairs[i + 1..].iter().all(|&(_, b)| a & b != 0)
            })
    }
}

/// Checks `A_i ∩ B_i = ∅` and `A_i ∩ B_j ≠ ∅` for `i < j`. A system that
/// passes but is longer than `C(k+l, k)` is reported as a violation.
pub fn verify_set_pair_system(sys: &SetPairSystem, k: u32, l: u32) -> Result<bool> {
    for (i, &(a, b)) in sys.pairs.iter().enumerate() {
        if a.count_ones() != k || b.count_ones() != l {
            return Err(Error::SizeMismatch(format!(
                "pair {i} has sizes ({}, {}), expected ({k}, {l})",
                a.count_ones(),
                b.count_ones()
            )));
        }
    }
    if !sys.is_skew() {
        return Ok(false);
    }
    let bound = binomial_u128((k + l) as i64, k as i64);
    if sys.len() as u128 > bound {
        return Err(Error::TheoremViolation(format!(
            "skew system of length {} exceeds C({}, {}) = {bound}",
            sys.len(),
            k + l,
            k
        )));
    }
    Ok(true)
}

/// Exact maximum length of a skew system with `|A_i| = k`, `|B_i| = l` over a
/// ground set of `ground` elements.
pub fn max_set_pair_system(k: u32, l: u32, ground: u32) -> Result<usize> {
    max_set_pair_system_with_budget(k, l, ground, 50_000_000).map(|(h, _)| h)
}

/// Also returns a longest system found.
pub fn max_set_pair_system_with_budget(
    k: u32,
    l: u32,
    ground: u32,
    budget: u64,
) -> Result<(usize, SetPairSystem)> {
    if ground > 12 {
        return Err(Error::TooLarge(format!("ground set {ground} > 12")));
    }
    if k == 0 || l == 0 {
        return Err(Error::BadParameters("set sizes must be positive".into()));
    }
    let bound = binomial_u128((k + l) as i64, k as i64) as usize;
    let all = ground_mask(ground);
    let mut options: Vec<(u64, u64)> = Vec::new();
    for a in crate::setfam::all_k_sets(ground, k) {
        for b in crate::setfam::all_k_sets(ground, l) {
            if a & b == 0 && (a | b) & !all == 0 {
                options.push((a, b));
            }
        }
    }
    options.sort_by(|x, y| lex_cmp(x.0, y.0).then(lex_cmp(x.1, y.1)));

    struct Dfs<'a> {
        options: &'a [(u64, u64)],
        bound: usize,
        best: Vec<(u64, u64)>,
        nodes: u64,
        budget: u64,
    }
    impl Dfs<'_> {
        fn rec(&mut self, seq: &mut Vec<(u64, u64)>, used: u32) -> Result<bool> {
            if seq.len() > self.best.len() {
                self.best = seq.clone();
                if self.best.len() == self.bound {
                    return Ok(true);
                }
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let used_mask = ground_mask(used) * u64::from(used > 0);
            for &(a, b) in self.options {
                // new elements must be the next unused ones, in order
                let fresh = (a | b) & !used_mask;
                let j = fresh.count_ones();
                if fresh != (ground_mask(used + j) & !used_mask) {
                    continue;
                }
                if !seq.iter().all(|&(pa, _)| pa & b != 0) {
                    continue;
                }
                seq.push((a, b));
                let done = self.rec(seq, used + j)?;
                seq.pop();
                if done {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
    let mut dfs = Dfs { options: &options, bound, best: Vec::new(), nodes: 0, budget };
    dfs.rec(&mut Vec::new(), 0)?;
    let h = dfs.best.len();
    Ok((h, SetPairSystem { pairs: dfs.best }))
}
