//! Disjointness graphs (induced Kneser subgraphs) and detection of forbidden
//! complete multipartite subgraphs, `K_{s,t}` being the two-part case.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::setfam::{Family, KSet};

/// Induced subgraph of the Kneser graph on a family: vertices are the
/// family's members (by index), edges join disjoint sets.
#[derive(Clone, Debug)]
pub struct DisjointnessGraph {
    family: Family,
    adj: Vec<BitSet>,
}

pub fn build_graph(f: &Family) -> DisjointnessGraph {
    DisjointnessGraph::new(f.clone())
}

impl DisjointnessGraph {
    pub fn new(family: Family) -> Self {
        let masks = family.masks();
        let adj = adjacency(&masks);
        DisjointnessGraph { family, adj }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    pub(crate) fn adjacency(&self) -> &[BitSet] {
        &self.adj
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.adj.iter().enumerate() {
            for j in row.iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Complete multipartite subgraph with the given part sizes, if any.
    /// Parts are reported in query order with indices ascending; the first
    /// witness in lexicographic order of the concatenated index tuple wins.
    pub fn find_complete_multipartite(
        &self,
        sizes: &[usize],
        budget: Option<u64>,
    ) -> Result<Option<ForbiddenWitness>> {
        let allowed = BitSet::full(self.order());
        multipartite_search(&self.adj, &allowed, sizes, None, budget.unwrap_or(u64::MAX))
            .map(|o| o.map(|parts| ForbiddenWitness { parts }))
    }

    /// Some `r` pairwise disjoint members (an `r`-clique), lexicographically first.
    pub fn find_clique(&self, r: usize) -> Option<Vec<usize>> {
        let all = BitSet::full(self.order());
        find_clique_in(&self.adj, &all, r)
    }

    /// Every `r`-clique, each as an ascending index list, in lexicographic order.
    pub fn cliques(&self, r: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(r);
        let all = BitSet::full(self.order());
        enumerate_cliques(&self.adj, &all, r, &mut cur, &mut out);
        out
    }
}

pub(crate) fn adjacency(masks: &[u64]) -> Vec<BitSet> {
    let v = masks.len();
    let mut adj = vec![BitSet::new(v); v];
    for i in 0..v {
        for j in (i + 1)..v {
            if masks[i] & masks[j] == 0 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

/// Vertex-disjoint parts whose cross-part pairs are all edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub parts: Vec<Vec<usize>>,
}

impl ForbiddenWitness {
    /// Re-checks the witness against the sets themselves, not the graph.
    pub fn verify(&self, family: &Family, sizes: &[usize]) -> bool {
        if self.parts.len() != sizes.len() {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for (part, &size) in self.parts.iter().zip(sizes) {
            if part.len() != size {
                return false;
            }
            for &i in part {
                if i >= family.len() || !seen.insert(i) {
                    return false;
                }
            }
        }
        let sets = family.sets();
        for (a, pa) in self.parts.iter().enumerate() {
            for pb in &self.parts[a + 1..] {
                for &i in pa {
                    for &j in pb {
                        if !sets[i].is_disjoint(&sets[j]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn sets(&self, family: &Family) -> Vec<Vec<Vec<u32>>> {
        self.parts
            .iter()
            .map(|p| p.iter().map(|&i| family.sets()[i].elements()).collect())
            .collect()
    }
}

pub fn contains_complete_multipartite(
    g: &DisjointnessGraph,
    sizes: &[usize],
) -> Result<Option<ForbiddenWitness>> {
    g.find_complete_multipartite(sizes, None)
}

/// Members of `f` disjoint from `a`.
pub fn neighborhood(f: &Family, a: &KSet) -> Result<Family> {
    f.check_set(a)?;
    let masks = f
        .iter()
        .filter(|s| s.is_disjoint(a))
        .map(|s| s.mask())
        .collect();
    Ok(Family::from_sorted_unchecked(f.n(), f.k(), masks))
}

/// Number of unordered disjoint pairs in `f`.
pub fn disjoint_pair_count(f: &Family) -> u64 {
    let masks = f.masks();
    let mut count = 0u64;
    for (i, &a) in masks.iter().enumerate() {
        count += masks[i + 1..].iter().filter(|&&b| a & b == 0).count() as u64;
    }
    count
}

fn check_union_params(s: usize, t: usize) -> Result<()> {
    if s < 1 || s > t {
        return Err(Error::BadParameters(format!("need 1 <= s <= t, got s={s}, t={t}")));
    }
    Ok(())
}

/// `None` when `f` is (s,t)-union intersecting, otherwise a `K_{s,t}` witness.
pub fn union_intersecting_violation(
    f: &Family,
    s: usize,
    t: usize,
) -> Result<Option<ForbiddenWitness>> {
    check_union_params(s, t)?;
    build_graph(f).find_complete_multipartite(&[s, t], None)
}

pub fn is_union_intersecting(f: &Family, s: usize, t: usize) -> Result<bool> {
    Ok(union_intersecting_violation(f, s, t)?.is_none())
}

/// Whether `f` has `r` pairwise disjoint members.
pub fn has_r_pairwise_disjoint(f: &Family, r: usize) -> Result<bool> {
    if r < 1 {
        return Err(Error::BadParameters("r must be at least 1".into()));
    }
    if r == 1 {
        return Ok(!f.is_empty());
    }
    Ok(build_graph(f).find_clique(r).is_some())
}

pub(crate) fn find_clique_in(adj: &[BitSet], allowed: &BitSet, r: usize) -> Option<Vec<usize>> {
    fn rec(adj: &[BitSet], cand: &BitSet, r: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == r {
            return true;
        }
        if cand.count() < r - cur.len() {
            return false;
        }
        for v in cand.iter() {
            let mut next = cand.clone();
            next.intersect_with(&adj[v]);
            // only later vertices, so each clique is met once in ascending order
            let mut below = BitSet::new(cand.capacity());
            for u in cand.iter().take_while(|&u| u <= v) {
                below.insert(u);
            }
            next.difference_with(&below);
            cur.push(v);
            if rec(adj, &next, r, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    if r == 0 {
        return Some(Vec::new());
    }
    let mut cur = Vec::with_capacity(r);
    rec(adj, allowed, r, &mut cur).then_some(cur)
}

fn enumerate_cliques(
    adj: &[BitSet],
    cand: &BitSet,
    r: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    if cand.count() < r - cur.len() {
        return;
    }
    let mut rest = cand.clone();
    for v in cand.iter() {
        rest.remove(v);
        let mut next = rest.clone();
        next.intersect_with(&adj[v]);
        cur.push(v);
        enumerate_cliques(adj, &next, r, cur, out);
        cur.pop();
    }
}

struct MultipartiteSearch<'a> {
    adj: &'a [BitSet],
    sizes: &'a [usize],
    parts: Vec<Vec<usize>>,
    floor: Vec<usize>,
    used: BitSet,
    nodes: u64,
    budget: u64,
}

impl MultipartiteSearch<'_> {
    fn feasible(&self, masks: &[BitSet]) -> bool {
        masks.iter().enumerate().all(|(q, m)| {
            let need = self.sizes[q] - self.parts[q].len();
            need == 0 || m.count() - m.intersection_count(&self.used) >= need
        })
    }

    fn rec(&mut self, part: usize, masks: &[BitSet]) -> Result<bool> {
        if part == self.sizes.len() {
            return Ok(true);
        }
        if self.parts[part].len() == self.sizes[part] {
            return self.rec(part + 1, masks);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if !self.feasible(masks) {
            return Ok(false);
        }
        let mut cand = masks[part].clone();
        cand.difference_with(&self.used);
        let floor = self.floor[part];
        let verts: Vec<usize> = cand.iter().filter(|&v| v >= floor).collect();
        for v in verts {
            let next: Vec<BitSet> = masks
                .iter()
                .enumerate()
                .map(|(q, m)| {
                    let mut m = m.clone();
                    if q != part {
                        m.intersect_with(&self.adj[v]);
                    }
                    m
                })
                .collect();
            self.parts[part].push(v);
            self.used.insert(v);
            let saved = self.floor[part];
            self.floor[part] = v + 1;
            let found = self.rec(part, &next)?;
            if found {
                return Ok(true);
            }
            self.floor[part] = saved;
            self.used.remove(v);
            self.parts[part].pop();
        }
        Ok(false)
    }
}

/// Complete multipartite subgraph with part sizes `sizes` inside the
/// vertices `allowed`; with `forced`, only witnesses containing that vertex.
pub(crate) fn multipartite_search(
    adj: &[BitSet],
    allowed: &BitSet,
    sizes: &[usize],
    forced: Option<usize>,
    budget: u64,
) -> Result<Option<Vec<Vec<usize>>>> {
    check_sizes(sizes)?;
    let mut nodes = 0u64;
    let Some(fv) = forced else {
        let masks = vec![allowed.clone(); sizes.len()];
        return search_from(adj, masks, sizes, &[], budget, &mut nodes);
    };
    for p in placements(sizes) {
        let mut masks = vec![allowed.clone(); sizes.len()];
        for (q, m) in masks.iter_mut().enumerate() {
            if q != p {
                m.intersect_with(&adj[fv]);
            }
        }
        let mut preset = vec![Vec::new(); sizes.len()];
        preset[p].push(fv);
        if let Some(parts) = search_from(adj, masks, sizes, &preset, budget, &mut nodes)? {
            return Ok(Some(parts));
        }
    }
    Ok(None)
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::BadParameters("part sizes must be nonempty and positive".into()));
    }
    Ok(())
}

/// One placement per distinct part size is enough for a forced vertex.
fn placements(sizes: &[usize]) -> Vec<usize> {
    (0..sizes.len()).filter(|&p| !sizes[..p].contains(&sizes[p])).collect()
}

fn search_from(
    adj: &[BitSet],
    masks: Vec<BitSet>,
    sizes: &[usize],
    preset: &[Vec<usize>],
    budget: u64,
    nodes: &mut u64,
) -> Result<Option<Vec<Vec<usize>>>> {
    let v = adj.len();
    let mut search = MultipartiteSearch {
        adj,
        sizes,
        parts: vec![Vec::new(); sizes.len()],
        floor: vec![0; sizes.len()],
        used: BitSet::new(v),
        nodes: *nodes,
        budget,
    };
    for (p, pre) in preset.iter().enumerate() {
        for &x in pre {
            search.parts[p].push(x);
            search.used.insert(x);
        }
    }
    let found = search.rec(0, &masks)?;
    *nodes = search.nodes;
    if !found {
        return Ok(None);
    }
    let mut parts = search.parts;
    for p in &mut parts {
        p.sort_unstable();
    }
    Ok(Some(parts))
}

impl DisjointnessGraph {
    /// Whether adding the outside set `x` creates the pattern; the witness
    /// is returned as sets, with `x` among them.
    pub fn extension_witness(&self, x: &KSet, sizes: &[usize]) -> Result<Option<Vec<Vec<KSet>>>> {
        check_sizes(sizes)?;
        self.family.check_set(x)?;
        if self.family.contains(x) {
            return Err(Error::BadParameters(format!("{x} is already a member")));
        }
        let v = self.order();
        let mut nx = BitSet::new(v);
        for (i, s) in self.family.iter().enumerate() {
            if s.is_disjoint(x) {
                nx.insert(i);
            }
        }
        let mut nodes = 0u64;
        for p in placements(sizes) {
            let mut reduced = sizes.to_vec();
            reduced[p] -= 1;
            let masks: Vec<BitSet> = (0..sizes.len())
                .map(|q| if q == p { BitSet::full(v) } else { nx.clone() })
                .collect();
            if let Some(parts) = search_from(&self.adj, masks, &reduced, &[], u64::MAX, &mut nodes)? {
                let mut sets: Vec<Vec<KSet>> = parts
                    .iter()
                    .map(|part| part.iter().map(|&i| self.family.sets()[i]).collect())
                    .collect();
                sets[p].push(*x);
                sets[p].sort();
                return Ok(Some(sets));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfam::all_k_sets;

    fn fam(n: u32, k: u32, sets: &[&[u32]]) -> Family {
        Family::new(n, k, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn all(n: u32, k: u32) -> Family {
        Family::from_masks(n, k, all_k_sets(n, k)).unwrap()
    }

    #[test]
    fn build_graph_examples() {
        let g = build_graph(&fam(4, 2, &[&[1, 2], &[3, 4]]));
        assert_eq!(g.edges(), vec![(0, 1)]);
        let g = build_graph(&fam(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn petersen() {
        let g = build_graph(&all(5, 2));
        assert_eq!(g.order(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|i| g.degree(i) == 3));
        assert_eq!(disjoint_pair_count(&all(5, 2)), 15);
        // triangle-free
        assert!(!has_r_pairwise_disjoint(&all(5, 2), 3).unwrap());
        assert!(g.cliques(3).is_empty());
    }

    #[test]
    fn neighborhood_examples() {
        let f = fam(5, 2, &[&[1, 2], &[3, 4], &[3, 5]]);
        let a = KSet::new(5, &[1, 2]).unwrap();
        assert_eq!(neighborhood(&f, &a).unwrap(), fam(5, 2, &[&[3, 4], &[3, 5]]));
        let f = fam(4, 2, &[&[1, 2], &[3, 4]]);
        let a = KSet::new(4, &[1, 3]).unwrap();
        assert!(neighborhood(&f, &a).unwrap().is_empty());
        let a = KSet::new(4, &[1, 2]).unwrap();
        assert_eq!(neighborhood(&all(4, 2), &a).unwrap(), fam(4, 2, &[&[3, 4]]));
        let wrong = KSet::new(6, &[1, 2]).unwrap();
        assert!(matches!(neighborhood(&all(4, 2), &wrong), Err(Error::ParameterMismatch(_))));
    }

    #[test]
    fn disjoint_pairs() {
        assert_eq!(disjoint_pair_count(&fam(3, 2, &[&[1, 2], &[1, 3], &[2, 3]])), 0);
        assert_eq!(disjoint_pair_count(&fam(6, 2, &[&[1, 2], &[3, 4], &[5, 6]])), 3);
    }

    #[test]
    fn multipartite_examples() {
        let f = fam(4, 2, &[&[1, 2], &[3, 4]]);
        let g = build_graph(&f);
        let w = contains_complete_multipartite(&g, &[1, 1]).unwrap().unwrap();
        assert_eq!(w.parts, vec![vec![0], vec![1]]);
        assert!(w.verify(&f, &[1, 1]));
        assert!(contains_complete_multipartite(&g, &[1, 2]).unwrap().is_none());

        // 2-sets of [4] inside [6]: a perfect matching
        let f = Family::filtered(6, 2, |m| m & 0b110000 == 0).unwrap();
        assert_eq!(f.len(), 6);
        let g = build_graph(&f);
        assert!(contains_complete_multipartite(&g, &[1, 2]).unwrap().is_none());

        let f = all(6, 2);
        let g = build_graph(&f);
        let w = contains_complete_multipartite(&g, &[2, 2, 2]).unwrap();
        // each part covers at least 3 elements and parts have disjoint unions
        assert!(w.is_none());
        assert!(!brute_force_multipartite(&f, &[2, 2, 2]));
        let w = contains_complete_multipartite(&g, &[1, 1, 1]).unwrap().unwrap();
        assert_eq!(w.sets(&f), vec![vec![vec![1, 2]], vec![vec![3, 4]], vec![vec![5, 6]]]);
    }

    #[test]
    fn multipartite_budget_is_explicit() {
        let g = build_graph(&all(8, 2));
        assert_eq!(
            g.find_complete_multipartite(&[3, 3], Some(1)),
            Err(Error::BudgetExceeded(1))
        );
    }

    #[test]
    fn bad_part_sizes() {
        let g = build_graph(&all(4, 2));
        assert!(g.find_complete_multipartite(&[], None).is_err());
        assert!(g.find_complete_multipartite(&[1, 0], None).is_err());
    }

    #[test]
    fn union_intersecting_examples() {
        let tri = fam(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(is_union_intersecting(&tri, 1, 1).unwrap());
        let f = fam(4, 2, &[&[1, 2], &[3, 4]]);
        let w = union_intersecting_violation(&f, 1, 1).unwrap().unwrap();
        assert!(w.verify(&f, &[1, 1]));
        assert!(matches!(is_union_intersecting(&f, 2, 1), Err(Error::BadParameters(_))));
        assert!(matches!(is_union_intersecting(&f, 0, 1), Err(Error::BadParameters(_))));

        // St_1 on (8,3) plus {2,3,4}
        let mut masks: Vec<u64> = all_k_sets(8, 3).into_iter().filter(|m| m & 1 != 0).collect();
        masks.push(0b1110);
        let f = Family::from_masks(8, 3, masks).unwrap();
        assert!(is_union_intersecting(&f, 2, 2).unwrap());
        assert_eq!(
            is_union_intersecting(&f, 2, 2).unwrap(),
            !brute_force_multipartite(&f, &[2, 2])
        );
    }

    #[test]
    fn r_pairwise_disjoint() {
        assert!(has_r_pairwise_disjoint(&fam(6, 2, &[&[1, 2], &[3, 4], &[5, 6]]), 3).unwrap());
        assert!(!has_r_pairwise_disjoint(&fam(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]), 2).unwrap());
        assert!(has_r_pairwise_disjoint(&fam(3, 2, &[&[1, 2]]), 1).unwrap());
        assert!(!has_r_pairwise_disjoint(&Family::empty(3, 2).unwrap(), 1).unwrap());
    }

    /// Exhaustive oracle over ordered index tuples.
    fn brute_force_multipartite(f: &Family, sizes: &[usize]) -> bool {
        fn rec(f: &Family, sizes: &[usize], part: usize, chosen: &mut Vec<(usize, usize)>) -> bool {
            let total: usize = sizes.iter().sum();
            if chosen.len() == total {
                return true;
            }
            let filled = chosen.iter().filter(|c| c.1 == part).count();
            if filled == sizes[part] {
                return rec(f, sizes, part + 1, chosen);
            }
            for v in 0..f.len() {
                if chosen.iter().any(|c| c.0 == v) {
                    continue;
                }
                if let Some(last) = chosen.iter().filter(|c| c.1 == part).map(|c| c.0).max() {
                    if v < last {
                        continue;
                    }
                }
                let ok = chosen
                    .iter()
                    .filter(|c| c.1 != part)
                    .all(|c| f.sets()[c.0].is_disjoint(&f.sets()[v]));
                if ok {
                    chosen.push((v, part));
                    if rec(f, sizes, part, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        rec(f, sizes, 0, &mut Vec::new())
    }
}
