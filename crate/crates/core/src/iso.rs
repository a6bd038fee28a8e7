//! Isomorphism of k-set families under relabelling of the ground set.
//!
//! Two independent routes live here: a direct backtracking search for a
//! witnessing permutation ([`is_isomorphic`]), and a canonical certificate
//! computed by individualization/refinement ([`canonical_form`]). Tests
//! cross-check one against the other.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::Result;
use crate::setfam::{lex_cmp, Family, Permutation};

/// Byte certificate identifying the isomorphism class of a family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    certificate: Vec<u8>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.certificate
    }

    pub fn to_hex(&self) -> String {
        self.certificate.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn element_incidence(f: &Family) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); f.n() as usize];
    for (i, s) in f.iter().enumerate() {
        let mut m = s.mask();
        while m != 0 {
            inc[m.trailing_zeros() as usize].push(i);
            m &= m - 1;
        }
    }
    inc
}

fn codegrees(f: &Family) -> Vec<Vec<u32>> {
    let n = f.n() as usize;
    let mut c = vec![vec![0u32; n]; n];
    for s in f.iter() {
        let els: Vec<usize> = crate::setfam::mask_elements(s.mask())
            .into_iter()
            .map(|e| e as usize - 1)
            .collect();
        for &a in &els {
            for &b in &els {
                c[a][b] += 1;
            }
        }
    }
    c
}

fn intersection_profiles(f: &Family) -> Vec<Vec<u32>> {
    let masks = f.masks();
    masks
        .iter()
        .map(|&a| {
            let mut prof = vec![0u32; f.k() as usize + 1];
            for &b in &masks {
                prof[(a & b).count_ones() as usize] += 1;
            }
            prof
        })
        .collect()
}

/// Per-element invariants for both families, keyed by a shared dictionary so
/// equal signatures get equal ids across the two families.
fn element_signatures(f: &Family, g: &Family) -> (Vec<usize>, Vec<usize>) {
    let mut dict: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut per_family = |fam: &Family| -> Vec<Vec<u32>> {
        let prof = intersection_profiles(fam);
        let inc = element_incidence(fam);
        let cod = codegrees(fam);
        let prof_ids: Vec<u32> = prof
            .into_iter()
            .map(|p| {
                let next = dict.len();
                *dict.entry(p).or_insert(next) as u32
            })
            .collect();
        (0..fam.n() as usize)
            .map(|e| {
                let mut sig = vec![inc[e].len() as u32, u32::MAX];
                let mut ids: Vec<u32> = inc[e].iter().map(|&s| prof_ids[s]).collect();
                ids.sort_unstable();
                sig.extend(ids);
                sig.push(u32::MAX);
                let mut row = cod[e].clone();
                row.sort_unstable();
                sig.extend(row);
                sig
            })
            .collect()
    };
    let sf = per_family(f);
    let sg = per_family(g);
    let mut sig_ids: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut intern = |s: Vec<u32>| {
        let next = sig_ids.len();
        *sig_ids.entry(s).or_insert(next)
    };
    let a = sf.into_iter().map(&mut intern).collect();
    let b = sg.into_iter().map(&mut intern).collect();
    (a, b)
}

/// Searches for a permutation of `[n]` mapping `f` onto `g`.
///
/// Candidates are pruned by element signatures (degree, intersection-size
/// profiles of incident sets, codegree row) and by pairwise codegree
/// consistency; every complete assignment is verified against `g` directly.
pub fn is_isomorphic(f: &Family, g: &Family) -> Result<Option<Permutation>> {
    f.check_compatible(g)?;
    if f.len() != g.len() {
        return Ok(None);
    }
    let n = f.n() as usize;
    let (sig_f, sig_g) = element_signatures(f, g);
    let mut class_f = sig_f.clone();
    let mut class_g = sig_g.clone();
    class_f.sort_unstable();
    class_g.sort_unstable();
    if class_f != class_g {
        return Ok(None);
    }
    let cod_f = codegrees(f);
    let cod_g = codegrees(g);
    let target: Vec<u64> = g.masks();

    let mut candidates: Vec<Vec<usize>> = (0..n)
        .map(|e| (0..n).filter(|&x| sig_g[x] == sig_f[e]).collect())
        .collect();
    for c in &mut candidates {
        c.sort_unstable();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| (candidates[e].len(), std::cmp::Reverse(cod_f[e][e]), e));

    struct Ctx<'a> {
        order: Vec<usize>,
        candidates: Vec<Vec<usize>>,
        cod_f: Vec<Vec<u32>>,
        cod_g: Vec<Vec<u32>>,
        image: Vec<usize>,
        used: Vec<bool>,
        f: &'a Family,
        target: Vec<u64>,
    }

    fn verify(ctx: &Ctx) -> bool {
        let perm = Permutation::from_zero_based(&ctx.image);
        let mut mapped: Vec<u64> = ctx.f.iter().map(|s| perm.apply_mask(s.mask())).collect();
        mapped.sort_by(|a, b| lex_cmp(*a, *b));
        mapped == ctx.target
    }

    fn dfs(ctx: &mut Ctx, depth: usize) -> bool {
        if depth == ctx.order.len() {
            return verify(ctx);
        }
        let e = ctx.order[depth];
        for ci in 0..ctx.candidates[e].len() {
            let x = ctx.candidates[e][ci];
            if ctx.used[x] {
                continue;
            }
            let consistent = ctx.order[..depth].iter().all(|&p| {
                ctx.cod_f[e][p] == ctx.cod_g[x][ctx.image[p]]
            });
            if !consistent {
                continue;
            }
            ctx.image[e] = x;
            ctx.used[x] = true;
            if dfs(ctx, depth + 1) {
                return true;
            }
            ctx.used[x] = false;
        }
        false
    }

    let mut ctx = Ctx {
        order,
        candidates,
        cod_f,
        cod_g,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        f,
        target,
    };
    if dfs(&mut ctx, 0) {
        Ok(Some(Permutation::from_zero_based(&ctx.image)))
    } else {
        Ok(None)
    }
}

/// Ordered partition of the ground set, stored as one colour per element;
/// colours are dense ranks `0..cells`.
#[derive(Clone)]
struct Coloring {
    colors: Vec<u32>,
    cells: usize,
}

struct Refiner<'a> {
    masks: Vec<u64>,
    incidence: Vec<Vec<usize>>,
    twin: Vec<usize>,
    n: usize,
    _family: &'a Family,
}

fn rank<T: Ord + Clone>(keys: &[T]) -> (Vec<u32>, usize) {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let ranks = keys
        .iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect();
    (ranks, sorted.len())
}

impl<'a> Refiner<'a> {
    fn new(f: &'a Family) -> Self {
        let incidence = element_incidence(f);
        let (twin, _) = rank(&incidence);
        Refiner {
            masks: f.masks(),
            incidence,
            twin: twin.into_iter().map(|t| t as usize).collect(),
            n: f.n() as usize,
            _family: f,
        }
    }

    fn refine(&self, mut c: Coloring) -> Coloring {
        loop {
            let set_sigs: Vec<Vec<u32>> = self
                .masks
                .iter()
                .map(|&m| {
                    let mut v: Vec<u32> = Vec::with_capacity(m.count_ones() as usize);
                    let mut mm = m;
                    while mm != 0 {
                        v.push(c.colors[mm.trailing_zeros() as usize]);
                        mm &= mm - 1;
                    }
                    v.sort_unstable();
                    v
                })
                .collect();
            let (set_colors, _) = rank(&set_sigs);
            let elem_sigs: Vec<(u32, Vec<u32>)> = (0..self.n)
                .map(|e| {
                    let mut v: Vec<u32> =
                        self.incidence[e].iter().map(|&s| set_colors[s]).collect();
                    v.sort_unstable();
                    (c.colors[e], v)
                })
                .collect();
            let (colors, cells) = rank(&elem_sigs);
            let stable = cells == c.cells;
            c = Coloring { colors, cells };
            if stable {
                return c;
            }
        }
    }

    fn individualize(&self, c: &Coloring, v: usize) -> Coloring {
        let keys: Vec<u32> = (0..self.n)
            .map(|e| 2 * c.colors[e] + u32::from(e != v))
            .collect();
        let (colors, cells) = rank(&keys);
        Coloring { colors, cells }
    }

    fn relabel(&self, labels: &[u32]) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .masks
            .iter()
            .map(|&m| {
                let mut r = 0u64;
                let mut mm = m;
                while mm != 0 {
                    r |= 1u64 << labels[mm.trailing_zeros() as usize];
                    mm &= mm - 1;
                }
                r
            })
            .collect();
        out.sort_by(|a, b| lex_cmp(*a, *b));
        out
    }
}

fn cmp_cert(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match lex_cmp(*x, *y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

struct CanonSearch<'r, 'a> {
    refiner: &'r Refiner<'a>,
    first: Option<(Vec<u64>, Vec<u32>)>,
    best: Option<(Vec<u64>, Vec<u32>)>,
    automorphisms: Vec<Vec<u32>>,
}

impl CanonSearch<'_, '_> {
    fn automorphism(from: &[u32], to: &[u32]) -> Vec<u32> {
        // g = from^{-1} ∘ to, as a map on elements
        let mut inv = vec![0u32; from.len()];
        for (e, &l) in from.iter().enumerate() {
            inv[l as usize] = e as u32;
        }
        to.iter().map(|&l| inv[l as usize]).collect()
    }

    fn leaf(&mut self, labels: Vec<u32>) {
        let cert = self.refiner.relabel(&labels);
        match &self.first {
            None => {
                self.first = Some((cert.clone(), labels.clone()));
                self.best = Some((cert, labels));
            }
            Some((fc, fl)) => {
                if *fc == cert {
                    let g = Self::automorphism(fl, &labels);
                    self.automorphisms.push(g);
                    return;
                }
                let (bc, bl) = self.best.as_ref().expect("best set with first");
                match cmp_cert(&cert, bc) {
                    Ordering::Equal => {
                        let g = Self::automorphism(bl, &labels);
                        self.automorphisms.push(g);
                    }
                    Ordering::Less => self.best = Some((cert, labels)),
                    Ordering::Greater => {}
                }
            }
        }
    }

    fn same_orbit(&self, prefix: &[usize], a: usize, b: usize) -> bool {
        let n = self.refiner.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.automorphisms {
            if prefix.iter().any(|&p| g[p] as usize != p) {
                continue;
            }
            for (e, &ge) in g.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, e), find(&mut parent, ge as usize));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        find(&mut parent, a) == find(&mut parent, b)
    }

    fn search(&mut self, c: Coloring, prefix: &mut Vec<usize>) {
        let c = self.refiner.refine(c);
        if c.cells == self.refiner.n {
            self.leaf(c.colors);
            return;
        }
        let mut sizes = vec![0usize; c.cells];
        for &col in &c.colors {
            sizes[col as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete") as u32;
        let cell: Vec<usize> = (0..self.refiner.n).filter(|&e| c.colors[e] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if explored.iter().any(|&u| self.refiner.twin[u] == self.refiner.twin[v]) {
                continue;
            }
            if explored.iter().any(|&u| self.same_orbit(prefix, u, v)) {
                continue;
            }
            let child = self.refiner.individualize(&c, v);
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }
}

/// Canonical labelling: the lexicographically least relabelled set sequence
/// over the leaves of a refinement search tree, with the labelling that
/// produced it (`labels[e - 1]` is the new 0-based label of element `e`).
fn canonical_labeling(f: &Family) -> (Vec<u64>, Vec<u32>) {
    let refiner = Refiner::new(f);
    let mut search = CanonSearch {
        refiner: &refiner,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let start = Coloring {
        colors: vec![0; refiner.n],
        cells: 1,
    };
    search.search(start, &mut Vec::new());
    search.best.expect("search reaches a leaf")
}

/// Certificate that is equal for two families exactly when they are isomorphic.
pub fn canonical_form(f: &Family) -> CanonicalForm {
    let (cert, _) = canonical_labeling(f);
    let mut bytes = Vec::with_capacity(8 + 8 * cert.len());
    bytes.push(f.n() as u8);
    bytes.push(f.k() as u8);
    bytes.extend_from_slice(&(cert.len() as u32).to_le_bytes());
    for m in cert {
        bytes.extend_from_slice(&m.to_le_bytes());
    }
    CanonicalForm { certificate: bytes }
}

/// The canonical representative of the isomorphism class of `f`.
pub fn canonical_family(f: &Family) -> Family {
    let (cert, _) = canonical_labeling(f);
    Family::from_sorted_unchecked(f.n(), f.k(), cert)
}
