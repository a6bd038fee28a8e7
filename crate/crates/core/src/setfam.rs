//! k-sets over `[n]`, families of k-sets, and relabelling of the ground set.
//!
//! Elements are 1-indexed at every public boundary; internally element `e`
//! occupies bit `e - 1` of a `u64` mask, which caps the ground set at 64.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUND: u32 = 64;

#[inline]
pub(crate) fn bit(element: u32) -> u64 {
    1u64 << (element - 1)
}

/// Mask with bits for the elements `lo..=hi` (1-indexed, empty if `lo > hi`).
pub fn interval_mask(lo: u32, hi: u32) -> u64 {
    (lo..=hi).fold(0, |m, e| m | bit(e))
}

/// Mask of `[n]`.
#[inline]
pub fn ground_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_elements(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() + 1);
        m &= m - 1;
    }
    out
}

pub fn elements_mask(elements: &[u32]) -> u64 {
    elements.iter().fold(0, |m, &e| m | bit(e))
}

/// Lexicographic order of the sorted element lists of two equal-size sets.
#[inline]
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = a ^ b;
    let low = d & d.wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// All k-subsets of `[n]` as masks, in lexicographic order.
pub fn all_k_sets(n: u32, k: u32) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let k = k as usize;
    let mut idx: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(elements_mask(&idx));
        // advance to the next combination in lex order
        let mut i = k;
        while i > 0 && idx[i - 1] == n - (k - i) as u32 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// A k-element subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    n: u32,
    mask: u64,
}

impl KSet {
    pub fn new(n: u32, elements: &[u32]) -> Result<Self> {
        check_ground(n)?;
        let mut mask = 0u64;
        for &e in elements {
            if e < 1 || e > n {
                return Err(Error::ElementOutOfRange { element: e as i64, n });
            }
            mask |= bit(e);
        }
        Ok(KSet { n, mask })
    }

    pub fn from_mask(n: u32, mask: u64) -> Result<Self> {
        check_ground(n)?;
        if mask & !ground_mask(n) != 0 {
            let bad = mask_elements(mask & !ground_mask(n))[0];
            return Err(Error::ElementOutOfRange { element: bad as i64, n });
        }
        Ok(KSet { n, mask })
    }

    #[inline]
    pub(crate) fn from_mask_unchecked(n: u32, mask: u64) -> Self {
        KSet { n, mask }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn elements(&self) -> Vec<u32> {
        mask_elements(self.mask)
    }

    #[inline]
    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.n && self.mask & bit(element) != 0
    }

    #[inline]
    pub fn is_disjoint(&self, other: &KSet) -> bool {
        self.mask & other.mask == 0
    }
}

impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| lex_cmp(self.mask, other.mask))
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.elements())
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn check_ground(n: u32) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::BadParameters(format!(
            "ground set size {n} must lie in [1, {MAX_GROUND}]"
        )));
    }
    Ok(())
}

/// A duplicate-free family of k-subsets of `[n]`, stored in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FamilyRecord", try_from = "FamilyRecord")]
pub struct Family {
    n: u32,
    k: u32,
    sets: Vec<KSet>,
}

impl Family {
    /// Builds a family from 1-indexed element lists.
    pub fn new(n: u32, k: u32, sets: &[Vec<u32>]) -> Result<Self> {
        check_params(n, k)?;
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            if s.len() != k as usize {
                return Err(Error::WrongSetSize { expected: k, found: s.len() });
            }
            let ks = KSet::new(n, s)?;
            masks.push(ks.mask);
        }
        Self::from_masks(n, k, masks)
    }

    pub fn from_masks(n: u32, k: u32, mut masks: Vec<u64>) -> Result<Self> {
        check_params(n, k)?;
        for &m in &masks {
            if m & !ground_mask(n) != 0 {
                let bad = mask_elements(m & !ground_mask(n))[0];
                return Err(Error::ElementOutOfRange { element: bad as i64, n });
            }
            if m.count_ones() != k {
                return Err(Error::WrongSetSize { expected: k, found: m.count_ones() as usize });
            }
        }
        masks.sort_by(|a, b| lex_cmp(*a, *b));
        if let Some(w) = masks.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet(mask_elements(w[0])));
        }
        Ok(Self::from_sorted_unchecked(n, k, masks))
    }

    /// Sorts and deduplicates; callers guarantee sizes and range.
    pub(crate) fn from_masks_dedup(n: u32, k: u32, mut masks: Vec<u64>) -> Self {
        masks.sort_by(|a, b| lex_cmp(*a, *b));
        masks.dedup();
        Self::from_sorted_unchecked(n, k, masks)
    }

    pub(crate) fn from_sorted_unchecked(n: u32, k: u32, masks: Vec<u64>) -> Self {
        debug_assert!(masks.windows(2).all(|w| lex_cmp(w[0], w[1]) == Ordering::Less));
        Family {
            n,
            k,
            sets: masks.into_iter().map(|m| KSet::from_mask_unchecked(n, m)).collect(),
        }
    }

    pub fn empty(n: u32, k: u32) -> Result<Self> {
        check_params(n, k)?;
        Ok(Family { n, k, sets: Vec::new() })
    }

    /// All k-subsets of `[n]` satisfying `keep`.
    pub fn filtered(n: u32, k: u32, keep: impl Fn(u64) -> bool) -> Result<Self> {
        check_params(n, k)?;
        let masks = all_k_sets(n, k).into_iter().filter(|&m| keep(m)).collect();
        Ok(Self::from_sorted_unchecked(n, k, masks))
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[KSet] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = &KSet> {
        self.sets.iter()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.sets.iter().map(|s| s.mask).collect()
    }

    pub fn get(&self, i: usize) -> Option<&KSet> {
        self.sets.get(i)
    }

    pub fn position(&self, mask: u64) -> Option<usize> {
        self.sets.binary_search_by(|s| lex_cmp(s.mask, mask)).ok()
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.position(mask).is_some()
    }

    pub fn contains(&self, set: &KSet) -> bool {
        set.n == self.n && self.contains_mask(set.mask)
    }

    pub fn element_lists(&self) -> Vec<Vec<u32>> {
        self.sets.iter().map(|s| s.elements()).collect()
    }

    pub(crate) fn check_compatible(&self, other: &Family) -> Result<()> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::ParameterMismatch(format!(
                "(n,k) = ({},{}) vs ({},{})",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    pub fn check_set(&self, set: &KSet) -> Result<()> {
        if set.n != self.n || set.len() != self.k {
            return Err(Error::ParameterMismatch(format!(
                "set {set} does not belong to ({},{})",
                self.n, self.k
            )));
        }
        Ok(())
    }

    /// Union of two families with the same `(n, k)`.
    pub fn union(&self, other: &Family) -> Result<Family> {
        self.check_compatible(other)?;
        let mut masks = self.masks();
        masks.extend(other.sets.iter().map(|s| s.mask));
        Ok(Self::from_masks_dedup(self.n, self.k, masks))
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &Family) -> Family {
        let masks = self
            .sets
            .iter()
            .filter(|s| !other.contains_mask(s.mask))
            .map(|s| s.mask)
            .collect();
        Self::from_sorted_unchecked(self.n, self.k, masks)
    }

    /// Copy with one more set; errors if the set is already present.
    pub fn with_set(&self, set: &KSet) -> Result<Family> {
        self.check_set(set)?;
        let mut masks = self.masks();
        masks.push(set.mask);
        Self::from_masks(self.n, self.k, masks)
    }

    /// Members whose index is not in `removed`.
    pub fn without_indices(&self, removed: &[usize]) -> Family {
        let masks = self
            .sets
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, s)| s.mask)
            .collect();
        Self::from_sorted_unchecked(self.n, self.k, masks)
    }

    pub fn subfamily(&self, indices: &[usize]) -> Family {
        let masks = indices.iter().map(|&i| self.sets[i].mask).collect();
        Self::from_masks_dedup(self.n, self.k, masks)
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.n == other.n && self.k == other.k && self.sets.iter().all(|s| other.contains_mask(s.mask))
    }

    /// Image of the family under a permutation of `[n]`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<Family> {
        if sigma.n() != self.n {
            return Err(Error::NotAPermutation(self.n));
        }
        let masks = self.sets.iter().map(|s| sigma.apply_mask(s.mask)).collect();
        Ok(Self::from_masks_dedup(self.n, self.k, masks))
    }

    pub fn to_record(&self) -> FamilyRecord {
        FamilyRecord {
            n: self.n,
            k: self.k,
            sets: self.element_lists(),
        }
    }

    pub fn from_record(rec: &FamilyRecord) -> Result<Family> {
        Family::new(rec.n, rec.k, &rec.sets)
    }

    /// One JSONL line (no trailing newline).
    pub fn to_jsonl(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("family record serializes")
    }

    pub fn from_jsonl(line: &str) -> Result<Family> {
        let rec: FamilyRecord = serde_json::from_str(line)
            .map_err(|e| Error::BadParameters(format!("invalid family record: {e}")))?;
        Family::from_record(&rec)
    }
}

fn check_params(n: u32, k: u32) -> Result<()> {
    check_ground(n)?;
    if k < 1 || k > n {
        return Err(Error::BadParameters(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, k={}, ", self.n, self.k)?;
        f.debug_list().entries(self.sets.iter()).finish()?;
        write!(f, ")")
    }
}

impl From<Family> for FamilyRecord {
    fn from(f: Family) -> Self {
        f.to_record()
    }
}

impl TryFrom<FamilyRecord> for Family {
    type Error = Error;

    fn try_from(rec: FamilyRecord) -> Result<Self> {
        Family::from_record(&rec)
    }
}

/// Interchange record: `{"n": .., "k": .., "sets": [[..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub n: u32,
    pub k: u32,
    pub sets: Vec<Vec<u32>>,
}

/// A bijection of `[n]`; `images[i - 1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x < 1 || x > n || seen[(x - 1) as usize] {
                return Err(Error::NotAPermutation(n));
            }
            seen[(x - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: u32) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Builds the permutation from 0-indexed images.
    pub(crate) fn from_zero_based(images: &[usize]) -> Self {
        Permutation {
            images: images.iter().map(|&x| x as u32 + 1).collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, element: u32) -> u32 {
        self.images[(element - 1) as usize]
    }

    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let e = m.trailing_zeros();
            out |= 1u64 << (self.images[e as usize] - 1);
            m &= m - 1;
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[(x - 1) as usize] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&x| self.image(x)).collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}
