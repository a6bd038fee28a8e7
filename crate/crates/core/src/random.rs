//! Seeded random families.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::binomial_u128;
use crate::error::{Error, Result};
use crate::kneser::{build_graph, contains_complete_multipartite};
use crate::search::ConstraintSpec;
use crate::setfam::{all_k_sets, elements_mask, Family};

/// `size` distinct k-sets of `[n]` drawn uniformly with a ChaCha8 stream
/// seeded by `seed`.
///
/// With `repair`, sets listed in `must_avoid` are dropped and then, while the
/// forbidden pattern is present, the witness member of largest degree in the
/// disjointness graph is removed (ties to the lex-first set). The result is
/// no longer uniform and may be smaller than `size`.
pub fn random_family(n: u32, k: u32, size: usize, seed: u64, repair: Option<&ConstraintSpec>) -> Result<Family> {
    let total = binomial_u128(n as i64, k as i64);
    if n > 64 || k > n || total > 1 << 22 {
        return Err(Error::BadParameters(format!("cannot sample k-sets for n={n}, k={k}")));
    }
    if size as u128 > total {
        return Err(Error::BadParameters(format!("size {size} exceeds C({n},{k}) = {total}")));
    }
    let all = all_k_sets(n, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut masks: Vec<u64> = sample(&mut rng, all.len(), size).into_iter().map(|i| all[i]).collect();
    let Some(spec) = repair else {
        return Family::from_masks(n, k, masks);
    };
    if spec.ell_min.is_some() || !spec.must_contain.is_empty() {
        return Err(Error::BadParameters("repair handles only a pattern and avoided sets".into()));
    }
    spec.validate(n, k)?;
    let avoid: Vec<u64> = spec.must_avoid.iter().map(|s| elements_mask(s)).collect();
    masks.retain(|m| !avoid.contains(m));
    let mut f = Family::from_masks(n, k, masks)?;
    let Some(p) = &spec.pattern else { return Ok(f) };
    loop {
        let g = build_graph(&f);
        let Some(w) = contains_complete_multipartite(&g, p)? else { return Ok(f) };
        let victim = w
            .parts
            .iter()
            .flatten()
            .copied()
            .max_by(|&a, &b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)))
            .unwrap();
        f = f.without_indices(&[victim]);
    }
}
