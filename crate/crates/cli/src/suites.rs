//! Verification suites. Each returns check records plus the families worth
//! keeping (extremal examples and counterexamples).

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use unionfam::bounds::{binomial, binomial_u128, evaluate_bound, n_i, BoundParams, BoundQuery, TheoremId, Verdict};
use unionfam::constructions::{hm_family, hm_prime, hmnew3_extremal, j_1t_family, j_family};
use unionfam::kneser::{build_graph, disjoint_pair_count, is_union_intersecting};
use unionfam::random::random_family;
use unionfam::search::{branch_and_bound_max, enumerate_maximal, lemma22_sweep, oracle_max_family, AnchorCase, ConstraintSpec};
use unionfam::setfam::all_k_sets;
use unionfam::structure::{ell, is_intersecting, max_set_pair_system, peel as peel_family, verify_set_pair_system};
use unionfam::{canonical_form, is_isomorphic, Error, Family, KSet, Permutation, Result};

use crate::report::{LabelledFamily, Record};

#[derive(Clone, Debug, Default)]
pub struct SuiteOutput {
    pub records: Vec<Record>,
    pub families: Vec<LabelledFamily>,
}

impl SuiteOutput {
    pub fn merge(mut self, other: SuiteOutput) -> Self {
        self.records.extend(other.records);
        self.families.extend(other.families);
        self
    }

    fn record(&mut self, r: Record) {
        self.records.push(r);
    }

    fn keep(&mut self, label: String, f: &Family) {
        self.families.push(LabelledFamily { label, family: f.to_record() });
    }
}

fn bound(id: TheoremId, params: BoundParams) -> Result<BigInt> {
    Ok(evaluate_bound(&BoundQuery::new(id, params))?.value().clone())
}

fn nk(n: u32, k: u32) -> BoundParams {
    BoundParams { n: Some(n as i64), k: Some(k as i64), ..Default::default() }
}

fn error_record(check: &str, anchor: &str, params: &[(&str, i64)], expected: impl ToString, e: &Error) -> Record {
    Record::new(check, anchor, params, expected, format!("error: {e}"), Verdict::Fail)
}

fn violations(count: usize, of: usize, what: &str) -> (String, String, Verdict) {
    ("0 violations".into(), format!("{count} violations in {of} {what}"), Verdict::from_bool(count == 0))
}

const A_J: &str = "size of the J_i construction";
const A_J1T: &str = "J_i^{1,t} adds i(t-1) star sets to J_i";
const A_HM: &str = "Hilton-Milner family size";
const A_HM_ISO: &str = "J_1 is the Hilton-Milner family";
const A_HM_PRIME: &str = "HM and HM' sizes";
const A_DEGEN: &str = "restricted-star bound at s=t=1, beta=0 is the Hilton-Milner bound";
const A_EXTREMAL: &str = "extremal family meets the bound, is maximal and has the stated removal number";
const A_INFEASIBLE: &str = "no extremal family for k=3, s=3, beta=5";

/// Size identities on the grid, the Hilton-Milner comparisons, the
/// degenerate bound, the extremal families and the nonexistence example.
pub fn constructions() -> SuiteOutput {
    let parts = [
        construction_grid(10..=14, &[3, 4, 5], &[1, 2, 3]),
        hm_degeneration(10..=20, &[3, 4, 5]),
        infeasibility(),
    ];
    let extremal: Vec<SuiteOutput> = EXTREMAL_CASES.par_iter().map(|c| extremal(*c)).collect();
    parts.into_iter().chain(extremal).fold(SuiteOutput::default(), SuiteOutput::merge)
}

pub fn construction_grid(ns: RangeInclusive<u32>, ks: &[u32], ts: &[u32]) -> SuiteOutput {
    let cells: Vec<(u32, u32)> = ns.flat_map(|n| ks.iter().map(move |&k| (n, k))).collect();
    cells
        .par_iter()
        .map(|&(n, k)| grid_cell(n, k, ts))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(SuiteOutput::default(), SuiteOutput::merge)
}

fn grid_cell(n: u32, k: u32, ts: &[u32]) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let (ni, ki) = (n as i64, k as i64);
    for i in 0..k {
        let p = [("n", ni), ("k", ki), ("i", i as i64)];
        let expected = match bound(TheoremId::JISize, BoundParams { i: Some(i as i64), ..nk(n, k) }) {
            Ok(v) => v,
            Err(e) => {
                out.record(error_record("j-size", A_J, &p, "-", &e));
                continue;
            }
        };
        let j = match j_family(n, k, i, None) {
            Ok(f) => f,
            Err(e) => {
                out.record(error_record("j-size", A_J, &p, &expected, &e));
                continue;
            }
        };
        out.record(Record::compare("j-size", A_J, &p, &expected, j.len()));
        for &t in ts {
            let p = [("n", ni), ("k", ki), ("i", i as i64), ("t", t as i64)];
            let want = j.len() + (i * (t - 1)) as usize;
            out.record(match j_1t_family(n, k, i, t, None) {
                Ok(f) => Record::compare("j1t-size", A_J1T, &p, want, f.len()),
                Err(Error::Infeasible(why)) => Record::skipped("j1t-size", A_J1T, &p, want, why),
                Err(e) => error_record("j1t-size", A_J1T, &p, want, &e),
            });
        }
    }
    let p = [("n", ni), ("k", ki)];
    let hm_expected = bound(TheoremId::HmSize, nk(n, k));
    let b = KSet::new(n, &(2..=k + 1).collect::<Vec<_>>());
    let hm = b.and_then(|b| hm_family(n, k, &b));
    match (hm_expected, hm) {
        (Ok(e), Ok(hm)) => {
            out.record(Record::compare("hm-size", A_HM, &p, &e, hm.len()));
            match j_family(n, k, 1, None).and_then(|j1| is_isomorphic(&j1, &hm)) {
                Ok(w) => out.record(Record::compare("hm-j1-isomorphic", A_HM_ISO, &p, true, w.is_some())),
                Err(e) => out.record(error_record("hm-j1-isomorphic", A_HM_ISO, &p, true, &e)),
            }
            match hm_prime(n, k) {
                Ok(hp) if k == 3 => out.record(Record::compare("hm-prime", A_HM_PRIME, &p, hm.len(), hp.len()).with_text("relation", "equal")),
                Ok(hp) if k == 4 && n > 8 => out.record(
                    Record::new(
                        "hm-prime",
                        A_HM_PRIME,
                        &p,
                        format!("> {}", hp.len()),
                        hm.len(),
                        Verdict::from_bool(hm.len() > hp.len()),
                    )
                    .with_text("relation", "larger"),
                ),
                Ok(_) => {}
                Err(e) => out.record(error_record("hm-prime", A_HM_PRIME, &p, "-", &e)),
            }
        }
        (Err(e), _) | (_, Err(e)) => out.record(error_record("hm-size", A_HM, &p, "-", &e)),
    }
    out
}

pub fn hm_degeneration(ns: RangeInclusive<u32>, ks: &[u32]) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    for n in ns {
        for &k in ks {
            let p = [("n", n as i64), ("k", k as i64)];
            let q = BoundParams { s: Some(1), t: Some(1), beta: Some(0), ..nk(n, k) };
            out.record(match (bound(TheoremId::HmSize, nk(n, k)), bound(TheoremId::Thm1_9, q)) {
                (Ok(e), Ok(a)) => Record::compare("hm-degeneration", A_DEGEN, &p, e, a),
                (Err(e), _) | (_, Err(e)) => error_record("hm-degeneration", A_DEGEN, &p, "-", &e),
            });
        }
    }
    out
}

/// How an extremal family is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremalRoute {
    /// Anchor search meeting the restricted-star bound; expects `ℓ = s + β̂`.
    RestrictedStar,
    /// `J_γ^{1,t}` with `γ = β + 1`; expects `ℓ = γ` and size `N_γ + γt`.
    Gamma,
}

/// `(n, k, s, t, β, route)`.
pub const EXTREMAL_CASES: [(u32, u32, u32, u32, u32, ExtremalRoute); 4] = [
    (18, 3, 1, 1, 0, ExtremalRoute::RestrictedStar),
    (18, 3, 1, 2, 0, ExtremalRoute::RestrictedStar),
    (18, 3, 2, 2, 0, ExtremalRoute::RestrictedStar),
    (20, 4, 1, 2, 1, ExtremalRoute::Gamma),
];

const EXTREMAL_BUDGET: u64 = 200_000_000;

pub fn extremal((n, k, s, t, beta, route): (u32, u32, u32, u32, u32, ExtremalRoute)) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let p = [("n", n as i64), ("k", k as i64), ("s", s as i64), ("t", t as i64), ("beta", beta as i64)];
    let route_name = match route {
        ExtremalRoute::RestrictedStar => "restricted-star",
        ExtremalRoute::Gamma => "gamma",
    };
    let built: Result<(Family, usize, BigInt)> = match route {
        ExtremalRoute::RestrictedStar => hmnew3_extremal(n, k, s, t, beta, EXTREMAL_BUDGET).and_then(|ex| {
            let b = BoundParams { s: Some(s as i64), t: Some(t as i64), beta: Some(beta as i64), ..nk(n, k) };
            Ok((ex.family, (s as u64 + ex.beta_hat) as usize, bound(TheoremId::Thm1_9, b)?))
        }),
        ExtremalRoute::Gamma => {
            let gamma = beta + 1;
            j_1t_family(n, k, gamma, t, None)
                .map(|f| (f, gamma as usize, n_i(n as i64, k as i64, gamma as i64) + gamma as i64 * t as i64))
        }
    };
    let (f, want_ell, want_size) = match built {
        Ok(b) => b,
        Err(e) => {
            out.record(error_record("extremal-size", A_EXTREMAL, &p, "-", &e).with_text("route", route_name));
            return out;
        }
    };
    let rec = |check: &str, e: String, a: String| Record::compare(check, A_EXTREMAL, &p, e, a).with_text("route", route_name);
    let ui = is_union_intersecting(&f, s as usize, t as usize).map(|b| b.to_string());
    out.record(rec("extremal-union-intersecting", "true".into(), ui.unwrap_or_else(|e| format!("error: {e}"))));
    let l = ell(&f, 2).map(|l| l.value.to_string());
    out.record(rec("extremal-ell", want_ell.to_string(), l.unwrap_or_else(|e| format!("error: {e}"))));
    out.record(rec("extremal-size", want_size.to_string(), f.len().to_string()));
    let g = build_graph(&f);
    let outside: Vec<u64> = all_k_sets(n, k).into_iter().filter(|&m| !f.contains_mask(m)).collect();
    let probes: Vec<Result<bool>> = outside
        .par_iter()
        .map(|&m| Ok(g.extension_witness(&KSet::from_mask(n, m)?, &[s as usize, t as usize])?.is_some()))
        .collect();
    let failed = probes.iter().filter(|r| !matches!(r, Ok(true))).count();
    let (e, a, v) = violations(failed, outside.len(), "outside sets");
    out.record(Record::new("extremal-maximal", A_EXTREMAL, &p, e, a, v).with_text("route", route_name));
    out.keep(format!("extremal {route_name} n={n} k={k} s={s} t={t} beta={beta}"), &f);
    out
}

pub fn infeasibility() -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let (n, k, s, t, beta) = (12, 3, 3, 3, 5);
    let p = [("n", n as i64), ("k", k as i64), ("s", s as i64), ("t", t as i64), ("beta", beta as i64)];
    let actual = match hmnew3_extremal(n, k, s, t, beta, EXTREMAL_BUDGET) {
        Err(Error::Infeasible(_)) => "infeasible".to_string(),
        Ok(ex) => format!("family of size {}", ex.family.len()),
        Err(e) => format!("error: {e}"),
    };
    out.record(Record::compare("extremal-infeasible", A_INFEASIBLE, &p, "infeasible", actual));
    out
}

/// `(n, k, s, β)` sweeps run by default.
pub const LEMMA22_CASES: [(u32, u32, u32, u32); 6] =
    [(12, 3, 1, 1), (12, 3, 1, 2), (12, 3, 2, 0), (12, 3, 2, 1), (12, 4, 1, 1), (12, 4, 1, 2)];

const A_L22A: &str = "restricted star is at least C(n-1,k-1) - C(n-|T|-1,k-1)";
const A_L22B: &str = "restricted star is at most C(n-1,k-1) - C(n-f-1,k-1), f = floor((s+beta)k/(beta+1))";
const A_L22BE: &str = "restricted star bound is attained iff |T| = f";
const A_L22C: &str = "for s=1 the restricted star is at most C(n-1,k-1) - C(n-k,k-1) + C(n-k-beta-1,k-beta-2)";
const A_L22CE: &str = "for s=1, beta>=1 the bound is attained iff |T| = k-1";

pub fn lemma22(cases: &[(u32, u32, u32, u32)]) -> SuiteOutput {
    cases
        .par_iter()
        .map(|&c| lemma22_case(c))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(SuiteOutput::default(), SuiteOutput::merge)
}

fn lemma22_case((n, k, s, beta): (u32, u32, u32, u32)) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let p = [("n", n as i64), ("k", k as i64), ("s", s as i64), ("beta", beta as i64)];
    let r = match lemma22_sweep(n, k, s, beta) {
        Ok(r) => r,
        Err(e) => {
            out.record(error_record("lemma22-a", A_L22A, &p, "0 violations", &e));
            return out;
        }
    };
    let mut push = |check: &str, anchor: &str, cases: &[AnchorCase]| {
        let (e, a, v) = violations(cases.len(), r.tuples, "anchor tuples");
        out.records.push(Record::new(check, anchor, &p, e, a, v));
        if let Some(c) = cases.first() {
            if let Ok(f) = Family::new(n, k, &c.anchors) {
                out.families.push(LabelledFamily { label: format!("{check} counterexample n={n} k={k} s={s} beta={beta}"), family: f.to_record() });
            }
        }
    };
    push("lemma22-a", A_L22A, &r.lower_violations);
    push("lemma22-b-upper", A_L22B, &r.upper_violations);
    push("lemma22-b-equality", A_L22BE, &r.equality_mismatches);
    if let Some(c) = &r.part_c {
        push("lemma22-c-upper", A_L22C, &c.upper_violations);
        if beta >= 1 {
            push("lemma22-c-equality", A_L22CE, &c.equality_mismatches);
        }
    }
    out
}

const A_PEEL: &str = "peeling a (1,t)-union intersecting family";

/// Seeded `(1,t)`-union intersecting families on `n=10, k=3`, alternating `t = 2, 3`.
pub fn peel(seed: u64, count: usize) -> SuiteOutput {
    let (n, k) = (10u32, 3u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(usize, usize, u64)> = (0..count).map(|j| (2 + j % 2, rng.gen_range(10..=80), rng.gen())).collect();
    const CHECKS: [&str; 7] = [
        "peel-run",
        "peel-input",
        "peel-core-intersecting",
        "peel-m-bound",
        "peel-removed-bound",
        "peel-ell-bound",
        "peel-set-pairs",
    ];
    let results: Vec<(usize, Option<Family>, [bool; 7])> = items
        .par_iter()
        .map(|&(t, size, s)| {
            let spec = ConstraintSpec::pattern(&[1, t]);
            let Ok(f) = random_family(n, k, size, s, Some(&spec)) else {
                return (t, None, [false; 7]);
            };
            let mut ok = [true; 7];
            ok[1] = is_union_intersecting(&f, 1, t).unwrap_or(false);
            match peel_family(&f, t) {
                Err(_) => ok[0] = false,
                Ok(tr) => {
                    let m = tr.m();
                    ok[2] = is_intersecting(&tr.core);
                    ok[3] = m as u128 <= binomial_u128(2 * k as i64 - 1, k as i64 - 1);
                    ok[4] = tr.removed.len() <= m * (t - 1);
                    ok[5] = ell(&f, 2).map(|l| l.value <= tr.removed.len()).unwrap_or(false);
                    ok[6] = verify_set_pair_system(&tr.doubled_system(), k, k).unwrap_or(false);
                }
            }
            (t, Some(f), ok)
        })
        .collect();
    let mut out = SuiteOutput::default();
    for t in [2usize, 3] {
        let mine: Vec<_> = results.iter().filter(|r| r.0 == t).collect();
        for (c, check) in CHECKS.iter().enumerate() {
            let bad: Vec<_> = mine.iter().filter(|r| !r.2[c]).collect();
            let (e, a, v) = violations(bad.len(), mine.len(), "families");
            out.record(Record::new(check, A_PEEL, &[("n", n as i64), ("k", k as i64), ("t", t as i64)], e, a, v).with_text("seed", seed));
            if let Some((_, Some(f), _)) = bad.first().map(|r| **r) {
                out.keep(format!("{check} counterexample t={t}"), f);
            }
        }
    }
    out
}

const A_SETPAIRS: &str = "a skew set-pair system of (k,l) pairs has at most C(k+l,k) pairs, and the bound is attained";

/// `(k, l, ground)` instances for the exhaustive set-pair search.
pub const SETPAIR_CASES: [(u32, u32, u32); 4] = [(1, 1, 4), (1, 2, 5), (2, 1, 5), (2, 2, 6)];

pub fn setpairs() -> SuiteOutput {
    let mut out = SuiteOutput::default();
    for (k, l, ground) in SETPAIR_CASES {
        let p = [("k", k as i64), ("l", l as i64), ("ground", ground as i64)];
        let bound = binomial(k as i64 + l as i64, k as i64);
        out.record(match max_set_pair_system(k, l, ground) {
            Ok(m) => Record::compare("setpairs-max", A_SETPAIRS, &p, &bound, m),
            Err(e) => error_record("setpairs-max", A_SETPAIRS, &p, &bound, &e),
        });
    }
    out
}

const A_PAIRS: &str = "a family with removal number l has at least l^2 / (2 C(2k,k)) disjoint pairs";

/// Seeded random families on `n=10, k=3` with sizes 5 to 60.
pub fn pairs_bound(seed: u64, count: usize) -> SuiteOutput {
    let (n, k) = (10u32, 3u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(usize, u64)> = (0..count).map(|_| (rng.gen_range(5..=60), rng.gen())).collect();
    let c2k = binomial_u128(2 * k as i64, k as i64);
    let results: Vec<(bool, Option<Family>)> = items
        .par_iter()
        .map(|&(size, s)| match random_family(n, k, size, s, None) {
            Ok(f) => {
                let ok = ell(&f, 2)
                    .map(|l| 2 * c2k * disjoint_pair_count(&f) as u128 >= (l.value as u128).pow(2))
                    .unwrap_or(false);
                (ok, Some(f))
            }
            Err(_) => (false, None),
        })
        .collect();
    let mut out = SuiteOutput::default();
    let bad: Vec<_> = results.iter().filter(|r| !r.0).collect();
    let (e, a, v) = violations(bad.len(), results.len(), "families");
    out.record(Record::new("pairs-bound", A_PAIRS, &[("n", n as i64), ("k", k as i64)], e, a, v).with_text("seed", seed));
    if let Some((_, Some(f))) = bad.first() {
        out.keep("pairs-bound counterexample".into(), f);
    }
    out
}

const A_ISO: &str = "isomorphism test and canonical form agree with relabelling";

/// Seeded `(F, σ)` pairs on `n=10, k=3`, plus every family of at most four
/// 2-sets of `[5]` compared pairwise.
pub fn isomorphism(seed: u64, count: usize) -> SuiteOutput {
    let (n, k) = (10u32, 3u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(usize, u64, Vec<u32>)> = (0..count)
        .map(|_| {
            let mut img: Vec<u32> = (1..=n).collect();
            img.shuffle(&mut rng);
            (rng.gen_range(1..=40), rng.gen(), img)
        })
        .collect();
    let results: Vec<(bool, bool)> = items
        .par_iter()
        .map(|(size, s, img)| {
            let run = || -> Result<(bool, bool)> {
                let f = random_family(n, k, *size, *s, None)?;
                let sigma = Permutation::new(img.clone())?;
                let g = f.apply_permutation(&sigma)?;
                let witness_ok = match is_isomorphic(&f, &g)? {
                    Some(w) => f.apply_permutation(&w)? == g,
                    None => false,
                };
                Ok((witness_ok, canonical_form(&f) == canonical_form(&g)))
            };
            run().unwrap_or((false, false))
        })
        .collect();
    let mut out = SuiteOutput::default();
    let p = [("n", n as i64), ("k", k as i64)];
    let (e, a, v) = violations(results.iter().filter(|r| !r.0).count(), count, "relabelled pairs");
    out.record(Record::new("iso-relabel-witness", A_ISO, &p, e, a, v).with_text("seed", seed));
    let (e, a, v) = violations(results.iter().filter(|r| !r.1).count(), count, "relabelled pairs");
    out.record(Record::new("iso-relabel-canonical", A_ISO, &p, e, a, v).with_text("seed", seed));

    let (n, k, max_sets) = (5u32, 2u32, 4usize);
    let fams = small_families(n, k, max_sets);
    let certs: Vec<Vec<u8>> = fams.iter().map(|f| canonical_form(f).bytes().to_vec()).collect();
    let pairs: Vec<(usize, usize)> = (0..fams.len()).flat_map(|i| (i + 1..fams.len()).map(move |j| (i, j))).collect();
    let mismatches = pairs
        .par_iter()
        .filter(|&&(i, j)| {
            let iso = is_isomorphic(&fams[i], &fams[j]).map(|w| w.is_some()).unwrap_or(!(certs[i] == certs[j]));
            iso != (certs[i] == certs[j])
        })
        .count();
    let (e, a, v) = violations(mismatches, pairs.len(), "family pairs");
    out.record(Record::new("iso-canonical-exhaustive", A_ISO, &[("n", n as i64), ("k", k as i64), ("max_sets", max_sets as i64)], e, a, v));
    out
}

/// Every family of at most `max_sets` k-sets of `[n]`.
fn small_families(n: u32, k: u32, max_sets: usize) -> Vec<Family> {
    fn rec(sets: &[u64], start: usize, max: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(cur.clone());
        if cur.len() == max {
            return;
        }
        for i in start..sets.len() {
            cur.push(sets[i]);
            rec(sets, i + 1, max, cur, out);
            cur.pop();
        }
    }
    let sets = all_k_sets(n, k);
    let mut raw = Vec::new();
    rec(&sets, 0, max_sets, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|m| Family::from_masks(n, k, m).expect("distinct k-sets")).collect()
}

const A_ORACLE: &str = "branch and bound agrees with exhaustive enumeration";
const A_EKR: &str = "largest intersecting family has C(n-1,k-1) sets";
const A_CLASSES: &str = "maximal intersecting families of 2-sets of [5] are the star and the triangle";

/// The fixed oracle suite: `(n, k, spec)`.
pub fn oracle_specs() -> Vec<(u32, u32, ConstraintSpec)> {
    let mut specs = Vec::new();
    for n in 4..=6u32 {
        for p in [&[1, 1][..], &[1, 2], &[1, 3], &[2, 2], &[2, 3], &[1, 1, 1]] {
            specs.push((n, 2, ConstraintSpec::pattern(p)));
        }
        specs.push((n, 2, ConstraintSpec::pattern(&[1, 2]).with_ell_min(2, 1)));
        specs.push((n, 2, ConstraintSpec::pattern(&[2, 2]).with_ell_min(2, 2)));
        specs.push((n, 2, ConstraintSpec::pattern(&[1, 3]).with_ell_min(2, 2)));
        specs.push((n, 2, ConstraintSpec::pattern(&[1, 1, 1]).with_ell_min(2, 1)));
        specs.push((n, 2, ConstraintSpec { ell_min: Some((2, 3)), ..Default::default() }));
        specs.push((
            n,
            2,
            ConstraintSpec { pattern: Some(vec![1, 1]), must_contain: vec![vec![1, 2]], must_avoid: vec![vec![1, 3]], ..Default::default() },
        ));
        specs.push((
            n,
            2,
            ConstraintSpec { pattern: Some(vec![1, 2]), must_contain: vec![vec![1, 2], vec![3, 4]], ..Default::default() },
        ));
    }
    specs.push((7, 2, ConstraintSpec::pattern(&[1, 1])));
    specs
}

pub fn describe_spec(spec: &ConstraintSpec) -> String {
    let sets = |v: &[Vec<u32>]| v.iter().map(|s| s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";");
    let mut parts = Vec::new();
    if let Some(p) = &spec.pattern {
        parts.push(format!("pattern=[{}]", p.iter().map(usize::to_string).collect::<Vec<_>>().join(",")));
    }
    if let Some((r, c)) = spec.ell_min {
        parts.push(format!("ell_{r}>={c}"));
    }
    if !spec.must_contain.is_empty() {
        parts.push(format!("contain={}", sets(&spec.must_contain)));
    }
    if !spec.must_avoid.is_empty() {
        parts.push(format!("avoid={}", sets(&spec.must_avoid)));
    }
    parts.join(" ")
}

fn outcome(r: Result<unionfam::search::SearchResult>) -> String {
    match r {
        Ok(r) if r.optimal => r.max_size.to_string(),
        Ok(r) => format!("{} (not optimal)", r.max_size),
        Err(Error::Infeasible(_)) => "infeasible".into(),
        Err(e) => format!("error: {e}"),
    }
}

pub fn oracle() -> SuiteOutput {
    let specs = oracle_specs();
    let mut out = SuiteOutput::default();
    let recs: Vec<Record> = specs
        .par_iter()
        .enumerate()
        .map(|(idx, (n, k, spec))| {
            let o = outcome(oracle_max_family(*n, *k, spec));
            let b = outcome(branch_and_bound_max(*n, *k, spec, u64::MAX));
            Record::compare("oracle-vs-bb", A_ORACLE, &[("n", *n as i64), ("k", *k as i64), ("spec", idx as i64)], o, b)
                .with_text("constraints", describe_spec(spec))
        })
        .collect();
    out.records.extend(recs);
    for n in 5..=7u32 {
        let p = [("n", n as i64), ("k", 2)];
        let want = binomial(n as i64 - 1, 1);
        out.record(match oracle_max_family(n, 2, &ConstraintSpec::pattern(&[1, 1])) {
            Ok(r) => Record::compare("ekr-oracle", A_EKR, &p, &want, r.max_size),
            Err(e) => error_record("ekr-oracle", A_EKR, &p, &want, &e),
        });
    }
    let p = [("n", 5), ("k", 2)];
    out.record(match enumerate_maximal(5, 2, &ConstraintSpec::pattern(&[1, 1]), 100) {
        Ok(fs) => Record::compare("ekr-maximal-classes", A_CLASSES, &p, "star:4 triangle:3", fs.iter().map(shape).collect::<Vec<_>>().join(" ")),
        Err(e) => error_record("ekr-maximal-classes", A_CLASSES, &p, "star:4 triangle:3", &e),
    });
    out
}

fn shape(f: &Family) -> String {
    let common = f.masks().iter().fold(u64::MAX, |a, &b| a & b);
    let name = if common != 0 {
        "star"
    } else if f.len() == 3 && f.k() == 2 && is_intersecting(f) {
        "triangle"
    } else {
        "other"
    };
    format!("{name}:{}", f.len())
}

/// Default sample sizes of the seeded suites.
pub const PEEL_COUNT: usize = 1000;
pub const PAIRS_COUNT: usize = 1000;
pub const ISO_COUNT: usize = 500;

/// Every suite with its default parameters.
pub fn all(seed: u64) -> SuiteOutput {
    let jobs: Vec<Box<dyn Fn() -> SuiteOutput + Send + Sync>> = vec![
        Box::new(constructions),
        Box::new(|| lemma22(&LEMMA22_CASES)),
        Box::new(move || peel(seed, PEEL_COUNT)),
        Box::new(setpairs),
        Box::new(move || pairs_bound(seed, PAIRS_COUNT)),
        Box::new(move || isomorphism(seed, ISO_COUNT)),
        Box::new(oracle),
    ];
    jobs.par_iter().map(|j| j()).collect::<Vec<_>>().into_iter().fold(SuiteOutput::default(), SuiteOutput::merge)
}
