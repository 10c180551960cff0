//! Searches over unions of subgroup cosets and over divisor lattices: which
//! differences of coset labels give cap-set pair unions, whether the cosets
//! can be paired into a partition by double-size caps, whether any r-coset
//! union is a cap, and the per-divisor scan of all subgroups of F_q^×.
//!
//! Scaling a set by a nonzero field element preserves zero-sum solutions, so
//! whether coset_i ∪ coset_j is a cap depends only on the label difference
//! (j - i) mod e. The searches lean on that: the pair spectrum is indexed by
//! differences, and union searches fix label 0 in every candidate.

use serde::Serialize;

use crate::arith;
use crate::bitset::Bitset;
use crate::caps::{self, CapReport, CapsError};
use crate::ffield::{default_field, FieldCtx, FieldError};
use crate::groups::{self, GroupError, SubgroupHandle};

/// Hard ceiling on the number of candidate unions a single search may visit.
pub const UNION_SEARCH_BUDGET: u64 = 10_000_000;

/// Largest n accepted by [`general_family_check`] by default.
pub const DEFAULT_FAMILY_BOUND: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("the subgroup is not a cap")]
    NotACap,
    #[error("the subgroup has odd index {0}, so its cosets cannot be paired")]
    OddIndex(u32),
    #[error("cannot take {r} cosets from a family of {e}")]
    InvalidCosetCount { r: u32, e: u32 },
    #[error("{candidates} candidate unions exceed the search budget of {budget}")]
    BudgetExceeded { candidates: u64, budget: u64 },
    #[error("family parameter {n} is outside 2..={bound}")]
    OutOfBounds { n: u32, bound: u32 },
    #[error(transparent)]
    Caps(#[from] CapsError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An r-coset union that passed the cap check.
#[derive(Debug, Clone, Serialize)]
pub struct UnionCandidate {
    pub d: u32,
    pub e: u32,
    /// Sorted coset labels; label 0 is always present by translation.
    pub coset_labels: Vec<u32>,
    pub union_size: u32,
    /// Sorted element encodings of the union.
    pub elements: Vec<u32>,
}

/// One verdict row of a subgroup scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub q: u32,
    pub d: u32,
    pub is_cap: bool,
    pub strong: bool,
    /// Present only when the subgroup is a cap.
    pub complete: Option<bool>,
}

/// A pairing of all coset labels into two-coset cap unions.
#[derive(Debug, Clone, Serialize)]
pub struct PairPartition {
    /// e/2 disjoint label pairs covering every label, each sorted.
    pub pairs: Vec<(u32, u32)>,
    /// Sorted element encodings per pair union, in `pairs` order.
    pub blocks: Vec<Vec<u32>>,
}

fn coset_elements(ctx: &FieldCtx, g: &SubgroupHandle, label: u32) -> Vec<u32> {
    let e = g.e() as u64;
    (0..g.d())
        .map(|k| ctx.antilog_enc(label as u64 + k as u64 * e))
        .collect()
}

fn union_of_labels(ctx: &FieldCtx, g: &SubgroupHandle, labels: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(labels.len() * g.d() as usize);
    for &label in labels {
        out.extend(coset_elements(ctx, g, label));
    }
    out
}

fn require_cap(ctx: &FieldCtx, g: &SubgroupHandle) -> Result<(), SearchError> {
    if caps::is_cap(ctx, g.elements())?.verdict {
        Ok(())
    } else {
        Err(SearchError::NotACap)
    }
}

fn spectrum_impl(ctx: &FieldCtx, g: &SubgroupHandle) -> Result<Vec<u32>, SearchError> {
    let mut out = Vec::new();
    for t in 1..g.e() {
        let union = union_of_labels(ctx, g, &[0, t]);
        if caps::is_cap(ctx, &union)?.verdict {
            out.push(t);
        }
    }
    Ok(out)
}

/// All label differences t in [1, e-1] for which the union of the subgroup
/// with its t-th coset is a cap. By translation invariance this determines
/// every cap pair among the cosets.
pub fn pair_difference_spectrum(
    ctx: &FieldCtx,
    g: &SubgroupHandle,
) -> Result<Vec<u32>, SearchError> {
    if ctx.p() != 3 {
        return Err(CapsError::WrongCharacteristic {
            expected: 3,
            found: ctx.p(),
        }
        .into());
    }
    require_cap(ctx, g)?;
    spectrum_impl(ctx, g)
}

fn verify_partition(
    ctx: &FieldCtx,
    g: &SubgroupHandle,
    pairs: &[(u32, u32)],
) -> Result<Vec<Vec<u32>>, SearchError> {
    let e = g.e();
    assert_eq!(pairs.len() as u32 * 2, e, "pairing must cover every label");
    let mut covered = Bitset::new(ctx.q() as usize);
    let mut blocks = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        assert!(a < b && b < e, "labels out of order");
        let mut union = union_of_labels(ctx, g, &[a, b]);
        union.sort_unstable();
        assert_eq!(union.len(), 2 * g.d() as usize, "cosets overlap");
        let block = Bitset::from_indices(ctx.q() as usize, &union);
        assert!(covered.is_disjoint(&block), "blocks overlap");
        covered.union_with(&block);
        if !caps::is_cap(ctx, &union)?.verdict {
            return Err(SearchError::NotACap);
        }
        blocks.push(union);
    }
    assert_eq!(
        covered.count_ones(),
        (ctx.q() - 1) as usize,
        "blocks must cover every nonzero element"
    );
    Ok(blocks)
}

fn normalize_pairs(raw: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    let mut pairs: Vec<(u32, u32)> = raw
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Searches for a partition of all e cosets into e/2 disjoint pairs whose
/// unions are caps of size 2d. Uniform-difference matchings (every pair at
/// the same label difference t) are tried first; failing that, a
/// backtracking perfect matching runs on the cap-pair graph. Returns `None`
/// when no pairing exists.
pub fn find_pair_partition(
    ctx: &FieldCtx,
    g: &SubgroupHandle,
) -> Result<Option<PairPartition>, SearchError> {
    require_cap(ctx, g)?;
    let e = g.e();
    if !e.is_multiple_of(2) {
        return Err(SearchError::OddIndex(e));
    }
    let spectrum = spectrum_impl(ctx, g)?;
    // uniform difference t works when stepping by t around Z_e gives
    // even-length cycles, i.e. e / gcd(t, e) is even
    for &t in &spectrum {
        let cycles = arith::gcd(t as u64, e as u64) as u32;
        let cycle_len = e / cycles;
        if !cycle_len.is_multiple_of(2) {
            continue;
        }
        let mut pairs = Vec::with_capacity((e / 2) as usize);
        for c in 0..cycles {
            for i in 0..cycle_len / 2 {
                let a = (c as u64 + 2 * i as u64 * t as u64) % e as u64;
                let b = (a + t as u64) % e as u64;
                pairs.push((a as u32, b as u32));
            }
        }
        let pairs = normalize_pairs(pairs);
        let blocks = verify_partition(ctx, g, &pairs)?;
        return Ok(Some(PairPartition { pairs, blocks }));
    }
    // general matching: labels i, j are adjacent when their difference is in
    // the spectrum
    let adjacent = |i: u32, j: u32| {
        let diff = (j as i64 - i as i64).rem_euclid(e as i64) as u32;
        spectrum.contains(&diff) || spectrum.contains(&(e - diff))
    };
    let mut matched = vec![u32::MAX; e as usize];
    if match_labels(&mut matched, e, &adjacent) {
        let raw: Vec<(u32, u32)> = (0..e)
            .filter(|&i| matched[i as usize] > i)
            .map(|i| (i, matched[i as usize]))
            .collect();
        let pairs = normalize_pairs(raw);
        let blocks = verify_partition(ctx, g, &pairs)?;
        return Ok(Some(PairPartition { pairs, blocks }));
    }
    Ok(None)
}

/// Deterministic backtracking matcher: always extends from the smallest
/// unmatched label, trying partners in ascending order.
fn match_labels(matched: &mut [u32], e: u32, adjacent: &impl Fn(u32, u32) -> bool) -> bool {
    let i = match (0..e).find(|&i| matched[i as usize] == u32::MAX) {
        None => return true,
        Some(i) => i,
    };
    for j in i + 1..e {
        if matched[j as usize] == u32::MAX && adjacent(i, j) {
            matched[i as usize] = j;
            matched[j as usize] = i;
            if match_labels(matched, e, adjacent) {
                return true;
            }
            matched[i as usize] = u32::MAX;
            matched[j as usize] = u32::MAX;
        }
    }
    false
}

/// First (lexicographic by labels) r-coset union that is a cap, or `None`
/// after exhausting all candidates. Translation invariance pins label 0 into
/// every candidate, so C(e-1, r-1) unions are examined; searches larger than
/// [`UNION_SEARCH_BUDGET`] are refused.
pub fn exists_union_cap(
    ctx: &FieldCtx,
    g: &SubgroupHandle,
    r: u32,
) -> Result<Option<UnionCandidate>, SearchError> {
    let e = g.e();
    if r == 0 || r > e {
        return Err(SearchError::InvalidCosetCount { r, e });
    }
    let candidates = arith::binomial_capped(e as u64 - 1, r as u64 - 1, UNION_SEARCH_BUDGET);
    if candidates > UNION_SEARCH_BUDGET {
        return Err(SearchError::BudgetExceeded {
            candidates,
            budget: UNION_SEARCH_BUDGET,
        });
    }
    let found = |labels: &[u32]| -> Result<Option<UnionCandidate>, SearchError> {
        let union = union_of_labels(ctx, g, labels);
        if caps::is_cap(ctx, &union)?.verdict {
            let mut elements = union;
            elements.sort_unstable();
            Ok(Some(UnionCandidate {
                d: g.d(),
                e,
                coset_labels: labels.to_vec(),
                union_size: r * g.d(),
                elements,
            }))
        } else {
            Ok(None)
        }
    };
    if r == 1 {
        return found(&[0]);
    }
    let m = (r - 1) as usize;
    let mut combo: Vec<u32> = (1..=m as u32).collect();
    loop {
        let mut labels = Vec::with_capacity(r as usize);
        labels.push(0);
        labels.extend_from_slice(&combo);
        if let Some(hit) = found(&labels)? {
            return Ok(Some(hit));
        }
        // advance to the next lexicographic combination of 1..e
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if combo[i] < e - (m - i) as u32 {
                combo[i] += 1;
                for j in i + 1..m {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// One fully verified row per divisor d of q-1: cap verdict, strong solution
/// structure, and (for caps) completeness by the generator-reduced method.
pub fn subgroup_cap_scan(ctx: &FieldCtx) -> Result<Vec<ScanRow>, SearchError> {
    let arity = match ctx.p() {
        2 => 4,
        3 => 3,
        p => return Err(CapsError::UnsupportedCharacteristic(p).into()),
    };
    let strong = |g: &SubgroupHandle| match ctx.p() {
        3 => caps::strong_structure_char3(ctx, g),
        _ => caps::strong_structure_char2(ctx, g),
    };
    let mut rows = Vec::new();
    for d in arith::divisors((ctx.q() - 1) as u64) {
        let g = groups::subgroup_of_order(ctx, d as u32)?;
        let cap = caps::is_cap(ctx, g.elements())?;
        let complete = if cap.verdict {
            Some(caps::is_complete_subgroup_reduced(ctx, &g, arity)?.complete)
        } else {
            None
        };
        rows.push(ScanRow {
            q: ctx.q(),
            d: d as u32,
            is_cap: cap.verdict,
            strong: if cap.verdict { strong(&g)? } else { false },
            complete,
        });
    }
    Ok(rows)
}

/// Verdicts for one member of the binary family: in GF(2^(2n)) the subgroup
/// of order 2^n + 1 should be a cap with strong pair structure, and
/// adjoining 0 should stay a cap exactly when n is even.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub n: u32,
    pub q: u64,
    pub d: u32,
    pub subgroup_is_cap: bool,
    pub strong: bool,
    pub with_zero_is_cap: bool,
    pub with_zero_expected: bool,
    pub with_zero_witness: Option<Vec<u32>>,
    /// True when every verdict matches the expected pattern.
    pub holds: bool,
}

/// Builds GF(2^(2n)) with the default modulus and checks the family member.
pub fn general_family_check(n: u32) -> Result<FamilyReport, SearchError> {
    general_family_check_with_bound(n, DEFAULT_FAMILY_BOUND)
}

pub fn general_family_check_with_bound(n: u32, bound: u32) -> Result<FamilyReport, SearchError> {
    if n < 2 || n > bound {
        return Err(SearchError::OutOfBounds { n, bound });
    }
    let ctx = default_field(2, 2 * n)?;
    let d = (1u32 << n) + 1;
    let g = groups::subgroup_of_order(&ctx, d)?;
    let subgroup_cap = caps::is_cap_char2(&ctx, g.elements())?;
    let strong = caps::strong_structure_char2(&ctx, &g)?;
    let mut with_zero = g.elements().to_vec();
    with_zero.push(0);
    let zero_cap: CapReport = caps::is_cap_char2(&ctx, &with_zero)?;
    let expected = n.is_multiple_of(2);
    Ok(FamilyReport {
        n,
        q: ctx.q() as u64,
        d,
        subgroup_is_cap: subgroup_cap.verdict,
        strong,
        with_zero_is_cap: zero_cap.verdict,
        with_zero_expected: expected,
        with_zero_witness: zero_cap.witness,
        holds: subgroup_cap.verdict && strong && zero_cap.verdict == expected,
    })
}
