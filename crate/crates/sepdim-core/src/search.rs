//! Exhaustive minimum-size search and a seeded random family generator.
//!
//! The search decides, for small n, the least family size whose separation
//! counts are all equal. Sizes must be multiples of 3 (each member separates
//! exactly one of the three pairings of every 4-set). Relabeling invariance
//! lets the first member be fixed to the identity; the remaining members
//! form a non-decreasing sequence over the lexicographic enumeration of
//! S_n, so each candidate multiset is visited exactly once. A partial
//! candidate is pruned as soon as some pairing counter overshoots the
//! target size/3 or can no longer reach it.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, Ordering};
use core::time::Duration;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::perm::{PermFamily, Permutation};
use crate::verify::pairing_index;

/// Hard cap on the random generator; reaching it is reported as an error.
pub const RANDOM_FAMILY_CAP: usize = 10_000;

/// A uniformly random permutation of [n] drawn from the given generator.
pub fn random_permutation<R: RngCore>(n: usize, rng: &mut R) -> Permutation {
    let mut image: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        image.swap(i, j);
    }
    Permutation::from_image(image).expect("shuffle of a bijection is a bijection")
}

/// Appends seeded uniform random permutations until every disjoint edge
/// pair is separated at least once. Same (n, seed) gives the same family.
pub fn random_separating_family(n: usize, seed: u64) -> Result<PermFamily, Error> {
    if n < 4 {
        return Err(Error::Domain("ground-set size must be at least 4"));
    }
    let subsets = four_subsets(n);
    let mut covered = vec![[false; 3]; subsets.len()];
    let mut remaining = 3 * subsets.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fam = PermFamily::new(n);
    while remaining > 0 {
        if fam.len() >= RANDOM_FAMILY_CAP {
            return Err(Error::MemberCapExceeded { cap: RANDOM_FAMILY_CAP });
        }
        let p = random_permutation(n, &mut rng);
        let pos = p.positions();
        for (si, &[a, b, c, d]) in subsets.iter().enumerate() {
            let pi = pairing_index(pos[a], pos[b], pos[c], pos[d]);
            if !covered[si][pi] {
                covered[si][pi] = true;
                remaining -= 1;
            }
        }
        fam.push(p)?;
    }
    Ok(fam)
}

fn four_subsets(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of [n] in lexicographic image order; index 0 is the
/// identity.
pub fn permutations_in_order(n: usize) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(factorial(n));
    let mut image: Vec<u32> = (1..=n as u32).collect();
    loop {
        out.push(Permutation::from_image(image.clone()).expect("valid by construction"));
        if !next_lex(&mut image) {
            break;
        }
    }
    out
}

fn next_lex(arr: &mut [u32]) -> bool {
    let n = arr.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| arr[i] < arr[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| arr[j] > arr[i]).unwrap();
    arr.swap(i, j);
    arr[i + 1..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub sizes_examined: Vec<u64>,
    /// Least size admitting a perfect family, or None up to the bound.
    pub minimum: Option<u64>,
    pub witness: Option<PermFamily>,
    /// Complete candidate multisets examined.
    pub candidates_visited: u64,
    /// Partial assignments expanded (including the complete ones).
    pub nodes_expanded: u64,
    /// Filled in by drivers that can measure time.
    pub elapsed: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionOutcome {
    pub witness: Option<PermFamily>,
    pub candidates_visited: u64,
    pub nodes_expanded: u64,
    pub cancelled: bool,
}

struct SizeSearch<'a> {
    perms: &'a [Permutation],
    pairings: &'a [Vec<u8>],
    subset_count: usize,
    target: u32,
    size: usize,
    prune: bool,
    stop_at_witness: bool,
    cancel: Option<&'a AtomicBool>,
    counters: Vec<u32>,
    chosen: Vec<usize>,
    candidates: u64,
    nodes: u64,
    witness: Option<Vec<usize>>,
    cancelled: bool,
}

impl SizeSearch<'_> {
    fn apply(&mut self, perm_idx: usize, delta: i32) {
        for (si, &pi) in self.pairings[perm_idx].iter().enumerate() {
            let slot = &mut self.counters[3 * si + pi as usize];
            *slot = slot.wrapping_add(delta as u32);
        }
    }

    fn violates(&self, remaining: u32) -> bool {
        for si in 0..self.subset_count {
            for pi in 0..3 {
                let count = self.counters[3 * si + pi];
                if count > self.target || count + remaining < self.target {
                    return true;
                }
            }
        }
        false
    }

    fn complete_is_perfect(&self) -> bool {
        self.counters.iter().all(|&c| c == self.target)
    }

    fn done(&self) -> bool {
        self.cancelled || (self.stop_at_witness && self.witness.is_some())
    }

    fn extend(&mut self, min_index: usize, lo: usize, hi: usize) {
        if self.done() {
            return;
        }
        if let Some(flag) = self.cancel {
            if flag.load(Ordering::Relaxed) {
                self.cancelled = true;
                return;
            }
        }
        let depth = self.chosen.len();
        if depth == self.size {
            self.candidates += 1;
            if self.complete_is_perfect() && self.witness.is_none() {
                self.witness = Some(self.chosen.clone());
            }
            return;
        }
        // the member at depth 1 is confined to the partition's range
        let (start, end) = if depth == 1 {
            (min_index.max(lo), hi)
        } else {
            (min_index, self.perms.len())
        };
        for idx in start..end {
            self.nodes += 1;
            self.apply(idx, 1);
            self.chosen.push(idx);
            let remaining = (self.size - self.chosen.len()) as u32;
            if !(self.prune && self.violates(remaining)) {
                self.extend(idx, lo, hi);
            }
            self.chosen.pop();
            self.apply(idx, -1);
            if self.done() {
                return;
            }
        }
    }
}

/// Searches one target size over the canonical candidates whose second
/// member index lies in `[tail_lo, tail_hi)`. The first member is always
/// the identity. Partitions with disjoint ranges cover disjoint candidate
/// sets, so their outcomes can be combined by any driver. With
/// `stop_at_witness` unset the whole partition is enumerated even after a
/// witness is found, so the candidate count is the partition's full
/// coverage; the reported witness is still the first one in order.
pub fn search_size_partition(
    n: usize,
    size: u64,
    tail_lo: usize,
    tail_hi: usize,
    prune: bool,
    stop_at_witness: bool,
    cancel: Option<&AtomicBool>,
) -> Result<PartitionOutcome, Error> {
    check_search_domain(n, size)?;
    let perms = permutations_in_order(n);
    let subsets = four_subsets(n);
    let pairings: Vec<Vec<u8>> = perms
        .iter()
        .map(|p| {
            let pos = p.positions();
            subsets
                .iter()
                .map(|&[a, b, c, d]| pairing_index(pos[a], pos[b], pos[c], pos[d]) as u8)
                .collect()
        })
        .collect();
    let tail_hi = tail_hi.min(perms.len());

    let mut search = SizeSearch {
        perms: &perms,
        pairings: &pairings,
        subset_count: subsets.len(),
        target: (size / 3) as u32,
        size: size as usize,
        prune,
        stop_at_witness,
        cancel,
        counters: vec![0; 3 * subsets.len()],
        chosen: Vec::with_capacity(size as usize),
        candidates: 0,
        nodes: 0,
        witness: None,
        cancelled: false,
    };
    // fix the first member to the identity (index 0)
    search.apply(0, 1);
    search.chosen.push(0);
    search.extend(0, tail_lo, tail_hi);

    let witness = match &search.witness {
        Some(indices) => Some(PermFamily::from_members(
            n,
            indices.iter().map(|&i| perms[i].clone()).collect(),
        )?),
        None => None,
    };
    Ok(PartitionOutcome {
        witness,
        candidates_visited: search.candidates,
        nodes_expanded: search.nodes,
        cancelled: search.cancelled,
    })
}

fn check_search_domain(n: usize, size: u64) -> Result<(), Error> {
    if !(4..=6).contains(&n) {
        return Err(Error::Domain("exhaustive search supports 4 <= n <= 6"));
    }
    if size % 3 != 0 || size == 0 {
        return Err(Error::Domain("family sizes must be positive multiples of 3"));
    }
    Ok(())
}

/// Examines sizes 3, 6, ..., max_size in order and returns the first size
/// admitting a perfect family, with a witness, or an exhaustion report.
pub fn exhaustive_min_psd(
    n: usize,
    max_size: u64,
    prune: bool,
    cancel: Option<&AtomicBool>,
) -> Result<SearchResult, Error> {
    if !(4..=6).contains(&n) {
        return Err(Error::Domain("exhaustive search supports 4 <= n <= 6"));
    }
    if max_size % 3 != 0 {
        return Err(Error::Domain("the size bound must be a multiple of 3"));
    }
    let mut result = SearchResult {
        n,
        sizes_examined: Vec::new(),
        minimum: None,
        witness: None,
        candidates_visited: 0,
        nodes_expanded: 0,
        elapsed: None,
    };
    let mut size = 3;
    while size <= max_size {
        result.sizes_examined.push(size);
        let outcome = search_size_partition(n, size, 0, usize::MAX, prune, true, cancel)?;
        result.candidates_visited += outcome.candidates_visited;
        result.nodes_expanded += outcome.nodes_expanded;
        if let Some(witness) = outcome.witness {
            result.minimum = Some(size);
            result.witness = Some(witness);
            break;
        }
        size += 3;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::separation_profile;

    #[test]
    fn minimum_for_k4_is_three_with_a_valid_witness() {
        let result = exhaustive_min_psd(4, 3, true, None).unwrap();
        assert_eq!(result.minimum, Some(3));
        let witness = result.witness.unwrap();
        assert_eq!(witness.len(), 3);
        assert_eq!(witness.members()[0], Permutation::identity(4));
        let profile = separation_profile(&witness);
        assert_eq!(profile.lambda, Some(1));
    }

    #[test]
    fn zero_bound_examines_nothing() {
        let result = exhaustive_min_psd(4, 0, true, None).unwrap();
        assert_eq!(result.minimum, None);
        assert!(result.sizes_examined.is_empty());
        assert_eq!(result.candidates_visited, 0);
    }

    #[test]
    fn domain_guards() {
        assert!(exhaustive_min_psd(3, 3, true, None).is_err());
        assert!(exhaustive_min_psd(7, 3, true, None).is_err());
        assert!(exhaustive_min_psd(5, 4, true, None).is_err());
    }

    #[test]
    fn unpruned_size_three_search_at_n5_covers_all_canonical_multisets() {
        let full = search_size_partition(5, 3, 0, usize::MAX, false, false, None).unwrap();
        // non-decreasing pairs over S_5: C(120 + 1, 2)
        assert_eq!(full.candidates_visited, 7260);
        // a witness exists: the size-3 question for K_5 is decided positively
        let witness = full.witness.as_ref().expect("size-3 perfect family of K_5");
        assert_eq!(separation_profile(witness).lambda, Some(1));

        let pruned = search_size_partition(5, 3, 0, usize::MAX, true, false, None).unwrap();
        assert!(pruned.candidates_visited <= full.candidates_visited);
        assert_eq!(pruned.witness, full.witness, "pruning may not change the verdict");
    }

    #[test]
    fn partitions_cover_the_same_candidates() {
        let whole = search_size_partition(4, 3, 0, usize::MAX, false, false, None).unwrap();
        assert_eq!(whole.candidates_visited, 300); // C(24 + 1, 2)
        let mut total = 0;
        let mut found = false;
        for chunk in 0..4 {
            let lo = chunk * 6;
            let hi = lo + 6;
            let part = search_size_partition(4, 3, lo, hi, false, false, None).unwrap();
            total += part.candidates_visited;
            found |= part.witness.is_some();
        }
        assert_eq!(total, whole.candidates_visited);
        assert_eq!(found, whole.witness.is_some());
    }

    #[test]
    fn minimum_for_k5_is_three() {
        // regression value: the search decided the size-3 question for K_5
        // positively, so the minimum equals the floor of 3
        let result = exhaustive_min_psd(5, 3, true, None).unwrap();
        assert_eq!(result.minimum, Some(3));
        let witness = result.witness.unwrap();
        assert_eq!(separation_profile(&witness).lambda, Some(1));
    }

    #[test]
    fn random_family_is_separating_and_deterministic() {
        let fam = random_separating_family(6, 42).unwrap();
        let profile = separation_profile(&fam);
        assert!(profile.is_separating());
        assert_eq!(
            fam,
            random_separating_family(6, 42).unwrap(),
            "same seed must reproduce the family"
        );
        let other = random_separating_family(6, 43).unwrap();
        assert!(profile.is_separating());
        // different seeds almost surely differ
        assert_ne!(fam, other);
        assert!(random_separating_family(3, 1).is_err());
    }

    #[test]
    fn lex_enumeration_starts_at_identity() {
        let perms = permutations_in_order(4);
        assert_eq!(perms.len(), 24);
        assert_eq!(perms[0], Permutation::identity(4));
        for w in perms.windows(2) {
            assert!(w[0] < w[1]);
        }
    }
}
